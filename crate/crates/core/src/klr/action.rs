use std::collections::BTreeMap;

use num_traits::One;
use rand::Rng;

use crate::cartan::{Orientation, Seq, ValidatedCartan, Vertex, Weight};
use crate::poly::MultiPoly;
use crate::qring::Rational;

use super::{Atom, DiagramWord, KlrError};

/// The action of a crossing of two strands with distinct, connected labels.
pub trait CrossingRule {
    /// Multiplier applied after `s_k` when the labels below the crossing are
    /// `(a, b)` at positions `(k, k+1)`; `None` means a plain swap.
    fn mixed(&self, datum: &ValidatedCartan, a: Vertex, b: Vertex, k: usize, nvars: usize) -> Option<MultiPoly>;
}

/// `f -> (x_k^d + x_{k+1}^{d'}) s_k f` along an oriented edge, with
/// `d = d_{i_{k+1} i_k}` and `d' = d_{i_k i_{k+1}}`; a plain swap against it.
pub struct StandardRule<'a>(pub &'a Orientation);

impl CrossingRule for StandardRule<'_> {
    fn mixed(&self, datum: &ValidatedCartan, a: Vertex, b: Vertex, k: usize, nvars: usize) -> Option<MultiPoly> {
        if !self.0.points(a, b) {
            return None;
        }
        let lhs = MultiPoly::var_pow(nvars, k, datum.d(b, a));
        let rhs = MultiPoly::var_pow(nvars, k + 1, datum.d(a, b));
        Some(&lhs + &rhs)
    }
}

/// Acts by `atoms` (bottom to top) on the polynomial `f` of the component `bottom`.
pub fn act_atoms<R: CrossingRule + ?Sized>(
    datum: &ValidatedCartan,
    rule: &R,
    bottom: &Seq,
    atoms: &[Atom],
    f: &MultiPoly,
) -> MultiPoly {
    let n = bottom.len();
    let mut seq = bottom.0.clone();
    let mut g = f.clone();
    for &atom in atoms {
        match atom {
            Atom::Dot(k) => g = g.mul_var_pow(k, 1),
            Atom::Cross(k) => {
                let (a, b) = (seq[k], seq[k + 1]);
                g = if a == b {
                    g.divided_difference(k)
                } else if datum.dot(a, b) == 0 {
                    g.swap(k)
                } else {
                    match rule.mixed(datum, a, b, k, n) {
                        Some(m) => &m * &g.swap(k),
                        None => g.swap(k),
                    }
                };
                seq.swap(k, k + 1);
            }
        }
        if g.is_zero() {
            break;
        }
    }
    g
}

/// `sum c * (atoms acting on f)` for words sharing the bottom sequence.
pub fn act_terms<R: CrossingRule + ?Sized>(
    datum: &ValidatedCartan,
    rule: &R,
    bottom: &Seq,
    terms: &[(Rational, Vec<Atom>)],
    f: &MultiPoly,
) -> PolState {
    let mut out = PolState::default();
    for (c, atoms) in terms {
        let w = DiagramWord { bottom: bottom.clone(), atoms: atoms.clone() };
        let g = act_atoms(datum, rule, bottom, atoms, f).scale(c);
        out.add(w.top(), &g);
    }
    out
}

/// An element of the polynomial representation: one polynomial per sequence.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PolState {
    components: BTreeMap<Seq, MultiPoly>,
}

impl PolState {
    pub fn single(s: Seq, f: MultiPoly) -> Self {
        let mut st = PolState::default();
        st.add(s, &f);
        st
    }

    /// Random polynomials of degree `<= 3` on every sequence of weight `nu`.
    pub fn random<R: Rng>(datum: &ValidatedCartan, nu: &Weight, rng: &mut R) -> Result<Self, KlrError> {
        let mut st = PolState::default();
        for s in datum.sequences(nu)? {
            let n = s.len();
            st.add(s, &MultiPoly::random(n, 3, 4, rng));
        }
        Ok(st)
    }

    pub fn get(&self, s: &Seq) -> Option<&MultiPoly> {
        self.components.get(s)
    }

    pub fn components(&self) -> impl Iterator<Item = (&Seq, &MultiPoly)> {
        self.components.iter()
    }

    pub fn add(&mut self, s: Seq, f: &MultiPoly) {
        let sum = match self.components.remove(&s) {
            Some(old) => &old + f,
            None => f.clone(),
        };
        if !sum.is_zero() {
            self.components.insert(s, sum);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.components.is_empty()
    }
}

/// Acts by a diagram word on a state: `1_bottom` projects, then atoms act.
pub fn act_on_pol(
    word: &DiagramWord,
    state: &PolState,
    orientation: &Orientation,
    datum: &ValidatedCartan,
) -> Result<PolState, KlrError> {
    let weight = word.bottom.weight(datum.rank());
    if let Some((s, _)) = state.components.iter().next() {
        if !s.weight(datum.rank()).same_as(&weight) {
            return Err(KlrError::WeightMismatch);
        }
    }
    let Some(f) = state.get(&word.bottom) else {
        return Ok(PolState::default());
    };
    let terms = [(Rational::one(), word.atoms.clone())];
    Ok(act_terms(datum, &StandardRule(orientation), &word.bottom, &terms, f))
}
