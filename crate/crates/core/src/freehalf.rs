//! The free algebra `'f` on generators `theta_i`, its twisted coproduct and
//! the symmetric bilinear form.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::RwLock;

use thiserror::Error;

use crate::cartan::{CartanError, Seq, SeqD, ValidatedCartan, Vertex, Weight};
use crate::qring::{LaurentPoly, RationalQ};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FreeError {
    #[error("terms of different weights cannot be combined")]
    MixedWeight,
    #[error(transparent)]
    Cartan(#[from] CartanError),
}

/// A weight-homogeneous element: words with rational-function coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FreeElement {
    weight: Weight,
    terms: BTreeMap<Seq, RationalQ>,
}

impl FreeElement {
    pub fn zero(weight: Weight) -> Self {
        FreeElement { weight, terms: BTreeMap::new() }
    }

    pub fn one(rank: usize) -> Self {
        Self::word(Seq::default(), rank)
    }

    /// The monomial `theta_{i_1} ... theta_{i_n}`.
    pub fn word(s: Seq, rank: usize) -> Self {
        Self::term(s, RationalQ::one(), rank)
    }

    pub fn term(s: Seq, c: RationalQ, rank: usize) -> Self {
        let mut x = FreeElement::zero(s.weight(rank));
        x.add_word(s, c);
        x
    }

    pub fn theta(i: Vertex, rank: usize) -> Self {
        Self::word(Seq(vec![i]), rank)
    }

    pub fn weight(&self) -> &Weight {
        &self.weight
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Seq, &RationalQ)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn add_word(&mut self, s: Seq, c: RationalQ) {
        let sum = match self.terms.remove(&s) {
            Some(old) => &old + &c,
            None => c,
        };
        if !sum.is_zero() {
            self.terms.insert(s, sum);
        }
    }

    /// Sum of two elements of the same weight.
    pub fn try_add(&self, other: &FreeElement) -> Result<FreeElement, FreeError> {
        if !self.weight.same_as(&other.weight) {
            return Err(FreeError::MixedWeight);
        }
        let mut out = self.clone();
        for (s, c) in &other.terms {
            out.add_word(s.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn scale(&self, c: &RationalQ) -> FreeElement {
        let mut out = FreeElement::zero(self.weight.clone());
        for (s, v) in &self.terms {
            out.add_word(s.clone(), v * c);
        }
        out
    }

    /// Concatenation product.
    pub fn multiply(&self, other: &FreeElement) -> FreeElement {
        let mut out = FreeElement::zero(self.weight.plus(&other.weight));
        for (s, a) in &self.terms {
            for (t, b) in &other.terms {
                out.add_word(s.concat(t), a * b);
            }
        }
        out
    }

    /// Renders `word: coefficient` lines in lexicographic word order.
    pub fn render(&self, datum: &ValidatedCartan) -> String {
        if self.terms.is_empty() {
            return "0\n".into();
        }
        let mut out = String::new();
        for (s, c) in &self.terms {
            let w = if s.is_empty() { "1".to_string() } else { datum.fmt_seq(s) };
            out.push_str(&format!("{w}: {c}\n"));
        }
        out
    }
}

/// An element of `'f (x) 'f`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct TensorElement {
    terms: BTreeMap<(Seq, Seq), RationalQ>,
}

impl TensorElement {
    pub fn terms(&self) -> impl Iterator<Item = (&(Seq, Seq), &RationalQ)> {
        self.terms.iter()
    }

    pub fn coeff(&self, left: &Seq, right: &Seq) -> RationalQ {
        self.terms.get(&(left.clone(), right.clone())).cloned().unwrap_or_else(RationalQ::zero)
    }

    fn add(&mut self, key: (Seq, Seq), c: RationalQ) {
        let sum = match self.terms.remove(&key) {
            Some(old) => &old + &c,
            None => c,
        };
        if !sum.is_zero() {
            self.terms.insert(key, sum);
        }
    }

    /// `(x1 (x) x2)(y1 (x) y2) = q^{-|x2|.|y1|} x1 y1 (x) x2 y2`.
    pub fn twisted_mul(&self, other: &TensorElement, datum: &ValidatedCartan) -> TensorElement {
        let mut out = TensorElement::default();
        for ((x1, x2), a) in &self.terms {
            for ((y1, y2), b) in &other.terms {
                let twist = seq_pairing(x2, y1, datum);
                out.add((x1.concat(y1), x2.concat(y2)), (a * b).shift(-twist));
            }
        }
        out
    }

    /// Component of bidegree `(left, right)`.
    pub fn component(&self, left: &Weight, right: &Weight, rank: usize) -> TensorElement {
        let terms = self
            .terms
            .iter()
            .filter(|((a, b), _)| a.weight(rank).same_as(left) && b.weight(rank).same_as(right))
            .map(|(k, v)| (k.clone(), v.clone()))
            .collect();
        TensorElement { terms }
    }
}

/// `|s| . |t|` for the weights of two words.
fn seq_pairing(s: &Seq, t: &Seq, datum: &ValidatedCartan) -> i64 {
    s.0.iter().map(|&a| t.0.iter().map(|&b| datum.dot(a, b)).sum::<i64>()).sum()
}

/// `r(theta_u)`: every split of the letters into a left and a right word,
/// with `q^{-u_t . u_s}` whenever an earlier letter `t` goes right and a
/// later letter `s` goes left.
fn coproduct_word(u: &Seq, datum: &ValidatedCartan) -> Vec<(Seq, Seq, i64)> {
    let n = u.len();
    let mut out = Vec::with_capacity(1 << n);
    for mask in 0u32..(1 << n) {
        let (mut left, mut right, mut twist) = (Vec::new(), Vec::new(), 0);
        for p in 0..n {
            if mask >> p & 1 == 1 {
                right.push(u.0[p]);
            } else {
                left.push(u.0[p]);
                for t in 0..p {
                    if mask >> t & 1 == 1 {
                        twist -= datum.dot(u.0[t], u.0[p]);
                    }
                }
            }
        }
        out.push((Seq(left), Seq(right), twist));
    }
    out
}

/// All bidegree components of `r(x)`.
pub fn coproduct(x: &FreeElement, datum: &ValidatedCartan) -> TensorElement {
    let mut out = TensorElement::default();
    for (u, c) in &x.terms {
        for (l, r, twist) in coproduct_word(u, datum) {
            out.add((l, r), c.shift(twist));
        }
    }
    out
}

/// The form `( , )` on `'f`, memoized on word pairs.
///
/// For words `u, v` of one weight, `(theta_u, theta_v) = N(u, v) / prod_k (1 - q^{u_k.u_k})`
/// with a Laurent polynomial `N`; only the numerators are cached.
pub struct BilinearForm<'a> {
    datum: &'a ValidatedCartan,
    by_right: RwLock<HashMap<(Seq, Seq), LaurentPoly>>,
    by_left: RwLock<HashMap<(Seq, Seq), LaurentPoly>>,
}

impl<'a> BilinearForm<'a> {
    pub fn new(datum: &'a ValidatedCartan) -> Self {
        BilinearForm { datum, by_right: RwLock::default(), by_left: RwLock::default() }
    }

    fn denominator(&self, u: &Seq) -> Vec<u32> {
        u.0.iter().map(|&i| self.datum.dot(i, i) as u32).collect()
    }

    /// Numerator via `(x, y theta_c) = (r(x), y (x) theta_c)`.
    fn numerator_right(&self, u: &Seq, v: &Seq) -> LaurentPoly {
        if u.len() != v.len() {
            return LaurentPoly::zero();
        }
        if u.is_empty() {
            return LaurentPoly::one();
        }
        let key = (u.clone(), v.clone());
        if let Some(p) = self.by_right.read().unwrap().get(&key) {
            return p.clone();
        }
        let (&c, vrest) = v.0.split_last().unwrap();
        let vrest = Seq(vrest.to_vec());
        let mut acc = LaurentPoly::zero();
        let mut later = 0i64;
        for p in (0..u.len()).rev() {
            if u.0[p] == c {
                let mut rest = u.0.clone();
                rest.remove(p);
                acc += &self.numerator_right(&Seq(rest), &vrest).shift(-later);
            }
            later += self.datum.dot(c, u.0[p]);
        }
        self.by_right.write().unwrap().insert(key, acc.clone());
        acc
    }

    /// Numerator via `(theta_c x, y) = (theta_c (x) x, r(y))`.
    fn numerator_left(&self, u: &Seq, v: &Seq) -> LaurentPoly {
        if u.len() != v.len() {
            return LaurentPoly::zero();
        }
        if u.is_empty() {
            return LaurentPoly::one();
        }
        let key = (u.clone(), v.clone());
        if let Some(p) = self.by_left.read().unwrap().get(&key) {
            return p.clone();
        }
        let c = u.0[0];
        let urest = Seq(u.0[1..].to_vec());
        let mut acc = LaurentPoly::zero();
        let mut earlier = 0i64;
        for p in 0..v.len() {
            if v.0[p] == c {
                let mut rest = v.0.clone();
                rest.remove(p);
                acc += &self.numerator_left(&urest, &Seq(rest)).shift(-earlier);
            }
            earlier += self.datum.dot(c, v.0[p]);
        }
        self.by_left.write().unwrap().insert(key, acc.clone());
        acc
    }

    fn pair_with(&self, x: &FreeElement, y: &FreeElement, left: bool) -> RationalQ {
        let mut acc = RationalQ::zero();
        if !x.weight.same_as(&y.weight) {
            return acc;
        }
        for (u, a) in &x.terms {
            for (v, b) in &y.terms {
                let n = if left { self.numerator_left(u, v) } else { self.numerator_right(u, v) };
                if n.is_zero() {
                    continue;
                }
                let val = RationalQ::new(n, self.denominator(u));
                acc = &acc + &(&(a * b) * &val);
            }
        }
        acc
    }

    /// `(x, y)`, recursing on the letters of `y`.
    pub fn pair(&self, x: &FreeElement, y: &FreeElement) -> RationalQ {
        self.pair_with(x, y, false)
    }

    /// `(x, y)`, recursing on the letters of `x`; agrees with [`Self::pair`].
    pub fn pair_transposed(&self, x: &FreeElement, y: &FreeElement) -> RationalQ {
        self.pair_with(x, y, true)
    }

    /// True iff `(x, theta_w) = 0` for every word `w` of the weight of `x`.
    pub fn in_radical(&self, x: &FreeElement) -> Result<bool, FreeError> {
        let rank = self.datum.rank();
        for w in self.datum.sequences(&x.weight)? {
            if !self.pair(x, &FreeElement::word(w, rank)).is_zero() {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// `(x, y)` with a fresh cache.
pub fn bilinear_form(x: &FreeElement, y: &FreeElement, datum: &ValidatedCartan) -> RationalQ {
    BilinearForm::new(datum).pair(x, y)
}

/// True iff `x` is in the radical of the form.
pub fn radical_check(x: &FreeElement, datum: &ValidatedCartan) -> Result<bool, FreeError> {
    BilinearForm::new(datum).in_radical(x)
}

/// `1/([n_1]_{i_1}! ... [n_r]_{i_r}!)`.
pub fn inv_factorial(s: &SeqD, datum: &ValidatedCartan) -> RationalQ {
    s.0.iter()
        .fold(RationalQ::one(), |acc, &(i, n)| &acc * &RationalQ::inv_quantum_factorial(n, datum.half_norm(i)))
}

/// `theta_{i_1}^{(n_1)} ... theta_{i_r}^{(n_r)}`.
pub fn divided_monomial(s: &SeqD, datum: &ValidatedCartan) -> FreeElement {
    FreeElement::term(s.flatten(), inv_factorial(s, datum), datum.rank())
}

/// `sum_{a+b=d_ij+1} (-1)^a theta_i^(a) theta_j theta_i^(b)`.
pub fn serre_element(i: Vertex, j: Vertex, datum: &ValidatedCartan) -> Result<FreeElement, FreeError> {
    let d = datum.d_coeff(i, j)?;
    let rank = datum.rank();
    let mut w = Weight::zero(rank);
    w.add_vertex(i, d + 1);
    w.add_vertex(j, 1);
    let mut out = FreeElement::zero(w);
    for a in 0..=d + 1 {
        let b = d + 1 - a;
        let mut blocks = Vec::new();
        if a > 0 {
            blocks.push((i, a));
        }
        blocks.push((j, 1));
        if b > 0 {
            blocks.push((i, b));
        }
        let mut term = divided_monomial(&SeqD(blocks), datum);
        if a % 2 == 1 {
            term = term.scale(&-RationalQ::one());
        }
        out = out.try_add(&term)?;
    }
    Ok(out)
}

impl fmt::Display for TensorElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for ((a, b), c) in &self.terms {
            writeln!(f, "{:?} (x) {:?}: {c}", a.0, b.0)?;
        }
        Ok(())
    }
}
