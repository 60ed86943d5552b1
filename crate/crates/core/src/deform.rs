//! Deformations by edge scalars `tau`, the rescaling isomorphisms between
//! them, and the extra gradings by crossing type.

use std::collections::{BTreeMap, VecDeque};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::cartan::{Orientation, Seq, SeqD, ValidatedCartan, Vertex, Weight};
use crate::k0::{shift_data, trace_numerators};
use crate::klr::oracle::random_word;
use crate::klr::{
    act_atoms, check_instance, relation_instances, verify_relations, Atom, BasisKey, CrossingRule, DiagramWord,
    KlrAlgebra, KlrError, PolState, RelationInstance, RelationRhs, Standard, StandardRule, Terms,
};
use crate::poly::MultiPoly;
use crate::qring::{expand, nu_q, QSeries, Rational, RationalQ};
use crate::report::Report;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DeformError {
    #[error("tau({from}, {to}) must be invertible")]
    ZeroTau { from: String, to: String },
    #[error("{0} is not an edge")]
    NotAnEdge(String),
}

/// An orientation of every edge with two invertible scalars per edge.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TauDatum {
    orientation: Orientation,
    tau: BTreeMap<(Vertex, Vertex), Rational>,
}

fn int(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

impl TauDatum {
    /// `entries` are `(from, to, tau_{from,to}, tau_{to,from})` along arrows
    /// `from -> to`; edges not listed keep the standard direction and `tau = 1`.
    pub fn new(
        datum: &ValidatedCartan,
        entries: &[(Vertex, Vertex, Rational, Rational)],
    ) -> Result<Self, DeformError> {
        let arrows: Vec<(Vertex, Vertex)> = entries.iter().map(|e| (e.0, e.1)).collect();
        let orientation = Orientation::from_arrows(datum, &arrows)
            .map_err(|_| DeformError::NotAnEdge(format!("{:?}", arrows)))?;
        let mut t = Self::all_ones_with(datum, orientation);
        for (a, b, ab, ba) in entries {
            for (x, y, v) in [(a, b, ab), (b, a, ba)] {
                if v.is_zero() {
                    return Err(DeformError::ZeroTau { from: datum.name(*x).into(), to: datum.name(*y).into() });
                }
                t.tau.insert((*x, *y), v.clone());
            }
        }
        Ok(t)
    }

    fn all_ones_with(datum: &ValidatedCartan, orientation: Orientation) -> Self {
        let mut tau = BTreeMap::new();
        for (a, b) in datum.edges() {
            tau.insert((a, b), Rational::one());
            tau.insert((b, a), Rational::one());
        }
        TauDatum { orientation, tau }
    }

    /// Every scalar `1`, standard orientation.
    pub fn all_ones(datum: &ValidatedCartan) -> Self {
        Self::all_ones_with(datum, Orientation::standard(datum))
    }

    /// `tau = 1` along each arrow and `-1` against it: the undeformed algebra.
    pub fn sign_adjusted(datum: &ValidatedCartan, orientation: &Orientation) -> Self {
        let mut t = Self::all_ones_with(datum, orientation.clone());
        for (a, b) in orientation.arrows() {
            t.tau.insert((b, a), -Rational::one());
        }
        t
    }

    /// Nonzero integer scalars in `[-5, 5]`.
    pub fn random<R: Rng>(datum: &ValidatedCartan, orientation: &Orientation, rng: &mut R) -> Self {
        let mut t = Self::all_ones_with(datum, orientation.clone());
        for v in t.tau.values_mut() {
            let mut x = 0;
            while x == 0 {
                x = rng.gen_range(-5..=5);
            }
            *v = int(x);
        }
        t
    }

    pub fn orientation(&self) -> &Orientation {
        &self.orientation
    }

    /// `tau_{ab}`; panics if `{a, b}` is not an edge.
    pub fn tau(&self, a: Vertex, b: Vertex) -> &Rational {
        &self.tau[&(a, b)]
    }

    pub fn scalars(&self) -> impl Iterator<Item = (&(Vertex, Vertex), &Rational)> {
        self.tau.iter()
    }

    /// Reverses the edge `{a, b}` and negates both of its scalars; the
    /// relations, hence the algebra, do not change.
    pub fn flipped(&self, a: Vertex, b: Vertex) -> Self {
        let mut t = self.clone();
        t.orientation = self.orientation.reversed(a, b);
        for key in [(a, b), (b, a)] {
            if let Some(v) = t.tau.get_mut(&key) {
                *v = -v.clone();
            }
        }
        t
    }

    /// The equivalent datum with every edge pointing to the higher vertex.
    pub fn normalized(&self) -> Self {
        let mut t = self.clone();
        for (a, b) in self.orientation.arrows() {
            if a > b {
                t = t.flipped(a, b);
            }
        }
        t
    }

    /// `tau_{ij} / tau_{ji}` along each standard edge `i < j` of the normalized datum.
    pub fn ratios(&self, datum: &ValidatedCartan) -> BTreeMap<(Vertex, Vertex), Rational> {
        let n = self.normalized();
        datum.edges().into_iter().map(|(i, j)| ((i, j), n.tau(i, j) / n.tau(j, i))).collect()
    }
}

impl CrossingRule for TauDatum {
    /// `(tau_{ab} x_{k+1}^{d_ab} - tau_{ba} x_k^{d_ba}) s_k f` along `a -> b`.
    fn mixed(&self, datum: &ValidatedCartan, a: Vertex, b: Vertex, k: usize, nvars: usize) -> Option<MultiPoly> {
        if !self.orientation.points(a, b) {
            return None;
        }
        let up = MultiPoly::var_pow(nvars, k + 1, datum.d_coeff(a, b).ok()?).scale(self.tau(a, b));
        let down = MultiPoly::var_pow(nvars, k, datum.d_coeff(b, a).ok()?).scale(self.tau(b, a));
        Some(&up - &down)
    }
}

fn dots(k: usize, e: u32) -> Vec<Atom> {
    vec![Atom::Dot(k); e as usize]
}

impl RelationRhs for TauDatum {
    fn quadratic(&self, datum: &ValidatedCartan, a: Vertex, b: Vertex, k: usize) -> Terms {
        let (ta, tb) = (self.tau(a, b).clone(), self.tau(b, a).clone());
        let left = dots(k, datum.d_coeff(a, b).unwrap_or(0));
        let right = dots(k + 1, datum.d_coeff(b, a).unwrap_or(0));
        if self.orientation.points(a, b) {
            vec![(ta, left), (-tb, right)]
        } else {
            vec![(tb, right), (-ta, left)]
        }
    }

    fn braid(&self, datum: &ValidatedCartan, a: Vertex, b: Vertex, k: usize) -> Terms {
        let c = if self.orientation.points(a, b) { self.tau(a, b).clone() } else { -self.tau(a, b).clone() };
        Standard.braid(datum, a, b, k).into_iter().map(|(v, w)| (v * &c, w)).collect()
    }
}

/// Acts by `word` on `state` in the representation deformed by `tau`.
pub fn tau_act_on_pol(
    word: &DiagramWord,
    state: &PolState,
    tau: &TauDatum,
    datum: &ValidatedCartan,
) -> Result<PolState, KlrError> {
    let rank = datum.rank();
    if state.components().any(|(s, _)| !s.weight(rank).same_as(&word.bottom.weight(rank))) {
        return Err(KlrError::WeightMismatch);
    }
    let Some(f) = state.get(&word.bottom) else {
        return Ok(PolState::default());
    };
    Ok(PolState::single(word.top(), act_atoms(datum, tau, &word.bottom, &word.atoms, f)))
}

/// The deformed relations as operator identities on random polynomials.
pub fn tau_relations_check(
    datum: &ValidatedCartan,
    tau: &TauDatum,
    max_strands: u32,
    samples: usize,
    seed: u64,
) -> Report {
    verify_relations(datum, tau, tau, max_strands, samples, seed)
}

/// The sign-adjusted deformation acts exactly as the undeformed algebra,
/// word by word, for every orientation obtained by flipping single edges.
pub fn verify_sign_adjusted(datum: &ValidatedCartan, words: usize, seed: u64) -> Report {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = Report::new();
    let std = Orientation::standard(datum);
    let mut orientations = vec![std.clone()];
    orientations.extend(datum.edges().into_iter().map(|(a, b)| std.reversed(a, b)));
    for (n, o) in orientations.iter().enumerate() {
        let tau = TauDatum::sign_adjusted(datum, o);
        let mut bad = None;
        for _ in 0..words {
            let w = random_word(datum, 4, 8, &mut rng);
            let f = MultiPoly::random(w.strands(), 3, 4, &mut rng);
            let plain = act_atoms(datum, &StandardRule(o), &w.bottom, &w.atoms, &f);
            if act_atoms(datum, &tau, &w.bottom, &w.atoms, &f) != plain {
                bad = Some(w.render(datum));
                break;
            }
        }
        let id = format!("tau.sign_adjusted[orientation {n}]");
        match bad {
            None => report.push(id, true, format!("{words} words")),
            Some(w) => report.push(id, false, format!("witness {w}")),
        }
    }
    report
}

/// Scalars of an isomorphism `R_{tau2} -> R_{tau1}` (both normalized):
/// `x 1_i -> mu_{i_k} x 1_i`, an `ab`-crossing `(a < b)` goes to
/// `lambda_{ab}` times itself, an `ii`-crossing to `mu_i^{-1}` times itself.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RescaleWitness {
    pub dots: Vec<Rational>,
    pub crossings: BTreeMap<(Vertex, Vertex), Rational>,
}

/// Exact `n`-th root of a rational, if there is one.
fn rational_root(x: &Rational, n: u32) -> Option<Rational> {
    if n == 1 {
        return Some(x.clone());
    }
    if x.is_negative() && n.is_multiple_of(2) {
        return None;
    }
    let root = |v: &BigInt| -> Option<BigInt> {
        let r = v.abs().nth_root(n);
        (r.pow(n) == v.abs()).then(|| if v.is_negative() { -r } else { r })
    };
    Some(Rational::new(root(x.numer())?, root(x.denom())?))
}

/// Searches rescalings turning the relations of `t2` into those of `t1`.
///
/// Dot scalars are propagated along a spanning forest from a root with
/// `mu = +-1`; every root and sign is tried.  Over the rationals an edge can
/// require a root that does not exist, in which case that attempt fails.
pub fn rescale_equiv(t1: &TauDatum, t2: &TauDatum, datum: &ValidatedCartan) -> Option<RescaleWitness> {
    let (t1, t2) = (t1.normalized(), t2.normalized());
    let n = datum.rank();
    let edges = datum.edges();
    let neighbours = |v: Vertex| edges.iter().filter_map(move |&(a, b)| (a == v).then_some(b).or((b == v).then_some(a)));
    // (mu_a^{d_ab} tau2_ab / tau1_ab) must equal (mu_b^{d_ba} tau2_ba / tau1_ba)
    let lambda = |a: Vertex, b: Vertex, mu_a: &Rational| -> Rational {
        mu_a.pow(datum.d_coeff(a, b).unwrap() as i32) * t2.tau(a, b) / t1.tau(a, b)
    };
    let solve = |a: Vertex, b: Vertex, mu_a: &Rational| -> Option<Rational> {
        let target = lambda(a, b, mu_a) * t1.tau(b, a) / t2.tau(b, a);
        rational_root(&target, datum.d_coeff(b, a).unwrap())
    };
    let mut mu: Vec<Option<Rational>> = vec![None; n];
    for start in 0..n {
        if mu[start].is_some() {
            continue;
        }
        // the component of `start`
        let mut comp = vec![Vertex(start)];
        let mut q = VecDeque::from([Vertex(start)]);
        while let Some(v) = q.pop_front() {
            for w in neighbours(v) {
                if !comp.contains(&w) {
                    comp.push(w);
                    q.push_back(w);
                }
            }
        }
        let mut found = None;
        'roots: for &root in &comp {
            for sign in [1, -1] {
                let mut local: BTreeMap<Vertex, Rational> = BTreeMap::from([(root, int(sign))]);
                let mut q = VecDeque::from([root]);
                while let Some(v) = q.pop_front() {
                    for w in neighbours(v) {
                        if local.contains_key(&w) {
                            continue;
                        }
                        match solve(v, w, &local[&v]) {
                            Some(m) if !m.is_zero() => {
                                local.insert(w, m);
                                q.push_back(w);
                            }
                            _ => continue 'roots,
                        }
                    }
                }
                let consistent = edges
                    .iter()
                    .filter(|(a, _)| local.contains_key(a))
                    .all(|&(a, b)| lambda(a, b, &local[&a]) == lambda(b, a, &local[&b]));
                if consistent {
                    found = Some(local);
                    break 'roots;
                }
            }
        }
        for (v, m) in found? {
            mu[v.0] = Some(m);
        }
    }
    let dots: Vec<Rational> = mu.into_iter().map(|m| m.expect("every vertex assigned")).collect();
    let crossings = edges.iter().map(|&(a, b)| ((a, b), lambda(a, b, &dots[a.0]))).collect();
    Some(RescaleWitness { dots, crossings })
}

/// Applies the witness to the words of `terms` (all over `bottom`).
fn rescale_terms(w: &RescaleWitness, bottom: &Seq, terms: &Terms) -> Terms {
    terms
        .iter()
        .map(|(c, atoms)| {
            let mut c = c.clone();
            let mut seq = bottom.0.clone();
            for &atom in atoms {
                match atom {
                    Atom::Dot(k) => c *= &w.dots[seq[k].0],
                    Atom::Cross(k) => {
                        let (a, b) = (seq[k], seq[k + 1]);
                        if a == b {
                            c /= &w.dots[a.0];
                        } else if let Some(l) = w.crossings.get(&(a.min(b), a.max(b))) {
                            if a < b {
                                c *= l;
                            }
                        }
                        seq.swap(k, k + 1);
                    }
                }
            }
            (c, atoms.clone())
        })
        .collect()
}

/// The image of every relation of `t2` under the witness holds in the
/// polynomial representation of `t1`.
pub fn verify_witness(
    t1: &TauDatum,
    t2: &TauDatum,
    w: &RescaleWitness,
    datum: &ValidatedCartan,
    max_strands: u32,
    samples: usize,
    seed: u64,
) -> bool {
    let (t1, t2) = (t1.normalized(), t2.normalized());
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    datum.weights_up_to(max_strands).iter().all(|nu| {
        datum.sequences(nu).unwrap_or_default().iter().all(|s| {
            relation_instances(datum, s, &t2).into_iter().all(|inst| {
                let mapped = RelationInstance {
                    lhs: rescale_terms(w, s, &inst.lhs),
                    rhs: rescale_terms(w, s, &inst.rhs),
                    ..inst
                };
                check_instance(datum, &t1, &mapped, samples, &mut rng).is_ok()
            })
        })
    })
}

/// `prod tau_{ij}/tau_{ji}` around each cycle closed by a non-forest edge,
/// edges read in the direction of travel.  Invariant under rescaling in the
/// simply-laced case.
pub fn cycle_products(tau: &TauDatum, datum: &ValidatedCartan) -> Vec<Rational> {
    let ratios = tau.ratios(datum);
    let ratio = |a: Vertex, b: Vertex| -> Rational {
        match ratios.get(&(a, b)) {
            Some(r) => r.clone(),
            None => ratios[&(b, a)].recip(),
        }
    };
    let n = datum.rank();
    let mut parent: Vec<Option<Vertex>> = vec![None; n];
    let mut seen = vec![false; n];
    let mut tree = Vec::new();
    for s in 0..n {
        if seen[s] {
            continue;
        }
        seen[s] = true;
        let mut q = VecDeque::from([Vertex(s)]);
        while let Some(v) = q.pop_front() {
            for (a, b) in datum.edges() {
                let w = if a == v { b } else if b == v { a } else { continue };
                if !seen[w.0] {
                    seen[w.0] = true;
                    parent[w.0] = Some(v);
                    tree.push((a, b));
                    q.push_back(w);
                }
            }
        }
    }
    let path_to_root = |mut v: Vertex| {
        let mut p = vec![v];
        while let Some(u) = parent[v.0] {
            p.push(u);
            v = u;
        }
        p
    };
    let mut out = Vec::new();
    for (a, b) in datum.edges() {
        if tree.contains(&(a, b)) {
            continue;
        }
        // cycle: a -> b, then b up to the common ancestor, then down to a
        let (pa, pb) = (path_to_root(a), path_to_root(b));
        let meet = *pa.iter().find(|v| pb.contains(v)).expect("same component");
        let mut walk = vec![a];
        walk.extend(pb.iter().take_while(|&&v| v != meet).copied());
        walk.push(meet);
        let down: Vec<Vertex> = pa.iter().take_while(|&&v| v != meet).copied().collect();
        walk.extend(down.into_iter().rev());
        // walk = a, b, ..., meet, ..., a
        let mut prod = Rational::one();
        for pair in walk.windows(2) {
            prod *= ratio(pair[0], pair[1]);
        }
        out.push(prod);
    }
    out
}

/// Principal degree and the extra degree of every pair `i < j`: `-1` per
/// `ij`-crossing and `+1` per `ji`-crossing.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MultiDegree {
    pub principal: i64,
    pub extra: BTreeMap<(Vertex, Vertex), i64>,
}

fn extra_degrees(bottom: &Seq, atoms: &[Atom]) -> BTreeMap<(Vertex, Vertex), i64> {
    let mut extra = BTreeMap::new();
    let mut seq = bottom.0.clone();
    for &atom in atoms {
        if let Atom::Cross(k) = atom {
            let (a, b) = (seq[k], seq[k + 1]);
            if a != b {
                *extra.entry((a.min(b), a.max(b))).or_insert(0) += if a < b { -1 } else { 1 };
            }
            seq.swap(k, k + 1);
        }
    }
    extra.retain(|_, v| *v != 0);
    extra
}

pub fn multidegree(word: &DiagramWord, datum: &ValidatedCartan) -> MultiDegree {
    MultiDegree { principal: word.degree(datum), extra: extra_degrees(&word.bottom, &word.atoms) }
}

pub fn key_multidegree(key: &BasisKey, datum: &ValidatedCartan) -> MultiDegree {
    multidegree(&key.to_word(), datum)
}

/// Every relation instance is homogeneous for the principal and all extra gradings.
pub fn verify_homogeneity(datum: &ValidatedCartan, max_strands: u32) -> Report {
    let mut report = Report::new();
    let (mut count, mut bad) = (0, None);
    for nu in datum.weights_up_to(max_strands) {
        for s in datum.sequences(&nu).unwrap_or_default() {
            for inst in relation_instances(datum, &s, &Standard) {
                count += 1;
                let degs: Vec<MultiDegree> = inst
                    .lhs
                    .iter()
                    .chain(&inst.rhs)
                    .filter(|(c, _)| !c.is_zero())
                    .map(|(_, atoms)| multidegree(&DiagramWord { bottom: s.clone(), atoms: atoms.clone() }, datum))
                    .collect();
                if degs.windows(2).any(|p| p[0] != p[1]) {
                    bad.get_or_insert(inst.id);
                }
            }
        }
    }
    match bad {
        None => report.push("multigrade.homogeneous", true, format!("{count} relation instances")),
        Some(id) => report.push("multigrade.homogeneous", false, format!("inhomogeneous {id}")),
    }
    report
}

/// A series in `q` whose coefficients are Laurent polynomials in `z`,
/// stored as `z`-exponent -> series in `q`.
pub type ZSeries = BTreeMap<i64, QSeries>;

/// The multigraded pairing of `[P_s]` and `[P_t]`, with `z` recording the
/// extra degree of the pair `{i, j}`: `z`-exponent -> rational function in `q`.
pub fn multigraded_pairing(
    alg: &KlrAlgebra,
    s: &SeqD,
    t: &SeqD,
    pair: (Vertex, Vertex),
) -> BTreeMap<i64, RationalQ> {
    let datum = alg.datum();
    let es = crate::klr::e_block(alg, s);
    let et = alg.flip(&crate::klr::e_block(alg, t));
    let grade = |k: &BasisKey| extra_degrees(&k.bottom, &k.atoms()).get(&pair).copied().unwrap_or(0);
    let nums = trace_numerators(alg, &es, std::slice::from_ref(&et), &grade).pop().unwrap_or_default();
    let shift = shift_data(s, datum).shift + shift_data(t, datum).shift;
    let sym = nu_q(&t.weight(datum.rank()), datum);
    nums.into_iter().map(|(z, num)| (z, (&RationalQ::from_laurent(num) * &sym).shift(-shift))).collect()
}

fn serre_blocks(i: Vertex, j: Vertex, a: u32, b: u32) -> SeqD {
    SeqD([(i, a), (j, 1), (i, b)].into_iter().filter(|&(_, n)| n > 0).collect())
}

/// `sum_a (-1)^a z^{sign * a} ([P_{i^(a) j i^(b)}], [P_t])` for every `t`
/// of the same weight, with `z` the variable of the pair `{i, j}`; `sign`
/// is `-1` when `i < j`.  Returns the `t` whose sum is nonzero through `q^trunc`.
pub fn deformed_serre_residuals(
    alg: &KlrAlgebra,
    i: Vertex,
    j: Vertex,
    trunc: i64,
) -> Result<(usize, Vec<String>), crate::cartan::CartanError> {
    let datum = alg.datum();
    let d = datum.d_coeff(i, j)?;
    let pair = (i.min(j), i.max(j));
    let sign: i64 = if i < j { -1 } else { 1 };
    let mut nu = Weight::zero(datum.rank());
    nu.add_vertex(i, d + 1);
    nu.add_vertex(j, 1);
    let targets = datum.divided_sequences(&nu)?;
    let mut bad = Vec::new();
    for t in &targets {
        let mut total: BTreeMap<i64, RationalQ> = BTreeMap::new();
        for a in 0..=d + 1 {
            let s = serre_blocks(i, j, a, d + 1 - a);
            for (z, r) in multigraded_pairing(alg, &s, t, pair) {
                let r = if a % 2 == 0 { r } else { -r };
                let slot = total.entry(z + sign * a as i64).or_insert_with(RationalQ::zero);
                *slot = &*slot + &r;
            }
        }
        let series: ZSeries = total.iter().map(|(&z, r)| (z, expand(r, trunc))).collect();
        if series.values().any(|s| !s.is_zero()) || total.values().any(|r| !r.is_zero()) {
            bad.push(datum.fmt_seqd(t));
        }
    }
    Ok((targets.len(), bad))
}

/// Homogeneity of all relations and the deformed Serre sums for every
/// ordered pair of adjacent vertices with at most `max_strands` strands.
pub fn verify_multigrading(alg: &KlrAlgebra, max_strands: u32, trunc: i64) -> Report {
    let datum = alg.datum();
    let mut report = verify_homogeneity(datum, max_strands);
    for (a, b) in datum.edges() {
        for (i, j) in [(a, b), (b, a)] {
            let d = datum.d(i, j);
            if d + 2 > max_strands {
                continue;
            }
            let id = format!("multigrade.serre[{},{}]", datum.name(i), datum.name(j));
            match deformed_serre_residuals(alg, i, j, trunc) {
                Ok((n, bad)) if bad.is_empty() => report.push(id, true, format!("vanishes against {n} projectives through q^{trunc}")),
                Ok((_, bad)) => report.push(id, false, format!("nonzero against {}", bad.join(" "))),
                Err(e) => report.push(id, false, e.to_string()),
            }
        }
    }
    report
}
