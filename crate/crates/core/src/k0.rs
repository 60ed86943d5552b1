//! The Grothendieck-group side: shifted projectives, their pairing, and the
//! comparison with the bilinear form on the free algebra.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::Zero;
use thiserror::Error;

use crate::cartan::{Seq, SeqD, ValidatedCartan, Weight};
use crate::freehalf::{bilinear_form, divided_monomial, FreeElement};
use crate::klr::{e_block, enumerate_basis, oracle, permutations_between, BasisKey, KLRElement, KlrAlgebra};
use crate::poly::MultiPoly;
use crate::qring::{expand, nu_q, qfact, LaurentPoly, QSeries, Rational, RationalQ};
use crate::report::Report;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum K0Error {
    #[error("coefficient of {0} is not a Laurent polynomial")]
    NotInSpanningSet(String),
}

/// `i!` and `<i>` of a divided-power sequence.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShiftData {
    pub factorial: LaurentPoly,
    pub shift: i64,
}

pub fn shift_data(s: &SeqD, datum: &ValidatedCartan) -> ShiftData {
    let mut factorial = LaurentPoly::one();
    let mut shift = 0;
    for &(v, n) in &s.0 {
        let h = datum.half_norm(v);
        factorial = &factorial * &qfact(n, h);
        shift += (n as i64) * (n as i64 - 1) / 2 * h;
    }
    ShiftData { factorial, shift }
}

/// Positions of each label in `s`, grouped by label.
fn colour_groups(s: &Seq) -> Vec<Vec<usize>> {
    let mut groups: BTreeMap<_, Vec<usize>> = BTreeMap::new();
    for (p, v) in s.0.iter().enumerate() {
        groups.entry(*v).or_default().push(p);
    }
    groups.into_values().collect()
}

/// Exponent vectors `x^a` with `a_{p_r} < r` inside every colour group:
/// a basis of polynomials over the symmetric ones.
fn artin_exponents(n: usize, groups: &[Vec<usize>]) -> Vec<Vec<u32>> {
    let mut out = vec![vec![0u32; n]];
    for g in groups {
        for (r, &p) in g.iter().enumerate() {
            let mut next = Vec::new();
            for e in &out {
                for a in 0..=r as u32 {
                    let mut e = e.clone();
                    e[p] = a;
                    next.push(e);
                }
            }
            out = next;
        }
    }
    out
}

/// Complete homogeneous monomials of degree `m` in the variables `vars`.
fn complete_homogeneous(n: usize, vars: &[usize], m: u32) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    fn rec(vars: &[usize], left: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        let Some((&v, rest)) = vars.split_first() else {
            if left == 0 {
                out.push(cur.clone());
            }
            return;
        };
        for a in 0..=left {
            cur[v] += a;
            rec(rest, left - a, cur, out);
            cur[v] -= a;
        }
    }
    rec(vars, m, &mut vec![0; n], &mut out);
    out
}

/// Reduces `f` modulo the ideal generated by the positive-degree symmetric
/// polynomials of every colour group, using the Groebner basis
/// `h_r(y_r, ..., y_k)` (lex order, leading term `y_r^r`).
fn reduce_mod_symmetric(f: &MultiPoly, groups: &[Vec<usize>]) -> BTreeMap<Vec<u32>, Rational> {
    let n = f.nvars();
    let mut todo: BTreeMap<Vec<u32>, Rational> = f.terms().map(|(e, c)| (e.clone(), c.clone())).collect();
    let mut done: BTreeMap<Vec<u32>, Rational> = BTreeMap::new();
    // largest monomials first, so every term is visited once
    while let Some((e, c)) = todo.pop_last() {
        let hit = groups.iter().find_map(|g| {
            g.iter().enumerate().find(|&(r, &p)| e[p] as usize > r).map(|(r, _)| (g, r))
        });
        let Some((g, r)) = hit else {
            *done.entry(e).or_insert_with(Rational::zero) += c;
            continue;
        };
        let m = r as u32 + 1;
        let p = g[r];
        let mut rest = e.clone();
        rest[p] -= m;
        for h in complete_homogeneous(n, &g[r..], m) {
            if h[p] == m {
                continue;
            }
            let mono: Vec<u32> = rest.iter().zip(&h).map(|(a, b)| a + b).collect();
            let slot = todo.entry(mono.clone()).or_insert_with(Rational::zero);
            *slot -= &c;
            if slot.is_zero() {
                todo.remove(&mono);
            }
        }
    }
    done.retain(|_, c| !c.is_zero());
    done
}

/// `gdim e R e'` for idempotents `e` (on `top`) and `e'` (on `bottom`) as an
/// exact rational function.
///
/// `x -> e x e'` is an idempotent map commuting with the central symmetric
/// polynomials, and `1_top R 1_bottom` is free over them with basis
/// `psi_w x^a`, `x^a` running over the Artin monomials.  The graded rank of
/// the image is the graded trace, and the trace only sees the scalar
/// diagonal coefficients.
pub fn idempotent_gdim(alg: &KlrAlgebra, e: &KLRElement, e2: &KLRElement) -> RationalQ {
    idempotent_gdims(alg, e, std::slice::from_ref(e2)).pop().expect("one input")
}

/// `idempotent_gdim` for one `e` against several `e'` on a common bottom.
pub fn idempotent_gdims(alg: &KlrAlgebra, e: &KLRElement, rights: &[KLRElement]) -> Vec<RationalQ> {
    let Some(nu) = rights.first().map(|r| r.bottom().weight(alg.datum().rank())) else {
        return Vec::new();
    };
    let sym = nu_q(&nu, alg.datum());
    trace_numerators(alg, e, rights, &|_| ())
        .into_iter()
        .map(|m| match m.get(&()) {
            Some(num) => &RationalQ::from_laurent(num.clone()) * &sym,
            None => RationalQ::zero(),
        })
        .collect()
}

/// Numerators of the graded traces of `x -> e x e'`, one map per `e'`,
/// split further by `grade` (constant on the image of a basis element).
/// The full graded dimension is the numerator times the Hilbert series of
/// the symmetric polynomials.
pub fn trace_numerators<K: Ord>(
    alg: &KlrAlgebra,
    e: &KLRElement,
    rights: &[KLRElement],
    grade: &dyn Fn(&BasisKey) -> K,
) -> Vec<BTreeMap<K, LaurentPoly>> {
    let datum = alg.datum();
    let mut numerators: Vec<BTreeMap<K, LaurentPoly>> = rights.iter().map(|_| BTreeMap::new()).collect();
    let Some(bottom) = rights.first().map(|r| r.bottom().clone()) else {
        return numerators;
    };
    let top = e.top().clone();
    if !top.weight(datum.rank()).same_as(&bottom.weight(datum.rank())) {
        return numerators;
    }
    let n = bottom.len();
    let groups = colour_groups(&bottom);
    for perm in permutations_between(&bottom, &top) {
        for a in artin_exponents(n, &groups) {
            let key = BasisKey { bottom: bottom.clone(), perm: perm.clone(), dots: a.clone() };
            let left = alg.multiply(e, &KLRElement::from_key(key.clone(), 1));
            for (num, e2) in numerators.iter_mut().zip(rights) {
                let image = alg.multiply(&left, e2);
                let mut f = MultiPoly::zero(n);
                for (k, c) in image.terms() {
                    if k.perm == perm {
                        f.add_term(k.dots.clone(), Rational::from_integer(c.into()));
                    }
                }
                if let Some(c) = reduce_mod_symmetric(&f, &groups).get(&a) {
                    num.entry(grade(&key)).or_default().add_term(key.degree(datum), c.clone());
                }
            }
        }
    }
    for num in &mut numerators {
        num.retain(|_, p| !p.is_zero());
    }
    numerators
}

/// The pairings of all `s` in `seqs` (one weight) against all `t` in `seqs`.
pub fn pairing_matrix(alg: &KlrAlgebra, seqs: &[SeqD]) -> Vec<Vec<RationalQ>> {
    let datum = alg.datum();
    let shifts: Vec<i64> = seqs.iter().map(|s| shift_data(s, datum).shift).collect();
    // group the right idempotents by their bottom sequence
    let mut by_bottom: BTreeMap<Seq, Vec<usize>> = BTreeMap::new();
    for (y, t) in seqs.iter().enumerate() {
        by_bottom.entry(t.flatten()).or_default().push(y);
    }
    let flips: Vec<KLRElement> = seqs.iter().map(|t| alg.flip(&e_block(alg, t))).collect();
    let mut out = vec![vec![RationalQ::zero(); seqs.len()]; seqs.len()];
    for (x, s) in seqs.iter().enumerate() {
        let es = e_block(alg, s);
        for ys in by_bottom.values() {
            let rights: Vec<KLRElement> = ys.iter().map(|&y| flips[y].clone()).collect();
            for (&y, g) in ys.iter().zip(idempotent_gdims(alg, &es, &rights)) {
                out[x][y] = g.shift(-shifts[x] - shifts[y]);
            }
        }
    }
    out
}

/// `([P_s], [P_t]) = q^{-<s>-<t>} gdim e_s R psi(e_t)`.
pub fn pairing(alg: &KlrAlgebra, s: &SeqD, t: &SeqD) -> RationalQ {
    let datum = alg.datum();
    let rank = datum.rank();
    if !s.weight(rank).same_as(&t.weight(rank)) {
        return RationalQ::zero();
    }
    let es = e_block(alg, s);
    let et = alg.flip(&e_block(alg, t));
    let shift = shift_data(s, datum).shift + shift_data(t, datum).shift;
    idempotent_gdim(alg, &es, &et).shift(-shift)
}

/// The pairing truncated at `q^trunc`.
pub fn pairing_series(alg: &KlrAlgebra, s: &SeqD, t: &SeqD, trunc: i64) -> QSeries {
    expand(&pairing(alg, s, t), trunc)
}

/// The same series by brute force: the rank of `x -> e_s x psi(e_t)` on the
/// basis of each degree.  Exponential; meant for small weights.
pub fn pairing_bruteforce(alg: &KlrAlgebra, s: &SeqD, t: &SeqD, trunc: i64) -> QSeries {
    let datum = alg.datum();
    let rank = datum.rank();
    if !s.weight(rank).same_as(&t.weight(rank)) {
        return QSeries::zero(trunc);
    }
    let shift = shift_data(s, datum).shift + shift_data(t, datum).shift;
    let (top, bottom) = (s.flatten(), t.flatten());
    let es = e_block(alg, s);
    let et = alg.flip(&e_block(alg, t));
    let mut by_degree: BTreeMap<i64, Vec<BasisKey>> = BTreeMap::new();
    for k in enumerate_basis(&bottom, &top, trunc + shift, datum) {
        by_degree.entry(k.degree(datum)).or_default().push(k);
    }
    let mut out = QSeries::zero(trunc);
    for (g, keys) in by_degree {
        let images: Vec<KLRElement> =
            keys.into_iter().map(|k| alg.multiply(&alg.multiply(&es, &KLRElement::from_key(k, 1)), &et)).collect();
        let mut support: Vec<&BasisKey> = images.iter().flat_map(|x| x.terms().map(|(k, _)| k)).collect();
        support.sort();
        support.dedup();
        let rows = images
            .iter()
            .map(|x| support.iter().map(|k| Rational::from_integer(x.coeff(k).into())).collect())
            .collect();
        let r = oracle::rank(rows);
        if r > 0 {
            out.add_term(g - shift, Rational::from_integer((r as i64).into()));
        }
    }
    out
}

/// A formal `Z[q, q^-1]`-combination of classes `[P_s]`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct K0Class {
    terms: BTreeMap<SeqD, LaurentPoly>,
}

impl K0Class {
    pub fn zero() -> Self {
        K0Class::default()
    }

    pub fn basis(s: SeqD) -> Self {
        let mut x = K0Class::zero();
        x.add_term(s, &LaurentPoly::one());
        x
    }

    pub fn terms(&self) -> impl Iterator<Item = (&SeqD, &LaurentPoly)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, s: SeqD, c: &LaurentPoly) {
        let slot = self.terms.entry(s.clone()).or_default();
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&s);
        }
    }

    /// Induction: `[P_s][P_t] = [P_{st}]`, extended bilinearly.
    pub fn product(&self, other: &K0Class) -> K0Class {
        let mut out = K0Class::zero();
        for (s, a) in &self.terms {
            for (t, b) in &other.terms {
                out.add_term(s.concat(t), &(a * b));
            }
        }
        out
    }

    /// The pairing extended bilinearly.
    pub fn pair(&self, other: &K0Class, alg: &KlrAlgebra) -> RationalQ {
        let mut acc = RationalQ::zero();
        for (s, a) in &self.terms {
            for (t, b) in &other.terms {
                acc = &acc + &(&pairing(alg, s, t) * &(a * b));
            }
        }
        acc
    }
}

impl fmt::Display for K0Class {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.terms.iter().map(|(s, c)| format!("({c})[P{:?}]", s.0)).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// `theta_{i_1}^{(n_1)} ... theta_{i_r}^{(n_r)} -> [P_{i_1^(n_1) ... i_r^(n_r)}]`.
pub fn gamma(s: &SeqD) -> K0Class {
    K0Class::basis(s.clone())
}

/// `gamma` on a combination of words `theta_{i_1} ... theta_{i_n}`; every
/// coefficient has to be a Laurent polynomial.
pub fn gamma_free(x: &FreeElement, datum: &ValidatedCartan) -> Result<K0Class, K0Error> {
    let mut out = K0Class::zero();
    for (w, c) in x.terms() {
        let c = c.try_into_laurent().ok_or_else(|| K0Error::NotInSpanningSet(datum.fmt_seq(w)))?;
        out.add_term(SeqD::from_seq(w), &c);
    }
    Ok(out)
}

pub fn k0_product(s: &SeqD, t: &SeqD) -> K0Class {
    gamma(s).product(&gamma(t))
}

/// For all divided sequences `s, t` of weight `nu`, the form on divided
/// monomials equals the pairing of projectives, exactly and through `q^trunc`.
pub fn verify_intertwine(alg: &KlrAlgebra, nu: &Weight, trunc: i64) -> Report {
    let datum = alg.datum();
    let mut report = Report::new();
    let seqs = match datum.divided_sequences(nu) {
        Ok(s) => s,
        Err(e) => {
            report.push(format!("pair[{}]", datum.fmt_weight(nu)), false, e.to_string());
            return report;
        }
    };
    let pairings = pairing_matrix(alg, &seqs);
    for (x, s) in seqs.iter().enumerate() {
        for (y, t) in seqs.iter().enumerate() {
            let form = bilinear_form(&divided_monomial(s, datum), &divided_monomial(t, datum), datum);
            let ours = &pairings[x][y];
            let (fs, ps) = (expand(&form, trunc), expand(ours, trunc));
            let exact = &form == ours;
            let symmetric = ours == &pairings[y][x];
            let id = format!("pair[{};{}|{}]", datum.fmt_weight(nu), datum.fmt_seqd(s), datum.fmt_seqd(t));
            let detail = if fs != ps {
                let e = (fs.terms().map(|(e, _)| e).chain(ps.terms().map(|(e, _)| e)))
                    .filter(|&e| fs.coeff(e) != ps.coeff(e))
                    .min()
                    .unwrap_or(0);
                format!("mismatch at q^{e}: form {} vs K0 {}", fs.coeff(e), ps.coeff(e))
            } else if !exact {
                "series agree but rational functions differ".into()
            } else if !symmetric {
                "pairing not symmetric".into()
            } else {
                format!("{ps}")
            };
            report.push(id, fs == ps && exact && symmetric, detail);
        }
    }
    report
}
