use crate::cartan::{Seq, ValidatedCartan};
use crate::qring::{QSeries, Rational};

use super::BasisKey;

/// Smallest `k` with `w^{-1}(k) > w^{-1}(k+1)`.
pub(crate) fn min_left_descent(perm: &[usize]) -> Option<usize> {
    let mut inv = vec![0; perm.len()];
    for (p, &q) in perm.iter().enumerate() {
        inv[q] = p;
    }
    (0..perm.len().saturating_sub(1)).find(|&k| inv[k] > inv[k + 1])
}

/// Lexicographically smallest reduced word of `perm` in product order
/// (first letter on top), 0-based letters.
pub fn reduced_word_of(perm: &[usize]) -> Vec<usize> {
    let mut w = perm.to_vec();
    let mut out = Vec::new();
    while let Some(k) = min_left_descent(&w) {
        out.push(k);
        for v in w.iter_mut() {
            if *v == k {
                *v = k + 1;
            } else if *v == k + 1 {
                *v = k;
            }
        }
    }
    out
}

/// Permutations `w` with `top[w(p)] = bottom[p]`, in lexicographic order.
pub fn permutations_between(bottom: &Seq, top: &Seq) -> Vec<Vec<usize>> {
    let n = bottom.len();
    let mut out = Vec::new();
    if top.len() != n {
        return out;
    }
    let mut cur = Vec::with_capacity(n);
    let mut used = vec![false; n];
    fn rec(b: &Seq, t: &Seq, cur: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        let p = cur.len();
        if p == b.len() {
            out.push(cur.clone());
            return;
        }
        for q in 0..b.len() {
            if !used[q] && t.0[q] == b.0[p] {
                used[q] = true;
                cur.push(q);
                rec(b, t, cur, used, out);
                cur.pop();
                used[q] = false;
            }
        }
    }
    rec(bottom, top, &mut cur, &mut used, &mut out);
    out
}

/// All basis keys from `bottom` to `top` of degree `<= max_deg`.
pub fn enumerate_basis(bottom: &Seq, top: &Seq, max_deg: i64, datum: &ValidatedCartan) -> Vec<BasisKey> {
    let n = bottom.len();
    let weights: Vec<i64> = bottom.0.iter().map(|&v| datum.dot(v, v)).collect();
    let mut out = Vec::new();
    for perm in permutations_between(bottom, top) {
        let base = BasisKey { bottom: bottom.clone(), perm, dots: vec![0; n] };
        let budget = max_deg - base.degree(datum);
        if budget < 0 {
            continue;
        }
        let mut dots = vec![0u32; n];
        fn rec(p: usize, left: i64, w: &[i64], dots: &mut Vec<u32>, base: &BasisKey, out: &mut Vec<BasisKey>) {
            if p == w.len() {
                out.push(BasisKey { dots: dots.clone(), ..base.clone() });
                return;
            }
            let mut e = 0;
            while e as i64 * w[p] <= left {
                dots[p] = e;
                rec(p + 1, left - e as i64 * w[p], w, dots, base, out);
                e += 1;
            }
            dots[p] = 0;
        }
        rec(0, budget, &weights, &mut dots, &base, &mut out);
    }
    out
}

/// `sum_keys q^deg(key)` through degree `max_deg`.
pub fn gdim(bottom: &Seq, top: &Seq, max_deg: i64, datum: &ValidatedCartan) -> QSeries {
    let mut s = QSeries::zero(max_deg);
    for k in enumerate_basis(bottom, top, max_deg, datum) {
        s.add_term(k.degree(datum), Rational::from_integer(1.into()));
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cartan::{CartanDatum, Vertex};
    use crate::qring::{expand, LaurentPoly, RationalQ};

    fn datum(ii: i64, jj: i64, ij: i64) -> ValidatedCartan {
        CartanDatum::new(vec!["i", "j"], vec![vec![ii, ij], vec![ij, jj]]).validate().unwrap()
    }

    fn seq(v: &[usize]) -> Seq {
        Seq(v.iter().map(|&k| Vertex(k)).collect())
    }

    #[test]
    fn reduced_words_are_lex_smallest() {
        assert_eq!(reduced_word_of(&[2, 1, 0]), vec![0, 1, 0]);
        assert_eq!(reduced_word_of(&[3, 2, 1, 0]), vec![0, 1, 0, 2, 1, 0]);
        assert_eq!(reduced_word_of(&[0, 1]), Vec::<usize>::new());
        // brute force over all reduced words in S4
        for perm in permutations_between(&seq(&[0, 0, 0, 0]), &seq(&[0, 0, 0, 0])) {
            let w = reduced_word_of(&perm);
            let len = BasisKey { bottom: seq(&[0, 0, 0, 0]), perm: perm.clone(), dots: vec![0; 4] }.crossings();
            assert_eq!(w.len(), len);
            let mut all = Vec::new();
            all_reduced(&perm, &mut Vec::new(), &mut all);
            assert_eq!(all.iter().min(), Some(&w));
        }
    }

    fn all_reduced(perm: &[usize], prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        let mut inv = vec![0; perm.len()];
        for (p, &q) in perm.iter().enumerate() {
            inv[q] = p;
        }
        let descents: Vec<usize> = (0..perm.len() - 1).filter(|&k| inv[k] > inv[k + 1]).collect();
        if descents.is_empty() {
            out.push(prefix.clone());
        }
        for k in descents {
            let next: Vec<usize> = perm.iter().map(|&v| if v == k { k + 1 } else if v == k + 1 { k } else { v }).collect();
            prefix.push(k);
            all_reduced(&next, prefix, out);
            prefix.pop();
        }
    }

    #[test]
    fn enumeration_examples() {
        let c = datum(2, 2, -1);
        assert_eq!(enumerate_basis(&seq(&[0]), &seq(&[0]), 4, &c).len(), 3);
        let ij = enumerate_basis(&seq(&[0, 1]), &seq(&[1, 0]), 6, &c);
        assert!(ij.iter().all(|k| k.perm == vec![1, 0]));
        // identity and the crossing with at most one dot
        assert_eq!(enumerate_basis(&seq(&[0, 0]), &seq(&[0, 0]), 0, &c).len(), 4);
    }

    #[test]
    fn gdim_examples() {
        let c = datum(2, 4, 0);
        let one = RationalQ::new(LaurentPoly::one(), vec![2]);
        assert_eq!(gdim(&seq(&[0]), &seq(&[0]), 10, &c), expand(&one, 10));
        let two = RationalQ::new(LaurentPoly::one(), vec![2, 4]);
        assert_eq!(gdim(&seq(&[0, 1]), &seq(&[0, 1]), 12, &c), expand(&two, 12));
        assert_eq!(gdim(&seq(&[]), &seq(&[]), 5, &c), expand(&RationalQ::one(), 5));
    }
}
