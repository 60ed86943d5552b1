//! The nilHecke ring as operators on polynomials: divided differences, the
//! longest element and the idempotents `e_n`.

use std::fmt;

use thiserror::Error;

use crate::poly::{monomials_up_to, MultiPoly};
use crate::report::Report;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum NilHeckeError {
    #[error("index {k} out of range for {nvars} variables")]
    IndexOutOfRange { k: usize, nvars: usize },
}

/// A generator of a diagram: a dot on strand `k` or a crossing of strands
/// `k, k+1` (both 0-based).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Atom {
    Dot(usize),
    Cross(usize),
}

impl Atom {
    pub fn shifted(self, off: usize) -> Atom {
        match self {
            Atom::Dot(k) => Atom::Dot(k + off),
            Atom::Cross(k) => Atom::Cross(k + off),
        }
    }

    pub fn is_cross(self) -> bool {
        matches!(self, Atom::Cross(_))
    }
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Atom::Dot(k) => write!(f, "x{}", k + 1),
            Atom::Cross(k) => write!(f, "c{}", k + 1),
        }
    }
}

/// `partial_k` with `k` 1-based, as in the usual notation.
pub fn divided_difference(k: usize, f: &MultiPoly) -> Result<MultiPoly, NilHeckeError> {
    if k == 0 || k >= f.nvars() {
        return Err(NilHeckeError::IndexOutOfRange { k, nvars: f.nvars() });
    }
    Ok(f.divided_difference(k - 1))
}

/// Staircase reduced word `(1)(2 1)(3 2 1)...` of the longest permutation in
/// product order (leftmost letter on top), 1-based.
pub fn staircase_word(n: usize) -> Vec<usize> {
    (1..n).flat_map(|m| (1..=m).rev()).collect()
}

/// `partial_{w_0} f` along the staircase word.
pub fn longest_dd(n: usize, f: &MultiPoly) -> MultiPoly {
    NHOperator::longest(n).apply(f)
}

/// A word in dots and divided differences, applied first atom first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NHOperator {
    pub atoms: Vec<Atom>,
    pub nvars: usize,
}

impl NHOperator {
    pub fn identity(nvars: usize) -> Self {
        NHOperator { atoms: Vec::new(), nvars }
    }

    pub fn new(atoms: Vec<Atom>, nvars: usize) -> Result<Self, NilHeckeError> {
        for &a in &atoms {
            let (k, limit) = match a {
                Atom::Dot(k) => (k, nvars),
                Atom::Cross(k) => (k, nvars.saturating_sub(1)),
            };
            if k >= limit {
                return Err(NilHeckeError::IndexOutOfRange { k: k + 1, nvars });
            }
        }
        Ok(NHOperator { atoms, nvars })
    }

    /// `partial_{w_0}` on `n` variables.
    pub fn longest(n: usize) -> Self {
        let atoms = staircase_word(n).into_iter().rev().map(|k| Atom::Cross(k - 1)).collect();
        NHOperator { atoms, nvars: n }
    }

    /// `e_n = x_1^{n-1} x_2^{n-2} ... x_{n-1} partial_{w_0}`.
    pub fn e_idempotent(n: usize) -> Self {
        let mut op = Self::longest(n);
        for p in 0..n.saturating_sub(1) {
            op.atoms.extend(std::iter::repeat_n(Atom::Dot(p), n - 1 - p));
        }
        op
    }

    /// `self` followed by `next`.
    pub fn then(&self, next: &NHOperator) -> Self {
        let mut atoms = self.atoms.clone();
        atoms.extend_from_slice(&next.atoms);
        NHOperator { atoms, nvars: self.nvars.max(next.nvars) }
    }

    /// The same word acting on strands `off..off+nvars` of `total` strands.
    pub fn embedded(&self, off: usize, total: usize) -> Self {
        NHOperator { atoms: self.atoms.iter().map(|a| a.shifted(off)).collect(), nvars: total }
    }

    pub fn dots(k: usize, a: u32, nvars: usize) -> Self {
        NHOperator { atoms: vec![Atom::Dot(k); a as usize], nvars }
    }

    pub fn crossings(ks: impl IntoIterator<Item = usize>, nvars: usize) -> Self {
        NHOperator { atoms: ks.into_iter().map(Atom::Cross).collect(), nvars }
    }

    pub fn apply(&self, f: &MultiPoly) -> MultiPoly {
        let mut g = f.clone();
        for &a in &self.atoms {
            if g.is_zero() {
                break;
            }
            g = match a {
                Atom::Dot(k) => g.mul_var_pow(k, 1),
                Atom::Cross(k) => g.divided_difference(k),
            };
        }
        g
    }

    /// Largest drop of polynomial degree below the input degree along the word.
    pub fn max_drop(&self) -> u32 {
        let (mut level, mut low) = (0i64, 0i64);
        for a in &self.atoms {
            level += if a.is_cross() { -1 } else { 1 };
            low = low.min(level);
        }
        (-low) as u32
    }
}

/// First monomial of degree `<= max_deg` on which `lhs` and `c * rhs` differ.
fn compare(lhs: &NHOperator, rhs: &NHOperator, sign: i64, max_deg: u32) -> Option<String> {
    let n = lhs.nvars.max(rhs.nvars);
    let c = crate::qring::Rational::from_integer(sign.into());
    for exps in monomials_up_to(n, max_deg) {
        let f = MultiPoly::monomial(exps, num_traits::One::one());
        let l = lhs.apply(&f);
        let r = rhs.apply(&f).scale(&c);
        if l != r {
            return Some(f.to_string());
        }
    }
    None
}

/// `e_n e_n = e_n` on all monomials up to degree `n(n-1)/2 + 4`.
pub fn verify_idempotent(n: usize) -> Report {
    let e = NHOperator::e_idempotent(n);
    let bound = e.max_drop() + 4;
    let mut report = Report::new();
    let witness = monomials_up_to(n, bound).into_iter().find_map(|exps| {
        let f = MultiPoly::monomial(exps, num_traits::One::one());
        let g = e.apply(&f);
        (e.apply(&g) != g).then(|| f.to_string())
    });
    match witness {
        None => report.push(format!("nh.{n}.idempotent"), true, format!("monomials deg<={bound}")),
        Some(w) => report.push(format!("nh.{n}.idempotent"), false, format!("witness {w}")),
    }
    report
}

/// Operator identities for one `n`; every check tests all monomials up to the
/// largest degree drop of either side plus 4.
pub fn verify_box_identities(n: usize) -> Report {
    assert!(n >= 2, "box identities need at least two strands");
    let mut report = verify_idempotent(n);
    let mut check = |id: String, lhs: NHOperator, rhs: NHOperator, sign: i64| {
        let bound = lhs.max_drop().max(rhs.max_drop()) + 4;
        match compare(&lhs, &rhs, sign, bound) {
            None => report.push(id, true, format!("monomials deg<={bound}")),
            Some(w) => report.push(id, false, format!("witness {w}")),
        }
    };
    let e = NHOperator::e_idempotent(n);
    let d = NHOperator::longest(n);
    let zero = NHOperator { atoms: vec![Atom::Cross(0), Atom::Cross(0)], nvars: n };

    check(format!("nh.{n}.lemma"), e.then(&d), d.clone(), 1);

    let left = NHOperator::e_idempotent(n - 1).embedded(0, n);
    let right = NHOperator::e_idempotent(n - 1).embedded(1, n);
    check(format!("nh.{n}.boxes1.left"), left.then(&e), e.clone(), 1);
    check(format!("nh.{n}.boxes1.right"), right.then(&e), e.clone(), 1);

    // the strand at position n moves to position 1 below e_{n-1} (x) 1 and back
    let down = NHOperator::crossings(0..n - 1, n);
    let up = NHOperator::crossings((0..n - 1).rev(), n);
    check(format!("nh.{n}.boxes2.left"), e.then(&down).then(&left), down.then(&left), 1);
    check(format!("nh.{n}.boxes2.right"), e.then(&up).then(&right), up.then(&right), 1);

    for a in 0..n as u32 {
        let lhs1 = up.then(&NHOperator::dots(0, a, n)).then(&e);
        let lhs2 = down.then(&NHOperator::dots(n - 1, a, n)).then(&e);
        let sign = if (n - 1).is_multiple_of(2) { 1 } else { -1 };
        if (a as usize) < n - 1 {
            check(format!("nh.{n}.undercross1.a{a}"), lhs1, zero.clone(), 1);
            check(format!("nh.{n}.undercross2.a{a}"), lhs2, zero.clone(), 1);
        } else {
            check(format!("nh.{n}.undercross1.a{a}"), lhs1, e.clone(), 1);
            check(format!("nh.{n}.undercross2.a{a}"), lhs2, e.clone(), sign);
        }
    }
    report
}
