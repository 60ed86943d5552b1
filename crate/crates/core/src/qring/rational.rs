use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::{LaurentPoly, Rational};

/// `numerator / prod_a (1 - q^a)`, the denominator kept as a sorted multiset of `a >= 1`.
#[derive(Clone, Debug)]
pub struct RationalQ {
    numerator: LaurentPoly,
    factors: Vec<u32>,
}

fn denominator_poly(factors: &[u32]) -> LaurentPoly {
    factors.iter().fold(LaurentPoly::one(), |acc, &a| &acc * &LaurentPoly::one_minus_q_pow(a as i64))
}

/// Removes one copy of each element of `b` from `a`; both sorted.
fn multiset_minus(a: &[u32], b: &[u32]) -> Vec<u32> {
    let mut out = Vec::new();
    let mut j = 0;
    for &x in a {
        while j < b.len() && b[j] < x {
            j += 1;
        }
        if j < b.len() && b[j] == x {
            j += 1;
        } else {
            out.push(x);
        }
    }
    out
}

/// Multiset union with the larger multiplicity of each element.
fn multiset_union(a: &[u32], b: &[u32]) -> Vec<u32> {
    let mut out = Vec::with_capacity(a.len().max(b.len()));
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        if j == b.len() || (i < a.len() && a[i] < b[j]) {
            out.push(a[i]);
            i += 1;
        } else if i == a.len() || b[j] < a[i] {
            out.push(b[j]);
            j += 1;
        } else {
            out.push(a[i]);
            i += 1;
            j += 1;
        }
    }
    out
}

impl RationalQ {
    /// Panics if a factor is zero.
    pub fn new(numerator: LaurentPoly, mut factors: Vec<u32>) -> Self {
        assert!(factors.iter().all(|&a| a >= 1), "denominator factors must be >= 1");
        factors.sort_unstable();
        if numerator.is_zero() {
            factors.clear();
        }
        RationalQ { numerator, factors }
    }

    pub fn zero() -> Self {
        Self::from_laurent(LaurentPoly::zero())
    }

    pub fn one() -> Self {
        Self::from_laurent(LaurentPoly::one())
    }

    pub fn from_laurent(p: LaurentPoly) -> Self {
        RationalQ { numerator: p, factors: Vec::new() }
    }

    pub fn numerator(&self) -> &LaurentPoly {
        &self.numerator
    }

    pub fn denominator_factors(&self) -> &[u32] {
        &self.factors
    }

    pub fn is_zero(&self) -> bool {
        self.numerator.is_zero()
    }

    pub fn scale(&self, c: &Rational) -> Self {
        RationalQ::new(self.numerator.scale(c), self.factors.clone())
    }

    pub fn shift(&self, k: i64) -> Self {
        RationalQ { numerator: self.numerator.shift(k), factors: self.factors.clone() }
    }

    /// `1/[n]! ` in the variable `q^h`, written as
    /// `q^{h n(n-1)/2} prod_{s=1}^n (1 - q^{2h}) / (1 - q^{2hs})`.
    pub fn inv_quantum_factorial(n: u32, h: i64) -> Self {
        let n64 = n as i64;
        let num = LaurentPoly::one_minus_q_pow(2 * h).pow(n).shift(h * n64 * (n64 - 1) / 2);
        RationalQ::new(num, (1..=n64).map(|s| (2 * h * s) as u32).collect())
    }

    /// The Laurent polynomial equal to `self`, if the division is exact.
    pub fn try_into_laurent(&self) -> Option<LaurentPoly> {
        self.numerator.div_exact(&denominator_poly(&self.factors))
    }

    /// Cancels whole factors `(1 - q^a)` from the numerator where possible.
    pub fn reduced(&self) -> Self {
        let mut num = self.numerator.clone();
        let mut kept = Vec::new();
        for &a in &self.factors {
            match num.div_exact(&LaurentPoly::one_minus_q_pow(a as i64)) {
                Some(n) => num = n,
                None => kept.push(a),
            }
        }
        RationalQ::new(num, kept)
    }
}

impl PartialEq for RationalQ {
    /// Cross-multiplication after dropping common denominator factors.
    fn eq(&self, other: &Self) -> bool {
        let only_self = multiset_minus(&self.factors, &other.factors);
        let only_other = multiset_minus(&other.factors, &self.factors);
        &self.numerator * &denominator_poly(&only_other) == &other.numerator * &denominator_poly(&only_self)
    }
}

impl Eq for RationalQ {}

impl fmt::Display for RationalQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "{}", self.numerator);
        }
        let den: Vec<String> = self.factors.iter().map(|a| format!("(1-q^{a})")).collect();
        write!(f, "({}) / {}", self.numerator, den.join(""))
    }
}

impl Add<&RationalQ> for &RationalQ {
    type Output = RationalQ;
    fn add(self, rhs: &RationalQ) -> RationalQ {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        let common = multiset_union(&self.factors, &rhs.factors);
        let lhs_num = &self.numerator * &denominator_poly(&multiset_minus(&common, &self.factors));
        let rhs_num = &rhs.numerator * &denominator_poly(&multiset_minus(&common, &rhs.factors));
        RationalQ::new(&lhs_num + &rhs_num, common)
    }
}

impl Sub<&RationalQ> for &RationalQ {
    type Output = RationalQ;
    fn sub(self, rhs: &RationalQ) -> RationalQ {
        self + &(-rhs)
    }
}

impl Mul<&RationalQ> for &RationalQ {
    type Output = RationalQ;
    fn mul(self, rhs: &RationalQ) -> RationalQ {
        let mut factors = self.factors.clone();
        factors.extend_from_slice(&rhs.factors);
        RationalQ::new(&self.numerator * &rhs.numerator, factors)
    }
}

impl Mul<&LaurentPoly> for &RationalQ {
    type Output = RationalQ;
    fn mul(self, rhs: &LaurentPoly) -> RationalQ {
        RationalQ::new(&self.numerator * rhs, self.factors.clone())
    }
}

impl Neg for &RationalQ {
    type Output = RationalQ;
    fn neg(self) -> RationalQ {
        RationalQ { numerator: -&self.numerator, factors: self.factors.clone() }
    }
}

impl Add for RationalQ {
    type Output = RationalQ;
    fn add(self, rhs: RationalQ) -> RationalQ {
        &self + &rhs
    }
}

impl Sub for RationalQ {
    type Output = RationalQ;
    fn sub(self, rhs: RationalQ) -> RationalQ {
        &self - &rhs
    }
}

impl Mul for RationalQ {
    type Output = RationalQ;
    fn mul(self, rhs: RationalQ) -> RationalQ {
        &self * &rhs
    }
}

impl Neg for RationalQ {
    type Output = RationalQ;
    fn neg(self) -> RationalQ {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::super::qfact;
    use super::*;

    #[test]
    fn equality_by_cross_multiplication() {
        // (1 + q^2) / (1 - q^4) = 1 / (1 - q^2)
        let a = RationalQ::new(LaurentPoly::from_pairs([(0, 1), (2, 1)]), vec![4]);
        let b = RationalQ::new(LaurentPoly::one(), vec![2]);
        assert_eq!(a, b);
        assert_ne!(a, RationalQ::one());
        assert_eq!(RationalQ::new(LaurentPoly::zero(), vec![3]), RationalQ::zero());
    }

    #[test]
    fn inverse_factorial_times_factorial_is_one() {
        for h in 1..=3 {
            for n in 0..=4 {
                let r = &RationalQ::inv_quantum_factorial(n, h) * &qfact(n, h);
                assert_eq!(r.try_into_laurent(), Some(LaurentPoly::one()), "n={n} h={h}");
            }
        }
    }

    #[test]
    fn addition_uses_common_denominator() {
        let a = RationalQ::new(LaurentPoly::one(), vec![2]);
        let b = RationalQ::new(LaurentPoly::q_pow(2), vec![2]);
        // 1/(1-q^2) - q^2/(1-q^2) = 1
        assert_eq!((&a - &b).reduced(), RationalQ::one());
        assert_eq!((&a + &b).denominator_factors(), &[2]);
    }
}
