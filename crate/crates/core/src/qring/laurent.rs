use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_traits::{One, Zero};

use super::Rational;

/// Sparse Laurent polynomial in `q` with rational coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LaurentPoly {
    terms: BTreeMap<i64, Rational>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        LaurentPoly::default()
    }

    pub fn one() -> Self {
        Self::monomial(Rational::one(), 0)
    }

    /// `c q^e`.
    pub fn monomial(c: Rational, e: i64) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(e, c);
        }
        LaurentPoly { terms }
    }

    /// `q^e`.
    pub fn q_pow(e: i64) -> Self {
        Self::monomial(Rational::one(), e)
    }

    pub fn from_int(c: i64) -> Self {
        Self::monomial(Rational::from_integer(c.into()), 0)
    }

    /// Builds from `(exponent, integer coefficient)` pairs; repeated exponents add up.
    pub fn from_pairs<I: IntoIterator<Item = (i64, i64)>>(pairs: I) -> Self {
        let mut p = LaurentPoly::zero();
        for (e, c) in pairs {
            p.add_term(e, Rational::from_integer(c.into()));
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&0).is_some_and(|c| c.is_one())
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &Rational)> {
        self.terms.iter().map(|(&e, c)| (e, c))
    }

    pub fn coeff(&self, e: i64) -> Rational {
        self.terms.get(&e).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn min_exponent(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn max_exponent(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    pub fn add_term(&mut self, e: i64, c: Rational) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(e).or_insert_with(Rational::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&e);
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        LaurentPoly { terms: self.terms.iter().map(|(&e, v)| (e, v * c)).collect() }
    }

    /// Multiplication by `q^k`.
    pub fn shift(&self, k: i64) -> Self {
        LaurentPoly { terms: self.terms.iter().map(|(&e, v)| (e + k, v.clone())).collect() }
    }

    /// The bar involution `q -> q^{-1}`.
    pub fn bar(&self) -> Self {
        LaurentPoly { terms: self.terms.iter().map(|(&e, v)| (-e, v.clone())).collect() }
    }

    /// Substitution `q -> q^m`, `m >= 1`.
    pub fn substitute_power(&self, m: i64) -> Self {
        LaurentPoly { terms: self.terms.iter().map(|(&e, v)| (e * m, v.clone())).collect() }
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// Exact quotient `self / divisor`, or `None` if the division leaves a remainder.
    pub fn div_exact(&self, divisor: &LaurentPoly) -> Option<LaurentPoly> {
        let (dlo, dhi) = (divisor.min_exponent()?, divisor.max_exponent()?);
        let lead = divisor.coeff(dhi);
        let mut rem = self.clone();
        let mut quot = LaurentPoly::zero();
        while let Some(rhi) = rem.max_exponent() {
            let rlo = rem.min_exponent().unwrap();
            // the remainder has to keep a span at least that of the divisor
            if rhi - rlo < dhi - dlo {
                return None;
            }
            let c = rem.coeff(rhi) / &lead;
            let e = rhi - dhi;
            rem = &rem - &divisor.shift(e).scale(&c);
            quot.add_term(e, c);
        }
        Some(quot)
    }

    /// `(1 - q^a)`.
    pub fn one_minus_q_pow(a: i64) -> Self {
        Self::from_pairs([(0, 1), (a, -1)])
    }
}

impl fmt::Display for LaurentPoly {
    /// `c*q^k` terms in increasing exponent order, joined by ` + `.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.terms.iter().map(|(e, c)| format!("{c}*q^{e}")).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl Add<&LaurentPoly> for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl AddAssign<&LaurentPoly> for LaurentPoly {
    fn add_assign(&mut self, rhs: &LaurentPoly) {
        for (&e, c) in &rhs.terms {
            self.add_term(e, c.clone());
        }
    }
}

impl Sub<&LaurentPoly> for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl SubAssign<&LaurentPoly> for LaurentPoly {
    fn sub_assign(&mut self, rhs: &LaurentPoly) {
        for (&e, c) in &rhs.terms {
            self.add_term(e, -c.clone());
        }
    }
}

impl Mul<&LaurentPoly> for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (&e1, c1) in &self.terms {
            for (&e2, c2) in &rhs.terms {
                out.add_term(e1 + e2, c1 * c2);
            }
        }
        out
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly { terms: self.terms.iter().map(|(&e, c)| (e, -c.clone())).collect() }
    }
}

impl Add for LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: LaurentPoly) -> LaurentPoly {
        &self + &rhs
    }
}

impl Sub for LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: LaurentPoly) -> LaurentPoly {
        &self - &rhs
    }
}

impl Mul for LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: LaurentPoly) -> LaurentPoly {
        &self * &rhs
    }
}

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -&self
    }
}

/// True iff every coefficient is an integer.
pub fn is_integral(p: &LaurentPoly) -> bool {
    p.terms().all(|(_, c)| c.is_integer())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn display_increasing_exponents() {
        let p = LaurentPoly::from_pairs([(3, 1), (-1, 1), (0, -2)]);
        assert_eq!(p.to_string(), "1*q^-1 + -2*q^0 + 1*q^3");
        assert_eq!(LaurentPoly::zero().to_string(), "0");
        let half = LaurentPoly::monomial(Rational::new(1.into(), 2.into()), 2);
        assert_eq!(half.to_string(), "1/2*q^2");
    }

    #[test]
    fn exact_division() {
        let a = LaurentPoly::from_pairs([(-1, 1), (1, 1)]);
        let b = LaurentPoly::from_pairs([(-2, 1), (0, 1), (2, 1)]);
        let prod = &a * &b;
        assert_eq!(prod.div_exact(&a), Some(b.clone()));
        assert_eq!(prod.div_exact(&b), Some(a.clone()));
        assert_eq!(b.div_exact(&a), None);
        assert_eq!(LaurentPoly::zero().div_exact(&a), Some(LaurentPoly::zero()));
    }

    #[test]
    fn bar_and_shift() {
        let p = LaurentPoly::from_pairs([(2, 3), (-1, 1)]);
        assert_eq!(p.bar(), LaurentPoly::from_pairs([(-2, 3), (1, 1)]));
        assert_eq!(p.shift(1), LaurentPoly::from_pairs([(3, 3), (0, 1)]));
        assert!(is_integral(&p));
    }
}
