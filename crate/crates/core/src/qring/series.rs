use std::collections::BTreeMap;
use std::fmt;

use num_traits::Zero;

use super::{LaurentPoly, Rational, RationalQ};

/// Power series in `q` truncated above degree `trunc`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QSeries {
    coeffs: BTreeMap<i64, Rational>,
    trunc: i64,
}

impl QSeries {
    pub fn zero(trunc: i64) -> Self {
        QSeries { coeffs: BTreeMap::new(), trunc }
    }

    /// Truncation of a Laurent polynomial.
    pub fn from_laurent(p: &LaurentPoly, trunc: i64) -> Self {
        let mut s = QSeries::zero(trunc);
        for (e, c) in p.terms() {
            s.add_term(e, c.clone());
        }
        s
    }

    pub fn trunc(&self) -> i64 {
        self.trunc
    }

    pub fn coeff(&self, e: i64) -> Rational {
        self.coeffs.get(&e).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &Rational)> {
        self.coeffs.iter().map(|(&e, c)| (e, c))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Adds `c q^e`; terms above the truncation degree are dropped.
    pub fn add_term(&mut self, e: i64, c: Rational) {
        if e > self.trunc || c.is_zero() {
            return;
        }
        let slot = self.coeffs.entry(e).or_insert_with(Rational::zero);
        *slot += c;
        if slot.is_zero() {
            self.coeffs.remove(&e);
        }
    }

    pub fn add(&self, other: &QSeries) -> QSeries {
        let mut out = QSeries { coeffs: self.coeffs.clone(), trunc: self.trunc.min(other.trunc) };
        out.coeffs.retain(|&e, _| e <= out.trunc);
        for (&e, c) in &other.coeffs {
            out.add_term(e, c.clone());
        }
        out
    }

    pub fn scale(&self, c: &Rational) -> QSeries {
        let mut out = QSeries::zero(self.trunc);
        for (&e, v) in &self.coeffs {
            out.add_term(e, v * c);
        }
        out
    }

    /// Multiplication by `q^k`; the truncation degree is kept.
    pub fn shift(&self, k: i64) -> QSeries {
        let mut out = QSeries::zero(self.trunc);
        for (&e, v) in &self.coeffs {
            out.add_term(e + k, v.clone());
        }
        out
    }

    /// Product truncated at the smaller truncation degree. Exact only when
    /// both factors have no terms below degree 0.
    pub fn mul(&self, other: &QSeries) -> QSeries {
        let mut out = QSeries::zero(self.trunc.min(other.trunc));
        for (&e1, c1) in &self.coeffs {
            for (&e2, c2) in &other.coeffs {
                out.add_term(e1 + e2, c1 * c2);
            }
        }
        out
    }
}

impl fmt::Display for QSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0 + O(q^{})", self.trunc + 1);
        }
        let parts: Vec<String> = self.coeffs.iter().map(|(e, c)| format!("{c}*q^{e}")).collect();
        write!(f, "{} + O(q^{})", parts.join(" + "), self.trunc + 1)
    }
}

/// Expands `r` as a power series, exact through degree `trunc`.
pub fn expand(r: &RationalQ, trunc: i64) -> QSeries {
    let Some(lo) = r.numerator().min_exponent() else {
        return QSeries::zero(trunc);
    };
    // Work with the numerator shifted to start at degree 0, so all the
    // truncations along the way are exact.
    let width = trunc - lo;
    let mut acc = QSeries::from_laurent(&r.numerator().shift(-lo), width);
    for &a in r.denominator_factors() {
        let a = a as i64;
        let mut next = QSeries::zero(width);
        for (e, c) in acc.terms() {
            let mut k = e;
            while k <= width {
                next.add_term(k, c.clone());
                k += a;
            }
        }
        acc = next;
    }
    let mut out = QSeries::zero(trunc);
    for (e, c) in acc.terms() {
        out.add_term(e + lo, c.clone());
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(pairs: &[(i64, i64)], trunc: i64) -> QSeries {
        QSeries::from_laurent(&LaurentPoly::from_pairs(pairs.iter().copied()), trunc)
    }

    #[test]
    fn geometric_series() {
        let r = RationalQ::new(LaurentPoly::one(), vec![2]);
        assert_eq!(expand(&r, 6), ints(&[(0, 1), (2, 1), (4, 1), (6, 1)], 6));
    }

    #[test]
    fn negative_leading_exponent() {
        let r = RationalQ::from_laurent(LaurentPoly::q_pow(-1));
        assert_eq!(expand(&r, 3), ints(&[(-1, 1)], 3));
    }

    #[test]
    fn two_factor_convolution() {
        let r = RationalQ::new(LaurentPoly::one(), vec![2, 4]);
        assert_eq!(expand(&r, 6), ints(&[(0, 1), (2, 1), (4, 2), (6, 2)], 6));
    }
}
