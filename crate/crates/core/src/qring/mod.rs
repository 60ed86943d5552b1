//! Exact arithmetic in `q`: Laurent polynomials, rational functions with
//! denominators `prod (1 - q^a)`, truncated power series and quantum integers.

mod laurent;
mod rational;
mod series;

pub use laurent::{is_integral, LaurentPoly};
pub use rational::RationalQ;
pub use series::{expand, QSeries};

use thiserror::Error;

use crate::cartan::{ValidatedCartan, Vertex, Weight};

pub type Rational = num_rational::BigRational;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum QError {
    #[error("quantum integer of negative argument {0}")]
    NegativeN(i64),
}

/// `[n]` in the variable `q^h`: `q^{h(n-1)} + q^{h(n-3)} + ... + q^{h(1-n)}`.
pub fn qint(n: u32, h: i64) -> LaurentPoly {
    let n = n as i64;
    LaurentPoly::from_pairs((0..n).map(|t| (h * (n - 1 - 2 * t), 1)))
}

/// `[n]!` in the variable `q^h`.
pub fn qfact(n: u32, h: i64) -> LaurentPoly {
    (1..=n).fold(LaurentPoly::one(), |acc, m| &acc * &qint(m, h))
}

/// `[n]_i` with `q_i = q^{(i.i)/2}`.
pub fn quantum_integer(n: i64, i: Vertex, datum: &ValidatedCartan) -> Result<LaurentPoly, QError> {
    if n < 0 {
        return Err(QError::NegativeN(n));
    }
    Ok(qint(n as u32, datum.half_norm(i)))
}

/// `[n]_i! = [n]_i [n-1]_i ... [1]_i`.
pub fn quantum_factorial(n: i64, i: Vertex, datum: &ValidatedCartan) -> Result<LaurentPoly, QError> {
    if n < 0 {
        return Err(QError::NegativeN(n));
    }
    Ok(qfact(n as u32, datum.half_norm(i)))
}

/// `(nu)_q = prod_i prod_{a=1}^{nu_i} 1/(1 - q^{a i.i})`.
pub fn nu_q(nu: &Weight, datum: &ValidatedCartan) -> RationalQ {
    let mut factors = Vec::new();
    for i in datum.vertices() {
        for a in 1..=nu.get(i) as i64 {
            factors.push((a * datum.dot(i, i)) as u32);
        }
    }
    RationalQ::new(LaurentPoly::one(), factors)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cartan::CartanDatum;

    fn b2() -> ValidatedCartan {
        CartanDatum::new(vec!["i", "j"], vec![vec![2, -2], vec![-2, 4]]).validate().unwrap()
    }

    #[test]
    fn quantum_integers() {
        let c = b2();
        let (i, j) = (Vertex(0), Vertex(1));
        assert_eq!(quantum_integer(2, i, &c).unwrap(), LaurentPoly::from_pairs([(1, 1), (-1, 1)]));
        assert_eq!(quantum_integer(3, j, &c).unwrap(), LaurentPoly::from_pairs([(4, 1), (0, 1), (-4, 1)]));
        assert!(quantum_integer(0, i, &c).unwrap().is_zero());
        assert_eq!(quantum_integer(-1, i, &c), Err(QError::NegativeN(-1)));
    }

    #[test]
    fn quantum_factorials() {
        let c = b2();
        let i = Vertex(0);
        assert!(quantum_factorial(0, i, &c).unwrap().is_one());
        assert_eq!(quantum_factorial(2, i, &c).unwrap(), qint(2, 1));
        // (q + q^-1)(q^2 + 1 + q^-2) = q^3 + 2q + 2q^-1 + q^-3
        let want = LaurentPoly::from_pairs([(3, 1), (1, 2), (-1, 2), (-3, 1)]);
        assert_eq!(quantum_factorial(3, i, &c).unwrap(), want);
        assert!(quantum_factorial(-2, i, &c).is_err());
    }

    #[test]
    fn nu_q_products() {
        let c = b2();
        let i = Vertex(0);
        assert_eq!(nu_q(&Weight(vec![1, 0]), &c), RationalQ::new(LaurentPoly::one(), vec![2]));
        assert_eq!(nu_q(&Weight(vec![0, 0]), &c), RationalQ::one());
        let mut w = Weight::zero(2);
        w.add_vertex(i, 2);
        assert_eq!(nu_q(&w, &c), RationalQ::new(LaurentPoly::one(), vec![2, 4]));
    }
}
