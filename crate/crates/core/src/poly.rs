//! Polynomials in `x_1, ..., x_n` with exact rational coefficients.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};
use rand::Rng;

use crate::qring::Rational;

/// Exponent vector, one entry per variable.
pub type Exps = Vec<u32>;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MultiPoly {
    nvars: usize,
    terms: BTreeMap<Exps, Rational>,
}

impl MultiPoly {
    pub fn zero(nvars: usize) -> Self {
        MultiPoly { nvars, terms: BTreeMap::new() }
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, Rational::one())
    }

    pub fn constant(nvars: usize, c: Rational) -> Self {
        Self::monomial(vec![0; nvars], c)
    }

    /// `x_k`, 0-based.
    pub fn var(nvars: usize, k: usize) -> Self {
        Self::var_pow(nvars, k, 1)
    }

    pub fn var_pow(nvars: usize, k: usize, e: u32) -> Self {
        let mut exps = vec![0; nvars];
        exps[k] = e;
        Self::monomial(exps, Rational::one())
    }

    pub fn monomial(exps: Exps, c: Rational) -> Self {
        let mut p = MultiPoly::zero(exps.len());
        p.add_term(exps, c);
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exps, &Rational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, exps: &[u32]) -> Rational {
        self.terms.get(exps).cloned().unwrap_or_else(Rational::zero)
    }

    /// Total degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    pub fn add_term(&mut self, exps: Exps, c: Rational) {
        debug_assert_eq!(exps.len(), self.nvars);
        if c.is_zero() {
            return;
        }
        match self.terms.entry(exps) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return MultiPoly::zero(self.nvars);
        }
        MultiPoly { nvars: self.nvars, terms: self.terms.iter().map(|(e, v)| (e.clone(), v * c)).collect() }
    }

    /// Multiplication by `x_k^e`.
    pub fn mul_var_pow(&self, k: usize, e: u32) -> Self {
        let terms = self
            .terms
            .iter()
            .map(|(exps, c)| {
                let mut exps = exps.clone();
                exps[k] += e;
                (exps, c.clone())
            })
            .collect();
        MultiPoly { nvars: self.nvars, terms }
    }

    /// Multiplication by the monomial `x^exps`.
    pub fn mul_monomial(&self, exps: &[u32]) -> Self {
        let terms = self
            .terms
            .iter()
            .map(|(e, c)| (e.iter().zip(exps).map(|(a, b)| a + b).collect(), c.clone()))
            .collect();
        MultiPoly { nvars: self.nvars, terms }
    }

    /// `s_k f`: exchanges `x_k` and `x_{k+1}` (0-based).
    pub fn swap(&self, k: usize) -> Self {
        let terms = self
            .terms
            .iter()
            .map(|(exps, c)| {
                let mut exps = exps.clone();
                exps.swap(k, k + 1);
                (exps, c.clone())
            })
            .collect();
        MultiPoly { nvars: self.nvars, terms }
    }

    /// `(f - s_k f) / (x_k - x_{k+1})` (0-based), computed monomial by monomial.
    pub fn divided_difference(&self, k: usize) -> Self {
        let mut out = MultiPoly::zero(self.nvars);
        for (exps, c) in &self.terms {
            let (a, b) = (exps[k], exps[k + 1]);
            if a == b {
                continue;
            }
            // x^a y^b - x^b y^a = sign (xy)^lo (x^m - y^m) with m = |a - b|
            let (lo, hi, c) = if a > b { (b, a, c.clone()) } else { (a, b, -c.clone()) };
            for t in 0..(hi - lo) {
                let mut e = exps.clone();
                e[k] = lo + t;
                e[k + 1] = hi - 1 - t;
                out.add_term(e, c.clone());
            }
        }
        out
    }

    /// A random polynomial with `nterms` monomials of degree `<= max_deg`
    /// and integer coefficients in `[-3, 3]`.
    pub fn random<R: Rng>(nvars: usize, max_deg: u32, nterms: usize, rng: &mut R) -> Self {
        let mut p = MultiPoly::zero(nvars);
        for _ in 0..nterms {
            let mut exps = vec![0; nvars];
            let mut budget = rng.gen_range(0..=max_deg);
            while budget > 0 && nvars > 0 {
                exps[rng.gen_range(0..nvars)] += 1;
                budget -= 1;
            }
            let c: i64 = rng.gen_range(-3..=3);
            p.add_term(exps, Rational::from_integer(c.into()));
        }
        p
    }

    /// Relabels variables: variable `p` of `self` becomes variable `map[p]` of the result.
    pub fn permute_vars(&self, map: &[usize]) -> Self {
        let terms = self
            .terms
            .iter()
            .map(|(exps, c)| {
                let mut e = vec![0; self.nvars];
                for (p, &x) in exps.iter().enumerate() {
                    e[map[p]] = x;
                }
                (e, c.clone())
            })
            .collect();
        MultiPoly { nvars: self.nvars, terms }
    }
}

/// All exponent vectors in `nvars` variables with total degree `<= max_deg`.
pub fn monomials_up_to(nvars: usize, max_deg: u32) -> Vec<Exps> {
    let mut out = Vec::new();
    let mut cur = vec![0; nvars];
    fn rec(k: usize, left: u32, cur: &mut Exps, out: &mut Vec<Exps>) {
        if k == cur.len() {
            out.push(cur.clone());
            return;
        }
        for e in 0..=left {
            cur[k] = e;
            rec(k + 1, left - e, cur, out);
        }
        cur[k] = 0;
    }
    rec(0, max_deg, &mut cur, &mut out);
    out
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(exps, c)| {
                let mut s = c.to_string();
                for (k, &e) in exps.iter().enumerate() {
                    match e {
                        0 => {}
                        1 => s.push_str(&format!("*x{}", k + 1)),
                        _ => s.push_str(&format!("*x{}^{e}", k + 1)),
                    }
                }
                s
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl Add<&MultiPoly> for &MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: &MultiPoly) -> MultiPoly {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }
}

impl Sub<&MultiPoly> for &MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: &MultiPoly) -> MultiPoly {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), -c.clone());
        }
        out
    }
}

impl Mul<&MultiPoly> for &MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: &MultiPoly) -> MultiPoly {
        let mut out = MultiPoly::zero(self.nvars);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &rhs.terms {
                out.add_term(e1.iter().zip(e2).map(|(a, b)| a + b).collect(), c1 * c2);
            }
        }
        out
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        MultiPoly { nvars: self.nvars, terms: self.terms.iter().map(|(e, c)| (e.clone(), -c.clone())).collect() }
    }
}

#[cfg(test)]
mod tests {
    use rand::SeedableRng;

    use super::*;

    fn x(n: usize, k: usize) -> MultiPoly {
        MultiPoly::var(n, k)
    }

    #[test]
    fn divided_difference_examples() {
        assert_eq!(x(2, 0).divided_difference(0), MultiPoly::one(2));
        assert!((&x(2, 0) * &x(2, 1)).divided_difference(0).is_zero());
        let sq = &x(2, 0) * &x(2, 0);
        assert_eq!(sq.divided_difference(0), &x(2, 0) + &x(2, 1));
        assert_eq!(x(2, 1).divided_difference(0), -&MultiPoly::one(2));
    }

    #[test]
    fn divided_difference_times_denominator() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..50 {
            let f = MultiPoly::random(3, 5, 4, &mut rng);
            let lhs = &f.divided_difference(1) * &(&x(3, 1) - &x(3, 2));
            assert_eq!(lhs, &f - &f.swap(1));
        }
    }

    #[test]
    fn monomial_enumeration_count() {
        // C(d + n, n)
        assert_eq!(monomials_up_to(3, 4).len(), 35);
        assert_eq!(monomials_up_to(0, 4).len(), 1);
    }

}
