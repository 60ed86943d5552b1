use std::collections::BTreeMap;

use crate::cartan::{Seq, ValidatedCartan};

use super::basis::reduced_word_of;
use super::word::render_atoms;
use super::{Atom, DiagramWord};

/// A normal-form basis diagram: dots at the bottom, then the canonical
/// reduced word of `perm`.  `perm[p]` is the top position of the strand
/// starting at bottom position `p`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BasisKey {
    pub bottom: Seq,
    pub perm: Vec<usize>,
    pub dots: Vec<u32>,
}

impl BasisKey {
    pub fn identity(bottom: Seq) -> Self {
        let n = bottom.len();
        BasisKey { bottom, perm: (0..n).collect(), dots: vec![0; n] }
    }

    pub fn top(&self) -> Seq {
        let mut top = self.bottom.clone();
        for (p, &t) in self.perm.iter().enumerate() {
            top.0[t] = self.bottom.0[p];
        }
        top
    }

    /// Canonical reduced word in product order (first letter on top), 0-based.
    pub fn reduced_word(&self) -> Vec<usize> {
        reduced_word_of(&self.perm)
    }

    pub fn crossings(&self) -> usize {
        let n = self.perm.len();
        (0..n).map(|p| (p + 1..n).filter(|&q| self.perm[p] > self.perm[q]).count()).sum()
    }

    /// Atoms bottom to top: the dots, then the crossings.
    pub fn atoms(&self) -> Vec<Atom> {
        let mut atoms: Vec<Atom> = Vec::new();
        for (p, &d) in self.dots.iter().enumerate() {
            atoms.extend(std::iter::repeat_n(Atom::Dot(p), d as usize));
        }
        atoms.extend(self.reduced_word().into_iter().rev().map(Atom::Cross));
        atoms
    }

    pub fn to_word(&self) -> DiagramWord {
        DiagramWord { bottom: self.bottom.clone(), atoms: self.atoms() }
    }

    pub fn degree(&self, datum: &ValidatedCartan) -> i64 {
        let b = &self.bottom.0;
        let n = b.len();
        let mut deg: i64 = (0..n).map(|p| self.dots[p] as i64 * datum.dot(b[p], b[p])).sum();
        for p in 0..n {
            for q in p + 1..n {
                if self.perm[p] > self.perm[q] {
                    deg -= datum.dot(b[p], b[q]);
                }
            }
        }
        deg
    }
}

/// An integer combination of basis keys from `bottom` to `top`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct KLRElement {
    bottom: Seq,
    top: Seq,
    terms: BTreeMap<BasisKey, i64>,
}

impl KLRElement {
    pub fn zero(bottom: Seq, top: Seq) -> Self {
        KLRElement { bottom, top, terms: BTreeMap::new() }
    }

    /// The idempotent `1_i`.
    pub fn identity(bottom: Seq) -> Self {
        Self::from_key(BasisKey::identity(bottom), 1)
    }

    pub fn from_key(key: BasisKey, c: i64) -> Self {
        let mut e = KLRElement::zero(key.bottom.clone(), key.top());
        e.add_term(key, c);
        e
    }

    pub(crate) fn from_terms(bottom: Seq, top: Seq, terms: BTreeMap<BasisKey, i64>) -> Self {
        debug_assert!(terms.keys().all(|k| k.bottom == bottom && k.top() == top));
        KLRElement { bottom, top, terms }
    }

    pub fn bottom(&self) -> &Seq {
        &self.bottom
    }

    pub fn top(&self) -> &Seq {
        &self.top
    }

    pub fn terms(&self) -> impl Iterator<Item = (&BasisKey, i64)> {
        self.terms.iter().map(|(k, &c)| (k, c))
    }

    pub fn coeff(&self, key: &BasisKey) -> i64 {
        self.terms.get(key).copied().unwrap_or(0)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, key: BasisKey, c: i64) {
        assert!(key.bottom == self.bottom && key.top() == self.top, "basis key outside this hom space");
        add_to(&mut self.terms, key, c);
    }

    pub fn scale(&self, c: i64) -> Self {
        let mut out = KLRElement::zero(self.bottom.clone(), self.top.clone());
        if c != 0 {
            out.terms = self.terms.iter().map(|(k, &v)| (k.clone(), v * c)).collect();
        }
        out
    }

    /// Sum; a zero summand may come from any hom space.
    pub fn add(&self, other: &KLRElement) -> Self {
        if other.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return other.clone();
        }
        assert!(self.bottom == other.bottom && self.top == other.top, "adding elements of different hom spaces");
        let mut out = self.clone();
        for (k, &c) in &other.terms {
            add_to(&mut out.terms, k.clone(), c);
        }
        out
    }

    pub fn sub(&self, other: &KLRElement) -> Self {
        self.add(&other.scale(-1))
    }

    /// Degrees of the terms, sorted and deduplicated.
    pub fn degrees(&self, datum: &ValidatedCartan) -> Vec<i64> {
        let mut d: Vec<i64> = self.terms.keys().map(|k| k.degree(datum)).collect();
        d.sort_unstable();
        d.dedup();
        d
    }

    pub fn is_homogeneous(&self, datum: &ValidatedCartan) -> bool {
        self.degrees(datum).len() <= 1
    }

    /// One line per term, `coefficient * bot=...; atoms=...`, in key order.
    pub fn render(&self, datum: &ValidatedCartan) -> String {
        if self.terms.is_empty() {
            return "0\n".into();
        }
        let mut out = String::new();
        for (k, c) in &self.terms {
            let atoms = render_atoms(&k.atoms());
            out.push_str(&format!("{c} * bot={}; atoms={atoms}\n", datum.fmt_seq(&k.bottom)));
        }
        out
    }
}

pub(crate) fn add_to(terms: &mut BTreeMap<BasisKey, i64>, key: BasisKey, c: i64) {
    use std::collections::btree_map::Entry;
    if c == 0 {
        return;
    }
    match terms.entry(key) {
        Entry::Vacant(v) => {
            v.insert(c);
        }
        Entry::Occupied(mut o) => {
            *o.get_mut() += c;
            if *o.get() == 0 {
                o.remove();
            }
        }
    }
}
