//! Cartan data, weights and (divided-power) sequences.
//!
//! A Cartan datum is a finite ordered vertex set `I` together with a
//! symmetric integer pairing `i . j`.  The vertex order given at
//! construction time is used for every canonical enumeration downstream.

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

/// Largest `|nu|` for which sequences are enumerated.
pub const MAX_ENUMERATION: u32 = 10;

/// Index of a vertex in its datum.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Vertex(pub usize);

/// A violated Cartan datum axiom.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AxiomViolation {
    /// `i . i` is odd or not positive.
    OddDiagonal { vertex: String, value: i64 },
    /// `2 (i . j) / (i . i)` is not a nonpositive integer.
    PositiveOffDiagonal { i: String, j: String, value: i64 },
    Asymmetric { i: String, j: String },
}

impl fmt::Display for AxiomViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AxiomViolation::OddDiagonal { vertex, value } => {
                write!(f, "OddDiagonal: {vertex}.{vertex} = {value} is not in {{2,4,6,...}}")
            }
            AxiomViolation::PositiveOffDiagonal { i, j, value } => write!(
                f,
                "PositiveOffDiagonal: 2({i}.{j})/({i}.{i}) with {i}.{j} = {value} is not in {{0,-1,-2,...}}"
            ),
            AxiomViolation::Asymmetric { i, j } => write!(f, "Asymmetric: {i}.{j} != {j}.{i}"),
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CartanError {
    #[error("invalid Cartan datum: {}", .0.iter().map(|v| v.to_string()).collect::<Vec<_>>().join("; "))]
    Axioms(Vec<AxiomViolation>),
    #[error("malformed Cartan datum: {0}")]
    Malformed(String),
    #[error("d_ij requires distinct vertices")]
    EqualVertices,
    #[error("enumeration of |nu| = {total} exceeds the limit {limit}")]
    TooLarge { total: u32, limit: u32 },
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
}

/// Unvalidated Cartan datum: vertex names and the full pairing table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CartanDatum {
    pub names: Vec<String>,
    pub pairing: Vec<Vec<i64>>,
}

impl CartanDatum {
    pub fn new<S: Into<String>>(names: Vec<S>, pairing: Vec<Vec<i64>>) -> Self {
        CartanDatum { names: names.into_iter().map(Into::into).collect(), pairing }
    }

    pub fn validate(self) -> Result<ValidatedCartan, CartanError> {
        validate(self)
    }
}

/// Checks every axiom and reports all violations at once.
pub fn validate(datum: CartanDatum) -> Result<ValidatedCartan, CartanError> {
    let n = datum.names.len();
    if n == 0 {
        return Err(CartanError::Malformed("no vertices".into()));
    }
    let distinct: BTreeSet<&String> = datum.names.iter().collect();
    if distinct.len() != n {
        return Err(CartanError::Malformed("duplicate vertex names".into()));
    }
    if datum.pairing.len() != n || datum.pairing.iter().any(|row| row.len() != n) {
        return Err(CartanError::Malformed(format!("pairing table must be {n}x{n}")));
    }
    let p = &datum.pairing;
    let name = |k: usize| datum.names[k].clone();
    let mut violations = Vec::new();
    for i in 0..n {
        if p[i][i] <= 0 || p[i][i] % 2 != 0 {
            violations.push(AxiomViolation::OddDiagonal { vertex: name(i), value: p[i][i] });
        }
    }
    for i in 0..n {
        for j in (i + 1)..n {
            if p[i][j] != p[j][i] {
                violations.push(AxiomViolation::Asymmetric { i: name(i), j: name(j) });
            }
        }
    }
    for i in 0..n {
        for j in 0..n {
            if i == j || p[i][i] <= 0 {
                continue;
            }
            let num = 2 * p[i][j];
            if num > 0 || num % p[i][i] != 0 {
                violations.push(AxiomViolation::PositiveOffDiagonal {
                    i: name(i),
                    j: name(j),
                    value: p[i][j],
                });
            }
        }
    }
    if violations.is_empty() {
        Ok(ValidatedCartan { names: datum.names, pairing: datum.pairing })
    } else {
        Err(CartanError::Axioms(violations))
    }
}

/// A Cartan datum that satisfies all axioms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValidatedCartan {
    names: Vec<String>,
    pairing: Vec<Vec<i64>>,
}

impl ValidatedCartan {
    pub fn rank(&self) -> usize {
        self.names.len()
    }

    pub fn vertices(&self) -> impl Iterator<Item = Vertex> + '_ {
        (0..self.names.len()).map(Vertex)
    }

    pub fn name(&self, v: Vertex) -> &str {
        &self.names[v.0]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn vertex(&self, name: &str) -> Result<Vertex, CartanError> {
        self.names
            .iter()
            .position(|n| n == name)
            .map(Vertex)
            .ok_or_else(|| CartanError::UnknownVertex(name.to_string()))
    }

    /// The pairing `i . j`.
    #[inline]
    pub fn dot(&self, i: Vertex, j: Vertex) -> i64 {
        self.pairing[i.0][j.0]
    }

    /// `d_ij = -2 (i.j)/(i.i)`.
    pub fn d_coeff(&self, i: Vertex, j: Vertex) -> Result<u32, CartanError> {
        if i == j {
            return Err(CartanError::EqualVertices);
        }
        Ok(self.d(i, j))
    }

    /// `d_ij` without the distinctness check; callers guarantee `i != j`.
    #[inline]
    pub(crate) fn d(&self, i: Vertex, j: Vertex) -> u32 {
        (-2 * self.dot(i, j) / self.dot(i, i)) as u32
    }

    /// Exponent of `q_i = q^{(i.i)/2}`.
    #[inline]
    pub fn half_norm(&self, i: Vertex) -> i64 {
        self.dot(i, i) / 2
    }

    /// Edges of the graph: unordered pairs `(i, j)`, `i < j`, with `i . j != 0`.
    pub fn edges(&self) -> Vec<(Vertex, Vertex)> {
        let n = self.rank();
        let mut out = Vec::new();
        for i in 0..n {
            for j in (i + 1)..n {
                if self.pairing[i][j] != 0 {
                    out.push((Vertex(i), Vertex(j)));
                }
            }
        }
        out
    }

    pub fn is_simply_laced(&self) -> bool {
        self.vertices().all(|i| self.dot(i, i) == 2)
            && self.edges().iter().all(|&(i, j)| self.dot(i, j) == -1)
    }

    pub fn seq_from_names(&self, names: &[&str]) -> Result<Seq, CartanError> {
        names.iter().map(|n| self.vertex(n)).collect::<Result<Vec<_>, _>>().map(Seq)
    }

    pub fn fmt_seq(&self, s: &Seq) -> String {
        s.0.iter().map(|&v| self.name(v)).collect::<Vec<_>>().join(",")
    }

    pub fn fmt_seqd(&self, s: &SeqD) -> String {
        if s.0.is_empty() {
            return "()".into();
        }
        s.0.iter().map(|&(v, n)| format!("{}({})", self.name(v), n)).collect::<Vec<_>>().join(" ")
    }

    pub fn fmt_weight(&self, w: &Weight) -> String {
        let parts: Vec<String> = self
            .vertices()
            .filter(|v| w.get(*v) > 0)
            .map(|v| match w.get(v) {
                1 => self.name(v).to_string(),
                n => format!("{n}{}", self.name(v)),
            })
            .collect();
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join("+")
        }
    }

    /// All arrangements of the letters of `nu`, in lexicographic order.
    pub fn sequences(&self, nu: &Weight) -> Result<Vec<Seq>, CartanError> {
        self.guard(nu)?;
        let mut remaining = nu.0.clone();
        remaining.resize(self.rank(), 0);
        let mut out = Vec::new();
        let mut cur = Vec::new();
        fn rec(rem: &mut [u32], cur: &mut Vec<Vertex>, left: u32, out: &mut Vec<Seq>) {
            if left == 0 {
                out.push(Seq(cur.clone()));
                return;
            }
            for v in 0..rem.len() {
                if rem[v] > 0 {
                    rem[v] -= 1;
                    cur.push(Vertex(v));
                    rec(rem, cur, left - 1, out);
                    cur.pop();
                    rem[v] += 1;
                }
            }
        }
        rec(&mut remaining, &mut cur, nu.total(), &mut out);
        Ok(out)
    }

    /// All divided-power sequences whose flattening has weight `nu`.
    pub fn divided_sequences(&self, nu: &Weight) -> Result<Vec<SeqD>, CartanError> {
        self.guard(nu)?;
        let mut remaining = nu.0.clone();
        remaining.resize(self.rank(), 0);
        let mut out = Vec::new();
        let mut cur = Vec::new();
        fn rec(rem: &mut [u32], cur: &mut Vec<(Vertex, u32)>, left: u32, out: &mut Vec<SeqD>) {
            if left == 0 {
                out.push(SeqD(cur.clone()));
                return;
            }
            for v in 0..rem.len() {
                for n in 1..=rem[v] {
                    rem[v] -= n;
                    cur.push((Vertex(v), n));
                    rec(rem, cur, left - n, out);
                    cur.pop();
                    rem[v] += n;
                }
            }
        }
        rec(&mut remaining, &mut cur, nu.total(), &mut out);
        Ok(out)
    }

    fn guard(&self, nu: &Weight) -> Result<(), CartanError> {
        if nu.0.len() > self.rank() && nu.0[self.rank()..].iter().any(|&m| m > 0) {
            return Err(CartanError::Malformed("weight has more entries than vertices".into()));
        }
        let total = nu.total();
        if total > MAX_ENUMERATION {
            return Err(CartanError::TooLarge { total, limit: MAX_ENUMERATION });
        }
        Ok(())
    }

    /// All weights `nu` with `1 <= |nu| <= max_total`.
    pub fn weights_up_to(&self, max_total: u32) -> Vec<Weight> {
        let mut out = Vec::new();
        let mut cur = vec![0u32; self.rank()];
        fn rec(k: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Weight>) {
            if k == cur.len() {
                if cur.iter().sum::<u32>() > 0 {
                    out.push(Weight(cur.clone()));
                }
                return;
            }
            for m in 0..=left {
                cur[k] = m;
                rec(k + 1, left - m, cur, out);
            }
            cur[k] = 0;
        }
        rec(0, max_total, &mut cur, &mut out);
        out.sort_by_key(|w| (w.total(), std::cmp::Reverse(w.0.clone())));
        out
    }
}

/// A choice of direction for every edge of the graph.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Orientation {
    /// `forward[a][b]` is true iff there is an edge oriented `a -> b`.
    forward: Vec<Vec<bool>>,
}

impl Orientation {
    /// Every edge points from the lower vertex to the higher one.
    pub fn standard(datum: &ValidatedCartan) -> Self {
        let n = datum.rank();
        let mut forward = vec![vec![false; n]; n];
        for (i, j) in datum.edges() {
            forward[i.0][j.0] = true;
        }
        Orientation { forward }
    }

    /// Builds an orientation from explicit arrows; edges not mentioned keep
    /// the standard direction.
    pub fn from_arrows(datum: &ValidatedCartan, arrows: &[(Vertex, Vertex)]) -> Result<Self, CartanError> {
        let mut o = Self::standard(datum);
        for &(a, b) in arrows {
            if a == b || datum.dot(a, b) == 0 {
                return Err(CartanError::Malformed(format!(
                    "{} -> {} is not an edge",
                    datum.name(a),
                    datum.name(b)
                )));
            }
            o.forward[a.0][b.0] = true;
            o.forward[b.0][a.0] = false;
        }
        Ok(o)
    }

    /// The same orientation with the edge `{a, b}` reversed.
    pub fn reversed(&self, a: Vertex, b: Vertex) -> Self {
        let mut o = self.clone();
        let ab = o.forward[a.0][b.0];
        o.forward[a.0][b.0] = o.forward[b.0][a.0];
        o.forward[b.0][a.0] = ab;
        o
    }

    /// True iff `a -> b` is an oriented edge.
    #[inline]
    pub fn points(&self, a: Vertex, b: Vertex) -> bool {
        self.forward[a.0][b.0]
    }

    /// Oriented edges `(tail, head)`, sorted.
    pub fn arrows(&self) -> Vec<(Vertex, Vertex)> {
        let n = self.forward.len();
        let mut out = Vec::new();
        for a in 0..n {
            for b in 0..n {
                if self.forward[a][b] {
                    out.push((Vertex(a), Vertex(b)));
                }
            }
        }
        out
    }
}

/// Element `nu = sum nu_i i` of `N[I]`, indexed by vertex.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Weight(pub Vec<u32>);

impl Weight {
    pub fn zero(rank: usize) -> Self {
        Weight(vec![0; rank])
    }

    pub fn total(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn get(&self, v: Vertex) -> u32 {
        self.0.get(v.0).copied().unwrap_or(0)
    }

    pub fn add_vertex(&mut self, v: Vertex, n: u32) {
        if self.0.len() <= v.0 {
            self.0.resize(v.0 + 1, 0);
        }
        self.0[v.0] += n;
    }

    /// Entrywise sum; the result has the longer length.
    pub fn plus(&self, other: &Weight) -> Weight {
        let len = self.0.len().max(other.0.len());
        Weight((0..len).map(|k| self.0.get(k).unwrap_or(&0) + other.0.get(k).unwrap_or(&0)).collect())
    }

    fn trimmed(&self) -> &[u32] {
        let end = self.0.iter().rposition(|&m| m != 0).map_or(0, |p| p + 1);
        &self.0[..end]
    }

    /// Equality ignoring trailing zeros.
    pub fn same_as(&self, other: &Weight) -> bool {
        self.trimmed() == other.trimmed()
    }
}

/// A sequence of vertices.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Seq(pub Vec<Vertex>);

impl Seq {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn weight(&self, rank: usize) -> Weight {
        let mut w = Weight::zero(rank);
        for &v in &self.0 {
            w.add_vertex(v, 1);
        }
        w
    }

    pub fn concat(&self, other: &Seq) -> Seq {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Seq(v)
    }

    /// Swaps positions `k` and `k + 1` (0-based).
    pub fn swapped(&self, k: usize) -> Seq {
        let mut v = self.0.clone();
        v.swap(k, k + 1);
        Seq(v)
    }
}

/// A divided-power sequence `i_1^(n_1) ... i_r^(n_r)`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SeqD(pub Vec<(Vertex, u32)>);

impl SeqD {
    pub fn from_seq(s: &Seq) -> SeqD {
        SeqD(s.0.iter().map(|&v| (v, 1)).collect())
    }

    pub fn flatten(&self) -> Seq {
        Seq(self.0.iter().flat_map(|&(v, n)| std::iter::repeat_n(v, n as usize)).collect())
    }

    pub fn weight(&self, rank: usize) -> Weight {
        self.flatten().weight(rank)
    }

    pub fn concat(&self, other: &SeqD) -> SeqD {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        SeqD(v)
    }

    pub fn strands(&self) -> usize {
        self.0.iter().map(|&(_, n)| n as usize).sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b2() -> ValidatedCartan {
        CartanDatum::new(vec!["i", "j"], vec![vec![2, -2], vec![-2, 4]]).validate().unwrap()
    }

    #[test]
    fn b2_is_valid_with_expected_d() {
        let c = b2();
        let (i, j) = (Vertex(0), Vertex(1));
        assert_eq!(c.d_coeff(i, j).unwrap(), 2);
        assert_eq!(c.d_coeff(j, i).unwrap(), 1);
        assert_eq!(c.d_coeff(i, i), Err(CartanError::EqualVertices));
    }

    #[test]
    fn disconnected_pair_is_valid() {
        let c = CartanDatum::new(vec!["i", "j"], vec![vec![2, 0], vec![0, 2]]).validate().unwrap();
        assert_eq!(c.d_coeff(Vertex(0), Vertex(1)).unwrap(), 0);
        assert!(c.edges().is_empty());
    }

    #[test]
    fn non_integral_ratio_is_rejected() {
        let err = CartanDatum::new(vec!["i", "j"], vec![vec![2, -3], vec![-3, 4]]).validate().unwrap_err();
        let CartanError::Axioms(v) = err else { panic!("expected axiom violations") };
        assert_eq!(
            v,
            vec![AxiomViolation::PositiveOffDiagonal { i: "j".into(), j: "i".into(), value: -3 }]
        );
    }

    #[test]
    fn all_violations_reported() {
        let err = CartanDatum::new(vec!["i", "j"], vec![vec![3, 1], vec![-1, 2]]).validate().unwrap_err();
        let CartanError::Axioms(v) = err else { panic!() };
        assert!(v.iter().any(|x| matches!(x, AxiomViolation::OddDiagonal { .. })));
        assert!(v.iter().any(|x| matches!(x, AxiomViolation::Asymmetric { .. })));
        assert!(v.iter().any(|x| matches!(x, AxiomViolation::PositiveOffDiagonal { .. })));
    }

    #[test]
    fn malformed_table() {
        let err = CartanDatum::new(vec!["i", "j"], vec![vec![2, 0]]).validate().unwrap_err();
        assert!(matches!(err, CartanError::Malformed(_)));
    }

    #[test]
    fn sequences_small() {
        let c = b2();
        let s = c.sequences(&Weight(vec![1, 1])).unwrap();
        assert_eq!(s.iter().map(|s| c.fmt_seq(s)).collect::<Vec<_>>(), vec!["i,j", "j,i"]);
        assert_eq!(c.sequences(&Weight(vec![2, 0])).unwrap().len(), 1);
        let s = c.sequences(&Weight(vec![2, 1])).unwrap();
        assert_eq!(s.iter().map(|s| c.fmt_seq(s)).collect::<Vec<_>>(), vec!["i,i,j", "i,j,i", "j,i,i"]);
        assert!(matches!(c.sequences(&Weight(vec![6, 5])), Err(CartanError::TooLarge { .. })));
    }

    /// Brute force: every block decomposition of every arrangement.
    fn seqd_oracle(c: &ValidatedCartan, nu: &Weight) -> BTreeSet<SeqD> {
        let mut out = BTreeSet::new();
        for s in c.sequences(nu).unwrap() {
            let n = s.len();
            // each of the n-1 gaps between equal letters may or may not be a block boundary
            for mask in 0u32..(1 << n.saturating_sub(1)) {
                let mut blocks: Vec<(Vertex, u32)> = Vec::new();
                let mut ok = true;
                for (p, &v) in s.0.iter().enumerate() {
                    let join = p > 0 && mask & (1 << (p - 1)) != 0;
                    if join {
                        let last = blocks.last_mut().unwrap();
                        if last.0 != v {
                            ok = false;
                            break;
                        }
                        last.1 += 1;
                    } else {
                        blocks.push((v, 1));
                    }
                }
                if ok {
                    out.insert(SeqD(blocks));
                }
            }
        }
        out
    }

    #[test]
    fn divided_sequences_match_oracle() {
        let c = b2();
        let two_i = c.divided_sequences(&Weight(vec![2, 0])).unwrap();
        assert_eq!(two_i, vec![SeqD(vec![(Vertex(0), 1), (Vertex(0), 1)]), SeqD(vec![(Vertex(0), 2)])]);
        assert_eq!(c.divided_sequences(&Weight(vec![1, 0])).unwrap(), vec![SeqD(vec![(Vertex(0), 1)])]);
        for nu in c.weights_up_to(5) {
            let got: BTreeSet<SeqD> = c.divided_sequences(&nu).unwrap().into_iter().collect();
            assert_eq!(got, seqd_oracle(&c, &nu), "nu = {nu:?}");
        }
        // 2i + j: the oracle counts 5 (i(2)j, i(1)i(1)j, iji, ji(2), ji(1)i(1))
        assert_eq!(c.divided_sequences(&Weight(vec![2, 1])).unwrap().len(), 5);
    }

    #[test]
    fn multinomial_counts_and_flattening() {
        let c = CartanDatum::new(
            vec!["i", "j", "k"],
            vec![vec![2, -1, 0], vec![-1, 2, -1], vec![0, -1, 2]],
        )
        .validate()
        .unwrap();
        let fact = |n: u32| (1..=n as u64).product::<u64>();
        for nu in c.weights_up_to(5) {
            let seqs = c.sequences(&nu).unwrap();
            let expected = fact(nu.total()) / nu.0.iter().map(|&m| fact(m)).product::<u64>();
            assert_eq!(seqs.len() as u64, expected);
            for s in c.divided_sequences(&nu).unwrap() {
                assert!(seqs.contains(&s.flatten()));
            }
        }
    }

    #[test]
    fn orientation_reverse() {
        let c = b2();
        let (i, j) = (Vertex(0), Vertex(1));
        let o = Orientation::standard(&c);
        assert!(o.points(i, j) && !o.points(j, i));
        let r = o.reversed(i, j);
        assert!(r.points(j, i) && !r.points(i, j));
        assert_eq!(Orientation::from_arrows(&c, &[(j, i)]).unwrap(), r);
        assert!(Orientation::from_arrows(&c, &[(i, i)]).is_err());
    }

    #[test]
    fn d_symmetry_identity() {
        let c = CartanDatum::new(vec!["i", "j"], vec![vec![2, -3], vec![-3, 6]]).validate().unwrap();
        let (i, j) = (Vertex(0), Vertex(1));
        assert_eq!(c.d(i, j) as i64 * c.dot(i, i), -2 * c.dot(i, j));
        assert_eq!(c.d(j, i) as i64 * c.dot(j, j), -2 * c.dot(i, j));
    }
}
