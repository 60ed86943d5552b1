use num_traits::{One, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::cartan::{Seq, ValidatedCartan, Vertex};
use crate::poly::MultiPoly;
use crate::qring::Rational;
use crate::report::Report;

use super::{act_atoms, Atom, CrossingRule};

/// A linear combination of atom words sharing one bottom sequence.
pub type Terms = Vec<(Rational, Vec<Atom>)>;

/// One instance `lhs = rhs` of a defining relation, idempotented by `bottom`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelationInstance {
    pub id: String,
    pub bottom: Seq,
    pub lhs: Terms,
    pub rhs: Terms,
}

/// The right-hand sides that change when the algebra is deformed.
pub trait RelationRhs {
    /// `psi_k^2` on labels `(a, b)` at `(k, k+1)`, `a != b`, `a.b != 0`.
    fn quadratic(&self, datum: &ValidatedCartan, a: Vertex, b: Vertex, k: usize) -> Terms;
    /// `psi_k psi_{k+1} psi_k - psi_{k+1} psi_k psi_{k+1}` on labels `(a, b, a)`, `a.b != 0`.
    fn braid(&self, datum: &ValidatedCartan, a: Vertex, b: Vertex, k: usize) -> Terms;
}

/// The undeformed relations.
pub struct Standard;

impl RelationRhs for Standard {
    fn quadratic(&self, datum: &ValidatedCartan, a: Vertex, b: Vertex, k: usize) -> Terms {
        vec![(one(), dots(k, datum.d(a, b))), (one(), dots(k + 1, datum.d(b, a)))]
    }

    fn braid(&self, datum: &ValidatedCartan, a: Vertex, b: Vertex, k: usize) -> Terms {
        let d = datum.d(a, b);
        (0..d).map(|t| (one(), [dots(k, t), dots(k + 2, d - 1 - t)].concat())).collect()
    }
}

fn one() -> Rational {
    Rational::one()
}

pub(crate) fn dots(k: usize, e: u32) -> Vec<Atom> {
    vec![Atom::Dot(k); e as usize]
}

fn word(atoms: Vec<Atom>) -> Terms {
    vec![(one(), atoms)]
}

fn id(kind: &str, datum: &ValidatedCartan, s: &Seq, at: &[usize]) -> String {
    let at: Vec<String> = at.iter().map(|k| (k + 1).to_string()).collect();
    format!("{kind}[{}@{}]", datum.fmt_seq(s), at.join(","))
}

/// Every instance of the defining relations on the bottom sequence `s`.
pub fn relation_instances(datum: &ValidatedCartan, s: &Seq, rhs: &dyn RelationRhs) -> Vec<RelationInstance> {
    let n = s.len();
    let mut out = Vec::new();
    let mut push = |id: String, lhs: Terms, r: Terms| out.push(RelationInstance { id, bottom: s.clone(), lhs, rhs: r });
    use Atom::{Cross as C, Dot as X};
    for k in 0..n.saturating_sub(1) {
        let (a, b) = (s.0[k], s.0[k + 1]);
        let q = if a == b {
            vec![]
        } else if datum.dot(a, b) == 0 {
            word(vec![])
        } else {
            rhs.quadratic(datum, a, b, k)
        };
        push(id("quadratic", datum, s, &[k]), word(vec![C(k), C(k)]), q);
        if a == b {
            // x_k psi_k = psi_k x_{k+1} + 1 and x_{k+1} psi_k = psi_k x_k - 1
            push(id("slide_ii_1", datum, s, &[k]), word(vec![C(k), X(k)]), vec![(one(), vec![X(k + 1), C(k)]), (one(), vec![])]);
            push(id("slide_ii_2", datum, s, &[k]), word(vec![C(k), X(k + 1)]), vec![(one(), vec![X(k), C(k)]), (-one(), vec![])]);
        } else {
            push(id("slide_ij", datum, s, &[k, k]), word(vec![C(k), X(k)]), word(vec![X(k + 1), C(k)]));
            push(id("slide_ij", datum, s, &[k, k + 1]), word(vec![C(k), X(k + 1)]), word(vec![X(k), C(k)]));
        }
        for t in (0..n).filter(|&t| t != k && t != k + 1) {
            push(id("slide_far", datum, s, &[k, t]), word(vec![C(k), X(t)]), word(vec![X(t), C(k)]));
        }
        for l in k + 2..n.saturating_sub(1) {
            push(id("far_commute", datum, s, &[k, l]), word(vec![C(k), C(l)]), word(vec![C(l), C(k)]));
        }
        if k + 2 < n {
            let c = s.0[k + 2];
            let lhs = vec![(one(), vec![C(k), C(k + 1), C(k)]), (-one(), vec![C(k + 1), C(k), C(k + 1)])];
            if a == c && a != b && datum.dot(a, b) != 0 {
                push(id("r3_hard", datum, s, &[k]), lhs, rhs.braid(datum, a, b, k));
            } else {
                push(id("r3_easy", datum, s, &[k]), lhs, vec![]);
            }
        }
    }
    for t in 0..n {
        for u in t + 1..n {
            push(id("dots_commute", datum, s, &[t, u]), word(vec![X(t), X(u)]), word(vec![X(u), X(t)]));
        }
    }
    out
}

/// `sum c * (atoms acting on f)`; all words of an instance end on one sequence.
pub(crate) fn act_sum<R: CrossingRule + ?Sized>(
    datum: &ValidatedCartan,
    rule: &R,
    bottom: &Seq,
    terms: &Terms,
    f: &MultiPoly,
) -> MultiPoly {
    let mut g = MultiPoly::zero(bottom.len());
    for (c, atoms) in terms {
        if !c.is_zero() {
            g = &g + &act_atoms(datum, rule, bottom, atoms, f).scale(c);
        }
    }
    g
}

/// Checks `inst` on `samples` random polynomials; returns the first witness of failure.
pub fn check_instance<R: CrossingRule + ?Sized>(
    datum: &ValidatedCartan,
    rule: &R,
    inst: &RelationInstance,
    samples: usize,
    rng: &mut ChaCha8Rng,
) -> Result<(), MultiPoly> {
    let n = inst.bottom.len();
    for _ in 0..samples {
        let f = MultiPoly::random(n, 3, 4, rng);
        if act_sum(datum, rule, &inst.bottom, &inst.lhs, &f) != act_sum(datum, rule, &inst.bottom, &inst.rhs, &f) {
            return Err(f);
        }
    }
    Ok(())
}

/// Every relation instance on every sequence with at most `max_strands`
/// strands, checked in the polynomial representation defined by `rule`.
pub fn verify_relations<R: CrossingRule + ?Sized>(
    datum: &ValidatedCartan,
    rule: &R,
    rhs: &dyn RelationRhs,
    max_strands: u32,
    samples: usize,
    seed: u64,
) -> Report {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = Report::new();
    for nu in datum.weights_up_to(max_strands) {
        let seqs = match datum.sequences(&nu) {
            Ok(s) => s,
            Err(e) => {
                report.push(format!("weight[{}]", datum.fmt_weight(&nu)), false, e.to_string());
                continue;
            }
        };
        for s in seqs {
            for inst in relation_instances(datum, &s, rhs) {
                match check_instance(datum, rule, &inst, samples, &mut rng) {
                    Ok(()) => report.push(inst.id, true, format!("{samples} samples")),
                    Err(f) => report.push(inst.id, false, format!("witness f = {f}")),
                }
            }
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cartan::{CartanDatum, Orientation};
    use crate::klr::StandardRule;

    fn datum(ii: i64, jj: i64, ij: i64) -> ValidatedCartan {
        CartanDatum::new(vec!["i", "j"], vec![vec![ii, ij], vec![ij, jj]]).validate().unwrap()
    }

    #[test]
    fn relations_hold_in_both_orientations() {
        for c in [datum(2, 2, -1), datum(2, 4, -2), datum(2, 6, -3), datum(2, 2, 0)] {
            let std = Orientation::standard(&c);
            let rev = std.reversed(Vertex(0), Vertex(1));
            for o in [std, rev] {
                let r = verify_relations(&c, &StandardRule(&o), &Standard, 3, 10, 7);
                assert!(r.all_passed(), "{}", r.failures().next().unwrap().id);
            }
        }
    }

    #[test]
    fn wrong_quadratic_fails() {
        struct Wrong;
        impl RelationRhs for Wrong {
            fn quadratic(&self, _: &ValidatedCartan, _: Vertex, _: Vertex, _: usize) -> Terms {
                vec![(one(), vec![])]
            }
            fn braid(&self, d: &ValidatedCartan, a: Vertex, b: Vertex, k: usize) -> Terms {
                Standard.braid(d, a, b, k)
            }
        }
        let c = datum(2, 4, -2);
        let o = Orientation::standard(&c);
        let r = verify_relations(&c, &StandardRule(&o), &Wrong, 2, 5, 1);
        assert!(r.failures().any(|f| f.id.starts_with("quadratic[i,j")));
    }
}
