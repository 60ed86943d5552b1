//! The verification suites at desk scale, shared by the CLI and the
//! acceptance tests.  Every report is sorted by check id.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::cartan::{Orientation, Seq, ValidatedCartan, Vertex};
use crate::deform::{
    cycle_products, rescale_equiv, tau_relations_check, verify_multigrading, verify_sign_adjusted, verify_witness,
    TauDatum,
};
use crate::freehalf::{radical_check, serre_element};
use crate::k0::verify_intertwine;
use crate::klr::oracle::{verify_algebra_laws, verify_oracle};
use crate::klr::{verify_relations, KlrAlgebra, Standard, StandardRule};
use crate::nilhecke::{verify_box_identities, verify_idempotent};
use crate::report::Report;
use crate::serre::{verify_all, SerreContext};

/// Largest `|nu|` for the strand-enumerating suites.
pub const MAX_STRANDS: u32 = 4;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    Relations,
    NilHecke,
    Serre,
    Pair,
    Tau,
    Multigrade,
}

impl Suite {
    pub const ALL: [Suite; 6] =
        [Suite::Relations, Suite::NilHecke, Suite::Serre, Suite::Pair, Suite::Tau, Suite::Multigrade];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Relations => "relations",
            Suite::NilHecke => "nilhecke",
            Suite::Serre => "serre",
            Suite::Pair => "pair",
            Suite::Tau => "tau",
            Suite::Multigrade => "multigrade",
        }
    }
}

/// Defining relations on 100 random states per instance, then 500 random
/// words against their normal forms and the algebra laws.
pub fn relations(alg: &KlrAlgebra, seed: u64) -> Report {
    let datum = alg.datum();
    let o = Orientation::standard(datum);
    let mut r = verify_relations(datum, &StandardRule(&o), &Standard, MAX_STRANDS, 100, seed);
    r.extend(verify_oracle(alg, &o, 500, MAX_STRANDS as usize, 8, 20, seed));
    r.extend(verify_algebra_laws(alg, 300, MAX_STRANDS as usize, 8, seed));
    r.sorted()
}

/// `e_n` idempotent for `n <= 5`; lemma, box and undercross identities for `n <= 4`.
pub fn nilhecke() -> Report {
    let mut r = Report::new();
    for n in 1..=5 {
        if (2..=4).contains(&n) {
            r.extend(verify_box_identities(n));
        } else {
            r.extend(verify_idempotent(n));
        }
    }
    r.sorted()
}

fn ordered_pairs(datum: &ValidatedCartan) -> Vec<(Vertex, Vertex)> {
    let vs: Vec<Vertex> = datum.vertices().collect();
    vs.iter().flat_map(|&i| vs.iter().filter(move |&&j| j != i).map(move |&j| (i, j))).collect()
}

/// The Serre element lies in the radical of the form for every ordered
/// pair; the categorified identities hold for every ordered edge with
/// `d <= 3`, bare and with one extra strand on the left.
pub fn serre(alg: &KlrAlgebra) -> Report {
    let datum = alg.datum();
    let mut r = Report::new();
    for (i, j) in ordered_pairs(datum) {
        let id = format!("radical[{},{}]", datum.name(i), datum.name(j));
        match serre_element(i, j, datum).and_then(|x| radical_check(&x, datum)) {
            Ok(ok) => r.push(id, ok, format!("d={}", datum.d(i, j))),
            Err(e) => r.push(id, false, e.to_string()),
        }
        let d = datum.d(i, j);
        if d == 0 || d > 3 {
            continue;
        }
        for pad in [Seq::default(), Seq(vec![j])] {
            let ctx = match SerreContext::new(datum, i, j) {
                Ok(c) => c.padded(pad, Seq::default()),
                Err(e) => {
                    r.push(format!("serre[{},{}]", datum.name(i), datum.name(j)), false, e.to_string());
                    continue;
                }
            };
            match verify_all(alg, &ctx) {
                Ok(rep) => r.extend(rep),
                Err(e) => r.push(format!("serre[{},{}]", datum.name(i), datum.name(j)), false, e.to_string()),
            }
        }
    }
    r.sorted()
}

/// The form and the Grothendieck group pairing agree for all `0 < |nu| <= 4`.
pub fn pair(alg: &KlrAlgebra, trunc: i64) -> Report {
    let mut r = Report::new();
    for nu in alg.datum().weights_up_to(MAX_STRANDS) {
        if nu.total() > 0 {
            r.extend(verify_intertwine(alg, &nu, trunc));
        }
    }
    r.sorted()
}

/// Deformed relations for `tau`, all ones and a random `tau`; the
/// sign-adjusted check; rescaling witnesses and cycle products.
pub fn tau(datum: &ValidatedCartan, tau: &TauDatum, seed: u64) -> Report {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let o = Orientation::standard(datum);
    let ones = TauDatum::all_ones(datum);
    let random = TauDatum::random(datum, &o, &mut rng);
    let mut r = Report::new();
    for (name, t) in [("config", tau), ("ones", &ones), ("random", &random)] {
        let rep = tau_relations_check(datum, t, MAX_STRANDS, 100, seed);
        let n = rep.len();
        let first = rep.failures().next().map(|f| format!("{} {}", f.id, f.detail));
        match first {
            None => r.push(format!("tau.relations[{name}]"), true, format!("{n} instances")),
            Some(f) => r.push(format!("tau.relations[{name}]"), false, f),
        }
    }
    r.extend(verify_sign_adjusted(datum, 200, seed));

    // reflexive and symmetric, with every witness checked on the relations
    for (name, a, b) in [("config", tau, tau), ("config~random", tau, &random), ("ones~random", &ones, &random)] {
        let there = rescale_equiv(a, b, datum);
        let back = rescale_equiv(b, a, datum);
        let id = format!("tau.rescale[{name}]");
        let same_class = cycle_products(a, datum) == cycle_products(b, datum);
        match (&there, &back) {
            (Some(w1), Some(w2)) => {
                let ok = verify_witness(a, b, w1, datum, 3, 10, seed) && verify_witness(b, a, w2, datum, 3, 10, seed);
                r.push(id, ok, "witnesses both ways".to_string());
            }
            (None, None) => r.push(id, true, "no rational rescaling either way".to_string()),
            _ => r.push(id, false, "found in one direction only".to_string()),
        }
        // in the simply-laced case the cycle products are a complete invariant
        if datum.is_simply_laced() {
            let products: Vec<String> = cycle_products(b, datum).iter().map(|p| p.to_string()).collect();
            r.push(format!("tau.cycle_product[{name}]"), same_class == there.is_some(), products.join(" "));
        }
    }
    r.sorted()
}

/// Homogeneity of the relations and the deformed Serre sums.
pub fn multigrade(alg: &KlrAlgebra, trunc: i64) -> Report {
    verify_multigrading(alg, MAX_STRANDS, trunc).sorted()
}

pub fn run(suite: Suite, alg: &KlrAlgebra, tau_datum: &TauDatum, seed: u64, trunc: i64) -> Report {
    match suite {
        Suite::Relations => relations(alg, seed),
        Suite::NilHecke => nilhecke(),
        Suite::Serre => serre(alg),
        Suite::Pair => pair(alg, trunc),
        Suite::Tau => tau(alg.datum(), tau_datum, seed),
        Suite::Multigrade => multigrade(alg, trunc),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cartan::CartanDatum;

    #[test]
    fn a1xa1_suites_pass() {
        let c = CartanDatum::new(vec!["i", "j"], vec![vec![2, 0], vec![0, 2]]).validate().unwrap();
        let alg = KlrAlgebra::new(c.clone());
        for s in [Suite::Serre, Suite::Tau, Suite::Multigrade] {
            let r = run(s, &alg, &TauDatum::all_ones(&c), 1, 10);
            assert!(r.all_passed(), "{}: {r}", s.name());
        }
    }

    #[test]
    fn reports_are_sorted_and_deterministic() {
        let c = CartanDatum::new(vec!["i", "j"], vec![vec![2, -1], vec![-1, 2]]).validate().unwrap();
        let alg = KlrAlgebra::new(c.clone());
        let t = TauDatum::all_ones(&c);
        let a = run(Suite::Tau, &alg, &t, 3, 10);
        assert_eq!(a, run(Suite::Tau, &alg, &t, 3, 10));
        assert!(a.checks.windows(2).all(|w| w[0].id <= w[1].id));
    }
}
