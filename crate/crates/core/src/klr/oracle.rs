//! Cross-checks of the normal-form engine against the polynomial representation.

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::cartan::{Orientation, Seq, ValidatedCartan, Vertex};
use crate::poly::{monomials_up_to, MultiPoly};
use crate::qring::Rational;
use crate::report::Report;

use super::relations::act_sum;
use super::{enumerate_basis, Atom, DiagramWord, KLRElement, KlrAlgebra, StandardRule, Terms};

/// A uniformly random word with `1..=max_strands` strands and `0..=max_atoms` atoms.
pub fn random_word<R: Rng>(datum: &ValidatedCartan, max_strands: usize, max_atoms: usize, rng: &mut R) -> DiagramWord {
    let n = rng.gen_range(1..=max_strands);
    let bottom = Seq((0..n).map(|_| Vertex(rng.gen_range(0..datum.rank()))).collect());
    random_word_on(bottom, max_atoms, rng)
}

pub fn random_word_on<R: Rng>(bottom: Seq, max_atoms: usize, rng: &mut R) -> DiagramWord {
    let n = bottom.len();
    let len = rng.gen_range(0..=max_atoms);
    let atoms = (0..len)
        .map(|_| {
            if n > 1 && rng.gen_bool(0.6) {
                Atom::Cross(rng.gen_range(0..n - 1))
            } else {
                Atom::Dot(rng.gen_range(0..n))
            }
        })
        .collect();
    DiagramWord { bottom, atoms }
}

/// The basis expansion of `e` as words over its bottom.
pub fn element_terms(e: &KLRElement) -> Terms {
    e.terms().map(|(k, c)| (Rational::from_integer(c.into()), k.atoms())).collect()
}

fn commute(a: Atom, b: Atom) -> bool {
    match (a, b) {
        (Atom::Dot(_), Atom::Dot(_)) => true,
        (Atom::Cross(k), Atom::Cross(l)) => k.abs_diff(l) > 1,
        (Atom::Dot(t), Atom::Cross(k)) | (Atom::Cross(k), Atom::Dot(t)) => t != k && t != k + 1,
    }
}

/// Randomly exchanges adjacent commuting atoms.
pub fn shuffle_commuting<R: Rng>(w: &DiagramWord, rng: &mut R) -> DiagramWord {
    let mut atoms = w.atoms.clone();
    for _ in 0..2 * atoms.len() {
        let p = rng.gen_range(0..atoms.len().max(2) - 1);
        if p + 1 < atoms.len() && commute(atoms[p], atoms[p + 1]) {
            atoms.swap(p, p + 1);
        }
    }
    DiagramWord { bottom: w.bottom.clone(), atoms }
}

/// `normal_form(w)` and `w` act alike on `states` random polynomials, for
/// `words` random words.
pub fn verify_oracle(
    alg: &KlrAlgebra,
    orientation: &Orientation,
    words: usize,
    max_strands: usize,
    max_atoms: usize,
    states: usize,
    seed: u64,
) -> Report {
    let datum = alg.datum();
    let rule = StandardRule(orientation);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = Report::new();
    let mut bad = None;
    for _ in 0..words {
        let w = random_word(datum, max_strands, max_atoms, &mut rng);
        let nf = element_terms(&alg.normal_form(&w));
        let raw: Terms = vec![(Rational::from_integer(1.into()), w.atoms.clone())];
        for _ in 0..states {
            let f = MultiPoly::random(w.strands(), 3, 4, &mut rng);
            if act_sum(datum, &rule, &w.bottom, &raw, &f) != act_sum(datum, &rule, &w.bottom, &nf, &f) {
                bad.get_or_insert_with(|| w.render(datum));
                break;
            }
        }
    }
    match bad {
        None => report.push("oracle.normal_form", true, format!("{words} words x {states} states")),
        Some(w) => report.push("oracle.normal_form", false, format!("witness {w}")),
    }
    report
}

/// Flip is an anti-automorphism and an involution; products agree with
/// normal forms of concatenations; shuffled words have equal normal forms.
pub fn verify_algebra_laws(alg: &KlrAlgebra, samples: usize, max_strands: usize, max_atoms: usize, seed: u64) -> Report {
    let datum = alg.datum();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut fails: [Option<String>; 4] = Default::default();
    for _ in 0..samples {
        let wb = random_word(datum, max_strands, max_atoms / 2, &mut rng);
        let wa = random_word_on(wb.top(), max_atoms / 2, &mut rng);
        let (a, b) = (alg.normal_form(&wa), alg.normal_form(&wb));
        let ab = alg.multiply(&a, &b);
        let cat = DiagramWord { bottom: wb.bottom.clone(), atoms: [wb.atoms.clone(), wa.atoms.clone()].concat() };
        let witness = || format!("{} then {}", wb.render(datum), wa.render(datum));
        if ab != alg.normal_form(&cat) {
            fails[0].get_or_insert_with(witness);
        }
        if alg.flip(&ab) != alg.multiply(&alg.flip(&b), &alg.flip(&a)) {
            fails[1].get_or_insert_with(witness);
        }
        if alg.flip(&alg.flip(&a)) != a {
            fails[2].get_or_insert_with(witness);
        }
        if alg.normal_form(&shuffle_commuting(&cat, &mut rng)) != alg.normal_form(&cat) {
            fails[3].get_or_insert_with(witness);
        }
    }
    let mut report = Report::new();
    for (id, f) in ["laws.concatenation", "laws.flip_anti", "laws.flip_involution", "laws.shuffle"].iter().zip(fails) {
        match f {
            None => report.push(*id, true, format!("{samples} pairs")),
            Some(w) => report.push(*id, false, format!("witness {w}")),
        }
    }
    report
}

/// Rank over `Q` of the given rows.
pub fn rank(mut rows: Vec<Vec<Rational>>) -> usize {
    let mut r = 0;
    let ncols = rows.first().map_or(0, Vec::len);
    for col in 0..ncols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][col].is_zero()) else { continue };
        rows.swap(r, p);
        let pivot = rows[r][col].clone();
        for i in r + 1..rows.len() {
            if rows[i][col].is_zero() {
                continue;
            }
            let f = &rows[i][col] / &pivot;
            for j in col..ncols {
                let v = &rows[r][j] * &f;
                rows[i][j] -= v;
            }
        }
        r += 1;
    }
    r
}

/// Distinct basis keys from `bottom` to `top` up to degree `max_deg` act
/// linearly independently on polynomials of degree `<= poly_deg`.
pub fn keys_independent(
    datum: &ValidatedCartan,
    orientation: &Orientation,
    bottom: &Seq,
    top: &Seq,
    max_deg: i64,
    poly_deg: u32,
) -> bool {
    let keys = enumerate_basis(bottom, top, max_deg, datum);
    let rule = StandardRule(orientation);
    let n = bottom.len();
    let inputs: Vec<MultiPoly> = monomials_up_to(n, poly_deg)
        .into_iter()
        .map(|e| MultiPoly::monomial(e, Rational::from_integer(1.into())))
        .collect();
    let outputs: Vec<Vec<MultiPoly>> = keys
        .iter()
        .map(|k| {
            let t = vec![(Rational::from_integer(1.into()), k.atoms())];
            inputs.iter().map(|f| act_sum(datum, &rule, bottom, &t, f)).collect()
        })
        .collect();
    let mut support: Vec<(usize, Vec<u32>)> = Vec::new();
    for out in &outputs {
        for (i, g) in out.iter().enumerate() {
            support.extend(g.terms().map(|(e, _)| (i, e.clone())));
        }
    }
    support.sort();
    support.dedup();
    let rows: Vec<Vec<Rational>> =
        outputs.iter().map(|out| support.iter().map(|(i, e)| out[*i].coeff(e)).collect()).collect();
    rank(rows) == keys.len()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cartan::CartanDatum;

    fn datum(ii: i64, jj: i64, ij: i64) -> ValidatedCartan {
        CartanDatum::new(vec!["i", "j"], vec![vec![ii, ij], vec![ij, jj]]).validate().unwrap()
    }

    #[test]
    fn engine_matches_polynomial_action() {
        for c in [datum(2, 2, -1), datum(2, 4, -2), datum(2, 6, -3), datum(2, 2, 0)] {
            let o = Orientation::standard(&c);
            let alg = KlrAlgebra::new(c);
            let r = verify_oracle(&alg, &o, 100, 4, 8, 5, 3);
            assert!(r.all_passed(), "{r}");
            let r = verify_algebra_laws(&alg, 50, 4, 8, 4);
            assert!(r.all_passed(), "{r}");
        }
    }

    #[test]
    fn small_bases_are_independent() {
        let c = datum(2, 4, -2);
        let o = Orientation::standard(&c);
        let s = |v: &[usize]| Seq(v.iter().map(|&k| Vertex(k)).collect());
        assert!(keys_independent(&c, &o, &s(&[0, 0]), &s(&[0, 0]), 4, 4));
        assert!(keys_independent(&c, &o, &s(&[0, 1]), &s(&[1, 0]), 6, 4));
        assert!(keys_independent(&c, &o, &s(&[0, 1, 0]), &s(&[0, 0, 1]), 4, 4));
    }

    #[test]
    fn rank_examples() {
        let q = |v: i64| Rational::from_integer(v.into());
        assert_eq!(rank(vec![vec![q(1), q(2)], vec![q(2), q(4)]]), 1);
        assert_eq!(rank(vec![vec![q(0), q(1)], vec![q(1), q(0)]]), 2);
    }
}
