use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use klr::cartan::{CartanDatum, Orientation, Seq, ValidatedCartan, Vertex};
use klr::deform::{multidegree, TauDatum};
use klr::freehalf::{coproduct, BilinearForm, FreeElement};
use klr::klr::oracle::{random_word, random_word_on};
use klr::klr::{relation_instances, DiagramWord, KlrAlgebra};
use klr::qring::{expand, qint, LaurentPoly, RationalQ};

fn datum(k: usize) -> ValidatedCartan {
    let (ii, jj, ij) = [(2, 2, -1), (2, 4, -2), (2, 6, -3), (2, 2, 0)][k];
    CartanDatum::new(vec!["i", "j"], vec![vec![ii, ij], vec![ij, jj]]).validate().unwrap()
}

fn laurent() -> impl Strategy<Value = LaurentPoly> {
    prop::collection::vec((-4i64..=4, -3i64..=3), 0..5).prop_map(LaurentPoly::from_pairs)
}

fn rational_q() -> impl Strategy<Value = RationalQ> {
    (laurent(), prop::collection::vec(1u32..=4, 0..3)).prop_map(|(p, f)| RationalQ::new(p, f))
}

fn word(rank: usize, max: usize) -> impl Strategy<Value = Seq> {
    prop::collection::vec(0..rank, 0..=max).prop_map(|v| Seq(v.into_iter().map(Vertex).collect()))
}

fn free_element(rank: usize) -> impl Strategy<Value = FreeElement> {
    // a combination of words of one weight: permutations of a fixed word
    (word(rank, 3), prop::collection::vec((any::<prop::sample::Index>(), laurent()), 1..4)).prop_map(move |(w, parts)| {
        let mut x = FreeElement::zero(w.weight(rank));
        for (idx, c) in parts {
            let mut letters = w.0.clone();
            if !letters.is_empty() {
                let k = idx.index(letters.len());
                letters.rotate_left(k);
            }
            x = x.try_add(&FreeElement::term(Seq(letters), RationalQ::from_laurent(c), rank)).unwrap();
        }
        x
    })
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 64, ..ProptestConfig::default() })]

    #[test]
    fn laurent_ring_axioms(a in laurent(), b in laurent(), c in laurent()) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&(&a + &b) - &b, a.clone());
        prop_assert_eq!(&a * &LaurentPoly::one(), a.clone());
        prop_assert_eq!((&a * &b).bar(), &a.bar() * &b.bar());
        prop_assert_eq!(a.bar().bar(), a);
    }

    #[test]
    fn rational_functions_form_a_ring(a in rational_q(), b in rational_q(), c in rational_q()) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&(&a + &b) - &b, a);
    }

    #[test]
    fn expansion_is_multiplicative(a in rational_q(), b in rational_q()) {
        // exact only for series without negative powers
        let lift = |r: &RationalQ| match r.numerator().min_exponent() {
            Some(m) if m < 0 => r.shift(-m),
            _ => r.clone(),
        };
        let (a, b) = (lift(&a), lift(&b));
        prop_assert_eq!(expand(&(&a * &b), 12), expand(&a, 12).mul(&expand(&b, 12)));
        prop_assert_eq!(expand(&(&a + &b), 12), expand(&a, 12).add(&expand(&b, 12)));
    }

    #[test]
    fn quantum_integers_are_bar_invariant(n in 0u32..8, h in 1i64..4) {
        prop_assert_eq!(qint(n, h).bar(), qint(n, h));
    }

    #[test]
    fn form_is_symmetric(k in 0usize..4, x in free_element(2), y in free_element(2)) {
        let d = datum(k);
        let f = BilinearForm::new(&d);
        prop_assert_eq!(f.pair(&x, &y), f.pair(&y, &x));
        prop_assert_eq!(f.pair(&x, &y), f.pair_transposed(&x, &y));
    }

    #[test]
    fn coproduct_is_adjoint_to_product(k in 0usize..4, x in word(2, 4), y in word(2, 2), z in word(2, 2)) {
        let d = datum(k);
        let f = BilinearForm::new(&d);
        let xe = FreeElement::word(x, 2);
        let (ye, ze) = (FreeElement::word(y.clone(), 2), FreeElement::word(z.clone(), 2));
        let lhs = f.pair(&xe, &ye.multiply(&ze));
        let comp = coproduct(&xe, &d).component(&y.weight(2), &z.weight(2), 2);
        let mut rhs = RationalQ::zero();
        for ((a, b), c) in comp.terms() {
            let pa = f.pair(&FreeElement::word(a.clone(), 2), &ye);
            let pb = f.pair(&FreeElement::word(b.clone(), 2), &ze);
            rhs = &rhs + &(&(c * &pa) * &pb);
        }
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn coproduct_is_multiplicative(k in 0usize..4, x in word(2, 3), y in word(2, 2)) {
        let d = datum(k);
        let (xe, ye) = (FreeElement::word(x, 2), FreeElement::word(y, 2));
        let lhs = coproduct(&xe.multiply(&ye), &d);
        let rhs = coproduct(&xe, &d).twisted_mul(&coproduct(&ye, &d), &d);
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn normal_forms_are_stable(k in 0usize..4, seed in any::<u64>()) {
        let d = datum(k);
        let alg = KlrAlgebra::new(d.clone());
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let w = random_word(&d, 4, 8, &mut rng);
        let nf = alg.normal_form(&w);
        // each basis key is already in normal form
        for (key, _) in nf.terms() {
            let again = alg.normal_form(&key.to_word());
            prop_assert_eq!(again.len(), 1);
            prop_assert_eq!(again.coeff(key), 1);
        }
        prop_assert!(nf.is_homogeneous(&d));
        prop_assert_eq!(alg.flip(&alg.flip(&nf)), nf);
    }

    #[test]
    fn multidegree_is_additive(k in 0usize..4, seed in any::<u64>()) {
        let d = datum(k);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = random_word(&d, 4, 5, &mut rng);
        let b = random_word_on(a.top(), 5, &mut rng);
        let cat = DiagramWord { bottom: a.bottom.clone(), atoms: [a.atoms.clone(), b.atoms.clone()].concat() };
        let (ma, mb, mc) = (multidegree(&a, &d), multidegree(&b, &d), multidegree(&cat, &d));
        prop_assert_eq!(mc.principal, ma.principal + mb.principal);
        for key in ma.extra.keys().chain(mb.extra.keys()).chain(mc.extra.keys()) {
            let get = |m: &klr::deform::MultiDegree| m.extra.get(key).copied().unwrap_or(0);
            prop_assert_eq!(get(&mc), get(&ma) + get(&mb));
        }
    }

    #[test]
    fn flipping_an_edge_keeps_the_relations(k in 0usize..3, seed in any::<u64>()) {
        // the representations differ, the presentations do not
        let d = datum(k);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let t = TauDatum::random(&d, &Orientation::standard(&d), &mut rng);
        let flipped = t.flipped(Vertex(0), Vertex(1));
        for nu in d.weights_up_to(3) {
            for s in d.sequences(&nu).unwrap() {
                let key = |tau: &TauDatum| -> Vec<_> {
                    relation_instances(&d, &s, tau)
                        .into_iter()
                        .map(|r| {
                            let (mut l, mut rr) = (r.lhs, r.rhs);
                            l.sort_by(|x, y| x.1.cmp(&y.1));
                            rr.sort_by(|x, y| x.1.cmp(&y.1));
                            (r.id, l, rr)
                        })
                        .collect()
                };
                let (a, b) = (key(&t), key(&flipped));
                prop_assert_eq!(a, b);
            }
        }
    }
}
