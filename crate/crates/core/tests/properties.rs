use std::sync::{Arc, OnceLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

use qcms::algebra::{Monomial, Signature};
use qcms::ideal::{build_triple, GradedIdeal};
use qcms::iso::{apply_substitution, SubstitutionMap};
use qcms::presentation::{deformation_split, floer_triple, quantum_triple};
use qcms::quantum_n::NRing;
use qcms::{AlgebraElement, Scalar};

fn q(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

fn scalar() -> impl Strategy<Value = Scalar> {
    (-6i64..=6, -6i64..=6, 1i64..=4).prop_map(|(re, im, den)| Scalar::new(q(re) / q(den), q(im)))
}

/// x (2), y (4) even; e1, e2, e3 (3) odd.
fn mixed() -> &'static Arc<Signature> {
    static SIG: OnceLock<Arc<Signature>> = OnceLock::new();
    SIG.get_or_init(|| Signature::new(&[("x", 2), ("y", 4)], &[("e1", 3), ("e2", 3), ("e3", 3)]).unwrap())
}

fn mixed_monomial() -> impl Strategy<Value = Monomial> {
    (0u32..3, 0u32..3, 0u64..8).prop_map(|(a, b, mask)| Monomial::new(&[a, b], mask))
}

fn mixed_element() -> impl Strategy<Value = AlgebraElement> {
    prop::collection::vec((mixed_monomial(), scalar()), 0..5)
        .prop_map(|terms| AlgebraElement::from_terms(mixed(), terms))
}

fn invariant_element(max_exp: u32) -> impl Strategy<Value = AlgebraElement> {
    prop::collection::vec(((0..=max_exp, 0..=max_exp, 0..=max_exp), scalar()), 0..5).prop_map(|terms| {
        AlgebraElement::from_terms(
            &Signature::invariant_ring(),
            terms.into_iter().map(|((a, b, c), s)| (Monomial::new(&[a, b, c], 0), s)),
        )
    })
}

fn floer_three() -> &'static GradedIdeal {
    static IDEAL: OnceLock<GradedIdeal> = OnceLock::new();
    IDEAL.get_or_init(|| build_triple(&floer_triple(3)).unwrap())
}

fn n_ring() -> &'static NRing {
    static RING: OnceLock<NRing> = OnceLock::new();
    RING.get_or_init(|| NRing::new(2).unwrap())
}

/// Elements of Λ(φ1..φ4)⊗ℚ[h] with h-powers up to 4.
fn n_element() -> impl Strategy<Value = AlgebraElement> {
    prop::collection::vec((0u32..5, 0u64..16, -5i64..=5), 0..4).prop_map(|terms| {
        let sig = n_ring().signature();
        AlgebraElement::from_terms(sig, terms.into_iter().map(|(h, mask, c)| (Monomial::new(&[h], mask), Scalar::from_int(c))))
    })
}

proptest! {
    #[test]
    fn scalar_field_laws(a in scalar(), b in scalar()) {
        prop_assert_eq!(&(&a * &b) - &(&b * &a), Scalar::from_int(0));
        if let Some(inv) = b.inv() {
            prop_assert_eq!(&(&a * &b) * &inv, a.clone());
        }
        prop_assert_eq!(Scalar::parse_coef_string(&a.to_coef_string()).unwrap(), a);
    }

    #[test]
    fn graded_commutativity(m in mixed_monomial(), n in mixed_monomial(), c in scalar()) {
        let sig = mixed();
        let a = AlgebraElement::monomial(sig, m.clone(), c);
        let b = AlgebraElement::monomial(sig, n.clone(), Scalar::from_int(1));
        let sign = if sig.degree_of(&m) % 2 == 1 && sig.degree_of(&n) % 2 == 1 { -1 } else { 1 };
        prop_assert_eq!(&a * &b, (&b * &a).scale(&Scalar::from_int(sign)));
    }

    #[test]
    fn associativity_and_distributivity(a in mixed_element(), b in mixed_element(), c in mixed_element()) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
    }

    #[test]
    fn odd_squares_vanish(i in 0usize..3, a in mixed_element()) {
        let e = AlgebraElement::generator(mixed(), ["e1", "e2", "e3"][i]).unwrap();
        prop_assert!((&(&e * &a) * &e).is_zero());
    }

    #[test]
    fn grade_components_reassemble(a in mixed_element()) {
        let parts = a.homogeneous_components();
        let sum = parts.values().fold(AlgebraElement::zero(mixed()), |acc, p| &acc + p);
        prop_assert_eq!(sum, a.clone());
        for (d, p) in &parts {
            prop_assert!(p.is_homogeneous());
            prop_assert_eq!(p.max_degree(), Some(*d));
        }
    }

    #[test]
    fn json_round_trip(a in mixed_element()) {
        prop_assert_eq!(AlgebraElement::from_json(mixed(), &a.to_json()).unwrap(), a);
    }

    #[test]
    fn substitution_is_multiplicative(g in 1u32..8, a in invariant_element(2), b in invariant_element(2)) {
        let map = SubstitutionMap::sigma(g);
        let ring = Signature::invariant_ring();
        prop_assert_eq!(map.apply(&(&a * &b), &ring).unwrap(), &map.apply(&a, &ring).unwrap() * &map.apply(&b, &ring).unwrap());
    }

    #[test]
    fn substitution_has_order_four(g in 1u32..8, a in invariant_element(3)) {
        let mut p = a.clone();
        for _ in 0..4 {
            p = apply_substitution(g, &p).unwrap();
        }
        prop_assert_eq!(p, a);
    }

    #[test]
    fn normal_form_is_idempotent(a in invariant_element(3)) {
        let ideal = floer_three();
        let nf = ideal.normal_form(&a, 3).unwrap().to_element();
        prop_assert!(ideal.contains(&(&a - &nf)).unwrap());
        prop_assert_eq!(ideal.normal_form(&nf, 3).unwrap().to_element(), nf);
    }

    #[test]
    fn membership_is_an_ideal(a in invariant_element(2), b in invariant_element(2)) {
        let ideal = floer_three();
        let t = floer_triple(3);
        let p = &(&a * &t.gens[0]) + &(&b * &t.gens[2]);
        prop_assert!(ideal.contains(&p).unwrap());
    }

    #[test]
    fn n_ring_reduction_is_a_morphism(a in n_element(), b in n_element()) {
        let ring = n_ring();
        let lhs = ring.reduce(&(&a * &b));
        let rhs = ring.mul(&ring.reduce(&a), &ring.reduce(&b));
        prop_assert_eq!(lhs.clone(), rhs);
        prop_assert!(lhs.terms().keys().all(|m| m.exps()[0] < 2));
    }

    #[test]
    fn quantum_relations_split_mod_four(r in 0u32..7, g in 1u32..6) {
        let t = quantum_triple(r, g).unwrap();
        for (i, deg) in t.nominal_degrees().iter().enumerate() {
            let split = deformation_split(&t.gens[i], *deg).unwrap();
            let sum = split.sum().unwrap_or_else(|| AlgebraElement::zero(&Signature::invariant_ring()));
            prop_assert_eq!(sum, t.gens[i].clone());
        }
    }
}
