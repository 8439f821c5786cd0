//! Property tests: ring axioms, canonical reduced bases under generator
//! permutation, and submultiplicativity of ideal powers.

use cihom_core::field::FieldSpec;
use cihom_core::ideal::IdealData;
use cihom_core::poly::{Monomial, MonomialOrder, PolyRing, Polynomial};
use cihom_core::ring::RingPresentation;
use proptest::prelude::*;
use std::sync::Arc;

fn ring() -> Arc<PolyRing> {
    PolyRing::new(FieldSpec::Prime(101), &["x", "y"], MonomialOrder::GrevLex).unwrap()
}

/// Homogeneous polynomial of the given degree from raw term data.
fn poly_from(r: &Arc<PolyRing>, degree: u32, raw: &[(u32, i64)]) -> Polynomial {
    let field = r.field;
    let terms: Vec<(Monomial, _)> = raw
        .iter()
        .map(|&(e, c)| {
            let e = e.min(degree);
            (Monomial(vec![e, degree - e]), field.from_int(c))
        })
        .collect();
    Polynomial::from_terms(r, terms)
}

fn arb_poly() -> impl Strategy<Value = Polynomial> {
    (0u32..4, prop::collection::vec((0u32..5, 1i64..101), 0..4))
        .prop_map(|(d, raw)| poly_from(&ring(), d, &raw))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn addition_is_associative_and_commutative(a in arb_poly(), b in arb_poly(), c in arb_poly()) {
        prop_assert!(a.add(&b).add(&c).sub(&a.add(&b.add(&c))).is_zero());
        prop_assert!(a.add(&b).sub(&b.add(&a)).is_zero());
    }

    #[test]
    fn multiplication_distributes(a in arb_poly(), b in arb_poly(), c in arb_poly()) {
        prop_assert!(a.mul(&b).sub(&b.mul(&a)).is_zero());
        let lhs = a.mul(&b.add(&c));
        let rhs = a.mul(&b).add(&a.mul(&c));
        prop_assert!(lhs.sub(&rhs).is_zero());
    }

    #[test]
    fn additive_inverse(a in arb_poly()) {
        prop_assert!(a.sub(&a).is_zero());
    }

    #[test]
    fn reduced_basis_ignores_generator_order(
        gens in prop::collection::vec(arb_poly(), 1..4),
        rot in 0usize..4,
    ) {
        let r = ring();
        let rp = RingPresentation::regular(&r);
        let original = IdealData::new(&r, gens.clone()).unwrap();
        let mut reversed = gens.clone();
        reversed.reverse();
        let rot = rot % gens.len().max(1);
        reversed.rotate_left(rot);
        let permuted = IdealData::new(&r, reversed).unwrap();
        prop_assert_eq!(
            original.canonical_strings(&rp),
            permuted.canonical_strings(&rp)
        );
    }

    #[test]
    fn ideal_powers_are_submultiplicative(
        gens in prop::collection::vec(arb_poly(), 1..3),
        a in 1u32..3,
        b in 1u32..3,
    ) {
        let r = ring();
        let rp = RingPresentation::regular(&r);
        let ideal = IdealData::new(&r, gens).unwrap();
        let ia = ideal.power(&rp, a);
        let ib = ideal.power(&rp, b);
        let iab = ideal.power(&rp, a + b);
        for p in &ia.gens {
            for q in &ib.gens {
                prop_assert!(iab.contains(&rp, &p.mul(q)).unwrap());
            }
        }
    }
}
