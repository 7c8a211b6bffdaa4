//! The closed-form ring agrees with the group ring on random combinations.

use proptest::prelude::*;
use supclass_core::groupring::{class_sum, convolve, decompose_support, GroupAlgebraElement};
use supclass_core::scring::{sc_mul, sigma_tau, Constants};
use supclass_core::{GroupKind, MatrixGroup, SupportClass, SupportVector};

fn lift(g: &std::sync::Arc<MatrixGroup>, v: &SupportVector<i64>) -> GroupAlgebraElement {
    let mut acc = GroupAlgebraElement::zero(g);
    for (c, &k) in v.iter() {
        acc = acc
            .add(&class_sum(g, c).unwrap().scale(k).unwrap())
            .unwrap();
    }
    acc
}

fn coeffs() -> impl Strategy<Value = SupportVector<i64>> {
    prop::array::uniform7(-3i64..=3).prop_map(SupportVector)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn product_matches_group_ring(q in prop::sample::select(vec![3u32, 4, 5]), u in coeffs(), v in coeffs()) {
        let g = MatrixGroup::new(GroupKind::Sl2, q).unwrap();
        let brute = decompose_support(&convolve(&lift(&g, &u), &lift(&g, &v)).unwrap()).unwrap();
        let closed = Constants::at(q).unwrap().mul_int(&u, &v).unwrap();
        prop_assert_eq!(brute, closed);
    }

    #[test]
    fn sigma_tau_is_a_ring_automorphism(q in prop::sample::select(vec![3u32, 5, 7, 8]), u in coeffs(), v in coeffs()) {
        let (u, v) = (u.to_rational(), v.to_rational());
        let lhs = sigma_tau(&sc_mul(&u, &v, q).unwrap());
        let rhs = sc_mul(&sigma_tau(&u), &sigma_tau(&v), q).unwrap();
        prop_assert_eq!(lhs, rhs);
    }
}

#[test]
fn support_classes_partition_sl2() {
    for q in [3, 4, 5, 7, 8, 9] {
        let g = MatrixGroup::new(GroupKind::Sl2, q).unwrap();
        let total: usize = SupportClass::ALL
            .iter()
            .map(|&c| g.class_members(c).len())
            .sum();
        assert_eq!(total, g.order());
    }
}
