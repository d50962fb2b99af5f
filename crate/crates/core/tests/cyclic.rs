mod common;

use common::{assoc_elt, tder};
use kv_core::{assoc_mul, cyc_tder_act, duflo_pattern, tder_bracket, trace, CycElt, DufloTarget};
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn trace_is_cyclic(a in assoc_elt(8, 5), b in assoc_elt(8, 5)) {
        let ab = assoc_mul(&a, &b).unwrap();
        let ba = assoc_mul(&b, &a).unwrap();
        prop_assert_eq!(trace(&ab), trace(&ba));
        prop_assert!(trace(&(&ab - &ba)).is_zero());
    }

    #[test]
    fn derivations_act_as_a_lie_algebra(
        u in tder(6, 1, 3, 3),
        v in tder(6, 1, 3, 3),
        a in assoc_elt(6, 5),
    ) {
        let c = trace(&a);
        let act = |d: &kv_core::TDer, e: &CycElt| cyc_tder_act(d, e).unwrap();
        let lhs = act(&tder_bracket(&u, &v).unwrap(), &c);
        let rhs = &act(&u, &act(&v, &c)) - &act(&v, &act(&u, &c));
        prop_assert_eq!(lhs, rhs);
    }
}

#[test]
fn sum_patterns_are_homogeneous() {
    for k in 2..=10 {
        let p = duflo_pattern(k, DufloTarget::Sum, 10).unwrap();
        assert!(!p.is_zero());
        assert!(p.terms().all(|(word, _)| word.len() == k));
    }
}
