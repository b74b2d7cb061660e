mod common;

use common::field;
use proptest::prelude::*;
use smith_core::arrow::*;
use smith_core::corpus::random_arrow;
use smith_core::linalg::rank;
use smith_core::suite::monoidal_instance;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn monoidal_battery_passes(seed in any::<u64>(), f in field()) {
        let report = monoidal_instance(seed, f, 3);
        prop_assert!(report.passed(), "{}", report.porcelain());
    }

    #[test]
    fn im_is_idempotent(seed in any::<u64>(), f in field()) {
        let a = random_arrow(seed, f, 5);
        prop_assert_eq!(im(&im(&a)), im(&a));
    }

    #[test]
    fn unit_iso_iff_mono(seed in any::<u64>(), f in field()) {
        let a = random_arrow(seed, f, 5);
        prop_assert_eq!(adjunction_unit(&a).is_iso(), a.is_mono());
    }

    #[test]
    fn counit_iso_iff_epi(seed in any::<u64>(), f in field()) {
        let a = random_arrow(seed, f, 5);
        prop_assert_eq!(adjunction_counit(&a).is_iso(), a.is_epi());
    }

    #[test]
    fn cok_and_ker_are_exact(seed in any::<u64>(), f in field()) {
        // Dimensions follow rank-nullity; ker(cok f) recovers the image.
        let a = random_arrow(seed, f, 5);
        let (c, k) = (cok(&a), ker(&a));
        prop_assert!(c.is_epi());
        prop_assert!(k.is_mono());
        let r = rank(a.map());
        prop_assert_eq!((c.dom_dim(), c.cod_dim()), (a.cod_dim(), a.cod_dim() - r));
        prop_assert_eq!((k.dom_dim(), k.cod_dim()), (a.dom_dim() - r, a.dom_dim()));
        prop_assert_eq!(ker(&c).dom_dim(), r);
    }

    #[test]
    fn box_symmetry_is_involutive(s in any::<u64>(), f in field()) {
        let (a, b) = (random_arrow(s, f, 3), random_arrow(s.wrapping_add(1), f, 3));
        let ab = box_symmetry(&a, &b).unwrap();
        let ba = box_symmetry(&b, &a).unwrap();
        prop_assert_eq!(ba.compose(&ab).unwrap(), ArrowMorphism::identity(&ab.src));
    }
}
