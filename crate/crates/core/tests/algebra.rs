use proptest::prelude::*;
use smith_core::algebra::*;
use smith_core::corpus::*;
use smith_core::dg::{main_theorem_check, DGAlgebraNU};
use smith_core::smith::{nu_algebra_as_smith, smith_from_augmented};
use smith_core::suite::*;
use smith_core::Field;

fn augmented() -> &'static [(String, AugmentedAlgebra)] {
    static CORPUS: std::sync::OnceLock<Vec<(String, AugmentedAlgebra)>> = std::sync::OnceLock::new();
    CORPUS.get_or_init(augmented_corpus)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn roundtrips_survive_change_of_basis(i in 0usize..22, seed in any::<u64>()) {
        let (_, b) = &augmented()[i];
        let g = random_invertible(&mut rng(seed), b.field(), b.dim());
        let (b2, _) = b.change_basis(&g).unwrap();
        let report = roundtrip_augmented(&b2);
        prop_assert!(report.passed(), "{}", report.porcelain());
        let (a, _) = augmentation_kernel(&b2).unwrap();
        prop_assert_eq!(a.dim() + 1, b2.dim());
        prop_assert_eq!(unitalize(&a).unwrap().dim(), b2.dim());
    }

    #[test]
    fn smith_mutations_are_rejected(i in 0usize..22, seed in any::<u64>()) {
        let (_, b) = &augmented()[i];
        let s = smith_from_augmented(b).unwrap();
        let check = smith_mutation(&s, seed);
        prop_assert!(check.passed, "{:?}", check);
    }

    #[test]
    fn zero_mult_dg_algebras_satisfy_main_theorem(seed in any::<u64>(), p in prop_oneof![Just(0u64), Just(3), Just(5)]) {
        let f = if p == 0 { Field::Rationals } else { Field::PrimeField(p) };
        let a = DGAlgebraNU::zero_mult(random_complex(seed, f, 3, 2));
        let report = main_theorem_check(&a);
        prop_assert!(report.passed(), "{}", report.porcelain());
        prop_assert!(dg_roundtrip(&a).passed());
    }
}

#[test]
fn corpus_batteries_pass() {
    for (name, b) in augmented_corpus() {
        assert!(b.checks().iter().all(|c| c.passed), "{name}");
        let report = smith_augmented(&b);
        assert!(report.passed(), "{name}: {}", report.porcelain());
    }
    for (name, a) in nonunital_corpus() {
        assert!(roundtrip_nonunital(&a).passed(), "{name}");
        assert!(nu_algebra_as_smith(&a).is_ok(), "{name}");
        assert!(dg_degree_zero_agreement(&a).passed(), "{name}");
    }
    for (name, a) in dg_corpus() {
        let report = main_theorem_check(&a);
        assert!(report.passed(), "{name}: {}", report.porcelain());
    }
}

#[test]
fn corpus_has_noncommutative_members() {
    let noncomm = augmented_corpus().iter().filter(|(_, b)| !b.base().is_commutative()).count();
    assert!(noncomm > 0);
}

#[test]
fn upper_triangular_dimension() {
    // n(n+1)/2 matrix units, one fewer after taking the augmentation ideal.
    let b = upper_triangular(Field::Rationals, 3);
    assert_eq!(b.dim(), 6);
    assert_eq!(augmentation_kernel(&b).unwrap().0.dim(), 5);
}

#[test]
fn associativity_violation_is_reported() {
    let f = Field::Rationals;
    // e0·e0 = e1 and e1·e0 = e1 but e0·e1 = 0: (e0 e0) e0 = e1 ≠ 0 = e0 (e0 e0).
    let consts = vec![(0, 0, 1, f.one()), (1, 0, 1, f.one())];
    let a = NonUnitalAlgebra::new(f, 2, consts).unwrap();
    assert!(matches!(a.check_associative(), Err(smith_core::Error::NotAssociative(_))));
    assert!(!a.associativity_violations().is_empty());
}
