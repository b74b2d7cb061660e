mod common;

use common::field;
use proptest::prelude::*;
use smith_core::corpus::*;
use smith_core::format::*;
use smith_core::Error;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn complex_roundtrip(seed in any::<u64>(), f in field()) {
        let c = random_complex(seed, f, 4, 3);
        prop_assert_eq!(parse_complex_file(&emit_complex(&c)).unwrap(), c);
    }

    #[test]
    fn chain_map_roundtrip(seed in any::<u64>(), f in field()) {
        let m = random_chain_map(seed, f, 4, 3);
        prop_assert_eq!(parse_chain_map_file(&emit_chain_map(&m)).unwrap(), m);
    }

    #[test]
    fn arrows_roundtrip(seed in any::<u64>(), f in field(), n in 1usize..4) {
        let arrows: Vec<_> = (0..n as u64).map(|i| random_arrow(seed.wrapping_add(i), f, 4)).collect();
        prop_assert_eq!(parse_arrow_file(&emit_arrows(&arrows)).unwrap(), arrows);
    }

    #[test]
    fn dg_roundtrip(i in 0usize..72) {
        let (_, a) = dg_corpus().swap_remove(i);
        prop_assert_eq!(parse_dg_file(&emit_dg(&a)).unwrap(), a);
    }
}

#[test]
fn algebra_corpus_roundtrips() {
    for (name, b) in augmented_corpus() {
        match parse_document(&emit_augmented(&b)).unwrap() {
            Document::Augmented(parsed) => assert_eq!(parsed, b, "{name}"),
            other => panic!("{name} parsed as {}", other.kind()),
        }
    }
    for (name, a) in nonunital_corpus() {
        match parse_document(&emit_nonunital(&a)).unwrap() {
            Document::NonUnital(parsed) => assert_eq!(parsed, a, "{name}"),
            other => panic!("{name} parsed as {}", other.kind()),
        }
    }
}

#[test]
fn garbage_is_a_parse_error() {
    for text in ["", "FIELD Q\nDIM x\n", "FIELD FP 4\nDIM 1\n", "FIELD Q\nRANGE 0 0\nDIMS 1 2\n"] {
        assert!(matches!(parse_document(text), Err(Error::Parse { .. })), "{text:?}");
    }
}
