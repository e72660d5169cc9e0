//! End-to-end verification chains for the non-formal families: eigenvector
//! relocation, span dimension, the obstruction membership, and the verdict,
//! all in one call per space.

use formality_core::engine::verify::{verify_example_3_1, verify_family};
use formality_core::engine::EngineConfig;

#[test]
fn su9_family_chain() {
    let v = verify_family(3, 3, &EngineConfig::exact()).unwrap();
    assert_eq!(v.space, "SU(9)/SU(3)xSU(3)xSU(3)");
    assert_eq!(v.relocations.len(), 6); // k ∈ {1, 2, 4, 5, 7, 8}
    assert!(v.relocations_ok);
    assert_eq!((v.span_dimension, v.span_expected), (6, 6));
    assert!(v.membership_non_member);
    assert_eq!(v.report.deficiency, 2);
    assert!(v.ok);
}

#[test]
fn su10_family_chain() {
    let v = verify_family(5, 2, &EngineConfig::exact()).unwrap();
    assert_eq!(v.space, "SU(10)/SU(5)xSU(5)");
    assert_eq!(v.membership_basis_degrees, vec![2, 3, 4, 5]);
    assert_eq!(v.membership_target_degree, 6);
    assert!(v.relocations_ok);
    assert_eq!((v.span_dimension, v.span_expected), (8, 8));
    assert!(v.membership_non_member);
    assert_eq!(v.report.deficiency, 1);
    assert!(v.ok);
}

#[test]
fn su8_family_chain() {
    let v = verify_family(4, 2, &EngineConfig::exact()).unwrap();
    assert_eq!(v.space, "SU(8)/SU(4)xSU(4)");
    // Block size 4 is composite: k may share a factor with 4 and still
    // relocate, e.g. k = 2, 6.
    let ks: Vec<u32> = v.relocations.iter().map(|r| r.k).collect();
    assert_eq!(ks, vec![1, 2, 3, 5, 6, 7]);
    assert!(v.relocations_ok);
    assert_eq!((v.span_dimension, v.span_expected), (6, 6));
    assert_eq!(v.membership_basis_degrees, vec![2, 3]);
    assert_eq!(v.membership_target_degree, 5);
    assert!(v.membership_non_member);
    assert_eq!(v.report.deficiency, 1);
    assert!(v.ok);
}

#[test]
fn su12_family_chain() {
    let v = verify_family(4, 3, &EngineConfig::exact()).unwrap();
    assert_eq!(v.space, "SU(12)/SU(4)xSU(4)xSU(4)");
    assert_eq!(v.relocations.len(), 9);
    assert!(v.relocations_ok);
    assert_eq!((v.span_dimension, v.span_expected), (9, 9));
    assert!(v.membership_non_member);
    assert_eq!(v.report.deficiency, 2);
    assert!(v.ok);
}

#[test]
fn example_chains_for_larger_primes() {
    let config = EngineConfig::exact();
    let v5 = verify_example_3_1(5, &config).unwrap();
    assert_eq!(v5.partition, Some(vec![vec![0, 3], vec![1, 2, 4, 5]]));
    assert!(v5.ok);
    let v7 = verify_example_3_1(7, &config).unwrap();
    assert_eq!(
        v7.partition,
        Some(vec![vec![0, 4], vec![1, 2, 3, 5, 6, 7]])
    );
    assert!(v7.ok);
}
