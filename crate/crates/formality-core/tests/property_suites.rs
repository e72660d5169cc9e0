//! Seeded randomized cross-checks tying the independent code paths together.

use formality_core::arith::{rat, Rational};
use formality_core::engine::verify::{all_block_decompositions, GeneratingIdentityCheck};
use formality_core::lie::{block_invariant_presentation, BlockDecomposition};
use formality_core::nakayama::{subalgebra_membership, Membership};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[test]
fn generating_identity_at_random_points_through_su9() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0100);
    for n in 2..=9u32 {
        for blocks in all_block_decompositions(n) {
            let bd = BlockDecomposition::new(n, blocks.clone()).unwrap();
            let check = GeneratingIdentityCheck::new(&bd).unwrap();
            let m = check.m();
            for _ in 0..20 {
                let point: Vec<i64> = (0..m).map(|_| rng.gen_range(-9..=9)).collect();
                assert!(
                    check.holds_at_int(&point).unwrap(),
                    "{blocks:?} at {point:?}"
                );
            }
            for _ in 0..3 {
                let point: Vec<Rational> = (0..m)
                    .map(|_| rat(rng.gen_range(-9..=9), rng.gen_range(1..=7)))
                    .collect();
                assert!(
                    check.holds_at_rational(&point).unwrap(),
                    "{blocks:?} at {point:?}"
                );
            }
        }
    }
}

#[test]
fn membership_certificates_resubstitute_exactly() {
    // Constructed members in the SU(6)/SU(3)×SU(3) invariant ring: any
    // explicit polynomial in the generators must come back as a member whose
    // certificate reproduces it on re-substitution.
    let bd = BlockDecomposition::new(6, vec![3, 3]).unwrap();
    let presentation = block_invariant_presentation(&bd).unwrap();
    let basis: Vec<_> = presentation
        .generators()
        .iter()
        .filter(|(d, _)| *d <= 5)
        .map(|(_, p)| p.clone())
        .collect();
    assert_eq!(basis.len(), 4); // p₂, p₃, p₄, p₅

    let p2p3 = basis[0].mul(&basis[1]).unwrap();
    let targets = vec![
        p2p3.add(&basis[3]).unwrap(),              // p₂p₃ + p₅, degree 5
        basis[0].pow(2).sub(&basis[2]).unwrap(),   // p₂² − p₄, degree 4
        basis[1].pow(2).scale(&rat(3, 7)),         // (3/7)p₃², degree 6
    ];
    for target in targets {
        match subalgebra_membership(&basis, &target).unwrap() {
            Membership::Member(cert) => {
                assert!(cert.verify(&basis, &target).unwrap());
            }
            Membership::NotMember => panic!("constructed member was rejected"),
        }
    }

    // The genuine obstruction stays outside: p₆ needs a new generator.
    let p6 = presentation
        .generators()
        .iter()
        .find(|(d, _)| *d == 6)
        .map(|(_, p)| p.clone())
        .unwrap();
    assert!(!subalgebra_membership(&basis, &p6).unwrap().is_member());
}
