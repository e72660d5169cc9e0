use super::*;
use crate::arith::rat_int;
use crate::poly::parse_polynomial;

fn parse(text: &str, vars: &VariableSet) -> Polynomial<Rational> {
    parse_polynomial(text, vars).unwrap()
}

fn images_as_strings(embedding: &TorusEmbedding) -> Vec<String> {
    embedding.images().iter().map(|p| p.to_string()).collect()
}

#[test]
fn block_decomposition_validation() {
    let bd = BlockDecomposition::new(6, vec![3, 3]).unwrap();
    assert_eq!(bd.rank(), 4);
    assert_eq!(bd.subgroup_label(), "SU(3)xSU(3)");
    assert_eq!(BlockDecomposition::new(4, vec![2, 2]).unwrap().rank(), 2);
    assert_eq!(BlockDecomposition::new(3, vec![2, 1]).unwrap().rank(), 1);
    assert_eq!(BlockDecomposition::new(12, vec![4, 4, 4]).unwrap().rank(), 9);
    assert!(matches!(
        BlockDecomposition::new(6, vec![3, 2]),
        Err(LieError::BlockSumMismatch { sum: 5, n: 6, .. })
    ));
    assert!(matches!(
        BlockDecomposition::new(2, vec![]),
        Err(LieError::EmptyBlocks)
    ));
    assert!(matches!(
        BlockDecomposition::new(2, vec![2, 0]),
        Err(LieError::EmptyBlocks)
    ));
}

#[test]
fn elementary_symmetric_examples() {
    let e2 = elementary_symmetric(3, 2).unwrap();
    assert_eq!(e2.to_string(), "x1*x2 + x1*x3 + x2*x3");
    assert_eq!(elementary_symmetric(5, 0).unwrap().to_string(), "1");
    assert_eq!(elementary_symmetric(4, 4).unwrap().to_string(), "x1*x2*x3*x4");
    assert!(matches!(
        elementary_symmetric(3, 4),
        Err(LieError::DegreeOutOfRange { j: 4, n: 3 })
    ));
    // e_j in n variables has C(n, j) terms.
    for n in 1..=8u32 {
        let mut binom = 1u64;
        for j in 0..=n {
            let e = elementary_symmetric(n, j).unwrap();
            assert_eq!(e.num_terms() as u64, binom, "C({n},{j})");
            assert_eq!(e.homogeneous_degree(), if j == 0 { Some(0) } else { Some(j) });
            binom = binom * (n - j) as u64 / (j + 1) as u64;
        }
    }
}

#[test]
fn block_embedding_examples() {
    let e22 = block_embedding(&BlockDecomposition::new(4, vec![2, 2]).unwrap());
    assert_eq!(images_as_strings(&e22), vec!["s1", "-s1", "s2", "-s2"]);
    assert_eq!(e22.m(), 2);

    let e33 = block_embedding(&BlockDecomposition::new(6, vec![3, 3]).unwrap());
    assert_eq!(
        images_as_strings(&e33),
        vec!["s1", "s2", "-s1 - s2", "s3", "s4", "-s3 - s4"]
    );

    let e21 = block_embedding(&BlockDecomposition::new(3, vec![2, 1]).unwrap());
    assert_eq!(images_as_strings(&e21), vec!["s1", "-s1", "0"]);
    assert_eq!(e21.m(), 1);
}

#[test]
fn full_torus_embedding() {
    let t = TorusEmbedding::full_torus(4);
    assert_eq!(t.m(), 3);
    assert_eq!(images_as_strings(&t), vec!["s1", "s2", "s3", "-s1 - s2 - s3"]);
    let matrix = t.matrix();
    assert_eq!(matrix.len(), 4);
    assert_eq!(matrix[1][1], rat_int(1));
    assert_eq!(matrix[3], vec![rat_int(-1), rat_int(-1), rat_int(-1)]);
}

#[test]
fn embedding_validation() {
    let st = VariableSet::standard(vec!["s1", "s2"]);
    let s1 = Polynomial::variable(&st, 0).unwrap();
    let s2 = Polynomial::variable(&st, 1).unwrap();
    // Images that do not sum to zero violate the trace constraint.
    assert!(matches!(
        TorusEmbedding::new(3, st.clone(), vec![s1.clone(), s2.clone(), s1.clone()]),
        Err(LieError::TraceNonZero)
    ));
    // A subtorus variable that never appears makes the matrix rank-deficient.
    assert!(matches!(
        TorusEmbedding::new(2, st.clone(), vec![s1.clone(), s1.neg()]),
        Err(LieError::DeficientRank { rank: 1, m: 2 })
    ));
    // Wrong number of ambient coordinates.
    assert!(matches!(
        TorusEmbedding::new(3, st.clone(), vec![s1.clone(), s1.neg()]),
        Err(LieError::AmbientCount { n: 3, got: 2 })
    ));
    // Rational coefficients are fine.
    let half = s1.scale(&crate::arith::rat(1, 2));
    let rest = half.add(&s2).unwrap().neg();
    let emb = TorusEmbedding::new(3, st, vec![half, s2.clone(), rest]).unwrap();
    assert_eq!(emb.m(), 2);
}

#[test]
fn restrict_su4_frozen() {
    let emb = block_embedding(&BlockDecomposition::new(4, vec![2, 2]).unwrap());
    let ps = restrict(&emb).unwrap();
    let texts: Vec<String> = ps.iter().map(|p| p.to_string()).collect();
    assert_eq!(texts, vec!["-s1^2 - s2^2", "0", "s1^2*s2^2"]);
}

#[test]
fn restrict_full_torus_all_nonzero() {
    for n in [4u32, 5] {
        let ps = restrict(&TorusEmbedding::full_torus(n)).unwrap();
        for (j, p) in (2..=n).zip(&ps) {
            assert!(!p.is_zero(), "p_{j} of the full torus must not vanish");
            assert_eq!(p.homogeneous_degree(), Some(j));
        }
    }
}

#[test]
fn restrict_su6_block_product() {
    let emb = block_embedding(&BlockDecomposition::new(6, vec![3, 3]).unwrap());
    let ps = restrict(&emb).unwrap();
    let st = emb.subtorus();
    // e₂(s₁,s₂,−s₁−s₂)·e₂(s₃,s₄,−s₃−s₄) = (−s₁²−s₁s₂−s₂²)(−s₃²−s₃s₄−s₄²).
    let q12 = parse("-s1^2 - s1*s2 - s2^2", st);
    let q34 = parse("-s3^2 - s3*s4 - s4^2", st);
    assert_eq!(ps[2], q12.mul(&q34).unwrap());
}

/// Independent cross-check of `restrict`: substituting the images into each
/// elementary symmetric polynomial one at a time must give the same
/// restrictions as the product-series computation.
#[test]
fn restrict_matches_direct_substitution() {
    fn decompositions(n: u32) -> Vec<Vec<u32>> {
        fn go(n: u32, max: u32) -> Vec<Vec<u32>> {
            if n == 0 {
                return vec![Vec::new()];
            }
            let mut out = Vec::new();
            for q in (1..=n.min(max)).rev() {
                for mut rest in go(n - q, q) {
                    let mut d = vec![q];
                    d.append(&mut rest);
                    out.push(d);
                }
            }
            out
        }
        go(n, n)
    }
    for n in 2..=7u32 {
        for blocks in decompositions(n) {
            let bd = BlockDecomposition::new(n, blocks).unwrap();
            if bd.rank() == 0 {
                continue;
            }
            let emb = block_embedding(&bd);
            let ps = restrict(&emb).unwrap();
            for j in 2..=n {
                let direct = elementary_symmetric(n, j)
                    .unwrap()
                    .linear_substitute(emb.subtorus(), emb.images())
                    .unwrap();
                assert_eq!(
                    ps[(j - 2) as usize],
                    direct,
                    "p_{j} for blocks {:?}",
                    bd.blocks()
                );
            }
        }
    }
}

#[test]
fn block_invariant_presentation_2_2() {
    let pres =
        block_invariant_presentation(&BlockDecomposition::new(4, vec![2, 2]).unwrap()).unwrap();
    assert_eq!(pres.ring().names(), &["a2".to_string(), "b2".to_string()]);
    assert_eq!(pres.ring().weights(), &[2, 2]);
    let gens: Vec<(u32, String)> = pres
        .generators()
        .iter()
        .map(|(d, p)| (*d, p.to_string()))
        .collect();
    assert_eq!(gens, vec![(2, "a2 + b2".to_string()), (4, "a2*b2".to_string())]);
    assert_eq!(pres.dropped_degrees(), &[3]);
}

#[test]
fn block_invariant_presentation_3_3() {
    let pres =
        block_invariant_presentation(&BlockDecomposition::new(6, vec![3, 3]).unwrap()).unwrap();
    assert_eq!(
        pres.ring().names(),
        &["a2".to_string(), "a3".to_string(), "b2".to_string(), "b3".to_string()]
    );
    assert_eq!(pres.ring().weights(), &[2, 3, 2, 3]);
    let gens: Vec<(u32, String)> = pres
        .generators()
        .iter()
        .map(|(d, p)| (*d, p.to_string()))
        .collect();
    assert_eq!(
        gens,
        vec![
            (2, "a2 + b2".to_string()),
            (3, "a3 + b3".to_string()),
            (4, "a2*b2".to_string()),
            (5, "a2*b3 + a3*b2".to_string()),
            (6, "a3*b3".to_string()),
        ]
    );
    assert!(pres.dropped_degrees().is_empty());
}

#[test]
fn block_invariant_presentation_full_group() {
    // A single block [n]: p_j is the j-th generator itself.
    let pres =
        block_invariant_presentation(&BlockDecomposition::new(5, vec![5]).unwrap()).unwrap();
    assert_eq!(
        pres.ring().names(),
        &["a2".to_string(), "a3".to_string(), "a4".to_string(), "a5".to_string()]
    );
    let gens: Vec<(u32, String)> = pres
        .generators()
        .iter()
        .map(|(d, p)| (*d, p.to_string()))
        .collect();
    assert_eq!(
        gens,
        vec![
            (2, "a2".to_string()),
            (3, "a3".to_string()),
            (4, "a4".to_string()),
            (5, "a5".to_string()),
        ]
    );
    // Size-1 blocks contribute nothing: [2,1,2] looks like [2,2] with
    // consecutive letters.
    let pres212 =
        block_invariant_presentation(&BlockDecomposition::new(5, vec![2, 1, 2]).unwrap()).unwrap();
    assert_eq!(pres212.ring().names(), &["a2".to_string(), "b2".to_string()]);
}

#[test]
fn coxeter_eigenvector_examples() {
    let x1 = coxeter_eigenvector(4, 1).unwrap();
    let z = |k| CyclotomicElem::root_power(4, k);
    assert_eq!(x1.coordinates(), &[z(3), z(2), z(1), CyclotomicElem::one(4)]);
    let x2 = coxeter_eigenvector(4, 2).unwrap();
    let minus_one = CyclotomicElem::from_rational(4, rat_int(-1));
    let one = CyclotomicElem::one(4);
    assert_eq!(
        x2.coordinates(),
        &[minus_one.clone(), one.clone(), minus_one, one]
    );
    assert!(matches!(
        coxeter_eigenvector(4, 0),
        Err(LieError::EigenvectorIndex { .. })
    ));
    assert!(matches!(
        coxeter_eigenvector(4, 4),
        Err(LieError::EigenvectorIndex { .. })
    ));
}

/// Cyclically shifting the coordinates of `X_k` multiplies the vector by
/// `ζₙ^k`, exactly, for all `n ≤ 16`.
#[test]
fn eigenvalue_property() {
    for n in 2..=16u32 {
        for k in 1..n {
            let x = coxeter_eigenvector(n, k).unwrap();
            let shifted = x.cyclic_shift();
            let scale = CyclotomicElem::root_power(n, k as i64);
            for (s, c) in shifted.iter().zip(x.coordinates()) {
                assert_eq!(s, &c.mul(&scale).unwrap(), "n={n} k={k}");
            }
        }
    }
}

/// Coordinates of every `X_k` sum to zero (the eigenvector lies in the
/// trace-zero torus).
#[test]
fn coordinates_sum_to_zero() {
    for n in 2..=16u32 {
        for k in 1..n {
            let x = coxeter_eigenvector(n, k).unwrap();
            let sum = CyclotomicElem::sum(n, x.coordinates().iter()).unwrap();
            assert!(sum.is_zero(), "n={n} k={k}");
        }
    }
}

#[test]
fn eval_at_eigenvector_examples() {
    let x1 = coxeter_eigenvector(4, 1).unwrap();
    let p2 = elementary_symmetric(4, 2).unwrap();
    assert!(eval_at_eigenvector(&p2, &x1).unwrap().is_zero());
    let p4 = elementary_symmetric(4, 4).unwrap();
    assert_eq!(
        eval_at_eigenvector(&p4, &x1).unwrap(),
        CyclotomicElem::from_rational(4, rat_int(-1))
    );
    // P₂(X₁) = 0 for every n up to 12.
    for n in 3..=12u32 {
        let x = coxeter_eigenvector(n, 1).unwrap();
        let e2 = elementary_symmetric(n, 2).unwrap();
        assert!(eval_at_eigenvector(&e2, &x).unwrap().is_zero(), "n={n}");
    }
    // Non-homogeneous polynomials are rejected.
    let vars = p2.vars().clone();
    let bad = p2.add(&Polynomial::variable(&vars, 0).unwrap()).unwrap();
    assert!(matches!(
        eval_at_eigenvector(&bad, &x1),
        Err(LieError::Poly(PolyError::NotHomogeneous))
    ));
    // Wrong arity is rejected.
    let e2_of_3 = elementary_symmetric(3, 2).unwrap();
    assert!(matches!(
        eval_at_eigenvector(&e2_of_3, &x1),
        Err(LieError::VariableCount { expected: 4, got: 3 })
    ));
}

#[test]
fn zero_sum_partition_spec_examples() {
    // X₁ of SU(4), sizes [2,2]: indices {0,2} carry 1+ζ₄² = 0 and {1,3}
    // carry ζ₄+ζ₄³ = 0.  Canonical search order puts the block of index 0
    // first.
    let x1 = coxeter_eigenvector(4, 1).unwrap();
    assert_eq!(
        zero_sum_partition(&x1, &[2, 2]).unwrap(),
        Some(vec![vec![0, 2], vec![1, 3]])
    );
    // X₁ of SU(6), sizes [3,3]: the residue classes mod 2.
    let x16 = coxeter_eigenvector(6, 1).unwrap();
    assert_eq!(
        zero_sum_partition(&x16, &[3, 3]).unwrap(),
        Some(vec![vec![0, 2, 4], vec![1, 3, 5]])
    );
    // X₁ of SU(3), sizes [2,1]: no two distinct cube roots of unity sum to 0.
    let x13 = coxeter_eigenvector(3, 1).unwrap();
    assert_eq!(zero_sum_partition(&x13, &[2, 1]).unwrap(), None);
    // Size mismatch is an error.
    assert!(matches!(
        zero_sum_partition(&x13, &[2, 2]),
        Err(LieError::PartitionSizes { .. })
    ));
}

#[test]
fn zero_sum_partition_odd_prime_cases() {
    // q = 5: the six 6th roots of unity split into a zero-sum pair and a
    // zero-sum quadruple.
    let x = coxeter_eigenvector(6, 1).unwrap();
    assert_eq!(
        zero_sum_partition(&x, &[4, 2]).unwrap(),
        Some(vec![vec![0, 3], vec![1, 2, 4, 5]])
    );
    // q = 7: block sizes [6, 2] for the eight 8th roots of unity.
    let x8 = coxeter_eigenvector(8, 1).unwrap();
    assert_eq!(
        zero_sum_partition(&x8, &[6, 2]).unwrap(),
        Some(vec![vec![0, 4], vec![1, 2, 3, 5, 6, 7]])
    );
}

/// Residues-mod-n relocation for the block family `SU(qn)/SU(q)ⁿ`: for every
/// `k` that is not a multiple of `q`, each residue class mod `n` has
/// coordinate sum zero; for `k` a multiple of `q`, at least one class fails.
#[test]
fn coset_identity_for_families() {
    for (q, copies) in [(3u32, 2u32), (3, 3), (5, 2), (5, 3)] {
        let n = q * copies;
        for k in 1..n {
            let x = coxeter_eigenvector(n, k).unwrap();
            let mut all_zero = true;
            for t in 0..copies {
                let class: Vec<&CyclotomicElem> = (0..n)
                    .filter(|i| i % copies == t)
                    .map(|i| &x.coordinates()[i as usize])
                    .collect();
                assert_eq!(class.len() as u32, q);
                let sum = CyclotomicElem::sum(n, class.into_iter()).unwrap();
                if !sum.is_zero() {
                    all_zero = false;
                }
            }
            assert_eq!(
                all_zero,
                k % q != 0,
                "q={q} copies={copies} k={k}: residue partition"
            );
            // The search also finds some zero-sum partition exactly when the
            // residue certificate exists (skip the largest case for speed).
            if k % q != 0 && n <= 10 {
                let sizes = vec![q; copies as usize];
                assert!(zero_sum_partition(&x, &sizes).unwrap().is_some());
            }
        }
    }
}
