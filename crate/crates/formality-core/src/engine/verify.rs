//! Mechanical verification of the non-formality arguments.
//!
//! The deficiency computed by [`super::analyze`] decides formality on its
//! own, but the interesting non-formal cases all follow one argument shape:
//! a distinguished Coxeter eigenvector is relocated into the subgroup's
//! complexified torus, every low generator vanishes on it, and the next
//! generator does not — which pins a subalgebra non-membership and hence a
//! positive deficiency.  The routines here re-check each step of that chain
//! exactly: eigenvector evaluations in `ℚ(ζ_N)`, zero-sum relocation
//! partitions, span dimensions, and certificate-backed membership tests.

use serde::Serialize;

use crate::arith::{is_prime_u64, CyclotomicElem, Rational};
use crate::lie::{
    block_invariant_presentation, coxeter_eigenvector, elementary_symmetric, eval_at_eigenvector,
    restrict, zero_sum_partition, BlockDecomposition, TorusEmbedding,
};
use crate::nakayama::{subalgebra_membership, NakayamaError, RankMode};
use crate::poly::{evaluate_int, monomials_of_degree, Polynomial, VariableSet};

use super::report::{FormalityReport, Verdict};
use super::{analyze, EngineConfig, EngineError, RouteChoice, SpaceSpec};

/// One `SU(n)` row of the Coxeter vanishing check.
#[derive(Debug, Clone, Serialize)]
pub struct CoxeterRow {
    pub n: u32,
    /// `P_j(X₁) = 0` for every `2 ≤ j ≤ n−1`.
    pub lower_all_vanish: bool,
    /// `P_n(X₁) ≠ 0` (the value is `(−1)^{n−1}` in unnormalized coordinates).
    pub top_nonzero: bool,
}

/// Outcome of [`verify_corollary_2_4`].
#[derive(Debug, Clone, Serialize)]
pub struct CoxeterVerification {
    pub n_max: u32,
    pub rows: Vec<CoxeterRow>,
    pub ok: bool,
}

/// Checks, for every `2 ≤ n ≤ n_max`, that the symmetric generators
/// `P₂, …, P_{n−1}` all vanish at the Coxeter eigenvector `X₁` of `SU(n)`
/// while `P_n(X₁) ≠ 0`.  All evaluations are exact in `ℚ(ζ_n)`.
pub fn verify_corollary_2_4(n_max: u32) -> Result<CoxeterVerification, EngineError> {
    if n_max < 2 {
        return Err(EngineError::InvalidSpec {
            reason: format!("Coxeter vanishing check needs n_max >= 2, got {n_max}"),
        });
    }
    let mut rows = Vec::with_capacity((n_max - 1) as usize);
    for n in 2..=n_max {
        let x1 = coxeter_eigenvector(n, 1)?;
        let mut lower_all_vanish = true;
        for j in 2..n {
            let pj = elementary_symmetric(n, j)?;
            if !eval_at_eigenvector(&pj, &x1)?.is_zero() {
                lower_all_vanish = false;
            }
        }
        let pn = elementary_symmetric(n, n)?;
        let top_nonzero = !eval_at_eigenvector(&pn, &x1)?.is_zero();
        rows.push(CoxeterRow {
            n,
            lower_all_vanish,
            top_nonzero,
        });
    }
    let ok = rows.iter().all(|r| r.lower_all_vanish && r.top_nonzero);
    Ok(CoxeterVerification { n_max, rows, ok })
}

/// Outcome of [`verify_example_3_1`].
#[derive(Debug, Clone, Serialize)]
pub struct ExampleVerification {
    pub q: u32,
    /// Ambient rank parameter: the space is `SU(q+1)`.
    pub n: u32,
    /// Zero-sum relocation of `X₁` into `su(q−1) × su(2)` coordinates:
    /// blocks of sizes `q−1` and `2`, each summing to zero (`None` when no
    /// such partition exists).
    pub partition: Option<Vec<Vec<usize>>>,
    /// `P_{q+1} ∉ ⟨⟨P₂, …, P_q⟩⟩` in the full torus ring, decided exactly.
    pub membership_non_member: bool,
    pub ok: bool,
}

/// Verifies the two halves of the `SU(q+1)` obstruction for an odd prime
/// `q`: the eigenvector `X₁` relocates into the torus of `su(q−1) × su(2)`
/// via a zero-sum partition of sizes `[q−1, 2]`, and `P_{q+1}` lies outside
/// the subalgebra generated by `P₂, …, P_q` in the full torus ring.
pub fn verify_example_3_1(
    q: u32,
    config: &EngineConfig,
) -> Result<ExampleVerification, EngineError> {
    if q == 2 || !is_prime_u64(q as u64) {
        return Err(EngineError::InvalidSpec {
            reason: format!("the SU(q+1) obstruction needs an odd prime q, got {q}"),
        });
    }
    let n = q + 1;
    let x1 = coxeter_eigenvector(n, 1)?;
    let partition = zero_sum_partition(&x1, &[q - 1, 2])?;
    if let Some(blocks) = &partition {
        for block in blocks {
            let mut sum = CyclotomicElem::zero(n);
            for &i in block {
                sum = sum.add(&x1.coordinates()[i])?;
            }
            debug_assert!(sum.is_zero(), "partition blocks must sum to zero");
        }
    }

    // Membership in the full torus ring: restrict along SU(n)/T, which just
    // eliminates the last coordinate.
    let embedding = TorusEmbedding::full_torus(n);
    let ps = restrict(&embedding)?;
    let columns = monomials_of_degree(embedding.subtorus(), n).len();
    let limit = config.exact_column_limit();
    if columns > limit {
        return Err(EngineError::Nakayama(NakayamaError::BudgetExceeded {
            degree: n,
            columns,
            limit,
            mode: RankMode::Exact,
        }));
    }
    let basis: Vec<Polynomial<Rational>> = ps[..(q - 1) as usize].to_vec();
    let target = &ps[(q - 1) as usize];
    debug_assert_eq!(target.homogeneous_degree(), Some(n));
    let membership_non_member = !subalgebra_membership(&basis, target)?.is_member();

    let ok = partition.is_some() && membership_non_member;
    Ok(ExampleVerification {
        q,
        n,
        partition,
        membership_non_member,
        ok,
    })
}

/// One eigenvector's relocation evidence for a block family.
#[derive(Debug, Clone, Serialize)]
pub struct RelocationRow {
    pub k: u32,
    /// The residue classes of coordinate positions mod the number of blocks
    /// each sum to zero — the explicit relocation witness.
    pub residue_classes_sum_zero: bool,
    /// The deterministic search also finds a zero-sum partition into blocks
    /// of size `q`.
    pub partition_found: bool,
}

/// Outcome of [`verify_family`].
#[derive(Debug, Clone, Serialize)]
pub struct FamilyVerification {
    pub q: u32,
    pub copies: u32,
    /// Ambient rank parameter: the space is `SU(q·copies)`.
    pub n: u32,
    pub space: String,
    /// One row per eigenvector index `k ∉ qℕ`.
    pub relocations: Vec<RelocationRow>,
    pub relocations_ok: bool,
    /// Rank over `ℚ(ζ_n)` of the span of `{X_k : k ∉ qℕ}`.
    pub span_dimension: usize,
    /// `(q−1) · copies`, the rank of the block subgroup.
    pub span_expected: usize,
    pub span_ok: bool,
    pub membership_basis_degrees: Vec<u32>,
    pub membership_target_degree: u32,
    /// `p_{target} ∉ ⟨⟨p_basis⟩⟩` in the block-invariant ring, decided
    /// exactly.
    pub membership_non_member: bool,
    pub report: FormalityReport,
    pub ok: bool,
}

/// Verifies the non-formality chain for `SU(qc)/SU(q)^c`: every eigenvector
/// `X_k` with `k ∉ qℕ` relocates into the subgroup torus, those
/// eigenvectors span a subspace of dimension `(q−1)c = rk H`, the key
/// subalgebra non-membership holds exactly in the invariant ring, and the
/// deficiency computed along the invariants route is positive.
///
/// `q` must be one of the supported family parameters `3, 5, 7` (odd
/// primes) or `4`; `copies ≥ 2`.
pub fn verify_family(
    q: u32,
    copies: u32,
    config: &EngineConfig,
) -> Result<FamilyVerification, EngineError> {
    if !matches!(q, 3 | 5 | 7 | 4) {
        return Err(EngineError::InvalidSpec {
            reason: format!("supported family block sizes are 3, 5, 7 and 4, got {q}"),
        });
    }
    if copies < 2 {
        return Err(EngineError::InvalidSpec {
            reason: format!("a block family needs at least 2 copies, got {copies}"),
        });
    }
    let n = q * copies;
    let spec = SpaceSpec::from_blocks(n, vec![q; copies as usize])?;

    // (a) Relocation: for every k not divisible by q, the coordinates of X_k
    // split into `copies` zero-sum groups of size q.  The residue classes of
    // positions mod `copies` are such a split, and the generic search must
    // succeed as well.
    let mut relocations = Vec::new();
    let sizes = vec![q; copies as usize];
    for k in 1..n {
        if k % q == 0 {
            continue;
        }
        let xk = coxeter_eigenvector(n, k)?;
        let mut residue_classes_sum_zero = true;
        for t in 0..copies {
            let mut sum = CyclotomicElem::zero(n);
            for i in (0..n).filter(|i| i % copies == t) {
                sum = sum.add(&xk.coordinates()[i as usize])?;
            }
            if !sum.is_zero() {
                residue_classes_sum_zero = false;
            }
        }
        let partition_found = zero_sum_partition(&xk, &sizes)?.is_some();
        relocations.push(RelocationRow {
            k,
            residue_classes_sum_zero,
            partition_found,
        });
    }
    let relocations_ok = relocations
        .iter()
        .all(|r| r.residue_classes_sum_zero && r.partition_found);

    // (b) Span dimension: the relocated eigenvectors, written in the ambient
    // torus coordinates x_1, …, x_{n−1}, span a subspace of rank (q−1)c.
    let span_rows: Vec<Vec<CyclotomicElem>> = (1..n)
        .filter(|k| k % q != 0)
        .map(|k| {
            coxeter_eigenvector(n, k)
                .map(|x| x.coordinates()[..(n - 1) as usize].to_vec())
        })
        .collect::<Result<_, _>>()?;
    let span_dimension = cyclotomic_rank(span_rows)?;
    let span_expected = ((q - 1) * copies) as usize;
    let span_ok = span_dimension == span_expected;

    // (c) The obstruction membership, exactly, in the invariant ring.
    let bd = BlockDecomposition::new(n, vec![q; copies as usize])?;
    let presentation = block_invariant_presentation(&bd)?;
    let membership_basis_degrees: Vec<u32> = if q == 4 {
        vec![2, 3]
    } else {
        (2..=q).collect()
    };
    let membership_target_degree = q + 1;
    let columns = monomials_of_degree(presentation.ring(), membership_target_degree).len();
    let limit = config.exact_column_limit();
    if columns > limit {
        return Err(EngineError::Nakayama(NakayamaError::BudgetExceeded {
            degree: membership_target_degree,
            columns,
            limit,
            mode: RankMode::Exact,
        }));
    }
    let pick = |degree: u32| -> Option<&Polynomial<Rational>> {
        presentation
            .generators()
            .iter()
            .find(|(d, _)| *d == degree)
            .map(|(_, p)| p)
    };
    let basis: Vec<Polynomial<Rational>> = membership_basis_degrees
        .iter()
        .filter_map(|&d| pick(d).cloned())
        .collect();
    let target = pick(membership_target_degree).ok_or_else(|| EngineError::InvalidSpec {
        reason: format!(
            "restriction p_{membership_target_degree} vanishes identically; no obstruction \
             to test"
        ),
    })?;
    let membership_non_member = !subalgebra_membership(&basis, target)?.is_member();

    // (d) The deficiency itself, along the invariants route.
    let report = analyze(&spec, RouteChoice::Invariants, config)?;
    let non_formal = report.deficiency >= 1 && report.verdict == Verdict::NonFormal;

    let ok = relocations_ok && span_ok && membership_non_member && non_formal;
    Ok(FamilyVerification {
        q,
        copies,
        n,
        space: spec.label(),
        relocations,
        relocations_ok,
        span_dimension,
        span_expected,
        span_ok,
        membership_basis_degrees,
        membership_target_degree,
        membership_non_member,
        report,
        ok,
    })
}

/// Rank of a dense matrix over `ℚ(ζ_N)` by Gaussian elimination.  The
/// cyclotomic polynomial is irreducible, so every nonzero pivot is
/// invertible.
fn cyclotomic_rank(mut mat: Vec<Vec<CyclotomicElem>>) -> Result<usize, EngineError> {
    let cols = mat.first().map(Vec::len).unwrap_or(0);
    let mut rank = 0;
    for col in 0..cols {
        let Some(pivot) = (rank..mat.len()).find(|&r| !mat[r][col].is_zero()) else {
            continue;
        };
        mat.swap(rank, pivot);
        let inv = mat[rank][col].inv()?;
        for r in rank + 1..mat.len() {
            if mat[r][col].is_zero() {
                continue;
            }
            let factor = mat[r][col].mul(&inv)?;
            for c in col..cols {
                let delta = factor.mul(&mat[rank][c])?;
                mat[r][c] = mat[r][c].sub(&delta)?;
            }
        }
        rank += 1;
        if rank == mat.len() {
            break;
        }
    }
    Ok(rank)
}

/// All block decompositions of `SU(n)` whose subgroup has positive rank:
/// partitions of `n` in weakly decreasing part order, excluding `1+…+1`.
pub fn all_block_decompositions(n: u32) -> Vec<Vec<u32>> {
    fn recurse(left: u32, max: u32, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if left == 0 {
            out.push(prefix.clone());
            return;
        }
        for part in (1..=max.min(left)).rev() {
            prefix.push(part);
            recurse(left - part, part, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    recurse(n, n, &mut Vec::new(), &mut out);
    out.retain(|p| p.iter().any(|&q| q >= 2));
    out
}

/// The generating identity `∏ᵢ (1 + xᵢ t) = ∏_blocks (1 + Σ_a e_a t^a)`
/// specialised to a block decomposition, prepared for cheap point checks.
///
/// Both sides are computed by independent code paths — the torus
/// restrictions in the subtorus variables `s`, and the invariant
/// presentation in the block-invariant variables `a` — so evaluating both at
/// corresponding points cross-checks them coefficient by coefficient.
pub struct GeneratingIdentityCheck {
    blocks: Vec<u32>,
    embedding: TorusEmbedding,
    /// `p_j` in the subtorus variables, `j = 2, …, n`.
    restrictions: Vec<Polynomial<Rational>>,
    /// `p_j` in the invariant variables, `j = 2, …, n` (zero where the
    /// restriction vanishes identically).
    invariants: Vec<Polynomial<Rational>>,
    invariant_ring: VariableSet,
}

impl GeneratingIdentityCheck {
    pub fn new(bd: &BlockDecomposition) -> Result<Self, EngineError> {
        let embedding = crate::lie::block_embedding(bd);
        let restrictions = restrict(&embedding)?;
        let presentation = block_invariant_presentation(bd)?;
        let invariant_ring = presentation.ring().clone();
        let mut invariants =
            vec![Polynomial::zero(&invariant_ring); (bd.n() - 1) as usize];
        for (j, p) in presentation.generators() {
            invariants[(*j - 2) as usize] = p.clone();
        }
        Ok(Self {
            blocks: bd.blocks().to_vec(),
            embedding,
            restrictions,
            invariants,
            invariant_ring,
        })
    }

    pub fn m(&self) -> usize {
        self.embedding.subtorus().len()
    }

    /// Checks the identity at an integer subtorus point.  Uses checked
    /// `i128` arithmetic and falls back to exact rationals on overflow.
    pub fn holds_at_int(&self, point: &[i64]) -> Result<bool, EngineError> {
        self.check_len(point.len())?;
        let ints: Vec<i128> = point.iter().map(|&v| v as i128).collect();
        if let Some(answer) = self.try_int(&ints) {
            return Ok(answer);
        }
        let rationals: Vec<Rational> = point.iter().map(|&v| crate::arith::rat_int(v)).collect();
        self.holds_at_rational(&rationals)
    }

    /// Checks the identity at an arbitrary rational subtorus point, exactly.
    pub fn holds_at_rational(&self, point: &[Rational]) -> Result<bool, EngineError> {
        self.check_len(point.len())?;
        let xs: Vec<Rational> = self
            .embedding
            .images()
            .iter()
            .map(|image| image.evaluate(point))
            .collect::<Result<_, _>>()?;
        let mut a_point = Vec::with_capacity(self.invariant_ring.len());
        let mut offset = 0usize;
        for &q in &self.blocks {
            if q == 1 {
                offset += 1;
                continue;
            }
            let e = rational_elementary(&xs[offset..offset + q as usize], q);
            a_point.extend_from_slice(&e[2..=q as usize]);
            offset += q as usize;
        }
        for (restriction, invariant) in self.restrictions.iter().zip(&self.invariants) {
            if invariant.evaluate(&a_point)? != restriction.evaluate(point)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    fn check_len(&self, got: usize) -> Result<(), EngineError> {
        let expected = self.m();
        if got != expected {
            return Err(EngineError::InvalidSpec {
                reason: format!("expected a point with {expected} coordinates, got {got}"),
            });
        }
        Ok(())
    }

    /// `None` when any value leaves `i128` or a coefficient is non-integral.
    fn try_int(&self, point: &[i128]) -> Option<bool> {
        let xs: Vec<i128> = self
            .embedding
            .images()
            .iter()
            .map(|image| evaluate_int(image, point))
            .collect::<Option<_>>()?;
        let mut a_point = Vec::with_capacity(self.invariant_ring.len());
        let mut offset = 0usize;
        for &q in &self.blocks {
            if q == 1 {
                offset += 1;
                continue;
            }
            let e = int_elementary(&xs[offset..offset + q as usize], q)?;
            a_point.extend_from_slice(&e[2..=q as usize]);
            offset += q as usize;
        }
        for (restriction, invariant) in self.restrictions.iter().zip(&self.invariants) {
            let lhs = evaluate_int(invariant, &a_point)?;
            let rhs = evaluate_int(restriction, point)?;
            if lhs != rhs {
                return Some(false);
            }
        }
        Some(true)
    }
}

/// Elementary symmetric values `e_0, …, e_top` of the given numbers, by the
/// product recurrence in checked `i128` arithmetic.
fn int_elementary(values: &[i128], top: u32) -> Option<Vec<i128>> {
    let mut e = vec![0i128; top as usize + 1];
    e[0] = 1;
    for &x in values {
        for a in (1..e.len()).rev() {
            let stepped = e[a - 1].checked_mul(x)?;
            e[a] = e[a].checked_add(stepped)?;
        }
    }
    Some(e)
}

/// Exact counterpart of [`int_elementary`].
fn rational_elementary(values: &[Rational], top: u32) -> Vec<Rational> {
    use num_traits::Zero;
    let mut e = vec![Rational::zero(); top as usize + 1];
    e[0] = Rational::from_integer(1.into());
    for x in values {
        for a in (1..e.len()).rev() {
            let stepped = &e[a - 1] * x;
            e[a] += stepped;
        }
    }
    e
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;

    #[test]
    fn coxeter_vanishing_small_ranks() {
        let v = verify_corollary_2_4(8).unwrap();
        assert_eq!(v.rows.len(), 7);
        assert!(v.ok);
        for (row, n) in v.rows.iter().zip(2u32..) {
            assert_eq!(row.n, n);
            assert!(row.lower_all_vanish, "SU({n})");
            assert!(row.top_nonzero, "SU({n})");
        }
        assert!(matches!(
            verify_corollary_2_4(1),
            Err(EngineError::InvalidSpec { .. })
        ));
    }

    #[test]
    fn example_needs_an_odd_prime() {
        for q in [0, 1, 2, 4, 6, 9] {
            assert!(
                matches!(
                    verify_example_3_1(q, &EngineConfig::exact()),
                    Err(EngineError::InvalidSpec { .. })
                ),
                "q = {q} must be rejected"
            );
        }
    }

    #[test]
    fn example_q3_full_chain() {
        let v = verify_example_3_1(3, &EngineConfig::exact()).unwrap();
        assert_eq!((v.q, v.n), (3, 4));
        assert_eq!(v.partition, Some(vec![vec![0, 2], vec![1, 3]]));
        assert!(v.membership_non_member);
        assert!(v.ok);
    }

    #[test]
    fn example_membership_budget_is_enforced() {
        let config = EngineConfig {
            max_columns: Some(3),
            ..EngineConfig::exact()
        };
        let err = verify_example_3_1(3, &config).unwrap_err();
        match err {
            EngineError::Nakayama(NakayamaError::BudgetExceeded {
                degree, columns, limit, ..
            }) => {
                assert_eq!(degree, 4);
                assert_eq!(columns, 15); // monomials of degree 4 in 3 variables
                assert_eq!(limit, 3);
            }
            other => panic!("expected a budget refusal, got {other:?}"),
        }
    }

    #[test]
    fn family_q3_two_copies_full_chain() {
        let v = verify_family(3, 2, &EngineConfig::exact()).unwrap();
        assert_eq!(v.space, "SU(6)/SU(3)xSU(3)");
        let ks: Vec<u32> = v.relocations.iter().map(|r| r.k).collect();
        assert_eq!(ks, vec![1, 2, 4, 5]);
        assert!(v.relocations_ok);
        assert_eq!((v.span_dimension, v.span_expected), (4, 4));
        assert_eq!(v.membership_basis_degrees, vec![2, 3]);
        assert_eq!(v.membership_target_degree, 4);
        assert!(v.membership_non_member);
        assert_eq!(v.report.deficiency, 1);
        assert!(v.ok);
    }

    #[test]
    fn family_parameter_validation() {
        let config = EngineConfig::exact();
        assert!(matches!(
            verify_family(6, 2, &config),
            Err(EngineError::InvalidSpec { .. })
        ));
        assert!(matches!(
            verify_family(3, 1, &config),
            Err(EngineError::InvalidSpec { .. })
        ));
    }

    #[test]
    fn decomposition_enumeration_counts() {
        // Partitions of n minus the all-ones partition.
        assert_eq!(all_block_decompositions(2), vec![vec![2]]);
        assert_eq!(all_block_decompositions(4).len(), 4);
        assert_eq!(all_block_decompositions(8).len(), 21);
        assert_eq!(all_block_decompositions(12).len(), 76);
        let total: usize = (2..=12).map(|n| all_block_decompositions(n).len()).sum();
        assert_eq!(total, 259);
        for bd in all_block_decompositions(9) {
            assert_eq!(bd.iter().sum::<u32>(), 9);
            assert!(bd.windows(2).all(|w| w[0] >= w[1]), "sorted: {bd:?}");
            assert!(bd.iter().any(|&q| q >= 2));
        }
    }

    #[test]
    fn generating_identity_at_points() {
        for blocks in [vec![2, 2], vec![3, 3], vec![2, 1, 2], vec![4, 2]] {
            let n = blocks.iter().sum::<u32>();
            let bd = BlockDecomposition::new(n, blocks.clone()).unwrap();
            let check = GeneratingIdentityCheck::new(&bd).unwrap();
            let m = check.m();
            assert!(check.holds_at_int(&vec![0; m]).unwrap(), "{blocks:?} at 0");
            let point: Vec<i64> = (0..m as i64).map(|i| 3 * i - 4).collect();
            assert!(check.holds_at_int(&point).unwrap(), "{blocks:?} at {point:?}");
            let rationals: Vec<Rational> =
                (0..m as i64).map(|i| rat(2 * i + 1, i + 2)).collect();
            assert!(
                check.holds_at_rational(&rationals).unwrap(),
                "{blocks:?} at rational point"
            );
        }
    }

    #[test]
    fn generating_identity_rejects_wrong_arity() {
        let bd = BlockDecomposition::new(4, vec![2, 2]).unwrap();
        let check = GeneratingIdentityCheck::new(&bd).unwrap();
        assert!(matches!(
            check.holds_at_int(&[1, 2, 3]),
            Err(EngineError::InvalidSpec { .. })
        ));
    }

    #[test]
    fn elementary_recurrences_agree() {
        let values = [3i128, -1, 4, -1, 5];
        let ints = int_elementary(&values, 5).unwrap();
        assert_eq!(ints[0], 1);
        assert_eq!(ints[1], 3 - 1 + 4 - 1 + 5);
        assert_eq!(ints[5], 3 * -1 * 4 * -1 * 5);
        let rats: Vec<Rational> = values.iter().map(|&v| rat_int_128(v)).collect();
        let exact = rational_elementary(&rats, 5);
        for (a, b) in ints.iter().zip(&exact) {
            assert_eq!(rat_int_128(*a), *b);
        }
        // Overflow is reported, not wrapped.
        assert!(int_elementary(&[i128::MAX, 2], 2).is_none());
    }

    fn rat_int_128(v: i128) -> Rational {
        Rational::from_integer(v.into())
    }
}
