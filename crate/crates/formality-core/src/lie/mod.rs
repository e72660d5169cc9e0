//! Type-A Lie-theoretic layer: elementary symmetric polynomials, block
//! subgroup embeddings and their restriction maps, Coxeter eigenvectors, and
//! zero-sum partition search.
//!
//! Conventions, fixed once so all outputs are canonical:
//!
//! * The maximal torus of `SU(n)` carries coordinates `x_1, …, x_n` subject
//!   to `x_1 + … + x_n = 0`; the trace-zero constraint is realized by
//!   eliminating the *last* coordinate of each block.
//! * Coxeter eigenvectors are stored unnormalized (the usual `1/√n` factor
//!   is dropped): every polynomial we evaluate at them is homogeneous, so
//!   vanishing is scale-invariant, and the coordinates stay inside `ℚ(ζ_n)`.

use crate::arith::{ArithError, CyclotomicElem, Rational};
use crate::nakayama::{IdealPresentation, NakayamaError};
use crate::poly::{PolyError, Polynomial, VariableSet};
use num_traits::Zero;
use thiserror::Error;

/// Errors from the Lie layer.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LieError {
    #[error("block sizes {blocks:?} sum to {sum}, not n = {n}")]
    BlockSumMismatch { blocks: Vec<u32>, sum: u32, n: u32 },
    #[error("block decomposition needs at least one positive block")]
    EmptyBlocks,
    #[error("elementary symmetric degree {j} out of range 0..={n}")]
    DegreeOutOfRange { j: u32, n: u32 },
    #[error("eigenvector index {k} out of range 1..={max}")]
    EigenvectorIndex { k: u32, max: u32 },
    #[error("embedding provides {got} ambient coordinate images, expected {n}")]
    AmbientCount { n: u32, got: usize },
    #[error("embedding images must sum to zero (trace-zero constraint)")]
    TraceNonZero,
    #[error("embedding coefficient matrix has rank {rank}, expected {m}")]
    DeficientRank { rank: usize, m: usize },
    #[error("partition block sizes {sizes:?} sum to {sum}, expected {n}")]
    PartitionSizes { sizes: Vec<u32>, sum: u32, n: u32 },
    #[error("polynomial has {got} variables, expected {expected}")]
    VariableCount { expected: usize, got: usize },
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Arith(#[from] ArithError),
    #[error(transparent)]
    Nakayama(#[from] NakayamaError),
}

/// A product-of-`SU`-blocks subgroup `SU(q₁)×…×SU(q_s) ⊆ SU(n)`, `Σqᵢ = n`.
///
/// Blocks of size 1 are permitted but contribute no subtorus coordinates;
/// the rank of the subgroup is `m = Σ(qᵢ − 1)`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BlockDecomposition {
    n: u32,
    blocks: Vec<u32>,
}

impl BlockDecomposition {
    pub fn new(n: u32, blocks: Vec<u32>) -> Result<Self, LieError> {
        if blocks.is_empty() || blocks.iter().any(|&q| q == 0) {
            return Err(LieError::EmptyBlocks);
        }
        let sum: u32 = blocks.iter().sum();
        if sum != n {
            return Err(LieError::BlockSumMismatch { blocks, sum, n });
        }
        Ok(Self { n, blocks })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn blocks(&self) -> &[u32] {
        &self.blocks
    }

    /// Rank of the block subgroup: `m = Σ(qᵢ − 1)`.
    pub fn rank(&self) -> u32 {
        self.blocks.iter().map(|&q| q - 1).sum()
    }

    /// Human-readable subgroup label, e.g. `SU(3)xSU(3)`.  Size-1 factors
    /// are trivial and omitted.
    pub fn subgroup_label(&self) -> String {
        let factors: Vec<String> = self
            .blocks
            .iter()
            .filter(|&&q| q >= 2)
            .map(|q| format!("SU({q})"))
            .collect();
        if factors.is_empty() {
            "trivial".to_string()
        } else {
            factors.join("x")
        }
    }
}

/// A rational linear embedding `𝔰 ↪ 𝔱` of an `m`-dimensional subtorus into
/// the torus coordinates of `SU(n)`: one linear form per ambient coordinate
/// `x_i`, with `Σᵢ x_i = 0` identically and full column rank `m`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TorusEmbedding {
    n: u32,
    subtorus: VariableSet,
    images: Vec<Polynomial<Rational>>,
}

impl TorusEmbedding {
    pub fn new(
        n: u32,
        subtorus: VariableSet,
        images: Vec<Polynomial<Rational>>,
    ) -> Result<Self, LieError> {
        if images.len() != n as usize {
            return Err(LieError::AmbientCount {
                n,
                got: images.len(),
            });
        }
        if !subtorus.weights().iter().all(|&w| w == 1) {
            return Err(LieError::Poly(PolyError::WeightedSubstitution));
        }
        let mut sum = Polynomial::zero(&subtorus);
        for image in &images {
            if image.vars() != &subtorus {
                return Err(LieError::Poly(PolyError::VariableSetMismatch));
            }
            if !image.is_zero() && image.homogeneous_degree() != Some(1) {
                return Err(LieError::Poly(PolyError::NonLinearImage(
                    "ambient coordinate".to_string(),
                )));
            }
            sum = sum.add(image)?;
        }
        if !sum.is_zero() {
            return Err(LieError::TraceNonZero);
        }
        let embedding = Self {
            n,
            subtorus,
            images,
        };
        let rank = rational_matrix_rank(&embedding.matrix());
        if rank != embedding.m() as usize {
            return Err(LieError::DeficientRank {
                rank,
                m: embedding.m() as usize,
            });
        }
        Ok(embedding)
    }

    /// The full maximal torus `T ⊂ SU(n)` in standard coordinates:
    /// `x_i = s_i` for `i < n` and `x_n = −(s_1 + … + s_{n−1})`.
    pub fn full_torus(n: u32) -> Self {
        assert!(n >= 2, "SU(n) needs n >= 2");
        let names: Vec<String> = (1..n).map(|i| format!("s{i}")).collect();
        let subtorus = VariableSet::standard(names);
        let mut images = Vec::with_capacity(n as usize);
        let mut last = Polynomial::zero(&subtorus);
        for i in 0..(n - 1) as usize {
            let v = Polynomial::variable(&subtorus, i).expect("in range");
            last = last.sub(&v).expect("same ring");
            images.push(v);
        }
        images.push(last);
        Self::new(n, subtorus, images).expect("full torus is a valid embedding")
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    /// Dimension of the embedded subtorus.
    pub fn m(&self) -> u32 {
        self.subtorus.len() as u32
    }

    pub fn subtorus(&self) -> &VariableSet {
        &self.subtorus
    }

    /// Linear images of the ambient coordinates `x_1, …, x_n`.
    pub fn images(&self) -> &[Polynomial<Rational>] {
        &self.images
    }

    /// The `n × m` coefficient matrix of the embedding.
    pub fn matrix(&self) -> Vec<Vec<Rational>> {
        let m = self.subtorus.len();
        self.images
            .iter()
            .map(|image| {
                let mut row = vec![Rational::zero(); m];
                for (mono, coeff) in image.terms() {
                    let var = mono
                        .exponents()
                        .iter()
                        .position(|&e| e == 1)
                        .expect("linear term");
                    row[var] = coeff.clone();
                }
                row
            })
            .collect()
    }
}

/// Rank of a dense rational matrix by plain Gaussian elimination.  Used for
/// validating embeddings; the heavy lifting for degree slices lives in
/// [`crate::nakayama`].
fn rational_matrix_rank(rows: &[Vec<Rational>]) -> usize {
    let mut mat: Vec<Vec<Rational>> = rows.to_vec();
    let cols = mat.first().map(Vec::len).unwrap_or(0);
    let mut rank = 0;
    for col in 0..cols {
        let Some(pivot) = (rank..mat.len()).find(|&r| !mat[r][col].is_zero()) else {
            continue;
        };
        mat.swap(rank, pivot);
        let lead = mat[rank][col].clone();
        for r in rank + 1..mat.len() {
            if !mat[r][col].is_zero() {
                let factor = &mat[r][col] / &lead;
                for c in col..cols {
                    let delta = &factor * &mat[rank][c];
                    mat[r][c] -= delta;
                }
            }
        }
        rank += 1;
        if rank == mat.len() {
            break;
        }
    }
    rank
}

/// The elementary symmetric polynomial `e_j` in `n` weight-1 variables
/// `x1, …, xn`; homogeneous of degree `j`.
pub fn elementary_symmetric(n: u32, j: u32) -> Result<Polynomial<Rational>, LieError> {
    if j > n {
        return Err(LieError::DegreeOutOfRange { j, n });
    }
    let names: Vec<String> = (1..=n).map(|i| format!("x{i}")).collect();
    let vars = VariableSet::standard(names);
    // Iterate over j-subsets of {0, …, n−1} without recursion: standard
    // odometer over sorted index vectors.
    let mut terms = Vec::new();
    if j == 0 {
        return Ok(Polynomial::one(&vars));
    }
    let j = j as usize;
    let n = n as usize;
    let mut idx: Vec<usize> = (0..j).collect();
    'subsets: loop {
        let mut exps = vec![0u32; n];
        for &i in &idx {
            exps[i] = 1;
        }
        terms.push((
            crate::poly::Monomial::new(&vars, exps).expect("valid exponents"),
            Rational::from_integer(1.into()),
        ));
        // Advance to the next j-subset in lexicographic order.
        let mut pos = j;
        loop {
            if pos == 0 {
                break 'subsets;
            }
            pos -= 1;
            if idx[pos] < n - j + pos {
                idx[pos] += 1;
                for p in pos + 1..j {
                    idx[p] = idx[p - 1] + 1;
                }
                continue 'subsets;
            }
        }
    }
    Polynomial::from_terms(&vars, terms).map_err(Into::into)
}

/// Standard maximal-torus embedding of a block subgroup: within a block of
/// size `q ≥ 2` the first `q−1` ambient coordinates map to fresh variables
/// and the last to minus their sum; size-1 blocks map to zero.
pub fn block_embedding(bd: &BlockDecomposition) -> TorusEmbedding {
    let m: u32 = bd.rank();
    let names: Vec<String> = (1..=m).map(|i| format!("s{i}")).collect();
    let subtorus = VariableSet::standard(names);
    let mut images = Vec::with_capacity(bd.n() as usize);
    let mut next_var = 0usize;
    for &q in bd.blocks() {
        if q == 1 {
            images.push(Polynomial::zero(&subtorus));
            continue;
        }
        let mut block_sum = Polynomial::zero(&subtorus);
        for _ in 0..q - 1 {
            let v = Polynomial::variable(&subtorus, next_var).expect("in range");
            block_sum = block_sum.sub(&v).expect("same ring");
            images.push(v);
            next_var += 1;
        }
        images.push(block_sum);
    }
    TorusEmbedding::new(bd.n(), subtorus, images).expect("block embedding is valid")
}

/// Restrictions `p_j = P_j ∘ embedding` for `j = 2, …, n`.  Entry `j − 2`
/// holds `p_j`; zero restrictions are kept (the ideal builders drop and
/// record them).
///
/// Substituting the coordinate images into every `P_j` separately repeats
/// the same products over and over, so all restrictions are read off at once
/// from the truncated product `∏ᵢ (1 + imageᵢ·t)`, whose `t^j` coefficient
/// is `P_j` evaluated at the images.
pub fn restrict(embedding: &TorusEmbedding) -> Result<Vec<Polynomial<Rational>>, LieError> {
    let n = embedding.n() as usize;
    let ring = embedding.subtorus();
    let mut series: Vec<Polynomial<Rational>> = vec![Polynomial::zero(ring); n + 1];
    series[0] = Polynomial::one(ring);
    for image in embedding.images() {
        for d in (0..n).rev() {
            if !series[d].is_zero() && !image.is_zero() {
                let stepped = series[d].mul(image)?;
                series[d + 1] = series[d + 1].add(&stepped)?;
            }
        }
    }
    let out: Vec<Polynomial<Rational>> = series.drain(2..).collect();
    for (j, pj) in (2..).zip(&out) {
        debug_assert!(
            pj.is_zero() || pj.homogeneous_degree() == Some(j),
            "restriction must preserve degree"
        );
    }
    Ok(out)
}

/// Names the invariant generators of the `i`-th contributing block: block
/// letters `a, b, c, …` with the degree as suffix (`a2, a3, …`).
fn block_letter(i: usize) -> String {
    if i < 26 {
        ((b'a' + i as u8) as char).to_string()
    } else {
        format!("blk{i}")
    }
}

/// Presentation of the restricted ideal in the block-invariant ring: each
/// block of size `q ≥ 2` contributes generators `e₂, …, e_q` of weights
/// `2, …, q` (the block's elementary symmetric invariants; `e₁` is absent by
/// the per-block trace-zero constraint), and
/// `Σ_j p_j t^j = ∏_i (1 + Σ_{a=2}^{qᵢ} e^{(i)}_a t^a)`.
pub fn block_invariant_presentation(
    bd: &BlockDecomposition,
) -> Result<IdealPresentation, LieError> {
    let mut names = Vec::new();
    let mut weights = Vec::new();
    let contributing: Vec<u32> = bd.blocks().iter().copied().filter(|&q| q >= 2).collect();
    for (i, &q) in contributing.iter().enumerate() {
        let letter = block_letter(i);
        for a in 2..=q {
            names.push(format!("{letter}{a}"));
            weights.push(a);
        }
    }
    let ring = VariableSet::new(names, weights)?;
    // Coefficients of t^0..t^n in ∏ᵢ (1 + Σ_a e^{(i)}_a t^a).
    let n = bd.n() as usize;
    let mut series: Vec<Polynomial<Rational>> = vec![Polynomial::zero(&ring); n + 1];
    series[0] = Polynomial::one(&ring);
    let mut var_index = 0usize;
    for &q in &contributing {
        let mut factor_vars: Vec<(usize, Polynomial<Rational>)> = Vec::new();
        for a in 2..=q {
            factor_vars.push((
                a as usize,
                Polynomial::variable(&ring, var_index).expect("in range"),
            ));
            var_index += 1;
        }
        let mut next: Vec<Polynomial<Rational>> = series.clone();
        for (a, var) in &factor_vars {
            for d in 0..=n {
                if d + a > n {
                    break;
                }
                if series[d].is_zero() {
                    continue;
                }
                let shifted = series[d].mul(var)?;
                next[d + a] = next[d + a].add(&shifted)?;
            }
        }
        series = next;
    }
    let candidates: Vec<(u32, Polynomial<Rational>)> = (2..=bd.n())
        .map(|j| (j, series[j as usize].clone()))
        .collect();
    IdealPresentation::new(&ring, candidates).map_err(Into::into)
}

/// The Coxeter eigenvector `X_k` of `SU(n)`: unnormalized coordinates
/// `(ζₙ^{k(n−1)}, ζₙ^{k(n−2)}, …, ζₙ^k, 1)`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CoxeterEigenvector {
    n: u32,
    k: u32,
    coords: Vec<CyclotomicElem>,
}

impl CoxeterEigenvector {
    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn coordinates(&self) -> &[CyclotomicElem] {
        &self.coords
    }

    /// Coordinates rotated one step (`x_i ↦ x_{i+1}` positionally); the
    /// Coxeter transformation of type A acts this way and scales `X_k` by
    /// `ζₙ^k`.
    pub fn cyclic_shift(&self) -> Vec<CyclotomicElem> {
        let n = self.coords.len();
        let mut shifted = Vec::with_capacity(n);
        shifted.push(self.coords[n - 1].clone());
        shifted.extend(self.coords[..n - 1].iter().cloned());
        shifted
    }
}

/// Constructs `X_k` for `SU(n)`, `1 ≤ k ≤ n−1`.
pub fn coxeter_eigenvector(n: u32, k: u32) -> Result<CoxeterEigenvector, LieError> {
    if n < 2 || k == 0 || k > n - 1 {
        return Err(LieError::EigenvectorIndex {
            k,
            max: n.saturating_sub(1),
        });
    }
    let coords = (0..n)
        .map(|i| CyclotomicElem::root_power(n, (k as i64) * ((n - 1 - i) as i64)))
        .collect();
    Ok(CoxeterEigenvector { n, k, coords })
}

/// Evaluates a homogeneous polynomial in `n` weight-1 variables at the
/// (unnormalized) eigenvector coordinates.  Homogeneity makes the zero /
/// nonzero outcome agree with the normalized convention.
pub fn eval_at_eigenvector(
    p: &Polynomial<Rational>,
    x: &CoxeterEigenvector,
) -> Result<CyclotomicElem, LieError> {
    if p.vars().len() != x.n() as usize {
        return Err(LieError::VariableCount {
            expected: x.n() as usize,
            got: p.vars().len(),
        });
    }
    if !p.is_homogeneous() {
        return Err(LieError::Poly(PolyError::NotHomogeneous));
    }
    crate::poly::evaluate_cyclotomic(p, x.coordinates()).map_err(Into::into)
}

/// Searches for a partition of the eigenvector coordinates into blocks of
/// the given sizes, each block summing to zero exactly.
///
/// The search is deterministic: depth-first, smallest block first, each
/// block anchored at the smallest unused index and extended in increasing
/// index order.  Returns the first partition found (as 0-based coordinate
/// index blocks, in search order), or `None` after exhaustive search.
pub fn zero_sum_partition(
    x: &CoxeterEigenvector,
    block_sizes: &[u32],
) -> Result<Option<Vec<Vec<usize>>>, LieError> {
    let n = x.n();
    let sum: u32 = block_sizes.iter().sum();
    if sum != n || block_sizes.iter().any(|&s| s == 0) {
        return Err(LieError::PartitionSizes {
            sizes: block_sizes.to_vec(),
            sum,
            n,
        });
    }
    let mut sizes = block_sizes.to_vec();
    sizes.sort_unstable();
    let coords = x.coordinates();
    let order = coords[0].order();
    let mut used = vec![false; n as usize];
    let mut blocks: Vec<Vec<usize>> = Vec::new();
    if search_blocks(coords, order, &sizes, &mut used, &mut blocks)? {
        Ok(Some(blocks))
    } else {
        Ok(None)
    }
}

fn search_blocks(
    coords: &[CyclotomicElem],
    order: u32,
    sizes: &[u32],
    used: &mut Vec<bool>,
    blocks: &mut Vec<Vec<usize>>,
) -> Result<bool, LieError> {
    let Some((&size, rest)) = sizes.split_first() else {
        return Ok(true);
    };
    // Anchor on the smallest unused index: every partition contains it in
    // some block, and among equal-size blocks this kills permutation
    // symmetry, making the first partition found canonical.
    let anchor = used.iter().position(|&u| !u).expect("sizes sum to n");
    used[anchor] = true;
    let start_sum = coords[anchor].clone();
    let mut block = vec![anchor];
    let found = extend_block(
        coords, order, size as usize, anchor + 1, &start_sum, &mut block, rest, used, blocks,
    )?;
    used[anchor] = false;
    Ok(found)
}

#[allow(clippy::too_many_arguments)]
fn extend_block(
    coords: &[CyclotomicElem],
    order: u32,
    size: usize,
    from: usize,
    sum: &CyclotomicElem,
    block: &mut Vec<usize>,
    remaining_sizes: &[u32],
    used: &mut Vec<bool>,
    blocks: &mut Vec<Vec<usize>>,
) -> Result<bool, LieError> {
    if block.len() == size {
        if !sum.is_zero() {
            return Ok(false);
        }
        blocks.push(block.clone());
        if search_blocks(coords, order, remaining_sizes, used, blocks)? {
            return Ok(true);
        }
        blocks.pop();
        return Ok(false);
    }
    let needed = size - block.len();
    let available = coords.len() - from;
    if needed > available {
        return Ok(false);
    }
    for i in from..coords.len() {
        if used[i] {
            continue;
        }
        used[i] = true;
        block.push(i);
        let next_sum = sum.add(&coords[i])?;
        if extend_block(
            coords,
            order,
            size,
            i + 1,
            &next_sum,
            block,
            remaining_sizes,
            used,
            blocks,
        )? {
            return Ok(true);
        }
        block.pop();
        used[i] = false;
        if coords.len() - i - 1 < size - block.len() {
            break;
        }
    }
    Ok(false)
}

#[cfg(test)]
mod tests;
