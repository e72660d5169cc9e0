//! Minimal generator counts for graded ideals.
//!
//! For a homogeneous ideal `I` in a weighted polynomial ring, the graded
//! Nakayama lemma identifies the number of minimal generators in degree `d`
//! with `dim I_d − dim (𝔪I)_d`, where `𝔪` is the irrelevant maximal ideal.
//! Both dimensions are ranks of explicit finite matrices: rows are monomial
//! multiples of the given generators, columns are the monomials of degree
//! `d`.  Summing over the degrees of the given generators yields the minimal
//! number of generators of `I`, independent of the presentation.
//!
//! Ranks come with certificates and follow a two-tier budget: small slices
//! are eliminated exactly over the integers, larger ones over a prime field
//! (a Monte-Carlo answer that can only underestimate), and absurdly large
//! ones are refused rather than silently attempted.

pub mod elim;
pub mod membership;

pub use membership::{subalgebra_membership, Membership, MembershipCertificate};

use rayon::prelude::*;
use serde::Serialize;
use std::collections::{BTreeSet, HashMap};
use std::fmt;
use thiserror::Error;

use crate::arith::{ArithError, Rational, DEFAULT_MODULUS};
use crate::poly::{monomials_of_degree, Monomial, PolyError, Polynomial, VariableSet};
use elim::{modular_row, primitive_row, IntEchelon, ModEchelon};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NakayamaError {
    #[error("generator {index} does not live in the presentation ring")]
    RingMismatch { index: usize },
    #[error("generator {index} is not homogeneous")]
    NotHomogeneous { index: usize },
    #[error("generator {index} has degree {actual} but was declared in degree {declared}")]
    DegreeMismatch {
        index: usize,
        declared: u32,
        actual: u32,
    },
    #[error(
        "degree-{degree} slice has {columns} columns, over the {mode} limit of {limit} \
         (raise the column budget to proceed)"
    )]
    BudgetExceeded {
        degree: u32,
        columns: usize,
        limit: usize,
        mode: RankMode,
    },
    #[error("basis element {index} is a nonzero constant")]
    ConstantBasisElement { index: usize },
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Arith(#[from] ArithError),
}

/// How a rank was computed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum RankMode {
    /// Fraction-free elimination over the integers; the result is a theorem.
    Exact,
    /// Elimination over a prime field; the result is a lower bound that is
    /// almost surely sharp.
    Modular,
}

impl fmt::Display for RankMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RankMode::Exact => f.write_str("exact"),
            RankMode::Modular => f.write_str("modular"),
        }
    }
}

/// A homogeneous ideal given by generators with recorded degrees.
///
/// Candidate generators that are identically zero are dropped, with their
/// declared degrees kept for reporting; the remaining generators must be
/// homogeneous of exactly their declared degree.
#[derive(Debug, Clone, PartialEq)]
pub struct IdealPresentation {
    ring: VariableSet,
    generators: Vec<(u32, Polynomial<Rational>)>,
    dropped: Vec<u32>,
}

impl IdealPresentation {
    pub fn new(
        ring: &VariableSet,
        candidates: Vec<(u32, Polynomial<Rational>)>,
    ) -> Result<Self, NakayamaError> {
        let mut generators = Vec::new();
        let mut dropped = Vec::new();
        for (index, (declared, poly)) in candidates.into_iter().enumerate() {
            if poly.vars() != ring {
                return Err(NakayamaError::RingMismatch { index });
            }
            if poly.is_zero() {
                dropped.push(declared);
                continue;
            }
            match poly.homogeneous_degree() {
                None => return Err(NakayamaError::NotHomogeneous { index }),
                Some(actual) if actual != declared => {
                    return Err(NakayamaError::DegreeMismatch {
                        index,
                        declared,
                        actual,
                    })
                }
                Some(_) => generators.push((declared, poly)),
            }
        }
        Ok(Self {
            ring: ring.clone(),
            generators,
            dropped,
        })
    }

    pub fn ring(&self) -> &VariableSet {
        &self.ring
    }

    pub fn generators(&self) -> &[(u32, Polynomial<Rational>)] {
        &self.generators
    }

    /// Declared degrees of candidate generators that were identically zero.
    pub fn dropped_degrees(&self) -> &[u32] {
        &self.dropped
    }

    /// Distinct generator degrees, ascending.
    pub fn degrees(&self) -> Vec<u32> {
        let set: BTreeSet<u32> = self.generators.iter().map(|(d, _)| *d).collect();
        set.into_iter().collect()
    }
}

/// One row of a degree slice: `multiplier · generator`, stored sparsely over
/// the slice's column monomials.
#[derive(Debug, Clone)]
pub struct SliceRow {
    pub generator: usize,
    pub multiplier: Monomial,
    pub entries: Vec<(usize, Rational)>,
}

/// The degree-`d` piece of an ideal as an explicit matrix.
///
/// Columns are the monomials of weighted degree `d` in canonical order; rows
/// are ordered by generator index, then by multiplier monomial.
#[derive(Debug, Clone)]
pub struct DegreeSlice {
    degree: u32,
    columns: Vec<Monomial>,
    rows: Vec<SliceRow>,
}

impl DegreeSlice {
    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn columns(&self) -> &[Monomial] {
        &self.columns
    }

    pub fn rows(&self) -> &[SliceRow] {
        &self.rows
    }
}

/// Builds the matrix of `I_d` (or of `(𝔪I)_d` when `proper_multiples_only`
/// is set, which keeps only rows with a non-constant multiplier).
pub fn slice(
    ideal: &IdealPresentation,
    degree: u32,
    proper_multiples_only: bool,
) -> Result<DegreeSlice, NakayamaError> {
    let columns = monomials_of_degree(ideal.ring(), degree);
    let index_of: HashMap<&Monomial, usize> =
        columns.iter().enumerate().map(|(i, m)| (m, i)).collect();
    let mut rows = Vec::new();
    for (gi, (gd, g)) in ideal.generators().iter().enumerate() {
        if *gd > degree || (proper_multiples_only && *gd == degree) {
            continue;
        }
        for multiplier in monomials_of_degree(ideal.ring(), degree - gd) {
            let mut entries: Vec<(usize, Rational)> = g
                .terms()
                .map(|(mono, coeff)| {
                    let column = *index_of
                        .get(&mono.mul(&multiplier))
                        .expect("product monomial has the slice degree");
                    (column, coeff.clone())
                })
                .collect();
            entries.sort_by_key(|(column, _)| *column);
            rows.push(SliceRow {
                generator: gi,
                multiplier,
                entries,
            });
        }
    }
    Ok(DegreeSlice {
        degree,
        columns,
        rows,
    })
}

/// A computed rank together with how it was obtained.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RankCertificate {
    pub rank: usize,
    pub mode: RankMode,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub modulus: Option<u64>,
    pub pivot_columns: Vec<usize>,
}

/// Computes the rank of a degree slice in the requested mode.
pub fn rank(
    slice: &DegreeSlice,
    mode: RankMode,
    modulus: u64,
) -> Result<RankCertificate, NakayamaError> {
    match mode {
        RankMode::Exact => {
            let mut echelon = IntEchelon::new();
            for row in slice.rows() {
                echelon.insert(primitive_row(&row.entries));
            }
            Ok(RankCertificate {
                rank: echelon.rank(),
                mode,
                modulus: None,
                pivot_columns: echelon.pivot_columns(),
            })
        }
        RankMode::Modular => {
            let mut echelon = ModEchelon::new(modulus);
            for row in slice.rows() {
                echelon.insert(modular_row(&row.entries, modulus)?);
            }
            Ok(RankCertificate {
                rank: echelon.rank(),
                mode,
                modulus: Some(modulus),
                pivot_columns: echelon.pivot_columns(),
            })
        }
    }
}

/// Column budgets that keep rank computations honest about their cost.
///
/// With no forced mode, slices up to `exact_column_limit` columns run
/// exactly, slices up to `modular_column_limit` fall back to the prime
/// field, and anything larger is refused.  Forcing a mode applies that
/// mode's limit strictly.
#[derive(Debug, Clone)]
pub struct RankPolicy {
    pub forced: Option<RankMode>,
    pub modulus: u64,
    pub exact_column_limit: usize,
    pub modular_column_limit: usize,
}

impl Default for RankPolicy {
    fn default() -> Self {
        Self {
            forced: None,
            modulus: DEFAULT_MODULUS,
            exact_column_limit: 5_000,
            modular_column_limit: 200_000,
        }
    }
}

impl RankPolicy {
    pub fn exact() -> Self {
        Self {
            forced: Some(RankMode::Exact),
            ..Self::default()
        }
    }

    pub fn modular(modulus: u64) -> Self {
        Self {
            forced: Some(RankMode::Modular),
            modulus,
            ..Self::default()
        }
    }

    /// Replaces the column limit of every tier, for callers that accept the
    /// cost.
    pub fn with_column_limit(mut self, limit: usize) -> Self {
        self.exact_column_limit = limit;
        self.modular_column_limit = limit;
        self
    }

    fn choose(&self, degree: u32, columns: usize) -> Result<RankMode, NakayamaError> {
        let refuse = |mode: RankMode, limit: usize| NakayamaError::BudgetExceeded {
            degree,
            columns,
            limit,
            mode,
        };
        match self.forced {
            Some(RankMode::Exact) => {
                if columns <= self.exact_column_limit {
                    Ok(RankMode::Exact)
                } else {
                    Err(refuse(RankMode::Exact, self.exact_column_limit))
                }
            }
            Some(RankMode::Modular) => {
                if columns <= self.modular_column_limit {
                    Ok(RankMode::Modular)
                } else {
                    Err(refuse(RankMode::Modular, self.modular_column_limit))
                }
            }
            None => {
                if columns <= self.exact_column_limit {
                    Ok(RankMode::Exact)
                } else if columns <= self.modular_column_limit {
                    Ok(RankMode::Modular)
                } else {
                    Err(refuse(RankMode::Modular, self.modular_column_limit))
                }
            }
        }
    }
}

/// Per-degree outcome of the Nakayama count.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DegreeCount {
    pub degree: u32,
    /// Minimal generators needed in this degree: `rank_full − rank_proper`.
    pub count: usize,
    pub rank_full: usize,
    pub rank_proper: usize,
    pub columns: usize,
    pub mode: RankMode,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub modulus: Option<u64>,
}

/// The minimal number of generators of a graded ideal, with its per-degree
/// breakdown.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GeneratorCount {
    pub per_degree: Vec<DegreeCount>,
    pub total: usize,
    /// True when any degree used the prime-field fallback, in which case the
    /// total is a near-certain lower bound rather than a theorem.
    pub any_modular: bool,
}

fn count_in_degree(
    ideal: &IdealPresentation,
    degree: u32,
    policy: &RankPolicy,
) -> Result<DegreeCount, NakayamaError> {
    let full = slice(ideal, degree, false)?;
    let columns = full.columns().len();
    let mode = policy.choose(degree, columns)?;
    // The proper-multiple rows span (𝔪I)_d; the rows with constant
    // multiplier are the degree-d generators themselves.  Eliminating the
    // former first and then feeding in the latter yields both ranks from a
    // single echelon pass.
    let (rank_proper, rank_full) = match mode {
        RankMode::Exact => {
            let mut echelon = IntEchelon::new();
            for row in full.rows().iter().filter(|r| !r.multiplier.is_constant()) {
                echelon.insert(primitive_row(&row.entries));
            }
            let proper = echelon.rank();
            for row in full.rows().iter().filter(|r| r.multiplier.is_constant()) {
                echelon.insert(primitive_row(&row.entries));
            }
            (proper, echelon.rank())
        }
        RankMode::Modular => {
            let mut echelon = ModEchelon::new(policy.modulus);
            for row in full.rows().iter().filter(|r| !r.multiplier.is_constant()) {
                echelon.insert(modular_row(&row.entries, policy.modulus)?);
            }
            let proper = echelon.rank();
            for row in full.rows().iter().filter(|r| r.multiplier.is_constant()) {
                echelon.insert(modular_row(&row.entries, policy.modulus)?);
            }
            (proper, echelon.rank())
        }
    };
    Ok(DegreeCount {
        degree,
        count: rank_full - rank_proper,
        rank_full,
        rank_proper,
        columns,
        mode,
        modulus: match mode {
            RankMode::Exact => None,
            RankMode::Modular => Some(policy.modulus),
        },
    })
}

/// Counts the minimal generators of the ideal, degree by degree.
///
/// Only the degrees of the presented generators can contribute, so those are
/// exactly the degrees examined.  Degrees are processed in parallel when a
/// thread pool is available.
pub fn minimal_generator_count(
    ideal: &IdealPresentation,
    policy: &RankPolicy,
) -> Result<GeneratorCount, NakayamaError> {
    let per_degree: Vec<DegreeCount> = ideal
        .degrees()
        .into_par_iter()
        .map(|d| count_in_degree(ideal, d, policy))
        .collect::<Result<_, _>>()?;
    let total = per_degree.iter().map(|d| d.count).sum();
    let any_modular = per_degree.iter().any(|d| d.mode == RankMode::Modular);
    Ok(GeneratorCount {
        per_degree,
        total,
        any_modular,
    })
}
