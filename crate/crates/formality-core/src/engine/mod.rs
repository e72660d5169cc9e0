//! Formality decisions for `SU(n)/H`.
//!
//! A homogeneous space `SU(n)/H` is formal exactly when the deficiency
//! `df = r − m` vanishes, where `m` is the rank of `H` and `r` is the minimal
//! number of homogeneous generators of the ideal cut out by the restricted
//! symmetric polynomials `p₂, …, pₙ` on the subtorus of `H`.  The engine
//! computes `r` by graded Nakayama ranks along two independent routes:
//!
//! * the **torus** route restricts `P_j` to an explicit subtorus embedding
//!   and works in the plain polynomial ring on `𝔰` (applies to arbitrary
//!   embedded subtori, but its degree slices are large);
//! * the **invariants** route, available for block subgroups
//!   `SU(q₁)×…×SU(q_s)`, presents the same ideal inside the much smaller
//!   weighted ring of block invariants.
//!
//! The deficiency is route-independent, so running both doubles as a deep
//! self-check; a disagreement is reported as a hard error rather than a
//! verdict.

pub mod report;
pub mod verify;

use std::collections::BTreeMap;
use std::time::Instant;

use serde::Serialize;
use thiserror::Error;

use crate::arith::{ArithError, DEFAULT_MODULUS};
use crate::lie::{
    block_embedding, block_invariant_presentation, restrict, BlockDecomposition, LieError,
    TorusEmbedding,
};
use crate::nakayama::{
    minimal_generator_count, GeneratorCount, IdealPresentation, NakayamaError, RankMode,
    RankPolicy,
};
use crate::poly::Polynomial;
use crate::arith::Rational;

use report::{
    Certification, FormalityReport, RouteReport, SubgroupReport, Timings, Verdict,
    REPORT_SCHEMA_VERSION,
};

/// Fallback large primes tried in order when a modulus divides a coefficient
/// denominator.
pub const RETRY_MODULI: [u64; 4] = [2_147_483_629, 2_147_483_587, 2_147_483_579, 2_147_483_563];

#[derive(Debug, Error)]
pub enum EngineError {
    #[error("invalid space: {reason}")]
    InvalidSpec { reason: String },
    #[error("route {route} is not available for this subgroup presentation")]
    UnsupportedRoute { route: Route },
    #[error(
        "internal integrity failure: torus route found deficiency {torus} but invariants \
         route found {invariants}; the routes must agree"
    )]
    RouteDisagreement { torus: i64, invariants: i64 },
    #[error(
        "modular rank undercount produced r = {r} < m = {m}; rerun exactly or with a \
         different prime"
    )]
    ImplausibleCount { r: usize, m: usize },
    #[error(transparent)]
    Lie(#[from] LieError),
    #[error(transparent)]
    Nakayama(#[from] NakayamaError),
    #[error(transparent)]
    Poly(#[from] crate::poly::PolyError),
    #[error(transparent)]
    Arith(#[from] ArithError),
}

impl EngineError {
    /// True when the computation was refused because a degree slice exceeded
    /// the configured column budget (as opposed to failing).
    pub fn is_budget_refusal(&self) -> bool {
        matches!(
            self,
            EngineError::Nakayama(NakayamaError::BudgetExceeded { .. })
                | EngineError::Lie(LieError::Nakayama(NakayamaError::BudgetExceeded { .. }))
        )
    }
}

/// A computation route for the deficiency.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Route {
    Torus,
    Invariants,
}

impl std::fmt::Display for Route {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Route::Torus => f.write_str("torus"),
            Route::Invariants => f.write_str("invariants"),
        }
    }
}

/// Which route(s) `analyze` should run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RouteChoice {
    Torus,
    Invariants,
    Both,
}

/// Rank-computation mode.  `Auto` is the two-tier policy: exact for small
/// degree slices, prime-field for large ones, refusal for absurd ones.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    Auto,
    Exact,
    Modular,
}

/// Knobs shared by all engine entry points.
#[derive(Debug, Clone)]
pub struct EngineConfig {
    pub mode: Mode,
    pub modulus: u64,
    /// Overrides the column budget of whichever tier applies.
    pub max_columns: Option<usize>,
    pub retry_moduli: Vec<u64>,
}

impl Default for EngineConfig {
    fn default() -> Self {
        Self {
            mode: Mode::Auto,
            modulus: DEFAULT_MODULUS,
            max_columns: None,
            retry_moduli: RETRY_MODULI.to_vec(),
        }
    }
}

impl EngineConfig {
    pub fn exact() -> Self {
        Self {
            mode: Mode::Exact,
            ..Self::default()
        }
    }

    pub fn modular(modulus: u64) -> Self {
        Self {
            mode: Mode::Modular,
            modulus,
            ..Self::default()
        }
    }

    fn policy(&self, modulus: u64) -> RankPolicy {
        let mut policy = RankPolicy {
            forced: match self.mode {
                Mode::Auto => None,
                Mode::Exact => Some(RankMode::Exact),
                Mode::Modular => Some(RankMode::Modular),
            },
            modulus,
            ..RankPolicy::default()
        };
        if let Some(limit) = self.max_columns {
            policy = policy.with_column_limit(limit);
        }
        policy
    }

    /// Column budget that applies to forced-exact work such as membership
    /// certificates.
    pub(crate) fn exact_column_limit(&self) -> usize {
        self.max_columns
            .unwrap_or_else(|| RankPolicy::default().exact_column_limit)
    }
}

/// The subgroup of a [`SpaceSpec`], in whichever form it was given.
#[derive(Debug, Clone)]
pub enum Subgroup {
    Blocks(BlockDecomposition),
    Torus(TorusEmbedding),
}

/// A homogeneous space `SU(n)/H` with `H` of positive rank.
#[derive(Debug, Clone)]
pub struct SpaceSpec {
    n: u32,
    subgroup: Subgroup,
}

impl SpaceSpec {
    /// `SU(n)` modulo a product of `SU(qᵢ)` blocks.
    pub fn from_blocks(n: u32, blocks: Vec<u32>) -> Result<Self, EngineError> {
        let bd = BlockDecomposition::new(n, blocks)?;
        if bd.rank() == 0 {
            return Err(EngineError::InvalidSpec {
                reason: format!(
                    "subgroup {} has rank 0; the quotient is the whole group",
                    bd.subgroup_label()
                ),
            });
        }
        Ok(Self {
            n,
            subgroup: Subgroup::Blocks(bd),
        })
    }

    /// `SU(n)` modulo an explicitly embedded subtorus.
    pub fn from_embedding(embedding: TorusEmbedding) -> Result<Self, EngineError> {
        if embedding.m() == 0 {
            return Err(EngineError::InvalidSpec {
                reason: "embedded subtorus must have positive dimension".to_string(),
            });
        }
        Ok(Self {
            n: embedding.n(),
            subgroup: Subgroup::Torus(embedding),
        })
    }

    /// `SU(n)/T`, the quotient by the full maximal torus.
    pub fn full_torus(n: u32) -> Result<Self, EngineError> {
        if n < 2 {
            return Err(EngineError::InvalidSpec {
                reason: "SU(n)/T needs n >= 2".to_string(),
            });
        }
        Self::from_embedding(TorusEmbedding::full_torus(n))
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn subgroup(&self) -> &Subgroup {
        &self.subgroup
    }

    /// Rank of the subgroup's maximal torus.
    pub fn m(&self) -> usize {
        match &self.subgroup {
            Subgroup::Blocks(bd) => bd.rank() as usize,
            Subgroup::Torus(e) => e.m() as usize,
        }
    }

    /// Canonical space label, e.g. `SU(6)/SU(3)xSU(3)` or `SU(4)/T`.
    pub fn label(&self) -> String {
        match &self.subgroup {
            Subgroup::Blocks(bd) => format!("SU({})/{}", self.n, bd.subgroup_label()),
            Subgroup::Torus(e) if e.m() == self.n - 1 => format!("SU({})/T", self.n),
            Subgroup::Torus(e) => format!("SU({})/T^{}", self.n, e.m()),
        }
    }

    fn subgroup_report(&self) -> SubgroupReport {
        match &self.subgroup {
            Subgroup::Blocks(bd) => SubgroupReport {
                kind: "blocks",
                blocks: Some(bd.blocks().to_vec()),
                label: bd.subgroup_label(),
                m: self.m(),
            },
            Subgroup::Torus(e) => SubgroupReport {
                kind: "torus",
                blocks: None,
                label: if e.m() == self.n - 1 {
                    "T".to_string()
                } else {
                    format!("T^{}", e.m())
                },
                m: self.m(),
            },
        }
    }
}

/// One route's raw result, before report assembly.
#[derive(Debug, Clone)]
pub struct RouteOutcome {
    pub route: Route,
    pub m: usize,
    pub count: GeneratorCount,
    pub dropped_degrees: Vec<u32>,
}

impl RouteOutcome {
    pub fn r(&self) -> usize {
        self.count.total
    }

    pub fn deficiency(&self) -> i64 {
        self.count.total as i64 - self.m as i64
    }

    fn to_report(&self) -> RouteReport {
        RouteReport {
            route: self.route,
            m: self.m,
            r: self.r(),
            deficiency: self.deficiency(),
            dropped_degrees: self.dropped_degrees.clone(),
            any_modular: self.count.any_modular,
            per_degree: self.count.per_degree.clone(),
        }
    }
}

/// Runs the Nakayama count, retrying with fallback primes when the modulus
/// divides a coefficient denominator.
fn count_with_retry(
    presentation: &IdealPresentation,
    config: &EngineConfig,
) -> Result<GeneratorCount, EngineError> {
    let mut modulus = config.modulus;
    let mut tried = vec![modulus];
    loop {
        match minimal_generator_count(presentation, &config.policy(modulus)) {
            Err(NakayamaError::Arith(ArithError::UnluckyModulus { .. })) => {
                let next = config
                    .retry_moduli
                    .iter()
                    .copied()
                    .find(|m| !tried.contains(m));
                match next {
                    Some(next) => {
                        tried.push(next);
                        modulus = next;
                    }
                    None => {
                        return Err(EngineError::Nakayama(NakayamaError::Arith(
                            ArithError::UnluckyModulus { modulus },
                        )))
                    }
                }
            }
            other => return other.map_err(Into::into),
        }
    }
}

/// The ideal presentation the torus route works with: restrictions
/// `p₂, …, pₙ` in the polynomial ring on the subtorus.
pub fn torus_presentation(spec: &SpaceSpec) -> Result<(TorusEmbedding, IdealPresentation), EngineError> {
    let embedding = match &spec.subgroup {
        Subgroup::Blocks(bd) => block_embedding(bd),
        Subgroup::Torus(e) => e.clone(),
    };
    let restrictions = restrict(&embedding)?;
    let candidates: Vec<(u32, Polynomial<Rational>)> =
        (2..=spec.n).zip(restrictions).collect();
    let presentation = IdealPresentation::new(embedding.subtorus(), candidates)?;
    Ok((embedding, presentation))
}

/// Deficiency through the subtorus restriction (Nakayama in the plain ring
/// on `𝔰`).
pub fn deficiency_via_torus(
    spec: &SpaceSpec,
    config: &EngineConfig,
) -> Result<RouteOutcome, EngineError> {
    let (embedding, presentation) = torus_presentation(spec)?;
    let count = count_with_retry(&presentation, config)?;
    Ok(RouteOutcome {
        route: Route::Torus,
        m: embedding.m() as usize,
        dropped_degrees: presentation.dropped_degrees().to_vec(),
        count,
    })
}

/// Deficiency through the block-invariant presentation (Nakayama in the
/// weighted invariant ring); block subgroups only.
pub fn deficiency_via_invariants(
    spec: &SpaceSpec,
    config: &EngineConfig,
) -> Result<RouteOutcome, EngineError> {
    let Subgroup::Blocks(bd) = &spec.subgroup else {
        return Err(EngineError::UnsupportedRoute {
            route: Route::Invariants,
        });
    };
    let presentation = block_invariant_presentation(bd)?;
    let count = count_with_retry(&presentation, config)?;
    Ok(RouteOutcome {
        route: Route::Invariants,
        m: bd.rank() as usize,
        dropped_degrees: presentation.dropped_degrees().to_vec(),
        count,
    })
}

/// Decides formality of the space along the requested route(s) and builds
/// the full report.  With `RouteChoice::Both`, the two deficiencies must
/// agree — a mismatch is a hard integrity error, not a verdict.
pub fn analyze(
    spec: &SpaceSpec,
    choice: RouteChoice,
    config: &EngineConfig,
) -> Result<FormalityReport, EngineError> {
    let started = Instant::now();
    let routes: &[Route] = match choice {
        RouteChoice::Torus => &[Route::Torus],
        RouteChoice::Invariants => &[Route::Invariants],
        RouteChoice::Both => &[Route::Torus, Route::Invariants],
    };
    let mut outcomes = Vec::with_capacity(routes.len());
    let mut routes_ms = BTreeMap::new();
    for &route in routes {
        let t0 = Instant::now();
        let outcome = match route {
            Route::Torus => deficiency_via_torus(spec, config)?,
            Route::Invariants => deficiency_via_invariants(spec, config)?,
        };
        routes_ms.insert(route.to_string(), t0.elapsed().as_millis() as u64);
        outcomes.push(outcome);
    }
    if let [a, b] = outcomes.as_slice() {
        if a.deficiency() != b.deficiency() {
            return Err(EngineError::RouteDisagreement {
                torus: a.deficiency(),
                invariants: b.deficiency(),
            });
        }
    }
    let lead = &outcomes[0];
    if lead.r() < lead.m {
        return Err(EngineError::ImplausibleCount {
            r: lead.r(),
            m: lead.m,
        });
    }
    let any_modular = outcomes.iter().any(|o| o.count.any_modular);
    let verdict = if lead.deficiency() == 0 {
        Verdict::Formal
    } else {
        Verdict::NonFormal
    };
    Ok(FormalityReport {
        schema_version: REPORT_SCHEMA_VERSION,
        engine_version: crate::ENGINE_VERSION.to_string(),
        space: spec.label(),
        n: spec.n,
        subgroup: spec.subgroup_report(),
        m: lead.m,
        r: lead.r(),
        deficiency: lead.deficiency(),
        verdict,
        certification: if any_modular {
            Certification::ModularMonteCarlo
        } else {
            Certification::CertifiedExact
        },
        routes: outcomes.iter().map(RouteOutcome::to_report).collect(),
        timings: Timings {
            total_ms: started.elapsed().as_millis() as u64,
            routes_ms,
        },
    })
}
