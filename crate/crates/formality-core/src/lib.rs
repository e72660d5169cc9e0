//! Exact computational algebra for deciding formality of homogeneous spaces
//! `SU(n)/H`.
//!
//! The engine computes the *deficiency* `df = r − m` of such a space, where
//! `m` is the rank of the subgroup `H` and `r` is the cardinality of a minimal
//! homogeneous generating system of the ideal spanned by the restrictions
//! `p_2, …, p_n` of the elementary symmetric polynomials to the maximal torus
//! of `H`.  The space is formal exactly when `df = 0`, so everything reduces
//! to exact linear algebra on graded degree slices.
//!
//! Layering, bottom up:
//!
//! * [`arith`] — arbitrary-precision rationals, prime-field elements, and
//!   exact cyclotomic numbers `ℚ(ζ_N)` represented modulo `Φ_N`.
//! * [`poly`] — sparse multivariate polynomials over a pluggable exact
//!   coefficient field, with weighted grading for invariant-ring variables.
//! * [`lie`] — the type-A layer: elementary symmetric polynomials, block
//!   subgroup embeddings, restriction maps, Coxeter eigenvectors, and
//!   zero-sum partition search.
//! * [`nakayama`] — degree-sliced exact/modular rank computations, minimal
//!   generator counts of graded ideals, and subalgebra membership with
//!   explicit certificates.
//! * [`engine`] — orchestration: build the ideal presentation for a space by
//!   either of two routes (subtorus restriction or block invariants), compute
//!   the deficiency, and emit structured verdict reports.

pub mod arith;
pub mod engine;
pub mod lie;
pub mod nakayama;
pub mod poly;

/// Version string stamped into every report and cache key.
pub const ENGINE_VERSION: &str = env!("CARGO_PKG_VERSION");
