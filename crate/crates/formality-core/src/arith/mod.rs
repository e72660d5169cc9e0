//! Exact coefficient arithmetic: arbitrary-precision rationals, prime-field
//! elements, and cyclotomic field elements `ℚ(ζ_N)` reduced modulo the `N`-th
//! cyclotomic polynomial `Φ_N`.
//!
//! Everything here is exact.  Working over `ℚ` (rather than `ℝ`) loses
//! nothing: every polynomial and embedding handled by the engine has rational
//! coefficients, and ideal deficiency is invariant under the field extension
//! `ℚ → ℝ`.

mod cyclotomic;
mod primefield;
mod rational;

pub use cyclotomic::{cyclotomic_polynomial, euler_phi, CyclotomicElem};
pub use primefield::{is_prime_u64, PrimeFieldElem, DEFAULT_MODULUS};
pub use rational::{parse_rational, rat, rat_int, Rational};

use thiserror::Error;

/// Errors from exact arithmetic.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ArithError {
    /// Two cyclotomic elements of different orders were combined directly.
    /// Callers must unify orders first via [`CyclotomicElem::embed`].
    #[error("cyclotomic order mismatch: {0} vs {1}; embed into lcm({0},{1}) first")]
    OrderMismatch(u32, u32),
    /// `ℚ(ζ_M)` only embeds into `ℚ(ζ_L)` when `M` divides `L`.
    #[error("cannot embed Q(zeta_{from}) into Q(zeta_{to}): {from} does not divide {to}")]
    InvalidEmbedding { from: u32, to: u32 },
    /// Division by zero (field inverse of 0).
    #[error("division by zero")]
    DivisionByZero,
    /// A rational coefficient has a denominator divisible by the working
    /// modulus.  Retryable: pick a different prime.
    #[error("denominator divisible by modulus {modulus}; retry with another prime")]
    UnluckyModulus { modulus: u64 },
    /// A number literal failed to parse.
    #[error("malformed number `{0}`")]
    ParseNumber(String),
}
