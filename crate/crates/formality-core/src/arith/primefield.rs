//! Prime-field elements for the fast modular rank path.
//!
//! A [`PrimeFieldElem`] is a residue in `[0, p)` tagged with its modulus.
//! Mixing moduli is a programming error and panics; converting a rational
//! whose denominator vanishes mod `p` is a *retryable* condition surfaced as
//! [`ArithError::UnluckyModulus`], because it only means the chosen prime was
//! unlucky for this particular input.

use super::{ArithError, Rational};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};

/// Default modulus for modular rank computations: the Mersenne prime `2³¹−1`.
/// Products of two residues fit comfortably in `u128` intermediate math.
pub const DEFAULT_MODULUS: u64 = 2_147_483_647;

/// An element of the prime field `𝔽_p`.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct PrimeFieldElem {
    residue: u64,
    modulus: u64,
}

impl PrimeFieldElem {
    /// Reduces an arbitrary signed integer into `[0, p)`.
    pub fn new(value: i128, modulus: u64) -> Self {
        assert!(modulus >= 2, "modulus must be at least 2");
        let p = modulus as i128;
        let mut r = value % p;
        if r < 0 {
            r += p;
        }
        Self {
            residue: r as u64,
            modulus,
        }
    }

    pub fn zero(modulus: u64) -> Self {
        Self::new(0, modulus)
    }

    pub fn one(modulus: u64) -> Self {
        Self::new(1, modulus)
    }

    /// Image of an exact rational in `𝔽_p`.
    ///
    /// Errors with [`ArithError::UnluckyModulus`] when `p` divides the
    /// denominator, in which case the caller should retry with another prime.
    pub fn from_rational(value: &Rational, modulus: u64) -> Result<Self, ArithError> {
        let p = BigInt::from(modulus);
        let num = value.numer().mod_floor(&p);
        let den = value.denom().mod_floor(&p);
        if den.is_zero() {
            return Err(ArithError::UnluckyModulus { modulus });
        }
        debug_assert!(!num.is_negative() && !den.is_negative());
        let num = Self::new(num.to_i128().expect("residue fits"), modulus);
        let den = Self::new(den.to_i128().expect("residue fits"), modulus);
        Ok(num.mul(den.inv().expect("nonzero residue")))
    }

    pub fn residue(&self) -> u64 {
        self.residue
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn is_zero(&self) -> bool {
        self.residue == 0
    }

    fn check(&self, rhs: &Self) {
        assert_eq!(
            self.modulus, rhs.modulus,
            "prime-field modulus mismatch: {} vs {}",
            self.modulus, rhs.modulus
        );
    }

    pub fn add(self, rhs: Self) -> Self {
        self.check(&rhs);
        let sum = (self.residue as u128 + rhs.residue as u128) % self.modulus as u128;
        Self {
            residue: sum as u64,
            modulus: self.modulus,
        }
    }

    pub fn sub(self, rhs: Self) -> Self {
        self.check(&rhs);
        let p = self.modulus as u128;
        let diff = (p + self.residue as u128 - rhs.residue as u128) % p;
        Self {
            residue: diff as u64,
            modulus: self.modulus,
        }
    }

    pub fn mul(self, rhs: Self) -> Self {
        self.check(&rhs);
        let prod = (self.residue as u128 * rhs.residue as u128) % self.modulus as u128;
        Self {
            residue: prod as u64,
            modulus: self.modulus,
        }
    }

    pub fn neg(self) -> Self {
        if self.residue == 0 {
            self
        } else {
            Self {
                residue: self.modulus - self.residue,
                modulus: self.modulus,
            }
        }
    }

    /// `self^exp` by binary exponentiation.
    pub fn pow(self, mut exp: u64) -> Self {
        let mut base = self;
        let mut acc = Self::one(self.modulus);
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc.mul(base);
            }
            base = base.mul(base);
            exp >>= 1;
        }
        acc
    }

    /// Multiplicative inverse; `None` for zero.  Uses Fermat's little theorem,
    /// so the modulus must genuinely be prime.
    pub fn inv(self) -> Option<Self> {
        if self.residue == 0 {
            None
        } else {
            Some(self.pow(self.modulus - 2))
        }
    }
}

/// Deterministic Miller–Rabin primality test, exact for every `u64`.
///
/// The fixed witness set `{2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}` is
/// known to have no strong pseudoprime below `3.3 · 10²⁴ > 2⁶⁴`.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == p {
            return true;
        }
        if n % p == 0 {
            return false;
        }
    }
    let mut d = n - 1;
    let mut s = 0u32;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    let pow_mod = |base: u64, mut exp: u64| -> u64 {
        let m = n as u128;
        let mut acc: u128 = 1;
        let mut b = base as u128 % m;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc * b % m;
            }
            b = b * b % m;
            exp >>= 1;
        }
        acc as u64
    };
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = (x as u128 * x as u128 % n as u128) as u64;
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}
