//! Exact arithmetic in cyclotomic fields `ℚ(ζ_N)`.
//!
//! Elements are represented modulo the cyclotomic polynomial `Φ_N`, not
//! modulo `x^N − 1`: the latter is reducible, so residues mod `x^N − 1` do
//! not admit decisive zero tests, while `Φ_N` is the minimal polynomial of a
//! primitive `N`-th root of unity and makes the representation canonical.
//! Equality and zero-testing are therefore coefficient-wise.
//!
//! Different orders never mix implicitly: callers embed into a common order
//! (the lcm) with [`CyclotomicElem::embed`] before combining elements.

use super::{ArithError, Rational};
use crate::poly::{Monomial, Polynomial, VariableSet};
use num_bigint::BigInt;
use num_traits::{One, Zero};
use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

/// Euler's totient `φ(n)`, the degree of `Φ_n`.
pub fn euler_phi(n: u32) -> u32 {
    assert!(n >= 1);
    let mut phi = n;
    let mut m = n;
    let mut p = 2;
    while p * p <= m {
        if m % p == 0 {
            while m % p == 0 {
                m /= p;
            }
            phi -= phi / p;
        }
        p += 1;
    }
    if m > 1 {
        phi -= phi / m;
    }
    phi
}

fn divisors(n: u32) -> Vec<u32> {
    let mut ds = Vec::new();
    for d in 1..=n {
        if n % d == 0 {
            ds.push(d);
        }
    }
    ds
}

/// Exact quotient of dense integer polynomials; the divisor must be monic and
/// must divide exactly.  Coefficients ascending.
fn exact_div_monic(mut num: Vec<BigInt>, den: &[BigInt]) -> Vec<BigInt> {
    assert!(den.last().map(|c| c.is_one()).unwrap_or(false));
    let dn = den.len() - 1;
    assert!(num.len() >= den.len());
    let mut quot = vec![BigInt::zero(); num.len() - dn];
    for i in (0..quot.len()).rev() {
        let c = num[i + dn].clone();
        if !c.is_zero() {
            for (j, dc) in den.iter().enumerate() {
                num[i + j] -= &c * dc;
            }
        }
        quot[i] = c;
    }
    assert!(num.iter().all(BigInt::is_zero), "division was not exact");
    quot
}

/// Dense coefficients of `Φ_n`, ascending, memoized.
///
/// Computed by the divisor formula with exact division:
/// `Φ_n = (x^n − 1) / ∏_{d|n, d<n} Φ_d`.
fn phi_min_poly(n: u32) -> Arc<Vec<BigInt>> {
    static CACHE: OnceLock<Mutex<HashMap<u32, Arc<Vec<BigInt>>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(hit) = cache.lock().unwrap().get(&n) {
        return hit.clone();
    }
    // x^n − 1
    let mut poly = vec![BigInt::zero(); n as usize + 1];
    poly[0] = -BigInt::one();
    poly[n as usize] = BigInt::one();
    for d in divisors(n) {
        if d < n {
            let phi_d = phi_min_poly(d);
            poly = exact_div_monic(poly, &phi_d);
        }
    }
    debug_assert_eq!(poly.len() as u32 - 1, euler_phi(n));
    let arc = Arc::new(poly);
    cache.lock().unwrap().insert(n, arc.clone());
    arc
}

/// The `N`-th cyclotomic polynomial `Φ_N` as a univariate polynomial in `x`
/// (integer coefficients).
pub fn cyclotomic_polynomial(n: u32) -> Polynomial<Rational> {
    assert!(n >= 1, "cyclotomic order must be positive");
    let coeffs = phi_min_poly(n);
    let vars = VariableSet::standard(vec!["x"]);
    let terms = coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(e, c)| {
        let mono = Monomial::new(&vars, vec![e as u32]).expect("one exponent");
        (mono, Rational::from_integer(c.clone()))
    });
    Polynomial::from_terms(&vars, terms).expect("canonical terms")
}

/// Reduces dense ascending coefficients modulo `Φ_n`, returning exactly
/// `φ(n)` coefficients.
fn reduce_mod_phi(mut coeffs: Vec<Rational>, n: u32) -> Vec<Rational> {
    let phi = phi_min_poly(n);
    let deg = phi.len() - 1;
    if coeffs.len() > deg {
        for i in (deg..coeffs.len()).rev() {
            let c = std::mem::replace(&mut coeffs[i], Rational::zero());
            if !c.is_zero() {
                // x^i ≡ x^{i−deg} · (x^deg − Φ_n)  (mod Φ_n)
                for (j, pc) in phi.iter().take(deg).enumerate() {
                    let delta = &c * Rational::from_integer(pc.clone());
                    coeffs[i - deg + j] -= delta;
                }
            }
        }
    }
    coeffs.resize(deg, Rational::zero());
    coeffs
}

/// An exact element of `ℚ(ζ_N)`: a polynomial in `ζ_N` of degree `< φ(N)`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CyclotomicElem {
    order: u32,
    /// Exactly `φ(order)` coefficients, ascending in powers of `ζ`.
    coeffs: Vec<Rational>,
}

impl CyclotomicElem {
    pub fn zero(order: u32) -> Self {
        assert!(order >= 1);
        Self {
            order,
            coeffs: vec![Rational::zero(); euler_phi(order) as usize],
        }
    }

    pub fn one(order: u32) -> Self {
        Self::from_rational(order, Rational::one())
    }

    /// The rational constant `c` viewed inside `ℚ(ζ_N)`.
    pub fn from_rational(order: u32, c: Rational) -> Self {
        let mut elem = Self::zero(order);
        elem.coeffs[0] = c;
        elem
    }

    /// `ζ_N^k`, with `k` arbitrary (reduced mod `N`).
    pub fn root_power(order: u32, k: i64) -> Self {
        assert!(order >= 1);
        let e = k.rem_euclid(order as i64) as usize;
        let mut dense = vec![Rational::zero(); e + 1];
        dense[e] = Rational::one();
        Self {
            order,
            coeffs: reduce_mod_phi(dense, order),
        }
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    /// Coefficients over the power basis `1, ζ, …, ζ^{φ(N)−1}`.
    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// `Some(c)` when the element is the rational constant `c`.
    pub fn try_rational(&self) -> Option<Rational> {
        if self.coeffs[1..].iter().all(|c| c.is_zero()) {
            Some(self.coeffs[0].clone())
        } else {
            None
        }
    }

    fn check_order(&self, rhs: &Self) -> Result<(), ArithError> {
        if self.order == rhs.order {
            Ok(())
        } else {
            Err(ArithError::OrderMismatch(self.order, rhs.order))
        }
    }

    pub fn add(&self, rhs: &Self) -> Result<Self, ArithError> {
        self.check_order(rhs)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&rhs.coeffs)
            .map(|(a, b)| a + b)
            .collect();
        Ok(Self {
            order: self.order,
            coeffs,
        })
    }

    pub fn sub(&self, rhs: &Self) -> Result<Self, ArithError> {
        self.check_order(rhs)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&rhs.coeffs)
            .map(|(a, b)| a - b)
            .collect();
        Ok(Self {
            order: self.order,
            coeffs,
        })
    }

    pub fn mul(&self, rhs: &Self) -> Result<Self, ArithError> {
        self.check_order(rhs)?;
        let mut dense = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len()];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                dense[i + j] += a * b;
            }
        }
        Ok(Self {
            order: self.order,
            coeffs: reduce_mod_phi(dense, self.order),
        })
    }

    pub fn neg(&self) -> Self {
        Self {
            order: self.order,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self {
            order: self.order,
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    /// `self^exp` by binary exponentiation (order preserved).
    pub fn pow(&self, mut exp: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(self.order);
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc.mul(&base).expect("same order");
            }
            base = base.mul(&base).expect("same order");
            exp >>= 1;
        }
        acc
    }

    /// Multiplicative inverse via the extended Euclidean algorithm against
    /// `Φ_N` (which is irreducible, so every nonzero element is invertible).
    pub fn inv(&self) -> Result<Self, ArithError> {
        if self.is_zero() {
            return Err(ArithError::DivisionByZero);
        }
        let phi: Vec<Rational> = phi_min_poly(self.order)
            .iter()
            .map(|c| Rational::from_integer(c.clone()))
            .collect();
        // Invariant: r0 = t0·a + s0·Φ, r1 = t1·a + s1·Φ (s never materialized).
        let mut r0 = phi;
        let mut r1 = trim(self.coeffs.clone());
        let mut t0 = vec![Rational::zero()];
        let mut t1 = vec![Rational::one()];
        while !r1.is_empty() {
            let (q, rem) = divmod(&r0, &r1);
            let t2 = sub_poly(&t0, &mul_poly(&q, &t1));
            r0 = r1;
            r1 = rem;
            t0 = t1;
            t1 = t2;
        }
        // r0 is a nonzero constant: gcd(a, Φ) up to scaling.
        assert_eq!(r0.len(), 1, "cyclotomic polynomial must be coprime to a nonzero residue");
        let scale = r0[0].recip();
        let dense: Vec<Rational> = t0.iter().map(|c| c * &scale).collect();
        Ok(Self {
            order: self.order,
            coeffs: reduce_mod_phi(dense, self.order),
        })
    }

    /// Embeds `ℚ(ζ_M)` into `ℚ(ζ_L)` for `M | L` by exponent scaling
    /// (`ζ_M = ζ_L^{L/M}`).
    pub fn embed(&self, new_order: u32) -> Result<Self, ArithError> {
        if new_order % self.order != 0 {
            return Err(ArithError::InvalidEmbedding {
                from: self.order,
                to: new_order,
            });
        }
        let s = (new_order / self.order) as usize;
        let mut dense = vec![Rational::zero(); (self.coeffs.len() - 1) * s + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                dense[i * s] = c.clone();
            }
        }
        Ok(Self {
            order: new_order,
            coeffs: reduce_mod_phi(dense, new_order),
        })
    }

    /// Sums elements of a common order; `zero(order)` for an empty iterator.
    pub fn sum<'a>(
        order: u32,
        items: impl IntoIterator<Item = &'a CyclotomicElem>,
    ) -> Result<Self, ArithError> {
        let mut acc = Self::zero(order);
        for item in items {
            acc = acc.add(item)?;
        }
        Ok(acc)
    }
}

/// Strips trailing zeros (dense polynomial helpers for `inv`).
fn trim(mut v: Vec<Rational>) -> Vec<Rational> {
    while v.last().map(|c| c.is_zero()).unwrap_or(false) {
        v.pop();
    }
    v
}

fn mul_poly(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![Rational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(out)
}

fn sub_poly(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let mut out = vec![Rational::zero(); a.len().max(b.len())];
    for (i, x) in a.iter().enumerate() {
        out[i] += x;
    }
    for (i, y) in b.iter().enumerate() {
        out[i] -= y;
    }
    trim(out)
}

/// Division with remainder for dense trimmed polynomials, divisor nonzero.
fn divmod(num: &[Rational], den: &[Rational]) -> (Vec<Rational>, Vec<Rational>) {
    assert!(!den.is_empty());
    if num.len() < den.len() {
        return (Vec::new(), num.to_vec());
    }
    let mut rem = num.to_vec();
    let mut quot = vec![Rational::zero(); num.len() - den.len() + 1];
    let lead = den.last().unwrap();
    for i in (0..quot.len()).rev() {
        let c = &rem[i + den.len() - 1] / lead;
        if !c.is_zero() {
            for (j, dc) in den.iter().enumerate() {
                let delta = &c * dc;
                rem[i + j] -= delta;
            }
        }
        quot[i] = c;
    }
    (trim(quot), trim(rem))
}

impl fmt::Display for CyclotomicElem {
    /// Canonical `a0 + a1*z + a2*z^2 + …` form over the power basis of
    /// `ζ_N` (written `z`), omitting zero terms and unit coefficients.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let negative = c < &Rational::zero();
            let abs = if negative { -c } else { c.clone() };
            if first {
                if negative {
                    write!(f, "-")?;
                }
                first = false;
            } else if negative {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let unit = abs.is_one();
            match (e, unit) {
                (0, _) => write!(f, "{abs}")?,
                (1, true) => write!(f, "z")?,
                (1, false) => write!(f, "{abs}*z")?,
                (_, true) => write!(f, "z^{e}")?,
                (_, false) => write!(f, "{abs}*z^{e}")?,
            }
        }
        Ok(())
    }
}
