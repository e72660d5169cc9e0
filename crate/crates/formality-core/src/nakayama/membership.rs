//! Membership in a finitely generated graded subalgebra.
//!
//! Whether a homogeneous `target` lies in the ℚ-subalgebra generated by
//! homogeneous `basis` elements is a finite linear question: only monomials
//! in the basis elements whose weighted degrees sum to `deg target` can
//! contribute.  The decision procedure enumerates those products, reduces
//! the target against their span, and — when the answer is yes — returns the
//! explicit combination as a checkable certificate.

use std::collections::HashMap;

use crate::arith::Rational;
use crate::poly::{monomials_of_degree, Monomial, PolyError, Polynomial};
use num_traits::Zero;

use super::NakayamaError;

/// A verified expression of the target as a polynomial in the basis:
/// `target = Σ coeff · ∏ basisᵢ^{eᵢ}`.
#[derive(Debug, Clone, PartialEq)]
pub struct MembershipCertificate {
    /// Pairs of (exponent vector over the basis, coefficient), with nonzero
    /// coefficients, sorted by exponent vector.
    pub combination: Vec<(Vec<u32>, Rational)>,
}

impl MembershipCertificate {
    /// Recomputes the combination and compares it with the target.
    pub fn verify(
        &self,
        basis: &[Polynomial<Rational>],
        target: &Polynomial<Rational>,
    ) -> Result<bool, NakayamaError> {
        let mut sum = Polynomial::zero(target.vars());
        for (exponents, coeff) in &self.combination {
            let mut product = Polynomial::constant(target.vars(), coeff.clone());
            for (b, e) in basis.iter().zip(exponents) {
                if *e > 0 {
                    product = product.mul(&b.pow(*e))?;
                }
            }
            sum = sum.add(&product)?;
        }
        Ok(sum == *target)
    }
}

/// Outcome of a membership test.
#[derive(Debug, Clone, PartialEq)]
pub enum Membership {
    Member(MembershipCertificate),
    NotMember,
}

impl Membership {
    pub fn is_member(&self) -> bool {
        matches!(self, Membership::Member(_))
    }
}

/// Gaussian elimination over ℚ that remembers how each pivot row was formed
/// from the inserted rows, so a successful reduction of the target can be
/// rewound into explicit coefficients.
#[derive(Default)]
struct TrackedEchelon {
    /// lead column → (row scaled to lead with 1, combination over row ids).
    pivots: std::collections::BTreeMap<usize, (Vec<(usize, Rational)>, Vec<(usize, Rational)>)>,
}

fn add_scaled(
    acc: &mut Vec<(usize, Rational)>,
    other: &[(usize, Rational)],
    factor: &Rational,
) {
    let mut merged = Vec::with_capacity(acc.len() + other.len());
    let (mut i, mut j) = (0, 0);
    while i < acc.len() || j < other.len() {
        let next = match (acc.get(i), other.get(j)) {
            (Some((ca, va)), Some((cb, vb))) if ca == cb => {
                i += 1;
                j += 1;
                (*ca, va + factor * vb)
            }
            (Some((ca, va)), Some((cb, _))) if ca < cb => {
                i += 1;
                (*ca, va.clone())
            }
            (Some(_), Some((cb, vb))) => {
                j += 1;
                (*cb, factor * vb)
            }
            (Some((ca, va)), None) => {
                i += 1;
                (*ca, va.clone())
            }
            (None, Some((cb, vb))) => {
                j += 1;
                (*cb, factor * vb)
            }
            (None, None) => unreachable!(),
        };
        if !next.1.is_zero() {
            merged.push(next);
        }
    }
    *acc = merged;
}

impl TrackedEchelon {
    fn insert(&mut self, mut row: Vec<(usize, Rational)>, id: usize) {
        let mut combo = vec![(id, Rational::from_integer(1.into()))];
        loop {
            let Some((lead, coeff)) = row.first().cloned() else {
                return;
            };
            match self.pivots.get(&lead) {
                Some((pivot_row, pivot_combo)) => {
                    let factor = -coeff;
                    let (pivot_row, pivot_combo) = (pivot_row.clone(), pivot_combo.clone());
                    add_scaled(&mut row, &pivot_row, &factor);
                    add_scaled(&mut combo, &pivot_combo, &factor);
                }
                None => {
                    let inv = Rational::from_integer(1.into()) / coeff;
                    for (_, v) in &mut row {
                        *v = &*v * &inv;
                    }
                    for (_, v) in &mut combo {
                        *v = &*v * &inv;
                    }
                    self.pivots.insert(lead, (row, combo));
                    return;
                }
            }
        }
    }

    /// Reduces the target against the pivots.  Returns the combination of
    /// inserted rows that equals the target, or `None` if the target is
    /// outside the span.
    fn express(&self, mut row: Vec<(usize, Rational)>) -> Option<Vec<(usize, Rational)>> {
        let mut combo: Vec<(usize, Rational)> = Vec::new();
        while let Some((lead, coeff)) = row.first().cloned() {
            let (pivot_row, pivot_combo) = self.pivots.get(&lead)?;
            add_scaled(&mut row, pivot_row, &-coeff.clone());
            add_scaled(&mut combo, pivot_combo, &coeff);
        }
        Some(combo)
    }
}

/// All exponent vectors `e` with `Σ eᵢ·dᵢ = total`, in a fixed order.
fn exponent_vectors(degrees: &[u32], total: u32) -> Vec<Vec<u32>> {
    fn go(degrees: &[u32], pos: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if pos == degrees.len() {
            if left == 0 {
                out.push(cur.clone());
            }
            return;
        }
        for e in (0..=left / degrees[pos]).rev() {
            cur.push(e);
            go(degrees, pos + 1, left - e * degrees[pos], cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(degrees, 0, total, &mut Vec::new(), &mut out);
    out
}

/// Decides whether `target` lies in the subalgebra generated by `basis`.
///
/// All inputs must be homogeneous polynomials in one ring; basis elements
/// must have positive degree (zero ones are ignored).  A positive answer
/// comes with a certificate expressing the target in the basis.
pub fn subalgebra_membership(
    basis: &[Polynomial<Rational>],
    target: &Polynomial<Rational>,
) -> Result<Membership, NakayamaError> {
    let ring = target.vars();
    let mut effective: Vec<(usize, u32, &Polynomial<Rational>)> = Vec::new();
    for (index, b) in basis.iter().enumerate() {
        if b.vars() != ring {
            return Err(NakayamaError::RingMismatch { index });
        }
        if b.is_zero() {
            continue;
        }
        match b.homogeneous_degree() {
            None => return Err(NakayamaError::NotHomogeneous { index }),
            Some(0) => return Err(NakayamaError::ConstantBasisElement { index }),
            Some(d) => effective.push((index, d, b)),
        }
    }
    if target.is_zero() {
        return Ok(Membership::Member(MembershipCertificate {
            combination: Vec::new(),
        }));
    }
    let degree = target
        .homogeneous_degree()
        .ok_or(NakayamaError::Poly(PolyError::NotHomogeneous))?;

    let degrees: Vec<u32> = effective.iter().map(|(_, d, _)| *d).collect();
    let vectors = exponent_vectors(&degrees, degree);

    // Precompute the powers each basis element actually needs.
    let mut powers: Vec<Vec<Polynomial<Rational>>> = Vec::with_capacity(effective.len());
    for (i, (_, d, b)) in effective.iter().enumerate() {
        let max = vectors.iter().map(|v| v[i]).max().unwrap_or(0).max(
            // Even without vectors, d divides nothing; keep the unit power.
            u32::from(*d == 0),
        );
        let mut pows = Vec::with_capacity(max as usize + 1);
        pows.push(Polynomial::one(ring));
        for e in 1..=max {
            let prev = &pows[(e - 1) as usize];
            pows.push(prev.mul(b)?);
        }
        powers.push(pows);
    }

    let columns = monomials_of_degree(ring, degree);
    let index_of: HashMap<&Monomial, usize> =
        columns.iter().enumerate().map(|(i, m)| (m, i)).collect();
    let sparse_row = |p: &Polynomial<Rational>| -> Vec<(usize, Rational)> {
        let mut entries: Vec<(usize, Rational)> = p
            .terms()
            .map(|(m, c)| (*index_of.get(m).expect("monomial of slice degree"), c.clone()))
            .collect();
        entries.sort_by_key(|(c, _)| *c);
        entries
    };

    let mut echelon = TrackedEchelon::default();
    for (id, vector) in vectors.iter().enumerate() {
        let mut product = Polynomial::one(ring);
        for (i, e) in vector.iter().enumerate() {
            if *e > 0 {
                product = product.mul(&powers[i][*e as usize])?;
            }
        }
        if !product.is_zero() {
            echelon.insert(sparse_row(&product), id);
        }
    }

    match echelon.express(sparse_row(target)) {
        None => Ok(Membership::NotMember),
        Some(combo) => {
            let mut combination: Vec<(Vec<u32>, Rational)> = combo
                .into_iter()
                .map(|(id, coeff)| {
                    let mut full = vec![0u32; basis.len()];
                    for ((index, _, _), e) in effective.iter().zip(&vectors[id]) {
                        full[*index] = *e;
                    }
                    (full, coeff)
                })
                .collect();
            combination.sort_by(|a, b| a.0.cmp(&b.0));
            let certificate = MembershipCertificate { combination };
            debug_assert!(certificate.verify(basis, target).unwrap_or(false));
            Ok(Membership::Member(certificate))
        }
    }
}
