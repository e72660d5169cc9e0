//! Sparse echelon kernels behind the rank certificates.
//!
//! Two implementations of the same incremental interface: an exact one over
//! the integers (fraction-free row combinations with content removal, so no
//! rounding and no coefficient blow-up beyond what the minors force), and a
//! fast one over a prime field.  Rows are sparse vectors sorted by column
//! index; inserting a row reduces it against the current pivots and reports
//! whether the rank grew.  Processing rows in a fixed order therefore yields
//! reproducible pivot columns.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use std::collections::BTreeMap;

use crate::arith::{ArithError, PrimeFieldElem, Rational};

/// Sparse integer row: strictly increasing column indices, nonzero entries.
pub type IntRow = Vec<(usize, BigInt)>;

/// Sparse row over `ℤ/p`: strictly increasing column indices, entries in
/// `1..p`.
pub type ModRow = Vec<(usize, u64)>;

/// Clears denominators and removes the integer content, turning a sparse
/// rational row into a primitive integer row spanning the same line.
pub fn primitive_row(entries: &[(usize, Rational)]) -> IntRow {
    let mut denom_lcm = BigInt::one();
    for (_, value) in entries {
        denom_lcm = denom_lcm.lcm(value.denom());
    }
    let mut row: IntRow = entries
        .iter()
        .filter(|(_, value)| !value.is_zero())
        .map(|(col, value)| (*col, value.numer() * (&denom_lcm / value.denom())))
        .collect();
    let mut content = BigInt::zero();
    for (_, value) in &row {
        content = content.gcd(value);
    }
    if content > BigInt::one() {
        for (_, value) in &mut row {
            *value = &*value / &content;
        }
    }
    row
}

/// Reduces a sparse rational row modulo `p`.  Fails when a denominator is
/// divisible by `p`, in which case the caller should retry with another prime.
pub fn modular_row(entries: &[(usize, Rational)], modulus: u64) -> Result<ModRow, ArithError> {
    let mut row = Vec::with_capacity(entries.len());
    for (col, value) in entries {
        let residue = PrimeFieldElem::from_rational(value, modulus)?;
        if !residue.is_zero() {
            row.push((*col, residue.residue()));
        }
    }
    Ok(row)
}

/// Returns `c_a·a − c_b·b` for sparse rows sorted by column index.
fn combine_int(a: &IntRow, c_a: &BigInt, b: &IntRow, c_b: &BigInt) -> IntRow {
    let mut out = IntRow::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let next = match (a.get(i), b.get(j)) {
            (Some((ca, va)), Some((cb, vb))) if ca == cb => {
                i += 1;
                j += 1;
                (*ca, c_a * va - c_b * vb)
            }
            (Some((ca, va)), Some((cb, _))) if ca < cb => {
                i += 1;
                (*ca, c_a * va)
            }
            (Some(_), Some((cb, vb))) => {
                j += 1;
                (*cb, -(c_b * vb))
            }
            (Some((ca, va)), None) => {
                i += 1;
                (*ca, c_a * va)
            }
            (None, Some((cb, vb))) => {
                j += 1;
                (*cb, -(c_b * vb))
            }
            (None, None) => unreachable!(),
        };
        if !next.1.is_zero() {
            out.push(next);
        }
    }
    out
}

/// Divides out the content and makes the leading entry positive.
fn normalize_int(row: &mut IntRow) {
    let mut content = BigInt::zero();
    for (_, value) in row.iter() {
        content = content.gcd(value);
    }
    if content.is_zero() {
        return;
    }
    if row[0].1.is_negative() {
        content = -content;
    }
    if !content.is_one() {
        for (_, value) in row.iter_mut() {
            *value = &*value / &content;
        }
    }
}

/// Incremental exact echelon form over the integers.
#[derive(Debug, Default)]
pub struct IntEchelon {
    rows: BTreeMap<usize, IntRow>,
}

impl IntEchelon {
    pub fn new() -> Self {
        Self::default()
    }

    /// Reduces `row` against the pivots and keeps it if independent.
    /// Returns `true` exactly when the rank grew.
    pub fn insert(&mut self, mut row: IntRow) -> bool {
        loop {
            let Some((lead, _)) = row.first() else {
                return false;
            };
            match self.rows.get(lead) {
                Some(pivot) => {
                    let a = &pivot[0].1;
                    let b = &row[0].1;
                    let g = a.gcd(b);
                    row = combine_int(&row, &(a / &g), pivot, &(b / &g));
                    normalize_int(&mut row);
                }
                None => {
                    normalize_int(&mut row);
                    self.rows.insert(row[0].0, row);
                    return true;
                }
            }
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn pivot_columns(&self) -> Vec<usize> {
        self.rows.keys().copied().collect()
    }
}

/// Incremental echelon form over `ℤ/p`; pivot rows are scaled to lead with 1.
#[derive(Debug)]
pub struct ModEchelon {
    modulus: u64,
    rows: BTreeMap<usize, ModRow>,
}

impl ModEchelon {
    pub fn new(modulus: u64) -> Self {
        Self {
            modulus,
            rows: BTreeMap::new(),
        }
    }

    fn combine(&self, row: &ModRow, pivot: &ModRow, factor: u64) -> ModRow {
        // row − factor·pivot, where pivot leads with 1.
        let p = self.modulus as u128;
        let mut out = ModRow::with_capacity(row.len() + pivot.len());
        let (mut i, mut j) = (0, 0);
        while i < row.len() || j < pivot.len() {
            let next = match (row.get(i), pivot.get(j)) {
                (Some((ca, va)), Some((cb, vb))) if ca == cb => {
                    i += 1;
                    j += 1;
                    let sub = (factor as u128 * *vb as u128) % p;
                    (*ca, ((*va as u128 + p - sub) % p) as u64)
                }
                (Some((ca, va)), Some((cb, _))) if ca < cb => {
                    i += 1;
                    (*ca, *va)
                }
                (Some(_), Some((cb, vb))) => {
                    j += 1;
                    let sub = (factor as u128 * *vb as u128) % p;
                    (*cb, ((p - sub) % p) as u64)
                }
                (Some((ca, va)), None) => {
                    i += 1;
                    (*ca, *va)
                }
                (None, Some((cb, vb))) => {
                    j += 1;
                    let sub = (factor as u128 * *vb as u128) % p;
                    (*cb, ((p - sub) % p) as u64)
                }
                (None, None) => unreachable!(),
            };
            if next.1 != 0 {
                out.push(next);
            }
        }
        out
    }

    /// Reduces `row` against the pivots and keeps it if independent.
    pub fn insert(&mut self, mut row: ModRow) -> bool {
        loop {
            let Some((lead, coeff)) = row.first().cloned() else {
                return false;
            };
            match self.rows.get(&lead) {
                Some(pivot) => {
                    let pivot = pivot.clone();
                    row = self.combine(&row, &pivot, coeff);
                }
                None => {
                    let inv = PrimeFieldElem::new(coeff as i128, self.modulus)
                        .inv()
                        .expect("leading entry is nonzero")
                        .residue();
                    let p = self.modulus as u128;
                    for (_, value) in &mut row {
                        *value = ((*value as u128 * inv as u128) % p) as u64;
                    }
                    self.rows.insert(lead, row);
                    return true;
                }
            }
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn pivot_columns(&self) -> Vec<usize> {
        self.rows.keys().copied().collect()
    }
}
