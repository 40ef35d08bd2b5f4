//! Exact sparse row reduction over the rationals.
//!
//! [`Echelon`] keeps its rows in reduced row echelon form at all times: every
//! row has a leading 1 in its pivot column and zeros in every other pivot
//! column. The pivot of a row is its smallest nonzero column, so callers that
//! order columns from largest to smallest monomial get leading terms as pivots.
//!
//! [`rref_modular`] computes the same form through arithmetic modulo a prime
//! followed by rational reconstruction and an exact membership check.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::rational::Rational;

pub type SparseRow = BTreeMap<usize, Rational>;

/// `target += coeff * source`, dropping entries that cancel.
pub fn axpy(target: &mut SparseRow, coeff: &Rational, source: &SparseRow) {
    if coeff.is_zero() {
        return;
    }
    for (col, value) in source {
        let delta = coeff * value;
        match target.get_mut(col) {
            Some(entry) => {
                *entry += delta;
                if entry.is_zero() {
                    target.remove(col);
                }
            }
            None => {
                target.insert(*col, delta);
            }
        }
    }
}

#[derive(Debug, Clone)]
pub struct Echelon {
    ncols: usize,
    rows: Vec<SparseRow>,
    row_of_pivot: Vec<Option<usize>>,
}

impl Echelon {
    pub fn new(ncols: usize) -> Self {
        Echelon { ncols, rows: Vec::new(), row_of_pivot: vec![None; ncols] }
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn is_pivot(&self, col: usize) -> bool {
        self.row_of_pivot[col].is_some()
    }

    pub fn pivot_row(&self, col: usize) -> Option<&SparseRow> {
        self.row_of_pivot[col].map(|r| &self.rows[r])
    }

    /// Reduces `row` against the current pivots in place.
    pub fn reduce(&self, row: &mut SparseRow) {
        let hits: Vec<(usize, Rational)> = row
            .iter()
            .filter_map(|(c, v)| self.row_of_pivot[*c].map(|r| (r, v.clone())))
            .collect();
        for (r, coeff) in hits {
            axpy(row, &-coeff, &self.rows[r]);
        }
    }

    /// Adds a row to the span. Returns the new pivot column if the rank grew.
    pub fn insert(&mut self, mut row: SparseRow) -> Option<usize> {
        row.retain(|_, v| !v.is_zero());
        debug_assert!(row.keys().all(|c| *c < self.ncols));
        self.reduce(&mut row);
        let (&pivot, lead) = row.iter().next()?;
        if !lead.is_one() {
            let inv = lead.recip();
            for v in row.values_mut() {
                *v *= &inv;
            }
        }
        for existing in self.rows.iter_mut() {
            if let Some(c) = existing.get(&pivot).cloned() {
                axpy(existing, &-c, &row);
            }
        }
        self.row_of_pivot[pivot] = Some(self.rows.len());
        self.rows.push(row);
        Some(pivot)
    }

    pub fn pivot_columns(&self) -> Vec<usize> {
        (0..self.ncols).filter(|c| self.is_pivot(*c)).collect()
    }

    pub fn free_columns(&self) -> Vec<usize> {
        (0..self.ncols).filter(|c| !self.is_pivot(*c)).collect()
    }

    /// Rows of the reduced row echelon form, ordered by pivot column.
    pub fn rref_rows(&self) -> Vec<&SparseRow> {
        self.row_of_pivot.iter().flatten().map(|r| &self.rows[*r]).collect()
    }

    pub fn contains(&self, row: &SparseRow) -> bool {
        let mut row = row.clone();
        row.retain(|_, v| !v.is_zero());
        self.reduce(&mut row);
        row.is_empty()
    }
}

pub fn rank(rows: impl IntoIterator<Item = SparseRow>, ncols: usize) -> usize {
    let mut ech = Echelon::new(ncols);
    for row in rows {
        ech.insert(row);
    }
    ech.rank()
}

/// Solves `A x = b` for one particular solution (free variables set to zero).
///
/// `rows[i]` holds the nonzero entries of row `i` of `A` over `nvars` unknowns.
pub fn solve(rows: &[SparseRow], rhs: &[Rational], nvars: usize) -> Option<Vec<Rational>> {
    assert_eq!(rows.len(), rhs.len());
    let mut ech = Echelon::new(nvars + 1);
    for (row, b) in rows.iter().zip(rhs) {
        let mut aug = row.clone();
        if !b.is_zero() {
            aug.insert(nvars, b.clone());
        }
        if ech.insert(aug) == Some(nvars) {
            return None;
        }
    }
    let mut x = vec![Rational::zero(); nvars];
    for (col, slot) in x.iter_mut().enumerate() {
        if let Some(row) = ech.pivot_row(col) {
            if let Some(b) = row.get(&nvars) {
                *slot = b.clone();
            }
        }
    }
    Some(x)
}

const MODULUS: u64 = (1 << 61) - 1;

fn mul_mod(a: u64, b: u64) -> u64 {
    let x = a as u128 * b as u128;
    let mut r = (x as u64 & MODULUS) + (x >> 61) as u64;
    while r >= MODULUS {
        r -= MODULUS;
    }
    r
}

fn add_mod(a: u64, b: u64) -> u64 {
    let r = a + b;
    if r >= MODULUS {
        r - MODULUS
    } else {
        r
    }
}

fn inv_mod(a: u64) -> u64 {
    // Fermat: a^(p-2).
    let (mut base, mut exp, mut acc) = (a, MODULUS - 2, 1u64);
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base);
        }
        base = mul_mod(base, base);
        exp >>= 1;
    }
    acc
}

fn int_mod(value: &BigInt) -> u64 {
    if let Some(v) = value.to_i64() {
        return v.rem_euclid(MODULUS as i64) as u64;
    }
    let r = (value % BigInt::from(MODULUS)).abs().to_u64().expect("residue fits");
    if value.is_negative() && r != 0 {
        MODULUS - r
    } else {
        r
    }
}

fn rational_mod(value: &Rational) -> Option<u64> {
    let den = int_mod(value.denom());
    (den != 0).then(|| mul_mod(int_mod(value.numer()), inv_mod(den)))
}

/// The fraction `n/d` with `|n|, d < 2^30` congruent to `a`, if any.
fn reconstruct(a: u64) -> Option<Rational> {
    const BOUND: i128 = 1 << 30;
    let (mut r0, mut r1) = (MODULUS as i128, a as i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 >= BOUND {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    if t1 == 0 || t1.abs() >= BOUND {
        return None;
    }
    let value = Rational::new(BigInt::from(r1), BigInt::from(t1));
    (rational_mod(&value) == Some(a)).then_some(value)
}

/// Reduced row echelon form of the span of `rows`, computed modulo a prime and
/// lifted to the rationals. `None` when some entry does not lift or the lift
/// fails the check.
///
/// The check is exact: every input row must reduce to zero against the lifted
/// rows. The rank over the rationals is at least the rank modulo the prime,
/// so the two spans then coincide and the lift is the reduced form.
pub fn rref_modular(rows: &[SparseRow], ncols: usize) -> Option<Echelon> {
    let mut pivots: Vec<Option<Vec<u64>>> = vec![None; ncols];
    for row in rows {
        let mut dense = vec![0u64; ncols];
        for (c, v) in row {
            dense[*c] = rational_mod(v)?;
        }
        let mut lead = None;
        for col in 0..ncols {
            if dense[col] == 0 {
                continue;
            }
            match &pivots[col] {
                Some(p) => {
                    let factor = MODULUS - dense[col];
                    for k in col..ncols {
                        if p[k] != 0 {
                            dense[k] = add_mod(dense[k], mul_mod(factor, p[k]));
                        }
                    }
                }
                None => {
                    lead = Some(col);
                    break;
                }
            }
        }
        if let Some(col) = lead {
            let inv = inv_mod(dense[col]);
            for v in dense[col..].iter_mut() {
                *v = mul_mod(*v, inv);
            }
            pivots[col] = Some(dense);
        }
    }
    // Back-substitution, largest pivot first.
    let order: Vec<usize> = (0..ncols).rev().filter(|c| pivots[*c].is_some()).collect();
    for &col in &order {
        let source = pivots[col].take().expect("pivot");
        for &other in order.iter().filter(|o| **o < col) {
            let target = pivots[other].as_mut().expect("pivot");
            if target[col] == 0 {
                continue;
            }
            let factor = MODULUS - target[col];
            for k in col..ncols {
                if source[k] != 0 {
                    target[k] = add_mod(target[k], mul_mod(factor, source[k]));
                }
            }
        }
        pivots[col] = Some(source);
    }
    let mut ech = Echelon::new(ncols);
    for col in order.into_iter().rev() {
        let dense = pivots[col].as_ref().expect("pivot");
        let mut lifted = SparseRow::new();
        for (k, v) in dense.iter().enumerate().skip(col) {
            if *v != 0 {
                lifted.insert(k, reconstruct(*v)?);
            }
        }
        ech.row_of_pivot[col] = Some(ech.rows.len());
        ech.rows.push(lifted);
    }
    rows.iter().all(|row| ech.contains(row)).then_some(ech)
}

/// Reduced row echelon form of the span of `rows`: by [`rref_modular`] when
/// its lift succeeds, by exact elimination otherwise.
pub fn rref(rows: &[SparseRow], ncols: usize) -> Echelon {
    rref_modular(rows, ncols).unwrap_or_else(|| {
        let mut ech = Echelon::new(ncols);
        for row in rows {
            ech.insert(row.clone());
        }
        ech
    })
}

pub fn dense_to_sparse(values: &[Rational]) -> SparseRow {
    values
        .iter()
        .enumerate()
        .filter(|(_, v)| !v.is_zero())
        .map(|(i, v)| (i, v.clone()))
        .collect()
}
