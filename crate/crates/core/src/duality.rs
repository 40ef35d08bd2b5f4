//! Poincaré pairing, divisibility and ideal computations, all as exact
//! linear algebra inside a single degree.

use std::sync::Arc;

use num_traits::Zero;

use crate::algebra::GradedAlgebra;
use crate::element::Element;
use crate::error::{Error, Result};
use crate::linalg::{self, Echelon, SparseRow};
use crate::rational::Rational;

fn homogeneous_degree(v: &Element, what: &str) -> Result<Option<usize>> {
    if !v.is_homogeneous() {
        return Err(Error::DegreeMismatch(format!("{what} {v} is not homogeneous")));
    }
    Ok(v.degree())
}

/// `⟨a, b⟩`: the top coefficient of `a * b`. Zero elements pair to zero.
pub fn pairing(a: &Element, b: &Element) -> Result<Rational> {
    if !a.same_owner(b) {
        return Err(Error::OwnerMismatch);
    }
    let da = homogeneous_degree(a, "left argument")?;
    let db = homogeneous_degree(b, "right argument")?;
    if let (Some(da), Some(db)) = (da, db) {
        let top = a.algebra().top_degree();
        if da + db != top {
            return Err(Error::DegreeMismatch(format!(
                "pairing needs complementary degrees, got {da} + {db} != {top}"
            )));
        }
    }
    Ok(a.multiply(b)?.top_coefficient())
}

/// Matrix of `⟨basis(d)[i], basis(top - d)[j]⟩`, one sparse row per `i`.
pub fn pairing_matrix(algebra: &Arc<GradedAlgebra>, d: usize) -> Vec<SparseRow> {
    let top = algebra.top_degree();
    if d > top {
        return Vec::new();
    }
    let other = top - d;
    (0..algebra.dim(d))
        .map(|i| {
            (0..algebra.dim(other))
                .filter_map(|j| {
                    let prod = algebra.multiply_basis(d, i, other, j);
                    prod.into_iter().find(|(k, _)| *k == 0).map(|(_, c)| (j, c))
                })
                .collect()
        })
        .collect()
}

/// True iff every pairing matrix is square and invertible.
pub fn is_nondegenerate(algebra: &Arc<GradedAlgebra>) -> bool {
    let top = algebra.top_degree();
    (0..=top).all(|d| {
        let n = algebra.dim(d);
        n == algebra.dim(top - d) && linalg::rank(pairing_matrix(algebra, d), n) == n
    })
}

/// Rows of the multiplication-by-`g` map from degree `source` into degree
/// `source + deg g`: entry `(r, k)` is the coefficient of basis `r` in `g * basis_k`.
fn multiplication_equations(g: &Element, source: usize) -> Vec<SparseRow> {
    let alg = g.algebra();
    let gd = g.degree().unwrap_or(0);
    let target = source + gd;
    let mut rows: Vec<SparseRow> = vec![SparseRow::new(); alg.dim(target)];
    for k in 0..alg.dim(source) {
        let col = g * &Element::basis(alg, source, k);
        for (r, c) in col.row(target) {
            rows[r].insert(k, c);
        }
    }
    rows
}

/// A witness `w` with `g * w = v`, if one exists.
pub fn is_divisible(v: &Element, g: &Element) -> Result<Option<Element>> {
    if !v.same_owner(g) {
        return Err(Error::OwnerMismatch);
    }
    let alg = v.algebra();
    let gd = homogeneous_degree(g, "divisor")?
        .ok_or_else(|| Error::InvalidParameter("divisor must be nonzero".into()))?;
    let vd = match homogeneous_degree(v, "dividend")? {
        None => return Ok(Some(Element::zero(alg))),
        Some(d) => d,
    };
    if vd < gd {
        return Ok(None);
    }
    let source = vd - gd;
    let rows = multiplication_equations(g, source);
    let rhs: Vec<Rational> = (0..alg.dim(vd)).map(|r| v.row(vd).get(&r).cloned().unwrap_or_else(Rational::zero)).collect();
    let solution = linalg::solve(&rows, &rhs, alg.dim(source));
    Ok(solution.map(|x| Element::from_row(alg, source, &linalg::dense_to_sparse(&x))))
}

fn ideal_echelon(algebra: &Arc<GradedAlgebra>, generators: &[Element], d: usize) -> Result<Echelon> {
    let mut ech = Echelon::new(algebra.dim(d));
    for g in generators {
        if !Arc::ptr_eq(g.algebra(), algebra) {
            return Err(Error::OwnerMismatch);
        }
        let gd = match homogeneous_degree(g, "ideal generator")? {
            None => continue,
            Some(gd) => gd,
        };
        if gd > d {
            continue;
        }
        for k in 0..algebra.dim(d - gd) {
            let prod = &Element::basis(algebra, d - gd, k) * g;
            ech.insert(prod.row(d));
        }
    }
    Ok(ech)
}

/// Echelonized basis of the degree-`d` piece of the ideal generated by `generators`.
pub fn ideal_basis_in_degree(
    algebra: &Arc<GradedAlgebra>,
    generators: &[Element],
    d: usize,
) -> Result<Vec<Element>> {
    let ech = ideal_echelon(algebra, generators, d)?;
    Ok(ech.rref_rows().into_iter().map(|row| Element::from_row(algebra, d, row)).collect())
}

/// Membership of a homogeneous `v` in the ideal generated by `generators`.
pub fn ideal_contains(v: &Element, generators: &[Element]) -> Result<bool> {
    let d = match homogeneous_degree(v, "element")? {
        None => return Ok(true),
        Some(d) => d,
    };
    let ech = ideal_echelon(v.algebra(), generators, d)?;
    Ok(ech.contains(&v.row(d)))
}

/// A `u` in the ideal, of complementary degree, with `⟨v, u⟩ != 0`.
/// Returns `None` exactly when `v` is orthogonal to the whole ideal.
pub fn pairs_nontrivially_with_ideal(v: &Element, generators: &[Element]) -> Result<Option<Element>> {
    let alg = v.algebra();
    let vd = match homogeneous_degree(v, "element")? {
        None => return Ok(None),
        Some(d) => d,
    };
    if vd > alg.top_degree() {
        return Ok(None);
    }
    for u in ideal_basis_in_degree(alg, generators, alg.top_degree() - vd)? {
        if !pairing(v, &u)?.is_zero() {
            return Ok(Some(u));
        }
    }
    Ok(None)
}
