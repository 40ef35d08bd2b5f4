use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_traits::{One, Zero};
use rand::Rng;

use crate::algebra::{GradedAlgebra, SparseVec};
use crate::error::{Error, Result};
use crate::linalg::SparseRow;
use crate::monomial::Monomial;
use crate::rational::{self, Rational};

/// A class in a [`GradedAlgebra`], stored as sparse coordinates over the
/// standard monomials. Keys are `(degree, basis index)`.
#[derive(Clone)]
pub struct Element {
    algebra: Arc<GradedAlgebra>,
    terms: BTreeMap<(usize, usize), Rational>,
}

impl Element {
    pub fn zero(algebra: &Arc<GradedAlgebra>) -> Self {
        Element { algebra: algebra.clone(), terms: BTreeMap::new() }
    }

    pub fn one(algebra: &Arc<GradedAlgebra>) -> Self {
        Element::basis(algebra, 0, 0)
    }

    pub fn basis(algebra: &Arc<GradedAlgebra>, degree: usize, index: usize) -> Self {
        let mut e = Element::zero(algebra);
        e.terms.insert((degree, index), Rational::one());
        e
    }

    pub fn generator(algebra: &Arc<GradedAlgebra>, name: &str) -> Result<Self> {
        let idx = algebra.generator_index(name)?;
        Ok(Element::free_monomial(algebra, &Monomial::generator(algebra.generators().len(), idx)))
    }

    /// Normal form of any monomial of the free ring.
    pub fn free_monomial(algebra: &Arc<GradedAlgebra>, m: &Monomial) -> Self {
        let (d, vec) = algebra.normal_form(m);
        Element::from_sparse(algebra, d, &vec)
    }

    pub fn from_sparse(algebra: &Arc<GradedAlgebra>, degree: usize, vec: &SparseVec) -> Self {
        let mut e = Element::zero(algebra);
        for (k, c) in vec {
            e.add_term(degree, *k, c.clone());
        }
        e
    }

    pub fn from_row(algebra: &Arc<GradedAlgebra>, degree: usize, row: &SparseRow) -> Self {
        let mut e = Element::zero(algebra);
        for (k, c) in row {
            e.add_term(degree, *k, c.clone());
        }
        e
    }

    /// Parses `[(monomial string, rational string)]` pairs.
    pub fn from_strings(algebra: &Arc<GradedAlgebra>, pairs: &[(String, String)]) -> Result<Self> {
        let mut e = Element::zero(algebra);
        for (m, c) in pairs {
            let mono = algebra.parse_monomial(m)?;
            let term = Element::free_monomial(algebra, &mono).scale(&rational::parse_rational(c)?);
            e = e.add(&term);
        }
        Ok(e)
    }

    /// Random element of degree `d` with small integer coefficients.
    pub fn random_homogeneous<R: Rng>(algebra: &Arc<GradedAlgebra>, d: usize, rng: &mut R) -> Self {
        let mut e = Element::zero(algebra);
        for k in 0..algebra.dim(d) {
            let c: i64 = rng.gen_range(-3..=3);
            e.add_term(d, k, rational::int(c));
        }
        e
    }

    fn add_term(&mut self, d: usize, k: usize, c: Rational) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry((d, k)).or_insert_with(Rational::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&(d, k));
        }
    }

    pub fn algebra(&self) -> &Arc<GradedAlgebra> {
        &self.algebra
    }

    pub fn same_owner(&self, other: &Element) -> bool {
        Arc::ptr_eq(&self.algebra, &other.algebra)
    }

    fn check_owner(&self, other: &Element) -> Result<()> {
        if self.same_owner(other) {
            Ok(())
        } else {
            Err(Error::OwnerMismatch)
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// `(degree, basis index) -> coefficient`, in degree then basis order.
    pub fn coordinates(&self) -> &BTreeMap<(usize, usize), Rational> {
        &self.terms
    }

    /// Terms as `(monomial, coefficient)` in degree then basis order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter().map(|((d, k), c)| (&self.algebra.basis(*d)[*k], c))
    }

    pub fn coefficient(&self, m: &Monomial) -> Rational {
        self.algebra
            .position(m)
            .and_then(|key| self.terms.get(&key).cloned())
            .unwrap_or_else(Rational::zero)
    }

    /// Coefficient of the canonical top monomial.
    pub fn top_coefficient(&self) -> Rational {
        let top = self.algebra.top_degree();
        self.terms.get(&(top, 0)).cloned().unwrap_or_else(Rational::zero)
    }

    /// Degree of a nonzero homogeneous element; `None` for zero or mixed elements.
    pub fn degree(&self) -> Option<usize> {
        let first = self.terms.keys().next()?.0;
        let last = self.terms.keys().next_back()?.0;
        (first == last).then_some(first)
    }

    pub fn is_homogeneous(&self) -> bool {
        self.is_zero() || self.degree().is_some()
    }

    pub fn component(&self, d: usize) -> Element {
        Element {
            algebra: self.algebra.clone(),
            terms: self.terms.range((d, 0)..(d + 1, 0)).map(|(k, c)| (*k, c.clone())).collect(),
        }
    }

    /// Coordinates in degree `d` as a sparse row.
    pub fn row(&self, d: usize) -> SparseRow {
        self.terms.range((d, 0)..(d + 1, 0)).map(|((_, k), c)| (*k, c.clone())).collect()
    }

    pub fn scale(&self, factor: &Rational) -> Element {
        let mut e = Element::zero(&self.algebra);
        for ((d, k), c) in &self.terms {
            e.add_term(*d, *k, c * factor);
        }
        e
    }

    pub fn try_add(&self, other: &Element) -> Result<Element> {
        self.check_owner(other)?;
        let mut e = self.clone();
        for ((d, k), c) in &other.terms {
            e.add_term(*d, *k, c.clone());
        }
        Ok(e)
    }

    pub fn try_sub(&self, other: &Element) -> Result<Element> {
        self.try_add(&other.scale(&-Rational::one()))
    }

    /// Normal-form product.
    pub fn multiply(&self, other: &Element) -> Result<Element> {
        self.check_owner(other)?;
        let alg = &self.algebra;
        let mut e = Element::zero(alg);
        for ((da, ka), ca) in &self.terms {
            for ((db, kb), cb) in &other.terms {
                if da + db > alg.top_degree() {
                    continue;
                }
                let coeff = ca * cb;
                for (k, c) in alg.multiply_basis(*da, *ka, *db, *kb) {
                    e.add_term(da + db, k, &coeff * c);
                }
            }
        }
        Ok(e)
    }

    pub fn pow(&self, exponent: u32) -> Element {
        let mut acc = Element::one(&self.algebra);
        for _ in 0..exponent {
            acc = &acc * self;
        }
        acc
    }

    /// `generator * self` via the stored multiplication table.
    pub fn left_multiply_generator(&self, generator: usize) -> Element {
        let alg = &self.algebra;
        let gdeg = alg.generators()[generator].degree;
        let mut e = Element::zero(alg);
        for ((d, k), c) in &self.terms {
            if d + gdeg > alg.top_degree() {
                continue;
            }
            for (k2, c2) in alg.left_multiply_basis(generator, *d, *k) {
                e.add_term(d + gdeg, *k2, c * c2);
            }
        }
        e
    }

    /// `[(monomial string, "a/b")]` in degree then basis order.
    pub fn to_strings(&self) -> Vec<(String, String)> {
        self.terms()
            .map(|(m, c)| (self.algebra.render_monomial(m), rational::to_fraction_string(c)))
            .collect()
    }
}

impl PartialEq for Element {
    fn eq(&self, other: &Self) -> bool {
        self.same_owner(other) && self.terms == other.terms
    }
}

impl fmt::Debug for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms()
            .map(|(m, c)| {
                let m = self.algebra.render_monomial(m);
                if c.is_one() {
                    m
                } else {
                    format!("({})*{}", rational::to_short_string(c), m)
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

// Operator forms panic on owner mismatch; use the `try_*` / `multiply` methods
// where the owners are not known to agree.
impl<'a> Add<&'a Element> for &'a Element {
    type Output = Element;
    fn add(self, rhs: &'a Element) -> Element {
        self.try_add(rhs).expect("elements from different algebras")
    }
}

impl<'a> Sub<&'a Element> for &'a Element {
    type Output = Element;
    fn sub(self, rhs: &'a Element) -> Element {
        self.try_sub(rhs).expect("elements from different algebras")
    }
}

impl<'a> Mul<&'a Element> for &'a Element {
    type Output = Element;
    fn mul(self, rhs: &'a Element) -> Element {
        self.multiply(rhs).expect("elements from different algebras")
    }
}

impl Neg for &Element {
    type Output = Element;
    fn neg(self) -> Element {
        self.scale(&-Rational::one())
    }
}

impl Element {
    pub fn add(&self, other: &Element) -> Element {
        self + other
    }
}

#[cfg(test)]
mod tests {
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    use super::*;
    use crate::rational::int;

    fn ext() -> Arc<GradedAlgebra> {
        Arc::new(GradedAlgebra::exterior(&[3, 5, 7]).unwrap())
    }

    #[test]
    fn string_round_trip() {
        let alg = ext();
        let v = (&Element::generator(&alg, "e3").unwrap() * &Element::generator(&alg, "e5").unwrap()).scale(&int(-3));
        let pairs = v.to_strings();
        assert_eq!(pairs, [("e3^1*e5^1".to_string(), "-3/1".to_string())]);
        assert_eq!(Element::from_strings(&alg, &pairs).unwrap(), v);
    }

    #[test]
    fn unknown_generator_is_reported() {
        let alg = ext();
        assert!(matches!(Element::generator(&alg, "e9"), Err(Error::UnknownGenerator(_))));
    }

    #[test]
    fn zero_coefficients_are_dropped() {
        let alg = ext();
        let e3 = Element::generator(&alg, "e3").unwrap();
        let z = &e3 - &e3;
        assert!(z.is_zero());
        assert_eq!(z.degree(), None);
        assert_eq!(z.to_strings(), Vec::<(String, String)>::new());
    }

    #[test]
    fn components_and_homogeneity() {
        let alg = ext();
        let v = &Element::one(&alg) + &Element::generator(&alg, "e7").unwrap();
        assert!(!v.is_homogeneous());
        assert_eq!(v.component(7), Element::generator(&alg, "e7").unwrap());
        assert_eq!(v.component(0), Element::one(&alg));
    }

    #[test]
    fn elements_of_different_algebras_do_not_mix() {
        let (a, b) = (ext(), ext());
        let x = Element::generator(&a, "e3").unwrap();
        let y = Element::generator(&b, "e3").unwrap();
        assert!(matches!(x.multiply(&y), Err(Error::OwnerMismatch)));
        assert_ne!(x, y);
    }

    #[test]
    fn random_elements_are_seeded() {
        let alg = ext();
        let a = Element::random_homogeneous(&alg, 8, &mut ChaCha8Rng::seed_from_u64(7));
        let b = Element::random_homogeneous(&alg, 8, &mut ChaCha8Rng::seed_from_u64(7));
        assert_eq!(a, b);
        assert!(a.is_zero() || a.degree() == Some(8));
    }

    #[test]
    fn powers() {
        let alg = ext();
        let e3 = Element::generator(&alg, "e3").unwrap();
        assert_eq!(e3.pow(0), Element::one(&alg));
        assert!(e3.pow(2).is_zero());
    }
}
