//! Degree-preserving ring maps between graded algebras and the fundamental
//! class they determine through the pairing identity
//! `⟨ξ, w⟩_source = ∫_target f(w)` for all `w` of the target's top degree.

use std::sync::Arc;

use num_traits::One;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::algebra::GradedAlgebra;
use crate::duality::pairing_matrix;
use crate::element::Element;
use crate::error::{Error, Result};
use crate::linalg::{self, SparseRow};
use crate::monomial::Monomial;
use crate::poly::FreePolynomial;
use crate::rational::Rational;

#[derive(Clone, Debug)]
pub struct Morphism {
    source: Arc<GradedAlgebra>,
    target: Arc<GradedAlgebra>,
    images: Vec<Element>,
    basis_images: Vec<Vec<Element>>,
}

/// The class `[Y]` in the source algebra, normalized so that the target's
/// canonical top monomial integrates to `target_top_value` (1 by default).
#[derive(Clone, Debug, PartialEq)]
pub struct FundamentalClass {
    pub element: Element,
    pub degree: usize,
    pub target_top_value: Rational,
}

impl Morphism {
    /// Builds the map from generator images given by name. Every source
    /// relation is checked to map to zero.
    pub fn new(
        source: &Arc<GradedAlgebra>,
        target: &Arc<GradedAlgebra>,
        images: Vec<(&str, Element)>,
    ) -> Result<Self> {
        let mut by_index: Vec<Option<Element>> = vec![None; source.generators().len()];
        for (name, image) in images {
            let idx = source.generator_index(name)?;
            by_index[idx] = Some(image);
        }
        let images = by_index
            .into_iter()
            .enumerate()
            .map(|(i, e)| {
                e.ok_or_else(|| {
                    Error::InvalidParameter(format!("no image given for generator {}", source.generators()[i].name))
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_images(source, target, images)
    }

    /// Builds the map from images listed in source generator order.
    pub fn from_images(source: &Arc<GradedAlgebra>, target: &Arc<GradedAlgebra>, images: Vec<Element>) -> Result<Self> {
        let m = Self::new_unchecked(source, target, images)?;
        for relation in source.relations() {
            let image = m.evaluate_free(relation);
            if !image.is_zero() {
                return Err(Error::RelationViolation {
                    relation: relation.render(source.generators()),
                    image: image.to_string(),
                });
            }
        }
        Ok(m)
    }

    /// Like [`Morphism::from_images`] without the relation check. Only degrees
    /// and owners are validated; used for negative controls.
    pub fn new_unchecked(
        source: &Arc<GradedAlgebra>,
        target: &Arc<GradedAlgebra>,
        images: Vec<Element>,
    ) -> Result<Self> {
        if images.len() != source.generators().len() {
            return Err(Error::InvalidParameter(format!(
                "expected {} generator images, got {}",
                source.generators().len(),
                images.len()
            )));
        }
        for (g, image) in source.generators().iter().zip(&images) {
            if !Arc::ptr_eq(image.algebra(), target) {
                return Err(Error::OwnerMismatch);
            }
            if !image.is_homogeneous() || image.degree().is_some_and(|d| d != g.degree) {
                return Err(Error::DegreeMismatch(format!(
                    "image {image} of {} must be homogeneous of degree {}",
                    g.name, g.degree
                )));
            }
        }
        let mut m = Morphism { source: source.clone(), target: target.clone(), images, basis_images: Vec::new() };
        m.basis_images = (0..=source.top_degree())
            .map(|d| source.basis(d).iter().map(|mono| m.evaluate_monomial(mono)).collect())
            .collect();
        Ok(m)
    }

    pub fn identity(algebra: &Arc<GradedAlgebra>) -> Self {
        let images = (0..algebra.generators().len())
            .map(|i| Element::free_monomial(algebra, &Monomial::generator(algebra.generators().len(), i)))
            .collect();
        Self::from_images(algebra, algebra, images).expect("identity is a ring map")
    }

    pub fn source(&self) -> &Arc<GradedAlgebra> {
        &self.source
    }

    pub fn target(&self) -> &Arc<GradedAlgebra> {
        &self.target
    }

    pub fn generator_images(&self) -> &[Element] {
        &self.images
    }

    fn evaluate_monomial(&self, m: &Monomial) -> Element {
        let mut acc = Element::one(&self.target);
        for g in m.factors() {
            acc = &acc * &self.images[g];
            if acc.is_zero() {
                break;
            }
        }
        acc
    }

    /// Image of a free-ring polynomial under the multiplicative extension.
    pub fn evaluate_free(&self, p: &FreePolynomial) -> Element {
        let mut acc = Element::zero(&self.target);
        for (m, c) in p.terms() {
            acc = &acc + &self.evaluate_monomial(m).scale(c);
        }
        acc
    }

    pub fn apply(&self, v: &Element) -> Result<Element> {
        if !Arc::ptr_eq(v.algebra(), &self.source) {
            return Err(Error::OwnerMismatch);
        }
        let mut acc = Element::zero(&self.target);
        for ((d, k), c) in v.coordinates() {
            acc = &acc + &self.basis_images[*d][*k].scale(c);
        }
        Ok(acc)
    }

    /// `next ∘ self`.
    pub fn then(&self, next: &Morphism) -> Result<Morphism> {
        if !Arc::ptr_eq(&self.target, &next.source) {
            return Err(Error::OwnerMismatch);
        }
        let images = self.images.iter().map(|e| next.apply(e)).collect::<Result<Vec<_>>>()?;
        Morphism::from_images(&self.source, &next.target, images)
    }

    /// Rank of the map restricted to degree `d`.
    pub fn rank_in_degree(&self, d: usize) -> usize {
        let rows: Vec<SparseRow> = self.basis_images.get(d).map_or(Vec::new(), |imgs| {
            imgs.iter().map(|e| e.row(d)).collect()
        });
        linalg::rank(rows, self.target.dim(d))
    }

    pub fn gysin_fundamental_class(&self) -> Result<FundamentalClass> {
        self.gysin_with_orientation(&Rational::one())
    }

    /// Solves `⟨ξ, w⟩ = target_top_value * topcoef(f(w))` for every basis `w`
    /// of degree `top(target)`.
    pub fn gysin_with_orientation(&self, target_top_value: &Rational) -> Result<FundamentalClass> {
        let (top_s, top_t) = (self.source.top_degree(), self.target.top_degree());
        if top_t > top_s {
            return Err(Error::InvalidParameter(format!(
                "target top degree {top_t} exceeds source top degree {top_s}"
            )));
        }
        let degree = top_s - top_t;
        let n = self.source.dim(degree);
        // pairing_matrix(degree)[i][j] = ⟨basis_i, w_j⟩; equations are indexed by w_j.
        let by_unknown = pairing_matrix(&self.source, degree);
        let mut equations: Vec<SparseRow> = vec![SparseRow::new(); self.source.dim(top_t)];
        for (i, row) in by_unknown.iter().enumerate() {
            for (j, c) in row {
                equations[*j].insert(i, c.clone());
            }
        }
        if linalg::rank(equations.clone(), n) != n || equations.len() != n {
            return Err(Error::InconsistentPresentation(format!(
                "source pairing is degenerate between degrees {degree} and {top_t}"
            )));
        }
        let rhs: Vec<Rational> = self.basis_images[top_t]
            .iter()
            .map(|img| img.top_coefficient() * target_top_value)
            .collect();
        let x = linalg::solve(&equations, &rhs, n)
            .ok_or_else(|| Error::InfeasibleGysin(format!("degree {degree} system has no solution")))?;
        let element = Element::from_row(&self.source, degree, &linalg::dense_to_sparse(&x));
        Ok(FundamentalClass { element, degree, target_top_value: target_top_value.clone() })
    }

    /// Checks the defining identity of `xi` on the whole degree-`top(target)` basis.
    pub fn satisfies_gysin_identity(&self, xi: &Element, target_top_value: &Rational) -> bool {
        let top_t = self.target.top_degree();
        (0..self.source.dim(top_t)).all(|j| {
            let w = Element::basis(&self.source, top_t, j);
            let lhs = (xi * &w).top_coefficient();
            let rhs = self.basis_images[top_t][j].top_coefficient() * target_top_value;
            lhs == rhs
        })
    }

    /// Checks `f(ab) = f(a) f(b)` on seeded random homogeneous pairs.
    pub fn verify_multiplicativity(&self, sample_count: usize, seed: u64) -> bool {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let degrees: Vec<usize> = (0..=self.source.top_degree()).filter(|d| self.source.dim(*d) > 0).collect();
        use rand::seq::SliceRandom;
        for _ in 0..sample_count {
            let da = *degrees.choose(&mut rng).unwrap();
            let db = *degrees.choose(&mut rng).unwrap();
            let a = Element::random_homogeneous(&self.source, da, &mut rng);
            let b = Element::random_homogeneous(&self.source, db, &mut rng);
            let lhs = self.apply(&(&a * &b)).unwrap();
            let rhs = &self.apply(&a).unwrap() * &self.apply(&b).unwrap();
            if lhs != rhs {
                return false;
            }
        }
        true
    }
}
