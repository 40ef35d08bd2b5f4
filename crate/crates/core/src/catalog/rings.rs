//! Presentations of the compact-dual cohomology rings used by the catalog.
//!
//! The Chern roots never appear: the graded relations are pre-expanded into
//! elementary symmetric generators.
//!
//! * Lagrangian Grassmannian `Sp(g)/U(g)`: generators `σ_1..σ_g` (degree `2k`),
//!   relations `Σ_{j+k=m} (-1)^j σ_j σ_k = 0` for even `m ≤ 2g`, the graded
//!   pieces of `∏(1 + x_i) ∏(1 - x_i) = 1`. Odd `m` vanish identically.
//! * Grassmannian `Gr(p, p+q)`: generators `τ_1..τ_q` then `σ_1..σ_p`,
//!   relations `Σ_{i+j=m} σ_i τ_j = 0` for `1 ≤ m ≤ p+q`. The τ generators are
//!   declared first so that every τ is a leading term and the standard
//!   monomials are σ-monomials.
//! * `SU(n)`: exterior algebra on `e_3, e_5, .., e_{2n-1}`.

use std::sync::Arc;

use num_traits::One;

use crate::algebra::{GradedAlgebra, Limits};
use crate::error::{Error, Result};
use crate::monomial::Generator;
use crate::poly::FreePolynomial;
use crate::rational::{int, Rational};

/// Generators, relations and top degree of a polynomial presentation.
#[derive(Debug, Clone)]
pub struct Presentation {
    pub generators: Vec<Generator>,
    pub relations: Vec<FreePolynomial>,
    pub top_degree: usize,
}

impl Presentation {
    pub fn build(self, limits: &Limits) -> Result<Arc<GradedAlgebra>> {
        GradedAlgebra::polynomial_quotient_with(self.generators, self.relations, self.top_degree, limits).map(Arc::new)
    }
}

// σ_k as a free-ring polynomial, with σ_0 = 1 and σ_k = 0 outside 1..=len.
fn indexed(ngens: usize, offset: usize, len: usize, k: usize) -> FreePolynomial {
    match k {
        0 => FreePolynomial::constant(ngens, Rational::one()),
        k if k <= len => FreePolynomial::generator(ngens, offset + k - 1),
        _ => FreePolynomial::zero(),
    }
}

pub fn lagrangian_presentation(g: usize, prefix: &str) -> Result<Presentation> {
    if g == 0 {
        return Err(Error::InvalidParameter("Lagrangian Grassmannian needs g >= 1".into()));
    }
    let generators: Vec<Generator> = (1..=g).map(|k| Generator::new(format!("{prefix}{k}"), 2 * k)).collect();
    let mut relations = Vec::new();
    for m in (2..=2 * g).step_by(2) {
        let mut r = FreePolynomial::zero();
        for j in 0..=m {
            let term = indexed(g, 0, g, j).mul(&indexed(g, 0, g, m - j), &generators);
            let sign = if j % 2 == 0 { Rational::one() } else { -Rational::one() };
            r = r.add(&term.scale(&sign));
        }
        relations.push(r);
    }
    Ok(Presentation { generators, relations, top_degree: g * (g + 1) })
}

pub fn grassmannian_presentation(p: usize, q: usize, sigma: &str, tau: &str) -> Result<Presentation> {
    if p == 0 || q == 0 {
        return Err(Error::InvalidParameter(format!("Grassmannian needs p, q >= 1, got p={p}, q={q}")));
    }
    let n = p + q;
    let mut generators: Vec<Generator> = (1..=q).map(|j| Generator::new(format!("{tau}{j}"), 2 * j)).collect();
    generators.extend((1..=p).map(|i| Generator::new(format!("{sigma}{i}"), 2 * i)));
    let mut relations = Vec::new();
    for m in 1..=n {
        let mut r = FreePolynomial::zero();
        for i in 0..=m.min(p) {
            let j = m - i;
            if j > q {
                continue;
            }
            let term = indexed(n, q, p, i).mul(&indexed(n, 0, q, j), &generators);
            r = r.add(&term);
        }
        relations.push(r);
    }
    Ok(Presentation { generators, relations, top_degree: 2 * p * q })
}

pub fn lagrangian(g: usize, prefix: &str, limits: &Limits) -> Result<Arc<GradedAlgebra>> {
    lagrangian_presentation(g, prefix)?.build(limits)
}

pub fn grassmannian(p: usize, q: usize, sigma: &str, tau: &str, limits: &Limits) -> Result<Arc<GradedAlgebra>> {
    grassmannian_presentation(p, q, sigma, tau)?.build(limits)
}

/// Exterior algebra on the given odd degrees, generators named `e{degree}`.
pub fn exterior(degrees: &[usize], limits: &Limits) -> Result<Arc<GradedAlgebra>> {
    let gens = degrees.iter().map(|d| Generator::new(format!("e{d}"), *d)).collect();
    GradedAlgebra::exterior_with(gens, limits).map(Arc::new)
}

/// `H*(SU(n)) = Λ(e_3, .., e_{2n-1})`.
pub fn special_unitary(n: usize, limits: &Limits) -> Result<Arc<GradedAlgebra>> {
    if n < 2 {
        return Err(Error::InvalidParameter(format!("SU(n) needs n >= 2, got {n}")));
    }
    let degrees: Vec<usize> = (2..=n).map(|i| 2 * i - 1).collect();
    exterior(&degrees, limits)
}

/// Left-nested tensor product of the factors.
pub fn tensor_all(factors: &[Arc<GradedAlgebra>], limits: &Limits) -> Result<Arc<GradedAlgebra>> {
    let (first, rest) = factors
        .split_first()
        .ok_or_else(|| Error::InvalidParameter("empty product".into()))?;
    let mut acc = first.clone();
    for f in rest {
        acc = Arc::new(GradedAlgebra::tensor_product_with(&acc, f, limits)?);
    }
    Ok(acc)
}

/// Names used for the generators of the `i`-th factor of a product (0-based).
pub fn part_prefix(i: usize) -> String {
    const NAMES: [&str; 6] = ["alpha", "beta", "gamma", "delta", "epsilon", "zeta"];
    NAMES.get(i).map_or_else(|| format!("part{}_", i + 1), |s| s.to_string())
}

/// `(-1)^k`.
pub fn sign(k: usize) -> Rational {
    if k.is_multiple_of(2) {
        int(1)
    } else {
        int(-1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lagrangian_betti_numbers() {
        let l = Limits::default();
        assert_eq!(lagrangian(1, "s", &l).unwrap().poincare_polynomial(), vec![1, 0, 1]);
        assert_eq!(lagrangian(2, "s", &l).unwrap().poincare_polynomial(), vec![1, 0, 1, 0, 1, 0, 1]);
        assert_eq!(lagrangian(3, "s", &l).unwrap().total_dimension(), 8);
    }

    #[test]
    fn grassmannian_dimensions_are_binomial() {
        let l = Limits::default();
        for (p, q, total) in [(1, 1, 2), (1, 2, 3), (2, 2, 6), (2, 3, 10), (3, 3, 20)] {
            assert_eq!(grassmannian(p, q, "s", "t", &l).unwrap().total_dimension(), total, "Gr({p}, {})", p + q);
        }
    }

    #[test]
    fn special_unitary_generators() {
        let su = special_unitary(4, &Limits::default()).unwrap();
        assert_eq!(su.generators().iter().map(|g| g.name.as_str()).collect::<Vec<_>>(), ["e3", "e5", "e7"]);
        assert_eq!(su.top_degree(), 15);
        assert!(special_unitary(1, &Limits::default()).is_err());
    }

    #[test]
    fn grassmannian_generator_order_puts_tau_first() {
        let p = grassmannian_presentation(2, 1, "sigma", "tau").unwrap();
        let names: Vec<&str> = p.generators.iter().map(|g| g.name.as_str()).collect();
        assert_eq!(names, ["tau1", "sigma1", "sigma2"]);
        assert_eq!(p.top_degree, 4);
    }

    #[test]
    fn prefixes_and_signs() {
        assert_eq!(part_prefix(0), "alpha");
        assert_eq!(part_prefix(1), "beta");
        assert_eq!(part_prefix(7), "part8_");
        assert_eq!(sign(3), int(-1));
        assert_eq!(sign(4), int(1));
    }

    #[test]
    fn empty_product_is_rejected() {
        assert!(tensor_all(&[], &Limits::default()).is_err());
    }
}
