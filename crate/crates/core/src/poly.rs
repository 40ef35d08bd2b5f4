//! Polynomials in the free graded-commutative ring on a generator list.
//! Relations of a presentation are stored in this form, before reduction.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::monomial::{Generator, Monomial};
use crate::rational::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct FreePolynomial {
    terms: BTreeMap<Monomial, Rational>,
}

impl FreePolynomial {
    pub fn zero() -> Self {
        FreePolynomial::default()
    }

    pub fn constant(ngens: usize, value: Rational) -> Self {
        FreePolynomial::monomial(Monomial::one(ngens), value)
    }

    pub fn monomial(m: Monomial, coeff: Rational) -> Self {
        let mut p = FreePolynomial::zero();
        p.add_term(m, coeff);
        p
    }

    pub fn generator(ngens: usize, index: usize) -> Self {
        FreePolynomial::monomial(Monomial::generator(ngens, index), Rational::one())
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Monomial, Rational)>) -> Self {
        let mut p = FreePolynomial::zero();
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub fn add_term(&mut self, m: Monomial, coeff: Rational) {
        if coeff.is_zero() {
            return;
        }
        let entry = self.terms.entry(m.clone()).or_insert_with(Rational::zero);
        *entry += coeff;
        if entry.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn add(&self, other: &FreePolynomial) -> FreePolynomial {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn scale(&self, factor: &Rational) -> FreePolynomial {
        FreePolynomial::from_terms(self.terms.iter().map(|(m, c)| (m.clone(), c * factor)))
    }

    pub fn mul(&self, other: &FreePolynomial, generators: &[Generator]) -> FreePolynomial {
        let mut out = FreePolynomial::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                if let Some((m, negative)) = m1.free_product(m2, generators) {
                    let c = c1 * c2;
                    out.add_term(m, if negative { -c } else { c });
                }
            }
        }
        out
    }

    /// The common degree of all terms; `None` for the zero polynomial.
    pub fn homogeneous_degree(&self, generators: &[Generator]) -> Result<Option<usize>> {
        let mut degree = None;
        for m in self.terms.keys() {
            let d = m.degree(generators);
            match degree {
                None => degree = Some(d),
                Some(prev) if prev != d => {
                    return Err(Error::InvalidPresentation(format!(
                        "relation {} is not homogeneous",
                        self.render(generators)
                    )))
                }
                _ => {}
            }
        }
        Ok(degree)
    }

    /// Pads exponent vectors: `before` zeros in front, `after` behind.
    pub fn embed(&self, before: usize, after: usize) -> FreePolynomial {
        FreePolynomial::from_terms(self.terms.iter().map(|(m, c)| {
            let mut exps = vec![0; before];
            exps.extend_from_slice(m.exponents());
            exps.extend(std::iter::repeat_n(0, after));
            (Monomial::from_exponents(exps), c.clone())
        }))
    }

    pub fn render(&self, generators: &[Generator]) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        self.terms
            .iter()
            .map(|(m, c)| format!("({})*{}", crate::rational::to_short_string(c), m.render(generators)))
            .collect::<Vec<_>>()
            .join(" + ")
    }
}
