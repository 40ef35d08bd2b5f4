use std::fmt;

use crate::error::{Error, Result};

/// A named generator of a graded-commutative ring.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Generator {
    pub name: String,
    pub degree: usize,
}

impl Generator {
    pub fn new(name: impl Into<String>, degree: usize) -> Self {
        Generator { name: name.into(), degree }
    }

    pub fn is_odd(&self) -> bool {
        self.degree % 2 == 1
    }
}

/// Exponent vector over an ordered generator list.
///
/// The derived ordering is lexicographic with the first generator most
/// significant; within one degree this is the graded-lex term order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn one(ngens: usize) -> Self {
        Monomial(vec![0; ngens])
    }

    pub fn generator(ngens: usize, index: usize) -> Self {
        let mut exps = vec![0; ngens];
        exps[index] = 1;
        Monomial(exps)
    }

    pub fn from_exponents(exponents: Vec<u32>) -> Self {
        Monomial(exponents)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|e| *e == 0)
    }

    pub fn degree(&self, generators: &[Generator]) -> usize {
        self.0.iter().zip(generators).map(|(e, g)| *e as usize * g.degree).sum()
    }

    pub fn times_generator(&self, index: usize) -> Monomial {
        let mut exps = self.0.clone();
        exps[index] += 1;
        Monomial(exps)
    }

    pub fn divide_by_generator(&self, index: usize) -> Option<Monomial> {
        if self.0[index] == 0 {
            return None;
        }
        let mut exps = self.0.clone();
        exps[index] -= 1;
        Some(Monomial(exps))
    }

    /// Smallest generator index with a positive exponent.
    pub fn first_generator(&self) -> Option<usize> {
        self.0.iter().position(|e| *e > 0)
    }

    /// Generator indices in ascending order, repeated by multiplicity.
    pub fn factors(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().enumerate().flat_map(|(i, e)| std::iter::repeat_n(i, *e as usize))
    }

    /// Concatenates two exponent vectors (generators of `self` first).
    pub fn concat(&self, other: &Monomial) -> Monomial {
        let mut exps = self.0.clone();
        exps.extend_from_slice(&other.0);
        Monomial(exps)
    }

    pub fn split_at(&self, at: usize) -> (Monomial, Monomial) {
        (Monomial(self.0[..at].to_vec()), Monomial(self.0[at..].to_vec()))
    }

    /// Product in the free graded-commutative ring, with its Koszul sign.
    /// Returns `None` when an odd generator would appear twice.
    pub fn free_product(&self, other: &Monomial, generators: &[Generator]) -> Option<(Monomial, bool)> {
        let mut negative = false;
        for (j, ej) in other.0.iter().enumerate() {
            if *ej == 0 || !generators[j].is_odd() {
                continue;
            }
            if self.0[j] > 0 {
                return None;
            }
            let passed: u32 = (j + 1..self.0.len())
                .filter(|i| generators[*i].is_odd())
                .map(|i| self.0[i])
                .sum();
            if passed % 2 == 1 {
                negative = !negative;
            }
        }
        let exps = self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect();
        Some((Monomial(exps), negative))
    }

    /// Formats as `e3^1*e7^1`; the empty product is `1`.
    pub fn render(&self, generators: &[Generator]) -> String {
        if self.is_one() {
            return "1".to_string();
        }
        self.0
            .iter()
            .zip(generators)
            .filter(|(e, _)| **e > 0)
            .map(|(e, g)| format!("{}^{}", g.name, e))
            .collect::<Vec<_>>()
            .join("*")
    }

    /// Inverse of [`Monomial::render`].
    pub fn parse(text: &str, generators: &[Generator]) -> Result<Monomial> {
        let mut exps = vec![0u32; generators.len()];
        let text = text.trim();
        if text == "1" {
            return Ok(Monomial(exps));
        }
        for factor in text.split('*') {
            let (name, exp) = match factor.split_once('^') {
                Some((n, e)) => {
                    let e = e
                        .parse::<u32>()
                        .map_err(|_| Error::InvalidParameter(format!("bad exponent in `{factor}`")))?;
                    (n, e)
                }
                None => (factor, 1),
            };
            let idx = generators
                .iter()
                .position(|g| g.name == name)
                .ok_or_else(|| Error::UnknownGenerator(name.to_string()))?;
            exps[idx] += exp;
        }
        Ok(Monomial(exps))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

/// Number of monomials of each degree `0..=max_degree` in the free
/// graded-commutative ring (odd generators appear at most once).
pub fn ambient_counts(generators: &[Generator], max_degree: usize) -> Vec<u128> {
    let mut counts = vec![0u128; max_degree + 1];
    counts[0] = 1;
    for g in generators {
        if g.degree == 0 {
            continue;
        }
        if g.is_odd() {
            for d in (g.degree..=max_degree).rev() {
                counts[d] = counts[d].saturating_add(counts[d - g.degree]);
            }
        } else {
            for d in g.degree..=max_degree {
                counts[d] = counts[d].saturating_add(counts[d - g.degree]);
            }
        }
    }
    counts
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ext(degs: &[usize]) -> Vec<Generator> {
        degs.iter().map(|d| Generator::new(format!("e{d}"), *d)).collect()
    }

    #[test]
    fn render_and_parse() {
        let gens = ext(&[3, 5, 7]);
        let m = Monomial::from_exponents(vec![1, 0, 1]);
        assert_eq!(m.render(&gens), "e3^1*e7^1");
        assert_eq!(Monomial::parse("e3^1*e7^1", &gens).unwrap(), m);
        assert_eq!(Monomial::one(3).render(&gens), "1");
        assert!(Monomial::parse("e4^1", &gens).is_err());
    }

    #[test]
    fn koszul_sign_of_free_product() {
        let gens = ext(&[3, 5, 7]);
        let e3 = Monomial::generator(3, 0);
        let e5 = Monomial::generator(3, 1);
        let (m, neg) = e5.free_product(&e3, &gens).unwrap();
        assert_eq!(m.exponents(), &[1, 1, 0]);
        assert!(neg);
        let (_, neg) = e3.free_product(&e5, &gens).unwrap();
        assert!(!neg);
        assert!(e3.free_product(&e3, &gens).is_none());
    }

    #[test]
    fn ambient_counts_match_enumeration() {
        let gens = vec![Generator::new("a", 2), Generator::new("b", 4)];
        let counts = ambient_counts(&gens, 8);
        assert_eq!(counts, vec![1, 0, 1, 0, 2, 0, 2, 0, 3]);
        let counts = ambient_counts(&ext(&[3, 5]), 8);
        assert_eq!(counts.iter().sum::<u128>(), 4);
    }
}
