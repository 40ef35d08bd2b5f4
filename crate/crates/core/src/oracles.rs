//! Reference counts and expansions computed without the quotient machinery.
//! Used by the check suites to validate ring constructions.

use std::collections::BTreeMap;

use crate::monomial::{Generator, Monomial};
use crate::poly::FreePolynomial;
use crate::rational;

/// Betti numbers indexed by cohomological degree, from a list of class degrees.
fn histogram(degrees: impl IntoIterator<Item = usize>) -> Vec<usize> {
    let mut counts: BTreeMap<usize, usize> = BTreeMap::new();
    for d in degrees {
        *counts.entry(d).or_default() += 1;
    }
    let top = counts.keys().next_back().copied().unwrap_or(0);
    (0..=top).map(|d| counts.get(&d).copied().unwrap_or(0)).collect()
}

/// Strict partitions with parts in `1..=g`, counted by weight in degree `2 * weight`.
pub fn strict_partition_betti(g: usize) -> Vec<usize> {
    histogram((0u32..1 << g).map(|mask| (1..=g).filter(|i| mask >> (i - 1) & 1 == 1).map(|i| 2 * i).sum()))
}

/// Partitions fitting in a `p × q` box, counted in degree `2 * |λ|`.
pub fn box_partition_betti(p: usize, q: usize) -> Vec<usize> {
    fn walk(rows_left: usize, max_part: usize, weight: usize, out: &mut Vec<usize>) {
        out.push(weight);
        if rows_left == 0 {
            return;
        }
        for part in 1..=max_part {
            walk(rows_left - 1, part, weight + part, out);
        }
    }
    let mut weights = Vec::new();
    walk(p, q, 0, &mut weights);
    histogram(weights.into_iter().map(|w| 2 * w))
}

/// Subsets of the given odd degrees, counted by total degree.
pub fn exterior_betti(degrees: &[usize]) -> Vec<usize> {
    histogram((0u64..1 << degrees.len()).map(|mask| {
        degrees.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, d)| d).sum()
    }))
}

pub fn binomial(n: usize, k: usize) -> u128 {
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

/// Coefficients of `∏_{i=1..g} (1 + t^{2i})`, by direct polynomial multiplication.
pub fn product_one_plus_t(exponents: impl IntoIterator<Item = usize>) -> Vec<usize> {
    let mut poly = vec![1usize];
    for e in exponents {
        let mut next = vec![0; poly.len() + e];
        for (d, c) in poly.iter().enumerate() {
            next[d] += c;
            next[d + e] += c;
        }
        poly = next;
    }
    poly
}

/// Root variables `x_1..x_n` (each of degree 2) named with the given prefix.
pub fn root_generators(prefix: &str, n: usize) -> Vec<Generator> {
    (1..=n).map(|i| Generator::new(format!("{prefix}{i}"), 2)).collect()
}

/// Elementary symmetric polynomial `e_k` in roots `offset..offset+n` of an `nvars`-variable ring.
pub fn elementary(nvars: usize, offset: usize, n: usize, k: usize) -> FreePolynomial {
    let mut out = FreePolynomial::zero();
    for mask in 0u64..1 << n {
        if mask.count_ones() as usize != k {
            continue;
        }
        let mut exps = vec![0u32; nvars];
        for i in 0..n {
            if mask >> i & 1 == 1 {
                exps[offset + i] = 1;
            }
        }
        out.add_term(Monomial::from_exponents(exps), rational::one());
    }
    out
}

/// Graded component of a free polynomial in a given degree.
pub fn component(p: &FreePolynomial, gens: &[Generator], degree: usize) -> FreePolynomial {
    let mut out = FreePolynomial::zero();
    for (m, c) in p.terms() {
        if m.degree(gens) == degree {
            out.add_term(m.clone(), c.clone());
        }
    }
    out
}

/// Substitutes `images[i]` for generator `i` in a free polynomial.
pub fn substitute(p: &FreePolynomial, images: &[FreePolynomial], target_gens: &[Generator]) -> FreePolynomial {
    let mut out = FreePolynomial::zero();
    for (m, c) in p.terms() {
        let mut term = FreePolynomial::constant(target_gens.len(), c.clone());
        for (i, e) in m.exponents().iter().enumerate() {
            for _ in 0..*e {
                term = term.mul(&images[i], target_gens);
            }
        }
        out = out.add(&term);
    }
    out
}
