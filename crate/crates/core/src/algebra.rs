//! Finite-dimensional graded-commutative rings with explicit per-degree bases.
//!
//! Every algebra stores, per degree, its ordered list of standard monomials and
//! a table giving the normal form of `generator * basis monomial`. All other
//! products are evaluated through that table, so the three constructors only
//! differ in how they fill it.
//!
//! Basis monomials of each degree are listed in decreasing graded-lex order
//! (first declared generator most significant). For a polynomial quotient the
//! standard monomials are exactly the non-pivot columns of the reduced row
//! echelon form of the degree-`d` relation span with columns in that order.

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::linalg::{rref, SparseRow};
use crate::monomial::{ambient_counts, Generator, Monomial};
use crate::poly::FreePolynomial;
use crate::rational::Rational;

/// Sparse coordinates over the basis of a single degree.
pub type SparseVec = Vec<(usize, Rational)>;

/// Default bound on the number of ambient monomials in any single degree.
pub const DEFAULT_MONOMIAL_CAP: usize = 200_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AlgebraKind {
    Exterior,
    PolynomialQuotient,
    TensorProduct,
}

/// Resource limits applied by the constructors.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    pub monomial_cap: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits { monomial_cap: DEFAULT_MONOMIAL_CAP }
    }
}

impl Limits {
    fn check(&self, counts: &[u128]) -> Result<()> {
        for (degree, count) in counts.iter().enumerate() {
            if *count > self.monomial_cap as u128 {
                return Err(Error::CapExceeded { degree, count: *count, cap: self.monomial_cap });
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone)]
pub struct GradedAlgebra {
    kind: AlgebraKind,
    generators: Vec<Generator>,
    relations: Vec<FreePolynomial>,
    basis: Vec<Vec<Monomial>>,
    index: HashMap<Monomial, (usize, usize)>,
    // left_mul[g][d][k]: normal form of generator g times basis[d][k].
    left_mul: Vec<Vec<Vec<SparseVec>>>,
}

impl GradedAlgebra {
    /// Exterior algebra on odd generators named `e{degree}`.
    pub fn exterior(degrees: &[usize]) -> Result<Self> {
        let gens = degrees.iter().map(|d| Generator::new(format!("e{d}"), *d)).collect();
        Self::exterior_with(gens, &Limits::default())
    }

    pub fn exterior_with(generators: Vec<Generator>, limits: &Limits) -> Result<Self> {
        if generators.is_empty() {
            return Err(Error::InvalidPresentation("exterior algebra needs at least one generator".into()));
        }
        for g in &generators {
            if !g.is_odd() {
                return Err(Error::InvalidPresentation(format!(
                    "exterior generator {} has even degree {}",
                    g.name, g.degree
                )));
            }
        }
        if generators.windows(2).any(|w| w[0].degree >= w[1].degree) {
            return Err(Error::InvalidPresentation(
                "exterior generator degrees must be strictly increasing".into(),
            ));
        }
        check_unique_names(&generators)?;
        let n = generators.len();
        let top: usize = generators.iter().map(|g| g.degree).sum();
        limits.check(&ambient_counts(&generators, top))?;

        let mut by_degree: Vec<Vec<Monomial>> = vec![Vec::new(); top + 1];
        for mask in 0u64..(1u64 << n) {
            let exps: Vec<u32> = (0..n).map(|i| ((mask >> i) & 1) as u32).collect();
            let m = Monomial::from_exponents(exps);
            by_degree[m.degree(&generators)].push(m);
        }
        for list in by_degree.iter_mut() {
            list.sort_by(|a, b| b.cmp(a));
        }
        let index = build_index(&by_degree);
        let mut left_mul = Vec::with_capacity(n);
        for (i, g) in generators.iter().enumerate() {
            let mut per_degree = Vec::with_capacity(top + 1);
            for monomials in &by_degree {
                let row: Vec<SparseVec> = monomials
                    .iter()
                    .map(|s| {
                        if s.exponents()[i] > 0 {
                            return Vec::new();
                        }
                        let passed: u32 = s.exponents()[..i].iter().sum();
                        let (d, k) = index[&s.times_generator(i)];
                        debug_assert_eq!(d, s.degree(&generators) + g.degree);
                        let c = if passed.is_multiple_of(2) { Rational::one() } else { -Rational::one() };
                        vec![(k, c)]
                    })
                    .collect();
                per_degree.push(row);
            }
            left_mul.push(per_degree);
        }
        Ok(GradedAlgebra {
            kind: AlgebraKind::Exterior,
            generators,
            relations: Vec::new(),
            basis: by_degree,
            index,
            left_mul,
        })
    }

    pub fn polynomial_quotient(
        generators: Vec<Generator>,
        relations: Vec<FreePolynomial>,
        expected_top_degree: usize,
    ) -> Result<Self> {
        Self::polynomial_quotient_with(generators, relations, expected_top_degree, &Limits::default())
    }

    /// Quotient of the polynomial ring on even generators by homogeneous relations.
    ///
    /// Degrees `expected_top_degree + 1 ..= expected_top_degree + max generator
    /// degree` are computed as well and must vanish; every higher degree is then
    /// zero because each of its monomials has a factor in that window.
    pub fn polynomial_quotient_with(
        generators: Vec<Generator>,
        relations: Vec<FreePolynomial>,
        expected_top_degree: usize,
        limits: &Limits,
    ) -> Result<Self> {
        if generators.is_empty() {
            return Err(Error::InvalidPresentation("polynomial quotient needs at least one generator".into()));
        }
        for g in &generators {
            if g.degree == 0 || g.is_odd() {
                return Err(Error::InvalidPresentation(format!(
                    "polynomial generator {} must have positive even degree, got {}",
                    g.name, g.degree
                )));
            }
        }
        check_unique_names(&generators)?;
        let n = generators.len();
        let max_gen = generators.iter().map(|g| g.degree).max().unwrap_or(0);
        let horizon = expected_top_degree + max_gen;

        let mut by_degree: BTreeMap<usize, Vec<FreePolynomial>> = BTreeMap::new();
        let mut kept = Vec::new();
        for r in relations {
            if r.terms().any(|(m, _)| m.len() != n) {
                return Err(Error::InvalidPresentation("relation has wrong number of exponents".into()));
            }
            match r.homogeneous_degree(&generators)? {
                None => continue,
                Some(0) => {
                    return Err(Error::InvalidPresentation(format!(
                        "degree-0 relation {} kills the unit",
                        r.render(&generators)
                    )))
                }
                Some(d) => {
                    if d <= horizon {
                        by_degree.entry(d).or_default().push(r.clone());
                    }
                    kept.push(r);
                }
            }
        }
        limits.check(&ambient_counts(&generators, horizon))?;

        let degs: Vec<usize> = generators.iter().map(|g| g.degree).collect();
        let mut basis: Vec<Vec<Monomial>> = vec![vec![Monomial::one(n)]];
        let mut index: HashMap<Monomial, (usize, usize)> = HashMap::new();
        index.insert(Monomial::one(n), (0, 0));
        // left_mul[g][d] gets allocated once basis[d] is known and filled at degree d + deg g.
        let mut left_mul: Vec<Vec<Vec<SparseVec>>> = vec![vec![vec![Vec::new(); 1]]; n];

        for d in 1..=horizon {
            // Standard monomials of degree d all lie among x_i * (standard of degree d - deg x_i).
            let mut candidates: BTreeSet<Monomial> = BTreeSet::new();
            for i in 0..n {
                if d >= degs[i] {
                    for s in &basis[d - degs[i]] {
                        candidates.insert(s.times_generator(i));
                    }
                }
            }
            let columns: Vec<Monomial> = candidates.into_iter().rev().collect();
            let column_of: HashMap<&Monomial, usize> = columns.iter().enumerate().map(|(c, m)| (m, c)).collect();
            let embed = |row: &mut SparseRow, gen: usize, vec: &SparseVec, scale: &Rational| {
                let src = &basis[d - degs[gen]];
                for (k, c) in vec {
                    let col = column_of[&src[*k].times_generator(gen)];
                    let entry = row.entry(col).or_insert_with(Rational::zero);
                    *entry += c * scale;
                }
            };

            let one = Rational::one();
            let minus_one = -Rational::one();
            let mut rows: Vec<SparseRow> = Vec::new();
            if let Some(rels) = by_degree.get(&d) {
                for r in rels {
                    let mut row = SparseRow::new();
                    for (m, c) in r.terms() {
                        let gen = m.first_generator().expect("positive degree monomial");
                        let rest = m.divide_by_generator(gen).unwrap();
                        let nf = eval_monomial(&left_mul, &degs, &rest);
                        embed(&mut row, gen, &nf, c);
                    }
                    row.retain(|_, v| !v.is_zero());
                    rows.push(row);
                }
            }
            for i in 0..n {
                for j in i + 1..n {
                    if d < degs[i] + degs[j] {
                        continue;
                    }
                    let dl = d - degs[i] - degs[j];
                    for k in 0..basis[dl].len() {
                        // Both products standard: the row is x_i x_j s - x_j x_i s = 0.
                        if is_unit_vector(&left_mul[j][dl][k]) && is_unit_vector(&left_mul[i][dl][k]) {
                            continue;
                        }
                        let mut row = SparseRow::new();
                        embed(&mut row, i, &left_mul[j][dl][k], &one);
                        embed(&mut row, j, &left_mul[i][dl][k], &minus_one);
                        row.retain(|_, v| !v.is_zero());
                        if !row.is_empty() {
                            rows.push(row);
                        }
                    }
                }
            }

            let ech = rref(&rows, columns.len());
            let free = ech.free_columns();
            let std_index: HashMap<usize, usize> = free.iter().enumerate().map(|(k, c)| (*c, k)).collect();
            let standard: Vec<Monomial> = free.iter().map(|c| columns[*c].clone()).collect();
            for (k, m) in standard.iter().enumerate() {
                index.insert(m.clone(), (d, k));
            }
            let normal_form = |col: usize| -> SparseVec {
                if let Some(k) = std_index.get(&col) {
                    return vec![(*k, Rational::one())];
                }
                let row = ech.pivot_row(col).expect("non-standard column is a pivot");
                row.iter()
                    .filter(|(c, _)| **c != col)
                    .map(|(c, v)| (std_index[c], -v.clone()))
                    .collect()
            };
            for i in 0..n {
                if d < degs[i] {
                    continue;
                }
                let dl = d - degs[i];
                let entries: Vec<SparseVec> =
                    basis[dl].iter().map(|s| normal_form(column_of[&s.times_generator(i)])).collect();
                left_mul[i][dl] = entries;
            }
            for table in left_mul.iter_mut() {
                table.push(vec![Vec::new(); standard.len()]);
            }
            basis.push(standard);
        }

        for d in expected_top_degree + 1..=horizon {
            if !basis[d].is_empty() {
                return Err(Error::InconsistentPresentation(format!(
                    "{} nonzero classes in degree {d}, above the expected top degree {expected_top_degree}",
                    basis[d].len()
                )));
            }
        }
        basis.truncate(expected_top_degree + 1);
        for table in left_mul.iter_mut() {
            table.truncate(expected_top_degree + 1);
        }
        if basis[expected_top_degree].len() != 1 {
            return Err(Error::InconsistentPresentation(format!(
                "top degree {expected_top_degree} has dimension {}, expected 1",
                basis[expected_top_degree].len()
            )));
        }
        let dims: Vec<usize> = basis.iter().map(Vec::len).collect();
        if dims.iter().ne(dims.iter().rev()) {
            return Err(Error::InconsistentPresentation(format!(
                "Betti numbers {dims:?} are not palindromic"
            )));
        }
        Ok(GradedAlgebra {
            kind: AlgebraKind::PolynomialQuotient,
            generators,
            relations: kept,
            basis,
            index,
            left_mul,
        })
    }

    pub fn tensor_product(a: &GradedAlgebra, b: &GradedAlgebra) -> Result<Self> {
        Self::tensor_product_with(a, b, &Limits::default())
    }

    /// Graded tensor product with the Koszul sign on the second factor's generators.
    pub fn tensor_product_with(a: &GradedAlgebra, b: &GradedAlgebra, limits: &Limits) -> Result<Self> {
        let mut generators = a.generators.clone();
        generators.extend(b.generators.iter().cloned());
        check_unique_names(&generators)?;
        let na = a.generators.len();
        let nb = b.generators.len();
        let top = a.top_degree() + b.top_degree();

        // (da, ka, db, kb) for every product basis element, grouped by degree.
        let mut pairs: Vec<Vec<(Monomial, (usize, usize, usize, usize))>> = vec![Vec::new(); top + 1];
        for (da, list_a) in a.basis.iter().enumerate() {
            for (db, list_b) in b.basis.iter().enumerate() {
                for (ka, ma) in list_a.iter().enumerate() {
                    for (kb, mb) in list_b.iter().enumerate() {
                        pairs[da + db].push((ma.concat(mb), (da, ka, db, kb)));
                    }
                }
            }
        }
        let counts: Vec<u128> = pairs.iter().map(|p| p.len() as u128).collect();
        limits.check(&counts)?;
        for list in pairs.iter_mut() {
            list.sort_by(|x, y| y.0.cmp(&x.0));
        }
        let basis: Vec<Vec<Monomial>> = pairs.iter().map(|l| l.iter().map(|(m, _)| m.clone()).collect()).collect();
        let index = build_index(&basis);
        let mut pos_of: HashMap<(usize, usize, usize, usize), usize> = HashMap::new();
        for list in &pairs {
            for (k, (_, key)) in list.iter().enumerate() {
                pos_of.insert(*key, k);
            }
        }

        let mut left_mul = Vec::with_capacity(na + nb);
        for g in 0..na + nb {
            let gdeg = generators[g].degree;
            let mut per_degree = Vec::with_capacity(top + 1);
            for list in &pairs {
                let row: Vec<SparseVec> = list
                    .iter()
                    .map(|(_, (da, ka, db, kb))| {
                        if g < na {
                            a.left_mul[g][*da][*ka]
                                .iter()
                                .map(|(k2, c)| (pos_of[&(da + gdeg, *k2, *db, *kb)], c.clone()))
                                .collect()
                        } else {
                            let negative = gdeg % 2 == 1 && da % 2 == 1;
                            b.left_mul[g - na][*db][*kb]
                                .iter()
                                .map(|(k2, c)| {
                                    let c = if negative { -c.clone() } else { c.clone() };
                                    (pos_of[&(*da, *ka, db + gdeg, *k2)], c)
                                })
                                .collect()
                        }
                    })
                    .collect();
                per_degree.push(row);
            }
            left_mul.push(per_degree);
        }
        let mut relations: Vec<FreePolynomial> = a.relations.iter().map(|r| r.embed(0, nb)).collect();
        relations.extend(b.relations.iter().map(|r| r.embed(na, 0)));
        Ok(GradedAlgebra { kind: AlgebraKind::TensorProduct, generators, relations, basis, index, left_mul })
    }

    pub fn kind(&self) -> AlgebraKind {
        self.kind
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    pub fn relations(&self) -> &[FreePolynomial] {
        &self.relations
    }

    pub fn generator_index(&self, name: &str) -> Result<usize> {
        self.generators
            .iter()
            .position(|g| g.name == name)
            .ok_or_else(|| Error::UnknownGenerator(name.to_string()))
    }

    pub fn top_degree(&self) -> usize {
        self.basis.len() - 1
    }

    /// Standard monomials of degree `d` (empty above the top degree).
    pub fn basis(&self, d: usize) -> &[Monomial] {
        self.basis.get(d).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn dim(&self, d: usize) -> usize {
        self.basis(d).len()
    }

    pub fn total_dimension(&self) -> usize {
        self.basis.iter().map(Vec::len).sum()
    }

    /// Betti numbers: entry `d` is the dimension in degree `d`.
    pub fn poincare_polynomial(&self) -> Vec<usize> {
        self.basis.iter().map(Vec::len).collect()
    }

    /// The canonical orientation class: the unique standard monomial of top degree.
    pub fn top_monomial(&self) -> &Monomial {
        &self.basis[self.top_degree()][0]
    }

    pub fn position(&self, m: &Monomial) -> Option<(usize, usize)> {
        self.index.get(m).copied()
    }

    pub fn render_monomial(&self, m: &Monomial) -> String {
        m.render(&self.generators)
    }

    pub fn parse_monomial(&self, text: &str) -> Result<Monomial> {
        Monomial::parse(text, &self.generators)
    }

    /// Normal form of `generator * basis(d)[k]` in degree `d + deg generator`.
    pub fn left_multiply_basis(&self, generator: usize, d: usize, k: usize) -> &SparseVec {
        &self.left_mul[generator][d][k]
    }

    /// `generator * v` for `v` homogeneous of degree `d`.
    pub fn left_multiply(&self, generator: usize, d: usize, v: &SparseVec) -> SparseVec {
        let mut acc: BTreeMap<usize, Rational> = BTreeMap::new();
        if d >= self.left_mul[generator].len() {
            return Vec::new();
        }
        for (k, c) in v {
            for (k2, c2) in &self.left_mul[generator][d][*k] {
                *acc.entry(*k2).or_insert_with(Rational::zero) += c * c2;
            }
        }
        acc.into_iter().filter(|(_, c)| !c.is_zero()).collect()
    }

    /// Product of two basis monomials, in degree `da + db`.
    pub fn multiply_basis(&self, da: usize, ka: usize, db: usize, kb: usize) -> SparseVec {
        let mut vec: SparseVec = vec![(ka, Rational::one())];
        let mut deg = da;
        for g in self.basis[db][kb].factors() {
            let gdeg = self.generators[g].degree;
            if deg + gdeg > self.top_degree() {
                return Vec::new();
            }
            vec = self.left_multiply(g, deg, &vec);
            if deg % 2 == 1 && gdeg % 2 == 1 {
                for (_, c) in vec.iter_mut() {
                    *c = -c.clone();
                }
            }
            deg += gdeg;
            if vec.is_empty() {
                return vec;
            }
        }
        vec
    }

    /// Normal form of an arbitrary monomial of the free ring (ordered product
    /// of its generators in ascending order). Returns its degree and coordinates.
    pub fn normal_form(&self, m: &Monomial) -> (usize, SparseVec) {
        let degs: Vec<usize> = self.generators.iter().map(|g| g.degree).collect();
        let degree = m.degree(&self.generators);
        if degree > self.top_degree() {
            return (degree, Vec::new());
        }
        (degree, eval_monomial(&self.left_mul, &degs, m))
    }
}

fn is_unit_vector(v: &SparseVec) -> bool {
    v.len() == 1 && v[0].1.is_one()
}

fn check_unique_names(generators: &[Generator]) -> Result<()> {
    let mut seen = HashSet::new();
    for g in generators {
        if !seen.insert(g.name.as_str()) {
            return Err(Error::InvalidPresentation(format!("duplicate generator name {}", g.name)));
        }
    }
    Ok(())
}

fn build_index(basis: &[Vec<Monomial>]) -> HashMap<Monomial, (usize, usize)> {
    let mut index = HashMap::new();
    for (d, list) in basis.iter().enumerate() {
        for (k, m) in list.iter().enumerate() {
            index.insert(m.clone(), (d, k));
        }
    }
    index
}

// Left-multiplies the unit by the factors of `m` from the last one down.
fn eval_monomial(left_mul: &[Vec<Vec<SparseVec>>], degs: &[usize], m: &Monomial) -> SparseVec {
    let factors: Vec<usize> = m.factors().collect();
    let mut vec: SparseVec = vec![(0, Rational::one())];
    let mut deg = 0;
    for g in factors.into_iter().rev() {
        let table = &left_mul[g];
        if deg >= table.len() {
            return Vec::new();
        }
        let mut acc: BTreeMap<usize, Rational> = BTreeMap::new();
        for (k, c) in &vec {
            for (k2, c2) in &table[deg][*k] {
                *acc.entry(*k2).or_insert_with(Rational::zero) += c * c2;
            }
        }
        vec = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        deg += degs[g];
        if vec.is_empty() {
            break;
        }
    }
    vec
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::element::Element;
    use crate::rational::int;

    fn mono(e: &[u32]) -> Monomial {
        Monomial::from_exponents(e.to_vec())
    }

    fn poly(terms: &[(&[u32], i64)]) -> FreePolynomial {
        FreePolynomial::from_terms(terms.iter().map(|(e, c)| (mono(e), int(*c))))
    }

    fn lagrangian_two() -> Arc<GradedAlgebra> {
        let gens = vec![Generator::new("sigma1", 2), Generator::new("sigma2", 4)];
        let rels = vec![poly(&[(&[2, 0], 1), (&[0, 1], -2)]), poly(&[(&[0, 2], 1)])];
        Arc::new(GradedAlgebra::polynomial_quotient(gens, rels, 6).unwrap())
    }

    fn projective_line() -> Arc<GradedAlgebra> {
        let gens = vec![Generator::new("sigma1", 2), Generator::new("tau1", 2)];
        let rels = vec![poly(&[(&[1, 0], 1), (&[0, 1], 1)]), poly(&[(&[1, 1], 1)])];
        Arc::new(GradedAlgebra::polynomial_quotient(gens, rels, 2).unwrap())
    }

    fn gen(alg: &Arc<GradedAlgebra>, name: &str) -> Element {
        Element::generator(alg, name).unwrap()
    }

    #[test]
    fn exterior_on_one_generator() {
        let alg = GradedAlgebra::exterior(&[3]).unwrap();
        assert_eq!(alg.poincare_polynomial(), vec![1, 0, 0, 1]);
        assert_eq!(alg.total_dimension(), 2);
    }

    #[test]
    fn exterior_three_five_seven() {
        let alg = GradedAlgebra::exterior(&[3, 5, 7]).unwrap();
        assert_eq!(alg.total_dimension(), 8);
        assert_eq!(alg.top_degree(), 15);
        let mut expected = vec![0; 16];
        for d in [0, 3, 5, 7, 8, 10, 12, 15] {
            expected[d] = 1;
        }
        assert_eq!(alg.poincare_polynomial(), expected);
    }

    #[test]
    fn exterior_five_nine_top_class() {
        let alg = GradedAlgebra::exterior(&[5, 9]).unwrap();
        assert_eq!(alg.top_degree(), 14);
        assert_eq!(alg.render_monomial(alg.top_monomial()), "e5^1*e9^1");
        let mut expected = vec![0; 15];
        for d in [0, 5, 9, 14] {
            expected[d] = 1;
        }
        assert_eq!(alg.poincare_polynomial(), expected);
    }

    #[test]
    fn lagrangian_two_basis() {
        let alg = lagrangian_two();
        let rendered: Vec<Vec<String>> =
            (0..=6).map(|d| alg.basis(d).iter().map(|m| alg.render_monomial(m)).collect()).collect();
        assert_eq!(alg.top_degree(), 6);
        assert_eq!(alg.dim(0), 1);
        assert_eq!(rendered[2], ["sigma1^1"]);
        assert_eq!(rendered[4], ["sigma2^1"]);
        assert_eq!(rendered[6], ["sigma1^1*sigma2^1"]);
        assert_eq!(alg.total_dimension(), 4);
    }

    #[test]
    fn projective_line_identifies_tau_with_minus_sigma() {
        let alg = projective_line();
        assert_eq!(alg.total_dimension(), 2);
        assert_eq!(alg.top_degree(), 2);
        assert_eq!(gen(&alg, "tau1"), -&gen(&alg, "sigma1"));
        assert!((&gen(&alg, "sigma1") * &gen(&alg, "sigma1")).is_zero());
    }

    #[test]
    fn unit_relation_is_rejected() {
        let gens = vec![Generator::new("x", 2)];
        let rels = vec![poly(&[(&[2], 1)]), FreePolynomial::constant(1, int(1))];
        let err = GradedAlgebra::polynomial_quotient(gens, rels, 2).unwrap_err();
        assert!(matches!(err, Error::InvalidPresentation(_) | Error::InconsistentPresentation(_)), "{err}");
    }

    #[test]
    fn odd_generator_in_quotient_is_rejected() {
        let gens = vec![Generator::new("x", 3)];
        assert!(GradedAlgebra::polynomial_quotient(gens, vec![poly(&[(&[2], 1)])], 3).is_err());
    }

    #[test]
    fn wrong_top_degree_is_rejected() {
        let gens = vec![Generator::new("x", 2)];
        assert!(GradedAlgebra::polynomial_quotient(gens, vec![poly(&[(&[3], 1)])], 2).is_err());
    }

    #[test]
    fn cap_is_enforced() {
        let gens = vec![Generator::new("x", 2), Generator::new("y", 2)];
        let rels = vec![poly(&[(&[3, 0], 1)]), poly(&[(&[0, 3], 1)])];
        let err = GradedAlgebra::polynomial_quotient_with(gens, rels, 8, &Limits { monomial_cap: 2 }).unwrap_err();
        assert!(matches!(err, Error::CapExceeded { .. }));
    }

    #[test]
    fn exterior_tensor_square() {
        let a = GradedAlgebra::exterior_with(vec![Generator::new("a3", 3)], &Limits::default()).unwrap();
        let b = GradedAlgebra::exterior_with(vec![Generator::new("b3", 3)], &Limits::default()).unwrap();
        let t = Arc::new(GradedAlgebra::tensor_product(&a, &b).unwrap());
        assert_eq!(t.total_dimension(), 4);
        assert_eq!(t.top_degree(), 6);
        let (x, y) = (gen(&t, "a3"), gen(&t, "b3"));
        assert_eq!(&x * &y, -&(&y * &x));
        assert!(!(&x * &y).is_zero());
    }

    #[test]
    fn tensor_of_projective_lines() {
        let mk = |name: &str| {
            let gens = vec![Generator::new(name, 2)];
            GradedAlgebra::polynomial_quotient(gens, vec![poly(&[(&[2], 1)])], 2).unwrap()
        };
        let t = GradedAlgebra::tensor_product(&mk("alpha1"), &mk("beta1")).unwrap();
        assert_eq!(t.poincare_polynomial(), vec![1, 0, 2, 0, 1]);
    }

    #[test]
    fn duplicate_names_are_rejected() {
        let a = GradedAlgebra::exterior(&[3]).unwrap();
        assert!(GradedAlgebra::tensor_product(&a, &a).is_err());
    }

    #[test]
    fn exterior_products_anticommute() {
        let alg = Arc::new(GradedAlgebra::exterior(&[3, 5, 7]).unwrap());
        let (e3, e5) = (gen(&alg, "e3"), gen(&alg, "e5"));
        let e35 = &e3 * &e5;
        assert_eq!(e35.to_strings(), [("e3^1*e5^1".to_string(), "1/1".to_string())]);
        assert_eq!(&e5 * &e3, -&e35);
    }

    #[test]
    fn lagrangian_two_sigma_one_squared() {
        let alg = lagrangian_two();
        assert_eq!(&gen(&alg, "sigma1") * &gen(&alg, "sigma1"), gen(&alg, "sigma2").scale(&int(2)));
    }

    #[test]
    fn exterior_poincare_factorizes() {
        let alg = GradedAlgebra::exterior(&[3, 5, 7]).unwrap();
        let mut expected = vec![1usize];
        for d in [3, 5, 7] {
            let mut next = vec![0; expected.len() + d];
            for (i, c) in expected.iter().enumerate() {
                next[i] += c;
                next[i + d] += c;
            }
            expected = next;
        }
        assert_eq!(alg.poincare_polynomial(), expected);
    }
}
