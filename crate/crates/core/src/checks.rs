//! Named checks over the catalog: combinatorial oracles, ring and morphism
//! properties on seeded samples, and the structural identities the
//! non-vanishing arguments rely on.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::algebra::{GradedAlgebra, Limits};
use crate::catalog::rings::{
    exterior, grassmannian, grassmannian_presentation, lagrangian, lagrangian_presentation, special_unitary,
};
use crate::catalog::{certified_instances, decide_nonvanishing, exploratory_instances, verdict_for_class, FamilyParams};
use crate::duality::{ideal_basis_in_degree, ideal_contains, is_divisible, is_nondegenerate, pairing};
use crate::element::Element;
use crate::error::{Error, Result};
use crate::morphism::{FundamentalClass, Morphism};
use crate::oracles;
use crate::poly::FreePolynomial;
use crate::rational::{self, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Oracle,
    Properties,
    Identities,
}

impl Suite {
    pub const ALL: [Suite; 3] = [Suite::Oracle, Suite::Properties, Suite::Identities];

    pub fn as_str(&self) -> &'static str {
        match self {
            Suite::Oracle => "oracle",
            Suite::Properties => "properties",
            Suite::Identities => "identities",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Suite {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|suite| suite.as_str() == s)
            .ok_or_else(|| Error::InvalidParameter(format!("unknown check suite `{s}` (oracle, properties, identities)")))
    }
}

#[derive(Debug, Clone)]
pub struct CheckConfig {
    pub suites: Vec<Suite>,
    pub seed: u64,
    /// Random samples per morphism for multiplicativity.
    pub morphism_samples: usize,
    /// Random pairs or triples per ring for the ring axioms.
    pub ring_samples: usize,
    pub limits: Limits,
}

impl Default for CheckConfig {
    fn default() -> Self {
        CheckConfig { suites: Suite::ALL.to_vec(), seed: 42, morphism_samples: 100, ring_samples: 20, limits: Limits::default() }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckResult {
    pub suite: Suite,
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

fn record(out: &mut Vec<CheckResult>, suite: Suite, name: impl Into<String>, outcome: Result<(bool, String)>) {
    let (passed, detail) = outcome.unwrap_or_else(|e| (false, format!("error: {e}")));
    out.push(CheckResult { suite, name: name.into(), passed, detail });
}

pub fn run_checks(config: &CheckConfig) -> Vec<CheckResult> {
    let mut out = Vec::new();
    for suite in &config.suites {
        match suite {
            Suite::Oracle => oracle_suite(config, &mut out),
            Suite::Properties => property_suite(config, &mut out),
            Suite::Identities => identity_suite(config, &mut out),
        }
    }
    out
}

fn betti_detail(got: &[usize], expected: &[usize]) -> String {
    format!("computed {got:?}, oracle {expected:?}")
}

fn oracle_suite(config: &CheckConfig, out: &mut Vec<CheckResult>) {
    let limits = &config.limits;
    for g in 1..=6 {
        record(out, Suite::Oracle, format!("lagrangian-poincare g={g}"), (|| {
            let alg = lagrangian(g, "sigma", limits)?;
            let got = alg.poincare_polynomial();
            let expected = oracles::strict_partition_betti(g);
            let product = oracles::product_one_plus_t((1..=g).map(|i| 2 * i));
            let ok = got == expected && got == product && alg.total_dimension() == 1 << g;
            Ok((ok, betti_detail(&got, &expected)))
        })());
    }
    for q in 1..=5 {
        for p in 1..=q {
            record(out, Suite::Oracle, format!("grassmannian-poincare p={p} q={q}"), (|| {
                let alg = grassmannian(p, q, "sigma", "tau", limits)?;
                let got = alg.poincare_polynomial();
                let expected = oracles::box_partition_betti(p, q);
                let ok = got == expected && alg.total_dimension() as u128 == oracles::binomial(p + q, p);
                Ok((ok, betti_detail(&got, &expected)))
            })());
        }
    }
    for n in 2..=9 {
        record(out, Suite::Oracle, format!("special-unitary-poincare n={n}"), (|| {
            let alg = special_unitary(n, limits)?;
            let degrees: Vec<usize> = (2..=n).map(|i| 2 * i - 1).collect();
            let got = alg.poincare_polynomial();
            let expected = oracles::exterior_betti(&degrees);
            let ok = got == expected && got == oracles::product_one_plus_t(degrees.iter().copied());
            Ok((ok, betti_detail(&got, &expected)))
        })());
    }
    for params in certified_instances().iter().chain(exploratory_instances().iter()) {
        out.extend(instance_oracle_checks(params, config));
    }
    for g in 1..=4 {
        record(out, Suite::Oracle, format!("lagrangian-relations-from-roots g={g}"), lagrangian_roots_check(g));
    }
    for n in 2..=6 {
        for p in 1..n {
            let q = n - p;
            record(out, Suite::Oracle, format!("grassmannian-relations-from-roots p={p} q={q}"), grassmannian_roots_check(p, q));
        }
    }
}

fn convolve(a: &[usize], b: &[usize]) -> Vec<usize> {
    let mut out = vec![0; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

/// Betti numbers of both compact duals of an instance, from the enumerators
/// alone: exterior degrees for the unitary groups, strict partitions for
/// Lagrangian factors, box partitions for Grassmannian factors.
pub fn oracle_betti(params: &FamilyParams) -> (Vec<usize>, Vec<usize>) {
    match params {
        FamilyParams::SlImagSp { n } => (
            oracles::exterior_betti(&(2..=2 * n).map(|i| 2 * i - 1).collect::<Vec<_>>()),
            oracles::exterior_betti(&(1..=*n).map(|j| 4 * j - 1).collect::<Vec<_>>()),
        ),
        FamilyParams::SlOddReal { n } => (
            oracles::exterior_betti(&(2..=2 * n + 1).map(|i| 2 * i - 1).collect::<Vec<_>>()),
            oracles::exterior_betti(&(1..=*n).map(|j| 4 * j + 1).collect::<Vec<_>>()),
        ),
        FamilyParams::Siegel { g, parts } => (
            oracles::strict_partition_betti(*g),
            parts.iter().fold(vec![1], |acc, gi| convolve(&acc, &oracles::strict_partition_betti(*gi))),
        ),
        FamilyParams::Unitary { p, q, parts } => (
            oracles::box_partition_betti(*p, *q),
            parts.iter().fold(vec![1], |acc, (pi, qi)| convolve(&acc, &oracles::box_partition_betti(*pi, *qi))),
        ),
        FamilyParams::SpInUgg { g } => (oracles::box_partition_betti(*g, *g), oracles::strict_partition_betti(*g)),
    }
}

/// Betti numbers of an instance's rings against [`oracle_betti`].
pub fn instance_oracle_checks(params: &FamilyParams, config: &CheckConfig) -> Vec<CheckResult> {
    let mut out = Vec::new();
    record(&mut out, Suite::Oracle, format!("instance-poincare {}", params.label()), (|| {
        let inst = params.build(&config.limits)?;
        let (g, h) = (inst.dual_g.poincare_polynomial(), inst.dual_h.poincare_polynomial());
        let (eg, eh) = oracle_betti(params);
        Ok((g == eg && h == eh, format!("G {}; H {}", betti_detail(&g, &eg), betti_detail(&h, &eh))))
    })());
    out
}

// Substitutes σ_k = e_k(x) into each Lagrangian relation and compares with the
// matching graded piece of ∏(1 - x_i^2), expanded directly in the roots.
fn lagrangian_roots_check(g: usize) -> Result<(bool, String)> {
    let pres = lagrangian_presentation(g, "sigma")?;
    let roots = oracles::root_generators("x", g);
    let images: Vec<FreePolynomial> = (1..=g).map(|k| oracles::elementary(g, 0, g, k)).collect();
    let mut product = FreePolynomial::constant(g, rational::one());
    for i in 0..g {
        let xi = FreePolynomial::generator(g, i);
        let factor = FreePolynomial::constant(g, rational::one()).add(&xi.mul(&xi, &roots).scale(&rational::int(-1)));
        product = product.mul(&factor, &roots);
    }
    let mut degrees = Vec::new();
    for r in &pres.relations {
        let d = r.homogeneous_degree(&pres.generators)?.unwrap_or(0);
        let lhs = oracles::substitute(r, &images, &roots);
        if lhs != oracles::component(&product, &roots, d) {
            return Ok((false, format!("relation in degree {d} disagrees with the root expansion")));
        }
        degrees.push(d);
    }
    let expected: Vec<usize> = (1..=g).map(|m| 4 * m).collect();
    Ok((degrees == expected, format!("relations in degrees {degrees:?} match the root expansion")))
}

// Substitutes σ_i = e_i(x), τ_j = e_j(y) into each Grassmannian relation and
// compares with the graded piece of ∏(1 + x_i) ∏(1 + y_j).
fn grassmannian_roots_check(p: usize, q: usize) -> Result<(bool, String)> {
    let pres = grassmannian_presentation(p, q, "sigma", "tau")?;
    let n = p + q;
    let mut roots = oracles::root_generators("x", p);
    roots.extend(oracles::root_generators("y", q));
    // Declared order is τ_1..τ_q, σ_1..σ_p.
    let mut images: Vec<FreePolynomial> = (1..=q).map(|j| oracles::elementary(n, p, q, j)).collect();
    images.extend((1..=p).map(|i| oracles::elementary(n, 0, p, i)));
    let mut product = FreePolynomial::constant(n, rational::one());
    for i in 0..n {
        let factor = FreePolynomial::constant(n, rational::one()).add(&FreePolynomial::generator(n, i));
        product = product.mul(&factor, &roots);
    }
    let mut degrees = Vec::new();
    for r in &pres.relations {
        let d = r.homogeneous_degree(&pres.generators)?.unwrap_or(0);
        let lhs = oracles::substitute(r, &images, &roots);
        if lhs != oracles::component(&product, &roots, d) {
            return Ok((false, format!("relation in degree {d} disagrees with the root expansion")));
        }
        degrees.push(d);
    }
    let expected: Vec<usize> = (1..=n).map(|m| 2 * m).collect();
    Ok((degrees == expected, format!("relations in degrees {degrees:?} match the root expansion")))
}

fn sample_degree<R: Rng>(alg: &GradedAlgebra, rng: &mut R) -> usize {
    let degrees: Vec<usize> = (0..=alg.top_degree()).filter(|d| alg.dim(*d) > 0).collect();
    degrees[rng.gen_range(0..degrees.len())]
}

fn sign_of(k: usize) -> Rational {
    if k.is_multiple_of(2) {
        Rational::one()
    } else {
        -Rational::one()
    }
}

/// Ring axioms and duality on one algebra.
pub fn ring_properties(label: &str, alg: &Arc<GradedAlgebra>, samples: usize, seed: u64) -> Vec<CheckResult> {
    let mut out = Vec::new();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    record(&mut out, Suite::Properties, format!("duality {label}"), Ok((is_nondegenerate(alg), "pairing matrices invertible".into())));
    let betti = alg.poincare_polynomial();
    let palindrome = betti.iter().eq(betti.iter().rev()) && betti.first() == Some(&1) && betti.last() == Some(&1);
    record(&mut out, Suite::Properties, format!("palindromic {label}"), Ok((palindrome, format!("{betti:?}"))));
    let mut commutative = true;
    let mut associative = true;
    for _ in 0..samples {
        let (da, db, dc) = (sample_degree(alg, &mut rng), sample_degree(alg, &mut rng), sample_degree(alg, &mut rng));
        let a = Element::random_homogeneous(alg, da, &mut rng);
        let b = Element::random_homogeneous(alg, db, &mut rng);
        let c = Element::random_homogeneous(alg, dc, &mut rng);
        commutative &= &a * &b == (&b * &a).scale(&sign_of(da * db));
        associative &= &(&a * &b) * &c == &a * &(&b * &c);
    }
    record(&mut out, Suite::Properties, format!("graded-commutativity {label}"), Ok((commutative, format!("{samples} pairs"))));
    record(&mut out, Suite::Properties, format!("associativity {label}"), Ok((associative, format!("{samples} triples"))));
    if alg.relations().is_empty() && alg.generators().iter().all(|g| g.is_odd()) {
        let squares = alg.generators().iter().all(|g| {
            let e = Element::generator(alg, &g.name).expect("own generator");
            (&e * &e).is_zero()
        });
        let total = alg.total_dimension() == 1 << alg.generators().len();
        record(&mut out, Suite::Properties, format!("exterior-squares {label}"), Ok((squares && total, "g*g = 0, total 2^k".into())));
    }
    out
}

/// Ring, morphism and verdict properties of one catalog instance.
pub fn instance_checks(params: &FamilyParams, config: &CheckConfig) -> Vec<CheckResult> {
    let mut out = Vec::new();
    if let Err(e) = instance_properties(params, config, &mut out) {
        record(&mut out, Suite::Properties, format!("construct {}", params.label()), Err(e));
    }
    out
}

fn instance_properties(params: &FamilyParams, config: &CheckConfig, out: &mut Vec<CheckResult>) -> Result<()> {
    let label = params.label();
    let inst = params.build(&config.limits)?;
    let seed = config.seed;
    out.extend(ring_properties(&format!("{label} G"), &inst.dual_g, config.ring_samples, seed));
    out.extend(ring_properties(&format!("{label} H"), &inst.dual_h, config.ring_samples, seed.wrapping_add(1)));
    record(out, Suite::Properties, format!("multiplicativity {label}"), Ok((
        inst.restriction.verify_multiplicativity(config.morphism_samples, seed),
        format!("{} samples", config.morphism_samples),
    )));
    let verdict = decide_nonvanishing(&inst)?;
    let class = &verdict.fundamental_class;
    record(out, Suite::Properties, format!("gysin-soundness {label}"), Ok((
        inst.restriction.satisfies_gysin_identity(&class.element, &class.target_top_value),
        format!("class {}", class.element),
    )));
    let round_trip = match &verdict.witness {
        Some(u) => ideal_contains(u, &inst.franke_ideal)? && !pairing(&class.element, u)?.is_zero(),
        None => true,
    };
    record(out, Suite::Properties, format!("witness-round-trip {label}"), Ok((round_trip, format!("{:?}", verdict.witness.as_ref().map(|w| w.to_string())))));

    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed);
    let mut invariant = true;
    let mut scalars = Vec::new();
    for _ in 0..3 {
        let num: i64 = rng.gen_range(1..=9) * if rng.gen_bool(0.5) { 1 } else { -1 };
        let den: i64 = rng.gen_range(1..=9);
        let lambda = Rational::new(num.into(), den.into());
        let rescaled = inst.restriction.gysin_with_orientation(&(&class.target_top_value * &lambda))?;
        let scaled_class = FundamentalClass { element: class.element.scale(&lambda), ..class.clone() };
        invariant &= rescaled.element == scaled_class.element;
        let again = verdict_for_class(&inst, rescaled)?;
        invariant &= again.nonvanishing == verdict.nonvanishing;
        invariant &= match (&again.ghost, &verdict.ghost) {
            (Some(a), Some(b)) => {
                a.is_ghost == b.is_ghost
                    && a.not_compactly_supported == b.not_compactly_supported
                    && a.levi_restriction_in_levi_kernel == b.levi_restriction_in_levi_kernel
            }
            (None, None) => true,
            _ => false,
        };
        scalars.push(rational::to_fraction_string(&lambda));
    }
    record(out, Suite::Properties, format!("scalar-invariance {label}"), Ok((invariant, format!("rescaled by {}", scalars.join(", ")))));

    if let (Some(data), Some(cert)) = (&inst.ghost, &verdict.ghost) {
        record(out, Suite::Properties, format!("levi-multiplicativity {label}"), Ok((
            data.levi_restriction.verify_multiplicativity(config.morphism_samples, seed),
            format!("{} samples", config.morphism_samples),
        )));
        let quotient_ok = match &cert.levi_quotient {
            Some(w) => &data.levi_top_generator * w == cert.levi_image,
            None => true,
        };
        record(out, Suite::Properties, format!("divisibility-witness {label}"), Ok((quotient_ok, "top generator * w = Levi image".into())));
        record(out, Suite::Properties, format!("functoriality {label}"), functoriality(&inst.dual_g, &data.levi_restriction, config, seed));
    }
    Ok(())
}

// Restriction through two successive Levi factors agrees with the direct map.
fn functoriality(source: &Arc<GradedAlgebra>, first: &Morphism, config: &CheckConfig, seed: u64) -> Result<(bool, String)> {
    let middle = first.target().clone();
    let degrees: Vec<usize> = middle.generators().iter().map(|g| g.degree).collect();
    if degrees.len() < 2 {
        return Ok((true, "Levi target too small to compose".into()));
    }
    let last = exterior(&degrees[..degrees.len() - 1], &config.limits)?;
    let project = |from: &Arc<GradedAlgebra>| -> Result<Morphism> {
        let images = from
            .generators()
            .iter()
            .map(|g| Element::generator(&last, &g.name).unwrap_or_else(|_| Element::zero(&last)))
            .collect();
        Morphism::from_images(from, &last, images)
    };
    let second = project(&middle)?;
    let direct = project(source)?;
    let composite = first.then(&second)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut ok = true;
    for _ in 0..config.ring_samples {
        let d = sample_degree(source, &mut rng);
        let v = Element::random_homogeneous(source, d, &mut rng);
        ok &= composite.apply(&v)? == direct.apply(&v)? && second.apply(&first.apply(&v)?)? == direct.apply(&v)?;
    }
    Ok((ok, format!("{} samples through {} generators", config.ring_samples, degrees.len() - 1)))
}

fn property_suite(config: &CheckConfig, out: &mut Vec<CheckResult>) {
    for params in certified_instances().iter().chain(exploratory_instances().iter()) {
        out.extend(instance_checks(params, config));
    }
}

/// `Some(λ)` if `v` is a nonzero multiple `λ` of the top class.
pub fn top_multiple(v: &Element) -> Option<Rational> {
    let top = v.algebra().top_degree();
    (v.degree() == Some(top)).then(|| v.top_coefficient()).filter(|c| !c.is_zero())
}

fn gens(alg: &Arc<GradedAlgebra>, names: impl IntoIterator<Item = String>) -> Result<Element> {
    let mut acc = Element::one(alg);
    for name in names {
        acc = &acc * &Element::generator(alg, &name)?;
    }
    Ok(acc)
}

fn fraction(v: &Rational) -> String {
    rational::to_fraction_string(v)
}

fn identity_suite(config: &CheckConfig, out: &mut Vec<CheckResult>) {
    let limits = &config.limits;
    for g in 1..=6 {
        record(out, Suite::Identities, format!("lagrangian-vanishing-products g={g}"), (|| {
            let alg = lagrangian(g, "sigma", limits)?;
            for k in 1..=g {
                let sk = Element::generator(&alg, &format!("sigma{k}"))?;
                let rest = gens(&alg, (k + 1..=g).map(|j| format!("sigma{j}")))?;
                if !(&(&sk * &sk) * &rest).is_zero() {
                    return Ok((false, format!("sigma{k}^2 * sigma{}..sigma{g} is nonzero", k + 1)));
                }
            }
            Ok((true, format!("sigma_k^2 sigma_(k+1)..sigma_{g} = 0 for k = 1..{g}")))
        })());
        record(out, Suite::Identities, format!("lagrangian-top-generators g={g}"), (|| {
            let alg = lagrangian(g, "sigma", limits)?;
            let product = gens(&alg, (1..=g).map(|k| format!("sigma{k}")))?;
            let power = Element::generator(&alg, "sigma1")?.pow((g * (g + 1) / 2) as u32);
            match (top_multiple(&product), top_multiple(&power)) {
                (Some(a), Some(b)) => Ok((true, format!("sigma1..sigma{g} = {} top, sigma1^{} = {} * sigma1..sigma{g}", fraction(&a), g * (g + 1) / 2, fraction(&(b / &a))))),
                _ => Ok((false, "a product fails to reach the top class".into())),
            }
        })());
        record(out, Suite::Identities, format!("lagrangian-top-square g={g}"), (|| {
            let alg = lagrangian(g, "sigma", limits)?;
            let sg = Element::generator(&alg, &format!("sigma{g}"))?;
            Ok(((&sg * &sg).is_zero(), format!("sigma{g}^2 = 0")))
        })());
    }
    for q in 1..=5 {
        for p in 1..=q {
            let grass = grassmannian(p, q, "sigma", "tau", limits);
            record(out, Suite::Identities, format!("grassmannian-tau-power p={p} q={q}"), (|| {
                let alg = grass.clone()?;
                let tq = Element::generator(&alg, &format!("tau{q}"))?;
                match top_multiple(&tq.pow(p as u32)) {
                    Some(c) => Ok((true, format!("tau{q}^{p} = {} top", fraction(&c)))),
                    None => Ok((false, format!("tau{q}^{p} is not a nonzero top class"))),
                }
            })());
            record(out, Suite::Identities, format!("grassmannian-kahler-power p={p} q={q}"), (|| {
                let alg = grass.clone()?;
                let tq = Element::generator(&alg, &format!("tau{q}"))?;
                let d = (p - 1) * q;
                let lhs = &tq * &Element::generator(&alg, "sigma1")?.pow(d as u32);
                let rhs = tq.pow(p as u32);
                match (top_multiple(&lhs), top_multiple(&rhs)) {
                    (Some(a), Some(b)) => {
                        let ratio = &a / &b;
                        Ok((true, format!("tau{q}*sigma1^{d} = {} * tau{q}^{p}; literal equality {}", fraction(&ratio), ratio.is_one())))
                    }
                    _ => Ok((false, format!("tau{q}*sigma1^{d} or tau{q}^{p} vanishes"))),
                }
            })());
            record(out, Suite::Identities, format!("grassmannian-top-relation p={p} q={q}"), (|| {
                let alg = grass.clone()?;
                let prod = &Element::generator(&alg, &format!("sigma{p}"))? * &Element::generator(&alg, &format!("tau{q}"))?;
                Ok((prod.is_zero(), format!("sigma{p}*tau{q} = 0")))
            })());
        }
    }
    for n in 2..=5 {
        record(out, Suite::Identities, format!("closed-form sl-imag-sp n={n}"), closed_form(FamilyParams::SlImagSp { n }, limits));
    }
    for n in 1..=4 {
        record(out, Suite::Identities, format!("closed-form sl-odd-real n={n}"), closed_form(FamilyParams::SlOddReal { n }, limits));
    }
    for params in certified_instances() {
        let label = params.label();
        record(out, Suite::Identities, format!("nonvanishing {label}"), (|| {
            let inst = params.build(limits)?;
            let verdict = decide_nonvanishing(&inst)?;
            let mut ok = verdict.nonvanishing;
            let mut detail = match &verdict.witness {
                Some(w) => format!("witness {w}"),
                None => "no witness".to_string(),
            };
            for check in &verdict.identity_checks {
                // The τ-restriction shortcut is reported, not required.
                if check.name != "tau-restriction-shortcut" {
                    ok &= check.holds;
                }
                detail.push_str(&format!("; {}: {} ({})", check.name, check.holds, check.detail));
            }
            Ok((ok, detail))
        })());
    }
    for params in (2..=5).map(|n| FamilyParams::SlImagSp { n }).chain((1..=4).map(|n| FamilyParams::SlOddReal { n })) {
        record(out, Suite::Identities, format!("ghost {}", params.label()), (|| {
            let inst = params.build(limits)?;
            let verdict = decide_nonvanishing(&inst)?;
            let cert = verdict.ghost.ok_or_else(|| Error::InvalidParameter("family carries no Levi data".into()))?;
            Ok((cert.is_ghost, cert.note))
        })());
    }
    for g in 2..=5 {
        record(out, Suite::Identities, format!("lagrangian-kernel g={g}"), lagrangian_kernel_check(g, limits));
    }
}

fn closed_form(params: FamilyParams, limits: &Limits) -> Result<(bool, String)> {
    let inst = params.build(limits)?;
    let class = inst.restriction.gysin_fundamental_class()?;
    let degrees: Vec<usize> = match params {
        FamilyParams::SlImagSp { n } => (2..=n).map(|j| 4 * j - 3).collect(),
        FamilyParams::SlOddReal { n } => (1..=n).map(|j| 4 * j - 1).collect(),
        _ => return Err(Error::InvalidParameter("closed form known only for the SL families".into())),
    };
    let expected = gens(&inst.dual_g, degrees.iter().map(|d| format!("e{d}")))?;
    let (mono, unit) = expected.terms().next().map(|(m, c)| (m.clone(), c.clone())).expect("nonzero monomial");
    let lambda = class.element.coefficient(&mono) / unit;
    let ok = !lambda.is_zero() && class.element == expected.scale(&lambda);
    Ok((ok, format!("class = {} * {}", fraction(&lambda), expected)))
}

/// The substitution map Lagrangian(g) → Lagrangian(g-1), `σ_k ↦ σ_k` for
/// `k < g` and `σ_g ↦ 0`, has kernel equal to the ideal `(σ_g)` in each degree.
pub fn lagrangian_kernel_check(g: usize, limits: &Limits) -> Result<(bool, String)> {
    let source = lagrangian(g, "sigma", limits)?;
    let target = lagrangian(g - 1, "tau", limits)?;
    let mut images: Vec<Element> = (1..g).map(|k| Element::generator(&target, &format!("tau{k}"))).collect::<Result<_>>()?;
    images.push(Element::zero(&target));
    let map = Morphism::from_images(&source, &target, images)?;
    let sg = Element::generator(&source, &format!("sigma{g}"))?;
    let mut dims = Vec::new();
    for d in 0..=source.top_degree() {
        let ideal = ideal_basis_in_degree(&source, std::slice::from_ref(&sg), d)?;
        for v in &ideal {
            if !map.apply(v)?.is_zero() {
                return Ok((false, format!("ideal element {v} in degree {d} has nonzero image")));
            }
        }
        let kernel_dim = source.dim(d) - map.rank_in_degree(d);
        if kernel_dim != ideal.len() {
            return Ok((false, format!("degree {d}: kernel dimension {kernel_dim}, ideal dimension {}", ideal.len())));
        }
        dims.push(ideal.len());
    }
    Ok((true, format!("kernel dimensions per degree {dims:?}")))
}

/// Divisibility of `v` by `g` with the witness re-checked.
pub fn divisibility_witness(v: &Element, g: &Element) -> Result<Option<Element>> {
    let w = is_divisible(v, g)?;
    if let Some(w) = &w {
        if &(g * w) != v {
            return Err(Error::InconsistentPresentation("divisibility witness fails g*w = v".into()));
        }
    }
    Ok(w)
}
