//! The (G, H) families: their compact-dual rings, restriction maps and
//! Borel-kernel ideals, and the decision procedures built on them.
//!
//! A class `v` of `H*(X̂)` dies under the Borel map exactly when it is
//! orthogonal, under Poincaré duality, to the family's ideal (the classes
//! vanishing on every Levi compact dual). Those ideals are fixed per family.

pub mod rings;

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use num_traits::Zero;

use crate::algebra::{GradedAlgebra, Limits};
use crate::duality::{ideal_contains, is_divisible, pairing, pairs_nontrivially_with_ideal};
use crate::element::Element;
use crate::error::{Error, Result};
use crate::morphism::{FundamentalClass, Morphism};
use crate::rational::{self, Rational};

use rings::{exterior, grassmannian, lagrangian, part_prefix, sign, special_unitary, tensor_all};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FamilyId {
    SlImagSp,
    SlOddReal,
    SiegelProduct,
    UnitaryProduct,
    SpInUgg,
}

impl FamilyId {
    pub const ALL: [FamilyId; 5] =
        [FamilyId::SlImagSp, FamilyId::SlOddReal, FamilyId::SiegelProduct, FamilyId::UnitaryProduct, FamilyId::SpInUgg];

    pub fn as_str(&self) -> &'static str {
        match self {
            FamilyId::SlImagSp => "sl-imag-sp",
            FamilyId::SlOddReal => "sl-odd-real",
            FamilyId::SiegelProduct => "siegel-product",
            FamilyId::UnitaryProduct => "unitary-product",
            FamilyId::SpInUgg => "sp-in-ugg",
        }
    }
}

impl fmt::Display for FamilyId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for FamilyId {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "sl-imag-sp" => FamilyId::SlImagSp,
            "sl-odd-real" => FamilyId::SlOddReal,
            "siegel-product" | "siegel" => FamilyId::SiegelProduct,
            "unitary-product" | "unitary" => FamilyId::UnitaryProduct,
            "sp-in-ugg" => FamilyId::SpInUgg,
            other => return Err(Error::InvalidParameter(format!("unknown family `{other}`"))),
        })
    }
}

/// Family parameters, named as in the classical statements (n, g, a, b, p, q, p_i, q_i).
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FamilyParams {
    /// `R_{E/Q} Sp_{2n} ⊂ R_{E/Q} SL_{2n}`.
    SlImagSp { n: usize },
    /// `SL_{2n+1} ⊂ R_{E/Q} SL_{2n+1}`.
    SlOddReal { n: usize },
    /// `∏ Sp_{2g_i} ⊂ Sp_{2g}`, parts in nonincreasing order.
    Siegel { g: usize, parts: Vec<usize> },
    /// `∏ U(p_i, q_i) ⊂ U(p, q)`.
    Unitary { p: usize, q: usize, parts: Vec<(usize, usize)> },
    /// `Sp_{2g} ⊂ U(g, g)`.
    SpInUgg { g: usize },
}

impl FamilyParams {
    pub fn family(&self) -> FamilyId {
        match self {
            FamilyParams::SlImagSp { .. } => FamilyId::SlImagSp,
            FamilyParams::SlOddReal { .. } => FamilyId::SlOddReal,
            FamilyParams::Siegel { .. } => FamilyId::SiegelProduct,
            FamilyParams::Unitary { .. } => FamilyId::UnitaryProduct,
            FamilyParams::SpInUgg { .. } => FamilyId::SpInUgg,
        }
    }

    pub fn label(&self) -> String {
        match self {
            FamilyParams::SlImagSp { n } | FamilyParams::SlOddReal { n } => format!("{} n={n}", self.family()),
            FamilyParams::Siegel { g, parts } => format!(
                "{} g={g} parts={}",
                self.family(),
                parts.iter().map(|p| p.to_string()).collect::<Vec<_>>().join(",")
            ),
            FamilyParams::Unitary { p, q, parts } => format!(
                "{} p={p} q={q} parts={}",
                self.family(),
                parts.iter().map(|(a, b)| format!("{a}:{b}")).collect::<Vec<_>>().join(",")
            ),
            FamilyParams::SpInUgg { g } => format!("{} g={g}", self.family()),
        }
    }

    /// Rejects parameters outside the family's range before any construction.
    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidParameter(msg));
        match self {
            FamilyParams::SlImagSp { n } if *n < 1 => bad(format!("sl-imag-sp needs n >= 1, got {n}")),
            FamilyParams::SlOddReal { n } if *n < 1 => bad(format!("sl-odd-real needs n >= 1, got {n}")),
            FamilyParams::Siegel { g, parts } => {
                if *g < 1 {
                    return bad(format!("siegel needs g >= 1, got {g}"));
                }
                if parts.len() < 2 || parts.contains(&0) {
                    return bad(format!("siegel needs at least two positive parts, got {parts:?}"));
                }
                if parts.windows(2).any(|w| w[0] < w[1]) {
                    return bad(format!("siegel parts {parts:?} must be nonincreasing"));
                }
                let sum: usize = parts.iter().sum();
                if sum != *g {
                    return bad(format!("siegel parts {parts:?} sum to {sum}, not g={g}"));
                }
                Ok(())
            }
            FamilyParams::Unitary { p, q, parts } => {
                if *p < 1 || q < p {
                    return bad(format!("unitary needs q >= p >= 1, got p={p}, q={q}"));
                }
                if parts.is_empty() || parts.iter().any(|(a, b)| *a == 0 || *b == 0) {
                    return bad("unitary parts need p_i, q_i >= 1".into());
                }
                let sp: usize = parts.iter().map(|x| x.0).sum();
                let sq: usize = parts.iter().map(|x| x.1).sum();
                if sp != *p {
                    return bad(format!("unitary parts have sum p_i = {sp}, expected p = {p}"));
                }
                if sq > *q {
                    return bad(format!("unitary parts have sum q_i = {sq} > q = {q}"));
                }
                Ok(())
            }
            FamilyParams::SpInUgg { g } if *g < 1 => bad(format!("sp-in-ugg needs g >= 1, got {g}")),
            _ => Ok(()),
        }
    }

    /// True when the instance is decided computationally without a classical
    /// proof to compare against (three or more symplectic factors).
    pub fn is_exploratory(&self) -> bool {
        matches!(self, FamilyParams::Siegel { parts, .. } if parts.len() >= 3)
    }

    pub fn build(&self, limits: &Limits) -> Result<FamilyInstance> {
        self.validate()?;
        match self {
            FamilyParams::SlImagSp { n } => family_sl_imag_sp(*n, limits),
            FamilyParams::SlOddReal { n } => family_sl_odd_real(*n, limits),
            FamilyParams::Siegel { g, parts } => family_siegel(*g, parts, limits),
            FamilyParams::Unitary { p, q, parts } => family_unitary(*p, *q, parts, limits),
            FamilyParams::SpInUgg { g } => family_sp_in_ugg(*g, limits),
        }
    }
}

/// Partitions of `total` into at most `max_parts` positive parts, nonincreasing,
/// in lexicographically decreasing order.
pub fn partitions(total: usize, max_parts: usize) -> Vec<Vec<usize>> {
    fn walk(left: usize, cap: usize, slots: usize, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if left == 0 {
            out.push(prefix.clone());
            return;
        }
        if slots == 0 {
            return;
        }
        for part in (1..=cap.min(left)).rev() {
            prefix.push(part);
            walk(left - part, part, slots - 1, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    walk(total, total, max_parts, &mut Vec::new(), &mut out);
    out
}

/// Lists of `(p_i, q_i)` with `Σ p_i = p`, `Σ q_i ≤ q` (or `= q` when
/// `exact_q`), at most `max_parts` entries, in nonincreasing order.
pub fn unitary_part_lists(p: usize, q: usize, max_parts: usize, exact_q: bool) -> Vec<Vec<(usize, usize)>> {
    fn walk(
        p_left: usize,
        q_left: usize,
        cap: (usize, usize),
        slots: usize,
        exact_q: bool,
        prefix: &mut Vec<(usize, usize)>,
        out: &mut Vec<Vec<(usize, usize)>>,
    ) {
        if p_left == 0 {
            if !exact_q || q_left == 0 {
                out.push(prefix.clone());
            }
            return;
        }
        if slots == 0 {
            return;
        }
        for pi in (1..=p_left).rev() {
            for qi in (1..=q_left).rev() {
                if (pi, qi) > cap {
                    continue;
                }
                prefix.push((pi, qi));
                walk(p_left - pi, q_left - qi, (pi, qi), slots - 1, exact_q, prefix, out);
                prefix.pop();
            }
        }
    }
    let mut out = Vec::new();
    walk(p, q, (p, q), max_parts, exact_q, &mut Vec::new(), &mut out);
    out
}

/// Instances whose non-vanishing is asserted by a classical proof, at the
/// ranks used by the acceptance suite.
pub fn certified_instances() -> Vec<FamilyParams> {
    let mut out = Vec::new();
    out.extend((1..=5).map(|n| FamilyParams::SlImagSp { n }));
    out.extend((1..=4).map(|n| FamilyParams::SlOddReal { n }));
    for g in 2..=5 {
        for parts in partitions(g, 2).into_iter().filter(|p| p.len() == 2) {
            out.push(FamilyParams::Siegel { g, parts });
        }
    }
    for q in 1..=4 {
        for p in 1..=q {
            for parts in unitary_part_lists(p, q, p, true) {
                out.push(FamilyParams::Unitary { p, q, parts });
            }
        }
    }
    out.extend((1..=4).map(|g| FamilyParams::SpInUgg { g }));
    out
}

/// Instances outside the certified list: three or more symplectic factors,
/// which no classical proof covers, and unitary parts with `Σ q_i < q`.
pub fn exploratory_instances() -> Vec<FamilyParams> {
    let mut out = Vec::new();
    for g in 3..=5 {
        for parts in partitions(g, g).into_iter().filter(|p| p.len() >= 3) {
            out.push(FamilyParams::Siegel { g, parts });
        }
    }
    for q in 2..=4 {
        for p in 1..q {
            for parts in unitary_part_lists(p, q, p, false) {
                if parts.iter().map(|x| x.1).sum::<usize>() < q {
                    out.push(FamilyParams::Unitary { p, q, parts });
                }
            }
        }
    }
    out
}

/// Data for the ghost-class argument through one principal Levi restriction.
#[derive(Clone, Debug)]
pub struct GhostData {
    /// Generators of the ideal of classes vanishing on all Levi compact duals.
    pub compact_support_ideal: Vec<Element>,
    pub levi_restriction: Morphism,
    /// The Levi's own Borel-kernel ideal.
    pub levi_franke_ideal: Vec<Element>,
    /// Top generator of the Levi's exterior algebra.
    pub levi_top_generator: Element,
    /// The other divisor that can be read into the divisibility condition.
    pub alternative_divisor: Element,
}

#[derive(Clone, Debug)]
pub struct FamilyInstance {
    pub params: FamilyParams,
    pub dual_g: Arc<GradedAlgebra>,
    pub dual_h: Arc<GradedAlgebra>,
    pub restriction: Morphism,
    /// Generators of the ideal whose orthogonal complement is the Borel kernel.
    pub franke_ideal: Vec<Element>,
    pub ghost: Option<GhostData>,
}

fn gen(alg: &Arc<GradedAlgebra>, name: &str) -> Element {
    Element::generator(alg, name).expect("generator exists by construction")
}

fn exterior_projection(source: &Arc<GradedAlgebra>, target: &Arc<GradedAlgebra>) -> Result<Morphism> {
    let images = source
        .generators()
        .iter()
        .map(|g| Element::generator(target, &g.name).unwrap_or_else(|_| Element::zero(target)))
        .collect();
    Morphism::from_images(source, target, images)
}

/// `G = R_{E/Q} SL_{2n}`, `H = R_{E/Q} Sp_{2n}`: `Λ(e_3, .., e_{4n-1}) → Λ(e_3, e_7, .., e_{4n-1})`.
pub fn family_sl_imag_sp(n: usize, limits: &Limits) -> Result<FamilyInstance> {
    let params = FamilyParams::SlImagSp { n };
    params.validate()?;
    let dual_g = special_unitary(2 * n, limits)?;
    let h_degrees: Vec<usize> = (1..=n).map(|j| 4 * j - 1).collect();
    let dual_h = exterior(&h_degrees, limits)?;
    let restriction = exterior_projection(&dual_g, &dual_h)?;
    let top_gen = gen(&dual_g, &format!("e{}", 4 * n - 1));
    let ghost = if n >= 2 {
        let levi = special_unitary(2 * n - 1, limits)?;
        let levi_top = gen(&levi, &format!("e{}", 4 * n - 3));
        Some(GhostData {
            compact_support_ideal: vec![top_gen.clone()],
            levi_restriction: exterior_projection(&dual_g, &levi)?,
            levi_franke_ideal: vec![levi_top.clone()],
            levi_top_generator: levi_top,
            alternative_divisor: gen(&dual_g, &format!("e{}", 4 * n - 3)),
        })
    } else {
        None
    };
    Ok(FamilyInstance { params, dual_g, dual_h, restriction, franke_ideal: vec![top_gen], ghost })
}

/// `G = R_{E/Q} SL_{2n+1}`, `H = SL_{2n+1}`: `Λ(e_3, .., e_{4n+1}) → Λ(e_5, e_9, .., e_{4n+1})`.
///
/// The generators kept by the restriction are those of degree `1 mod 4`,
/// which are the generators of the target ring.
pub fn family_sl_odd_real(n: usize, limits: &Limits) -> Result<FamilyInstance> {
    let params = FamilyParams::SlOddReal { n };
    params.validate()?;
    let dual_g = special_unitary(2 * n + 1, limits)?;
    let h_degrees: Vec<usize> = (1..=n).map(|j| 4 * j + 1).collect();
    let dual_h = exterior(&h_degrees, limits)?;
    let restriction = exterior_projection(&dual_g, &dual_h)?;
    let top_gen = gen(&dual_g, &format!("e{}", 4 * n + 1));
    let levi = special_unitary(2 * n, limits)?;
    let levi_top = gen(&levi, &format!("e{}", 4 * n - 1));
    let ghost = Some(GhostData {
        compact_support_ideal: vec![top_gen.clone()],
        levi_restriction: exterior_projection(&dual_g, &levi)?,
        levi_franke_ideal: vec![levi_top.clone()],
        levi_top_generator: levi_top,
        alternative_divisor: gen(&dual_g, &format!("e{}", 4 * n - 1)),
    });
    Ok(FamilyInstance { params, dual_g, dual_h, restriction, franke_ideal: vec![top_gen], ghost })
}

// Degree-`2k` component of `∏_i (1 + Σ_j x^{(i)}_j)` for the named factor generators.
fn total_class_component(alg: &Arc<GradedAlgebra>, factors: &[Vec<Element>], k: usize) -> Element {
    let mut total = Element::one(alg);
    for gens in factors {
        let mut series = Element::one(alg);
        for g in gens {
            series = &series + g;
        }
        total = &total * &series;
    }
    total.component(2 * k)
}

/// `G = Sp_{2g}`, `H = ∏ Sp_{2g_i}`: Lagrangian(g) → ⊗ Lagrangian(g_i) with
/// `σ_k ↦ Σ_{k_1+..+k_l=k} ∏ σ^{(i)}_{k_i}`.
pub fn family_siegel(g: usize, parts: &[usize], limits: &Limits) -> Result<FamilyInstance> {
    let params = FamilyParams::Siegel { g, parts: parts.to_vec() };
    params.validate()?;
    let dual_g = lagrangian(g, "sigma", limits)?;
    let factors = parts
        .iter()
        .enumerate()
        .map(|(i, size)| lagrangian(*size, &part_prefix(i), limits))
        .collect::<Result<Vec<_>>>()?;
    let dual_h = tensor_all(&factors, limits)?;
    let factor_gens: Vec<Vec<Element>> = parts
        .iter()
        .enumerate()
        .map(|(i, size)| (1..=*size).map(|k| gen(&dual_h, &format!("{}{k}", part_prefix(i)))).collect())
        .collect();
    let images = (1..=g).map(|k| total_class_component(&dual_h, &factor_gens, k)).collect();
    let restriction = Morphism::from_images(&dual_g, &dual_h, images)?;
    let franke_ideal = vec![gen(&dual_g, &format!("sigma{g}"))];
    Ok(FamilyInstance { params, dual_g, dual_h, restriction, franke_ideal, ghost: None })
}

fn unitary_part_names(i: usize) -> (String, String) {
    (format!("u{}_sigma", i + 1), format!("u{}_tau", i + 1))
}

/// `G = U(p, q)`, `H = ∏ U(p_i, q_i)`: Gr(p, p+q) → ⊗ Gr(p_i, p_i+q_i). The σ
/// images are the graded pieces of `∏ (1 + Σ σ^{(i)})`, the τ images those of
/// `∏ (1 + Σ τ^{(i)})`, its inverse.
pub fn family_unitary(p: usize, q: usize, parts: &[(usize, usize)], limits: &Limits) -> Result<FamilyInstance> {
    let params = FamilyParams::Unitary { p, q, parts: parts.to_vec() };
    params.validate()?;
    let dual_g = grassmannian(p, q, "sigma", "tau", limits)?;
    let factors = parts
        .iter()
        .enumerate()
        .map(|(i, (pi, qi))| {
            let (s, t) = unitary_part_names(i);
            grassmannian(*pi, *qi, &s, &t, limits)
        })
        .collect::<Result<Vec<_>>>()?;
    let dual_h = tensor_all(&factors, limits)?;
    let sigma_gens: Vec<Vec<Element>> = parts
        .iter()
        .enumerate()
        .map(|(i, (pi, _))| (1..=*pi).map(|k| gen(&dual_h, &format!("{}{k}", unitary_part_names(i).0))).collect())
        .collect();
    let tau_gens: Vec<Vec<Element>> = parts
        .iter()
        .enumerate()
        .map(|(i, (_, qi))| (1..=*qi).map(|k| gen(&dual_h, &format!("{}{k}", unitary_part_names(i).1))).collect())
        .collect();
    let mut images: Vec<(String, Element)> = Vec::new();
    for k in 1..=p {
        images.push((format!("sigma{k}"), total_class_component(&dual_h, &sigma_gens, k)));
    }
    for m in 1..=q {
        images.push((format!("tau{m}"), total_class_component(&dual_h, &tau_gens, m)));
    }
    let restriction =
        Morphism::new(&dual_g, &dual_h, images.iter().map(|(n, e)| (n.as_str(), e.clone())).collect())?;
    let franke_ideal = vec![gen(&dual_g, &format!("sigma{p}")), gen(&dual_g, &format!("tau{q}"))];
    Ok(FamilyInstance { params, dual_g, dual_h, restriction, franke_ideal, ghost: None })
}

/// `G = U(g, g)`, `H = Sp_{2g}`: Gr(g, 2g) → Lagrangian(g) with `σ_k ↦ σ_k`, `τ_k ↦ (-1)^k σ_k`.
pub fn family_sp_in_ugg(g: usize, limits: &Limits) -> Result<FamilyInstance> {
    let params = FamilyParams::SpInUgg { g };
    params.validate()?;
    let dual_g = grassmannian(g, g, "sigma", "tau", limits)?;
    let dual_h = lagrangian(g, "sigma", limits)?;
    let mut images: Vec<(String, Element)> = Vec::new();
    for k in 1..=g {
        let s = gen(&dual_h, &format!("sigma{k}"));
        images.push((format!("tau{k}"), s.scale(&sign(k))));
        images.push((format!("sigma{k}"), s));
    }
    let restriction =
        Morphism::new(&dual_g, &dual_h, images.iter().map(|(n, e)| (n.as_str(), e.clone())).collect())?;
    let franke_ideal = vec![gen(&dual_g, &format!("sigma{g}")), gen(&dual_g, &format!("tau{g}"))];
    Ok(FamilyInstance { params, dual_g, dual_h, restriction, franke_ideal, ghost: None })
}

/// A family-specific identity evaluated on the computed classes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdentityCheck {
    pub name: String,
    pub holds: bool,
    pub detail: String,
}

#[derive(Clone, Debug)]
pub struct GhostCertificate {
    /// The class is not in the compact-support ideal.
    pub not_compactly_supported: bool,
    /// Restriction of the class to the principal Levi's compact dual.
    pub levi_image: Element,
    /// `w` with `levi_top_generator * w = levi_image`.
    pub levi_quotient: Option<Element>,
    /// The Levi image is divisible by the Levi's top generator.
    pub levi_restriction_in_levi_kernel: bool,
    /// Same condition read as orthogonality to the Levi's Borel-kernel ideal.
    pub levi_orthogonal_to_franke_ideal: bool,
    /// Conjunction of the two conditions with non-vanishing.
    pub is_ghost: bool,
    /// Whether the class is divisible by the alternative divisor.
    pub divisible_by_alternative: bool,
    pub note: String,
}

#[derive(Clone, Debug)]
pub struct Verdict {
    pub fundamental_class: FundamentalClass,
    pub nonvanishing: bool,
    pub witness: Option<Element>,
    pub witness_pairing: Option<Rational>,
    pub ghost: Option<GhostCertificate>,
    pub betti_g: Vec<usize>,
    pub betti_h: Vec<usize>,
    pub identity_checks: Vec<IdentityCheck>,
    pub exploratory: bool,
}

/// Computes `[Ŷ]` and decides whether it survives the Borel map.
pub fn decide_nonvanishing(inst: &FamilyInstance) -> Result<Verdict> {
    let class = inst.restriction.gysin_fundamental_class()?;
    verdict_for_class(inst, class)
}

/// Verdict for a given representative of the fundamental class (any nonzero
/// rescaling of the computed one gives the same booleans).
pub fn verdict_for_class(inst: &FamilyInstance, class: FundamentalClass) -> Result<Verdict> {
    let witness = pairs_nontrivially_with_ideal(&class.element, &inst.franke_ideal)?;
    let witness_pairing = witness.as_ref().map(|u| pairing(&class.element, u)).transpose()?;
    let nonvanishing = witness.is_some();
    let ghost = ghost_for_class(inst, &class.element, nonvanishing)?;
    let identity_checks = identity_checks(inst, &class.element)?;
    Ok(Verdict {
        nonvanishing,
        witness,
        witness_pairing,
        ghost,
        betti_g: inst.dual_g.poincare_polynomial(),
        betti_h: inst.dual_h.poincare_polynomial(),
        identity_checks,
        exploratory: inst.params.is_exploratory(),
        fundamental_class: class,
    })
}

/// The ghost certificate, for families that carry Levi data.
pub fn decide_ghost(inst: &FamilyInstance) -> Result<Option<GhostCertificate>> {
    if inst.ghost.is_none() {
        return Ok(None);
    }
    let class = inst.restriction.gysin_fundamental_class()?;
    let nonvanishing = pairs_nontrivially_with_ideal(&class.element, &inst.franke_ideal)?.is_some();
    ghost_for_class(inst, &class.element, nonvanishing)
}

fn ghost_for_class(inst: &FamilyInstance, class: &Element, nonvanishing: bool) -> Result<Option<GhostCertificate>> {
    let Some(data) = &inst.ghost else {
        return Ok(None);
    };
    let not_compactly_supported = !ideal_contains(class, &data.compact_support_ideal)?;
    let levi_image = data.levi_restriction.apply(class)?;
    let levi_quotient = is_divisible(&levi_image, &data.levi_top_generator)?;
    let in_kernel = levi_quotient.is_some();
    let orthogonal = pairs_nontrivially_with_ideal(&levi_image, &data.levi_franke_ideal)?.is_none();
    let divisible_by_alternative = is_divisible(class, &data.alternative_divisor)?.is_some();
    let top_name = data.compact_support_ideal.iter().map(|e| e.to_string()).collect::<Vec<_>>().join(", ");
    let note = format!(
        "compact-support test uses the top generator ({top_name}); with the alternative divisor {} the class is{} divisible",
        data.alternative_divisor,
        if divisible_by_alternative { "" } else { " not" }
    );
    Ok(Some(GhostCertificate {
        not_compactly_supported,
        levi_image,
        levi_quotient,
        levi_restriction_in_levi_kernel: in_kernel,
        levi_orthogonal_to_franke_ideal: orthogonal,
        is_ghost: not_compactly_supported && in_kernel && nonvanishing,
        divisible_by_alternative,
        note,
    }))
}

/// `Some(λ)` when `v = λ m` for a single monomial `m` with `λ != 0`.
fn single_term_scalar(v: &Element, m: &Element) -> Option<Rational> {
    let (mono, c) = m.terms().next()?;
    if m.terms().count() != 1 || v.terms().count() != 1 {
        return None;
    }
    let lambda = v.coefficient(mono) / c;
    (!lambda.is_zero()).then_some(lambda)
}

fn product_of(alg: &Arc<GradedAlgebra>, names: impl IntoIterator<Item = String>) -> Element {
    names.into_iter().fold(Element::one(alg), |acc, name| &acc * &gen(alg, &name))
}

fn top_multiple_check(name: &str, product: &Element, describe: &str) -> IdentityCheck {
    let top = product.algebra().top_degree();
    let lambda = product.top_coefficient();
    let holds = product.degree() == Some(top) && !lambda.is_zero();
    IdentityCheck {
        name: name.to_string(),
        holds,
        detail: format!("{describe} = {} * top, lambda = {}", rational::to_short_string(&lambda), rational::to_fraction_string(&lambda)),
    }
}

fn identity_checks(inst: &FamilyInstance, class: &Element) -> Result<Vec<IdentityCheck>> {
    let g_alg = &inst.dual_g;
    let mut checks = Vec::new();
    match &inst.params {
        FamilyParams::SlImagSp { n } | FamilyParams::SlOddReal { n } => {
            let degrees: Vec<usize> = match inst.params {
                FamilyParams::SlImagSp { .. } => (2..=*n).map(|j| 4 * j - 3).collect(),
                _ => (1..=*n).map(|j| 4 * j - 1).collect(),
            };
            let expected = product_of(g_alg, degrees.iter().map(|d| format!("e{d}")));
            let lambda = single_term_scalar(class, &expected);
            checks.push(IdentityCheck {
                name: "closed-form".into(),
                holds: lambda.is_some(),
                detail: match &lambda {
                    Some(l) => format!("class = {} * {}", rational::to_fraction_string(l), expected),
                    None => format!("class {class} is not a multiple of {expected}"),
                },
            });
        }
        FamilyParams::Siegel { g, parts } if parts.len() == 2 => {
            let (a, b) = (parts[0], parts[1]);
            let mut names: Vec<String> = (0..=b).map(|r| g - 2 * r).filter(|k| *k >= 1).map(|k| format!("sigma{k}")).collect();
            names.extend((1..a.saturating_sub(b)).map(|k| format!("sigma{k}")));
            let label = names.join("*");
            let theta = product_of(g_alg, names);
            let product = &theta * class;
            // λ is measured against σ_1⋯σ_g, which spans the top degree.
            let sigma_top = product_of(g_alg, (1..=*g).map(|k| format!("sigma{k}")));
            let lambda = if sigma_top.is_zero() { None } else { single_term_scalar(&product, &sigma_top) };
            checks.push(IdentityCheck {
                name: "theta-times-class".into(),
                holds: lambda.is_some(),
                detail: match &lambda {
                    Some(l) => format!("({label}) * [Y] = {} * sigma1...sigma{g}, lambda = {}", rational::to_short_string(l), rational::to_fraction_string(l)),
                    None => format!("({label}) * [Y] = {product} is not a nonzero multiple of sigma1...sigma{g}"),
                },
            });
        }
        FamilyParams::Unitary { q, parts, .. } => {
            let h_alg = &inst.dual_h;
            let tau_q = gen(g_alg, &format!("tau{q}"));
            let restricted = inst.restriction.apply(&tau_q)?;
            let shortcut = product_of(h_alg, parts.iter().enumerate().map(|(i, (_, qi))| format!("{}{qi}", unitary_part_names(i).1)));
            checks.push(IdentityCheck {
                name: "tau-restriction-shortcut".into(),
                holds: restricted == shortcut,
                detail: format!("restriction of tau{q} = {restricted}; tensor of part top taus = {shortcut}"),
            });
            let sq: usize = parts.iter().map(|x| x.1).sum();
            if sq == *q {
                let d: usize = parts.iter().map(|(pi, qi)| (pi - 1) * qi).sum();
                let theta = &tau_q * &gen(g_alg, "sigma1").pow(d as u32);
                let product = &theta * class;
                checks.push(top_multiple_check("tau-sigma-power-times-class", &product, &format!("tau{q} * sigma1^{d} * [Y]")));
            }
        }
        FamilyParams::SpInUgg { g } => {
            let taus = product_of(g_alg, (1..=*g).map(|k| format!("tau{k}")));
            checks.push(top_multiple_check("class-times-taus", &(class * &taus), "[Y] * tau1...taug"));
        }
        _ => {}
    }
    Ok(checks)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    fn limits() -> Limits {
        Limits::default()
    }

    fn proportional(v: &Element, of: &Element) -> bool {
        let Some((m, c)) = of.terms().next() else { return false };
        let lambda = v.coefficient(m) / c;
        !lambda.is_zero() && *v == of.scale(&lambda)
    }

    #[test]
    fn imaginary_symplectic_rank_two() {
        let inst = family_sl_imag_sp(2, &limits()).unwrap();
        assert_eq!(inst.dual_g.generators().iter().map(|g| g.degree).collect::<Vec<_>>(), vec![3, 5, 7]);
        let v = decide_nonvanishing(&inst).unwrap();
        assert!(proportional(&v.fundamental_class.element, &gen(&inst.dual_g, "e5")));
        assert!(v.nonvanishing);
        let ghost = v.ghost.unwrap();
        assert!(ghost.not_compactly_supported);
        assert!(ghost.levi_restriction_in_levi_kernel);
        assert!(ghost.is_ghost);
        assert!(ghost.divisible_by_alternative);
    }

    #[test]
    fn imaginary_symplectic_rank_one_has_no_ghost_data() {
        let inst = family_sl_imag_sp(1, &limits()).unwrap();
        assert!(inst.ghost.is_none());
        let v = decide_nonvanishing(&inst).unwrap();
        assert!(v.nonvanishing);
        assert_eq!(v.fundamental_class.degree, 0);
    }

    #[test]
    fn wrong_class_is_not_witnessed() {
        let inst = family_sl_imag_sp(2, &limits()).unwrap();
        let fake = FundamentalClass { element: gen(&inst.dual_g, "e7"), degree: 7, target_top_value: int(1) };
        assert!(!verdict_for_class(&inst, fake).unwrap().nonvanishing);
    }

    #[test]
    fn odd_real_classes() {
        let one = family_sl_odd_real(1, &limits()).unwrap();
        let v = decide_nonvanishing(&one).unwrap();
        assert!(proportional(&v.fundamental_class.element, &gen(&one.dual_g, "e3")));
        assert!(v.nonvanishing);

        let two = family_sl_odd_real(2, &limits()).unwrap();
        let class = two.restriction.gysin_fundamental_class().unwrap();
        let e3e7 = &gen(&two.dual_g, "e3") * &gen(&two.dual_g, "e7");
        assert!(proportional(&class.element, &e3e7));
        assert!(is_divisible(&class.element, &gen(&two.dual_g, "e9")).unwrap().is_none());
        assert!(decide_ghost(&two).unwrap().unwrap().is_ghost);
    }

    #[test]
    fn siegel_rejects_bad_parts() {
        assert!(matches!(family_siegel(2, &[2, 1], &limits()), Err(Error::InvalidParameter(_))));
        assert!(matches!(family_siegel(2, &[2], &limits()), Err(Error::InvalidParameter(_))));
        assert!(matches!(family_siegel(3, &[1, 2], &limits()), Err(Error::InvalidParameter(_))));
        assert!(FamilyParams::Siegel { g: 3, parts: vec![1, 1, 1] }.is_exploratory());
    }

    #[test]
    fn siegel_has_no_ghost_certificate() {
        let inst = family_siegel(3, &[2, 1], &limits()).unwrap();
        assert!(decide_ghost(&inst).unwrap().is_none());
        let v = decide_nonvanishing(&inst).unwrap();
        assert!(v.nonvanishing);
        assert!(v.identity_checks.iter().all(|c| c.holds), "{:?}", v.identity_checks);
    }

    #[test]
    fn unitary_line_in_plane() {
        let inst = family_unitary(1, 2, &[(1, 1)], &limits()).unwrap();
        let v = decide_nonvanishing(&inst).unwrap();
        assert!(v.nonvanishing);
        assert!(!inst.params.is_exploratory());
    }

    #[test]
    fn projective_line_tau_generates_top() {
        let inst = family_unitary(1, 1, &[(1, 1)], &limits()).unwrap();
        let (s, t) = (gen(&inst.dual_g, "sigma1"), gen(&inst.dual_g, "tau1"));
        assert_eq!(t, s.scale(&int(-1)));
        assert!(decide_nonvanishing(&inst).unwrap().nonvanishing);
    }

    #[test]
    fn unitary_shortcut_holds_for_square_parts() {
        let inst = family_unitary(2, 2, &[(1, 1), (1, 1)], &limits()).unwrap();
        let v = decide_nonvanishing(&inst).unwrap();
        assert!(v.nonvanishing);
        let shortcut = v.identity_checks.iter().find(|c| c.name == "tau-restriction-shortcut").unwrap();
        assert!(shortcut.holds, "{}", shortcut.detail);
    }

    #[test]
    fn symplectic_in_unitary() {
        for g in 1..=3 {
            let inst = family_sp_in_ugg(g, &limits()).unwrap();
            let v = decide_nonvanishing(&inst).unwrap();
            assert!(v.nonvanishing, "g={g}");
            assert_eq!(v.fundamental_class.degree, g * (g - 1) / 2 * 2);
        }
    }

    #[test]
    fn partitions_in_decreasing_order() {
        assert_eq!(partitions(4, 2), vec![vec![4], vec![3, 1], vec![2, 2]]);
        assert_eq!(partitions(3, 3), vec![vec![3], vec![2, 1], vec![1, 1, 1]]);
        assert!(partitions(0, 2) == vec![Vec::<usize>::new()]);
    }

    #[test]
    fn unitary_part_lists_respect_bounds() {
        assert_eq!(unitary_part_lists(1, 2, 1, true), vec![vec![(1, 2)]]);
        assert_eq!(unitary_part_lists(1, 2, 1, false), vec![vec![(1, 2)], vec![(1, 1)]]);
        assert_eq!(unitary_part_lists(2, 2, 2, true), vec![vec![(2, 2)], vec![(1, 1), (1, 1)]]);
    }

    #[test]
    fn labels_and_family_ids() {
        assert_eq!(FamilyParams::SlImagSp { n: 3 }.label(), "sl-imag-sp n=3");
        assert_eq!(FamilyParams::Siegel { g: 3, parts: vec![2, 1] }.label(), "siegel-product g=3 parts=2,1");
        assert_eq!(FamilyParams::Unitary { p: 2, q: 3, parts: vec![(1, 2), (1, 1)] }.label(), "unitary-product p=2 q=3 parts=1:2,1:1");
        assert_eq!("siegel".parse::<FamilyId>().unwrap(), FamilyId::SiegelProduct);
        assert!("sl".parse::<FamilyId>().is_err());
    }

    #[test]
    fn certified_and_exploratory_lists_are_disjoint() {
        let certified = certified_instances();
        assert!(certified.iter().all(|p| !p.is_exploratory()));
        assert!(exploratory_instances().iter().all(|p| p.is_exploratory() || matches!(p, FamilyParams::Unitary { .. })));
        assert!(exploratory_instances().iter().all(|p| !certified.contains(p)));
    }
}
