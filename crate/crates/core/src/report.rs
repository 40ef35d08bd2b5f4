//! Serializable certificates for single instances and sweeps.
//!
//! Every number in a report is an integer or an exact `a/b` string, and
//! wall-clock timing is only included on request, so identical configurations
//! produce byte-identical JSON.

use std::fmt::Write as _;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::algebra::{Limits, DEFAULT_MONOMIAL_CAP};
use crate::catalog::{decide_nonvanishing, partitions, unitary_part_lists, FamilyId, FamilyParams, Verdict};
use crate::checks::{instance_checks, instance_oracle_checks, CheckConfig, CheckResult, Suite};
use crate::error::{Error, Result};
use crate::rational;

pub const SCHEMA_VERSION: u32 = 1;
pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    Text,
    Json,
}

/// Everything that determines a report. Two runs with equal configs yield
/// equal reports.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunConfig {
    pub params: FamilyParams,
    pub output_format: OutputFormat,
    pub monomial_cap: usize,
    pub seed: u64,
    pub checks: Vec<Suite>,
    pub timing: bool,
}

impl RunConfig {
    pub fn new(params: FamilyParams) -> Self {
        RunConfig {
            params,
            output_format: OutputFormat::Text,
            monomial_cap: DEFAULT_MONOMIAL_CAP,
            seed: 42,
            checks: Vec::new(),
            timing: false,
        }
    }

    pub fn limits(&self) -> Limits {
        Limits { monomial_cap: self.monomial_cap }
    }

    fn check_config(&self) -> CheckConfig {
        CheckConfig { suites: self.checks.clone(), seed: self.seed, limits: self.limits(), ..CheckConfig::default() }
    }
}

/// Family parameters in flat form; absent fields are omitted from JSON.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Parameters {
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub n: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub g: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub p: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub q: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub parts: Option<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub unitary_parts: Option<Vec<(usize, usize)>>,
}

impl From<&FamilyParams> for Parameters {
    fn from(params: &FamilyParams) -> Self {
        let mut out = Parameters::default();
        match params {
            FamilyParams::SlImagSp { n } | FamilyParams::SlOddReal { n } => out.n = Some(*n),
            FamilyParams::Siegel { g, parts } => {
                out.g = Some(*g);
                out.parts = Some(parts.clone());
            }
            FamilyParams::Unitary { p, q, parts } => {
                out.p = Some(*p);
                out.q = Some(*q);
                out.unitary_parts = Some(parts.clone());
            }
            FamilyParams::SpInUgg { g } => out.g = Some(*g),
        }
        out
    }
}

impl Parameters {
    /// Rebuilds and validates family parameters; missing fields are usage errors.
    pub fn to_params(&self, family: FamilyId) -> Result<FamilyParams> {
        fn need<T: Clone>(v: &Option<T>, family: FamilyId, name: &str) -> Result<T> {
            v.clone().ok_or_else(|| Error::InvalidParameter(format!("{family} needs --{name}")))
        }
        let params = match family {
            FamilyId::SlImagSp => FamilyParams::SlImagSp { n: need(&self.n, family, "n")? },
            FamilyId::SlOddReal => FamilyParams::SlOddReal { n: need(&self.n, family, "n")? },
            FamilyId::SiegelProduct => {
                FamilyParams::Siegel { g: need(&self.g, family, "g")?, parts: need(&self.parts, family, "parts")? }
            }
            FamilyId::UnitaryProduct => FamilyParams::Unitary {
                p: need(&self.p, family, "p")?,
                q: need(&self.q, family, "q")?,
                parts: need(&self.unitary_parts, family, "parts")?,
            },
            FamilyId::SpInUgg => FamilyParams::SpInUgg { g: need(&self.g, family, "g")? },
        };
        params.validate()?;
        Ok(params)
    }
}

/// `(monomial, "a/b")` pairs in basis order.
pub type Terms = Vec<(String, String)>;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NonvanishingRecord {
    pub verdict: bool,
    pub witness: Option<Terms>,
    /// `<[Y], witness>`.
    pub pairing: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GhostRecord {
    pub present: bool,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub not_compactly_supported: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub levi_restriction_in_levi_kernel: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub levi_orthogonal_to_franke_ideal: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub divisible_by_alternative: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub is_ghost_by_levi_argument: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub levi_image: Option<Terms>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub discrepancy_note: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdentityRecord {
    pub name: String,
    pub holds: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportDocument {
    pub schema_version: u32,
    pub tool_version: String,
    pub family: String,
    pub parameters: Parameters,
    pub label: String,
    pub exploratory: bool,
    pub betti_g: Vec<usize>,
    pub betti_h: Vec<usize>,
    pub fundamental_class_degree: usize,
    pub fundamental_class: Terms,
    /// Value of `[Y]` against the top class of the target, fixing orientation.
    pub target_top_value: String,
    pub nonvanishing: NonvanishingRecord,
    pub ghost: GhostRecord,
    pub identity_checks: Vec<IdentityRecord>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub check_results: Option<Vec<CheckResult>>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub timing_ms: Option<u64>,
}

impl ReportDocument {
    pub fn from_verdict(params: &FamilyParams, verdict: &Verdict) -> Self {
        let ghost = match &verdict.ghost {
            Some(c) => GhostRecord {
                present: true,
                not_compactly_supported: Some(c.not_compactly_supported),
                levi_restriction_in_levi_kernel: Some(c.levi_restriction_in_levi_kernel),
                levi_orthogonal_to_franke_ideal: Some(c.levi_orthogonal_to_franke_ideal),
                divisible_by_alternative: Some(c.divisible_by_alternative),
                is_ghost_by_levi_argument: Some(c.is_ghost),
                levi_image: Some(c.levi_image.to_strings()),
                discrepancy_note: Some(c.note.clone()),
            },
            None => GhostRecord {
                present: false,
                not_compactly_supported: None,
                levi_restriction_in_levi_kernel: None,
                levi_orthogonal_to_franke_ideal: None,
                divisible_by_alternative: None,
                is_ghost_by_levi_argument: None,
                levi_image: None,
                discrepancy_note: None,
            },
        };
        ReportDocument {
            schema_version: SCHEMA_VERSION,
            tool_version: TOOL_VERSION.to_string(),
            family: params.family().to_string(),
            parameters: Parameters::from(params),
            label: params.label(),
            exploratory: verdict.exploratory,
            betti_g: verdict.betti_g.clone(),
            betti_h: verdict.betti_h.clone(),
            fundamental_class_degree: verdict.fundamental_class.degree,
            fundamental_class: verdict.fundamental_class.element.to_strings(),
            target_top_value: rational::to_fraction_string(&verdict.fundamental_class.target_top_value),
            nonvanishing: NonvanishingRecord {
                verdict: verdict.nonvanishing,
                witness: verdict.witness.as_ref().map(|w| w.to_strings()),
                pairing: verdict.witness_pairing.as_ref().map(rational::to_fraction_string),
            },
            ghost,
            identity_checks: verdict
                .identity_checks
                .iter()
                .map(|c| IdentityRecord { name: c.name.clone(), holds: c.holds, detail: c.detail.clone() })
                .collect(),
            check_results: None,
            timing_ms: None,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::InvalidParameter(format!("malformed report: {e}")))
    }

    /// True when every requested check passed.
    pub fn checks_passed(&self) -> bool {
        self.check_results.as_ref().is_none_or(|r| r.iter().all(|c| c.passed))
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "{}{}", self.label, if self.exploratory { "  [exploratory]" } else { "" });
        let _ = writeln!(s, "  betti G: {:?}", self.betti_g);
        let _ = writeln!(s, "  betti H: {:?}", self.betti_h);
        let _ = writeln!(s, "  [Y] (degree {}): {}", self.fundamental_class_degree, render_terms(&self.fundamental_class));
        let _ = writeln!(s, "  nonvanishing: {}", self.nonvanishing.verdict);
        if let Some(w) = &self.nonvanishing.witness {
            let pairing = self.nonvanishing.pairing.as_deref().unwrap_or("?");
            let _ = writeln!(s, "  witness: {}  (pairing {pairing})", render_terms(w));
        }
        if self.ghost.present {
            let flag = |b: Option<bool>| b.map_or("-".to_string(), |b| b.to_string());
            let _ = writeln!(s, "  ghost: {}", flag(self.ghost.is_ghost_by_levi_argument));
            let _ = writeln!(s, "    not compactly supported: {}", flag(self.ghost.not_compactly_supported));
            let _ = writeln!(s, "    Levi image in Levi kernel: {}", flag(self.ghost.levi_restriction_in_levi_kernel));
            let _ = writeln!(s, "    Levi image orthogonal to Levi ideal: {}", flag(self.ghost.levi_orthogonal_to_franke_ideal));
            if let Some(note) = &self.ghost.discrepancy_note {
                let _ = writeln!(s, "    note: {note}");
            }
        }
        for c in &self.identity_checks {
            let _ = writeln!(s, "  identity {}: {}  {}", c.name, c.holds, c.detail);
        }
        if let Some(results) = &self.check_results {
            let failed = results.iter().filter(|c| !c.passed).count();
            let _ = writeln!(s, "  checks: {} run, {failed} failed", results.len());
            for c in results.iter().filter(|c| !c.passed) {
                let _ = writeln!(s, "    FAIL {} {}: {}", c.suite, c.name, c.detail);
            }
        }
        if let Some(ms) = self.timing_ms {
            let _ = writeln!(s, "  time: {ms} ms");
        }
        s
    }
}

fn render_terms(terms: &Terms) -> String {
    if terms.is_empty() {
        return "0".into();
    }
    terms.iter().map(|(m, c)| format!("({c})*{m}")).collect::<Vec<_>>().join(" + ")
}

/// Builds one instance, decides it, and runs the requested checks on it.
pub fn run_family(config: &RunConfig) -> Result<ReportDocument> {
    config.params.validate()?;
    let start = Instant::now();
    let inst = config.params.build(&config.limits())?;
    let verdict = decide_nonvanishing(&inst)?;
    let mut doc = ReportDocument::from_verdict(&config.params, &verdict);
    if !config.checks.is_empty() {
        let check_config = config.check_config();
        let mut results = Vec::new();
        for suite in &config.checks {
            match suite {
                Suite::Oracle => results.extend(instance_oracle_checks(&config.params, &check_config)),
                Suite::Properties => results.extend(instance_checks(&config.params, &check_config)),
                Suite::Identities => results.extend(verdict.identity_checks.iter().map(|c| CheckResult {
                    suite: Suite::Identities,
                    name: format!("{} {}", c.name, config.params.label()),
                    passed: c.holds,
                    detail: c.detail.clone(),
                })),
            }
        }
        doc.check_results = Some(results);
    }
    if config.timing {
        doc.timing_ms = Some(start.elapsed().as_millis() as u64);
    }
    Ok(doc)
}

/// Inclusive parameter ranges for a sweep; `lo > hi` is an empty range.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SweepRanges {
    pub n: Option<(usize, usize)>,
    pub g: Option<(usize, usize)>,
    pub p: Option<(usize, usize)>,
    pub q: Option<(usize, usize)>,
    /// Upper bound on the number of factors; defaults to 2 for Siegel and
    /// to `p` for unitary sweeps.
    pub max_parts: Option<usize>,
    /// Unitary only: keep part lists with `Σ q_i = q`.
    pub exact_q: bool,
}

fn range(r: Option<(usize, usize)>, family: FamilyId, name: &str) -> Result<std::ops::RangeInclusive<usize>> {
    let (lo, hi) = r.ok_or_else(|| Error::InvalidParameter(format!("{family} sweep needs a --{name} range")))?;
    Ok(lo..=hi)
}

/// Expands ranges into instances, in parameter order.
pub fn expand_sweep(family: FamilyId, ranges: &SweepRanges) -> Result<Vec<FamilyParams>> {
    let mut out = Vec::new();
    match family {
        FamilyId::SlImagSp => out.extend(range(ranges.n, family, "n")?.map(|n| FamilyParams::SlImagSp { n })),
        FamilyId::SlOddReal => out.extend(range(ranges.n, family, "n")?.map(|n| FamilyParams::SlOddReal { n })),
        FamilyId::SiegelProduct => {
            let max_parts = ranges.max_parts.unwrap_or(2);
            for g in range(ranges.g, family, "g")? {
                for parts in partitions(g, max_parts).into_iter().filter(|p| p.len() >= 2) {
                    out.push(FamilyParams::Siegel { g, parts });
                }
            }
        }
        FamilyId::UnitaryProduct => {
            let qs = range(ranges.q, family, "q")?;
            for p in range(ranges.p, family, "p")? {
                for q in qs.clone().filter(|q| *q >= p) {
                    for parts in unitary_part_lists(p, q, ranges.max_parts.unwrap_or(p), ranges.exact_q) {
                        out.push(FamilyParams::Unitary { p, q, parts });
                    }
                }
            }
        }
        FamilyId::SpInUgg => out.extend(range(ranges.g, family, "g")?.map(|g| FamilyParams::SpInUgg { g })),
    }
    for params in &out {
        params.validate()?;
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ErrorRecord {
    pub message: String,
    pub exit_code: i32,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepEntry {
    pub label: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub report: Option<ReportDocument>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub error: Option<ErrorRecord>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepSummary {
    pub instances: usize,
    pub nonvanishing_true: usize,
    pub nonvanishing_false: usize,
    pub ghost_true: usize,
    pub errors: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepReport {
    pub schema_version: u32,
    pub tool_version: String,
    pub family: String,
    pub entries: Vec<SweepEntry>,
    pub summary: SweepSummary,
}

impl SweepReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let width = self.entries.iter().map(|e| e.label.len()).max().unwrap_or(0);
        let _ = writeln!(s, "{:width$}  {:>12}  {:>6}  witness", "instance", "nonvanishing", "ghost");
        for e in &self.entries {
            match (&e.report, &e.error) {
                (Some(r), _) => {
                    let ghost = r.ghost.is_ghost_by_levi_argument.map_or("-".to_string(), |b| b.to_string());
                    let witness = r.nonvanishing.witness.as_ref().map_or("-".to_string(), render_terms);
                    let mark = if r.exploratory { " [exploratory]" } else { "" };
                    let _ = writeln!(s, "{:width$}  {:>12}  {:>6}  {witness}{mark}", e.label, r.nonvanishing.verdict, ghost);
                }
                (None, Some(err)) => {
                    let _ = writeln!(s, "{:width$}  error (exit {}): {}", e.label, err.exit_code, err.message);
                }
                (None, None) => {}
            }
        }
        let m = &self.summary;
        let _ = writeln!(
            s,
            "summary: {} instances, {} nonvanishing, {} vanishing, {} ghost, {} errors",
            m.instances, m.nonvanishing_true, m.nonvanishing_false, m.ghost_true, m.errors
        );
        s
    }
}

/// Runs every instance of a sweep concurrently; output keeps parameter order
/// and a failing instance is recorded without stopping the others.
pub fn run_sweep(family: FamilyId, ranges: &SweepRanges, template: &RunConfig) -> Result<SweepReport> {
    let instances = expand_sweep(family, ranges)?;
    let entries: Vec<SweepEntry> = instances
        .par_iter()
        .map(|params| {
            let config = RunConfig { params: params.clone(), ..template.clone() };
            match run_family(&config) {
                Ok(doc) => SweepEntry { label: params.label(), report: Some(doc), error: None },
                Err(e) => SweepEntry {
                    label: params.label(),
                    report: None,
                    error: Some(ErrorRecord { message: e.to_string(), exit_code: e.exit_code() }),
                },
            }
        })
        .collect();
    let mut summary = SweepSummary { instances: entries.len(), ..SweepSummary::default() };
    for e in &entries {
        match &e.report {
            Some(r) => {
                if r.nonvanishing.verdict {
                    summary.nonvanishing_true += 1;
                } else {
                    summary.nonvanishing_false += 1;
                }
                if r.ghost.is_ghost_by_levi_argument == Some(true) {
                    summary.ghost_true += 1;
                }
            }
            None => summary.errors += 1,
        }
    }
    Ok(SweepReport {
        schema_version: SCHEMA_VERSION,
        tool_version: TOOL_VERSION.to_string(),
        family: family.to_string(),
        entries,
        summary,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sl_imag_sp_three_report() {
        let doc = run_family(&RunConfig::new(FamilyParams::SlImagSp { n: 3 })).unwrap();
        assert_eq!(doc.fundamental_class.len(), 1);
        assert_eq!(doc.fundamental_class[0].0, "e5^1*e9^1");
        assert!(doc.nonvanishing.verdict);
        assert_eq!(doc.ghost.is_ghost_by_levi_argument, Some(true));
        assert!(doc.timing_ms.is_none());
    }

    #[test]
    fn siegel_two_one_one_witness() {
        let doc = run_family(&RunConfig::new(FamilyParams::Siegel { g: 2, parts: vec![1, 1] })).unwrap();
        assert!(doc.nonvanishing.verdict);
        let witness = doc.nonvanishing.witness.unwrap();
        assert_eq!(witness.len(), 1);
        assert_eq!(witness[0].0, "sigma2^1");
    }

    #[test]
    fn single_part_siegel_is_a_usage_error() {
        let err = run_family(&RunConfig::new(FamilyParams::Siegel { g: 2, parts: vec![3] })).unwrap_err();
        assert_eq!(err.exit_code(), 2);
    }

    #[test]
    fn json_round_trips() {
        let mut config = RunConfig::new(FamilyParams::Unitary { p: 2, q: 3, parts: vec![(1, 2), (1, 1)] });
        config.checks = vec![Suite::Oracle, Suite::Identities];
        let doc = run_family(&config).unwrap();
        let json = doc.to_json();
        fn no_floats(v: &serde_json::Value) -> bool {
            match v {
                serde_json::Value::Number(n) => !n.is_f64(),
                serde_json::Value::Array(a) => a.iter().all(no_floats),
                serde_json::Value::Object(o) => o.values().all(no_floats),
                _ => true,
            }
        }
        assert!(no_floats(&serde_json::from_str(&json).unwrap()));
        assert_eq!(ReportDocument::from_json(&json).unwrap(), doc);
        assert_eq!(doc.parameters.to_params(FamilyId::UnitaryProduct).unwrap(), config.params);
    }

    #[test]
    fn timing_only_on_request() {
        let mut config = RunConfig::new(FamilyParams::SpInUgg { g: 2 });
        config.timing = true;
        assert!(run_family(&config).unwrap().timing_ms.is_some());
    }

    #[test]
    fn siegel_sweep_two_parts() {
        let ranges = SweepRanges { g: Some((2, 4)), ..SweepRanges::default() };
        let report = run_sweep(FamilyId::SiegelProduct, &ranges, &RunConfig::new(FamilyParams::SpInUgg { g: 1 })).unwrap();
        let labels: Vec<&str> = report.entries.iter().map(|e| e.label.as_str()).collect();
        assert_eq!(
            labels,
            ["siegel-product g=2 parts=1,1", "siegel-product g=3 parts=2,1", "siegel-product g=4 parts=3,1", "siegel-product g=4 parts=2,2"]
        );
        assert_eq!(report.summary.nonvanishing_true, 4);
        assert_eq!(report.summary.errors, 0);
    }

    #[test]
    fn unitary_sweep_single_factor() {
        let ranges = SweepRanges { p: Some((1, 1)), q: Some((2, 4)), ..SweepRanges::default() };
        let report = run_sweep(FamilyId::UnitaryProduct, &ranges, &RunConfig::new(FamilyParams::SpInUgg { g: 1 })).unwrap();
        for q in 2..=4 {
            let label = format!("unitary-product p=1 q={q} parts=1:{}", q - 1);
            let entry = report.entries.iter().find(|e| e.label == label).expect("instance present");
            assert!(entry.report.as_ref().unwrap().nonvanishing.verdict, "{label}");
        }
        assert_eq!(report.summary.nonvanishing_false, 0);
    }

    #[test]
    fn empty_range_gives_empty_summary() {
        let ranges = SweepRanges { n: Some((3, 2)), ..SweepRanges::default() };
        let report = run_sweep(FamilyId::SlImagSp, &ranges, &RunConfig::new(FamilyParams::SpInUgg { g: 1 })).unwrap();
        assert!(report.entries.is_empty());
        assert_eq!(report.summary, SweepSummary::default());
    }

    #[test]
    fn missing_range_is_a_usage_error() {
        let err = expand_sweep(FamilyId::SpInUgg, &SweepRanges::default()).unwrap_err();
        assert_eq!(err.exit_code(), 2);
    }

    #[test]
    fn per_instance_errors_do_not_stop_the_sweep() {
        let template = RunConfig { monomial_cap: 1, ..RunConfig::new(FamilyParams::SpInUgg { g: 1 }) };
        let ranges = SweepRanges { n: Some((1, 4)), ..SweepRanges::default() };
        let report = run_sweep(FamilyId::SlImagSp, &ranges, &template).unwrap();
        assert_eq!(report.entries.len(), 4);
        assert!(report.entries[0].report.is_some());
        let last = report.entries[3].error.as_ref().expect("cap exceeded");
        assert_eq!(last.exit_code, 3);
        assert_eq!(report.summary.errors + report.summary.nonvanishing_true, 4);
    }
}
