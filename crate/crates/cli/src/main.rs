//! `dualring`: decide non-vanishing of fundamental classes of compact duals,
//! sweep families, run the check suites, and dump Betti data.
//!
//! Exit codes: 0 success, 1 a requested check failed, 2 usage error,
//! 3 monomial cap exceeded, 4 internal inconsistency.

use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;
use std::sync::Arc;

use anyhow::Context;
use clap::{Args, Parser, Subcommand};
use serde::{Deserialize, Serialize};

use dualring_core::catalog::rings::{grassmannian, lagrangian, special_unitary};
use dualring_core::report::{run_family, run_sweep, OutputFormat, RunConfig, SweepRanges};
use dualring_core::{run_checks, CheckConfig, Error, FamilyId, FamilyParams, GradedAlgebra, Limits, Suite, DEFAULT_MONOMIAL_CAP};

const CAP_ENV: &str = "DUALRING_MONOMIAL_CAP";

// Stdout writes that tolerate a closed pipe, as with `dualring ... | head`.
macro_rules! outln {
    ($($t:tt)*) => {{
        use std::io::Write as _;
        let _ = writeln!(std::io::stdout(), $($t)*);
    }};
}

macro_rules! out {
    ($($t:tt)*) => {{
        use std::io::Write as _;
        let _ = write!(std::io::stdout(), $($t)*);
    }};
}

#[derive(Parser, Debug)]
#[command(name = "dualring", version, about = "Exact cohomology of compact duals and non-vanishing certificates")]
struct Cli {
    /// Bound on ambient monomials per degree [env: DUALRING_MONOMIAL_CAP]
    #[arg(long, global = true)]
    cap: Option<usize>,
    /// TOML file with defaults for `monomial_cap`, `seed`, `format`; flags win.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Decide one instance of a family.
    Family {
        family: String,
        #[command(flatten)]
        params: ParamArgs,
        #[command(flatten)]
        run: RunArgs,
    },
    /// Decide every instance in a parameter range; ranges are `lo..hi` or a single value.
    Sweep {
        family: String,
        #[arg(long)]
        n: Option<String>,
        #[arg(long)]
        g: Option<String>,
        #[arg(long)]
        p: Option<String>,
        #[arg(long)]
        q: Option<String>,
        /// Largest number of factors (default 2 for siegel, p for unitary).
        #[arg(long)]
        max_parts: Option<usize>,
        /// Unitary only: require the factor q_i to sum to q.
        #[arg(long)]
        exact_q: bool,
        #[command(flatten)]
        run: RunArgs,
    },
    /// Run the named check suites over the catalog.
    Check {
        /// oracle, properties or identities; repeatable, default all.
        #[arg(long = "suite")]
        suites: Vec<String>,
        #[arg(long)]
        seed: Option<u64>,
        /// Samples per morphism for the multiplicativity checks.
        #[arg(long, default_value_t = 100)]
        samples: usize,
        #[arg(long)]
        json: bool,
        /// Print every check, not only failures.
        #[arg(long)]
        verbose: bool,
    },
    /// Betti numbers of a ring: `lagrangian --g`, `grassmannian --p --q`,
    /// `special-unitary --n`, or a family id for both of its rings.
    Ring {
        ring: String,
        #[command(flatten)]
        params: ParamArgs,
        /// Also print the Poincaré polynomial in `t`.
        #[arg(long)]
        poincare: bool,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Args, Debug)]
struct ParamArgs {
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    g: Option<usize>,
    #[arg(long)]
    p: Option<usize>,
    #[arg(long)]
    q: Option<usize>,
    /// Siegel: `2,1`. Unitary: `p1:q1,p2:q2`.
    #[arg(long)]
    parts: Option<String>,
}

#[derive(Args, Debug)]
struct RunArgs {
    #[arg(long)]
    json: bool,
    /// Include wall-clock time (makes output nondeterministic).
    #[arg(long)]
    timing: bool,
    /// Comma-separated suites to run on each instance.
    #[arg(long, value_delimiter = ',')]
    checks: Vec<String>,
    #[arg(long)]
    seed: Option<u64>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct FileConfig {
    monomial_cap: Option<usize>,
    seed: Option<u64>,
    format: Option<OutputFormat>,
}

/// A failure with its exit code.
struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure { code: e.exit_code() as u8, message: e.to_string() }
    }
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Self {
        Failure { code: 2, message: format!("{e:#}") }
    }
}

fn usage(message: impl Into<String>) -> Failure {
    Failure { code: 2, message: message.into() }
}

struct Settings {
    cap: usize,
    seed: u64,
    format: Option<OutputFormat>,
}

fn settings(cli: &Cli) -> Result<Settings, Failure> {
    let file = match &cli.config {
        Some(path) => {
            let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
            toml::from_str::<FileConfig>(&text).with_context(|| format!("parsing {}", path.display()))?
        }
        None => FileConfig::default(),
    };
    let env_cap = match std::env::var(CAP_ENV) {
        Ok(v) => Some(v.trim().parse::<usize>().map_err(|_| usage(format!("{CAP_ENV}={v} is not a positive integer")))?),
        Err(_) => None,
    };
    let cap = cli.cap.or(env_cap).or(file.monomial_cap).unwrap_or(DEFAULT_MONOMIAL_CAP);
    if cap == 0 {
        return Err(usage("monomial cap must be positive"));
    }
    Ok(Settings { cap, seed: file.seed.unwrap_or(42), format: file.format })
}

fn parse_siegel_parts(text: &str) -> Result<Vec<usize>, Failure> {
    text.split(',')
        .map(|s| s.trim().parse::<usize>().map_err(|_| usage(format!("bad part `{s}` in --parts {text}"))))
        .collect()
}

fn parse_unitary_parts(text: &str) -> Result<Vec<(usize, usize)>, Failure> {
    text.split(',')
        .map(|s| {
            let (a, b) = s.split_once(':').ok_or_else(|| usage(format!("unitary part `{s}` must be p_i:q_i")))?;
            let parse = |x: &str| x.trim().parse::<usize>().map_err(|_| usage(format!("bad unitary part `{s}`")));
            Ok((parse(a)?, parse(b)?))
        })
        .collect()
}

fn need(v: Option<usize>, family: FamilyId, name: &str) -> Result<usize, Failure> {
    v.ok_or_else(|| usage(format!("{family} needs --{name}")))
}

fn family_params(family: FamilyId, args: &ParamArgs) -> Result<FamilyParams, Failure> {
    let parts = || args.parts.as_deref().ok_or_else(|| usage(format!("{family} needs --parts")));
    let params = match family {
        FamilyId::SlImagSp => FamilyParams::SlImagSp { n: need(args.n, family, "n")? },
        FamilyId::SlOddReal => FamilyParams::SlOddReal { n: need(args.n, family, "n")? },
        FamilyId::SiegelProduct => {
            FamilyParams::Siegel { g: need(args.g, family, "g")?, parts: parse_siegel_parts(parts()?)? }
        }
        FamilyId::UnitaryProduct => FamilyParams::Unitary {
            p: need(args.p, family, "p")?,
            q: need(args.q, family, "q")?,
            parts: parse_unitary_parts(parts()?)?,
        },
        FamilyId::SpInUgg => FamilyParams::SpInUgg { g: need(args.g, family, "g")? },
    };
    params.validate()?;
    Ok(params)
}

fn parse_range(text: &Option<String>, name: &str) -> Result<Option<(usize, usize)>, Failure> {
    let Some(text) = text else { return Ok(None) };
    let bad = || usage(format!("--{name} {text}: expected N or LO..HI"));
    let num = |s: &str| s.trim().parse::<usize>().map_err(|_| bad());
    let range = match text.split_once("..") {
        Some((lo, hi)) => (num(lo)?, num(hi.trim_start_matches('='))?),
        None => {
            let v = num(text)?;
            (v, v)
        }
    };
    Ok(Some(range))
}

fn parse_suites(names: &[String]) -> Result<Vec<Suite>, Failure> {
    let mut suites = Vec::new();
    for name in names {
        let suite = Suite::from_str(name.trim())?;
        if !suites.contains(&suite) {
            suites.push(suite);
        }
    }
    Ok(suites)
}

fn run_config(params: FamilyParams, run: &RunArgs, s: &Settings) -> Result<RunConfig, Failure> {
    let json = run.json || s.format == Some(OutputFormat::Json);
    Ok(RunConfig {
        params,
        output_format: if json { OutputFormat::Json } else { OutputFormat::Text },
        monomial_cap: s.cap,
        seed: run.seed.unwrap_or(s.seed),
        checks: parse_suites(&run.checks)?,
        timing: run.timing,
    })
}

#[derive(Serialize)]
struct RingSummary {
    ring: String,
    generators: Vec<(String, usize)>,
    top_degree: usize,
    total_dimension: usize,
    betti: Vec<usize>,
}

fn ring_summary(name: String, alg: &Arc<GradedAlgebra>) -> RingSummary {
    RingSummary {
        ring: name,
        generators: alg.generators().iter().map(|g| (g.name.clone(), g.degree)).collect(),
        top_degree: alg.top_degree(),
        total_dimension: alg.total_dimension(),
        betti: alg.poincare_polynomial(),
    }
}

fn poincare_string(betti: &[usize]) -> String {
    let terms: Vec<String> = betti
        .iter()
        .enumerate()
        .filter(|(_, b)| **b > 0)
        .map(|(d, b)| match (d, b) {
            (0, b) => b.to_string(),
            (d, 1) => format!("t^{d}"),
            (d, b) => format!("{b}*t^{d}"),
        })
        .collect();
    terms.join(" + ")
}

fn rings(ring: &str, args: &ParamArgs, limits: &Limits) -> Result<Vec<RingSummary>, Failure> {
    let out = match ring {
        "lagrangian" => {
            let g = args.g.ok_or_else(|| usage("lagrangian needs --g"))?;
            vec![ring_summary(format!("lagrangian g={g}"), &lagrangian(g, "sigma", limits)?)]
        }
        "grassmannian" => {
            let (p, q) = (args.p.ok_or_else(|| usage("grassmannian needs --p"))?, args.q.ok_or_else(|| usage("grassmannian needs --q"))?);
            if p == 0 || q == 0 {
                return Err(usage("grassmannian needs p, q >= 1"));
            }
            vec![ring_summary(format!("grassmannian p={p} q={q}"), &grassmannian(p, q, "sigma", "tau", limits)?)]
        }
        "special-unitary" | "su" => {
            let n = args.n.ok_or_else(|| usage("special-unitary needs --n"))?;
            vec![ring_summary(format!("special-unitary n={n}"), &special_unitary(n, limits)?)]
        }
        other => {
            let family = FamilyId::from_str(other).map_err(|_| {
                usage(format!("unknown ring `{other}` (lagrangian, grassmannian, special-unitary, or a family id)"))
            })?;
            let params = family_params(family, args)?;
            let inst = params.build(limits)?;
            let label = params.label();
            vec![ring_summary(format!("{label} G"), &inst.dual_g), ring_summary(format!("{label} H"), &inst.dual_h)]
        }
    };
    Ok(out)
}

fn run(cli: Cli) -> Result<u8, Failure> {
    let s = settings(&cli)?;
    let limits = Limits { monomial_cap: s.cap };
    match &cli.command {
        Command::Family { family, params, run } => {
            let family = FamilyId::from_str(family)?;
            let config = run_config(family_params(family, params)?, run, &s)?;
            let doc = run_family(&config)?;
            match config.output_format {
                OutputFormat::Json => outln!("{}", doc.to_json()),
                OutputFormat::Text => out!("{}", doc.to_text()),
            }
            Ok(if doc.checks_passed() { 0 } else { 1 })
        }
        Command::Sweep { family, n, g, p, q, max_parts, exact_q, run } => {
            let family = FamilyId::from_str(family)?;
            let ranges = SweepRanges {
                n: parse_range(n, "n")?,
                g: parse_range(g, "g")?,
                p: parse_range(p, "p")?,
                q: parse_range(q, "q")?,
                max_parts: *max_parts,
                exact_q: *exact_q,
            };
            // The template's parameters are replaced per instance.
            let template = run_config(FamilyParams::SpInUgg { g: 1 }, run, &s)?;
            let report = run_sweep(family, &ranges, &template)?;
            match template.output_format {
                OutputFormat::Json => outln!("{}", report.to_json()),
                OutputFormat::Text => out!("{}", report.to_text()),
            }
            for e in &report.entries {
                if let Some(err) = &e.error {
                    eprintln!("{}: {}", e.label, err.message);
                }
            }
            let checks_ok = report.entries.iter().filter_map(|e| e.report.as_ref()).all(|r| r.checks_passed());
            Ok(if checks_ok { 0 } else { 1 })
        }
        Command::Check { suites, seed, samples, json, verbose } => {
            let suites = if suites.is_empty() { Suite::ALL.to_vec() } else { parse_suites(suites)? };
            let config = CheckConfig {
                suites,
                seed: seed.unwrap_or(s.seed),
                morphism_samples: *samples,
                limits,
                ..CheckConfig::default()
            };
            let results = run_checks(&config);
            let failed = results.iter().filter(|r| !r.passed).count();
            if *json || s.format == Some(OutputFormat::Json) {
                outln!("{}", serde_json::to_string_pretty(&results).expect("results serialize"));
            } else {
                for r in results.iter().filter(|r| *verbose || !r.passed) {
                    outln!("{} {:<11} {}: {}", if r.passed { "pass" } else { "FAIL" }, r.suite, r.name, r.detail);
                }
                outln!("{} checks, {} passed, {failed} failed (seed {})", results.len(), results.len() - failed, config.seed);
            }
            Ok(if failed == 0 { 0 } else { 1 })
        }
        Command::Ring { ring, params, poincare, json } => {
            let summaries = rings(ring, params, &limits)?;
            if *json || s.format == Some(OutputFormat::Json) {
                outln!("{}", serde_json::to_string_pretty(&summaries).expect("rings serialize"));
            } else {
                for r in &summaries {
                    let gens: Vec<String> = r.generators.iter().map(|(n, d)| format!("{n}:{d}")).collect();
                    outln!("{}", r.ring);
                    outln!("  generators: {}", gens.join(" "));
                    outln!("  top degree {}, total dimension {}", r.top_degree, r.total_dimension);
                    outln!("  betti: {:?}", r.betti);
                    if *poincare {
                        outln!("  poincare: {}", poincare_string(&r.betti));
                    }
                }
            }
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
