//! Command-line front end. Every command prints one [`RunReport`].
//!
//! Exit codes: 0 pass, 1 verification failure, 2 usage error, 3 budget
//! exceeded.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::constructions::{certify, disconnected_extremal, sharp_family_with, Claim, MiddleLayer};
use crate::error::Error;
use crate::family::{GroundSet, SetFamily};
use crate::graph::{components, count_two_chains};
use crate::lubell::lubell;
use crate::normalize::{make_skipless, skip_count};
use crate::numeric::rational_string;
use crate::reproduce::{find, registry, reproduce};
use crate::search::{
    enumerate_optima, la_exact, la_exact_restricted, lambda_star_exact, mad_star_probe, max_disconnected,
    min_two_chains, xi_star_exact, Objective, SearchOptions, SearchResult, DEFAULT_BUDGET_NODES,
};
use crate::shadow::{boundary_pair, excluded_lower_bound};
use crate::verify::{verify, Theorem, VerifyParams};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "latticework", version, about = "Exact computations on families of subsets of [n]")]
pub struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Worker threads for searches.
    #[arg(long, global = true, default_value_t = 1)]
    pub jobs: usize,
    /// Seed for randomized suites.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Node budget for exhaustive searches.
    #[arg(long, global = true, default_value_t = DEFAULT_BUDGET_NODES)]
    pub budget_nodes: u64,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Build a named family.
    Construct {
        name: Construction,
        #[arg(long)]
        n: u32,
        #[arg(long)]
        k: Option<u32>,
        /// Use the upper middle layer when n − k is odd.
        #[arg(long)]
        ceil: bool,
        /// Also write the bare family file here.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Structural summary of a family file.
    Analyze { family: PathBuf },
    /// Remove skips at fixed size, keeping component orders ≤ t.
    Normalize {
        family: PathBuf,
        #[arg(long)]
        t: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// F⁺/F⁻ analysis of a split of a family's components.
    Boundary {
        #[arg(long)]
        family: PathBuf,
        /// JSON `{"a": [component indices], "b": [...]}`.
        #[arg(long)]
        split_file: PathBuf,
    },
    /// Run a property suite.
    Verify {
        theorem: String,
        #[arg(long)]
        family: Option<PathBuf>,
        #[arg(long)]
        n: Option<u32>,
        #[arg(long)]
        k: Option<u32>,
        #[arg(long)]
        samples: Option<usize>,
    },
    /// Exhaustive search for small n.
    Search {
        kind: SearchKind,
        #[arg(long)]
        n: Option<u32>,
        #[arg(long)]
        t: Option<usize>,
        #[arg(long)]
        m: Option<usize>,
        #[arg(long)]
        kmin: Option<u32>,
        #[arg(long)]
        kmax: Option<u32>,
    },
    /// Run a registered experiment against its expected value.
    Reproduce {
        #[arg(required_unless_present = "list")]
        name: Option<String>,
        /// List registered experiments.
        #[arg(long)]
        list: bool,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Construction {
    Sharp,
    Disconnected,
    Layer,
    PowerSet,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum SearchKind {
    La,
    LaRestricted,
    LambdaStar,
    Disconnected,
    XiStar,
    #[value(name = "min2chains")]
    MinTwoChains,
    Madstar,
    /// All optima of `la` up to relabelling (n ≤ 4).
    Optima,
}

#[derive(Clone, Debug, Serialize)]
pub struct RunReport {
    pub command: String,
    pub parameters: Value,
    pub results: Value,
    pub timing: Timing,
    pub version: &'static str,
}

#[derive(Clone, Copy, Debug, Serialize)]
pub struct Timing {
    pub elapsed_ms: f64,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct SplitFile {
    a: Vec<usize>,
    b: Vec<usize>,
}

#[derive(Debug)]
enum Failure {
    Usage(String),
    Lib(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

impl Failure {
    fn exit_code(&self) -> i32 {
        match self {
            Failure::Lib(Error::Invariant(_) | Error::OrderBound { .. }) => EXIT_FAILURE,
            _ => EXIT_USAGE,
        }
    }
}

impl std::fmt::Display for Failure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Failure::Usage(msg) => write!(f, "usage error: {msg}"),
            Failure::Lib(e) => write!(f, "{e}"),
        }
    }
}

/// Results plus the exit code they imply.
struct Outcome {
    parameters: Value,
    results: Value,
    code: i32,
}

/// Stable 64-bit FNV-1a digest of `n` and the member masks.
pub fn family_hash(family: &SetFamily) -> String {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    let words = std::iter::once(family.n() as u64).chain(family.iter().map(|m| m.bits()));
    for w in words {
        for byte in w.to_le_bytes() {
            h ^= byte as u64;
            h = h.wrapping_mul(0x0000_0100_0000_01b3);
        }
    }
    format!("{h:016x}")
}

fn read_family(path: &Path) -> Result<SetFamily, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))?;
    SetFamily::from_json(&text).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn write_family(path: &Path, family: &SetFamily) -> Result<(), Failure> {
    std::fs::write(path, family.to_json() + "\n")
        .map_err(|e| Failure::Usage(format!("cannot write {}: {e}", path.display())))
}

fn need<T>(value: Option<T>, flag: &str, kind: &str) -> Result<T, Failure> {
    value.ok_or_else(|| Failure::Usage(format!("{kind} needs {flag}")))
}

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("report values serialize")
}

fn histogram<I: IntoIterator<Item = u64>>(values: I) -> BTreeMap<u64, usize> {
    let mut h = BTreeMap::new();
    for v in values {
        *h.entry(v).or_insert(0) += 1;
    }
    h
}

fn construct(
    name: Construction,
    n: u32,
    k: Option<u32>,
    ceil: bool,
    out: Option<&Path>,
) -> Result<Outcome, Failure> {
    let middle = if ceil { MiddleLayer::Ceil } else { MiddleLayer::Floor };
    let (family, claim) = match name {
        Construction::Sharp => {
            let k = need(k, "--k", "sharp")?;
            let f = sharp_family_with(n, k, middle)?;
            (f, Claim::sharp(n, k))
        }
        Construction::Disconnected => (disconnected_extremal(n)?, Claim::disconnected_extremal(n)),
        Construction::Layer => {
            let k = need(k, "--k", "layer")?;
            let ground = GroundSet::new(n)?;
            if k > n {
                return Err(Error::Domain(format!("k = {k} exceeds n = {n}")).into());
            }
            let f = SetFamily::layer(ground, k);
            let claim = Claim {
                name: format!("layer(n={n}, k={k})"),
                size: Some(f.len() as u64),
                antichain: true,
                ..Claim::default()
            };
            (f, claim)
        }
        Construction::PowerSet => {
            let f = SetFamily::power_set(GroundSet::new(n)?);
            let claim = Claim {
                name: format!("power-set(n={n})"),
                size: Some(1u64 << n),
                component_count: Some(1),
                diamond_height: Some(n),
                ..Claim::default()
            };
            (f, claim)
        }
    };
    // The ceiling variant has a different size, so only its shape is claimed.
    let claim = if ceil && name == Construction::Sharp {
        Claim { size: None, component_count: None, ..claim }
    } else {
        claim
    };
    if let Some(path) = out {
        write_family(path, &family)?;
    }
    let report = certify(&family, &claim);
    let code = if report.passed() { EXIT_PASS } else { EXIT_FAILURE };
    Ok(Outcome {
        parameters: json!({ "name": name_of(name), "n": n, "k": k, "ceil": ceil, "family_hash": family_hash(&family) }),
        results: json!({ "size": family.len(), "certification": report, "passed": report.passed(), "family": family }),
        code,
    })
}

fn name_of<T: ValueEnum>(v: T) -> String {
    v.to_possible_value().map(|p| p.get_name().to_string()).unwrap_or_default()
}

fn analyze(path: &Path) -> Result<Outcome, Failure> {
    let family = read_family(path)?;
    let comps = components(&family);
    let results = json!({
        "size": family.len(),
        "height": family.height().ok(),
        "layer_counts": family.layer_counts(),
        "component_count": comps.count(),
        "component_orders": comps.orders(),
        "order_histogram": histogram(comps.stats.iter().map(|c| c.order as u64)),
        "size_histogram": histogram(comps.stats.iter().map(|c| c.size)),
        "two_chains": count_two_chains(&family),
        "lubell": rational_string(&lubell(&family)),
        "skip_count": skip_count(&family),
    });
    Ok(Outcome {
        parameters: json!({ "family": path.display().to_string(), "n": family.n(), "family_hash": family_hash(&family) }),
        results,
        code: EXIT_PASS,
    })
}

fn normalize(path: &Path, t: usize, out: Option<&Path>) -> Result<Outcome, Failure> {
    let family = read_family(path)?;
    let norm = make_skipless(&family, t)?;
    if let Some(out) = out {
        write_family(out, &norm.family)?;
    }
    let results = json!({
        "trace": norm.trace(),
        "steps": norm.steps.len(),
        "splits": norm.splits(),
        "skips_before": skip_count(&family),
        "skips_after": skip_count(&norm.family),
        "max_order_after": components(&norm.family).max_order(),
        "family": norm.family,
        "family_hash": family_hash(&norm.family),
    });
    Ok(Outcome {
        parameters: json!({ "family": path.display().to_string(), "n": family.n(), "t": t, "family_hash": family_hash(&family) }),
        results,
        code: EXIT_PASS,
    })
}

fn boundary(family_path: &Path, split_path: &Path) -> Result<Outcome, Failure> {
    let family = read_family(family_path)?;
    let text = std::fs::read_to_string(split_path)
        .map_err(|e| Failure::Usage(format!("cannot read {}: {e}", split_path.display())))?;
    let split: SplitFile =
        serde_json::from_str(&text).map_err(|e| Failure::Usage(format!("{}: {e}", split_path.display())))?;
    let comps = components(&family);
    let (a, b) = comps.split(&family, &split.a, &split.b)?;
    let pair = boundary_pair(&a, &b)?;
    let n = family.n();
    let excluded = pair.up_of_fplus.len() + pair.down_of_fminus.len();
    let results = json!({
        "component_orders": comps.orders(),
        "a": a,
        "b": b,
        "fplus": pair.fplus,
        "fminus": pair.fminus,
        "up_of_fplus": pair.up_of_fplus,
        "down_of_fminus": pair.down_of_fminus,
        "excluded_count": excluded,
        "excluded_lower_bound": excluded_lower_bound(n),
        "report": pair.report,
        "all_hold": pair.report.all_hold(),
    });
    Ok(Outcome {
        parameters: json!({
            "family": family_path.display().to_string(),
            "split": { "a": split.a, "b": split.b },
            "n": n,
            "family_hash": family_hash(&family),
        }),
        results,
        code: EXIT_PASS,
    })
}

fn verify_cmd(
    theorem: &str,
    family: Option<&Path>,
    n: Option<u32>,
    k: Option<u32>,
    samples: Option<usize>,
    seed: u64,
) -> Result<Outcome, Failure> {
    let theorem: Theorem = theorem.parse().map_err(|e: Error| Failure::Usage(e.to_string()))?;
    let family = family.map(read_family).transpose()?;
    let hash = family.as_ref().map(family_hash);
    let params = VerifyParams { family, n, k, samples, seed };
    let report = verify(theorem, &params)?;
    let code = if report.passed() { EXIT_PASS } else { EXIT_FAILURE };
    Ok(Outcome {
        parameters: json!({ "theorem": theorem.name(), "n": n, "k": k, "samples": samples, "seed": seed, "family_hash": hash }),
        results: json!({ "passed": report.passed(), "report": report }),
        code,
    })
}

#[allow(clippy::too_many_arguments)]
fn search_cmd(
    kind: SearchKind,
    n: Option<u32>,
    t: Option<usize>,
    m: Option<usize>,
    kmin: Option<u32>,
    kmax: Option<u32>,
    opts: SearchOptions,
) -> Result<Outcome, Failure> {
    let label = name_of(kind);
    let parameters = json!({
        "kind": label, "n": n, "t": t, "m": m, "kmin": kmin, "kmax": kmax,
        "budget_nodes": opts.budget_nodes, "jobs": opts.jobs,
    });
    if kind == SearchKind::Optima {
        let summary = enumerate_optima(need(n, "--n", &label)?, need(t, "--t", &label)?, opts)?;
        let code = if summary.complete { EXIT_PASS } else { EXIT_BUDGET };
        return Ok(Outcome { parameters, results: to_value(&summary), code });
    }
    let (result, objective): (SearchResult, Objective) = match kind {
        SearchKind::La => {
            let (n, t) = (need(n, "--n", &label)?, need(t, "--t", &label)?);
            (la_exact(n, t, opts)?, Objective::BoundedSize { t, kmin: 0, kmax: n })
        }
        SearchKind::LaRestricted => {
            let (n, t) = (need(n, "--n", &label)?, need(t, "--t", &label)?);
            let (kmin, kmax) = (need(kmin, "--kmin", &label)?, need(kmax, "--kmax", &label)?);
            (la_exact_restricted(n, t, kmin, kmax, opts)?, Objective::BoundedSize { t, kmin, kmax })
        }
        SearchKind::LambdaStar => {
            let (n, t) = (need(n, "--n", &label)?, need(t, "--t", &label)?);
            (lambda_star_exact(n, t, opts)?, Objective::BoundedLubell { t })
        }
        SearchKind::Disconnected => {
            (max_disconnected(need(n, "--n", &label)?, opts)?, Objective::Disconnected)
        }
        SearchKind::XiStar => {
            let m = need(m, "--m", &label)?;
            (xi_star_exact(need(n, "--n", &label)?, m, opts)?, Objective::LayerDensity { m })
        }
        SearchKind::MinTwoChains => {
            let m = need(m, "--m", &label)?;
            (min_two_chains(need(n, "--n", &label)?, m, opts)?, Objective::TwoChains { m })
        }
        SearchKind::Madstar => {
            let t = need(t, "--t", &label)?;
            (mad_star_probe(t, opts)?, Objective::RainbowFree { t })
        }
        SearchKind::Optima => unreachable!("handled above"),
    };
    let certified = result.certify(objective);
    let code = match (&certified, result.proven_optimal) {
        (Err(_), _) => EXIT_FAILURE,
        (Ok(()), false) => EXIT_BUDGET,
        (Ok(()), true) => EXIT_PASS,
    };
    let results = json!({
        "value": result.value,
        "proven_optimal": result.proven_optimal,
        "nodes_explored": result.nodes_explored,
        "witness_certified": certified.is_ok(),
        "certification_error": certified.err(),
        "witness": result.witness,
    });
    Ok(Outcome { parameters, results, code })
}

fn reproduce_cmd(name: Option<&str>, list: bool, opts: SearchOptions) -> Result<Outcome, Failure> {
    if list {
        return Ok(Outcome {
            parameters: json!({ "list": true }),
            results: json!({ "experiments": registry() }),
            code: EXIT_PASS,
        });
    }
    let name = need(name, "a name", "reproduce")?;
    let entry = find(name).map_err(|e| Failure::Usage(e.to_string()))?;
    let outcome = reproduce(&entry, opts)?;
    let code = if !outcome.proven_optimal {
        EXIT_BUDGET
    } else if outcome.pass {
        EXIT_PASS
    } else {
        EXIT_FAILURE
    };
    let diff = (!outcome.pass)
        .then(|| format!("expected {:?} {}, got {}", entry.comparison, entry.expected, outcome.actual));
    Ok(Outcome {
        parameters: json!({ "name": name, "experiment": entry.experiment, "budget_nodes": opts.budget_nodes, "jobs": opts.jobs }),
        results: json!({ "outcome": outcome, "diff": diff }),
        code,
    })
}

fn dispatch(cli: &Cli) -> Result<Outcome, Failure> {
    let opts = SearchOptions::with_budget(cli.budget_nodes).with_jobs(cli.jobs);
    match &cli.command {
        Command::Construct { name, n, k, ceil, out } => construct(*name, *n, *k, *ceil, out.as_deref()),
        Command::Analyze { family } => analyze(family),
        Command::Normalize { family, t, out } => normalize(family, *t, out.as_deref()),
        Command::Boundary { family, split_file } => boundary(family, split_file),
        Command::Verify { theorem, family, n, k, samples } => {
            verify_cmd(theorem, family.as_deref(), *n, *k, *samples, cli.seed)
        }
        Command::Search { kind, n, t, m, kmin, kmax } => search_cmd(*kind, *n, *t, *m, *kmin, *kmax, opts),
        Command::Reproduce { name, list } => reproduce_cmd(name.as_deref(), *list, opts),
    }
}

/// Parses `args` (program name first), runs the command and writes the
/// report to `out`. Returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let args: Vec<OsString> = args.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{text}");
                    EXIT_PASS
                }
                _ => {
                    let _ = write!(err, "{text}");
                    EXIT_USAGE
                }
            };
        }
    };
    let started = Instant::now();
    let outcome = match dispatch(&cli) {
        Ok(outcome) => outcome,
        Err(failure) => {
            let _ = writeln!(err, "error: {failure}");
            return failure.exit_code();
        }
    };
    let mut parameters = outcome.parameters;
    if let Value::Object(map) = &mut parameters {
        map.insert("seed".into(), json!(cli.seed));
    }
    let echo: Vec<String> = args.iter().skip(1).map(|a| a.to_string_lossy().into_owned()).collect();
    let report = RunReport {
        command: echo.join(" "),
        parameters,
        results: outcome.results,
        timing: Timing { elapsed_ms: started.elapsed().as_secs_f64() * 1e3 },
        version: env!("CARGO_PKG_VERSION"),
    };
    let written = match cli.format {
        Format::Json => {
            writeln!(out, "{}", serde_json::to_string_pretty(&report).expect("report serializes"))
        }
        Format::Text => write_text(out, &report),
    };
    if let Err(e) = written {
        let _ = writeln!(err, "error: cannot write report: {e}");
        return EXIT_USAGE;
    }
    outcome.code
}

fn write_text(out: &mut dyn Write, report: &RunReport) -> std::io::Result<()> {
    writeln!(out, "command: {}", report.command)?;
    write_flat(out, "parameters", &report.parameters)?;
    write_flat(out, "results", &report.results)?;
    writeln!(out, "elapsed_ms: {:.3}", report.timing.elapsed_ms)?;
    writeln!(out, "version: {}", report.version)
}

/// One `path: value` line per scalar; arrays stay inline.
fn write_flat(out: &mut dyn Write, prefix: &str, value: &Value) -> std::io::Result<()> {
    match value {
        Value::Object(map) if !map.is_empty() => {
            for (key, v) in map {
                write_flat(out, &format!("{prefix}.{key}"), v)?;
            }
            Ok(())
        }
        Value::String(s) => writeln!(out, "{prefix}: {s}"),
        Value::Null => Ok(()),
        other => writeln!(out, "{prefix}: {other}"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_args(args: &[&str]) -> (i32, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = run(std::iter::once("latticework").chain(args.iter().copied()), &mut out, &mut err);
        (code, String::from_utf8(out).unwrap() + &String::from_utf8(err).unwrap())
    }

    #[test]
    fn hash_depends_on_members_and_ground() {
        let a = SetFamily::from_sets(3, &[&[1]]).unwrap();
        let b = SetFamily::from_sets(4, &[&[1]]).unwrap();
        let c = SetFamily::from_sets(3, &[&[2]]).unwrap();
        assert_ne!(family_hash(&a), family_hash(&b));
        assert_ne!(family_hash(&a), family_hash(&c));
        assert_eq!(family_hash(&a), family_hash(&a.clone()));
    }

    #[test]
    fn exit_codes() {
        assert_eq!(run_args(&["search", "la", "--n", "3", "--t", "1"]).0, EXIT_PASS);
        assert_eq!(run_args(&["search", "la", "--n", "3"]).0, EXIT_USAGE);
        assert_eq!(run_args(&["frobnicate"]).0, EXIT_USAGE);
        assert_eq!(run_args(&["verify", "fermat"]).0, EXIT_USAGE);
        assert_eq!(run_args(&["--budget-nodes", "5", "search", "la", "--n", "5", "--t", "2"]).0, EXIT_BUDGET);
        assert_eq!(run_args(&["reproduce", "sperner-n3"]).0, EXIT_PASS);
    }

    #[test]
    fn broken_invariants_are_failures() {
        assert_eq!(Failure::Lib(Error::Invariant("x".into())).exit_code(), EXIT_FAILURE);
        assert_eq!(Failure::Lib(Error::Domain("x".into())).exit_code(), EXIT_USAGE);
        assert_eq!(Failure::Usage("x".into()).exit_code(), EXIT_USAGE);
    }

    #[test]
    fn text_format_is_flat() {
        let (code, text) = run_args(&["--format", "text", "search", "madstar", "--t", "3"]);
        assert_eq!(code, EXIT_PASS);
        assert!(text.contains("results.value: 4/3"), "{text}");
    }
}
