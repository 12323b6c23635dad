//! Command-line front end: argument model, command dispatch and reports.

use std::path::{Path, PathBuf};
use std::time::Instant;

use anyhow::{anyhow, bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use decayspace::analysis::{
    assouad_estimate, fading_bound, fading_parameter, independence_dimension, DimensionEstimate,
    FadingReport, IndependenceReport, PackingConstant, SeparationUnits, DEFAULT_EXACT_LIMIT,
    DEFAULT_Q_GRID,
};
use decayspace::capacity::{
    amicable_subset, capacity_oracle, capacity_uniform, check_onezetasep, separation_strengthen,
    signal_strengthen, AmicableResult, CapacityResult, OneZetaSep, Partition, DEFAULT_ORACLE_MAX,
};
use decayspace::generators::GeneratorSpec;
use decayspace::metricity::{compute_zeta, metricity_report, quasi_distances, MetricityReport};
use decayspace::space::Violation;
use decayspace::{DecaySpace, Error, LinkSystem, QuasiMetric};

pub mod corpus;

pub use corpus::{CorpusItemReport, VerifyReport};

/// Environment variable holding the default numeric tolerance.
pub const TOL_ENV: &str = "DECAYSPACE_TOL";

const DEFAULT_TOL: f64 = decayspace::metricity::DEFAULT_TOL;

#[derive(Parser, Debug)]
#[command(name = "decayspace", version, about = "SINR analysis over general decay spaces")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

/// One invocation of the tool; serialized verbatim into every report.
#[derive(Subcommand, Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "command", rename_all = "kebab-case")]
pub enum Command {
    /// Check a decay space or link system against the space axioms and link constraints.
    Validate(ValidateArgs),
    /// Metricity zeta, multiplicative metricity phi, the lg(max/min) bound and quasi-distance checks.
    Analyze(AnalyzeArgs),
    /// Uniform-power capacity by separation-and-affectance greedy selection, optionally against the exhaustive optimum.
    Capacity(CapacityArgs),
    /// Signal strengthening, separation strengthening, the 1/zeta-separation check or the amicable-subset pipeline.
    Partition(PartitionArgs),
    /// Assouad dimension estimate, fading parameter gamma(r) and the annulus bound on gamma.
    Fading(FadingArgs),
    /// Build an instance of a named family (euclidean, star, welzl, equidecay-graph, twoline, threepoint).
    Generate(GenerateArgs),
    /// Run the invariant suites over the built-in corpus or user files.
    Verify(VerifyArgs),
}

#[derive(Args, Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ValidateArgs {
    /// Decay space file (JSON or CSV).
    #[arg(long, conflicts_with = "system", required_unless_present = "system")]
    pub space: Option<PathBuf>,
    /// Link system file (JSON).
    #[arg(long)]
    pub system: Option<PathBuf>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AnalyzeArgs {
    #[arg(long)]
    pub space: PathBuf,
    /// Bisection tolerance on 1/zeta.
    #[arg(long, env = TOL_ENV, default_value_t = DEFAULT_TOL)]
    pub tol: f64,
    /// Exponent for the quasi-distance check instead of the computed zeta.
    #[arg(long)]
    pub zeta: Option<f64>,
    /// Also estimate Assouad and independence dimensions.
    #[arg(long)]
    pub dimension: bool,
    #[arg(long, default_value_t = DEFAULT_EXACT_LIMIT)]
    pub exact_limit: usize,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OracleMode {
    On,
    Off,
    /// Run when the system has at most `--oracle-max` links.
    Auto,
}

#[derive(Args, Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CapacityArgs {
    #[arg(long)]
    pub system: PathBuf,
    /// `auto` (computed metricity) or a number >= 1.
    #[arg(long, default_value = "auto")]
    pub zeta: String,
    #[arg(long, value_enum, default_value_t = OracleMode::Auto)]
    pub oracle: OracleMode,
    #[arg(long, default_value_t = DEFAULT_ORACLE_MAX)]
    pub oracle_max: usize,
    #[arg(long, env = TOL_ENV, default_value_t = DEFAULT_TOL)]
    pub tol: f64,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PartitionKind {
    /// p-feasible set into q-feasible classes.
    Signal,
    /// tau-separated set into eta-separated classes.
    Separation,
    /// e^2/beta-feasible set must be 1/zeta-separated.
    Onezetasep,
    /// Large subset with bounded out-affectance.
    Amicable,
}

#[derive(Args, Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PartitionArgs {
    #[arg(long)]
    pub system: PathBuf,
    #[arg(long, value_enum)]
    pub kind: PartitionKind,
    /// Comma-separated link indices; all links when omitted.
    #[arg(long, value_delimiter = ',')]
    pub set: Option<Vec<usize>>,
    #[arg(long, default_value_t = 1.0)]
    pub p: f64,
    #[arg(long, default_value_t = 3.0)]
    pub q: f64,
    #[arg(long, default_value_t = 0.5)]
    pub tau: f64,
    #[arg(long, default_value_t = 2.0)]
    pub eta: f64,
    /// `auto` (computed metricity) or a number >= 1.
    #[arg(long, default_value = "auto")]
    pub zeta: String,
    #[arg(long, env = TOL_ENV, default_value_t = DEFAULT_TOL)]
    pub tol: f64,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum UnitsArg {
    Decay,
    Quasi,
}

#[derive(Args, Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FadingArgs {
    #[arg(long)]
    pub space: PathBuf,
    /// Separation radius.
    #[arg(long)]
    pub r: f64,
    /// Packing constant; fitted from the packing samples when omitted.
    #[arg(long = "C")]
    pub c: Option<f64>,
    #[arg(long, default_value_t = DEFAULT_EXACT_LIMIT)]
    pub exact_limit: usize,
    #[arg(long, value_enum, default_value_t = UnitsArg::Decay)]
    pub units: UnitsArg,
    #[arg(long, env = TOL_ENV, default_value_t = DEFAULT_TOL)]
    pub tol: f64,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GenerateArgs {
    #[arg(long)]
    pub family: String,
    /// Family parameters as a JSON object.
    #[arg(long, default_value = "{}")]
    pub params: String,
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VerifyArgs {
    /// `builtin` or a directory / file of spaces and link systems.
    #[arg(long, default_value = "builtin")]
    pub corpus: String,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, env = TOL_ENV, default_value_t = DEFAULT_TOL)]
    pub tol: f64,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Validate(_) => "validate",
            Command::Analyze(_) => "analyze",
            Command::Capacity(_) => "capacity",
            Command::Partition(_) => "partition",
            Command::Fading(_) => "fading",
            Command::Generate(_) => "generate",
            Command::Verify(_) => "verify",
        }
    }

    pub fn out(&self) -> Option<&Path> {
        match self {
            Command::Validate(a) => a.out.as_deref(),
            Command::Analyze(a) => a.out.as_deref(),
            Command::Capacity(a) => a.out.as_deref(),
            Command::Partition(a) => a.out.as_deref(),
            Command::Fading(a) => a.out.as_deref(),
            Command::Generate(a) => a.out.as_deref(),
            Command::Verify(a) => a.out.as_deref(),
        }
    }
}

/// A checked invariant and its outcome.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Verdict {
    pub invariant: String,
    pub passed: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

impl Verdict {
    pub fn new(invariant: &str, passed: bool, witness: impl FnOnce() -> String) -> Self {
        Self {
            invariant: invariant.to_string(),
            passed,
            witness: (!passed).then(witness),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ValidateResults {
    pub nodes: usize,
    pub links: Option<usize>,
    pub violations: Vec<Violation>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub link_error: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AnalyzeResults {
    pub metricity: MetricityReport,
    pub symmetric: bool,
    pub quasi_zeta: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dimension: Option<DimensionEstimate>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub independence: Option<IndependenceReport>,
}

/// Per-link audit of a selected set.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LinkAudit {
    pub link: usize,
    pub in_affectance: f64,
    pub sinr: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CapacityResults {
    pub result: CapacityResult,
    pub oracle_witness: Option<Vec<usize>>,
    pub audit: Vec<LinkAudit>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum PartitionResults {
    Signal { partition: Partition },
    Separation { partition: Partition },
    Onezetasep { zeta: f64, outcome: OneZetaSep },
    Amicable { zeta: f64, result: AmicableResult },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FadingResults {
    pub dimension: DimensionEstimate,
    pub fading: FadingReport,
    /// Annulus bound at the estimated dimension and constant, when it is finite.
    pub bound: Option<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Results {
    Validate(ValidateResults),
    Analyze(AnalyzeResults),
    Capacity(CapacityResults),
    Partition(PartitionResults),
    Fading(FadingResults),
    Verify(VerifyReport),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Timing {
    pub elapsed_ms: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AnalysisReport {
    pub command: String,
    pub config: Command,
    pub results: Results,
    pub verdicts: Vec<Verdict>,
    pub version: String,
    /// Wall-clock time; the only field that varies between identical runs.
    pub timing: Timing,
}

impl AnalysisReport {
    pub fn passed(&self) -> bool {
        self.verdicts.iter().all(|v| v.passed)
    }

    pub fn to_json(&self) -> anyhow::Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }
}

/// What a command produced.
#[derive(Clone, Debug, PartialEq)]
pub enum Outcome {
    Report(Box<AnalysisReport>),
    /// A generated space or system file.
    Artifact(String),
}

impl Outcome {
    /// Exit code: 0 when every verdict passed, 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        match self {
            Outcome::Report(r) if !r.passed() => 1,
            _ => 0,
        }
    }

    pub fn to_text(&self) -> anyhow::Result<String> {
        match self {
            Outcome::Report(r) => r.to_json(),
            Outcome::Artifact(s) => Ok(s.clone()),
        }
    }
}

/// Executes one command. Errors correspond to usage or input problems.
pub fn run(command: &Command) -> anyhow::Result<Outcome> {
    let start = Instant::now();
    let (results, verdicts) = match command {
        Command::Validate(a) => run_validate(a)?,
        Command::Analyze(a) => run_analyze(a)?,
        Command::Capacity(a) => run_capacity(a)?,
        Command::Partition(a) => run_partition(a)?,
        Command::Fading(a) => run_fading(a)?,
        Command::Generate(a) => return run_generate(a).map(Outcome::Artifact),
        Command::Verify(a) => {
            let report = corpus::run_verify(a)?;
            let verdicts = report.failures();
            (Results::Verify(report), verdicts)
        }
    };
    Ok(Outcome::Report(Box::new(AnalysisReport {
        command: command.name().to_string(),
        config: command.clone(),
        results,
        verdicts,
        version: env!("CARGO_PKG_VERSION").to_string(),
        timing: Timing {
            elapsed_ms: start.elapsed().as_secs_f64() * 1e3,
        },
    })))
}

/// Writes the outcome to the command's `--out` path or standard output.
pub fn emit(command: &Command, outcome: &Outcome) -> anyhow::Result<()> {
    let mut text = outcome.to_text()?;
    text.push('\n');
    match command.out() {
        Some(path) => std::fs::write(path, text).with_context(|| format!("writing {}", path.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

type Dispatch = anyhow::Result<(Results, Vec<Verdict>)>;

fn load_space(path: &Path) -> anyhow::Result<DecaySpace> {
    DecaySpace::load(path).with_context(|| format!("reading space {}", path.display()))
}

fn load_system(path: &Path) -> anyhow::Result<LinkSystem> {
    LinkSystem::load(path).with_context(|| format!("reading link system {}", path.display()))
}

fn check_tol(tol: f64) -> anyhow::Result<()> {
    if !(tol > 0.0 && tol < 1.0) {
        bail!("tolerance {tol} must lie in (0, 1)");
    }
    Ok(())
}

fn resolve_zeta(choice: &str, space: &DecaySpace, tol: f64) -> anyhow::Result<f64> {
    if choice == "auto" {
        return Ok(compute_zeta(space, tol)?.zeta);
    }
    let z: f64 = choice
        .parse()
        .map_err(|_| anyhow!("--zeta expects `auto` or a number, got `{choice}`"))?;
    if !(z >= 1.0 && z.is_finite()) {
        bail!("--zeta must be at least 1, got {z}");
    }
    Ok(z)
}

fn run_validate(a: &ValidateArgs) -> Dispatch {
    let (space, system_path) = match (&a.space, &a.system) {
        (Some(p), _) => (load_space(p)?, None),
        (None, Some(p)) => {
            let text = std::fs::read_to_string(p).with_context(|| format!("reading {}", p.display()))?;
            let value: serde_json::Value =
                serde_json::from_str(&text).with_context(|| format!("parsing {}", p.display()))?;
            let space = match value.get("space") {
                Some(serde_json::Value::String(rel)) => {
                    load_space(&p.parent().unwrap_or(Path::new(".")).join(rel))?
                }
                Some(inline) => serde_json::from_value(inline.clone())
                    .with_context(|| format!("parsing inline space in {}", p.display()))?,
                None => bail!("{}: missing `space`", p.display()),
            };
            (space, Some(p))
        }
        (None, None) => bail!("validate needs --space or --system"),
    };
    let report = space.validate();
    let mut verdicts = vec![Verdict::new("space.axioms", report.is_ok(), || {
        report
            .violations
            .iter()
            .map(ToString::to_string)
            .collect::<Vec<_>>()
            .join("; ")
    })];
    let mut links = None;
    let mut link_error = None;
    if let (Some(path), true) = (system_path, report.is_ok()) {
        match LinkSystem::load(path) {
            Ok(sys) => links = Some(sys.len()),
            Err(e @ (Error::InvalidLink { .. } | Error::InvalidParameter(_))) => {
                link_error = Some(e.to_string());
            }
            Err(e) => return Err(anyhow::Error::new(e).context(format!("reading {}", path.display()))),
        }
        verdicts.push(Verdict::new("system.links", link_error.is_none(), || {
            link_error.clone().unwrap_or_default()
        }));
    }
    Ok((
        Results::Validate(ValidateResults {
            nodes: space.len(),
            links,
            violations: report.violations,
            link_error,
        }),
        verdicts,
    ))
}

fn run_analyze(a: &AnalyzeArgs) -> Dispatch {
    check_tol(a.tol)?;
    let space = load_space(&a.space)?;
    space.ensure_valid()?;
    let metricity = metricity_report(&space, a.tol)?;
    let quasi_zeta = match a.zeta {
        Some(z) if z > 0.0 && z.is_finite() => z,
        Some(z) => bail!("--zeta must be positive, got {z}"),
        None => metricity.zeta,
    };
    let quasi = QuasiMetric::new_unchecked(&space, quasi_zeta);
    let violation = quasi.triangle_violation(10.0 * a.tol);
    let mut verdicts = vec![Verdict::new("metricity.quasi-triangle", violation.is_none(), || {
        format!("triple {:?} at zeta = {quasi_zeta}", violation.unwrap_or_default())
    })];
    if let Some(bound) = metricity.zeta0.filter(|b| *b >= 1.0) {
        verdicts.push(Verdict::new(
            "metricity.trivial-bound",
            metricity.zeta_raw <= bound + a.tol,
            || format!("zeta_raw = {} exceeds lg(max/min) = {bound}", metricity.zeta_raw),
        ));
    }
    let (dimension, independence) = if a.dimension {
        (
            Some(assouad_estimate(&space, PackingConstant::default(), &DEFAULT_Q_GRID, a.exact_limit)),
            Some(independence_dimension(&quasi, a.exact_limit)),
        )
    } else {
        (None, None)
    };
    Ok((
        Results::Analyze(AnalyzeResults {
            symmetric: space.is_symmetric(),
            metricity,
            quasi_zeta,
            dimension,
            independence,
        }),
        verdicts,
    ))
}

/// In-affectance and SINR of every member of `set`.
pub fn audit(sys: &LinkSystem, set: &[usize]) -> Vec<LinkAudit> {
    let aff = sys.affectance_matrix();
    set.iter()
        .map(|&v| LinkAudit {
            link: v,
            in_affectance: set.iter().map(|&w| aff.get(w, v)).sum(),
            sinr: sys.sinr(set, v),
        })
        .collect()
}

fn run_capacity(a: &CapacityArgs) -> Dispatch {
    check_tol(a.tol)?;
    let sys = load_system(&a.system)?;
    let zeta = resolve_zeta(&a.zeta, sys.space(), a.tol)?;
    let mut result = capacity_uniform(&sys, zeta)?;
    let run_oracle = match a.oracle {
        OracleMode::On => true,
        OracleMode::Off => false,
        OracleMode::Auto => sys.len() <= a.oracle_max,
    };
    let mut oracle_witness = None;
    if run_oracle {
        let o = capacity_oracle(&sys, a.oracle_max)?;
        result.opt = Some(o.size);
        result.ratio = (!result.selected.is_empty()).then(|| o.size as f64 / result.selected.len() as f64);
        oracle_witness = Some(o.witness);
    }
    let audit = audit(&sys, &result.selected);
    let feas = sys.is_feasible(&result.selected, 1.0);
    let mut verdicts = vec![
        Verdict::new("capacity.selected-feasible", feas.feasible, || {
            format!("link {:?} has in-affectance {}", feas.worst_link, feas.worst_affectance)
        }),
        Verdict::new(
            "capacity.half-of-intermediate",
            2 * result.selected.len() >= result.intermediate.len(),
            || format!("|S| = {}, |X| = {}", result.selected.len(), result.intermediate.len()),
        ),
    ];
    if let Some(opt) = result.opt {
        verdicts.push(Verdict::new(
            "capacity.nonempty-when-opt-positive",
            opt == 0 || !result.selected.is_empty(),
            || format!("optimum {opt} but nothing selected"),
        ));
        verdicts.push(Verdict::new("capacity.within-optimum", result.selected.len() <= opt, || {
            format!("|S| = {} exceeds optimum {opt}", result.selected.len())
        }));
    }
    Ok((
        Results::Capacity(CapacityResults {
            result,
            oracle_witness,
            audit,
        }),
        verdicts,
    ))
}

fn run_partition(a: &PartitionArgs) -> Dispatch {
    check_tol(a.tol)?;
    let sys = load_system(&a.system)?;
    let set: Vec<usize> = match &a.set {
        Some(s) => {
            if let Some(bad) = s.iter().find(|&&v| v >= sys.len()) {
                bail!("--set: link {bad} out of range for {} links", sys.len());
            }
            let mut s = s.clone();
            s.sort_unstable();
            s.dedup();
            s
        }
        None => (0..sys.len()).collect(),
    };
    let quasi_for = |zeta: f64| quasi_distances(sys.space(), zeta, 10.0 * a.tol);
    let partition_verdicts = |p: &Partition, quasi: Option<&QuasiMetric>| {
        vec![
            Verdict::new("partition.covers-input", p.covers(&set), || "classes do not partition the input".into()),
            Verdict::new("partition.classes-certified", p.verify(&sys, quasi), || {
                format!("a class fails {:?}", p.certificate)
            }),
            Verdict::new("partition.within-bound", p.len() <= p.bound, || {
                format!("{} classes exceed the bound {}", p.len(), p.bound)
            }),
        ]
    };
    let (results, verdicts) = match a.kind {
        PartitionKind::Signal => {
            let p = signal_strengthen(&sys, &set, a.p, a.q)?;
            let v = partition_verdicts(&p, None);
            (PartitionResults::Signal { partition: p }, v)
        }
        PartitionKind::Separation => {
            let zeta = resolve_zeta(&a.zeta, sys.space(), a.tol)?;
            let quasi = quasi_for(zeta)?;
            let p = separation_strengthen(&sys, &quasi, &set, a.tau, a.eta)?;
            let v = partition_verdicts(&p, Some(&quasi));
            (PartitionResults::Separation { partition: p }, v)
        }
        PartitionKind::Onezetasep => {
            let zeta = resolve_zeta(&a.zeta, sys.space(), a.tol)?;
            let quasi = quasi_for(zeta)?;
            let outcome = check_onezetasep(&sys, &quasi, zeta, &set)?;
            let v = vec![Verdict::new(
                "partition.onezetasep",
                !matches!(outcome, OneZetaSep::Violation { .. }),
                || format!("{outcome:?}"),
            )];
            (PartitionResults::Onezetasep { zeta, outcome }, v)
        }
        PartitionKind::Amicable => {
            let zeta = resolve_zeta(&a.zeta, sys.space(), a.tol)?;
            let quasi = quasi_for(zeta)?;
            let result = amicable_subset(&sys, &quasi, zeta, &set)?;
            let v = vec![Verdict::new(
                "partition.amicable-half",
                2 * result.subset.len() >= result.separated.len(),
                || format!("|S'| = {}, |separated| = {}", result.subset.len(), result.separated.len()),
            )];
            (PartitionResults::Amicable { zeta, result }, v)
        }
    };
    Ok((Results::Partition(results), verdicts))
}

fn run_fading(a: &FadingArgs) -> Dispatch {
    check_tol(a.tol)?;
    let space = load_space(&a.space)?;
    space.ensure_valid()?;
    let constant = match a.c {
        Some(c) if c > 0.0 => PackingConstant::Fixed(c),
        Some(c) => bail!("--C must be positive, got {c}"),
        None => PackingConstant::Fitted,
    };
    let dimension = assouad_estimate(&space, constant, &DEFAULT_Q_GRID, a.exact_limit);
    let (units, quasi) = match a.units {
        UnitsArg::Decay => (SeparationUnits::Decay, None),
        UnitsArg::Quasi => {
            let zeta = compute_zeta(&space, a.tol)?.zeta;
            (SeparationUnits::Quasi, Some(QuasiMetric::new_unchecked(&space, zeta)))
        }
    };
    let fading = fading_parameter(&space, a.r, a.exact_limit, units, quasi.as_ref())?;
    let bound = if dimension.assouad < 1.0 {
        Some(fading_bound(dimension.c, dimension.assouad)?)
    } else {
        None
    };
    let mut verdicts = Vec::new();
    if let Some(b) = bound {
        verdicts.push(Verdict::new("fading.gamma-within-bound", fading.gamma <= b * (1.0 + a.tol), || {
            format!("gamma = {} exceeds bound {b} at node {:?}", fading.gamma, fading.witness_node)
        }));
    }
    Ok((
        Results::Fading(FadingResults {
            dimension,
            fading,
            bound,
        }),
        verdicts,
    ))
}

fn run_generate(a: &GenerateArgs) -> anyhow::Result<String> {
    let params: serde_json::Value = serde_json::from_str(&a.params).context("parsing --params")?;
    let request = GeneratorSpec::from_parts(&a.family, params, a.seed)
        .with_context(|| format!("parameters for family `{}`", a.family))?;
    Ok(request.generate()?.to_json_string()?)
}
