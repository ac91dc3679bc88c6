//! Batch front end for `orderdnnf`.
//!
//! Every subcommand writes one file (or stdout). Reports are JSON or CSV and
//! start with a provenance header; circuit and formula artifacts use the
//! plain `.nnf`, DIMACS and DOT formats. Outputs never depend on the worker
//! count, and exhaustive modes take no seed, so a repeated run reproduces
//! its output byte for byte.

use std::fmt;
use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use anyhow::{anyhow, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use orderdnnf::circuit::{
    check_decomposable, check_deterministic, count_models, count_models_verified, enumerate_words,
    export_dot, export_nnf, import_nnf,
};
use orderdnnf::encodings::{
    build_lin_circuit, build_lintop_circuit, encode_lin_cnf, OrderCircuit, PairMode, PairVarMap,
};
use orderdnnf::oracle::{mod_lin, mod_lintop, truth_table_equiv, ModelSet};
use orderdnnf::rectangles::{
    extract_rectangle_cover, lemma1_experiment, lemma2_experiment, lower_bound_from_covers,
    BalanceFloor, BoundMode, ExtractionSummary,
};
use orderdnnf::{Circuit, SweepGuard};

pub const TOOL: &str = "orderdnnf";
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// Largest `n` the size report builds for `lin_n`.
pub const LIN_SIZE_LIMIT: usize = 18;
/// Largest `subset + choice` gate count the size report builds for lintop.
pub const LINTOP_GATE_LIMIT: u64 = 10_000_000;

#[derive(Parser, Debug)]
#[command(
    name = "orderdnnf",
    version,
    about = "DNNF circuits for linear and top-k orders"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Largest exhaustive sweep, as a number of free variables.
    #[arg(long, global = true, default_value_t = SweepGuard::DEFAULT_BITS)]
    guard: u32,

    /// Worker threads for sweeps (default: all cores).
    #[arg(long, global = true)]
    workers: Option<usize>,

    /// Seed for sampled modes; rejected everywhere else.
    #[arg(long, global = true)]
    seed: Option<u64>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Build the DNNF for lin_n and write it as .nnf.
    BuildLin(BuildArgs),
    /// Build the DNNF for lintop_{n,k} and write it as .nnf.
    BuildLintop(BuildTopArgs),
    /// Write the transitivity CNF for lin_n in DIMACS.
    EncodeCnf(NOut),
    /// Check decomposability and determinism of an .nnf file.
    Check(CheckArgs),
    /// Count the models of an .nnf file.
    Count(CountArgs),
    /// List the models of an .nnf file as a model set.
    Enumerate(FamilyInput),
    /// Compare an .nnf file with the brute-force oracle for its family.
    Verify(VerifyArgs),
    /// Render an .nnf file as a DOT graph.
    ExportDot(FamilyInput),
    /// Cover-size lower bound from the largest balanced rectangle in Mod(lin_n).
    RectBound(RectBoundArgs),
    /// Bichromatic vertex census over balanced colourings of K_n.
    Lemma1(Lemma1Args),
    /// Triangle block census and rectangle bound per balanced partition.
    Lemma2(ReportArgs),
    /// Node and gate counts over a range of sizes.
    SizeReport(SizeArgs),
}

#[derive(Args, Debug)]
struct NOut {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct BuildArgs {
    #[command(flatten)]
    base: NOut,
    /// Sweep the result against the oracle; exit 1 on disagreement.
    #[arg(long)]
    verify: bool,
}

#[derive(Args, Debug)]
struct BuildTopArgs {
    #[command(flatten)]
    base: NOut,
    #[arg(long)]
    k: usize,
    #[arg(long)]
    verify: bool,
}

#[derive(Args, Debug)]
struct CheckArgs {
    input: PathBuf,
    /// Only check decomposability.
    #[arg(long)]
    no_determinism: bool,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct CountArgs {
    input: PathBuf,
    /// Cross-check the count against a sweep.
    #[arg(long)]
    verified: bool,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    Lin,
    Lintop,
}

impl Family {
    fn mode(self) -> PairMode {
        match self {
            Family::Lin => PairMode::Unordered,
            Family::Lintop => PairMode::Ordered,
        }
    }
}

#[derive(Args, Debug)]
struct FamilyInput {
    input: PathBuf,
    /// Pair layout of the variables; n is inferred from the variable count.
    #[arg(long, value_enum, default_value_t = Family::Lin)]
    family: Family,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    #[command(flatten)]
    input: FamilyInput,
    /// Top-set size, required for lintop.
    #[arg(long)]
    k: Option<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default, ValueEnum)]
enum Format {
    #[default]
    Json,
    Csv,
}

#[derive(Args, Debug)]
struct ReportArgs {
    #[arg(long)]
    n: usize,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct RectBoundArgs {
    #[command(flatten)]
    report: ReportArgs,
    /// Partitions to draw in sampled mode (n = 6, needs --seed).
    #[arg(long, default_value_t = 64)]
    samples: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum FloorArg {
    Edges,
    Vertices,
}

#[derive(Args, Debug)]
struct Lemma1Args {
    #[command(flatten)]
    report: ReportArgs,
    /// Minimum colour class: a third of the edges or a third of the vertices.
    #[arg(long, value_enum, default_value_t = FloorArg::Edges)]
    floor: FloorArg,
    /// Include one row per admissible colouring in JSON output.
    #[arg(long)]
    rows: bool,
}

#[derive(Args, Debug)]
struct SizeArgs {
    #[arg(long, value_enum, default_value_t = Family::Lin)]
    family: Family,
    #[arg(long, default_value_t = 1)]
    n_min: usize,
    #[arg(long, default_value_t = 10)]
    n_max: usize,
    #[arg(long, default_value_t = 2)]
    k_min: usize,
    #[arg(long, default_value_t = 2)]
    k_max: usize,
    #[arg(long)]
    out: Option<PathBuf>,
}

/// The run parameters echoed in every report header. Output paths and the
/// worker count are left out since they never change what is written.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct RunConfig {
    pub command: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k: Option<usize>,
    #[serde(skip)]
    pub out: Option<PathBuf>,
    pub guard_bits: u32,
    #[serde(skip)]
    pub workers: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
}

#[derive(Serialize)]
struct Provenance<'a> {
    tool: &'static str,
    version: &'static str,
    command: &'a str,
    config: &'a RunConfig,
    guard_bits: u32,
}

#[derive(Serialize)]
struct Report<'a, T: Serialize> {
    provenance: Provenance<'a>,
    report: T,
}

/// Errors that map to exit code 2.
#[derive(Debug)]
struct UsageError(String);

impl fmt::Display for UsageError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for UsageError {}

/// Errors that map to exit code 1.
#[derive(Debug)]
struct VerificationFailed(String);

impl fmt::Display for VerificationFailed {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for VerificationFailed {}

fn usage(msg: impl Into<String>) -> anyhow::Error {
    UsageError(msg.into()).into()
}

fn exit_code(e: &anyhow::Error) -> i32 {
    use orderdnnf::Error as E;
    if e.downcast_ref::<UsageError>().is_some() {
        return 2;
    }
    if e.downcast_ref::<VerificationFailed>().is_some() {
        return 1;
    }
    match e.downcast_ref::<E>() {
        Some(
            E::InvalidArgument(_)
            | E::GuardExceeded { .. }
            | E::TooManyVariables(_)
            | E::SizeGuard { .. },
        ) => 2,
        _ => 1,
    }
}

/// Parses `argv` (program name first), runs the command and returns the
/// process exit code: 0 on success, 1 on failed verification, 2 on usage
/// errors. Diagnostics go to stderr.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match execute(cli) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e:#}");
            exit_code(&e)
        }
    }
}

fn execute(cli: Cli) -> Result<()> {
    let guard = SweepGuard::new(cli.guard).map_err(|e| usage(e.to_string()))?;
    let workers = cli.workers;
    if workers == Some(0) {
        return Err(usage("--workers must be at least 1"));
    }
    let mut cfg = RunConfig {
        command: command_name(&cli.command).to_string(),
        guard_bits: guard.max_bits(),
        workers,
        seed: cli.seed,
        ..RunConfig::default()
    };
    let sampled = matches!(&cli.command, Command::RectBound(a) if a.report.n == 6);
    if cli.seed.is_some() && !sampled {
        return Err(usage(format!(
            "--seed only applies to sampled modes; `{}` here is exhaustive",
            cfg.command
        )));
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers.unwrap_or(0))
        .build()
        .context("starting worker pool")?;
    pool.install(|| dispatch(cli.command, &mut cfg, guard))
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::BuildLin(_) => "build-lin",
        Command::BuildLintop(_) => "build-lintop",
        Command::EncodeCnf(_) => "encode-cnf",
        Command::Check(_) => "check",
        Command::Count(_) => "count",
        Command::Enumerate(_) => "enumerate",
        Command::Verify(_) => "verify",
        Command::ExportDot(_) => "export-dot",
        Command::RectBound(_) => "rect-bound",
        Command::Lemma1(_) => "lemma1",
        Command::Lemma2(_) => "lemma2",
        Command::SizeReport(_) => "size-report",
    }
}

fn dispatch(command: Command, cfg: &mut RunConfig, guard: SweepGuard) -> Result<()> {
    match command {
        Command::BuildLin(a) => {
            cfg.n = Some(a.base.n);
            let built = build_lin_circuit(a.base.n).map_err(|e| usage(e.to_string()))?;
            emit(a.base.out.as_deref(), &export_nnf(&built.circuit))?;
            summarize(&built);
            if a.verify {
                let truth = mod_lin(a.base.n, guard)?;
                compare(&built.circuit, &truth, &built.pairs, guard)?;
            }
            Ok(())
        }
        Command::BuildLintop(a) => {
            cfg.n = Some(a.base.n);
            cfg.k = Some(a.k);
            let built = build_lintop_circuit(a.base.n, a.k).map_err(|e| usage(e.to_string()))?;
            emit(a.base.out.as_deref(), &export_nnf(&built.circuit))?;
            summarize(&built);
            if a.verify {
                guard.check(built.pairs.len())?;
                let truth = mod_lintop(a.base.n, a.k)?;
                compare(&built.circuit, &truth, &built.pairs, guard)?;
            }
            Ok(())
        }
        Command::EncodeCnf(a) => {
            if a.n == 0 {
                return Err(usage("lin_n needs n ≥ 1"));
            }
            let pairs = PairVarMap::unordered(a.n);
            emit(a.out.as_deref(), &encode_lin_cnf(a.n).to_dimacs(&pairs))
        }
        Command::Check(a) => check(a, cfg, guard),
        Command::Count(a) => {
            let c = load(&a.input)?;
            let dec = check_decomposable(&c);
            if let Some(v) = dec.violations.first() {
                return Err(VerificationFailed(format!(
                    "not decomposable: AND node {} shares variables {:?} between children {} and {}",
                    v.node,
                    one_based(&v.shared),
                    v.left,
                    v.right
                ))
                .into());
            }
            let count = if a.verified {
                count_models_verified(&c, guard).map_err(|e| match e {
                    orderdnnf::Error::InvalidCircuit(m) => VerificationFailed(m).into(),
                    other => anyhow::Error::from(other),
                })?
            } else {
                count_models(&c)?
            };
            emit(a.out.as_deref(), &format!("{count}\n"))
        }
        Command::Enumerate(a) => {
            let c = load(&a.input)?;
            let pairs = PairVarMap::from_var_count(c.var_count(), a.family.mode())
                .map_err(|e| usage(e.to_string()))?;
            let set = ModelSet::new(c.var_count(), enumerate_words(&c)?)?;
            emit(a.out.as_deref(), &set.to_text(&pairs)?)
        }
        Command::Verify(a) => {
            let c = load(&a.input.input)?;
            let pairs = PairVarMap::from_var_count(c.var_count(), a.input.family.mode())
                .map_err(|e| usage(e.to_string()))?;
            cfg.n = Some(pairs.n());
            let truth = match a.input.family {
                Family::Lin => {
                    if a.k.is_some() {
                        return Err(usage("--k only applies to lintop"));
                    }
                    mod_lin(pairs.n(), guard)?
                }
                Family::Lintop => {
                    let k = a.k.ok_or_else(|| usage("lintop verification needs --k"))?;
                    if k == 0 || k >= pairs.n() {
                        return Err(usage(format!("need 1 ≤ k < n = {}", pairs.n())));
                    }
                    guard.check(pairs.len())?;
                    mod_lintop(pairs.n(), k)?
                }
            };
            compare(&c, &truth, &pairs, guard)?;
            emit(a.input.out.as_deref(), "equivalent\n")
        }
        Command::ExportDot(a) => {
            let c = load(&a.input)?;
            let pairs = PairVarMap::from_var_count(c.var_count(), a.family.mode())
                .map_err(|e| usage(e.to_string()))?;
            emit(a.out.as_deref(), &export_dot(&c, |v| pairs.label(v)))
        }
        Command::RectBound(a) => rect_bound(a, cfg, guard),
        Command::Lemma1(a) => lemma1(a, cfg, guard),
        Command::Lemma2(a) => {
            cfg.n = Some(a.n);
            let r = lemma2_experiment(a.n, guard)?;
            match a.format {
                Format::Json => emit(a.out.as_deref(), &json_report(cfg, &r)?),
                Format::Csv => {
                    let head = [
                        format!("models {}", r.models),
                        format!("constant c = 1/{}", r.constant_denominator),
                        format!("nominal bound n!/2^(cn) = {:.6}", r.nominal_bound),
                        format!("partitions {}", r.partitions),
                        format!("k range {}..={}", r.min_k, r.max_k),
                        format!("all hold {}", r.all_hold),
                    ];
                    #[derive(Serialize)]
                    struct Row {
                        x1: String,
                        x1_len: usize,
                        red_minority: usize,
                        green_minority: usize,
                        minority: orderdnnf::rectangles::Color,
                        k: usize,
                        blocks: u64,
                        block_size: Option<u64>,
                        blocks_disjoint: bool,
                        block_sum: u64,
                        max_rectangle: usize,
                        holds: bool,
                    }
                    let rows = r.rows.iter().map(|row| Row {
                        x1: format!("{:x}", row.x1),
                        x1_len: row.x1_len,
                        red_minority: row.red_minority,
                        green_minority: row.green_minority,
                        minority: row.minority,
                        k: row.k,
                        blocks: row.blocks,
                        block_size: row.block_size,
                        blocks_disjoint: row.blocks_disjoint,
                        block_sum: row.block_sum,
                        max_rectangle: row.max_rectangle,
                        holds: row.holds,
                    });
                    emit(a.out.as_deref(), &csv_report(cfg, &head, rows)?)
                }
            }
        }
        Command::SizeReport(a) => {
            if a.n_min < 1 {
                return Err(usage("--n-min must be at least 1"));
            }
            let csv = size_scaling_report(a.family, a.n_min..=a.n_max, a.k_min..=a.k_max)?;
            emit(a.out.as_deref(), &format!("{}{csv}", provenance_lines(cfg)))
        }
    }
}

fn one_based(vars: &[u32]) -> Vec<u32> {
    vars.iter().map(|v| v + 1).collect()
}

fn summarize(built: &OrderCircuit) {
    let s = built.circuit.size();
    eprintln!(
        "nodes {} edges {} vars {} subset gates {} choice gates {}",
        s.node_count,
        s.edge_count,
        built.circuit.var_count(),
        built.gates.subset_gates,
        built.gates.choice_gates
    );
}

fn load(path: &Path) -> Result<Circuit> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    import_nnf(&text).with_context(|| format!("parsing {}", path.display()))
}

fn emit(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(path) => fs::write(path, text).with_context(|| format!("writing {}", path.display())),
        None => io::stdout()
            .write_all(text.as_bytes())
            .context("writing stdout"),
    }
}

/// Sweeps `c` against `truth`; on disagreement prints the first
/// counterexamples and fails with exit code 1.
fn compare(c: &Circuit, truth: &ModelSet, pairs: &PairVarMap, guard: SweepGuard) -> Result<()> {
    let report = truth_table_equiv(c, truth, guard)?;
    if report.is_equivalent() {
        eprintln!(
            "verified: {} assignments agree with the oracle",
            1u64 << c.var_count()
        );
        return Ok(());
    }
    for ce in &report.counterexamples {
        let assignment: Vec<String> = (0..c.var_count() as u32)
            .map(|v| format!("{}={}", pairs.label(v), ce.word >> v & 1))
            .collect();
        eprintln!(
            "counterexample {:#x}: circuit {} oracle {} [{}]",
            ce.word,
            u8::from(ce.left),
            u8::from(ce.right),
            assignment.join(" ")
        );
    }
    Err(VerificationFailed(format!(
        "{} assignment(s) disagree with the oracle",
        report.disagreements
    ))
    .into())
}

fn check(a: CheckArgs, cfg: &RunConfig, guard: SweepGuard) -> Result<()> {
    let c = load(&a.input)?;
    let dec = check_decomposable(&c);
    let det = if a.no_determinism {
        None
    } else {
        Some(check_deterministic(&c, guard)?)
    };

    #[derive(Serialize)]
    struct OrSite {
        node: u32,
        left: u32,
        right: u32,
        witness: String,
    }
    #[derive(Serialize)]
    struct CheckReport<'a> {
        size: orderdnnf::SizeReport,
        decomposability: &'a orderdnnf::circuit::DecomposabilityReport,
        determinism_checked: bool,
        or_nodes_checked: usize,
        determinism: Vec<OrSite>,
    }
    let sites = det
        .as_ref()
        .map(|d| {
            d.violations
                .iter()
                .map(|v| OrSite {
                    node: v.node.0,
                    left: v.left.0,
                    right: v.right.0,
                    witness: v.witness.to_string(),
                })
                .collect()
        })
        .unwrap_or_default();
    let report = CheckReport {
        size: c.size(),
        decomposability: &dec,
        determinism_checked: det.is_some(),
        or_nodes_checked: det.as_ref().map_or(0, |d| d.or_nodes_checked),
        determinism: sites,
    };
    emit(a.out.as_deref(), &json_report(cfg, &report)?)?;
    if let Some(v) = dec.violations.first() {
        return Err(VerificationFailed(format!(
            "{} decomposability violation(s); first at AND node {} (children {} and {} share {:?})",
            dec.violations.len(),
            v.node,
            v.left,
            v.right,
            one_based(&v.shared)
        ))
        .into());
    }
    if let Some(v) = det.as_ref().and_then(|d| d.violations.first()) {
        return Err(VerificationFailed(format!(
            "determinism violation at OR node {}: children {} and {} both hold under {}",
            v.node, v.left, v.right, v.witness
        ))
        .into());
    }
    Ok(())
}

fn rect_bound(a: RectBoundArgs, cfg: &mut RunConfig, guard: SweepGuard) -> Result<()> {
    let n = a.report.n;
    cfg.n = Some(n);
    let mode = match (n, cfg.seed) {
        (6, Some(seed)) => BoundMode::Sampled {
            seed,
            samples: a.samples,
        },
        (6, None) => return Err(usage("n = 6 runs in sampled mode and needs --seed")),
        _ => BoundMode::Exhaustive,
    };
    let bound = lower_bound_from_covers(n, mode, guard)?;
    // The extracted cover of the lin_n circuit must be at least the bound.
    let cover: Option<ExtractionSummary> = if bound.certified {
        let c = build_lin_circuit(n)?.circuit;
        Some(extract_rectangle_cover(&c, guard)?.summary())
    } else {
        None
    };

    #[derive(Serialize)]
    struct RectReport<'a> {
        #[serde(flatten)]
        bound: &'a orderdnnf::rectangles::BoundReport,
        extracted_cover: Option<ExtractionSummary>,
    }
    match a.report.format {
        Format::Json => emit(
            a.report.out.as_deref(),
            &json_report(
                cfg,
                &RectReport {
                    bound: &bound,
                    extracted_cover: cover,
                },
            )?,
        )?,
        Format::Csv => {
            let mut head = vec![
                format!("models {}", bound.models),
                format!("partitions {}", bound.partitions),
                format!("sampled {}", bound.sampled),
                format!("r_max {}", bound.r_max),
                format!("bound {}", bound.bound),
            ];
            if let Some(c) = cover {
                head.push(format!("extracted cover {} rectangles", c.rectangles));
            }
            #[derive(Serialize)]
            struct Row {
                x1: String,
                x1_len: usize,
                x2_len: usize,
                r1: usize,
                r2: usize,
                max_rectangle: usize,
            }
            let rows = bound.rows.iter().map(|r| Row {
                x1: format!("{:x}", r.x1),
                x1_len: r.x1_len,
                x2_len: r.x2_len,
                r1: r.r1,
                r2: r.r2,
                max_rectangle: r.max_rectangle,
            });
            emit(a.report.out.as_deref(), &csv_report(cfg, &head, rows)?)?
        }
    }
    if let Some(c) = cover {
        if (c.rectangles as u64) < bound.bound {
            return Err(VerificationFailed(format!(
                "extracted cover has {} rectangles, below the bound {}",
                c.rectangles, bound.bound
            ))
            .into());
        }
    }
    Ok(())
}

fn lemma1(a: Lemma1Args, cfg: &mut RunConfig, guard: SweepGuard) -> Result<()> {
    cfg.n = Some(a.report.n);
    let floor = match a.floor {
        FloorArg::Edges => BalanceFloor::ThirdOfEdges,
        FloorArg::Vertices => BalanceFloor::ThirdOfVertices,
    };
    let csv = a.report.format == Format::Csv;
    let r = lemma1_experiment(a.report.n, floor, guard, a.rows || csv)?;
    if csv {
        let mut head = vec![
            format!("colorings {}", r.colorings),
            format!("floor {} per colour", r.floor_value),
            format!("admissible {}", r.admissible),
            format!(
                "admissible with |E|/3 floor {}",
                r.admissible_third_of_edges
            ),
            format!(
                "admissible with n/3 floor {}",
                r.admissible_third_of_vertices
            ),
            format!("min h {} max h {}", r.min_h, r.max_h),
            format!("empirical constant {:.6}", r.empirical_constant),
            format!("without bichromatic vertex {}", r.without_bichromatic),
        ];
        for t in &r.threshold_scan {
            head.push(format!(
                "threshold {} min vertices {}",
                t.threshold, t.min_vertices
            ));
        }
        head.push(r.note.clone());
        #[derive(Serialize)]
        struct Row {
            red_mask: String,
            red: usize,
            green: usize,
            h: usize,
            bichromatic: usize,
        }
        let rows = r.rows.iter().map(|row| Row {
            red_mask: format!("{:x}", row.red_mask),
            red: row.red,
            green: row.green,
            h: row.h,
            bichromatic: row.bichromatic,
        });
        emit(a.report.out.as_deref(), &csv_report(cfg, &head, rows)?)
    } else {
        emit(a.report.out.as_deref(), &json_report(cfg, &r)?)
    }
}

fn provenance(cfg: &RunConfig) -> Provenance<'_> {
    Provenance {
        tool: TOOL,
        version: VERSION,
        command: &cfg.command,
        config: cfg,
        guard_bits: cfg.guard_bits,
    }
}

fn json_report<T: Serialize>(cfg: &RunConfig, report: &T) -> Result<String> {
    let mut text = serde_json::to_string_pretty(&Report {
        provenance: provenance(cfg),
        report,
    })?;
    text.push('\n');
    Ok(text)
}

fn provenance_lines(cfg: &RunConfig) -> String {
    let config = serde_json::to_string(cfg).expect("config serializes");
    format!(
        "# tool {TOOL} {VERSION}\n# command {}\n# config {config}\n# guard_bits {}\n",
        cfg.command, cfg.guard_bits
    )
}

fn csv_report<R: Serialize>(
    cfg: &RunConfig,
    head: &[String],
    rows: impl Iterator<Item = R>,
) -> Result<String> {
    let mut out = provenance_lines(cfg);
    for line in head {
        out.push_str(&format!("# {line}\n"));
    }
    let mut w = csv::Writer::from_writer(Vec::new());
    for row in rows {
        w.serialize(row)?;
    }
    out.push_str(std::str::from_utf8(
        &w.into_inner().map_err(|e| anyhow!("{e}"))?,
    )?);
    Ok(out)
}

const SIZE_HEADER: &str =
    "family,n,k,node_count,edge_count,subset_gates,choice_gates,node_ratio,loglog_slope\n";

fn binomial(n: usize, k: usize) -> u64 {
    (0..k as u64).fold(1, |acc, i| acc * (n as u64 - i) / (i + 1))
}

/// Gates the lintop construction creates before hash-consing.
fn lintop_gate_count(n: usize, k: usize) -> u64 {
    let subsets: u64 = (0..=k).map(|s| binomial(n, s)).sum();
    let choices: u64 = (0..k).map(|s| binomial(n, s) * (n - s) as u64).sum();
    subsets + choices
}

/// CSV of circuit sizes for `lin_n` over `n_range`, or for `lintop_{n,k}`
/// over both ranges (pairs with `n ≤ k` are skipped).
///
/// `node_ratio` is the node count over that of the previous `n` in the same
/// series. For lintop `loglog_slope` is the slope of `log(choice_gates)`
/// against `log n` between consecutive `n`. Sizes beyond the build limits
/// are not built; a `# warning` line says where the series was cut.
pub fn size_scaling_report(
    family: Family,
    n_range: std::ops::RangeInclusive<usize>,
    k_range: std::ops::RangeInclusive<usize>,
) -> Result<String> {
    let mut out = String::from(SIZE_HEADER);
    let ratio = |cur: usize, prev: Option<usize>| {
        prev.map_or(String::new(), |p| format!("{:.6}", cur as f64 / p as f64))
    };
    match family {
        Family::Lin => {
            let mut prev = None;
            for n in n_range.clone() {
                if n > LIN_SIZE_LIMIT {
                    out.push_str(&format!(
                        "# warning: lin truncated at n = {LIN_SIZE_LIMIT}; n = {n}..={} not built\n",
                        n_range.end()
                    ));
                    break;
                }
                let built = build_lin_circuit(n)?;
                let s = built.circuit.size();
                out.push_str(&format!(
                    "lin,{n},,{},{},{},{},{},\n",
                    s.node_count,
                    s.edge_count,
                    built.gates.subset_gates,
                    built.gates.choice_gates,
                    ratio(s.node_count, prev)
                ));
                prev = Some(s.node_count);
            }
        }
        Family::Lintop => {
            for k in k_range {
                if k == 0 {
                    continue;
                }
                let mut prev: Option<(usize, usize, u64)> = None;
                for n in n_range.clone().filter(|&n| n > k) {
                    let gates = lintop_gate_count(n, k);
                    if gates > LINTOP_GATE_LIMIT || n > 64 {
                        out.push_str(&format!(
                            "# warning: lintop k = {k} truncated before n = {n} ({gates} gates exceed {LINTOP_GATE_LIMIT})\n"
                        ));
                        break;
                    }
                    let built = build_lintop_circuit(n, k)?;
                    let s = built.circuit.size();
                    let slope = prev.map_or(String::new(), |(pn, _, pc)| {
                        let num = (built.gates.choice_gates as f64).ln() - (pc as f64).ln();
                        format!("{:.6}", num / ((n as f64).ln() - (pn as f64).ln()))
                    });
                    out.push_str(&format!(
                        "lintop,{n},{k},{},{},{},{},{},{slope}\n",
                        s.node_count,
                        s.edge_count,
                        built.gates.subset_gates,
                        built.gates.choice_gates,
                        ratio(s.node_count, prev.map(|p| p.1)),
                    ));
                    prev = Some((n, s.node_count, built.gates.choice_gates));
                }
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_range_is_header_only() {
        #[allow(clippy::reversed_empty_ranges)]
        let csv = size_scaling_report(Family::Lin, 5..=4, 2..=2).unwrap();
        assert_eq!(csv, SIZE_HEADER);
    }

    #[test]
    fn lin_rows() {
        let csv = size_scaling_report(Family::Lin, 1..=3, 2..=2).unwrap();
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines.len(), 4);
        assert!(lines[3].starts_with("lin,3,,22,32,8,12,"));
    }

    #[test]
    fn lin_truncates_with_warning() {
        let text = size_scaling_report(Family::Lin, 19..=20, 2..=2).unwrap();
        assert!(text.lines().nth(1).unwrap().starts_with("# warning"));
    }

    #[test]
    fn lintop_gate_formula() {
        assert_eq!(lintop_gate_count(4, 2), 1 + 4 + 6 + 4 + 4 * 3);
    }

    #[test]
    fn exit_codes() {
        assert_eq!(exit_code(&usage("x")), 2);
        assert_eq!(exit_code(&VerificationFailed("x".into()).into()), 1);
        assert_eq!(
            exit_code(
                &orderdnnf::Error::GuardExceeded {
                    bits: 30,
                    limit: 22
                }
                .into()
            ),
            2
        );
    }
}
