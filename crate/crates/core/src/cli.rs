//! The `cga` command line.
//!
//! | exit | meaning |
//! |------|---------|
//! | 0 | success (for `verify`: the set is a cluster) |
//! | 1 | `verify`: the set is not a cluster |
//! | 2 | usage error or invalid parameters |
//! | 3 | I/O failure |
//! | 4 | work budget refusal |
//!
//! Apart from `generate`, whose edge-list header already records every
//! parameter, each command starts its output with `# key=value` lines for
//! its resolved settings.

use std::ffi::OsString;
use std::fs::File;
use std::io::{self, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};

use crate::bounds::{self, LogValue};
use crate::cluster::{event_report, ClusterSpec, EdgeMode, Witness};
use crate::error::{CgaError, Result};
use crate::experiments::{self, ExperimentConfig};
use crate::generator::sample_graph;
use crate::graph::Graph;
use crate::search::{enumerate_clusters, enumerate_complete_clusters, ClusterList, DEFAULT_WORK_BUDGET};
use crate::tree::{TreeParams, VertexSet};

pub const EXIT_OK: i32 = 0;
pub const EXIT_NOT_CLUSTER: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_IO: i32 = 3;
pub const EXIT_BUDGET: i32 = 4;

/// Overrides the oracle work budget when `--budget` is absent.
pub const BUDGET_ENV: &str = "CGA_WORK_BUDGET";

#[derive(Parser, Debug)]
#[command(name = "cga", version, about = "Community Guided Attachment graphs and (alpha, beta)-clusters")]
struct Cli {
    /// Worker threads; output does not depend on this.
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Sample a graph and write its edge list.
    Generate(GenerateArgs),
    /// Check whether a vertex set is an (alpha, beta)-cluster.
    Verify(VerifyArgs),
    /// List complete clusters of one height.
    Enumerate(EnumerateArgs),
    /// List every cluster up to a size by brute force.
    Oracle(OracleArgs),
    /// Evaluate the analytic thresholds and tail bounds.
    Bounds(BoundsArgs),
    /// Run a Monte Carlo experiment from a key=value config file.
    #[command(subcommand)]
    Experiment(ExperimentCommand),
}

#[derive(Args, Debug)]
struct GenerateArgs {
    #[arg(long)]
    b: usize,
    #[arg(long)]
    height: u32,
    #[arg(long)]
    c: f64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    directed: bool,
    /// Output path; standard output when absent.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct SpecArgs {
    #[arg(long)]
    graph: PathBuf,
    #[arg(long)]
    alpha: String,
    #[arg(long)]
    beta: String,
    /// `undirected` or `directed-out`; defaults to the graph's kind.
    #[arg(long)]
    mode: Option<EdgeMode>,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    #[command(flatten)]
    spec: SpecArgs,
    /// Comma-separated vertex list.
    #[arg(long)]
    set: String,
    /// Also split external sparseness into E1/E2/E3 at this height.
    #[arg(long)]
    hstar: Option<u32>,
}

#[derive(Args, Debug)]
struct EnumerateArgs {
    #[command(flatten)]
    spec: SpecArgs,
    #[arg(long)]
    height: u32,
}

#[derive(Args, Debug)]
struct OracleArgs {
    #[command(flatten)]
    spec: SpecArgs,
    #[arg(long)]
    max_size: usize,
    /// Elementary-check budget; falls back to $CGA_WORK_BUDGET.
    #[arg(long)]
    budget: Option<u128>,
}

#[derive(Args, Debug)]
struct BoundsArgs {
    #[arg(long)]
    b: usize,
    #[arg(long)]
    c: f64,
    #[arg(long)]
    alpha: f64,
    /// Tree height `H`, for the n-dependent quantities.
    #[arg(long)]
    height: Option<u32>,
    /// Defaults to min(0.1, ln c / (8 ln b)).
    #[arg(long)]
    epsilon: Option<f64>,
    /// Complete-set height for the clique and X_S quantities.
    #[arg(long)]
    h: Option<u32>,
    /// Set size for the cluster-count and sparse-set quantities.
    #[arg(long)]
    m: Option<u64>,
    /// Family size capping the cluster-count guarantee; defaults to n.
    #[arg(long)]
    family_size: Option<u64>,
    #[arg(long, requires = "tail_p")]
    tail_n: Option<u64>,
    #[arg(long, requires = "tail_n")]
    tail_p: Option<f64>,
    /// Multiplier for `Pr(X >= t p n)`.
    #[arg(long, requires = "tail_n")]
    tail_t: Option<f64>,
    /// Threshold for the simplified tail bound.
    #[arg(long, requires = "tail_n")]
    tail_s: Option<f64>,
    #[arg(long, requires = "janson_t")]
    janson_mu: Option<f64>,
    #[arg(long, requires = "janson_mu")]
    janson_t: Option<f64>,
}

#[derive(Args, Debug)]
struct ExperimentArgs {
    #[arg(long)]
    config: PathBuf,
    /// CSV destination; standard output when absent.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum ExperimentCommand {
    /// Complete-set tallies per trial and height.
    Sweep(ExperimentArgs),
    /// D/E1/E2/E3 frequencies for the configured set template.
    Events(ExperimentArgs),
    /// Frequency of externally sparse sets below m*.
    Trend(ExperimentArgs),
    /// Internal edge counts of complete sets, per configured height.
    Xs(ExperimentArgs),
}

/// Runs the command line against the process environment and returns the
/// exit code.
pub fn main() -> i32 {
    let stdout = io::stdout();
    let stderr = io::stderr();
    run(std::env::args_os(), &mut stdout.lock(), &mut stderr.lock())
}

pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() { err.write_all(text.as_bytes()) } else { out.write_all(text.as_bytes()) };
            return code;
        }
    };
    // Buffered so the command can run inside a worker pool.
    let mut buf = Vec::new();
    let outcome = match cli.threads {
        Some(0) => Err(CgaError::domain("--threads must be at least 1")),
        Some(t) => match rayon::ThreadPoolBuilder::new().num_threads(t).build() {
            Ok(pool) => pool.install(|| dispatch(cli.command, &mut buf)),
            Err(e) => Err(CgaError::domain(format!("thread pool: {e}"))),
        },
        None => dispatch(cli.command, &mut buf),
    };
    let written = out.write_all(&buf).and_then(|_| out.flush());
    match outcome.and_then(|code| written.map(|_| code).map_err(CgaError::from)) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "cga: {e}");
            exit_code(&e)
        }
    }
}

pub fn exit_code(e: &CgaError) -> i32 {
    match e {
        CgaError::Domain(_) | CgaError::Parse { .. } => EXIT_USAGE,
        CgaError::Io(_) => EXIT_IO,
        CgaError::Budget { .. } => EXIT_BUDGET,
    }
}

fn dispatch(cmd: Command, out: &mut dyn Write) -> Result<i32> {
    match cmd {
        Command::Generate(a) => cmd_generate(a, out),
        Command::Verify(a) => cmd_verify(a, out),
        Command::Enumerate(a) => cmd_enumerate(a, out),
        Command::Oracle(a) => cmd_oracle(a, out),
        Command::Bounds(a) => cmd_bounds(a, out),
        Command::Experiment(e) => cmd_experiment(e, out),
    }
}

fn with_output<F>(path: Option<&Path>, out: &mut dyn Write, f: F) -> Result<()>
where
    F: FnOnce(&mut dyn Write) -> io::Result<()>,
{
    match path {
        Some(path) => {
            let mut w = BufWriter::new(File::create(path)?);
            f(&mut w)?;
            w.flush()?;
        }
        None => f(out)?,
    }
    Ok(())
}

fn cmd_generate(a: GenerateArgs, out: &mut dyn Write) -> Result<i32> {
    let p = TreeParams::new(a.b, a.height, a.c)?;
    let g = sample_graph(&p, a.seed, a.directed)?;
    with_output(a.out.as_deref(), out, |w| g.write_edge_list(w))?;
    Ok(EXIT_OK)
}

struct Loaded {
    graph: Graph,
    spec: ClusterSpec,
}

fn load(a: &SpecArgs, out: &mut dyn Write) -> Result<Loaded> {
    let graph = Graph::read_edge_list(BufReader::new(File::open(&a.graph)?))?;
    let mode = a.mode.unwrap_or_else(|| EdgeMode::for_graph(&graph));
    let spec = ClusterSpec::parse(&a.alpha, &a.beta, mode)?;
    writeln!(out, "# graph={}", a.graph.display())?;
    writeln!(out, "{}", graph.header_line())?;
    writeln!(out, "# alpha={}", spec.alpha())?;
    writeln!(out, "# beta={}", spec.beta())?;
    writeln!(out, "# mode={mode}")?;
    Ok(Loaded { graph, spec })
}

fn parse_set(text: &str, p: &TreeParams) -> Result<VertexSet> {
    let members = text
        .split(',')
        .map(|s| {
            let s = s.trim();
            s.parse::<usize>()
                .map_err(|_| CgaError::domain(format!("invalid vertex {s:?} in --set")))
        })
        .collect::<Result<Vec<_>>>()?;
    for &v in &members {
        p.check_leaf(v)?;
    }
    VertexSet::new(members, p)
}

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn witness_line(out: &mut dyn Write, name: &str, w: Option<Witness>) -> io::Result<()> {
    match w {
        Some(w) => writeln!(out, "{name}_witness=vertex {} with {} edges into the set", w.vertex, w.edges),
        None => Ok(()),
    }
}

fn cmd_verify(a: VerifyArgs, out: &mut dyn Write) -> Result<i32> {
    let Loaded { graph, spec } = load(&a.spec, out)?;
    let p = graph.params();
    let m = parse_set(&a.set, p)?;
    let members: Vec<String> = m.members().iter().map(|v| v.to_string()).collect();
    writeln!(out, "# set={}", members.join(","))?;
    writeln!(out, "# hstar={}", a.hstar.map_or_else(|| "none".into(), |h| h.to_string()))?;
    // Without --hstar all external vertices fall in E1 or E2 at h* = H.
    let r = event_report(&m, &graph, &spec, a.hstar.unwrap_or(p.height()))?;
    writeln!(out, "size={}", m.len())?;
    writeln!(out, "height={}", m.height())?;
    writeln!(out, "dense={}", yes(r.dense))?;
    witness_line(out, "dense", r.dense_witness)?;
    writeln!(out, "sparse={}", yes(r.is_externally_sparse()))?;
    if a.hstar.is_some() {
        writeln!(out, "e1={}", yes(r.e1))?;
        witness_line(out, "e1", r.e1_witness)?;
        writeln!(out, "e2={}", yes(r.e2))?;
        witness_line(out, "e2", r.e2_witness)?;
        writeln!(out, "e3={}", yes(r.e3))?;
        witness_line(out, "e3", r.e3_witness)?;
    } else {
        let first = [r.e1_witness, r.e2_witness, r.e3_witness]
            .into_iter()
            .flatten()
            .min_by_key(|w| w.vertex);
        witness_line(out, "sparse", first)?;
    }
    writeln!(out, "cluster={}", yes(r.is_cluster()))?;
    Ok(if r.is_cluster() { EXIT_OK } else { EXIT_NOT_CLUSTER })
}

fn print_clusters(list: &ClusterList, out: &mut dyn Write) -> io::Result<()> {
    writeln!(out, "count={}", list.len())?;
    for c in &list.clusters {
        let members: Vec<String> = c.set.members().iter().map(|v| v.to_string()).collect();
        writeln!(out, "{}", members.join(","))?;
    }
    Ok(())
}

fn cmd_enumerate(a: EnumerateArgs, out: &mut dyn Write) -> Result<i32> {
    let Loaded { graph, spec } = load(&a.spec, out)?;
    writeln!(out, "# height={}", a.height)?;
    let list = enumerate_complete_clusters(&graph, &spec, a.height)?;
    print_clusters(&list, out)?;
    Ok(EXIT_OK)
}

fn resolve_budget(flag: Option<u128>) -> Result<u128> {
    if let Some(b) = flag {
        return Ok(b);
    }
    match std::env::var(BUDGET_ENV) {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| CgaError::domain(format!("{BUDGET_ENV}={v:?} is not an integer"))),
        Err(_) => Ok(DEFAULT_WORK_BUDGET),
    }
}

fn cmd_oracle(a: OracleArgs, out: &mut dyn Write) -> Result<i32> {
    let budget = resolve_budget(a.budget)?;
    let Loaded { graph, spec } = load(&a.spec, out)?;
    writeln!(out, "# max_size={}", a.max_size)?;
    writeln!(out, "# budget={budget}")?;
    let list = enumerate_clusters(&graph, &spec, a.max_size, budget)?;
    print_clusters(&list, out)?;
    Ok(EXIT_OK)
}

fn log_line(out: &mut dyn Write, key: &str, v: LogValue) -> io::Result<()> {
    writeln!(out, "{key}={:?}", v.value)?;
    writeln!(out, "{key}_ln={:?}", v.ln)
}

fn cmd_bounds(a: BoundsArgs, out: &mut dyn Write) -> Result<i32> {
    let epsilon = a
        .epsilon
        .unwrap_or_else(|| (a.c.ln() / (8.0 * (a.b as f64).ln())).min(0.1));
    let ms = bounds::m_star(a.alpha, a.b, a.c)?;
    let (h_min, gamma) = bounds::gamma(a.alpha, a.b, a.c)?;
    writeln!(out, "# b={}", a.b)?;
    writeln!(out, "# c={}", a.c)?;
    writeln!(out, "# alpha={}", a.alpha)?;
    writeln!(out, "# epsilon={epsilon}")?;
    for (k, v) in [("height", a.height.map(u64::from)), ("h", a.h.map(u64::from)), ("m", a.m)] {
        if let Some(v) = v {
            writeln!(out, "# {k}={v}")?;
        }
    }
    writeln!(out, "m_star={ms:?}")?;
    writeln!(out, "h_min={h_min}")?;
    writeln!(out, "gamma={gamma:?}")?;
    if let Some(m) = a.m {
        writeln!(out, "cluster_count_exponent={:?}", bounds::cluster_count_exponent(m as f64, a.alpha, a.b, a.c)?)?;
        if m as f64 > ms {
            writeln!(out, "h_prime_threshold={:?}", bounds::h_prime_threshold(m as f64, a.alpha, a.b, a.c)?)?;
        }
    }
    if let Some(height) = a.height {
        let p = TreeParams::new(a.b, height, a.c)?;
        writeln!(out, "n={}", p.n())?;
        writeln!(out, "ln_n={:?}", bounds::ln_n(&p))?;
        if p.n() >= 3 {
            let t = bounds::threshold_heights(&p, epsilon)?;
            writeln!(out, "h_star={:?}", t.h_star)?;
            writeln!(out, "h_epsilon={:?}", t.h_epsilon)?;
            writeln!(out, "tall_height={:?}", t.tall_height)?;
        }
        if let Some(h) = a.h {
            log_line(out, "clique_count_lower_bound", bounds::clique_count_lower_bound(h, &p)?)?;
            let exact = bounds::exact_clique_probability(h, &p)?;
            log_line(out, "exact_clique_probability", exact)?;
            writeln!(out, "expected_cliques={:?}", exact.value * p.block_count(h) as f64)?;
            if h >= 1 {
                writeln!(out, "expected_internal_edges={:?}", bounds::expected_internal_edges(h, &p)?)?;
            }
        }
        if let Some(m) = a.m {
            log_line(out, "sparse_set_bound", bounds::sparse_set_bound(m, a.alpha, &p)?)?;
            if m as f64 > ms {
                let family = a.family_size.unwrap_or(p.n() as u64);
                writeln!(
                    out,
                    "cluster_count_guarantee={:?}",
                    bounds::cluster_count_guarantee(m, &p, a.alpha, family)?
                )?;
            }
        }
    } else if a.h.is_some() {
        return Err(CgaError::domain("--h needs --height"));
    }
    if let (Some(n), Some(prob)) = (a.tail_n, a.tail_p) {
        if let Some(t) = a.tail_t {
            let s = bounds::tail_threshold(n, prob, t);
            writeln!(out, "tail_threshold={s}")?;
            log_line(out, "binom_tail_bound", bounds::binom_tail_bound(n, prob, t)?)?;
            writeln!(out, "binomial_upper_tail={:?}", bounds::binomial_upper_tail(n, prob, s))?;
        }
        if let Some(s) = a.tail_s {
            log_line(out, "binom_tail_simple", bounds::binom_tail_simple(n, prob, s)?)?;
            log_line(out, "binom_tail_intermediate", bounds::binom_tail_intermediate(n, prob, s)?)?;
        }
    }
    if let (Some(mu), Some(t)) = (a.janson_mu, a.janson_t) {
        let j = bounds::janson_bounds(mu, t)?;
        writeln!(out, "janson_upper={:?}", j.upper)?;
        writeln!(out, "janson_lower={:?}", j.lower)?;
    }
    Ok(EXIT_OK)
}

fn read_config(path: &Path) -> Result<ExperimentConfig> {
    ExperimentConfig::parse(&std::fs::read_to_string(path)?)
}

fn cmd_experiment(cmd: ExperimentCommand, out: &mut dyn Write) -> Result<i32> {
    match cmd {
        ExperimentCommand::Sweep(a) => {
            let cfg = read_config(&a.config)?;
            let reports = experiments::run_threshold_sweep(&cfg)?;
            with_output(a.out.as_deref(), out, |w| experiments::write_sweep_csv(&cfg, &reports, w))?;
        }
        ExperimentCommand::Events(a) => {
            let cfg = read_config(&a.config)?;
            let template = cfg
                .template
                .ok_or_else(|| CgaError::domain("events needs template_height and template_size"))?;
            let rows = experiments::estimate_event_probs(&cfg, &template)?;
            with_output(a.out.as_deref(), out, |w| experiments::write_events_csv(&cfg, &rows, w))?;
        }
        ExperimentCommand::Trend(a) => {
            let cfg = read_config(&a.config)?;
            let rows = experiments::trend_sparse_below_mstar(&cfg)?;
            with_output(a.out.as_deref(), out, |w| experiments::write_trend_csv(&cfg, &rows, w))?;
        }
        ExperimentCommand::Xs(a) => {
            let cfg = read_config(&a.config)?;
            let mut rows = Vec::new();
            for &h in &cfg.scan_heights {
                rows.extend(experiments::xs_statistics(&cfg, h)?);
            }
            with_output(a.out.as_deref(), out, |w| experiments::write_xs_csv(&cfg, &rows, w))?;
        }
    }
    Ok(EXIT_OK)
}
