//! `varz`: benchmark sweeps, VSWR table analysis, NEC deck generation and
//! listing parsing, and config-driven optimization.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Duration;

use clap::{Args, Parser, Subcommand};
use varz_core::antenna::{extract_bands, summarize, SweepTable};
use varz_core::nec::{parse_nec_output, ForwardDirection, ParseOptions};
use varz_core::report::{
    bands_csv, execute, persist, run_id_now, summary_csv, table_tsv, DesignFile, ObjectiveConfig, RunConfig,
    RunOutcome,
};
use varz_core::{Error, Result};

#[derive(Debug, Parser)]
#[command(name = "varz", version, about = "Central Force Optimization and Variable-Z0 antenna tooling")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Run the default CFO sweep on a catalog benchmark.
    Bench(BenchArgs),
    /// Extract VSWR bands and a min/max summary from a sweep table.
    Analyze(AnalyzeArgs),
    /// Write a NEC input deck from a design file.
    Necgen(NecgenArgs),
    /// Parse a NEC output listing into a sweep table.
    Necparse(NecparseArgs),
    /// Run the optimization described by a config file.
    Optimize(OptimizeArgs),
}

#[derive(Debug, Args)]
struct CfoOverrides {
    /// Maximum time steps per run.
    #[arg(long)]
    nt: Option<usize>,
    /// Number of γ values in [0, 1].
    #[arg(long)]
    n_gamma: Option<usize>,
    /// Largest probes-per-dimension count.
    #[arg(long)]
    max_np: Option<usize>,
}

#[derive(Debug, Args)]
struct BenchArgs {
    /// Benchmark name (see the catalog, e.g. GP, SGO, F14).
    name: String,
    /// Dimensionality for variable-dimension functions.
    #[arg(long)]
    dims: Option<usize>,
    #[command(flatten)]
    cfo: CfoOverrides,
    /// Output directory for run.toml and the series files.
    #[arg(long, default_value = "varz-out")]
    out: PathBuf,
}

#[derive(Debug, Args)]
struct AnalyzeArgs {
    /// Tab- or space-separated sweep table.
    table: PathBuf,
    /// Reference impedance; recomputes VSWR from Rin/Xin.
    #[arg(long)]
    z0: Option<f64>,
    /// VSWR threshold defining a band.
    #[arg(long, default_value_t = 2.0)]
    threshold: f64,
    /// Summary window in MHz; defaults to the whole table.
    #[arg(long, num_args = 2, value_names = ["LO", "HI"])]
    window: Option<Vec<f64>>,
}

#[derive(Debug, Args)]
struct NecgenArgs {
    /// TOML design file with a [bowtie] or [yagi] table.
    design: PathBuf,
    /// Output deck path; stdout when omitted.
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct NecparseArgs {
    /// NEC output listing.
    listing: PathBuf,
    /// Feed-system impedance for VSWR.
    #[arg(long)]
    z0: f64,
    /// Reject listings whose File ID differs.
    #[arg(long)]
    expect_id: Option<String>,
    /// Forward direction as THETA PHI in degrees; default is the first pattern row.
    #[arg(long, num_args = 2, value_names = ["THETA", "PHI"])]
    forward: Option<Vec<f64>>,
    /// Output table path; stdout when omitted.
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct OptimizeArgs {
    /// TOML run configuration.
    config: PathBuf,
    /// Override the configured output directory.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Override the configured engine executable.
    #[arg(long)]
    engine: Option<PathBuf>,
    /// Override the engine timeout in seconds.
    #[arg(long)]
    timeout: Option<u64>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Bench(a) => bench(a),
        Command::Analyze(a) => analyze(a),
        Command::Necgen(a) => necgen(a),
        Command::Necparse(a) => necparse(a),
        Command::Optimize(a) => optimize(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

fn bench(a: BenchArgs) -> Result<()> {
    let mut cfg = RunConfig::benchmark(&a.name);
    cfg.objective = ObjectiveConfig::Benchmark { name: a.name, dims: a.dims };
    cfg.output_dir = a.out;
    apply_overrides(&mut cfg, &a.cfo);
    run_and_persist(&cfg)
}

fn apply_overrides(cfg: &mut RunConfig, o: &CfoOverrides) {
    if let Some(v) = o.nt {
        cfg.cfo.nt = v;
    }
    if let Some(v) = o.n_gamma {
        cfg.cfo.n_gamma = v;
    }
    if let Some(v) = o.max_np {
        cfg.cfo.max_np_per_dim = v;
    }
}

fn run_and_persist(cfg: &RunConfig) -> Result<()> {
    let out = execute(cfg, &run_id_now())?;
    let path = persist(&out, &cfg.output_dir)?;
    print_outcome(&out, &path);
    Ok(())
}

fn print_outcome(out: &RunOutcome, record: &Path) {
    let b = &out.record.best;
    println!("best fitness  {}", b.fitness);
    println!("position      {:?}", b.best_position);
    println!("probe         {} (zero-based)", b.probe);
    println!("step          {} of {}", b.step, b.last_step);
    println!("np/nd, gamma  {}, {}", b.np_per_dim, b.gamma);
    println!("evaluations   {} over {} runs", out.record.evaluations, out.record.runs);
    println!("record        {}", record.display());
}

fn analyze(a: AnalyzeArgs) -> Result<()> {
    let table = SweepTable::parse(&fs::read_to_string(&a.table)?, a.z0)?;
    let (lo, hi) = match (a.window.as_deref(), table.rows()) {
        (Some(&[lo, hi]), _) => (lo, hi),
        (None, [first, .., last]) => (first.f_mhz, last.f_mhz),
        (None, [only]) => (only.f_mhz, only.f_mhz),
        _ => return Err(Error::InvalidInput(format!("{} has no rows", a.table.display()))),
    };
    print!("{}", bands_csv(&extract_bands(&table, a.threshold)?));
    println!();
    print!("{}", summary_csv(&summarize(&table, lo, hi)?));
    Ok(())
}

fn necgen(a: NecgenArgs) -> Result<()> {
    let deck = DesignFile::load(&a.design)?.to_deck()?;
    let mut text = deck.to_string();
    if !text.ends_with('\n') {
        text.push('\n');
    }
    match a.output {
        Some(p) => fs::write(p, text)?,
        None => print!("{text}"),
    }
    Ok(())
}

fn necparse(a: NecparseArgs) -> Result<()> {
    let mut opts = ParseOptions::new(a.z0);
    if let Some(id) = a.expect_id {
        opts = opts.expect_file_id(id);
    }
    if let Some(&[theta, phi]) = a.forward.as_deref() {
        opts = opts.forward(ForwardDirection::Angles { theta, phi });
    }
    let parsed = parse_nec_output(&fs::read_to_string(&a.listing)?, &opts)?;
    let table = match (parsed.run_complete, parsed.table) {
        (true, Some(t)) => t,
        _ => return Err(Error::EngineFailure(format!("{} has no RUN TIME marker", a.listing.display()))),
    };
    let text = table_tsv(&table);
    match a.output {
        Some(p) => fs::write(p, text)?,
        None => print!("{text}"),
    }
    Ok(())
}

fn optimize(a: OptimizeArgs) -> Result<()> {
    let mut cfg = RunConfig::load(&a.config)?;
    if let Some(out) = a.out {
        cfg.output_dir = out;
    }
    if let Some(engine) = a.engine {
        cfg.engine = Some(engine);
    }
    if let Some(t) = a.timeout {
        cfg.engine_timeout_secs = Some(t);
    }
    if cfg.engine_timeout_secs.is_some_and(|t| Duration::from_secs(t).is_zero()) {
        return Err(Error::InvalidConfig("engine timeout must be positive".into()));
    }
    run_and_persist(&cfg)
}
