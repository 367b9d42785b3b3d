use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Duration;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use kplexer::bench::{self, RunRecord, RunStatus};
use kplexer::{Graph, GraphFormat, SolverConfig, Strategy};

#[derive(Parser)]
#[command(name = "kplexer", version, about = "Exact maximum k-plex solver")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Find a maximum k-plex.
    Solve(SolveArgs),
    /// Print d(G), cd(G) and optionally the gaps.
    Params(ParamsArgs),
    /// Run every (graph, k) pair of a manifest.
    Bench(BenchArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    EdgeList,
    Dimacs,
}

impl From<FormatArg> for GraphFormat {
    fn from(f: FormatArg) -> Self {
        match f {
            FormatArg::EdgeList => GraphFormat::EdgeList,
            FormatArg::Dimacs => GraphFormat::Dimacs,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Output {
    Text,
    Json,
    Csv,
}

#[derive(Clone, Copy, ValueEnum)]
enum StrategyArg {
    Vertex,
    Edge,
    Hybrid,
}

#[derive(Args)]
struct SolverFlags {
    #[arg(long, value_enum, default_value = "vertex")]
    strategy: StrategyArg,
    /// Seconds.
    #[arg(long, env = "KPLEXER_TIME_LIMIT", default_value_t = 1800.0)]
    time_limit: f64,
    /// Keep only the first-order degree rule.
    #[arg(long)]
    no_reduction: bool,
    /// Disable the partition bound inside the deletion search.
    #[arg(long)]
    no_dbdd_bound: bool,
    /// Input format; picked from the extension when omitted.
    #[arg(long, value_enum)]
    format: Option<FormatArg>,
    /// Compute cd(G) even on graphs above the size cutoff.
    #[arg(long)]
    force_cd: bool,
}

impl SolverFlags {
    fn config(&self) -> Result<SolverConfig, String> {
        if !(self.time_limit.is_finite() && self.time_limit > 0.0) {
            return Err("--time-limit must be positive".into());
        }
        Ok(SolverConfig {
            strategy: match self.strategy {
                StrategyArg::Vertex => Strategy::Vertex,
                StrategyArg::Edge => Strategy::Edge,
                StrategyArg::Hybrid => Strategy::Hybrid,
            },
            reductions_enabled: !self.no_reduction,
            dbdd_bound_enabled: !self.no_dbdd_bound,
            time_limit: Duration::from_secs_f64(self.time_limit),
            ..SolverConfig::default()
        })
    }
}

#[derive(Args)]
struct SolveArgs {
    #[arg(long)]
    graph: PathBuf,
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    k: u64,
    #[arg(long, value_enum, default_value = "text")]
    output: Output,
    #[command(flatten)]
    flags: SolverFlags,
}

#[derive(Args)]
struct ParamsArgs {
    #[arg(long)]
    graph: PathBuf,
    /// k values for gap rows, comma separated.
    #[arg(long, value_delimiter = ',')]
    k: Vec<usize>,
    /// Use this optimum instead of solving.
    #[arg(long)]
    omega: Option<usize>,
    #[arg(long, value_enum, default_value = "text")]
    output: Output,
    #[command(flatten)]
    flags: SolverFlags,
}

#[derive(Args)]
struct BenchArgs {
    #[arg(long)]
    manifest: PathBuf,
    #[arg(long, default_value_t = 1)]
    jobs: usize,
    #[arg(long, value_enum, default_value = "csv")]
    output: Output,
    #[command(flatten)]
    flags: SolverFlags,
}

#[derive(Serialize)]
struct SolveReport<'a> {
    #[serde(flatten)]
    record: &'a RunRecord,
    witness: Vec<u64>,
}

#[derive(Serialize)]
struct BenchReport<'a> {
    records: &'a [RunRecord],
    summary: bench::BenchSummary,
}

fn load(path: &PathBuf, format: Option<FormatArg>) -> Result<Graph, String> {
    Graph::from_file(path, format.map(Into::into)).map_err(|e| e.to_string())
}

fn opt<T: ToString>(v: Option<T>) -> String {
    v.map(|x| x.to_string()).unwrap_or_else(|| "-".into())
}

fn solve(args: SolveArgs) -> Result<ExitCode, String> {
    let cfg = args.flags.config()?;
    let g = load(&args.graph, args.flags.format)?;
    let name = bench::graph_name(&args.graph);
    let (rec, res) = bench::solve_graph(&name, &g, args.k as usize, &cfg, args.flags.force_cd);
    let mut witness: Vec<u64> = res.witness.iter().map(|&v| g.label(v)).collect();
    witness.sort_unstable();
    let mut out = io::stdout().lock();
    match args.output {
        Output::Json => {
            let report = SolveReport { record: &rec, witness };
            writeln!(out, "{}", serde_json::to_string_pretty(&report).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
        }
        Output::Csv => bench::write_csv(std::slice::from_ref(&rec), &mut out).map_err(|e| e.to_string())?,
        Output::Text => {
            let text = format!(
                "graph      {}\nn          {}\nm          {}\nk          {}\nstrategy   {}\nstatus     {}\nomega_k    {}\nd          {}\ncd         {}\ng_k        {}\ncg_k       {}\nelapsed_ms {}\nnodes      {}\ngamma      {}\nwitness    {}\n",
                rec.graph,
                opt(rec.n),
                opt(rec.m),
                rec.k,
                rec.strategy,
                rec.status,
                opt(rec.omega_k),
                opt(rec.d),
                opt(rec.cd),
                opt(rec.g_k),
                opt(rec.cg_k),
                rec.elapsed_ms,
                rec.dbdd_nodes,
                opt(rec.gamma.map(|g| format!("{g:.3}"))),
                witness.iter().map(u64::to_string).collect::<Vec<_>>().join(" "),
            );
            out.write_all(text.as_bytes()).map_err(|e| e.to_string())?;
        }
    }
    Ok(match rec.status {
        RunStatus::Timeout => ExitCode::from(2),
        RunStatus::Error => ExitCode::from(1),
        _ => ExitCode::SUCCESS,
    })
}

fn params(args: ParamsArgs) -> Result<ExitCode, String> {
    let cfg = args.flags.config()?;
    let g = load(&args.graph, args.flags.format)?;
    let name = bench::graph_name(&args.graph);
    let report = bench::graph_params(&name, &g, &args.k, args.omega, &cfg, args.flags.force_cd);
    let mut out = io::stdout().lock();
    let w = |e: io::Error| e.to_string();
    match args.output {
        Output::Json => writeln!(out, "{}", serde_json::to_string_pretty(&report).map_err(|e| e.to_string())?).map_err(w)?,
        _ => {
            writeln!(out, "graph {}\nn {}\nm {}\nd {}\ncd {}", report.graph, report.n, report.m, report.d, opt(report.cd)).map_err(w)?;
            for row in &report.gaps {
                writeln!(out, "k {} omega_k {} g_k {} cg_k {}", row.k, opt(row.omega_k), opt(row.g_k), opt(row.cg_k)).map_err(w)?;
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn run_bench(args: BenchArgs) -> Result<ExitCode, String> {
    let cfg = args.flags.config()?;
    let text = std::fs::read_to_string(&args.manifest).map_err(|e| format!("cannot read {}: {e}", args.manifest.display()))?;
    let base = args.manifest.parent().map(PathBuf::from).unwrap_or_default();
    let entries = bench::parse_manifest(&text, &base).map_err(|e| e.to_string())?;
    let records = bench::run_manifest(&entries, &cfg, args.jobs, args.flags.format.map(Into::into), args.flags.force_cd);
    let summary = bench::summarize(&records);
    let mut out = io::stdout().lock();
    match args.output {
        Output::Json => {
            let report = BenchReport { records: &records, summary };
            writeln!(out, "{}", serde_json::to_string_pretty(&report).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
        }
        _ => {
            bench::write_csv(&records, &mut out).map_err(|e| e.to_string())?;
            eprintln!("{}", serde_json::to_string(&summary).map_err(|e| e.to_string())?);
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let r = match cli.command {
        Command::Solve(a) => solve(a),
        Command::Params(a) => params(a),
        Command::Bench(a) => run_bench(a),
    };
    r.unwrap_or_else(|msg| {
        eprintln!("error: {msg}");
        ExitCode::from(1)
    })
}
