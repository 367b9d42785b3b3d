//! Run records, manifests and the benchmark harness behind the CLI.

use std::collections::BTreeMap;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{GraphError, Result};
use crate::graph::{Graph, GraphFormat};
use crate::ordering::{community_degeneracy_ordering, degeneracy_ordering};
use crate::solver::{maple_solve, SolveResult, SolverConfig, Status, Strategy};

/// Above this many edges the community degeneracy is only computed on request.
pub const CD_EDGE_LIMIT: usize = 5_000_000;

/// CSV header, in column order.
pub const CSV_COLUMNS: [&str; 16] = [
    "graph", "n", "m", "k", "strategy", "flags", "status", "omega_k", "d", "cd", "g_k", "cg_k", "elapsed_ms", "dbdd_nodes", "gamma", "error",
];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RunStatus {
    Optimal,
    Trivial,
    Timeout,
    Error,
}

impl std::fmt::Display for RunStatus {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            RunStatus::Optimal => "optimal",
            RunStatus::Trivial => "trivial",
            RunStatus::Timeout => "timeout",
            RunStatus::Error => "error",
        })
    }
}

impl From<Status> for RunStatus {
    fn from(s: Status) -> Self {
        match s {
            Status::Optimal => RunStatus::Optimal,
            Status::Trivial => RunStatus::Trivial,
            Status::Timeout => RunStatus::Timeout,
        }
    }
}

/// One row of a benchmark table.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunRecord {
    pub graph: String,
    pub n: Option<usize>,
    pub m: Option<usize>,
    pub k: usize,
    pub strategy: Strategy,
    pub flags: String,
    pub status: RunStatus,
    pub omega_k: Option<usize>,
    pub d: Option<usize>,
    pub cd: Option<usize>,
    pub g_k: Option<i64>,
    pub cg_k: Option<i64>,
    pub elapsed_ms: u64,
    pub dbdd_nodes: u64,
    pub gamma: Option<f64>,
    pub error: Option<String>,
}

/// Ablation flags as a single column value.
pub fn flags_label(cfg: &SolverConfig) -> String {
    match (cfg.reductions_enabled, cfg.dbdd_bound_enabled) {
        (true, true) => "default".into(),
        (false, true) => "no-reduction".into(),
        (true, false) => "no-dbdd-bound".into(),
        (false, false) => "no-reduction+no-dbdd-bound".into(),
    }
}

impl RunRecord {
    pub fn from_result(graph: &str, g: &Graph, cfg: &SolverConfig, r: &SolveResult) -> Self {
        RunRecord {
            graph: graph.to_string(),
            n: Some(g.n()),
            m: Some(g.m()),
            k: r.k,
            strategy: cfg.strategy,
            flags: flags_label(cfg),
            status: r.status.into(),
            omega_k: r.omega_k,
            d: Some(r.d),
            cd: r.cd,
            g_k: r.g_k,
            cg_k: r.cg_k,
            elapsed_ms: r.elapsed.as_millis() as u64,
            dbdd_nodes: r.stats.nodes,
            gamma: r.gamma,
            error: None,
        }
    }

    pub fn failed(graph: &str, k: usize, cfg: &SolverConfig, err: &GraphError) -> Self {
        RunRecord {
            graph: graph.to_string(),
            n: None,
            m: None,
            k,
            strategy: cfg.strategy,
            flags: flags_label(cfg),
            status: RunStatus::Error,
            omega_k: None,
            d: None,
            cd: None,
            g_k: None,
            cg_k: None,
            elapsed_ms: 0,
            dbdd_nodes: 0,
            gamma: None,
            error: Some(err.to_string()),
        }
    }

    /// Comparison key that ignores timings.
    pub fn outcome(&self) -> (String, usize, RunStatus, Option<usize>) {
        (self.graph.clone(), self.k, self.status, self.omega_k)
    }
}

/// Graph name as shown in tables: the file stem.
pub fn graph_name(path: &Path) -> String {
    path.file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| path.display().to_string())
}

/// Applies the cd size policy to `cfg`.
pub fn effective_config(g: &Graph, cfg: &SolverConfig, force_cd: bool) -> SolverConfig {
    SolverConfig {
        compute_cd: cfg.compute_cd && (force_cd || g.m() <= CD_EDGE_LIMIT),
        ..cfg.clone()
    }
}

pub fn solve_graph(name: &str, g: &Graph, k: usize, cfg: &SolverConfig, force_cd: bool) -> (RunRecord, SolveResult) {
    let cfg = effective_config(g, cfg, force_cd);
    let r = maple_solve(g, k, &cfg);
    (RunRecord::from_result(name, g, &cfg, &r), r)
}

pub fn write_csv<W: Write>(records: &[RunRecord], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    for r in records {
        w.serialize(r).map_err(csv_error)?;
    }
    w.flush().map_err(|e| GraphError::Report(e.to_string()))?;
    Ok(())
}

pub fn read_csv<R: std::io::Read>(input: R) -> Result<Vec<RunRecord>> {
    csv::Reader::from_reader(input)
        .deserialize()
        .map(|r| r.map_err(csv_error))
        .collect()
}

fn csv_error(e: csv::Error) -> GraphError {
    GraphError::Report(e.to_string())
}

/// One manifest line: a graph file and the k values to run on it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ManifestEntry {
    pub path: PathBuf,
    pub ks: Vec<usize>,
}

/// Lines are `PATH K1,K2,...`; blank lines and `#` comments are skipped.
/// Relative paths are taken from `base`.
pub fn parse_manifest(text: &str, base: &Path) -> Result<Vec<ManifestEntry>> {
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let bad = |msg: &str| GraphError::Parse {
            line: i + 1,
            msg: msg.to_string(),
        };
        let (path, ks) = line.rsplit_once(char::is_whitespace).ok_or_else(|| bad("expected `PATH K1,K2,...`"))?;
        let ks = ks
            .split(',')
            .map(|s| s.trim().parse::<usize>().ok().filter(|&k| k >= 1))
            .collect::<Option<Vec<_>>>()
            .ok_or_else(|| bad("k values must be positive integers"))?;
        let path = PathBuf::from(path.trim());
        let path = if path.is_relative() { base.join(path) } else { path };
        out.push(ManifestEntry { path, ks });
    }
    Ok(out)
}

/// Solves every (graph, k) pair of the manifest on `jobs` threads. Rows
/// come back in manifest order whatever the thread count.
pub fn run_manifest(entries: &[ManifestEntry], cfg: &SolverConfig, jobs: usize, format: Option<GraphFormat>, force_cd: bool) -> Vec<RunRecord> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.max(1))
        .build()
        .expect("thread pool");
    pool.install(|| {
        let graphs: Vec<std::result::Result<Arc<Graph>, GraphError>> = entries
            .par_iter()
            .map(|e| Graph::from_file(&e.path, format).map(Arc::new))
            .collect();
        let tasks: Vec<(usize, usize)> = entries
            .iter()
            .enumerate()
            .flat_map(|(i, e)| e.ks.iter().map(move |&k| (i, k)))
            .collect();
        tasks
            .par_iter()
            .map(|&(i, k)| {
                let name = graph_name(&entries[i].path);
                match &graphs[i] {
                    Ok(g) => solve_graph(&name, g, k, cfg, force_cd).0,
                    Err(e) => RunRecord::failed(&name, k, cfg, e),
                }
            })
            .collect()
    })
}

/// Pearson correlation; `None` when either side has zero variance or
/// fewer than two points.
pub fn pearson(xs: &[f64], ys: &[f64]) -> Option<f64> {
    let n = xs.len();
    if n < 2 || n != ys.len() {
        return None;
    }
    let mx = xs.iter().sum::<f64>() / n as f64;
    let my = ys.iter().sum::<f64>() / n as f64;
    let (mut sxy, mut sxx, mut syy) = (0.0, 0.0, 0.0);
    for (x, y) in xs.iter().zip(ys) {
        sxy += (x - mx) * (y - my);
        sxx += (x - mx) * (x - mx);
        syy += (y - my) * (y - my);
    }
    if sxx <= 0.0 || syy <= 0.0 {
        return None;
    }
    Some(sxy / (sxx * syy).sqrt())
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BenchSummary {
    pub rows: usize,
    pub solved: usize,
    /// Correlation of `ln(max(elapsed_ms, 1))` with each parameter over
    /// solved rows.
    pub correlation: BTreeMap<String, Option<f64>>,
}

pub fn summarize(records: &[RunRecord]) -> BenchSummary {
    let solved: Vec<&RunRecord> = records
        .iter()
        .filter(|r| matches!(r.status, RunStatus::Optimal | RunStatus::Trivial))
        .collect();
    let time: Vec<f64> = solved.iter().map(|r| (r.elapsed_ms.max(1) as f64).ln()).collect();
    let column = |f: &dyn Fn(&RunRecord) -> Option<f64>| -> Option<f64> {
        let pairs: Vec<(f64, f64)> = solved.iter().zip(&time).filter_map(|(r, &t)| f(r).map(|x| (x, t))).collect();
        let (xs, ys): (Vec<f64>, Vec<f64>) = pairs.into_iter().unzip();
        pearson(&xs, &ys)
    };
    let mut correlation = BTreeMap::new();
    correlation.insert("n".to_string(), column(&|r| r.n.map(|v| v as f64)));
    correlation.insert("d".to_string(), column(&|r| r.d.map(|v| v as f64)));
    correlation.insert("cd".to_string(), column(&|r| r.cd.map(|v| v as f64)));
    correlation.insert("g_k".to_string(), column(&|r| r.g_k.map(|v| v as f64)));
    correlation.insert("cg_k".to_string(), column(&|r| r.cg_k.map(|v| v as f64)));
    BenchSummary {
        rows: records.len(),
        solved: solved.len(),
        correlation,
    }
}

/// Graph parameters with optional gap rows.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ParamsReport {
    pub graph: String,
    pub n: usize,
    pub m: usize,
    pub d: usize,
    pub cd: Option<usize>,
    pub gaps: Vec<GapRow>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GapRow {
    pub k: usize,
    pub omega_k: Option<usize>,
    pub g_k: Option<i64>,
    pub cg_k: Option<i64>,
}

/// `d` and `cd`, plus gaps for each k. Without `omega`, each k is solved.
pub fn graph_params(name: &str, g: &Graph, ks: &[usize], omega: Option<usize>, cfg: &SolverConfig, force_cd: bool) -> ParamsReport {
    let d = degeneracy_ordering(g).degeneracy();
    let cd = (force_cd || g.m() <= CD_EDGE_LIMIT).then(|| community_degeneracy_ordering(g).community_degeneracy());
    let gaps = ks
        .iter()
        .map(|&k| {
            let omega_k = omega.or_else(|| {
                let cfg = SolverConfig {
                    compute_cd: false,
                    ..cfg.clone()
                };
                let r = maple_solve(g, k, &cfg);
                (r.status != Status::Timeout).then_some(r.omega_k).flatten()
            });
            GapRow {
                k,
                omega_k,
                g_k: omega_k.map(|w| (d + k) as i64 - w as i64),
                cg_k: omega_k.zip(cd).map(|(w, c)| (c + 2 * k) as i64 - w as i64),
            }
        })
        .collect();
    ParamsReport {
        graph: name.to_string(),
        n: g.n(),
        m: g.m(),
        d,
        cd,
        gaps,
    }
}
