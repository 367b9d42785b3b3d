//! Acceptance suite. Prints one PASS/FAIL line per criterion and fails if
//! any criterion fails.
//!
//! `KPLEXER_DIMACS_DIR` may point at a directory holding `C125.9.clq`;
//! without it the C125.9 rows are reported as SKIP.

mod common;

use std::time::{Duration, Instant};

use kplexer::bitset::{BitSet, DenseGraph};
use kplexer::oracle::{brute_force_max_kplex, brute_force_min_dbdd, is_kplex};
use kplexer::reduce::{reduce_subproblem, Subproblem};
use kplexer::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Per-run limit for the benchmark rows, in seconds.
const PUBLISHED_TIME_LIMIT: u64 = 1800;
const RANDOM_GRAPHS: usize = 300;
const RANDOM_SEED: u64 = 0x6b70_6c78;
const DBDD_INSTANCES: usize = 600;
const DBDD_SEED: u64 = 0x6264_6464;

struct Report {
    lines: Vec<String>,
    failed: bool,
}

impl Report {
    fn record(&mut self, id: &str, title: &str, ok: bool, detail: String) {
        let line = format!("{} {id} {title}: {detail}", if ok { "PASS" } else { "FAIL" });
        println!("{line}");
        self.lines.push(line);
        self.failed |= !ok;
    }
}

/// Every solved run contributes a branching-factor sample.
#[derive(Default)]
struct Gammas {
    runs: usize,
    worst: Vec<String>,
}

impl Gammas {
    fn check(&mut self, what: &str, r: &SolveResult) {
        if r.status == Status::Timeout {
            return;
        }
        self.runs += 1;
        if let Some(g) = r.gamma {
            if g > (r.k + 1) as f64 {
                self.worst.push(format!("{what} k={} gamma={g:.3}", r.k));
            }
        }
    }
}

fn cfg() -> SolverConfig {
    SolverConfig::default()
}

fn criterion_1(rep: &mut Report, gam: &mut Gammas, suite: &[Graph]) {
    let start = Instant::now();
    let mut runs = 0;
    let mut bad = Vec::new();
    for (i, g) in suite.iter().enumerate() {
        for k in 1..=4 {
            let (size, _) = brute_force_max_kplex(g, k, None).unwrap();
            let r = maple_solve(g, k, &cfg());
            gam.check("random", &r);
            runs += 1;
            let ok = if size + 1 < 2 * k {
                r.status == Status::Trivial && r.omega_k.is_none()
            } else {
                r.status == Status::Optimal
                    && r.omega_k == Some(size)
                    && r.witness.len() == size
                    && is_kplex(g, &r.witness, k)
            };
            if !ok {
                bad.push(format!("graph {i} k={k}: oracle {size}, got {:?} {:?}", r.status, r.omega_k));
            }
        }
    }
    rep.record(
        "C1",
        "oracle equivalence",
        bad.is_empty() && runs >= 4 * RANDOM_GRAPHS,
        format!("{}/{runs} runs match in {:.1?} {}", runs - bad.len(), start.elapsed(), bad.first().cloned().unwrap_or_default()),
    );
}

fn criterion_2(rep: &mut Report) {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(DBDD_SEED);
    let mut checked = 0;
    let mut feasible = 0;
    let mut bad = Vec::new();
    for i in 0..DBDD_INSTANCES {
        let n = rng.gen_range(3..=12);
        let g = common::gnp(n, rng.gen_range(0.1..0.9), &mut rng);
        let d = rng.gen_range(0..=3);
        let t = rng.gen_range(0..=5);
        let c: Vec<Vertex> = (0..n as Vertex).filter(|_| rng.gen_bool(0.7)).collect();
        let truth = brute_force_min_dbdd(&g, d, &c).unwrap().is_some_and(|m| m <= t);
        feasible += truth as usize;
        let cand = BitSet::from_iter_with_capacity(n, c.iter().map(|&v| v as usize));
        let inst = DbddInstance::new(g.to_dense(), d, t as i64, cand);
        for bound in [true, false] {
            let mut stats = SearchStats::default();
            let got = dbdd_solve(&inst, bound, &mut stats);
            checked += 1;
            let ok = match &got {
                Some(del) => truth && inst.is_witness(del),
                None => !truth,
            };
            if !ok {
                bad.push(format!("instance {i} bound={bound}: expected {truth}, got {got:?}"));
            }
        }
    }
    rep.record(
        "C2",
        "bdd correctness",
        bad.is_empty() && checked >= 2 * 500,
        format!(
            "{}/{checked} searches agree ({feasible}/{DBDD_INSTANCES} feasible) in {:.1?} {}",
            checked - bad.len(),
            start.elapsed(),
            bad.first().cloned().unwrap_or_default()
        ),
    );
}

#[derive(Clone, Copy)]
enum Expect {
    Omega(usize),
    /// Listed as `2k - 2`, meaning no k-plex of
    /// size `2k - 1` exists.
    NoneAbove(usize),
}

struct Row {
    graph: &'static str,
    k: usize,
    expect: Expect,
    /// Published `(g_k, cg_k)` where listed.
    gaps: Option<(i64, i64)>,
}

const fn row(graph: &'static str, k: usize, expect: Expect, gaps: Option<(i64, i64)>) -> Row {
    Row { graph, k, expect, gaps }
}

const PUBLISHED: [Row; 15] = [
    row("hamming6-4", 2, Expect::Omega(6), None),
    row("hamming6-4", 5, Expect::Omega(12), None),
    row("hamming6-4", 10, Expect::Omega(20), None),
    row("hamming6-4", 15, Expect::Omega(30), None),
    row("hamming6-4", 20, Expect::NoneAbove(38), None),
    row("johnson8-4-4", 2, Expect::Omega(14), None),
    row("johnson8-4-4", 5, Expect::Omega(28), None),
    row("johnson8-4-4", 15, Expect::Omega(60), None),
    row("johnson8-4-4", 20, Expect::Omega(70), Some((3, 6))),
    row("c-fat500-2", 2, Expect::Omega(26), None),
    row("c-fat500-2", 15, Expect::Omega(39), None),
    row("MANN_a27", 5, Expect::Omega(351), Some((18, 9))),
    row("MANN_a27", 15, Expect::Omega(378), Some((1, 2))),
    row("C125.9", 15, Expect::Omega(112), Some((5, 2))),
    row("C125.9", 20, Expect::Omega(122), Some((0, 2))),
];

fn corpus_graph(name: &str) -> Option<Graph> {
    match name {
        "hamming6-4" => Some(common::hamming6_4()),
        "johnson8-4-4" => Some(common::johnson8_4_4()),
        "c-fat500-2" => Some(common::c_fat500_2()),
        "MANN_a27" => Some(common::mann_a27()),
        other => common::load_optional(&format!("{other}.clq")),
    }
}

struct Reproduced {
    graph: &'static str,
    result: SolveResult,
    gaps: Option<(i64, i64)>,
}

fn criterion_3(rep: &mut Report, gam: &mut Gammas) -> Vec<Reproduced> {
    let limit = Duration::from_secs(PUBLISHED_TIME_LIMIT);
    let mut out = Vec::new();
    let mut pass = 0;
    let mut fails = Vec::new();
    let mut skipped = 0;
    let mut graphs: Vec<(&str, Option<Graph>)> = Vec::new();
    for r in PUBLISHED.iter() {
        if !graphs.iter().any(|(n, _)| *n == r.graph) {
            graphs.push((r.graph, corpus_graph(r.graph)));
        }
        let g = match graphs.iter().find(|(n, _)| *n == r.graph).and_then(|(_, g)| g.as_ref()) {
            Some(g) => g,
            None => {
                skipped += 1;
                println!("SKIP C3 {} k={}: set KPLEXER_DIMACS_DIR to a directory with {}.clq", r.graph, r.k, r.graph);
                continue;
            }
        };
        let config = SolverConfig {
            time_limit: limit,
            ..cfg()
        };
        let res = maple_solve(g, r.k, &config);
        gam.check(r.graph, &res);
        let ok = match r.expect {
            Expect::Omega(w) => res.status == Status::Optimal && res.omega_k == Some(w) && is_kplex(g, &res.witness, r.k) && res.witness.len() == w,
            Expect::NoneAbove(l) => res.status == Status::Trivial && l == 2 * r.k - 2,
        };
        println!(
            "  {} k={} expected {} got {} omega={:?} in {:.2?} (nodes {}, gamma {:?})",
            r.graph,
            r.k,
            match r.expect {
                Expect::Omega(w) => w.to_string(),
                Expect::NoneAbove(l) => format!("trivial (l={l})"),
            },
            res.status,
            res.omega_k,
            res.elapsed,
            res.stats.nodes,
            res.gamma.map(|g| (g * 1000.0).round() / 1000.0),
        );
        if ok {
            pass += 1;
        } else {
            fails.push(format!("{} k={}", r.graph, r.k));
        }
        out.push(Reproduced {
            graph: r.graph,
            result: res,
            gaps: r.gaps,
        });
    }
    rep.record(
        "C3",
        "published optima",
        fails.is_empty(),
        format!("{pass}/{} rows reproduced within {PUBLISHED_TIME_LIMIT} s, {skipped} skipped{}", pass + fails.len(), if fails.is_empty() { String::new() } else { format!("; failed: {}", fails.join(", ")) }),
    );
    out
}

fn criterion_4(rep: &mut Report, rows: &[Reproduced]) {
    let mut bad = Vec::new();
    let mut checked = 0;
    let mut params = vec![("MANN_a27", Some(common::mann_a27()), 364, 350)];
    let c125 = common::load_optional("C125.9.clq");
    if c125.is_none() {
        println!("SKIP C4 C125.9 parameters: file not available");
    }
    params.push(("C125.9", c125, 102, 84));
    for (name, g, d, cd) in params {
        let Some(g) = g else { continue };
        let got = (degeneracy_ordering(&g).degeneracy(), community_degeneracy_ordering(&g).community_degeneracy());
        checked += 1;
        if got != (d, cd) {
            bad.push(format!("{name}: d/cd {}/{} expected {d}/{cd}", got.0, got.1));
        }
    }
    for r in rows {
        let res = &r.result;
        let Some(w) = res.omega_k else { continue };
        checked += 1;
        let cd = res.cd.expect("cd computed");
        let g_k = (res.d + res.k) as i64 - w as i64;
        let cg_k = (cd + 2 * res.k) as i64 - w as i64;
        let ok = res.g_k == Some(g_k) && res.cg_k == Some(cg_k) && g_k >= 0 && cg_k >= 0 && r.gaps.is_none_or(|p| p == (g_k, cg_k));
        if !ok {
            bad.push(format!("{} k={}: g_k {:?} cg_k {:?} published {:?}", r.graph, res.k, res.g_k, res.cg_k, r.gaps));
        }
    }
    rep.record(
        "C4",
        "parameters and gaps",
        bad.is_empty() && checked > 0,
        format!("{}/{checked} checks exact {}", checked - bad.len(), bad.join("; ")),
    );
}

fn criterion_5(rep: &mut Report, gam: &mut Gammas, suite: &[Graph]) {
    let start = Instant::now();
    let mut bad: Vec<String> = Vec::new();

    let corpus = [
        ("hamming6-4", common::hamming6_4()),
        ("johnson8-4-4", common::johnson8_4_4()),
        ("c-fat500-2", common::c_fat500_2()),
        ("MANN_a27", common::mann_a27()),
    ];
    let mut corpus: Vec<(&str, Graph)> = corpus.into_iter().collect();
    if let Some(g) = common::load_optional("C125.9.clq") {
        corpus.push(("C125.9", g));
    }
    for (name, g) in &corpus {
        let d = degeneracy_ordering(g).degeneracy();
        let cd = community_degeneracy_ordering(g).community_degeneracy();
        let cap = ((g.n() + 2 * g.m()) as f64).sqrt();
        if !(cd < d && d as f64 <= cap) {
            bad.push(format!("{name}: cd {cd} d {d} cap {cap:.1}"));
        }
    }

    let mut duality = 0;
    for g in suite.iter().filter(|g| g.n() <= 12) {
        let all: Vec<Vertex> = (0..g.n() as Vertex).collect();
        let gc = g.complement();
        for k in 1..=3 {
            duality += 1;
            let omega = brute_force_max_kplex(g, k, None).unwrap().0;
            let del = brute_force_min_dbdd(&gc, k - 1, &all).unwrap().expect("deleting everything works");
            if omega != g.n() - del {
                bad.push(format!("duality n={} k={k}", g.n()));
            }
        }
        if gc.complement() != *g {
            bad.push(format!("complement involution n={}", g.n()));
        }
    }

    let mut rng = ChaCha8Rng::seed_from_u64(RANDOM_SEED ^ 5);
    for g in suite {
        let k = rng.gen_range(1..=3);
        let p = rng.gen_range(2 * k - 1..=g.n().max(2 * k - 1));
        let n = g.n();
        let seed = rng.gen_range(0..n);
        let sub = Subproblem {
            graph: DenseGraph::from_edges(n, g.edges().map(|(u, v)| (u as usize, v as usize))),
            alive: BitSet::full(n),
            anchor: vec![seed],
            seeds: vec![seed],
            candidates: BitSet::from_iter_with_capacity(n, (0..n).filter(|&v| v != seed)),
            origin: (0..n as Vertex).collect(),
            p,
            k,
        };
        let once = reduce_subproblem(sub);
        let twice = reduce_subproblem(once.clone());
        if once.alive != twice.alive || once.graph != twice.graph {
            bad.push(format!("reduction idempotence n={n} k={k} p={p}"));
        }
    }

    let mut combos = 0;
    for (i, g) in suite.iter().enumerate() {
        for k in 1..=4 {
            let base = maple_solve(g, k, &cfg());
            for strategy in [Strategy::Vertex, Strategy::Edge, Strategy::Hybrid] {
                for (reductions_enabled, dbdd_bound_enabled) in [(true, true), (true, false), (false, true), (false, false)] {
                    let c = SolverConfig {
                        strategy,
                        reductions_enabled,
                        dbdd_bound_enabled,
                        ..cfg()
                    };
                    let r = maple_solve(g, k, &c);
                    gam.check("random", &r);
                    combos += 1;
                    if (r.status, r.omega_k) != (base.status, base.omega_k) {
                        bad.push(format!("graph {i} k={k} {strategy} {reductions_enabled}/{dbdd_bound_enabled}: {:?} vs {:?}", r.omega_k, base.omega_k));
                    }
                }
            }
        }
    }
    rep.record(
        "C5",
        "structural invariants",
        bad.is_empty(),
        format!(
            "{} corpus graphs, {duality} duality checks, {} reductions, {combos} strategy/ablation runs in {:.1?}; {} violations {}",
            corpus.len(),
            suite.len(),
            start.elapsed(),
            bad.len(),
            bad.first().cloned().unwrap_or_default()
        ),
    );
}

fn criterion_6(rep: &mut Report, gam: &Gammas) {
    rep.record(
        "C6",
        "branching factor",
        gam.worst.is_empty() && gam.runs > 0,
        format!("gamma <= k+1 on {}/{} solved runs {}", gam.runs - gam.worst.len(), gam.runs, gam.worst.first().cloned().unwrap_or_default()),
    );
}

#[test]
fn acceptance() {
    let suite = common::random_suite(RANDOM_GRAPHS, RANDOM_SEED);
    let mut rep = Report {
        lines: Vec::new(),
        failed: false,
    };
    let mut gam = Gammas::default();
    criterion_1(&mut rep, &mut gam, &suite);
    criterion_2(&mut rep);
    let rows = criterion_3(&mut rep, &mut gam);
    criterion_4(&mut rep, &rows);
    criterion_5(&mut rep, &mut gam, &suite);
    criterion_6(&mut rep, &gam);
    println!("\nsummary");
    for l in &rep.lines {
        println!("{l}");
    }
    assert!(!rep.failed, "at least one acceptance criterion failed");
}
