//! Bounded-degree deletion: find `D ⊆ C`, `|D| <= t`, such that the graph
//! minus `D` has maximum degree at most `d`.
//!
//! A k-plex of size `p` in `G` is exactly the complement of a
//! `(k-1)`-bdd set of size `|V| - p` in the complement of `G`, which is how
//! the solver uses this module.

use std::time::Instant;

use crate::bitset::{count_and, count_and_not, BitSet, DenseGraph};
use crate::reduce::partition_bound;

/// Search tree counters.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct SearchStats {
    pub nodes: u64,
    pub branch_events: u64,
    pub child_total: u64,
    pub max_depth: u64,
    pub bound_prunes: u64,
}

impl SearchStats {
    /// Average number of children per branching node.
    pub fn gamma(&self) -> Option<f64> {
        (self.branch_events > 0).then(|| self.child_total as f64 / self.branch_events as f64)
    }

    pub fn merge(&mut self, other: &SearchStats) {
        self.nodes += other.nodes;
        self.branch_events += other.branch_events;
        self.child_total += other.child_total;
        self.max_depth = self.max_depth.max(other.max_depth);
        self.bound_prunes += other.bound_prunes;
    }
}

/// One bdd instance over a dense graph. Vertices outside `alive` are
/// already gone; `growing` holds vertices deleted before the call.
#[derive(Clone, Debug)]
pub struct DbddInstance {
    pub graph: DenseGraph,
    pub alive: BitSet,
    pub d: usize,
    pub t: i64,
    pub candidates: BitSet,
    pub growing: Vec<usize>,
}

impl DbddInstance {
    pub fn new(graph: DenseGraph, d: usize, t: i64, candidates: BitSet) -> Self {
        let alive = BitSet::full(graph.n());
        DbddInstance {
            graph,
            alive,
            d,
            t,
            candidates,
            growing: Vec::new(),
        }
    }

    /// Whether `deleted` is a valid answer: inside the candidates, within
    /// budget, and leaving every degree at most `d`.
    pub fn is_witness(&self, deleted: &[usize]) -> bool {
        let extra: Vec<usize> = deleted.iter().copied().filter(|v| !self.growing.contains(v)).collect();
        if extra.len() as i64 > self.t || extra.iter().any(|&v| !self.candidates.contains(v) || !self.alive.contains(v)) {
            return false;
        }
        let mut rest = self.alive.clone();
        for &v in &extra {
            rest.remove(v);
        }
        rest.iter().all(|v| self.graph.degree_in(v, &rest) <= self.d)
    }
}

#[derive(Clone, Copy, Debug)]
pub struct DbddOptions {
    pub bound: bool,
    pub clamp_bound: bool,
    pub deadline: Option<Instant>,
    /// Deadline polling period, in nodes.
    pub check_every: u64,
    /// Give up after this many nodes.
    pub node_limit: u64,
}

impl Default for DbddOptions {
    fn default() -> Self {
        DbddOptions {
            bound: true,
            clamp_bound: false,
            deadline: None,
            check_every: 1024,
            node_limit: u64::MAX,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DbddOutcome {
    Found(Vec<usize>),
    Infeasible,
    Aborted,
}

/// Returns `growing ∪ D*` for some valid `D*`, or `None`.
pub fn dbdd_solve(inst: &DbddInstance, bound_enabled: bool, stats: &mut SearchStats) -> Option<Vec<usize>> {
    let opts = DbddOptions {
        bound: bound_enabled,
        ..DbddOptions::default()
    };
    match dbdd_search(inst, &opts, stats) {
        DbddOutcome::Found(d) => Some(d),
        _ => None,
    }
}

pub fn dbdd_search(inst: &DbddInstance, opts: &DbddOptions, stats: &mut SearchStats) -> DbddOutcome {
    let mut cand = inst.candidates.clone();
    cand.intersect_with(&inst.alive);
    let mut st = State {
        alive: inst.alive.clone(),
        cand,
        growing: inst.growing.clone(),
        t: inst.t,
    };
    let mut search = Search {
        g: &inst.graph,
        d: inst.d,
        opts,
        stats,
        deg: vec![0; inst.graph.n()],
        visited: 0,
    };
    match search.node(&mut st, 0) {
        Step::Found => DbddOutcome::Found(st.growing),
        Step::NotFound => DbddOutcome::Infeasible,
        Step::Abort => DbddOutcome::Aborted,
    }
}

/// True iff the partition bound already exceeds the budget.
pub fn maybe_prune(inst: &DbddInstance) -> bool {
    let mut cand = inst.candidates.clone();
    cand.intersect_with(&inst.alive);
    partition_bound(&inst.graph, &inst.alive, inst.d, &cand, false) > inst.t
}

struct State {
    alive: BitSet,
    cand: BitSet,
    growing: Vec<usize>,
    t: i64,
}

impl State {
    fn delete(&mut self, v: usize) {
        self.alive.remove(v);
        self.cand.remove(v);
        self.growing.push(v);
        self.t -= 1;
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Step {
    Found,
    NotFound,
    Abort,
}

struct Search<'a> {
    g: &'a DenseGraph,
    d: usize,
    opts: &'a DbddOptions,
    stats: &'a mut SearchStats,
    deg: Vec<usize>,
    visited: u64,
}

impl Search<'_> {
    fn node(&mut self, st: &mut State, depth: u64) -> Step {
        self.stats.nodes += 1;
        self.stats.max_depth = self.stats.max_depth.max(depth);
        self.visited += 1;
        if self.visited > self.opts.node_limit {
            return Step::Abort;
        }
        if let Some(dl) = self.opts.deadline {
            if self.stats.nodes % self.opts.check_every.max(1) == 0 && Instant::now() >= dl {
                return Step::Abort;
            }
        }
        let d = self.d;
        let (up, up_deg) = loop {
            if st.t < 0 {
                return Step::NotFound;
            }
            let mut best = (usize::MAX, 0usize);
            for v in st.alive.iter() {
                let dv = count_and(self.g.row(v), st.alive.words());
                self.deg[v] = dv;
                if best.0 == usize::MAX || dv > best.1 {
                    best = (v, dv);
                }
            }
            // Rule 1: vertices that cannot be deleted must already fit.
            for v in st.alive.iter() {
                if !st.cand.contains(v) && count_and_not(self.g.row(v), st.alive.words(), st.cand.words()) > d {
                    return Step::NotFound;
                }
            }
            // Rule 2
            if best.0 == usize::MAX || best.1 <= d {
                return Step::Found;
            }
            // Rule 3: too many neighbors to ever fix without deleting u.
            let limit = d as i64 + st.t;
            if let Some(u) = st.cand.iter().find(|&u| self.deg[u] as i64 > limit) {
                st.delete(u);
                continue;
            }
            // Rule 4: u and its neighbors are already fine.
            let mut over = BitSet::new(self.g.n());
            for v in st.alive.iter() {
                if self.deg[v] > d {
                    over.insert(v);
                }
            }
            let safe: Vec<usize> = st
                .cand
                .iter()
                .filter(|&u| self.deg[u] <= d && count_and(self.g.row(u), over.words()) == 0)
                .collect();
            if safe.is_empty() {
                break best;
            }
            for u in safe {
                st.cand.remove(u);
            }
        };
        if self.opts.bound && partition_bound(self.g, &st.alive, d, &st.cand, self.opts.clamp_bound) > st.t {
            self.stats.bound_prunes += 1;
            return Step::NotFound;
        }

        let mut nbrs: Vec<usize> = st
            .cand
            .iter()
            .filter(|&v| self.g.has_edge(up, v))
            .collect();
        nbrs.sort_by(|&a, &b| self.deg[b].cmp(&self.deg[a]).then(a.cmp(&b)));
        let s = nbrs.len();
        let outside = up_deg - s;
        self.stats.branch_events += 1;

        if st.cand.contains(up) {
            let b = d as i64 + 1 - outside as i64;
            self.stats.child_total += if b <= 0 { 1 } else { b as u64 + 1 };
            let r = self.child(st, &[], &[up], depth);
            if r != Step::NotFound || b <= 0 {
                return r;
            }
            let b = b as usize;
            let mut keep = vec![up];
            for i in 2..=b {
                let r = self.child(st, &keep, &[nbrs[i - 2]], depth);
                if r != Step::NotFound {
                    return r;
                }
                keep.push(nbrs[i - 2]);
            }
            self.child(st, &keep, &nbrs[b - 1..], depth)
        } else {
            // Rule 1 guarantees outside <= d here.
            let b = d - outside;
            self.stats.child_total += b as u64 + 1;
            let mut keep = Vec::with_capacity(b);
            for i in 1..=b {
                let r = self.child(st, &keep, &[nbrs[i - 1]], depth);
                if r != Step::NotFound {
                    return r;
                }
                keep.push(nbrs[i - 1]);
            }
            self.child(st, &keep, &nbrs[b..], depth)
        }
    }

    /// Child with `keep` taken out of the candidates and `delete` deleted.
    /// State is restored unless a witness was found.
    fn child(&mut self, st: &mut State, keep: &[usize], delete: &[usize], depth: u64) -> Step {
        let saved_alive = st.alive.clone();
        let saved_cand = st.cand.clone();
        let (saved_len, saved_t) = (st.growing.len(), st.t);
        for &v in keep {
            st.cand.remove(v);
        }
        for &v in delete {
            st.delete(v);
        }
        let r = self.node(st, depth + 1);
        if r != Step::Found {
            st.alive = saved_alive;
            st.cand = saved_cand;
            st.growing.truncate(saved_len);
            st.t = saved_t;
        }
        r
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Graph;
    use crate::oracle::brute_force_min_dbdd;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn all(n: usize) -> BitSet {
        BitSet::full(n)
    }

    #[test]
    fn already_bounded_returns_growing() {
        let g = Graph::cycle(6).to_dense();
        let mut inst = DbddInstance::new(g, 2, 3, all(6));
        inst.growing = vec![];
        let mut stats = SearchStats::default();
        assert_eq!(dbdd_solve(&inst, true, &mut stats), Some(vec![]));
    }

    #[test]
    fn negative_budget_fails() {
        let inst = DbddInstance::new(Graph::cycle(6).to_dense(), 2, -1, all(6));
        assert_eq!(dbdd_solve(&inst, false, &mut SearchStats::default()), None);
    }

    #[test]
    fn star_deletes_center() {
        let inst = DbddInstance::new(Graph::star(3).to_dense(), 1, 1, all(4));
        assert_eq!(dbdd_solve(&inst, false, &mut SearchStats::default()), Some(vec![0]));
        assert_eq!(dbdd_solve(&inst, true, &mut SearchStats::default()), Some(vec![0]));
    }

    #[test]
    fn k5_prunes_small_budget() {
        let inst = DbddInstance::new(Graph::complete(5).to_dense(), 0, 2, all(5));
        assert_eq!(dbdd_solve(&inst, false, &mut SearchStats::default()), None);
        let inst = DbddInstance::new(Graph::complete(5).to_dense(), 0, 4, all(5));
        let w = dbdd_solve(&inst, true, &mut SearchStats::default()).unwrap();
        assert!(inst.is_witness(&w));
    }

    #[test]
    fn bound_zero_never_prunes() {
        let inst = DbddInstance::new(Graph::path(4).to_dense(), 2, 0, all(4));
        assert!(!maybe_prune(&inst));
    }

    #[test]
    fn matches_oracle_on_random_instances() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..300 {
            let n = rng.gen_range(1..=10);
            let p = [0.3, 0.5, 0.7][rng.gen_range(0..3)];
            let edges: Vec<(usize, usize)> = (0..n)
                .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
                .filter(|_| rng.gen_bool(p))
                .collect();
            let g = Graph::from_edges(n, edges).unwrap();
            let d = rng.gen_range(0..=2);
            let t = rng.gen_range(0..=4);
            let c: Vec<u32> = (0..n as u32).filter(|_| rng.gen_bool(0.7)).collect();
            let expect = brute_force_min_dbdd(&g, d, &c).unwrap().is_some_and(|m| m <= t as usize);
            let cs = BitSet::from_iter_with_capacity(n, c.iter().map(|&v| v as usize));
            let inst = DbddInstance::new(g.to_dense(), d, t, cs);
            for bound in [false, true] {
                let mut stats = SearchStats::default();
                let got = dbdd_solve(&inst, bound, &mut stats);
                assert_eq!(got.is_some(), expect);
                if let Some(w) = got {
                    assert!(inst.is_witness(&w));
                }
                if let Some(gamma) = stats.gamma() {
                    assert!(gamma <= (d + 2) as f64);
                }
                if bound && maybe_prune(&inst) {
                    assert!(!expect);
                }
            }
        }
    }

    #[test]
    fn deadline_in_the_past_aborts() {
        let g = Graph::complete(12).to_dense();
        let inst = DbddInstance::new(g, 0, 10, all(12));
        let opts = DbddOptions {
            bound: false,
            deadline: Some(Instant::now()),
            check_every: 1,
            node_limit: u64::MAX,
            ..DbddOptions::default()
        };
        assert_eq!(dbdd_search(&inst, &opts, &mut SearchStats::default()), DbddOutcome::Aborted);
    }
}
