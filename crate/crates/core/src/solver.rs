//! Exact maximum k-plex search.
//!
//! The search space is split by anchors: each vertex (or edge) of a
//! peeling order, together with at most `k - 1` (or `2k - 2`) vertices two
//! hops away, is forced into the solution and the rest of the subproblem
//! is decided by a bounded-degree-deletion search on its complement.

use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};

use crate::bitset::{BitSet, DenseGraph};
use crate::dbdd::{dbdd_search, DbddInstance, DbddOptions, DbddOutcome, SearchStats};
use crate::graph::{Graph, Vertex};
use crate::ordering::{community_degeneracy_ordering, degeneracy_ordering, greedy_lower_bound_from, EdgeOrdering, VertexOrdering};
use crate::reduce::{reduce_subproblem_with, ReductionLevel, Subproblem};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Strategy {
    #[default]
    Vertex,
    Edge,
    Hybrid,
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Strategy::Vertex => "vertex",
            Strategy::Edge => "edge",
            Strategy::Hybrid => "hybrid",
        })
    }
}

impl FromStr for Strategy {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "vertex" => Ok(Strategy::Vertex),
            "edge" => Ok(Strategy::Edge),
            "hybrid" => Ok(Strategy::Hybrid),
            other => Err(format!("unknown strategy '{other}' (expected vertex, edge or hybrid)")),
        }
    }
}

/// How the two-hop part `S` of an anchor is chosen.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SubsetMode {
    /// One subproblem per subset `S`.
    Enumerate,
    /// Two-hop vertices become deletable and the bdd search picks `S`.
    Branch,
    /// Enumerate while the subset count is small, branch otherwise.
    #[default]
    Auto,
}

/// Subset count above which [`SubsetMode::Auto`] switches to branching.
pub const AUTO_ENUMERATE_LIMIT: u64 = 64;

#[derive(Clone, Debug, PartialEq)]
pub struct SolverConfig {
    pub strategy: Strategy,
    pub reductions_enabled: bool,
    pub dbdd_bound_enabled: bool,
    pub clamp_bound: bool,
    pub time_limit: Duration,
    pub collect_stats: bool,
    pub compute_cd: bool,
    pub subset_mode: SubsetMode,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig {
            strategy: Strategy::Vertex,
            reductions_enabled: true,
            dbdd_bound_enabled: true,
            clamp_bound: false,
            time_limit: Duration::from_secs(1800),
            collect_stats: true,
            compute_cd: true,
            subset_mode: SubsetMode::Auto,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Optimal,
    /// No k-plex of size `2k - 1` exists.
    Trivial,
    Timeout,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Optimal => "optimal",
            Status::Trivial => "trivial",
            Status::Timeout => "timeout",
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SolveResult {
    pub status: Status,
    pub k: usize,
    pub omega_k: Option<usize>,
    /// Best k-plex found, sorted by internal id.
    pub witness: Vec<Vertex>,
    pub d: usize,
    pub cd: Option<usize>,
    pub g_k: Option<i64>,
    pub cg_k: Option<i64>,
    pub elapsed: Duration,
    pub stats: SearchStats,
    pub gamma: Option<f64>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AnchorKind {
    Vertex,
    Edge,
}

/// Picks the anchor with the smaller subspace: the vertex when
/// `|N⁺(v)| + k <= |N⁺(e)| + 2k`, the edge otherwise.
pub fn choose_anchor_hybrid(vertex_neighbors: usize, edge_neighbors: usize, k: usize) -> AnchorKind {
    if vertex_neighbors + k <= edge_neighbors + 2 * k {
        AnchorKind::Vertex
    } else {
        AnchorKind::Edge
    }
}

/// Every subset of `base` with at most `limit` elements, smallest first.
pub fn enumerate_anchor_subsets(base: &[Vertex], limit: usize) -> AnchorSubsets<'_> {
    AnchorSubsets {
        base,
        limit: limit.min(base.len()),
        idx: Vec::new(),
        started: false,
    }
}

pub struct AnchorSubsets<'a> {
    base: &'a [Vertex],
    limit: usize,
    idx: Vec<usize>,
    started: bool,
}

impl Iterator for AnchorSubsets<'_> {
    type Item = Vec<Vertex>;

    fn next(&mut self) -> Option<Vec<Vertex>> {
        if !self.started {
            self.started = true;
            return Some(Vec::new());
        }
        let n = self.base.len();
        let r = self.idx.len();
        // Advance to the next combination of the same size, else grow.
        let mut i = r;
        while i > 0 && self.idx[i - 1] == n - r + i - 1 {
            i -= 1;
        }
        if i > 0 {
            self.idx[i - 1] += 1;
            for j in i..r {
                self.idx[j] = self.idx[j - 1] + 1;
            }
        } else {
            if r + 1 > self.limit {
                return None;
            }
            self.idx = (0..r + 1).collect();
        }
        Some(self.idx.iter().map(|&i| self.base[i]).collect())
    }
}

/// Number of subsets of an `h`-set with at most `limit` elements,
/// saturating at `cap`.
fn subset_count(h: usize, limit: usize, cap: u64) -> u64 {
    let mut total = 0u64;
    let mut c = 1u64;
    for j in 0..=limit.min(h) {
        total = total.saturating_add(c);
        if total > cap {
            return total;
        }
        c = c.saturating_mul((h - j) as u64) / (j as u64 + 1);
    }
    total
}

enum Found {
    Yes(Vec<Vertex>),
    No,
    Timeout,
}

/// An anchor's search space in original ids.
struct AnchorSpace {
    seeds: Vec<Vertex>,
    plus: Vec<Vertex>,
    hop2: Vec<Vertex>,
    s_limit: usize,
}

struct Search<'a> {
    g: &'a Graph,
    k: usize,
    cfg: &'a SolverConfig,
    deadline: Option<Instant>,
    stats: SearchStats,
    mark: Vec<u32>,
    mode: SubsetMode,
    /// Per-subproblem node cap; exhausting it counts as "not found".
    node_limit: u64,
}

const UNMARKED: u32 = u32::MAX;

impl<'a> Search<'a> {
    fn new(g: &'a Graph, k: usize, cfg: &'a SolverConfig, deadline: Option<Instant>, mode: SubsetMode) -> Self {
        Search {
            g,
            k,
            cfg,
            deadline,
            stats: SearchStats::default(),
            mark: vec![UNMARKED; g.n()],
            mode,
            node_limit: u64::MAX,
        }
    }

    fn expired(&self) -> bool {
        self.deadline.is_some_and(|d| Instant::now() >= d)
    }

    fn level(&self) -> ReductionLevel {
        if self.cfg.reductions_enabled {
            ReductionLevel::Full
        } else {
            ReductionLevel::FirstOrder
        }
    }

    /// Dense copy of `G[vertices]` with local ids following `vertices`.
    fn dense(&mut self, vertices: &[Vertex]) -> DenseGraph {
        for (i, &v) in vertices.iter().enumerate() {
            self.mark[v as usize] = i as u32;
        }
        let mut dg = DenseGraph::new(vertices.len());
        for (i, &v) in vertices.iter().enumerate() {
            for &w in self.g.neighbors(v) {
                let j = self.mark[w as usize];
                if j != UNMARKED && (j as usize) > i {
                    dg.add_edge(i, j as usize);
                }
            }
        }
        for &v in vertices {
            self.mark[v as usize] = UNMARKED;
        }
        dg
    }

    /// Drops two-hop vertices with too few neighbors in `plus` to share a
    /// k-plex of size `p` with the seeds.
    fn filter_hop2(&mut self, space: &mut AnchorSpace, p: usize) {
        let k = self.k as i64;
        let need = if space.seeds.len() == 1 { p as i64 - 2 * k + 2 } else { p as i64 - 3 * k + 1 };
        if need <= 0 {
            return;
        }
        for &v in &space.plus {
            self.mark[v as usize] = 0;
        }
        let g = self.g;
        let mark = &self.mark;
        space
            .hop2
            .retain(|&w| g.neighbors(w).iter().filter(|&&x| mark[x as usize] == 0).count() as i64 >= need);
        for &v in &space.plus {
            self.mark[v as usize] = UNMARKED;
        }
    }

    fn search_anchor(&mut self, mut space: AnchorSpace, p: usize) -> Found {
        if self.expired() {
            return Found::Timeout;
        }
        let k = self.k;
        if p <= space.seeds.len() {
            return Found::Yes(space.seeds.clone());
        }
        if space.seeds.len() + space.plus.len() + space.s_limit.min(space.hop2.len()) < p {
            return Found::No;
        }
        if self.cfg.reductions_enabled {
            self.filter_hop2(&mut space, p);
        }
        let base = space.seeds.len();
        let universe: Vec<Vertex> = space.seeds.iter().chain(&space.plus).chain(&space.hop2).copied().collect();
        let nu = universe.len();
        let plus_end = base + space.plus.len();
        let mode = match self.mode {
            SubsetMode::Auto => {
                if subset_count(space.hop2.len(), space.s_limit, AUTO_ENUMERATE_LIMIT) <= AUTO_ENUMERATE_LIMIT {
                    SubsetMode::Enumerate
                } else {
                    SubsetMode::Branch
                }
            }
            m => m,
        };
        let seeds_local: Vec<usize> = (0..base).collect();
        let mut cand = BitSet::new(nu);
        for v in base..plus_end {
            cand.insert(v);
        }
        if mode == SubsetMode::Branch {
            for v in plus_end..nu {
                cand.insert(v);
            }
        }
        let sub = Subproblem {
            graph: self.dense(&universe),
            alive: BitSet::full(nu),
            anchor: seeds_local.clone(),
            seeds: seeds_local.clone(),
            candidates: cand,
            origin: universe,
            p,
            k,
        };
        let sub = reduce_subproblem_with(sub, self.level());
        if sub.is_empty() {
            return Found::No;
        }
        if mode == SubsetMode::Branch {
            return self.decide(&sub);
        }

        let mut plus_alive = sub.candidates.clone();
        plus_alive.intersect_with(&sub.alive);
        let hop2: Vec<usize> = (plus_end..nu).filter(|&v| sub.alive.contains(v)).collect();
        let mut chosen = Vec::with_capacity(space.s_limit);
        self.enumerate(&sub, &plus_alive, &hop2, 0, &mut chosen, space.s_limit)
    }

    /// Depth-first over `S ⊆ hop2`, keeping `seeds ∪ S` a k-plex.
    fn enumerate(
        &mut self,
        uni: &Subproblem,
        plus_alive: &BitSet,
        hop2: &[usize],
        from: usize,
        chosen: &mut Vec<usize>,
        limit: usize,
    ) -> Found {
        if self.expired() {
            return Found::Timeout;
        }
        let base = uni.seeds.len();
        let reachable = base + plus_alive.len() + chosen.len() + (hop2.len() - from).min(limit - chosen.len());
        if reachable < uni.p {
            return Found::No;
        }
        if base + plus_alive.len() + chosen.len() >= uni.p {
            let mut alive = plus_alive.clone();
            for &v in uni.seeds.iter().chain(chosen.iter()) {
                alive.insert(v);
            }
            let sub = Subproblem {
                graph: uni.graph.clone(),
                alive,
                anchor: uni.seeds.iter().chain(chosen.iter()).copied().collect(),
                seeds: uni.seeds.clone(),
                candidates: plus_alive.clone(),
                origin: uni.origin.clone(),
                p: uni.p,
                k: uni.k,
            };
            let sub = reduce_subproblem_with(sub, self.level());
            if !sub.is_empty() {
                match self.decide(&sub) {
                    Found::No => {}
                    other => return other,
                }
            }
        }
        if chosen.len() == limit {
            return Found::No;
        }
        for i in from..hop2.len() {
            let w = hop2[i];
            if !self.extends_kplex(uni, chosen, w) {
                continue;
            }
            chosen.push(w);
            let r = self.enumerate(uni, plus_alive, hop2, i + 1, chosen, limit);
            chosen.pop();
            match r {
                Found::No => {}
                other => return other,
            }
        }
        Found::No
    }

    /// Whether `seeds ∪ chosen ∪ {w}` is a k-plex in the universe graph.
    fn extends_kplex(&self, uni: &Subproblem, chosen: &[usize], w: usize) -> bool {
        let set: Vec<usize> = uni.seeds.iter().chain(chosen).copied().chain(std::iter::once(w)).collect();
        let need = set.len().saturating_sub(self.k);
        set.iter()
            .all(|&a| set.iter().filter(|&&b| b != a && uni.graph.has_edge(a, b)).count() >= need)
    }

    /// Runs the bdd search for one reduced subproblem.
    fn decide(&mut self, sub: &Subproblem) -> Found {
        let size = sub.alive.len();
        if size < sub.p {
            return Found::No;
        }
        let t = (size - sub.p) as i64;
        let d = self.k - 1;
        let mut cand = sub.candidates.clone();
        cand.intersect_with(&sub.alive);
        // Undeletable vertices must end with at most d non-neighbors.
        for v in sub.alive.iter().filter(|&v| !cand.contains(v)) {
            let missing = size - 1 - sub.graph.degree_in(v, &sub.alive);
            if missing as i64 > d as i64 + t {
                return Found::No;
            }
        }
        let inst = DbddInstance {
            graph: sub.graph.complement_within(&sub.alive),
            alive: sub.alive.clone(),
            d,
            t,
            candidates: cand,
            growing: Vec::new(),
        };
        let opts = DbddOptions {
            bound: self.cfg.dbdd_bound_enabled,
            clamp_bound: self.cfg.clamp_bound,
            deadline: self.deadline,
            check_every: 1024,
            node_limit: self.node_limit,
        };
        match dbdd_search(&inst, &opts, &mut self.stats) {
            DbddOutcome::Found(deleted) => {
                let mut keep = sub.alive.clone();
                for v in deleted {
                    keep.remove(v);
                }
                let mut out: Vec<Vertex> = keep.iter().map(|v| sub.origin[v]).collect();
                out.sort_unstable();
                debug_assert!(crate::oracle::is_kplex(self.g, &out, self.k));
                Found::Yes(out)
            }
            DbddOutcome::Infeasible => Found::No,
            DbddOutcome::Aborted if !self.expired() => Found::No,
            DbddOutcome::Aborted => Found::Timeout,
        }
    }

    fn vertex_space(&self, ord: &VertexOrdering, v: Vertex) -> AnchorSpace {
        AnchorSpace {
            seeds: vec![v],
            plus: ord.forward_neighbors(self.g, v),
            hop2: ord.forward_two_hop(self.g, v),
            s_limit: self.k - 1,
        }
    }

    fn edge_space(&self, eo: &EdgeOrdering, i: usize) -> AnchorSpace {
        let (u, v) = eo.order()[i];
        let (plus, hop2) = eo.forward_edge_sets(self.g, i);
        AnchorSpace {
            seeds: vec![u, v],
            plus,
            hop2,
            s_limit: 2 * self.k - 2,
        }
    }

    /// Vertex-anchored decision for a single `p`.
    fn decide_vertex(&mut self, ord: &VertexOrdering, p: usize, degree_bound: bool) -> Found {
        for &v in ord.order() {
            if degree_bound && ord.forward_degree(v) + self.k < p {
                continue;
            }
            let space = self.vertex_space(ord, v);
            match self.search_anchor(space, p) {
                Found::No => {}
                other => return other,
            }
        }
        Found::No
    }

    /// Edge-anchored decision for a single `p`.
    fn decide_edge(&mut self, eo: &EdgeOrdering, p: usize, degree_bound: bool) -> Found {
        if p <= 1 {
            return match self.g.n() {
                0 => Found::No,
                _ => Found::Yes(vec![0]),
            };
        }
        for i in 0..eo.len() {
            if degree_bound && eo.forward_common(i) + 2 * self.k < p {
                continue;
            }
            let space = self.edge_space(eo, i);
            match self.search_anchor(space, p) {
                Found::No => {}
                other => return other,
            }
        }
        Found::No
    }

    /// Interleaves both decompositions, always taking the anchor with the
    /// smaller subspace. Either decomposition alone covers every k-plex,
    /// so the scan ends as soon as one of them is exhausted.
    fn decide_hybrid(&mut self, ord: &VertexOrdering, eo: &EdgeOrdering, p: usize) -> Found {
        if p <= 1 {
            return self.decide_edge(eo, p, true);
        }
        let k = self.k;
        let verts: Vec<Vertex> = ord.order().iter().copied().filter(|&v| ord.forward_degree(v) + k >= p).collect();
        let edges: Vec<usize> = (0..eo.len()).filter(|&i| eo.forward_common(i) + 2 * k >= p).collect();
        let (mut a, mut b) = (0, 0);
        while a < verts.len() && b < edges.len() {
            let v = verts[a];
            let e = edges[b];
            let r = match choose_anchor_hybrid(ord.forward_degree(v), eo.forward_common(e), k) {
                AnchorKind::Vertex => {
                    a += 1;
                    let space = self.vertex_space(ord, v);
                    self.search_anchor(space, p)
                }
                AnchorKind::Edge => {
                    b += 1;
                    let space = self.edge_space(eo, e);
                    self.search_anchor(space, p)
                }
            };
            match r {
                Found::No => {}
                other => return other,
            }
        }
        Found::No
    }
}

/// Node caps per subproblem during the lower-bound dives, tried in turn.
const PROBE_CAPS: [u64; 3] = [64, 1024, 16384];

/// The dives get at most this fraction of the time limit.
const DIVE_SHARE: u32 = 20;

/// Work cap for [`peel_lower_bound`], in vertex-pair visits.
const PEEL_BUDGET: usize = 50_000_000;

/// Best k-plex found by peeling each anchor's forward universe: drop the
/// vertex with the fewest neighbors until a k-plex remains, then add back
/// whatever still fits. Anchors that cannot beat `floor` are skipped.
pub fn peel_lower_bound(g: &Graph, ord: &VertexOrdering, k: usize, floor: usize) -> Vec<Vertex> {
    let mut best: Vec<Vertex> = Vec::new();
    let mut spent = 0usize;
    let mut local = vec![UNMARKED; g.n()];
    for &v in ord.order() {
        if ord.forward_degree(v) + k <= best.len().max(floor) {
            continue;
        }
        let mut uni = vec![v];
        uni.extend(ord.forward_neighbors(g, v));
        uni.extend(ord.forward_two_hop(g, v));
        let n = uni.len();
        spent += n * n;
        if spent > PEEL_BUDGET {
            break;
        }
        for (i, &u) in uni.iter().enumerate() {
            local[u as usize] = i as u32;
        }
        let adj: Vec<Vec<usize>> = uni
            .iter()
            .map(|&u| {
                g.neighbors(u)
                    .iter()
                    .map(|&w| local[w as usize])
                    .filter(|&j| j != UNMARKED)
                    .map(|j| j as usize)
                    .collect()
            })
            .collect();
        for &u in &uni {
            local[u as usize] = UNMARKED;
        }
        let mut deg: Vec<usize> = adj.iter().map(Vec::len).collect();
        let mut alive = vec![true; n];
        let mut size = n;
        let mut removed = Vec::new();
        loop {
            let worst = (0..n).filter(|&i| alive[i]).min_by_key(|&i| (deg[i], i == 0)).unwrap();
            if deg[worst] + k >= size {
                break;
            }
            let x = if worst == 0 {
                match (1..n).filter(|&i| alive[i]).min_by_key(|&i| deg[i]) {
                    Some(x) => x,
                    None => break,
                }
            } else {
                worst
            };
            alive[x] = false;
            size -= 1;
            removed.push(x);
            for &y in &adj[x] {
                deg[y] -= 1;
            }
        }
        // Everything left misses at most k - 1 members, so a vertex fits
        // when it and every member it misses stay within that.
        let mut near = vec![false; n];
        for &x in removed.iter().rev() {
            if deg[x] + k <= size {
                continue;
            }
            for &y in &adj[x] {
                near[y] = true;
            }
            let fits = (0..n).all(|i| !alive[i] || near[i] || deg[i] + k > size);
            for &y in &adj[x] {
                near[y] = false;
            }
            if fits {
                alive[x] = true;
                size += 1;
                for &y in &adj[x] {
                    deg[y] += 1;
                }
            }
        }
        if size > best.len() {
            best = (0..n).filter(|&i| alive[i]).map(|i| uni[i]).collect();
        }
    }
    best.sort_unstable();
    debug_assert!(crate::oracle::is_kplex(g, &best, k));
    best
}

fn literal_config(cfg: &SolverConfig) -> SolverConfig {
    SolverConfig {
        subset_mode: SubsetMode::Enumerate,
        ..cfg.clone()
    }
}

/// Some k-plex of size at least `p`, by vertex anchors and explicit
/// enumeration of the two-hop subsets. Ignores the time limit.
pub fn kplex_decide(g: &Graph, k: usize, p: usize, cfg: &SolverConfig) -> Option<Vec<Vertex>> {
    assert!(k >= 1, "k must be positive");
    let cfg = literal_config(cfg);
    let ord = degeneracy_ordering(g);
    let mut s = Search::new(g, k, &cfg, None, SubsetMode::Enumerate);
    match s.decide_vertex(&ord, p, false) {
        Found::Yes(v) => Some(v),
        _ => None,
    }
}

/// Like [`kplex_decide`] with edge anchors in community-degeneracy order.
pub fn kplex_com_decide(g: &Graph, k: usize, p: usize, cfg: &SolverConfig) -> Option<Vec<Vertex>> {
    assert!(k >= 1, "k must be positive");
    let cfg = literal_config(cfg);
    let eo = community_degeneracy_ordering(g);
    let mut s = Search::new(g, k, &cfg, None, SubsetMode::Enumerate);
    match s.decide_edge(&eo, p, false) {
        Found::Yes(v) => Some(v),
        _ => None,
    }
}

/// Vertex-anchored decision for one `p` using the configured subset mode
/// and degree bound, with search statistics.
pub fn decide_with_stats(g: &Graph, k: usize, p: usize, cfg: &SolverConfig) -> (Option<Vec<Vertex>>, SearchStats) {
    let ord = degeneracy_ordering(g);
    let mut s = Search::new(g, k, cfg, None, cfg.subset_mode);
    let r = match s.decide_vertex(&ord, p, true) {
        Found::Yes(v) => Some(v),
        _ => None,
    };
    (r, s.stats)
}

/// Maximum k-plex, descending from the degeneracy upper bound.
pub fn maple_solve(g: &Graph, k: usize, cfg: &SolverConfig) -> SolveResult {
    assert!(k >= 1, "k must be positive");
    let start = Instant::now();
    let deadline = start.checked_add(cfg.time_limit);
    let ord = degeneracy_ordering(g);
    let d = ord.degeneracy();
    let needs_edges = cfg.strategy != Strategy::Vertex;
    let eo = (needs_edges || cfg.compute_cd).then(|| community_degeneracy_ordering(g));
    let cd = eo.as_ref().map(|e| e.community_degeneracy());

    let mut best = greedy_lower_bound_from(&ord, k);
    let peeled = peel_lower_bound(g, &ord, k, best.len());
    if peeled.len() > best.len() {
        best = peeled;
    }
    if best.len() + 1 < 2 * k {
        best.clear();
    }
    let upper = match cfg.strategy {
        Strategy::Vertex => d + k,
        Strategy::Edge => cd.unwrap_or(0) + 2 * k,
        Strategy::Hybrid => (d + k).min(cd.unwrap_or(0) + 2 * k),
    }
    .min(g.n());

    let mut search = Search::new(g, k, cfg, deadline, cfg.subset_mode);
    let mut timed_out = false;
    // Capped dives first, so the exact pass mostly has to refute.
    search.mode = SubsetMode::Branch;
    search.deadline = match (deadline, start.checked_add(cfg.time_limit / DIVE_SHARE)) {
        (Some(a), Some(b)) => Some(a.min(b)),
        (a, b) => a.or(b),
    };
    let mut level = 0;
    while best.len().max(2 * k - 2) < upper && level < PROBE_CAPS.len() {
        search.node_limit = PROBE_CAPS[level];
        match search.decide_vertex(&ord, best.len().max(2 * k - 2) + 1, true) {
            Found::Yes(w) => {
                best = w;
                level = 0;
            }
            Found::No => level += 1,
            Found::Timeout => {
                timed_out = deadline.is_some_and(|t| Instant::now() >= t);
                break;
            }
        }
    }
    search.deadline = deadline;
    search.mode = cfg.subset_mode;
    search.node_limit = u64::MAX;

    let l = best.len().max(2 * k - 2);
    for p in (l + 1..=upper).rev() {
        if timed_out {
            break;
        }
        let r = match cfg.strategy {
            Strategy::Vertex => search.decide_vertex(&ord, p, true),
            Strategy::Edge => search.decide_edge(eo.as_ref().expect("edge order"), p, true),
            Strategy::Hybrid => search.decide_hybrid(&ord, eo.as_ref().expect("edge order"), p),
        };
        match r {
            Found::Yes(w) => {
                best = w;
                break;
            }
            Found::No => {}
            Found::Timeout => timed_out = true,
        }
    }

    let (status, omega_k) = if timed_out {
        (Status::Timeout, None)
    } else if best.is_empty() {
        (Status::Trivial, None)
    } else {
        (Status::Optimal, Some(best.len()))
    };
    let g_k = omega_k.map(|w| (d + k) as i64 - w as i64);
    let cg_k = omega_k.zip(cd).map(|(w, c)| (c + 2 * k) as i64 - w as i64);
    let stats = if cfg.collect_stats { search.stats } else { SearchStats::default() };
    SolveResult {
        status,
        k,
        omega_k,
        witness: best,
        d,
        cd,
        g_k,
        cg_k,
        elapsed: start.elapsed(),
        gamma: stats.gamma(),
        stats,
    }
}
