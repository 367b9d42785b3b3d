//! Subproblem kernelization and the partition lower bound for bdd.

use crate::bitset::{count_and, count_and3, BitSet, DenseGraph};
use crate::graph::Vertex;

/// One anchored subproblem: find a k-plex of size at least `p` that
/// contains every `anchor` vertex, inside the `alive` part of `graph`.
#[derive(Clone, Debug)]
pub struct Subproblem {
    pub graph: DenseGraph,
    pub alive: BitSet,
    /// Vertices forced into the solution (`{v_i} ∪ S` or `{u, v} ∪ S`).
    pub anchor: Vec<usize>,
    /// The anchor vertex or both edge endpoints; drives the anchored phases.
    pub seeds: Vec<usize>,
    /// Deletable vertices for the bdd search.
    pub candidates: BitSet,
    /// Original id of each local vertex.
    pub origin: Vec<Vertex>,
    pub p: usize,
    pub k: usize,
}

impl Subproblem {
    pub fn is_empty(&self) -> bool {
        self.alive.is_empty()
    }

    pub fn len(&self) -> usize {
        self.alive.len()
    }

    /// Original ids of the alive vertices.
    pub fn vertices(&self) -> Vec<Vertex> {
        self.alive.iter().map(|v| self.origin[v]).collect()
    }

    fn kill(&mut self, v: usize) {
        self.alive.remove(v);
        self.candidates.remove(v);
    }

    fn neighbors(&self, v: usize) -> BitSet {
        let mut s = self.graph.neighbor_set(v);
        s.intersect_with(&self.alive);
        s
    }
}

/// Signed form of a threshold like `p - 2k + 2`.
#[inline]
fn thr(p: usize, minus: usize, plus: usize) -> i64 {
    p as i64 - minus as i64 + plus as i64
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ReductionLevel {
    /// Only the vertex degree rule.
    FirstOrder,
    /// All phases plus the higher-order anchor test.
    Full,
}

/// Applies the reduction phases until nothing changes, then tests the
/// anchor. Returns the subproblem with an empty vertex set when no k-plex
/// of size `p` containing the anchor can exist.
pub fn reduce_subproblem(sub: Subproblem) -> Subproblem {
    reduce_subproblem_with(sub, ReductionLevel::Full)
}

pub fn reduce_subproblem_with(mut sub: Subproblem, level: ReductionLevel) -> Subproblem {
    loop {
        let mut changed = phase_global(&mut sub, level);
        if level == ReductionLevel::Full {
            for i in 0..sub.seeds.len() {
                let seed = sub.seeds[i];
                if !sub.alive.contains(seed) {
                    break;
                }
                changed |= phase_hop1(&mut sub, seed);
                changed |= phase_hop2(&mut sub, seed);
            }
        }
        if !changed {
            break;
        }
    }
    let anchor_alive = sub.anchor.iter().all(|&v| sub.alive.contains(v));
    let passes = anchor_alive && (level == ReductionLevel::FirstOrder || higher_order_check(&sub.graph, &sub.alive, &sub.anchor, sub.k, sub.p));
    if !passes {
        sub.alive.clear();
        sub.candidates.clear();
    }
    sub
}

/// Degree rule for vertices and common-neighbor rule for edges.
fn phase_global(sub: &mut Subproblem, level: ReductionLevel) -> bool {
    let (p, k) = (sub.p, sub.k);
    let mut changed = false;
    loop {
        let mut round = false;
        for u in sub.alive.to_vec() {
            if (sub.graph.degree_in(u, &sub.alive) as i64) < thr(p, k, 0) {
                sub.kill(u);
                round = true;
            }
        }
        if level == ReductionLevel::Full {
            let limit = thr(p, 2 * k, 0);
            if limit > 0 {
                for u in sub.alive.to_vec() {
                    for v in sub.neighbors(u).iter().filter(|&v| v > u) {
                        let common = count_and3(sub.graph.row(u), sub.graph.row(v), sub.alive.words());
                        if (common as i64) < limit {
                            sub.graph.remove_edge(u, v);
                            round = true;
                        }
                    }
                }
            }
        }
        if !round {
            return changed;
        }
        changed = true;
    }
}

/// Rules for neighbors of `seed`, which must be in every solution.
fn phase_hop1(sub: &mut Subproblem, seed: usize) -> bool {
    let (p, k) = (sub.p, sub.k);
    let hop1 = sub.neighbors(seed);
    let mut changed = false;
    loop {
        let mut round = false;
        for u in hop1.iter() {
            if !sub.alive.contains(u) {
                continue;
            }
            let c = count_and3(sub.graph.row(seed), sub.graph.row(u), sub.alive.words());
            if (c as i64) < thr(p, 2 * k, 0) {
                sub.kill(u);
                round = true;
            }
        }
        let limit = thr(p, 3 * k, 0);
        if limit > 0 {
            let mut seed_nb = sub.graph.neighbor_set(seed);
            seed_nb.intersect_with(&sub.alive);
            for u in hop1.iter().filter(|&u| sub.alive.contains(u)) {
                let adjacent: Vec<usize> = hop1
                    .iter()
                    .filter(|&v| v > u && sub.alive.contains(v) && sub.graph.has_edge(u, v))
                    .collect();
                for v in adjacent {
                    let c = count_and3(seed_nb.words(), sub.graph.row(u), sub.graph.row(v));
                    if (c as i64) < limit {
                        sub.graph.remove_edge(u, v);
                        round = true;
                    }
                }
            }
        }
        if !round {
            return changed;
        }
        changed = true;
    }
}

/// Rules for vertices two hops from `seed`.
fn phase_hop2(sub: &mut Subproblem, seed: usize) -> bool {
    let (p, k) = (sub.p, sub.k);
    let hop1 = sub.neighbors(seed);
    let mut hop2 = sub.alive.clone();
    hop2.difference_with(&hop1);
    hop2.remove(seed);
    let mut changed = false;
    loop {
        let mut round = false;
        for u in hop2.iter() {
            if !sub.alive.contains(u) {
                continue;
            }
            let c = count_and3(sub.graph.row(seed), sub.graph.row(u), sub.alive.words());
            if (c as i64) < thr(p, 2 * k, 2) {
                sub.kill(u);
                round = true;
            }
        }
        let mut seed_nb = sub.graph.neighbor_set(seed);
        seed_nb.intersect_with(&sub.alive);
        let (l12, l22) = (thr(p, 3 * k, 2), thr(p, 3 * k, 4));
        for u in hop2.iter().filter(|&u| sub.alive.contains(u)) {
            for v in sub.neighbors(u).iter() {
                let limit = if hop1.contains(v) {
                    l12
                } else if hop2.contains(v) && v > u {
                    l22
                } else {
                    continue;
                };
                let c = count_and3(seed_nb.words(), sub.graph.row(u), sub.graph.row(v));
                if (c as i64) < limit {
                    sub.graph.remove_edge(u, v);
                    round = true;
                }
            }
        }
        if !round {
            return changed;
        }
        changed = true;
    }
}

/// False iff the common neighborhood of `set` is too small for `set` to
/// lie in a k-plex of size `p`: `|N(P)| < p - nk + n(n-1) - 2λ`.
pub fn higher_order_check(g: &DenseGraph, alive: &BitSet, set: &[usize], k: usize, p: usize) -> bool {
    let n = set.len();
    if n == 0 {
        return true;
    }
    let mut common = alive.clone();
    let mut lambda = 0usize;
    for (i, &u) in set.iter().enumerate() {
        common.intersect_words(g.row(u));
        lambda += set[i + 1..].iter().filter(|&&v| g.has_edge(u, v)).count();
    }
    for &u in set {
        common.remove(u);
    }
    let need = p as i64 - (n * k) as i64 + (n * (n - 1)) as i64 - 2 * lambda as i64;
    common.len() as i64 >= need
}

/// Lower bound on the number of candidates that any valid bdd deletion
/// inside `c` must remove.
///
/// Pivots are the alive non-candidates, taken by decreasing number of
/// non-candidate neighbors; each claims its still-unclaimed candidate
/// neighbors as a block, of which at most `d - δ` can survive.
pub fn partition_bound(g: &DenseGraph, alive: &BitSet, d: usize, c: &BitSet, clamp: bool) -> i64 {
    let mut s = alive.clone();
    s.difference_with(c);
    let mut pivots: Vec<(usize, usize)> = s.iter().map(|v| (count_and(g.row(v), s.words()), v)).collect();
    pivots.sort_by(|a, b| b.0.cmp(&a.0).then(a.1.cmp(&b.1)));
    let mut rest = c.clone();
    rest.intersect_with(alive);
    let total = rest.len() as i64;
    let mut kept = 0i64;
    for (delta, v) in pivots {
        if rest.is_empty() {
            break;
        }
        let block = count_and(rest.words(), g.row(v)) as i64;
        let mut term = (d as i64 - delta as i64).min(block);
        if clamp {
            term = term.max(0);
        }
        kept += term;
        rest.difference_words(g.row(v));
    }
    total - rest.len() as i64 - kept
}
