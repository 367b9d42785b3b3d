//! Brute-force ground truth for small graphs.
//!
//! Nothing here is clever on purpose. Everything enumerates subsets with
//! bit masks and is refused above [`OracleLimit::max_vertices`].

use crate::error::{GraphError, Result};
use crate::graph::{Graph, Vertex};

pub const DEFAULT_ORACLE_LIMIT: usize = 20;
pub const MAX_ORACLE_LIMIT: usize = 24;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OracleLimit {
    max_vertices: usize,
}

impl Default for OracleLimit {
    fn default() -> Self {
        OracleLimit {
            max_vertices: DEFAULT_ORACLE_LIMIT,
        }
    }
}

impl OracleLimit {
    /// Limits above [`MAX_ORACLE_LIMIT`] are capped.
    pub fn new(max_vertices: usize) -> Self {
        OracleLimit {
            max_vertices: max_vertices.min(MAX_ORACLE_LIMIT),
        }
    }

    pub fn max_vertices(&self) -> usize {
        self.max_vertices
    }

    fn check(&self, size: usize) -> Result<()> {
        if size > self.max_vertices {
            return Err(GraphError::OracleTooLarge {
                size,
                limit: self.max_vertices,
            });
        }
        Ok(())
    }
}

/// Every member of `p` has at least `|p| - k` neighbors inside `p`.
pub fn is_kplex(g: &Graph, p: &[Vertex], k: usize) -> bool {
    let mut member = vec![false; g.n()];
    for &v in p {
        if v as usize >= g.n() || member[v as usize] {
            return false;
        }
        member[v as usize] = true;
    }
    let need = p.len().saturating_sub(k);
    p.iter()
        .all(|&v| g.neighbors(v).iter().filter(|&&w| member[w as usize]).count() >= need)
}

fn adjacency_masks(g: &Graph) -> Vec<u32> {
    (0..g.n() as Vertex)
        .map(|v| g.neighbors(v).iter().fold(0u32, |m, &w| m | 1 << w))
        .collect()
}

fn mask_to_vec(mask: u32) -> Vec<Vertex> {
    (0..32).filter(|&i| mask >> i & 1 == 1).collect()
}

/// Maximum k-plex, optionally forced to contain `anchor`.
///
/// Returns `(0, [])` when the anchor is not itself a k-plex. Among maximum
/// solutions the lexicographically smallest sorted vertex list wins.
pub fn brute_force_max_kplex(g: &Graph, k: usize, anchor: Option<&[Vertex]>) -> Result<(usize, Vec<Vertex>)> {
    brute_force_max_kplex_with_limit(g, k, anchor, OracleLimit::default())
}

pub fn brute_force_max_kplex_with_limit(
    g: &Graph,
    k: usize,
    anchor: Option<&[Vertex]>,
    limit: OracleLimit,
) -> Result<(usize, Vec<Vertex>)> {
    limit.check(g.n())?;
    assert!(k >= 1, "k must be positive");
    let adj = adjacency_masks(g);
    let anchor = anchor.unwrap_or(&[]);
    let mut start = 0u32;
    for &v in anchor {
        if v as usize >= g.n() {
            return Err(GraphError::VertexOutOfRange {
                vertex: v as usize,
                n: g.n(),
            });
        }
        start |= 1 << v;
    }
    if !mask_is_kplex(&adj, start, k) {
        return Ok((0, Vec::new()));
    }
    let mut best = start;
    extend(&adj, k, start, 0, &mut best);
    Ok((best.count_ones() as usize, mask_to_vec(best)))
}

fn mask_is_kplex(adj: &[u32], set: u32, k: usize) -> bool {
    let need = (set.count_ones() as usize).saturating_sub(k);
    mask_to_vec(set)
        .into_iter()
        .all(|v| (adj[v as usize] & set).count_ones() as usize >= need)
}

/// Depth-first over k-plexes containing `set`, adding vertices `>= from` in
/// increasing order; visits supersets in lexicographic order.
fn extend(adj: &[u32], k: usize, set: u32, from: usize, best: &mut u32) {
    for v in from..adj.len() {
        if set >> v & 1 == 1 {
            continue;
        }
        let next = set | 1 << v;
        if mask_is_kplex(adj, next, k) {
            if next.count_ones() > best.count_ones() {
                *best = next;
            }
            extend(adj, k, next, v + 1, best);
        }
    }
}

/// Smallest `|D|` with `D ⊆ c` such that `g - D` has maximum degree `<= d`;
/// `None` when even `D = c` fails.
pub fn brute_force_min_dbdd(g: &Graph, d: usize, c: &[Vertex]) -> Result<Option<usize>> {
    brute_force_min_dbdd_with_limit(g, d, c, OracleLimit::default())
}

pub fn brute_force_min_dbdd_with_limit(g: &Graph, d: usize, c: &[Vertex], limit: OracleLimit) -> Result<Option<usize>> {
    limit.check(g.n())?;
    let adj = adjacency_masks(g);
    let full: u32 = if g.n() == 32 { !0 } else { (1u32 << g.n()) - 1 };
    let cand: Vec<Vertex> = {
        let mut c = c.to_vec();
        c.sort_unstable();
        c.dedup();
        c
    };
    let mut best: Option<usize> = None;
    for pick in 0u32..(1u32 << cand.len()) {
        let size = pick.count_ones() as usize;
        if best.is_some_and(|b| size >= b) {
            continue;
        }
        let deleted = cand
            .iter()
            .enumerate()
            .filter(|&(i, _)| pick >> i & 1 == 1)
            .fold(0u32, |m, (_, &v)| m | 1 << v);
        let alive = full & !deleted;
        let ok = (0..g.n())
            .filter(|&v| alive >> v & 1 == 1)
            .all(|v| (adj[v] & alive).count_ones() as usize <= d);
        if ok {
            best = Some(size);
        }
    }
    Ok(best)
}
