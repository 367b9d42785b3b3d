//! Peeling orders: degeneracy (vertices) and community-degeneracy (edges).
//!
//! Both peels break ties on the smallest id so runs are reproducible.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use crate::graph::{Graph, Vertex};

/// Vertex order produced by repeatedly removing a minimum-degree vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VertexOrdering {
    order: Vec<Vertex>,
    position: Vec<usize>,
    /// Degree of each vertex in the remaining graph at the moment it was
    /// peeled, i.e. `|N⁺(v)|`. Indexed by vertex.
    forward_degree: Vec<usize>,
    degeneracy: usize,
}

impl VertexOrdering {
    pub fn order(&self) -> &[Vertex] {
        &self.order
    }

    pub fn position(&self, v: Vertex) -> usize {
        self.position[v as usize]
    }

    pub fn degeneracy(&self) -> usize {
        self.degeneracy
    }

    pub fn forward_degree(&self, v: Vertex) -> usize {
        self.forward_degree[v as usize]
    }

    /// `N(v) ∩ {later vertices}`, sorted by id.
    pub fn forward_neighbors(&self, g: &Graph, v: Vertex) -> Vec<Vertex> {
        let pos = self.position(v);
        g.neighbors(v)
            .iter()
            .copied()
            .filter(|&w| self.position(w) > pos)
            .collect()
    }

    /// `N²(v) ∩ {later vertices}`, sorted by id.
    pub fn forward_two_hop(&self, g: &Graph, v: Vertex) -> Vec<Vertex> {
        let pos = self.position(v);
        g.two_hop_neighbors(v)
            .expect("vertex of this graph")
            .into_iter()
            .filter(|&w| self.position(w) > pos)
            .collect()
    }
}

pub fn degeneracy_ordering(g: &Graph) -> VertexOrdering {
    let n = g.n();
    let mut deg: Vec<usize> = (0..n as Vertex).map(|v| g.degree(v)).collect();
    let mut removed = vec![false; n];
    let mut heap: BinaryHeap<Reverse<(usize, Vertex)>> =
        (0..n as Vertex).map(|v| Reverse((deg[v as usize], v))).collect();
    let mut order = Vec::with_capacity(n);
    let mut position = vec![0; n];
    let mut forward_degree = vec![0; n];
    let mut degeneracy = 0;
    while let Some(Reverse((d, v))) = heap.pop() {
        let vi = v as usize;
        if removed[vi] || d != deg[vi] {
            continue;
        }
        removed[vi] = true;
        position[vi] = order.len();
        order.push(v);
        forward_degree[vi] = d;
        degeneracy = degeneracy.max(d);
        for &w in g.neighbors(v) {
            let wi = w as usize;
            if !removed[wi] {
                deg[wi] -= 1;
                heap.push(Reverse((deg[wi], w)));
            }
        }
    }
    VertexOrdering {
        order,
        position,
        forward_degree,
        degeneracy,
    }
}

/// Largest suffix of the degeneracy peel that is a k-plex.
///
/// When `v_i` is peeled it has minimum degree among the remaining
/// `n - i` vertices, so the suffix is a k-plex iff
/// `|N⁺(v_i)| >= n - i - k`.
pub fn greedy_lower_bound(g: &Graph, k: usize) -> Vec<Vertex> {
    greedy_lower_bound_from(&degeneracy_ordering(g), k)
}

pub fn greedy_lower_bound_from(ord: &VertexOrdering, k: usize) -> Vec<Vertex> {
    assert!(k >= 1, "k must be positive");
    let n = ord.order.len();
    for (i, &v) in ord.order.iter().enumerate() {
        if ord.forward_degree(v) + k >= n - i {
            let mut out = ord.order[i..].to_vec();
            out.sort_unstable();
            return out;
        }
    }
    Vec::new()
}

/// Edge order produced by repeatedly removing an edge whose endpoints have
/// the fewest common neighbors in the remaining graph.
#[derive(Clone, Debug)]
pub struct EdgeOrdering {
    /// Endpoints `(u, v)`, `u < v`, in peel order.
    order: Vec<(Vertex, Vertex)>,
    /// Peel position of the edge stored in each adjacency slot of the graph.
    slot_position: Vec<usize>,
    /// Number of common neighbors at removal time, by peel position.
    forward_common: Vec<usize>,
    community_degeneracy: usize,
}

impl EdgeOrdering {
    pub fn order(&self) -> &[(Vertex, Vertex)] {
        &self.order
    }

    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }

    pub fn community_degeneracy(&self) -> usize {
        self.community_degeneracy
    }

    /// `|N⁺(e_i)|`: common neighbors of `e_i` in the suffix subgraph.
    pub fn forward_common(&self, i: usize) -> usize {
        self.forward_common[i]
    }

    /// Neighbors of `x` in the subgraph spanned by edges `e_i, e_{i+1}, ...`.
    fn suffix_neighbors<'a>(&'a self, g: &'a Graph, x: Vertex, i: usize) -> impl Iterator<Item = Vertex> + 'a {
        let base = g.offset(x);
        g.neighbors(x)
            .iter()
            .enumerate()
            .filter(move |(j, _)| self.slot_position[base + j] >= i)
            .map(|(_, &w)| w)
    }

    /// `(N⁺(e_i), N²⁺(e_i))`, both evaluated in the subgraph spanned by the
    /// suffix `e_i, ..., e_|E|` and sorted by id.
    pub fn forward_edge_sets(&self, g: &Graph, i: usize) -> (Vec<Vertex>, Vec<Vertex>) {
        let (u, v) = self.order[i];
        let mut mark = vec![0u8; g.n()];
        const NU: u8 = 1;
        const NV: u8 = 2;
        for w in self.suffix_neighbors(g, u, i) {
            mark[w as usize] |= NU;
        }
        for w in self.suffix_neighbors(g, v, i) {
            mark[w as usize] |= NV;
        }
        let common: Vec<Vertex> = (0..g.n() as Vertex)
            .filter(|&w| mark[w as usize] == NU | NV)
            .collect();
        // Distance <= 2 from either endpoint, minus the edge and N(e).
        let mut seen = vec![false; g.n()];
        seen[u as usize] = true;
        seen[v as usize] = true;
        for &w in &common {
            seen[w as usize] = true;
        }
        let mut two_hop = Vec::new();
        for a in [u, v] {
            for x in self.suffix_neighbors(g, a, i) {
                if !seen[x as usize] {
                    seen[x as usize] = true;
                    two_hop.push(x);
                }
                for w in self.suffix_neighbors(g, x, i) {
                    if !seen[w as usize] {
                        seen[w as usize] = true;
                        two_hop.push(w);
                    }
                }
            }
        }
        two_hop.sort_unstable();
        (common, two_hop)
    }
}

pub fn community_degeneracy_ordering(g: &Graph) -> EdgeOrdering {
    let m = g.m();
    let slots = 2 * m;
    // Edge id per adjacency slot; edge ids follow `Graph::edges` order.
    let mut slot_edge = vec![u32::MAX; slots];
    let mut endpoints = Vec::with_capacity(m);
    for u in 0..g.n() as Vertex {
        let base = g.offset(u);
        for (j, &v) in g.neighbors(u).iter().enumerate() {
            if v > u {
                slot_edge[base + j] = endpoints.len() as u32;
                endpoints.push((u, v));
            }
        }
    }
    for u in 0..g.n() as Vertex {
        let base = g.offset(u);
        for (j, &v) in g.neighbors(u).iter().enumerate() {
            if v < u {
                let back = g.offset(v) + g.neighbors(v).binary_search(&u).expect("symmetric");
                slot_edge[base + j] = slot_edge[back];
            }
        }
    }
    let mut alive = vec![true; m];
    // Calls `f(slot_in_u, slot_in_v)` for every common neighbor reached
    // through two alive edges.
    let for_common = |u: Vertex, v: Vertex, alive: &[bool], f: &mut dyn FnMut(usize, usize)| {
        let (nu, nv) = (g.neighbors(u), g.neighbors(v));
        let (bu, bv) = (g.offset(u), g.offset(v));
        let (mut i, mut j) = (0, 0);
        while i < nu.len() && j < nv.len() {
            match nu[i].cmp(&nv[j]) {
                std::cmp::Ordering::Less => i += 1,
                std::cmp::Ordering::Greater => j += 1,
                std::cmp::Ordering::Equal => {
                    let (su, sv) = (bu + i, bv + j);
                    if alive[slot_edge[su] as usize] && alive[slot_edge[sv] as usize] {
                        f(su, sv);
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
    };
    let mut count = vec![0usize; m];
    for (e, &(u, v)) in endpoints.iter().enumerate() {
        let mut c = 0;
        for_common(u, v, &alive, &mut |_, _| c += 1);
        count[e] = c;
    }
    let mut heap: BinaryHeap<Reverse<(usize, u32)>> =
        (0..m as u32).map(|e| Reverse((count[e as usize], e))).collect();
    let mut order = Vec::with_capacity(m);
    let mut edge_position = vec![0usize; m];
    let mut forward_common = Vec::with_capacity(m);
    let mut cd = 0;
    let mut touched = Vec::new();
    while let Some(Reverse((c, e))) = heap.pop() {
        let ei = e as usize;
        if !alive[ei] || c != count[ei] {
            continue;
        }
        let (u, v) = endpoints[ei];
        edge_position[ei] = order.len();
        order.push((u, v));
        forward_common.push(c);
        cd = cd.max(c);
        alive[ei] = false;
        touched.clear();
        for_common(u, v, &alive, &mut |su, sv| {
            touched.push(slot_edge[su]);
            touched.push(slot_edge[sv]);
        });
        for &f in &touched {
            count[f as usize] -= 1;
            heap.push(Reverse((count[f as usize], f)));
        }
    }
    let slot_position = slot_edge.iter().map(|&e| edge_position[e as usize]).collect();
    EdgeOrdering {
        order,
        slot_position,
        forward_common,
        community_degeneracy: cd,
    }
}
