//! Compact undirected simple graph in CSR layout, with edge-list and DIMACS parsing.

use std::collections::HashMap;
use std::io::BufRead;
use std::path::Path;

use crate::error::{GraphError, Result};
use crate::bitset::DenseGraph;

/// Internal vertex id. Dense, 0-based.
pub type Vertex = u32;

/// Input file flavour understood by [`Graph::parse`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum GraphFormat {
    /// Whitespace separated vertex pairs, `#`/`%` comment lines.
    EdgeList,
    /// `p edge n m` header followed by 1-indexed `e u v` lines.
    Dimacs,
}

impl GraphFormat {
    /// `.clq` and `.dimacs` files are DIMACS, everything else an edge list.
    pub fn detect(path: &Path) -> GraphFormat {
        match path
            .extension()
            .and_then(|e| e.to_str())
            .map(|e| e.to_ascii_lowercase())
            .as_deref()
        {
            Some("clq") | Some("dimacs") => GraphFormat::Dimacs,
            _ => GraphFormat::EdgeList,
        }
    }
}

/// Immutable undirected simple graph.
///
/// Neighbor lists are stored contiguously and each is strictly sorted.
/// `labels[v]` is the identifier `v` had in the input file.
#[derive(Clone, PartialEq, Eq)]
pub struct Graph {
    offsets: Vec<usize>,
    adj: Vec<Vertex>,
    labels: Option<Vec<u64>>,
}

impl Graph {
    /// Builds a graph on `n` vertices. Self-loops are dropped, duplicates
    /// merged and every edge symmetrized.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Graph>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        if n > Vertex::MAX as usize {
            return Err(GraphError::IdOverflow(n as u64));
        }
        let mut pairs: Vec<(Vertex, Vertex)> = Vec::new();
        for (u, v) in edges {
            if u >= n || v >= n {
                return Err(GraphError::VertexOutOfRange {
                    vertex: u.max(v),
                    n,
                });
            }
            if u == v {
                continue;
            }
            pairs.push((u as Vertex, v as Vertex));
            pairs.push((v as Vertex, u as Vertex));
        }
        pairs.sort_unstable();
        pairs.dedup();
        let mut offsets = vec![0usize; n + 1];
        for &(u, _) in &pairs {
            offsets[u as usize + 1] += 1;
        }
        for i in 0..n {
            offsets[i + 1] += offsets[i];
        }
        let adj = pairs.into_iter().map(|(_, v)| v).collect();
        let g = Graph {
            offsets,
            adj,
            labels: None,
        };
        debug_assert!(g.check_invariants());
        Ok(g)
    }

    /// Attaches original vertex identifiers.
    pub fn with_labels(mut self, labels: Vec<u64>) -> Graph {
        assert_eq!(labels.len(), self.n(), "one label per vertex");
        self.labels = Some(labels);
        self
    }

    pub fn empty(n: usize) -> Graph {
        Graph {
            offsets: vec![0; n + 1],
            adj: Vec::new(),
            labels: None,
        }
    }

    pub fn complete(n: usize) -> Graph {
        Graph::from_edges(n, (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))))
            .expect("ids in range")
    }

    pub fn cycle(n: usize) -> Graph {
        Graph::from_edges(n, (0..n).map(|u| (u, (u + 1) % n))).expect("ids in range")
    }

    pub fn path(n: usize) -> Graph {
        Graph::from_edges(n, (1..n).map(|u| (u - 1, u))).expect("ids in range")
    }

    pub fn star(leaves: usize) -> Graph {
        Graph::from_edges(leaves + 1, (1..=leaves).map(|u| (0, u))).expect("ids in range")
    }

    /// Reads `path`, picking the format from the extension.
    pub fn from_file(path: &Path, format: Option<GraphFormat>) -> Result<Graph> {
        let format = format.unwrap_or_else(|| GraphFormat::detect(path));
        let file = std::fs::File::open(path).map_err(|source| GraphError::Io {
            path: path.display().to_string(),
            source,
        })?;
        Graph::parse(std::io::BufReader::new(file), format)
    }

    pub fn parse<R: BufRead>(reader: R, format: GraphFormat) -> Result<Graph> {
        match format {
            GraphFormat::EdgeList => parse_edge_list(reader),
            GraphFormat::Dimacs => parse_dimacs(reader),
        }
    }

    pub fn parse_str(text: &str, format: GraphFormat) -> Result<Graph> {
        Graph::parse(text.as_bytes(), format)
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.offsets.len() - 1
    }

    #[inline]
    pub fn m(&self) -> usize {
        self.adj.len() / 2
    }

    #[inline]
    pub fn neighbors(&self, v: Vertex) -> &[Vertex] {
        let v = v as usize;
        &self.adj[self.offsets[v]..self.offsets[v + 1]]
    }

    /// Position of `v`'s neighbor list inside the flat adjacency array.
    #[inline]
    pub(crate) fn offset(&self, v: Vertex) -> usize {
        self.offsets[v as usize]
    }

    #[inline]
    pub fn degree(&self, v: Vertex) -> usize {
        let v = v as usize;
        self.offsets[v + 1] - self.offsets[v]
    }

    pub fn max_degree(&self) -> usize {
        (0..self.n() as Vertex).map(|v| self.degree(v)).max().unwrap_or(0)
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        let (a, b) = if self.degree(u) <= self.degree(v) { (u, v) } else { (v, u) };
        self.neighbors(a).binary_search(&b).is_ok()
    }

    /// Original identifier of `v` (the internal id when no labels are attached).
    pub fn label(&self, v: Vertex) -> u64 {
        match &self.labels {
            Some(l) => l[v as usize],
            None => v as u64,
        }
    }

    pub fn labels(&self) -> Option<&[u64]> {
        self.labels.as_deref()
    }

    /// Edges `{u, v}` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
        (0..self.n() as Vertex).flat_map(move |u| {
            self.neighbors(u)
                .iter()
                .copied()
                .filter(move |&v| v > u)
                .map(move |v| (u, v))
        })
    }

    fn check_vertex(&self, v: Vertex) -> Result<()> {
        if (v as usize) < self.n() {
            Ok(())
        } else {
            Err(GraphError::VertexOutOfRange {
                vertex: v as usize,
                n: self.n(),
            })
        }
    }

    /// Subgraph induced by `set`. Vertex `i` of the result is `set[i]` of
    /// `self` (after sorting and deduplication), which is also returned.
    pub fn induced_subgraph(&self, set: &[Vertex]) -> Result<(Graph, Vec<Vertex>)> {
        let mut members: Vec<Vertex> = set.to_vec();
        members.sort_unstable();
        members.dedup();
        for &v in &members {
            self.check_vertex(v)?;
        }
        let mut local = HashMap::with_capacity(members.len());
        for (i, &v) in members.iter().enumerate() {
            local.insert(v, i);
        }
        let mut edges = Vec::new();
        for (i, &v) in members.iter().enumerate() {
            for w in self.neighbors(v) {
                if let Some(&j) = local.get(w) {
                    if i < j {
                        edges.push((i, j));
                    }
                }
            }
        }
        let mut g = Graph::from_edges(members.len(), edges)?;
        g.labels = Some(members.iter().map(|&v| self.label(v)).collect());
        Ok((g, members))
    }

    /// Complement graph on the same vertex set.
    pub fn complement(&self) -> Graph {
        let n = self.n();
        let mut edges = Vec::new();
        for u in 0..n as Vertex {
            let nb = self.neighbors(u);
            let mut it = nb.iter().peekable();
            for v in u + 1..n as Vertex {
                while it.peek().is_some_and(|&&w| w < v) {
                    it.next();
                }
                if it.peek() != Some(&&v) {
                    edges.push((u as usize, v as usize));
                }
            }
        }
        let mut g = Graph::from_edges(n, edges).expect("ids in range");
        g.labels = self.labels.clone();
        g
    }

    /// Dense bit-matrix copy, for graphs small enough to afford n² bits.
    pub fn to_dense(&self) -> DenseGraph {
        DenseGraph::from_edges(self.n(), self.edges().map(|(u, v)| (u as usize, v as usize)))
    }

    /// Vertices at distance exactly two from `v`.
    pub fn two_hop_neighbors(&self, v: Vertex) -> Result<Vec<Vertex>> {
        self.check_vertex(v)?;
        let mut mark = vec![false; self.n()];
        mark[v as usize] = true;
        for &u in self.neighbors(v) {
            mark[u as usize] = true;
        }
        let mut out = Vec::new();
        for &u in self.neighbors(v) {
            for &w in self.neighbors(u) {
                if !mark[w as usize] {
                    mark[w as usize] = true;
                    out.push(w);
                }
            }
        }
        out.sort_unstable();
        Ok(out)
    }

    fn check_edge(&self, u: Vertex, v: Vertex) -> Result<()> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        if u == v || !self.has_edge(u, v) {
            return Err(GraphError::NotAnEdge(u as usize, v as usize));
        }
        Ok(())
    }

    /// Common neighbors of the endpoints of edge `{u, v}`.
    pub fn edge_common_neighbors(&self, u: Vertex, v: Vertex) -> Result<Vec<Vertex>> {
        self.check_edge(u, v)?;
        Ok(intersect_sorted(self.neighbors(u), self.neighbors(v)))
    }

    /// Two-hop neighbors of edge `{u, v}`: vertices at distance two from `u`
    /// or `v`, minus the edge itself and its common neighbors.
    pub fn edge_two_hop(&self, u: Vertex, v: Vertex) -> Result<Vec<Vertex>> {
        self.check_edge(u, v)?;
        let common = intersect_sorted(self.neighbors(u), self.neighbors(v));
        let mut out: Vec<Vertex> = self
            .two_hop_neighbors(u)?
            .into_iter()
            .chain(self.two_hop_neighbors(v)?)
            .filter(|&w| w != u && w != v && common.binary_search(&w).is_err())
            .collect();
        out.sort_unstable();
        out.dedup();
        Ok(out)
    }

    /// Symmetry, sortedness and simplicity of the adjacency structure.
    pub fn check_invariants(&self) -> bool {
        let n = self.n() as Vertex;
        for u in 0..n {
            let nb = self.neighbors(u);
            if nb.windows(2).any(|w| w[0] >= w[1]) {
                return false;
            }
            for &v in nb {
                if v == u || v >= n || self.neighbors(v).binary_search(&u).is_err() {
                    return false;
                }
            }
        }
        self.adj.len() % 2 == 0
    }
}

impl std::fmt::Debug for Graph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Graph")
            .field("n", &self.n())
            .field("m", &self.m())
            .finish()
    }
}

pub(crate) fn intersect_sorted(a: &[Vertex], b: &[Vertex]) -> Vec<Vertex> {
    let (mut i, mut j) = (0, 0);
    let mut out = Vec::new();
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                out.push(a[i]);
                i += 1;
                j += 1;
            }
        }
    }
    out
}

fn parse_id(tok: &str, line: usize) -> Result<u64> {
    tok.parse::<u64>().map_err(|e| match e.kind() {
        std::num::IntErrorKind::PosOverflow => GraphError::Parse {
            line,
            msg: format!("vertex id `{tok}` overflows"),
        },
        _ => GraphError::Parse {
            line,
            msg: format!("expected a vertex id, found `{tok}`"),
        },
    })
}

fn io_err(e: std::io::Error) -> GraphError {
    GraphError::Io {
        path: "<stream>".into(),
        source: e,
    }
}

fn parse_edge_list<R: BufRead>(reader: R) -> Result<Graph> {
    let mut raw: Vec<(u64, u64)> = Vec::new();
    for (idx, line) in reader.lines().enumerate() {
        let line = line.map_err(io_err)?;
        let lineno = idx + 1;
        let t = line.trim();
        if t.is_empty() || t.starts_with('#') || t.starts_with('%') {
            continue;
        }
        let mut toks = t.split(|c: char| c.is_whitespace() || c == ',').filter(|s| !s.is_empty());
        let (a, b) = match (toks.next(), toks.next()) {
            (Some(a), Some(b)) => (a, b),
            _ => {
                return Err(GraphError::Parse {
                    line: lineno,
                    msg: "expected two vertex ids".into(),
                })
            }
        };
        raw.push((parse_id(a, lineno)?, parse_id(b, lineno)?));
    }
    let min = raw.iter().map(|&(a, b)| a.min(b)).min();
    if min == Some(0) {
        // 0-based input keeps its ids; gaps become isolated vertices.
        let max = raw.iter().map(|&(a, b)| a.max(b)).max().unwrap_or(0);
        if max >= Vertex::MAX as u64 {
            return Err(GraphError::IdOverflow(max));
        }
        let n = max as usize + 1;
        let g = Graph::from_edges(n, raw.iter().map(|&(a, b)| (a as usize, b as usize)))?;
        return Ok(g.with_labels((0..n as u64).collect()));
    }
    let mut ids: Vec<u64> = raw.iter().flat_map(|&(a, b)| [a, b]).collect();
    ids.sort_unstable();
    ids.dedup();
    if ids.len() >= Vertex::MAX as usize {
        return Err(GraphError::IdOverflow(ids.len() as u64));
    }
    let index: HashMap<u64, usize> = ids.iter().enumerate().map(|(i, &l)| (l, i)).collect();
    let g = Graph::from_edges(ids.len(), raw.iter().map(|(a, b)| (index[a], index[b])))?;
    Ok(g.with_labels(ids))
}

fn parse_dimacs<R: BufRead>(reader: R) -> Result<Graph> {
    let mut n: Option<usize> = None;
    let mut edges = Vec::new();
    for (idx, line) in reader.lines().enumerate() {
        let line = line.map_err(io_err)?;
        let lineno = idx + 1;
        let t = line.trim();
        if t.is_empty() || t.starts_with('c') || t.starts_with('%') || t.starts_with('#') {
            continue;
        }
        let toks: Vec<&str> = t.split_whitespace().collect();
        match toks[0] {
            "p" => {
                if toks.len() < 4 {
                    return Err(GraphError::Parse {
                        line: lineno,
                        msg: "expected `p edge <n> <m>`".into(),
                    });
                }
                let count = parse_id(toks[2], lineno)?;
                if count >= Vertex::MAX as u64 {
                    return Err(GraphError::IdOverflow(count));
                }
                n = Some(count as usize);
            }
            "e" | "a" => {
                let nv = n.ok_or(GraphError::Parse {
                    line: lineno,
                    msg: "edge before `p` header".into(),
                })?;
                if toks.len() < 3 {
                    return Err(GraphError::Parse {
                        line: lineno,
                        msg: "expected `e <u> <v>`".into(),
                    });
                }
                let u = parse_id(toks[1], lineno)?;
                let v = parse_id(toks[2], lineno)?;
                if u == 0 || v == 0 || u > nv as u64 || v > nv as u64 {
                    return Err(GraphError::Parse {
                        line: lineno,
                        msg: format!("vertex out of range 1..={nv}"),
                    });
                }
                edges.push((u as usize - 1, v as usize - 1));
            }
            other => {
                return Err(GraphError::Parse {
                    line: lineno,
                    msg: format!("unknown line type `{other}`"),
                })
            }
        }
    }
    let n = n.ok_or(GraphError::Parse {
        line: 0,
        msg: "missing `p` header".into(),
    })?;
    let g = Graph::from_edges(n, edges)?;
    Ok(g.with_labels((1..=n as u64).collect()))
}
