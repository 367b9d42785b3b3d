//! Shared fixtures: deterministic rebuilds of small DIMACS benchmark
//! graphs and seeded random graphs.
#![allow(dead_code)]

use std::fmt::Write as _;
use std::path::PathBuf;

use kplexer::{Graph, GraphFormat};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Renders an edge list as DIMACS text with 1-based ids.
pub fn to_dimacs(n: usize, edges: &[(usize, usize)], comment: &str) -> String {
    let mut s = String::new();
    writeln!(s, "c {comment}").unwrap();
    writeln!(s, "p edge {} {}", n, edges.len()).unwrap();
    for &(u, v) in edges {
        writeln!(s, "e {} {}", u + 1, v + 1).unwrap();
    }
    s
}

fn parse(n: usize, edges: &[(usize, usize)], name: &str) -> Graph {
    Graph::parse_str(&to_dimacs(n, edges, name), GraphFormat::Dimacs).expect("generated DIMACS parses")
}

fn pairs(n: usize) -> impl Iterator<Item = (usize, usize)> {
    (0..n).flat_map(move |u| (u + 1..n).map(move |v| (u, v)))
}

/// 6-bit words, adjacent when their Hamming distance is at least 4.
pub fn hamming6_4_edges() -> (usize, Vec<(usize, usize)>) {
    let edges = pairs(64).filter(|&(u, v)| (u ^ v).count_ones() >= 4).collect();
    (64, edges)
}

/// Weight-4 words of length 8, adjacent when their Hamming distance is at least 4.
pub fn johnson8_4_4_edges() -> (usize, Vec<(usize, usize)>) {
    let words: Vec<u32> = (0u32..256).filter(|w| w.count_ones() == 4).collect();
    let edges = pairs(words.len())
        .filter(|&(u, v)| (words[u] ^ words[v]).count_ones() >= 4)
        .collect();
    (words.len(), edges)
}

/// Ring of cliques: `floor(n / (c ln n))` groups, consecutive groups fully joined.
pub fn c_fat_edges(n: usize, c: f64) -> (usize, Vec<(usize, usize)>) {
    let groups = (n as f64 / (c * (n as f64).ln())).floor() as usize;
    let (base, extra) = (n / groups, n % groups);
    let mut group_of = Vec::with_capacity(n);
    for g in 0..groups {
        let size = base + usize::from(g < extra);
        group_of.extend(std::iter::repeat(g).take(size));
    }
    let edges = pairs(n)
        .filter(|&(u, v)| {
            let (a, b) = (group_of[u], group_of[v]);
            let diff = a.abs_diff(b);
            diff <= 1 || diff == groups - 1
        })
        .collect();
    (n, edges)
}

/// Lines of the affine space AG(3,3): 117 triples covering every pair of
/// the 27 points exactly once.
pub fn steiner_triples_27() -> Vec<[usize; 3]> {
    let pt = |x: [usize; 3]| x[0] * 9 + x[1] * 3 + x[2];
    let mut lines = Vec::new();
    for a in 0..27 {
        for b in a + 1..27 {
            let xa = [a / 9, a / 3 % 3, a % 3];
            let xb = [b / 9, b / 3 % 3, b % 3];
            let xc = [0, 1, 2].map(|i| (6 - xa[i] - xb[i]) % 3);
            let c = pt(xc);
            if c > b {
                lines.push([a, b, c]);
            }
        }
    }
    lines
}

/// Clique formulation of the Steiner triple covering problem on 27 points.
///
/// One vertex per (line, point on line) plus one per point. The
/// complement joins the three vertices of each line and each
/// (line, point) vertex to its point vertex.
pub fn mann_a27_edges() -> (usize, Vec<(usize, usize)>) {
    let lines = steiner_triples_27();
    let n = lines.len() * 3 + 27;
    let point_vertex = |p: usize| lines.len() * 3 + p;
    let mut missing = vec![false; n * n];
    let mut miss = |a: usize, b: usize| {
        missing[a * n + b] = true;
        missing[b * n + a] = true;
    };
    for (i, line) in lines.iter().enumerate() {
        for j in 0..3 {
            miss(3 * i + j, 3 * i + (j + 1) % 3);
            miss(3 * i + j, point_vertex(line[j]));
        }
    }
    let edges = pairs(n).filter(|&(u, v)| !missing[u * n + v]).collect();
    (n, edges)
}

pub fn hamming6_4() -> Graph {
    let (n, e) = hamming6_4_edges();
    parse(n, &e, "hamming6-4")
}

pub fn johnson8_4_4() -> Graph {
    let (n, e) = johnson8_4_4_edges();
    parse(n, &e, "johnson8-4-4")
}

pub fn c_fat500_2() -> Graph {
    let (n, e) = c_fat_edges(500, 2.0);
    parse(n, &e, "c-fat500-2")
}

pub fn mann_a27() -> Graph {
    let (n, e) = mann_a27_edges();
    parse(n, &e, "MANN_a27")
}

/// Directory searched for benchmark files that cannot be rebuilt, such
/// as the random `C125.9`.
pub fn dimacs_dir() -> Option<PathBuf> {
    std::env::var_os("KPLEXER_DIMACS_DIR").map(PathBuf::from)
}

pub fn load_optional(name: &str) -> Option<Graph> {
    let path = dimacs_dir()?.join(name);
    Graph::from_file(&path, None).ok()
}

pub fn gnp(n: usize, p: f64, rng: &mut ChaCha8Rng) -> Graph {
    let edges: Vec<(usize, usize)> = pairs(n).filter(|_| rng.gen_bool(p)).collect();
    Graph::from_edges(n, edges).unwrap()
}

/// The fixed random suite: `count` graphs with `n` in 4..=14 and edge
/// probability cycling through 0.2, 0.5, 0.8.
pub fn random_suite(count: usize, seed: u64) -> Vec<Graph> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|i| {
            let n = rng.gen_range(4..=14);
            gnp(n, [0.2, 0.5, 0.8][i % 3], &mut rng)
        })
        .collect()
}
