//! Fixed-capacity bitsets and a dense adjacency matrix for subproblem-sized graphs.

const WORD: usize = 64;

#[inline]
fn words_for(len: usize) -> usize {
    len.div_ceil(WORD)
}

/// A set of small integers `0..capacity` backed by `u64` words.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct BitSet {
    words: Vec<u64>,
    capacity: usize,
}

impl BitSet {
    pub fn new(capacity: usize) -> Self {
        BitSet {
            words: vec![0; words_for(capacity)],
            capacity,
        }
    }

    /// Set containing every element of `0..capacity`.
    pub fn full(capacity: usize) -> Self {
        let mut s = BitSet::new(capacity);
        for w in s.words.iter_mut() {
            *w = !0;
        }
        s.trim();
        s
    }

    pub fn from_iter_with_capacity<I: IntoIterator<Item = usize>>(capacity: usize, it: I) -> Self {
        let mut s = BitSet::new(capacity);
        for x in it {
            s.insert(x);
        }
        s
    }

    fn trim(&mut self) {
        let rem = self.capacity % WORD;
        if rem != 0 {
            if let Some(last) = self.words.last_mut() {
                *last &= (1u64 << rem) - 1;
            }
        }
    }

    #[inline]
    pub fn capacity(&self) -> usize {
        self.capacity
    }

    #[inline]
    pub fn words(&self) -> &[u64] {
        &self.words
    }

    #[inline]
    pub fn insert(&mut self, x: usize) -> bool {
        debug_assert!(x < self.capacity);
        let (w, b) = (x / WORD, x % WORD);
        let was = self.words[w] >> b & 1 == 1;
        self.words[w] |= 1 << b;
        !was
    }

    #[inline]
    pub fn remove(&mut self, x: usize) -> bool {
        debug_assert!(x < self.capacity);
        let (w, b) = (x / WORD, x % WORD);
        let was = self.words[w] >> b & 1 == 1;
        self.words[w] &= !(1 << b);
        was
    }

    #[inline]
    pub fn contains(&self, x: usize) -> bool {
        x < self.capacity && self.words[x / WORD] >> (x % WORD) & 1 == 1
    }

    pub fn clear(&mut self) {
        self.words.iter_mut().for_each(|w| *w = 0);
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn iter(&self) -> Ones<'_> {
        Ones {
            words: &self.words,
            idx: 0,
            cur: self.words.first().copied().unwrap_or(0),
        }
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }

    pub fn union_with(&mut self, other: &BitSet) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= *b;
        }
    }

    pub fn intersect_with(&mut self, other: &BitSet) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= *b;
        }
    }

    pub fn difference_with(&mut self, other: &BitSet) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= !*b;
        }
    }

    pub fn intersect_words(&mut self, other: &[u64]) {
        for (a, b) in self.words.iter_mut().zip(other) {
            *a &= *b;
        }
    }

    pub fn difference_words(&mut self, other: &[u64]) {
        for (a, b) in self.words.iter_mut().zip(other) {
            *a &= !*b;
        }
    }

    pub fn is_subset(&self, other: &BitSet) -> bool {
        self.words.iter().zip(&other.words).all(|(a, b)| a & !b == 0)
    }

    pub fn is_disjoint(&self, other: &BitSet) -> bool {
        self.words.iter().zip(&other.words).all(|(a, b)| a & b == 0)
    }
}

impl std::fmt::Debug for BitSet {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// Iterator over the members of a [`BitSet`] in increasing order.
pub struct Ones<'a> {
    words: &'a [u64],
    idx: usize,
    cur: u64,
}

impl Iterator for Ones<'_> {
    type Item = usize;

    #[inline]
    fn next(&mut self) -> Option<usize> {
        loop {
            if self.cur != 0 {
                let b = self.cur.trailing_zeros() as usize;
                self.cur &= self.cur - 1;
                return Some(self.idx * WORD + b);
            }
            self.idx += 1;
            if self.idx >= self.words.len() {
                return None;
            }
            self.cur = self.words[self.idx];
        }
    }
}

#[inline]
pub(crate) fn count_and(a: &[u64], b: &[u64]) -> usize {
    a.iter().zip(b).map(|(x, y)| (x & y).count_ones() as usize).sum()
}

#[inline]
pub(crate) fn count_and3(a: &[u64], b: &[u64], c: &[u64]) -> usize {
    a.iter()
        .zip(b)
        .zip(c)
        .map(|((x, y), z)| (x & y & z).count_ones() as usize)
        .sum()
}

#[inline]
pub(crate) fn count_and_not(a: &[u64], b: &[u64], not: &[u64]) -> usize {
    a.iter()
        .zip(b)
        .zip(not)
        .map(|((x, y), z)| (x & y & !z).count_ones() as usize)
        .sum()
}

/// Symmetric adjacency matrix with one bit row per vertex.
///
/// Used for graphs of at most a few thousand vertices (the anchored
/// subproblems and their complements), where O(1) adjacency tests and
/// word-parallel neighborhood intersections dominate the running time.
#[derive(Clone, PartialEq, Eq)]
pub struct DenseGraph {
    n: usize,
    stride: usize,
    rows: Vec<u64>,
}

impl DenseGraph {
    pub fn new(n: usize) -> Self {
        let stride = words_for(n);
        DenseGraph {
            n,
            stride,
            rows: vec![0; stride * n],
        }
    }

    pub fn from_edges<I: IntoIterator<Item = (usize, usize)>>(n: usize, edges: I) -> Self {
        let mut g = DenseGraph::new(n);
        for (u, v) in edges {
            if u != v {
                g.add_edge(u, v);
            }
        }
        g
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn stride(&self) -> usize {
        self.stride
    }

    #[inline]
    pub fn row(&self, v: usize) -> &[u64] {
        &self.rows[v * self.stride..(v + 1) * self.stride]
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.rows[u * self.stride + v / WORD] >> (v % WORD) & 1 == 1
    }

    #[inline]
    pub fn add_edge(&mut self, u: usize, v: usize) {
        debug_assert!(u != v);
        self.rows[u * self.stride + v / WORD] |= 1 << (v % WORD);
        self.rows[v * self.stride + u / WORD] |= 1 << (u % WORD);
    }

    #[inline]
    pub fn remove_edge(&mut self, u: usize, v: usize) {
        self.rows[u * self.stride + v / WORD] &= !(1 << (v % WORD));
        self.rows[v * self.stride + u / WORD] &= !(1 << (u % WORD));
    }

    /// Degree of `v` counting only neighbors inside `mask`.
    #[inline]
    pub fn degree_in(&self, v: usize, mask: &BitSet) -> usize {
        count_and(self.row(v), mask.words())
    }

    pub fn degree(&self, v: usize) -> usize {
        self.row(v).iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn edge_count(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).sum::<usize>() / 2
    }

    /// Neighbors of `v` as a fresh bitset.
    pub fn neighbor_set(&self, v: usize) -> BitSet {
        let mut s = BitSet::new(self.n);
        s.words.copy_from_slice(self.row(v));
        s
    }

    /// Complement restricted to the vertices in `mask`; vertices outside
    /// `mask` become isolated.
    pub fn complement_within(&self, mask: &BitSet) -> DenseGraph {
        let mut out = DenseGraph::new(self.n);
        for v in mask.iter() {
            let dst = &mut out.rows[v * self.stride..(v + 1) * self.stride];
            let src = &self.rows[v * self.stride..(v + 1) * self.stride];
            for ((d, s), m) in dst.iter_mut().zip(src).zip(mask.words()) {
                *d = !*s & *m;
            }
            dst[v / WORD] &= !(1 << (v % WORD));
        }
        out
    }
}

impl std::fmt::Debug for DenseGraph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mut m = f.debug_map();
        for v in 0..self.n {
            let nb: Vec<usize> = self.neighbor_set(v).to_vec();
            m.entry(&v, &nb);
        }
        m.finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn insert_remove_iterate() {
        let mut s = BitSet::new(130);
        assert!(s.insert(0));
        assert!(s.insert(64));
        assert!(s.insert(129));
        assert!(!s.insert(64));
        assert_eq!(s.to_vec(), vec![0, 64, 129]);
        assert_eq!(s.len(), 3);
        assert!(s.remove(64));
        assert!(!s.contains(64));
        assert_eq!(s.to_vec(), vec![0, 129]);
    }

    #[test]
    fn full_is_trimmed() {
        let s = BitSet::full(70);
        assert_eq!(s.len(), 70);
        assert_eq!(s.iter().last(), Some(69));
    }

    #[test]
    fn complement_within_mask() {
        let g = DenseGraph::from_edges(4, [(0, 1), (1, 2)]);
        let mask = BitSet::from_iter_with_capacity(4, [0, 1, 2]);
        let c = g.complement_within(&mask);
        assert!(c.has_edge(0, 2));
        assert!(!c.has_edge(0, 1));
        assert!(!c.has_edge(0, 3));
        assert_eq!(c.edge_count(), 1);
    }
}
