//! Simple undirected graphs stored as per-vertex bit rows, plus the
//! constructions used throughout the crate: disjoint union, join,
//! complement and inflation (substitution).

use std::fmt;

use crate::error::GraphError;

/// A fixed-length bitset over vertex ids.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct VertexSet {
    words: Vec<u64>,
}

impl VertexSet {
    pub fn with_capacity(n: usize) -> Self {
        VertexSet { words: vec![0; words_for(n)] }
    }

    pub fn full(n: usize) -> Self {
        let mut s = Self::with_capacity(n);
        for v in 0..n {
            s.insert(v);
        }
        s
    }

    #[inline]
    pub fn insert(&mut self, v: usize) {
        self.words[v / 64] |= 1 << (v % 64);
    }

    #[inline]
    pub fn remove(&mut self, v: usize) {
        self.words[v / 64] &= !(1 << (v % 64));
    }

    #[inline]
    pub fn contains(&self, v: usize) -> bool {
        self.words.get(v / 64).is_some_and(|w| w & (1 << (v % 64)) != 0)
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(i, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    None
                } else {
                    let b = w.trailing_zeros() as usize;
                    w &= w - 1;
                    Some(i * 64 + b)
                }
            })
        })
    }

    pub fn intersect_with(&mut self, other: &VertexSet) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= b;
        }
    }

    pub fn difference_with(&mut self, other: &VertexSet) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= !b;
        }
    }

    pub fn is_subset(&self, other: &VertexSet) -> bool {
        self.words.iter().zip(&other.words).all(|(a, b)| a & !b == 0)
    }

    pub fn intersects(&self, other: &VertexSet) -> bool {
        self.words.iter().zip(&other.words).any(|(a, b)| a & b != 0)
    }

    /// The low 64 bits; only meaningful for graphs with at most 64 vertices.
    pub fn as_u64(&self) -> u64 {
        self.words.first().copied().unwrap_or(0)
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

fn words_for(n: usize) -> usize {
    n.div_ceil(64)
}

/// A simple undirected graph on the vertex ids `0..n`.
///
/// Values are immutable once built; every operation returns a new graph.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    rows: Vec<VertexSet>,
}

impl Graph {
    /// The edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Self {
        Graph { n, rows: vec![VertexSet::with_capacity(n); n] }
    }

    pub fn complete(n: usize) -> Self {
        let mut g = Self::empty(n);
        for u in 0..n {
            for v in u + 1..n {
                g.set_edge(u, v);
            }
        }
        g
    }

    pub fn path(n: usize) -> Self {
        Self::from_edges(n, (1..n).map(|v| (v - 1, v))).expect("valid path")
    }

    pub fn cycle(n: usize) -> Self {
        assert!(n >= 3, "cycles need at least three vertices");
        Self::from_edges(n, (0..n).map(|v| (v, (v + 1) % n))).expect("valid cycle")
    }

    /// Star with center 0 and `leaves` leaves.
    pub fn star(leaves: usize) -> Self {
        Self::from_edges(leaves + 1, (1..=leaves).map(|v| (0, v))).expect("valid star")
    }

    /// Builds a graph from an edge list. Duplicate edges are merged.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut g = Self::empty(n);
        for (u, v) in edges {
            if u >= n || v >= n {
                return Err(GraphError::VertexOutOfRange { vertex: u.max(v), n });
            }
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            g.set_edge(u, v);
        }
        Ok(g)
    }

    pub(crate) fn set_edge(&mut self, u: usize, v: usize) {
        self.rows[u].insert(v);
        self.rows[v].insert(u);
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.rows.iter().map(VertexSet::len).sum::<usize>() / 2
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.rows[u].contains(v)
    }

    pub fn neighbors(&self, v: usize) -> &VertexSet {
        &self.rows[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.rows[v].len()
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n).flat_map(move |u| self.rows[u].iter().filter(move |&v| v > u).map(move |v| (u, v)))
    }

    pub fn is_edgeless(&self) -> bool {
        self.rows.iter().all(VertexSet::is_empty)
    }

    /// Neighborhood of every vertex packed into a `u64`; requires `n <= 64`.
    pub fn adjacency_masks(&self) -> Option<Vec<u64>> {
        (self.n <= 64).then(|| self.rows.iter().map(VertexSet::as_u64).collect())
    }

    /// The subgraph induced by `vertices`, renumbered in the given order.
    pub fn induced(&self, vertices: &[usize]) -> Graph {
        let mut g = Graph::empty(vertices.len());
        for (i, &u) in vertices.iter().enumerate() {
            for (j, &v) in vertices.iter().enumerate().skip(i + 1) {
                if self.has_edge(u, v) {
                    g.set_edge(i, j);
                }
            }
        }
        g
    }

    /// Renumbers vertices: vertex `v` of `self` becomes `perm[v]`.
    pub fn permute(&self, perm: &[usize]) -> Graph {
        assert_eq!(perm.len(), self.n);
        let mut hit = vec![false; self.n];
        assert!(perm.iter().all(|&v| v < self.n && !std::mem::replace(&mut hit[v], true)), "not a permutation");
        let mut g = Graph::empty(self.n);
        for (u, v) in self.edges() {
            g.set_edge(perm[u], perm[v]);
        }
        g
    }

    pub fn is_connected(&self) -> bool {
        self.n == 0 || self.components().len() == 1
    }

    /// Connected components as sorted vertex lists, ordered by smallest vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.n];
        let mut out = Vec::new();
        for s in 0..self.n {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut stack = vec![s];
            let mut comp = Vec::new();
            while let Some(u) = stack.pop() {
                comp.push(u);
                for v in self.rows[u].iter() {
                    if !seen[v] {
                        seen[v] = true;
                        stack.push(v);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges=", self.n)?;
        f.debug_list().entries(self.edges()).finish()?;
        write!(f, ")")
    }
}

/// `G ∪ H`: the vertices of `h` are shifted up by `g.vertex_count()`.
pub fn disjoint_union(g: &Graph, h: &Graph) -> Graph {
    let shift = g.n;
    let mut out = Graph::empty(g.n + h.n);
    for (u, v) in g.edges() {
        out.set_edge(u, v);
    }
    for (u, v) in h.edges() {
        out.set_edge(u + shift, v + shift);
    }
    out
}

/// `G ∗ H`: the disjoint union plus every edge between the two sides.
pub fn join(g: &Graph, h: &Graph) -> Graph {
    let mut out = disjoint_union(g, h);
    for u in 0..g.n {
        for v in 0..h.n {
            out.set_edge(u, g.n + v);
        }
    }
    out
}

pub fn complement(g: &Graph) -> Graph {
    let mut out = Graph::empty(g.n);
    for u in 0..g.n {
        for v in u + 1..g.n {
            if !g.has_edge(u, v) {
                out.set_edge(u, v);
            }
        }
    }
    out
}

/// The result of [`inflate`]: the inflated graph and where each part landed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Inflation {
    pub graph: Graph,
    /// `blocks[i]` is the first vertex of part `i`; `blocks[m]` is the total.
    pub blocks: Vec<usize>,
}

impl Inflation {
    pub fn block(&self, i: usize) -> std::ops::Range<usize> {
        self.blocks[i]..self.blocks[i + 1]
    }
}

/// `G[H_1, ..., H_m]`: part `i` replaces vertex `i` of `quotient`, and whole
/// parts are joined exactly when their quotient vertices are adjacent.
pub fn inflate(quotient: &Graph, parts: &[Graph]) -> Result<Inflation, GraphError> {
    if parts.len() != quotient.n {
        return Err(GraphError::PartCountMismatch { expected: quotient.n, found: parts.len() });
    }
    if let Some(i) = parts.iter().position(|p| p.n == 0) {
        return Err(GraphError::EmptyPart(i));
    }
    let mut blocks = Vec::with_capacity(parts.len() + 1);
    let mut total = 0;
    for p in parts {
        blocks.push(total);
        total += p.n;
    }
    blocks.push(total);

    let mut graph = Graph::empty(total);
    for (i, p) in parts.iter().enumerate() {
        let off = blocks[i];
        for (u, v) in p.edges() {
            graph.set_edge(off + u, off + v);
        }
    }
    for (a, b) in quotient.edges() {
        for u in blocks[a]..blocks[a + 1] {
            for v in blocks[b]..blocks[b + 1] {
                graph.set_edge(u, v);
            }
        }
    }
    Ok(Inflation { graph, blocks })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::iso::is_isomorphic;

    fn k(n: usize) -> Graph {
        Graph::complete(n)
    }

    fn co_k(n: usize) -> Graph {
        Graph::empty(n)
    }

    #[test]
    fn union_examples() {
        let g = disjoint_union(&k(1), &k(1));
        assert_eq!(g, co_k(2));

        let two_k2 = disjoint_union(&k(2), &k(2));
        assert_eq!(two_k2.vertex_count(), 4);
        assert_eq!(two_k2.edges().collect::<Vec<_>>(), vec![(0, 1), (2, 3)]);

        let p4 = Graph::path(4);
        assert_eq!(disjoint_union(&p4, &Graph::empty(0)), p4);
    }

    #[test]
    fn join_examples() {
        assert_eq!(join(&k(1), &k(1)), k(2));
        assert!(is_isomorphic(&join(&co_k(2), &co_k(2)), &Graph::cycle(4)));

        let apex = join(&k(1), &disjoint_union(&k(2), &k(2)));
        assert_eq!(apex.vertex_count(), 5);
        assert_eq!(apex.edge_count(), 6);
        assert_eq!(apex.degree(0), 4);
    }

    #[test]
    fn complement_examples() {
        assert_eq!(complement(&k(2)), co_k(2));
        let two_k2 = disjoint_union(&k(2), &k(2));
        assert!(is_isomorphic(&complement(&Graph::cycle(4)), &two_k2));
        let p4 = Graph::path(4);
        assert_eq!(complement(&complement(&p4)), p4);
    }

    #[test]
    fn inflate_examples() {
        let c4 = inflate(&k(2), &[co_k(2), co_k(2)]).unwrap();
        assert_eq!(c4.graph, join(&co_k(2), &co_k(2)));
        assert_eq!(c4.blocks, vec![0, 2, 4]);

        let p4 = Graph::path(4);
        let same = inflate(&p4, &vec![k(1); 4]).unwrap();
        assert_eq!(same.graph, p4);

        let two_k2 = inflate(&co_k(2), &[k(2), k(2)]).unwrap();
        assert_eq!(two_k2.graph, disjoint_union(&k(2), &k(2)));
    }

    #[test]
    fn inflate_errors() {
        assert_eq!(inflate(&k(2), &[k(1)]), Err(GraphError::PartCountMismatch { expected: 2, found: 1 }));
        assert_eq!(inflate(&k(2), &[k(1), Graph::empty(0)]), Err(GraphError::EmptyPart(1)));
    }

    #[test]
    fn from_edges_rejects_bad_input() {
        assert_eq!(Graph::from_edges(2, [(0, 0)]), Err(GraphError::SelfLoop(0)));
        assert!(matches!(Graph::from_edges(2, [(0, 2)]), Err(GraphError::VertexOutOfRange { .. })));
    }

    #[test]
    fn wide_graphs_use_multiple_words() {
        let g = Graph::star(100);
        assert_eq!(g.degree(0), 100);
        assert!(g.has_edge(0, 100));
        assert!(!g.has_edge(99, 100));
        assert_eq!(g.adjacency_masks(), None);
        assert_eq!(complement(&complement(&g)), g);
    }
}
