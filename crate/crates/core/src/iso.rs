//! Canonical forms for small graphs.
//!
//! Vertices are first split into cells by colour refinement (degree, then
//! multisets of neighbour colours); the canonical form is the smallest
//! adjacency code over all orderings that respect the cell order. This is
//! exhaustive within cells and intended for graphs of a dozen vertices or so.

use std::collections::BTreeMap;

use crate::graph::Graph;

/// Isomorphism-invariant code of a graph: `n` and its canonically ordered
/// upper-triangle adjacency bits (column by column).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalForm {
    pub n: usize,
    pub columns: Vec<u64>,
}

impl CanonicalForm {
    /// The graph whose vertex `i` sits at canonical position `i`.
    pub fn to_graph(&self) -> Graph {
        let mut g = Graph::empty(self.n);
        for j in 1..self.n {
            for i in 0..j {
                if self.columns[j] >> i & 1 == 1 {
                    g.set_edge(i, j);
                }
            }
        }
        g
    }
}

fn refine(g: &Graph) -> Vec<usize> {
    let n = g.vertex_count();
    let mut colors: Vec<usize> = (0..n).map(|v| g.degree(v)).collect();
    let mut classes = count_distinct(&colors);
    loop {
        let keys: Vec<(usize, Vec<usize>)> = (0..n)
            .map(|v| {
                let mut nb: Vec<usize> = g.neighbors(v).iter().map(|u| colors[u]).collect();
                nb.sort_unstable();
                (colors[v], nb)
            })
            .collect();
        let mut ranks = BTreeMap::new();
        for k in &keys {
            ranks.entry(k.clone()).or_insert(0usize);
        }
        for (i, r) in ranks.values_mut().enumerate() {
            *r = i;
        }
        colors = keys.iter().map(|k| ranks[k]).collect();
        let now = count_distinct(&colors);
        if now == classes {
            return colors;
        }
        classes = now;
    }
}

fn count_distinct(xs: &[usize]) -> usize {
    let mut v = xs.to_vec();
    v.sort_unstable();
    v.dedup();
    v.len()
}

struct Search<'a> {
    g: &'a Graph,
    // slots[pos] = cell index that position `pos` must draw from
    slots: Vec<usize>,
    cells: Vec<Vec<usize>>,
    used: Vec<bool>,
    order: Vec<usize>,
    columns: Vec<u64>,
    best: Option<(Vec<u64>, Vec<usize>)>,
}

impl Search<'_> {
    fn run(&mut self, pos: usize, tight: bool) {
        let n = self.g.vertex_count();
        if pos == n {
            if self.best.as_ref().is_none_or(|(b, _)| self.columns < *b) {
                self.best = Some((self.columns.clone(), self.order.clone()));
            }
            return;
        }
        let cell = self.slots[pos];
        for idx in 0..self.cells[cell].len() {
            let v = self.cells[cell][idx];
            if self.used[v] {
                continue;
            }
            let mut col = 0u64;
            for (i, &u) in self.order.iter().enumerate() {
                if self.g.has_edge(u, v) {
                    col |= 1 << i;
                }
            }
            // while the prefix equals the best prefix, a larger column prunes
            let mut still_tight = false;
            if tight {
                if let Some((b, _)) = &self.best {
                    match col.cmp(&b[pos]) {
                        std::cmp::Ordering::Greater => continue,
                        std::cmp::Ordering::Equal => still_tight = true,
                        std::cmp::Ordering::Less => {}
                    }
                }
            }
            self.used[v] = true;
            self.order.push(v);
            self.columns.push(col);
            let tight_next = still_tight || (tight && self.best.is_none());
            self.run(pos + 1, tight_next);
            self.columns.pop();
            self.order.pop();
            self.used[v] = false;
        }
    }
}

/// Returns the canonical form and an ordering `order` such that
/// `order[i]` is the vertex placed at canonical position `i`.
pub fn canonical_labeling(g: &Graph) -> (CanonicalForm, Vec<usize>) {
    let n = g.vertex_count();
    assert!(n <= 64, "canonical forms are only supported up to 64 vertices");
    let colors = refine(g);
    let mut by_color: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for (v, &c) in colors.iter().enumerate() {
        by_color.entry(c).or_default().push(v);
    }
    let cells: Vec<Vec<usize>> = by_color.into_values().collect();
    let slots = cells.iter().enumerate().flat_map(|(i, c)| std::iter::repeat_n(i, c.len())).collect();
    let mut s = Search {
        g,
        slots,
        cells,
        used: vec![false; n],
        order: Vec::with_capacity(n),
        columns: Vec::with_capacity(n),
        best: None,
    };
    s.run(0, true);
    let (columns, order) = s.best.unwrap_or_default();
    (CanonicalForm { n, columns }, order)
}

pub fn canonical_form(g: &Graph) -> CanonicalForm {
    canonical_labeling(g).0
}

pub fn is_isomorphic(a: &Graph, b: &Graph) -> bool {
    if a.vertex_count() != b.vertex_count() || a.edge_count() != b.edge_count() {
        return false;
    }
    let mut da: Vec<usize> = (0..a.vertex_count()).map(|v| a.degree(v)).collect();
    let mut db: Vec<usize> = (0..b.vertex_count()).map(|v| b.degree(v)).collect();
    da.sort_unstable();
    db.sort_unstable();
    da == db && canonical_form(a) == canonical_form(b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::complement;

    fn brute_isomorphic(a: &Graph, b: &Graph) -> bool {
        let n = a.vertex_count();
        if n != b.vertex_count() {
            return false;
        }
        let mut perm: Vec<usize> = (0..n).collect();
        loop {
            if a.permute(&perm) == *b {
                return true;
            }
            if !next_permutation(&mut perm) {
                return false;
            }
        }
    }

    fn next_permutation(p: &mut [usize]) -> bool {
        let Some(i) = (1..p.len()).rev().find(|&i| p[i - 1] < p[i]) else {
            return false;
        };
        let j = (i..p.len()).rev().find(|&j| p[j] > p[i - 1]).unwrap();
        p.swap(i - 1, j);
        p[i..].reverse();
        true
    }

    #[test]
    fn canonical_form_is_invariant_under_relabeling() {
        let g = Graph::from_edges(6, [(0, 1), (1, 2), (2, 3), (3, 0), (3, 4), (4, 5)]).unwrap();
        let perm = [3, 5, 0, 1, 4, 2];
        assert_eq!(canonical_form(&g), canonical_form(&g.permute(&perm)));
        assert_eq!(canonical_form(&g).to_graph(), canonical_form(&g).to_graph());
        assert!(is_isomorphic(&canonical_form(&g).to_graph(), &g));
    }

    #[test]
    fn labeling_maps_graph_onto_form() {
        let g = Graph::path(5);
        let (form, order) = canonical_labeling(&g);
        let mut perm = vec![0; 5];
        for (pos, &v) in order.iter().enumerate() {
            perm[v] = pos;
        }
        assert_eq!(g.permute(&perm), form.to_graph());
    }

    #[test]
    fn agrees_with_brute_force_on_all_four_vertex_graphs() {
        let pairs: Vec<(usize, usize)> = (0..4).flat_map(|u| (u + 1..4).map(move |v| (u, v))).collect();
        let graphs: Vec<Graph> = (0..1u32 << pairs.len())
            .map(|mask| {
                Graph::from_edges(4, pairs.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &e)| e))
                    .unwrap()
            })
            .collect();
        for a in graphs.iter().step_by(3) {
            for b in &graphs {
                assert_eq!(is_isomorphic(a, b), brute_isomorphic(a, b), "{a:?} vs {b:?}");
            }
        }
    }

    #[test]
    fn c4_complement_is_2k2() {
        let two_k2 = Graph::from_edges(4, [(0, 1), (2, 3)]).unwrap();
        assert!(is_isomorphic(&complement(&Graph::cycle(4)), &two_k2));
        assert!(!is_isomorphic(&Graph::path(4), &Graph::star(3)));
    }
}
