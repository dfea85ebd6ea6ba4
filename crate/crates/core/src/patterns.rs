//! Small forbidden induced subgraphs and the hereditary classes they define.

use crate::graph::{complement, Graph, VertexSet};

/// The fixed patterns the class recognizers test for.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Pattern {
    P4,
    C4,
    TwoK2,
    /// Complement of `2P3` (two disjoint paths on three vertices).
    Co2P3,
}

impl Pattern {
    pub const ALL: [Pattern; 4] = [Pattern::P4, Pattern::C4, Pattern::TwoK2, Pattern::Co2P3];

    pub fn graph(self) -> Graph {
        match self {
            Pattern::P4 => Graph::path(4),
            Pattern::C4 => Graph::cycle(4),
            Pattern::TwoK2 => Graph::from_edges(4, [(0, 1), (2, 3)]).unwrap(),
            Pattern::Co2P3 => complement(&Graph::from_edges(6, [(0, 1), (1, 2), (3, 4), (4, 5)]).unwrap()),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Pattern::P4 => "P4",
            Pattern::C4 => "C4",
            Pattern::TwoK2 => "2K2",
            Pattern::Co2P3 => "co-2P3",
        }
    }
}

/// An order on pattern vertices in which every vertex after the first has a
/// neighbour earlier in the order, when the pattern is connected.
fn connected_order(p: &Graph) -> Vec<usize> {
    let n = p.vertex_count();
    let mut order = vec![0];
    let mut placed = vec![false; n];
    placed[0] = true;
    while order.len() < n {
        let next = (0..n)
            .filter(|&v| !placed[v])
            .max_by_key(|&v| (order.iter().filter(|&&u| p.has_edge(u, v)).count(), p.degree(v)))
            .unwrap();
        placed[next] = true;
        order.push(next);
    }
    order
}

fn embeds(g: &Graph, p: &Graph) -> bool {
    let k = p.vertex_count();
    if k == 0 {
        return true;
    }
    if k > g.vertex_count() {
        return false;
    }
    let order = connected_order(p);
    let mut image = Vec::with_capacity(k);
    extend(g, p, &order, &mut image)
}

fn extend(g: &Graph, p: &Graph, order: &[usize], image: &mut Vec<usize>) -> bool {
    let i = image.len();
    if i == order.len() {
        return true;
    }
    let pv = order[i];
    let n = g.vertex_count();
    let mut cand = VertexSet::full(n);
    for (j, &gv) in image.iter().enumerate() {
        cand.remove(gv);
        if p.has_edge(order[j], pv) {
            cand.intersect_with(g.neighbors(gv));
        } else {
            cand.difference_with(g.neighbors(gv));
        }
    }
    let need = p.degree(pv);
    for gv in cand.iter() {
        if g.degree(gv) < need {
            continue;
        }
        image.push(gv);
        if extend(g, p, order, image) {
            return true;
        }
        image.pop();
    }
    false
}

/// True iff some vertex subset of `g` induces a copy of `pattern`.
///
/// Exhaustive search over injective placements of the pattern, extended one
/// vertex at a time and pruned by adjacency and degree. Disconnected patterns
/// are searched in the complement, where they are connected.
pub fn contains_induced(g: &Graph, pattern: Pattern) -> bool {
    let p = pattern.graph();
    if p.is_connected() {
        embeds(g, &p)
    } else {
        embeds(&complement(g), &complement(&p))
    }
}

/// `P4`-free.
pub fn is_cograph(g: &Graph) -> bool {
    !contains_induced(g, Pattern::P4)
}

/// `{P4, C4}`-free (trivially perfect).
pub fn is_quasi_threshold(g: &Graph) -> bool {
    is_cograph(g) && !contains_induced(g, Pattern::C4)
}

/// `{P4, C4, 2K2}`-free.
pub fn is_threshold(g: &Graph) -> bool {
    is_quasi_threshold(g) && !contains_induced(g, Pattern::TwoK2)
}

/// Gurski's characterization: linear clique-width at most 2 iff the graph
/// avoids `P4`, `2K2` and the complement of `2P3`.
pub fn has_lcw_at_most_2(g: &Graph) -> bool {
    [Pattern::P4, Pattern::TwoK2, Pattern::Co2P3].into_iter().all(|p| !contains_induced(g, p))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{disjoint_union, join};
    use crate::iso::is_isomorphic;

    /// Oracle: try every vertex subset of the pattern's size.
    fn brute_contains(g: &Graph, p: &Graph) -> bool {
        let n = g.vertex_count();
        let k = p.vertex_count();
        (0u64..1 << n).filter(|m| m.count_ones() as usize == k).any(|m| {
            let vs: Vec<usize> = (0..n).filter(|&v| m >> v & 1 == 1).collect();
            is_isomorphic(&g.induced(&vs), p)
        })
    }

    #[test]
    fn pattern_examples() {
        assert!(contains_induced(&Graph::path(4), Pattern::P4));
        assert!(!contains_induced(&Graph::cycle(4), Pattern::P4));
        assert!(contains_induced(&Pattern::Co2P3.graph(), Pattern::Co2P3));
        assert_eq!(Pattern::Co2P3.graph().edge_count(), 11);
    }

    #[test]
    fn recognizer_examples() {
        let c = |g: &Graph| (is_cograph(g), is_quasi_threshold(g), is_threshold(g));
        assert_eq!(c(&Graph::path(4)), (false, false, false));
        assert_eq!(c(&Graph::cycle(4)), (true, false, false));
        assert_eq!(c(&Graph::complete(1)), (true, true, true));
    }

    #[test]
    fn lcw2_examples() {
        assert!(has_lcw_at_most_2(&Graph::complete(2)));
        let two_k2 = disjoint_union(&Graph::complete(2), &Graph::complete(2));
        assert!(!has_lcw_at_most_2(&two_k2));
        assert!(has_lcw_at_most_2(&Graph::cycle(4)));
    }

    #[test]
    fn matches_subset_oracle_on_random_graphs() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand::rngs::StdRng::seed_from_u64(7);
        for _ in 0..150 {
            let n = rng.gen_range(0..=8);
            let edges: Vec<(usize, usize)> =
                (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).filter(|_| rng.gen_bool(0.5)).collect();
            let g = Graph::from_edges(n, edges).unwrap();
            for p in Pattern::ALL {
                assert_eq!(contains_induced(&g, p), brute_contains(&g, &p.graph()), "{p:?} in {g:?}");
            }
        }
    }

    #[test]
    fn pattern_search_scales_to_wide_graphs() {
        let mut g = Graph::complete(1);
        for _ in 0..3 {
            let two = disjoint_union(&g, &g);
            g = join(&Graph::complete(1), &disjoint_union(&two, &two));
        }
        assert_eq!(g.vertex_count(), 85);
        assert!(is_quasi_threshold(&g));
        assert!(!is_threshold(&g));
    }
}
