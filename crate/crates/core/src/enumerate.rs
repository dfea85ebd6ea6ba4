//! All graphs on `n` vertices up to isomorphism.

use std::collections::HashSet;

use crate::graph::Graph;
use crate::iso::canonical_form;

/// One canonical representative per isomorphism class, grown vertex by
/// vertex: every class on `m + 1` vertices contains a one-vertex extension
/// of some class on `m` vertices.
pub fn all_graphs(n: usize) -> Vec<Graph> {
    let mut level = vec![Graph::empty(0)];
    for m in 0..n {
        let mut seen = HashSet::new();
        let mut next = Vec::new();
        for g in &level {
            for subset in 0u64..1 << m {
                let edges = g.edges().chain((0..m).filter(|&u| subset >> u & 1 == 1).map(|u| (u, m)));
                let h = Graph::from_edges(m + 1, edges).expect("edges in range");
                let c = canonical_form(&h);
                if seen.insert(c.clone()) {
                    next.push(c.to_graph());
                }
            }
        }
        level = next;
    }
    level
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::iso::is_isomorphic;

    #[test]
    fn counts() {
        let counts: Vec<usize> = (0..=6).map(|n| all_graphs(n).len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 4, 11, 34, 156]);
    }

    #[test]
    fn pairwise_non_isomorphic() {
        let gs = all_graphs(4);
        for i in 0..gs.len() {
            for j in i + 1..gs.len() {
                assert!(!is_isomorphic(&gs[i], &gs[j]));
            }
        }
    }
}
