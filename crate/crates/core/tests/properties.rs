use lcwlab::cotree::{build_cotree, cotree_to_graph, threshold_factorize, Cotree, NodeKind};
use lcwlab::expr::{
    complement_expression, compose_inflation, double_with_new_label, evaluate, label, normalize_insertion_label, parse,
    parse_witness, preserve_label, serialize, serialize_witness, sink_labels, Label, LcwExpression, Op, Witness,
};
use lcwlab::formats::{from_graph6, parse_edge_list, to_graph6, write_edge_list};
use lcwlab::graph::{complement, disjoint_union, inflate, Graph};
use lcwlab::iso::is_isomorphic;
use proptest::prelude::*;

const NAMES: [&str; 4] = ["a", "b", "c", "d"];

/// Replays raw choices and keeps only the ones that are valid at that point,
/// so every generated expression is well formed.
fn build_expression(choices: &[(u8, u8, u8)]) -> LcwExpression {
    let mut sizes = [0usize; 4];
    let mut ops = Vec::new();
    for &(kind, a, b) in choices {
        let (a, b) = (a as usize % 4, b as usize % 4);
        match kind % 3 {
            0 => {
                sizes[a] += 1;
                ops.push(Op::AddVertex(label(NAMES[a])));
            }
            1 if a != b && sizes[a] > 0 && sizes[b] > 0 => {
                ops.push(Op::AddEdges(label(NAMES[a]), label(NAMES[b])));
            }
            2 if a != b && sizes[a] > 0 => {
                sizes[b] += sizes[a];
                sizes[a] = 0;
                ops.push(Op::Relabel(label(NAMES[a]), label(NAMES[b])));
            }
            _ => {}
        }
    }
    LcwExpression::new(ops)
}

fn expressions() -> impl Strategy<Value = LcwExpression> {
    prop::collection::vec((0u8..3, 0u8..4, 0u8..4), 1..40).prop_map(|c| build_expression(&c))
}

fn nonempty_expressions() -> impl Strategy<Value = LcwExpression> {
    prop::collection::vec((0u8..3, 0u8..4, 0u8..4), 1..30)
        .prop_map(|c| build_expression(&[vec![(0, 0, 0)], c].concat()))
}

fn graphs(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n).prop_flat_map(|n| {
        prop::collection::vec(any::<bool>(), n * (n - 1) / 2).prop_map(move |bits| {
            let pairs = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)));
            Graph::from_edges(n, pairs.zip(bits).filter(|(_, b)| *b).map(|(p, _)| p)).unwrap()
        })
    })
}

fn cotrees(max_leaves: u32) -> impl Strategy<Value = Cotree> {
    let leaf = Just(()).prop_map(|_| Cotree::Leaf(0));
    leaf.prop_recursive(4, max_leaves, 4, |inner| {
        (any::<bool>(), prop::collection::vec(inner, 2..4))
            .prop_map(|(join, ch)| Cotree::Node(if join { NodeKind::Join } else { NodeKind::Union }, ch))
    })
    .prop_map(|c| {
        let mut next = 0;
        number(&c, &mut next)
    })
}

fn number(c: &Cotree, next: &mut usize) -> Cotree {
    match c {
        Cotree::Leaf(_) => {
            *next += 1;
            Cotree::Leaf(*next - 1)
        }
        Cotree::Node(k, ch) => Cotree::Node(*k, ch.iter().map(|x| number(x, next)).collect()),
    }
}

fn built(e: &LcwExpression) -> Graph {
    evaluate(e).unwrap().0
}

proptest! {
    #[test]
    fn dsl_round_trip(e in expressions()) {
        prop_assert_eq!(parse(&serialize(&e)).unwrap(), e.clone());
        let w = Witness::identity(e);
        prop_assert_eq!(parse_witness(&serialize_witness(&w)).unwrap(), w);
    }

    #[test]
    fn complement_expression_builds_the_complement(e in expressions()) {
        let c = complement_expression(&e).unwrap();
        prop_assert_eq!(built(&c), complement(&built(&e)));
        prop_assert!(c.label_count() <= e.label_count() + 1);
    }

    #[test]
    fn normal_form_keeps_the_graph(e in expressions()) {
        let n = normalize_insertion_label(&e).unwrap();
        prop_assert_eq!(built(&n), built(&e));
        prop_assert!(n.label_count() <= e.label_count() + 1);
        let inserted: Vec<&Label> = n.ops.iter().filter_map(|op| match op { Op::AddVertex(l) => Some(l), _ => None }).collect();
        prop_assert!(inserted.windows(2).all(|w| w[0] == w[1]));
    }

    #[test]
    fn doubling_builds_two_copies(e in nonempty_expressions()) {
        let d = double_with_new_label(&e).unwrap();
        let g = built(&e);
        prop_assert_eq!(built(&d), disjoint_union(&g, &g));
        prop_assert_eq!(d.label_count(), e.label_count() + 1);
        let fresh: Vec<Label> = d.alphabet().into_iter().filter(|l| !e.uses_label(l)).collect();
        prop_assert_eq!(fresh.len(), 1);
        prop_assert!(sink_labels(&d).contains(&fresh[0]));
    }

    #[test]
    fn preserved_label_is_never_relabeled(e in nonempty_expressions(), pick in 0usize..4) {
        let alphabet = e.alphabet();
        let keep = alphabet[pick % alphabet.len()].clone();
        let p = preserve_label(&e, &keep).unwrap();
        prop_assert_eq!(built(&p), built(&e));
        prop_assert!(p.label_count() <= e.label_count());
        prop_assert!(!p.ops.iter().any(|op| matches!(op, Op::Relabel(a, _) if *a == keep)));
    }

    #[test]
    fn composition_builds_the_inflation(q in nonempty_expressions(), parts in prop::collection::vec(nonempty_expressions(), 1..40)) {
        let m = q.vertex_count();
        let parts: Vec<Witness> = (0..m).map(|i| Witness::identity(parts[i % parts.len()].clone())).collect();
        let qw = Witness::identity(q.clone());
        let c = compose_inflation(&qw, &parts).unwrap();
        let target = inflate(&built(&q), &parts.iter().map(|p| built(&p.expression)).collect::<Vec<_>>()).unwrap().graph;
        prop_assert!(c.builds(&target));
        let bound = q.label_count() + parts.iter().map(Witness::label_count).max().unwrap();
        prop_assert!(c.label_count() <= bound);
    }

    #[test]
    fn complement_is_an_involution(g in graphs(12)) {
        prop_assert_eq!(complement(&complement(&g)), g);
    }

    #[test]
    fn formats_round_trip(g in graphs(20)) {
        prop_assert_eq!(from_graph6(&to_graph6(&g)).unwrap(), g.clone());
        prop_assert_eq!(parse_edge_list(&write_edge_list(&g)).unwrap(), g);
    }

    #[test]
    fn cotree_round_trip(c in cotrees(12)) {
        let g = cotree_to_graph(&c);
        let t = build_cotree(&g).unwrap();
        prop_assert!(t.is_canonical());
        prop_assert_eq!(cotree_to_graph(&t), g.clone());
        prop_assert_eq!(t.clone(), c.canonicalize());
        let f = threshold_factorize(&t);
        prop_assert_eq!(f.reconstruct(), g);
    }

    #[test]
    fn relabelled_graphs_are_isomorphic(g in graphs(9), seed in any::<u64>()) {
        let n = g.vertex_count();
        let mut perm: Vec<usize> = (0..n).collect();
        let mut s = seed;
        for i in (1..n).rev() {
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            perm.swap(i, (s >> 33) as usize % (i + 1));
        }
        prop_assert!(is_isomorphic(&g, &g.permute(&perm)));
    }
}
