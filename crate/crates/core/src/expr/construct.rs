//! Expressions built from graph structure: the quasi-threshold family `G_k`,
//! threshold graphs, inflations, and the cotree-driven upper bound.

use super::{
    double_with_new_label, evaluate, label, pivot_construction, Label, LcwExpression, Op, Simulation, Witness,
};
use crate::cotree::{build_cotree, threshold_factorize, Cotree};
use crate::error::{ExprError, GraphError};
use crate::graph::{disjoint_union, join, Graph};
use crate::patterns::is_threshold;

/// `G_k` together with its `(k+1)`-label expression. Insertion order equals
/// vertex order.
#[derive(Clone, Debug)]
pub struct GkInstance {
    pub k: usize,
    pub graph: Graph,
    pub expression: LcwExpression,
}

/// `G_1 = K2` and `G_{k+1} = ((G_k ∪ G_k) ∪ (G_k ∪ G_k)) ∗ K1`, with the apex
/// numbered last. The expression alternates doubling with a fresh sink and
/// the pivot construction on that sink.
pub fn generate_gk(k: usize) -> GkInstance {
    assert!(k >= 1, "the family starts at k = 1");
    let mut graph = Graph::complete(2);
    let mut expression = LcwExpression::new(vec![
        Op::AddVertex(label("a")),
        Op::AddVertex(label("b")),
        Op::AddEdges(label("a"), label("b")),
    ]);
    for _ in 1..k {
        let sink = expression.fresh_label();
        let doubled = double_with_new_label(&expression).expect("generator expressions are valid");
        expression = pivot_construction(&doubled, &sink).expect("fresh label is a sink of the doubled expression");
        let two = disjoint_union(&graph, &graph);
        graph = join(&disjoint_union(&two, &two), &Graph::complete(1));
    }
    GkInstance { k, graph, expression }
}

/// A construction sequence for a threshold graph: vertices in insertion
/// order, each flagged when it dominates all earlier ones.
fn threshold_sequence(t: &Graph) -> Vec<(usize, bool)> {
    let n = t.vertex_count();
    let mut alive = vec![true; n];
    let mut removed = Vec::with_capacity(n);
    for remaining in (1..=n).rev() {
        let pick = (0..n)
            .filter(|&v| alive[v])
            .find_map(|v| {
                let deg = t.neighbors(v).iter().filter(|&u| alive[u]).count();
                if deg == 0 {
                    Some((v, false))
                } else if deg == remaining - 1 {
                    Some((v, true))
                } else {
                    None
                }
            })
            .expect("threshold graphs always have an isolated or dominating vertex");
        alive[pick.0] = false;
        removed.push(pick);
    }
    removed.reverse();
    removed
}

/// Replays a threshold graph's construction sequence with a pool label `a`
/// and a spare label `b`: each vertex after the first enters with `b`, is
/// joined to the pool when it dominates, and is moved into the pool. An
/// edgeless graph uses `a` alone.
pub fn threshold_expression(t: &Graph) -> Result<Witness, ExprError> {
    if !is_threshold(t) {
        return Err(ExprError::NotThreshold);
    }
    let seq = threshold_sequence(t);
    let (pool, spare) = (label("a"), label("b"));
    let mut ops = Vec::new();
    let two_labels = !t.is_edgeless();
    for (i, &(_, dominating)) in seq.iter().enumerate() {
        if i == 0 || !two_labels {
            ops.push(Op::AddVertex(pool.clone()));
            continue;
        }
        ops.push(Op::AddVertex(spare.clone()));
        if dominating {
            ops.push(Op::AddEdges(spare.clone(), pool.clone()));
        }
        ops.push(Op::Relabel(spare.clone(), pool.clone()));
    }
    Ok(Witness { expression: LcwExpression::new(ops), order: seq.into_iter().map(|(v, _)| v).collect() })
}

/// Follows `quotient` and, whenever it inserts quotient vertex `q` with
/// label `L`, builds all of `parts[q]` instead and then moves it onto `L`.
///
/// Parts are built on the labels of `quotient` that are empty at that moment
/// (with `L` first when it is empty) topped up from one shared pool of fresh
/// labels, so the result uses at most
/// `label_count(quotient) + max label_count(parts)` labels.
///
/// The witness order refers to the block layout of
/// `inflate(Q, [part graphs])`, where `Q` is the graph `quotient` builds on
/// its own target ids.
pub fn compose_inflation(quotient: &Witness, parts: &[Witness]) -> Result<Witness, ExprError> {
    let m = quotient.expression.vertex_count();
    if parts.len() != m {
        return Err(ExprError::LengthMismatch { expected: m, found: parts.len() });
    }
    if quotient.order.len() != m {
        return Err(ExprError::LengthMismatch { expected: m, found: quotient.order.len() });
    }
    for (i, p) in parts.iter().enumerate() {
        p.expression.validate()?;
        if p.expression.vertex_count() == 0 {
            return Err(GraphError::EmptyPart(i).into());
        }
        if p.order.len() != p.expression.vertex_count() {
            return Err(ExprError::LengthMismatch { expected: p.expression.vertex_count(), found: p.order.len() });
        }
    }
    let mut blocks = Vec::with_capacity(m);
    let mut total = 0;
    for p in parts {
        blocks.push(total);
        total += p.expression.vertex_count();
    }

    let outer = quotient.expression.alphabet();
    let mut pool: Vec<Label> = Vec::new();
    let mut next_fresh = 0;
    let mut sim = Simulation::new(&quotient.expression)?;
    let mut ops = Vec::new();
    let mut order = Vec::with_capacity(total);
    let mut inserted = 0;

    for (i, op) in quotient.expression.ops.iter().enumerate() {
        if let Op::AddVertex(target) = op {
            let q = quotient.order[inserted];
            inserted += 1;
            let part = &parts[q];
            let part_alphabet = part.expression.alphabet();

            let mut available: Vec<Label> = Vec::new();
            if sim.is_empty(target) {
                available.push(target.clone());
            }
            available.extend(outer.iter().filter(|l| *l != target && sim.is_empty(l)).cloned());
            while available.len() + pool.len() < part_alphabet.len() {
                let fresh = loop {
                    let l = Label::fresh(next_fresh);
                    next_fresh += 1;
                    if !outer.contains(&l) {
                        break l;
                    }
                };
                pool.push(fresh);
            }
            available.extend(pool.iter().cloned());
            let map = |l: &Label| available[part_alphabet.iter().position(|x| x == l).unwrap()].clone();

            for pop in &part.expression.ops {
                ops.push(match pop {
                    Op::AddVertex(a) => Op::AddVertex(map(a)),
                    Op::AddEdges(a, b) => Op::AddEdges(map(a), map(b)),
                    Op::Relabel(a, b) => Op::Relabel(map(a), map(b)),
                });
            }
            let mut part_sim = Simulation::new(&part.expression)?;
            for (j, pop) in part.expression.ops.iter().enumerate() {
                part_sim.step(j, pop, |_, _| {})?;
            }
            for l in &part_alphabet {
                let mapped = map(l);
                if !part_sim.is_empty(l) && mapped != *target {
                    ops.push(Op::Relabel(mapped, target.clone()));
                }
            }
            order.extend(part.order.iter().map(|&v| blocks[q] + v));
        } else {
            ops.push(op.clone());
        }
        sim.step(i, op, |_, _| {})?;
    }
    Ok(Witness { expression: LcwExpression::new(ops), order })
}

/// An expression for a cograph from its cotree: factor off the threshold
/// quotient, build it with two labels, and substitute recursively built
/// expressions for the parts. Uses at most twice the factorization depth in
/// labels.
pub fn upper_bound_expression(g: &Graph) -> Result<Witness, ExprError> {
    if g.vertex_count() == 0 {
        return Ok(Witness::identity(LcwExpression::default()));
    }
    let c = build_cotree(g)?;
    from_cotree(&c)
}

fn from_cotree(c: &Cotree) -> Result<Witness, ExprError> {
    if let Cotree::Leaf(v) = c {
        return Ok(Witness { expression: LcwExpression::new(vec![Op::AddVertex(label("a"))]), order: vec![*v] });
    }
    let f = threshold_factorize(c);
    let quotient = threshold_expression(&f.quotient)?;
    let parts = f
        .parts
        .iter()
        .map(|p| {
            let (compact, _) = p.compact();
            from_cotree(&compact)
        })
        .collect::<Result<Vec<_>, _>>()?;
    let composed = compose_inflation(&quotient, &parts)?;
    let layout = f.vertex_order();
    let order = composed.order.iter().map(|&pos| layout[pos]).collect();
    let w = Witness { expression: composed.expression, order };
    debug_assert!(evaluate(&w.expression).is_ok());
    Ok(w)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cotree::{cotree_to_graph, enumerate_cotrees};
    use crate::expr::{parse, validate_builds, Match};
    use crate::graph::inflate;
    use crate::patterns::is_quasi_threshold;

    #[test]
    fn gk_small_cases() {
        let g1 = generate_gk(1);
        assert_eq!(g1.graph, Graph::complete(2));
        assert_eq!(g1.expression.label_count(), 2);

        let g2 = generate_gk(2);
        assert_eq!(g2.graph.vertex_count(), 9);
        assert_eq!(g2.expression.label_count(), 3);
        assert!(validate_builds(&g2.expression, &g2.graph, Match::Identity).unwrap());

        let g3 = generate_gk(3);
        assert_eq!(g3.graph.vertex_count(), 37);
        assert_eq!(g3.expression.label_count(), 4);
        assert!(validate_builds(&g3.expression, &g3.graph, Match::Identity).unwrap());
    }

    #[test]
    fn gk_family_invariants() {
        let mut prev_n = 0;
        for k in 1..=4 {
            let gk = generate_gk(k);
            let n = gk.graph.vertex_count();
            if k > 1 {
                assert_eq!(n, 4 * prev_n + 1);
            }
            prev_n = n;
            assert_eq!(gk.expression.label_count(), k + 1);
            assert!(validate_builds(&gk.expression, &gk.graph, Match::Identity).unwrap());
            assert!(is_quasi_threshold(&gk.graph));
        }
    }

    #[test]
    fn threshold_expressions() {
        let w = threshold_expression(&Graph::empty(5)).unwrap();
        assert_eq!(w.label_count(), 1);
        assert!(w.builds(&Graph::empty(5)));

        let w = threshold_expression(&Graph::complete(3)).unwrap();
        assert_eq!(w.label_count(), 2);
        assert!(w.builds(&Graph::complete(3)));

        let star = Graph::star(4);
        let w = threshold_expression(&star).unwrap();
        assert_eq!(w.label_count(), 2);
        assert!(w.builds(&star));

        assert_eq!(threshold_expression(&Graph::path(4)), Err(ExprError::NotThreshold));
        assert!(threshold_expression(&Graph::empty(0)).unwrap().expression.ops.is_empty());
    }

    #[test]
    fn compose_c4() {
        let k2 = Witness::identity(parse("v a\nv b\ne a b\n").unwrap());
        let co_k2 = Witness::identity(parse("v a\nv a\n").unwrap());
        let w = compose_inflation(&k2, &[co_k2.clone(), co_k2]).unwrap();
        let c4 = inflate(&Graph::complete(2), &[Graph::empty(2), Graph::empty(2)]).unwrap().graph;
        assert!(w.builds(&c4));
        assert!(w.label_count() <= 3);
    }

    #[test]
    fn compose_with_singletons_is_the_quotient() {
        let e = parse("v a\nv b\ne a b\nr b a\nv b\ne a b\n").unwrap();
        let singletons = vec![Witness::identity(parse("v x\n").unwrap()); 3];
        let w = compose_inflation(&Witness::identity(e.clone()), &singletons).unwrap();
        assert!(w.builds(&evaluate(&e).unwrap().0));
        assert_eq!(w.label_count(), 2);
    }

    #[test]
    fn compose_errors() {
        let k2 = Witness::identity(parse("v a\nv b\ne a b\n").unwrap());
        let one = Witness::identity(parse("v a\n").unwrap());
        assert_eq!(
            compose_inflation(&k2, std::slice::from_ref(&one)),
            Err(ExprError::LengthMismatch { expected: 2, found: 1 })
        );
        let empty = Witness::identity(LcwExpression::default());
        assert!(matches!(compose_inflation(&k2, &[one, empty]), Err(ExprError::Graph(GraphError::EmptyPart(1)))));
    }

    #[test]
    fn upper_bound_examples() {
        let star = Graph::star(3);
        let w = upper_bound_expression(&star).unwrap();
        assert!(w.builds(&star));
        assert!(w.label_count() <= 2);

        let c4 = Graph::cycle(4);
        let w = upper_bound_expression(&c4).unwrap();
        assert!(w.builds(&c4));
        assert!(w.label_count() <= 4);

        assert!(matches!(upper_bound_expression(&Graph::path(4)), Err(ExprError::Cotree(_))));
    }

    #[test]
    fn upper_bound_on_gk_matches_the_generator() {
        for k in 1..=3 {
            let gk = generate_gk(k);
            let w = upper_bound_expression(&gk.graph).unwrap();
            assert!(w.builds(&gk.graph));
            assert_eq!(w.label_count(), k + 1);
        }
    }

    #[test]
    fn upper_bound_on_every_small_cograph() {
        for n in 1..=8 {
            for c in enumerate_cotrees(n) {
                let g = cotree_to_graph(&c);
                let w = upper_bound_expression(&g).unwrap();
                assert!(w.builds(&g), "{c}");
                let depth = threshold_factorize(&build_cotree(&g).unwrap()).depth;
                assert!(w.label_count() <= 2 * depth, "{c}: {} labels, depth {depth}", w.label_count());
            }
        }
    }
}
