//! Expression rewrites: insertion-label normal form, complementation,
//! label preservation, sink detection, doubling and the pivot construction.

use std::collections::BTreeSet;

use super::{evaluate, Label, LcwExpression, Op, Simulation};
use crate::error::ExprError;
use crate::graph::{complement, Graph};

/// A label that is empty at every insertion, if the expression has one.
fn free_at_every_insertion(e: &LcwExpression) -> Result<Option<Label>, ExprError> {
    let alphabet = e.alphabet();
    let mut candidates: Vec<bool> = vec![true; alphabet.len()];
    let mut sim = Simulation::new(e)?;
    for (i, op) in e.ops.iter().enumerate() {
        if let Op::AddVertex(_) = op {
            for (c, l) in candidates.iter_mut().zip(&alphabet) {
                *c &= sim.is_empty(l);
            }
        }
        sim.step(i, op, |_, _| {})?;
    }
    Ok(alphabet.into_iter().zip(candidates).find(|(_, c)| *c).map(|(l, _)| l))
}

/// Replays the insertions and relabels of `e`, inserting each vertex with the
/// insertion label and joining it at once to every current class of
/// earlier vertices that lies inside its `target` neighbourhood.
fn insertion_form(e: &LcwExpression, target: &Graph) -> Result<LcwExpression, ExprError> {
    let insertion = match free_at_every_insertion(e)? {
        Some(l) => l,
        None => e.fresh_label(),
    };
    let alphabet = e.alphabet();
    let mut sim = Simulation::new(e)?;
    let mut out = Vec::with_capacity(e.ops.len() * 2);
    for (i, op) in e.ops.iter().enumerate() {
        match op {
            Op::AddVertex(l) => {
                let v = sim.next_vertex;
                out.push(Op::AddVertex(insertion.clone()));
                for x in &alphabet {
                    let class = sim.class(x);
                    if x == &insertion || class.is_empty() {
                        continue;
                    }
                    let adjacent = class.iter().filter(|&&u| target.has_edge(u, v)).count();
                    debug_assert!(adjacent == 0 || adjacent == class.len(), "classes never split");
                    if adjacent == class.len() {
                        out.push(Op::AddEdges(insertion.clone(), x.clone()));
                    }
                }
                if l != &insertion {
                    out.push(Op::Relabel(insertion.clone(), l.clone()));
                }
            }
            Op::AddEdges(..) => {}
            Op::Relabel(..) => out.push(op.clone()),
        }
        sim.step(i, op, |_, _| {})?;
    }
    Ok(LcwExpression::new(out))
}

/// Rewrites `e` so that every vertex is inserted with one reserved label and
/// immediately joined to all of its already-inserted neighbours, then moved
/// to the label `e` gives it. Same graph, same insertion order, at most one
/// extra label (none when some label of `e` is free at every insertion).
pub fn normalize_insertion_label(e: &LcwExpression) -> Result<LcwExpression, ExprError> {
    let (g, _) = evaluate(e)?;
    insertion_form(e, &g)
}

/// An expression for the complement of the graph `e` builds: the insertion
/// form of `e`, joining each new vertex to its earlier non-neighbours instead.
pub fn complement_expression(e: &LcwExpression) -> Result<LcwExpression, ExprError> {
    let (g, _) = evaluate(e)?;
    insertion_form(e, &complement(&g))
}

fn swap(l: &Label, a: &Label, b: &Label) -> Label {
    if l == a {
        b.clone()
    } else if l == b {
        a.clone()
    } else {
        l.clone()
    }
}

/// Rewrites `e` so that vertices labeled `keep` are never relabeled.
///
/// The first `Relabel(keep, k)` becomes `Relabel(k, keep)` (or disappears
/// when `k` is empty at that moment) and `keep`/`k` are swapped in every
/// later operation; this repeats until no relabel reads from `keep`.
pub fn preserve_label(e: &LcwExpression, keep: &Label) -> Result<LcwExpression, ExprError> {
    e.validate()?;
    if !e.uses_label(keep) {
        return Err(ExprError::UnusedLabel(keep.to_string()));
    }
    let mut ops = e.ops.clone();
    let mut from = 0;
    while let Some(p) = (from..ops.len()).find(|&i| matches!(&ops[i], Op::Relabel(a, _) if a == keep)) {
        let Op::Relabel(_, k) = ops[p].clone() else { unreachable!() };
        let current = LcwExpression::new(ops[..p].to_vec());
        let mut sim = Simulation::new(&LcwExpression::new(ops.clone()))?;
        for (i, op) in current.ops.iter().enumerate() {
            sim.step(i, op, |_, _| {})?;
        }
        let mut tail: Vec<Op> = ops[p + 1..]
            .iter()
            .map(|op| match op {
                Op::AddVertex(a) => Op::AddVertex(swap(a, keep, &k)),
                Op::AddEdges(a, b) => Op::AddEdges(swap(a, keep, &k), swap(b, keep, &k)),
                Op::Relabel(a, b) => Op::Relabel(swap(a, keep, &k), swap(b, keep, &k)),
            })
            .collect();
        ops.truncate(p);
        if !sim.is_empty(&k) {
            ops.push(Op::Relabel(k.clone(), keep.clone()));
            from = p + 1;
        } else {
            from = p;
        }
        ops.append(&mut tail);
    }
    Ok(LcwExpression::new(ops))
}

/// Labels never mentioned by an edge operation and never relabeled away.
/// Relabel targets do not disqualify a label.
pub fn sink_labels(e: &LcwExpression) -> BTreeSet<Label> {
    let mut out: BTreeSet<Label> = e.alphabet().into_iter().collect();
    for op in &e.ops {
        match op {
            Op::AddEdges(a, b) => {
                out.remove(a);
                out.remove(b);
            }
            Op::Relabel(a, _) => {
                out.remove(a);
            }
            Op::AddVertex(_) => {}
        }
    }
    out
}

pub fn is_sink_free(e: &LcwExpression) -> bool {
    sink_labels(e).is_empty()
}

/// Appends `Relabel(l, to)` for every label other than `to` that currently
/// carries vertices in `sim`.
fn collapse_onto(sim: &Simulation, alphabet: &[Label], to: &Label, out: &mut Vec<Op>) {
    for l in alphabet {
        if l != to && !sim.is_empty(l) {
            out.push(Op::Relabel(l.clone(), to.clone()));
        }
    }
}

fn final_simulation(e: &LcwExpression) -> Result<Simulation, ExprError> {
    let mut sim = Simulation::new(e)?;
    for (i, op) in e.ops.iter().enumerate() {
        sim.step(i, op, |_, _| {})?;
    }
    Ok(sim)
}

/// Builds `G ∪ G` from an expression for `G`: run `e`, move everything onto a
/// fresh label, run `e` again. The fresh label is a sink of the result.
pub fn double_with_new_label(e: &LcwExpression) -> Result<LcwExpression, ExprError> {
    let sim = final_simulation(e)?;
    let sink = e.fresh_label();
    let mut ops = e.ops.clone();
    collapse_onto(&sim, &e.alphabet(), &sink, &mut ops);
    ops.extend(e.ops.iter().cloned());
    Ok(LcwExpression::new(ops))
}

/// Builds `(G ∪ G) ∗ K1` from an expression for `G` with sink label `sink`,
/// without adding labels: two copies of `G`, each collapsed onto the sink,
/// then an apex with another label joined to the sink.
pub fn pivot_construction(e: &LcwExpression, sink: &Label) -> Result<LcwExpression, ExprError> {
    let (g, _) = evaluate(e)?;
    if !sink_labels(e).contains(sink) {
        return Err(ExprError::NotASink(sink.to_string()));
    }
    if g.is_edgeless() {
        return Err(ExprError::EdgelessInput);
    }
    let alphabet = e.alphabet();
    let apex = alphabet.iter().find(|l| *l != sink).expect("an edge needs two labels").clone();
    let sim = final_simulation(e)?;
    let mut ops = e.ops.clone();
    collapse_onto(&sim, &alphabet, sink, &mut ops);
    ops.extend(e.ops.iter().cloned());
    collapse_onto(&sim, &alphabet, sink, &mut ops);
    ops.push(Op::AddVertex(apex.clone()));
    ops.push(Op::AddEdges(apex, sink.clone()));
    Ok(LcwExpression::new(ops))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::{label, parse};
    use crate::graph::{disjoint_union, join};

    fn ex(t: &str) -> LcwExpression {
        parse(t).unwrap()
    }

    fn graph(e: &LcwExpression) -> Graph {
        evaluate(e).unwrap().0
    }

    const K2: &str = "v a\nv b\ne a b\n";

    #[test]
    fn normalize_k2_reuses_a_free_label() {
        let e = ex(K2);
        let n = normalize_insertion_label(&e).unwrap();
        assert_eq!(graph(&n), Graph::complete(2));
        assert_eq!(n.label_count(), 2);
        assert!(n
            .ops
            .iter()
            .filter_map(|op| if let Op::AddVertex(l) = op { Some(l) } else { None })
            .all(|l| l == &label("b")));
    }

    #[test]
    fn normalize_adds_a_label_when_none_is_free() {
        let e = ex("v a\nv b\ne a b\nr a b\nv a\ne a b\n");
        let n = normalize_insertion_label(&e).unwrap();
        assert_eq!(graph(&n), Graph::complete(3));
        assert_eq!(n.label_count(), 3);
        assert!(n.uses_label(&label("_t0")));
    }

    #[test]
    fn normalize_edgeless() {
        let n = normalize_insertion_label(&ex("v a\nv a\n")).unwrap();
        assert_eq!(graph(&n), Graph::empty(2));
    }

    #[test]
    fn complement_examples() {
        let c = complement_expression(&ex(K2)).unwrap();
        assert_eq!(graph(&c), Graph::empty(2));
        let c = complement_expression(&ex("v a\nv a\nv a\n")).unwrap();
        assert_eq!(graph(&c), Graph::complete(3));
        assert!(c.label_count() <= 2);
    }

    #[test]
    fn preserve_without_relabels_is_identity() {
        let e = ex(K2);
        assert_eq!(preserve_label(&e, &label("a")).unwrap(), e);
        assert_eq!(preserve_label(&e, &label("z")), Err(ExprError::UnusedLabel("z".into())));
    }

    #[test]
    fn preserve_hand_trace() {
        // a-vertex moves onto b, then b joins c: preserving a pulls b onto a
        // and swaps the roles of a and b afterwards
        let e = ex("v a\nv b\nr a b\nv c\ne b c\nv a\ne a c\n");
        let p = preserve_label(&e, &label("a")).unwrap();
        assert_eq!(serialize_ops(&p), "v a\nv b\nr b a\nv c\ne a c\nv b\ne b c\n");
        assert_eq!(graph(&p), graph(&e));
    }

    #[test]
    fn preserve_drops_a_rename() {
        let e = ex("v a\nr a b\nv a\ne a b\n");
        let p = preserve_label(&e, &label("a")).unwrap();
        assert_eq!(serialize_ops(&p), "v a\nv b\ne b a\n");
        assert_eq!(graph(&p), graph(&e));
    }

    fn serialize_ops(e: &LcwExpression) -> String {
        crate::expr::serialize(e)
    }

    #[test]
    fn sink_examples() {
        assert!(sink_labels(&ex(K2)).is_empty());
        assert_eq!(sink_labels(&ex("v a\nv b\ne a b\nv s\n")), [label("s")].into());
    }

    #[test]
    fn relabel_targets_stay_sinks() {
        assert_eq!(sink_labels(&ex("v a\nv b\ne a b\nr a s\nr b s\n")), [label("s")].into());
    }

    #[test]
    fn double_k2() {
        let d = double_with_new_label(&ex(K2)).unwrap();
        let k2 = Graph::complete(2);
        assert_eq!(graph(&d), disjoint_union(&k2, &k2));
        assert_eq!(d.label_count(), 3);
        assert_eq!(sink_labels(&d), [label("_t0")].into());
    }

    #[test]
    fn pivot_on_doubled_k2_builds_g2() {
        let d = double_with_new_label(&ex(K2)).unwrap();
        let p = pivot_construction(&d, &label("_t0")).unwrap();
        let k2 = Graph::complete(2);
        let two = disjoint_union(&k2, &k2);
        let expected = join(&disjoint_union(&two, &two), &Graph::complete(1));
        assert_eq!(graph(&p), expected);
        assert_eq!(p.vertex_count(), 9);
        assert_eq!(p.label_count(), 3);
    }

    #[test]
    fn pivot_errors() {
        let d = double_with_new_label(&ex(K2)).unwrap();
        assert_eq!(pivot_construction(&d, &label("a")), Err(ExprError::NotASink("a".into())));
        let edgeless = ex("v a\nv s\n");
        assert_eq!(pivot_construction(&edgeless, &label("s")), Err(ExprError::EdgelessInput));
    }
}
