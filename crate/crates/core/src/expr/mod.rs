//! Linear clique-width expressions.
//!
//! An expression is a flat sequence of three operations over symbolic
//! labels: add a vertex with a label, join every vertex of one label to every
//! vertex of another, and move every vertex of one label to another label.
//! Vertices are numbered in insertion order.
//!
//! Well-formedness: `AddEdges` and `Relabel` need two distinct labels, and
//! every label they read from (both `AddEdges` operands, the `Relabel`
//! source) must carry at least one vertex at that moment. A `Relabel` target
//! may be empty or brand new, in which case the operation is a rename.

mod construct;
mod dsl;
mod transform;

use std::collections::HashMap;
use std::fmt;

pub use construct::{compose_inflation, generate_gk, threshold_expression, upper_bound_expression, GkInstance};
pub use dsl::{parse, parse_witness, serialize, serialize_witness};
pub use transform::{
    complement_expression, double_with_new_label, is_sink_free, normalize_insertion_label, pivot_construction,
    preserve_label, sink_labels,
};

use crate::error::ExprError;
use crate::graph::Graph;
use crate::iso::is_isomorphic;

/// A label token over `[A-Za-z0-9_]`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Label(String);

impl Label {
    pub fn new(s: impl Into<String>) -> Result<Label, ExprError> {
        let s = s.into();
        if is_label_token(&s) {
            Ok(Label(s))
        } else {
            Err(ExprError::Syntax { line: 0, col: 0, msg: format!("invalid label `{s}`") })
        }
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }

    /// Reserved-prefix label `_t<i>`.
    pub(crate) fn fresh(i: usize) -> Label {
        Label(format!("_t{i}"))
    }
}

pub(crate) fn is_label_token(s: &str) -> bool {
    !s.is_empty() && s.bytes().all(|b| b.is_ascii_alphanumeric() || b == b'_')
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl fmt::Debug for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Shorthand for building labels in code; panics on invalid tokens.
pub fn label(s: &str) -> Label {
    Label::new(s).expect("valid label token")
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Op {
    AddVertex(Label),
    AddEdges(Label, Label),
    Relabel(Label, Label),
}

impl Op {
    pub fn labels(&self) -> impl Iterator<Item = &Label> {
        let (a, b) = match self {
            Op::AddVertex(a) => (a, None),
            Op::AddEdges(a, b) | Op::Relabel(a, b) => (a, Some(b)),
        };
        std::iter::once(a).chain(b)
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct LcwExpression {
    pub ops: Vec<Op>,
}

impl LcwExpression {
    pub fn new(ops: Vec<Op>) -> Self {
        LcwExpression { ops }
    }

    pub fn vertex_count(&self) -> usize {
        self.ops.iter().filter(|op| matches!(op, Op::AddVertex(_))).count()
    }

    /// Distinct labels in order of first appearance.
    pub fn alphabet(&self) -> Vec<Label> {
        let mut seen = Vec::<Label>::new();
        for l in self.ops.iter().flat_map(Op::labels) {
            if !seen.contains(l) {
                seen.push(l.clone());
            }
        }
        seen
    }

    pub fn label_count(&self) -> usize {
        self.alphabet().len()
    }

    pub fn uses_label(&self, l: &Label) -> bool {
        self.ops.iter().flat_map(Op::labels).any(|x| x == l)
    }

    /// The first `_t<i>` label not already in the expression.
    pub(crate) fn fresh_label(&self) -> Label {
        let alphabet = self.alphabet();
        (0..).map(Label::fresh).find(|l| !alphabet.contains(l)).unwrap()
    }

    pub fn validate(&self) -> Result<(), ExprError> {
        let mut sim = Simulation::new(self)?;
        for (i, op) in self.ops.iter().enumerate() {
            sim.step(i, op, |_, _| {})?;
        }
        Ok(())
    }

    /// Largest number of labels simultaneously carrying a vertex.
    pub fn max_labels_in_use(&self) -> Result<usize, ExprError> {
        let mut sim = Simulation::new(self)?;
        let mut best = 0;
        for (i, op) in self.ops.iter().enumerate() {
            sim.step(i, op, |_, _| {})?;
            best = best.max(sim.in_use());
        }
        Ok(best)
    }
}

/// Tracks label classes while replaying an expression.
pub(crate) struct Simulation {
    index: HashMap<Label, usize>,
    pub(crate) members: Vec<Vec<usize>>,
    pub(crate) next_vertex: usize,
}

impl Simulation {
    pub(crate) fn new(e: &LcwExpression) -> Result<Self, ExprError> {
        let index = e.alphabet().into_iter().enumerate().map(|(i, l)| (l, i)).collect::<HashMap<_, _>>();
        let members = vec![Vec::new(); index.len()];
        Ok(Simulation { index, members, next_vertex: 0 })
    }

    pub(crate) fn idx(&self, l: &Label) -> usize {
        self.index[l]
    }

    pub(crate) fn class(&self, l: &Label) -> &[usize] {
        &self.members[self.index[l]]
    }

    pub(crate) fn is_empty(&self, l: &Label) -> bool {
        self.index.get(l).is_none_or(|&i| self.members[i].is_empty())
    }

    pub(crate) fn in_use(&self) -> usize {
        self.members.iter().filter(|m| !m.is_empty()).count()
    }

    /// Applies one operation; `on_edge(u, v)` is called for every vertex pair
    /// an `AddEdges` connects.
    pub(crate) fn step(
        &mut self,
        index: usize,
        op: &Op,
        mut on_edge: impl FnMut(usize, usize),
    ) -> Result<(), ExprError> {
        let bad = |msg: String| ExprError::Malformed { index, msg };
        match op {
            Op::AddVertex(l) => {
                let i = self.idx(l);
                self.members[i].push(self.next_vertex);
                self.next_vertex += 1;
            }
            Op::AddEdges(a, b) => {
                if a == b {
                    return Err(bad(format!("edge operation joins `{a}` to itself")));
                }
                for l in [a, b] {
                    if self.is_empty(l) {
                        return Err(bad(format!("label `{l}` has no vertices")));
                    }
                }
                let (ia, ib) = (self.idx(a), self.idx(b));
                for &u in &self.members[ia] {
                    for &v in &self.members[ib] {
                        on_edge(u, v);
                    }
                }
            }
            Op::Relabel(a, b) => {
                if a == b {
                    return Err(bad(format!("relabel of `{a}` onto itself")));
                }
                if self.is_empty(a) {
                    return Err(bad(format!("label `{a}` has no vertices")));
                }
                let (ia, ib) = (self.idx(a), self.idx(b));
                let moved = std::mem::take(&mut self.members[ia]);
                self.members[ib].extend(moved);
            }
        }
        Ok(())
    }

    /// Current label of every vertex inserted so far.
    pub(crate) fn labeling(&self, alphabet: &[Label]) -> Vec<Label> {
        let mut out = vec![None; self.next_vertex];
        for (i, m) in self.members.iter().enumerate() {
            for &v in m {
                out[v] = Some(alphabet[i].clone());
            }
        }
        out.into_iter().map(|l| l.expect("every vertex has a label")).collect()
    }
}

/// Runs the expression: the graph on vertices numbered by insertion order and
/// the final label of each vertex.
pub fn evaluate(e: &LcwExpression) -> Result<(Graph, Vec<Label>), ExprError> {
    let mut g = Graph::empty(e.vertex_count());
    let mut sim = Simulation::new(e)?;
    for (i, op) in e.ops.iter().enumerate() {
        sim.step(i, op, |u, v| g.set_edge(u, v))?;
    }
    let labels = sim.labeling(&e.alphabet());
    Ok((g, labels))
}

/// How the vertices of an evaluated expression are matched against a graph.
#[derive(Clone, Copy, Debug)]
pub enum Match<'a> {
    /// The `i`-th inserted vertex is vertex `i`.
    Identity,
    /// The `i`-th inserted vertex is vertex `order[i]`.
    Order(&'a [usize]),
    /// Any bijection; meant for graphs of about ten vertices.
    Isomorphic,
}

pub fn validate_builds(e: &LcwExpression, g: &Graph, mode: Match<'_>) -> Result<bool, ExprError> {
    let (built, _) = evaluate(e)?;
    Ok(match mode {
        Match::Identity => built == *g,
        Match::Order(order) => placed(&built, order).is_some_and(|b| b == *g),
        Match::Isomorphic => is_isomorphic(&built, g),
    })
}

fn placed(built: &Graph, order: &[usize]) -> Option<Graph> {
    let n = built.vertex_count();
    if order.len() != n {
        return None;
    }
    let mut seen = vec![false; n];
    for &v in order {
        if v >= n || std::mem::replace(&mut seen[v], true) {
            return None;
        }
    }
    Some(built.permute(order))
}

/// An expression together with the graph vertex each insertion creates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub expression: LcwExpression,
    /// `order[i]` is the target vertex created by the `i`-th insertion.
    pub order: Vec<usize>,
}

impl Witness {
    /// A witness whose insertions create vertices `0, 1, 2, ...`.
    pub fn identity(expression: LcwExpression) -> Self {
        let order = (0..expression.vertex_count()).collect();
        Witness { expression, order }
    }

    pub fn label_count(&self) -> usize {
        self.expression.label_count()
    }

    /// The built graph on target vertex ids.
    pub fn graph(&self) -> Result<Graph, ExprError> {
        let (built, _) = evaluate(&self.expression)?;
        placed(&built, &self.order)
            .ok_or(ExprError::LengthMismatch { expected: built.vertex_count(), found: self.order.len() })
    }

    pub fn builds(&self, g: &Graph) -> bool {
        self.graph().is_ok_and(|b| b == *g)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn ex(text: &str) -> LcwExpression {
        parse(text).unwrap()
    }

    #[test]
    fn evaluate_examples() {
        let (g, labels) = evaluate(&ex("v a\nv b\ne a b\n")).unwrap();
        assert_eq!(g, Graph::complete(2));
        assert_eq!(labels, vec![label("a"), label("b")]);

        // hand trace: {0:a, 1:b} + edge 0-1; 1 -> a; vertex 2 labeled b; join a-b
        let (g, labels) = evaluate(&ex("v a\nv b\ne a b\nr b a\nv b\ne a b\n")).unwrap();
        assert_eq!(g, Graph::complete(3));
        assert_eq!(labels, vec![label("a"), label("a"), label("b")]);

        let (g, _) = evaluate(&ex("v a\nv a\nv a\n")).unwrap();
        assert_eq!(g, Graph::empty(3));
    }

    #[test]
    fn evaluate_rejects_malformed() {
        let same = LcwExpression::new(vec![Op::AddVertex(label("a")), Op::AddEdges(label("a"), label("a"))]);
        assert!(matches!(evaluate(&same), Err(ExprError::Malformed { index: 1, .. })));
        let early = LcwExpression::new(vec![Op::AddVertex(label("a")), Op::AddEdges(label("a"), label("b"))]);
        assert!(matches!(evaluate(&early), Err(ExprError::Malformed { index: 1, .. })));
        let empty_source = LcwExpression::new(vec![Op::Relabel(label("a"), label("b"))]);
        assert!(matches!(evaluate(&empty_source), Err(ExprError::Malformed { index: 0, .. })));
    }

    #[test]
    fn relabel_to_new_label_is_a_rename_and_edges_are_idempotent() {
        let e = ex("v a\nr a z\nv b\ne z b\ne b z\n");
        let (g, labels) = evaluate(&e).unwrap();
        assert_eq!(g, Graph::complete(2));
        assert_eq!(labels[0], label("z"));
    }

    #[test]
    fn validate_builds_modes() {
        let k2 = ex("v a\nv b\ne a b\n");
        assert!(validate_builds(&k2, &Graph::complete(2), Match::Identity).unwrap());
        assert!(!validate_builds(&k2, &Graph::empty(2), Match::Identity).unwrap());
        let star = ex("v a\nv a\nv b\ne a b\n");
        let center_first = Graph::star(2);
        assert!(!validate_builds(&star, &center_first, Match::Identity).unwrap());
        assert!(validate_builds(&star, &center_first, Match::Order(&[1, 2, 0])).unwrap());
        assert!(validate_builds(&star, &center_first, Match::Isomorphic).unwrap());
        assert!(!validate_builds(&star, &center_first, Match::Order(&[1, 1, 0])).unwrap());
    }

    #[test]
    fn label_counts() {
        assert_eq!(ex("v a\nv b\ne a b\n").label_count(), 2);
        assert_eq!(ex("v a\n").label_count(), 1);
        assert_eq!(ex("v a\nr a b\nv a\n").alphabet(), vec![label("a"), label("b")]);
        assert_eq!(ex("v a\nr a b\nv c\n").max_labels_in_use().unwrap(), 2);
    }

    #[test]
    fn label_tokens() {
        assert!(Label::new("x_1A").is_ok());
        assert!(Label::new("").is_err());
        assert!(Label::new("a-b").is_err());
    }
}
