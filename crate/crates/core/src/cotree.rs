//! Cotrees: the union/join decomposition trees of cographs.
//!
//! Text format is an s-expression, `(J (U 0 1) (U 2 3))`, with `U` for
//! disjoint union, `J` for join, and bare integers for leaves.

use std::fmt;

use crate::error::{CotreeError, FormatError};
use crate::graph::{Graph, VertexSet};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum NodeKind {
    Union,
    Join,
}

impl NodeKind {
    pub fn opposite(self) -> NodeKind {
        match self {
            NodeKind::Union => NodeKind::Join,
            NodeKind::Join => NodeKind::Union,
        }
    }

    fn tag(self) -> char {
        match self {
            NodeKind::Union => 'U',
            NodeKind::Join => 'J',
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Cotree {
    Leaf(usize),
    Node(NodeKind, Vec<Cotree>),
}

impl Cotree {
    pub fn is_leaf(&self) -> bool {
        matches!(self, Cotree::Leaf(_))
    }

    pub fn children(&self) -> &[Cotree] {
        match self {
            Cotree::Leaf(_) => &[],
            Cotree::Node(_, c) => c,
        }
    }

    pub fn kind(&self) -> Option<NodeKind> {
        match self {
            Cotree::Leaf(_) => None,
            Cotree::Node(k, _) => Some(*k),
        }
    }

    pub fn leaf_count(&self) -> usize {
        match self {
            Cotree::Leaf(_) => 1,
            Cotree::Node(_, c) => c.iter().map(Cotree::leaf_count).sum(),
        }
    }

    /// Leaf vertex ids in left-to-right order.
    pub fn leaves(&self) -> Vec<usize> {
        let mut out = Vec::new();
        self.collect_leaves(&mut out);
        out
    }

    fn collect_leaves(&self, out: &mut Vec<usize>) {
        match self {
            Cotree::Leaf(v) => out.push(*v),
            Cotree::Node(_, c) => c.iter().for_each(|ch| ch.collect_leaves(out)),
        }
    }

    fn min_leaf(&self) -> usize {
        match self {
            Cotree::Leaf(v) => *v,
            Cotree::Node(_, c) => c.iter().map(Cotree::min_leaf).min().unwrap_or(usize::MAX),
        }
    }

    /// Shape code shared by isomorphic cotrees: `x` for a leaf, otherwise the
    /// node tag followed by the sorted child codes in parentheses.
    pub fn code(&self) -> String {
        match self {
            Cotree::Leaf(_) => "x".to_string(),
            Cotree::Node(k, c) => {
                let mut codes: Vec<String> = c.iter().map(Cotree::code).collect();
                codes.sort();
                format!("{}({})", k.tag(), codes.concat())
            }
        }
    }

    /// Flattens same-kind parent/child pairs and sorts children by shape code,
    /// breaking ties by smallest leaf id.
    pub fn canonicalize(&self) -> Cotree {
        match self {
            Cotree::Leaf(v) => Cotree::Leaf(*v),
            Cotree::Node(kind, children) => {
                let mut flat = Vec::new();
                for ch in children {
                    match ch.canonicalize() {
                        Cotree::Node(k, grand) if k == *kind => flat.extend(grand),
                        other => flat.push(other),
                    }
                }
                if flat.len() == 1 {
                    return flat.pop().unwrap();
                }
                let mut keyed: Vec<(String, usize, Cotree)> =
                    flat.into_iter().map(|c| (c.code(), c.min_leaf(), c)).collect();
                keyed.sort_by(|a, b| a.0.cmp(&b.0).then(a.1.cmp(&b.1)));
                Cotree::Node(*kind, keyed.into_iter().map(|(_, _, c)| c).collect())
            }
        }
    }

    pub fn is_canonical(&self) -> bool {
        *self == self.canonicalize()
    }

    /// Checks that internal nodes have at least two children and that the
    /// leaves are exactly `0..leaf_count`, each once.
    pub fn validate(&self) -> Result<(), CotreeError> {
        fn walk(t: &Cotree) -> Result<(), CotreeError> {
            if let Cotree::Node(_, c) = t {
                if c.len() < 2 {
                    return Err(CotreeError::Invalid("internal node with fewer than two children".into()));
                }
                c.iter().try_for_each(walk)?;
            }
            Ok(())
        }
        walk(self)?;
        let mut leaves = self.leaves();
        leaves.sort_unstable();
        if leaves.iter().enumerate().any(|(i, &v)| i != v) {
            return Err(CotreeError::Invalid("leaves must be exactly 0..n, each once".into()));
        }
        Ok(())
    }

    /// Relabels leaves by `map[old] = new`.
    pub fn relabel(&self, map: &[usize]) -> Cotree {
        match self {
            Cotree::Leaf(v) => Cotree::Leaf(map[*v]),
            Cotree::Node(k, c) => Cotree::Node(*k, c.iter().map(|ch| ch.relabel(map)).collect()),
        }
    }

    /// The same tree with leaves renumbered `0..leaf_count` in ascending order
    /// of their original ids. Returns the tree and the sorted original ids.
    pub fn compact(&self) -> (Cotree, Vec<usize>) {
        let mut ids = self.leaves();
        ids.sort_unstable();
        let max = ids.last().copied().unwrap_or(0);
        let mut map = vec![usize::MAX; max + 1];
        for (i, &v) in ids.iter().enumerate() {
            map[v] = i;
        }
        (self.relabel(&map), ids)
    }
}

impl fmt::Display for Cotree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Cotree::Leaf(v) => write!(f, "{v}"),
            Cotree::Node(k, c) => {
                write!(f, "({}", k.tag())?;
                for ch in c {
                    write!(f, " {ch}")?;
                }
                write!(f, ")")
            }
        }
    }
}

/// Parses the s-expression format. The tree is returned as written; call
/// [`Cotree::canonicalize`] for the canonical form.
pub fn parse_cotree(text: &str) -> Result<Cotree, FormatError> {
    let mut p = Parser { s: text.as_bytes(), pos: 0 };
    p.skip_ws();
    let t = p.tree()?;
    p.skip_ws();
    if p.pos != p.s.len() {
        return Err(p.err("trailing input"));
    }
    t.validate().map_err(|e| FormatError::Cotree { col: 1, msg: e.to_string() })?;
    Ok(t)
}

struct Parser<'a> {
    s: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn err(&self, msg: &str) -> FormatError {
        FormatError::Cotree { col: self.pos + 1, msg: msg.to_string() }
    }

    fn skip_ws(&mut self) {
        while self.s.get(self.pos).is_some_and(u8::is_ascii_whitespace) {
            self.pos += 1;
        }
    }

    fn tree(&mut self) -> Result<Cotree, FormatError> {
        match self.s.get(self.pos) {
            Some(b'(') => {
                self.pos += 1;
                self.skip_ws();
                let kind = match self.s.get(self.pos) {
                    Some(b'U') => NodeKind::Union,
                    Some(b'J') => NodeKind::Join,
                    _ => return Err(self.err("expected `U` or `J`")),
                };
                self.pos += 1;
                let mut children = Vec::new();
                loop {
                    let before = self.pos;
                    self.skip_ws();
                    match self.s.get(self.pos) {
                        Some(b')') => {
                            self.pos += 1;
                            break;
                        }
                        None => return Err(self.err("unclosed `(`")),
                        Some(_) if before == self.pos => return Err(self.err("expected whitespace")),
                        Some(_) => children.push(self.tree()?),
                    }
                }
                Ok(Cotree::Node(kind, children))
            }
            Some(c) if c.is_ascii_digit() => {
                let start = self.pos;
                while self.s.get(self.pos).is_some_and(u8::is_ascii_digit) {
                    self.pos += 1;
                }
                let digits = std::str::from_utf8(&self.s[start..self.pos]).unwrap();
                digits.parse().map(Cotree::Leaf).map_err(|_| self.err("leaf id too large"))
            }
            _ => Err(self.err("expected `(` or a vertex id")),
        }
    }
}

/// Builds the canonical cotree of a cograph by recursive complement
/// connectivity: a cograph on two or more vertices is disconnected or has a
/// disconnected complement, and the pieces are cographs again.
pub fn build_cotree(g: &Graph) -> Result<Cotree, CotreeError> {
    if g.vertex_count() == 0 {
        return Err(CotreeError::EmptyGraph);
    }
    let all: Vec<usize> = (0..g.vertex_count()).collect();
    Ok(decompose(g, &all)?.canonicalize())
}

fn decompose(g: &Graph, vs: &[usize]) -> Result<Cotree, CotreeError> {
    if let [v] = vs {
        return Ok(Cotree::Leaf(*v));
    }
    let parts = split(g, vs, false);
    if parts.len() > 1 {
        return Ok(Cotree::Node(NodeKind::Union, parts.iter().map(|p| decompose(g, p)).collect::<Result<_, _>>()?));
    }
    let parts = split(g, vs, true);
    if parts.len() > 1 {
        return Ok(Cotree::Node(NodeKind::Join, parts.iter().map(|p| decompose(g, p)).collect::<Result<_, _>>()?));
    }
    Err(CotreeError::NotCograph)
}

/// Connected components of `g[vs]`, or of its complement.
fn split(g: &Graph, vs: &[usize], in_complement: bool) -> Vec<Vec<usize>> {
    let n = g.vertex_count();
    let mut rest = VertexSet::with_capacity(n);
    vs.iter().for_each(|&v| rest.insert(v));
    let mut out = Vec::new();
    loop {
        let Some(s) = rest.iter().next() else { break };
        rest.remove(s);
        let mut comp = vec![s];
        let mut i = 0;
        while i < comp.len() {
            let u = comp[i];
            i += 1;
            let mut next = rest.clone();
            if in_complement {
                next.difference_with(g.neighbors(u));
            } else {
                next.intersect_with(g.neighbors(u));
            }
            for w in next.iter() {
                rest.remove(w);
                comp.push(w);
            }
        }
        comp.sort_unstable();
        out.push(comp);
    }
    out
}

/// Evaluates unions and joins of the leaves.
pub fn cotree_to_graph(c: &Cotree) -> Graph {
    let n = c.leaves().iter().max().map_or(0, |m| m + 1);
    let mut g = Graph::empty(n);
    fn walk(t: &Cotree, g: &mut Graph) -> Vec<usize> {
        match t {
            Cotree::Leaf(v) => vec![*v],
            Cotree::Node(kind, children) => {
                let groups: Vec<Vec<usize>> = children.iter().map(|ch| walk(ch, g)).collect();
                if *kind == NodeKind::Join {
                    for (i, a) in groups.iter().enumerate() {
                        for b in &groups[i + 1..] {
                            for &u in a {
                                for &v in b {
                                    g.set_edge(u, v);
                                }
                            }
                        }
                    }
                }
                groups.concat()
            }
        }
    }
    walk(c, &mut g);
    g
}

/// Every join node has at most one non-leaf child.
pub fn is_quasi_threshold_cotree(c: &Cotree) -> bool {
    match c {
        Cotree::Leaf(_) => true,
        Cotree::Node(kind, children) => {
            let internal = children.iter().filter(|ch| !ch.is_leaf()).count();
            (*kind == NodeKind::Union || internal <= 1) && children.iter().all(is_quasi_threshold_cotree)
        }
    }
}

/// Every internal node has at most one internal child (a caterpillar).
pub fn is_threshold_cotree(c: &Cotree) -> bool {
    match c {
        Cotree::Leaf(_) => true,
        Cotree::Node(_, children) => {
            children.iter().filter(|ch| !ch.is_leaf()).count() <= 1 && children.iter().all(is_threshold_cotree)
        }
    }
}

/// A threshold quotient together with the sub-cotrees substituted into it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization {
    /// Threshold graph on the quotient vertices `0..m`.
    pub quotient: Graph,
    /// `parts[i]` replaces quotient vertex `i`; leaves keep their original ids.
    pub parts: Vec<Cotree>,
    pub depth: usize,
}

impl Factorization {
    /// Original vertex ids in the order the blocks of
    /// `inflate(quotient, part graphs)` lay them out: part by part, and within
    /// a part by ascending id.
    pub fn vertex_order(&self) -> Vec<usize> {
        self.parts.iter().flat_map(|p| p.compact().1).collect()
    }

    /// Part graphs with their leaves compacted to `0..size` by ascending id.
    pub fn part_graphs(&self) -> Vec<Graph> {
        self.parts.iter().map(|p| cotree_to_graph(&p.compact().0)).collect()
    }

    /// Inflates the quotient and maps the result back onto original ids.
    pub fn reconstruct(&self) -> Graph {
        let inflated = crate::graph::inflate(&self.quotient, &self.part_graphs()).expect("parts match quotient");
        inflated.graph.permute(&self.vertex_order())
    }
}

/// Peels the caterpillar spine from the root of a canonical cotree.
///
/// At each spine node the leaf children become quotient vertices, one
/// internal child (most leaves, ties to the first in canonical order)
/// continues the spine, and the other internal children become parts.
pub fn threshold_factorize(c: &Cotree) -> Factorization {
    // (spine depth, kind of spine node) per quotient vertex, with its part
    let mut attached: Vec<(usize, NodeKind, Cotree)> = Vec::new();
    let mut node = c;
    let mut level = 0;
    loop {
        let Cotree::Node(kind, children) = node else {
            // a bare leaf only occurs at the root
            attached.push((0, NodeKind::Union, node.clone()));
            break;
        };
        let next = children
            .iter()
            .enumerate()
            .filter(|(_, ch)| !ch.is_leaf())
            .max_by(|(i, a), (j, b)| a.leaf_count().cmp(&b.leaf_count()).then(j.cmp(i)))
            .map(|(i, _)| i);
        for (i, ch) in children.iter().enumerate() {
            if Some(i) != next {
                attached.push((level, *kind, ch.clone()));
            }
        }
        match next {
            Some(i) => {
                node = &children[i];
                level += 1;
            }
            None => break,
        }
    }

    let m = attached.len();
    let mut quotient = Graph::empty(m);
    for a in 0..m {
        for b in a + 1..m {
            let (la, ka, _) = &attached[a];
            let (lb, kb, _) = &attached[b];
            let kind = if la <= lb { ka } else { kb };
            if *kind == NodeKind::Join {
                quotient.set_edge(a, b);
            }
        }
    }
    let parts: Vec<Cotree> = attached.into_iter().map(|(_, _, p)| p).collect();
    let depth = 1 + parts.iter().filter(|p| !p.is_leaf()).map(|p| threshold_factorize(p).depth).max().unwrap_or(0);
    Factorization { quotient, parts, depth }
}

/// All canonical cotree shapes with `n` leaves, leaves numbered left to right.
/// Each shape is one cograph up to isomorphism.
pub fn enumerate_cotrees(n: usize) -> Vec<Cotree> {
    if n == 0 {
        return Vec::new();
    }
    if n == 1 {
        return vec![Cotree::Leaf(0)];
    }
    // shapes[m] = shapes with m leaves rooted at a Union node (m >= 2)
    let mut shapes: Vec<Vec<Cotree>> = vec![Vec::new(), vec![Cotree::Leaf(0)]];
    for m in 2..=n {
        let mut found = Vec::new();
        multisets(&shapes, m, m, 0, &mut Vec::new(), &mut found);
        shapes.push(found);
    }
    let mut out = Vec::new();
    for kind in [NodeKind::Union, NodeKind::Join] {
        for s in &shapes[n] {
            let t = if kind == NodeKind::Union { s.clone() } else { flip(s) };
            out.push(number_leaves(&t, &mut 0));
        }
    }
    let mut keyed: Vec<(String, Cotree)> = out.into_iter().map(|t| (t.code(), t)).collect();
    keyed.sort_by(|a, b| a.0.cmp(&b.0));
    keyed.into_iter().map(|(_, t)| t.canonicalize()).collect()
}

/// Union-rooted children lists: nondecreasing sequences of (size, index)
/// child choices whose sizes sum to `remaining`. A child of size `s >= 2`
/// is a Join-rooted shape, i.e. the flip of `shapes[s][index]`.
fn multisets(
    shapes: &[Vec<Cotree>],
    total: usize,
    remaining: usize,
    min_choice: usize,
    current: &mut Vec<(usize, usize)>,
    found: &mut Vec<Cotree>,
) {
    if remaining == 0 {
        if current.len() >= 2 {
            let children =
                current.iter().map(|&(s, i)| if s == 1 { Cotree::Leaf(0) } else { flip(&shapes[s][i]) }).collect();
            found.push(Cotree::Node(NodeKind::Union, children));
        }
        return;
    }
    // choices are ordered by (size, index); encode as a flat rank
    let mut rank = 0;
    for s in 1..total {
        let count = if s == 1 { 1 } else { shapes[s].len() };
        for i in 0..count {
            if rank >= min_choice && s <= remaining {
                current.push((s, i));
                multisets(shapes, total, remaining - s, rank, current, found);
                current.pop();
            }
            rank += 1;
        }
    }
}

fn flip(t: &Cotree) -> Cotree {
    match t {
        Cotree::Leaf(v) => Cotree::Leaf(*v),
        Cotree::Node(k, c) => Cotree::Node(k.opposite(), c.iter().map(flip).collect()),
    }
}

fn number_leaves(t: &Cotree, next: &mut usize) -> Cotree {
    match t {
        Cotree::Leaf(_) => {
            *next += 1;
            Cotree::Leaf(*next - 1)
        }
        Cotree::Node(k, c) => Cotree::Node(*k, c.iter().map(|ch| number_leaves(ch, next)).collect()),
    }
}
