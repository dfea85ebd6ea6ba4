//! Breadth-first enumeration of raw operation sequences, used to check the
//! solver. Labels are explicit slots, every operation is tried, and states
//! are merged only when inserted set, partition and built edges all agree.

use std::collections::HashSet;

use super::{Decision, Outcome};
use crate::expr::{label, LcwExpression, Op, Witness};
use crate::graph::Graph;

#[derive(Clone)]
struct Node {
    slots: Vec<u64>,
    /// Built edges as a bit per vertex pair.
    built: u128,
    ops: Vec<(u8, u8, u8)>,
    order: Vec<usize>,
}

fn pair(u: usize, v: usize, n: usize) -> u32 {
    let (a, b) = if u < v { (u, v) } else { (v, u) };
    (a * n + b) as u32
}

fn key(node: &Node) -> (Vec<u64>, u128) {
    let mut classes: Vec<u64> = node.slots.iter().copied().filter(|&c| c != 0).collect();
    classes.sort_unstable();
    (classes, node.built)
}

/// Decides `lcw(g) <= k` by exhaustive search over sequences of at most
/// `max_ops` operations. Meant for graphs of at most about six vertices;
/// hitting `max_ops` with states left reports `BudgetExceeded`.
pub fn naive_oracle_lcw(g: &Graph, k: usize, max_ops: usize) -> Decision {
    let n = g.vertex_count();
    assert!(n * n <= 128, "oracle supports at most 11 vertices");
    let mut target = 0u128;
    for (u, v) in g.edges() {
        target |= 1 << pair(u, v, n);
    }
    let all = (1u64 << n) - 1;
    let names: Vec<_> = (0..k).map(|i| label(&((b'a' + i as u8) as char).to_string())).collect();
    let finish = |node: &Node, states: u64| {
        let ops = node
            .ops
            .iter()
            .map(|&(t, a, b)| match t {
                0 => Op::AddVertex(names[a as usize].clone()),
                1 => Op::AddEdges(names[a as usize].clone(), names[b as usize].clone()),
                _ => Op::Relabel(names[a as usize].clone(), names[b as usize].clone()),
            })
            .collect();
        let w = Witness { expression: LcwExpression::new(ops), order: node.order.clone() };
        Decision { outcome: Outcome::Yes(w), states }
    };

    let root = Node { slots: vec![0; k], built: 0, ops: Vec::new(), order: Vec::new() };
    let mut seen = HashSet::new();
    seen.insert(key(&root));
    let mut frontier = vec![root];
    for _ in 0..=max_ops {
        let mut next = Vec::new();
        for node in &frontier {
            let inserted = node.slots.iter().fold(0, |a, c| a | c);
            if inserted == all && node.built == target {
                return finish(node, seen.len() as u64);
            }
            let mut push = |child: Node| {
                if seen.insert(key(&child)) {
                    next.push(child);
                }
            };
            for v in (0..n).filter(|&v| inserted >> v & 1 == 0) {
                for l in 0..k {
                    let mut c = node.clone();
                    c.slots[l] |= 1 << v;
                    c.ops.push((0, l as u8, 0));
                    c.order.push(v);
                    push(c);
                }
            }
            for i in 0..k {
                for j in 0..k {
                    if i == j || node.slots[i] == 0 {
                        continue;
                    }
                    if node.slots[j] != 0 {
                        let mut edges = 0u128;
                        let mut ok = true;
                        for u in (0..n).filter(|&u| node.slots[i] >> u & 1 == 1) {
                            for v in (0..n).filter(|&v| node.slots[j] >> v & 1 == 1) {
                                ok &= g.has_edge(u, v);
                                edges |= 1 << pair(u, v, n);
                            }
                        }
                        if ok {
                            let mut c = node.clone();
                            c.built |= edges;
                            c.ops.push((1, i as u8, j as u8));
                            push(c);
                        }
                    }
                    let mut c = node.clone();
                    c.slots[j] |= c.slots[i];
                    c.slots[i] = 0;
                    c.ops.push((2, i as u8, j as u8));
                    push(c);
                }
            }
        }
        if next.is_empty() {
            return Decision { outcome: Outcome::No, states: seen.len() as u64 };
        }
        frontier = next;
    }
    Decision { outcome: Outcome::BudgetExceeded, states: seen.len() as u64 }
}
