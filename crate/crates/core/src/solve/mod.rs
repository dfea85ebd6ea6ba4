//! Exact linear clique-width by search over canonical states.
//!
//! A state records which vertices are inserted, how they are grouped into
//! label classes (label names never enter the state) and, when saturation is
//! off, which edges have been built. With saturation on, every edge operation
//! whose class pair is fully adjacent in the target graph is applied as soon
//! as it becomes possible; see the README for why this loses no solutions.

mod oracle;
mod search;

pub use oracle::naive_oracle_lcw;

use search::{bits, Flow, Move, Problem, Target};

use crate::error::SolveError;
use crate::expr::{label, upper_bound_expression, Label, LcwExpression, Op, Witness};
use crate::graph::Graph;
use crate::patterns::is_cograph;

pub const DEFAULT_BUDGET: u64 = 50_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SinkMode {
    Off,
    /// One label is reserved as a sink: it never takes part in an edge
    /// operation and is never relabeled.
    ReservedSink,
}

#[derive(Clone, Debug)]
pub struct SolverConfig {
    /// Distinct states a single decision may visit.
    pub node_budget: u64,
    pub saturation: bool,
    /// Only consulted without saturation.
    pub dominance_pruning: bool,
    pub sink_mode: SinkMode,
    /// Insert only the lowest-id uninserted vertex of each twin class.
    pub twin_pruning: bool,
    /// Worker threads; 1 runs the plain sequential search.
    pub jobs: usize,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig {
            node_budget: DEFAULT_BUDGET,
            saturation: true,
            dominance_pruning: true,
            sink_mode: SinkMode::Off,
            twin_pruning: false,
            jobs: 1,
        }
    }
}

impl SolverConfig {
    pub fn with_budget(budget: u64) -> Self {
        SolverConfig { node_budget: budget, ..Self::default() }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Outcome {
    Yes(Witness),
    No,
    BudgetExceeded,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decision {
    pub outcome: Outcome,
    pub states: u64,
}

impl Decision {
    pub fn is_yes(&self) -> bool {
        matches!(self.outcome, Outcome::Yes(_))
    }

    pub fn is_no(&self) -> bool {
        self.outcome == Outcome::No
    }

    pub fn witness(&self) -> Option<&Witness> {
        match &self.outcome {
            Outcome::Yes(w) => Some(w),
            _ => None,
        }
    }
}

/// Decides whether `g` has an expression with at most `k` labels.
pub fn lcw_at_most(g: &Graph, k: usize, cfg: &SolverConfig) -> Result<Decision, SolveError> {
    assert!(cfg.node_budget > 0, "node budget must be positive");
    let adj = g.adjacency_masks().ok_or(SolveError::TooLarge(g.vertex_count()))?;
    let sink_mode = cfg.sink_mode == SinkMode::ReservedSink;
    if k == 0 || (sink_mode && g.vertex_count() == 0) {
        let outcome = if k == 0 && g.vertex_count() == 0 && !sink_mode {
            Outcome::Yes(Witness::identity(LcwExpression::default()))
        } else {
            Outcome::No
        };
        return Ok(Decision { outcome, states: 0 });
    }
    let n = adj.len();
    let problem = Problem {
        all: if n == 64 { u64::MAX } else { (1u64 << n) - 1 },
        cap: if sink_mode { k - 1 } else { k },
        sink_mode,
        saturation: cfg.saturation,
        dominance: cfg.dominance_pruning && !cfg.saturation,
        lower_twins: cfg.twin_pruning.then(|| lower_twins(&adj)),
        adj,
    };
    let result =
        if cfg.jobs > 1 { problem.run_parallel(cfg.node_budget, cfg.jobs) } else { problem.run(cfg.node_budget) };
    let outcome = match result.flow {
        Flow::Found(path) => {
            let path = if cfg.jobs > 1 {
                // the parallel witness depends on scheduling; the sequential
                // search gives the same answer with a fixed witness
                match problem.run(u64::MAX).flow {
                    Flow::Found(p) => p,
                    _ => unreachable!("sequential search disagrees with parallel search"),
                }
            } else {
                path
            };
            let w = replay(&problem, &path);
            debug_assert!(w.builds(g), "solver witness does not build the graph");
            debug_assert!(w.label_count() <= k);
            Outcome::Yes(w)
        }
        Flow::Exhausted => Outcome::No,
        Flow::OverBudget | Flow::Stopped => Outcome::BudgetExceeded,
    };
    Ok(Decision { outcome, states: result.states })
}

/// Whether some expression with at most `k` labels builds `g` and has a sink
/// label.
pub fn exists_sink_expression(g: &Graph, k: usize, cfg: &SolverConfig) -> Result<Decision, SolveError> {
    lcw_at_most(g, k, &SolverConfig { sink_mode: SinkMode::ReservedSink, ..cfg.clone() })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactLcw {
    pub value: usize,
    pub witness: Witness,
    /// States visited over all decisions.
    pub states: u64,
}

/// The linear clique-width of `g`, trying `k = 1, 2, ...` in turn.
pub fn lcw_exact(g: &Graph, cfg: &SolverConfig) -> Result<ExactLcw, SolveError> {
    let n = g.vertex_count();
    if n > 64 {
        return Err(SolveError::TooLarge(n));
    }
    if n == 0 {
        return Ok(ExactLcw { value: 0, witness: Witness::identity(LcwExpression::default()), states: 0 });
    }
    let cfg = SolverConfig { sink_mode: SinkMode::Off, ..cfg.clone() };
    let mut states = 0;
    for k in 1..=n {
        let d = lcw_at_most(g, k, &cfg)?;
        states += d.states;
        match d.outcome {
            Outcome::Yes(witness) => return Ok(ExactLcw { value: k, witness, states }),
            Outcome::No => {}
            Outcome::BudgetExceeded => {
                let cograph_bound =
                    if is_cograph(g) { upper_bound_expression(g).map(|w| w.label_count()).unwrap_or(n) } else { n };
                return Err(SolveError::BudgetExceeded { lower: k, upper: cograph_bound.min(n).max(k), states });
            }
        }
    }
    unreachable!("n labels always suffice")
}

/// True when no minimum-label expression for `g` has a sink label, judged
/// over the solver's normal-form search space.
pub fn all_efficient_sink_free(g: &Graph, cfg: &SolverConfig) -> Result<bool, SolveError> {
    let exact = lcw_exact(g, cfg)?;
    let d = exists_sink_expression(g, exact.value, cfg)?;
    match d.outcome {
        Outcome::Yes(_) => Ok(false),
        Outcome::No => Ok(true),
        Outcome::BudgetExceeded => {
            Err(SolveError::BudgetExceeded { lower: exact.value, upper: exact.value, states: exact.states + d.states })
        }
    }
}

/// Two vertices are twins when their neighbourhoods agree apart from each
/// other; the relation is an equivalence and swapping twins is an
/// automorphism.
fn lower_twins(adj: &[u64]) -> Vec<u64> {
    let n = adj.len();
    (0..n)
        .map(|v| (0..v).filter(|&u| adj[u] & !(1u64 << v) == adj[v] & !(1u64 << u)).fold(0, |acc, u| acc | 1u64 << u))
        .collect()
}

fn regular_label(i: usize) -> Label {
    if i < 26 {
        label(&((b'a' + i as u8) as char).to_string())
    } else {
        label(&format!("l{i}"))
    }
}

/// Turns a search path into an expression. Regular labels are named
/// `a, b, c, ...` and reused once emptied; the sink gets its own label.
fn replay(problem: &Problem, path: &[Move]) -> Witness {
    let mut classes: Vec<(u64, usize)> = Vec::new();
    let mut free: Vec<usize> = Vec::new();
    let mut next = 0;
    let sink = label("sink");
    let mut ops = Vec::new();
    let mut order = Vec::new();

    let find = |classes: &[(u64, usize)], m: u64| classes.iter().position(|&(c, _)| c == m).expect("class on path");
    for mv in path {
        match *mv {
            Move::Insert(v, target) => {
                order.push(v);
                let bit = 1u64 << v;
                let slot = match target {
                    Target::Sink => {
                        ops.push(Op::AddVertex(sink.clone()));
                        continue;
                    }
                    Target::Class(m) => {
                        let i = find(&classes, m);
                        classes[i].0 |= bit;
                        i
                    }
                    Target::New => {
                        let l = if free.is_empty() {
                            next += 1;
                            next - 1
                        } else {
                            free.sort_unstable();
                            free.remove(0)
                        };
                        classes.push((bit, l));
                        classes.len() - 1
                    }
                };
                let l = regular_label(classes[slot].1);
                ops.push(Op::AddVertex(l.clone()));
                if problem.saturation {
                    for (j, &(d, dl)) in classes.iter().enumerate() {
                        if j != slot && problem.adj[v] & d != 0 {
                            ops.push(Op::AddEdges(l.clone(), regular_label(dl)));
                        }
                    }
                }
            }
            Move::Merge(a, target) => {
                let i = find(&classes, a);
                let (_, la) = classes.remove(i);
                free.push(la);
                match target {
                    Target::Class(b) => {
                        let j = find(&classes, b);
                        classes[j].0 |= a;
                        ops.push(Op::Relabel(regular_label(la), regular_label(classes[j].1)));
                    }
                    _ => ops.push(Op::Relabel(regular_label(la), sink.clone())),
                }
            }
            Move::Join(a, b) => {
                let (la, lb) = (classes[find(&classes, a)].1, classes[find(&classes, b)].1);
                ops.push(Op::AddEdges(regular_label(la), regular_label(lb)));
            }
        }
    }
    debug_assert!(bits(problem.all).count() == order.len());
    Witness { expression: LcwExpression::new(ops), order }
}
