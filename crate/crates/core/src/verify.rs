//! The proposition suite behind `lcwlab verify`.

use std::time::Instant;

use crate::cotree::{
    build_cotree, cotree_to_graph, enumerate_cotrees, is_quasi_threshold_cotree, is_threshold_cotree,
    threshold_factorize,
};
use crate::enumerate::all_graphs;
use crate::error::SolveError;
use crate::expr::{
    complement_expression, compose_inflation, evaluate, generate_gk, sink_labels, upper_bound_expression, Witness,
};
use crate::formats::to_graph6;
use crate::graph::{complement, disjoint_union, inflate, join, Graph};
use crate::iso::canonical_form;
use crate::patterns::{contains_induced, has_lcw_at_most_2, is_quasi_threshold, is_threshold, Pattern};
use crate::solve::{
    all_efficient_sink_free, exists_sink_expression, lcw_at_most, lcw_exact, naive_oracle_lcw, Decision, Outcome,
    SolverConfig,
};

/// Check names in run order.
pub const CHECKS: &[&str] = &[
    "gk-exact",
    "gk3",
    "complement",
    "doubling",
    "pivot",
    "stretch",
    "oracle",
    "lcw2",
    "composition",
    "upper-bound",
    "recognizers",
];

#[derive(Clone, Debug)]
pub struct VerifyOptions {
    /// Checks to run; `None` runs the default selection.
    pub checks: Option<Vec<String>>,
    /// Largest vertex count for the exhaustive sweeps.
    pub max_n: usize,
    pub budget: u64,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions { checks: None, max_n: 8, budget: crate::solve::DEFAULT_BUDGET }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
    BudgetExceeded,
}

#[derive(Clone, Debug)]
pub struct CheckReport {
    pub name: &'static str,
    pub status: Status,
    pub detail: String,
    /// graph6 of the first failing graph, when there is one.
    pub counterexample: Option<String>,
    pub millis: u128,
    pub states: u64,
}

/// The checks `opts` selects. Without an explicit list, `max_n <= 5` runs
/// only the oracle cross-validation.
pub fn selected(opts: &VerifyOptions) -> Result<Vec<&'static str>, String> {
    match &opts.checks {
        Some(names) => names
            .iter()
            .map(|n| CHECKS.iter().copied().find(|c| c == n).ok_or_else(|| format!("unknown check `{n}`")))
            .collect(),
        None if opts.max_n <= 5 => Ok(vec!["oracle"]),
        None => Ok(CHECKS.to_vec()),
    }
}

pub fn run(opts: &VerifyOptions) -> Result<Vec<CheckReport>, String> {
    Ok(selected(opts)?.into_iter().map(|name| run_one(name, opts)).collect())
}

struct Tally {
    states: u64,
    failure: Option<(String, Option<Graph>)>,
}

impl Tally {
    fn new() -> Self {
        Tally { states: 0, failure: None }
    }

    fn fail(&mut self, why: impl Into<String>, g: Option<&Graph>) {
        if self.failure.is_none() {
            self.failure = Some((why.into(), g.cloned()));
        }
    }

    fn decision(&mut self, d: Decision) -> Decision {
        self.states += d.states;
        d
    }
}

enum Interrupt {
    Budget,
}

impl From<SolveError> for Interrupt {
    fn from(_: SolveError) -> Self {
        Interrupt::Budget
    }
}

fn run_one(name: &'static str, opts: &VerifyOptions) -> CheckReport {
    let start = Instant::now();
    let cfg = SolverConfig::with_budget(opts.budget);
    let mut t = Tally::new();
    let result = match name {
        "gk-exact" => gk_exact(&cfg, &mut t),
        "gk3" => gk3(&cfg, &mut t),
        "complement" => complement_bound(opts.max_n, &cfg, &mut t),
        "doubling" => doubling(&cfg, &mut t),
        "pivot" => pivot(&cfg, &mut t),
        "stretch" => stretch(&cfg, &mut t),
        "oracle" => oracle(opts.max_n.min(5), &cfg, &mut t),
        "lcw2" => lcw2(opts.max_n.min(7), &cfg, &mut t),
        "composition" => composition(&cfg, &mut t),
        "upper-bound" => upper_bound(opts.max_n, &cfg, &mut t),
        "recognizers" => recognizers(opts.max_n, &mut t),
        _ => unreachable!("names come from CHECKS"),
    };
    let (status, detail, counterexample) = match (result, t.failure) {
        (Err(Interrupt::Budget), _) => (Status::BudgetExceeded, "budget exhausted".to_string(), None),
        (Ok(detail), None) => (Status::Pass, detail, None),
        (Ok(detail), Some((why, g))) => (Status::Fail, format!("{detail}; {why}"), g.map(|g| to_graph6(&g))),
    };
    CheckReport { name, status, detail, counterexample, millis: start.elapsed().as_millis(), states: t.states }
}

type CheckResult = Result<String, Interrupt>;

fn exact(g: &Graph, cfg: &SolverConfig, t: &mut Tally) -> Result<usize, Interrupt> {
    let e = lcw_exact(g, cfg)?;
    t.states += e.states;
    if !e.witness.builds(g) {
        t.fail("solver witness does not build its graph", Some(g));
    }
    Ok(e.value)
}

fn decided(d: Decision) -> Result<Decision, Interrupt> {
    match d.outcome {
        Outcome::BudgetExceeded => Err(Interrupt::Budget),
        _ => Ok(d),
    }
}

fn two_k2() -> Graph {
    disjoint_union(&Graph::complete(2), &Graph::complete(2))
}

fn gk_exact(cfg: &SolverConfig, t: &mut Tally) -> CheckResult {
    for k in 1..=2 {
        let gk = generate_gk(k);
        let v = exact(&gk.graph, cfg, t)?;
        if v != k + 1 {
            t.fail(format!("lcw(G_{k}) = {v}"), Some(&gk.graph));
        }
    }
    Ok("lcw(G_1) = 2, lcw(G_2) = 3".into())
}

fn gk3(cfg: &SolverConfig, t: &mut Tally) -> CheckResult {
    let g3 = generate_gk(3);
    if evaluate(&g3.expression).map(|(g, _)| g != g3.graph).unwrap_or(true) || g3.expression.label_count() != 4 {
        t.fail("generator expression for G_3 is wrong", Some(&g3.graph));
    }
    let d = decided(t.decision(lcw_at_most(&g3.graph, 3, cfg)?))?;
    if !d.is_no() {
        t.fail("G_3 has a 3-label expression", Some(&g3.graph));
    }
    Ok("G_3 (37 vertices): 4-label expression validates, no 3-label expression".into())
}

fn complement_bound(max_n: usize, cfg: &SolverConfig, t: &mut Tally) -> CheckResult {
    let mut values = std::collections::HashMap::new();
    let mut corpus = Vec::new();
    let graphs: Vec<Graph> =
        (1..=max_n).flat_map(|n| enumerate_cotrees(n).iter().map(cotree_to_graph).collect::<Vec<_>>()).collect();
    for g in &graphs {
        let e = lcw_exact(g, cfg)?;
        t.states += e.states;
        values.insert(canonical_form(g), e.value);
        corpus.push(e.witness.expression);
    }
    for g in &graphs {
        let (a, b) = (values[&canonical_form(g)], values[&canonical_form(&complement(g))]);
        if a.abs_diff(b) > 1 {
            t.fail(format!("lcw {a} vs complement {b}"), Some(g));
        }
    }
    for e in &corpus {
        let c = complement_expression(e).expect("solver witnesses are valid");
        let (g, _) = evaluate(e).expect("valid");
        if evaluate(&c).map(|(h, _)| h != complement(&g)).unwrap_or(true) || c.label_count() > e.label_count() + 1 {
            t.fail("complement expression is wrong", Some(&g));
        }
    }
    Ok(format!("{} cographs on <= {max_n} vertices", graphs.len()))
}

fn doubling(cfg: &SolverConfig, t: &mut Tally) -> CheckResult {
    let k2 = Graph::complete(2);
    if !all_efficient_sink_free(&k2, cfg)? {
        t.fail("K2 has a 2-label sink expression", Some(&k2));
    }
    let v = exact(&two_k2(), cfg, t)?;
    if v != 3 {
        t.fail(format!("lcw(2K2) = {v}"), Some(&two_k2()));
    }
    let d = decided(t.decision(exists_sink_expression(&two_k2(), 3, cfg)?))?;
    if !d.witness().is_some_and(|w| w.builds(&two_k2()) && !sink_labels(&w.expression).is_empty()) {
        t.fail("no 3-label sink expression for 2K2", Some(&two_k2()));
    }
    Ok("K2 sink-free, lcw(2K2) = 3, 2K2 has a 3-label sink expression".into())
}

fn pivot(cfg: &SolverConfig, t: &mut Tally) -> CheckResult {
    let h = join(&disjoint_union(&two_k2(), &two_k2()), &Graph::complete(1));
    let v = exact(&h, cfg, t)?;
    if v != 3 {
        t.fail(format!("lcw(K1*(2K2 u 2K2)) = {v}"), Some(&h));
    }
    let d = decided(t.decision(exists_sink_expression(&h, 3, cfg)?))?;
    if !d.is_no() {
        t.fail("G_2 has a 3-label sink expression", Some(&h));
    }
    Ok("lcw(G_2) = lcw(2K2) = 3, every 3-label expression for G_2 is sink-free".into())
}

fn stretch(cfg: &SolverConfig, t: &mut Tally) -> CheckResult {
    let g2 = generate_gk(2).graph;
    let h = disjoint_union(&g2, &g2);
    let three = decided(t.decision(lcw_at_most(&h, 3, cfg)?))?;
    let four = decided(t.decision(lcw_at_most(&h, 4, cfg)?))?;
    if !three.is_no() {
        t.fail("G_2 u G_2 has a 3-label expression", Some(&h));
    }
    if !four.witness().is_some_and(|w| w.builds(&h)) {
        t.fail("no 4-label expression for G_2 u G_2", Some(&h));
    }
    Ok("lcw(G_2 u G_2) = 4".into())
}

fn oracle(max_n: usize, cfg: &SolverConfig, t: &mut Tally) -> CheckResult {
    let mut cases = 0;
    for g in (1..=max_n).flat_map(all_graphs) {
        for k in 1..=4 {
            let slow = naive_oracle_lcw(&g, k, 64);
            let fast = decided(t.decision(lcw_at_most(&g, k, cfg)?))?;
            cases += 1;
            if slow.is_yes() != fast.is_yes() {
                t.fail(format!("solver and oracle disagree at k = {k}"), Some(&g));
            }
        }
    }
    Ok(format!("{cases} (graph, k) cases on <= {max_n} vertices"))
}

fn lcw2(max_n: usize, cfg: &SolverConfig, t: &mut Tally) -> CheckResult {
    let mut count = 0;
    for g in (1..=max_n).flat_map(all_graphs) {
        count += 1;
        let d = decided(t.decision(lcw_at_most(&g, 2, cfg)?))?;
        if d.is_yes() != has_lcw_at_most_2(&g) {
            t.fail("lcw <= 2 disagrees with the forbidden subgraphs", Some(&g));
        }
    }
    Ok(format!("{count} graphs on <= {max_n} vertices"))
}

/// A fixed pseudo-random stream, so runs are reproducible.
struct Lcg(u64);

impl Lcg {
    fn next(&mut self, bound: u64) -> u64 {
        self.0 = self.0.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
        (self.0 >> 33) % bound
    }

    fn graph(&mut self, n: usize) -> Graph {
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
        Graph::from_edges(n, pairs.into_iter().filter(|_| self.next(2) == 1)).expect("valid")
    }
}

fn composition(cfg: &SolverConfig, t: &mut Tally) -> CheckResult {
    let mut rng = Lcg(8);
    for _ in 0..200 {
        let m = 1 + rng.next(5) as usize;
        let q = rng.graph(m);
        let parts: Vec<Graph> = (0..m)
            .map(|_| {
                let size = 1 + rng.next(4) as usize;
                rng.graph(size)
            })
            .collect();
        let qw = lcw_exact(&q, cfg)?.witness;
        let pws = parts.iter().map(|p| lcw_exact(p, cfg).map(|e| e.witness)).collect::<Result<Vec<_>, _>>()?;
        let bound = qw.label_count() + pws.iter().map(Witness::label_count).max().unwrap_or(0);
        let c = compose_inflation(&qw, &pws).expect("valid inputs");
        let target = inflate(&q, &parts).expect("nonempty parts").graph;
        if !c.builds(&target) || c.label_count() > bound {
            t.fail("composition is wrong or over the label bound", Some(&target));
        }
    }
    Ok("200 random compositions".into())
}

fn upper_bound(max_n: usize, cfg: &SolverConfig, t: &mut Tally) -> CheckResult {
    let mut count = 0;
    for n in 1..=max_n {
        for c in enumerate_cotrees(n) {
            count += 1;
            let g = cotree_to_graph(&c);
            let w = upper_bound_expression(&g).expect("cograph");
            let depth = threshold_factorize(&build_cotree(&g).expect("cograph")).depth;
            let v = exact(&g, cfg, t)?;
            if !w.builds(&g) || w.label_count() > 2 * depth || v > w.label_count() {
                t.fail("upper bound expression is wrong or over 2 * depth", Some(&g));
            }
        }
    }
    Ok(format!("{count} cographs on <= {max_n} vertices"))
}

fn recognizers(max_n: usize, t: &mut Tally) -> CheckResult {
    let mut count = 0;
    for n in 1..=max_n {
        for c in enumerate_cotrees(n) {
            count += 1;
            let g = cotree_to_graph(&c);
            let qt = !contains_induced(&g, Pattern::P4) && !contains_induced(&g, Pattern::C4);
            let th = qt && !contains_induced(&g, Pattern::TwoK2);
            if is_quasi_threshold_cotree(&c) != qt
                || is_threshold_cotree(&c) != th
                || is_quasi_threshold(&g) != qt
                || is_threshold(&g) != th
            {
                t.fail("cotree and forbidden-subgraph recognizers disagree", Some(&g));
            }
        }
    }
    Ok(format!("{count} cographs on <= {max_n} vertices"))
}
