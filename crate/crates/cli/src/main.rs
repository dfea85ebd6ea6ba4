mod input;
mod report;

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use lcwlab::cotree::{build_cotree, cotree_to_graph, enumerate_cotrees, threshold_factorize};
use lcwlab::enumerate::all_graphs;
use lcwlab::expr::{
    complement_expression, compose_inflation, generate_gk, normalize_insertion_label, preserve_label,
    threshold_expression, upper_bound_expression, Label, Witness,
};
use lcwlab::formats::{to_graph6, write_edge_list};
use lcwlab::graph::{inflate, Graph};
use lcwlab::iso::is_isomorphic;
use lcwlab::patterns::{has_lcw_at_most_2, is_cograph, is_quasi_threshold, is_threshold};
use lcwlab::solve::{exists_sink_expression, lcw_at_most, lcw_exact, Outcome, SolverConfig, DEFAULT_BUDGET};
use lcwlab::verify::{self, Status, VerifyOptions};
use lcwlab::SolveError;

use input::{read_graph, read_witness, witness_text, write, Format};
use report::{Exit, RunReport};

#[derive(Parser)]
#[command(name = "lcwlab", version, about = "Linear clique-width tools for cographs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Report class membership and, for cographs, the cotree.
    Recognize {
        input: PathBuf,
        #[arg(long, value_enum)]
        format: Option<Format>,
    },
    /// Compute or bound the linear clique-width.
    Lcw(LcwArgs),
    /// Operate on expression files.
    #[command(subcommand)]
    Expr(ExprCommand),
    /// Generate graphs.
    #[command(subcommand)]
    Gen(GenCommand),
    /// Run the proposition suite.
    Verify {
        /// Comma-separated check names; defaults to all of them.
        #[arg(long, value_delimiter = ',')]
        props: Option<Vec<String>>,
        #[arg(long, default_value_t = 8)]
        max_n: usize,
        #[command(flatten)]
        solver: SolverArgs,
    },
}

#[derive(Args)]
struct SolverArgs {
    /// Distinct search states per decision.
    #[arg(long, env = "LCWLAB_BUDGET", default_value_t = DEFAULT_BUDGET)]
    budget: u64,
    /// Solver worker threads.
    #[arg(long, default_value_t = 1)]
    jobs: usize,
}

impl SolverArgs {
    fn config(&self) -> SolverConfig {
        SolverConfig { jobs: self.jobs, ..SolverConfig::with_budget(self.budget.max(1)) }
    }
}

#[derive(Args)]
#[group(id = "mode", required = true, multiple = false, args = ["exact", "upper", "max_labels"])]
struct LcwArgs {
    input: PathBuf,
    #[arg(long, value_enum)]
    format: Option<Format>,
    /// Smallest number of labels, with a witness.
    #[arg(long)]
    exact: bool,
    /// Cotree-based expression for a cograph.
    #[arg(long)]
    upper: bool,
    /// Decide whether k labels suffice.
    #[arg(long, value_name = "K")]
    max_labels: Option<usize>,
    /// With --max-labels: require a sink label.
    #[arg(long, requires = "max_labels")]
    sink: bool,
    /// Write the witness expression here.
    #[arg(long)]
    out: Option<PathBuf>,
    #[command(flatten)]
    solver: SolverArgs,
}

#[derive(Subcommand)]
enum ExprCommand {
    /// Print the graph an expression builds.
    Eval {
        file: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check that an expression builds a graph.
    Check {
        file: PathBuf,
        graph: PathBuf,
        #[arg(long, value_enum)]
        format: Option<Format>,
        /// Accept any vertex bijection instead of the file's insertion order.
        #[arg(long)]
        iso: bool,
    },
    /// Expression for the complement graph.
    Complement {
        file: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Substitute part expressions into a quotient expression.
    Inflate {
        quotient: PathBuf,
        #[arg(required = true)]
        parts: Vec<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Rewrite so that one label is never relabeled.
    Preserve {
        file: PathBuf,
        label: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Insert every vertex with one reserved label.
    Normalize {
        file: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum GenCommand {
    /// The quasi-threshold graph G_k (k <= 6) and its (k+1)-label expression.
    Gk {
        k: usize,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        expr_out: Option<PathBuf>,
    },
    /// Threshold graph from a string of `i` (isolated) and `d` (dominating).
    Threshold {
        word: String,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        expr_out: Option<PathBuf>,
    },
    /// All cographs on n <= 10 vertices, one per isomorphism class.
    Cographs {
        n: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// All graphs on n <= 7 vertices, one per isomorphism class.
    AllGraphs {
        n: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

type Step = Result<(), (Exit, String)>;

fn input_err(msg: impl Into<String>) -> (Exit, String) {
    (Exit::InputError, msg.into())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let command = std::env::args().collect::<Vec<_>>().join(" ");
    let mut report = RunReport::new(command);
    let start = Instant::now();
    let step = match &cli.command {
        Command::Recognize { input, format } => recognize(input, *format, &mut report),
        Command::Lcw(args) => lcw(args, &mut report),
        Command::Expr(cmd) => expr(cmd, &mut report),
        Command::Gen(cmd) => gen(cmd, &mut report),
        Command::Verify { props, max_n, solver } => run_verify(props.clone(), *max_n, solver, &mut report),
    };
    report.field("time_ms", start.elapsed().as_millis());
    if let Err((exit, msg)) = step {
        report.fail(exit, &msg);
        eprintln!("lcwlab: {msg}");
    }
    print!("{report}");
    ExitCode::from(report.exit as u8)
}

fn emit(report: &mut RunReport, name: &str, text: &str, out: Option<&Path>) -> Step {
    match out {
        Some(p) => {
            write(p, text).map_err(input_err)?;
            report.field(&format!("{name}_file"), p.display());
        }
        None => report.section(name, text),
    }
    Ok(())
}

fn recognize(path: &Path, format: Option<Format>, report: &mut RunReport) -> Step {
    let g = read_graph(path, format, report).map_err(input_err)?;
    report.field("n", g.vertex_count());
    report.field("m", g.edge_count());
    let cograph = is_cograph(&g);
    report.field("cograph", cograph);
    report.field("quasi_threshold", is_quasi_threshold(&g));
    report.field("threshold", is_threshold(&g));
    report.field("lcw_at_most_2", has_lcw_at_most_2(&g));
    if cograph && g.vertex_count() > 0 {
        let c = build_cotree(&g).expect("cograph");
        report.field("factorization_depth", threshold_factorize(&c).depth);
        report.section("cotree", c.to_string());
    }
    Ok(())
}

fn solve_error(report: &mut RunReport, e: SolveError) -> (Exit, String) {
    match e {
        SolveError::TooLarge(_) => input_err(e.to_string()),
        SolveError::BudgetExceeded { lower, upper, states } => {
            report.field("lower_bound", lower);
            report.field("upper_bound", upper);
            report.field("states", states);
            (Exit::BudgetExhausted, e.to_string())
        }
    }
}

fn put_witness(report: &mut RunReport, g: &Graph, w: &Witness, out: Option<&Path>) -> Step {
    report.field("labels", w.label_count());
    report.field("witness_valid", w.builds(g));
    emit(report, "witness", &witness_text(w), out)
}

fn lcw(args: &LcwArgs, report: &mut RunReport) -> Step {
    let g = read_graph(&args.input, args.format, report).map_err(input_err)?;
    report.field("n", g.vertex_count());
    report.field("m", g.edge_count());
    let cfg = args.solver.config();
    let out = args.out.as_deref();
    if args.exact {
        let e = lcw_exact(&g, &cfg).map_err(|e| solve_error(report, e))?;
        report.field("lcw", e.value);
        report.field("states", e.states);
        put_witness(report, &g, &e.witness, out)
    } else if args.upper {
        let w = upper_bound_expression(&g).map_err(|e| input_err(e.to_string()))?;
        if g.vertex_count() > 0 {
            report.field("factorization_depth", threshold_factorize(&build_cotree(&g).expect("cograph")).depth);
        }
        put_witness(report, &g, &w, out)
    } else {
        let k = args.max_labels.expect("clap enforces one mode");
        if k == 0 {
            return Err(input_err("--max-labels must be at least 1"));
        }
        let d = if args.sink { exists_sink_expression(&g, k, &cfg) } else { lcw_at_most(&g, k, &cfg) }
            .map_err(|e| solve_error(report, e))?;
        report.field("max_labels", k);
        report.field("sink", args.sink);
        report.field("states", d.states);
        match &d.outcome {
            Outcome::Yes(w) => {
                report.field("decision", "yes");
                put_witness(report, &g, w, out)
            }
            Outcome::No => {
                report.field("decision", "no");
                Ok(())
            }
            Outcome::BudgetExceeded => {
                report.field("decision", "unknown");
                Err((Exit::BudgetExhausted, format!("budget of {} states exhausted", cfg.node_budget)))
            }
        }
    }
}

fn expr(cmd: &ExprCommand, report: &mut RunReport) -> Step {
    let load = |p: &Path, report: &mut RunReport| read_witness(p, report).map_err(input_err);
    let transformed = |w: &Witness, e: Result<lcwlab::expr::LcwExpression, lcwlab::ExprError>| {
        e.map(|expression| Witness { expression, order: w.order.clone() }).map_err(|e| input_err(e.to_string()))
    };
    match cmd {
        ExprCommand::Eval { file, out } => {
            let w = load(file, report)?;
            let g = w.graph().map_err(|e| input_err(e.to_string()))?;
            report.field("n", g.vertex_count());
            report.field("m", g.edge_count());
            report.field("labels", w.label_count());
            emit(report, "graph", &write_edge_list(&g), out.as_deref())
        }
        ExprCommand::Check { file, graph, format, iso } => {
            let w = load(file, report)?;
            let g = read_graph(graph, *format, report).map_err(input_err)?;
            let built = w.graph().map_err(|e| input_err(e.to_string()))?;
            let ok = if *iso { is_isomorphic(&built, &g) } else { built == g };
            report.field("labels", w.label_count());
            report.field("builds", ok);
            if ok {
                Ok(())
            } else {
                Err((Exit::PropertyFailure, "expression does not build the graph".into()))
            }
        }
        ExprCommand::Complement { file, out } => {
            let w = load(file, report)?;
            let c = transformed(&w, complement_expression(&w.expression))?;
            report.field("labels_in", w.label_count());
            report.field("labels_out", c.label_count());
            emit(report, "expression", &witness_text(&c), out.as_deref())
        }
        ExprCommand::Normalize { file, out } => {
            let w = load(file, report)?;
            let c = transformed(&w, normalize_insertion_label(&w.expression))?;
            report.field("labels_in", w.label_count());
            report.field("labels_out", c.label_count());
            emit(report, "expression", &witness_text(&c), out.as_deref())
        }
        ExprCommand::Preserve { file, label: l, out } => {
            let w = load(file, report)?;
            let keep = Label::new(l.as_str()).map_err(|e| input_err(e.to_string()))?;
            let c = transformed(&w, preserve_label(&w.expression, &keep))?;
            report.field("label", keep);
            report.field("labels_out", c.label_count());
            emit(report, "expression", &witness_text(&c), out.as_deref())
        }
        ExprCommand::Inflate { quotient, parts, out } => {
            let q = load(quotient, report)?;
            let ps = parts.iter().map(|p| load(p, report)).collect::<Result<Vec<_>, _>>()?;
            let c = compose_inflation(&q, &ps).map_err(|e| input_err(e.to_string()))?;
            let qg = q.graph().map_err(|e| input_err(e.to_string()))?;
            let pgs =
                ps.iter().map(|p| p.graph()).collect::<Result<Vec<_>, _>>().map_err(|e| input_err(e.to_string()))?;
            let target = inflate(&qg, &pgs).map_err(|e| input_err(e.to_string()))?.graph;
            report.field("n", target.vertex_count());
            report.field("labels", c.label_count());
            report.field("label_bound", q.label_count() + ps.iter().map(Witness::label_count).max().unwrap_or(0));
            report.field("builds_inflation", c.builds(&target));
            emit(report, "expression", &witness_text(&c), out.as_deref())
        }
    }
}

fn graph6_stream(graphs: &[Graph]) -> String {
    graphs.iter().map(|g| to_graph6(g) + "\n").collect()
}

fn gen(cmd: &GenCommand, report: &mut RunReport) -> Step {
    match cmd {
        GenCommand::Gk { k, out, expr_out } => {
            if !(1..=6).contains(k) {
                return Err(input_err("k must be between 1 and 6"));
            }
            let gk = generate_gk(*k);
            report.field("k", k);
            report.field("n", gk.graph.vertex_count());
            report.field("m", gk.graph.edge_count());
            report.field("labels", gk.expression.label_count());
            emit(report, "graph6", &(to_graph6(&gk.graph) + "\n"), out.as_deref())?;
            emit(report, "expression", &witness_text(&Witness::identity(gk.expression)), expr_out.as_deref())
        }
        GenCommand::Threshold { word, out, expr_out } => {
            let g = threshold_from_word(word).map_err(input_err)?;
            let w = threshold_expression(&g).expect("built as a threshold graph");
            report.field("n", g.vertex_count());
            report.field("m", g.edge_count());
            report.field("labels", w.label_count());
            emit(report, "graph6", &(to_graph6(&g) + "\n"), out.as_deref())?;
            emit(report, "expression", &witness_text(&w), expr_out.as_deref())
        }
        GenCommand::Cographs { n, out } => {
            if !(1..=10).contains(n) {
                return Err(input_err("n must be between 1 and 10"));
            }
            let gs: Vec<Graph> = enumerate_cotrees(*n).iter().map(cotree_to_graph).collect();
            report.field("n", n);
            report.field("count", gs.len());
            emit(report, "graph6", &graph6_stream(&gs), out.as_deref())
        }
        GenCommand::AllGraphs { n, out } => {
            if *n > 7 {
                return Err(input_err("n must be at most 7"));
            }
            let gs = all_graphs(*n);
            report.field("n", n);
            report.field("count", gs.len());
            emit(report, "graph6", &graph6_stream(&gs), out.as_deref())
        }
    }
}

/// Vertex `i` is added isolated (`i`) or dominating (`d`); the first letter
/// only creates vertex 0.
fn threshold_from_word(word: &str) -> Result<Graph, String> {
    if word.is_empty() || !word.chars().all(|c| c == 'i' || c == 'd') {
        return Err(format!("threshold word must be a nonempty string of `i` and `d`, got `{word}`"));
    }
    let mut edges = Vec::new();
    for (v, c) in word.chars().enumerate() {
        if c == 'd' {
            edges.extend((0..v).map(|u| (u, v)));
        }
    }
    Ok(Graph::from_edges(word.len(), edges).expect("in range"))
}

fn run_verify(props: Option<Vec<String>>, max_n: usize, solver: &SolverArgs, report: &mut RunReport) -> Step {
    let opts = VerifyOptions { checks: props, max_n, budget: solver.budget.max(1) };
    let results = verify::run(&opts).map_err(input_err)?;
    let mut lines = String::new();
    let (mut failed, mut exhausted) = (false, false);
    for r in &results {
        let status = match r.status {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::BudgetExceeded => "BUDGET",
        };
        failed |= r.status == Status::Fail;
        exhausted |= r.status == Status::BudgetExceeded && r.name != "stretch";
        lines.push_str(&format!("{}: {status} ({} ms, {} states) {}\n", r.name, r.millis, r.states, r.detail));
        if let Some(g6) = &r.counterexample {
            lines.push_str(&format!("{}: counterexample {g6}\n", r.name));
        }
    }
    report.field("checks", results.len());
    report.field("passed", results.iter().filter(|r| r.status == Status::Pass).count());
    report.section("checks", lines);
    if failed {
        Err((Exit::PropertyFailure, "some checks failed".into()))
    } else if exhausted {
        Err((Exit::BudgetExhausted, "some checks ran out of budget".into()))
    } else {
        Ok(())
    }
}
