use std::fs;
use std::path::Path;

use clap::ValueEnum;
use lcwlab::expr::{parse_witness, serialize, serialize_witness, Witness};
use lcwlab::formats::{parse_edge_list, parse_graph6_stream};
use lcwlab::Graph;

use crate::report::RunReport;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    EdgeList,
    Graph6,
    Lcw,
}

pub fn sniff(path: &Path) -> Format {
    match path.extension().and_then(|e| e.to_str()) {
        Some("g6") => Format::Graph6,
        Some("lcw") => Format::Lcw,
        _ => Format::EdgeList,
    }
}

pub fn read(path: &Path, report: &mut RunReport) -> Result<String, String> {
    let bytes = fs::read(path).map_err(|e| format!("{}: {e}", path.display()))?;
    report.input(&bytes);
    String::from_utf8(bytes).map_err(|_| format!("{}: not UTF-8", path.display()))
}

/// Reads a graph in any input format; an expression file stands for the
/// graph it builds.
pub fn read_graph(path: &Path, format: Option<Format>, report: &mut RunReport) -> Result<Graph, String> {
    let text = read(path, report)?;
    let at = |e: &dyn std::fmt::Display| format!("{}: {e}", path.display());
    match format.unwrap_or_else(|| sniff(path)) {
        Format::EdgeList => parse_edge_list(&text).map_err(|e| at(&e)),
        Format::Graph6 => {
            let mut graphs = parse_graph6_stream(&text).map_err(|e| at(&e))?;
            match graphs.len() {
                1 => Ok(graphs.pop().unwrap()),
                k => Err(at(&format!("expected one graph, found {k}"))),
            }
        }
        Format::Lcw => {
            let w = parse_witness(&text).map_err(|e| at(&e))?;
            w.graph().map_err(|e| at(&e))
        }
    }
}

pub fn read_witness(path: &Path, report: &mut RunReport) -> Result<Witness, String> {
    let text = read(path, report)?;
    parse_witness(&text).map_err(|e| format!("{}: {e}", path.display()))
}

/// DSL text, with an order directive only when the order is not the identity.
pub fn witness_text(w: &Witness) -> String {
    if w.order.iter().enumerate().all(|(i, &v)| i == v) {
        serialize(&w.expression)
    } else {
        serialize_witness(w)
    }
}

pub fn write(path: &Path, text: &str) -> Result<(), String> {
    fs::write(path, text).map_err(|e| format!("{}: {e}", path.display()))
}
