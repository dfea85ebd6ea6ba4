//! Line-oriented text form of expressions.
//!
//! ```text
//! # comment
//! v a        add a vertex labeled a
//! e a b      join labels a and b
//! r a b      move label a onto label b
//! ```
//!
//! A witness file may carry a `# order: 3 0 1 2` directive naming the graph
//! vertex created by each insertion.

use super::{is_label_token, Label, LcwExpression, Op, Witness};
use crate::error::ExprError;

const ORDER_DIRECTIVE: &str = "# order:";

/// Parses and validates an expression.
pub fn parse(text: &str) -> Result<LcwExpression, ExprError> {
    let mut ops = Vec::new();
    let mut lines = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let body = raw.split('#').next().unwrap_or("");
        let tokens: Vec<(usize, &str)> = tokens(body);
        let Some(&(col, head)) = tokens.first() else { continue };
        let syntax = |col: usize, msg: String| ExprError::Syntax { line, col, msg };
        let arity = match head {
            "v" => 1,
            "e" | "r" => 2,
            other => return Err(syntax(col, format!("unknown operation `{other}`"))),
        };
        if tokens.len() != arity + 1 {
            let col = tokens.get(arity + 1).map_or(raw.len() + 1, |t| t.0);
            return Err(syntax(col, format!("`{head}` takes {arity} label(s), found {}", tokens.len() - 1)));
        }
        let mut labels = Vec::with_capacity(2);
        for &(col, tok) in &tokens[1..] {
            if !is_label_token(tok) {
                return Err(syntax(col, format!("invalid label `{tok}`")));
            }
            labels.push(Label(tok.to_string()));
        }
        let mut it = labels.into_iter();
        let a = it.next().unwrap();
        ops.push(match head {
            "v" => Op::AddVertex(a),
            "e" => Op::AddEdges(a, it.next().unwrap()),
            _ => Op::Relabel(a, it.next().unwrap()),
        });
        lines.push(line);
    }
    let e = LcwExpression::new(ops);
    e.validate().map_err(|err| match err {
        ExprError::Malformed { index, msg } => {
            ExprError::Malformed { index, msg: format!("line {}: {msg}", lines[index]) }
        }
        other => other,
    })?;
    Ok(e)
}

fn tokens(s: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, c) in s.char_indices() {
        match (c.is_whitespace(), start) {
            (true, Some(st)) => {
                out.push((st + 1, &s[st..i]));
                start = None;
            }
            (false, None) => start = Some(i),
            _ => {}
        }
    }
    if let Some(st) = start {
        out.push((st + 1, &s[st..]));
    }
    out
}

/// Canonical text: one operation per line, single spaces, trailing newline.
pub fn serialize(e: &LcwExpression) -> String {
    let mut out = String::new();
    for op in &e.ops {
        match op {
            Op::AddVertex(a) => out.push_str(&format!("v {a}\n")),
            Op::AddEdges(a, b) => out.push_str(&format!("e {a} {b}\n")),
            Op::Relabel(a, b) => out.push_str(&format!("r {a} {b}\n")),
        }
    }
    out
}

pub fn serialize_witness(w: &Witness) -> String {
    let order: Vec<String> = w.order.iter().map(usize::to_string).collect();
    format!("{ORDER_DIRECTIVE} {}\n{}", order.join(" "), serialize(&w.expression))
}

/// Parses an expression and its `# order:` directive; without a directive the
/// order is the identity.
pub fn parse_witness(text: &str) -> Result<Witness, ExprError> {
    let expression = parse(text)?;
    for (i, raw) in text.lines().enumerate() {
        if let Some(rest) = raw.trim_start().strip_prefix(ORDER_DIRECTIVE) {
            let order = rest
                .split_whitespace()
                .map(|t| t.parse::<usize>())
                .collect::<Result<Vec<_>, _>>()
                .map_err(|_| ExprError::Syntax { line: i + 1, col: 1, msg: "bad order directive".into() })?;
            if order.len() != expression.vertex_count() {
                return Err(ExprError::LengthMismatch { expected: expression.vertex_count(), found: order.len() });
            }
            return Ok(Witness { expression, order });
        }
    }
    Ok(Witness::identity(expression))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::label;

    #[test]
    fn parses_three_ops() {
        let e = parse("v a\nv b\ne a b\n").unwrap();
        assert_eq!(
            e.ops,
            vec![Op::AddVertex(label("a")), Op::AddVertex(label("b")), Op::AddEdges(label("a"), label("b"))]
        );
    }

    #[test]
    fn comments_and_blank_lines() {
        let e = parse("# K2\n\n  v a   # first\nv   b\n\ne a b").unwrap();
        assert_eq!(serialize(&e), "v a\nv b\ne a b\n");
    }

    #[test]
    fn semantic_errors() {
        assert!(matches!(parse("e a a"), Err(ExprError::Malformed { index: 0, .. })));
        let err = parse("v a\n\nr b a\n").unwrap_err();
        let ExprError::Malformed { index: 1, msg } = err else { panic!("{err:?}") };
        assert!(msg.starts_with("line 3"), "{msg}");
    }

    #[test]
    fn syntax_errors_carry_locations() {
        let loc = |t: &str| match parse(t) {
            Err(ExprError::Syntax { line, col, .. }) => (line, col),
            other => panic!("{other:?}"),
        };
        assert_eq!(loc("v a\nx a\n"), (2, 1));
        assert_eq!(loc("v a\n  e a\n"), (2, 6));
        assert_eq!(loc("v a b\n"), (1, 5));
        assert_eq!(loc("v a-b\n"), (1, 3));
    }

    #[test]
    fn witness_round_trip() {
        let w = Witness { expression: parse("v a\nv b\ne a b\n").unwrap(), order: vec![1, 0] };
        let text = serialize_witness(&w);
        assert_eq!(text, "# order: 1 0\nv a\nv b\ne a b\n");
        assert_eq!(parse_witness(&text).unwrap(), w);
        assert_eq!(parse_witness("v a\n").unwrap().order, vec![0]);
        assert!(parse_witness("# order: 0 1\nv a\n").is_err());
    }
}
