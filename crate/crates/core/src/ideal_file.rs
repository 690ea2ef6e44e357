//! The `.ideal` text format.
//!
//! ```text
//! # comment
//! vars: x1 x2 x3
//! f1: x1 x2
//! f2: x2 x3
//! ```
//!
//! The `vars:` line comes first; generators follow as `f<k>:` with
//! `k = 1, 2, …` in order. `#` starts a comment anywhere on a line.

use std::fmt;

use thiserror::Error;

use crate::monomial::{IdealError, Monomial, SquareFreeIdeal, VariableTable};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{line}:{col}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub message: String,
}

fn err(line: usize, col: usize, message: impl fmt::Display) -> ParseError {
    ParseError {
        line,
        col,
        message: message.to_string(),
    }
}

/// Words of `text` with their 1-based columns.
fn words(text: &str, offset: usize) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, c) in text.char_indices() {
        match (c.is_whitespace(), start) {
            (false, None) => start = Some(i),
            (true, Some(s)) => {
                out.push((offset + s + 1, &text[s..i]));
                start = None;
            }
            _ => {}
        }
    }
    if let Some(s) = start {
        out.push((offset + s + 1, &text[s..]));
    }
    out
}

pub fn parse_ideal(src: &str) -> Result<SquareFreeIdeal, ParseError> {
    let mut vars: Option<VariableTable> = None;
    let mut gens: Vec<Monomial> = Vec::new();
    let mut gen_lines: Vec<usize> = Vec::new();
    let mut last_line = 0;
    for (ln, raw) in src.lines().enumerate() {
        let ln = ln + 1;
        last_line = ln;
        let line = raw.split('#').next().unwrap_or("");
        if line.trim().is_empty() {
            continue;
        }
        let indent = line.len() - line.trim_start().len();
        let Some(colon) = line.find(':') else {
            return Err(err(ln, indent + 1, "expected `vars:` or `f<k>:`"));
        };
        let key = line[..colon].trim();
        let rest = &line[colon + 1..];
        let items = words(rest, colon + 1);
        match (&vars, key) {
            (None, "vars") => {
                if items.is_empty() {
                    return Err(err(ln, colon + 2, "no variables declared"));
                }
                let mut seen: Vec<&str> = Vec::new();
                for &(col, w) in &items {
                    if !w.chars().all(|c| c.is_alphanumeric() || c == '_') {
                        return Err(err(ln, col, format!("bad variable name `{w}`")));
                    }
                    if seen.contains(&w) {
                        return Err(err(ln, col, format!("duplicate variable `{w}`")));
                    }
                    seen.push(w);
                }
                vars = Some(VariableTable::new(&seen).map_err(|e| err(ln, colon + 2, e))?);
            }
            (None, _) => return Err(err(ln, indent + 1, "the first line must be `vars: ...`")),
            (Some(_), "vars") => return Err(err(ln, indent + 1, "`vars:` given twice")),
            (Some(table), key) => {
                let expected = format!("f{}", gens.len() + 1);
                if key != expected {
                    return Err(err(
                        ln,
                        indent + 1,
                        format!("expected `{expected}:`, found `{key}:`"),
                    ));
                }
                if items.is_empty() {
                    return Err(err(ln, colon + 2, "generator has no variables"));
                }
                let mut exps = vec![0u16; table.len()];
                for &(col, w) in &items {
                    let Some(v) = table.index_of(w) else {
                        return Err(err(ln, col, format!("unknown variable `{w}`")));
                    };
                    if exps[v] > 0 {
                        return Err(err(
                            ln,
                            col,
                            format!("`{w}` repeated: generators are square-free"),
                        ));
                    }
                    exps[v] = 1;
                }
                gens.push(Monomial::from_exponents(&exps));
                gen_lines.push(ln);
            }
        }
    }
    let Some(table) = vars else {
        return Err(err(last_line.max(1), 1, "missing `vars:` line"));
    };
    SquareFreeIdeal::new(table, gens).map_err(|e| {
        let at = |k: usize| gen_lines.get(k - 1).copied().unwrap_or(last_line.max(1));
        match &e {
            IdealError::Empty => err(last_line.max(1), 1, e),
            IdealError::Duplicate { second, .. } => err(at(*second), 1, e),
            IdealError::NotMinimal { divisor, multiple } => err(at(*divisor.max(multiple)), 1, e),
            IdealError::NotSquareFree { index }
            | IdealError::UnitGenerator { index }
            | IdealError::TableMismatch { index } => err(at(*index), 1, e),
            _ => err(1, 1, e),
        }
    })
}

pub fn render_ideal(ideal: &SquareFreeIdeal) -> String {
    let vars = ideal.vars();
    let mut out = format!("vars: {}\n", vars.names().join(" "));
    for (k, g) in ideal.gens().iter().enumerate() {
        let names: Vec<&str> = g.support().map(|v| vars.name(v)).collect();
        out.push_str(&format!("f{}: {}\n", k + 1, names.join(" ")));
    }
    out
}
