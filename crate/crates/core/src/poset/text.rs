//! Line-oriented poset text format and Graphviz export.
//!
//! ```text
//! # comment
//! poset fig5
//! elements: a b c 1
//! covers: a<1 b<1
//! covers: c<1
//! ```
//!
//! Labels are `[A-Za-z0-9_]+`. Derived posets (completions, quotients,
//! sums of completions) also use the characters `(){},` in labels, e.g.
//! `L(d,e)` or `{a,b}`; the parser accepts those so written output can be
//! read back.

use std::fmt::Write as _;

use thiserror::Error;

use super::{build_poset, FinitePoset, PosetError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParseError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("unexpected end of input: {0}")]
    Eof(String),
    #[error(transparent)]
    Poset(#[from] PosetError),
}

impl ParseError {
    pub(crate) fn at(line: usize, message: impl Into<String>) -> Self {
        ParseError::Syntax {
            line,
            message: message.into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NamedPoset {
    pub name: String,
    pub poset: FinitePoset,
}

pub fn is_label(s: &str) -> bool {
    !s.is_empty() && s.chars().all(|c| c.is_ascii_alphanumeric() || "_(){},".contains(c))
}

/// Non-empty lines with comments stripped, tagged with 1-based line numbers.
pub(crate) fn significant_lines(input: &str) -> Vec<(usize, &str)> {
    input
        .lines()
        .enumerate()
        .filter_map(|(i, line)| {
            let line = match line.find('#') {
                Some(pos) => &line[..pos],
                None => line,
            };
            let line = line.trim();
            (!line.is_empty()).then_some((i + 1, line))
        })
        .collect()
}

/// Splits `key: rest` and returns `rest` if the key matches.
pub(crate) fn keyed<'a>(line: &'a str, key: &str) -> Option<&'a str> {
    let rest = line.strip_prefix(key)?;
    let rest = rest.trim_start();
    rest.strip_prefix(':').map(str::trim)
}

/// Parses one poset block starting at `lines[*pos]`; advances `pos` past it.
pub(crate) fn parse_block(lines: &[(usize, &str)], pos: &mut usize) -> Result<NamedPoset, ParseError> {
    let (ln, header) = *lines.get(*pos).ok_or_else(|| ParseError::Eof("expected `poset <name>`".into()))?;
    let name = header
        .strip_prefix("poset")
        .filter(|rest| rest.starts_with(char::is_whitespace))
        .map(str::trim)
        .ok_or_else(|| ParseError::at(ln, "expected `poset <name>`"))?;
    if !is_label(name) {
        return Err(ParseError::at(ln, format!("invalid poset name `{name}`")));
    }
    *pos += 1;

    let (ln, line) = *lines.get(*pos).ok_or_else(|| ParseError::Eof("expected `elements:`".into()))?;
    let elements = keyed(line, "elements").ok_or_else(|| ParseError::at(ln, "expected `elements: <labels>`"))?;
    let labels: Vec<&str> = elements.split_whitespace().collect();
    if let Some(bad) = labels.iter().find(|l| !is_label(l)) {
        return Err(ParseError::at(ln, format!("invalid label `{bad}`")));
    }
    *pos += 1;

    let mut covers = Vec::new();
    while let Some(&(ln, line)) = lines.get(*pos) {
        let Some(rest) = keyed(line, "covers") else { break };
        for tok in rest.split_whitespace() {
            let mut parts = tok.split('<');
            match (parts.next(), parts.next(), parts.next()) {
                (Some(a), Some(b), None) if is_label(a) && is_label(b) => covers.push((a, b)),
                _ => return Err(ParseError::at(ln, format!("invalid cover `{tok}`, expected `a<b`"))),
            }
        }
        *pos += 1;
    }
    let poset = build_poset(&labels, &covers)?;
    Ok(NamedPoset {
        name: name.to_string(),
        poset,
    })
}

pub fn parse_poset(input: &str) -> Result<NamedPoset, ParseError> {
    let lines = significant_lines(input);
    let mut pos = 0;
    let parsed = parse_block(&lines, &mut pos)?;
    if let Some(&(ln, line)) = lines.get(pos) {
        return Err(ParseError::at(ln, format!("unexpected `{line}`")));
    }
    Ok(parsed)
}

pub fn write_poset(name: &str, p: &FinitePoset) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "poset {name}");
    let _ = writeln!(out, "elements: {}", p.names().join(" "));
    let covers: Vec<String> = p
        .hasse_covers()
        .into_iter()
        .map(|(a, b)| format!("{}<{}", p.name(a), p.name(b)))
        .collect();
    if covers.is_empty() {
        let _ = writeln!(out, "covers:");
    } else {
        let _ = writeln!(out, "covers: {}", covers.join(" "));
    }
    out
}

/// Hasse diagram in DOT, drawn bottom-up.
pub fn to_dot(name: &str, p: &FinitePoset) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "digraph \"{}\" {{", escape(name));
    let _ = writeln!(out, "  rankdir=BT;");
    let _ = writeln!(out, "  node [shape=circle];");
    for x in 0..p.size() {
        let _ = writeln!(out, "  \"{}\";", escape(p.name(x)));
    }
    for (a, b) in p.hasse_covers() {
        let _ = writeln!(out, "  \"{}\" -> \"{}\";", escape(p.name(a)), escape(p.name(b)));
    }
    out.push_str("}\n");
    out
}

fn escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}
