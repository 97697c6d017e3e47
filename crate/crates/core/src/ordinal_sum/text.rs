//! Sum-family files: `summand <index>` followed by a poset block, repeated
//! in index order, then optional `glue: <i>.<x> = <j>.<y>` lines.

use std::fmt::Write as _;

use thiserror::Error;

use super::{Glue, SumError, SumFamily};
use crate::poset::text::{is_label, keyed, parse_block, significant_lines, write_poset, ParseError};

#[derive(Debug, Error)]
pub enum SumFileError {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Family(#[from] SumError),
}

fn parse_glue_side(ln: usize, side: &str) -> Result<(String, String), ParseError> {
    match side.trim().split_once('.') {
        Some((i, x)) if is_label(i) && is_label(x) => Ok((i.to_string(), x.to_string())),
        _ => Err(ParseError::at(ln, format!("invalid glue side `{}`, expected `<index>.<element>`", side.trim()))),
    }
}

pub fn parse_sum(input: &str) -> Result<SumFamily, SumFileError> {
    let lines = significant_lines(input);
    let mut pos = 0;
    let mut index = Vec::new();
    let mut summands = Vec::new();
    let mut glue = Vec::new();
    while let Some(&(ln, line)) = lines.get(pos) {
        if let Some(rest) = keyed(line, "glue") {
            let (lhs, rhs) = rest
                .split_once('=')
                .ok_or_else(|| ParseError::at(ln, "expected `glue: <i>.<x> = <j>.<y>`"))?;
            let (lower, lower_elem) = parse_glue_side(ln, lhs)?;
            let (upper, upper_elem) = parse_glue_side(ln, rhs)?;
            glue.push(Glue {
                lower,
                lower_elem,
                upper,
                upper_elem,
            });
            pos += 1;
            continue;
        }
        let label = line
            .strip_prefix("summand")
            .filter(|rest| rest.starts_with(char::is_whitespace))
            .map(str::trim)
            .ok_or_else(|| ParseError::at(ln, "expected `summand <index>` or `glue:`"))?;
        if !is_label(label) {
            return Err(ParseError::at(ln, format!("invalid index label `{label}`")).into());
        }
        if !glue.is_empty() {
            return Err(ParseError::at(ln, "summands must precede glue lines").into());
        }
        pos += 1;
        let block = parse_block(&lines, &mut pos)?;
        index.push(label.to_string());
        summands.push(block.poset);
    }
    if summands.is_empty() {
        return Err(ParseError::Eof("expected at least one `summand`".into()).into());
    }
    Ok(SumFamily::new(index, summands, glue)?)
}

/// Writes the family with glue already applied, so glued elements appear
/// under their shared label on both sides.
pub fn write_sum(f: &SumFamily) -> String {
    let mut out = String::new();
    for (label, p) in f.index().iter().zip(f.summands()) {
        let _ = writeln!(out, "summand {label}");
        out.push_str(&write_poset(&format!("P{label}"), p));
    }
    for g in f.glue() {
        let _ = writeln!(out, "glue: {}.{} = {}.{}", g.lower, g.lower_elem, g.upper, g.upper_elem);
    }
    out
}
