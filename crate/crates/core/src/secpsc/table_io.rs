//! Operation tables as JSON and as text grids laid out with row `a`,
//! column `b` holding `a*b`.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use super::SectionTable;
use crate::poset::text::ParseError;

/// Rendering of an undefined entry.
pub const UNDEFINED: &str = "—";

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableJson {
    pub elements: Vec<String>,
    pub star: Vec<Vec<Option<String>>>,
    pub defined: Vec<Vec<bool>>,
    pub top: Option<String>,
}

/// Labels and entries only; what a text grid carries.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TableGrid {
    pub elements: Vec<String>,
    pub entries: Vec<Vec<Option<String>>>,
}

impl TableJson {
    pub fn from_table(t: &SectionTable) -> Self {
        let p = t.base();
        let star: Vec<Vec<Option<String>>> = t
            .rows()
            .iter()
            .map(|row| row.iter().map(|c| c.map(|c| p.name(c).to_string())).collect())
            .collect();
        let defined = t.rows().iter().map(|row| row.iter().map(Option::is_some).collect()).collect();
        TableJson {
            elements: p.names().to_vec(),
            star,
            defined,
            top: t.top().map(|x| p.name(x).to_string()),
        }
    }

    pub fn grid(&self) -> TableGrid {
        let entries = self
            .star
            .iter()
            .zip(&self.defined)
            .map(|(row, def)| row.iter().zip(def).map(|(v, d)| if *d { v.clone() } else { None }).collect())
            .collect();
        TableGrid {
            elements: self.elements.clone(),
            entries,
        }
    }
}

impl TableGrid {
    pub fn from_table(t: &SectionTable) -> Self {
        TableJson::from_table(t).grid()
    }

    pub fn render(&self) -> String {
        let width = self
            .elements
            .iter()
            .map(|s| s.chars().count())
            .chain(std::iter::once(1))
            .max()
            .unwrap_or(1);
        let cell = |s: &str| format!("{s:<width$}");
        let mut out = String::new();
        let header: Vec<String> = self.elements.iter().map(|e| cell(e)).collect();
        let _ = writeln!(out, "{} | {}", cell("*"), header.join(" ").trim_end());
        let rule_len = header.iter().map(|h| h.chars().count()).sum::<usize>() + header.len().saturating_sub(1);
        let _ = writeln!(out, "{}-+-{}", "-".repeat(width), "-".repeat(rule_len));
        for (label, row) in self.elements.iter().zip(&self.entries) {
            let cells: Vec<String> = row.iter().map(|v| cell(v.as_deref().unwrap_or(UNDEFINED))).collect();
            let _ = writeln!(out, "{} | {}", cell(label), cells.join(" ").trim_end());
        }
        out
    }

    pub fn parse(input: &str) -> Result<Self, ParseError> {
        let mut lines = input
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
        let (ln, header) = lines.next().ok_or_else(|| ParseError::Eof("empty table".into()))?;
        let (corner, cols) = header
            .split_once('|')
            .ok_or_else(|| ParseError::at(ln, "expected `* | <labels>`"))?;
        if corner.trim() != "*" {
            return Err(ParseError::at(ln, "table header must start with `*`"));
        }
        let elements: Vec<String> = cols.split_whitespace().map(str::to_string).collect();
        let mut entries = Vec::new();
        for (ln, line) in lines {
            if line.chars().all(|c| c == '-' || c == '+') {
                continue;
            }
            let (label, cells) = line
                .split_once('|')
                .ok_or_else(|| ParseError::at(ln, "expected `<label> | <entries>`"))?;
            let row_idx = entries.len();
            if elements.get(row_idx).map(String::as_str) != Some(label.trim()) {
                return Err(ParseError::at(ln, format!("row label `{}` out of order", label.trim())));
            }
            let row: Vec<Option<String>> = cells
                .split_whitespace()
                .map(|c| (c != UNDEFINED).then(|| c.to_string()))
                .collect();
            if row.len() != elements.len() {
                return Err(ParseError::at(ln, format!("expected {} entries, found {}", elements.len(), row.len())));
            }
            if let Some(bad) = row.iter().flatten().find(|v| !elements.contains(v)) {
                return Err(ParseError::at(ln, format!("unknown entry `{bad}`")));
            }
            entries.push(row);
        }
        if entries.len() != elements.len() {
            return Err(ParseError::Eof(format!("expected {} rows, found {}", elements.len(), entries.len())));
        }
        Ok(TableGrid { elements, entries })
    }
}
