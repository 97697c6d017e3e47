//! Serializable views with element labels in place of indices, shared by
//! the command-line tool and anything else that emits JSON.

use serde::{Deserialize, Serialize};

use crate::congruence::{is_convex, is_strong, Partition, QuotientStructure};
use crate::poset::FinitePoset;
use crate::report::{Outcome, PropertyReport};
use crate::secpsc::{ClassificationReport, Groupoid};

fn labels(names: &[String], ids: &[usize]) -> Vec<String> {
    ids.iter().map(|&i| names.get(i).cloned().unwrap_or_else(|| format!("#{i}"))).collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LabelledWitness {
    pub property: String,
    pub elements: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassificationView {
    pub sectionally_pseudocomplemented: bool,
    pub strongly: bool,
    pub lattice: bool,
    pub relatively_pc: bool,
    pub has_top: bool,
    pub witnesses: Vec<LabelledWitness>,
}

impl ClassificationView {
    pub fn new(p: &FinitePoset, r: &ClassificationReport) -> Self {
        ClassificationView {
            sectionally_pseudocomplemented: r.is_sec_pc,
            strongly: r.is_strongly_sec_pc,
            lattice: r.is_lattice,
            relatively_pc: r.is_rel_pc,
            has_top: r.has_top,
            witnesses: r
                .witnesses
                .iter()
                .map(|w| LabelledWitness {
                    property: w.property.clone(),
                    elements: labels(p.names(), &w.elements),
                })
                .collect(),
        }
    }

    pub fn witness(&self, property: &str) -> Option<&[String]> {
        self.witnesses
            .iter()
            .find(|w| w.property == property)
            .map(|w| w.elements.as_slice())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckView {
    pub name: String,
    pub status: String,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub witness: Vec<String>,
    #[serde(default, skip_serializing_if = "String::is_empty")]
    pub note: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportView {
    pub passed: bool,
    pub checks: Vec<CheckView>,
}

impl ReportView {
    /// `names_for` gives the labels a check's witness indices refer to.
    pub fn new<'a>(r: &PropertyReport, names_for: impl Fn(&str) -> &'a [String]) -> Self {
        let checks = r
            .checks
            .iter()
            .map(|c| {
                let (status, witness, note) = match &c.outcome {
                    Outcome::Pass => ("pass", Vec::new(), String::new()),
                    Outcome::Fail { witness, note } => ("fail", labels(names_for(&c.name), witness), note.clone()),
                    Outcome::Skipped { reason } => ("skipped", Vec::new(), reason.clone()),
                    Outcome::Info { note } => ("info", Vec::new(), note.clone()),
                };
                CheckView {
                    name: c.name.clone(),
                    status: status.to_string(),
                    witness,
                    note,
                }
            })
            .collect();
        ReportView {
            passed: r.all_pass(),
            checks,
        }
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        for c in &self.checks {
            out.push_str(&format!("  {}: {}", c.name, c.status));
            if !c.witness.is_empty() {
                out.push_str(&format!(" (witness {})", c.witness.join(",")));
            }
            if !c.note.is_empty() {
                out.push_str(&format!(" {}", c.note));
            }
            out.push('\n');
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CongruenceView {
    pub classes: Vec<Vec<String>>,
    pub convex: bool,
    /// `None` when some class lacks a greatest element.
    pub strong: Option<bool>,
}

impl CongruenceView {
    pub fn new(p: &FinitePoset, g: &Groupoid, part: &Partition) -> Self {
        CongruenceView {
            classes: part.to_json(p).classes,
            convex: is_convex(p, part),
            strong: is_strong(p, g, part).ok().map(|w| w.is_none()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuotientView {
    pub poset: FinitePoset,
    pub one_class: String,
    /// Operation on classes, present for strong congruences.
    pub star: Option<Vec<Vec<String>>>,
}

impl QuotientView {
    pub fn new(q: &QuotientStructure) -> Self {
        let names = q.poset.names();
        QuotientView {
            poset: q.poset.clone(),
            one_class: names[q.one_class].clone(),
            star: q
                .star
                .as_ref()
                .map(|g| g.rows().iter().map(|row| labels(names, row)).collect()),
        }
    }
}
