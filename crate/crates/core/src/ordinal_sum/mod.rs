//! Generalized ordinal sums over a finite chain of indices, the DM-related
//! and DM-yoked families of their summands, and the completion and
//! sectional pseudocomplement of a sum computed summand-wise.

mod secpc;
pub mod text;
mod yoked;

use std::collections::HashMap;

use thiserror::Error;

use crate::poset::FinitePoset;

pub use secpc::{sum_sec_pc, verify_sum_secpc, SumSecPc};
pub use yoked::{
    dm_related_family, dm_yoked_family, dm_yoked_family_with, verify_sum_completion, yoked_conditions, Provenance,
    SumCompletion, TaggedPoset, YokedFamily, YokedSteps,
};

/// Labels produced for non-principal cuts start with this; summand
/// elements may not, so tagged cuts never collide with base elements.
pub const TAG_PREFIX: &str = "(L(";

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SumError {
    #[error("invalid family: condition ({condition}) fails at {witness:?}")]
    InvalidFamily { condition: String, witness: Vec<String> },
    #[error("yoked family: condition ({condition}) fails at {witness:?}")]
    YokedConditionFailed { condition: String, witness: Vec<String> },
    #[error("summand {j} has no least element but its predecessor {s} has a greatest one")]
    HypothesisViolated { j: String, s: String },
    #[error("summand {0} is not sectionally pseudocomplemented")]
    SummandNotSecPc(String),
    #[error("unknown element `{0}`")]
    UnknownElement(String),
}

fn invalid(condition: &str, witness: &[&str]) -> SumError {
    SumError::InvalidFamily {
        condition: condition.to_string(),
        witness: witness.iter().map(|s| s.to_string()).collect(),
    }
}

/// `lower.lower_elem` and `upper.upper_elem` are the same element of the sum.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Glue {
    pub lower: String,
    pub lower_elem: String,
    pub upper: String,
    pub upper_elem: String,
}

/// A validated family. Glued elements of an upper summand are renamed to
/// their lower partner, so shared elements are exactly the labels that
/// occur in two adjacent summands.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SumFamily {
    index: Vec<String>,
    summands: Vec<FinitePoset>,
    /// `shared[k]` joins summands `k` and `k + 1`.
    shared: Vec<Option<String>>,
}

impl SumFamily {
    pub fn new(index: Vec<String>, summands: Vec<FinitePoset>, glue: Vec<Glue>) -> Result<Self, SumError> {
        for (label, p) in index.iter().zip(&summands) {
            if let Some(x) = p.names().iter().find(|x| x.starts_with(TAG_PREFIX)) {
                return Err(invalid("labels", &[label, x]));
            }
        }
        Self::build(index, summands, glue)
    }

    pub(crate) fn build(index: Vec<String>, summands: Vec<FinitePoset>, glue: Vec<Glue>) -> Result<Self, SumError> {
        if index.is_empty() {
            return Err(invalid("index", &[]));
        }
        if index.len() != summands.len() {
            return Err(invalid("index", &[&index.len().to_string(), &summands.len().to_string()]));
        }
        for (k, label) in index.iter().enumerate() {
            if index[..k].contains(label) {
                return Err(invalid("index", &[label]));
            }
        }
        for (label, p) in index.iter().zip(&summands) {
            let n = p.size();
            if !(0..n).any(|a| (0..n).any(|b| p.lt(a, b))) {
                return Err(invalid("i", &[label]));
            }
        }
        let last = summands.len() - 1;
        if summands[last].top().is_none() {
            return Err(invalid("top", &[&index[last]]));
        }

        let pos = |label: &str| {
            index
                .iter()
                .position(|l| l == label)
                .ok_or_else(|| invalid("index", &[label]))
        };
        let mut shared: Vec<Option<(String, String)>> = vec![None; last];
        for g in &glue {
            let (i, j) = (pos(&g.lower)?, pos(&g.upper)?);
            let witness = [g.lower.as_str(), g.upper.as_str()];
            if i >= j {
                return Err(invalid("order", &witness));
            }
            if j > i + 1 {
                return Err(invalid("ii", &witness));
            }
            if shared[i].is_some() {
                return Err(invalid("iii", &witness));
            }
            let lower_ok = summands[i].index_of(&g.lower_elem).is_some_and(|x| summands[i].top() == Some(x));
            let upper_ok = summands[j].index_of(&g.upper_elem).is_some_and(|x| summands[j].bottom() == Some(x));
            if !lower_ok || !upper_ok {
                return Err(invalid("iv", &[&g.lower, &g.lower_elem, &g.upper, &g.upper_elem]));
            }
            shared[i] = Some((g.lower_elem.clone(), g.upper_elem.clone()));
        }

        let mut summands = summands;
        for (k, s) in shared.iter().enumerate() {
            let Some((lower, upper)) = s else { continue };
            let p = &summands[k + 1];
            let names: Vec<String> = p.names().iter().map(|x| if x == upper { lower.clone() } else { x.clone() }).collect();
            summands[k + 1] = p
                .with_names(names)
                .map_err(|_| invalid("labels", &[&index[k + 1], lower]))?;
        }
        let shared: Vec<Option<String>> = shared.into_iter().map(|s| s.map(|(l, _)| l)).collect();

        let mut owner: HashMap<&str, usize> = HashMap::new();
        for (k, p) in summands.iter().enumerate() {
            for x in p.names() {
                if let Some(&first) = owner.get(x.as_str()) {
                    let glued = first + 1 == k && shared[first].as_deref() == Some(x.as_str());
                    if !glued {
                        return Err(invalid("labels", &[&index[first], &index[k], x]));
                    }
                }
                owner.insert(x, k);
            }
        }
        Ok(SumFamily { index, summands, shared })
    }

    pub fn len(&self) -> usize {
        self.summands.len()
    }

    pub fn is_empty(&self) -> bool {
        self.summands.is_empty()
    }

    pub fn index(&self) -> &[String] {
        &self.index
    }

    /// Summand `k` after glue renaming.
    pub fn summand(&self, k: usize) -> &FinitePoset {
        &self.summands[k]
    }

    pub fn summands(&self) -> &[FinitePoset] {
        &self.summands
    }

    /// Element shared by summands `k` and `k + 1`, if glued.
    pub fn shared(&self, k: usize) -> Option<&str> {
        self.shared.get(k).and_then(|s| s.as_deref())
    }

    pub fn glue(&self) -> Vec<Glue> {
        (0..self.shared.len())
            .filter_map(|k| {
                self.shared(k).map(|x| Glue {
                    lower: self.index[k].clone(),
                    lower_elem: x.to_string(),
                    upper: self.index[k + 1].clone(),
                    upper_elem: x.to_string(),
                })
            })
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrdinalSum {
    pub poset: FinitePoset,
    /// Largest summand index containing each element.
    pub summand_of: Vec<usize>,
    /// Per summand, local id to element of the sum.
    pub members: Vec<Vec<usize>>,
}

impl OrdinalSum {
    /// Local id of `x` within summand `k`.
    pub fn local(&self, k: usize, x: usize) -> Option<usize> {
        self.members[k].iter().position(|&y| y == x)
    }
}

/// `a <= b` iff `a = b`, or both lie in one summand and are ordered there,
/// or `a` lies in an earlier summand than `b`.
pub fn build_sum(f: &SumFamily) -> OrdinalSum {
    let mut names: Vec<String> = Vec::new();
    let mut lookup: HashMap<String, usize> = HashMap::new();
    let mut members = Vec::with_capacity(f.len());
    let mut containing: Vec<Vec<usize>> = Vec::new();
    for (k, p) in f.summands.iter().enumerate() {
        let mut ids = Vec::with_capacity(p.size());
        for x in p.names() {
            let id = *lookup.entry(x.clone()).or_insert_with(|| {
                names.push(x.clone());
                containing.push(Vec::new());
                names.len() - 1
            });
            containing[id].push(k);
            ids.push(id);
        }
        members.push(ids);
    }
    let leq = |a: usize, b: usize| {
        a == b
            || containing[a].iter().any(|&i| {
                containing[b].iter().any(|&j| {
                    i < j || (i == j && {
                        let p = &f.summands[i];
                        p.leq(p.index_of(&names[a]).unwrap(), p.index_of(&names[b]).unwrap())
                    })
                })
            })
    };
    let poset = FinitePoset::from_relation(names.clone(), leq).expect("valid family sums to a poset");
    let summand_of = containing.iter().map(|ks| *ks.iter().max().unwrap()).collect();
    OrdinalSum {
        poset,
        summand_of,
        members,
    }
}
