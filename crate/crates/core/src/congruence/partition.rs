use std::collections::HashMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::poset::FinitePoset;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PartitionError {
    #[error("element {0} assigned to more than one class")]
    Repeated(String),
    #[error("element {0} not assigned to any class")]
    Missing(String),
    #[error("unknown element `{0}`")]
    Unknown(String),
    #[error("empty class")]
    EmptyClass,
}

/// An equivalence relation on `0..n`, stored as a class id per element.
/// Class ids are contiguous and numbered by first occurrence, so equal
/// relations have equal representations.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Partition {
    class_of: Vec<usize>,
}

impl Partition {
    /// Renumbers arbitrary labels to first-occurrence order.
    pub fn from_class_of(labels: Vec<usize>) -> Self {
        let mut renum = HashMap::new();
        let class_of = labels
            .into_iter()
            .map(|l| {
                let next = renum.len();
                *renum.entry(l).or_insert(next)
            })
            .collect();
        Partition { class_of }
    }

    pub fn from_classes(n: usize, classes: &[Vec<usize>]) -> Result<Self, PartitionError> {
        let mut labels = vec![usize::MAX; n];
        for (i, class) in classes.iter().enumerate() {
            if class.is_empty() {
                return Err(PartitionError::EmptyClass);
            }
            for &x in class {
                if x >= n {
                    return Err(PartitionError::Unknown(x.to_string()));
                }
                if labels[x] != usize::MAX {
                    return Err(PartitionError::Repeated(x.to_string()));
                }
                labels[x] = i;
            }
        }
        if let Some(x) = labels.iter().position(|&l| l == usize::MAX) {
            return Err(PartitionError::Missing(x.to_string()));
        }
        Ok(Self::from_class_of(labels))
    }

    /// `Δ`: every element alone.
    pub fn identity(n: usize) -> Self {
        Partition {
            class_of: (0..n).collect(),
        }
    }

    /// `∇`: one class.
    pub fn total(n: usize) -> Self {
        Partition { class_of: vec![0; n] }
    }

    pub fn size(&self) -> usize {
        self.class_of.len()
    }

    pub fn class_of(&self) -> &[usize] {
        &self.class_of
    }

    pub fn class_id(&self, x: usize) -> usize {
        self.class_of[x]
    }

    pub fn num_classes(&self) -> usize {
        self.class_of.iter().max().map_or(0, |m| m + 1)
    }

    #[inline]
    pub fn same(&self, x: usize, y: usize) -> bool {
        self.class_of[x] == self.class_of[y]
    }

    pub fn classes(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.num_classes()];
        for (x, &c) in self.class_of.iter().enumerate() {
            out[c].push(x);
        }
        out
    }

    /// Members of the class of `x`, ascending.
    pub fn class_members(&self, x: usize) -> Vec<usize> {
        let c = self.class_of[x];
        (0..self.size()).filter(|&y| self.class_of[y] == c).collect()
    }

    /// Every class of `self` is inside a class of `other`.
    pub fn refines(&self, other: &Partition) -> bool {
        (0..self.size()).all(|x| (0..self.size()).all(|y| !self.same(x, y) || other.same(x, y)))
    }

    /// Intersection of the two relations.
    pub fn meet(&self, other: &Partition) -> Partition {
        let n = self.size();
        Self::from_class_of((0..n).map(|x| self.class_of[x] * n + other.class_of[x]).collect())
    }

    /// Pairs `(first member, x)` spanning each class.
    pub fn generating_pairs(&self) -> Vec<(usize, usize)> {
        self.classes()
            .into_iter()
            .flat_map(|c| {
                let first = c[0];
                c.into_iter().skip(1).map(move |x| (first, x))
            })
            .collect()
    }

    pub fn is_identity(&self) -> bool {
        self.num_classes() == self.size()
    }

    /// Class labels in the form `{a,b}`, members in element order.
    pub fn class_labels(&self, p: &FinitePoset) -> Vec<String> {
        self.classes()
            .iter()
            .map(|c| {
                let names: Vec<&str> = c.iter().map(|&x| p.name(x)).collect();
                format!("{{{}}}", names.join(","))
            })
            .collect()
    }

    pub fn to_json(&self, p: &FinitePoset) -> PartitionJson {
        PartitionJson {
            classes: self
                .classes()
                .iter()
                .map(|c| c.iter().map(|&x| p.name(x).to_string()).collect())
                .collect(),
        }
    }
}

/// `{ "classes": [["a","b"],["c"]] }`
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PartitionJson {
    pub classes: Vec<Vec<String>>,
}

impl PartitionJson {
    pub fn resolve(&self, p: &FinitePoset) -> Result<Partition, PartitionError> {
        let mut labels = vec![usize::MAX; p.size()];
        for (i, class) in self.classes.iter().enumerate() {
            if class.is_empty() {
                return Err(PartitionError::EmptyClass);
            }
            for l in class {
                let x = p.index_of(l).ok_or_else(|| PartitionError::Unknown(l.clone()))?;
                if labels[x] != usize::MAX {
                    return Err(PartitionError::Repeated(l.clone()));
                }
                labels[x] = i;
            }
        }
        if let Some(x) = labels.iter().position(|&l| l == usize::MAX) {
            return Err(PartitionError::Missing(p.name(x).to_string()));
        }
        Ok(Partition::from_class_of(labels))
    }
}
