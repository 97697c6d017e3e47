//! Sectional and relative pseudocomplements on finite posets.
//!
//! The sectional pseudocomplement `a*b` is the greatest `c` with
//! `L(U(a,b), c) = L(b)`; the relative pseudocomplement is the greatest `d`
//! with `L(a,d) ⊆ L(b)`. Both may fail to exist, either because nothing
//! satisfies the defining condition or because the satisfiers have no
//! greatest member.

pub mod table_io;
mod theorems;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use theorems::{
    is_completely_l_semidistributive, is_completely_l_semidistributive_with_cap, lattice_identity_report,
    recover_from_groupoid, verify_lattice_identities, verify_maltsev_weakreg, verify_theorem2, AxiomViolation,
    SemidistributivityCheck, DEFAULT_SEMIDISTRIBUTIVITY_CAP,
};

use crate::poset::FinitePoset;
use crate::subset::Subset;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SecPcError {
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("size {size} exceeds cap {cap}")]
    SizeCapExceeded { size: usize, cap: usize },
    #[error("table row {row} has {len} entries, expected {expected}")]
    Ragged { row: usize, len: usize, expected: usize },
    #[error("table entry {value} out of range for {size} elements")]
    OutOfRange { value: usize, size: usize },
}

/// A total binary operation on `0..size`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Groupoid {
    size: usize,
    op: Vec<usize>,
}

impl Groupoid {
    pub fn from_rows(rows: &[Vec<usize>]) -> Result<Self, SecPcError> {
        let size = rows.len();
        let mut op = Vec::with_capacity(size * size);
        for (row, r) in rows.iter().enumerate() {
            if r.len() != size {
                return Err(SecPcError::Ragged {
                    row,
                    len: r.len(),
                    expected: size,
                });
            }
            if let Some(&value) = r.iter().find(|&&v| v >= size) {
                return Err(SecPcError::OutOfRange { value, size });
            }
            op.extend_from_slice(r);
        }
        Ok(Groupoid { size, op })
    }

    pub fn size(&self) -> usize {
        self.size
    }

    #[inline]
    pub fn apply(&self, a: usize, b: usize) -> usize {
        self.op[a * self.size + b]
    }

    pub fn rows(&self) -> Vec<Vec<usize>> {
        self.op.chunks(self.size.max(1)).take(self.size).map(<[usize]>::to_vec).collect()
    }
}

/// Why `a*b` is undefined, or its value.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SecPcOutcome {
    Defined(usize),
    NoSatisfier,
    /// Satisfiers exist but have no greatest member.
    NoGreatest(Vec<usize>),
}

impl SecPcOutcome {
    pub fn value(&self) -> Option<usize> {
        match self {
            SecPcOutcome::Defined(c) => Some(*c),
            _ => None,
        }
    }
}

/// Elements `c` with `L(U(a,b), c) = L(b)`.
pub fn sec_pc_satisfiers(p: &FinitePoset, a: usize, b: usize) -> Subset {
    let lu = p.lu_closure(&p.subset([a, b]));
    let target = p.down_set(b);
    p.subset((0..p.size()).filter(|&c| &lu.intersection(p.down_set(c)) == target))
}

pub fn sec_pc_outcome(p: &FinitePoset, a: usize, b: usize) -> SecPcOutcome {
    let sat = sec_pc_satisfiers(p, a, b);
    if sat.is_empty() {
        return SecPcOutcome::NoSatisfier;
    }
    match p.greatest(&sat) {
        Some(c) => SecPcOutcome::Defined(c),
        None => SecPcOutcome::NoGreatest(sat.to_vec()),
    }
}

/// The sectional pseudocomplement `a*b`, if it exists.
pub fn sec_pc(p: &FinitePoset, a: usize, b: usize) -> Option<usize> {
    sec_pc_outcome(p, a, b).value()
}

/// The relative pseudocomplement of `a` with respect to `b`, if it exists.
pub fn rel_pc(p: &FinitePoset, a: usize, b: usize) -> Option<usize> {
    let lb = p.down_set(b);
    let sat = p.subset((0..p.size()).filter(|&d| p.down_set(a).intersection(p.down_set(d)).is_subset(lb)));
    p.greatest(&sat)
}

/// The partial operation `*` of a poset; `star[a][b]` is `a*b` where defined.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SectionTable {
    base: FinitePoset,
    star: Vec<Vec<Option<usize>>>,
    top: Option<usize>,
}

pub fn sec_table(p: &FinitePoset) -> SectionTable {
    let n = p.size();
    let star: Vec<Vec<Option<usize>>> = (0..n)
        .into_par_iter()
        .map(|a| (0..n).map(|b| sec_pc(p, a, b)).collect())
        .collect();
    SectionTable {
        base: p.clone(),
        star,
        top: p.top(),
    }
}

impl SectionTable {
    pub fn base(&self) -> &FinitePoset {
        &self.base
    }

    pub fn top(&self) -> Option<usize> {
        self.top
    }

    pub fn size(&self) -> usize {
        self.base.size()
    }

    #[inline]
    pub fn get(&self, a: usize, b: usize) -> Option<usize> {
        self.star[a][b]
    }

    pub fn is_defined(&self, a: usize, b: usize) -> bool {
        self.star[a][b].is_some()
    }

    pub fn is_total(&self) -> bool {
        self.star.iter().flatten().all(Option::is_some)
    }

    pub fn rows(&self) -> &[Vec<Option<usize>>] {
        &self.star
    }

    pub fn undefined_pairs(&self) -> Vec<(usize, usize)> {
        let n = self.size();
        (0..n)
            .flat_map(|a| (0..n).map(move |b| (a, b)))
            .filter(|&(a, b)| self.star[a][b].is_none())
            .collect()
    }

    /// The total operation, when every entry is defined.
    pub fn groupoid(&self) -> Option<Groupoid> {
        let rows: Option<Vec<Vec<usize>>> = self.star.iter().map(|r| r.iter().copied().collect()).collect();
        rows.map(|r| Groupoid::from_rows(&r).expect("table is square"))
    }

    /// Like [`groupoid`](Self::groupoid) but also requires a top element.
    pub fn require_total_with_top(&self) -> Result<(Groupoid, usize), SecPcError> {
        let top = self
            .top
            .ok_or_else(|| SecPcError::Precondition("poset has no greatest element".into()))?;
        let g = self.groupoid().ok_or_else(|| {
            let (a, b) = self.undefined_pairs()[0];
            SecPcError::Precondition(format!(
                "{}*{} is undefined",
                self.base.name(a),
                self.base.name(b)
            ))
        })?;
        Ok((g, top))
    }

    /// `(x, y, z)` with `x <= y` but `z*x` not below `z*y`.
    pub fn second_arg_monotonicity_violation(&self) -> Option<[usize; 3]> {
        let p = &self.base;
        let n = p.size();
        for x in 0..n {
            for y in p.up_set(x).iter() {
                for z in 0..n {
                    if let (Some(zx), Some(zy)) = (self.get(z, x), self.get(z, y)) {
                        if !p.leq(zx, zy) {
                            return Some([x, y, z]);
                        }
                    }
                }
            }
        }
        None
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub property: String,
    pub elements: Vec<usize>,
}

pub const WITNESS_NO_SATISFIER: &str = "sec_pc_no_satisfier";
pub const WITNESS_NO_GREATEST: &str = "sec_pc_no_greatest_satisfier";
pub const WITNESS_STRONG: &str = "strong_condition";
pub const WITNESS_REL_PC: &str = "rel_pc_missing";
pub const WITNESS_LATTICE: &str = "not_lattice";

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassificationReport {
    pub is_sec_pc: bool,
    pub is_strongly_sec_pc: bool,
    pub is_rel_pc: bool,
    pub is_lattice: bool,
    pub has_top: bool,
    /// First counterexample for each property that fails.
    pub witnesses: Vec<Witness>,
}

impl ClassificationReport {
    pub fn witness(&self, property: &str) -> Option<&[usize]> {
        self.witnesses
            .iter()
            .find(|w| w.property == property)
            .map(|w| w.elements.as_slice())
    }
}

pub fn classify(p: &FinitePoset) -> ClassificationReport {
    classify_table(&sec_table(p))
}

pub fn classify_table(t: &SectionTable) -> ClassificationReport {
    let p = t.base();
    let n = p.size();
    let mut witnesses = Vec::new();

    let is_sec_pc = t.is_total();
    if let Some(&(a, b)) = t.undefined_pairs().first() {
        let property = match sec_pc_outcome(p, a, b) {
            SecPcOutcome::NoSatisfier => WITNESS_NO_SATISFIER,
            _ => WITNESS_NO_GREATEST,
        };
        witnesses.push(Witness {
            property: property.into(),
            elements: vec![a, b],
        });
    }

    let has_top = t.top().is_some();
    let mut is_strongly_sec_pc = false;
    if is_sec_pc && has_top {
        let violation = (0..n)
            .flat_map(|x| (0..n).map(move |y| (x, y)))
            .find(|&(x, y)| {
                let xy = t.get(x, y).unwrap();
                !p.leq(x, t.get(xy, y).unwrap())
            });
        match violation {
            None => is_strongly_sec_pc = true,
            Some((x, y)) => witnesses.push(Witness {
                property: WITNESS_STRONG.into(),
                elements: vec![x, y],
            }),
        }
    }

    let rel_missing = (0..n)
        .flat_map(|a| (0..n).map(move |b| (a, b)))
        .find(|&(a, b)| rel_pc(p, a, b).is_none());
    if let Some((a, b)) = rel_missing {
        witnesses.push(Witness {
            property: WITNESS_REL_PC.into(),
            elements: vec![a, b],
        });
    }

    let lattice_missing = (0..n)
        .flat_map(|a| (a + 1..n).map(move |b| (a, b)))
        .find(|&(a, b)| p.join(a, b).is_none() || p.meet(a, b).is_none());
    if let Some((a, b)) = lattice_missing {
        witnesses.push(Witness {
            property: WITNESS_LATTICE.into(),
            elements: vec![a, b],
        });
    }

    ClassificationReport {
        is_sec_pc,
        is_strongly_sec_pc,
        is_rel_pc: rel_missing.is_none(),
        is_lattice: lattice_missing.is_none(),
        has_top,
        witnesses,
    }
}
