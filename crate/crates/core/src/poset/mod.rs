//! Finite posets stored as closed order relations.
//!
//! Elements are identified by index `0..size`; names are carried along for
//! presentation only. The relation is kept both row-wise (principal up-sets)
//! and column-wise (principal down-sets), so the cone operators `L` and `U`
//! reduce to intersections of precomputed bitsets.

mod iso;
pub mod text;

use std::collections::HashMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use iso::{is_isomorphic, IsoWitness};

use crate::subset::Subset;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PosetError {
    #[error("order relation has a cycle through `{0}` and `{1}`")]
    Cycle(String, String),
    #[error("unknown label `{0}`")]
    UnknownLabel(String),
    #[error("duplicate label `{0}`")]
    DuplicateLabel(String),
    #[error("relation is not reflexive at `{0}`")]
    NotReflexive(String),
    #[error("relation is not transitive: `{0}` <= `{1}` <= `{2}`")]
    NotTransitive(String, String, String),
    #[error("relation has {rows} rows but {labels} labels")]
    SizeMismatch { rows: usize, labels: usize },
}

#[derive(Clone, PartialEq, Eq, Hash)]
#[derive(Serialize, Deserialize)]
#[serde(try_from = "PosetRepr", into = "PosetRepr")]
pub struct FinitePoset {
    names: Vec<String>,
    /// `up[x]` = { y : x <= y }
    up: Vec<Subset>,
    /// `down[x]` = { y : y <= x }
    down: Vec<Subset>,
}

/// Serialized form: labels plus the Hasse covers.
#[derive(Serialize, Deserialize)]
struct PosetRepr {
    elements: Vec<String>,
    covers: Vec<(String, String)>,
}

impl TryFrom<PosetRepr> for FinitePoset {
    type Error = PosetError;

    fn try_from(r: PosetRepr) -> Result<Self, Self::Error> {
        build_poset(&r.elements, &r.covers)
    }
}

impl From<FinitePoset> for PosetRepr {
    fn from(p: FinitePoset) -> Self {
        let covers = p
            .hasse_covers()
            .into_iter()
            .map(|(a, b)| (p.names[a].clone(), p.names[b].clone()))
            .collect();
        PosetRepr {
            elements: p.names,
            covers,
        }
    }
}

impl std::fmt::Debug for FinitePoset {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let covers: Vec<String> = self
            .hasse_covers()
            .into_iter()
            .map(|(a, b)| format!("{}<{}", self.names[a], self.names[b]))
            .collect();
        f.debug_struct("FinitePoset")
            .field("elements", &self.names)
            .field("covers", &covers)
            .finish()
    }
}

/// Builds a poset from labels and `(lower, upper)` cover pairs by taking the
/// reflexive-transitive closure.
pub fn build_poset<S: AsRef<str>>(labels: &[S], covers: &[(S, S)]) -> Result<FinitePoset, PosetError> {
    let names: Vec<String> = labels.iter().map(|s| s.as_ref().to_string()).collect();
    let mut index = HashMap::new();
    for (i, name) in names.iter().enumerate() {
        if index.insert(name.as_str(), i).is_some() {
            return Err(PosetError::DuplicateLabel(name.clone()));
        }
    }
    let lookup = |s: &str| index.get(s).copied().ok_or_else(|| PosetError::UnknownLabel(s.to_string()));
    let pairs = covers
        .iter()
        .map(|(a, b)| Ok((lookup(a.as_ref())?, lookup(b.as_ref())?)))
        .collect::<Result<Vec<_>, PosetError>>()?;
    FinitePoset::from_covers(names, &pairs)
}

impl FinitePoset {
    /// Closes the given pairs reflexively and transitively.
    pub fn from_covers(names: Vec<String>, pairs: &[(usize, usize)]) -> Result<Self, PosetError> {
        let n = names.len();
        let mut rows: Vec<Subset> = (0..n).map(|x| Subset::singleton(n, x)).collect();
        for &(a, b) in pairs {
            rows[a].insert(b);
        }
        // Boolean squaring R <- R ∪ R·R until stable; at most log2(n) rounds.
        loop {
            let mut changed = false;
            let next: Vec<Subset> = rows
                .iter()
                .map(|row| {
                    let mut acc = row.clone();
                    for y in row.iter() {
                        acc.union_with(&rows[y]);
                    }
                    acc
                })
                .collect();
            for (old, new) in rows.iter().zip(&next) {
                if old != new {
                    changed = true;
                    break;
                }
            }
            rows = next;
            if !changed {
                break;
            }
        }
        for a in 0..n {
            for b in rows[a].iter() {
                if a != b && rows[b].contains(a) {
                    return Err(PosetError::Cycle(names[a].clone(), names[b].clone()));
                }
            }
        }
        Ok(Self::from_rows(names, rows))
    }

    /// Validates an arbitrary relation `leq(x, y)` meaning `x <= y`.
    pub fn from_relation(names: Vec<String>, leq: impl Fn(usize, usize) -> bool) -> Result<Self, PosetError> {
        let n = names.len();
        let mut seen = HashMap::new();
        for name in &names {
            if seen.insert(name.as_str(), ()).is_some() {
                return Err(PosetError::DuplicateLabel(name.clone()));
            }
        }
        let rows: Vec<Subset> = (0..n).map(|x| Subset::from_elements(n, (0..n).filter(|&y| leq(x, y)))).collect();
        for x in 0..n {
            if !rows[x].contains(x) {
                return Err(PosetError::NotReflexive(names[x].clone()));
            }
            for y in rows[x].iter() {
                if x != y && rows[y].contains(x) {
                    return Err(PosetError::Cycle(names[x].clone(), names[y].clone()));
                }
                if !rows[y].is_subset(&rows[x]) {
                    let z = rows[y].iter().find(|&z| !rows[x].contains(z)).unwrap();
                    return Err(PosetError::NotTransitive(names[x].clone(), names[y].clone(), names[z].clone()));
                }
            }
        }
        Ok(Self::from_rows(names, rows))
    }

    /// Validates a dense boolean matrix.
    pub fn from_matrix(names: Vec<String>, leq: &[Vec<bool>]) -> Result<Self, PosetError> {
        if leq.len() != names.len() || leq.iter().any(|r| r.len() != names.len()) {
            return Err(PosetError::SizeMismatch {
                rows: leq.len(),
                labels: names.len(),
            });
        }
        Self::from_relation(names, |x, y| leq[x][y])
    }

    fn from_rows(names: Vec<String>, up: Vec<Subset>) -> Self {
        let n = names.len();
        let mut down: Vec<Subset> = (0..n).map(|_| Subset::empty(n)).collect();
        for (x, row) in up.iter().enumerate() {
            for y in row.iter() {
                down[y].insert(x);
            }
        }
        FinitePoset { names, up, down }
    }

    /// The n-element chain `names[0] < names[1] < ...`.
    pub fn chain<S: AsRef<str>>(labels: &[S]) -> Self {
        let names: Vec<String> = labels.iter().map(|s| s.as_ref().to_string()).collect();
        Self::from_relation(names, |x, y| x <= y).expect("chain labels must be distinct")
    }

    pub fn antichain<S: AsRef<str>>(labels: &[S]) -> Self {
        let names: Vec<String> = labels.iter().map(|s| s.as_ref().to_string()).collect();
        Self::from_relation(names, |x, y| x == y).expect("antichain labels must be distinct")
    }

    pub fn size(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, x: usize) -> &str {
        &self.names[x]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.names.iter().position(|n| n == label)
    }

    /// Looks up several labels at once; panics on unknown labels. Intended
    /// for fixtures and tests.
    pub fn ids(&self, labels: &[&str]) -> Vec<usize> {
        labels
            .iter()
            .map(|l| self.index_of(l).unwrap_or_else(|| panic!("no element `{l}`")))
            .collect()
    }

    pub fn with_names(&self, names: Vec<String>) -> Result<Self, PosetError> {
        if names.len() != self.size() {
            return Err(PosetError::SizeMismatch {
                rows: self.size(),
                labels: names.len(),
            });
        }
        Self::from_relation(names, |x, y| self.leq(x, y))
    }

    #[inline]
    pub fn leq(&self, x: usize, y: usize) -> bool {
        self.up[x].contains(y)
    }

    #[inline]
    pub fn lt(&self, x: usize, y: usize) -> bool {
        x != y && self.leq(x, y)
    }

    pub fn comparable(&self, x: usize, y: usize) -> bool {
        self.leq(x, y) || self.leq(y, x)
    }

    /// Principal up-set `{ y : x <= y }`.
    pub fn up_set(&self, x: usize) -> &Subset {
        &self.up[x]
    }

    /// Principal down-set `{ y : y <= x }`, i.e. `L(x)`.
    pub fn down_set(&self, x: usize) -> &Subset {
        &self.down[x]
    }

    pub fn empty_subset(&self) -> Subset {
        Subset::empty(self.size())
    }

    pub fn full_subset(&self) -> Subset {
        Subset::full(self.size())
    }

    pub fn subset(&self, elements: impl IntoIterator<Item = usize>) -> Subset {
        Subset::from_elements(self.size(), elements)
    }

    /// `L(A)`: common lower bounds of `A`. `L(∅) = P`.
    pub fn lower_cone(&self, a: &Subset) -> Subset {
        let mut acc = self.full_subset();
        for y in a.iter() {
            acc.intersect_with(&self.down[y]);
        }
        acc
    }

    /// `U(A)`: common upper bounds of `A`. `U(∅) = P`.
    pub fn upper_cone(&self, a: &Subset) -> Subset {
        let mut acc = self.full_subset();
        for y in a.iter() {
            acc.intersect_with(&self.up[y]);
        }
        acc
    }

    pub fn lower_cone_of(&self, elements: &[usize]) -> Subset {
        self.lower_cone(&self.subset(elements.iter().copied()))
    }

    pub fn upper_cone_of(&self, elements: &[usize]) -> Subset {
        self.upper_cone(&self.subset(elements.iter().copied()))
    }

    /// `LU(A)`, the Dedekind-MacNeille closure of `A`.
    pub fn lu_closure(&self, a: &Subset) -> Subset {
        self.lower_cone(&self.upper_cone(a))
    }

    /// `↓A`: everything below some member of `A`.
    pub fn down_closure(&self, a: &Subset) -> Subset {
        let mut acc = self.empty_subset();
        for y in a.iter() {
            acc.union_with(&self.down[y]);
        }
        acc
    }

    pub fn up_closure(&self, a: &Subset) -> Subset {
        let mut acc = self.empty_subset();
        for y in a.iter() {
            acc.union_with(&self.up[y]);
        }
        acc
    }

    pub fn is_down_set(&self, a: &Subset) -> bool {
        a.iter().all(|y| self.down[y].is_subset(a))
    }

    /// The member of `a` above every other member, if any.
    pub fn greatest(&self, a: &Subset) -> Option<usize> {
        a.iter().find(|&g| a.is_subset(&self.down[g]))
    }

    pub fn least(&self, a: &Subset) -> Option<usize> {
        a.iter().find(|&g| a.is_subset(&self.up[g]))
    }

    pub fn maximal_elements(&self, a: &Subset) -> Vec<usize> {
        a.iter()
            .filter(|&x| a.iter().all(|y| !self.lt(x, y)))
            .collect()
    }

    pub fn minimal_elements(&self, a: &Subset) -> Vec<usize> {
        a.iter()
            .filter(|&x| a.iter().all(|y| !self.lt(y, x)))
            .collect()
    }

    pub fn top(&self) -> Option<usize> {
        self.greatest(&self.full_subset())
    }

    pub fn bottom(&self) -> Option<usize> {
        self.least(&self.full_subset())
    }

    pub fn join(&self, a: usize, b: usize) -> Option<usize> {
        self.least(&self.up[a].intersection(&self.up[b]))
    }

    pub fn meet(&self, a: usize, b: usize) -> Option<usize> {
        self.greatest(&self.down[a].intersection(&self.down[b]))
    }

    /// Join of an arbitrary subset; the join of `∅` is the bottom.
    pub fn join_of(&self, a: &Subset) -> Option<usize> {
        self.least(&self.upper_cone(a))
    }

    pub fn meet_of(&self, a: &Subset) -> Option<usize> {
        self.greatest(&self.lower_cone(a))
    }

    pub fn is_lattice(&self) -> bool {
        let n = self.size();
        (0..n).all(|a| (a + 1..n).all(|b| self.join(a, b).is_some() && self.meet(a, b).is_some()))
    }

    /// `(a, b)` with `a < b` and nothing strictly between, ordered by `(a, b)`.
    pub fn hasse_covers(&self) -> Vec<(usize, usize)> {
        let n = self.size();
        let mut covers = Vec::new();
        for a in 0..n {
            for b in self.up[a].iter() {
                if a == b {
                    continue;
                }
                let between = self.up[a].intersection(&self.down[b]);
                if between.count() == 2 {
                    covers.push((a, b));
                }
            }
        }
        covers
    }

    pub fn covers(&self, a: usize, b: usize) -> bool {
        self.lt(a, b) && self.up[a].intersection(&self.down[b]).count() == 2
    }

    /// Length of the longest chain ending at each element (minimal elements
    /// have height 0).
    pub fn heights(&self) -> Vec<usize> {
        let n = self.size();
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by_key(|&x| self.down[x].count());
        let mut h = vec![0; n];
        for &x in &order {
            h[x] = self.down[x].iter().filter(|&y| y != x).map(|y| h[y] + 1).max().unwrap_or(0);
        }
        h
    }

    /// The sub-poset on `keep`, with elements in increasing index order.
    /// Returns the sub-poset and the map from new index to old index.
    pub fn restrict(&self, keep: &Subset) -> (FinitePoset, Vec<usize>) {
        let ids = keep.to_vec();
        let names = ids.iter().map(|&x| self.names[x].clone()).collect();
        let sub = FinitePoset::from_relation(names, |a, b| self.leq(ids[a], ids[b])).expect("restriction of a poset is a poset");
        (sub, ids)
    }

    /// Reorders elements so that new index `i` is old element `perm[i]`.
    pub fn permuted(&self, perm: &[usize]) -> FinitePoset {
        let names = perm.iter().map(|&x| self.names[x].clone()).collect();
        FinitePoset::from_relation(names, |a, b| self.leq(perm[a], perm[b])).expect("permutation of a poset is a poset")
    }

    /// Same order as `other` on identical index sets.
    pub fn same_order(&self, other: &FinitePoset) -> bool {
        self.size() == other.size() && self.up == other.up
    }
}
