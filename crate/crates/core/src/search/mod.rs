//! Exhaustive enumeration of small posets up to isomorphism, the census of
//! their classifications, and the named counterexample searches.

mod canonical;
mod census;
mod predicates;

use std::collections::BTreeSet;

use rayon::prelude::*;
use thiserror::Error;

use crate::poset::FinitePoset;

pub use canonical::{canonical_code, canonical_form, from_code, generated_labels, MAX_CANONICAL_SIZE};
pub use census::{
    analyze, run_census, run_census_with, Census, CensusEntry, CensusOptions, SuiteCounterexample, SuiteItem,
    CACHE_ENV, CENSUS_FORMAT, SUITE_IDS,
};
pub use predicates::{find_counterexample, find_witness, Predicate};

/// Largest size enumerated unless a caller raises the cap.
pub const DEFAULT_CAP: usize = 7;
/// Largest size the canonical codes support.
pub const MAX_CAP: usize = MAX_CANONICAL_SIZE;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SearchError {
    #[error("size {n} outside 1..={cap}")]
    SizeCapExceeded { n: usize, cap: usize },
    #[error("unknown predicate `{0}`")]
    UnknownPredicate(String),
}

fn check_size(n: usize, cap: usize) -> Result<(), SearchError> {
    if n == 0 || n > cap.min(MAX_CAP) {
        return Err(SearchError::SizeCapExceeded { n, cap: cap.min(MAX_CAP) });
    }
    Ok(())
}

/// The poset `p` with one new element placed above exactly `below`, which
/// must be a down-set.
fn extend(p: &FinitePoset, below: u32) -> FinitePoset {
    let n = p.size();
    FinitePoset::from_relation(generated_labels(n + 1), |x, y| {
        if y == n {
            x == n || below >> x & 1 == 1
        } else {
            x != n && p.leq(x, y)
        }
    })
    .expect("adding a maximal element over a down-set keeps a partial order")
}

fn down_set_masks(p: &FinitePoset) -> Vec<u32> {
    let n = p.size();
    (0u32..1 << n)
        .filter(|&m| (0..n).all(|x| m >> x & 1 == 0 || p.down_set(x).iter().all(|y| m >> y & 1 == 1)))
        .collect()
}

/// Sorted canonical codes of all posets of each size `0..=n`.
///
/// Every `(k+1)`-element poset arises from a `k`-element one by adding a
/// maximal element over some down-set, so extending one representative per
/// class and deduplicating by canonical code is complete.
pub fn enumerate_codes(n: usize) -> Vec<Vec<u64>> {
    assert!(n <= MAX_CAP, "enumeration supports at most {MAX_CAP} elements");
    let mut levels = vec![vec![0u64]];
    for k in 0..n {
        let candidates: Vec<Vec<u64>> = levels[k]
            .par_iter()
            .map(|&code| {
                let p = from_code(k, code);
                down_set_masks(&p).into_iter().map(|m| canonical_code(&extend(&p, m))).collect()
            })
            .collect();
        let next: BTreeSet<u64> = candidates.into_iter().flatten().collect();
        levels.push(next.into_iter().collect());
    }
    levels
}

pub fn enumerate_posets(n: usize) -> Result<Vec<FinitePoset>, SearchError> {
    enumerate_posets_with_cap(n, DEFAULT_CAP)
}

/// One representative per isomorphism class, in canonical-code order.
pub fn enumerate_posets_with_cap(n: usize, cap: usize) -> Result<Vec<FinitePoset>, SearchError> {
    check_size(n, cap)?;
    Ok(enumerate_codes(n)[n].iter().map(|&c| from_code(n, c)).collect())
}
