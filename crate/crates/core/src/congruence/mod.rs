//! Congruences of the groupoid `(P, *)`: principal congruences by
//! union-find closure, the full congruence list, convexity, strong
//! congruences and quotient posets.

mod partition;
mod quotient;
mod union_find;

use std::collections::{HashSet, VecDeque};

use thiserror::Error;

pub use partition::{Partition, PartitionError, PartitionJson};
pub use quotient::{is_strong, quotient, verify_section3, QuotientError, QuotientStructure};

use crate::poset::FinitePoset;
use crate::secpsc::Groupoid;
use union_find::UnionFind;

/// Largest groupoid for which [`all_congruences`] will run by default.
pub const DEFAULT_CONGRUENCE_CAP: usize = 16;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CongruenceError {
    #[error("size {size} exceeds cap {cap}")]
    SizeCapExceeded { size: usize, cap: usize },
}

/// `x ≡ y` but `x*z ≢ y*z` (`left = true`) or `z*x ≢ z*y`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CompatibilityViolation {
    pub x: usize,
    pub y: usize,
    pub z: usize,
    pub left: bool,
}

pub fn congruence_violation(g: &Groupoid, part: &Partition) -> Option<CompatibilityViolation> {
    let n = g.size();
    for x in 0..n {
        for y in x + 1..n {
            if !part.same(x, y) {
                continue;
            }
            for z in 0..n {
                if !part.same(g.apply(x, z), g.apply(y, z)) {
                    return Some(CompatibilityViolation { x, y, z, left: true });
                }
                if !part.same(g.apply(z, x), g.apply(z, y)) {
                    return Some(CompatibilityViolation { x, y, z, left: false });
                }
            }
        }
    }
    None
}

pub fn is_congruence(g: &Groupoid, part: &Partition) -> bool {
    congruence_violation(g, part).is_none()
}

/// Least congruence containing all `pairs`.
///
/// Every merged pair is queued once; processing `(x, y)` merges its
/// translates `(x*z, y*z)` and `(z*x, z*y)`. Because every identification
/// in the closure is a chain of processed pairs, compatibility of the
/// translates of processed pairs suffices.
pub fn congruence_generated_by(g: &Groupoid, pairs: &[(usize, usize)]) -> Partition {
    let n = g.size();
    let mut uf = UnionFind::new(n);
    let mut queue: VecDeque<(usize, usize)> = VecDeque::new();
    for &(a, b) in pairs {
        if uf.union(a, b) {
            queue.push_back((a, b));
        }
    }
    while let Some((x, y)) = queue.pop_front() {
        for z in 0..n {
            for (u, v) in [(g.apply(x, z), g.apply(y, z)), (g.apply(z, x), g.apply(z, y))] {
                if uf.union(u, v) {
                    queue.push_back((u, v));
                }
            }
        }
    }
    Partition::from_class_of((0..n).map(|x| uf.find(x)).collect())
}

/// `Θ(a, b)`, the least congruence identifying `a` and `b`.
pub fn principal_congruence(g: &Groupoid, a: usize, b: usize) -> Partition {
    congruence_generated_by(g, &[(a, b)])
}

/// Every congruence of `g`, as the closure of `{Δ}` under joins with
/// principal congruences. Sorted by class count descending, then by class
/// assignment.
pub fn all_congruences(g: &Groupoid, cap: usize) -> Result<Vec<Partition>, CongruenceError> {
    let n = g.size();
    if n > cap {
        return Err(CongruenceError::SizeCapExceeded { size: n, cap });
    }
    let mut principals: Vec<Partition> = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            let t = principal_congruence(g, a, b);
            if !principals.contains(&t) {
                principals.push(t);
            }
        }
    }
    let delta = Partition::identity(n);
    let mut seen: HashSet<Partition> = HashSet::from([delta.clone()]);
    let mut queue = VecDeque::from([delta]);
    while let Some(c) = queue.pop_front() {
        for p in &principals {
            let j = join(g, &c, p);
            if seen.insert(j.clone()) {
                queue.push_back(j);
            }
        }
    }
    let mut out: Vec<Partition> = seen.into_iter().collect();
    out.sort_by(|a, b| b.num_classes().cmp(&a.num_classes()).then_with(|| a.class_of().cmp(b.class_of())));
    Ok(out)
}

/// Join in the congruence lattice: the congruence generated by the union.
pub fn join(g: &Groupoid, a: &Partition, b: &Partition) -> Partition {
    let pairs: Vec<(usize, usize)> = a.generating_pairs().into_iter().chain(b.generating_pairs()).collect();
    congruence_generated_by(g, &pairs)
}

/// `(a, b, c)` with `a < b < c`, `a ≡ c` but `a ≢ b`.
pub fn convexity_violation(p: &FinitePoset, part: &Partition) -> Option<[usize; 3]> {
    let n = p.size();
    for a in 0..n {
        for c in p.up_set(a).iter() {
            if c == a || !part.same(a, c) {
                continue;
            }
            for b in p.up_set(a).intersection(p.down_set(c)).iter() {
                if !part.same(a, b) {
                    return Some([a, b, c]);
                }
            }
        }
    }
    None
}

pub fn is_convex(p: &FinitePoset, part: &Partition) -> bool {
    convexity_violation(p, part).is_none()
}
