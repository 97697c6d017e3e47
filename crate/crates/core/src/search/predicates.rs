use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;

use super::{check_size, enumerate_codes, from_code, SearchError};
use crate::completion::dm_completion;
use crate::poset::FinitePoset;
use crate::secpsc::{classify, classify_table, sec_table, verify_lattice_identities, verify_maltsev_weakreg};

/// The closed registry of searchable properties.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Predicate {
    /// Sectionally pseudocomplemented with top, but `x <= (x*y)*y` fails.
    SecNotStrong,
    /// Sectionally pseudocomplemented, completion is not.
    SecPcLostUnderDm,
    /// Sectionally pseudocomplemented, `*` not monotone in its second argument.
    SecondArgNonmonotone,
    /// Strongly sectionally pseudocomplemented, not relatively pseudocomplemented.
    StrongNotRelPc,
    /// Sectionally pseudocomplemented lattice violating the lattice or
    /// Mal'cev identities.
    LatticeIdentityViolation,
}

impl Predicate {
    pub const ALL: [Predicate; 5] = [
        Predicate::SecNotStrong,
        Predicate::SecPcLostUnderDm,
        Predicate::SecondArgNonmonotone,
        Predicate::StrongNotRelPc,
        Predicate::LatticeIdentityViolation,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Predicate::SecNotStrong => "sec-not-strong",
            Predicate::SecPcLostUnderDm => "secpc-lost-under-DM",
            Predicate::SecondArgNonmonotone => "second-arg-nonmonotone",
            Predicate::StrongNotRelPc => "strong-not-relpc",
            Predicate::LatticeIdentityViolation => "lattice-identity-violation",
        }
    }

    pub fn holds(self, p: &FinitePoset) -> bool {
        let t = sec_table(p);
        let c = classify_table(&t);
        if !c.is_sec_pc {
            return false;
        }
        match self {
            Predicate::SecNotStrong => c.has_top && !c.is_strongly_sec_pc,
            Predicate::SecPcLostUnderDm => !classify(&dm_completion(p).lattice).is_sec_pc,
            Predicate::SecondArgNonmonotone => t.second_arg_monotonicity_violation().is_some(),
            Predicate::StrongNotRelPc => c.is_strongly_sec_pc && !c.is_rel_pc,
            Predicate::LatticeIdentityViolation => {
                c.is_lattice
                    && !(verify_lattice_identities(p).is_ok_and(|r| r.all_pass())
                        && verify_maltsev_weakreg(p).is_ok_and(|r| r.all_pass()))
            }
        }
    }
}

impl fmt::Display for Predicate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Predicate {
    type Err = SearchError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Predicate::ALL
            .into_iter()
            .find(|p| p.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| SearchError::UnknownPredicate(s.to_string()))
    }
}

/// The first poset (by size, then canonical code) of at most `n` elements
/// satisfying `predicate`.
pub fn find_witness(n: usize, predicate: Predicate) -> Result<Option<FinitePoset>, SearchError> {
    check_size(n, super::MAX_CAP)?;
    let levels = enumerate_codes(n);
    for (m, codes) in levels.iter().enumerate().skip(1) {
        let hit = codes.par_iter().map(|&c| from_code(m, c)).find_first(|p| predicate.holds(p));
        if hit.is_some() {
            return Ok(hit);
        }
    }
    Ok(None)
}

pub fn find_counterexample(n: usize, predicate: &str) -> Result<Option<FinitePoset>, SearchError> {
    find_witness(n, predicate.parse()?)
}
