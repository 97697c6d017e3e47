//! Finite posets with sectional pseudocomplements: the `*` operation and
//! its theory, congruences of `(P, *)`, Dedekind-MacNeille completion,
//! generalized ordinal sums, and exhaustive search over small posets.

pub mod completion;
pub mod congruence;
pub mod export;
pub mod fixtures;
pub mod ordinal_sum;
pub mod poset;
pub mod report;
pub mod search;
pub mod secpsc;
pub mod subset;

pub use poset::{FinitePoset, PosetError};
pub use subset::Subset;
