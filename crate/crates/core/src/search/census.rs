use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{check_size, enumerate_codes, from_code, Predicate, SearchError, DEFAULT_CAP};
use crate::completion::dm_completion;
use crate::congruence::{all_congruences, convexity_violation, verify_section3, DEFAULT_CONGRUENCE_CAP};
use crate::poset::FinitePoset;
use crate::report::{Outcome, PropertyReport};
use crate::secpsc::{
    classify, classify_table, is_completely_l_semidistributive, rel_pc, sec_table, verify_lattice_identities,
    verify_maltsev_weakreg, verify_theorem2, ClassificationReport,
};

/// Bumped whenever the census contents change meaning; part of cache keys.
pub const CENSUS_FORMAT: u32 = 1;
/// Environment variable naming the census cache directory.
pub const CACHE_ENV: &str = "ORDKIT_CACHE";

pub const SUITE_IDS: [(&str, &str); 8] = [
    ("a", "sec-pc with top: basic properties (i)-(viii) of *"),
    ("b", "sec-pc: completely L-semidistributive"),
    ("c", "sec-pc with top: every congruence of (P,*) is convex"),
    ("d", "strongly sec-pc: every congruence class has a greatest element"),
    ("e", "strongly sec-pc: quotients by strong congruences are strongly sec-pc"),
    ("f", "strongly sec-pc: Θ(b*a,1) = Θ(a,b) for a <= b"),
    ("g", "sec-pc lattice: lattice identities and Mal'cev terms"),
    ("h", "rel-pc lattice: sec-pc with a*b = (a∨b)∘b"),
];

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CensusEntry {
    pub code: u64,
    pub poset: FinitePoset,
    pub classification: ClassificationReport,
    /// `None` when `*` is partial.
    pub second_arg_monotone: Option<bool>,
    /// `None` unless sectionally pseudocomplemented.
    pub dm_preserves_secpc: Option<bool>,
    /// `None` unless sectionally pseudocomplemented with top.
    pub congruences_convex: Option<bool>,
    /// Registry predicates that hold.
    pub predicates: Vec<String>,
}

impl CensusEntry {
    pub fn satisfies(&self, p: Predicate) -> bool {
        self.predicates.iter().any(|n| n == p.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteCounterexample {
    pub code: u64,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteItem {
    pub id: String,
    pub description: String,
    /// Instances meeting the hypothesis.
    pub applicable: usize,
    pub counterexamples: Vec<SuiteCounterexample>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Census {
    pub n: usize,
    pub version: String,
    pub entries: Vec<CensusEntry>,
    pub suite: Vec<SuiteItem>,
}

impl Census {
    pub fn entry(&self, code: u64) -> Option<&CensusEntry> {
        self.entries.iter().find(|e| e.code == code)
    }

    /// First entry, in code order, satisfying `p`.
    pub fn first_with(&self, p: Predicate) -> Option<&CensusEntry> {
        self.entries.iter().find(|e| e.satisfies(p))
    }

    pub fn suite_passes(&self) -> bool {
        self.suite.iter().all(|s| s.counterexamples.is_empty())
    }
}

fn census_version() -> String {
    format!("{}+{}", env!("CARGO_PKG_VERSION"), CENSUS_FORMAT)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CensusOptions {
    pub cap: usize,
    pub cache_dir: Option<PathBuf>,
}

impl CensusOptions {
    /// Default cap, cache directory from `ORDKIT_CACHE` if set.
    pub fn from_env() -> Self {
        CensusOptions {
            cap: DEFAULT_CAP,
            cache_dir: std::env::var_os(CACHE_ENV).filter(|v| !v.is_empty()).map(PathBuf::from),
        }
    }
}

fn failures(r: &PropertyReport) -> Option<String> {
    let names: Vec<&str> = r.failures().map(|c| c.name.as_str()).collect();
    (!names.is_empty()).then(|| names.join(","))
}

fn named_failure(r: &PropertyReport, name: &str) -> Option<String> {
    match r.get(name) {
        Some(Outcome::Fail { witness, note }) => Some(format!("{note} at {witness:?}")),
        _ => None,
    }
}

/// `None` if the hypothesis does not apply, else the failure detail if any.
type SuiteOutcome = Option<Option<String>>;

/// Census record and suite outcomes (in `SUITE_IDS` order) for one poset.
pub fn analyze(p: &FinitePoset, code: u64) -> (CensusEntry, Vec<SuiteOutcome>) {
    let t = sec_table(p);
    let c = classify_table(&t);
    let secpc_top = c.is_sec_pc && c.has_top;
    let mut suite: Vec<SuiteOutcome> = vec![None; SUITE_IDS.len()];

    if secpc_top {
        suite[0] = Some(match verify_theorem2(&t) {
            Ok(r) => failures(&r),
            Err(e) => Some(e.to_string()),
        });
    }
    if c.is_sec_pc {
        suite[1] = Some(match is_completely_l_semidistributive(p) {
            Ok(s) if s.holds => None,
            Ok(s) => Some(format!("{:?}", s.witness)),
            Err(e) => Some(e.to_string()),
        });
    }
    let mut congruences_convex = None;
    if secpc_top {
        let g = t.groupoid().expect("total table");
        let outcome = match all_congruences(&g, DEFAULT_CONGRUENCE_CAP) {
            Ok(cons) => cons
                .iter()
                .find_map(|k| convexity_violation(p, k))
                .map(|w| format!("not convex at {w:?}")),
            Err(e) => Some(e.to_string()),
        };
        congruences_convex = Some(outcome.is_none());
        suite[2] = Some(outcome);
    }
    if c.is_strongly_sec_pc {
        match verify_section3(p) {
            Ok(r) => {
                suite[3] = Some(named_failure(&r, "class_greatest"));
                suite[4] = Some(
                    named_failure(&r, "quotient_strong").or_else(|| named_failure(&r, "quotient_order")),
                );
                suite[5] = Some(named_failure(&r, "principal_lemma"));
            }
            Err(e) => {
                for s in &mut suite[3..6] {
                    *s = Some(Some(e.to_string()));
                }
            }
        }
    }
    if c.is_sec_pc && c.is_lattice {
        let mut detail = Vec::new();
        for r in [verify_lattice_identities(p), verify_maltsev_weakreg(p)] {
            match r {
                Ok(r) => detail.extend(failures(&r)),
                Err(e) => detail.push(e.to_string()),
            }
        }
        suite[6] = Some((!detail.is_empty()).then(|| detail.join(";")));
    }
    if c.is_rel_pc && c.is_lattice {
        let n = p.size();
        let bad = (0..n).flat_map(|a| (0..n).map(move |b| (a, b))).find(|&(a, b)| {
            let j = p.join(a, b).expect("lattice join");
            t.get(a, b).is_none() || t.get(a, b) != rel_pc(p, j, b)
        });
        suite[7] = Some(bad.map(|(a, b)| format!("a*b != (a∨b)∘b at {:?}", [a, b])));
    }

    let dm_preserves_secpc = c.is_sec_pc.then(|| classify(&dm_completion(p).lattice).is_sec_pc);
    let second_arg_monotone = c.is_sec_pc.then(|| t.second_arg_monotonicity_violation().is_none());
    let mut predicates = Vec::new();
    if c.is_sec_pc {
        if c.has_top && !c.is_strongly_sec_pc {
            predicates.push(Predicate::SecNotStrong);
        }
        if dm_preserves_secpc == Some(false) {
            predicates.push(Predicate::SecPcLostUnderDm);
        }
        if second_arg_monotone == Some(false) {
            predicates.push(Predicate::SecondArgNonmonotone);
        }
        if c.is_strongly_sec_pc && !c.is_rel_pc {
            predicates.push(Predicate::StrongNotRelPc);
        }
        if matches!(suite[6], Some(Some(_))) {
            predicates.push(Predicate::LatticeIdentityViolation);
        }
    }
    let entry = CensusEntry {
        code,
        poset: p.clone(),
        classification: c,
        second_arg_monotone,
        dm_preserves_secpc,
        congruences_convex,
        predicates: predicates.into_iter().map(|p| p.name().to_string()).collect(),
    };
    (entry, suite)
}

fn cache_path(dir: &Path, n: usize) -> PathBuf {
    dir.join(format!("census-n{n}-v{}.json", census_version()))
}

fn load_cached(path: &Path, n: usize) -> Option<Census> {
    let text = std::fs::read_to_string(path).ok()?;
    let census: Census = serde_json::from_str(&text).ok()?;
    (census.n == n && census.version == census_version()).then_some(census)
}

pub fn run_census(n: usize) -> Result<Census, SearchError> {
    run_census_with(n, &CensusOptions::from_env())
}

/// Classifies every poset of size `n` and evaluates the suite. With a cache
/// directory, a stored census for the same size and version is reused and a
/// fresh one is written back (write failures only cost the cache).
pub fn run_census_with(n: usize, opts: &CensusOptions) -> Result<Census, SearchError> {
    check_size(n, opts.cap)?;
    if let Some(dir) = &opts.cache_dir {
        if let Some(c) = load_cached(&cache_path(dir, n), n) {
            return Ok(c);
        }
    }
    let codes = enumerate_codes(n).swap_remove(n);
    let analyzed: Vec<(CensusEntry, Vec<SuiteOutcome>)> =
        codes.par_iter().map(|&code| analyze(&from_code(n, code), code)).collect();

    let mut suite: Vec<SuiteItem> = SUITE_IDS
        .iter()
        .map(|(id, description)| SuiteItem {
            id: id.to_string(),
            description: description.to_string(),
            applicable: 0,
            counterexamples: Vec::new(),
        })
        .collect();
    let mut entries = Vec::with_capacity(analyzed.len());
    for (entry, outcomes) in analyzed {
        for (item, outcome) in suite.iter_mut().zip(outcomes) {
            if let Some(result) = outcome {
                item.applicable += 1;
                if let Some(detail) = result {
                    item.counterexamples.push(SuiteCounterexample {
                        code: entry.code,
                        detail,
                    });
                }
            }
        }
        entries.push(entry);
    }
    let census = Census {
        n,
        version: census_version(),
        entries,
        suite,
    };
    if let Some(dir) = &opts.cache_dir {
        if std::fs::create_dir_all(dir).is_ok() {
            if let Ok(json) = serde_json::to_string(&census) {
                let _ = std::fs::write(cache_path(dir, n), json);
            }
        }
    }
    Ok(census)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::search::canonical_code;

    fn no_cache(cap: usize) -> CensusOptions {
        CensusOptions { cap, cache_dir: None }
    }

    #[test]
    fn two_element_census() {
        let c = run_census_with(2, &no_cache(7)).unwrap();
        assert_eq!(c.entries.len(), 2);
        let chain = c.entries.iter().find(|e| e.classification.is_lattice).unwrap();
        assert!(chain.classification.is_rel_pc && chain.classification.is_sec_pc);
        assert!(c.suite_passes());
    }

    #[test]
    fn fig5_in_four_element_census() {
        let c = run_census_with(4, &no_cache(7)).unwrap();
        assert_eq!(c.entries.len(), 16);
        let e = c.entry(canonical_code(&fixtures::fig5())).unwrap();
        assert!(e.classification.is_strongly_sec_pc);
        assert_eq!(e.dm_preserves_secpc, Some(false));
        assert!(e.satisfies(Predicate::SecPcLostUnderDm));
        assert!(c.suite_passes());
    }

    #[test]
    fn cache_round_trip() {
        let dir = std::env::temp_dir().join(format!("ordkit-census-test-{}", std::process::id()));
        let opts = CensusOptions {
            cap: 7,
            cache_dir: Some(dir.clone()),
        };
        let first = run_census_with(3, &opts).unwrap();
        assert!(cache_path(&dir, 3).exists());
        let second = run_census_with(3, &opts).unwrap();
        assert_eq!(first, second);
        let _ = std::fs::remove_dir_all(&dir);
    }
}
