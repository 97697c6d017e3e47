//! Dedekind-MacNeille completion by cuts `A = LU(A)`.

use std::collections::{BTreeSet, HashSet};

use serde::{Deserialize, Serialize};

use crate::poset::FinitePoset;
use crate::report::PropertyReport;
use crate::secpsc::{classify, sec_table, ClassificationReport, SecPcError};
use crate::subset::Subset;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DmResult {
    /// Cuts ordered by inclusion. Principal cuts carry the element's
    /// label, the others `L(x,y,...)` over the minimal upper bounds.
    pub lattice: FinitePoset,
    /// Cut members, indexed like `lattice`.
    pub cuts: Vec<Subset>,
    /// `x ↦ L(x)` as a lattice index.
    pub embed: Vec<usize>,
    /// For each cut, the element generating it if principal.
    pub principal: Vec<Option<usize>>,
}

/// Every cut is an intersection of principal down-sets, the empty
/// intersection being `P` itself. Closing `{P}` under intersection with each
/// `L(x)` therefore yields exactly the fixpoints of `LU`.
fn enumerate_cuts(p: &FinitePoset) -> Vec<Subset> {
    let mut seen: HashSet<Subset> = HashSet::new();
    let mut stack = vec![p.full_subset()];
    seen.insert(p.full_subset());
    while let Some(c) = stack.pop() {
        for x in 0..p.size() {
            let next = c.intersection(p.down_set(x));
            if !seen.contains(&next) {
                seen.insert(next.clone());
                stack.push(next);
            }
        }
    }
    sort_cuts(seen.into_iter().collect())
}

/// Size first, which is a linear extension of inclusion.
fn sort_cuts(mut cuts: Vec<Subset>) -> Vec<Subset> {
    cuts.sort_by(|a, b| a.count().cmp(&b.count()).then_with(|| a.to_vec().cmp(&b.to_vec())));
    cuts
}

/// All subsets `A` with `A = LU(A)`, by testing every subset. Exponential;
/// kept as an independent check of [`dm_completion`].
pub fn cuts_by_fixpoint_scan(p: &FinitePoset) -> Vec<Subset> {
    let n = p.size();
    assert!(n < 24, "fixpoint scan over 2^{n} subsets");
    let cuts = (0u32..1 << n)
        .map(|mask| p.subset((0..n).filter(|i| mask >> i & 1 == 1)))
        .filter(|a| p.lu_closure(a) == *a)
        .collect();
    sort_cuts(cuts)
}

pub fn cut_label(p: &FinitePoset, cut: &Subset) -> String {
    if let Some(g) = p.greatest(cut) {
        if p.down_set(g) == cut {
            return p.name(g).to_string();
        }
    }
    let gens = p.minimal_elements(&p.upper_cone(cut));
    let names: Vec<&str> = gens.iter().map(|&x| p.name(x)).collect();
    format!("L({})", names.join(","))
}

pub fn dm_completion(p: &FinitePoset) -> DmResult {
    let cuts = enumerate_cuts(p);
    let names = cuts.iter().map(|c| cut_label(p, c)).collect();
    let lattice = FinitePoset::from_relation(names, |i, j| cuts[i].is_subset(&cuts[j]))
        .expect("inclusion of distinct cuts is a partial order with distinct labels");
    let embed: Vec<usize> = (0..p.size())
        .map(|x| cuts.iter().position(|c| c == p.down_set(x)).expect("principal down-sets are cuts"))
        .collect();
    let mut principal = vec![None; cuts.len()];
    for (x, &c) in embed.iter().enumerate() {
        principal[c] = Some(x);
    }
    let result = DmResult {
        lattice,
        cuts,
        embed,
        principal,
    };
    debug_assert!(result.verify(p).all_pass(), "{}", result.verify(p).render(p.names()));
    result
}

impl DmResult {
    pub fn size(&self) -> usize {
        self.cuts.len()
    }

    pub fn is_principal(&self, cut: usize) -> bool {
        self.principal[cut].is_some()
    }

    /// Checks the structural guarantees against the base poset: complete
    /// lattice, order-embedding, sup- and inf-density, preservation of
    /// existing joins and meets.
    pub fn verify(&self, p: &FinitePoset) -> PropertyReport {
        let l = &self.lattice;
        let n = p.size();
        let mut r = PropertyReport::new();
        let fixpoint = self.cuts.iter().position(|c| p.lu_closure(c) != *c);
        r.record("cuts_closed", fixpoint.map(|c| vec![c]), "cut is not LU-closed");
        let bounded = l.top().is_some() && l.bottom().is_some();
        r.record(
            "complete_lattice",
            (!(l.is_lattice() && bounded)).then(Vec::new),
            "cut order is not a bounded lattice",
        );

        let mut embedding = None;
        'emb: for x in 0..n {
            for y in 0..n {
                if p.leq(x, y) != l.leq(self.embed[x], self.embed[y]) {
                    embedding = Some(vec![x, y]);
                    break 'emb;
                }
            }
        }
        r.record("order_embedding", embedding, "x <= y disagrees with L(x) ⊆ L(y)");

        let mut density = None;
        for (c, members) in self.cuts.iter().enumerate() {
            let below = l.subset(members.iter().map(|x| self.embed[x]));
            let above = l.subset(p.upper_cone(members).iter().map(|x| self.embed[x]));
            if l.join_of(&below) != Some(c) || l.meet_of(&above) != Some(c) {
                density = Some(vec![c]);
                break;
            }
        }
        r.record("density", density, "cut is not the join and meet of embedded elements");

        let mut preserved = None;
        'pres: for a in 0..n {
            for b in 0..n {
                let (ea, eb) = (self.embed[a], self.embed[b]);
                let join_ok = p.join(a, b).is_none_or(|j| l.join(ea, eb) == Some(self.embed[j]));
                let meet_ok = p.meet(a, b).is_none_or(|m| l.meet(ea, eb) == Some(self.embed[m]));
                if !join_ok || !meet_ok {
                    preserved = Some(vec![a, b]);
                    break 'pres;
                }
            }
        }
        r.record("joins_meets_preserved", preserved, "existing join or meet not preserved");
        r
    }

    pub fn sidecar(&self, p: &FinitePoset) -> DmSidecar {
        let cuts = self
            .cuts
            .iter()
            .enumerate()
            .map(|(i, c)| CutEntry {
                label: self.lattice.name(i).to_string(),
                members: c.iter().map(|x| p.name(x).to_string()).collect(),
                principal: self.is_principal(i),
            })
            .collect();
        DmSidecar { cuts }
    }
}

/// JSON companion of a completion written in the poset text format.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DmSidecar {
    pub cuts: Vec<CutEntry>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CutEntry {
    pub label: String,
    pub members: Vec<String>,
    pub principal: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DmSecPcReport {
    pub completion: DmResult,
    pub classification: ClassificationReport,
    pub preserved: bool,
    /// First pair `(x, y)` of cut indices where `x*y` is undefined.
    pub witness: Option<(usize, usize)>,
}

pub fn dm_preserves_secpc(p: &FinitePoset) -> Result<DmSecPcReport, SecPcError> {
    if !classify(p).is_sec_pc {
        return Err(SecPcError::Precondition("poset is not sectionally pseudocomplemented".into()));
    }
    let completion = dm_completion(p);
    let t = sec_table(&completion.lattice);
    let classification = classify(&completion.lattice);
    let witness = t.undefined_pairs().into_iter().next();
    Ok(DmSecPcReport {
        preserved: classification.is_sec_pc,
        completion,
        classification,
        witness,
    })
}

/// Labels of the non-principal cuts, sorted.
pub fn new_cut_labels(dm: &DmResult) -> BTreeSet<String> {
    (0..dm.size())
        .filter(|&c| !dm.is_principal(c))
        .map(|c| dm.lattice.name(c).to_string())
        .collect()
}
