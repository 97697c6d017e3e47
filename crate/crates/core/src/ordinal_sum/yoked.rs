use rayon::prelude::*;

use super::{build_sum, Glue, OrdinalSum, SumError, SumFamily};
use crate::completion::{dm_completion, DmResult};
use crate::poset::{is_isomorphic, FinitePoset};
use crate::report::{Outcome, PropertyReport};

/// Where an element of a completed summand comes from.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Provenance {
    /// Element `local` of summand `summand`; glued elements refer to the
    /// lower of their two summands.
    Element { summand: usize, local: usize },
    /// A non-principal cut of the completion of `summand`, by local ids.
    Cut { summand: usize, members: Vec<usize> },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TaggedPoset {
    pub poset: FinitePoset,
    pub provenance: Vec<Provenance>,
}

impl TaggedPoset {
    fn position(&self, p: &Provenance) -> Option<usize> {
        self.provenance.iter().position(|q| q == p)
    }

    fn replace(&mut self, x: usize, donor: &TaggedPoset, y: usize) {
        let mut names = self.poset.names().to_vec();
        names[x] = donor.poset.name(y).to_string();
        self.poset = self.poset.with_names(names).expect("replacement label is fresh");
        self.provenance[x] = donor.provenance[y].clone();
    }

    fn top_provenance(&self) -> Option<&Provenance> {
        self.poset.top().map(|t| &self.provenance[t])
    }

    fn bottom_provenance(&self) -> Option<&Provenance> {
        self.poset.bottom().map(|b| &self.provenance[b])
    }

    fn common(&self, other: &TaggedPoset) -> Vec<Provenance> {
        self.provenance.iter().filter(|p| other.position(p).is_some()).cloned().collect()
    }
}

fn element_provenance(f: &SumFamily, k: usize, x: usize) -> Provenance {
    let name = f.summand(k).name(x);
    if k > 0 && f.shared(k - 1) == Some(name) {
        let lower = f.summand(k - 1);
        return Provenance::Element {
            summand: k - 1,
            local: lower.index_of(name).expect("shared element in lower summand"),
        };
    }
    Provenance::Element { summand: k, local: x }
}

fn related(f: &SumFamily, k: usize) -> TaggedPoset {
    let p = f.summand(k);
    let dm = dm_completion(p);
    let mut names = Vec::with_capacity(dm.size());
    let mut provenance = Vec::with_capacity(dm.size());
    for c in 0..dm.size() {
        match dm.principal[c] {
            Some(x) => {
                names.push(p.name(x).to_string());
                provenance.push(element_provenance(f, k, x));
            }
            None => {
                names.push(format!("({},{})", dm.lattice.name(c), f.index()[k]));
                provenance.push(Provenance::Cut {
                    summand: k,
                    members: dm.cuts[c].to_vec(),
                });
            }
        }
    }
    let poset = dm.lattice.with_names(names).expect("tagged cut labels are distinct from summand labels");
    TaggedPoset { poset, provenance }
}

/// `R_k`: the completion of each summand, with principal cuts named by
/// their generating element and the others tagged `(L(...),k)`.
pub fn dm_related_family(f: &SumFamily) -> Vec<TaggedPoset> {
    (0..f.len()).into_par_iter().map(|k| related(f, k)).collect()
}

/// Which boundary adjustments to apply; disabling one is only useful for
/// checking that the yoked conditions catch its absence.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct YokedSteps {
    pub step1: bool,
    pub step2: bool,
}

impl YokedSteps {
    pub const ALL: YokedSteps = YokedSteps { step1: true, step2: true };
}

impl Default for YokedSteps {
    fn default() -> Self {
        Self::ALL
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct YokedFamily {
    pub index: Vec<String>,
    pub summands: Vec<TaggedPoset>,
}

impl YokedFamily {
    /// The family as summands of a generalized ordinal sum, glued where
    /// neighbours share an element.
    pub fn to_sum_family(&self) -> Result<SumFamily, SumError> {
        let mut glue = Vec::new();
        for k in 0..self.summands.len().saturating_sub(1) {
            let (lo, hi) = (&self.summands[k], &self.summands[k + 1]);
            if let Some(shared) = lo.common(hi).first() {
                let name = lo.poset.name(lo.position(shared).unwrap()).to_string();
                glue.push(Glue {
                    lower: self.index[k].clone(),
                    lower_elem: name.clone(),
                    upper: self.index[k + 1].clone(),
                    upper_elem: name,
                });
            }
        }
        let posets = self.summands.iter().map(|s| s.poset.clone()).collect();
        SumFamily::build(self.index.clone(), posets, glue)
    }
}

pub fn dm_yoked_family(f: &SumFamily) -> Result<YokedFamily, SumError> {
    dm_yoked_family_with(f, YokedSteps::ALL)
}

/// Step 1 moves the bottom of the next completion onto the top of a
/// topless summand; step 2 moves the top of the previous (adjusted)
/// completion onto the bottom of a bottomless summand. Both apply only
/// between unglued neighbours.
pub fn dm_yoked_family_with(f: &SumFamily, steps: YokedSteps) -> Result<YokedFamily, SumError> {
    let r = dm_related_family(f);
    let last = f.len() - 1;
    let mut s = r.clone();
    if steps.step1 {
        for i in 0..last {
            if f.shared(i).is_none() && f.summand(i).top().is_none() {
                let top = s[i].poset.top().expect("completion has a top");
                let bottom = r[i + 1].poset.bottom().expect("completion has a bottom");
                s[i].replace(top, &r[i + 1], bottom);
            }
        }
    }
    let mut q = s.clone();
    if steps.step2 {
        for j in 1..=last {
            if f.shared(j - 1).is_none() && f.summand(j).bottom().is_none() {
                let bottom = q[j].poset.bottom().expect("completion has a bottom");
                let top = s[j - 1].poset.top().expect("completion has a top");
                q[j].replace(bottom, &s[j - 1], top);
            }
        }
    }
    let family = YokedFamily {
        index: f.index().to_vec(),
        summands: q,
    };
    let report = yoked_conditions(f, &family);
    if let Some(check) = report.failures().next() {
        let witness = match &check.outcome {
            Outcome::Fail { witness, .. } => witness.iter().map(|&k| f.index()[k].clone()).collect(),
            _ => Vec::new(),
        };
        return Err(SumError::YokedConditionFailed {
            condition: check.name.clone(),
            witness,
        });
    }
    Ok(family)
}

/// `x ↦ LU({p in P : p <= x})`, from `q` (containing `p` by label) to
/// cut indices of `dm`; `None` if some element of `p` is missing from `q`
/// or the map is not an order isomorphism.
fn canonical_map(p: &FinitePoset, q: &FinitePoset, dm: &DmResult) -> Option<Vec<usize>> {
    let in_q: Vec<usize> = p.names().iter().map(|x| q.index_of(x)).collect::<Option<_>>()?;
    let phi: Vec<usize> = (0..q.size())
        .map(|a| {
            let below = p.subset((0..p.size()).filter(|&x| q.leq(in_q[x], a)));
            let cut = p.lu_closure(&below);
            dm.cuts.iter().position(|c| *c == cut).expect("LU-closed sets are cuts")
        })
        .collect();
    if q.size() != dm.size() {
        return None;
    }
    for a in 0..q.size() {
        for b in 0..q.size() {
            if q.leq(a, b) != dm.lattice.leq(phi[a], phi[b]) {
                return None;
            }
        }
    }
    Some(phi)
}

/// Conditions (y1)-(y8); witnesses are summand positions.
pub fn yoked_conditions(f: &SumFamily, y: &YokedFamily) -> PropertyReport {
    let n = f.len();
    let q = &y.summands;
    let mut r = PropertyReport::new();

    let y1 = (0..n).find(|&i| {
        let p = f.summand(i);
        let sub = p.names().iter().all(|x| q[i].poset.index_of(x).is_some())
            && (0..p.size()).all(|a| {
                (0..p.size()).all(|b| {
                    let (qa, qb) = (q[i].poset.index_of(p.name(a)).unwrap(), q[i].poset.index_of(p.name(b)).unwrap());
                    p.leq(a, b) == q[i].poset.leq(qa, qb)
                })
            });
        !sub || canonical_map(p, &q[i].poset, &dm_completion(p)).is_none()
    });
    r.record("y1", y1.map(|i| vec![i]), "not a completion containing the summand");

    let mut y2 = None;
    let mut y3 = None;
    let mut y8 = None;
    for i in 0..n {
        for j in i + 1..n {
            let common = q[i].common(&q[j]);
            if j > i + 1 && !common.is_empty() {
                y2.get_or_insert(vec![i, j]);
            }
            if common.len() > 1 {
                y3.get_or_insert(vec![i, j]);
            }
            if let [a] = common.as_slice() {
                if q[i].top_provenance() != Some(a) || q[j].bottom_provenance() != Some(a) {
                    y8.get_or_insert(vec![i, j]);
                }
            }
        }
    }
    r.record("y2", y2, "non-adjacent completions intersect");
    r.record("y3", y3, "completions share more than one element");

    let (mut y4, mut y5, mut y6, mut y7) = (None, None, None, None);
    for i in 0..n.saturating_sub(1) {
        let j = i + 1;
        if f.shared(i).is_some() {
            continue;
        }
        let w = Some(vec![i, j]);
        match (f.summand(i).top(), f.summand(j).bottom()) {
            (Some(_), Some(_)) => {
                if !q[i].common(&q[j]).is_empty() {
                    y4 = y4.or(w);
                }
            }
            (None, Some(z)) => {
                if q[i].top_provenance() != Some(&element_provenance(f, j, z)) {
                    y5 = y5.or(w);
                }
            }
            (Some(t), None) => {
                if q[j].bottom_provenance() != Some(&element_provenance(f, i, t)) {
                    y6 = y6.or(w);
                }
            }
            (None, None) => {
                if q[i].top_provenance().is_none() || q[i].top_provenance() != q[j].bottom_provenance() {
                    y7 = y7.or(w);
                }
            }
        }
    }
    r.record("y4", y4, "bounded neighbours have intersecting completions");
    r.record("y5", y5, "next bottom is not the top of a topless summand's completion");
    r.record("y6", y6, "previous top is not the bottom of a bottomless summand's completion");
    r.record("y7", y7, "completions of topless and bottomless neighbours do not meet");
    r.record("y8", y8, "shared element is not top below and bottom above");
    r
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SumCompletion {
    pub sum: OrdinalSum,
    pub yoked: YokedFamily,
    pub yoked_sum: OrdinalSum,
    pub completion: DmResult,
    /// Cut of the completion for each element of the yoked sum, when the
    /// canonical map is an isomorphism.
    pub phi: Option<Vec<usize>>,
    pub report: PropertyReport,
}

impl SumCompletion {
    /// `(yoked sum label, completion label)` along the canonical map.
    pub fn label_pairs(&self) -> Vec<(String, String)> {
        let Some(phi) = &self.phi else { return Vec::new() };
        phi.iter()
            .enumerate()
            .map(|(a, &c)| {
                (
                    self.yoked_sum.poset.name(a).to_string(),
                    self.completion.lattice.name(c).to_string(),
                )
            })
            .collect()
    }
}

/// The completion of the sum against the sum of the yoked family: an
/// abstract isomorphism, the canonical map being one, and that map fixing
/// every element of the sum by label.
pub fn verify_sum_completion(f: &SumFamily) -> Result<SumCompletion, SumError> {
    let sum = build_sum(f);
    let yoked = dm_yoked_family(f)?;
    let yoked_sum = build_sum(&yoked.to_sum_family()?);
    let completion = dm_completion(&sum.poset);
    let p = &sum.poset;
    let q = &yoked_sum.poset;

    let mut report = PropertyReport::new();
    report.record(
        "isomorphic",
        is_isomorphic(&completion.lattice, q).is_none().then(Vec::new),
        "completion of the sum is not isomorphic to the yoked sum",
    );
    let phi = canonical_map(p, q, &completion);
    report.record("canonical_map", phi.is_none().then(Vec::new), "canonical map is not an isomorphism");
    match &phi {
        Some(phi) => {
            let moved = (0..p.size()).find(|&x| {
                let qx = q.index_of(p.name(x)).unwrap();
                let c = completion.embed[x];
                phi[qx] != c || completion.lattice.name(c) != p.name(x)
            });
            report.record("labels", moved.map(|x| vec![x]), "element of the sum not fixed by the canonical map");
        }
        None => report.skip("labels", "no canonical isomorphism"),
    }
    Ok(SumCompletion {
        sum,
        yoked,
        yoked_sum,
        completion,
        phi,
        report,
    })
}
