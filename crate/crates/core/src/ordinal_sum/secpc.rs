use super::{build_sum, verify_sum_completion, OrdinalSum, SumError, SumFamily};
use crate::report::PropertyReport;
use crate::secpsc::{classify, sec_table, Groupoid, SectionTable};

/// The summand-wise sectional pseudocomplement of a sum:
/// `1` if `a <= b`, `a *_i b` if both have largest index `i`, and `b` if
/// the largest index of `a` exceeds that of `b`.
#[derive(Debug, Clone)]
pub struct SumSecPc {
    sum: OrdinalSum,
    tables: Vec<SectionTable>,
    one: usize,
}

impl SumSecPc {
    /// Requires `a *_i b` to exist in each summand whenever `a` is not below
    /// `b` (the formula never consults the summand otherwise, so a topless
    /// summand may lack `a *_i b` for `a <= b`), and, for every summand
    /// without a least element, a predecessor (if any) without a greatest
    /// element.
    pub fn new(f: &SumFamily) -> Result<Self, SumError> {
        let mut tables = Vec::with_capacity(f.len());
        for (label, p) in f.index().iter().zip(f.summands()) {
            let t = sec_table(p);
            if t.undefined_pairs().into_iter().any(|(a, b)| !p.leq(a, b)) {
                return Err(SumError::SummandNotSecPc(label.clone()));
            }
            tables.push(t);
        }
        for j in 1..f.len() {
            if f.summand(j).bottom().is_none() && f.summand(j - 1).top().is_some() {
                return Err(SumError::HypothesisViolated {
                    j: f.index()[j].clone(),
                    s: f.index()[j - 1].clone(),
                });
            }
        }
        let sum = build_sum(f);
        let one = sum.poset.top().expect("sums have a greatest element");
        Ok(SumSecPc { sum, tables, one })
    }

    pub fn sum(&self) -> &OrdinalSum {
        &self.sum
    }

    pub fn apply(&self, a: usize, b: usize) -> usize {
        if self.sum.poset.leq(a, b) {
            return self.one;
        }
        let (i, j) = (self.sum.summand_of[a], self.sum.summand_of[b]);
        if i == j {
            let local = |x| self.sum.local(i, x).expect("element of its summand");
            let c = self.tables[i].get(local(a), local(b)).expect("checked on construction");
            self.sum.members[i][c]
        } else {
            debug_assert!(i > j, "a in an earlier summand lies below b");
            b
        }
    }

    pub fn table(&self) -> Groupoid {
        let n = self.sum.poset.size();
        let rows: Vec<Vec<usize>> = (0..n).map(|a| (0..n).map(|b| self.apply(a, b)).collect()).collect();
        Groupoid::from_rows(&rows).expect("square table")
    }
}

/// `a * b` in the sum of `f`, by element labels.
pub fn sum_sec_pc(f: &SumFamily, a: &str, b: &str) -> Result<String, SumError> {
    let s = SumSecPc::new(f)?;
    let p = &s.sum.poset;
    let id = |x: &str| p.index_of(x).ok_or_else(|| SumError::UnknownElement(x.to_string()));
    Ok(p.name(s.apply(id(a)?, id(b)?)).to_string())
}

/// Checks, for a family whose summands have sectionally pseudocomplemented
/// completions:
///
/// * `sum_formula`: the summand-wise formula equals the direct operation on
///   the sum (skipped when the summands or the hypothesis do not qualify)
/// * `dm_secpc`: the completion of the sum is sectionally pseudocomplemented
/// * `dm_formula`: its table is the formula applied to the yoked family,
///   transported along the canonical isomorphism
pub fn verify_sum_secpc(f: &SumFamily) -> Result<PropertyReport, SumError> {
    let completion = verify_sum_completion(f)?;
    let yoked = completion.yoked.to_sum_family()?;
    let over_yoked = SumSecPc::new(&yoked)?;

    let mut r = PropertyReport::new();
    let p = &completion.sum.poset;
    match SumSecPc::new(f) {
        Ok(formula) => {
            let t = sec_table(p);
            let n = p.size();
            let bad = (0..n)
                .flat_map(|a| (0..n).map(move |b| (a, b)))
                .find(|&(a, b)| t.get(a, b) != Some(formula.apply(a, b)));
            r.record("sum_formula", bad.map(|(a, b)| vec![a, b]), "formula differs from the sum's operation");
        }
        Err(e) => r.skip("sum_formula", e.to_string()),
    }

    let dm = &completion.completion;
    r.record(
        "dm_secpc",
        (!classify(&dm.lattice).is_sec_pc).then(Vec::new),
        "completion of the sum is not sectionally pseudocomplemented",
    );

    match &completion.phi {
        Some(phi) => {
            let t = sec_table(&dm.lattice);
            let n = phi.len();
            let bad = (0..n)
                .flat_map(|a| (0..n).map(move |b| (a, b)))
                .find(|&(a, b)| t.get(phi[a], phi[b]) != Some(phi[over_yoked.apply(a, b)]));
            r.record(
                "dm_formula",
                bad.map(|(a, b)| vec![phi[a], phi[b]]),
                "completion table differs from the yoked formula",
            );
        }
        None => r.skip("dm_formula", "no canonical isomorphism"),
    }
    Ok(r)
}
