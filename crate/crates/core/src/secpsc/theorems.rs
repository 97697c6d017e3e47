//! Instance-level checks of the algebraic properties of `*`.

use serde::Serialize;
use thiserror::Error;

use super::{sec_pc, sec_table, Groupoid, SecPcError, SectionTable};
use crate::congruence::all_congruences;
use crate::poset::FinitePoset;
use crate::report::PropertyReport;
use crate::subset::Subset;

/// Default bound on the poset size for the exponential
/// L-semidistributivity scan.
pub const DEFAULT_SEMIDISTRIBUTIVITY_CAP: usize = 12;

/// Checks the eight basic properties of `*` in a sectionally
/// pseudocomplemented poset with top, reporting the first counterexample of
/// each. Item (vi) is checked for comparable pairs only, which is exactly its
/// hypothesis.
pub fn verify_theorem2(t: &SectionTable) -> Result<PropertyReport, SecPcError> {
    let (g, one) = t.require_total_with_top()?;
    let p = t.base();
    let n = p.size();
    let s = |a, b| g.apply(a, b);
    let pairs = || (0..n).flat_map(move |x| (0..n).map(move |y| (x, y)));
    let mut r = PropertyReport::new();

    r.record(
        "i",
        pairs().find(|&(x, y)| p.leq(x, y) != (s(x, y) == one)).map(|(x, y)| vec![x, y]),
        "x <= y iff x*y = 1",
    );
    r.record(
        "ii",
        (0..n).find(|&x| s(x, x) != one || s(x, one) != one).map(|x| vec![x]),
        "x*x = x*1 = 1",
    );
    r.record("iii", (0..n).find(|&x| s(one, x) != x).map(|x| vec![x]), "1*x = x");
    r.record(
        "iv",
        pairs().find(|&(x, y)| s(x, s(y, x)) != one).map(|(x, y)| vec![x, y]),
        "x*(y*x) = 1",
    );
    r.record(
        "v",
        pairs().find(|&(x, y)| s(x, s(s(y, x), x)) != one).map(|(x, y)| vec![x, y]),
        "x*((y*x)*x) = 1",
    );
    r.record(
        "vi",
        pairs()
            .filter(|&(x, y)| s(x, y) == one || s(y, x) == one)
            .find(|&(x, y)| s(x, s(s(x, y), y)) != one)
            .map(|(x, y)| vec![x, y]),
        "x*y = 1 or y*x = 1 implies x*((x*y)*y) = 1",
    );
    let seven = pairs()
        .filter(|&(x, y)| s(x, y) == one)
        .flat_map(|(x, y)| (0..n).map(move |z| (x, y, z)))
        .find(|&(x, y, z)| s(s(y, z), s(x, z)) != one);
    r.record(
        "vii",
        seven.map(|(x, y, z)| vec![x, y, z]),
        "x*y = 1 implies (y*z)*(x*z) = 1",
    );
    r.record(
        "viii",
        pairs()
            .find(|&(x, y)| {
                let lu = p.lu_closure(&p.subset([x, y]));
                &lu.intersection(p.down_set(s(x, y))) != p.down_set(y)
            })
            .map(|(x, y)| vec![x, y]),
        "L(U(x,y), x*y) = L(y)",
    );
    Ok(r)
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("axiom ({axiom}) fails at {witness:?}")]
pub struct AxiomViolation {
    /// 1 through 5 for the reflexivity, antisymmetry, transitivity,
    /// defining-equation and maximality axioms.
    pub axiom: u8,
    pub witness: Vec<usize>,
}

/// Rebuilds the poset from a total table with designated top by
/// `x <= y iff x*y = 1`, after checking the five axioms that characterize
/// sectional pseudocomplementation. Cones are read off the table:
/// `L(B) = {x : x*y = 1 for all y in B}` and dually for `U`.
pub fn recover_from_groupoid(names: Vec<String>, g: &Groupoid, one: usize) -> Result<FinitePoset, AxiomViolation> {
    let n = g.size();
    assert_eq!(names.len(), n, "one name per element");
    let s = |a, b| g.apply(a, b);
    let violation = |axiom, witness| Err(AxiomViolation { axiom, witness });

    if let Some(x) = (0..n).find(|&x| s(x, x) != one) {
        return violation(1, vec![x]);
    }
    for x in 0..n {
        for y in 0..n {
            if x != y && s(x, y) == one && s(y, x) == one {
                return violation(2, vec![x, y]);
            }
        }
    }
    for x in 0..n {
        for y in 0..n {
            if s(x, y) != one {
                continue;
            }
            if let Some(z) = (0..n).find(|&z| s(y, z) == one && s(x, z) != one) {
                return violation(3, vec![x, y, z]);
            }
        }
    }

    let below: Vec<Subset> = (0..n)
        .map(|y| Subset::from_elements(n, (0..n).filter(|&x| s(x, y) == one)))
        .collect();
    let above: Vec<Subset> = (0..n)
        .map(|y| Subset::from_elements(n, (0..n).filter(|&x| s(y, x) == one)))
        .collect();
    let lower = |b: &Subset| {
        let mut acc = Subset::full(n);
        for y in b.iter() {
            acc.intersect_with(&below[y]);
        }
        acc
    };
    for x in 0..n {
        for y in 0..n {
            let u = above[x].intersection(&above[y]);
            let lu = lower(&u);
            if lu.intersection(&below[s(x, y)]) != below[y] {
                return violation(4, vec![x, y]);
            }
            if let Some(z) = (0..n).find(|&z| lu.intersection(&below[z]) == below[y] && s(z, s(x, y)) != one) {
                return violation(5, vec![x, y, z]);
            }
        }
    }

    let p = FinitePoset::from_relation(names, |x, y| s(x, y) == one).expect("axioms 1-3 give a partial order");
    debug_assert!((0..n).all(|a| (0..n).all(|b| sec_pc(&p, a, b) == Some(s(a, b)))));
    Ok(p)
}

fn require_secpc_lattice(p: &FinitePoset) -> Result<Groupoid, SecPcError> {
    if !p.is_lattice() {
        return Err(SecPcError::Precondition("poset is not a lattice".into()));
    }
    sec_table(p)
        .groupoid()
        .ok_or_else(|| SecPcError::Precondition("lattice is not sectionally pseudocomplemented".into()))
}

/// Evaluates the two lattice identities for an arbitrary total operation on
/// lattice `p`:
///
/// * `i`:  `z ∨ y <= x * ((x ∨ y) ∧ (z ∨ y))`
/// * `ii`: `(x ∨ y) ∧ (x * y) = y`
///
/// and, when both hold, checks `converse`: the operation is then the
/// sectional pseudocomplement everywhere.
pub fn lattice_identity_report(p: &FinitePoset, g: &Groupoid) -> PropertyReport {
    let n = p.size();
    let join = |a, b| p.join(a, b).expect("lattice join");
    let meet = |a, b| p.meet(a, b).expect("lattice meet");
    let s = |a, b| g.apply(a, b);
    let mut r = PropertyReport::new();

    let mut first_i = None;
    'outer: for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                if !p.leq(join(z, y), s(x, meet(join(x, y), join(z, y)))) {
                    first_i = Some(vec![x, y, z]);
                    break 'outer;
                }
            }
        }
    }
    r.record("i", first_i.clone(), "z∨y <= x*((x∨y)∧(z∨y))");

    let first_ii = (0..n)
        .flat_map(|x| (0..n).map(move |y| (x, y)))
        .find(|&(x, y)| meet(join(x, y), s(x, y)) != y)
        .map(|(x, y)| vec![x, y]);
    r.record("ii", first_ii.clone(), "(x∨y)∧(x*y) = y");

    if first_i.is_none() && first_ii.is_none() {
        let mismatch = (0..n)
            .flat_map(|a| (0..n).map(move |b| (a, b)))
            .find(|&(a, b)| sec_pc(p, a, b) != Some(s(a, b)))
            .map(|(a, b)| vec![a, b]);
        r.record("converse", mismatch, "identities hold but table differs from sec_pc");
    } else {
        r.skip("converse", "identities do not both hold");
    }
    r
}

/// Both lattice identities over all triples of a sectionally
/// pseudocomplemented lattice, plus the converse direction.
pub fn verify_lattice_identities(p: &FinitePoset) -> Result<PropertyReport, SecPcError> {
    let g = require_secpc_lattice(p)?;
    Ok(lattice_identity_report(p, &g))
}

/// Mal'cev term `p(x,y,z) = ((x*y)*z) ∧ ((z*y)*x)` and the weak regularity
/// terms `x*y`, `y*x`, evaluated on one sectionally pseudocomplemented lattice
/// with top. Also checks on this instance that congruences of `(P,*)` are
/// determined by their 1-class.
pub fn verify_maltsev_weakreg(p: &FinitePoset) -> Result<PropertyReport, SecPcError> {
    let g = require_secpc_lattice(p)?;
    let one = p
        .top()
        .ok_or_else(|| SecPcError::Precondition("lattice has no top".into()))?;
    let n = p.size();
    let s = |a, b| g.apply(a, b);
    let mal = |x, y, z| p.meet(s(s(x, y), z), s(s(z, y), x)).expect("lattice meet");
    let pairs = || (0..n).flat_map(move |x| (0..n).map(move |y| (x, y)));
    let mut r = PropertyReport::new();

    r.record(
        "maltsev_p_xxy",
        pairs().find(|&(x, y)| mal(x, x, y) != y).map(|(x, y)| vec![x, y]),
        "p(x,x,y) = y",
    );
    r.record(
        "maltsev_p_yxx",
        pairs().find(|&(x, y)| mal(y, x, x) != y).map(|(x, y)| vec![x, y]),
        "p(y,x,x) = y",
    );
    r.record(
        "weakreg_terms",
        pairs()
            .find(|&(x, y)| (s(x, y) == one && s(y, x) == one) != (x == y))
            .map(|(x, y)| vec![x, y]),
        "x*y = y*x = 1 iff x = y",
    );

    let cons = all_congruences(&g, crate::congruence::DEFAULT_CONGRUENCE_CAP)
        .map_err(|e| SecPcError::Precondition(e.to_string()))?;
    let mut clash = None;
    'outer: for (i, a) in cons.iter().enumerate() {
        for b in &cons[i + 1..] {
            if a.class_members(one) == b.class_members(one) {
                clash = Some(a.class_members(one));
                break 'outer;
            }
        }
    }
    r.record(
        "weakreg_instance",
        clash,
        "two distinct congruences share the 1-class",
    );
    Ok(r)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SemidistributivityCheck {
    pub holds: bool,
    /// `(M, a, b)` with `L(x,a) = L(b)` for all `x` in `M` but
    /// `L(U(M), a) != L(b)`.
    pub witness: Option<(Vec<usize>, usize, usize)>,
    pub subsets_checked: u64,
}

pub fn is_completely_l_semidistributive(p: &FinitePoset) -> Result<SemidistributivityCheck, SecPcError> {
    is_completely_l_semidistributive_with_cap(p, DEFAULT_SEMIDISTRIBUTIVITY_CAP)
}

/// Exhaustive check over every nonempty `M`. For fixed `(a, b)` the
/// hypothesis holds exactly for the nonempty subsets of
/// `X = {x : L(x,a) = L(b)}`, so only those are visited.
pub fn is_completely_l_semidistributive_with_cap(
    p: &FinitePoset,
    cap: usize,
) -> Result<SemidistributivityCheck, SecPcError> {
    let n = p.size();
    if n > cap {
        return Err(SecPcError::SizeCapExceeded { size: n, cap });
    }
    let mut checked = 0u64;
    for a in 0..n {
        for b in 0..n {
            let lb = p.down_set(b);
            let xs: Vec<usize> = (0..n)
                .filter(|&x| &p.down_set(x).intersection(p.down_set(a)) == lb)
                .collect();
            for mask in 1u64..(1u64 << xs.len()) {
                checked += 1;
                let m = p.subset((0..xs.len()).filter(|i| mask >> i & 1 == 1).map(|i| xs[i]));
                let lhs = p.lu_closure(&m).intersection(p.down_set(a));
                if &lhs != lb {
                    return Ok(SemidistributivityCheck {
                        holds: false,
                        witness: Some((m.to_vec(), a, b)),
                        subsets_checked: checked,
                    });
                }
            }
        }
    }
    Ok(SemidistributivityCheck {
        holds: true,
        witness: None,
        subsets_checked: checked,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::report::Outcome;

    #[test]
    fn basic_properties_on_figures() {
        for p in [fixtures::fig1(), fixtures::fig2(), fixtures::fig3(), fixtures::fig4(), fixtures::fig5()] {
            let r = verify_theorem2(&sec_table(&p)).unwrap();
            assert!(r.all_pass(), "{p:?}: {r:?}");
            assert_eq!(r.checks.len(), 8);
        }
    }

    #[test]
    fn basic_properties_preconditions() {
        let t = sec_table(&fixtures::fig6());
        assert!(matches!(verify_theorem2(&t), Err(SecPcError::Precondition(_))));
        let t = sec_table(&FinitePoset::antichain(&["a", "b"]));
        assert!(matches!(verify_theorem2(&t), Err(SecPcError::Precondition(_))));
    }

    #[test]
    fn recover_fig2() {
        let p = fixtures::fig2();
        let g = sec_table(&p).groupoid().unwrap();
        let q = recover_from_groupoid(p.names().to_vec(), &g, p.top().unwrap()).unwrap();
        assert!(q.same_order(&p));
    }

    #[test]
    fn recover_rejects_bad_diagonal() {
        let p = fixtures::fig2();
        let mut rows = sec_table(&p).groupoid().unwrap().rows();
        rows[1][1] = 0;
        let g = Groupoid::from_rows(&rows).unwrap();
        let err = recover_from_groupoid(p.names().to_vec(), &g, p.top().unwrap()).unwrap_err();
        assert_eq!(err.axiom, 1);
        assert_eq!(err.witness, vec![1]);
    }

    #[test]
    fn recover_rejects_non_greatest_value() {
        // In N5, a*0 = b; 0 also solves the defining equation but is not
        // the greatest solution.
        let p = fixtures::fig2();
        let ids = p.ids(&["a", "0", "b"]);
        let mut rows = sec_table(&p).groupoid().unwrap().rows();
        rows[ids[0]][ids[1]] = ids[1];
        let g = Groupoid::from_rows(&rows).unwrap();
        let err = recover_from_groupoid(p.names().to_vec(), &g, p.top().unwrap()).unwrap_err();
        assert_eq!(err.axiom, 5);
        assert_eq!(err.witness, vec![ids[0], ids[1], ids[2]]);
    }

    #[test]
    fn lattice_identities() {
        for p in [fixtures::fig2(), fixtures::fig4(), fixtures::fig7()] {
            let r = verify_lattice_identities(&p).unwrap();
            assert!(r.all_pass(), "{r:?}");
            assert!(r.passed("converse"));
        }
        assert!(verify_lattice_identities(&fixtures::fig3()).is_err());
        assert!(verify_lattice_identities(&fixtures::fig6()).is_err());
    }

    #[test]
    fn mutated_table_breaks_identities() {
        let p = fixtures::fig2();
        let mut rows = sec_table(&p).groupoid().unwrap().rows();
        let ids = p.ids(&["a", "0", "c"]);
        // a*0 = b is the greatest solution; c is not a solution at all.
        rows[ids[0]][ids[1]] = ids[2];
        let g = Groupoid::from_rows(&rows).unwrap();
        let r = lattice_identity_report(&p, &g);
        assert!(!r.all_pass());
        assert!(matches!(r.get("converse"), Some(Outcome::Skipped { .. })));
    }

    #[test]
    fn maltsev_and_weak_regularity() {
        let f2 = fixtures::fig2();
        let g = sec_table(&f2).groupoid().unwrap();
        let [a, b] = [0, 1].map(|i| f2.ids(&["a", "b"])[i]);
        let s = |x, y| g.apply(x, y);
        let p_aab = f2.meet(s(s(a, a), b), s(s(b, a), a)).unwrap();
        assert_eq!(p_aab, b);
        for x in 0..f2.size() {
            assert_eq!(f2.meet(s(s(x, x), x), s(s(x, x), x)).unwrap(), x);
        }
        for p in [fixtures::fig2(), fixtures::fig4()] {
            let r = verify_maltsev_weakreg(&p).unwrap();
            assert!(r.all_pass(), "{r:?}");
            assert!(r.passed("weakreg_instance"));
        }
    }

    #[test]
    fn semidistributivity_on_figures() {
        assert!(is_completely_l_semidistributive(&fixtures::fig3()).unwrap().holds);
        assert!(is_completely_l_semidistributive(&fixtures::fig1()).unwrap().holds);
        let big = FinitePoset::antichain(&(0..13).map(|i| format!("x{i}")).collect::<Vec<_>>());
        assert!(matches!(
            is_completely_l_semidistributive(&big),
            Err(SecPcError::SizeCapExceeded { size: 13, cap: 12 })
        ));
        assert!(is_completely_l_semidistributive_with_cap(&big, 13).unwrap().holds);
    }

    #[test]
    fn m3_is_not_semidistributive() {
        // M3 is not sectionally pseudocomplemented and fails the property:
        // L(a,b) = L(0) = L(a,c) yet L(U(b,c), a) = L(a).
        let r = is_completely_l_semidistributive(&fixtures::fig6()).unwrap();
        assert!(!r.holds);
        assert!(r.witness.is_some());
    }
}
