use thiserror::Error;

use super::{
    all_congruences, congruence_violation, convexity_violation, principal_congruence, CongruenceError, Partition,
    DEFAULT_CONGRUENCE_CAP,
};
use crate::poset::FinitePoset;
use crate::report::PropertyReport;
use crate::secpsc::{classify_table, sec_table, Groupoid, SectionTable};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum QuotientError {
    #[error("poset is not strongly sectionally pseudocomplemented")]
    NotStronglySecPc,
    #[error("partition is not a congruence: {x} ≡ {y} but translates by {z} differ")]
    NotCongruence { x: usize, y: usize, z: usize },
    #[error("partition is not convex: {0:?}")]
    NotConvex([usize; 3]),
    #[error("class {0:?} has no greatest element")]
    ClassWithoutGreatest(Vec<usize>),
    #[error("quotient order check failed at {0:?}")]
    OrderCheck(Vec<usize>),
    #[error(transparent)]
    Congruence(#[from] CongruenceError),
}

/// `P/Θ` with `[x] <=' [y]` iff `x*y ≡ 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuotientStructure {
    pub poset: FinitePoset,
    pub partition: Partition,
    pub one_class: usize,
    /// `[a] *' [b] = [a*b]`, present only for strong congruences.
    pub star: Option<Groupoid>,
}

fn strongly_secpc_groupoid(t: &SectionTable) -> Result<(Groupoid, usize), QuotientError> {
    if !classify_table(t).is_strongly_sec_pc {
        return Err(QuotientError::NotStronglySecPc);
    }
    let g = t.groupoid().ok_or(QuotientError::NotStronglySecPc)?;
    Ok((g, t.top().ok_or(QuotientError::NotStronglySecPc)?))
}

pub fn quotient(p: &FinitePoset, t: &SectionTable, part: &Partition) -> Result<QuotientStructure, QuotientError> {
    let (g, one) = strongly_secpc_groupoid(t)?;
    if let Some(v) = congruence_violation(&g, part) {
        return Err(QuotientError::NotCongruence { x: v.x, y: v.y, z: v.z });
    }
    if let Some(w) = convexity_violation(p, part) {
        return Err(QuotientError::NotConvex(w));
    }
    let classes = part.classes();
    let rep: Vec<usize> = classes.iter().map(|c| c[0]).collect();
    let below = |i: usize, j: usize| part.same(g.apply(rep[i], rep[j]), one);
    let poset = FinitePoset::from_relation(part.class_labels(p), below)
        .map_err(|_| QuotientError::OrderCheck(rep.clone()))?;

    let n = p.size();
    for a in 0..n {
        for b in 0..n {
            let (ca, cb) = (part.class_id(a), part.class_id(b));
            if p.leq(a, b) && !poset.leq(ca, cb) {
                return Err(QuotientError::OrderCheck(vec![a, b]));
            }
            if poset.leq(ca, cb) && !classes[cb].iter().any(|&d| p.leq(a, d)) {
                return Err(QuotientError::OrderCheck(vec![a, b]));
            }
        }
    }

    let star = match is_strong(p, &g, part)? {
        None => {
            let k = classes.len();
            let rows: Vec<Vec<usize>> = (0..k)
                .map(|i| (0..k).map(|j| part.class_id(g.apply(rep[i], rep[j]))).collect())
                .collect();
            Some(Groupoid::from_rows(&rows).expect("square table"))
        }
        Some(_) => None,
    };
    Ok(QuotientStructure {
        poset,
        partition: part.clone(),
        one_class: part.class_id(one),
        star,
    })
}

/// Greatest element of each class, in class order.
pub(crate) fn class_greatest(p: &FinitePoset, part: &Partition) -> Result<Vec<usize>, QuotientError> {
    part.classes()
        .into_iter()
        .map(|c| p.greatest(&p.subset(c.iter().copied())).ok_or(QuotientError::ClassWithoutGreatest(c)))
        .collect()
}

/// `Ok(None)` if the congruence is strong; otherwise `(a, b)`, both
/// class-greatest, with `a*b` not greatest in its class.
pub fn is_strong(p: &FinitePoset, g: &Groupoid, part: &Partition) -> Result<Option<[usize; 2]>, QuotientError> {
    let tops = class_greatest(p, part)?;
    for &a in &tops {
        for &b in &tops {
            let ab = g.apply(a, b);
            if tops[part.class_id(ab)] != ab {
                return Ok(Some([a, b]));
            }
        }
    }
    Ok(None)
}

/// Instance checks of the congruence results for a strongly sectionally
/// pseudocomplemented poset (finite, so every ascending chain stabilizes):
///
/// * `chain_lemma`: `a < b < (b*a)*a` and `a Θ (b*a)*a` force `a Θ b`
/// * `convex`: every congruence is convex
/// * `class_updirected`: `(b*c)*c` lies in the class of `b, c` and bounds both
/// * `class_greatest`: every class has a greatest element
/// * `quotient_order`: the quotient order from arbitrary representatives is
///   a poset, agrees with the one from class-greatest representatives, and
///   class-greatest `a, b` satisfy `a <= b` iff `[a] <=' [b]`
/// * `quotient_strong`: quotients by strong congruences are strongly
///   sectionally pseudocomplemented with `*'` as their operation
/// * `principal_lemma`: `Θ(b*a, 1) = Θ(a, b)` whenever `a <= b`
///
/// `infinite_case_hypothesis` is informational: for `x < y < 1`, `y` not
/// covering `x` and `x < y*x`, it counts how often `Θ(x, y)` is total.
pub fn verify_section3(p: &FinitePoset) -> Result<PropertyReport, QuotientError> {
    let t = sec_table(p);
    let (g, one) = strongly_secpc_groupoid(&t)?;
    let cons = all_congruences(&g, DEFAULT_CONGRUENCE_CAP)?;
    let n = p.size();
    let s = |a, b| g.apply(a, b);
    let mut r = PropertyReport::new();

    let mut chain = None;
    'chain: for c in &cons {
        for a in 0..n {
            for b in 0..n {
                let top = s(s(b, a), a);
                if p.lt(a, b) && p.lt(b, top) && c.same(a, top) && !c.same(a, b) {
                    chain = Some(vec![a, b]);
                    break 'chain;
                }
            }
        }
    }
    r.record("chain_lemma", chain, "a < b < (b*a)*a, a Θ (b*a)*a, but not a Θ b");

    r.record(
        "convex",
        cons.iter().find_map(|c| convexity_violation(p, c)).map(|w| w.to_vec()),
        "congruence class not convex",
    );

    let mut updirected = None;
    'up: for c in &cons {
        for b in 0..n {
            for x in c.class_members(b) {
                let u = s(s(b, x), x);
                if !c.same(u, b) || !p.leq(b, u) || !p.leq(x, u) {
                    updirected = Some(vec![b, x]);
                    break 'up;
                }
            }
        }
    }
    r.record("class_updirected", updirected, "(b*c)*c is not an upper bound of b, c in their class");

    let mut missing = None;
    for c in &cons {
        if let Err(QuotientError::ClassWithoutGreatest(class)) = class_greatest(p, c) {
            missing = Some(class);
            break;
        }
    }
    r.record("class_greatest", missing.clone(), "class without greatest element");

    let mut order_fail = None;
    let mut strong_fail = None;
    let mut strong_count = 0;
    if missing.is_none() {
        for c in &cons {
            let q = match quotient(p, &t, c) {
                Ok(q) => q,
                Err(_) => {
                    order_fail.get_or_insert_with(|| c.class_members(one));
                    continue;
                }
            };
            let tops = class_greatest(p, c)?;
            let classes = c.classes();
            'reps: for i in 0..classes.len() {
                for j in 0..classes.len() {
                    let via_tops = c.same(s(tops[i], tops[j]), one);
                    if via_tops != q.poset.leq(i, j) || p.leq(tops[i], tops[j]) != via_tops {
                        order_fail.get_or_insert(vec![tops[i], tops[j]]);
                        break 'reps;
                    }
                    for &x in &classes[i] {
                        for &y in &classes[j] {
                            if c.same(s(x, y), one) != via_tops {
                                order_fail.get_or_insert(vec![x, y]);
                                break 'reps;
                            }
                        }
                    }
                }
            }
            if let Some(star) = &q.star {
                strong_count += 1;
                let qt = sec_table(&q.poset);
                let ok = classify_table(&qt).is_strongly_sec_pc && qt.groupoid().as_ref() == Some(star);
                if !ok && strong_fail.is_none() {
                    strong_fail = Some(c.class_members(one));
                }
            }
        }
        r.record("quotient_order", order_fail, "quotient order mismatch");
        r.record("quotient_strong", strong_fail, "quotient by strong congruence not strongly sec-pc");
    } else {
        r.skip("quotient_order", "some class lacks a greatest element");
        r.skip("quotient_strong", "some class lacks a greatest element");
    }

    let mut lemma = None;
    'lemma: for a in 0..n {
        for b in p.up_set(a).iter() {
            if principal_congruence(&g, s(b, a), one) != principal_congruence(&g, a, b) {
                lemma = Some(vec![a, b]);
                break 'lemma;
            }
        }
    }
    r.record("principal_lemma", lemma, "Θ(b*a,1) != Θ(a,b)");

    let total = Partition::total(n);
    let mut hyp = 0;
    let mut hyp_total = 0;
    for x in 0..n {
        for y in 0..n {
            if p.lt(x, y) && p.lt(y, one) && !p.covers(x, y) && p.lt(x, s(y, x)) {
                hyp += 1;
                if principal_congruence(&g, x, y) == total {
                    hyp_total += 1;
                }
            }
        }
    }
    r.info(
        "infinite_case_hypothesis",
        format!("{hyp_total} of {hyp} qualifying pairs (x,y) have Θ(x,y) total; {strong_count} strong congruences"),
    );
    Ok(r)
}
