//! Acceptance criteria, one PASS/FAIL line each. Failures are reported, not
//! panicked on, so the remaining criteria still run.

mod common;

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use common::*;
use ordkit::completion::{dm_completion, dm_preserves_secpc, new_cut_labels};
use ordkit::congruence::{all_congruences, is_strong, principal_congruence, quotient, DEFAULT_CONGRUENCE_CAP};
use ordkit::fixtures;
use ordkit::ordinal_sum::text::parse_sum;
use ordkit::ordinal_sum::{build_sum, verify_sum_completion, verify_sum_secpc, SumFamily, SumSecPc};
use ordkit::poset::{build_poset, is_isomorphic};
use ordkit::search::{canonical_code, enumerate_posets, run_census, run_census_with, CensusOptions, Predicate};
use ordkit::secpsc::table_io::TableGrid;
use ordkit::secpsc::{classify, rel_pc, sec_pc, sec_table, WITNESS_STRONG};
use ordkit::{FinitePoset, Subset};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Collects failed expectations for one criterion.
#[derive(Default)]
struct Checks(Vec<String>);

impl Checks {
    fn expect(&mut self, ok: bool, what: impl FnOnce() -> String) {
        if !ok {
            self.0.push(what());
        }
    }
}

fn id(p: &FinitePoset, x: &str) -> usize {
    p.index_of(x).unwrap()
}

fn budget(c: &mut Checks, start: Instant, limit: Duration) {
    let took = start.elapsed();
    c.expect(took <= limit, || format!("took {took:.2?}, budget {limit:?}"));
}

fn golden_tables() -> Checks {
    let mut c = Checks::default();
    let start = Instant::now();
    let figs = [
        ("fig1", fixtures::fig1()),
        ("fig2", fixtures::fig2()),
        ("fig3", fixtures::fig3()),
        ("fig4", fixtures::fig4()),
        ("fig5", fixtures::fig5()),
        ("fig7", fixtures::fig7()),
    ];
    let mut entries = 0;
    for (fig, p) in figs {
        let path = format!("{}/../../corpus/{fig}.table", env!("CARGO_MANIFEST_DIR"));
        let printed = TableGrid::parse(&std::fs::read_to_string(path).unwrap()).unwrap();
        let got = TableGrid::from_table(&sec_table(&p));
        c.expect(got.elements == printed.elements, || format!("{fig}: header differs"));
        for (a, row) in got.entries.iter().enumerate() {
            for (b, v) in row.iter().enumerate() {
                entries += 1;
                let want = &printed.entries[a][b];
                c.expect(v == want, || {
                    let show = |x: &Option<String>| x.clone().unwrap_or_else(|| "undefined".into());
                    format!("{fig} {}*{}: computed {}, printed {}", got.elements[a], got.elements[b], show(v), show(want))
                });
            }
        }
    }
    c.expect(entries == 64 + 25 + 49 + 49 + 16 + 64, || format!("{entries} entries compared"));
    budget(&mut c, start, Duration::from_secs(1));
    c
}

fn classifications() -> Checks {
    let mut c = Checks::default();
    let p = fixtures::fig1();
    let r = classify(&p);
    c.expect(r.is_sec_pc && !r.is_strongly_sec_pc, || "fig1: expected sec-pc, not strongly".into());
    c.expect(r.witness(WITNESS_STRONG) == Some(&[id(&p, "c"), id(&p, "a")][..]), || "fig1: witness is not (c,a)".into());
    let ca = sec_pc(&p, id(&p, "c"), id(&p, "a"));
    let back = ca.and_then(|f| sec_pc(&p, f, id(&p, "a")));
    c.expect(ca == Some(id(&p, "f")) && back == Some(id(&p, "a")), || "fig1: (c*a)*a is not f*a = a".into());

    let p = fixtures::fig2();
    let r = classify(&p);
    c.expect(r.is_strongly_sec_pc && r.is_lattice, || "fig2: expected strongly sec-pc lattice".into());
    c.expect(rel_pc(&p, id(&p, "c"), id(&p, "a")).is_none(), || "fig2: rel_pc(c,a) exists".into());

    let p = fixtures::fig3();
    let r = classify(&p);
    c.expect(r.is_strongly_sec_pc && !r.is_lattice, || "fig3: expected strongly sec-pc non-lattice".into());
    c.expect(rel_pc(&p, id(&p, "c"), id(&p, "a")).is_none(), || "fig3: rel_pc(c,a) exists".into());

    let p = fixtures::fig4();
    let r = classify(&p);
    c.expect(r.is_sec_pc && r.is_lattice, || "fig4: expected sec-pc lattice".into());
    let b0 = sec_pc(&p, id(&p, "b"), id(&p, "0"));
    let ba = sec_pc(&p, id(&p, "b"), id(&p, "a"));
    c.expect(b0 == Some(id(&p, "d")) && ba == Some(id(&p, "c")), || "fig4: b*0 != d or b*a != c".into());
    c.expect(b0.zip(ba).is_some_and(|(x, y)| !p.comparable(x, y)), || "fig4: b*0 and b*a comparable".into());

    c.expect(classify(&fixtures::fig5()).is_strongly_sec_pc, || "fig5: not strongly sec-pc".into());
    c
}

fn completion_counterexample() -> Checks {
    let mut c = Checks::default();
    let r = dm_preserves_secpc(&fixtures::fig5()).unwrap();
    let l = &r.completion.lattice;
    c.expect(is_isomorphic(l, &fixtures::fig6()).is_some(), || "DM(fig5) not isomorphic to fig6".into());
    let a = id(l, "a");
    let zero = l.bottom().unwrap();
    c.expect(sec_pc(l, a, zero).is_none(), || "a*0 exists in DM(fig5)".into());
    c.expect(!r.preserved, || "DM(fig5) reported sec-pc".into());

    let dm = dm_completion(&fixtures::fig3());
    c.expect(is_isomorphic(&dm.lattice, &fixtures::fig7()).is_some(), || "DM(fig3) not isomorphic to fig7".into());
    let new: Vec<String> = new_cut_labels(&dm).into_iter().collect();
    c.expect(new == ["L(d,e)"], || format!("DM(fig3) new elements {new:?}"));
    c
}

fn sum_theorems() -> Checks {
    let mut c = Checks::default();
    let start = Instant::now();
    let f = parse_sum(fixtures::YOKED_EXAMPLE).unwrap();
    match verify_sum_completion(&f) {
        Ok(sc) => {
            c.expect(sc.report.all_pass(), || format!("verify_sum_completion:\n{}", sc.report.render(&[])));
            let n5 = build_poset(
                &["0", "a", "b", "c", "1"],
                &[("0", "a"), ("a", "c"), ("c", "1"), ("0", "b"), ("b", "1")],
            )
            .unwrap();
            let b2 = build_poset(&["0", "p", "q", "1"], &[("0", "p"), ("0", "q"), ("p", "1"), ("q", "1")]).unwrap();
            let ys = &sc.yoked.summands;
            c.expect(ys.len() == 2, || format!("{} yoked summands", ys.len()));
            c.expect(is_isomorphic(&ys[0].poset, &n5).is_some(), || "first yoked summand is not N5".into());
            c.expect(is_isomorphic(&ys[1].poset, &b2).is_some(), || "second yoked summand is not 2x2".into());
        }
        Err(e) => c.0.push(format!("verify_sum_completion: {e}")),
    }
    match verify_sum_secpc(&f) {
        Ok(r) => c.expect(r.all_pass(), || format!("verify_sum_secpc:\n{}", r.render(&[]))),
        Err(e) => c.0.push(format!("verify_sum_secpc: {e}")),
    }
    budget(&mut c, start, Duration::from_secs(1));
    c
}

fn census_suite() -> Checks {
    let mut c = Checks::default();
    let start = Instant::now();
    let mut found: Vec<(Predicate, usize)> = Vec::new();
    for n in 1..=6 {
        let census = run_census(n).unwrap();
        for item in &census.suite {
            for ce in &item.counterexamples {
                c.0.push(format!("n={n} ({}) code {}: {}", item.id, ce.code, ce.detail));
            }
        }
        for pred in Predicate::ALL {
            if census.first_with(pred).is_some() && !found.iter().any(|(p, _)| *p == pred) {
                found.push((pred, n));
            }
        }
    }
    for pred in [Predicate::StrongNotRelPc, Predicate::SecondArgNonmonotone, Predicate::SecPcLostUnderDm] {
        c.expect(found.iter().any(|(p, _)| *p == pred), || format!("no {pred} witness at n <= 6"));
    }
    if !found.iter().any(|(p, _)| *p == Predicate::SecNotStrong) {
        let opts = CensusOptions { cap: 8, cache_dir: None };
        let fig1 = canonical_code(&fixtures::fig1());
        let mut ok = false;
        for n in 7..=8 {
            let census = run_census_with(n, &opts).unwrap();
            let hits: Vec<u64> =
                census.entries.iter().filter(|e| e.satisfies(Predicate::SecNotStrong)).map(|e| e.code).collect();
            if !hits.is_empty() {
                ok = n < 8 || hits.contains(&fig1);
                break;
            }
        }
        c.expect(ok, || "sec-not-strong not found at n <= 8 via fig1".into());
    }
    budget(&mut c, start, Duration::from_secs(600));
    c
}

fn oracle_equivalences() -> Checks {
    let mut c = Checks::default();
    let mask = |s: &Subset| s.iter().fold(0u32, |m, x| m | 1 << x);
    for n in 1..=6 {
        for p in enumerate_posets(n).unwrap() {
            let dm = dm_completion(&p);
            let cuts: BTreeSet<u32> = dm.cuts.iter().map(mask).collect();
            c.expect(cuts == naive_cuts(&p) && cuts.len() == dm.cuts.len(), || {
                format!("cut set differs for code {}", canonical_code(&p))
            });
            if n > 5 {
                continue;
            }
            let Some(g) = sec_table(&p).groupoid() else { continue };
            let brute = brute_congruences(&g);
            let lib: BTreeSet<Vec<usize>> = all_congruences(&g, DEFAULT_CONGRUENCE_CAP)
                .unwrap()
                .iter()
                .map(|t| normalise(t.class_of()))
                .collect();
            c.expect(lib == brute.iter().cloned().collect(), || {
                format!("congruences differ for code {}", canonical_code(&p))
            });
            for a in 0..n {
                for b in 0..n {
                    let theta = principal_congruence(&g, a, b);
                    c.expect(normalise(theta.class_of()) == brute_principal(&brute, a, b), || {
                        format!("principal congruence ({a},{b}) differs for code {}", canonical_code(&p))
                    });
                }
            }
        }
    }
    c
}

fn quotient_suite() -> Checks {
    let mut c = Checks::default();
    let mut strong_seen = 0;
    for n in 1..=5 {
        for p in enumerate_posets(n).unwrap() {
            if !classify(&p).is_strongly_sec_pc {
                continue;
            }
            let t = sec_table(&p);
            let g = t.groupoid().unwrap();
            let one = p.top().unwrap();
            let code = canonical_code(&p);
            for theta in all_congruences(&g, DEFAULT_CONGRUENCE_CAP).unwrap() {
                if !matches!(is_strong(&p, &g, &theta), Ok(None)) {
                    continue;
                }
                strong_seen += 1;
                match quotient(&p, &t, &theta) {
                    Ok(q) => {
                        c.expect(classify(&q.poset).is_strongly_sec_pc, || {
                            format!("quotient of code {code} by {:?} not strongly sec-pc", theta.class_of())
                        });
                        let direct = sec_table(&q.poset).groupoid();
                        c.expect(direct.is_some() && direct == q.star, || {
                            format!("quotient operation of code {code} differs from its own table")
                        });
                    }
                    Err(e) => c.0.push(format!("quotient of code {code}: {e}")),
                }
            }
            for a in 0..n {
                for b in 0..n {
                    if p.leq(a, b) {
                        let lhs = principal_congruence(&g, g.apply(b, a), one);
                        c.expect(lhs == principal_congruence(&g, a, b), || {
                            format!("code {code}: Θ(b*a,1) != Θ(a,b) at ({a},{b})")
                        });
                    }
                }
            }
        }
    }
    c.expect(strong_seen > 0, || "no strong congruences visited".into());
    c
}

/// A summand drawn from the pool, relabelled with a per-summand prefix.
fn relabel(p: &FinitePoset, prefix: &str) -> FinitePoset {
    p.with_names(p.names().iter().map(|x| format!("{prefix}{x}")).collect()).unwrap()
}

fn random_family(rng: &mut ChaCha8Rng, pool: &[FinitePoset]) -> SumFamily {
    loop {
        let k = rng.gen_range(2..=3);
        let summands: Vec<FinitePoset> = (0..k)
            .map(|i| relabel(pool.choose(rng).unwrap(), &format!("s{}", i + 1)))
            .collect();
        if summands[k - 1].top().is_none() {
            continue;
        }
        let hypothesis = (1..k).all(|j| summands[j].bottom().is_some() || summands[j - 1].top().is_none());
        if !hypothesis {
            continue;
        }
        let mut glue = Vec::new();
        for j in 1..k {
            if let (Some(t), Some(b)) = (summands[j - 1].top(), summands[j].bottom()) {
                if rng.gen_bool(0.5) {
                    glue.push(ordkit::ordinal_sum::Glue {
                        lower: (j).to_string(),
                        lower_elem: summands[j - 1].name(t).to_string(),
                        upper: (j + 1).to_string(),
                        upper_elem: summands[j].name(b).to_string(),
                    });
                }
            }
        }
        let index = (1..=k).map(|i| i.to_string()).collect();
        return SumFamily::new(index, summands, glue).expect("valid by construction");
    }
}

fn random_sums() -> Checks {
    let mut c = Checks::default();
    let start = Instant::now();
    let pool: Vec<FinitePoset> = (2..=4)
        .flat_map(|n| run_census(n).unwrap().entries)
        .filter(|e| e.classification.is_sec_pc)
        .map(|e| e.poset)
        .filter(|p| (0..p.size()).any(|a| (0..p.size()).any(|b| p.lt(a, b))))
        .collect();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    for trial in 0..200 {
        let f = random_family(&mut rng, &pool);
        let s = build_sum(&f);
        let t = sec_table(&s.poset);
        match SumSecPc::new(&f) {
            Ok(formula) => {
                let n = s.poset.size();
                let bad = (0..n).flat_map(|a| (0..n).map(move |b| (a, b))).find(|&(a, b)| t.get(a, b) != Some(formula.apply(a, b)));
                c.expect(bad.is_none(), || format!("trial {trial}: formula differs at {bad:?}"));
            }
            Err(e) => c.0.push(format!("trial {trial}: {e}")),
        }
        match verify_sum_completion(&f) {
            Ok(sc) => c.expect(sc.report.all_pass(), || format!("trial {trial}: {}", sc.report.render(&[]))),
            Err(e) => c.0.push(format!("trial {trial}: {e}")),
        }
    }
    budget(&mut c, start, Duration::from_secs(120));
    c
}

fn main() {
    let criteria: [(&str, fn() -> Checks); 8] = [
        ("golden tables", golden_tables),
        ("classification claims", classifications),
        ("completion counterexample", completion_counterexample),
        ("sum theorems", sum_theorems),
        ("census theorem suite", census_suite),
        ("oracle equivalences", oracle_equivalences),
        ("quotient suite", quotient_suite),
        ("randomized sum cross-check", random_sums),
    ];
    let mut passed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let checks = run();
        let took = start.elapsed();
        if checks.0.is_empty() {
            passed += 1;
            println!("criterion {} ({name}): PASS [{took:.2?}]", i + 1);
        } else {
            println!("criterion {} ({name}): FAIL [{took:.2?}] {} problem(s)", i + 1, checks.0.len());
            for line in checks.0.iter().take(20) {
                println!("    {line}");
            }
        }
    }
    println!("{passed}/{} criteria passed", criteria.len());
}
