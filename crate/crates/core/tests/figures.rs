use ordkit::completion::{dm_completion, dm_preserves_secpc, new_cut_labels};
use ordkit::fixtures;
use ordkit::ordinal_sum::text::parse_sum;
use ordkit::ordinal_sum::{verify_sum_completion, verify_sum_secpc};
use ordkit::poset::is_isomorphic;
use ordkit::secpsc::table_io::TableGrid;
use ordkit::secpsc::{classify, rel_pc, sec_pc, sec_table, WITNESS_STRONG};
use ordkit::FinitePoset;

fn corpus_table(fig: &str) -> TableGrid {
    let path = format!("{}/../../corpus/{fig}.table", env!("CARGO_MANIFEST_DIR"));
    TableGrid::parse(&std::fs::read_to_string(path).unwrap()).unwrap()
}

fn id(p: &FinitePoset, x: &str) -> usize {
    p.index_of(x).unwrap()
}

#[test]
fn tables_match_corpus() {
    for (fig, p) in [
        ("fig2", fixtures::fig2()),
        ("fig3", fixtures::fig3()),
        ("fig4", fixtures::fig4()),
        ("fig5", fixtures::fig5()),
        ("fig7", fixtures::fig7()),
    ] {
        assert_eq!(TableGrid::from_table(&sec_table(&p)), corpus_table(fig), "{fig}");
    }
}

#[test]
fn fig1_table_differs_from_print_only_in_column_c() {
    let got = TableGrid::from_table(&sec_table(&fixtures::fig1()));
    let printed = corpus_table("fig1");
    let mut diffs = Vec::new();
    for (a, row) in got.entries.iter().enumerate() {
        for (b, v) in row.iter().enumerate() {
            if *v != printed.entries[a][b] {
                diffs.push(format!("{}*{}={}", got.elements[a], got.elements[b], v.as_deref().unwrap()));
            }
        }
    }
    assert_eq!(diffs, ["b*c=c", "d*c=c", "e*c=c", "g*c=c"]);
}

#[test]
fn classification_claims() {
    let p1 = fixtures::fig1();
    let r = classify(&p1);
    assert!(r.is_sec_pc && !r.is_strongly_sec_pc);
    assert_eq!(r.witness(WITNESS_STRONG), Some(&[id(&p1, "c"), id(&p1, "a")][..]));
    assert_eq!(sec_pc(&p1, id(&p1, "c"), id(&p1, "a")), Some(id(&p1, "f")));
    assert_eq!(sec_pc(&p1, id(&p1, "f"), id(&p1, "a")), Some(id(&p1, "a")));

    let p2 = fixtures::fig2();
    let r = classify(&p2);
    assert!(r.is_strongly_sec_pc && r.is_lattice);
    assert_eq!(rel_pc(&p2, id(&p2, "c"), id(&p2, "a")), None);
    assert_eq!(sec_pc(&p2, id(&p2, "a"), id(&p2, "0")), Some(id(&p2, "b")));

    let p3 = fixtures::fig3();
    let r = classify(&p3);
    assert!(r.is_strongly_sec_pc && !r.is_lattice);
    assert_eq!(rel_pc(&p3, id(&p3, "c"), id(&p3, "a")), None);

    let p4 = fixtures::fig4();
    let r = classify(&p4);
    assert!(r.is_sec_pc && r.is_lattice);
    let (d, c) = (sec_pc(&p4, id(&p4, "b"), id(&p4, "0")).unwrap(), sec_pc(&p4, id(&p4, "b"), id(&p4, "a")).unwrap());
    assert_eq!((d, c), (id(&p4, "d"), id(&p4, "c")));
    assert!(!p4.comparable(d, c));

    assert!(classify(&fixtures::fig5()).is_strongly_sec_pc);
    assert!(!classify(&fixtures::fig6()).is_sec_pc);
}

#[test]
fn completion_claims() {
    let r = dm_preserves_secpc(&fixtures::fig5()).unwrap();
    assert!(!r.preserved);
    let l = &r.completion.lattice;
    assert!(is_isomorphic(l, &fixtures::fig6()).is_some());
    let (a, zero) = r.witness.unwrap();
    assert_eq!((l.name(a), l.name(zero)), ("a", "L(a,b,c)"));

    let dm = dm_completion(&fixtures::fig3());
    assert!(is_isomorphic(&dm.lattice, &fixtures::fig7()).is_some());
    assert_eq!(new_cut_labels(&dm).into_iter().collect::<Vec<_>>(), ["L(d,e)"]);
    assert!(dm.verify(&fixtures::fig3()).all_pass());
}

#[test]
fn yoked_example() {
    let f = parse_sum(fixtures::YOKED_EXAMPLE).unwrap();
    let c = verify_sum_completion(&f).unwrap();
    assert!(c.report.all_pass(), "{}", c.report.render(&[]));
    let n5 = ordkit::poset::build_poset(
        &["0", "a", "b", "c", "1"],
        &[("0", "a"), ("a", "c"), ("c", "1"), ("0", "b"), ("b", "1")],
    )
    .unwrap();
    let boolean = ordkit::poset::build_poset(&["0", "p", "q", "1"], &[("0", "p"), ("0", "q"), ("p", "1"), ("q", "1")]).unwrap();
    assert!(is_isomorphic(&c.yoked.summands[0].poset, &n5).is_some());
    assert!(is_isomorphic(&c.yoked.summands[1].poset, &boolean).is_some());
    assert!(verify_sum_secpc(&f).unwrap().all_pass());
}
