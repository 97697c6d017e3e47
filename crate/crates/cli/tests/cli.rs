use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use ordkit::completion::dm_completion;
use ordkit::poset::text::parse_poset;
use ordkit::secpsc::table_io::{TableGrid, TableJson};
use ordkit::secpsc::{classify, sec_table};
use serde_json::Value;

fn corpus(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../corpus").join(name)
}

fn ordkit(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ordkit"))
        .args(args)
        .env_remove("ORDKIT_CACHE")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

const TABLE_FIGS: [&str; 6] = ["fig1", "fig2", "fig3", "fig4", "fig5", "fig7"];

#[test]
fn table_matches_corpus() {
    for fig in TABLE_FIGS {
        let o = ordkit(&["table", path(&corpus(&format!("{fig}.poset")))]);
        assert!(o.status.success(), "{fig}");
        let got = TableGrid::parse(&stdout(&o)).unwrap();
        let np = parse_poset(&std::fs::read_to_string(corpus(&format!("{fig}.poset"))).unwrap()).unwrap();
        assert_eq!(got, TableGrid::from_table(&sec_table(&np.poset)), "{fig}");
        // The printed Fig. 1 table has four wrong entries in column c.
        if fig != "fig1" {
            let expected = std::fs::read_to_string(corpus(&format!("{fig}.table"))).unwrap();
            assert_eq!(got, TableGrid::parse(&expected).unwrap(), "{fig}");
        }
    }
}

#[test]
fn text_table_agrees_with_json() {
    for fig in TABLE_FIGS {
        let input = corpus(&format!("{fig}.poset"));
        let text = ordkit(&["table", path(&input)]);
        let json = ordkit(&["--format", "json", "table", path(&input)]);
        let parsed: TableJson = serde_json::from_slice(&json.stdout).unwrap();
        assert_eq!(TableGrid::parse(&stdout(&text)).unwrap(), parsed.grid(), "{fig}");
    }
}

#[test]
fn check_matches_library() {
    for fig in ["fig1", "fig2", "fig3", "fig4", "fig5", "fig6", "fig7", "singleton"] {
        let input = corpus(&format!("{fig}.poset"));
        let np = parse_poset(&std::fs::read_to_string(&input).unwrap()).unwrap();
        let r = classify(&np.poset);
        let o = ordkit(&["--format", "json", "check", path(&input)]);
        assert!(o.status.success(), "{fig}");
        let v: Value = serde_json::from_slice(&o.stdout).unwrap();
        assert_eq!(v["sectionally_pseudocomplemented"], r.is_sec_pc, "{fig}");
        assert_eq!(v["strongly"], r.is_strongly_sec_pc, "{fig}");
        assert_eq!(v["lattice"], r.is_lattice, "{fig}");
        assert_eq!(v["relatively_pc"], r.is_rel_pc, "{fig}");
    }
}

#[test]
fn check_first_line_fig1() {
    let o = ordkit(&["check", path(&corpus("fig1.poset"))]);
    let out = stdout(&o);
    assert_eq!(
        out.lines().next().unwrap(),
        "sectionally pseudocomplemented: yes; strongly: no (witness c,a); lattice: no; relatively pc: no"
    );
}

#[test]
fn complete_fig3_and_sidecar() {
    let dir = tempfile::tempdir().unwrap();
    let side = dir.path().join("cuts.json");
    let o = ordkit(&["complete", path(&corpus("fig3.poset")), "--sidecar", side.to_str().unwrap()]);
    assert!(o.status.success());
    let out = parse_poset(&stdout(&o)).unwrap();
    let fig7 = parse_poset(&std::fs::read_to_string(corpus("fig7.poset")).unwrap()).unwrap();
    assert!(ordkit::poset::is_isomorphic(&out.poset, &fig7.poset).is_some());
    let lib = dm_completion(&ordkit::fixtures::fig3());
    assert!(out.poset.same_order(&lib.lattice));

    let v: Value = serde_json::from_str(&std::fs::read_to_string(&side).unwrap()).unwrap();
    let labels: Vec<&str> = v["cuts"].as_array().unwrap().iter().map(|c| c["label"].as_str().unwrap()).collect();
    assert!(labels.contains(&"L(d,e)"));
    assert_eq!(labels.len(), 8);
}

#[test]
fn sum_example_verifies() {
    let o = ordkit(&["sum", "--verify-dm", "--verify-secpc", path(&corpus("yokedexam.sum"))]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let out = stdout(&o);
    assert!(out.contains("verify-dm: pass"));
    assert!(out.contains("verify-secpc: pass"));
    let grid = TableGrid::parse(out.split("completion table:\n").nth(1).unwrap()).unwrap();
    let fig7 = TableGrid::parse(&std::fs::read_to_string(corpus("fig7.table")).unwrap()).unwrap();
    assert_eq!(grid.entries.len(), fig7.entries.len());
    assert_eq!(grid, TableGrid::from_table(&sec_table(&dm_completion(&ordkit::fixtures::fig3()).lattice)));
}

#[test]
fn sum_rejects_bad_family() {
    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("bad.sum");
    // The label x occurs in both summands without a glue line.
    std::fs::write(&f, "summand 1\nposet A\nelements: x y\ncovers: x<y\nsummand 2\nposet B\nelements: x z\ncovers: x<z\n").unwrap();
    let o = ordkit(&["sum", f.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(3));
    let v: Value = serde_json::from_slice(&o.stderr).unwrap();
    assert_eq!(v["error"], "invalid_family");
}

#[test]
fn quotient_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let good = dir.path().join("good.json");
    std::fs::write(&good, r#"{"classes":[["a","1"],["b"],["c"]]}"#).unwrap();
    let o = ordkit(&["quotient", path(&corpus("fig5.poset")), good.to_str().unwrap()]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("class of 1: {a,1}"));

    let unknown = dir.path().join("unknown.json");
    std::fs::write(&unknown, r#"{"classes":[["a","1"],["b"],["zz"]]}"#).unwrap();
    let o = ordkit(&["quotient", path(&corpus("fig5.poset")), unknown.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));

    let not_cong = dir.path().join("bad.json");
    std::fs::write(&not_cong, r#"{"classes":[["a","b"],["c"],["1"]]}"#).unwrap();
    let o = ordkit(&["quotient", path(&corpus("fig5.poset")), not_cong.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(3));
    let v: Value = serde_json::from_slice(&o.stderr).unwrap();
    assert!(v["witness"].is_array());
}

#[test]
fn congruences_fig5() {
    let o = ordkit(&["--format", "json", "congruences", path(&corpus("fig5.poset"))]);
    assert!(o.status.success());
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    let list = v.as_array().unwrap();
    assert_eq!(list.len(), 8);
    assert!(list.iter().all(|c| c["convex"] == true));

    let o = ordkit(&["congruences", path(&corpus("fig6.poset"))]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn enumerate_predicate_lists_fig5() {
    let o = ordkit(&["--format", "json", "enumerate", "4", "--predicate", "secpc-lost-under-DM"]);
    assert!(o.status.success());
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    let fig5 = ordkit::fixtures::fig5();
    let found = v["matches"].as_array().unwrap().iter().any(|m| {
        let p: ordkit::FinitePoset = serde_json::from_value(m["poset"].clone()).unwrap();
        ordkit::poset::is_isomorphic(&p, &fig5).is_some()
    });
    assert!(found);
}

#[test]
fn enumerate_census_and_cap() {
    let o = ordkit(&["enumerate", "4", "--jobs", "2"]);
    assert!(o.status.success());
    assert!(stdout(&o).starts_with("posets with 4 elements: 16\n"));

    let o = ordkit(&["enumerate", "7", "--cap", "6"]);
    assert_eq!(o.status.code(), Some(3));
    let v: Value = serde_json::from_slice(&o.stderr).unwrap();
    assert_eq!(v["error"], "size_cap_exceeded");
}

#[test]
fn usage_errors() {
    assert_eq!(ordkit(&["check", "/nonexistent/x.poset"]).status.code(), Some(2));
    assert_eq!(ordkit(&["--format", "dot", "table", path(&corpus("fig1.poset"))]).status.code(), Some(2));
    assert_eq!(ordkit(&["enumerate", "3", "--predicate", "nope"]).status.code(), Some(2));
    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("cyc.poset");
    std::fs::write(&f, "poset cyc\nelements: a b\ncovers: a<b b<a\n").unwrap();
    assert_eq!(ordkit(&["check", f.to_str().unwrap()]).status.code(), Some(2));
}

#[test]
fn export_dot() {
    let o = ordkit(&["export-dot", path(&corpus("fig5.poset"))]);
    assert!(o.status.success());
    let out = stdout(&o);
    assert!(out.starts_with("digraph"));
    assert!(out.contains("->"));
}
