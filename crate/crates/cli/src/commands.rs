use std::fmt::Write as _;
use std::path::Path;

use ordkit::completion::dm_completion;
use ordkit::congruence::{all_congruences, quotient, Partition, PartitionJson, QuotientError, DEFAULT_CONGRUENCE_CAP};
use ordkit::export::{ClassificationView, CongruenceView, QuotientView, ReportView};
use ordkit::ordinal_sum::text::{parse_sum, SumFileError};
use ordkit::ordinal_sum::{build_sum, verify_sum_completion, verify_sum_secpc, SumError, SumFamily};
use ordkit::poset::text::{parse_poset, to_dot, write_poset, NamedPoset};
use ordkit::poset::FinitePoset;
use ordkit::search::{run_census_with, CensusOptions, Predicate, SearchError};
use ordkit::secpsc::table_io::{TableGrid, TableJson};
use ordkit::secpsc::{classify, sec_table, ClassificationReport, WITNESS_LATTICE, WITNESS_REL_PC, WITNESS_STRONG};
use serde_json::json;

use crate::{Cli, Command, Format};

#[derive(Debug)]
pub struct CliError {
    math: bool,
    kind: String,
    message: String,
    witness: Vec<String>,
    /// Output still worth printing, e.g. a failed verification report.
    pub stdout: Option<String>,
}

impl CliError {
    fn input(message: impl Into<String>) -> Self {
        CliError {
            math: false,
            kind: "input".into(),
            message: message.into(),
            witness: Vec::new(),
            stdout: None,
        }
    }

    fn math(kind: &str, message: impl Into<String>, witness: Vec<String>) -> Self {
        CliError {
            math: true,
            kind: kind.into(),
            message: message.into(),
            witness,
            stdout: None,
        }
    }

    pub fn code(&self) -> u8 {
        if self.math {
            3
        } else {
            2
        }
    }

    pub fn stderr(&self) -> String {
        if self.math {
            json!({ "error": self.kind, "message": self.message, "witness": self.witness }).to_string()
        } else {
            format!("error: {}", self.message)
        }
    }
}

impl From<SumError> for CliError {
    fn from(e: SumError) -> Self {
        let (kind, witness) = match &e {
            SumError::InvalidFamily { witness, .. } => ("invalid_family", witness.clone()),
            SumError::YokedConditionFailed { witness, .. } => ("yoked_condition_failed", witness.clone()),
            SumError::HypothesisViolated { j, s } => ("hypothesis_violated", vec![j.clone(), s.clone()]),
            SumError::SummandNotSecPc(i) => ("summand_not_secpc", vec![i.clone()]),
            SumError::UnknownElement(x) => ("unknown_element", vec![x.clone()]),
        };
        CliError::math(kind, e.to_string(), witness)
    }
}

impl From<SearchError> for CliError {
    fn from(e: SearchError) -> Self {
        match e {
            SearchError::UnknownPredicate(_) => CliError::input(e.to_string()),
            SearchError::SizeCapExceeded { n, cap } => {
                CliError::math("size_cap_exceeded", e.to_string(), vec![n.to_string(), cap.to_string()])
            }
        }
    }
}

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| CliError::input(format!("{}: {e}", path.display())))
}

fn load_poset(path: &Path) -> Result<NamedPoset, CliError> {
    parse_poset(&read(path)?).map_err(|e| CliError::input(format!("{}: {e}", path.display())))
}

fn load_sum(path: &Path) -> Result<SumFamily, CliError> {
    match parse_sum(&read(path)?) {
        Ok(f) => Ok(f),
        Err(SumFileError::Parse(e)) => Err(CliError::input(format!("{}: {e}", path.display()))),
        Err(SumFileError::Family(e)) => Err(e.into()),
    }
}

fn pretty(v: &impl serde::Serialize) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("views serialize");
    s.push('\n');
    s
}

fn no_dot() -> CliError {
    CliError::input("--format dot is only supported by `complete` and `export-dot`")
}

fn labels(p: &FinitePoset, ids: &[usize]) -> Vec<String> {
    ids.iter().map(|&i| p.name(i).to_string()).collect()
}

pub fn run(cli: &Cli) -> Result<String, CliError> {
    match &cli.command {
        Command::Check { input } => check(cli.format, input),
        Command::Table { input } => table(cli.format, input),
        Command::Complete { input, sidecar } => complete(cli.format, input, sidecar.as_deref()),
        Command::Sum {
            input,
            verify_dm,
            verify_secpc,
        } => sum(cli.format, input, *verify_dm, *verify_secpc),
        Command::Quotient { input, partition } => quotient_cmd(cli.format, input, partition),
        Command::Congruences { input } => congruences(cli.format, input),
        Command::Enumerate {
            n,
            predicate,
            jobs,
            cap,
        } => enumerate(cli.format, *n, *predicate, *jobs, *cap),
        Command::ExportDot { input } => {
            let np = load_poset(input)?;
            Ok(to_dot(&np.name, &np.poset))
        }
    }
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

/// `sectionally pseudocomplemented: yes; strongly: no (witness c,a); ...`
pub fn check_line(p: &FinitePoset, r: &ClassificationReport) -> String {
    let with_witness = |holds: bool, w: Option<&[usize]>| match (holds, w) {
        (true, _) => "yes".to_string(),
        (false, Some(w)) => format!("no (witness {})", labels(p, w).join(",")),
        (false, None) => "no".to_string(),
    };
    let sec_witness = r.witnesses.first().filter(|w| w.property.starts_with("sec_pc")).map(|w| w.elements.as_slice());
    format!(
        "sectionally pseudocomplemented: {}; strongly: {}; lattice: {}; relatively pc: {}",
        with_witness(r.is_sec_pc, sec_witness),
        with_witness(r.is_strongly_sec_pc, r.witness(WITNESS_STRONG)),
        yes_no(r.is_lattice),
        yes_no(r.is_rel_pc),
    )
}

fn check(format: Format, input: &Path) -> Result<String, CliError> {
    let np = load_poset(input)?;
    let p = &np.poset;
    let r = classify(p);
    match format {
        Format::Json => Ok(pretty(&ClassificationView::new(p, &r))),
        Format::Dot => Err(no_dot()),
        Format::Text => {
            let mut out = check_line(p, &r);
            out.push('\n');
            let top = p.top().map_or("none", |t| p.name(t));
            let _ = writeln!(out, "greatest element: {top}");
            if let Some(w) = r.witness(WITNESS_LATTICE) {
                let _ = writeln!(out, "lattice witness: {} (no join or no meet)", labels(p, w).join(","));
            }
            if let Some(w) = r.witness(WITNESS_REL_PC) {
                let _ = writeln!(out, "relative pseudocomplement missing: {}", labels(p, w).join(","));
            }
            Ok(out)
        }
    }
}

fn table(format: Format, input: &Path) -> Result<String, CliError> {
    let np = load_poset(input)?;
    let t = sec_table(&np.poset);
    match format {
        Format::Text => Ok(TableGrid::from_table(&t).render()),
        Format::Json => Ok(pretty(&TableJson::from_table(&t))),
        Format::Dot => Err(no_dot()),
    }
}

fn complete(format: Format, input: &Path, sidecar: Option<&Path>) -> Result<String, CliError> {
    let np = load_poset(input)?;
    let dm = dm_completion(&np.poset);
    let side = dm.sidecar(&np.poset);
    if let Some(path) = sidecar {
        std::fs::write(path, pretty(&side)).map_err(|e| CliError::input(format!("{}: {e}", path.display())))?;
    }
    let name = format!("DM({})", np.name);
    Ok(match format {
        Format::Text => write_poset(&name, &dm.lattice),
        Format::Json => pretty(&json!({ "name": name, "poset": dm.lattice, "sidecar": side })),
        Format::Dot => to_dot(&name, &dm.lattice),
    })
}

fn sum(format: Format, input: &Path, verify_dm: bool, verify_secpc: bool) -> Result<String, CliError> {
    if format == Format::Dot {
        return Err(no_dot());
    }
    let f = load_sum(input)?;
    let s = build_sum(&f);
    let p = &s.poset;
    let mut failed: Vec<String> = Vec::new();
    let mut dm_view = None;
    let mut secpc_view = None;
    let mut dm_lattice = None;

    if verify_dm || verify_secpc {
        let completion = verify_sum_completion(&f)?;
        if verify_dm {
            let names = p.names();
            let view = ReportView::new(&completion.report, |_| names);
            failed.extend(view.checks.iter().filter(|c| c.status == "fail").map(|c| format!("verify-dm:{}", c.name)));
            dm_view = Some(view);
        }
        if verify_secpc {
            let report = verify_sum_secpc(&f)?;
            let dm_names = completion.completion.lattice.names();
            let view = ReportView::new(&report, |check| if check == "dm_formula" { dm_names } else { p.names() });
            failed.extend(
                view.checks.iter().filter(|c| c.status == "fail").map(|c| format!("verify-secpc:{}", c.name)),
            );
            secpc_view = Some(view);
        }
        dm_lattice = Some(completion.completion.lattice);
    }

    let out = match format {
        Format::Json => {
            let summand_of: Vec<&str> = s.summand_of.iter().map(|&k| f.index()[k].as_str()).collect();
            let table = dm_lattice.as_ref().map(|l| TableJson::from_table(&sec_table(l)));
            pretty(&json!({
                "sum": p,
                "summand_of": summand_of,
                "verify_dm": dm_view,
                "verify_secpc": secpc_view,
                "completion_table": table,
            }))
        }
        _ => {
            let mut out = String::new();
            let _ = writeln!(
                out,
                "sum of {} summands ({}): {} elements",
                f.len(),
                f.index().join(", "),
                p.size()
            );
            out.push_str(&write_poset("sum", p));
            for (label, view) in [("verify-dm", &dm_view), ("verify-secpc", &secpc_view)] {
                if let Some(v) = view {
                    let _ = writeln!(out, "{label}: {}", if v.passed { "pass" } else { "FAIL" });
                    out.push_str(&v.render());
                }
            }
            if let Some(l) = &dm_lattice {
                out.push_str("completion table:\n");
                out.push_str(&TableGrid::from_table(&sec_table(l)).render());
            }
            out
        }
    };
    if failed.is_empty() {
        Ok(out)
    } else {
        let mut e = CliError::math("verification_failed", "sum verification failed", failed);
        e.stdout = Some(out);
        Err(e)
    }
}

fn quotient_error(p: &FinitePoset, e: QuotientError) -> CliError {
    let message = e.to_string();
    match e {
        QuotientError::NotStronglySecPc => CliError::math("not_strongly_secpc", message, Vec::new()),
        QuotientError::NotCongruence { x, y, z } => CliError::math("not_congruence", message, labels(p, &[x, y, z])),
        QuotientError::NotConvex(w) => CliError::math("not_convex", message, labels(p, &w)),
        QuotientError::ClassWithoutGreatest(c) => CliError::math("class_without_greatest", message, labels(p, &c)),
        QuotientError::OrderCheck(w) => CliError::math("order_check", message, labels(p, &w)),
        QuotientError::Congruence(_) => CliError::math("size_cap_exceeded", message, Vec::new()),
    }
}

fn quotient_cmd(format: Format, input: &Path, partition: &Path) -> Result<String, CliError> {
    if format == Format::Dot {
        return Err(no_dot());
    }
    let np = load_poset(input)?;
    let p = &np.poset;
    let pj: PartitionJson = serde_json::from_str(&read(partition)?)
        .map_err(|e| CliError::input(format!("{}: {e}", partition.display())))?;
    let part: Partition = pj
        .resolve(p)
        .map_err(|e| CliError::input(format!("{}: {e}", partition.display())))?;
    let q = quotient(p, &sec_table(p), &part).map_err(|e| quotient_error(p, e))?;
    let view = QuotientView::new(&q);
    Ok(match format {
        Format::Json => pretty(&view),
        _ => {
            let mut out = write_poset(&format!("{}_quotient", np.name), &q.poset);
            let _ = writeln!(out, "class of 1: {}", view.one_class);
            match &view.star {
                Some(rows) => {
                    out.push_str("strong congruence; induced operation:\n");
                    let grid = TableGrid {
                        elements: q.poset.names().to_vec(),
                        entries: rows.iter().map(|r| r.iter().cloned().map(Some).collect()).collect(),
                    };
                    out.push_str(&grid.render());
                }
                None => out.push_str("not a strong congruence; no induced operation\n"),
            }
            out
        }
    })
}

fn congruences(format: Format, input: &Path) -> Result<String, CliError> {
    if format == Format::Dot {
        return Err(no_dot());
    }
    let np = load_poset(input)?;
    let p = &np.poset;
    let t = sec_table(p);
    let g = t.groupoid().ok_or_else(|| {
        let (a, b) = t.undefined_pairs()[0];
        CliError::math("not_secpc", "* is not total", labels(p, &[a, b]))
    })?;
    let cons = all_congruences(&g, DEFAULT_CONGRUENCE_CAP)
        .map_err(|e| CliError::math("size_cap_exceeded", e.to_string(), Vec::new()))?;
    let views: Vec<CongruenceView> = cons.iter().map(|c| CongruenceView::new(p, &g, c)).collect();
    Ok(match format {
        Format::Json => pretty(&views),
        _ => {
            let mut out = String::new();
            for v in &views {
                let classes: Vec<String> = v.classes.iter().map(|c| format!("{{{}}}", c.join(","))).collect();
                let strong = match v.strong {
                    Some(s) => yes_no(s),
                    None => "n/a",
                };
                let _ = writeln!(out, "{}  convex: {}  strong: {}", classes.join(" "), yes_no(v.convex), strong);
            }
            out
        }
    })
}

fn enumerate(
    format: Format,
    n: usize,
    predicate: Option<Predicate>,
    jobs: Option<usize>,
    cap: usize,
) -> Result<String, CliError> {
    if format == Format::Dot {
        return Err(no_dot());
    }
    if let Some(j) = jobs {
        // Fails only if a pool already exists, in which case it is reused.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(j.max(1)).build_global();
    }
    let opts = CensusOptions { cap, ..CensusOptions::from_env() };
    let census = run_census_with(n, &opts)?;

    if let Some(pred) = predicate {
        let hits: Vec<_> = census.entries.iter().filter(|e| e.satisfies(pred)).collect();
        return Ok(match format {
            Format::Json => {
                let list: Vec<_> = hits.iter().map(|e| json!({ "code": e.code, "poset": e.poset })).collect();
                pretty(&json!({ "n": n, "predicate": pred.name(), "matches": list }))
            }
            _ => {
                let mut out = String::new();
                let _ = writeln!(out, "{pred}: {} of {} posets with {n} elements", hits.len(), census.entries.len());
                for e in hits {
                    out.push_str(&write_poset(&format!("c{}", e.code), &e.poset));
                }
                out
            }
        });
    }

    let out = match format {
        Format::Json => pretty(&census),
        _ => {
            let mut out = String::new();
            let count = |f: &dyn Fn(&ClassificationReport) -> bool| {
                census.entries.iter().filter(|e| f(&e.classification)).count()
            };
            let _ = writeln!(out, "posets with {n} elements: {}", census.entries.len());
            let _ = writeln!(
                out,
                "sectionally pseudocomplemented: {}; strongly: {}; lattices: {}; relatively pc: {}",
                count(&|c| c.is_sec_pc),
                count(&|c| c.is_strongly_sec_pc),
                count(&|c| c.is_lattice),
                count(&|c| c.is_rel_pc),
            );
            out.push_str("suite:\n");
            for item in &census.suite {
                let _ = writeln!(
                    out,
                    "  ({}) {}: applicable {}, counterexamples {}",
                    item.id,
                    item.description,
                    item.applicable,
                    item.counterexamples.len()
                );
            }
            out.push_str("predicates:\n");
            for pred in Predicate::ALL {
                let hits = census.entries.iter().filter(|e| e.satisfies(pred)).count();
                let _ = writeln!(out, "  {pred}: {hits}");
            }
            out
        }
    };
    if census.suite_passes() {
        Ok(out)
    } else {
        let witness = census
            .suite
            .iter()
            .flat_map(|s| s.counterexamples.iter().map(move |c| format!("{}:{}", s.id, c.code)))
            .collect();
        let mut e = CliError::math("suite_counterexample", "census suite found counterexamples", witness);
        e.stdout = Some(out);
        Err(e)
    }
}
