//! Acceptance suite. Each test covers one criterion and writes a single
//! `criterion N: PASS|FAIL` line to stdout (bypassing capture), then asserts.

use std::collections::BTreeSet;
use std::io::Write;
use std::path::PathBuf;
use std::sync::OnceLock;
use std::time::{Duration, Instant};

use rayon::prelude::*;

use recplane::arrangement::{Arrangement, ArrangementSpec, FieldSpec};
use recplane::caps::Caps;
use recplane::cli;
use recplane::corpus::{self, CorpusReport};
use recplane::groebner::{groebner_ideal, ideal_equal, is_groebner};
use recplane::linalg;
use recplane::modgroebner::{is_module_groebner, module_groebner, Label, ModuleElement, ModuleOrder};
use recplane::oracle::{count_points, hilbert, kernel_i, kernel_k_degree_with, verify_groebner_lemma, xi_to_module};
use recplane::poly::{Polynomial, Var};
use recplane::relations::{commutative_generators, t_ring, RelationMode};
use recplane::superalg::{ExtSubset, XiElement};
use recplane::text::{parse_ext, parse_polynomial};
use recplane::Field;

const LIMIT_PRESENTATION: Duration = Duration::from_secs(5);
const LIMIT_FULL_F2: Duration = Duration::from_secs(60);
const LIMIT_CORPUS: Duration = Duration::from_secs(30 * 60);
const LIMIT_MODULE_FAMILY: Duration = Duration::from_secs(10 * 60);
const LIMIT_POINTS: Duration = Duration::from_secs(10 * 60);
const LIMIT_SELF_CONSISTENCY: Duration = Duration::from_secs(10 * 60);
const HILBERT_DEGREE: usize = 10;

fn line(n: usize, what: &str, ok: bool, elapsed: Duration, limit: Duration, note: &str) {
    let pass = ok && elapsed <= limit;
    let status = if pass { "PASS" } else { "FAIL" };
    let mut out = std::io::stdout().lock();
    let _ = writeln!(out, "criterion {n:>2}: {status}  {what} [{note}; {elapsed:.2?}, limit {limit:?}]");
    assert!(ok, "criterion {n} failed: {note}");
    assert!(elapsed <= limit, "criterion {n} exceeded {limit:?}: {elapsed:?}");
}

fn data(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/data")
        .join(name)
        .to_string_lossy()
        .into_owned()
}

fn cli_run(args: &[&str]) -> (i32, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = cli::run(std::iter::once("recplane").chain(args.iter().copied()), &mut out, &mut err);
    (code, String::from_utf8(out).unwrap() + &String::from_utf8(err).unwrap())
}

fn corpus_run() -> &'static (CorpusReport, Duration) {
    static RUN: OnceLock<(CorpusReport, Duration)> = OnceLock::new();
    RUN.get_or_init(|| {
        let t = Instant::now();
        let specs = corpus::generate(corpus::DEFAULT_SEED);
        let report = corpus::run(&specs, corpus::DEFAULT_SEED, &Caps::default());
        (report, t.elapsed())
    })
}

/// Status of `check` on every instance selected by `keep`: (instances selected, passes).
fn tally(report: &CorpusReport, check: &str, keep: impl Fn(&ArrangementSpec) -> bool) -> (usize, usize) {
    let mut selected = 0;
    let mut passed = 0;
    for inst in report.instances.iter().filter(|i| keep(&i.spec)) {
        selected += 1;
        if inst.checks.iter().any(|c| c.check == check && c.passed()) {
            passed += 1;
        }
    }
    (selected, passed)
}

fn is_finite(s: &ArrangementSpec) -> bool {
    matches!(s.field, FieldSpec::Prime { .. })
}

/// Rank of the form matrix by plain row reduction.
fn form_rank(s: &ArrangementSpec) -> usize {
    let field = match s.field {
        FieldSpec::Prime { p } => Field::Prime(p),
        FieldSpec::Rational => Field::Rational,
    };
    let rows: Vec<Vec<_>> = s
        .hyperplanes
        .iter()
        .map(|v| v.iter().map(|&c| field.from_i64(c)).collect())
        .collect();
    linalg::rank(&rows)
}

/// Every nonzero vector of `F_2^n` as a form.
fn full_f2(n: usize) -> Arrangement {
    let forms: Vec<Vec<i64>> = (1..1u32 << n)
        .map(|k| (0..n).map(|b| ((k >> b) & 1) as i64).collect())
        .collect();
    Arrangement::from_ints(Field::Prime(2), n, &forms).unwrap()
}

#[test]
fn criterion_01_four_lines_presentation() {
    let t = Instant::now();
    let (code, json) = cli_run(&["presentation", "--format", "json", &data("e1.json")]);
    let doc: serde_json::Value = serde_json::from_str(&json).unwrap();
    let elements: Vec<&str> = doc["generators"]
        .as_array()
        .unwrap()
        .iter()
        .map(|g| g["element"].as_str().unwrap())
        .collect();
    let exact = code == 0 && elements == ["t2*t3*t4 + t1*t3*t4 + t1*t2*t4 + t1*t2*t3"];
    let (vcode, text) = cli_run(&["verify", "--check", "theorem1", &data("e1.json")]);
    let verified = vcode == 0 && text.contains(": pass");
    line(
        1,
        "E1 presentation and elimination oracle",
        exact && verified,
        t.elapsed(),
        LIMIT_PRESENTATION,
        &format!("generators {elements:?}, theorem1 exit {vcode}"),
    );
}

#[test]
fn criterion_02_three_lines_super_relations() {
    let t = Instant::now();
    let (code, json) = cli_run(&["presentation", "--super", "--format", "json", &data("e2.json")]);
    let doc: serde_json::Value = serde_json::from_str(&json).unwrap();
    let arr = Arrangement::from_ints(Field::Rational, 2, &[vec![1, 0], vec![0, 1], vec![-1, -1]]).unwrap();
    let ring = t_ring(&arr);
    let emitted: Vec<XiElement> = doc["generators"]
        .as_array()
        .unwrap()
        .iter()
        .map(|g| parse_ext(g["element"].as_str().unwrap(), &ring).unwrap())
        .collect();
    let targets = ["u2*t1 + u2*t3 - u1*t3 - u3*t1", "u1*u2 + u2*u3 + u3*u1"];
    let found: Vec<bool> = targets
        .iter()
        .map(|s| {
            let target: XiElement = parse_ext(s, &ring).unwrap();
            emitted.iter().any(|e| *e == target || *e == target.neg())
        })
        .collect();
    line(
        2,
        "E2 super presentation contains both worked relations up to sign",
        code == 0 && found.iter().all(|&f| f),
        t.elapsed(),
        LIMIT_PRESENTATION,
        &format!("found {found:?} among {} generators", emitted.len()),
    );
}

#[test]
fn criterion_03_full_f2_arrangements() {
    let t = Instant::now();
    let mut notes = Vec::new();
    let mut ok = true;
    for n in [2usize, 3] {
        let arr = full_f2(n);
        let ring = t_ring(&arr);
        let circuit_ideal = commutative_generators(&arr, RelationMode::Circuits, &Caps::default())
            .unwrap()
            .polynomials();
        // Forms are indexed by their bitmask k, so α + β + γ = 0 means k_α ^ k_β ^ k_γ = 0.
        let m = arr.m();
        let mut triples = Vec::new();
        for a in 1..=m {
            for b in a + 1..=m {
                let c = a ^ b;
                if c > b {
                    let text = format!("t{a}*t{b} + t{a}*t{c} + t{b}*t{c}");
                    triples.push(parse_polynomial(&text, &ring).unwrap());
                }
            }
        }
        let equal = ideal_equal(&circuit_ideal, &triples);
        ok &= equal;
        notes.push(format!("n={n}: m={m}, {} triples, equal={equal}", triples.len()));
    }
    line(3, "full F_2 arrangements: circuit ideal = triple ideal", ok, t.elapsed(), LIMIT_FULL_F2, &notes.join("; "));
}

#[test]
fn criterion_04_corpus_super_presentation() {
    let (report, elapsed) = corpus_run();
    let (selected, passed) = tally(report, "theorem2", |_| true);
    let degrees_complete = report.instances.iter().all(|inst| {
        inst.checks.iter().filter(|c| c.check == "theorem2").all(|c| {
            let m = inst.spec.hyperplanes.len();
            c.details["degrees"].as_array().is_some_and(|d| d.len() == m + 1)
        })
    });
    let expected = corpus::FINITE_RANGES
        .iter()
        .map(|&(p, n, m)| corpus::finite_instances(p, n, m).len())
        .sum::<usize>()
        + corpus::RANDOM_RATIONAL;
    line(
        4,
        "module equality per Grassmann degree over the corpus",
        selected == expected && passed == selected && degrees_complete && report.errors == 0,
        *elapsed,
        LIMIT_CORPUS,
        &format!("{passed}/{selected} instances (expected {expected}), errors {}", report.errors),
    );
}

#[test]
fn criterion_05_minimal_relations() {
    let (report, elapsed) = corpus_run();
    let eligible = |s: &ArrangementSpec| is_finite(s) && s.hyperplanes.len() - form_rank(s) >= 2;
    let (selected, passed) = tally(report, "minimal", eligible);
    let expected = report.instances.iter().filter(|i| eligible(&i.spec)).count();
    line(
        5,
        "circuit generators equal all-relation generators",
        selected == expected && passed == selected && selected > 0,
        *elapsed,
        LIMIT_CORPUS,
        &format!("{passed}/{selected} finite instances with m - rank >= 2"),
    );
}

#[test]
fn criterion_06_relation_identities() {
    let (report, elapsed) = corpus_run();
    let (selected, passed) = tally(report, "lemma7", |_| true);
    let pairs: u64 = report
        .instances
        .iter()
        .flat_map(|i| i.checks.iter().filter(|c| c.check == "lemma7"))
        .map(|c| c.details["pairs"].as_u64().unwrap())
        .sum();
    line(
        6,
        "Q_{L,S} in the module and both identities",
        passed == selected && selected == report.instances.len(),
        *elapsed,
        LIMIT_CORPUS,
        &format!("{passed}/{selected} instances, {pairs} (L, S) pairs"),
    );
}

#[test]
fn criterion_07_module_family_is_groebner() {
    let t = Instant::now();
    let mut specs = corpus::finite_instances(2, 3, 4);
    for name in ["e1.json", "e3.json"] {
        specs.push(cli::load_spec(std::path::Path::new(&data(name))).unwrap());
    }
    let caps = Caps::default();
    let results: Vec<(bool, usize)> = specs
        .par_iter()
        .flat_map(|s| {
            let arr = s.build().unwrap();
            (0..=2usize)
                .map(|r| match verify_groebner_lemma(&arr, r, &caps) {
                    Ok(rep) => (rep.passed(), rep.details["family"].as_u64().unwrap() as usize),
                    Err(_) => (false, 0),
                })
                .collect::<Vec<_>>()
        })
        .collect();
    let passed = results.iter().filter(|r| r.0).count();
    let largest = results.iter().map(|r| r.1).max().unwrap_or(0);
    line(
        7,
        "S-vector remainders vanish for the explicit family over F_2",
        passed == results.len(),
        t.elapsed(),
        LIMIT_MODULE_FAMILY,
        &format!("{passed}/{} (instance, r) pairs, largest family {largest}", results.len()),
    );
}

#[test]
fn criterion_08_point_counts() {
    let t = Instant::now();
    let caps = Caps::default();
    let e3 = Arrangement::from_ints(Field::Prime(2), 2, &[vec![1, 0], vec![0, 1], vec![1, 1]]).unwrap();
    let c = count_points(&e3, &caps).unwrap();
    let by_dim = |d: usize| -> u128 { c.per_flat.iter().filter(|f| f.quotient_dim == d).map(|f| f.points).sum() };
    let e3_ok = (c.lhs, by_dim(0), by_dim(1), by_dim(2)) == (4, 1, 3, 0);

    let mut specs = Vec::new();
    for m in 1..=7 {
        specs.extend(corpus::finite_instances(2, 3, m).into_iter().filter(|s| s.hyperplanes.len() == m));
    }
    for m in 1..=5 {
        specs.extend(corpus::finite_instances(3, 2, m).into_iter().filter(|s| s.hyperplanes.len() == m));
    }
    specs.push(cli::load_spec(std::path::Path::new(&data("e1.json"))).unwrap());
    let failures: Vec<String> = specs
        .par_iter()
        .filter_map(|s| {
            let arr = s.build().unwrap();
            match count_points(&arr, &caps) {
                Ok(c) if c.lhs == c.rhs => None,
                Ok(c) => Some(format!("{:?}: {} vs {}", s.hyperplanes, c.lhs, c.rhs)),
                Err(e) => Some(format!("{:?}: {e}", s.hyperplanes)),
            }
        })
        .collect();
    let full = full_f2(3);
    let full_ok = count_points(&full, &caps).is_ok_and(|c| c.lhs == c.rhs);
    line(
        8,
        "point counts equal the flat stratification",
        e3_ok && failures.is_empty() && full_ok,
        t.elapsed(),
        LIMIT_POINTS,
        &format!(
            "E3 {} = {} + {} + {}; {} instances, {} mismatches",
            c.lhs,
            by_dim(0),
            by_dim(1),
            by_dim(2),
            specs.len() + 1,
            failures.len()
        ),
    );
}

#[test]
fn criterion_09_engine_self_consistency() {
    let t = Instant::now();
    let (report, _) = corpus_run();
    let (selected, consistent) = tally(report, "kernel-consistency", |_| true);
    let a_ok = selected == consistent && selected == report.instances.len();

    let caps = Caps::default();
    let specs: Vec<ArrangementSpec> = report.instances.iter().map(|i| i.spec.clone()).collect();
    let outcomes: Vec<[bool; 3]> = specs
        .par_iter()
        .map(|s| {
            let arr = s.build().unwrap();
            let hilbert_ok = [false, true].iter().all(|&sup| {
                hilbert(&arr, sup, HILBERT_DEGREE, &caps).is_ok_and(|h| h.agrees())
            });
            let kernel = kernel_i(&arr);
            let ideal_gb = groebner_ideal(&kernel);
            let ring = t_ring(&arr);
            let rank_one: Vec<ModuleElement> = kernel
                .iter()
                .map(|g| ModuleElement::from_entries(&ring, ModuleOrder::Top, [(Label::subset(ExtSubset::empty()), g.clone())]))
                .collect();
            let module_gb: Vec<Polynomial> = module_groebner(&rank_one)
                .iter()
                .map(|v| v.entry(Label::subset(ExtSubset::empty())))
                .collect();
            let rank_one_ok = module_gb == ideal_gb;
            let mut post_ok = is_groebner(&ideal_gb);
            for r in 1..=arr.m() {
                let gens: Vec<ModuleElement> = kernel_k_degree_with(&arr, r, &kernel)
                    .iter()
                    .map(|e| xi_to_module(e, ModuleOrder::Top))
                    .collect();
                post_ok &= is_module_groebner(&module_groebner(&gens));
            }
            [hilbert_ok, rank_one_ok, post_ok]
        })
        .collect();
    let count = |k: usize| outcomes.iter().filter(|o| o[k]).count();
    let n = outcomes.len();
    line(
        9,
        "kernel paths, Hilbert methods, rank-1 modules, Buchberger postcondition",
        a_ok && count(0) == n && count(1) == n && count(2) == n,
        t.elapsed(),
        LIMIT_SELF_CONSISTENCY,
        &format!(
            "(a) {consistent}/{selected}; (b) {}/{n} to degree {HILBERT_DEGREE}; (c) {}/{n}; (d) {}/{n}",
            count(0),
            count(1),
            count(2)
        ),
    );
}

#[test]
fn criterion_10_deterministic_reports() {
    let (first, _) = corpus_run();
    let t = Instant::now();
    let specs = corpus::generate(corpus::DEFAULT_SEED);
    let second = corpus::run(&specs, corpus::DEFAULT_SEED, &Caps::default());
    let (a, b) = (first.to_json(), second.to_json());
    let distinct: BTreeSet<&str> = [a.as_str(), b.as_str()].into_iter().collect();
    line(
        10,
        "two corpus runs give byte-identical JSON",
        distinct.len() == 1,
        t.elapsed(),
        LIMIT_CORPUS,
        &format!("{} bytes", a.len()),
    );
}

#[test]
fn t_variables_are_named_consistently() {
    // Guard for the fixtures above: variable ranks follow t_m > … > t_1.
    let arr = full_f2(2);
    let ring = t_ring(&arr);
    assert_eq!(ring.vars(), &[Var::T(3), Var::T(2), Var::T(1)]);
}
