//! End-to-end acceptance checks over exhaustive desk-scale corpora.
//! Each test prints a single pass line on success; a failure panics with
//! the offending report.

use qgal::algebra::Variety;
use qgal::catalog::{enumerate_algebras, enumerate_extension_cubes, naive_quandle_count, rack_like_of_order};
use qgal::extension::is_nfold_extension;
use qgal::galois::Structure;
use qgal::sweeps;
use std::time::Instant;

fn pass(n: usize, what: &str) {
    use std::io::Write;
    // Write to the raw fd so the line survives the harness's output capture.
    if let Ok(mut out) = std::fs::OpenOptions::new().append(true).open("/dev/stderr") {
        let _ = writeln!(out, "ACCEPTANCE {n}: PASS — {what}");
    }
}

#[test]
fn criterion_01_quandle_catalog_counts() {
    let start = Instant::now();
    let expected = [1usize, 1, 3, 7, 22];
    for (i, &want) in expected.iter().enumerate() {
        let n = i + 1;
        let pruned = rack_like_of_order(Variety::Quandle, n, false).len();
        assert_eq!(pruned, want, "pruned quandle count at order {n}");
        if n <= 4 {
            assert_eq!(naive_quandle_count(n), want, "naive quandle count at order {n}");
        } else {
            // Cross-seed the pruned generator with the reversed search
            // order; an enumeration bug would disturb the counts.
            assert_eq!(rack_like_of_order(Variety::Quandle, n, true).len(), want);
        }
    }
    let elapsed = start.elapsed();
    assert!(elapsed.as_secs() < 60, "catalog took {elapsed:?}");
    pass(1, &format!("quandle counts 1,1,3,7,22 by two generators in {elapsed:?}"));
}

#[test]
fn criterion_02_calculus_lemmas() {
    let start = Instant::now();
    let q = sweeps::calculus_lemmas_suite(Variety::Quandle, 4).unwrap();
    assert!(q.is_clean(), "quandle calculus failures: {:?}", q.checks);
    let g = sweeps::calculus_lemmas_suite(Variety::Group, 8).unwrap();
    assert!(g.is_clean(), "group calculus failures: {:?}", g.checks);
    let elapsed = start.elapsed();
    assert!(elapsed.as_secs() < 600, "calculus suite took {elapsed:?}");
    pass(
        2,
        &format!(
            "calculus lemmas: {} quandle + {} group instances, zero counterexamples in {elapsed:?}",
            q.total_cases(),
            g.total_cases()
        ),
    );
}

#[test]
fn criterion_03_direction_independence() {
    // The extension check asserts agreement across every viewing
    // direction internally; any disagreement surfaces as a property
    // error. Exercise it over the full square and 3-cube corpora.
    let mut cubes = 0usize;
    for (variety, max_order, b2, b3) in
        [(Variety::Quandle, 4, 150, 60), (Variety::Group, 6, 150, 60)]
    {
        let cat = enumerate_algebras(variety, max_order).unwrap();
        for n in [2usize, 3] {
            let budget = if n == 2 { b2 } else { b3 };
            for cube in enumerate_extension_cubes(&cat, n, budget).unwrap() {
                is_nfold_extension(&cube).unwrap();
                cubes += 1;
            }
        }
    }
    pass(3, &format!("direction independence on {cubes} squares and 3-cubes, zero disagreements"));
}

#[test]
fn criterion_04_df_equivalence_and_closure() {
    let q = sweeps::df_closure_suite(Variety::Quandle, 4, 80).unwrap();
    assert!(q.is_clean(), "quandle DF failures: {:?}", q.checks);
    let g = sweeps::df_closure_suite(Variety::Group, 6, 80).unwrap();
    assert!(g.is_clean(), "group DF failures: {:?}", g.checks);
    pass(
        4,
        &format!(
            "discrete-fibration equivalence and closure: {} instances, zero counterexamples",
            q.total_cases() + g.total_cases()
        ),
    );
}

#[test]
fn criterion_05_strong_birkhoff() {
    let q = sweeps::birkhoff_suite(Structure::QuandlePi0, 4).unwrap();
    assert!(q.is_clean(), "quandle Birkhoff failures: {:?}", q.checks);
    let g = sweeps::birkhoff_suite(Structure::GroupAb, 8).unwrap();
    assert!(g.is_clean(), "group Birkhoff failures: {:?}", g.checks);
    pass(
        5,
        &format!(
            "strong Birkhoff: {} reflection squares are double extensions",
            q.total_cases() + g.total_cases()
        ),
    );
}

#[test]
fn criterion_06_covering_theory_level0() {
    let f = sweeps::factorisation_suite(Structure::QuandlePi0, 4).unwrap();
    assert!(f.is_clean(), "factorisation failures: {:?}", f.checks);
    assert_eq!(f.total_unknowns(), 0);
    let s = sweeps::quotient_stability_suite(Structure::QuandlePi0, 4, 150).unwrap();
    assert!(s.is_clean(), "quotient stability failures: {:?}", s.checks);
    pass(
        6,
        &format!(
            "level-0 covering theory: {} instances, zero failures",
            f.total_cases() + s.total_cases()
        ),
    );
}

#[test]
fn criterion_07_centralisation_minimality() {
    let start = Instant::now();
    let report = sweeps::centralisation_suite(Structure::QuandlePi0, 5).unwrap();
    assert!(report.is_clean(), "centralisation failures: {:?}", report.checks);
    let elapsed = start.elapsed();
    assert!(elapsed.as_secs() < 900, "centralisation suite took {elapsed:?}");
    pass(
        7,
        &format!(
            "centralisation: {} instances minimal against full congruence lattices in {elapsed:?}",
            report.total_cases()
        ),
    );
}

#[test]
fn criterion_08_main_theorem_order1_quandles() {
    let report = sweeps::main_theorem_suite(Structure::QuandlePi0, 1, 4, 12, 0).unwrap();
    assert_eq!(report.witness_yes_oracle_no, 0, "hard failures: {:?}", report.failures);
    assert_eq!(report.oracle_yes_bound_exhausted, 0, "exhaustions: {:?}", report.failures);
    assert_eq!((report.total, report.agree_yes, report.agree_no), (181, 163, 18));
    pass(8, "order-1 main theorem on quandles ≤ 4: 163 witnessed coverings, 18 agreed refusals");
}

#[test]
fn criterion_09_main_theorem_order2_groups() {
    let report = sweeps::main_theorem_suite(Structure::GroupAb, 2, 8, 8, 150).unwrap();
    assert_eq!(report.witness_yes_oracle_no, 0, "hard failures: {:?}", report.failures);
    assert_eq!(report.oracle_yes_bound_exhausted, 0, "exhaustions: {:?}", report.failures);
    assert_eq!((report.total, report.agree_yes, report.agree_no), (115, 101, 14));
    pass(9, "order-2 main theorem on groups ≤ 8: 101 witnessed double coverings, 14 agreed refusals");
}

#[test]
fn criterion_10_symmetry_lemma() {
    let g = sweeps::symmetry_suite(Structure::GroupAb, 8, 150).unwrap();
    assert!(g.is_clean(), "group symmetry failures: {:?}", g.checks);
    assert_eq!(g.total_unknowns(), 0);
    let q = sweeps::symmetry_suite(Structure::QuandlePi0, 4, 150).unwrap();
    assert!(q.is_clean(), "quandle symmetry failures: {:?}", q.checks);
    pass(
        10,
        &format!(
            "symmetry lemma: {} squares trivial in both views, oracle transpose-invariant",
            g.total_cases() + q.total_cases()
        ),
    );
}

#[test]
fn criterion_11_deterministic_reports() {
    let bin = env!("CARGO_BIN_EXE_qgal");
    let run = |threads: &str, suite: &[&str]| {
        let out = std::process::Command::new(bin)
            .args(suite)
            .env("QGAL_THREADS", threads)
            .output()
            .expect("run qgal");
        assert!(out.status.code().is_some(), "qgal crashed");
        out.stdout
    };
    for suite in [
        &["sweep", "birkhoff", "--structure", "quandle-pi0", "--order-max", "4"][..],
        &["sweep", "main-theorem", "--structure", "quandle-pi0", "--order-max", "3", "--dim", "1"][..],
    ] {
        let one = run("1", suite);
        let four = run("4", suite);
        assert!(!one.is_empty());
        assert_eq!(one, four, "report bytes differ between thread counts for {suite:?}");
    }
    pass(11, "reports byte-identical across QGAL_THREADS=1 and 4");
}
