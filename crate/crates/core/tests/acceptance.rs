//! Acceptance report: one PASS/FAIL line per criterion, all in exact
//! arithmetic. This target reports rather than asserts, so a criterion
//! that cannot hold as stated shows up as FAIL without aborting the run;
//! the ordinary integration tests assert every property that does hold.

use goldman_forge::verify::{run_suite, SuiteReport, VerifyConfig};
use std::cell::RefCell;
use std::collections::HashMap;
use std::time::{Duration, Instant};

const SEED: u64 = 20240607;

const LIE_SURFACES: [(usize, usize); 4] = [(1, 1), (2, 1), (1, 2), (0, 3)];

struct Line {
    passed: bool,
    detail: String,
}

thread_local! {
    // Criteria 3 and 4 read different checks of the same suite run.
    static CACHE: RefCell<HashMap<(String, usize, usize, Option<u32>), (SuiteReport, Duration)>> =
        RefCell::new(HashMap::new());
}

fn suite(name: &str, g: usize, b: usize, trunc: Option<u32>) -> (SuiteReport, Duration) {
    let key = (name.to_string(), g, b, trunc);
    if let Some(hit) = CACHE.with(|c| c.borrow().get(&key).cloned()) {
        return hit;
    }
    let cfg = VerifyConfig {
        trunc,
        ..VerifyConfig::new(g, b, SEED)
    };
    let start = Instant::now();
    let report = run_suite(name, &cfg).unwrap_or_else(|e| panic!("suite {name} on ({g},{b}) errored: {e}"));
    let out = (report, start.elapsed());
    CACHE.with(|c| c.borrow_mut().insert(key, out.clone()));
    out
}

/// Named checks of `report` all passed with at least `min_cases` cases each.
fn checks_pass(report: &SuiteReport, names: &[&str], min_cases: usize, notes: &mut Vec<String>) -> bool {
    let mut ok = true;
    for n in names {
        match report.check(n) {
            Some(c) if c.passed && c.cases >= min_cases => {}
            Some(c) => {
                ok = false;
                notes.push(format!(
                    "({},{}) {n}: {} cases, {}",
                    report.genus,
                    report.boundaries,
                    c.cases,
                    c.counterexample.as_deref().unwrap_or("too few cases")
                ));
            }
            None => {
                ok = false;
                notes.push(format!("missing check {n}"));
            }
        }
    }
    ok
}

fn over_surfaces(
    name: &str,
    surfaces: &[(usize, usize)],
    checks: &[&str],
    min_cases: usize,
    trunc: Option<u32>,
    budget: Duration,
) -> Line {
    let mut notes = Vec::new();
    let mut passed = true;
    let mut times = Vec::new();
    for &(g, b) in surfaces {
        let (r, t) = suite(name, g, b, trunc);
        passed &= checks_pass(&r, checks, min_cases, &mut notes);
        if t > budget {
            passed = false;
            notes.push(format!("({g},{b}) took {t:.1?}, budget {budget:?}"));
        }
        times.push(format!("({g},{b}) {:.1}s", t.as_secs_f64()));
    }
    let detail = if notes.is_empty() {
        times.join(", ")
    } else {
        notes.join("; ")
    };
    Line { passed, detail }
}

fn main() {
    let minutes = |m: u64| Duration::from_secs(60 * m);
    let criteria: Vec<(&str, Box<dyn Fn() -> Line>)> = vec![
        (
            "Goldman Lie axioms (antisymmetry, Jacobi)",
            Box::new(|| over_surfaces("jacobi", &LIE_SURFACES, &["antisymmetry", "jacobi"], 200, None, minutes(3))),
        ),
        (
            "perturbation independence of bracket and action",
            Box::new(|| {
                over_surfaces("perturbation", &LIE_SURFACES, &["bracket-orderings", "kk-orderings"], 200, None, minutes(3))
            }),
        ),
        (
            "filtration shift of bracket and action at N=6",
            Box::new(|| {
                over_surfaces(
                    "gr-bracket",
                    &LIE_SURFACES,
                    &["bracket-filtration-shift", "kk-filtration-shift"],
                    200,
                    Some(6),
                    minutes(3),
                )
            }),
        ),
        (
            "gr-bracket agreement at N=6",
            Box::new(|| {
                let mut s = LIE_SURFACES.to_vec();
                s.push((0, 4));
                over_surfaces("gr-bracket", &s, &["gr-bracket"], 100, Some(6), minutes(3))
            }),
        ),
        (
            "Kawazumi-Kuno structure (Leibniz, Lie action at N=5, unit, boundary log, kernel at N=4)",
            Box::new(|| {
                over_surfaces(
                    "leibniz",
                    &[(1, 1), (2, 1), (1, 2)],
                    &[
                        "kk-leibniz",
                        "lie-action",
                        "completed-lie-action",
                        "unit-acts-trivially",
                        "boundary-log-annihilated",
                        "kernel-spanned-by-unit",
                    ],
                    1,
                    Some(5),
                    minutes(3),
                )
            }),
        ),
        (
            "Dehn-twist formula on (1,1) at N=5",
            Box::new(|| over_surfaces("twist", &[(1, 1)], &["twist-formula", "boundary-fixed"], 2, Some(5), minutes(2))),
        ),
        (
            "symplectic expansion and KV-type certificate at N=6",
            Box::new(|| {
                over_surfaces(
                    "kvi",
                    &[(1, 1), (2, 1), (1, 2)],
                    &["symplectic-expansion", "omega-image", "gr-identity", "hopf", "boundary-conjugates"],
                    1,
                    Some(6),
                    minutes(5),
                )
            }),
        ),
        (
            "Adams operations (composition, psi_n(I^m) in I^(mn) at N=8, power scaling)",
            Box::new(|| {
                over_surfaces(
                    "adams",
                    &[(1, 1)],
                    &["composition", "filtration-product-bound", "symmetric-power-scaling"],
                    1,
                    Some(8),
                    minutes(3),
                )
            }),
        ),
        (
            "bar suite (d^2, shuffle, coproduct, dual_cs, hat identities)",
            Box::new(|| {
                over_surfaces(
                    "bar",
                    &LIE_SURFACES,
                    &[
                        "d-squared-open",
                        "shuffle-multiplicativity",
                        "coproduct-path-composition",
                        "dual-cs-conjugation",
                        "hat-identity-cs",
                        "hat-identity-kk",
                    ],
                    100,
                    None,
                    minutes(3),
                )
                .and(over_surfaces("bar", &[(1, 1), (2, 1)], &["d-squared-closed"], 1, None, minutes(3)))
            }),
        ),
        (
            "resolution exactness for g = 1, 2, 3 and n <= 6",
            Box::new(|| {
                let mut line = over_surfaces("resolution", &[(1, 1), (2, 1), (3, 1)], &["exactness"], 7, Some(6), minutes(1));
                line = line.and(over_surfaces("resolution", &[(1, 1)], &["genus-one-dimensions"], 7, Some(6), minutes(1)));
                line
            }),
        ),
        (
            "bi-pairing (bilinearity, degree shift, non-crossing, (0,4) example)",
            Box::new(|| {
                over_surfaces(
                    "bipair",
                    &[(0, 4), (1, 2)],
                    &["bilinearity", "degree-shift", "non-crossing-vanishes", "sphere-four-holes-example"],
                    1,
                    Some(6),
                    minutes(3),
                )
            }),
        ),
    ];

    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let line = run();
        if !line.passed {
            failed += 1;
        }
        println!(
            "{} criterion {:>2}: {name} [{}]",
            if line.passed { "PASS" } else { "FAIL" },
            i + 1,
            line.detail
        );
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
}

impl Line {
    fn and(self, other: Line) -> Line {
        Line {
            passed: self.passed && other.passed,
            detail: format!("{}; {}", self.detail, other.detail),
        }
    }
}
