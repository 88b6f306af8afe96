//! One verdict line per acceptance criterion.
//!
//! Criteria listed in `KNOWN_UNATTAINABLE` are expected to fail, and only
//! through the sub-checks named in `EXPECTED_FAILURES`; everything else
//! must pass. Tolerances are the constants below.

mod common;

use std::time::Instant;

use theta_adhm::adhm::Mode;
use theta_adhm::report::Report;
use theta_adhm::suites::{run_suite, SuiteConfig};

const KNOWN_UNATTAINABLE: [u32; 3] = [2, 4, 10];

/// Wall-clock limits in seconds, indexed by criterion.
const LIMITS: [(u32, f64); 9] = [(1, 5.0), (2, 5.0), (3, 120.0), (4, 10.0), (5, 600.0), (6, 300.0), (7, 600.0), (8, 120.0), (11, 120.0)];
/// Classical runs may take at most this multiple of the deformed runtime...
const CLASSICAL_RATIO: f64 = 2.0;
/// ...plus this much absolute slack for millisecond-scale suites.
const CLASSICAL_SLACK_S: f64 = 0.5;
const MAX_CERTIFICATE_DEGREE: u32 = 8;
const PROPERTY_CASES: u64 = 256;
const MIN_PROPERTY_CASES: u64 = 200;

const EXPECTED_FAILURES: [(u32, &[&str]); 3] = [
    (
        2,
        &[
            "J-table x3",
            "J-table x3'",
            "J-table y2",
            "J-table y3",
            "J-table y2'",
            "J-table y3'",
            "image of x as printed",
            "image of beta as printed",
            "image of beta as printed is J-fixed",
            "S4 relation on printed CP3 images",
        ],
    ),
    (4, &["Q matches displayed matrix as printed"]),
    (
        10,
        &[
            "criterion 2: image of x as printed",
            "criterion 2: S4 relation on printed CP3 images",
            "criterion 4: Q matches displayed matrix as printed",
        ],
    ),
];

/// Corrected counterparts that must pass inside an unattainable criterion.
const CORRECTED: [(u32, &[&str]); 2] = [
    (2, &["image of x corrected", "image of beta corrected", "image of beta corrected is J-fixed", "S4 relation on corrected CP3 images"]),
    (4, &["Q matches displayed matrix corrected"]),
];

struct Outcome {
    failures: Vec<String>,
    secs: f64,
    summary: String,
    report: Option<Report>,
}

fn limit(n: u32) -> Option<f64> {
    LIMITS.iter().find(|(c, _)| *c == n).map(|(_, s)| *s)
}

fn suite(name: &str, k: Option<usize>, mode: Option<Mode>, theta_zero: bool) -> (Report, f64) {
    let cfg = SuiteConfig { k, mode, theta_zero, ..SuiteConfig::default() };
    let t = Instant::now();
    let r = run_suite(name, &cfg).expect("known suite");
    (r, t.elapsed().as_secs_f64())
}

/// Failing or missing checks; `required` empty means the whole report.
fn failures(r: &Report, required: &[&str]) -> Vec<String> {
    if required.is_empty() {
        return r.failures().iter().map(|c| c.name.clone()).collect();
    }
    required
        .iter()
        .filter(|n| !r.check(n).is_some_and(|c| c.passed()))
        .map(|n| n.to_string())
        .collect()
}

fn from_suite(r: Report, secs: f64, required: &[&str]) -> Outcome {
    let f = failures(&r, required);
    let mut summary = format!("{}: {} checks, {} failing", r.suite, r.checks.len(), r.failures().len());
    let outside: Vec<&str> = r.failures().iter().map(|c| c.name.as_str()).filter(|n| !f.iter().any(|x| x == n)).collect();
    if !required.is_empty() && !outside.is_empty() {
        summary.push_str(&format!(" outside this criterion ({})", outside.join(", ")));
    }
    Outcome { failures: f, secs, summary, report: Some(r) }
}

fn criterion(n: u32, theta_zero: bool) -> Outcome {
    match n {
        1 => {
            let (r, s) = suite("basic", None, None, theta_zero);
            from_suite(r, s, &[])
        }
        2 => {
            let (r, s) = suite("twistor", None, None, theta_zero);
            from_suite(r, s, &[])
        }
        3 => {
            let (r, s) = suite("asd", None, None, theta_zero);
            let mut o = from_suite(r, s, &["curvature of 1 - q is of type (1,1)", "curvature of q has a (2,0) or (0,2) part"]);
            o.failures.extend(failures(o.report.as_ref().unwrap(), &[]));
            o.failures.dedup();
            o
        }
        4 => {
            let (r, s) = suite("monad", Some(1), Some(Mode::Tautological), theta_zero);
            let mut o = from_suite(r, s, &[]);
            o.failures.extend(failures(o.report.as_ref().unwrap(), &["tau sigma = 0", "Tr Q = 2k", "V_1* V_1 = 1 (x) q"]));
            o
        }
        5 => {
            let (r, s) = suite("monad", Some(2), Some(Mode::Symbolic), theta_zero);
            let required = [
                "parameter generators",
                "sigma_J* sigma lies in the monad ideal",
                "rho^2 entries commute with sigma entries",
                "Q^2 = Q",
                "Q = Q*",
                "Q_J Q_z = 0",
                "Tr Q_z = k",
            ];
            let mut o = from_suite(r, s, &[]);
            let rep = o.report.as_ref().unwrap();
            o.failures.extend(failures(rep, &required));
            for c in &rep.checks {
                if c.degree_bound.is_some_and(|d| d > MAX_CERTIFICATE_DEGREE) {
                    o.failures.push(format!("{} used degree bound above {MAX_CERTIFICATE_DEGREE}", c.name));
                }
            }
            o
        }
        6 => {
            let (r, s) = suite("gauge", Some(2), Some(Mode::Symbolic), theta_zero);
            let n_b = r.checks.iter().filter(|c| c.name.ends_with("P unchanged")).count();
            let n_a = r.checks.iter().filter(|c| c.name.ends_with("P -> A P A*")).count();
            let mut o = from_suite(r, s, &[]);
            if n_b < 4 || n_a < 2 {
                o.failures.push(format!("only {n_b} B and {n_a} A transformations"));
            }
            o
        }
        7 => {
            let (r, s) = suite("qgroup", None, None, theta_zero);
            from_suite(
                r,
                s,
                &[
                    "coaction respects every relation of C4",
                    "Delta(r^2) = 1 (x) r^2 modulo Sp(2)",
                    "Delta(omega) = 1 (x) omega modulo Sp(2)",
                    "q~^2 = q~",
                    "q~ = q~*",
                    "Tr q~ = 2",
                ],
            )
        }
        8 => {
            let (r, s) = suite("charge-one-family", None, None, theta_zero);
            from_suite(r, s, &[])
        }
        9 => {
            let (r, s) = suite("count", None, None, theta_zero);
            let mut o = from_suite(r, s, &[]);
            let want: Vec<i64> = (1..=10).map(|k| 8 * k - 3).collect();
            let got: Vec<i64> = (1..=10u64).map(theta_adhm::adhm::parameter_count).collect();
            if want != got || got[..3] != [5, 13, 21] || got[9] != 77 {
                o.failures.push(format!("counts {got:?}"));
            }
            o
        }
        10 => classical_limit(),
        11 => properties(),
        _ => unreachable!(),
    }
}

fn classical_limit() -> Outcome {
    let t = Instant::now();
    let mut f = Vec::new();
    for n in 1..=8 {
        let deformed = criterion(n, false);
        let classical = criterion(n, true);
        f.extend(classical.failures.iter().map(|x| format!("criterion {n}: {x}")));
        if classical.secs > CLASSICAL_RATIO * deformed.secs + CLASSICAL_SLACK_S {
            f.push(format!("criterion {n}: classical run {:.2}s against {:.2}s", classical.secs, deformed.secs));
        }
        if n == 2 && !classical.report.as_ref().and_then(|r| r.check("alpha beta = beta alpha")).is_some_and(|c| c.passed()) {
            f.push("alpha beta - beta alpha does not vanish classically".into());
        }
    }
    Outcome { failures: f, secs: t.elapsed().as_secs_f64(), summary: "criteria 1-8 at mu = 1".into(), report: None }
}

fn properties() -> Outcome {
    let t = Instant::now();
    let mut f = Vec::new();
    for (i, (name, prop)) in common::PROPERTIES.iter().enumerate() {
        let mut ran = 0;
        for case in 0..PROPERTY_CASES {
            let seed = 0x5eed_0000 + 1000 * i as u64 + case;
            if let Err(e) = prop(seed) {
                f.push(format!("{name} seed {seed}: {e}"));
            }
            ran += 1;
        }
        if ran < MIN_PROPERTY_CASES {
            f.push(format!("{name}: only {ran} cases"));
        }
    }
    Outcome {
        failures: f,
        secs: t.elapsed().as_secs_f64(),
        summary: format!("{} properties x {PROPERTY_CASES} seeded cases", common::PROPERTIES.len()),
        report: None,
    }
}

#[test]
fn acceptance() {
    let mut verdicts = Vec::new();
    let mut problems = Vec::new();
    for n in 1..=11 {
        let mut o = criterion(n, false);
        if let Some(l) = limit(n) {
            if o.secs > l {
                o.failures.push(format!("runtime {:.1}s exceeds {l}s", o.secs));
            }
        }
        let ok = o.failures.is_empty();
        let detail = if ok { o.summary.clone() } else { format!("{}; failing: {}", o.summary, o.failures.join(", ")) };
        println!("criterion {n:>2}: {} ({:.2}s) {detail}", if ok { "PASS" } else { "FAIL" }, o.secs);
        verdicts.push((n, ok));

        let expected = EXPECTED_FAILURES.iter().find(|(c, _)| *c == n).map(|(_, e)| *e);
        match (KNOWN_UNATTAINABLE.contains(&n), expected) {
            (true, Some(e)) => {
                let mut got = o.failures.clone();
                got.sort();
                let mut want: Vec<String> = e.iter().map(|s| s.to_string()).collect();
                want.sort();
                if got != want {
                    problems.push(format!("criterion {n} failures {got:?} differ from the documented {want:?}"));
                }
            }
            (false, _) if !ok => problems.push(format!("criterion {n} failed: {:?}", o.failures)),
            _ => {}
        }
        if let (Some(r), Some((_, names))) = (&o.report, CORRECTED.iter().find(|(c, _)| *c == n)) {
            let bad = failures(r, names);
            if !bad.is_empty() {
                problems.push(format!("criterion {n}: corrected forms fail: {bad:?}"));
            }
        }
    }
    let passed = verdicts.iter().filter(|(_, ok)| *ok).count();
    println!("{passed}/11 criteria pass; known unattainable: {KNOWN_UNATTAINABLE:?}");
    assert!(problems.is_empty(), "{}", problems.join("\n"));
}
