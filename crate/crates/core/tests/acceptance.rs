//! Acceptance criteria. Each criterion prints one PASS/FAIL line; the test
//! fails if any criterion fails. Run with `--nocapture` to see the lines.

use std::process::Command;
use std::time::{Duration, Instant};

use num_traits::Zero;
use rcentral::bell::{
    central_bell_poly, dobinski_eval, r_central_bell_poly, r_central_bell_via_convolution,
    r_central_bell_via_difference, r_central_bell_via_stirling,
};
use rcentral::central_numbers::{
    r_second_kind, r_second_kind_by_convolution, second_kind, triangle_via_gf, DEFAULT_ORDER,
};
use rcentral::first_kind::{
    first_kind, r_first_kind_via_gf, r_first_kind_via_poly, r_first_kind_via_recurrence,
};
use rcentral::identity_suite::{Checker, Grid, ProductGrid, Status, SuiteReport};
use rcentral::output::OutputDocument;
use rcentral::power_series::{named, Series};
use rcentral::rational::{int, pow, ratio, to_f64};
use rcentral::{Family, Rational};

const DOBINSKI_TOLERANCE: f64 = 1e-9;
const DOBINSKI_MAX_TERMS: usize = 200;
const PATH_EQUIVALENCE_BUDGET: Duration = Duration::from_secs(10);

type Criterion<'a> = (&'static str, Box<dyn Fn() -> Outcome + 'a>);

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

fn test_r_set() -> Vec<Rational> {
    vec![int(0), ratio(1, 2), int(1), int(2), int(5), ratio(-3, 2)]
}

/// Criterion 1: T_r by alternating sum = binomial convolution = EGF, n <= 20, r in {0,1,2,5}, < 10 s.
fn path_equivalence_second_kind() -> Outcome {
    let start = Instant::now();
    let mut cells = 0;
    for r in [int(0), int(1), int(2), int(5)] {
        let gf = triangle_via_gf(Family::Tr, 20, &r, DEFAULT_ORDER).unwrap();
        for n in 0..=20 {
            for k in 0..=n {
                let direct = r_second_kind(n, k, &r);
                let conv = r_second_kind_by_convolution(n, k, &r).unwrap();
                if direct != conv || direct != gf.value(n, k) {
                    return outcome(false, format!("mismatch at n={n} k={k} r={r}"));
                }
                cells += 1;
            }
        }
    }
    let elapsed = start.elapsed();
    outcome(
        elapsed < PATH_EQUIVALENCE_BUDGET,
        format!("{cells} cells in {:.2} s", elapsed.as_secs_f64()),
    )
}

fn binomial_power_report(checker: &Checker, falling_nmax: usize, central_nmax: usize) -> Outcome {
    let rs = vec![int(0), ratio(1, 2), int(1), int(2)];
    let falling = checker.power_in_falling_basis(&Grid::new(falling_nmax, rs.clone()));
    let central = checker.power_in_central_basis(&Grid::new(central_nmax, rs));
    outcome(
        falling.status == Status::Pass && central.status == Status::Pass,
        format!(
            "falling basis n<={falling_nmax}: {:?} ({} coeffs); central basis n<={central_nmax}: {:?} ({} coeffs)",
            falling.status, falling.cells_checked, central.status, central.cells_checked
        ),
    )
}

/// Criterion 3: Bell polynomials from T_r coefficients, binomial convolution, Stirling
/// expansion and the central-difference form agree for n <= 15.
fn bell_path_equivalence() -> Outcome {
    let mut count = 0;
    for r in test_r_set() {
        for n in 0..=15 {
            let reference = r_central_bell_poly(n, &r);
            let others = [
                r_central_bell_via_convolution(n, &r),
                r_central_bell_via_stirling(n, &r),
                r_central_bell_via_difference(n, &r),
            ];
            if others.iter().any(|p| *p != reference) {
                return outcome(false, format!("mismatch at n={n} r={r}"));
            }
            count += 1;
        }
    }
    outcome(
        true,
        format!("{count} (n, r) polynomials agree on all four paths"),
    )
}

/// Criterion 4: Product convolution for m + k <= 12, m + k <= n <= 14, r in {0,1,3}.
fn product_convolution(checker: &Checker) -> Outcome {
    let report = checker.product_convolution(&ProductGrid {
        max_mk: 12,
        nmax: 14,
        r_set: vec![int(0), int(1), int(3)],
    });
    outcome(
        report.status == Status::Pass,
        format!("{:?}, {} cells", report.status, report.cells_checked),
    )
}

/// Criterion 5: First kind: expansion = EGF = recurrence, n <= 15, r in {0,1/2,1,-3/2}.
fn first_kind_three_paths() -> Outcome {
    let mut cells = 0;
    for r in [int(0), ratio(1, 2), int(1), ratio(-3, 2)] {
        let poly = r_first_kind_via_poly(15, &r);
        let gf = r_first_kind_via_gf(15, &r, DEFAULT_ORDER).unwrap();
        let rec = r_first_kind_via_recurrence(15, &r);
        if let Some(cell) = poly
            .first_difference(&gf)
            .or_else(|| poly.first_difference(&rec))
        {
            return outcome(false, format!("mismatch at {cell:?} r={r}"));
        }
        cells += poly.rows().iter().map(Vec::len).sum::<usize>();
    }
    outcome(true, format!("{cells} cells agree on three paths"))
}

/// Criterion 6: sum_j T(n,j) t(j,k) = [n=k] and sum_j T_r(n+r,j+r) t(j,k) = C(n,k) r^(n-k), n,k <= 12.
fn inverse_relations() -> Outcome {
    let t = |j: usize, k: usize| {
        if k <= j {
            first_kind(j, k).unwrap()
        } else {
            Rational::zero()
        }
    };
    for n in 0..=12 {
        for k in 0..=12 {
            let sum = (0..=n).fold(Rational::zero(), |acc, j| acc + second_kind(n, j) * t(j, k));
            if sum != int(i64::from(n == k)) {
                return outcome(false, format!("plain relation fails at n={n} k={k}"));
            }
            for r in test_r_set() {
                let sum = (0..=n).fold(Rational::zero(), |acc, j| {
                    acc + r_second_kind(n, j, &r) * t(j, k)
                });
                let expected = if k <= n {
                    Rational::from_integer(rcentral::rational::binomial(n, k)) * pow(&r, n - k)
                } else {
                    Rational::zero()
                };
                if sum != expected {
                    return outcome(
                        false,
                        format!("shifted relation fails at n={n} k={k} r={r}"),
                    );
                }
            }
        }
    }
    outcome(true, "n, k <= 12, both relations exact")
}

/// Criterion 7: f(f^-1(t)) = f^-1(f(t)) = t through order 30.
fn gf_inverse_pair() -> Outcome {
    let f = named::central_log(30);
    let finv = named::central_difference_kernel(30);
    let t = Series::t(30);
    let ok = f.compose(&finv).unwrap() == t && finv.compose(&f).unwrap() == t;
    outcome(ok, "order 30, both compositions")
}

/// Criterion 8: Dobinski sums within 1e-9 of the exact value, n <= 8, x in {1/2, 1, 2}.
fn dobinski() -> Outcome {
    let mut worst: f64 = 0.0;
    let mut most_terms = 0;
    for n in 0..=8 {
        for x in [0.5, 1.0, 2.0] {
            let exact = to_f64(&central_bell_poly(n).eval(&Rational::from_float(x).unwrap()));
            let res = dobinski_eval(n, x, DOBINSKI_MAX_TERMS, 1e-15).unwrap();
            assert!(res.terms_used >= 1);
            worst = worst.max((res.value - exact).abs());
            most_terms = most_terms.max(res.terms_used);
        }
    }
    outcome(
        worst <= DOBINSKI_TOLERANCE,
        format!("max |error| = {worst:e}, max terms_used = {most_terms}"),
    )
}

/// Criterion 9: T(n,k) = t(n,k) = 0 for n-k odd, and 2^n T(n,k) integral, n <= 20.
fn parity_zeros() -> Outcome {
    for n in 0..=20usize {
        for k in 0..=n {
            let big = second_kind(n, k);
            if (n - k) % 2 == 1 && (!big.is_zero() || !first_kind(n, k).unwrap().is_zero()) {
                return outcome(false, format!("nonzero odd cell n={n} k={k}"));
            }
            if !(pow(&int(2), n) * big).is_integer() {
                return outcome(false, format!("2^n T(n,k) not integral at n={n} k={k}"));
            }
        }
    }
    outcome(true, "n <= 20")
}

fn cli(args: &[&str]) -> std::process::Output {
    Command::new(env!("CARGO_BIN_EXE_rcentral"))
        .args(args)
        .output()
        .expect("binary runs")
}

/// Criterion 10: JSON round-trip byte-stable; default check exits 0; injected fault exits 1.
fn cli_contract() -> Outcome {
    for args in [
        &["table", "--family", "T", "--nmax", "6"][..],
        &[
            "table",
            "--family",
            "tr",
            "--nmax",
            "6",
            "--r",
            "-3/2",
            "--path",
            "recurrence",
        ],
        &["poly", "--kind", "r_central_bell", "--n", "5", "--r", "1/2"],
    ] {
        let out = cli(args);
        let text = String::from_utf8(out.stdout).unwrap();
        let doc = OutputDocument::from_json(&text).unwrap();
        if doc.to_json() != text {
            return outcome(false, format!("round trip not byte-stable for {args:?}"));
        }
    }
    let ok = cli(&["check"]);
    let ok_report: SuiteReport = serde_json::from_slice(&ok.stdout).unwrap();
    let bad = cli(&["check", "--inject-fault", "6,2"]);
    let bad_report: SuiteReport = serde_json::from_slice(&bad.stdout).unwrap();
    let counterexample = bad_report.failures().find_map(|r| r.counterexample.clone());
    let pass = ok.status.code() == Some(0)
        && ok_report.all_pass()
        && bad.status.code() == Some(1)
        && counterexample.is_some();
    outcome(
        pass,
        format!(
            "default exit {}, fault exit {}, counterexample at n={:?} k={:?}",
            code(&ok),
            code(&bad),
            counterexample.as_ref().map(|c| c.cell.n),
            counterexample.as_ref().and_then(|c| c.cell.k)
        ),
    )
}

fn code(out: &std::process::Output) -> String {
    out.status
        .code()
        .map_or_else(|| "signal".to_string(), |c| c.to_string())
}

#[test]
fn acceptance_criteria() {
    let checker = Checker::new(DEFAULT_ORDER, None);
    let criteria: Vec<Criterion> = vec![
        (
            "1 second-kind path equivalence",
            Box::new(path_equivalence_second_kind),
        ),
        (
            "2 falling/central basis expansions",
            Box::new(|| binomial_power_report(&checker, 12, 15)),
        ),
        ("3 Bell polynomial paths", Box::new(bell_path_equivalence)),
        (
            "4 product convolution",
            Box::new(|| product_convolution(&checker)),
        ),
        ("5 first-kind three paths", Box::new(first_kind_three_paths)),
        ("6 inverse relations", Box::new(inverse_relations)),
        (
            "7 generating-function inverse pair",
            Box::new(gf_inverse_pair),
        ),
        ("8 Dobinski series", Box::new(dobinski)),
        ("9 parity zeros and denominators", Box::new(parity_zeros)),
        ("10 CLI contract", Box::new(cli_contract)),
    ];
    let mut failed = Vec::new();
    // Start on a fresh line; libtest leaves its "test ... " prefix open.
    println!();
    for (name, run) in &criteria {
        let o = run();
        let line = format!(
            "[{}] {name}: {}",
            if o.pass { "PASS" } else { "FAIL" },
            o.detail
        );
        println!("{line}");
        if !o.pass {
            failed.push(*name);
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
