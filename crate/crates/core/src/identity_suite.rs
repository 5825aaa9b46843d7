//! Grid checks of every identity between the families, each comparing two or
//! more independent computation paths.
//!
//! A [`SuiteConfig`] names one grid per check. Checks whose grid is absent, or
//! whose grid has no cells, report [`Status::Vacuous`]. Second-kind checks are
//! split by shift parameter: nonnegative integer `r` runs are tagged
//! [`Scope::Paper`], all other `r` runs [`Scope::Extended`].

use std::fmt;
use std::time::Instant;

use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bell::{
    central_bell_poly, dobinski_eval, r_central_bell_via_convolution,
    r_central_bell_via_difference, r_central_bell_via_stirling,
};
use crate::central_numbers::{
    self as cn, central_factorial_poly, falling_factorial_poly, r_second_kind_by_convolution,
    r_second_kind_by_difference, stirling2, stirling2_by_recurrence, triangle_via_gf,
    DEFAULT_ORDER,
};
use crate::first_kind::{r_first_kind_via_gf, r_first_kind_via_poly, r_first_kind_via_recurrence};
use crate::polynomial::Polynomial;
use crate::power_series::{named, Series};
use crate::rational::{
    binomial_q, int, is_natural, pow, ratio, serde_wire_vec, to_f64, to_wire, Rational,
};
use crate::table::Family;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    Fail,
    /// No cell was compared.
    Vacuous,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Scope {
    /// Parameters inside the range the identity was stated for.
    Paper,
    /// Rational shifts outside that range.
    Extended,
}

/// Grid coordinates of a compared value. `k` doubles as the power of `x` for
/// polynomial identities and as the index into the `x` list for Dobinski runs.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Cell {
    pub n: usize,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub k: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub m: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub r: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub x: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counterexample {
    pub cell: Cell,
    pub left: String,
    pub right: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckReport {
    pub id: String,
    pub grid: String,
    pub scope: Scope,
    pub status: Status,
    pub cells_checked: u64,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub counterexample: Option<Counterexample>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub note: Option<String>,
    pub elapsed_ms: f64,
}

impl CheckReport {
    pub fn passed(&self) -> bool {
        self.status != Status::Fail
    }

    /// Copy with timing zeroed, for comparing runs.
    pub fn without_timing(&self) -> CheckReport {
        CheckReport {
            elapsed_ms: 0.0,
            ..self.clone()
        }
    }
}

impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = match self.status {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Vacuous => "VACUOUS",
        };
        let scope = match self.scope {
            Scope::Paper => "paper",
            Scope::Extended => "extended",
        };
        write!(
            f,
            "{status:7} {:28} [{scope}] {} ({} cells, {:.1} ms)",
            self.id, self.grid, self.cells_checked, self.elapsed_ms
        )?;
        if let Some(c) = &self.counterexample {
            write!(
                f,
                "\n        first mismatch at {:?}: {} != {}",
                c.cell, c.left, c.right
            )?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub status: Status,
    pub reports: Vec<CheckReport>,
}

impl SuiteReport {
    pub fn all_pass(&self) -> bool {
        self.status != Status::Fail
    }

    pub fn any_vacuous(&self) -> bool {
        self.reports.iter().any(|r| r.status == Status::Vacuous)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckReport> {
        self.reports.iter().filter(|r| r.status == Status::Fail)
    }
}

/// Triangle grid `0 <= k <= n <= nmax` over a set of shifts.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Grid {
    pub nmax: usize,
    #[serde(with = "serde_wire_vec", default)]
    pub r_set: Vec<Rational>,
}

impl Grid {
    pub fn new(nmax: usize, r_set: Vec<Rational>) -> Self {
        Grid { nmax, r_set }
    }

    fn describe(&self) -> String {
        let rs: Vec<String> = self.r_set.iter().map(to_wire).collect();
        format!("n<={} r={{{}}}", self.nmax, rs.join(","))
    }
}

/// Grid for the product convolution over `m + k <= max_mk <= n <= nmax`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProductGrid {
    pub max_mk: usize,
    pub nmax: usize,
    #[serde(with = "serde_wire_vec", default)]
    pub r_set: Vec<Rational>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DobinskiGrid {
    pub nmax: usize,
    pub xs: Vec<f64>,
    pub max_terms: usize,
    /// Diagonal magnitude that stops the summation.
    pub stop_tolerance: f64,
    /// Allowed absolute error against the exact polynomial value.
    pub tolerance: f64,
}

/// Adds one to the directly computed `T_r(n + r, k + r)` at a single cell, for
/// every `r`. Used to confirm that the suite detects a wrong value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Fault {
    pub n: usize,
    pub k: usize,
}

/// One optional grid per check. A missing grid makes that check vacuous.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SuiteConfig {
    #[serde(default = "default_order")]
    pub order: usize,
    #[serde(default)]
    pub shift_convolution: Option<Grid>,
    #[serde(default)]
    pub power_in_falling_basis: Option<Grid>,
    #[serde(default)]
    pub bell_coefficients: Option<Grid>,
    #[serde(default)]
    pub central_difference: Option<Grid>,
    #[serde(default)]
    pub bell_binomial_convolution: Option<Grid>,
    #[serde(default)]
    pub bell_stirling_expansion: Option<Grid>,
    #[serde(default)]
    pub bell_difference_form: Option<Grid>,
    #[serde(default)]
    pub product_convolution: Option<ProductGrid>,
    #[serde(default)]
    pub power_in_central_basis: Option<Grid>,
    #[serde(default)]
    pub first_kind_paths: Option<Grid>,
    #[serde(default)]
    pub inverse_relations: Option<Grid>,
    #[serde(default)]
    pub gf_inverse_pair: Option<usize>,
    #[serde(default)]
    pub parity: Option<usize>,
    #[serde(default)]
    pub stirling_paths: Option<Grid>,
    #[serde(default)]
    pub dobinski: Option<DobinskiGrid>,
    #[serde(default)]
    pub fault: Option<Fault>,
}

fn default_order() -> usize {
    DEFAULT_ORDER
}

/// `{0, 1/2, 1, 2, 5, -3/2}`.
pub fn default_r_set() -> Vec<Rational> {
    vec![int(0), ratio(1, 2), int(1), int(2), int(5), ratio(-3, 2)]
}

impl Default for SuiteConfig {
    fn default() -> Self {
        let polys = Grid::new(15, default_r_set());
        let scalars = Grid::new(20, default_r_set());
        SuiteConfig {
            order: DEFAULT_ORDER,
            shift_convolution: Some(scalars.clone()),
            power_in_falling_basis: Some(Grid::new(12, default_r_set())),
            bell_coefficients: Some(polys.clone()),
            central_difference: Some(scalars.clone()),
            bell_binomial_convolution: Some(polys.clone()),
            bell_stirling_expansion: Some(polys.clone()),
            bell_difference_form: Some(polys.clone()),
            product_convolution: Some(ProductGrid {
                max_mk: 12,
                nmax: 14,
                r_set: vec![int(0), int(1), int(3)],
            }),
            power_in_central_basis: Some(polys.clone()),
            first_kind_paths: Some(polys.clone()),
            inverse_relations: Some(Grid::new(12, default_r_set())),
            gf_inverse_pair: Some(30),
            parity: Some(20),
            stirling_paths: Some(Grid::new(15, default_r_set())),
            dobinski: Some(DobinskiGrid {
                nmax: 8,
                xs: vec![0.5, 1.0, 2.0],
                max_terms: 200,
                stop_tolerance: 1e-15,
                tolerance: 1e-9,
            }),
            fault: None,
        }
    }
}

impl SuiteConfig {
    /// A config with no grids at all; every check is vacuous.
    pub fn empty() -> Self {
        serde_json::from_str("{}").expect("all fields default")
    }
}

type Key = (usize, usize, usize, usize);

/// Running comparison state for one check; keeps the smallest failing cell.
#[derive(Default)]
struct Tally {
    cells: u64,
    worst: Option<(Key, Counterexample)>,
}

impl Tally {
    fn record(
        &mut self,
        key: Key,
        cell: impl FnOnce() -> Cell,
        ok: bool,
        sides: impl FnOnce() -> (String, String),
    ) {
        self.cells += 1;
        if ok {
            return;
        }
        if self.worst.as_ref().is_some_and(|(k, _)| *k <= key) {
            return;
        }
        let (left, right) = sides();
        self.worst = Some((
            key,
            Counterexample {
                cell: cell(),
                left,
                right,
            },
        ));
    }

    fn exact(&mut self, key: Key, cell: impl FnOnce() -> Cell, left: &Rational, right: &Rational) {
        self.record(key, cell, left == right, || (to_wire(left), to_wire(right)));
    }

    /// Coefficient-wise comparison; cell `k` is the power of `x`.
    fn poly(
        &mut self,
        n: usize,
        ri: usize,
        r: Option<&Rational>,
        left: &Polynomial,
        right: &Polynomial,
    ) {
        let len = left.coeffs().len().max(right.coeffs().len()).max(1);
        for k in 0..len {
            self.exact(
                (n, k, 0, ri),
                || cell(n, Some(k), None, r),
                &left.coeff(k),
                &right.coeff(k),
            );
        }
    }
}

fn cell(n: usize, k: Option<usize>, m: Option<usize>, r: Option<&Rational>) -> Cell {
    Cell {
        n,
        k,
        m,
        r: r.map(to_wire),
        x: None,
    }
}

fn scope_of(r_set: &[Rational]) -> Scope {
    if r_set.iter().all(is_natural) {
        Scope::Paper
    } else {
        Scope::Extended
    }
}

/// Runs the checks of one configuration. Every method returns a single report.
pub struct Checker {
    order: usize,
    fault: Option<Fault>,
}

impl Checker {
    pub fn new(order: usize, fault: Option<Fault>) -> Self {
        Checker { order, fault }
    }

    fn gf_order(&self, nmax: usize) -> usize {
        self.order.max(nmax)
    }

    /// The directly summed `T_r(n + r, k + r)`, including any injected fault.
    fn direct(&self, n: usize, k: usize, r: &Rational) -> Rational {
        let v = cn::r_second_kind(n, k, r);
        match self.fault {
            Some(f) if f.n == n && f.k == k => v + Rational::one(),
            _ => v,
        }
    }

    fn run(
        &self,
        id: &str,
        grid: String,
        scope: Scope,
        body: impl FnOnce(&mut Tally) -> Option<String>,
    ) -> CheckReport {
        let start = Instant::now();
        let mut tally = Tally::default();
        let note = body(&mut tally);
        let status = match (&tally.worst, tally.cells) {
            (Some(_), _) => Status::Fail,
            (None, 0) => Status::Vacuous,
            (None, _) => Status::Pass,
        };
        CheckReport {
            id: id.to_string(),
            grid,
            scope,
            status,
            cells_checked: tally.cells,
            counterexample: tally.worst.map(|(_, c)| c),
            note,
            elapsed_ms: start.elapsed().as_secs_f64() * 1e3,
        }
    }

    /// Direct alternating sum = binomial convolution with `T` = EGF extraction.
    pub fn shift_convolution(&self, grid: &Grid) -> CheckReport {
        self.run(
            "shift_convolution",
            grid.describe(),
            scope_of(&grid.r_set),
            |tally| {
                for (ri, r) in grid.r_set.iter().enumerate() {
                    let gf = triangle_via_gf(Family::Tr, grid.nmax, r, self.gf_order(grid.nmax))
                        .expect("order covers nmax");
                    for n in 0..=grid.nmax {
                        for k in 0..=n {
                            let direct = self.direct(n, k, r);
                            let conv = r_second_kind_by_convolution(n, k, r).expect("k <= n");
                            let at = || cell(n, Some(k), None, Some(r));
                            tally.exact((n, k, 0, ri), at, &direct, &conv);
                            tally.exact((n, k, 0, ri), at, &direct, &gf.value(n, k));
                        }
                    }
                }
                None
            },
        )
    }

    /// `(x + r)^n = sum_l sum_k (x)_k C(n, l) T_r(l + r, k + r) (k/2)^(n-l)`.
    pub fn power_in_falling_basis(&self, grid: &Grid) -> CheckReport {
        self.run(
            "power_in_falling_basis",
            grid.describe(),
            scope_of(&grid.r_set),
            |tally| {
                let falling: Vec<Polynomial> = (0..=grid.nmax)
                    .map(|k| falling_factorial_poly(k, &Rational::zero()))
                    .collect();
                for (ri, r) in grid.r_set.iter().enumerate() {
                    for n in 0..=grid.nmax {
                        let mut rhs = Polynomial::zero();
                        for l in 0..=n {
                            for (k, fk) in falling.iter().enumerate().take(l + 1) {
                                let w = binomial_q(n, l)
                                    * self.direct(l, k, r)
                                    * pow(&ratio(k as i64, 2), n - l);
                                if !w.is_zero() {
                                    rhs = &rhs + &fk.scale(&w);
                                }
                            }
                        }
                        tally.poly(n, ri, Some(r), &binomial_power(n, r), &rhs);
                    }
                }
                None
            },
        )
    }

    /// Bell coefficients from `T_r` versus the defining bivariate EGF.
    pub fn bell_coefficients(&self, grid: &Grid) -> CheckReport {
        self.run(
            "bell_coefficients",
            grid.describe(),
            scope_of(&grid.r_set),
            |tally| {
                for (ri, r) in grid.r_set.iter().enumerate() {
                    let gf = triangle_via_gf(Family::Tr, grid.nmax, r, self.gf_order(grid.nmax))
                        .expect("order covers nmax");
                    for n in 0..=grid.nmax {
                        let reference =
                            Polynomial::new((0..=n).map(|k| self.direct(n, k, r)).collect());
                        let from_gf = Polynomial::new(gf.row(n).expect("n <= nmax").to_vec());
                        tally.poly(n, ri, Some(r), &reference, &from_gf);
                    }
                }
                None
            },
        )
    }

    pub fn bell_binomial_convolution(&self, grid: &Grid) -> CheckReport {
        self.bell_check(
            "bell_binomial_convolution",
            grid,
            r_central_bell_via_convolution,
        )
    }

    pub fn bell_stirling_expansion(&self, grid: &Grid) -> CheckReport {
        self.bell_check("bell_stirling_expansion", grid, r_central_bell_via_stirling)
    }

    pub fn bell_difference_form(&self, grid: &Grid) -> CheckReport {
        self.bell_check("bell_difference_form", grid, r_central_bell_via_difference)
    }

    fn bell_check(
        &self,
        id: &str,
        grid: &Grid,
        other: impl Fn(usize, &Rational) -> Polynomial,
    ) -> CheckReport {
        self.run(id, grid.describe(), scope_of(&grid.r_set), |tally| {
            for (ri, r) in grid.r_set.iter().enumerate() {
                for n in 0..=grid.nmax {
                    let reference =
                        Polynomial::new((0..=n).map(|k| self.direct(n, k, r)).collect());
                    tally.poly(n, ri, Some(r), &reference, &other(n, r));
                }
            }
            None
        })
    }

    /// `(1/k!) delta^k r^n` equals the EGF value for `n >= k` and 0 for `n < k`,
    /// over the full square `n, k <= nmax`.
    pub fn central_difference(&self, grid: &Grid) -> CheckReport {
        self.run(
            "central_difference",
            grid.describe(),
            scope_of(&grid.r_set),
            |tally| {
                for (ri, r) in grid.r_set.iter().enumerate() {
                    let gf = triangle_via_gf(Family::Tr, grid.nmax, r, self.gf_order(grid.nmax))
                        .expect("order covers nmax");
                    for n in 0..=grid.nmax {
                        for k in 0..=grid.nmax {
                            let diff = r_second_kind_by_difference(n, k, r);
                            let expected = if n >= k {
                                gf.value(n, k)
                            } else {
                                Rational::zero()
                            };
                            tally.exact(
                                (n, k, 0, ri),
                                || cell(n, Some(k), None, Some(r)),
                                &diff,
                                &expected,
                            );
                        }
                    }
                }
                None
            },
        )
    }

    /// `C(m+k, m) T_r(n+r, m+k+r) = sum_{l=m}^{n-k} C(n, l) T_r(l+r, m+r) T(n-l, k)`.
    pub fn product_convolution(&self, grid: &ProductGrid) -> CheckReport {
        let rs: Vec<String> = grid.r_set.iter().map(to_wire).collect();
        let desc = format!(
            "m+k<={} n<={} r={{{}}}",
            grid.max_mk,
            grid.nmax,
            rs.join(",")
        );
        self.run(
            "product_convolution",
            desc,
            scope_of(&grid.r_set),
            |tally| {
                let zero = Rational::zero();
                for (ri, r) in grid.r_set.iter().enumerate() {
                    let gf = triangle_via_gf(Family::Tr, grid.nmax, r, self.gf_order(grid.nmax))
                        .expect("order covers nmax");
                    for m in 0..=grid.max_mk {
                        for k in 0..=grid.max_mk - m {
                            for n in (m + k)..=grid.nmax {
                                let lhs = binomial_q(m + k, m) * gf.value(n, m + k);
                                let rhs = (m..=n - k).fold(Rational::zero(), |acc, l| {
                                    acc + binomial_q(n, l)
                                        * self.direct(l, m, r)
                                        * self.direct(n - l, k, &zero)
                                });
                                tally.exact(
                                    (n, k, m, ri),
                                    || cell(n, Some(k), Some(m), Some(r)),
                                    &lhs,
                                    &rhs,
                                );
                            }
                        }
                    }
                }
                None
            },
        )
    }

    /// `(x + r)^n = sum_k T_r(n + r, k + r) x^[k]`.
    pub fn power_in_central_basis(&self, grid: &Grid) -> CheckReport {
        self.run(
            "power_in_central_basis",
            grid.describe(),
            scope_of(&grid.r_set),
            |tally| {
                let central: Vec<Polynomial> =
                    (0..=grid.nmax).map(central_factorial_poly).collect();
                for (ri, r) in grid.r_set.iter().enumerate() {
                    for n in 0..=grid.nmax {
                        let rhs = central
                            .iter()
                            .take(n + 1)
                            .enumerate()
                            .fold(Polynomial::zero(), |acc, (k, ck)| {
                                &acc + &ck.scale(&self.direct(n, k, r))
                            });
                        tally.poly(n, ri, Some(r), &binomial_power(n, r), &rhs);
                    }
                }
                None
            },
        )
    }

    /// Shifted central factorial expansion = EGF extraction = row recurrence.
    pub fn first_kind_paths(&self, grid: &Grid) -> CheckReport {
        self.run("first_kind_paths", grid.describe(), Scope::Paper, |tally| {
            for (ri, r) in grid.r_set.iter().enumerate() {
                let poly = r_first_kind_via_poly(grid.nmax, r);
                let gf = r_first_kind_via_gf(grid.nmax, r, self.gf_order(grid.nmax))
                    .expect("order covers nmax");
                let rec = r_first_kind_via_recurrence(grid.nmax, r);
                for n in 0..=grid.nmax {
                    for k in 0..=n {
                        let at = || cell(n, Some(k), None, Some(r));
                        let p = poly.value(n, k);
                        tally.exact((n, k, 0, ri), at, &p, &rec.value(n, k));
                        tally.exact((n, k, 0, ri), at, &p, &gf.value(n, k));
                    }
                }
            }
            None
        })
    }

    /// `sum_j T(n, j) t(j, k) = [n = k]` over the square, then
    /// `sum_j T_r(n+r, j+r) t(j, k) = C(n, k) r^(n-k)` for each `r`.
    pub fn inverse_relations(&self, grid: &Grid) -> CheckReport {
        self.run(
            "inverse_relations",
            grid.describe(),
            scope_of(&grid.r_set),
            |tally| {
                let first = r_first_kind_via_poly(grid.nmax, &Rational::zero());
                let zero = Rational::zero();
                // Plain relation sorts before every shifted one.
                let plain_index = 0;
                for n in 0..=grid.nmax {
                    for k in 0..=grid.nmax {
                        let sum = (k..=n).fold(Rational::zero(), |acc, j| {
                            acc + self.direct(n, j, &zero) * first.value(j, k)
                        });
                        let expected = if n == k {
                            Rational::one()
                        } else {
                            Rational::zero()
                        };
                        tally.exact(
                            (n, k, 0, plain_index),
                            || cell(n, Some(k), None, None),
                            &sum,
                            &expected,
                        );
                    }
                }
                for (ri, r) in grid.r_set.iter().enumerate() {
                    for n in 0..=grid.nmax {
                        for k in 0..=grid.nmax {
                            let sum = (k..=n).fold(Rational::zero(), |acc, j| {
                                acc + self.direct(n, j, r) * first.value(j, k)
                            });
                            let expected = if k <= n {
                                binomial_q(n, k) * pow(r, n - k)
                            } else {
                                Rational::zero()
                            };
                            tally.exact(
                                (n, k, 0, ri + 1),
                                || cell(n, Some(k), None, Some(r)),
                                &sum,
                                &expected,
                            );
                        }
                    }
                }
                None
            },
        )
    }

    /// `f(f^{-1}(t)) = f^{-1}(f(t)) = t` for `f(t) = 2 log(t/2 + sqrt(1 + t^2/4))`
    /// and `f^{-1}(t) = e^{t/2} - e^{-t/2}`.
    pub fn gf_inverse_pair(&self, order: usize) -> CheckReport {
        self.run(
            "gf_inverse_pair",
            format!("order={order}"),
            Scope::Paper,
            |tally| {
                if order == 0 {
                    return None;
                }
                let f = named::central_log(order);
                let finv = named::central_difference_kernel(order);
                let t = Series::t(order);
                for (which, composed) in
                    [f.compose(&finv), finv.compose(&f)].into_iter().enumerate()
                {
                    let composed = composed.expect("inner has zero constant term");
                    for n in 0..=order {
                        let got = composed.coeff(n).expect("within order");
                        let want = t.coeff(n).expect("within order");
                        tally.exact(
                            (n, 0, which, 0),
                            || cell(n, None, Some(which), None),
                            got,
                            want,
                        );
                    }
                }
                Some("m = 0: f(f^-1(t)); m = 1: f^-1(f(t))".into())
            },
        )
    }

    /// `T(n, k) = t(n, k) = 0` when `n - k` is odd, and `2^n T(n, k)` is an
    /// integer. The second property is observed, not a proven statement.
    pub fn parity(&self, nmax: usize) -> CheckReport {
        self.run("parity", format!("n<={nmax}"), Scope::Paper, |tally| {
            let first = r_first_kind_via_poly(nmax, &Rational::zero());
            let zero = Rational::zero();
            let two_pow = |n: usize| pow(&int(2), n);
            for n in 0..=nmax {
                for k in 0..=n {
                    let at = || cell(n, Some(k), None, None);
                    let big_t = self.direct(n, k, &zero);
                    if (n - k) % 2 == 1 {
                        tally.exact((n, k, 0, 0), at, &big_t, &zero);
                        tally.exact((n, k, 1, 0), at, &first.value(n, k), &zero);
                    }
                    let scaled = two_pow(n) * &big_t;
                    tally.exact((n, k, 2, 0), at, &scaled, &scaled.trunc());
                }
            }
            Some("m = 0: T parity; m = 1: t parity; m = 2: 2^n T integral (observed)".into())
        })
    }

    /// `S2` by alternating sum, EGF and recurrence; `S1r` by falling-factorial
    /// expansion and EGF, for each `r`.
    pub fn stirling_paths(&self, grid: &Grid) -> CheckReport {
        self.run("stirling_paths", grid.describe(), Scope::Paper, |tally| {
            let order = self.gf_order(grid.nmax);
            let gf = triangle_via_gf(Family::S2, grid.nmax, &Rational::zero(), order)
                .expect("order covers nmax");
            let rec = stirling2_by_recurrence(grid.nmax);
            for n in 0..=grid.nmax {
                for k in 0..=n {
                    let at = || cell(n, Some(k), None, None);
                    let direct = stirling2(n, k);
                    tally.exact((n, k, 0, 0), at, &direct, &gf.value(n, k));
                    tally.exact((n, k, 0, 0), at, &direct, &rec.value(n, k));
                }
            }
            for (ri, r) in grid.r_set.iter().enumerate() {
                let gf =
                    triangle_via_gf(Family::S1r, grid.nmax, r, order).expect("order covers nmax");
                for n in 0..=grid.nmax {
                    let expansion = falling_factorial_poly(n, r);
                    for k in 0..=n {
                        tally.exact(
                            (n, k, 0, ri + 1),
                            || cell(n, Some(k), None, Some(r)),
                            &expansion.coeff(k),
                            &gf.value(n, k),
                        );
                    }
                }
            }
            None
        })
    }

    /// Floating Dobinski sums against the exact central Bell polynomial.
    pub fn dobinski(&self, grid: &DobinskiGrid) -> CheckReport {
        let desc = format!(
            "n<={} x={:?} max_terms={} tol={:e}",
            grid.nmax, grid.xs, grid.max_terms, grid.tolerance
        );
        self.run("dobinski", desc, Scope::Paper, |tally| {
            let mut most_terms = 0;
            let mut worst_error: f64 = 0.0;
            for n in 0..=grid.nmax {
                let bell = central_bell_poly(n);
                for (xi, &x) in grid.xs.iter().enumerate() {
                    let at = || Cell {
                        n,
                        k: Some(xi),
                        m: None,
                        r: None,
                        x: Some(x.to_string()),
                    };
                    let Some(xq) = Rational::from_float(x) else {
                        tally.record((n, xi, 0, 0), at, false, || {
                            (x.to_string(), "finite x".into())
                        });
                        continue;
                    };
                    let exact = to_f64(&bell.eval(&xq));
                    match dobinski_eval(n, x, grid.max_terms, grid.stop_tolerance) {
                        Ok(res) => {
                            let err = (res.value - exact).abs();
                            most_terms = most_terms.max(res.terms_used);
                            worst_error = worst_error.max(err);
                            tally.record((n, xi, 0, 0), at, err <= grid.tolerance, || {
                                (format!("{:e}", res.value), format!("{exact:e}"))
                            });
                        }
                        Err(e) => tally.record((n, xi, 0, 0), at, false, || {
                            (e.to_string(), format!("{exact:e}"))
                        }),
                    }
                }
            }
            Some(format!(
                "max terms used {most_terms}, max abs error {worst_error:e}"
            ))
        })
    }
}

/// `(x + r)^n` with coefficients `C(n, k) r^(n-k)`.
fn binomial_power(n: usize, r: &Rational) -> Polynomial {
    Polynomial::new((0..=n).map(|k| binomial_q(n, k) * pow(r, n - k)).collect())
}

/// Splits `r_set` into the nonnegative-integer part and the rest.
fn split_scope(grid: &Grid) -> (Grid, Grid) {
    let (paper, extended): (Vec<_>, Vec<_>) = grid.r_set.iter().cloned().partition(is_natural);
    (Grid::new(grid.nmax, paper), Grid::new(grid.nmax, extended))
}

fn vacuous(id: &str, scope: Scope) -> CheckReport {
    CheckReport {
        id: id.into(),
        grid: "empty".into(),
        scope,
        status: Status::Vacuous,
        cells_checked: 0,
        counterexample: None,
        note: None,
        elapsed_ms: 0.0,
    }
}

type Job<'a> = Box<dyn Fn(&Checker) -> CheckReport + Send + Sync + 'a>;

/// Runs every configured check. Checks execute in parallel; the report order
/// is fixed by the config, not by completion order.
pub fn run_all(config: &SuiteConfig) -> SuiteReport {
    let checker = Checker::new(config.order, config.fault);
    let mut jobs: Vec<Job<'_>> = Vec::new();

    // Second-kind grids run once per scope.
    type GridCheck = fn(&Checker, &Grid) -> CheckReport;
    let scoped: [(&str, &Option<Grid>, GridCheck); 9] = [
        (
            "shift_convolution",
            &config.shift_convolution,
            Checker::shift_convolution,
        ),
        (
            "power_in_falling_basis",
            &config.power_in_falling_basis,
            Checker::power_in_falling_basis,
        ),
        (
            "bell_coefficients",
            &config.bell_coefficients,
            Checker::bell_coefficients,
        ),
        (
            "central_difference",
            &config.central_difference,
            Checker::central_difference,
        ),
        (
            "bell_binomial_convolution",
            &config.bell_binomial_convolution,
            Checker::bell_binomial_convolution,
        ),
        (
            "bell_stirling_expansion",
            &config.bell_stirling_expansion,
            Checker::bell_stirling_expansion,
        ),
        (
            "bell_difference_form",
            &config.bell_difference_form,
            Checker::bell_difference_form,
        ),
        (
            "power_in_central_basis",
            &config.power_in_central_basis,
            Checker::power_in_central_basis,
        ),
        (
            "inverse_relations",
            &config.inverse_relations,
            Checker::inverse_relations,
        ),
    ];
    for (id, grid, check) in scoped {
        match grid {
            None => jobs.push(Box::new(move |_| vacuous(id, Scope::Paper))),
            Some(grid) => {
                let (paper, extended) = split_scope(grid);
                jobs.push(Box::new(move |c| check(c, &paper)));
                if !extended.r_set.is_empty() {
                    jobs.push(Box::new(move |c| check(c, &extended)));
                }
            }
        }
    }
    match &config.product_convolution {
        None => jobs.push(Box::new(|_| vacuous("product_convolution", Scope::Paper))),
        Some(grid) => {
            let (paper, extended): (Vec<_>, Vec<_>) =
                grid.r_set.iter().cloned().partition(is_natural);
            let paper = ProductGrid {
                r_set: paper,
                ..grid.clone()
            };
            let extended = ProductGrid {
                r_set: extended,
                ..grid.clone()
            };
            let has_extended = !extended.r_set.is_empty();
            jobs.push(Box::new(move |c| c.product_convolution(&paper)));
            if has_extended {
                jobs.push(Box::new(move |c| c.product_convolution(&extended)));
            }
        }
    }
    match &config.first_kind_paths {
        None => jobs.push(Box::new(|_| vacuous("first_kind_paths", Scope::Paper))),
        Some(g) => jobs.push(Box::new(move |c| c.first_kind_paths(g))),
    }
    match config.gf_inverse_pair {
        None => jobs.push(Box::new(|_| vacuous("gf_inverse_pair", Scope::Paper))),
        Some(order) => jobs.push(Box::new(move |c| c.gf_inverse_pair(order))),
    }
    match config.parity {
        None => jobs.push(Box::new(|_| vacuous("parity", Scope::Paper))),
        Some(nmax) => jobs.push(Box::new(move |c| c.parity(nmax))),
    }
    match &config.stirling_paths {
        None => jobs.push(Box::new(|_| vacuous("stirling_paths", Scope::Paper))),
        Some(g) => jobs.push(Box::new(move |c| c.stirling_paths(g))),
    }
    match &config.dobinski {
        None => jobs.push(Box::new(|_| vacuous("dobinski", Scope::Paper))),
        Some(g) => jobs.push(Box::new(move |c| c.dobinski(g))),
    }

    let reports: Vec<CheckReport> = jobs.par_iter().map(|job| job(&checker)).collect();
    let status = if reports.iter().any(|r| r.status == Status::Fail) {
        Status::Fail
    } else if reports.iter().all(|r| r.status == Status::Vacuous) {
        Status::Vacuous
    } else {
        Status::Pass
    };
    SuiteReport { status, reports }
}
