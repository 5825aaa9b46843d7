//! Central Bell polynomials `B_n(x)` with EGF `exp(x (e^{t/2} - e^{-t/2}))`, the
//! r-central extension with EGF `e^{rt} exp(x (e^{t/2} - e^{-t/2}))`, and a
//! floating-point evaluator for the Dobinski-type double series.

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::central_numbers::{
    central_diff, r_second_kind, second_kind, stirling2, triangle_via_gf,
};
use crate::error::{Error, Result};
use crate::polynomial::Polynomial;
use crate::rational::{binomial_q, factorial_q, pow, ratio, Rational};
use crate::table::Family;

/// `B_n(x) = sum_k T(n, k) x^k`.
pub fn central_bell_poly(n: usize) -> Polynomial {
    Polynomial::new((0..=n).map(|k| second_kind(n, k)).collect())
}

/// `B_n^{(r)}(x) = sum_k T_r(n + r, k + r) x^k`.
pub fn r_central_bell_poly(n: usize, r: &Rational) -> Polynomial {
    Polynomial::new((0..=n).map(|k| r_second_kind(n, k, r)).collect())
}

/// Binomial convolution `sum_l C(n, l) B_{n-l}(x) r^l`.
pub fn r_central_bell_via_convolution(n: usize, r: &Rational) -> Polynomial {
    (0..=n).fold(Polynomial::zero(), |acc, l| {
        let weight = binomial_q(n, l) * pow(r, l);
        &acc + &central_bell_poly(n - l).scale(&weight)
    })
}

/// Double sum over Stirling numbers of the second kind:
/// `sum_{l=0}^{n} sum_{m=0}^{l} x^m C(n, l) S2(l, m) (r - m/2)^(n-l)`.
pub fn r_central_bell_via_stirling(n: usize, r: &Rational) -> Polynomial {
    let mut coeffs = vec![Rational::zero(); n + 1];
    for l in 0..=n {
        let c = binomial_q(n, l);
        for (m, slot) in coeffs.iter_mut().enumerate().take(l + 1) {
            let s = stirling2(l, m);
            if s.is_zero() {
                continue;
            }
            *slot += &c * s * pow(&(r - ratio(m as i64, 2)), n - l);
        }
    }
    Polynomial::new(coeffs)
}

/// `sum_k x^k (1/k!) delta^k r^n`, with `delta` the central difference.
pub fn r_central_bell_via_difference(n: usize, r: &Rational) -> Polynomial {
    let power = Polynomial::monomial(Rational::one(), n);
    Polynomial::new(
        (0..=n)
            .map(|k| central_diff(k, &power, r) / factorial_q(k))
            .collect(),
    )
}

/// Row `n` of the generating-function triangle, read as polynomial coefficients.
pub fn r_central_bell_via_gf(n: usize, r: &Rational, order: usize) -> Result<Polynomial> {
    let table = triangle_via_gf(Family::Tr, n, r, order)?;
    Ok(Polynomial::new(table.row(n).unwrap_or_default().to_vec()))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DobinskiResult {
    pub value: f64,
    /// Number of anti-diagonals summed.
    pub terms_used: usize,
    /// Absolute value of the last diagonal added.
    pub last_term_magnitude: f64,
    /// False when `max_terms` ran out before the tolerance was met.
    pub converged: bool,
}

/// Sums the Dobinski-type series
/// `sum_{l,j >= 0} C(l+j, j) (-1)^j (l/2 - j/2)^n x^(l+j) / (l+j)!`
/// along anti-diagonals `m = l + j`.
///
/// Diagonals `m <= n` can vanish exactly (parity), so the tolerance test only
/// applies once `m > n`.
pub fn dobinski_eval(n: usize, x: f64, max_terms: usize, tolerance: f64) -> Result<DobinskiResult> {
    if !(x.is_finite() && x > 0.0) {
        return Err(Error::InvalidArgument(format!(
            "x must be positive, got {x}"
        )));
    }
    if max_terms == 0 {
        return Err(Error::InvalidArgument(
            "max_terms must be at least 1".into(),
        ));
    }
    if !(tolerance.is_finite() && tolerance >= 0.0) {
        return Err(Error::InvalidArgument(format!(
            "tolerance must be nonnegative, got {tolerance}"
        )));
    }
    let exponent =
        i32::try_from(n).map_err(|_| Error::InvalidArgument(format!("n = {n} is too large")))?;
    let mut value = 0.0;
    let mut last = 0.0;
    // x^m / m!
    let mut weight = 1.0_f64;
    for m in 0..max_terms {
        if m > 0 {
            weight *= x / m as f64;
        }
        let mut binom = 1.0_f64;
        let mut diagonal = 0.0;
        for j in 0..=m {
            if j > 0 {
                binom *= (m - j + 1) as f64 / j as f64;
            }
            let base = (m as f64 - 2.0 * j as f64) / 2.0;
            let term = binom * base.powi(exponent);
            diagonal += if j % 2 == 0 { term } else { -term };
        }
        let contribution = weight * diagonal;
        value += contribution;
        last = contribution.abs();
        if m > n && last < tolerance {
            return Ok(DobinskiResult {
                value,
                terms_used: m + 1,
                last_term_magnitude: last,
                converged: true,
            });
        }
    }
    Ok(DobinskiResult {
        value,
        terms_used: max_terms,
        last_term_magnitude: last,
        converged: false,
    })
}
