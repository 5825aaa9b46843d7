//! Second-kind families: central factorial numbers `T(n, k)`, their r-extension
//! `T_r(n + r, k + r)`, Stirling numbers `S2(n, k)` and r-Stirling numbers of the
//! first kind `S1r(n + r, k + r)`, together with the central difference operator
//! and the factorial-basis polynomials.
//!
//! Every r-family is addressed by offset indices: `r_second_kind(n, k, r)` is the
//! value at `(n + r, k + r)`. `r` may be any rational.

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::polynomial::Polynomial;
use crate::power_series::{named, Series};
use crate::rational::{binomial_q, factorial_q, int, pow, ratio, sign, Rational};
use crate::table::{Family, Path, TriangleTable};

/// Truncation order used for generating-function extraction unless overridden.
pub const DEFAULT_ORDER: usize = 40;

/// The central factorial `x^[n] = x (x + n/2 - 1) ... (x - n/2 + 1)`, with
/// `x^[0] = 1`.
pub fn central_factorial_poly(n: usize) -> Polynomial {
    if n == 0 {
        return Polynomial::one();
    }
    let half_n = ratio(n as i64, 2);
    let roots: Vec<Rational> = std::iter::once(Rational::zero())
        .chain((1..n).map(|j| int(j as i64) - &half_n))
        .collect();
    Polynomial::from_roots(&roots)
}

/// `(x + shift)_n = (x + shift)(x + shift - 1) ... (x + shift - n + 1)`.
pub fn falling_factorial_poly(n: usize, shift: &Rational) -> Polynomial {
    let roots: Vec<Rational> = (0..n).map(|j| int(j as i64) - shift).collect();
    Polynomial::from_roots(&roots)
}

/// `T(n, k)`; zero when `n < k`.
pub fn second_kind(n: usize, k: usize) -> Rational {
    r_second_kind(n, k, &Rational::zero())
}

/// `T_r(n + r, k + r)` from the alternating sum
/// `(1/k!) sum_l C(k, l) (-1)^(k-l) (l + r - k/2)^n`; zero when `n < k`.
pub fn r_second_kind(n: usize, k: usize, r: &Rational) -> Rational {
    if n < k {
        return Rational::zero();
    }
    let shift = r - ratio(k as i64, 2);
    let sum = (0..=k).fold(Rational::zero(), |acc, l| {
        acc + binomial_q(k, l) * sign(k - l) * pow(&(int(l as i64) + &shift), n)
    });
    sum / factorial_q(k)
}

/// `T_r(n + r, k + r) = sum_{l=k}^{n} C(n, l) T(l, k) r^(n-l)`.
pub fn r_second_kind_by_convolution(n: usize, k: usize, r: &Rational) -> Result<Rational> {
    if n < k {
        return Err(Error::BelowDiagonal { n, k });
    }
    Ok((k..=n).fold(Rational::zero(), |acc, l| {
        acc + binomial_q(n, l) * second_kind(l, k) * pow(r, n - l)
    }))
}

/// `delta^k p` evaluated at `at`, where `delta f(x) = f(x + 1/2) - f(x - 1/2)`.
pub fn central_diff(k: usize, p: &Polynomial, at: &Rational) -> Rational {
    let half_k = ratio(k as i64, 2);
    (0..=k).fold(Rational::zero(), |acc, l| {
        let point = at + int(l as i64) - &half_k;
        acc + binomial_q(k, l) * sign(k - l) * p.eval(&point)
    })
}

/// `(1/k!) delta^k x^n` at `x = r`. Agrees with [`r_second_kind`] for `n >= k`
/// and vanishes for `n < k`.
pub fn r_second_kind_by_difference(n: usize, k: usize, r: &Rational) -> Rational {
    central_diff(k, &Polynomial::monomial(Rational::one(), n), r) / factorial_q(k)
}

/// Stirling numbers of the second kind, `(1/k!) sum_j (-1)^(k-j) C(k, j) j^n`.
pub fn stirling2(n: usize, k: usize) -> Rational {
    if n < k {
        return Rational::zero();
    }
    let sum = (0..=k).fold(Rational::zero(), |acc, j| {
        acc + sign(k - j) * binomial_q(k, j) * pow(&int(j as i64), n)
    });
    sum / factorial_q(k)
}

/// Stirling triangle from `S2(n, k) = k S2(n-1, k) + S2(n-1, k-1)`.
pub fn stirling2_by_recurrence(nmax: usize) -> TriangleTable {
    let mut rows: Vec<Vec<Rational>> = vec![vec![Rational::one()]];
    for n in 1..=nmax {
        let prev = &rows[n - 1];
        let at = |k: usize| prev.get(k).cloned().unwrap_or_else(Rational::zero);
        let row = (0..=n)
            .map(|k| {
                let keep = int(k as i64) * at(k);
                if k == 0 {
                    keep
                } else {
                    keep + at(k - 1)
                }
            })
            .collect();
        rows.push(row);
    }
    TriangleTable::from_rows(Family::S2, Rational::zero(), Path::Recurrence, rows)
}

/// `S1r(n + r, k + r)`: the coefficient of `x^k` in `(x + r)_n`. Signs are kept
/// as they come out of the falling factorial.
pub fn r_stirling1(n: usize, k: usize, r: &Rational) -> Result<Rational> {
    if k > n {
        return Err(Error::BelowDiagonal { n, k });
    }
    Ok(falling_factorial_poly(n, r).coeff(k))
}

/// `rows[n][k] = egf_coeff(prefactor * base^k / k!, n)` for `k <= n <= nmax`.
pub(crate) fn egf_triangle(
    prefactor: &Series,
    base: &Series,
    nmax: usize,
) -> Result<Vec<Vec<Rational>>> {
    let order = prefactor.order().min(base.order());
    if nmax > order {
        return Err(Error::OrderTooSmall { index: nmax, order });
    }
    let mut rows: Vec<Vec<Rational>> = (0..=nmax).map(|n| Vec::with_capacity(n + 1)).collect();
    let mut term = prefactor.truncate(order);
    for k in 0..=nmax {
        if k > 0 {
            term = term.mul(base).scale(&ratio(1, k as i64));
        }
        for (n, row) in rows.iter_mut().enumerate().skip(k) {
            row.push(term.egf_coeff(n)?);
        }
    }
    Ok(rows)
}

/// Triangle of `family` read off its exponential generating function
/// `prefactor(t) * base(t)^k / k!`, truncated at `order`.
///
/// | family | prefactor | base |
/// |---|---|---|
/// | `T`, `Tr` | `e^{rt}` | `e^{t/2} - e^{-t/2}` |
/// | `S2` | `1` | `e^t - 1` |
/// | `S1r` | `(1 + t)^r` | `log(1 + t)` |
/// | `t`, `tr` | `(t/2 + sqrt(1 + t^2/4))^{2r}` | `2 log(t/2 + sqrt(1 + t^2/4))` |
pub fn triangle_via_gf(
    family: Family,
    nmax: usize,
    r: &Rational,
    order: usize,
) -> Result<TriangleTable> {
    if nmax > order {
        return Err(Error::OrderTooSmall { index: nmax, order });
    }
    let r = if family.takes_r() {
        r.clone()
    } else {
        Rational::zero()
    };
    let (prefactor, base) = match family {
        Family::T | Family::Tr => (
            named::exp_linear(&r, order),
            named::central_difference_kernel(order),
        ),
        Family::S2 => (Series::one(order), named::exp_minus_one(order)),
        Family::S1r => (
            named::one_plus_t(order).pow_rational(&r)?,
            named::log_one_plus_t(order),
        ),
        Family::TFirst | Family::TrFirst => (
            named::central_root(order).pow_rational(&(int(2) * &r))?,
            named::central_log(order),
        ),
    };
    let rows = egf_triangle(&prefactor, &base, nmax)?;
    Ok(TriangleTable::from_rows(
        family,
        r,
        Path::GeneratingFunction,
        rows,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Number of partitions of an `n`-set into exactly `k` nonempty blocks, by
    /// enumerating restricted growth strings.
    fn partitions_brute_force(n: usize, k: usize) -> usize {
        fn walk(i: usize, n: usize, blocks: usize, k: usize) -> usize {
            if i == n {
                return usize::from(blocks == k);
            }
            let mut total = 0;
            for b in 0..=blocks {
                let next = if b == blocks { blocks + 1 } else { blocks };
                if next <= k {
                    total += walk(i + 1, n, next, k);
                }
            }
            total
        }
        walk(0, n, 0, k)
    }

    fn poly(v: &[Rational]) -> Polynomial {
        Polynomial::new(v.to_vec())
    }

    #[test]
    fn central_factorial_examples() {
        assert_eq!(central_factorial_poly(0), Polynomial::one());
        assert_eq!(central_factorial_poly(1), Polynomial::x());
        assert_eq!(central_factorial_poly(2), poly(&[int(0), int(0), int(1)]));
        // x (x + 1/2)(x - 1/2)
        let direct = &Polynomial::x()
            * &(&Polynomial::linear(ratio(1, 2)) * &Polynomial::linear(ratio(-1, 2)));
        assert_eq!(central_factorial_poly(3), direct);
        assert_eq!(direct, poly(&[int(0), ratio(-1, 4), int(0), int(1)]));
    }

    #[test]
    fn falling_factorial_examples() {
        assert_eq!(falling_factorial_poly(0, &ratio(7, 3)), Polynomial::one());
        assert_eq!(
            falling_factorial_poly(2, &int(0)),
            poly(&[int(0), int(-1), int(1)])
        );
        assert_eq!(
            falling_factorial_poly(2, &int(1)),
            poly(&[int(0), int(1), int(1)])
        );
    }

    #[test]
    fn second_kind_examples() {
        for n in 0..=8 {
            assert_eq!(second_kind(n, n), int(1));
        }
        assert_eq!(second_kind(3, 1), ratio(1, 4));
        assert_eq!(second_kind(2, 1), int(0));
        assert_eq!(second_kind(5, 3), ratio(5, 2));
        assert_eq!(second_kind(2, 5), int(0));
        // Egf oracle for the diagonal and T(3,1).
        let k = named::central_difference_kernel(10);
        assert_eq!(k.egf_coeff(3).unwrap(), second_kind(3, 1));
    }

    #[test]
    fn r_second_kind_examples() {
        for n in 0..=8 {
            for k in 0..=8 {
                assert_eq!(r_second_kind(n, k, &int(0)), second_kind(n, k));
            }
        }
        assert_eq!(r_second_kind(2, 1, &int(1)), int(2));
        assert_eq!(r_second_kind(1, 2, &ratio(3, 7)), int(0));
        assert_eq!(r_second_kind_by_convolution(2, 1, &int(1)).unwrap(), int(2));
        for n in 0..=6 {
            assert_eq!(
                r_second_kind_by_convolution(n, n, &ratio(-5, 3)).unwrap(),
                int(1)
            );
            assert_eq!(
                r_second_kind_by_convolution(n, 0, &int(0)).unwrap(),
                second_kind(n, 0)
            );
        }
        assert_eq!(
            r_second_kind_by_convolution(1, 2, &int(1)),
            Err(Error::BelowDiagonal { n: 1, k: 2 })
        );
    }

    #[test]
    fn gf_tables() {
        let t = triangle_via_gf(Family::T, 5, &int(0), DEFAULT_ORDER).unwrap();
        assert_eq!(t.value(3, 1), ratio(1, 4));
        assert_eq!(t.value(5, 3), ratio(5, 2));
        for n in 0..=5 {
            for k in 0..=n {
                assert_eq!(t.value(n, k), second_kind(n, k));
            }
        }
        let s2 = triangle_via_gf(Family::S2, 4, &int(0), 4).unwrap();
        assert_eq!(s2.value(4, 2), int(7));
        assert!(s2.same_values(&stirling2_by_recurrence(4)));
        let tr0 = triangle_via_gf(Family::Tr, 5, &int(0), 12).unwrap();
        assert!(tr0.same_values(&t));
        assert_eq!(
            triangle_via_gf(Family::T, 10, &int(0), 8),
            Err(Error::OrderTooSmall {
                index: 10,
                order: 8
            })
        );
    }

    #[test]
    fn stirling2_examples() {
        for n in 1..=8 {
            assert_eq!(stirling2(n, n), int(1));
            assert_eq!(stirling2(n, 1), int(1));
        }
        assert_eq!(stirling2(0, 0), int(1));
        assert_eq!(stirling2(4, 2), int(7));
        let rec = stirling2_by_recurrence(9);
        for n in 0..=9 {
            for k in 0..=n {
                let brute = partitions_brute_force(n, k) as i64;
                assert_eq!(stirling2(n, k), int(brute), "S2({n},{k})");
                assert_eq!(rec.value(n, k), int(brute));
            }
        }
    }

    #[test]
    fn r_stirling1_examples() {
        let r = ratio(2, 3);
        assert_eq!(r_stirling1(1, 0, &r).unwrap(), r);
        assert_eq!(r_stirling1(1, 1, &r).unwrap(), int(1));
        assert_eq!(r_stirling1(2, 1, &int(1)).unwrap(), int(1));
        assert_eq!(r_stirling1(3, 1, &int(0)).unwrap(), int(2));
        assert_eq!(r_stirling1(3, 2, &int(0)).unwrap(), int(-3));
        assert!(r_stirling1(2, 3, &r).is_err());
    }

    #[test]
    fn r_stirling1_gf_matches_polynomial() {
        for r in [int(0), ratio(1, 2), int(1), int(2), int(5), ratio(-3, 2)] {
            let gf = triangle_via_gf(Family::S1r, 15, &r, 15).unwrap();
            for n in 0..=15 {
                for k in 0..=n {
                    assert_eq!(gf.value(n, k), r_stirling1(n, k, &r).unwrap());
                }
            }
        }
    }

    #[test]
    fn central_diff_examples() {
        let p = poly(&[int(3), int(-1), int(2)]);
        assert_eq!(central_diff(0, &p, &ratio(1, 3)), p.eval(&ratio(1, 3)));
        let sq = Polynomial::monomial(int(1), 2);
        assert_eq!(central_diff(1, &sq, &int(0)), int(0));
        for r in [int(0), int(1), int(2)] {
            for n in 0..=8 {
                for k in 0..=8 {
                    assert_eq!(
                        r_second_kind_by_difference(n, k, &r),
                        r_second_kind(n, k, &r),
                        "n={n} k={k} r={r}"
                    );
                }
            }
        }
    }
}
