//! Central factorial numbers of the first kind `t(n, k)` and their r-extension
//! `t_r(n + r, k + r)`, defined as the coefficients of `x^[n]` and `(x + r)^[n]`.
//!
//! Three independent routes produce the r-triangle: polynomial expansion,
//! generating-function extraction, and the two-step row recurrence
//! `(x + r)^[n+1] = (x + r)^[n-1] ((x + r)^2 - ((n-1)/2)^2)`.

use num_traits::{One, Zero};

use crate::central_numbers::{central_factorial_poly, triangle_via_gf};
use crate::error::{Error, Result};
use crate::rational::{int, ratio, Rational};
use crate::table::{Family, Path, TriangleTable};

/// `t(n, k)`, the coefficient of `x^k` in `x^[n]`.
pub fn first_kind(n: usize, k: usize) -> Result<Rational> {
    if k > n {
        return Err(Error::BelowDiagonal { n, k });
    }
    Ok(central_factorial_poly(n).coeff(k))
}

/// `t_r(n + r, k + r)`, the coefficient of `x^k` in `(x + r)^[n]`.
pub fn r_first_kind(n: usize, k: usize, r: &Rational) -> Result<Rational> {
    if k > n {
        return Err(Error::BelowDiagonal { n, k });
    }
    Ok(central_factorial_poly(n).shift(r).coeff(k))
}

/// Whole r-triangle by polynomial expansion.
pub fn r_first_kind_via_poly(nmax: usize, r: &Rational) -> TriangleTable {
    let rows = (0..=nmax)
        .map(|n| central_factorial_poly(n).shift(r).padded(n + 1))
        .collect();
    let family = if r.is_zero() {
        Family::TFirst
    } else {
        Family::TrFirst
    };
    TriangleTable::from_rows(family, r.clone(), Path::Polynomial, rows)
}

pub fn first_kind_via_gf(nmax: usize, order: usize) -> Result<TriangleTable> {
    triangle_via_gf(Family::TFirst, nmax, &Rational::zero(), order)
}

pub fn r_first_kind_via_gf(nmax: usize, r: &Rational, order: usize) -> Result<TriangleTable> {
    triangle_via_gf(Family::TrFirst, nmax, r, order)
}

/// Builds rows `0..=nmax` from the seeds `(x + r)^[0] = 1` and
/// `(x + r)^[1] = x + r`, stepping
/// `t_r(n+1, k) = t_r(n-1, k-2) + 2r t_r(n-1, k-1) + (r^2 - ((n-1)/2)^2) t_r(n-1, k)`.
pub fn r_first_kind_via_recurrence(nmax: usize, r: &Rational) -> TriangleTable {
    let mut rows: Vec<Vec<Rational>> = vec![vec![Rational::one()]];
    if nmax >= 1 {
        rows.push(vec![r.clone(), Rational::one()]);
    }
    let two_r = int(2) * r;
    let r_sq = r * r;
    for next in 2..=nmax {
        // `next` plays n + 1; the source row is n - 1 = next - 2.
        let src = &rows[next - 2];
        let half = ratio(next as i64 - 2, 2);
        let constant = &r_sq - &half * &half;
        let at = |k: isize| -> Rational {
            if k < 0 {
                Rational::zero()
            } else {
                src.get(k as usize).cloned().unwrap_or_else(Rational::zero)
            }
        };
        let row = (0..=next as isize)
            .map(|k| at(k - 2) + &two_r * at(k - 1) + &constant * at(k))
            .collect();
        rows.push(row);
    }
    let family = if r.is_zero() {
        Family::TFirst
    } else {
        Family::TrFirst
    };
    TriangleTable::from_rows(family, r.clone(), Path::Recurrence, rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::central_numbers::DEFAULT_ORDER;

    #[test]
    fn first_kind_examples() {
        for n in 0..=10 {
            assert_eq!(first_kind(n, n).unwrap(), int(1));
        }
        assert_eq!(first_kind(3, 1).unwrap(), ratio(-1, 4));
        assert_eq!(first_kind(2, 1).unwrap(), int(0));
        assert_eq!(first_kind(5, 1).unwrap(), ratio(9, 16));
        assert_eq!(first_kind(5, 3).unwrap(), ratio(-5, 2));
        assert_eq!(first_kind(1, 2), Err(Error::BelowDiagonal { n: 1, k: 2 }));
    }

    #[test]
    fn gf_matches_expansion() {
        let gf = first_kind_via_gf(12, DEFAULT_ORDER).unwrap();
        assert_eq!(gf.value(3, 1), ratio(-1, 4));
        for n in 0..=12 {
            assert_eq!(gf.value(n, n), int(1));
            for k in 0..=n {
                assert_eq!(gf.value(n, k), first_kind(n, k).unwrap());
            }
        }
    }

    #[test]
    fn r_first_kind_examples() {
        let r = ratio(-7, 3);
        assert_eq!(r_first_kind(1, 0, &r).unwrap(), r);
        assert_eq!(r_first_kind(1, 1, &r).unwrap(), int(1));
        for n in 0..=8 {
            for k in 0..=n {
                assert_eq!(
                    r_first_kind(n, k, &int(0)).unwrap(),
                    first_kind(n, k).unwrap()
                );
            }
        }
        let row: Vec<_> = (0..=2)
            .map(|k| r_first_kind(2, k, &int(1)).unwrap())
            .collect();
        assert_eq!(row, vec![int(1), int(2), int(1)]);
    }

    #[test]
    fn r_gf_examples() {
        let plain = first_kind_via_gf(10, 20).unwrap();
        let r0 = r_first_kind_via_gf(10, &int(0), 20).unwrap();
        assert!(plain.same_values(&r0));
        assert_eq!(
            r_first_kind_via_gf(4, &int(1), 10).unwrap().value(1, 0),
            int(1)
        );
        let half = ratio(1, 2);
        assert!(r_first_kind_via_gf(10, &half, 20)
            .unwrap()
            .same_values(&r_first_kind_via_poly(10, &half)));
    }

    #[test]
    fn recurrence_examples() {
        let rec = r_first_kind_via_recurrence(6, &int(1));
        assert_eq!(rec.row(2).unwrap(), &[int(1), int(2), int(1)]);
        for r in [int(0), ratio(1, 2), int(3), ratio(-3, 2)] {
            let rec = r_first_kind_via_recurrence(12, &r);
            let poly = r_first_kind_via_poly(12, &r);
            assert_eq!(rec.first_difference(&poly), None, "r = {r}");
            for n in 0..=12 {
                assert_eq!(rec.value(n, n), int(1));
            }
        }
        assert_eq!(r_first_kind_via_recurrence(0, &int(4)).nmax(), 0);
    }

    #[test]
    fn parity() {
        for n in 0..=15 {
            for k in 0..=n {
                if (n - k) % 2 == 1 {
                    assert!(first_kind(n, k).unwrap().is_zero());
                }
            }
        }
    }
}
