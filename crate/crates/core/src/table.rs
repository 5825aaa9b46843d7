use std::fmt;
use std::str::FromStr;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::Rational;

/// Number families stored as triangles.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Family {
    /// Central factorial numbers of the second kind.
    T,
    /// Extended r-central factorial numbers of the second kind.
    Tr,
    /// Central factorial numbers of the first kind.
    #[serde(rename = "t")]
    TFirst,
    /// Extended r-central factorial numbers of the first kind.
    #[serde(rename = "tr")]
    TrFirst,
    /// Stirling numbers of the second kind.
    S2,
    /// r-Stirling numbers of the first kind, from `(x + r)_n`.
    S1r,
}

impl Family {
    pub const ALL: [Family; 6] = [
        Family::T,
        Family::Tr,
        Family::TFirst,
        Family::TrFirst,
        Family::S2,
        Family::S1r,
    ];

    pub fn tag(self) -> &'static str {
        match self {
            Family::T => "T",
            Family::Tr => "Tr",
            Family::TFirst => "t",
            Family::TrFirst => "tr",
            Family::S2 => "S2",
            Family::S1r => "S1r",
        }
    }

    pub fn takes_r(self) -> bool {
        matches!(self, Family::Tr | Family::TrFirst | Family::S1r)
    }

    /// Computation paths implemented for this family. The first is the default.
    pub fn paths(self) -> &'static [Path] {
        use Path::*;
        match self {
            Family::T => &[Direct, GeneratingFunction, Difference],
            Family::Tr => &[Direct, Convolution, GeneratingFunction, Difference],
            Family::TFirst => &[Polynomial, GeneratingFunction, Recurrence],
            Family::TrFirst => &[Polynomial, GeneratingFunction, Recurrence],
            Family::S2 => &[Direct, GeneratingFunction, Recurrence],
            Family::S1r => &[Polynomial, GeneratingFunction],
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for Family {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Family::ALL
            .into_iter()
            .find(|f| f.tag() == s)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown family {s:?}")))
    }
}

/// How a table's values were obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Path {
    /// Explicit alternating sum.
    Direct,
    /// Binomial convolution with the unshifted family.
    Convolution,
    /// Coefficient extraction from the exponential generating function.
    #[serde(rename = "gf")]
    GeneratingFunction,
    /// Iterated central difference of `x^n`.
    Difference,
    /// Expansion of the defining polynomial.
    #[serde(rename = "poly")]
    Polynomial,
    Recurrence,
}

impl Path {
    pub const ALL: [Path; 6] = [
        Path::Direct,
        Path::Convolution,
        Path::GeneratingFunction,
        Path::Difference,
        Path::Polynomial,
        Path::Recurrence,
    ];

    pub fn tag(self) -> &'static str {
        match self {
            Path::Direct => "direct",
            Path::Convolution => "convolution",
            Path::GeneratingFunction => "gf",
            Path::Difference => "difference",
            Path::Polynomial => "poly",
            Path::Recurrence => "recurrence",
        }
    }
}

impl fmt::Display for Path {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for Path {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Path::ALL
            .into_iter()
            .find(|p| p.tag() == s)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown path {s:?}")))
    }
}

/// Values `a(n, k)` for `0 <= k <= n <= nmax`.
///
/// For r-families the cell `(n, k)` holds the value indexed `(n + r, k + r)`;
/// `r` itself is metadata and never an index. Cells above the diagonal are
/// zero and not stored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TriangleTable {
    pub family: Family,
    pub r: Rational,
    pub path: Path,
    rows: Vec<Vec<Rational>>,
}

impl TriangleTable {
    /// Builds a table from row vectors; row `n` must have exactly `n + 1` entries.
    pub fn from_rows(family: Family, r: Rational, path: Path, rows: Vec<Vec<Rational>>) -> Self {
        assert!(!rows.is_empty(), "a table has at least row 0");
        for (n, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), n + 1, "row {n} has the wrong length");
        }
        TriangleTable {
            family,
            r,
            path,
            rows,
        }
    }

    /// Fills every cell from `f(n, k)`.
    pub fn tabulate<F>(family: Family, r: Rational, path: Path, nmax: usize, mut f: F) -> Self
    where
        F: FnMut(usize, usize) -> Rational,
    {
        let rows = (0..=nmax)
            .map(|n| (0..=n).map(|k| f(n, k)).collect())
            .collect();
        Self::from_rows(family, r, path, rows)
    }

    pub fn nmax(&self) -> usize {
        self.rows.len() - 1
    }

    pub fn rows(&self) -> &[Vec<Rational>] {
        &self.rows
    }

    pub fn row(&self, n: usize) -> Option<&[Rational]> {
        self.rows.get(n).map(Vec::as_slice)
    }

    /// `None` only when `n > nmax`; cells above the diagonal are zero.
    pub fn get(&self, n: usize, k: usize) -> Option<Rational> {
        let row = self.rows.get(n)?;
        Some(row.get(k).cloned().unwrap_or_else(Rational::zero))
    }

    /// Like [`get`](Self::get) but panics outside the table.
    pub fn value(&self, n: usize, k: usize) -> Rational {
        self.get(n, k)
            .unwrap_or_else(|| panic!("row {n} outside table with nmax {}", self.nmax()))
    }

    /// First cell, in `(n, k)` order, where the two tables differ.
    pub fn first_difference(&self, other: &TriangleTable) -> Option<(usize, usize)> {
        let nmax = self.nmax().min(other.nmax());
        (0..=nmax)
            .flat_map(|n| (0..=n).map(move |k| (n, k)))
            .find(|&(n, k)| self.rows[n][k] != other.rows[n][k])
    }

    pub fn same_values(&self, other: &TriangleTable) -> bool {
        self.rows == other.rows
    }

    /// Computes `family` up to `nmax` along `path`. `order` is the series
    /// truncation for the generating-function path; `r` must be zero for
    /// families without a shift parameter.
    pub fn compute(
        family: Family,
        nmax: usize,
        r: &Rational,
        path: Path,
        order: usize,
    ) -> Result<TriangleTable> {
        use crate::central_numbers as cn;
        use crate::first_kind as fk;

        if !family.paths().contains(&path) {
            return Err(Error::InvalidArgument(format!(
                "path {path} is not available for family {family}"
            )));
        }
        if !family.takes_r() && !r.is_zero() {
            return Err(Error::InvalidArgument(format!(
                "family {family} takes no r parameter"
            )));
        }
        let tab = |f: &mut dyn FnMut(usize, usize) -> Rational| {
            TriangleTable::tabulate(family, r.clone(), path, nmax, f)
        };
        let table = match (family, path) {
            (_, Path::GeneratingFunction) => cn::triangle_via_gf(family, nmax, r, order)?,
            (Family::T | Family::Tr, Path::Direct) => tab(&mut |n, k| cn::r_second_kind(n, k, r)),
            (Family::Tr, Path::Convolution) => {
                tab(&mut |n, k| cn::r_second_kind_by_convolution(n, k, r).expect("k <= n"))
            }
            (Family::T | Family::Tr, Path::Difference) => {
                tab(&mut |n, k| cn::r_second_kind_by_difference(n, k, r))
            }
            (Family::S2, Path::Direct) => tab(&mut cn::stirling2),
            (Family::S2, Path::Recurrence) => cn::stirling2_by_recurrence(nmax),
            (Family::S1r, Path::Polynomial) => {
                let rows = (0..=nmax)
                    .map(|n| cn::falling_factorial_poly(n, r).padded(n + 1))
                    .collect();
                TriangleTable::from_rows(family, r.clone(), path, rows)
            }
            (Family::TFirst | Family::TrFirst, Path::Polynomial) => {
                fk::r_first_kind_via_poly(nmax, r)
            }
            (Family::TFirst | Family::TrFirst, Path::Recurrence) => {
                fk::r_first_kind_via_recurrence(nmax, r)
            }
            _ => unreachable!("path table and dispatch disagree"),
        };
        Ok(TriangleTable { family, ..table })
    }
}
