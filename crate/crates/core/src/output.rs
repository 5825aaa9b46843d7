//! Serialized tables and polynomials. Every exact value travels as a `"p/q"`
//! string (`q` omitted when 1), never as a decimal.
//!
//! JSON layout:
//!
//! ```json
//! {
//!   "family": "T",
//!   "r": "0",
//!   "nmax": 3,
//!   "path": "direct",
//!   "payload": { "rows": [["1"], ["0", "1"], ["0", "0", "1"], ["0", "1/4", "0", "1"]] }
//! }
//! ```
//!
//! Polynomial documents use the polynomial kind as `family`, its index as
//! `nmax`, and `"payload": {"coefficients": [...]}` with the constant term first.

use std::fmt;
use std::str::FromStr;

use serde::{de::Error as _, Deserialize, Deserializer, Serialize, Serializer};

use crate::bell::{central_bell_poly, r_central_bell_poly};
use crate::central_numbers::{central_factorial_poly, falling_factorial_poly};
use crate::error::{Error, Result};
use crate::polynomial::Polynomial;
use crate::rational::{parse, serde_wire, to_wire, Rational};
use crate::table::TriangleTable;

/// A rational that serializes as its wire string.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Exact(pub Rational);

impl Serialize for Exact {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&to_wire(&self.0))
    }
}

impl<'de> Deserialize<'de> for Exact {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        parse(&s).map(Exact).map_err(D::Error::custom)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum Payload {
    /// Row `n` holds cells `k = 0..=n`.
    Rows(Vec<Vec<Exact>>),
    Coefficients(Vec<Exact>),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputDocument {
    pub family: String,
    #[serde(with = "serde_wire")]
    pub r: Rational,
    pub nmax: usize,
    pub path: String,
    pub payload: Payload,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
}

impl FromStr for Format {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            _ => Err(Error::InvalidArgument(format!("unknown format {s:?}"))),
        }
    }
}

/// Polynomial families the CLI can emit.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PolyKind {
    CentralBell,
    RCentralBell,
    /// `(x + r)^[n]`.
    CentralFactorial,
    /// `(x + r)_n`.
    FallingFactorial,
}

impl PolyKind {
    pub fn tag(self) -> &'static str {
        match self {
            PolyKind::CentralBell => "central_bell",
            PolyKind::RCentralBell => "r_central_bell",
            PolyKind::CentralFactorial => "central_factorial",
            PolyKind::FallingFactorial => "falling_factorial",
        }
    }

    pub fn compute(self, n: usize, r: &Rational) -> Polynomial {
        match self {
            PolyKind::CentralBell => central_bell_poly(n),
            PolyKind::RCentralBell => r_central_bell_poly(n, r),
            PolyKind::CentralFactorial => central_factorial_poly(n).shift(r),
            PolyKind::FallingFactorial => falling_factorial_poly(n, r),
        }
    }
}

impl fmt::Display for PolyKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for PolyKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        [
            PolyKind::CentralBell,
            PolyKind::RCentralBell,
            PolyKind::CentralFactorial,
            PolyKind::FallingFactorial,
        ]
        .into_iter()
        .find(|k| k.tag() == s)
        .ok_or_else(|| Error::InvalidArgument(format!("unknown polynomial kind {s:?}")))
    }
}

impl OutputDocument {
    pub fn from_table(table: &TriangleTable) -> Self {
        OutputDocument {
            family: table.family.tag().to_string(),
            r: table.r.clone(),
            nmax: table.nmax(),
            path: table.path.tag().to_string(),
            payload: Payload::Rows(
                table
                    .rows()
                    .iter()
                    .map(|row| row.iter().cloned().map(Exact).collect())
                    .collect(),
            ),
        }
    }

    /// Coefficients are padded to `n + 1` entries so the layout is fixed by `n`.
    pub fn from_poly(kind: PolyKind, n: usize, r: &Rational, poly: &Polynomial) -> Self {
        OutputDocument {
            family: kind.tag().to_string(),
            r: r.clone(),
            nmax: n,
            path: "poly".to_string(),
            payload: Payload::Coefficients(poly.padded(n + 1).into_iter().map(Exact).collect()),
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("plain data serializes");
        s.push('\n');
        s
    }

    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))
    }

    /// Tables: header `n,0,1,..,nmax`, one row per `n`, blanks past the diagonal.
    /// Polynomials: header `k,coefficient`, one row per power.
    pub fn to_csv(&self) -> String {
        let mut w = csv::WriterBuilder::new()
            .flexible(false)
            .from_writer(Vec::new());
        match &self.payload {
            Payload::Rows(rows) => {
                let width = rows.len();
                let header =
                    std::iter::once("n".to_string()).chain((0..width).map(|k| k.to_string()));
                w.write_record(header).expect("in-memory write");
                for (n, row) in rows.iter().enumerate() {
                    let cells = row
                        .iter()
                        .map(|q| to_wire(&q.0))
                        .chain(std::iter::repeat(String::new()))
                        .take(width);
                    w.write_record(std::iter::once(n.to_string()).chain(cells))
                        .expect("in-memory write");
                }
            }
            Payload::Coefficients(cs) => {
                w.write_record(["k", "coefficient"])
                    .expect("in-memory write");
                for (k, q) in cs.iter().enumerate() {
                    w.write_record([k.to_string(), to_wire(&q.0)])
                        .expect("in-memory write");
                }
            }
        }
        String::from_utf8(w.into_inner().expect("flush to Vec")).expect("utf-8 output")
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => self.to_json(),
            Format::Csv => self.to_csv(),
        }
    }

    /// Table rows as rationals; `None` for polynomial documents.
    pub fn rows(&self) -> Option<Vec<Vec<Rational>>> {
        match &self.payload {
            Payload::Rows(rows) => Some(
                rows.iter()
                    .map(|row| row.iter().map(|q| q.0.clone()).collect())
                    .collect(),
            ),
            Payload::Coefficients(_) => None,
        }
    }

    pub fn coefficient_strings(&self) -> Option<Vec<String>> {
        match &self.payload {
            Payload::Coefficients(cs) => Some(cs.iter().map(|q| to_wire(&q.0)).collect()),
            Payload::Rows(_) => None,
        }
    }
}
