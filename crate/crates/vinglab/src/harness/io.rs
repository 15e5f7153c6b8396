//! Point-set file format and report rendering.
//!
//! Point files are plain text: one `x y` integer pair per line, `#` starts a
//! comment, blank lines are ignored. Reports carry exact rationals as
//! `"p/q"` strings alongside decimal renderings; the JSON schema is
//! versioned.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use num::rational::BigRational;
use num::BigUint;
use serde::{Deserialize, Serialize};

use crate::geom::{Point, PointSet};
use crate::ratio;

use super::HarnessError;

pub const SCHEMA_VERSION: u32 = 1;
pub const ENGINE_VERSION: &str = env!("CARGO_PKG_VERSION");

pub fn parse_points(text: &str) -> Result<Vec<Point>, HarnessError> {
    let mut points = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let mut it = line.split_whitespace();
        let (Some(xs), Some(ys), None) = (it.next(), it.next(), it.next()) else {
            return Err(HarnessError::Parse {
                line: lineno + 1,
                msg: format!("expected `x y`, got {line:?}"),
            });
        };
        let x: i64 = xs.parse().map_err(|_| HarnessError::Parse {
            line: lineno + 1,
            msg: format!("bad x coordinate {xs:?}"),
        })?;
        let y: i64 = ys.parse().map_err(|_| HarnessError::Parse {
            line: lineno + 1,
            msg: format!("bad y coordinate {ys:?}"),
        })?;
        points.push(Point::new(x, y));
    }
    Ok(points)
}

pub fn read_point_file(path: &Path) -> Result<PointSet, HarnessError> {
    let text = fs::read_to_string(path).map_err(HarnessError::Io)?;
    let points = parse_points(&text)?;
    PointSet::new(points).map_err(HarnessError::Validation)
}

pub fn format_points(ps: &PointSet) -> String {
    let mut out = String::new();
    for p in ps.points() {
        let _ = writeln!(out, "{} {}", p.x, p.y);
    }
    out
}

/// Exact rational with a decimal rendering.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct RationalRepr {
    pub exact: String,
    pub decimal: f64,
}

impl RationalRepr {
    pub fn of(r: &BigRational) -> RationalRepr {
        RationalRepr {
            exact: ratio::render(r),
            decimal: ratio::to_f64(r),
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct FilterRepr {
    pub min_degree: u32,
    pub max_edges: Option<usize>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CountReport {
    pub schema_version: u32,
    pub command: String,
    pub input: String,
    pub n: usize,
    pub class: String,
    pub filter: FilterRepr,
    pub crossing_pairs: usize,
    pub count: String,
    pub from_cache: bool,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct DegreeStat {
    pub degree: usize,
    pub sum: String,
    pub v_hat: RationalRepr,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct StatsReport {
    pub schema_version: u32,
    pub command: String,
    pub input: String,
    pub n: usize,
    pub class: String,
    pub filter: FilterRepr,
    pub count: String,
    pub sum_edges: String,
    pub max_edges: usize,
    pub per_degree: Vec<DegreeStat>,
    pub sum_vx: String,
    pub v_hat_x: RationalRepr,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CheckResult {
    pub name: String,
    pub pass: bool,
    pub lhs: String,
    pub rhs: String,
    pub note: String,
}

impl CheckResult {
    pub fn line(&self) -> String {
        let verdict = if self.pass { "PASS" } else { "FAIL" };
        if self.note.is_empty() {
            format!("{verdict} {}: {} vs {}", self.name, self.lhs, self.rhs)
        } else {
            format!(
                "{verdict} {}: {} vs {} ({})",
                self.name, self.lhs, self.rhs, self.note
            )
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SuiteReport {
    pub suite: String,
    pub checks: Vec<CheckResult>,
}

impl SuiteReport {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct VerifyReport {
    pub schema_version: u32,
    pub command: String,
    pub input: Option<String>,
    pub suites: Vec<SuiteReport>,
    pub all_pass: bool,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct BoundsRowRepr {
    pub name: String,
    pub quoted: String,
    pub computed: String,
    pub deviation: f64,
    pub note: String,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct BoundsReportRepr {
    pub schema_version: u32,
    pub command: String,
    pub rows: Vec<BoundsRowRepr>,
}

pub fn big_uint_str(v: &BigUint) -> String {
    v.to_string()
}

pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("report serialization");
    s.push('\n');
    s
}

// minimal CSV quoting: wrap fields containing separators or quotes
pub fn csv_field(s: &str) -> String {
    if s.contains(',') || s.contains('"') || s.contains('\n') {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_points_with_comments_and_blanks() {
        let text = "# fixture\n0 0\n\n 10 0 # corner\n4 9\n";
        let pts = parse_points(text).unwrap();
        assert_eq!(
            pts,
            vec![Point::new(0, 0), Point::new(10, 0), Point::new(4, 9)]
        );
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        let err = parse_points("0 0\n1 2 3\n").unwrap_err();
        match err {
            HarnessError::Parse { line, .. } => assert_eq!(line, 2),
            other => panic!("unexpected {other:?}"),
        }
        let err = parse_points("0 zero\n").unwrap_err();
        assert!(matches!(err, HarnessError::Parse { line: 1, .. }));
    }

    #[test]
    fn points_roundtrip() {
        let ps = PointSet::new(vec![
            Point::new(0, 0),
            Point::new(10, 1),
            Point::new(4, 9),
        ])
        .unwrap();
        let text = format_points(&ps);
        let back = parse_points(&text).unwrap();
        assert_eq!(back, ps.points());
    }

    #[test]
    fn csv_quoting() {
        assert_eq!(csv_field("plain"), "plain");
        assert_eq!(csv_field("a,b"), "\"a,b\"");
        assert_eq!(csv_field("say \"hi\""), "\"say \"\"hi\"\"\"");
    }
}
