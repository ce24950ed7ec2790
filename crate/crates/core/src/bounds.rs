//! Bounds on ABC and Zagreb indices in terms of order and metric dimension,
//! per-tree bound evaluation, and numeric scans of the auxiliary inequalities.

use std::fmt;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::invariants::InvariantRecord;

/// Absolute tolerance for the ABC bound; the integer bounds compare exactly.
pub const ABC_TOLERANCE: f64 = 1e-9;

/// `4/5 - 2/sqrt(5)`, the per-unit drop of the ABC bound below the star value. Negative.
pub fn abc_slope() -> f64 {
    0.8 - 2.0 / 5f64.sqrt()
}

/// `sqrt(5) / (2 sqrt(2))`, the threshold for [`lemma_f`].
pub fn lemma_f_threshold() -> f64 {
    5f64.sqrt() / (2.0 * 2f64.sqrt())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Theorem {
    AbcMax,
    M1Lower,
    M1Upper,
    M2Lower,
    M2Upper,
}

impl Theorem {
    /// Column order for flags and reports.
    pub const ALL: [Theorem; 5] = [
        Theorem::AbcMax,
        Theorem::M1Lower,
        Theorem::M1Upper,
        Theorem::M2Lower,
        Theorem::M2Upper,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Theorem::AbcMax => "abc_max",
            Theorem::M1Lower => "m1_lower",
            Theorem::M1Upper => "m1_upper",
            Theorem::M2Lower => "m2_lower",
            Theorem::M2Upper => "m2_upper",
        }
    }

    pub fn is_upper(self) -> bool {
        matches!(self, Theorem::AbcMax | Theorem::M1Upper | Theorem::M2Upper)
    }

    pub fn tolerance(self) -> f64 {
        match self {
            Theorem::AbcMax => ABC_TOLERANCE,
            _ => 0.0,
        }
    }
}

impl fmt::Display for Theorem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

fn check_domain(n: usize, eps: usize) -> Result<()> {
    if n < 4 {
        return Err(Error::OrderOutOfRange {
            n,
            min: 4,
            max: usize::MAX,
        });
    }
    if eps == 0 || eps > n - 2 {
        return Err(Error::EpsOutOfRange {
            n,
            eps,
            max: n - 2,
        });
    }
    Ok(())
}

/// `sqrt(n^2 - 3n + 2) + (n - 2 - eps)(4/5 - 2/sqrt(5))`.
pub fn abc_max_bound(n: usize, eps: usize) -> Result<f64> {
    check_domain(n, eps)?;
    let nf = n as f64;
    Ok((nf * nf - 3.0 * nf + 2.0).sqrt() + (n - 2 - eps) as f64 * abc_slope())
}

/// `4n - 7 + eps`.
pub fn m1_lower(n: usize, eps: usize) -> Result<i64> {
    check_domain(n, eps)?;
    let (n, eps) = (n as i64, eps as i64);
    Ok(4 * n - 7 + eps)
}

/// `n + (n-1)(n-2) + eps`.
pub fn m1_upper(n: usize, eps: usize) -> Result<i64> {
    check_domain(n, eps)?;
    let (n, eps) = (n as i64, eps as i64);
    Ok(n + (n - 1) * (n - 2) + eps)
}

/// `4n + eps - 9`.
pub fn m2_lower(n: usize, eps: usize) -> Result<i64> {
    check_domain(n, eps)?;
    let (n, eps) = (n as i64, eps as i64);
    Ok(4 * n + eps - 9)
}

/// `n^2 - 3n + eps + 3`.
pub fn m2_upper(n: usize, eps: usize) -> Result<i64> {
    check_domain(n, eps)?;
    let (n, eps) = (n as i64, eps as i64);
    Ok(n * n - 3 * n + eps + 3)
}

/// One theorem checked against one tree.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundEvaluation {
    pub theorem: Theorem,
    pub bound_value: f64,
    pub observed: f64,
    /// `bound - observed` for upper bounds, `observed - bound` for lower.
    pub slack: f64,
    pub equality: bool,
    pub violated: bool,
}

impl BoundEvaluation {
    fn integer(theorem: Theorem, bound: i64, observed: u64) -> Self {
        let observed = observed as i64;
        let slack = if theorem.is_upper() {
            bound - observed
        } else {
            observed - bound
        };
        BoundEvaluation {
            theorem,
            bound_value: bound as f64,
            observed: observed as f64,
            slack: slack as f64,
            equality: slack == 0,
            violated: slack < 0,
        }
    }
}

/// Evaluates all five bounds, in [`Theorem::ALL`] order.
pub fn evaluate_bounds(rec: &InvariantRecord) -> Result<[BoundEvaluation; 5]> {
    let (n, eps) = (rec.n, rec.eps);
    let abc_bound = abc_max_bound(n, eps)?;
    let abc_slack = abc_bound - rec.abc;
    Ok([
        BoundEvaluation {
            theorem: Theorem::AbcMax,
            bound_value: abc_bound,
            observed: rec.abc,
            slack: abc_slack,
            equality: abc_slack.abs() <= ABC_TOLERANCE,
            violated: abc_slack < -ABC_TOLERANCE,
        },
        BoundEvaluation::integer(Theorem::M1Lower, m1_lower(n, eps)?, rec.m1),
        BoundEvaluation::integer(Theorem::M1Upper, m1_upper(n, eps)?, rec.m1),
        BoundEvaluation::integer(Theorem::M2Lower, m2_lower(n, eps)?, rec.m2),
        BoundEvaluation::integer(Theorem::M2Upper, m2_upper(n, eps)?, rec.m2),
    ])
}

fn domain(function: &'static str, point: String) -> Error {
    Error::Domain { function, point }
}

/// `(x-1) sqrt((x-1)/x) - (x-2) sqrt((x-2)/(x-1))`, for `x >= 3`.
pub fn lemma_upsilon(x: f64) -> Result<f64> {
    if !x.is_finite() || x < 3.0 {
        return Err(domain("upsilon", format!("x={x}")));
    }
    Ok((x - 1.0) * ((x - 1.0) / x).sqrt() - (x - 2.0) * ((x - 2.0) / (x - 1.0)).sqrt())
}

/// `sqrt((x+y-2)/(xy)) - sqrt((x+y-3)/((x-1)y))`, for `x >= 3`, `y >= 2`.
pub fn lemma_g(x: f64, y: f64) -> Result<f64> {
    if !(x >= 3.0 && y >= 2.0) || !x.is_finite() || !y.is_finite() {
        return Err(domain("g", format!("x={x} y={y}")));
    }
    Ok(((x + y - 2.0) / (x * y)).sqrt() - ((x + y - 3.0) / ((x - 1.0) * y)).sqrt())
}

/// `upsilon(x) + g(x, y)`.
pub fn lemma_f(x: f64, y: f64) -> Result<f64> {
    Ok(lemma_upsilon(x)? + lemma_g(x, y)?)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Lemma {
    /// `upsilon(x) > 0`
    Upsilon,
    /// `g(x, y) <= 0`
    G,
    /// `F(x, y) > sqrt(5)/(2 sqrt(2))`
    F,
}

impl Lemma {
    pub fn from_number(k: u8) -> Option<Self> {
        match k {
            1 => Some(Lemma::Upsilon),
            2 => Some(Lemma::G),
            3 => Some(Lemma::F),
            _ => None,
        }
    }

    pub fn number(self) -> u8 {
        match self {
            Lemma::Upsilon => 1,
            Lemma::G => 2,
            Lemma::F => 3,
        }
    }

    fn eval(self, x: f64, y: f64) -> Result<f64> {
        match self {
            Lemma::Upsilon => lemma_upsilon(x),
            Lemma::G => lemma_g(x, y),
            Lemma::F => lemma_f(x, y),
        }
    }

    fn violates(self, v: f64) -> bool {
        match self {
            Lemma::Upsilon => v <= 0.0,
            Lemma::G => v > 0.0,
            Lemma::F => v <= lemma_f_threshold(),
        }
    }

    fn has_y(self) -> bool {
        !matches!(self, Lemma::Upsilon)
    }
}

/// Grid `x = 3, 3 + step, ..., <= x_max` and `y = 2, 2 + step, ..., <= y_max`.
/// Step 1 gives the integer grid; `y` is ignored for [`Lemma::Upsilon`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScanGrid {
    pub x_max: f64,
    pub y_max: f64,
    pub step: f64,
}

impl ScanGrid {
    pub fn integer(x_max: u64, y_max: u64) -> Self {
        ScanGrid {
            x_max: x_max as f64,
            y_max: y_max as f64,
            step: 1.0,
        }
    }

    fn axis(start: f64, end: f64, step: f64) -> Vec<f64> {
        if end.is_nan() || end < start {
            return Vec::new();
        }
        let count = ((end - start) / step + 1e-9).floor() as u64 + 1;
        (0..count).map(|i| start + i as f64 * step).collect()
    }
}

/// Extremes and violations of one lemma over a grid.
#[derive(Debug, Clone, PartialEq)]
pub struct ScanReport {
    pub lemma: Lemma,
    pub points: u64,
    pub min_value: f64,
    pub argmin: (f64, f64),
    pub max_value: f64,
    pub argmax: (f64, f64),
    pub violations: u64,
    /// Up to [`ScanReport::WITNESS_CAP`] violating points, in grid order.
    pub violation_points: Vec<(f64, f64)>,
}

impl ScanReport {
    pub const WITNESS_CAP: usize = 20;

    /// `key=value` lines.
    pub fn to_lines(&self) -> String {
        use crate::invariants::format_sig15 as f;
        let mut s = format!(
            "lemma={}\npoints={}\nmin={}\nargmin_x={}\nargmin_y={}\nmax={}\nargmax_x={}\nargmax_y={}\nviolations={}\n",
            self.lemma.number(),
            self.points,
            f(self.min_value),
            f(self.argmin.0),
            f(self.argmin.1),
            f(self.max_value),
            f(self.argmax.0),
            f(self.argmax.1),
            self.violations,
        );
        if !self.violation_points.is_empty() {
            let pts: Vec<String> = self
                .violation_points
                .iter()
                .map(|(x, y)| format!("{}:{}", f(*x), f(*y)))
                .collect();
            s.push_str(&format!("violation_points={}\n", pts.join(",")));
        }
        s
    }
}

struct RowScan {
    points: u64,
    min: (f64, (f64, f64)),
    max: (f64, (f64, f64)),
    violations: u64,
    violation_points: Vec<(f64, f64)>,
}

/// Evaluates the lemma on every grid point. Rows in `x` run in parallel;
/// ties in min/max go to the lexicographically smallest `(x, y)`.
pub fn lemma_scan(lemma: Lemma, grid: ScanGrid) -> Result<ScanReport> {
    if !grid.step.is_finite() || grid.step <= 0.0 {
        return Err(Error::EmptyGrid);
    }
    let xs = ScanGrid::axis(3.0, grid.x_max, grid.step);
    let ys = if lemma.has_y() {
        ScanGrid::axis(2.0, grid.y_max, grid.step)
    } else {
        vec![0.0]
    };
    if xs.is_empty() || ys.is_empty() {
        return Err(Error::EmptyGrid);
    }
    let rows: Vec<RowScan> = xs
        .par_iter()
        .map(|&x| -> Result<RowScan> {
            let mut row = RowScan {
                points: 0,
                min: (f64::INFINITY, (x, ys[0])),
                max: (f64::NEG_INFINITY, (x, ys[0])),
                violations: 0,
                violation_points: Vec::new(),
            };
            for &y in &ys {
                let v = lemma.eval(x, y)?;
                row.points += 1;
                if v < row.min.0 {
                    row.min = (v, (x, y));
                }
                if v > row.max.0 {
                    row.max = (v, (x, y));
                }
                if lemma.violates(v) {
                    row.violations += 1;
                    if row.violation_points.len() < ScanReport::WITNESS_CAP {
                        row.violation_points.push((x, y));
                    }
                }
            }
            Ok(row)
        })
        .collect::<Result<_>>()?;

    // rows arrive in x order, so strict comparison keeps the first extreme
    let mut out = ScanReport {
        lemma,
        points: 0,
        min_value: f64::INFINITY,
        argmin: (xs[0], ys[0]),
        max_value: f64::NEG_INFINITY,
        argmax: (xs[0], ys[0]),
        violations: 0,
        violation_points: Vec::new(),
    };
    for row in rows {
        out.points += row.points;
        if row.min.0 < out.min_value {
            (out.min_value, out.argmin) = row.min;
        }
        if row.max.0 > out.max_value {
            (out.max_value, out.argmax) = row.max;
        }
        out.violations += row.violations;
        let room = ScanReport::WITNESS_CAP - out.violation_points.len();
        out.violation_points
            .extend(row.violation_points.into_iter().take(room));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rec(n: usize, eps: usize, m1: u64, m2: u64, abc: f64) -> InvariantRecord {
        InvariantRecord { n, eps, m1, m2, abc }
    }

    #[test]
    fn bound_values() {
        assert_eq!(m1_lower(4, 1).unwrap(), 10);
        assert_eq!(m1_upper(4, 2).unwrap(), 12);
        assert_eq!(m2_upper(4, 2).unwrap(), 9);
        assert_eq!(m2_lower(4, 1).unwrap(), 8);
        assert!((abc_max_bound(4, 2).unwrap() - 6f64.sqrt()).abs() < 1e-15);
        // sqrt(72) + 7 (4/5 - 2/sqrt 5), evaluated independently
        let expected = 72f64.sqrt() + 7.0 * (4.0 / 5.0 - 2.0 / 5f64.sqrt());
        assert!((abc_max_bound(10, 1).unwrap() - expected).abs() < 1e-12);
        assert!((abc_max_bound(10, 1).unwrap() - 7.824291037239159).abs() < 1e-12);
        assert!(abc_slope() < 0.0);
    }

    #[test]
    fn domain_checks() {
        assert!(abc_max_bound(3, 1).is_err());
        assert!(abc_max_bound(6, 5).is_err());
        assert!(m1_lower(6, 0).is_err());
        assert!(m2_upper(6, 4).is_ok());
    }

    #[test]
    fn base_case_equalities() {
        let p4 = evaluate_bounds(&rec(4, 1, 10, 8, 1.5 * 2f64.sqrt())).unwrap();
        assert!(p4.iter().all(|e| !e.violated));
        assert!(p4[1].equality && p4[3].equality);
        assert!(!p4[0].equality && !p4[2].equality);

        let s4 = evaluate_bounds(&rec(4, 2, 12, 9, 6f64.sqrt())).unwrap();
        assert!(s4.iter().all(|e| !e.violated));
        assert!(s4[0].equality && s4[2].equality && s4[4].equality);
    }

    #[test]
    fn chair_has_unit_slack() {
        // degrees 1,1,1,2,3: m1 = 16, m2 = 3+3+6+2 = 14
        let ev = evaluate_bounds(&rec(5, 2, 16, 14, 0.0)).unwrap();
        assert_eq!(ev[1].bound_value, 15.0);
        assert_eq!(ev[1].slack, 1.0);
        assert!(!ev[1].equality);
    }

    #[test]
    fn detects_violations() {
        let ev = evaluate_bounds(&rec(5, 1, 1, 100, 100.0)).unwrap();
        assert!(ev[0].violated && ev[1].violated && ev[4].violated);
        assert!(evaluate_bounds(&rec(3, 1, 6, 4, 1.0)).is_err());
    }

    #[test]
    fn lemma_points() {
        assert!((lemma_upsilon(3.0).unwrap() - 0.9258).abs() < 1e-4);
        assert_eq!(lemma_g(3.0, 2.0).unwrap(), 0.0);
        // limit is 1/sqrt(3) - 1/sqrt(2) = -0.129757...
        assert!((lemma_g(3.0, 1e6).unwrap() + 0.1296).abs() < 5e-4);
        assert!(lemma_upsilon(2.9).is_err());
        assert!(lemma_g(3.0, 1.5).is_err());
        assert!(lemma_f(f64::NAN, 2.0).is_err());
    }

    #[test]
    fn scan_reports_extremes() {
        let r = lemma_scan(Lemma::Upsilon, ScanGrid::integer(50, 0)).unwrap();
        assert_eq!(r.points, 48);
        assert_eq!(r.argmin.0, 3.0);
        assert_eq!(r.violations, 0);

        let r = lemma_scan(Lemma::G, ScanGrid::integer(20, 20)).unwrap();
        assert_eq!(r.points, 18 * 19);
        assert_eq!(r.max_value, 0.0);
        assert_eq!(r.argmax, (3.0, 2.0));
        assert_eq!(r.violations, 0);

        let r = lemma_scan(
            Lemma::F,
            ScanGrid {
                x_max: 5.0,
                y_max: 4.0,
                step: 0.5,
            },
        )
        .unwrap();
        assert_eq!(r.points, 5 * 5);
        assert_eq!(r.violations, 0);
        assert!(r.to_lines().starts_with("lemma=3\npoints=25\n"));
    }

    #[test]
    fn empty_grids_rejected() {
        assert!(matches!(
            lemma_scan(Lemma::G, ScanGrid::integer(2, 10)),
            Err(Error::EmptyGrid)
        ));
        assert!(lemma_scan(Lemma::G, ScanGrid::integer(10, 1)).is_err());
        let bad = ScanGrid {
            x_max: 10.0,
            y_max: 10.0,
            step: 0.0,
        };
        assert!(lemma_scan(Lemma::F, bad).is_err());
    }
}
