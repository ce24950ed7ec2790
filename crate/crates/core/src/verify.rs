//! Exhaustive per-order verification of the bounds over all free trees,
//! extremal search, and the per-tree CSV report.

use std::io::{Read, Write};
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bounds::{evaluate_bounds, BoundEvaluation, Theorem, ABC_TOLERANCE};
use crate::enumerate::{canonical_code, enumerate_codes, CanonicalCode, MAX_ENUM_ORDER};
use crate::error::{Error, Result};
use crate::invariants::{format_sig15, Index, InvariantRecord};
use crate::metric::{metric_dimension_bruteforce, metric_dimension_tree, Method, MAX_BRUTE_ORDER};

/// Smallest order the bounds are checked at.
pub const MIN_VERIFY_ORDER: usize = 4;

/// Witness lists in the summary are truncated to this many codes; counts stay exact.
pub const WITNESS_CAP: usize = 100;

pub const CSV_HEADER: [&str; 14] = [
    "n",
    "code",
    "eps",
    "eps_method",
    "m1",
    "m2",
    "abc",
    "abc_max_bound",
    "m1_lower",
    "m1_upper",
    "m2_lower",
    "m2_upper",
    "viol_flags",
    "eq_flags",
];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct VerifyOptions {
    pub eps_method: Method,
    /// Worker threads; 0 lets rayon choose.
    pub jobs: usize,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            eps_method: Method::TreeFormula,
            jobs: 0,
        }
    }
}

/// Everything computed for one tree.
#[derive(Debug, Clone, PartialEq)]
pub struct TreeRow {
    pub code: CanonicalCode,
    pub record: InvariantRecord,
    pub evals: [BoundEvaluation; 5],
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TheoremStats {
    pub theorem: Theorem,
    pub violation_witnesses: Vec<CanonicalCode>,
    pub equality_witnesses: Vec<CanonicalCode>,
}

impl TheoremStats {
    pub fn violations(&self) -> usize {
        self.violation_witnesses.len()
    }

    pub fn equalities(&self) -> usize {
        self.equality_witnesses.len()
    }
}

/// Minimum and maximum of one index with every attaining tree.
#[derive(Debug, Clone, PartialEq)]
pub struct Extremes {
    pub index: Index,
    pub min_value: f64,
    pub min_witnesses: Vec<CanonicalCode>,
    pub max_value: f64,
    pub max_witnesses: Vec<CanonicalCode>,
}

/// A tree where the two metric-dimension routes disagree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Disagreement {
    pub code: CanonicalCode,
    pub brute: usize,
    pub formula: usize,
}

#[derive(Debug, Clone)]
pub struct VerificationReport {
    pub n: usize,
    pub eps_method: Method,
    pub class_count: usize,
    pub theorems: Vec<TheoremStats>,
    pub extremal: Vec<Extremes>,
    pub disagreements: Vec<Disagreement>,
    /// In canonical-code order.
    pub rows: Vec<TreeRow>,
    pub seconds: f64,
}

impl VerificationReport {
    pub fn total_violations(&self) -> usize {
        self.theorems.iter().map(TheoremStats::violations).sum()
    }

    /// No violations and no method disagreements.
    pub fn is_clean(&self) -> bool {
        self.total_violations() == 0 && self.disagreements.is_empty()
    }

    pub fn theorem(&self, t: Theorem) -> &TheoremStats {
        self.theorems.iter().find(|s| s.theorem == t).expect("all theorems present")
    }

    pub fn extremes(&self, index: Index) -> &Extremes {
        self.extremal.iter().find(|e| e.index == index).expect("all indices present")
    }

    /// `key=value` summary lines; witness lists capped at [`WITNESS_CAP`].
    pub fn summary_lines(&self) -> String {
        fn codes(list: &[CanonicalCode]) -> String {
            let shown: Vec<String> = list.iter().take(WITNESS_CAP).map(|c| c.to_string()).collect();
            shown.join(",")
        }
        let n = self.n;
        let mut s = String::new();
        s.push_str(&format!("n={n}\nclass_count={}\n", self.class_count));
        s.push_str(&format!("n{n}.eps_method={}\n", self.eps_method));
        s.push_str(&format!("n{n}.disagreements={}\n", self.disagreements.len()));
        for d in &self.disagreements {
            s.push_str(&format!(
                "n{n}.disagreement={} brute={} tree={}\n",
                d.code, d.brute, d.formula
            ));
        }
        for t in &self.theorems {
            let name = t.theorem.name();
            s.push_str(&format!("n{n}.{name}.violations={}\n", t.violations()));
            if t.violations() > 0 {
                s.push_str(&format!(
                    "n{n}.{name}.violation_witnesses={}\n",
                    codes(&t.violation_witnesses)
                ));
            }
            s.push_str(&format!("n{n}.{name}.equalities={}\n", t.equalities()));
            s.push_str(&format!(
                "n{n}.{name}.equality_witnesses={}\n",
                codes(&t.equality_witnesses)
            ));
        }
        for e in &self.extremal {
            let name = e.index.name();
            s.push_str(&format!("n{n}.{name}.min={}\n", format_sig15(e.min_value)));
            s.push_str(&format!("n{n}.{name}.min_witnesses={}\n", codes(&e.min_witnesses)));
            s.push_str(&format!("n{n}.{name}.max={}\n", format_sig15(e.max_value)));
            s.push_str(&format!("n{n}.{name}.max_witnesses={}\n", codes(&e.max_witnesses)));
        }
        s.push_str(&format!("n{n}.seconds={:.3}\n", self.seconds));
        s
    }
}

fn check_order(n: usize, method: Method) -> Result<()> {
    let max = match method {
        Method::TreeFormula => MAX_ENUM_ORDER,
        _ => MAX_ENUM_ORDER.min(MAX_BRUTE_ORDER),
    };
    if !(MIN_VERIFY_ORDER..=max).contains(&n) {
        return Err(Error::OrderOutOfRange {
            n,
            min: MIN_VERIFY_ORDER,
            max,
        });
    }
    Ok(())
}

fn with_pool<T: Send>(jobs: usize, f: impl FnOnce() -> T + Send) -> Result<T> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .map_err(|e| Error::Report(format!("thread pool: {e}")))?;
    Ok(pool.install(f))
}

fn evaluate_tree(
    code: &CanonicalCode,
    method: Method,
) -> Result<(TreeRow, Option<Disagreement>)> {
    let tree = code.to_tree();
    let (eps, disagreement) = match method {
        Method::TreeFormula => (metric_dimension_tree(&tree).eps, None),
        Method::BruteForce => (metric_dimension_bruteforce(&tree)?.eps, None),
        Method::Both => {
            let brute = metric_dimension_bruteforce(&tree)?.eps;
            let formula = metric_dimension_tree(&tree).eps;
            let d = (brute != formula).then(|| Disagreement {
                code: code.clone(),
                brute,
                formula,
            });
            (brute, d)
        }
    };
    let record = InvariantRecord::compute(&tree, eps);
    let evals = evaluate_bounds(&record)?;
    Ok((
        TreeRow {
            code: code.clone(),
            record,
            evals,
        },
        disagreement,
    ))
}

/// Checks every bound on every isomorphism class of order `n`.
///
/// Violations and disagreements are collected, never fatal.
pub fn verify_order(n: usize, opts: VerifyOptions) -> Result<VerificationReport> {
    check_order(n, opts.eps_method)?;
    let start = Instant::now();
    let codes = enumerate_codes(n)?;
    let results: Vec<(TreeRow, Option<Disagreement>)> = with_pool(opts.jobs, || {
        codes
            .par_iter()
            .map(|c| evaluate_tree(c, opts.eps_method))
            .collect::<Result<Vec<_>>>()
    })??;

    let mut theorems: Vec<TheoremStats> = Theorem::ALL
        .iter()
        .map(|&theorem| TheoremStats {
            theorem,
            violation_witnesses: Vec::new(),
            equality_witnesses: Vec::new(),
        })
        .collect();
    let mut disagreements = Vec::new();
    let mut rows = Vec::with_capacity(results.len());
    for (row, d) in results {
        for (stats, ev) in theorems.iter_mut().zip(&row.evals) {
            if ev.violated {
                stats.violation_witnesses.push(row.code.clone());
            }
            if ev.equality {
                stats.equality_witnesses.push(row.code.clone());
            }
        }
        disagreements.extend(d);
        rows.push(row);
    }
    let extremal = Index::ALL
        .iter()
        .map(|&index| {
            extremes_of(
                index,
                rows.iter().map(|r| {
                    let v = match index {
                        Index::M1 => r.record.m1 as f64,
                        Index::M2 => r.record.m2 as f64,
                        Index::Abc => r.record.abc,
                    };
                    (&r.code, v)
                }),
            )
        })
        .collect();
    Ok(VerificationReport {
        n,
        eps_method: opts.eps_method,
        class_count: rows.len(),
        theorems,
        extremal,
        disagreements,
        rows,
        seconds: start.elapsed().as_secs_f64(),
    })
}

/// Values within [`ABC_TOLERANCE`] count as ties; integer indices are exact.
fn extremes_of<'a>(
    index: Index,
    values: impl Iterator<Item = (&'a CanonicalCode, f64)>,
) -> Extremes {
    let tol = if index == Index::Abc { ABC_TOLERANCE } else { 0.0 };
    let mut e = Extremes {
        index,
        min_value: f64::INFINITY,
        min_witnesses: Vec::new(),
        max_value: f64::NEG_INFINITY,
        max_witnesses: Vec::new(),
    };
    let all: Vec<(&CanonicalCode, f64)> = values.collect();
    for &(_, v) in &all {
        e.min_value = e.min_value.min(v);
        e.max_value = e.max_value.max(v);
    }
    for (code, v) in all {
        if v - e.min_value <= tol {
            e.min_witnesses.push(code.clone());
        }
        if e.max_value - v <= tol {
            e.max_witnesses.push(code.clone());
        }
    }
    e
}

/// Exact extremes of `index` over all trees of order `n`.
pub fn extremal_search(n: usize, index: Index) -> Result<Extremes> {
    let codes = enumerate_codes(n)?;
    let values: Vec<f64> = codes.iter().map(|c| index.of(&c.to_tree())).collect();
    Ok(extremes_of(index, codes.iter().zip(values)))
}

/// Verifies every order in `min_n..=max_n`.
pub fn sweep(min_n: usize, max_n: usize, opts: VerifyOptions) -> Result<Vec<VerificationReport>> {
    if min_n > max_n {
        return Err(Error::OrderOutOfRange {
            n: max_n,
            min: min_n,
            max: MAX_ENUM_ORDER,
        });
    }
    check_order(min_n, opts.eps_method)?;
    check_order(max_n, opts.eps_method)?;
    (min_n..=max_n).map(|n| verify_order(n, opts)).collect()
}

/// One CSV line of the per-tree report.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CsvRow {
    pub n: usize,
    pub code: String,
    pub eps: usize,
    pub eps_method: String,
    pub m1: u64,
    pub m2: u64,
    pub abc: String,
    pub abc_max_bound: String,
    pub m1_lower: i64,
    pub m1_upper: i64,
    pub m2_lower: i64,
    pub m2_upper: i64,
    pub viol_flags: String,
    pub eq_flags: String,
}

impl CsvRow {
    pub fn from_tree_row(row: &TreeRow, method: Method) -> Self {
        let flags = |pick: fn(&BoundEvaluation) -> bool, mark: char| -> String {
            row.evals.iter().map(|e| if pick(e) { mark } else { '.' }).collect()
        };
        let int = |i: usize| row.evals[i].bound_value as i64;
        CsvRow {
            n: row.record.n,
            code: row.code.to_string(),
            eps: row.record.eps,
            eps_method: method.name().to_string(),
            m1: row.record.m1,
            m2: row.record.m2,
            abc: format_sig15(row.record.abc),
            abc_max_bound: format_sig15(row.evals[0].bound_value),
            m1_lower: int(1),
            m1_upper: int(2),
            m2_lower: int(3),
            m2_upper: int(4),
            viol_flags: flags(|e| e.violated, 'V'),
            eq_flags: flags(|e| e.equality, 'E'),
        }
    }

    /// Checks field syntax: code shape, method name, flag alphabet, numeric ABC columns.
    pub fn validate(&self) -> Result<CanonicalCode> {
        let code: CanonicalCode = self.code.parse()?;
        if code.order() != self.n {
            return Err(Error::Report(format!("code {} has order != {}", self.code, self.n)));
        }
        self.eps_method.parse::<Method>()?;
        let flags_ok = |s: &str, mark: char| s.len() == 5 && s.chars().all(|c| c == '.' || c == mark);
        if !flags_ok(&self.viol_flags, 'V') || !flags_ok(&self.eq_flags, 'E') {
            return Err(Error::Report(format!("bad flags on {}", self.code)));
        }
        for v in [&self.abc, &self.abc_max_bound] {
            v.parse::<f64>()
                .map_err(|_| Error::Report(format!("`{v}` is not a number")))?;
        }
        Ok(code)
    }

    /// Rebuilds the tree from its code and checks it reproduces the row.
    /// `eps` is taken from the row.
    pub fn reproduce(&self) -> Result<()> {
        let code = self.validate()?;
        if code.order() < MIN_VERIFY_ORDER || code.order() > MAX_ENUM_ORDER {
            return Err(Error::OrderOutOfRange {
                n: code.order(),
                min: MIN_VERIFY_ORDER,
                max: MAX_ENUM_ORDER,
            });
        }
        let tree = code.to_tree();
        if canonical_code(&tree) != code {
            return Err(Error::Report(format!("{} is not canonical", self.code)));
        }
        let record = InvariantRecord::compute(&tree, self.eps);
        let evals = evaluate_bounds(&record)?;
        let rebuilt = CsvRow::from_tree_row(
            &TreeRow {
                code,
                record,
                evals,
            },
            self.eps_method.parse()?,
        );
        if rebuilt != *self {
            return Err(Error::Report(format!("row for {} does not reproduce", self.code)));
        }
        Ok(())
    }
}

/// Writes the header and one row per tree, orders in the given sequence.
pub fn write_csv<W: Write>(reports: &[VerificationReport], out: W) -> Result<()> {
    let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(out);
    w.write_record(CSV_HEADER)?;
    for report in reports {
        for row in &report.rows {
            w.serialize(CsvRow::from_tree_row(row, report.eps_method))?;
        }
    }
    w.flush()?;
    Ok(())
}

/// Parses and validates a CSV report.
pub fn read_csv<R: Read>(input: R) -> Result<Vec<CsvRow>> {
    let mut r = csv::ReaderBuilder::new().has_headers(true).from_reader(input);
    let header: Vec<String> = r.headers()?.iter().map(str::to_string).collect();
    if header != CSV_HEADER {
        return Err(Error::Report(format!("unexpected header {header:?}")));
    }
    let mut rows = Vec::new();
    for row in r.deserialize() {
        let row: CsvRow = row?;
        row.validate()?;
        rows.push(row);
    }
    Ok(rows)
}

/// Per-order counts recovered from CSV rows.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CsvTally {
    pub n: usize,
    pub class_count: usize,
    pub violations: [usize; 5],
    pub equalities: [usize; 5],
}

/// Groups rows by order, in first-seen order.
pub fn tally_csv(rows: &[CsvRow]) -> Vec<CsvTally> {
    let mut out: Vec<CsvTally> = Vec::new();
    for row in rows {
        if out.last().map(|t| t.n) != Some(row.n) {
            out.push(CsvTally {
                n: row.n,
                class_count: 0,
                violations: [0; 5],
                equalities: [0; 5],
            });
        }
        let t = out.last_mut().expect("pushed above");
        t.class_count += 1;
        for (i, c) in row.viol_flags.chars().enumerate().take(5) {
            t.violations[i] += usize::from(c == 'V');
        }
        for (i, c) in row.eq_flags.chars().enumerate().take(5) {
            t.equalities[i] += usize::from(c == 'E');
        }
    }
    out
}

impl VerificationReport {
    pub fn tally(&self) -> CsvTally {
        let mut t = CsvTally {
            n: self.n,
            class_count: self.class_count,
            violations: [0; 5],
            equalities: [0; 5],
        };
        for (i, s) in self.theorems.iter().enumerate() {
            t.violations[i] = s.violations();
            t.equalities[i] = s.equalities();
        }
        t
    }
}
