//! Command-line front end. [`run`] takes explicit streams so tests can drive it.

use std::fs::File;
use std::io::{BufWriter, Read, Write};
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};

use treeverify::bounds::{
    abc_max_bound, evaluate_bounds, lemma_scan, m1_lower, m1_upper, m2_lower, m2_upper, Lemma,
    ScanGrid,
};
use treeverify::enumerate::{enumerate_codes, MAX_ENUM_ORDER};
use treeverify::invariants::{format_sig15, Index, InvariantRecord};
use treeverify::metric::{metric_dimension, metric_dimension_tree, Method, MAX_BRUTE_ORDER};
use treeverify::verify::{extremal_search, sweep, write_csv, VerifyOptions, MIN_VERIFY_ORDER};
use treeverify::{parse_edge_list, Error, Tree};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_VIOLATION: i32 = 2;

const NOTES: &str = "\
Graph input is an edge list: one `u v` pair per line, 0-based contiguous ids,
`#` comments and blank lines ignored. Reads standard input when FILE is absent or `-`.

Erratum: the second Zagreb index of the path is M2(P_n) = 4n - 8 (two end edges of
weight 2, n - 3 inner edges of weight 4). The closed form 2n - 8 that appears in the
literature is wrong for every n >= 3; this tool uses 4n - 8.

Exit status: 0 success, 1 usage or input error, 2 bound violation or method disagreement.";

#[derive(Debug, Parser)]
#[command(
    name = "treeverify",
    version,
    about = "Zagreb/ABC indices and metric dimension of trees, with exhaustive bound verification",
    after_help = NOTES
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum EnumFormat {
    /// Comma-separated canonical level sequence, one tree per line
    Level,
    /// Edge-list blocks separated by blank lines
    Edges,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MethodArg {
    Brute,
    Tree,
    Both,
}

impl From<MethodArg> for Method {
    fn from(m: MethodArg) -> Method {
        match m {
            MethodArg::Brute => Method::BruteForce,
            MethodArg::Tree => Method::TreeFormula,
            MethodArg::Both => Method::Both,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum IndexArg {
    M1,
    M2,
    Abc,
}

impl From<IndexArg> for Index {
    fn from(i: IndexArg) -> Index {
        match i {
            IndexArg::M1 => Index::M1,
            IndexArg::M2 => Index::M2,
            IndexArg::Abc => Index::Abc,
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// List one tree per isomorphism class of order N, in canonical-code order
    #[command(after_help = NOTES)]
    Enum {
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..=MAX_ENUM_ORDER as i64))]
        n: u32,
        #[arg(long, value_enum, default_value_t = EnumFormat::Level)]
        format: EnumFormat,
    },
    /// Print n, M1, M2 and ABC of a tree
    #[command(after_help = NOTES)]
    Indices { file: Option<PathBuf> },
    /// Metric dimension and a minimum resolving set
    #[command(name = "metric-dim", after_help = NOTES)]
    MetricDim {
        file: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = MethodArg::Both)]
        method: MethodArg,
    },
    /// Bound values for (n, eps), or all bounds evaluated on a tree FILE
    #[command(after_help = NOTES)]
    Bounds {
        file: Option<PathBuf>,
        #[arg(long, conflicts_with = "file", requires = "eps")]
        n: Option<usize>,
        #[arg(long, conflicts_with = "file", requires = "n")]
        eps: Option<usize>,
    },
    /// Scan an auxiliary inequality over a grid (1: upsilon > 0, 2: g <= 0, 3: F > sqrt5/(2 sqrt2))
    #[command(name = "lemma-scan", after_help = NOTES)]
    LemmaScan {
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=3))]
        lemma: u8,
        #[arg(long, value_parser = clap::value_parser!(u64).range(3..=100_000_000))]
        x_max: u64,
        /// Required for lemmas 2 and 3
        #[arg(long, value_parser = clap::value_parser!(u64).range(2..=100_000_000))]
        y_max: Option<u64>,
        /// Use a real grid with this step instead of the integer grid
        #[arg(long)]
        real_step: Option<f64>,
        #[arg(long, default_value_t = 0)]
        jobs: usize,
    },
    /// Check every bound on every tree of each order and write the per-tree CSV
    #[command(after_help = NOTES)]
    Verify {
        #[arg(long)]
        min_n: usize,
        #[arg(long)]
        max_n: usize,
        #[arg(long, value_enum, default_value_t = MethodArg::Both)]
        eps_method: MethodArg,
        #[arg(long)]
        out: PathBuf,
        /// Worker threads (0 = all cores)
        #[arg(long, default_value_t = 0)]
        jobs: usize,
    },
    /// Minimum and maximum of an index over all trees of order N
    #[command(after_help = NOTES)]
    Extremal {
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..=MAX_ENUM_ORDER as i64))]
        n: u32,
        #[arg(long, value_enum)]
        index: IndexArg,
    },
}

enum Failure {
    Usage(String),
    Violation(String),
    Other(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::MethodDisagreement { .. } => Failure::Violation(e.to_string()),
            other => Failure::Other(other),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Other(e.into())
    }
}

/// Parses `argv` (including the program name) and runs the subcommand.
pub fn run<I, S>(argv: I, stdin: &mut dyn Read, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = write!(stdout, "{}", e.render());
                return EXIT_OK;
            }
            let rendered = e.render().to_string();
            let line = rendered.lines().find(|l| !l.trim().is_empty()).unwrap_or("usage error");
            let _ = writeln!(stderr, "{}", line.trim());
            return EXIT_USAGE;
        }
    };
    match dispatch(cli.command, stdin, stdout) {
        Ok(status) => status,
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(stderr, "error: {msg}");
            EXIT_USAGE
        }
        Err(Failure::Violation(msg)) => {
            let _ = writeln!(stderr, "violation: {msg}");
            EXIT_VIOLATION
        }
        Err(Failure::Other(e)) => {
            let _ = writeln!(stderr, "error: {e}");
            EXIT_USAGE
        }
    }
}

fn read_tree(file: Option<&PathBuf>, stdin: &mut dyn Read) -> Result<Tree, Failure> {
    let mut text = String::new();
    match file {
        Some(p) if p.as_os_str() != "-" => {
            File::open(p)?.read_to_string(&mut text)?;
        }
        _ => {
            stdin.read_to_string(&mut text)?;
        }
    }
    parse_edge_list(&text).map_err(|e| Failure::Other(e.into()))
}

fn dispatch(cmd: Command, stdin: &mut dyn Read, out: &mut dyn Write) -> Result<i32, Failure> {
    match cmd {
        Command::Enum { n, format } => {
            let codes = enumerate_codes(n as usize)?;
            let mut w = BufWriter::new(out);
            for (i, code) in codes.iter().enumerate() {
                match format {
                    EnumFormat::Level => writeln!(w, "{}", code.join(','))?,
                    EnumFormat::Edges => {
                        if i > 0 {
                            writeln!(w)?;
                        }
                        write!(w, "{}", code.to_tree().to_edge_list())?;
                    }
                }
            }
            w.flush()?;
            Ok(EXIT_OK)
        }
        Command::Indices { file } => {
            let t = read_tree(file.as_ref(), stdin)?;
            let rec = InvariantRecord::compute(&t, 0);
            writeln!(
                out,
                "n={} m1={} m2={} abc={}",
                rec.n,
                rec.m1,
                rec.m2,
                format_sig15(rec.abc)
            )?;
            Ok(EXIT_OK)
        }
        Command::MetricDim { file, method } => {
            let t = read_tree(file.as_ref(), stdin)?;
            let method: Method = method.into();
            if method != Method::TreeFormula && t.order() > MAX_BRUTE_ORDER {
                return Err(Failure::Usage(format!(
                    "brute force supports order <= {MAX_BRUTE_ORDER}, got {}",
                    t.order()
                )));
            }
            let r = metric_dimension(&t, method)?;
            let witness: Vec<String> = r.witness.iter().map(|v| v.to_string()).collect();
            writeln!(out, "eps={} witness={} method={}", r.eps, witness.join(","), r.method)?;
            Ok(EXIT_OK)
        }
        Command::Bounds { file, n, eps } => match (n, eps) {
            (Some(n), Some(eps)) => {
                if n < 4 || eps == 0 || eps > n - 2 {
                    return Err(Failure::Usage(format!(
                        "need n >= 4 and 1 <= eps <= n - 2, got n={n} eps={eps}"
                    )));
                }
                writeln!(out, "n={n}\neps={eps}")?;
                writeln!(out, "abc_max={}", format_sig15(abc_max_bound(n, eps)?))?;
                writeln!(out, "m1_lower={}", m1_lower(n, eps)?)?;
                writeln!(out, "m1_upper={}", m1_upper(n, eps)?)?;
                writeln!(out, "m2_lower={}", m2_lower(n, eps)?)?;
                writeln!(out, "m2_upper={}", m2_upper(n, eps)?)?;
                Ok(EXIT_OK)
            }
            _ => {
                let t = read_tree(file.as_ref(), stdin)?;
                if t.order() < MIN_VERIFY_ORDER {
                    return Err(Failure::Usage(format!(
                        "bounds apply from order {MIN_VERIFY_ORDER}, got {}",
                        t.order()
                    )));
                }
                let eps = metric_dimension_tree(&t).eps;
                let rec = InvariantRecord::compute(&t, eps);
                writeln!(out, "n={} eps={}", rec.n, rec.eps)?;
                let mut violated = false;
                for ev in evaluate_bounds(&rec)? {
                    violated |= ev.violated;
                    writeln!(
                        out,
                        "{} bound={} observed={} slack={} equality={} violated={}",
                        ev.theorem,
                        format_sig15(ev.bound_value),
                        format_sig15(ev.observed),
                        format_sig15(ev.slack),
                        ev.equality,
                        ev.violated
                    )?;
                }
                Ok(if violated { EXIT_VIOLATION } else { EXIT_OK })
            }
        },
        Command::LemmaScan {
            lemma,
            x_max,
            y_max,
            real_step,
            jobs,
        } => {
            let lemma = Lemma::from_number(lemma).expect("range-checked by clap");
            let y_max = match (lemma, y_max) {
                (Lemma::Upsilon, y) => y.unwrap_or(2),
                (_, Some(y)) => y,
                (_, None) => {
                    return Err(Failure::Usage(format!(
                        "--y-max is required for lemma {}",
                        lemma.number()
                    )))
                }
            };
            let step = real_step.unwrap_or(1.0);
            if !(step.is_finite() && (1e-3..=1e6).contains(&step)) {
                return Err(Failure::Usage(format!(
                    "--real-step must lie in [0.001, 1e6], got {step}"
                )));
            }
            let grid = ScanGrid {
                x_max: x_max as f64,
                y_max: y_max as f64,
                step,
            };
            let report = install(jobs, || lemma_scan(lemma, grid))??;
            write!(out, "{}", report.to_lines())?;
            Ok(if report.violations > 0 {
                EXIT_VIOLATION
            } else {
                EXIT_OK
            })
        }
        Command::Verify {
            min_n,
            max_n,
            eps_method,
            out: path,
            jobs,
        } => {
            let method: Method = eps_method.into();
            let limit = match method {
                Method::TreeFormula => MAX_ENUM_ORDER,
                _ => MAX_BRUTE_ORDER.min(MAX_ENUM_ORDER),
            };
            if min_n < MIN_VERIFY_ORDER {
                return Err(Failure::Usage(format!(
                    "--min-n must be >= {MIN_VERIFY_ORDER} (bounds start at order 4), got {min_n}"
                )));
            }
            if max_n > limit {
                return Err(Failure::Usage(format!(
                    "--max-n must be <= {limit} for --eps-method {}, got {max_n}",
                    method
                )));
            }
            if min_n > max_n {
                return Err(Failure::Usage(format!(
                    "--min-n {min_n} exceeds --max-n {max_n}"
                )));
            }
            let reports = sweep(min_n, max_n, VerifyOptions { eps_method: method, jobs })?;
            let file = File::create(&path)?;
            write_csv(&reports, BufWriter::new(file))?;
            let mut clean = true;
            for r in &reports {
                write!(out, "{}", r.summary_lines())?;
                clean &= r.is_clean();
            }
            let violations: usize = reports.iter().map(|r| r.total_violations()).sum();
            let disagreements: usize = reports.iter().map(|r| r.disagreements.len()).sum();
            writeln!(out, "total_violations={violations}")?;
            writeln!(out, "total_disagreements={disagreements}")?;
            writeln!(out, "csv={}", path.display())?;
            writeln!(out, "status={}", if clean { "ok" } else { "violation" })?;
            Ok(if clean { EXIT_OK } else { EXIT_VIOLATION })
        }
        Command::Extremal { n, index } => {
            let e = extremal_search(n as usize, index.into())?;
            let join = |v: &[treeverify::CanonicalCode]| {
                v.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(",")
            };
            writeln!(out, "n={n}\nindex={}", e.index.name())?;
            writeln!(out, "min={}\nmin_witnesses={}", format_sig15(e.min_value), join(&e.min_witnesses))?;
            writeln!(out, "max={}\nmax_witnesses={}", format_sig15(e.max_value), join(&e.max_witnesses))?;
            Ok(EXIT_OK)
        }
    }
}

fn install<T: Send>(jobs: usize, f: impl FnOnce() -> T + Send) -> Result<T, Failure> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .map_err(|e| Failure::Usage(format!("thread pool: {e}")))?;
    Ok(pool.install(f))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn exit(args: &[&str]) -> (i32, String) {
        let (mut out, mut err) = (Vec::new(), Vec::new());
        let argv = std::iter::once("treeverify").chain(args.iter().copied());
        let code = run(argv, &mut &b""[..], &mut out, &mut err);
        (code, String::from_utf8(out).unwrap() + &String::from_utf8(err).unwrap())
    }

    #[test]
    fn cli_definition_is_consistent() {
        use clap::CommandFactory;
        Cli::command().debug_assert();
    }

    #[test]
    fn argument_enums_map_onto_library_types() {
        assert_eq!(Method::from(MethodArg::Brute), Method::BruteForce);
        assert_eq!(Method::from(MethodArg::Tree), Method::TreeFormula);
        assert_eq!(Method::from(MethodArg::Both), Method::Both);
        assert_eq!(Index::from(IndexArg::Abc), Index::Abc);
    }

    #[test]
    fn parse_failures_use_the_usage_code() {
        assert_eq!(exit(&[]).0, EXIT_USAGE);
        assert_eq!(exit(&["frobnicate"]).0, EXIT_USAGE);
        let (code, text) = exit(&["--version"]);
        assert_eq!(code, EXIT_OK);
        assert!(text.starts_with("treeverify "));
    }

    #[test]
    fn install_runs_on_the_requested_pool() {
        assert_eq!(install(3, rayon::current_num_threads).ok(), Some(3));
    }
}
