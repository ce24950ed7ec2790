//! Acceptance suite. Runs every criterion, prints one PASS/FAIL line each,
//! and exits nonzero if any fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use sha2::{Digest, Sha256};

use treeverify::bounds::{lemma_f, lemma_f_threshold, lemma_scan, Lemma, ScanGrid, Theorem};
use treeverify::enumerate::{canonical_code, enumerate_codes, oracle_enumerate};
use treeverify::invariants::{abc_index, closed_form, first_zagreb, second_zagreb, Family, Index};
use treeverify::metric::{metric_dimension_bruteforce, metric_dimension_tree};
use treeverify::verify::{sweep, write_csv, VerifyOptions};
use treeverify::{metric::Method, CanonicalCode, Tree};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome, Duration);

/// Class counts for n = 1..=10, frozen from the Prüfer oracle.
const ORACLE_COUNTS: [usize; 10] = [1, 1, 1, 2, 3, 6, 11, 23, 47, 106];

const ABC_REL_TOL: f64 = 1e-12;
const LEMMA_F_FLOOR: f64 = 0.7906;
const LEMMA_F_ESTIMATE: f64 = 0.7962;
const LEMMA_F_ESTIMATE_TOL: f64 = 1e-3;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn closed_forms() -> Outcome {
    for n in 3..=50usize {
        let (p, s) = (Tree::path(n), Tree::star(n));
        for (family, t) in [(Family::Path, &p), (Family::Star, &s)] {
            for index in [Index::M1, Index::M2] {
                let direct = match index {
                    Index::M1 => first_zagreb(t),
                    _ => second_zagreb(t),
                } as f64;
                let cf = closed_form(family, index, n).map_err(|e| e.to_string())?;
                ensure(direct == cf, || format!("{family:?} {index:?} n={n}: {direct} != {cf}"))?;
            }
            let direct = abc_index(t);
            let cf = closed_form(family, Index::Abc, n).map_err(|e| e.to_string())?;
            ensure((direct - cf).abs() <= ABC_REL_TOL * cf.abs(), || {
                format!("{family:?} ABC n={n}: {direct} vs {cf}")
            })?;
        }
        let m2 = second_zagreb(&p) as i64;
        let n = n as i64;
        ensure(m2 == 4 * n - 8, || format!("M2(P_{n}) = {m2} != 4n-8"))?;
        ensure(m2 != 2 * n - 8, || format!("M2(P_{n}) unexpectedly equals 2n-8"))?;
    }
    Ok("n in [3,50]; M2(P_n) = 4n-8 and != 2n-8 at every n".into())
}

fn enumeration_soundness() -> Outcome {
    for n in 1..=10usize {
        let fast = enumerate_codes(n).map_err(|e| e.to_string())?;
        let oracle: Vec<CanonicalCode> = oracle_enumerate(n)
            .map_err(|e| e.to_string())?
            .iter()
            .map(canonical_code)
            .collect();
        ensure(fast == oracle, || format!("code sets differ at n={n}"))?;
        ensure(fast.len() == ORACLE_COUNTS[n - 1], || {
            format!("n={n}: {} classes, pinned {}", fast.len(), ORACLE_COUNTS[n - 1])
        })?;
    }
    let four = enumerate_codes(4).map_err(|e| e.to_string())?;
    ensure(
        four == {
            let mut v = vec![canonical_code(&Tree::path(4)), canonical_code(&Tree::star(4))];
            v.sort();
            v
        },
        || "n=4 is not {P_4, S_4}".into(),
    )?;
    Ok(format!("counts {ORACLE_COUNTS:?}"))
}

fn metric_dimension_cross_check() -> Outcome {
    let mut trees = 0;
    for n in 2..=12usize {
        for code in enumerate_codes(n).map_err(|e| e.to_string())? {
            let t = code.to_tree();
            let brute = metric_dimension_bruteforce(&t).map_err(|e| e.to_string())?.eps;
            let formula = metric_dimension_tree(&t).eps;
            ensure(brute == formula, || format!("{code}: brute {brute}, formula {formula}"))?;
            trees += 1;
        }
        let path_eps = metric_dimension_bruteforce(&Tree::path(n)).map_err(|e| e.to_string())?.eps;
        ensure(path_eps == 1, || format!("eps(P_{n}) = {path_eps}"))?;
        if n >= 4 {
            let star_eps = metric_dimension_bruteforce(&Tree::star(n)).map_err(|e| e.to_string())?.eps;
            ensure(star_eps == n - 2, || format!("eps(S_{n}) = {star_eps}"))?;
        }
    }
    Ok(format!("{trees} classes, n in [2,12]"))
}

fn theorem_sweep() -> Outcome {
    let opts = VerifyOptions {
        eps_method: Method::TreeFormula,
        jobs: 0,
    };
    let reports = sweep(4, 12, opts).map_err(|e| e.to_string())?;
    let mut checked = 0;
    for r in &reports {
        let n = r.n;
        for t in Theorem::ALL {
            let stats = r.theorem(t);
            ensure(stats.violations() == 0, || {
                format!("n={n} {t}: {} violations, first {}", stats.violations(), stats.violation_witnesses[0])
            })?;
        }
        let star = canonical_code(&Tree::star(n));
        let path = canonical_code(&Tree::path(n));
        for t in [Theorem::AbcMax, Theorem::M1Upper, Theorem::M2Upper] {
            let w = &r.theorem(t).equality_witnesses;
            // P_4 also attains the M2 upper bound: 16 - 12 + 1 + 3 = 8 = M2(P_4)
            let expected = if n == 4 && t == Theorem::M2Upper {
                let mut v = vec![star.clone(), path.clone()];
                v.sort();
                v
            } else {
                vec![star.clone()]
            };
            ensure(*w == expected, || format!("n={n} {t}: equality witnesses {w:?}"))?;
        }
        for t in [Theorem::M1Lower, Theorem::M2Lower] {
            ensure(r.theorem(t).equality_witnesses.contains(&path), || {
                format!("n={n} {t}: path missing from equality witnesses")
            })?;
        }
        for index in [Index::M1, Index::M2] {
            ensure(r.extremes(index).min_witnesses.contains(&path), || {
                format!("n={n}: path does not minimize {index:?}")
            })?;
        }
        for index in Index::ALL {
            ensure(r.extremes(index).max_witnesses.contains(&star), || {
                format!("n={n}: star does not maximize {index:?}")
            })?;
        }
        checked += r.class_count;
    }
    Ok(format!("{checked} trees, n in [4,12], 0 violations"))
}

fn lemma_scans() -> Outcome {
    let err = |e: treeverify::Error| e.to_string();
    let l1 = lemma_scan(Lemma::Upsilon, ScanGrid::integer(10_000, 2)).map_err(err)?;
    ensure(l1.violations == 0, || format!("upsilon: {} violations", l1.violations))?;
    ensure(l1.argmin.0 == 3.0, || format!("upsilon minimum at x={}", l1.argmin.0))?;

    let l2 = lemma_scan(Lemma::G, ScanGrid::integer(300, 300)).map_err(err)?;
    ensure(l2.violations == 0, || format!("g: {} violations", l2.violations))?;
    ensure(l2.max_value == 0.0 && l2.argmax.1 == 2.0, || {
        format!("g: max {} at {:?}", l2.max_value, l2.argmax)
    })?;

    let l3 = lemma_scan(Lemma::F, ScanGrid::integer(300, 300)).map_err(err)?;
    ensure(l3.violations == 0, || format!("F: {} violations", l3.violations))?;
    ensure(l3.min_value >= LEMMA_F_FLOOR && l3.min_value > lemma_f_threshold(), || {
        format!("F: min {} below {LEMMA_F_FLOOR}", l3.min_value)
    })?;
    ensure(l3.argmin == (3.0, 300.0), || format!("F: min at {:?}", l3.argmin))?;
    let at_corner = lemma_f(3.0, 300.0).map_err(err)?;
    ensure((at_corner - LEMMA_F_ESTIMATE).abs() <= LEMMA_F_ESTIMATE_TOL, || {
        format!("F(3,300) = {at_corner}, estimate {LEMMA_F_ESTIMATE}")
    })?;
    Ok(format!(
        "upsilon min {:.6}; g max {} at y=2; F min {:.6} at (3,300)",
        l1.min_value, l2.max_value, l3.min_value
    ))
}

fn csv_digest(jobs: usize) -> Result<String, String> {
    let opts = VerifyOptions {
        eps_method: Method::TreeFormula,
        jobs,
    };
    let reports = sweep(4, 12, opts).map_err(|e| e.to_string())?;
    let mut buf = Vec::new();
    write_csv(&reports, &mut buf).map_err(|e| e.to_string())?;
    let digest = Sha256::digest(&buf);
    Ok(digest.iter().map(|b| format!("{b:02x}")).collect())
}

fn determinism() -> Outcome {
    let one = csv_digest(1)?;
    let many = csv_digest(8)?;
    ensure(one == many, || format!("1 worker {one} vs 8 workers {many}"))?;
    Ok(format!("sha256 {}", &one[..16]))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 6] = [
        ("1 closed-form agreement", closed_forms, Duration::from_secs(1)),
        ("2 enumeration soundness", enumeration_soundness, Duration::from_secs(30)),
        ("3 metric-dimension cross-validation", metric_dimension_cross_check, Duration::from_secs(120)),
        ("4 theorem sweep", theorem_sweep, Duration::from_secs(60)),
        ("5 lemma scans", lemma_scans, Duration::from_secs(10)),
        ("6 determinism", determinism, Duration::MAX),
    ];
    let mut failed = 0;
    for (name, check, budget) in criteria {
        let start = Instant::now();
        let outcome = check();
        let elapsed = start.elapsed();
        let outcome = outcome.and_then(|detail| {
            if elapsed <= budget {
                Ok(detail)
            } else {
                Err(format!("took {:.2}s, budget {:.0}s", elapsed.as_secs_f64(), budget.as_secs_f64()))
            }
        });
        match outcome {
            Ok(detail) => println!("PASS  {name} ({:.2}s): {detail}", elapsed.as_secs_f64()),
            Err(why) => {
                failed += 1;
                println!("FAIL  {name} ({:.2}s): {why}", elapsed.as_secs_f64());
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failed} criteria failed");
        ExitCode::FAILURE
    }
}
