//! Degree-based indices: first and second Zagreb, atom-bond connectivity.

use crate::error::{Error, Result};
use crate::graph::Tree;

/// Index values and metric dimension for one tree.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InvariantRecord {
    pub n: usize,
    pub eps: usize,
    pub m1: u64,
    pub m2: u64,
    pub abc: f64,
}

impl InvariantRecord {
    /// Computes the three indices; `eps` comes from the caller.
    pub fn compute(t: &Tree, eps: usize) -> Self {
        InvariantRecord {
            n: t.order(),
            eps,
            m1: first_zagreb(t),
            m2: second_zagreb(t),
            abc: abc_index(t),
        }
    }
}

/// Sum of squared degrees.
pub fn first_zagreb(t: &Tree) -> u64 {
    (0..t.order()).map(|v| (t.degree(v) as u64).pow(2)).sum()
}

/// Sum over edges of the product of endpoint degrees.
pub fn second_zagreb(t: &Tree) -> u64 {
    t.edges()
        .into_iter()
        .map(|(u, v)| (t.degree(u) * t.degree(v)) as u64)
        .sum()
}

/// Atom-bond connectivity, summed over edges in sorted order.
pub fn abc_index(t: &Tree) -> f64 {
    t.edges()
        .into_iter()
        .map(|(u, v)| abc_term(t.degree(u), t.degree(v)))
        .sum()
}

/// `sqrt((a + b - 2) / (a b))` for one edge with endpoint degrees `a`, `b`.
pub fn abc_term(a: usize, b: usize) -> f64 {
    let (a, b) = (a as f64, b as f64);
    ((a + b - 2.0) / (a * b)).sqrt()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    Path,
    Star,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Index {
    M1,
    M2,
    Abc,
}

impl Index {
    pub const ALL: [Index; 3] = [Index::M1, Index::M2, Index::Abc];

    pub fn name(self) -> &'static str {
        match self {
            Index::M1 => "m1",
            Index::M2 => "m2",
            Index::Abc => "abc",
        }
    }

    pub fn of(self, t: &Tree) -> f64 {
        match self {
            Index::M1 => first_zagreb(t) as f64,
            Index::M2 => second_zagreb(t) as f64,
            Index::Abc => abc_index(t),
        }
    }
}

/// Closed forms for paths and stars, `n >= 3`.
///
/// `M2(P_n)` is `4n - 8`: every path has two edges of weight 2 and
/// `n - 3` edges of weight 4. The frequently quoted `2n - 8` is wrong.
pub fn closed_form(family: Family, index: Index, n: usize) -> Result<f64> {
    if n < 3 {
        return Err(Error::OrderOutOfRange {
            n,
            min: 3,
            max: usize::MAX,
        });
    }
    let nf = n as f64;
    Ok(match (family, index) {
        (Family::Path, Index::M1) => 4.0 * nf - 6.0,
        (Family::Path, Index::M2) => 4.0 * nf - 8.0,
        (Family::Path, Index::Abc) => (nf - 1.0) / std::f64::consts::SQRT_2,
        (Family::Star, Index::M1) => nf * (nf - 1.0),
        (Family::Star, Index::M2) => (nf - 1.0).powi(2),
        (Family::Star, Index::Abc) => (nf - 2.0).sqrt() * (nf - 1.0).sqrt(),
    })
}

/// `%.15g`-style rendering: 15 significant digits, trailing zeros trimmed,
/// scientific notation outside `[1e-5, 1e15)`.
pub fn format_sig15(x: f64) -> String {
    const DIGITS: i32 = 15;
    if x == 0.0 {
        return "0".into();
    }
    if !x.is_finite() {
        return format!("{x}");
    }
    let sci = format!("{:.*e}", (DIGITS - 1) as usize, x);
    let (mantissa, exp) = sci.split_once('e').expect("exponent present");
    let exp: i32 = exp.parse().expect("integer exponent");
    if !(-5..DIGITS).contains(&exp) {
        let m = trim_zeros(mantissa);
        return format!("{m}e{}{:02}", if exp < 0 { '-' } else { '+' }, exp.abs());
    }
    let decimals = (DIGITS - 1 - exp).max(0) as usize;
    trim_zeros(&format!("{x:.decimals$}")).to_string()
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_values() {
        let p4 = Tree::path(4);
        let s4 = Tree::star(4);
        assert_eq!(first_zagreb(&p4), 10);
        assert_eq!(first_zagreb(&s4), 12);
        assert_eq!(second_zagreb(&p4), 8);
        assert_eq!(second_zagreb(&s4), 9);
        let edge = Tree::path(2);
        assert_eq!(first_zagreb(&edge), 2);
        assert_eq!(second_zagreb(&edge), 1);
        assert_eq!(abc_index(&edge), 0.0);
        assert!((abc_index(&s4) - 2.449489742783178).abs() < 1e-15);
    }

    #[test]
    fn path_abc_by_direct_summation() {
        for n in 3..=20 {
            let direct: f64 = (0..n - 1).map(|_| 0.5f64.sqrt()).sum();
            assert!((abc_index(&Tree::path(n)) - direct).abs() < 1e-12);
            let cf = closed_form(Family::Path, Index::Abc, n).unwrap();
            assert!((cf - direct).abs() <= 1e-12 * direct);
        }
    }

    #[test]
    fn closed_form_examples() {
        assert_eq!(closed_form(Family::Star, Index::M1, 4).unwrap(), 12.0);
        assert_eq!(closed_form(Family::Path, Index::M2, 4).unwrap(), 8.0);
        assert_eq!(closed_form(Family::Path, Index::M2, 3).unwrap(), 4.0);
        assert!((closed_form(Family::Star, Index::Abc, 4).unwrap() - 6f64.sqrt()).abs() < 1e-15);
        assert!(closed_form(Family::Path, Index::M1, 2).is_err());
    }

    #[test]
    fn sig15_formatting() {
        assert_eq!(format_sig15(3.0 / 2f64.sqrt()), "2.12132034355964");
        assert_eq!(format_sig15(6f64.sqrt()), "2.44948974278318");
        assert_eq!(format_sig15(0.0), "0");
        assert_eq!(format_sig15(6.0), "6");
        assert_eq!(format_sig15(-0.0944271909999159), "-0.0944271909999159");
        assert_eq!(format_sig15(12.5), "12.5");
        assert_eq!(format_sig15(1e-7), "1e-07");
        assert_eq!(format_sig15(123456789012345678.0), "1.23456789012346e+17");
    }
}
