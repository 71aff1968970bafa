//! Lower-bound constants for the discrete norm and the theorem verifier.
//!
//! Three constants bound `‖P‖_grid / M(P)` from below for a degree-`n`
//! polynomial on the `N`-point grid: the Sheil-Small square root, the
//! Rakhmanov–Shekhtman logarithmic constant, and the cosine bound
//! `cos(πn/2N)`. The cosine bound is valid for all `N > n`, coincides with
//! the Sheil-Small constant at `N = 2n`, and dominates both constants for
//! `N ≥ 2n`.

use serde::{Deserialize, Serialize};
use std::f64::consts::PI;
use std::fmt;

use crate::error::{Error, Result};
use crate::norms::{discrete_norm, uniform_extrema_robust};
use crate::poly::Polynomial;

/// Default value of the Rakhmanov–Shekhtman absolute constant.
pub const DEFAULT_RAKHMANOV_C: f64 = 16.0;
/// Slack below `-1e-9·M(P)` counts as a theorem violation.
const SLACK_RTOL: f64 = 1e-9;

/// Which published form of the Sheil-Small constant to evaluate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum SheilSmallForm {
    /// `√((N−n)/N)`: the form consistent with the coincidence at `N = 2n`
    /// and with being a norm-ratio bound at all `N > n`.
    Consistent,
    /// `√((N−n)/n)` exactly as printed; exceeds 1 for `N > 2n` and is kept
    /// for transparency.
    AsPrinted,
}

/// Base of the logarithm in the Rakhmanov–Shekhtman constant.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum LogBase {
    /// Natural logarithm, the approximation-theory convention.
    Natural,
    /// Base-10 logarithm.
    Ten,
}

/// Name of the winning constant in a comparison.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundKind {
    Dubinin,
    SheilSmall,
    Rakhmanov,
}

impl fmt::Display for BoundKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            BoundKind::Dubinin => "dubinin",
            BoundKind::SheilSmall => "sheil_small",
            BoundKind::Rakhmanov => "rakhmanov",
        };
        f.write_str(name)
    }
}

fn check_range(degree: usize, n_nodes: usize) -> Result<()> {
    if degree < 1 {
        return Err(Error::OutOfRange(format!(
            "degree must be at least 1, got {degree}"
        )));
    }
    if n_nodes <= degree {
        return Err(Error::OutOfRange(format!(
            "grid size must exceed the degree: N = {n_nodes}, n = {degree}"
        )));
    }
    Ok(())
}

/// The cosine bound `cos(πn/(2N))`, valid for `N > n`.
pub fn dubinin_bound(degree: usize, n_nodes: usize) -> Result<f64> {
    check_range(degree, n_nodes)?;
    Ok((PI * degree as f64 / (2.0 * n_nodes as f64)).cos())
}

/// The Sheil-Small constant in the requested form.
pub fn sheil_small_bound(degree: usize, n_nodes: usize, form: SheilSmallForm) -> Result<f64> {
    check_range(degree, n_nodes)?;
    let excess = (n_nodes - degree) as f64;
    let denom = match form {
        SheilSmallForm::Consistent => n_nodes as f64,
        SheilSmallForm::AsPrinted => degree as f64,
    };
    Ok((excess / denom).sqrt())
}

/// The Rakhmanov–Shekhtman constant `(1 + C·log(N/(N−n)))⁻¹` with the
/// natural logarithm.
pub fn rakhmanov_bound(degree: usize, n_nodes: usize, c: f64) -> Result<f64> {
    rakhmanov_bound_with_base(degree, n_nodes, c, LogBase::Natural)
}

/// [`rakhmanov_bound`] with an explicit logarithm base.
pub fn rakhmanov_bound_with_base(
    degree: usize,
    n_nodes: usize,
    c: f64,
    base: LogBase,
) -> Result<f64> {
    check_range(degree, n_nodes)?;
    if c < 0.0 {
        return Err(Error::OutOfRange(format!(
            "constant C must be nonnegative, got {c}"
        )));
    }
    let ratio = n_nodes as f64 / (n_nodes - degree) as f64;
    let log = match base {
        LogBase::Natural => ratio.ln(),
        LogBase::Ten => ratio.log10(),
    };
    Ok((1.0 + c * log).recip())
}

/// All three constants for a `(n, N)` pair, with applicability flags.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct BoundsComparison {
    pub n: usize,
    #[serde(rename = "N")]
    pub n_nodes: usize,
    pub dubinin: f64,
    pub sheil_small: f64,
    pub sheil_small_printed: f64,
    pub rakhmanov: f64,
    #[serde(rename = "C")]
    pub c: f64,
    /// `N ≥ 2n`: the cosine bound's stated hypothesis.
    pub applicable_dubinin_strict: bool,
    /// `N > n`: the extended range on which the cosine bound still holds.
    pub applicable_dubinin_extended: bool,
    /// Largest constant among those applicable in strict mode; ties resolve
    /// in the order dubinin, sheil_small, rakhmanov.
    pub best: BoundKind,
}

impl BoundsComparison {
    /// Header of the CSV row format.
    pub fn csv_header() -> &'static str {
        "n,N,dubinin,sheil_small,sheil_small_printed,rakhmanov,best"
    }

    /// One CSV row matching [`Self::csv_header`].
    pub fn csv_row(&self) -> String {
        format!(
            "{},{},{},{},{},{},{}",
            self.n,
            self.n_nodes,
            self.dubinin,
            self.sheil_small,
            self.sheil_small_printed,
            self.rakhmanov,
            self.best
        )
    }
}

/// Evaluates and ranks the three constants for `(n, N)`.
pub fn compare_bounds(degree: usize, n_nodes: usize, c: f64) -> Result<BoundsComparison> {
    let dubinin = dubinin_bound(degree, n_nodes)?;
    let sheil_small = sheil_small_bound(degree, n_nodes, SheilSmallForm::Consistent)?;
    let sheil_small_printed = sheil_small_bound(degree, n_nodes, SheilSmallForm::AsPrinted)?;
    let rakhmanov = rakhmanov_bound(degree, n_nodes, c)?;
    let strict = n_nodes >= 2 * degree;

    let mut best = BoundKind::SheilSmall;
    let mut best_value = sheil_small;
    if rakhmanov > best_value {
        best = BoundKind::Rakhmanov;
        best_value = rakhmanov;
    }
    if strict && dubinin >= best_value {
        best = BoundKind::Dubinin;
    }

    Ok(BoundsComparison {
        n: degree,
        n_nodes,
        dubinin,
        sheil_small,
        sheil_small_printed,
        rakhmanov,
        c,
        applicable_dubinin_strict: strict,
        applicable_dubinin_extended: n_nodes > degree,
        best,
    })
}

/// Outcome of checking `‖P‖_grid ≥ cos(πn/2N)·M(P)` for one polynomial.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TheoremReport {
    /// The discrete norm.
    pub lhs: f64,
    /// `cos(πn/2N)·M(P)`.
    pub rhs: f64,
    /// `lhs − rhs`.
    pub slack: f64,
    /// True when the slack is above `−1e−9·M(P)`.
    pub holds: bool,
}

/// Verifies the cosine lower bound for a concrete polynomial.
///
/// Strict mode requires `N ≥ 2n`; extended mode accepts all `N > n`. The
/// uniform norm falls back to the grid oracle if root finding fails.
pub fn verify_theorem(p: &Polynomial, n_nodes: usize, strict: bool) -> Result<TheoremReport> {
    let degree = p.degree();
    if p.is_zero() || degree < 1 {
        return Err(Error::OutOfRange(
            "polynomial degree must be at least 1".into(),
        ));
    }
    if strict && n_nodes < 2 * degree {
        return Err(Error::OutOfRange(format!(
            "strict mode requires N >= 2n: N = {n_nodes}, n = {degree}"
        )));
    }
    check_range(degree, n_nodes)?;
    let max_modulus = uniform_extrema_robust(p)?.max_modulus;
    let lhs = discrete_norm(p, n_nodes)?.value;
    let rhs = dubinin_bound(degree, n_nodes)? * max_modulus;
    let slack = lhs - rhs;
    Ok(TheoremReport {
        lhs,
        rhs,
        slack,
        holds: slack >= -SLACK_RTOL * max_modulus,
    })
}

/// The sharp supremum `(cos(πn/2N))⁻¹` of `M(P)/‖P‖_grid`, defined for
/// `N ≥ 2n` with `N` a multiple of `n`.
pub fn sup_ratio(degree: usize, n_nodes: usize) -> Result<f64> {
    check_range(degree, n_nodes)?;
    if n_nodes < 2 * degree {
        return Err(Error::OutOfRange(format!(
            "supremum requires N >= 2n: N = {n_nodes}, n = {degree}"
        )));
    }
    if n_nodes % degree != 0 {
        return Err(Error::NotMultiple {
            degree,
            n_nodes,
        });
    }
    Ok(dubinin_bound(degree, n_nodes)?.recip())
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;
    use std::f64::consts::{FRAC_1_SQRT_2, PI, SQRT_2};

    fn witness(n: usize, n_nodes: usize) -> Polynomial {
        let mut coeffs = vec![Complex64::ZERO; n + 1];
        coeffs[0] = Complex64::ONE;
        coeffs[n] = Complex64::cis(n as f64 * PI / n_nodes as f64);
        Polynomial::new(coeffs)
    }

    #[test]
    fn cosine_bound_values() {
        assert!((dubinin_bound(1, 2).unwrap() - FRAC_1_SQRT_2).abs() < 1e-12);
        assert!((dubinin_bound(2, 4).unwrap() - FRAC_1_SQRT_2).abs() < 1e-12);
        assert!((dubinin_bound(1, 3).unwrap() - 0.75f64.sqrt()).abs() < 1e-12);
        assert!(matches!(dubinin_bound(2, 2), Err(Error::OutOfRange(_))));
        assert!(matches!(dubinin_bound(0, 4), Err(Error::OutOfRange(_))));
    }

    #[test]
    fn sheil_small_forms() {
        for n in 1..6 {
            let consistent = sheil_small_bound(n, 2 * n, SheilSmallForm::Consistent).unwrap();
            let cosine = dubinin_bound(n, 2 * n).unwrap();
            assert!((consistent - cosine).abs() < 1e-12);
        }
        let v = sheil_small_bound(1, 3, SheilSmallForm::Consistent).unwrap();
        assert!((v - (2.0f64 / 3.0).sqrt()).abs() < 1e-10);
        // The printed form evaluates to 1 at N = 2n.
        assert!((sheil_small_bound(1, 2, SheilSmallForm::AsPrinted).unwrap() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn rakhmanov_values() {
        // (1 + 16·ln 2)⁻¹, evaluated directly.
        let expected = (1.0 + 16.0 * 2.0f64.ln()).recip();
        let v = rakhmanov_bound(1, 2, 16.0).unwrap();
        assert!((v - expected).abs() < 1e-15);
        assert!((v - 0.082_710_6).abs() < 1e-6);

        assert!((rakhmanov_bound(1, 2, 0.0).unwrap() - 1.0).abs() < 1e-15);

        let v = rakhmanov_bound(1, 1_000_000, 16.0).unwrap();
        assert!((v - 0.999_984).abs() < 1e-6);

        assert!(matches!(
            rakhmanov_bound(1, 2, -1.0),
            Err(Error::OutOfRange(_))
        ));
    }

    #[test]
    fn log_base_switch() {
        let natural = rakhmanov_bound_with_base(1, 2, 16.0, LogBase::Natural).unwrap();
        let ten = rakhmanov_bound_with_base(1, 2, 16.0, LogBase::Ten).unwrap();
        assert!(ten > natural);
        assert!((ten - (1.0 + 16.0 * 2.0f64.log10()).recip()).abs() < 1e-15);
    }

    #[test]
    fn comparison_at_coincidence_point() {
        let cmp = compare_bounds(2, 4, DEFAULT_RAKHMANOV_C).unwrap();
        assert!((cmp.dubinin - cmp.sheil_small).abs() < 1e-12);
        assert!((cmp.dubinin - 0.70711).abs() < 1e-5);
        assert!((cmp.rakhmanov - 0.08271).abs() < 1e-5);
        assert_eq!(cmp.best, BoundKind::Dubinin);
        assert!(cmp.applicable_dubinin_strict);
    }

    #[test]
    fn comparison_orders_constants() {
        let cmp = compare_bounds(1, 3, DEFAULT_RAKHMANOV_C).unwrap();
        assert!(cmp.dubinin > cmp.sheil_small);
        assert!(cmp.sheil_small > cmp.rakhmanov);
        assert_eq!(cmp.best, BoundKind::Dubinin);
    }

    #[test]
    fn comparison_below_strict_range() {
        let cmp = compare_bounds(3, 4, DEFAULT_RAKHMANOV_C).unwrap();
        assert!(!cmp.applicable_dubinin_strict);
        assert!(cmp.applicable_dubinin_extended);
        assert!((cmp.sheil_small - 0.5).abs() < 1e-12);
        assert_eq!(cmp.best, BoundKind::SheilSmall);
    }

    #[test]
    fn csv_row_shape() {
        let cmp = compare_bounds(2, 4, DEFAULT_RAKHMANOV_C).unwrap();
        let row = cmp.csv_row();
        assert_eq!(row.split(',').count(), 7);
        assert!(row.ends_with("dubinin"));
        assert_eq!(
            BoundsComparison::csv_header().split(',').count(),
            row.split(',').count()
        );
    }

    #[test]
    fn theorem_on_witness_is_tight() {
        let report = verify_theorem(&witness(2, 4), 4, true).unwrap();
        assert!((report.lhs - SQRT_2).abs() < 1e-10);
        assert!((report.rhs - SQRT_2).abs() < 1e-10);
        assert!(report.slack.abs() < 1e-10);
        assert!(report.holds);
    }

    #[test]
    fn theorem_on_monomial() {
        let mut coeffs = vec![Complex64::ZERO; 4];
        coeffs[3] = Complex64::ONE;
        let report = verify_theorem(&Polynomial::new(coeffs), 6, true).unwrap();
        assert!((report.lhs - 1.0).abs() < 1e-12);
        assert!((report.rhs - FRAC_1_SQRT_2).abs() < 1e-12);
        assert!(report.holds);
    }

    #[test]
    fn theorem_on_quadratic() {
        let report = verify_theorem(&Polynomial::from_real(&[1.0, 1.0, 1.0]), 4, true).unwrap();
        assert!((report.lhs - 3.0).abs() < 1e-12);
        assert!((report.rhs - 3.0 * FRAC_1_SQRT_2).abs() < 1e-10);
        assert!(report.holds);
    }

    #[test]
    fn theorem_mode_gating() {
        let p = Polynomial::from_real(&[1.0, 1.0, 1.0]);
        // N = 5 < 2n·… wait: n = 2, so strict needs N ≥ 4.
        assert!(verify_theorem(&p, 3, true).is_err());
        assert!(verify_theorem(&p, 3, false).is_ok());
        assert!(verify_theorem(&p, 2, false).is_err());
    }

    #[test]
    fn sup_ratio_values_and_gating() {
        assert!((sup_ratio(1, 3).unwrap() - 2.0 / 3.0f64.sqrt()).abs() < 1e-7);
        assert!((sup_ratio(1, 3).unwrap() - 1.154_700_5).abs() < 1e-7);
        assert!((sup_ratio(2, 4).unwrap() - SQRT_2).abs() < 1e-7);
        assert!(matches!(
            sup_ratio(2, 5),
            Err(Error::NotMultiple { degree: 2, n_nodes: 5 })
        ));
        assert!(matches!(sup_ratio(2, 2), Err(Error::OutOfRange(_))));
    }

    #[test]
    fn dominance_over_sampled_grid() {
        for n in 1..=8usize {
            let mut previous = 0.0;
            for n_nodes in (2 * n)..=64 {
                let d = dubinin_bound(n, n_nodes).unwrap();
                let s = sheil_small_bound(n, n_nodes, SheilSmallForm::Consistent).unwrap();
                let r = rakhmanov_bound(n, n_nodes, DEFAULT_RAKHMANOV_C).unwrap();
                assert!(d >= s - 1e-12, "n={n}, N={n_nodes}");
                assert!(d >= r - 1e-12, "n={n}, N={n_nodes}");
                assert!(d > previous, "monotone in N failed at n={n}, N={n_nodes}");
                previous = d;
            }
        }
        // Strictly decreasing in n for fixed N.
        for n_nodes in 17..=64usize {
            let mut previous = 1.0;
            for n in 1..=8 {
                let d = dubinin_bound(n, n_nodes).unwrap();
                assert!(d < previous, "monotone in n failed at n={n}, N={n_nodes}");
                previous = d;
            }
        }
    }
}
