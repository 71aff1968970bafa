//! Uniform and discrete norms of `|P|` on the unit circle.
//!
//! The exact route evaluates the profile at its critical angles; the grid
//! oracle is an independent dense-sampling cross-check that shares nothing
//! with the critical-point machinery beyond Horner evaluation.

use serde::{Deserialize, Serialize};
use std::f64::consts::TAU;

use crate::error::{Error, Result};
use crate::numeric::{golden_section_max, golden_section_min, normalize_angle};
use crate::poly::{CriticalAngles, Polynomial};

/// Default sample count for the grid oracle.
pub const DEFAULT_ORACLE_SAMPLES: usize = 100_000;
/// Relative tolerance for collecting tied extremal angles.
const ARG_COLLECT_RTOL: f64 = 1e-10;

/// How a [`CircleNormReport`] was produced.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ExtremaMethod {
    /// Exact evaluation at the critical angles of the profile.
    CriticalPoints,
    /// Dense sampling with golden-section refinement.
    GridOracle,
    /// `|P|` is constant on the circle.
    ConstantModulus,
}

/// Extrema of `|P|` on the unit circle.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CircleNormReport {
    /// Maximum of `|P|` on `|z| = 1`.
    #[serde(rename = "M")]
    pub max_modulus: f64,
    /// Minimum of `|P|` on `|z| = 1`.
    #[serde(rename = "m")]
    pub min_modulus: f64,
    /// Angles attaining the maximum, ascending.
    #[serde(rename = "argmax")]
    pub argmax_angles: Vec<f64>,
    /// Angles attaining the minimum, ascending.
    #[serde(rename = "argmin")]
    pub argmin_angles: Vec<f64>,
    pub method: ExtremaMethod,
}

/// Maximum of `|P|` over the `N`-th roots of unity.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GridNormReport {
    /// Number of grid nodes.
    #[serde(rename = "N")]
    pub n_nodes: usize,
    /// `max_k |P(e^{2πik/N})|`.
    pub value: f64,
    /// Smallest node index attaining the maximum.
    pub argmax_index: usize,
}

/// Exact extrema of `|P|` on the circle via critical angles.
///
/// Falls out as `ConstantModulus` when the profile has no nonconstant
/// harmonics. Propagates [`Error::NoConvergence`] from root finding, in
/// which case [`grid_oracle_extrema`] is the designated fallback.
pub fn uniform_extrema(p: &Polynomial) -> Result<CircleNormReport> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let profile = p.trig_profile();
    let angles = match profile.critical_angles()? {
        CriticalAngles::ConstantProfile => {
            let value = profile.mean().max(0.0).sqrt();
            return Ok(CircleNormReport {
                max_modulus: value,
                min_modulus: value,
                argmax_angles: vec![0.0],
                argmin_angles: vec![0.0],
                method: ExtremaMethod::ConstantModulus,
            });
        }
        CriticalAngles::Angles(angles) => angles,
    };
    if angles.is_empty() {
        // A nonconstant profile always has extrema; losing all of them
        // means the unit-circle filter rejected every root.
        return Err(Error::NoConvergence {
            sweeps: 0,
            residual: f64::NAN,
        });
    }
    // Direct evaluation at each critical angle: |P(e^{iφ})| loses half its
    // digits near a circle zero when recovered as sqrt of the profile.
    let values: Vec<f64> = angles
        .iter()
        .map(|&phi| p.modulus_on_circle(phi))
        .collect();
    let max = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let min = values.iter().copied().fold(f64::INFINITY, f64::min);
    let collect = |target: f64| -> Vec<f64> {
        angles
            .iter()
            .zip(&values)
            .filter(|(_, &v)| (v - target).abs() <= ARG_COLLECT_RTOL * max)
            .map(|(&phi, _)| phi)
            .collect()
    };
    Ok(CircleNormReport {
        max_modulus: max,
        min_modulus: min,
        argmax_angles: collect(max),
        argmin_angles: collect(min),
        method: ExtremaMethod::CriticalPoints,
    })
}

/// Exact extrema with the grid oracle as fallback when root finding fails.
pub fn uniform_extrema_robust(p: &Polynomial) -> Result<CircleNormReport> {
    match uniform_extrema(p) {
        Err(Error::NoConvergence { .. }) => Ok(grid_oracle_extrema(p, DEFAULT_ORACLE_SAMPLES)),
        other => other,
    }
}

/// Dense-sampling oracle for the circle extrema.
///
/// Samples `|P|` at `samples` uniform angles, then refines the best maximum
/// and minimum brackets by golden section. Requires
/// `samples ≥ 8·(degree + 1)`.
pub fn grid_oracle_extrema(p: &Polynomial, samples: usize) -> CircleNormReport {
    assert!(
        samples >= 8 * (p.degree() + 1),
        "oracle needs at least 8·(degree+1) samples"
    );
    let step = TAU / samples as f64;
    let mut max = f64::NEG_INFINITY;
    let mut min = f64::INFINITY;
    let (mut argmax, mut argmin) = (0usize, 0usize);
    for j in 0..samples {
        let v = p.modulus_on_circle(step * j as f64);
        if v > max {
            max = v;
            argmax = j;
        }
        if v < min {
            min = v;
            argmin = j;
        }
    }
    let refine = |j: usize, maximize: bool| -> (f64, f64) {
        let center = step * j as f64;
        let f = |phi: f64| p.modulus_on_circle(phi);
        if maximize {
            golden_section_max(f, center - step, center + step, 1e-12)
        } else {
            golden_section_min(f, center - step, center + step, 1e-12)
        }
    };
    let (phi_max, value_max) = refine(argmax, true);
    let (phi_min, value_min) = refine(argmin, false);
    CircleNormReport {
        max_modulus: value_max.max(max),
        min_modulus: value_min.min(min),
        argmax_angles: vec![normalize_angle(phi_max)],
        argmin_angles: vec![normalize_angle(phi_min)],
        method: ExtremaMethod::GridOracle,
    }
}

/// Exhaustive maximum of `|P|` over the `N`-th roots of unity.
///
/// Ties resolve to the smallest node index.
pub fn discrete_norm(p: &Polynomial, n_nodes: usize) -> Result<GridNormReport> {
    if n_nodes < 1 {
        return Err(Error::InvalidGrid(n_nodes));
    }
    let mut value = f64::NEG_INFINITY;
    let mut argmax_index = 0;
    for k in 0..n_nodes {
        let v = p.modulus_on_circle(TAU * k as f64 / n_nodes as f64);
        if v > value {
            value = v;
            argmax_index = k;
        }
    }
    Ok(GridNormReport {
        n_nodes,
        value,
        argmax_index,
    })
}

/// Ratio of the uniform norm to the discrete norm, `M(P) / ‖P‖_grid`.
///
/// Uses the exact critical-point norm for `M(P)`. Errors with
/// [`Error::GridAnnihilation`] when every node value vanishes, which
/// requires `degree ≥ N`.
pub fn norm_ratio(p: &Polynomial, n_nodes: usize) -> Result<f64> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let grid = discrete_norm(p, n_nodes)?;
    if grid.value == 0.0 {
        return Err(Error::GridAnnihilation);
    }
    Ok(uniform_extrema(p)?.max_modulus / grid.value)
}
