//! Pointwise and integrated checks of the inequality chain behind the
//! cosine bound.
//!
//! With the profile normalized so that `M(P) = 1`, the differential
//! inequality `|ũ′(φ)| ≤ n·√(ũ(1−ũ))` holds at every angle. Dividing by
//! the square root and integrating from an argmax angle to its nearest
//! grid node telescopes to `π − 2·arcsin √u_k ≤ n·|gap|`, which
//! exponentiates to the cosine lower bound for the node value.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use std::f64::consts::{PI, TAU};

use crate::error::{Error, Result};
use crate::norms::uniform_extrema_robust;
use crate::numeric::adaptive_simpson;
use crate::poly::{random_polynomial, Polynomial};

/// Slack below this multiple of the scale `n` counts as attained equality.
const EQUALITY_RTOL: f64 = 1e-10;
/// Absolute tolerance for the node arcsin bound.
const NODE_BOUND_TOL: f64 = 1e-9;
/// Agreement tolerance between quadrature and the closed form.
const CHAIN_TOL: f64 = 1e-6;
/// Quadrature endpoints shrink this far from angles where `ũ ∈ {0, 1}`.
const ENDPOINT_SHRINK: f64 = 1e-8;
/// `M − m ≤ 1e−12·M` makes the integrand indeterminate everywhere.
const DEGENERATE_RTOL: f64 = 1e-12;

/// Result of scanning the differential inequality on one polynomial.
///
/// All quantities refer to the normalized profile `ũ = u/M²`, so the
/// natural scale of both sides is the degree `n`; `scale` additionally
/// records the unnormalized `n·M²` for error budgeting.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DifferentialInequalityReport {
    /// Largest value of `|ũ′| − n·√(ũ(1−ũ))`; positive means violation.
    pub max_violation: f64,
    /// Angle where the slack is smallest.
    pub min_slack_angle: f64,
    /// Number of angles scanned.
    pub samples: usize,
    /// True when the slack drops below `1e-10·n` somewhere.
    pub equality_attained: bool,
    /// Largest slack over the uniform grid; near zero for the equality
    /// family `a·zⁿ + b` with `|a| = |b|`. Critical angles are excluded
    /// here: at an exact profile zero the right side is a square root of
    /// a rounding residue and spikes to `n·√eps`.
    pub max_slack: f64,
    /// Degree of the polynomial.
    pub degree: usize,
    /// Unnormalized scale `n·M(P)²`.
    pub scale: f64,
}

/// Scans `|ũ′(φ)| ≤ n·√(ũ(1−ũ))` at uniform angles plus all critical
/// angles. Requires `samples ≥ 256`.
pub fn check_differential_inequality(
    p: &Polynomial,
    samples: usize,
) -> Result<DifferentialInequalityReport> {
    assert!(samples >= 256, "need at least 256 sample angles");
    let degree = p.degree();
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if degree < 1 {
        return Err(Error::OutOfRange(
            "polynomial degree must be at least 1".into(),
        ));
    }
    let max_modulus = uniform_extrema_robust(p)?.max_modulus;
    let normalized = p.scale((1.0 / max_modulus).into());
    let profile = normalized.trig_profile();

    let mut angles: Vec<f64> = (0..samples)
        .map(|j| TAU * j as f64 / samples as f64)
        .collect();
    let uniform_count = angles.len();
    if let crate::poly::CriticalAngles::Angles(critical) = profile.critical_angles()? {
        angles.extend(critical);
    }

    let n = degree as f64;
    let mut max_violation = f64::NEG_INFINITY;
    let mut max_slack = f64::NEG_INFINITY;
    let mut min_slack_angle = 0.0;
    let count = angles.len();
    for (idx, phi) in angles.into_iter().enumerate() {
        let u = profile.value(phi).clamp(0.0, 1.0);
        let lhs = profile.derivative_value(phi).abs();
        // √ũ as the direct modulus keeps full precision near circle
        // zeros, where the profile value is a rounding residue.
        let rhs = n * normalized.modulus_on_circle(phi) * (1.0 - u).max(0.0).sqrt();
        let violation = lhs - rhs;
        if violation > max_violation {
            max_violation = violation;
            min_slack_angle = phi;
        }
        if idx < uniform_count {
            max_slack = max_slack.max(-violation);
        }
    }
    Ok(DifferentialInequalityReport {
        max_violation,
        min_slack_angle,
        samples: count,
        equality_attained: -max_violation < EQUALITY_RTOL * n,
        max_slack,
        degree,
        scale: n * max_modulus * max_modulus,
    })
}

/// Result of the arcsin bound at the node nearest to an argmax of `|P|`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct NodeBoundReport {
    /// Index of the selected node.
    pub node_index: usize,
    /// `2·arcsin(|P(ω_k)|/M)`.
    pub lhs_arcsin: f64,
    /// `π − nπ/N`.
    pub rhs: f64,
    /// `lhs_arcsin ≥ rhs − 1e−9`.
    pub holds: bool,
}

fn check_degree_grid(degree: usize, n_nodes: usize) -> Result<()> {
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

/// Selects the node whose arc of half-width `π/N` contains the given
/// angle; ties resolve to the smaller index. Returns the node index and
/// its angle unwrapped to lie within `π/N` of `angle`.
fn nearest_node(angle: f64, n_nodes: usize) -> (usize, f64) {
    let spacing = TAU / n_nodes as f64;
    let pos = angle / spacing;
    let below = pos.floor();
    let d1 = pos - below;
    let k1 = (below as i64).rem_euclid(n_nodes as i64) as usize;
    let k2 = (k1 + 1) % n_nodes;
    let (k, node_pos) = if (d1 - 0.5).abs() <= 1e-15 {
        // Exactly midway: the smaller of the two indices.
        if k1 <= k2 {
            (k1, below)
        } else {
            (k2, below + 1.0)
        }
    } else if d1 < 0.5 {
        (k1, below)
    } else {
        (k2, below + 1.0)
    };
    (k, node_pos * spacing)
}

/// Checks `2·arcsin(|P(ω_k)|/M) ≥ π − nπ/N` at the node nearest to an
/// argmax angle of `|P|`.
pub fn nearest_node_bound(p: &Polynomial, n_nodes: usize) -> Result<NodeBoundReport> {
    let degree = p.degree();
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    check_degree_grid(degree, n_nodes)?;
    let extrema = uniform_extrema_robust(p)?;
    let argmax = extrema.argmax_angles[0];
    let (node_index, node_angle) = nearest_node(argmax, n_nodes);
    let node_value = p.modulus_on_circle(node_angle) / extrema.max_modulus;
    let lhs_arcsin = 2.0 * node_value.clamp(0.0, 1.0).asin();
    let rhs = PI - degree as f64 * PI / n_nodes as f64;
    Ok(NodeBoundReport {
        node_index,
        lhs_arcsin,
        rhs,
        holds: lhs_arcsin >= rhs - NODE_BOUND_TOL,
    })
}

/// Result of integrating the normalized profile derivative toward the
/// nearest node.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ArcsinChainReport {
    /// Quadrature value of the integral from the argmax angle to the node.
    pub integral_bound: f64,
    /// `|arg ω_k − φ₀|`.
    pub angle_gap: f64,
    /// `π − 2·arcsin √u_k`, the closed form of the integral.
    pub closed_form: f64,
    /// Quadrature matches the closed form within `1e-6` and stays below
    /// `n·angle_gap + 1e-6`.
    pub consistent: bool,
}

/// Integrates `−ũ′/√(ũ(1−ũ))` from an argmax angle `φ₀` toward the
/// nearest node and compares with the closed form `π − 2·arcsin √u_k`.
///
/// The integrand is evaluated with endpoint shrinkage `1e-8` and a guard
/// for the indeterminate `0/0` at angles where `ũ ∈ {0, 1}`; it is bounded
/// by `n` throughout. Errors with [`Error::DegenerateEndpoint`] when
/// `|P|` is constant on the circle, making the integrand indeterminate
/// everywhere.
pub fn arcsin_chain_check(p: &Polynomial, n_nodes: usize) -> Result<ArcsinChainReport> {
    let degree = p.degree();
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    check_degree_grid(degree, n_nodes)?;
    let extrema = uniform_extrema_robust(p)?;
    if extrema.max_modulus - extrema.min_modulus <= DEGENERATE_RTOL * extrema.max_modulus {
        return Err(Error::DegenerateEndpoint);
    }
    let normalized = p.scale((1.0 / extrema.max_modulus).into());
    let profile = normalized.trig_profile();

    let argmax = extrema.argmax_angles[0];
    let (_, node_angle) = nearest_node(argmax, n_nodes);
    let angle_gap = (node_angle - argmax).abs();
    let node_value = profile.value(node_angle).clamp(0.0, 1.0);
    let closed_form = PI - 2.0 * node_value.sqrt().asin();

    let integrand = |phi: f64| {
        let u = profile.value(phi).clamp(0.0, 1.0);
        let s = u * (1.0 - u);
        if s <= 0.0 {
            // Indeterminate 0/0 point; the integrand is bounded, so the
            // skipped mass is below n times the width of the bad set.
            return 0.0;
        }
        profile.derivative_value(phi) / s.sqrt()
    };
    let integral_bound = if angle_gap <= 2.0 * ENDPOINT_SHRINK {
        0.0
    } else if node_angle >= argmax {
        -adaptive_simpson(
            &integrand,
            argmax + ENDPOINT_SHRINK,
            node_angle - ENDPOINT_SHRINK,
            1e-9,
        )
    } else {
        adaptive_simpson(
            &integrand,
            node_angle + ENDPOINT_SHRINK,
            argmax - ENDPOINT_SHRINK,
            1e-9,
        )
    };

    let matches_closed_form = (integral_bound - closed_form).abs() <= CHAIN_TOL;
    let below_gap_bound = integral_bound <= degree as f64 * angle_gap + CHAIN_TOL;
    Ok(ArcsinChainReport {
        integral_bound,
        angle_gap,
        closed_form,
        consistent: matches_closed_form && below_gap_bound,
    })
}

/// One corpus polynomial's results, CSV row `seed,n,N,max_violation,node_holds`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CorpusRow {
    pub seed: u64,
    pub degree: usize,
    pub n_nodes: usize,
    pub max_violation: f64,
    pub node_holds: bool,
}

/// Header of the corpus CSV format.
pub fn corpus_csv_header() -> &'static str {
    "seed,n,N,max_violation,node_holds"
}

impl CorpusRow {
    /// One CSV row matching [`corpus_csv_header`].
    pub fn csv_row(&self) -> String {
        format!(
            "{},{},{},{},{}",
            self.seed, self.degree, self.n_nodes, self.max_violation, self.node_holds
        )
    }
}

/// Runs the differential inequality and the node bound over a seeded
/// random corpus.
///
/// Polynomial `i` draws from the ChaCha stream `i` of `base_seed`; its
/// degree cycles through `1..=max_degree` and its grid size is uniform in
/// `(n, 4n]`.
pub fn run_corpus(
    base_seed: u64,
    count: usize,
    max_degree: usize,
    samples: usize,
) -> Result<Vec<CorpusRow>> {
    assert!(max_degree >= 1);
    let mut rows = Vec::with_capacity(count);
    for i in 0..count {
        let mut rng = ChaCha8Rng::seed_from_u64(base_seed);
        rng.set_stream(i as u64);
        let degree = 1 + i % max_degree;
        let n_nodes = rng.random_range(degree + 1..=4 * degree);
        let p = random_polynomial(&mut rng, degree);
        let ineq = check_differential_inequality(&p, samples)?;
        let node = nearest_node_bound(&p, n_nodes)?;
        rows.push(CorpusRow {
            seed: i as u64,
            degree,
            n_nodes,
            max_violation: ineq.max_violation,
            node_holds: node.holds,
        });
    }
    Ok(rows)
}
