//! Extremal-polynomial search: maximize `M(P)/‖P‖_grid` over degree-`n`
//! polynomials for a fixed grid.
//!
//! The objective has an inner argmax, so the search is a derivative-free
//! multistart simplex descent on the negated ratio. One restart starts at
//! the equality witness `(z·e^{iπ/N})ⁿ + 1`; the rest start from seeded
//! unit-Gaussian coefficients. When the closed-form supremum applies,
//! every evaluated candidate is asserted against it.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

use crate::bounds::{
    dubinin_bound, rakhmanov_bound, sheil_small_bound, sup_ratio, SheilSmallForm,
    DEFAULT_RAKHMANOV_C,
};
use crate::error::{Error, Result};
use crate::norms::{discrete_norm, norm_ratio, uniform_extrema_robust};
use crate::poly::Polynomial;

/// Objective value assigned to degree-collapsed or invalid candidates.
const PENALTY: f64 = 1e3;
/// Candidates with `|c_n|` below this are treated as degree collapse.
const DEGREE_COLLAPSE_TOL: f64 = 1e-6;
/// Allowed excess of any evaluated ratio over the closed-form supremum.
const SUP_SAFETY_TOL: f64 = 1e-9;
/// Magnitude of the coefficient perturbation of the witness-seeded restart.
const WITNESS_PERTURBATION: f64 = 1e-3;

/// Parameters of one extremal search.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SearchConfig {
    /// Degree of the candidate polynomials.
    pub degree: usize,
    /// Number of grid nodes.
    pub n_nodes: usize,
    /// Independent simplex restarts.
    pub restarts: usize,
    /// Iteration cap per restart.
    pub max_iters: usize,
    /// Base seed; restart `i` draws from ChaCha stream `i`.
    pub seed: u64,
    /// Convergence threshold on the simplex value spread.
    pub simplex_tolerance: f64,
}

impl SearchConfig {
    /// Defaults: 64 restarts, 2000 iterations, tolerance `1e-10`.
    pub fn new(degree: usize, n_nodes: usize, seed: u64) -> Self {
        Self {
            degree,
            n_nodes,
            restarts: 64,
            max_iters: 2000,
            seed,
            simplex_tolerance: 1e-10,
        }
    }

    fn validate(&self) -> Result<()> {
        if self.degree < 1 || self.n_nodes <= self.degree || self.restarts < 1 {
            return Err(Error::OutOfRange(format!(
                "search needs n >= 1, N > n, restarts >= 1; got n = {}, N = {}, restarts = {}",
                self.degree, self.n_nodes, self.restarts
            )));
        }
        Ok(())
    }
}

/// Outcome of an extremal search.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SearchResult {
    /// Best candidate found.
    pub best_poly: Polynomial,
    /// Its ratio `M(P)/‖P‖_grid`.
    pub best_ratio: f64,
    /// `(cos(πn/2N))⁻¹` when `N ≥ 2n` is a multiple of `n`.
    pub theoretical_sup: Option<f64>,
    /// `theoretical_sup − best_ratio` when the supremum applies.
    pub gap: Option<f64>,
    pub restarts_used: usize,
    /// Total objective evaluations across restarts.
    pub evaluations: usize,
    /// Best ratio per restart; `None` marks a collapsed restart.
    pub restart_bests: Vec<Option<f64>>,
}

/// The equality witness `(z·e^{iπ/N})ⁿ + 1`: `c_0 = 1`, `c_n = e^{inπ/N}`.
pub fn make_witness(degree: usize, n_nodes: usize) -> Polynomial {
    assert!(degree >= 1 && n_nodes >= 1);
    let mut coeffs = vec![Complex64::ZERO; degree + 1];
    coeffs[0] = Complex64::ONE;
    coeffs[degree] = Complex64::cis(degree as f64 * PI / n_nodes as f64);
    Polynomial::new(coeffs)
}

/// Closed-form quantities of the witness family for `N = n·l`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SharpnessReport {
    /// Uniform norm of the witness; equals 2.
    #[serde(rename = "M")]
    pub max_modulus: f64,
    /// Discrete norm; equals `2·cos(π/2l)`.
    pub grid_value: f64,
    /// `M / grid_value`.
    pub ratio: f64,
    /// `(cos(πn/2N))⁻¹`.
    pub expected_ratio: f64,
    /// All values match their closed forms within `1e-10`.
    pub pass: bool,
}

/// Verifies that the witness attains the sharp ratio for `N = n·l`.
pub fn verify_sharpness(degree: usize, multiple: usize) -> SharpnessReport {
    assert!(degree >= 1 && multiple >= 2);
    let n_nodes = degree * multiple;
    let witness = make_witness(degree, n_nodes);
    let max_modulus = uniform_extrema_robust(&witness)
        .expect("witness is nonzero")
        .max_modulus;
    let grid_value = discrete_norm(&witness, n_nodes)
        .expect("grid size is positive")
        .value;
    let ratio = max_modulus / grid_value;
    let expected_grid = 2.0 * (PI / (2.0 * multiple as f64)).cos();
    let expected_ratio = (PI * degree as f64 / (2.0 * n_nodes as f64)).cos().recip();
    let tol = 1e-10;
    let pass = (max_modulus - 2.0).abs() <= tol
        && (grid_value - expected_grid).abs() <= tol
        && (ratio - expected_ratio).abs() <= tol;
    SharpnessReport {
        max_modulus,
        grid_value,
        ratio,
        expected_ratio,
        pass,
    }
}

fn coeffs_from_params(params: &[f64]) -> Vec<Complex64> {
    params
        .chunks_exact(2)
        .map(|ch| Complex64::new(ch[0], ch[1]))
        .collect()
}

/// Multistart simplex search for the extremal ratio.
///
/// Candidates are parametrized by the `2(n+1)` real coefficient parts; the
/// ratio is scale invariant, so the redundancy is harmless and only degree
/// collapse is penalized. The ratio of every valid candidate uses the
/// exact critical-point norm.
pub fn search_extremal(cfg: &SearchConfig) -> Result<SearchResult> {
    cfg.validate()?;
    let degree = cfg.degree;
    let n_nodes = cfg.n_nodes;
    let sup = if n_nodes >= 2 * degree && n_nodes % degree == 0 {
        Some(sup_ratio(degree, n_nodes)?)
    } else {
        None
    };

    let mut evaluations = 0usize;
    let mut objective = |params: &[f64]| -> f64 {
        evaluations += 1;
        let coeffs = coeffs_from_params(params);
        if coeffs[degree].norm() < DEGREE_COLLAPSE_TOL {
            return PENALTY;
        }
        let p = Polynomial::new(coeffs);
        match norm_ratio(&p, n_nodes) {
            Ok(ratio) => {
                if let Some(sup) = sup {
                    // A ratio above the supremum would contradict the
                    // sharpness statement; treat it as a hard failure.
                    assert!(
                        ratio <= sup + SUP_SAFETY_TOL,
                        "ratio {ratio} exceeds the supremum {sup} at n = {degree}, N = {n_nodes}"
                    );
                }
                -ratio
            }
            Err(_) => PENALTY,
        }
    };

    let dim = 2 * (degree + 1);
    let witness = make_witness(degree, n_nodes);
    let mut restart_bests = Vec::with_capacity(cfg.restarts);
    let mut best: Option<(f64, Vec<f64>)> = None;
    for restart in 0..cfg.restarts {
        let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
        rng.set_stream(restart as u64);
        let x0: Vec<f64> = if restart == 0 {
            witness
                .coeffs()
                .iter()
                .flat_map(|c| [c.re, c.im])
                .map(|v| v + WITNESS_PERTURBATION * rng.sample::<f64, _>(StandardNormal))
                .collect()
        } else {
            (0..dim)
                .map(|_| rng.sample::<f64, _>(StandardNormal))
                .collect()
        };
        let outcome = nelder_mead(
            &mut objective,
            &x0,
            0.2,
            cfg.max_iters,
            cfg.simplex_tolerance,
        );
        if outcome.best_f < 0.5 * PENALTY {
            restart_bests.push(Some(-outcome.best_f));
            let improved = best
                .as_ref()
                .map(|(f, _)| outcome.best_f < *f)
                .unwrap_or(true);
            if improved {
                best = Some((outcome.best_f, outcome.best_x));
            }
        } else {
            restart_bests.push(None);
        }
    }

    let (best_f, best_x) = best.ok_or(Error::AllRestartsFailed)?;
    let best_ratio = -best_f;
    let best_poly = Polynomial::new(coeffs_from_params(&best_x));
    Ok(SearchResult {
        best_poly,
        best_ratio,
        theoretical_sup: sup,
        gap: sup.map(|s| s - best_ratio),
        restarts_used: cfg.restarts,
        evaluations,
        restart_bests,
    })
}

/// One row of a `(n, N)` sweep.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SweepRow {
    pub n: usize,
    #[serde(rename = "N")]
    pub n_nodes: usize,
    pub best_ratio: f64,
    /// `(cos(πn/2N))⁻¹`, an upper bound on the ratio for `N ≥ 2n`.
    pub dubinin_inv: f64,
    pub sheil_small_inv: f64,
    pub rakhmanov_inv: f64,
    /// True when `n < N < 2n`, where the cosine bound holds only in the
    /// extended sense.
    pub dubinin_extended_only: bool,
}

/// Header of the sweep CSV format.
pub fn sweep_csv_header() -> &'static str {
    "n,N,best_ratio,dubinin_inv,sheil_small_inv,rakhmanov_inv,dubinin_mode"
}

impl SweepRow {
    /// One CSV row matching [`sweep_csv_header`].
    pub fn csv_row(&self) -> String {
        format!(
            "{},{},{},{},{},{},{}",
            self.n,
            self.n_nodes,
            self.best_ratio,
            self.dubinin_inv,
            self.sheil_small_inv,
            self.rakhmanov_inv,
            if self.dubinin_extended_only {
                "extended"
            } else {
                "strict"
            }
        )
    }
}

/// Runs [`search_extremal`] for every `(n, N)` pair and tabulates the
/// reciprocal bound constants next to the best found ratio.
///
/// Every pair must satisfy `N > n`.
pub fn sweep_table(
    degrees: &[usize],
    node_counts: &[usize],
    base: &SearchConfig,
) -> Result<Vec<SweepRow>> {
    if degrees.is_empty() || node_counts.is_empty() {
        return Err(Error::OutOfRange("sweep ranges must be nonempty".into()));
    }
    let mut rows = Vec::with_capacity(degrees.len() * node_counts.len());
    for &degree in degrees {
        for &n_nodes in node_counts {
            let cfg = SearchConfig {
                degree,
                n_nodes,
                ..base.clone()
            };
            let result = search_extremal(&cfg)?;
            rows.push(SweepRow {
                n: degree,
                n_nodes,
                best_ratio: result.best_ratio,
                dubinin_inv: dubinin_bound(degree, n_nodes)?.recip(),
                sheil_small_inv: sheil_small_bound(degree, n_nodes, SheilSmallForm::Consistent)?
                    .recip(),
                rakhmanov_inv: rakhmanov_bound(degree, n_nodes, DEFAULT_RAKHMANOV_C)?.recip(),
                dubinin_extended_only: n_nodes < 2 * degree,
            });
        }
    }
    Ok(rows)
}

struct NelderMeadOutcome {
    best_x: Vec<f64>,
    best_f: f64,
}

/// Standard Nelder–Mead descent with reflection 1, expansion 2,
/// contraction 0.5, shrink 0.5.
fn nelder_mead(
    f: &mut impl FnMut(&[f64]) -> f64,
    x0: &[f64],
    step: f64,
    max_iters: usize,
    tol: f64,
) -> NelderMeadOutcome {
    let dim = x0.len();
    let mut simplex: Vec<(Vec<f64>, f64)> = Vec::with_capacity(dim + 1);
    let f0 = f(x0);
    simplex.push((x0.to_vec(), f0));
    for i in 0..dim {
        let mut x = x0.to_vec();
        x[i] += step;
        let fx = f(&x);
        simplex.push((x, fx));
    }

    for _ in 0..max_iters {
        simplex.sort_by(|a, b| a.1.total_cmp(&b.1));
        let spread = simplex[dim].1 - simplex[0].1;
        if spread <= tol * (1.0 + simplex[0].1.abs()) {
            break;
        }
        let centroid: Vec<f64> = (0..dim)
            .map(|j| simplex[..dim].iter().map(|(x, _)| x[j]).sum::<f64>() / dim as f64)
            .collect();
        let worst = simplex[dim].clone();
        let reflected: Vec<f64> = (0..dim)
            .map(|j| centroid[j] + (centroid[j] - worst.0[j]))
            .collect();
        let f_reflected = f(&reflected);
        if f_reflected < simplex[0].1 {
            let expanded: Vec<f64> = (0..dim)
                .map(|j| centroid[j] + 2.0 * (centroid[j] - worst.0[j]))
                .collect();
            let f_expanded = f(&expanded);
            simplex[dim] = if f_expanded < f_reflected {
                (expanded, f_expanded)
            } else {
                (reflected, f_reflected)
            };
            continue;
        }
        if f_reflected < simplex[dim - 1].1 {
            simplex[dim] = (reflected, f_reflected);
            continue;
        }
        let contracted: Vec<f64> = if f_reflected < worst.1 {
            (0..dim)
                .map(|j| centroid[j] + 0.5 * (reflected[j] - centroid[j]))
                .collect()
        } else {
            (0..dim)
                .map(|j| centroid[j] + 0.5 * (worst.0[j] - centroid[j]))
                .collect()
        };
        let f_contracted = f(&contracted);
        if f_contracted < worst.1.min(f_reflected) {
            simplex[dim] = (contracted, f_contracted);
            continue;
        }
        // Shrink toward the incumbent best.
        let anchor = simplex[0].0.clone();
        for vertex in simplex.iter_mut().skip(1) {
            for j in 0..dim {
                vertex.0[j] = anchor[j] + 0.5 * (vertex.0[j] - anchor[j]);
            }
            vertex.1 = f(&vertex.0);
        }
    }
    simplex.sort_by(|a, b| a.1.total_cmp(&b.1));
    NelderMeadOutcome {
        best_x: simplex[0].0.clone(),
        best_f: simplex[0].1,
    }
}
