//! Polynomial root finding.
//!
//! The primary scheme is the simultaneous Aberth–Ehrlich iteration started
//! from a perturbed circle of radius `(|c_0/c_n|)^{1/n}`. Roots at the
//! origin are deflated exactly beforehand. If the iteration misses the
//! residual target, the roots are recomputed as eigenvalues of the
//! companion matrix via a shifted Hessenberg QR sweep; both paths finish
//! with Newton polishing and the same residual acceptance test.

use num_complex::Complex64;
use std::f64::consts::TAU;

use crate::error::{Error, Result};
use crate::poly::Polynomial;

/// Sweep cap for the simultaneous iteration.
const MAX_SWEEPS: usize = 200;
/// Relative step size below which the simultaneous iteration stops.
const STEP_TOL: f64 = 1e-14;
/// Accepted relative residual per root; see [`worst_residual`].
const RESIDUAL_TOL: f64 = 1e-10;

impl Polynomial {
    /// Computes all `degree` roots, with multiplicity.
    ///
    /// Errors with [`Error::DegreeZero`] for constants and with
    /// [`Error::NoConvergence`] if neither scheme meets the residual
    /// tolerance. Roots are sorted by real part, then imaginary part.
    pub fn find_roots(&self) -> Result<Vec<Complex64>> {
        if self.degree() == 0 {
            return Err(Error::DegreeZero);
        }
        let coeffs = self.coeffs();
        let zeros_at_origin = coeffs
            .iter()
            .position(|c| *c != Complex64::ZERO)
            .expect("leading coefficient is nonzero for degree >= 1");
        let reduced = &coeffs[zeros_at_origin..];

        let mut roots = vec![Complex64::ZERO; zeros_at_origin];
        if reduced.len() > 1 {
            let mut found = aberth(reduced);
            polish(reduced, &mut found);
            if worst_residual(coeffs, &found) > RESIDUAL_TOL {
                let mut fallback = companion_roots(reduced);
                polish(reduced, &mut fallback);
                if worst_residual(coeffs, &fallback) <= worst_residual(coeffs, &found) {
                    found = fallback;
                }
            }
            let res = worst_residual(coeffs, &found);
            if res > RESIDUAL_TOL {
                return Err(Error::NoConvergence {
                    sweeps: MAX_SWEEPS,
                    residual: res,
                });
            }
            roots.extend(found);
        }
        roots.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
        Ok(roots)
    }
}

fn coeff_scale(coeffs: &[Complex64]) -> f64 {
    coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max)
}

/// Worst relative residual over the roots.
///
/// Each `|p(z)|` is measured against `max(max_k |c_k|, Σ_k |c_k||z|^k)`.
/// The second term is the rounding floor of Horner evaluation at `z`, so a
/// residual below it certifies `z` as the exact root of a coefficient-wise
/// relatively perturbed polynomial. Without it, roots far outside the unit
/// circle could never be accepted no matter how accurate they are.
fn worst_residual(coeffs: &[Complex64], roots: &[Complex64]) -> f64 {
    let flat = coeff_scale(coeffs);
    roots
        .iter()
        .map(|&z| {
            let mut local = 0.0;
            let mut zk = 1.0;
            let modulus = z.norm();
            for c in coeffs {
                local += c.norm() * zk;
                zk *= modulus;
            }
            horner(coeffs, z).0.norm() / local.max(flat)
        })
        .fold(0.0, f64::max)
}

/// Value and derivative by a single Horner pass.
fn horner(coeffs: &[Complex64], z: Complex64) -> (Complex64, Complex64) {
    let mut p = Complex64::ZERO;
    let mut dp = Complex64::ZERO;
    for &c in coeffs.iter().rev() {
        dp = dp * z + p;
        p = p * z + c;
    }
    (p, dp)
}

/// Simultaneous Aberth–Ehrlich iteration. `coeffs[0] != 0` is required.
fn aberth(coeffs: &[Complex64]) -> Vec<Complex64> {
    let n = coeffs.len() - 1;
    let radius = (coeffs[0].norm() / coeffs[n].norm())
        .powf(1.0 / n as f64)
        .clamp(1e-9, 1e9);
    // Equispaced start with a fixed angular offset and a slight radial
    // spiral so the configuration is never symmetric under conjugation.
    let mut z: Vec<Complex64> = (0..n)
        .map(|j| {
            let theta = TAU * j as f64 / n as f64 + 0.4 / n as f64;
            radius * (1.0 + 1e-4 * j as f64) * Complex64::cis(theta)
        })
        .collect();

    for _ in 0..MAX_SWEEPS {
        let mut max_step: f64 = 0.0;
        for i in 0..n {
            let zi = z[i];
            let (p, dp) = horner(coeffs, zi);
            if p == Complex64::ZERO {
                continue;
            }
            let newton = if dp == Complex64::ZERO {
                // Stationary point of p: nudge off it.
                Complex64::new(1e-12 * (1.0 + zi.norm()), 0.0)
            } else {
                p / dp
            };
            let mut repulsion = Complex64::ZERO;
            for (j, &zj) in z.iter().enumerate() {
                if j != i {
                    let d = zi - zj;
                    if d != Complex64::ZERO {
                        repulsion += Complex64::ONE / d;
                    }
                }
            }
            let denom = Complex64::ONE - newton * repulsion;
            let mut step = if denom.norm_sqr() > 0.0 {
                newton / denom
            } else {
                newton
            };
            if !step.re.is_finite() || !step.im.is_finite() {
                step = Complex64::ZERO;
            }
            z[i] = zi - step;
            max_step = max_step.max(step.norm() / (1.0 + z[i].norm()));
        }
        if max_step < STEP_TOL {
            break;
        }
    }
    z
}

/// Up to three Newton corrections per root, keeping only improvements.
fn polish(coeffs: &[Complex64], roots: &mut [Complex64]) {
    for r in roots.iter_mut() {
        let mut best = horner(coeffs, *r).0.norm();
        for _ in 0..3 {
            let (p, dp) = horner(coeffs, *r);
            if dp == Complex64::ZERO {
                break;
            }
            let candidate = *r - p / dp;
            let cand_res = horner(coeffs, candidate).0.norm();
            if cand_res < best && candidate.re.is_finite() && candidate.im.is_finite() {
                *r = candidate;
                best = cand_res;
            } else {
                break;
            }
        }
    }
}

/// Eigenvalues of the companion matrix of the monic normalization.
fn companion_roots(coeffs: &[Complex64]) -> Vec<Complex64> {
    let n = coeffs.len() - 1;
    let lead = coeffs[n];
    let mut h = vec![vec![Complex64::ZERO; n]; n];
    for i in 1..n {
        h[i][i - 1] = Complex64::ONE;
    }
    for i in 0..n {
        h[i][n - 1] = -coeffs[i] / lead;
    }
    hessenberg_eigenvalues(h)
}

/// Single-shift QR iteration on an upper Hessenberg matrix.
///
/// Deflates eigenvalues from the bottom; a Wilkinson shift drives the
/// bottom subdiagonal entry to zero, with an exceptional shift every twelve
/// stalled sweeps. If the iteration cap is hit the current diagonal is
/// returned and the caller's residual check decides.
fn hessenberg_eigenvalues(mut h: Vec<Vec<Complex64>>) -> Vec<Complex64> {
    let n = h.len();
    let mut eigs = vec![Complex64::ZERO; n];
    let mut active = n;
    let mut stall = 0usize;
    let mut iters = 0usize;
    let cap = 60 * n.max(1);

    while active > 0 {
        if active == 1 {
            eigs[0] = h[0][0];
            active = 0;
            continue;
        }
        let sub = h[active - 1][active - 2].norm();
        let scale = h[active - 1][active - 1].norm() + h[active - 2][active - 2].norm();
        if sub <= f64::EPSILON * scale.max(f64::MIN_POSITIVE) {
            eigs[active - 1] = h[active - 1][active - 1];
            active -= 1;
            stall = 0;
            continue;
        }
        if iters >= cap {
            break;
        }
        // Start of the unreduced block ending at `active`.
        let mut lo = active - 1;
        while lo > 0 {
            let s = h[lo][lo - 1].norm();
            let sc = h[lo][lo].norm() + h[lo - 1][lo - 1].norm();
            if s <= f64::EPSILON * sc.max(f64::MIN_POSITIVE) {
                h[lo][lo - 1] = Complex64::ZERO;
                break;
            }
            lo -= 1;
        }
        stall += 1;
        let shift = if stall % 12 == 0 {
            let extra = if active >= 3 {
                h[active - 2][active - 3].norm()
            } else {
                0.0
            };
            h[active - 1][active - 1] + Complex64::new(1.5 * (sub + extra), 0.75 * sub)
        } else {
            wilkinson_shift(
                h[active - 2][active - 2],
                h[active - 2][active - 1],
                h[active - 1][active - 2],
                h[active - 1][active - 1],
            )
        };
        qr_step(&mut h, lo, active, shift);
        iters += 1;
    }
    for i in 0..active {
        eigs[i] = h[i][i];
    }
    eigs
}

/// Eigenvalue of `[[a, b], [c, d]]` closer to `d`.
fn wilkinson_shift(a: Complex64, b: Complex64, c: Complex64, d: Complex64) -> Complex64 {
    let half_diff = 0.5 * (a - d);
    let disc = (half_diff * half_diff + b * c).sqrt();
    let mu1 = d + half_diff - disc;
    let mu2 = d + half_diff + disc;
    if (mu1 - d).norm() <= (mu2 - d).norm() {
        mu1
    } else {
        mu2
    }
}

/// One explicit shifted QR sweep on the Hessenberg block `[lo, hi)`.
fn qr_step(h: &mut [Vec<Complex64>], lo: usize, hi: usize, shift: Complex64) {
    for i in lo..hi {
        h[i][i] -= shift;
    }
    let mut rotations = Vec::with_capacity(hi - lo);
    for k in lo..hi - 1 {
        let (c, s) = givens(h[k][k], h[k + 1][k]);
        for col in k..hi {
            let top = h[k][col];
            let bottom = h[k + 1][col];
            h[k][col] = c * top + s * bottom;
            h[k + 1][col] = -s.conj() * top + c * bottom;
        }
        rotations.push((k, c, s));
    }
    for &(k, c, s) in &rotations {
        for row in lo..hi {
            let left = h[row][k];
            let right = h[row][k + 1];
            h[row][k] = c * left + s.conj() * right;
            h[row][k + 1] = -s * left + c * right;
        }
    }
    for i in lo..hi {
        h[i][i] += shift;
    }
}

/// Complex Givens rotation with real cosine: `[[c, s], [-conj(s), c]]`
/// maps `(a, b)` to `(r, 0)`.
fn givens(a: Complex64, b: Complex64) -> (f64, Complex64) {
    let norm = (a.norm_sqr() + b.norm_sqr()).sqrt();
    if norm == 0.0 {
        return (1.0, Complex64::ZERO);
    }
    if a == Complex64::ZERO {
        return (0.0, b.conj() / b.norm());
    }
    let c = a.norm() / norm;
    let s = (a / a.norm()) * b.conj() / norm;
    (c, s)
}
