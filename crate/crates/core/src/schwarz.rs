//! The slit map and the boundary-derivative bound.
//!
//! For a polynomial with `P(0) ≠ 0` and nonconstant modulus on the circle,
//! `Φ` maps the exterior of the real interval `γ = [m²(P), M²(P)]`
//! conformally onto the unit disk with `Φ(∞) = 0` and `Φ(m²) = −1`; it is
//! the inverse of an affine image of the Joukowski map. Composing it with
//! the Laurent polynomial `w(z) = conj(P(conj z))·P(1/z)` gives a function
//! `f` that is regular where `w(z)` avoids the slit, has unit modulus on
//! the admissible part of the circle, satisfies `|f(z)| ≥ |z|ⁿ` inside,
//! and `|f′| ≤ n` on the boundary. This module evaluates all of those
//! quantities and checks the two bounds numerically.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::f64::consts::TAU;

use crate::error::{Error, Result};
use crate::norms::uniform_extrema_robust;
use crate::poly::{Polynomial, TrigProfile};

/// Points closer to the slit than this (times `M²`) are rejected outright.
const SLIT_DIST_RTOL: f64 = 1e-12;
/// The modulus-bound sampler skips points this close to the slit (times
/// `M²`); wider than the hard rejection so that accepted points keep full
/// precision through the square-root branch.
const SAMPLER_SLIT_RTOL: f64 = 1e-9;
/// Admissible boundary angles must separate `u` from `m²` and `M²` by this
/// fraction of `M²`; the derivative denominator degenerates at the excluded
/// values.
const BOUNDARY_SEP_RTOL: f64 = 1e-9;
/// `|m² − M²| ≤ 1e−14·M²` counts as constant modulus.
const CONSTANT_MOD_RTOL: f64 = 1e-14;
/// Allowed excess of the boundary derivative over the degree.
const DERIV_BOUND_TOL: f64 = 1e-8;

/// Which side of the slit a boundary value is taken from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum SlitSide {
    /// Limit from `Im w > 0`; maps to the lower unit semicircle.
    Above,
    /// Limit from `Im w < 0`; maps to the upper unit semicircle.
    Below,
}

/// Immutable context for the slit-map checks of one polynomial.
#[derive(Debug, Clone)]
pub struct SchwarzContext {
    p: Polynomial,
    profile: TrigProfile,
    /// `m²(P)`.
    min_sq: f64,
    /// `M²(P)`.
    max_sq: f64,
    degree: usize,
}

/// Validates the hypotheses and precomputes the slit for `p`.
///
/// Requires degree at least 1, a nonzero constant term, and nonconstant
/// modulus on the circle.
pub fn build_context(p: &Polynomial) -> Result<SchwarzContext> {
    if p.is_zero() || p.degree() < 1 {
        return Err(Error::OutOfRange(
            "polynomial degree must be at least 1".into(),
        ));
    }
    if p.coeff(0) == Complex64::ZERO {
        return Err(Error::ZeroConstantTerm);
    }
    let extrema = uniform_extrema_robust(p)?;
    let min_sq = extrema.min_modulus * extrema.min_modulus;
    let max_sq = extrema.max_modulus * extrema.max_modulus;
    if (max_sq - min_sq).abs() <= CONSTANT_MOD_RTOL * max_sq {
        return Err(Error::ConstantModulus);
    }
    Ok(SchwarzContext {
        p: p.clone(),
        profile: p.trig_profile(),
        min_sq,
        max_sq,
        degree: p.degree(),
    })
}

impl SchwarzContext {
    /// The slit endpoints `(m², M²)`.
    pub fn slit(&self) -> (f64, f64) {
        (self.min_sq, self.max_sq)
    }

    /// Degree of the underlying polynomial.
    pub fn degree(&self) -> usize {
        self.degree
    }

    /// The underlying polynomial.
    pub fn polynomial(&self) -> &Polynomial {
        &self.p
    }

    fn span(&self) -> f64 {
        self.max_sq - self.min_sq
    }

    /// Affine coordinate in which the slit becomes `[-1, 1]`.
    fn slit_coordinate(&self, w: Complex64) -> Complex64 {
        (2.0 * w - Complex64::new(self.max_sq + self.min_sq, 0.0)) / self.span()
    }

    /// Euclidean distance from `w` to the slit.
    fn slit_distance(&self, w: Complex64) -> f64 {
        let re = w.re.clamp(self.min_sq, self.max_sq);
        (w - Complex64::new(re, 0.0)).norm()
    }

    /// Inverse slit map: `Φ⁻¹(ζ) = ¼(ζ + 1/ζ)(M²−m²) + ½(M²+m²)`.
    pub fn phi_inverse(&self, zeta: Complex64) -> Result<Complex64> {
        if zeta == Complex64::ZERO {
            return Err(Error::PoleAtZero);
        }
        Ok(0.25 * (zeta + Complex64::ONE / zeta) * self.span()
            + Complex64::new(0.5 * (self.max_sq + self.min_sq), 0.0))
    }

    /// The slit map `Φ` for `w` off the slit.
    ///
    /// In the affine coordinate `s` the two candidate images are
    /// `s ∓ √(s²−1)`, reciprocal to each other; the one inside the unit disk
    /// is computed as the reciprocal of the larger to avoid cancellation.
    /// Slit endpoints map continuously to `∓1`; interior slit points error
    /// with [`Error::OnSlit`] and need [`Self::phi_on_slit`].
    pub fn phi(&self, w: Complex64) -> Result<Complex64> {
        let tol = SLIT_DIST_RTOL * self.max_sq;
        if self.slit_distance(w) <= tol && w.re > self.min_sq + tol && w.re < self.max_sq - tol {
            return Err(Error::OnSlit);
        }
        Ok(self.phi_unchecked(w))
    }

    fn phi_unchecked(&self, w: Complex64) -> Complex64 {
        let s = self.slit_coordinate(w);
        // sqrt(s-1)·sqrt(s+1) keeps precision where s² would cancel.
        let root = (s - Complex64::ONE).sqrt() * (s + Complex64::ONE).sqrt();
        let plus = s + root;
        let minus = s - root;
        let big = if plus.norm_sqr() >= minus.norm_sqr() {
            plus
        } else {
            minus
        };
        if big == Complex64::ZERO {
            // Only reachable for s = 0 with rounding; the image is ±i.
            return Complex64::new(0.0, 1.0);
        }
        Complex64::ONE / big
    }

    /// Boundary value of `Φ` on the slit, `u ∈ [m², M²]`, from the given
    /// side. The image lies on the unit circle.
    pub fn phi_on_slit(&self, u: f64, side: SlitSide) -> Result<Complex64> {
        let s = (2.0 * u - (self.max_sq + self.min_sq)) / self.span();
        if !(-1.0..=1.0).contains(&s) {
            return Err(Error::OutOfRange(format!(
                "value {u} is not inside the slit [{}, {}]",
                self.min_sq, self.max_sq
            )));
        }
        let t = (1.0 - s * s).max(0.0).sqrt();
        Ok(match side {
            SlitSide::Below => Complex64::new(s, t),
            SlitSide::Above => Complex64::new(s, -t),
        })
    }

    /// `w(z) = conj(P(conj z))·P(1/z)` as a Laurent polynomial.
    ///
    /// The Laurent coefficients are the conjugated profile coefficients:
    /// `w(z) = Σ_m conj(a_m)·z^m`, which on `|z| = 1` reduces to
    /// `u(−arg z)`. Requires `z ≠ 0`.
    pub fn laurent_value(&self, z: Complex64) -> Complex64 {
        let n = self.degree as isize;
        let mut acc = Complex64::ZERO;
        for k in (-n..=n).rev() {
            acc = acc * z + self.profile.coeff(k).conj();
        }
        acc / z.powi(n as i32)
    }

    /// The composed function `f(z) = Φ(w(z))` on the closed unit disk.
    ///
    /// `f(0) = 0` by the normalization at infinity. On the circle the
    /// argument lands on the slit and the boundary value is taken from the
    /// side selected by the radial approach, which is decided by the sign
    /// of `u′(−arg z)`; the result has unit modulus there.
    pub fn f_value(&self, z: Complex64) -> Result<Complex64> {
        let r = z.norm();
        if r == 0.0 {
            return Ok(Complex64::ZERO);
        }
        if (r - 1.0).abs() <= 1e-12 {
            let angle = z.arg();
            let u = self.profile.value(-angle);
            if !self.is_admissible_profile_value(u) {
                return Err(Error::OnSlit);
            }
            let side = if self.profile.derivative_value(-angle) >= 0.0 {
                SlitSide::Below
            } else {
                SlitSide::Above
            };
            return self.phi_on_slit(u.clamp(self.min_sq, self.max_sq), side);
        }
        if r > 1.0 {
            return Err(Error::OutsideDomain);
        }
        let w = self.laurent_value(z);
        if self.slit_distance(w) <= SLIT_DIST_RTOL * self.max_sq {
            return Err(Error::OutsideDomain);
        }
        Ok(self.phi_unchecked(w))
    }

    fn is_admissible_profile_value(&self, u: f64) -> bool {
        let sep = BOUNDARY_SEP_RTOL * self.max_sq;
        u - self.min_sq > sep && self.max_sq - u > sep
    }

    /// `|f′(e^{iφ})|` on the admissible part of the circle:
    /// `|u′(−φ)| / √((u−m²)(M²−u))` with `u = u(−φ)`.
    pub fn f_prime_on_circle(&self, angle: f64) -> Result<f64> {
        let u = self.profile.value(-angle);
        if !self.is_admissible_profile_value(u) {
            return Err(Error::ExcludedAngle);
        }
        let denom = ((u - self.min_sq) * (self.max_sq - u)).sqrt();
        Ok(self.profile.derivative_value(-angle).abs() / denom)
    }

    /// Sweeps the boundary derivative over admissible uniform angles.
    ///
    /// `sample_count ≥ 64` is required.
    pub fn check_derivative_bound(&self, sample_count: usize) -> DerivativeBoundReport {
        assert!(sample_count >= 64, "need at least 64 boundary samples");
        let mut max_fprime = 0.0_f64;
        let mut worst_angle = 0.0;
        for j in 0..sample_count {
            let angle = TAU * j as f64 / sample_count as f64;
            if let Ok(v) = self.f_prime_on_circle(angle) {
                if v > max_fprime {
                    max_fprime = v;
                    worst_angle = angle;
                }
            }
        }
        DerivativeBoundReport {
            max_fprime,
            worst_angle,
            n: self.degree,
            pass: max_fprime <= self.degree as f64 + DERIV_BOUND_TOL,
        }
    }

    /// Checks `|f(z)| ≥ |z|ⁿ` on concentric interior circles.
    ///
    /// Samples radii `0.1, …, 0.9` with uniform angles plus the origin,
    /// skipping points whose argument grazes the slit. `sample_count ≥ 100`
    /// is required.
    pub fn check_modulus_bound(&self, sample_count: usize) -> ModulusBoundReport {
        assert!(sample_count >= 100, "need at least 100 interior samples");
        let per_circle = (sample_count / 9).max(1);
        // Origin: f(0) = 0 and |z|ⁿ = 0 meet with zero margin.
        let mut min_margin = 0.0_f64;
        let mut worst_z = Complex64::ZERO;
        let mut samples_used = 1usize;
        for i in 1..=9 {
            let radius = 0.1 * i as f64;
            let rn = radius.powi(self.degree as i32);
            for j in 0..per_circle {
                let z = radius * Complex64::cis(TAU * j as f64 / per_circle as f64);
                let w = self.laurent_value(z);
                if self.slit_distance(w) <= SAMPLER_SLIT_RTOL * self.max_sq {
                    continue;
                }
                let margin = self.phi_unchecked(w).norm() - rn;
                samples_used += 1;
                if margin < min_margin {
                    min_margin = margin;
                    worst_z = z;
                }
            }
        }
        ModulusBoundReport {
            min_margin,
            worst_z,
            samples_used,
        }
    }

    /// Compares the leading Taylor coefficient of `f` at the origin,
    /// `(M²−m²)/(4·conj(c_0)·c_n)`, against the mean of `f(z)/zⁿ` over a
    /// small circle.
    pub fn leading_coeff_check(&self) -> LeadingCoeffReport {
        let c0 = self.p.coeff(0);
        let cn = self.p.coeff(self.degree);
        let expected = Complex64::new(self.span(), 0.0) / (4.0 * c0.conj() * cn);
        let radius = 1e-3;
        let count = 16;
        let mut mean = Complex64::ZERO;
        for j in 0..count {
            let z = radius * Complex64::cis(TAU * j as f64 / count as f64);
            let f = self.phi_unchecked(self.laurent_value(z));
            mean += f / z.powi(self.degree as i32);
        }
        let measured = mean / count as f64;
        LeadingCoeffReport {
            expected,
            measured,
            abs_error: (expected - measured).norm(),
        }
    }
}

/// Result of the boundary derivative sweep.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DerivativeBoundReport {
    /// Largest `|f′|` seen on the admissible boundary samples.
    pub max_fprime: f64,
    /// Angle attaining the maximum.
    pub worst_angle: f64,
    /// Degree of the polynomial, the theoretical bound.
    pub n: usize,
    /// `max_fprime ≤ n + 1e−8`.
    pub pass: bool,
}

/// Result of the interior modulus sweep.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ModulusBoundReport {
    /// Minimum of `|f(z)| − |z|ⁿ` over the accepted samples.
    pub min_margin: f64,
    /// Sample attaining the minimum.
    pub worst_z: Complex64,
    /// Number of samples that passed the slit-proximity filter.
    pub samples_used: usize,
}

/// Result of the Taylor leading-coefficient comparison.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct LeadingCoeffReport {
    pub expected: Complex64,
    pub measured: Complex64,
    pub abs_error: f64,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::random_polynomial;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;
    use std::f64::consts::{FRAC_PI_4, PI};

    fn witness(n: usize, n_nodes: usize) -> Polynomial {
        let mut coeffs = vec![Complex64::ZERO; n + 1];
        coeffs[0] = Complex64::ONE;
        coeffs[n] = Complex64::cis(n as f64 * PI / n_nodes as f64);
        Polynomial::new(coeffs)
    }

    fn admissible_random(rng: &mut ChaCha8Rng, degree: usize) -> SchwarzContext {
        loop {
            let p = random_polynomial(rng, degree);
            if p.coeff(0).norm() < 0.3 {
                continue;
            }
            match build_context(&p) {
                Ok(ctx) => return ctx,
                Err(_) => continue,
            }
        }
    }

    #[test]
    fn context_captures_slit() {
        let ctx = build_context(&Polynomial::from_real(&[1.0, 0.0, 2.0])).unwrap();
        let (lo, hi) = ctx.slit();
        assert!((lo - 1.0).abs() < 1e-12);
        assert!((hi - 9.0).abs() < 1e-12);

        let ctx = build_context(&Polynomial::from_real(&[1.0, 1.0])).unwrap();
        let (lo, hi) = ctx.slit();
        assert!(lo.abs() < 1e-12);
        assert!((hi - 4.0).abs() < 1e-12);
    }

    #[test]
    fn context_rejects_bad_inputs() {
        let mut coeffs = vec![Complex64::ZERO; 4];
        coeffs[3] = Complex64::ONE;
        assert!(matches!(
            build_context(&Polynomial::new(coeffs)),
            Err(Error::ZeroConstantTerm)
        ));
        assert!(matches!(
            build_context(&Polynomial::from_real(&[3.0])),
            Err(Error::OutOfRange(_))
        ));
        // A nonzero constant term with numerically constant modulus.
        let p = Polynomial::new(vec![Complex64::ONE, Complex64::new(1e-16, 0.0)]);
        assert!(matches!(build_context(&p), Err(Error::ConstantModulus)));
    }

    #[test]
    fn inverse_map_hits_slit_endpoints() {
        let ctx = build_context(&Polynomial::from_real(&[1.0, 0.0, 2.0])).unwrap();
        let at = |re: f64, im: f64| ctx.phi_inverse(Complex64::new(re, im)).unwrap();
        assert!((at(-1.0, 0.0) - Complex64::new(1.0, 0.0)).norm() < 1e-12);
        assert!((at(1.0, 0.0) - Complex64::new(9.0, 0.0)).norm() < 1e-12);
        assert!((at(0.0, 1.0) - Complex64::new(5.0, 0.0)).norm() < 1e-12);
        assert!(matches!(
            ctx.phi_inverse(Complex64::ZERO),
            Err(Error::PoleAtZero)
        ));
    }

    #[test]
    fn forward_map_normalization() {
        let ctx = build_context(&Polynomial::from_real(&[1.0, 0.0, 2.0])).unwrap();
        // Slit endpoints are unambiguous boundary values.
        let v = ctx.phi(Complex64::new(1.0, 0.0)).unwrap();
        assert!((v - Complex64::new(-1.0, 0.0)).norm() < 1e-10);
        let v = ctx.phi(Complex64::new(9.0, 0.0)).unwrap();
        assert!((v - Complex64::new(1.0, 0.0)).norm() < 1e-10);
        // Φ(∞) = 0: a huge proxy maps near the origin.
        let v = ctx.phi(Complex64::new(1e12, 0.0)).unwrap();
        assert!(v.norm() <= 1e-11);
        // Interior slit points need a side.
        assert!(matches!(
            ctx.phi(Complex64::new(5.0, 0.0)),
            Err(Error::OnSlit)
        ));
        let below = ctx.phi_on_slit(5.0, SlitSide::Below).unwrap();
        let above = ctx.phi_on_slit(5.0, SlitSide::Above).unwrap();
        assert!((below - above.conj()).norm() < 1e-15);
        assert!((below.norm() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn round_trip_identity_on_disk() {
        let ctx = build_context(&Polynomial::from_real(&[1.0, 0.0, 2.0])).unwrap();
        let zeta = Complex64::new(0.3, 0.4);
        let back = ctx.phi(ctx.phi_inverse(zeta).unwrap()).unwrap();
        assert!((back - zeta).norm() < 1e-12);

        for i in 0..16 {
            for j in 0..16 {
                let r = 0.05 + (0.999 - 0.05) * i as f64 / 15.0;
                let zeta = r * Complex64::cis(TAU * j as f64 / 16.0);
                let back = ctx.phi(ctx.phi_inverse(zeta).unwrap()).unwrap();
                assert!((back - zeta).norm() <= 1e-12, "roundtrip failed at {zeta}");
            }
        }
    }

    #[test]
    fn image_stays_inside_disk() {
        let ctx = build_context(&Polynomial::from_real(&[1.0, 1.0, 1.0])).unwrap();
        let (lo, hi) = ctx.slit();
        let span = hi - lo;
        for i in 0..16 {
            for j in 0..16 {
                let d = 0.01 * span * (1.0 + i as f64);
                let w = Complex64::new(lo + (hi - lo) * j as f64 / 15.0, 0.0)
                    + d * Complex64::cis(TAU * (j as f64 + 0.37) / 16.0);
                if ctx.slit_distance(w) < 0.01 * span {
                    continue;
                }
                let v = ctx.phi(w).unwrap();
                assert!(v.norm() < 1.0, "|Φ(w)| ≥ 1 at w = {w}");
            }
        }
    }

    #[test]
    fn f_is_identity_for_z_plus_one() {
        // w(z) = (z+1)²/z and Φ⁻¹(ζ) = (ζ+1)²/ζ, so f(z) = z everywhere.
        let ctx = build_context(&Polynomial::from_real(&[1.0, 1.0])).unwrap();
        assert_eq!(ctx.f_value(Complex64::ZERO).unwrap(), Complex64::ZERO);
        for i in 1..=9 {
            for j in 0..12 {
                let z = 0.1 * i as f64 * Complex64::cis(TAU * j as f64 / 12.0 + 0.05);
                let f = ctx.f_value(z).unwrap();
                assert!((f - z).norm() < 1e-10, "f({z}) = {f}");
            }
        }
        // Boundary angles away from the excluded points 0 and π.
        for j in 1..24 {
            let phi = 0.1 + (TAU - 0.2) * j as f64 / 24.0;
            if (phi - PI).abs() < 0.1 {
                continue;
            }
            let z = Complex64::cis(phi);
            let f = ctx.f_value(z).unwrap();
            assert!((f - z).norm() < 1e-10, "boundary f({z}) = {f}");
            assert!((f.norm() - 1.0).abs() < 1e-10);
        }
    }

    #[test]
    fn f_is_rotated_monomial_for_witness() {
        for (n, n_nodes) in [(1usize, 2usize), (2, 4), (3, 6)] {
            let ctx = build_context(&witness(n, n_nodes)).unwrap();
            let rotation = Complex64::cis(-(n as f64) * PI / n_nodes as f64);
            for i in 1..=9 {
                for j in 0..8 {
                    let z = 0.1 * i as f64 * Complex64::cis(TAU * j as f64 / 8.0 + 0.11);
                    let f = ctx.f_value(z).unwrap();
                    let expected = rotation * z.powu(n as u32);
                    assert!((f - expected).norm() < 1e-10, "n={n}: f({z}) = {f}");
                }
            }
        }
    }

    #[test]
    fn interior_point_with_slit_argument_is_rejected() {
        // z²+z+1 has the interior local maximum u(π) = 1 of its profile, so
        // near z = -1 the argument w(z) is real inside the slit [0, 9].
        let ctx = build_context(&Polynomial::from_real(&[1.0, 1.0, 1.0])).unwrap();
        let w = ctx.laurent_value(Complex64::new(-0.9, 0.0));
        assert!(w.im.abs() < 1e-15 && w.re > 0.0 && w.re < 9.0);
        assert!(matches!(
            ctx.f_value(Complex64::new(-0.9, 0.0)),
            Err(Error::OutsideDomain)
        ));
        // Points outside the closed disk are rejected as well.
        assert!(matches!(
            ctx.f_value(Complex64::new(2.0, 0.0)),
            Err(Error::OutsideDomain)
        ));
    }

    #[test]
    fn boundary_derivative_hand_value() {
        // u = 5 + 4cos 2φ: at φ = π/4 the numerator is 8 and the
        // denominator is √((5−1)(9−5)) = 4.
        let ctx = build_context(&Polynomial::from_real(&[1.0, 0.0, 2.0])).unwrap();
        let v = ctx.f_prime_on_circle(FRAC_PI_4).unwrap();
        assert!((v - 2.0).abs() < 1e-13);

        // Excluded near the extremal angles.
        assert!(matches!(
            ctx.f_prime_on_circle(0.0),
            Err(Error::ExcludedAngle)
        ));
    }

    #[test]
    fn boundary_derivative_closed_forms() {
        let ctx = build_context(&Polynomial::from_real(&[1.0, 1.0])).unwrap();
        for j in 1..16 {
            let angle = PI * j as f64 / 8.0 + 0.03;
            if let Ok(v) = ctx.f_prime_on_circle(angle) {
                assert!((v - 1.0).abs() < 1e-12, "angle {angle}: {v}");
            }
        }
        let ctx = build_context(&witness(3, 6)).unwrap();
        for j in 0..32 {
            let angle = TAU * j as f64 / 32.0 + 0.017;
            if let Ok(v) = ctx.f_prime_on_circle(angle) {
                assert!((v - 3.0).abs() < 1e-11, "angle {angle}: {v}");
            }
        }
    }

    #[test]
    fn derivative_bound_sweeps() {
        let ctx = build_context(&Polynomial::from_real(&[1.0, 1.0])).unwrap();
        let report = ctx.check_derivative_bound(128);
        assert!(report.pass);
        assert!((report.max_fprime - 1.0).abs() < 1e-9);

        let ctx = build_context(&Polynomial::from_real(&[1.0, 0.0, 2.0])).unwrap();
        let report = ctx.check_derivative_bound(64);
        assert!(report.pass);
        // Equality is attained at π/4, which the 64-point grid samples.
        assert!((report.max_fprime - 2.0).abs() < 1e-12);

        let mut rng = ChaCha8Rng::seed_from_u64(90);
        let ctx = admissible_random(&mut rng, 3);
        let report = ctx.check_derivative_bound(512);
        assert!(report.max_fprime <= 3.0 + 1e-8);
    }

    #[test]
    fn modulus_bound_sweeps() {
        let ctx = build_context(&Polynomial::from_real(&[1.0, 1.0])).unwrap();
        let report = ctx.check_modulus_bound(900);
        assert!(report.min_margin >= -1e-12);
        assert!(report.samples_used > 800);

        let ctx = build_context(&Polynomial::from_real(&[1.0, 0.0, 2.0])).unwrap();
        let report = ctx.check_modulus_bound(1000);
        assert!(report.min_margin >= -1e-10);
    }

    #[test]
    fn leading_coefficient_matches_expansion() {
        let ctx = build_context(&Polynomial::from_real(&[1.0, 0.0, 2.0])).unwrap();
        let report = ctx.leading_coeff_check();
        assert!((report.expected - Complex64::ONE).norm() < 1e-12);
        assert!(report.abs_error <= 1e-6 * report.expected.norm());

        let ctx = build_context(&Polynomial::from_real(&[1.0, 1.0])).unwrap();
        let report = ctx.leading_coeff_check();
        assert!((report.expected - Complex64::ONE).norm() < 1e-12);
        assert!(report.abs_error <= 1e-6);

        let (n, n_nodes) = (2usize, 4usize);
        let ctx = build_context(&witness(n, n_nodes)).unwrap();
        let report = ctx.leading_coeff_check();
        let expected = Complex64::cis(-(n as f64) * PI / n_nodes as f64);
        assert!((report.expected - expected).norm() < 1e-12);
        assert!((report.expected.norm() - 1.0).abs() < 1e-12);
        assert!(report.abs_error <= 1e-6);
    }

    #[test]
    fn boundary_modulus_is_one_on_admissible_angles() {
        let mut rng = ChaCha8Rng::seed_from_u64(91);
        for degree in 1..=4 {
            let ctx = admissible_random(&mut rng, degree);
            for j in 0..64 {
                let z = Complex64::cis(TAU * j as f64 / 64.0 + 0.007);
                if let Ok(f) = ctx.f_value(z) {
                    assert!((f.norm() - 1.0).abs() <= 1e-10);
                }
            }
        }
    }

    #[test]
    fn derivative_formula_matches_finite_difference() {
        let mut rng = ChaCha8Rng::seed_from_u64(92);
        let h = 1e-5;
        for degree in 1..=4 {
            let ctx = admissible_random(&mut rng, degree);
            let scale = ctx.polynomial().trig_profile().derivative_scale();
            let mut checked = 0;
            for j in 0..96 {
                let angle = TAU * j as f64 / 96.0 + 0.013;
                // Keep a margin so the stencil stays on one analytic patch.
                let u_prime = ctx.profile.derivative_value(-angle);
                if u_prime.abs() < 0.05 * scale {
                    continue;
                }
                let (formula, fm, fp) = match (
                    ctx.f_prime_on_circle(angle),
                    ctx.f_value(Complex64::cis(angle - h)),
                    ctx.f_value(Complex64::cis(angle + h)),
                ) {
                    (Ok(a), Ok(b), Ok(c)) => (a, b, c),
                    _ => continue,
                };
                let fd = (fp - fm).norm() / (2.0 * h);
                assert!(
                    (formula - fd).abs() <= 1e-6 * formula.max(1e-6),
                    "degree {degree}, angle {angle}: formula {formula} vs fd {fd}"
                );
                checked += 1;
            }
            assert!(checked > 10, "too few admissible comparison angles");
        }
    }
}
