//! Complex polynomials and the squared-modulus profile on the unit circle.
//!
//! A [`Polynomial`] stores coefficients `c_0..c_n` lowest degree first. Its
//! [`TrigProfile`] is the real trigonometric polynomial
//! `u(φ) = |P(e^{iφ})|²` represented by the coefficient autocorrelation
//! `a_k = Σ_j c_{j+k}·conj(c_j)`, `k = -n..n`. Critical angles of `u` locate
//! the extrema of `|P|` on the circle.

use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::numeric::{golden_section_max, golden_section_min, normalize_angle};

/// A complex polynomial `c_0 + c_1 z + … + c_n zⁿ`.
///
/// Trailing coefficients that are exactly zero are trimmed at construction,
/// so the stored leading coefficient is nonzero except for the zero
/// polynomial, which is kept as the single coefficient `0`.
#[derive(Debug, Clone, PartialEq)]
pub struct Polynomial {
    coeffs: Vec<Complex64>,
}

impl Polynomial {
    /// Builds a polynomial from coefficients, lowest degree first.
    ///
    /// Trailing exact zeros are trimmed; an empty slice yields the zero
    /// polynomial. Coefficients are taken verbatim otherwise: no epsilon
    /// trimming is applied.
    pub fn new(mut coeffs: Vec<Complex64>) -> Self {
        while coeffs.len() > 1 && coeffs.last() == Some(&Complex64::ZERO) {
            coeffs.pop();
        }
        if coeffs.is_empty() {
            coeffs.push(Complex64::ZERO);
        }
        Self { coeffs }
    }

    /// The zero polynomial.
    pub fn zero() -> Self {
        Self {
            coeffs: vec![Complex64::ZERO],
        }
    }

    /// Builds a polynomial with real coefficients.
    pub fn from_real(coeffs: &[f64]) -> Self {
        Self::new(coeffs.iter().map(|&c| Complex64::new(c, 0.0)).collect())
    }

    /// Degree after trailing-zero trimming. The zero polynomial has degree 0.
    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Coefficients `c_0..c_n`, lowest degree first.
    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    /// Coefficient of `z^k`, zero beyond the degree.
    pub fn coeff(&self, k: usize) -> Complex64 {
        self.coeffs.get(k).copied().unwrap_or(Complex64::ZERO)
    }

    /// True for the zero polynomial.
    pub fn is_zero(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0] == Complex64::ZERO
    }

    /// Evaluates at `z` by Horner's scheme.
    pub fn eval(&self, z: Complex64) -> Complex64 {
        let mut acc = Complex64::ZERO;
        for &c in self.coeffs.iter().rev() {
            acc = acc * z + c;
        }
        acc
    }

    /// Modulus of the value at `e^{iφ}`.
    pub fn modulus_on_circle(&self, phi: f64) -> f64 {
        self.eval(Complex64::cis(phi)).norm()
    }

    /// The derivative polynomial. A constant maps to the zero polynomial.
    pub fn derivative(&self) -> Polynomial {
        if self.coeffs.len() == 1 {
            return Polynomial::zero();
        }
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, &c)| c * k as f64)
            .collect();
        Polynomial::new(coeffs)
    }

    /// Multiplies every coefficient by `factor`.
    pub fn scale(&self, factor: Complex64) -> Polynomial {
        Polynomial::new(self.coeffs.iter().map(|&c| c * factor).collect())
    }

    /// The squared-modulus profile `u(φ) = |P(e^{iφ})|²`.
    ///
    /// Coefficients are the autocorrelation `a_k = Σ_j c_{j+k}·conj(c_j)`;
    /// negative indices are stored as exact conjugates of the positive ones,
    /// so the profile is real by construction.
    pub fn trig_profile(&self) -> TrigProfile {
        let n = self.degree();
        let mut fourier = vec![Complex64::ZERO; 2 * n + 1];
        for k in 0..=n {
            let mut a = Complex64::ZERO;
            for j in 0..=(n - k) {
                a += self.coeffs[j + k] * self.coeffs[j].conj();
            }
            fourier[n + k] = a;
            fourier[n - k] = a.conj();
        }
        TrigProfile { n, fourier }
    }

    /// Parses the JSON form `{"coeffs": [[re, im], …]}`, lowest degree first.
    ///
    /// Rejects empty coefficient lists and non-finite entries.
    pub fn from_json_str(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))
    }
}

impl Serialize for Polynomial {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Wire<'a> {
            coeffs: &'a [Complex64],
        }
        Wire {
            coeffs: &self.coeffs,
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Polynomial {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Wire {
            coeffs: Vec<Complex64>,
        }
        let wire = Wire::deserialize(deserializer)?;
        if wire.coeffs.is_empty() {
            return Err(D::Error::custom("coefficient list must be non-empty"));
        }
        if wire
            .coeffs
            .iter()
            .any(|c| !c.re.is_finite() || !c.im.is_finite())
        {
            return Err(D::Error::custom("coefficients must be finite"));
        }
        Ok(Polynomial::new(wire.coeffs))
    }
}

/// Draws a degree-`degree` polynomial with unit-Gaussian coefficients.
///
/// The leading coefficient is redrawn in the measure-zero event that it
/// collapses, so the requested degree is always realized.
pub fn random_polynomial<R: Rng + ?Sized>(rng: &mut R, degree: usize) -> Polynomial {
    let mut coeffs: Vec<Complex64> = (0..=degree)
        .map(|_| Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal)))
        .collect();
    while coeffs[degree].norm() < 1e-9 {
        coeffs[degree] = Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal));
    }
    Polynomial::new(coeffs)
}

/// Candidate roots of the derivative profile within this distance of the
/// unit circle are accepted as critical angles.
const UNIT_CIRCLE_TOL: f64 = 1e-8;
/// Half-width of the bracket used to polish each critical angle.
const POLISH_BRACKET: f64 = 1e-4;

/// The real trigonometric polynomial `u(φ) = Σ_k a_k e^{ikφ}`, `k = -n..n`.
#[derive(Debug, Clone)]
pub struct TrigProfile {
    n: usize,
    /// `fourier[k + n]` holds `a_k`; Hermitian by construction.
    fourier: Vec<Complex64>,
}

/// Outcome of the critical-angle computation.
#[derive(Debug, Clone, PartialEq)]
pub enum CriticalAngles {
    /// Angles in `[0, 2π)` where `u′(φ) = 0`, sorted ascending.
    Angles(Vec<f64>),
    /// All `a_k` with `k ≠ 0` vanish, so `u` is constant and every angle is
    /// critical.
    ConstantProfile,
}

impl TrigProfile {
    /// Index bound of the stored coefficients.
    pub fn degree(&self) -> usize {
        self.n
    }

    /// Coefficient `a_k` for `|k| ≤ n`, zero outside.
    pub fn coeff(&self, k: isize) -> Complex64 {
        let idx = k + self.n as isize;
        if idx < 0 || idx as usize >= self.fourier.len() {
            Complex64::ZERO
        } else {
            self.fourier[idx as usize]
        }
    }

    /// `u(φ)`, real by Hermitian symmetry.
    pub fn value(&self, phi: f64) -> f64 {
        let w = Complex64::cis(phi);
        let mut wk = Complex64::ONE;
        let mut acc = self.fourier[self.n].re;
        for k in 1..=self.n {
            wk *= w;
            acc += 2.0 * (self.fourier[self.n + k] * wk).re;
        }
        acc
    }

    /// `u′(φ)`.
    pub fn derivative_value(&self, phi: f64) -> f64 {
        let w = Complex64::cis(phi);
        let mut wk = Complex64::ONE;
        let mut acc = 0.0;
        for k in 1..=self.n {
            wk *= w;
            acc -= 2.0 * k as f64 * (self.fourier[self.n + k] * wk).im;
        }
        acc
    }

    /// True when all coefficients with `k ≠ 0` are exactly zero.
    pub fn is_constant(&self) -> bool {
        (1..=self.n).all(|k| self.fourier[self.n + k] == Complex64::ZERO)
    }

    /// Mean value `a_0` of the profile.
    pub fn mean(&self) -> f64 {
        self.fourier[self.n].re
    }

    /// Scale `Σ |k·a_k|` used to judge how small `u′` is at a critical angle.
    pub fn derivative_scale(&self) -> f64 {
        (1..=self.n)
            .map(|k| 2.0 * k as f64 * self.fourier[self.n + k].norm())
            .sum()
    }

    /// Angles in `[0, 2π)` where `u′` vanishes.
    ///
    /// `u′(φ)·e^{inφ}` is the algebraic polynomial
    /// `T(w) = Σ_k (i·k·a_k)·w^{k+n}` evaluated at `w = e^{iφ}`, so the
    /// angles are the arguments of the unit-modulus roots of `T`. Each
    /// candidate is polished by a golden-section pass on `u` over a narrow
    /// bracket and kept only if the polish does not worsen `|u′|`.
    pub fn critical_angles(&self) -> Result<CriticalAngles> {
        if self.is_constant() {
            return Ok(CriticalAngles::ConstantProfile);
        }
        let n = self.n as isize;
        let coeffs: Vec<Complex64> = (-n..=n)
            .map(|k| Complex64::new(0.0, k as f64) * self.coeff(k))
            .collect();
        let poly = Polynomial::new(coeffs);
        let roots = poly.find_roots()?;
        let mut angles: Vec<f64> = roots
            .into_iter()
            .filter(|w| (w.norm() - 1.0).abs() <= UNIT_CIRCLE_TOL)
            .map(|w| normalize_angle(w.arg()))
            .map(|phi| self.polish_critical_angle(phi))
            .collect();
        angles.sort_by(f64::total_cmp);
        Ok(CriticalAngles::Angles(angles))
    }

    /// Refines a candidate critical angle toward the nearby extremum of `u`.
    fn polish_critical_angle(&self, phi: f64) -> f64 {
        let (a, b) = (phi - POLISH_BRACKET, phi + POLISH_BRACKET);
        let (um, u0, up) = (self.value(a), self.value(phi), self.value(b));
        let candidate = if u0 >= um && u0 >= up {
            golden_section_max(|t| self.value(t), a, b, 1e-12).0
        } else if u0 <= um && u0 <= up {
            golden_section_min(|t| self.value(t), a, b, 1e-12).0
        } else {
            return phi;
        };
        if self.derivative_value(candidate).abs() <= self.derivative_value(phi).abs() {
            normalize_angle(candidate)
        } else {
            phi
        }
    }
}
