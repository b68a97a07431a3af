//! Scalar quantities around the purity integrals.

use core::f64::consts::{PI, SQRT_2};

use crate::error::{Error, Result};

/// Which set of constants to evaluate with.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ConstantsMode {
    /// `G = 6.67e-11`, `hbar = 1.06e-34`, the three-digit values used in
    /// the published estimates.
    PaperRounded,
    /// CODATA 2018.
    Codata,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhysicalConstants {
    /// Newtonian constant, m^3 kg^-1 s^-2.
    pub g: f64,
    /// Reduced Planck constant, m^2 kg s^-1.
    pub hbar: f64,
    pub mode: ConstantsMode,
}

impl PhysicalConstants {
    pub const PAPER_ROUNDED: Self = Self {
        g: 6.67e-11,
        hbar: 1.06e-34,
        mode: ConstantsMode::PaperRounded,
    };

    pub const CODATA: Self = Self {
        g: 6.674_30e-11,
        hbar: 1.054_571_817e-34,
        mode: ConstantsMode::Codata,
    };

    pub fn for_mode(mode: ConstantsMode) -> Self {
        match mode {
            ConstantsMode::PaperRounded => Self::PAPER_ROUNDED,
            ConstantsMode::Codata => Self::CODATA,
        }
    }
}

impl Default for PhysicalConstants {
    fn default() -> Self {
        Self::PAPER_ROUNDED
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MassPair {
    m1: f64,
    m2: f64,
}

impl MassPair {
    pub fn new(m1: f64, m2: f64) -> Result<Self> {
        if !(m1 > 0.0 && m1.is_finite() && m2 > 0.0 && m2.is_finite()) {
            return Err(Error::param("masses", "must be finite and positive"));
        }
        Ok(Self { m1, m2 })
    }

    pub fn m1(&self) -> f64 {
        self.m1
    }

    pub fn m2(&self) -> f64 {
        self.m2
    }

    pub fn total(&self) -> f64 {
        self.m1 + self.m2
    }

    pub fn reduced(&self) -> f64 {
        self.m1 * self.m2 / (self.m1 + self.m2)
    }
}

/// Result of [`entanglement_measure`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Entanglement {
    pub value: f64,
    /// The purity lay slightly outside `[0, 1]` and was clamped.
    pub clamped: bool,
}

/// Largest excursion outside `[0, 1]` accepted as statistical noise.
pub const PURITY_SLACK: f64 = 0.01;

/// `E = 1 - purity`.
pub fn entanglement_measure(purity: f64) -> Result<Entanglement> {
    if !(-PURITY_SLACK..=1.0 + PURITY_SLACK).contains(&purity) {
        return Err(Error::param("purity", "must lie within [-0.01, 1.01]"));
    }
    let clamped = !(0.0..=1.0).contains(&purity);
    let p = purity.clamp(0.0, 1.0);
    Ok(Entanglement {
        value: 1.0 - p,
        clamped,
    })
}

/// `a = hbar^2 / (G mu m1 m2)`.
pub fn gravitational_bohr_radius(masses: &MassPair, constants: &PhysicalConstants) -> f64 {
    let hbar = constants.hbar;
    hbar * hbar / (constants.g * masses.reduced() * masses.m1 * masses.m2)
}

/// `(sqrt(2 pi) / alpha)^3`, an upper bound of the harmonic purity.
pub fn harmonic_purity_bound(alpha: f64) -> Result<f64> {
    if !(alpha > 0.0 && alpha.is_finite()) {
        return Err(Error::param("alpha", "must be finite and positive"));
    }
    let k = libm::sqrt(2.0 * PI) / alpha;
    Ok(k * k * k)
}

// Abramowitz & Stegun 7.1.26.
const ERF_P: f64 = 0.327_591_1;
const ERF_A: [f64; 5] = [
    0.254_829_592,
    -0.284_496_736,
    1.421_413_741,
    -1.453_152_027,
    1.061_405_429,
];

/// Error function by a rational approximation, absolute error below 1.5e-7.
pub fn erf(x: f64) -> f64 {
    if x == 0.0 {
        return 0.0;
    }
    let ax = libm::fabs(x);
    let t = 1.0 / (1.0 + ERF_P * ax);
    let poly = t * (ERF_A[0] + t * (ERF_A[1] + t * (ERF_A[2] + t * (ERF_A[3] + t * ERF_A[4]))));
    let y = 1.0 - poly * libm::exp(-ax * ax);
    if x < 0.0 {
        -y
    } else {
        y
    }
}

/// `K(alpha) = (2 sqrt(pi) / alpha^2) int_0^{alpha/sqrt2} erf(s) ds`, whose
/// cube bounds the harmonic purity from above and is itself below
/// `(sqrt(2 pi)/alpha)^3`.
pub fn harmonic_k_factor(alpha: f64) -> Result<f64> {
    harmonic_k_factor_with(alpha, erf)
}

/// [`harmonic_k_factor`] with a caller-supplied error function.
pub fn harmonic_k_factor_with(alpha: f64, erf: impl Fn(f64) -> f64) -> Result<f64> {
    if !(alpha > 0.0 && alpha.is_finite()) {
        return Err(Error::param("alpha", "must be finite and positive"));
    }
    let x = alpha / SQRT_2;
    // int_0^X erf = X erf(X) - (1 - exp(-X^2)) / sqrt(pi)
    let integral = x * erf(x) - (1.0 - libm::exp(-x * x)) / libm::sqrt(PI);
    Ok(2.0 * libm::sqrt(PI) / (alpha * alpha) * integral)
}

/// Two masses in adjacent interferometers.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MzConfig {
    masses: MassPair,
    tau: f64,
    d: f64,
    dx: f64,
}

impl MzConfig {
    /// `tau`: interaction time (s); `d`: centre separation (m);
    /// `dx`: arm splitting (m), must satisfy `0 <= dx < d`.
    pub fn new(masses: MassPair, tau: f64, d: f64, dx: f64) -> Result<Self> {
        if !(tau > 0.0 && tau.is_finite()) {
            return Err(Error::param("tau", "must be finite and positive"));
        }
        if !(d > 0.0 && d.is_finite()) {
            return Err(Error::param("d", "must be finite and positive"));
        }
        if !(dx >= 0.0 && dx < d) {
            return Err(Error::param("dx", "must satisfy 0 <= dx < d"));
        }
        Ok(Self { masses, tau, d, dx })
    }

    pub fn masses(&self) -> &MassPair {
        &self.masses
    }
}

/// `(G m1 m2 tau / hbar) (2/d - 1/(d + dx) - 1/(d - dx))`, non-positive.
pub fn mz_phase_shift(cfg: &MzConfig, constants: &PhysicalConstants) -> f64 {
    let coupling = constants.g * cfg.masses.m1 * cfg.masses.m2 * cfg.tau / constants.hbar;
    let d = cfg.d;
    coupling * (2.0 / d - 1.0 / (d + cfg.dx) - 1.0 / (d - cfg.dx))
}

/// True when `delta_phi` is farther than `tol` from every multiple of `2 pi`.
pub fn mz_is_entangling(delta_phi: f64, tol: f64) -> Result<bool> {
    if !(tol > 0.0 && tol < PI) {
        return Err(Error::param("tol", "must lie in (0, pi)"));
    }
    let two_pi = 2.0 * PI;
    let r = delta_phi - two_pi * libm::floor(delta_phi / two_pi);
    let distance = libm::fmin(r, two_pi - r);
    Ok(distance > tol)
}
