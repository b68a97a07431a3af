//! Dimensionless trace and purity integrands.
//!
//! Coordinates are rescaled to `gamma = 2 r / L`, so every integral runs
//! over `[-1, 1]^d` and depends on the box ratio `alpha = L / a` alone.
//! Each integrand carries its full prefactor: integrating it over the cube
//! gives the target quantity directly.
//!
//! 12-D points are laid out as `(g1, g1', g2, g2')`, each a 3-vector; 6-D
//! points as `(g1, g2)`.

use alloc::string::String;
use alloc::sync::Arc;
use core::f64::consts::PI;
use core::fmt;

use crate::error::{Error, Result};

pub trait Integrand {
    fn dimension(&self) -> usize;
    fn evaluate(&self, point: &[f64]) -> f64;
    fn label(&self) -> &str {
        ""
    }
}

impl<T: Integrand + ?Sized> Integrand for &T {
    fn dimension(&self) -> usize {
        (**self).dimension()
    }
    fn evaluate(&self, point: &[f64]) -> f64 {
        (**self).evaluate(point)
    }
    fn label(&self) -> &str {
        (**self).label()
    }
}

/// Adapts a closure into an [`Integrand`].
pub struct FnIntegrand<F> {
    dimension: usize,
    f: F,
}

impl<F: Fn(&[f64]) -> f64> FnIntegrand<F> {
    pub fn new(dimension: usize, f: F) -> Self {
        Self { dimension, f }
    }
}

impl<F: Fn(&[f64]) -> f64> Integrand for FnIntegrand<F> {
    fn dimension(&self) -> usize {
        self.dimension
    }
    #[inline]
    fn evaluate(&self, point: &[f64]) -> f64 {
        (self.f)(point)
    }
}

#[inline]
pub fn pair_distance(p: &[f64], q: &[f64]) -> f64 {
    libm::sqrt(squared_distance(p, q))
}

#[inline]
fn squared_distance(p: &[f64], q: &[f64]) -> f64 {
    let dx = p[0] - q[0];
    let dy = p[1] - q[1];
    let dz = p[2] - q[2];
    dx * dx + dy * dy + dz * dz
}

/// The four cross distances `g12, g1'2, g12', g1'2'` of a 12-D point.
#[inline]
pub fn cross_distances(point: &[f64]) -> [f64; 4] {
    let (g1, g1p, g2, g2p) = split12(point);
    [
        pair_distance(g1, g2),
        pair_distance(g1p, g2),
        pair_distance(g1, g2p),
        pair_distance(g1p, g2p),
    ]
}

#[inline]
fn split12(point: &[f64]) -> (&[f64], &[f64], &[f64], &[f64]) {
    (&point[0..3], &point[3..6], &point[6..9], &point[9..12])
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WavefunctionFamily {
    ExpGround,
    ExpExcited,
    GaussianHarmonic,
    Custom,
}

/// A real, spherically symmetric relative-motion state with length scale `a`.
///
/// Custom states are used as given: they must already be normalised.
#[derive(Clone)]
pub struct RadialWavefunction {
    family: WavefunctionFamily,
    scale_a: f64,
    custom: Option<Arc<dyn Fn(f64) -> f64 + Send + Sync>>,
}

impl fmt::Debug for RadialWavefunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("RadialWavefunction")
            .field("family", &self.family)
            .field("scale_a", &self.scale_a)
            .finish()
    }
}

impl RadialWavefunction {
    fn with_family(family: WavefunctionFamily, scale_a: f64) -> Result<Self> {
        if !(scale_a > 0.0 && scale_a.is_finite()) {
            return Err(Error::param("scale_a", "must be finite and positive"));
        }
        Ok(Self {
            family,
            scale_a,
            custom: None,
        })
    }

    /// `sqrt(1/(pi a^3)) exp(-r/a)`
    pub fn exp_ground(scale_a: f64) -> Result<Self> {
        Self::with_family(WavefunctionFamily::ExpGround, scale_a)
    }

    /// `sqrt(1/(8 pi a^3)) (1 - r/(2a)) exp(-r/(2a))`
    pub fn exp_excited(scale_a: f64) -> Result<Self> {
        Self::with_family(WavefunctionFamily::ExpExcited, scale_a)
    }

    /// `sqrt(1/(pi^{3/2} a^3)) exp(-(r/a)^2 / 2)`
    pub fn gaussian_harmonic(scale_a: f64) -> Result<Self> {
        Self::with_family(WavefunctionFamily::GaussianHarmonic, scale_a)
    }

    pub fn custom<F>(scale_a: f64, eval: F) -> Result<Self>
    where
        F: Fn(f64) -> f64 + Send + Sync + 'static,
    {
        let mut wf = Self::with_family(WavefunctionFamily::Custom, scale_a)?;
        wf.custom = Some(Arc::new(eval));
        Ok(wf)
    }

    pub fn family(&self) -> WavefunctionFamily {
        self.family
    }

    pub fn scale_a(&self) -> f64 {
        self.scale_a
    }

    /// Amplitude at separation `r` (same length unit as `a`).
    pub fn eval(&self, r: f64) -> f64 {
        let a = self.scale_a;
        self.profile(r / a) / libm::sqrt(a * a * a)
    }

    /// Dimensionless profile `a^{3/2} phi(a s)`.
    pub fn profile(&self, s: f64) -> f64 {
        match self.family {
            WavefunctionFamily::ExpGround => libm::exp(-s) / libm::sqrt(PI),
            WavefunctionFamily::ExpExcited => {
                let h = s / 2.0;
                (1.0 - h) * libm::exp(-h) / libm::sqrt(8.0 * PI)
            }
            WavefunctionFamily::GaussianHarmonic => {
                libm::exp(-s * s / 2.0) / libm::sqrt(PI * libm::sqrt(PI))
            }
            WavefunctionFamily::Custom => {
                let a = self.scale_a;
                let f = self
                    .custom
                    .as_ref()
                    .expect("custom state carries a closure");
                libm::sqrt(a * a * a) * f(a * s)
            }
        }
    }
}

#[derive(Debug, Clone)]
enum Kind {
    TraceGround,
    PurityGround,
    PurityExcited {
        beta: f64,
    },
    PurityHarmonic {
        two_beta_sq: f64,
    },
    Generic {
        wf: RadialWavefunction,
        half_alpha: f64,
        factor: f64,
    },
}

/// One of the trace or purity integrands, parameterised by `alpha`.
#[derive(Debug, Clone)]
pub struct PurityIntegrand {
    kind: Kind,
    alpha: f64,
    prefactor: f64,
    dimension: usize,
    label: String,
}

fn check_alpha(alpha: f64) -> Result<()> {
    if alpha > 0.0 && alpha.is_finite() {
        Ok(())
    } else {
        Err(Error::param("alpha", "must be finite and positive"))
    }
}

fn pow6(x: f64) -> f64 {
    let x3 = x * x * x;
    x3 * x3
}

/// Trace of the reduced density matrix of the exponential ground state:
/// `(1/pi) (alpha/4)^3 exp(-alpha g12)` on `[-1, 1]^6`.
pub fn make_trace_ground(alpha: f64) -> Result<PurityIntegrand> {
    check_alpha(alpha)?;
    let q = alpha / 4.0;
    Ok(PurityIntegrand {
        kind: Kind::TraceGround,
        alpha,
        prefactor: q * q * q / PI,
        dimension: 6,
        label: alloc::format!("trace_ground(alpha={alpha})"),
    })
}

/// Purity of the exponential ground state, exponent as published:
/// `(1/pi^2) (alpha/4)^6 exp(-alpha (g12 + g1'2 + g12' + g1'2'))`.
///
/// The exponent is twice what the box-limit formula gives for
/// `exp(-r/a)`, so this equals `make_purity_generic(exp_ground, 2 alpha) / 64`.
pub fn make_purity_ground(alpha: f64) -> Result<PurityIntegrand> {
    check_alpha(alpha)?;
    Ok(PurityIntegrand {
        kind: Kind::PurityGround,
        alpha,
        prefactor: pow6(alpha / 4.0) / (PI * PI),
        dimension: 12,
        label: alloc::format!("purity_ground(alpha={alpha})"),
    })
}

/// Purity of the first radially excited state, `beta = alpha/4`:
/// `(1/pi^2) (beta/2)^6 prod(1 - beta g) exp(-beta sum g)`.
pub fn make_purity_excited(alpha: f64) -> Result<PurityIntegrand> {
    check_alpha(alpha)?;
    let beta = alpha / 4.0;
    Ok(PurityIntegrand {
        kind: Kind::PurityExcited { beta },
        alpha,
        prefactor: pow6(beta / 2.0) / (PI * PI),
        dimension: 12,
        label: alloc::format!("purity_excited(alpha={alpha})"),
    })
}

/// Purity of the harmonic ground state, `beta = alpha/4`:
/// `(beta^6/pi^3) exp(-2 beta^2 sum g^2)`.
pub fn make_purity_harmonic(alpha: f64) -> Result<PurityIntegrand> {
    check_alpha(alpha)?;
    let beta = alpha / 4.0;
    Ok(PurityIntegrand {
        kind: Kind::PurityHarmonic {
            two_beta_sq: 2.0 * beta * beta,
        },
        alpha,
        prefactor: pow6(beta) / (PI * PI * PI),
        dimension: 12,
        label: alloc::format!("purity_harmonic(alpha={alpha})"),
    })
}

/// Box-limit purity integrand for any real radial state.
///
/// With `L = alpha a` the integrand is
/// `(L/2)^12 L^-6 w(g12) w(g1'2) w(g12') w(g1'2')`, `w(g) = phi(g L / 2)`.
/// Each factor `(L/2)^3 L^{-3/2} phi(g L/2)` reduces to
/// `(alpha^{3/2} / 8) profile(alpha g / 2)`, so only `alpha` enters.
pub fn make_purity_generic(wf: RadialWavefunction, alpha: f64) -> Result<PurityIntegrand> {
    check_alpha(alpha)?;
    let label = alloc::format!("purity_generic({:?}, alpha={alpha})", wf.family());
    Ok(PurityIntegrand {
        kind: Kind::Generic {
            wf,
            half_alpha: alpha / 2.0,
            factor: alpha * libm::sqrt(alpha) / 8.0,
        },
        alpha,
        prefactor: 1.0,
        dimension: 12,
        label,
    })
}

impl PurityIntegrand {
    pub fn alpha(&self) -> f64 {
        self.alpha
    }
}

impl Integrand for PurityIntegrand {
    fn dimension(&self) -> usize {
        self.dimension
    }

    fn label(&self) -> &str {
        &self.label
    }

    #[inline]
    fn evaluate(&self, point: &[f64]) -> f64 {
        match &self.kind {
            Kind::TraceGround => {
                let d = pair_distance(&point[0..3], &point[3..6]);
                self.prefactor * libm::exp(-self.alpha * d)
            }
            Kind::PurityGround => {
                let [a, b, c, d] = cross_distances(point);
                self.prefactor * libm::exp(-self.alpha * (a + b + c + d))
            }
            Kind::PurityExcited { beta } => {
                let [a, b, c, d] = cross_distances(point);
                let poly =
                    (1.0 - beta * a) * (1.0 - beta * b) * (1.0 - beta * c) * (1.0 - beta * d);
                self.prefactor * poly * libm::exp(-beta * (a + b + c + d))
            }
            Kind::PurityHarmonic { two_beta_sq } => {
                let (g1, g1p, g2, g2p) = split12(point);
                let s = squared_distance(g1, g2)
                    + squared_distance(g1p, g2)
                    + squared_distance(g1, g2p)
                    + squared_distance(g1p, g2p);
                self.prefactor * libm::exp(-two_beta_sq * s)
            }
            Kind::Generic {
                wf,
                half_alpha,
                factor,
            } => cross_distances(point)
                .iter()
                .map(|&g| factor * wf.profile(half_alpha * g))
                .product(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine::RngStream;

    const ORIGIN12: [f64; 12] = [0.0; 12];

    fn rel(a: f64, b: f64) -> f64 {
        if a == b {
            0.0
        } else {
            libm::fabs(a - b) / libm::fmax(libm::fabs(a), libm::fabs(b))
        }
    }

    #[test]
    fn distances() {
        assert_eq!(pair_distance(&[0.3, -0.2, 0.9], &[0.3, -0.2, 0.9]), 0.0);
        assert_eq!(pair_distance(&[1.0, 0.0, 0.0], &[-1.0, 0.0, 0.0]), 2.0);
    }

    #[test]
    fn coincident_point_values() {
        let t = make_trace_ground(4.0).unwrap();
        assert!(rel(t.evaluate(&[0.0; 6]), 1.0 / PI) < 1e-15);
        let g = make_purity_ground(4.0).unwrap();
        assert!(rel(g.evaluate(&ORIGIN12), 1.0 / (PI * PI)) < 1e-15);
        let e = make_purity_excited(8.0).unwrap();
        assert!(rel(e.evaluate(&ORIGIN12), 1.0 / (PI * PI)) < 1e-15);
        let h = make_purity_harmonic(4.0).unwrap();
        assert!(rel(h.evaluate(&ORIGIN12), 1.0 / (PI * PI * PI)) < 1e-15);
        assert!(libm::fabs(1.0 / (PI * PI * PI) - 0.032_251_534_433_199_49) < 1e-15);
    }

    #[test]
    fn rejects_nonpositive_alpha() {
        for alpha in [0.0, -1.0, f64::NAN, f64::INFINITY] {
            assert!(make_trace_ground(alpha).is_err());
            assert!(make_purity_ground(alpha).is_err());
            assert!(make_purity_excited(alpha).is_err());
            assert!(make_purity_harmonic(alpha).is_err());
            assert!(
                make_purity_generic(RadialWavefunction::exp_ground(1.0).unwrap(), alpha).is_err()
            );
        }
        assert!(RadialWavefunction::exp_ground(0.0).is_err());
    }

    #[test]
    fn excited_integrand_changes_sign() {
        // One nonzero distance with the other three zero is geometrically
        // impossible, so move g1 and g2' apart: distances (0.8, 0, 1.6, 0.8)
        // and with beta = 2.5 the factors are (-1)(1)(-3)(-1).
        let e = make_purity_excited(10.0).unwrap();
        let mut w = [0.0; 12];
        w[0] = 0.8;
        w[9] = -0.8;
        assert_eq!(cross_distances(&w), [0.8, 0.0, 1.6, 0.8]);
        assert!(e.evaluate(&w) < 0.0);
        let g = make_purity_ground(10.0).unwrap();
        let h = make_purity_harmonic(10.0).unwrap();
        assert!(g.evaluate(&w) > 0.0 && h.evaluate(&w) > 0.0);
    }

    #[test]
    fn generic_matches_excited_and_harmonic_closed_forms() {
        let mut rng = RngStream::new(12, 0);
        let mut p = [0.0; 12];
        for alpha in [3.0, 10.0, 40.0] {
            let ex = make_purity_excited(alpha).unwrap();
            let gx =
                make_purity_generic(RadialWavefunction::exp_excited(0.37).unwrap(), alpha).unwrap();
            let ho = make_purity_harmonic(alpha).unwrap();
            let gh =
                make_purity_generic(RadialWavefunction::gaussian_harmonic(2.0).unwrap(), alpha)
                    .unwrap();
            for _ in 0..2_000 {
                p.iter_mut()
                    .for_each(|x| *x = 2.0 * rng.next_uniform() - 1.0);
                assert!(rel(ex.evaluate(&p), gx.evaluate(&p)) < 1e-12);
                // exp of a sum vs a product of exps: rounding of the exponent
                // scales the relative error with its magnitude
                let exponent =
                    alpha * alpha / 8.0 * cross_distances(&p).iter().map(|g| g * g).sum::<f64>();
                let tol = 1e-14 * libm::fmax(1.0, exponent);
                let (a, b) = (ho.evaluate(&p), gh.evaluate(&p));
                if a >= f64::MIN_POSITIVE {
                    assert!(rel(a, b) < tol, "{a:e} {b:e} {exponent}");
                }
            }
        }
    }

    #[test]
    fn generic_ground_is_published_ground_at_half_alpha() {
        let mut rng = RngStream::new(13, 0);
        let mut p = [0.0; 12];
        let alpha = 10.0;
        let published = make_purity_ground(alpha / 2.0).unwrap();
        let generic =
            make_purity_generic(RadialWavefunction::exp_ground(1.0).unwrap(), alpha).unwrap();
        for _ in 0..2_000 {
            p.iter_mut()
                .for_each(|x| *x = 2.0 * rng.next_uniform() - 1.0);
            assert!(rel(64.0 * published.evaluate(&p), generic.evaluate(&p)) < 1e-12);
        }
    }

    #[test]
    fn custom_state_uses_physical_units() {
        let a = 0.25;
        let closed = RadialWavefunction::exp_ground(a).unwrap();
        let custom =
            RadialWavefunction::custom(a, move |r| libm::exp(-r / a) / libm::sqrt(PI * a * a * a))
                .unwrap();
        for r in [0.0, 0.1, 0.7, 3.0] {
            assert!(rel(closed.eval(r), custom.eval(r)) < 1e-14);
        }
        let p = [
            0.1, 0.2, -0.3, 0.4, 0.0, 0.5, -0.6, 0.7, 0.1, 0.2, 0.2, -0.9,
        ];
        let gi = make_purity_generic(closed, 7.0).unwrap();
        let gc = make_purity_generic(custom, 7.0).unwrap();
        assert!(rel(gi.evaluate(&p), gc.evaluate(&p)) < 1e-13);
    }

    #[test]
    fn closed_form_amplitudes() {
        let a = 1.7;
        let g = RadialWavefunction::exp_ground(a).unwrap();
        let e = RadialWavefunction::exp_excited(a).unwrap();
        let h = RadialWavefunction::gaussian_harmonic(a).unwrap();
        let r = 0.9;
        assert!(
            rel(
                g.eval(r),
                libm::sqrt(1.0 / (PI * a * a * a)) * libm::exp(-r / a)
            ) < 1e-14
        );
        assert!(
            rel(
                e.eval(r),
                libm::sqrt(1.0 / (8.0 * PI * a * a * a))
                    * (1.0 - r / (2.0 * a))
                    * libm::exp(-r / (2.0 * a))
            ) < 1e-14
        );
        assert!(
            rel(
                h.eval(r),
                libm::sqrt(1.0 / (libm::pow(PI, 1.5) * a * a * a))
                    * libm::exp(-(r / a) * (r / a) / 2.0)
            ) < 1e-14
        );
        // excited node at r = 2a
        assert_eq!(e.eval(2.0 * a), 0.0);
    }
}
