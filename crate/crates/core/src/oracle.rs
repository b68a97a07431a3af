//! Deterministic ground truth: grid purities for 1-D x 1-D states and
//! Gauss-Legendre quadratures of the factorisable integrals.

use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::PI;

use nalgebra::DMatrix;

use crate::engine::RngStream;
use crate::error::{Error, Result};
use crate::summation::NeumaierSum;

/// Tolerance on the discrete normalisation of a [`GridWavefunction`].
pub const NORM_TOLERANCE: f64 = 1e-8;

/// Schmidt weights at or below this are treated as zero.
pub const WEIGHT_FLOOR: f64 = 1e-14;

/// Gauss-Legendre nodes and weights on `[-1, 1]`, ascending nodes.
pub fn gauss_legendre(n: usize) -> Result<(Vec<f64>, Vec<f64>)> {
    if n == 0 {
        return Err(Error::param("nodes", "must be at least 1"));
    }
    let mut x = vec![0.0; n];
    let mut w = vec![0.0; n];
    let nf = n as f64;
    for i in 0..n.div_ceil(2) {
        // Chebyshev-like initial guess, then Newton on P_n.
        let mut z = libm::cos(PI * (i as f64 + 0.75) / (nf + 0.5));
        let mut dp = 0.0;
        for _ in 0..100 {
            let (p, d) = legendre_with_derivative(n, z);
            dp = d;
            let step = p / d;
            z -= step;
            if libm::fabs(step) <= 1e-16 {
                let (_, d) = legendre_with_derivative(n, z);
                dp = d;
                break;
            }
        }
        let weight = 2.0 / ((1.0 - z * z) * dp * dp);
        x[i] = -z;
        x[n - 1 - i] = z;
        w[i] = weight;
        w[n - 1 - i] = weight;
    }
    if n % 2 == 1 {
        x[n / 2] = 0.0;
    }
    Ok((x, w))
}

fn legendre_with_derivative(n: usize, z: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = z;
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * z * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let d = n as f64 * (z * p1 - p0) / (z * z - 1.0);
    (p1, d)
}

/// Normalised Hermite function `psi_n(x)` of the unit oscillator.
pub fn hermite_function(n: usize, x: f64) -> f64 {
    let mut prev = 0.0;
    let mut cur = libm::exp(-x * x / 2.0) / libm::sqrt(libm::sqrt(PI));
    for k in 0..n {
        let kf = k as f64;
        let next = libm::sqrt(2.0 / (kf + 1.0)) * x * cur - libm::sqrt(kf / (kf + 1.0)) * prev;
        prev = cur;
        cur = next;
    }
    cur
}

/// Sampled amplitudes `psi(x_i, y_j)` at cell centres of a rectangle.
#[derive(Debug, Clone, PartialEq)]
pub struct GridWavefunction {
    nx: usize,
    ny: usize,
    x_range: (f64, f64),
    y_range: (f64, f64),
    /// Row-major, `nx` rows of `ny` entries.
    amplitudes: Vec<f64>,
}

impl GridWavefunction {
    /// Wraps amplitudes that already satisfy the discrete normalisation.
    pub fn new(
        nx: usize,
        ny: usize,
        x_range: (f64, f64),
        y_range: (f64, f64),
        amplitudes: Vec<f64>,
    ) -> Result<Self> {
        let psi = Self::unchecked(nx, ny, x_range, y_range, amplitudes)?;
        let norm = psi.norm();
        if libm::fabs(norm - 1.0) > NORM_TOLERANCE {
            return Err(Error::NotNormalized { norm });
        }
        Ok(psi)
    }

    /// Samples `f` at cell centres and rescales to unit norm.
    pub fn from_fn(
        nx: usize,
        ny: usize,
        x_range: (f64, f64),
        y_range: (f64, f64),
        f: impl Fn(f64, f64) -> f64,
    ) -> Result<Self> {
        let mut psi = Self::unchecked(nx, ny, x_range, y_range, vec![0.0; nx * ny])?;
        for i in 0..nx {
            let x = psi.x(i);
            for j in 0..ny {
                psi.amplitudes[i * ny + j] = f(x, psi.y(j));
            }
        }
        psi.normalize()?;
        Ok(psi)
    }

    /// `sum_k sqrt(w_k) psi_k(x) psi_k(y)` over Hermite functions on a
    /// square `n x n` grid spanning `[-half_width, half_width]`.
    pub fn schmidt_state(weights: &[f64], n: usize, half_width: f64) -> Result<Self> {
        if weights.is_empty() || weights.iter().any(|&w| !(w >= 0.0)) {
            return Err(Error::param(
                "weights",
                "must be a non-empty list of non-negative reals",
            ));
        }
        let total: f64 = weights.iter().sum();
        if libm::fabs(total - 1.0) > NORM_TOLERANCE {
            return Err(Error::param("weights", "must sum to 1"));
        }
        let range = (-half_width, half_width);
        let mut psi = Self::unchecked(n, n, range, range, vec![0.0; n * n])?;
        let modes: Vec<Vec<f64>> = (0..weights.len())
            .map(|k| (0..n).map(|i| hermite_function(k, psi.x(i))).collect())
            .collect();
        for i in 0..n {
            for j in 0..n {
                psi.amplitudes[i * n + j] = weights
                    .iter()
                    .zip(&modes)
                    .map(|(w, m)| libm::sqrt(*w) * m[i] * m[j])
                    .sum();
            }
        }
        let norm = psi.norm();
        if libm::fabs(norm - 1.0) > NORM_TOLERANCE {
            return Err(Error::NotNormalized { norm });
        }
        Ok(psi)
    }

    fn unchecked(
        nx: usize,
        ny: usize,
        x_range: (f64, f64),
        y_range: (f64, f64),
        amplitudes: Vec<f64>,
    ) -> Result<Self> {
        if nx == 0 || ny == 0 {
            return Err(Error::param("grid", "needs at least one point per axis"));
        }
        for (lo, hi) in [x_range, y_range] {
            if !(lo.is_finite() && hi.is_finite() && lo < hi) {
                return Err(Error::param("grid", "ranges must be finite with min < max"));
            }
        }
        if amplitudes.len() != nx * ny {
            return Err(Error::param("amplitudes", "length must equal nx * ny"));
        }
        if amplitudes.iter().any(|a| !a.is_finite()) {
            return Err(Error::param("amplitudes", "must be finite"));
        }
        Ok(Self {
            nx,
            ny,
            x_range,
            y_range,
            amplitudes,
        })
    }

    fn normalize(&mut self) -> Result<()> {
        let norm = self.norm();
        if !(norm > 0.0 && norm.is_finite()) {
            return Err(Error::NotNormalized { norm });
        }
        let scale = 1.0 / libm::sqrt(norm);
        self.amplitudes.iter_mut().for_each(|a| *a *= scale);
        Ok(())
    }

    /// `sum psi^2 dx dy`.
    pub fn norm(&self) -> f64 {
        let mut s = NeumaierSum::new();
        self.amplitudes.iter().for_each(|a| s.add(a * a));
        s.total() * self.dx() * self.dy()
    }

    pub fn nx(&self) -> usize {
        self.nx
    }

    pub fn ny(&self) -> usize {
        self.ny
    }

    pub fn dx(&self) -> f64 {
        (self.x_range.1 - self.x_range.0) / self.nx as f64
    }

    pub fn dy(&self) -> f64 {
        (self.y_range.1 - self.y_range.0) / self.ny as f64
    }

    pub fn x(&self, i: usize) -> f64 {
        self.x_range.0 + (i as f64 + 0.5) * self.dx()
    }

    pub fn y(&self, j: usize) -> f64 {
        self.y_range.0 + (j as f64 + 0.5) * self.dy()
    }

    pub fn amplitude(&self, i: usize, j: usize) -> f64 {
        self.amplitudes[i * self.ny + j]
    }

    pub fn amplitudes(&self) -> &[f64] {
        &self.amplitudes
    }
}

/// Squared Schmidt coefficients in descending order.
#[derive(Debug, Clone, PartialEq)]
pub struct SchmidtSpectrum {
    weights: Vec<f64>,
}

impl SchmidtSpectrum {
    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    /// Number of weights above [`WEIGHT_FLOOR`].
    pub fn rank(&self) -> usize {
        self.weights.len()
    }

    pub fn purity(&self) -> f64 {
        let mut s = NeumaierSum::new();
        self.weights.iter().for_each(|w| s.add(w * w));
        s.total()
    }
}

/// `Tr(rho_1^2)` from `rho_1(x, x') = sum_z psi(x, z) psi(x', z) dy`.
pub fn grid_purity(psi: &GridWavefunction) -> Result<f64> {
    check_normalized(psi)?;
    let (nx, ny) = (psi.nx, psi.ny);
    let a = &psi.amplitudes;
    let mut rho = vec![0.0; nx * nx];
    for i in 0..nx {
        for k in i..nx {
            let mut s = NeumaierSum::new();
            for j in 0..ny {
                s.add(a[i * ny + j] * a[k * ny + j]);
            }
            let v = s.total() * psi.dy();
            rho[i * nx + k] = v;
            rho[k * nx + i] = v;
        }
    }
    let mut tr = NeumaierSum::new();
    for i in 0..nx {
        for k in 0..nx {
            tr.add(rho[i * nx + k] * rho[k * nx + i]);
        }
    }
    let dx = psi.dx();
    Ok(tr.total() * dx * dx)
}

/// Schmidt spectrum from the singular values of `psi_ij sqrt(dx dy)`.
pub fn schmidt_purity(psi: &GridWavefunction) -> Result<(SchmidtSpectrum, f64)> {
    check_normalized(psi)?;
    let scale = libm::sqrt(psi.dx() * psi.dy());
    let m = DMatrix::from_row_iterator(psi.nx, psi.ny, psi.amplitudes.iter().map(|a| a * scale));
    let mut weights: Vec<f64> = m
        .singular_values()
        .iter()
        .map(|s| s * s)
        .filter(|w| *w > WEIGHT_FLOOR)
        .collect();
    weights.sort_by(|a, b| b.total_cmp(a));
    let spectrum = SchmidtSpectrum { weights };
    let purity = spectrum.purity();
    Ok((spectrum, purity))
}

fn check_normalized(psi: &GridWavefunction) -> Result<()> {
    let norm = psi.norm();
    if libm::fabs(norm - 1.0) > NORM_TOLERANCE {
        return Err(Error::NotNormalized { norm });
    }
    Ok(())
}

/// Fewest nodes accepted by [`harmonic_purity_quadrature`].
pub const HARMONIC_MIN_NODES: usize = 16;

/// Harmonic purity as the cube of
/// `(beta^2/pi) int_{[-1,1]^4} exp(-2 beta^2 ((x-y)^2 + (x'-y)^2 + (x-y')^2 + (x'-y')^2))`,
/// `beta = alpha / 4`, by tensor Gauss-Legendre.
pub fn harmonic_purity_quadrature(alpha: f64, nodes: usize) -> Result<f64> {
    check_harmonic_args(alpha, nodes)?;
    let beta = alpha / 4.0;
    let (x, w) = gauss_legendre(nodes)?;
    let n = nodes;
    let e: Vec<f64> = (0..n * n)
        .map(|ij| {
            let d = x[ij / n] - x[ij % n];
            libm::exp(-2.0 * beta * beta * d * d)
        })
        .collect();
    // The integrand is a square in the inner pair: sum_jk w_j w_k J_jk^2
    // with J_jk = sum_i w_i E_ij E_ik.
    let mut total = NeumaierSum::new();
    for j in 0..n {
        for k in 0..n {
            let mut jk = NeumaierSum::new();
            for i in 0..n {
                jk.add(w[i] * e[i * n + j] * e[i * n + k]);
            }
            let v = jk.total();
            total.add(w[j] * w[k] * v * v);
        }
    }
    let inner = beta * beta / PI * total.total();
    Ok(inner * inner * inner)
}

/// [`harmonic_purity_quadrature`] with the innermost axis done in closed form:
/// `int_{-1}^{1} exp(-2 beta^2 ((x-a)^2 + (x-b)^2)) dx
///   = sqrt(pi)/(4 beta) exp(-beta^2 (a-b)^2) [erf(2 beta (1-m)) + erf(2 beta (1+m))]`
/// with `m = (a+b)/2`.
pub fn harmonic_purity_erf_reduced(
    alpha: f64,
    nodes: usize,
    erf: impl Fn(f64) -> f64,
) -> Result<f64> {
    check_harmonic_args(alpha, nodes)?;
    let beta = alpha / 4.0;
    let (x, w) = gauss_legendre(nodes)?;
    let front = libm::sqrt(PI) / (4.0 * beta);
    let mut total = NeumaierSum::new();
    for j in 0..nodes {
        for k in 0..nodes {
            let d = x[j] - x[k];
            let m = 0.5 * (x[j] + x[k]);
            let jk = front
                * libm::exp(-beta * beta * d * d)
                * (erf(2.0 * beta * (1.0 - m)) + erf(2.0 * beta * (1.0 + m)));
            total.add(w[j] * w[k] * jk * jk);
        }
    }
    let inner = beta * beta / PI * total.total();
    Ok(inner * inner * inner)
}

fn check_harmonic_args(alpha: f64, nodes: usize) -> Result<()> {
    if !(alpha > 0.0 && alpha.is_finite()) {
        return Err(Error::param("alpha", "must be finite and positive"));
    }
    if nodes < HARMONIC_MIN_NODES {
        return Err(Error::param("nodes", "must be at least 16"));
    }
    Ok(())
}

/// Largest `alpha` accepted by [`trace_ground_quadrature`].
pub const TRACE_MAX_ALPHA: f64 = 20.0;
/// Fewest nodes accepted by [`trace_ground_quadrature`].
pub const TRACE_MIN_NODES: usize = 24;

/// `(1/pi)(alpha/4)^3 int_{[-1,1]^6} exp(-alpha |g1 - g2|)` by Gauss-Legendre.
///
/// Each axis pair is folded into its difference `u`, whose weight on
/// `[-2, 2]` is `2 - |u|`; the integrand is even in every `u_i`, leaving a
/// 3-D tensor rule on `[0, 2]^3`.
pub fn trace_ground_quadrature(alpha: f64, nodes: usize) -> Result<f64> {
    if !(alpha > 0.0 && alpha <= TRACE_MAX_ALPHA) {
        return Err(Error::param("alpha", "must lie in (0, 20]"));
    }
    if nodes < TRACE_MIN_NODES {
        return Err(Error::param("nodes", "must be at least 24"));
    }
    let (x, w) = gauss_legendre(nodes)?;
    let u: Vec<f64> = x.iter().map(|t| t + 1.0).collect();
    let k: Vec<f64> = w.iter().zip(&u).map(|(w, u)| w * (2.0 - u)).collect();
    let mut total = NeumaierSum::new();
    for a in 0..nodes {
        for b in 0..nodes {
            let kab = k[a] * k[b];
            let r2 = u[a] * u[a] + u[b] * u[b];
            for c in 0..nodes {
                let r = libm::sqrt(r2 + u[c] * u[c]);
                total.add(kab * k[c] * libm::exp(-alpha * r));
            }
        }
    }
    let q = alpha / 4.0;
    Ok(8.0 * total.total() * q * q * q / PI)
}

/// Exponential family handled by [`exponential_purity_importance`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExponentialState {
    /// The published ground-state integrand, decay rate `alpha`.
    Ground,
    /// The first excited state, decay rate `alpha / 4`.
    Excited,
}

/// Importance-sampled box purity of an exponential state.
///
/// Draws `g2` uniformly, then `g1 = g2 + x`, `g1' = g2 + x'` and
/// `g2' = g1 + y`, with `x, x', y` from the 3-D density proportional to
/// `exp(-k |v|)`. Three of the four exponentials cancel against the
/// sampling density, so the weight stays bounded and the estimator keeps
/// a small variance even where a uniform sampler almost never hits the
/// peak. Samples with a point outside the box score zero.
/// Returns `(value, stderr)`.
pub fn exponential_purity_importance(
    state: ExponentialState,
    alpha: f64,
    samples: u64,
    stream: &mut RngStream,
) -> Result<(f64, f64)> {
    if !(alpha > 0.0 && alpha.is_finite()) {
        return Err(Error::param("alpha", "must be finite and positive"));
    }
    if samples < 2 {
        return Err(Error::param("samples", "must be at least 2"));
    }
    let (rate, prefactor) = match state {
        ExponentialState::Ground => (alpha, libm::pow(alpha / 4.0, 6.0) / (PI * PI)),
        ExponentialState::Excited => {
            let beta = alpha / 4.0;
            (beta, libm::pow(beta / 2.0, 6.0) / (PI * PI))
        }
    };
    let cell = 8.0 * PI / (rate * rate * rate);
    let scale = prefactor * cell * cell * cell * 8.0;
    let mut sum = NeumaierSum::new();
    let mut sum_sq = NeumaierSum::new();
    for _ in 0..samples {
        let g2 = [
            2.0 * stream.next_uniform() - 1.0,
            2.0 * stream.next_uniform() - 1.0,
            2.0 * stream.next_uniform() - 1.0,
        ];
        let x = exponential_offset(rate, stream);
        let xp = exponential_offset(rate, stream);
        let y = exponential_offset(rate, stream);
        let g1 = add3(g2, x);
        let g1p = add3(g2, xp);
        let g2p = add3(g1, y);
        let inside = [g1, g1p, g2p]
            .iter()
            .all(|p| p.iter().all(|c| libm::fabs(*c) <= 1.0));
        let w = if inside {
            let d4 = norm3([g1p[0] - g2p[0], g1p[1] - g2p[1], g1p[2] - g2p[2]]);
            let mut w = scale * libm::exp(-rate * d4);
            if state == ExponentialState::Excited {
                let d1 = norm3(x);
                let d2 = norm3(xp);
                let d3 = norm3(y);
                w *= (1.0 - rate * d1) * (1.0 - rate * d2) * (1.0 - rate * d3) * (1.0 - rate * d4);
            }
            w
        } else {
            0.0
        };
        sum.add(w);
        sum_sq.add(w * w);
    }
    let n = samples as f64;
    let mean = sum.total() / n;
    let var = (sum_sq.total() / n - mean * mean).max(0.0) * n / (n - 1.0);
    Ok((mean, libm::sqrt(var / n)))
}

/// A vector with density `k^3 exp(-k |v|) / (8 pi)`: Gamma(3) radius, uniform direction.
fn exponential_offset(rate: f64, stream: &mut RngStream) -> [f64; 3] {
    let mut r = 0.0;
    for _ in 0..3 {
        r -= libm::log(1.0 - stream.next_uniform());
    }
    r /= rate;
    let z = 2.0 * stream.next_uniform() - 1.0;
    let phi = 2.0 * PI * stream.next_uniform();
    let s = libm::sqrt((1.0 - z * z).max(0.0));
    [r * s * libm::cos(phi), r * s * libm::sin(phi), r * z]
}

fn add3(a: [f64; 3], b: [f64; 3]) -> [f64; 3] {
    [a[0] + b[0], a[1] + b[1], a[2] + b[2]]
}

fn norm3(v: [f64; 3]) -> f64 {
    libm::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2])
}
