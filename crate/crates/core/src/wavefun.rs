//! Full eigenfunctions ψ(r,θ), their normalisation by quadrature, radial
//! profiles and overlaps.
//!
//! ψ(r,θ) = N (r/a)^{2α−1/2} e^{−r²/2a²} ₁F₁(−n_r; 2α+1/2; r²/a²) Θ(θ),
//! with Θ = e^{iδθ}Φ(θ/2). For δ ≠ 0 the Floquet angular family makes Θ
//! single-valued on [0, 2π).

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::hyper::PolySeries;
use crate::mathieu::{self, FourierCoeffs};
use crate::params::SystemParams;
use crate::quad;
use crate::spectrum::{self, QuantumState};

const QUAD_REL_TOL: f64 = 1e-13;
const TAIL_FRACTION: f64 = 1e-17;

/// Everything needed to evaluate one eigenfunction.
#[derive(Debug, Clone, PartialEq)]
pub struct WaveSpec {
    pub state: QuantumState,
    pub params: SystemParams,
    pub a: f64,
    pub alpha: f64,
    /// Normalisation constant from quadrature.
    pub norm: f64,
    pub angular: FourierCoeffs,
    kummer: PolySeries,
}

impl WaveSpec {
    pub fn new(state: &QuantumState, params: &SystemParams) -> Result<Self> {
        let row = spectrum::energy(state, params)?;
        let q = params.mathieu_q();
        let angular = if state.delta == 0.0 {
            mathieu::fourier_coeffs(state.m, state.parity, q)?
        } else {
            mathieu::fourier_coeffs_fractional(2.0 * (state.m as f64 + state.delta), q)?
        };
        let alpha = row.alpha;
        let mut spec = WaveSpec {
            state: *state,
            params: *params,
            a: params.oscillator_length(),
            alpha,
            norm: 1.0,
            angular,
            kummer: PolySeries::kummer(state.n_r as usize, 2.0 * alpha + 0.5)?,
        };
        spec.norm = normalize_numeric(&spec)?;
        Ok(spec)
    }

    /// Radial exponent k = 2α − 1/2 of (r/a).
    pub fn power(&self) -> f64 {
        2.0 * self.alpha - 0.5
    }

    /// Unnormalised radial factor as a function of x = r/a.
    fn shape(&self, x: f64) -> f64 {
        let rho = x * x;
        x.powf(self.power()) * (-0.5 * rho).exp() * self.kummer.eval(rho)
    }

    /// N · radial factor at r.
    pub fn radial(&self, r: f64) -> f64 {
        self.norm * self.shape(r / self.a)
    }

    pub fn angular(&self, theta: f64) -> Complex64 {
        mathieu::eval_angular(theta, &self.angular, self.state.delta)
    }

    /// Upper limit in x beyond which the density integrand is below
    /// `TAIL_FRACTION` of its peak.
    fn x_cutoff(&self) -> f64 {
        let turning = (4.0 * self.state.n_r as f64 + 4.0 * self.alpha + 1.0).sqrt();
        let density = |x: f64| self.shape(x).powi(2) * x;
        let steps = 400;
        let peak = (1..=steps)
            .map(|i| density(turning * 1.5 * i as f64 / steps as f64))
            .fold(0.0, f64::max);
        let mut x = turning;
        while density(x) > TAIL_FRACTION * peak || x < turning + 3.0 {
            x += 0.25;
        }
        x
    }

    fn trapezoid_points(&self) -> usize {
        let modes = self.angular.coeffs.len() + 2 * self.state.m as usize + 2;
        (8 * modes).max(256)
    }
}

/// ψ(r, θ).
pub fn psi(spec: &WaveSpec, r: f64, theta: f64) -> Result<Complex64> {
    if !(r >= 0.0) {
        return Err(Error::Domain(format!("radius must be non-negative, got {r}")));
    }
    Ok(spec.angular(theta) * spec.radial(r))
}

/// ∫₀^{2π} |Θ|² dθ by the trapezoid rule.
fn angular_norm(spec: &WaveSpec) -> f64 {
    let m = spec.trapezoid_points();
    let h = 2.0 * PI / m as f64;
    (0..m).map(|j| spec.angular(j as f64 * h).norm_sqr()).sum::<f64>() * h
}

/// ∫₀^∞ shape(x)² x dx.
fn radial_norm(spec: &WaveSpec) -> Result<f64> {
    let f = |x: f64| spec.shape(x).powi(2) * x;
    Ok(quad::integrate(f, 0.0, spec.x_cutoff(), 0.0, QUAD_REL_TOL)?.value)
}

/// N such that ∫|ψ|² r dr dθ = 1, from quadrature. Ignores `spec.norm`.
pub fn normalize_numeric(spec: &WaveSpec) -> Result<f64> {
    let total = spec.a * spec.a * radial_norm(spec)? * angular_norm(spec);
    if !(total > 0.0 && total.is_finite()) {
        return Err(Error::Integration { estimate: total, error: f64::NAN });
    }
    Ok(1.0 / total.sqrt())
}

/// Radial normalisation for a given n_r, α, a with ∫|Θ|² = π, from
/// quadrature alone.
pub fn radial_norm_quadrature(n_r: u32, alpha: f64, a: f64) -> Result<f64> {
    let p = SystemParams::new(1.0, 0.0, 0.0, 0.0, 1.0, 0.0)?;
    let spec = WaveSpec {
        state: QuantumState::new(n_r, 0, mathieu::Branch::Ce, 0.0)?,
        params: p,
        a,
        alpha,
        norm: 1.0,
        angular: mathieu::fourier_coeffs(0, mathieu::Branch::Ce, 0.0)?,
        kummer: PolySeries::kummer(n_r as usize, 2.0 * alpha + 0.5)?,
    };
    Ok(1.0 / (a * a * radial_norm(&spec)? * PI).sqrt())
}

/// ∫|ψ|² r dr dθ with the stored normalisation.
pub fn norm_integral(spec: &WaveSpec) -> Result<f64> {
    Ok(spec.norm * spec.norm * spec.a * spec.a * radial_norm(spec)? * angular_norm(spec))
}

/// One row of a radial profile.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProfilePoint {
    pub r: f64,
    /// |R(r)|² = r |ψ_radial(r)|², the radial probability density.
    pub density: f64,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct RadialProfile {
    pub points: Vec<ProfilePoint>,
    /// Sign changes of the radial factor seen on the grid.
    pub nodes: usize,
}

pub fn radial_profile(spec: &WaveSpec, r_grid: &[f64]) -> Result<RadialProfile> {
    if r_grid.iter().any(|r| !(*r >= 0.0)) || r_grid.windows(2).any(|w| w[1] < w[0]) {
        return Err(Error::Domain("profile grid must be ascending and non-negative".into()));
    }
    let values: Vec<f64> = r_grid.iter().map(|&r| spec.radial(r)).collect();
    let points = r_grid
        .iter()
        .zip(&values)
        .map(|(&r, &v)| ProfilePoint { r, density: r * v * v })
        .collect();
    Ok(RadialProfile { points, nodes: sign_changes(&values) })
}

fn sign_changes(values: &[f64]) -> usize {
    let signs: Vec<bool> = values.iter().filter(|v| **v != 0.0).map(|v| *v > 0.0).collect();
    signs.windows(2).filter(|w| w[0] != w[1]).count()
}

/// Radial nodes in (0, ∞) from a log-spaced sign-change scan.
pub fn radial_nodes(spec: &WaveSpec) -> usize {
    let x_max = spec.x_cutoff();
    let (lo, hi) = (1e-4f64.ln(), x_max.ln());
    let n = 20_000;
    let values: Vec<f64> = (0..=n)
        .map(|i| spec.shape((lo + (hi - lo) * i as f64 / n as f64).exp()))
        .collect();
    sign_changes(&values)
}

/// ⟨ψ₁|ψ₂⟩ = ∫ ψ₁* ψ₂ r dr dθ.
pub fn overlap(s1: &WaveSpec, s2: &WaveSpec) -> Result<Complex64> {
    let r_max = (s1.x_cutoff() * s1.a).max(s2.x_cutoff() * s2.a);
    let f = |r: f64| s1.radial(r) * s2.radial(r) * r;
    let scale = (s1.norm * s2.norm).abs() * s1.a * s2.a;
    let radial = quad::integrate(f, 0.0, r_max, 1e-15 * scale, QUAD_REL_TOL)?.value;
    let m = s1.trapezoid_points().max(s2.trapezoid_points());
    let h = 2.0 * PI / m as f64;
    let angular: Complex64 = (0..m)
        .map(|j| {
            let t = j as f64 * h;
            s1.angular(t).conj() * s2.angular(t)
        })
        .sum::<Complex64>()
        * h;
    Ok(angular * radial)
}
