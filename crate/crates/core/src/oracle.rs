//! Brute-force eigensolvers that share no code path with the analytic
//! chain: a periodic angular solver and a radial grid solver.

use std::f64::consts::PI;

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::params::SystemParams;
use crate::tridiag::SymTridiagonal;

/// Eigenvalues of a discretised operator, ascending.
#[derive(Debug, Clone, PartialEq)]
pub struct FdSpectrum {
    pub grid_size: usize,
    pub eigenvalues: Vec<f64>,
    pub method: String,
    /// ‖Hv − λv‖ per eigenvalue (empty for extrapolated values).
    pub residuals: Vec<f64>,
}

impl FdSpectrum {
    /// Oracle eigenvalue nearest to `target` and its distance.
    pub fn nearest(&self, target: f64) -> Option<(f64, f64)> {
        self.eigenvalues
            .iter()
            .map(|&e| (e, (e - target).abs()))
            .min_by(|a, b| a.1.total_cmp(&b.1))
    }
}

/// Discretisation of the angular derivative operators.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AngularScheme {
    /// Periodic Fourier collocation (spectral).
    Collocation,
    /// Second-order central differences.
    CentralDifference,
}

fn angular_matrix(delta: f64, p: f64, n: usize, scheme: AngularScheme) -> DMatrix<Complex64> {
    let h = 2.0 * PI / n as f64;
    let g = 0.5 * p;
    let mut h_mat = DMatrix::<Complex64>::zeros(n, n);
    match scheme {
        AngularScheme::Collocation => {
            let d2_diag = -PI * PI / (3.0 * h * h) - 1.0 / 6.0;
            for i in 0..n {
                for j in 0..n {
                    let entry = if i == j {
                        Complex64::new(d2_diag, 0.0)
                    } else {
                        let k = i as f64 - j as f64;
                        let sign = if (i + j) % 2 == 0 { 1.0 } else { -1.0 };
                        let half = 0.5 * k * h;
                        let d2 = -0.5 * sign / half.sin().powi(2);
                        let d1 = 0.5 * sign / half.tan();
                        Complex64::new(d2, -2.0 * delta * d1)
                    };
                    h_mat[(i, j)] = entry;
                }
            }
        }
        AngularScheme::CentralDifference => {
            for i in 0..n {
                let next = (i + 1) % n;
                let prev = (i + n - 1) % n;
                h_mat[(i, i)] += Complex64::new(-2.0 / (h * h), 0.0);
                // −2iδ (v_{i+1} − v_{i−1}) / 2h
                h_mat[(i, next)] += Complex64::new(1.0 / (h * h), -delta / h);
                h_mat[(i, prev)] += Complex64::new(1.0 / (h * h), delta / h);
            }
        }
    }
    for i in 0..n {
        h_mat[(i, i)] -= Complex64::new(g * (i as f64 * h).cos(), 0.0);
    }
    h_mat
}

fn angular_eigs(delta: f64, p: f64, n: usize, scheme: AngularScheme) -> Result<FdSpectrum> {
    if n < 8 || !n.is_multiple_of(2) {
        return Err(Error::Parameter(format!("angular grid size must be even and at least 8, got {n}")));
    }
    if !(delta.is_finite() && p.is_finite()) {
        return Err(Error::Parameter("angular oracle inputs must be finite".into()));
    }
    let h_mat = angular_matrix(delta, p, n, scheme);
    let eig = h_mat.clone().symmetric_eigen();
    let mut pairs: Vec<(f64, f64)> = (0..n)
        .map(|k| {
            let v = eig.eigenvectors.column(k);
            let lambda = eig.eigenvalues[k];
            let r = (&h_mat * v - v * Complex64::new(lambda, 0.0)).norm();
            (lambda, r)
        })
        .collect();
    if pairs.iter().any(|(l, r)| !l.is_finite() || !r.is_finite()) {
        return Err(Error::Convergence { what: "angular eigen-solve".into(), last: f64::NAN, previous: f64::NAN });
    }
    // The operator is negative semi-definite up to the bounded cosine
    // term; its top half (smallest |E|) is the well-resolved part.
    pairs.sort_by(|a, b| b.0.total_cmp(&a.0));
    pairs.truncate(n / 2);
    pairs.reverse();
    Ok(FdSpectrum {
        grid_size: n,
        eigenvalues: pairs.iter().map(|p| p.0).collect(),
        residuals: pairs.iter().map(|p| p.1).collect(),
        method: match scheme {
            AngularScheme::Collocation => "fourier-collocation".into(),
            AngularScheme::CentralDifference => "central-difference".into(),
        },
    })
}

/// E_θ values of d²/dθ² − 2iδ d/dθ − (p/2)cos θ on periodic functions,
/// by Fourier collocation on `n` points.
pub fn angular_fd_eigs(delta: f64, p: f64, n: usize) -> Result<FdSpectrum> {
    angular_eigs(delta, p, n, AngularScheme::Collocation)
}

/// Same operator with second-order central differences.
pub fn angular_fd_eigs_central(delta: f64, p: f64, n: usize) -> Result<FdSpectrum> {
    angular_eigs(delta, p, n, AngularScheme::CentralDifference)
}

/// Richardson extrapolation over successive halvings of the grid step.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConvergenceReport {
    pub extrapolated: f64,
    /// Observed order p in error ∝ h^p; `None` when undefined.
    pub order: Option<f64>,
    pub reliable: bool,
}

/// Uses the last three estimates, each on a grid with half the step of
/// the one before.
pub fn convergence_report(seq: &[f64]) -> Result<ConvergenceReport> {
    if seq.len() < 3 {
        return Err(Error::Parameter("convergence report needs at least three grid levels".into()));
    }
    let [e0, e1, e2] = [seq[seq.len() - 3], seq[seq.len() - 2], seq[seq.len() - 1]];
    let d1 = e1 - e0;
    let d2 = e2 - e1;
    if d2 == 0.0 || d1 == 0.0 || d1.signum() != d2.signum() || d1.abs() <= d2.abs() {
        return Ok(ConvergenceReport { extrapolated: e2, order: None, reliable: false });
    }
    let ratio = d1 / d2;
    Ok(ConvergenceReport { extrapolated: e2 + d2 / (ratio - 1.0), order: Some(ratio.log2()), reliable: true })
}

/// Dimensionless radial operator for u = R/√x, written in conservative
/// form −(1/x)(x u')' + (ℓ²/x²) u + x² u with ℓ² = 1/4 − η, on the offset
/// grid x_j = (j + 1/2)h. The flux through x = 0 vanishes, so no boundary
/// row is needed there; u = 0 beyond x_max. Symmetrised with weights √x_j.
fn radial_matrix(eta: f64, n: usize, x_max: f64) -> SymTridiagonal {
    let h = x_max / n as f64;
    let inv_h2 = 1.0 / (h * h);
    let ell2 = 0.25 - eta;
    let diag = (0..n)
        .map(|j| {
            let x = (j as f64 + 0.5) * h;
            2.0 * inv_h2 + ell2 / (x * x) + x * x
        })
        .collect();
    let off = (0..n - 1)
        .map(|j| {
            let jf = j as f64;
            -inv_h2 * (jf + 1.0) / ((jf + 0.5) * (jf + 1.5)).sqrt()
        })
        .collect();
    SymTridiagonal::new(diag, off)
}

/// Lowest `count` eigenvalues of the dimensionless radial operator.
pub fn radial_grid_eigs(eta: f64, n: usize, x_max: f64, count: usize) -> Vec<f64> {
    radial_matrix(eta, n, x_max).lowest(count)
}

const RADIAL_BASE_POINTS: usize = 1500;

/// Lowest `n_max` values of ε from the radial equation
/// R'' + ηR/r² − 2μA r² R = −εR, extrapolated over three grids.
pub fn radial_fd_eigs(e_theta: f64, params: &SystemParams, n_max: usize) -> Result<FdSpectrum> {
    params.validate()?;
    if n_max == 0 {
        return Err(Error::Parameter("n_max must be at least 1".into()));
    }
    let eta = e_theta - params.ring_strength() - params.delta * params.delta + 0.25;
    if 1.0 - 4.0 * eta < 0.0 {
        return Err(Error::Supercritical { discriminant: 1.0 - 4.0 * eta });
    }
    let a = params.oscillator_length();
    // grow the box until the highest requested level sits well inside it
    let mut x_max = 8.0;
    loop {
        let top = radial_grid_eigs(eta, 400, x_max, n_max)[n_max - 1];
        let needed = top.max(0.0).sqrt() + 7.0;
        if needed <= x_max {
            break;
        }
        x_max = needed.ceil();
    }
    let levels: Vec<Vec<f64>> = (0..3)
        .map(|l| radial_grid_eigs(eta, RADIAL_BASE_POINTS << l, x_max, n_max))
        .collect();
    let mut eigenvalues = Vec::with_capacity(n_max);
    for k in 0..n_max {
        let seq: Vec<f64> = levels.iter().map(|v| v[k]).collect();
        let rep = convergence_report(&seq)?;
        eigenvalues.push(rep.extrapolated / (a * a));
    }
    Ok(FdSpectrum {
        grid_size: RADIAL_BASE_POINTS << 2,
        eigenvalues,
        method: format!("offset-grid finite differences, x_max = {x_max}, richardson"),
        residuals: Vec::new(),
    })
}
