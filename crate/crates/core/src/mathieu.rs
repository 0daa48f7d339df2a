//! Mathieu characteristic values and angular functions.
//!
//! The Mathieu equation Φ'' + (c − 2q cos 2z) Φ = 0 is solved through its
//! Fourier recurrence, which is a symmetric tridiagonal eigenproblem:
//!
//! * `ce_{2m}` (values `a_{2m}`): Φ = Σ A_{2k} cos 2kz, symmetrised with √2·A₀,
//! * `se_{2m}` (values `b_{2m}`): Φ = Σ B_{2k} sin 2kz, k ≥ 1,
//! * Floquet order ν: Φ = Σ_j c_j e^{−i(ν+2j)z}, diagonal (ν+2j)².
//!
//! The truncation starts at 32 modes and doubles until two successive
//! characteristic values agree to 1e-12 (relative to max(1, |c|)), capped at
//! 4096 modes.

use std::f64::consts::SQRT_2;
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::tridiag::SymTridiagonal;

const START_MODES: usize = 32;
const MAX_MODES: usize = 4096;
const VALUE_TOL: f64 = 1e-12;
const TAIL_TOL: f64 = 1e-14;
/// Largest |q| accepted; beyond this the recurrence needs more than the
/// mode cap to resolve the lowest states.
pub const MAX_Q: f64 = 1.0e5;

/// Angular parity: cosine-elliptic or sine-elliptic.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Branch {
    Ce,
    Se,
}

impl Branch {
    pub fn label(self) -> &'static str {
        match self {
            Branch::Ce => "ce",
            Branch::Se => "se",
        }
    }
}

impl fmt::Display for Branch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl FromStr for Branch {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "ce" | "cos" | "even" => Ok(Branch::Ce),
            "se" | "sin" | "odd" => Ok(Branch::Se),
            other => Err(Error::Parameter(format!("unknown parity '{other}', expected ce or se"))),
        }
    }
}

/// A characteristic value together with the problem that produced it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MathieuChar {
    /// Floquet order ν (2m for the integer-order families).
    pub order_nu: f64,
    pub q: f64,
    /// `None` for the fractional-order family.
    pub branch: Option<Branch>,
    pub value: f64,
    /// Number of Fourier modes in the converged truncation.
    pub truncation: usize,
}

/// Which Fourier basis a coefficient vector refers to.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum AngularBasis {
    /// coeffs[k] = A_{2k}, k ≥ 0.
    Cosine,
    /// coeffs[k] = B_{2k+2}, k ≥ 0.
    Sine,
    /// coeffs[i] = c_{j_min+i} multiplying e^{−i(ν+2j)z}.
    Floquet { nu: f64, j_min: i64 },
}

/// Normalised Fourier coefficients of one angular solution.
///
/// Normalisation: ∫₀^π Φ² dz = π/2, i.e. 2A₀² + ΣA² = 1, ΣB² = 1, or
/// Σc² = 1/2 for the Floquet family, so that ∫₀^{2π} |Θ|² dθ = π.
#[derive(Debug, Clone, PartialEq)]
pub struct FourierCoeffs {
    pub basis: AngularBasis,
    /// Mathieu index m (or ⌊ν/2⌋ for the Floquet family).
    pub order: u32,
    pub q: f64,
    pub value: f64,
    pub coeffs: Vec<f64>,
    pub truncation: usize,
}

impl FourierCoeffs {
    pub fn branch(&self) -> Option<Branch> {
        match self.basis {
            AngularBasis::Cosine => Some(Branch::Ce),
            AngularBasis::Sine => Some(Branch::Se),
            AngularBasis::Floquet { .. } => None,
        }
    }

    /// The unit eigenvector of the recurrence matrix these coefficients
    /// came from.
    fn recurrence_vector(&self) -> Vec<f64> {
        match self.basis {
            AngularBasis::Cosine => {
                let mut v = self.coeffs.clone();
                v[0] *= SQRT_2;
                v
            }
            AngularBasis::Sine => self.coeffs.clone(),
            AngularBasis::Floquet { .. } => self.coeffs.iter().map(|c| c * SQRT_2).collect(),
        }
    }

    /// ‖T v − c v‖∞ for the recurrence matrix at this truncation.
    pub fn recurrence_residual(&self) -> f64 {
        let t = match self.basis {
            AngularBasis::Cosine => integer_matrix(Branch::Ce, self.q, self.coeffs.len()),
            AngularBasis::Sine => integer_matrix(Branch::Se, self.q, self.coeffs.len()),
            AngularBasis::Floquet { nu, j_min } => floquet_matrix_from(nu, self.q, j_min, self.coeffs.len()),
        };
        t.residual(self.value, &self.recurrence_vector())
    }

    /// Σ over the normalisation functional; 1 for a correctly normalised set.
    pub fn norm_functional(&self) -> f64 {
        let s: f64 = self.coeffs.iter().map(|c| c * c).sum();
        match self.basis {
            AngularBasis::Cosine => s + self.coeffs[0] * self.coeffs[0],
            AngularBasis::Sine => s,
            AngularBasis::Floquet { .. } => 2.0 * s,
        }
    }
}

fn integer_matrix(branch: Branch, q: f64, n: usize) -> SymTridiagonal {
    match branch {
        Branch::Ce => {
            let diag = (0..n).map(|k| (2 * k) as f64 * (2 * k) as f64).collect();
            let mut off = vec![q; n - 1];
            if n > 1 {
                off[0] = SQRT_2 * q;
            }
            SymTridiagonal::new(diag, off)
        }
        Branch::Se => {
            let diag = (0..n).map(|k| (2 * k + 2) as f64 * (2 * k + 2) as f64).collect();
            SymTridiagonal::new(diag, vec![q; n - 1])
        }
    }
}

fn floquet_matrix_from(nu: f64, q: f64, j_min: i64, n: usize) -> SymTridiagonal {
    let diag = (0..n)
        .map(|i| {
            let s = nu + 2.0 * (j_min + i as i64) as f64;
            s * s
        })
        .collect();
    SymTridiagonal::new(diag, vec![q; n - 1])
}

/// Window j ∈ [−half, half + ⌈|ν|/2⌉] mirrored so every mode with
/// |ν+2j| ≤ |ν| is inside, plus `extra` on either side.
fn floquet_window(nu: f64, extra: usize) -> (i64, usize) {
    let reach = (nu.abs() / 2.0).ceil() as i64 + 1;
    let j_min = -(reach + extra as i64);
    let j_max = reach + extra as i64;
    (j_min, (j_max - j_min + 1) as usize)
}

/// Rank of ν² among the q = 0 diagonal, counting strictly smaller entries.
fn floquet_rank(nu: f64, j_min: i64, n: usize) -> usize {
    (0..n)
        .filter(|&i| {
            let s = nu + 2.0 * (j_min + i as i64) as f64;
            s * s < nu * nu
        })
        .count()
}

fn check_q(q: f64) -> Result<()> {
    if !q.is_finite() {
        return Err(Error::Parameter("Mathieu parameter q must be finite".into()));
    }
    if q.abs() > MAX_Q {
        return Err(Error::Domain(format!("|q| = {} exceeds the supported bound {MAX_Q}", q.abs())));
    }
    Ok(())
}

fn check_order(m: u32, branch: Branch) -> Result<()> {
    if branch == Branch::Se && m == 0 {
        return Err(Error::Parameter("se solutions start at m = 1 (se_0 does not exist)".into()));
    }
    Ok(())
}

/// Double the truncation until the selected eigenvalue settles.
/// `build(size)` returns the matrix and the eigenvalue index to track.
fn converge<F>(what: &str, mut build: F) -> Result<(SymTridiagonal, usize, f64)>
where
    F: FnMut(usize) -> (SymTridiagonal, usize),
{
    let mut size = START_MODES;
    let mut previous: Option<f64> = None;
    loop {
        let (t, idx) = build(size);
        let value = t.eigenvalue(idx);
        if let Some(p) = previous {
            if (value - p).abs() < VALUE_TOL * value.abs().max(1.0) {
                return Ok((t, idx, value));
            }
        }
        if size >= MAX_MODES {
            return Err(Error::Convergence {
                what: what.to_string(),
                last: value,
                previous: previous.unwrap_or(f64::NAN),
            });
        }
        previous = Some(value);
        size *= 2;
    }
}

/// Characteristic value a_{2m}(q) (`Ce`) or b_{2m}(q) (`Se`, m ≥ 1).
pub fn char_value(m: u32, branch: Branch, q: f64) -> Result<MathieuChar> {
    check_order(m, branch)?;
    check_q(q)?;
    let order = 2.0 * m as f64;
    if q == 0.0 {
        return Ok(MathieuChar { order_nu: order, q, branch: Some(branch), value: order * order, truncation: 0 });
    }
    let (t, _, value) = converge_integer(m, branch, q)?;
    Ok(MathieuChar { order_nu: order, q, branch: Some(branch), value, truncation: t.len() })
}

fn converge_integer(m: u32, branch: Branch, q: f64) -> Result<(SymTridiagonal, usize, f64)> {
    let idx = match branch {
        Branch::Ce => m as usize,
        Branch::Se => m as usize - 1,
    };
    converge(&format!("{branch}_{} characteristic value", 2 * m), |size| {
        (integer_matrix(branch, q, size.max(idx + START_MODES)), idx)
    })
}

/// Characteristic value λ_ν(q) of the Floquet family with exponent ν.
///
/// The returned eigenvalue is the one continuously connected to ν² at q = 0.
/// Where ν is an integer two solutions share ν² at q = 0; the value returned
/// there is the limit from below (ν → ν₀⁻): b_{ν₀} for even ν₀ ≥ 2, a₀ for
/// ν₀ = 0, and the lower member of the pair for odd ν₀. λ_ν = λ_{−ν}.
pub fn char_value_fractional(nu: f64, q: f64) -> Result<MathieuChar> {
    if !nu.is_finite() {
        return Err(Error::Parameter("Floquet order must be finite".into()));
    }
    check_q(q)?;
    if q == 0.0 {
        return Ok(MathieuChar { order_nu: nu, q, branch: None, value: nu * nu, truncation: 0 });
    }
    let (t, _, value) = converge_floquet(nu, q)?;
    Ok(MathieuChar { order_nu: nu, q, branch: None, value, truncation: t.len() })
}

fn converge_floquet(nu: f64, q: f64) -> Result<(SymTridiagonal, usize, f64)> {
    converge(&format!("Floquet order {nu} characteristic value"), |size| {
        let (j_min, n) = floquet_window(nu, size / 2);
        (floquet_matrix_from(nu, q, j_min, n), floquet_rank(nu, j_min, n))
    })
}

/// Edges of the band swept by λ_ν for ν ∈ (2m, 2m+2): (a_{2m}(q), b_{2m+2}(q)).
pub fn band_edges(m: u32, q: f64) -> Result<(f64, f64)> {
    Ok((char_value(m, Branch::Ce, q)?.value, char_value(m + 1, Branch::Se, q)?.value))
}

/// Four-term small-q expansion of a_{2m} ≈ b_{2m}, valid for m > 3:
///
/// 4m² + p²/(2ν) + (20m²+7)p⁴/(32ν³(ν−3)) + (144m⁴+232m²+29)p⁶/(64ν⁵(ν−3)(ν−8)),
/// with ν = 4m² − 1. Truncation error is O(p⁸).
pub fn char_value_series(m: u32, p: f64) -> Result<f64> {
    let terms = series_terms(m, p)?;
    Ok(terms.iter().sum())
}

/// The four individual terms of [`char_value_series`].
pub fn series_terms(m: u32, p: f64) -> Result<[f64; 4]> {
    if m <= 3 {
        return Err(Error::Domain(format!("small-p expansion needs m > 3, got m = {m}")));
    }
    if !p.is_finite() {
        return Err(Error::Parameter("p must be finite".into()));
    }
    let mf = m as f64;
    let m2 = mf * mf;
    let nu = 4.0 * m2 - 1.0;
    let p2 = p * p;
    Ok([
        4.0 * m2,
        p2 / (2.0 * nu),
        (20.0 * m2 + 7.0) * p2 * p2 / (32.0 * nu.powi(3) * (nu - 3.0)),
        (144.0 * m2 * m2 + 232.0 * m2 + 29.0) * p2 * p2 * p2 / (64.0 * nu.powi(5) * (nu - 3.0) * (nu - 8.0)),
    ])
}

/// Magnitude estimate of the first omitted (p⁸ and beyond) contribution:
/// geometric continuation of the last two terms plus the leading a/b
/// splitting |p|^{2m} / (2^{4m−2} ((2m−1)!)²), which first enters at p⁸ for m = 4.
pub fn series_remainder_estimate(m: u32, p: f64) -> Result<f64> {
    let t = series_terms(m, p)?;
    let geometric = if t[2] != 0.0 { t[3] * t[3] / t[2] } else { 0.0 };
    let r = 2 * m;
    let mut log_split = r as f64 * p.abs().ln() - (2 * r - 2) as f64 * std::f64::consts::LN_2;
    for k in 2..r {
        log_split -= 2.0 * (k as f64).ln();
    }
    let split = if p == 0.0 { 0.0 } else { log_split.exp() };
    Ok(geometric.abs() + split)
}

/// Normalised Fourier coefficients of ce_{2m} or se_{2m}.
pub fn fourier_coeffs(m: u32, branch: Branch, q: f64) -> Result<FourierCoeffs> {
    check_order(m, branch)?;
    check_q(q)?;
    let basis = match branch {
        Branch::Ce => AngularBasis::Cosine,
        Branch::Se => AngularBasis::Sine,
    };
    let idx = match branch {
        Branch::Ce => m as usize,
        Branch::Se => m as usize - 1,
    };
    if q == 0.0 {
        let n = (idx + 1).max(8);
        let mut coeffs = vec![0.0; n];
        coeffs[idx] = if branch == Branch::Ce && m == 0 { 1.0 / SQRT_2 } else { 1.0 };
        let order = 2.0 * m as f64;
        return Ok(FourierCoeffs { basis, order: m, q, value: order * order, coeffs, truncation: n });
    }
    let (mut t, _, mut value) = converge_integer(m, branch, q)?;
    loop {
        let mut v = t.eigenvector(value);
        if tail_small(&v, false) || t.len() >= MAX_MODES {
            if branch == Branch::Ce {
                v[0] /= SQRT_2;
            }
            return Ok(FourierCoeffs { basis, order: m, q, value, truncation: v.len(), coeffs: v });
        }
        t = integer_matrix(branch, q, t.len() * 2);
        value = t.eigenvalue(idx);
    }
}

/// Normalised Floquet coefficients for order ν.
pub fn fourier_coeffs_fractional(nu: f64, q: f64) -> Result<FourierCoeffs> {
    if !nu.is_finite() {
        return Err(Error::Parameter("Floquet order must be finite".into()));
    }
    check_q(q)?;
    let order = (nu.abs() / 2.0).floor() as u32;
    let (mut extra, mut t, mut value) = if q == 0.0 {
        let extra = 4;
        let (j_min, n) = floquet_window(nu, extra);
        let t = floquet_matrix_from(nu, q, j_min, n);
        (extra, t, nu * nu)
    } else {
        let (t, _, value) = converge_floquet(nu, q)?;
        let extra = (t.len() - floquet_window(nu, 0).1) / 2;
        (extra, t, value)
    };
    loop {
        let (j_min, n) = floquet_window(nu, extra);
        let v = if q == 0.0 {
            // Unit vector at the j whose (ν+2j)² equals ν²; at integer ν the
            // lower j wins, matching the limit from below.
            let mut v = vec![0.0; n];
            let hit = (0..n)
                .find(|&i| {
                    let s = nu + 2.0 * (j_min + i as i64) as f64;
                    s * s == nu * nu
                })
                .expect("window contains j = 0");
            v[hit] = 1.0;
            v
        } else {
            t.eigenvector(value)
        };
        if q == 0.0 || tail_small(&v, true) || n >= MAX_MODES {
            let coeffs = v.iter().map(|c| c / SQRT_2).collect();
            return Ok(FourierCoeffs {
                basis: AngularBasis::Floquet { nu, j_min },
                order,
                q,
                value,
                coeffs,
                truncation: n,
            });
        }
        extra *= 2;
        let (j_min, n) = floquet_window(nu, extra);
        t = floquet_matrix_from(nu, q, j_min, n);
        value = t.eigenvalue(floquet_rank(nu, j_min, n));
    }
}

/// Whether the trailing coefficients (and the leading ones too, for a
/// two-sided Floquet window) are negligible.
fn tail_small(v: &[f64], two_sided: bool) -> bool {
    let max = v.iter().fold(0.0_f64, |a, x| a.max(x.abs()));
    let first = if two_sided { v.first().map_or(0.0, |x| x.abs()) } else { 0.0 };
    let last = v.last().map_or(0.0, |x| x.abs());
    first.max(last) <= TAIL_TOL * max || v.len() <= 1
}

/// Θ(θ) = e^{iδθ} Φ(θ/2).
///
/// For the Floquet basis with ν = 2(m+δ) the phases cancel and Θ is
/// single-valued on the circle; for the integer bases with δ ≠ 0 Θ picks up
/// the Bloch phase e^{2πiδ} across θ = 2π.
pub fn eval_angular(theta: f64, coeffs: &FourierCoeffs, delta: f64) -> Complex64 {
    let phase = Complex64::from_polar(1.0, delta * theta);
    let phi = match coeffs.basis {
        AngularBasis::Cosine => {
            let s: f64 = coeffs.coeffs.iter().enumerate().map(|(k, a)| a * (k as f64 * theta).cos()).sum();
            Complex64::new(s, 0.0)
        }
        AngularBasis::Sine => {
            let s: f64 = coeffs
                .coeffs
                .iter()
                .enumerate()
                .map(|(k, b)| b * ((k + 1) as f64 * theta).sin())
                .sum();
            Complex64::new(s, 0.0)
        }
        AngularBasis::Floquet { nu, j_min } => coeffs
            .coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| {
                let freq = 0.5 * nu + (j_min + i as i64) as f64;
                Complex64::from_polar(*c, -freq * theta)
            })
            .sum(),
    };
    phase * phi
}
