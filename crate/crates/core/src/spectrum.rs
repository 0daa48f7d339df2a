//! Analytic eigenvalue chain: angular eigenvalue, radial exponent,
//! quantisation, total energy, dipole and flux corrections.
//!
//! For a state (n_r, m, parity, δ) with Mathieu parameter p = 4μD_θ/ħ²:
//!
//! ```text
//! E_θ = δ² − c/4                     c = a_{2m}(p), b_{2m}(p) or λ_{2(m+δ)}(p)
//! η   = E_θ − 2μB/ħ² − δ² + 1/4
//! α   = (1 + √(1 − 4η)) / 4
//! εa² = 4n_r + 4α + 1                a² = ħ/√(2μA)
//! E   = √(2ħ²A/μ) (2n_r + 1 + √(c/4 + 2μB/ħ²)) + C
//! ```
//!
//! The last two lines are two routes to the same number; `energy` returns
//! both (`energy` and `epsilon`) so callers can check one against the other.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::mathieu::{self, Branch};
use crate::params::{self, MaterialSpec, SystemParams};

/// Labels one bound state.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuantumState {
    pub n_r: u32,
    pub m: u32,
    pub parity: Branch,
    pub delta: f64,
}

impl QuantumState {
    pub fn new(n_r: u32, m: u32, parity: Branch, delta: f64) -> Result<Self> {
        let s = QuantumState { n_r, m, parity, delta };
        s.validate()?;
        Ok(s)
    }

    pub fn validate(&self) -> Result<()> {
        if self.parity == Branch::Se && self.m == 0 {
            return Err(Error::Parameter("m = 0 exists only for ce states".into()));
        }
        if !self.delta.is_finite() {
            return Err(Error::Parameter("flux ratio delta must be finite".into()));
        }
        Ok(())
    }

    pub fn with_delta(mut self, delta: f64) -> Self {
        self.delta = delta;
        self
    }

    pub fn with_m(mut self, m: u32) -> Self {
        self.m = m;
        self
    }
}

/// Output of the angular step.
#[derive(Debug, Clone, PartialEq)]
pub struct AngularEigen {
    pub e_theta: f64,
    pub char_value: f64,
    pub q_mathieu: f64,
    /// Which characteristic-value family was used.
    pub branch_note: String,
}

/// One fully evaluated state, all quantities in atomic units.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectrumRow {
    pub state: QuantumState,
    pub q_mathieu: f64,
    pub char_value: f64,
    pub e_theta: f64,
    pub eta: f64,
    pub alpha: f64,
    /// ε = 2μ(E − C)/ħ² from the quantisation condition.
    pub epsilon: f64,
    /// √(c/4 + 2μB/ħ²), the generalised angular momentum.
    pub lambda_eff: f64,
    /// Closed-form energy.
    pub energy: f64,
    /// λ_eff − √(2μB/ħ² + m²).
    pub correction: f64,
    pub branch_note: String,
}

impl SpectrumRow {
    /// Energy recomputed from ε: E = ħ²ε/(2μ) + C.
    pub fn energy_from_quantization(&self, params: &SystemParams) -> f64 {
        self.epsilon / (2.0 * params.mu) + params.c
    }
}

fn check_consistent(state: &QuantumState, params: &SystemParams) -> Result<()> {
    state.validate()?;
    params.validate()?;
    if state.delta != params.delta {
        return Err(Error::Parameter(format!(
            "state flux ratio {} differs from system flux ratio {}",
            state.delta, params.delta
        )));
    }
    Ok(())
}

/// Characteristic value for a state: integer order when δ = 0, otherwise
/// the Floquet family of order 2(m+δ) shared by both parity labels.
pub fn characteristic(state: &QuantumState, q: f64) -> Result<(f64, String)> {
    if state.delta == 0.0 {
        let c = mathieu::char_value(state.m, state.parity, q)?;
        let family = match state.parity {
            Branch::Ce => "a",
            Branch::Se => "b",
        };
        Ok((c.value, format!("{family}_{}", 2 * state.m)))
    } else {
        let nu = 2.0 * (state.m as f64 + state.delta);
        let c = mathieu::char_value_fractional(nu, q)?;
        Ok((c.value, format!("floquet_nu={nu}")))
    }
}

/// E_θ = δ² − c_{2(m+δ)}(p)/4 with p = 4μD_θ/ħ².
pub fn angular_eigenvalue(state: &QuantumState, params: &SystemParams) -> Result<AngularEigen> {
    check_consistent(state, params)?;
    let q_mathieu = params.mathieu_q();
    let (char_value, branch_note) = characteristic(state, q_mathieu)?;
    Ok(AngularEigen {
        e_theta: state.delta * state.delta - 0.25 * char_value,
        char_value,
        q_mathieu,
        branch_note,
    })
}

/// η and the regular-root exponent α. Rejects 1 − 4η < 0.
pub fn radial_exponent(e_theta: f64, params: &SystemParams) -> Result<(f64, f64)> {
    let beta_term = params.ring_strength() + params.delta * params.delta;
    let eta = e_theta - beta_term + 0.25;
    let discriminant = 1.0 - 4.0 * eta;
    if discriminant < 0.0 {
        return Err(Error::Supercritical { discriminant });
    }
    Ok((eta, 0.25 * (1.0 + discriminant.sqrt())))
}

/// Evaluates the full chain for one state.
pub fn energy(state: &QuantumState, params: &SystemParams) -> Result<SpectrumRow> {
    let ang = angular_eigenvalue(state, params)?;
    let (eta, alpha) = radial_exponent(ang.e_theta, params)?;
    let root_arg = 0.25 * ang.char_value + params.ring_strength();
    if root_arg < 0.0 {
        return Err(Error::Spectral(root_arg));
    }
    let lambda_eff = root_arg.sqrt();
    let n = state.n_r as f64;
    let energy = params.energy_quantum() * (2.0 * n + 1.0 + lambda_eff) + params.c;
    let a = params.oscillator_length();
    let epsilon = (4.0 * n + 4.0 * alpha + 1.0) / (a * a);
    let m = state.m as f64;
    let lambda0 = (params.ring_strength() + m * m).sqrt();
    Ok(SpectrumRow {
        state: *state,
        q_mathieu: ang.q_mathieu,
        char_value: ang.char_value,
        e_theta: ang.e_theta,
        eta,
        alpha,
        epsilon,
        lambda_eff,
        energy,
        correction: lambda_eff - lambda0,
        branch_note: ang.branch_note,
    })
}

/// A quantum-ring state evaluated for a material.
#[derive(Debug, Clone, PartialEq)]
pub struct QrRow {
    pub material: String,
    /// Dipole moment D in atomic units (before division by ε_r).
    pub dipole: f64,
    pub row: SpectrumRow,
    /// E/ħω₀.
    pub energy_hw: f64,
    pub energy_ev: f64,
}

/// E/ħω₀ = 2n_r + 1 + √(λ² + c/4) for the ring built from `mat`.
pub fn qr_energy(state: &QuantumState, mat: &MaterialSpec, dipole: f64) -> Result<QrRow> {
    let params = params::from_material(mat, dipole, state.delta)?;
    let row = energy(state, &params)?;
    let energy_hw = row.energy / mat.omega0();
    Ok(QrRow {
        material: mat.name.clone(),
        dipole,
        energy_ev: params::hartree_to_ev(row.energy),
        energy_hw,
        row,
    })
}

/// λ_eff − λ₀: the energy shift in units of ħω₀.
pub fn correction(state: &QuantumState, mat: &MaterialSpec, dipole: f64) -> Result<f64> {
    Ok(qr_energy(state, mat, dipole)?.row.correction)
}

/// Transition energies between two states that differ only in m.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Transition {
    pub upper: QuantumState,
    pub lower: QuantumState,
    /// In units of ħω₀.
    pub de_with_dipole: f64,
    pub de_without_dipole: f64,
    /// (ΔE_D − ΔE_0)/ΔE_0.
    pub relative_shift: f64,
}

pub fn transition(upper: &QuantumState, lower: &QuantumState, mat: &MaterialSpec, dipole: f64) -> Result<Transition> {
    if upper.n_r != lower.n_r || upper.delta != lower.delta {
        return Err(Error::Parameter("transition states must share n_r and delta".into()));
    }
    // m = 0 has only a ce partner, so (n,1)→(n,0) pairs an se/ce upper
    // level with the ce ground level; everything else must match parity.
    if upper.parity != lower.parity && lower.m != 0 {
        return Err(Error::Parameter("transition states must differ only in m".into()));
    }
    if upper.m == lower.m {
        return Err(Error::Parameter("transition states must have different m".into()));
    }
    let hw = |s: &QuantumState, d: f64| qr_energy(s, mat, d).map(|r| r.energy_hw);
    let de_with_dipole = hw(upper, dipole)? - hw(lower, dipole)?;
    let de_without_dipole = hw(upper, 0.0)? - hw(lower, 0.0)?;
    Ok(Transition {
        upper: *upper,
        lower: *lower,
        de_with_dipole,
        de_without_dipole,
        relative_shift: (de_with_dipole - de_without_dipole) / de_without_dipole,
    })
}

/// λ_eff(δ) − λ_eff(0) at fixed dipole, in units of ħω₀.
pub fn ab_correction(state: &QuantumState, mat: &MaterialSpec, delta: f64, dipole: f64) -> Result<f64> {
    let with_flux = qr_energy(&state.with_delta(delta), mat, dipole)?;
    let without = qr_energy(&state.with_delta(0.0), mat, dipole)?;
    Ok(with_flux.row.lambda_eff - without.row.lambda_eff)
}

/// Grid of materials × states × dipoles.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct SweepConfig {
    pub materials: Vec<MaterialSpec>,
    pub states: Vec<QuantumState>,
    pub dipoles: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub material: String,
    pub dipole: f64,
    pub state: QuantumState,
    pub result: Result<QrRow>,
}

/// Evaluates every grid point; failures are kept in their row. Rows come
/// back ordered by material, then state (both in input order), then
/// ascending dipole. Parallelism is capped by `QRING_THREADS` when set.
pub fn sweep(cfg: &SweepConfig) -> Vec<SweepRow> {
    let mut dipoles = cfg.dipoles.clone();
    dipoles.sort_by(f64::total_cmp);
    let mut points: Vec<(&MaterialSpec, &QuantumState, f64)> = Vec::new();
    for mat in &cfg.materials {
        for state in &cfg.states {
            points.extend(dipoles.iter().map(|&d| (mat, state, d)));
        }
    }
    let eval = || {
        points
            .par_iter()
            .map(|(mat, state, d)| SweepRow {
                material: mat.name.clone(),
                dipole: *d,
                state: **state,
                result: qr_energy(state, mat, *d),
            })
            .collect()
    };
    with_thread_cap(eval)
}

/// Runs `f` inside a pool limited to `QRING_THREADS` threads if that
/// variable holds a positive integer.
pub fn with_thread_cap<T: Send, F: FnOnce() -> T + Send>(f: F) -> T {
    let cap = std::env::var("QRING_THREADS").ok().and_then(|v| v.trim().parse::<usize>().ok()).filter(|&n| n > 0);
    match cap.and_then(|n| rayon::ThreadPoolBuilder::new().num_threads(n).build().ok()) {
        Some(pool) => pool.install(f),
        None => f(),
    }
}
