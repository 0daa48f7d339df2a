//! Oracle comparisons run by `qring verify` and the acceptance suite.

use std::fmt;
use std::str::FromStr;

use crate::audit;
use crate::error::{Error, Result};
use crate::hyper::{self, PolySeries};
use crate::mathieu::{self, Branch};
use crate::oracle;
use crate::params::{from_material, material};
use crate::spectrum::{self, QuantumState};
use crate::wavefun::{self, WaveSpec};

pub const ANGULAR_TOL: f64 = 1e-8;
pub const RADIAL_REL_TOL: f64 = 1e-6;
pub const NORM_TOL: f64 = 1e-9;
pub const ORTHO_TOL: f64 = 1e-8;
pub const ANGULAR_GRIDS: [usize; 2] = [128, 256];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    Angular,
    Radial,
    Series,
    Hyper,
    Wavefunction,
    Audit,
    All,
}

impl Suite {
    pub const EACH: [Suite; 6] =
        [Suite::Angular, Suite::Radial, Suite::Series, Suite::Hyper, Suite::Wavefunction, Suite::Audit];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Angular => "angular",
            Suite::Radial => "radial",
            Suite::Series => "series",
            Suite::Hyper => "hyper",
            Suite::Wavefunction => "wavefunction",
            Suite::Audit => "audit",
            Suite::All => "all",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::EACH
            .iter()
            .chain(&[Suite::All])
            .find(|x| x.name() == s.to_ascii_lowercase())
            .copied()
            .ok_or_else(|| Error::Parameter(format!("unknown suite '{s}'")))
    }
}

/// One comparison. `pass` is `None` for informational rows.
#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub suite: &'static str,
    pub name: String,
    pub value: f64,
    pub reference: f64,
    pub error: f64,
    pub tolerance: f64,
    pub pass: Option<bool>,
}

impl Check {
    fn new(suite: &'static str, name: String, value: f64, reference: f64, error: f64, tolerance: f64) -> Self {
        Check { suite, name, value, reference, error, tolerance, pass: Some(error <= tolerance) }
    }

    pub fn status(&self) -> &'static str {
        match self.pass {
            Some(true) => "pass",
            Some(false) => "FAIL",
            None => "info",
        }
    }
}

pub fn run(suite: Suite) -> Result<Vec<Check>> {
    match suite {
        Suite::Angular => angular_suite(),
        Suite::Radial => radial_suite(),
        Suite::Series => series_suite(),
        Suite::Hyper => hyper_suite(),
        Suite::Wavefunction => wavefunction_suite(),
        Suite::Audit => audit_suite(),
        Suite::All => {
            let mut all = Vec::new();
            for s in Suite::EACH {
                all.extend(run(s)?);
            }
            Ok(all)
        }
    }
}

fn states_upto(m_max: u32, delta: f64) -> Vec<QuantumState> {
    let mut out = Vec::new();
    for m in 0..=m_max {
        for b in [Branch::Ce, Branch::Se] {
            if let Ok(s) = QuantumState::new(0, m, b, delta) {
                out.push(s);
            }
        }
    }
    out
}

/// Analytic E_θ against Fourier collocation for δ ∈ {0, 1/4, 1/2},
/// p ∈ {0, 0.1, 0.21}, m ≤ 3.
pub fn angular_suite() -> Result<Vec<Check>> {
    let mut checks = Vec::new();
    for delta in [0.0, 0.25, 0.5] {
        for p in [0.0, 0.1, 0.21] {
            let coarse = oracle::angular_fd_eigs(delta, p, ANGULAR_GRIDS[0])?;
            let fine = oracle::angular_fd_eigs(delta, p, ANGULAR_GRIDS[1])?;
            for s in states_upto(3, delta) {
                let (c, _) = spectrum::characteristic(&s, p)?;
                let analytic = delta * delta - 0.25 * c;
                let (near, err) = fine.nearest(analytic).expect("oracle spectrum is non-empty");
                let (near_coarse, _) = coarse.nearest(analytic).expect("oracle spectrum is non-empty");
                // spectral convergence: the grid-to-grid change bounds the
                // discretisation error of the finer grid
                let drift = (near - near_coarse).abs();
                let name = format!("E_theta delta={delta} p={p} m={} {}", s.m, s.parity);
                checks.push(Check::new("angular", name, analytic, near, err.max(drift), ANGULAR_TOL));
            }
        }
    }
    Ok(checks)
}

/// Analytic ε against the radial grid solver for GaAs, D ∈ {0, 5, 10},
/// δ ∈ {0, 1/4}, n_r ≤ 2, m ≤ 2.
pub fn radial_suite() -> Result<Vec<Check>> {
    let gaas = material("GaAs")?;
    let mut checks = Vec::new();
    for (d, delta) in [0.0, 5.0, 10.0].into_iter().flat_map(|d| [(d, 0.0), (d, 0.25)]) {
        let params = from_material(&gaas, d, delta)?;
        for s in states_upto(2, delta) {
            let ground = spectrum::energy(&s, &params)?;
            let fd = oracle::radial_fd_eigs(ground.e_theta, &params, 3)?;
            for n_r in 0..3u32 {
                let state = QuantumState { n_r, ..s };
                let analytic = spectrum::energy(&state, &params)?.epsilon;
                let oracle_eps = fd.eigenvalues[n_r as usize];
                let rel = ((analytic - oracle_eps) / analytic).abs();
                let name = format!("epsilon GaAs D={d} delta={delta} nr={n_r} m={} {}", s.m, s.parity);
                checks.push(Check::new("radial", name, analytic, oracle_eps, rel, RADIAL_REL_TOL));
            }
        }
    }
    Ok(checks)
}

/// Tolerance for the small-p series: ten times the estimated remainder,
/// floored at a few ulps of the value.
pub fn series_tolerance(m: u32, p: f64, value: f64) -> Result<f64> {
    Ok((10.0 * mathieu::series_remainder_estimate(m, p)?).max(64.0 * f64::EPSILON * value.abs()))
}

pub fn series_suite() -> Result<Vec<Check>> {
    let mut checks = Vec::new();
    for m in [4, 5, 6] {
        for p in [0.1, 0.5, 1.0] {
            let series = mathieu::char_value_series(m, p)?;
            for b in [Branch::Ce, Branch::Se] {
                let exact = mathieu::char_value(m, b, p)?.value;
                let tol = series_tolerance(m, p, exact)?;
                let name = format!("series m={m} p={p} {b}");
                checks.push(Check::new("series", name, series, exact, (series - exact).abs(), tol));
            }
        }
    }
    Ok(checks)
}

/// Laguerre / Kummer identity and the Γ recurrence.
pub fn hyper_suite() -> Result<Vec<Check>> {
    let mut checks = Vec::new();
    for n in 0..7usize {
        for k in [0.5, 1.3, 2.7] {
            let series = PolySeries::kummer(n, k + 1.0)?;
            let binom = hyper::gamma(n as f64 + k + 1.0) / (hyper::gamma(n as f64 + 1.0) * hyper::gamma(k + 1.0));
            for x in [0.1, 1.0, 5.0] {
                let lag = hyper::laguerre(n, k, x);
                let via = binom * series.eval(x);
                let scale = binom * series.abs_eval(x);
                let name = format!("laguerre n={n} k={k} x={x}");
                checks.push(Check::new("hyper", name, via, lag, (via - lag).abs() / scale, 1e-12));
            }
        }
    }
    for x in [0.3, 2.5, 7.7, -1.5, -3.2] {
        let lhs = hyper::gamma(x + 1.0);
        let rhs = x * hyper::gamma(x);
        checks.push(Check::new("hyper", format!("gamma recurrence x={x}"), lhs, rhs, ((lhs - rhs) / rhs).abs(), 1e-13));
    }
    Ok(checks)
}

pub fn wavefunction_suite() -> Result<Vec<Check>> {
    let gaas = material("GaAs")?;
    let mut checks = Vec::new();
    for (d, delta) in [(0.0, 0.0), (10.0, 0.0), (5.0, 0.3)] {
        let params = from_material(&gaas, d, delta)?;
        for m in 0..3u32 {
            let parity = if m == 0 { Branch::Ce } else { Branch::Se };
            let specs: Vec<WaveSpec> = (0..5u32)
                .map(|n| WaveSpec::new(&QuantumState::new(n, m, parity, delta)?, &params))
                .collect::<Result<_>>()?;
            for s in &specs {
                let tag = format!("D={d} delta={delta} nr={} m={m} {parity}", s.state.n_r);
                let norm = wavefun::norm_integral(s)?;
                checks.push(Check::new("wavefunction", format!("norm {tag}"), norm, 1.0, (norm - 1.0).abs(), NORM_TOL));
                let nodes = wavefun::radial_nodes(s) as f64;
                let want = s.state.n_r as f64;
                checks.push(Check::new("wavefunction", format!("nodes {tag}"), nodes, want, (nodes - want).abs(), 0.0));
            }
            for i in 0..specs.len() {
                for j in i + 1..specs.len() {
                    let ov = wavefun::overlap(&specs[i], &specs[j])?.norm();
                    let name = format!("overlap D={d} delta={delta} m={m} {parity} nr={},{}", i, j);
                    checks.push(Check::new("wavefunction", name, ov, 0.0, ov, ORTHO_TOL));
                }
            }
        }
    }
    Ok(checks)
}

/// Informational rows comparing the ₃F₂ normalisation with quadrature.
pub fn audit_suite() -> Result<Vec<Check>> {
    let rows = audit::normalization_audit(&audit::default_alphas()?, audit::AUDIT_MAX_NR)?;
    Ok(rows
        .into_iter()
        .map(|r| Check {
            suite: "audit",
            name: format!("3F2 normalisation nr={} alpha={}", r.n_r, crate::output::fmt_digits(r.alpha, 6)),
            value: *r.three_f_two.as_ref().unwrap_or(&f64::NAN),
            reference: r.quadrature,
            error: r.relative_error().unwrap_or(f64::NAN),
            tolerance: audit::AUDIT_TOLERANCE,
            pass: None,
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_names_round_trip() {
        for s in Suite::EACH.iter().chain(&[Suite::All]) {
            assert_eq!(s.name().parse::<Suite>().unwrap(), *s);
        }
        assert!("bogus".parse::<Suite>().is_err());
    }

    #[test]
    fn series_suite_passes() {
        let checks = series_suite().unwrap();
        assert_eq!(checks.len(), 18);
        assert!(checks.iter().all(|c| c.pass == Some(true)), "{checks:#?}");
    }

    #[test]
    fn hyper_suite_passes() {
        assert!(hyper_suite().unwrap().iter().all(|c| c.pass == Some(true)));
    }

    #[test]
    fn audit_rows_are_informational() {
        let rows = audit_suite().unwrap();
        assert_eq!(rows.len(), 12);
        assert!(rows.iter().all(|c| c.pass.is_none()));
    }
}
