//! Units, the material table and assembly of a physical problem.
//!
//! Everything inside the crate runs in Hartree atomic units
//! (ħ = e = mₑ = 4πε₀ = 1). Electron-volt values only appear at the
//! boundary, through [`MaterialSpec::hbar_omega0`] and the CLI.

use crate::error::{Error, Result};

/// One Hartree in electron-volts (CODATA 2018).
pub const HARTREE_EV: f64 = 27.211_386_245_988;

pub fn ev_to_hartree(ev: f64) -> f64 {
    ev / HARTREE_EV
}

pub fn hartree_to_ev(ha: f64) -> f64 {
    ha * HARTREE_EV
}

/// Coefficients of V(r, θ) = A r² + B/r² + C + D_θ cos θ / r² together with
/// the effective mass and the Aharonov-Bohm flux ratio δ = φ_AB/φ₀.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SystemParams {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub d_theta: f64,
    pub mu: f64,
    pub delta: f64,
}

impl SystemParams {
    pub fn new(a: f64, b: f64, c: f64, d_theta: f64, mu: f64, delta: f64) -> Result<Self> {
        let p = SystemParams { a, b, c, d_theta, mu, delta };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        let all = [self.a, self.b, self.c, self.d_theta, self.mu, self.delta];
        if all.iter().any(|v| !v.is_finite()) {
            return Err(Error::Parameter("all potential coefficients must be finite".into()));
        }
        if self.a <= 0.0 {
            return Err(Error::Parameter(format!("confinement A must be positive, got {}", self.a)));
        }
        if self.b < 0.0 {
            return Err(Error::Parameter(format!("B must be non-negative, got {}", self.b)));
        }
        if self.mu <= 0.0 {
            return Err(Error::Parameter(format!("effective mass must be positive, got {}", self.mu)));
        }
        Ok(())
    }

    /// Oscillator length a with a² = ħ/√(2μA).
    pub fn oscillator_length(&self) -> f64 {
        (1.0 / (2.0 * self.mu * self.a).sqrt()).sqrt()
    }

    /// Level spacing quantum √(2ħ²A/μ); the radial ladder step is twice this.
    pub fn energy_quantum(&self) -> f64 {
        (2.0 * self.a / self.mu).sqrt()
    }

    /// Mathieu parameter p = 4μD_θ/ħ².
    pub fn mathieu_q(&self) -> f64 {
        4.0 * self.mu * self.d_theta
    }

    /// Dimensionless ring strength 2μB/ħ² (λ² for a quantum ring).
    pub fn ring_strength(&self) -> f64 {
        2.0 * self.mu * self.b
    }

    /// True when C = −2√(AB), the Tan-Inkson ring confinement.
    pub fn is_tan_inkson(&self) -> bool {
        let target = -2.0 * (self.a * self.b).sqrt();
        (self.c - target).abs() <= 1e-12 * target.abs().max(1.0)
    }

    pub fn with_delta(mut self, delta: f64) -> Self {
        self.delta = delta;
        self
    }

    pub fn with_dipole(mut self, d_theta: f64) -> Self {
        self.d_theta = d_theta;
        self
    }
}

/// A named semiconductor parameter set.
#[derive(Debug, Clone, PartialEq)]
pub struct MaterialSpec {
    pub name: String,
    /// Effective mass in units of mₑ.
    pub m_star: f64,
    /// Static dielectric constant.
    pub eps_r: f64,
    /// Ring strength λ.
    pub lambda: f64,
    /// Confinement quantum ħω₀ in eV.
    pub hbar_omega0: f64,
}

impl MaterialSpec {
    pub fn new(name: impl Into<String>, m_star: f64, eps_r: f64, lambda: f64, hbar_omega0: f64) -> Result<Self> {
        let m = MaterialSpec { name: name.into(), m_star, eps_r, lambda, hbar_omega0 };
        m.validate()?;
        Ok(m)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.m_star > 0.0 && self.m_star.is_finite()) {
            return Err(Error::Parameter(format!("{}: m_star must be positive", self.name)));
        }
        if !(self.eps_r > 0.0 && self.eps_r.is_finite()) {
            return Err(Error::Parameter(format!("{}: eps_r must be positive", self.name)));
        }
        if !(self.lambda >= 0.0 && self.lambda.is_finite()) {
            return Err(Error::Parameter(format!("{}: lambda must be non-negative", self.name)));
        }
        if !(self.hbar_omega0 > 0.0 && self.hbar_omega0.is_finite()) {
            return Err(Error::Parameter(format!("{}: hbar_omega0 must be positive", self.name)));
        }
        Ok(())
    }

    pub fn with_hbar_omega0(mut self, ev: f64) -> Self {
        self.hbar_omega0 = ev;
        self
    }

    /// ω₀ in Hartree (ħ = 1).
    pub fn omega0(&self) -> f64 {
        ev_to_hartree(self.hbar_omega0)
    }

    pub fn mass_over_permittivity(&self) -> f64 {
        self.m_star / self.eps_r
    }
}

/// Pseudoharmonic parameterisation D_e (r/r_e − r_e/r)².
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhoParams {
    pub d_e: f64,
    pub r_e: f64,
}

impl PhoParams {
    pub fn new(d_e: f64, r_e: f64) -> Result<Self> {
        if !(d_e > 0.0 && d_e.is_finite() && r_e > 0.0 && r_e.is_finite()) {
            return Err(Error::Parameter(format!("PHO needs D_e > 0 and r_e > 0, got ({d_e}, {r_e})")));
        }
        Ok(PhoParams { d_e, r_e })
    }
}

/// Quantum-ring problem in atomic units: A = m*ω₀²/2, B = λ²/(2m*), C = 0,
/// D_θ = D/ε_r, μ = m*.
pub fn from_material(mat: &MaterialSpec, dipole: f64, delta: f64) -> Result<SystemParams> {
    mat.validate()?;
    if !(dipole >= 0.0 && dipole.is_finite()) {
        return Err(Error::Parameter(format!("dipole moment must be non-negative, got {dipole}")));
    }
    let w0 = mat.omega0();
    SystemParams::new(
        0.5 * mat.m_star * w0 * w0,
        mat.lambda * mat.lambda / (2.0 * mat.m_star),
        0.0,
        dipole / mat.eps_r,
        mat.m_star,
        delta,
    )
}

/// A = D_e/r_e², B = D_e r_e², C = −2D_e, no dipole.
pub fn from_pho(p: &PhoParams, mu: f64, delta: f64) -> Result<SystemParams> {
    SystemParams::new(p.d_e / (p.r_e * p.r_e), p.d_e * p.r_e * p.r_e, -2.0 * p.d_e, 0.0, mu, delta)
}

/// Inverse of [`from_material`] for the material-defining quantities:
/// returns (m*, λ, ħω₀ in eV, D) given ε_r.
pub fn to_material_units(p: &SystemParams, eps_r: f64) -> (f64, f64, f64, f64) {
    let m_star = p.mu;
    let w0 = (2.0 * p.a / m_star).sqrt();
    let lambda = (2.0 * m_star * p.b).sqrt();
    (m_star, lambda, hartree_to_ev(w0), p.d_theta * eps_r)
}

/// GaAs, Ga₀.₇Al₀.₃As and CdSe ring parameters, ħω₀ = 1 eV.
pub fn builtin_materials() -> Vec<MaterialSpec> {
    let gaalas_mass = 0.067 + 0.085 * 0.3;
    vec![
        MaterialSpec { name: "GaAs".into(), m_star: 0.067, eps_r: 12.65, lambda: 2.0, hbar_omega0: 1.0 },
        MaterialSpec { name: "GaAlAs_x0.3".into(), m_star: gaalas_mass, eps_r: 12.65, lambda: 2.0, hbar_omega0: 1.0 },
        MaterialSpec { name: "CdSe".into(), m_star: 0.13, eps_r: 9.3, lambda: 2.0, hbar_omega0: 1.0 },
    ]
}

/// Case-insensitive lookup in [`builtin_materials`].
pub fn material(name: &str) -> Result<MaterialSpec> {
    builtin_materials()
        .into_iter()
        .find(|m| m.name.eq_ignore_ascii_case(name))
        .ok_or_else(|| Error::Parameter(format!("unknown material '{name}'")))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gaas() -> MaterialSpec {
        material("GaAs").unwrap()
    }

    #[test]
    fn gaas_ring_strength() {
        let p = from_material(&gaas(), 0.0, 0.0).unwrap();
        assert!((p.b - 4.0 / (2.0 * 0.067)).abs() < 1e-12);
        assert!((p.b - 29.8507).abs() < 1e-4);
        assert_eq!(p.d_theta, 0.0);
        assert!((p.ring_strength() - 4.0).abs() < 1e-12);
    }

    #[test]
    fn dipole_divided_by_permittivity() {
        let p = from_material(&gaas(), 10.0, 0.0).unwrap();
        assert!((p.d_theta - 0.790_513_833).abs() < 1e-8);
        for m in builtin_materials() {
            assert_eq!(from_material(&m, 0.0, 0.3).unwrap().d_theta, 0.0);
        }
    }

    #[test]
    fn pho_mapping() {
        let p = from_pho(&PhoParams::new(1.0, 1.0).unwrap(), 1.0, 0.0).unwrap();
        assert_eq!((p.a, p.b, p.c), (1.0, 1.0, -2.0));
        let p = from_pho(&PhoParams::new(4.0, 2.0).unwrap(), 1.0, 0.0).unwrap();
        assert_eq!((p.a, p.b, p.c), (1.0, 16.0, -8.0));
        // D_e (r/r_e − r_e/r)² expands to exactly the Tan-Inkson offset.
        assert!(p.is_tan_inkson());
        assert!(!SystemParams::new(1.0, 16.0, 0.0, 0.0, 1.0, 0.0).unwrap().is_tan_inkson());
    }

    #[test]
    fn material_table() {
        assert_eq!(gaas().m_star, 0.067);
        let ga = material("GaAlAs_x0.3").unwrap();
        assert!((ga.m_star - 0.0925).abs() < 1e-15);
        let cdse = material("cdse").unwrap();
        assert!((cdse.mass_over_permittivity() - 0.013_978).abs() < 1e-6);
        assert!(material("Unobtainium").is_err());
    }

    #[test]
    fn invalid_inputs_rejected() {
        assert!(MaterialSpec::new("x", 0.0, 1.0, 2.0, 1.0).is_err());
        assert!(MaterialSpec::new("x", 0.1, -1.0, 2.0, 1.0).is_err());
        assert!(from_material(&gaas(), -1.0, 0.0).is_err());
        assert!(SystemParams::new(0.0, 1.0, 0.0, 0.0, 1.0, 0.0).is_err());
        assert!(SystemParams::new(1.0, -1.0, 0.0, 0.0, 1.0, 0.0).is_err());
        assert!(SystemParams::new(1.0, 1.0, f64::NAN, 0.0, 1.0, 0.0).is_err());
        assert!(PhoParams::new(0.0, 1.0).is_err());
    }

    #[test]
    fn omega_homogeneity() {
        let m1 = gaas();
        let m2 = gaas().with_hbar_omega0(2.0);
        let p1 = from_material(&m1, 7.0, 0.1).unwrap();
        let p2 = from_material(&m2, 7.0, 0.1).unwrap();
        assert!((p2.a / p1.a - 4.0).abs() < 1e-14);
        assert_eq!(p1.b, p2.b);
        assert_eq!(p1.d_theta, p2.d_theta);
    }

    #[test]
    fn unit_round_trip() {
        for m in builtin_materials() {
            for &ev in &[0.1, 0.37, 1.0] {
                let mat = m.clone().with_hbar_omega0(ev);
                let p = from_material(&mat, 3.5, 0.0).unwrap();
                let (ms, lam, hw, d) = to_material_units(&p, mat.eps_r);
                for (got, want) in [(ms, mat.m_star), (lam, mat.lambda), (hw, ev), (d, 3.5)] {
                    assert!(((got - want) / want).abs() < 1e-12, "{got} vs {want}");
                }
            }
        }
    }
}
