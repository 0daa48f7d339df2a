//! Γ function and the terminating hypergeometric series that appear in the
//! radial solutions: ₁F₁(−n; b; x), generalised Laguerre polynomials and
//! ₃F₂(−n, ·, ·; ·, ·; 1).

use std::f64::consts::PI;

use crate::error::{Error, Result};

// Lanczos approximation, g = 7, n = 9.
const LANCZOS_G: f64 = 7.0;
#[allow(clippy::excessive_precision)]
const LANCZOS: [f64; 9] = [
    0.999_999_999_999_809_93,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_13,
    -176.615_029_162_140_59,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_571_6e-6,
    1.505_632_735_149_311_6e-7,
];

fn lanczos_sum(x: f64) -> f64 {
    // x is the shifted argument (z − 1)
    let mut s = LANCZOS[0];
    for (i, c) in LANCZOS.iter().enumerate().skip(1) {
        s += c / (x + i as f64);
    }
    s
}

/// Γ(x) for real x; reflection formula for x < 1/2. Poles return ±∞/NaN.
pub fn gamma(x: f64) -> f64 {
    if x.is_nan() {
        return f64::NAN;
    }
    if x <= 0.0 && x == x.floor() {
        return f64::NAN;
    }
    if x < 0.5 {
        return PI / ((PI * x).sin() * gamma(1.0 - x));
    }
    if x > 171.7 {
        return f64::INFINITY;
    }
    let z = x - 1.0;
    let t = z + LANCZOS_G + 0.5;
    let s = lanczos_sum(z);
    // split the power to avoid overflow before the exp factor kicks in
    let half = t.powf(0.5 * (z + 0.5));
    (2.0 * PI).sqrt() * half * (half * (-t).exp()) * s
}

/// ln Γ(x) for x > 0.
pub fn ln_gamma(x: f64) -> f64 {
    assert!(x > 0.0, "ln_gamma needs a positive argument, got {x}");
    if x < 0.5 {
        return (PI / (PI * x).sin()).ln() - ln_gamma(1.0 - x);
    }
    let z = x - 1.0;
    let t = z + LANCZOS_G + 0.5;
    0.5 * (2.0 * PI).ln() + (z + 0.5) * t.ln() - t + lanczos_sum(z).ln()
}

/// Rising factorial (a)_k.
pub fn pochhammer(a: f64, k: usize) -> f64 {
    (0..k).fold(1.0, |acc, j| acc * (a + j as f64))
}

fn is_nonpositive_integer(b: f64) -> bool {
    b <= 0.0 && b == b.floor()
}

/// Polynomial ₁F₁(−n; b; x) stored by its power-series coefficients.
#[derive(Debug, Clone, PartialEq)]
pub struct PolySeries {
    pub coefficients: Vec<f64>,
    pub degree: usize,
}

impl PolySeries {
    /// c_k = (−n)_k / ((b)_k k!).
    pub fn kummer(n: usize, b: f64) -> Result<Self> {
        check_kummer_b(n, b)?;
        let mut coefficients = Vec::with_capacity(n + 1);
        let mut c = 1.0;
        coefficients.push(c);
        for k in 0..n {
            c *= (k as f64 - n as f64) / ((b + k as f64) * (k + 1) as f64);
            coefficients.push(c);
        }
        Ok(PolySeries { coefficients, degree: n })
    }

    pub fn eval(&self, x: f64) -> f64 {
        self.coefficients.iter().rev().fold(0.0, |acc, c| acc * x + c)
    }

    /// Σ|c_k| |x|^k, the rounding-error scale of `eval`.
    pub fn abs_eval(&self, x: f64) -> f64 {
        self.coefficients.iter().rev().fold(0.0, |acc, c| acc * x.abs() + c.abs())
    }
}

fn check_kummer_b(n: usize, b: f64) -> Result<()> {
    if !b.is_finite() {
        return Err(Error::Domain(format!("1F1 lower parameter must be finite, got {b}")));
    }
    // (b)_k vanishes for some k ≤ n only if b ∈ {0, −1, …, −(n−1)}
    if is_nonpositive_integer(b) && n > 0 && b > -(n as f64) {
        return Err(Error::Domain(format!("1F1(-{n}; {b}; x) has a zero denominator")));
    }
    Ok(())
}

/// ₁F₁(−n; b; x) = Σ_{k=0}^{n} (−n)_k/(b)_k · x^k/k! by forward term ratios.
pub fn hyp1f1_poly(n: usize, b: f64, x: f64) -> Result<f64> {
    check_kummer_b(n, b)?;
    let mut term = 1.0;
    let mut sum = 1.0;
    for k in 0..n {
        term *= (k as f64 - n as f64) / (b + k as f64) * x / (k + 1) as f64;
        sum += term;
    }
    Ok(sum)
}

/// Generalised Laguerre polynomial L_n^{(k)}(x) by the three-term recurrence.
pub fn laguerre(n: usize, k: f64, x: f64) -> f64 {
    let mut prev = 1.0;
    if n == 0 {
        return prev;
    }
    let mut cur = 1.0 + k - x;
    for j in 1..n {
        let jf = j as f64;
        let next = ((2.0 * jf + 1.0 + k - x) * cur - (jf + k) * prev) / (jf + 1.0);
        prev = cur;
        cur = next;
    }
    cur
}

/// Terminating ₃F₂(−n, a2, a3; b1, b2; 1).
pub fn hyp3f2_unit(n: usize, a2: f64, a3: f64, b1: f64, b2: f64) -> Result<f64> {
    let nf = n as f64;
    let mut term = 1.0;
    let mut sum = 1.0;
    for k in 0..n {
        let kf = k as f64;
        let den = (b1 + kf) * (b2 + kf);
        if den == 0.0 {
            return Err(Error::Pole { term: k + 1 });
        }
        term *= (kf - nf) * (a2 + kf) * (a3 + kf) / (den * (kf + 1.0));
        sum += term;
    }
    Ok(sum)
}

/// Normalisation of ψ = N (r/a)^{2α−1/2} e^{−r²/2a²} ₁F₁(−n; 2α+1/2; r²/a²) Θ
/// with ∫|Θ|²dθ = π:
///
/// N² = 2 Γ(n+k+1) / (π a² n! Γ(k+1)²), k = 2α − 1/2.
pub fn normalization_closed_form(n_r: usize, alpha: f64, a: f64) -> Result<f64> {
    let k = 2.0 * alpha - 0.5;
    if !(k > -1.0 && a > 0.0 && a.is_finite()) {
        return Err(Error::Domain(format!("closed-form normalisation needs 2α − 1/2 > −1 and a > 0 (α = {alpha}, a = {a})")));
    }
    let ln_n2 = (2.0f64).ln() + ln_gamma(n_r as f64 + k + 1.0)
        - PI.ln()
        - 2.0 * a.ln()
        - ln_gamma(n_r as f64 + 1.0)
        - 2.0 * ln_gamma(k + 1.0);
    Ok((0.5 * ln_n2).exp())
}

/// Closed ₃F₂ form of the normalisation constant, evaluated term for term:
///
/// N = (n+2α−1/2)! / ((2α−1/2)! a Γ(n+2α+1/2))
///     · [ 2Γ(2α+1/2)Γ(−1/2) / (Γ(n+2α+1/2)Γ(2α+1)Γ(n−1/2) ₃F₂(−n,2α+1,3/2; 2α+1/2,−n+3/2; 1)) ]^{1/2}
///
/// It does not agree with direct quadrature; see `audit`.
pub fn normalization_constant_3f2(n_r: usize, alpha: f64, a: f64) -> Result<f64> {
    if !(alpha > 0.0 && a > 0.0) {
        return Err(Error::Domain(format!("needs α > 0 and a > 0 (α = {alpha}, a = {a})")));
    }
    let n = n_r as f64;
    let fact_top = gamma(n + 2.0 * alpha + 0.5);
    let fact_bottom = gamma(2.0 * alpha + 0.5);
    let g_n = gamma(n + 2.0 * alpha + 0.5);
    let pre = fact_top / (fact_bottom * a * g_n);
    let g_minus_half = gamma(-0.5);
    let g_n_minus_half = gamma(n - 0.5);
    let g_2a1 = gamma(2.0 * alpha + 1.0);
    let f32 = hyp3f2_unit(n_r, 2.0 * alpha + 1.0, 1.5, 2.0 * alpha + 0.5, -n + 1.5)?;
    let bracket = 2.0 * fact_bottom * g_minus_half / (g_n * g_2a1 * g_n_minus_half * f32);
    let trace = || {
        format!(
            "prefactor={pre:e}, Γ(2α+1/2)={fact_bottom:e}, Γ(-1/2)={g_minus_half:e}, Γ(n+2α+1/2)={g_n:e}, \
             Γ(2α+1)={g_2a1:e}, Γ(n-1/2)={g_n_minus_half:e}, 3F2={f32:e}, bracket={bracket:e}"
        )
    };
    if !bracket.is_finite() || !pre.is_finite() {
        return Err(Error::Evaluation { message: "non-finite intermediate".into(), trace: trace() });
    }
    if bracket < 0.0 {
        return Err(Error::Evaluation { message: "negative square-root argument".into(), trace: trace() });
    }
    Ok(pre * bracket.sqrt())
}

/// Closed ₃F₂ expression for the half-shifted Laguerre overlap
/// ∫₀^∞ x^{k+1/2} e^{−x} L_n^k L_m^k dx. Only correct for n = m = 0 with
/// Γ(k+1) = 1.
pub fn laguerre_overlap_3f2(n: usize, m: usize, k: f64) -> Result<f64> {
    let nf = n as f64;
    let mf = m as f64;
    let lead = gamma(nf + k + 1.0).powi(2) * gamma(mf + k + 1.0) * gamma(k + 1.5) * gamma(mf - 0.5)
        / (gamma(nf + 1.0) * gamma(mf + 1.0) * gamma(k + 1.0) * gamma(-0.5));
    Ok(lead * hyp3f2_unit(n, k + 1.5, 1.5, k + 1.0, -mf + 1.5)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quad::integrate;

    fn rel(a: f64, b: f64) -> f64 {
        ((a - b) / b).abs()
    }

    #[test]
    fn gamma_known_values() {
        assert!(rel(gamma(0.5), PI.sqrt()) < 1e-14);
        assert!(rel(gamma(-0.5), -2.0 * PI.sqrt()) < 1e-14);
        assert!(rel(gamma(5.0), 24.0) < 1e-14);
        assert!(rel(gamma(10.0), 362_880.0) < 1e-14);
        assert!(rel(gamma(1.5), 0.5 * PI.sqrt()) < 1e-14);
        assert!(gamma(0.0).is_nan() && gamma(-3.0).is_nan());
    }

    #[test]
    fn gamma_recurrence_grid() {
        let mut x: f64 = -29.87;
        while x < 30.0 {
            if (x - x.round()).abs() > 1e-2 {
                let lhs = gamma(x + 1.0);
                let rhs = x * gamma(x);
                assert!(rel(lhs, rhs) < 1e-13, "x={x}: {lhs} vs {rhs}");
            }
            x += 0.173;
        }
    }

    #[test]
    fn ln_gamma_matches_gamma() {
        for &x in &[0.1, 0.7, 1.0, 3.3, 17.5, 60.2] {
            assert!((ln_gamma(x) - gamma(x).ln()).abs() < 1e-13 * gamma(x).ln().abs().max(1.0));
        }
    }

    #[test]
    fn kummer_examples() {
        assert_eq!(hyp1f1_poly(0, 3.7, 2.0).unwrap(), 1.0);
        assert_eq!(hyp1f1_poly(1, 2.0, 1.0).unwrap(), 0.5);
        assert!(hyp1f1_poly(3, -1.0, 0.5).is_err());
        assert!(hyp1f1_poly(3, 0.0, 0.5).is_err());
        let p = PolySeries::kummer(4, 2.3).unwrap();
        assert_eq!(p.degree, 4);
        assert!((p.eval(1.7) - hyp1f1_poly(4, 2.3, 1.7).unwrap()).abs() < 1e-14);
    }

    #[test]
    fn kummer_at_zero_is_one() {
        for n in 0..8 {
            for &b in &[0.5, 1.0, 2.75, 9.0] {
                assert_eq!(hyp1f1_poly(n, b, 0.0).unwrap(), 1.0);
            }
        }
    }

    #[test]
    fn laguerre_low_orders() {
        assert_eq!(laguerre(0, 1.3, 5.0), 1.0);
        assert!((laguerre(1, 1.3, 0.4) - (1.0 + 1.3 - 0.4)).abs() < 1e-15);
        // L_2^k(x) = (x² − 2(k+2)x + (k+1)(k+2))/2
        let (k, x) = (0.7, 2.1);
        assert!((laguerre(2, k, x) - (x * x - 2.0 * (k + 2.0) * x + (k + 1.0) * (k + 2.0)) / 2.0).abs() < 1e-14);
    }

    #[test]
    fn laguerre_kummer_identity() {
        // L_n^{(2α−1/2)}(x) = Γ(n+2α+1/2)/(n! Γ(2α+1/2)) · 1F1(−n; 2α+1/2; x)
        for n in 0..=6 {
            for &alpha in &[0.3, 0.75, 1.6, 3.2, 5.0] {
                for &x in &[0.0, 0.5, 1.3, 4.0, 11.0, 20.0] {
                    let k = 2.0 * alpha - 0.5;
                    let lhs = laguerre(n, k, x);
                    let ratio = (ln_gamma(n as f64 + k + 1.0) - ln_gamma(n as f64 + 1.0) - ln_gamma(k + 1.0)).exp();
                    let series = PolySeries::kummer(n, k + 1.0).unwrap();
                    let rhs = ratio * hyp1f1_poly(n, k + 1.0, x).unwrap();
                    // relative to Σ|terms|, the conditioning scale of the sum
                    let scale: f64 = series.coefficients.iter().enumerate().map(|(j, c)| (ratio * c * x.powi(j as i32)).abs()).sum();
                    assert!((lhs - rhs).abs() <= 1e-12 * scale, "n={n} α={alpha} x={x}: {lhs} vs {rhs}");
                }
            }
        }
    }

    #[test]
    fn three_f_two_terminating() {
        assert_eq!(hyp3f2_unit(0, 1.0, 2.0, 3.0, 4.0).unwrap(), 1.0);
        let (a2, a3, b1, b2) = (1.5, 2.5, 3.25, 0.75);
        assert!((hyp3f2_unit(1, a2, a3, b1, b2).unwrap() - (1.0 - a2 * a3 / (b1 * b2))).abs() < 1e-15);
        assert!(matches!(hyp3f2_unit(3, 1.0, 1.0, -1.0, 2.0), Err(Error::Pole { term: 2 })));
    }

    #[test]
    fn kummer_orthogonality() {
        // ∫ ρ^{2α−1/2} e^{−ρ} 1F1(−n) 1F1(−n') dρ = 0 for n ≠ n'
        for &alpha in &[0.6, 1.4, 2.55] {
            let b = 2.0 * alpha + 0.5;
            for n in 0..4 {
                for np in (n + 1)..5 {
                    let f = |r: f64| {
                        r.powf(2.0 * alpha - 0.5)
                            * (-r).exp()
                            * hyp1f1_poly(n, b, r).unwrap()
                            * hyp1f1_poly(np, b, r).unwrap()
                    };
                    let v = integrate(f, 0.0, 80.0, 1e-13, 1e-12).unwrap().value;
                    assert!(v.abs() < 1e-9, "α={alpha} n={n} n'={np}: {v}");
                }
            }
        }
    }

    #[test]
    fn closed_form_ground_state() {
        // n = 0: N² π a²/2 · Γ(k+1) = 1
        for &alpha in &[0.25, 0.9, 2.3] {
            let a = 1.7;
            let n0 = normalization_closed_form(0, alpha, a).unwrap();
            let k = 2.0 * alpha - 0.5;
            assert!(rel(n0 * n0 * PI * a * a / 2.0 * gamma(k + 1.0), 1.0) < 1e-13);
            let n1 = normalization_closed_form(2, alpha, 1.0).unwrap();
            assert!(rel(normalization_closed_form(2, alpha, 3.0).unwrap(), n1 / 3.0) < 1e-14);
        }
    }

    #[test]
    fn three_f_two_constant_scales_with_inverse_length() {
        for n in 0..3 {
            let n1 = normalization_constant_3f2(n, 1.3, 1.0).unwrap();
            let n2 = normalization_constant_3f2(n, 1.3, 2.5).unwrap();
            assert!(rel(n2, n1 / 2.5) < 1e-14);
        }
    }

    #[test]
    fn three_f_two_overlap_fails_beyond_ground_state() {
        let direct = |n: usize, m: usize, k: f64| {
            integrate(|x: f64| x.powf(k + 0.5) * (-x).exp() * laguerre(n, k, x) * laguerre(m, k, x), 0.0, 90.0, 1e-13, 1e-13)
                .unwrap()
                .value
        };
        assert!(rel(laguerre_overlap_3f2(0, 0, 1.0).unwrap(), direct(0, 0, 1.0)) < 1e-10);
        // ground state is off by Γ(k+1)² otherwise
        let ratio = laguerre_overlap_3f2(0, 0, 1.5).unwrap() / direct(0, 0, 1.5);
        assert!(rel(ratio, gamma(2.5).powi(2)) < 1e-10);
        assert!(rel(laguerre_overlap_3f2(1, 2, 1.5).unwrap(), direct(1, 2, 1.5)) > 1.0);
        assert!((direct(1, 2, 1.5) - (-2.875)).abs() < 1e-9);
    }
}
