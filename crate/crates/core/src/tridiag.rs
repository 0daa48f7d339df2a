//! Real symmetric tridiagonal eigenproblems.
//!
//! Eigenvalues come from Sturm-sequence bisection, which returns the k-th
//! smallest eigenvalue directly and never confuses ordering. Eigenvectors
//! come from inverse iteration with a pivoted tridiagonal LU.

/// Symmetric tridiagonal matrix stored as its diagonal and sub-diagonal.
#[derive(Debug, Clone, PartialEq)]
pub struct SymTridiagonal {
    diag: Vec<f64>,
    off: Vec<f64>,
}

impl SymTridiagonal {
    /// `off.len()` must be `diag.len() - 1` (or zero for an empty matrix).
    pub fn new(diag: Vec<f64>, off: Vec<f64>) -> Self {
        assert!(
            off.len() + 1 == diag.len() || (diag.is_empty() && off.is_empty()),
            "sub-diagonal length must be n - 1"
        );
        SymTridiagonal { diag, off }
    }

    pub fn len(&self) -> usize {
        self.diag.len()
    }

    pub fn is_empty(&self) -> bool {
        self.diag.is_empty()
    }

    pub fn diag(&self) -> &[f64] {
        &self.diag
    }

    pub fn off(&self) -> &[f64] {
        &self.off
    }

    /// Gershgorin enclosure of the spectrum.
    pub fn gershgorin(&self) -> (f64, f64) {
        let n = self.len();
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        for i in 0..n {
            let mut r = 0.0;
            if i > 0 {
                r += self.off[i - 1].abs();
            }
            if i + 1 < n {
                r += self.off[i].abs();
            }
            lo = lo.min(self.diag[i] - r);
            hi = hi.max(self.diag[i] + r);
        }
        (lo, hi)
    }

    fn norm_inf(&self) -> f64 {
        let (lo, hi) = self.gershgorin();
        lo.abs().max(hi.abs())
    }

    /// Number of eigenvalues strictly below `x` (Sturm count).
    pub fn count_below(&self, x: f64) -> usize {
        let tiny = f64::MIN_POSITIVE.sqrt() * self.norm_inf().max(1.0);
        let mut count = 0;
        let mut pivot = 1.0;
        for i in 0..self.len() {
            let coupling = if i == 0 { 0.0 } else { self.off[i - 1] * self.off[i - 1] / pivot };
            pivot = self.diag[i] - x - coupling;
            if pivot == 0.0 {
                pivot = -tiny;
            }
            if pivot < 0.0 {
                count += 1;
            }
        }
        count
    }

    /// The `k`-th smallest eigenvalue (0-based) by bisection to full precision.
    pub fn eigenvalue(&self, k: usize) -> f64 {
        assert!(k < self.len(), "eigenvalue index {k} out of range");
        let (mut lo, mut hi) = self.gershgorin();
        let scale = self.norm_inf().max(f64::MIN_POSITIVE);
        lo -= 2.0 * f64::EPSILON * scale;
        hi += 2.0 * f64::EPSILON * scale;
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if mid <= lo || mid >= hi {
                break;
            }
            if self.count_below(mid) > k {
                hi = mid;
            } else {
                lo = mid;
            }
            if hi - lo <= 2.0 * f64::EPSILON * (lo.abs().max(hi.abs())) {
                break;
            }
        }
        0.5 * (lo + hi)
    }

    /// The `count` smallest eigenvalues in ascending order.
    pub fn lowest(&self, count: usize) -> Vec<f64> {
        (0..count.min(self.len())).map(|k| self.eigenvalue(k)).collect()
    }

    pub fn matvec(&self, v: &[f64]) -> Vec<f64> {
        let n = self.len();
        (0..n)
            .map(|i| {
                let mut s = self.diag[i] * v[i];
                if i > 0 {
                    s += self.off[i - 1] * v[i - 1];
                }
                if i + 1 < n {
                    s += self.off[i] * v[i + 1];
                }
                s
            })
            .collect()
    }

    /// ‖T v − λ v‖∞.
    pub fn residual(&self, lambda: f64, v: &[f64]) -> f64 {
        self.matvec(v)
            .iter()
            .zip(v)
            .map(|(tv, vi)| (tv - lambda * vi).abs())
            .fold(0.0, f64::max)
    }

    /// Unit eigenvector for a converged eigenvalue, sign fixed so the
    /// largest-magnitude component is positive.
    pub fn eigenvector(&self, lambda: f64) -> Vec<f64> {
        let n = self.len();
        if n == 1 {
            return vec![1.0];
        }
        let scale = self.norm_inf().max(1.0);
        let shift = lambda + 64.0 * f64::EPSILON * scale;
        let lu = TridiagLu::factor(self, shift);
        // Starting vector with no special symmetry.
        let mut v: Vec<f64> = (0..n).map(|i| 1.0 + 0.1 * ((i as f64) * 0.731).sin()).collect();
        normalize(&mut v);
        for _ in 0..4 {
            v = lu.solve(&v);
            normalize(&mut v);
        }
        let (imax, _) = v
            .iter()
            .enumerate()
            .fold((0, 0.0), |acc, (i, x)| if x.abs() > acc.1 { (i, x.abs()) } else { acc });
        if v[imax] < 0.0 {
            v.iter_mut().for_each(|x| *x = -*x);
        }
        v
    }
}

fn normalize(v: &mut [f64]) {
    let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
    if norm > 0.0 {
        v.iter_mut().for_each(|x| *x /= norm);
    }
}

/// LU factorisation with partial pivoting of T − σI (LAPACK `gttrf` layout).
struct TridiagLu {
    dl: Vec<f64>,
    d: Vec<f64>,
    du: Vec<f64>,
    du2: Vec<f64>,
    swapped: Vec<bool>,
}

impl TridiagLu {
    fn factor(t: &SymTridiagonal, sigma: f64) -> Self {
        let n = t.len();
        let mut dl = t.off.clone();
        let mut d: Vec<f64> = t.diag.iter().map(|x| x - sigma).collect();
        let mut du = t.off.clone();
        let mut du2 = vec![0.0; n.saturating_sub(2)];
        let mut swapped = vec![false; n.saturating_sub(1)];
        let tiny = f64::EPSILON * t.norm_inf().max(1.0);
        for i in 0..n - 1 {
            if d[i].abs() >= dl[i].abs() {
                if d[i] == 0.0 {
                    d[i] = tiny;
                }
                let fact = dl[i] / d[i];
                dl[i] = fact;
                d[i + 1] -= fact * du[i];
            } else {
                let fact = d[i] / dl[i];
                d[i] = dl[i];
                dl[i] = fact;
                let temp = du[i];
                du[i] = d[i + 1];
                d[i + 1] = temp - fact * d[i + 1];
                if i + 2 < n {
                    du2[i] = du[i + 1];
                    du[i + 1] *= -fact;
                }
                swapped[i] = true;
            }
        }
        if d[n - 1] == 0.0 {
            d[n - 1] = tiny;
        }
        TridiagLu { dl, d, du, du2, swapped }
    }

    fn solve(&self, b: &[f64]) -> Vec<f64> {
        let n = self.d.len();
        let mut x = b.to_vec();
        for i in 0..n - 1 {
            if self.swapped[i] {
                let temp = x[i];
                x[i] = x[i + 1];
                x[i + 1] = temp - self.dl[i] * x[i];
            } else {
                x[i + 1] -= self.dl[i] * x[i];
            }
        }
        x[n - 1] /= self.d[n - 1];
        if n > 1 {
            x[n - 2] = (x[n - 2] - self.du[n - 2] * x[n - 1]) / self.d[n - 2];
        }
        for i in (0..n.saturating_sub(2)).rev() {
            x[i] = (x[i] - self.du[i] * x[i + 1] - self.du2[i] * x[i + 2]) / self.d[i];
        }
        x
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn diagonal_matrix() {
        let t = SymTridiagonal::new(vec![3.0, -1.0, 2.0], vec![0.0, 0.0]);
        for (got, want) in t.lowest(3).iter().zip([-1.0, 2.0, 3.0]) {
            assert!((got - want).abs() <= 4.0 * f64::EPSILON * 3.0);
        }
    }

    #[test]
    fn discrete_laplacian_spectrum() {
        // eigenvalues of tridiag(-1, 2, -1) are 2 - 2cos(kπ/(n+1))
        let n = 50;
        let t = SymTridiagonal::new(vec![2.0; n], vec![-1.0; n - 1]);
        for k in 0..n {
            let exact = 2.0 - 2.0 * (((k + 1) as f64) * std::f64::consts::PI / (n as f64 + 1.0)).cos();
            let got = t.eigenvalue(k);
            assert!((got - exact).abs() < 1e-13, "k={k}: {got} vs {exact}");
            let v = t.eigenvector(got);
            assert!(t.residual(got, &v) < 1e-12);
        }
    }

    #[test]
    fn eigenvector_sign_and_norm() {
        let t = SymTridiagonal::new(vec![0.0, 4.0, 16.0, 36.0], vec![0.5, 0.3, 0.3]);
        let lam = t.eigenvalue(1);
        let v = t.eigenvector(lam);
        let norm: f64 = v.iter().map(|x| x * x).sum();
        assert!((norm - 1.0).abs() < 1e-14);
        let big = v.iter().cloned().fold(0.0_f64, |a, x| if x.abs() > a.abs() { x } else { a });
        assert!(big > 0.0);
    }

    #[test]
    fn one_by_one() {
        let t = SymTridiagonal::new(vec![7.5], vec![]);
        assert!((t.eigenvalue(0) - 7.5).abs() <= 4.0 * f64::EPSILON * 7.5);
        assert_eq!(t.eigenvector(7.5), vec![1.0]);
    }
}
