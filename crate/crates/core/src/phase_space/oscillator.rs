//! Harmonic-oscillator eigenfunctions ψ_n(x) = ⟨x|n⟩.

use std::f64::consts::{LN_10, PI};

/// ψ_0(x), …, ψ_{n−1}(x) by upward recurrence. The recurrence runs on an
/// unnormalized scale that is folded back into the Gaussian factor, so large
/// n and |x| neither overflow nor lose the small values.
pub fn eigenfunctions(n: usize, x: f64) -> Vec<f64> {
    let mut out = vec![0.0; n];
    if n == 0 {
        return out;
    }
    let base = -0.5 * x * x - 0.25 * PI.ln();
    let mut log_scale = 0.0;
    let mut prev = 0.0;
    let mut cur = 1.0;
    out[0] = base.exp();
    for k in 0..n - 1 {
        let kf = k as f64;
        let next = (2.0 / (kf + 1.0)).sqrt() * x * cur - (kf / (kf + 1.0)).sqrt() * prev;
        prev = cur;
        cur = next;
        if cur.abs() > 1e150 {
            cur *= 1e-150;
            prev *= 1e-150;
            log_scale += 150.0 * LN_10;
        }
        out[k + 1] = cur * (base + log_scale).exp();
    }
    out
}

/// Row-major table `[j * n + m] = ψ_m(xs[j])`.
pub fn table(n: usize, xs: &[f64]) -> Vec<f64> {
    let mut t = Vec::with_capacity(n * xs.len());
    for &x in xs {
        t.extend(eigenfunctions(n, x));
    }
    t
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quadrature::{linspace, simpson};

    #[test]
    fn low_orders() {
        let x: f64 = 0.7;
        let v = eigenfunctions(3, x);
        let g = (-x * x / 2.0).exp() / PI.powf(0.25);
        assert!((v[0] - g).abs() < 1e-15);
        assert!((v[1] - g * 2f64.sqrt() * x).abs() < 1e-15);
        assert!((v[2] - g * (2.0 * x * x - 1.0) / 2f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn orthonormal() {
        let xs = linspace(-30.0, 30.0, 4001);
        let h = xs[1] - xs[0];
        let n = 200;
        let t = table(n, &xs);
        for (a, b) in [(0, 0), (5, 5), (199, 199), (3, 5), (150, 151), (120, 198)] {
            let f: Vec<f64> = (0..xs.len()).map(|j| t[j * n + a] * t[j * n + b]).collect();
            let want = if a == b { 1.0 } else { 0.0 };
            assert!((simpson(&f, h).unwrap() - want).abs() < 1e-10, "({a},{b})");
        }
    }

    #[test]
    fn finite_far_out() {
        let v = eigenfunctions(400, 45.0);
        assert!(v.iter().all(|x| x.is_finite()));
        assert!(v[399].abs() > 0.0);
    }
}
