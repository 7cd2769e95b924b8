//! One-dimensional quadrature rules.

use crate::error::{Error, Result};
use crate::fock_core::{eigh, CMatrix, C64};

/// Composite Simpson weights for `n` equally spaced points with step `h`.
/// `n` must be odd and at least 3.
pub fn simpson_weights(n: usize, h: f64) -> Result<Vec<f64>> {
    if n < 3 || n.is_multiple_of(2) {
        return Err(Error::GridTooSmall(format!(
            "Simpson rule needs an odd point count >= 3, got {n}"
        )));
    }
    let mut w = vec![0.0; n];
    for (i, wi) in w.iter_mut().enumerate() {
        *wi = if i == 0 || i == n - 1 {
            h / 3.0
        } else if i % 2 == 1 {
            4.0 * h / 3.0
        } else {
            2.0 * h / 3.0
        };
    }
    Ok(w)
}

/// Simpson integral of equally spaced samples.
pub fn simpson(values: &[f64], h: f64) -> Result<f64> {
    let w = simpson_weights(values.len(), h)?;
    Ok(values.iter().zip(&w).map(|(v, w)| v * w).sum())
}

/// `n` evenly spaced values from `a` to `b` inclusive.
pub fn linspace(a: f64, b: f64, n: usize) -> Vec<f64> {
    if n == 1 {
        return vec![a];
    }
    let h = (b - a) / (n - 1) as f64;
    (0..n).map(|i| a + h * i as f64).collect()
}

/// Nodes and weights of the n-point Gauss-Laguerre rule for ∫₀^∞ e^{−u} f(u) du,
/// from the eigen-decomposition of the Jacobi matrix.
pub fn gauss_laguerre(n: usize) -> Result<(Vec<f64>, Vec<f64>)> {
    if n == 0 {
        return Err(Error::InvalidParameter("Gauss-Laguerre needs at least one node".into()));
    }
    let j = CMatrix::from_fn(n, |r, c| {
        if r == c {
            C64::new((2 * r + 1) as f64, 0.0)
        } else if r + 1 == c {
            C64::new(c as f64, 0.0)
        } else if c + 1 == r {
            C64::new(r as f64, 0.0)
        } else {
            C64::new(0.0, 0.0)
        }
    });
    let spec = eigh(&j)?;
    let mut pairs: Vec<(f64, f64)> = (0..n)
        .map(|k| (spec.eigenvalues[k], spec.eigenvectors[(0, k)].norm_sqr()))
        .collect();
    pairs.sort_by(|a, b| a.0.total_cmp(&b.0));
    Ok(pairs.into_iter().unzip())
}

/// Periodic trapezoid nodes on [0, 2π) with equal weights 2π/n.
pub fn periodic_nodes(n: usize) -> Vec<f64> {
    (0..n)
        .map(|k| 2.0 * std::f64::consts::PI * k as f64 / n as f64)
        .collect()
}
