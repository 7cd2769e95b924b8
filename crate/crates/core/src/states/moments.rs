//! Normally ordered moments M^{(k,l)} = Tr(a†ᵏ aˡ ρ) and the inverse map.

use crate::error::{Error, Result};
use crate::fock_core::{CMatrix, DensityOperator, C64};

/// Moments M^{(k,l)} for 0 ≤ k, l ≤ cutoff.
#[derive(Debug, Clone, PartialEq)]
pub struct MomentTable {
    cutoff: usize,
    m: Vec<C64>,
}

impl MomentTable {
    pub fn from_fn(cutoff: usize, mut f: impl FnMut(usize, usize) -> C64) -> Self {
        let n = cutoff + 1;
        let mut m = Vec::with_capacity(n * n);
        for k in 0..n {
            for l in 0..n {
                m.push(f(k, l));
            }
        }
        MomentTable { cutoff, m }
    }

    /// Moments of a truncated density operator; needs cutoff < dim.
    pub fn from_density(rho: &DensityOperator, cutoff: usize) -> Result<Self> {
        if cutoff >= rho.dim() {
            return Err(Error::MomentOverflow {
                k: cutoff,
                l: cutoff,
                dim: rho.dim(),
            });
        }
        let n = cutoff + 1;
        let mut m = Vec::with_capacity(n * n);
        for k in 0..n {
            for l in 0..n {
                m.push(moment(rho, k, l)?);
            }
        }
        Ok(MomentTable { cutoff, m })
    }

    /// α*ᵏ αˡ
    pub fn coherent(alpha: C64, cutoff: usize) -> Self {
        let ac = alpha.conj();
        Self::from_fn(cutoff, |k, l| ac.powu(k as u32) * alpha.powu(l as u32))
    }

    /// δ_kl k! n̄ᵏ
    pub fn thermal(nbar: f64, cutoff: usize) -> Self {
        Self::from_fn(cutoff, |k, l| {
            if k == l {
                C64::new(factorial(k) * nbar.powi(k as i32), 0.0)
            } else {
                C64::new(0.0, 0.0)
            }
        })
    }

    pub fn cutoff(&self) -> usize {
        self.cutoff
    }

    pub fn get(&self, k: usize, l: usize) -> C64 {
        self.m[k * (self.cutoff + 1) + l]
    }

    /// Largest |M^{(k,l)} − conj(M^{(l,k)})|.
    pub fn hermitian_deviation(&self) -> f64 {
        let mut d: f64 = 0.0;
        for k in 0..=self.cutoff {
            for l in 0..=self.cutoff {
                d = d.max((self.get(k, l) - self.get(l, k).conj()).norm());
            }
        }
        d
    }
}

pub(crate) fn factorial(n: usize) -> f64 {
    (1..=n).map(|k| k as f64).product()
}

/// √(n!/(n−j)!) for j ≤ n.
fn falling_root(n: usize, j: usize) -> f64 {
    ((n - j + 1)..=n).map(|k| k as f64).product::<f64>().sqrt()
}

/// Tr(a†ᵏ aˡ ρ) in the truncated basis.
pub fn moment(rho: &DensityOperator, k: usize, l: usize) -> Result<C64> {
    let dim = rho.dim();
    if k >= dim || l >= dim {
        return Err(Error::MomentOverflow { k, l, dim });
    }
    let r = rho.matrix();
    // Σ_m ⟨m|aˡ ρ a†ᵏ|m⟩ = Σ_m √((m+l)!/m!) √((m+k)!/m!) ρ_{m+l, m+k}
    let mut s = C64::new(0.0, 0.0);
    let mut m = 0;
    while m + k.max(l) < dim {
        s += r[(m + l, m + k)] * falling_root(m + l, l) * falling_root(m + k, k);
        m += 1;
    }
    Ok(s)
}

/// Density operator rebuilt from moments, with the raw trace deviation.
#[derive(Debug, Clone)]
pub struct Reconstruction {
    pub rho: DensityOperator,
    /// |Tr ρ − 1| before renormalization.
    pub trace_deviation: f64,
}

/// ρ_ab = Σ_j (−1)ʲ M^{(b+j, a+j)} / (j! √(a! b!)), truncated at the table cutoff.
pub fn reconstruct_from_moments(m: &MomentTable, dim: usize) -> Result<Reconstruction> {
    if dim == 0 {
        return Err(Error::EmptyDimension);
    }
    let k_max = m.cutoff();
    let mut mat = CMatrix::zeros(dim);
    for a in 0..dim.min(k_max + 1) {
        for b in 0..dim.min(k_max + 1) {
            let mut s = C64::new(0.0, 0.0);
            let mut jf = 1.0;
            for j in 0..=(k_max - a.max(b)) {
                if j > 0 {
                    jf *= j as f64;
                }
                let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
                s += m.get(b + j, a + j) * (sign / jf);
            }
            mat[(a, b)] = s / (factorial(a) * factorial(b)).sqrt();
        }
    }
    let mat = mat.hermitize();
    let tr = mat.trace().re;
    let dev = (tr - 1.0).abs();
    if !(dev <= 1e-3) {
        return Err(Error::InsufficientCutoff(dev));
    }
    Ok(Reconstruction {
        rho: DensityOperator::from_matrix_unchecked(mat.scale(1.0 / tr)),
        trace_deviation: dev,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fock_core::outer;
    use crate::states::{coherent, fock, thermal};

    #[test]
    fn coherent_moments() {
        let alpha = C64::new(0.6, -0.3);
        let rho = outer(&coherent(alpha, 48).unwrap());
        for (k, l) in [(0, 0), (1, 0), (0, 1), (2, 3), (4, 1)] {
            let want = alpha.conj().powu(k) * alpha.powu(l);
            let got = moment(&rho, k as usize, l as usize).unwrap();
            assert!((got - want).norm() < 1e-12, "({k},{l})");
        }
    }

    #[test]
    fn simple_moments() {
        let t = thermal(0.7, 64).unwrap();
        assert!((moment(&t, 1, 1).unwrap().re - 0.7).abs() < 1e-12);
        let f = outer(&fock(3, 8).unwrap());
        assert_eq!(moment(&f, 1, 0).unwrap(), C64::new(0.0, 0.0));
        assert!((moment(&f, 2, 2).unwrap().re - 6.0).abs() < 1e-12);
        assert!(matches!(moment(&f, 8, 0), Err(Error::MomentOverflow { .. })));
    }

    #[test]
    fn analytic_tables_match_brute_force() {
        let t = thermal(0.4, 96).unwrap();
        let brute = MomentTable::from_density(&t, 6).unwrap();
        let exact = MomentTable::thermal(0.4, 6);
        for k in 0..=6 {
            for l in 0..=6 {
                assert!((brute.get(k, l) - exact.get(k, l)).norm() < 1e-10);
            }
        }
        assert_eq!(exact.hermitian_deviation(), 0.0);
    }

    #[test]
    fn fock_round_trip() {
        let f = outer(&fock(1, 6).unwrap());
        let table = MomentTable::from_density(&f, 5).unwrap();
        let r = reconstruct_from_moments(&table, 6).unwrap();
        assert!(r.rho.matrix().sub(f.matrix()).unwrap().max_abs() < 1e-12);
    }

    #[test]
    fn coherent_round_trip() {
        let alpha = C64::new(0.5, 0.0);
        let table = MomentTable::coherent(alpha, 20);
        let r = reconstruct_from_moments(&table, 16).unwrap();
        let want = outer(&coherent(alpha, 16).unwrap());
        assert!(r.rho.matrix().sub(want.matrix()).unwrap().max_abs() < 1e-8);
    }

    #[test]
    fn thermal_round_trip() {
        let table = MomentTable::thermal(0.5, 100);
        let r = reconstruct_from_moments(&table, 24).unwrap();
        let x: f64 = 0.5 / 1.5;
        for n in 0..24 {
            let want = x.powi(n as i32) / 1.5;
            assert!((r.rho.matrix()[(n, n)].re - want).abs() < 1e-8, "n = {n}");
        }
    }

    #[test]
    fn insufficient_cutoff() {
        // The full triangle always sums to M^{(0,0)}; clipping it to a
        // smaller dimension exposes the missing mass.
        let table = MomentTable::thermal(0.9, 3);
        assert!(matches!(
            reconstruct_from_moments(&table, 2),
            Err(Error::InsufficientCutoff(_))
        ));
    }
}
