//! Dense complex linear algebra over a truncated number basis.

use std::ops::{Index, IndexMut};

use num_complex::Complex64;

use crate::error::{Error, Result};

pub type C64 = Complex64;

const HERMITIAN_TOL: f64 = 1e-12;
const TRACE_TOL: f64 = 1e-10;
const NORM_TOL: f64 = 1e-10;
/// Eigenvalues down to this value are treated as rounding noise and clamped.
pub const PSD_CLAMP: f64 = -1e-10;
const JACOBI_MAX_SWEEPS: usize = 100;

/// Square complex matrix, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct CMatrix {
    n: usize,
    data: Vec<C64>,
}

impl CMatrix {
    pub fn zeros(n: usize) -> Self {
        CMatrix {
            n,
            data: vec![C64::new(0.0, 0.0); n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m[(i, i)] = C64::new(1.0, 0.0);
        }
        m
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> C64) -> Self {
        let mut data = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                data.push(f(i, j));
            }
        }
        CMatrix { n, data }
    }

    pub fn from_diagonal(d: &[f64]) -> Self {
        let mut m = Self::zeros(d.len());
        for (i, &x) in d.iter().enumerate() {
            m[(i, i)] = C64::new(x, 0.0);
        }
        m
    }

    /// Builds a matrix from row-major entries; `rows.len()` must be a square.
    pub fn from_rows(rows: Vec<Vec<C64>>) -> Result<Self> {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * n);
        for r in rows {
            if r.len() != n {
                return Err(Error::DimensionMismatch(n, r.len()));
            }
            data.extend(r);
        }
        Ok(CMatrix { n, data })
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn row(&self, i: usize) -> &[C64] {
        &self.data[i * self.n..(i + 1) * self.n]
    }

    pub fn diagonal(&self) -> Vec<C64> {
        (0..self.n).map(|i| self[(i, i)]).collect()
    }

    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.n, |i, j| self[(j, i)].conj())
    }

    pub fn trace(&self) -> C64 {
        (0..self.n).map(|i| self[(i, i)]).sum()
    }

    pub fn scale(&self, s: f64) -> Self {
        CMatrix {
            n: self.n,
            data: self.data.iter().map(|z| z * s).collect(),
        }
    }

    pub fn add(&self, other: &CMatrix) -> Result<Self> {
        check_dims(self.n, other.n)?;
        Ok(CMatrix {
            n: self.n,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect(),
        })
    }

    pub fn sub(&self, other: &CMatrix) -> Result<Self> {
        check_dims(self.n, other.n)?;
        Ok(CMatrix {
            n: self.n,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect(),
        })
    }

    /// Matrix product; zero entries of `self` are skipped, so products with
    /// diagonal or banded left factors are cheap.
    pub fn matmul(&self, other: &CMatrix) -> Result<Self> {
        check_dims(self.n, other.n)?;
        let n = self.n;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.data[i * n + k];
                if a.re == 0.0 && a.im == 0.0 {
                    continue;
                }
                let brow = &other.data[k * n..(k + 1) * n];
                let orow = &mut out.data[i * n..(i + 1) * n];
                for (o, b) in orow.iter_mut().zip(brow) {
                    *o += a * b;
                }
            }
        }
        Ok(out)
    }

    pub fn mat_vec(&self, v: &[C64]) -> Result<Vec<C64>> {
        check_dims(self.n, v.len())?;
        Ok((0..self.n)
            .map(|i| self.row(i).iter().zip(v).map(|(a, b)| a * b).sum())
            .collect())
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Largest |a_ij − conj(a_ji)|.
    pub fn hermitian_deviation(&self) -> f64 {
        let mut dev: f64 = 0.0;
        for i in 0..self.n {
            for j in i..self.n {
                dev = dev.max((self[(i, j)] - self[(j, i)].conj()).norm());
            }
        }
        dev
    }

    /// (A + A†)/2
    pub fn hermitize(&self) -> Self {
        Self::from_fn(self.n, |i, j| (self[(i, j)] + self[(j, i)].conj()) * 0.5)
    }

    pub fn is_diagonal(&self) -> bool {
        for i in 0..self.n {
            for j in 0..self.n {
                if i != j && self[(i, j)] != C64::new(0.0, 0.0) {
                    return false;
                }
            }
        }
        true
    }
}

impl Index<(usize, usize)> for CMatrix {
    type Output = C64;
    fn index(&self, (i, j): (usize, usize)) -> &C64 {
        &self.data[i * self.n + j]
    }
}

impl IndexMut<(usize, usize)> for CMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut C64 {
        &mut self.data[i * self.n + j]
    }
}

fn check_dims(a: usize, b: usize) -> Result<()> {
    if a != b {
        Err(Error::DimensionMismatch(a, b))
    } else {
        Ok(())
    }
}

/// Normalized pure state over the truncated basis.
#[derive(Debug, Clone, PartialEq)]
pub struct FockVector {
    amp: Vec<C64>,
}

impl FockVector {
    /// Wraps amplitudes that must already have unit norm.
    pub fn new(amp: Vec<C64>) -> Result<Self> {
        if amp.is_empty() {
            return Err(Error::EmptyDimension);
        }
        let norm = amp.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if (norm - 1.0).abs() > NORM_TOL {
            return Err(Error::InvalidNorm(norm));
        }
        Ok(FockVector { amp })
    }

    /// Rescales arbitrary nonzero amplitudes to unit norm.
    pub fn normalized(amp: Vec<C64>) -> Result<Self> {
        if amp.is_empty() {
            return Err(Error::EmptyDimension);
        }
        let norm = amp.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if norm == 0.0 || !norm.is_finite() {
            return Err(Error::InvalidNorm(norm));
        }
        Ok(FockVector {
            amp: amp.into_iter().map(|z| z / norm).collect(),
        })
    }

    pub fn dim(&self) -> usize {
        self.amp.len()
    }

    pub fn amplitudes(&self) -> &[C64] {
        &self.amp
    }

    /// ⟨self|other⟩
    pub fn inner(&self, other: &FockVector) -> Result<C64> {
        check_dims(self.dim(), other.dim())?;
        Ok(self.amp.iter().zip(&other.amp).map(|(a, b)| a.conj() * b).sum())
    }

    pub fn probabilities(&self) -> Vec<f64> {
        self.amp.iter().map(|z| z.norm_sqr()).collect()
    }

    pub fn mean_number(&self) -> f64 {
        self.amp
            .iter()
            .enumerate()
            .map(|(n, z)| n as f64 * z.norm_sqr())
            .sum()
    }

    /// Copy with the first nonzero amplitude made real and positive.
    pub fn with_canonical_phase(&self) -> FockVector {
        let phase = self
            .amp
            .iter()
            .find(|z| z.norm() > 0.0)
            .map(|z| z.conj() / z.norm())
            .unwrap_or(C64::new(1.0, 0.0));
        FockVector {
            amp: self.amp.iter().map(|z| z * phase).collect(),
        }
    }
}

/// Hermitian, unit-trace, positive semidefinite matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityOperator {
    mat: CMatrix,
}

impl DensityOperator {
    /// Validates Hermiticity, trace and positivity.
    pub fn new(mat: CMatrix) -> Result<Self> {
        if mat.dim() == 0 {
            return Err(Error::EmptyDimension);
        }
        let dev = mat.hermitian_deviation();
        if dev > HERMITIAN_TOL {
            return Err(Error::NotHermitian(dev));
        }
        let tr = mat.trace().re;
        if (tr - 1.0).abs() > TRACE_TOL {
            return Err(Error::InvalidTrace(tr));
        }
        let min = eigvalsh(&mat)?.last().copied().unwrap_or(0.0);
        if min < PSD_CLAMP {
            return Err(Error::NotPsd(min));
        }
        Ok(DensityOperator { mat })
    }

    /// Diagonal state from photon-number probabilities summing to one.
    pub fn from_diagonal(p: &[f64]) -> Result<Self> {
        if p.is_empty() {
            return Err(Error::EmptyDimension);
        }
        if let Some(&bad) = p.iter().find(|&&x| x < PSD_CLAMP) {
            return Err(Error::NotPsd(bad));
        }
        let tr: f64 = p.iter().sum();
        if (tr - 1.0).abs() > TRACE_TOL {
            return Err(Error::InvalidTrace(tr));
        }
        Ok(DensityOperator {
            mat: CMatrix::from_diagonal(p),
        })
    }

    /// Trusted constructor for matrices that are valid by construction.
    pub(crate) fn from_matrix_unchecked(mat: CMatrix) -> Self {
        DensityOperator { mat }
    }

    pub fn dim(&self) -> usize {
        self.mat.dim()
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.mat
    }

    pub fn into_matrix(self) -> CMatrix {
        self.mat
    }

    pub fn probabilities(&self) -> Vec<f64> {
        (0..self.dim()).map(|i| self.mat[(i, i)].re).collect()
    }

    pub fn mean_number(&self) -> f64 {
        (0..self.dim()).map(|i| i as f64 * self.mat[(i, i)].re).sum()
    }

    /// ⟨ψ|ρ|ψ⟩
    pub fn expectation_in(&self, psi: &FockVector) -> Result<f64> {
        let v = self.mat.mat_vec(psi.amplitudes())?;
        Ok(psi
            .amplitudes()
            .iter()
            .zip(&v)
            .map(|(a, b)| a.conj() * b)
            .sum::<C64>()
            .re)
    }
}

/// Eigendecomposition of a Hermitian matrix.
#[derive(Debug, Clone)]
pub struct Spectrum {
    /// Descending.
    pub eigenvalues: Vec<f64>,
    /// Column k is the eigenvector of `eigenvalues[k]`.
    pub eigenvectors: CMatrix,
    /// Magnitude below which an eigenvalue is indistinguishable from zero.
    pub noise_level: f64,
}

impl Spectrum {
    pub fn dim(&self) -> usize {
        self.eigenvalues.len()
    }

    /// V f(Λ) V†
    pub fn apply(&self, f: impl Fn(f64) -> f64) -> CMatrix {
        let n = self.dim();
        let v = &self.eigenvectors;
        let fl: Vec<f64> = self.eigenvalues.iter().map(|&l| f(l)).collect();
        let mut out = CMatrix::zeros(n);
        for (k, &w) in fl.iter().enumerate() {
            if w == 0.0 {
                continue;
            }
            for i in 0..n {
                let vik = v[(i, k)] * w;
                if vik.re == 0.0 && vik.im == 0.0 {
                    continue;
                }
                for j in 0..n {
                    out[(i, j)] += vik * v[(j, k)].conj();
                }
            }
        }
        out
    }

    pub fn reconstruct(&self) -> CMatrix {
        self.apply(|l| l)
    }

    /// Eigenvalues with noise-level values set to zero and small negatives
    /// clamped; fails on a genuinely negative eigenvalue.
    pub fn psd_eigenvalues(&self) -> Result<Vec<f64>> {
        self.eigenvalues
            .iter()
            .map(|&l| {
                if l < PSD_CLAMP && l < -self.noise_level {
                    Err(Error::NotPsd(l))
                } else if l <= self.noise_level {
                    Ok(0.0)
                } else {
                    Ok(l)
                }
            })
            .collect()
    }
}

/// Cyclic Jacobi eigendecomposition of a Hermitian matrix.
pub fn eigh(a: &CMatrix) -> Result<Spectrum> {
    let n = a.dim();
    if n == 0 {
        return Err(Error::EmptyDimension);
    }
    let dev = a.hermitian_deviation();
    let scale = a.frobenius_norm();
    if dev > HERMITIAN_TOL.max(1e-13 * scale) {
        return Err(Error::NotHermitian(dev));
    }
    if a.is_diagonal() {
        let d: Vec<f64> = a.diagonal().iter().map(|z| z.re).collect();
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by(|&i, &j| d[j].total_cmp(&d[i]));
        let v = CMatrix::from_fn(n, |i, k| {
            if order[k] == i {
                C64::new(1.0, 0.0)
            } else {
                C64::new(0.0, 0.0)
            }
        });
        return Ok(Spectrum {
            eigenvalues: order.iter().map(|&i| d[i]).collect(),
            eigenvectors: v,
            noise_level: 0.0,
        });
    }

    let mut m = a.hermitize();
    let mut v = CMatrix::identity(n);
    let target = 1e-14 * scale;
    let mut converged = false;
    for _ in 0..JACOBI_MAX_SWEEPS {
        if off_diagonal_norm(&m) <= target {
            converged = true;
            break;
        }
        for p in 0..n - 1 {
            for q in p + 1..n {
                rotate(&mut m, &mut v, p, q);
            }
        }
    }
    if !converged && off_diagonal_norm(&m) > target {
        return Err(Error::NoConvergence(JACOBI_MAX_SWEEPS));
    }

    let d: Vec<f64> = (0..n).map(|i| m[(i, i)].re).collect();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| d[j].total_cmp(&d[i]));
    let vecs = CMatrix::from_fn(n, |i, k| v[(i, order[k])]);
    Ok(Spectrum {
        eigenvalues: order.iter().map(|&i| d[i]).collect(),
        eigenvectors: vecs,
        noise_level: 4.0 * n as f64 * f64::EPSILON * scale,
    })
}

fn off_diagonal_norm(m: &CMatrix) -> f64 {
    let n = m.dim();
    let mut s = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                s += m[(i, j)].norm_sqr();
            }
        }
    }
    s.sqrt()
}

fn rotate(m: &mut CMatrix, v: &mut CMatrix, p: usize, q: usize) {
    let apq = m[(p, q)];
    let g = apq.norm();
    if g == 0.0 {
        return;
    }
    let app = m[(p, p)].re;
    let aqq = m[(q, q)].re;
    // Phase that makes the (p, q) entry real, then a real rotation.
    let ph = apq / g;
    let theta = (aqq - app) / (2.0 * g);
    let t = if theta.is_finite() {
        theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt())
    } else {
        0.0
    };
    if t == 0.0 {
        return;
    }
    let c = 1.0 / (1.0 + t * t).sqrt();
    let s = t * c;
    let phc = ph.conj();
    let u_pp = C64::new(c, 0.0);
    let u_pq = C64::new(s, 0.0);
    let u_qp = -phc * s;
    let u_qq = phc * c;

    let n = m.dim();
    for k in 0..n {
        let mkp = m[(k, p)];
        let mkq = m[(k, q)];
        m[(k, p)] = mkp * u_pp + mkq * u_qp;
        m[(k, q)] = mkp * u_pq + mkq * u_qq;
    }
    for k in 0..n {
        let mpk = m[(p, k)];
        let mqk = m[(q, k)];
        m[(p, k)] = u_pp.conj() * mpk + u_qp.conj() * mqk;
        m[(q, k)] = u_pq.conj() * mpk + u_qq.conj() * mqk;
    }
    m[(p, q)] = C64::new(0.0, 0.0);
    m[(q, p)] = C64::new(0.0, 0.0);
    m[(p, p)] = C64::new(app - t * g, 0.0);
    m[(q, q)] = C64::new(aqq + t * g, 0.0);
    for k in 0..n {
        let vkp = v[(k, p)];
        let vkq = v[(k, q)];
        v[(k, p)] = vkp * u_pp + vkq * u_qp;
        v[(k, q)] = vkp * u_pq + vkq * u_qq;
    }
}

/// Eigenvalues only, descending.
pub fn eigvalsh(a: &CMatrix) -> Result<Vec<f64>> {
    Ok(eigh(a)?.eigenvalues)
}

/// |ψ⟩⟨ψ|
pub fn outer(psi: &FockVector) -> DensityOperator {
    let c = psi.amplitudes();
    DensityOperator::from_matrix_unchecked(CMatrix::from_fn(c.len(), |i, j| c[i] * c[j].conj()))
}

/// Σ_ij a_ij b_ji without forming the product.
pub fn trace_of_product(a: &CMatrix, b: &CMatrix) -> Result<C64> {
    check_dims(a.dim(), b.dim())?;
    let n = a.dim();
    let mut s = C64::new(0.0, 0.0);
    for i in 0..n {
        for j in 0..n {
            s += a[(i, j)] * b[(j, i)];
        }
    }
    Ok(s)
}

/// Re Tr(ρ₁ρ₂).
pub fn trace_product(a: &DensityOperator, b: &DensityOperator) -> Result<f64> {
    let t = trace_of_product(a.matrix(), b.matrix())?;
    debug_assert!(t.im.abs() <= 1e-12, "Tr(AB) has imaginary part {}", t.im);
    Ok(t.re)
}

/// Tr ρ².
pub fn purity(rho: &DensityOperator) -> f64 {
    rho.matrix().data.iter().map(|z| z.norm_sqr()).sum()
}

/// Unique PSD square root.
pub fn hermitian_sqrt(a: &CMatrix) -> Result<CMatrix> {
    hermitian_power(a, 0.5)
}

/// A^p for PSD A and p > 0, through the eigendecomposition.
pub fn hermitian_power(a: &CMatrix, p: f64) -> Result<CMatrix> {
    if !(p > 0.0) || !p.is_finite() {
        return Err(Error::InvalidParameter(format!("matrix power {p} must be positive")));
    }
    let spec = eigh(a)?;
    let vals = spec.psd_eigenvalues()?;
    let fixed = Spectrum {
        eigenvalues: vals,
        eigenvectors: spec.eigenvectors,
        noise_level: spec.noise_level,
    };
    Ok(fixed.apply(|l| if l > 0.0 { l.powf(p) } else { 0.0 }))
}

/// Σ|λ| over the eigenvalues of a Hermitian matrix.
pub fn trace_norm(delta: &CMatrix) -> Result<f64> {
    Ok(eigvalsh(delta)?.iter().map(|l| l.abs()).sum())
}

/// Tr(A²) for Hermitian A.
pub fn hs_norm_sqr(a: &CMatrix) -> f64 {
    a.data.iter().map(|z| z.norm_sqr()).sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64) -> C64 {
        C64::new(re, 0.0)
    }

    fn basis(n: usize, dim: usize) -> FockVector {
        let mut v = vec![c(0.0); dim];
        v[n] = c(1.0);
        FockVector::new(v).unwrap()
    }

    fn coherent_amps(alpha: C64, dim: usize) -> FockVector {
        let mut v = vec![c(1.0)];
        for n in 1..dim {
            let prev = v[n - 1];
            v.push(prev * alpha / (n as f64).sqrt());
        }
        FockVector::normalized(v).unwrap()
    }

    fn thermal_diag(nbar: f64, dim: usize) -> DensityOperator {
        let x = nbar / (1.0 + nbar);
        let mut p: Vec<f64> = (0..dim).map(|n| x.powi(n as i32) / (1.0 + nbar)).collect();
        let s: f64 = p.iter().sum();
        p.iter_mut().for_each(|v| *v /= s);
        DensityOperator::from_diagonal(&p).unwrap()
    }

    #[test]
    fn outer_of_vacuum_is_projector() {
        let r = outer(&basis(0, 4));
        assert_eq!(r.matrix()[(0, 0)], c(1.0));
        assert_eq!(r.matrix().max_abs(), 1.0);
        assert!((purity(&r) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn outer_of_coherent_vacuum_entry() {
        let r = outer(&coherent_amps(c(0.5), 32));
        assert!((r.matrix()[(0, 0)].re - (-0.25f64).exp()).abs() < 1e-12);
        let r1 = outer(&coherent_amps(c(1.0), 40));
        assert!((purity(&r1) - 1.0).abs() < 1e-10);
    }

    #[test]
    fn trace_product_examples() {
        let a = outer(&basis(0, 4));
        let b = outer(&basis(1, 4));
        assert_eq!(trace_product(&a, &b).unwrap(), 0.0);
        let t = thermal_diag(1.0, 60);
        assert!((trace_product(&t, &t).unwrap() - 1.0 / 3.0).abs() < 1e-12);
        let al = C64::new(0.3, -0.2);
        let be = C64::new(-0.5, 0.4);
        let ra = outer(&coherent_amps(al, 40));
        let rb = outer(&coherent_amps(be, 40));
        let want = (-(al - be).norm_sqr()).exp();
        assert!((trace_product(&ra, &rb).unwrap() - want).abs() < 1e-12);
    }

    #[test]
    fn trace_product_dimension_mismatch() {
        let a = outer(&basis(0, 4));
        let b = outer(&basis(0, 5));
        assert_eq!(trace_product(&a, &b), Err(Error::DimensionMismatch(4, 5)));
    }

    #[test]
    fn purity_of_thermal() {
        assert!((purity(&thermal_diag(1.0, 64)) - 1.0 / 3.0).abs() < 1e-12);
        assert!((purity(&thermal_diag(4.0, 200)) - 1.0 / 9.0).abs() < 1e-12);
        assert!((purity(&outer(&basis(3, 8))) - 1.0).abs() < 1e-15);
    }

    #[test]
    fn sqrt_examples() {
        let psi = coherent_amps(C64::new(0.4, 0.7), 30);
        let p = outer(&psi);
        let s = hermitian_sqrt(p.matrix()).unwrap();
        assert!(s.sub(p.matrix()).unwrap().max_abs() < 1e-12);

        let half = CMatrix::from_diagonal(&[0.5, 0.5]);
        let s = hermitian_sqrt(&half).unwrap();
        let r = 0.5f64.sqrt();
        assert!(s.sub(&CMatrix::from_diagonal(&[r, r])).unwrap().max_abs() < 1e-15);

        let t = thermal_diag(1.5, 80);
        let s = hermitian_sqrt(t.matrix()).unwrap();
        for n in 0..80 {
            assert!((s[(n, n)].re - t.matrix()[(n, n)].re.sqrt()).abs() < 1e-15);
        }
    }

    #[test]
    fn sqrt_rejects_negative() {
        let m = CMatrix::from_diagonal(&[1.0, -1e-6]);
        assert_eq!(hermitian_sqrt(&m), Err(Error::NotPsd(-1e-6)));
        let m = CMatrix::from_diagonal(&[1.0, -1e-11]);
        let s = hermitian_sqrt(&m).unwrap();
        assert_eq!(s[(1, 1)], c(0.0));
    }

    #[test]
    fn trace_norm_examples() {
        let a = outer(&basis(0, 4));
        let b = outer(&basis(1, 4));
        assert!(trace_norm(&a.matrix().sub(a.matrix()).unwrap()).unwrap().abs() < 1e-15);
        let d = a.matrix().sub(b.matrix()).unwrap();
        assert!((trace_norm(&d).unwrap() - 2.0).abs() < 1e-14);
        let al = C64::new(0.2, 0.1);
        let be = C64::new(-0.3, 0.5);
        let ra = outer(&coherent_amps(al, 40));
        let rb = outer(&coherent_amps(be, 40));
        let d = ra.matrix().sub(rb.matrix()).unwrap();
        let want = 2.0 * (1.0 - (-(al - be).norm_sqr()).exp()).sqrt();
        assert!((trace_norm(&d).unwrap() - want).abs() < 1e-10);
    }

    #[test]
    fn trace_norm_rejects_non_hermitian() {
        let mut m = CMatrix::zeros(2);
        m[(0, 1)] = c(1.0);
        assert!(matches!(trace_norm(&m), Err(Error::NotHermitian(_))));
    }

    #[test]
    fn density_operator_validation() {
        let mut m = CMatrix::from_diagonal(&[0.6, 0.4]);
        assert!(DensityOperator::new(m.clone()).is_ok());
        m[(0, 1)] = C64::new(0.0, 1e-6);
        assert!(matches!(DensityOperator::new(m.clone()), Err(Error::NotHermitian(_))));
        assert!(matches!(
            DensityOperator::new(CMatrix::from_diagonal(&[0.6, 0.5])),
            Err(Error::InvalidTrace(_))
        ));
        assert!(matches!(
            DensityOperator::new(CMatrix::from_diagonal(&[1.5, -0.5])),
            Err(Error::NotPsd(_))
        ));
        assert_eq!(FockVector::new(vec![]), Err(Error::EmptyDimension));
        assert!(matches!(FockVector::new(vec![c(0.5)]), Err(Error::InvalidNorm(_))));
    }

    #[test]
    fn jacobi_small_hermitian() {
        let m = CMatrix::from_rows(vec![
            vec![c(2.0), C64::new(0.0, 1.0)],
            vec![C64::new(0.0, -1.0), c(2.0)],
        ])
        .unwrap();
        let s = eigh(&m).unwrap();
        assert!((s.eigenvalues[0] - 3.0).abs() < 1e-14);
        assert!((s.eigenvalues[1] - 1.0).abs() < 1e-14);
        assert!(s.reconstruct().sub(&m).unwrap().max_abs() < 1e-14);
    }

    #[test]
    fn canonical_phase() {
        let v = FockVector::normalized(vec![c(0.0), C64::new(0.0, -2.0), c(1.0)]).unwrap();
        let w = v.with_canonical_phase();
        assert!(w.amplitudes()[1].im.abs() < 1e-15);
        assert!(w.amplitudes()[1].re > 0.0);
        assert!((w.inner(&v).unwrap().norm() - 1.0).abs() < 1e-14);
    }
}
