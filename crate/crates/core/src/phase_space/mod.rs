//! Quasiprobability distributions on uniform (q, p) grids and the phase-space
//! forms of the Hilbert-Schmidt distance.
//!
//! Grids use α = (q + ip)/√2, so d²α/π = dq dp/(2π). All three
//! distributions are normalized to ∫∫ F dq dp/(2π) = 1.

pub mod oscillator;

use std::f64::consts::PI;
use std::io::Write;

use crate::error::{Error, Result};
use crate::fock_core::{DensityOperator, C64};
use crate::format::g12;
use crate::quadrature::simpson_weights;
use crate::states::{adaptive_dim, StateSpec, DEFAULT_TAIL_TOL};

/// Default number of points per axis.
pub const DEFAULT_POINTS: usize = 257;

/// Uniform grid with one value per (q, p) node, stored row-major in q.
#[derive(Debug, Clone, PartialEq)]
pub struct PhaseGrid {
    q_min: f64,
    q_max: f64,
    p_min: f64,
    p_max: f64,
    nq: usize,
    np: usize,
    values: Vec<f64>,
}

impl PhaseGrid {
    /// Zero-valued grid. Point counts must be odd (Simpson) and at least 17.
    pub fn new(q_min: f64, q_max: f64, p_min: f64, p_max: f64, nq: usize, np: usize) -> Result<Self> {
        for (name, n) in [("nq", nq), ("np", np)] {
            if n < 16 || n % 2 == 0 {
                return Err(Error::InvalidParameter(format!(
                    "{name} = {n}: grids need an odd point count of at least 17"
                )));
            }
        }
        if !(q_max > q_min && p_max > p_min) || ![q_min, q_max, p_min, p_max].iter().all(|v| v.is_finite()) {
            return Err(Error::InvalidParameter("grid bounds must be finite and increasing".into()));
        }
        Ok(PhaseGrid {
            q_min,
            q_max,
            p_min,
            p_max,
            nq,
            np,
            values: vec![0.0; nq * np],
        })
    }

    /// Square grid over [−half, half]².
    pub fn symmetric(half: f64, n: usize) -> Result<Self> {
        Self::new(-half, half, -half, half, n, n)
    }

    /// Square grid over ±(√(2·dim) + 4), wide enough for states truncated at `dim`.
    pub fn for_dim(dim: usize, n: usize) -> Result<Self> {
        Self::symmetric((2.0 * dim as f64).sqrt() + 4.0, n)
    }

    pub fn nq(&self) -> usize {
        self.nq
    }

    pub fn np(&self) -> usize {
        self.np
    }

    pub fn dq(&self) -> f64 {
        (self.q_max - self.q_min) / (self.nq - 1) as f64
    }

    pub fn dp(&self) -> f64 {
        (self.p_max - self.p_min) / (self.np - 1) as f64
    }

    pub fn q(&self, i: usize) -> f64 {
        self.q_min + self.dq() * i as f64
    }

    pub fn p(&self, j: usize) -> f64 {
        self.p_min + self.dp() * j as f64
    }

    pub fn bounds(&self) -> (f64, f64, f64, f64) {
        (self.q_min, self.q_max, self.p_min, self.p_max)
    }

    pub fn value(&self, i: usize, j: usize) -> f64 {
        self.values[i * self.np + j]
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn same_layout(&self, other: &PhaseGrid) -> bool {
        self.bounds() == other.bounds() && self.nq == other.nq && self.np == other.np
    }

    /// Copy of the layout with values f(q, p).
    pub fn map(&self, mut f: impl FnMut(f64, f64) -> f64) -> PhaseGrid {
        let mut g = self.clone();
        for i in 0..self.nq {
            let q = self.q(i);
            for j in 0..self.np {
                g.values[i * self.np + j] = f(q, self.p(j));
            }
        }
        g
    }

    /// Pointwise combination of two grids with the same layout.
    pub fn zip(&self, other: &PhaseGrid, f: impl Fn(f64, f64) -> f64) -> Result<PhaseGrid> {
        if !self.same_layout(other) {
            return Err(Error::GridMismatch);
        }
        let mut g = self.clone();
        for (v, o) in g.values.iter_mut().zip(&other.values) {
            *v = f(*v, *o);
        }
        Ok(g)
    }

    /// Simpson approximation of ∫∫ values dq dp.
    pub fn integrate(&self) -> f64 {
        let wq = simpson_weights(self.nq, self.dq()).expect("odd grid");
        let wp = simpson_weights(self.np, self.dp()).expect("odd grid");
        let mut s = 0.0;
        for (row, w) in self.values.chunks_exact(self.np).zip(&wq) {
            s += w * row.iter().zip(&wp).map(|(v, w)| v * w).sum::<f64>();
        }
        s
    }

    /// 4×4 Lagrange interpolation, zero outside the grid.
    pub fn interpolate(&self, q: f64, p: f64) -> f64 {
        let (hq, hp) = (self.dq(), self.dp());
        let tq = (q - self.q_min) / hq;
        let tp = (p - self.p_min) / hp;
        if tq < 0.0 || tp < 0.0 || tq > (self.nq - 1) as f64 || tp > (self.np - 1) as f64 {
            return 0.0;
        }
        let i0 = (tq.floor() as isize - 1).clamp(0, self.nq as isize - 4) as usize;
        let j0 = (tp.floor() as isize - 1).clamp(0, self.np as isize - 4) as usize;
        let lq = lagrange4(tq - i0 as f64);
        let lp = lagrange4(tp - j0 as f64);
        let mut s = 0.0;
        for (a, l) in lq.iter().enumerate() {
            let row = &self.values[(i0 + a) * self.np + j0..];
            s += l * (lp[0] * row[0] + lp[1] * row[1] + lp[2] * row[2] + lp[3] * row[3]);
        }
        s
    }

    /// Writes `q,p,value` rows with a header.
    pub fn write_csv<W: Write>(&self, mut out: W) -> std::io::Result<()> {
        writeln!(out, "q,p,value")?;
        for i in 0..self.nq {
            let q = g12(self.q(i));
            for j in 0..self.np {
                writeln!(out, "{},{},{}", q, g12(self.p(j)), g12(self.value(i, j)))?;
            }
        }
        Ok(())
    }
}

/// Cubic Lagrange basis on nodes 0, 1, 2, 3 evaluated at t.
fn lagrange4(t: f64) -> [f64; 4] {
    [
        -(t - 1.0) * (t - 2.0) * (t - 3.0) / 6.0,
        t * (t - 2.0) * (t - 3.0) / 2.0,
        -t * (t - 1.0) * (t - 3.0) / 2.0,
        t * (t - 1.0) * (t - 2.0) / 6.0,
    ]
}

/// Operator ordering of a quasiprobability: s = +1 (P), 0 (Wigner), −1 (Q).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Ordering {
    Normal,
    Symmetric,
    Antinormal,
}

impl Ordering {
    pub fn s(self) -> i32 {
        match self {
            Ordering::Normal => 1,
            Ordering::Symmetric => 0,
            Ordering::Antinormal => -1,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct QuasiDistribution {
    pub ordering: Ordering,
    pub grid: PhaseGrid,
}

impl QuasiDistribution {
    /// ∫∫ F dq dp/(2π).
    pub fn normalization(&self) -> f64 {
        self.grid.integrate() / (2.0 * PI)
    }
}

/// Wigner function W(q,p) = ∫du e^{ipu} ⟨q−u/2|ρ|q+u/2⟩ on the given grid.
///
/// Position-basis matrix elements come from oscillator eigenfunctions sampled
/// on a grid four times finer than the q axis; the u integral is Simpson over
/// the part of that fine grid that stays inside [q_min, q_max].
pub fn wigner(rho: &DensityOperator, grid: &PhaseGrid) -> Result<QuasiDistribution> {
    const REFINE: usize = 4;
    let dim = rho.dim();
    let (nq, np) = (grid.nq, grid.np);
    let hx = grid.dq() / REFINE as f64;
    let nx = (nq - 1) * REFINE + 1;
    let xs: Vec<f64> = (0..nx).map(|j| grid.q_min + hx * j as f64).collect();
    let psi = oscillator::table(dim, &xs);

    // phi[j][m] = Σ_n ρ_mn ψ_n(x_j)
    let r = rho.matrix();
    let mut phi = vec![C64::new(0.0, 0.0); nx * dim];
    for j in 0..nx {
        let ps = &psi[j * dim..(j + 1) * dim];
        for m in 0..dim {
            let row = r.row(m);
            let mut s = C64::new(0.0, 0.0);
            for n in 0..dim {
                s += row[n] * ps[n];
            }
            phi[j * dim + m] = s;
        }
    }

    // e^{i p_j u_k} with u_k = 2k·hx
    let kmax_all = (nx - 1) / 2;
    let phase: Vec<C64> = (0..np)
        .flat_map(|j| {
            let p = grid.p(j);
            (0..=kmax_all).map(move |k| C64::from_polar(1.0, p * 2.0 * hx * k as f64))
        })
        .collect();

    let mut out = grid.clone();
    let mut f = vec![C64::new(0.0, 0.0); kmax_all + 1];
    for i in 0..nq {
        let c = i * REFINE;
        let kmax = c.min(nx - 1 - c);
        if kmax == 0 {
            for j in 0..np {
                out.values[i * np + j] = 0.0;
            }
            continue;
        }
        for (k, fk) in f.iter_mut().enumerate().take(kmax + 1) {
            let a = &psi[(c - k) * dim..(c - k + 1) * dim];
            let b = &phi[(c + k) * dim..(c + k + 1) * dim];
            *fk = a.iter().zip(b).map(|(x, y)| y * *x).sum();
        }
        let w = simpson_weights(2 * kmax + 1, 2.0 * hx)?;
        for j in 0..np {
            let ph = &phase[j * (kmax_all + 1)..];
            let mut s = w[kmax] * f[0].re;
            for k in 1..=kmax {
                s += 2.0 * w[kmax + k] * (ph[k] * f[k]).re;
            }
            out.values[i * np + j] = s;
        }
    }
    let wd = QuasiDistribution {
        ordering: Ordering::Symmetric,
        grid: out,
    };
    let norm = wd.normalization();
    if !((norm - 1.0).abs() <= 1e-3) {
        return Err(Error::GridTooSmall(format!(
            "Wigner grid holds mass {norm}, expected 1"
        )));
    }
    Ok(wd)
}

/// Coherent amplitudes e^{−|α|²/2} αⁿ/√n! for n < dim.
fn coherent_amplitudes(alpha: C64, dim: usize, out: &mut [C64]) {
    let mut c = C64::new((-0.5 * alpha.norm_sqr()).exp(), 0.0);
    for (n, o) in out.iter_mut().enumerate().take(dim) {
        *o = c;
        c = c * alpha / ((n + 1) as f64).sqrt();
    }
}

/// Husimi function Q(α) = ⟨α|ρ|α⟩.
pub fn husimi_q(rho: &DensityOperator, grid: &PhaseGrid) -> QuasiDistribution {
    let dim = rho.dim();
    let r = rho.matrix();
    let diag = if r.is_diagonal() {
        Some(rho.probabilities())
    } else {
        None
    };
    let mut c = vec![C64::new(0.0, 0.0); dim];
    let values = grid.map(|q, p| {
        coherent_amplitudes(C64::new(q, p) / 2f64.sqrt(), dim, &mut c);
        let v = match &diag {
            Some(pr) => pr.iter().zip(&c).map(|(p, c)| p * c.norm_sqr()).sum(),
            None => {
                let mut s = C64::new(0.0, 0.0);
                for m in 0..dim {
                    let row = r.row(m);
                    let mut t = C64::new(0.0, 0.0);
                    for n in 0..dim {
                        t += row[n] * c[n];
                    }
                    s += c[m].conj() * t;
                }
                s.re
            }
        };
        v.clamp(0.0, 1.0)
    });
    QuasiDistribution {
        ordering: Ordering::Antinormal,
        grid: values,
    }
}

/// Glauber-Sudarshan function of a thermal state, (1/n̄) e^{−|α|²/n̄}.
pub fn p_function_thermal(nbar: f64, grid: &PhaseGrid) -> Result<QuasiDistribution> {
    if !nbar.is_finite() || nbar < 0.0 {
        return Err(Error::InvalidParameter(format!("mean number {nbar} must be >= 0")));
    }
    if nbar == 0.0 {
        return Err(Error::Unsupported("the vacuum P function is a delta distribution".into()));
    }
    let values = grid.map(|q, p| (-(q * q + p * p) / (2.0 * nbar)).exp() / nbar);
    let pd = QuasiDistribution {
        ordering: Ordering::Normal,
        grid: values,
    };
    let norm = pd.normalization();
    if !((norm - 1.0).abs() <= 1e-4) {
        return Err(Error::GridTooSmall(format!("P function grid holds mass {norm}")));
    }
    Ok(pd)
}

/// Which phase-space integral represents Tr(ρ₁ − ρ₂)².
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PhaseForm {
    /// ∫∫ (W₁ − W₂)² dq dp/(2π)
    Wigner,
    /// ∫ (Q₁ − Q₂)(P₁ − P₂) d²α/π
    Qp,
    /// ∫∫ (P₁ − P₂)(α)(P₁ − P₂)(β) e^{−|α−β|²} d²α/π d²β/π
    Pp,
}

impl std::str::FromStr for PhaseForm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "wigner" | "ww" => Ok(PhaseForm::Wigner),
            "qp" => Ok(PhaseForm::Qp),
            "pp" => Ok(PhaseForm::Pp),
            _ => Err(Error::Parse(format!("unknown phase-space form '{s}'"))),
        }
    }
}

#[derive(Debug, Clone, Copy)]
pub struct PhaseSpaceOptions {
    /// Fock cutoff; `None` picks the adaptive dimension of the pair.
    pub dim: Option<usize>,
    /// Points per axis (odd).
    pub points: usize,
}

impl Default for PhaseSpaceOptions {
    fn default() -> Self {
        PhaseSpaceOptions {
            dim: None,
            points: DEFAULT_POINTS,
        }
    }
}

fn thermal_nbar(s: &StateSpec, form: PhaseForm) -> Result<f64> {
    match s {
        StateSpec::Thermal(n) if *n > 0.0 => Ok(*n),
        _ => Err(Error::Unsupported(format!(
            "{form:?} form needs thermal states with a regular P function, got {s}"
        ))),
    }
}

/// Hilbert-Schmidt distance from a phase-space integral.
pub fn hs_from_phase_space(a: &StateSpec, b: &StateSpec, form: PhaseForm, opts: &PhaseSpaceOptions) -> Result<f64> {
    a.validate()?;
    b.validate()?;
    let (na, nb) = match form {
        PhaseForm::Wigner => (0.0, 0.0),
        _ => (thermal_nbar(a, form)?, thermal_nbar(b, form)?),
    };
    let dim = match opts.dim {
        Some(d) => d,
        None => adaptive_dim(a, DEFAULT_TAIL_TOL)?.max(adaptive_dim(b, DEFAULT_TAIL_TOL)?),
    };
    let grid = PhaseGrid::for_dim(dim, opts.points)?;
    let d2 = match form {
        PhaseForm::Wigner => {
            let wa = wigner(&a.density(dim)?, &grid)?;
            let wb = wigner(&b.density(dim)?, &grid)?;
            let diff = wa.grid.zip(&wb.grid, |x, y| (x - y) * (x - y))?;
            diff.integrate() / (2.0 * PI)
        }
        PhaseForm::Qp => {
            let qa = husimi_q(&a.density(dim)?, &grid);
            let qb = husimi_q(&b.density(dim)?, &grid);
            let pa = p_function_thermal(na, &grid)?;
            let pb = p_function_thermal(nb, &grid)?;
            let dq = qa.grid.zip(&qb.grid, |x, y| x - y)?;
            let dp = pa.grid.zip(&pb.grid, |x, y| x - y)?;
            dq.zip(&dp, |x, y| x * y)?.integrate() / (2.0 * PI)
        }
        PhaseForm::Pp => {
            let pa = p_function_thermal(na, &grid)?;
            let pb = p_function_thermal(nb, &grid)?;
            let dp = pa.grid.zip(&pb.grid, |x, y| x - y)?;
            gaussian_pair_integral(&dp) / (4.0 * PI * PI)
        }
    };
    Ok(d2.max(0.0).sqrt())
}

/// ∫∫ f(q,p) f(q',p') e^{−((q−q')² + (p−p')²)/2} dq dp dq' dp', using the
/// separability of the kernel.
fn gaussian_pair_integral(f: &PhaseGrid) -> f64 {
    let (nq, np) = (f.nq, f.np);
    let wq = simpson_weights(nq, f.dq()).expect("odd grid");
    let wp = simpson_weights(np, f.dp()).expect("odd grid");
    let kq: Vec<f64> = (0..nq * nq)
        .map(|ij| {
            let d = f.q(ij / nq) - f.q(ij % nq);
            (-0.5 * d * d).exp()
        })
        .collect();
    let kp: Vec<f64> = (0..np * np)
        .map(|ij| {
            let d = f.p(ij / np) - f.p(ij % np);
            (-0.5 * d * d).exp()
        })
        .collect();
    // g = weighted f, t = g convolved along p, then along q
    let g: Vec<f64> = (0..nq * np).map(|ij| f.values[ij] * wq[ij / np] * wp[ij % np]).collect();
    let mut t = vec![0.0; nq * np];
    for i in 0..nq {
        for j in 0..np {
            let krow = &kp[j * np..(j + 1) * np];
            t[i * np + j] = g[i * np..(i + 1) * np].iter().zip(krow).map(|(a, b)| a * b).sum();
        }
    }
    let mut s = 0.0;
    for i in 0..nq {
        for j in 0..np {
            let mut c = 0.0;
            for k in 0..nq {
                c += kq[i * nq + k] * t[k * np + j];
            }
            s += g[i * np + j] * c;
        }
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::closed_forms;
    use crate::distances::hilbert_schmidt;
    use crate::fock_core::outer;
    use crate::states::{coherent, fock, thermal};

    fn at(w: &QuasiDistribution, q: f64, p: f64) -> f64 {
        w.grid.interpolate(q, p)
    }

    #[test]
    fn vacuum_wigner() {
        let grid = PhaseGrid::for_dim(8, 129).unwrap();
        let w = wigner(&outer(&fock(0, 8).unwrap()), &grid).unwrap();
        assert!((w.normalization() - 1.0).abs() < 1e-9);
        assert!((w.grid.value(64, 64) - 2.0).abs() < 1e-9);
        let max = w.grid.values().iter().cloned().fold(f64::MIN, f64::max);
        assert_eq!(max, w.grid.value(64, 64));
        let err = (at(&w, 0.7, -0.4) - 2.0 * (-0.65f64).exp()).abs();
        assert!(err < 1e-4, "{err}");
    }

    #[test]
    fn fock_one_is_negative_at_origin() {
        let grid = PhaseGrid::for_dim(8, 129).unwrap();
        let w = wigner(&outer(&fock(1, 8).unwrap()), &grid).unwrap();
        assert!((w.grid.value(64, 64) + 2.0).abs() < 1e-9);
    }

    #[test]
    fn coherent_peak_location() {
        let alpha = C64::new(0.9, -0.6);
        let grid = PhaseGrid::for_dim(24, 129).unwrap();
        let w = wigner(&outer(&coherent(alpha, 24).unwrap()), &grid).unwrap();
        let (mut bi, mut bj, mut best) = (0, 0, f64::MIN);
        for i in 0..grid.nq() {
            for j in 0..grid.np() {
                if w.grid.value(i, j) > best {
                    (bi, bj, best) = (i, j, w.grid.value(i, j));
                }
            }
        }
        let s2 = 2f64.sqrt();
        assert!((grid.q(bi) - s2 * alpha.re).abs() <= grid.dq());
        assert!((grid.p(bj) - s2 * alpha.im).abs() <= grid.dp());
    }

    #[test]
    fn wigner_marginal_is_position_density() {
        let dim = 24;
        let psi = crate::states::cat(C64::new(1.2, 0.3), 0.8, dim).unwrap();
        let rho = outer(&psi);
        let grid = PhaseGrid::for_dim(dim, DEFAULT_POINTS).unwrap();
        let w = wigner(&rho, &grid).unwrap();
        let wp = simpson_weights(grid.np(), grid.dp()).unwrap();
        for i in (0..grid.nq()).step_by(16) {
            let q = grid.q(i);
            let marg: f64 = (0..grid.np()).map(|j| wp[j] * w.grid.value(i, j)).sum::<f64>() / (2.0 * PI);
            let e = oscillator::eigenfunctions(dim, q);
            let amp: C64 = psi.amplitudes().iter().zip(&e).map(|(c, e)| c * e).sum();
            assert!((marg - amp.norm_sqr()).abs() < 1e-4, "q = {q}");
        }
    }

    #[test]
    fn grid_too_small() {
        let grid = PhaseGrid::symmetric(1.0, 33).unwrap();
        let rho = outer(&coherent(C64::new(2.0, 0.0), 40).unwrap());
        assert!(matches!(wigner(&rho, &grid), Err(Error::GridTooSmall(_))));
        assert!(PhaseGrid::symmetric(1.0, 32).is_err());
        assert!(PhaseGrid::symmetric(1.0, 15).is_err());
    }

    #[test]
    fn husimi_examples() {
        let alpha = C64::new(0.5, 0.5);
        let grid = PhaseGrid::symmetric(1.0 / 2f64.sqrt(), 17).unwrap();
        let q = husimi_q(&outer(&coherent(alpha, 32).unwrap()), &grid);
        assert!((q.grid.value(16, 16) - 1.0).abs() < 1e-12);
        assert!(q.grid.values().iter().all(|v| (0.0..=1.0).contains(v)));

        let grid = PhaseGrid::for_dim(64, 65).unwrap();
        let qt = husimi_q(&thermal(1.5, 64).unwrap(), &grid);
        assert!((qt.grid.value(32, 32) - 1.0 / 2.5).abs() < 1e-12);
        assert!((qt.normalization() - 1.0).abs() < 1e-6);
    }

    #[test]
    fn thermal_p_function() {
        let nbar = 1.3;
        let grid = PhaseGrid::symmetric(14.0, 257).unwrap();
        let p = p_function_thermal(nbar, &grid).unwrap();
        assert!((p.normalization() - 1.0).abs() < 1e-4);
        assert!((p.grid.value(128, 128) - 1.0 / nbar).abs() < 1e-14);
        // ρ_00 = ∫ P(α) |⟨0|α⟩|² d²α/π
        let rho00 = p.grid.map(|q, pp| p.grid.interpolate(q, pp) * (-(q * q + pp * pp) / 2.0).exp());
        assert!((rho00.integrate() / (2.0 * PI) - 1.0 / (1.0 + nbar)).abs() < 1e-6);
        assert!(matches!(p_function_thermal(0.0, &grid), Err(Error::Unsupported(_))));
        let small = PhaseGrid::symmetric(2.0, 33).unwrap();
        assert!(matches!(p_function_thermal(3.0, &small), Err(Error::GridTooSmall(_))));
    }

    #[test]
    fn phase_space_hs_examples() {
        let opts = PhaseSpaceOptions::default();
        let a: StateSpec = "coherent:0.5".parse().unwrap();
        let b: StateSpec = "coherent:-0.5".parse().unwrap();
        let want = closed_forms::coherent_pair(C64::new(0.5, 0.0), C64::new(-0.5, 0.0)).get("hs").unwrap();
        let got = hs_from_phase_space(&a, &b, PhaseForm::Wigner, &opts).unwrap();
        assert!((got - want).abs() < 1e-4, "{got} vs {want}");

        let t1: StateSpec = "thermal:1".parse().unwrap();
        let t2: StateSpec = "thermal:2".parse().unwrap();
        for form in [PhaseForm::Pp, PhaseForm::Qp, PhaseForm::Wigner] {
            let got = hs_from_phase_space(&t1, &t2, form, &opts).unwrap();
            assert!((got - 0.18257418583505536).abs() < 1e-4, "{form:?}: {got}");
            assert!(hs_from_phase_space(&t1, &t1, form, &opts).unwrap() < 1e-6);
        }
        assert!(matches!(
            hs_from_phase_space(&a, &t1, PhaseForm::Pp, &opts),
            Err(Error::Unsupported(_))
        ));
        let vac: StateSpec = "thermal:0".parse().unwrap();
        assert!(matches!(
            hs_from_phase_space(&vac, &t1, PhaseForm::Qp, &opts),
            Err(Error::Unsupported(_))
        ));
    }

    #[test]
    fn wigner_form_matches_matrix_hs() {
        let opts = PhaseSpaceOptions::default();
        for (a, b) in [("fock:2", "fock:5"), ("cat:1.2,0,1.5", "squeezed:0.5,0.2"), ("phase:0.4,0.3", "fock:1")] {
            let sa: StateSpec = a.parse().unwrap();
            let sb: StateSpec = b.parse().unwrap();
            let dim = 48;
            let want = hilbert_schmidt(&sa.density(dim).unwrap(), &sb.density(dim).unwrap()).unwrap();
            let got = hs_from_phase_space(&sa, &sb, PhaseForm::Wigner, &opts).unwrap();
            assert!((got - want).abs() < 1e-4, "{a} vs {b}: {got} vs {want}");
        }
    }

    #[test]
    fn csv_export() {
        let grid = PhaseGrid::symmetric(1.0, 17).unwrap().map(|q, p| q + p);
        let mut buf = Vec::new();
        grid.write_csv(&mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(text.lines().count(), 1 + 17 * 17);
        assert_eq!(text.lines().nth(1).unwrap(), "-1,-1,-2");
    }
}
