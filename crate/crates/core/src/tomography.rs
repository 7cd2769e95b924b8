//! Symplectic tomograms w_{μν}(X), the probability density of μq + νp, and
//! the classical divergences built on them.
//!
//! With R = √(μ² + ν²) and θ = atan2(ν, μ), μq + νp = R·q_θ where
//! q_θ = q cos θ + p sin θ, so w_{μν}(X) = f_θ(X/R)/R for the rotated
//! quadrature density f_θ.

use std::f64::consts::PI;
use std::io::Write;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::fock_core::{eigh, DensityOperator, C64};
use crate::format::g12;
use crate::phase_space::oscillator::eigenfunctions;
use crate::phase_space::{Ordering, QuasiDistribution};
use crate::quadrature::{gauss_laguerre, linspace, periodic_nodes, simpson_weights};
use crate::states::{adaptive_dim, moment, State, StateSpec, DEFAULT_TAIL_TOL};

/// Default number of X samples per tomogram.
pub const X_POINTS: usize = 1025;
pub const DEFAULT_RADIAL_NODES: usize = 48;
pub const DEFAULT_ANGULAR_NODES: usize = 64;

const MIN_R2: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq)]
pub struct Tomogram {
    mu: f64,
    nu: f64,
    x: Vec<f64>,
    w: Vec<f64>,
}

impl Tomogram {
    pub fn new(mu: f64, nu: f64, x: Vec<f64>, w: Vec<f64>) -> Result<Self> {
        check_direction(mu, nu)?;
        if x.len() != w.len() {
            return Err(Error::DimensionMismatch(x.len(), w.len()));
        }
        check_x_grid(&x)?;
        Ok(Tomogram { mu, nu, x, w })
    }

    pub fn mu(&self) -> f64 {
        self.mu
    }

    pub fn nu(&self) -> f64 {
        self.nu
    }

    pub fn x(&self) -> &[f64] {
        &self.x
    }

    pub fn w(&self) -> &[f64] {
        &self.w
    }

    /// ∫ w dX
    pub fn normalization(&self) -> f64 {
        integrate(&self.w, self.x[1] - self.x[0])
    }

    /// ∫ X w dX
    pub fn mean(&self) -> f64 {
        let xw: Vec<f64> = self.x.iter().zip(&self.w).map(|(x, w)| x * w).collect();
        integrate(&xw, self.x[1] - self.x[0])
    }

    /// Writes `mu,nu,X,w` rows with a header.
    pub fn write_csv<W: Write>(&self, mut out: W) -> std::io::Result<()> {
        writeln!(out, "mu,nu,X,w")?;
        let (mu, nu) = (g12(self.mu), g12(self.nu));
        for (x, w) in self.x.iter().zip(&self.w) {
            writeln!(out, "{mu},{nu},{},{}", g12(*x), g12(*w))?;
        }
        Ok(())
    }
}

fn check_direction(mu: f64, nu: f64) -> Result<()> {
    if !(mu * mu + nu * nu > MIN_R2) {
        return Err(Error::InvalidParameter(format!("(mu, nu) = ({mu}, {nu}) is too close to zero")));
    }
    Ok(())
}

fn check_x_grid(x: &[f64]) -> Result<()> {
    if x.len() < 3 {
        return Err(Error::GridTooSmall(format!("{} X points", x.len())));
    }
    let h = x[1] - x[0];
    if !(h > 0.0) || x.windows(2).any(|p| ((p[1] - p[0]) - h).abs() > 1e-9 * h.max(1.0)) {
        return Err(Error::InvalidParameter("X grid must be uniform and increasing".into()));
    }
    Ok(())
}

/// Simpson for odd sample counts, trapezoid otherwise.
fn integrate(v: &[f64], h: f64) -> f64 {
    match simpson_weights(v.len(), h) {
        Ok(w) => v.iter().zip(&w).map(|(a, b)| a * b).sum(),
        Err(_) => h * (v.iter().sum::<f64>() - 0.5 * (v[0] + v[v.len() - 1])),
    }
}

/// X̄ ± 10σ with σ² = (μ² + ν²)/2, the vacuum width.
pub fn x_grid(mu: f64, nu: f64, center: f64, points: usize) -> Vec<f64> {
    let sigma = ((mu * mu + nu * nu) / 2.0).sqrt();
    linspace(center - 10.0 * sigma, center + 10.0 * sigma, points)
}

/// Closed-form tomogram of a Fock, coherent or vacuum state.
pub fn marginal_analytic(spec: &StateSpec, mu: f64, nu: f64, x: &[f64]) -> Result<Tomogram> {
    check_direction(mu, nu)?;
    let src = Analytic::from_spec(spec)?.ok_or_else(|| {
        Error::Unsupported(format!("no closed-form tomogram for {} states", spec.family()))
    })?;
    let r = (mu * mu + nu * nu).sqrt();
    let theta = nu.atan2(mu);
    let w = x.iter().map(|&xv| src.density(theta, xv / r) / r).collect();
    Tomogram::new(mu, nu, x.to_vec(), w)
}

/// Rotated quadrature density f_θ(y) = u†ρu with u_m = e^{iθm} ψ_m(y).
pub fn marginal_density(rho: &DensityOperator, theta: f64, ys: &[f64]) -> Vec<f64> {
    let src = DensitySource::new(rho);
    src.profile(theta, ys)
}

/// Tomogram of a density operator through its rotated quadrature density.
pub fn marginal_from_density(rho: &DensityOperator, mu: f64, nu: f64, x: &[f64]) -> Result<Tomogram> {
    check_direction(mu, nu)?;
    let r = (mu * mu + nu * nu).sqrt();
    let ys: Vec<f64> = x.iter().map(|v| v / r).collect();
    let f = marginal_density(rho, nu.atan2(mu), &ys);
    Tomogram::new(mu, nu, x.to_vec(), f.into_iter().map(|v| v / r).collect())
}

/// Tomogram from a Wigner grid together with a self-check of the quadrature.
#[derive(Debug, Clone)]
pub struct WignerMarginal {
    pub tomogram: Tomogram,
    /// |∫w dX − 1| ≤ 1e−3 and no sample below −1e−6.
    pub converged: bool,
    pub raw_mass: f64,
}

/// w(X) = ∫∫ W(q,p) δ(X − μq − νp) dq dp/(2π), integrating W along the line
/// μq + νp = X (cubic interpolation, Simpson in the arc length).
pub fn marginal_from_wigner(wd: &QuasiDistribution, mu: f64, nu: f64, x: &[f64]) -> Result<WignerMarginal> {
    if wd.ordering != Ordering::Symmetric {
        return Err(Error::InvalidParameter("marginal_from_wigner needs a Wigner grid".into()));
    }
    check_direction(mu, nu)?;
    check_x_grid(x)?;
    let g = &wd.grid;
    let r = (mu * mu + nu * nu).sqrt();
    let (dir_q, dir_p) = (-nu / r, mu / r);
    let ht = 0.5 * g.dq().min(g.dp());
    let (q0, q1, p0, p1) = g.bounds();
    let corners = [(q0, p0), (q0, p1), (q1, p0), (q1, p1)];
    let mut w = Vec::with_capacity(x.len());
    let mut most_negative: f64 = 0.0;
    for &xv in x {
        let (fq, fp) = (xv * mu / (r * r), xv * nu / (r * r));
        let t_max = corners
            .iter()
            .map(|(cq, cp)| ((cq - fq).powi(2) + (cp - fp).powi(2)).sqrt())
            .fold(0.0, f64::max);
        let half = (t_max / ht).ceil().max(1.0) as usize;
        let vals: Vec<f64> = (0..=2 * half)
            .map(|k| {
                let t = (k as f64 - half as f64) * ht;
                g.interpolate(fq + t * dir_q, fp + t * dir_p)
            })
            .collect();
        let v = integrate(&vals, ht) / (2.0 * PI * r);
        most_negative = most_negative.min(v);
        w.push(v.max(0.0));
    }
    let tomogram = Tomogram::new(mu, nu, x.to_vec(), w)?;
    let raw_mass = tomogram.normalization();
    Ok(WignerMarginal {
        converged: (raw_mass - 1.0).abs() <= 1e-3 && most_negative >= -1e-6,
        raw_mass,
        tomogram,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DivergenceKind {
    Hellinger,
    Kolmogorov,
    Bhattacharyya,
    Kullback,
}

impl DivergenceKind {
    pub const NAMES: [&'static str; 4] = ["hellinger", "kolmogorov", "bhattacharyya", "kullback"];

    pub fn name(self) -> &'static str {
        match self {
            DivergenceKind::Hellinger => "hellinger",
            DivergenceKind::Kolmogorov => "kolmogorov",
            DivergenceKind::Bhattacharyya => "bhattacharyya",
            DivergenceKind::Kullback => "kullback",
        }
    }
}

impl FromStr for DivergenceKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "hellinger" => Ok(DivergenceKind::Hellinger),
            "kolmogorov" => Ok(DivergenceKind::Kolmogorov),
            "bhattacharyya" => Ok(DivergenceKind::Bhattacharyya),
            "kullback" => Ok(DivergenceKind::Kullback),
            _ => Err(Error::Parse(format!(
                "unknown divergence '{s}', expected one of {}",
                Self::NAMES.join(", ")
            ))),
        }
    }
}

const KL_FLOOR: f64 = 1e-300;
const KL_SKIP: f64 = 1e-15;

/// Divergence of two densities sampled on the same X grid.
pub fn classical_divergence(a: &Tomogram, b: &Tomogram, kind: DivergenceKind) -> Result<f64> {
    if a.x != b.x {
        return Err(Error::GridMismatch);
    }
    Ok(divergence(&a.w, &b.w, a.x[1] - a.x[0], kind))
}

fn divergence(p: &[f64], q: &[f64], h: f64, kind: DivergenceKind) -> f64 {
    let pts = p.iter().zip(q);
    match kind {
        DivergenceKind::Hellinger => {
            let v: Vec<f64> = pts.map(|(a, b)| (a.max(0.0).sqrt() - b.max(0.0).sqrt()).powi(2)).collect();
            integrate(&v, h).max(0.0).sqrt()
        }
        DivergenceKind::Kolmogorov => {
            let v: Vec<f64> = pts.map(|(a, b)| (a - b).abs()).collect();
            integrate(&v, h)
        }
        DivergenceKind::Bhattacharyya => {
            let v: Vec<f64> = pts.map(|(a, b)| (a.max(0.0) * b.max(0.0)).sqrt()).collect();
            (-integrate(&v, h).ln()).max(0.0)
        }
        DivergenceKind::Kullback => {
            let v: Vec<f64> = pts
                .map(|(&a, &b)| {
                    if a < KL_SKIP && b < KL_SKIP {
                        0.0
                    } else {
                        let (a, b) = (a.max(KL_FLOOR), b.max(KL_FLOOR));
                        (a - b) * (a / b).ln()
                    }
                })
                .collect();
            integrate(&v, h).max(0.0)
        }
    }
}

/// Radial weight g(R) = A e^{−R²/s²}; normalized when ∫₀^∞ g R dR = A s²/2 = 1.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WeightFunction {
    pub amplitude: f64,
    pub width: f64,
}

impl WeightFunction {
    /// g(R) = 2e^{−R²}
    pub fn gaussian_radial() -> Self {
        WeightFunction {
            amplitude: 2.0,
            width: 1.0,
        }
    }

    pub fn eval(&self, r: f64) -> f64 {
        self.amplitude * (-(r / self.width).powi(2)).exp()
    }

    /// ∫₀^∞ g(R) R dR
    pub fn normalization(&self) -> f64 {
        self.amplitude * self.width * self.width / 2.0
    }

    pub fn check(&self) -> Result<()> {
        let n = self.normalization();
        if !(self.amplitude >= 0.0 && self.width > 0.0 && (n - 1.0).abs() <= 1e-10) {
            return Err(Error::WeightNotNormalized(n));
        }
        Ok(())
    }
}

impl Default for WeightFunction {
    fn default() -> Self {
        Self::gaussian_radial()
    }
}

/// Closed-form quadrature densities.
enum Analytic {
    Fock(usize),
    Coherent(C64),
}

impl Analytic {
    fn from_spec(spec: &StateSpec) -> Result<Option<Self>> {
        spec.validate()?;
        if spec.is_vacuum() {
            return Ok(Some(Analytic::Fock(0)));
        }
        Ok(match spec {
            StateSpec::Fock(n) => Some(Analytic::Fock(*n)),
            StateSpec::Coherent(a) => Some(Analytic::Coherent(*a)),
            _ => None,
        })
    }

    fn density(&self, theta: f64, y: f64) -> f64 {
        match self {
            Analytic::Fock(n) => eigenfunctions(n + 1, y)[*n].powi(2),
            Analytic::Coherent(_) => (-(y - self.mean(theta)).powi(2)).exp() / PI.sqrt(),
        }
    }

    fn mean(&self, theta: f64) -> f64 {
        match self {
            Analytic::Fock(_) => 0.0,
            Analytic::Coherent(a) => 2f64.sqrt() * (theta.cos() * a.re + theta.sin() * a.im),
        }
    }

    fn variance(&self) -> f64 {
        match self {
            Analytic::Fock(n) => *n as f64 + 0.5,
            Analytic::Coherent(_) => 0.5,
        }
    }
}

/// Density operator prepared for repeated quadrature densities.
struct DensitySource {
    dim: usize,
    /// Populations when ρ is diagonal.
    diagonal: Option<Vec<f64>>,
    /// (weight, conj(vector)) pairs with ρ = Σ λ |v⟩⟨v|.
    components: Vec<(f64, Vec<C64>)>,
    a1: C64,
    a2: C64,
    n: f64,
}

impl DensitySource {
    fn new(rho: &DensityOperator) -> Self {
        let dim = rho.dim();
        let a1 = moment(rho, 0, 1).unwrap_or_default();
        let a2 = moment(rho, 0, 2).unwrap_or_default();
        let n = rho.mean_number();
        if rho.matrix().is_diagonal() {
            return DensitySource {
                dim,
                diagonal: Some(rho.probabilities()),
                components: Vec::new(),
                a1,
                a2,
                n,
            };
        }
        let spec = eigh(rho.matrix()).expect("Hermitian density operator");
        let floor = spec.noise_level.max(1e-15);
        let components = (0..dim)
            .filter(|&k| spec.eigenvalues[k] > floor)
            .map(|k| {
                let v = (0..dim).map(|m| spec.eigenvectors[(m, k)].conj()).collect();
                (spec.eigenvalues[k], v)
            })
            .collect();
        DensitySource {
            dim,
            diagonal: None,
            components,
            a1,
            a2,
            n,
        }
    }

    fn from_state(state: &State) -> Self {
        match state {
            State::Pure(psi) => {
                let rho = crate::fock_core::outer(psi);
                DensitySource {
                    dim: psi.dim(),
                    diagonal: None,
                    components: vec![(1.0, psi.amplitudes().iter().map(|c| c.conj()).collect())],
                    a1: moment(&rho, 0, 1).unwrap_or_default(),
                    a2: moment(&rho, 0, 2).unwrap_or_default(),
                    n: psi.mean_number(),
                }
            }
            State::Mixed(rho) => Self::new(rho),
        }
    }

    fn mean(&self, theta: f64) -> f64 {
        2f64.sqrt() * (C64::from_polar(1.0, -theta) * self.a1).re
    }

    fn variance(&self, theta: f64) -> f64 {
        let m = self.mean(theta);
        ((C64::from_polar(1.0, -2.0 * theta) * self.a2).re + self.n + 0.5 - m * m).max(0.5)
    }

    fn profile(&self, theta: f64, ys: &[f64]) -> Vec<f64> {
        let dim = self.dim;
        let rotated: Vec<(f64, Vec<C64>)> = self
            .components
            .iter()
            .map(|(lam, v)| {
                let r = v
                    .iter()
                    .enumerate()
                    .map(|(m, c)| c * C64::from_polar(1.0, theta * m as f64))
                    .collect();
                (*lam, r)
            })
            .collect();
        ys.iter()
            .map(|&y| {
                let e = eigenfunctions(dim, y);
                match &self.diagonal {
                    Some(p) => p.iter().zip(&e).map(|(p, e)| p * e * e).sum(),
                    None => rotated
                        .iter()
                        .map(|(lam, v)| {
                            let amp: C64 = v.iter().zip(&e).map(|(c, e)| c * e).sum();
                            lam * amp.norm_sqr()
                        })
                        .sum(),
                }
            })
            .collect()
    }
}

enum Source {
    Analytic(Analytic),
    Density(DensitySource),
}

impl Source {
    fn new(spec: &StateSpec) -> Result<Self> {
        if let Some(a) = Analytic::from_spec(spec)? {
            return Ok(Source::Analytic(a));
        }
        let dim = adaptive_dim(spec, DEFAULT_TAIL_TOL)?;
        Ok(Source::Density(DensitySource::from_state(&spec.build(dim)?)))
    }

    fn range(&self, theta: f64) -> (f64, f64) {
        let (m, v) = match self {
            Source::Analytic(a) => (a.mean(theta), a.variance()),
            Source::Density(d) => (d.mean(theta), d.variance(theta)),
        };
        let s = v.sqrt();
        (m - 10.0 * s, m + 10.0 * s)
    }

    fn profile(&self, theta: f64, ys: &[f64]) -> Vec<f64> {
        match self {
            Source::Analytic(a) => ys.iter().map(|&y| a.density(theta, y)).collect(),
            Source::Density(d) => d.profile(theta, ys),
        }
    }
}

/// D = ∫ R dR ∫ dθ g(R) d(w_a, w_b) with Gauss-Laguerre nodes in R²/s² and
/// a periodic trapezoid in θ.
///
/// Fock, coherent and vacuum states use closed-form tomograms; other families
/// go through their truncated density operators.
pub fn tomographic_distance(
    a: &StateSpec,
    b: &StateSpec,
    kind: DivergenceKind,
    weight: &WeightFunction,
    radial_nodes: usize,
    angular_nodes: usize,
) -> Result<f64> {
    weight.check()?;
    if radial_nodes == 0 || angular_nodes == 0 {
        return Err(Error::InvalidParameter("node counts must be positive".into()));
    }
    let sa = Source::new(a)?;
    let sb = Source::new(b)?;
    let (u, wu) = gauss_laguerre(radial_nodes)?;
    let radial: Vec<(f64, f64)> = u
        .iter()
        .zip(&wu)
        .map(|(u, w)| (weight.width * u.sqrt(), w * weight.normalization()))
        .collect();
    let dtheta = 2.0 * PI / angular_nodes as f64;
    let mut total = 0.0;
    for theta in periodic_nodes(angular_nodes) {
        let (la, ha) = sa.range(theta);
        let (lb, hb) = sb.range(theta);
        let ys = linspace(la.min(lb), ha.max(hb), X_POINTS);
        let fa = sa.profile(theta, &ys);
        let fb = sb.profile(theta, &ys);
        let hy = ys[1] - ys[0];
        let mut acc = 0.0;
        for &(r, w) in &radial {
            let wa: Vec<f64> = fa.iter().map(|v| v / r).collect();
            let wb: Vec<f64> = fb.iter().map(|v| v / r).collect();
            acc += w * divergence(&wa, &wb, r * hy, kind);
        }
        total += acc * dtheta;
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fock_core::outer;
    use crate::phase_space::{wigner, PhaseGrid, DEFAULT_POINTS};
    use crate::states::{coherent, squeezed_vacuum};

    fn spec(s: &str) -> StateSpec {
        s.parse().unwrap()
    }

    fn sup(a: &[f64], b: &[f64]) -> f64 {
        a.iter().zip(b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max)
    }

    #[test]
    fn analytic_spot_values() {
        let x = x_grid(1.0, 0.0, 0.0, 1025);
        let vac = marginal_analytic(&spec("fock:0"), 1.0, 0.0, &x).unwrap();
        assert!((vac.w()[512] - 1.0 / PI.sqrt()).abs() < 1e-14);
        assert!((vac.normalization() - 1.0).abs() < 1e-12);
        let f1 = marginal_analytic(&spec("fock:1"), 1.0, 0.0, &x).unwrap();
        assert!(f1.w()[512].abs() < 1e-14);

        let (mu, nu) = (0.8, -1.3);
        let alpha = C64::new(0.7, 0.4);
        let center = 2f64.sqrt() * (mu * alpha.re + nu * alpha.im);
        let x = x_grid(mu, nu, center, 1025);
        let t = marginal_analytic(&StateSpec::Coherent(alpha), mu, nu, &x).unwrap();
        assert!((t.mean() - center).abs() < 1e-10);
        assert!((t.normalization() - 1.0).abs() < 1e-6);

        // Hermite-weighted Gaussian form for n = 3
        let x = x_grid(mu, nu, 0.0, 1025);
        let t = marginal_analytic(&spec("fock:3"), mu, nu, &x).unwrap();
        let r2 = mu * mu + nu * nu;
        for k in [100, 400, 700] {
            let y = x[k] / r2.sqrt();
            let h3 = 8.0 * y.powi(3) - 12.0 * y;
            let want = (-x[k] * x[k] / r2).exp() / (PI * r2).sqrt() * h3 * h3 / 48.0;
            assert!((t.w()[k] - want).abs() < 1e-12);
        }
        assert!(marginal_analytic(&spec("fock:0"), 0.0, 0.0, &x).is_err());
        assert!(matches!(
            marginal_analytic(&spec("thermal:1"), 1.0, 0.0, &x),
            Err(Error::Unsupported(_))
        ));
    }

    #[test]
    fn density_route_matches_closed_forms() {
        let (mu, nu) = (0.6, 0.9);
        let x = x_grid(mu, nu, 0.0, 513);
        for s in ["fock:2", "coherent:0.5,-0.8", "fock:0"] {
            let sp = spec(s);
            let rho = sp.density(40).unwrap();
            let a = marginal_analytic(&sp, mu, nu, &x).unwrap();
            let d = marginal_from_density(&rho, mu, nu, &x).unwrap();
            assert!(sup(a.w(), d.w()) < 1e-12, "{s}");
        }
        // Real ζ = tanh r stretches q: variance e^{2r}/2 along θ = 0.
        let r: f64 = 0.5;
        let psi = squeezed_vacuum(C64::new(r.tanh(), 0.0), 64).unwrap();
        let x = linspace(-15.0, 15.0, 2049);
        let t = marginal_from_density(&outer(&psi), 1.0, 0.0, &x).unwrap();
        let xw2: Vec<f64> = x.iter().zip(t.w()).map(|(x, w)| x * x * w).collect();
        let var = integrate(&xw2, x[1] - x[0]);
        assert!((var - (2.0 * r).exp() / 2.0).abs() < 1e-9, "{var}");
    }

    #[test]
    fn wigner_route() {
        let dim = 8;
        let grid = PhaseGrid::for_dim(dim, DEFAULT_POINTS).unwrap();
        let x = x_grid(1.0, 0.0, 0.0, X_POINTS);
        for n in 0..2 {
            let sp = StateSpec::Fock(n);
            let wd = wigner(&sp.density(dim).unwrap(), &grid).unwrap();
            let m = marginal_from_wigner(&wd, 1.0, 0.0, &x).unwrap();
            assert!(m.converged);
            assert!((m.tomogram.normalization() - 1.0).abs() < 1e-6);
            let a = marginal_analytic(&sp, 1.0, 0.0, &x).unwrap();
            assert!(sup(m.tomogram.w(), a.w()) < 1e-3, "fock {n}");
        }
        let wd = wigner(&StateSpec::Fock(0).density(dim).unwrap(), &grid).unwrap();
        let h = marginal_from_wigner(&wd, 1.0, 0.0, &x).unwrap();
        let v = marginal_from_wigner(&wd, 0.0, 1.0, &x).unwrap();
        assert!(sup(h.tomogram.w(), v.tomogram.w()) < 1e-6);

        let q = crate::phase_space::husimi_q(&wd_density(), &grid);
        assert!(marginal_from_wigner(&q, 1.0, 0.0, &x).is_err());
    }

    fn wd_density() -> DensityOperator {
        outer(&coherent(C64::new(0.3, 0.0), 8).unwrap())
    }

    #[test]
    fn divergences_of_gaussians() {
        let x = x_grid(1.0, 0.0, 0.0, 2049);
        let a = marginal_analytic(&StateSpec::Coherent(C64::new(0.0, 0.0)), 1.0, 0.0, &x).unwrap();
        for kind in [
            DivergenceKind::Hellinger,
            DivergenceKind::Kolmogorov,
            DivergenceKind::Bhattacharyya,
            DivergenceKind::Kullback,
        ] {
            assert_eq!(classical_divergence(&a, &a, kind).unwrap(), 0.0);
        }
        // σ² = 1/2 and a gap Δ in X
        let gap = 1.1;
        let b = marginal_analytic(&StateSpec::Coherent(C64::new(gap / 2f64.sqrt(), 0.0)), 1.0, 0.0, &x).unwrap();
        let hel = classical_divergence(&a, &b, DivergenceKind::Hellinger).unwrap();
        assert!((hel - (2.0 - 2.0 * (-gap * gap / 4.0).exp()).sqrt()).abs() < 1e-9);
        let bha = classical_divergence(&a, &b, DivergenceKind::Bhattacharyya).unwrap();
        assert!((bha - gap * gap / 4.0).abs() < 1e-9);
        let kl = classical_divergence(&a, &b, DivergenceKind::Kullback).unwrap();
        assert!((kl - 2.0 * gap * gap).abs() < 1e-8);
        let ko = classical_divergence(&a, &b, DivergenceKind::Kolmogorov).unwrap();
        assert!((0.0..=2.0).contains(&ko));

        let other = marginal_analytic(&spec("fock:0"), 1.0, 0.0, &x_grid(1.0, 0.0, 0.5, 2049)).unwrap();
        assert!(matches!(
            classical_divergence(&a, &other, DivergenceKind::Hellinger),
            Err(Error::GridMismatch)
        ));
    }

    #[test]
    fn coherent_pair_limits() {
        let g = WeightFunction::gaussian_radial();
        let d = |a: &str, b: &str, k| tomographic_distance(&spec(a), &spec(b), k, &g, 48, 64).unwrap();
        let small = d("coherent:0.005", "coherent:-0.005", DivergenceKind::Hellinger);
        assert!((small / 0.04 - 1.0).abs() < 0.02, "{small}");
        for s in [0.1, 0.5, 1.0] {
            let a = format!("coherent:{s}");
            let j = d(&a, "fock:0", DivergenceKind::Kullback);
            let b = d(&a, "fock:0", DivergenceKind::Bhattacharyya);
            assert!((j / b / 8.0 - 1.0).abs() < 1e-3);
            assert!((j / (4.0 * PI * s * s) - 1.0).abs() < 1e-3);
        }
        let p1 = d("coherent:1,0.5", "coherent:0.4,-0.3", DivergenceKind::Hellinger);
        let p2 = d("coherent:-1,0", "fock:0", DivergenceKind::Hellinger);
        // The |cos θ| kink makes the trapezoid error depend on the gap phase.
        assert!((p1 / p2 - 1.0).abs() < 2e-3, "{p1} vs {p2}");
    }

    #[test]
    fn weight_normalization() {
        let w = WeightFunction {
            amplitude: 1.0,
            width: 1.0,
        };
        assert!(matches!(
            tomographic_distance(&spec("fock:0"), &spec("fock:1"), DivergenceKind::Hellinger, &w, 8, 8),
            Err(Error::WeightNotNormalized(_))
        ));
        let w = WeightFunction {
            amplitude: 0.5,
            width: 2.0,
        };
        assert!(w.check().is_ok());
    }

    #[test]
    fn mixed_state_through_density() {
        let g = WeightFunction::gaussian_radial();
        let d = tomographic_distance(&spec("thermal:0.5"), &spec("fock:0"), DivergenceKind::Hellinger, &g, 16, 32).unwrap();
        let same =
            tomographic_distance(&spec("thermal:0.5"), &spec("thermal:0.5"), DivergenceKind::Hellinger, &g, 16, 32).unwrap();
        assert!(d > 0.1 && same.abs() < 1e-12);
    }

    #[test]
    fn csv_export() {
        let x = x_grid(1.0, 0.0, 0.0, 5);
        let t = marginal_analytic(&spec("fock:0"), 1.0, 0.0, &x).unwrap();
        let mut buf = Vec::new();
        t.write_csv(&mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(text.lines().next(), Some("mu,nu,X,w"));
        assert_eq!(text.lines().count(), 6);
    }
}
