//! Distance and quasidistance functionals on truncated states.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::fock_core::{
    eigh, hermitian_power, hermitian_sqrt, hs_norm_sqr, trace_norm, CMatrix, DensityOperator,
    FockVector, C64,
};
use crate::states::moments::{factorial, MomentTable};
use crate::states::State;

/// Clamps beyond this magnitude set the warning flag of a report.
const CLAMP_WARN: f64 = 1e-9;
/// Below this Tr(Δρ)² the quasidistances are defined as zero.
const QUASI_DEGENERATE: f64 = 1e-14;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PureKind {
    FubiniStudy,
    Minimal,
    Wootters,
}

/// Distance between two rays.
pub fn pure_state_distance(a: &FockVector, b: &FockVector, kind: PureKind) -> Result<f64> {
    let ov = a.inner(b)?.norm().min(1.0);
    Ok(match kind {
        PureKind::FubiniStudy => 2f64.sqrt() * (1.0 - ov * ov).max(0.0).sqrt(),
        PureKind::Minimal => 2f64.sqrt() * (1.0 - ov).max(0.0).sqrt(),
        PureKind::Wootters => ov.acos(),
    })
}

/// Square root of a clamped squared distance, plus whether the clamp was large.
fn clamped_sqrt(sq: f64) -> (f64, bool) {
    if sq >= 0.0 {
        (sq.sqrt(), false)
    } else {
        (0.0, sq < -CLAMP_WARN)
    }
}

fn delta(r1: &DensityOperator, r2: &DensityOperator) -> Result<CMatrix> {
    r1.matrix().sub(r2.matrix())
}

fn hs_sq(r1: &DensityOperator, r2: &DensityOperator) -> Result<f64> {
    Ok(hs_norm_sqr(&delta(r1, r2)?))
}

/// √Tr(ρ₁ − ρ₂)².
pub fn hilbert_schmidt(r1: &DensityOperator, r2: &DensityOperator) -> Result<f64> {
    Ok(clamped_sqrt(hs_sq(r1, r2)?).0)
}

/// Half the trace norm of ρ₁ − ρ₂.
pub fn jmg_distance(r1: &DensityOperator, r2: &DensityOperator) -> Result<f64> {
    Ok(0.5 * trace_norm(&delta(r1, r2)?)?)
}

/// Tr √(√ρ₁ ρ₂ √ρ₁).
pub fn root_fidelity(r1: &DensityOperator, r2: &DensityOperator) -> Result<f64> {
    if r1.dim() != r2.dim() {
        return Err(Error::DimensionMismatch(r1.dim(), r2.dim()));
    }
    let s1 = hermitian_sqrt(r1.matrix())?;
    let inner = s1.matmul(r2.matrix())?.matmul(&s1)?.hermitize();
    let spec = eigh(&inner)?;
    // √ρ₁ρ₂√ρ₁ is PSD by construction; rounding noise is dropped rather than
    // reported.
    Ok(spec
        .eigenvalues
        .iter()
        .filter(|&&l| l > spec.noise_level)
        .map(|l| l.sqrt())
        .sum())
}

fn bu_sq(r1: &DensityOperator, r2: &DensityOperator) -> Result<f64> {
    Ok(2.0 - 2.0 * root_fidelity(r1, r2)?)
}

/// √(2 − 2 Tr √(√ρ₁ ρ₂ √ρ₁)).
pub fn bures_uhlmann(r1: &DensityOperator, r2: &DensityOperator) -> Result<f64> {
    Ok(clamped_sqrt(bu_sq(r1, r2)?).0)
}

fn check_power(p: f64) -> Result<()> {
    if p > 0.0 && p <= 1.0 {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!("power p = {p} must lie in (0, 1]")))
    }
}

fn power(r: &DensityOperator, p: f64) -> Result<CMatrix> {
    if p == 1.0 {
        Ok(r.matrix().clone())
    } else {
        hermitian_power(r.matrix(), p)
    }
}

fn modified_hs_sq(r1: &DensityOperator, r2: &DensityOperator, p: f64) -> Result<f64> {
    check_power(p)?;
    if r1.dim() != r2.dim() {
        return Err(Error::DimensionMismatch(r1.dim(), r2.dim()));
    }
    Ok(hs_norm_sqr(&power(r1, p)?.sub(&power(r2, p)?)?))
}

/// ‖ρ₁ᵖ − ρ₂ᵖ‖₂ for p in (0, 1].
pub fn modified_hs(r1: &DensityOperator, r2: &DensityOperator, p: f64) -> Result<f64> {
    Ok(clamped_sqrt(modified_hs_sq(r1, r2, p)?).0)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PolarizationKind {
    Identity,
    Number,
    CustomDiagonal,
}

/// Diagonal positive reference operator Z.
#[derive(Debug, Clone, PartialEq)]
pub struct PolarizationOperator {
    kind: PolarizationKind,
    diag: Vec<f64>,
}

impl PolarizationOperator {
    pub fn identity(dim: usize) -> Self {
        PolarizationOperator {
            kind: PolarizationKind::Identity,
            diag: vec![1.0; dim],
        }
    }

    /// N = a†a.
    pub fn number(dim: usize) -> Self {
        PolarizationOperator {
            kind: PolarizationKind::Number,
            diag: (0..dim).map(|n| n as f64).collect(),
        }
    }

    pub fn custom_diagonal(diag: Vec<f64>) -> Result<Self> {
        if let Some(bad) = diag.iter().find(|z| !(**z >= 0.0) || !z.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "polarization entries must be finite and nonnegative, got {bad}"
            )));
        }
        Ok(PolarizationOperator {
            kind: PolarizationKind::CustomDiagonal,
            diag,
        })
    }

    pub fn kind(&self) -> PolarizationKind {
        self.kind
    }

    pub fn diag(&self) -> &[f64] {
        &self.diag
    }

    pub fn dim(&self) -> usize {
        self.diag.len()
    }

    fn sqrt(&self) -> Vec<f64> {
        self.diag.iter().map(|z| z.sqrt()).collect()
    }
}

/// Tr(Z Δ²) = Σ_i z_i Σ_j |Δ_ij|² for Hermitian Δ.
fn tr_z_delta_sq(z: &[f64], d: &CMatrix) -> f64 {
    (0..d.dim())
        .map(|i| z[i] * d.row(i).iter().map(|x| x.norm_sqr()).sum::<f64>())
        .sum()
}

fn check_z(z: &PolarizationOperator, dim: usize) -> Result<()> {
    if z.dim() != dim {
        Err(Error::DimensionMismatch(z.dim(), dim))
    } else {
        Ok(())
    }
}

fn polarized_sq(r1: &DensityOperator, r2: &DensityOperator, z: &PolarizationOperator) -> Result<f64> {
    let d = delta(r1, r2)?;
    check_z(z, d.dim())?;
    Ok(tr_z_delta_sq(z.diag(), &d))
}

/// √Tr(Z (ρ₁ − ρ₂)²).
pub fn polarized(r1: &DensityOperator, r2: &DensityOperator, z: &PolarizationOperator) -> Result<f64> {
    Ok(clamped_sqrt(polarized_sq(r1, r2, z)?).0)
}

fn polarized_sqrt_sq(
    r1: &DensityOperator,
    r2: &DensityOperator,
    z: &PolarizationOperator,
) -> Result<f64> {
    if r1.dim() != r2.dim() {
        return Err(Error::DimensionMismatch(r1.dim(), r2.dim()));
    }
    check_z(z, r1.dim())?;
    let d = hermitian_sqrt(r1.matrix())?.sub(&hermitian_sqrt(r2.matrix())?)?;
    Ok(tr_z_delta_sq(z.diag(), &d))
}

/// √Tr(Z (√ρ₁ − √ρ₂)²).
pub fn polarized_sqrt(
    r1: &DensityOperator,
    r2: &DensityOperator,
    z: &PolarizationOperator,
) -> Result<f64> {
    Ok(clamped_sqrt(polarized_sqrt_sq(r1, r2, z)?).0)
}

fn quasi_dz_sq(r1: &DensityOperator, r2: &DensityOperator, z: &PolarizationOperator) -> Result<f64> {
    let d = delta(r1, r2)?;
    check_z(z, d.dim())?;
    let t2 = hs_norm_sqr(&d);
    if t2 < QUASI_DEGENERATE {
        return Ok(0.0);
    }
    // Tr(Δ Z Δ) = Σ_ij z_j |Δ_ij|², same for Z^{1/2}.
    let zs = z.sqrt();
    let (mut tz, mut tzs) = (0.0, 0.0);
    for i in 0..d.dim() {
        for (j, x) in d.row(i).iter().enumerate() {
            let w = x.norm_sqr();
            tz += z.diag()[j] * w;
            tzs += zs[j] * w;
        }
    }
    Ok(tz - tzs * tzs / t2)
}

/// Variance-like quasidistance D_Z.
pub fn quasidistance_dz(
    r1: &DensityOperator,
    r2: &DensityOperator,
    z: &PolarizationOperator,
) -> Result<f64> {
    Ok(clamped_sqrt(quasi_dz_sq(r1, r2, z)?).0)
}

fn quasi_da_sq(r1: &DensityOperator, r2: &DensityOperator) -> Result<f64> {
    let d = delta(r1, r2)?;
    let n = d.dim();
    let t2 = hs_norm_sqr(&d);
    if t2 < QUASI_DEGENERATE {
        return Ok(0.0);
    }
    let mut tn = 0.0;
    let mut ta = C64::new(0.0, 0.0);
    for i in 0..n {
        for j in 0..n {
            tn += j as f64 * d[(i, j)].norm_sqr();
            if j + 1 < n {
                ta += d[(i, j)] * ((j + 1) as f64).sqrt() * d[(j + 1, i)];
            }
        }
    }
    Ok(tn - ta.norm_sqr() / t2)
}

/// Quasidistance built from the annihilation operator.
pub fn quasidistance_da(r1: &DensityOperator, r2: &DensityOperator) -> Result<f64> {
    Ok(clamped_sqrt(quasi_da_sq(r1, r2)?).0)
}

/// Partial sums of the moment series for the squared Hilbert-Schmidt distance.
#[derive(Debug, Clone, PartialEq)]
pub struct MomentSeries {
    /// Squared distance summed through s = 0, 1, ..., s_max.
    pub partial_sums: Vec<f64>,
}

impl MomentSeries {
    pub fn distance(&self) -> f64 {
        self.partial_sums.last().copied().unwrap_or(0.0).max(0.0).sqrt()
    }
}

/// Hilbert-Schmidt distance from differences of normally ordered moments.
pub fn hs_from_moments(m1: &MomentTable, m2: &MomentTable, s_max: usize) -> Result<MomentSeries> {
    let have = m1.cutoff().min(m2.cutoff());
    if have < s_max {
        return Err(Error::TableTooSmall { have, need: s_max });
    }
    let dm = |k: usize, l: usize| m1.get(k, l) - m2.get(k, l);
    let mut partial = Vec::with_capacity(s_max + 1);
    let mut total = 0.0;
    for s in 0..=s_max {
        let sf = factorial(s);
        let mut term = C64::new(0.0, 0.0);
        for k in 0..=s {
            let ck = factorial(k) * factorial(s - k);
            for l in 0..=s {
                let sign = if (s + k + l) % 2 == 0 { 1.0 } else { -1.0 };
                let coef = sign * sf / (ck * factorial(l) * factorial(s - l));
                term += dm(k, l) * dm(s - k, s - l) * coef;
            }
        }
        total += term.re;
        partial.push(total);
    }
    Ok(MomentSeries {
        partial_sums: partial,
    })
}

/// Upper bounds on the distance between ρ and the number state |n⟩.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HsBounds {
    /// √(2n̄); only meaningful for n = 0.
    pub b0: Option<f64>,
    /// √2 (ρ₀₀ + n̄ − n ρ_nn)^{1/2}
    pub bn: f64,
    /// √2 (σ + (n − n̄)²)^{1/2}
    pub bvar: f64,
}

pub fn hs_bounds(rho: &DensityOperator, n: usize) -> Result<HsBounds> {
    if n >= rho.dim() {
        return Err(Error::InvalidParameter(format!(
            "reference number state {n} does not fit in dimension {}",
            rho.dim()
        )));
    }
    let p = rho.probabilities();
    let nbar: f64 = p.iter().enumerate().map(|(k, pk)| k as f64 * pk).sum();
    let n2: f64 = p.iter().enumerate().map(|(k, pk)| (k * k) as f64 * pk).sum();
    let var = n2 - nbar * nbar;
    let nf = n as f64;
    let r2 = 2f64.sqrt();
    Ok(HsBounds {
        b0: (n == 0).then(|| (2.0 * nbar).max(0.0).sqrt()),
        bn: r2 * (p[0] + nbar - nf * p[n]).max(0.0).sqrt(),
        bvar: r2 * (var + (nf - nbar).powi(2)).max(0.0).sqrt(),
    })
}

/// Metric names accepted on the command line.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Metric {
    FubiniStudy,
    Minimal,
    Wootters,
    HilbertSchmidt,
    Jmg,
    BuresUhlmann,
    ModifiedHs(f64),
    Polarized,
    PolarizedSqrt,
    QuasiDz,
    QuasiDa,
}

impl Metric {
    pub const NAMES: [&'static str; 11] = [
        "fs", "minimal", "wootters", "hs", "jmg", "bu", "hs-p", "dn", "dn-sqrt", "DZ", "Da",
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Metric::FubiniStudy => "fs",
            Metric::Minimal => "minimal",
            Metric::Wootters => "wootters",
            Metric::HilbertSchmidt => "hs",
            Metric::Jmg => "jmg",
            Metric::BuresUhlmann => "bu",
            Metric::ModifiedHs(_) => "hs-p",
            Metric::Polarized => "dn",
            Metric::PolarizedSqrt => "dn-sqrt",
            Metric::QuasiDz => "DZ",
            Metric::QuasiDa => "Da",
        }
    }

    pub fn pure_only(&self) -> bool {
        matches!(self, Metric::FubiniStudy | Metric::Minimal | Metric::Wootters)
    }

    /// Evaluates the metric on two constructed states of equal dimension.
    pub fn evaluate(&self, a: &State, b: &State) -> Result<DistanceReport> {
        if a.dim() != b.dim() {
            return Err(Error::DimensionMismatch(a.dim(), b.dim()));
        }
        let dim = a.dim();
        if self.pure_only() {
            let (Some(pa), Some(pb)) = (a.as_pure(), b.as_pure()) else {
                return Err(Error::Unsupported(format!(
                    "metric {} is defined for pure states only",
                    self.name()
                )));
            };
            let kind = match self {
                Metric::FubiniStudy => PureKind::FubiniStudy,
                Metric::Minimal => PureKind::Minimal,
                _ => PureKind::Wootters,
            };
            return Ok(DistanceReport {
                metric: *self,
                value: pure_state_distance(pa, pb, kind)?,
                dim,
                clamp_warning: false,
            });
        }
        let (ra, rb) = (a.density(), b.density());
        let z = PolarizationOperator::number(dim);
        let sq = match self {
            Metric::HilbertSchmidt => hs_sq(&ra, &rb)?,
            Metric::Jmg => {
                let v = jmg_distance(&ra, &rb)?;
                v * v
            }
            Metric::BuresUhlmann => bu_sq(&ra, &rb)?,
            Metric::ModifiedHs(p) => modified_hs_sq(&ra, &rb, *p)?,
            Metric::Polarized => polarized_sq(&ra, &rb, &z)?,
            Metric::PolarizedSqrt => polarized_sqrt_sq(&ra, &rb, &z)?,
            Metric::QuasiDz => quasi_dz_sq(&ra, &rb, &z)?,
            Metric::QuasiDa => quasi_da_sq(&ra, &rb)?,
            Metric::FubiniStudy | Metric::Minimal | Metric::Wootters => unreachable!(),
        };
        let (value, clamp_warning) = clamped_sqrt(sq);
        Ok(DistanceReport {
            metric: *self,
            value,
            dim,
            clamp_warning,
        })
    }
}

impl FromStr for Metric {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "fs" => Metric::FubiniStudy,
            "minimal" => Metric::Minimal,
            "wootters" => Metric::Wootters,
            "hs" => Metric::HilbertSchmidt,
            "jmg" => Metric::Jmg,
            "bu" => Metric::BuresUhlmann,
            "hs-p" => Metric::ModifiedHs(0.5),
            "dn" => Metric::Polarized,
            "dn-sqrt" => Metric::PolarizedSqrt,
            "DZ" => Metric::QuasiDz,
            "Da" => Metric::QuasiDa,
            other => {
                return Err(Error::Parse(format!(
                    "unknown metric `{other}` (expected one of {})",
                    Metric::NAMES.join(", ")
                )))
            }
        })
    }
}

impl fmt::Display for Metric {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Outcome of one metric evaluation.
#[derive(Debug, Clone, PartialEq)]
pub struct DistanceReport {
    pub metric: Metric,
    pub value: f64,
    pub dim: usize,
    /// Set when a negative squared value beyond rounding noise was clamped.
    pub clamp_warning: bool,
}
