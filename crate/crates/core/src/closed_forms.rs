//! Analytic distances for the tabulated state families.
//!
//! Nothing here touches the matrix code: these are independent oracles.

use std::f64::consts::{PI, SQRT_2};

use num_complex::Complex64 as C64;

use crate::distances::Metric;
use crate::error::{Error, Result};
use crate::quadrature::simpson;
use crate::states::StateSpec;

/// One named closed-form value.
#[derive(Debug, Clone, PartialEq)]
pub struct ClosedFormEntry {
    pub key: &'static str,
    pub value: f64,
    /// Asymptotic formula rather than an exact one.
    pub approximation: bool,
    /// False when the parameters sit outside the regime an approximation
    /// is meant for.
    pub in_regime: bool,
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct ClosedFormResult {
    pub entries: Vec<ClosedFormEntry>,
}

impl ClosedFormResult {
    fn exact(mut self, key: &'static str, value: f64) -> Self {
        self.entries.push(ClosedFormEntry {
            key,
            value,
            approximation: false,
            in_regime: true,
        });
        self
    }

    fn approx(mut self, key: &'static str, value: f64, in_regime: bool) -> Self {
        self.entries.push(ClosedFormEntry {
            key,
            value,
            approximation: true,
            in_regime,
        });
        self
    }

    pub fn get(&self, key: &str) -> Option<f64> {
        self.entry(key).map(|e| e.value)
    }

    pub fn entry(&self, key: &str) -> Option<&ClosedFormEntry> {
        self.entries.iter().find(|e| e.key == key)
    }

    pub fn keys(&self) -> impl Iterator<Item = &'static str> + '_ {
        self.entries.iter().map(|e| e.key)
    }
}

fn sqrt0(x: f64) -> f64 {
    x.max(0.0).sqrt()
}

fn factorial(n: u32) -> f64 {
    (1..=n).map(f64::from).product()
}

fn check_unit_disk(name: &str, z: C64) -> Result<()> {
    if z.norm() >= 1.0 || !z.norm().is_finite() {
        Err(Error::InvalidParameter(format!("|{name}| must be below 1")))
    } else {
        Ok(())
    }
}

fn check_nbar(n: f64) -> Result<()> {
    if n >= 0.0 && n.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!("mean photon number {n} must be >= 0")))
    }
}

/// Keys `hs`, `dN`, `Da`.
pub fn coherent_pair(alpha: C64, beta: C64) -> ClosedFormResult {
    let s2 = (alpha - beta).norm_sqr();
    let e = (-s2).exp();
    let dn2 = alpha.norm_sqr() + beta.norm_sqr() - 2.0 * (beta.conj() * alpha).re * e;
    ClosedFormResult::default()
        .exact("hs", SQRT_2 * sqrt0(1.0 - e))
        .exact("dN", sqrt0(dn2))
        .exact("Da", s2.sqrt() / SQRT_2 * (1.0 + e).sqrt())
}

/// Keys `hs`, `dN` between |α⟩ and |m⟩.
pub fn coherent_fock(alpha: C64, m: u32) -> ClosedFormResult {
    let x = alpha.norm_sqr();
    let xm = if m == 0 { 1.0 } else { x.powi(m as i32) };
    let overlap = xm / factorial(m) * (-x).exp();
    let cross = if m == 0 {
        0.0
    } else {
        2.0 * xm / factorial(m - 1) * (-x).exp()
    };
    ClosedFormResult::default()
        .exact("hs", SQRT_2 * sqrt0(1.0 - overlap))
        .exact("dN", sqrt0(m as f64 + x - cross))
}

/// Keys `hs`, `dN`, `DN` between |m⟩ and |n⟩.
pub fn fock_pair(m: u32, n: u32) -> ClosedFormResult {
    let differ = if m == n { 0.0 } else { 1.0 };
    ClosedFormResult::default()
        .exact("hs", differ * SQRT_2)
        .exact("dN", differ * f64::from(m + n).sqrt())
        .exact("DN", (f64::from(n).sqrt() - f64::from(m).sqrt()).abs() / SQRT_2)
}

/// Keys `hs`, `dN`; with equal phases also `hs_samephase`, `dN_samephase`.
pub fn squeezed_pair(z1: C64, z2: C64) -> Result<ClosedFormResult> {
    check_unit_disk("zeta", z1)?;
    check_unit_disk("zeta", z2)?;
    let q = (C64::new(1.0, 0.0) - z1 * z2.conj()).norm();
    let w = ((1.0 - z1.norm_sqr()) * (1.0 - z2.norm_sqr())).sqrt();
    let hs = SQRT_2 * (z1 - z2).norm() / (q * (q + w)).sqrt();
    let dn2 = z1.norm_sqr() / (1.0 - z1.norm_sqr())
        + z2.norm_sqr() / (1.0 - z2.norm_sqr())
        + 2.0 * ((z1 * z2).norm_sqr() - (z1 * z2.conj()).re) / q.powi(3) * w;
    let mut out = ClosedFormResult::default().exact("hs", hs).exact("dN", sqrt0(dn2));
    let same_phase = z1.norm() == 0.0
        || z2.norm() == 0.0
        || ((z1.arg() - z2.arg()).rem_euclid(2.0 * PI)).min((z2.arg() - z1.arg()).rem_euclid(2.0 * PI))
            < 1e-12;
    if same_phase {
        let t1 = z1.norm().atanh();
        let t2 = z2.norm().atanh();
        let d = t1 - t2;
        let hs_p = 2.0 * (0.5 * d).sinh().abs() / d.cosh().sqrt();
        let dn_p2 = t1.sinh().powi(2) + t2.sinh().powi(2)
            - 2.0 * t1.sinh() * t2.sinh() / d.cosh().powi(2);
        out = out.exact("hs_samephase", hs_p).exact("dN_samephase", sqrt0(dn_p2));
    }
    Ok(out)
}

/// Distances among the cat family at fixed α with phases φ₁, φ₂.
///
/// `d_to_vacuum` uses |⟨0|α;φ⟩|² = e^{−|α|²}(1 + cos φ)/(1 + cos φ e^{−2|α|²});
/// the variant `d_to_vacuum_printed` keeps 2(1 − e^{−|α|²}) in the numerator,
/// which only agrees with it at cos φ = 0.
pub fn cat_distances(alpha: C64, phi1: f64, phi2: f64) -> Result<ClosedFormResult> {
    let x = alpha.norm_sqr();
    let e2 = (-2.0 * x).exp();
    let e4 = (-4.0 * x).exp();
    let (c1, c2) = (phi1.cos(), phi2.cos());
    let n1 = 1.0 + c1 * e2;
    let n2 = 1.0 + c2 * e2;
    if n1 <= 1e-14 || n2 <= 1e-14 {
        return Err(Error::DegenerateNormalization(
            "cat normalization vanishes".into(),
        ));
    }
    let dc = 1.0 - (phi1 - phi2).cos();
    let half = (0.5 * (phi1 - phi2).abs()).sin();
    let large = x > 10.0;
    Ok(ClosedFormResult::default()
        .exact("d_to_coherent", sqrt0((1.0 - e4) / n1))
        .exact(
            "d_to_vacuum",
            sqrt0(2.0 * (n1 - (1.0 + c1) * (-x).exp()) / n1),
        )
        .approx("d_to_vacuum_printed", sqrt0(2.0 * (1.0 - (-x).exp()) / n1), c1.abs() < 1e-12)
        .exact("d_between", sqrt0((1.0 - e4) * dc / (n1 * n2)))
        .exact("dN_to_vacuum", sqrt0(x * (1.0 - c1 * e2) / n1))
        .exact("dN_between", sqrt0(x * (1.0 + e4) * dc / (n1 * n2)))
        .approx("d_between_large_alpha", SQRT_2 * half, large)
        .approx("dN_between_large_alpha", SQRT_2 * x.sqrt() * half, large))
}

/// Keys `hs`, `dN` between coherent phase states.
pub fn phase_pair(e1: C64, e2: C64) -> Result<ClosedFormResult> {
    check_unit_disk("epsilon", e1)?;
    check_unit_disk("epsilon", e2)?;
    let hs = SQRT_2 * (e1 - e2).norm() / (C64::new(1.0, 0.0) - e1 * e2.conj()).norm();
    // a₁/x + a₂/y + 2xy(|w|² − Re w)/D² with x = 1 − a₁, y = 1 − a₂,
    // w = ε₁ε₂*, D = |1 − w|², rewritten with δ = |ε₁ − ε₂|² factored out
    // (D = xy + δ) so nearby states do not cancel.
    let (a1, a2) = (e1.norm_sqr(), e2.norm_sqr());
    let (x, y) = (1.0 - a1, 1.0 - a2);
    let delta = (e1 - e2).norm_sqr();
    let d = x * y + delta;
    let dn2 = delta * (x * x * y * y + (a1 * y + a2 * x) * (2.0 * x * y + delta)) / (x * y * d * d);
    Ok(ClosedFormResult::default().exact("hs", hs).exact("dN", sqrt0(dn2)))
}

/// Thermal pair (n̄₁, n̄₂); `dN_min_pseudo` is the phase-aligned coherent
/// phase pair with the same mean photon numbers.
pub fn thermal_pair(n1: f64, n2: f64) -> Result<ClosedFormResult> {
    check_nbar(n1)?;
    check_nbar(n2)?;
    let s = 1.0 + n1 + n2;
    let hs = SQRT_2 * (n1 - n2).abs() / ((1.0 + 2.0 * n1) * (1.0 + 2.0 * n2) * s).sqrt();
    let f = (((1.0 + n1) * (1.0 + n2)).sqrt() + (n1 * n2).sqrt()) / s;
    let bu = SQRT_2 * sqrt0(1.0 - f);
    let dn = (n1 - n2).abs() * (s * s + 2.0 * n1 * n2 * (1.0 + 2.0 * n1) * (1.0 + 2.0 * n2)).sqrt()
        / ((1.0 + 2.0 * n1) * (1.0 + 2.0 * n2) * s);
    let g = 2.0 * (n1 * n2).sqrt();
    let dn_sqrt = sqrt0(n1 + n2 - g * f * f);
    let dn_min = sqrt0(n1 + n2 - g * f * f * f);

    let large = n1.min(n2) > 10.0;
    let close = large && (n1 - n2).abs() < 0.1 * n1.min(n2);
    let root_gap = (n1.sqrt() - n2.sqrt()).abs();
    let sum = n1 + n2;
    let bu_large = if sum > 0.0 { SQRT_2 * root_gap / sum.sqrt() } else { 0.0 };
    let (dn_sqrt_large, dn_min_large) = if sum > 0.0 {
        let p = n1 * n2;
        (
            sqrt0(sum - 8.0 * p.powf(1.5) / (sum * sum)),
            sqrt0(sum - 16.0 * p * p / sum.powi(3)),
        )
    } else {
        (0.0, 0.0)
    };
    Ok(ClosedFormResult::default()
        .exact("hs", hs)
        .exact("bu", bu)
        .exact("dN", dn)
        .exact("dN_sqrt", dn_sqrt)
        .exact("dN_min_pseudo", dn_min)
        .approx("bu_large_nbar", bu_large, large)
        .approx("dN_sqrt_large_nbar", dn_sqrt_large, large)
        .approx("dN_min_pseudo_large_nbar", dn_min_large, large)
        .approx("dN_sqrt_close", 3f64.sqrt() * root_gap, close)
        .approx("dN_min_pseudo_close", 2.0 * root_gap, close))
}

/// Tomographic measures between |α⟩ and |β⟩ for the weight g(R) = 2e^{−R²};
/// they depend on s = |α − β| only.
pub fn coherent_tomographic(gap: f64) -> ClosedFormResult {
    // No elementary antiderivative. The integrand has |cos θ| kinks, so
    // integrate the smooth quarter period and use the fourfold symmetry.
    let n = 4097;
    let h = 0.5 * PI / (n - 1) as f64;
    let vals: Vec<f64> = (0..n)
        .map(|k| {
            let c = (k as f64 * h).cos();
            (-2.0 * (-0.5 * gap * gap * c * c).exp_m1()).max(0.0).sqrt()
        })
        .collect();
    let hell = 4.0 * simpson(&vals, h).expect("odd node count");
    ClosedFormResult::default()
        .exact("hellinger", hell)
        .exact("kullback", 4.0 * PI * gap * gap)
        .exact("bhattacharyya", PI * gap * gap / 2.0)
        .approx("hellinger_small_gap", 4.0 * gap, gap < 0.1)
        .approx("hellinger_large_gap", 2.0 * PI * SQRT_2, gap > 10.0)
}

// Reading a spec as a member of each family, with |0⟩ belonging to all.

fn as_coherent(s: &StateSpec) -> Option<C64> {
    match s {
        StateSpec::Coherent(a) => Some(*a),
        _ if s.is_vacuum() => Some(C64::new(0.0, 0.0)),
        _ => None,
    }
}

fn as_fock(s: &StateSpec) -> Option<u32> {
    match s {
        StateSpec::Fock(n) => u32::try_from(*n).ok(),
        _ if s.is_vacuum() => Some(0),
        _ => None,
    }
}

fn as_squeezed(s: &StateSpec) -> Option<C64> {
    match s {
        StateSpec::SqueezedVacuum(z) => Some(*z),
        _ if s.is_vacuum() => Some(C64::new(0.0, 0.0)),
        _ => None,
    }
}

fn as_phase(s: &StateSpec) -> Option<C64> {
    match s {
        StateSpec::CoherentPhase(e) => Some(*e),
        _ if s.is_vacuum() => Some(C64::new(0.0, 0.0)),
        _ => None,
    }
}

fn as_thermal(s: &StateSpec) -> Option<f64> {
    match s {
        StateSpec::Thermal(n) => Some(*n),
        _ if s.is_vacuum() => Some(0.0),
        _ => None,
    }
}

/// Closed-form value of `metric` between two specs, when one is tabulated.
pub fn lookup(a: &StateSpec, b: &StateSpec, metric: Metric) -> Option<f64> {
    let both_pure = a.is_pure() && b.is_pure();
    // Metrics that coincide for pure pairs share the pure-state formulas.
    let key = match metric {
        Metric::HilbertSchmidt | Metric::FubiniStudy => "hs",
        Metric::ModifiedHs(p) if p == 1.0 || both_pure => "hs",
        Metric::Polarized => "dN",
        Metric::PolarizedSqrt if both_pure => "dN",
        Metric::PolarizedSqrt => "dN_sqrt",
        Metric::QuasiDa => "Da",
        Metric::QuasiDz => "DN",
        Metric::BuresUhlmann => "bu",
        Metric::ModifiedHs(0.5) => "bu",
        _ => return None,
    };
    if metric == Metric::FubiniStudy && !both_pure {
        return None;
    }

    if let (Some(x), Some(y)) = (as_coherent(a), as_coherent(b)) {
        if let Some(v) = coherent_pair(x, y).get(key) {
            return Some(v);
        }
    }
    if let (Some(m), Some(n)) = (as_fock(a), as_fock(b)) {
        if let Some(v) = fock_pair(m, n).get(key) {
            return Some(v);
        }
    }
    for (p, q) in [(a, b), (b, a)] {
        if let (Some(x), Some(m)) = (as_coherent(p), as_fock(q)) {
            if let Some(v) = coherent_fock(x, m).get(key) {
                return Some(v);
            }
        }
    }
    if let (Some(x), Some(y)) = (as_squeezed(a), as_squeezed(b)) {
        if let Some(v) = squeezed_pair(x, y).ok().and_then(|r| r.get(key)) {
            return Some(v);
        }
    }
    if let (Some(x), Some(y)) = (as_phase(a), as_phase(b)) {
        if let Some(v) = phase_pair(x, y).ok().and_then(|r| r.get(key)) {
            return Some(v);
        }
    }
    if let (Some(x), Some(y)) = (as_thermal(a), as_thermal(b)) {
        if let Some(v) = thermal_pair(x, y).ok().and_then(|r| r.get(key)) {
            return Some(v);
        }
    }
    cat_lookup(a, b, key).or_else(|| cat_lookup(b, a, key))
}

fn cat_lookup(a: &StateSpec, b: &StateSpec, key: &str) -> Option<f64> {
    let StateSpec::Cat { alpha, phi } = a else {
        return None;
    };
    let (cat_key, phi2) = match b {
        StateSpec::Cat { alpha: a2, phi: p2 } if a2 == alpha => match key {
            "hs" => ("d_between", *p2),
            "dN" => ("dN_between", *p2),
            _ => return None,
        },
        _ if b.is_vacuum() => match key {
            "hs" => ("d_to_vacuum", *phi),
            "dN" => ("dN_to_vacuum", *phi),
            _ => return None,
        },
        StateSpec::Coherent(a2) if a2 == alpha && key == "hs" => ("d_to_coherent", *phi),
        _ => return None,
    };
    cat_distances(*alpha, *phi, phi2).ok()?.get(cat_key)
}
