//! State families in the truncated number basis.

pub mod moments;
pub mod spec;

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::fock_core::{outer, DensityOperator, FockVector, C64};

pub use moments::{moment, reconstruct_from_moments, MomentTable, Reconstruction};
pub use spec::StateSpec;

/// Default bound on the photon-number mass discarded by truncation.
pub const DEFAULT_TAIL_TOL: f64 = 1e-12;
/// Largest truncation dimension handed out by [`adaptive_dim`].
pub const MAX_DIM: usize = 512;
/// Modulus bound for squeezing and phase-state parameters.
pub const MODULUS_LIMIT: f64 = 1.0 - 1e-9;

/// A constructed state, pure or mixed.
#[derive(Debug, Clone, PartialEq)]
pub enum State {
    Pure(FockVector),
    Mixed(DensityOperator),
}

impl State {
    pub fn dim(&self) -> usize {
        match self {
            State::Pure(v) => v.dim(),
            State::Mixed(r) => r.dim(),
        }
    }

    pub fn density(&self) -> DensityOperator {
        match self {
            State::Pure(v) => outer(v),
            State::Mixed(r) => r.clone(),
        }
    }

    pub fn as_pure(&self) -> Option<&FockVector> {
        match self {
            State::Pure(v) => Some(v),
            State::Mixed(_) => None,
        }
    }

    pub fn mean_number(&self) -> f64 {
        match self {
            State::Pure(v) => v.mean_number(),
            State::Mixed(r) => r.mean_number(),
        }
    }
}

fn check_tail(tail: f64, dim: usize) -> Result<()> {
    if tail >= DEFAULT_TAIL_TOL {
        Err(Error::TailMass {
            dim,
            tail,
            tol: DEFAULT_TAIL_TOL,
        })
    } else {
        Ok(())
    }
}

fn check_dim(dim: usize) -> Result<()> {
    if dim == 0 {
        Err(Error::EmptyDimension)
    } else {
        Ok(())
    }
}

fn check_complex(name: &str, z: C64) -> Result<()> {
    if z.re.is_finite() && z.im.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!("{name} must be finite")))
    }
}

fn check_modulus(name: &str, z: C64) -> Result<()> {
    check_complex(name, z)?;
    if z.norm() >= MODULUS_LIMIT {
        Err(Error::InvalidParameter(format!(
            "|{name}| = {} must be below {MODULUS_LIMIT}",
            z.norm()
        )))
    } else {
        Ok(())
    }
}

fn check_nbar(nbar: f64) -> Result<()> {
    if nbar.is_finite() && nbar >= 0.0 {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!("mean photon number {nbar} must be >= 0")))
    }
}

/// Number state |n⟩.
pub fn fock(n: usize, dim: usize) -> Result<FockVector> {
    check_dim(dim)?;
    if n >= dim {
        return Err(Error::InvalidParameter(format!(
            "photon number {n} does not fit in dimension {dim}"
        )));
    }
    let mut amp = vec![C64::new(0.0, 0.0); dim];
    amp[n] = C64::new(1.0, 0.0);
    FockVector::new(amp)
}

fn coherent_amplitudes(alpha: C64, dim: usize) -> Vec<C64> {
    let mut amp = Vec::with_capacity(dim);
    amp.push(C64::new((-alpha.norm_sqr() / 2.0).exp(), 0.0));
    for n in 1..dim {
        let prev = amp[n - 1];
        amp.push(prev * alpha / (n as f64).sqrt());
    }
    amp
}

/// Glauber coherent state |α⟩.
pub fn coherent(alpha: C64, dim: usize) -> Result<FockVector> {
    check_dim(dim)?;
    check_complex("alpha", alpha)?;
    check_tail(poisson_tail(alpha.norm_sqr(), dim), dim)?;
    Ok(FockVector::normalized(coherent_amplitudes(alpha, dim))?.with_canonical_phase())
}

/// Coherent amplitudes dressed with an arbitrary phase table φ(n).
pub fn generalized_coherent(alpha: C64, phases: &[f64], dim: usize) -> Result<FockVector> {
    check_dim(dim)?;
    check_complex("alpha", alpha)?;
    if phases.len() < dim {
        return Err(Error::InvalidParameter(format!(
            "phase table has {} entries, dimension {dim} needs at least as many",
            phases.len()
        )));
    }
    check_tail(poisson_tail(alpha.norm_sqr(), dim), dim)?;
    let amp = coherent_amplitudes(alpha, dim)
        .into_iter()
        .zip(phases)
        .map(|(c, &p)| c * C64::from_polar(1.0, p))
        .collect();
    Ok(FockVector::normalized(amp)?.with_canonical_phase())
}

/// Phase table φ(2k) = 0, φ(2k+1) = −π/2.
pub fn yurke_stoler_phases(len: usize) -> Vec<f64> {
    (0..len).map(|n| if n.is_multiple_of(2) { 0.0 } else { -PI / 2.0 }).collect()
}

fn cat_norm(alpha: C64, phi: f64) -> f64 {
    1.0 + phi.cos() * (-2.0 * alpha.norm_sqr()).exp()
}

/// (|α⟩ + e^{iφ}|−α⟩), normalized.
pub fn cat(alpha: C64, phi: f64, dim: usize) -> Result<FockVector> {
    check_dim(dim)?;
    check_complex("alpha", alpha)?;
    if !phi.is_finite() {
        return Err(Error::InvalidParameter("phi must be finite".into()));
    }
    let denom = cat_norm(alpha, phi);
    if denom <= 1e-14 {
        return Err(Error::DegenerateNormalization(format!(
            "1 + cos(phi) exp(-2|alpha|^2) = {denom:e}"
        )));
    }
    check_tail(cat_tail(alpha, phi, dim), dim)?;
    let rel = C64::from_polar(1.0, phi);
    let amp = coherent_amplitudes(alpha, dim)
        .into_iter()
        .enumerate()
        .map(|(n, c)| {
            let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
            c * (C64::new(1.0, 0.0) + rel * sign)
        })
        .collect();
    Ok(FockVector::normalized(amp)?.with_canonical_phase())
}

/// Squeezed vacuum with complex parameter ζ, |ζ| < 1.
pub fn squeezed_vacuum(zeta: C64, dim: usize) -> Result<FockVector> {
    check_dim(dim)?;
    check_modulus("zeta", zeta)?;
    check_tail(squeezed_tail(zeta.norm(), dim), dim)?;
    let mut amp = vec![C64::new(0.0, 0.0); dim];
    amp[0] = C64::new((1.0 - zeta.norm_sqr()).powf(0.25), 0.0);
    let mut n = 1;
    while 2 * n < dim {
        let k = 2.0 * n as f64;
        amp[2 * n] = amp[2 * n - 2] * zeta * ((k - 1.0) / k).sqrt();
        n += 1;
    }
    Ok(FockVector::normalized(amp)?.with_canonical_phase())
}

/// Coherent phase state with c_n ∝ εⁿ.
pub fn coherent_phase(epsilon: C64, dim: usize) -> Result<FockVector> {
    check_dim(dim)?;
    check_modulus("epsilon", epsilon)?;
    check_tail(phase_tail(epsilon.norm(), dim), dim)?;
    let mut amp = Vec::with_capacity(dim);
    amp.push(C64::new((1.0 - epsilon.norm_sqr()).sqrt(), 0.0));
    for n in 1..dim {
        let prev = amp[n - 1];
        amp.push(prev * epsilon);
    }
    Ok(FockVector::normalized(amp)?.with_canonical_phase())
}

/// Thermal state with mean photon number n̄.
pub fn thermal(nbar: f64, dim: usize) -> Result<DensityOperator> {
    check_dim(dim)?;
    check_nbar(nbar)?;
    check_tail(thermal_tail(nbar, dim), dim)?;
    let x = nbar / (1.0 + nbar);
    let mut p = Vec::with_capacity(dim);
    let mut term = 1.0 / (1.0 + nbar);
    for _ in 0..dim {
        p.push(term);
        term *= x;
    }
    let s: f64 = p.iter().sum();
    p.iter_mut().for_each(|v| *v /= s);
    DensityOperator::from_diagonal(&p)
}

/// Q = ⟨N²⟩/⟨N⟩ − ⟨N⟩ − 1.
pub fn mandel_q(rho: &DensityOperator) -> Result<f64> {
    let p = rho.probabilities();
    let (n1, n2) = p.iter().enumerate().fold((0.0, 0.0), |(a, b), (n, &pn)| {
        let n = n as f64;
        (a + n * pn, b + n * n * pn)
    });
    if n1 <= 1e-14 {
        return Err(Error::UndefinedMandel);
    }
    Ok(n2 / n1 - n1 - 1.0)
}

/// Σ_{n ≥ d} e^{−x} xⁿ/n!
pub fn poisson_tail(x: f64, d: usize) -> f64 {
    if x == 0.0 {
        return if d == 0 { 1.0 } else { 0.0 };
    }
    let ln_x = x.ln();
    let ln_fact: f64 = (1..=d).map(|k| (k as f64).ln()).sum();
    let mut ln_term = -x + d as f64 * ln_x - ln_fact;
    let mut sum = 0.0;
    let mut n = d;
    loop {
        let term = ln_term.exp();
        sum += term;
        n += 1;
        ln_term += ln_x - (n as f64).ln();
        if (n as f64) > x && (term < 1e-30 || term < sum * 1e-17) {
            break;
        }
        if n > d + 100_000 {
            break;
        }
    }
    sum.min(1.0)
}

/// Photon-number mass of the cat state at n ≥ d.
pub fn cat_tail(alpha: C64, phi: f64, d: usize) -> f64 {
    let x = alpha.norm_sqr();
    if x == 0.0 {
        return 0.0;
    }
    let denom = cat_norm(alpha, phi);
    let c = phi.cos();
    let ln_x = x.ln();
    let ln_fact: f64 = (1..=d).map(|k| (k as f64).ln()).sum();
    let mut ln_term = -x + d as f64 * ln_x - ln_fact;
    let mut sum = 0.0;
    let mut n = d;
    loop {
        let parity = if n.is_multiple_of(2) { 1.0 + c } else { 1.0 - c };
        let pois = ln_term.exp();
        sum += pois * parity / denom;
        n += 1;
        ln_term += ln_x - (n as f64).ln();
        if (n as f64) > x && (pois < 1e-30 || pois < sum * 1e-17) {
            break;
        }
        if n > d + 100_000 {
            break;
        }
    }
    sum.min(1.0)
}

/// Squeezed-vacuum mass on |2n⟩ with 2n ≥ d, for modulus r = |ζ|.
pub fn squeezed_tail(r: f64, d: usize) -> f64 {
    if r == 0.0 {
        return if d == 0 { 1.0 } else { 0.0 };
    }
    let r2 = r * r;
    let n0 = d.div_ceil(2);
    // log of (2n)!/(4ⁿ n!²) r^{2n} at n = n0
    let mut ln_term = 0.5 * (1.0 - r2).ln();
    for n in 1..=n0 {
        let k = 2.0 * n as f64;
        ln_term += (r2 * (k - 1.0) / k).ln();
    }
    let mut term = ln_term.exp();
    let mut sum = 0.0;
    let mut n = n0;
    loop {
        sum += term;
        n += 1;
        let k = 2.0 * n as f64;
        term *= r2 * (k - 1.0) / k;
        // remaining terms shrink at least geometrically with ratio r²
        if term * r2 / (1.0 - r2) < sum * 1e-17 || term < 1e-300 {
            sum += term / (1.0 - r2);
            break;
        }
        if n > n0 + 10_000_000 {
            break;
        }
    }
    sum.min(1.0)
}

/// Coherent-phase-state mass beyond d: |ε|^{2d}.
pub fn phase_tail(r: f64, d: usize) -> f64 {
    (r * r).powi(d as i32)
}

/// Thermal mass beyond d: (n̄/(1+n̄))^d.
pub fn thermal_tail(nbar: f64, d: usize) -> f64 {
    (nbar / (1.0 + nbar)).powi(d as i32)
}

/// Smallest truncation meeting `tail_tol`, padded to a multiple of 8 above it.
pub fn adaptive_dim(spec: &StateSpec, tail_tol: f64) -> Result<usize> {
    adaptive_dim_capped(spec, tail_tol, MAX_DIM)
}

/// As [`adaptive_dim`] with an explicit cap.
pub fn adaptive_dim_capped(spec: &StateSpec, tail_tol: f64, cap: usize) -> Result<usize> {
    if !(tail_tol > 0.0 && tail_tol <= 1e-6) {
        return Err(Error::InvalidParameter(format!(
            "tail tolerance {tail_tol} must lie in (0, 1e-6]"
        )));
    }
    spec.validate()?;
    // The tails are monotone in d, so bisect between a point that fails and
    // one that passes.
    let search_cap = cap.max(8) + 8;
    if spec.tail_mass(search_cap) >= tail_tol {
        return Err(Error::TruncationInfeasible {
            needed: search_cap + 1,
            cap,
        });
    }
    let (mut lo, mut hi) = (0usize, search_cap);
    while hi - lo > 1 {
        let mid = (lo + hi) / 2;
        if spec.tail_mass(mid) < tail_tol {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    let dim = 8 * (hi / 8 + 1);
    if dim > cap {
        return Err(Error::TruncationInfeasible { needed: dim, cap });
    }
    Ok(dim)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(x: f64) -> C64 {
        C64::new(x, 0.0)
    }

    #[test]
    fn fock_examples() {
        let v = fock(0, 4).unwrap();
        assert_eq!(v.amplitudes(), &[r(1.0), r(0.0), r(0.0), r(0.0)]);
        let v = fock(2, 4).unwrap();
        assert_eq!(v.amplitudes(), &[r(0.0), r(0.0), r(1.0), r(0.0)]);
        assert_eq!(fock(5, 16).unwrap().mean_number(), 5.0);
        assert!(matches!(fock(4, 4), Err(Error::InvalidParameter(_))));
    }

    #[test]
    fn coherent_examples() {
        assert_eq!(coherent(r(0.0), 8).unwrap(), fock(0, 8).unwrap());
        let v = coherent(r(1.0), 32).unwrap();
        assert!((v.amplitudes()[0].norm_sqr() - (-1.0f64).exp()).abs() < 1e-14);
        let v = coherent(r(1.5), 64).unwrap();
        assert!((v.mean_number() - 2.25).abs() < 1e-10);
        assert!(matches!(coherent(r(3.0), 10), Err(Error::TailMass { .. })));
    }

    #[test]
    fn generalized_coherent_examples() {
        let alpha = C64::new(0.8, 0.3);
        let zeros = vec![0.0; 40];
        let g = generalized_coherent(alpha, &zeros, 40).unwrap();
        let c = coherent(alpha, 40).unwrap();
        assert!(g.sub_max(&c) < 1e-15);

        let ys = generalized_coherent(alpha, &yurke_stoler_phases(40), 40).unwrap();
        let k = cat(alpha, PI / 2.0, 40).unwrap();
        assert!((ys.inner(&k).unwrap().norm() - 1.0).abs() < 1e-10);

        let ph: Vec<f64> = (0..40).map(|n| (n as f64 * 1.7).sin() * 3.0).collect();
        let g = generalized_coherent(alpha, &ph, 40).unwrap();
        assert!(mandel_q(&outer(&g)).unwrap().abs() < 1e-9);

        assert!(matches!(
            generalized_coherent(alpha, &ph[..10], 40),
            Err(Error::InvalidParameter(_))
        ));
    }

    #[test]
    fn cat_parity_and_mandel() {
        let alpha = C64::new(0.5f64.sqrt(), 0.0);
        let even = cat(alpha, 0.0, 32).unwrap();
        assert!(even.amplitudes().iter().skip(1).step_by(2).all(|z| z.norm() == 0.0));
        let odd = cat(alpha, PI, 32).unwrap();
        assert!(odd.amplitudes().iter().step_by(2).all(|z| z.norm() < 1e-16));
        let q_even = mandel_q(&outer(&even)).unwrap();
        let q_odd = mandel_q(&outer(&odd)).unwrap();
        let want = 2.0 * 0.5 / 1.0f64.sinh();
        assert!((q_even - want).abs() < 1e-12);
        assert!((q_odd + want).abs() < 1e-12);
        assert!((want - 0.8509).abs() < 1e-4);
    }

    #[test]
    fn cat_degenerate() {
        assert!(matches!(
            cat(r(0.0), PI, 8),
            Err(Error::DegenerateNormalization(_))
        ));
        assert!(matches!(
            cat(r(1e-9), PI, 8),
            Err(Error::DegenerateNormalization(_))
        ));
    }

    #[test]
    fn squeezed_examples() {
        assert_eq!(squeezed_vacuum(r(0.0), 8).unwrap(), fock(0, 8).unwrap());
        let v = squeezed_vacuum(r(1.0f64.tanh()), 128).unwrap();
        assert!((v.mean_number() - 1.0f64.sinh().powi(2)).abs() < 1e-10);
        assert!(v.amplitudes().iter().skip(1).step_by(2).all(|z| z.norm() == 0.0));
        assert!(matches!(
            squeezed_vacuum(r(1.0), 8),
            Err(Error::InvalidParameter(_))
        ));
        assert!(matches!(
            squeezed_vacuum(r(0.9), 16),
            Err(Error::TailMass { .. })
        ));
    }

    #[test]
    fn coherent_phase_matches_thermal_diagonal() {
        for &e in &[0.1, 0.5, 0.8] {
            let eps = C64::from_polar(e, 0.7);
            let dim = adaptive_dim(&StateSpec::CoherentPhase(eps), 1e-12).unwrap();
            let v = coherent_phase(eps, dim).unwrap();
            let nbar = e * e / (1.0 - e * e);
            assert!((v.mean_number() - nbar).abs() < 1e-10);
            let t = thermal(nbar, dim).unwrap();
            for (a, b) in v.probabilities().iter().zip(t.probabilities()) {
                assert!((a - b).abs() < 1e-12);
            }
        }
        assert_eq!(coherent_phase(r(0.0), 4).unwrap(), fock(0, 4).unwrap());
    }

    #[test]
    fn thermal_examples() {
        let t = thermal(0.0, 4).unwrap();
        assert_eq!(t.matrix()[(0, 0)], r(1.0));
        assert_eq!(t.probabilities()[1], 0.0);
        assert!((mandel_q(&thermal(2.0, 120).unwrap()).unwrap() - 2.0).abs() < 1e-9);
        assert!(matches!(thermal(-0.1, 4), Err(Error::InvalidParameter(_))));
        assert!(matches!(thermal(1.0, 10), Err(Error::TailMass { .. })));
    }

    #[test]
    fn mandel_examples() {
        let c = coherent(C64::new(1.2, -0.4), 48).unwrap();
        assert!(mandel_q(&outer(&c)).unwrap().abs() < 1e-9);
        assert!((mandel_q(&outer(&fock(3, 8).unwrap())).unwrap() + 1.0).abs() < 1e-15);
        assert_eq!(
            mandel_q(&outer(&fock(0, 8).unwrap())),
            Err(Error::UndefinedMandel)
        );
    }

    #[test]
    fn adaptive_dim_examples() {
        assert_eq!(adaptive_dim(&StateSpec::Fock(3), 1e-12).unwrap(), 8);
        assert_eq!(adaptive_dim(&StateSpec::Thermal(1.0), 1e-12).unwrap(), 48);

        // Poisson(4): brute-force the smallest d whose tail is below 1e-12.
        let mut p = vec![(-4.0f64).exp()];
        for n in 1..200 {
            let prev = p[n - 1];
            p.push(prev * 4.0 / n as f64);
        }
        let mut d = 0;
        while p[d..].iter().sum::<f64>() >= 1e-12 {
            d += 1;
        }
        assert_eq!(
            adaptive_dim(&StateSpec::Coherent(r(2.0)), 1e-12).unwrap(),
            8 * (d / 8 + 1)
        );
    }

    #[test]
    fn adaptive_dim_errors() {
        assert!(matches!(
            adaptive_dim(&StateSpec::Thermal(100.0), 1e-12),
            Err(Error::TruncationInfeasible { .. })
        ));
        assert!(matches!(
            adaptive_dim(&StateSpec::Thermal(1.0), 1e-3),
            Err(Error::InvalidParameter(_))
        ));
    }

    #[test]
    fn tails_against_direct_sums() {
        let x: f64 = 2.3;
        let mut p = vec![(-x).exp()];
        for n in 1..300 {
            let prev = p[n - 1];
            p.push(prev * x / n as f64);
        }
        for d in [0, 3, 10, 20] {
            let direct: f64 = p[d..].iter().sum();
            assert!((poisson_tail(x, d) - direct).abs() < 1e-15 + 1e-12 * direct);
        }
        let z = 0.6f64;
        let mut q = vec![(1.0 - z * z).sqrt()];
        for n in 1..2000 {
            let k = 2.0 * n as f64;
            let prev = q[n - 1];
            q.push(prev * z * z * (k - 1.0) / k);
        }
        for d in [1usize, 2, 9, 40] {
            let direct: f64 = q[d.div_ceil(2)..].iter().sum();
            assert!((squeezed_tail(z, d) - direct).abs() < 1e-14 + 1e-10 * direct);
        }
    }

    trait SubMax {
        fn sub_max(&self, other: &Self) -> f64;
    }

    impl SubMax for FockVector {
        fn sub_max(&self, other: &Self) -> f64 {
            self.amplitudes()
                .iter()
                .zip(other.amplitudes())
                .map(|(a, b)| (a - b).norm())
                .fold(0.0, f64::max)
        }
    }
}
