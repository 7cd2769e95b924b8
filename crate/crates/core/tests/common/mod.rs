//! Seeded random states shared by the integration tests.
#![allow(dead_code)]

use qdist::fock_core::{CMatrix, DensityOperator, FockVector, C64};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn gaussian(rng: &mut ChaCha8Rng) -> C64 {
    C64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
}

/// Ginibre-type mixed state GG†/Tr(GG†) of random rank.
pub fn random_density(rng: &mut ChaCha8Rng, dim: usize) -> DensityOperator {
    let rank = rng.random_range(1..=dim);
    let g: Vec<C64> = (0..dim * rank).map(|_| gaussian(rng)).collect();
    let m = CMatrix::from_fn(dim, |i, j| (0..rank).map(|k| g[i * rank + k] * g[j * rank + k].conj()).sum());
    let tr = m.trace().re;
    DensityOperator::new(m.scale(1.0 / tr).hermitize()).expect("valid random state")
}

pub fn random_pure(rng: &mut ChaCha8Rng, dim: usize) -> FockVector {
    FockVector::normalized((0..dim).map(|_| gaussian(rng)).collect()).expect("nonzero vector")
}

/// Uniform point in the disk |z| ≤ radius.
pub fn random_in_disk(rng: &mut ChaCha8Rng, radius: f64) -> C64 {
    let r = radius * rng.random::<f64>().sqrt();
    C64::from_polar(r, rng.random_range(0.0..std::f64::consts::TAU))
}
