//! Monte Carlo estimate of the fraction of `Int(Δ)` covered by certified
//! points.
//!
//! Points are drawn uniformly from the open simplex as normalized standard
//! exponentials (a flat Dirichlet sample), rounded to multiples of `2^-53`
//! and then certified exactly. Sample `k` uses its own ChaCha stream keyed
//! by `(seed, k)`, so the count does not depend on scheduling.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::Exp1;
use serde::{Deserialize, Serialize};

use crate::cpn::{certify, ChartPoint};
use crate::rational::{dyadic_round, RatVec};

pub const RATIONALIZE_BITS: u32 = 53;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DensityReport {
    pub n: usize,
    pub samples: u64,
    pub seed: u64,
    pub certified: u64,
    pub fraction: f64,
}

impl DensityReport {
    fn new(n: usize, samples: u64, seed: u64, certified: u64) -> Self {
        DensityReport {
            n,
            samples,
            seed,
            certified,
            fraction: if samples == 0 {
                0.0
            } else {
                certified as f64 / samples as f64
            },
        }
    }
}

fn sample_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

/// Flat Dirichlet sample on the open `n`-simplex, first `n` of `n + 1`
/// normalized exponentials.
pub fn uniform_simplex<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Vec<f64> {
    let e: Vec<f64> = (0..=n).map(|_| rng.sample::<f64, _>(Exp1)).collect();
    let total: f64 = e.iter().sum();
    e[..n].iter().map(|x| x / total).collect()
}

/// The rationalized sample `index`, or `None` if rounding pushed it onto
/// the boundary of `Δ`.
pub fn sample_point(n: usize, seed: u64, index: u64) -> Option<ChartPoint> {
    let mut rng = sample_rng(seed, index);
    let coords = uniform_simplex(&mut rng, n)
        .into_iter()
        .map(|x| dyadic_round(x, RATIONALIZE_BITS))
        .collect();
    ChartPoint::new(0, RatVec::new(coords).ok()?).ok()
}

fn is_certified(n: usize, seed: u64, index: u64) -> bool {
    sample_point(n, seed, index)
        .and_then(|p| certify(&p).ok())
        .is_some_and(|c| c.is_certified())
}

pub fn dn_density_sequential(n: usize, samples: u64, seed: u64) -> DensityReport {
    let certified = (0..samples).filter(|&k| is_certified(n, seed, k)).count() as u64;
    DensityReport::new(n, samples, seed, certified)
}

#[cfg(feature = "parallel")]
pub fn dn_density_parallel(n: usize, samples: u64, seed: u64) -> DensityReport {
    use rayon::prelude::*;
    let certified = (0..samples)
        .into_par_iter()
        .filter(|&k| is_certified(n, seed, k))
        .count() as u64;
    DensityReport::new(n, samples, seed, certified)
}

/// Fraction of `samples` seeded uniform points of `Int(Δ)` that
/// [`certify`] marks as not volume minimizing.
pub fn dn_density(n: usize, samples: u64, seed: u64) -> DensityReport {
    #[cfg(feature = "parallel")]
    {
        dn_density_parallel(n, samples, seed)
    }
    #[cfg(not(feature = "parallel"))]
    {
        dn_density_sequential(n, samples, seed)
    }
}
