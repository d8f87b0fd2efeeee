//! Checking the symbolic product against the composition oracle.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::endomorphism::{enumerate_end, oracle_multiply_with, Endomorphism, IdentifyOptions};
use crate::error::Result;

/// A pair on which the symbolic and oracle products differ.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MultMismatch {
    pub alpha: Endomorphism,
    pub beta: Endomorphism,
    pub symbolic: String,
    pub oracle: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct MultReport {
    pub n: usize,
    pub pairs: u64,
    /// The first disagreeing pair in enumeration (or sampling) order.
    pub mismatch: Option<MultMismatch>,
}

impl MultReport {
    pub fn passed(&self) -> bool {
        self.mismatch.is_none()
    }
}

fn compare(alpha: &Endomorphism, beta: &Endomorphism, opts: IdentifyOptions) -> Option<MultMismatch> {
    let symbolic = alpha.multiply(beta);
    let oracle = oracle_multiply_with(alpha, beta, opts);
    match (&symbolic, &oracle) {
        (Ok(s), Ok(o)) if s == o => None,
        _ => Some(MultMismatch {
            alpha: *alpha,
            beta: *beta,
            symbolic: symbolic.map_or_else(|e| e.to_string(), |x| x.to_string()),
            oracle: oracle.map_or_else(|e| e.to_string(), |x| x.to_string()),
        }),
    }
}

fn run(n: usize, elements: &[Endomorphism], pairs: &[(u32, u32)], opts: IdentifyOptions) -> MultReport {
    let mismatch = pairs
        .par_iter()
        .find_map_first(|&(i, j)| compare(&elements[i as usize], &elements[j as usize], opts));
    MultReport { n, pairs: pairs.len() as u64, mismatch }
}

/// Every ordered pair of `End(T_n)`.
pub fn multiplication_exhaustive(n: usize, opts: IdentifyOptions) -> Result<MultReport> {
    let elements = enumerate_end(n)?;
    let k = elements.len() as u32;
    let pairs: Vec<(u32, u32)> = (0..k).flat_map(|i| (0..k).map(move |j| (i, j))).collect();
    Ok(run(n, &elements, &pairs, opts))
}

/// `samples` ordered pairs drawn uniformly with a seeded generator.
pub fn multiplication_sampled(n: usize, samples: u64, seed: u64, opts: IdentifyOptions) -> Result<MultReport> {
    let elements = enumerate_end(n)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let k = elements.len() as u32;
    let pairs: Vec<(u32, u32)> = (0..samples).map(|_| (rng.gen_range(0..k), rng.gen_range(0..k))).collect();
    Ok(run(n, &elements, &pairs, opts))
}
