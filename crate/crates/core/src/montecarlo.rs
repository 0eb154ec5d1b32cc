//! Seed-deterministic estimation of `p(N, n)`, the probability that `n`
//! independent uniform points on `S^N` are equator-balanced.
//!
//! Trial `i` draws from its own ChaCha8 stream (key from the seed, stream
//! number `i`), so the success count does not depend on how trials are split
//! between workers.

use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::geometry::{sample_into, GeometryError};
use crate::hemisphere::{HemisphereError, Scanner, DEFAULT_TOL};

/// Configurations redrawn in a row before a trial gives up.
const MAX_RESAMPLES: usize = 1000;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum MonteCarloError {
    #[error("invalid simulation parameters: {0}")]
    InvalidParameters(String),
    #[error("precision is undefined without successes")]
    NoSuccesses,
    #[error("trial {index} hit {MAX_RESAMPLES} degenerate configurations in a row")]
    ResampleLimit { index: u64 },
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error("thread pool: {0}")]
    ThreadPool(String),
}

pub type Result<T, E = MonteCarloError> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MonteCarloEstimate {
    #[serde(rename = "N")]
    pub dim: usize,
    pub n: usize,
    pub trials: u64,
    pub successes: u64,
    pub p_hat: f64,
    /// Binomial (Wald) standard error of `p_hat`.
    pub sigma_p: f64,
    pub inv_p_hat: Option<f64>,
    /// Three standard errors of `1/p`, from the Poisson error on the success count.
    pub precision_3sigma: Option<f64>,
    pub seed: u64,
    /// Wall-clock time; not serialized so that output is reproducible.
    #[serde(skip)]
    pub elapsed_seconds: f64,
}

/// `3 · trials / successes^{3/2}`: a `√S` error on `S` carried to `1/p = T/S`.
pub fn precision_check(trials: u64, successes: u64) -> Result<f64> {
    if successes == 0 {
        return Err(MonteCarloError::NoSuccesses);
    }
    Ok(3.0 * trials as f64 / (successes as f64).powf(1.5))
}

/// Reusable buffers for repeated trials in one dimension.
#[derive(Debug, Clone)]
pub(crate) struct TrialWorkspace {
    dim: usize,
    n: usize,
    scanner: Scanner,
    flat: Vec<f64>,
}

impl TrialWorkspace {
    pub(crate) fn new(dim: usize, n: usize) -> Self {
        Self { dim, n, scanner: Scanner::new(dim), flat: vec![0.0; n * (dim + 1)] }
    }

    fn sample<R: Rng + ?Sized>(&mut self, rng: &mut R) -> Result<(), GeometryError> {
        let m = self.dim + 1;
        for chunk in self.flat.chunks_exact_mut(m) {
            sample_into(self.dim, rng, chunk)?;
        }
        Ok(())
    }

    /// One balanced/unbalanced verdict, redrawing on points found on a circle.
    pub(crate) fn run<R: Rng + ?Sized>(&mut self, rng: &mut R, early_exit: bool) -> Result<bool, Option<GeometryError>> {
        if self.n <= self.dim + 1 {
            return Ok(true);
        }
        for _ in 0..MAX_RESAMPLES {
            self.sample(rng).map_err(Some)?;
            match self.scanner.balance(&self.flat, DEFAULT_TOL, early_exit) {
                Ok(scan) => return Ok(scan.balanced),
                Err(HemisphereError::GeneralPositionViolation { .. }) => continue,
                Err(e) => unreachable!("scan of sampled points failed: {e}"),
            }
        }
        Err(None)
    }

    #[cfg(test)]
    pub(crate) fn points(&self) -> &[f64] {
        &self.flat
    }
}

fn check_dims(dim: usize, n: usize) -> Result<()> {
    if dim == 0 {
        return Err(MonteCarloError::InvalidParameters("N must be at least 1".into()));
    }
    if n == 0 {
        return Err(MonteCarloError::InvalidParameters("n must be at least 1".into()));
    }
    Ok(())
}

/// Samples `n` uniform points on `S^N` and reports whether they are equator-balanced.
pub fn trial<R: Rng + ?Sized>(dim: usize, n: usize, rng: &mut R) -> Result<bool> {
    check_dims(dim, n)?;
    TrialWorkspace::new(dim, n).run(rng, true).map_err(|e| match e {
        Some(g) => g.into(),
        None => MonteCarloError::ResampleLimit { index: 0 },
    })
}

/// Random stream of trial `index` under `seed`.
pub fn trial_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

fn count_range(dim: usize, n: usize, seed: u64, range: std::ops::Range<u64>) -> Result<u64> {
    let mut ws = TrialWorkspace::new(dim, n);
    let mut successes = 0;
    for index in range {
        let mut rng = trial_rng(seed, index);
        match ws.run(&mut rng, true) {
            Ok(true) => successes += 1,
            Ok(false) => {}
            Err(Some(g)) => return Err(g.into()),
            Err(None) => return Err(MonteCarloError::ResampleLimit { index }),
        }
    }
    Ok(successes)
}

/// Runs `trials` independent trials on `workers` threads.
pub fn estimate(dim: usize, n: usize, trials: u64, seed: u64, workers: usize) -> Result<MonteCarloEstimate> {
    check_dims(dim, n)?;
    if trials == 0 {
        return Err(MonteCarloError::InvalidParameters("trials must be at least 1".into()));
    }
    if workers == 0 {
        return Err(MonteCarloError::InvalidParameters("workers must be at least 1".into()));
    }
    let start = Instant::now();
    let pool = rayon::ThreadPoolBuilder::new().num_threads(workers).build().map_err(|e| MonteCarloError::ThreadPool(e.to_string()))?;
    let chunks = (workers as u64 * 16).min(trials);
    let successes = pool.install(|| {
        (0..chunks)
            .into_par_iter()
            .map(|c| count_range(dim, n, seed, c * trials / chunks..(c + 1) * trials / chunks))
            .try_reduce(|| 0, |a, b| Ok(a + b))
    })?;
    Ok(summarize(dim, n, trials, successes, seed, start.elapsed().as_secs_f64()))
}

fn summarize(dim: usize, n: usize, trials: u64, successes: u64, seed: u64, elapsed_seconds: f64) -> MonteCarloEstimate {
    let p_hat = successes as f64 / trials as f64;
    MonteCarloEstimate {
        dim,
        n,
        trials,
        successes,
        p_hat,
        sigma_p: (p_hat * (1.0 - p_hat) / trials as f64).sqrt(),
        inv_p_hat: (successes > 0).then(|| trials as f64 / successes as f64),
        precision_3sigma: precision_check(trials, successes).ok(),
        seed,
        elapsed_seconds,
    }
}
