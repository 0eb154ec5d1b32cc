//! Extremal configurations.
//!
//! * Moment-curve points with alternating signs, `y_i = (−1)^i (1, i, i², …, i^N)`
//!   for `i = 1, …, n`. Any `N` of them together with a further point give a
//!   signed Vandermonde determinant, and the remaining points alternate sides
//!   of every circle through `N` of them. Stored 0-based: entry `k` is `y_{k+1}`.
//! * Antipodal pairs (plus one stray point for odd `n`), which cap every open
//!   hemisphere at `⌈n/2⌉` points.

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive};
use rand::Rng;
use thiserror::Error;

use crate::geometry::{antipode, exact_det_sign, sample_uniform_point, DetSign, GeometryError, IntegerVector, SpherePoint};
use crate::hemisphere::{next_combination, Configuration, HemisphereError};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ConstructionError {
    #[error("invalid construction parameters N={dim}, n={n}: {reason}")]
    InvalidParameters { dim: usize, n: usize, reason: &'static str },
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error(transparent)]
    Hemisphere(#[from] HemisphereError),
}

pub type Result<T, E = ConstructionError> = std::result::Result<T, E>;

/// Integer points together with their normalized copies on the sphere.
#[derive(Debug, Clone, PartialEq)]
pub struct ExactConfiguration {
    dim: usize,
    integer_points: Vec<IntegerVector>,
    normalized: Configuration,
}

impl ExactConfiguration {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn integer_points(&self) -> &[IntegerVector] {
        &self.integer_points
    }

    pub fn normalized(&self) -> &Configuration {
        &self.normalized
    }

    pub fn len(&self) -> usize {
        self.integer_points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.integer_points.is_empty()
    }

    /// Exact signs of `det(y_S; y_r)` for every `r ∉ subset`, in increasing `r`.
    /// `subset` must be sorted and hold `N` distinct indices.
    pub fn subset_signs(&self, subset: &[usize]) -> Result<Vec<DetSign>> {
        if subset.len() != self.dim || subset.windows(2).any(|w| w[0] >= w[1]) || subset.iter().any(|&i| i >= self.len()) {
            return Err(ConstructionError::InvalidParameters {
                dim: self.dim,
                n: self.len(),
                reason: "subset must be N sorted distinct indices",
            });
        }
        let mut rows: Vec<IntegerVector> = subset.iter().map(|&i| self.integer_points[i].clone()).collect();
        rows.push(self.integer_points[0].clone());
        let mut signs = Vec::with_capacity(self.len() - self.dim);
        for r in (0..self.len()).filter(|r| !subset.contains(r)) {
            rows[self.dim] = self.integer_points[r].clone();
            signs.push(exact_det_sign(&rows)?);
        }
        Ok(signs)
    }
}

/// The alternating moment-curve configuration of `n > N` points on `S^N`.
pub fn vandermonde_config(dim: usize, n: usize) -> Result<ExactConfiguration> {
    if dim == 0 {
        return Err(ConstructionError::InvalidParameters { dim, n, reason: "N must be at least 1" });
    }
    if n <= dim {
        return Err(ConstructionError::InvalidParameters { dim, n, reason: "need n > N" });
    }
    let mut integer_points = Vec::with_capacity(n);
    let mut points = Vec::with_capacity(n);
    for i in 1..=n {
        let base = BigInt::from(i);
        let sign = if i % 2 == 0 { BigInt::one() } else { -BigInt::one() };
        let mut power = BigInt::one();
        let mut entries = Vec::with_capacity(dim + 1);
        for _ in 0..=dim {
            entries.push(&sign * &power);
            power *= &base;
        }
        // Scale by the largest magnitude before converting, so i^N may exceed f64 range.
        let top = entries.last().map(|e: &BigInt| e.magnitude().clone()).unwrap_or_default();
        let approx: Vec<f64> = entries.iter().map(|e| scaled_ratio(e, &top)).collect();
        points.push(SpherePoint::normalize(approx)?);
        integer_points.push(IntegerVector::new(entries)?);
    }
    let normalized = Configuration::new(dim, points)?.with_label(format!("vandermonde N={dim} n={n}"));
    Ok(ExactConfiguration { dim, integer_points, normalized })
}

// e / top as f64 for |e| ≤ top, without overflowing on huge integers.
fn scaled_ratio(e: &BigInt, top: &num_bigint::BigUint) -> f64 {
    let bits = top.bits();
    let shift = bits.saturating_sub(60);
    let num = (e >> shift).to_f64().unwrap_or(0.0);
    let den = (top >> shift).to_f64().unwrap_or(1.0);
    num / den
}

/// Checks, exactly, that for every `N`-subset the determinant signs of the
/// remaining points strictly alternate in index order.
pub fn verify_vandermonde(dim: usize, n: usize) -> Result<bool> {
    let exact = vandermonde_config(dim, n)?;
    let mut subset: Vec<usize> = (0..dim).collect();
    loop {
        let signs = exact.subset_signs(&subset)?;
        let alternating = signs.iter().all(|s| *s != DetSign::Zero) && signs.windows(2).all(|w| w[0] == w[1].flipped());
        if !alternating {
            return Ok(false);
        }
        if !next_combination(&mut subset, n) {
            return Ok(true);
        }
    }
}

/// `⌊n/2⌋` random points each followed by its antipode, then one extra
/// random point when `n` is odd.
pub fn antipodal_config<R: Rng + ?Sized>(dim: usize, n: usize, rng: &mut R) -> Result<Configuration> {
    if dim == 0 || n == 0 {
        return Err(ConstructionError::InvalidParameters { dim, n, reason: "need N ≥ 1 and n ≥ 1" });
    }
    let mut points = Vec::with_capacity(n);
    for _ in 0..n / 2 {
        let x = sample_uniform_point(dim, rng)?;
        points.push(antipode(&x));
        points.insert(points.len() - 1, x);
    }
    if n % 2 == 1 {
        points.push(sample_uniform_point(dim, rng)?);
    }
    Ok(Configuration::new(dim, points)?.with_label(format!("antipodal N={dim} n={n}")))
}
