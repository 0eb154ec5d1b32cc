//! Exact machinery for the circle (`N = 1`).
//!
//! A diameter rotated through half a turn defines a sequence of semicircle
//! occupancy counts. A configuration is balanced exactly when that sequence
//! stays in `{k, k+1}` (`n = 2k+1`) or `{k, k+1, k+2}` (`n = 2k+2`). Replacing
//! points by antipodes leaves the crossing positions fixed and only toggles
//! whether each crossing is an exit or an entry, which makes the balanced
//! fraction among the `2^n` flips independent of the configuration.

use std::f64::consts::{PI, TAU};
use std::fmt;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::geometry::SpherePoint;
use crate::hemisphere::{Configuration, HemisphereError};

/// Angles closer than this (modulo π) count as coincident or antipodal.
pub const GENERIC_TOL: f64 = 1e-12;

/// Largest `n` accepted by [`flip_enumeration_count`].
pub const MAX_FLIP_POINTS: usize = 24;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum CircleError {
    #[error("circle configuration has no points")]
    Empty,
    #[error("angle {0} is not finite")]
    NonFinite(f64),
    #[error("points {first} and {second} coincide or are antipodal")]
    NonGeneric { first: usize, second: usize },
    #[error("flip enumeration over {n} points exceeds the budget of {max}")]
    BudgetExceeded { n: usize, max: usize },
}

pub type Result<T, E = CircleError> = std::result::Result<T, E>;

/// Points on the unit circle given by their angles in `[0, 2π)`.
#[derive(Debug, Clone, PartialEq)]
pub struct CircleConfiguration {
    angles: Vec<f64>,
}

impl CircleConfiguration {
    /// Angles are in radians and reduced into `[0, 2π)`.
    pub fn new(angles: Vec<f64>) -> Result<Self> {
        if angles.is_empty() {
            return Err(CircleError::Empty);
        }
        if let Some(&a) = angles.iter().find(|a| !a.is_finite()) {
            return Err(CircleError::NonFinite(a));
        }
        Ok(Self { angles: angles.into_iter().map(|a| a.rem_euclid(TAU)).map(|a| if a >= TAU { 0.0 } else { a }).collect() })
    }

    /// Angles of the points of a configuration on `S^1`.
    pub fn from_configuration(c: &Configuration) -> Result<Self, HemisphereError> {
        if c.dim() != 1 {
            return Err(crate::geometry::GeometryError::DimensionMismatch { expected: 2, found: c.dim() + 1 }.into());
        }
        Ok(Self::new(c.points().iter().map(|p| p.coords()[1].atan2(p.coords()[0])).collect()).expect("finite unit vectors"))
    }

    pub fn angles(&self) -> &[f64] {
        &self.angles
    }

    pub fn len(&self) -> usize {
        self.angles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.angles.is_empty()
    }

    /// The same points as a configuration on `S^1 ⊂ ℝ²`.
    pub fn to_configuration(&self) -> Configuration {
        let points = self.angles.iter().map(|a| SpherePoint::normalize(vec![a.cos(), a.sin()]).expect("unit circle point")).collect();
        Configuration::new(1, points).expect("non-empty circle configuration")
    }
}

/// Semicircle occupancy counts while a diameter turns by π.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SweepSequence {
    counts: Vec<usize>,
}

impl SweepSequence {
    pub fn counts(&self) -> &[usize] {
        &self.counts
    }
}

/// A reduced fraction in `[0, 1]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExactProbability {
    numerator: BigUint,
    denominator: BigUint,
}

impl ExactProbability {
    fn new(numerator: BigUint, denominator: BigUint) -> Self {
        debug_assert!(!denominator.is_zero() && numerator <= denominator);
        let g = numerator.gcd(&denominator);
        Self { numerator: numerator / &g, denominator: denominator / g }
    }

    fn one() -> Self {
        Self::new(BigUint::one(), BigUint::one())
    }

    fn inverse_power_of_two(exp: usize) -> Self {
        Self::new(BigUint::one(), BigUint::one() << exp)
    }

    pub fn numerator(&self) -> &BigUint {
        &self.numerator
    }

    pub fn denominator(&self) -> &BigUint {
        &self.denominator
    }

    pub fn to_f64(&self) -> f64 {
        self.numerator.to_f64().unwrap_or(f64::NAN) / self.denominator.to_f64().unwrap_or(f64::INFINITY)
    }

    /// `count / 2^n`, reduced.
    pub fn from_flip_count(count: u64, n: usize) -> Self {
        Self::new(BigUint::from(count), BigUint::one() << n)
    }
}

impl fmt::Display for ExactProbability {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.denominator.is_one() {
            write!(f, "{}", self.numerator)
        } else {
            write!(f, "{}/{}", self.numerator, self.denominator)
        }
    }
}

/// Closed-form `p(N, n)` where one is known.
pub fn exact_probability(dim: usize, n: usize) -> Option<ExactProbability> {
    if dim == 0 || n == 0 {
        return None;
    }
    if n <= dim + 1 {
        Some(ExactProbability::one())
    } else if n == dim + 2 {
        Some(ExactProbability::inverse_power_of_two(dim + 1))
    } else if dim == 1 && n % 2 == 1 {
        // n = 1 + 2k: 4^{-k}
        Some(ExactProbability::inverse_power_of_two(n - 1))
    } else if dim == 1 {
        // n = 2 + 2k: 2^{-k}
        Some(ExactProbability::inverse_power_of_two((n - 2) / 2))
    } else {
        None
    }
}

fn cyclic_gap(a: f64, b: f64) -> f64 {
    let d = (a - b).abs();
    d.min(PI - d)
}

/// For each crossing of the sweep, in angular order: is it an exit (`true`)
/// or an entry? Exits are exactly the points inside the starting semicircle.
fn crossings(c: &CircleConfiguration) -> Result<Vec<bool>> {
    // Crossing position of each point: its angle modulo π.
    let mut order: Vec<(f64, usize)> = c.angles.iter().enumerate().map(|(i, a)| (a.rem_euclid(PI), i)).collect();
    order.sort_by(|a, b| a.0.total_cmp(&b.0));
    let n = order.len();
    let mut min_gap = PI;
    for w in 0..n {
        let (a, i) = order[w];
        let (b, j) = order[(w + 1) % n];
        if n > 1 {
            let gap = if w + 1 == n { b + PI - a } else { b - a };
            if cyclic_gap(a, b) <= GENERIC_TOL {
                return Err(CircleError::NonGeneric { first: i.min(j), second: i.max(j) });
            }
            min_gap = min_gap.min(gap);
        }
    }
    // A point on the starting diameter: turn everything by half the smallest gap.
    let at_start = order.iter().any(|&(e, _)| e <= GENERIC_TOL || PI - e <= GENERIC_TOL);
    let offset = if at_start { 0.5 * min_gap } else { 0.0 };
    let mut shifted: Vec<(f64, bool)> = c
        .angles
        .iter()
        .map(|a| {
            let t = (a + offset).rem_euclid(TAU);
            (t.rem_euclid(PI), t < PI)
        })
        .collect();
    shifted.sort_by(|a, b| a.0.total_cmp(&b.0));
    Ok(shifted.into_iter().map(|(_, exit)| exit).collect())
}

fn sequence_from(exits: impl Iterator<Item = bool> + Clone) -> Vec<usize> {
    let mut count = exits.clone().filter(|&e| e).count();
    let mut counts = vec![count];
    for exit in exits {
        if exit {
            count -= 1;
        } else {
            count += 1;
        }
        counts.push(count);
    }
    counts
}

/// Allowed occupancy range `[lo, hi]` for a balanced configuration of `n` points.
fn balanced_range(n: usize) -> (usize, usize) {
    if n % 2 == 1 {
        let k = (n - 1) / 2;
        (k, k + 1)
    } else {
        let k = (n - 2) / 2;
        (k, k + 2)
    }
}

/// Counts of points strictly inside the semicircle `(φ, φ + π)` as `φ`
/// turns from the starting diameter through π; `n + 1` entries.
pub fn sweep_sequence(c: &CircleConfiguration) -> Result<SweepSequence> {
    let exits = crossings(c)?;
    Ok(SweepSequence { counts: sequence_from(exits.iter().copied()) })
}

pub fn is_balanced_circle(c: &CircleConfiguration) -> Result<bool> {
    let seq = sweep_sequence(c)?;
    let (lo, hi) = balanced_range(c.len());
    Ok(seq.counts.iter().all(|&v| (lo..=hi).contains(&v)))
}

fn balanced_under_flips(exits: &[bool], mask: u64, lo: usize, hi: usize) -> bool {
    let mut count = exits.iter().enumerate().filter(|&(j, &e)| e != (mask >> j & 1 == 1)).count();
    if count < lo || count > hi {
        return false;
    }
    for (j, &e) in exits.iter().enumerate() {
        if e != (mask >> j & 1 == 1) {
            count -= 1;
        } else {
            count += 1;
        }
        if count < lo || count > hi {
            return false;
        }
    }
    true
}

/// Number of the `2^n` antipodal flips of `c` that are balanced.
pub fn flip_enumeration_count(c: &CircleConfiguration) -> Result<u64> {
    let n = c.len();
    if n > MAX_FLIP_POINTS {
        return Err(CircleError::BudgetExceeded { n, max: MAX_FLIP_POINTS });
    }
    let exits = crossings(c)?;
    let (lo, hi) = balanced_range(n);
    Ok((0..1u64 << n).into_par_iter().filter(|&mask| balanced_under_flips(&exits, mask, lo, hi)).count() as u64)
}
