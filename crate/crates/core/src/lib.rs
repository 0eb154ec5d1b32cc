//! Hemisphere occupancy for finite point sets on the sphere `S^N`.
//!
//! * [`geometry`]: points, poles, side tests, floating and exact determinant kernels.
//! * [`hemisphere`]: maximum closed hemisphere, equator-balance verdicts, open hemispheres.
//! * [`constructions`]: Vandermonde (moment-curve) and antipodal extremal sets.
//! * [`circle`]: closed-form probabilities and the sweep/flip machinery for `N = 1`.
//! * [`montecarlo`]: reproducible parallel estimation of `p(N, n)`.
//! * [`config`] and [`cli`]: file format and command-line surface.

pub mod circle;
pub mod cli;
pub mod config;
pub mod constructions;
pub mod geometry;
pub mod hemisphere;
pub mod montecarlo;
