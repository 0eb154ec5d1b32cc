//! Points, poles and sign kernels on the sphere `S^N ⊂ ℝ^{N+1}`.
//!
//! Two kernels decide on which side of a great circle a point lies:
//!
//! * a floating kernel that builds the unit normal of the hyperplane spanned
//!   by `N` points (and the origin) and takes inner products against it, and
//! * an exact kernel, [`exact_det_sign`], that evaluates the sign of an
//!   integer determinant by fraction-free (Bareiss) elimination.
//!
//! Row order is always "subset points in increasing index, test point last".
//! With that order the floating normal is oriented so that
//! `det(s_1, …, s_N, normal) > 0`, hence `sign ⟨x, normal⟩ = sign det(s_1, …, s_N, x)`.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use rand::Rng;
use rand_distr::StandardNormal;
use thiserror::Error;

/// Tolerance on `| ‖x‖ − 1 |` accepted for unit vectors.
pub const UNIT_NORM_TOL: f64 = 1e-12;

/// Relative degeneracy gate: the `N`-volume spanned by a subset, divided by
/// the product of its row norms (Hadamard bound), must exceed this.
pub const DEGENERACY_RTOL: f64 = 1e-12;

/// Pre-normalization norms below this are redrawn when sampling.
const MIN_SAMPLE_NORM: f64 = 1e-6;
const MAX_SAMPLE_REJECTIONS: usize = 100;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GeometryError {
    #[error("sphere dimension must be at least 1 (got {0})")]
    InvalidDimension(usize),
    #[error("dimension mismatch: expected {expected} coordinates, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("vector is not unit length (norm {norm})")]
    NotUnit { norm: f64 },
    #[error("zero vector cannot be used here")]
    ZeroVector,
    #[error("expected {expected} points to span a hyperplane, got {found}")]
    WrongPointCount { expected: usize, found: usize },
    #[error("points are degenerate (relative volume {relative_volume:e})")]
    Degenerate { relative_volume: f64 },
    #[error("matrix is not square ({rows} rows, row {row} has {cols} entries)")]
    NonSquare { rows: usize, row: usize, cols: usize },
    #[error("tolerance must be positive and finite (got {0})")]
    InvalidTolerance(f64),
    #[error("uniform sampling rejected {0} consecutive draws")]
    SamplingFailed(usize),
}

pub type Result<T, E = GeometryError> = std::result::Result<T, E>;

pub(crate) fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn norm(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}

fn check_unit(coords: &[f64]) -> Result<()> {
    if coords.len() < 2 {
        return Err(GeometryError::InvalidDimension(coords.len().saturating_sub(1)));
    }
    let n = norm(coords);
    if !n.is_finite() || (n - 1.0).abs() > UNIT_NORM_TOL {
        return Err(GeometryError::NotUnit { norm: n });
    }
    Ok(())
}

fn normalized(mut coords: Vec<f64>) -> Result<Vec<f64>> {
    if coords.len() < 2 {
        return Err(GeometryError::InvalidDimension(coords.len().saturating_sub(1)));
    }
    let n = norm(&coords);
    if n == 0.0 || !n.is_finite() {
        return Err(GeometryError::ZeroVector);
    }
    coords.iter_mut().for_each(|c| *c /= n);
    Ok(coords)
}

/// A point of `S^N`, stored as its `N+1` Euclidean coordinates.
#[derive(Debug, Clone, PartialEq, serde::Serialize)]
#[serde(transparent)]
pub struct SpherePoint {
    coords: Vec<f64>,
}

impl SpherePoint {
    /// Wraps coordinates that are already unit length (within [`UNIT_NORM_TOL`]).
    pub fn new(coords: Vec<f64>) -> Result<Self> {
        check_unit(&coords)?;
        Ok(Self { coords })
    }

    /// Scales a non-zero vector onto the sphere.
    pub fn normalize(coords: Vec<f64>) -> Result<Self> {
        normalized(coords).map(|coords| Self { coords })
    }

    pub fn coords(&self) -> &[f64] {
        &self.coords
    }

    /// Sphere dimension `N` (one less than the number of coordinates).
    pub fn dim(&self) -> usize {
        self.coords.len() - 1
    }

    pub fn dot(&self, other: &SpherePoint) -> f64 {
        dot(&self.coords, &other.coords)
    }

    pub fn into_coords(self) -> Vec<f64> {
        self.coords
    }
}

/// Unit normal of a hemisphere. The closed hemisphere is `⟨x, p⟩ ≥ 0`,
/// the open one `⟨x, p⟩ > 0`.
#[derive(Debug, Clone, PartialEq, serde::Serialize)]
#[serde(transparent)]
pub struct Pole {
    coords: Vec<f64>,
}

impl Pole {
    pub fn new(coords: Vec<f64>) -> Result<Self> {
        check_unit(&coords)?;
        Ok(Self { coords })
    }

    pub fn normalize(coords: Vec<f64>) -> Result<Self> {
        normalized(coords).map(|coords| Self { coords })
    }

    pub fn coords(&self) -> &[f64] {
        &self.coords
    }

    pub fn dim(&self) -> usize {
        self.coords.len() - 1
    }

    /// The pole of the complementary hemisphere.
    pub fn opposite(&self) -> Pole {
        Pole { coords: self.coords.iter().map(|c| -c).collect() }
    }

    pub fn inner(&self, x: &SpherePoint) -> f64 {
        dot(&self.coords, x.coords())
    }

    pub(crate) fn from_unit_unchecked(coords: Vec<f64>) -> Self {
        Self { coords }
    }
}

impl From<SpherePoint> for Pole {
    fn from(p: SpherePoint) -> Self {
        Pole { coords: p.coords }
    }
}

/// A non-zero integer vector, used for exact sign computations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntegerVector {
    entries: Vec<BigInt>,
}

impl IntegerVector {
    pub fn new(entries: Vec<BigInt>) -> Result<Self> {
        if entries.iter().all(Zero::is_zero) {
            return Err(GeometryError::ZeroVector);
        }
        Ok(Self { entries })
    }

    pub fn entries(&self) -> &[BigInt] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

impl TryFrom<Vec<i64>> for IntegerVector {
    type Error = GeometryError;

    fn try_from(v: Vec<i64>) -> Result<Self> {
        IntegerVector::new(v.into_iter().map(BigInt::from).collect())
    }
}

/// Position of a point relative to a pole.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize)]
pub enum Side {
    Positive,
    Negative,
    OnCircle,
}

impl Side {
    pub(crate) fn classify(inner: f64, tol: f64) -> Side {
        if inner > tol {
            Side::Positive
        } else if inner < -tol {
            Side::Negative
        } else {
            Side::OnCircle
        }
    }
}

/// Sign of an exact determinant.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DetSign {
    Negative,
    Zero,
    Positive,
}

impl DetSign {
    pub fn as_i32(self) -> i32 {
        match self {
            DetSign::Negative => -1,
            DetSign::Zero => 0,
            DetSign::Positive => 1,
        }
    }

    pub fn flipped(self) -> DetSign {
        match self {
            DetSign::Negative => DetSign::Positive,
            DetSign::Zero => DetSign::Zero,
            DetSign::Positive => DetSign::Negative,
        }
    }
}

pub(crate) fn check_tol(tol: f64) -> Result<()> {
    if tol > 0.0 && tol.is_finite() {
        Ok(())
    } else {
        Err(GeometryError::InvalidTolerance(tol))
    }
}

/// Fills `out` (length `dim + 1`) with a uniformly distributed unit vector.
pub(crate) fn sample_into<R: Rng + ?Sized>(dim: usize, rng: &mut R, out: &mut [f64]) -> Result<()> {
    debug_assert_eq!(out.len(), dim + 1);
    for _ in 0..MAX_SAMPLE_REJECTIONS {
        for c in out.iter_mut() {
            *c = rng.sample(StandardNormal);
        }
        let n = norm(out);
        if n >= MIN_SAMPLE_NORM {
            out.iter_mut().for_each(|c| *c /= n);
            return Ok(());
        }
    }
    Err(GeometryError::SamplingFailed(MAX_SAMPLE_REJECTIONS))
}

/// Draws a point uniformly from `S^dim` (normalized standard Gaussian vector).
pub fn sample_uniform_point<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> Result<SpherePoint> {
    if dim == 0 {
        return Err(GeometryError::InvalidDimension(dim));
    }
    let mut coords = vec![0.0; dim + 1];
    sample_into(dim, rng, &mut coords)?;
    Ok(SpherePoint { coords })
}

pub fn antipode(x: &SpherePoint) -> SpherePoint {
    SpherePoint { coords: x.coords.iter().map(|c| -c).collect() }
}

/// Side of `x` relative to the great circle with pole `p`.
pub fn side_of(p: &Pole, x: &SpherePoint, tol: f64) -> Result<Side> {
    check_tol(tol)?;
    if p.coords.len() != x.coords.len() {
        return Err(GeometryError::DimensionMismatch { expected: p.coords.len(), found: x.coords.len() });
    }
    Ok(Side::classify(p.inner(x), tol))
}

/// Reusable buffers for [`NormalKernel::normal`].
#[derive(Debug, Clone)]
pub(crate) struct NormalKernel {
    dim: usize,
    a: Vec<f64>,
    vs: Vec<f64>,
    active: Vec<bool>,
}

impl NormalKernel {
    pub(crate) fn new(dim: usize) -> Self {
        let m = dim + 1;
        Self { dim, a: vec![0.0; m * dim], vs: vec![0.0; m * dim], active: vec![false; dim] }
    }

    /// Writes the oriented unit normal of the hyperplane through the origin
    /// and `rows` (exactly `dim` vectors of length `dim + 1`) into `out`.
    ///
    /// Orientation: `det(rows…, out) > 0`. Returns the relative volume on
    /// success; `Degenerate` when it is at most [`DEGENERACY_RTOL`].
    pub(crate) fn normal<'a, I>(&mut self, rows: I, out: &mut [f64]) -> Result<f64>
    where
        I: IntoIterator<Item = &'a [f64]>,
    {
        let dim = self.dim;
        let m = dim + 1;
        // Column-major copy of the rows: column j = row j.
        let mut hadamard = 1.0;
        let mut count = 0;
        for (j, row) in rows.into_iter().enumerate() {
            if j >= dim || row.len() != m {
                return Err(GeometryError::DimensionMismatch { expected: m, found: row.len() });
            }
            self.a[j * m..(j + 1) * m].copy_from_slice(row);
            hadamard *= norm(row);
            count += 1;
        }
        if count != dim {
            return Err(GeometryError::WrongPointCount { expected: dim, found: count });
        }
        if hadamard == 0.0 {
            return Err(GeometryError::Degenerate { relative_volume: 0.0 });
        }
        match dim {
            1 => {
                let (a, b) = (self.a[0], self.a[1]);
                let v = (a * a + b * b).sqrt();
                out[0] = -b / v;
                out[1] = a / v;
                let rel = v / hadamard;
                if rel <= DEGENERACY_RTOL {
                    return Err(GeometryError::Degenerate { relative_volume: rel });
                }
                Ok(rel)
            }
            2 => {
                let (s, t) = (&self.a[0..3], &self.a[3..6]);
                let c = [s[1] * t[2] - s[2] * t[1], s[2] * t[0] - s[0] * t[2], s[0] * t[1] - s[1] * t[0]];
                let v = norm(&c);
                let rel = v / hadamard;
                if rel <= DEGENERACY_RTOL {
                    return Err(GeometryError::Degenerate { relative_volume: rel });
                }
                for (o, ci) in out.iter_mut().zip(c) {
                    *o = ci / v;
                }
                Ok(rel)
            }
            _ => self.householder_normal(hadamard, out),
        }
    }

    // QR of the (dim+1)×dim matrix whose columns are the rows; the normal is
    // the last column of Q. Backward stable, unlike expanding cofactors.
    fn householder_normal(&mut self, hadamard: f64, out: &mut [f64]) -> Result<f64> {
        let dim = self.dim;
        let m = dim + 1;
        let mut reflections = 0usize;
        let mut volume = 1.0;
        for k in 0..dim {
            let col = k * m;
            let x_norm = norm(&self.a[col + k..col + m]);
            if x_norm == 0.0 {
                return Err(GeometryError::Degenerate { relative_volume: 0.0 });
            }
            let x0 = self.a[col + k];
            let alpha = if x0 >= 0.0 { -x_norm } else { x_norm };
            let v = &mut self.vs[col..col + m];
            v.fill(0.0);
            v[k..].copy_from_slice(&self.a[col + k..col + m]);
            v[k] -= alpha;
            let vv = dot(&v[k..], &v[k..]);
            volume *= alpha;
            if vv == 0.0 {
                self.active[k] = false;
                continue;
            }
            self.active[k] = true;
            reflections += 1;
            for j in k..dim {
                let cj = j * m;
                let s = 2.0 * dot(&v[k..], &self.a[cj + k..cj + m]) / vv;
                for (x, vi) in self.a[cj + k..cj + m].iter_mut().zip(&v[k..]) {
                    *x -= s * vi;
                }
            }
        }
        let rel = volume.abs() / hadamard;
        if rel <= DEGENERACY_RTOL {
            return Err(GeometryError::Degenerate { relative_volume: rel });
        }
        out.fill(0.0);
        out[dim] = 1.0;
        for k in (0..dim).rev() {
            if !self.active[k] {
                continue;
            }
            let v = &self.vs[k * m..(k + 1) * m];
            let vv = dot(&v[k..], &v[k..]);
            let s = 2.0 * dot(&v[k..], &out[k..]) / vv;
            for i in k..m {
                out[i] -= s * v[i];
            }
        }
        // det(rows; q_last) = det(Q) · ∏ r_kk with det(Q) = (−1)^reflections.
        let negative = (reflections % 2 == 1) != (volume < 0.0);
        if negative {
            out.iter_mut().for_each(|c| *c = -*c);
        }
        let n = norm(out);
        out.iter_mut().for_each(|c| *c /= n);
        Ok(rel)
    }
}

/// Unit normal of the hyperplane through the origin and `N` points of `S^N`,
/// oriented so that `det(points…, normal) > 0`.
pub fn hyperplane_normal(points: &[SpherePoint]) -> Result<Pole> {
    let first = points.first().ok_or(GeometryError::WrongPointCount { expected: 1, found: 0 })?;
    let dim = first.dim();
    if points.len() != dim {
        return Err(GeometryError::WrongPointCount { expected: dim, found: points.len() });
    }
    let mut out = vec![0.0; dim + 1];
    NormalKernel::new(dim).normal(points.iter().map(SpherePoint::coords), &mut out)?;
    Ok(Pole { coords: out })
}

/// Floating determinant by LU with partial pivoting.
pub fn float_det(rows: &[Vec<f64>]) -> Result<f64> {
    let n = rows.len();
    if let Some((row, r)) = rows.iter().enumerate().find(|(_, r)| r.len() != n) {
        return Err(GeometryError::NonSquare { rows: n, row, cols: r.len() });
    }
    let mut a: Vec<Vec<f64>> = rows.to_vec();
    let mut det = 1.0;
    for k in 0..n {
        let p = (k..n).max_by(|&i, &j| a[i][k].abs().total_cmp(&a[j][k].abs())).expect("non-empty pivot range");
        if a[p][k] == 0.0 {
            return Ok(0.0);
        }
        if p != k {
            a.swap(p, k);
            det = -det;
        }
        det *= a[k][k];
        let (top, rest) = a.split_at_mut(k + 1);
        let pivot = &top[k];
        for row in rest {
            let f = row[k] / pivot[k];
            for (x, p) in row[k..].iter_mut().zip(&pivot[k..]) {
                *x -= f * p;
            }
        }
    }
    Ok(det)
}

/// Exact sign of the determinant of a square integer matrix (Bareiss
/// fraction-free elimination; every intermediate is an exact integer).
pub fn exact_det_sign(rows: &[IntegerVector]) -> Result<DetSign> {
    let n = rows.len();
    if let Some((row, r)) = rows.iter().enumerate().find(|(_, r)| r.len() != n) {
        return Err(GeometryError::NonSquare { rows: n, row, cols: r.len() });
    }
    if n == 0 {
        return Ok(DetSign::Positive);
    }
    let mut a: Vec<Vec<BigInt>> = rows.iter().map(|r| r.entries.clone()).collect();
    let mut negate = false;
    let mut prev = BigInt::from(1);
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(p) => {
                    a.swap(k, p);
                    negate = !negate;
                }
                None => return Ok(DetSign::Zero),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
                a[i][j] = v;
            }
        }
        prev = a[k][k].clone();
    }
    let last = &a[n - 1][n - 1];
    let sign = if last.is_zero() {
        DetSign::Zero
    } else if last.is_positive() {
        DetSign::Positive
    } else {
        DetSign::Negative
    };
    Ok(if negate { sign.flipped() } else { sign })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn pt(c: &[f64]) -> SpherePoint {
        SpherePoint::new(c.to_vec()).unwrap()
    }

    fn iv(v: &[i64]) -> IntegerVector {
        IntegerVector::try_from(v.to_vec()).unwrap()
    }

    #[test]
    fn sampled_points_are_unit() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for dim in 1..6 {
            for _ in 0..100 {
                let p = sample_uniform_point(dim, &mut rng).unwrap();
                assert_eq!(p.coords().len(), dim + 1);
                assert!((p.dot(&p) - 1.0).abs() <= 1e-12);
            }
        }
        assert_eq!(sample_uniform_point(0, &mut rng), Err(GeometryError::InvalidDimension(0)));
    }

    #[test]
    fn sample_moments_on_s2() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let draws = 100_000;
        let mut sums = [0.0; 3];
        let mut upper = 0usize;
        for _ in 0..draws {
            let p = sample_uniform_point(2, &mut rng).unwrap();
            for (s, c) in sums.iter_mut().zip(p.coords()) {
                *s += c;
            }
            if p.coords()[0] > 0.0 {
                upper += 1;
            }
        }
        // Each coordinate has variance 1/3 under the uniform measure on S².
        let bound = 4.0 * (3.0 * draws as f64).powf(-0.5);
        for s in sums {
            assert!((s / draws as f64).abs() < bound, "mean {}", s / draws as f64);
        }
        assert!((upper as f64 / draws as f64 - 0.5).abs() < 0.01);
    }

    #[test]
    fn antipode_basics() {
        let x = pt(&[1.0, 0.0, 0.0]);
        assert_eq!(antipode(&x).coords(), &[-1.0, 0.0, 0.0]);
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let y = sample_uniform_point(3, &mut rng).unwrap();
        assert_eq!(antipode(&antipode(&y)), y);
        assert!((y.dot(&antipode(&y)) + 1.0).abs() < 1e-12);
    }

    #[test]
    fn normal_of_axes() {
        let n = hyperplane_normal(&[pt(&[1.0, 0.0, 0.0]), pt(&[0.0, 1.0, 0.0])]).unwrap();
        assert_eq!(n.coords(), &[0.0, 0.0, 1.0]);
        let err = hyperplane_normal(&[pt(&[1.0, 0.0, 0.0]), pt(&[-1.0, 0.0, 0.0])]).unwrap_err();
        assert!(matches!(err, GeometryError::Degenerate { .. }));
        let err = hyperplane_normal(&[pt(&[1.0, 0.0, 0.0])]).unwrap_err();
        assert_eq!(err, GeometryError::WrongPointCount { expected: 2, found: 1 });
    }

    #[test]
    fn normal_is_orthogonal_and_oriented() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for dim in 1..9 {
            for _ in 0..50 {
                let pts: Vec<_> = (0..dim).map(|_| sample_uniform_point(dim, &mut rng).unwrap()).collect();
                let n = hyperplane_normal(&pts).unwrap();
                assert!((n.coords().iter().map(|c| c * c).sum::<f64>() - 1.0).abs() < 1e-12);
                for p in &pts {
                    assert!(n.inner(p).abs() <= 1e-10, "dim {dim}: {}", n.inner(p));
                }
                let mut rows: Vec<Vec<f64>> = pts.iter().map(|p| p.coords().to_vec()).collect();
                rows.push(n.coords().to_vec());
                assert!(float_det(&rows).unwrap() > 0.0, "orientation in dim {dim}");
            }
        }
    }

    #[test]
    fn degenerate_in_higher_dimension() {
        let a = pt(&[1.0, 0.0, 0.0, 0.0]);
        let b = pt(&[0.0, 1.0, 0.0, 0.0]);
        let c = SpherePoint::normalize(vec![1.0, 1.0, 0.0, 0.0]).unwrap();
        assert!(matches!(hyperplane_normal(&[a, b, c]), Err(GeometryError::Degenerate { .. })));
    }

    #[test]
    fn side_cases() {
        let p = Pole::new(vec![1.0, 0.0]).unwrap();
        assert_eq!(side_of(&p, &pt(&[1.0, 0.0]), 1e-9), Ok(Side::Positive));
        assert_eq!(side_of(&p, &pt(&[0.0, 1.0]), 1e-9), Ok(Side::OnCircle));
        assert_eq!(side_of(&p, &pt(&[-1.0, 0.0]), 1e-9), Ok(Side::Negative));
        assert_eq!(side_of(&p, &pt(&[0.0, 0.0, 1.0]), 1e-9), Err(GeometryError::DimensionMismatch { expected: 2, found: 3 }));
        assert!(side_of(&p, &pt(&[1.0, 0.0]), 0.0).is_err());
    }

    #[test]
    fn unit_checks() {
        assert!(matches!(SpherePoint::new(vec![1.0, 1.0]), Err(GeometryError::NotUnit { .. })));
        assert!(matches!(SpherePoint::new(vec![1.0]), Err(GeometryError::InvalidDimension(0))));
        assert_eq!(SpherePoint::normalize(vec![0.0, 0.0]), Err(GeometryError::ZeroVector));
        assert_eq!(IntegerVector::try_from(vec![0, 0]), Err(GeometryError::ZeroVector));
    }

    #[test]
    fn exact_sign_small_cases() {
        let id = [iv(&[1, 0, 0]), iv(&[0, 1, 0]), iv(&[0, 0, 1])];
        assert_eq!(exact_det_sign(&id), Ok(DetSign::Positive));
        let eq = [iv(&[1, 2, 3]), iv(&[1, 2, 3]), iv(&[0, 0, 1])];
        assert_eq!(exact_det_sign(&eq), Ok(DetSign::Zero));
        // zero leading pivot forces a row swap
        let swap = [iv(&[0, 1]), iv(&[1, 0])];
        assert_eq!(exact_det_sign(&swap), Ok(DetSign::Negative));
        let bad = [iv(&[1, 2]), iv(&[1, 2, 3])];
        assert!(matches!(exact_det_sign(&bad), Err(GeometryError::NonSquare { .. })));
        // hand values from the circle construction
        assert_eq!(exact_det_sign(&[iv(&[1, 2]), iv(&[-1, -1])]), Ok(DetSign::Positive));
        assert_eq!(exact_det_sign(&[iv(&[1, 2]), iv(&[-1, -3])]), Ok(DetSign::Negative));
    }

    #[test]
    fn exact_sign_matches_float_on_random_matrices() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let mut checked = 0;
        for _ in 0..1000 {
            let m: Vec<Vec<i64>> = (0..4).map(|_| (0..4).map(|_| rng.random_range(-10..=10)).collect()).collect();
            let f = float_det(&m.iter().map(|r| r.iter().map(|&x| x as f64).collect()).collect::<Vec<_>>()).unwrap();
            let rows: Vec<IntegerVector> =
                m.iter().map(|r| IntegerVector { entries: r.iter().map(|&x| BigInt::from(x)).collect() }).collect();
            let s = exact_det_sign(&rows).unwrap();
            if f.abs() > 1e-6 {
                assert_eq!(s.as_i32(), f.signum() as i32);
                checked += 1;
            }
        }
        assert!(checked > 900);
    }
}
