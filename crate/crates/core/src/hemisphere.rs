//! Closed and open hemisphere occupancy for a configuration of points.
//!
//! Sliding a great circle until it passes through `N` configuration points
//! never decreases the count of either closed side, so the maximum closed
//! hemisphere is attained by some circle through an `N`-subset. The search
//! therefore enumerates all `N`-subsets in lexicographic order.

use rand::Rng;
use serde::Serialize;
use thiserror::Error;

use crate::geometry::{self, check_tol, dot, GeometryError, NormalKernel, Pole, Side, SpherePoint};

/// Default tolerance on unit-vector inner products.
pub const DEFAULT_TOL: f64 = 1e-9;

/// Retry budget used by [`best_open_hemisphere`].
pub const DEFAULT_MAX_RETRIES: usize = 1000;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum HemisphereError {
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error("configuration has no points")]
    Empty,
    #[error("point {point} lies on the great circle through subset {subset:?}")]
    GeneralPositionViolation { subset: Vec<usize>, point: usize },
    #[error("no pole avoiding all points within tolerance {tol} after {retries} attempts")]
    RetriesExhausted { retries: usize, tol: f64 },
}

pub type Result<T, E = HemisphereError> = std::result::Result<T, E>;

/// `N` plus an ordered list of points on `S^N`.
#[derive(Debug, Clone, PartialEq)]
pub struct Configuration {
    dim: usize,
    points: Vec<SpherePoint>,
    label: Option<String>,
}

impl Configuration {
    pub fn new(dim: usize, points: Vec<SpherePoint>) -> Result<Self> {
        if dim == 0 {
            return Err(GeometryError::InvalidDimension(dim).into());
        }
        if points.is_empty() {
            return Err(HemisphereError::Empty);
        }
        if let Some(p) = points.iter().find(|p| p.dim() != dim) {
            return Err(GeometryError::DimensionMismatch { expected: dim + 1, found: p.dim() + 1 }.into());
        }
        Ok(Self { dim, points, label: None })
    }

    /// Builds a configuration from raw unit-length coordinate rows.
    pub fn from_coords(dim: usize, rows: Vec<Vec<f64>>) -> Result<Self> {
        let points = rows.into_iter().map(SpherePoint::new).collect::<Result<Vec<_>, _>>()?;
        Self::new(dim, points)
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = Some(label.into());
        self
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[SpherePoint] {
        &self.points
    }

    pub fn label(&self) -> Option<&str> {
        self.label.as_deref()
    }

    /// Applies `f` to every point (e.g. a rotation), renormalizing the result.
    pub fn map_points<F>(&self, mut f: F) -> Result<Self>
    where
        F: FnMut(&[f64]) -> Vec<f64>,
    {
        let points = self.points.iter().map(|p| SpherePoint::normalize(f(p.coords()))).collect::<Result<Vec<_>, _>>()?;
        Ok(Self { dim: self.dim, points, label: self.label.clone() })
    }

    fn flat(&self) -> Vec<f64> {
        self.points.iter().flat_map(|p| p.coords().iter().copied()).collect()
    }
}

/// Side counts of the points outside an `N`-subset, relative to its circle.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct SideCount {
    pub positive: usize,
    pub negative: usize,
    pub on_circle: usize,
}

impl SideCount {
    pub fn total(&self) -> usize {
        self.positive + self.negative + self.on_circle
    }

    pub fn imbalance(&self) -> usize {
        self.positive.abs_diff(self.negative)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SubsetCount {
    pub subset: Vec<usize>,
    pub counts: SideCount,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct HemisphereReport {
    pub max_count: usize,
    pub witness_pole: Pole,
    /// Sorted indices of the subset whose circle bounds the witness
    /// hemisphere; empty when the configuration spans fewer than `N+1` dimensions.
    pub witness_subset: Vec<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub per_subset: Option<Vec<SubsetCount>>,
    pub degenerate_subsets: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BalanceVerdict {
    pub balanced: bool,
    /// `n ≤ N + 1`: every configuration is balanced.
    pub vacuous: bool,
    pub violation: Option<SubsetCount>,
    /// Subsets skipped by the degeneracy gate.
    pub degenerate_subsets: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OpenReport {
    pub pole: Pole,
    pub count: usize,
}

/// Guaranteed closed-hemisphere occupancy: `n` for `n ≤ N`, else `⌊(n+N+1)/2⌋`.
pub fn closed_bound(dim: usize, n: usize) -> usize {
    if n <= dim {
        n
    } else {
        (n + dim).div_ceil(2)
    }
}

/// Advances `idx` to the next `k`-subset of `0..n` in lexicographic order.
pub(crate) fn next_combination(idx: &mut [usize], n: usize) -> bool {
    let k = idx.len();
    let mut i = k;
    while i > 0 {
        i -= 1;
        if idx[i] < n - k + i {
            idx[i] += 1;
            for j in i + 1..k {
                idx[j] = idx[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// Result of scanning the subsets of a flat point array for balance.
#[derive(Debug, Clone, PartialEq)]
pub(crate) struct BalanceScan {
    pub balanced: bool,
    pub violation: Option<SubsetCount>,
    pub degenerate: usize,
}

/// Scratch space for subset scans; reused across calls on the same dimension.
#[derive(Debug, Clone)]
pub(crate) struct Scanner {
    dim: usize,
    kernel: NormalKernel,
    normal: Vec<f64>,
    subset: Vec<usize>,
}

impl Scanner {
    pub(crate) fn new(dim: usize) -> Self {
        Self { dim, kernel: NormalKernel::new(dim), normal: vec![0.0; dim + 1], subset: Vec::with_capacity(dim) }
    }

    fn reset_subset(&mut self) {
        self.subset.clear();
        self.subset.extend(0..self.dim);
    }

    /// Normal of the current subset into `self.normal`; `false` if degenerate.
    fn subset_normal(&mut self, flat: &[f64]) -> bool {
        let m = self.dim + 1;
        let rows = self.subset.iter().map(|&i| &flat[i * m..(i + 1) * m]);
        match self.kernel.normal(rows, &mut self.normal) {
            Ok(_) => true,
            Err(GeometryError::Degenerate { .. }) => false,
            Err(e) => unreachable!("well-formed subset rejected: {e}"),
        }
    }

    fn count_sides(&self, flat: &[f64], n: usize, tol: f64, first_on_circle: &mut Option<usize>) -> SideCount {
        let m = self.dim + 1;
        let mut counts = SideCount::default();
        let mut next_member = 0;
        for i in 0..n {
            if next_member < self.subset.len() && self.subset[next_member] == i {
                next_member += 1;
                continue;
            }
            match Side::classify(dot(&flat[i * m..(i + 1) * m], &self.normal), tol) {
                Side::Positive => counts.positive += 1,
                Side::Negative => counts.negative += 1,
                Side::OnCircle => {
                    counts.on_circle += 1;
                    first_on_circle.get_or_insert(i);
                }
            }
        }
        counts
    }

    /// Checks every non-degenerate `N`-subset for an even split. With
    /// `early_exit` the scan stops at the first unbalanced subset; otherwise
    /// it visits all subsets and still reports the first violation.
    pub(crate) fn balance(&mut self, flat: &[f64], tol: f64, early_exit: bool) -> Result<BalanceScan> {
        let m = self.dim + 1;
        let n = flat.len() / m;
        let mut scan = BalanceScan { balanced: true, violation: None, degenerate: 0 };
        if n <= self.dim + 1 {
            return Ok(scan);
        }
        self.reset_subset();
        loop {
            if self.subset_normal(flat) {
                let mut on = None;
                let counts = self.count_sides(flat, n, tol, &mut on);
                if let Some(point) = on {
                    return Err(HemisphereError::GeneralPositionViolation { subset: self.subset.clone(), point });
                }
                if counts.imbalance() > 1 && scan.balanced {
                    scan.balanced = false;
                    scan.violation = Some(SubsetCount { subset: self.subset.clone(), counts });
                    if early_exit {
                        return Ok(scan);
                    }
                }
            } else {
                scan.degenerate += 1;
            }
            if !next_combination(&mut self.subset, n) {
                return Ok(scan);
            }
        }
    }
}

/// A unit vector orthogonal to every point, for configurations spanning at
/// most `N` dimensions (modified Gram–Schmidt against the standard basis).
fn orthogonal_pole(c: &Configuration) -> Pole {
    let m = c.dim + 1;
    let mut basis: Vec<Vec<f64>> = Vec::with_capacity(m);
    let project_out = |v: &mut Vec<f64>, basis: &[Vec<f64>]| {
        for b in basis {
            let d = dot(v, b);
            v.iter_mut().zip(b).for_each(|(x, y)| *x -= d * y);
        }
    };
    for p in c.points() {
        let mut v = p.coords().to_vec();
        project_out(&mut v, &basis);
        let r = dot(&v, &v).sqrt();
        if r > 1e-9 && basis.len() < m - 1 {
            v.iter_mut().for_each(|x| *x /= r);
            basis.push(v);
        }
    }
    let best = (0..m)
        .map(|j| {
            let mut e = vec![0.0; m];
            e[j] = 1.0;
            project_out(&mut e, &basis);
            // second pass keeps the result orthogonal to working precision
            project_out(&mut e, &basis);
            e
        })
        .max_by(|a, b| dot(a, a).total_cmp(&dot(b, b)))
        .expect("at least two coordinates");
    let r = dot(&best, &best).sqrt();
    Pole::from_unit_unchecked(best.into_iter().map(|x| x / r).collect())
}

fn closed_count(pole: &Pole, c: &Configuration, tol: f64) -> usize {
    c.points().iter().filter(|x| pole.inner(x) >= -tol).count()
}

/// Maximum number of configuration points in a closed hemisphere.
pub fn max_closed_hemisphere(c: &Configuration, tol: f64) -> Result<HemisphereReport> {
    search_closed(c, tol, false)
}

/// As [`max_closed_hemisphere`], also recording the side counts of every subset.
pub fn max_closed_hemisphere_detailed(c: &Configuration, tol: f64) -> Result<HemisphereReport> {
    search_closed(c, tol, true)
}

fn search_closed(c: &Configuration, tol: f64, record: bool) -> Result<HemisphereReport> {
    check_tol(tol)?;
    let dim = c.dim;
    let n = c.len();
    let mut per_subset = record.then(Vec::new);
    let mut degenerate = 0;
    let mut best: Option<(usize, Vec<usize>, Vec<f64>, SideCount)> = None;
    if n > dim {
        let flat = c.flat();
        let mut scanner = Scanner::new(dim);
        scanner.reset_subset();
        loop {
            if scanner.subset_normal(&flat) {
                let counts = scanner.count_sides(&flat, n, tol, &mut None);
                let candidate = dim + counts.on_circle + counts.positive.max(counts.negative);
                if best.as_ref().is_none_or(|b| candidate > b.0) {
                    best = Some((candidate, scanner.subset.clone(), scanner.normal.clone(), counts));
                }
                if let Some(list) = per_subset.as_mut() {
                    list.push(SubsetCount { subset: scanner.subset.clone(), counts });
                }
            } else {
                degenerate += 1;
            }
            if !next_combination(&mut scanner.subset, n) {
                break;
            }
        }
    }
    let report = match best {
        Some((max_count, witness_subset, normal, counts)) => {
            let flip = match counts.positive.cmp(&counts.negative) {
                std::cmp::Ordering::Greater => false,
                std::cmp::Ordering::Less => true,
                std::cmp::Ordering::Equal => normal[dim] < 0.0,
            };
            let pole = Pole::from_unit_unchecked(normal);
            HemisphereReport {
                max_count,
                witness_pole: if flip { pole.opposite() } else { pole },
                witness_subset,
                per_subset,
                degenerate_subsets: degenerate,
            }
        }
        None => {
            // n ≤ N, or every subset is degenerate: the points lie on one great circle.
            let pole = orthogonal_pole(c);
            let (up, down) = (closed_count(&pole, c, tol), closed_count(&pole.opposite(), c, tol));
            let (max_count, witness_pole) = if down > up { (down, pole.opposite()) } else { (up, pole) };
            HemisphereReport { max_count, witness_pole, witness_subset: Vec::new(), per_subset, degenerate_subsets: degenerate }
        }
    };
    Ok(report)
}

/// Decides whether every great circle through `N` points splits the rest
/// as evenly as possible.
pub fn is_equator_balanced(c: &Configuration, tol: f64) -> Result<BalanceVerdict> {
    check_tol(tol)?;
    let vacuous = c.len() <= c.dim + 1;
    let scan = Scanner::new(c.dim).balance(&c.flat(), tol, true)?;
    Ok(BalanceVerdict { balanced: scan.balanced, vacuous, violation: scan.violation, degenerate_subsets: scan.degenerate })
}

/// Samples uniform poles until one has `|⟨x, pole⟩| > tol` for every point.
pub fn find_avoiding_pole<R: Rng + ?Sized>(c: &Configuration, rng: &mut R, tol: f64, max_retries: usize) -> Result<Pole> {
    check_tol(tol)?;
    for _ in 0..max_retries {
        let candidate = geometry::sample_uniform_point(c.dim, rng)?;
        if c.points().iter().all(|x| candidate.dot(x).abs() > tol) {
            return Ok(candidate.into());
        }
    }
    Err(HemisphereError::RetriesExhausted { retries: max_retries, tol })
}

/// An open hemisphere holding at least `⌈n/2⌉` points.
pub fn best_open_hemisphere<R: Rng + ?Sized>(c: &Configuration, rng: &mut R, tol: f64) -> Result<OpenReport> {
    let pole = find_avoiding_pole(c, rng, tol, DEFAULT_MAX_RETRIES)?;
    let up = c.points().iter().filter(|x| pole.inner(x) > tol).count();
    let down = c.len() - up;
    Ok(if down > up { OpenReport { pole: pole.opposite(), count: down } } else { OpenReport { pole, count: up } })
}
