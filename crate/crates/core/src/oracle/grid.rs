//! Cell-centre grid scans with local line-search refinement.

use crate::domain::Domain;
use crate::error::{Error, Result};
use crate::scalar::Real;
use crate::univariate::golden_max;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

pub const DEFAULT_MAX_POINTS: usize = 100_000_000;
pub const DEFAULT_REFINEMENT: usize = 3;
pub const DEFAULT_RESTARTS: usize = 16;
pub const DEFAULT_SEED: u64 = 42;
/// Largest dimension the oracle accepts.
pub const MAX_ORACLE_DIM: usize = 6;

/// Grid and refinement settings of an oracle run.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GridSpec {
    /// Cells per coordinate.
    pub resolution: usize,
    /// Refinement passes; each pass halves the search radius.
    pub refinement: usize,
    /// Cap on `resolution^n`.
    pub max_points: usize,
    /// Seeded random starting points refined alongside the grid winner (used for `n ≥ 5`).
    pub restarts: usize,
    pub seed: u64,
}

impl GridSpec {
    pub fn for_dim(n: usize) -> Self {
        let resolution = match n {
            0..=3 => 64,
            4 => 24,
            5 => 12,
            _ => 8,
        };
        Self {
            resolution,
            refinement: DEFAULT_REFINEMENT,
            max_points: DEFAULT_MAX_POINTS,
            restarts: if n >= 5 { DEFAULT_RESTARTS } else { 0 },
            seed: DEFAULT_SEED,
        }
    }

    pub fn with_resolution(mut self, resolution: usize) -> Self {
        self.resolution = resolution;
        self
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn with_refinement(mut self, passes: usize) -> Self {
        self.refinement = passes;
        self
    }

    /// Number of grid points in dimension `n`, or an error if over the cap.
    pub fn check(&self, n: usize) -> Result<usize> {
        if self.resolution < 2 {
            return Err(Error::InvalidParameter(format!("grid resolution must be at least 2, got {}", self.resolution)));
        }
        if n > MAX_ORACLE_DIM {
            return Err(Error::ScaleExceeded { what: format!("oracle dimension {n}"), limit: MAX_ORACLE_DIM });
        }
        let total = (0..n).try_fold(1usize, |acc, _| acc.checked_mul(self.resolution));
        match total {
            Some(t) if t <= self.max_points => Ok(t),
            _ => Err(Error::ScaleExceeded {
                what: format!("grid of {}^{n} points", self.resolution),
                limit: self.max_points,
            }),
        }
    }
}

/// A located maximum.
#[derive(Debug, Clone, PartialEq)]
pub struct Maximum<T> {
    pub value: T,
    pub point: Vec<T>,
    /// Best value on the grid (and vertex list) before refinement.
    pub grid_value: T,
}

fn sanitize<T: Real>(v: T) -> T {
    if v.is_nan() {
        T::neg_infinity()
    } else {
        v
    }
}

/// Maximises `f` over `dom`.
///
/// Scans the cell centres of the bounding box that lie in `dom`, plus the polytope's vertices
/// when there are few. Ties go to the lexicographically smallest point, so the result does not
/// depend on thread scheduling. The winner (and any random restarts) is then refined by
/// golden-section searches along coordinate, pairwise and diagonal directions.
pub fn maximize<T, F>(f: F, dom: &Domain<T>, spec: &GridSpec) -> Result<Maximum<T>>
where
    T: Real,
    F: Fn(&[T]) -> T + Sync,
{
    let n = dom.dim();
    let total = spec.check(n)?;
    let (lo, hi) = dom.bounding_box();
    let res = spec.resolution;
    let width: Vec<T> = lo.iter().zip(&hi).map(|(&l, &h)| (h - l) / T::from_usize_lossy(res)).collect();
    let member_tol = T::tol(1e-12);
    let half = T::lit(0.5);
    let point_at = |mut idx: usize, buf: &mut Vec<T>| {
        // first coordinate is the most significant digit, so index order is lexicographic
        for j in (0..n).rev() {
            let k = idx % res;
            idx /= res;
            buf[j] = lo[j] + (T::from_usize_lossy(k) + half) * width[j];
        }
    };

    let better = |a: (T, usize), b: (T, usize)| if b.0 > a.0 || (b.0 == a.0 && b.1 < a.1) { b } else { a };
    let (grid_best, grid_idx) = (0..total)
        .into_par_iter()
        .fold(
            || (vec![T::zero(); n], (T::neg_infinity(), usize::MAX)),
            |(mut buf, best), idx| {
                point_at(idx, &mut buf);
                let v = if dom.contains(&buf, member_tol) { sanitize(f(&buf)) } else { T::neg_infinity() };
                let cand = better(best, (v, idx));
                (buf, cand)
            },
        )
        .map(|(_, best)| best)
        .reduce(|| (T::neg_infinity(), usize::MAX), better);

    let mut starts: Vec<(T, Vec<T>)> = Vec::new();
    if grid_idx != usize::MAX && grid_best > T::neg_infinity() {
        let mut p = vec![T::zero(); n];
        point_at(grid_idx, &mut p);
        starts.push((grid_best, p));
    }
    if n <= 12 {
        if let Ok(vs) = dom.vertices() {
            if let Some((v, p)) = vs
                .into_iter()
                .map(|p| (sanitize(f(&p)), p))
                .fold(None::<(T, Vec<T>)>, |acc, c| match acc {
                    Some(a) if a.0 >= c.0 => Some(a),
                    _ => Some(c),
                })
            {
                starts.push((v, p));
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let mut drawn = 0;
    let mut attempts = 0;
    while drawn < spec.restarts && attempts < spec.restarts * 1000 {
        attempts += 1;
        let p: Vec<T> = lo.iter().zip(&hi).map(|(&l, &h)| l + (h - l) * T::lit(rng.gen::<f64>())).collect();
        if dom.contains(&p, member_tol) {
            starts.push((sanitize(f(&p)), p));
            drawn += 1;
        }
    }
    if starts.is_empty() {
        return Err(Error::InvalidDomain(format!("no grid point of the {} lies in the domain", dom.name())));
    }
    let grid_value = starts.iter().map(|s| s.0).fold(T::neg_infinity(), T::max);

    let radius = width.iter().copied().fold(T::zero(), T::max);
    let refined: Vec<(T, Vec<T>)> = starts
        .into_par_iter()
        .map(|(v, p)| refine(&f, dom, p, v, radius, spec.refinement))
        .collect();
    let (value, point) = refined
        .into_iter()
        .fold(None::<(T, Vec<T>)>, |acc, c| match acc {
            Some(a) if a.0 >= c.0 => Some(a),
            _ => Some(c),
        })
        .expect("at least one start");
    Ok(Maximum { value, point, grid_value })
}

fn directions<T: Real>(n: usize, x: &[T]) -> Vec<Vec<T>> {
    let mut dirs = Vec::new();
    let unit = |i: usize| {
        let mut d = vec![T::zero(); n];
        d[i] = T::one();
        d
    };
    for i in 0..n {
        dirs.push(unit(i));
    }
    for i in 0..n {
        for j in i + 1..n {
            for s in [T::one(), -T::one()] {
                let mut d = unit(i);
                d[j] = s;
                dirs.push(d);
            }
        }
    }
    dirs.push(vec![T::one(); n]);
    let signs: Vec<T> = x.iter().map(|&v| if v < T::zero() { -T::one() } else { T::one() }).collect();
    if signs.iter().any(|&s| s < T::zero()) {
        dirs.push(signs);
    }
    dirs
}

/// Line searches around `x`, accepting only improvements.
pub(crate) fn refine<T, F>(f: &F, dom: &Domain<T>, mut x: Vec<T>, mut best: T, radius: T, passes: usize) -> (T, Vec<T>)
where
    T: Real,
    F: Fn(&[T]) -> T,
{
    let n = x.len();
    let mut r = radius;
    let mut trial = vec![T::zero(); n];
    for _ in 0..passes.max(1) {
        for _sweep in 0..4 {
            let mut improved = false;
            for dir in directions(n, &x) {
                let Some((tlo, thi)) = dom.line_range(&x, &dir) else { continue };
                let (a, b) = (tlo.max(-r), thi.min(r));
                if !(a < b) {
                    continue;
                }
                let g = |t: T| {
                    let mut p = x.clone();
                    for (pj, &dj) in p.iter_mut().zip(&dir) {
                        *pj += t * dj;
                    }
                    sanitize(f(&p))
                };
                let (t, v) = golden_max(g, a, b, 80);
                if v > best {
                    for ((tj, &xj), &dj) in trial.iter_mut().zip(&x).zip(&dir) {
                        *tj = xj + t * dj;
                    }
                    if dom.contains(&trial, T::tol(1e-12)) {
                        best = v;
                        x.copy_from_slice(&trial);
                        improved = true;
                    }
                }
            }
            if !improved {
                break;
            }
        }
        r = r * T::lit(0.5);
    }
    (best, x)
}
