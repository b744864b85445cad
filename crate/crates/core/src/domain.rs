//! Structured variable domains and their linear descriptions.

use crate::error::{check_dim, Error, Result};
use crate::scalar::Real;

/// Largest dimension for which vertex lists of boxes are materialised.
pub const MAX_VERTEX_DIM: usize = 20;

/// The closed family of sets the library reasons about.
///
/// Use the checked constructors; the operations assume their invariants.
#[derive(Debug, Clone, PartialEq)]
pub enum Domain<T> {
    /// `[0,1]^n`
    UnitBox { n: usize },
    /// `∏ [lower_j, upper_j] ⊆ [0,1]^n`
    SubBox { lower: Vec<T>, upper: Vec<T> },
    /// `[1,r]^n`, `r > 1`
    RatioBox { n: usize, r: T },
    /// `[-1,1]^n`
    SymBox { n: usize },
    /// `{x ≥ 0, Σx ≤ 1}`
    StdSimplex { n: usize },
    /// `conv{1, 1 − λ_i e_i}` = `{x ≤ 1, Σ x_j/λ_j ≥ Σ 1/λ_j − 1}`, `0 < λ ≤ 1`
    CornerSimplexOne { lambda: Vec<T> },
    /// `{x ∈ [0,1]^n, Σx ≤ n − 1}`
    ComplementSimplex { n: usize },
}

/// One linear inequality `a·x ≤ b`.
#[derive(Debug, Clone, PartialEq)]
pub struct HalfSpace<T> {
    pub a: Vec<T>,
    pub b: T,
}

fn require_positive_dim(n: usize) -> Result<()> {
    if n == 0 {
        Err(Error::InvalidDomain("dimension must be at least 1".into()))
    } else {
        Ok(())
    }
}

impl<T: Real> Domain<T> {
    pub fn unit_box(n: usize) -> Result<Self> {
        require_positive_dim(n)?;
        Ok(Self::UnitBox { n })
    }

    pub fn sub_box(lower: Vec<T>, upper: Vec<T>) -> Result<Self> {
        require_positive_dim(lower.len())?;
        check_dim(lower.len(), upper.len())?;
        for (j, (&l, &u)) in lower.iter().zip(&upper).enumerate() {
            if !(T::zero() <= l && l <= u && u <= T::one()) {
                return Err(Error::InvalidDomain(format!(
                    "sub-box coordinate {j} needs 0 <= lower <= upper <= 1, got [{l}, {u}]"
                )));
            }
        }
        Ok(Self::SubBox { lower, upper })
    }

    pub fn ratio_box(n: usize, r: T) -> Result<Self> {
        require_positive_dim(n)?;
        if !(r > T::one()) || !r.is_finite() {
            return Err(Error::InvalidDomain(format!("ratio box needs r > 1, got {r}")));
        }
        Ok(Self::RatioBox { n, r })
    }

    pub fn sym_box(n: usize) -> Result<Self> {
        require_positive_dim(n)?;
        Ok(Self::SymBox { n })
    }

    pub fn std_simplex(n: usize) -> Result<Self> {
        require_positive_dim(n)?;
        Ok(Self::StdSimplex { n })
    }

    pub fn corner_simplex_one(lambda: Vec<T>) -> Result<Self> {
        require_positive_dim(lambda.len())?;
        if let Some(j) = lambda.iter().position(|&l| !(l > T::zero() && l <= T::one())) {
            return Err(Error::InvalidDomain(format!("lambda[{j}] must lie in (0, 1]")));
        }
        Ok(Self::CornerSimplexOne { lambda })
    }

    pub fn complement_simplex(n: usize) -> Result<Self> {
        require_positive_dim(n)?;
        Ok(Self::ComplementSimplex { n })
    }

    /// Re-checks the constructor invariants (useful for values built from the enum directly).
    pub fn validate(&self) -> Result<()> {
        match self {
            Self::UnitBox { n } => Self::unit_box(*n).map(drop),
            Self::SubBox { lower, upper } => Self::sub_box(lower.clone(), upper.clone()).map(drop),
            Self::RatioBox { n, r } => Self::ratio_box(*n, *r).map(drop),
            Self::SymBox { n } => Self::sym_box(*n).map(drop),
            Self::StdSimplex { n } => Self::std_simplex(*n).map(drop),
            Self::CornerSimplexOne { lambda } => Self::corner_simplex_one(lambda.clone()).map(drop),
            Self::ComplementSimplex { n } => Self::complement_simplex(*n).map(drop),
        }
    }

    pub fn dim(&self) -> usize {
        match self {
            Self::UnitBox { n }
            | Self::RatioBox { n, .. }
            | Self::SymBox { n }
            | Self::StdSimplex { n }
            | Self::ComplementSimplex { n } => *n,
            Self::SubBox { lower, .. } => lower.len(),
            Self::CornerSimplexOne { lambda } => lambda.len(),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Self::UnitBox { .. } => "unit box",
            Self::SubBox { .. } => "sub-box",
            Self::RatioBox { .. } => "ratio box",
            Self::SymBox { .. } => "symmetric box",
            Self::StdSimplex { .. } => "standard simplex",
            Self::CornerSimplexOne { .. } => "corner simplex at 1",
            Self::ComplementSimplex { .. } => "complement simplex",
        }
    }

    pub fn is_box(&self) -> bool {
        matches!(
            self,
            Self::UnitBox { .. } | Self::SubBox { .. } | Self::RatioBox { .. } | Self::SymBox { .. }
        )
    }

    pub fn is_subset_of_unit_box(&self) -> bool {
        !matches!(self, Self::RatioBox { .. } | Self::SymBox { .. })
    }

    pub fn contains_one(&self) -> bool {
        let ones = vec![T::one(); self.dim()];
        self.contains(&ones, T::zero())
    }

    pub fn contains_origin(&self) -> bool {
        let zeros = vec![T::zero(); self.dim()];
        self.contains(&zeros, T::zero())
    }

    /// Tight coordinate-wise bounds `(lower, upper)`.
    pub fn bounding_box(&self) -> (Vec<T>, Vec<T>) {
        let n = self.dim();
        match self {
            Self::UnitBox { .. } | Self::StdSimplex { .. } => (vec![T::zero(); n], vec![T::one(); n]),
            Self::SubBox { lower, upper } => (lower.clone(), upper.clone()),
            Self::RatioBox { r, .. } => (vec![T::one(); n], vec![*r; n]),
            Self::SymBox { .. } => (vec![-T::one(); n], vec![T::one(); n]),
            Self::CornerSimplexOne { lambda } => (lambda.iter().map(|&l| T::one() - l).collect(), vec![T::one(); n]),
            Self::ComplementSimplex { .. } => {
                let cap = T::from_usize_lossy(n - 1).min(T::one());
                (vec![T::zero(); n], vec![cap; n])
            }
        }
    }

    /// The defining inequalities `a·x ≤ b`.
    pub fn halfspaces(&self) -> Vec<HalfSpace<T>> {
        let n = self.dim();
        let unit = |j: usize, s: T| {
            let mut a = vec![T::zero(); n];
            a[j] = s;
            a
        };
        let mut out = Vec::new();
        let push_box = |lo: &[T], hi: &[T], out: &mut Vec<HalfSpace<T>>| {
            for j in 0..n {
                out.push(HalfSpace { a: unit(j, -T::one()), b: -lo[j] });
                out.push(HalfSpace { a: unit(j, T::one()), b: hi[j] });
            }
        };
        match self {
            Self::UnitBox { .. } | Self::SubBox { .. } | Self::RatioBox { .. } | Self::SymBox { .. } => {
                let (lo, hi) = self.bounding_box();
                push_box(&lo, &hi, &mut out);
            }
            Self::StdSimplex { .. } => {
                for j in 0..n {
                    out.push(HalfSpace { a: unit(j, -T::one()), b: T::zero() });
                }
                out.push(HalfSpace { a: vec![T::one(); n], b: T::one() });
            }
            Self::CornerSimplexOne { lambda } => {
                for j in 0..n {
                    out.push(HalfSpace { a: unit(j, T::one()), b: T::one() });
                }
                let inv: Vec<T> = lambda.iter().map(|&l| T::one() / l).collect();
                let total = inv.iter().fold(T::zero(), |a, &b| a + b);
                out.push(HalfSpace { a: inv.iter().map(|&v| -v).collect(), b: -(total - T::one()) });
            }
            Self::ComplementSimplex { .. } => {
                push_box(&vec![T::zero(); n], &vec![T::one(); n], &mut out);
                out.push(HalfSpace { a: vec![T::one(); n], b: T::from_usize_lossy(n - 1) });
            }
        }
        out
    }

    /// Membership by the defining inequalities, each relaxed by `tol`.
    pub fn contains(&self, x: &[T], tol: T) -> bool {
        if x.len() != self.dim() {
            return false;
        }
        match self {
            // direct forms avoid allocating the inequality list in hot loops
            Self::UnitBox { .. } | Self::SubBox { .. } | Self::RatioBox { .. } | Self::SymBox { .. } => {
                let (lo, hi) = self.bounding_box();
                x.iter().zip(lo.iter().zip(&hi)).all(|(&v, (&l, &h))| v >= l - tol && v <= h + tol)
            }
            _ => self.halfspaces().iter().all(|h| dot(&h.a, x) <= h.b + tol),
        }
    }

    /// Range of `t` for which `base + t·dir` satisfies every inequality, or `None` if empty.
    pub fn line_range(&self, base: &[T], dir: &[T]) -> Option<(T, T)> {
        let mut lo = T::neg_infinity();
        let mut hi = T::infinity();
        let slack = T::epsilon() * T::lit(16.0);
        for h in self.halfspaces() {
            let ad = dot(&h.a, dir);
            let rem = h.b - dot(&h.a, base);
            if ad.abs() <= T::epsilon() {
                if rem < -slack {
                    return None;
                }
            } else if ad > T::zero() {
                hi = hi.min(rem / ad);
            } else {
                lo = lo.max(rem / ad);
            }
        }
        (lo <= hi).then_some((lo, hi))
    }

    /// Projection of the domain onto coordinate `i`.
    pub fn projection(&self, i: usize) -> (T, T) {
        let (lo, hi) = self.bounding_box();
        (lo[i], hi[i])
    }

    /// Vertex list of the polytope.
    pub fn vertices(&self) -> Result<Vec<Vec<T>>> {
        let n = self.dim();
        match self {
            Self::UnitBox { .. } | Self::SubBox { .. } | Self::RatioBox { .. } | Self::SymBox { .. } => {
                if n > MAX_VERTEX_DIM {
                    return Err(Error::ScaleExceeded { what: format!("box vertex enumeration in dimension {n}"), limit: MAX_VERTEX_DIM });
                }
                let (lo, hi) = self.bounding_box();
                Ok(box_vertices(&lo, &hi))
            }
            Self::StdSimplex { .. } => {
                let mut v = vec![vec![T::zero(); n]];
                for j in 0..n {
                    let mut e = vec![T::zero(); n];
                    e[j] = T::one();
                    v.push(e);
                }
                Ok(v)
            }
            Self::CornerSimplexOne { lambda } => {
                let mut v = vec![vec![T::one(); n]];
                for j in 0..n {
                    let mut e = vec![T::one(); n];
                    e[j] = T::one() - lambda[j];
                    v.push(e);
                }
                Ok(v)
            }
            Self::ComplementSimplex { .. } => {
                if n > MAX_VERTEX_DIM {
                    return Err(Error::ScaleExceeded { what: format!("0/1 vertex enumeration in dimension {n}"), limit: MAX_VERTEX_DIM });
                }
                let full = (1u64 << n) - 1;
                Ok((0..full)
                    .map(|mask| (0..n).map(|j| if mask >> j & 1 == 1 { T::one() } else { T::zero() }).collect())
                    .collect())
            }
        }
    }
}

/// All `2^n` vertices of `∏[lo_j, hi_j]`, vertex `k` taking `hi_j` where bit `j` of `k` is set.
pub fn box_vertices<T: Real>(lo: &[T], hi: &[T]) -> Vec<Vec<T>> {
    let n = lo.len();
    (0..1u64 << n)
        .map(|mask| (0..n).map(|j| if mask >> j & 1 == 1 { hi[j] } else { lo[j] }).collect())
        .collect()
}

#[inline]
pub(crate) fn dot<T: Real>(a: &[T], b: &[T]) -> T {
    a.iter().zip(b).fold(T::zero(), |acc, (&x, &y)| acc + x * y)
}
