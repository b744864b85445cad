//! Brute-force verifiers for the closed forms.
//!
//! Everything here is a falsifier at desk scale (`n ≤ 6`): grid scans with local refinement,
//! vertex enumeration and a small dense LP. None of it proves anything.

mod grid;
pub mod lp;

pub use grid::{
    maximize, GridSpec, Maximum, DEFAULT_MAX_POINTS, DEFAULT_REFINEMENT, DEFAULT_RESTARTS, DEFAULT_SEED,
    MAX_ORACLE_DIM,
};
pub use lp::{Constraint, LinearProgram, LpOutcome, Sense};

use crate::bounds::c1;
use crate::domain::Domain;
use crate::envelopes::{self, LinearUnderestimator};
use crate::error::{check_dim, Error, Result};
use crate::monomial::Monomial;
use crate::report::{ErrorReport, ORACLE_TOL};
use crate::scalar::Real;

/// Which side of the graph an estimator lies on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Side {
    /// Overestimator; the gap is `estimator − f`.
    Over,
    /// Underestimator; the gap is `f − estimator`.
    Under,
}

/// The closed-form estimators the oracle knows how to measure.
#[derive(Debug, Clone, PartialEq)]
pub enum Estimator<T> {
    /// `min_j x_j` over a subset of `[0,1]^n`.
    ConcaveUnitBox,
    /// `max{0, 1 + Σ(x_j − 1)}`, multilinear only.
    ConvexUnitBox,
    /// A single affine underestimator.
    Linear(LinearUnderestimator<T>),
    /// `max{0, max_β ℓ_β}` over a finite family.
    Family(Vec<LinearUnderestimator<T>>),
    ConcaveRatioBox,
    ConvexRatioBox,
    RelaxedConvexRatioBox,
    SymBoxLower,
    SymBoxUpper,
}

impl<T: Real> Estimator<T> {
    pub fn side(&self) -> Side {
        match self {
            Self::ConcaveUnitBox | Self::ConcaveRatioBox | Self::SymBoxUpper => Side::Over,
            _ => Side::Under,
        }
    }

    fn check(&self, m: &Monomial, dom: &Domain<T>) -> Result<()> {
        check_dim(m.n(), dom.dim())?;
        let unsupported = |what: &str| Err(Error::Unsupported(format!("{what} on the {}", dom.name())));
        match self {
            Self::ConcaveUnitBox if !dom.is_subset_of_unit_box() => unsupported("min_j x_j"),
            Self::ConvexUnitBox if !dom.is_subset_of_unit_box() || !m.is_multilinear() => {
                unsupported("the unit-box convex envelope")
            }
            Self::Linear(u) => check_dim(m.n(), u.beta().len()),
            Self::Family(us) => {
                if us.is_empty() {
                    return Err(Error::InvalidParameter("empty underestimator family".into()));
                }
                us.iter().try_for_each(|u| check_dim(m.n(), u.beta().len()))
            }
            Self::ConcaveRatioBox | Self::ConvexRatioBox | Self::RelaxedConvexRatioBox => {
                if matches!(dom, Domain::RatioBox { .. }) && m.is_multilinear() {
                    Ok(())
                } else {
                    unsupported("ratio-box envelopes")
                }
            }
            Self::SymBoxLower | Self::SymBoxUpper => {
                if matches!(dom, Domain::SymBox { .. }) && m.is_multilinear() {
                    Ok(())
                } else {
                    unsupported("symmetric-box envelopes")
                }
            }
            _ => Ok(()),
        }
    }

    /// Value at `x`; NaN when the closed form rejects the point.
    pub fn eval(&self, m: &Monomial, dom: &Domain<T>, x: &[T]) -> T {
        let nan = T::nan();
        match self {
            Self::ConcaveUnitBox => x.iter().copied().fold(T::infinity(), T::min),
            Self::ConvexUnitBox => envelopes::unit_hinge(x),
            Self::Linear(u) => u.value_unchecked(x),
            Self::Family(us) => us.iter().map(|u| u.value_unchecked(x)).fold(T::zero(), T::max),
            Self::ConcaveRatioBox | Self::ConvexRatioBox | Self::RelaxedConvexRatioBox => {
                let Domain::RatioBox { r, .. } = dom else { return nan };
                let n = m.n();
                match self {
                    Self::ConcaveRatioBox => envelopes::concave_env_ratiobox(n, *r, x),
                    Self::ConvexRatioBox => envelopes::convex_env_ratiobox(n, *r, x),
                    _ => envelopes::relaxed_convex_env_ratiobox(n, *r, x),
                }
                .unwrap_or(nan)
            }
            Self::SymBoxLower => envelopes::envelopes_symbox(m.n(), x).map(|v| v.0).unwrap_or(nan),
            Self::SymBoxUpper => envelopes::envelopes_symbox(m.n(), x).map(|v| v.1).unwrap_or(nan),
        }
    }
}

/// Largest gap between `est` and `x^α` over `dom`, compared against `bound`.
pub fn max_gap<T: Real>(
    m: &Monomial,
    dom: &Domain<T>,
    est: &Estimator<T>,
    side: Side,
    bound: T,
    tol: T,
    spec: &GridSpec,
) -> Result<ErrorReport<T>> {
    est.check(m, dom)?;
    if est.side() != side {
        return Err(Error::Unsupported(format!("estimator {est:?} does not lie on the {side:?} side")));
    }
    let gap = |x: &[T]| {
        let f = m.eval_unchecked(x);
        let e = est.eval(m, dom, x);
        match side {
            Side::Over => e - f,
            Side::Under => f - e,
        }
    };
    let best = maximize(gap, dom, spec)?;
    Ok(ErrorReport::new(bound, best.value, vec![best.point], tol).with_grid(spec.clone()))
}

/// Hull error `max{over − f, f − under}`; equals the larger of the two envelope gaps.
pub fn max_hull_error<T: Real>(
    m: &Monomial,
    dom: &Domain<T>,
    over: &Estimator<T>,
    under: &Estimator<T>,
    bound: T,
    tol: T,
    spec: &GridSpec,
) -> Result<ErrorReport<T>> {
    over.check(m, dom)?;
    under.check(m, dom)?;
    if over.side() != Side::Over || under.side() != Side::Under {
        return Err(Error::Unsupported("hull error needs an over- and an underestimator".into()));
    }
    let err = |x: &[T]| {
        let f = m.eval_unchecked(x);
        (over.eval(m, dom, x) - f).max(f - under.eval(m, dom, x))
    };
    let best = maximize(err, dom, spec)?;
    Ok(ErrorReport::new(bound, best.value, vec![best.point], tol).with_grid(spec.clone()))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Extremum {
    Min,
    Max,
}

/// `min` or `max` of `x^α` over `dom` with its location.
///
/// Closed forms: the simplex maximum `α^α/d^d` at `α/d`, the simplex minimum `0` at the
/// origin, and vertex enumeration on boxes where the monomial is monotone or multilinear.
/// Everything else goes through the grid.
pub fn extremize_f<T: Real>(m: &Monomial, dom: &Domain<T>, sense: Extremum, spec: &GridSpec) -> Result<(T, Vec<T>)> {
    check_dim(m.n(), dom.dim())?;
    let n = m.n();
    match (dom, sense) {
        (Domain::StdSimplex { .. }, Extremum::Max) => {
            let d = T::lit(m.degree() as f64);
            let point: Vec<T> = m.alpha().iter().map(|&a| T::lit(a as f64) / d).collect();
            let value = (m.ln_alpha_pow_alpha::<T>() - d * d.ln()).exp();
            return Ok((value, point));
        }
        (Domain::StdSimplex { .. }, Extremum::Min) => return Ok((T::zero(), vec![T::zero(); n])),
        _ => {}
    }
    let nonneg_box = dom.is_box() && dom.bounding_box().0.iter().all(|&l| l >= T::zero());
    if dom.is_box() && (nonneg_box || m.is_multilinear()) {
        let mut best: Option<(T, Vec<T>)> = None;
        for v in dom.vertices()? {
            let f = m.eval_unchecked(&v);
            let take = match &best {
                None => true,
                Some((b, _)) => match sense {
                    Extremum::Max => f > *b,
                    Extremum::Min => f < *b,
                },
            };
            if take {
                best = Some((f, v));
            }
        }
        return best.ok_or_else(|| Error::InvalidDomain("box without vertices".into()));
    }
    let sign = match sense {
        Extremum::Max => T::one(),
        Extremum::Min => -T::one(),
    };
    let best = maximize(|x: &[T]| sign * m.eval_unchecked(x), dom, spec)?;
    Ok((sign * best.value, best.point))
}

/// Largest dimension for the vertex LP.
pub const MAX_SAMPLED_HULL_DIM: usize = 4;

/// Envelope value at `x` from the linear program over convex combinations of box vertices.
///
/// Multilinear functions are vertex-extendable, so `min / max Σλ_v f(v)` subject to
/// `Σλ_v v = x`, `Σλ_v = 1`, `λ ≥ 0` is the convex / concave envelope.
pub fn sampled_hull_envelope<T: Real>(m: &Monomial, dom: &Domain<T>, x: &[T], side: Side) -> Result<T> {
    check_dim(m.n(), dom.dim())?;
    check_dim(m.n(), x.len())?;
    if !m.is_multilinear() {
        return Err(Error::Unsupported("the vertex LP is exact only for multilinear monomials".into()));
    }
    if !dom.is_box() {
        return Err(Error::Unsupported(format!("the vertex LP needs a box, got the {}", dom.name())));
    }
    let n = m.n();
    if n > MAX_SAMPLED_HULL_DIM {
        return Err(Error::ScaleExceeded { what: format!("vertex LP in dimension {n}"), limit: MAX_SAMPLED_HULL_DIM });
    }
    let verts = dom.vertices()?;
    let values: Vec<T> = verts.iter().map(|v| m.eval_unchecked(v)).collect();
    let sign = match side {
        Side::Over => T::one(),
        Side::Under => -T::one(),
    };
    let mut lp = LinearProgram::new(values.iter().map(|&f| sign * f).collect());
    for j in 0..n {
        lp.push(verts.iter().map(|v| v[j]).collect(), Sense::Eq, x[j]);
    }
    lp.push(vec![T::one(); verts.len()], Sense::Eq, T::one());
    match lp.solve()? {
        LpOutcome::Optimal { value, .. } => Ok(sign * value),
        LpOutcome::Infeasible => Err(Error::OutsideDomain),
        LpOutcome::Unbounded => Err(Error::InvalidParameter("vertex LP reported unbounded".into())),
    }
}

/// `σ(β) = d_β + min_{x∈S} (x^α − βᵀx)` by grid, refinement and vertex enumeration.
pub fn sigma_numeric<T: Real>(m: &Monomial, dom: &Domain<T>, beta: &[T], spec: &GridSpec) -> Result<T> {
    check_dim(m.n(), beta.len())?;
    check_dim(m.n(), dom.dim())?;
    let u = LinearUnderestimator::new(beta.to_vec(), T::one())?;
    let best = maximize(
        |x: &[T]| crate::domain::dot(beta, x) - m.eval_unchecked(x),
        dom,
        spec,
    )?;
    Ok(u.degree_beta() - best.value)
}

/// Error of the relaxation `{cvx_B(x) ≤ w ≤ min_j x_j}` over `[0,1]^n`, where
/// `cvx_B = max{0, sup_β σ(β) + Σβ_j(x_j − 1)}` and the family contains `α`.
/// The report compares against `C¹_d`.
pub fn relaxation_error_pb<T: Real>(
    m: &Monomial,
    family: &[(Vec<T>, T)],
    dom: &Domain<T>,
    spec: &GridSpec,
) -> Result<ErrorReport<T>> {
    let d = m.require_degree_at_least(2)?;
    check_dim(m.n(), dom.dim())?;
    if !dom.is_subset_of_unit_box() || !dom.contains_one() {
        return Err(Error::Unsupported("the relaxation needs 1 in a domain inside [0,1]^n".into()));
    }
    let alpha: Vec<T> = m.alpha_as();
    if !family.iter().any(|(b, _)| b.len() == alpha.len() && b.iter().zip(&alpha).all(|(&x, &y)| x == y)) {
        return Err(Error::InvalidParameter("the family must contain alpha".into()));
    }
    let us = family
        .iter()
        .map(|(b, s)| LinearUnderestimator::new(b.clone(), *s))
        .collect::<Result<Vec<_>>>()?;
    let unit = Domain::unit_box(m.n())?;
    let over = Estimator::ConcaveUnitBox;
    let under = Estimator::Family(us);
    max_hull_error(m, &unit, &over, &under, c1(d)?, T::lit(ORACLE_TOL), spec)
}
