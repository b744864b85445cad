//! Closed-form envelopes and linear underestimators.
//!
//! Unit box: `min_j x_j` is the concave envelope of every `x^α` with `α ≥ 1`, and
//! `max{0, 1 + Σ(x_j − 1)}` is the convex envelope of `x_1⋯x_n`.
//! Ratio box `[1,r]^n` and symmetric box `[-1,1]^n`: envelopes of the multilinear
//! monomial only. General monomials over those boxes are rejected.

use crate::domain::Domain;
use crate::error::{check_dim, Error, Result};
use crate::monomial::Monomial;
use crate::scalar::Real;

/// Boxes above this dimension use the sorted closed form for the symmetric-box envelopes.
pub const SYMBOX_ENUMERATION_LIMIT: usize = 20;

fn in_range<T: Real>(x: &[T], lo: T, hi: T) -> Result<()> {
    let tol = T::tol(1e-12);
    if x.iter().all(|&v| v >= lo - tol && v <= hi + tol) {
        Ok(())
    } else {
        Err(Error::OutsideDomain)
    }
}

fn sum<T: Real>(x: &[T]) -> T {
    x.iter().fold(T::zero(), |a, &b| a + b)
}

/// `min_j x_j` on `[0,1]^n`.
pub fn concave_env_unitbox<T: Real>(m: &Monomial, x: &[T]) -> Result<T> {
    check_dim(m.n(), x.len())?;
    in_range(x, T::zero(), T::one())?;
    Ok(x.iter().copied().fold(T::infinity(), T::min))
}

/// `max{0, 1 + Σ(x_j − 1)}` on `[0,1]^n`.
pub fn convex_env_unitbox_multilinear<T: Real>(n: usize, x: &[T]) -> Result<T> {
    check_dim(n, x.len())?;
    in_range(x, T::zero(), T::one())?;
    Ok(unit_hinge(x))
}

#[inline]
pub(crate) fn unit_hinge<T: Real>(x: &[T]) -> T {
    let s = x.iter().fold(T::one(), |acc, &v| acc + v - T::one());
    s.max(T::zero())
}

/// Affine function `intercept + Σ β_j (x_j − 1)` with `β ≥ 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct LinearUnderestimator<T> {
    beta: Vec<T>,
    intercept: T,
}

impl<T: Real> LinearUnderestimator<T> {
    pub fn new(beta: Vec<T>, intercept: T) -> Result<Self> {
        if beta.is_empty() {
            return Err(Error::InvalidParameter("beta must be nonempty".into()));
        }
        if let Some(j) = beta.iter().position(|&b| !(b >= T::one()) || !b.is_finite()) {
            return Err(Error::InvalidParameter(format!("beta[{j}] = {} is below 1", beta[j])));
        }
        Ok(Self { beta, intercept })
    }

    /// `ℓ_α`: the tangent plane of `x^α` at `1`.
    pub fn tangent_at_one(m: &Monomial) -> Self {
        Self { beta: m.alpha_as(), intercept: T::one() }
    }

    /// `ℓ_γ` built from the coordinate projections of `dom`.
    pub fn gamma(m: &Monomial, dom: &Domain<T>) -> Result<Self> {
        Ok(Self { beta: gamma_vector(m, dom)?, intercept: T::one() })
    }

    pub fn beta(&self) -> &[T] {
        &self.beta
    }

    pub fn intercept(&self) -> T {
        self.intercept
    }

    pub fn degree_beta(&self) -> T {
        sum(&self.beta)
    }

    pub fn value(&self, x: &[T]) -> Result<T> {
        check_dim(self.beta.len(), x.len())?;
        Ok(self.value_unchecked(x))
    }

    #[inline]
    pub(crate) fn value_unchecked(&self, x: &[T]) -> T {
        self.beta
            .iter()
            .zip(x)
            .fold(self.intercept, |acc, (&b, &v)| acc + b * (v - T::one()))
    }
}

pub fn underestimator_value<T: Real>(u: &LinearUnderestimator<T>, x: &[T]) -> Result<T> {
    u.value(x)
}

/// `γ_i = (1 − (1 − σ²_i)^{α_i}) / σ²_i` where `1 − σ²_i` is the largest value of
/// `x_i` over the domain; `γ_i = α_i` when `σ²_i = 0`.
pub fn gamma_vector<T: Real>(m: &Monomial, dom: &Domain<T>) -> Result<Vec<T>> {
    check_dim(m.n(), dom.dim())?;
    if !dom.is_subset_of_unit_box() {
        return Err(Error::Unsupported(format!("gamma needs a domain inside [0,1]^n, got {}", dom.name())));
    }
    let (_, upper) = dom.bounding_box();
    Ok(m.alpha()
        .iter()
        .zip(&upper)
        .map(|(&a, &u)| gamma_coordinate(a, T::one() - u))
        .collect())
}

pub(crate) fn gamma_coordinate<T: Real>(alpha: u32, sigma2: T) -> T {
    if sigma2 <= T::zero() {
        return T::lit(alpha as f64);
    }
    // 1 − (1 − σ)^α without cancellation for small σ
    let a = T::lit(alpha as f64);
    -(a * (-sigma2).ln_1p()).exp_m1() / sigma2
}

fn check_multilinear_dim<T: Real>(n: usize, x: &[T]) -> Result<()> {
    if n == 0 {
        return Err(Error::InvalidParameter("n must be positive".into()));
    }
    check_dim(n, x.len())
}

fn check_ratio<T: Real>(r: T) -> Result<()> {
    if r > T::one() && r.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidDomain(format!("ratio box needs r > 1, got {r}")))
    }
}

/// Concave envelope of `x_1⋯x_n` over `[1,r]^n`.
///
/// Sorting `x` descending, the value is `Σ_j r^{j−1} x_(j) − Σ_{j=1}^{n−1} r^j`: the
/// largest weight multiplies the smallest coordinate. Ties keep index order.
pub fn concave_env_ratiobox<T: Real>(n: usize, r: T, x: &[T]) -> Result<T> {
    check_multilinear_dim(n, x)?;
    check_ratio(r)?;
    in_range(x, T::one(), r)?;
    let mut sorted = x.to_vec();
    sorted.sort_by(|a, b| b.partial_cmp(a).unwrap_or(std::cmp::Ordering::Equal));
    let mut weight = T::one();
    let mut value = T::zero();
    let mut offset = T::zero();
    for (j, &v) in sorted.iter().enumerate() {
        value += weight * v;
        if j + 1 < n {
            weight *= r;
            offset += weight;
        }
    }
    Ok(value - offset)
}

/// Convex envelope of `x_1⋯x_n` over `[1,r]^n`:
/// `max_{i=1..n} r^{i−1}(Σx_j − (n−i) − r(i−1))`.
pub fn convex_env_ratiobox<T: Real>(n: usize, r: T, x: &[T]) -> Result<T> {
    check_multilinear_dim(n, x)?;
    check_ratio(r)?;
    in_range(x, T::one(), r)?;
    Ok(ratio_convex_piece_max(n, r, sum(x), 1..=n))
}

/// The relaxation of [`convex_env_ratiobox`] that keeps only the pieces `i ∈ {1, n}`.
pub fn relaxed_convex_env_ratiobox<T: Real>(n: usize, r: T, x: &[T]) -> Result<T> {
    check_multilinear_dim(n, x)?;
    check_ratio(r)?;
    in_range(x, T::one(), r)?;
    Ok(ratio_convex_piece_max(n, r, sum(x), [1, n]))
}

fn ratio_convex_piece_max<T: Real>(n: usize, r: T, s: T, pieces: impl IntoIterator<Item = usize>) -> T {
    let nn = T::from_usize_lossy(n);
    pieces
        .into_iter()
        .map(|i| {
            let fi = T::from_usize_lossy(i);
            r.powi(i as i32 - 1) * (s - (nn - fi) - r * (fi - T::one()))
        })
        .fold(T::neg_infinity(), T::max)
}

/// `(convex, concave)` envelope values of `x_1⋯x_n` over `[-1,1]^n`, read off the
/// facet description of the hull and clipped to `[-1, 1]`.
pub fn envelopes_symbox<T: Real>(n: usize, x: &[T]) -> Result<(T, T)> {
    check_multilinear_dim(n, x)?;
    in_range(x, -T::one(), T::one())?;
    Ok(if n <= SYMBOX_ENUMERATION_LIMIT {
        symbox_envelopes_enumerated(x)
    } else {
        symbox_envelopes_closed_form(x)
    })
}

/// Enumerates every signed subset: the lower bound uses even subsets `I` of `{1..n}`
/// (`w ≥ Σ_{i∉I} x_i − Σ_{i∈I} x_i − (n−1)`), the upper bound odd subsets `J`
/// (`w ≤ Σ_{j∈J} x_j − Σ_{j∉J} x_j + (n−1)`).
pub fn symbox_envelopes_enumerated<T: Real>(x: &[T]) -> (T, T) {
    let n = x.len();
    let slack = T::from_usize_lossy(n - 1);
    let mut best_even = T::neg_infinity();
    let mut best_odd = T::neg_infinity();
    for mask in 0u64..1u64 << n {
        // Σ s_i x_i with s_i = −1 on the subset
        let signed = x.iter().enumerate().fold(T::zero(), |acc, (i, &v)| {
            if mask >> i & 1 == 1 {
                acc - v
            } else {
                acc + v
            }
        });
        if mask.count_ones() % 2 == 0 {
            best_even = best_even.max(signed);
        } else {
            best_odd = best_odd.max(signed);
        }
    }
    finish_symbox(best_even, best_odd, slack)
}

/// Closed form of [`symbox_envelopes_enumerated`]: the best signed sum with a given
/// parity of negative signs is `Σ|x_i|`, minus `2·min|x_i|` when the sign pattern of
/// `x` has the wrong parity.
pub fn symbox_envelopes_closed_form<T: Real>(x: &[T]) -> (T, T) {
    let n = x.len();
    let abs_sum = x.iter().fold(T::zero(), |a, &v| a + v.abs());
    let min_abs = x.iter().fold(T::infinity(), |a, &v| a.min(v.abs()));
    let negatives = x.iter().filter(|&&v| v < T::zero()).count();
    let two = T::lit(2.0);
    let (best_even, best_odd) = if negatives % 2 == 0 {
        (abs_sum, abs_sum - two * min_abs)
    } else {
        (abs_sum - two * min_abs, abs_sum)
    };
    finish_symbox(best_even, best_odd, T::from_usize_lossy(n - 1))
}

fn finish_symbox<T: Real>(best_even: T, best_odd: T, slack: T) -> (T, T) {
    let lo = (best_even - slack).max(-T::one());
    let hi = (slack - best_odd).min(T::one());
    (lo, hi)
}

/// Necessary conditions for `ℓ_β = 1 + Σβ_j(x_j − 1)` to underestimate `x^α` on `dom`.
///
/// For every `i` with `β_i ≤ α_i` whose edge `E_i = conv{1, 1 − e_i}` meets the domain
/// in its relative interior, `β_i` must lie in `[α_i(1 − τ²_i)^{α_i−1}, α_i]` (or in
/// `[γ_i, α_i]` when `τ²_i = σ²_i`), where `1 − τ²_i` is the largest `x_i` on that edge.
/// Passing is not a certificate of validity.
pub fn b1_necessary_condition<T: Real>(m: &Monomial, dom: &Domain<T>, beta: &[T]) -> Result<bool> {
    check_dim(m.n(), beta.len())?;
    check_dim(m.n(), dom.dim())?;
    LinearUnderestimator::new(beta.to_vec(), T::one())?;
    if !dom.is_subset_of_unit_box() {
        return Err(Error::Unsupported(format!("necessary conditions need a domain inside [0,1]^n, got {}", dom.name())));
    }
    let n = m.n();
    let ones = vec![T::one(); n];
    let (_, upper) = dom.bounding_box();
    let tiny = T::tol(1e-12);
    for i in 0..n {
        let a = T::lit(m.alpha()[i] as f64);
        if beta[i] > a {
            continue;
        }
        let mut dir = vec![T::zero(); n];
        dir[i] = T::one();
        let Some((tlo, thi)) = dom.line_range(&ones, &dir) else { continue };
        let lo = tlo.max(-T::one());
        let hi = thi.min(T::zero());
        // relint E_i is x_i ∈ (0,1), i.e. t ∈ (−1, 0)
        if lo > hi || hi <= -T::one() || lo >= T::zero() {
            continue;
        }
        let tau2 = -hi;
        let sigma2 = T::one() - upper[i];
        let lower = if tau2 > sigma2 + tiny {
            a * (T::one() - tau2).powi(m.alpha()[i] as i32 - 1)
        } else {
            gamma_coordinate(m.alpha()[i], sigma2)
        };
        if beta[i] < lower - tiny {
            return Ok(false);
        }
    }
    Ok(true)
}
