//! Monomials `x^α` with positive integer exponents.

use crate::error::{check_dim, Error, Result};
use crate::scalar::{int_pow, Real};

/// A monomial `x^α = ∏ x_j^{α_j}` with every `α_j ≥ 1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial {
    alpha: Vec<u32>,
}

impl Monomial {
    pub fn new(alpha: Vec<u32>) -> Result<Self> {
        if alpha.is_empty() {
            return Err(Error::InvalidExponent("a monomial needs at least one variable".into()));
        }
        if let Some(j) = alpha.iter().position(|&a| a == 0) {
            return Err(Error::InvalidExponent(format!("exponent at index {j} is zero")));
        }
        Ok(Self { alpha })
    }

    /// The multilinear monomial `x_1 ⋯ x_n`.
    pub fn multilinear(n: usize) -> Result<Self> {
        Self::new(vec![1; n])
    }

    /// The symmetric monomial `(x_1 ⋯ x_n)^{a}`.
    pub fn symmetric(n: usize, a: u32) -> Result<Self> {
        Self::new(vec![a; n])
    }

    /// Builds a monomial from real exponents, rejecting anything fractional or below one.
    pub fn from_reals(alpha: &[f64]) -> Result<Self> {
        let ints = alpha
            .iter()
            .enumerate()
            .map(|(j, &a)| {
                if !a.is_finite() || a.fract() != 0.0 || a < 1.0 || a > u32::MAX as f64 {
                    Err(Error::InvalidExponent(format!("exponent {a} at index {j} is not a positive integer")))
                } else {
                    Ok(a as u32)
                }
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(ints)
    }

    pub fn alpha(&self) -> &[u32] {
        &self.alpha
    }

    pub fn n(&self) -> usize {
        self.alpha.len()
    }

    pub fn degree(&self) -> u32 {
        self.alpha.iter().sum()
    }

    pub fn is_multilinear(&self) -> bool {
        self.alpha.iter().all(|&a| a == 1)
    }

    pub fn is_symmetric(&self) -> bool {
        self.alpha.windows(2).all(|w| w[0] == w[1])
    }

    /// Error formulas need `d ≥ 2`.
    pub fn require_degree_at_least(&self, min: u32) -> Result<u32> {
        let d = self.degree();
        if d < min {
            Err(Error::DegreeTooSmall { degree: d, min })
        } else {
            Ok(d)
        }
    }

    pub fn alpha_as<T: Real>(&self) -> Vec<T> {
        self.alpha.iter().map(|&a| T::lit(a as f64)).collect()
    }

    /// Evaluates `x^α`, sign-correct for negative coordinates.
    pub fn eval<T: Real>(&self, x: &[T]) -> Result<T> {
        check_dim(self.n(), x.len())?;
        Ok(self.eval_unchecked(x))
    }

    #[inline]
    pub(crate) fn eval_unchecked<T: Real>(&self, x: &[T]) -> T {
        self.alpha
            .iter()
            .zip(x)
            .fold(T::one(), |acc, (&a, &xj)| acc * int_pow(xj, a))
    }

    /// `ln(α^α) = Σ α_j ln α_j`.
    pub fn ln_alpha_pow_alpha<T: Real>(&self) -> T {
        self.alpha.iter().fold(T::zero(), |acc, &a| {
            let a = T::lit(a as f64);
            acc + a * a.ln()
        })
    }
}

/// Transports an error across the coordinate scaling `x_j ↦ c_j x_j`: returns `|c^α| · err`.
pub fn scale_error<T: Real>(err: T, c: &[T], m: &Monomial) -> Result<T> {
    check_dim(m.n(), c.len())?;
    if let Some(j) = c.iter().position(|&v| v == T::zero()) {
        return Err(Error::ZeroScale(j));
    }
    Ok(m.eval_unchecked(c).abs() * err)
}

/// Maps an attainment point `(x, w)` of the unscaled box to the scaled box:
/// `x_j ↦ c_j x_j`, `w ↦ c^α w`.
pub fn scale_point<T: Real>(x: &[T], w: T, c: &[T], m: &Monomial) -> Result<(Vec<T>, T)> {
    check_dim(m.n(), c.len())?;
    check_dim(m.n(), x.len())?;
    if let Some(j) = c.iter().position(|&v| v == T::zero()) {
        return Err(Error::ZeroScale(j));
    }
    let xs = x.iter().zip(c).map(|(&xi, &ci)| xi * ci).collect();
    Ok((xs, m.eval_unchecked(c) * w))
}
