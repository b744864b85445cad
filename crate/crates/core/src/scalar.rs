//! Scalar abstraction shared by every numeric routine in the crate.

use num_traits::{Float, FloatConst, FromPrimitive, NumAssign, ToPrimitive};
use std::fmt::{Debug, Display, LowerExp};

/// Floating point type the library computes in.
///
/// Implemented for `f32` and `f64`. Every envelope, bound and oracle routine is
/// written against this trait; the crate root exposes `f64` aliases for the
/// common case.
pub trait Real:
    'static
    + Float
    + FloatConst
    + NumAssign
    + FromPrimitive
    + ToPrimitive
    + Default
    + Debug
    + Display
    + LowerExp
    + Send
    + Sync
{
    /// Converts an `f64` literal. Values outside the range of `Self` become infinities.
    #[inline]
    fn lit(x: f64) -> Self {
        Self::from_f64(x).unwrap_or_else(|| if x > 0.0 { Self::infinity() } else { Self::neg_infinity() })
    }

    #[inline]
    fn from_usize_lossy(k: usize) -> Self {
        Self::from_usize(k).unwrap_or_else(Self::infinity)
    }

    #[inline]
    fn as_f64(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }

    /// Smallest tolerance that is meaningful at this precision, floored at `requested`.
    #[inline]
    fn tol(requested: f64) -> Self {
        let eps = Self::epsilon() * Self::lit(64.0);
        Self::lit(requested).max(eps)
    }
}

impl Real for f32 {}
impl Real for f64 {}

/// `base^exp` for a nonnegative integer exponent by repeated squaring on `|base|`
/// with the sign restored afterwards.
pub fn int_pow<T: Real>(base: T, exp: u32) -> T {
    let negative = base < T::zero() && exp % 2 == 1;
    let mut acc = T::one();
    let mut sq = base.abs();
    let mut e = exp;
    while e > 0 {
        if e & 1 == 1 {
            acc *= sq;
        }
        e >>= 1;
        if e > 0 {
            sq = sq * sq;
        }
    }
    if negative {
        -acc
    } else {
        acc
    }
}

/// `ln(e^a + e^b)` without overflow.
pub fn log_add_exp<T: Real>(a: T, b: T) -> T {
    if a == T::neg_infinity() {
        return b;
    }
    if b == T::neg_infinity() {
        return a;
    }
    let (hi, lo) = if a >= b { (a, b) } else { (b, a) };
    hi + (lo - hi).exp().ln_1p()
}

/// `ln Σ e^{v_i}`.
pub fn log_sum_exp<T: Real>(values: impl IntoIterator<Item = T>) -> T {
    values.into_iter().fold(T::neg_infinity(), log_add_exp)
}

/// `ln C(a, b)` summed term by term.
pub fn ln_binomial<T: Real>(a: u64, b: u64) -> T {
    if b > a {
        return T::neg_infinity();
    }
    let b = b.min(a - b);
    (0..b).fold(T::zero(), |acc, k| {
        let num = T::from_u64(a - k).unwrap_or_else(T::infinity);
        let den = T::from_u64(k + 1).unwrap_or_else(T::infinity);
        acc + num.ln() - den.ln()
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn int_pow_matches_powi() {
        for &b in &[-2.5f64, -1.0, -0.3, 0.0, 0.7, 1.0, 3.0] {
            for e in 0..9u32 {
                let want = b.powi(e as i32);
                assert!((int_pow(b, e) - want).abs() <= 1e-12 * want.abs().max(1.0));
            }
        }
        assert_eq!(int_pow(-1.0f32, 3), -1.0);
        assert_eq!(int_pow(0.0f64, 0), 1.0);
    }

    #[test]
    fn log_sum_exp_is_stable() {
        let v = log_sum_exp([1000.0f64, 1000.0]);
        assert!((v - (1000.0 + 2f64.ln())).abs() < 1e-12);
        assert_eq!(log_sum_exp(std::iter::empty::<f64>()), f64::NEG_INFINITY);
    }

    #[test]
    fn binomials() {
        let c: f64 = ln_binomial(6, 3);
        assert!((c.exp() - 20.0).abs() < 1e-9);
        let c: f64 = ln_binomial(4, 2);
        assert!((c.exp() - 6.0).abs() < 1e-12);
        assert_eq!(ln_binomial::<f64>(3, 5), f64::NEG_INFINITY);
    }
}
