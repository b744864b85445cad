//! Deterministic one-dimensional root finding and maximisation.

use crate::scalar::Real;

pub const BISECTION_TOL: f64 = 1e-12;
pub const BISECTION_MAX_ITER: usize = 200;

/// Bisection for a sign change of `f` on `[lo, hi]`.
///
/// Stops when `|f(mid)| ≤ tol` or the bracket stops shrinking, after at most
/// [`BISECTION_MAX_ITER`] steps. Returns `None` if `f(lo)` and `f(hi)` share a strict sign.
pub fn bisect<T: Real>(f: impl Fn(T) -> T, mut lo: T, mut hi: T, tol: T) -> Option<T> {
    let mut flo = f(lo);
    let fhi = f(hi);
    if flo == T::zero() {
        return Some(lo);
    }
    if fhi == T::zero() {
        return Some(hi);
    }
    if (flo > T::zero()) == (fhi > T::zero()) {
        return None;
    }
    let two = T::lit(2.0);
    let mut mid = (lo + hi) / two;
    for _ in 0..BISECTION_MAX_ITER {
        mid = lo + (hi - lo) / two;
        let fm = f(mid);
        if fm.abs() <= tol || mid <= lo || mid >= hi {
            return Some(mid);
        }
        if (fm > T::zero()) == (flo > T::zero()) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    Some(mid)
}

/// Golden-section search for a maximum of `f` on `[a, b]`. Returns `(argmax, max)`.
/// For unimodal `f` the result is the maximiser; otherwise a local one.
pub fn golden_max<T: Real>(f: impl Fn(T) -> T, mut a: T, mut b: T, iters: usize) -> (T, T) {
    let inv_phi = (T::lit(5.0).sqrt() - T::one()) / T::lit(2.0);
    let mut c = b - inv_phi * (b - a);
    let mut d = a + inv_phi * (b - a);
    let mut fc = f(c);
    let mut fd = f(d);
    for _ in 0..iters {
        if b - a <= T::epsilon() * (a.abs() + b.abs() + T::one()) {
            break;
        }
        if fc >= fd {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = f(d);
        }
    }
    // endpoints can win for monotone f
    let mut best = if fc >= fd { (c, fc) } else { (d, fd) };
    for t in [a, b] {
        let v = f(t);
        if v > best.1 {
            best = (t, v);
        }
    }
    best
}
