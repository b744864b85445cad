//! Error constants and bound formulas.
//!
//! Anything that can overflow (`r^n` for large `n`) is evaluated through logarithms and
//! reconstructed at the end; ratios are formed from logarithms.

use crate::domain::Domain;
use crate::envelopes::LinearUnderestimator;
use crate::error::{check_dim, Error, Result};
use crate::monomial::Monomial;
use crate::scalar::{log_sum_exp, Real};
use crate::univariate::{bisect, golden_max, BISECTION_TOL};
use rayon::prelude::*;

fn require_degree(d: u32) -> Result<()> {
    if d < 2 {
        Err(Error::DegreeTooSmall { degree: d, min: 2 })
    } else {
        Ok(())
    }
}

fn real<T: Real>(k: u32) -> T {
    T::lit(k as f64)
}

/// `ln(e^y − 1)` for `y > 0`, accurate for both tiny and huge `y`.
pub(crate) fn ln_expm1<T: Real>(y: T) -> T {
    if y > T::lit(30.0) {
        y + (-(-y).exp()).ln_1p()
    } else {
        y.exp_m1().ln()
    }
}

/// `C¹_d = (1 − 1/d)·d^{1/(1−d)}`: the concave-envelope error over `[0,1]^n`.
pub fn c1<T: Real>(d: u32) -> Result<T> {
    require_degree(d)?;
    let dd = real::<T>(d);
    Ok((T::one() - T::one() / dd) * (dd.ln() / (T::one() - dd)).exp())
}

/// `C²_d = (1 − 1/d)^d`: the convex-envelope error bound over subsets of `[0,1]^n`.
pub fn c2<T: Real>(d: u32) -> Result<T> {
    require_degree(d)?;
    let dd = real::<T>(d);
    Ok((dd * (-T::one() / dd).ln_1p()).exp())
}

/// Both degree constants for one degree.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundSet<T> {
    pub degree: u32,
    pub c1: T,
    pub c2: T,
}

impl<T: Real> BoundSet<T> {
    pub fn new(degree: u32) -> Result<Self> {
        Ok(Self { degree, c1: c1(degree)?, c2: c2(degree)? })
    }

    pub fn for_monomial(m: &Monomial) -> Result<Self> {
        Self::new(m.degree())
    }

    /// Hull error over any `S` with `0, 1 ∈ S ⊆ [0,1]^n`; the concave side dominates.
    pub fn hull_error(&self) -> T {
        self.c1.max(self.c2)
    }

    /// Diagonal coordinate `d^{1/(1−d)}` where the concave error is attained.
    pub fn concave_attainment(&self) -> T {
        let d = real::<T>(self.degree);
        (d.ln() / (T::one() - d)).exp()
    }

    /// Diagonal coordinate `1 − 1/d` where the convex error of the multilinear case is attained.
    pub fn convex_attainment(&self) -> T {
        T::one() - T::one() / real::<T>(self.degree)
    }
}

/// Concave-envelope error given the range `[fmin, fmax]` of `x^α` over `S`.
///
/// Returns `(bound, ξ′)` with `ξ′ = min{max{fmin, d^{d/(1−d)}}, fmax}` and
/// `bound = ξ′^{1/d} − ξ′`, attained only at `ξ′^{1/d}·1`.
pub fn concave_bound_xi<T: Real>(m: &Monomial, fmin: T, fmax: T) -> Result<(T, T)> {
    let d = m.require_degree_at_least(2)?;
    if !(T::zero() <= fmin && fmin <= fmax && fmax <= T::one()) {
        return Err(Error::InvalidParameter(format!("need 0 <= fmin <= fmax <= 1, got fmin={fmin}, fmax={fmax}")));
    }
    let dd = real::<T>(d);
    let free = (dd * dd.ln() / (T::one() - dd)).exp();
    let xi = fmin.max(free).min(fmax);
    Ok((xi.powf(T::one() / dd) - xi, xi))
}

/// `(1 − 1/d_γ)^{d_γ}` with `d_γ = Σγ_j`.
pub fn gamma_bound<T: Real>(gamma: &[T]) -> Result<T> {
    if let Some(j) = gamma.iter().position(|&g| !(g >= T::one())) {
        return Err(Error::InvalidParameter(format!("gamma[{j}] is below 1")));
    }
    let dg = gamma.iter().fold(T::zero(), |a, &b| a + b);
    if !(dg > T::one()) {
        return Err(Error::InvalidParameter(format!("gamma degree {dg} must exceed 1")));
    }
    Ok((dg * (-T::one() / dg).ln_1p()).exp())
}

/// Convex-side bound built from the coordinate projections of `dom`.
pub fn gamma_bound_for<T: Real>(m: &Monomial, dom: &Domain<T>) -> Result<T> {
    m.require_degree_at_least(2)?;
    let u = LinearUnderestimator::gamma(m, dom)?;
    gamma_bound(u.beta())
}

/// Error along the segment `{t·1 : t ∈ [t1, t2]}` between `x^α` and its chord.
///
/// Returns `(φ(ξ′), ξ′)` where `φ(ξ) = t₁^d + (t₂^d − t₁^d)ξ − (t₁ + (t₂ − t₁)ξ)^d` and
/// `ξ′` is its maximiser clipped to `[0, 1]`.
pub fn lower_bound_phi<T: Real>(d: u32, t1: T, t2: T) -> Result<(T, T)> {
    require_degree(d)?;
    if !(T::zero() <= t1 && t1 < t2) || !t2.is_finite() {
        return Err(Error::InvalidParameter(format!("need 0 <= t1 < t2, got t1={t1}, t2={t2}")));
    }
    let dd = real::<T>(d);
    let (a, b) = (t1.powi(d as i32), t2.powi(d as i32));
    let w = t2 - t1;
    let xi = ((b - a) / dd).powf(T::one() / (dd - T::one())) * w.powf(dd / (T::one() - dd)) - t1 / w;
    let xi = xi.max(T::zero()).min(T::one());
    let phi = a + (b - a) * xi - (t1 + w * xi).powi(d as i32);
    Ok((phi, xi))
}

/// Envelope errors over the standard simplex: `(conc, cvx)` with
/// `cvx = α^α/d^d` and `conc = (α^α)^{1/d}/d − α^α/d^d`.
pub fn simplex_bounds<T: Real>(m: &Monomial) -> Result<(T, T)> {
    let d = m.require_degree_at_least(2)?;
    if m.n() < 2 {
        return Err(Error::InvalidParameter("simplex bounds need n >= 2".into()));
    }
    let la = m.ln_alpha_pow_alpha::<T>();
    let dd = real::<T>(d);
    let cvx = (la - dd * dd.ln()).exp();
    let conc = (la / dd - dd.ln()).exp() - cvx;
    Ok((conc, cvx))
}

/// What is known in closed form about `σ(β) = d_β + min_S (x^α − βᵀx)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SigmaValue<T> {
    Exact(T),
    /// `lo ≤ σ ≤ hi`, or `lo ≤ σ < hi` when `hi_open`.
    Interval { lo: T, hi: T, hi_open: bool },
}

impl<T: Real> SigmaValue<T> {
    pub fn contains(&self, v: T, tol: T) -> bool {
        match *self {
            Self::Exact(s) => (v - s).abs() <= tol,
            Self::Interval { lo, hi, hi_open } => {
                v >= lo - tol && if hi_open { v < hi + tol } else { v <= hi + tol }
            }
        }
    }
}

pub fn sigma_beta<T: Real>(m: &Monomial, dom: &Domain<T>, beta: &[T]) -> Result<SigmaValue<T>> {
    check_dim(m.n(), beta.len())?;
    check_dim(m.n(), dom.dim())?;
    let u = LinearUnderestimator::new(beta.to_vec(), T::one())?;
    if !dom.is_subset_of_unit_box() {
        return Err(Error::Unsupported(format!("sigma needs a domain inside [0,1]^n, got {}", dom.name())));
    }
    if let Domain::ComplementSimplex { .. } = dom {
        return Ok(SigmaValue::Exact(beta.iter().copied().fold(T::infinity(), T::min)));
    }
    if dom.contains_one() {
        // 1 ∈ S caps σ at 1, and ℓ_β with intercept 1 is valid once β ≥ γ(S)
        let gamma = crate::envelopes::gamma_vector(m, dom)?;
        if beta.iter().zip(&gamma).all(|(&b, &g)| b >= g) {
            return Ok(SigmaValue::Exact(T::one()));
        }
    }
    if let Domain::UnitBox { .. } = dom {
        return Ok(SigmaValue::Interval { lo: T::zero(), hi: T::one(), hi_open: false });
    }
    Ok(SigmaValue::Interval { lo: T::zero(), hi: u.degree_beta(), hi_open: true })
}

fn check_beta_kappa<T: Real>(m: &Monomial, beta: &[T], kappa: &[T], sigma: T) -> Result<(T, T)> {
    check_dim(m.n(), beta.len())?;
    check_dim(m.n(), kappa.len())?;
    let db = LinearUnderestimator::new(beta.to_vec(), T::one())?.degree_beta();
    for (j, (&k, &a)) in kappa.iter().zip(m.alpha()).enumerate() {
        if !(k >= T::one() && k <= real::<T>(a)) {
            return Err(Error::InvalidParameter(format!("kappa[{j}] = {k} must lie in [1, alpha_j]")));
        }
    }
    let r = beta.iter().zip(kappa).map(|(&b, &k)| b / k).fold(T::neg_infinity(), T::max);
    if r < T::one() {
        return Err(Error::InvalidParameter("kappa exceeds beta in every coordinate".into()));
    }
    if !(T::zero() <= sigma && sigma < db) {
        return Err(Error::InvalidParameter(format!("sigma = {sigma} must lie in [0, d_beta)")));
    }
    Ok((db, r))
}

/// `C_{β,κ} = (1 − σ/d_β)^{d_β/r}` with `r = max_j β_j/κ_j`.
pub fn c_beta_kappa<T: Real>(m: &Monomial, beta: &[T], kappa: &[T], sigma: T) -> Result<T> {
    let (db, r) = check_beta_kappa(m, beta, kappa, sigma)?;
    Ok((db / r * (-sigma / db).ln_1p()).exp())
}

/// `φ_{β,κ}(t) = d_β − σ + t − d_β·t^{r/d_β}`, whose unique fixed point is `C_{β,κ}`.
pub fn phi_beta_kappa<T: Real>(m: &Monomial, beta: &[T], kappa: &[T], sigma: T, t: T) -> Result<T> {
    let (db, r) = check_beta_kappa(m, beta, kappa, sigma)?;
    Ok(db - sigma + t - db * t.powf(r / db))
}

/// Convex-side error bound for the underestimator family `B = {(β, σ(β))}`.
///
/// If some `α_j ≤ min_β β_j` then `κ* = α` is maximal in the admissible set and the bound is
/// `inf_β C_{β,α}`. Otherwise each candidate `κ` equals `α` except `κ_j = min_β β_j`, and the
/// smallest `inf_β C_{β,κ}` over the candidates is returned.
pub fn errenv_bound<T: Real>(m: &Monomial, family: &[(Vec<T>, T)]) -> Result<T> {
    if family.is_empty() {
        return Err(Error::InvalidParameter("the underestimator family is empty".into()));
    }
    let n = m.n();
    let alpha: Vec<T> = m.alpha_as();
    let mut floor = vec![T::infinity(); n];
    for (beta, _) in family {
        check_dim(n, beta.len())?;
        for (f, &b) in floor.iter_mut().zip(beta) {
            *f = f.min(b);
        }
    }
    let inf_over = |kappa: &[T]| -> Result<T> {
        family
            .iter()
            .map(|(beta, sigma)| c_beta_kappa(m, beta, kappa, *sigma))
            .try_fold(T::infinity(), |acc, c| c.map(|c| acc.min(c)))
    };
    if alpha.iter().zip(&floor).any(|(&a, &f)| a <= f) {
        return inf_over(&alpha);
    }
    let mut best = T::infinity();
    for j in 0..n {
        let mut kappa = alpha.clone();
        kappa[j] = alpha[j].min(floor[j]);
        best = best.min(inf_over(&kappa)?);
    }
    Ok(best)
}

/// Exact envelope errors of `x_1⋯x_n` over `[1,r]^n`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RatioBoxConstants<T> {
    pub n: usize,
    pub r: T,
    /// Convex-envelope error `D_{r,n}`.
    pub d: T,
    /// Concave-envelope error `E_{r,n}`.
    pub e: T,
    /// Error of the convex envelope restricted to the pieces `i ∈ {1, n}`.
    pub relaxed: T,
    pub ln_d: T,
    pub ln_e: T,
    pub ln_relaxed: T,
    /// The `i` attaining `D`; the error sits at `(1 + i(r−1)/n)·1`.
    pub d_index: usize,
    /// Diagonal coordinate `t` where `E` is attained.
    pub e_point: T,
    /// Diagonal coordinate where the relaxed convex error is attained.
    pub relaxed_point: T,
}

impl<T: Real> RatioBoxConstants<T> {
    pub fn ratio(&self) -> T {
        (self.ln_d - self.ln_e).exp()
    }

    pub fn relaxed_ratio(&self) -> T {
        (self.ln_relaxed - self.ln_e).exp()
    }

    pub fn d_point(&self) -> T {
        T::one() + T::from_usize_lossy(self.d_index) * (self.r - T::one()) / T::from_usize_lossy(self.n)
    }

    /// `ln(r^n − 1)`.
    pub fn ln_span(&self) -> T {
        ln_expm1(T::from_usize_lossy(self.n) * self.r.ln())
    }
}

fn check_ratio_params<T: Real>(n: usize, r: T) -> Result<()> {
    if n < 2 {
        return Err(Error::InvalidParameter(format!("ratio box constants need n >= 2, got {n}")));
    }
    if !(r > T::one()) || !r.is_finite() {
        return Err(Error::InvalidDomain(format!("ratio box needs r > 1, got {r}")));
    }
    Ok(())
}

/// Computes `D_{r,n}` by enumerating the breakpoints `i = 1..n−1`, `E_{r,n}` from its closed
/// form, and the relaxed convex error.
///
/// `D_i = r^i·expm1(n·ln(1 + i(r−1)/n) − i·ln r)`. `E = (t−1)·Σ_{k=1}^{n−1}(r^k − t^k)` with
/// `t = (Σ_{k<n} r^k / n)^{1/(n−1)}`, algebraically equal to
/// `1 + ((r^n−1)/(r−1))·[((n−1)/n)·((r^n−1)/(n(r−1)))^{1/(n−1)} − 1]`.
pub fn ratio_box_constants<T: Real>(n: usize, r: T) -> Result<RatioBoxConstants<T>> {
    check_ratio_params(n, r)?;
    let nn = T::from_usize_lossy(n);
    let n1 = nn - T::one();
    let s = r - T::one();
    let lr = s.ln_1p();

    let mut ln_d = T::neg_infinity();
    let mut d_index = 1;
    for i in 1..n {
        let fi = T::from_usize_lossy(i);
        let x = nn * (fi * s / nn).ln_1p() - fi * lr;
        if x > T::zero() {
            let cand = fi * lr + ln_expm1(x);
            if cand > ln_d {
                ln_d = cand;
                d_index = i;
            }
        }
    }

    let guard = T::max_value().ln() * T::lit(0.5);
    let ln_t = if n1 * lr < guard {
        let excess = (1..n).fold(T::zero(), |acc, k| acc + (T::from_usize_lossy(k) * lr).exp_m1());
        (excess / nn).ln_1p() / n1
    } else {
        let ln_g = log_sum_exp((0..n).map(|k| T::from_usize_lossy(k) * lr));
        (ln_g - nn.ln()) / n1
    };
    let ln_e = ln_expm1(ln_t)
        + log_sum_exp((1..n).map(|k| {
            let fk = T::from_usize_lossy(k);
            fk * ln_t + ln_expm1(fk * (lr - ln_t))
        }));

    // relaxed breakpoint t_c − 1 = (r−1)² Σ_{k=0}^{n−2}(k+1)r^k / (n(r^{n−1} − 1))
    let ln_tc1 = T::lit(2.0) * s.ln()
        + log_sum_exp((0..n - 1).map(|k| T::from_usize_lossy(k + 1).ln() + T::from_usize_lossy(k) * lr))
        - nn.ln()
        - ln_expm1(n1 * lr);
    let ln_tc = crate::scalar::log_add_exp(T::zero(), ln_tc1);
    let ln_relaxed = ln_tc1 + log_sum_exp((1..n).map(|k| ln_expm1(T::from_usize_lossy(k) * ln_tc)));

    Ok(RatioBoxConstants {
        n,
        r,
        d: ln_d.exp(),
        e: ln_e.exp(),
        relaxed: ln_relaxed.exp(),
        ln_d,
        ln_e,
        ln_relaxed,
        d_index,
        e_point: ln_t.exp(),
        relaxed_point: ln_tc.exp(),
    })
}

/// One row of the ratio-box comparison table.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Figure1Row<T> {
    pub n: usize,
    pub r: T,
    pub d: T,
    pub e: T,
    pub ratio: T,
    pub relaxed_ratio: T,
}

pub fn figure1_row<T: Real>(n: usize, r: T) -> Result<Figure1Row<T>> {
    let c = ratio_box_constants(n, r)?;
    Ok(Figure1Row { n, r, d: c.d, e: c.e, ratio: c.ratio(), relaxed_ratio: c.relaxed_ratio() })
}

/// Rows for every `r` (outer) and `n` (inner), computed in parallel and returned in that order.
pub fn figure1_table<T: Real>(ns: &[usize], rs: &[T]) -> Result<Vec<Figure1Row<T>>> {
    let jobs: Vec<(usize, T)> = rs.iter().flat_map(|&r| ns.iter().map(move |&n| (n, r))).collect();
    jobs.par_iter().map(|&(n, r)| figure1_row(n, r)).collect()
}

/// Which of the three stationary-point cases produced a [`DBoundCases`] bound.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DCase {
    /// `t* ≥ (n−1)/n`: the bound is the exact value at `i = n−1`.
    Exact,
    /// `t** ≤ (n−1)/n`: `r^n(ln r/(r−1))^{n/(n−1)} − r^{n−1}`.
    InteriorMax,
    /// Otherwise: `r^{n²/(n−1)}(ln r/(r−1))^{n/(n−1)} − r^n`.
    LateMax,
}

impl std::fmt::Display for DCase {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Self::Exact => "exact",
            Self::InteriorMax => "interior-max",
            Self::LateMax => "late-max",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DBoundCases<T> {
    pub bound: T,
    pub case: DCase,
    /// Smallest stationary point of `ψ` on `[0,1]`.
    pub t_star: T,
    /// Global maximiser of `ψ` on `[0,1]`.
    pub t_star_star: T,
}

pub const PSI_SCAN_POINTS: usize = 10_000;

/// `ψ(t) = (1 + (r−1)t)^n − r^{nt}`.
pub fn psi<T: Real>(n: usize, r: T, t: T) -> T {
    let (a, b) = psi_logs(n, r, t);
    b.exp() * (a - b).exp_m1()
}

fn psi_logs<T: Real>(n: usize, r: T, t: T) -> (T, T) {
    let nn = T::from_usize_lossy(n);
    (nn * ((r - T::one()) * t).ln_1p(), nn * t * r.ln())
}

/// `ψ′(t) = n(r−1)(1 + (r−1)t)^{n−1} − n·ln r·r^{nt}`.
pub fn psi_prime<T: Real>(n: usize, r: T, t: T) -> T {
    let nn = T::from_usize_lossy(n);
    let s = r - T::one();
    nn * s * ((nn - T::one()) * (s * t).ln_1p()).exp() - nn * r.ln() * (nn * t * r.ln()).exp()
}

/// Evaluates the three-case upper bound on `D_{r,n}` built from the stationary points of `ψ`.
///
/// `ψ′ > 0` exactly where `ln(r−1) + (n−1)ln(1+(r−1)t) − ln ln r − nt·ln r > 0`, so `t*` is
/// found by bisection on that expression. `t**` comes from a scan of `ψ` followed by
/// golden-section refinement, independently of `t*`.
pub fn d_bound_cases<T: Real>(n: usize, r: T) -> Result<DBoundCases<T>> {
    check_ratio_params(n, r)?;
    let nn = T::from_usize_lossy(n);
    let n1 = nn - T::one();
    let s = r - T::one();
    let lr = s.ln_1p();
    let g = |t: T| s.ln() + n1 * (s * t).ln_1p() - lr.ln() - nn * t * lr;
    let t_star = bisect(g, T::zero(), T::one(), T::lit(BISECTION_TOL)).unwrap_or(T::one());

    let ln_psi = |t: T| {
        let (a, b) = psi_logs(n, r, t);
        if a > b {
            b + ln_expm1(a - b)
        } else {
            T::neg_infinity()
        }
    };
    let k = PSI_SCAN_POINTS;
    let step = T::one() / T::from_usize_lossy(k);
    let mut best = (T::zero(), T::neg_infinity());
    for i in 1..k {
        let t = T::from_usize_lossy(i) * step;
        let v = ln_psi(t);
        if v > best.1 {
            best = (t, v);
        }
    }
    let (t_star_star, _) = golden_max(ln_psi, (best.0 - step).max(T::zero()), (best.0 + step).min(T::one()), 200);

    let cut = n1 / nn;
    let ln_k = nn / n1 * (lr / s).ln();
    let (bound, case) = if t_star >= cut {
        let x = nn * (cut * s).ln_1p() - n1 * lr;
        ((n1 * lr).exp() * x.exp_m1(), DCase::Exact)
    } else if t_star_star <= cut {
        ((n1 * lr).exp() * (lr + ln_k).exp_m1(), DCase::InteriorMax)
    } else {
        ((nn * lr).exp() * (nn * lr / n1 + ln_k).exp_m1(), DCase::LateMax)
    };
    Ok(DBoundCases { bound, case, t_star, t_star_star })
}

/// Hull error of `x_1⋯x_n` over `[-1,1]^n`: `1 + ((n−2)/n)^n`.
pub fn symbox_error<T: Real>(n: usize) -> Result<T> {
    if n < 2 {
        return Err(Error::InvalidParameter(format!("symmetric box error needs n >= 2, got {n}")));
    }
    let nn = T::from_usize_lossy(n);
    let q = (nn - T::lit(2.0)) / nn;
    Ok(T::one() + q.powi(n as i32))
}

/// The point `(((n−2)/n)·1, −1)` whose `2^n` reflections attain [`symbox_error`].
pub fn symbox_attainment<T: Real>(n: usize) -> Result<(Vec<T>, T)> {
    symbox_error::<T>(n)?;
    let nn = T::from_usize_lossy(n);
    Ok((vec![(nn - T::lit(2.0)) / nn; n], -T::one()))
}

/// Outcome of locating the root of `φ(σ) = (1−σ)^{λ₁} + λ₂σ − 1` in `(0, 1]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum RootResult<T> {
    /// `λ₂ ≥ λ₁`: `φ > 0` on `(0, 1]`.
    NoRoot,
    Root {
        sigma: T,
        /// `1 − (λ₂/λ₁)^{1/(λ₁−1)}`, the minimiser of `φ`; the root lies strictly above it.
        lower: T,
        residual: T,
    },
}

pub fn phi_exp1<T: Real>(lambda1: u32, lambda2: T, sigma: T) -> T {
    (T::one() - sigma).powi(lambda1 as i32) + lambda2 * sigma - T::one()
}

pub fn find_root_exp1<T: Real>(lambda1: u32, lambda2: T) -> Result<RootResult<T>> {
    if lambda1 < 1 {
        return Err(Error::InvalidParameter("lambda1 must be at least 1".into()));
    }
    if !(lambda2 >= T::one()) || !lambda2.is_finite() {
        return Err(Error::InvalidParameter(format!("lambda2 = {lambda2} must be at least 1")));
    }
    let l1 = real::<T>(lambda1);
    if lambda2 >= l1 {
        return Ok(RootResult::NoRoot);
    }
    let lower = T::one() - (lambda2 / l1).powf(T::one() / (l1 - T::one()));
    let f = |s: T| phi_exp1(lambda1, lambda2, s);
    let sigma = bisect(f, lower, T::one(), T::lit(BISECTION_TOL)).unwrap_or(T::one());
    Ok(RootResult::Root { sigma, lower, residual: f(sigma) })
}

/// The three logarithmic quantities `(d−1)²ln d`, `d(d−2)ln d`, `(d−1)²ln(d−1)`.
pub fn dineq_terms(d: u32) -> (f64, f64, f64) {
    let df = d as f64;
    let l = df.ln();
    let lm = (df - 1.0).ln();
    let sq = (df - 1.0) * (df - 1.0);
    let mid = if d == 2 { 0.0 } else { df * (df - 2.0) * l };
    (sq * l, mid, if d == 2 { 0.0 } else { sq * lm })
}

/// `(d−1)²ln d > d(d−2)ln d ≥ (d−1)²ln(d−1)`, with the second an equality only at `d = 2`.
pub fn dineq_check(d: u32) -> bool {
    if d < 2 {
        return false;
    }
    let (a, b, c) = dineq_terms(d);
    a > b && b >= c && ((b == c) == (d == 2))
}
