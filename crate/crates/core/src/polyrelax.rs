//! Gap bounds for polynomials relaxed by convexifying each monomial separately.

use crate::bounds::{c1, c2};
use crate::domain::Domain;
use crate::error::{check_dim, Error, Result};
use crate::oracle::{maximize, GridSpec};
use crate::scalar::{int_pow, ln_binomial, Real};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

/// Largest `n` accepted by [`certify_gap_small_instance`].
pub const MAX_CERTIFY_DIM: usize = 4;

/// `Σ c_α x^α` with distinct exponent vectors and nonzero coefficients.
#[derive(Debug, Clone, PartialEq)]
pub struct Polynomial<T> {
    n: usize,
    terms: Vec<(T, Vec<u32>)>,
}

#[derive(Serialize, Deserialize)]
struct PolynomialFile {
    n: usize,
    terms: Vec<TermFile>,
}

#[derive(Serialize, Deserialize)]
struct TermFile {
    coeff: f64,
    exponents: Vec<u32>,
}

impl<T: Real> Polynomial<T> {
    /// Merges repeated exponent vectors and drops zero coefficients.
    pub fn new(n: usize, terms: Vec<(T, Vec<u32>)>) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidParameter("polynomial needs at least one variable".into()));
        }
        let mut merged: BTreeMap<Vec<u32>, T> = BTreeMap::new();
        for (c, alpha) in terms {
            check_dim(n, alpha.len())?;
            if !c.is_finite() {
                return Err(Error::InvalidParameter(format!("non-finite coefficient {c}")));
            }
            *merged.entry(alpha).or_insert_with(T::zero) += c;
        }
        let terms = merged.into_iter().filter(|(_, c)| *c != T::zero()).map(|(a, c)| (c, a)).collect();
        Ok(Self { n, terms })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn terms(&self) -> &[(T, Vec<u32>)] {
        &self.terms
    }

    /// Total degree; 0 for the zero polynomial.
    pub fn degree(&self) -> u32 {
        self.terms.iter().map(|(_, a)| a.iter().sum()).max().unwrap_or(0)
    }

    pub fn is_multilinear(&self) -> bool {
        self.terms.iter().all(|(_, a)| a.iter().all(|&e| e <= 1))
    }

    pub fn eval(&self, x: &[T]) -> Result<T> {
        check_dim(self.n, x.len())?;
        Ok(self.eval_unchecked(x))
    }

    fn eval_unchecked(&self, x: &[T]) -> T {
        self.terms.iter().fold(T::zero(), |acc, (c, a)| {
            acc + *c * a.iter().zip(x).fold(T::one(), |p, (&e, &v)| p * int_pow(v, e))
        })
    }

    pub fn scaled(&self, t: T) -> Result<Self> {
        Self::new(self.n, self.terms.iter().map(|(c, a)| (*c * t, a.clone())).collect())
    }

    /// One term per line: `coeff e_1 ... e_n`. Blank lines and `#` comments are skipped.
    pub fn parse_text(text: &str) -> Result<Self> {
        let mut n = None;
        let mut terms = Vec::new();
        for (ln, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let err = |msg: &str| Error::Parse(format!("line {}: {msg}", ln + 1));
            let mut toks = line.split_whitespace();
            let c: f64 = toks.next().unwrap_or("").parse().map_err(|_| err("bad coefficient"))?;
            let alpha: Vec<u32> = toks.map(|t| t.parse().map_err(|_| err("bad exponent"))).collect::<Result<_>>()?;
            match n {
                None => n = Some(alpha.len()),
                Some(k) if k != alpha.len() => return Err(err(&format!("expected {k} exponents, found {}", alpha.len()))),
                _ => {}
            }
            terms.push((T::lit(c), alpha));
        }
        let n = n.ok_or_else(|| Error::Parse("no terms".into()))?;
        Self::new(n, terms)
    }

    /// `{"n": 3, "terms": [{"coeff": 1.0, "exponents": [1, 1, 0]}, ...]}`
    pub fn from_json(text: &str) -> Result<Self> {
        let file: PolynomialFile = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        Self::new(file.n, file.terms.into_iter().map(|t| (T::lit(t.coeff), t.exponents)).collect())
    }

    pub fn to_json(&self) -> String {
        let file = PolynomialFile {
            n: self.n,
            terms: self.terms.iter().map(|(c, a)| TermFile { coeff: c.as_f64(), exponents: a.clone() }).collect(),
        };
        serde_json::to_string_pretty(&file).expect("plain data serialises")
    }
}

fn term_degree(alpha: &[u32]) -> u32 {
    alpha.iter().sum()
}

/// Envelope gap constant of one term: `c·C²_d` for `c > 0`, `−c·C¹_d` for `c < 0`.
fn term_constant<T: Real>(c: T, d: u32) -> Result<T> {
    if c > T::zero() {
        Ok(c * c2::<T>(d)?)
    } else {
        Ok(-c * c1::<T>(d)?)
    }
}

/// `max{ max_{c>0} c·C²_d, max_{c<0} −c·C¹_d }` over terms of degree at least 2.
///
/// Terms of degree 0 or 1 are reproduced exactly by the relaxation and contribute nothing.
pub fn lprime<T: Real>(p: &Polynomial<T>) -> Result<T> {
    if p.terms.is_empty() {
        return Err(Error::InvalidParameter("empty polynomial".into()));
    }
    p.terms
        .iter()
        .filter(|(_, a)| term_degree(a) >= 2)
        .try_fold(T::zero(), |acc, (c, a)| Ok(acc.max(term_constant(*c, term_degree(a))?)))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GapBound<T> {
    /// `L′(p)·C(n+m, n)`.
    pub tight: T,
    /// `max|c_α|·C¹_m·C(n+m, n)`.
    pub cheap: T,
    /// Sum of the per-term constants over the terms actually present. Not one of the
    /// textbook bounds; never larger than `tight`.
    pub sharper: T,
    pub ln_tight: T,
    pub ln_cheap: T,
}

pub fn gap_bound<T: Real>(p: &Polynomial<T>) -> Result<GapBound<T>> {
    let lp = lprime(p)?;
    let m = p.degree();
    let ln_count = ln_binomial::<T>((p.n + m as usize) as u64, p.n as u64);
    let maxc = p.terms.iter().filter(|(_, a)| term_degree(a) >= 2).fold(T::zero(), |acc, (c, _)| acc.max(c.abs()));
    let ln_cheap = if m >= 2 && maxc > T::zero() { maxc.ln() + c1::<T>(m)?.ln() + ln_count } else { T::neg_infinity() };
    let ln_tight = if lp > T::zero() { lp.ln() + ln_count } else { T::neg_infinity() };
    let sharper = p
        .terms
        .iter()
        .filter(|(_, a)| term_degree(a) >= 2)
        .try_fold(T::zero(), |acc, (c, a)| Ok(acc + term_constant(*c, term_degree(a))?))?;
    Ok(GapBound { tight: ln_tight.exp(), cheap: ln_cheap.exp(), sharper, ln_tight, ln_cheap })
}

fn check_threshold_args(n: usize, m: u32) -> Result<()> {
    if n == 0 {
        return Err(Error::InvalidParameter("n must be at least 1".into()));
    }
    if m < 2 {
        return Err(Error::DegreeTooSmall { degree: m, min: 2 });
    }
    Ok(())
}

/// `δ̂ = C(m+1,3)·n^m / (m!·C¹_m·C(n+m,n))`, evaluated in logs.
///
/// The level of the polynomial-optimisation LP hierarchy above which its worst-case bound for
/// `±1`-coefficient polynomials beats separate monomial convexification.
pub fn dklt_threshold<T: Real>(n: usize, m: u32) -> Result<T> {
    check_threshold_args(n, m)?;
    let mu = m as u64;
    let ln_fact = (1..=mu).fold(T::zero(), |acc, k| acc + T::lit(k as f64).ln());
    let ln = ln_binomial::<T>(mu + 1, 3) + T::lit(m as f64) * T::lit(n as f64).ln()
        - ln_fact
        - c1::<T>(m)?.ln()
        - ln_binomial::<T>((n as u64) + mu, n as u64);
    Ok(ln.exp())
}

/// The same quantity as `m²(m+1) / (6·m^{1/(1−m)}·Π_{k=1}^m (1 + k/n))`.
pub fn dklt_threshold_product<T: Real>(n: usize, m: u32) -> Result<T> {
    check_threshold_args(n, m)?;
    let mm = T::lit(m as f64);
    let nn = T::lit(n as f64);
    let ln_prod = (1..=m).fold(T::zero(), |acc, k| acc + (T::lit(k as f64) / nn).ln_1p());
    let ln = T::lit(2.0) * mm.ln() + (mm + T::one()).ln() - T::lit(6.0).ln() - mm.ln() / (T::one() - mm) - ln_prod;
    Ok(ln.exp())
}

/// `lim_{n→∞} δ̂ = m²(m+1) / (6·m^{1/(1−m)})`, which grows like `m³/6`.
pub fn dklt_threshold_limit<T: Real>(m: u32) -> Result<T> {
    check_threshold_args(1, m)?;
    let mm = T::lit(m as f64);
    Ok(mm * mm * (mm + T::one()) / T::lit(6.0) * (-(mm.ln() / (T::one() - mm))).exp())
}

#[derive(Debug, Clone, PartialEq)]
pub struct GapCertificate<T> {
    /// `min p` over the box.
    pub z_star: T,
    /// Minimum of the envelope-substituted objective.
    pub z_mon: T,
    pub gap: T,
    pub bound: GapBound<T>,
    pub argmin_star: Vec<T>,
    pub argmin_mon: Vec<T>,
    pub holds: bool,
}

/// Relaxed objective: each term of degree ≥ 2 replaced by its convex envelope (`c > 0`) or
/// concave envelope (`c < 0`) over the unit box.
pub fn relaxed_objective<T: Real>(p: &Polynomial<T>, x: &[T]) -> Result<T> {
    check_dim(p.n, x.len())?;
    if !p.is_multilinear() {
        return Err(Error::Unsupported("envelope substitution needs multilinear terms".into()));
    }
    Ok(relaxed_unchecked(p, x))
}

fn relaxed_unchecked<T: Real>(p: &Polynomial<T>, x: &[T]) -> T {
    p.terms.iter().fold(T::zero(), |acc, (c, a)| {
        let support = a.iter().zip(x).filter(|(&e, _)| e == 1).map(|(_, &v)| v);
        let k = term_degree(a);
        let v = if k <= 1 {
            support.fold(T::one(), |p, v| p * v)
        } else if *c > T::zero() {
            let s = support.fold(T::zero(), |s, v| s + v);
            (s - T::lit((k - 1) as f64)).max(T::zero())
        } else {
            support.fold(T::infinity(), T::min)
        };
        acc + *c * v
    })
}

/// Measures `z* − z^mon` on the unit box by grid search and checks it against the tight bound.
pub fn certify_gap_small_instance<T: Real>(p: &Polynomial<T>, dom: &Domain<T>, spec: &GridSpec) -> Result<GapCertificate<T>> {
    if !matches!(dom, Domain::UnitBox { .. }) {
        return Err(Error::Unsupported(format!("gap certification runs on the unit box, not the {}", dom.name())));
    }
    check_dim(p.n, dom.dim())?;
    if p.n > MAX_CERTIFY_DIM {
        return Err(Error::ScaleExceeded { what: format!("gap certification in dimension {}", p.n), limit: MAX_CERTIFY_DIM });
    }
    if !p.is_multilinear() {
        return Err(Error::Unsupported("gap certification needs multilinear terms".into()));
    }
    let bound = gap_bound(p)?;
    let star = maximize(|x: &[T]| -p.eval_unchecked(x), dom, spec)?;
    let mon = maximize(|x: &[T]| -relaxed_unchecked(p, x), dom, spec)?;
    let z_star = -star.value;
    // the relaxation lies below p pointwise, so its value at p's minimiser is also a candidate,
    // and z* itself caps z^mon (this absorbs rounding where the two touch)
    let at_star = relaxed_unchecked(p, &star.point).min(z_star);
    let (z_mon, argmin_mon) = if at_star < -mon.value { (at_star, star.point.clone()) } else { (-mon.value, mon.point) };
    let gap = z_star - z_mon;
    let tol = T::tol(1e-9);
    let holds = gap >= -tol && gap <= bound.tight + tol;
    Ok(GapCertificate { z_star, z_mon, gap, bound, argmin_star: star.point, argmin_mon, holds })
}
