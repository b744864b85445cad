//! Facet description of the convex hull of the graph of `x_1⋯x_n` over `[-1,1]^n`.
//!
//! Writing `y = (x, w) ∈ [-1,1]^{n+1}`, the graph's vertices are the `±1` points with an even
//! number of `−1` entries. The hull is the box plus one no-good cut per odd subset
//! `I ⊆ {1..n+1}`:  `Σ_{i∈I} y_i − Σ_{i∉I} y_i ≥ −(n−1)`.

use crate::bounds::symbox_error;
use crate::error::{check_dim, Error, Result};
use crate::oracle::{maximize, GridSpec, LinearProgram, LpOutcome, Sense};
use crate::report::ErrorReport;
use crate::scalar::Real;
use crate::domain::Domain;
use crate::monomial::Monomial;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use std::fmt::Write as _;

/// Facet lists are only built up to this dimension.
pub const MAX_FACET_DIM: usize = 20;
/// Integrality verification enumerates up to this dimension.
pub const MAX_INTEGRALITY_DIM: usize = 6;
pub const MEMBERSHIP_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FacetSense {
    /// `Σ_{i∈I} y_i − Σ_{i∉I} y_i ≥ rhs`
    Ge,
    /// `Σ_{i∈I} y_i − Σ_{i∉I} y_i ≤ rhs`
    Le,
}

impl FacetSense {
    pub fn as_str(self) -> &'static str {
        match self {
            Self::Ge => "GE",
            Self::Le => "LE",
        }
    }

    fn parse(s: &str) -> Result<Self> {
        match s {
            "GE" => Ok(Self::Ge),
            "LE" => Ok(Self::Le),
            other => Err(Error::Parse(format!("unknown sense {other:?}"))),
        }
    }
}

/// `Σ_{i∈I} y_i − Σ_{i∉I} y_i (≥|≤) rhs` with `I` a bitmask over the `n+1` coordinates;
/// bit `n` is `w`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SignedSubsetInequality {
    pub mask: u64,
    pub sense: FacetSense,
    pub rhs: i64,
}

impl SignedSubsetInequality {
    pub fn lhs<T: Real>(&self, y: &[T]) -> T {
        y.iter().enumerate().fold(T::zero(), |acc, (i, &v)| if self.mask >> i & 1 == 1 { acc + v } else { acc - v })
    }

    pub fn holds<T: Real>(&self, y: &[T], tol: T) -> bool {
        let l = self.lhs(y);
        let r = T::lit(self.rhs as f64);
        match self.sense {
            FacetSense::Ge => l >= r - tol,
            FacetSense::Le => l <= r + tol,
        }
    }

    pub fn contains_w(&self, n: usize) -> bool {
        self.mask >> n & 1 == 1
    }
}

/// Which side of `w` a cut bounds once `x` is fixed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WBoundKind {
    Upper,
    Lower,
}

/// A cut rewritten as a bound on `w`: with `J ⊆ {1..n}`,
/// upper `w ≤ (n−1) + Σ_J x − Σ_{∉J} x`, lower `w ≥ Σ_{∉J} x − Σ_J x − (n−1)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct WBound {
    pub kind: WBoundKind,
    pub subset: u64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Membership {
    pub member: bool,
    pub box_ok: bool,
    /// Indices into [`FacetSystem::facets`].
    pub violated: Vec<usize>,
}

/// The no-good cuts plus the implicit box `[-1,1]^{n+1}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FacetSystem {
    n: usize,
    facets: Vec<SignedSubsetInequality>,
}

pub fn build_symbox_hull(n: usize) -> Result<FacetSystem> {
    FacetSystem::new(n)
}

impl FacetSystem {
    pub fn new(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidParameter("n must be at least 1".into()));
        }
        if n > MAX_FACET_DIM {
            return Err(Error::ScaleExceeded { what: format!("facet enumeration in dimension {n}"), limit: MAX_FACET_DIM });
        }
        let rhs = -(n as i64 - 1);
        let facets = (0..1u64 << (n + 1))
            .filter(|m| m.count_ones() % 2 == 1)
            .map(|mask| SignedSubsetInequality { mask, sense: FacetSense::Ge, rhs })
            .collect();
        Ok(Self { n, facets })
    }

    /// Builds a system from an explicit facet list (e.g. a parsed export).
    pub fn from_facets(n: usize, facets: Vec<SignedSubsetInequality>) -> Result<Self> {
        if n == 0 || n > MAX_FACET_DIM {
            return Err(Error::InvalidParameter(format!("n = {n} outside 1..={MAX_FACET_DIM}")));
        }
        if let Some(f) = facets.iter().find(|f| f.mask >> (n + 1) != 0) {
            return Err(Error::Parse(format!("mask {} refers to a coordinate beyond n+1", f.mask)));
        }
        Ok(Self { n, facets })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn facets(&self) -> &[SignedSubsetInequality] {
        &self.facets
    }

    pub fn membership<T: Real>(&self, x: &[T], w: T) -> Result<Membership> {
        self.membership_tol(x, w, T::tol(MEMBERSHIP_TOL))
    }

    pub fn membership_tol<T: Real>(&self, x: &[T], w: T, tol: T) -> Result<Membership> {
        check_dim(self.n, x.len())?;
        let mut y = x.to_vec();
        y.push(w);
        let box_ok = y.iter().all(|&v| v >= -T::one() - tol && v <= T::one() + tol);
        let violated: Vec<usize> =
            self.facets.iter().enumerate().filter(|(_, f)| !f.holds(&y, tol)).map(|(i, _)| i).collect();
        Ok(Membership { member: box_ok && violated.is_empty(), box_ok, violated })
    }

    /// Each cut as a bound on `w`, keyed by its `x`-part.
    pub fn w_bounds(&self) -> Vec<WBound> {
        let xmask = (1u64 << self.n) - 1;
        self.facets
            .iter()
            .map(|f| {
                let lower = f.contains_w(self.n) == (f.sense == FacetSense::Ge);
                let subset = if f.sense == FacetSense::Ge { f.mask & xmask } else { !f.mask & xmask };
                WBound { kind: if lower { WBoundKind::Lower } else { WBoundKind::Upper }, subset }
            })
            .collect()
    }

    /// `[lo, hi]` of admissible `w` at `x`, clipped to `[-1, 1]`; `lo > hi` means `x` is outside.
    pub fn w_range<T: Real>(&self, x: &[T]) -> Result<(T, T)> {
        check_dim(self.n, x.len())?;
        let mut lo = -T::one();
        let mut hi = T::one();
        for f in &self.facets {
            // a·x + s·w (≥|≤) rhs with s = ±1 the sign of w in the cut
            let s = if f.contains_w(self.n) { T::one() } else { -T::one() };
            let ax = x.iter().enumerate().fold(T::zero(), |acc, (i, &v)| if f.mask >> i & 1 == 1 { acc + v } else { acc - v });
            let bound = (T::lit(f.rhs as f64) - ax) * s;
            let is_lower = (s > T::zero()) == (f.sense == FacetSense::Ge);
            if is_lower {
                lo = lo.max(bound);
            } else {
                hi = hi.min(bound);
            }
        }
        Ok((lo, hi))
    }

    /// One line per cut: `I={1,3} sense=GE rhs=-2`, after a `#` header.
    pub fn to_text(&self) -> String {
        let mut s = format!("# n={} facets={} form: sum_I y_i - sum_notI y_i (sense) rhs, y=(x_1..x_n,w)\n", self.n, self.facets.len());
        for f in &self.facets {
            let idx: Vec<String> = (0..=self.n).filter(|&i| f.mask >> i & 1 == 1).map(|i| (i + 1).to_string()).collect();
            let _ = writeln!(s, "I={{{}}} sense={} rhs={}", idx.join(","), f.sense.as_str(), f.rhs);
        }
        s
    }

    pub fn to_csv(&self) -> String {
        let mut s = String::from("mask,sense,rhs\n");
        for f in &self.facets {
            let _ = writeln!(s, "{},{},{}", f.mask, f.sense.as_str(), f.rhs);
        }
        s
    }

    pub fn parse_text(text: &str) -> Result<Self> {
        let mut n = None;
        let mut facets = Vec::new();
        for (ln, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() {
                continue;
            }
            if let Some(rest) = line.strip_prefix('#') {
                if let Some(v) = rest.split_whitespace().find_map(|t| t.strip_prefix("n=")) {
                    n = Some(v.parse::<usize>().map_err(|e| Error::Parse(format!("line {}: {e}", ln + 1)))?);
                }
                continue;
            }
            let err = |msg: &str| Error::Parse(format!("line {}: {msg}", ln + 1));
            let mut parts = line.split_whitespace();
            let set = parts.next().and_then(|p| p.strip_prefix("I={")).and_then(|p| p.strip_suffix('}')).ok_or_else(|| err("expected I={...}"))?;
            let mut mask = 0u64;
            for tok in set.split(',').filter(|t| !t.is_empty()) {
                let i: u32 = tok.trim().parse().map_err(|_| err("bad index"))?;
                if i == 0 || i > 63 {
                    return Err(err("index out of range"));
                }
                mask |= 1 << (i - 1);
            }
            let sense = parts.next().and_then(|p| p.strip_prefix("sense=")).ok_or_else(|| err("expected sense="))?;
            let rhs = parts.next().and_then(|p| p.strip_prefix("rhs=")).ok_or_else(|| err("expected rhs="))?;
            facets.push(SignedSubsetInequality {
                mask,
                sense: FacetSense::parse(sense)?,
                rhs: rhs.parse().map_err(|_| err("bad rhs"))?,
            });
        }
        let n = n.ok_or_else(|| Error::Parse("missing '# n=' header".into()))?;
        Self::from_facets(n, facets)
    }

    /// The CSV export carries no `n`; it is supplied by the caller.
    pub fn parse_csv(n: usize, text: &str) -> Result<Self> {
        let mut facets = Vec::new();
        for (ln, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || (ln == 0 && line == "mask,sense,rhs") {
                continue;
            }
            let err = || Error::Parse(format!("line {}: expected mask,sense,rhs", ln + 1));
            let cols: Vec<&str> = line.split(',').collect();
            if cols.len() != 3 {
                return Err(err());
            }
            facets.push(SignedSubsetInequality {
                mask: cols[0].trim().parse().map_err(|_| err())?,
                sense: FacetSense::parse(cols[1].trim())?,
                rhs: cols[2].trim().parse().map_err(|_| err())?,
            });
        }
        Self::from_facets(n, facets)
    }

    /// `max c·y` over the system by the LP with `y = 2z − 1`, `z ∈ [0,1]^{n+1}`.
    pub fn lp_optimum<T: Real>(&self, c: &[T]) -> Result<(T, Vec<T>)> {
        let m = self.n + 1;
        check_dim(m, c.len())?;
        let two = T::lit(2.0);
        let csum = c.iter().fold(T::zero(), |a, &b| a + b);
        let mut lp = LinearProgram::new(c.iter().map(|&v| two * v).collect());
        for j in 0..m {
            let mut a = vec![T::zero(); m];
            a[j] = T::one();
            lp.push(a, Sense::Le, T::one());
        }
        for f in &self.facets {
            // Σ_I(2z−1) − Σ_{∉I}(2z−1) = 2(Σ_I z − Σ_{∉I} z) − |I| + (m − |I|)
            let k = f.mask.count_ones() as i64;
            let a: Vec<T> = (0..m).map(|i| if f.mask >> i & 1 == 1 { T::one() } else { -T::one() }).collect();
            let b = T::lit((f.rhs + k - (m as i64 - k)) as f64) / two;
            let sense = match f.sense {
                FacetSense::Ge => Sense::Ge,
                FacetSense::Le => Sense::Le,
            };
            lp.push(a, sense, b);
        }
        match lp.solve()? {
            LpOutcome::Optimal { value, x } => Ok((value - csum, x.iter().map(|&z| two * z - T::one()).collect())),
            other => Err(Error::InvalidParameter(format!("hull LP did not solve: {other:?}"))),
        }
    }
}

/// Optimal `±1` vertex for `max c·y` over the hull, built from the signs of `c`.
///
/// With `B` the negative and `A` the zero entries: if `|B|` is even, set `y = −1` on `B`;
/// if `|B|` is odd and `A` is nonempty, also flip the first index of `A`; otherwise leave the
/// entry of smallest `|c_i|` at its unfavourable sign. Returns `(y, c·y)`.
pub fn constructive_optimum<T: Real>(c: &[T]) -> (Vec<T>, T) {
    let mut y: Vec<T> = c.iter().map(|&v| if v < T::zero() { -T::one() } else { T::one() }).collect();
    let negatives = c.iter().filter(|&&v| v < T::zero()).count();
    if negatives % 2 == 1 {
        if let Some(j0) = c.iter().position(|&v| v == T::zero()) {
            y[j0] = -T::one();
        } else {
            let j1 = (0..c.len()).fold(0, |best, i| if c[i].abs() < c[best].abs() { i } else { best });
            y[j1] = -y[j1];
        }
    }
    let value = c.iter().zip(&y).fold(T::zero(), |acc, (&a, &b)| acc + a * b);
    (y, value)
}

#[derive(Debug, Clone, PartialEq)]
pub struct IntegralityReport {
    pub n: usize,
    pub trials: usize,
    pub seed: u64,
    /// Largest `|constructive − LP|` over the trials.
    pub max_abs_diff: f64,
    pub all_integral: bool,
    pub all_even: bool,
    pub failures: Vec<usize>,
}

impl IntegralityReport {
    pub fn passed(&self, tol: f64) -> bool {
        self.all_integral && self.all_even && self.max_abs_diff <= tol && self.failures.is_empty()
    }
}

/// Draws `trials` objectives (trial `k` seeded with `seed + k`, about a fifth of the entries
/// zeroed) and compares the constructive optimum with the LP optimum.
pub fn verify_integrality(n: usize, trials: usize, seed: u64) -> Result<IntegralityReport> {
    if n > MAX_INTEGRALITY_DIM {
        return Err(Error::ScaleExceeded { what: format!("integrality check in dimension {n}"), limit: MAX_INTEGRALITY_DIM });
    }
    let fs = FacetSystem::new(n)?;
    let results: Vec<Result<(f64, bool, bool)>> = (0..trials)
        .into_par_iter()
        .map(|k| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(k as u64));
            let c: Vec<f64> = (0..=n)
                .map(|_| if rng.gen_bool(0.2) { 0.0 } else { rng.gen_range(-1.0..1.0) })
                .collect();
            let (y, v) = constructive_optimum(&c);
            let (lp, _) = fs.lp_optimum(&c)?;
            let integral = y.iter().all(|&v| v == 1.0 || v == -1.0);
            let even = y.iter().filter(|&&v| v < 0.0).count() % 2 == 0;
            Ok(((v - lp).abs(), integral, even))
        })
        .collect();
    let mut report = IntegralityReport { n, trials, seed, max_abs_diff: 0.0, all_integral: true, all_even: true, failures: Vec::new() };
    for (k, r) in results.into_iter().enumerate() {
        match r {
            Ok((diff, integral, even)) => {
                report.max_abs_diff = report.max_abs_diff.max(diff);
                report.all_integral &= integral;
                report.all_even &= even;
            }
            Err(_) => report.failures.push(k),
        }
    }
    Ok(report)
}

/// Largest `|w − x_1⋯x_n|` over the hull, found by scanning `x` and reading the admissible
/// `w`-interval off the cuts. The report compares against `1 + ((n−2)/n)^n`.
pub fn symbox_hull_error<T: Real>(n: usize, tol: T, spec: &GridSpec) -> Result<ErrorReport<T>> {
    let fs = FacetSystem::new(n)?;
    let bound = symbox_error::<T>(n)?;
    let m = Monomial::multilinear(n)?;
    let dom = Domain::sym_box(n)?;
    let err = |x: &[T]| match fs.w_range(x) {
        Ok((lo, hi)) if lo <= hi => {
            let f = m.eval_unchecked(x);
            (f - lo).max(hi - f)
        }
        _ => T::neg_infinity(),
    };
    let best = maximize(err, &dom, spec)?;
    Ok(ErrorReport::new(bound, best.value, vec![best.point], tol).with_grid(spec.clone()))
}

/// The `2^n` sign reflections of `(((n−2)/n)·1, −1)` that stay in the hull, with their errors.
pub fn symbox_reflection_errors<T: Real>(n: usize) -> Result<Vec<(Vec<T>, T, T)>> {
    let (anchor, w0) = crate::bounds::symbox_attainment::<T>(n)?;
    let m = Monomial::multilinear(n)?;
    Ok((0..1u64 << n)
        .map(|mask| {
            let x: Vec<T> = anchor.iter().enumerate().map(|(i, &v)| if mask >> i & 1 == 1 { -v } else { v }).collect();
            let w = if mask.count_ones() % 2 == 1 { -w0 } else { w0 };
            let err = (w - m.eval_unchecked(&x)).abs();
            (x, w, err)
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn facet_counts() {
        for n in 1..=10 {
            assert_eq!(FacetSystem::new(n).unwrap().facets().len(), 1 << n);
        }
        let fs = FacetSystem::new(2).unwrap();
        let masks: Vec<u64> = fs.facets().iter().map(|f| f.mask).collect();
        assert_eq!(masks, vec![0b001, 0b010, 0b100, 0b111]);
        assert!(FacetSystem::new(21).is_err());
    }

    #[test]
    fn membership_examples() {
        let fs = FacetSystem::new(2).unwrap();
        assert!(fs.membership(&[1.0, 1.0], 1.0).unwrap().member);
        let bad = fs.membership(&[1.0, 1.0], -1.0).unwrap();
        assert!(!bad.member);
        assert_eq!(bad.violated.iter().map(|&i| fs.facets()[i].mask).collect::<Vec<_>>(), vec![0b100]);
        assert!(fs.membership(&[0.0, 0.0], 0.0).unwrap().member);
        let fs3 = FacetSystem::new(3).unwrap();
        assert!(fs3.membership(&[1.0 / 3.0; 3], -1.0).unwrap().member);
        let m = fs3.membership(&[1.0, 1.0, 1.0], -1.0).unwrap();
        assert_eq!(m.violated.iter().map(|&i| fs3.facets()[i].mask).collect::<Vec<_>>(), vec![0b1000]);
    }

    #[test]
    fn pm_one_points_are_members_iff_even() {
        for n in 1..=5 {
            let fs = FacetSystem::new(n).unwrap();
            for mask in 0u64..1 << (n + 1) {
                let y: Vec<f64> = (0..=n).map(|i| if mask >> i & 1 == 1 { -1.0 } else { 1.0 }).collect();
                let member = fs.membership(&y[..n], y[n]).unwrap().member;
                assert_eq!(member, mask.count_ones() % 2 == 0, "n={n} mask={mask:b}");
                // each cut removes exactly its own odd point
                if mask.count_ones() % 2 == 1 {
                    let cut = fs.membership(&y[..n], y[n]).unwrap().violated;
                    assert_eq!(cut.len(), 1);
                    assert_eq!(fs.facets()[cut[0]].mask, mask);
                }
            }
        }
    }

    #[test]
    fn w_range_matches_envelopes() {
        use rand::{Rng, SeedableRng};
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for n in 1..=7 {
            let fs = FacetSystem::new(n).unwrap();
            for _ in 0..50 {
                let x: Vec<f64> = (0..n).map(|_| rng.gen_range(-1.0..1.0)).collect();
                let (lo, hi) = fs.w_range(&x).unwrap();
                let (a, b) = crate::envelopes::envelopes_symbox(n, &x).unwrap();
                assert_abs_diff_eq!(lo, a, epsilon = 1e-12);
                assert_abs_diff_eq!(hi, b, epsilon = 1e-12);
            }
        }
    }

    #[test]
    fn two_sided_grouping() {
        for n in 1..=8usize {
            let fs = FacetSystem::new(n).unwrap();
            let b = fs.w_bounds();
            let upper: Vec<_> = b.iter().filter(|w| w.kind == WBoundKind::Upper).collect();
            let lower: Vec<_> = b.iter().filter(|w| w.kind == WBoundKind::Lower).collect();
            assert_eq!(upper.len(), 1 << (n - 1));
            assert_eq!(lower.len(), 1 << (n - 1));
            // lower cuts pair with even J; upper cuts with odd J, i.e. even complements when n is odd
            assert!(lower.iter().all(|w| w.subset.count_ones() % 2 == 0));
            assert!(upper.iter().all(|w| w.subset.count_ones() % 2 == 1));
            if n % 2 == 1 {
                assert!(upper.iter().all(|w| (n as u32 - w.subset.count_ones()) % 2 == 0));
            }
        }
    }

    #[test]
    fn export_round_trip() {
        let fs = FacetSystem::new(3).unwrap();
        let text = fs.to_text();
        assert_eq!(text.lines().count(), 9);
        assert!(text.contains("I={4} sense=GE rhs=-2"));
        assert_eq!(FacetSystem::parse_text(&text).unwrap(), fs);
        let csv = fs.to_csv();
        assert_eq!(csv.lines().next(), Some("mask,sense,rhs"));
        assert_eq!(FacetSystem::parse_csv(3, &csv).unwrap(), fs);
        assert!(FacetSystem::parse_text("I={1} sense=GE rhs=0").is_err());
        assert!(FacetSystem::parse_csv(2, "mask,sense,rhs\n1,XX,0\n").is_err());
    }

    #[test]
    fn constructive_cases() {
        let (y, v) = constructive_optimum(&[1.0, 1.0, 1.0, 1.0]);
        assert_eq!(y, vec![1.0; 4]);
        assert_eq!(v, 4.0);
        let (y, v) = constructive_optimum(&[-1.0, 1.0, 1.0, 1.0]);
        assert_eq!(v, 2.0);
        assert_eq!(y.iter().filter(|&&c| c < 0.0).count() % 2, 0);
        let (y, v) = constructive_optimum(&[-1.0, 0.0, 2.0]);
        assert_eq!(y, vec![-1.0, -1.0, 1.0]);
        assert_eq!(v, 3.0);
    }

    #[test]
    fn lp_matches_constructive() {
        let fs = FacetSystem::new(3).unwrap();
        for c in [vec![1.0, 1.0, 1.0, 1.0], vec![-1.0, 1.0, 1.0, 1.0], vec![-0.3, 0.0, 0.7, -0.1]] {
            let (lp, _) = fs.lp_optimum(&c).unwrap();
            let (_, v) = constructive_optimum(&c);
            assert_abs_diff_eq!(lp, v, epsilon = 1e-10);
        }
        let r = verify_integrality(4, 200, 7).unwrap();
        assert!(r.passed(1e-9), "{r:?}");
        assert!(verify_integrality(7, 1, 0).is_err());
    }

    #[test]
    fn reflections_attain_bound() {
        for n in 2..=6 {
            let e = symbox_error::<f64>(n).unwrap();
            let fs = FacetSystem::new(n).unwrap();
            for (x, w, err) in symbox_reflection_errors::<f64>(n).unwrap() {
                assert_abs_diff_eq!(err, e, epsilon = 1e-12);
                assert!(fs.membership(&x, w).unwrap().member);
            }
        }
    }

    #[test]
    fn hull_error_n3() {
        let r = symbox_hull_error::<f64>(3, 1e-4, &GridSpec::for_dim(3)).unwrap();
        assert!((r.measured_value - 28.0 / 27.0).abs() < 1e-4, "{r:?}");
    }
}
