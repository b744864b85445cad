//! Dense two-phase primal simplex with Bland's rule.
//!
//! Meant for the tiny programs the verifiers build (tens of variables and rows); it favours
//! determinism over speed.

use crate::error::{Error, Result};
use crate::scalar::Real;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sense {
    Le,
    Ge,
    Eq,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Constraint<T> {
    pub a: Vec<T>,
    pub sense: Sense,
    pub b: T,
}

/// `maximize c·x` subject to the constraints and `x ≥ 0`.
#[derive(Debug, Clone, PartialEq)]
pub struct LinearProgram<T> {
    pub c: Vec<T>,
    pub constraints: Vec<Constraint<T>>,
}

#[derive(Debug, Clone, PartialEq)]
pub enum LpOutcome<T> {
    Optimal { value: T, x: Vec<T> },
    Infeasible,
    Unbounded,
}

impl<T: Real> LpOutcome<T> {
    pub fn optimal(self) -> Option<(T, Vec<T>)> {
        match self {
            Self::Optimal { value, x } => Some((value, x)),
            _ => None,
        }
    }
}

const MAX_PIVOTS: usize = 50_000;

impl<T: Real> LinearProgram<T> {
    pub fn new(c: Vec<T>) -> Self {
        Self { c, constraints: Vec::new() }
    }

    pub fn push(&mut self, a: Vec<T>, sense: Sense, b: T) -> &mut Self {
        self.constraints.push(Constraint { a, sense, b });
        self
    }

    pub fn solve(&self) -> Result<LpOutcome<T>> {
        Tableau::build(self)?.run(self.c.len())
    }
}

struct Tableau<T> {
    /// Rows `0..m` are constraints, row `m` is the objective; last column is the right-hand side.
    t: Vec<Vec<T>>,
    basis: Vec<usize>,
    n_struct: usize,
    art_start: usize,
    cols: usize,
    eps: T,
    c: Vec<T>,
}

impl<T: Real> Tableau<T> {
    fn build(lp: &LinearProgram<T>) -> Result<Self> {
        let n = lp.c.len();
        for (i, c) in lp.constraints.iter().enumerate() {
            if c.a.len() != n {
                return Err(Error::DimensionMismatch { expected: n, found: c.a.len() });
            }
            if !c.b.is_finite() || c.a.iter().any(|v| !v.is_finite()) {
                return Err(Error::InvalidParameter(format!("constraint {i} has a non-finite entry")));
            }
        }
        // normalise to b ≥ 0
        let rows: Vec<(Vec<T>, Sense, T)> = lp
            .constraints
            .iter()
            .map(|c| {
                if c.b < T::zero() {
                    let flipped = match c.sense {
                        Sense::Le => Sense::Ge,
                        Sense::Ge => Sense::Le,
                        Sense::Eq => Sense::Eq,
                    };
                    (c.a.iter().map(|&v| -v).collect(), flipped, -c.b)
                } else {
                    (c.a.clone(), c.sense, c.b)
                }
            })
            .collect();
        let m = rows.len();
        let n_slack = rows.iter().filter(|r| r.1 != Sense::Eq).count();
        let n_art = rows.iter().filter(|r| r.1 != Sense::Le).count();
        let art_start = n + n_slack;
        let cols = art_start + n_art;
        let mut t = vec![vec![T::zero(); cols + 1]; m + 1];
        let mut basis = vec![0; m];
        let (mut si, mut ai) = (n, art_start);
        for (i, (a, sense, b)) in rows.into_iter().enumerate() {
            t[i][..n].copy_from_slice(&a);
            t[i][cols] = b;
            match sense {
                Sense::Le => {
                    t[i][si] = T::one();
                    basis[i] = si;
                    si += 1;
                }
                Sense::Ge => {
                    t[i][si] = -T::one();
                    si += 1;
                    t[i][ai] = T::one();
                    basis[i] = ai;
                    ai += 1;
                }
                Sense::Eq => {
                    t[i][ai] = T::one();
                    basis[i] = ai;
                    ai += 1;
                }
            }
        }
        Ok(Self { t, basis, n_struct: n, art_start, cols, eps: T::tol(1e-10), c: lp.c.clone() })
    }

    fn m(&self) -> usize {
        self.basis.len()
    }

    fn pivot(&mut self, row: usize, col: usize) {
        let p = self.t[row][col];
        for v in self.t[row].iter_mut() {
            *v /= p;
        }
        let pivot_row = self.t[row].clone();
        for (i, r) in self.t.iter_mut().enumerate() {
            if i == row {
                continue;
            }
            let factor = r[col];
            if factor != T::zero() {
                for (v, &pv) in r.iter_mut().zip(&pivot_row) {
                    *v -= factor * pv;
                }
            }
        }
        self.basis[row] = col;
    }

    /// Sets the objective row to `-cost` and prices out the basis.
    fn set_objective(&mut self, cost: &[T]) {
        let m = self.m();
        let obj = &mut self.t[m];
        obj.iter_mut().for_each(|v| *v = T::zero());
        for (j, &c) in cost.iter().enumerate() {
            obj[j] = -c;
        }
        for i in 0..m {
            let b = self.basis[i];
            let factor = self.t[m][b];
            if factor != T::zero() {
                let row = self.t[i].clone();
                for (v, &rv) in self.t[m].iter_mut().zip(&row) {
                    *v -= factor * rv;
                }
            }
        }
    }

    /// Maximises the current objective over columns `< allowed`. Returns false if unbounded.
    fn iterate(&mut self, allowed: usize) -> Result<bool> {
        let m = self.m();
        for _ in 0..MAX_PIVOTS {
            let Some(col) = (0..allowed).find(|&j| self.t[m][j] < -self.eps) else {
                return Ok(true);
            };
            let mut leave: Option<(usize, T)> = None;
            for i in 0..m {
                let a = self.t[i][col];
                if a > self.eps {
                    let ratio = self.t[i][self.cols] / a;
                    leave = match leave {
                        None => Some((i, ratio)),
                        Some((k, r)) => {
                            if ratio < r - self.eps || ((ratio - r).abs() <= self.eps && self.basis[i] < self.basis[k]) {
                                Some((i, ratio))
                            } else {
                                Some((k, r))
                            }
                        }
                    };
                }
            }
            match leave {
                None => return Ok(false),
                Some((row, _)) => self.pivot(row, col),
            }
        }
        Err(Error::InvalidParameter("simplex pivot limit reached".into()))
    }

    fn run(mut self, n: usize) -> Result<LpOutcome<T>> {
        let m = self.m();
        if self.cols > self.art_start {
            let mut phase1 = vec![T::zero(); self.cols];
            for v in phase1.iter_mut().skip(self.art_start) {
                *v = -T::one();
            }
            self.set_objective(&phase1);
            self.iterate(self.cols)?;
            if self.t[m][self.cols] < -T::tol(1e-9) {
                return Ok(LpOutcome::Infeasible);
            }
            // drive remaining (zero-level) artificials out of the basis
            let mut i = 0;
            while i < self.m() {
                if self.basis[i] >= self.art_start {
                    match (0..self.art_start).find(|&j| self.t[i][j].abs() > self.eps) {
                        Some(j) => self.pivot(i, j),
                        None => {
                            self.t.remove(i);
                            self.basis.remove(i);
                            continue;
                        }
                    }
                }
                i += 1;
            }
        }
        let mut cost = vec![T::zero(); self.cols];
        cost[..n].copy_from_slice(&self.c);
        self.set_objective(&cost);
        if !self.iterate(self.art_start)? {
            return Ok(LpOutcome::Unbounded);
        }
        let rows = self.m();
        let mut x = vec![T::zero(); self.n_struct];
        for i in 0..rows {
            if self.basis[i] < self.n_struct {
                x[self.basis[i]] = self.t[i][self.cols];
            }
        }
        let value = self.t[rows][self.cols];
        Ok(LpOutcome::Optimal { value, x })
    }
}
