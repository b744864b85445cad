//! Bound-versus-measurement reports.

use crate::oracle::GridSpec;
use crate::scalar::Real;
use std::fmt;

/// Tolerance for closed-form identities.
pub const IDENTITY_TOL: f64 = 1e-9;
/// Tolerance for oracle-versus-bound agreement; limited by grid resolution.
pub const ORACLE_TOL: f64 = 1e-4;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Verdict {
    /// Measured value equals the bound within tolerance.
    Tight,
    /// Measured value is below the bound by more than the tolerance.
    ValidUpper,
    /// Measured value exceeds the bound by more than the tolerance.
    Violated,
}

impl Verdict {
    pub fn classify<T: Real>(bound: T, measured: T, tol: T) -> Self {
        if measured > bound + tol {
            Self::Violated
        } else if (measured - bound).abs() <= tol {
            Self::Tight
        } else {
            Self::ValidUpper
        }
    }

    pub fn is_ok(self) -> bool {
        self != Self::Violated
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Tight => "TIGHT",
            Self::ValidUpper => "VALID_UPPER",
            Self::Violated => "VIOLATED",
        })
    }
}

/// A computed bound next to the oracle-measured maximum error.
#[derive(Debug, Clone, PartialEq)]
pub struct ErrorReport<T> {
    pub bound_value: T,
    pub measured_value: T,
    pub attainment_points: Vec<Vec<T>>,
    pub abs_gap: T,
    pub tolerance: T,
    pub verdict: Verdict,
    /// Grid used by the oracle, when one was involved.
    pub grid: Option<GridSpec>,
}

impl<T: Real> ErrorReport<T> {
    pub fn new(bound_value: T, measured_value: T, attainment_points: Vec<Vec<T>>, tolerance: T) -> Self {
        Self {
            bound_value,
            measured_value,
            attainment_points,
            abs_gap: (measured_value - bound_value).abs(),
            tolerance,
            verdict: Verdict::classify(bound_value, measured_value, tolerance),
            grid: None,
        }
    }

    pub fn with_grid(mut self, grid: GridSpec) -> Self {
        self.grid = Some(grid);
        self
    }

    pub fn argmax(&self) -> Option<&[T]> {
        self.attainment_points.first().map(Vec::as_slice)
    }
}
