//! Envelopes, worst-case error bounds and brute-force verifiers for convex relaxations of
//! monomials `x^α` over boxes and simplices.
//!
//! Every numeric routine is generic over [`Real`] (`f32` or `f64`); the `*64` aliases below
//! cover the usual case.
//!
//! ```
//! use monoconv::{bounds, envelopes, Monomial};
//!
//! let m = Monomial::multilinear(3).unwrap();
//! let x = [0.5, 0.5, 0.5];
//! let gap = envelopes::concave_env_unitbox(&m, &x).unwrap() - m.eval(&x).unwrap();
//! assert!(gap <= bounds::c1::<f64>(3).unwrap());
//! ```

pub mod bounds;
pub mod domain;
pub mod envelopes;
pub mod error;
pub mod hulls;
pub mod monomial;
pub mod oracle;
pub mod polyrelax;
pub mod report;
pub mod scalar;
pub mod univariate;

pub use bounds::{BoundSet, RatioBoxConstants};
pub use domain::Domain;
pub use envelopes::LinearUnderestimator;
pub use error::{Error, Result};
pub use hulls::{FacetSystem, SignedSubsetInequality};
pub use monomial::Monomial;
pub use oracle::GridSpec;
pub use polyrelax::Polynomial;
pub use report::{ErrorReport, Verdict};
pub use scalar::Real;

pub type Domain64 = Domain<f64>;
pub type ErrorReport64 = ErrorReport<f64>;
pub type LinearUnderestimator64 = LinearUnderestimator<f64>;
pub type Polynomial64 = Polynomial<f64>;
pub type RatioBoxConstants64 = RatioBoxConstants<f64>;

pub type Domain32 = Domain<f32>;
pub type ErrorReport32 = ErrorReport<f32>;
pub type LinearUnderestimator32 = LinearUnderestimator<f32>;
pub type Polynomial32 = Polynomial<f32>;
