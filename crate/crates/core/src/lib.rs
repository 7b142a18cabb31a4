//! Exact arithmetic for the degenerate Euler-Seidel matrix method.
//!
//! The crate is layered bottom-up:
//!
//! - [`rational`] and [`poly`]: exact rationals and bivariate polynomials in `x` and `λ`.
//! - [`sequences`]: generalized factorials, degenerate Stirling numbers of the second
//!   kind, degenerate Bell and Fubini polynomials.
//! - [`series`]: truncated formal power series in `t` with polynomial coefficients.
//! - [`seidel`]: classical and degenerate Euler-Seidel matrices and both directions of
//!   the binomial transform.
//! - [`verify`]: a registry of named identity checks with residual reporting.
//! - [`cli`]: the command-line front end.

pub mod cli;
pub mod error;
pub mod poly;
pub mod rational;
pub mod seidel;
pub mod sequences;
pub mod series;
pub mod verify;

pub use error::{Error, Result};
pub use poly::{Monomial, Poly, Var};
pub use rational::Rational;
pub use seidel::{Mode, SeidelMatrix};
pub use sequences::SeqName;
pub use series::Series;
pub use verify::{CheckReport, CheckStatus};
