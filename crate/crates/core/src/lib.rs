//! Computational toolkit for Mahler measures of linear Laurent polynomials.
//!
//! The crate is organised bottom-up:
//!
//! * [`numeric`]: multiprecision complex arithmetic, special functions and
//!   double-exponential quadrature on top of MPFR.
//! * [`series`]: truncated q-series with exact or floating coefficients.
//! * [`forms`]: eta quotients, Eisenstein-type divisor sums and the registry
//!   of named modular objects, with exact expansions and point evaluation.
//! * [`symbolic`]: a small ring of constants (powers of pi, the period
//!   Omega_15, odd zeta values, Dirichlet L-values, square roots).
//! * [`operators`]: theta operators, duals, the moment transform and
//!   Frobenius / non-homogeneous power-series solvers.
//! * [`cterm`]: brute-force constant terms and direct torus sampling.
//! * [`analytics`]: L-values, double L-values, CM constants and the headline
//!   numerical checks.
//! * [`latex`]: LaTeX strings for exact constants and rational functions.
//! * [`verify`]: the acceptance criteria as report rows.
//! * [`report`]: check rows shared by the acceptance suite and the CLI.

pub mod algebra;
pub mod analytics;
pub mod cterm;
pub mod error;
pub mod forms;
pub mod latex;
pub mod numeric;
pub mod operators;
pub mod report;
pub mod series;
pub mod symbolic;
pub mod verify;

pub use error::{Error, Result};

/// Default working precision in bits.
pub const DEFAULT_PRECISION: u32 = 256;

/// Default truncation order for identity checks.
pub const DEFAULT_ORDER: usize = 200;
