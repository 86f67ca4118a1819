//! Multiprecision numerics.

pub mod arith;
pub mod cheb;
pub mod complex;
pub mod quad;
pub mod special;

pub use arith::DirichletChar;
pub use complex::Complex;
pub use quad::{QuadResult, QuadRule, QuadratureSpec};

use crate::error::{Error, Result};

/// Minimum precision accepted by point evaluations.
pub const MIN_PRECISION: u32 = 32;

pub fn check_precision(prec: u32, min: u32) -> Result<()> {
    if prec < min {
        Err(Error::PrecisionTooLow(prec, min))
    } else {
        Ok(())
    }
}

/// Parse a decimal string into a float at the given precision.
pub fn parse_float(s: &str, prec: u32) -> Result<rug::Float> {
    let v = rug::Float::parse(s).map_err(|e| Error::Parse(format!("{s}: {e}")))?;
    Ok(rug::Float::with_val(prec, v))
}
