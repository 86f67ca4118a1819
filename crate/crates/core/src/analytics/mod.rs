//! High-precision numerics: L-values, double L-values, CM constants and the
//! headline identities.

pub mod cm;
pub mod cor2;
pub mod double;
pub mod headline;
pub mod lvalues;

use rug::Float;
use serde::{Serialize, Serializer};

/// How a value was obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum LMethod {
    DirectSum,
    MellinSplit,
    NestedQuadrature,
    ClosedForm,
}

#[derive(Clone, Debug, Serialize)]
pub struct LValueResult {
    #[serde(serialize_with = "float_str")]
    pub value: Float,
    #[serde(serialize_with = "float_sci")]
    pub error_bound: Float,
    pub method: LMethod,
}

/// Decimal string with as many digits as the precision supports.
pub fn float_str<S: Serializer>(x: &Float, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&fmt_float(x))
}

pub(crate) fn float_sci<S: Serializer>(x: &Float, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&x.to_string_radix(10, Some(3)))
}

pub fn fmt_float(x: &Float) -> String {
    let digits = (x.prec() as f64 * std::f64::consts::LOG10_2).floor() as usize - 2;
    x.to_string_radix(10, Some(digits.max(5)))
}
