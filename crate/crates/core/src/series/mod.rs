//! Truncated q-series in one variable.
//!
//! A [`QSeries`] stores `q^{lead} (c_0 + c_1 q + ... + c_N q^N) + O(q^{lead+N+1})`
//! with `lead` a multiple of 1/24. The truncation order is part of the value:
//! every operation reports the order it can guarantee and never pads with
//! silent zeros.

mod json;
mod log;
mod qseries;

pub use json::QSeriesJson;
pub use log::LogSeries;
pub use qseries::{Exponent, QSeries};
