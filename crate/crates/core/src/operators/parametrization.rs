//! Checks that (t_n, f_n) parametrize the operators L_n: for any power
//! series y(t), with Y = y(t(q)),
//!
//!   D^{k+1}(Y / f) / (Dt * f) = (L_n y)(t(q)) / t(q),   D = q d/dq,
//!
//! where k = 1 for n = 2 and k = 2 for n = 3.

use super::theta::ln;
use crate::algebra::qi;
use crate::error::{Error, Result};
use crate::forms::identities::{compare_series, Mismatch};
use crate::forms::FormRegistry;
use crate::series::QSeries;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rug::Rational;
use serde::Serialize;

#[derive(Clone, Debug, Serialize)]
pub struct ParametrizationReport {
    pub n: usize,
    pub order: usize,
    pub trials: usize,
    pub equal: bool,
    pub first_mismatch: Option<Mismatch>,
}

/// Run `trials` random test functions y through q^order.
pub fn check_parametrization(
    reg: &FormRegistry,
    n: usize,
    order: usize,
    trials: usize,
    seed: u64,
) -> Result<ParametrizationReport> {
    let (tid, fid, k) = match n {
        2 => ("t2", "f2", 1),
        3 => ("t3", "f3", 2),
        _ => {
            return Err(Error::InvalidArgument(format!(
                "no parametrization registered for n = {n}"
            )))
        }
    };
    let op = ln(n)?;
    let work = order + 4;
    let t = reg.expansion(tid, work)?;
    let f = reg.expansion(fid, work)?;
    let dt = t.derivative();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..trials {
        let deg = rng.gen_range(0..8usize);
        let y: Vec<Rational> = (0..=deg).map(|_| qi(rng.gen_range(-9..=9))).collect();
        let mut yc = y.clone();
        yc.resize(work + 1, Rational::new());
        let ys = QSeries::from_coeffs(0, yc);
        let big_y = ys.substitute(&t)?;
        let mut lhs = big_y.div(&f)?;
        for _ in 0..=k {
            lhs = lhs.derivative();
        }
        let lhs = lhs.div(&dt.mul(&f))?;
        let ly = op.apply(&ys)?;
        let rhs = ly.substitute(&t)?.div(&t)?;
        if let Some(m) = compare_series(
            &lhs.truncate_abs(order as i64)?,
            &rhs.truncate_abs(order as i64)?,
            order,
        ) {
            return Ok(ParametrizationReport {
                n,
                order,
                trials,
                equal: false,
                first_mismatch: Some(m),
            });
        }
    }
    Ok(ParametrizationReport {
        n,
        order,
        trials,
        equal: true,
        first_mismatch: None,
    })
}
