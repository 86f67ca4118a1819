use super::qseries::QSeries;
use crate::algebra::Field;
use crate::error::{Error, Result};
use rug::Rational;

/// `log_coeff * log q + series`, the image of D^{-1}.
#[derive(Clone, Debug, PartialEq)]
pub struct LogSeries<C> {
    pub log_coeff: C,
    pub series: QSeries<C>,
}

impl<C: Field> QSeries<C> {
    /// D^{-1}: q^e -> q^e / e for e != 0 and the q^0 term to a multiple of log q.
    pub fn integral(&self) -> LogSeries<C> {
        let l = self.lead_exp();
        let mut log_coeff = self.coeffs()[0].zero_like();
        let coeffs = self
            .coeffs()
            .iter()
            .enumerate()
            .map(|(i, c)| {
                let e = Rational::from(&l + i as u64);
                if e == 0 {
                    log_coeff = c.clone();
                    c.zero_like()
                } else {
                    let inv = c.embed(&Rational::from(e.recip_ref()));
                    c.times(&inv)
                }
            })
            .collect();
        LogSeries {
            log_coeff,
            series: QSeries::new(self.lead(), coeffs).expect("nonempty"),
        }
    }

    /// Iterated D^{-k}; fails when a log term would have to be integrated again.
    pub fn integral_n(&self, k: u32) -> Result<QSeries<C>> {
        let mut s = self.clone();
        for _ in 0..k {
            s = s.integral().into_series()?;
        }
        Ok(s)
    }
}

impl<C: Field> LogSeries<C> {
    /// D of `c log q + S` is `c + D S`.
    pub fn derivative(&self) -> Result<QSeries<C>> {
        let d = self.series.derivative();
        if self.log_coeff.is_zero() {
            return Ok(d);
        }
        let known = (d.precision().0 / 24).max(1) - 1;
        let c = QSeries::constant(self.log_coeff.clone(), known as usize);
        d.add(&c)
    }

    /// The power-series part, provided there is no log term.
    pub fn into_series(self) -> Result<QSeries<C>> {
        if !self.log_coeff.is_zero() {
            return Err(Error::LogTerm);
        }
        Ok(self.series)
    }
}
