//! A small expression language over modular objects, with an exact
//! expansion backend and a pointwise evaluation backend.

use super::eisenstein::DivisorSum;
use super::eta::{eta_quotient_expansion, eta_quotient_value, EtaQuotient};
use super::registry::FormRegistry;
use crate::algebra::RatStr;
use crate::error::{Error, Result};
use crate::numeric::Complex;
use crate::series::{Exponent, QSeries};
use rug::{Float, Rational};
use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FormExpr {
    /// A registry entry.
    Form(String),
    Eta(EtaQuotient),
    DivisorSum(DivisorSum),
    Constant(RatStr),
    /// z -> d z.
    Dilate(u32, Box<FormExpr>),
    Linear(Vec<(RatStr, FormExpr)>),
    Product(Vec<FormExpr>),
    /// num(t)/den(t) for a hauptmodul-like t; coefficients in ascending order.
    RationalOfT {
        t: Box<FormExpr>,
        num: Vec<RatStr>,
        den: Vec<RatStr>,
    },
    /// D = q d/dq (expansion backend only).
    Derivative(Box<FormExpr>),
    /// z -> z + 1/2.
    ShiftHalf(Box<FormExpr>),
}

fn rats(v: &[i64]) -> Vec<RatStr> {
    v.iter().map(|&x| RatStr::from(x)).collect()
}

impl FormExpr {
    pub fn form(id: &str) -> Self {
        FormExpr::Form(id.to_string())
    }

    pub fn eta(factors: &[(u32, i32)]) -> Self {
        FormExpr::Eta(EtaQuotient::new(factors))
    }

    pub fn constant(c: Rational) -> Self {
        FormExpr::Constant(RatStr(c))
    }

    pub fn dilate(d: u32, e: FormExpr) -> Self {
        FormExpr::Dilate(d, Box::new(e))
    }

    pub fn scaled(c: Rational, e: FormExpr) -> Self {
        FormExpr::Linear(vec![(RatStr(c), e)])
    }

    pub fn linear(terms: Vec<(Rational, FormExpr)>) -> Self {
        FormExpr::Linear(terms.into_iter().map(|(c, e)| (RatStr(c), e)).collect())
    }

    /// sum_k c_k e(d_k z).
    pub fn dilation_combination(e: &FormExpr, terms: &[(i64, u32)]) -> Self {
        FormExpr::Linear(
            terms
                .iter()
                .map(|&(c, d)| (RatStr::from(c), FormExpr::dilate(d, e.clone())))
                .collect(),
        )
    }

    pub fn product(v: Vec<FormExpr>) -> Self {
        FormExpr::Product(v)
    }

    pub fn rational_of_t(t: FormExpr, num: &[i64], den: &[i64]) -> Self {
        FormExpr::RationalOfT {
            t: Box::new(t),
            num: rats(num),
            den: rats(den),
        }
    }

    pub fn derivative(e: FormExpr) -> Self {
        FormExpr::Derivative(Box::new(e))
    }

    pub fn shift_half(e: FormExpr) -> Self {
        FormExpr::ShiftHalf(Box::new(e))
    }

    /// Exact expansion known through q^order.
    pub fn expand(&self, reg: &FormRegistry, order: usize) -> Result<QSeries<Rational>> {
        let target = Exponent::integer(order as i64 + 1);
        let mut margin = 4usize;
        for _ in 0..8 {
            let s = self.expand_work(reg, order + margin)?;
            if s.precision() >= target {
                if s.lead() >= target {
                    return Ok(QSeries::constant(Rational::new(), order));
                }
                return s.truncate_abs(order as i64);
            }
            margin *= 2;
        }
        Err(Error::TruncationExhausted(format!(
            "could not expand to order {order}"
        )))
    }

    /// Expansion with a working order n; the result may lose precision
    /// through divisions, which `expand` compensates for.
    fn expand_work(&self, reg: &FormRegistry, n: usize) -> Result<QSeries<Rational>> {
        Ok(match self {
            FormExpr::Form(id) => reg.expansion(id, n)?,
            FormExpr::Eta(eq) => eta_quotient_expansion(eq, n),
            FormExpr::DivisorSum(ds) => ds.expansion(n),
            FormExpr::Constant(c) => QSeries::constant(c.0.clone(), n),
            FormExpr::Dilate(d, e) => e.expand_work(reg, n / *d as usize + 1)?.dilate(*d),
            FormExpr::Linear(terms) => {
                let mut acc: Option<QSeries<Rational>> = None;
                for (c, e) in terms {
                    let s = e.expand_work(reg, n)?.scale(&c.0);
                    acc = Some(match acc {
                        None => s,
                        Some(a) => a.add(&s)?,
                    });
                }
                acc.ok_or_else(|| Error::InvalidArgument("empty linear combination".into()))?
            }
            FormExpr::Product(v) => {
                let mut acc = QSeries::constant(Rational::from(1), n);
                for e in v {
                    acc = acc.mul(&e.expand_work(reg, n)?);
                }
                acc
            }
            FormExpr::RationalOfT { t, num, den } => {
                let ts = t.expand_work(reg, n)?;
                let nv = horner_series(num, &ts, n)?;
                let dv = horner_series(den, &ts, n)?;
                nv.div(&dv)?
            }
            FormExpr::Derivative(e) => e.expand_work(reg, n)?.derivative(),
            FormExpr::ShiftHalf(e) => e.expand_work(reg, n)?.alternate_signs()?,
        })
    }

    /// Pointwise value at z in the upper half-plane.
    pub fn eval(&self, reg: &FormRegistry, z: &Complex, prec: u32) -> Result<Complex> {
        let wp = prec + 8;
        Ok(match self {
            FormExpr::Form(id) => reg.value(id, z, wp)?,
            FormExpr::Eta(eq) => eta_quotient_value(eq, z, wp)?,
            FormExpr::DivisorSum(ds) => ds.value(z, wp)?,
            FormExpr::Constant(c) => Complex::from_rational(wp, &c.0, &Rational::new()),
            FormExpr::Dilate(d, e) => e.eval(reg, &z.scale(&Float::with_val(wp, *d)), wp)?,
            FormExpr::Linear(terms) => {
                let mut acc = Complex::zero(wp);
                for (c, e) in terms {
                    acc = &acc + &e.eval(reg, z, wp)?.scale_rational(&c.0);
                }
                acc
            }
            FormExpr::Product(v) => {
                let mut acc = Complex::one(wp);
                for e in v {
                    acc = &acc * &e.eval(reg, z, wp)?;
                }
                acc
            }
            FormExpr::RationalOfT { t, num, den } => {
                let tv = t.eval(reg, z, wp)?;
                let nv = horner_value(num, &tv);
                let dv = horner_value(den, &tv);
                let tol = Float::with_val(wp, 1) >> (prec as i32 / 2);
                if dv.abs() < tol {
                    return Err(Error::Pole(format!("denominator vanishes at t = {}", tv)));
                }
                &nv / &dv
            }
            FormExpr::Derivative(_) => {
                return Err(Error::Unsupported(
                    "pointwise evaluation of a q-derivative".into(),
                ))
            }
            FormExpr::ShiftHalf(e) => {
                let mut w = z.with_prec(wp);
                w.re += 0.5;
                e.eval(reg, &w, wp)?
            }
        }
        .with_prec(prec))
    }
}

fn horner_series(coeffs: &[RatStr], t: &QSeries<Rational>, n: usize) -> Result<QSeries<Rational>> {
    let mut acc = QSeries::constant(Rational::new(), n);
    for c in coeffs.iter().rev() {
        acc = acc.mul(t).add(&QSeries::constant(c.0.clone(), n))?;
    }
    Ok(acc)
}

fn horner_value(coeffs: &[RatStr], t: &Complex) -> Complex {
    let p = t.prec();
    let mut acc = Complex::zero(p);
    for c in coeffs.iter().rev() {
        acc = &(&acc * t) + &Complex::from_rational(p, &c.0, &Rational::new());
    }
    acc
}
