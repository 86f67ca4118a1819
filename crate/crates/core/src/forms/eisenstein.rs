//! Divisor-sum (Eisenstein-type) series and level-one Eisenstein values.

use super::eta::reduce;
use crate::algebra::RatStr;
use crate::error::{Error, Result};
use crate::numeric::{check_precision, Complex, DirichletChar, MIN_PRECISION};
use crate::series::QSeries;
use rug::float::Constant;
use rug::{Float, Integer, Rational};
use serde::{Deserialize, Serialize};

/// Arithmetic weight attached to one index of a double sum.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub enum WeightFn {
    Character(DirichletChar),
    /// a(m) = sum of c over the listed (l, c) with l | m.
    Divisibility(Vec<(u32, RatStr)>),
}

impl WeightFn {
    pub fn trivial() -> Self {
        WeightFn::Character(DirichletChar::trivial())
    }

    pub fn value(&self, m: u64) -> Rational {
        match self {
            WeightFn::Character(chi) => Rational::from(chi.value(m as i64)),
            WeightFn::Divisibility(terms) => {
                let mut acc = Rational::new();
                for (l, c) in terms {
                    if m % (*l as u64) == 0 {
                        acc += &c.0;
                    }
                }
                acc
            }
        }
    }

    fn is_trivial(&self) -> bool {
        matches!(self, WeightFn::Character(c) if c.is_trivial())
    }
}

/// constant + sum_{m,n>=1} a(m) b(n) n^power q^{mn}.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DivisorSum {
    pub constant: RatStr,
    pub a: WeightFn,
    pub b: WeightFn,
    pub power: u32,
}

impl DivisorSum {
    pub fn new(constant: Rational, a: WeightFn, b: WeightFn, power: u32) -> Self {
        DivisorSum {
            constant: RatStr(constant),
            a,
            b,
            power,
        }
    }

    /// Coefficient of q^N for N >= 1.
    pub fn coefficient(&self, n: u64) -> Rational {
        let mut acc = Rational::new();
        let mut d = 1u64;
        while d * d <= n {
            if n % d == 0 {
                let e = n / d;
                acc += self.pair_term(d, e);
                if e != d {
                    acc += self.pair_term(e, d);
                }
            }
            d += 1;
        }
        acc
    }

    fn pair_term(&self, m: u64, n: u64) -> Rational {
        let bn = self.b.value(n);
        if bn == 0 {
            return Rational::new();
        }
        let am = self.a.value(m);
        if am == 0 {
            return Rational::new();
        }
        am * bn * Integer::from(Integer::u_pow_u(n as u32, self.power))
    }

    /// Exact expansion to q^order.
    pub fn expansion(&self, order: usize) -> QSeries<Rational> {
        let mut c = Vec::with_capacity(order + 1);
        c.push(self.constant.0.clone());
        for n in 1..=order as u64 {
            c.push(self.coefficient(n));
        }
        QSeries::from_coeffs(0, c)
    }

    /// Value at z. Level-one sums (trivial weights, power 1 or 3) use the
    /// modular transformation; others sum the q-series and need Im z >= 1/4.
    pub fn value(&self, z: &Complex, prec: u32) -> Result<Complex> {
        check_precision(prec, MIN_PRECISION)?;
        let wp = prec + 16;
        let c0 = Complex::from_rational(wp, &self.constant.0, &Rational::new());
        if self.a.is_trivial() && self.b.is_trivial() && (self.power == 1 || self.power == 3) {
            let one = Complex::one(wp);
            let v = if self.power == 3 {
                (&e4_value(z, wp)? - &one).scale_rational(&Rational::from((1, 240)))
            } else {
                (&one - &e2_value(z, wp)?).scale_rational(&Rational::from((1, 24)))
            };
            return Ok((&c0 + &v).with_prec(prec));
        }
        let min_im = Float::with_val(wp, 0.25);
        if z.im < min_im {
            return Err(Error::Unsupported(
                "direct divisor-sum evaluation needs Im z >= 1/4".into(),
            ));
        }
        let q = Complex::exp_2pi_i(&z.with_prec(wp));
        let qa = q.abs();
        let eps = Float::with_val(wp, 1) >> (wp as i32);
        let mut acc = c0;
        let mut qn = Complex::one(wp);
        let mut mag = Float::with_val(wp, 1);
        for n in 1u64.. {
            qn = &qn * &q;
            mag *= &qa;
            let c = self.coefficient(n);
            if c != 0 {
                acc = &acc + &qn.scale_rational(&c);
            }
            let bound =
                Float::with_val(wp, &mag * Float::with_val(wp, n).pow_ref_u(self.power + 2));
            if n > 8 && bound < eps {
                break;
            }
        }
        Ok(acc.with_prec(prec))
    }
}

trait PowU {
    fn pow_ref_u(&self, e: u32) -> Float;
}

impl PowU for Float {
    fn pow_ref_u(&self, e: u32) -> Float {
        let mut r = Float::with_val(self.prec(), 1);
        for _ in 0..e {
            r *= self;
        }
        r
    }
}

/// sum_{n>=1} n^k q^n / (1 - q^n) for |q| < 1.
fn lambert(q: &Complex, k: u32, prec: u32) -> Complex {
    let qa = q.abs();
    let eps = Float::with_val(prec, 1) >> (prec as i32 + 4);
    let mut acc = Complex::zero(prec);
    let mut qn = Complex::one(prec);
    let mut mag = Float::with_val(prec, 1);
    let one = Complex::one(prec);
    for n in 1u32.. {
        qn = &qn * q;
        mag *= &qa;
        let nk = Float::with_val(prec, n).pow_ref_u(k);
        let term = (&qn / &(&one - &qn)).scale(&nk);
        acc = &acc + &term;
        if Float::with_val(prec, &mag * &nk) < eps {
            break;
        }
    }
    acc
}

/// E4 = 1 + 240 sum sigma_3(n) q^n.
pub fn e4_value(z: &Complex, prec: u32) -> Result<Complex> {
    let wp = prec + 24;
    let zw = z.with_prec(wp);
    let red = reduce(&zw)?;
    let q = Complex::exp_2pi_i(&red.tau);
    let e4r = &Complex::one(wp) + &lambert(&q, 3, wp).scale(&Float::with_val(wp, 240));
    let cz = red.cocycle(&zw);
    Ok((&e4r / &cz.powi(4)).with_prec(prec))
}

/// Quasi-modular E2 = 1 - 24 sum sigma_1(n) q^n.
pub fn e2_value(z: &Complex, prec: u32) -> Result<Complex> {
    let wp = prec + 24;
    let zw = z.with_prec(wp);
    let red = reduce(&zw)?;
    let q = Complex::exp_2pi_i(&red.tau);
    let e2r = &Complex::one(wp) - &lambert(&q, 1, wp).scale(&Float::with_val(wp, 24));
    let cz = red.cocycle(&zw);
    // E2(g tau) = (c tau + d)^2 E2(tau) + 6 c (c tau + d) / (pi i)
    let pi = Float::with_val(wp, Constant::Pi);
    let c = Float::with_val(wp, &red.c);
    let corr = cz
        .scale(&Float::with_val(wp, &c * 6u32))
        .scale(&Float::with_val(wp, Float::with_val(wp, 1) / &pi));
    // divide by i: (x) / i = -i x
    let corr = corr.mul_i().scale(&Float::with_val(wp, -1));
    Ok((&(&e2r - &corr) / &cz.powi(2)).with_prec(prec))
}
