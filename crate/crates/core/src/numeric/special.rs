//! Special functions at the arguments this crate needs: Bernoulli numbers,
//! Hurwitz zeta and Dirichlet L-values at integers, zeta and gamma via MPFR.

use super::arith::DirichletChar;
use crate::error::{Error, Result};
use rug::float::Constant;
use rug::ops::Pow;
use rug::{Float, Integer, Rational};
use std::sync::Mutex;

static BERNOULLI: Mutex<Vec<Rational>> = Mutex::new(Vec::new());

/// Bernoulli number B_n with B_1 = -1/2.
pub fn bernoulli(n: usize) -> Rational {
    let mut table = BERNOULLI.lock().expect("bernoulli cache poisoned");
    if table.is_empty() {
        table.push(Rational::from(1));
    }
    while table.len() <= n {
        let m = table.len();
        // sum_{k=0}^{m} C(m+1, k) B_k = 0
        let mut acc = Rational::new();
        for (k, b) in table.iter().enumerate() {
            let c = Integer::from(Integer::binomial_u((m + 1) as u32, k as u32));
            acc += Rational::from(b * &c);
        }
        let bm = Rational::from(-acc) / Rational::from(m as u32 + 1);
        table.push(bm);
    }
    table[n].clone()
}

/// Bernoulli polynomial B_m(x).
pub fn bernoulli_poly(m: usize, x: &Rational) -> Rational {
    let mut acc = Rational::new();
    let mut xp = Rational::from(1);
    // sum_k C(m,k) B_k x^{m-k}, accumulated from k = m downwards.
    for k in (0..=m).rev() {
        let c = Integer::from(Integer::binomial_u(m as u32, k as u32));
        acc += bernoulli(k) * Rational::from(c) * &xp;
        xp *= x;
    }
    acc
}

/// Generalized Bernoulli number B_{m,chi} = k^{m-1} sum_{a=1}^{k} chi(a) B_m(a/k).
pub fn generalized_bernoulli(m: usize, chi: &DirichletChar) -> Rational {
    let k = chi.modulus as i64;
    if k == 1 {
        // B_{m,1} agrees with B_m except B_{1,1} = +1/2.
        return if m == 1 {
            Rational::from((1, 2))
        } else {
            bernoulli(m)
        };
    }
    let mut acc = Rational::new();
    for a in 1..=k {
        let c = chi.value(a);
        if c != 0 {
            acc += bernoulli_poly(m, &Rational::from((a, k))) * c;
        }
    }
    let scale = Rational::from(Integer::from(k).pow((m as u32).saturating_sub(1)));
    if m == 0 {
        acc / Rational::from(k)
    } else {
        acc * scale
    }
}

/// Value and error bound of a numerical special-function evaluation.
#[derive(Clone, Debug)]
pub struct Evaluated {
    pub value: Float,
    pub error: Float,
}

/// Hurwitz zeta(s, a) for integer s >= 2 and rational a > 0, by Euler-Maclaurin.
pub fn hurwitz_zeta(s: u32, a: &Rational, prec: u32) -> Result<Evaluated> {
    if s < 2 {
        return Err(Error::Unsupported(format!("hurwitz zeta at s = {s}")));
    }
    if *a <= 0 {
        return Err(Error::InvalidArgument("hurwitz zeta needs a > 0".into()));
    }
    let wp = prec + 32;
    let n_terms = (prec / 2 + 20) as u64;
    let m_terms = (prec / 8 + 10) as usize;
    let af = Float::with_val(wp, a);
    let mut sum = Float::new(wp);
    for k in 0..n_terms {
        let x = Float::with_val(wp, &af + k);
        sum += Float::with_val(wp, x.pow(s as i32)).recip();
    }
    let x = Float::with_val(wp, &af + n_terms);
    let xs = Float::with_val(wp, x.clone().pow(s as i32));
    // integral tail and half endpoint term
    sum += Float::with_val(wp, &x / &xs) / (s - 1);
    sum += Float::with_val(wp, xs.clone().recip()) / 2u32;
    // Bernoulli corrections: B_{2j}/(2j)! * s(s+1)...(s+2j-2) * x^{-s-2j+1}
    let mut rising = Float::with_val(wp, s); // s (s+1) ... (s + 2j - 2)
    let mut xpow = Float::with_val(wp, &xs * &x); // x^{s+1}
    let x2 = Float::with_val(wp, x.square_ref());
    let mut fact = Integer::from(2); // (2j)!
    let mut last = Float::new(wp);
    for j in 1..=m_terms {
        let b = bernoulli(2 * j);
        let coeff = Float::with_val(wp, &b) / Float::with_val(wp, &fact);
        let term = Float::with_val(wp, &coeff * &rising) / &xpow;
        sum += &term;
        last = term;
        rising *= (s as u64 + 2 * j as u64 - 1) * (s as u64 + 2 * j as u64);
        xpow *= &x2;
        fact *= (2 * j as u64 + 1) * (2 * j as u64 + 2);
    }
    let mut err = Float::with_val(prec, last.abs());
    err *= 2u32;
    let floor = Float::with_val(
        prec,
        Float::with_val(prec, sum.abs_ref()) >> (prec as i32 - 8),
    );
    if err < floor {
        err = floor;
    }
    Ok(Evaluated {
        value: Float::with_val(prec, sum),
        error: err,
    })
}

/// Dirichlet L(chi, s) for integer s >= 2 via periodized Hurwitz zeta.
pub fn dirichlet_l(chi: &DirichletChar, s: u32, prec: u32) -> Result<Evaluated> {
    if s < 2 {
        return Err(Error::Unsupported(format!(
            "Dirichlet L-value at s = {s} (need s >= 2)"
        )));
    }
    let k = chi.modulus as i64;
    if k == 1 {
        return Ok(Evaluated {
            value: zeta(s, prec),
            error: Float::with_val(prec, 1) >> (prec as i32),
        });
    }
    let wp = prec + 16;
    let mut acc = Float::new(wp);
    let mut err = Float::new(wp);
    for a in 1..=k {
        let c = chi.value(a);
        if c == 0 {
            continue;
        }
        let h = hurwitz_zeta(s, &Rational::from((a, k)), wp)?;
        acc += Float::with_val(wp, &h.value * c);
        err += &h.error;
    }
    let ks = Float::with_val(wp, Float::with_val(wp, k).pow(s as i32));
    acc /= &ks;
    err /= &ks;
    Ok(Evaluated {
        value: Float::with_val(prec, acc),
        error: Float::with_val(prec, err),
    })
}

pub fn pi(prec: u32) -> Float {
    Float::with_val(prec, Constant::Pi)
}

pub fn zeta(n: u32, prec: u32) -> Float {
    Float::with_val(prec, Float::zeta_u(n))
}

pub fn gamma(x: &Float) -> Float {
    Float::with_val(x.prec(), x.gamma_ref())
}

pub fn euler_gamma(prec: u32) -> Float {
    Float::with_val(prec, Constant::Euler)
}

/// Upper incomplete gamma Gamma(s, x) for integer s >= 1:
/// (s-1)! e^{-x} sum_{j<s} x^j/j!.
pub fn upper_gamma_int(s: u32, x: &Float) -> Float {
    let p = x.prec();
    let mut term = Float::with_val(p, 1);
    let mut sum = Float::with_val(p, 1);
    for j in 1..s {
        term *= x;
        term /= j;
        sum += &term;
    }
    let fact = Float::with_val(p, Float::factorial(s.saturating_sub(1)));
    let e = Float::with_val(p, -x.clone()).exp();
    sum * e * fact
}
