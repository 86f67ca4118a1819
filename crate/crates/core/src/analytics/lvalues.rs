//! Single L-values L(g, p) = sum a_n n^{-p}.
//!
//! Eisenstein-type objects are handled exactly: their L-series factor into
//! products of Dirichlet L-functions and Dirichlet polynomials, each expanded
//! as a Laurent series in eps = s - p with coefficients in the symbolic
//! constant ring. Unknown coefficients are tracked as `None`, so a value is
//! returned only when every contributing coefficient is known.
//!
//! The CM form f15 is handled numerically by two independent methods.

use super::{LMethod, LValueResult};
use crate::algebra::Ring;
use crate::error::{Error, Result};
use crate::forms::eisenstein::{DivisorSum, WeightFn};
use crate::forms::{FormExpr, FormRegistry};
use crate::numeric::arith::DirichletChar;
use crate::numeric::quad::exp_sinh;
use crate::numeric::special::{
    bernoulli, dirichlet_l, gamma, generalized_bernoulli, pi, upper_gamma_int,
};
use crate::numeric::{check_precision, Complex, QuadratureSpec};
use crate::symbolic::{Sym, SymConst, SymValues};
use rug::ops::Pow;
use rug::{Float, Integer, Rational};
use serde::Serialize;

const MIN_DEG: i32 = -2;
const MAX_DEG: i32 = 2;

/// Laurent coefficients of degrees MIN_DEG..=MAX_DEG in eps = s - p.
#[derive(Clone, Debug)]
struct Laurent {
    c: Vec<Option<SymConst>>,
}

fn zero() -> Option<SymConst> {
    Some(SymConst::zero())
}

impl Laurent {
    fn unknown() -> Self {
        Laurent {
            c: vec![None; (MAX_DEG - MIN_DEG + 1) as usize],
        }
    }

    fn zero() -> Self {
        Laurent {
            c: vec![zero(); (MAX_DEG - MIN_DEG + 1) as usize],
        }
    }

    /// Known coefficients for degrees d0, d0+1, ...; everything below d0 is
    /// zero and everything after the list is unknown.
    fn from_terms(d0: i32, terms: Vec<SymConst>) -> Self {
        let mut l = Laurent::unknown();
        for d in MIN_DEG..d0 {
            l.set(d, zero());
        }
        for (k, t) in terms.into_iter().enumerate() {
            let d = d0 + k as i32;
            if d <= MAX_DEG {
                l.set(d, Some(t));
            }
        }
        l
    }

    fn get(&self, d: i32) -> Option<SymConst> {
        if d < MIN_DEG {
            return zero();
        }
        if d > MAX_DEG {
            return None;
        }
        self.c[(d - MIN_DEG) as usize].clone()
    }

    fn set(&mut self, d: i32, v: Option<SymConst>) {
        self.c[(d - MIN_DEG) as usize] = v;
    }

    fn add(&self, o: &Laurent) -> Laurent {
        let c = self
            .c
            .iter()
            .zip(&o.c)
            .map(|(a, b)| match (a, b) {
                (Some(a), Some(b)) => Some(a.plus(b)),
                _ => None,
            })
            .collect();
        Laurent { c }
    }

    fn scale(&self, r: &Rational) -> Laurent {
        if *r == 0 {
            return Laurent::zero();
        }
        Laurent {
            c: self
                .c
                .iter()
                .map(|x| x.as_ref().map(|v| v.scale(r)))
                .collect(),
        }
    }

    fn mul(&self, o: &Laurent) -> Result<Laurent> {
        let mut out = Laurent::zero();
        for k in 2 * MIN_DEG..=MAX_DEG {
            let mut acc = zero();
            for i in MIN_DEG..=(k - MIN_DEG) {
                let (a, b) = (self.get(i), o.get(k - i));
                let term = match (&a, &b) {
                    (Some(x), _) if x.is_zero() => continue,
                    (_, Some(y)) if y.is_zero() => continue,
                    (Some(x), Some(y)) => Some(x.times(y)),
                    _ => None,
                };
                acc = match (acc, term) {
                    (Some(s), Some(t)) => Some(s.plus(&t)),
                    _ => None,
                };
            }
            if k < MIN_DEG {
                if acc.map_or(true, |v| !v.is_zero()) {
                    return Err(Error::Unsupported("pole of order above two".into()));
                }
            } else {
                out.set(k, acc);
            }
        }
        Ok(out)
    }

    /// The constant term, provided every polar coefficient vanishes.
    fn value(&self) -> Result<SymConst> {
        for d in MIN_DEG..0 {
            match self.get(d) {
                Some(v) if v.is_zero() => {}
                Some(v) => return Err(Error::Pole(format!("coefficient {v} of eps^{d} survives"))),
                None => {
                    return Err(Error::Unsupported(format!(
                        "unknown coefficient of eps^{d}"
                    )))
                }
            }
        }
        self.get(0)
            .ok_or_else(|| Error::Unsupported("constant term involves an unknown constant".into()))
    }
}

fn pi_pow(c: Rational, e: i32) -> SymConst {
    SymConst::monomial(c, 1, &[(Sym::Pi, e)])
}

fn factorial(n: u32) -> Integer {
    Integer::from(Integer::factorial(n))
}

/// zeta(2k) = (-1)^{k+1} B_{2k} (2 pi)^{2k} / (2 (2k)!).
fn zeta_even(k: u32) -> SymConst {
    let n = 2 * k;
    let sign = if k % 2 == 1 { 1 } else { -1 };
    let c = bernoulli(n as usize) * Integer::from(Integer::u_pow_u(2, n)) * sign
        / Rational::from(factorial(n) * 2u32);
    pi_pow(c, n as i32)
}

/// Laurent data of zeta(s) at s = p.
fn zeta_laurent(p: i64) -> Laurent {
    if p == 1 {
        return Laurent::from_terms(-1, vec![SymConst::int(1)]);
    }
    if p >= 2 && p % 2 == 0 {
        return Laurent::from_terms(0, vec![zeta_even((p / 2) as u32)]);
    }
    if p == 3 {
        return Laurent::from_terms(0, vec![SymConst::sym(Sym::Zeta3)]);
    }
    if p >= 5 {
        return Laurent::unknown();
    }
    if p == 0 {
        return Laurent::from_terms(0, vec![SymConst::rational(Rational::from((-1, 2)))]);
    }
    if p % 2 == 0 {
        // Trivial zero; zeta'(-2) = -zeta(3)/(4 pi^2).
        let deriv = if p == -2 {
            Some(SymConst::monomial(
                Rational::from((-1, 4)),
                1,
                &[(Sym::Zeta3, 1), (Sym::Pi, -2)],
            ))
        } else {
            None
        };
        let mut l = Laurent::from_terms(0, vec![SymConst::zero()]);
        l.set(1, deriv);
        return l;
    }
    let m = (1 - p) as usize;
    Laurent::from_terms(
        0,
        vec![SymConst::rational(-bernoulli(m) / Rational::from(m))],
    )
}

/// Laurent data of L(chi, s) at s = p for a real primitive character.
fn dirichlet_laurent(chi: &DirichletChar, p: i64) -> Laurent {
    if chi.is_trivial() {
        return zeta_laurent(p);
    }
    let n = chi.modulus;
    let delta = if chi.is_odd() { 1 } else { 0 };
    if p >= 1 {
        if (p - delta) % 2 == 0 {
            // (-1)^{1 + (p - delta)/2} (sqrt N / 2) (2 pi / N)^p B_{p,chi} / p!
            let sign = if ((p - delta) / 2) % 2 == 0 { -1 } else { 1 };
            let b = generalized_bernoulli(p as usize, chi);
            let c = b * sign * Integer::from(Integer::u_pow_u(2, p as u32))
                / Rational::from(
                    factorial(p as u32) * 2u32 * Integer::from(Integer::u_pow_u(n, p as u32)),
                );
            let v = SymConst::monomial(c, n, &[(Sym::Pi, p as i32)]);
            return Laurent::from_terms(0, vec![v]);
        }
        if chi.discriminant == -3 && p == 2 {
            return Laurent::from_terms(0, vec![SymConst::sym(Sym::LChi3At2)]);
        }
        return Laurent::unknown();
    }
    let m = (1 - p) as u32;
    let value = -generalized_bernoulli(m as usize, chi) / Rational::from(m);
    if value != 0 {
        return Laurent::from_terms(0, vec![SymConst::rational(value)]);
    }
    let mut l = Laurent::from_terms(0, vec![SymConst::zero()]);
    if delta == 1 && m % 2 == 0 {
        let j = m / 2;
        // L'(chi, 1-m) = (-1)^{j-1} (2j)!/(2 4^j j) N^{m-1} sqrt(N) pi^{1-m} L(chi, m)
        let sign = if j % 2 == 1 { 1 } else { -1 };
        let c = Rational::from(factorial(m) * Integer::from(Integer::u_pow_u(n, m - 1)) * sign)
            / Rational::from(Integer::from(Integer::u_pow_u(4, j)) * 2u32 * j);
        let lm = dirichlet_laurent(chi, m as i64).get(0);
        l.set(
            1,
            lm.map(|v| v.times(&SymConst::monomial(c, n, &[(Sym::Pi, 1 - m as i32)]))),
        );
    }
    l
}

/// sum_d c_d d^{-s} at s = p + eps. Logarithms are known for powers of two.
fn dirichlet_polynomial(terms: &[(u64, Rational)], p: i64) -> Laurent {
    let mut l = Laurent::zero();
    for (d, c) in terms {
        let base = if p >= 0 {
            Rational::from((Integer::from(1), Integer::from(*d).pow(p as u32)))
        } else {
            Rational::from(Integer::from(*d).pow((-p) as u32))
        };
        let base = base * c;
        let log2_mult = if d.is_power_of_two() {
            Some(d.trailing_zeros() as i64)
        } else {
            None
        };
        let mut term = Laurent::zero();
        for k in 0..=MAX_DEG {
            // (-log d)^k / k!
            let v = if k == 0 {
                Some(SymConst::rational(base.clone()))
            } else if *d == 1 {
                Some(SymConst::zero())
            } else {
                log2_mult.map(|j| {
                    let r = Rational::from(Integer::from(-j).pow(k as u32))
                        / Rational::from(factorial(k as u32));
                    SymConst::monomial(r * &base, 1, &[(Sym::Log2, k)])
                })
            };
            term.set(k, v);
        }
        l = l.add(&term);
    }
    l
}

fn weight_laurent(w: &WeightFn, p: i64) -> Result<Laurent> {
    match w {
        WeightFn::Character(chi) => Ok(dirichlet_laurent(chi, p)),
        WeightFn::Divisibility(terms) => {
            let poly: Vec<(u64, Rational)> = terms
                .iter()
                .map(|(l, c)| (*l as u64, c.0.clone()))
                .collect();
            dirichlet_polynomial(&poly, p).mul(&zeta_laurent(p))
        }
    }
}

fn divisor_sum_laurent(ds: &DivisorSum, p: i64) -> Result<Laurent> {
    weight_laurent(&ds.a, p)?.mul(&weight_laurent(&ds.b, p - ds.power as i64)?)
}

fn expr_laurent(reg: &FormRegistry, e: &FormExpr, p: i64) -> Result<Laurent> {
    match e {
        FormExpr::DivisorSum(ds) => divisor_sum_laurent(ds, p),
        FormExpr::Constant(_) => Ok(Laurent::zero()),
        FormExpr::Dilate(d, inner) => dirichlet_polynomial(&[(*d as u64, Rational::from(1))], p)
            .mul(&expr_laurent(reg, inner, p)?),
        FormExpr::Linear(terms) => {
            let mut acc = Laurent::zero();
            for (c, t) in terms {
                acc = acc.add(&expr_laurent(reg, t, p)?.scale(&c.0));
            }
            Ok(acc)
        }
        FormExpr::Form(id) => {
            let recipe = reg.recipe(id)?;
            match expr_laurent(reg, &recipe.expansion, p) {
                Ok(l) => Ok(l),
                Err(Error::Unsupported(msg)) => match &recipe.pointwise {
                    Some(pw) => expr_laurent(reg, pw, p),
                    None => Err(Error::Unsupported(msg)),
                },
                Err(e) => Err(e),
            }
        }
        other => Err(Error::Unsupported(format!(
            "no L-series factorization for {}",
            expr_kind(other)
        ))),
    }
}

fn expr_kind(e: &FormExpr) -> &'static str {
    match e {
        FormExpr::Form(_) => "form",
        FormExpr::Eta(_) => "eta quotient",
        FormExpr::DivisorSum(_) => "divisor sum",
        FormExpr::Constant(_) => "constant",
        FormExpr::Dilate(..) => "dilation",
        FormExpr::Linear(_) => "linear combination",
        FormExpr::Product(_) => "product",
        FormExpr::RationalOfT { .. } => "rational function of t",
        FormExpr::Derivative(_) => "derivative",
        FormExpr::ShiftHalf(_) => "half shift",
    }
}

/// Exact L(e, p) for Eisenstein-type expressions, as the constant term of
/// the Laurent expansion at s = p. A surviving pole is an error.
pub fn lvalue_symbolic(reg: &FormRegistry, e: &FormExpr, p: i64) -> Result<SymConst> {
    expr_laurent(reg, e, p)?.value()
}

/// L(chi, s) for s >= 2.
pub fn dirichlet_lvalue(chi: &DirichletChar, s: u32, prec: u32) -> Result<LValueResult> {
    let ev = dirichlet_l(chi, s, prec)?;
    let floor = Float::with_val(prec, 1) >> (prec as i32 - 4);
    Ok(LValueResult {
        value: ev.value,
        error_bound: ev.error.max(&floor),
        method: LMethod::DirectSum,
    })
}

/// L(g, p) for a registry form: closed form for Eisenstein-type entries,
/// direct summation for the CM form f15.
pub fn lvalue_single(reg: &FormRegistry, id: &str, p: i64, prec: u32) -> Result<LValueResult> {
    check_precision(prec, 64)?;
    if id == "f15" {
        if p < 3 {
            return Err(Error::Unsupported(
                "direct summation for f15 needs p >= 3".into(),
            ));
        }
        return f15_direct_sum(p as u32, F15_TERMS, prec);
    }
    let exact = lvalue_symbolic(reg, &FormExpr::form(id), p)?;
    let vals = SymValues::new(prec + 16)?;
    let value = Float::with_val(prec, exact.eval(&vals));
    let err = Float::with_val(prec, 1) >> (prec as i32 - 8);
    let scale = Float::with_val(prec, value.abs_ref()).max(&Float::with_val(prec, 1));
    Ok(LValueResult {
        error_bound: scale * err,
        value,
        method: LMethod::ClosedForm,
    })
}

/// Default truncation of the direct sum for f15.
pub const F15_TERMS: usize = 1 << 21;

/// Coefficients a_0..a_n of f15 = eta(3z)^3 eta(5z)^3 + eta(z)^3 eta(15z)^3,
/// from eta(z)^3 = sum_{k>=0} (-1)^k (2k+1) q^{(2k+1)^2/8}.
pub fn f15_coefficients(n: usize) -> Vec<i64> {
    let mut a = vec![0i64; n + 1];
    let mut add = |u: u64, v: u64| {
        // Terms q^{(u x^2 + v y^2)/8} with x, y odd.
        let mut x = 1u64;
        while u * x * x <= 8 * n as u64 {
            let sx: i64 = if (x / 2) % 2 == 0 { 1 } else { -1 };
            let mut y = 1u64;
            while u * x * x + v * y * y <= 8 * n as u64 {
                let sy: i64 = if (y / 2) % 2 == 0 { 1 } else { -1 };
                let e = (u * x * x + v * y * y) / 8;
                a[e as usize] += sx * sy * (x * y) as i64;
                y += 2;
            }
            x += 2;
        }
    };
    add(3, 5);
    add(1, 15);
    a
}

/// Bound for sum_{n>N} |a_n| n^{-p} using |a_n| <= d(n) n. Partial summation
/// against sum_{n<=x} d(n) <= x (ln x + 1) gives
/// (p-1) int_N^inf (ln x + 1) x^{1-p} dx.
fn f15_tail_bound(p: u32, n: usize, prec: u32) -> Float {
    let k = Float::with_val(prec, p - 2);
    let nn = Float::with_val(prec, n);
    let ln_n = Float::with_val(prec, nn.ln_ref());
    let npow = Float::with_val(prec, nn.pow(&k));
    // int_N^inf ln x x^{-k-1} dx = ln N/(k N^k) + 1/(k^2 N^k); int x^{-k-1} = 1/(k N^k)
    let integral = (ln_n / &k
        + Float::with_val(prec, k.recip_ref()).square()
        + Float::with_val(prec, k.recip_ref()))
        / npow;
    integral * (p - 1)
}

/// L(f15, p) = sum_{n<=N} a_n n^{-p} plus a rigorous tail bound.
pub fn f15_direct_sum(p: u32, n: usize, prec: u32) -> Result<LValueResult> {
    if p < 3 {
        return Err(Error::Unsupported("tail bound needs p >= 3".into()));
    }
    let a = f15_coefficients(n);
    let wp = prec + 32;
    let mut acc = Float::new(wp);
    for (k, &c) in a.iter().enumerate().skip(1) {
        if c != 0 {
            let kp = Float::with_val(wp, k as u64).pow(p);
            acc += Float::with_val(wp, c) / kp;
        }
    }
    let bound = f15_tail_bound(p, n, prec);
    Ok(LValueResult {
        value: Float::with_val(prec, acc),
        error_bound: bound,
        method: LMethod::DirectSum,
    })
}

/// The fitted Fricke multiplier c in f15(-1/(15z)) = c z^3 f15(z).
#[derive(Clone, Debug, Serialize)]
pub struct FrickeFit {
    #[serde(serialize_with = "super::float_str")]
    pub re: Float,
    #[serde(serialize_with = "super::float_str")]
    pub im: Float,
    /// Largest deviation of a single sample from the mean.
    #[serde(serialize_with = "super::float_str")]
    pub spread: Float,
    pub samples: usize,
}

/// Fit c from pointwise values at `samples` points near the Fricke fixed
/// circle |z| = 1/sqrt(15).
pub fn fricke_constant_f15(reg: &FormRegistry, samples: usize, prec: u32) -> Result<FrickeFit> {
    check_precision(prec, 64)?;
    let wp = prec + 32;
    let mut vals = Vec::with_capacity(samples);
    for k in 0..samples {
        let x = Float::with_val(
            wp,
            (k as f64 - samples as f64 / 2.0) / (4.0 * samples as f64),
        );
        let y = Float::with_val(wp, 0.2 + 0.15 * k as f64 / samples as f64);
        let z = Complex::new(x, y);
        let w = (&z.scale(&Float::with_val(wp, -15))).recip();
        let lhs = reg.value("f15", &w, wp)?;
        let rhs = &z.powi(3) * &reg.value("f15", &z, wp)?;
        vals.push(&lhs / &rhs);
    }
    let mut mean = Complex::zero(wp);
    for v in &vals {
        mean = &mean + v;
    }
    let mean = mean.scale(&(Float::with_val(wp, samples as u32)).recip());
    let mut spread = Float::with_val(wp, 0);
    for v in &vals {
        let d = (v - &mean).abs();
        if d > spread {
            spread = d;
        }
    }
    Ok(FrickeFit {
        re: Float::with_val(prec, &mean.re),
        im: Float::with_val(prec, &mean.im),
        spread: Float::with_val(prec, spread),
        samples,
    })
}

/// L(f15, p) through the Mellin integral split at t0 = 1/sqrt(15):
///
///   Gamma(p) L / (2 pi)^p = int_{t0}^inf f(it) t^{p-1} dt
///                           + (-i c) 15^{-p} int_{t0}^inf f(it) t^{2-p} dt,
///
/// valid for weight 3, where c is the fitted Fricke multiplier. The
/// q-expansion converges geometrically on [t0, inf).
pub fn f15_mellin(
    reg: &FormRegistry,
    p: u32,
    prec: u32,
    quad: &QuadratureSpec,
) -> Result<(LValueResult, FrickeFit)> {
    check_precision(prec, 64)?;
    let wp = prec + 32;
    let fit = fricke_constant_f15(reg, 20, wp)?;
    let tol_fit = Float::with_val(wp, 1) >> (prec as i32 / 2);
    if fit.re.clone().abs() > tol_fit {
        return Err(Error::Convergence(format!(
            "Fricke multiplier is not imaginary: re = {}",
            fit.re
        )));
    }
    let c_real = fit.im.clone(); // -i c
    let pi2 = pi(wp) * 2u32;
    let t0 = Float::with_val(wp, 15).sqrt().recip();
    let x0 = Float::with_val(wp, -(Float::with_val(wp, &pi2 * &t0))).exp();
    // Terms needed for |x0|^N below 2^-wp, with polynomial growth headroom.
    let ln_x0 = Float::with_val(wp, x0.ln_ref()).to_f64();
    let nterms = ((wp as f64 * std::f64::consts::LN_2 + 40.0) / -ln_x0).ceil() as usize + 20;
    let coeffs: Vec<Float> = f15_coefficients(nterms)
        .into_iter()
        .map(|c| Float::with_val(wp, c))
        .collect();

    // int_{t0}^inf e^{-2 pi n t} t^{p-1} dt = Gamma(p, 2 pi n t0) / (2 pi n)^p in closed form.
    let mut upper = Float::new(wp);
    for (n, c) in coeffs.iter().enumerate().skip(1) {
        if c.is_zero() {
            continue;
        }
        let a = Float::with_val(wp, &pi2 * n as u32);
        let g = upper_gamma_int(p, &Float::with_val(wp, &a * &t0));
        upper += Float::with_val(wp, c * g) / a.pow(p);
    }
    // The second integral has a negative power of t; integrate numerically.
    let tol = quad.tolerance(wp);
    let series = |t: &Float| -> Float {
        let x = Float::with_val(wp, -(Float::with_val(wp, &pi2 * t))).exp();
        let mut acc = Float::new(wp);
        for c in coeffs.iter().rev() {
            acc *= &x;
            acc += c;
        }
        acc
    };
    let lower = exp_sinh(
        |t: &Float| {
            let tp = Float::with_val(wp, t.pow(p as i32 - 2));
            Ok(series(t) / tp)
        },
        &t0,
        wp,
        &tol,
        quad.max_level.max(10),
    )?;
    let fifteen_p = Float::with_val(wp, 15u32).pow(p);
    let total = upper + Float::with_val(wp, &c_real * &lower.value) / &fifteen_p;
    let pref = Float::with_val(wp, pi2.pow(p)) / gamma(&Float::with_val(wp, p));
    let value = Float::with_val(prec, &total * &pref);
    // Quadrature error, Fricke fit spread (propagated) and a rounding floor.
    let mut err = Float::with_val(wp, &lower.error * &c_real).abs() / &fifteen_p;
    err += Float::with_val(wp, &fit.spread * &lower.value).abs() / &fifteen_p;
    err *= &pref;
    err += Float::with_val(wp, 1) >> (prec as i32 - 8);
    Ok((
        LValueResult {
            value,
            error_bound: Float::with_val(prec, err),
            method: LMethod::MellinSplit,
        },
        fit,
    ))
}

/// 6 (sqrt 15 / (2 pi))^5 L(f15, 4), conjecturally m(1 + x1 + x2 + x3 + x4).
pub fn conjectural_m_linear4(l4: &Float) -> Float {
    let p = l4.prec();
    let r = Float::with_val(p, 15).sqrt() / (pi(p) * 2u32);
    Float::with_val(p, r.pow(5u32)) * l4 * 6u32
}
