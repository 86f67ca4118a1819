//! The period of Q(sqrt(-15)) and the CM-point constants.

use super::double::float_coeffs;
use crate::error::{Error, Result};
use crate::forms::{FormExpr, FormRegistry};
use crate::numeric::arith::DirichletChar;
use crate::numeric::quad::tanh_sinh;
use crate::numeric::special::{gamma, pi};
use crate::numeric::{check_precision, Complex, QuadratureSpec};
use crate::operators::moments::cm_endpoint_values;
use crate::symbolic::SymValues;
use rug::ops::Pow;
use rug::Float;
use serde::Serialize;

/// Omega_15 = (30 pi)^{-1/2} (prod_{j=1}^{14} Gamma(j/15)^{chi_{-15}(j)})^{1/4}.
pub fn chowla_selberg(prec: u32) -> Result<Float> {
    check_precision(prec, 64)?;
    let wp = prec + 32;
    let chi = DirichletChar::chi_minus15();
    let mut log_prod = Float::with_val(wp, 0);
    for j in 1..15 {
        let e = chi.value(j);
        if e == 0 {
            continue;
        }
        let g = gamma(&(Float::with_val(wp, j) / 15u32));
        log_prod += Float::with_val(wp, g.ln_ref()) * e;
    }
    let root = (log_prod / 4u32).exp();
    let denom = (pi(wp) * 30u32).sqrt();
    Ok(Float::with_val(prec, root / denom))
}

/// A numerical value with an error estimate.
#[derive(Clone, Debug, Serialize)]
pub struct Estimate {
    #[serde(serialize_with = "super::float_str")]
    pub value: Float,
    #[serde(serialize_with = "super::float_sci")]
    pub error_bound: Float,
}

/// The constants at the CM point and the moment integrals of the two
/// parametrized cases.
#[derive(Clone, Debug, Serialize)]
pub struct CmConstants {
    #[serde(serialize_with = "super::float_str")]
    pub a_star: Float,
    #[serde(serialize_with = "super::float_str")]
    pub theta_a_star: Float,
    #[serde(serialize_with = "super::float_str")]
    pub theta2_a_star: Float,
    pub c0_n2: Estimate,
    pub c1_minus_3c0_n2: Estimate,
    pub c0_n3: Estimate,
    pub c1_minus_4c0: Estimate,
    /// The n = 3 integrals again, termwise from the q-expansion of f Dt.
    pub c0_n3_series: Estimate,
    pub c1_minus_4c0_series: Estimate,
}

/// Polynomial weights w(t) multiplying the moment integrands.
const W_ONE: &[i64] = &[1];
const W_N2: &[i64] = &[-3, 9];
const W_N3: &[i64] = &[-4, 64];

fn horner(w: &[i64], t: &Float) -> Float {
    let mut acc = Float::new(t.prec());
    for c in w.iter().rev() {
        acc *= t;
        acc += *c;
    }
    acc
}

/// Height below which the n = 2 integrand (which vanishes like e^{-c/s}
/// at the cusp 0) is dropped.
fn cusp_cutoff(prec: u32) -> Float {
    Float::with_val(prec, 1.0 / (prec as f64 * std::f64::consts::LN_2 + 30.0))
}

/// Termwise int_{s0}^inf s^k sum c_n e^{-2 pi n s} ds for k = 0, 1.
fn series_moment(c: &[Float], s0: &Float, k: u32) -> Float {
    let p = s0.prec();
    let two_pi = pi(p) * 2u32;
    let mut acc = Float::new(p);
    for (n, cn) in c.iter().enumerate().skip(1) {
        if cn.is_zero() {
            continue;
        }
        let a = Float::with_val(p, &two_pi * n as u32);
        let e = Float::with_val(p, -Float::with_val(p, &a * s0)).exp();
        let inv = Float::with_val(p, a.recip_ref());
        let poly = if k == 0 {
            inv.clone()
        } else {
            Float::with_val(p, s0 * &inv) + Float::with_val(p, inv.square_ref())
        };
        acc += Float::with_val(p, cn * e) * poly;
    }
    acc
}

/// Coefficients of f Dt w(t) as floats, optionally with q -> -q.
fn moment_series(
    reg: &FormRegistry,
    f: &str,
    t: &str,
    w: &[i64],
    order: usize,
    alternate: bool,
    prec: u32,
) -> Result<Vec<Float>> {
    let wt = FormExpr::rational_of_t(FormExpr::form(t), w, &[1]);
    let e = FormExpr::product(vec![
        FormExpr::form(f),
        FormExpr::derivative(FormExpr::form(t)),
        wt,
    ]);
    let s = e.expand(reg, order)?;
    let s = if alternate { s.alternate_signs()? } else { s };
    float_coeffs(&s, prec)
}

/// (18/sqrt 3) int_0^inf f^3 t (1 - 9t)(1 - t) w(t) |_{z = is} ds: pointwise
/// on [cutoff, 1], termwise above.
fn moment_n2(
    reg: &FormRegistry,
    w: &'static [i64],
    prec: u32,
    quad: &QuadratureSpec,
) -> Result<Estimate> {
    let wp = prec + 32;
    let tol = quad.tolerance(wp);
    let lo = cusp_cutoff(wp);
    let one = Float::with_val(wp, 1);
    let integrand = |s: &Float| -> Result<Float> {
        let z = Complex::new(Float::new(wp), s.clone());
        let f = reg.value("f2", &z, wp)?.re;
        let t = reg.value("t2", &z, wp)?.re;
        let shape =
            Float::with_val(wp, 1 - Float::with_val(wp, &t * 9u32)) * Float::with_val(wp, 1 - &t);
        Ok(Float::with_val(wp, f.square_ref()) * &f * &t * shape * horner(w, &t))
    };
    let edge = integrand(&lo)?.abs() * &lo;
    let low = tanh_sinh(integrand, &lo, &one, wp, &tol, quad.max_level.max(10))?;
    let order = quad.tail_order.max(64);
    let c = moment_series(reg, "f2", "t2", w, order, false, wp)?;
    let high = series_moment(&c, &one, 0);
    let scale = Float::with_val(wp, 18) / Float::with_val(wp, 3).sqrt();
    let value = Float::with_val(wp, low.value + high) * &scale;
    let err = Float::with_val(wp, low.error + edge) * &scale
        + (Float::with_val(wp, 1) >> (prec as i32 - 8));
    Ok(Estimate {
        value: Float::with_val(prec, value),
        error_bound: Float::with_val(prec, err),
    })
}

/// sqrt((1 - 4t)(1 - 16t)) along z = 1/2 + is, s >= s0: the radicand must
/// stay real and positive so the branch fixed at s = infinity persists.
fn check_n3_branch(reg: &FormRegistry, s0: &Float, prec: u32) -> Result<()> {
    let p = prec.min(128);
    let mut prev: Option<Float> = None;
    for k in 0..=96 {
        let s = Float::with_val(p, s0 + Float::with_val(p, k) / 16u32);
        let z = Complex::new(Float::with_val(p, 0.5), s.clone());
        let t = reg.value("t3", &z, p)?;
        let rad = &(&Complex::one(p) - &t.scale(&Float::with_val(p, 4)))
            * &(&Complex::one(p) - &t.scale(&Float::with_val(p, 16)));
        let small = Float::with_val(p, 1) >> (p as i32 / 2);
        if Float::with_val(p, rad.im.abs_ref()) > small || rad.re <= 0 {
            return Err(Error::BranchDiscontinuity(format!(
                "radicand {rad} at s = {s}"
            )));
        }
        if let Some(q) = &prev {
            // Adjacent radicands on a fine grid differ by far less than their size.
            if Float::with_val(p, &rad.re - q).abs() > Float::with_val(p, q / 2u32) {
                return Err(Error::BranchDiscontinuity(format!(
                    "radicand jumps near s = {s}"
                )));
            }
        }
        prev = Some(rad.re);
    }
    Ok(())
}

/// 96 int_{s0}^inf s f^2 t sqrt((1-4t)(1-16t)) w(t) |_{z=1/2+is} ds with
/// s0 = sqrt(15)/6, pointwise on [s0, s0 + 3] and termwise above; plus the
/// fully termwise value from the q-expansion of f Dt w(t).
fn moment_n3(
    reg: &FormRegistry,
    w: &'static [i64],
    prec: u32,
    quad: &QuadratureSpec,
) -> Result<(Estimate, Estimate)> {
    let wp = prec + 32;
    let tol = quad.tolerance(wp);
    let s0 = Float::with_val(wp, 15).sqrt() / 6u32;
    check_n3_branch(reg, &s0, wp)?;
    let half = Float::with_val(wp, 0.5);
    let integrand = |s: &Float| -> Result<Float> {
        let z = Complex::new(half.clone(), s.clone());
        let f = reg.value("f3", &z, wp)?.re;
        let t = reg.value("t3", &z, wp)?.re;
        let rad = Float::with_val(wp, 1 - Float::with_val(wp, &t * 4u32))
            * Float::with_val(wp, 1 - Float::with_val(wp, &t * 16u32));
        Ok(Float::with_val(wp, f.square_ref()) * &t * rad.sqrt() * horner(w, &t) * s)
    };
    let s1 = Float::with_val(wp, &s0 + 3u32);
    let low = tanh_sinh(integrand, &s0, &s1, wp, &tol, quad.max_level.max(10))?;
    let order = quad.tail_order.max(64);
    let c = moment_series(reg, "f3", "t3", w, order, true, wp)?;
    let high = series_moment(&c, &s1, 1);
    let floor = Float::with_val(wp, 1) >> (prec as i32 - 8);
    let pointwise = Float::with_val(wp, low.value + high) * 96u32;
    let perr = Float::with_val(wp, low.error * 96u32) + &floor;
    // Termwise: the last retained term bounds the geometric remainder.
    let full = series_moment(&c, &s0, 1) * 96u32;
    let tail_ratio = {
        let q0 = Float::with_val(wp, -(pi(wp) * 2u32 * &s0)).exp();
        let cn = c.last().cloned().unwrap_or_else(|| Float::new(wp)).abs();
        Float::with_val(wp, q0.pow(order as u32)) * cn * 96u32 * order as u32
    };
    Ok((
        Estimate {
            value: Float::with_val(prec, pointwise),
            error_bound: Float::with_val(prec, perr),
        },
        Estimate {
            value: Float::with_val(prec, full),
            error_bound: Float::with_val(prec, tail_ratio + floor),
        },
    ))
}

/// a*(1) and its theta-derivatives from Omega_15, and the moment integrals.
pub fn cm_constants(prec: u32, quad: &QuadratureSpec) -> Result<CmConstants> {
    check_precision(prec, 64)?;
    let reg = FormRegistry::global();
    let vals = SymValues::new(prec)?;
    let [a0, a1, a2] = cm_endpoint_values();
    let (n2, n3) = rayon::join(
        || {
            rayon::join(
                || moment_n2(reg, W_ONE, prec, quad),
                || moment_n2(reg, W_N2, prec, quad),
            )
        },
        || {
            rayon::join(
                || moment_n3(reg, W_ONE, prec, quad),
                || moment_n3(reg, W_N3, prec, quad),
            )
        },
    );
    let (c0_n2, c1_n2) = (n2.0?, n2.1?);
    let ((c0_n3, c0_n3_series), (c1_n3, c1_n3_series)) = (n3.0?, n3.1?);
    Ok(CmConstants {
        a_star: a0.eval(&vals),
        theta_a_star: a1.eval(&vals),
        theta2_a_star: a2.eval(&vals),
        c0_n2,
        c1_minus_3c0_n2: c1_n2,
        c0_n3,
        c1_minus_4c0: c1_n3,
        c0_n3_series,
        c1_minus_4c0_series: c1_n3_series,
    })
}
