//! Double L-values L(g_in, g_out, p, s2) as iterated integrals along the
//! imaginary axis:
//!
//!   (2 pi)^{p+s2} / (Gamma(p) Gamma(s2)) * int_0^inf g_out(it) t^{s2-1}
//!       int_t^inf (v - t)^{p-1} g_in(iv) dv dt.
//!
//! Above the split point the inner tails come from the q-expansion in closed
//! form; below it both forms are evaluated pointwise and the tails are
//! accumulated panel by panel with Chebyshev interpolation.

use super::{LMethod, LValueResult};
use crate::error::{Error, Result};
use crate::forms::FormRegistry;
use crate::numeric::arith::binomial;
use crate::numeric::cheb::ChebGrid;
use crate::numeric::quad::exp_sinh;
use crate::numeric::special::pi;
use crate::numeric::{check_precision, Complex, QuadratureSpec};
use crate::series::QSeries;
use rayon::prelude::*;
use rug::ops::Pow;
use rug::{Float, Rational};

/// Panel controls for the pointwise region.
#[derive(Clone, Debug)]
pub struct PanelSpec {
    pub nodes: usize,
    /// Below this height the integrand is dropped (its size is added to the error).
    pub s_min: f64,
    pub max_depth: u32,
}

impl Default for PanelSpec {
    fn default() -> Self {
        PanelSpec {
            nodes: 40,
            s_min: 0.004,
            max_depth: 10,
        }
    }
}

/// Float coefficients c_0..c_N of an expansion with integral exponents.
pub fn float_coeffs(s: &QSeries<Rational>, prec: u32) -> Result<Vec<Float>> {
    let lead = s
        .lead()
        .as_integer()
        .ok_or_else(|| Error::FractionalExponent(s.lead().to_string()))?;
    if lead < 0 {
        return Err(Error::InvalidArgument(
            "expansion with a pole at infinity".into(),
        ));
    }
    let mut v = vec![Float::new(prec); lead as usize];
    v.extend(s.coeffs().iter().map(|c| Float::with_val(prec, c)));
    Ok(v)
}

/// sum c_n e^{-2 pi n s}.
pub fn series_on_axis(c: &[Float], s: &Float) -> Float {
    let p = s.prec();
    let x = Float::with_val(p, -(pi(p) * 2u32 * s)).exp();
    let mut acc = Float::new(p);
    for cn in c.iter().rev() {
        acc *= &x;
        acc += cn;
    }
    acc
}

/// T_k(s) = int_s^inf u^k g(iu) du for k = 0..kmax from coefficients with c_0 = 0,
/// together with the size of the last included term.
pub fn series_tails(c: &[Float], s: &Float, kmax: usize) -> (Vec<Float>, Float) {
    let p = s.prec();
    let two_pi = pi(p) * 2u32;
    let x = Float::with_val(p, -(Float::with_val(p, &two_pi * s))).exp();
    let mut e = Float::with_val(p, 1);
    let mut out = vec![Float::new(p); kmax + 1];
    let mut last = Float::new(p);
    let mut spow = vec![Float::with_val(p, 1)];
    for j in 1..=kmax {
        let v = Float::with_val(p, &spow[j - 1] * s);
        spow.push(v);
    }
    for (n, cn) in c.iter().enumerate().skip(1) {
        e *= &x;
        if cn.is_zero() {
            continue;
        }
        let a = Float::with_val(p, &two_pi * n as u32);
        let ce = Float::with_val(p, cn * &e);
        // int_s^inf u^k e^{-a u} du = e^{-a s} sum_j k!/j! s^j / a^{k-j+1}
        let inv_a = Float::with_val(p, a.recip_ref());
        for (k, slot) in out.iter_mut().enumerate() {
            let mut sum = Float::new(p);
            let mut ratio = Float::with_val(p, 1); // k!/j!
            let mut apow = Float::with_val(p, &inv_a);
            for j in (0..=k).rev() {
                sum += Float::with_val(p, &ratio * &spow[j]) * &apow;
                ratio *= j as u32;
                apow *= &inv_a;
            }
            *slot += Float::with_val(p, &ce * &sum);
        }
        last = Float::with_val(p, &ce / &a).abs();
    }
    (out, last)
}

fn value_on_axis(reg: &FormRegistry, id: &str, s: &Float, prec: u32) -> Result<Float> {
    let z = Complex::new(Float::new(prec), s.clone());
    Ok(reg.value(id, &z, prec)?.re)
}

/// Weight W(s) = sum_m binom(p-1, m) (-1)^m s^{s2+m-1} T_{p-1-m}(s).
fn weight(tails: &[Float], s: &Float, p1: usize, s2: u32) -> Float {
    let prec = s.prec();
    let mut acc = Float::new(prec);
    for m in 0..p1 {
        let b = Float::with_val(prec, &binomial((p1 - 1) as u32, m as u32));
        let sp = Float::with_val(prec, s.pow(s2 as i32 + m as i32 - 1));
        let mut term = b * sp * &tails[p1 - 1 - m];
        if m % 2 == 1 {
            term = -term;
        }
        acc += term;
    }
    acc
}

struct PanelOutput {
    tails_left: Vec<Float>,
    integral: Float,
    error: Float,
    evaluations: usize,
}

#[allow(clippy::too_many_arguments)]
fn panel(
    reg: &FormRegistry,
    inner: &str,
    outer: &str,
    a: &Float,
    b: &Float,
    tails_right: &[Float],
    p1: usize,
    s2: u32,
    grid: &ChebGrid,
    depth: u32,
    spec: &PanelSpec,
    tol: f64,
) -> Result<PanelOutput> {
    let prec = grid.prec;
    let n = grid.n;
    let nodes: Vec<Float> = (0..=n).map(|k| grid.node(k, a, b)).collect();
    let width = Float::with_val(prec, b - a).to_f64();
    let vals: Vec<(Float, Float)> = nodes
        .par_iter()
        .map(|u| {
            Ok((
                value_on_axis(reg, inner, u, prec)?,
                value_on_axis(reg, outer, u, prec)?,
            ))
        })
        .collect::<Result<_>>()?;
    let mut inner_coefs = Vec::with_capacity(p1);
    let mut converged = true;
    for k in 0..p1 {
        let f: Vec<Float> = nodes
            .iter()
            .zip(&vals)
            .map(|(u, (gi, _))| Float::with_val(prec, u.pow(k as i32)) * gi)
            .collect();
        let c = grid.coefficients(&f);
        let tail = c[c.len() - 3..]
            .iter()
            .map(|x| x.to_f64().abs())
            .fold(0.0, f64::max);
        converged &= tail * width < tol;
        inner_coefs.push(c);
    }
    if !converged && depth < spec.max_depth {
        let mid = Float::with_val(prec, a + b) / 2u32;
        let right = panel(
            reg,
            inner,
            outer,
            &mid,
            b,
            tails_right,
            p1,
            s2,
            grid,
            depth + 1,
            spec,
            tol,
        )?;
        let left = panel(
            reg,
            inner,
            outer,
            a,
            &mid,
            &right.tails_left,
            p1,
            s2,
            grid,
            depth + 1,
            spec,
            tol,
        )?;
        return Ok(PanelOutput {
            tails_left: left.tails_left,
            integral: right.integral + left.integral,
            error: right.error + left.error,
            evaluations: right.evaluations + left.evaluations,
        });
    }
    // tails at every node
    let node_tails: Vec<Vec<Float>> = {
        let per_k: Vec<Vec<Float>> = inner_coefs
            .iter()
            .enumerate()
            .map(|(k, c)| {
                grid.tail_integrals(c, a, b)
                    .into_iter()
                    .map(|t| t + &tails_right[k])
                    .collect()
            })
            .collect();
        (0..=n)
            .map(|j| per_k.iter().map(|v| v[j].clone()).collect())
            .collect()
    };
    let h: Vec<Float> = (0..=n)
        .map(|j| weight(&node_tails[j], &nodes[j], p1, s2) * &vals[j].1)
        .collect();
    let hc = grid.coefficients(&h);
    let integral = grid.integral(&hc, a, b);
    let scale = hc.iter().map(|x| x.to_f64().abs()).fold(0.0, f64::max);
    let tail = hc[hc.len() - 3..]
        .iter()
        .map(|x| x.to_f64().abs())
        .fold(0.0, f64::max);
    let inner_tail: f64 = inner_coefs
        .iter()
        .map(|c| {
            c[c.len() - 3..]
                .iter()
                .map(|x| x.to_f64().abs())
                .fold(0.0, f64::max)
        })
        .fold(0.0, f64::max);
    let err = (tail + inner_tail * scale.max(1.0)) * width;
    Ok(PanelOutput {
        tails_left: node_tails[n].clone(),
        integral,
        error: Float::with_val(prec, err),
        evaluations: 2 * (n + 1),
    })
}

/// Size of the integrand just below the cut-off, reported by `double_lvalue`.
#[derive(Clone, Debug)]
pub struct DoubleLDiagnostics {
    pub integrand_at_cutoff: Float,
    pub evaluations: usize,
}

/// L(g_in, g_out, p1, s2) for forms in the registry. The inner form must
/// vanish at infinity.
pub fn double_lvalue(
    reg: &FormRegistry,
    inner: &str,
    outer: &str,
    p1: u32,
    s2: i64,
    prec: u32,
    quad: &QuadratureSpec,
    panels: &PanelSpec,
) -> Result<(LValueResult, DoubleLDiagnostics)> {
    check_precision(prec, 64)?;
    if p1 == 0 {
        return Err(Error::InvalidArgument("p1 must be positive".into()));
    }
    if s2 <= 0 {
        let zero = Float::new(prec);
        return Ok((
            LValueResult {
                value: zero.clone(),
                error_bound: Float::with_val(prec, 1) >> prec as i32,
                method: LMethod::NestedQuadrature,
            },
            DoubleLDiagnostics {
                integrand_at_cutoff: zero,
                evaluations: 0,
            },
        ));
    }
    let s2 = s2 as u32;
    let p1 = p1 as usize;
    let wp = prec + 32;
    let inner_ser = reg.expansion(inner, quad.tail_order)?;
    let outer_ser = reg.expansion(outer, quad.tail_order)?;
    let ci = float_coeffs(&inner_ser, wp)?;
    let co = float_coeffs(&outer_ser, wp)?;
    if !ci[0].is_zero() {
        return Err(Error::Convergence(format!(
            "inner form {inner} does not vanish at infinity"
        )));
    }
    let split = Float::with_val(wp, quad.split_point);
    let tol = quad.tolerance(wp);

    // region [split, inf): everything from q-expansions
    let mut trunc = Float::new(wp);
    let upper = exp_sinh(
        |s: &Float| {
            let (t, last) = series_tails(&ci, s, p1 - 1);
            if last > trunc {
                trunc = last;
            }
            Ok(weight(&t, s, p1, s2) * series_on_axis(&co, s))
        },
        &split,
        wp,
        &tol,
        quad.max_level,
    )?;
    let (tails_split, last_split) = series_tails(&ci, &split, p1 - 1);

    // region [s_min, split): pointwise panels, geometric towards 0
    let grid = ChebGrid::new(panels.nodes, wp);
    let abs_tol = tol.to_f64() / 64.0;
    let mut right = split.clone();
    let mut tails = tails_split;
    let mut lower = Float::new(wp);
    let mut lower_err = Float::new(wp);
    let mut evaluations = 0;
    let s_min = Float::with_val(wp, panels.s_min);
    while right > s_min {
        let left = Float::with_val(wp, &right / 2u32).max(&s_min);
        let out = panel(
            reg, inner, outer, &left, &right, &tails, p1, s2, &grid, 0, panels, abs_tol,
        )?;
        lower += out.integral;
        lower_err += out.error;
        evaluations += out.evaluations;
        tails = out.tails_left;
        right = left;
    }
    let g_out_min = value_on_axis(reg, outer, &s_min, wp)?;
    let at_cut = Float::with_val(wp, (weight(&tails, &s_min, p1, s2) * g_out_min).abs());
    let cut_err = Float::with_val(wp, &at_cut * &s_min);

    let two_pi = pi(wp) * 2u32;
    let mut pref = Float::with_val(wp, (&two_pi).pow((p1 as u32 + s2) as i32));
    for k in 1..p1 {
        pref /= k as u32;
    }
    for k in 1..s2 {
        pref /= k as u32;
    }
    let total = Float::with_val(wp, &upper.value + &lower);
    let err = Float::with_val(wp, &upper.error + &lower_err)
        + &cut_err
        + Float::with_val(wp, &trunc + &last_split) * 4u32;
    let value = Float::with_val(prec, &total * &pref);
    let error_bound = Float::with_val(prec, (err * &pref).abs())
        .max(&(Float::with_val(prec, 1) >> (prec as i32 - 8)));
    Ok((
        LValueResult {
            value,
            error_bound,
            method: LMethod::NestedQuadrature,
        },
        DoubleLDiagnostics {
            integrand_at_cutoff: Float::with_val(prec, at_cut),
            evaluations,
        },
    ))
}

/// L(g_j, g1, 3, 1) for the meromorphic weight 4 forms g2w4 (j = 2) and g3w4 (j = 3).
pub fn double_lvalue_merom(
    reg: &FormRegistry,
    j: u32,
    prec: u32,
    quad: &QuadratureSpec,
) -> Result<LValueResult> {
    let inner = match j {
        2 => "g2w4",
        3 => "g3w4",
        _ => return Err(Error::InvalidArgument(format!("j = {j}; expected 2 or 3"))),
    };
    Ok(double_lvalue(reg, inner, "g1w4", 3, 1, prec, quad, &PanelSpec::default())?.0)
}
