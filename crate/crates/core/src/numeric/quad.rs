//! Double-exponential quadrature (tanh-sinh on finite intervals, exp-sinh on
//! half-lines) and Gauss-Legendre panels, all in MPFR arithmetic.
//!
//! Each rule refines by halving the step and reports the change between the
//! last two refinements as its error estimate.

use crate::error::{Error, Result};
use rug::float::Constant;
use rug::Float;
use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum QuadRule {
    DoubleExponential,
    GaussLegendre,
}

/// Controls for one family of integrals.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct QuadratureSpec {
    pub rule: QuadRule,
    /// Absolute tolerance expressed as log2 (the tolerance is 2^-tol_bits).
    pub tol_bits: u32,
    /// Split point for the q-expansion / pointwise switch.
    pub split_point: f64,
    /// Number of q-expansion terms used in closed-form tails.
    pub tail_order: usize,
    /// Maximal number of step halvings.
    pub max_level: u32,
}

impl QuadratureSpec {
    pub fn for_precision(prec: u32) -> Self {
        QuadratureSpec {
            rule: QuadRule::DoubleExponential,
            tol_bits: prec.saturating_sub(24).max(40),
            split_point: 0.3,
            tail_order: 300,
            max_level: 12,
        }
    }

    /// Tolerance as a float; never tighter than 2^-(prec-16).
    pub fn tolerance(&self, prec: u32) -> Float {
        let bits = self.tol_bits.min(prec.saturating_sub(16));
        Float::with_val(prec, 1) >> bits as i32
    }
}

#[derive(Clone, Debug)]
pub struct QuadResult {
    pub value: Float,
    pub error: Float,
    pub evaluations: usize,
    pub level: u32,
}

/// Largest useful |t| for the double-exponential maps at a given precision.
fn t_max(prec: u32) -> f64 {
    let bits = prec as f64 * std::f64::consts::LN_2 + 20.0;
    (bits * 2.0 / std::f64::consts::PI).ln() + 1.0
}

struct Node {
    x: Float,
    w: Float,
}

/// Node of the tanh-sinh map onto [a, b] at parameter t.
fn tanh_sinh_node(t: &Float, a: &Float, b: &Float, prec: u32) -> Node {
    let half_pi = Float::with_val(prec, Constant::Pi) / 2u32;
    let u = Float::with_val(prec, t.sinh_ref()) * &half_pi;
    let half = Float::with_val(prec, b - a) / 2u32;
    let e2u = Float::with_val(prec, Float::with_val(prec, &u * 2u32).exp());
    // distance from the nearer endpoint, computed without cancellation
    let x = if t.is_sign_negative() {
        let d =
            Float::with_val(prec, 2u32 * &half) * e2u.clone() / Float::with_val(prec, &e2u + 1u32);
        Float::with_val(prec, a + &d)
    } else {
        let d = Float::with_val(prec, 2u32 * &half) / Float::with_val(prec, &e2u + 1u32);
        Float::with_val(prec, b - &d)
    };
    let ch = Float::with_val(prec, u.cosh_ref());
    let w = Float::with_val(prec, &half * &half_pi) * Float::with_val(prec, t.cosh_ref())
        / Float::with_val(prec, ch.square_ref());
    Node { x, w }
}

/// Node of the exp-sinh map onto [a, infinity).
fn exp_sinh_node(t: &Float, a: &Float, prec: u32) -> Node {
    let half_pi = Float::with_val(prec, Constant::Pi) / 2u32;
    let e = Float::with_val(prec, Float::with_val(prec, t.sinh_ref()) * &half_pi).exp();
    let x = Float::with_val(prec, a + &e);
    let w = Float::with_val(prec, &half_pi * Float::with_val(prec, t.cosh_ref())) * e;
    Node { x, w }
}

enum Map<'a> {
    Finite(&'a Float, &'a Float),
    HalfLine(&'a Float),
}

impl Map<'_> {
    fn node(&self, t: &Float, prec: u32) -> Node {
        match self {
            Map::Finite(a, b) => tanh_sinh_node(t, a, b, prec),
            Map::HalfLine(a) => exp_sinh_node(t, a, prec),
        }
    }
}

fn de_integrate<F>(
    map: Map<'_>,
    mut f: F,
    prec: u32,
    tol: &Float,
    max_level: u32,
) -> Result<QuadResult>
where
    F: FnMut(&Float) -> Result<Float>,
{
    let tm = t_max(prec);
    let eps = Float::with_val(prec, 1) >> (prec as i32 + 4);
    let mut evaluations = 0usize;
    let eval = |t: f64, f: &mut F, evaluations: &mut usize| -> Result<Float> {
        let tf = Float::with_val(prec, t);
        let node = map.node(&tf, prec);
        if node.w.is_zero() || !node.x.is_finite() {
            return Ok(Float::new(prec));
        }
        *evaluations += 1;
        let v = f(&node.x)?;
        if !v.is_finite() {
            return Err(Error::Quadrature(format!(
                "non-finite integrand at x = {}",
                node.x.to_f64()
            )));
        }
        Ok(v * node.w)
    };

    // Level 0 with unit step, walking outwards until terms are negligible.
    let h0 = 0.5f64;
    let mut total = eval(0.0, &mut f, &mut evaluations)?;
    let mut k_max_pos = 0i64;
    let mut k_max_neg = 0i64;
    for dir in [1i64, -1] {
        let mut small_run = 0;
        let mut k = 1i64;
        loop {
            let t = dir as f64 * k as f64 * h0;
            if t.abs() > tm {
                break;
            }
            let term = eval(t, &mut f, &mut evaluations)?;
            let mag = Float::with_val(prec, term.abs_ref());
            total += &term;
            let thresh = Float::with_val(prec, total.abs_ref()) * &eps;
            if mag <= thresh || mag.is_zero() {
                small_run += 1;
                if small_run >= 3 {
                    break;
                }
            } else {
                small_run = 0;
            }
            k += 1;
        }
        if dir > 0 {
            k_max_pos = k;
        } else {
            k_max_neg = k;
        }
    }
    let mut sum_terms = total; // sum of w f over all nodes so far
    let mut h = h0;
    let mut estimate = Float::with_val(prec, &sum_terms * h);
    let mut prev_diff: Option<Float> = None;
    for level in 1..=max_level {
        h /= 2.0;
        let steps = 1i64 << level;
        // new odd nodes at this level
        let hi = k_max_pos * steps;
        let lo = -k_max_neg * steps;
        let mut k = lo + 1;
        while k < hi {
            let t = k as f64 * h;
            sum_terms += eval(t, &mut f, &mut evaluations)?;
            k += 2;
        }
        let new_est = Float::with_val(prec, &sum_terms * h);
        let diff = Float::with_val(prec, Float::with_val(prec, &new_est - &estimate).abs());
        estimate = new_est;
        let floor = Float::with_val(prec, estimate.abs_ref()) >> (prec as i32 - 12);
        let converged = diff <= *tol || diff <= floor;
        if converged && level >= 3 {
            let mut err = diff.clone();
            if err < floor {
                err = floor;
            }
            if err.is_zero() {
                err = Float::with_val(prec, 1) >> (prec as i32);
            }
            return Ok(QuadResult {
                value: estimate,
                error: err,
                evaluations,
                level,
            });
        }
        prev_diff = Some(diff);
    }
    Err(Error::Quadrature(format!(
        "no convergence after {max_level} levels; last change {}",
        prev_diff.map(|d| d.to_f64()).unwrap_or(f64::NAN)
    )))
}

/// Integral of f over [a, b] by tanh-sinh.
pub fn tanh_sinh<F>(
    f: F,
    a: &Float,
    b: &Float,
    prec: u32,
    tol: &Float,
    max_level: u32,
) -> Result<QuadResult>
where
    F: FnMut(&Float) -> Result<Float>,
{
    if a == b {
        return Ok(QuadResult {
            value: Float::new(prec),
            error: Float::with_val(prec, 0),
            evaluations: 0,
            level: 0,
        });
    }
    if a > b {
        let mut r = tanh_sinh(f, b, a, prec, tol, max_level)?;
        r.value = -r.value;
        return Ok(r);
    }
    de_integrate(Map::Finite(a, b), f, prec, tol, max_level)
}

/// Integral of f over [a, infinity) by exp-sinh. The integrand must decay.
pub fn exp_sinh<F>(f: F, a: &Float, prec: u32, tol: &Float, max_level: u32) -> Result<QuadResult>
where
    F: FnMut(&Float) -> Result<Float>,
{
    de_integrate(Map::HalfLine(a), f, prec, tol, max_level)
}

/// Gauss-Legendre nodes and weights on [-1, 1].
pub fn gauss_legendre_nodes(n: usize, prec: u32) -> Vec<(Float, Float)> {
    let wp = prec + 32;
    let pi = Float::with_val(wp, Constant::Pi);
    let mut out = Vec::with_capacity(n);
    for i in 1..=n {
        let guess = (std::f64::consts::PI * (i as f64 - 0.25) / (n as f64 + 0.5)).cos();
        let mut x = Float::with_val(wp, guess);
        let _ = &pi;
        let mut dp = Float::new(wp);
        for _ in 0..100 {
            // Legendre recurrence for P_n(x) and P_{n-1}(x)
            let mut p0 = Float::with_val(wp, 1);
            let mut p1 = x.clone();
            for k in 2..=n {
                let k = k as u32;
                let p2 = (Float::with_val(wp, &x * &p1) * (2 * k - 1)
                    - Float::with_val(wp, &p0 * (k - 1)))
                    / k;
                p0 = p1;
                p1 = p2;
            }
            // P_n' = n (x P_n - P_{n-1}) / (x^2 - 1)
            let x2m1 = Float::with_val(wp, x.square_ref()) - 1u32;
            dp = Float::with_val(wp, Float::with_val(wp, &x * &p1) - &p0) * n as u32 / &x2m1;
            let dx = Float::with_val(wp, &p1 / &dp);
            x -= &dx;
            let small =
                Float::with_val(wp, dx.abs_ref()) < (Float::with_val(wp, 1) >> (wp as i32 - 4));
            if small {
                break;
            }
        }
        let x2 = Float::with_val(wp, x.square_ref());
        let w = Float::with_val(wp, 2u32)
            / (Float::with_val(wp, 1u32 - x2) * Float::with_val(wp, dp.square_ref()));
        out.push((Float::with_val(prec, x), Float::with_val(prec, w)));
    }
    out
}

/// Composite Gauss-Legendre over [a, b] with `panels` equal panels of `n` nodes.
pub fn gauss_legendre<F>(
    mut f: F,
    a: &Float,
    b: &Float,
    n: usize,
    panels: usize,
    prec: u32,
) -> Result<Float>
where
    F: FnMut(&Float) -> Result<Float>,
{
    let nodes = gauss_legendre_nodes(n, prec);
    let width = Float::with_val(prec, b - a) / panels as u32;
    let mut total = Float::new(prec);
    for p in 0..panels {
        let left = Float::with_val(prec, a + Float::with_val(prec, &width * p as u32));
        let half = Float::with_val(prec, &width / 2u32);
        let mid = Float::with_val(prec, &left + &half);
        for (x, w) in &nodes {
            let xx = Float::with_val(prec, &mid + Float::with_val(prec, &half * x));
            total += Float::with_val(prec, f(&xx)? * w) * &half;
        }
    }
    Ok(total)
}

/// Composite Gauss-Legendre with panel doubling until two results agree.
pub fn adaptive_gauss_legendre<F>(
    mut f: F,
    a: &Float,
    b: &Float,
    prec: u32,
    tol: &Float,
    max_level: u32,
) -> Result<QuadResult>
where
    F: FnMut(&Float) -> Result<Float>,
{
    let n = (prec as usize / 8).max(16);
    let mut panels = 1usize;
    let mut prev = gauss_legendre(&mut f, a, b, n, panels, prec)?;
    let mut evaluations = n;
    for level in 1..=max_level {
        panels *= 2;
        let cur = gauss_legendre(&mut f, a, b, n, panels, prec)?;
        evaluations += n * panels;
        let diff = Float::with_val(prec, Float::with_val(prec, &cur - &prev).abs());
        let floor = Float::with_val(prec, cur.abs_ref()) >> (prec as i32 - 12);
        if diff <= *tol || diff <= floor {
            let err = if diff < floor { floor } else { diff };
            return Ok(QuadResult {
                value: cur,
                error: err,
                evaluations,
                level,
            });
        }
        prev = cur;
    }
    Err(Error::Quadrature(
        "Gauss-Legendre panel doubling did not converge".into(),
    ))
}
