//! The pointwise form of the weight 2 parametrization identity
//!
//!   b(t(z)) = 4/5 f(z) + f(z) D^{-3}( -A g3(z) + B g2(z) ),
//!   A = 3 sqrt5 Omega^2 / (10 pi),  B = 3 sqrt5 / (5 pi^3 Omega^2),
//!
//! where b is the power-series solution of L3 b = -A t(212t^2+251t-13)/(1-t)^3
//! + B t/(1-t) with b(0) = 4/5. The left side sums the exact t-series of b;
//! the right side integrates pointwise values of g2, g3 along the vertical
//! ray above z0, using D^{-3} g(z0) = (2 pi)^3/2 int_0^inf u^2 g(z0 + iu) du.

use crate::error::{Error, Result};
use crate::forms::FormRegistry;
use crate::numeric::quad::exp_sinh;
use crate::numeric::special::pi;
use crate::numeric::{check_precision, Complex, QuadratureSpec};
use crate::operators::moments::{run_case, MomentCase};
use crate::operators::{l3, solve_nonhomogeneous};
use crate::series::QSeries;
use crate::symbolic::{Sym, SymConst, SymValues};
use rug::{Float, Rational};
use serde::Serialize;

#[derive(Clone, Debug, Serialize)]
pub struct Cor2Pointwise {
    pub z0: (f64, f64),
    pub order: usize,
    #[serde(serialize_with = "super::float_str")]
    pub t: Float,
    #[serde(serialize_with = "super::float_str")]
    pub lhs: Float,
    #[serde(serialize_with = "super::float_str")]
    pub rhs: Float,
    #[serde(serialize_with = "super::float_sci")]
    pub residual: Float,
    #[serde(serialize_with = "super::float_sci")]
    pub quadrature_error: Float,
}

/// Coefficient pairs (A-part, B-part) of the right-hand side.
pub fn cor2_constants() -> (SymConst, SymConst) {
    (
        SymConst::monomial(
            Rational::from((3, 10)),
            5,
            &[(Sym::Omega, 2), (Sym::Pi, -1)],
        ),
        SymConst::monomial(
            Rational::from((3, 5)),
            5,
            &[(Sym::Pi, -3), (Sym::Omega, -2)],
        ),
    )
}

/// Exact t-series pieces of b: the homogeneous part with b(0) = 4/5 and one
/// particular solution per transcendental monomial of the right-hand side.
fn b_series(order: usize) -> Result<(QSeries<Rational>, Vec<(SymConst, QSeries<Rational>)>)> {
    let op = l3();
    let rhs = run_case(MomentCase::Thm2)?
        .ln_rhs
        .ok_or_else(|| Error::Unsupported("no right-hand side for the weight 2 case".into()))?;
    let zero = QSeries::constant(Rational::new(), order);
    let hom = solve_nonhomogeneous(&op, &zero, &Rational::from((4, 5)), order)?;
    let mut parts = Vec::new();
    for (unit, r) in rhs.components() {
        let s = r.to_series(order)?;
        parts.push((
            unit,
            solve_nonhomogeneous(&op, &s, &Rational::new(), order)?,
        ));
    }
    Ok((hom, parts))
}

fn horner_complex(s: &QSeries<Rational>, t: &Complex) -> Complex {
    let p = t.prec();
    let mut acc = Complex::zero(p);
    for c in s.coeffs().iter().rev() {
        acc = &(&acc * t) + &Complex::from_rational(p, c, &Rational::new());
    }
    acc
}

/// |lhs - rhs| at z0, with b summed through t^order.
pub fn cor2_pointwise_identity(
    z0: &Complex,
    order: usize,
    prec: u32,
    quad: &QuadratureSpec,
) -> Result<Cor2Pointwise> {
    check_precision(prec, 64)?;
    if z0.im < 1 {
        return Err(Error::InvalidArgument("need Im z0 >= 1".into()));
    }
    let wp = prec + 32;
    let reg = FormRegistry::global();
    let z = z0.with_prec(wp);
    let t = reg.value("t3", &z, wp)?;
    if t.abs() >= Float::with_val(wp, 1) / 16u32 {
        return Err(Error::InvalidArgument(format!(
            "|t(z0)| = {} outside the disc |t| < 1/16",
            t.abs()
        )));
    }
    let f = reg.value("f3", &z, wp)?;
    let vals = SymValues::new(wp)?;

    let (hom, parts) = b_series(order)?;
    let mut lhs = horner_complex(&hom, &t);
    for (unit, s) in &parts {
        lhs = &lhs + &horner_complex(s, &t).scale(&unit.eval(&vals));
    }

    let (a, b) = cor2_constants();
    let (a, b) = (a.eval(&vals), b.eval(&vals));
    let tol = quad.tolerance(wp);
    // Beyond u_max the integrand is below 2^-wp.
    let u_max = Float::with_val(
        wp,
        wp as f64 * std::f64::consts::LN_2 / (2.0 * std::f64::consts::PI) + 8.0,
    );
    let combo = |u: &Float| -> Result<Complex> {
        if *u > u_max {
            return Ok(Complex::zero(wp));
        }
        let mut w = z.clone();
        w.im += u;
        let g2 = reg.value("g2w4", &w, wp)?;
        let g3 = reg.value("g3w4", &w, wp)?;
        let v = &g2.scale(&b) - &g3.scale(&a);
        Ok(v.scale(&Float::with_val(wp, u.square_ref())))
    };
    let zero = Float::new(wp);
    let re = exp_sinh(
        |u: &Float| Ok(combo(u)?.re),
        &zero,
        wp,
        &tol,
        quad.max_level.max(10),
    )?;
    let (im_val, im_err) = if z.re.is_zero() {
        (Float::new(wp), Float::new(wp))
    } else {
        let r = exp_sinh(
            |u: &Float| Ok(combo(u)?.im),
            &zero,
            wp,
            &tol,
            quad.max_level.max(10),
        )?;
        (r.value, r.error)
    };
    let pref = Float::with_val(wp, pi(wp).square_ref()) * pi(wp) * 4u32; // (2 pi)^3 / 2
    let d3 = Complex::new(re.value, im_val).scale(&pref);
    let rhs = &f.scale_rational(&Rational::from((4, 5))) + &(&f * &d3);
    let residual = (&lhs - &rhs).abs();
    let qerr = Float::with_val(wp, re.error + im_err) * &pref * f.abs();
    Ok(Cor2Pointwise {
        z0: z0.to_f64_pair(),
        order,
        t: Float::with_val(prec, &t.re),
        lhs: Float::with_val(prec, &lhs.re),
        rhs: Float::with_val(prec, &rhs.re),
        residual: Float::with_val(prec, residual),
        quadrature_error: Float::with_val(prec, qerr),
    })
}
