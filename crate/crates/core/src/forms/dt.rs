//! Pointwise values of Dt for the two parametrizations, computed from
//! algebraic relations instead of numerical differentiation.

use super::registry::FormRegistry;
use crate::error::{Error, Result};
use crate::numeric::Complex;
use rug::Float;

/// t, f and Dt at a point.
#[derive(Clone, Debug)]
pub struct ParamPoint {
    pub t: Complex,
    pub f: Complex,
    pub dt: Complex,
}

/// Weight 1 parametrization: Dt = f^2 t (1 - t)(1 - 9t).
pub fn dt2_point(reg: &FormRegistry, z: &Complex, prec: u32) -> Result<ParamPoint> {
    let t = reg.value("t2", z, prec)?;
    let f = reg.value("f2", z, prec)?;
    let one = Complex::one(prec);
    let a = &one - &t;
    let b = &one - &t.scale(&Float::with_val(prec, 9));
    let dt = &(&(&f * &f) * &t) * &(&a * &b);
    Ok(ParamPoint { t, f, dt })
}

fn sqrt_w3(t: &Complex) -> Complex {
    let p = t.prec();
    let one = Complex::one(p);
    let a = &one - &t.scale(&Float::with_val(p, 4));
    let b = &one - &t.scale(&Float::with_val(p, 16));
    (&a * &b).sqrt()
}

/// Weight 2 parametrization: (Dt)^2 = f^2 t^2 (1 - 4t)(1 - 16t). The square
/// root is continued along the vertical segment from Im z = 1.5 (where the
/// principal branch is correct) down to z, refining steps on large jumps.
pub fn dt3_point(reg: &FormRegistry, z: &Complex, prec: u32) -> Result<ParamPoint> {
    let wp = prec + 8;
    let t = reg.value("t3", z, wp)?;
    let f = reg.value("f3", z, wp)?;
    let top = Float::with_val(wp, 1.5);
    let mut branch = Complex::one(wp);
    if z.im < top {
        let mut y = top.clone();
        let mut cur = sqrt_w3(&reg.value("t3", &Complex::new(z.re.clone(), y.clone()), wp)?);
        let mut step = Float::with_val(wp, 0.05);
        let min_step = Float::with_val(wp, 1e-9);
        while y > z.im {
            let mut ny = Float::with_val(wp, &y - &step);
            if ny < z.im {
                ny = z.im.clone();
            }
            let tn = reg.value("t3", &Complex::new(z.re.clone(), ny.clone()), wp)?;
            let mut s = sqrt_w3(&tn);
            let d_plus = (&s - &cur).abs();
            let d_minus = (&s + &cur).abs();
            if d_minus < d_plus {
                s = -s;
            }
            let jump = (&s - &cur).abs();
            let scale = Float::with_val(wp, cur.abs() * 0.25f64) + Float::with_val(wp, 1e-30);
            if jump > scale && step > min_step {
                step /= 2u32;
                continue;
            }
            if step < min_step {
                return Err(Error::BranchDiscontinuity(format!(
                    "square root branch lost near Im z = {ny}"
                )));
            }
            cur = s;
            y = ny;
            if jump < Float::with_val(wp, &scale / 8u32) {
                step *= 2u32;
                if step > 0.1 {
                    step = Float::with_val(wp, 0.1);
                }
            }
        }
        // cur is the continued root at z; record its sign relative to the principal one
        let principal = sqrt_w3(&t);
        if (&cur + &principal).abs() < (&cur - &principal).abs() {
            branch = -branch;
        }
    }
    let s = &sqrt_w3(&t) * &branch;
    let dt = &(&f * &t) * &s;
    Ok(ParamPoint {
        t: t.with_prec(prec),
        f: f.with_prec(prec),
        dt: dt.with_prec(prec),
    })
}
