//! Power-series and logarithmic solutions of theta operators.

use super::poly::Poly;
use super::theta::ThetaOp;
use crate::algebra::qi;
use crate::error::{Error, Result};
use crate::series::QSeries;
use rug::{Integer, Rational};

/// A solution sum_k strata[k](x) (log x)^k around `point`, x = t - point.
#[derive(Clone, Debug)]
pub struct LogSolution {
    pub point: Rational,
    pub strata: Vec<QSeries<Rational>>,
}

/// Truncated power series in epsilon, length fixed by the caller.
type Eps = Vec<Rational>;

fn eps_mul(a: &Eps, b: &Eps) -> Eps {
    let n = a.len();
    let mut out = vec![Rational::new(); n];
    for i in 0..n {
        if a[i] == 0 {
            continue;
        }
        for j in 0..n - i {
            out[i + j] += Rational::from(&a[i] * &b[j]);
        }
    }
    out
}

fn eps_inv(a: &Eps) -> Result<Eps> {
    if a[0] == 0 {
        return Err(Error::DivisionByZero);
    }
    let n = a.len();
    let inv0 = Rational::from(a[0].recip_ref());
    let mut out = vec![Rational::new(); n];
    out[0] = inv0.clone();
    for k in 1..n {
        let mut s = Rational::new();
        for j in 1..=k {
            s += Rational::from(&a[j] * &out[k - j]);
        }
        out[k] = -s * &inv0;
    }
    Ok(out)
}

/// P(c + eps) truncated to n terms.
fn eps_eval(p: &Poly<Rational>, c: &Rational, n: usize) -> Eps {
    let shifted = p.compose(&Poly::new(vec![c.clone(), qi(1)]));
    let mut v: Vec<Rational> = shifted.coeffs().to_vec();
    v.resize(n.max(v.len()), Rational::new());
    v.truncate(n);
    v
}

/// Operator with lowest t-power 0 whose t^0 part is c * theta^N.
fn check_mum(op: &ThetaOp) -> Result<usize> {
    let n = op.theta_degree();
    let lo = op.t_range().map(|r| r.0).unwrap_or(0);
    let p0 = op.part(0);
    let ok = lo == 0 && p0.degree() == Some(n) && p0.coeffs().iter().take(n).all(|c| *c == 0);
    if ok {
        Ok(n)
    } else {
        Err(Error::NotMaximalUnipotent(n))
    }
}

fn localized(op: &ThetaOp, point: &Rational) -> Result<ThetaOp> {
    let r = op.recentered(point)?;
    let lo = r.t_range().map(|x| x.0).unwrap_or(0);
    Ok(r.shift(-lo))
}

/// Frobenius basis phi_0, ..., phi_{N-1} at a point of maximal unipotent
/// monodromy, through x^order. phi_k = sum_j binom(k, j) log^j(x) A^{(k-j)}(x).
pub fn frobenius_basis(op: &ThetaOp, point: &Rational, order: usize) -> Result<Vec<LogSolution>> {
    let op = localized(op, point)?;
    let n = check_mum(&op)?;
    let hi = op.t_range().map(|r| r.1).unwrap_or(0) as usize;
    let mut a: Vec<Eps> = Vec::with_capacity(order + 1);
    let mut first = vec![Rational::new(); n];
    first[0] = qi(1);
    a.push(first);
    for m in 1..=order {
        let mut rhs = vec![Rational::new(); n];
        for i in 1..=hi.min(m) {
            let pi = op.part(i as i64);
            if pi.is_zero() {
                continue;
            }
            let c = Rational::from((m - i) as u64);
            let term = eps_mul(&eps_eval(&pi, &c, n), &a[m - i]);
            for k in 0..n {
                rhs[k] -= &term[k];
            }
        }
        let p0 = eps_eval(&op.part(0), &Rational::from(m as u64), n);
        a.push(eps_mul(&rhs, &eps_inv(&p0)?));
    }
    // A^{(j)}: coefficients j! [eps^j] a_m
    let mut derivs = Vec::with_capacity(n);
    let mut fact = Integer::from(1);
    for j in 0..n {
        if j > 0 {
            fact *= j as u32;
        }
        let c: Vec<Rational> = a.iter().map(|am| Rational::from(&am[j] * &fact)).collect();
        derivs.push(QSeries::from_coeffs(0, c));
    }
    let mut out = Vec::with_capacity(n);
    for k in 0..n {
        let strata = (0..=k)
            .map(|j| {
                derivs[k - j].scale(&Rational::from(crate::numeric::arith::binomial(
                    k as u32, j as u32,
                )))
            })
            .collect();
        out.push(LogSolution {
            point: point.clone(),
            strata,
        });
    }
    Ok(out)
}

/// Apply an operator (already written in the local variable) to a log
/// solution, returning the strata of the result.
pub fn apply_to_log(op: &ThetaOp, sol: &[QSeries<Rational>]) -> Result<Vec<QSeries<Rational>>> {
    let theta = |s: &[QSeries<Rational>]| -> Result<Vec<QSeries<Rational>>> {
        // theta (f L^k) = (theta f) L^k + k f L^{k-1}
        let mut out: Vec<QSeries<Rational>> = s
            .iter()
            .map(|f| ThetaOp::theta().apply(f))
            .collect::<Result<_>>()?;
        for k in 1..s.len() {
            out[k - 1] = out[k - 1].add(&s[k].scale(&Rational::from(k as u64)))?;
        }
        Ok(out)
    };
    let deg = op.theta_degree();
    let mut powers = vec![sol.to_vec()];
    for _ in 0..deg {
        let next = theta(powers.last().unwrap())?;
        powers.push(next);
    }
    let mut acc: Vec<Option<QSeries<Rational>>> = vec![None; sol.len()];
    for (i, p) in op.parts() {
        for (j, c) in p.coeffs().iter().enumerate() {
            if *c == 0 {
                continue;
            }
            for (k, f) in powers[j].iter().enumerate() {
                let term = f.scale(c).shift(crate::series::Exponent::integer(*i));
                acc[k] = Some(match acc[k].take() {
                    None => term,
                    Some(x) => x.add(&term)?,
                });
            }
        }
    }
    Ok(acc
        .into_iter()
        .map(|x| x.unwrap_or_else(|| QSeries::constant(qi(0), 0)))
        .collect())
}

impl LogSolution {
    /// Check op(solution) = 0 through x^order, working in the local variable.
    pub fn annihilated_by(&self, op: &ThetaOp) -> Result<bool> {
        let local = localized(op, &self.point)?;
        let res = apply_to_log(&local, &self.strata)?;
        Ok(res.iter().all(|s| s.coeffs().iter().all(|c| *c == 0)))
    }
}

/// Power-series basis x^r + O(x^N), r = 0..N-1, at a regular point.
pub fn taylor_basis(
    op: &ThetaOp,
    point: &Rational,
    order: usize,
) -> Result<Vec<QSeries<Rational>>> {
    let op = localized(op, point)?;
    let n = op.theta_degree();
    let hi = op.t_range().map(|r| r.1).unwrap_or(0) as usize;
    let p0 = op.part(0);
    let roots: Vec<usize> = (0..n)
        .filter(|&r| p0.eval(&Rational::from(r as u64)) == 0)
        .collect();
    if roots.len() != n {
        return Err(Error::Unsupported(
            "point is not a regular point of the operator".into(),
        ));
    }
    let mut out = Vec::new();
    for r in 0..n {
        let mut a = vec![Rational::new(); order + 1];
        if r <= order {
            a[r] = qi(1);
        }
        for m in r + 1..=order {
            let mut s = Rational::new();
            for i in 1..=hi.min(m) {
                s -= op.part(i as i64).eval(&Rational::from((m - i) as u64)) * &a[m - i];
            }
            let d = p0.eval(&Rational::from(m as u64));
            if d == 0 {
                if s != 0 {
                    return Err(Error::Unsupported(format!(
                        "resonance at x^{m}; not a regular point"
                    )));
                }
            } else {
                a[m] = s / d;
            }
        }
        out.push(QSeries::from_coeffs(0, a));
    }
    Ok(out)
}

/// Power-series solution of op y = rhs at t = 0 with y(0) = seed, through t^order.
pub fn solve_nonhomogeneous(
    op: &ThetaOp,
    rhs: &QSeries<Rational>,
    seed: &Rational,
    order: usize,
) -> Result<QSeries<Rational>> {
    check_mum(op)?;
    let lead = rhs
        .lead()
        .as_integer()
        .ok_or_else(|| Error::FractionalExponent(rhs.lead().to_string()))?;
    for n in lead..0 {
        if rhs.coeff(n)? != 0 {
            return Err(Error::InvalidArgument(
                "right-hand side must be a power series".into(),
            ));
        }
    }
    let r = |n: i64| -> Result<Rational> {
        if n < lead {
            Ok(Rational::new())
        } else {
            rhs.coeff(n)
        }
    };
    if r(0)? != 0 {
        return Err(Error::NonzeroConstantRhs);
    }
    let hi = op.t_range().map(|x| x.1).unwrap_or(0) as usize;
    let p0 = op.part(0);
    let mut y = vec![seed.clone()];
    for n in 1..=order {
        let mut s = r(n as i64)?;
        for i in 1..=hi.min(n) {
            s -= op.part(i as i64).eval(&Rational::from((n - i) as u64)) * &y[n - i];
        }
        y.push(s / p0.eval(&Rational::from(n as u64)));
    }
    Ok(QSeries::from_coeffs(0, y))
}
