//! Differential operators sum c_ij t^i theta^j with theta = t d/dt, stored in
//! normal order (powers of t to the left of powers of theta).

use super::poly::{format_poly, Poly};
use crate::error::{Error, Result};
use crate::series::{Exponent, QSeries};
use rug::ops::Pow;
use rug::Rational;
use serde::Serialize;
use std::collections::BTreeMap;
use std::fmt;

/// Operator sum_i t^i P_i(theta); negative powers of t are allowed.
#[derive(Clone, Debug, PartialEq)]
pub struct ThetaOp {
    parts: BTreeMap<i64, Poly<Rational>>,
}

fn theta_poly(c: &[i64]) -> Poly<Rational> {
    Poly::from_ints(c)
}

/// (theta + a)^n as a polynomial in theta.
fn shifted_power(a: i64, n: u32) -> Poly<Rational> {
    theta_poly(&[a, 1]).pow(n)
}

impl ThetaOp {
    pub fn zero() -> Self {
        ThetaOp {
            parts: BTreeMap::new(),
        }
    }

    /// t^i P(theta).
    pub fn term(i: i64, p: Poly<Rational>) -> Self {
        let mut parts = BTreeMap::new();
        if !p.is_zero() {
            parts.insert(i, p);
        }
        ThetaOp { parts }
    }

    pub fn from_parts(parts: Vec<(i64, Poly<Rational>)>) -> Self {
        parts
            .into_iter()
            .fold(ThetaOp::zero(), |acc, (i, p)| acc.add(&ThetaOp::term(i, p)))
    }

    /// From a coefficient map (i, j) -> c_ij.
    pub fn from_coeffs(c: &BTreeMap<(i64, u32), Rational>) -> Self {
        let mut op = ThetaOp::zero();
        for ((i, j), v) in c {
            op = op.add(&ThetaOp::term(*i, Poly::monomial(v.clone(), *j as usize)));
        }
        op
    }

    pub fn coeffs(&self) -> BTreeMap<(i64, u32), Rational> {
        let mut m = BTreeMap::new();
        for (i, p) in &self.parts {
            for (j, c) in p.coeffs().iter().enumerate() {
                if *c != 0 {
                    m.insert((*i, j as u32), c.clone());
                }
            }
        }
        m
    }

    pub fn theta() -> Self {
        ThetaOp::term(0, theta_poly(&[0, 1]))
    }

    pub fn t_pow(i: i64) -> Self {
        ThetaOp::term(i, Poly::one())
    }

    pub fn constant(c: Rational) -> Self {
        ThetaOp::term(0, Poly::constant(c))
    }

    pub fn parts(&self) -> &BTreeMap<i64, Poly<Rational>> {
        &self.parts
    }

    pub fn part(&self, i: i64) -> Poly<Rational> {
        self.parts.get(&i).cloned().unwrap_or_else(Poly::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.parts.is_empty()
    }

    /// (min, max) power of t.
    pub fn t_range(&self) -> Option<(i64, i64)> {
        Some((*self.parts.keys().next()?, *self.parts.keys().next_back()?))
    }

    /// Highest power of theta.
    pub fn theta_degree(&self) -> usize {
        self.parts
            .values()
            .filter_map(|p| p.degree())
            .max()
            .unwrap_or(0)
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut parts = self.parts.clone();
        for (i, p) in &o.parts {
            let s = parts.get(i).cloned().unwrap_or_else(Poly::zero).add(p);
            if s.is_zero() {
                parts.remove(i);
            } else {
                parts.insert(*i, s);
            }
        }
        ThetaOp { parts }
    }

    pub fn neg(&self) -> Self {
        ThetaOp {
            parts: self.parts.iter().map(|(i, p)| (*i, p.neg())).collect(),
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn scale(&self, c: &Rational) -> Self {
        ThetaOp::from_parts(self.parts.iter().map(|(i, p)| (*i, p.scale(c))).collect())
    }

    /// Composition self * o, using theta t^b = t^b (theta + b).
    pub fn mul(&self, o: &Self) -> Self {
        let mut acc = ThetaOp::zero();
        for (a, p) in &self.parts {
            for (b, r) in &o.parts {
                let shifted = p.compose(&theta_poly(&[*b, 1]));
                acc = acc.add(&ThetaOp::term(a + b, shifted.mul(r)));
            }
        }
        acc
    }

    /// The operator with t replaced by c t.
    pub fn scale_variable(&self, c: &Rational) -> Self {
        ThetaOp::from_parts(
            self.parts
                .iter()
                .map(|(i, p)| (*i, p.scale(&pow_rational(c, *i))))
                .collect(),
        )
    }

    /// Multiply on the left by t^k.
    pub fn shift(&self, k: i64) -> Self {
        ThetaOp {
            parts: self.parts.iter().map(|(i, p)| (i + k, p.clone())).collect(),
        }
    }

    /// L(1/t, -theta - 1).
    pub fn inverted(&self) -> Self {
        let minus = theta_poly(&[-1, -1]);
        ThetaOp::from_parts(
            self.parts
                .iter()
                .map(|(i, p)| (-i, p.compose(&minus)))
                .collect(),
        )
    }

    /// L(1/t, -theta - 1) = t^p * Op with Op a polynomial operator whose
    /// lowest power of t is t^0. Returns (p, Op).
    pub fn dual(&self) -> (i64, ThetaOp) {
        let inv = self.inverted();
        let lo = inv.t_range().map(|r| r.0).unwrap_or(0);
        (lo, inv.shift(-lo))
    }

    /// The section L^{(k)} = sum_{j>=k} c_ij t^i theta^{j-k}.
    pub fn section(&self, k: usize) -> Self {
        ThetaOp::from_parts(
            self.parts
                .iter()
                .map(|(i, p)| (*i, Poly::new(p.coeffs().iter().skip(k).cloned().collect())))
                .collect(),
        )
    }

    /// Action on a (Laurent) series in t with integral exponents.
    pub fn apply(&self, a: &QSeries<Rational>) -> Result<QSeries<Rational>> {
        let lead = a
            .lead()
            .as_integer()
            .ok_or_else(|| Error::FractionalExponent(a.lead().to_string()))?;
        let mut acc: Option<QSeries<Rational>> = None;
        for (i, p) in &self.parts {
            let coeffs: Vec<Rational> = a
                .coeffs()
                .iter()
                .enumerate()
                .map(|(n, c)| Rational::from(c * p.eval(&Rational::from(lead + n as i64))))
                .collect();
            let s = QSeries::new(Exponent::integer(lead + i), coeffs)?;
            acc = Some(match acc {
                None => s,
                Some(x) => x.add(&s)?,
            });
        }
        acc.ok_or_else(|| Error::InvalidArgument("zero operator".into()))
    }

    /// Rewrite in x = t - t0 with theta_x = x d/dx, multiplied on the left by
    /// x^N (N the theta-degree) so the result is polynomial in x.
    pub fn recentered(&self, t0: &Rational) -> Result<ThetaOp> {
        if *t0 == 0 {
            return Ok(self.clone());
        }
        if self.t_range().map(|r| r.0 < 0).unwrap_or(false) {
            return Err(Error::Unsupported(
                "recentering an operator with negative powers".into(),
            ));
        }
        let n = self.theta_degree() as i64;
        // t = t0 + x; theta_t = t d/dt = (t0 + x) x^{-1} theta_x
        let t_img = ThetaOp::constant(t0.clone()).add(&ThetaOp::t_pow(1));
        let th_img = t_img.mul(&ThetaOp::t_pow(-1)).mul(&ThetaOp::theta());
        let mut acc = ThetaOp::zero();
        for (i, p) in &self.parts {
            let mut ti = ThetaOp::constant(Rational::from(1));
            for _ in 0..*i {
                ti = ti.mul(&t_img);
            }
            let mut pv = ThetaOp::zero();
            for c in p.coeffs().iter().rev() {
                pv = pv.mul(&th_img).add(&ThetaOp::constant(c.clone()));
            }
            acc = acc.add(&ti.mul(&pv));
        }
        // clear denominators: x^n * acc
        let out = ThetaOp::t_pow(n).mul(&acc);
        let lo = out.t_range().map(|r| r.0).unwrap_or(0);
        if lo < 0 {
            return Err(Error::Unsupported(
                "recentered operator is not polynomial".into(),
            ));
        }
        Ok(out.shift(-lo))
    }

    pub fn to_string_in(&self, var: &str) -> String {
        let mut parts = Vec::new();
        for (i, p) in &self.parts {
            let ps = format_poly(p, "θ");
            let mono = match i {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{i}"),
            };
            let multi = p.coeffs().iter().filter(|c| **c != 0).count() > 1;
            parts.push(match (mono.is_empty(), multi) {
                (true, _) => ps,
                (false, true) => format!("{mono}({ps})"),
                (false, false) if ps == "1" => mono,
                (false, false) if ps == "-1" => format!("-{mono}"),
                (false, false) => format!("{mono}·{ps}"),
            });
        }
        if parts.is_empty() {
            return "0".into();
        }
        parts.join(" + ").replace("+ -", "- ")
    }
}

fn pow_rational(c: &Rational, i: i64) -> Rational {
    let base = if i >= 0 {
        c.clone()
    } else {
        Rational::from(c.recip_ref())
    };
    let e = i.unsigned_abs() as u32;
    Rational::from(base.pow(e))
}

impl fmt::Display for ThetaOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_string_in("t"))
    }
}

impl Serialize for ThetaOp {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let m: BTreeMap<String, String> = self
            .coeffs()
            .iter()
            .map(|((i, j), c)| (format!("{i},{j}"), c.to_string()))
            .collect();
        m.serialize(s)
    }
}

/// theta^2 - t(10 theta^2 + 10 theta + 3) + 9 t^2 (theta + 1)^2.
pub fn l2() -> ThetaOp {
    ThetaOp::from_parts(vec![
        (0, theta_poly(&[0, 0, 1])),
        (1, theta_poly(&[-3, -10, -10])),
        (2, shifted_power(1, 2).scale(&Rational::from(9))),
    ])
}

/// theta^3 - 2t(2 theta + 1)(5 theta^2 + 5 theta + 2) + 64 t^2 (theta + 1)^3.
pub fn l3() -> ThetaOp {
    ThetaOp::from_parts(vec![
        (0, theta_poly(&[0, 0, 0, 1])),
        (
            1,
            theta_poly(&[1, 2])
                .mul(&theta_poly(&[2, 5, 5]))
                .scale(&Rational::from(-2)),
        ),
        (2, shifted_power(1, 3).scale(&Rational::from(64))),
    ])
}

/// The fourth-order operator for five summands.
pub fn l4() -> ThetaOp {
    ThetaOp::from_parts(vec![
        (0, theta_poly(&[0, 0, 0, 0, 1])),
        (1, theta_poly(&[-5, -28, -63, -70, -35])),
        (2, shifted_power(1, 2).mul(&theta_poly(&[285, 518, 259]))),
        (
            3,
            shifted_power(1, 2)
                .mul(&shifted_power(2, 2))
                .scale(&Rational::from(-225)),
        ),
    ])
}

/// The operator in lambda annihilating the density a*(lambda), three summands.
pub fn l2_tilde() -> ThetaOp {
    ThetaOp::from_parts(vec![
        (0, theta_poly(&[0, 0, 9])),
        (1, theta_poly(&[-3, -10, -10])),
        (2, shifted_power(1, 2)),
    ])
}

/// The operator in lambda annihilating the density a*(lambda), four summands.
pub fn l3_tilde() -> ThetaOp {
    ThetaOp::from_parts(vec![
        (0, theta_poly(&[0, 0, 0, 64])),
        (
            1,
            theta_poly(&[1, 2])
                .mul(&theta_poly(&[2, 5, 5]))
                .scale(&Rational::from(-2)),
        ),
        (2, shifted_power(1, 3)),
    ])
}

/// L_n for n = 2, 3, 4.
pub fn ln(n: usize) -> Result<ThetaOp> {
    match n {
        2 => Ok(l2()),
        3 => Ok(l3()),
        4 => Ok(l4()),
        _ => Err(Error::InvalidArgument(format!(
            "no operator stored for n = {n}"
        ))),
    }
}
