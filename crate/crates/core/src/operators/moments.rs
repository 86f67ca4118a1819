//! Generating functions of moments of solutions: the dual operator acting on
//! sum t^n int lambda^n F, its polar part and the boundary terms H_lambda.

use super::poly::{format_poly, Poly};
use super::ratfunc::{RatFunc, SymRatFunc};
use super::theta::{l2_tilde, l3_tilde, ThetaOp};
use crate::algebra::{q, qi, Ring};
use crate::error::{Error, Result};
use crate::series::QSeries;
use crate::symbolic::{Sym, SymConst};
use rand::Rng;
use rug::ops::Pow;
use rug::Rational;
use serde::Serialize;
use std::fmt;

type BiPoly = Poly<Poly<Rational>>;

/// num(lambda, t) / (1 - lambda t)^den_exp, with num stored as a polynomial
/// in t whose coefficients are polynomials in lambda.
#[derive(Clone, Debug, PartialEq)]
pub struct LaurentPlus {
    pub num: BiPoly,
    pub den_exp: u32,
}

fn one_minus_lt() -> BiPoly {
    Poly::new(vec![Poly::one(), Poly::from_ints(&[0, -1])])
}

/// theta^m (1/(1-u)) = A_m(u)/(1-u)^{m+1}; returns A_m.
fn eulerian_numerator(m: usize) -> Poly<Rational> {
    let mut a = Poly::from_ints(&[1]);
    for e in 1..=m {
        // theta_u [A/(1-u)^e] = [u A' (1-u) + e u A] / (1-u)^{e+1}
        let deriv = Poly::new(
            a.coeffs()
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| Rational::from(c * k as u64))
                .collect(),
        );
        let u = Poly::from_ints(&[0, 1]);
        let one_minus_u = Poly::from_ints(&[1, -1]);
        a = u
            .mul(&deriv)
            .mul(&one_minus_u)
            .add(&u.mul(&a).scale(&Rational::from(e as u64)));
    }
    a
}

/// Replace u by lambda t in a polynomial in u: coefficient of t^k is c_k lambda^k.
fn in_lambda_t(p: &Poly<Rational>) -> BiPoly {
    Poly::new(
        p.coeffs()
            .iter()
            .enumerate()
            .map(|(k, c)| Poly::monomial(c.clone(), k))
            .collect(),
    )
}

/// [ op(1/t, -theta - 1) 1/(1 - lambda t) ]_+ as a closed form.
pub fn laurent_plus(section: &ThetaOp) -> LaurentPlus {
    let inv = section.inverted();
    let e_max = section.theta_degree() as u32 + 1;
    let s = inv.t_range().map(|r| -r.0).unwrap_or(0).max(0) as usize;
    // numerator over t^s (1 - lambda t)^E
    let mut num: BiPoly = Poly::zero();
    for (i, p) in inv.parts() {
        let mut b = Poly::<Rational>::zero();
        for (m, c) in p.coeffs().iter().enumerate() {
            if *c == 0 {
                continue;
            }
            let am =
                eulerian_numerator(m).mul(&Poly::from_ints(&[1, -1]).pow(e_max - m as u32 - 1));
            b = b.add(&am.scale(c));
        }
        let shift = (s as i64 + i) as usize;
        num = num.add(&in_lambda_t(&b).shift(shift));
    }
    // polar part: expand num/(1 - lambda t)^E to t^{s-1}
    let den = one_minus_lt().pow(e_max);
    let geom: Vec<Poly<Rational>> = {
        // 1/(1 - lambda t)^E = sum binom(n+E-1, E-1) lambda^n t^n
        (0..s)
            .map(|n| {
                let b = crate::numeric::arith::binomial(n as u32 + e_max - 1, e_max - 1);
                Poly::monomial(Rational::from(b), n)
            })
            .collect()
    };
    let mut minus: BiPoly = Poly::zero();
    for n in 0..s {
        let mut c = Poly::<Rational>::zero();
        for k in 0..=n {
            c = c.add(&num.coeff(k).mul(&geom[n - k]));
        }
        minus = minus.add(&Poly::monomial(c, n));
    }
    let plus_num = num.sub(&den.mul(&minus));
    let shifted = Poly::new(plus_num.coeffs().iter().skip(s).cloned().collect());
    debug_assert!(plus_num.coeffs().iter().take(s).all(|c| c.is_zero()));
    LaurentPlus {
        num: shifted,
        den_exp: e_max,
    }
}

impl LaurentPlus {
    /// Specialize lambda = l0.
    pub fn at(&self, l0: &Rational) -> RatFunc {
        let n = self.num.map(|c| c.eval(l0));
        let d = Poly::new(vec![qi(1), Rational::from(-l0)]).pow(self.den_exp);
        RatFunc::new(n, d).expect("nonzero denominator")
    }

    /// lim_{lambda -> l0} lambda * this / (lambda - l0), if the numerator
    /// vanishes identically at l0.
    pub fn pole_cancelled_at(&self, l0: &Rational) -> Option<RatFunc> {
        let lin = Poly::new(vec![Rational::from(-l0), qi(1)]);
        let mut q_num = Vec::new();
        for c in self.num.coeffs() {
            let (qq, r) = c.mul(&Poly::from_ints(&[0, 1])).div_rem(&lin);
            if !r.is_zero() {
                return None;
            }
            q_num.push(qq.eval(l0));
        }
        let d = Poly::new(vec![qi(1), Rational::from(-l0)]).pow(self.den_exp);
        Some(RatFunc::new(Poly::new(q_num), d).expect("nonzero denominator"))
    }
}

impl fmt::Display for LaurentPlus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .num
            .coeffs()
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| {
                let cs = format_poly(c, "λ");
                match k {
                    0 => format!("({cs})"),
                    1 => format!("({cs})t"),
                    _ => format!("({cs})t^{k}"),
                }
            })
            .collect();
        write!(f, "[{}]/(1 - λt)^{}", terms.join(" + "), self.den_exp)
    }
}

/// Boundary data of a solution F at an endpoint lambda0, for j = 0..N-1.
#[derive(Clone, Debug)]
pub enum EndpointData {
    /// theta^j F(lambda0).
    Values(Vec<SymConst>),
    /// lim lambda theta^j F(lambda) (for lambda0 = 0).
    LambdaWeighted(Vec<SymConst>),
    /// lim (lambda - lambda0) theta^j F(lambda), for logarithmic singularities
    /// cancelled by a factor (lambda - lambda0) of the section.
    PoleCancel(Vec<SymConst>),
}

#[derive(Clone, Debug)]
pub struct Endpoint {
    pub point: Rational,
    pub data: EndpointData,
}

impl Endpoint {
    fn len(&self) -> usize {
        match &self.data {
            EndpointData::Values(v)
            | EndpointData::LambdaWeighted(v)
            | EndpointData::PoleCancel(v) => v.len(),
        }
    }
}

/// H_lambda0(t) from the endpoint data.
pub fn boundary_term(op: &ThetaOp, ep: &Endpoint) -> Result<SymRatFunc> {
    let n = op.theta_degree();
    if ep.len() != n {
        return Err(Error::EndpointLength {
            expected: n,
            got: ep.len(),
        });
    }
    let mut acc = SymRatFunc::zero();
    for j in 0..n {
        let lp = laurent_plus(&op.section(j + 1));
        let (c, r) = match &ep.data {
            EndpointData::Values(v) => (v[j].scale(&ep.point), lp.at(&ep.point)),
            EndpointData::LambdaWeighted(v) => (v[j].clone(), lp.at(&ep.point)),
            EndpointData::PoleCancel(v) => {
                let r = lp.pole_cancelled_at(&ep.point).ok_or_else(|| {
                    Error::Unsupported(format!(
                        "section {} does not vanish at lambda = {}; limit mode not supported",
                        j + 1,
                        ep.point
                    ))
                })?;
                (v[j].clone(), r)
            }
        };
        acc = acc.add(&SymRatFunc::term(&c, &r));
    }
    Ok(acc)
}

#[derive(Clone, Debug, Serialize)]
pub struct MomentRhs {
    pub h_alpha: SymRatFunc,
    pub h_beta: SymRatFunc,
    pub h: SymRatFunc,
}

/// h = minus_part - H_beta + H_alpha.
pub fn moment_rhs(
    op: &ThetaOp,
    alpha: &Endpoint,
    beta: &Endpoint,
    minus_part: &SymRatFunc,
) -> Result<MomentRhs> {
    let h_alpha = boundary_term(op, alpha)?;
    let h_beta = boundary_term(op, beta)?;
    let h = minus_part.sub(&h_beta).add(&h_alpha);
    Ok(MomentRhs { h_alpha, h_beta, h })
}

/// Coefficients of t^{-k}, k = 1..s, of op(1/t, -theta-1) applied to a
/// generic power series sum c_n t^n, as linear forms in c_0..c_{s-1}.
pub fn polar_template(op: &ThetaOp) -> Vec<Vec<Rational>> {
    let inv = op.inverted();
    let s = inv.t_range().map(|r| -r.0).unwrap_or(0).max(0) as usize;
    let mut rows = vec![vec![Rational::new(); s]; s];
    for (i, p) in inv.parts() {
        if *i >= 0 {
            continue;
        }
        for n in 0..s {
            let e = n as i64 + i;
            if e < 0 {
                rows[(-e - 1) as usize][n] += p.eval(&Rational::from(n as u64));
            }
        }
    }
    rows
}

/// Ready-made instances of the moment transform.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MomentCase {
    Toy,
    Thm1,
    Thm2,
}

impl std::str::FromStr for MomentCase {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "toy" => Ok(MomentCase::Toy),
            "thm1" => Ok(MomentCase::Thm1),
            "thm2" => Ok(MomentCase::Thm2),
            _ => Err(Error::Parse(format!("unknown moment case '{s}'"))),
        }
    }
}

/// theta^j a*(1), j = 0, 1, 2, at the CM point of the weight 2 parametrization.
pub fn cm_endpoint_values() -> [SymConst; 3] {
    let om2_over_pi = |c: Rational| SymConst::monomial(c, 5, &[(Sym::Omega, 2), (Sym::Pi, -1)]);
    let a0 = om2_over_pi(q(3, 2));
    let a1 = om2_over_pi(q(-3, 10));
    let a2 = om2_over_pi(q(13, 150)).plus(&SymConst::monomial(
        q(-2, 150),
        5,
        &[(Sym::Pi, -3), (Sym::Omega, -2)],
    ));
    [a0, a1, a2]
}

#[derive(Clone, Debug, Serialize)]
pub struct MomentCaseResult {
    pub case: String,
    pub operator: String,
    pub dual_operator: String,
    pub dual_prefactor: i64,
    pub minus_part: SymRatFunc,
    pub rhs: MomentRhs,
    /// Right-hand side r(t) of L_n b = r for the moments over the complementary interval.
    pub ln_rhs: Option<SymRatFunc>,
}

/// The operator, endpoints and polar part of each case.
pub fn case_data(case: MomentCase) -> (ThetaOp, Endpoint, Endpoint, SymRatFunc) {
    let zero = SymConst::zero();
    match case {
        MomentCase::Toy => (
            ThetaOp::theta(),
            Endpoint {
                point: qi(0),
                data: EndpointData::Values(vec![SymConst::int(1)]),
            },
            Endpoint {
                point: qi(1),
                data: EndpointData::Values(vec![SymConst::int(1)]),
            },
            SymRatFunc::zero(),
        ),
        MomentCase::Thm1 => {
            // lim (lambda-1) a* = 0, lim (lambda-1) theta a* = -3/(4 pi^2); c1 - 3 c0 = -6/pi^2
            let p1 = SymConst::monomial(q(-3, 4), 1, &[(Sym::Pi, -2)]);
            let polar = SymConst::monomial(qi(-6), 1, &[(Sym::Pi, -2)]);
            (
                l2_tilde(),
                Endpoint {
                    point: qi(0),
                    data: EndpointData::LambdaWeighted(vec![zero.clone(), zero]),
                },
                Endpoint {
                    point: qi(1),
                    data: EndpointData::PoleCancel(vec![SymConst::zero(), p1]),
                },
                SymRatFunc::term(&polar, &RatFunc::from_ints(&[1], &[0, 1])),
            )
        }
        MomentCase::Thm2 => {
            let [a0, a1, a2] = cm_endpoint_values();
            // 4 c0 - c1 = 7 a*(1) + 9 theta a*(1) - 45 theta^2 a*(1)
            let polar = a0
                .scale(&qi(7))
                .plus(&a1.scale(&qi(9)))
                .plus(&a2.scale(&qi(-45)));
            (
                l3_tilde(),
                Endpoint {
                    point: qi(0),
                    data: EndpointData::LambdaWeighted(vec![zero.clone(), zero.clone(), zero]),
                },
                Endpoint {
                    point: qi(1),
                    data: EndpointData::Values(vec![a0, a1, a2]),
                },
                SymRatFunc::term(&polar, &RatFunc::from_ints(&[1], &[0, 1])),
            )
        }
    }
}

/// Run a case end to end: boundary terms, h, and for the thm1 and thm2 cases the
/// right-hand side of L_n b = r(t).
pub fn run_case(case: MomentCase) -> Result<MomentCaseResult> {
    let (op, alpha, beta, minus) = case_data(case);
    let rhs = moment_rhs(&op, &alpha, &beta, &minus)?;
    let (p, dual) = op.dual();
    let ln_rhs = match case {
        MomentCase::Toy => None,
        MomentCase::Thm1 | MomentCase::Thm2 => {
            let n = if case == MomentCase::Thm1 { 2 } else { 3 };
            let ln = super::theta::ln(n)?;
            let sign = if dual == ln {
                qi(1)
            } else if dual == ln.neg() {
                qi(-1)
            } else {
                return Err(Error::Unsupported("dual operator is not +-L_n".into()));
            };
            // dual c = t^{-p} h_c and dual (b + c) = 0, so L_n b = -sign t^{-p} h_c
            let r = rhs
                .h
                .mul_rat(&RatFunc::poly(Poly::monomial(qi(1), 0)).shift(-p))
                .scale(&SymConst::rational(-sign));
            Some(r)
        }
    };
    Ok(MomentCaseResult {
        case: format!("{case:?}").to_lowercase(),
        operator: op.to_string_in("λ"),
        dual_operator: dual.to_string(),
        dual_prefactor: p,
        minus_part: minus,
        rhs,
        ln_rhs,
    })
}

/// Reference right-hand sides of the thm1 and thm2 cases.
pub fn reference_rhs(case: MomentCase) -> Option<SymRatFunc> {
    match case {
        MomentCase::Toy => None,
        MomentCase::Thm1 => Some(SymRatFunc::term(
            &SymConst::monomial(qi(6), 1, &[(Sym::Pi, -2)]),
            &RatFunc::from_ints(&[0, 1], &[1, -1]),
        )),
        MomentCase::Thm2 => Some(SymRatFunc::from_terms(&[
            (
                SymConst::monomial(q(-3, 10), 5, &[(Sym::Omega, 2), (Sym::Pi, -1)]),
                RatFunc::from_ints(&[0, -13, 251, 212], &[1, -3, 3, -1]),
            ),
            (
                SymConst::monomial(q(3, 5), 5, &[(Sym::Pi, -3), (Sym::Omega, -2)]),
                RatFunc::from_ints(&[0, 1], &[1, -1]),
            ),
        ])),
    }
}

// ---- randomized oracle for the moment transform ----

/// A small operator with a planted polynomial solution.
#[derive(Clone, Debug)]
pub struct PlantedCase {
    pub op: ThetaOp,
    pub solution: Poly<Rational>,
    pub alpha: Rational,
    pub beta: Rational,
}

/// Null space of a rational matrix (rows x cols), as basis vectors.
pub fn null_space(mut a: Vec<Vec<Rational>>, cols: usize) -> Vec<Vec<Rational>> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..a.len()).find(|&i| a[i][c] != 0) else {
            continue;
        };
        a.swap(r, p);
        let inv = Rational::from(a[r][c].recip_ref());
        for x in a[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..a.len() {
            if i != r && a[i][c] != 0 {
                let f = a[i][c].clone();
                for k in 0..cols {
                    let v = Rational::from(&f * &a[r][k]);
                    a[i][k] -= v;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == a.len() {
            break;
        }
    }
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![Rational::new(); cols];
            v[f] = qi(1);
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = Rational::from(-&a[row][f]);
            }
            v
        })
        .collect()
}

/// Draw an operator with max lambda-degree <= m, theta-degree n, annihilating
/// a random polynomial of degree <= d, and endpoints alpha < beta.
pub fn random_planted_case<R: Rng>(rng: &mut R, m: usize, n: usize, d: usize) -> PlantedCase {
    loop {
        let f = Poly::new((0..=d).map(|_| qi(rng.gen_range(-5..=5))).collect());
        if f.is_zero() {
            continue;
        }
        let cols = (m + 1) * (n + 1);
        let idx = |i: usize, j: usize| i * (n + 1) + j;
        let rows = m + d + 1;
        let mut a = vec![vec![Rational::new(); cols]; rows];
        for i in 0..=m {
            for j in 0..=n {
                for (k, fk) in f.coeffs().iter().enumerate() {
                    let w =
                        Rational::from(fk * Rational::from(rug::Integer::from(k).pow(j as u32)));
                    a[i + k][idx(i, j)] += w;
                }
            }
        }
        let basis = null_space(a, cols);
        if basis.is_empty() {
            continue;
        }
        let mut c = vec![Rational::new(); cols];
        for v in &basis {
            let w = qi(rng.gen_range(-5..=5));
            for k in 0..cols {
                c[k] += Rational::from(&w * &v[k]);
            }
        }
        let mut coeffs = std::collections::BTreeMap::new();
        for i in 0..=m {
            for j in 0..=n {
                if c[idx(i, j)] != 0 {
                    coeffs.insert((i as i64, j as u32), c[idx(i, j)].clone());
                }
            }
        }
        let op = ThetaOp::from_coeffs(&coeffs);
        if op.theta_degree() == 0 || op.is_zero() {
            continue;
        }
        let alpha = q(rng.gen_range(-6..=3), rng.gen_range(1..=3));
        let beta = Rational::from(&alpha + q(rng.gen_range(1..=6), rng.gen_range(1..=3)));
        return PlantedCase {
            op,
            solution: f,
            alpha,
            beta,
        };
    }
}

/// b_n = int_alpha^beta lambda^n F, n = 0..order, exactly.
pub fn polynomial_moments(
    f: &Poly<Rational>,
    alpha: &Rational,
    beta: &Rational,
    order: usize,
) -> QSeries<Rational> {
    let pw = |x: &Rational, e: u32| Rational::from(x.pow(e));
    let c = (0..=order)
        .map(|n| {
            let mut s = Rational::new();
            for (k, fk) in f.coeffs().iter().enumerate() {
                let e = (n + k + 1) as u32;
                s += Rational::from(fk * (pw(beta, e) - pw(alpha, e))) / Rational::from(e);
            }
            s
        })
        .collect();
    QSeries::from_coeffs(0, c)
}

/// theta^j F(lambda0), j = 0..n-1.
pub fn theta_values(f: &Poly<Rational>, l0: &Rational, n: usize) -> Vec<SymConst> {
    let mut g = f.clone();
    let mut out = Vec::new();
    for _ in 0..n {
        out.push(SymConst::rational(g.eval(l0)));
        g = Poly::new(
            g.coeffs()
                .iter()
                .enumerate()
                .map(|(k, c)| Rational::from(c * k as u64))
                .collect(),
        );
    }
    out
}

/// Result of one oracle comparison.
#[derive(Clone, Debug)]
pub struct OracleOutcome {
    pub equal: bool,
    pub first_mismatch: Option<i64>,
}

/// Compare the brute-force moment series against the closed-form h.
pub fn oracle_check(case: &PlantedCase, order: usize) -> Result<OracleOutcome> {
    let n = case.op.theta_degree();
    let m = case.op.t_range().map(|r| r.1).unwrap_or(0) as usize;
    let b = polynomial_moments(&case.solution, &case.alpha, &case.beta, order + m + 2);
    let series = case.op.inverted().apply(&b)?;
    // polar part read off from the brute-force series
    let mut minus = RatFunc::zero();
    for k in 1..=m as i64 {
        let c = series.coeff(-k).unwrap_or_default();
        if c != 0 {
            minus = minus.add(&RatFunc::poly(Poly::constant(c)).shift(-k));
        }
    }
    let alpha = Endpoint {
        point: case.alpha.clone(),
        data: EndpointData::Values(theta_values(&case.solution, &case.alpha, n)),
    };
    let beta = Endpoint {
        point: case.beta.clone(),
        data: EndpointData::Values(theta_values(&case.solution, &case.beta, n)),
    };
    let rhs = moment_rhs(
        &case.op,
        &alpha,
        &beta,
        &SymRatFunc::term(&SymConst::int(1), &minus),
    )?;
    let comps = rhs.h.components();
    let mut h = RatFunc::zero();
    for (c, r) in comps {
        let v = c
            .as_rational()
            .ok_or_else(|| Error::Unsupported("symbolic constant in oracle".into()))?;
        h = h.add(&r.scale(&v));
    }
    let hs = h.to_series(order)?;
    for k in -(m as i64)..=order as i64 {
        if series.coeff(k).unwrap_or_default() != hs.coeff(k).unwrap_or_default() {
            return Ok(OracleOutcome {
                equal: false,
                first_mismatch: Some(k),
            });
        }
    }
    Ok(OracleOutcome {
        equal: true,
        first_mismatch: None,
    })
}
