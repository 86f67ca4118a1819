//! Dedekind eta: exact q-expansions and modular point evaluation.

use crate::error::{Error, Result};
use crate::numeric::arith::dedekind_sum;
use crate::numeric::{check_precision, Complex, MIN_PRECISION};
use crate::series::{Exponent, QSeries};
use rug::float::Constant;
use rug::ops::Pow;
use rug::{Float, Integer, Rational};
use serde::{Deserialize, Serialize};

/// Product of rescaled eta functions `prod eta(d z)^k`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct EtaQuotient {
    pub factors: Vec<(u32, i32)>,
}

impl EtaQuotient {
    pub fn new(factors: &[(u32, i32)]) -> Self {
        EtaQuotient {
            factors: factors.to_vec(),
        }
    }

    pub fn weight(&self) -> Rational {
        Rational::from((self.factors.iter().map(|&(_, k)| k as i64).sum::<i64>(), 2))
    }

    /// Leading exponent sum d k / 24.
    pub fn lead(&self) -> Exponent {
        Exponent(self.factors.iter().map(|&(d, k)| d as i64 * k as i64).sum())
    }

    /// The image under z -> -1/(N z) up to the automorphy factor:
    /// eta(d z) becomes eta((N/d) z).
    pub fn atkin_lehner(&self, n: u32) -> Self {
        EtaQuotient {
            factors: self.factors.iter().map(|&(d, k)| (n / d, k)).collect(),
        }
    }
}

/// Coefficients of prod_{n>=1} (1 - q^n) up to q^order (pentagonal numbers).
pub fn euler_product_coeffs(order: usize) -> Vec<Integer> {
    let mut c = vec![Integer::new(); order + 1];
    c[0] = Integer::from(1);
    let mut k: i64 = 1;
    loop {
        let sign = if k % 2 == 0 { 1 } else { -1 };
        let e1 = (k * (3 * k - 1) / 2) as usize;
        let e2 = (k * (3 * k + 1) / 2) as usize;
        if e1 > order {
            break;
        }
        c[e1] += sign;
        if e2 <= order {
            c[e2] += sign;
        }
        k += 1;
    }
    c
}

/// k-th power of a series with constant term 1, via the recurrence
/// n b_n = sum_{j=1}^{n} ((k+1) j - n) a_j b_{n-j}. Exact for integer series.
pub fn power_unit_series(a: &[Integer], k: i64, order: usize) -> Vec<Integer> {
    assert!(a[0] == 1, "power_unit_series needs a_0 = 1");
    let nonzero: Vec<usize> = (1..a.len().min(order + 1)).filter(|&j| a[j] != 0).collect();
    let mut b = vec![Integer::new(); order + 1];
    b[0] = Integer::from(1);
    for n in 1..=order {
        let mut acc = Integer::new();
        for &j in &nonzero {
            if j > n {
                break;
            }
            let w = (k + 1) * j as i64 - n as i64;
            if w != 0 {
                acc += Integer::from(&a[j] * &b[n - j]) * w;
            }
        }
        let (quot, rem) = acc.div_rem(Integer::from(n));
        debug_assert!(rem == 0, "non-integral power coefficient");
        b[n] = quot;
    }
    b
}

fn mul_int_series(a: &[Integer], b: &[Integer], order: usize) -> Vec<Integer> {
    let mut out = vec![Integer::new(); order + 1];
    for (i, x) in a.iter().enumerate().take(order + 1) {
        if *x == 0 {
            continue;
        }
        for (j, y) in b.iter().enumerate().take(order + 1 - i) {
            if *y == 0 {
                continue;
            }
            out[i + j] += Integer::from(x * y);
        }
    }
    out
}

/// q^{1/24} prod (1 - q^n), known to relative order `order`.
pub fn eta_expansion(order: usize) -> QSeries<Rational> {
    let c = euler_product_coeffs(order);
    QSeries::new(Exponent(1), c.into_iter().map(Rational::from).collect()).expect("nonempty")
}

/// Exact expansion of an eta quotient to relative order `order`.
pub fn eta_quotient_expansion(eq: &EtaQuotient, order: usize) -> QSeries<Rational> {
    let mut acc = vec![Integer::new(); order + 1];
    acc[0] = Integer::from(1);
    for &(d, k) in &eq.factors {
        let d = d as usize;
        let inner_order = order / d;
        let base = euler_product_coeffs(inner_order);
        let powered = power_unit_series(&base, k as i64, inner_order);
        let mut dil = vec![Integer::new(); order + 1];
        for (i, c) in powered.into_iter().enumerate() {
            dil[i * d] = c;
        }
        acc = mul_int_series(&acc, &dil, order);
    }
    QSeries::new(eq.lead(), acc.into_iter().map(Rational::from).collect()).expect("nonempty")
}

/// Element of SL2(Z) taking a point to its reduced representative.
#[derive(Clone, Debug)]
pub struct Reduction {
    pub a: Integer,
    pub b: Integer,
    pub c: Integer,
    pub d: Integer,
    /// The reduced point (a tau + b)/(c tau + d).
    pub tau: Complex,
}

impl Reduction {
    /// c tau + d for the original point.
    pub fn cocycle(&self, tau: &Complex) -> Complex {
        let p = tau.prec();
        let c = Float::with_val(p, &self.c);
        let d = Float::with_val(p, &self.d);
        Complex::new(
            Float::with_val(p, &tau.re * &c) + d,
            Float::with_val(p, &tau.im * &c),
        )
    }
}

/// Reduce tau into the standard fundamental domain, tracking the matrix.
pub fn reduce(tau: &Complex) -> Result<Reduction> {
    if !tau.im.is_sign_positive() || tau.im.is_zero() {
        return Err(Error::NotInUpperHalfPlane);
    }
    let p = tau.prec();
    let (mut a, mut b, mut c, mut d) = (
        Integer::from(1),
        Integer::new(),
        Integer::new(),
        Integer::from(1),
    );
    let mut t = tau.clone();
    let one_minus = Float::with_val(p, 1) - (Float::with_val(p, 1) >> (p as i32 / 2));
    for _ in 0..100_000 {
        let n = Float::with_val(p, t.re.round_ref())
            .to_integer()
            .expect("finite");
        if n != 0 {
            t.re -= &n;
            a -= Integer::from(&n * &c);
            b -= Integer::from(&n * &d);
        }
        if t.norm_sqr() < one_minus {
            t = -t.recip();
            let (na, nb, nc, nd) = (Integer::from(-&c), Integer::from(-&d), a.clone(), b.clone());
            a = na;
            b = nb;
            c = nc;
            d = nd;
        } else {
            break;
        }
    }
    if c < 0 || (c == 0 && d < 0) {
        a = -a;
        b = -b;
        c = -c;
        d = -d;
    }
    // recompute the reduced point from the exact matrix for accuracy
    let num = Complex::new(
        Float::with_val(p, &tau.re * Float::with_val(p, &a)) + Float::with_val(p, &b),
        Float::with_val(p, &tau.im * Float::with_val(p, &a)),
    );
    let r = Reduction {
        a,
        b,
        c,
        d,
        tau: Complex::zero(p),
    };
    let den = r.cocycle(tau);
    let reduced = &num / &den;
    Ok(Reduction { tau: reduced, ..r })
}

/// eta(tau) = factor * exp(log_part); keeping the exponential separate avoids
/// overflow and underflow in quotients at points close to the real axis.
#[derive(Clone, Debug)]
pub struct EtaParts {
    pub factor: Complex,
    pub log_part: Complex,
}

/// prod (1 - q^n) as the pentagonal sum at |q| < 1.
fn euler_product_value(q: &Complex, prec: u32) -> Complex {
    let mut acc = Complex::one(prec);
    let target = Float::with_val(prec, 1) >> (prec as i32 + 8);
    let qa = q.abs();
    let mut k: i64 = 1;
    loop {
        let e1 = k * (3 * k - 1) / 2;
        let mag = Float::with_val(prec, (&qa).pow(e1 as u32));
        if mag < target {
            break;
        }
        let e2 = k * (3 * k + 1) / 2;
        let t = &q.powi(e1) + &q.powi(e2);
        if k % 2 == 0 {
            acc = &acc + &t;
        } else {
            acc = &acc - &t;
        }
        k += 1;
    }
    acc
}

/// Eta at tau, split into a bounded factor and a log part.
pub fn eta_parts(tau: &Complex, prec: u32) -> Result<EtaParts> {
    check_precision(prec, MIN_PRECISION)?;
    let wp = prec + 40;
    let tau_w = tau.with_prec(wp);
    let red = reduce(&tau_w)?;
    let pi = Float::with_val(wp, Constant::Pi);
    // log of q'^{1/24} = 2 pi i tau'/24
    let two_pi_i_over_24 = Complex::new(Float::new(wp), Float::with_val(wp, &pi * 2u32) / 24u32);
    let mut log_part = &two_pi_i_over_24 * &red.tau;
    let q = Complex::exp_2pi_i(&red.tau);
    let mut factor = euler_product_value(&q, wp);
    if red.c == 0 {
        // tau' = tau + b: eta(tau) = eta(tau') e^{-pi i b/12}
        let phase = Rational::from((red.b.clone(), Integer::from(12)));
        log_part = &log_part - &Complex::new(Float::new(wp), Float::with_val(wp, &pi * &phase));
    } else {
        // eta(tau') = exp(pi i ((a+d)/(12c) - s(d,c))) sqrt(-i(c tau + d)) eta(tau)
        let mut phase = Rational::from((
            Integer::from(&red.a + &red.d),
            Integer::from(&red.c * 12u32),
        ));
        phase -= dedekind_sum(&red.d, &red.c);
        // reduce modulo 2
        let two = Rational::from(2);
        let k = Rational::from(&phase / &two).floor();
        phase -= k * two;
        log_part = &log_part - &Complex::new(Float::new(wp), Float::with_val(wp, &pi * &phase));
        let cz = red.cocycle(&tau_w);
        let root = Complex::new(cz.im.clone(), Float::with_val(wp, -&cz.re)).sqrt(); // sqrt(-i (c tau + d))
        factor = &factor / &root;
    }
    Ok(EtaParts {
        factor: factor.with_prec(prec + 16),
        log_part: log_part.with_prec(prec + 16),
    })
}

/// Dedekind eta at tau in the upper half-plane.
pub fn eta_value(tau: &Complex, prec: u32) -> Result<Complex> {
    let parts = eta_parts(tau, prec)?;
    Ok((&parts.factor * &parts.log_part.exp()).with_prec(prec))
}

/// Value of an eta quotient at z.
pub fn eta_quotient_value(eq: &EtaQuotient, z: &Complex, prec: u32) -> Result<Complex> {
    let wp = prec + 16;
    let mut factor = Complex::one(wp);
    let mut log_sum = Complex::zero(wp);
    for &(d, k) in &eq.factors {
        let dz = z.scale(&Float::with_val(wp, d));
        let parts = eta_parts(&dz, wp)?;
        factor = &factor * &parts.factor.powi(k as i64);
        log_sum = &log_sum + &parts.log_part.scale(&Float::with_val(wp, k));
    }
    Ok((&factor * &log_sum.exp()).with_prec(prec))
}

/// D log of an eta quotient at z: sum k d E2(d z) / 24.
pub fn eta_quotient_log_derivative(eq: &EtaQuotient, z: &Complex, prec: u32) -> Result<Complex> {
    let wp = prec + 16;
    let mut acc = Complex::zero(wp);
    for &(d, k) in &eq.factors {
        let dz = z.scale(&Float::with_val(wp, d));
        let e2 = super::eisenstein::e2_value(&dz, wp)?;
        acc = &acc + &e2.scale(&Float::with_val(wp, d as i64 * k as i64));
    }
    Ok(acc.scale(&(Float::with_val(wp, 1) / 24u32)).with_prec(prec))
}
