use crate::algebra::{Field, Ring};
use crate::error::{Error, Result};
use crate::numeric::Complex;
use rug::{Float, Integer, Rational};
use std::fmt;

/// Exponent measured in units of 1/24.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Exponent(pub i64);

impl Exponent {
    pub fn integer(n: i64) -> Self {
        Exponent(24 * n)
    }

    pub fn from_rational(r: &Rational) -> Result<Self> {
        let x = Rational::from(r * 24u32);
        if *x.denom() != 1 {
            return Err(Error::InvalidArgument(format!(
                "exponent {r} is not a multiple of 1/24"
            )));
        }
        x.numer()
            .to_i64()
            .map(Exponent)
            .ok_or_else(|| Error::InvalidArgument(format!("exponent {r} too large")))
    }

    pub fn to_rational(self) -> Rational {
        Rational::from((self.0, 24))
    }

    pub fn is_integral(self) -> bool {
        self.0 % 24 == 0
    }

    pub fn as_integer(self) -> Option<i64> {
        if self.is_integral() {
            Some(self.0 / 24)
        } else {
            None
        }
    }
}

impl fmt::Display for Exponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_rational())
    }
}

/// Truncated series `q^lead * sum_{n=0}^{N} c_n q^n + O(q^{lead+N+1})`.
#[derive(Clone, Debug, PartialEq)]
pub struct QSeries<C> {
    lead: Exponent,
    coeffs: Vec<C>,
}

impl<C: Field> QSeries<C> {
    /// Build from a leading exponent and coefficients c_0..c_N (nonempty).
    pub fn new(lead: Exponent, coeffs: Vec<C>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::TruncationExhausted(
                "a series needs at least one coefficient".into(),
            ));
        }
        Ok(QSeries { lead, coeffs })
    }

    /// Series with integral leading exponent.
    pub fn from_coeffs(lead: i64, coeffs: Vec<C>) -> Self {
        assert!(
            !coeffs.is_empty(),
            "a series needs at least one coefficient"
        );
        QSeries {
            lead: Exponent::integer(lead),
            coeffs,
        }
    }

    /// The constant `c` known modulo q^{order+1}.
    pub fn constant(c: C, order: usize) -> Self {
        let z = c.zero_like();
        let mut v = vec![z; order + 1];
        v[0] = c;
        QSeries::from_coeffs(0, v)
    }

    /// The monomial q^k known modulo q^{k+order+1}.
    pub fn monomial(c: C, k: i64, order: usize) -> Self {
        let mut s = QSeries::constant(c, order);
        s.lead = Exponent::integer(k);
        s
    }

    pub fn lead(&self) -> Exponent {
        self.lead
    }

    pub fn lead_exp(&self) -> Rational {
        self.lead.to_rational()
    }

    /// Relative truncation order N.
    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// First exponent that is not known, in units of 1/24.
    pub fn precision(&self) -> Exponent {
        Exponent(self.lead.0 + 24 * self.coeffs.len() as i64)
    }

    pub fn coeffs(&self) -> &[C] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<C> {
        self.coeffs
    }

    fn zero_elem(&self) -> C {
        self.coeffs[0].zero_like()
    }

    /// Coefficient of q^e; an error beyond the known order.
    pub fn coeff_at(&self, e: Exponent) -> Result<C> {
        if e >= self.precision() {
            return Err(Error::BeyondTruncation {
                exponent: e.to_string(),
                known: self.precision().to_string(),
            });
        }
        let d = e.0 - self.lead.0;
        if d < 0 || d % 24 != 0 {
            return Ok(self.zero_elem());
        }
        Ok(self.coeffs[(d / 24) as usize].clone())
    }

    /// Coefficient of q^n for an integer exponent.
    pub fn coeff(&self, n: i64) -> Result<C> {
        self.coeff_at(Exponent::integer(n))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn map<D: Field>(&self, f: impl Fn(&C) -> D) -> QSeries<D> {
        QSeries {
            lead: self.lead,
            coeffs: self.coeffs.iter().map(f).collect(),
        }
    }

    /// Drop leading zero coefficients, raising the leading exponent.
    /// A series that is zero to its order keeps a single zero coefficient.
    pub fn normalized(&self) -> Self {
        let k = self.coeffs.iter().position(|c| !c.is_zero());
        match k {
            Some(0) => self.clone(),
            Some(k) => QSeries {
                lead: Exponent(self.lead.0 + 24 * k as i64),
                coeffs: self.coeffs[k..].to_vec(),
            },
            None => self.clone(),
        }
    }

    /// Valuation: exponent of the first nonzero coefficient.
    pub fn valuation(&self) -> Option<Exponent> {
        self.coeffs
            .iter()
            .position(|c| !c.is_zero())
            .map(|k| Exponent(self.lead.0 + 24 * k as i64))
    }

    /// Keep only exponents below `prec` (units of 1/24); error if this would
    /// require unknown coefficients.
    pub fn truncate_to(&self, prec: Exponent) -> Result<Self> {
        if prec > self.precision() {
            return Err(Error::TruncationExhausted(format!(
                "requested precision q^{prec} exceeds known precision q^{}",
                self.precision()
            )));
        }
        if prec <= self.lead {
            return Err(Error::TruncationExhausted(format!(
                "no coefficients below q^{prec}"
            )));
        }
        let d = prec.0 - self.lead.0;
        let n = d / 24 + i64::from(d % 24 != 0);
        Ok(QSeries {
            lead: self.lead,
            coeffs: self.coeffs[..n as usize].to_vec(),
        })
    }

    /// Truncate to integer exponents <= n (known modulo q^{n+1}).
    pub fn truncate_abs(&self, n: i64) -> Result<Self> {
        self.truncate_to(Exponent::integer(n + 1))
    }

    /// Re-express with a smaller leading exponent (adds explicit zeros in front).
    fn with_lead(&self, lead: Exponent) -> Self {
        debug_assert!(lead <= self.lead && (self.lead.0 - lead.0) % 24 == 0);
        let k = ((self.lead.0 - lead.0) / 24) as usize;
        if k == 0 {
            return self.clone();
        }
        let mut v = vec![self.zero_elem(); k];
        v.extend(self.coeffs.iter().cloned());
        QSeries { lead, coeffs: v }
    }

    fn check_compatible(&self, other: &Self) -> Result<()> {
        if (self.lead.0 - other.lead.0) % 24 != 0 {
            return Err(Error::IncompatibleExponents(
                self.lead.to_string(),
                other.lead.to_string(),
            ));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let lead = self.lead.min(other.lead);
        let prec = self.precision().min(other.precision());
        if prec <= lead {
            return Err(Error::TruncationExhausted(
                "sum has no known coefficients".into(),
            ));
        }
        let n = ((prec.0 - lead.0) / 24) as usize;
        let a = self.with_lead(lead);
        let b = other.with_lead(lead);
        let z = self.zero_elem();
        let coeffs = (0..n)
            .map(|i| {
                let x = a.coeffs.get(i).unwrap_or(&z);
                let y = b.coeffs.get(i).unwrap_or(&z);
                x.plus(y)
            })
            .collect();
        Ok(QSeries { lead, coeffs })
    }

    pub fn neg(&self) -> Self {
        self.map(|c| c.negated())
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &C) -> Self {
        self.map(|x| x.times(c))
    }

    /// Multiply by q^k (k in units of 1/24).
    pub fn shift(&self, k: Exponent) -> Self {
        QSeries {
            lead: Exponent(self.lead.0 + k.0),
            coeffs: self.coeffs.clone(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let n = self.coeffs.len().min(other.coeffs.len());
        let z = self.zero_elem();
        let mut out = vec![z; n];
        for (i, a) in self.coeffs.iter().take(n).enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().take(n - i).enumerate() {
                if b.is_zero() {
                    continue;
                }
                out[i + j].add_assign_ref(&a.times(b));
            }
        }
        QSeries {
            lead: Exponent(self.lead.0 + other.lead.0),
            coeffs: out,
        }
    }

    /// Multiplicative inverse. Leading zeros of `self` are stripped first.
    pub fn inverse(&self) -> Result<Self> {
        let a = self.normalized();
        let c0 = &a.coeffs[0];
        let inv0 = c0.inverse().ok_or(Error::DivisionByZeroSeries)?;
        let n = a.coeffs.len();
        let mut out: Vec<C> = Vec::with_capacity(n);
        out.push(inv0.clone());
        for k in 1..n {
            let mut acc = a.zero_elem();
            for j in 1..=k {
                if a.coeffs[j].is_zero() {
                    continue;
                }
                acc.add_assign_ref(&a.coeffs[j].times(&out[k - j]));
            }
            out.push(acc.times(&inv0).negated());
        }
        Ok(QSeries {
            lead: Exponent(-a.lead.0),
            coeffs: out,
        })
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        Ok(self.mul(&other.inverse()?))
    }

    pub fn pow(&self, n: i64) -> Result<Self> {
        let base = if n < 0 { self.inverse()? } else { self.clone() };
        let mut e = n.unsigned_abs();
        let one = self.coeffs[0].one_like();
        let mut acc = QSeries::constant(one, base.order());
        let mut b = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&b);
            }
            e >>= 1;
            if e > 0 {
                b = b.mul(&b);
            }
        }
        Ok(acc)
    }

    /// Replace q by q^d.
    pub fn dilate(&self, d: u32) -> Self {
        assert!(d >= 1);
        if d == 1 {
            return self.clone();
        }
        let d = d as usize;
        let z = self.zero_elem();
        let n = self.coeffs.len();
        let mut out = vec![z; (n - 1) * d + d];
        for (i, c) in self.coeffs.iter().enumerate() {
            out[i * d] = c.clone();
        }
        QSeries {
            lead: Exponent(self.lead.0 * d as i64),
            coeffs: out,
        }
    }

    /// q -> -q on a series with integral exponents.
    pub fn alternate_signs(&self) -> Result<Self> {
        let lead = self
            .lead
            .as_integer()
            .ok_or_else(|| Error::FractionalExponent(self.lead.to_string()))?;
        Ok(QSeries {
            lead: self.lead,
            coeffs: self
                .coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| {
                    if (lead + i as i64).rem_euclid(2) == 1 {
                        c.negated()
                    } else {
                        c.clone()
                    }
                })
                .collect(),
        })
    }

    /// D = q d/dq.
    pub fn derivative(&self) -> Self {
        let l = self.lead.to_rational();
        QSeries {
            lead: self.lead,
            coeffs: self
                .coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| {
                    let e = Rational::from(&l + i as u64);
                    c.times(&c.embed(&e))
                })
                .collect(),
        }
    }

    /// Compose `self` (a series in t with integral lead >= 0) with `inner` = t(q).
    pub fn substitute(&self, inner: &Self) -> Result<Self> {
        let outer_lead = self
            .lead
            .as_integer()
            .ok_or_else(|| Error::FractionalExponent(self.lead.to_string()))?;
        if outer_lead < 0 {
            return Err(Error::InvalidArgument(
                "outer series of a substitution must be a power series".into(),
            ));
        }
        let val = match inner.valuation() {
            Some(v) => v,
            None => {
                // inner is zero to its order: only the constant term survives
                let p = inner.precision().0 / 24;
                return if outer_lead == 0 && p >= 1 {
                    Ok(QSeries::constant(self.coeffs[0].clone(), (p - 1) as usize))
                } else {
                    Err(Error::InvalidSubstitution)
                };
            }
        };
        let vi = val.as_integer().ok_or(Error::InvalidSubstitution)?;
        if vi < 1 || !inner.lead.is_integral() {
            return Err(Error::InvalidSubstitution);
        }
        let inner = inner.normalized();
        // absolute precision of the result
        let from_inner = inner.precision().0 / 24 + (outer_lead.max(1) - 1) * vi;
        let from_outer = (outer_lead + self.coeffs.len() as i64) * vi;
        let prec = from_inner.min(from_outer);
        let n = prec as usize; // result has exponents 0..prec-1
        let z = self.zero_elem();
        let mut acc = vec![z.clone(); n];
        // power = inner^k as a plain coefficient vector from exponent 0, length n
        let inner_vec = {
            let mut v = vec![z.clone(); n];
            for (i, c) in inner.coeffs.iter().enumerate() {
                let e = vi as usize + i;
                if e < n {
                    v[e] = c.clone();
                }
            }
            v
        };
        let mut power = vec![z.clone(); n];
        if n > 0 {
            power[0] = self.coeffs[0].one_like();
        }
        let mul_trunc = |a: &[C], b: &[C]| -> Vec<C> {
            let mut out = vec![z.clone(); n];
            for (i, x) in a.iter().enumerate() {
                if x.is_zero() {
                    continue;
                }
                for (j, y) in b.iter().take(n - i).enumerate() {
                    if y.is_zero() {
                        continue;
                    }
                    out[i + j].add_assign_ref(&x.times(y));
                }
            }
            out
        };
        for _ in 0..outer_lead {
            power = mul_trunc(&power, &inner_vec);
        }
        for (k, c) in self.coeffs.iter().enumerate() {
            let start = (outer_lead + k as i64) * vi;
            if start as usize >= n {
                break;
            }
            if !c.is_zero() {
                for (a, p) in acc.iter_mut().zip(power.iter()) {
                    if !p.is_zero() {
                        a.add_assign_ref(&p.times(c));
                    }
                }
            }
            if k + 1 < self.coeffs.len() {
                power = mul_trunc(&power, &inner_vec);
            }
        }
        if acc.is_empty() {
            return Err(Error::TruncationExhausted(
                "substitution has no known coefficients".into(),
            ));
        }
        Ok(QSeries::from_coeffs(0, acc))
    }

    /// Numerical value at complex q (integral leading exponent only).
    pub fn eval(&self, q: &Complex) -> Result<Complex>
    where
        C: ToFloat,
    {
        let lead = self
            .lead
            .as_integer()
            .ok_or_else(|| Error::FractionalExponent(self.lead.to_string()))?;
        let prec = q.prec();
        let mut acc = Complex::zero(prec);
        for c in self.coeffs.iter().rev() {
            acc = &acc * q;
            acc.re += c.to_float(prec);
        }
        Ok(&acc * &q.powi(lead))
    }
}

/// Conversion of coefficients to floats for evaluation.
pub trait ToFloat {
    fn to_float(&self, prec: u32) -> Float;
}

impl ToFloat for Rational {
    fn to_float(&self, prec: u32) -> Float {
        Float::with_val(prec, self)
    }
}

impl ToFloat for Float {
    fn to_float(&self, prec: u32) -> Float {
        Float::with_val(prec, self)
    }
}

impl QSeries<Rational> {
    /// Integer-coefficient constructor.
    pub fn from_ints(lead: i64, coeffs: &[i64]) -> Self {
        QSeries::from_coeffs(lead, coeffs.iter().map(|&c| Rational::from(c)).collect())
    }

    pub fn to_float(&self, prec: u32) -> QSeries<Float> {
        self.map(|c| Float::with_val(prec, c))
    }

    /// Render as a polynomial in q, omitting zero terms and the O-term.
    pub fn to_poly_string(&self) -> String {
        let mut out = String::new();
        for (i, c) in self.coeffs.iter().enumerate() {
            if Ring::is_zero(c) {
                continue;
            }
            let e = Exponent(self.lead.0 + 24 * i as i64).to_rational();
            let neg = c.cmp0() == std::cmp::Ordering::Less;
            let mag = Rational::from(c.abs_ref());
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let is_one = mag == 1;
            let mono = if e == 0 {
                String::new()
            } else if e == 1 {
                "q".to_string()
            } else {
                format!(
                    "q^{}",
                    if *e.denom() == 1 {
                        e.numer().to_string()
                    } else {
                        format!("({e})")
                    }
                )
            };
            if mono.is_empty() {
                out.push_str(&mag.to_string());
            } else if is_one {
                out.push_str(&mono);
            } else {
                out.push_str(&format!("{mag}{mono}"));
            }
        }
        if out.is_empty() {
            out.push('0');
        }
        out
    }

    /// Integer coefficients, if all are integral.
    pub fn integer_coeffs(&self) -> Option<Vec<Integer>> {
        self.coeffs
            .iter()
            .map(|c| {
                if *c.denom() == 1 {
                    Some(c.numer().clone())
                } else {
                    None
                }
            })
            .collect()
    }
}

impl fmt::Display for QSeries<Rational> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} + O(q^{})", self.to_poly_string(), self.precision())
    }
}
