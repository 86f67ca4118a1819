//! Rational functions in one variable, with exact or symbolic numerators.

use super::poly::{format_poly, Poly};
use crate::error::{Error, Result};
use crate::series::QSeries;
use crate::symbolic::{Monomial, SymConst};
use rug::Rational;
use serde::Serialize;
use std::collections::BTreeMap;
use std::fmt;

/// num/den over Q, in lowest terms. The denominator is scaled to den(0) = 1
/// when den(0) != 0 and made monic otherwise.
#[derive(Clone, Debug, PartialEq)]
pub struct RatFunc {
    num: Poly<Rational>,
    den: Poly<Rational>,
}

impl RatFunc {
    pub fn new(num: Poly<Rational>, den: Poly<Rational>) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if num.is_zero() {
            return Ok(RatFunc {
                num,
                den: Poly::one(),
            });
        }
        let g = num.gcd(&den);
        let (mut n, _) = num.div_rem(&g);
        let (mut d, _) = den.div_rem(&g);
        let c0 = d.coeff(0);
        let s = if c0 != 0 {
            c0
        } else {
            d.lead().unwrap().clone()
        };
        let inv = Rational::from(s.recip_ref());
        n = n.scale(&inv);
        d = d.scale(&inv);
        Ok(RatFunc { num: n, den: d })
    }

    pub fn poly(p: Poly<Rational>) -> Self {
        RatFunc {
            num: p,
            den: Poly::one(),
        }
    }

    pub fn from_ints(num: &[i64], den: &[i64]) -> Self {
        RatFunc::new(Poly::from_ints(num), Poly::from_ints(den)).expect("nonzero denominator")
    }

    pub fn zero() -> Self {
        RatFunc::poly(Poly::zero())
    }

    pub fn num(&self) -> &Poly<Rational> {
        &self.num
    }

    pub fn den(&self) -> &Poly<Rational> {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn add(&self, o: &Self) -> Self {
        RatFunc::new(
            self.num.mul(&o.den).add(&o.num.mul(&self.den)),
            self.den.mul(&o.den),
        )
        .unwrap()
    }

    pub fn neg(&self) -> Self {
        RatFunc {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Self) -> Self {
        RatFunc::new(self.num.mul(&o.num), self.den.mul(&o.den)).unwrap()
    }

    pub fn scale(&self, c: &Rational) -> Self {
        RatFunc::new(self.num.scale(c), self.den.clone()).unwrap()
    }

    pub fn div(&self, o: &Self) -> Result<Self> {
        if o.is_zero() {
            return Err(Error::DivisionByZero);
        }
        RatFunc::new(self.num.mul(&o.den), self.den.mul(&o.num))
    }

    /// Multiply by t^k (k may be negative).
    pub fn shift(&self, k: i64) -> Self {
        if k >= 0 {
            RatFunc::new(self.num.shift(k as usize), self.den.clone()).unwrap()
        } else {
            RatFunc::new(self.num.clone(), self.den.shift((-k) as usize)).unwrap()
        }
    }

    pub fn eval(&self, t: &Rational) -> Result<Rational> {
        let d = self.den.eval(t);
        if d == 0 {
            return Err(Error::Pole(format!("rational function at {t}")));
        }
        Ok(self.num.eval(t) / d)
    }

    /// Order of the pole at t = 0 (0 if regular).
    pub fn pole_order_at_zero(&self) -> usize {
        self.den.coeffs().iter().position(|c| *c != 0).unwrap_or(0)
    }

    /// Laurent expansion at t = 0 through t^order.
    pub fn to_series(&self, order: usize) -> Result<QSeries<Rational>> {
        let k = self.pole_order_at_zero();
        let n = order + k + 1;
        let mut num: Vec<Rational> = self.num.coeffs().to_vec();
        num.resize(n.max(num.len()), Rational::new());
        let den: Vec<Rational> = self.den.coeffs()[k..].to_vec();
        let ns = QSeries::from_coeffs(0, num[..n].to_vec());
        let mut dv = den.clone();
        dv.resize(n.max(dv.len()), Rational::new());
        let ds = QSeries::from_coeffs(k as i64, dv[..n].to_vec());
        let s = ns.div(&ds)?;
        s.truncate_abs(order as i64)
    }

    /// Split into the principal part at 0 (negative powers) and the rest.
    pub fn laurent_split(&self) -> (RatFunc, RatFunc) {
        let k = self.pole_order_at_zero();
        if k == 0 {
            return (RatFunc::zero(), self.clone());
        }
        let s = self.to_series(0).expect("finite Laurent expansion");
        let mut minus = RatFunc::zero();
        for j in 1..=k as i64 {
            let c = s.coeff(-j).unwrap_or_default();
            if c != 0 {
                minus = minus.add(&RatFunc::poly(Poly::constant(c)).shift(-j));
            }
        }
        let plus = self.sub(&minus);
        (minus, plus)
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = format_poly(&self.num, "t");
        if self.den == Poly::one() {
            return write!(f, "{n}");
        }
        let d = format_poly(&self.den, "t");
        let n = if self.num.coeffs().iter().filter(|c| **c != 0).count() > 1 {
            format!("({n})")
        } else {
            n
        };
        write!(f, "{n}/({d})")
    }
}

impl Serialize for RatFunc {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// num/den with symbolic-constant numerator coefficients.
#[derive(Clone, Debug)]
pub struct SymRatFunc {
    pub num: Poly<SymConst>,
    pub den: Poly<Rational>,
}

impl SymRatFunc {
    pub fn zero() -> Self {
        SymRatFunc {
            num: Poly::zero(),
            den: Poly::one(),
        }
    }

    /// c * r.
    pub fn term(c: &SymConst, r: &RatFunc) -> Self {
        SymRatFunc {
            num: r.num().map(|x| c.scale(x)),
            den: r.den().clone(),
        }
    }

    pub fn from_terms(terms: &[(SymConst, RatFunc)]) -> Self {
        terms.iter().fold(SymRatFunc::zero(), |acc, (c, r)| {
            acc.add(&SymRatFunc::term(c, r))
        })
    }

    fn lift(p: &Poly<Rational>) -> Poly<SymConst> {
        p.map(|c| SymConst::rational(c.clone()))
    }

    pub fn add(&self, o: &Self) -> Self {
        if self.den == o.den {
            return SymRatFunc {
                num: self.num.add(&o.num),
                den: self.den.clone(),
            };
        }
        let g = self.den.gcd(&o.den);
        let (a, _) = self.den.div_rem(&g);
        let (b, _) = o.den.div_rem(&g);
        SymRatFunc {
            num: self
                .num
                .mul(&Self::lift(&b))
                .add(&o.num.mul(&Self::lift(&a))),
            den: a.mul(&o.den),
        }
    }

    pub fn neg(&self) -> Self {
        SymRatFunc {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn scale(&self, c: &SymConst) -> Self {
        SymRatFunc {
            num: self.num.scale(c),
            den: self.den.clone(),
        }
    }

    pub fn mul_rat(&self, r: &RatFunc) -> Self {
        SymRatFunc {
            num: self.num.mul(&Self::lift(r.num())),
            den: self.den.mul(r.den()),
        }
    }

    /// Exact equality as rational functions.
    pub fn equals(&self, o: &Self) -> bool {
        self.num.mul(&Self::lift(&o.den)) == o.num.mul(&Self::lift(&self.den))
    }

    /// Decompose as sum of monomial * RatFunc, one entry per monomial.
    pub fn components(&self) -> Vec<(SymConst, RatFunc)> {
        let mut by_mono: BTreeMap<Monomial, Vec<Rational>> = BTreeMap::new();
        let n = self.num.coeffs().len();
        for (k, c) in self.num.coeffs().iter().enumerate() {
            for (m, r) in c.terms() {
                let v = by_mono
                    .entry(m.clone())
                    .or_insert_with(|| vec![Rational::new(); n]);
                v[k] += r;
            }
        }
        by_mono
            .into_iter()
            .map(|(m, v)| {
                let unit = SymConst::from_monomial(m);
                (unit, RatFunc::new(Poly::new(v), self.den.clone()).unwrap())
            })
            .filter(|(_, r)| !r.is_zero())
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
}

impl fmt::Display for SymRatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let comps = self.components();
        if comps.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = comps.iter().map(|(c, r)| format!("{c}·[{r}]")).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl Serialize for SymRatFunc {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}
