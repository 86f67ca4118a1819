//! Exact arithmetic with the transcendental constants that occur in closed
//! forms: rational combinations of monomials in pi, Omega_15, zeta(3),
//! L(chi_{-3}, 2), log 2 and square roots of integers.

use crate::algebra::{ExactRing, Ring};
use crate::error::Result;
use crate::numeric::special::{dirichlet_l, pi, zeta};
use crate::numeric::DirichletChar;
use rug::float::Constant;
use rug::{Float, Rational};
use serde::{Serialize, Serializer};
use std::collections::BTreeMap;
use std::fmt;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Sym {
    Pi,
    Omega,
    Zeta3,
    LChi3At2,
    Log2,
}

impl Sym {
    fn symbol(self) -> &'static str {
        match self {
            Sym::Pi => "π",
            Sym::Omega => "Ω",
            Sym::Zeta3 => "ζ(3)",
            Sym::LChi3At2 => "L(χ₋₃,2)",
            Sym::Log2 => "log2",
        }
    }
}

/// prod sym^e times sqrt(radical), radical squarefree.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial {
    pub exps: BTreeMap<Sym, i32>,
    pub radical: u32,
}

impl Monomial {
    pub fn one() -> Self {
        Monomial {
            exps: BTreeMap::new(),
            radical: 1,
        }
    }

    /// Product, returning the rational factor pulled out of the radicals.
    fn mul(&self, other: &Monomial) -> (Monomial, Rational) {
        let mut exps = self.exps.clone();
        for (s, e) in &other.exps {
            let v = exps.entry(*s).or_insert(0);
            *v += e;
            if *v == 0 {
                exps.remove(s);
            }
        }
        let (radical, factor) = squarefree_split(self.radical as u64 * other.radical as u64);
        (Monomial { exps, radical }, Rational::from(factor))
    }
}

/// n = factor^2 * radical with radical squarefree.
fn squarefree_split(mut n: u64) -> (u32, u64) {
    let mut factor = 1u64;
    let mut p = 2u64;
    let mut radical = 1u64;
    while p * p <= n {
        while n % (p * p) == 0 {
            n /= p * p;
            factor *= p;
        }
        if n % p == 0 {
            n /= p;
            radical *= p;
        }
        p += 1;
    }
    radical *= n;
    (radical as u32, factor)
}

/// A finite rational combination of monomials.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct SymConst {
    terms: BTreeMap<Monomial, Rational>,
}

impl SymConst {
    pub fn zero() -> Self {
        SymConst::default()
    }

    pub fn rational(r: Rational) -> Self {
        let mut s = SymConst::zero();
        if r != 0 {
            s.terms.insert(Monomial::one(), r);
        }
        s
    }

    pub fn int(n: i64) -> Self {
        Self::rational(Rational::from(n))
    }

    pub fn sym(s: Sym) -> Self {
        Self::sym_pow(s, 1)
    }

    pub fn sym_pow(s: Sym, e: i32) -> Self {
        let mut m = Monomial::one();
        if e != 0 {
            m.exps.insert(s, e);
        }
        SymConst {
            terms: [(m, Rational::from(1))].into_iter().collect(),
        }
    }

    pub fn sqrt(n: u32) -> Self {
        let (radical, factor) = squarefree_split(n as u64);
        let m = Monomial {
            exps: BTreeMap::new(),
            radical,
        };
        SymConst {
            terms: [(m, Rational::from(factor))].into_iter().collect(),
        }
    }

    /// c * sqrt(radical) * prod sym^e.
    pub fn monomial(c: Rational, radical: u32, syms: &[(Sym, i32)]) -> Self {
        let mut s = SymConst::rational(c).times(&SymConst::sqrt(radical));
        for &(sy, e) in syms {
            s = s.times(&SymConst::sym_pow(sy, e));
        }
        s
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn scale(&self, r: &Rational) -> Self {
        self.times(&SymConst::rational(r.clone()))
    }

    /// The rational value when no transcendental monomial occurs.
    pub fn as_rational(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::new()),
            1 => self.terms.get(&Monomial::one()).cloned(),
            _ => None,
        }
    }

    /// Inverse of a single monomial term.
    pub fn inverse_monomial(&self) -> Option<Self> {
        if self.terms.len() != 1 {
            return None;
        }
        let (m, c) = self.terms.iter().next()?;
        let exps = m.exps.iter().map(|(s, e)| (*s, -e)).collect();
        // 1/sqrt(r) = sqrt(r)/r
        let inv = Monomial {
            exps,
            radical: m.radical,
        };
        let coeff = Rational::from(c.recip_ref()) / Rational::from(m.radical);
        Some(SymConst {
            terms: [(inv, coeff)].into_iter().collect(),
        })
    }

    pub fn eval(&self, v: &SymValues) -> Float {
        let p = v.prec;
        let mut acc = Float::with_val(p, 0);
        for (m, c) in &self.terms {
            let mut x = Float::with_val(p, c);
            if m.radical != 1 {
                x *= Float::with_val(p, m.radical).sqrt();
            }
            for (s, e) in &m.exps {
                let base = v.get(*s);
                let pw = Float::with_val(p, rug::ops::Pow::pow(base, *e));
                x *= pw;
            }
            acc += x;
        }
        acc
    }
}

impl Ring for SymConst {
    fn zero_like(&self) -> Self {
        SymConst::zero()
    }
    fn one_like(&self) -> Self {
        SymConst::int(1)
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    fn plus(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            let v = out.terms.entry(m.clone()).or_default();
            *v += c;
            if *v == 0 {
                out.terms.remove(m);
            }
        }
        out
    }
    fn minus(&self, other: &Self) -> Self {
        self.plus(&other.negated())
    }
    fn times(&self, other: &Self) -> Self {
        let mut out = SymConst::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                let (m, f) = m1.mul(m2);
                let c = Rational::from(c1 * c2) * f;
                out = out.plus(&SymConst {
                    terms: [(m, c)].into_iter().collect(),
                });
            }
        }
        out
    }
    fn negated(&self) -> Self {
        SymConst {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), Rational::from(-c)))
                .collect(),
        }
    }
    fn embed(&self, r: &Rational) -> Self {
        SymConst::rational(r.clone())
    }
}

impl ExactRing for SymConst {
    fn zero() -> Self {
        SymConst::zero()
    }
    fn one() -> Self {
        SymConst::int(1)
    }
}

fn superscript(n: i32) -> String {
    const D: [char; 10] = ['⁰', '¹', '²', '³', '⁴', '⁵', '⁶', '⁷', '⁸', '⁹'];
    n.to_string()
        .chars()
        .map(|c| D[c.to_digit(10).unwrap() as usize])
        .collect()
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut num = Vec::new();
        let mut den = Vec::new();
        if self.radical != 1 {
            num.push(format!("√{}", self.radical));
        }
        for (s, e) in &self.exps {
            let (list, e) = if *e > 0 {
                (&mut num, *e)
            } else {
                (&mut den, -*e)
            };
            list.push(if e == 1 {
                s.symbol().to_string()
            } else {
                format!("{}{}", s.symbol(), superscript(e))
            });
        }
        let n = if num.is_empty() {
            "1".to_string()
        } else {
            num.join("·")
        };
        if den.is_empty() {
            write!(f, "{n}")
        } else {
            write!(f, "{n}/({})", den.join("·"))
        }
    }
}

impl fmt::Display for SymConst {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let neg = *c < 0;
            let a = Rational::from(c.abs_ref());
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            if *m == Monomial::one() {
                write!(f, "{a}")?;
            } else if a == 1 {
                write!(f, "{m}")?;
            } else {
                write!(f, "({a})·{m}")?;
            }
        }
        Ok(())
    }
}

impl Serialize for SymConst {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// Numerical values of the generators.
#[derive(Clone, Debug)]
pub struct SymValues {
    pub prec: u32,
    pub pi: Float,
    pub omega: Float,
    pub zeta3: Float,
    pub lchi3: Float,
    pub log2: Float,
}

impl SymValues {
    pub fn new(prec: u32) -> Result<Self> {
        Ok(SymValues {
            prec,
            pi: pi(prec),
            omega: crate::analytics::cm::chowla_selberg(prec)?,
            zeta3: zeta(3, prec),
            lchi3: dirichlet_l(&DirichletChar::chi_minus3(), 2, prec)?.value,
            log2: Float::with_val(prec, Constant::Log2),
        })
    }

    fn get(&self, s: Sym) -> &Float {
        match s {
            Sym::Pi => &self.pi,
            Sym::Omega => &self.omega,
            Sym::Zeta3 => &self.zeta3,
            Sym::LChi3At2 => &self.lchi3,
            Sym::Log2 => &self.log2,
        }
    }
}

impl SymConst {
    /// The monomial with coefficient one.
    pub fn from_monomial(m: Monomial) -> Self {
        SymConst {
            terms: [(m, Rational::from(1))].into_iter().collect(),
        }
    }
}
