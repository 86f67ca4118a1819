//! LaTeX rendering of exact constants and rational functions.

use crate::operators::{Poly, RatFunc, SymRatFunc};
use crate::symbolic::{Monomial, Sym, SymConst};
use rug::Rational;

pub trait ToLatex {
    fn to_latex(&self) -> String;
}

fn sym_latex(s: Sym) -> &'static str {
    match s {
        Sym::Pi => r"\pi",
        Sym::Omega => r"\Omega",
        Sym::Zeta3 => r"\zeta(3)",
        Sym::LChi3At2 => r"L(\chi_{-3},2)",
        Sym::Log2 => r"\log 2",
    }
}

fn power(base: &str, e: i32) -> String {
    if e == 1 {
        base.to_string()
    } else {
        format!("{base}^{{{e}}}")
    }
}

/// Numerator and denominator factors of c * m, sign stripped.
fn monomial_parts(c: &Rational, m: &Monomial) -> (Vec<String>, Vec<String>) {
    let mut num = Vec::new();
    let mut den = Vec::new();
    let (n, d) = (c.numer().clone().abs(), c.denom().clone());
    if n != 1 {
        num.push(n.to_string());
    }
    if d != 1 {
        den.push(d.to_string());
    }
    if m.radical != 1 {
        num.push(format!(r"\sqrt{{{}}}", m.radical));
    }
    for (s, e) in &m.exps {
        if *e > 0 {
            num.push(power(sym_latex(*s), *e));
        } else {
            den.push(power(sym_latex(*s), -*e));
        }
    }
    (num, den)
}

fn term_latex(c: &Rational, m: &Monomial) -> String {
    let (num, den) = monomial_parts(c, m);
    let n = if num.is_empty() {
        "1".to_string()
    } else {
        num.join(" ")
    };
    if den.is_empty() {
        n
    } else {
        format!(r"\frac{{{n}}}{{{}}}", den.join(" "))
    }
}

fn join_signed(terms: Vec<(bool, String)>) -> String {
    if terms.is_empty() {
        return "0".into();
    }
    let mut out = String::new();
    for (i, (neg, body)) in terms.into_iter().enumerate() {
        match (i, neg) {
            (0, true) => out.push('-'),
            (0, false) => {}
            (_, true) => out.push_str(" - "),
            (_, false) => out.push_str(" + "),
        }
        out.push_str(&body);
    }
    out
}

impl ToLatex for SymConst {
    fn to_latex(&self) -> String {
        join_signed(
            self.terms()
                .map(|(m, c)| (*c < 0, term_latex(c, m)))
                .collect(),
        )
    }
}

fn var_power(k: usize) -> String {
    match k {
        0 => String::new(),
        1 => "t".into(),
        _ => format!("t^{{{k}}}"),
    }
}

fn rational_poly_latex(p: &Poly<Rational>) -> String {
    let terms = p
        .coeffs()
        .iter()
        .enumerate()
        .rev()
        .filter(|(_, c)| **c != 0)
        .map(|(k, c)| {
            let a = Rational::from(c.abs_ref());
            let coef = if a == 1 && k > 0 {
                String::new()
            } else if *a.denom() == 1 {
                a.to_string()
            } else {
                format!(r"\frac{{{}}}{{{}}}", a.numer(), a.denom())
            };
            (*c < 0, format!("{coef}{}", var_power(k)))
        })
        .collect();
    join_signed(terms)
}

fn frac(num: String, den: &Poly<Rational>) -> String {
    if *den == Poly::one() {
        num
    } else {
        format!(r"\frac{{{num}}}{{{}}}", rational_poly_latex(den))
    }
}

impl ToLatex for RatFunc {
    fn to_latex(&self) -> String {
        frac(rational_poly_latex(self.num()), self.den())
    }
}

impl ToLatex for SymRatFunc {
    /// One summand per transcendental unit, each unit times a rational function.
    fn to_latex(&self) -> String {
        let comps = self.components();
        if comps.is_empty() {
            return "0".into();
        }
        comps
            .iter()
            .map(|(unit, r)| {
                let u = unit.to_latex();
                let body = r.to_latex();
                if u == "1" {
                    body
                } else {
                    format!(r"{u} \left({body}\right)")
                }
            })
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::q;

    #[test]
    fn constants_and_functions() {
        let c = SymConst::monomial(q(-3, 5), 5, &[(Sym::Pi, -3), (Sym::Omega, -2)]);
        assert_eq!(c.to_latex(), r"-\frac{3 \sqrt{5}}{5 \pi^{3} \Omega^{2}}");
        let r = RatFunc::from_ints(&[0, 6], &[1, -1]);
        assert_eq!(r.to_latex(), r"\frac{6t}{-t + 1}");
        let h = SymRatFunc::term(
            &SymConst::monomial(q(6, 1), 1, &[(Sym::Pi, -2)]),
            &RatFunc::from_ints(&[1], &[1, -1]),
        );
        assert_eq!(
            h.to_latex(),
            r"\frac{1}{\pi^{2}} \left(\frac{6}{-t + 1}\right)"
        );
        assert_eq!(SymConst::zero().to_latex(), "0");
    }
}
