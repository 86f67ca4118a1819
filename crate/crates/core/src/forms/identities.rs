//! Exact coefficientwise identity checks between form expressions.

use super::expr::FormExpr;
use super::registry::FormRegistry;
use crate::algebra::qi;
use crate::error::Result;
use crate::series::{Exponent, QSeries};
use rug::Rational;
use serde::Serialize;

#[derive(Clone, Debug, Serialize)]
pub struct Mismatch {
    /// Exponent in units of 1/24.
    pub exponent: String,
    pub lhs: String,
    pub rhs: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct IdentityReport {
    pub name: String,
    pub order: usize,
    pub equal: bool,
    pub first_mismatch: Option<Mismatch>,
}

/// Compare two expansions coefficientwise through q^order.
pub fn compare_series(
    a: &QSeries<Rational>,
    b: &QSeries<Rational>,
    order: usize,
) -> Option<Mismatch> {
    let start = a.lead().min(b.lead());
    let end = Exponent::integer(order as i64 + 1);
    let mut e = start;
    while e < end {
        let x = a.coeff_at(e).unwrap_or_default();
        let y = b.coeff_at(e).unwrap_or_default();
        if x != y {
            return Some(Mismatch {
                exponent: e.to_string(),
                lhs: x.to_string(),
                rhs: y.to_string(),
            });
        }
        e = Exponent(e.0 + 1);
    }
    None
}

/// Expand both sides and compare exactly.
pub fn identity_check(
    reg: &FormRegistry,
    name: &str,
    lhs: &FormExpr,
    rhs: &FormExpr,
    order: usize,
) -> Result<IdentityReport> {
    let a = lhs.expand(reg, order)?;
    let b = rhs.expand(reg, order)?;
    let first_mismatch = compare_series(&a, &b, order);
    Ok(IdentityReport {
        name: name.into(),
        order,
        equal: first_mismatch.is_none(),
        first_mismatch,
    })
}

/// A named identity between two expressions.
#[derive(Clone, Debug)]
pub struct NamedIdentity {
    pub name: &'static str,
    pub lhs: FormExpr,
    pub rhs: FormExpr,
}

fn f(id: &str) -> FormExpr {
    FormExpr::form(id)
}

/// Dilation coefficients of the G2 representation of f1 * f2hat.
pub const G2_COMBINATION: [(i64, i64, u32); 6] = [
    (-3, 2, 1),
    (-5, 1, 2),
    (19, 2, 3),
    (24, 1, 4),
    (-35, 1, 6),
    (8, 1, 12),
];

pub fn g2_combination() -> FormExpr {
    FormExpr::linear(
        G2_COMBINATION
            .iter()
            .map(|&(n, d, s)| (Rational::from((n, d)), FormExpr::dilate(s, f("G2"))))
            .collect(),
    )
}

/// The G2 constant term c is pinned by f1 * f2hat = sum w_k G2(d_k z) only if
/// sum w_k != 0. Returns the forced value, or None when every c works.
pub fn g2_constant_from_identity(reg: &FormRegistry) -> Result<Option<Rational>> {
    let prod = FormExpr::product(vec![f("f1"), f("f2hat")]).expand(reg, 0)?;
    let lhs0 = prod.coeff(0)?;
    let wsum: Rational = G2_COMBINATION
        .iter()
        .map(|&(n, d, _)| Rational::from((n, d)))
        .sum();
    if wsum == 0 {
        Ok(None)
    } else {
        Ok(Some(lhs0 / wsum))
    }
}

/// Every exact identity the crate certifies to finite order.
pub fn identity_catalogue() -> Vec<NamedIdentity> {
    let e3 = f("E3chi");
    let e4 = f("E4");
    let e1 = f("E1");
    let et = f("E3chi_tilde");
    vec![
        NamedIdentity {
            name: "g1w3 = E3chi(z) - 2 E3chi(2z) - 8 E3chi(4z)",
            lhs: f("g1w3"),
            rhs: FormExpr::dilation_combination(&e3, &[(1, 1), (-2, 2), (-8, 4)]),
        },
        NamedIdentity {
            name: "g2w3 = -E3chi(z) - 7 E3chi(2z) + 8 E3chi(4z)",
            lhs: f("g2w3"),
            rhs: FormExpr::dilation_combination(&e3, &[(-1, 1), (-7, 2), (8, 4)]),
        },
        NamedIdentity {
            name: "g1w4 = 2 E4(z) - 32 E4(2z) - 18 E4(3z) + 288 E4(6z)",
            lhs: f("g1w4"),
            rhs: FormExpr::dilation_combination(&e4, &[(2, 1), (-32, 2), (-18, 3), (288, 6)]),
        },
        NamedIdentity {
            name: "E3chi = -1/9 eta(z)^9 / eta(3z)^3",
            lhs: e3.clone(),
            rhs: FormExpr::scaled(Rational::from((-1, 9)), FormExpr::eta(&[(1, 9), (3, -3)])),
        },
        NamedIdentity {
            name: "E3chi_tilde = eta(3z)^9 / eta(z)^3",
            lhs: et.clone(),
            rhs: FormExpr::eta(&[(3, 9), (1, -3)]),
        },
        NamedIdentity {
            name: "f1 = -E1(z) - 7 E1(2z) + 8 E1(4z)",
            lhs: f("f1"),
            rhs: FormExpr::dilation_combination(&e1, &[(-1, 1), (-7, 2), (8, 4)]),
        },
        NamedIdentity {
            name: "f2 = E1(z) + 1/2 E1(2z) - 1/2 E1(4z)",
            lhs: f("f2sec7"),
            rhs: FormExpr::linear(vec![
                (qi(1), e1.clone()),
                (Rational::from((1, 2)), FormExpr::dilate(2, e1.clone())),
                (Rational::from((-1, 2)), FormExpr::dilate(4, e1.clone())),
            ]),
        },
        NamedIdentity {
            name: "f2 = 1/2 eta(4z)^2 eta(12z)^2/(eta(2z) eta(6z)) + 1/6 eta(2z)^6 eta(3z)/(eta(z)^3 eta(6z)^2)",
            lhs: f("f2sec7"),
            rhs: FormExpr::linear(vec![
                (Rational::from((1, 2)), FormExpr::eta(&[(4, 2), (12, 2), (2, -1), (6, -1)])),
                (Rational::from((1, 6)), FormExpr::eta(&[(2, 6), (3, 1), (1, -3), (6, -2)])),
            ]),
        },
        NamedIdentity {
            name: "f2hat = -E1(z) + 2 E1(2z) + 8 E1(4z)",
            lhs: f("f2hat"),
            rhs: FormExpr::dilation_combination(&e1, &[(-1, 1), (2, 2), (8, 4)]),
        },
        NamedIdentity {
            name: "f2hat = 1/2 eta(3z)^2 eta(z)^2/(eta(6z) eta(2z)) + eta(6z)^6 eta(4z)/(eta(12z)^3 eta(2z)^2)",
            lhs: f("f2hat"),
            rhs: FormExpr::linear(vec![
                (Rational::from((1, 2)), FormExpr::eta(&[(3, 2), (1, 2), (6, -1), (2, -1)])),
                (qi(1), FormExpr::eta(&[(6, 6), (4, 1), (12, -3), (2, -2)])),
            ]),
        },
        NamedIdentity {
            name: "E1 = 1/6 eta(z)^3/eta(3z) + 3/2 eta(9z)^3/eta(3z)",
            lhs: e1.clone(),
            rhs: FormExpr::linear(vec![
                (Rational::from((1, 6)), FormExpr::eta(&[(1, 3), (3, -1)])),
                (Rational::from((3, 2)), FormExpr::eta(&[(9, 3), (3, -1)])),
            ]),
        },
        NamedIdentity {
            name: "g1hat = E3chi_tilde(z) + 2 E3chi_tilde(2z) - 8 E3chi_tilde(4z)",
            lhs: f("g1hat"),
            rhs: FormExpr::dilation_combination(&et, &[(1, 1), (2, 2), (-8, 4)]),
        },
        NamedIdentity {
            name: "f1 f2hat = G2 combination",
            lhs: FormExpr::product(vec![f("f1"), f("f2hat")]),
            rhs: g2_combination(),
        },
        NamedIdentity {
            name: "(Dt)^2 = f^2 t^2 (1 - 4t)(1 - 16t) for the weight 2 parametrization",
            lhs: FormExpr::product(vec![FormExpr::derivative(f("t3")), FormExpr::derivative(f("t3"))]),
            rhs: FormExpr::product(vec![
                f("f3"),
                f("f3"),
                FormExpr::rational_of_t(f("t3"), &[0, 0, 1, -20, 64], &[1]),
            ]),
        },
        NamedIdentity {
            name: "Dt = f^2 t (1 - t)(1 - 9t) for the weight 1 parametrization",
            lhs: FormExpr::derivative(f("t2")),
            rhs: FormExpr::product(vec![
                f("f2"),
                f("f2"),
                FormExpr::rational_of_t(f("t2"), &[0, 1, -10, 9], &[1]),
            ]),
        },
    ]
}
