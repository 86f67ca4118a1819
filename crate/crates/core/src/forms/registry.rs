//! Named catalogue of the modular objects used throughout the crate.

use super::eisenstein::{DivisorSum, WeightFn};
use super::expr::FormExpr;
use crate::algebra::{q, qi, RatStr};
use crate::error::{Error, Result};
use crate::numeric::{Complex, DirichletChar};
use crate::series::QSeries;
use rug::Rational;
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, HashMap};
use std::sync::{OnceLock, RwLock};

/// How a registry entry is built.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FormRecipe {
    pub id: String,
    pub description: String,
    /// Weight (None for modular functions such as t).
    pub weight: Option<RatStr>,
    /// Has poles in the upper half-plane.
    pub meromorphic: bool,
    pub expansion: FormExpr,
    /// Alternative recipe for point evaluation; defaults to `expansion`.
    pub pointwise: Option<FormExpr>,
}

pub struct FormRegistry {
    recipes: BTreeMap<String, FormRecipe>,
    cache: RwLock<HashMap<String, QSeries<Rational>>>,
}

fn div_weight(terms: &[(u32, Rational)]) -> WeightFn {
    WeightFn::Divisibility(terms.iter().map(|(l, c)| (*l, RatStr(c.clone()))).collect())
}

fn chi3() -> WeightFn {
    WeightFn::Character(DirichletChar::chi_minus3())
}

impl FormRegistry {
    pub fn empty() -> Self {
        FormRegistry {
            recipes: BTreeMap::new(),
            cache: RwLock::new(HashMap::new()),
        }
    }

    /// Shared instance of the standard registry.
    pub fn global() -> &'static FormRegistry {
        static REG: OnceLock<FormRegistry> = OnceLock::new();
        REG.get_or_init(FormRegistry::standard)
    }

    pub fn insert(&mut self, recipe: FormRecipe) {
        self.recipes.insert(recipe.id.clone(), recipe);
    }

    pub fn ids(&self) -> Vec<String> {
        self.recipes.keys().cloned().collect()
    }

    pub fn recipe(&self, id: &str) -> Result<&FormRecipe> {
        self.recipes
            .get(id)
            .ok_or_else(|| Error::UnknownForm(id.to_string()))
    }

    pub fn contains(&self, id: &str) -> bool {
        self.recipes.contains_key(id)
    }

    /// Exact expansion of a registry entry through q^order (cached).
    pub fn expansion(&self, id: &str, order: usize) -> Result<QSeries<Rational>> {
        if let Some(s) = self.cache.read().expect("cache lock").get(id) {
            if s.precision() >= crate::series::Exponent::integer(order as i64 + 1) {
                return s.truncate_abs(order as i64);
            }
        }
        let recipe = self.recipe(id)?;
        let s = recipe.expansion.expand(self, order)?;
        self.cache
            .write()
            .expect("cache lock")
            .insert(id.to_string(), s.clone());
        Ok(s)
    }

    /// Value of a registry entry at z.
    pub fn value(&self, id: &str, z: &Complex, prec: u32) -> Result<Complex> {
        let recipe = self.recipe(id)?;
        recipe
            .pointwise
            .as_ref()
            .unwrap_or(&recipe.expansion)
            .eval(self, z, prec)
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(
            &self.recipes.values().collect::<Vec<_>>(),
        )?)
    }

    /// The standard catalogue.
    pub fn standard() -> Self {
        let mut r = FormRegistry::empty();
        let mut add = |id: &str,
                       desc: &str,
                       weight: Option<Rational>,
                       mero: bool,
                       exp: FormExpr,
                       pw: Option<FormExpr>| {
            r.insert(FormRecipe {
                id: id.into(),
                description: desc.into(),
                weight: weight.map(RatStr),
                meromorphic: mero,
                expansion: exp,
                pointwise: pw,
            })
        };
        let t2 = FormExpr::eta(&[(6, 8), (1, 4), (3, -4), (2, -8)]);
        let f2 = FormExpr::eta(&[(2, 6), (3, 1), (1, -3), (6, -2)]);
        let t3 = FormExpr::scaled(qi(-1), FormExpr::eta(&[(2, 6), (6, 6), (1, -6), (3, -6)]));
        let f3 = FormExpr::eta(&[(1, 4), (3, 4), (2, -2), (6, -2)]);
        add(
            "t2",
            "Hauptmodul eta(6z)^8 eta(z)^4 / (eta(3z)^4 eta(2z)^8)",
            None,
            false,
            t2.clone(),
            None,
        );
        add(
            "f2",
            "Weight 1 form eta(2z)^6 eta(3z) / (eta(z)^3 eta(6z)^2)",
            Some(qi(1)),
            false,
            f2.clone(),
            None,
        );
        add(
            "t3",
            "Hauptmodul -(eta(2z) eta(6z) / (eta(z) eta(3z)))^6",
            None,
            false,
            t3.clone(),
            None,
        );
        add(
            "f3",
            "Weight 2 form (eta(z) eta(3z))^4 / (eta(2z) eta(6z))^2",
            Some(qi(2)),
            false,
            f3.clone(),
            None,
        );

        let e3 = FormExpr::DivisorSum(DivisorSum::new(q(-1, 9), WeightFn::trivial(), chi3(), 2));
        let e3_pw = FormExpr::scaled(q(-1, 9), FormExpr::eta(&[(1, 9), (3, -3)]));
        add(
            "E3chi",
            "-1/9 + sum chi(n) n^2 q^{nm}",
            Some(qi(3)),
            false,
            e3,
            Some(e3_pw),
        );
        let e3t = FormExpr::DivisorSum(DivisorSum::new(qi(0), chi3(), WeightFn::trivial(), 2));
        add(
            "E3chi_tilde",
            "sum chi(m) n^2 q^{nm}",
            Some(qi(3)),
            false,
            e3t,
            Some(FormExpr::eta(&[(3, 9), (1, -3)])),
        );

        let dt2 = FormExpr::derivative(FormExpr::form("t2"));
        let g1w3 = FormExpr::shift_half(FormExpr::product(vec![
            FormExpr::rational_of_t(FormExpr::form("t2"), &[1], &[0, 1]),
            dt2.clone(),
            FormExpr::form("f2"),
        ]));
        let g2w3 = FormExpr::shift_half(FormExpr::product(vec![
            FormExpr::rational_of_t(FormExpr::form("t2"), &[1], &[1, -1]),
            dt2,
            FormExpr::form("f2"),
        ]));
        let e3f = FormExpr::form("E3chi");
        add(
            "g1w3",
            "(Dt/t f)(z + 1/2) for the weight 1 parametrization",
            Some(qi(3)),
            false,
            g1w3,
            Some(FormExpr::dilation_combination(
                &e3f,
                &[(1, 1), (-2, 2), (-8, 4)],
            )),
        );
        add(
            "g2w3",
            "(Dt/(1-t) f)(z + 1/2) for the weight 1 parametrization",
            Some(qi(3)),
            false,
            g2w3,
            Some(FormExpr::dilation_combination(
                &e3f,
                &[(-1, 1), (-7, 2), (8, 4)],
            )),
        );

        let e4 = FormExpr::DivisorSum(DivisorSum::new(
            q(1, 240),
            WeightFn::trivial(),
            WeightFn::trivial(),
            3,
        ));
        add(
            "E4",
            "1/240 + sum sigma_3(n) q^n",
            Some(qi(4)),
            false,
            e4,
            None,
        );
        let g1w4 = FormExpr::product(vec![
            FormExpr::rational_of_t(FormExpr::form("t3"), &[1], &[0, 1]),
            FormExpr::derivative(FormExpr::form("t3")),
            FormExpr::form("f3"),
        ]);
        let e4f = FormExpr::form("E4");
        add(
            "g1w4",
            "Dt/t f for the weight 2 parametrization",
            Some(qi(4)),
            false,
            g1w4,
            Some(FormExpr::dilation_combination(
                &e4f,
                &[(2, 1), (-32, 2), (-18, 3), (288, 6)],
            )),
        );
        add(
            "g2w4",
            "t/(1-t) g1 (poles where t = 1)",
            Some(qi(4)),
            true,
            FormExpr::product(vec![
                FormExpr::rational_of_t(FormExpr::form("t3"), &[0, 1], &[1, -1]),
                FormExpr::form("g1w4"),
            ]),
            None,
        );
        add(
            "g3w4",
            "t (212 t^2 + 251 t - 13)/(1-t)^3 g1 (poles where t = 1)",
            Some(qi(4)),
            true,
            FormExpr::product(vec![
                FormExpr::rational_of_t(FormExpr::form("t3"), &[0, -13, 251, 212], &[1, -3, 3, -1]),
                FormExpr::form("g1w4"),
            ]),
            None,
        );
        add(
            "f15",
            "CM form eta(3z)^3 eta(5z)^3 + eta(z)^3 eta(15z)^3",
            Some(qi(3)),
            false,
            FormExpr::linear(vec![
                (qi(1), FormExpr::eta(&[(3, 3), (5, 3)])),
                (qi(1), FormExpr::eta(&[(1, 3), (15, 3)])),
            ]),
            None,
        );

        let e1 = FormExpr::DivisorSum(DivisorSum::new(q(1, 6), chi3(), WeightFn::trivial(), 0));
        let e1_pw = FormExpr::linear(vec![
            (q(1, 6), FormExpr::eta(&[(1, 3), (3, -1)])),
            (q(3, 2), FormExpr::eta(&[(9, 3), (3, -1)])),
        ]);
        add(
            "E1",
            "1/6 + sum chi(m) q^{nm}",
            Some(qi(1)),
            false,
            e1,
            Some(e1_pw),
        );
        let g2 = FormExpr::DivisorSum(DivisorSum::new(
            q(-1, 24),
            WeightFn::trivial(),
            WeightFn::trivial(),
            1,
        ));
        add(
            "G2",
            "-1/24 + sum sigma_1(n) q^n (quasimodular)",
            Some(qi(2)),
            false,
            g2,
            None,
        );
        let e1f = FormExpr::form("E1");
        let f1 = FormExpr::DivisorSum(DivisorSum::new(
            qi(0),
            chi3(),
            div_weight(&[(1, qi(-1)), (2, qi(-7)), (4, qi(8))]),
            0,
        ));
        add(
            "f1",
            "sum a1(m1) a2(m2) q^{m1 m2}",
            Some(qi(1)),
            false,
            f1,
            Some(FormExpr::dilation_combination(
                &e1f,
                &[(-1, 1), (-7, 2), (8, 4)],
            )),
        );
        let b1 = div_weight(&[(1, qi(1)), (2, q(1, 2)), (4, q(-1, 2))]);
        let f2s7 = FormExpr::DivisorSum(DivisorSum::new(q(1, 6), b1.clone(), chi3(), 0));
        let f2s7_pw = FormExpr::linear(vec![
            (q(1, 2), FormExpr::eta(&[(4, 2), (12, 2), (2, -1), (6, -1)])),
            (q(1, 6), FormExpr::eta(&[(2, 6), (3, 1), (1, -3), (6, -2)])),
        ]);
        add(
            "f2sec7",
            "1/6 + sum b1(n1) chi(n2) q^{n1 n2}",
            Some(qi(1)),
            false,
            f2s7,
            Some(f2s7_pw),
        );
        let g1hat = FormExpr::DivisorSum(DivisorSum::new(qi(0), chi3(), b1, 2));
        let et = FormExpr::form("E3chi_tilde");
        add(
            "g1hat",
            "Atkin-Lehner image of g1w3 at level 12",
            Some(qi(3)),
            false,
            g1hat,
            Some(FormExpr::dilation_combination(
                &et,
                &[(1, 1), (2, 2), (-8, 4)],
            )),
        );
        let f2hat = FormExpr::DivisorSum(DivisorSum::new(
            q(3, 2),
            chi3(),
            div_weight(&[(1, qi(-1)), (2, qi(2)), (4, qi(8))]),
            0,
        ));
        let f2hat_pw = FormExpr::linear(vec![
            (q(1, 2), FormExpr::eta(&[(3, 2), (1, 2), (6, -1), (2, -1)])),
            (qi(1), FormExpr::eta(&[(6, 6), (4, 1), (12, -3), (2, -2)])),
        ]);
        add(
            "f2hat",
            "Atkin-Lehner image of f2sec7 at level 12",
            Some(qi(1)),
            false,
            f2hat,
            Some(f2hat_pw),
        );
        r
    }
}
