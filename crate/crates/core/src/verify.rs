//! The twelve acceptance criteria as report rows, shared by the `verify`
//! command and the acceptance test suite.

use crate::algebra::{q, qi, Ring};
use crate::analytics::cm::cm_constants;
use crate::analytics::cor2::cor2_pointwise_identity;
use crate::analytics::double::double_lvalue_merom;
use crate::analytics::headline::{
    cor2_rows, double_lvalue_holo, m_p2, m_p3, rv_rows, section7_rows, M_LINEAR4,
};
use crate::analytics::lvalues::lvalue_symbolic;
use crate::cterm::{constant_terms, mahler_direct};
use crate::error::Result;
use crate::forms::identities::{compare_series, identity_catalogue, identity_check};
use crate::forms::{FormExpr, FormRegistry};
use crate::numeric::{parse_float, Complex, QuadratureSpec};
use crate::operators::moments::{
    boundary_term, case_data, oracle_check, random_planted_case, MomentCase,
};
use crate::operators::parametrization::check_parametrization;
use crate::operators::{l2, l2_tilde, l3, l3_tilde, l4, RatFunc, SymRatFunc};
use crate::report::{CheckKind, CheckRow, Report};
use crate::series::QSeries;
use crate::symbolic::{Sym, SymConst, SymValues};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rug::{Float, Rational};
use serde::{Deserialize, Serialize};

/// Settings for a verification run.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct VerifyConfig {
    pub precision_bits: u32,
    /// Order of the exact q-expansion identities.
    pub series_order: usize,
    pub quadrature: QuadratureSpec,
    pub seed: u64,
    pub mahler_samples: u64,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            precision_bits: crate::DEFAULT_PRECISION,
            series_order: crate::DEFAULT_ORDER,
            quadrature: QuadratureSpec::for_precision(crate::DEFAULT_PRECISION),
            seed: 20240611,
            mahler_samples: 1 << 24,
        }
    }
}

pub const CRITERIA: [&str; 12] = [
    "constant terms and their operators",
    "exact q-expansion identities",
    "operator identities and parametrizations",
    "moment transform oracle",
    "boundary terms H_1",
    "CM constants",
    "double L-values of the meromorphic forms",
    "m(P4) against the meromorphic double L-values",
    "relation for L(g2, g1, 2, 1)",
    "five-variable conjecture",
    "pointwise double L-value identity",
    "direct torus sampling",
];

fn rows_or_error(name: &str, kind: CheckKind, r: Result<Vec<CheckRow>>) -> Vec<CheckRow> {
    r.unwrap_or_else(|e| vec![CheckRow::error(name, kind, e)])
}

/// Rows of criterion k (1-based).
pub fn criterion(k: usize, cfg: &VerifyConfig) -> Vec<CheckRow> {
    let name = CRITERIA
        .get(k.wrapping_sub(1))
        .copied()
        .unwrap_or("unknown criterion");
    let (kind, r) = match k {
        1 => (CheckKind::Exact, c1_constant_terms()),
        2 => (CheckKind::Exact, c2_identities(cfg.series_order)),
        3 => (CheckKind::Exact, c3_operators(cfg.seed)),
        4 => (CheckKind::Exact, c4_oracle(cfg.seed)),
        5 => (CheckKind::Exact, c5_boundary_terms()),
        6 => (CheckKind::Numeric, c6_cm(cfg)),
        7 => (CheckKind::Numeric, c7_merom(cfg)),
        8 => (CheckKind::Numeric, c8_cor2(cfg)),
        9 => (CheckKind::Numeric, c9_relation(cfg)),
        10 => (
            CheckKind::Numeric,
            rv_rows(cfg.precision_bits, &cfg.quadrature),
        ),
        11 => (CheckKind::Numeric, c11_pointwise(cfg)),
        12 => (CheckKind::Numeric, c12_sampling(cfg)),
        _ => (
            CheckKind::Exact,
            Err(crate::Error::InvalidArgument(format!(
                "criterion {k} out of 1..=12"
            ))),
        ),
    };
    rows_or_error(name, kind, r)
}

/// Every criterion, in order.
pub fn verify_all(cfg: &VerifyConfig) -> Report {
    let mut report = Report::new();
    for k in 1..=CRITERIA.len() {
        report.extend(criterion(k, cfg));
    }
    report
}

fn join<T: ToString>(v: &[T]) -> String {
    v.iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join(", ")
}

fn c1_constant_terms() -> Result<Vec<CheckRow>> {
    let printed: [(usize, [i64; 5]); 3] = [
        (2, [1, 3, 15, 93, 639]),
        (3, [1, 4, 28, 256, 2716]),
        (4, [1, 5, 45, 545, 7885]),
    ];
    let mut rows = Vec::new();
    for (n, want) in printed {
        let got = constant_terms(n, 4)?;
        let pass = got.iter().zip(want.iter()).all(|(a, b)| *a == *b);
        rows.push(CheckRow::exact(
            format!("constant terms of P_{n}"),
            join(&got),
            join(&want),
            pass,
        ));
    }
    for (n, op) in [(2usize, l2()), (3, l3()), (4, l4())] {
        let a = constant_terms(n, 12)?;
        let series = QSeries::from_coeffs(0, a.iter().map(|x| Rational::from(x.clone())).collect());
        let r = op.apply(&series)?;
        let top = 12 - op.t_range().map(|x| x.1).unwrap_or(0);
        let mut bad = None;
        for k in 0..=top {
            if r.coeff(k)? != 0 {
                bad = Some(k);
                break;
            }
        }
        rows.push(CheckRow::exact(
            format!("L{n} annihilates the constant-term series"),
            bad.map_or(format!("zero through t^{top}"), |k| {
                format!("nonzero at t^{k}")
            }),
            format!("zero through t^{top}"),
            bad.is_none(),
        ));
    }
    Ok(rows)
}

/// Leading coefficients printed for the named forms.
pub const PRINTED_EXPANSIONS: &[(&str, i64, &[i64])] = &[
    ("t2", 1, &[1, -4, 10]),
    ("f2", 0, &[1, 3, 3, 3]),
    ("t3", 1, &[-1, -6, -21]),
    ("f3", 0, &[1, -4, 4, -4]),
    ("g1w3", 0, &[1, 1, -5, 1, 11, -24]),
    ("g2w3", 1, &[-1, -4, -1, 16, 24, -4]),
    ("g1w4", 0, &[1, 2, -14, 38, -142, 252, -266]),
    ("g2w4", 1, &[-1, -7, -6, 5, 120, 498]),
    ("g3w4", 1, &[13, 316, 2328]),
    ("f15", 1, &[1, 1, -3, -3]),
    ("f1", 1, &[-1, -7, -1, 7, 0, -7, -2]),
    ("g1hat", 1, &[1, 5, 9, 11, 24]),
];

fn c2_identities(order: usize) -> Result<Vec<CheckRow>> {
    let reg = FormRegistry::global();
    let mut rows = Vec::new();
    for (id, lead, want) in PRINTED_EXPANSIONS {
        let s = reg.expansion(id, 12)?;
        let got: Vec<Rational> = (0..want.len())
            .map(|k| s.coeff(lead + k as i64))
            .collect::<Result<_>>()?;
        let below_zero = (0..*lead)
            .map(|k| s.coeff(k))
            .collect::<Result<Vec<_>>>()?
            .iter()
            .all(|c| *c == 0);
        let pass = below_zero && got.iter().zip(want.iter()).all(|(a, b)| *a == *b);
        rows.push(CheckRow::exact(
            format!("leading terms of {id} from q^{lead}"),
            join(&got),
            join(want),
            pass,
        ));
    }
    for id in identity_catalogue() {
        let r = identity_check(reg, id.name, &id.lhs, &id.rhs, order)?;
        let computed = match &r.first_mismatch {
            None => format!("equal through q^{order}"),
            Some(m) => format!(
                "mismatch at exponent {}/24: {} vs {}",
                m.exponent, m.lhs, m.rhs
            ),
        };
        rows.push(CheckRow::exact(
            format!("identity {}", id.name),
            computed,
            format!("equal through q^{order}"),
            r.equal,
        ));
    }
    Ok(rows)
}

fn c3_operators(seed: u64) -> Result<Vec<CheckRow>> {
    let mut rows = Vec::new();
    let (p2, d2) = l2_tilde().dual();
    rows.push(CheckRow::exact(
        "dual of L2~ is t^-2 L2",
        format!("t^{p2} [{d2}]"),
        format!("t^-2 [{}]", l2()),
        p2 == -2 && d2 == l2(),
    ));
    let mid2 = l2_tilde().scale_variable(&qi(9)).scale(&q(1, 9));
    rows.push(CheckRow::exact(
        "L2~(9t, theta)/9 = L2(t, theta)",
        &mid2,
        l2(),
        mid2 == l2(),
    ));
    let (p3, d3) = l3_tilde().dual();
    let neg = l3().neg();
    rows.push(CheckRow::exact(
        "dual of L3~ is -t^-2 L3",
        format!("t^{p3} [{d3}]"),
        format!("t^-2 [{neg}]"),
        p3 == -2 && d3 == neg,
    ));
    let mid3 = l3_tilde().scale_variable(&qi(64)).scale(&q(1, 64));
    rows.push(CheckRow::exact(
        "L3~(64t, theta)/64 = L3(t, theta)",
        &mid3,
        l3(),
        mid3 == l3(),
    ));
    let reg = FormRegistry::global();
    for n in [2, 3] {
        let r = check_parametrization(reg, n, 150, 3, seed)?;
        rows.push(CheckRow::exact(
            format!("modular parametrization of L{n} through q^150"),
            r.first_mismatch
                .as_ref()
                .map_or("equal".to_string(), |m| format!("{m:?}")),
            "equal",
            r.equal,
        ));
    }
    Ok(rows)
}

fn c4_oracle(seed: u64) -> Result<Vec<CheckRow>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut failures = Vec::new();
    for i in 0..50 {
        let m = 1 + i % 2;
        let n = 1 + (i / 2) % 3;
        let case = random_planted_case(&mut rng, m, n, 2);
        let out = oracle_check(&case, 24)?;
        if !out.equal {
            failures.push(format!(
                "case {i} ({}) at t^{:?}",
                case.op, out.first_mismatch
            ));
        }
    }
    Ok(vec![CheckRow::exact(
        "50 planted cases: moment transform equals brute-force moments",
        if failures.is_empty() {
            "50 of 50 agree".to_string()
        } else {
            failures.join("; ")
        },
        "50 of 50 agree",
        failures.is_empty(),
    )])
}

fn c5_boundary_terms() -> Result<Vec<CheckRow>> {
    let mut rows = Vec::new();
    let (op, _, beta, _) = case_data(MomentCase::Thm1);
    let h = boundary_term(&op, &beta)?;
    let want = SymRatFunc::term(
        &SymConst::monomial(qi(6), 1, &[(Sym::Pi, -2)]),
        &RatFunc::from_ints(&[1], &[1, -1]),
    );
    rows.push(CheckRow::exact(
        "H_1 for the weight 1 case",
        &h,
        &want,
        h.equals(&want),
    ));
    let (op, _, beta, _) = case_data(MomentCase::Thm2);
    let h = boundary_term(&op, &beta)?;
    let want = SymRatFunc::from_terms(&[
        (
            SymConst::monomial(q(3, 10), 5, &[(Sym::Omega, 2), (Sym::Pi, -1)]),
            RatFunc::from_ints(&[212, 251, -13], &[1, -3, 3, -1]),
        ),
        (
            SymConst::monomial(q(-3, 5), 5, &[(Sym::Pi, -3), (Sym::Omega, -2)]),
            RatFunc::from_ints(&[1], &[1, -1]),
        ),
    ]);
    rows.push(CheckRow::exact(
        "H_1 for the weight 2 case",
        &h,
        &want,
        h.equals(&want),
    ));
    Ok(rows)
}

fn c6_cm(cfg: &VerifyConfig) -> Result<Vec<CheckRow>> {
    let p = cfg.precision_bits;
    let c = cm_constants(p, &cfg.quadrature)?;
    let vals = SymValues::new(p)?;
    let closed = SymConst::monomial(q(-39, 10), 5, &[(Sym::Omega, 2), (Sym::Pi, -1)])
        .plus(&SymConst::monomial(
            q(-3, 5),
            5,
            &[(Sym::Pi, -3), (Sym::Omega, -2)],
        ))
        .eval(&vals);
    let pf = |s: &str| parse_float(s, p);
    let quarter = Float::with_val(p, 0.25);
    let fifth = Float::with_val(p, 1) / 5u32;
    let minus_six_over_pi2 = Float::with_val(p, -6) / Float::with_val(p, vals.pi.square_ref());
    Ok(vec![
        CheckRow::numeric("a*(1)", &c.a_star, &pf("0.1649669005300320")?, 1e-16),
        CheckRow::numeric(
            "theta a*(1)",
            &c.theta_a_star,
            &pf("-0.032993380106006")?,
            1e-15,
        ),
        CheckRow::numeric(
            "theta^2 a*(1)",
            &c.theta2_a_star,
            &pf("0.00330836512971504")?,
            1e-17,
        ),
        CheckRow::numeric("c0 (n = 2) by quadrature", &c.c0_n2.value, &quarter, 1e-10),
        CheckRow::numeric(
            "c1 - 3 c0 (n = 2) by quadrature",
            &c.c1_minus_3c0_n2.value,
            &minus_six_over_pi2,
            1e-10,
        ),
        CheckRow::numeric("c0 (n = 3) by quadrature", &c.c0_n3.value, &fifth, 1e-10),
        CheckRow::numeric(
            "c1 - 4 c0 by quadrature",
            &c.c1_minus_4c0.value,
            &pf("-0.708951451918989714")?,
            1e-15,
        ),
        CheckRow::numeric(
            "c1 - 4 c0 against its closed form in Omega",
            &c.c1_minus_4c0.value,
            &closed,
            1e-30,
        ),
        CheckRow::numeric(
            "c1 - 4 c0 termwise against quadrature",
            &c.c1_minus_4c0_series.value,
            &c.c1_minus_4c0.value,
            1e-30,
        ),
    ])
}

fn c7_merom(cfg: &VerifyConfig) -> Result<Vec<CheckRow>> {
    let reg = FormRegistry::global();
    let p = cfg.precision_bits;
    let l2 = double_lvalue_merom(reg, 2, p, &cfg.quadrature)?;
    let l3 = double_lvalue_merom(reg, 3, p, &cfg.quadrature)?;
    Ok(vec![
        CheckRow::numeric(
            "L(g2, g1, 3, 1) against the printed -0.44662442",
            &l2.value,
            &parse_float("-0.44662442", p)?,
            5e-9,
        ),
        CheckRow::numeric(
            "L(g3, g1, 3, 1) against the printed 8.5383217",
            &l3.value,
            &parse_float("8.5383217", p)?,
            5e-8,
        ),
    ])
}

fn c8_cor2(cfg: &VerifyConfig) -> Result<Vec<CheckRow>> {
    let reg = FormRegistry::global();
    let p = cfg.precision_bits;
    let l2 = double_lvalue_merom(reg, 2, p, &cfg.quadrature)?;
    let l3 = double_lvalue_merom(reg, 3, p, &cfg.quadrature)?;
    cor2_rows(&l2.value, &l3.value, p)
}

fn c9_relation(cfg: &VerifyConfig) -> Result<Vec<CheckRow>> {
    let p = cfg.precision_bits;
    let holo = double_lvalue_holo(p, &cfg.quadrature)?;
    let mut rows = section7_rows(p, cfg.series_order, Some(&holo), &cfg.quadrature)?;
    // The single L-values behind m(P2) and m(P3).
    let reg = FormRegistry::global();
    let g3 = lvalue_symbolic(reg, &FormExpr::form("g1w3"), 1)?;
    let g4 = lvalue_symbolic(reg, &FormExpr::form("g1w4"), 1)?;
    let neg = |s: SymConst| s.scale(&qi(-1));
    rows.push(CheckRow::exact(
        "m(P2) = -L(g1w3, 1)",
        neg(g3.clone()),
        m_p2(),
        neg(g3) == m_p2(),
    ));
    rows.push(CheckRow::exact(
        "m(P3) = -L(g1w4, 1)",
        neg(g4.clone()),
        m_p3(),
        neg(g4) == m_p3(),
    ));
    Ok(rows)
}

fn c11_pointwise(cfg: &VerifyConfig) -> Result<Vec<CheckRow>> {
    let p = cfg.precision_bits;
    let mut rows = Vec::new();
    for (im, order, tol) in [(1.0, 200, 1e-10), (2.0, 100, 1e-12)] {
        let r = cor2_pointwise_identity(&Complex::from_f64(p, 0.0, im), order, p, &cfg.quadrature)?;
        rows.push(CheckRow::residual(
            format!("pointwise double L-value identity at z0 = {im}i"),
            &r.residual,
            tol,
        ));
    }
    Ok(rows)
}

fn c12_sampling(cfg: &VerifyConfig) -> Result<Vec<CheckRow>> {
    let p = 128;
    let vals = SymValues::new(p)?;
    let targets = [
        (2usize, m_p2().scale(&q(1, 2)).eval(&vals)),
        (3, m_p3().scale(&q(1, 2)).eval(&vals)),
        (4, parse_float(M_LINEAR4, p)?),
    ];
    let mut rows = Vec::new();
    for (n, target) in targets {
        let est = mahler_direct(n, cfg.mahler_samples, cfg.seed.wrapping_add(n as u64))?;
        let tol = 3.0 * est.std_error;
        let mut row = CheckRow::numeric(
            format!("sampled m(1 + x1 + ... + x{n}) within 3 standard errors"),
            &Float::with_val(p, est.estimate),
            &target,
            tol,
        );
        row.computed = format!(
            "{:.12} (se {:.2e}, {} samples)",
            est.estimate, est.std_error, est.samples
        );
        rows.push(row);
    }
    Ok(rows)
}

/// Compare two exact series through `order`, for callers outside this module.
pub fn series_agree(a: &QSeries<Rational>, b: &QSeries<Rational>, order: usize) -> bool {
    compare_series(a, b, order).is_none()
}
