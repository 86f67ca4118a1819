use mahler_core::analytics::cm::{chowla_selberg, cm_constants};
use mahler_core::analytics::cor2::cor2_pointwise_identity;
use mahler_core::analytics::double::{double_lvalue, PanelSpec};
use mahler_core::analytics::lvalues::{
    dirichlet_lvalue, f15_coefficients, fricke_constant_f15, lvalue_single, lvalue_symbolic,
};
use mahler_core::forms::{FormExpr, FormRegistry};
use mahler_core::numeric::{Complex, DirichletChar, QuadratureSpec};
use mahler_core::symbolic::{Sym, SymConst, SymValues};
use mahler_core::Error;
use rug::float::Constant;
use rug::ops::Pow;
use rug::{Float, Rational};

const P: u32 = 256;

fn reg() -> &'static FormRegistry {
    FormRegistry::global()
}

fn quad() -> QuadratureSpec {
    QuadratureSpec::for_precision(P)
}

fn pi(p: u32) -> Float {
    Float::with_val(p, Constant::Pi)
}

fn close(a: &Float, b: &Float, tol: f64) -> bool {
    Float::with_val(a.prec(), a - b).abs() < tol
}

/// Omega_15 straight from its gamma product.
fn omega_oracle(p: u32) -> Float {
    let chi = DirichletChar::chi_minus15();
    let mut prod = Float::with_val(p, 1);
    for j in 1..15 {
        let g = Float::with_val(p, Rational::from((j, 15))).gamma();
        match chi.value(j) {
            1 => prod *= g,
            -1 => prod /= g,
            _ => {}
        }
    }
    let root = prod.sqrt().sqrt();
    root / Float::with_val(p, pi(p) * 30u32).sqrt()
}

#[test]
fn period_of_the_cm_field() {
    let om = chowla_selberg(P).unwrap();
    assert!(om > 0);
    assert!(close(&om, &omega_oracle(P), 1e-70));
    let low = chowla_selberg(128).unwrap();
    let diff = Float::with_val(128, &low - Float::with_val(128, &om)).abs();
    assert!(diff < Float::with_val(128, 1) >> 120);
    let a_star =
        Float::with_val(P, om.square_ref()) * 3u32 * Float::with_val(P, 5).sqrt() / (pi(P) * 2u32);
    assert!(close(
        &a_star,
        &Float::with_val(P, Float::parse("0.1649669005300320").unwrap()),
        1e-16
    ));
}

#[test]
fn dirichlet_values() {
    let chi = DirichletChar::chi_minus3();
    let l = dirichlet_lvalue(&chi, 2, P).unwrap();
    assert!(l.error_bound > 0);
    // Direct sum over 10^6 terms: the tail of each period block is O(N^-3), far below 1e-10.
    let n_max = 1_000_000i64;
    let mut s = Float::with_val(128, 0);
    for n in 1..=n_max {
        match chi.value(n) {
            1 => s += Float::with_val(128, 1) / Float::with_val(128, n * n),
            -1 => s -= Float::with_val(128, 1) / Float::with_val(128, n * n),
            _ => {}
        }
    }
    assert!(close(&Float::with_val(128, &l.value), &s, 1e-10));
    let z2 = dirichlet_lvalue(&DirichletChar::trivial(), 2, P).unwrap();
    assert!(close(
        &z2.value,
        &(Float::with_val(P, pi(P).square_ref()) / 6u32),
        1e-70
    ));
    assert!(dirichlet_lvalue(&chi, 1, P).is_err());
}

#[test]
fn parity_closed_forms_match_numerics() {
    // L(chi_-3, 3) = 4 pi^3 / (81 sqrt3), L(chi_5, 2) = 4 pi^2 / (25 sqrt5)
    let l3 = dirichlet_lvalue(&DirichletChar::chi_minus3(), 3, P).unwrap();
    let want3 = pi(P).pow(3u32) * 4u32 / (Float::with_val(P, 3).sqrt() * 81u32);
    assert!(close(&l3.value, &want3, 1e-70));
    let l5 = dirichlet_lvalue(&DirichletChar::kronecker(5), 2, P).unwrap();
    let want5 =
        Float::with_val(P, pi(P).square_ref()) * 4u32 / (Float::with_val(P, 5).sqrt() * 25u32);
    assert!(close(&l5.value, &want5, 1e-70));
}

#[test]
fn single_lvalues_in_closed_form() {
    let f = FormExpr::form;
    let cases = [
        (
            "g1w4",
            1,
            SymConst::monomial(Rational::from(-7), 1, &[(Sym::Zeta3, 1), (Sym::Pi, -2)]),
        ),
        (
            "g1w3",
            1,
            SymConst::monomial(
                Rational::from((-3, 2)),
                3,
                &[(Sym::Pi, -1), (Sym::LChi3At2, 1)],
            ),
        ),
        (
            "f1",
            2,
            SymConst::monomial(
                Rational::from((-3, 8)),
                1,
                &[(Sym::Pi, 2), (Sym::LChi3At2, 1)],
            ),
        ),
    ];
    let vals = SymValues::new(P).unwrap();
    for (id, p, want) in cases {
        assert_eq!(
            lvalue_symbolic(reg(), &f(id), p).unwrap(),
            want,
            "L({id}, {p})"
        );
        let num = lvalue_single(reg(), id, p, P).unwrap();
        assert!(
            close(&num.value, &want.eval(&vals), 1e-70),
            "L({id}, {p}) numerically"
        );
    }
    assert!(matches!(
        lvalue_symbolic(reg(), &f("E4"), 4),
        Err(Error::Pole(_))
    ));
}

/// The regularized antiderivative -2 pi s a0 + sum a_n/n e^{-2 pi n s} of g1w4
/// tends to L(g1w4, 1) as s -> 0.
#[test]
fn log_antiderivative_limit_of_g1w4() {
    let p = 128;
    let g = reg().expansion("g1w4", 3000).unwrap();
    let two_pi_s = pi(p) * 2u32 / 40u32;
    let mut acc = Float::with_val(p, &two_pi_s * Float::with_val(p, g.coeff(0).unwrap())) * -1i32;
    for n in 1..=3000i64 {
        let c = g.coeff(n).unwrap();
        if c != 0 {
            let e = (-Float::with_val(p, &two_pi_s * n)).exp();
            acc += e * Float::with_val(p, Rational::from(&c / n));
        }
    }
    let l = lvalue_single(reg(), "g1w4", 1, p).unwrap();
    assert!(close(&acc, &l.value, 1e-12), "{acc} vs {}", l.value);
}

#[test]
fn double_lvalue_vanishes_for_nonpositive_s2() {
    for s2 in [0, -1] {
        let (r, _) = double_lvalue(
            reg(),
            "g2w3",
            "g1w3",
            2,
            s2,
            P,
            &quad(),
            &PanelSpec::default(),
        )
        .unwrap();
        assert!(r.value.is_zero());
    }
}

#[test]
fn holomorphic_double_lvalue_is_stable_under_node_doubling() {
    let base = PanelSpec::default();
    let (a, _) = double_lvalue(reg(), "g2w3", "g1w3", 2, 1, P, &quad(), &base).unwrap();
    let fine = PanelSpec {
        nodes: 2 * base.nodes,
        ..base
    };
    let (b, _) = double_lvalue(reg(), "g2w3", "g1w3", 2, 1, P, &quad(), &fine).unwrap();
    let diff = Float::with_val(P, &a.value - &b.value).abs();
    assert!(
        diff <= Float::with_val(P, &a.error_bound + &b.error_bound),
        "diff {diff}"
    );
    let vals = SymValues::new(P).unwrap();
    let closed = SymConst::monomial(
        Rational::from((3, 16)),
        3,
        &[(Sym::Pi, 1), (Sym::LChi3At2, 1)],
    )
    .eval(&vals)
        - Float::with_val(P, &vals.zeta3) * 7u32 / 6u32;
    assert!(close(&a.value, &closed, 1e-10));
}

#[test]
fn inner_form_is_negligible_near_the_cusp_zero() {
    let at = |s: f64| {
        reg()
            .value("g2w3", &Complex::from_f64(P, 0.0, s), P)
            .unwrap()
            .abs()
    };
    let (a, b, c) = (at(0.01), at(0.02), at(0.05));
    assert!(a < 1e-15, "|g2w3(0.01 i)| = {a}");
    assert!(a < b && b < c);
}

#[test]
fn meromorphic_forms_decay_like_exp_minus_two_pi_s() {
    for id in ["g2w4", "g3w4"] {
        for k in 0..=10 {
            let s = 1.0 + 0.5 * k as f64;
            let v = reg()
                .value(id, &Complex::from_f64(P, 0.0, s), P)
                .unwrap()
                .abs();
            let scaled = v * Float::with_val(P, 2.0 * std::f64::consts::PI * s).exp();
            assert!(scaled < 40, "{id} at {s}i: {scaled}");
        }
    }
}

#[test]
fn pointwise_identity_converges_with_order() {
    let z = Complex::from_f64(P, 0.0, 1.0);
    let r20 = cor2_pointwise_identity(&z, 20, P, &quad()).unwrap();
    let r40 = cor2_pointwise_identity(&z, 40, P, &quad()).unwrap();
    assert!(
        r40.residual < r20.residual,
        "{} !< {}",
        r40.residual,
        r20.residual
    );
    let r = cor2_pointwise_identity(&Complex::from_f64(P, 0.0, 2.0), 100, P, &quad()).unwrap();
    assert!(r.residual < 1e-12);
    assert!(cor2_pointwise_identity(&Complex::from_f64(P, 0.0, 0.5), 40, P, &quad()).is_err());
}

#[test]
fn cm_constants_closed_forms() {
    let c = cm_constants(P, &quad()).unwrap();
    let vals = SymValues::new(P).unwrap();
    let theta = SymConst::monomial(
        Rational::from((-3, 10)),
        5,
        &[(Sym::Omega, 2), (Sym::Pi, -1)],
    )
    .eval(&vals);
    assert!(close(&c.theta_a_star, &theta, 1e-70));
    assert!(close(&c.c0_n3.value, &c.c0_n3_series.value, 1e-30));
    assert!(close(&c.c0_n2.value, &Float::with_val(P, 0.25), 1e-30));
    assert!(c.c1_minus_4c0.error_bound < 1e-30);
}

#[test]
fn f15_coefficients_match_the_eta_product() {
    let a = f15_coefficients(300);
    let s = reg().expansion("f15", 300).unwrap();
    for (n, c) in a.iter().enumerate() {
        assert_eq!(s.coeff(n as i64).unwrap(), *c, "a_{n}");
    }
}

#[test]
fn fricke_multiplier_of_f15() {
    let fit = fricke_constant_f15(reg(), 20, P).unwrap();
    let want = Float::with_val(P, 15).sqrt() * 15u32;
    assert!(Float::with_val(P, fit.re.abs_ref()) < 1e-60);
    assert!(close(&fit.im, &want, 1e-60));
    assert!(fit.spread < 1e-20);
}

#[test]
fn quadrature_tolerance_floor() {
    let mut q = quad();
    q.tol_bits = 10_000;
    assert_eq!(q.tolerance(P), Float::with_val(P, 1) >> (P - 16) as i32);
}

#[test]
fn weight_four_forms_are_bounded_towards_the_cusp_zero() {
    for id in ["g1w4", "g2w4", "g3w4"] {
        for k in 0..=15 {
            let s = 10f64.powf(-3.0 + 0.2 * k as f64);
            let v = reg().value(id, &Complex::from_f64(128, 0.0, s), 128).unwrap().abs();
            assert!(v < 100, "|{id}({s} i)| = {v}");
        }
    }
}
