use mahler_core::forms::dt::{dt2_point, dt3_point};
use mahler_core::forms::identities::{
    g2_constant_from_identity, identity_catalogue, identity_check,
};
use mahler_core::forms::*;
use mahler_core::numeric::Complex;
use mahler_core::series::{Exponent, QSeries};
use rug::{Float, Rational};

fn reg() -> &'static FormRegistry {
    FormRegistry::global()
}

fn ints(s: &QSeries<Rational>, n: usize) -> Vec<i64> {
    s.coeffs()[..n]
        .iter()
        .map(|c| c.numer().to_i64().unwrap() * if *c.denom() == 1 { 1 } else { panic!() })
        .collect()
}

#[test]
fn eta_pentagonal() {
    let e = eta_expansion(12);
    assert_eq!(e.lead(), Exponent(1));
    assert_eq!(ints(&e, 13), vec![1, -1, -1, 0, 0, 1, 0, 1, 0, 0, 0, 0, -1]);
}

#[test]
fn printed_expansions() {
    let cases: &[(&str, i64, &[i64])] = &[
        ("t3", 1, &[-1, -6, -21]),
        ("f3", 0, &[1, -4, 4, -4]),
        ("t2", 1, &[1, -4, 10]),
        ("f2", 0, &[1, 3, 3, 3]),
        ("f15", 1, &[1, 1, -3, -3]),
        ("g1w4", 0, &[1, 2, -14, 38, -142, 252, -266]),
        ("g2w4", 1, &[-1, -7, -6, 5, 120, 498]),
        ("g3w4", 1, &[13, 316, 2328]),
        ("g1w3", 0, &[1, 1, -5, 1, 11, -24]),
        ("g2w3", 1, &[-1, -4, -1, 16, 24, -4]),
        ("g1hat", 1, &[1, 5, 9, 11, 24]),
        ("E3chi_tilde", 1, &[1, 3, 9, 13]),
        ("f1", 1, &[-1, -7, -1, 7, 0, -7, -2]),
    ];
    for (id, lead, want) in cases {
        let s = reg().expansion(id, 12).unwrap().normalized();
        assert_eq!(s.lead(), Exponent::integer(*lead), "{id}");
        assert_eq!(&ints(&s, want.len()), want, "{id}");
    }
    let e3 = reg().expansion("E3chi", 4).unwrap();
    assert_eq!(e3.coeff(0).unwrap(), Rational::from((-1, 9)));
    assert_eq!(e3.coeff(2).unwrap(), -3);
    assert_eq!(
        reg().expansion("E4", 3).unwrap().coeff(0).unwrap(),
        Rational::from((1, 240))
    );
    let f2hat = reg().expansion("f2hat", 6).unwrap();
    assert_eq!(f2hat.coeff(0).unwrap(), Rational::from((3, 2)));
    let f2 = reg().expansion("f2sec7", 7).unwrap();
    let want = [
        (1, 6),
        (1, 1),
        (1, 2),
        (1, 1),
        (1, 2),
        (0, 1),
        (1, 2),
        (2, 1),
    ];
    for (k, w) in want.iter().enumerate() {
        assert_eq!(
            f2.coeff(k as i64).unwrap(),
            Rational::from(*w),
            "f2sec7 q^{k}"
        );
    }
}

#[test]
fn catalogue_holds() {
    for id in identity_catalogue() {
        let r = identity_check(reg(), id.name, &id.lhs, &id.rhs, 200).unwrap();
        assert!(r.equal, "{}: {:?}", id.name, r.first_mismatch);
    }
    assert!(g2_constant_from_identity(reg()).unwrap().is_none());
}

fn c(re: f64, im: f64) -> Complex {
    Complex::from_f64(256, re, im)
}

fn close(a: &Complex, b: &Complex, bits: i32) -> bool {
    let d = (a - b).abs();
    let m = Float::with_val(256, b.abs()) + 1u32;
    d < Float::with_val(256, m >> bits)
}

#[test]
fn eta_transformations() {
    let i = c(0.0, 1.0);
    let e = eta_value(&i, 256).unwrap();
    // known value Gamma(1/4) / (2 pi^{3/4})
    assert!(
        (e.re.to_f64() - 0.768_225_422_326_056_7).abs() < 1e-15,
        "{e}"
    );
    let tau = c(0.123, 0.4);
    let e1 = eta_value(&tau, 256).unwrap();
    let mut tau1 = tau.clone();
    tau1.re += 1;
    let e2 = eta_value(&tau1, 256).unwrap();
    let ratio = &e2 / &e1;
    let pi = Float::with_val(256, rug::float::Constant::Pi);
    let want = Complex::new(
        Float::with_val(256, &pi / 12u32).cos(),
        Float::with_val(256, &pi / 12u32).sin(),
    );
    assert!(close(&ratio, &want, 240));
    for k in 0..20 {
        let x = -0.9 + 0.093 * k as f64;
        let y = 0.05 + 0.07 * k as f64;
        let t = c(x, y);
        let lhs = eta_value(&(-t.recip()), 256).unwrap();
        let rhs = &Complex::new(t.im.clone(), -t.re.clone()).sqrt() * &eta_value(&t, 256).unwrap();
        assert!(close(&lhs, &rhs, 240), "tau = {x} + {y}i");
    }
}

#[test]
fn pointwise_matches_series() {
    let z = c(0.17, 1.1);
    let qv = Complex::exp_2pi_i(&z);
    for id in reg().ids() {
        let rec = reg().recipe(&id).unwrap();
        if id == "G2" {
            continue;
        }
        let s = reg().expansion(&id, 120).unwrap();
        let series = if s.lead().is_integral() {
            s.to_float(256).eval(&qv).unwrap()
        } else {
            continue;
        };
        let v = reg().value(&id, &z, 256).unwrap();
        assert!(
            close(&v, &series, 200),
            "{id}: {v} vs {series} ({})",
            rec.description
        );
    }
}

#[test]
fn dt_relations() {
    let z = c(0.5, 0.3);
    let p = dt3_point(reg(), &z, 256).unwrap();
    assert!(p.dt.is_finite());
    let z = c(0.05, 1.2);
    let qv = Complex::exp_2pi_i(&z);
    let dt = reg()
        .expansion("t3", 150)
        .unwrap()
        .derivative()
        .to_float(256)
        .eval(&qv)
        .unwrap();
    assert!(close(&dt3_point(reg(), &z, 256).unwrap().dt, &dt, 200));
    let dt2 = reg()
        .expansion("t2", 150)
        .unwrap()
        .derivative()
        .to_float(256)
        .eval(&qv)
        .unwrap();
    assert!(close(&dt2_point(reg(), &z, 256).unwrap().dt, &dt2, 200));
}

#[test]
fn t3_negative_on_axis() {
    for s in [0.1, 1.0, 10.0] {
        let v = reg().value("t3", &c(0.0, s), 128).unwrap();
        assert!(v.re < 0);
        assert!(v.im.clone().abs() < Float::with_val(128, 1e-30));
    }
}

#[test]
fn eta_at_small_imaginary_part() {
    let s = 0.05;
    let tau = c(0.0, 15.0 * s);
    let lhs = eta_value(&(-tau.recip()), 256).unwrap().abs();
    let rhs = Float::with_val(256, 15.0 * s).sqrt() * eta_value(&tau, 256).unwrap().abs();
    assert!(Float::with_val(256, &lhs - &rhs).abs() < Float::with_val(256, &rhs) >> 240);
}

#[test]
fn every_form_equals_itself() {
    for id in reg().ids() {
        let e = FormExpr::form(&id);
        let r = identity_check(reg(), &id, &e, &e, 40).unwrap();
        assert!(r.equal, "{id}");
    }
}

mod properties {
    use super::*;
    use proptest::prelude::*;

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(100))]

        #[test]
        fn eta_inversion(x in -2.0f64..2.0, y in 0.05f64..3.0) {
            let t = c(x, y);
            let lhs = eta_value(&(-t.recip()), 256).unwrap();
            let rhs = &Complex::new(t.im.clone(), -t.re.clone()).sqrt() * &eta_value(&t, 256).unwrap();
            prop_assert!(close(&lhs, &rhs, 230), "tau = {} + {}i", x, y);
        }

        #[test]
        fn eta_quotient_lead_is_weighted_sum(
            factors in proptest::collection::vec((prop::sample::select(vec![1u32, 2, 3, 5, 6, 15]), -4i32..5), 1..4)
        ) {
            let eq = EtaQuotient::new(&factors);
            let want: i64 = factors.iter().map(|&(d, k)| d as i64 * k as i64).sum();
            prop_assert_eq!(eq.lead(), Exponent(want));
            let s = eta_quotient_expansion(&eq, 8);
            prop_assert_eq!(s.lead(), Exponent(want));
            prop_assert_eq!(s.coeff_at(Exponent(want)).unwrap(), Rational::from(1));
        }
    }
}
