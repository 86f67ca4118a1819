use mahler_core::forms::FormRegistry;
use mahler_core::series::{Exponent, QSeries};
use mahler_core::Error;
use proptest::prelude::*;
use rug::{Float, Rational};

fn ints(s: &QSeries<Rational>, from: i64, n: usize) -> Vec<Rational> {
    (0..n as i64).map(|k| s.coeff(from + k).unwrap()).collect()
}

fn r(v: &[i64]) -> Vec<Rational> {
    v.iter().map(|&x| Rational::from(x)).collect()
}

/// Cauchy product of two coefficient lists, truncated to the shorter one.
fn convolve(a: &[i64], b: &[i64]) -> Vec<i64> {
    let n = a.len().min(b.len());
    (0..n)
        .map(|k| (0..=k).map(|i| a[i] * b[k - i]).sum())
        .collect()
}

#[test]
fn geometric_inverse() {
    let one_minus_q = QSeries::from_ints(0, &[1, -1, 0, 0, 0, 0, 0, 0, 0, 0]);
    let geo = QSeries::from_ints(0, &[1; 10]);
    let p = one_minus_q.mul(&geo);
    assert_eq!(ints(&p, 0, 10), r(&[1, 0, 0, 0, 0, 0, 0, 0, 0, 0]));
    assert_eq!(one_minus_q.inverse().unwrap(), geo);
}

#[test]
fn square_of_weight_one_form() {
    let printed = [1, -4, 4, -4];
    let f = QSeries::from_ints(0, &printed);
    let sq = f.pow(2).unwrap();
    assert_eq!(ints(&sq, 0, 4), r(&convolve(&printed, &printed)));
    assert_eq!(ints(&sq, 0, 3), r(&[1, -8, 24]));
    // the registry expansion agrees with the printed coefficients
    let reg = FormRegistry::global()
        .expansion("f3", 10)
        .unwrap()
        .pow(2)
        .unwrap();
    assert_eq!(ints(&reg, 0, 4), ints(&sq, 0, 4));
}

#[test]
fn product_of_hauptmodul_and_form() {
    let t = QSeries::from_ints(1, &[1, -4, 10]);
    let f = QSeries::from_ints(0, &[1, 3, 3]);
    let p = t.mul(&f);
    assert_eq!(p.lead(), Exponent::integer(1));
    assert_eq!(ints(&p, 1, 3), r(&[1, -1, 1]));
    assert!(p.coeff(4).is_err(), "product must not claim q^4");
}

#[test]
fn substitution_examples() {
    let t3 = QSeries::from_ints(1, &[-1, -6, -21]);
    let outer = QSeries::from_ints(0, &[0, 1, 1, 1, 1]);
    let c = outer.substitute(&t3).unwrap();
    assert_eq!(ints(&c, 1, 2), r(&[-1, -5]));
    let identity = QSeries::from_ints(0, &[0, 1, 0, 0, 0]);
    assert_eq!(
        ints(&identity.substitute(&t3).unwrap(), 1, 3),
        r(&[-1, -6, -21])
    );
    let one = QSeries::from_ints(0, &[1, 0, 0, 0]);
    assert_eq!(ints(&one.substitute(&t3).unwrap(), 0, 3), r(&[1, 0, 0]));
    let with_constant = QSeries::from_ints(0, &[2, 1, 0]);
    assert!(matches!(
        outer.substitute(&with_constant),
        Err(Error::InvalidSubstitution)
    ));
}

#[test]
fn half_period_shift_of_the_weight_one_parametrization() {
    let reg = FormRegistry::global();
    let t = reg.expansion("t2", 12).unwrap();
    let f = reg.expansion("f2", 12).unwrap();
    let g = t
        .derivative()
        .div(&t)
        .unwrap()
        .mul(&f)
        .alternate_signs()
        .unwrap();
    assert_eq!(ints(&g, 0, 5), r(&[1, 1, -5, 1, 11]));
    let c = QSeries::from_ints(0, &[7]);
    assert_eq!(c.alternate_signs().unwrap(), c);
    let eta = reg.expansion("E3chi", 5).unwrap().shift(Exponent(1));
    assert!(matches!(
        eta.alternate_signs(),
        Err(Error::FractionalExponent(_))
    ));
}

#[test]
fn log_antiderivative() {
    let one = QSeries::from_ints(0, &[1]);
    let l = one.integral();
    assert_eq!(l.log_coeff, 1);
    assert!(l.series.coeffs().iter().all(|c| *c == 0));
    let f15 = FormRegistry::global().expansion("f15", 60).unwrap();
    assert_eq!(f15.integral().derivative().unwrap(), f15);
    let g2 = FormRegistry::global().expansion("g2w4", 6).unwrap();
    let b = g2.integral_n(3).unwrap();
    let printed = [-1i64, -7, -6];
    for (k, c) in printed.iter().enumerate() {
        let n = k as i64 + 1;
        assert_eq!(b.coeff(n).unwrap(), Rational::from((*c, n * n * n)));
    }
}

#[test]
fn truncation_is_never_extended() {
    let a = QSeries::from_ints(0, &[1, 2, 3, 4, 5, 6]);
    let b = QSeries::from_ints(0, &[1, 1, 1]);
    assert_eq!(a.add(&b).unwrap().order(), 2);
    assert_eq!(a.mul(&b).order(), 2);
    assert!(matches!(
        a.add(&b).unwrap().coeff(3),
        Err(Error::BeyondTruncation { .. })
    ));
    let zero = QSeries::from_ints(0, &[0, 0, 0]);
    assert!(matches!(a.div(&zero), Err(Error::DivisionByZeroSeries)));
}

#[test]
fn exponents_are_multiples_of_one_twentyfourth() {
    assert!(Exponent::from_rational(&Rational::from((1, 24))).is_ok());
    assert!(Exponent::from_rational(&Rational::from((1, 48))).is_err());
}

fn series_strategy(len: usize) -> impl Strategy<Value = QSeries<Rational>> {
    (
        -3i64..3,
        proptest::collection::vec((-50i64..50, 1i64..7), len),
    )
        .prop_map(|(lead, v)| {
            QSeries::from_coeffs(
                lead,
                v.into_iter().map(|(n, d)| Rational::from((n, d))).collect(),
            )
        })
}

fn same_lead(a: &QSeries<Rational>, lead: i64) -> QSeries<Rational> {
    QSeries::from_coeffs(lead, a.coeffs().to_vec())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn ring_axioms_to_order_64(a in series_strategy(65), b in series_strategy(65), c in series_strategy(65)) {
        let (b, c) = (same_lead(&b, 0), same_lead(&c, 0));
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        prop_assert_eq!(a.mul(&b.add(&c).unwrap()), a.mul(&b).add(&a.mul(&c)).unwrap());
        prop_assert_eq!(a.mul(&b), b.mul(&a));
        prop_assert_eq!(a.add(&b.add(&c).unwrap()).unwrap(), a.add(&b).unwrap().add(&c).unwrap());
    }

    #[test]
    fn alternate_signs_is_an_involution(a in series_strategy(40)) {
        prop_assert_eq!(a.alternate_signs().unwrap().alternate_signs().unwrap(), a);
    }

    #[test]
    fn derivative_inverts_the_antiderivative(a in series_strategy(40)) {
        let back = a.integral().derivative().unwrap();
        for n in 0..a.order() as i64 {
            let e = a.lead().as_integer().unwrap() + n;
            prop_assert_eq!(back.coeff(e).unwrap(), a.coeff(e).unwrap());
        }
    }

    #[test]
    fn json_round_trip(a in series_strategy(30), shift in 0i64..24) {
        let a = a.shift(Exponent(shift));
        prop_assert_eq!(QSeries::from_json(&a.to_json()).unwrap(), a);
    }

    #[test]
    fn float_backend_tracks_exact(
        a in proptest::collection::vec((-10_000i64..10_000, 1i64..1_000_000), 24),
        b in proptest::collection::vec((-10_000i64..10_000, 1i64..1_000_000), 24),
    ) {
        let prec = 256;
        let mk = |v: &[(i64, i64)]| QSeries::from_coeffs(0, v.iter().map(|&(n, d)| Rational::from((n, d))).collect());
        // Divisor normalized to constant term 1 so that its inverse is defined.
        let mut ea = mk(&a);
        let c0 = ea.coeff(0).unwrap();
        ea = if c0 == 0 { ea.add(&QSeries::from_ints(0, &[1])).unwrap() } else { ea.scale(&Rational::from(c0.recip_ref())) };
        let eb = mk(&b);
        let exact = eb.div(&ea).unwrap().mul(&eb);
        let float = eb.to_float(prec).div(&ea.to_float(prec)).unwrap().mul(&eb.to_float(prec));
        // Rounding errors are relative to the same computation on absolute values:
        // |b| * |b| / (1 - sum_{k>0} |a_k| q^k).
        let abs = |s: &QSeries<Rational>| s.map(|c| Rational::from(c.abs_ref()));
        let major_den = QSeries::from_coeffs(
            0,
            ea.coeffs().iter().enumerate().map(|(k, c)| if k == 0 { Rational::from(1) } else { -Rational::from(c.abs_ref()) }).collect(),
        );
        let major = abs(&eb).mul(&abs(&eb)).div(&major_den).unwrap();
        for k in 0..exact.order() as i64 {
            let x = Float::with_val(prec, exact.coeff(k).unwrap());
            let y = float.coeff(k).unwrap();
            let err = Float::with_val(prec, &x - &y).abs();
            let scale = Float::with_val(prec, major.coeff(k).unwrap()).max(&Float::with_val(prec, 1));
            prop_assert!(err <= scale >> (prec as i32 - 8), "coefficient {} off by {}", k, err);
        }
    }
}
