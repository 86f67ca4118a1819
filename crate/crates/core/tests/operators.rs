use mahler_core::algebra::{q, qi};
use mahler_core::cterm::constant_terms;
use mahler_core::forms::FormRegistry;
use mahler_core::operators::frobenius::{frobenius_basis, solve_nonhomogeneous, taylor_basis};
use mahler_core::operators::moments::{
    boundary_term, case_data, laurent_plus, oracle_check, polar_template, random_planted_case,
    reference_rhs, run_case, MomentCase,
};
use mahler_core::operators::parametrization::check_parametrization;
use mahler_core::operators::{l2, l2_tilde, l3, l3_tilde, l4, Poly, RatFunc, SymRatFunc, ThetaOp};
use mahler_core::series::QSeries;
use mahler_core::symbolic::{Sym, SymConst};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rug::ops::Pow;
use rug::{Integer, Rational};

fn seq(v: &[Integer]) -> QSeries<Rational> {
    QSeries::from_coeffs(0, v.iter().map(|x| Rational::from(x.clone())).collect())
}

/// Independent closed form: CT(P_n^m) = sum over compositions k of m into n+1
/// parts of multinomial(m; k)^2.
fn multinomial_ct(n: usize, m: u32) -> Integer {
    fn rec(parts: usize, rest: u32, acc: Integer, fact: &[Integer], out: &mut Integer) {
        if parts == 1 {
            let c = Integer::from(&acc / &fact[rest as usize]);
            *out += Integer::from(&c * &c);
            return;
        }
        for k in 0..=rest {
            rec(
                parts - 1,
                rest - k,
                Integer::from(&acc / &fact[k as usize]),
                fact,
                out,
            );
        }
    }
    let fact: Vec<Integer> = (0..=m)
        .scan(Integer::from(1), |f, k| {
            if k > 0 {
                *f *= k;
            }
            Some(f.clone())
        })
        .collect();
    let mut out = Integer::new();
    rec(n + 1, m, fact[m as usize].clone(), &fact, &mut out);
    out
}

#[test]
fn constant_terms_match_lists_and_closed_form() {
    let expect: [(usize, [i64; 5]); 3] = [
        (2, [1, 3, 15, 93, 639]),
        (3, [1, 4, 28, 256, 2716]),
        (4, [1, 5, 45, 545, 7885]),
    ];
    for (n, e) in expect {
        let a = constant_terms(n, 8).unwrap();
        for (k, v) in e.iter().enumerate() {
            assert_eq!(a[k], *v, "n={n} k={k}");
        }
        for (m, v) in a.iter().enumerate() {
            assert_eq!(*v, multinomial_ct(n, m as u32));
        }
        assert_eq!(a[1], (n + 1) as i64);
    }
}

#[test]
fn operators_annihilate_constant_terms() {
    for (n, op) in [(2usize, l2()), (3, l3()), (4, l4())] {
        let a = seq(&constant_terms(n, 12).unwrap());
        let r = op.apply(&a).unwrap();
        for k in 0..=(12 - op.t_range().unwrap().1) {
            assert_eq!(r.coeff(k).unwrap(), 0, "L{n} at t^{k}");
        }
    }
}

#[test]
fn dual_operator_identities() {
    let (p, d) = l2_tilde().dual();
    assert_eq!(p, -2);
    assert_eq!(d, l2());
    let (p, d) = l3_tilde().dual();
    assert_eq!(p, -2);
    assert_eq!(d, l3().neg());
}

#[test]
fn theta_commutation() {
    // theta t = t (theta + 1)
    let lhs = ThetaOp::theta().mul(&ThetaOp::t_pow(1));
    let rhs = ThetaOp::t_pow(1).mul(&ThetaOp::theta().add(&ThetaOp::constant(qi(1))));
    assert_eq!(lhs, rhs);
}

#[test]
fn laurent_plus_examples() {
    let one = qi(1);
    let l3t = l3_tilde();
    assert_eq!(
        laurent_plus(&l3t.section(3)).at(&one),
        RatFunc::from_ints(&[45], &[1, -1])
    );
    assert_eq!(
        laurent_plus(&l3t.section(2)).at(&one),
        RatFunc::from_ints(&[-54, 9], &[1, -2, 1])
    );
    assert_eq!(
        laurent_plus(&l3t.section(1)).at(&one),
        RatFunc::from_ints(&[29, 68, -7], &[1, -3, 3, -1])
    );
    // generic lambda for L2~: (lambda-1)(lambda-9)/(1 - lambda t) and its negative square
    let l2t = l2_tilde();
    for l in [qi(2), q(1, 3), qi(-5)] {
        let k = Rational::from((&l - qi(1)) * (&l - qi(9)));
        let lin = Poly::new(vec![qi(1), Rational::from(-&l)]);
        let e2 = RatFunc::new(Poly::constant(k.clone()), lin.clone()).unwrap();
        let e1 = RatFunc::new(Poly::constant(-k), lin.pow(2)).unwrap();
        assert_eq!(laurent_plus(&l2t.section(2)).at(&l), e2);
        assert_eq!(laurent_plus(&l2t.section(1)).at(&l), e1);
    }
}

#[test]
fn laurent_plus_matches_series_oracle() {
    // closed-form plus part agrees with the series of op(1/t,-theta-1) 1/(1-lt)
    // with the negative powers removed
    let op = l3_tilde();
    for l in [qi(3), q(-2, 7)] {
        for k in 1..=3 {
            let sec = op.section(k);
            let geo = QSeries::from_coeffs(
                0,
                (0..40u32)
                    .map(|n| Rational::from(l.clone().pow(n)))
                    .collect(),
            );
            let full = sec.inverted().apply(&geo).unwrap();
            let plus = laurent_plus(&sec).at(&l).to_series(30).unwrap();
            for e in 0..=30 {
                assert_eq!(full.coeff(e).unwrap(), plus.coeff(e).unwrap());
            }
        }
    }
}

#[test]
fn polar_parts_of_dual_operators() {
    // [L2~(1/t,-theta-1) c]_- = (c1 - 3 c0)/t ; [L3~(...) c]_- = (4 c0 - c1)/t
    let t2 = polar_template(&l2_tilde());
    assert_eq!(t2[0], vec![qi(-3), qi(1)]);
    assert!(t2[1].iter().all(|c| *c == 0));
    let t3 = polar_template(&l3_tilde());
    assert_eq!(t3[0], vec![qi(4), qi(-1)]);
    assert!(t3[1].iter().all(|c| *c == 0));
}

#[test]
fn boundary_terms_of_thm_cases() {
    let (op, alpha, beta, _) = case_data(MomentCase::Thm1);
    assert!(boundary_term(&op, &alpha).unwrap().is_zero());
    let h1 = boundary_term(&op, &beta).unwrap();
    let expect = SymRatFunc::term(
        &SymConst::monomial(qi(6), 1, &[(Sym::Pi, -2)]),
        &RatFunc::from_ints(&[1], &[1, -1]),
    );
    assert!(h1.equals(&expect), "{h1}");

    let (op, alpha, beta, _) = case_data(MomentCase::Thm2);
    assert!(boundary_term(&op, &alpha).unwrap().is_zero());
    let h1 = boundary_term(&op, &beta).unwrap();
    let expect = SymRatFunc::from_terms(&[
        (
            SymConst::monomial(q(3, 10), 5, &[(Sym::Omega, 2), (Sym::Pi, -1)]),
            RatFunc::from_ints(&[212, 251, -13], &[1, -3, 3, -1]),
        ),
        (
            SymConst::monomial(q(-3, 5), 5, &[(Sym::Pi, -3), (Sym::Omega, -2)]),
            RatFunc::from_ints(&[1], &[1, -1]),
        ),
    ]);
    assert!(h1.equals(&expect), "{h1}");
}

#[test]
fn reference_right_hand_sides() {
    for case in [MomentCase::Thm1, MomentCase::Thm2] {
        let r = run_case(case).unwrap();
        let got = r.ln_rhs.unwrap();
        let want = reference_rhs(case).unwrap();
        assert!(got.equals(&want), "{case:?}: {got} vs {want}");
    }
}

#[test]
fn toy_case() {
    let r = run_case(MomentCase::Toy).unwrap();
    assert!(r.rhs.h_alpha.is_zero());
    assert!(r.rhs.h_beta.equals(&SymRatFunc::term(
        &SymConst::int(1),
        &RatFunc::from_ints(&[1], &[1, -1])
    )));
    assert!(r.rhs.h.equals(&SymRatFunc::term(
        &SymConst::int(-1),
        &RatFunc::from_ints(&[1], &[1, -1])
    )));
}

#[test]
fn planted_oracle_fifty_cases() {
    let mut rng = ChaCha8Rng::seed_from_u64(20240611);
    for i in 0..50 {
        let m = 1 + i % 2;
        let n = 1 + (i / 2) % 3;
        let case = random_planted_case(&mut rng, m, n, 2);
        let out = oracle_check(&case, 24).unwrap();
        assert!(
            out.equal,
            "case {i}: {} mismatch at {:?}",
            case.op, out.first_mismatch
        );
    }
}

#[test]
fn frobenius_at_zero_and_one() {
    let op = l2_tilde();
    let basis = frobenius_basis(&op, &qi(0), 12).unwrap();
    assert_eq!(basis.len(), 2);
    assert_eq!(basis[0].strata[0].coeff(1).unwrap(), q(1, 3));
    for b in &basis {
        assert!(b.annihilated_by(&op).unwrap());
        assert_eq!(b.strata.last().unwrap().coeff(0).unwrap(), 1);
    }
    let op3 = l3_tilde();
    let b3 = frobenius_basis(&op3, &qi(0), 10).unwrap();
    assert_eq!(b3.len(), 3);
    assert!(b3.iter().all(|b| b.annihilated_by(&op3).unwrap()));
    // lambda = 1 is a MUM point of L2~, lambda = 2 is a regular point
    let at_one = frobenius_basis(&op, &qi(1), 10).unwrap();
    assert!(at_one.iter().all(|b| b.annihilated_by(&op).unwrap()));
    assert!(frobenius_basis(&op, &qi(2), 5).is_err());
    // lambda = 1 is an ordinary point of L3~
    let tb = taylor_basis(&op3, &qi(1), 10).unwrap();
    assert_eq!(tb.len(), 3);
}

#[test]
fn nonhomogeneous_thm_series() {
    // L2 psi = t/(1-t), psi = t + o(t)
    let rhs = QSeries::from_coeffs(
        0,
        (0..=20)
            .map(|k| if k == 0 { qi(0) } else { qi(1) })
            .collect(),
    );
    let psi = solve_nonhomogeneous(&l2(), &rhs, &qi(0), 20).unwrap();
    assert_eq!(psi.coeff(1).unwrap(), 1);
    let back = l2().apply(&psi).unwrap();
    for k in 0..=18 {
        assert_eq!(back.coeff(k).unwrap(), rhs.coeff(k).unwrap());
    }
    let bad = QSeries::from_coeffs(0, vec![qi(1); 5]);
    assert!(solve_nonhomogeneous(&l2(), &bad, &qi(0), 4).is_err());
}

#[test]
fn parametrizations_to_order_150() {
    let reg = FormRegistry::global();
    for n in [2, 3] {
        let r = check_parametrization(reg, n, 150, 3, 7).unwrap();
        assert!(r.equal, "n = {n}: {:?}", r.first_mismatch);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn inversion_is_an_involution(c in proptest::collection::vec(-6i64..6, 1..9)) {
        let mut m = std::collections::BTreeMap::new();
        for (k, v) in c.iter().enumerate() {
            m.insert(((k % 3) as i64, (k / 3) as u32), qi(*v));
        }
        let op = ThetaOp::from_coeffs(&m);
        prop_assert_eq!(op.inverted().inverted(), op);
    }

    #[test]
    fn operator_product_acts_as_composition(a in proptest::collection::vec(-4i64..4, 4), s in proptest::collection::vec(-9i64..9, 10)) {
        let x = ThetaOp::from_parts(vec![(0, Poly::from_ints(&[a[0], a[1]])), (1, Poly::from_ints(&[a[2]]))]);
        let y = ThetaOp::from_parts(vec![(0, Poly::from_ints(&[a[3], 1])), (2, Poly::from_ints(&[1, 1]))]);
        let ser = QSeries::from_ints(0, &s);
        let lhs = x.mul(&y).apply(&ser).unwrap();
        let rhs = x.apply(&y.apply(&ser).unwrap()).unwrap();
        for k in 0..8 {
            prop_assert_eq!(lhs.coeff(k).unwrap_or_default(), rhs.coeff(k).unwrap_or_default());
        }
    }
}
