use mahler_core::cterm::{constant_terms, mahler_direct, LaurentPolyMulti};
use mahler_core::Error;
use rug::Integer;

fn as_i64(v: &[Integer]) -> Vec<i64> {
    v.iter().map(|x| x.to_i64().unwrap()).collect()
}

#[test]
fn printed_lists() {
    assert_eq!(as_i64(&constant_terms(2, 4).unwrap()), [1, 3, 15, 93, 639]);
    assert_eq!(
        as_i64(&constant_terms(4, 4).unwrap()),
        [1, 5, 45, 545, 7885]
    );
    assert_eq!(as_i64(&constant_terms(2, 0).unwrap()), [1]);
}

/// CT(P_n^2) = sum over pairs of monomials x_i/x_j that cancel; P_n has n+1
/// diagonal terms equal to 1 and (n+1)n off-diagonal ones, so CT(P_n^2) =
/// (n+1)^2 + (n+1)n.
#[test]
fn first_two_terms() {
    for n in 2..=4usize {
        let a = constant_terms(n, 2).unwrap();
        assert_eq!(a[1], n as i64 + 1);
        assert_eq!(a[2], ((n + 1) * (n + 1) + (n + 1) * n) as i64);
    }
}

/// For n = 2, a_m = sum_k binom(m, k)^2 binom(2k, k).
#[test]
fn two_variable_closed_form() {
    let a = constant_terms(2, 10).unwrap();
    for (m, am) in a.iter().enumerate() {
        let m = m as u32;
        let want: Integer = (0..=m)
            .map(|k| {
                Integer::from(Integer::binomial_u(m, k)).square()
                    * Integer::from(Integer::binomial_u(2 * k, k))
            })
            .sum();
        assert_eq!(*am, want, "a_{m}");
    }
    let p = LaurentPolyMulti::p_n(2);
    assert_eq!(p.terms.len(), 7);
    assert!(p.terms.keys().all(|e| e.len() == 2));
}

#[test]
fn sampling_brackets_the_analytic_values() {
    let n2 = mahler_direct(2, 1 << 22, 7).unwrap();
    let n3 = mahler_direct(3, 1 << 22, 7).unwrap();
    // 3 significant digits of (3 sqrt3 / 4 pi) L(chi_-3, 2) and 7 zeta(3) / (2 pi^2)
    assert!((n2.estimate - 0.323066).abs() < 5e-4, "{}", n2.estimate);
    assert!((n3.estimate - 0.426278).abs() < 5e-4, "{}", n3.estimate);
    assert!(n2.std_error > 0.0 && n3.std_error > 0.0);
}

#[test]
fn sampling_is_deterministic_per_seed() {
    let a = mahler_direct(4, 1 << 14, 1).unwrap();
    let b = mahler_direct(4, 1 << 14, 1).unwrap();
    let c = mahler_direct(4, 1 << 14, 2).unwrap();
    assert_eq!(a.estimate.to_bits(), b.estimate.to_bits());
    assert_ne!(a.estimate.to_bits(), c.estimate.to_bits());
}

#[test]
fn rejects_out_of_range_input() {
    assert!(matches!(
        mahler_direct(5, 1 << 14, 1),
        Err(Error::InvalidArgument(_))
    ));
    assert!(constant_terms(5, 2).is_err());
}
