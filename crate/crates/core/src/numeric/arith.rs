//! Elementary arithmetic: Dirichlet characters, divisor functions, Dedekind sums.

use rug::{Integer, Rational};
use serde::{Deserialize, Serialize};

/// A real Dirichlet character given by its period table.
///
/// Built from Kronecker symbols of fundamental discriminants, so every
/// character constructed here is primitive of conductor `modulus`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct DirichletChar {
    pub modulus: u32,
    /// Fundamental discriminant (1 for the trivial character).
    pub discriminant: i32,
    pub values: Vec<i8>,
}

impl DirichletChar {
    pub fn trivial() -> Self {
        DirichletChar {
            modulus: 1,
            discriminant: 1,
            values: vec![1],
        }
    }

    /// The Kronecker symbol (D/.) for a fundamental discriminant D.
    pub fn kronecker(discriminant: i32) -> Self {
        let k = discriminant.unsigned_abs();
        let d = Integer::from(discriminant);
        let values = (0..k)
            .map(|n| d.kronecker(&Integer::from(n)) as i8)
            .collect();
        DirichletChar {
            modulus: k,
            discriminant,
            values,
        }
    }

    pub fn chi_minus3() -> Self {
        Self::kronecker(-3)
    }

    pub fn chi_minus15() -> Self {
        Self::kronecker(-15)
    }

    pub fn value(&self, n: i64) -> i64 {
        let k = self.modulus as i64;
        self.values[n.rem_euclid(k) as usize] as i64
    }

    pub fn is_trivial(&self) -> bool {
        self.modulus == 1
    }

    /// True when chi(-1) = -1.
    pub fn is_odd(&self) -> bool {
        self.value(-1) == -1
    }
}

pub fn gcd(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// Divisors of n in increasing order.
pub fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1u64;
    while d * d <= n {
        if n % d == 0 {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    large.reverse();
    small.extend(large);
    small
}

/// Number-of-divisors table d(0..=n) by sieving.
pub fn divisor_count_table(n: usize) -> Vec<u32> {
    let mut t = vec![0u32; n + 1];
    for d in 1..=n {
        let mut m = d;
        while m <= n {
            t[m] += 1;
            m += d;
        }
    }
    t
}

/// Dedekind sum s(h, k) for k > 0, computed by reciprocity.
pub fn dedekind_sum(h: &Integer, k: &Integer) -> Rational {
    assert!(*k > 0, "dedekind_sum requires k > 0");
    // s(h,k) depends on h mod k; reciprocity for coprime positive h,k:
    // s(h,k) + s(k,h) = -1/4 + (h/k + k/h + 1/(hk))/12.
    let mut h = Integer::from(h % k);
    if h < 0 {
        h += k;
    }
    let mut k = k.clone();
    let mut sign = 1i32;
    let mut acc = Rational::new();
    loop {
        if h == 0 {
            // s(0, k) = 0 only for k = 1; the coprime recursion always ends at h = 0, k = 1.
            break;
        }
        let hk = Rational::from((h.clone(), k.clone()));
        let kh = Rational::from((k.clone(), h.clone()));
        let inv = Rational::from((Integer::from(1), Integer::from(&h * &k)));
        let term = Rational::from((-1, 4)) + (hk + kh + inv) / 12u32;
        if sign > 0 {
            acc += term;
        } else {
            acc -= term;
        }
        sign = -sign;
        let r = Integer::from(&k % &h);
        k = h;
        h = r;
    }
    acc
}

/// Unsigned Stirling numbers of the second kind S(n, k) for 0 <= k <= n <= max.
pub fn stirling2_table(max: usize) -> Vec<Vec<Integer>> {
    let mut s = vec![vec![Integer::new(); max + 1]; max + 1];
    s[0][0] = Integer::from(1);
    for n in 1..=max {
        for k in 1..=n {
            let v = Integer::from(&s[n - 1][k] * k as u32) + &s[n - 1][k - 1];
            s[n][k] = v;
        }
    }
    s
}

pub fn binomial(n: u32, k: u32) -> Integer {
    Integer::from(Integer::binomial_u(n, k))
}
