//! Brute-force oracles: constant terms of powers of P_n and direct
//! quasi-Monte Carlo integration of log|1 + x_1 + ... + x_n| over the torus.

use crate::error::{Error, Result};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;
use rayon::prelude::*;
use rug::Integer;
use serde::Serialize;
use std::collections::HashMap;

/// Sparse Laurent polynomial in n variables with integer coefficients.
#[derive(Clone, Debug, PartialEq)]
pub struct LaurentPolyMulti {
    pub n: usize,
    pub terms: HashMap<Vec<i32>, Integer>,
}

impl LaurentPolyMulti {
    pub fn one(n: usize) -> Self {
        LaurentPolyMulti {
            n,
            terms: [(vec![0; n], Integer::from(1))].into_iter().collect(),
        }
    }

    /// P_n = (1 + x_1 + ... + x_n)(1 + 1/x_1 + ... + 1/x_n).
    pub fn p_n(n: usize) -> Self {
        let mut lin = vec![vec![0; n]];
        for k in 0..n {
            let mut e = vec![0; n];
            e[k] = 1;
            lin.push(e);
        }
        let mut terms: HashMap<Vec<i32>, Integer> = HashMap::new();
        for a in &lin {
            for b in &lin {
                let e: Vec<i32> = a.iter().zip(b).map(|(x, y)| x - y).collect();
                *terms.entry(e).or_default() += 1;
            }
        }
        LaurentPolyMulti { n, terms }
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mut terms: HashMap<Vec<i32>, Integer> = HashMap::with_capacity(self.terms.len() * 2);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &o.terms {
                let e: Vec<i32> = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                *terms.entry(e).or_default() += Integer::from(ca * cb);
            }
        }
        terms.retain(|_, c| *c != 0);
        LaurentPolyMulti { n: self.n, terms }
    }

    pub fn constant_term(&self) -> Integer {
        self.terms
            .get(&vec![0; self.n])
            .cloned()
            .unwrap_or_default()
    }
}

/// a_m = CT(P_n^m), m = 0..=big_m, by repeated sparse multiplication.
pub fn constant_terms(n: usize, big_m: usize) -> Result<Vec<Integer>> {
    if !(1..=4).contains(&n) {
        return Err(Error::InvalidArgument(format!("n = {n} outside 1..=4")));
    }
    if big_m > 12 {
        return Err(Error::InvalidArgument(format!("M = {big_m} exceeds 12")));
    }
    let p = LaurentPolyMulti::p_n(n);
    let mut acc = LaurentPolyMulti::one(n);
    let mut out = vec![acc.constant_term()];
    for _ in 0..big_m {
        acc = acc.mul(&p);
        out.push(acc.constant_term());
    }
    Ok(out)
}

#[derive(Clone, Debug, Serialize)]
pub struct MahlerEstimate {
    pub n: usize,
    pub samples: u64,
    pub seed: u64,
    pub estimate: f64,
    pub std_error: f64,
}

const PRIMES: [u64; 4] = [2, 3, 5, 7];

fn radical_inverse(mut i: u64, base: u64) -> f64 {
    let inv = 1.0 / base as f64;
    let mut f = inv;
    let mut r = 0.0;
    while i > 0 {
        r += (i % base) as f64 * f;
        i /= base;
        f *= inv;
    }
    r
}

/// Randomly shifted Halton estimate of m(1 + x_1 + ... + x_n). The samples
/// are split into `shifts` independent Cranley-Patterson rotations whose
/// spread gives the standard error.
pub fn mahler_direct(n: usize, samples: u64, seed: u64) -> Result<MahlerEstimate> {
    if !(1..=4).contains(&n) {
        return Err(Error::InvalidArgument(format!("n = {n} outside 1..=4")));
    }
    let shifts: u64 = 32;
    if samples < shifts * 16 {
        return Err(Error::InvalidArgument(format!(
            "need at least {} samples",
            shifts * 16
        )));
    }
    let per = samples / shifts;
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    let offsets: Vec<[f64; 4]> = (0..shifts)
        .map(|_| std::array::from_fn(|_| rng.gen::<f64>()))
        .collect();
    let tau = std::f64::consts::TAU;
    let means: Vec<f64> = offsets
        .par_iter()
        .map(|off| {
            let mut s = 0.0f64;
            for i in 1..=per {
                let (mut re, mut im) = (1.0f64, 0.0f64);
                for k in 0..n {
                    let u = (radical_inverse(i, PRIMES[k]) + off[k]).fract();
                    let (sn, cs) = (tau * u).sin_cos();
                    re += cs;
                    im += sn;
                }
                s += 0.5 * (re * re + im * im).ln();
            }
            s / per as f64
        })
        .collect();
    let b = means.len() as f64;
    let mean = means.iter().sum::<f64>() / b;
    let var = means.iter().map(|m| (m - mean).powi(2)).sum::<f64>() / (b - 1.0);
    Ok(MahlerEstimate {
        n,
        samples: per * shifts,
        seed,
        estimate: mean,
        std_error: (var / b).sqrt(),
    })
}
