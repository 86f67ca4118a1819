//! Chebyshev-Lobatto panels: interpolation, cumulative integration and
//! Clenshaw-Curtis sums from one set of samples.

use rug::float::Constant;
use rug::Float;

/// Nodes x_k = cos(pi k / n), k = 0..=n, on [-1, 1] together with the
/// cosine table used by the transforms.
#[derive(Clone, Debug)]
pub struct ChebGrid {
    pub n: usize,
    pub prec: u32,
    cos: Vec<Float>,
}

impl ChebGrid {
    pub fn new(n: usize, prec: u32) -> Self {
        let pi = Float::with_val(prec, Constant::Pi);
        let cos = (0..2 * n)
            .map(|m| Float::with_val(prec, Float::with_val(prec, &pi * m as u32) / n as u32).cos())
            .collect();
        ChebGrid { n, prec, cos }
    }

    /// cos(pi j k / n).
    fn c(&self, j: usize, k: usize) -> &Float {
        &self.cos[(j * k) % (2 * self.n)]
    }

    /// Node k mapped to [a, b]; node 0 is b and node n is a.
    pub fn node(&self, k: usize, a: &Float, b: &Float) -> Float {
        let mid = Float::with_val(self.prec, a + b) / 2u32;
        let half = Float::with_val(self.prec, b - a) / 2u32;
        mid + half * self.c(1, k)
    }

    /// Coefficients a_j with f = sum a_j T_j from samples at the nodes.
    pub fn coefficients(&self, f: &[Float]) -> Vec<Float> {
        let n = self.n;
        let mut out = Vec::with_capacity(n + 1);
        for j in 0..=n {
            let mut s = Float::new(self.prec);
            for (k, fk) in f.iter().enumerate() {
                let term = Float::with_val(self.prec, fk * self.c(j, k));
                if k == 0 || k == n {
                    s += term / 2u32;
                } else {
                    s += term;
                }
            }
            s *= 2u32;
            s /= n as u32;
            if j == 0 || j == n {
                s /= 2u32;
            }
            out.push(s);
        }
        out
    }

    /// Relative size of the trailing coefficients, a convergence indicator.
    pub fn tail_ratio(&self, a: &[Float]) -> f64 {
        let max = a.iter().map(|x| x.to_f64().abs()).fold(0.0, f64::max);
        let tail = a[a.len() - 3..]
            .iter()
            .map(|x| x.to_f64().abs())
            .fold(0.0, f64::max);
        if max == 0.0 {
            0.0
        } else {
            tail / max
        }
    }

    /// Integral over [a, b] of the interpolant.
    pub fn integral(&self, a_coef: &[Float], a: &Float, b: &Float) -> Float {
        let mut s = Float::new(self.prec);
        for (j, c) in a_coef.iter().enumerate().step_by(2) {
            let w = Float::with_val(self.prec, 2) / (1i64 - (j * j) as i64);
            s += Float::with_val(self.prec, c * &w);
        }
        s * Float::with_val(self.prec, b - a) / 2u32
    }

    /// Values at the nodes of x -> integral from x to b of the interpolant.
    pub fn tail_integrals(&self, a_coef: &[Float], a: &Float, b: &Float) -> Vec<Float> {
        let n = self.n;
        let p = self.prec;
        // antiderivative coefficients B_k, k = 1..=n+1
        let get = |j: usize| -> Float {
            if j <= n {
                a_coef[j].clone()
            } else {
                Float::new(p)
            }
        };
        let mut bk = vec![Float::new(p); n + 2];
        bk[1] = get(0) - get(2) / 2u32;
        for k in 2..=n + 1 {
            bk[k] = Float::with_val(p, get(k - 1) - get(k + 1)) / (2 * k) as u32;
        }
        let half = Float::with_val(p, b - a) / 2u32;
        // G(x_k) = sum B_j T_j(x_k); T_j(x_k) = cos(pi j k / n); at x = 1 all T_j = 1
        let g1: Float = bk.iter().fold(Float::new(p), |acc, x| acc + x);
        (0..=n)
            .map(|k| {
                let mut g = Float::new(p);
                for (j, b) in bk.iter().enumerate().skip(1) {
                    g += Float::with_val(p, b * self.c(j, k));
                }
                Float::with_val(p, &g1 - &g) * &half
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exp_tail_integral() {
        let p = 128;
        let g = ChebGrid::new(32, p);
        let a = Float::with_val(p, 0.5);
        let b = Float::with_val(p, 1.5);
        let f: Vec<Float> = (0..=32).map(|k| g.node(k, &a, &b).exp()).collect();
        let c = g.coefficients(&f);
        let tails = g.tail_integrals(&c, &a, &b);
        for k in 0..=32 {
            let x = g.node(k, &a, &b);
            let exact = Float::with_val(p, b.exp_ref()) - x.exp();
            assert!((Float::with_val(p, &tails[k] - &exact)).abs() < 1e-30);
        }
        let total = g.integral(&c, &a, &b);
        let exact = Float::with_val(p, b.exp_ref()) - Float::with_val(p, a.exp_ref());
        assert!((total - exact).abs() < 1e-30);
        assert!(g.tail_ratio(&c) < 1e-30);
    }
}
