//! Complex numbers over MPFR floats.

use rug::float::Constant;
use rug::{Float, Rational};
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

#[derive(Clone, Debug, PartialEq)]
pub struct Complex {
    pub re: Float,
    pub im: Float,
}

impl Complex {
    pub fn new(re: Float, im: Float) -> Self {
        Complex { re, im }
    }

    pub fn zero(prec: u32) -> Self {
        Complex::new(Float::new(prec), Float::new(prec))
    }

    pub fn one(prec: u32) -> Self {
        Complex::new(Float::with_val(prec, 1), Float::new(prec))
    }

    pub fn i(prec: u32) -> Self {
        Complex::new(Float::new(prec), Float::with_val(prec, 1))
    }

    pub fn from_real(x: Float) -> Self {
        let p = x.prec();
        Complex::new(x, Float::new(p))
    }

    pub fn from_f64(prec: u32, re: f64, im: f64) -> Self {
        Complex::new(Float::with_val(prec, re), Float::with_val(prec, im))
    }

    pub fn from_rational(prec: u32, re: &Rational, im: &Rational) -> Self {
        Complex::new(Float::with_val(prec, re), Float::with_val(prec, im))
    }

    pub fn prec(&self) -> u32 {
        self.re.prec().max(self.im.prec())
    }

    pub fn with_prec(&self, prec: u32) -> Self {
        Complex::new(
            Float::with_val(prec, &self.re),
            Float::with_val(prec, &self.im),
        )
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_finite(&self) -> bool {
        self.re.is_finite() && self.im.is_finite()
    }

    pub fn conj(&self) -> Self {
        Complex::new(self.re.clone(), Float::with_val(self.im.prec(), -&self.im))
    }

    pub fn norm_sqr(&self) -> Float {
        let p = self.prec();
        let a = Float::with_val(p, self.re.square_ref());
        let b = Float::with_val(p, self.im.square_ref());
        a + b
    }

    pub fn abs(&self) -> Float {
        let p = self.prec();
        Float::with_val(p, self.re.hypot_ref(&self.im))
    }

    pub fn arg(&self) -> Float {
        let p = self.prec();
        Float::with_val(p, self.im.atan2_ref(&self.re))
    }

    pub fn scale(&self, x: &Float) -> Self {
        let p = self.prec().max(x.prec());
        Complex::new(
            Float::with_val(p, &self.re * x),
            Float::with_val(p, &self.im * x),
        )
    }

    pub fn scale_rational(&self, r: &Rational) -> Self {
        let p = self.prec();
        Complex::new(
            Float::with_val(p, &self.re * r),
            Float::with_val(p, &self.im * r),
        )
    }

    /// Multiplication by `i`.
    pub fn mul_i(&self) -> Self {
        Complex::new(Float::with_val(self.im.prec(), -&self.im), self.re.clone())
    }

    pub fn recip(&self) -> Self {
        let n = self.norm_sqr();
        let p = self.prec();
        Complex::new(
            Float::with_val(p, &self.re / &n),
            Float::with_val(p, -Float::with_val(p, &self.im / &n)),
        )
    }

    pub fn exp(&self) -> Self {
        let p = self.prec();
        let m = Float::with_val(p, self.re.exp_ref());
        let (s, c) = Float::with_val(p, &self.im).sin_cos(Float::new(p));
        Complex::new(Float::with_val(p, &m * &c), m * s)
    }

    /// Principal logarithm.
    pub fn ln(&self) -> Self {
        let p = self.prec();
        Complex::new(Float::with_val(p, self.abs().ln_ref()), self.arg())
    }

    /// Principal square root (branch cut along the negative real axis).
    pub fn sqrt(&self) -> Self {
        let p = self.prec();
        if self.is_zero() {
            return Complex::zero(p);
        }
        let r = self.abs();
        // sqrt((r + |re|)/2) computed without cancellation.
        let t = Float::with_val(p, (r + Float::with_val(p, self.re.abs_ref())) / 2u32).sqrt();
        if self.re.is_sign_positive() {
            let im = Float::with_val(p, &self.im / (Float::with_val(p, &t * 2u32)));
            Complex::new(t, im)
        } else {
            let re = Float::with_val(p, self.im.abs_ref()) / Float::with_val(p, &t * 2u32);
            let im = if self.im.is_sign_negative() { -t } else { t };
            Complex::new(re, im)
        }
    }

    pub fn powi(&self, n: i64) -> Self {
        let p = self.prec();
        let mut base = if n < 0 { self.recip() } else { self.clone() };
        let mut e = n.unsigned_abs();
        let mut acc = Complex::one(p);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// exp(2 pi i z).
    pub fn exp_2pi_i(z: &Complex) -> Self {
        let p = z.prec();
        let two_pi = Float::with_val(p, Constant::Pi) * 2u32;
        z.mul_i().scale(&two_pi).exp()
    }

    pub fn to_f64_pair(&self) -> (f64, f64) {
        (self.re.to_f64(), self.im.to_f64())
    }
}

impl fmt::Display for Complex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let digits = f.precision().unwrap_or(20);
        let re = self.re.to_string_radix(10, Some(digits));
        let im = self.im.to_string_radix(10, Some(digits));
        write!(f, "({re}, {im})")
    }
}

macro_rules! forward_binop {
    ($tr:ident, $m:ident, $body:expr) => {
        impl<'a> $tr<&'a Complex> for &'a Complex {
            type Output = Complex;
            fn $m(self, rhs: &'a Complex) -> Complex {
                let f: fn(&Complex, &Complex) -> Complex = $body;
                f(self, rhs)
            }
        }
        impl $tr<Complex> for Complex {
            type Output = Complex;
            fn $m(self, rhs: Complex) -> Complex {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a Complex> for Complex {
            type Output = Complex;
            fn $m(self, rhs: &'a Complex) -> Complex {
                (&self).$m(rhs)
            }
        }
    };
}

forward_binop!(Add, add, |a, b| {
    let p = a.prec().max(b.prec());
    Complex::new(
        Float::with_val(p, &a.re + &b.re),
        Float::with_val(p, &a.im + &b.im),
    )
});
forward_binop!(Sub, sub, |a, b| {
    let p = a.prec().max(b.prec());
    Complex::new(
        Float::with_val(p, &a.re - &b.re),
        Float::with_val(p, &a.im - &b.im),
    )
});
forward_binop!(Mul, mul, |a, b| {
    let p = a.prec().max(b.prec());
    let ac = Float::with_val(p, &a.re * &b.re);
    let bd = Float::with_val(p, &a.im * &b.im);
    let ad = Float::with_val(p, &a.re * &b.im);
    let bc = Float::with_val(p, &a.im * &b.re);
    Complex::new(ac - bd, ad + bc)
});
forward_binop!(Div, div, |a, b| a * &b.recip());

impl Neg for Complex {
    type Output = Complex;
    fn neg(self) -> Complex {
        Complex::new(-self.re, -self.im)
    }
}

impl<'a> Neg for &'a Complex {
    type Output = Complex;
    fn neg(self) -> Complex {
        -(self.clone())
    }
}
