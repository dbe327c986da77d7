use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use rug::float::Constant;
use rug::ops::Pow;
use rug::Float;

use super::Rational;

/// Default working precision for the KZ numerics, in bits.
pub const DEFAULT_PRECISION: u32 = 256;

/// Complex number with fixed-precision binary float parts.
///
/// Both parts carry the same precision; results of binary operations use the
/// larger of the operands' precisions, rounded to nearest.
#[derive(Clone, PartialEq)]
pub struct BigComplex {
    re: Float,
    im: Float,
}

impl BigComplex {
    pub fn zero(prec: u32) -> Self {
        BigComplex { re: Float::new(prec), im: Float::new(prec) }
    }

    pub fn one(prec: u32) -> Self {
        Self::from_f64(1.0, 0.0, prec)
    }

    pub fn from_parts(re: Float, im: Float) -> Self {
        let prec = re.prec().max(im.prec());
        BigComplex { re: Float::with_val(prec, re), im: Float::with_val(prec, im) }
    }

    pub fn from_f64(re: f64, im: f64, prec: u32) -> Self {
        BigComplex { re: Float::with_val(prec, re), im: Float::with_val(prec, im) }
    }

    pub fn from_rational(q: &Rational, prec: u32) -> Self {
        BigComplex { re: float_from_rational(q, prec), im: Float::new(prec) }
    }

    pub fn from_rationals(re: &Rational, im: &Rational, prec: u32) -> Self {
        BigComplex { re: float_from_rational(re, prec), im: float_from_rational(im, prec) }
    }

    /// `i`.
    pub fn i(prec: u32) -> Self {
        Self::from_f64(0.0, 1.0, prec)
    }

    pub fn prec(&self) -> u32 {
        self.re.prec()
    }

    pub fn re(&self) -> &Float {
        &self.re
    }

    pub fn im(&self) -> &Float {
        &self.im
    }

    pub fn to_f64(&self) -> (f64, f64) {
        (self.re.to_f64(), self.im.to_f64())
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        BigComplex { re: self.re.clone(), im: Float::with_val(self.prec(), -&self.im) }
    }

    pub fn norm_sqr(&self) -> Float {
        let p = self.prec();
        Float::with_val(p, self.re.square_ref()) + Float::with_val(p, self.im.square_ref())
    }

    pub fn abs(&self) -> Float {
        Float::with_val(self.prec(), self.re.hypot_ref(&self.im))
    }

    pub fn abs_f64(&self) -> f64 {
        self.abs().to_f64()
    }

    /// Principal argument in (-π, π].
    pub fn arg(&self) -> Float {
        Float::with_val(self.prec(), self.im.atan2_ref(&self.re))
    }

    pub fn scale(&self, s: &Float) -> Self {
        let p = self.prec();
        BigComplex { re: Float::with_val(p, &self.re * s), im: Float::with_val(p, &self.im * s) }
    }

    pub fn exp(&self) -> Self {
        let p = self.prec();
        let r = Float::with_val(p, self.re.exp_ref());
        let (s, c) = self.im.clone().sin_cos(Float::new(p));
        BigComplex { re: Float::with_val(p, &r * &c), im: Float::with_val(p, &r * &s) }
    }

    /// Principal logarithm; the imaginary part lies in (-π, π].
    pub fn ln(&self) -> Self {
        let p = self.prec();
        BigComplex { re: Float::with_val(p, self.abs().ln_ref()), im: self.arg() }
    }

    /// Principal branch of `self^e`.
    pub fn powf(&self, e: &Float) -> Self {
        if self.is_zero() {
            return BigComplex::zero(self.prec());
        }
        self.ln().scale(e).exp()
    }

    pub fn pow_rational(&self, e: &Rational) -> Self {
        self.powf(&float_from_rational(e, self.prec()))
    }

    pub fn powi(&self, n: i32) -> Self {
        let p = self.prec();
        let mut base = if n < 0 { BigComplex::one(p) / self.clone() } else { self.clone() };
        let mut k = n.unsigned_abs();
        let mut acc = BigComplex::one(p);
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            k >>= 1;
        }
        acc
    }

    /// Principal square root.
    pub fn sqrt(&self) -> Self {
        let p = self.prec();
        let r = self.abs();
        let half = Float::with_val(p, 0.5);
        let re = Float::with_val(p, Float::with_val(p, &r + &self.re) * &half).sqrt();
        let im_mag = Float::with_val(p, Float::with_val(p, &r - &self.re) * &half).sqrt();
        let im = if self.im.is_sign_negative() { -im_mag } else { im_mag };
        BigComplex { re, im }
    }

    pub fn pi(prec: u32) -> Float {
        Float::with_val(prec, Constant::Pi)
    }

    /// `2^-bits` at the given precision; handy for tolerances.
    pub fn epsilon(prec: u32, bits: i32) -> Float {
        Float::with_val(prec, 2).pow(-bits)
    }
}

fn float_from_rational(q: &Rational, prec: u32) -> Float {
    // Parse exact integers, then divide once with correct rounding.
    let work = prec.max(q.numer().bits() as u32).max(q.denom().bits() as u32) + 8;
    let n = Float::with_val(work, Float::parse(q.numer().to_string()).expect("integer literal"));
    let d = Float::with_val(work, Float::parse(q.denom().to_string()).expect("integer literal"));
    Float::with_val(prec, &n / &d)
}

impl fmt::Debug for BigComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (re, im) = self.to_f64();
        write!(f, "({re:e} {im:+e}i)")
    }
}

impl Add<&BigComplex> for &BigComplex {
    type Output = BigComplex;
    fn add(self, o: &BigComplex) -> BigComplex {
        let p = self.prec().max(o.prec());
        BigComplex { re: Float::with_val(p, &self.re + &o.re), im: Float::with_val(p, &self.im + &o.im) }
    }
}

impl Sub<&BigComplex> for &BigComplex {
    type Output = BigComplex;
    fn sub(self, o: &BigComplex) -> BigComplex {
        let p = self.prec().max(o.prec());
        BigComplex { re: Float::with_val(p, &self.re - &o.re), im: Float::with_val(p, &self.im - &o.im) }
    }
}

impl Mul<&BigComplex> for &BigComplex {
    type Output = BigComplex;
    fn mul(self, o: &BigComplex) -> BigComplex {
        let p = self.prec().max(o.prec());
        let rr = Float::with_val(p, &self.re * &o.re);
        let ii = Float::with_val(p, &self.im * &o.im);
        let ri = Float::with_val(p, &self.re * &o.im);
        let ir = Float::with_val(p, &self.im * &o.re);
        BigComplex { re: rr - ii, im: ri + ir }
    }
}

impl Div<&BigComplex> for &BigComplex {
    type Output = BigComplex;
    fn div(self, o: &BigComplex) -> BigComplex {
        let p = self.prec().max(o.prec());
        let d = o.norm_sqr();
        let num = self * &o.conj();
        BigComplex { re: Float::with_val(p, &num.re / &d), im: Float::with_val(p, &num.im / &d) }
    }
}

impl Neg for &BigComplex {
    type Output = BigComplex;
    fn neg(self) -> BigComplex {
        let p = self.prec();
        BigComplex { re: Float::with_val(p, -&self.re), im: Float::with_val(p, -&self.im) }
    }
}

macro_rules! owned_ops {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr for BigComplex {
            type Output = BigComplex;
            fn $m(self, o: BigComplex) -> BigComplex { (&self).$m(&o) }
        }
        impl $tr<&BigComplex> for BigComplex {
            type Output = BigComplex;
            fn $m(self, o: &BigComplex) -> BigComplex { (&self).$m(o) }
        }
    )*};
}
owned_ops!(Add add, Sub sub, Mul mul, Div div);

impl Neg for BigComplex {
    type Output = BigComplex;
    fn neg(self) -> BigComplex {
        -&self
    }
}
