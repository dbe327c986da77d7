use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_traits::{One, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::{rational_vec_serde, Field, Rational};

/// Polynomial in κ with rational coefficients, lowest degree first.
/// Trailing zero coefficients are always trimmed; the zero polynomial is empty.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    coeffs: Vec<Rational>,
}

impl Poly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn constant(c: Rational) -> Self {
        Poly::new(vec![c])
    }

    /// The monomial κ.
    pub fn kappa() -> Self {
        Poly::new(vec![Rational::zero(), Rational::one()])
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&Rational> {
        self.coeffs.last()
    }

    pub fn eval(&self, k: &Rational) -> Rational {
        self.coeffs
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * k + c)
    }

    pub fn scale(&self, s: &Rational) -> Poly {
        Poly::new(self.coeffs.iter().map(|c| c * s).collect())
    }

    pub fn monic(&self) -> Poly {
        match self.leading() {
            Some(l) => self.scale(&l.recip()),
            None => Poly::default(),
        }
    }

    /// Euclidean division; panics if `d` is zero.
    pub fn div_rem(&self, d: &Poly) -> (Poly, Poly) {
        let dd = d.degree().expect("division by zero polynomial");
        let lead_inv = d.leading().unwrap().recip();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![Rational::zero(); self.coeffs.len().saturating_sub(dd)];
        while rem.len() > dd && !rem.is_empty() {
            let shift = rem.len() - 1 - dd;
            let q = rem.last().unwrap() * &lead_inv;
            for (i, c) in d.coeffs.iter().enumerate() {
                rem[shift + i] -= &q * c;
            }
            quot[shift] = q;
            rem.pop();
            while rem.last().is_some_and(|c| c.is_zero()) {
                rem.pop();
            }
        }
        (Poly::new(quot), Poly::new(rem))
    }

    /// Monic greatest common divisor.
    pub fn gcd(a: &Poly, b: &Poly) -> Poly {
        let (mut x, mut y) = (a.clone(), b.clone());
        while !y.is_zero() {
            let r = x.div_rem(&y).1;
            x = y;
            y = r;
        }
        x.monic()
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coeffs.iter().map(super::format_rational).collect();
        write!(f, "Poly[{}]", parts.join(", "))
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, o: &Poly) -> Poly {
        let n = self.coeffs.len().max(o.coeffs.len());
        let z = Rational::zero();
        Poly::new(
            (0..n)
                .map(|i| self.coeffs.get(i).unwrap_or(&z) + o.coeffs.get(i).unwrap_or(&z))
                .collect(),
        )
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, o: &Poly) -> Poly {
        self + &(-o)
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, o: &Poly) -> Poly {
        if self.is_zero() || o.is_zero() {
            return Poly::default();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in o.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Poly::new(out)
    }
}

/// Reduced rational function `num/den` in κ with monic denominator.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatFuncKappa {
    num: Poly,
    den: Poly,
}

impl RatFuncKappa {
    /// Builds and normalizes `num/den`. Panics if `den` is zero.
    pub fn new(num: Poly, den: Poly) -> Self {
        assert!(!den.is_zero(), "zero denominator in rational function");
        if num.is_zero() {
            return RatFuncKappa { num, den: Poly::constant(Rational::one()) };
        }
        let g = Poly::gcd(&num, &den);
        let (mut num, _) = num.div_rem(&g);
        let (den, _) = den.div_rem(&g);
        let lead = den.leading().unwrap().clone();
        num = num.scale(&lead.recip());
        RatFuncKappa { num, den: den.monic() }
    }

    pub fn constant(c: Rational) -> Self {
        RatFuncKappa::new(Poly::constant(c), Poly::constant(Rational::one()))
    }

    /// `c / κ`, the shape of every discriminantal weight.
    pub fn over_kappa(c: Rational) -> Self {
        RatFuncKappa::new(Poly::constant(c), Poly::kappa())
    }

    pub fn numerator(&self) -> &Poly {
        &self.num
    }

    pub fn denominator(&self) -> &Poly {
        &self.den
    }

    pub fn recip(&self) -> Option<Self> {
        if self.num.is_zero() {
            None
        } else {
            Some(RatFuncKappa::new(self.den.clone(), self.num.clone()))
        }
    }
}

impl fmt::Debug for RatFuncKappa {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({:?})/({:?})", self.num, self.den)
    }
}

impl Add for RatFuncKappa {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        if self.den == o.den {
            return RatFuncKappa::new(&self.num + &o.num, self.den);
        }
        RatFuncKappa::new(
            &(&self.num * &o.den) + &(&o.num * &self.den),
            &self.den * &o.den,
        )
    }
}

impl Neg for RatFuncKappa {
    type Output = Self;
    fn neg(self) -> Self {
        RatFuncKappa { num: -&self.num, den: self.den }
    }
}

impl Sub for RatFuncKappa {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        self + (-o)
    }
}

impl Mul for RatFuncKappa {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        RatFuncKappa::new(&self.num * &o.num, &self.den * &o.den)
    }
}

impl Div for RatFuncKappa {
    type Output = Self;
    fn div(self, o: Self) -> Self {
        self * o.recip().expect("division by zero rational function")
    }
}

impl Zero for RatFuncKappa {
    fn zero() -> Self {
        RatFuncKappa::constant(Rational::zero())
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
}

impl One for RatFuncKappa {
    fn one() -> Self {
        RatFuncKappa::constant(Rational::one())
    }
}

impl Field for RatFuncKappa {
    fn from_rational(q: &Rational) -> Self {
        RatFuncKappa::constant(q.clone())
    }
    fn height(&self) -> u64 {
        let h = |p: &Poly| -> u64 { p.coeffs().iter().map(|c| c.height() + 1).sum() };
        h(&self.num) + h(&self.den)
    }
}

#[derive(Serialize, Deserialize)]
struct RatFuncRepr {
    #[serde(with = "rational_vec_serde")]
    num: Vec<Rational>,
    #[serde(with = "rational_vec_serde")]
    den: Vec<Rational>,
}

impl Serialize for RatFuncKappa {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        RatFuncRepr { num: self.num.coeffs.clone(), den: self.den.coeffs.clone() }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for RatFuncKappa {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let r = RatFuncRepr::deserialize(d)?;
        let den = Poly::new(r.den);
        if den.is_zero() {
            return Err(serde::de::Error::custom("zero denominator"));
        }
        Ok(RatFuncKappa::new(Poly::new(r.num), den))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactfield::{rat, specialize_kappa, FieldError};

    fn p(c: &[i64]) -> Poly {
        Poly::new(c.iter().map(|&x| rat(x, 1)).collect())
    }

    #[test]
    fn reduces_common_factor() {
        // (κ²-1)/(2κ-2) = (κ+1)/2
        let f = RatFuncKappa::new(p(&[-1, 0, 1]), p(&[-2, 2]));
        assert_eq!(f.denominator(), &p(&[1]));
        assert_eq!(f.numerator(), &Poly::new(vec![rat(1, 2), rat(1, 2)]));
    }

    #[test]
    fn specialization_examples() {
        let k = RatFuncKappa::over_kappa(rat(1, 1));
        assert_eq!(specialize_kappa(&k, &rat(3, 1)).unwrap(), rat(1, 3));
        let k2 = RatFuncKappa::over_kappa(rat(-2, 1));
        assert_eq!(specialize_kappa(&k2, &rat(3, 1)).unwrap(), rat(-2, 3));
        let k3 = RatFuncKappa::new(p(&[-1, 1]), p(&[0, 1]));
        assert_eq!(specialize_kappa(&k3, &rat(1, 1)).unwrap(), rat(0, 1));
        assert_eq!(specialize_kappa(&k3, &rat(0, 1)), Err(FieldError::ZeroKappa));
        let pole = RatFuncKappa::new(p(&[1]), p(&[-2, 1]));
        assert!(matches!(specialize_kappa(&pole, &rat(2, 1)), Err(FieldError::PoleAtKappa(_))));
    }

    #[test]
    fn serde_shape() {
        let f = RatFuncKappa::new(p(&[-1, 1]), p(&[0, 2]));
        let s = serde_json::to_string(&f).unwrap();
        assert_eq!(s, r#"{"num":["-1/2","1/2"],"den":["0","1"]}"#);
        let back: RatFuncKappa = serde_json::from_str(&s).unwrap();
        assert_eq!(back, f);
    }
}
