use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

use super::FieldError;

/// Arbitrary-precision rational; always reduced with a positive denominator.
pub type Rational = BigRational;

/// Shorthand for `p/q` as a [`Rational`]. Panics on `q == 0`.
pub fn rat(p: i64, q: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(q))
}

/// Parses `"p/q"`, `"p"` or a signed integer string.
pub fn parse_rational(s: &str) -> Result<Rational, FieldError> {
    let s = s.trim();
    let err = || FieldError::Parse(s.to_string());
    match s.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().map_err(|_| err())?;
            let q: BigInt = q.trim().parse().map_err(|_| err())?;
            if q == BigInt::from(0) {
                return Err(FieldError::DivisionByZero);
            }
            Ok(Rational::new(p, q))
        }
        None => {
            let p: BigInt = s.parse().map_err(|_| err())?;
            Ok(Rational::from_integer(p))
        }
    }
}

/// `"p/q"`, or `"p"` when the denominator is one.
pub fn format_rational(q: &Rational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Serde adapter storing a [`Rational`] as a `"p/q"` string.
pub mod rational_serde {
    use serde::{de::Error, Deserialize, Deserializer, Serializer};

    use super::{format_rational, parse_rational, Rational};

    pub fn serialize<S: Serializer>(q: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&format_rational(q))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let raw = RawRational::deserialize(d)?;
        raw.into_rational().map_err(D::Error::custom)
    }

    /// Accepts either a string or a JSON integer.
    #[derive(Deserialize)]
    #[serde(untagged)]
    pub(crate) enum RawRational {
        Str(String),
        Int(i64),
    }

    impl RawRational {
        pub(crate) fn into_rational(self) -> Result<Rational, String> {
            match self {
                RawRational::Str(s) => parse_rational(&s).map_err(|e| e.to_string()),
                RawRational::Int(n) => Ok(Rational::from_integer(n.into())),
            }
        }
    }
}

/// Serde adapter for `Vec<Rational>` as a list of `"p/q"` strings.
pub mod rational_vec_serde {
    use serde::{de::Error, ser::SerializeSeq, Deserialize, Deserializer, Serializer};

    use super::rational_serde::RawRational;
    use super::{format_rational, Rational};

    pub fn serialize<S: Serializer>(v: &[Rational], s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(v.len()))?;
        for q in v {
            seq.serialize_element(&format_rational(q))?;
        }
        seq.end()
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Rational>, D::Error> {
        let raw = Vec::<RawRational>::deserialize(d)?;
        raw.into_iter()
            .map(|r| r.into_rational().map_err(D::Error::custom))
            .collect()
    }
}
