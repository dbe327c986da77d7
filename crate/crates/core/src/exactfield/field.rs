use std::fmt::Debug;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use super::Rational;

/// Scalars the exact linear algebra runs over.
///
/// Implemented for [`Rational`] (the default, κ specialized) and for
/// [`super::RatFuncKappa`] (symbolic κ, small instances only).
pub trait Field:
    Clone
    + Debug
    + PartialEq
    + Send
    + Sync
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
    + Zero
    + One
{
    fn from_rational(q: &Rational) -> Self;

    fn from_i64(n: i64) -> Self {
        Self::from_rational(&Rational::from_integer(n.into()))
    }

    /// Size used to rank pivot candidates; smaller is preferred.
    fn height(&self) -> u64;

    fn is_one(&self) -> bool {
        *self == Self::one()
    }
}

impl Field for Rational {
    fn from_rational(q: &Rational) -> Self {
        q.clone()
    }
    fn height(&self) -> u64 {
        self.numer().abs().bits().max(self.denom().bits())
    }
}
