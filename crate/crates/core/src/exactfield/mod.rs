//! Exact scalar arithmetic: rationals, rational functions in the formal
//! parameter κ, and fixed-precision complex floats for the KZ numerics.

mod bigcomplex;
mod field;
mod ratfunc;
mod rational;
mod sampling;

pub use bigcomplex::{BigComplex, DEFAULT_PRECISION};
pub use field::Field;
pub use ratfunc::{Poly, RatFuncKappa};
pub use rational::{format_rational, parse_rational, rat, rational_serde, rational_vec_serde, Rational};
pub use sampling::{random_point_avoiding, Point, MAX_DRAWS};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FieldError {
    #[error("denominator vanishes at kappa = {0}")]
    PoleAtKappa(String),
    #[error("kappa must be nonzero")]
    ZeroKappa,
    #[error("no admissible point found in {draws} draws from [-{bound}, {bound}]^{dim}")]
    ExhaustedRetries { draws: usize, bound: u64, dim: usize },
    #[error("bound must be at least 1")]
    ZeroBound,
    #[error("cannot parse rational {0:?}")]
    Parse(String),
    #[error("division by zero")]
    DivisionByZero,
}

/// Evaluates a rational function of κ at `k`.
pub fn specialize_kappa(x: &RatFuncKappa, k: &Rational) -> Result<Rational, FieldError> {
    use num_traits::Zero;
    if k.is_zero() {
        return Err(FieldError::ZeroKappa);
    }
    let den = x.denominator().eval(k);
    if den.is_zero() {
        return Err(FieldError::PoleAtKappa(format_rational(k)));
    }
    Ok(x.numerator().eval(k) / den)
}
