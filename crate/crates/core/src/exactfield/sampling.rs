use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{FieldError, Rational};
use crate::arrangement::AffineForm;

/// A point of affine space with exact coordinates.
pub type Point = Vec<Rational>;

/// Number of draws before [`random_point_avoiding`] gives up.
pub const MAX_DRAWS: usize = 1000;

/// Draws an integer point from `[-bound, bound]^dim` at which no listed form
/// vanishes. Deterministic in `seed`.
pub fn random_point_avoiding(
    forms: &[AffineForm],
    dim: usize,
    bound: u64,
    seed: u64,
) -> Result<Point, FieldError> {
    if bound == 0 {
        return Err(FieldError::ZeroBound);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let b = bound as i64;
    for _ in 0..MAX_DRAWS {
        let p: Point = (0..dim)
            .map(|_| Rational::from_integer(BigInt::from(rng.gen_range(-b..=b))))
            .collect();
        if forms.iter().all(|f| !num_traits::Zero::is_zero(&f.eval(&p))) {
            return Ok(p);
        }
    }
    Err(FieldError::ExhaustedRetries { draws: MAX_DRAWS, bound, dim })
}
