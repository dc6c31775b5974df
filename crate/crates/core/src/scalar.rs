//! Floating-point abstraction shared by every metric, loss and gradient.

use std::fmt::{Debug, Display, LowerExp};
use std::iter::Sum;

use num_traits::{Float, FromPrimitive, ToPrimitive};
use serde::de::DeserializeOwned;
use serde::Serialize;

/// Real scalar the toolkit is generic over: `f32` or `f64`.
pub trait Scalar:
    Float
    + FromPrimitive
    + ToPrimitive
    + Sum
    + Default
    + Debug
    + Display
    + LowerExp
    + Serialize
    + DeserializeOwned
    + Send
    + Sync
    + 'static
{
    /// Lossy conversion from an `f64` literal.
    fn lit(v: f64) -> Self {
        Self::from_f64(v).expect("f64 literal representable in scalar type")
    }

    fn from_usize_lossy(n: usize) -> Self {
        Self::from_usize(n).expect("usize representable in scalar type")
    }

    fn to_f64_lossy(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }

    /// Sign with `sign(0) = 0`, unlike [`Float::signum`].
    fn sign0(self) -> Self {
        if self > Self::zero() {
            Self::one()
        } else if self < Self::zero() {
            -Self::one()
        } else {
            Self::zero()
        }
    }

    /// Decimal digits needed for a lossless text round-trip.
    const ROUND_TRIP_DIGITS: usize;
}

impl Scalar for f32 {
    const ROUND_TRIP_DIGITS: usize = 9;
}

impl Scalar for f64 {
    const ROUND_TRIP_DIGITS: usize = 17;
}

/// Sequential left-to-right sum. Reductions never reassociate, so results
/// are bitwise reproducible.
pub(crate) fn seq_sum<T: Scalar, I: IntoIterator<Item = T>>(it: I) -> T {
    it.into_iter().fold(T::zero(), |acc, v| acc + v)
}

pub(crate) fn l2_norm<T: Scalar>(v: &[T]) -> T {
    seq_sum(v.iter().map(|&x| x * x)).sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sign0_has_zero_at_zero() {
        assert_eq!(0.0f64.sign0(), 0.0);
        assert_eq!((-0.0f64).sign0(), 0.0);
        assert_eq!(3.0f32.sign0(), 1.0);
        assert_eq!((-2.0f64).sign0(), -1.0);
    }

    #[test]
    fn norm_of_pythagorean_pair() {
        assert_eq!(l2_norm(&[3.0f64, 4.0]), 5.0);
    }
}
