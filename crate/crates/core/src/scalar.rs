//! Exact coefficient fields.
//!
//! Every algorithm in this crate is generic over [`Scalar`], which is only
//! implemented for exact rational types built on `num_rational::Ratio`.
//! Floating point types deliberately do not satisfy the bound: confluence
//! verdicts depend on exact cancellation.

use std::fmt::{Debug, Display};

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{Num, Signed};

/// An exact field of coefficients.
pub trait Scalar:
    Clone + PartialEq + PartialOrd + Debug + Display + Num + Signed + Send + Sync + 'static
{
    /// Builds the scalar `n` (small integers only; used for constants such as `2`).
    fn from_i64(n: i64) -> Self;
}

impl<T> Scalar for Ratio<T>
where
    T: Clone + Integer + Signed + Debug + Display + Send + Sync + From<i32> + 'static,
{
    fn from_i64(n: i64) -> Self {
        // Ratio over i32-constructible integers; split to stay inside i32.
        let base = T::from(1 << 30);
        let mut rest = n.unsigned_abs();
        let mut acc = T::zero();
        let mut place = T::one();
        while rest > 0 {
            let digit = (rest % (1 << 30)) as i32;
            acc = acc + place.clone() * T::from(digit);
            place = place * base.clone();
            rest /= 1 << 30;
        }
        let r = Ratio::from_integer(acc);
        if n < 0 {
            -r
        } else {
            r
        }
    }
}

/// `2^-k` as an exact scalar.
pub fn pow2_inv<F: Scalar>(k: u32) -> F {
    let two = F::one() + F::one();
    let mut p = F::one();
    for _ in 0..k {
        p = p * two.clone();
    }
    F::one() / p
}
