//! Scalar fields used by the evaluation and interpolation code.

use std::fmt::Debug;

use num_bigint::BigInt;
use num_rational::{BigRational, Ratio};
use num_traits::{FromPrimitive, Num, Signed};

/// A field the box interpolation can run over. Exact results need
/// [`BigRational`]; `f64` is accepted for quick experiments.
pub trait Field: Num + Signed + Clone + Debug + FromPrimitive + Send + Sync {
    fn from_bigint(v: &BigInt) -> Self;
}

impl Field for BigRational {
    fn from_bigint(v: &BigInt) -> Self {
        Ratio::from_integer(v.clone())
    }
}

impl Field for Ratio<i128> {
    fn from_bigint(v: &BigInt) -> Self {
        use num_traits::ToPrimitive;
        Ratio::from_integer(v.to_i128().expect("value fits in i128"))
    }
}

impl Field for f64 {
    fn from_bigint(v: &BigInt) -> Self {
        use num_traits::ToPrimitive;
        v.to_f64().unwrap_or(f64::NAN)
    }
}

impl Field for f32 {
    fn from_bigint(v: &BigInt) -> Self {
        use num_traits::ToPrimitive;
        v.to_f32().unwrap_or(f32::NAN)
    }
}

/// `x (x-1) ... (x-s+1)`, the falling factorial of length `s`.
pub fn falling<T: Field>(x: &T, s: u32) -> T {
    let mut acc = T::one();
    let mut term = x.clone();
    for _ in 0..s {
        acc = acc * term.clone();
        term = term - T::one();
    }
    acc
}

pub fn factorial<T: Field>(s: u32) -> T {
    (1..=s).fold(T::one(), |acc, k| acc * T::from_u32(k).unwrap())
}
