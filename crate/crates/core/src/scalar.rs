use std::fmt::{Debug, Display, LowerExp};

use num_traits::{Float, FromPrimitive};

/// Working scalar for symbolic coefficients and numeric evaluation: `f32` or `f64`.
///
/// Everything in this crate is generic over `Scalar`; the crate root exports
/// `f64` aliases for the common types.
pub trait Scalar:
    Float + FromPrimitive + Display + LowerExp + Debug + Send + Sync + 'static
{
}

impl<T> Scalar for T where
    T: Float + FromPrimitive + Display + LowerExp + Debug + Send + Sync + 'static
{
}

/// Converts an `f64` literal into the working scalar type.
pub fn lit<T: Scalar>(x: f64) -> T {
    T::from_f64(x).expect("f64 literal must convert into the scalar type")
}
