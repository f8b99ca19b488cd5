//! Floating-point abstraction for the reward arithmetic.

use std::fmt::{Debug, Display};

use num_traits::{Float, FromPrimitive};

/// Real number type rewards and bonuses are computed in.
pub trait Scalar:
    Float + FromPrimitive + Debug + Display + Default + Send + Sync + 'static
{
    fn lit(v: f64) -> Self {
        Self::from_f64(v).expect("literal representable in scalar type")
    }

    fn from_count(n: u32) -> Self {
        Self::from_u32(n).expect("count representable in scalar type")
    }
}

impl Scalar for f32 {}
impl Scalar for f64 {}
