//! Coefficient domains.
//!
//! All of the algebra in this crate is written against [`Scalar`], a field
//! of characteristic zero. The exact instance is [`BigRational`]; `f64` and
//! `f32` are provided for quick numerical experiments, where every exactness
//! statement in the documentation degrades to "up to rounding".

use std::fmt::{Debug, Display};
use std::ops::Neg;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{FromPrimitive, Num, Signed, ToPrimitive};

/// A coefficient field of characteristic zero.
pub trait Scalar:
    Clone + Debug + Display + PartialEq + Num + Signed + Neg<Output = Self> + Send + Sync + 'static
{
    fn from_int(n: i64) -> Self;

    /// Embeds an exact rational. Lossy for floating-point scalars.
    fn from_rational(q: &BigRational) -> Self;

    /// True when arithmetic is exact, so that equality tests are meaningful.
    fn is_exact() -> bool;

    fn from_u64(n: u64) -> Self {
        Self::from_rational(&BigRational::from_integer(BigInt::from(n)))
    }
}

impl Scalar for BigRational {
    fn from_int(n: i64) -> Self {
        BigRational::from_integer(BigInt::from(n))
    }

    fn from_rational(q: &BigRational) -> Self {
        q.clone()
    }

    fn is_exact() -> bool {
        true
    }
}

macro_rules! impl_float_scalar {
    ($f:ty) => {
        impl Scalar for $f {
            fn from_int(n: i64) -> Self {
                n as $f
            }

            fn from_rational(q: &BigRational) -> Self {
                match (q.numer().to_f64(), q.denom().to_f64()) {
                    (Some(n), Some(d)) => (n / d) as $f,
                    _ => <$f>::from_f64(q.to_f64().unwrap_or(<f64>::NAN)).unwrap_or(<$f>::NAN),
                }
            }

            fn is_exact() -> bool {
                false
            }
        }
    };
}

impl_float_scalar!(f64);
impl_float_scalar!(f32);

/// Raises a scalar to a nonnegative integer power by repeated squaring.
pub fn pow_scalar<C: Scalar>(base: &C, mut exp: u32) -> C {
    let mut acc = C::one();
    let mut b = base.clone();
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * b.clone();
        }
        exp >>= 1;
        if exp > 0 {
            b = b.clone() * b;
        }
    }
    acc
}
