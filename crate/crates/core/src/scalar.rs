//! Integer coefficient types for the exact amplitude ring.

use std::fmt::{Debug, Display};
use std::hash::Hash;

use num_integer::Integer;
use num_traits::{CheckedAdd, CheckedMul, CheckedSub, FromPrimitive, Signed, ToPrimitive};

use crate::amplitude::ArithError;

/// Signed integer usable as a coefficient of a cyclotomic integer.
///
/// Every arithmetic step goes through the checked operations, so fixed-width
/// coefficients report overflow instead of wrapping. [`num_bigint::BigInt`]
/// never overflows.
pub trait Coeff:
    Clone
    + Debug
    + Display
    + Hash
    + Integer
    + Signed
    + CheckedAdd
    + CheckedSub
    + CheckedMul
    + FromPrimitive
    + ToPrimitive
    + Send
    + Sync
    + 'static
{
    fn add_c(&self, other: &Self) -> Result<Self, ArithError> {
        self.checked_add(other).ok_or(ArithError::Overflow)
    }

    fn sub_c(&self, other: &Self) -> Result<Self, ArithError> {
        self.checked_sub(other).ok_or(ArithError::Overflow)
    }

    fn mul_c(&self, other: &Self) -> Result<Self, ArithError> {
        self.checked_mul(other).ok_or(ArithError::Overflow)
    }

    fn neg_c(&self) -> Result<Self, ArithError> {
        Self::zero().checked_sub(self).ok_or(ArithError::Overflow)
    }

    fn two() -> Self {
        Self::one() + Self::one()
    }

    /// Exact halving; the caller guarantees the value is even.
    fn half(&self) -> Self {
        self.div_floor(&Self::two())
    }

    /// `2^exp`, checked.
    fn pow2(exp: u32) -> Result<Self, ArithError> {
        let two = Self::two();
        let mut out = Self::one();
        for _ in 0..exp {
            out = out.mul_c(&two)?;
        }
        Ok(out)
    }

    fn as_f64(&self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

impl<T> Coeff for T where
    T: Clone
        + Debug
        + Display
        + Hash
        + Integer
        + Signed
        + CheckedAdd
        + CheckedSub
        + CheckedMul
        + FromPrimitive
        + ToPrimitive
        + Send
        + Sync
        + 'static
{
}

/// Convert a small machine integer into any coefficient type.
pub(crate) fn c<C: Coeff>(v: i64) -> C {
    C::from_i64(v).expect("small constant fits every coefficient type")
}
