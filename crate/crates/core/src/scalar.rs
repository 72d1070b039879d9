//! Exact integer scalars used by the closed-form counting formulas.
//!
//! Every quantity in this crate is an exact non-negative integer. The
//! closed forms (powers like `((p+1)/2)^l`) are written once against the
//! [`Count`] trait and instantiated with a machine word or with an
//! arbitrary-precision integer; see the aliases at the crate root.

use std::fmt::{Debug, Display};
use std::hash::Hash;
use std::str::FromStr;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{CheckedAdd, CheckedMul, CheckedSub, FromPrimitive, One, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// An exact, non-negative integer type.
pub trait Count:
    Clone
    + Debug
    + Display
    + Ord
    + Hash
    + Send
    + Sync
    + Zero
    + One
    + Integer
    + CheckedAdd
    + CheckedSub
    + CheckedMul
    + FromPrimitive
    + ToPrimitive
    + FromStr
    + 'static
{
    fn from_u64_exact(n: u64) -> Result<Self> {
        Self::from_u64(n).ok_or(Error::Overflow("conversion from u64"))
    }

    fn add_exact(&self, rhs: &Self) -> Result<Self> {
        self.checked_add(rhs).ok_or(Error::Overflow("addition"))
    }

    fn sub_exact(&self, rhs: &Self) -> Result<Self> {
        self.checked_sub(rhs).ok_or(Error::Overflow("subtraction"))
    }

    fn mul_exact(&self, rhs: &Self) -> Result<Self> {
        self.checked_mul(rhs).ok_or(Error::Overflow("multiplication"))
    }

    /// `self^exp` by repeated squaring, failing instead of wrapping.
    fn pow_exact(&self, mut exp: u64) -> Result<Self> {
        let mut base = self.clone();
        let mut acc = Self::one();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc.mul_exact(&base)?;
            }
            exp >>= 1;
            if exp > 0 {
                base = base.mul_exact(&base)?;
            }
        }
        Ok(acc)
    }

    /// Division that must leave no remainder.
    fn quot_exact(&self, rhs: &Self) -> Result<Self> {
        let (q, r) = self.div_rem(rhs);
        if r.is_zero() {
            Ok(q)
        } else {
            Err(Error::InconsistentMultiplicities(format!(
                "{self} is not divisible by {rhs}"
            )))
        }
    }

    fn to_usize_exact(&self) -> Result<usize> {
        self.to_usize().ok_or(Error::Overflow("conversion to usize"))
    }
}

impl Count for u32 {}
impl Count for u64 {}
impl Count for u128 {}
impl Count for usize {}
impl Count for BigUint {}
