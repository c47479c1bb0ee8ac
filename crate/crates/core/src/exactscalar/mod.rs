//! Exact scalars: big rationals, univariate polynomials, and rational
//! functions in one formal variable with limits at 1.

mod poly;
mod ratfunc;
mod rational;

pub use poly::UniPoly;
pub use ratfunc::RatFunc;
pub use rational::Rational;

use crate::error::Result;
use std::fmt::Debug;
use std::ops::{Add, Mul, Neg, Sub};

/// Rational functions in q over the rationals.
pub type RatFuncQ = RatFunc<Rational>;

/// A commutative field with exact zero test.  Every q,t-formula in the crate
/// is written once against this trait and runs over plain rationals, over
/// rational functions in a formal q, or over a tower of the two.
pub trait Scalar:
    Clone
    + Debug
    + PartialEq
    + Send
    + Sync
    + 'static
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
    + for<'a> Add<&'a Self, Output = Self>
    + for<'a> Sub<&'a Self, Output = Self>
    + for<'a> Mul<&'a Self, Output = Self>
{
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn from_rational(r: &Rational) -> Self;
    /// Multiplicative inverse; `DivisionByZero` on zero.
    fn inv(&self) -> Result<Self>;
    /// A string that is equal for identical representations.  Used as a
    /// memo key; equal values with different representations may differ.
    fn key(&self) -> String;

    /// Optional canonicalisation applied to memoised values; a no-op unless
    /// the representation can shrink.
    fn simplify(&self) -> Self {
        self.clone()
    }

    fn from_i64(v: i64) -> Self {
        Self::from_rational(&Rational::from(v))
    }

    fn is_one(&self) -> bool {
        (self.clone() - Self::one()).is_zero()
    }

    fn div(&self, other: &Self) -> Result<Self> {
        Ok(self.clone() * &other.inv()?)
    }

    fn powi(&self, e: i64) -> Result<Self> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut acc = Self::one();
        let mut b = base;
        let mut k = e.unsigned_abs();
        while k > 0 {
            if k & 1 == 1 {
                acc = acc * &b;
            }
            k >>= 1;
            if k > 0 {
                b = b.clone() * &b;
            }
        }
        Ok(acc)
    }
}
