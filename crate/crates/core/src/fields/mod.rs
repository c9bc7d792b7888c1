//! Exact coefficient fields and the differential rings built on them.
//!
//! The tower is
//!
//! * [`Scalar`]: elements of a cyclotomic field `Q(ζ_N)` (the constant field `k`);
//! * [`Param`]: rational functions in `t` over `k`, the finitely presented stand-in
//!   for `K = k((t))` carrying `∂_t = d/dt`;
//! * [`Fx`]: rational functions in `x` over `K`, with `∂ = d/dx` and `∂_t` acting
//!   on coefficients;
//! * [`Series`]: truncated Laurent series, nested once to give [`TwoVarLaurent`],
//!   the local fields `k((z−q))((t))`;
//! * [`LogExt`]: `K(x)` adjoined finitely many `log(x−β)`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::Result;

pub mod bivariate;
pub mod logext;
pub mod poly;
pub mod ratfunc;
pub mod scalar;
pub mod series;

pub use bivariate::{Agreement, TwoVarLaurent};
pub use logext::LogExt;
pub use poly::Poly;
pub use ratfunc::{Fx, Param, RatFunc};
pub use scalar::Scalar;
pub use series::{Coeff, Series};

/// Rational numbers.
pub type Q = BigRational;

/// A commutative field with exact equality.
pub trait Field:
    Clone
    + PartialEq
    + fmt::Debug
    + fmt::Display
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn inv(&self) -> Option<Self>;
    fn from_rational(q: &Q) -> Self;

    fn is_one(&self) -> bool {
        *self == Self::one()
    }

    fn from_int(n: i64) -> Self {
        Self::from_rational(&Q::from_integer(BigInt::from(n)))
    }

    fn checked_div(&self, other: &Self) -> Option<Self> {
        other.inv().map(|i| self.clone() * i)
    }
}

/// A field carrying the parameter derivation `∂_t`.
pub trait DiffField: Field {
    fn dt(&self) -> Self;
}

/// A module over a differential field `K` on which `∂_t` acts compatibly;
/// operators in `K[∂_t]` can be applied to its elements.
pub trait DtModule<K: DiffField>: Clone {
    fn zero_like(&self) -> Self;
    fn plus(&self, other: &Self) -> Self;
    fn scale(&self, c: &K) -> Self;
    fn dt(&self) -> Result<Self>;
}

impl Field for Q {
    fn zero() -> Self {
        <Q as Zero>::zero()
    }
    fn one() -> Self {
        <Q as One>::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn inv(&self) -> Option<Self> {
        if Zero::is_zero(self) {
            None
        } else {
            Some(self.recip())
        }
    }
    fn from_rational(q: &Q) -> Self {
        q.clone()
    }
}

impl<K: DiffField> DtModule<K> for K {
    fn zero_like(&self) -> Self {
        K::zero()
    }
    fn plus(&self, other: &Self) -> Self {
        self.clone() + other.clone()
    }
    fn scale(&self, c: &K) -> Self {
        c.clone() * self.clone()
    }
    fn dt(&self) -> Result<Self> {
        Ok(DiffField::dt(self))
    }
}

/// Shorthand for the rational `n/d`.
pub fn rat(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

/// Writes a rational the way the expression grammar reads it back.
pub(crate) fn fmt_rational(q: &Q, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    if q.is_integer() {
        write!(f, "{}", q.numer())
    } else if q.is_negative() {
        write!(f, "-{}/{}", -q.numer(), q.denom())
    } else {
        write!(f, "{}/{}", q.numer(), q.denom())
    }
}
