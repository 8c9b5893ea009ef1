//! Numeric tower: exact rationals, dyadic floats with directed rounding,
//! certified dyadic intervals, and the two-mode scalar used throughout.

pub mod dyadic;
pub mod interval;
pub mod scalar;

pub use dyadic::{Dyadic, Round};
pub use interval::Enclosure;
pub use scalar::Scalar;

/// Exact arbitrary-precision rational.
pub type Rat = num_rational::BigRational;

pub use num_bigint::BigInt;
use num_traits::{One, Zero};

/// `p/q` as a [`Rat`] from machine integers.
pub fn rat(p: i64, q: i64) -> Rat {
    Rat::new(BigInt::from(p), BigInt::from(q))
}

/// `n` as a [`Rat`].
pub fn rat_int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// `2^e` as a [`Rat`] (`e` may be negative).
pub fn rat_pow2(e: i64) -> Rat {
    if e >= 0 {
        Rat::from_integer(BigInt::one() << e as usize)
    } else {
        Rat::new(BigInt::one(), BigInt::one() << (-e) as usize)
    }
}

/// True iff `r` is exactly representable as a dyadic (denominator a power
/// of two).
pub fn is_dyadic(r: &Rat) -> bool {
    let mut d = r.denom().clone();
    if d.is_zero() {
        return false;
    }
    while !d.bit(0) && !d.is_zero() {
        d >>= 1;
    }
    d.is_one()
}
