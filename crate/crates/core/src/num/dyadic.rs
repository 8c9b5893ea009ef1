//! Arbitrary-precision dyadic floats `mant * 2^exp` with directed rounding.
//!
//! These are the endpoint type of certified enclosures.  Every operation
//! either is exact or rounds in a caller-chosen direction, so intervals
//! built on top never silently lose containment.

use alloc::string::String;
use core::cmp::Ordering;
use core::fmt;

use num_bigint::{BigInt, Sign};
use num_traits::{One, Signed, Zero};

use super::Rat;

/// Rounding direction for lossy operations.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Round {
    /// Result is `<=` the exact value.
    Floor,
    /// Result is `>=` the exact value.
    Ceil,
}

impl Round {
    pub fn flip(self) -> Round {
        match self {
            Round::Floor => Round::Ceil,
            Round::Ceil => Round::Floor,
        }
    }
}

/// A dyadic number `mant * 2^exp`, normalized so that `mant` is odd or zero.
#[derive(Clone, PartialEq, Eq)]
pub struct Dyadic {
    mant: BigInt,
    exp: i64,
}

impl Dyadic {
    pub fn zero() -> Self {
        Dyadic { mant: BigInt::zero(), exp: 0 }
    }

    pub fn one() -> Self {
        Dyadic { mant: BigInt::one(), exp: 0 }
    }

    pub fn from_int(n: i64) -> Self {
        Dyadic::new(BigInt::from(n), 0)
    }

    /// `mant * 2^exp`, normalizing trailing zero bits into the exponent.
    pub fn new(mant: BigInt, exp: i64) -> Self {
        let mut d = Dyadic { mant, exp };
        d.normalize();
        d
    }

    /// `2^e`.
    pub fn pow2(e: i64) -> Self {
        Dyadic { mant: BigInt::one(), exp: e }
    }

    fn normalize(&mut self) {
        if self.mant.is_zero() {
            self.exp = 0;
            return;
        }
        let tz = self.mant.trailing_zeros().unwrap_or(0);
        if tz > 0 {
            self.mant >>= tz;
            self.exp += tz as i64;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.mant.is_zero()
    }

    pub fn is_positive(&self) -> bool {
        self.mant.is_positive()
    }

    pub fn is_negative(&self) -> bool {
        self.mant.is_negative()
    }

    pub fn signum(&self) -> i32 {
        match self.mant.sign() {
            Sign::Minus => -1,
            Sign::NoSign => 0,
            Sign::Plus => 1,
        }
    }

    /// Number of bits of the mantissa.
    pub fn mant_bits(&self) -> u64 {
        self.mant.bits()
    }

    /// Position of the most significant bit: `2^(msb-1) <= |x| < 2^msb`.
    /// Only meaningful for nonzero values.
    pub fn msb(&self) -> i64 {
        self.exp + self.mant.bits() as i64
    }

    pub fn neg(&self) -> Dyadic {
        Dyadic { mant: -self.mant.clone(), exp: self.exp }
    }

    pub fn abs(&self) -> Dyadic {
        Dyadic { mant: self.mant.abs(), exp: self.exp }
    }

    /// Exact doubling/halving by powers of two.
    pub fn mul_pow2(&self, e: i64) -> Dyadic {
        if self.is_zero() {
            return self.clone();
        }
        Dyadic { mant: self.mant.clone(), exp: self.exp + e }
    }

    /// Smallest representable step at precision `p` relative to this value.
    fn ulp_exp(&self, p: u32) -> i64 {
        self.msb() - p as i64
    }

    /// Round to at most `p` mantissa bits in direction `dir`.
    pub fn round(&self, p: u32, dir: Round) -> Dyadic {
        let bits = self.mant.bits();
        if bits <= p as u64 {
            return self.clone();
        }
        let drop = (bits - p as u64) as i64;
        let q = floor_shr(&self.mant, drop as u64);
        let exact = (&q << drop as u64) == self.mant;
        let mut m = q;
        if !exact && dir == Round::Ceil {
            m += 1;
        }
        Dyadic::new(m, self.exp + drop)
    }

    /// Exact addition.  Only safe when the exponents are close; use
    /// [`Dyadic::add_round`] in generic code.
    pub fn add_exact(&self, other: &Dyadic) -> Dyadic {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        let (a, b) = (self, other);
        if a.exp >= b.exp {
            let shift = (a.exp - b.exp) as u64;
            Dyadic::new((a.mant.clone() << shift) + &b.mant, b.exp)
        } else {
            let shift = (b.exp - a.exp) as u64;
            Dyadic::new((b.mant.clone() << shift) + &a.mant, a.exp)
        }
    }

    /// Directed addition at precision `p`.  Handles arbitrarily far-apart
    /// exponents without materializing huge mantissas.
    pub fn add_round(&self, other: &Dyadic, p: u32, dir: Round) -> Dyadic {
        if self.is_zero() {
            return other.round(p, dir);
        }
        if other.is_zero() {
            return self.round(p, dir);
        }
        let (big, small) = if self.msb() >= other.msb() { (self, other) } else { (other, self) };
        // If the small term is far below the ulp of the rounded result, fold
        // it into a one-ulp directional nudge.
        let gap = big.msb() - small.msb();
        if gap > p as i64 + 8 {
            let r = big.round(p, dir);
            return match dir {
                Round::Floor if small.is_negative() => r.nudge(-1, p),
                Round::Ceil if small.is_positive() => r.nudge(1, p),
                _ => r,
            };
        }
        big.add_exact(small).round(p, dir)
    }

    /// Directed subtraction at precision `p`.
    pub fn sub_round(&self, other: &Dyadic, p: u32, dir: Round) -> Dyadic {
        self.add_round(&other.neg(), p, dir)
    }

    /// Exact subtraction (same caveats as [`Dyadic::add_exact`]).
    pub fn sub_exact(&self, other: &Dyadic) -> Dyadic {
        self.add_exact(&other.neg())
    }

    /// Adjust by `step` ulps at precision `p` (used for directional nudges).
    fn nudge(&self, step: i64, p: u32) -> Dyadic {
        if self.is_zero() {
            return Dyadic::new(BigInt::from(step), -(p as i64) - 8);
        }
        let ue = self.ulp_exp(p);
        let shift = self.exp - ue;
        debug_assert!(shift >= 0);
        let m = (self.mant.clone() << shift as u64) + BigInt::from(step);
        Dyadic::new(m, ue)
    }

    /// Directed multiplication at precision `p`.
    pub fn mul_round(&self, other: &Dyadic, p: u32, dir: Round) -> Dyadic {
        Dyadic::new(&self.mant * &other.mant, self.exp + other.exp).round(p, dir)
    }

    /// Exact multiplication.
    pub fn mul_exact(&self, other: &Dyadic) -> Dyadic {
        Dyadic::new(&self.mant * &other.mant, self.exp + other.exp)
    }

    /// Directed division at precision `p`; `other` must be nonzero.
    pub fn div_round(&self, other: &Dyadic, p: u32, dir: Round) -> Dyadic {
        assert!(!other.is_zero(), "division by zero dyadic");
        if self.is_zero() {
            return Dyadic::zero();
        }
        // Scale the numerator so the integer quotient carries p + 2 bits.
        let scale = p as i64 + 2 + other.mant.bits() as i64 - self.mant.bits() as i64;
        let scale = scale.max(0) as u64;
        let num = self.mant.clone() << scale;
        let (q, r) = num_integer::Integer::div_rem(&num, &other.mant);
        // div_rem truncates toward zero; fix up to the requested direction.
        let exact = r.is_zero();
        let mut q = q;
        if !exact {
            let quotient_negative = (self.mant.sign() == Sign::Minus) != (other.mant.sign() == Sign::Minus);
            match dir {
                Round::Floor if quotient_negative => q -= 1,
                Round::Ceil if !quotient_negative => q += 1,
                _ => {}
            }
        }
        Dyadic::new(q, self.exp - other.exp - scale as i64).round(p, dir)
    }

    /// Exact comparison.
    pub fn cmp_dyadic(&self, other: &Dyadic) -> Ordering {
        let s = self.signum().cmp(&other.signum());
        if s != Ordering::Equal {
            return s;
        }
        if self.signum() == 0 {
            return Ordering::Equal;
        }
        // Same nonzero sign: compare magnitudes via msb first to avoid huge
        // alignment shifts.
        let positive = self.signum() > 0;
        let m = self.msb().cmp(&other.msb());
        if m != Ordering::Equal {
            return if positive { m } else { m.reverse() };
        }
        // Equal msb: the alignment shift is bounded by the mantissa sizes.
        if self.exp >= other.exp {
            let shift = (self.exp - other.exp) as u64;
            (self.mant.clone() << shift).cmp(&other.mant)
        } else {
            let shift = (other.exp - self.exp) as u64;
            self.mant.cmp(&(other.mant.clone() << shift))
        }
    }

    pub fn min_dyadic(a: &Dyadic, b: &Dyadic) -> Dyadic {
        if a.cmp_dyadic(b) == Ordering::Greater { b.clone() } else { a.clone() }
    }

    pub fn max_dyadic(a: &Dyadic, b: &Dyadic) -> Dyadic {
        if a.cmp_dyadic(b) == Ordering::Less { b.clone() } else { a.clone() }
    }

    /// The normalized mantissa as a rational in `[1, 2)` (absolute value);
    /// `self = sign * mantissa_rat * 2^(msb - 1)`.  Cheap even when the
    /// exponent is astronomically large.
    pub fn mantissa_rat(&self) -> Rat {
        assert!(!self.is_zero());
        let bits = self.mant.bits();
        Rat::new(self.mant.abs(), BigInt::one() << (bits - 1))
    }

    /// Exact conversion to a rational.
    pub fn to_rat(&self) -> Rat {
        if self.exp >= 0 {
            Rat::from_integer(self.mant.clone() << self.exp as u64)
        } else {
            Rat::new(self.mant.clone(), BigInt::one() << (-self.exp) as u64)
        }
    }

    /// Directed conversion from a rational at precision `p`.  Exact when the
    /// denominator is a power of two and fits in `p` bits.
    pub fn from_rat(r: &Rat, p: u32, dir: Round) -> Dyadic {
        if r.is_zero() {
            return Dyadic::zero();
        }
        let num = r.numer();
        let den = r.denom();
        debug_assert!(den.is_positive());
        let scale = p as i64 + 2 + den.bits() as i64 - num.bits() as i64;
        let scale = scale.max(0) as u64;
        let shifted = num.clone() << scale;
        let (q, rem) = num_integer::Integer::div_rem(&shifted, den);
        let mut q = q;
        if !rem.is_zero() {
            let negative = num.sign() == Sign::Minus;
            match dir {
                Round::Floor if negative => q -= 1,
                Round::Ceil if !negative => q += 1,
                _ => {}
            }
        }
        Dyadic::new(q, -(scale as i64)).round(p, dir)
    }

    /// `self <= 2^e`?
    pub fn leq_pow2(&self, e: i64) -> bool {
        self.cmp_dyadic(&Dyadic::pow2(e)) != Ordering::Greater
    }

    /// Decimal rendering with `digits` significant digits, rounding in
    /// direction `dir` so enclosure endpoints stay enclosing when printed.
    pub fn to_decimal(&self, digits: u32, dir: Round) -> String {
        crate::num::interval::decimal_of_rat(&self.to_rat(), digits, dir)
    }
}

/// Floor shift-right for `BigInt` (num-bigint's `>>` already floors).
fn floor_shr(m: &BigInt, k: u64) -> BigInt {
    m.clone() >> k
}

impl fmt::Debug for Dyadic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}*2^{}", self.mant, self.exp)
    }
}

impl fmt::Display for Dyadic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_rat())
    }
}
