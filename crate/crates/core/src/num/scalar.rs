//! The two arithmetic modes of the toolkit.
//!
//! `Exact` scalars are arbitrary-precision rationals: equality is
//! decidable, so ties between orbit integrals can be resolved.  `Interval`
//! scalars are certified dyadic enclosures: equality is only refutable, so
//! downstream classification can return `Undetermined` instead of guessing.

use core::cmp::Ordering;
use core::fmt;

use num_traits::Zero;

use super::{Enclosure, Rat};

#[derive(Clone, Debug, PartialEq)]
pub enum Scalar {
    Exact(Rat),
    Interval(Enclosure),
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar::Exact(Rat::zero())
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, Scalar::Exact(_))
    }

    pub fn as_exact(&self) -> Option<&Rat> {
        match self {
            Scalar::Exact(r) => Some(r),
            Scalar::Interval(_) => None,
        }
    }

    /// Exact rational lower endpoint (the value itself in exact mode).
    pub fn lo_rat(&self) -> Rat {
        match self {
            Scalar::Exact(r) => r.clone(),
            Scalar::Interval(e) => e.lo_rat(),
        }
    }

    /// Exact rational upper endpoint (the value itself in exact mode).
    pub fn hi_rat(&self) -> Rat {
        match self {
            Scalar::Exact(r) => r.clone(),
            Scalar::Interval(e) => e.hi_rat(),
        }
    }

    pub fn width(&self) -> Rat {
        self.hi_rat() - self.lo_rat()
    }

    /// The true value is certainly `<` the other's.
    pub fn certainly_lt(&self, other: &Scalar) -> bool {
        self.hi_rat() < other.lo_rat()
    }

    /// The two enclosures permit equality.
    pub fn possibly_eq(&self, other: &Scalar) -> bool {
        self.lo_rat() <= other.hi_rat() && other.lo_rat() <= self.hi_rat()
    }

    /// Total order on exact scalars; `None` when intervals overlap.
    pub fn try_cmp(&self, other: &Scalar) -> Option<Ordering> {
        if let (Scalar::Exact(a), Scalar::Exact(b)) = (self, other) {
            return Some(a.cmp(b));
        }
        if self.certainly_lt(other) {
            Some(Ordering::Less)
        } else if other.certainly_lt(self) {
            Some(Ordering::Greater)
        } else {
            None
        }
    }

    pub fn add_rat(&self, r: &Rat, p: u32) -> Scalar {
        match self {
            Scalar::Exact(a) => Scalar::Exact(a + r),
            Scalar::Interval(e) => Scalar::Interval(e.add(&Enclosure::from_rat(r, p + 8), p)),
        }
    }

    pub fn scale_rat(&self, r: &Rat, p: u32) -> Scalar {
        match self {
            Scalar::Exact(a) => Scalar::Exact(a * r),
            Scalar::Interval(e) => Scalar::Interval(e.scale_rat(r, p)),
        }
    }

    pub fn neg(&self) -> Scalar {
        match self {
            Scalar::Exact(a) => Scalar::Exact(-a.clone()),
            Scalar::Interval(e) => Scalar::Interval(e.neg()),
        }
    }

    /// Convert to an enclosure, outward at `p` bits when not dyadic.
    pub fn to_enclosure(&self, p: u32) -> Enclosure {
        match self {
            Scalar::Exact(r) => Enclosure::from_rat(r, p),
            Scalar::Interval(e) => e.clone(),
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Exact(r) => write!(f, "{r}"),
            Scalar::Interval(e) => write!(f, "{e}"),
        }
    }
}
