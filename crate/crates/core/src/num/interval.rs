//! Certified dyadic intervals.
//!
//! An [`Enclosure`] is a pair of dyadic numbers `[lo, hi]` guaranteed to
//! contain the real quantity it stands for.  All arithmetic rounds
//! outward; `exp` and `ln` carry explicit truncation bounds, so the
//! containment guarantee is end-to-end.

use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::dyadic::{Dyadic, Round};
use super::{rat_pow2, Rat};

/// A dyadic interval `[lo, hi]` certified to contain a real quantity.
#[derive(Clone, PartialEq, Eq)]
pub struct Enclosure {
    lo: Dyadic,
    hi: Dyadic,
}

impl Enclosure {
    pub fn new(lo: Dyadic, hi: Dyadic) -> Self {
        debug_assert!(lo.cmp_dyadic(&hi) != Ordering::Greater, "inverted enclosure");
        Enclosure { lo, hi }
    }

    pub fn point(d: Dyadic) -> Self {
        Enclosure { lo: d.clone(), hi: d }
    }

    pub fn zero() -> Self {
        Enclosure::point(Dyadic::zero())
    }

    pub fn from_int(n: i64) -> Self {
        Enclosure::point(Dyadic::from_int(n))
    }

    /// Enclose a rational, exactly when dyadic, else outward at `p` bits.
    pub fn from_rat(r: &Rat, p: u32) -> Self {
        Enclosure {
            lo: Dyadic::from_rat(r, p, Round::Floor),
            hi: Dyadic::from_rat(r, p, Round::Ceil),
        }
    }

    /// Enclose the rational interval `[lo, hi]` outward at `p` bits.
    pub fn from_rat_pair(lo: &Rat, hi: &Rat, p: u32) -> Self {
        debug_assert!(lo <= hi);
        Enclosure {
            lo: Dyadic::from_rat(lo, p, Round::Floor),
            hi: Dyadic::from_rat(hi, p, Round::Ceil),
        }
    }

    pub fn lo(&self) -> &Dyadic {
        &self.lo
    }

    pub fn hi(&self) -> &Dyadic {
        &self.hi
    }

    pub fn lo_rat(&self) -> Rat {
        self.lo.to_rat()
    }

    pub fn hi_rat(&self) -> Rat {
        self.hi.to_rat()
    }

    pub fn width(&self) -> Rat {
        self.hi.to_rat() - self.lo.to_rat()
    }

    /// `width <= 2^e`, without materializing huge rationals.
    pub fn width_leq_pow2(&self, e: i64) -> bool {
        self.hi.sub_round(&self.lo, 96, Round::Ceil).leq_pow2(e)
    }

    pub fn mid(&self) -> Dyadic {
        self.lo.add_round(&self.hi, 128, Round::Floor).mul_pow2(-1)
    }

    pub fn contains_rat(&self, r: &Rat) -> bool {
        self.lo.to_rat() <= *r && *r <= self.hi.to_rat()
    }

    pub fn contains(&self, other: &Enclosure) -> bool {
        self.lo.cmp_dyadic(&other.lo) != Ordering::Greater && self.hi.cmp_dyadic(&other.hi) != Ordering::Less
    }

    pub fn overlaps(&self, other: &Enclosure) -> bool {
        self.lo.cmp_dyadic(&other.hi) != Ordering::Greater && other.lo.cmp_dyadic(&self.hi) != Ordering::Greater
    }

    /// The true value is certainly strictly below every point of `other`.
    pub fn certainly_lt(&self, other: &Enclosure) -> bool {
        self.hi.cmp_dyadic(&other.lo) == Ordering::Less
    }

    pub fn neg(&self) -> Enclosure {
        Enclosure { lo: self.hi.neg(), hi: self.lo.neg() }
    }

    pub fn add(&self, other: &Enclosure, p: u32) -> Enclosure {
        Enclosure {
            lo: self.lo.add_round(&other.lo, p, Round::Floor),
            hi: self.hi.add_round(&other.hi, p, Round::Ceil),
        }
    }

    pub fn sub(&self, other: &Enclosure, p: u32) -> Enclosure {
        self.add(&other.neg(), p)
    }

    pub fn mul(&self, other: &Enclosure, p: u32) -> Enclosure {
        let cands = [
            (&self.lo, &other.lo),
            (&self.lo, &other.hi),
            (&self.hi, &other.lo),
            (&self.hi, &other.hi),
        ];
        let mut lo: Option<Dyadic> = None;
        let mut hi: Option<Dyadic> = None;
        for (a, b) in cands {
            let down = a.mul_round(b, p, Round::Floor);
            let up = a.mul_round(b, p, Round::Ceil);
            lo = Some(match lo {
                None => down,
                Some(c) => Dyadic::min_dyadic(&c, &down),
            });
            hi = Some(match hi {
                None => up,
                Some(c) => Dyadic::max_dyadic(&c, &up),
            });
        }
        Enclosure { lo: lo.unwrap(), hi: hi.unwrap() }
    }

    /// Division by an interval certainly `> 0`.
    pub fn div_pos(&self, other: &Enclosure, p: u32) -> Enclosure {
        assert!(other.lo.is_positive(), "div_pos requires a positive divisor");
        let lo = if self.lo.is_negative() {
            self.lo.div_round(&other.lo, p, Round::Floor)
        } else {
            self.lo.div_round(&other.hi, p, Round::Floor)
        };
        let hi = if self.hi.is_negative() {
            self.hi.div_round(&other.hi, p, Round::Ceil)
        } else {
            self.hi.div_round(&other.lo, p, Round::Ceil)
        };
        Enclosure { lo, hi }
    }

    /// Multiply by an exact rational.
    pub fn scale_rat(&self, r: &Rat, p: u32) -> Enclosure {
        let rd = Enclosure::from_rat(r, p + 8);
        self.mul(&rd, p)
    }

    /// Exact division by a positive integer, rounded outward.
    pub fn div_int(&self, n: i64, p: u32) -> Enclosure {
        assert!(n > 0);
        let d = Dyadic::from_int(n);
        Enclosure {
            lo: self.lo.div_round(&d, p, Round::Floor),
            hi: self.hi.div_round(&d, p, Round::Ceil),
        }
    }

    pub fn hull(&self, other: &Enclosure) -> Enclosure {
        Enclosure {
            lo: Dyadic::min_dyadic(&self.lo, &other.lo),
            hi: Dyadic::max_dyadic(&self.hi, &other.hi),
        }
    }

    pub fn intersect(&self, other: &Enclosure) -> Option<Enclosure> {
        let lo = Dyadic::max_dyadic(&self.lo, &other.lo);
        let hi = Dyadic::min_dyadic(&self.hi, &other.hi);
        if lo.cmp_dyadic(&hi) == Ordering::Greater {
            None
        } else {
            Some(Enclosure { lo, hi })
        }
    }

    /// Clamp the lower endpoint up to `floor` (for quantities known
    /// nonnegative, say).
    pub fn clamp_min(&self, floor: &Dyadic) -> Enclosure {
        Enclosure {
            lo: Dyadic::max_dyadic(&self.lo, floor),
            hi: Dyadic::max_dyadic(&self.hi, floor),
        }
    }

    /// Certified exponential: contains `e^x` for every `x` in `self`.
    pub fn exp(&self, p: u32) -> Enclosure {
        let lo = exp_rat_dir(&self.lo.to_rat(), p, Round::Floor);
        let hi = exp_rat_dir(&self.hi.to_rat(), p, Round::Ceil);
        Enclosure { lo, hi }
    }

    /// Certified logarithm; requires `lo > 0`.
    pub fn ln(&self, p: u32) -> crate::Result<Enclosure> {
        if !self.lo.is_positive() {
            return Err(crate::Error::InvalidInput(String::from(
                "ln of an interval touching zero",
            )));
        }
        Ok(Enclosure {
            lo: ln_dyadic_dir(&self.lo, p, Round::Floor),
            hi: ln_dyadic_dir(&self.hi, p, Round::Ceil),
        })
    }
}

impl fmt::Debug for Enclosure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{:?}, {:?}]", self.lo, self.hi)
    }
}

impl fmt::Display for Enclosure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.lo, self.hi)
    }
}

/// Certified enclosure of `e^x` for rational `x`, relative width `<= 2^-p`.
pub fn exp_rat(x: &Rat, p: u32) -> Enclosure {
    Enclosure {
        lo: exp_rat_dir(x, p, Round::Floor),
        hi: exp_rat_dir(x, p, Round::Ceil),
    }
}

fn exp_rat_dir(x: &Rat, p: u32, dir: Round) -> Dyadic {
    // Range reduction: r = x / 2^k with |r| <= 1/4, then square k times.
    let ax = x.abs();
    let mut k: i64 = 0;
    if ax > rat_pow2(-2) {
        // Smallest k with |x| / 2^k <= 1/4.
        let mut bound = rat_pow2(-2);
        while ax > bound {
            bound *= Rat::from_integer(BigInt::from(2));
            k += 1;
        }
    }
    let wp = p + k as u32 + 16;
    let r = x / rat_pow2(k);
    // Taylor sum with remainder bound 2 * |r|^n / n! (valid for |r| <= 1/4).
    let quarter = rat_pow2(-2);
    let mut term = Rat::one();
    let mut sum = Rat::one();
    let mut n: u32 = 1;
    let mut rem_scale = Rat::from_integer(BigInt::from(2));
    loop {
        term = &term * &r / Rat::from_integer(BigInt::from(n));
        sum = &sum + &term;
        rem_scale = &rem_scale * &quarter / Rat::from_integer(BigInt::from(n + 1));
        n += 1;
        // Remainder after n terms is at most 2 * (1/4)^n / n!.
        if rem_scale < rat_pow2(-(wp as i64) - 2) && n >= 4 {
            break;
        }
    }
    let rem = rem_scale;
    let lo_r = &sum - &rem;
    let hi_r = &sum + &rem;
    debug_assert!(lo_r.is_positive());
    let mut lo = Dyadic::from_rat(&lo_r, wp, Round::Floor);
    let mut hi = Dyadic::from_rat(&hi_r, wp, Round::Ceil);
    for _ in 0..k {
        lo = lo.mul_round(&lo, wp, Round::Floor);
        hi = hi.mul_round(&hi, wp, Round::Ceil);
    }
    match dir {
        Round::Floor => lo.round(p + 4, Round::Floor),
        Round::Ceil => hi.round(p + 4, Round::Ceil),
    }
}

/// Certified enclosure of `ln 2`, absolute error `<= 2^-p`.
pub fn ln2(p: u32) -> Enclosure {
    // ln 2 = 2 atanh(1/3).
    atanh_small(&Rat::new(BigInt::one(), BigInt::from(3)), p + 2)
        .scale_rat(&Rat::from_integer(BigInt::from(2)), p + 2)
}

/// Certified enclosure of `ln x` for a positive dyadic `x`, absolute error
/// `<= 2^-p`.
pub fn ln_dyadic(x: &Dyadic, p: u32) -> Enclosure {
    Enclosure {
        lo: ln_dyadic_dir(x, p, Round::Floor),
        hi: ln_dyadic_dir(x, p, Round::Ceil),
    }
}

fn ln_dyadic_dir(x: &Dyadic, p: u32, dir: Round) -> Dyadic {
    assert!(x.is_positive(), "ln of nonpositive dyadic");
    // x = m * 2^e with m in [1, 2); extract m from the mantissa directly
    // so huge exponents never materialize as integers.
    let e = x.msb() - 1;
    let m = x.mantissa_rat();
    debug_assert!(m >= Rat::one() && m < Rat::from_integer(BigInt::from(2)));
    let ebits = 64 - e.unsigned_abs().leading_zeros();
    let wp = p + ebits + 8;
    // ln m = 2 atanh((m-1)/(m+1)), argument in [0, 1/3].
    let t = (&m - Rat::one()) / (&m + Rat::one());
    let lnm = atanh_small(&t, wp).scale_rat(&Rat::from_integer(BigInt::from(2)), wp);
    let l2 = ln2(wp);
    let scaled = l2.scale_rat(&Rat::from_integer(BigInt::from(e)), wp);
    let total = lnm.add(&scaled, wp);
    match dir {
        Round::Floor => total.lo().round(p + 4, Round::Floor),
        Round::Ceil => total.hi().round(p + 4, Round::Ceil),
    }
}

/// Certified `atanh t` for rational `0 <= t <= 1/3`, absolute error
/// `<= 2^-p`.
fn atanh_small(t: &Rat, p: u32) -> Enclosure {
    debug_assert!(!t.is_negative() && *t <= Rat::new(BigInt::one(), BigInt::from(3)));
    if t.is_zero() {
        return Enclosure::zero();
    }
    let wp = p + 8;
    let t2 = t * t;
    let mut power = t.clone();
    let mut sum = t.clone();
    let mut n: u32 = 1;
    loop {
        power = &power * &t2;
        let term = &power / Rat::from_integer(BigInt::from(2 * n + 1));
        sum = &sum + &term;
        n += 1;
        // Tail after the t^(2n+1) term is bounded by
        // t^(2n+3)/(2n+3) * 1/(1 - t^2) <= power * t2 * (9/8).
        let tail = &power * &t2 * Rat::new(BigInt::from(9), BigInt::from(8));
        if tail < rat_pow2(-(wp as i64)) {
            let lo = Dyadic::from_rat(&sum, wp, Round::Floor);
            let hi_r = &sum + &tail;
            let hi = Dyadic::from_rat(&hi_r, wp, Round::Ceil);
            return Enclosure::new(lo, hi);
        }
    }
}

/// Render a rational as a decimal string with `digits` significant digits,
/// rounded in direction `dir`.  Used for CSV output of enclosure endpoints
/// (floor the lows, ceil the highs) so printed intervals remain enclosing.
pub fn decimal_of_rat(r: &Rat, digits: u32, dir: Round) -> String {
    if r.is_zero() {
        return String::from("0");
    }
    let negative = r.is_negative();
    let a = r.abs();
    // Find decimal exponent: 10^(d-1) <= a < 10^d.
    let ten = Rat::from_integer(BigInt::from(10));
    let mut d: i64 = 0;
    let mut scale = Rat::one();
    if a >= Rat::one() {
        while &a / &scale >= Rat::one() {
            scale = &scale * &ten;
            d += 1;
        }
    } else {
        while &a / &scale < Rat::new(BigInt::one(), BigInt::from(10)) {
            scale = &scale / &ten;
            d -= 1;
        }
    }
    // a = 0.xyz... * 10^d; emit `digits` digits of the fraction.
    let mut shift = Rat::one();
    for _ in 0..digits {
        shift = &shift * &ten;
    }
    let scaled = &a / &scale * &shift;
    let floor = scaled.floor().to_integer();
    let exact = Rat::from_integer(floor.clone()) == scaled;
    let round_up = match (dir, negative) {
        (Round::Ceil, false) | (Round::Floor, true) => !exact,
        _ => false,
    };
    let mut digits_int = floor;
    if round_up {
        digits_int += 1;
    }
    let mut s = digits_int.to_string();
    let mut dd = d;
    if s.len() as i64 > digits as i64 {
        // Rounding overflowed into an extra digit (e.g. 999 -> 1000).
        dd += 1;
    }
    while (s.len() as i64) < digits as i64 {
        s.insert(0, '0');
    }
    let mut out = String::new();
    if negative {
        out.push('-');
    }
    if dd <= 0 {
        out.push_str("0.");
        for _ in 0..(-dd) {
            out.push('0');
        }
        out.push_str(s.trim_end_matches('0'));
        if out.ends_with('.') {
            out.push('0');
        }
    } else if (dd as usize) >= s.len() {
        out.push_str(&s);
        for _ in 0..(dd as usize - s.len()) {
            out.push('0');
        }
    } else {
        let (ip, fp) = s.split_at(dd as usize);
        out.push_str(ip);
        let fp = fp.trim_end_matches('0');
        if !fp.is_empty() {
            out.push('.');
            out.push_str(fp);
        }
    }
    out
}

/// Sum a slice of enclosures.
pub fn sum(items: &[Enclosure], p: u32) -> Enclosure {
    let mut acc = Enclosure::zero();
    let items: Vec<&Enclosure> = items.iter().collect();
    for it in items {
        acc = acc.add(it, p);
    }
    acc
}
