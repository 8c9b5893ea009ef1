//! Locally constant potentials: exact or interval values on the nonempty
//! `k`-cylinders, periodic-orbit integrals, variation, cylinder-length
//! reduction and the push to block length one.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::num::{rat_pow2, Enclosure, Rat, Scalar};
use crate::sft::{BlockRecoding, PeriodicOrbit, Sft, Word};

/// Output precision for interval-mode scalar results (the decisions are
/// made on exact rational endpoints; this only bounds storage slack).
const STORE_BITS: u32 = 96;

/// A potential constant on cylinders of length `k`, with one value per
/// nonempty `k`-cylinder (in lexicographic cylinder order).
#[derive(Clone, Debug)]
pub struct Potential {
    k: usize,
    cylinders: Vec<Word>,
    values: Vec<Scalar>,
}

impl Potential {
    /// Build from per-cylinder values; the domain must be exactly the
    /// nonempty `k`-cylinders of `sft`.
    pub fn new(sft: &Sft, k: usize, mut entries: Vec<(Word, Scalar)>) -> Result<Potential> {
        let cylinders = sft.nonempty_cylinders(k);
        entries.sort_by(|a, b| a.0.cmp(&b.0));
        if entries.len() != cylinders.len() {
            return Err(Error::InvalidInput(format!(
                "expected {} cylinder values, got {}",
                cylinders.len(),
                entries.len()
            )));
        }
        for (given, expect) in entries.iter().zip(cylinders.iter()) {
            if &given.0 != expect {
                return Err(Error::InvalidInput(format!(
                    "cylinder mismatch: got {}, expected {}",
                    given.0, expect
                )));
            }
        }
        let values = entries.into_iter().map(|(_, v)| v).collect();
        Ok(Potential { k, cylinders, values })
    }

    /// Exact-mode constructor from rationals in lexicographic cylinder
    /// order.
    pub fn from_rationals(sft: &Sft, k: usize, vals: Vec<Rat>) -> Result<Potential> {
        let cylinders = sft.nonempty_cylinders(k);
        if vals.len() != cylinders.len() {
            return Err(Error::InvalidInput(format!(
                "expected {} cylinder values, got {}",
                cylinders.len(),
                vals.len()
            )));
        }
        let values = vals.into_iter().map(Scalar::Exact).collect();
        Ok(Potential { k, cylinders, values })
    }

    /// The constant potential `c` at cylinder length `k`.
    pub fn constant(sft: &Sft, k: usize, c: Rat) -> Potential {
        let cylinders = sft.nonempty_cylinders(k);
        let values = cylinders.iter().map(|_| Scalar::Exact(c.clone())).collect();
        Potential { k, cylinders, values }
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn cylinders(&self) -> &[Word] {
        &self.cylinders
    }

    pub fn values(&self) -> &[Scalar] {
        &self.values
    }

    pub fn is_exact(&self) -> bool {
        self.values.iter().all(Scalar::is_exact)
    }

    /// Largest interval width among the values (zero in exact mode).
    pub fn max_width(&self) -> Rat {
        self.values.iter().map(Scalar::width).max().unwrap_or_else(Rat::zero)
    }

    pub fn value_at_index(&self, i: usize) -> &Scalar {
        &self.values[i]
    }

    /// Value on the cylinder of `w` (a word of length `k`).
    pub fn value_on(&self, w: &Word) -> Result<&Scalar> {
        if w.len() != self.k {
            return Err(Error::DomainMismatch(format!(
                "word {} has length {}, potential has k = {}",
                w,
                w.len(),
                self.k
            )));
        }
        match self.cylinders.binary_search(w) {
            Ok(i) => Ok(&self.values[i]),
            Err(_) => Err(Error::DomainMismatch(format!("word {w} is not a nonempty cylinder"))),
        }
    }

    /// Periodic-orbit integral `(1/n) sum_i phi(f^i x)`.  Orbits shorter
    /// than `k` read cylinders of the periodic extension.
    pub fn integral_on_orbit(&self, orbit: &PeriodicOrbit) -> Result<Scalar> {
        let n = orbit.period();
        let mut lo = Rat::zero();
        let mut hi = Rat::zero();
        let mut exact = true;
        for i in 0..n {
            let w = orbit.window(i, self.k);
            let v = self.value_on(&w)?;
            exact &= v.is_exact();
            lo += v.lo_rat();
            hi += v.hi_rat();
        }
        let n_rat = crate::num::rat_int(n as i64);
        let lo = lo / &n_rat;
        let hi = hi / &n_rat;
        Ok(if exact {
            Scalar::Exact(lo)
        } else {
            Scalar::Interval(Enclosure::from_rat_pair(&lo, &hi, STORE_BITS))
        })
    }

    /// `var_j`: max over nonempty `j`-cylinders of the oscillation of the
    /// potential over the `k`-cylinders refining it.
    pub fn variation(&self, j: usize) -> Result<Scalar> {
        if j < 1 || j > self.k {
            return Err(Error::InvalidInput(format!("variation index {j} outside 1..={}", self.k)));
        }
        // Cylinders are sorted, so each j-prefix group is contiguous.
        let mut var_lo = Rat::zero();
        let mut var_hi = Rat::zero();
        let mut exact = true;
        let mut i = 0;
        while i < self.cylinders.len() {
            let prefix = self.cylinders[i].prefix(j);
            let mut max_lo = self.values[i].lo_rat();
            let mut min_hi = self.values[i].hi_rat();
            let mut max_hi = self.values[i].hi_rat();
            let mut min_lo = self.values[i].lo_rat();
            exact &= self.values[i].is_exact();
            let mut end = i + 1;
            while end < self.cylinders.len() && self.cylinders[end].prefix(j) == prefix {
                let v = &self.values[end];
                exact &= v.is_exact();
                let lo = v.lo_rat();
                let hi = v.hi_rat();
                if lo > max_lo {
                    max_lo = lo.clone();
                }
                if hi < min_hi {
                    min_hi = hi.clone();
                }
                if hi > max_hi {
                    max_hi = hi;
                }
                if lo < min_lo {
                    min_lo = lo;
                }
                end += 1;
            }
            // Oscillation within the group: at least max_lo - min_hi, at
            // most max_hi - min_lo.
            let group_lo = {
                let g = max_lo - min_hi;
                if g.is_negative() {
                    Rat::zero()
                } else {
                    g
                }
            };
            let group_hi = max_hi - min_lo;
            if group_lo > var_lo {
                var_lo = group_lo;
            }
            if group_hi > var_hi {
                var_hi = group_hi;
            }
            i = end;
        }
        Ok(if exact {
            Scalar::Exact(var_hi)
        } else {
            Scalar::Interval(Enclosure::from_rat_pair(&var_lo, &var_hi, STORE_BITS))
        })
    }

    /// Push to block length one through a recoding of the same `k`: the
    /// value on recoded symbol `i` is the value on cylinder `i`.
    pub fn push_to_lc1(&self, rec: &BlockRecoding) -> Result<Potential> {
        if rec.k() != self.k {
            return Err(Error::DomainMismatch(format!(
                "recoding has k = {}, potential has k = {}",
                rec.k(),
                self.k
            )));
        }
        if rec.cylinders() != self.cylinders.as_slice() {
            return Err(Error::DomainMismatch(String::from(
                "recoding and potential disagree on the cylinder list",
            )));
        }
        let m = rec.symbol_count();
        let cylinders: Vec<Word> = (0..m).map(|i| Word(alloc::vec![i as u8])).collect();
        if m > u8::MAX as usize + 1 {
            return Err(Error::TooLarge);
        }
        Ok(Potential { k: 1, cylinders, values: self.values.clone() })
    }

    /// Refine to a larger cylinder length `l >= k` over the same SFT (the
    /// value on an `l`-cylinder is the value on its `k`-prefix).
    pub fn refine(&self, sft: &Sft, l: usize) -> Result<Potential> {
        if l < self.k {
            return Err(Error::InvalidInput(String::from("refinement must not shrink k")));
        }
        let cylinders = sft.nonempty_cylinders(l);
        let mut values = Vec::with_capacity(cylinders.len());
        for w in &cylinders {
            values.push(self.value_on(&w.prefix(self.k))?.clone());
        }
        Ok(Potential { k: l, cylinders, values })
    }

    /// Uniform shift making the potential nonnegative with minimum zero:
    /// returns `(q, phi + q)` with `q = -min`.
    pub fn shift_nonneg(&self) -> (Scalar, Potential) {
        // The shift is an exact rational in both modes: it negates the
        // smallest certified lower endpoint.
        let min_lo = self.values.iter().map(Scalar::lo_rat).min().expect("nonempty domain");
        let q = -min_lo;
        let shifted = Potential {
            k: self.k,
            cylinders: self.cylinders.clone(),
            values: self.values.iter().map(|v| v.add_rat(&q, STORE_BITS)).collect(),
        };
        (Scalar::Exact(q), shifted)
    }

    /// Pointwise `alpha * phi + c` (exact rational coefficients).
    pub fn affine(&self, alpha: &Rat, c: &Rat) -> Potential {
        Potential {
            k: self.k,
            cylinders: self.cylinders.clone(),
            values: self
                .values
                .iter()
                .map(|v| v.scale_rat(alpha, STORE_BITS).add_rat(c, STORE_BITS))
                .collect(),
        }
    }
}

/// Precision-indexed rational approximations of a potential: querying at
/// `n` yields `(m_n, phi_n)` with `phi_n` rational, constant on
/// `m_n`-cylinders, and `||phi - phi_n||_inf < 2^-n`.
pub trait PotentialApproximant {
    fn query(&self, n: u32) -> (usize, Potential);
}

/// The trivial approximant of an exactly known locally constant potential.
pub struct ExactApproximant {
    phi: Potential,
}

impl ExactApproximant {
    pub fn new(phi: Potential) -> Result<ExactApproximant> {
        if !phi.is_exact() {
            return Err(Error::ExactnessRequired);
        }
        Ok(ExactApproximant { phi })
    }
}

impl PotentialApproximant for ExactApproximant {
    fn query(&self, _n: u32) -> (usize, Potential) {
        (self.phi.k(), self.phi.clone())
    }
}

/// Reduce the cylinder length of an approximated potential: returns
/// `(l_n, phi_tilde)` with `||phi - phi_tilde||_inf < 2^-n`, where `l_n`
/// never exceeds any `j` with `var_j(phi) = 0`.
pub fn reduce_cylinder_length<A: PotentialApproximant>(
    sft: &Sft,
    approx: &A,
    n: u32,
) -> Result<(usize, Potential)> {
    // Work at three extra bits so the merge slack still lands under 2^-n.
    let n_in = n + 3;
    let (m, phi_m) = approx.query(n_in);
    if !phi_m.is_exact() {
        return Err(Error::ExactnessRequired);
    }
    debug_assert_eq!(phi_m.k(), m);
    // var_i(phi) <= var_i(phi_m) + 2^(1-n_in); accept the first level whose
    // certified bound is <= 2^(2-n_in).
    let threshold = rat_pow2(1 - n_in as i64);
    let mut level = m;
    for i in 1..=m {
        let v = phi_m.variation(i)?;
        if v.hi_rat() <= threshold {
            level = i;
            break;
        }
    }
    // Merge: each level-cylinder takes the value of its lexicographically
    // first refining m-cylinder.
    let coarse = sft.nonempty_cylinders(level);
    let mut values = Vec::with_capacity(coarse.len());
    let mut cursor = 0usize;
    for w in &coarse {
        while cursor < phi_m.cylinders.len() && phi_m.cylinders[cursor].prefix(level) != *w {
            cursor += 1;
        }
        let v = phi_m
            .values
            .get(cursor)
            .ok_or_else(|| Error::InvalidInput(String::from("cylinder refinement mismatch")))?;
        values.push(v.clone());
    }
    Ok((level, Potential { k: level, cylinders: coarse, values }))
}

/// Widen an approximant's query into a certified interval potential: each
/// value becomes `[phi_n - 2^-n, phi_n + 2^-n]`, guaranteed to contain the
/// underlying potential's value.
pub fn interval_potential_at<A: PotentialApproximant>(approx: &A, n: u32) -> Potential {
    let (_, phi_n) = approx.query(n);
    let eps = rat_pow2(-(n as i64));
    let values = phi_n
        .values
        .iter()
        .map(|v| {
            let r = v.as_exact().expect("approximants produce rational values");
            Scalar::Interval(Enclosure::from_rat_pair(&(r - &eps), &(r + &eps), STORE_BITS))
        })
        .collect();
    Potential { k: phi_n.k, cylinders: phi_n.cylinders, values }
}


#[cfg(test)]
mod tests {
    use super::*;
    use crate::num::rat;
    use alloc::vec;

    fn w(s: &[u8]) -> Word {
        Word(s.to_vec())
    }

    #[test]
    fn rejects_wrong_domain() {
        let gm = crate::sft::fixtures::golden_mean();
        // 11 is not admissible at k = 2, so 4 values are too many.
        assert!(Potential::from_rationals(&gm, 2, vec![rat(1, 1); 4]).is_err());
        assert!(Potential::from_rationals(&gm, 2, vec![rat(1, 1); 3]).is_ok());
    }

    #[test]
    fn intro_integrals() {
        let (sft, phi) = fixtures::intro(rat(1, 1), rat(9, 10));
        let fixed = sft.orbit_of(&w(&[0])).unwrap();
        assert_eq!(phi.integral_on_orbit(&fixed).unwrap(), Scalar::Exact(rat(1, 1)));
        let two = sft.orbit_of(&w(&[0, 1])).unwrap();
        assert_eq!(phi.integral_on_orbit(&two).unwrap(), Scalar::Exact(rat(9, 10)));
        let three = sft.orbit_of(&w(&[0, 0, 1])).unwrap();
        assert_eq!(phi.integral_on_orbit(&three).unwrap(), Scalar::Exact(rat(14, 15)));
    }

    #[test]
    fn short_orbit_reads_periodic_extension() {
        let (sft, phi) = fixtures::intro(rat(1, 1), rat(9, 10));
        // Orbit of period 1 against a k = 2 potential reads cylinder 00.
        let fixed = sft.orbit_of(&w(&[0])).unwrap();
        assert_eq!(fixed.period(), 1);
        assert_eq!(phi.integral_on_orbit(&fixed).unwrap(), Scalar::Exact(rat(1, 1)));
    }

    #[test]
    fn variation_levels() {
        let (_, phi) = fixtures::intro(rat(1, 1), rat(9, 10));
        assert_eq!(phi.variation(2).unwrap(), Scalar::Exact(rat(0, 1)));
        // Groups by first symbol: {1, 9/10} and {9/10, 0}; the variation is
        // max(1/10, 9/10) = 9/10.
        assert_eq!(phi.variation(1).unwrap(), Scalar::Exact(rat(9, 10)));
        let sft = Sft::full_shift(2, rat(1, 2));
        let c = Potential::constant(&sft, 2, rat(7, 3));
        assert_eq!(c.variation(1).unwrap(), Scalar::Exact(rat(0, 1)));
    }

    #[test]
    fn push_to_lc1_identity_at_k1() {
        let gm = crate::sft::fixtures::golden_mean();
        let phi = Potential::from_rationals(&gm, 1, vec![rat(2, 3), rat(-1, 5)]).unwrap();
        let rec = gm.higher_block_recode(1).unwrap();
        let p1 = phi.push_to_lc1(&rec).unwrap();
        assert_eq!(p1.values(), phi.values());
        assert_eq!(p1.k(), 1);
    }

    #[test]
    fn push_to_lc1_matches_cylinder_values() {
        let (sft, phi) = fixtures::intro(rat(1, 1), rat(9, 10));
        let rec = sft.higher_block_recode(2).unwrap();
        let p1 = phi.push_to_lc1(&rec).unwrap();
        assert_eq!(p1.k(), 1);
        assert_eq!(p1.values().len(), 4);
        assert_eq!(p1.value_at_index(0), &Scalar::Exact(rat(1, 1)));
        assert_eq!(p1.value_at_index(1), &Scalar::Exact(rat(9, 10)));
        assert_eq!(p1.value_at_index(2), &Scalar::Exact(rat(9, 10)));
        assert_eq!(p1.value_at_index(3), &Scalar::Exact(rat(0, 1)));
        // Golden mean LC_2 pushes to 3 symbols.
        let gm = crate::sft::fixtures::golden_mean();
        let phi = Potential::from_rationals(&gm, 2, vec![rat(1, 1), rat(2, 1), rat(3, 1)]).unwrap();
        let rec = gm.higher_block_recode(2).unwrap();
        assert_eq!(phi.push_to_lc1(&rec).unwrap().values().len(), 3);
    }

    #[test]
    fn recoding_preserves_orbit_integrals() {
        let gm = crate::sft::fixtures::golden_mean();
        let phi = Potential::from_rationals(&gm, 2, vec![rat(5, 7), rat(-1, 3), rat(2, 1)]).unwrap();
        let rec = gm.higher_block_recode(2).unwrap();
        let p1 = phi.push_to_lc1(&rec).unwrap();
        for seg in [&[0u8][..], &[0, 1], &[0, 0, 1], &[0, 1, 0, 0]] {
            let orbit = gm.orbit_of(&w(seg)).unwrap();
            let pushed = rec.push_orbit(&orbit).unwrap();
            assert_eq!(
                phi.integral_on_orbit(&orbit).unwrap(),
                p1.integral_on_orbit(&pushed).unwrap(),
                "conjugacy must preserve integrals exactly"
            );
        }
    }

    #[test]
    fn shift_nonneg_examples() {
        let sft = Sft::full_shift(3, rat(1, 2));
        let phi =
            Potential::from_rationals(&sft, 1, vec![rat(1, 1), rat(-2, 1), rat(0, 1)]).unwrap();
        let (q, shifted) = phi.shift_nonneg();
        assert_eq!(q, Scalar::Exact(rat(2, 1)));
        assert_eq!(shifted.value_at_index(0), &Scalar::Exact(rat(3, 1)));
        assert_eq!(shifted.value_at_index(1), &Scalar::Exact(rat(0, 1)));
        assert_eq!(shifted.value_at_index(2), &Scalar::Exact(rat(2, 1)));
        // Already nonnegative: still shifted so the minimum becomes 0.
        let (q2, s2) = shifted.shift_nonneg();
        assert_eq!(q2, Scalar::Exact(rat(0, 1)));
        assert_eq!(s2.values(), shifted.values());
        let (_, phi_intro) = fixtures::intro(rat(1, 1), rat(9, 10));
        let (q3, s3) = phi_intro.shift_nonneg();
        assert_eq!(q3, Scalar::Exact(rat(0, 1)));
        assert_eq!(s3.values(), phi_intro.values());
    }

    #[test]
    fn shift_and_scale_equivariance_of_integrals() {
        let (sft, phi) = fixtures::intro(rat(1, 1), rat(9, 10));
        let orbit = sft.orbit_of(&w(&[0, 0, 1])).unwrap();
        let base = phi.integral_on_orbit(&orbit).unwrap().lo_rat();
        for (a, c) in [(rat(2, 1), rat(3, 1)), (rat(1, 2), rat(-1, 1)), (rat(7, 1), rat(0, 1))] {
            let phi2 = phi.affine(&a, &c);
            let got = phi2.integral_on_orbit(&orbit).unwrap().lo_rat();
            assert_eq!(got, &base * &a + &c);
        }
    }

    #[test]
    fn reduce_exact_lc2_stays_at_two() {
        let (sft, phi) = fixtures::intro(rat(1, 1), rat(9, 10));
        let approx = ExactApproximant::new(phi).unwrap();
        for n in [4, 10, 20] {
            let (l, phi_t) = reduce_cylinder_length(&sft, &approx, n).unwrap();
            assert!(l <= 2, "exact LC_2 potential must reduce to level <= 2");
            assert_eq!(phi_t.k(), l);
        }
    }

    #[test]
    fn reduce_constant_hits_level_one() {
        let sft = Sft::full_shift(2, rat(1, 2));
        let c = Potential::constant(&sft, 3, rat(5, 1));
        let approx = ExactApproximant::new(c).unwrap();
        for n in [1, 8, 16] {
            let (l, _) = reduce_cylinder_length(&sft, &approx, n).unwrap();
            assert_eq!(l, 1);
        }
    }

    #[test]
    fn reduce_needs_full_length_when_variation_large() {
        // LC_3 potential with var_2 = 1: distinguish on the third symbol.
        let sft = Sft::full_shift(2, rat(1, 2));
        let vals: Vec<Rat> = sft
            .nonempty_cylinders(3)
            .iter()
            .map(|w| if w.symbols()[2] == 0 { rat(0, 1) } else { rat(1, 1) })
            .collect();
        let phi = Potential::from_rationals(&sft, 3, vals).unwrap();
        assert_eq!(phi.variation(2).unwrap(), Scalar::Exact(rat(1, 1)));
        let approx = ExactApproximant::new(phi).unwrap();
        let (l, _) = reduce_cylinder_length(&sft, &approx, 8).unwrap();
        assert_eq!(l, 3);
    }

    #[test]
    fn interval_widening_contains_exact_values() {
        let (_, phi) = fixtures::intro(rat(1, 1), rat(9, 10));
        let approx = ExactApproximant::new(phi.clone()).unwrap();
        let wide = interval_potential_at(&approx, 10);
        assert!(!wide.is_exact());
        for (v, exact) in wide.values().iter().zip(phi.values()) {
            assert!(v.lo_rat() <= exact.lo_rat() && exact.hi_rat() <= v.hi_rat());
        }
    }
}
