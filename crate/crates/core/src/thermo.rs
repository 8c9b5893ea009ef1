//! Positive-temperature machinery: certified pressure via transfer
//! matrices, convexity-based one-sided derivative and entropy enclosures,
//! the sandwich bound, equilibrium Markov measures, and the nonincreasing
//! upper-bound sequence for residual entropy.

use alloc::string::String;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::num::interval::exp_rat;
use crate::num::{rat_int, rat_pow2, Enclosure, Rat, Scalar};
use crate::perron::{perron_log_enclosure, perron_vectors};
use crate::potential::Potential;
use crate::sft::{Sft, Word};

/// The transfer-matrix pressure engine for one potential: the SFT is
/// recoded so the potential becomes constant on 1-cylinders, and all
/// pressure evaluations share that arena.
///
/// Entries are normalized by `exp(-beta * c)` with `c` the maximal
/// potential value, so `P(beta) = beta * c + ln(Perron root)` and the
/// entries stay in `(0, 1]` at every inverse temperature.
pub struct PressureMachine {
    block: Sft,
    words: Vec<Word>,
    values: Vec<Scalar>,
    cmax: Rat,
}

/// A transfer matrix at inverse temperature `beta`: entries
/// `A[u][v] exp(beta (phi(u) - normalization))` as certified intervals.
/// The Perron root of the unnormalized matrix is recovered through
/// `log lambda = beta * normalization + ln(Perron root of entries)`.
pub struct TransferMatrix {
    pub beta: Rat,
    pub normalization: Rat,
    pub entries: Vec<Vec<Enclosure>>,
}

/// A sampled point of the pressure curve.
#[derive(Clone, Debug)]
pub struct PressurePoint {
    pub beta: Rat,
    pub pressure: Enclosure,
    pub d_minus: Enclosure,
    pub d_plus: Enclosure,
    /// Entropy enclosure, present in the differentiable regime (always,
    /// eventually, for locally constant potentials).
    pub entropy: Option<Enclosure>,
}

/// One-sided derivative enclosures at a point.  Difference quotients can
/// bracket `dP-` and `dP+` only jointly, so the two enclosures coincide;
/// `separated` records whether they met within the requested tolerance
/// (they always do eventually for locally constant potentials, which have
/// no phase transitions).
#[derive(Clone, Debug)]
pub struct DerivativeEnclosure {
    pub minus: Enclosure,
    pub plus: Enclosure,
    pub separated: bool,
}

/// A sandwich enclosure certified to contain `h_mu(f)` for some
/// equilibrium state at some inverse temperature inside the requested
/// interval.
#[derive(Clone, Debug)]
pub struct SandwichResult {
    pub enclosure: Enclosure,
    pub beta_lo: Rat,
    pub beta_hi: Rat,
    pub width_reached: bool,
}

/// One step of the residual-entropy upper-bound sequence.
#[derive(Clone, Debug)]
pub struct UpperBoundStep {
    pub n: u32,
    pub beta_lo: Rat,
    pub beta_hi: Rat,
    pub sandwich: Enclosure,
    /// Certified upper bound on the residual entropy at this step.
    pub upper: Rat,
    /// Running minimum of the upper bounds (nonincreasing).
    pub running_min: Rat,
}

/// An equilibrium Markov measure: exactly stochastic rational data close
/// to the Ruelle eigendata of the transfer matrix, with its stationarity
/// defect recorded.
#[derive(Clone, Debug)]
pub struct EquilibriumMarkovMeasure {
    pub beta: Rat,
    pub measure: crate::measures::MarkovMeasure,
}

impl PressureMachine {
    pub fn new(sft: &Sft, phi: &Potential) -> Result<PressureMachine> {
        if !sft.is_irreducible() {
            return Err(Error::NotTransitive);
        }
        let (block, words, values) = if phi.k() == 1 {
            let words = sft.nonempty_cylinders(1);
            (sft.clone(), words, phi.values().to_vec())
        } else {
            let rec = sft.higher_block_recode(phi.k())?;
            let phi1 = phi.push_to_lc1(&rec)?;
            (rec.recoded().clone(), rec.cylinders().to_vec(), phi1.values().to_vec())
        };
        let cmax = values.iter().map(Scalar::hi_rat).max().expect("nonempty alphabet");
        Ok(PressureMachine { block, words, values, cmax })
    }

    pub fn block(&self) -> &Sft {
        &self.block
    }

    pub fn block_words(&self) -> &[Word] {
        &self.words
    }

    pub fn values(&self) -> &[Scalar] {
        &self.values
    }

    /// The transfer matrix at `beta`, normalized by the maximal potential
    /// value.
    pub fn transfer_matrix(&self, beta: &Rat, wp: u32) -> TransferMatrix {
        TransferMatrix {
            beta: beta.clone(),
            normalization: self.cmax.clone(),
            entries: self.transfer_entries(beta, &self.cmax, wp),
        }
    }

    /// Transfer-matrix entries `A[u][v] exp(beta (phi(u) - c))` at working
    /// precision `wp`.
    fn transfer_entries(&self, beta: &Rat, c: &Rat, wp: u32) -> Vec<Vec<Enclosure>> {
        let m = self.block.alphabet_size();
        let t = self.block.transitions();
        let mut rows = Vec::with_capacity(m);
        for u in 0..m {
            let e = match &self.values[u] {
                Scalar::Exact(r) => exp_rat(&(beta * &(r - c)), wp),
                Scalar::Interval(iv) => {
                    let lo = beta * &(iv.lo_rat() - c);
                    let hi = beta * &(iv.hi_rat() - c);
                    let (lo, hi) = if beta.is_negative() { (hi, lo) } else { (lo, hi) };
                    let lo_e = exp_rat(&lo, wp);
                    let hi_e = exp_rat(&hi, wp);
                    Enclosure::new(lo_e.lo().clone(), hi_e.hi().clone())
                }
            };
            let mut row = Vec::with_capacity(m);
            for v in 0..m {
                row.push(if t[u][v] == 1 { e.clone() } else { Enclosure::zero() });
            }
            rows.push(row);
        }
        rows
    }

    /// Certified pressure `P(beta)` with width `<= 2^-bits`.
    pub fn pressure(&self, beta: &Rat, bits: u32) -> Result<Enclosure> {
        let c = &self.cmax;
        for attempt in 0..3u32 {
            let wp = bits + 24 + attempt * (bits + 24);
            let entries = self.transfer_entries(beta, c, wp);
            match perron_log_enclosure(&entries, bits + 2) {
                Ok(log_lam) => {
                    let offset = Enclosure::from_rat(&(beta * c), wp);
                    return Ok(log_lam.add(&offset, wp));
                }
                Err(Error::PrecisionNotReached) => continue,
                Err(e) => return Err(e),
            }
        }
        Err(Error::PrecisionNotReached)
    }

    /// One-sided derivative enclosures from difference quotients: by
    /// convexity the left quotient increases and the right quotient
    /// decreases toward the one-sided derivatives, so every step yields a
    /// certified bracket.  Stops once the bracket is `<= 2^-bits` wide or
    /// the step budget runs out (flagged, not an error).
    pub fn pressure_derivative(&self, beta: &Rat, bits: u32) -> Result<DerivativeEnclosure> {
        let mut bracket: Option<Enclosure> = None;
        let budget = bits + 24;
        for j in 2..=budget {
            let h = rat_pow2(-(j as i64));
            let pbits = bits + j + 6;
            let p0 = self.pressure(beta, pbits)?;
            let pm = self.pressure(&(beta - &h), pbits)?;
            let pp = self.pressure(&(beta + &h), pbits)?;
            let scale = rat_pow2(j as i64);
            let q_minus = p0.sub(&pm, pbits).scale_rat(&scale, pbits);
            let q_plus = pp.sub(&p0, pbits).scale_rat(&scale, pbits);
            let step = Enclosure::new(q_minus.lo().clone(), q_plus.hi().clone());
            let merged = match &bracket {
                None => step,
                Some(b) => b.intersect(&step).unwrap_or_else(|| b.clone()),
            };
            let done = merged.width_leq_pow2(-(bits as i64));
            bracket = Some(merged);
            if done {
                let b = bracket.unwrap();
                return Ok(DerivativeEnclosure { minus: b.clone(), plus: b, separated: true });
            }
        }
        let b = bracket.expect("at least one quotient step");
        Ok(DerivativeEnclosure { minus: b.clone(), plus: b, separated: false })
    }

    /// One sampled point of the pressure curve: pressure, one-sided
    /// derivatives, and entropy when the quotient bracket closed.
    pub fn pressure_point(&self, beta: &Rat, bits: u32) -> Result<PressurePoint> {
        let pressure = self.pressure(beta, bits)?;
        let d = self.pressure_derivative(beta, bits)?;
        let entropy = if d.separated { Some(self.entropy_at_beta(beta, bits)?) } else { None };
        Ok(PressurePoint {
            beta: beta.clone(),
            pressure,
            d_minus: d.minus,
            d_plus: d.plus,
            entropy,
        })
    }

    /// Certified entropy `h(beta) = P(beta) - beta dP(beta)` in the
    /// differentiable regime; fails with [`Error::NotSeparated`] when the
    /// quotient bracket did not close.
    pub fn entropy_at_beta(&self, beta: &Rat, bits: u32) -> Result<Enclosure> {
        let extra = log2_ceil(&(Rat::from_integer(BigInt::from(1)) + beta.abs()));
        let d = self.pressure_derivative(beta, bits + 2 + extra)?;
        if !d.separated {
            return Err(Error::NotSeparated);
        }
        let p = self.pressure(beta, bits + 2)?;
        let wp = bits + 32;
        Ok(p.sub(&d.plus.scale_rat(beta, wp), wp))
    }

    /// The sandwich bound: with `alpha` the pressure slope over a pair
    /// inside `[beta1, beta2]`, the interval
    /// `[P(b1) - b2 alpha, P(b2) - b1 alpha]` contains `h_mu(f)` for some
    /// equilibrium state at some inverse temperature in `(beta1, beta2)`.
    /// Pairs are bisected toward the middle until the certified width
    /// reaches `2^-bits`.  Requires a nonnegative potential.
    pub fn entropy_sandwich(&self, beta1: &Rat, beta2: &Rat, bits: u32) -> Result<SandwichResult> {
        if beta1 >= beta2 || beta1.is_negative() {
            return Err(Error::InvalidInput(String::from("need 0 <= beta1 < beta2")));
        }
        if self.values.iter().map(Scalar::lo_rat).min().unwrap() < Rat::zero() {
            return Err(Error::InvalidInput(String::from(
                "sandwich requires phi >= 0; apply the nonnegative shift first",
            )));
        }
        let mut b1 = beta1.clone();
        let mut b2 = beta2.clone();
        let budget = bits + 64;
        let mut last: Option<SandwichResult> = None;
        for _ in 0..budget {
            let delta = &b2 - &b1;
            let pbits = bits + 8 + log2_ceil(&((Rat::from_integer(BigInt::from(1)) + &b2) / &delta));
            let p1 = self.pressure(&b1, pbits)?;
            let p2 = self.pressure(&b2, pbits)?;
            let wp = pbits + 16;
            let alpha = p2.sub(&p1, wp).scale_rat(&(Rat::from_integer(BigInt::from(1)) / &delta), wp);
            let low = p1.sub(&alpha.scale_rat(&b2, wp), wp);
            let high = p2.sub(&alpha.scale_rat(&b1, wp), wp);
            let enc = Enclosure::new(low.lo().clone(), high.hi().clone());
            let reached = enc.width_leq_pow2(-(bits as i64));
            let out = SandwichResult {
                enclosure: enc,
                beta_lo: b1.clone(),
                beta_hi: b2.clone(),
                width_reached: reached,
            };
            if reached {
                return Ok(out);
            }
            last = Some(out);
            let mid = (&b1 + &b2) / rat_int(2);
            let quarter = delta / rat_int(4);
            b1 = &mid - &quarter;
            b2 = &mid + &quarter;
        }
        Ok(last.expect("at least one sandwich round"))
    }

    /// Equilibrium Markov measure at `beta`: exactly stochastic rational
    /// `pi, p` built from approximate Ruelle eigendata, retried until the
    /// stationarity defect drops below `2^-bits`.  Exact-mode potentials
    /// only (the chain must be a definite object).
    pub fn equilibrium_measure(&self, beta: &Rat, bits: u32) -> Result<EquilibriumMarkovMeasure> {
        if beta.is_negative() {
            return Err(Error::InvalidInput(String::from("equilibrium measures need beta >= 0")));
        }
        if !self.values.iter().all(Scalar::is_exact) {
            return Err(Error::ExactnessRequired);
        }
        let n = self.block.alphabet_size();
        // Normalize by the maximum cycle mean so the Perron root stays
        // >= 1 and the +I vector iteration keeps its spectral gap.
        let adj: Vec<Vec<usize>> = (0..n)
            .map(|i| (0..n).filter(|&j| self.block.transitions()[i][j] == 1).collect())
            .collect();
        let w: Vec<Rat> = self.values.iter().map(Scalar::lo_rat).collect();
        let b = crate::ergodic::max_cycle_mean(n, &adj, &w);
        let target = rat_pow2(-(bits as i64));
        let mut request = bits + 16;
        for _ in 0..4 {
            let wp = request + 16;
            let entries = self.transfer_entries(beta, &b, wp);
            let data = perron_vectors(&entries, request)?;
            let weights: Vec<Vec<Rat>> = entries
                .iter()
                .map(|row| row.iter().map(|e| e.mid().to_rat()).collect())
                .collect();
            let measure =
                crate::measures::markov_from_weights(self.words.clone(), &weights, &data.right, &data.left)?;
            if measure.stationarity_defect <= target {
                return Ok(EquilibriumMarkovMeasure { beta: beta.clone(), measure });
            }
            request += 24;
        }
        Err(Error::PrecisionNotReached)
    }
}

/// The certified nonincreasing upper-bound sequence for the residual
/// entropy: shift the potential nonnegative, take `beta_n = 2^n`, sandwich
/// the entropy of some equilibrium state inside `[beta_n, beta_{n+1}]` at
/// precision `n + 1`, and emit `u_n = midpoint + 2^-n`.  Every `u_n` is a
/// certified upper bound on the residual entropy; the running minimum
/// converges to it from above (no rate is claimed).
pub fn residual_entropy_upper(sft: &Sft, phi: &Potential, steps: u32) -> Result<Vec<UpperBoundStep>> {
    let (_, shifted) = phi.shift_nonneg();
    let machine = PressureMachine::new(sft, &shifted)?;
    let mut out = Vec::with_capacity(steps as usize);
    let mut running: Option<Rat> = None;
    for n in 0..steps {
        let b1 = rat_pow2(n as i64);
        let b2 = rat_pow2(n as i64 + 1);
        let s = machine.entropy_sandwich(&b1, &b2, n + 1)?;
        let slack = rat_pow2(-(n as i64));
        let upper = if s.width_reached {
            s.enclosure.mid().to_rat() + &slack
        } else {
            s.enclosure.hi_rat() + &slack
        };
        let running_min = match &running {
            None => upper.clone(),
            Some(r) => core::cmp::min(r.clone(), upper.clone()),
        };
        running = Some(running_min.clone());
        out.push(UpperBoundStep {
            n,
            beta_lo: b1,
            beta_hi: b2,
            sandwich: s.enclosure,
            upper,
            running_min,
        });
    }
    Ok(out)
}

/// Smallest `t >= 0` with `2^t >= r` (for positive rationals).
fn log2_ceil(r: &Rat) -> u32 {
    debug_assert!(r.is_positive());
    let mut t = 0u32;
    let mut pow = Rat::from_integer(BigInt::from(1));
    let two = rat_int(2);
    while pow < *r && t < 1_000_000 {
        pow *= &two;
        t += 1;
    }
    t
}
