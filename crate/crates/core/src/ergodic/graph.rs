//! The weighted block graph: nodes are the nonempty `k`-cylinders, arcs
//! the recoded transitions, and the weight of an arc `u -> v` is the
//! potential value on the source cylinder `u`.  With this convention the
//! mean weight of a cycle equals the orbit integral of the corresponding
//! periodic orbit.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::num::{Enclosure, Rat, Scalar};
use crate::potential::Potential;
use crate::sft::{BlockRecoding, PeriodicOrbit, Sft, Word};

use super::cycles::johnson_cycles;
use super::karp::{max_cycle_mean, min_cycle_mean};

/// Guard for brute-force cycle enumeration.
pub(crate) const CYCLE_GUARD: usize = 200_000;

#[derive(Clone, Debug)]
pub struct WeightedBlockGraph {
    rec: BlockRecoding,
    weights: Vec<Scalar>,
    out_adj: Vec<Vec<usize>>,
}

impl WeightedBlockGraph {
    /// Build the arena for `phi` on `sft` (recode at `phi.k`, push the
    /// potential to block length one).
    pub fn new(sft: &Sft, phi: &Potential) -> Result<WeightedBlockGraph> {
        if !sft.is_irreducible() {
            return Err(Error::NotTransitive);
        }
        let rec = sft.higher_block_recode(phi.k())?;
        if rec.cylinders() != phi.cylinders() {
            return Err(Error::DomainMismatch(alloc::string::String::from(
                "potential domain does not match the SFT's cylinders",
            )));
        }
        let phi1 = phi.values().to_vec();
        let m = rec.symbol_count();
        let t = rec.recoded().transitions();
        let out_adj: Vec<Vec<usize>> =
            (0..m).map(|i| (0..m).filter(|&j| t[i][j] == 1).collect()).collect();
        Ok(WeightedBlockGraph { rec, weights: phi1, out_adj })
    }

    pub fn node_count(&self) -> usize {
        self.rec.symbol_count()
    }

    pub fn k(&self) -> usize {
        self.rec.k()
    }

    pub fn recoding(&self) -> &BlockRecoding {
        &self.rec
    }

    pub fn node_word(&self, i: usize) -> &Word {
        &self.rec.cylinders()[i]
    }

    pub fn weight(&self, i: usize) -> &Scalar {
        &self.weights[i]
    }

    pub fn out_adj(&self) -> &[Vec<usize>] {
        &self.out_adj
    }

    pub fn arcs(&self) -> Vec<(usize, usize)> {
        self.out_adj
            .iter()
            .enumerate()
            .flat_map(|(u, vs)| vs.iter().map(move |&v| (u, v)))
            .collect()
    }

    pub fn is_exact(&self) -> bool {
        self.weights.iter().all(Scalar::is_exact)
    }

    pub fn lo_weights(&self) -> Vec<Rat> {
        self.weights.iter().map(Scalar::lo_rat).collect()
    }

    pub fn hi_weights(&self) -> Vec<Rat> {
        self.weights.iter().map(Scalar::hi_rat).collect()
    }

    /// Map a block-graph cycle back to the periodic orbit of the base SFT
    /// (read first symbols of the cylinder words).
    pub fn cycle_to_orbit(&self, cycle: &[usize]) -> PeriodicOrbit {
        let symbols: Vec<u8> =
            cycle.iter().map(|&i| self.node_word(i).symbols()[0]).collect();
        PeriodicOrbit::from_segment(&symbols)
    }

    /// Exact rational mean of a cycle, per weight endpoint selector.
    pub fn cycle_mean(&self, cycle: &[usize], weights: &[Rat]) -> Rat {
        let sum: Rat = cycle.iter().map(|&i| weights[i].clone()).sum();
        sum / crate::num::rat_int(cycle.len() as i64)
    }
}

/// All simple cycles of the block graph, mapped back to `k`-elementary
/// periodic orbits of the base SFT (brute-force oracle).
pub fn enumerate_elementary_cycles(g: &WeightedBlockGraph) -> Result<Vec<PeriodicOrbit>> {
    let cycles = johnson_cycles(g.node_count(), g.out_adj(), CYCLE_GUARD)?;
    Ok(cycles.iter().map(|c| g.cycle_to_orbit(c)).collect())
}

/// Extreme orbit integrals `(a, b)`: minimum and maximum cycle mean of the
/// block graph, by Karp's algorithm (exact in exact mode; endpointwise in
/// interval mode, using that cycle means are monotone in the weights).
pub fn extreme_means(g: &WeightedBlockGraph) -> (Scalar, Scalar) {
    let n = g.node_count();
    if g.is_exact() {
        let w = g.lo_weights();
        let b = max_cycle_mean(n, g.out_adj(), &w);
        let a = min_cycle_mean(n, g.out_adj(), &w);
        (Scalar::Exact(a), Scalar::Exact(b))
    } else {
        let lo = g.lo_weights();
        let hi = g.hi_weights();
        let b_lo = max_cycle_mean(n, g.out_adj(), &lo);
        let b_hi = max_cycle_mean(n, g.out_adj(), &hi);
        let a_lo = min_cycle_mean(n, g.out_adj(), &lo);
        let a_hi = min_cycle_mean(n, g.out_adj(), &hi);
        (
            Scalar::Interval(Enclosure::from_rat_pair(&a_lo, &a_hi, 96)),
            Scalar::Interval(Enclosure::from_rat_pair(&b_lo, &b_hi, 96)),
        )
    }
}
