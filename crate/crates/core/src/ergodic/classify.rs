//! The `O`/`U`/`V` classification of a locally constant potential by its
//! maximizing elementary orbits, with stability certificates, and the
//! derived zero-temperature data (measure and residual entropy).

use alloc::vec::Vec;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::measures::{markov_from_weights, InvariantMeasure, MarkovMeasure};
use crate::num::{Enclosure, Rat, Scalar};
use crate::perron::{perron_log_enclosure, perron_vectors};
use crate::potential::Potential;
use crate::sft::{PeriodicOrbit, Sft};

use super::critical::{critical_graph, CriticalGraph};
use super::cycles::johnson_cycles;
use super::graph::{WeightedBlockGraph, CYCLE_GUARD};
use super::karp::max_cycle_mean;

/// The maximizing elementary orbits, the value they attain, and the gap to
/// the best excluded elementary cycle mean (when it could be computed).
#[derive(Clone, Debug)]
pub struct MaxOrbitSet {
    pub orbits: Vec<PeriodicOrbit>,
    pub value: Scalar,
    /// `b - (best non-member elementary cycle mean)`; `None` when there is
    /// no other elementary cycle or enumeration was infeasible.
    pub gap: Option<Scalar>,
    /// Interval mode marks the set as a superset of the true maximizers.
    pub superset: bool,
}

/// Classification tag.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Tag {
    /// A single maximizing elementary orbit.
    O,
    /// Several maximizing orbits with pairwise disjoint cylinder supports.
    U,
    /// Maximizing orbits sharing a cylinder (positive residual entropy).
    V,
    /// Interval widths prevent separation at the recorded input precision.
    Undetermined { precision: u32 },
}

#[derive(Clone, Debug)]
pub struct Classification {
    pub tag: Tag,
    pub k: usize,
    pub b: Scalar,
    pub witness: MaxOrbitSet,
    /// Supremum-norm radius within which the certificate persists:
    /// `gap/2` for `O` (tag and witness stable) and for `U` (witnesses
    /// remain the only candidates, tag stays in `O`/`U`); zero for `V`;
    /// absent for `Undetermined` or when the gap was not computed.
    pub certificate_radius: Option<Rat>,
    /// The critical subgraph (exact mode).
    pub critical: Option<CriticalGraph>,
}

impl Classification {
    pub fn is_resolved(&self) -> bool {
        !matches!(self.tag, Tag::Undetermined { .. })
    }
}

/// Classify a potential on an irreducible SFT.  Exact mode decides ties
/// exactly; interval mode only ever claims `O` (when a single candidate
/// survives) and otherwise reports `Undetermined`.
pub fn classify(sft: &Sft, phi: &Potential) -> Result<Classification> {
    if !sft.is_irreducible() {
        return Err(Error::NotTransitive);
    }
    let g = WeightedBlockGraph::new(sft, phi)?;
    if g.is_exact() {
        classify_exact(&g, phi.k())
    } else {
        classify_interval(&g, phi)
    }
}

fn classify_exact(g: &WeightedBlockGraph, k: usize) -> Result<Classification> {
    let w = g.lo_weights();
    let b = max_cycle_mean(g.node_count(), g.out_adj(), &w);
    let critical = critical_graph(g, &b)?;
    // Tags from the SCC structure of the critical graph: a lone simple
    // cycle per component means the maximizers are exactly those cycles.
    let simple = critical_scc_cycles(&critical);
    let (tag, orbits) = match &simple {
        Some(cycles) if cycles.len() == 1 => (Tag::O, cycles.clone()),
        Some(cycles) => (Tag::U, cycles.clone()),
        None => {
            // Some component carries more than one cycle: V.  Witnesses
            // are the cycles of the critical subgraph (guarded).
            let adj = critical.local_adjacency();
            let cycles = johnson_cycles(critical.nodes.len(), &adj, CYCLE_GUARD)?;
            let orbits: Vec<PeriodicOrbit> = cycles
                .iter()
                .map(|c| {
                    let global: Vec<usize> = c.iter().map(|&i| critical.nodes[i]).collect();
                    g.cycle_to_orbit(&global)
                })
                .collect();
            (Tag::V, orbits)
        }
    };
    let mut orbits = orbits;
    orbits.sort_by(|a, b| (a.period(), a.segment()).cmp(&(b.period(), b.segment())));
    // Gap to the best excluded elementary cycle: needed for the O/U
    // certificates; obtained by full enumeration when feasible.
    let gap = match tag {
        Tag::V => None,
        _ => second_best_gap(g, &critical, &b),
    };
    let certificate_radius = match tag {
        Tag::O | Tag::U => gap.as_ref().map(|g| g / crate::num::rat_int(2)),
        Tag::V => Some(Rat::zero()),
        Tag::Undetermined { .. } => None,
    };
    Ok(Classification {
        tag,
        k,
        b: Scalar::Exact(b.clone()),
        witness: MaxOrbitSet {
            orbits,
            value: Scalar::Exact(b),
            gap: gap.map(Scalar::Exact),
            superset: false,
        },
        certificate_radius,
        critical: Some(critical),
    })
}

/// If every cyclic SCC of the critical graph is a single simple cycle,
/// return those cycles as orbits; otherwise `None`.
fn critical_scc_cycles(c: &CriticalGraph) -> Option<Vec<PeriodicOrbit>> {
    let mut out = Vec::new();
    for scc in &c.sccs {
        // Out-degree within the SCC must be exactly one everywhere.
        let mut next = alloc::collections::BTreeMap::new();
        for &(u, v) in &c.arcs {
            if scc.binary_search(&u).is_ok() && scc.binary_search(&v).is_ok()
                && next.insert(u, v).is_some() {
                    return None;
                }
        }
        if next.len() != scc.len() {
            return None;
        }
        // Walk the unique cycle.
        let start = scc[0];
        let mut cycle = alloc::vec![start];
        let mut cur = next[&start];
        while cur != start {
            cycle.push(cur);
            cur = next[&cur];
        }
        if cycle.len() != scc.len() {
            return None;
        }
        let symbols: Vec<u8> = cycle.iter().map(|&i| c.words_by_id(i).symbols()[0]).collect();
        out.push(PeriodicOrbit::from_segment(&symbols));
    }
    Some(out)
}

/// `b` minus the best elementary cycle mean among cycles not contained in
/// the critical subgraph, by full enumeration under the guard.
fn second_best_gap(g: &WeightedBlockGraph, _critical: &CriticalGraph, b: &Rat) -> Option<Rat> {
    let cycles = johnson_cycles(g.node_count(), g.out_adj(), CYCLE_GUARD).ok()?;
    let w = g.lo_weights();
    let mut second: Option<Rat> = None;
    for c in &cycles {
        let mean = g.cycle_mean(c, &w);
        if mean == *b {
            continue;
        }
        debug_assert!(mean < *b);
        second = Some(match second {
            None => mean,
            Some(s) => {
                if mean > s {
                    mean
                } else {
                    s
                }
            }
        });
    }
    second.map(|s| b - s)
}

fn classify_interval(g: &WeightedBlockGraph, phi: &Potential) -> Result<Classification> {
    let n = g.node_count();
    let lo = g.lo_weights();
    let hi = g.hi_weights();
    let b_lo = max_cycle_mean(n, g.out_adj(), &lo);
    let b_hi = max_cycle_mean(n, g.out_adj(), &hi);
    let cycles = johnson_cycles(n, g.out_adj(), CYCLE_GUARD)?;
    // A cycle may attain the maximum iff its upper mean reaches b_lo.
    let mut members: Vec<(PeriodicOrbit, Rat, Rat)> = Vec::new();
    let mut second_hi: Option<Rat> = None;
    for c in &cycles {
        let m_lo = g.cycle_mean(c, &lo);
        let m_hi = g.cycle_mean(c, &hi);
        if m_hi >= b_lo {
            members.push((g.cycle_to_orbit(c), m_lo, m_hi));
        } else {
            second_hi = Some(match second_hi {
                None => m_hi,
                Some(s) => {
                    if m_hi > s {
                        m_hi
                    } else {
                        s
                    }
                }
            });
        }
    }
    members.sort_by_key(|a| (a.0.period(), a.0.segment().clone()));
    members.dedup_by(|a, b| a.0 == b.0);
    let b_scalar = Scalar::Interval(Enclosure::from_rat_pair(&b_lo, &b_hi, 96));
    let precision = input_precision(phi);
    if members.len() == 1 {
        let gap_lo = second_hi.as_ref().map(|s| &b_lo - s);
        let radius = gap_lo.as_ref().map(|g| g / crate::num::rat_int(2));
        let gap = gap_lo
            .map(|glo| {
                let ghi = &b_hi - second_hi.as_ref().unwrap();
                Scalar::Interval(Enclosure::from_rat_pair(&glo, &ghi, 96))
            });
        let orbits: Vec<PeriodicOrbit> = members.into_iter().map(|m| m.0).collect();
        return Ok(Classification {
            tag: Tag::O,
            k: phi.k(),
            b: b_scalar.clone(),
            witness: MaxOrbitSet { orbits, value: b_scalar, gap, superset: false },
            certificate_radius: radius,
            critical: None,
        });
    }
    Ok(Classification {
        tag: Tag::Undetermined { precision },
        k: phi.k(),
        b: b_scalar.clone(),
        witness: MaxOrbitSet {
            orbits: members.into_iter().map(|m| m.0).collect(),
            value: b_scalar,
            gap: None,
            superset: true,
        },
        certificate_radius: None,
        critical: None,
    })
}

/// The precision index of interval inputs: the largest `n` with every
/// value width `<= 2^-n` (0 for degenerate inputs).
fn input_precision(phi: &Potential) -> u32 {
    let w = phi.max_width();
    if w.is_zero() || w > Rat::from_integer(1.into()) {
        return 0;
    }
    let mut n = 0u32;
    let mut bound = crate::num::rat(1, 2);
    while w <= bound && n < 4096 {
        n += 1;
        bound /= crate::num::rat_int(2);
    }
    n
}

/// The maximizing orbit set (exact: exactly the maximizers with gap;
/// interval: the certified superset at the input's precision).
pub fn max_orbit_set(sft: &Sft, phi: &Potential) -> Result<MaxOrbitSet> {
    Ok(classify(sft, phi)?.witness)
}

/// The zero-temperature measure determined by a classification.
///
/// `O`: the periodic-orbit measure.  `U`: the ergodic components without
/// weights.  `V` with transitive critical graph: the Parry measure of
/// `X_max`; non-transitive: one Parry measure per maximal-entropy
/// component (components whose entropy enclosure touches the maximum).
pub fn zero_temperature_measure(c: &Classification, bits: u32) -> Result<InvariantMeasure> {
    match c.tag {
        Tag::Undetermined { .. } => Err(Error::NotResolved),
        Tag::O => Ok(InvariantMeasure::Periodic(c.witness.orbits[0].clone())),
        Tag::U => Ok(InvariantMeasure::Components(
            c.witness.orbits.iter().cloned().map(InvariantMeasure::Periodic).collect(),
        )),
        Tag::V => {
            let critical = c.critical.as_ref().ok_or(Error::ExactnessRequired)?;
            let mut parries: Vec<(Enclosure, MarkovMeasure)> = Vec::new();
            for scc in &critical.sccs {
                if scc.len() == 1 && !critical.arcs.contains(&(scc[0], scc[0])) {
                    continue;
                }
                let adj = critical.scc_adjacency(scc);
                let words: Vec<_> = scc.iter().map(|&i| critical.words_by_id(i).clone()).collect();
                let ent = scc_log_perron(&adj, bits)?;
                let parry = parry_of_adjacency(&adj, words, bits)?;
                parries.push((ent, parry));
            }
            debug_assert!(!parries.is_empty());
            let max_lo =
                parries.iter().map(|(e, _)| e.lo_rat()).max().expect("nonempty critical graph");
            let maximal: Vec<MarkovMeasure> = parries
                .into_iter()
                .filter(|(e, _)| e.hi_rat() >= max_lo)
                .map(|(_, p)| p)
                .collect();
            if maximal.len() == 1 {
                Ok(InvariantMeasure::Markov(maximal.into_iter().next().unwrap()))
            } else {
                Ok(InvariantMeasure::Components(
                    maximal.into_iter().map(InvariantMeasure::Markov).collect(),
                ))
            }
        }
    }
}

/// Residual entropy at zero temperature: exactly `[0, 0]` on `O` and `U`;
/// on `V`, an enclosure of the log Perron root of the critical subgraph
/// (the maximum over its cyclic components), width `<= 2^-bits`.
pub fn residual_entropy_zero_temp(c: &Classification, bits: u32) -> Result<Enclosure> {
    match c.tag {
        Tag::Undetermined { .. } => Err(Error::NotResolved),
        Tag::O | Tag::U => Ok(Enclosure::zero()),
        Tag::V => {
            let critical = c.critical.as_ref().ok_or(Error::ExactnessRequired)?;
            let mut best: Option<Enclosure> = None;
            for scc in &critical.sccs {
                let adj = critical.scc_adjacency(scc);
                let e = scc_log_perron(&adj, bits)?;
                best = Some(match best {
                    None => e,
                    Some(b) => {
                        if e.lo_rat() > b.lo_rat() || e.hi_rat() > b.hi_rat() {
                            // max of two enclosures, endpointwise
                            Enclosure::from_rat_pair(
                                &core::cmp::max(e.lo_rat(), b.lo_rat()),
                                &core::cmp::max(e.hi_rat(), b.hi_rat()),
                                bits + 16,
                            )
                        } else {
                            b
                        }
                    }
                });
            }
            best.ok_or(Error::NotResolved)
        }
    }
}

fn scc_log_perron(adj: &[Vec<u8>], bits: u32) -> Result<Enclosure> {
    let m: Vec<Vec<Enclosure>> = adj
        .iter()
        .map(|row| row.iter().map(|&x| Enclosure::from_int(x as i64)).collect())
        .collect();
    perron_log_enclosure(&m, bits)
}

/// Parry (maximal-entropy Markov) measure of a strongly connected 0/1
/// adjacency matrix, rationalized at the requested precision.
pub fn parry_of_adjacency(
    adj: &[Vec<u8>],
    words: Vec<crate::sft::Word>,
    bits: u32,
) -> Result<MarkovMeasure> {
    let m: Vec<Vec<Enclosure>> = adj
        .iter()
        .map(|row| row.iter().map(|&x| Enclosure::from_int(x as i64)).collect())
        .collect();
    let weights: Vec<Vec<Rat>> = adj
        .iter()
        .map(|row| row.iter().map(|&x| crate::num::rat_int(x as i64)).collect())
        .collect();
    let target = crate::num::rat_pow2(-(bits as i64));
    let mut request = bits + 8;
    for _ in 0..4 {
        let data = perron_vectors(&m, request)?;
        let measure = markov_from_weights(words.clone(), &weights, &data.right, &data.left)?;
        if measure.stationarity_defect <= target {
            return Ok(measure);
        }
        request += 24;
    }
    Err(Error::PrecisionNotReached)
}

impl CriticalGraph {
    /// Word of a node given by its block-graph id.
    pub fn words_by_id(&self, id: usize) -> &crate::sft::Word {
        let pos = self.nodes.binary_search(&id).expect("node id in critical graph");
        &self.words[pos]
    }
}
