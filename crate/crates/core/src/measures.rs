//! Invariant measures (periodic-orbit, Markov, ergodic-component lists),
//! their integrals and entropies, and certified Wasserstein distances on
//! cylinder marginals.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::num::{Enclosure, Rat, Scalar};
use crate::potential::Potential;
use crate::sft::{PeriodicOrbit, Word};

/// A stationary Markov measure on block words: `pi` is exactly stochastic,
/// every row of `p` is exactly stochastic, and `pi * p = pi` holds within
/// the recorded defect.
#[derive(Clone, Debug, PartialEq)]
pub struct MarkovMeasure {
    /// Base-SFT words labeling the chain states (all the same length).
    pub block_words: Vec<Word>,
    pub pi: Vec<Rat>,
    pub p: Vec<Vec<Rat>>,
    /// `||pi p - pi||_1`, exact.
    pub stationarity_defect: Rat,
}

impl MarkovMeasure {
    pub fn new(block_words: Vec<Word>, pi: Vec<Rat>, p: Vec<Vec<Rat>>) -> Result<MarkovMeasure> {
        let n = block_words.len();
        if n == 0 || pi.len() != n || p.len() != n || p.iter().any(|r| r.len() != n) {
            return Err(Error::InvalidInput(String::from("markov measure shape mismatch")));
        }
        let kb = block_words[0].len();
        if block_words.iter().any(|w| w.len() != kb) {
            return Err(Error::InvalidInput(String::from("block words of mixed length")));
        }
        if pi.iter().any(Rat::is_negative) || pi.iter().sum::<Rat>() != Rat::one() {
            return Err(Error::InvalidInput(String::from("pi is not a probability vector")));
        }
        for row in &p {
            if row.iter().any(Rat::is_negative) || row.iter().sum::<Rat>() != Rat::one() {
                return Err(Error::InvalidInput(String::from("a row of p is not stochastic")));
            }
        }
        let defect = stationarity_defect(&pi, &p);
        Ok(MarkovMeasure { block_words, pi, p, stationarity_defect: defect })
    }

    pub fn block_len(&self) -> usize {
        self.block_words[0].len()
    }

    pub fn state_count(&self) -> usize {
        self.block_words.len()
    }
}

fn stationarity_defect(pi: &[Rat], p: &[Vec<Rat>]) -> Rat {
    let n = pi.len();
    let mut defect = Rat::zero();
    for v in 0..n {
        let mut s = Rat::zero();
        for u in 0..n {
            s += &pi[u] * &p[u][v];
        }
        defect += (s - &pi[v]).abs();
    }
    defect
}

/// Build the exactly-stochastic Markov measure induced by a nonnegative
/// weight matrix and approximate right/left Perron vectors:
/// `p(u,v) = w(u,v) r_v / sum_v' w(u,v') r_v'` and `pi_u = l_u r_u / sum`.
pub fn markov_from_weights(
    block_words: Vec<Word>,
    weights: &[Vec<Rat>],
    right: &[Rat],
    left: &[Rat],
) -> Result<MarkovMeasure> {
    let n = block_words.len();
    let mut p = vec![vec![Rat::zero(); n]; n];
    for u in 0..n {
        let mut row = Vec::with_capacity(n);
        let mut sum = Rat::zero();
        for v in 0..n {
            let raw = &weights[u][v] * &right[v];
            sum += &raw;
            row.push(raw);
        }
        if sum.is_zero() {
            return Err(Error::InvalidInput(String::from("weight matrix has a zero row")));
        }
        for v in 0..n {
            p[u][v] = &row[v] / &sum;
        }
    }
    let mut pi = Vec::with_capacity(n);
    let mut total = Rat::zero();
    for u in 0..n {
        let raw = &left[u] * &right[u];
        total += &raw;
        pi.push(raw);
    }
    if total.is_zero() {
        return Err(Error::InvalidInput(String::from("degenerate Perron vectors")));
    }
    for x in pi.iter_mut() {
        *x = &*x / &total;
    }
    MarkovMeasure::new(block_words, pi, p)
}

/// An invariant measure value.
#[derive(Clone, Debug, PartialEq)]
pub enum InvariantMeasure {
    /// The unique measure on a periodic orbit (weights `1/n`).
    Periodic(PeriodicOrbit),
    /// A stationary Markov measure on block words.
    Markov(MarkovMeasure),
    /// Ergodic components without convex weights (the weights are
    /// deliberately not computed).
    Components(Vec<InvariantMeasure>),
}

/// Integral of a locally constant potential against the measure.
pub fn measure_integral(mu: &InvariantMeasure, phi: &Potential) -> Result<Scalar> {
    match mu {
        InvariantMeasure::Periodic(orbit) => phi.integral_on_orbit(orbit),
        InvariantMeasure::Markov(m) => {
            let kb = m.block_len();
            if phi.k() <= kb {
                let mut lo = Rat::zero();
                let mut hi = Rat::zero();
                let mut exact = true;
                for (u, w) in m.block_words.iter().enumerate() {
                    let v = phi.value_on(&w.prefix(phi.k()))?;
                    exact &= v.is_exact();
                    lo += v.lo_rat() * &m.pi[u];
                    hi += v.hi_rat() * &m.pi[u];
                }
                Ok(if exact {
                    Scalar::Exact(lo)
                } else {
                    Scalar::Interval(Enclosure::from_rat_pair(&lo, &hi, 96))
                })
            } else if phi.k() == kb + 1 {
                let mut lo = Rat::zero();
                let mut hi = Rat::zero();
                let mut exact = true;
                for (u, wu) in m.block_words.iter().enumerate() {
                    for (v, wv) in m.block_words.iter().enumerate() {
                        if m.p[u][v].is_zero() {
                            continue;
                        }
                        let mut sym = wu.symbols().to_vec();
                        sym.push(*wv.symbols().last().unwrap());
                        let val = phi.value_on(&Word(sym))?;
                        exact &= val.is_exact();
                        let mass = &m.pi[u] * &m.p[u][v];
                        lo += val.lo_rat() * &mass;
                        hi += val.hi_rat() * &mass;
                    }
                }
                Ok(if exact {
                    Scalar::Exact(lo)
                } else {
                    Scalar::Interval(Enclosure::from_rat_pair(&lo, &hi, 96))
                })
            } else {
                Err(Error::DomainMismatch(alloc::format!(
                    "potential k = {} exceeds block length + 1 = {}",
                    phi.k(),
                    kb + 1
                )))
            }
        }
        InvariantMeasure::Components(_) => Err(Error::WeightsUnknown),
    }
}

/// Certified entropy of a Markov measure:
/// `-sum_u pi_u sum_v p(u,v) ln p(u,v)`, width `<= 2^-bits` plus rounding
/// slack.  Deterministic chains give exactly `[0, 0]`.
pub fn markov_entropy(mu: &InvariantMeasure, bits: u32) -> Result<Enclosure> {
    let m = match mu {
        InvariantMeasure::Markov(m) => m,
        _ => return Err(Error::WrongVariant),
    };
    let n = m.state_count();
    let wp = bits + 16;
    let mut acc = Enclosure::zero();
    for u in 0..n {
        if m.pi[u].is_zero() {
            continue;
        }
        for v in 0..n {
            let p = &m.p[u][v];
            if p.is_zero() || p.is_one() {
                // p ln p is exactly zero at both ends.
                continue;
            }
            let pe = Enclosure::from_rat(p, wp);
            let lnp = pe.ln(wp)?;
            let mass = &m.pi[u] * p;
            acc = acc.add(&lnp.scale_rat(&mass, wp), wp);
        }
    }
    Ok(acc.neg())
}

/// Marginal distribution of the measure on nonempty `m`-cylinders.
pub fn cylinder_marginal(mu: &InvariantMeasure, m: usize) -> Result<BTreeMap<Word, Rat>> {
    assert!(m >= 1);
    match mu {
        InvariantMeasure::Periodic(orbit) => {
            let n = orbit.period();
            let each = Rat::new(1.into(), (n as i64).into());
            let mut out: BTreeMap<Word, Rat> = BTreeMap::new();
            for i in 0..n {
                *out.entry(orbit.window(i, m)).or_insert_with(Rat::zero) += &each;
            }
            Ok(out)
        }
        InvariantMeasure::Markov(mm) => {
            let kb = mm.block_len();
            let mut out: BTreeMap<Word, Rat> = BTreeMap::new();
            if m <= kb {
                for (u, w) in mm.block_words.iter().enumerate() {
                    if mm.pi[u].is_zero() {
                        continue;
                    }
                    *out.entry(w.prefix(m)).or_insert_with(Rat::zero) += &mm.pi[u];
                }
            } else {
                // Walk t = m - kb arcs; the path spells a word of length m.
                let t = m - kb;
                let n = mm.state_count();
                let mut stack: Vec<(usize, usize, Rat, Vec<u8>)> = Vec::new();
                for u in 0..n {
                    if !mm.pi[u].is_zero() {
                        stack.push((u, 0, mm.pi[u].clone(), mm.block_words[u].symbols().to_vec()));
                    }
                }
                while let Some((u, steps, mass, word)) = stack.pop() {
                    if steps == t {
                        *out.entry(Word(word)).or_insert_with(Rat::zero) += &mass;
                        continue;
                    }
                    for v in 0..n {
                        if mm.p[u][v].is_zero() {
                            continue;
                        }
                        let mut nw = word.clone();
                        nw.push(*mm.block_words[v].symbols().last().unwrap());
                        stack.push((v, steps + 1, &mass * &mm.p[u][v], nw));
                    }
                }
            }
            Ok(out)
        }
        InvariantMeasure::Components(_) => Err(Error::WeightsUnknown),
    }
}

/// Certified Wasserstein-1 distance at marginal depth `m`.
///
/// The `m`-cylinder marginals are compared exactly under the cylinder-tree
/// metric (which agrees with `d_theta` between distinct `m`-cylinders) and
/// the result is widened by the diameter tail, since a 1-Lipschitz test
/// function varies by at most `theta^m` across an `m`-cylinder.
pub fn w1_distance(
    theta: &Rat,
    mu1: &InvariantMeasure,
    mu2: &InvariantMeasure,
    m: usize,
) -> Result<Enclosure> {
    let m1 = cylinder_marginal(mu1, m)?;
    let m2 = cylinder_marginal(mu2, m)?;
    let w = tree_w1(theta, &m1, &m2, m);
    // Tail: moving every point to a marginal representative costs at most
    // theta^(m+1) per measure; theta^m covers it whenever theta <= 1/2.
    let tm = pow_rat(theta, m);
    let tail = {
        let two_next = Rat::from_integer(2.into()) * &tm * theta;
        if two_next > tm {
            two_next
        } else {
            tm.clone()
        }
    };
    let lo = {
        let l = &w - &tail;
        if l.is_negative() {
            Rat::zero()
        } else {
            l
        }
    };
    let hi = &w + &tail;
    Ok(Enclosure::from_rat_pair(&lo, &hi, 96))
}

/// Exact W1 between `m`-cylinder marginals under the tree metric: the
/// ultrametric `d_theta` is a tree metric on the cylinder tree, where the
/// transport cost is a weighted sum of mass imbalances over prefixes.
fn tree_w1(theta: &Rat, m1: &BTreeMap<Word, Rat>, m2: &BTreeMap<Word, Rat>, m: usize) -> Rat {
    let half = Rat::new(1.into(), 2.into());
    let mut total = Rat::zero();
    for j in 1..=m {
        // Edge weight from a level-j node to its parent.
        let cj = if j == m {
            pow_rat(theta, m) * &half
        } else {
            (pow_rat(theta, j) - pow_rat(theta, j + 1)) * &half
        };
        let mut imbalance = Rat::zero();
        let mut l1: BTreeMap<Word, Rat> = BTreeMap::new();
        let mut l2: BTreeMap<Word, Rat> = BTreeMap::new();
        for (w, mass) in m1 {
            *l1.entry(w.prefix(j)).or_insert_with(Rat::zero) += mass;
        }
        for (w, mass) in m2 {
            *l2.entry(w.prefix(j)).or_insert_with(Rat::zero) += mass;
        }
        let keys: alloc::collections::BTreeSet<&Word> = l1.keys().chain(l2.keys()).collect();
        for w in keys {
            let a = l1.get(w).cloned().unwrap_or_else(Rat::zero);
            let b = l2.get(w).cloned().unwrap_or_else(Rat::zero);
            imbalance += (a - b).abs();
        }
        total += cj * imbalance;
    }
    total
}

fn pow_rat(r: &Rat, e: usize) -> Rat {
    let mut out = Rat::one();
    for _ in 0..e {
        out *= r;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::num::{rat, rat_pow2};
    use crate::potential::fixtures::intro;
    use crate::sft::Sft;

    fn w(s: &[u8]) -> Word {
        Word(s.to_vec())
    }

    fn delta_orbit(sft: &Sft, seg: &[u8]) -> InvariantMeasure {
        InvariantMeasure::Periodic(sft.orbit_of(&w(seg)).unwrap())
    }

    fn uniform_bernoulli() -> MarkovMeasure {
        MarkovMeasure::new(
            vec![w(&[0]), w(&[1])],
            vec![rat(1, 2), rat(1, 2)],
            vec![vec![rat(1, 2), rat(1, 2)], vec![rat(1, 2), rat(1, 2)]],
        )
        .unwrap()
    }

    #[test]
    fn periodic_integral_reads_cylinders() {
        let (sft, phi) = intro(rat(1, 1), rat(9, 10));
        let mu = delta_orbit(&sft, &[0]);
        assert_eq!(measure_integral(&mu, &phi).unwrap(), Scalar::Exact(rat(1, 1)));
    }

    #[test]
    fn bernoulli_integral_is_half() {
        let sft = Sft::full_shift(2, rat(1, 2));
        let phi =
            crate::potential::Potential::from_rationals(&sft, 1, vec![rat(1, 1), rat(0, 1)])
                .unwrap();
        let mu = InvariantMeasure::Markov(uniform_bernoulli());
        assert_eq!(measure_integral(&mu, &phi).unwrap(), Scalar::Exact(rat(1, 2)));
    }

    #[test]
    fn markov_integral_with_k_eq_block_plus_one() {
        // Uniform Bernoulli against an LC_2 potential: each 2-cylinder has
        // probability 1/4.
        let (_, phi) = intro(rat(1, 1), rat(9, 10));
        let mu = InvariantMeasure::Markov(uniform_bernoulli());
        assert_eq!(
            measure_integral(&mu, &phi).unwrap(),
            Scalar::Exact((rat(1, 1) + rat(9, 10) + rat(9, 10) + rat(0, 1)) / rat(4, 1))
        );
    }

    #[test]
    fn components_refuse_integrals() {
        let sft = Sft::full_shift(2, rat(1, 2));
        let mu = InvariantMeasure::Components(vec![delta_orbit(&sft, &[0]), delta_orbit(&sft, &[1])]);
        let (_, phi) = intro(rat(1, 1), rat(1, 1));
        assert!(matches!(measure_integral(&mu, &phi), Err(Error::WeightsUnknown)));
    }

    #[test]
    fn entropy_of_uniform_bernoulli_is_log2() {
        let mu = InvariantMeasure::Markov(uniform_bernoulli());
        let h = markov_entropy(&mu, 48).unwrap();
        let l2 = crate::num::interval::ln2(60);
        assert!(h.overlaps(&l2));
        assert!(h.width() <= rat_pow2(-44));
    }

    #[test]
    fn entropy_of_deterministic_chain_is_exactly_zero() {
        // The 2-cycle as a Markov chain.
        let m = MarkovMeasure::new(
            vec![w(&[0]), w(&[1])],
            vec![rat(1, 2), rat(1, 2)],
            vec![vec![rat(0, 1), rat(1, 1)], vec![rat(1, 1), rat(0, 1)]],
        )
        .unwrap();
        let h = markov_entropy(&InvariantMeasure::Markov(m), 30).unwrap();
        assert_eq!(h.lo_rat(), rat(0, 1));
        assert_eq!(h.hi_rat(), rat(0, 1));
    }

    /// The golden-mean Parry measure on 2-blocks, pulled from the
    /// zero-temperature machinery on the tied two-parameter fixture.
    fn golden_parry() -> MarkovMeasure {
        let (sft, phi) = intro(rat(1, 1), rat(1, 1));
        let c = crate::ergodic::classify(&sft, &phi).unwrap();
        match crate::ergodic::zero_temperature_measure(&c, 40).unwrap() {
            InvariantMeasure::Markov(m) => m,
            other => panic!("expected Parry measure, got {other:?}"),
        }
    }

    /// Bisection enclosure of sqrt(5), for golden-ratio oracles.
    fn sqrt5(bits: i64) -> (Rat, Rat) {
        let mut lo = rat(2, 1);
        let mut hi = rat(3, 1);
        let eps = rat_pow2(-bits);
        while &hi - &lo > eps {
            let mid = (&lo + &hi) / rat(2, 1);
            if &mid * &mid <= rat(5, 1) {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        (lo, hi)
    }

    #[test]
    fn golden_parry_integral_from_stationary_vector() {
        // phi' = (1, 1, 0) on blocks 00, 01, 10: the integral is
        // pi(00) + pi(01) = (g + 1)/(g + 2) with g the golden ratio.
        let m = golden_parry();
        let gm = crate::sft::fixtures::golden_mean();
        let phi =
            crate::potential::Potential::from_rationals(&gm, 2, vec![rat(1, 1), rat(1, 1), rat(0, 1)])
                .unwrap();
        let got = measure_integral(&InvariantMeasure::Markov(m.clone()), &phi).unwrap();
        let (s_lo, s_hi) = sqrt5(50);
        let g_lo = (rat(1, 1) + s_lo) / rat(2, 1);
        let g_hi = (rat(1, 1) + s_hi) / rat(2, 1);
        let target_lo = (&g_lo + rat(1, 1)) / (&g_hi + rat(2, 1));
        let target_hi = (&g_hi + rat(1, 1)) / (&g_lo + rat(2, 1));
        let slack = &m.stationarity_defect + rat_pow2(-38);
        assert!(
            got.lo_rat() >= target_lo - &slack && got.hi_rat() <= target_hi + &slack,
            "integral {got:?} outside the golden-ratio target"
        );
    }

    #[test]
    fn golden_parry_entropy_achieves_topological_entropy() {
        let m = golden_parry();
        let h = markov_entropy(&InvariantMeasure::Markov(m), 40).unwrap();
        // log((1+sqrt5)/2) = 0.4812118250596034...
        let target = Rat::new(4812118250596034u64.into(), 10_000_000_000_000_000u64.into());
        assert!((h.lo_rat() - &target).abs() < rat(1, 1_000_000));
        assert!((h.hi_rat() - &target).abs() < rat(1, 1_000_000));
    }

    #[test]
    fn w1_of_identical_measures_contains_zero() {
        let sft = Sft::full_shift(2, rat(1, 2));
        let mu = delta_orbit(&sft, &[0, 1]);
        let d = w1_distance(&rat(1, 2), &mu, &mu, 8).unwrap();
        assert!(d.contains_rat(&rat(0, 1)));
        assert!(d.hi_rat() <= rat_pow2(-8));
    }

    #[test]
    fn w1_of_fixed_points_is_theta() {
        let sft = Sft::full_shift(2, rat(1, 2));
        let a = delta_orbit(&sft, &[0]);
        let b = delta_orbit(&sft, &[1]);
        let d = w1_distance(&rat(1, 2), &a, &b, 8).unwrap();
        // Point masses at distance theta = 1/2.
        assert!(d.contains_rat(&rat(1, 2)));
        assert!(d.width() <= rat(1, 100));
    }

    #[test]
    fn w1_metric_axioms_on_samples() {
        let sft = Sft::full_shift(2, rat(1, 2));
        let th = rat(1, 2);
        let ms = [
            delta_orbit(&sft, &[0]),
            delta_orbit(&sft, &[1]),
            delta_orbit(&sft, &[0, 1]),
            InvariantMeasure::Markov(uniform_bernoulli()),
        ];
        let m = 6;
        let slack = rat(3, 1) * rat_pow2(-(m as i64));
        for a in &ms {
            for b in &ms {
                let dab = w1_distance(&th, a, b, m).unwrap();
                let dba = w1_distance(&th, b, a, m).unwrap();
                // Symmetry within slack.
                assert!((dab.lo_rat() - dba.lo_rat()).abs() <= slack);
                for c in &ms {
                    let dac = w1_distance(&th, a, c, m).unwrap();
                    let dcb = w1_distance(&th, c, b, m).unwrap();
                    // Triangle within slack.
                    assert!(dab.lo_rat() <= dac.hi_rat() + dcb.hi_rat() + &slack);
                }
            }
        }
    }

    /// Independent oracle: exact min-cost transport by successive shortest
    /// paths on the bipartite marginal supports.
    fn transport_oracle(theta: &Rat, m1: &BTreeMap<Word, Rat>, m2: &BTreeMap<Word, Rat>) -> Rat {
        let xs: Vec<(&Word, &Rat)> = m1.iter().collect();
        let ys: Vec<(&Word, &Rat)> = m2.iter().collect();
        let dist = |a: &Word, b: &Word| -> Rat {
            if a == b {
                return Rat::zero();
            }
            let mut i = 0;
            while a.symbols()[i] == b.symbols()[i] {
                i += 1;
            }
            pow_rat(theta, i + 1)
        };
        // Successive shortest augmenting paths with exact potentials on a
        // tiny bipartite network.
        let n = xs.len();
        let m = ys.len();
        let mut supply: Vec<Rat> = xs.iter().map(|(_, r)| (*r).clone()).collect();
        let mut demand: Vec<Rat> = ys.iter().map(|(_, r)| (*r).clone()).collect();
        let mut flow = vec![vec![Rat::zero(); m]; n];
        let mut total = Rat::zero();
        loop {
            let si = match supply.iter().position(|s| s.is_positive()) {
                Some(i) => i,
                None => break,
            };
            // Bellman-Ford over residual graph from si.
            let inf = || -> Option<Rat> { None };
            let mut dist_x: Vec<Option<Rat>> = vec![inf(); n];
            let mut dist_y: Vec<Option<Rat>> = vec![inf(); m];
            let mut pred_y: Vec<Option<usize>> = vec![None; m];
            let mut pred_x: Vec<Option<usize>> = vec![None; n];
            dist_x[si] = Some(Rat::zero());
            for _ in 0..(n + m) {
                let mut changed = false;
                for i in 0..n {
                    let dx = match &dist_x[i] {
                        Some(d) => d.clone(),
                        None => continue,
                    };
                    for j in 0..m {
                        let c = dist(xs[i].0, ys[j].0);
                        let cand = &dx + &c;
                        if dist_y[j].as_ref().map_or(true, |d| cand < *d) {
                            dist_y[j] = Some(cand);
                            pred_y[j] = Some(i);
                            changed = true;
                        }
                    }
                }
                for j in 0..m {
                    let dy = match &dist_y[j] {
                        Some(d) => d.clone(),
                        None => continue,
                    };
                    for i in 0..n {
                        if flow[i][j].is_positive() {
                            let c = dist(xs[i].0, ys[j].0);
                            let cand = &dy - &c;
                            if dist_x[i].as_ref().map_or(true, |d| cand < *d) {
                                dist_x[i] = Some(cand);
                                pred_x[i] = Some(j);
                                changed = true;
                            }
                        }
                    }
                }
                if !changed {
                    break;
                }
            }
            // Cheapest reachable demand.
            let tj = (0..m)
                .filter(|&j| demand[j].is_positive() && dist_y[j].is_some())
                .min_by(|&a, &b| dist_y[a].as_ref().unwrap().cmp(dist_y[b].as_ref().unwrap()))
                .expect("feasible transport");
            // Bottleneck along the augmenting path.
            let mut bottleneck = if supply[si] < demand[tj] { supply[si].clone() } else { demand[tj].clone() };
            let mut j = tj;
            loop {
                let i = pred_y[j].unwrap();
                if i == si {
                    break;
                }
                let back = pred_x[i].unwrap();
                if flow[i][back] < bottleneck {
                    bottleneck = flow[i][back].clone();
                }
                j = back;
            }
            // Apply.
            let mut j = tj;
            loop {
                let i = pred_y[j].unwrap();
                flow[i][j] += &bottleneck;
                total += &bottleneck * dist(xs[i].0, ys[j].0);
                if i == si {
                    break;
                }
                let back = pred_x[i].unwrap();
                flow[i][back] -= &bottleneck;
                total -= &bottleneck * dist(xs[i].0, ys[back].0);
                j = back;
            }
            supply[si] -= &bottleneck;
            demand[tj] -= &bottleneck;
        }
        total
    }

    #[test]
    fn tree_formula_matches_exact_transport() {
        let sft = Sft::full_shift(2, rat(1, 2));
        let th = rat(1, 2);
        let measures = [
            delta_orbit(&sft, &[0]),
            delta_orbit(&sft, &[0, 1]),
            delta_orbit(&sft, &[0, 0, 1]),
            InvariantMeasure::Markov(uniform_bernoulli()),
        ];
        for a in &measures {
            for b in &measures {
                for depth in [2usize, 3, 4] {
                    let ma = cylinder_marginal(a, depth).unwrap();
                    let mb = cylinder_marginal(b, depth).unwrap();
                    let tree = tree_w1(&th, &ma, &mb, depth);
                    let lp = transport_oracle(&th, &ma, &mb);
                    assert_eq!(tree, lp, "tree formula must equal the exact LP optimum");
                }
            }
        }
    }
}
