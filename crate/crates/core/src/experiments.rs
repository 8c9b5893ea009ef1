//! Executable counterexample families: the two-parameter potential on the
//! full 2-shift, the star-graph family whose perturbations change the
//! maximizing orbits at every scale, and the cycle-perturbation boundary
//! search showing that uniquely maximizing potentials sit arbitrarily
//! close to ties once the cylinder length is not fixed.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use num_traits::Signed;

use crate::ergodic::{classify, Classification, Tag};
use crate::error::{Error, Result};
use crate::num::{rat, rat_int, Rat};
use crate::potential::Potential;
use crate::sft::{PeriodicOrbit, Sft, Word};

/// A named (SFT, potential) pair with optional expected classification
/// data (coarse certified bounds, used as test metadata).
#[derive(Clone, Debug)]
pub struct Fixture {
    pub label: String,
    pub sft: Sft,
    pub phi: Potential,
    pub expected_tag: Option<Tag>,
    /// Coarse rational bounds on the residual entropy, when known.
    pub expected_residual: Option<(Rat, Rat)>,
}

/// The two-parameter family on the full 2-shift: values
/// `(a1, a2, a2, 0)` on the cylinders `00, 01, 10, 11`.  Ties between the
/// parameters produce positive residual entropy; any strict inequality
/// gives a periodic zero-temperature measure.
pub fn intro_fixture(a1: Rat, a2: Rat) -> Fixture {
    let sft = Sft::full_shift(2, rat(1, 2));
    let phi = Potential::from_rationals(
        &sft,
        2,
        alloc::vec![a1.clone(), a2.clone(), a2.clone(), rat_int(0)],
    )
    .expect("full 2-shift has cylinders 00,01,10,11");
    let (expected_tag, expected_residual) = if a1 == a2 {
        // Residual entropy is the golden-mean growth rate, 0.48121...
        (Some(Tag::V), Some((rat(4812, 10000), rat(4813, 10000))))
    } else {
        (Some(Tag::O), Some((rat_int(0), rat_int(0))))
    };
    Fixture { label: format!("intro:{a1},{a2}"), sft, phi, expected_tag, expected_residual }
}

/// The star SFT: center symbol 0 adjacent to 1, 2, 3 in both directions.
pub fn star_sft() -> Sft {
    Sft::new(
        alloc::vec![
            alloc::vec![0, 1, 1, 1],
            alloc::vec![1, 0, 0, 0],
            alloc::vec![1, 0, 0, 0],
            alloc::vec![1, 0, 0, 0],
        ],
        rat(1, 2),
    )
    .expect("star adjacency is a valid SFT")
}

/// The star family: the base potential takes value 2 on the cylinders
/// `01` and `10` and value 1 elsewhere, so the 2-cycle through 0 and 1 is
/// uniquely maximizing.  The perturbed potential at level `n` raises, by
/// `2/n`, exactly those `(2n+2)`-cylinders that start with `01` or `10`
/// and contain precisely one symbol from `{2, 3}`; this moves the entire
/// maximizing set to long orbits with overlapping supports.
pub fn star_fixture(n: u32) -> (Fixture, Fixture) {
    assert!(n >= 1);
    let sft = star_sft();
    let base_vals: Vec<Rat> = sft
        .nonempty_cylinders(2)
        .iter()
        .map(|w| {
            let s = w.symbols();
            if (s[0] == 0 && s[1] == 1) || (s[0] == 1 && s[1] == 0) {
                rat_int(2)
            } else {
                rat_int(1)
            }
        })
        .collect();
    let base_phi = Potential::from_rationals(&sft, 2, base_vals).expect("base star potential");
    let base = Fixture {
        label: format!("star:{n}:base"),
        sft: sft.clone(),
        phi: base_phi.clone(),
        expected_tag: Some(Tag::O),
        expected_residual: Some((rat_int(0), rat_int(0))),
    };
    let k = 2 * n as usize + 2;
    let bump = rat_int(2) / rat_int(n as i64);
    let vals: Vec<Rat> = sft
        .nonempty_cylinders(k)
        .iter()
        .map(|w| {
            let s = w.symbols();
            let starts = (s[0] == 0 && s[1] == 1) || (s[0] == 1 && s[1] == 0);
            let marks = s.iter().filter(|&&x| x == 2 || x == 3).count();
            if starts && marks == 1 {
                rat_int(2) + &bump
            } else if (s[0] == 0 && s[1] == 1) || (s[0] == 1 && s[1] == 0) {
                rat_int(2)
            } else {
                rat_int(1)
            }
        })
        .collect();
    let phi_n = Potential::from_rationals(&sft, k, vals).expect("perturbed star potential");
    // The critical graph is the three long cycles through the marks, with
    // growth rate 2^(1/(2n+2)): residual entropy ln 2 / (2n + 2).
    let kk = rat_int(k as i64);
    let perturbed = Fixture {
        label: format!("star:{n}:perturbed"),
        sft,
        phi: phi_n,
        expected_tag: Some(Tag::V),
        expected_residual: Some((rat(6931, 10000) / &kk, rat(6932, 10000) / &kk)),
    };
    (base, perturbed)
}

/// Data describing a cycle perturbation `phi_{eps, ell}`.
#[derive(Clone, Debug)]
pub struct CyclePerturbation {
    /// The perturbed potential, constant on `ell`-cylinders.
    pub phi: Potential,
    /// The competitor orbit `O(tau_x^m y)`.
    pub z: PeriodicOrbit,
    /// The chosen elementary cylinder length.
    pub ell: usize,
    /// The maximizing orbit of the unperturbed potential.
    pub x: PeriodicOrbit,
}

/// Raise `phi` by `eps` exactly on the `ell`-cylinders visited by
/// `z = O(tau_x^m y)` but not by the maximizing orbit `x`, where `ell` is
/// the smallest length making `z` elementary.  The integral of `x` is
/// unchanged; the integral of `z` rises by almost `eps`.
pub fn cycle_perturbation(
    sft: &Sft,
    phi: &Potential,
    y: &Word,
    m: usize,
    eps: &Rat,
) -> Result<CyclePerturbation> {
    if eps.is_negative() {
        return Err(Error::InvalidInput(String::from("eps must be nonnegative")));
    }
    if m < 2 {
        return Err(Error::InvalidInput(String::from("need m >= 2 copies of the maximizer")));
    }
    let c = classify(sft, phi)?;
    if c.tag != Tag::O {
        return Err(Error::InvalidInput(String::from(
            "cycle perturbation starts from a uniquely maximizing potential",
        )));
    }
    let x = c.witness.orbits[0].clone();
    let lx = x.period();
    let ly = y.len();
    let differs = (0..lx.min(ly)).any(|i| x.segment().symbols()[i] != y.symbols()[i]);
    if !differs {
        return Err(Error::InvalidInput(String::from(
            "y must differ from the maximizer in some early coordinate",
        )));
    }
    // z_m = O(tau_x^m y); admissibility (interior and wrap-around) is
    // checked by the orbit constructor.
    let mut seg: Vec<u8> = Vec::with_capacity(m * lx + ly);
    for _ in 0..m {
        seg.extend_from_slice(x.segment().symbols());
    }
    seg.extend_from_slice(y.symbols());
    let z = sft.orbit_of(&Word(seg))?;
    if z.period() != m * lx + ly {
        return Err(Error::NotAdmissible(String::from(
            "tau_x^m y does not have the expected prime period",
        )));
    }
    // Minimal elementary length, searched over the bracket
    // ((m-1) lx, m lx + ly].
    let mut ell = None;
    for cand in ((m - 1) * lx + 1)..=(m * lx + ly) {
        if cand >= phi.k() && z.is_elementary(cand) {
            ell = Some(cand);
            break;
        }
    }
    let ell = ell.ok_or_else(|| {
        Error::InvalidInput(String::from("no elementary length in the expected bracket"))
    })?;
    let phi_pert = perturb_at_level(sft, phi, &z, &x, ell, eps)?;
    Ok(CyclePerturbation { phi: phi_pert, z, ell, x })
}

fn perturb_at_level(
    sft: &Sft,
    phi: &Potential,
    z: &PeriodicOrbit,
    x: &PeriodicOrbit,
    ell: usize,
    t: &Rat,
) -> Result<Potential> {
    let refined = phi.refine(sft, ell)?;
    let raised: alloc::collections::BTreeSet<Word> = z
        .cylinder_support(ell)
        .difference(&x.cylinder_support(ell))
        .cloned()
        .collect();
    let values: Vec<Rat> = refined
        .cylinders()
        .iter()
        .zip(refined.values())
        .map(|(w, v)| {
            let base = v.as_exact().expect("exact mode").clone();
            if raised.contains(w) {
                base + t
            } else {
                base
            }
        })
        .collect();
    Potential::from_rationals(sft, ell, values)
}

/// Result of the boundary bisection.
#[derive(Clone, Debug)]
pub struct BoundaryT0 {
    /// Bracketing interval `[lo, hi]` of width `<= tol` containing `t0`.
    pub lo: Rat,
    pub hi: Rat,
    pub ell: usize,
    pub z: PeriodicOrbit,
    pub x: PeriodicOrbit,
}

/// Bisection for `t0 = sup { t : x remains a maximizer of phi_{t, ell} }`.
///
/// Probes classify exactly (rational arithmetic), so the bracket invariant
/// is sound: at `lo` the original maximizer still attains the maximum, at
/// `hi` it does not.  Requires the perturbation at `eps` to overtake the
/// maximizer, otherwise [`Error::PerturbationTooSmall`].
pub fn boundary_t0(
    sft: &Sft,
    phi: &Potential,
    y: &Word,
    m: usize,
    eps: &Rat,
    tol: &Rat,
) -> Result<BoundaryT0> {
    if !tol.is_positive() {
        return Err(Error::InvalidInput(String::from("tolerance must be positive")));
    }
    let pert = cycle_perturbation(sft, phi, y, m, eps)?;
    let mu_x = phi.integral_on_orbit(&pert.x)?.lo_rat();
    let mu_z_eps = pert.phi.integral_on_orbit(&pert.z)?.lo_rat();
    if mu_z_eps <= mu_x {
        return Err(Error::PerturbationTooSmall);
    }
    // Exact membership probe: x maximizes phi_t iff mu_x equals the
    // maximum cycle mean (the integral of x is unchanged by construction).
    let x_still_max = |t: &Rat| -> Result<bool> {
        let phi_t = perturb_at_level(sft, phi, &pert.z, &pert.x, pert.ell, t)?;
        let g = crate::ergodic::WeightedBlockGraph::new(sft, &phi_t)?;
        let b = crate::ergodic::max_cycle_mean(g.node_count(), g.out_adj(), &g.lo_weights());
        Ok(b == mu_x)
    };
    debug_assert!(x_still_max(&rat_int(0))?);
    let mut lo = rat_int(0);
    let mut hi = eps.clone();
    while &hi - &lo > *tol {
        let mid = (&lo + &hi) / rat_int(2);
        if x_still_max(&mid)? {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(BoundaryT0 { lo, hi, ell: pert.ell, z: pert.z, x: pert.x })
}

/// Classify the perturbed potential at parameter `t` (exact), for
/// endpoint checks around the boundary.
pub fn classify_at_t(
    sft: &Sft,
    phi: &Potential,
    pert: &CyclePerturbation,
    t: &Rat,
) -> Result<Classification> {
    let phi_t = perturb_at_level(sft, phi, &pert.z, &pert.x, pert.ell, t)?;
    classify(sft, &phi_t)
}
