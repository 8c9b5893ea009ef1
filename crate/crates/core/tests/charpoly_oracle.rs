//! Independent verification of the Perron machinery: the largest real
//! root of the characteristic polynomial, located by exact sign
//! bisection, must agree with the power-iteration enclosures.

use groundstate_core::ergodic::{classify, residual_entropy_zero_temp};
use groundstate_core::experiments::{intro_fixture, star_fixture, star_sft};
use groundstate_core::num::interval::exp_rat;
use groundstate_core::num::{rat, rat_int, rat_pow2, Rat};

/// det(xI - A) evaluated at rational `x` by exact Gaussian elimination.
fn charpoly_at(adj: &[Vec<u8>], x: &Rat) -> Rat {
    let n = adj.len();
    let mut m: Vec<Vec<Rat>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let a = rat_int(adj[i][j] as i64);
                    if i == j {
                        x - a
                    } else {
                        -a
                    }
                })
                .collect()
        })
        .collect();
    let mut det = rat_int(1);
    for col in 0..n {
        let pivot = match (col..n).find(|&r| m[r][col] != rat_int(0)) {
            Some(p) => p,
            None => return rat_int(0),
        };
        if pivot != col {
            m.swap(pivot, col);
            det = -det;
        }
        let p = m[col][col].clone();
        det *= &p;
        for r in col + 1..n {
            let factor = &m[r][col] / &p;
            for c in col..n {
                let sub = &factor * &m[col][c];
                m[r][c] = &m[r][c] - &sub;
            }
        }
    }
    det
}

/// Enclosure of the largest real root of det(xI - A) in `(lo, hi]`, by
/// bisection on the sign (the polynomial is positive beyond the root).
fn largest_root(adj: &[Vec<u8>], mut lo: Rat, mut hi: Rat, bits: i64) -> (Rat, Rat) {
    assert!(charpoly_at(adj, &hi) > rat_int(0), "upper bracket must lie beyond the root");
    let eps = rat_pow2(-bits);
    while &hi - &lo > eps {
        let mid = (&lo + &hi) / rat_int(2);
        if charpoly_at(adj, &mid) > rat_int(0) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    (lo, hi)
}

fn exp_interval(lo: &Rat, hi: &Rat, bits: u32) -> (Rat, Rat) {
    (exp_rat(lo, bits).lo_rat(), exp_rat(hi, bits).hi_rat())
}

#[test]
fn golden_tie_residual_entropy_matches_characteristic_root() {
    let f = intro_fixture(rat_int(1), rat_int(1));
    let c = classify(&f.sft, &f.phi).unwrap();
    let critical = c.critical.as_ref().unwrap();
    assert_eq!(critical.sccs.len(), 1);
    let adj = critical.scc_adjacency(&critical.sccs[0]);
    // Largest root of the golden 2-block adjacency: the golden ratio.
    let (r_lo, r_hi) = largest_root(&adj, rat_int(1), rat_int(3), 48);
    assert!(r_lo <= rat(1618034, 1000000) && rat(1618033, 1000000) <= r_hi);
    let h = residual_entropy_zero_temp(&c, 40).unwrap();
    // exp(h) must intersect the bisected root enclosure.
    let (e_lo, e_hi) = exp_interval(&h.lo_rat(), &h.hi_rat(), 60);
    assert!(e_lo <= r_hi && r_lo <= e_hi, "exp([{h}]) misses the characteristic root");
}

#[test]
fn star_perturbation_residual_entropy_matches_characteristic_root() {
    for n in [1u32, 2] {
        let (_, pert) = star_fixture(n);
        let c = classify(&pert.sft, &pert.phi).unwrap();
        let critical = c.critical.as_ref().unwrap();
        assert_eq!(critical.sccs.len(), 1, "the three long cycles share nodes");
        let adj = critical.scc_adjacency(&critical.sccs[0]);
        let (r_lo, r_hi) = largest_root(&adj, rat_int(1), rat_int(2), 40);
        let h = residual_entropy_zero_temp(&c, 30).unwrap();
        let (e_lo, e_hi) = exp_interval(&h.lo_rat(), &h.hi_rat(), 50);
        assert!(e_lo <= r_hi && r_lo <= e_hi, "n={n}: exp([{h}]) misses the root");
        // The root is 2^(1/(2n+2)): its (2n+2)-th power is 2.
        let k = 2 * n as usize + 2;
        let mut pow_lo = rat_int(1);
        let mut pow_hi = rat_int(1);
        for _ in 0..k {
            pow_lo *= &r_lo;
            pow_hi *= &r_hi;
        }
        assert!(pow_lo <= rat_int(2) && rat_int(2) <= pow_hi);
    }
}

#[test]
fn star_topological_entropy_matches_characteristic_root() {
    let sft = star_sft();
    let h = sft.topological_entropy(40).unwrap();
    let adj: Vec<Vec<u8>> = sft.transitions().to_vec();
    // Largest root of x^4 - 3x^2 = 0 restricted to the Perron root:
    // sqrt(3).
    let (r_lo, r_hi) = largest_root(&adj, rat_int(1), rat_int(2), 48);
    let sq_lo = &r_lo * &r_lo;
    let sq_hi = &r_hi * &r_hi;
    assert!(sq_lo <= rat_int(3) && rat_int(3) <= sq_hi);
    let (e_lo, e_hi) = exp_interval(&h.lo_rat(), &h.hi_rat(), 60);
    assert!(e_lo <= r_hi && r_lo <= e_hi);
}
