//! Karp's minimum/maximum mean cycle, in exact rational arithmetic.
//!
//! The graph must be strongly connected.  Arc weights are given per source
//! node (the convention used by the block graph, where the weight of
//! `u -> v` is the potential value on cylinder `u`).

use alloc::vec;
use alloc::vec::Vec;

use crate::num::{rat_int, Rat};

/// Minimum cycle mean of a strongly connected digraph, Karp's theorem:
/// `mu* = min_v max_k (F_n(v) - F_k(v)) / (n - k)` with `F_k` the minimum
/// weight of a `k`-arc walk from a fixed source.
pub fn min_cycle_mean(n: usize, out_adj: &[Vec<usize>], source_weight: &[Rat]) -> Rat {
    assert!(n >= 1);
    let mut f: Vec<Vec<Option<Rat>>> = vec![vec![None; n]; n + 1];
    f[0][0] = Some(rat_int(0));
    for k in 1..=n {
        for u in 0..n {
            let fu = match &f[k - 1][u] {
                Some(x) => x.clone(),
                None => continue,
            };
            for &v in &out_adj[u] {
                let cand = &fu + &source_weight[u];
                match &f[k][v] {
                    Some(cur) if *cur <= cand => {}
                    _ => f[k][v] = Some(cand),
                }
            }
        }
    }
    let mut best: Option<Rat> = None;
    for v in 0..n {
        let fnv = match &f[n][v] {
            Some(x) => x.clone(),
            None => continue,
        };
        let mut worst: Option<Rat> = None;
        for k in 0..n {
            let fkv = match &f[k][v] {
                Some(x) => x.clone(),
                None => continue,
            };
            let ratio = (&fnv - &fkv) / rat_int((n - k) as i64);
            worst = Some(match worst {
                None => ratio,
                Some(w) => {
                    if ratio > w {
                        ratio
                    } else {
                        w
                    }
                }
            });
        }
        if let Some(w) = worst {
            best = Some(match best {
                None => w,
                Some(b) => {
                    if w < b {
                        w
                    } else {
                        b
                    }
                }
            });
        }
    }
    best.expect("strongly connected graph has a cycle")
}

/// Maximum cycle mean: Karp on negated weights.
pub fn max_cycle_mean(n: usize, out_adj: &[Vec<usize>], source_weight: &[Rat]) -> Rat {
    let negated: Vec<Rat> = source_weight.iter().map(|w| -w.clone()).collect();
    -min_cycle_mean(n, out_adj, &negated)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::num::rat;

    #[test]
    fn two_node_loop_vs_self_loop() {
        // Node 0 self-loop (weight 1) and 0 <-> 1 loop (weights 1, 0).
        let adj = vec![vec![0, 1], vec![0]];
        let w = vec![rat(1, 1), rat(0, 1)];
        assert_eq!(max_cycle_mean(2, &adj, &w), rat(1, 1));
        assert_eq!(min_cycle_mean(2, &adj, &w), rat(1, 2));
    }

    #[test]
    fn periodic_graph_is_handled() {
        // Pure 3-cycle, weights 1, 2, 3: only cycle mean is 2.
        let adj = vec![vec![1], vec![2], vec![0]];
        let w = vec![rat(1, 1), rat(2, 1), rat(3, 1)];
        assert_eq!(max_cycle_mean(3, &adj, &w), rat(2, 1));
        assert_eq!(min_cycle_mean(3, &adj, &w), rat(2, 1));
    }

    #[test]
    fn mixed_cycles() {
        // 0 -> 1 -> 2 -> 0 (weights 0, 3, 3 -> mean 2) and 0 -> 0 (weight 1).
        let adj = vec![vec![0, 1], vec![2], vec![0]];
        let w = vec![rat(1, 1), rat(3, 1), rat(3, 1)];
        // Self-loop at 0 uses weight w[0] = 1; triangle mean = (1+3+3)/3.
        assert_eq!(max_cycle_mean(3, &adj, &w), rat(7, 3));
        assert_eq!(min_cycle_mean(3, &adj, &w), rat(1, 1));
    }
}
