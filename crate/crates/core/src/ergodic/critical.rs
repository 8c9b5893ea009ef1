//! The critical subgraph `X_max`: exactly the arcs lying on some cycle of
//! maximal mean weight.
//!
//! Computed by reweighting `w'(u -> v) = w(u) - b` (all cycle means become
//! nonpositive), taking longest-path potentials `p` over walks, keeping the
//! tight arcs `p(u) + w'(u -> v) = p(v)`, and restricting to strongly
//! connected components of the tight subgraph that contain a cycle.  Every
//! cycle of the result has mean exactly `b`, and every arc on a `b`-mean
//! cycle survives.

use alloc::vec;
use alloc::vec::Vec;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::num::Rat;
use crate::sft::Word;

use super::cycles::strongly_connected_components;
use super::graph::WeightedBlockGraph;

/// The critical subgraph, in block-graph node ids.
#[derive(Clone, Debug)]
pub struct CriticalGraph {
    /// The maximum cycle mean it certifies.
    pub b: Rat,
    /// Nodes of the subgraph (sorted block ids).
    pub nodes: Vec<usize>,
    /// Base-SFT cylinder words of the nodes, parallel to `nodes`.
    pub words: Vec<Word>,
    /// Arcs of the subgraph.
    pub arcs: Vec<(usize, usize)>,
    /// Cyclic strongly connected components (each sorted).
    pub sccs: Vec<Vec<usize>>,
}

impl CriticalGraph {
    /// Out-adjacency restricted to the subgraph, reindexed by `nodes`.
    pub fn local_adjacency(&self) -> Vec<Vec<usize>> {
        let pos = |id: usize| self.nodes.binary_search(&id).expect("arc endpoint in nodes");
        let mut adj = vec![Vec::new(); self.nodes.len()];
        for &(u, v) in &self.arcs {
            adj[pos(u)].push(pos(v));
        }
        adj
    }

    /// 0/1 adjacency of one SCC (block ids), for Perron computations.
    pub fn scc_adjacency(&self, scc: &[usize]) -> Vec<Vec<u8>> {
        let pos = |id: usize| scc.binary_search(&id).ok();
        let mut m = vec![vec![0u8; scc.len()]; scc.len()];
        for &(u, v) in &self.arcs {
            if let (Some(i), Some(j)) = (pos(u), pos(v)) {
                m[i][j] = 1;
            }
        }
        m
    }

    /// Is the whole subgraph a single strongly connected component?
    pub fn is_transitive(&self) -> bool {
        self.sccs.len() == 1 && self.sccs[0].len() == self.nodes.len()
    }
}

/// Compute the critical subgraph for the exact maximum cycle mean `b`.
/// Exact mode only: tightness is an exact rational equality.
pub fn critical_graph(g: &WeightedBlockGraph, b: &Rat) -> Result<CriticalGraph> {
    if !g.is_exact() {
        return Err(Error::ExactnessRequired);
    }
    let n = g.node_count();
    let w = g.lo_weights();
    // Longest-path potentials over walks of any length (cycle means are
    // <= 0 after reweighting, so n - 1 Bellman rounds stabilize).
    let mut p: Vec<Rat> = vec![Rat::zero(); n];
    for round in 0..=n {
        let mut changed = false;
        let mut np = p.clone();
        for u in 0..n {
            let wu = &w[u] - b;
            for &v in &g.out_adj()[u] {
                let cand = &p[u] + &wu;
                if cand > np[v] {
                    np[v] = cand;
                    changed = true;
                }
            }
        }
        p = np;
        if !changed {
            break;
        }
        if round == n {
            // A positive cycle would mean b is not the true maximum.
            return Err(Error::InvalidInput(alloc::string::String::from(
                "reweighted graph has a positive cycle; b is not the maximum cycle mean",
            )));
        }
    }
    // Tight arcs.
    let mut tight_adj: Vec<Vec<usize>> = vec![Vec::new(); n];
    for u in 0..n {
        let wu = &w[u] - b;
        for &v in &g.out_adj()[u] {
            if &p[u] + &wu == p[v] {
                tight_adj[u].push(v);
            }
        }
    }
    // Cyclic SCCs of the tight subgraph.
    let comps = strongly_connected_components(n, &tight_adj);
    let mut keep = vec![false; n];
    let mut sccs: Vec<Vec<usize>> = Vec::new();
    for comp in comps {
        let cyclic = comp.len() > 1 || tight_adj[comp[0]].contains(&comp[0]);
        if cyclic {
            for &x in &comp {
                keep[x] = true;
            }
            sccs.push(comp);
        }
    }
    sccs.sort();
    let mut scc_of = vec![usize::MAX; n];
    for (ci, comp) in sccs.iter().enumerate() {
        for &x in comp {
            scc_of[x] = ci;
        }
    }
    let nodes: Vec<usize> = (0..n).filter(|&i| keep[i]).collect();
    if nodes.is_empty() {
        return Err(Error::InvalidInput(alloc::string::String::from(
            "empty critical graph; b is not attained",
        )));
    }
    let mut arcs = Vec::new();
    for u in 0..n {
        if !keep[u] {
            continue;
        }
        for &v in &tight_adj[u] {
            if keep[v] && scc_of[u] == scc_of[v] {
                arcs.push((u, v));
            }
        }
    }
    let words: Vec<Word> = nodes.iter().map(|&i| g.node_word(i).clone()).collect();
    Ok(CriticalGraph { b: b.clone(), nodes, words, arcs, sccs })
}
