//! Enumeration of all simple cycles of a digraph (Johnson's algorithm,
//! iterative form).  Kept as a brute-force oracle and for small critical
//! subgraphs; production extreme values go through Karp's algorithm.

use alloc::collections::BTreeSet;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};

/// All simple cycles of the digraph, each reported as a node list starting
/// at its smallest node index.  Fails with [`Error::TooLarge`] when more
/// than `guard` cycles exist.
pub fn johnson_cycles(n: usize, out_adj: &[Vec<usize>], guard: usize) -> Result<Vec<Vec<usize>>> {
    let mut result: Vec<Vec<usize>> = Vec::new();
    for start in 0..n {
        let mut blocked = vec![false; n];
        let mut blist: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); n];
        blocked[start] = true;
        let neighbors = |node: usize| -> Vec<usize> {
            out_adj[node].iter().copied().filter(|&x| x >= start).collect()
        };
        let mut path: Vec<usize> = vec![start];
        let mut stack: Vec<(usize, Vec<usize>)> = vec![(start, neighbors(start))];
        let mut closed: BTreeSet<usize> = BTreeSet::new();
        while let Some((node, next_nodes)) = stack.last_mut() {
            let node = *node;
            if let Some(next) = next_nodes.pop() {
                if next == start {
                    if result.len() >= guard {
                        return Err(Error::TooLarge);
                    }
                    result.push(path.clone());
                    for &p in &path {
                        closed.insert(p);
                    }
                } else if !blocked[next] {
                    path.push(next);
                    blocked[next] = true;
                    closed.remove(&next);
                    stack.push((next, neighbors(next)));
                }
                continue;
            }
            if closed.contains(&node) {
                unblock(node, &mut blocked, &mut blist);
            } else {
                for nb in neighbors(node) {
                    blist[nb].insert(node);
                }
            }
            stack.pop();
            path.pop();
        }
    }
    Ok(result)
}

fn unblock(node: usize, blocked: &mut [bool], blist: &mut [BTreeSet<usize>]) {
    let mut todo = vec![node];
    while let Some(u) = todo.pop() {
        blocked[u] = false;
        let deps: Vec<usize> = blist[u].iter().copied().collect();
        blist[u].clear();
        for d in deps {
            if blocked[d] {
                todo.push(d);
            }
        }
    }
}

/// Strongly connected components (iterative Tarjan), in discovery order.
pub fn strongly_connected_components(n: usize, out_adj: &[Vec<usize>]) -> Vec<Vec<usize>> {
    let mut index = vec![usize::MAX; n];
    let mut low = vec![0usize; n];
    let mut on_stack = vec![false; n];
    let mut stack: Vec<usize> = Vec::new();
    let mut next_index = 0usize;
    let mut comps: Vec<Vec<usize>> = Vec::new();
    // Explicit DFS stack: (node, neighbor cursor).
    for root in 0..n {
        if index[root] != usize::MAX {
            continue;
        }
        let mut dfs: Vec<(usize, usize)> = vec![(root, 0)];
        while let Some(&mut (v, ref mut cursor)) = dfs.last_mut() {
            if *cursor == 0 {
                index[v] = next_index;
                low[v] = next_index;
                next_index += 1;
                stack.push(v);
                on_stack[v] = true;
            }
            if *cursor < out_adj[v].len() {
                let w = out_adj[v][*cursor];
                *cursor += 1;
                if index[w] == usize::MAX {
                    dfs.push((w, 0));
                } else if on_stack[w] {
                    low[v] = low[v].min(index[w]);
                }
            } else {
                if low[v] == index[v] {
                    let mut comp = Vec::new();
                    loop {
                        let w = stack.pop().unwrap();
                        on_stack[w] = false;
                        comp.push(w);
                        if w == v {
                            break;
                        }
                    }
                    comp.sort_unstable();
                    comps.push(comp);
                }
                dfs.pop();
                if let Some(&mut (parent, _)) = dfs.last_mut() {
                    low[parent] = low[parent].min(low[v]);
                }
            }
        }
    }
    comps
}
