//! Baseline solvers used as ground truth and as benchmark baselines.
//!
//! They share no algorithmic code with the main solvers beyond the graph
//! containers: the brute-force parity-3 solver enumerates Even strategies and
//! uses bitmask closures, and the basic Streett solver has its own SCC routine
//! and recomputes bad vertices from scratch.

use crate::error::{Error, Result};
use crate::game::{GameView, Player};
use crate::graph::{Digraph, Graph};
use crate::parity3::{solve_with, DominionFinder, Parity3Game, Parity3Solution};
use crate::streett::{SccVerdict, StreettSolution, StreettStats};
use crate::streett_ds::StreettPairs;
use crate::{VertexId, VertexSet};

pub const BRUTE_FORCE_LIMIT: usize = 12;

/// Exact winning sets `(W_E, W_O)` by enumerating every memoryless Even
/// strategy and checking Odd's best response on the resulting one-player
/// graph.
pub fn brute_force_parity3(p3: &Parity3Game) -> Result<(VertexSet, VertexSet)> {
    let g = &p3.game;
    let cap = g.capacity();
    let verts: Vec<VertexId> = g.vertices().collect();
    let n = verts.len();
    if n > BRUTE_FORCE_LIMIT {
        return Err(Error::SizeGuard {
            n,
            limit: BRUTE_FORCE_LIMIT,
        });
    }
    g.check_total()?;
    let mut idx = vec![usize::MAX; cap];
    for (i, &v) in verts.iter().enumerate() {
        idx[v] = i;
    }
    let succ: Vec<Vec<usize>> = verts
        .iter()
        .map(|&v| g.successors(v).map(|w| idx[w]).collect())
        .collect();
    let prio: Vec<i8> = verts.iter().map(|&v| p3.priority(v)).collect();
    let even: Vec<usize> = (0..n).filter(|&i| g.owner(verts[i]) == Player::Even).collect();
    let odd_mask: u32 = (0..n)
        .filter(|&i| g.owner(verts[i]) == Player::Odd)
        .fold(0, |m, i| m | 1 << i);
    let ones: u32 = (0..n).filter(|&i| prio[i] == 1).fold(0, |m, i| m | 1 << i);
    let all: u32 = if n == 0 { 0 } else { (1u32 << n) - 1 };

    let mut adj = vec![0u32; n];
    for i in 0..n {
        if odd_mask & 1 << i != 0 {
            adj[i] = succ[i].iter().fold(0, |m, &w| m | 1 << w);
        }
    }
    let mut choice = vec![0usize; even.len()];
    let mut won = 0u32;
    loop {
        for (c, &i) in choice.iter().zip(&even) {
            adj[i] = 1 << succ[i][*c];
        }
        won |= all & !odd_wins(&adj, &prio, ones);
        if won == all {
            break;
        }
        // next strategy, odometer style
        let mut pos = 0;
        while pos < even.len() {
            choice[pos] += 1;
            if choice[pos] < succ[even[pos]].len() {
                break;
            }
            choice[pos] = 0;
            pos += 1;
        }
        if pos == even.len() {
            break;
        }
    }
    let mut w_e = VertexSet::new(cap);
    let mut w_o = VertexSet::new(cap);
    for (i, &v) in verts.iter().enumerate() {
        if won & 1 << i != 0 {
            w_e.insert(v);
        } else {
            w_o.insert(v);
        }
    }
    Ok((w_e, w_o))
}

/// Bitmask of vertices from which some path reaches a cycle whose lowest
/// priority is not 0.
fn odd_wins(adj: &[u32], prio: &[i8], ones: u32) -> u32 {
    let n = adj.len();
    let reach = closure(adj.to_vec());
    let restricted: Vec<u32> = (0..n)
        .map(|i| if ones & 1 << i != 0 { adj[i] & ones } else { 0 })
        .collect();
    let reach1 = closure(restricted);
    let mut sinks = 0u32;
    for i in 0..n {
        let on_cycle = reach[i] & 1 << i != 0;
        if (prio[i] == -1 && on_cycle) || reach1[i] & 1 << i != 0 {
            sinks |= 1 << i;
        }
    }
    (0..n)
        .filter(|&i| (reach[i] | 1 << i) & sinks != 0)
        .fold(0, |m, i| m | 1 << i)
}

/// Transitive closure (paths of length at least one).
fn closure(mut r: Vec<u32>) -> Vec<u32> {
    let n = r.len();
    for k in 0..n {
        for i in 0..n {
            if r[i] & 1 << k != 0 {
                r[i] |= r[k];
            }
        }
    }
    r
}

/// The dominion-removal loop with a full Büchi solve in every iteration.
pub fn classical_parity3(p3: &Parity3Game) -> Result<Parity3Solution> {
    solve_with(p3, DominionFinder::BuchiOnly)
}

/// Repeated SCC decomposition with naive bad-vertex deletion.
pub fn basic_streett(g: &Graph, pairs: &StreettPairs) -> StreettSolution {
    let n = g.capacity();
    let alive: Vec<bool> = (0..n).map(|v| g.contains(v)).collect();
    let mut stats = StreettStats::default();
    let maximal = kosaraju(g, &alive, &mut stats.scc_edge_visits);
    let mut verdicts = Vec::new();
    for comp in maximal {
        if !nontrivial(g, &comp) {
            continue;
        }
        let good = stable_component(g, pairs, &comp, &mut stats);
        let mut scc = comp;
        scc.sort_unstable();
        verdicts.push(SccVerdict {
            scc,
            good: good.map(|mut c| {
                c.sort_unstable();
                c
            }),
        });
    }
    verdicts.sort_by_key(|v| v.scc[0]);

    let mut winning = VertexSet::new(n);
    let mut stack: Vec<VertexId> = Vec::new();
    for v in verdicts.iter().filter(|v| v.good.is_some()).flat_map(|v| &v.scc) {
        winning.insert(*v);
        stack.push(*v);
    }
    while let Some(w) = stack.pop() {
        for u in g.predecessors(w) {
            if winning.insert(u) {
                stack.push(u);
            }
        }
    }
    StreettSolution {
        winning,
        satisfying_sccs: verdicts,
        stats,
    }
}

/// First stable non-trivial SCC found inside `comp`, if any.
fn stable_component(
    g: &Graph,
    pairs: &StreettPairs,
    comp: &[VertexId],
    stats: &mut StreettStats,
) -> Option<Vec<VertexId>> {
    let n = g.capacity();
    let mut pending = vec![comp.to_vec()];
    let mut inside = vec![false; n];
    while let Some(s) = pending.pop() {
        for &v in &s {
            inside[v] = true;
        }
        let bad: Vec<VertexId> = s
            .iter()
            .copied()
            .filter(|&v| {
                (0..pairs.k()).any(|j| pairs.in_l(v, j) && !pairs.u(j).iter().any(|&w| inside[w]))
            })
            .collect();
        stats.ds_work += (s.len() * pairs.k().max(1)) as u64;
        for &v in &s {
            inside[v] = false;
        }
        if bad.is_empty() {
            return Some(s);
        }
        stats.bad_removed += bad.len();
        let mut keep = vec![false; n];
        for &v in &s {
            keep[v] = true;
        }
        for &v in &bad {
            keep[v] = false;
        }
        for c in kosaraju(g, &keep, &mut stats.scc_edge_visits) {
            if nontrivial(g, &c) {
                pending.push(c);
            }
        }
    }
    None
}

fn nontrivial(g: &Graph, comp: &[VertexId]) -> bool {
    comp.len() > 1 || g.successors(comp[0]).any(|w| w == comp[0])
}

/// SCCs of the subgraph induced by `keep`: finishing order on `g`, then
/// sweeps on the reverse graph.
fn kosaraju(g: &Graph, keep: &[bool], visits: &mut u64) -> Vec<Vec<VertexId>> {
    let n = g.capacity();
    let mut seen = vec![false; n];
    let mut order = Vec::new();
    for root in (0..n).filter(|&v| keep[v]) {
        if seen[root] {
            continue;
        }
        seen[root] = true;
        let mut stack = vec![(root, g.successors(root).collect::<Vec<_>>())];
        while let Some((v, rest)) = stack.last_mut() {
            if let Some(w) = rest.pop() {
                *visits += 1;
                if keep[w] && !seen[w] {
                    seen[w] = true;
                    let next = g.successors(w).collect();
                    stack.push((w, next));
                }
            } else {
                order.push(*v);
                stack.pop();
            }
        }
    }
    let mut assigned = vec![false; n];
    let mut comps = Vec::new();
    for &root in order.iter().rev() {
        if assigned[root] {
            continue;
        }
        assigned[root] = true;
        let mut comp = vec![root];
        let mut stack = vec![root];
        while let Some(v) = stack.pop() {
            for u in g.predecessors(v) {
                *visits += 1;
                if keep[u] && !assigned[u] {
                    assigned[u] = true;
                    comp.push(u);
                    stack.push(u);
                }
            }
        }
        comps.push(comp);
    }
    comps
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::game::{GameGraph, Player::*};

    #[test]
    fn brute_force_small() {
        let g = GameGraph::new(vec![Even], &[(0, 0)]).unwrap();
        let p3 = Parity3Game::new(g, vec![0]).unwrap();
        assert_eq!(brute_force_parity3(&p3).unwrap().0.to_sorted_vec(), vec![0]);

        // Odd escapes through its self-loop; priority 0 only on the Even vertex
        let g = GameGraph::new(vec![Even, Odd], &[(0, 1), (1, 0), (1, 1)]).unwrap();
        let p3 = Parity3Game::new(g, vec![0, 1]).unwrap();
        assert!(brute_force_parity3(&p3).unwrap().0.is_empty());
    }

    #[test]
    fn brute_force_guard() {
        let n = BRUTE_FORCE_LIMIT + 1;
        let edges: Vec<_> = (0..n).map(|v| (v, v)).collect();
        let g = crate::GameGraph::new(vec![Even; n], &edges).unwrap();
        let p3 = Parity3Game::new(g, vec![0; n]).unwrap();
        assert!(matches!(brute_force_parity3(&p3), Err(Error::SizeGuard { .. })));
    }

    #[test]
    fn classical_extremes() {
        let g = GameGraph::new(vec![Even, Odd, Odd], &[(0, 1), (1, 2), (2, 0), (1, 1)]).unwrap();
        let ones = Parity3Game::new(g.clone(), vec![1; 3]).unwrap();
        assert!(classical_parity3(&ones).unwrap().even.is_empty());
        let zeros = Parity3Game::new(g, vec![0; 3]).unwrap();
        assert_eq!(classical_parity3(&zeros).unwrap().even.len(), 3);
    }

    #[test]
    fn basic_streett_examples() {
        let g = Graph::from_edges(4, &[(0, 1), (1, 0), (2, 3)]);
        let sol = basic_streett(&g, &StreettPairs::empty(4));
        assert_eq!(sol.winning.to_sorted_vec(), vec![0, 1]);

        let g = Graph::from_edges(3, &[(0, 1), (1, 2), (2, 0)]);
        let p = StreettPairs::new(3, vec![(vec![0], vec![])]).unwrap();
        assert!(basic_streett(&g, &p).winning.is_empty());
    }
}
