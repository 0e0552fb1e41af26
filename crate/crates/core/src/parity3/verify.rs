//! Independent check of the winning sets and strategies of a parity-3 solution.

use std::collections::VecDeque;

use thiserror::Error;

use super::{Parity3Game, Parity3Solution};
use crate::game::{GameView, Player, Strategy};
use crate::graph::{Csr, Digraph};
use crate::scc::{is_nontrivial, tarjan};
use crate::{VertexId, VertexSet};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum Violation {
    #[error("vertex {0} is in neither or both winning sets")]
    NotPartition(VertexId),
    #[error("{player} vertex {vertex} in its winning set has no strategy choice")]
    MissingChoice { player: Player, vertex: VertexId },
    #[error("strategy of {player} picks {from}->{to}, which is not an edge")]
    NotAnEdge {
        player: Player,
        from: VertexId,
        to: VertexId,
    },
    #[error("play leaves the {player} winning set along {from}->{to}")]
    Escapes {
        player: Player,
        from: VertexId,
        to: VertexId,
    },
    #[error("{player} loses on the consistent cycle {cycle:?}")]
    LosingCycle { player: Player, cycle: Vec<VertexId> },
}

/// Checks that `even`/`odd` partition the vertices, that both sets are closed
/// under the respective strategy, and that every cycle consistent with a
/// strategy is won by its owner.
pub fn verify_parity3_strategies(p3: &Parity3Game, sol: &Parity3Solution) -> Result<(), Violation> {
    let g = &p3.game;
    for v in g.vertices() {
        if sol.even.contains(v) == sol.odd.contains(v) {
            return Err(Violation::NotPartition(v));
        }
    }
    let r_even = restrict(p3, Player::Even, &sol.even, &sol.even_strategy)?;
    let r_odd = restrict(p3, Player::Odd, &sol.odd, &sol.odd_strategy)?;

    // Even loses a cycle whose lowest priority is -1 or 1
    if let Some(cycle) = cycle_through(&r_even, |v| p3.priority(v) == -1, |_| true) {
        return Err(Violation::LosingCycle {
            player: Player::Even,
            cycle,
        });
    }
    if let Some(cycle) = cycle_through(&r_even, |_| true, |v| p3.priority(v) == 1) {
        return Err(Violation::LosingCycle {
            player: Player::Even,
            cycle,
        });
    }
    // Odd loses a cycle whose lowest priority is 0
    if let Some(cycle) = cycle_through(&r_odd, |v| p3.priority(v) == 0, |v| p3.priority(v) != -1) {
        return Err(Violation::LosingCycle {
            player: Player::Odd,
            cycle,
        });
    }
    Ok(())
}

/// The graph on `set` where `player` follows `strategy` and the opponent keeps
/// all its edges.
fn restrict(
    p3: &Parity3Game,
    player: Player,
    set: &VertexSet,
    strategy: &Strategy,
) -> Result<Csr, Violation> {
    let g = &p3.game;
    let mut edges = Vec::new();
    for v in set.iter() {
        if g.owner(v) == player {
            let w = strategy.get(v).ok_or(Violation::MissingChoice { player, vertex: v })?;
            if !g.has_edge(v, w) {
                return Err(Violation::NotAnEdge {
                    player,
                    from: v,
                    to: w,
                });
            }
            if !set.contains(w) {
                return Err(Violation::Escapes {
                    player,
                    from: v,
                    to: w,
                });
            }
            edges.push((v, w));
        } else {
            for w in g.successors(v) {
                if !set.contains(w) {
                    return Err(Violation::Escapes {
                        player,
                        from: v,
                        to: w,
                    });
                }
                edges.push((v, w));
            }
        }
    }
    let present = (0..g.capacity()).map(|v| set.contains(v)).collect();
    Ok(Csr::new(present, &edges))
}

/// A cycle of `g[scope]` through a vertex satisfying `target`, if any.
fn cycle_through(
    g: &Csr,
    target: impl Fn(VertexId) -> bool,
    scope: impl Fn(VertexId) -> bool,
) -> Option<Vec<VertexId>> {
    let (comps, _) = tarjan(g, g.vertices(), &scope);
    for comp in comps {
        let nontrivial = comp.len() > 1 || is_nontrivial(g, &comp);
        if !nontrivial {
            continue;
        }
        if let Some(&v) = comp.iter().find(|&&v| target(v)) {
            let inside: VertexSet = VertexSet::from_iter_in(g.capacity(), comp.iter().copied());
            return Some(shortest_cycle(g, v, &inside));
        }
    }
    None
}

fn shortest_cycle(g: &Csr, v: VertexId, inside: &VertexSet) -> Vec<VertexId> {
    let mut parent = vec![usize::MAX; g.capacity()];
    let mut queue = VecDeque::from([v]);
    while let Some(u) = queue.pop_front() {
        for w in g.successors(u).filter(|&w| inside.contains(w)) {
            if w == v {
                let mut path = vec![u];
                let mut x = u;
                while x != v {
                    x = parent[x];
                    path.push(x);
                }
                path.reverse();
                return path;
            }
            if parent[w] == usize::MAX {
                parent[w] = u;
                queue.push_back(w);
            }
        }
    }
    unreachable!("vertex of a nontrivial SCC lies on a cycle")
}
