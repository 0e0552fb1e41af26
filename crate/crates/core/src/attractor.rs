//! Attractors and closed sets.

use crate::game::{GameView, Player, Strategy};
use crate::{VertexId, VertexSet};

/// Result of an attractor computation.
#[derive(Clone, Debug)]
pub struct Attractor {
    pub set: VertexSet,
    /// For each attracted vertex of the attracting player outside the target,
    /// a successor that is strictly closer to the target.
    pub strategy: Strategy,
    /// In-edges scanned while growing the set.
    pub edge_scans: u64,
}

/// `Attr_player(target, game)`: the vertices from which `player` can force a
/// visit to `target`.
///
/// Opponent vertices carry a remaining-out-degree counter initialised lazily
/// from their out-degree, so the cost is proportional to the in-degrees of the
/// attracted vertices. Opponent dead ends are attracted only when they are
/// reached through an in-edge scan; views with dead ends should add them to
/// `target` explicitly.
pub fn attractor<G: GameView>(player: Player, target: &VertexSet, game: &G) -> Attractor {
    let n = game.capacity();
    let mut set = VertexSet::new(n);
    let mut strategy = Strategy::new(n);
    let mut remaining: Vec<u32> = Vec::new();
    let mut touched = VertexSet::new(0);
    let mut queue: Vec<VertexId> = Vec::with_capacity(target.len());
    let mut edge_scans = 0u64;

    for v in target.iter() {
        debug_assert!(game.contains(v), "target vertex {v} is not in the game");
        if set.insert(v) {
            queue.push(v);
        }
    }
    let mut head = 0;
    while head < queue.len() {
        let w = queue[head];
        head += 1;
        for u in game.predecessors(w) {
            edge_scans += 1;
            if !game.contains(u) || set.contains(u) {
                continue;
            }
            if game.owner(u) == player {
                set.insert(u);
                strategy.set(u, w);
                queue.push(u);
            } else {
                if remaining.is_empty() {
                    remaining = vec![0; n];
                    touched = VertexSet::new(n);
                }
                if touched.insert(u) {
                    remaining[u] = game.out_degree(u) as u32;
                }
                remaining[u] -= 1;
                if remaining[u] == 0 {
                    set.insert(u);
                    queue.push(u);
                }
            }
        }
    }
    Attractor {
        set,
        strategy,
        edge_scans,
    }
}

/// Whether `set` is `player`-closed: `player` cannot leave it and the
/// opponent can always stay inside.
pub fn is_closed<G: GameView>(player: Player, set: &VertexSet, game: &G) -> bool {
    set.iter().all(|v| {
        let mut succ = game.successors(v).filter(|&w| game.contains(w));
        if game.owner(v) == player {
            succ.all(|w| set.contains(w))
        } else {
            succ.any(|w| set.contains(w))
        }
    })
}
