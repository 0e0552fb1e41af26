//! Level subgames of the absorbing game graph and the small-dominion search.

use crate::attractor::attractor;
use crate::buchi::progress_dominions;
use crate::game::{GameArena, GameGraph, GameView, Player, Strategy};
use crate::graph::{Csr, Digraph};
use crate::parity3::RunStats;
use crate::VertexSet;

/// Level `i` of the game-graph hierarchy.
///
/// Keeps every out-edge of vertices with out-degree at most `2^i` and, for
/// every vertex, the first `2^i` edges of its in-list (Even sources first, as
/// established by the absorbing transform). Odd vertices that lose out-edges
/// are blue.
#[derive(Clone, Debug)]
pub struct LevelGameGraph {
    pub level: u32,
    pub arena: GameArena,
    pub blue: VertexSet,
}

impl LevelGameGraph {
    pub fn threshold(&self) -> usize {
        1usize << self.level
    }

    pub fn edge_count(&self) -> usize {
        self.arena.edge_count()
    }

    /// Even vertices left without any out-edge at this level.
    pub fn stuck_even(&self) -> impl Iterator<Item = usize> + '_ {
        self.arena
            .vertices()
            .filter(|&v| self.arena.owner(v) == Player::Even && self.arena.out_degree(v) == 0)
    }
}

/// Builds level `level` over the alive vertices of `gp`; degrees are those of
/// `gp`, which already reflects all deletions.
pub fn level_game_graph(gp: &GameGraph, level: u32) -> LevelGameGraph {
    let n = gp.capacity();
    let threshold = 1usize.checked_shl(level).unwrap_or(usize::MAX);
    let white = |v: usize| gp.out_degree(v) <= threshold;
    let mut edges = Vec::new();
    let mut blue = VertexSet::new(n);
    for u in gp.vertices() {
        if white(u) {
            edges.extend(gp.successors(u).map(|w| (u, w)));
        } else if gp.owner(u) == Player::Odd {
            blue.insert(u);
        }
    }
    for v in gp.vertices() {
        // edges from white sources are already present
        edges.extend(
            gp.predecessors(v)
                .take(threshold)
                .filter(|&u| !white(u))
                .map(|u| (u, v)),
        );
    }
    let present = (0..n).map(|v| gp.contains(v)).collect();
    LevelGameGraph {
        level,
        arena: GameArena::new(Csr::new(present, &edges), gp.owners().to_vec()),
        blue,
    }
}

/// A dominion found by [`dominion_search`].
#[derive(Clone, Debug)]
pub struct FoundDominion {
    pub set: VertexSet,
    pub strategy: Strategy,
    pub level: u32,
}

/// `⌈log₂ x⌉` for `x ≥ 1`.
pub fn ceil_log2(x: usize) -> u32 {
    assert!(x >= 1);
    usize::BITS - (x - 1).leading_zeros()
}

/// Number of levels searched for a size bound `h_max`: `⌈log₂(2·h_max)⌉`,
/// and at least one.
pub fn level_cap(h_max: usize) -> u32 {
    ceil_log2(2 * h_max.max(1)).max(1)
}

/// Searches levels `1..=⌈log₂(2·h_max)⌉` for a nonempty Even dominion of the
/// Büchi game `(gp, buchi)`.
///
/// At level `i` the Odd attractor of the blue vertices (and of Even vertices
/// stuck without edges) is discarded, and the bounded progress measure with
/// bound `2^i` runs on the rest. Returns the first nonempty union found.
pub fn dominion_search(
    gp: &GameGraph,
    buchi: &VertexSet,
    h_max: usize,
    stats: &mut RunStats,
) -> Option<FoundDominion> {
    if !buchi.iter().any(|v| gp.contains(v)) {
        return None;
    }
    (1..=level_cap(h_max)).find_map(|level| search_level(gp, buchi, level, stats))
}

/// One round of [`dominion_search`] at a single level. Level 0 is never part
/// of the search itself; it is probed to decide whether a level-1 find was
/// already visible one level down.
pub fn search_level(
    gp: &GameGraph,
    buchi: &VertexSet,
    level: u32,
    stats: &mut RunStats,
) -> Option<FoundDominion> {
    let lvl = level_game_graph(gp, level);
    stats.level_edges += lvl.edge_count() as u64;
    let mut escape = lvl.blue.clone();
    escape.extend(lvl.stuck_even());
    let lost = attractor(Player::Odd, &escape, &lvl.arena);
    stats.attractor_edge_scans += lost.edge_scans;
    let sub = lvl.arena.induced(|v| !lost.set.contains(v));
    let targets = buchi.difference(&lost.set);
    let found = progress_dominions(&sub, &targets, lvl.threshold());
    stats.lift_steps += found.lift_steps;
    stats.progress_calls += 1;
    stats.max_lift_ratio = stats
        .max_lift_ratio
        .max(found.lift_steps as f64 / ((found.edges.max(1) * lvl.threshold()) as f64));
    (!found.dominion.is_empty()).then_some(FoundDominion {
        set: found.dominion,
        strategy: found.strategy,
        level,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::game::Player::*;
    use crate::parity3::{absorbing_transform, Parity3Game};

    #[test]
    fn logs() {
        assert_eq!(ceil_log2(1), 0);
        assert_eq!(ceil_log2(2), 1);
        assert_eq!(ceil_log2(5), 3);
        assert_eq!(ceil_log2(8), 3);
        assert_eq!(level_cap(1), 1);
        assert_eq!(level_cap(2), 2);
        assert_eq!(level_cap(3), 3);
    }

    #[test]
    fn low_degree_level_is_whole_graph() {
        let g = GameGraph::new(vec![Even, Odd, Even], &[(0, 1), (1, 2), (2, 0), (1, 0)]).unwrap();
        let lvl = level_game_graph(&g, 1);
        assert_eq!(lvl.edge_count(), 4);
        assert!(lvl.blue.is_empty());
    }

    #[test]
    fn star_hub_is_blue() {
        // Odd hub 0 with 5 out-edges to Even leaves that loop back to the hub
        let mut edges: Vec<_> = (1..=5).map(|v| (0, v)).collect();
        edges.extend((1..=5).map(|v| (v, 0)));
        let mut owner = vec![Even; 6];
        owner[0] = Odd;
        let g = GameGraph::new(owner, &edges).unwrap();
        let lvl = level_game_graph(&g, 2);
        assert_eq!(lvl.blue.to_sorted_vec(), vec![0]);
        // every leaf has in-degree 1, so each hub edge is among its target's
        // first four in-edges and survives
        assert_eq!(lvl.arena.out_degree(0), 5);

        // with a crowded in-list the hub edge into 1 is dropped
        let mut edges: Vec<_> = (1..=5).map(|v| (0, v)).collect();
        edges.extend((1..=5).map(|v| (v, 0)));
        edges.extend([(6, 1), (7, 1), (8, 1), (9, 1)]);
        edges.extend((6..=9).map(|v| (v, v)));
        let mut owner = vec![Even; 10];
        owner[0] = Odd;
        let g = GameGraph::new(owner.clone(), &edges).unwrap();
        let p3 = Parity3Game::new(g, vec![1; 10]).unwrap();
        let (gp, _) = absorbing_transform(&p3);
        let lvl = level_game_graph(&gp, 2);
        let hub_succ: Vec<_> = lvl.arena.successors(0).collect();
        assert_eq!(hub_succ, vec![2, 3, 4, 5]);
        assert!(lvl.blue.contains(0));
    }

    #[test]
    fn in_edge_prefix_prefers_even_sources() {
        // target 0 has six in-edges: Odd sources 1,2,3 listed first in the
        // input, Even sources 4,5,6 after; every source has out-degree 3
        let mut owner = vec![Even; 7];
        for v in [1, 2, 3] {
            owner[v] = Odd;
        }
        let mut edges = Vec::new();
        for u in 1..=6 {
            edges.push((u, 0));
            edges.push((u, u));
            edges.push((u, if u == 6 { 1 } else { u + 1 }));
        }
        edges.push((0, 0));
        let g = GameGraph::new(owner, &edges).unwrap();
        let p3 = Parity3Game::new(g, vec![1; 7]).unwrap();
        let (gp, _) = absorbing_transform(&p3);
        let lvl = level_game_graph(&gp, 1);
        let mut into_zero: Vec<_> = lvl.arena.predecessors(0).filter(|&u| u != 0).collect();
        into_zero.sort();
        assert_eq!(into_zero, vec![4, 5]);
    }
}
