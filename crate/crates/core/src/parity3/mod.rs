//! Parity-3 (one-pair Streett) games.
//!
//! Even wins a play iff the lowest priority seen infinitely often is 0, with
//! priorities drawn from `{-1, 0, 1}`. The solver repeatedly finds an Even
//! dominion of the Büchi game on the absorbing game graph, removes its Even
//! attractor in the original graph, and stops once no dominion is left.

mod decomposition;
mod verify;

pub use decomposition::{
    ceil_log2, dominion_search, level_cap, level_game_graph, search_level, FoundDominion,
    LevelGameGraph,
};
pub use verify::{verify_parity3_strategies, Violation};

use crate::attractor::{attractor, is_closed};
use crate::buchi::solve_buchi;
use crate::error::{Error, Result};
use crate::game::{GameGraph, GameView, Player, Strategy};
use crate::graph::{Digraph, Graph};
use crate::VertexSet;

pub type Priority = i8;

/// A game graph with priorities in `{-1, 0, 1}`.
#[derive(Clone, Debug)]
pub struct Parity3Game {
    pub game: GameGraph,
    priority: Vec<Priority>,
}

impl Parity3Game {
    pub fn new(game: GameGraph, priority: Vec<Priority>) -> Result<Self> {
        assert_eq!(game.capacity(), priority.len());
        if let Some((v, &p)) = priority.iter().enumerate().find(|(_, &p)| !(-1..=1).contains(&p)) {
            return Err(Error::InvalidPriority {
                vertex: v,
                priority: p as i64,
            });
        }
        game.check_total()?;
        Ok(Self { game, priority })
    }

    pub fn priority(&self, v: usize) -> Priority {
        self.priority[v]
    }

    pub fn priorities(&self) -> &[Priority] {
        &self.priority
    }

    pub fn vertex_count(&self) -> usize {
        self.game.capacity()
    }

    pub fn edge_count(&self) -> usize {
        self.game.edge_count()
    }

    pub fn with_priority(&self, p: Priority) -> VertexSet {
        VertexSet::from_iter_in(
            self.game.capacity(),
            self.game.vertices().filter(|&v| self.priority[v] == p),
        )
    }
}

/// Makes every priority `-1` vertex absorbing (single self-loop) and returns
/// the Büchi set of priority-0 vertices.
///
/// In-lists of the result list edges from Even sources first, each group in
/// the order of the original in-lists; the level decomposition relies on it.
pub fn absorbing_transform(p3: &Parity3Game) -> (GameGraph, VertexSet) {
    let g = &p3.game;
    let n = g.capacity();
    let mut in_pos = vec![usize::MAX; g.graph().edge_list().len().max(1)];
    let mut in_pos_of = |e: usize, pos: usize| {
        if e >= in_pos.len() {
            in_pos.resize(e + 1, usize::MAX);
        }
        in_pos[e] = pos;
    };
    for v in g.vertices() {
        for (pos, (e, _)) in g.graph().in_edges(v).enumerate() {
            in_pos_of(e, pos);
        }
    }
    let mut edges = Vec::new();
    let mut rank = Vec::new();
    for u in g.vertices() {
        if p3.priority(u) == -1 {
            edges.push((u, u));
            rank.push(usize::MAX);
        } else {
            for (e, v) in g.graph().out_edges(u) {
                edges.push((u, v));
                rank.push(in_pos[e]);
            }
        }
    }
    let mut order: Vec<usize> = (0..edges.len()).collect();
    order.sort_by_key(|&i| (g.owner(edges[i].0) != Player::Even, rank[i]));
    let mut graph = Graph::from_edges_with_in_order(n, &edges, &order);
    for v in 0..n {
        if !g.contains(v) {
            graph.remove_vertex(v);
        }
    }
    let buchi = p3.with_priority(0);
    (GameGraph::from_graph(graph, g.owners().to_vec()), buchi)
}

/// One dominion removal of a run.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DominionRecord {
    /// Level of the small-dominion search that found it, or `None` when the
    /// full Büchi solver produced it.
    pub level: Option<u32>,
    pub dominion_size: usize,
    pub attractor_size: usize,
}

/// Work counters and runtime assertion outcomes of one parity-3 run.
#[derive(Clone, Debug, Default)]
pub struct RunStats {
    pub buchialg_calls: usize,
    pub progress_calls: usize,
    pub lift_steps: u64,
    pub attractor_edge_scans: u64,
    pub level_edges: u64,
    /// Largest `lift_steps / (edges · bound)` over all progress-measure calls.
    pub max_lift_ratio: f64,
    pub dominions: Vec<DominionRecord>,
    /// Level-1 finds whose dominion was already present at level 0, where the
    /// attractor size check has no premise and is skipped.
    pub size_checks_skipped: usize,
    /// Vertex count at the start of the run.
    pub n: usize,
    /// The fixed small-dominion size bound `⌈√n⌉`.
    pub h_max: usize,
    /// Failed runtime assertions; empty on a correct run.
    pub violations: Vec<RunViolation>,
}

/// A runtime assertion of the solver that did not hold.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RunViolation {
    /// The Even attractor of a level-`level` dominion has at most
    /// `2^(level-1)` vertices.
    SmallAttractor { level: u32, size: usize },
    /// More full Büchi solves than `⌊n/⌈√n⌉⌋ + 1`.
    TooManyBuchiCalls { calls: usize, bound: usize },
    /// A dominion holds a priority -1 vertex or Odd can leave it.
    NotParityDominion { size: usize, reason: &'static str },
    /// Even still wins part of the residual set outside the priority -1
    /// attractor.
    ResidualEvenWin { size: usize },
}

impl std::fmt::Display for RunViolation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Self::SmallAttractor { level, size } => {
                write!(f, "attractor of a level-{level} dominion has only {size} vertices")
            }
            Self::TooManyBuchiCalls { calls, bound } => {
                write!(f, "{calls} full Büchi solves exceed the bound {bound}")
            }
            Self::NotParityDominion { size, reason } => {
                write!(f, "dominion of size {size} {reason}")
            }
            Self::ResidualEvenWin { size } => {
                write!(f, "Even wins {size} residual vertices outside the priority -1 attractor")
            }
        }
    }
}

impl RunStats {
    /// `⌊n / ⌈√n⌉⌋ + 1`, the most full Büchi solves a run may need.
    pub fn buchi_call_bound(&self) -> usize {
        self.n.checked_div(self.h_max).map_or(1, |q| q + 1)
    }

    pub fn total_work(&self) -> u64 {
        self.lift_steps + self.attractor_edge_scans
    }
}

#[derive(Clone, Debug)]
pub struct Parity3Solution {
    pub even: VertexSet,
    pub odd: VertexSet,
    pub even_strategy: Strategy,
    pub odd_strategy: Strategy,
    pub stats: RunStats,
}

/// Which dominion finder drives the removal loop.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DominionFinder {
    /// Small-dominion search first, full Büchi solver as fallback.
    Hierarchical,
    /// Full Büchi solver in every iteration.
    BuchiOnly,
}

/// `⌈√n⌉`
pub fn ceil_sqrt(n: usize) -> usize {
    let mut r = (n as f64).sqrt() as usize;
    while r * r < n {
        r += 1;
    }
    while r > 0 && (r - 1) * (r - 1) >= n {
        r -= 1;
    }
    r
}

pub fn solve_parity3(p3: &Parity3Game) -> Result<Parity3Solution> {
    solve_with(p3, DominionFinder::Hierarchical)
}

/// Runs the dominion-removal loop with the given dominion finder.
pub fn solve_with(p3: &Parity3Game, finder: DominionFinder) -> Result<Parity3Solution> {
    p3.game.check_total()?;
    let capacity = p3.game.capacity();
    let mut g = p3.game.clone();
    let (mut gp, mut buchi) = absorbing_transform(p3);
    let n = g.alive_count();
    let mut stats = RunStats {
        n,
        h_max: ceil_sqrt(n),
        ..RunStats::default()
    };
    let mut won = VertexSet::new(capacity);
    let mut even_strategy = Strategy::new(capacity);

    while g.alive_count() > 0 {
        let found = match finder {
            DominionFinder::Hierarchical => dominion_search(&gp, &buchi, stats.h_max, &mut stats),
            DominionFinder::BuchiOnly => None,
        };
        let (dominion, strategy, level) = match found {
            Some(f) => (f.set, f.strategy, Some(f.level)),
            None => {
                stats.buchialg_calls += 1;
                let sol = solve_buchi(&gp, &buchi)?;
                stats.attractor_edge_scans += sol.attractor_edge_scans;
                (sol.even, sol.even_strategy, None)
            }
        };
        if dominion.is_empty() {
            break;
        }
        if dominion.iter().any(|v| p3.priority(v) == -1) {
            stats.violations.push(RunViolation::NotParityDominion {
                size: dominion.len(),
                reason: "contains a priority -1 vertex",
            });
        }
        if !is_closed(Player::Odd, &dominion, &g) {
            stats.violations.push(RunViolation::NotParityDominion {
                size: dominion.len(),
                reason: "is not Odd-closed",
            });
        }
        let attr = attractor(Player::Even, &dominion, &g);
        stats.attractor_edge_scans += attr.edge_scans;
        let premise = match level {
            Some(1) => search_level(&gp, &buchi, 0, &mut RunStats::default()).is_none(),
            Some(_) => true,
            None => false,
        };
        if level.is_some() && !premise {
            stats.size_checks_skipped += 1;
        }
        if let (Some(level), true) = (level, premise) {
            if attr.set.len() <= 1 << (level - 1) {
                stats.violations.push(RunViolation::SmallAttractor {
                    level,
                    size: attr.set.len(),
                });
            }
        }
        stats.dominions.push(DominionRecord {
            level,
            dominion_size: dominion.len(),
            attractor_size: attr.set.len(),
        });
        for v in dominion.iter() {
            if g.owner(v) == Player::Even {
                if let Some(w) = strategy.get(v) {
                    even_strategy.set_if_absent(v, w);
                }
            }
        }
        even_strategy.merge_absent(&attr.strategy);
        for v in attr.set.iter() {
            buchi.remove(v);
        }
        g.remove_set(&attr.set);
        gp.remove_set(&attr.set);
        won.union_with(&attr.set);
    }

    if stats.buchialg_calls > stats.buchi_call_bound() && finder == DominionFinder::Hierarchical {
        stats.violations.push(RunViolation::TooManyBuchiCalls {
            calls: stats.buchialg_calls,
            bound: stats.buchi_call_bound(),
        });
    }

    let residual = g.alive_set();
    let odd_strategy = odd_strategy_on_residual(p3, g, &buchi, &mut stats)?;
    Ok(Parity3Solution {
        even: won,
        odd: residual,
        even_strategy,
        odd_strategy,
        stats,
    })
}

/// Odd's strategy on the vertices left when no Even dominion remains: attract
/// to the priority -1 vertices, stay inside the residual set on them, and play
/// the co-Büchi strategy of the Büchi game on the rest.
fn odd_strategy_on_residual(
    p3: &Parity3Game,
    mut g: GameGraph,
    buchi: &VertexSet,
    stats: &mut RunStats,
) -> Result<Strategy> {
    let capacity = g.capacity();
    let mut strategy = Strategy::new(capacity);
    if g.alive_count() == 0 {
        return Ok(strategy);
    }
    let absorbing = VertexSet::from_iter_in(capacity, g.vertices().filter(|&v| p3.priority(v) == -1));
    for z in absorbing.iter() {
        if g.owner(z) == Player::Odd {
            let w = g.successors(z).min().expect("residual set is Even-closed");
            strategy.set(z, w);
        }
    }
    let attr = attractor(Player::Odd, &absorbing, &g);
    stats.attractor_edge_scans += attr.edge_scans;
    strategy.merge_absent(&attr.strategy);
    g.remove_set(&attr.set);
    if g.alive_count() > 0 {
        let rest = buchi.difference(&attr.set);
        let sol = solve_buchi(&g, &rest)?;
        stats.attractor_edge_scans += sol.attractor_edge_scans;
        if !sol.even.is_empty() {
            stats.violations.push(RunViolation::ResidualEvenWin {
                size: sol.even.len(),
            });
        }
        strategy.merge_absent(&sol.odd_strategy);
    }
    Ok(strategy)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::game::Player::*;

    pub(crate) fn g3(owner1: Player) -> Parity3Game {
        // vertex 1 (prio 0) -> 0 ; vertex 2 (prio -1) -> 1 in the usual
        // example, shifted to ids 0 and 1
        let g = GameGraph::new(vec![owner1, Even], &[(0, 0), (0, 1), (1, 0)]).unwrap();
        Parity3Game::new(g, vec![0, -1]).unwrap()
    }

    #[test]
    fn sqrt() {
        assert_eq!(ceil_sqrt(0), 0);
        assert_eq!(ceil_sqrt(1), 1);
        assert_eq!(ceil_sqrt(2), 2);
        assert_eq!(ceil_sqrt(4), 2);
        assert_eq!(ceil_sqrt(5), 3);
        assert_eq!(ceil_sqrt(10_000), 100);
        assert_eq!(ceil_sqrt(10_001), 101);
    }

    #[test]
    fn transform_makes_minus_one_absorbing() {
        let p3 = g3(Odd);
        let (gp, b) = absorbing_transform(&p3);
        let mut edges = gp.graph().edge_list();
        edges.sort();
        assert_eq!(edges, vec![(0, 0), (0, 1), (1, 1)]);
        assert_eq!(b.to_sorted_vec(), vec![0]);
    }

    #[test]
    fn transform_without_minus_one_keeps_edges() {
        let g = GameGraph::new(vec![Even, Odd], &[(0, 1), (1, 0), (1, 1)]).unwrap();
        let p3 = Parity3Game::new(g.clone(), vec![0, 1]).unwrap();
        let (gp, _) = absorbing_transform(&p3);
        let mut a = gp.graph().edge_list();
        let mut b = g.graph().edge_list();
        a.sort();
        b.sort();
        assert_eq!(a, b);
    }

    #[test]
    fn all_odd_priorities() {
        let g = GameGraph::new(vec![Even, Odd, Even], &[(0, 1), (1, 2), (2, 0), (2, 2)]).unwrap();
        let p3 = Parity3Game::new(g, vec![1, 1, 1]).unwrap();
        let sol = solve_parity3(&p3).unwrap();
        assert!(sol.even.is_empty());
        assert_eq!(sol.odd.len(), 3);
        verify_parity3_strategies(&p3, &sol).unwrap();
    }

    #[test]
    fn single_even_self_loop() {
        let g = GameGraph::new(vec![Even], &[(0, 0)]).unwrap();
        let p3 = Parity3Game::new(g, vec![0]).unwrap();
        let sol = solve_parity3(&p3).unwrap();
        assert_eq!(sol.even.to_sorted_vec(), vec![0]);
        assert_eq!(sol.even_strategy.get(0), Some(0));
        verify_parity3_strategies(&p3, &sol).unwrap();
    }

    #[test]
    fn odd_reaches_absorbing_vertex() {
        let p3 = g3(Odd);
        let sol = solve_parity3(&p3).unwrap();
        assert!(sol.even.is_empty());
        assert_eq!(sol.odd_strategy.get(0), Some(1));
        verify_parity3_strategies(&p3, &sol).unwrap();
        assert!(sol.stats.violations.is_empty());
    }

    #[test]
    fn even_avoids_absorbing_vertex() {
        let p3 = g3(Even);
        let sol = solve_parity3(&p3).unwrap();
        assert_eq!(sol.even.to_sorted_vec(), vec![0, 1]);
        assert_eq!(sol.even_strategy.get(0), Some(0));
        verify_parity3_strategies(&p3, &sol).unwrap();
    }

    #[test]
    fn invalid_priority() {
        let g = GameGraph::new(vec![Even], &[(0, 0)]).unwrap();
        assert!(matches!(
            Parity3Game::new(g, vec![2]),
            Err(Error::InvalidPriority { vertex: 0, .. })
        ));
    }
}
