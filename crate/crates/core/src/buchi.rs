//! Büchi games: the full solver and the bounded progress-measure dominion
//! finder.

use crate::attractor::attractor;
use crate::error::{Error, Result};
use crate::game::{GameGraph, GameView, Player, Strategy};
use crate::graph::Digraph;
use crate::{VertexId, VertexSet};

/// A game graph together with its Büchi vertices.
#[derive(Clone, Debug)]
pub struct BuchiGame {
    pub game: GameGraph,
    pub buchi: VertexSet,
}

impl BuchiGame {
    pub fn new(game: GameGraph, buchi: VertexSet) -> Result<Self> {
        if let Some(v) = buchi.iter().find(|&v| !game.contains(v)) {
            return Err(Error::VertexOutOfRange {
                vertex: v,
                n: game.capacity(),
            });
        }
        Ok(Self { game, buchi })
    }

    pub fn solve(&self) -> Result<BuchiSolution> {
        solve_buchi(&self.game, &self.buchi)
    }

    pub fn progress_dominions(&self, h: usize) -> ProgressResult {
        progress_dominions(&self.game, &self.buchi, h)
    }
}

#[derive(Clone, Debug)]
pub struct BuchiSolution {
    pub even: VertexSet,
    pub odd: VertexSet,
    /// Visits the Büchi set infinitely often from every vertex of `even`.
    pub even_strategy: Strategy,
    /// Avoids the Büchi set eventually from every vertex of `odd`.
    pub odd_strategy: Strategy,
    pub attractor_edge_scans: u64,
    pub iterations: usize,
}

/// Solves the Büchi game `(game, buchi)` restricted to the alive vertices.
///
/// Classical attractor iteration: `T = V ∖ Attr_Even(B)` is Even-closed and
/// free of Büchi vertices, so its Odd attractor is won by Odd and can be
/// removed; when `T` is empty the remainder is won by Even.
pub fn solve_buchi(game: &GameGraph, buchi: &VertexSet) -> Result<BuchiSolution> {
    game.check_total()?;
    let n = game.capacity();
    let mut g = game.clone();
    let mut targets = VertexSet::from_iter_in(n, buchi.iter().filter(|&v| g.contains(v)));
    let mut odd = VertexSet::new(n);
    let mut odd_strategy = Strategy::new(n);
    let mut edge_scans = 0u64;
    let mut iterations = 0;

    loop {
        iterations += 1;
        let reach = attractor(Player::Even, &targets, &g);
        edge_scans += reach.edge_scans;
        if reach.set.len() == g.alive_count() {
            let mut even_strategy = reach.strategy;
            for v in targets.iter() {
                if g.owner(v) == Player::Even {
                    let w = g.successors(v).min().expect("total game");
                    even_strategy.set(v, w);
                }
            }
            return Ok(BuchiSolution {
                even: reach.set,
                odd,
                even_strategy,
                odd_strategy,
                attractor_edge_scans: edge_scans,
                iterations,
            });
        }
        let trap = VertexSet::from_iter_in(n, g.vertices().filter(|&v| !reach.set.contains(v)));
        for v in trap.iter() {
            if g.owner(v) == Player::Odd {
                let w = g
                    .successors(v)
                    .filter(|&w| trap.contains(w))
                    .min()
                    .expect("complement of an attractor is closed");
                odd_strategy.set(v, w);
            }
        }
        let lost = attractor(Player::Odd, &trap, &g);
        edge_scans += lost.edge_scans;
        odd_strategy.merge_absent(&lost.strategy);
        for v in lost.set.iter() {
            targets.remove(v);
            odd.insert(v);
        }
        g.remove_set(&lost.set);
    }
}

/// Outcome of the bounded progress-measure lifting.
#[derive(Clone, Debug)]
pub struct ProgressResult {
    /// Vertices whose measure stayed finite: the union of all Even dominions
    /// of size at most `h` (and possibly more).
    pub dominion: VertexSet,
    /// Even's choices on `dominion`; never leaves it.
    pub strategy: Strategy,
    /// Final measure; `h + 1` encodes ⊤. Absent vertices hold 0.
    pub measure: Vec<u32>,
    /// Predecessor notifications plus successor rescans after initialisation.
    pub lift_steps: u64,
    /// Edges of the arena the lifting ran on.
    pub edges: usize,
}

/// Least fixpoint of the Büchi progress-measure lifting with codomain
/// `{0, …, h} ∪ {⊤}`.
///
/// The measure of a vertex counts non-Büchi visits that Odd can still force
/// before the next Büchi vertex; Büchi vertices reset it to 0. Even vertices
/// cache the minimum successor measure and how many successors attain it, so
/// a rescan happens only when that minimum increases, which bounds the work by
/// `2·m·(h+1)`.
pub fn progress_dominions<G: GameView>(game: &G, buchi: &VertexSet, h: usize) -> ProgressResult {
    assert!(h >= 1, "progress measure bound must be positive");
    let n = game.capacity();
    let top = h as u32 + 1;
    let in_buchi = |v: VertexId| buchi.contains(v);
    let incr = |v: VertexId, x: u32| -> u32 {
        if x >= top {
            top
        } else if in_buchi(v) {
            0
        } else {
            x + 1
        }
    };

    let mut rho = vec![0u32; n];
    // Even: minimum successor measure; Odd: maximum successor measure.
    let mut best = vec![0u32; n];
    let mut count = vec![0u32; n];
    let mut queued = vec![false; n];
    let mut work: Vec<VertexId> = Vec::new();
    let mut edges = 0usize;

    for v in game.vertices() {
        let deg = game.successors(v).filter(|&w| game.contains(w)).count();
        edges += deg;
        if game.owner(v) == Player::Even {
            if deg == 0 {
                best[v] = top;
            } else {
                count[v] = deg as u32;
            }
        }
        queued[v] = true;
        work.push(v);
    }
    work.reverse();

    let mut lift_steps = 0u64;
    while let Some(u) = work.pop() {
        queued[u] = false;
        if game.owner(u) == Player::Even && count[u] == 0 && best[u] < top {
            let mut min = top;
            let mut attaining = 0;
            for w in game.successors(u).filter(|&w| game.contains(w)) {
                lift_steps += 1;
                match rho[w].cmp(&min) {
                    std::cmp::Ordering::Less => {
                        min = rho[w];
                        attaining = 1;
                    }
                    std::cmp::Ordering::Equal => attaining += 1,
                    std::cmp::Ordering::Greater => {}
                }
            }
            best[u] = min;
            count[u] = attaining;
        }
        let val = incr(u, best[u]);
        if val <= rho[u] {
            continue;
        }
        let old = rho[u];
        rho[u] = val;
        for p in game.predecessors(u) {
            if !game.contains(p) {
                continue;
            }
            lift_steps += 1;
            let wake = if game.owner(p) == Player::Even {
                if best[p] == old && count[p] > 0 {
                    count[p] -= 1;
                    count[p] == 0
                } else {
                    false
                }
            } else if val > best[p] {
                best[p] = val;
                incr(p, val) > rho[p]
            } else {
                false
            };
            if wake && !queued[p] {
                queued[p] = true;
                work.push(p);
            }
        }
    }

    let mut dominion = VertexSet::new(n);
    let mut strategy = Strategy::new(n);
    for v in game.vertices() {
        if rho[v] < top {
            dominion.insert(v);
        }
    }
    for v in dominion.iter() {
        if game.owner(v) == Player::Even {
            let choice = game
                .successors(v)
                .filter(|&w| game.contains(w))
                .min_by_key(|&w| (rho[w], w))
                .expect("finite measure implies a successor");
            strategy.set(v, choice);
        }
    }
    ProgressResult {
        dominion,
        strategy,
        measure: rho,
        lift_steps,
        edges,
    }
}
