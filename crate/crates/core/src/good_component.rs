//! Good-component detection in a strongly connected graph with Streett pairs.
//!
//! A queue holds disjoint vertex sets, each with its `D(S)`. A set is first
//! cleaned of bad vertices; if it still has an edge, a lock-step search over
//! the level graphs of `G` and its reverse either shows that `G[S]` is
//! strongly connected (then `S` is a good component) or splits off a top or
//! bottom SCC of at most half the size.

use std::collections::VecDeque;

use indexmap::IndexSet;

use crate::graph::{reverse_view, Csr, Digraph, Graph};
use crate::parity3::ceil_log2;
use crate::scc::{reach_to, sccs, smallest_bottom_scc};
use crate::streett_ds::{SetData, StreettPairs};
use crate::{VertexId, VertexSet};

const ABSENT: u32 = u32::MAX;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    Forward,
    Reverse,
}

/// `H_i[S]` over local indices `0..|S|`.
///
/// White vertices (out-degree at most `2^i`) keep all their out-edges; blue
/// ones keep none. Out-degrees are those of `H`, so edges leaving `S` must
/// already be gone from `H`.
#[derive(Clone, Debug)]
pub struct LevelPlainGraph {
    pub level: u32,
    /// Local index to vertex id.
    pub vertices: Vec<VertexId>,
    pub local: Csr,
    /// Blue vertices, as local indices.
    pub blue: VertexSet,
    /// Adjacency entries read while building.
    pub work: u64,
}

impl LevelPlainGraph {
    /// `local_of` is scratch space of length `h.capacity()` filled with
    /// `u32::MAX`; it is restored before returning.
    pub fn build<G: Digraph>(h: &G, s: &[VertexId], level: u32, local_of: &mut [u32]) -> Self {
        for (i, &v) in s.iter().enumerate() {
            local_of[v] = i as u32;
        }
        let threshold = 1usize.checked_shl(level).unwrap_or(usize::MAX);
        let mut edges = Vec::new();
        let mut blue = VertexSet::new(s.len());
        let mut work = s.len() as u64;
        for (i, &v) in s.iter().enumerate() {
            if h.out_degree(v) > threshold {
                blue.insert(i);
                continue;
            }
            for w in h.successors(v) {
                work += 1;
                if local_of[w] != ABSENT {
                    edges.push((i, local_of[w] as usize));
                }
            }
        }
        for &v in s {
            local_of[v] = ABSENT;
        }
        LevelPlainGraph {
            level,
            vertices: s.to_vec(),
            local: Csr::new(vec![true; s.len()], &edges),
            blue,
            work,
        }
    }

    /// Smallest bottom SCC of `H_i[Z]` with `Z = S ∖ reach(Bl_i, H_i[S])`.
    pub fn bottom_scc(&self) -> Option<Vec<VertexId>> {
        let reaching = reach_to(&self.blue, &self.local);
        if reaching.len() == self.vertices.len() {
            return None;
        }
        let z = VertexSet::from_iter_in(
            self.vertices.len(),
            (0..self.vertices.len()).filter(|&i| !reaching.contains(i)),
        );
        let x = smallest_bottom_scc(&self.local, &z);
        Some(x.iter().map(|i| self.vertices[i]).collect())
    }

    fn cost(&self) -> u64 {
        self.work + self.local.edge_count() as u64
    }
}

pub fn level_plain_graph<G: Digraph>(h: &G, s: &[VertexId], level: u32) -> LevelPlainGraph {
    let mut scratch = vec![ABSENT; h.capacity()];
    LevelPlainGraph::build(h, s, level, &mut scratch)
}

/// The bottom SCC found at level `level` of `h` restricted to `s`, if any.
pub fn bounded_bottom_scc<G: Digraph>(h: &G, s: &[VertexId], level: u32) -> Option<Vec<VertexId>> {
    level_plain_graph(h, s, level).bottom_scc()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SearchOutcome {
    WholeSetStronglyConnected,
    SplitFound {
        x: Vec<VertexId>,
        level: u32,
        direction: Direction,
    },
    Exhausted,
}

/// Highest level needed for `s`: from there on no vertex is blue.
fn top_level<G: Digraph>(g: &G, s: &[VertexId]) -> u32 {
    let widest = s
        .iter()
        .map(|&v| g.out_degree(v).max(g.in_degree(v)))
        .max()
        .unwrap_or(0)
        .max(s.len());
    ceil_log2(widest.max(1)).max(1)
}

fn lockstep<G: Digraph>(g: &G, s: &[VertexId], local_of: &mut [u32], work: &mut u64) -> SearchOutcome {
    let rev = reverse_view(g);
    for level in 1..=top_level(g, s) {
        for direction in [Direction::Forward, Direction::Reverse] {
            let lvl = match direction {
                Direction::Forward => LevelPlainGraph::build(g, s, level, local_of),
                Direction::Reverse => LevelPlainGraph::build(&rev, s, level, local_of),
            };
            *work += lvl.cost();
            let Some(x) = lvl.bottom_scc() else { continue };
            if x.len() == s.len() {
                return SearchOutcome::WholeSetStronglyConnected;
            }
            if 2 * x.len() <= s.len() {
                return SearchOutcome::SplitFound {
                    x,
                    level,
                    direction,
                };
            }
        }
    }
    SearchOutcome::Exhausted
}

/// Lock-step search on `g` and its reverse, level by level, forward first.
///
/// `g[s]` must contain an edge and `g` no edge leaving `s`.
pub fn lockstep_split<G: Digraph>(g: &G, s: &[VertexId]) -> SearchOutcome {
    let mut scratch = vec![ABSENT; g.capacity()];
    let mut work = 0;
    lockstep(g, s, &mut scratch, &mut work)
}

#[derive(Clone, Debug, Default)]
pub struct GoodOptions {
    /// Expensive per-step checks: bad-vertex condition, split sets against a
    /// full SCC decomposition.
    pub debug_checks: bool,
    /// A known good component that must stay inside exactly one queued set.
    pub planted: Option<Vec<VertexId>>,
}

#[derive(Clone, Debug, Default)]
pub struct GoodStats {
    pub splits: usize,
    pub bad_removed: usize,
    /// Level-graph construction and search work.
    pub search_work: u64,
    /// Work done inside the `D(S)` structures.
    pub ds_work: u64,
    /// Cross edges deleted after splits.
    pub cut_edges: u64,
    /// Largest number of split-off sets any single vertex belonged to.
    pub max_charge: u32,
    pub charge_bound: u32,
    pub max_split_level: u32,
    pub violations: Vec<String>,
}

impl GoodStats {
    pub fn total_work(&self) -> u64 {
        self.search_work + self.ds_work + self.cut_edges
    }
}

pub fn good_component(g: &mut Graph, pairs: &StreettPairs, s0: &[VertexId]) -> Option<VertexSet> {
    good_component_with(g, pairs, s0, &GoodOptions::default()).0
}

/// Runs the search on `g[s0]`, which must be strongly connected with no edge
/// of `g` leaving or entering `s0`. Bad vertices and cut edges are deleted
/// from `g`.
pub fn good_component_with(
    g: &mut Graph,
    pairs: &StreettPairs,
    s0: &[VertexId],
    opts: &GoodOptions,
) -> (Option<VertexSet>, GoodStats) {
    let n = g.capacity();
    let mut stats = GoodStats {
        charge_bound: ceil_log2(s0.len().max(1)),
        ..GoodStats::default()
    };
    let mut charge: Vec<u32> = Vec::new();
    let mut local_of = vec![ABSENT; n];
    let mut queue = VecDeque::from([SetData::construct(s0.iter().copied(), pairs)]);
    let mut finished_work = 0u64;

    let result = loop {
        if let Some(y) = &opts.planted {
            let holders = queue
                .iter()
                .filter(|d| y.iter().all(|&v| d.contains(v)))
                .count();
            if holders != 1 {
                stats
                    .violations
                    .push(format!("planted component lies in {holders} queued sets"));
            }
        }
        let Some(mut d) = queue.pop_front() else {
            break None;
        };
        loop {
            let bad: Vec<VertexId> = d.bad().iter().copied().collect();
            if bad.is_empty() {
                break;
            }
            if opts.debug_checks {
                check_bad(&d, &bad, pairs, &mut stats);
            }
            d.remove(&bad, pairs).expect("bad vertices belong to S");
            for &v in &bad {
                g.remove_vertex(v);
            }
            stats.bad_removed += bad.len();
        }
        let s: Vec<VertexId> = d.vertices().iter().copied().collect();
        if !s.iter().any(|&v| g.out_degree(v) > 0) {
            finished_work += d.work();
            continue;
        }
        match lockstep(&*g, &s, &mut local_of, &mut stats.search_work) {
            SearchOutcome::WholeSetStronglyConnected => {
                finished_work += d.work();
                break Some(VertexSet::from_iter_in(n, s));
            }
            SearchOutcome::SplitFound {
                x,
                level,
                direction,
            } => {
                stats.splits += 1;
                stats.max_split_level = stats.max_split_level.max(level);
                if x.len() < 1 << (level - 1) {
                    stats.violations.push(format!(
                        "level-{level} split has only {} vertices",
                        x.len()
                    ));
                }
                if opts.debug_checks {
                    check_split(&*g, &s, &x, direction, &mut stats);
                }
                if charge.is_empty() {
                    charge = vec![0; n];
                }
                for &v in &x {
                    charge[v] += 1;
                    stats.max_charge = stats.max_charge.max(charge[v]);
                }
                if stats.max_charge > stats.charge_bound {
                    stats.violations.push(format!(
                        "a vertex was split off {} times, bound {}",
                        stats.max_charge, stats.charge_bound
                    ));
                }
                stats.cut_edges += cut(g, &x, &d);
                let split = d.split(&x, pairs).expect("split set lies in S");
                queue.push_back(d);
                queue.push_back(split);
            }
            SearchOutcome::Exhausted => {
                stats
                    .violations
                    .push(format!("no split found for a set of {} vertices", s.len()));
                finished_work += d.work();
            }
        }
    };
    stats.ds_work = finished_work + queue.iter().map(SetData::work).sum::<u64>();
    (result, stats)
}

/// Deletes the edges between `x` and the rest of `d`'s set.
fn cut(g: &mut Graph, x: &[VertexId], d: &SetData) -> u64 {
    let xs: IndexSet<VertexId> = x.iter().copied().collect();
    let outside = |w: VertexId| d.contains(w) && !xs.contains(&w);
    let mut doomed = Vec::new();
    let mut scanned = 0;
    for &v in x {
        for (e, w) in g.out_edges(v) {
            scanned += 1;
            if outside(w) {
                doomed.push(e);
            }
        }
        for (e, u) in g.in_edges(v) {
            scanned += 1;
            if outside(u) {
                doomed.push(e);
            }
        }
    }
    for e in doomed {
        g.remove_edge(e);
    }
    scanned
}

fn check_bad(d: &SetData, bad: &[VertexId], pairs: &StreettPairs, stats: &mut GoodStats) {
    for &v in bad {
        let justified = pairs.memberships(v).iter().any(|&(j, side)| {
            side == crate::streett_ds::Side::L
                && !pairs.u(j as usize).iter().any(|&w| d.contains(w))
        });
        if !justified {
            stats
                .violations
                .push(format!("vertex {v} removed as bad without an uncovered pair"));
        }
    }
}

fn check_split<G: Digraph>(g: &G, s: &[VertexId], x: &[VertexId], dir: Direction, stats: &mut GoodStats) {
    let n = g.capacity();
    let in_s = VertexSet::from_iter_in(n, s.iter().copied());
    let xs = VertexSet::from_iter_in(n, x.iter().copied());
    let is_comp = sccs(g, &in_s).contains(&xs);
    let closed = match dir {
        Direction::Forward => x.iter().all(|&v| g.successors(v).all(|w| xs.contains(w))),
        Direction::Reverse => x.iter().all(|&v| g.predecessors(v).all(|u| xs.contains(u))),
    };
    if !is_comp || !closed {
        stats.violations.push(format!(
            "split set of size {} is not a {} SCC",
            x.len(),
            if dir == Direction::Forward { "bottom" } else { "top" }
        ));
    }
}
