//! Streett objectives on graphs: winning set, jungles and lasso certificates.

use std::collections::VecDeque;

use thiserror::Error;

use crate::error::{Error, Result};
use crate::good_component::{good_component_with, GoodOptions};
use crate::graph::{Digraph, Graph};
use crate::scc::{is_nontrivial, reach_to, tarjan};
use crate::streett_ds::StreettPairs;
use crate::{VertexId, VertexSet};

/// A graph with Streett pairs.
#[derive(Clone, Debug)]
pub struct StreettInstance {
    pub graph: Graph,
    pub pairs: StreettPairs,
}

impl StreettInstance {
    pub fn new(graph: Graph, pairs: StreettPairs) -> Result<Self> {
        if graph.capacity() != pairs.vertex_count() {
            return Err(Error::InvalidParameters(format!(
                "graph has {} vertices, pairs range over {}",
                graph.capacity(),
                pairs.vertex_count()
            )));
        }
        Ok(Self { graph, pairs })
    }

    pub fn solve(&self) -> StreettSolution {
        solve_streett(&self.graph, &self.pairs)
    }
}

/// A maximal non-trivial SCC and the good component found inside it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SccVerdict {
    /// Sorted vertex ids.
    pub scc: Vec<VertexId>,
    /// Sorted vertex ids of a good component, if the SCC is satisfying.
    pub good: Option<Vec<VertexId>>,
}

#[derive(Clone, Debug, Default)]
pub struct StreettStats {
    pub scc_edge_visits: u64,
    pub search_work: u64,
    pub ds_work: u64,
    pub cut_edges: u64,
    pub splits: usize,
    pub bad_removed: usize,
    pub max_charge: u32,
    /// `⌈log₂ n⌉`
    pub charge_bound: u32,
    pub max_split_level: u32,
    pub violations: Vec<String>,
}

impl StreettStats {
    pub fn total_work(&self) -> u64 {
        self.scc_edge_visits + self.search_work + self.ds_work + self.cut_edges
    }
}

#[derive(Clone, Debug)]
pub struct StreettSolution {
    pub winning: VertexSet,
    /// Every maximal non-trivial SCC, ordered by smallest vertex id.
    pub satisfying_sccs: Vec<SccVerdict>,
    pub stats: StreettStats,
}

impl StreettSolution {
    pub fn good_components(&self) -> impl Iterator<Item = &[VertexId]> {
        self.satisfying_sccs.iter().filter_map(|s| s.good.as_deref())
    }
}

pub fn solve_streett(g: &Graph, pairs: &StreettPairs) -> StreettSolution {
    solve_streett_with(g, pairs, &GoodOptions::default())
}

/// Decomposes `g` into maximal SCCs, looks for a good component in each
/// non-trivial one, and returns everything that can reach a satisfying SCC.
pub fn solve_streett_with(g: &Graph, pairs: &StreettPairs, opts: &GoodOptions) -> StreettSolution {
    let n = g.capacity();
    let (comps, visits) = tarjan(g, g.vertices(), |_| true);
    let mut stats = StreettStats {
        scc_edge_visits: visits,
        charge_bound: crate::parity3::ceil_log2(n.max(1)),
        ..StreettStats::default()
    };
    let mut comp_of = vec![usize::MAX; n];
    for (i, c) in comps.iter().enumerate() {
        for &v in c {
            comp_of[v] = i;
        }
    }
    let mut h = g.clone();
    for u in g.vertices() {
        let cross: Vec<_> = h
            .out_edges(u)
            .filter(|&(_, w)| comp_of[w] != comp_of[u])
            .map(|(e, _)| e)
            .collect();
        stats.scc_edge_visits += g.out_degree(u) as u64;
        for e in cross {
            h.remove_edge(e);
        }
    }

    let mut verdicts = Vec::new();
    let mut targets = VertexSet::new(n);
    for comp in &comps {
        if !is_nontrivial(g, comp) {
            continue;
        }
        let (good, gs) = good_component_with(&mut h, pairs, comp, opts);
        stats.search_work += gs.search_work;
        stats.ds_work += gs.ds_work;
        stats.cut_edges += gs.cut_edges;
        stats.splits += gs.splits;
        stats.bad_removed += gs.bad_removed;
        stats.max_charge = stats.max_charge.max(gs.max_charge);
        stats.max_split_level = stats.max_split_level.max(gs.max_split_level);
        stats.violations.extend(gs.violations);
        let mut scc = comp.clone();
        scc.sort_unstable();
        if good.is_some() {
            targets.extend(scc.iter().copied());
        }
        verdicts.push(SccVerdict {
            scc,
            good: good.map(|x| x.to_sorted_vec()),
        });
    }
    verdicts.sort_by_key(|v| v.scc[0]);
    StreettSolution {
        winning: reach_to(&targets, g),
        satisfying_sccs: verdicts,
        stats,
    }
}

/// Depth-first artifact on a strongly connected set: spanning tree, preorder,
/// lowlinks and one backlink per vertex.
#[derive(Clone, Debug)]
pub struct Jungle {
    pub root: VertexId,
    /// Preorder number, 0 for the root; `u32::MAX` outside the set.
    pub preorder: Vec<u32>,
    pub parent: Vec<Option<VertexId>>,
    /// Smallest preorder number reachable through the subtree and one
    /// non-tree edge.
    pub lowlink: Vec<u32>,
    /// Edge `(u, w)` on the way to `lowlink(u)`: a non-tree edge, or the tree
    /// edge to the child realising it. `None` for the root.
    pub backlink: Vec<Option<(VertexId, VertexId)>>,
}

impl Jungle {
    /// Vertices from the root down to `u`, both included.
    pub fn tree_path(&self, u: VertexId) -> Vec<VertexId> {
        let mut path = vec![u];
        let mut cur = u;
        while let Some(p) = self.parent[cur] {
            path.push(p);
            cur = p;
        }
        path.reverse();
        path
    }

    /// Vertices from `u` back to the root along backlinks, both included.
    pub fn backlink_chain(&self, u: VertexId) -> Vec<VertexId> {
        let mut chain = vec![u];
        let mut cur = u;
        while cur != self.root {
            let (_, w) = self.backlink[cur].expect("non-root vertex of a strongly connected set");
            chain.push(w);
            cur = w;
        }
        chain
    }
}

/// DFS from `v` inside `x`; fails unless every vertex of `x` is reached and
/// `g[x]` is strongly connected.
pub fn build_jungle<G: Digraph>(g: &G, x: &VertexSet, v: VertexId) -> Result<Jungle> {
    let n = g.capacity();
    if !x.contains(v) {
        return Err(Error::NotSubset(v));
    }
    let mut preorder = vec![u32::MAX; n];
    let mut parent = vec![None; n];
    let mut lowlink = vec![u32::MAX; n];
    let mut backlink = vec![None; n];
    let mut next = 0u32;
    let mut stack: Vec<(VertexId, Vec<VertexId>)> = Vec::new();
    let enter = |u: VertexId, pre: &mut [u32], low: &mut [u32], next: &mut u32| {
        pre[u] = *next;
        low[u] = *next;
        *next += 1;
        let mut succ: Vec<_> = g.successors(u).filter(|&w| x.contains(w)).collect();
        succ.reverse();
        (u, succ)
    };
    stack.push(enter(v, &mut preorder, &mut lowlink, &mut next));
    while let Some((u, pending)) = stack.last_mut() {
        let u = *u;
        if let Some(w) = pending.pop() {
            if preorder[w] == u32::MAX {
                parent[w] = Some(u);
                stack.push(enter(w, &mut preorder, &mut lowlink, &mut next));
            } else if preorder[w] < lowlink[u] {
                lowlink[u] = preorder[w];
                backlink[u] = Some((u, w));
            }
            continue;
        }
        stack.pop();
        if let Some(p) = parent[u] {
            if lowlink[u] < lowlink[p] {
                lowlink[p] = lowlink[u];
                backlink[p] = Some((p, u));
            }
        }
    }
    if let Some(u) = x.iter().find(|&u| preorder[u] == u32::MAX) {
        return Err(Error::NotStronglyConnected(u));
    }
    if let Some(u) = x.iter().find(|&u| u != v && lowlink[u] >= preorder[u]) {
        return Err(Error::NotStronglyConnected(u));
    }
    Ok(Jungle {
        root: v,
        preorder,
        parent,
        lowlink,
        backlink,
    })
}

/// Finite stem from the start vertex to `cycle[0]`, then a cycle that returns
/// to it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Lasso {
    pub stem: Vec<VertexId>,
    pub cycle: Vec<VertexId>,
}

impl Lasso {
    pub fn size(&self) -> usize {
        self.stem.len() + self.cycle.len()
    }
}

/// Upper bound `2n(min(n, k) + 1) + n` on the size of any certificate.
pub fn certificate_size_bound(n: usize, k: usize) -> usize {
    2 * n * (n.min(k) + 1) + n
}

/// Whether `x` induces a non-trivial strongly connected subgraph meeting
/// `U_j` whenever it meets `L_j`.
pub fn is_good_component<G: Digraph>(g: &G, pairs: &StreettPairs, x: &VertexSet) -> bool {
    let Some(v) = x.min() else { return false };
    let nontrivial = x.len() > 1 || g.successors(v).any(|w| w == v);
    nontrivial && build_jungle(g, x, v).is_ok() && pairs.satisfied_by(x.iter())
}

/// A lasso from `x` into the good component `comp`.
pub fn certificate<G: Digraph>(
    g: &G,
    pairs: &StreettPairs,
    x: VertexId,
    comp: &VertexSet,
) -> Result<Lasso> {
    if !is_good_component(g, pairs, comp) {
        return Err(Error::NotGood(format!("{:?}", comp)));
    }
    let stem = dfs_path(g, x, comp).ok_or(Error::Unreachable(x))?;
    let v = *stem.last().expect("nonempty stem");
    let jungle = build_jungle(g, comp, v)?;

    let mut chosen: Vec<VertexId> = Vec::new();
    for j in 0..pairs.k() {
        if !pairs.l(j).iter().any(|&w| comp.contains(w)) {
            continue;
        }
        let u = pairs
            .u(j)
            .iter()
            .copied()
            .filter(|&w| comp.contains(w))
            .min()
            .expect("good component covers every pair it meets");
        if !chosen.contains(&u) {
            chosen.push(u);
        }
    }
    let mut cycle = vec![v];
    for &u in &chosen {
        if u == v {
            continue;
        }
        cycle.extend(jungle.tree_path(u).into_iter().skip(1));
        cycle.extend(jungle.backlink_chain(u).into_iter().skip(1));
    }
    if cycle.len() == 1 {
        cycle = shortest_cycle(g, v, comp);
    }
    let lasso = Lasso { stem, cycle };
    debug_assert!(lasso.cycle.len() <= 1 + 2 * comp.len() * chosen.len().max(1));
    Ok(lasso)
}

fn dfs_path<G: Digraph>(g: &G, x: VertexId, goal: &VertexSet) -> Option<Vec<VertexId>> {
    let mut seen = VertexSet::new(g.capacity());
    let mut path = vec![x];
    let mut pending = vec![g.successors(x).collect::<Vec<_>>()];
    seen.insert(x);
    if goal.contains(x) {
        return Some(path);
    }
    while let Some(top) = pending.last_mut() {
        match top.pop() {
            Some(w) if seen.insert(w) => {
                path.push(w);
                if goal.contains(w) {
                    return Some(path);
                }
                let mut succ: Vec<_> = g.successors(w).collect();
                succ.reverse();
                pending.push(succ);
            }
            Some(_) => {}
            None => {
                pending.pop();
                path.pop();
            }
        }
    }
    None
}

/// Shortest cycle through `v` inside `within`, as `v, …, v`.
fn shortest_cycle<G: Digraph>(g: &G, v: VertexId, within: &VertexSet) -> Vec<VertexId> {
    let mut parent = vec![usize::MAX; g.capacity()];
    let mut queue = VecDeque::from([v]);
    while let Some(u) = queue.pop_front() {
        for w in g.successors(u).filter(|&w| within.contains(w)) {
            if w == v {
                let mut path = vec![u];
                let mut cur = u;
                while cur != v {
                    cur = parent[cur];
                    path.push(cur);
                }
                path.reverse();
                path.push(v);
                return path;
            }
            if parent[w] == usize::MAX {
                parent[w] = u;
                queue.push_back(w);
            }
        }
    }
    unreachable!("vertex of a strongly connected set lies on a cycle")
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum CertificateViolation {
    #[error("stem must start at {expected}, found {found:?}")]
    StemStart {
        expected: VertexId,
        found: Option<VertexId>,
    },
    #[error("stem ends at {stem_end}, cycle starts at {cycle_start:?}")]
    Disconnected {
        stem_end: VertexId,
        cycle_start: Option<VertexId>,
    },
    #[error("cycle does not return to its start")]
    Open,
    #[error("{0}->{1} is not an edge")]
    NotAnEdge(VertexId, VertexId),
    #[error("vertex {0} is out of range")]
    OutOfRange(VertexId),
    #[error("cycle meets L_{0} but not U_{0}")]
    Pair(usize),
}

pub fn verify_certificate<G: Digraph>(
    g: &G,
    pairs: &StreettPairs,
    x: VertexId,
    lasso: &Lasso,
) -> std::result::Result<(), CertificateViolation> {
    if let Some(&v) = lasso
        .stem
        .iter()
        .chain(&lasso.cycle)
        .find(|&&v| v >= g.capacity() || !g.contains(v))
    {
        return Err(CertificateViolation::OutOfRange(v));
    }
    if lasso.stem.first() != Some(&x) {
        return Err(CertificateViolation::StemStart {
            expected: x,
            found: lasso.stem.first().copied(),
        });
    }
    let stem_end = *lasso.stem.last().expect("nonempty stem");
    if lasso.cycle.first() != Some(&stem_end) {
        return Err(CertificateViolation::Disconnected {
            stem_end,
            cycle_start: lasso.cycle.first().copied(),
        });
    }
    if lasso.cycle.len() < 2 || lasso.cycle.last() != lasso.cycle.first() {
        return Err(CertificateViolation::Open);
    }
    for path in [&lasso.stem, &lasso.cycle] {
        for w in path.windows(2) {
            if !g.has_edge(w[0], w[1]) {
                return Err(CertificateViolation::NotAnEdge(w[0], w[1]));
            }
        }
    }
    let inf = VertexSet::from_iter_in(g.capacity(), lasso.cycle.iter().copied());
    for j in 0..pairs.k() {
        let meets = |side: &[VertexId]| side.iter().any(|&v| inf.contains(v));
        if meets(pairs.l(j)) && !meets(pairs.u(j)) {
            return Err(CertificateViolation::Pair(j));
        }
    }
    Ok(())
}
