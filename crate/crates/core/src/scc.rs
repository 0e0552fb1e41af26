//! Strongly connected components, bottom components and backward reachability.

use crate::graph::Digraph;
use crate::{VertexId, VertexSet};

const UNVISITED: u32 = u32::MAX;

/// Maximal SCCs of the subgraph of `g` induced by the vertices accepted by
/// `in_scope`, discovered from `roots` in order. Components come out in
/// reverse topological order of the condensation (bottom components first).
///
/// Explicit-stack Tarjan; the second element is the number of edges examined.
pub fn tarjan<G, F>(
    g: &G,
    roots: impl IntoIterator<Item = VertexId>,
    in_scope: F,
) -> (Vec<Vec<VertexId>>, u64)
where
    G: Digraph,
    F: Fn(VertexId) -> bool,
{
    let n = g.capacity();
    let mut index = vec![UNVISITED; n];
    let mut low = vec![0u32; n];
    let mut on_stack = vec![false; n];
    let mut stack: Vec<VertexId> = Vec::new();
    // (vertex, successors not yet examined)
    let mut call: Vec<(VertexId, Vec<VertexId>)> = Vec::new();
    let mut components = Vec::new();
    let mut next_index = 0u32;
    let mut edge_visits = 0u64;

    let scoped = |v: VertexId| g.contains(v) && in_scope(v);

    for root in roots {
        if !scoped(root) || index[root] != UNVISITED {
            continue;
        }
        index[root] = next_index;
        low[root] = next_index;
        next_index += 1;
        stack.push(root);
        on_stack[root] = true;
        call.push((root, pending_successors(g, root)));

        while let Some((v, pending)) = call.last_mut() {
            let v = *v;
            if let Some(w) = pending.pop() {
                edge_visits += 1;
                if !scoped(w) {
                    continue;
                }
                if index[w] == UNVISITED {
                    index[w] = next_index;
                    low[w] = next_index;
                    next_index += 1;
                    stack.push(w);
                    on_stack[w] = true;
                    call.push((w, pending_successors(g, w)));
                } else if on_stack[w] {
                    low[v] = low[v].min(index[w]);
                }
                continue;
            }
            call.pop();
            if let Some((parent, _)) = call.last() {
                low[*parent] = low[*parent].min(low[v]);
            }
            if low[v] == index[v] {
                let mut comp = Vec::new();
                loop {
                    let w = stack.pop().expect("tarjan stack underflow");
                    on_stack[w] = false;
                    comp.push(w);
                    if w == v {
                        break;
                    }
                }
                components.push(comp);
            }
        }
    }
    (components, edge_visits)
}

/// Successors in reverse list order, so that popping yields list order.
fn pending_successors<G: Digraph>(g: &G, v: VertexId) -> Vec<VertexId> {
    let mut succ: Vec<VertexId> = g.successors(v).collect();
    succ.reverse();
    succ
}

/// Partition of `s` into the maximal SCCs of `g[s]`, bottom components first.
pub fn sccs<G: Digraph>(g: &G, s: &VertexSet) -> Vec<VertexSet> {
    let (comps, _) = tarjan(g, s.to_sorted_vec(), |v| s.contains(v));
    comps
        .into_iter()
        .map(|c| VertexSet::from_iter_in(g.capacity(), c))
        .collect()
}

/// Whether the component has at least one internal edge.
pub fn is_nontrivial<G: Digraph>(g: &G, comp: &[VertexId]) -> bool {
    comp.len() > 1 || comp.iter().any(|&v| g.successors(v).any(|w| w == v))
}

/// Among the bottom SCCs of `comps` (a partition of the scope, given with a
/// per-vertex component index), returns the index of one with the fewest
/// vertices, ties broken by the smallest vertex id it contains.
pub(crate) fn smallest_bottom<G: Digraph>(
    g: &G,
    comps: &[Vec<VertexId>],
    comp_of: impl Fn(VertexId) -> Option<usize>,
) -> Option<usize> {
    let mut best: Option<(usize, VertexId, usize)> = None;
    for (i, comp) in comps.iter().enumerate() {
        let bottom = comp.iter().all(|&v| {
            g.successors(v)
                .all(|w| !g.contains(w) || comp_of(w).is_none_or(|c| c == i))
        });
        if !bottom {
            continue;
        }
        let key = (comp.len(), *comp.iter().min().expect("empty component"));
        if best.is_none_or(|(len, min, _)| key < (len, min)) {
            best = Some((key.0, key.1, i));
        }
    }
    best.map(|(_, _, i)| i)
}

/// A bottom SCC of `g[s]` of minimum cardinality (ties: smallest vertex id).
pub fn smallest_bottom_scc<G: Digraph>(g: &G, s: &VertexSet) -> VertexSet {
    assert!(!s.is_empty(), "smallest_bottom_scc on an empty set");
    let (comps, _) = tarjan(g, s.to_sorted_vec(), |v| s.contains(v));
    let mut comp_of = vec![usize::MAX; g.capacity()];
    for (i, c) in comps.iter().enumerate() {
        for &v in c {
            comp_of[v] = i;
        }
    }
    let idx = smallest_bottom(g, &comps, |w| {
        (comp_of[w] != usize::MAX).then_some(comp_of[w])
    })
    .expect("every finite graph has a bottom SCC");
    VertexSet::from_iter_in(g.capacity(), comps[idx].iter().copied())
}

/// All vertices of `g` that can reach `s` (including `s` itself).
pub fn reach_to<G: Digraph>(s: &VertexSet, g: &G) -> VertexSet {
    let mut seen = VertexSet::new(g.capacity());
    let mut queue: Vec<VertexId> = Vec::new();
    for v in s.iter().filter(|&v| g.contains(v)) {
        if seen.insert(v) {
            queue.push(v);
        }
    }
    while let Some(w) = queue.pop() {
        for u in g.predecessors(w) {
            if g.contains(u) && seen.insert(u) {
                queue.push(u);
            }
        }
    }
    seen
}
