//! Directed graphs with vertex and edge deletion.
//!
//! Adjacency is kept as intrusive doubly linked lists threaded through an edge
//! arena, so every edge sits in the out-list of its source and the in-list of
//! its target at a known position. Removing one edge is O(1) and preserves the
//! relative order of the remaining edges; removing a vertex costs O(degree).

use crate::{VertexId, VertexSet};

pub type EdgeId = usize;

const NIL: u32 = u32::MAX;

/// Read-only adjacency queries shared by every graph representation in the
/// crate (mutable linked graphs, frozen CSR snapshots, reversed views).
pub trait Digraph {
    /// Size of the id universe; valid ids are `0..capacity()`.
    fn capacity(&self) -> usize;
    /// Whether `v` is a vertex of this (possibly restricted) graph.
    fn contains(&self, v: VertexId) -> bool;
    fn successors(&self, v: VertexId) -> impl Iterator<Item = VertexId> + '_;
    fn predecessors(&self, v: VertexId) -> impl Iterator<Item = VertexId> + '_;
    fn out_degree(&self, v: VertexId) -> usize;
    fn in_degree(&self, v: VertexId) -> usize;

    fn vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        (0..self.capacity()).filter(move |&v| self.contains(v))
    }

    fn has_edge(&self, u: VertexId, v: VertexId) -> bool {
        self.contains(u) && self.contains(v) && self.successors(u).any(|w| w == v)
    }
}

#[derive(Clone, Copy, Debug)]
struct Edge {
    src: u32,
    dst: u32,
    next_out: u32,
    prev_out: u32,
    next_in: u32,
    prev_in: u32,
    alive: bool,
}

/// Doubly linked list endpoints plus length.
#[derive(Clone, Copy, Debug)]
struct List {
    head: u32,
    tail: u32,
    len: u32,
}

impl List {
    const EMPTY: List = List {
        head: NIL,
        tail: NIL,
        len: 0,
    };
}

/// Mutable directed graph over vertex ids `0..n`.
///
/// Deleted vertices stay in the id space with their alive flag cleared; ids
/// are never reused.
#[derive(Clone, Debug)]
pub struct Graph {
    edges: Vec<Edge>,
    out: Vec<List>,
    inc: Vec<List>,
    alive: Vec<bool>,
    alive_count: usize,
    edge_count: usize,
}

impl Graph {
    pub fn new(n: usize) -> Self {
        Self {
            edges: Vec::new(),
            out: vec![List::EMPTY; n],
            inc: vec![List::EMPTY; n],
            alive: vec![true; n],
            alive_count: n,
            edge_count: 0,
        }
    }

    /// Builds a graph whose out-lists and in-lists both follow input order.
    pub fn from_edges(n: usize, edges: &[(VertexId, VertexId)]) -> Self {
        let order: Vec<usize> = (0..edges.len()).collect();
        Self::from_edges_with_in_order(n, edges, &order)
    }

    /// Builds a graph whose out-lists follow input order and whose in-lists
    /// are linked in the order of `in_order`, a permutation of edge indices.
    pub fn from_edges_with_in_order(
        n: usize,
        edges: &[(VertexId, VertexId)],
        in_order: &[usize],
    ) -> Self {
        assert_eq!(in_order.len(), edges.len());
        let mut g = Self::new(n);
        g.edges.reserve(edges.len());
        for &(u, v) in edges {
            assert!(u < n && v < n, "edge ({u},{v}) out of range for n={n}");
            let id = g.edges.len() as u32;
            g.edges.push(Edge {
                src: u as u32,
                dst: v as u32,
                next_out: NIL,
                prev_out: NIL,
                next_in: NIL,
                prev_in: NIL,
                alive: true,
            });
            g.link_out(u, id);
        }
        for &e in in_order {
            let v = g.edges[e].dst as usize;
            g.link_in(v, e as u32);
        }
        g.edge_count = edges.len();
        g
    }

    fn link_out(&mut self, u: VertexId, e: u32) {
        let list = &mut self.out[u];
        self.edges[e as usize].prev_out = list.tail;
        if list.tail == NIL {
            list.head = e;
        } else {
            self.edges[list.tail as usize].next_out = e;
        }
        list.tail = e;
        list.len += 1;
    }

    fn link_in(&mut self, v: VertexId, e: u32) {
        let list = &mut self.inc[v];
        self.edges[e as usize].prev_in = list.tail;
        if list.tail == NIL {
            list.head = e;
        } else {
            self.edges[list.tail as usize].next_in = e;
        }
        list.tail = e;
        list.len += 1;
    }

    fn unlink_out(&mut self, e: u32) {
        let Edge {
            src,
            prev_out,
            next_out,
            ..
        } = self.edges[e as usize];
        let list = &mut self.out[src as usize];
        if prev_out == NIL {
            list.head = next_out;
        } else {
            self.edges[prev_out as usize].next_out = next_out;
        }
        if next_out == NIL {
            list.tail = prev_out;
        } else {
            self.edges[next_out as usize].prev_out = prev_out;
        }
        list.len -= 1;
    }

    fn unlink_in(&mut self, e: u32) {
        let Edge {
            dst,
            prev_in,
            next_in,
            ..
        } = self.edges[e as usize];
        let list = &mut self.inc[dst as usize];
        if prev_in == NIL {
            list.head = next_in;
        } else {
            self.edges[prev_in as usize].next_in = next_in;
        }
        if next_in == NIL {
            list.tail = prev_in;
        } else {
            self.edges[next_in as usize].prev_in = prev_in;
        }
        list.len -= 1;
    }

    pub fn add_edge(&mut self, u: VertexId, v: VertexId) -> EdgeId {
        assert!(self.alive[u] && self.alive[v]);
        let id = self.edges.len() as u32;
        self.edges.push(Edge {
            src: u as u32,
            dst: v as u32,
            next_out: NIL,
            prev_out: NIL,
            next_in: NIL,
            prev_in: NIL,
            alive: true,
        });
        self.link_out(u, id);
        self.link_in(v, id);
        self.edge_count += 1;
        id as EdgeId
    }

    /// Removes a single edge; O(1).
    pub fn remove_edge(&mut self, e: EdgeId) {
        if !self.edges[e].alive {
            return;
        }
        self.unlink_out(e as u32);
        self.unlink_in(e as u32);
        self.edges[e].alive = false;
        self.edge_count -= 1;
    }

    /// Deletes `v` together with every incident edge in time O(deg(v)).
    pub fn remove_vertex(&mut self, v: VertexId) {
        if !self.alive[v] {
            return;
        }
        let mut e = self.out[v].head;
        while e != NIL {
            let next = self.edges[e as usize].next_out;
            self.unlink_in(e);
            self.edges[e as usize].alive = false;
            self.edge_count -= 1;
            e = next;
        }
        self.out[v] = List::EMPTY;
        let mut e = self.inc[v].head;
        while e != NIL {
            let next = self.edges[e as usize].next_in;
            if self.edges[e as usize].alive {
                self.unlink_out(e);
                self.edges[e as usize].alive = false;
                self.edge_count -= 1;
            }
            e = next;
        }
        self.inc[v] = List::EMPTY;
        self.alive[v] = false;
        self.alive_count -= 1;
    }

    pub fn remove_vertices(&mut self, vs: impl IntoIterator<Item = VertexId>) {
        for v in vs {
            self.remove_vertex(v);
        }
    }

    pub fn is_alive(&self, v: VertexId) -> bool {
        self.alive[v]
    }

    pub fn alive_count(&self) -> usize {
        self.alive_count
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn alive_set(&self) -> VertexSet {
        VertexSet::from_iter_in(self.capacity(), self.vertices())
    }

    /// Out-edges of `u` as `(edge id, target)` in list order.
    pub fn out_edges(&self, u: VertexId) -> OutEdges<'_> {
        OutEdges {
            g: self,
            cur: self.out[u].head,
        }
    }

    /// In-edges of `v` as `(edge id, source)` in list order.
    pub fn in_edges(&self, v: VertexId) -> InEdges<'_> {
        InEdges {
            g: self,
            cur: self.inc[v].head,
        }
    }

    pub fn edge_endpoints(&self, e: EdgeId) -> (VertexId, VertexId) {
        let edge = &self.edges[e];
        (edge.src as usize, edge.dst as usize)
    }

    pub fn edge_alive(&self, e: EdgeId) -> bool {
        self.edges[e].alive
    }

    /// All alive edges in out-list order, grouped by source.
    pub fn edge_list(&self) -> Vec<(VertexId, VertexId)> {
        let mut list = Vec::with_capacity(self.edge_count);
        for u in self.vertices() {
            list.extend(self.successors(u).map(|v| (u, v)));
        }
        list
    }

    /// Checks that out-lists and in-lists describe the same alive edge set.
    pub fn check_consistency(&self) -> bool {
        let mut out_count = 0;
        for u in 0..self.capacity() {
            if !self.alive[u] && self.out[u].len + self.inc[u].len > 0 {
                return false;
            }
            for (e, v) in self.out_edges(u) {
                out_count += 1;
                if !self.edges[e].alive || !self.alive[v] {
                    return false;
                }
                if !self.in_edges(v).any(|(f, _)| f == e) {
                    return false;
                }
            }
        }
        let in_count: usize = (0..self.capacity()).map(|v| self.inc[v].len as usize).sum();
        out_count == self.edge_count && in_count == self.edge_count
    }
}

pub struct OutEdges<'a> {
    g: &'a Graph,
    cur: u32,
}

impl Iterator for OutEdges<'_> {
    type Item = (EdgeId, VertexId);

    fn next(&mut self) -> Option<Self::Item> {
        if self.cur == NIL {
            return None;
        }
        let e = &self.g.edges[self.cur as usize];
        let item = (self.cur as usize, e.dst as usize);
        self.cur = e.next_out;
        Some(item)
    }
}

pub struct InEdges<'a> {
    g: &'a Graph,
    cur: u32,
}

impl Iterator for InEdges<'_> {
    type Item = (EdgeId, VertexId);

    fn next(&mut self) -> Option<Self::Item> {
        if self.cur == NIL {
            return None;
        }
        let e = &self.g.edges[self.cur as usize];
        let item = (self.cur as usize, e.src as usize);
        self.cur = e.next_in;
        Some(item)
    }
}

impl Digraph for Graph {
    fn capacity(&self) -> usize {
        self.alive.len()
    }

    #[inline]
    fn contains(&self, v: VertexId) -> bool {
        self.alive[v]
    }

    fn successors(&self, v: VertexId) -> impl Iterator<Item = VertexId> + '_ {
        self.out_edges(v).map(|(_, w)| w)
    }

    fn predecessors(&self, v: VertexId) -> impl Iterator<Item = VertexId> + '_ {
        self.in_edges(v).map(|(_, u)| u)
    }

    fn out_degree(&self, v: VertexId) -> usize {
        self.out[v].len as usize
    }

    fn in_degree(&self, v: VertexId) -> usize {
        self.inc[v].len as usize
    }
}

impl<G: Digraph> Digraph for &G {
    fn capacity(&self) -> usize {
        (**self).capacity()
    }
    fn contains(&self, v: VertexId) -> bool {
        (**self).contains(v)
    }
    fn successors(&self, v: VertexId) -> impl Iterator<Item = VertexId> + '_ {
        (**self).successors(v)
    }
    fn predecessors(&self, v: VertexId) -> impl Iterator<Item = VertexId> + '_ {
        (**self).predecessors(v)
    }
    fn out_degree(&self, v: VertexId) -> usize {
        (**self).out_degree(v)
    }
    fn in_degree(&self, v: VertexId) -> usize {
        (**self).in_degree(v)
    }
}

/// Zero-copy view of a graph with every edge reversed. Shares the alive mask
/// of the underlying graph.
#[derive(Clone, Copy, Debug)]
pub struct Reversed<G>(pub G);

pub fn reverse_view<G: Digraph>(g: G) -> Reversed<G> {
    Reversed(g)
}

impl<G: Digraph> Digraph for Reversed<G> {
    fn capacity(&self) -> usize {
        self.0.capacity()
    }
    fn contains(&self, v: VertexId) -> bool {
        self.0.contains(v)
    }
    fn successors(&self, v: VertexId) -> impl Iterator<Item = VertexId> + '_ {
        self.0.predecessors(v)
    }
    fn predecessors(&self, v: VertexId) -> impl Iterator<Item = VertexId> + '_ {
        self.0.successors(v)
    }
    fn out_degree(&self, v: VertexId) -> usize {
        self.0.in_degree(v)
    }
    fn in_degree(&self, v: VertexId) -> usize {
        self.0.out_degree(v)
    }
}

/// Frozen compressed-sparse-row adjacency over ids `0..n`, with a membership
/// mask. Used for level graphs and other per-phase snapshots.
#[derive(Clone, Debug)]
pub struct Csr {
    present: Vec<bool>,
    out_off: Vec<u32>,
    out_adj: Vec<u32>,
    in_off: Vec<u32>,
    in_adj: Vec<u32>,
}

impl Csr {
    /// `edges` must only connect present vertices. Out-adjacency keeps the
    /// input order per source; in-adjacency keeps it per target.
    pub fn new(present: Vec<bool>, edges: &[(VertexId, VertexId)]) -> Self {
        let n = present.len();
        let mut out_off = vec![0u32; n + 1];
        let mut in_off = vec![0u32; n + 1];
        for &(u, v) in edges {
            debug_assert!(present[u] && present[v]);
            out_off[u + 1] += 1;
            in_off[v + 1] += 1;
        }
        for i in 0..n {
            out_off[i + 1] += out_off[i];
            in_off[i + 1] += in_off[i];
        }
        let mut out_adj = vec![0u32; edges.len()];
        let mut in_adj = vec![0u32; edges.len()];
        let mut out_fill = out_off.clone();
        let mut in_fill = in_off.clone();
        for &(u, v) in edges {
            out_adj[out_fill[u] as usize] = v as u32;
            out_fill[u] += 1;
            in_adj[in_fill[v] as usize] = u as u32;
            in_fill[v] += 1;
        }
        Self {
            present,
            out_off,
            out_adj,
            in_off,
            in_adj,
        }
    }

    /// Snapshot of any graph view.
    pub fn snapshot<G: Digraph>(g: &G) -> Self {
        let present: Vec<bool> = (0..g.capacity()).map(|v| g.contains(v)).collect();
        let mut edges = Vec::new();
        for u in g.vertices() {
            edges.extend(g.successors(u).filter(|&w| g.contains(w)).map(|w| (u, w)));
        }
        Self::new(present, &edges)
    }

    /// Subgraph induced by the present vertices that satisfy `keep`.
    pub fn induced(&self, keep: impl Fn(VertexId) -> bool) -> Self {
        let present: Vec<bool> = (0..self.present.len())
            .map(|v| self.present[v] && keep(v))
            .collect();
        let mut edges = Vec::new();
        for u in 0..present.len() {
            if present[u] {
                edges.extend(self.successors(u).filter(|&w| present[w]).map(|w| (u, w)));
            }
        }
        Self::new(present, &edges)
    }

    pub fn edge_count(&self) -> usize {
        self.out_adj.len()
    }
}

impl Digraph for Csr {
    fn capacity(&self) -> usize {
        self.present.len()
    }
    #[inline]
    fn contains(&self, v: VertexId) -> bool {
        self.present[v]
    }
    fn successors(&self, v: VertexId) -> impl Iterator<Item = VertexId> + '_ {
        let (a, b) = (self.out_off[v] as usize, self.out_off[v + 1] as usize);
        self.out_adj[a..b].iter().map(|&w| w as usize)
    }
    fn predecessors(&self, v: VertexId) -> impl Iterator<Item = VertexId> + '_ {
        let (a, b) = (self.in_off[v] as usize, self.in_off[v + 1] as usize);
        self.in_adj[a..b].iter().map(|&w| w as usize)
    }
    fn out_degree(&self, v: VertexId) -> usize {
        (self.out_off[v + 1] - self.out_off[v]) as usize
    }
    fn in_degree(&self, v: VertexId) -> usize {
        (self.in_off[v + 1] - self.in_off[v]) as usize
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn succ(g: &impl Digraph, v: VertexId) -> Vec<VertexId> {
        g.successors(v).collect()
    }

    #[test]
    fn vertex_removal_updates_both_lists() {
        let mut g = Graph::from_edges(4, &[(0, 1), (1, 2), (2, 0), (1, 1), (3, 1), (1, 3)]);
        assert!(g.check_consistency());
        g.remove_vertex(1);
        assert!(g.check_consistency());
        assert_eq!(g.edge_count(), 1);
        assert_eq!(succ(&g, 2), vec![0]);
        assert_eq!(g.out_degree(0), 0);
        assert_eq!(g.out_degree(3), 0);
        assert_eq!(g.alive_count(), 3);
        assert!(!g.contains(1));
    }

    #[test]
    fn edge_removal_preserves_order() {
        let mut g = Graph::from_edges(3, &[(0, 2), (1, 2), (2, 2), (0, 1)]);
        let (e, _) = g.in_edges(2).nth(1).unwrap();
        g.remove_edge(e);
        let preds: Vec<_> = g.predecessors(2).collect();
        assert_eq!(preds, vec![0, 2]);
        assert!(g.check_consistency());
    }

    #[test]
    fn custom_in_order() {
        // in-list of 2 linked as edge 1 first, then edge 0
        let g = Graph::from_edges_with_in_order(3, &[(0, 2), (1, 2)], &[1, 0]);
        assert_eq!(g.predecessors(2).collect::<Vec<_>>(), vec![1, 0]);
        assert_eq!(succ(&g, 0), vec![2]);
    }

    #[test]
    fn reverse_is_involution() {
        let g = Graph::from_edges(3, &[(0, 1), (1, 2), (2, 0), (0, 2)]);
        let r = reverse_view(&g);
        assert_eq!(succ(&r, 1), vec![0]);
        let rr = reverse_view(r);
        for v in 0..3 {
            assert_eq!(succ(&rr, v), succ(&g, v));
            assert_eq!(rr.out_degree(v), g.out_degree(v));
        }
    }

    #[test]
    fn reverse_shares_alive_mask() {
        let mut g = Graph::from_edges(3, &[(0, 1), (1, 2)]);
        g.remove_vertex(1);
        let r = reverse_view(&g);
        assert!(!r.contains(1));
        assert_eq!(r.out_degree(2), 0);
    }

    #[test]
    fn csr_induced() {
        let g = Graph::from_edges(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]);
        let c = Csr::snapshot(&g).induced(|v| v != 2);
        assert_eq!(c.edge_count(), 2);
        assert_eq!(succ(&c, 1), Vec::<usize>::new());
        assert_eq!(c.predecessors(0).collect::<Vec<_>>(), vec![3]);
    }
}
