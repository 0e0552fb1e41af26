//! Two-player game graphs and memoryless strategies.

use std::fmt;

use crate::error::{Error, Result};
use crate::graph::{Csr, Digraph, Graph};
use crate::{VertexId, VertexSet};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Player {
    Even,
    Odd,
}

impl Player {
    pub fn opponent(self) -> Player {
        match self {
            Player::Even => Player::Odd,
            Player::Odd => Player::Even,
        }
    }
}

impl fmt::Display for Player {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Player::Even => f.write_str("Even"),
            Player::Odd => f.write_str("Odd"),
        }
    }
}

/// A graph whose vertices are owned by one of the two players.
pub trait GameView: Digraph {
    fn owner(&self, v: VertexId) -> Player;
}

impl<G: GameView> GameView for &G {
    fn owner(&self, v: VertexId) -> Player {
        (**self).owner(v)
    }
}

/// Mutable game graph: a [`Graph`] plus an ownership tag per vertex.
#[derive(Clone, Debug)]
pub struct GameGraph {
    graph: Graph,
    owner: Vec<Player>,
}

impl GameGraph {
    /// Builds a game graph and rejects vertices without successors.
    pub fn new(owner: Vec<Player>, edges: &[(VertexId, VertexId)]) -> Result<Self> {
        let game = Self::new_unchecked(owner, edges)?;
        game.check_total()?;
        Ok(game)
    }

    /// Like [`GameGraph::new`] but allows dead ends.
    pub fn new_unchecked(owner: Vec<Player>, edges: &[(VertexId, VertexId)]) -> Result<Self> {
        let n = owner.len();
        if let Some(&(u, v)) = edges.iter().find(|&&(u, v)| u >= n || v >= n) {
            return Err(Error::VertexOutOfRange { vertex: u.max(v), n });
        }
        Ok(Self {
            graph: Graph::from_edges(n, edges),
            owner,
        })
    }

    pub fn from_graph(graph: Graph, owner: Vec<Player>) -> Self {
        assert_eq!(graph.capacity(), owner.len());
        Self { graph, owner }
    }

    /// Every alive vertex must keep at least one alive successor.
    pub fn check_total(&self) -> Result<()> {
        match self.vertices().find(|&v| self.out_degree(v) == 0) {
            Some(v) => Err(Error::DeadEnd(v)),
            None => Ok(()),
        }
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn graph_mut(&mut self) -> &mut Graph {
        &mut self.graph
    }

    pub fn owners(&self) -> &[Player] {
        &self.owner
    }

    pub fn remove_vertex(&mut self, v: VertexId) {
        self.graph.remove_vertex(v);
    }

    pub fn remove_set(&mut self, set: &VertexSet) {
        self.graph.remove_vertices(set.iter());
    }

    pub fn alive_count(&self) -> usize {
        self.graph.alive_count()
    }

    pub fn edge_count(&self) -> usize {
        self.graph.edge_count()
    }

    pub fn alive_set(&self) -> VertexSet {
        self.graph.alive_set()
    }
}

impl Digraph for GameGraph {
    fn capacity(&self) -> usize {
        self.graph.capacity()
    }
    #[inline]
    fn contains(&self, v: VertexId) -> bool {
        self.graph.contains(v)
    }
    fn successors(&self, v: VertexId) -> impl Iterator<Item = VertexId> + '_ {
        self.graph.successors(v)
    }
    fn predecessors(&self, v: VertexId) -> impl Iterator<Item = VertexId> + '_ {
        self.graph.predecessors(v)
    }
    fn out_degree(&self, v: VertexId) -> usize {
        self.graph.out_degree(v)
    }
    fn in_degree(&self, v: VertexId) -> usize {
        self.graph.in_degree(v)
    }
}

impl GameView for GameGraph {
    #[inline]
    fn owner(&self, v: VertexId) -> Player {
        self.owner[v]
    }
}

/// Frozen CSR game arena; cheap to restrict to a vertex subset.
#[derive(Clone, Debug)]
pub struct GameArena {
    csr: Csr,
    owner: Vec<Player>,
}

impl GameArena {
    pub fn new(csr: Csr, owner: Vec<Player>) -> Self {
        assert_eq!(csr.capacity(), owner.len());
        Self { csr, owner }
    }

    pub fn snapshot<G: GameView>(g: &G) -> Self {
        let owner = (0..g.capacity()).map(|v| g.owner(v)).collect();
        Self::new(Csr::snapshot(g), owner)
    }

    pub fn induced(&self, keep: impl Fn(VertexId) -> bool) -> Self {
        Self {
            csr: self.csr.induced(keep),
            owner: self.owner.clone(),
        }
    }

    pub fn edge_count(&self) -> usize {
        self.csr.edge_count()
    }
}

impl Digraph for GameArena {
    fn capacity(&self) -> usize {
        self.csr.capacity()
    }
    #[inline]
    fn contains(&self, v: VertexId) -> bool {
        self.csr.contains(v)
    }
    fn successors(&self, v: VertexId) -> impl Iterator<Item = VertexId> + '_ {
        self.csr.successors(v)
    }
    fn predecessors(&self, v: VertexId) -> impl Iterator<Item = VertexId> + '_ {
        self.csr.predecessors(v)
    }
    fn out_degree(&self, v: VertexId) -> usize {
        self.csr.out_degree(v)
    }
    fn in_degree(&self, v: VertexId) -> usize {
        self.csr.in_degree(v)
    }
}

impl GameView for GameArena {
    #[inline]
    fn owner(&self, v: VertexId) -> Player {
        self.owner[v]
    }
}

const UNSET: u32 = u32::MAX;

/// Memoryless strategy: a partial map from vertices to chosen successors.
#[derive(Clone, PartialEq, Eq)]
pub struct Strategy {
    choice: Vec<u32>,
    len: usize,
}

impl Strategy {
    pub fn new(capacity: usize) -> Self {
        Self {
            choice: vec![UNSET; capacity],
            len: 0,
        }
    }

    pub fn capacity(&self) -> usize {
        self.choice.len()
    }

    pub fn get(&self, v: VertexId) -> Option<VertexId> {
        match self.choice.get(v) {
            Some(&w) if w != UNSET => Some(w as usize),
            _ => None,
        }
    }

    pub fn set(&mut self, v: VertexId, w: VertexId) {
        if self.choice[v] == UNSET {
            self.len += 1;
        }
        self.choice[v] = w as u32;
    }

    /// Records `v ↦ w` only if `v` has no choice yet.
    pub fn set_if_absent(&mut self, v: VertexId, w: VertexId) -> bool {
        if self.choice[v] != UNSET {
            return false;
        }
        self.set(v, w);
        true
    }

    pub fn unset(&mut self, v: VertexId) {
        if self.choice[v] != UNSET {
            self.choice[v] = UNSET;
            self.len -= 1;
        }
    }

    /// Copies the choices of `other` for vertices that have none yet.
    pub fn merge_absent(&mut self, other: &Strategy) {
        for (v, w) in other.iter() {
            self.set_if_absent(v, w);
        }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    /// Choices in ascending vertex order.
    pub fn iter(&self) -> impl Iterator<Item = (VertexId, VertexId)> + '_ {
        self.choice
            .iter()
            .enumerate()
            .filter(|(_, &w)| w != UNSET)
            .map(|(v, &w)| (v, w as usize))
    }
}

impl fmt::Debug for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map().entries(self.iter()).finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dead_end_rejected() {
        let err = GameGraph::new(vec![Player::Even, Player::Odd], &[(0, 1)]).unwrap_err();
        assert!(matches!(err, Error::DeadEnd(1)));
    }

    #[test]
    fn strategy_first_write_wins() {
        let mut s = Strategy::new(3);
        assert!(s.set_if_absent(0, 1));
        assert!(!s.set_if_absent(0, 2));
        assert_eq!(s.get(0), Some(1));
        assert_eq!(s.get(2), None);
        assert_eq!(s.len(), 1);
        s.unset(0);
        assert!(s.is_empty());
    }
}
