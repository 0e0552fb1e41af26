use std::fmt;

use crate::VertexId;

const ABSENT: u32 = u32::MAX;

/// A set of vertex ids drawn from a fixed universe `[0, capacity)`.
///
/// Membership, insertion and removal are O(1); iteration visits each member
/// exactly once, in insertion order modulo swaps caused by removals.
#[derive(Clone, Default)]
pub struct VertexSet {
    pos: Vec<u32>,
    members: Vec<VertexId>,
}

impl VertexSet {
    pub fn new(capacity: usize) -> Self {
        Self {
            pos: vec![ABSENT; capacity],
            members: Vec::new(),
        }
    }

    /// The set `{0, …, capacity-1}`.
    pub fn full(capacity: usize) -> Self {
        Self::from_iter_in(capacity, 0..capacity)
    }

    pub fn from_iter_in(capacity: usize, iter: impl IntoIterator<Item = VertexId>) -> Self {
        let mut set = Self::new(capacity);
        for v in iter {
            set.insert(v);
        }
        set
    }

    pub fn capacity(&self) -> usize {
        self.pos.len()
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    #[inline]
    pub fn contains(&self, v: VertexId) -> bool {
        v < self.pos.len() && self.pos[v] != ABSENT
    }

    /// Returns `true` if `v` was not already present.
    pub fn insert(&mut self, v: VertexId) -> bool {
        if self.pos[v] != ABSENT {
            return false;
        }
        self.pos[v] = self.members.len() as u32;
        self.members.push(v);
        true
    }

    /// Returns `true` if `v` was present.
    pub fn remove(&mut self, v: VertexId) -> bool {
        if !self.contains(v) {
            return false;
        }
        let at = self.pos[v] as usize;
        self.members.swap_remove(at);
        if let Some(&moved) = self.members.get(at) {
            self.pos[moved] = at as u32;
        }
        self.pos[v] = ABSENT;
        true
    }

    pub fn clear(&mut self) {
        for &v in &self.members {
            self.pos[v] = ABSENT;
        }
        self.members.clear();
    }

    pub fn iter(&self) -> impl ExactSizeIterator<Item = VertexId> + '_ {
        self.members.iter().copied()
    }

    pub fn as_slice(&self) -> &[VertexId] {
        &self.members
    }

    pub fn to_sorted_vec(&self) -> Vec<VertexId> {
        let mut v = self.members.clone();
        v.sort_unstable();
        v
    }

    pub fn min(&self) -> Option<VertexId> {
        self.members.iter().copied().min()
    }

    pub fn extend(&mut self, iter: impl IntoIterator<Item = VertexId>) {
        for v in iter {
            self.insert(v);
        }
    }

    pub fn union_with(&mut self, other: &VertexSet) {
        self.extend(other.iter());
    }

    pub fn subtract(&mut self, other: &VertexSet) {
        if other.len() < self.len() {
            for v in other.iter() {
                self.remove(v);
            }
        } else {
            let keep: Vec<_> = self.iter().filter(|&v| !other.contains(v)).collect();
            self.clear();
            self.extend(keep);
        }
    }

    pub fn is_subset(&self, other: &VertexSet) -> bool {
        self.iter().all(|v| other.contains(v))
    }

    pub fn is_disjoint(&self, other: &VertexSet) -> bool {
        let (small, large) = if self.len() <= other.len() {
            (self, other)
        } else {
            (other, self)
        };
        small.iter().all(|v| !large.contains(v))
    }

    pub fn difference(&self, other: &VertexSet) -> VertexSet {
        VertexSet::from_iter_in(self.capacity(), self.iter().filter(|&v| !other.contains(v)))
    }

    pub fn intersection(&self, other: &VertexSet) -> VertexSet {
        VertexSet::from_iter_in(self.capacity(), self.iter().filter(|&v| other.contains(v)))
    }
}

impl PartialEq for VertexSet {
    fn eq(&self, other: &Self) -> bool {
        self.len() == other.len() && self.is_subset(other)
    }
}

impl Eq for VertexSet {}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.to_sorted_vec()).finish()
    }
}

impl<'a> IntoIterator for &'a VertexSet {
    type Item = VertexId;
    type IntoIter = std::iter::Copied<std::slice::Iter<'a, VertexId>>;

    fn into_iter(self) -> Self::IntoIter {
        self.members.iter().copied()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn insert_remove_keeps_positions() {
        let mut s = VertexSet::new(8);
        for v in [3, 1, 7, 5] {
            assert!(s.insert(v));
        }
        assert!(!s.insert(3));
        assert!(s.remove(1));
        assert!(!s.remove(1));
        assert_eq!(s.to_sorted_vec(), vec![3, 5, 7]);
        assert!(s.remove(5));
        assert!(s.contains(7) && s.contains(3) && !s.contains(5));
        assert_eq!(s.len(), 2);
    }

    #[test]
    fn equality_ignores_order() {
        let a = VertexSet::from_iter_in(5, [0, 2, 4]);
        let b = VertexSet::from_iter_in(5, [4, 0, 2]);
        assert_eq!(a, b);
        assert_ne!(a, VertexSet::from_iter_in(5, [0, 2]));
    }

    #[test]
    fn subtract_both_strategies() {
        let mut a = VertexSet::full(6);
        a.subtract(&VertexSet::from_iter_in(6, [1, 2]));
        assert_eq!(a.to_sorted_vec(), vec![0, 3, 4, 5]);
        let mut b = VertexSet::from_iter_in(6, [0, 1]);
        b.subtract(&VertexSet::full(6));
        assert!(b.is_empty());
    }
}
