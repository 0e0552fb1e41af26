//! Streett pairs and the incremental bad-vertex structure `D(S)`.
//!
//! `D(S)` tracks, for a shrinking vertex set `S`, the vertices `v ∈ S ∩ L_j`
//! for which `U_j ∩ S` is empty. Only the pairs that actually meet `S` get an
//! entry, so building `D(S)` costs `O(bits(S) + |S|)` regardless of `k`.

use indexmap::{IndexMap, IndexSet};

use crate::error::{Error, Result};
use crate::VertexId;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Side {
    L,
    U,
}

/// `k` Streett pairs `(L_j, U_j)` over vertices `0..n`, with per-vertex
/// membership lists.
#[derive(Clone, Debug)]
pub struct StreettPairs {
    n: usize,
    l: Vec<Vec<VertexId>>,
    u: Vec<Vec<VertexId>>,
    membership: Vec<Vec<(u32, Side)>>,
}

impl StreettPairs {
    /// Pairs given as `(L_j, U_j)`; duplicates inside a set are dropped.
    pub fn new(n: usize, pairs: Vec<(Vec<VertexId>, Vec<VertexId>)>) -> Result<Self> {
        let mut membership = vec![Vec::new(); n];
        let mut l = Vec::with_capacity(pairs.len());
        let mut u = Vec::with_capacity(pairs.len());
        for (j, (lj, uj)) in pairs.into_iter().enumerate() {
            let lj = normalize(n, lj)?;
            let uj = normalize(n, uj)?;
            for &v in &lj {
                membership[v].push((j as u32, Side::L));
            }
            for &v in &uj {
                membership[v].push((j as u32, Side::U));
            }
            l.push(lj);
            u.push(uj);
        }
        Ok(Self { n, l, u, membership })
    }

    pub fn empty(n: usize) -> Self {
        Self {
            n,
            l: Vec::new(),
            u: Vec::new(),
            membership: vec![Vec::new(); n],
        }
    }

    pub fn k(&self) -> usize {
        self.l.len()
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn l(&self, j: usize) -> &[VertexId] {
        &self.l[j]
    }

    pub fn u(&self, j: usize) -> &[VertexId] {
        &self.u[j]
    }

    pub fn memberships(&self, v: VertexId) -> &[(u32, Side)] {
        &self.membership[v]
    }

    pub fn in_l(&self, v: VertexId, j: usize) -> bool {
        self.membership[v].contains(&(j as u32, Side::L))
    }

    pub fn in_u(&self, v: VertexId, j: usize) -> bool {
        self.membership[v].contains(&(j as u32, Side::U))
    }

    /// Total size `b = Σ_j |L_j| + |U_j|`.
    pub fn total_size(&self) -> usize {
        self.membership.iter().map(Vec::len).sum()
    }

    /// `bits(S) = Σ_j |S ∩ L_j| + |S ∩ U_j|`.
    pub fn bits(&self, s: impl IntoIterator<Item = VertexId>) -> usize {
        s.into_iter().map(|v| self.membership[v].len()).sum()
    }

    /// Whether `s` meets `U_j` for every `L_j` it meets.
    pub fn satisfied_by(&self, s: impl IntoIterator<Item = VertexId>) -> bool {
        let mut hit_l = IndexSet::new();
        let mut hit_u = IndexSet::new();
        for v in s {
            for &(j, side) in &self.membership[v] {
                match side {
                    Side::L => hit_l.insert(j),
                    Side::U => hit_u.insert(j),
                };
            }
        }
        hit_l.iter().all(|j| hit_u.contains(j))
    }
}

fn normalize(n: usize, mut set: Vec<VertexId>) -> Result<Vec<VertexId>> {
    if let Some(&v) = set.iter().find(|&&v| v >= n) {
        return Err(Error::VertexOutOfRange { vertex: v, n });
    }
    set.sort_unstable();
    set.dedup();
    Ok(set)
}

#[derive(Clone, Debug, Default)]
struct PairState {
    u_count: usize,
    l_members: IndexSet<VertexId>,
}

/// `D(S)`.
#[derive(Clone, Debug)]
pub struct SetData {
    s: IndexSet<VertexId>,
    pairs: IndexMap<u32, PairState>,
    bad: IndexSet<VertexId>,
    work: u64,
}

impl SetData {
    /// `construct(S)`.
    pub fn construct(s: impl IntoIterator<Item = VertexId>, pairs: &StreettPairs) -> Self {
        let mut d = SetData {
            s: IndexSet::new(),
            pairs: IndexMap::new(),
            bad: IndexSet::new(),
            work: 0,
        };
        for v in s {
            if !d.s.insert(v) {
                continue;
            }
            d.work += 1;
            for &(j, side) in pairs.memberships(v) {
                d.work += 1;
                let st = d.pairs.entry(j).or_default();
                match side {
                    Side::L => {
                        st.l_members.insert(v);
                    }
                    Side::U => st.u_count += 1,
                }
            }
        }
        for st in d.pairs.values() {
            if st.u_count == 0 {
                d.work += st.l_members.len() as u64;
                d.bad.extend(st.l_members.iter().copied());
            }
        }
        d
    }

    /// `remove(S, D(S), B)`: deletes `b` from `S` and updates the bad set.
    pub fn remove(&mut self, b: &[VertexId], pairs: &StreettPairs) -> Result<()> {
        if let Some(&v) = b.iter().find(|&&v| !self.s.contains(&v)) {
            return Err(Error::NotSubset(v));
        }
        let mut emptied = Vec::new();
        for &v in b {
            if !self.s.swap_remove(&v) {
                continue;
            }
            self.bad.swap_remove(&v);
            self.work += 1;
            for &(j, side) in pairs.memberships(v) {
                self.work += 1;
                let st = self.pairs.get_mut(&j).expect("pair entry of a member");
                match side {
                    Side::L => {
                        st.l_members.swap_remove(&v);
                    }
                    Side::U => {
                        st.u_count -= 1;
                        if st.u_count == 0 {
                            emptied.push(j);
                        }
                    }
                }
            }
        }
        for j in emptied {
            let st = &self.pairs[&j];
            self.work += st.l_members.len() as u64;
            self.bad.extend(st.l_members.iter().copied());
        }
        Ok(())
    }

    /// Splits `x` off: `self` becomes `D(S ∖ X)` and `D(X)` is returned.
    pub fn split(&mut self, x: &[VertexId], pairs: &StreettPairs) -> Result<SetData> {
        self.remove(x, pairs)?;
        Ok(SetData::construct(x.iter().copied(), pairs))
    }

    /// `bad(D(S))`.
    pub fn bad(&self) -> &IndexSet<VertexId> {
        &self.bad
    }

    pub fn vertices(&self) -> &IndexSet<VertexId> {
        &self.s
    }

    pub fn contains(&self, v: VertexId) -> bool {
        self.s.contains(&v)
    }

    pub fn len(&self) -> usize {
        self.s.len()
    }

    pub fn is_empty(&self) -> bool {
        self.s.is_empty()
    }

    /// `|S ∩ U_j|`; zero for pairs that never met `S`.
    pub fn u_count(&self, j: usize) -> usize {
        self.pairs.get(&(j as u32)).map_or(0, |st| st.u_count)
    }

    /// Elementary operations performed so far.
    pub fn work(&self) -> u64 {
        self.work
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    // L1={1},U1={2}; L2={3},U2={3} with ids shifted to 0-based
    fn example() -> StreettPairs {
        StreettPairs::new(3, vec![(vec![0], vec![1]), (vec![2], vec![2])]).unwrap()
    }

    fn sorted_bad(d: &SetData) -> Vec<VertexId> {
        let mut b: Vec<_> = d.bad().iter().copied().collect();
        b.sort();
        b
    }

    #[test]
    fn construct_examples() {
        let p = example();
        let d = SetData::construct([], &p);
        assert!(d.bad().is_empty());
        assert_eq!(d.u_count(0), 0);

        let d = SetData::construct([0, 1, 2], &p);
        assert_eq!((d.u_count(0), d.u_count(1)), (1, 1));
        assert!(d.bad().is_empty());

        let d = SetData::construct([0, 2], &p);
        assert_eq!((d.u_count(0), d.u_count(1)), (0, 1));
        assert_eq!(sorted_bad(&d), vec![0]);
    }

    #[test]
    fn remove_examples() {
        let p = example();
        let mut d = SetData::construct([0, 1, 2], &p);
        d.remove(&[], &p).unwrap();
        assert!(d.bad().is_empty());
        d.remove(&[1], &p).unwrap();
        assert_eq!(sorted_bad(&d), vec![0]);
        assert_eq!(d.u_count(0), 0);
        d.remove(&[0], &p).unwrap();
        assert!(d.bad().is_empty());
        assert_eq!(d.vertices().iter().copied().collect::<Vec<_>>(), vec![2]);
        assert_eq!(d.remove(&[0], &p), Err(Error::NotSubset(0)));
    }

    #[test]
    fn bits_examples() {
        let p = example();
        assert_eq!(p.bits([]), 0);
        assert_eq!(p.bits([0, 1, 2]), 4);
        assert_eq!(p.bits([2]), 2);
        assert_eq!(p.total_size(), 4);
    }

    #[test]
    fn vertex_in_both_sides_of_emptied_pair() {
        // v is in L_0 and U_0, w in U_0; removing w keeps v good, removing v
        // as well must not leave it in the bad set
        let p = StreettPairs::new(3, vec![(vec![0], vec![0, 1])]).unwrap();
        let mut d = SetData::construct([0, 1, 2], &p);
        d.remove(&[1], &p).unwrap();
        assert!(d.bad().is_empty());
        d.remove(&[0], &p).unwrap();
        assert!(d.bad().is_empty());
    }

    #[test]
    fn empty_u_makes_l_bad() {
        let p = StreettPairs::new(2, vec![(vec![0, 1], vec![])]).unwrap();
        let d = SetData::construct([0, 1], &p);
        assert_eq!(sorted_bad(&d), vec![0, 1]);
    }

    #[test]
    fn split_partitions() {
        let p = example();
        let mut d = SetData::construct([0, 1, 2], &p);
        let x = d.split(&[1], &p).unwrap();
        assert_eq!(sorted_bad(&d), vec![0]);
        assert!(x.bad().is_empty());
        assert_eq!(x.len(), 1);
    }
}
