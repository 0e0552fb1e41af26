//! Seeded random instances and the certificate-size family.
//!
//! All randomness comes from a `ChaCha8Rng` seeded with the caller's `u64`,
//! so an instance is a pure function of its parameters.

use std::collections::HashSet;

use rand::seq::{index, SliceRandom};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::game::{GameGraph, Player};
use crate::graph::Graph;
use crate::parity3::Parity3Game;
use crate::streett::StreettInstance;
use crate::streett_ds::StreettPairs;
use crate::{VertexId, VertexSet};

#[derive(Clone, Debug)]
pub struct ParityParams {
    pub n: usize,
    pub m: usize,
    pub seed: u64,
    /// Probability that a vertex belongs to Odd.
    pub odd_owner: f64,
    /// Relative weights of priorities -1, 0 and 1.
    pub priority_weights: [f64; 3],
}

impl ParityParams {
    pub fn new(n: usize, m: usize, seed: u64) -> Self {
        Self {
            n,
            m,
            seed,
            odd_owner: 0.5,
            priority_weights: [1.0, 1.0, 1.0],
        }
    }
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// `extra` distinct pairs from `[0,n)²` avoiding `taken`, which is extended.
fn fresh_pairs(
    rng: &mut ChaCha8Rng,
    n: usize,
    extra: usize,
    taken: &mut HashSet<(VertexId, VertexId)>,
) -> Vec<(VertexId, VertexId)> {
    let free = n * n - taken.len();
    assert!(extra <= free);
    let mut out = Vec::with_capacity(extra);
    if 2 * extra <= free {
        while out.len() < extra {
            let e = (rng.gen_range(0..n), rng.gen_range(0..n));
            if taken.insert(e) {
                out.push(e);
            }
        }
    } else {
        let pool: Vec<_> = (0..n)
            .flat_map(|u| (0..n).map(move |v| (u, v)))
            .filter(|e| !taken.contains(e))
            .collect();
        for i in index::sample(rng, pool.len(), extra) {
            taken.insert(pool[i]);
            out.push(pool[i]);
        }
    }
    out
}

/// Random simple game graph with exactly `m` edges and no dead ends.
pub fn generate_parity3(p: &ParityParams) -> Result<Parity3Game> {
    let ParityParams { n, m, .. } = *p;
    if n == 0 || m < n || m > n * n {
        return Err(Error::InvalidParameters(format!(
            "need 1 <= n <= m <= n^2, got n={n}, m={m}"
        )));
    }
    let total: f64 = p.priority_weights.iter().sum();
    if total.is_nan() || total <= 0.0 || p.priority_weights.iter().any(|&w| w < 0.0) {
        return Err(Error::InvalidParameters("priority weights".into()));
    }
    let mut rng = rng(p.seed);
    let owner: Vec<Player> = (0..n)
        .map(|_| if rng.gen_bool(p.odd_owner.clamp(0.0, 1.0)) { Player::Odd } else { Player::Even })
        .collect();
    let prio: Vec<i8> = (0..n)
        .map(|_| {
            let x = rng.gen::<f64>() * total;
            if x < p.priority_weights[0] {
                -1
            } else if x < p.priority_weights[0] + p.priority_weights[1] {
                0
            } else {
                1
            }
        })
        .collect();
    let mut taken = HashSet::new();
    let mut edges: Vec<_> = (0..n).map(|u| (u, rng.gen_range(0..n))).collect();
    taken.extend(edges.iter().copied());
    edges.extend(fresh_pairs(&mut rng, n, m - n, &mut taken));
    edges.sort_unstable();
    Parity3Game::new(GameGraph::new(owner, &edges)?, prio)
}

#[derive(Clone, Debug)]
pub struct StreettParams {
    pub n: usize,
    pub m: usize,
    pub k: usize,
    pub seed: u64,
    /// Probability that a vertex is put into a given `L_j`.
    pub l_density: f64,
    /// Probability that a vertex is put into a given `U_j`.
    pub u_density: f64,
    /// Adds a Hamiltonian cycle so the graph is strongly connected.
    pub strongly_connected: bool,
}

impl StreettParams {
    pub fn new(n: usize, m: usize, k: usize, seed: u64) -> Self {
        Self {
            n,
            m,
            k,
            seed,
            l_density: 0.2,
            u_density: 0.1,
            strongly_connected: false,
        }
    }
}

/// Random simple graph with `min(m, n²)` edges and `k` random pairs.
pub fn generate_streett(p: &StreettParams) -> Result<StreettInstance> {
    let n = p.n;
    if n == 0 {
        return Err(Error::InvalidParameters("n must be positive".into()));
    }
    let mut m = p.m.min(n * n);
    let mut rng = rng(p.seed);
    let mut taken = HashSet::new();
    let mut edges = Vec::new();
    if p.strongly_connected {
        let mut order: Vec<VertexId> = (0..n).collect();
        order.shuffle(&mut rng);
        for i in 0..n {
            let e = (order[i], order[(i + 1) % n]);
            taken.insert(e);
            edges.push(e);
        }
        m = m.max(n);
    }
    edges.extend(fresh_pairs(&mut rng, n, m - edges.len(), &mut taken));
    edges.sort_unstable();
    let pairs = (0..p.k)
        .map(|_| {
            let pick = |rng: &mut ChaCha8Rng, d: f64| -> Vec<VertexId> {
                (0..n).filter(|_| rng.gen_bool(d.clamp(0.0, 1.0))).collect()
            };
            let l = pick(&mut rng, p.l_density);
            let u = pick(&mut rng, p.u_density);
            (l, u)
        })
        .collect();
    StreettInstance::new(Graph::from_edges(n, &edges), StreettPairs::new(n, pairs)?)
}

/// Path `0 → 1 → … → path_len` from `s = 0` to `t = path_len`, plus fan
/// vertices `v_j = path_len + 1 + j` with `t → v_j → s`, and pairs
/// `L_j = {s}`, `U_j = {v_j}`. Every certificate must walk the path once per
/// fan vertex.
pub fn figure_nk(path_len: usize, fan: usize) -> StreettInstance {
    let n = path_len + 1 + fan;
    let mut edges: Vec<_> = (0..path_len).map(|i| (i, i + 1)).collect();
    for j in 0..fan {
        let v = path_len + 1 + j;
        edges.push((path_len, v));
        edges.push((v, 0));
    }
    let pairs = (0..fan).map(|j| (vec![0], vec![path_len + 1 + j])).collect();
    StreettInstance::new(
        Graph::from_edges(n, &edges),
        StreettPairs::new(n, pairs).expect("ids in range"),
    )
    .expect("sizes agree")
}

/// A random game of `n` vertices whose first `h` vertices form an Even
/// dominion `D` of the Büchi game on the absorbing graph with `D` equal to
/// its own Even attractor.
///
/// `D` is a cycle through the priority-0 vertex 0; its Odd vertices only move
/// forward inside `D` or back to 0, its Even vertices may also leave. Outside Even vertices
/// never enter `D`, outside Odd vertices always keep an edge outside it.
pub fn plant_dominion(n: usize, h: usize, extra_edges: usize, seed: u64) -> Result<(Parity3Game, VertexSet)> {
    if h == 0 || h >= n {
        return Err(Error::InvalidParameters(format!("need 0 < h < n, got h={h}, n={n}")));
    }
    let mut rng = rng(seed);
    let owner: Vec<Player> = (0..n)
        .map(|_| if rng.gen_bool(0.5) { Player::Odd } else { Player::Even })
        .collect();
    let mut prio: Vec<i8> = (0..n).map(|_| rng.gen_range(-1..=1)).collect();
    prio[0] = 0;
    for p in prio.iter_mut().take(h).skip(1) {
        *p = rng.gen_range(0..=1);
    }
    let mut taken: HashSet<(VertexId, VertexId)> = HashSet::new();
    for u in 0..h {
        taken.insert((u, (u + 1) % h));
    }
    // every outside vertex gets one outside successor
    for u in h..n {
        taken.insert((u, rng.gen_range(h..n)));
    }
    for _ in 0..extra_edges {
        let u = rng.gen_range(0..n);
        let v = rng.gen_range(0..n);
        let inside = |x: usize| x < h;
        let allowed = match (inside(u), owner[u]) {
            // forward or back to the Büchi vertex: every cycle passes 0
            (true, Player::Odd) => inside(v) && (v > u || v == 0),
            (true, Player::Even) => true,
            (false, Player::Even) => !inside(v),
            (false, Player::Odd) => true,
        };
        if allowed {
            taken.insert((u, v));
        }
    }
    let mut edges: Vec<_> = taken.into_iter().collect();
    edges.sort_unstable();
    let game = Parity3Game::new(GameGraph::new(owner, &edges)?, prio)?;
    Ok((game, VertexSet::from_iter_in(n, 0..h)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Digraph;

    #[test]
    fn parity_deterministic() {
        let a = generate_parity3(&ParityParams::new(4, 4, 7)).unwrap();
        let b = generate_parity3(&ParityParams::new(4, 4, 7)).unwrap();
        assert_eq!(crate::format::emit_parity(&a), crate::format::emit_parity(&b));
        assert_eq!(a.edge_count(), 4);
    }

    #[test]
    fn parity_dense_and_bad_params() {
        let g = generate_parity3(&ParityParams::new(6, 36, 1)).unwrap();
        assert_eq!(g.edge_count(), 36);
        assert!(generate_parity3(&ParityParams::new(4, 3, 1)).is_err());
        assert!(generate_parity3(&ParityParams::new(4, 17, 1)).is_err());
    }

    #[test]
    fn streett_caps_edges() {
        let inst = generate_streett(&StreettParams::new(5, 100, 2, 3)).unwrap();
        let mut e = inst.graph.edge_list();
        assert_eq!(e.len(), 25);
        e.sort();
        e.dedup();
        assert_eq!(e.len(), 25);
    }

    #[test]
    fn streett_backbone() {
        let mut p = StreettParams::new(30, 10, 1, 5);
        p.strongly_connected = true;
        let inst = generate_streett(&p).unwrap();
        let comps = crate::scc::sccs(&inst.graph, &VertexSet::full(30));
        assert_eq!(comps.len(), 1);
    }

    #[test]
    fn figure_shape() {
        let inst = figure_nk(3, 2);
        assert_eq!(inst.graph.capacity(), 6);
        assert!(inst.graph.has_edge(3, 4) && inst.graph.has_edge(5, 0));
        assert_eq!(inst.pairs.u(1), &[5]);
    }
}
