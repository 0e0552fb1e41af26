use proptest::prelude::*;

use streett_core::attractor::{attractor, is_closed};
use streett_core::buchi::{progress_dominions, solve_buchi};
use streett_core::generate::{generate_parity3, generate_streett, ParityParams, StreettParams};
use streett_core::oracles::{basic_streett, brute_force_parity3};
use streett_core::parity3::{
    absorbing_transform, ceil_log2, level_game_graph, solve_parity3, verify_parity3_strategies,
    Parity3Game,
};
use streett_core::scc::{reach_to, sccs};
use streett_core::streett::solve_streett;
use streett_core::streett_ds::{SetData, StreettPairs};
use streett_core::{Digraph, GameView, Graph, Player, VertexId, VertexSet};

fn parity_game(max_n: usize) -> impl Strategy<Value = Parity3Game> {
    (1..=max_n, any::<u64>(), 0.0..1.0f64).prop_map(|(n, seed, fill)| {
        let m = n + ((n * n - n) as f64 * fill * fill) as usize;
        generate_parity3(&ParityParams::new(n, m, seed)).unwrap()
    })
}

fn plain_graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n).prop_flat_map(|n| {
        proptest::collection::vec((0..n, 0..n), 0..3 * n)
            .prop_map(move |edges| Graph::from_edges(n, &edges))
    })
}

fn closure(g: &Graph) -> Vec<Vec<bool>> {
    let n = g.capacity();
    let mut r = vec![vec![false; n]; n];
    for (v, row) in r.iter_mut().enumerate() {
        row[v] = true;
        for w in g.successors(v) {
            row[w] = true;
        }
    }
    for k in 0..n {
        for i in 0..n {
            if r[i][k] {
                let via = r[k].clone();
                for (x, &y) in r[i].iter_mut().zip(&via) {
                    *x |= y;
                }
            }
        }
    }
    r
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn attractor_complement_is_a_trap(p3 in parity_game(20), bits in any::<u32>(), odd in any::<bool>()) {
        let g = &p3.game;
        let n = g.capacity();
        let player = if odd { Player::Odd } else { Player::Even };
        let target = VertexSet::from_iter_in(n, (0..n).filter(|v| bits >> (v % 32) & 1 == 1));
        let a = attractor(player, &target, g);
        prop_assert!(target.is_subset(&a.set));
        for v in g.vertices().filter(|&v| !a.set.contains(v)) {
            if g.owner(v) == player {
                prop_assert!(g.successors(v).all(|w| !a.set.contains(w)));
            } else {
                prop_assert!(g.successors(v).any(|w| !a.set.contains(w)));
            }
        }
        for (v, w) in a.strategy.iter() {
            prop_assert!(a.set.contains(v) && a.set.contains(w) && g.has_edge(v, w));
        }
        let rest = VertexSet::full(n).difference(&a.set);
        prop_assert!(is_closed(player, &rest, g));
    }

    #[test]
    fn sccs_match_mutual_reachability(g in plain_graph(14)) {
        let n = g.capacity();
        let r = closure(&g);
        let comps = sccs(&g, &VertexSet::full(n));
        let mut seen = vec![false; n];
        for c in &comps {
            let vs = c.to_sorted_vec();
            for &u in &vs {
                prop_assert!(!seen[u]);
                seen[u] = true;
                for (v, row) in r.iter().enumerate() {
                    prop_assert_eq!(c.contains(v), r[u][v] && row[u]);
                }
            }
        }
        prop_assert!(seen.into_iter().all(|b| b));
    }

    #[test]
    fn reach_to_is_backward_closure(g in plain_graph(14), bits in any::<u16>()) {
        let n = g.capacity();
        let target = VertexSet::from_iter_in(n, (0..n).filter(|v| bits >> (v % 16) & 1 == 1));
        let r = closure(&g);
        let got = reach_to(&target, &g);
        for (v, row) in r.iter().enumerate() {
            prop_assert_eq!(got.contains(v), target.iter().any(|t| row[t]));
        }
    }

    #[test]
    fn progress_with_full_bound_solves_buchi(p3 in parity_game(64)) {
        let (gp, buchi) = absorbing_transform(&p3);
        let n = gp.capacity();
        let full = progress_dominions(&gp, &buchi, n);
        let exact = solve_buchi(&gp, &buchi).unwrap();
        prop_assert_eq!(full.dominion.to_sorted_vec(), exact.even.to_sorted_vec());
    }

    #[test]
    fn progress_monotone_in_bound(p3 in parity_game(24)) {
        let (gp, buchi) = absorbing_transform(&p3);
        let mut prev = VertexSet::new(gp.capacity());
        for h in 1..=gp.capacity() {
            let d = progress_dominions(&gp, &buchi, h);
            prop_assert!(prev.is_subset(&d.dominion), "h={}", h);
            prop_assert!(d.lift_steps <= 4 * d.edges as u64 * (h as u64 + 1));
            // Odd may not leave, Even has a choice inside
            for v in d.dominion.iter() {
                if gp.owner(v) == Player::Odd {
                    prop_assert!(gp.successors(v).all(|w| d.dominion.contains(w)));
                } else {
                    let w = d.strategy.get(v).unwrap();
                    prop_assert!(d.dominion.contains(w) && gp.has_edge(v, w));
                }
            }
            prev = d.dominion;
        }
    }

    #[test]
    fn level_graphs_nest_and_stay_small(p3 in parity_game(40)) {
        let (gp, _) = absorbing_transform(&p3);
        let n = gp.capacity();
        let top = ceil_log2(n.max(2));
        let edges = |i: u32| -> Vec<(VertexId, VertexId)> {
            let a = level_game_graph(&gp, i).arena;
            let mut e: Vec<_> = a.vertices().flat_map(|u| a.successors(u).map(move |w| (u, w)).collect::<Vec<_>>()).collect();
            e.sort_unstable();
            e
        };
        let mut prev = edges(1);
        for i in 1..=top {
            let cur = edges(i);
            prop_assert!(cur.len() <= (1usize << (i + 1)) * n);
            prop_assert!(prev.iter().all(|e| cur.binary_search(e).is_ok()));
            let lvl = level_game_graph(&gp, i);
            for v in gp.vertices() {
                let blue = gp.owner(v) == Player::Odd && gp.out_degree(v) > 1 << i;
                prop_assert_eq!(lvl.blue.contains(v), blue);
            }
            prev = cur;
        }
        let mut all: Vec<_> = gp.vertices().flat_map(|u| gp.successors(u).map(move |w| (u, w)).collect::<Vec<_>>()).collect();
        all.sort_unstable();
        all.dedup();
        let mut last = edges(top);
        last.dedup();
        prop_assert_eq!(last, all);
    }

    #[test]
    fn parity3_matches_brute_force(p3 in parity_game(7)) {
        let sol = solve_parity3(&p3).unwrap();
        let (even, odd) = brute_force_parity3(&p3).unwrap();
        prop_assert_eq!(sol.even.to_sorted_vec(), even.to_sorted_vec());
        prop_assert_eq!(sol.odd.to_sorted_vec(), odd.to_sorted_vec());
        prop_assert!(verify_parity3_strategies(&p3, &sol).is_ok());
        prop_assert!(sol.stats.violations.is_empty(), "{:?}", sol.stats.violations);
    }

    #[test]
    fn streett_matches_basic(n in 1usize..40, k in 0usize..6, seed in any::<u64>(), fill in 0.5..4.0f64) {
        let inst = generate_streett(&StreettParams::new(n, (n as f64 * fill) as usize, k, seed)).unwrap();
        let fast = solve_streett(&inst.graph, &inst.pairs);
        let slow = basic_streett(&inst.graph, &inst.pairs);
        prop_assert_eq!(fast.winning.to_sorted_vec(), slow.winning.to_sorted_vec());
        prop_assert!(fast.stats.violations.is_empty());
    }

    #[test]
    fn set_data_tracks_bad_vertices(
        n in 1usize..16,
        raw in proptest::collection::vec((any::<u16>(), any::<u16>()), 0..5),
        order in any::<u64>(),
    ) {
        let pick = |bits: u16| (0..n).filter(|v| bits >> (v % 16) & 1 == 1).collect::<Vec<_>>();
        let pairs = StreettPairs::new(n, raw.iter().map(|&(l, u)| (pick(l), pick(u))).collect()).unwrap();
        let mut alive: Vec<VertexId> = (0..n).collect();
        let mut d = SetData::construct(alive.clone(), &pairs);
        let mut state = order;
        while !alive.is_empty() {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            let v = alive.remove((state >> 33) as usize % alive.len());
            d.remove(&[v], &pairs).unwrap();
            let mut bad: Vec<_> = d.bad().iter().copied().collect();
            bad.sort_unstable();
            let naive: Vec<_> = alive
                .iter()
                .copied()
                .filter(|&x| (0..pairs.k()).any(|j| pairs.in_l(x, j) && pairs.u(j).iter().all(|w| !alive.contains(w))))
                .collect();
            prop_assert_eq!(bad, naive);
        }
        prop_assert!(d.work() as usize <= 3 * (pairs.bits(0..n) + n));
        prop_assert!(d.remove(&[0], &pairs).is_err());
    }
}
