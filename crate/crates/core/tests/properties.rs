// Licensed under the Apache License, Version 2.0 (the "License"); you may
// not use this file except in compliance with the License. You may obtain
// a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS, WITHOUT
// WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied. See the
// License for the specific language governing permissions and limitations
// under the License.


//! Property tests against independent brute-force oracles.

use proptest::prelude::*;

use uppertail::counting::{self, PathSignature};
use uppertail::graph::generators::{complete, cycle};
use uppertail::graph::{delta_core, Graph, PatternGraph, SparsityContext};
use uppertail::independence::{fractional_independence, independence_polynomial};
use uppertail::ratefn;
use uppertail::structures::{peel_edges, PeelOptions};

/// Graph on `n` vertices from a bit per unordered pair.
fn graph_from_bits(n: usize, bits: &[bool]) -> Graph {
    let mut edges = Vec::new();
    let mut k = 0;
    for u in 0..n {
        for v in u + 1..n {
            if bits[k] {
                edges.push((u, v));
            }
            k += 1;
        }
    }
    Graph::from_edges(n, edges).unwrap()
}

fn arb_graph(lo: usize, hi: usize) -> impl Strategy<Value = Graph> {
    (lo..=hi).prop_flat_map(|n| {
        proptest::collection::vec(any::<bool>(), n * (n - 1) / 2).prop_map(move |bits| graph_from_bits(n, &bits))
    })
}

/// Graphs without isolated vertices, usable as patterns.
fn arb_pattern(lo: usize, hi: usize) -> impl Strategy<Value = Graph> {
    arb_graph(lo, hi).prop_filter("no isolated vertices", |g| g.edge_count() > 0 && !g.has_isolated_vertices())
}

/// Every injective map `V(h) → V(g)`, checked edge by edge.
fn brute_count(h: &Graph, g: &Graph) -> u128 {
    let (k, n) = (h.vertex_count(), g.vertex_count());
    let mut phi = vec![0usize; k];
    fn rec(i: usize, k: usize, n: usize, phi: &mut Vec<usize>, h: &Graph, g: &Graph) -> u128 {
        if i == k {
            return h.edges().iter().all(|&(a, b)| g.has_edge(phi[a], phi[b])) as u128;
        }
        let mut total = 0;
        for x in 0..n {
            if !phi[..i].contains(&x) {
                phi[i] = x;
                total += rec(i + 1, k, n, phi, h, g);
            }
        }
        total
    }
    rec(0, k, n, &mut phi, h, g)
}

fn trace_power(g: &Graph, k: u32) -> i128 {
    let a: Vec<Vec<i128>> = g.adjacency_matrix().into_iter().map(|r| r.into_iter().map(i128::from).collect()).collect();
    let n = a.len();
    let mut m = a.clone();
    for _ in 1..k {
        m = (0..n)
            .map(|i| (0..n).map(|j| (0..n).map(|l| m[i][l] * a[l][j]).sum()).collect())
            .collect();
    }
    (0..n).map(|i| m[i][i]).sum()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn count_matches_brute_force(h in arb_pattern(2, 5), g in arb_graph(1, 7)) {
        prop_assert_eq!(counting::count_labelled(&h, &g).unwrap(), brute_count(&h, &g));
    }

    #[test]
    fn closed_walk_identities(g in arb_graph(1, 8)) {
        // Labelled triangles are the closed 3-walks; labelled 4-cycles are the
        // closed 4-walks minus the degenerate ones.
        let tri = counting::count_labelled(&complete(3).unwrap(), &g).unwrap() as i128;
        prop_assert_eq!(tri, trace_power(&g, 3));
        let sq = counting::count_labelled(&cycle(4).unwrap(), &g).unwrap() as i128;
        let d2: i128 = g.degrees().iter().map(|&d| (d * d) as i128).sum();
        prop_assert_eq!(sq, trace_power(&g, 4) - 2 * d2 + 2 * g.edge_count() as i128);
        for k in 3..=5u32 {
            prop_assert_eq!(counting::count_hom(&cycle(k as usize).unwrap(), &g) as i128, trace_power(&g, k));
        }
    }

    #[test]
    fn per_edge_counts_sum_to_edges_times_copies(h in arb_pattern(2, 4), g in arb_graph(2, 7)) {
        let total = counting::count_labelled(&h, &g).unwrap();
        let per: u128 = counting::per_edge_counts(&h, &g).unwrap().into_iter().sum();
        prop_assert_eq!(per, h.edge_count() as u128 * total);
    }

    #[test]
    fn counts_are_monotone_under_edge_addition(h in arb_pattern(2, 4), g in arb_graph(2, 7), extra in proptest::collection::vec((0usize..7, 0usize..7), 1..4)) {
        let n = g.vertex_count();
        let add: Vec<_> = extra.into_iter().map(|(a, b)| (a % n, b % n)).filter(|(a, b)| a != b).collect();
        let bigger = g.with_edges(&add).unwrap();
        prop_assert!(counting::count_labelled(&h, &bigger).unwrap() >= counting::count_labelled(&h, &g).unwrap());
    }

    #[test]
    fn path_signatures_partition_paths(g in arb_graph(3, 9), len in 1usize..5, d in 1usize..4, v1 in 0usize..9, v2 in 0usize..9) {
        let n = g.vertex_count();
        let (v1, v2) = (v1 % n, v2 % n);
        let split: u128 = PathSignature::all(len).map(|s| counting::count_paths_signed(&g, &s, v1, v2, d).unwrap()).sum();
        prop_assert_eq!(split, counting::count_paths(&g, len, v1, v2).unwrap());
    }

    #[test]
    fn n11_matches_edge_deletion(h in arb_pattern(3, 4), g in arb_graph(3, 7), d in 1usize..5) {
        let c = counting::count_n11(&h, &g, d).unwrap();
        let low = |x: usize| g.degree(x) <= d;
        let e11: Vec<_> = g.edges().iter().copied().filter(|&(a, b)| low(a) && low(b)).collect();
        let high_only = g.filter_edges(|_, (a, b)| !(low(a) && low(b)));
        let total = counting::count_labelled(&h, &g).unwrap();
        prop_assert_eq!(c.n11, total - counting::count_labelled(&h, &high_only).unwrap());
        let only_low = Graph::from_edges(g.vertex_count(), e11).unwrap();
        prop_assert_eq!(c.tilde_n11, counting::count_labelled(&h, &only_low).unwrap());
        prop_assert_eq!(c.bar_n11, c.n11 - c.tilde_n11);
    }

    #[test]
    fn independence_polynomial_counts_independent_sets(g in arb_graph(1, 10)) {
        let poly = independence_polynomial(&g).unwrap();
        let n = g.vertex_count();
        let mut expect = vec![0u64; n + 1];
        for mask in 0u32..1 << n {
            if g.edges().iter().all(|&(a, b)| mask >> a & 1 == 0 || mask >> b & 1 == 0) {
                expect[mask.count_ones() as usize] += 1;
            }
        }
        while expect.len() > 1 && *expect.last().unwrap() == 0 {
            expect.pop();
        }
        prop_assert_eq!(poly.coefficients(), &expect[..]);
    }

    #[test]
    fn fractional_independence_matches_half_integral_search(g in arb_pattern(2, 8)) {
        // The optimum of the fractional independent-set LP is attained on
        // {0, ½, 1}^V; search all such weightings (in halves).
        let n = g.vertex_count();
        let mut best = 0u64;
        let mut w = vec![0u8; n];
        loop {
            if g.edges().iter().all(|&(a, b)| w[a] + w[b] <= 2) {
                best = best.max(w.iter().map(|&x| x as u64).sum());
            }
            let mut i = 0;
            while i < n && w[i] == 2 {
                w[i] = 0;
                i += 1;
            }
            if i == n {
                break;
            }
            w[i] += 1;
        }
        let alpha = fractional_independence(&g);
        prop_assert_eq!(alpha.value_halves(), best);
        // All weights ½ is always feasible.
        prop_assert!(2 * best >= n as u64);
    }

    #[test]
    fn delta_core_is_idempotent_and_label_free(g in arb_graph(1, 10), k in 1usize..4, seed in any::<u64>()) {
        let core = delta_core(&g, k);
        prop_assert_eq!(delta_core(&core, k), core.clone());
        prop_assert!(core.edges().iter().all(|&(a, b)| core.degree(a) >= k && core.degree(b) >= k));
        // Relabel by a permutation; the core must follow the relabelling.
        let n = g.vertex_count();
        let mut perm: Vec<usize> = (0..n).collect();
        let mut s = seed;
        for i in (1..n).rev() {
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            perm.swap(i, (s >> 33) as usize % (i + 1));
        }
        let relabel = |x: &Graph| Graph::from_edges(n, x.edges().iter().map(|&(a, b)| (perm[a], perm[b]))).unwrap();
        prop_assert_eq!(delta_core(&relabel(&g), k), relabel(&core));
    }

    #[test]
    fn peeling_contracts(g in arb_graph(3, 9), t in 1u32..10, order in any::<u64>()) {
        let h = complete(3).unwrap();
        let t = t as f64;
        let out = peel_edges(&h, &g, t, PeelOptions::default());
        let per = counting::per_edge_counts(&h, &out.graph).unwrap();
        prop_assert!(per.iter().all(|&c| c as f64 >= t));
        prop_assert!(((out.copies_before - out.copies_after) as f64) <= t * out.removed.len() as f64);
        let shuffled = peel_edges(&h, &g, t, PeelOptions { order_seed: Some(order), ..PeelOptions::default() });
        prop_assert_eq!(&shuffled.graph, &out.graph);
        prop_assert!(out.graph.is_subgraph_of(&g));
        prop_assert_eq!(peel_edges(&h, &out.graph, t, PeelOptions::default()).removed.len(), 0);
    }

    #[test]
    fn conditional_expectation_matches_enumeration(g in arb_graph(2, 5), p in 0.05f64..0.95) {
        // Host K₅: enumerate every outcome of the pairs not already in g.
        let k3 = PatternGraph::new(complete(3).unwrap()).unwrap();
        let ctx = SparsityContext::new(5, p).unwrap();
        let g = Graph::empty(5).union(&g);
        let all = complete(5).unwrap();
        let free: Vec<_> = all.edges().iter().copied().filter(|&(a, b)| !g.has_edge(a, b)).collect();
        let mut expect = 0.0;
        for mask in 0u32..1 << free.len() {
            let chosen: Vec<_> = (0..free.len()).filter(|&i| mask >> i & 1 == 1).map(|i| free[i]).collect();
            let prob = p.powi(chosen.len() as i32) * (1.0 - p).powi((free.len() - chosen.len()) as i32);
            expect += prob * counting::count_pattern(&k3, &g.with_edges(&chosen).unwrap()) as f64;
        }
        let got = ratefn::exact_conditional_expectation(&g, &k3, &ctx).unwrap();
        prop_assert!((got - expect).abs() <= 1e-9 * expect.max(1.0));
        prop_assert!(ratefn::planting_check(&g, &k3, &ctx).unwrap().holds());
    }
}
