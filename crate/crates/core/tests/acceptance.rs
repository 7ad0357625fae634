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


//! End-to-end acceptance criteria. Prints one PASS/FAIL line per criterion
//! and exits nonzero when any criterion fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::Rng;

use uppertail::counting;
use uppertail::decompose::{cycle_edge_cover_avoiding, konig_coloring, matching_avoiding};
use uppertail::graph::enumerate::connected_regular_graphs;
use uppertail::graph::generators::{complete, cycle, random_regular_bipartite};
use uppertail::graph::{canonical, Graph, PatternGraph, SparsityContext};
use uppertail::independence::{fractional_independence, theta};
use uppertail::ratefn::{self, plant, PlantKind, Regime, SearchFamily};
use uppertail::sim::{self, RngSpec};
use uppertail::structures::{self, is_core, Clause, CoreParams, PeelOptions};
use uppertail::verify::{self, Suite};

const SEED: u64 = 20_240_611;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome { pass, detail: detail.into() }
}

fn pattern(g: Graph) -> PatternGraph {
    PatternGraph::new(g).unwrap()
}

fn ctx(n: u64, p: f64) -> SparsityContext {
    SparsityContext::new(n, p).unwrap()
}

fn random_graph<R: Rng>(rng: &mut R, n: usize, p: f64) -> Graph {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(n, edges).unwrap()
}

/// Injective maps `V(h) → V(g)` preserving edges, by brute force.
fn naive_count(h: &Graph, g: &Graph) -> u128 {
    fn go(i: usize, phi: &mut Vec<usize>, used: &mut Vec<bool>, h: &Graph, g: &Graph) -> u128 {
        if i == h.vertex_count() {
            return h.edges().iter().all(|&(a, b)| g.has_edge(phi[a], phi[b])) as u128;
        }
        let mut total = 0;
        for x in 0..g.vertex_count() {
            if !used[x] {
                used[x] = true;
                phi.push(x);
                total += go(i + 1, phi, used, h, g);
                phi.pop();
                used[x] = false;
            }
        }
        total
    }
    go(0, &mut Vec::new(), &mut vec![false; g.vertex_count()], h, g)
}

fn counting_oracle() -> Outcome {
    let start = Instant::now();
    let mut rng = RngSpec::new(SEED).rng(1);
    let (mut pairs, mut mismatches) = (0, 0);
    while pairs < 400 {
        let vh = rng.gen_range(2..=5);
        let h = random_graph(&mut rng, vh, 0.6);
        if h.edge_count() == 0 || h.has_isolated_vertices() {
            continue;
        }
        let vg = rng.gen_range(1..=7);
        let pg = rng.gen_range(0.2..0.9);
        let g = random_graph(&mut rng, vg, pg);
        pairs += 1;
        if counting::count_labelled(&h, &g).unwrap() != naive_count(&h, &g) {
            mismatches += 1;
        }
    }
    let secs = start.elapsed().as_secs_f64();
    outcome(mismatches == 0 && secs < 60.0, format!("{pairs} pairs, {mismatches} mismatches, {secs:.2}s"))
}

fn theta_solver() -> Outcome {
    let patterns = [complete(3), cycle(4), cycle(5), complete(4), cycle(6)];
    let mut worst: f64 = 0.0;
    for h in patterns {
        let h = pattern(h.unwrap());
        for k in 1..=100 {
            let delta = 0.1 * k as f64;
            let t = theta(&h, delta).unwrap();
            worst = worst.max((h.independence_polynomial().eval(t) - (1.0 + delta)).abs());
        }
    }
    let k3 = theta(&pattern(complete(3).unwrap()), 1.0).unwrap();
    let k3_err = (k3 - 1.0 / 3.0).abs();
    outcome(worst <= 1e-12 && k3_err <= 1e-12, format!("max |P(θ)−(1+δ)| = {worst:.2e}; θ(K3, 1) − 1/3 = {k3_err:.2e}"))
}

fn rate_values() -> Outcome {
    let k3 = pattern(complete(3).unwrap());
    let c4 = pattern(cycle(4).unwrap());
    let sparse = ratefn::rate_function(&k3, 1.0, &ctx(1_000_000, 1e-4)).unwrap();
    let dense = ratefn::rate_function(&k3, 1.0, &ctx(1_000_000, 1e-2)).unwrap();
    let c4_dense = ratefn::rate_function(&c4, 1.0, &ctx(1_000_000, 1e-2)).unwrap();
    // θ for C4 solves 1 + 4x + 2x² = 2.
    let c4_expect = ((-4.0 + (16.0f64 + 8.0).sqrt()) / 4.0).min(0.5);
    let pass = sparse.regime == Regime::SparseLocalized
        && (sparse.value - 0.5).abs() <= 1e-12
        && dense.regime == Regime::DenseLocalized
        && (dense.value - 1.0 / 3.0).abs() <= 1e-12
        && c4_dense.regime == Regime::DenseLocalized
        && (c4_dense.value - c4_expect).abs() <= 1e-12;
    outcome(
        pass,
        format!(
            "K3 sparse {} dense {}; C4 dense {} (expected {c4_expect})",
            sparse.value, dense.value, c4_dense.value
        ),
    )
}

fn expectation_identity() -> Outcome {
    let start = Instant::now();
    let expect = 30.0 * 29.0 * 28.0 * 0.2f64.powi(3);
    let est = sim::mc_mean_count(&complete(3).unwrap(), 30, 0.2, 2000, &RngSpec::new(SEED)).unwrap();
    let z = est.z_score(expect);
    let secs = start.elapsed().as_secs_f64();
    outcome(
        z.abs() <= 4.0 && secs < 30.0,
        format!("mean {:.3} ± {:.3} vs {expect:.2} (z = {z:.2}), {secs:.2}s", est.mean, est.std_error),
    )
}

fn conditional_triangle() -> Outcome {
    let k3 = pattern(complete(3).unwrap());
    let small = ctx(20, 0.3);
    let g = plant(&PlantKind::Clique(5), 20).unwrap().graph;
    let exact = ratefn::exact_conditional_expectation(&g, &k3, &small).unwrap();
    let est = sim::mc_conditional_mean(&g, &k3, &small, 100_000, &RngSpec::new(SEED)).unwrap();
    let z = est.z_score(exact);

    let big = ctx(300, 0.1);
    let g10 = plant(&PlantKind::Clique(10), 300).unwrap().graph;
    let exact10 = ratefn::exact_conditional_expectation(&g10, &k3, &big).unwrap();
    let base = 300.0 * 299.0 * 298.0 * 0.1f64.powi(3);
    let approx = ratefn::asymptotic_conditional_gain(&g10, &k3, &big).unwrap() + base;
    let rel = (approx - exact10).abs() / exact10;
    outcome(
        z.abs() <= 4.0 && rel <= 0.05,
        format!("K5: exact {exact:.3}, MC {:.3} ± {:.3} (z = {z:.2}); K10: exact {exact10:.1}, asymptotic {approx:.1} (rel {rel:.4})", est.mean, est.std_error),
    )
}

fn planting_inequality() -> Outcome {
    let patterns = [complete(3), cycle(4), complete(4), cycle(5)].map(|h| pattern(h.unwrap()));
    let kinds = [
        PlantKind::Clique(3),
        PlantKind::Clique(6),
        PlantKind::Clique(8),
        PlantKind::Hub(1),
        PlantKind::Hub(3),
        PlantKind::CompleteBipartite(2, 3),
        PlantKind::CompleteBipartite(3, 4),
        PlantKind::Union(vec![PlantKind::Clique(4), PlantKind::Hub(2)]),
    ];
    let mut rng = RngSpec::new(SEED).rng(6);
    let (mut instances, mut violations) = (0, 0);
    for &(n, p) in &[(16u64, 0.05), (24, 0.2), (40, 0.5)] {
        let c = ctx(n, p);
        let mut hosts: Vec<Graph> = kinds.iter().map(|k| plant(k, n).unwrap().graph).collect();
        for _ in 0..10 {
            let vg = rng.gen_range(3..=10);
            let pg = rng.gen_range(0.2..0.8);
            hosts.push(random_graph(&mut rng, vg, pg));
        }
        for g in &hosts {
            for h in &patterns {
                instances += 1;
                if !ratefn::planting_check(g, h, &c).unwrap().holds() {
                    violations += 1;
                }
            }
        }
    }
    outcome(violations == 0, format!("{instances} instances, {violations} violations (exact rational arithmetic)"))
}

fn hub_law() -> Outcome {
    let k3 = pattern(complete(3).unwrap());
    let c = ctx(400, 0.1);
    let base = 400.0 * 399.0 * 398.0 * 0.1f64.powi(3);
    let mut pass = true;
    let mut parts = Vec::new();
    for u in [4usize, 8] {
        let g = plant(&PlantKind::Hub(u), 400).unwrap().graph;
        let ratio = ratefn::exact_conditional_expectation(&g, &k3, &c).unwrap() / base;
        let predicted = k3.independence_polynomial().eval(u as f64 / (400.0 * 0.1 * 0.1));
        let rel = (ratio - predicted).abs() / predicted;
        pass &= rel <= 0.10;
        parts.push(format!("u={u}: ratio {ratio:.4} vs P(θ) = {predicted} (rel {:.2}%)", 100.0 * rel));
    }
    outcome(pass, parts.join("; "))
}

fn variational() -> Outcome {
    let k3 = pattern(complete(3).unwrap());
    let families = [SearchFamily::Cliques { min: 3, max: 1000 }];
    let mut pass = true;
    let mut parts = Vec::new();
    for (n, p) in [(10_000u64, 1e-2), (1_000_000, 1e-4)] {
        let r = ratefn::variational_upper_bound(&k3, 1.0, &ctx(n, p), &families).unwrap();
        let size = match r.argmin {
            PlantKind::Clique(m) => m as f64,
            _ => f64::NAN,
        };
        let target_size = (n as f64 * p).ceil();
        let rel = (r.normalized_cost - 0.5).abs() / 0.5;
        pass &= rel <= 0.15 && (size - target_size).abs() <= 1.0;
        parts.push(format!("n={n}, p={p}: {} cost {:.4} (rel {:.3})", r.descriptor, r.normalized_cost, rel));
    }
    outcome(pass, parts.join("; "))
}

/// Every colour class is a matching and the colours used are exactly `0..k`.
fn proper_with(g: &Graph, colors: &[usize], k: usize) -> bool {
    let mut seen = vec![vec![false; k]; g.vertex_count()];
    for (&(a, b), &c) in g.edges().iter().zip(colors) {
        if c >= k || seen[a][c] || seen[b][c] {
            return false;
        }
        seen[a][c] = true;
        seen[b][c] = true;
    }
    true
}

fn is_perfect_matching(g: &Graph, m: &[(usize, usize)]) -> bool {
    let mut hit = vec![false; g.vertex_count()];
    for &(a, b) in m {
        if !g.has_edge(a, b) || hit[a] || hit[b] {
            return false;
        }
        hit[a] = true;
        hit[b] = true;
    }
    hit.iter().all(|&h| h)
}

fn konig_suite() -> Outcome {
    let start = Instant::now();
    let mut rng = RngSpec::new(SEED).rng(9);
    let mut failures = Vec::new();

    for _ in 0..200 {
        let (a, b) = (rng.gen_range(1..=10), rng.gen_range(1..=10));
        let cap = rng.gen_range(1..=6);
        let mut deg = vec![0; a + b];
        let mut edges = Vec::new();
        for u in 0..a {
            for v in a..a + b {
                if rng.gen_bool(0.5) && deg[u] < cap && deg[v] < cap {
                    deg[u] += 1;
                    deg[v] += 1;
                    edges.push((u, v));
                }
            }
        }
        let g = Graph::from_edges(a + b, edges).unwrap();
        let c = konig_coloring(&g).unwrap();
        if c.num_colors != g.max_degree() || !proper_with(&g, &c.colors, g.max_degree()) {
            failures.push("random bipartite colouring");
        }
    }
    for d in 1..=6 {
        for seed in 0..10 {
            let g = random_regular_bipartite(d, d + seed as usize % 4, rng.gen()).unwrap();
            let c = konig_coloring(&g).unwrap();
            if !(0..d).all(|k| is_perfect_matching(&g, &c.class(&g, k))) {
                failures.push("regular colour class");
            }
        }
    }
    for d in 2..=4 {
        for _ in 0..100 {
            let m = d + rng.gen_range(0..4);
            let g = random_regular_bipartite(d, m, rng.gen()).unwrap();
            let mut avoid = Vec::new();
            while avoid.len() < d - 1 {
                let e = g.edges()[rng.gen_range(0..g.edge_count())];
                if !avoid.contains(&e) {
                    avoid.push(e);
                }
            }
            let matching = matching_avoiding(&g, &avoid).unwrap();
            if !is_perfect_matching(&g, &matching) || matching.iter().any(|e| avoid.contains(e)) {
                failures.push("matching_avoiding");
            }
        }
    }
    let mut covers = 0;
    for d in [3, 4] {
        for n in d + 1..=10 {
            for h in connected_regular_graphs(n, d) {
                for &e in h.edges() {
                    covers += 1;
                    let cover = cycle_edge_cover_avoiding(&h, e).unwrap();
                    let mut hit = vec![0; n];
                    let mut ok = true;
                    for part in &cover.components {
                        for x in part.vertices() {
                            hit[x] += 1;
                        }
                        ok &= part.edges().iter().all(|&f| h.has_edge(f.0, f.1) && f != canonical(e.0, e.1));
                        ok &= part.vertices().len() == 2 || part.vertices().len() >= 3;
                    }
                    if !ok || hit.iter().any(|&k| k != 1) {
                        failures.push("cycle/edge cover");
                    }
                }
            }
        }
    }
    let secs = start.elapsed().as_secs_f64();
    outcome(
        failures.is_empty() && secs < 300.0,
        format!("{covers} exhaustive covers checked, {} failures, {secs:.2}s", failures.len()),
    )
}

fn lemma_suite() -> Outcome {
    let ids: Vec<String> = [
        "alpha_count_bound",
        "path_lemma",
        "cycle_barN11",
        "tildeN11",
        "small_count",
        "degree_product_strong_core",
    ]
    .map(String::from)
    .to_vec();
    let results = verify::run_checks(&Suite::default(), Some(&ids));
    let mut bad: Vec<String> = results.iter().filter(|r| !r.passed()).map(|r| r.lemma_id.clone()).collect();
    let instances: u64 = results.iter().map(|r| r.instances).sum();
    let mut regular = 0;
    for n in 2..=8 {
        for d in 1..n {
            for h in connected_regular_graphs(n, d) {
                regular += 1;
                // α★ = v/2, i.e. n halves.
                if fractional_independence(&h).value_halves() != n as u64 {
                    bad.push(format!("alpha* of a {d}-regular graph on {n} vertices"));
                }
            }
        }
    }
    outcome(
        bad.is_empty() && results.len() == ids.len(),
        format!("{} checks, {instances} instances, {regular} regular graphs; failing: {bad:?}", results.len()),
    )
}

fn peeling() -> Outcome {
    let k3 = complete(3).unwrap();
    let mut rng = RngSpec::new(SEED).rng(11);
    let (mut instances, mut failures, mut removed_total) = (0, 0, 0);
    for i in 0..40 {
        let n = 24;
        let c = ctx(n as u64, 0.3);
        let params = CoreParams::new(pattern(k3.clone()), c, 1.0, 0.25).unwrap().with_c_bar(0.25).unwrap();
        let mut g = random_graph(&mut rng, n, 0.3);
        if i % 2 == 0 {
            g = g.union(&plant(&PlantKind::Clique(8), n as u64).unwrap().graph);
        }
        let out = structures::peel_to_core(&g, &params);
        instances += 1;
        removed_total += out.removed.len();
        let report = is_core(&out.graph, &params);
        let c3 = report.clauses.iter().find(|cl| cl.clause == Clause::C3).unwrap();
        let t = params.core_edge_threshold();
        let lost = (out.copies_before - out.copies_after) as f64;
        let mut ok = c3.holds() && lost <= t * out.removed.len() as f64;
        if i < 3 {
            for s in 0..100 {
                let opts = PeelOptions { order_seed: Some(s), ..PeelOptions::default() };
                ok &= structures::peel_edges(&k3, &g, t, opts).graph == out.graph;
            }
        }
        if !ok {
            failures += 1;
        }
    }
    outcome(
        failures == 0 && removed_total > 0,
        format!("{instances} instances, {removed_total} edges peeled, 300 shuffled orders, {failures} failures"),
    )
}

fn determinism() -> Outcome {
    let suite = Suite::default();
    let run = |threads: usize| {
        let pool = rayon::ThreadPoolBuilder::new().num_threads(threads).build().unwrap();
        pool.install(|| verify::json_lines(&verify::run_checks(&suite, None)))
    };
    let a = verify::json_lines(&verify::run_checks(&suite, None));
    let b = verify::json_lines(&verify::run_checks(&suite, None));
    let one = run(1);
    let four = run(4);
    let pass = a == b && a == one && a == four;
    outcome(pass, format!("{} bytes; repeat {}, 1 thread {}, 4 threads {}", a.len(), a == b, a == one, a == four))
}

type Criterion = (&'static str, fn() -> Outcome);

fn main() -> ExitCode {
    let criteria: [Criterion; 12] = [
        ("counting oracle equivalence", counting_oracle),
        ("theta solver", theta_solver),
        ("rate-function values", rate_values),
        ("expectation identity", expectation_identity),
        ("conditional-expectation triangle", conditional_triangle),
        ("planting inequality", planting_inequality),
        ("hub law", hub_law),
        ("variational corroboration", variational),
        ("Konig/matching/decomposition suite", konig_suite),
        ("lemma suite", lemma_suite),
        ("peeling contracts", peeling),
        ("determinism", determinism),
    ];
    let mut failed = 0;
    let mut total = Duration::ZERO;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let o = run();
        let took = start.elapsed();
        total += took;
        failed += !o.pass as usize;
        let verdict = if o.pass { "PASS" } else { "FAIL" };
        println!("criterion {:>2} {name:<36} {verdict} [{:>6.2}s]  {}", i + 1, took.as_secs_f64(), o.detail);
    }
    println!("acceptance: {} passed, {failed} failed ({:.1}s)", criteria.len() - failed, total.as_secs_f64());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
