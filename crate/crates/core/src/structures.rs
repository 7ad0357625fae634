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


//! Edge classes at a degree threshold, the seed/core/strong-core predicates,
//! peeling to a core, and the high/low/bad edge split.
//!
//! All predicates are evaluated as literal inequalities at the given `(n, p)`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use crate::counting::{self, fold_copies};
use crate::graph::{Edge, Graph, PatternGraph, SparsityContext};

/// Peeling keeps every copy in memory up to this many copies and otherwise
/// falls back to batch recounting.
pub const DEFAULT_COPY_BUDGET: usize = 2_000_000;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum StructureError {
    #[error("delta must be positive and finite, got {0}")]
    InvalidDelta(f64),
    #[error("eps must lie in (0, 1), got {0}")]
    InvalidEps(f64),
    #[error("C-bar must be positive and finite, got {0}")]
    InvalidCBar(f64),
    #[error("C-bar-star = {got} is below the admissible minimum 32 delta^(2/v) = {min}")]
    CStarTooSmall { got: f64, min: f64 },
    #[error("C0 must be positive and finite, got {0}")]
    InvalidCBig0(f64),
    #[error("{copies} copies exceed the copy budget of {budget}")]
    CopyBudgetExceeded { copies: u128, budget: usize },
    #[error("target must be nonnegative, got {0}")]
    NegativeTarget(f64),
}

/// `D(ε) = ⌈16Δ/ε⌉`.
pub fn degree_threshold(delta: usize, eps: f64) -> usize {
    (16.0 * delta as f64 / eps).ceil() as usize
}

/// Vertices of degree at most `D` and the induced three-way split of edges.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EdgePartition {
    pub threshold: usize,
    pub low_vertices: Vec<usize>,
    /// Both endpoints have degree ≤ D.
    pub e11: Vec<Edge>,
    /// Exactly one endpoint has degree ≤ D.
    pub e12: Vec<Edge>,
    /// Neither endpoint has degree ≤ D.
    pub e22: Vec<Edge>,
}

impl EdgePartition {
    /// `e₁,₂ + e₂,₂`, the number of edges touching a high-degree vertex.
    pub fn e_bar(&self) -> usize {
        self.e12.len() + self.e22.len()
    }
}

pub fn edge_partition(g: &Graph, d: usize) -> EdgePartition {
    let low = |v: usize| g.degree(v) <= d;
    let mut part = EdgePartition {
        threshold: d,
        low_vertices: (0..g.vertex_count()).filter(|&v| low(v)).collect(),
        e11: Vec::new(),
        e12: Vec::new(),
        e22: Vec::new(),
    };
    for &(u, v) in g.edges() {
        match (low(u), low(v)) {
            (true, true) => part.e11.push((u, v)),
            (false, false) => part.e22.push((u, v)),
            _ => part.e12.push((u, v)),
        }
    }
    part
}

/// Parameters of the seed, core and strong-core predicates.
#[derive(Debug, Clone)]
pub struct CoreParams {
    pattern: PatternGraph,
    ctx: SparsityContext,
    delta: f64,
    eps: f64,
    c_bar: f64,
    c_star: f64,
}

impl CoreParams {
    /// Defaults: `C̄ = 10/(δε)` and `C̄★ = 32 δ^{2/v_H}`.
    pub fn new(pattern: PatternGraph, ctx: SparsityContext, delta: f64, eps: f64) -> Result<Self, StructureError> {
        if !(delta > 0.0 && delta.is_finite()) {
            return Err(StructureError::InvalidDelta(delta));
        }
        if !(eps > 0.0 && eps < 1.0) {
            return Err(StructureError::InvalidEps(eps));
        }
        let c_star = Self::min_c_star(delta, pattern.v());
        Ok(CoreParams {
            pattern,
            ctx,
            delta,
            eps,
            c_bar: 10.0 / (delta * eps),
            c_star,
        })
    }

    fn min_c_star(delta: f64, v: usize) -> f64 {
        32.0 * delta.powf(2.0 / v as f64)
    }

    pub fn with_c_bar(mut self, c_bar: f64) -> Result<Self, StructureError> {
        if !(c_bar > 0.0 && c_bar.is_finite()) {
            return Err(StructureError::InvalidCBar(c_bar));
        }
        self.c_bar = c_bar;
        Ok(self)
    }

    pub fn with_c_star(mut self, c_star: f64) -> Result<Self, StructureError> {
        let min = Self::min_c_star(self.delta, self.pattern.v());
        // Relative slack so that the default value round-trips through text.
        if !(c_star.is_finite() && c_star >= min * (1.0 - 1e-12)) {
            return Err(StructureError::CStarTooSmall { got: c_star, min });
        }
        self.c_star = c_star;
        Ok(self)
    }

    pub fn pattern(&self) -> &PatternGraph {
        &self.pattern
    }

    pub fn ctx(&self) -> &SparsityContext {
        &self.ctx
    }

    pub fn delta(&self) -> f64 {
        self.delta
    }

    pub fn eps(&self) -> f64 {
        self.eps
    }

    pub fn c_bar(&self) -> f64 {
        self.c_bar
    }

    pub fn c_star(&self) -> f64 {
        self.c_star
    }

    /// `D(ε) = ⌈16Δ/ε⌉`.
    pub fn degree_threshold(&self) -> usize {
        degree_threshold(self.pattern.delta(), self.eps)
    }

    fn copy_scale(&self) -> f64 {
        self.ctx.copy_scale(&self.pattern)
    }

    fn edge_scale(&self) -> f64 {
        self.ctx.edge_scale(self.pattern.delta())
    }

    /// `C̄ n² p^Δ log(1/p)`.
    pub fn core_edge_budget(&self) -> f64 {
        self.c_bar * self.edge_scale() * self.ctx.log_inv_p()
    }

    /// `δ ε n^{v_H} p^{e(H)} / (C̄ n² p^Δ log(1/p))`.
    pub fn core_edge_threshold(&self) -> f64 {
        self.delta * self.eps * self.copy_scale() / self.core_edge_budget()
    }

    /// `C̄★ n² p^Δ`.
    pub fn strong_edge_budget(&self) -> f64 {
        self.c_star * self.edge_scale()
    }

    /// `(δε/C̄★)(n p^{Δ/2})^{v_H − 2}`.
    pub fn strong_edge_threshold(&self) -> f64 {
        let s = self.ctx.regime_parameter(self.pattern.delta());
        self.delta * self.eps / self.c_star * s.powi(self.pattern.v() as i32 - 2)
    }

    /// `c₀(ε)`: lower bound on `deg(u) deg(v) / (n² p^Δ)` over the edges of
    /// any strong core, from the per-edge copy bound
    /// `N(H, G, e) ≤ 4e(H) (2e(G))^{v/2 − (2Δ−1)/Δ} (4 deg u deg v)^{(Δ−1)/Δ}`
    /// combined with the strong-core floor and edge budget.
    pub fn c0(&self) -> f64 {
        let d = self.pattern.delta() as f64;
        let v = self.pattern.v() as f64;
        let e_h = self.pattern.e() as f64;
        let k = d / (d - 1.0);
        let tail = v / 2.0 - (2.0 * d - 1.0) / d;
        0.25 * (self.delta * self.eps / self.c_star / (4.0 * e_h)).powf(k) * (2.0 * self.c_star).powf(-tail * k)
    }

    /// Default `C₀(ε)`: large enough that the counting chain for the
    /// high/low split gives `e(G_bad) ≤ ε e(G)` and
    /// `N(H, G_low) ≥ (1 − ε) N(H, G)` on every strong core.
    pub fn default_c_big0(&self) -> f64 {
        let d = self.pattern.delta() as i32;
        let base = 2f64.powf(self.pattern.v() as f64 / 2.0) * self.pattern.e() as f64 * self.c_star;
        let edges = 5.0 * self.c_star * (base / (self.delta * self.eps * self.eps)).powi(d);
        let copies = if self.eps < 1.0 / 6.0 {
            5.0 * self.c_star * (base / (self.eps * self.delta * (1.0 - 6.0 * self.eps))).powi(d)
        } else {
            0.0
        };
        edges.max(copies)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Clause {
    S1,
    S2,
    C1,
    C2,
    C3,
    SC1,
    SC2,
    SC3,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Direction {
    AtLeast,
    AtMost,
}

/// One inequality of a predicate with both sides.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ClauseEval {
    pub clause: Clause,
    pub direction: Direction,
    pub lhs: f64,
    pub rhs: f64,
}

impl ClauseEval {
    fn at_least(clause: Clause, lhs: f64, rhs: f64) -> Self {
        ClauseEval {
            clause,
            direction: Direction::AtLeast,
            lhs,
            rhs,
        }
    }

    fn at_most(clause: Clause, lhs: f64, rhs: f64) -> Self {
        ClauseEval {
            clause,
            direction: Direction::AtMost,
            lhs,
            rhs,
        }
    }

    /// Signed margin, negative exactly when the clause fails.
    pub fn slack(&self) -> f64 {
        match self.direction {
            Direction::AtLeast => self.lhs - self.rhs,
            Direction::AtMost => self.rhs - self.lhs,
        }
    }

    pub fn holds(&self) -> bool {
        match self.direction {
            Direction::AtLeast => self.lhs >= self.rhs,
            Direction::AtMost => self.lhs <= self.rhs,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PredicateReport {
    pub holds: bool,
    pub clauses: Vec<ClauseEval>,
    /// First failing clause with its (negative) slack.
    pub violated: Option<(Clause, f64)>,
}

impl PredicateReport {
    fn from_clauses(clauses: Vec<ClauseEval>) -> Self {
        let violated = clauses.iter().find(|c| !c.holds()).map(|c| (c.clause, c.slack()));
        PredicateReport {
            holds: violated.is_none(),
            clauses,
            violated,
        }
    }
}

fn min_edge_count(h: &PatternGraph, g: &Graph) -> f64 {
    if g.edge_count() == 0 {
        return f64::INFINITY;
    }
    let per = counting::per_edge_counts(h.graph(), g).expect("pattern has no isolated vertices");
    per.into_iter().min().unwrap() as f64
}

pub fn is_seed(g: &Graph, params: &CoreParams) -> PredicateReport {
    let n = counting::count_pattern(&params.pattern, g) as f64;
    let s = params.copy_scale();
    PredicateReport::from_clauses(vec![
        ClauseEval::at_least(Clause::S1, n, params.delta * (1.0 - 2.0 * params.eps) * s),
        ClauseEval::at_most(Clause::S2, g.edge_count() as f64, params.core_edge_budget()),
    ])
}

pub fn is_core(g: &Graph, params: &CoreParams) -> PredicateReport {
    let n = counting::count_pattern(&params.pattern, g) as f64;
    let s = params.copy_scale();
    PredicateReport::from_clauses(vec![
        ClauseEval::at_least(Clause::C1, n, params.delta * (1.0 - 3.0 * params.eps) * s),
        ClauseEval::at_most(Clause::C2, g.edge_count() as f64, params.core_edge_budget()),
        ClauseEval::at_least(Clause::C3, min_edge_count(&params.pattern, g), params.core_edge_threshold()),
    ])
}

pub fn is_strong_core(g: &Graph, params: &CoreParams) -> PredicateReport {
    let n = counting::count_pattern(&params.pattern, g) as f64;
    let s = params.copy_scale();
    PredicateReport::from_clauses(vec![
        ClauseEval::at_least(Clause::SC1, n, params.delta * (1.0 - 6.0 * params.eps) * s),
        ClauseEval::at_most(Clause::SC2, g.edge_count() as f64, params.strong_edge_budget()),
        ClauseEval::at_least(Clause::SC3, min_edge_count(&params.pattern, g), params.strong_edge_threshold()),
    ])
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PeelOutcome {
    pub graph: Graph,
    /// Removed edges in removal order.
    pub removed: Vec<Edge>,
    pub copies_before: u128,
    pub copies_after: u128,
}

#[derive(Debug, Clone, Copy)]
pub struct PeelOptions {
    pub copy_budget: usize,
    /// When set, the next edge to delete is drawn uniformly from the
    /// currently deficient edges using this seed; the result is the same for
    /// every order, which is what this option exists to exercise.
    pub order_seed: Option<u64>,
}

impl Default for PeelOptions {
    fn default() -> Self {
        PeelOptions {
            copy_budget: DEFAULT_COPY_BUDGET,
            order_seed: None,
        }
    }
}

/// Edge indices of every copy of `h` in `g`, flattened `e(H)` per copy.
fn copy_edge_lists(h: &Graph, g: &Graph) -> Vec<u32> {
    let h_edges = h.edges();
    fold_copies(
        h,
        g,
        &[],
        true,
        Vec::new,
        |acc: &mut Vec<u32>, phi| {
            for &(a, b) in h_edges {
                acc.push(g.edge_index(phi[a], phi[b]).unwrap() as u32);
            }
        },
        |mut a, mut b| {
            a.append(&mut b);
            a
        },
    )
}

/// Removes edges lying in fewer than `t` copies of `h` until every remaining
/// edge lies in at least `t` copies.
///
/// Deleting an edge only lowers the counts of other edges, so the result is
/// the unique largest subgraph whose edges all meet the threshold; the order
/// of deletions does not matter. Each deletion destroys fewer than `t`
/// copies, hence at most `t` per removed edge in total.
pub fn peel_edges(h: &Graph, g: &Graph, t: f64, opts: PeelOptions) -> PeelOutcome {
    let copies_before = counting::count_labelled(h, g).expect("pattern has no isolated vertices");
    if copies_before > opts.copy_budget as u128 {
        return peel_batch(h, g, t, copies_before);
    }
    let k = h.edge_count();
    let flat = copy_edge_lists(h, g);
    let copies = flat.len() / k.max(1);
    let m = g.edge_count();
    let mut counts = vec![0u64; m];
    for &e in &flat {
        counts[e as usize] += 1;
    }
    // Copies through each edge, in CSR form.
    let mut offsets = vec![0usize; m + 1];
    for e in 0..m {
        offsets[e + 1] = offsets[e] + counts[e] as usize;
    }
    let mut fill = offsets.clone();
    let mut through = vec![0u32; flat.len()];
    for c in 0..copies {
        for &e in &flat[c * k..(c + 1) * k] {
            through[fill[e as usize]] = c as u32;
            fill[e as usize] += 1;
        }
    }
    let deficient = |c: u64| (c as f64) < t;
    let mut alive_edge = vec![true; m];
    let mut alive_copy = vec![true; copies];
    let mut pending: Vec<usize> = (0..m).filter(|&e| deficient(counts[e])).collect();
    let mut rng = opts.order_seed.map(ChaCha8Rng::seed_from_u64);
    let mut removed = Vec::new();
    let mut lost = 0u128;
    while !pending.is_empty() {
        let e = match rng.as_mut() {
            Some(r) => {
                let i = r.gen_range(0..pending.len());
                pending.swap_remove(i)
            }
            None => pending.pop().unwrap(),
        };
        if !alive_edge[e] {
            continue;
        }
        alive_edge[e] = false;
        removed.push(g.edges()[e]);
        for &c in &through[offsets[e]..offsets[e + 1]] {
            let c = c as usize;
            if !alive_copy[c] {
                continue;
            }
            alive_copy[c] = false;
            lost += 1;
            for &f in &flat[c * k..(c + 1) * k] {
                let f = f as usize;
                let before = counts[f];
                counts[f] -= 1;
                if alive_edge[f] && f != e && !deficient(before) && deficient(counts[f]) {
                    pending.push(f);
                }
            }
        }
    }
    PeelOutcome {
        graph: g.filter_edges(|i, _| alive_edge[i]),
        removed,
        copies_before,
        copies_after: copies_before - lost,
    }
}

fn peel_batch(h: &Graph, g: &Graph, t: f64, copies_before: u128) -> PeelOutcome {
    let mut current = g.clone();
    let mut removed = Vec::new();
    loop {
        let per = counting::per_edge_counts(h, &current).unwrap();
        let drop: Vec<Edge> = current
            .edges()
            .iter()
            .zip(&per)
            .filter(|&(_, &c)| (c as f64) < t)
            .map(|(&e, _)| e)
            .collect();
        if drop.is_empty() {
            break;
        }
        current = current.without_edges(&drop);
        removed.extend(drop);
    }
    let copies_after = counting::count_labelled(h, &current).unwrap();
    PeelOutcome {
        graph: current,
        removed,
        copies_before,
        copies_after,
    }
}

pub fn peel_to_core(g: &Graph, params: &CoreParams) -> PeelOutcome {
    peel_edges(params.pattern.graph(), g, params.core_edge_threshold(), PeelOptions::default())
}

pub fn peel_to_strong_core(g: &Graph, params: &CoreParams) -> PeelOutcome {
    peel_edges(params.pattern.graph(), g, params.strong_edge_threshold(), PeelOptions::default())
}

/// `ē₀ = ½ N^{2/v_H}`: the fewest edges a graph can have and still contain
/// `N` labelled copies of a pattern on `v_H` vertices, by `N ≤ (2e)^{v_H/2}`.
pub fn min_edges_for_copies(v: usize, target: f64) -> Result<f64, StructureError> {
    if target.is_nan() || target < 0.0 {
        return Err(StructureError::NegativeTarget(target));
    }
    Ok(0.5 * target.powf(2.0 / v as f64))
}

/// Scaled form `½ δ₀^{2/v_H} n² p^Δ` for a target of `δ₀ n^{v_H} p^{e(H)}`
/// copies.
pub fn min_edges_scaled(h: &PatternGraph, delta0: f64, ctx: &SparsityContext) -> Result<f64, StructureError> {
    Ok(min_edges_for_copies(h.v(), delta0)? * ctx.edge_scale(h.delta()))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct HighLowSplit {
    pub g_high: Vec<Edge>,
    pub g_low: Vec<Edge>,
    pub g_bad: Vec<Edge>,
    pub c0: f64,
    pub c_big0: f64,
}

/// `G_high`: edges with `deg u · deg v ≥ C₀ n² p^Δ`; `G_low` the rest;
/// `G_bad`: edges every copy through which uses a `G_high` edge. An edge is
/// good exactly when it lies on a copy inside `G_low`, so only those copies
/// are enumerated; `copy_budget` bounds that enumeration.
pub fn high_low_bad_split(
    g: &Graph,
    params: &CoreParams,
    c_big0: Option<f64>,
    copy_budget: usize,
) -> Result<HighLowSplit, StructureError> {
    let c_big0 = c_big0.unwrap_or_else(|| params.default_c_big0());
    if !(c_big0 > 0.0 && c_big0.is_finite()) {
        return Err(StructureError::InvalidCBig0(c_big0));
    }
    let bar = c_big0 * params.edge_scale();
    let is_high = |(u, v): Edge| (g.degree(u) as f64) * (g.degree(v) as f64) >= bar;
    let (g_high, g_low): (Vec<Edge>, Vec<Edge>) = g.edges().iter().partition(|&&e| is_high(e));
    let low_graph = Graph::from_canonical_edges(g.vertex_count(), g_low.clone());
    let h = params.pattern.graph();
    let copies = counting::count_labelled(h, &low_graph).unwrap();
    if copies > copy_budget as u128 {
        return Err(StructureError::CopyBudgetExceeded {
            copies,
            budget: copy_budget,
        });
    }
    let mut good = vec![false; low_graph.edge_count()];
    for e in copy_edge_lists(h, &low_graph) {
        good[e as usize] = true;
    }
    let g_bad = g
        .edges()
        .iter()
        .copied()
        .filter(|&(u, v)| low_graph.edge_index(u, v).is_none_or(|i| !good[i]))
        .collect();
    Ok(HighLowSplit {
        g_high,
        g_low,
        g_bad,
        c0: params.c0(),
        c_big0,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::generators::*;

    fn k3() -> PatternGraph {
        PatternGraph::new(complete(3).unwrap()).unwrap()
    }

    fn k5_pendant() -> Graph {
        Graph::from_edges(6, complete(5).unwrap().edges().iter().copied().chain([(4, 5)])).unwrap()
    }

    #[test]
    fn partition_examples() {
        let p = edge_partition(&star(5).unwrap(), 3);
        assert_eq!(p.low_vertices, vec![1, 2, 3, 4, 5]);
        assert_eq!((p.e11.len(), p.e12.len(), p.e22.len()), (0, 5, 0));
        let p = edge_partition(&complete(3).unwrap(), 2);
        assert_eq!((p.e11.len(), p.low_vertices.len()), (3, 3));
        let p = edge_partition(&complete(5).unwrap(), 2);
        assert_eq!((p.e22.len(), p.low_vertices.len()), (10, 0));
        assert_eq!(degree_threshold(2, 0.1), 320);
    }

    #[test]
    fn peel_examples() {
        let h = complete(3).unwrap();
        let out = peel_edges(&h, &k5_pendant(), 1.0, PeelOptions::default());
        assert_eq!(out.graph.edges(), complete(5).unwrap().edges());
        assert_eq!(out.removed, vec![(4, 5)]);
        let k5 = complete(5).unwrap();
        assert_eq!(peel_edges(&h, &k5, 18.0, PeelOptions::default()).graph, k5);
        assert_eq!(peel_edges(&h, &cycle(5).unwrap(), 1.0, PeelOptions::default()).graph.edge_count(), 0);
        assert_eq!(peel_edges(&h, &Graph::empty(4), 1.0, PeelOptions::default()).graph.edge_count(), 0);
    }

    #[test]
    fn peel_batch_agrees_with_incremental() {
        let h = complete(3).unwrap();
        let g = disjoint_union(&k5_pendant(), &complete(4).unwrap());
        for t in [1.0, 7.0, 12.0, 19.0] {
            let inc = peel_edges(&h, &g, t, PeelOptions::default());
            let batch = peel_edges(
                &h,
                &g,
                t,
                PeelOptions {
                    copy_budget: 0,
                    order_seed: None,
                },
            );
            assert_eq!(inc.graph, batch.graph);
            assert_eq!(inc.copies_after, batch.copies_after);
        }
    }

    #[test]
    fn predicates_on_empty_graph() {
        let ctx = SparsityContext::new(100, 0.1).unwrap();
        let params = CoreParams::new(k3(), ctx, 1.0, 0.1).unwrap();
        let empty = Graph::empty(100);
        assert_eq!(is_seed(&empty, &params).violated.map(|v| v.0), Some(Clause::S1));
        assert_eq!(is_core(&empty, &params).violated.map(|v| v.0), Some(Clause::C1));
        assert_eq!(is_strong_core(&empty, &params).violated.map(|v| v.0), Some(Clause::SC1));
    }

    #[test]
    fn clique_is_seed() {
        // m = ⌈2^{1/3} n p⌉ gives (m)_3 ≥ 2 (np)^3 > δ(1 − 2ε) n^3 p^3.
        let (n, p) = (1000u64, 0.02);
        let ctx = SparsityContext::new(n, p).unwrap();
        let params = CoreParams::new(k3(), ctx, 1.0, 0.1).unwrap();
        let m = (2f64.powf(1.0 / 3.0) * n as f64 * p).ceil() as usize;
        let g = disjoint_union(&complete(m).unwrap(), &Graph::empty(n as usize - m));
        let r = is_seed(&g, &params);
        assert!(r.holds, "{r:?}");
        assert_eq!(r.clauses[0].lhs, (m * (m - 1) * (m - 2)) as f64);
    }

    #[test]
    fn params_validation() {
        let ctx = SparsityContext::new(100, 0.1).unwrap();
        assert!(CoreParams::new(k3(), ctx, 0.0, 0.1).is_err());
        assert!(CoreParams::new(k3(), ctx, 1.0, 1.0).is_err());
        let p = CoreParams::new(k3(), ctx, 8.0, 0.1).unwrap();
        assert!((p.c_star() - 128.0).abs() < 1e-9);
        assert!(p.clone().with_c_star(100.0).is_err());
        assert!(p.with_c_star(200.0).is_ok());
    }

    #[test]
    fn min_edges_examples() {
        assert!((min_edges_for_copies(3, 64.0).unwrap() - 8.0).abs() < 1e-12);
        assert_eq!(min_edges_for_copies(3, 0.0).unwrap(), 0.0);
        assert!(min_edges_for_copies(3, 24.0).unwrap() <= 6.0);
        assert!(min_edges_for_copies(3, -1.0).is_err());
    }

    #[test]
    fn split_without_high_edges() {
        let ctx = SparsityContext::new(100, 0.5).unwrap();
        let params = CoreParams::new(k3(), ctx, 1.0, 0.1).unwrap();
        let split = high_low_bad_split(&k5_pendant(), &params, None, 1000).unwrap();
        assert!(split.g_high.is_empty());
        assert_eq!(split.g_bad, vec![(4, 5)]);
        // With a tiny C₀ every edge is high, hence bad.
        let split = high_low_bad_split(&k5_pendant(), &params, Some(1e-9), 1000).unwrap();
        assert_eq!(split.g_high.len(), 11);
        assert_eq!(split.g_bad.len(), 11);
    }
}
