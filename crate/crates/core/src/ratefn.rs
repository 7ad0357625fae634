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


//! Rate function, conditional expectations given planted edges, planted
//! structures and a finite-`n` evaluation of the variational problem over
//! planted families.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::counting::{self, falling_factorial};
use crate::graph::enumerate::canonical_code;
use crate::graph::{Graph, PatternGraph, SparsityContext};
use crate::independence;

/// Patterns with more edges are rejected by the subset expansion.
pub const MAX_SUBSET_EDGES: usize = 20;

/// Relative width of the band around `n p^{Δ/2} = √n` reported as the
/// boundary regime.
pub const BOUNDARY_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum RateError {
    #[error("delta must be positive and finite, got {0}")]
    InvalidDelta(f64),
    #[error("the rate function is only available in the localized regimes, not {0:?}")]
    UnsupportedRegime(Regime),
    #[error("pattern has {0} edges; subset expansion is limited to {MAX_SUBSET_EDGES}")]
    PatternTooLarge(usize),
    #[error("host graph has {got} vertices but n = {n}")]
    HostLargerThanN { got: usize, n: u64 },
    #[error("n = {n} is smaller than the pattern size {v}")]
    HostTooSmall { n: u64, v: usize },
    #[error("planted structure needs {need} vertices but n = {n}")]
    PlantTooLarge { need: u64, n: u64 },
    #[error("invalid planted structure: {0}")]
    InvalidPlant(String),
    #[error("search family is empty")]
    EmptyFamily,
    #[error("no structure in the family meets the constraint")]
    NoFeasibleStructure,
    #[error("V1 and V2 must partition the vertex set: {0}")]
    BadPartition(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Regime {
    /// `√n < n p^{Δ/2}` (and `p < 1`).
    DenseLocalized,
    /// `(log n)^{1/(v_H − 2)} < n p^{Δ/2} ≤ √n`.
    SparseLocalized,
    /// `n p^{Δ/2} ≤ (log n)^{1/(v_H − 2)}`.
    Poisson,
    /// `n p^{Δ/2}` within [`BOUNDARY_TOLERANCE`] of `√n`.
    CliqueOnlyBoundary,
}

impl Regime {
    pub fn tag(&self) -> &'static str {
        match self {
            Regime::DenseLocalized => "dense-localized",
            Regime::SparseLocalized => "sparse-localized",
            Regime::Poisson => "poisson",
            Regime::CliqueOnlyBoundary => "clique-only-boundary",
        }
    }
}

pub fn classify_regime(h: &PatternGraph, ctx: &SparsityContext) -> Regime {
    let s = ctx.regime_parameter(h.delta());
    let n = ctx.n() as f64;
    let root = n.sqrt();
    if ((s - root) / root).abs() <= BOUNDARY_TOLERANCE {
        return Regime::CliqueOnlyBoundary;
    }
    if s > root {
        return Regime::DenseLocalized;
    }
    let poisson_edge = n.ln().powf(1.0 / (h.v() as f64 - 2.0));
    if s > poisson_edge {
        Regime::SparseLocalized
    } else {
        Regime::Poisson
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RateValue {
    /// Coefficient of `n² p^Δ log(1/p)`.
    pub value: f64,
    pub regime: Regime,
    /// `θ_H(δ)`, the hub contribution.
    pub theta: f64,
    /// `½ δ^{2/v_H}`, the clique contribution.
    pub clique: f64,
}

/// `min{θ_H, ½δ^{2/v_H}}` in the dense localized regime and `½δ^{2/v_H}`
/// in the sparse one.
pub fn rate_function(h: &PatternGraph, delta: f64, ctx: &SparsityContext) -> Result<RateValue, RateError> {
    if !(delta > 0.0 && delta.is_finite()) {
        return Err(RateError::InvalidDelta(delta));
    }
    let regime = classify_regime(h, ctx);
    let theta = independence::theta(h, delta).map_err(|_| RateError::InvalidDelta(delta))?;
    let clique = 0.5 * delta.powf(2.0 / h.v() as f64);
    let value = match regime {
        Regime::DenseLocalized => theta.min(clique),
        Regime::SparseLocalized => clique,
        r => return Err(RateError::UnsupportedRegime(r)),
    };
    Ok(RateValue {
        value,
        regime,
        theta,
        clique,
    })
}

/// Non-empty edge subsets `A ⊆ E(H)` grouped by the isomorphism class of the
/// graph they span (isolated vertices dropped).
struct Subpatterns {
    /// `(|A|, v(A), class)` for every non-empty `A`.
    subsets: Vec<(usize, usize, usize)>,
    classes: Vec<Graph>,
}

fn subpatterns(h: &Graph) -> Result<Subpatterns, RateError> {
    let e = h.edge_count();
    if e > MAX_SUBSET_EDGES {
        return Err(RateError::PatternTooLarge(e));
    }
    let mut index: HashMap<(usize, u128), usize> = HashMap::new();
    let mut classes = Vec::new();
    let mut subsets = Vec::with_capacity((1 << e) - 1);
    for mask in 1u32..(1u32 << e) {
        let chosen: Vec<_> = (0..e).filter(|&i| mask >> i & 1 == 1).map(|i| h.edges()[i]).collect();
        let spanned = Graph::from_canonical_edges(h.vertex_count(), chosen);
        let (sub, _) = spanned.strip_isolated();
        let key = (sub.vertex_count(), canonical_code(&sub));
        let next = classes.len();
        let class = *index.entry(key).or_insert(next);
        if class == next {
            classes.push(sub.clone());
        }
        subsets.push((mask.count_ones() as usize, sub.vertex_count(), class));
    }
    Ok(Subpatterns { subsets, classes })
}

fn check_host(g: &Graph, h: &PatternGraph, n: u64) -> Result<(), RateError> {
    if g.vertex_count() as u64 > n {
        return Err(RateError::HostLargerThanN {
            got: g.vertex_count(),
            n,
        });
    }
    if n < h.v() as u64 {
        return Err(RateError::HostTooSmall { n, v: h.v() });
    }
    Ok(())
}

/// Copy counts of every subpattern class in `g`.
fn class_counts(sp: &Subpatterns, g: &Graph) -> Vec<u128> {
    let (core, _) = g.strip_isolated();
    sp.classes
        .iter()
        .map(|c| counting::count_labelled(c, &core).expect("subpatterns have no isolated vertices"))
        .collect()
}

/// `E[N(H, G(n, p) ∪ g)]`, where `g` lives on (a prefix of) the `n` vertices.
///
/// Expanding each factor `p + (1 − p)·1[φ(x)φ(y) ∈ g]` over the copies `φ`
/// gives `Σ_{A ⊆ E(H)} p^{e(H) − |A|} (1 − p)^{|A|} N(H_A, g) (n − v_A)_{v_H − v_A}`
/// with `H_A` the graph spanned by `A`; the `A = ∅` term is `E[N]`.
pub fn exact_conditional_expectation(g: &Graph, h: &PatternGraph, ctx: &SparsityContext) -> Result<f64, RateError> {
    Ok(expected_count(h, ctx) + exact_conditional_gain(g, h, ctx)?)
}

fn expected_count(h: &PatternGraph, ctx: &SparsityContext) -> f64 {
    falling_factorial(ctx.n(), h.v()) * ctx.p().powi(h.e() as i32)
}

/// `E[N | g planted] − E[N]`: the `A ≠ ∅` part of the expansion.
pub fn exact_conditional_gain(g: &Graph, h: &PatternGraph, ctx: &SparsityContext) -> Result<f64, RateError> {
    check_host(g, h, ctx.n())?;
    let sp = subpatterns(h.graph())?;
    let counts = class_counts(&sp, g);
    let (p, n, v, e) = (ctx.p(), ctx.n(), h.v(), h.e());
    Ok(sp
        .subsets
        .iter()
        .map(|&(a, va, class)| {
            if counts[class] == 0 {
                return 0.0;
            }
            p.powi((e - a) as i32) * (1.0 - p).powi(a as i32) * counts[class] as f64 * falling_factorial(n - va as u64, v - va)
        })
        .sum())
}

fn big_falling(n: u64, k: usize) -> BigInt {
    (0..k as u64).fold(BigInt::one(), |acc, i| acc * BigInt::from(n - i))
}

fn rational_of(p: f64) -> BigRational {
    BigRational::from_float(p).expect("finite probability")
}

/// Both sides of `E[N | g] − E[N] ≥ N(H, g)(1 − p^{e(H)})` in exact rational
/// arithmetic, with `p` taken as the exact value of its `f64`.
#[derive(Debug, Clone, PartialEq)]
pub struct PlantingCheck {
    pub gain: BigRational,
    pub bound: BigRational,
}

impl PlantingCheck {
    pub fn holds(&self) -> bool {
        self.gain >= self.bound
    }
}

pub fn planting_check(g: &Graph, h: &PatternGraph, ctx: &SparsityContext) -> Result<PlantingCheck, RateError> {
    check_host(g, h, ctx.n())?;
    let sp = subpatterns(h.graph())?;
    let counts = class_counts(&sp, g);
    let p = rational_of(ctx.p());
    let q = BigRational::one() - &p;
    let (n, v, e) = (ctx.n(), h.v(), h.e());
    let mut p_pow = vec![BigRational::one()];
    let mut q_pow = vec![BigRational::one()];
    for i in 1..=e {
        p_pow.push(&p_pow[i - 1] * &p);
        q_pow.push(&q_pow[i - 1] * &q);
    }
    let mut gain = BigRational::zero();
    for &(a, va, class) in &sp.subsets {
        if counts[class] == 0 {
            continue;
        }
        let weight = BigInt::from(counts[class]) * big_falling(n - va as u64, v - va);
        gain += &p_pow[e - a] * &q_pow[a] * BigRational::from_integer(weight);
    }
    let full = counting::count_pattern(h, g);
    let bound = BigRational::from_integer(BigInt::from(full)) * (BigRational::one() - &p_pow[e]);
    Ok(PlantingCheck { gain, bound })
}

/// `Σ_{∅ ≠ A ⊆ E(H)} N(H_A, g)(1 − p^{|A|}) n^{v_H − v_A} p^{e(H) − |A|}`:
/// the leading-order form of the conditional gain, with powers of `n` in
/// place of falling factorials.
pub fn asymptotic_conditional_gain(g: &Graph, h: &PatternGraph, ctx: &SparsityContext) -> Result<f64, RateError> {
    check_host(g, h, ctx.n())?;
    let sp = subpatterns(h.graph())?;
    let counts = class_counts(&sp, g);
    let (p, n, v, e) = (ctx.p(), ctx.n() as f64, h.v(), h.e());
    Ok(sp
        .subsets
        .iter()
        .map(|&(a, va, class)| {
            counts[class] as f64 * (1.0 - p.powi(a as i32)) * n.powi((v - va) as i32) * p.powi((e - a) as i32)
        })
        .sum())
}

/// Structures planted on fresh, disjoint vertex ranges.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum PlantKind {
    Clique(usize),
    /// `u` vertices adjacent to every other vertex.
    Hub(usize),
    CompleteBipartite(usize, usize),
    Union(Vec<PlantKind>),
}

impl PlantKind {
    /// Vertices consumed from the fresh range (hubs also touch all others).
    fn own_vertices(&self) -> u64 {
        match self {
            PlantKind::Clique(m) => *m as u64,
            PlantKind::Hub(u) => *u as u64,
            PlantKind::CompleteBipartite(a, b) => (*a + *b) as u64,
            PlantKind::Union(parts) => parts.iter().map(|p| p.own_vertices()).sum(),
        }
    }

    fn hub_count(&self) -> usize {
        match self {
            PlantKind::Hub(_) => 1,
            PlantKind::Union(parts) => parts.iter().map(|p| p.hub_count()).sum(),
            _ => 0,
        }
    }

    /// Closed-form edge count on `n` vertices; unions with more than one hub
    /// share hub–hub edges and are counted from the realization instead.
    pub fn edge_count(&self, n: u64) -> Option<u64> {
        match self {
            PlantKind::Clique(m) => Some((*m as u64) * (*m as u64).saturating_sub(1) / 2),
            PlantKind::Hub(u) => {
                let u = *u as u64;
                Some(u * (n - u) + u * u.saturating_sub(1) / 2)
            }
            PlantKind::CompleteBipartite(a, b) => Some((*a * *b) as u64),
            PlantKind::Union(parts) if self.hub_count() <= 1 => parts.iter().map(|p| p.edge_count(n)).sum(),
            PlantKind::Union(_) => None,
        }
    }

    pub fn descriptor(&self) -> String {
        match self {
            PlantKind::Clique(m) => format!("clique({m})"),
            PlantKind::Hub(u) => format!("hub({u})"),
            PlantKind::CompleteBipartite(a, b) => format!("kab({a},{b})"),
            PlantKind::Union(parts) => {
                let inner: Vec<String> = parts.iter().map(|p| p.descriptor()).collect();
                format!("union({})", inner.join(","))
            }
        }
    }

    /// Parses the [`PlantKind::descriptor`] syntax.
    pub fn parse(s: &str) -> Result<Self, RateError> {
        let s = s.trim();
        let bad = || RateError::InvalidPlant(s.to_string());
        let open = s.find('(').ok_or_else(bad)?;
        if !s.ends_with(')') {
            return Err(bad());
        }
        let name = &s[..open];
        let body = &s[open + 1..s.len() - 1];
        let nums = || -> Result<Vec<usize>, RateError> {
            body.split(',').map(|t| t.trim().parse().map_err(|_| bad())).collect()
        };
        match name {
            "clique" => match nums()?.as_slice() {
                [m] => Ok(PlantKind::Clique(*m)),
                _ => Err(bad()),
            },
            "hub" => match nums()?.as_slice() {
                [u] => Ok(PlantKind::Hub(*u)),
                _ => Err(bad()),
            },
            "kab" => match nums()?.as_slice() {
                [a, b] => Ok(PlantKind::CompleteBipartite(*a, *b)),
                _ => Err(bad()),
            },
            "union" => {
                let mut parts = Vec::new();
                let (mut depth, mut start) = (0usize, 0usize);
                for (i, c) in body.char_indices() {
                    match c {
                        '(' => depth += 1,
                        ')' => depth = depth.checked_sub(1).ok_or_else(bad)?,
                        ',' if depth == 0 => {
                            parts.push(PlantKind::parse(&body[start..i])?);
                            start = i + 1;
                        }
                        _ => {}
                    }
                }
                parts.push(PlantKind::parse(&body[start..])?);
                Ok(PlantKind::Union(parts))
            }
            _ => Err(bad()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PlantedStructure {
    pub kind: PlantKind,
    pub graph: Graph,
}

fn realize(kind: &PlantKind, n: usize, next: &mut usize, edges: &mut Vec<(usize, usize)>) {
    match kind {
        PlantKind::Clique(m) => {
            let base = *next;
            *next += m;
            for i in base..*next {
                for j in i + 1..*next {
                    edges.push((i, j));
                }
            }
        }
        PlantKind::Hub(u) => {
            let base = *next;
            *next += u;
            for c in base..*next {
                for w in 0..n {
                    if w != c {
                        edges.push(crate::graph::canonical(c, w));
                    }
                }
            }
        }
        PlantKind::CompleteBipartite(a, b) => {
            let base = *next;
            *next += a + b;
            for i in base..base + a {
                for j in base + a..*next {
                    edges.push((i, j));
                }
            }
        }
        PlantKind::Union(parts) => {
            for p in parts {
                realize(p, n, next, edges);
            }
        }
    }
}

/// Realizes `kind` on `n` vertices; parts occupy consecutive fresh ranges
/// starting at vertex 0.
pub fn plant(kind: &PlantKind, n: u64) -> Result<PlantedStructure, RateError> {
    let need = kind.own_vertices();
    if need > n {
        return Err(RateError::PlantTooLarge { need, n });
    }
    let valid = |k: &PlantKind| -> bool {
        fn ok(k: &PlantKind) -> bool {
            match k {
                PlantKind::Clique(m) => *m >= 1,
                PlantKind::Hub(u) => *u >= 1,
                PlantKind::CompleteBipartite(a, b) => *a >= 1 && *b >= 1,
                PlantKind::Union(parts) => !parts.is_empty() && parts.iter().all(ok),
            }
        }
        ok(k)
    };
    if !valid(kind) {
        return Err(RateError::InvalidPlant(kind.descriptor()));
    }
    let n = n as usize;
    let mut edges = Vec::new();
    realize(kind, n, &mut 0, &mut edges);
    Ok(PlantedStructure {
        kind: kind.clone(),
        graph: Graph::from_canonical_edges(n, edges),
    })
}

/// `⌈δ^{1/v_H} n p^{Δ/2}⌉`: the clique size whose copies alone carry the
/// excess `δ n^{v_H} p^{e(H)}`.
pub fn clique_size_for(h: &PatternGraph, delta: f64, ctx: &SparsityContext) -> usize {
    (delta.powf(1.0 / h.v() as f64) * ctx.regime_parameter(h.delta())).ceil() as usize
}

/// Candidate structures for the variational search. The chain families are
/// nested in their size parameter, so feasibility is monotone along them and
/// the smallest feasible member, which is also the cheapest, is found by
/// bisection.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub enum SearchFamily {
    Cliques { min: usize, max: usize },
    Hubs { min: usize, max: usize },
    Bipartite { a: usize, min_b: usize, max_b: usize },
    Explicit(Vec<PlantKind>),
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VariationalResult {
    pub argmin: PlantKind,
    pub descriptor: String,
    pub edges: u64,
    /// `e(G) log(1/p)`.
    pub cost: f64,
    /// `e(G) / (n² p^Δ)`.
    pub normalized_cost: f64,
    pub conditional_expectation: f64,
    pub target: f64,
    /// Structures whose conditional expectation was evaluated.
    pub evaluated: usize,
}

struct Evaluation {
    kind: PlantKind,
    edges: u64,
    cond: f64,
}

fn evaluate(kind: &PlantKind, h: &PatternGraph, ctx: &SparsityContext) -> Result<Evaluation, RateError> {
    let planted = plant(kind, ctx.n())?;
    let cond = exact_conditional_expectation(&planted.graph, h, ctx)?;
    Ok(Evaluation {
        kind: kind.clone(),
        edges: planted.graph.edge_count() as u64,
        cond,
    })
}

/// Smallest feasible member of a nested chain `make(lo..=hi)`.
fn search_chain<F>(
    make: F,
    lo: usize,
    hi: usize,
    h: &PatternGraph,
    ctx: &SparsityContext,
    target: f64,
    evaluated: &mut usize,
) -> Result<Option<Evaluation>, RateError>
where
    F: Fn(usize) -> PlantKind,
{
    if lo > hi {
        return Ok(None);
    }
    let top = evaluate(&make(hi), h, ctx)?;
    *evaluated += 1;
    if top.cond < target {
        return Ok(None);
    }
    let (mut a, mut b, mut best) = (lo, hi, top);
    while a < b {
        let mid = a + (b - a) / 2;
        let ev = evaluate(&make(mid), h, ctx)?;
        *evaluated += 1;
        if ev.cond >= target {
            b = mid;
            best = ev;
        } else {
            a = mid + 1;
        }
    }
    Ok(Some(best))
}

/// Minimizes `e(G) log(1/p)` over the planted structures of `families`
/// subject to `E[N(H, G(n, p) ∪ G)] ≥ (1 + δ) n^{v_H} p^{e(H)}`. This is an
/// upper bound for the unrestricted minimum. Ties go to the lexicographically
/// smallest descriptor.
pub fn variational_upper_bound(
    h: &PatternGraph,
    delta: f64,
    ctx: &SparsityContext,
    families: &[SearchFamily],
) -> Result<VariationalResult, RateError> {
    if !(delta > 0.0 && delta.is_finite()) {
        return Err(RateError::InvalidDelta(delta));
    }
    if families.is_empty() {
        return Err(RateError::EmptyFamily);
    }
    let target = (1.0 + delta) * ctx.copy_scale(h);
    let mut candidates = Vec::new();
    let mut evaluated = 0;
    for fam in families {
        match fam {
            SearchFamily::Cliques { min, max } => {
                candidates.extend(search_chain(PlantKind::Clique, *min, *max, h, ctx, target, &mut evaluated)?);
            }
            SearchFamily::Hubs { min, max } => {
                candidates.extend(search_chain(PlantKind::Hub, *min, *max, h, ctx, target, &mut evaluated)?);
            }
            SearchFamily::Bipartite { a, min_b, max_b } => {
                let a = *a;
                candidates.extend(search_chain(
                    |b| PlantKind::CompleteBipartite(a, b),
                    *min_b,
                    *max_b,
                    h,
                    ctx,
                    target,
                    &mut evaluated,
                )?);
            }
            SearchFamily::Explicit(kinds) => {
                if kinds.is_empty() {
                    continue;
                }
                let evals: Result<Vec<Evaluation>, RateError> =
                    kinds.par_iter().map(|k| evaluate(k, h, ctx)).collect();
                let evals = evals?;
                evaluated += evals.len();
                candidates.extend(evals.into_iter().filter(|e| e.cond >= target));
            }
        }
    }
    if evaluated == 0 {
        return Err(RateError::EmptyFamily);
    }
    let best = candidates
        .into_iter()
        .min_by(|a, b| a.edges.cmp(&b.edges).then_with(|| a.kind.descriptor().cmp(&b.kind.descriptor())))
        .ok_or(RateError::NoFeasibleStructure)?;
    let cost = best.edges as f64 * ctx.log_inv_p();
    Ok(VariationalResult {
        descriptor: best.kind.descriptor(),
        argmin: best.kind,
        edges: best.edges,
        cost,
        normalized_cost: best.edges as f64 / ctx.edge_scale(h.delta()),
        conditional_expectation: best.cond,
        target,
        evaluated,
    })
}

fn check_partition(g: &Graph, v1: &[usize], v2: &[usize]) -> Result<Vec<bool>, RateError> {
    let n = g.vertex_count();
    let mut side = vec![None; n];
    for (set, label) in [(v1, false), (v2, true)] {
        for &x in set {
            if x >= n {
                return Err(RateError::BadPartition(format!("vertex {x} out of range")));
            }
            if side[x].replace(label).is_some() {
                return Err(RateError::BadPartition(format!("vertex {x} listed twice")));
            }
        }
    }
    side.into_iter()
        .enumerate()
        .map(|(x, s)| s.ok_or_else(|| RateError::BadPartition(format!("vertex {x} missing"))))
        .collect()
}

/// `μ(κ) = N(C₄, G[V₁, V₂]) + 4κ N_{V₂}(K_{1,2}, G)`, where `G[V₁, V₂]` keeps
/// only the edges between the parts.
pub fn c4_mu(g: &Graph, v1: &[usize], v2: &[usize], kappa: f64) -> Result<f64, RateError> {
    let side = check_partition(g, v1, v2)?;
    let cross = g.filter_edges(|_, (a, b)| side[a] != side[b]);
    let c4 = crate::graph::generators::cycle(4).unwrap();
    let n_c4 = counting::count_labelled(&c4, &cross).unwrap();
    let cherries = counting::count_k12_centered(g, v2).unwrap();
    Ok(n_c4 as f64 + 4.0 * kappa * cherries as f64)
}

/// Both conditions describing near-optimizers for `C₄` at `p ~ n^{-1/2}`:
/// `N(C₄, G[V₁]) ≥ δ(1 − ε) x n⁴p⁴` and `μ(κ) ≥ δ(1 − ε)(1 − x) n⁴p⁴`,
/// searched over `x ∈ {0, 1/k, …, 1}` with `κ = np²`. Returns the first
/// feasible `x`.
pub fn c4_boundary_feasible(
    g: &Graph,
    v1: &[usize],
    v2: &[usize],
    delta: f64,
    eps: f64,
    ctx: &SparsityContext,
    grid: usize,
) -> Result<Option<f64>, RateError> {
    let kappa = ctx.n() as f64 * ctx.p() * ctx.p();
    let mu = c4_mu(g, v1, v2, kappa)?;
    let inner = g.induced(v1);
    let c4 = crate::graph::generators::cycle(4).unwrap();
    let n1 = counting::count_labelled(&c4, &inner).unwrap() as f64;
    let scale = delta * (1.0 - eps) * (ctx.n() as f64 * ctx.p()).powi(4);
    let grid = grid.max(1);
    Ok((0..=grid)
        .map(|i| i as f64 / grid as f64)
        .find(|&x| n1 >= scale * x && mu >= scale * (1.0 - x)))
}
