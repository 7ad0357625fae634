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


//! Exact counts of labelled copies and homomorphisms.
//!
//! A labelled copy of `H` in `G` is an injective map `V(H) → V(G)` sending
//! edges to edges. The search maps pattern vertices in a fixed order in which
//! every vertex (after the first of its component) has an earlier neighbour,
//! so candidates come from a neighbour list of an already-placed image. The
//! top level is split by the image of the first pattern vertex and run on the
//! rayon pool; partial results are combined with exact integer addition, so
//! every count is independent of scheduling.
//!
//! Counts are `u128`: enumeration visits copies one at a time, so no count
//! this module can produce approaches 2^128.

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::graph::{canonical, Edge, Graph, PatternGraph, SparsityContext};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum CountError {
    #[error("pattern has isolated vertices; strip them before counting")]
    IsolatedVertices,
    #[error("edge ({0}, {1}) is not in the host graph")]
    EdgeNotInGraph(usize, usize),
    #[error("vertex {vertex} is outside 0..{n}")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("path signature must be nonempty and consist of 0/1, got {0:?}")]
    BadSignature(String),
    #[error("host size {n} is smaller than the pattern size {v}")]
    HostTooSmall { n: u64, v: usize },
    #[error("p must lie in [0, 1], got {0}")]
    BadProbability(f64),
}

/// Order in which pattern vertices are mapped.
#[derive(Debug, Clone)]
struct Plan {
    order: Vec<usize>,
    /// For position `i`, the earlier positions adjacent to `order[i]`.
    back: Vec<Vec<usize>>,
    degree: Vec<usize>,
}

impl Plan {
    /// `roots` are placed first, in the given order; the rest follows a
    /// breadth-first order preferring high-degree vertices, restarting in
    /// each further component.
    fn new(h: &Graph, roots: &[usize]) -> Plan {
        let n = h.vertex_count();
        let mut placed = vec![false; n];
        let mut order = Vec::with_capacity(n);
        for &r in roots {
            placed[r] = true;
            order.push(r);
        }
        let mut head = 0;
        while order.len() < n {
            if head == order.len() {
                let start = (0..n)
                    .filter(|&v| !placed[v])
                    .max_by_key(|&v| (h.degree(v), std::cmp::Reverse(v)))
                    .unwrap();
                placed[start] = true;
                order.push(start);
            }
            while head < order.len() {
                let v = order[head];
                head += 1;
                let mut next: Vec<usize> = h.neighbors(v).iter().copied().filter(|&w| !placed[w]).collect();
                next.sort_by_key(|&w| (std::cmp::Reverse(h.degree(w)), w));
                for w in next {
                    placed[w] = true;
                    order.push(w);
                }
            }
        }
        let mut pos = vec![0; n];
        for (i, &v) in order.iter().enumerate() {
            pos[v] = i;
        }
        let back = order
            .iter()
            .enumerate()
            .map(|(i, &v)| {
                let mut b: Vec<usize> = h.neighbors(v).iter().map(|&w| pos[w]).filter(|&j| j < i).collect();
                b.sort_unstable();
                b
            })
            .collect();
        let degree = order.iter().map(|&v| h.degree(v)).collect();
        Plan { order, back, degree }
    }

    fn len(&self) -> usize {
        self.order.len()
    }
}

/// Depth-first extension of a partial map. `images[i]` is the image of the
/// pattern vertex at position `i`; `visit` sees complete maps in position
/// order.
fn extend<F: FnMut(&[usize])>(
    plan: &Plan,
    g: &Graph,
    injective: bool,
    images: &mut Vec<usize>,
    visit: &mut F,
) {
    let pos = images.len();
    if pos == plan.len() {
        visit(images);
        return;
    }
    let back = &plan.back[pos];
    let need = plan.degree[pos];
    if back.is_empty() {
        for w in 0..g.vertex_count() {
            if !injective || (g.degree(w) >= need && !images.contains(&w)) {
                images.push(w);
                extend(plan, g, injective, images, visit);
                images.pop();
            }
        }
        return;
    }
    // Scan the shortest neighbour list among the placed neighbours.
    let anchor = *back
        .iter()
        .min_by_key(|&&j| g.degree(images[j]))
        .unwrap();
    let others: Vec<usize> = back.iter().copied().filter(|&j| j != anchor).collect();
    for &w in g.neighbors(images[anchor]) {
        if injective && (g.degree(w) < need || images.contains(&w)) {
            continue;
        }
        if !others.iter().all(|&j| g.has_edge(images[j], w)) {
            continue;
        }
        images.push(w);
        extend(plan, g, injective, images, visit);
        images.pop();
    }
}

/// Maps `phi` (indexed by pattern vertex) of all labelled copies, folded in
/// parallel. `visit` receives the accumulator and the map indexed by
/// pattern vertex; `merge` must be commutative and associative for the
/// result to be schedule-independent.
pub(crate) fn fold_copies<T, I, V, M>(
    h: &Graph,
    g: &Graph,
    roots: &[(usize, usize)],
    injective: bool,
    init: I,
    visit: V,
    merge: M,
) -> T
where
    T: Send,
    I: Fn() -> T + Sync + Send,
    V: Fn(&mut T, &[usize]) + Sync + Send,
    M: Fn(T, T) -> T + Sync + Send,
{
    let root_vertices: Vec<usize> = roots.iter().map(|r| r.0).collect();
    let plan = Plan::new(h, &root_vertices);
    let k = h.vertex_count();
    if k == 0 {
        let mut acc = init();
        visit(&mut acc, &[]);
        return acc;
    }
    let pinned: Vec<usize> = roots.iter().map(|r| r.1).collect();
    // Validate pinned images against the pattern structure.
    for i in 0..pinned.len() {
        for &j in &plan.back[i] {
            if !g.has_edge(pinned[i], pinned[j]) {
                return init();
            }
        }
        if injective && (pinned[..i].contains(&pinned[i]) || g.degree(pinned[i]) < plan.degree[i]) {
            return init();
        }
    }
    let to_pattern = |images: &[usize], phi: &mut Vec<usize>| {
        for (i, &w) in images.iter().enumerate() {
            phi[plan.order[i]] = w;
        }
    };
    let first_choices: Vec<usize> = if !pinned.is_empty() {
        vec![usize::MAX]
    } else {
        (0..g.vertex_count())
            .filter(|&w| !injective || g.degree(w) >= plan.degree[0])
            .collect()
    };
    first_choices
        .into_par_iter()
        .fold(&init, |mut acc, first| {
            let mut images = if first == usize::MAX { pinned.clone() } else { vec![first] };
            images.reserve(k);
            let mut phi = vec![0usize; k];
            extend(&plan, g, injective, &mut images, &mut |imgs: &[usize]| {
                to_pattern(imgs, &mut phi);
                visit(&mut acc, &phi);
            });
            acc
        })
        .reduce(&init, &merge)
}

fn require_no_isolated(h: &Graph) -> Result<(), CountError> {
    if h.has_isolated_vertices() {
        Err(CountError::IsolatedVertices)
    } else {
        Ok(())
    }
}

/// `N(H, G)`: the number of labelled copies of `h` in `g`.
pub fn count_labelled(h: &Graph, g: &Graph) -> Result<u128, CountError> {
    require_no_isolated(h)?;
    let m = g.vertex_count();
    if g.edge_count() == m * m.saturating_sub(1) / 2 {
        // Every injective map into a complete graph is a copy.
        return Ok((0..h.vertex_count()).map(|i| m.saturating_sub(i) as u128).product());
    }
    Ok(fold_copies(h, g, &[], true, || 0u128, |acc, _| *acc += 1, |a, b| a + b))
}

pub fn count_pattern(h: &PatternGraph, g: &Graph) -> u128 {
    count_labelled(h.graph(), g).expect("pattern graphs have no isolated vertices")
}

/// `N(H, G, e)`: labelled copies whose image contains the edge `e`.
///
/// Exactly one pattern edge maps onto `e` in any copy through it, so the
/// count is a sum over ordered pattern edges `(a, b)` of the copies with
/// `a ↦ u, b ↦ v`.
pub fn count_through_edge(h: &Graph, g: &Graph, e: Edge) -> Result<u128, CountError> {
    require_no_isolated(h)?;
    let (u, v) = e;
    if !g.has_edge(u, v) {
        return Err(CountError::EdgeNotInGraph(u, v));
    }
    let mut total = 0u128;
    for &(a, b) in h.edges() {
        for (x, y) in [(a, b), (b, a)] {
            total += fold_copies(h, g, &[(x, u), (y, v)], true, || 0u128, |acc, _| *acc += 1, |p, q| p + q);
        }
    }
    Ok(total)
}

/// Per-edge copy counts indexed like `g.edges()`, computed in one pass.
pub fn per_edge_counts(h: &Graph, g: &Graph) -> Result<Vec<u128>, CountError> {
    require_no_isolated(h)?;
    let m = g.edge_count();
    let h_edges = h.edges();
    let counts = fold_copies(
        h,
        g,
        &[],
        true,
        || vec![0u128; m],
        |acc, phi| {
            for &(a, b) in h_edges {
                let idx = g.edge_index(phi[a], phi[b]).expect("copy edge in host");
                acc[idx] += 1;
            }
        },
        |mut a, b| {
            a.iter_mut().zip(b).for_each(|(x, y)| *x += y);
            a
        },
    );
    // Every copy was counted once per pattern edge, i.e. once per ordered
    // orientation of the host edge's preimage: no further normalisation.
    Ok(counts)
}

/// Total count and optional per-edge breakdown.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CountReport {
    pub total: u128,
    pub per_edge: Option<Vec<(Edge, u128)>>,
}

pub fn count_report(h: &Graph, g: &Graph, per_edge: bool) -> Result<CountReport, CountError> {
    let total = count_labelled(h, g)?;
    let per_edge = if per_edge {
        let counts = per_edge_counts(h, g)?;
        Some(g.edges().iter().copied().zip(counts).collect())
    } else {
        None
    };
    Ok(CountReport { total, per_edge })
}

/// Homomorphism count: all maps `V(H) → V(G)` preserving edges.
pub fn count_hom(h: &Graph, g: &Graph) -> u128 {
    fold_copies(h, g, &[], false, || 0u128, |acc, _| *acc += 1, |a, b| a + b)
}

/// `tr(A^k)` for the adjacency matrix `A` of `g`, exactly.
pub fn adjacency_trace_power(g: &Graph, k: u32) -> u128 {
    let n = g.vertex_count();
    if k == 0 {
        return n as u128;
    }
    let a: Vec<Vec<u128>> = g
        .adjacency_matrix()
        .into_iter()
        .map(|row| row.into_iter().map(u128::from).collect())
        .collect();
    let mut power = a.clone();
    for _ in 1..k {
        let mut next = vec![vec![0u128; n]; n];
        for (row, out) in power.iter().zip(next.iter_mut()) {
            for (l, &w) in row.iter().enumerate() {
                if w == 0 {
                    continue;
                }
                for &j in g.neighbors(l) {
                    out[j] += w;
                }
            }
        }
        power = next;
    }
    (0..n).map(|i| power[i][i]).sum()
}

/// Copies split by their use of low-degree edges at threshold `D`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct N11Counts {
    /// Copies using at least one edge with both endpoints of degree ≤ D.
    pub n11: u128,
    /// Copies using only such edges.
    pub tilde_n11: u128,
    /// `n11 − tilde_n11`: copies mixing both kinds of edge.
    pub bar_n11: u128,
}

pub fn count_n11(h: &Graph, g: &Graph, d: usize) -> Result<N11Counts, CountError> {
    require_no_isolated(h)?;
    let low = |x: usize| g.degree(x) <= d;
    let h_edges = h.edges();
    let (n11, tilde_n11) = fold_copies(
        h,
        g,
        &[],
        true,
        || (0u128, 0u128),
        |acc, phi| {
            let inside = h_edges.iter().filter(|&&(a, b)| low(phi[a]) && low(phi[b])).count();
            if inside > 0 {
                acc.0 += 1;
            }
            if inside == h_edges.len() {
                acc.1 += 1;
            }
        },
        |a, b| (a.0 + b.0, a.1 + b.1),
    );
    Ok(N11Counts {
        n11,
        tilde_n11,
        bar_n11: n11 - tilde_n11,
    })
}

/// Edge-class pattern along a path: bit `i` is `false` when the `i`-th edge
/// lies in `E₁,₁` and `true` otherwise.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct PathSignature(Vec<bool>);

impl PathSignature {
    pub fn new(bits: Vec<bool>) -> Result<Self, CountError> {
        if bits.is_empty() {
            return Err(CountError::BadSignature(String::new()));
        }
        Ok(PathSignature(bits))
    }

    pub fn parse(s: &str) -> Result<Self, CountError> {
        let bits: Option<Vec<bool>> = s
            .chars()
            .map(|c| match c {
                '0' => Some(false),
                '1' => Some(true),
                _ => None,
            })
            .collect();
        match bits {
            Some(b) if !b.is_empty() => Ok(PathSignature(b)),
            _ => Err(CountError::BadSignature(s.to_string())),
        }
    }

    pub fn bits(&self) -> &[bool] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// All `2^ℓ` signatures of length `ℓ`.
    pub fn all(len: usize) -> impl Iterator<Item = PathSignature> {
        (0u64..1 << len).map(move |m| PathSignature((0..len).map(|i| m >> i & 1 == 1).collect()))
    }
}

impl std::fmt::Display for PathSignature {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for &b in &self.0 {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

fn check_vertex(g: &Graph, v: usize) -> Result<(), CountError> {
    if v >= g.vertex_count() {
        Err(CountError::VertexOutOfRange {
            vertex: v,
            n: g.vertex_count(),
        })
    } else {
        Ok(())
    }
}

fn paths_from<F: Fn(usize, usize, usize) -> bool>(
    g: &Graph,
    len: usize,
    v2: usize,
    edge_ok: &F,
    walk: &mut Vec<usize>,
) -> u128 {
    let step = walk.len() - 1;
    let last = *walk.last().unwrap();
    if step == len {
        return (last == v2) as u128;
    }
    let mut total = 0;
    for &w in g.neighbors(last) {
        if walk.contains(&w) || (w == v2) != (step + 1 == len) || !edge_ok(step, last, w) {
            continue;
        }
        walk.push(w);
        total += paths_from(g, len, v2, edge_ok, walk);
        walk.pop();
    }
    total
}

/// Labelled copies of the path with `s.len()` edges from `v1` to `v2` whose
/// `i`-th edge is in `E₁,₁` (both endpoints of degree ≤ `d`) exactly when
/// `s_i = 0`.
pub fn count_paths_signed(g: &Graph, s: &PathSignature, v1: usize, v2: usize, d: usize) -> Result<u128, CountError> {
    check_vertex(g, v1)?;
    check_vertex(g, v2)?;
    let low = |x: usize| g.degree(x) <= d;
    let bits = s.bits();
    let edge_ok = |i: usize, a: usize, b: usize| (low(a) && low(b)) != bits[i];
    Ok(paths_from(g, s.len(), v2, &edge_ok, &mut vec![v1]))
}

/// Labelled copies of the path with `len` edges from `v1` to `v2`.
pub fn count_paths(g: &Graph, len: usize, v1: usize, v2: usize) -> Result<u128, CountError> {
    check_vertex(g, v1)?;
    check_vertex(g, v2)?;
    Ok(paths_from(g, len, v2, &|_, _, _| true, &mut vec![v1]))
}

/// `N_U(K_{1,2}, G)`: labelled cherries with centre in `U` and both leaves
/// outside `U`.
pub fn count_k12_centered(g: &Graph, u: &[usize]) -> Result<u128, CountError> {
    let mut in_u = vec![false; g.vertex_count()];
    for &c in u {
        check_vertex(g, c)?;
        in_u[c] = true;
    }
    Ok((0..g.vertex_count())
        .filter(|&c| in_u[c])
        .map(|c| {
            let k = g.neighbors(c).iter().filter(|&&w| !in_u[w]).count() as u128;
            k * k.saturating_sub(1)
        })
        .sum())
}

/// `(n)_k = n (n − 1) ⋯ (n − k + 1)` as a float.
pub fn falling_factorial(n: u64, k: usize) -> f64 {
    (0..k as u64).map(|i| n.saturating_sub(i) as f64).product()
}

/// `E[N(H, G(n, p))] = (n)_{v_H} p^{e(H)}`; `p` may be 0 or 1 here.
pub fn expected_count(h: &Graph, n: u64, p: f64) -> Result<f64, CountError> {
    let v = h.vertex_count();
    if n < v as u64 {
        return Err(CountError::HostTooSmall { n, v });
    }
    if !(0.0..=1.0).contains(&p) {
        return Err(CountError::BadProbability(p));
    }
    Ok(falling_factorial(n, v) * p.powi(h.edge_count() as i32))
}

pub fn expected_pattern_count(h: &PatternGraph, ctx: &SparsityContext) -> Result<f64, CountError> {
    expected_count(h.graph(), ctx.n(), ctx.p())
}

/// Host edges used by the copy `phi`, as canonical pairs.
pub fn copy_edges(h: &Graph, phi: &[usize]) -> Vec<Edge> {
    h.edges().iter().map(|&(a, b)| canonical(phi[a], phi[b])).collect()
}
