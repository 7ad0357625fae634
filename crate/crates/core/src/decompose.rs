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


//! Bipartite double covers, König edge colouring, perfect matchings that
//! avoid given edges, and covers of regular graphs by vertex-disjoint cycles
//! and single edges.

use serde::Serialize;
use thiserror::Error;

use crate::graph::{canonical, Edge, Graph};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DecomposeError {
    #[error("graph is not bipartite")]
    NotBipartite,
    #[error("graph is not regular")]
    NotRegular,
    #[error("degree {got} is below the required minimum {min}")]
    DegreeTooSmall { got: usize, min: usize },
    #[error("{got} edges to avoid but at most {max} are allowed")]
    TooManyAvoided { got: usize, max: usize },
    #[error("edge ({0}, {1}) is not in the graph")]
    EdgeNotInGraph(usize, usize),
    #[error("edges ({0}, {1}) and ({2}, {3}) do not share their middle vertex")]
    NotAdjacentPair(usize, usize, usize, usize),
    #[error("graph is not connected")]
    NotConnected,
}

/// `H × K₂`: vertex `v` of `h` lifts to `v` (layer 1) and `v + n` (layer 2),
/// and `uv ∈ E(h)` lifts to `{u, v + n}` and `{v, u + n}`. Returns the cover
/// and the projection back to `V(h)`.
pub fn double_cover(h: &Graph) -> (Graph, Vec<usize>) {
    let n = h.vertex_count();
    let mut edges = Vec::with_capacity(2 * h.edge_count());
    for &(u, v) in h.edges() {
        edges.push((u, v + n));
        edges.push((v, u + n));
    }
    let projection = (0..2 * n).map(|x| x % n.max(1)).collect();
    (Graph::from_canonical_edges(2 * n, edges), projection)
}

/// Colour of every edge, indexed like `g.edges()`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EdgeColoring {
    pub colors: Vec<usize>,
    pub num_colors: usize,
}

impl EdgeColoring {
    /// Edges of colour `c`.
    pub fn class(&self, g: &Graph, c: usize) -> Vec<Edge> {
        g.edges()
            .iter()
            .zip(&self.colors)
            .filter(|&(_, &k)| k == c)
            .map(|(&e, _)| e)
            .collect()
    }

    /// Edges sharing an endpoint get different colours.
    pub fn is_proper(&self, g: &Graph) -> bool {
        (0..g.vertex_count()).all(|v| {
            let mut seen = vec![false; self.num_colors];
            g.neighbors(v).iter().all(|&w| {
                let c = self.colors[g.edge_index(v, w).unwrap()];
                c < self.num_colors && !std::mem::replace(&mut seen[c], true)
            })
        })
    }
}

/// Proper edge colouring of a bipartite graph with exactly `Δ(g)` colours.
///
/// Edges are coloured in canonical order. For an edge `uv`, take the
/// smallest colour `a` free at `u` and `b` free at `v`; if `a` is not free at
/// `v`, the maximal path from `v` alternating colours `a`, `b` cannot reach
/// `u` in a bipartite graph, so swapping `a` and `b` along it frees `a` at
/// `v` without disturbing `u`.
pub fn konig_coloring(g: &Graph) -> Result<EdgeColoring, DecomposeError> {
    if !g.is_bipartite() {
        return Err(DecomposeError::NotBipartite);
    }
    let k = g.max_degree();
    let n = g.vertex_count();
    let mut at: Vec<Vec<Option<usize>>> = vec![vec![None; k]; n];
    let mut colors = vec![usize::MAX; g.edge_count()];
    let free = |at: &Vec<Vec<Option<usize>>>, x: usize| at[x].iter().position(Option::is_none).unwrap();
    for (idx, &(u, v)) in g.edges().iter().enumerate() {
        let a = free(&at, u);
        if at[v][a].is_some() {
            let b = free(&at, v);
            let mut path = Vec::new();
            let (mut x, mut c) = (v, a);
            while let Some(e) = at[x][c] {
                path.push(e);
                let (p, q) = g.edges()[e];
                x = if p == x { q } else { p };
                c = if c == a { b } else { a };
            }
            for &e in &path {
                let (p, q) = g.edges()[e];
                at[p][colors[e]] = None;
                at[q][colors[e]] = None;
            }
            for &e in &path {
                let (p, q) = g.edges()[e];
                colors[e] = if colors[e] == a { b } else { a };
                at[p][colors[e]] = Some(e);
                at[q][colors[e]] = Some(e);
            }
        }
        colors[idx] = a;
        at[u][a] = Some(idx);
        at[v][a] = Some(idx);
    }
    Ok(EdgeColoring { colors, num_colors: k })
}

fn require_regular(h: &Graph, min: usize) -> Result<usize, DecomposeError> {
    let d = h.regular_degree().ok_or(DecomposeError::NotRegular)?;
    if d < min {
        return Err(DecomposeError::DegreeTooSmall { got: d, min });
    }
    Ok(d)
}

/// A perfect matching of a `Δ`-regular bipartite graph avoiding up to
/// `Δ − 1` prescribed edges: the `Δ` colour classes of a König colouring are
/// disjoint perfect matchings, so one of them misses every avoided edge.
pub fn matching_avoiding(h: &Graph, avoid: &[Edge]) -> Result<Vec<Edge>, DecomposeError> {
    let d = require_regular(h, 2)?;
    if avoid.len() > d - 1 {
        return Err(DecomposeError::TooManyAvoided {
            got: avoid.len(),
            max: d - 1,
        });
    }
    let coloring = konig_coloring(h)?;
    let mut hit = vec![false; d];
    for &(u, v) in avoid {
        let i = h.edge_index(u, v).ok_or(DecomposeError::EdgeNotInGraph(u, v))?;
        hit[coloring.colors[i]] = true;
    }
    let j = hit.iter().position(|&x| !x).expect("pigeonhole over colour classes");
    Ok(coloring.class(h, j))
}

/// A part of a cycle/edge cover.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum CoverPart {
    /// Vertices in cyclic order; length at least 3.
    Cycle(Vec<usize>),
    Edge(usize, usize),
}

impl CoverPart {
    pub fn vertices(&self) -> Vec<usize> {
        match self {
            CoverPart::Cycle(vs) => vs.clone(),
            CoverPart::Edge(u, v) => vec![*u, *v],
        }
    }

    pub fn edges(&self) -> Vec<Edge> {
        match self {
            CoverPart::Cycle(vs) => (0..vs.len())
                .map(|i| canonical(vs[i], vs[(i + 1) % vs.len()]))
                .collect(),
            CoverPart::Edge(u, v) => vec![canonical(*u, *v)],
        }
    }

    pub fn contains(&self, x: usize) -> bool {
        match self {
            CoverPart::Cycle(vs) => vs.contains(&x),
            CoverPart::Edge(u, v) => *u == x || *v == x,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CycleEdgeCover {
    pub components: Vec<CoverPart>,
}

/// Vertex-disjoint cycles and single edges of a `Δ`-regular graph (`Δ ≥ 3`)
/// covering every vertex and avoiding the edge `e`.
///
/// Colour the double cover with `Δ` colours and pick a class containing
/// neither lift of `e` (at most two classes are excluded). The class is a
/// perfect matching `v ↦ σ(v) + n`, i.e. a fixed-point-free permutation `σ`
/// of `V(h)` with `v σ(v) ∈ E(h)`; its 2-cycles project to single edges and
/// its longer cycles to cycles of `h`.
pub fn cycle_edge_cover_avoiding(h: &Graph, e: Edge) -> Result<CycleEdgeCover, DecomposeError> {
    let d = require_regular(h, 3)?;
    let (u1, u2) = e;
    if !h.has_edge(u1, u2) {
        return Err(DecomposeError::EdgeNotInGraph(u1, u2));
    }
    let n = h.vertex_count();
    let (cover, _) = double_cover(h);
    let coloring = konig_coloring(&cover).expect("double covers are bipartite");
    let lift1 = cover.edge_index(u1, u2 + n).unwrap();
    let lift2 = cover.edge_index(u2, u1 + n).unwrap();
    let j0 = (0..d)
        .find(|&j| coloring.colors[lift1] != j && coloring.colors[lift2] != j)
        .expect("at least three colours");
    Ok(cover_from_class(h, &cover, &coloring, j0))
}

fn cover_from_class(h: &Graph, cover: &Graph, coloring: &EdgeColoring, j: usize) -> CycleEdgeCover {
    let n = h.vertex_count();
    let mut sigma = vec![usize::MAX; n];
    for (&(a, b), &c) in cover.edges().iter().zip(&coloring.colors) {
        if c == j {
            sigma[a] = b - n;
        }
    }
    let mut seen = vec![false; n];
    let mut components = Vec::new();
    for start in 0..n {
        if seen[start] {
            continue;
        }
        let mut cyc = Vec::new();
        let mut x = start;
        while !seen[x] {
            seen[x] = true;
            cyc.push(x);
            x = sigma[x];
        }
        components.push(if cyc.len() == 2 {
            CoverPart::Edge(cyc[0].min(cyc[1]), cyc[0].max(cyc[1]))
        } else {
            CoverPart::Cycle(cyc)
        });
    }
    CycleEdgeCover { components }
}

/// Checks that `cover` consists of vertex-disjoint cycles and single edges of
/// `h` covering all of `V(h)` and not using `forbidden`.
pub fn validate_cycle_edge_cover(h: &Graph, forbidden: Edge, cover: &CycleEdgeCover) -> Result<(), String> {
    let mut owner = vec![None; h.vertex_count()];
    for (i, part) in cover.components.iter().enumerate() {
        if let CoverPart::Cycle(vs) = part {
            if vs.len() < 3 {
                return Err(format!("component {i} is a cycle of length {}", vs.len()));
            }
        }
        for x in part.vertices() {
            if x >= owner.len() {
                return Err(format!("component {i} uses unknown vertex {x}"));
            }
            if let Some(j) = owner[x].replace(i) {
                return Err(format!("vertex {x} lies in components {j} and {i}"));
            }
        }
        for (a, b) in part.edges() {
            if !h.has_edge(a, b) {
                return Err(format!("component {i} uses non-edge ({a}, {b})"));
            }
            if (a, b) == canonical(forbidden.0, forbidden.1) {
                return Err(format!("component {i} uses the forbidden edge"));
            }
        }
    }
    match owner.iter().position(Option::is_none) {
        Some(x) => Err(format!("vertex {x} is uncovered")),
        None => Ok(()),
    }
}

/// Cover parts `F₁, …, F_m` ordered so that `u₁ ∈ F₁`, `u₂ ∈ F₂`, `v ∈ F₃`
/// (the first three may coincide) and every later part is attached to an
/// earlier one by the edge `attachments[i − 3] = (v_i′, v_i″)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OrderedCover {
    pub parts: Vec<CoverPart>,
    /// For each part from the fourth on: a vertex of it and an adjacent
    /// vertex of an earlier part.
    pub attachments: Vec<(usize, usize)>,
}

/// Ordered cover for the adjacent pair `q = ((u₁, u₂), (u₂, v))` of a
/// connected `Δ`-regular graph, `Δ ≥ 3`, avoiding the edge `u₁u₂`.
pub fn ordered_cover(h: &Graph, q: (Edge, Edge)) -> Result<OrderedCover, DecomposeError> {
    let ((u1, u2), (w, v)) = q;
    if w != u2 || u1 == v {
        return Err(DecomposeError::NotAdjacentPair(u1, u2, w, v));
    }
    if !h.has_edge(u2, v) {
        return Err(DecomposeError::EdgeNotInGraph(u2, v));
    }
    let base = cycle_edge_cover_avoiding(h, (u1, u2))?;
    if !h.is_connected() {
        return Err(DecomposeError::NotConnected);
    }
    let comps = base.components;
    let find = |x: usize| comps.iter().position(|c| c.contains(x)).unwrap();
    let head = [find(u1), find(u2), find(v)];
    let mut parts: Vec<CoverPart> = head.iter().map(|&i| comps[i].clone()).collect();
    let mut covered = vec![false; h.vertex_count()];
    for &i in &head {
        for x in comps[i].vertices() {
            covered[x] = true;
        }
    }
    let mut rest: Vec<usize> = (0..comps.len()).filter(|i| !head.contains(i)).collect();
    let mut attachments = Vec::new();
    while !rest.is_empty() {
        // First remaining part with an edge into the covered set; one exists
        // because h is connected.
        let (k, link) = rest
            .iter()
            .enumerate()
            .find_map(|(k, &i)| {
                comps[i].vertices().into_iter().find_map(|a| {
                    h.neighbors(a).iter().find(|&&b| covered[b]).map(|&b| (k, (a, b)))
                })
            })
            .expect("connected graph");
        let i = rest.remove(k);
        for x in comps[i].vertices() {
            covered[x] = true;
        }
        parts.push(comps[i].clone());
        attachments.push(link);
    }
    Ok(OrderedCover { parts, attachments })
}

/// Checks every property of an ordered cover for `q = ((u₁, u₂), (u₂, v))`.
pub fn validate_ordered_cover(h: &Graph, q: (Edge, Edge), oc: &OrderedCover) -> Result<(), String> {
    let ((u1, u2), (_, v)) = q;
    let parts = &oc.parts;
    if parts.len() < 3 {
        return Err("fewer than three parts".into());
    }
    let mut all = vec![false; h.vertex_count()];
    for (i, part) in parts.iter().enumerate() {
        for (a, b) in part.edges() {
            if !h.has_edge(a, b) {
                return Err(format!("part {i} uses non-edge ({a}, {b})"));
            }
            if (a, b) == canonical(u1, u2) {
                return Err(format!("part {i} contains the edge (u1, u2)"));
            }
        }
        for x in part.vertices() {
            all[x] = true;
        }
    }
    if all.iter().any(|&c| !c) {
        return Err("parts do not cover every vertex".into());
    }
    if !parts[0].contains(u1) || !parts[1].contains(u2) || !parts[2].contains(v) {
        return Err("u1, u2, v are not in F1, F2, F3".into());
    }
    let disjoint = |a: &CoverPart, b: &CoverPart| a.vertices().iter().all(|&x| !b.contains(x));
    for i in 0..3 {
        for j in i + 1..3 {
            if parts[i] != parts[j] && !disjoint(&parts[i], &parts[j]) {
                return Err(format!("F{} and F{} overlap without being equal", i + 1, j + 1));
            }
        }
    }
    for i in 3..parts.len() {
        for j in 0..i {
            if !disjoint(&parts[i], &parts[j]) {
                return Err(format!("F{} meets F{}", i + 1, j + 1));
            }
        }
    }
    if oc.attachments.len() != parts.len() - 3 {
        return Err("one attachment per part from F4 on is required".into());
    }
    for (k, &(a, b)) in oc.attachments.iter().enumerate() {
        let i = k + 3;
        if !parts[i].contains(a) || !parts[..i].iter().any(|p| p.contains(b)) || !h.has_edge(a, b) {
            return Err(format!("attachment of F{} is invalid", i + 1));
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::generators::*;

    #[test]
    fn double_cover_examples() {
        let (c, pi) = double_cover(&complete(3).unwrap());
        assert_eq!(c.regular_degree(), Some(2));
        assert!(c.is_connected() && c.edge_count() == 6);
        assert_eq!(pi, vec![0, 1, 2, 0, 1, 2]);
        let (c, _) = double_cover(&cycle(4).unwrap());
        assert_eq!(c.components().len(), 2);
        assert!(c.components().iter().all(|comp| comp.len() == 4));
        let (c, _) = double_cover(&complete(2).unwrap());
        assert_eq!((c.vertex_count(), c.edge_count(), c.components().len()), (4, 2, 2));
    }

    #[test]
    fn konig_examples() {
        let k33 = complete_bipartite(3, 3).unwrap();
        let col = konig_coloring(&k33).unwrap();
        assert_eq!(col.num_colors, 3);
        assert!(col.is_proper(&k33));
        for c in 0..3 {
            assert_eq!(col.class(&k33, c).len(), 3);
        }
        let p = path(3).unwrap();
        let col = konig_coloring(&p).unwrap();
        assert_eq!(col.num_colors, 2);
        assert!(col.is_proper(&p));
        let c6 = cycle(6).unwrap();
        assert!(konig_coloring(&c6).unwrap().is_proper(&c6));
        assert_eq!(konig_coloring(&cycle(5).unwrap()), Err(DecomposeError::NotBipartite));
    }

    #[test]
    fn matching_examples() {
        let c4 = cycle(4).unwrap();
        assert_eq!(matching_avoiding(&c4, &[(0, 1)]).unwrap(), vec![(0, 3), (1, 2)]);
        let k33 = complete_bipartite(3, 3).unwrap();
        let m = matching_avoiding(&k33, &[(0, 3), (1, 4)]).unwrap();
        assert_eq!(m.len(), 3);
        assert!(!m.contains(&(0, 3)) && !m.contains(&(1, 4)));
        assert_eq!(matching_avoiding(&complete_bipartite(2, 2).unwrap(), &[]).unwrap().len(), 2);
        assert!(matches!(
            matching_avoiding(&c4, &[(0, 1), (1, 2)]),
            Err(DecomposeError::TooManyAvoided { .. })
        ));
    }

    #[test]
    fn cover_examples() {
        let k4 = complete(4).unwrap();
        let cover = cycle_edge_cover_avoiding(&k4, (0, 1)).unwrap();
        validate_cycle_edge_cover(&k4, (0, 1), &cover).unwrap();
        let k33 = complete_bipartite(3, 3).unwrap();
        for &e in k33.edges() {
            validate_cycle_edge_cover(&k33, e, &cycle_edge_cover_avoiding(&k33, e).unwrap()).unwrap();
        }
        assert!(matches!(
            cycle_edge_cover_avoiding(&cycle(4).unwrap(), (0, 1)),
            Err(DecomposeError::DegreeTooSmall { got: 2, min: 3 })
        ));
    }

    #[test]
    fn ordered_cover_examples() {
        let k4 = complete(4).unwrap();
        let q = ((0, 1), (1, 2));
        let oc = ordered_cover(&k4, q).unwrap();
        validate_ordered_cover(&k4, q, &oc).unwrap();
        let pet = petersen();
        for &(a, b) in pet.edges() {
            for &c in pet.neighbors(b) {
                if c != a {
                    let q = ((a, b), (b, c));
                    validate_ordered_cover(&pet, q, &ordered_cover(&pet, q).unwrap()).unwrap();
                }
            }
        }
        assert!(ordered_cover(&k4, ((0, 1), (2, 3))).is_err());
    }
}
