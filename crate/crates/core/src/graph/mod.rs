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

//! Finite simple undirected graphs on dense vertex ids `0..n`.
//!
//! A [`Graph`] keeps sorted adjacency lists together with a canonically
//! ordered edge list. Edges are identified by their endpoint pair `(u, v)`
//! with `u < v`; the position of an edge in [`Graph::edges`] is a stable
//! index that the counting and peeling code uses for per-edge tables.
//! Isolated vertices are allowed and never influence subgraph counts.

mod context;
pub mod enumerate;
pub mod generators;
pub mod io;
mod pattern;

use std::collections::VecDeque;

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};
use thiserror::Error;

pub use context::{ContextError, SparsityContext};
pub use pattern::{PatternError, PatternGraph};

/// Unordered vertex pair in canonical `(min, max)` form.
pub type Edge = (usize, usize);

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("edge ({u}, {v}) has an endpoint outside 0..{n}")]
    EndpointOutOfRange { u: usize, v: usize, n: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("vertex {vertex} is outside 0..{n}")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("invalid generator parameter: {0}")]
    InvalidParameter(String),
}

#[inline]
pub fn canonical(u: usize, v: usize) -> Edge {
    if u < v {
        (u, v)
    } else {
        (v, u)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Graph {
    adj: Vec<Vec<usize>>,
    edges: Vec<Edge>,
}

impl Graph {
    /// Graph with `n` vertices and no edges.
    pub fn empty(n: usize) -> Self {
        Graph {
            adj: vec![Vec::new(); n],
            edges: Vec::new(),
        }
    }

    /// Builds a graph from vertex pairs. Duplicate pairs (in either
    /// orientation) are collapsed; self-loops and out-of-range endpoints
    /// are rejected with the offending pair.
    pub fn from_edges<I>(n: usize, pairs: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut edges = Vec::new();
        for (u, v) in pairs {
            if u >= n || v >= n {
                return Err(GraphError::EndpointOutOfRange { u, v, n });
            }
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            edges.push(canonical(u, v));
        }
        Ok(Self::from_canonical_edges(n, edges))
    }

    /// Internal constructor for edge lists already known to be valid.
    pub(crate) fn from_canonical_edges(n: usize, mut edges: Vec<Edge>) -> Self {
        edges.sort_unstable();
        edges.dedup();
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in &edges {
            adj[u].push(v);
            adj[v].push(u);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        Graph { adj, edges }
    }

    pub fn vertex_count(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Edges in canonical lexicographic order.
    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.adj.iter().map(Vec::len).collect()
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn min_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).min().unwrap_or(0)
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        if u >= self.adj.len() || v >= self.adj.len() {
            return false;
        }
        let (a, b) = if self.adj[u].len() <= self.adj[v].len() {
            (u, v)
        } else {
            (v, u)
        };
        self.adj[a].binary_search(&b).is_ok()
    }

    /// Position of the edge `{u, v}` in [`Graph::edges`].
    pub fn edge_index(&self, u: usize, v: usize) -> Option<usize> {
        self.edges.binary_search(&canonical(u, v)).ok()
    }

    pub fn is_isolated(&self, v: usize) -> bool {
        self.adj[v].is_empty()
    }

    pub fn has_isolated_vertices(&self) -> bool {
        self.adj.iter().any(Vec::is_empty)
    }

    pub fn non_isolated_count(&self) -> usize {
        self.adj.iter().filter(|a| !a.is_empty()).count()
    }

    /// Connected in the usual sense: every vertex reachable from vertex 0.
    /// The graph with no vertices is not considered connected.
    pub fn is_connected(&self) -> bool {
        let n = self.vertex_count();
        if n == 0 {
            return false;
        }
        self.component_of(0).len() == n
    }

    fn component_of(&self, start: usize) -> Vec<usize> {
        let mut seen = vec![false; self.vertex_count()];
        let mut queue = VecDeque::from([start]);
        seen[start] = true;
        let mut out = Vec::new();
        while let Some(v) = queue.pop_front() {
            out.push(v);
            for &w in &self.adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    queue.push_back(w);
                }
            }
        }
        out
    }

    /// Vertex sets of the connected components, each sorted, ordered by
    /// smallest member.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.vertex_count()];
        let mut out = Vec::new();
        for v in 0..self.vertex_count() {
            if seen[v] {
                continue;
            }
            let mut comp = self.component_of(v);
            for &w in &comp {
                seen[w] = true;
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    /// Two-coloring `side[v] ∈ {false, true}` if the graph is bipartite.
    /// Each component's smallest vertex gets side `false`.
    pub fn bipartition(&self) -> Option<Vec<bool>> {
        let n = self.vertex_count();
        let mut side: Vec<Option<bool>> = vec![None; n];
        for s in 0..n {
            if side[s].is_some() {
                continue;
            }
            side[s] = Some(false);
            let mut queue = VecDeque::from([s]);
            while let Some(v) = queue.pop_front() {
                let sv = side[v].unwrap();
                for &w in &self.adj[v] {
                    match side[w] {
                        None => {
                            side[w] = Some(!sv);
                            queue.push_back(w);
                        }
                        Some(sw) if sw == sv => return None,
                        _ => {}
                    }
                }
            }
        }
        Some(side.into_iter().map(|s| s.unwrap()).collect())
    }

    pub fn is_bipartite(&self) -> bool {
        self.bipartition().is_some()
    }

    /// `Some(d)` if every vertex has degree `d`.
    pub fn regular_degree(&self) -> Option<usize> {
        let d = self.adj.first().map(Vec::len)?;
        self.adj.iter().all(|a| a.len() == d).then_some(d)
    }

    /// Same vertex set, keeping the edges whose index satisfies `keep`.
    pub fn filter_edges<F>(&self, mut keep: F) -> Graph
    where
        F: FnMut(usize, Edge) -> bool,
    {
        let edges = self
            .edges
            .iter()
            .enumerate()
            .filter(|&(i, &e)| keep(i, e))
            .map(|(_, &e)| e)
            .collect();
        Graph::from_canonical_edges(self.vertex_count(), edges)
    }

    /// Same vertex set with the given edges removed (absent edges ignored).
    pub fn without_edges(&self, removed: &[Edge]) -> Graph {
        let mut drop: Vec<Edge> = removed.iter().map(|&(u, v)| canonical(u, v)).collect();
        drop.sort_unstable();
        self.filter_edges(|_, e| drop.binary_search(&e).is_err())
    }

    /// Same vertex set with extra edges added.
    pub fn with_edges(&self, extra: &[Edge]) -> Result<Graph, GraphError> {
        let n = self.vertex_count();
        let mut edges = self.edges.clone();
        for &(u, v) in extra {
            if u >= n || v >= n {
                return Err(GraphError::EndpointOutOfRange { u, v, n });
            }
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            edges.push(canonical(u, v));
        }
        Ok(Graph::from_canonical_edges(n, edges))
    }

    /// Union of the edge sets of two graphs on a common vertex range; the
    /// result has `max(n1, n2)` vertices.
    pub fn union(&self, other: &Graph) -> Graph {
        let n = self.vertex_count().max(other.vertex_count());
        let mut edges = self.edges.clone();
        edges.extend_from_slice(&other.edges);
        Graph::from_canonical_edges(n, edges)
    }

    /// Drops isolated vertices and relabels the rest in increasing order.
    /// Returns the compacted graph and the map new id -> old id.
    pub fn strip_isolated(&self) -> (Graph, Vec<usize>) {
        let keep: Vec<usize> = (0..self.vertex_count())
            .filter(|&v| !self.adj[v].is_empty())
            .collect();
        let mut new_id = vec![usize::MAX; self.vertex_count()];
        for (i, &v) in keep.iter().enumerate() {
            new_id[v] = i;
        }
        let edges = self
            .edges
            .iter()
            .map(|&(u, v)| (new_id[u], new_id[v]))
            .collect();
        (Graph::from_canonical_edges(keep.len(), edges), keep)
    }

    /// Subgraph induced by `vertices`, relabelled `0..k` in the given order.
    pub fn induced(&self, vertices: &[usize]) -> Graph {
        let mut new_id = vec![usize::MAX; self.vertex_count()];
        for (i, &v) in vertices.iter().enumerate() {
            new_id[v] = i;
        }
        let edges = self
            .edges
            .iter()
            .filter(|&&(u, v)| new_id[u] != usize::MAX && new_id[v] != usize::MAX)
            .map(|&(u, v)| canonical(new_id[u], new_id[v]))
            .collect();
        Graph::from_canonical_edges(vertices.len(), edges)
    }

    /// Every edge of `self` is an edge of `other` (vertex ids shared).
    pub fn is_subgraph_of(&self, other: &Graph) -> bool {
        self.edges.iter().all(|&(u, v)| other.has_edge(u, v))
    }

    /// Dense 0/1 adjacency matrix, row-major.
    pub fn adjacency_matrix(&self) -> Vec<Vec<u8>> {
        let n = self.vertex_count();
        let mut m = vec![vec![0u8; n]; n];
        for &(u, v) in &self.edges {
            m[u][v] = 1;
            m[v][u] = 1;
        }
        m
    }
}

impl Serialize for Graph {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut st = serializer.serialize_struct("Graph", 2)?;
        st.serialize_field("n", &self.vertex_count())?;
        st.serialize_field("edges", &self.edges)?;
        st.end()
    }
}

/// Maximal subgraph with minimum degree at least `k` among its non-isolated
/// vertices: vertices of degree `< k` are deleted until none remain. The
/// vertex set is kept and deleted vertices become isolated.
pub fn delta_core(g: &Graph, k: usize) -> Graph {
    let n = g.vertex_count();
    let mut degree = g.degrees();
    let mut removed = vec![false; n];
    let mut worklist: Vec<usize> = (0..n).filter(|&v| degree[v] < k && degree[v] > 0).collect();
    while let Some(v) = worklist.pop() {
        if removed[v] {
            continue;
        }
        removed[v] = true;
        for &w in g.neighbors(v) {
            if removed[w] {
                continue;
            }
            degree[w] -= 1;
            if degree[w] + 1 == k {
                worklist.push(w);
            }
        }
    }
    g.filter_edges(|_, (u, v)| !removed[u] && !removed[v])
}
