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

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{Graph, GraphError};

fn need(cond: bool, msg: impl Into<String>) -> Result<(), GraphError> {
    if cond {
        Ok(())
    } else {
        Err(GraphError::InvalidParameter(msg.into()))
    }
}

/// Complete graph `K_m`.
pub fn complete(m: usize) -> Result<Graph, GraphError> {
    need(m >= 1, "complete graph needs m >= 1")?;
    let mut edges = Vec::with_capacity(m * (m - 1) / 2);
    for u in 0..m {
        for v in u + 1..m {
            edges.push((u, v));
        }
    }
    Ok(Graph::from_canonical_edges(m, edges))
}

/// Complete bipartite `K_{a,b}`; sides are `0..a` and `a..a+b`.
pub fn complete_bipartite(a: usize, b: usize) -> Result<Graph, GraphError> {
    need(a >= 1 && b >= 1, "complete bipartite graph needs a, b >= 1")?;
    let mut edges = Vec::with_capacity(a * b);
    for u in 0..a {
        for v in a..a + b {
            edges.push((u, v));
        }
    }
    Ok(Graph::from_canonical_edges(a + b, edges))
}

/// Cycle `C_l` on `0..l` with edges `i ~ i+1 (mod l)`.
pub fn cycle(l: usize) -> Result<Graph, GraphError> {
    need(l >= 3, "cycle needs length >= 3")?;
    let edges = (0..l).map(|i| super::canonical(i, (i + 1) % l)).collect();
    Ok(Graph::from_canonical_edges(l, edges))
}

/// Path with `m` vertices (`m - 1` edges).
pub fn path(m: usize) -> Result<Graph, GraphError> {
    need(m >= 1, "path needs at least one vertex")?;
    let edges = (1..m).map(|i| (i - 1, i)).collect();
    Ok(Graph::from_canonical_edges(m, edges))
}

/// Star `K_{1,leaves}` centred at vertex 0.
pub fn star(leaves: usize) -> Result<Graph, GraphError> {
    need(leaves >= 1, "star needs at least one leaf")?;
    let edges = (1..=leaves).map(|i| (0, i)).collect();
    Ok(Graph::from_canonical_edges(leaves + 1, edges))
}

/// The Petersen graph: outer 5-cycle `0..5`, inner pentagram `5..10`.
pub fn petersen() -> Graph {
    let mut edges = Vec::with_capacity(15);
    for i in 0..5 {
        edges.push(super::canonical(i, (i + 1) % 5));
        edges.push((i, i + 5));
        edges.push(super::canonical(5 + i, 5 + (i + 2) % 5));
    }
    Graph::from_canonical_edges(10, edges)
}

/// Disjoint union; the vertices of `g2` are shifted by `g1.vertex_count()`.
pub fn disjoint_union(g1: &Graph, g2: &Graph) -> Graph {
    let shift = g1.vertex_count();
    let mut edges = g1.edges().to_vec();
    edges.extend(g2.edges().iter().map(|&(u, v)| (u + shift, v + shift)));
    Graph::from_canonical_edges(shift + g2.vertex_count(), edges)
}

/// Random `delta`-regular bipartite graph with sides `0..m` and `m..2m`,
/// built as a union of `delta` uniformly random perfect matchings. Whenever
/// a matching would repeat an existing edge it is discarded and redrawn.
pub fn random_regular_bipartite(delta: usize, m: usize, seed: u64) -> Result<Graph, GraphError> {
    need(delta >= 1 && m >= 1, "random regular bipartite needs delta, m >= 1")?;
    need(delta <= m, "degree cannot exceed side size")?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut used = vec![vec![false; m]; m];
    let mut edges = Vec::with_capacity(delta * m);
    let mut perm: Vec<usize> = (0..m).collect();
    let mut layers = 0;
    // Each extra layer is accepted with probability bounded away from zero for
    // the small sizes this generator serves; a restart bounds pathological runs.
    let mut attempts = 0usize;
    while layers < delta {
        attempts += 1;
        if attempts > 10_000 {
            used.iter_mut().for_each(|row| row.fill(false));
            edges.clear();
            layers = 0;
            attempts = 0;
            continue;
        }
        perm.shuffle(&mut rng);
        if (0..m).any(|u| used[u][perm[u]]) {
            continue;
        }
        for u in 0..m {
            used[u][perm[u]] = true;
            edges.push((u, m + perm[u]));
        }
        layers += 1;
    }
    Ok(Graph::from_canonical_edges(2 * m, edges))
}

/// Erdős–Rényi `G(n, p)` sample driven by an explicit RNG.
pub fn gnp<R: rand::Rng + ?Sized>(n: usize, p: f64, rng: &mut R) -> Graph {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen::<f64>() < p {
                edges.push((u, v));
            }
        }
    }
    Graph::from_canonical_edges(n, edges)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sizes() {
        assert_eq!(complete(4).unwrap().edge_count(), 6);
        let k23 = complete_bipartite(2, 3).unwrap();
        assert_eq!(k23.edge_count(), 6);
        assert!(k23.is_bipartite());
        assert_eq!(cycle(5).unwrap().edge_count(), 5);
        assert_eq!(petersen().regular_degree(), Some(3));
        assert_eq!(petersen().edge_count(), 15);
        assert!(cycle(2).is_err());
    }

    #[test]
    fn random_regular_bipartite_is_regular() {
        for seed in 0..50 {
            let g = random_regular_bipartite(3, 4, seed).unwrap();
            assert_eq!(g.edge_count(), 12);
            assert_eq!(g.regular_degree(), Some(3));
            assert!(g.is_bipartite());
        }
        assert_eq!(
            random_regular_bipartite(3, 6, 9).unwrap(),
            random_regular_bipartite(3, 6, 9).unwrap()
        );
    }

    #[test]
    fn union_shifts_labels() {
        let g = disjoint_union(&complete(3).unwrap(), &cycle(4).unwrap());
        assert_eq!(g.vertex_count(), 7);
        assert_eq!(g.edge_count(), 7);
        assert!(g.has_edge(3, 6));
        assert_eq!(g.components().len(), 2);
    }
}
