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


//! Exhaustive enumeration of small graphs up to isomorphism, used by the
//! exhaustive test suites.
//!
//! Isomorphism classes are identified by a canonical adjacency bitmask
//! computed with individualization–refinement: colour refinement is run to
//! a stable ordered partition, the first non-singleton cell is split on each
//! of its vertices in turn, and the lexicographically smallest bitmask over
//! all discrete leaves is kept. Refinement is label-invariant, so the
//! minimum is a complete invariant. Limited to 16 vertices (120 bits).

use std::collections::BTreeSet;

use super::Graph;

pub const MAX_CANONICAL_VERTICES: usize = 16;

fn refine(adj: &[u32], cells: &mut Vec<Vec<usize>>) {
    let n = adj.len();
    let mut cell_of = vec![0usize; n];
    loop {
        for (c, cell) in cells.iter().enumerate() {
            for &v in cell {
                cell_of[v] = c;
            }
        }
        let k = cells.len();
        let mut next: Vec<Vec<usize>> = Vec::with_capacity(n);
        for cell in cells.iter() {
            if cell.len() == 1 {
                next.push(cell.clone());
                continue;
            }
            let mut keyed: Vec<(Vec<u32>, usize)> = cell
                .iter()
                .map(|&v| {
                    let mut counts = vec![0u32; k];
                    let mut bits = adj[v];
                    while bits != 0 {
                        let w = bits.trailing_zeros() as usize;
                        bits &= bits - 1;
                        counts[cell_of[w]] += 1;
                    }
                    (counts, v)
                })
                .collect();
            keyed.sort();
            let mut start = 0;
            for i in 1..=keyed.len() {
                if i == keyed.len() || keyed[i].0 != keyed[start].0 {
                    next.push(keyed[start..i].iter().map(|x| x.1).collect());
                    start = i;
                }
            }
        }
        let stable = next.len() == cells.len();
        *cells = next;
        if stable {
            return;
        }
    }
}

fn leaf_code(adj: &[u32], order: &[usize]) -> u128 {
    let n = adj.len();
    let mut code = 0u128;
    let mut bit = 0;
    for i in 0..n {
        for j in i + 1..n {
            if adj[order[i]] >> order[j] & 1 == 1 {
                code |= 1u128 << (127 - bit);
            }
            bit += 1;
        }
    }
    code
}

fn search(adj: &[u32], cells: Vec<Vec<usize>>, best: &mut Option<u128>) {
    let Some(target) = cells.iter().position(|c| c.len() > 1) else {
        let order: Vec<usize> = cells.iter().map(|c| c[0]).collect();
        let code = leaf_code(adj, &order);
        if best.is_none_or(|b| code < b) {
            *best = Some(code);
        }
        return;
    };
    for &v in &cells[target] {
        let mut branch = Vec::with_capacity(cells.len() + 1);
        branch.extend_from_slice(&cells[..target]);
        branch.push(vec![v]);
        branch.push(cells[target].iter().copied().filter(|&w| w != v).collect());
        branch.extend_from_slice(&cells[target + 1..]);
        refine(adj, &mut branch);
        search(adj, branch, best);
    }
}

/// Canonical code of `g`: two graphs on the same number of vertices are
/// isomorphic iff their codes are equal.
pub fn canonical_code(g: &Graph) -> u128 {
    let n = g.vertex_count();
    assert!(n <= MAX_CANONICAL_VERTICES, "canonical form limited to 16 vertices");
    let adj: Vec<u32> = (0..n)
        .map(|v| g.neighbors(v).iter().fold(0u32, |m, &w| m | 1 << w))
        .collect();
    if n == 0 {
        return 0;
    }
    let mut cells = vec![(0..n).collect::<Vec<_>>()];
    refine(&adj, &mut cells);
    let mut best = None;
    search(&adj, cells, &mut best);
    best.unwrap()
}

/// Graph on `n` vertices decoded from a canonical code.
pub fn from_code(n: usize, code: u128) -> Graph {
    let mut edges = Vec::new();
    let mut bit = 0;
    for i in 0..n {
        for j in i + 1..n {
            if code >> (127 - bit) & 1 == 1 {
                edges.push((i, j));
            }
            bit += 1;
        }
    }
    Graph::from_canonical_edges(n, edges)
}

struct RegularSearch {
    n: usize,
    d: usize,
    adj: Vec<u32>,
    deg: Vec<usize>,
    found: BTreeSet<u128>,
}

impl RegularSearch {
    fn feasible(&self, from: usize) -> bool {
        // Every remaining vertex needs enough open slots among later vertices.
        let open: usize = (from..self.n).map(|v| self.d - self.deg[v]).sum();
        open.is_multiple_of(2)
            && (from..self.n).all(|v| {
                let avail = (from..self.n)
                    .filter(|&w| w != v && self.deg[w] < self.d && self.adj[v] >> w & 1 == 0)
                    .count();
                avail >= self.d - self.deg[v]
            })
    }

    fn row(&mut self, i: usize) {
        if i == self.n {
            let g = Graph::from_canonical_edges(
                self.n,
                (0..self.n)
                    .flat_map(|u| (u + 1..self.n).map(move |w| (u, w)))
                    .filter(|&(u, w)| self.adj[u] >> w & 1 == 1)
                    .collect(),
            );
            if g.is_connected() {
                self.found.insert(canonical_code(&g));
            }
            return;
        }
        let need = self.d - self.deg[i];
        let touched: Vec<usize> = (i + 1..self.n)
            .filter(|&w| self.deg[w] > 0 && self.deg[w] < self.d)
            .collect();
        let untouched: Vec<usize> = (i + 1..self.n).filter(|&w| self.deg[w] == 0).collect();
        for r in 0..=need.min(touched.len()) {
            let k = need - r;
            if k > untouched.len() {
                continue;
            }
            let mut pick: Vec<usize> = (0..r).collect();
            loop {
                let mut chosen: Vec<usize> = pick.iter().map(|&j| touched[j]).collect();
                chosen.extend_from_slice(&untouched[..k]);
                for &w in &chosen {
                    self.adj[i] |= 1 << w;
                    self.adj[w] |= 1 << i;
                    self.deg[w] += 1;
                }
                self.deg[i] += need;
                if self.feasible(i + 1) {
                    self.row(i + 1);
                }
                self.deg[i] -= need;
                for &w in &chosen {
                    self.adj[i] &= !(1 << w);
                    self.adj[w] &= !(1 << i);
                    self.deg[w] -= 1;
                }
                if !next_combination(&mut pick, touched.len()) {
                    break;
                }
            }
        }
    }
}

/// Advances `pick` (strictly increasing indices into `0..m`) to the next
/// combination in lexicographic order.
fn next_combination(pick: &mut [usize], m: usize) -> bool {
    let r = pick.len();
    for i in (0..r).rev() {
        if pick[i] < m - r + i {
            pick[i] += 1;
            for j in i + 1..r {
                pick[j] = pick[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// One representative of every connected `d`-regular graph on `n` vertices,
/// in canonical labelling, ordered by canonical code.
pub fn connected_regular_graphs(n: usize, d: usize) -> Vec<Graph> {
    assert!(n <= MAX_CANONICAL_VERTICES);
    if n == 0 || d >= n || (n * d) % 2 == 1 {
        return Vec::new();
    }
    let mut s = RegularSearch {
        n,
        d,
        adj: vec![0; n],
        deg: vec![0; n],
        found: BTreeSet::new(),
    };
    s.row(0);
    s.found.into_iter().map(|c| from_code(n, c)).collect()
}

/// One representative of every connected graph on `n` vertices (`n ≤ 7`).
pub fn connected_graphs(n: usize) -> Vec<Graph> {
    assert!(n <= 7, "exhaustive connected-graph enumeration limited to 7 vertices");
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |w| (u, w)))
        .collect();
    let mut found = BTreeSet::new();
    for mask in 0u32..(1u32 << pairs.len()) {
        let edges = pairs
            .iter()
            .enumerate()
            .filter(|&(i, _)| mask >> i & 1 == 1)
            .map(|(_, &e)| e)
            .collect();
        let g = Graph::from_canonical_edges(n, edges);
        if g.is_connected() {
            found.insert(canonical_code(&g));
        }
    }
    found.into_iter().map(|c| from_code(n, c)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::generators;

    #[test]
    fn known_class_counts() {
        // Connected cubic graphs on 4..10 vertices: 1, 2, 5, 19.
        let cubic: Vec<usize> = [4, 6, 8, 10]
            .iter()
            .map(|&n| connected_regular_graphs(n, 3).len())
            .collect();
        assert_eq!(cubic, vec![1, 2, 5, 19]);
        // Connected quartic graphs on 5..9 vertices: 1, 1, 2, 6, 16.
        let quartic: Vec<usize> = (5..=9).map(|n| connected_regular_graphs(n, 4).len()).collect();
        assert_eq!(quartic, vec![1, 1, 2, 6, 16]);
        // Connected graphs on 1..5 vertices: 1, 1, 2, 6, 21.
        let conn: Vec<usize> = (1..=5).map(|n| connected_graphs(n).len()).collect();
        assert_eq!(conn, vec![1, 1, 2, 6, 21]);
    }

    #[test]
    fn canonical_code_is_label_invariant() {
        let p = generators::petersen();
        let perm = [3, 7, 1, 9, 0, 2, 8, 5, 4, 6];
        let q = Graph::from_edges(10, p.edges().iter().map(|&(u, v)| (perm[u], perm[v]))).unwrap();
        assert_eq!(canonical_code(&p), canonical_code(&q));
        assert_ne!(
            canonical_code(&generators::cycle(6).unwrap()),
            canonical_code(&generators::disjoint_union(
                &generators::complete(3).unwrap(),
                &generators::complete(3).unwrap()
            ))
        );
    }
}
