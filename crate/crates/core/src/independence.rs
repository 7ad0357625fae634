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


//! Independent sets of small graphs: the independence polynomial, the root
//! `θ` of `P_H(θ) = 1 + δ`, and the fractional independence number.

use num_rational::Ratio;
use serde::Serialize;
use thiserror::Error;

use crate::graph::{Graph, PatternGraph};

/// Largest graph whose independent sets are enumerated exhaustively.
pub const MAX_INDEPENDENCE_VERTICES: usize = 24;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum IndependenceError {
    #[error("graph has {0} vertices; exhaustive enumeration is limited to {MAX_INDEPENDENCE_VERTICES}")]
    TooLarge(usize),
    #[error("delta must be positive and finite, got {0}")]
    InvalidDelta(f64),
    #[error("graph has isolated vertices")]
    IsolatedVertices,
    #[error("degree bound must be positive")]
    ZeroDegree,
}

/// `P(x) = Σ_k i(k) x^k` where `i(k)` counts `k`-element independent sets.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IndependencePolynomial {
    coefficients: Vec<u64>,
}

impl IndependencePolynomial {
    pub fn coefficients(&self) -> &[u64] {
        &self.coefficients
    }

    /// Size of a largest independent set.
    pub fn independence_number(&self) -> usize {
        self.coefficients.len() - 1
    }

    pub fn eval(&self, x: f64) -> f64 {
        self.coefficients
            .iter()
            .rev()
            .fold(0.0, |acc, &c| acc * x + c as f64)
    }

    pub fn derivative(&self, x: f64) -> f64 {
        self.coefficients
            .iter()
            .enumerate()
            .skip(1)
            .rev()
            .fold(0.0, |acc, (k, &c)| acc * x + (k as u64 * c) as f64)
    }
}

fn add_into(acc: &mut Vec<u64>, other: &[u64], shift: usize) {
    if acc.len() < other.len() + shift {
        acc.resize(other.len() + shift, 0);
    }
    for (k, &c) in other.iter().enumerate() {
        acc[k + shift] += c;
    }
}

// P(S) = P(S − v) + x·P(S − N[v]) branching on a vertex of maximum degree;
// once S is edgeless the remainder is (1 + x)^|S|.
fn poly_of(adj: &[u32], mask: u32) -> Vec<u64> {
    let mut best = None;
    let mut best_deg = 0;
    let mut bits = mask;
    while bits != 0 {
        let v = bits.trailing_zeros() as usize;
        bits &= bits - 1;
        let d = (adj[v] & mask).count_ones();
        if d > best_deg {
            best_deg = d;
            best = Some(v);
        }
    }
    match best {
        None => {
            let k = mask.count_ones() as usize;
            let mut row = vec![1u64];
            for _ in 0..k {
                let mut next = vec![0u64; row.len() + 1];
                for (i, &c) in row.iter().enumerate() {
                    next[i] += c;
                    next[i + 1] += c;
                }
                row = next;
            }
            row
        }
        Some(v) => {
            let mut out = poly_of(adj, mask & !(1 << v));
            let with_v = poly_of(adj, mask & !(1 << v) & !adj[v]);
            add_into(&mut out, &with_v, 1);
            out
        }
    }
}

pub fn independence_polynomial(h: &Graph) -> Result<IndependencePolynomial, IndependenceError> {
    let n = h.vertex_count();
    if n > MAX_INDEPENDENCE_VERTICES {
        return Err(IndependenceError::TooLarge(n));
    }
    let adj: Vec<u32> = (0..n)
        .map(|v| h.neighbors(v).iter().fold(0u32, |m, &w| m | 1 << w))
        .collect();
    let full = if n == 0 { 0 } else { u32::MAX >> (32 - n) };
    let mut coefficients = poly_of(&adj, full);
    while coefficients.len() > 1 && *coefficients.last().unwrap() == 0 {
        coefficients.pop();
    }
    Ok(IndependencePolynomial { coefficients })
}

/// The unique `θ > 0` with `P_H(θ) = 1 + δ`, to residual at most `1e-12`.
///
/// `P_H` has nonnegative coefficients and is convex increasing on
/// `[0, ∞)`: the root is bracketed by doubling, bisected to a `1e-10`
/// bracket and then polished by Newton steps from the right endpoint, which
/// converge monotonically for a convex increasing function.
pub fn theta(h: &PatternGraph, delta: f64) -> Result<f64, IndependenceError> {
    theta_of(h.independence_polynomial(), delta)
}

pub fn theta_of(poly: &IndependencePolynomial, delta: f64) -> Result<f64, IndependenceError> {
    if !(delta > 0.0 && delta.is_finite()) {
        return Err(IndependenceError::InvalidDelta(delta));
    }
    let target = 1.0 + delta;
    let f = |x: f64| poly.eval(x) - target;
    let mut lo = 0.0;
    let mut hi = 1.0;
    while f(hi) <= 0.0 {
        lo = hi;
        hi *= 2.0;
    }
    while hi - lo > 1e-10 * hi.max(1.0) {
        let mid = 0.5 * (lo + hi);
        if f(mid) > 0.0 {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    let mut x = hi;
    for _ in 0..5 {
        let step = f(x) / poly.derivative(x);
        x -= step;
        if f(x).abs() <= 1e-13 * target {
            break;
        }
    }
    // Rounding can leave the polished point marginally worse than a
    // bisection end point; keep whichever candidate is best.
    let best = [x, lo, hi]
        .into_iter()
        .min_by(|a, b| f(*a).abs().total_cmp(&f(*b).abs()))
        .unwrap();
    Ok(best)
}

/// Optimal fractional independent set: weights in `{0, ½, 1}` with
/// `α_u + α_v ≤ 1` on every edge and maximum total weight.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FractionalIndependence {
    /// Weight of each vertex in units of ½ (0, 1 or 2).
    pub witness_halves: Vec<u8>,
}

impl FractionalIndependence {
    pub fn value(&self) -> Ratio<u64> {
        Ratio::new(self.value_halves(), 2)
    }

    pub fn value_halves(&self) -> u64 {
        self.witness_halves.iter().map(|&w| w as u64).sum()
    }

    pub fn value_f64(&self) -> f64 {
        self.value_halves() as f64 / 2.0
    }
}

// Kuhn's augmenting-path matching on a bipartite graph given by left
// adjacency lists; returns the right-side mate of every left vertex.
fn max_matching(left_adj: &[Vec<usize>], right_count: usize) -> Vec<Option<usize>> {
    fn augment(
        u: usize,
        left_adj: &[Vec<usize>],
        seen: &mut [bool],
        mate_right: &mut [Option<usize>],
    ) -> bool {
        for &w in &left_adj[u] {
            if seen[w] {
                continue;
            }
            seen[w] = true;
            if mate_right[w].is_none_or(|u2| augment(u2, left_adj, seen, mate_right)) {
                mate_right[w] = Some(u);
                return true;
            }
        }
        false
    }
    let mut mate_right = vec![None; right_count];
    for u in 0..left_adj.len() {
        let mut seen = vec![false; right_count];
        augment(u, left_adj, &mut seen, &mut mate_right);
    }
    let mut mate_left = vec![None; left_adj.len()];
    for (w, m) in mate_right.iter().enumerate() {
        if let Some(u) = m {
            mate_left[*u] = Some(w);
        }
    }
    mate_left
}

/// Fractional independence number with an optimal half-integral witness.
///
/// The optimum equals half the independence number of the bipartite double
/// cover `H × K₂`; the latter is found from a maximum matching and a König
/// vertex cover, and a vertex of `H` gets weight ½ for each of its two lifts
/// lying in the complementary independent set.
pub fn fractional_independence(h: &Graph) -> FractionalIndependence {
    let n = h.vertex_count();
    // Left copy (v, 1) and right copy (v, 2) share the label v.
    let left_adj: Vec<Vec<usize>> = (0..n).map(|v| h.neighbors(v).to_vec()).collect();
    let mate_left = max_matching(&left_adj, n);
    let mut mate_right = vec![None; n];
    for (u, m) in mate_left.iter().enumerate() {
        if let Some(w) = m {
            mate_right[*w] = Some(u);
        }
    }
    // König: Z = vertices reachable from unmatched left vertices by
    // alternating paths; cover = (L \ Z) ∪ (R ∩ Z).
    let mut z_left = vec![false; n];
    let mut z_right = vec![false; n];
    let mut stack: Vec<usize> = (0..n).filter(|&u| mate_left[u].is_none()).collect();
    for &u in &stack {
        z_left[u] = true;
    }
    while let Some(u) = stack.pop() {
        for &w in &left_adj[u] {
            if z_right[w] || mate_left[u] == Some(w) {
                continue;
            }
            z_right[w] = true;
            if let Some(u2) = mate_right[w] {
                if !z_left[u2] {
                    z_left[u2] = true;
                    stack.push(u2);
                }
            }
        }
    }
    let witness_halves = (0..n)
        .map(|v| z_left[v] as u8 + (!z_right[v]) as u8)
        .collect();
    FractionalIndependence { witness_halves }
}

/// Whether `α*(H★) ≤ v(H★) − e(H★)/Δ`, evaluated exactly.
pub fn alpha_upper_bound_check(h_star: &Graph, delta: usize) -> Result<bool, IndependenceError> {
    if h_star.has_isolated_vertices() {
        return Err(IndependenceError::IsolatedVertices);
    }
    if delta == 0 {
        return Err(IndependenceError::ZeroDegree);
    }
    let a = fractional_independence(h_star).value_halves() as u128;
    let v = h_star.vertex_count() as u128;
    let e = h_star.edge_count() as u128;
    let d = delta as u128;
    Ok(a * d <= 2 * v * d - 2 * e)
}
