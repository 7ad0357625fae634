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

use serde::Serialize;
use thiserror::Error;

use super::PatternGraph;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ContextError {
    #[error("n must be positive")]
    ZeroVertices,
    #[error("p must lie strictly between 0 and 1, got {0}")]
    ProbabilityOutOfRange(f64),
}

/// Size `n` and edge probability `p` of the ambient random graph, with the
/// scales the counting thresholds are expressed in.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SparsityContext {
    n: u64,
    p: f64,
}

impl SparsityContext {
    pub fn new(n: u64, p: f64) -> Result<Self, ContextError> {
        if n == 0 {
            return Err(ContextError::ZeroVertices);
        }
        if !(p > 0.0 && p < 1.0) {
            return Err(ContextError::ProbabilityOutOfRange(p));
        }
        Ok(SparsityContext { n, p })
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn p(&self) -> f64 {
        self.p
    }

    pub fn log_inv_p(&self) -> f64 {
        -self.p.ln()
    }

    /// `n² p^Δ`: the edge scale of a planted hub or clique.
    pub fn edge_scale(&self, delta: usize) -> f64 {
        let n = self.n as f64;
        n * n * self.p.powi(delta as i32)
    }

    /// `n^{v_H} p^{e(H)}`: the order of the expected copy count.
    pub fn copy_scale(&self, h: &PatternGraph) -> f64 {
        (self.n as f64).powi(h.v() as i32) * self.p.powi(h.e() as i32)
    }

    /// `n p^{Δ/2}`, which separates the clique-dominated, mixed and
    /// Poisson regimes.
    pub fn regime_parameter(&self, delta: usize) -> f64 {
        self.n as f64 * self.p.powf(delta as f64 / 2.0)
    }
}
