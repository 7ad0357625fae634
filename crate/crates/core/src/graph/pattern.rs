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


use std::sync::OnceLock;

use thiserror::Error;

use super::Graph;
use crate::independence::{self, IndependencePolynomial};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PatternError {
    #[error("pattern graph is not connected")]
    NotConnected,
    #[error("pattern graph is not regular")]
    NotRegular,
    #[error("pattern graph has degree {0}; degree at least 2 is required")]
    DegreeTooSmall(usize),
}

/// A connected `Δ`-regular graph with `Δ ≥ 2`, the pattern whose copies
/// are counted.
#[derive(Debug, Clone)]
pub struct PatternGraph {
    graph: Graph,
    delta: usize,
    indep: OnceLock<IndependencePolynomial>,
}

impl PartialEq for PatternGraph {
    fn eq(&self, other: &Self) -> bool {
        self.graph == other.graph
    }
}

impl Eq for PatternGraph {}

impl PatternGraph {
    pub fn new(graph: Graph) -> Result<Self, PatternError> {
        if !graph.is_connected() {
            return Err(PatternError::NotConnected);
        }
        let delta = graph.regular_degree().ok_or(PatternError::NotRegular)?;
        if delta < 2 {
            return Err(PatternError::DegreeTooSmall(delta));
        }
        Ok(PatternGraph {
            graph,
            delta,
            indep: OnceLock::new(),
        })
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn delta(&self) -> usize {
        self.delta
    }

    /// Number of vertices `v_H`.
    pub fn v(&self) -> usize {
        self.graph.vertex_count()
    }

    /// Number of edges `e(H) = Δ v_H / 2`.
    pub fn e(&self) -> usize {
        self.graph.edge_count()
    }

    /// Independence polynomial, computed on first use.
    ///
    /// Panics if the pattern exceeds the exhaustive enumeration limit; use
    /// [`independence::independence_polynomial`] directly to get an error.
    pub fn independence_polynomial(&self) -> &IndependencePolynomial {
        self.indep.get_or_init(|| {
            independence::independence_polynomial(&self.graph)
                .expect("pattern too large for independent-set enumeration")
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::generators;

    #[test]
    fn validation() {
        let c4 = PatternGraph::new(generators::cycle(4).unwrap()).unwrap();
        assert_eq!((c4.delta(), c4.v(), c4.e()), (2, 4, 4));
        let k4 = PatternGraph::new(generators::complete(4).unwrap()).unwrap();
        assert_eq!((k4.delta(), k4.v(), k4.e()), (3, 4, 6));
        assert_eq!(
            PatternGraph::new(generators::path(3).unwrap()),
            Err(PatternError::NotRegular)
        );
        assert_eq!(
            PatternGraph::new(generators::complete(2).unwrap()),
            Err(PatternError::DegreeTooSmall(1))
        );
        let two_triangles =
            generators::disjoint_union(&generators::complete(3).unwrap(), &generators::complete(3).unwrap());
        assert_eq!(PatternGraph::new(two_triangles), Err(PatternError::NotConnected));
    }
}
