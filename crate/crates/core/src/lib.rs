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


//! Exact counting and combinatorial tooling for upper-tail large deviations
//! of regular subgraph counts in Erdős–Rényi graphs.
//!
//! * [`graph`] — simple graphs, patterns, generators and the `(n, p)` context.
//! * [`counting`] — labelled copies, per-edge and signed path counts.
//! * [`independence`] — independence polynomial, `θ_H`, fractional independence.
//! * [`structures`] — edge classes, seed/core/strong-core predicates, peeling.
//! * [`decompose`] — double covers, König colouring and cycle/edge covers.
//! * [`ratefn`] — rate function, conditional expectations, planted structures.
//! * [`sim`] — seeded Monte Carlo estimators.
//! * [`verify`] — brute-force checks of the deterministic counting bounds.

pub mod graph;
pub mod independence;
pub mod counting;
pub mod structures;
pub mod decompose;
pub mod ratefn;
pub mod sim;
pub mod verify;
