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

//! Plain-text edge lists: a header line `n m` followed by `m` lines `u v`.
//! Blank lines and everything after `#` are ignored.

use std::fmt::Write as _;

use thiserror::Error;

use super::{Graph, GraphError};

#[derive(Debug, Error)]
pub enum EdgeListError {
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("missing header line \"n m\"")]
    MissingHeader,
    #[error("header declares {declared} edges but {found} were listed")]
    EdgeCountMismatch { declared: usize, found: usize },
    #[error(transparent)]
    Graph(#[from] GraphError),
}

fn parse_pair(line: &str, lineno: usize) -> Result<(usize, usize), EdgeListError> {
    let mut it = line.split_whitespace();
    let mut next = |what: &str| -> Result<usize, EdgeListError> {
        let tok = it.next().ok_or_else(|| EdgeListError::Syntax {
            line: lineno,
            msg: format!("missing {what}"),
        })?;
        tok.parse().map_err(|_| EdgeListError::Syntax {
            line: lineno,
            msg: format!("{what} {tok:?} is not a nonnegative integer"),
        })
    };
    let a = next("first field")?;
    let b = next("second field")?;
    if it.next().is_some() {
        return Err(EdgeListError::Syntax {
            line: lineno,
            msg: "expected exactly two fields".into(),
        });
    }
    Ok((a, b))
}

pub fn parse_edge_list(text: &str) -> Result<Graph, EdgeListError> {
    let mut header = None;
    let mut pairs = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let pair = parse_pair(line, i + 1)?;
        if header.is_none() {
            header = Some(pair);
        } else {
            pairs.push(pair);
        }
    }
    let (n, m) = header.ok_or(EdgeListError::MissingHeader)?;
    if pairs.len() != m {
        return Err(EdgeListError::EdgeCountMismatch {
            declared: m,
            found: pairs.len(),
        });
    }
    Ok(Graph::from_edges(n, pairs)?)
}

pub fn to_edge_list(g: &Graph) -> String {
    let mut out = String::new();
    writeln!(out, "{} {}", g.vertex_count(), g.edge_count()).unwrap();
    for &(u, v) in g.edges() {
        writeln!(out, "{u} {v}").unwrap();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        let g = super::super::generators::petersen();
        assert_eq!(parse_edge_list(&to_edge_list(&g)).unwrap(), g);
    }

    #[test]
    fn comments_and_errors() {
        let g = parse_edge_list("# triangle\n3 3\n0 1\n1 2 # side\n\n2 0\n").unwrap();
        assert_eq!(g.edge_count(), 3);
        assert!(matches!(
            parse_edge_list("3 2\n0 1\n"),
            Err(EdgeListError::EdgeCountMismatch { .. })
        ));
        assert!(matches!(
            parse_edge_list("3 1\n0 x\n"),
            Err(EdgeListError::Syntax { line: 2, .. })
        ));
        assert!(matches!(
            parse_edge_list("2 1\n1 1\n"),
            Err(EdgeListError::Graph(GraphError::SelfLoop(1)))
        ));
    }
}
