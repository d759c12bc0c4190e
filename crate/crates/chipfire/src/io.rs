//! JSON graph files and divisor literals.

use serde::{Deserialize, Serialize};

use crate::arithmetical::{edge_matrix, validate_arithmetical, ArithmeticalGraph};
use crate::error::{Error, Result};
use crate::graph::Digraph;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase", deny_unknown_fields)]
pub enum GraphFile {
    Digraph {
        vertices: usize,
        arcs: Vec<(usize, usize, i64)>,
    },
    Arithmetical {
        vertices: usize,
        edges: Vec<(usize, usize, i64)>,
        multiplicities: Vec<i64>,
    },
}

#[derive(Debug, Clone)]
pub enum LoadedGraph {
    Digraph(Digraph),
    Arithmetical(ArithmeticalGraph),
}

impl GraphFile {
    pub fn parse(text: &str) -> Result<GraphFile> {
        serde_json::from_str(text).map_err(|e| Error::InvalidInput(format!("graph JSON: {e}")))
    }

    pub fn load(&self) -> Result<LoadedGraph> {
        match self {
            GraphFile::Digraph { vertices, arcs } => {
                Ok(LoadedGraph::Digraph(Digraph::new(*vertices, arcs)?))
            }
            GraphFile::Arithmetical { vertices, edges, multiplicities } => {
                let a = edge_matrix(*vertices, edges)?;
                Ok(LoadedGraph::Arithmetical(validate_arithmetical(a, multiplicities.clone())?))
            }
        }
    }

    pub fn from_digraph(g: &Digraph) -> GraphFile {
        GraphFile::Digraph { vertices: g.vertex_count(), arcs: g.arc_list() }
    }

    pub fn from_arithmetical(ag: &ArithmeticalGraph) -> GraphFile {
        GraphFile::Arithmetical {
            vertices: ag.vertex_count(),
            edges: ag.edge_list(),
            multiplicities: ag.multiplicities().to_vec(),
        }
    }
}

/// Parses "d0,d1,…", accepting the Unicode minus sign as well as '-'.
pub fn parse_divisor(text: &str) -> Result<Vec<i64>> {
    text.split(',')
        .map(|s| {
            let s = s.trim().replace('\u{2212}', "-");
            s.parse::<i64>()
                .map_err(|_| Error::InvalidInput(format!("bad divisor entry {s:?}")))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn digraph_round_trip() {
        let text = r#"{"type":"digraph","vertices":3,"arcs":[[0,1,1],[1,2,1],[2,0,1]]}"#;
        let file = GraphFile::parse(text).unwrap();
        let LoadedGraph::Digraph(g) = file.load().unwrap() else { panic!("expected digraph") };
        assert_eq!(g, fixtures::t3());
        assert_eq!(serde_json::to_string(&GraphFile::from_digraph(&g)).unwrap(), text);
    }

    #[test]
    fn arithmetical_file() {
        let text = r#"{"type":"arithmetical","vertices":2,"edges":[[0,1,6]],"multiplicities":[2,3]}"#;
        let LoadedGraph::Arithmetical(ag) = GraphFile::parse(text).unwrap().load().unwrap() else {
            panic!("expected arithmetical graph")
        };
        assert_eq!(ag, fixtures::two_vertex(2, 3));
    }

    #[test]
    fn malformed_input() {
        assert!(GraphFile::parse("{").is_err());
        assert!(GraphFile::parse(r#"{"type":"tree","vertices":2}"#).is_err());
        assert!(parse_divisor("1,x").is_err());
        assert_eq!(parse_divisor("\u{2212}1, 0,2").unwrap(), vec![-1, 0, 2]);
    }
}
