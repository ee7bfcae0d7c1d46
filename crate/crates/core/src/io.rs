//! Text and JSON graph formats.
//!
//! Edge list: one record per line, `v <id>` declares a vertex, `e <a> <b>`
//! declares an edge, `#` starts a comment. JSON: `{"vertices": [...], "edges": [[a, b], ...]}`.

use serde::{Deserialize, Serialize};

use crate::graph::{Graph, GraphBuilder, GraphError, VertexId};

pub fn parse_edge_list(text: &str) -> Result<Graph, GraphError> {
    let mut b = GraphBuilder::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let parse_err = |msg: String| GraphError::Parse { line: lineno + 1, msg };
        let toks: Vec<&str> = line.split_whitespace().collect();
        match toks.as_slice() {
            ["v", id] => {
                b.add_vertex(*id)?;
            }
            ["e", x, y] => {
                b.add_edge(*x, *y)?;
            }
            [kind, ..] if *kind == "v" || *kind == "e" => {
                return Err(parse_err(format!("wrong field count for '{}' record", kind)))
            }
            _ => return Err(parse_err(format!("unrecognized record '{}'", line))),
        }
    }
    Ok(b.build())
}

pub fn to_edge_list(g: &Graph) -> String {
    let mut out = String::new();
    for v in g.vertices() {
        out.push_str("v ");
        out.push_str(v.as_str());
        out.push('\n');
    }
    for (a, b) in g.edge_ids() {
        out.push_str(&format!("e {} {}\n", a, b));
    }
    out
}

#[derive(Serialize, Deserialize)]
pub struct GraphJson {
    pub vertices: Vec<VertexId>,
    pub edges: Vec<[VertexId; 2]>,
}

impl GraphJson {
    pub fn from_graph(g: &Graph) -> Self {
        GraphJson {
            vertices: g.vertices().to_vec(),
            edges: g.edge_ids().into_iter().map(|(a, b)| [a, b]).collect(),
        }
    }

    pub fn into_graph(self) -> Result<Graph, GraphError> {
        let mut b = GraphBuilder::new();
        for v in self.vertices {
            b.add_vertex(v)?;
        }
        for [x, y] in self.edges {
            b.add_edge(x, y)?;
        }
        Ok(b.build())
    }
}

pub fn graph_to_json(g: &Graph) -> String {
    serde_json::to_string_pretty(&GraphJson::from_graph(g)).expect("graph json")
}

pub fn graph_from_json(text: &str) -> Result<Graph, GraphError> {
    let gj: GraphJson = serde_json::from_str(text).map_err(|e| GraphError::Json(e.to_string()))?;
    gj.into_graph()
}

/// Reads either format, sniffing JSON by a leading `{`.
pub fn parse_graph(text: &str) -> Result<Graph, GraphError> {
    if text.trim_start().starts_with('{') {
        graph_from_json(text)
    } else {
        parse_edge_list(text)
    }
}
