//! Immutable simple undirected graphs keyed by string vertex ids.
//!
//! Vertices are stored in `VertexId` order and addressed internally by dense
//! indices `0..n`, so index order and id order always agree.

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct VertexId(String);

impl VertexId {
    pub fn new(s: impl Into<String>) -> Self {
        VertexId(s.into())
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl From<&str> for VertexId {
    fn from(s: &str) -> Self {
        VertexId(s.to_string())
    }
}

impl From<String> for VertexId {
    fn from(s: String) -> Self {
        VertexId(s)
    }
}

impl std::borrow::Borrow<str> for VertexId {
    fn borrow(&self) -> &str {
        &self.0
    }
}

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("edge endpoint {0} is not a declared vertex")]
    UnknownEndpoint(VertexId),
    #[error("self-loop at {0}")]
    SelfLoop(VertexId),
    #[error("duplicate edge {0} -- {1}")]
    DuplicateEdge(VertexId, VertexId),
    #[error("duplicate vertex {0}")]
    DuplicateVertex(VertexId),
    #[error("unknown vertex {0}")]
    UnknownVertex(VertexId),
    #[error("vertex ids must be non-empty")]
    EmptyId,
    #[error("graph has no vertices")]
    EmptyGraph,
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("bad graph json: {0}")]
    Json(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    ids: Vec<VertexId>,
    index: HashMap<VertexId, usize>,
    adj: Vec<Vec<usize>>,
    m: usize,
}

/// Collects vertices and edges, validating as it goes. `build` freezes the graph.
#[derive(Default, Debug, Clone)]
pub struct GraphBuilder {
    vertices: BTreeSet<VertexId>,
    edges: BTreeSet<(VertexId, VertexId)>,
}

impl GraphBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_vertex(&mut self, v: impl Into<VertexId>) -> Result<&mut Self, GraphError> {
        let v = v.into();
        if v.as_str().is_empty() {
            return Err(GraphError::EmptyId);
        }
        if !self.vertices.insert(v.clone()) {
            return Err(GraphError::DuplicateVertex(v));
        }
        Ok(self)
    }

    pub fn has_vertex(&self, v: &str) -> bool {
        self.vertices.contains(v)
    }

    pub fn add_edge(
        &mut self,
        a: impl Into<VertexId>,
        b: impl Into<VertexId>,
    ) -> Result<&mut Self, GraphError> {
        let (a, b) = (a.into(), b.into());
        for x in [&a, &b] {
            if !self.vertices.contains(x) {
                return Err(GraphError::UnknownEndpoint(x.clone()));
            }
        }
        if a == b {
            return Err(GraphError::SelfLoop(a));
        }
        let key = if a < b { (a, b) } else { (b, a) };
        if self.edges.contains(&key) {
            return Err(GraphError::DuplicateEdge(key.0, key.1));
        }
        self.edges.insert(key);
        Ok(self)
    }

    pub fn remove_edge(&mut self, a: &str, b: &str) -> bool {
        let (a, b) = (VertexId::from(a), VertexId::from(b));
        let key = if a < b { (a, b) } else { (b, a) };
        self.edges.remove(&key)
    }

    pub fn build(&self) -> Graph {
        let ids: Vec<VertexId> = self.vertices.iter().cloned().collect();
        let index: HashMap<VertexId, usize> =
            ids.iter().enumerate().map(|(i, v)| (v.clone(), i)).collect();
        let mut adj = vec![Vec::new(); ids.len()];
        for (a, b) in &self.edges {
            let (ia, ib) = (index[a], index[b]);
            adj[ia].push(ib);
            adj[ib].push(ia);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        Graph { ids, index, adj, m: self.edges.len() }
    }
}

impl Graph {
    pub fn n(&self) -> usize {
        self.ids.len()
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn vertices(&self) -> &[VertexId] {
        &self.ids
    }

    pub fn id(&self, i: usize) -> &VertexId {
        &self.ids[i]
    }

    pub fn index_of(&self, v: &str) -> Option<usize> {
        self.index.get(v).copied()
    }

    pub fn require(&self, v: &str) -> Result<usize, GraphError> {
        self.index_of(v).ok_or_else(|| GraphError::UnknownVertex(v.into()))
    }

    pub fn contains(&self, v: &str) -> bool {
        self.index.contains_key(v)
    }

    /// Neighbors of vertex index `i`, sorted.
    pub fn nbrs(&self, i: usize) -> &[usize] {
        &self.adj[i]
    }

    pub fn neighbors(&self, v: &str) -> Result<Vec<&VertexId>, GraphError> {
        let i = self.require(v)?;
        Ok(self.adj[i].iter().map(|&j| &self.ids[j]).collect())
    }

    pub fn degree(&self, i: usize) -> usize {
        self.adj[i].len()
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(|a| a.len()).max().unwrap_or(0)
    }

    pub fn adjacent(&self, i: usize, j: usize) -> bool {
        self.adj[i].binary_search(&j).is_ok()
    }

    /// Edges as index pairs `(u, v)` with `u < v`, sorted.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.m);
        for (u, list) in self.adj.iter().enumerate() {
            for &v in list {
                if u < v {
                    out.push((u, v));
                }
            }
        }
        out
    }

    pub fn edge_ids(&self) -> Vec<(VertexId, VertexId)> {
        self.edges()
            .into_iter()
            .map(|(u, v)| (self.ids[u].clone(), self.ids[v].clone()))
            .collect()
    }

    /// Component label per vertex index; labels are assigned in index order.
    pub fn components(&self) -> Vec<usize> {
        let mut comp = vec![usize::MAX; self.n()];
        let mut next = 0;
        for s in 0..self.n() {
            if comp[s] != usize::MAX {
                continue;
            }
            comp[s] = next;
            let mut queue = VecDeque::from([s]);
            while let Some(u) = queue.pop_front() {
                for &w in &self.adj[u] {
                    if comp[w] == usize::MAX {
                        comp[w] = next;
                        queue.push_back(w);
                    }
                }
            }
            next += 1;
        }
        comp
    }

    pub fn is_connected(&self) -> bool {
        self.n() > 0 && self.components().iter().all(|&c| c == 0)
    }

    pub fn regular_degree(&self) -> Option<usize> {
        let d = self.adj.first()?.len();
        self.adj.iter().all(|a| a.len() == d).then_some(d)
    }

    fn indices_of<'a>(
        &self,
        set: impl IntoIterator<Item = &'a VertexId>,
    ) -> Result<Vec<usize>, GraphError> {
        set.into_iter().map(|v| self.require(v.as_str())).collect()
    }
}

pub fn graph_from_edges<V, E>(vertices: V, edges: E) -> Result<Graph, GraphError>
where
    V: IntoIterator,
    V::Item: Into<VertexId>,
    E: IntoIterator<Item = (V::Item, V::Item)>,
{
    let mut b = GraphBuilder::new();
    for v in vertices {
        b.add_vertex(v)?;
    }
    for (x, y) in edges {
        b.add_edge(x, y)?;
    }
    Ok(b.build())
}

pub fn closed_neighborhood(g: &Graph, v: &str) -> Result<BTreeSet<VertexId>, GraphError> {
    let i = g.require(v)?;
    let mut out: BTreeSet<VertexId> = g.nbrs(i).iter().map(|&j| g.id(j).clone()).collect();
    out.insert(g.id(i).clone());
    Ok(out)
}

pub fn is_independent<'a>(
    g: &Graph,
    set: impl IntoIterator<Item = &'a VertexId>,
) -> Result<bool, GraphError> {
    let idx = g.indices_of(set)?;
    let mut mark = vec![false; g.n()];
    for &i in &idx {
        mark[i] = true;
    }
    Ok(idx.iter().all(|&i| g.nbrs(i).iter().all(|&j| !mark[j])))
}

pub fn is_dominating<'a>(
    g: &Graph,
    set: impl IntoIterator<Item = &'a VertexId>,
) -> Result<bool, GraphError> {
    let idx = g.indices_of(set)?;
    let mut mark = vec![false; g.n()];
    for &i in &idx {
        mark[i] = true;
    }
    Ok((0..g.n()).all(|v| mark[v] || g.nbrs(v).iter().any(|&w| mark[w])))
}

pub fn product_id(u: &VertexId, v: &VertexId) -> VertexId {
    VertexId(format!("({},{})", u, v))
}

pub fn cartesian_product(g: &Graph, h: &Graph) -> Result<Graph, GraphError> {
    if g.n() == 0 || h.n() == 0 {
        return Err(GraphError::EmptyGraph);
    }
    let mut b = GraphBuilder::new();
    for u in g.vertices() {
        for v in h.vertices() {
            b.add_vertex(product_id(u, v))?;
        }
    }
    for u in g.vertices() {
        for (x, y) in h.edge_ids() {
            b.add_edge(product_id(u, &x), product_id(u, &y))?;
        }
    }
    for v in h.vertices() {
        for (x, y) in g.edge_ids() {
            b.add_edge(product_id(&x, v), product_id(&y, v))?;
        }
    }
    Ok(b.build())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphStats {
    pub n: usize,
    pub m: usize,
    pub max_degree: usize,
    pub is_connected: bool,
    /// `Some(r)` when every vertex has degree r.
    pub regular: Option<usize>,
}

pub fn graph_stats(g: &Graph) -> GraphStats {
    GraphStats {
        n: g.n(),
        m: g.m(),
        max_degree: g.max_degree(),
        is_connected: g.is_connected(),
        regular: g.regular_degree(),
    }
}
