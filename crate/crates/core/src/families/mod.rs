//! Graph families and their explicit labelings.

mod blanusa;
mod loupekine;

use thiserror::Error;

use crate::graph::{cartesian_product, graph_from_edges, Graph, GraphError, VertexId};
use crate::labeling::KLabeling;

pub use blanusa::{blanusa, blanusa_special_irdf, blanusa_weight, BlanusaDescriptor};
pub use loupekine::{
    loupekine, lp0_irdf, lp0_krdf, lp1_irdf, LoupekineDescriptor, Plug,
};

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum FamilyError {
    #[error("bad parameters: {0}")]
    BadParameters(String),
    #[error("descriptor is not LP0: {0}")]
    NotLP0(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

fn bad(msg: impl Into<String>) -> FamilyError {
    FamilyError::BadParameters(msg.into())
}

/// A constructed labeling and the weight it is supposed to have.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Construction {
    pub labeling: KLabeling,
    pub predicted: u64,
}

pub fn path(n: usize) -> Result<Graph, FamilyError> {
    if n < 1 {
        return Err(bad("path needs n >= 1"));
    }
    let names: Vec<String> = (0..n).map(|i| format!("p{}", i)).collect();
    let edges: Vec<(String, String)> =
        (1..n).map(|i| (names[i - 1].clone(), names[i].clone())).collect();
    Ok(graph_from_edges(names, edges)?)
}

pub fn cycle(n: usize) -> Result<Graph, FamilyError> {
    if n < 3 {
        return Err(bad("cycle needs n >= 3"));
    }
    let names: Vec<String> = (0..n).map(|i| format!("c{}", i)).collect();
    let edges: Vec<(String, String)> =
        (0..n).map(|i| (names[i].clone(), names[(i + 1) % n].clone())).collect();
    Ok(graph_from_edges(names, edges)?)
}

pub fn complete(n: usize) -> Result<Graph, FamilyError> {
    if n < 1 {
        return Err(bad("complete graph needs n >= 1"));
    }
    let names: Vec<String> = (0..n).map(|i| format!("k{}", i)).collect();
    let mut edges = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            edges.push((names[i].clone(), names[j].clone()));
        }
    }
    Ok(graph_from_edges(names, edges)?)
}

/// P2 □ C_{4p} with label k+1 on (w1, v_i) for i ≡ 2 (mod 4) and on (w2, v_j)
/// for j ≡ 0 (mod 4), cycle positions counted from 1. Here w1 = p0, w2 = p1
/// and v_i = c(i-1).
pub fn p2_cycle_with_irdf(p: usize, k: u32) -> Result<(Graph, Construction), FamilyError> {
    if p < 1 || k < 1 {
        return Err(bad("need p >= 1 and k >= 1"));
    }
    let p2 = path(2)?;
    let c = cycle(4 * p)?;
    let g = cartesian_product(&p2, &c)?;
    let mut f = KLabeling::zeros(&g, k);
    for pos in 1..=4 * p {
        let cv = VertexId::new(format!("c{}", pos - 1));
        if pos % 4 == 2 {
            f.set(crate::graph::product_id(&"p0".into(), &cv), k + 1);
        }
        if pos % 4 == 0 {
            f.set(crate::graph::product_id(&"p1".into(), &cv), k + 1);
        }
    }
    Ok((g, Construction { labeling: f, predicted: 2 * p as u64 * (k as u64 + 1) }))
}

/// Small named graphs with hand labelings, used throughout the tests.
pub mod fixtures {
    use super::*;

    fn lab(g: &Graph, k: u32, pairs: &[(&str, u32)]) -> KLabeling {
        let mut f = KLabeling::zeros(g, k);
        for &(v, l) in pairs {
            assert!(g.contains(v), "fixture vertex {v}");
            f.set(v, l);
        }
        f
    }

    fn p2() -> Graph {
        graph_from_edges(["a", "b"], [("a", "b")]).unwrap()
    }

    /// P2 labeled (1, k): a [k]-RDF of weight k+1.
    pub fn p2_one_k(k: u32) -> (Graph, KLabeling) {
        let g = p2();
        let f = lab(&g, k, &[("a", 1), ("b", k)]);
        (g, f)
    }

    /// Two adjacent centers with three leaves each; centers at k+1.
    pub fn double_star(k: u32) -> (Graph, KLabeling) {
        let mut vs = vec!["c1", "c2"];
        let leaves = ["l1a", "l1b", "l1c", "l2a", "l2b", "l2c"];
        vs.extend(leaves);
        let mut es = vec![("c1", "c2")];
        for l in &leaves[..3] {
            es.push(("c1", l));
        }
        for l in &leaves[3..] {
            es.push(("c2", l));
        }
        let g = graph_from_edges(vs, es).unwrap();
        let f = lab(&g, k, &[("c1", k + 1), ("c2", k + 1)]);
        (g, f)
    }

    /// P2 labeled (0, k+1).
    pub fn p2_zero_top(k: u32) -> (Graph, KLabeling) {
        let g = p2();
        let f = lab(&g, k, &[("a", 0), ("b", k + 1)]);
        (g, f)
    }

    /// A center (k+1) with three 0-leaves, joined to a 0 middle vertex that
    /// carries three leaves labeled k. Weight 4k+1.
    pub fn spider(k: u32) -> (Graph, KLabeling) {
        let vs = ["hub", "h1", "h2", "h3", "mid", "m1", "m2", "m3"];
        let es = [
            ("hub", "h1"),
            ("hub", "h2"),
            ("hub", "h3"),
            ("hub", "mid"),
            ("mid", "m1"),
            ("mid", "m2"),
            ("mid", "m3"),
        ];
        let g = graph_from_edges(vs, es).unwrap();
        let f = lab(&g, k, &[("hub", k + 1), ("m1", k), ("m2", k), ("m3", k)]);
        (g, f)
    }

    /// C6 labeled (0, k+1, 0, 0, k+1, 0) around the cycle.
    pub fn c6_pair(k: u32) -> (Graph, KLabeling) {
        let g = cycle(6).unwrap();
        let f = lab(&g, k, &[("c1", k + 1), ("c4", k + 1)]);
        (g, f)
    }
}
