//! Vertex cover to independent [k]-Roman domination: every edge uv of G is
//! replaced by a 10-vertex gadget hanging between u and v.

use std::collections::BTreeSet;

use serde::Serialize;
use thiserror::Error;

use crate::graph::{Graph, GraphBuilder, GraphError, VertexId};
use crate::labeling::{verify_krdf, KLabeling};

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum ReductionError {
    #[error("k = {0} is below 3; pass the small-k override to build anyway")]
    BadK(u32),
    #[error("edge {0} -- {1} is not covered")]
    NotAVertexCover(VertexId, VertexId),
    #[error("{0} is not a vertex of the source graph")]
    UnknownVertex(VertexId),
    #[error("labeling is not a valid [k]-RDF of the reduced graph: {0}")]
    InvalidLabeling(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// One gadget. `u` (the smaller endpoint) hangs off x1 and `v` off x5.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Gadget {
    pub u: VertexId,
    pub v: VertexId,
    /// x1..x10
    pub x: Vec<VertexId>,
}

impl Gadget {
    pub fn xi(&self, i: usize) -> &VertexId {
        &self.x[i - 1]
    }
}

#[derive(Clone, Debug)]
pub struct ReducedInstance {
    pub source: Graph,
    pub product: Graph,
    pub k: u32,
    pub gadgets: Vec<Gadget>,
    pub notes: Vec<String>,
}

#[derive(Serialize)]
struct InstanceJson<'a> {
    k: u32,
    graph: crate::io::GraphJson,
    gadgets: &'a [Gadget],
    notes: &'a [String],
}

impl ReducedInstance {
    pub fn to_json(&self) -> String {
        let j = InstanceJson {
            k: self.k,
            graph: crate::io::GraphJson::from_graph(&self.product),
            gadgets: &self.gadgets,
            notes: &self.notes,
        };
        serde_json::to_string_pretty(&j).expect("instance serializes")
    }

    /// |C| + k|V(G)| + (3k+2)|E(G)|
    pub fn formula(&self, cover_size: usize) -> u64 {
        let k = self.k as u64;
        cover_size as u64 + k * self.source.n() as u64 + (3 * k + 2) * self.source.m() as u64
    }
}

pub fn orig_id(v: &VertexId) -> VertexId {
    VertexId::new(format!("orig:{}", v))
}

const GADGET_EDGES: [(usize, usize); 10] =
    [(1, 2), (2, 3), (3, 4), (4, 5), (6, 7), (7, 8), (8, 9), (9, 10), (2, 7), (4, 9)];

pub fn build_reduction(g: &Graph, k: u32, allow_small_k: bool) -> Result<ReducedInstance, ReductionError> {
    if k < 3 && !allow_small_k {
        return Err(ReductionError::BadK(k));
    }
    let mut b = GraphBuilder::new();
    for v in g.vertices() {
        b.add_vertex(orig_id(v))?;
    }
    let mut gadgets = Vec::with_capacity(g.m());
    for (idx, (u, v)) in g.edge_ids().into_iter().enumerate() {
        let x: Vec<VertexId> = (1..=10).map(|i| VertexId::new(format!("g:e{}:{}", idx, i))).collect();
        for id in &x {
            b.add_vertex(id.clone())?;
        }
        for (a, c) in GADGET_EDGES {
            b.add_edge(x[a - 1].clone(), x[c - 1].clone())?;
        }
        b.add_edge(orig_id(&u), x[0].clone())?;
        b.add_edge(orig_id(&v), x[4].clone())?;
        gadgets.push(Gadget { u, v, x });
    }
    let mut notes = Vec::new();
    if k < 3 {
        notes.push(format!("k = {} is outside the range where the weight identity is known", k));
    }
    if g.regular_degree() != Some(3) {
        notes.push("source graph is not 3-regular".to_string());
    }
    if !g.is_connected() {
        notes.push("source graph is not connected".to_string());
    }
    notes.push("2-connectivity and planarity of the source are not checked".to_string());
    Ok(ReducedInstance { source: g.clone(), product: b.build(), k, gadgets, notes })
}

fn check_cover(r: &ReducedInstance, c: &BTreeSet<VertexId>) -> Result<(), ReductionError> {
    for v in c {
        if !r.source.contains(v.as_str()) {
            return Err(ReductionError::UnknownVertex(v.clone()));
        }
    }
    for gd in &r.gadgets {
        if !c.contains(&gd.u) && !c.contains(&gd.v) {
            return Err(ReductionError::NotAVertexCover(gd.u.clone(), gd.v.clone()));
        }
    }
    Ok(())
}

/// Labels F from a vertex cover. By default each gadget uses its endpoint in C,
/// the smaller one when both are covered.
pub fn vc_to_irdf(r: &ReducedInstance, c: &BTreeSet<VertexId>) -> Result<KLabeling, ReductionError> {
    vc_to_irdf_designated(r, c, |gd| if c.contains(&gd.u) { gd.u.clone() } else { gd.v.clone() })
}

/// As `vc_to_irdf`, with the designated endpoint picked by `pick`. The pick
/// must lie in C.
pub fn vc_to_irdf_designated<F>(
    r: &ReducedInstance,
    c: &BTreeSet<VertexId>,
    pick: F,
) -> Result<KLabeling, ReductionError>
where
    F: Fn(&Gadget) -> VertexId,
{
    check_cover(r, c)?;
    let k = r.k;
    let mut f = KLabeling::zeros(&r.product, k);
    for v in r.source.vertices() {
        f.set(orig_id(v), if c.contains(v) { k + 1 } else { k });
    }
    for gd in &r.gadgets {
        let d = pick(gd);
        if !c.contains(&d) || (d != gd.u && d != gd.v) {
            return Err(ReductionError::NotAVertexCover(gd.u.clone(), gd.v.clone()));
        }
        if d == gd.v {
            f.set(gd.xi(6).clone(), k);
            f.set(gd.xi(2).clone(), k + 1);
            f.set(gd.xi(9).clone(), k + 1);
        } else {
            f.set(gd.xi(10).clone(), k);
            f.set(gd.xi(4).clone(), k + 1);
            f.set(gd.xi(7).clone(), k + 1);
        }
    }
    Ok(f)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Extracted {
    pub cover: BTreeSet<VertexId>,
    pub is_cover: bool,
}

/// Originals labeled k+1.
pub fn extract_vc(r: &ReducedInstance, f: &KLabeling) -> Result<Extracted, ReductionError> {
    let rep = verify_krdf(&r.product, f);
    if !rep.valid {
        let first = rep
            .violations
            .first()
            .map(|v| format!("{} at {}", v.detail, v.vertex))
            .unwrap_or_default();
        return Err(ReductionError::InvalidLabeling(first));
    }
    let cover: BTreeSet<VertexId> = r
        .source
        .vertices()
        .iter()
        .filter(|v| f.get(orig_id(v).as_str()) == Some(r.k + 1))
        .cloned()
        .collect();
    let is_cover = r.gadgets.iter().all(|gd| cover.contains(&gd.u) || cover.contains(&gd.v));
    Ok(Extracted { cover, is_cover })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GadgetAudit {
    pub edge: (VertexId, VertexId),
    pub weight: u64,
    pub x2_x4: (u32, u32),
    pub flagged: bool,
}

/// Weight on x2, x3, x4, x6..x10 and the (x2, x4) pair for each gadget.
pub fn gadget_weight_audit(r: &ReducedInstance, f: &KLabeling) -> Vec<GadgetAudit> {
    let k = r.k;
    let lab = |v: &VertexId| f.get(v.as_str()).unwrap_or(0);
    r.gadgets
        .iter()
        .map(|gd| {
            let weight: u64 = [2, 3, 4, 6, 7, 8, 9, 10].iter().map(|&i| lab(gd.xi(i)) as u64).sum();
            let pair = (lab(gd.xi(2)), lab(gd.xi(4)));
            let ok_pair = [(0, 0), (k + 1, 0), (0, k + 1)].contains(&pair);
            GadgetAudit {
                edge: (gd.u.clone(), gd.v.clone()),
                weight,
                x2_x4: pair,
                flagged: weight != 3 * k as u64 + 2 || !ok_pair,
            }
        })
        .collect()
}
