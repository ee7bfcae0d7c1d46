//! Labelings f: V -> {0..k+1} and the [k]-RDF / [k]-IRDF checks.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{Graph, GraphError, VertexId};

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum LabelingError {
    #[error("k must be at least 1")]
    BadK,
    #[error("vertex {0} has no label")]
    Unlabeled(VertexId),
    #[error("label {label} at {vertex} is outside 0..={max}")]
    OutOfRange { vertex: VertexId, label: u32, max: u32 },
    #[error("labeled vertex {0} is not in the graph")]
    Foreign(VertexId),
    #[error("bad labeling json: {0}")]
    Json(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KLabeling {
    pub k: u32,
    pub labels: BTreeMap<VertexId, u32>,
}

impl KLabeling {
    pub fn new(k: u32) -> Self {
        KLabeling { k, labels: BTreeMap::new() }
    }

    /// All vertices of `g` labeled 0.
    pub fn zeros(g: &Graph, k: u32) -> Self {
        KLabeling { k, labels: g.vertices().iter().map(|v| (v.clone(), 0)).collect() }
    }

    pub fn from_dense(g: &Graph, k: u32, labels: &[u32]) -> Self {
        assert_eq!(labels.len(), g.n());
        KLabeling {
            k,
            labels: g.vertices().iter().cloned().zip(labels.iter().copied()).collect(),
        }
    }

    pub fn set(&mut self, v: impl Into<VertexId>, label: u32) -> &mut Self {
        self.labels.insert(v.into(), label);
        self
    }

    pub fn get(&self, v: &str) -> Option<u32> {
        self.labels.get(v).copied()
    }

    /// Label by graph index order; fails unless `self` is a total labeling of `g` within range.
    pub fn to_dense(&self, g: &Graph) -> Result<Vec<u32>, LabelingError> {
        if self.k == 0 {
            return Err(LabelingError::BadK);
        }
        for v in self.labels.keys() {
            if !g.contains(v.as_str()) {
                return Err(LabelingError::Foreign(v.clone()));
            }
        }
        g.vertices()
            .iter()
            .map(|v| match self.labels.get(v) {
                None => Err(LabelingError::Unlabeled(v.clone())),
                Some(&l) if l > self.k + 1 => Err(LabelingError::OutOfRange {
                    vertex: v.clone(),
                    label: l,
                    max: self.k + 1,
                }),
                Some(&l) => Ok(l),
            })
            .collect()
    }

    /// V_p as a set.
    pub fn class(&self, p: u32) -> BTreeSet<VertexId> {
        self.labels.iter().filter(|(_, &l)| l == p).map(|(v, _)| v.clone()).collect()
    }

    pub fn class_sizes(&self) -> Vec<usize> {
        let top = self.labels.values().copied().max().unwrap_or(0).max(self.k + 1);
        let mut sizes = vec![0; top as usize + 1];
        for &l in self.labels.values() {
            sizes[l as usize] += 1;
        }
        sizes
    }

    pub fn active(&self) -> BTreeSet<VertexId> {
        self.labels.iter().filter(|(_, &l)| l >= 1).map(|(v, _)| v.clone()).collect()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("labeling json")
    }

    pub fn from_json(text: &str) -> Result<Self, LabelingError> {
        serde_json::from_str(text).map_err(|e| LabelingError::Json(e.to_string()))
    }
}

pub fn weight(f: &KLabeling) -> u64 {
    f.labels.values().map(|&l| l as u64).sum()
}

/// Σ p·|V_p|, the same number computed from the partition.
pub fn weight_by_classes(f: &KLabeling) -> u64 {
    f.class_sizes().iter().enumerate().map(|(p, &c)| p as u64 * c as u64).sum()
}

pub fn active_neighborhood(
    g: &Graph,
    f: &KLabeling,
    v: &str,
) -> Result<BTreeSet<VertexId>, GraphError> {
    let i = g.require(v)?;
    Ok(g.nbrs(i)
        .iter()
        .map(|&j| g.id(j))
        .filter(|w| f.get(w.as_str()).unwrap_or(0) >= 1)
        .cloned()
        .collect())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ViolationKind {
    Coverage,
    Independence,
    LabelRange,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub vertex: VertexId,
    pub kind: ViolationKind,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub valid: bool,
    pub violations: Vec<Violation>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl VerifyReport {
    fn from_violations(violations: Vec<Violation>, notes: Vec<String>) -> Self {
        VerifyReport { valid: violations.is_empty(), violations, notes }
    }
}

fn range_violations(g: &Graph, f: &KLabeling) -> Vec<Violation> {
    let mut out = Vec::new();
    if f.k == 0 {
        out.push(Violation {
            vertex: g.vertices().first().cloned().unwrap_or_else(|| "-".into()),
            kind: ViolationKind::LabelRange,
            detail: "k must be at least 1".into(),
        });
    }
    for v in g.vertices() {
        match f.get(v.as_str()) {
            None => out.push(Violation {
                vertex: v.clone(),
                kind: ViolationKind::LabelRange,
                detail: "unlabeled".into(),
            }),
            Some(l) if l > f.k + 1 => out.push(Violation {
                vertex: v.clone(),
                kind: ViolationKind::LabelRange,
                detail: format!("label {} exceeds k+1={}", l, f.k + 1),
            }),
            _ => {}
        }
    }
    for v in f.labels.keys() {
        if !g.contains(v.as_str()) {
            out.push(Violation {
                vertex: v.clone(),
                kind: ViolationKind::LabelRange,
                detail: "not a vertex of the graph".into(),
            });
        }
    }
    out
}

fn coverage_violations(g: &Graph, f: &KLabeling, lab: &[u32]) -> Vec<Violation> {
    let k = f.k as u64;
    let mut out = Vec::new();
    for v in 0..g.n() {
        if lab[v] as u64 >= k {
            continue;
        }
        let mut sum = lab[v] as u64;
        let mut an = 0u64;
        for &w in g.nbrs(v) {
            sum += lab[w] as u64;
            an += (lab[w] >= 1) as u64;
        }
        if sum < k + an {
            out.push(Violation {
                vertex: g.id(v).clone(),
                kind: ViolationKind::Coverage,
                detail: format!("f(N[v])={} < k+|AN(v)|={}", sum, k + an),
            });
        }
    }
    out
}

fn labels_or_zero(g: &Graph, f: &KLabeling) -> Vec<u32> {
    g.vertices().iter().map(|v| f.get(v.as_str()).unwrap_or(0)).collect()
}

pub fn verify_krdf(g: &Graph, f: &KLabeling) -> VerifyReport {
    let mut vs = range_violations(g, f);
    let lab = labels_or_zero(g, f);
    vs.extend(coverage_violations(g, f, &lab));
    VerifyReport::from_violations(vs, Vec::new())
}

pub fn verify_kirdf(g: &Graph, f: &KLabeling) -> VerifyReport {
    let mut vs = range_violations(g, f);
    let lab = labels_or_zero(g, f);
    vs.extend(coverage_violations(g, f, &lab));
    for (u, w) in g.edges() {
        if lab[u] >= 1 && lab[w] >= 1 {
            vs.push(Violation {
                vertex: g.id(u).clone(),
                kind: ViolationKind::Independence,
                detail: format!("active and adjacent to active {}", g.id(w)),
            });
        }
    }
    let mut notes = Vec::new();
    let middle: Vec<String> = g
        .vertices()
        .iter()
        .zip(&lab)
        .filter(|(_, &l)| l >= 1 && l < f.k)
        .map(|(v, l)| format!("{}={}", v, l))
        .collect();
    if !middle.is_empty() {
        notes.push(format!(
            "labels strictly between 0 and k present ({}); a valid independent labeling never uses them",
            middle.join(", ")
        ));
    }
    VerifyReport::from_violations(vs, notes)
}

/// Coverage of a 0-vertex under a {0,k,k+1} labeling, in counting form:
/// one (k+1)-neighbor suffices, otherwise (for k >= 2) two k-neighbors.
pub fn zero_vertex_covered(k: u32, big_nbrs: usize, k_nbrs: usize) -> bool {
    big_nbrs >= 1 || (k >= 2 && k_nbrs >= 2)
}
