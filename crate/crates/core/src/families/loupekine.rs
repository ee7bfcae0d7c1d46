//! Loupekine snarks built from ℓ basic blocks on p, q, r, s, t, u, v.

use serde::{Deserialize, Serialize};

use super::{bad, Construction, FamilyError};
use crate::graph::{Graph, GraphBuilder};
use crate::labeling::KLabeling;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Plug {
    /// s_i r_{i+1}, v_i u_{i+1}
    Laminar,
    /// s_i u_{i+1}, v_i r_{i+1}
    Intersecting,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LoupekineDescriptor {
    pub ell: usize,
    /// plugs[i] wires block i to block i+1 (mod ℓ)
    pub plugs: Vec<Plug>,
    pub triples: Vec<[usize; 3]>,
    pub pairs: Vec<[usize; 2]>,
}

const BLOCK_EDGES: [(&str, &str); 8] = [
    ("p", "t"),
    ("t", "q"),
    ("q", "r"),
    ("r", "s"),
    ("s", "p"),
    ("u", "v"),
    ("u", "p"),
    ("v", "q"),
];

fn bv(i: usize, name: &str) -> String {
    format!("b{}:{}", i, name)
}

fn link_id(tr: &[usize; 3]) -> String {
    let mut s = *tr;
    s.sort();
    format!("z:{},{},{}", s[0], s[1], s[2])
}

fn consecutive_start(set: &[usize], ell: usize) -> Option<usize> {
    let mut sorted = set.to_vec();
    sorted.sort();
    sorted.iter().copied().find(|&st| {
        let mut run: Vec<usize> = (0..set.len()).map(|o| (st + o) % ell).collect();
        run.sort();
        run == sorted
    })
}

impl LoupekineDescriptor {
    /// Canonical LP0: all plugs laminar, triples on the lowest blocks, then pairs.
    pub fn lp0(ell: usize, sigma: usize) -> Result<Self, FamilyError> {
        if sigma * 3 > ell {
            return Err(bad(format!("sigma {} exceeds floor(ell/3)", sigma)));
        }
        let triples = (0..sigma).map(|j| [3 * j, 3 * j + 1, 3 * j + 2]).collect();
        let pairs = (3 * sigma..ell).step_by(2).map(|i| [i, i + 1]).collect();
        let d = LoupekineDescriptor { ell, plugs: vec![Plug::Laminar; ell], triples, pairs };
        d.validate()?;
        Ok(d)
    }

    /// Five blocks, plugs alternating, one link on {0, 2, 4} and a repair edge t1 t3.
    pub fn five_block_lp1() -> Self {
        use Plug::*;
        LoupekineDescriptor {
            ell: 5,
            plugs: vec![Laminar, Intersecting, Laminar, Intersecting, Laminar],
            triples: vec![[0, 2, 4]],
            pairs: vec![[1, 3]],
        }
    }

    /// Same plugs as above with the link on {0, 1, 2} and repair edge t3 t4.
    pub fn five_block_lp0() -> Self {
        LoupekineDescriptor {
            triples: vec![[0, 1, 2]],
            pairs: vec![[3, 4]],
            ..Self::five_block_lp1()
        }
    }

    pub fn sigma(&self) -> usize {
        self.triples.len()
    }

    pub fn order(&self) -> usize {
        7 * self.ell + self.sigma()
    }

    pub fn validate(&self) -> Result<(), FamilyError> {
        let ell = self.ell;
        if ell < 3 || ell % 2 == 0 {
            return Err(bad(format!("ell must be odd and >= 3, got {}", ell)));
        }
        if self.plugs.len() != ell {
            return Err(bad(format!("expected {} plug choices, got {}", ell, self.plugs.len())));
        }
        let sigma = self.sigma();
        if sigma % 2 == 0 || sigma > ell / 3 {
            return Err(bad(format!("sigma must be odd with 1 <= sigma <= {}, got {}", ell / 3, sigma)));
        }
        let mut seen = vec![false; ell];
        let all = self.triples.iter().flat_map(|t| t.iter()).chain(self.pairs.iter().flat_map(|p| p.iter()));
        for &b in all {
            if b >= ell {
                return Err(bad(format!("block index {} out of range", b)));
            }
            if seen[b] {
                return Err(bad(format!("block {} used twice in triples/pairs", b)));
            }
            seen[b] = true;
        }
        if let Some(b) = seen.iter().position(|s| !s) {
            return Err(bad(format!("block {} is in no triple or pair", b)));
        }
        Ok(())
    }

    pub fn is_lp0(&self) -> bool {
        self.triples.iter().all(|t| consecutive_start(t, self.ell).is_some())
            && self.pairs.iter().all(|p| consecutive_start(p, self.ell).is_some())
    }

    fn triple_starts(&self) -> Result<Vec<usize>, FamilyError> {
        self.validate()?;
        self.triples
            .iter()
            .map(|t| {
                consecutive_start(t, self.ell)
                    .ok_or_else(|| FamilyError::NotLP0(format!("triple {:?} is not consecutive", t)))
            })
            .collect::<Result<Vec<_>, _>>()
            .and_then(|st| {
                for p in &self.pairs {
                    if consecutive_start(p, self.ell).is_none() {
                        return Err(FamilyError::NotLP0(format!("pair {:?} is not consecutive", p)));
                    }
                }
                Ok(st)
            })
    }
}

pub fn loupekine(d: &LoupekineDescriptor) -> Result<Graph, FamilyError> {
    d.validate()?;
    let ell = d.ell;
    let mut b = GraphBuilder::new();
    for i in 0..ell {
        for v in ["p", "q", "r", "s", "t", "u", "v"] {
            b.add_vertex(bv(i, v))?;
        }
        for (x, y) in BLOCK_EDGES {
            b.add_edge(bv(i, x), bv(i, y))?;
        }
    }
    for i in 0..ell {
        let j = (i + 1) % ell;
        let (to_s, to_v) = match d.plugs[i] {
            Plug::Laminar => ("r", "u"),
            Plug::Intersecting => ("u", "r"),
        };
        b.add_edge(bv(i, "s"), bv(j, to_s))?;
        b.add_edge(bv(i, "v"), bv(j, to_v))?;
    }
    for tr in &d.triples {
        let z = link_id(tr);
        b.add_vertex(z.clone())?;
        for &i in tr {
            b.add_edge(z.clone(), bv(i, "t"))?;
        }
    }
    for pr in &d.pairs {
        b.add_edge(bv(pr[0], "t"), bv(pr[1], "t"))?;
    }
    Ok(b.build())
}

fn check_k(k: u32) -> Result<(), FamilyError> {
    if k < 1 {
        return Err(bad("k must be >= 1"));
    }
    Ok(())
}

/// p_i, q_i at k+1 in every block, links at k.
pub fn lp1_irdf(d: &LoupekineDescriptor, k: u32) -> Result<Construction, FamilyError> {
    check_k(k)?;
    let g = loupekine(d)?;
    let mut f = KLabeling::zeros(&g, k);
    for i in 0..d.ell {
        f.set(bv(i, "p"), k + 1);
        f.set(bv(i, "q"), k + 1);
    }
    for tr in &d.triples {
        f.set(link_id(tr), k);
    }
    let (k, ell, sigma) = (k as u64, d.ell as u64, d.sigma() as u64);
    Ok(Construction { labeling: f, predicted: 2 * (k + 1) * ell + k * sigma })
}

fn lp0_labeling(d: &LoupekineDescriptor, k: u32, rdf: bool) -> Result<KLabeling, FamilyError> {
    check_k(k)?;
    let starts = d.triple_starts()?;
    let g = loupekine(d)?;
    let ell = d.ell;
    let mut f = KLabeling::zeros(&g, k);
    for pr in &d.pairs {
        for &i in pr {
            f.set(bv(i, "p"), k + 1);
            f.set(bv(i, "q"), k + 1);
        }
    }
    for (tr, &i) in d.triples.iter().zip(&starts) {
        let (i1, i2) = ((i + 1) % ell, (i + 2) % ell);
        f.set(bv(i, "s"), k + 1);
        f.set(bv(i, "v"), k + 1);
        if rdf {
            f.set(bv(i1, "t"), k + 1);
        } else {
            f.set(bv(i1, "p"), k);
            f.set(bv(i1, "q"), k);
        }
        f.set(bv(i2, "r"), k + 1);
        f.set(bv(i2, "u"), k + 1);
        f.set(link_id(tr), k + 1);
    }
    Ok(f)
}

/// Pairs get p, q at k+1; a triple starting at block i gets s_i, v_i, r_{i+2},
/// u_{i+2} and the link at k+1, and p_{i+1}, q_{i+1} at k.
pub fn lp0_irdf(d: &LoupekineDescriptor, k: u32) -> Result<Construction, FamilyError> {
    let f = lp0_labeling(d, k, false)?;
    let (k, ell, sigma) = (k as u64, d.ell as u64, d.sigma() as u64);
    Ok(Construction { labeling: f, predicted: 2 * (k + 1) * ell + (k - 1) * sigma })
}

/// Like lp0_irdf but the middle block of a triple carries t at k+1 instead of
/// p, q at k. Not independent: t_{i+1} touches the link.
pub fn lp0_krdf(d: &LoupekineDescriptor, k: u32) -> Result<Construction, FamilyError> {
    let f = lp0_labeling(d, k, true)?;
    Ok(Construction { labeling: f, predicted: 2 * (k as u64 + 1) * d.ell as u64 })
}
