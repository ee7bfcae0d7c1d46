//! Exhaustive oracle. Deliberately shares nothing with the branch-and-bound
//! engine: it checks f(N[v]) >= k + |AN(v)| literally.

use std::time::Instant;

use serde::{Deserialize, Serialize};

use super::{SolveError, SolveResult};
use crate::graph::Graph;
use crate::labeling::KLabeling;

pub const BRUTE_FORCE_CAP: usize = 12;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Mode {
    Rdf,
    Irdf,
}

pub fn brute_force(g: &Graph, k: u32, mode: Mode) -> Result<SolveResult<KLabeling>, SolveError> {
    if k == 0 {
        return Err(SolveError::BadK);
    }
    if g.n() > BRUTE_FORCE_CAP {
        return Err(SolveError::TooLarge { n: g.n(), cap: BRUTE_FORCE_CAP });
    }
    let t0 = Instant::now();
    let (best, labels, count) = match mode {
        Mode::Rdf => all_labelings(g, k),
        Mode::Irdf => independent_labelings(g, k),
    };
    Ok(SolveResult {
        optimum: best,
        witness: KLabeling::from_dense(g, k, &labels),
        nodes_explored: count,
        proven_optimal: true,
        canonical: true,
        elapsed: t0.elapsed(),
    })
}

struct Tally<'a> {
    g: &'a Graph,
    k: i64,
    f: Vec<i64>,
    sum: Vec<i64>,
    an: Vec<i64>,
    bad: Vec<bool>,
    nbad: usize,
}

impl<'a> Tally<'a> {
    fn new(g: &'a Graph, k: u32) -> Self {
        let n = g.n();
        let mut t = Tally {
            g,
            k: k as i64,
            f: vec![0; n],
            sum: vec![0; n],
            an: vec![0; n],
            bad: vec![false; n],
            nbad: 0,
        };
        for v in 0..n {
            t.refresh(v);
        }
        t
    }

    fn violates(&self, v: usize) -> bool {
        self.f[v] < self.k && self.sum[v] < self.k + self.an[v]
    }

    fn refresh(&mut self, v: usize) {
        let b = self.violates(v);
        if b != self.bad[v] {
            if b {
                self.nbad += 1;
            } else {
                self.nbad -= 1;
            }
            self.bad[v] = b;
        }
    }

    fn set(&mut self, v: usize, label: i64) {
        let old = self.f[v];
        if old == label {
            return;
        }
        self.f[v] = label;
        let d = label - old;
        let da = (label >= 1) as i64 - (old >= 1) as i64;
        self.sum[v] += d;
        for &w in self.g.nbrs(v) {
            self.sum[w] += d;
            self.an[w] += da;
        }
        self.refresh(v);
        for i in 0..self.g.nbrs(v).len() {
            let w = self.g.nbrs(v)[i];
            self.refresh(w);
        }
    }
}

/// Odometer over all (k+2)^n labelings with vertex 0 most significant, so the
/// first minimum met is the lexicographically least.
fn all_labelings(g: &Graph, k: u32) -> (u64, Vec<u32>, u64) {
    let n = g.n();
    let top = k as i64 + 1;
    let mut t = Tally::new(g, k);
    let mut w: i64 = 0;
    let mut best = i64::MAX;
    let mut best_f = vec![0u32; n];
    let mut count = 0u64;
    loop {
        count += 1;
        if t.nbad == 0 && w < best {
            best = w;
            best_f = t.f.iter().map(|&x| x as u32).collect();
        }
        // increment
        let mut pos = n;
        loop {
            if pos == 0 {
                return (best as u64, best_f, count);
            }
            pos -= 1;
            if t.f[pos] < top {
                w += 1;
                let nv = t.f[pos] + 1;
                t.set(pos, nv);
                break;
            }
            w -= t.f[pos];
            t.set(pos, 0);
        }
    }
}

/// Every independent set S with every weighting S -> {k, k+1}.
fn independent_labelings(g: &Graph, k: u32) -> (u64, Vec<u32>, u64) {
    let n = g.n();
    let mut nbr_mask = vec![0u32; n];
    for v in 0..n {
        for &w in g.nbrs(v) {
            nbr_mask[v] |= 1 << w;
        }
    }
    let mut best: Option<(u64, Vec<u32>)> = None;
    let mut count = 0u64;
    for s in 0u32..(1u32 << n) {
        if (0..n).any(|v| s >> v & 1 == 1 && nbr_mask[v] & s != 0) {
            continue;
        }
        let members: Vec<usize> = (0..n).filter(|&v| s >> v & 1 == 1).collect();
        for bits in 0u32..(1u32 << members.len()) {
            count += 1;
            let mut f = vec![0u32; n];
            for (i, &v) in members.iter().enumerate() {
                f[v] = if bits >> i & 1 == 1 { k + 1 } else { k };
            }
            if !is_rdf(g, k, &f) {
                continue;
            }
            let w: u64 = f.iter().map(|&x| x as u64).sum();
            let better = match &best {
                None => true,
                Some((bw, bf)) => w < *bw || (w == *bw && f < *bf),
            };
            if better {
                best = Some((w, f));
            }
        }
    }
    let (w, f) = best.expect("k+1 on a maximal independent set is always valid");
    (w, f, count)
}

fn is_rdf(g: &Graph, k: u32, f: &[u32]) -> bool {
    (0..g.n()).all(|v| {
        if f[v] >= k {
            return true;
        }
        let mut sum = f[v];
        let mut an = 0;
        for &w in g.nbrs(v) {
            sum += f[w];
            an += (f[w] >= 1) as u32;
        }
        sum >= k + an
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::graph_from_edges;
    use crate::labeling::{verify_kirdf, verify_krdf};

    fn cycle(n: usize) -> Graph {
        let names: Vec<String> = (0..n).map(|i| format!("c{}", i)).collect();
        let es: Vec<_> = (0..n).map(|i| (names[i].clone(), names[(i + 1) % n].clone())).collect();
        graph_from_edges(names, es).unwrap()
    }

    #[test]
    fn oracle_examples() {
        let p2 = graph_from_edges(["a", "b"], [("a", "b")]).unwrap();
        let r = brute_force(&p2, 3, Mode::Rdf).unwrap();
        assert_eq!(r.optimum, 4);
        assert!(verify_krdf(&p2, &r.witness).valid);
        // lex least: (0, 4)
        assert_eq!(r.witness.get("a"), Some(0));

        let k1 = graph_from_edges(["a"], Vec::<(&str, &str)>::new()).unwrap();
        for k in 1..6 {
            let r = brute_force(&k1, k, Mode::Irdf).unwrap();
            assert_eq!(r.optimum, k as u64);
            assert_eq!(r.witness.get("a"), Some(k));
        }

        let c6 = cycle(6);
        let r = brute_force(&c6, 2, Mode::Irdf).unwrap();
        assert_eq!(r.optimum, 6);
        assert!(verify_kirdf(&c6, &r.witness).valid);
    }

    #[test]
    fn enumerates_everything() {
        let c3 = cycle(3);
        let r = brute_force(&c3, 2, Mode::Rdf).unwrap();
        assert_eq!(r.nodes_explored, 4u64.pow(3));
    }

    #[test]
    fn cap() {
        let c13 = cycle(13);
        assert!(matches!(brute_force(&c13, 1, Mode::Rdf), Err(SolveError::TooLarge { n: 13, .. })));
    }
}
