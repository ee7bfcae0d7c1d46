#![allow(dead_code)]

use std::collections::BTreeSet;
use std::time::Duration;

use kroman::graph::{graph_from_edges, Graph, VertexId};
use kroman::solvers::SolveBudget;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const DENSITIES: [f64; 3] = [0.2, 0.4, 0.6];

pub fn budget() -> SolveBudget {
    SolveBudget::new(Duration::from_secs(60), 10_000_000)
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// G(n, p) with ids v00, v01, ... so id order matches creation order.
pub fn random_graph(rng: &mut ChaCha8Rng, n: usize, p: f64) -> Graph {
    let names: Vec<String> = (0..n).map(|i| format!("v{:02}", i)).collect();
    let mut edges = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if rng.gen_bool(p) {
                edges.push((names[i].clone(), names[j].clone()));
            }
        }
    }
    graph_from_edges(names, edges).unwrap()
}

/// `count` graphs cycling through the three densities, n uniform in 1..=max_n.
pub fn corpus(seed: u64, count: usize, max_n: usize) -> Vec<(Graph, f64)> {
    let mut r = rng(seed);
    (0..count)
        .map(|i| {
            let p = DENSITIES[i % 3];
            let n = r.gen_range(1..=max_n);
            (random_graph(&mut r, n, p), p)
        })
        .collect()
}

/// Straight from the definition: f(v) >= k, or f(N[v]) >= k + |AN(v)|.
pub fn rdf_ok(g: &Graph, k: u32, f: &[u32]) -> bool {
    (0..g.n()).all(|v| {
        if f[v] >= k {
            return true;
        }
        let mut sum = f[v];
        let mut active = 0;
        for &w in g.nbrs(v) {
            sum += f[w];
            active += (f[w] > 0) as u32;
        }
        sum >= k + active
    })
}

pub fn irdf_ok(g: &Graph, k: u32, f: &[u32]) -> bool {
    rdf_ok(g, k, f) && g.edges().iter().all(|&(u, v)| f[u] == 0 || f[v] == 0)
}

/// Lexicographically least minimum-weight labeling over per-vertex label sets,
/// by plain depth-first enumeration in index order.
pub fn lex_least_min(
    g: &Graph,
    k: u32,
    labels: &[Vec<u32>],
    independent: bool,
) -> (u64, Vec<u32>) {
    fn go(
        g: &Graph,
        k: u32,
        labels: &[Vec<u32>],
        independent: bool,
        f: &mut Vec<u32>,
        cost: u64,
        best: &mut Option<(u64, Vec<u32>)>,
    ) {
        if best.as_ref().is_some_and(|b| cost >= b.0) {
            return;
        }
        let v = f.len();
        if v == g.n() {
            let ok = if independent { irdf_ok(g, k, f) } else { rdf_ok(g, k, f) };
            if ok {
                *best = Some((cost, f.clone()));
            }
            return;
        }
        for &l in &labels[v] {
            f.push(l);
            go(g, k, labels, independent, f, cost + l as u64, best);
            f.pop();
        }
    }
    let mut best = None;
    go(g, k, labels, independent, &mut Vec::new(), 0, &mut best);
    best.expect("all-(k+1) style labelings always exist")
}

/// Minimum over vertex subsets satisfying `ok`, lexicographically least
/// indicator vector among the minimum ones.
pub fn best_subset(g: &Graph, ok: impl Fn(&[bool]) -> bool) -> (usize, BTreeSet<VertexId>) {
    let n = g.n();
    let mut best: Option<(usize, Vec<bool>)> = None;
    for mask in 0u32..(1u32 << n) {
        // bit (n-1-v) holds vertex v so counting up walks indicator vectors lexicographically
        let set: Vec<bool> = (0..n).map(|v| mask >> (n - 1 - v) & 1 == 1).collect();
        let size = set.iter().filter(|&&b| b).count();
        if best.as_ref().is_some_and(|b| size >= b.0) {
            continue;
        }
        if ok(&set) {
            best = Some((size, set));
        }
    }
    let (size, set) = best.unwrap();
    (size, (0..n).filter(|&v| set[v]).map(|v| g.id(v).clone()).collect())
}

pub fn dominates(g: &Graph, s: &[bool]) -> bool {
    (0..g.n()).all(|v| s[v] || g.nbrs(v).iter().any(|&w| s[w]))
}

pub fn independent(g: &Graph, s: &[bool]) -> bool {
    g.edges().iter().all(|&(u, v)| !(s[u] && s[v]))
}

pub fn covers(g: &Graph, s: &[bool]) -> bool {
    g.edges().iter().all(|&(u, v)| s[u] || s[v])
}

pub fn leaf_in_big_component(g: &Graph, v: usize) -> bool {
    let comp = g.components();
    let size = comp.iter().filter(|&&c| c == comp[v]).count();
    g.degree(v) == 1 && size >= 3
}
