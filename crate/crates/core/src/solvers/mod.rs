//! Exact solvers for γ[kR], i[kR], γ, i and τ.

mod brute;
pub(crate) mod engine;

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use serde::Serialize;
use thiserror::Error;

use crate::graph::{Graph, VertexId};
use crate::labeling::KLabeling;
use engine::{Choice, Model};

pub use brute::{brute_force, Mode, BRUTE_FORCE_CAP};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SolveBudget {
    pub time: Duration,
    pub nodes: u64,
}

impl Default for SolveBudget {
    fn default() -> Self {
        SolveBudget { time: Duration::from_secs(60), nodes: 10_000_000 }
    }
}

impl SolveBudget {
    pub fn new(time: Duration, nodes: u64) -> Self {
        assert!(!time.is_zero() && nodes > 0, "budget limits must be positive");
        SolveBudget { time, nodes }
    }
}

/// Knobs beyond the budget. The defaults are what the plain `solve_*` functions use.
#[derive(Clone, Copy, Debug)]
pub struct SolveOptions {
    pub budget: SolveBudget,
    pub threads: usize,
    /// γ[kR] only, k >= 2: never branch on label 1.
    pub skip_label_one: bool,
    /// γ[kR] only: leaves (in components of 3+ vertices) take labels 0 or k.
    pub leaf_zero_or_k: bool,
    /// i[kR] only: search labels {0, k+1}.
    pub forbid_label_k: bool,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions {
            budget: SolveBudget::default(),
            threads: 1,
            skip_label_one: true,
            leaf_zero_or_k: true,
            forbid_label_k: false,
        }
    }
}

impl SolveOptions {
    pub fn with_budget(budget: SolveBudget) -> Self {
        SolveOptions { budget, ..Default::default() }
    }

    /// Plain γ[kR] search over every label 0..=k+1.
    pub fn unrestricted(budget: SolveBudget) -> Self {
        SolveOptions { budget, skip_label_one: false, leaf_zero_or_k: false, ..Default::default() }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SolveResult<W> {
    pub optimum: u64,
    pub witness: W,
    pub nodes_explored: u64,
    pub proven_optimal: bool,
    /// The witness is the lexicographically least optimal one.
    pub canonical: bool,
    #[serde(skip)]
    pub elapsed: Duration,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(untagged)]
pub enum Witness {
    Labeling(KLabeling),
    Set(BTreeSet<VertexId>),
}

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum SolveError {
    #[error("graph has {n} vertices, above the brute-force cap of {cap}")]
    TooLarge { n: usize, cap: usize },
    #[error("k must be at least 1")]
    BadK,
    #[error("no feasible solution")]
    Infeasible,
    #[error("budget exhausted after {nodes_explored} nodes (best so far: {best:?})")]
    BudgetExhausted { best: Option<u64>, witness: Option<Witness>, nodes_explored: u64 },
}

fn choice(label: u32, own: u32, push: u32) -> Choice {
    Choice { label, cost: label, own, push, active: label > 0 }
}

fn rdf_choice(label: u32) -> Choice {
    choice(label, label, label.saturating_sub(1))
}

fn leaves_in_big_components(g: &Graph) -> Vec<bool> {
    let comp = g.components();
    let mut size = vec![0usize; g.n()];
    for &c in &comp {
        size[c] += 1;
    }
    (0..g.n()).map(|v| g.degree(v) == 1 && size[comp[v]] >= 3).collect()
}

fn adjacency(g: &Graph) -> Vec<Vec<usize>> {
    (0..g.n()).map(|v| g.nbrs(v).to_vec()).collect()
}

fn rdf_model(g: &Graph, k: u32, opts: &SolveOptions) -> Model {
    let leaf = leaves_in_big_components(g);
    let domain = (0..g.n())
        .map(|v| {
            (0..=k + 1)
                .filter(|&l| !(opts.skip_label_one && k >= 2 && l == 1))
                .filter(|&l| !(opts.leaf_zero_or_k && leaf[v]) || l == 0 || l == k)
                .map(rdf_choice)
                .collect()
        })
        .collect();
    Model { adj: adjacency(g), domain, threshold: vec![k; g.n()], independent: false }
}

fn irdf_model(g: &Graph, k: u32, forbid_k: bool) -> Model {
    let mut labels = vec![0, k, k + 1];
    if forbid_k {
        labels.remove(1);
    }
    let dom: Vec<Choice> = labels.into_iter().map(rdf_choice).collect();
    Model {
        adj: adjacency(g),
        domain: vec![dom; g.n()],
        threshold: vec![k; g.n()],
        independent: true,
    }
}

fn domination_model(g: &Graph, independent: bool) -> Model {
    let dom = vec![choice(0, 0, 0), choice(1, 1, 1)];
    Model { adj: adjacency(g), domain: vec![dom; g.n()], threshold: vec![1; g.n()], independent }
}

fn cover_model(g: &Graph) -> Model {
    // a vertex outside the cover needs every neighbor inside it
    let domain = (0..g.n())
        .map(|v| {
            let d = g.degree(v) as u32;
            vec![choice(0, 0, 0), choice(1, d, 1)]
        })
        .collect();
    Model {
        adj: adjacency(g),
        domain,
        threshold: (0..g.n()).map(|v| g.degree(v) as u32).collect(),
        independent: false,
    }
}

/// Greedy maximal independent set, highest degree first, ties by id.
pub fn greedy_maximal_independent_set(g: &Graph) -> Vec<bool> {
    let mut order: Vec<usize> = (0..g.n()).collect();
    order.sort_by_key(|&v| (std::cmp::Reverse(g.degree(v)), v));
    let mut inset = vec![false; g.n()];
    for v in order {
        if g.nbrs(v).iter().all(|&w| !inset[w]) {
            inset[v] = true;
        }
    }
    inset
}

struct Raw {
    cost: u32,
    labels: Vec<u32>,
    nodes: u64,
    canonical: bool,
    elapsed: Duration,
}

fn run(
    model: &Model,
    opts: &SolveOptions,
    incumbent: Option<Vec<u32>>,
    wrap: impl Fn(&[u32]) -> Witness,
) -> Result<Raw, SolveError> {
    let t0 = Instant::now();
    let out = engine::minimize(model, opts.budget, opts.threads.max(1), incumbent);
    if !out.proven {
        return Err(SolveError::BudgetExhausted {
            best: out.best.as_ref().map(|b| b.0 as u64),
            witness: out.best.as_ref().map(|b| wrap(&b.1)),
            nodes_explored: out.nodes,
        });
    }
    let (cost, labels) = out.best.ok_or(SolveError::Infeasible)?;
    Ok(Raw { cost, labels, nodes: out.nodes, canonical: out.canonical, elapsed: t0.elapsed() })
}

fn labeling_result(
    g: &Graph,
    k: u32,
    model: &Model,
    opts: &SolveOptions,
    incumbent: Option<Vec<u32>>,
) -> Result<SolveResult<KLabeling>, SolveError> {
    let raw = run(model, opts, incumbent, |l| Witness::Labeling(KLabeling::from_dense(g, k, l)))?;
    Ok(SolveResult {
        optimum: raw.cost as u64,
        witness: KLabeling::from_dense(g, k, &raw.labels),
        nodes_explored: raw.nodes,
        proven_optimal: true,
        canonical: raw.canonical,
        elapsed: raw.elapsed,
    })
}

fn to_set(g: &Graph, labels: &[u32]) -> BTreeSet<VertexId> {
    (0..g.n()).filter(|&v| labels[v] == 1).map(|v| g.id(v).clone()).collect()
}

fn set_result(
    g: &Graph,
    model: &Model,
    opts: &SolveOptions,
    incumbent: Option<Vec<u32>>,
) -> Result<SolveResult<BTreeSet<VertexId>>, SolveError> {
    let raw = run(model, opts, incumbent, |l| Witness::Set(to_set(g, l)))?;
    Ok(SolveResult {
        optimum: raw.cost as u64,
        witness: to_set(g, &raw.labels),
        nodes_explored: raw.nodes,
        proven_optimal: true,
        canonical: raw.canonical,
        elapsed: raw.elapsed,
    })
}

pub fn solve_gamma_krdf(
    g: &Graph,
    k: u32,
    budget: SolveBudget,
) -> Result<SolveResult<KLabeling>, SolveError> {
    solve_gamma_krdf_with(g, k, &SolveOptions::with_budget(budget))
}

pub fn solve_gamma_krdf_with(
    g: &Graph,
    k: u32,
    opts: &SolveOptions,
) -> Result<SolveResult<KLabeling>, SolveError> {
    if k == 0 {
        return Err(SolveError::BadK);
    }
    let model = rdf_model(g, k, opts);
    // any [k]-IRDF is a [k]-RDF, and the independent search is far cheaper
    let seed_budget = SolveBudget {
        time: opts.budget.time / 10,
        nodes: (opts.budget.nodes / 10).max(1),
    };
    let irdf = irdf_model(g, k, false);
    let seed = engine::improve(&irdf, seed_budget, Some(irdf_incumbent(g, k)))
        .map(|(_, l)| l)
        .filter(|l| model.evaluate(l).is_some())
        .unwrap_or_else(|| irdf_incumbent(g, k));
    labeling_result(g, k, &model, opts, Some(seed))
}

fn irdf_incumbent(g: &Graph, k: u32) -> Vec<u32> {
    greedy_maximal_independent_set(g).iter().map(|&b| if b { k + 1 } else { 0 }).collect()
}

pub fn solve_i_krdf(
    g: &Graph,
    k: u32,
    budget: SolveBudget,
) -> Result<SolveResult<KLabeling>, SolveError> {
    solve_i_krdf_with(g, k, &SolveOptions::with_budget(budget))
}

pub fn solve_i_krdf_with(
    g: &Graph,
    k: u32,
    opts: &SolveOptions,
) -> Result<SolveResult<KLabeling>, SolveError> {
    if k == 0 {
        return Err(SolveError::BadK);
    }
    let model = irdf_model(g, k, opts.forbid_label_k);
    labeling_result(g, k, &model, opts, Some(irdf_incumbent(g, k)))
}

fn set_incumbent(g: &Graph, complement: bool) -> Vec<u32> {
    greedy_maximal_independent_set(g).iter().map(|&b| (b != complement) as u32).collect()
}

fn solve_set(
    g: &Graph,
    model: Model,
    opts: &SolveOptions,
    complement: bool,
) -> Result<SolveResult<BTreeSet<VertexId>>, SolveError> {
    set_result(g, &model, opts, Some(set_incumbent(g, complement)))
}

pub fn solve_i(g: &Graph, budget: SolveBudget) -> Result<SolveResult<BTreeSet<VertexId>>, SolveError> {
    solve_i_with(g, &SolveOptions::with_budget(budget))
}

pub fn solve_i_with(
    g: &Graph,
    opts: &SolveOptions,
) -> Result<SolveResult<BTreeSet<VertexId>>, SolveError> {
    solve_set(g, domination_model(g, true), opts, false)
}

pub fn solve_gamma(
    g: &Graph,
    budget: SolveBudget,
) -> Result<SolveResult<BTreeSet<VertexId>>, SolveError> {
    solve_gamma_with(g, &SolveOptions::with_budget(budget))
}

pub fn solve_gamma_with(
    g: &Graph,
    opts: &SolveOptions,
) -> Result<SolveResult<BTreeSet<VertexId>>, SolveError> {
    solve_set(g, domination_model(g, false), opts, false)
}

pub fn solve_tau(g: &Graph, budget: SolveBudget) -> Result<SolveResult<BTreeSet<VertexId>>, SolveError> {
    solve_tau_with(g, &SolveOptions::with_budget(budget))
}

pub fn solve_tau_with(
    g: &Graph,
    opts: &SolveOptions,
) -> Result<SolveResult<BTreeSet<VertexId>>, SolveError> {
    solve_set(g, cover_model(g), opts, true)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IndependentRomanReport {
    pub flag: bool,
    pub i_kr: u64,
    pub i_val: u64,
    /// i[kR] re-solved with label k forbidden.
    pub i_kr_without_k: u64,
    /// The two characterizations gave the same answer.
    pub agree: bool,
}

pub fn is_independent_k_roman(
    g: &Graph,
    k: u32,
    budget: SolveBudget,
) -> Result<IndependentRomanReport, SolveError> {
    is_independent_k_roman_with(g, k, &SolveOptions::with_budget(budget))
}

pub fn is_independent_k_roman_with(
    g: &Graph,
    k: u32,
    opts: &SolveOptions,
) -> Result<IndependentRomanReport, SolveError> {
    let ikr = solve_i_krdf_with(g, k, opts)?.optimum;
    let i = solve_i_with(g, opts)?.optimum;
    let no_k = solve_i_krdf_with(g, k, &SolveOptions { forbid_label_k: true, ..*opts })?.optimum;
    let flag = ikr == (k as u64 + 1) * i;
    Ok(IndependentRomanReport { flag, i_kr: ikr, i_val: i, i_kr_without_k: no_k, agree: flag == (no_k == ikr) })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{cartesian_product, graph_from_edges};
    use crate::labeling::{verify_kirdf, verify_krdf, weight};

    fn b() -> SolveBudget {
        SolveBudget::default()
    }

    fn path(n: usize) -> Graph {
        let names: Vec<String> = (0..n).map(|i| format!("p{}", i)).collect();
        let es: Vec<(String, String)> = (1..n).map(|i| (names[i - 1].clone(), names[i].clone())).collect();
        graph_from_edges(names, es).unwrap()
    }

    fn cycle(n: usize) -> Graph {
        let names: Vec<String> = (0..n).map(|i| format!("c{}", i)).collect();
        let es: Vec<(String, String)> = (0..n).map(|i| (names[i].clone(), names[(i + 1) % n].clone())).collect();
        graph_from_edges(names, es).unwrap()
    }

    fn complete(n: usize) -> Graph {
        let names: Vec<String> = (0..n).map(|i| format!("k{}", i)).collect();
        let mut es = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                es.push((names[i].clone(), names[j].clone()));
            }
        }
        graph_from_edges(names, es).unwrap()
    }

    #[test]
    fn small_gamma_krdf() {
        let k1 = path(1);
        let r = solve_gamma_krdf(&k1, 5, b()).unwrap();
        assert_eq!(r.optimum, 5);
        assert!(r.proven_optimal && r.canonical);
        for k in 1..5 {
            let r = solve_gamma_krdf(&path(2), k, b()).unwrap();
            assert_eq!(r.optimum, k as u64 + 1);
            assert!(verify_krdf(&path(2), &r.witness).valid);
        }
    }

    #[test]
    fn small_i_krdf() {
        assert_eq!(solve_i_krdf(&path(1), 2, b()).unwrap().optimum, 2);
        let r = solve_i_krdf(&cycle(6), 2, b()).unwrap();
        assert_eq!(r.optimum, 6);
        assert!(verify_kirdf(&cycle(6), &r.witness).valid);
        assert_eq!(weight(&r.witness), 6);
    }

    #[test]
    fn p2c8() {
        let g = cartesian_product(&path(2), &cycle(8)).unwrap();
        let r = solve_i_krdf(&g, 4, b()).unwrap();
        assert_eq!(r.optimum, 20);
        assert!(verify_kirdf(&g, &r.witness).valid);
    }

    #[test]
    fn domination_numbers() {
        assert_eq!(solve_i(&cycle(6), b()).unwrap().optimum, 2);
        assert_eq!(solve_i(&path(1), b()).unwrap().optimum, 1);
        assert_eq!(solve_gamma(&path(2), b()).unwrap().optimum, 1);
        assert_eq!(solve_tau(&complete(4), b()).unwrap().optimum, 3);
        assert_eq!(solve_tau(&path(2), b()).unwrap().optimum, 1);
        assert_eq!(solve_tau(&cycle(6), b()).unwrap().optimum, 3);
        let r = solve_tau(&cycle(6), b()).unwrap();
        // lex-least indicator vector over c0..c5
        let names: Vec<&str> = r.witness.iter().map(|v| v.as_str()).collect();
        assert_eq!(names, ["c1", "c3", "c5"]);
    }

    #[test]
    fn classifier() {
        let k1 = path(1);
        let r = is_independent_k_roman(&k1, 3, b()).unwrap();
        assert_eq!((r.flag, r.i_kr, r.i_val), (false, 3, 1));
        assert!(r.agree);
        let g = cartesian_product(&path(2), &cycle(8)).unwrap();
        let r = is_independent_k_roman(&g, 4, b()).unwrap();
        assert!(r.flag && r.agree);
    }

    #[test]
    fn budget_exhaustion_has_incumbent() {
        let g = cartesian_product(&path(2), &cycle(24)).unwrap();
        let err = solve_i_krdf(&g, 3, SolveBudget::new(Duration::from_secs(30), 50)).unwrap_err();
        match err {
            SolveError::BudgetExhausted { best, witness, .. } => {
                assert!(best.is_some());
                let Some(Witness::Labeling(f)) = witness else { panic!("no witness") };
                assert!(verify_kirdf(&g, &f).valid);
                assert_eq!(Some(weight(&f)), best);
            }
            e => panic!("unexpected {e}"),
        }
    }

    #[test]
    fn bad_k() {
        assert_eq!(solve_gamma_krdf(&path(2), 0, b()).unwrap_err(), SolveError::BadK);
    }
}
