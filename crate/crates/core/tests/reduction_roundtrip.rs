mod common;

use std::collections::BTreeSet;

use common::*;
use kroman::families::{complete, cycle, path};
use kroman::graph::{graph_from_edges, Graph, VertexId};
use kroman::labeling::{verify_kirdf, weight};
use kroman::reduction::*;
use kroman::solvers::*;
use rand::Rng;

fn sources() -> Vec<Graph> {
    let petersen = {
        let outer: Vec<String> = (0..5).map(|i| format!("o{i}")).collect();
        let inner: Vec<String> = (0..5).map(|i| format!("i{i}")).collect();
        let mut es = Vec::new();
        for i in 0..5 {
            es.push((outer[i].clone(), outer[(i + 1) % 5].clone()));
            es.push((inner[i].clone(), inner[(i + 2) % 5].clone()));
            es.push((outer[i].clone(), inner[i].clone()));
        }
        graph_from_edges(outer.iter().chain(&inner).cloned(), es).unwrap()
    };
    let k23 = graph_from_edges(
        ["a", "b", "x", "y", "z"],
        [("a", "x"), ("a", "y"), ("a", "z"), ("b", "x"), ("b", "y"), ("b", "z")],
    )
    .unwrap();
    vec![complete(4).unwrap(), cycle(5).unwrap(), path(4).unwrap(), k23, petersen]
}

fn all_covers(g: &Graph) -> Vec<BTreeSet<VertexId>> {
    let n = g.n();
    let mut out = Vec::new();
    for mask in 0u32..(1 << n) {
        let s: Vec<bool> = (0..n).map(|v| mask >> v & 1 == 1).collect();
        if covers(g, &s) {
            out.push((0..n).filter(|&v| s[v]).map(|v| g.id(v).clone()).collect());
        }
    }
    out
}

#[test]
fn every_cover_round_trips() {
    for g in sources() {
        for k in [3u32, 4, 6] {
            let r = build_reduction(&g, k, false).unwrap();
            assert_eq!(r.product.n(), g.n() + 10 * g.m());
            assert_eq!(r.product.m(), 12 * g.m());
            assert!(r.product.max_degree() <= 3.max(g.max_degree()));
            for c in all_covers(&g) {
                let f = vc_to_irdf(&r, &c).unwrap();
                assert!(verify_kirdf(&r.product, &f).valid);
                assert_eq!(weight(&f), c.len() as u64 + k as u64 * g.n() as u64 + (3 * k as u64 + 2) * g.m() as u64);
                let back = extract_vc(&r, &f).unwrap();
                assert_eq!(back.cover, c);
                assert!(back.is_cover);
                let audit = gadget_weight_audit(&r, &f);
                assert!(audit.iter().all(|a| !a.flagged && a.weight == 3 * k as u64 + 2));
            }
        }
    }
}

#[test]
fn random_designations_stay_valid() {
    let mut rg = rng(51);
    for g in sources() {
        let r = build_reduction(&g, 3, false).unwrap();
        for c in all_covers(&g).into_iter().take(40) {
            let coin: Vec<bool> = (0..g.m()).map(|_| rg.gen_bool(0.5)).collect();
            let f = vc_to_irdf_designated(&r, &c, |gd| {
                let idx = r.gadgets.iter().position(|x| x.x == gd.x).unwrap();
                match (c.contains(&gd.u), c.contains(&gd.v)) {
                    (true, true) => if coin[idx] { gd.v.clone() } else { gd.u.clone() },
                    (true, false) => gd.u.clone(),
                    _ => gd.v.clone(),
                }
            })
            .unwrap();
            assert!(verify_kirdf(&r.product, &f).valid);
            assert_eq!(weight(&f), r.formula(c.len()));
            assert_eq!(extract_vc(&r, &f).unwrap().cover, c);
        }
    }
}

#[test]
fn solver_never_beats_the_formula() {
    for g in [complete(4).unwrap(), cycle(3).unwrap(), path(3).unwrap()] {
        let tau = solve_tau(&g, budget()).unwrap().optimum as usize;
        let r = build_reduction(&g, 3, false).unwrap();
        let formula = r.formula(tau);
        match solve_i_krdf(&r.product, 3, budget()) {
            Ok(s) => {
                assert!(s.optimum <= formula);
                if g.regular_degree() == Some(3) {
                    assert_eq!(s.optimum, formula);
                }
                let e = extract_vc(&r, &s.witness).unwrap();
                assert!(e.is_cover || g.regular_degree() != Some(3));
            }
            Err(SolveError::BudgetExhausted { best: Some(b), .. }) => assert!(b <= formula),
            Err(e) => panic!("{e}"),
        }
    }
}

#[test]
fn bad_covers_rejected() {
    let r = build_reduction(&cycle(5).unwrap(), 3, false).unwrap();
    let c: BTreeSet<VertexId> = ["c0", "c2"].iter().map(|s| VertexId::from(*s)).collect();
    assert!(matches!(vc_to_irdf(&r, &c), Err(ReductionError::NotAVertexCover(..))));
}
