//! Generalized Blanuša snarks B_i^t: a base block B0 (two versions, t = 1, 2)
//! followed by a chain of i copies of the block L.

use serde::{Deserialize, Serialize};

use super::{bad, Construction, FamilyError};
use crate::graph::{Graph, GraphBuilder};
use crate::labeling::KLabeling;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlanusaDescriptor {
    pub t: u8,
    pub i: usize,
}

impl BlanusaDescriptor {
    pub fn new(t: u8, i: usize) -> Result<Self, FamilyError> {
        let d = BlanusaDescriptor { t, i };
        d.check()?;
        Ok(d)
    }

    fn check(&self) -> Result<(), FamilyError> {
        if self.t != 1 && self.t != 2 {
            return Err(bad(format!("t must be 1 or 2, got {}", self.t)));
        }
        if self.i < 1 {
            return Err(bad("i must be >= 1"));
        }
        Ok(())
    }

    pub fn order(&self) -> usize {
        8 * self.i + 10
    }
}

// border vertices a, b, c, d have degree 2 inside the block
const B0_1_VERTICES: [&str; 10] = ["a", "b", "c", "d", "1", "2", "3", "4", "5", "6"];
const B0_1_EDGES: [(&str, &str); 13] = [
    ("a", "1"),
    ("1", "b"),
    ("b", "3"),
    ("3", "6"),
    ("6", "5"),
    ("5", "4"),
    ("4", "2"),
    ("2", "a"),
    ("2", "3"),
    ("1", "5"),
    ("6", "d"),
    ("d", "c"),
    ("c", "4"),
];

const B0_2_VERTICES: [&str; 10] = ["a", "b", "c", "d", "1", "2", "3", "4", "m", "n"];
const B0_2_EDGES: [(&str, &str); 13] = [
    ("a", "1"),
    ("1", "b"),
    ("b", "3"),
    ("3", "d"),
    ("d", "4"),
    ("4", "c"),
    ("c", "2"),
    ("2", "a"),
    ("2", "m"),
    ("m", "3"),
    ("m", "n"),
    ("n", "4"),
    ("1", "n"),
];

// border vertices x, y, w, z
const L_VERTICES: [&str; 8] = ["x", "y", "w", "z", "1", "2", "3", "4"];
const L_EDGES: [(&str, &str); 10] = [
    ("x", "1"),
    ("1", "y"),
    ("y", "3"),
    ("3", "z"),
    ("z", "4"),
    ("4", "w"),
    ("w", "2"),
    ("2", "x"),
    ("1", "4"),
    ("2", "3"),
];

fn b0(name: &str) -> String {
    format!("B0:{}", name)
}

fn l(j: usize, name: &str) -> String {
    format!("L{}:{}", j, name)
}

fn link(b: &mut GraphBuilder, x: String, y: String) {
    b.add_edge(x, y).expect("blanusa link edge");
}

pub fn blanusa(d: BlanusaDescriptor) -> Result<Graph, FamilyError> {
    d.check()?;
    let mut b = GraphBuilder::new();
    let (bv, be) = if d.t == 1 { (B0_1_VERTICES, B0_1_EDGES) } else { (B0_2_VERTICES, B0_2_EDGES) };
    for v in bv {
        b.add_vertex(b0(v))?;
    }
    for (x, y) in be {
        b.add_edge(b0(x), b0(y))?;
    }
    for j in 1..=d.i {
        for v in L_VERTICES {
            b.add_vertex(l(j, v))?;
        }
        for (x, y) in L_EDGES {
            b.add_edge(l(j, x), l(j, y))?;
        }
    }

    // base case B_1 or B_2, then two blocks per recursion step
    let base = if d.i % 2 == 1 { 1 } else { 2 };
    link(&mut b, b0("c"), l(1, "y"));
    link(&mut b, b0("d"), l(1, "x"));
    if base == 2 {
        link(&mut b, l(1, "w"), l(2, "y"));
        link(&mut b, l(1, "z"), l(2, "x"));
    }
    link(&mut b, b0("a"), l(base, "z"));
    link(&mut b, b0("b"), l(base, "w"));

    let mut i = base + 2;
    while i <= d.i {
        assert!(b.remove_edge(&b0("a"), &l(i - 2, "z")));
        assert!(b.remove_edge(&b0("b"), &l(i - 2, "w")));
        // link graph LG_i: blocks L_{i-1}, L_i plus two joining edges
        link(&mut b, l(i - 1, "w"), l(i, "y"));
        link(&mut b, l(i - 1, "z"), l(i, "x"));
        link(&mut b, l(i - 2, "w"), l(i - 1, "y"));
        link(&mut b, l(i - 2, "z"), l(i - 1, "x"));
        link(&mut b, b0("a"), l(i, "z"));
        link(&mut b, b0("b"), l(i, "w"));
        i += 2;
    }
    Ok(b.build())
}

pub fn blanusa_weight(d: BlanusaDescriptor, k: u32) -> u64 {
    let k = k as u64;
    let i = d.i as u64;
    if d.t == 1 && d.i >= 3 && d.i % 2 == 1 {
        (k + 1) * (2 * i + 2) + 2 * k
    } else {
        (k + 1) * (2 * i + 3)
    }
}

fn base_table(t: u8, i: usize) -> (Vec<String>, Vec<String>) {
    let top: Vec<String>;
    let mut mid: Vec<String> = Vec::new();
    match (t, i) {
        (1, 1) => top = vec![b0("1"), b0("2"), b0("d"), l(1, "3"), l(1, "4")],
        (2, 1) => top = vec![b0("a"), b0("d"), b0("m"), l(1, "y"), l(1, "w")],
        (1, 2) => {
            top = vec![b0("a"), b0("6"), b0("c"), l(1, "x"), l(1, "z"), l(2, "y"), l(2, "w")]
        }
        (2, 2) => {
            top = vec![b0("a"), b0("c"), b0("m"), l(1, "x"), l(1, "z"), l(2, "y"), l(2, "w")]
        }
        (1, 3) => {
            top = vec![
                b0("a"),
                b0("6"),
                l(1, "y"),
                l(1, "w"),
                l(2, "x"),
                l(2, "z"),
                l(3, "y"),
                l(3, "w"),
            ];
            mid = vec![b0("4"), l(1, "x")];
        }
        (2, 3) => {
            top = vec![
                b0("a"),
                b0("d"),
                b0("m"),
                l(1, "y"),
                l(1, "w"),
                l(2, "x"),
                l(2, "z"),
                l(3, "y"),
                l(3, "w"),
            ]
        }
        _ => unreachable!("base tables cover i <= 3"),
    }
    (top, mid)
}

/// The special [k]-IRDF: hard tables for i <= 3, then each recursion step adds
/// k+1 on x and z of L_{i-1} and on y and w of L_i.
pub fn blanusa_special_irdf(d: BlanusaDescriptor, k: u32) -> Result<Construction, FamilyError> {
    d.check()?;
    if k < 2 {
        return Err(bad("the special labeling needs k >= 2"));
    }
    let g = blanusa(d)?;
    let mut f = KLabeling::zeros(&g, k);
    let mut i = if d.i <= 3 { d.i } else if d.i % 2 == 1 { 3 } else { 2 };
    let (top, mid) = base_table(d.t, i);
    for v in top {
        f.set(v, k + 1);
    }
    for v in mid {
        f.set(v, k);
    }
    while i + 2 <= d.i {
        i += 2;
        for v in [l(i - 1, "x"), l(i - 1, "z"), l(i, "y"), l(i, "w")] {
            f.set(v, k + 1);
        }
    }
    Ok(Construction { labeling: f, predicted: blanusa_weight(d, k) })
}
