//! Cospans of finite sets as a connectivity invariant of 2-cells.
//!
//! Every wire of a 1-cell is a point, a 2-generator is a single point glued to
//! all its input and output wires, and `∘₁` is a pushout. A 2-cell is connected
//! when every component of its cospan meets a boundary wire.

use crate::cells::{Signature, TwoCell};
use serde::Serialize;

/// A cospan `m → C ← n` up to relabeling of `C`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct CospanValue {
    pub left: Vec<usize>,
    pub right: Vec<usize>,
    /// Total number of components, including floating ones.
    pub components: usize,
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new() -> Self {
        UnionFind { parent: Vec::new() }
    }

    fn fresh(&mut self) -> usize {
        self.parent.push(self.parent.len());
        self.parent.len() - 1
    }

    fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.parent[r] != r {
            r = self.parent[r];
        }
        let mut y = x;
        while self.parent[y] != r {
            let next = self.parent[y];
            self.parent[y] = r;
            y = next;
        }
        r
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra.max(rb)] = ra.min(rb);
        }
    }
}

impl CospanValue {
    /// Component count not reached by any boundary wire.
    pub fn floating(&self) -> usize {
        let mut hit: Vec<usize> = self.left.iter().chain(&self.right).copied().collect();
        hit.sort_unstable();
        hit.dedup();
        self.components - hit.len()
    }

    pub fn is_connected(&self) -> bool {
        self.floating() == 0
    }

    /// Composite along the shared boundary: pushout of `self.right` and `other.left`.
    pub fn compose(&self, other: &CospanValue) -> Option<CospanValue> {
        if self.right.len() != other.left.len() {
            return None;
        }
        let mut uf = UnionFind::new();
        let a: Vec<usize> = (0..self.components).map(|_| uf.fresh()).collect();
        let b: Vec<usize> = (0..other.components).map(|_| uf.fresh()).collect();
        for (x, y) in self.right.iter().zip(&other.left) {
            uf.union(a[*x], b[*y]);
        }
        let left: Vec<usize> = self.left.iter().map(|x| a[*x]).collect();
        let right: Vec<usize> = other.right.iter().map(|y| b[*y]).collect();
        let all: Vec<usize> = a.iter().chain(&b).copied().collect();
        Some(canonical(&mut uf, &left, &right, &all))
    }

    /// The identity cospan on `n` wires.
    pub fn identity(n: usize) -> CospanValue {
        CospanValue {
            left: (0..n).collect(),
            right: (0..n).collect(),
            components: n,
        }
    }
}

/// Relabels components by first appearance in the left then right boundary.
fn canonical(uf: &mut UnionFind, left: &[usize], right: &[usize], points: &[usize]) -> CospanValue {
    let mut label: std::collections::HashMap<usize, usize> = std::collections::HashMap::new();
    let mut next = 0;
    let mut name = |uf: &mut UnionFind, p: usize| {
        let r = uf.find(p);
        *label.entry(r).or_insert_with(|| {
            next += 1;
            next - 1
        })
    };
    let l: Vec<usize> = left.iter().map(|&p| name(uf, p)).collect();
    let r: Vec<usize> = right.iter().map(|&p| name(uf, p)).collect();
    for &p in points {
        name(uf, p);
    }
    CospanValue {
        left: l,
        right: r,
        components: next,
    }
}

/// The cospan value of a 2-cell.
pub fn cospan(sig: &Signature, phi: &TwoCell) -> CospanValue {
    let mut uf = UnionFind::new();
    let mut points = Vec::new();
    let left: Vec<usize> = (0..phi.source1.len()).map(|_| uf.fresh()).collect();
    points.extend_from_slice(&left);
    let mut wires = left.clone();
    for w in &phi.whiskers {
        let g = &sig.two[w.gen];
        let (a, b) = (w.left.len(), w.left.len() + g.source.len());
        let node = uf.fresh();
        points.push(node);
        for &p in &wires[a..b] {
            uf.union(node, p);
        }
        let outputs = vec![node; g.target.len()];
        wires.splice(a..b, outputs);
    }
    canonical(&mut uf, &left, &wires, &points)
}

/// Whether every component of the cospan of `φ` meets a boundary wire.
pub fn is_connected(sig: &Signature, phi: &TwoCell) -> bool {
    cospan(sig, phi).is_connected()
}
