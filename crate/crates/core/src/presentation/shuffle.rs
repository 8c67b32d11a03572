//! Shuffle graphs of two 2-cells and their interpretation as interchange moves.
//!
//! For 2-cells `φ` of length `k` and `ψ` of length `k′`, the vertices of
//! `φ ⧢ ψ` are the interleavings of `ℓ₁…ℓₖ` and `r₁…r_{k′}`, and each edge swaps
//! an adjacent pair `ℓᵢ rⱼ` into `rⱼ ℓᵢ`. A vertex denotes the 2-cell that applies
//! the whiskers of `φ` and `ψ` in that order, and an edge denotes one
//! interchanger step between two such 2-cells.

use crate::cells::{CellError, Signature, Step, ThreeCell, ThreeGenInstance, TwoCell, Whisker2};
use std::collections::HashMap;
use thiserror::Error;

/// Largest `k + k′` for which a shuffle graph is built.
pub const MAX_SHUFFLE_SIZE: usize = 12;

/// Errors from the shuffle calculus.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ShuffleError {
    #[error("shuffle graph of size {0} exceeds the limit of {MAX_SHUFFLE_SIZE}")]
    TooLarge(usize),
    #[error("malformed shuffle word: {0}")]
    Malformed(String),
    #[error(transparent)]
    Cell(#[from] CellError),
}

/// A letter `ℓᵢ` or `rⱼ`, indices starting at 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Letter {
    L(usize),
    R(usize),
}

/// A word over the shuffle alphabet.
pub type ShuffleWord = Vec<Letter>;

/// The edge `χ_{w,w′} : w ℓᵢ rⱼ w′ → w rⱼ ℓᵢ w′`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ShuffleEdge {
    pub prefix: ShuffleWord,
    pub i: usize,
    pub j: usize,
    pub suffix: ShuffleWord,
}

impl ShuffleEdge {
    pub fn source(&self) -> ShuffleWord {
        let mut w = self.prefix.clone();
        w.push(Letter::L(self.i));
        w.push(Letter::R(self.j));
        w.extend_from_slice(&self.suffix);
        w
    }

    pub fn target(&self) -> ShuffleWord {
        let mut w = self.prefix.clone();
        w.push(Letter::R(self.j));
        w.push(Letter::L(self.i));
        w.extend_from_slice(&self.suffix);
        w
    }
}

/// The graph `φ ⧢ ψ` for lengths `k` and `k′`.
#[derive(Debug, Clone)]
pub struct ShuffleGraph {
    pub k: usize,
    pub k2: usize,
    pub vertices: Vec<ShuffleWord>,
    /// Edges as (source index, target index, edge).
    pub edges: Vec<(usize, usize, ShuffleEdge)>,
}

impl ShuffleGraph {
    pub fn index_of(&self, w: &ShuffleWord) -> Option<usize> {
        self.vertices.iter().position(|v| v == w)
    }

    /// Vertices reachable from `from` along edges, by breadth-first search.
    pub fn reachable(&self, from: usize) -> Vec<bool> {
        let mut seen = vec![false; self.vertices.len()];
        let mut queue = std::collections::VecDeque::from([from]);
        seen[from] = true;
        while let Some(v) = queue.pop_front() {
            for (s, t, _) in &self.edges {
                if *s == v && !seen[*t] {
                    seen[*t] = true;
                    queue.push_back(*t);
                }
            }
        }
        seen
    }
}

fn shuffles(k: usize, k2: usize) -> Vec<ShuffleWord> {
    fn go(i: usize, j: usize, k: usize, k2: usize, cur: &mut ShuffleWord, out: &mut Vec<ShuffleWord>) {
        if i == k && j == k2 {
            out.push(cur.clone());
            return;
        }
        if i < k {
            cur.push(Letter::L(i + 1));
            go(i + 1, j, k, k2, cur, out);
            cur.pop();
        }
        if j < k2 {
            cur.push(Letter::R(j + 1));
            go(i, j + 1, k, k2, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, 0, k, k2, &mut Vec::new(), &mut out);
    out
}

/// Builds `φ ⧢ ψ` for 2-cells of lengths `k` and `k′`.
pub fn shuffle_graph(k: usize, k2: usize) -> Result<ShuffleGraph, ShuffleError> {
    if k + k2 > MAX_SHUFFLE_SIZE {
        return Err(ShuffleError::TooLarge(k + k2));
    }
    let vertices = shuffles(k, k2);
    let index: HashMap<ShuffleWord, usize> =
        vertices.iter().enumerate().map(|(n, w)| (w.clone(), n)).collect();
    let mut edges = Vec::new();
    for (n, w) in vertices.iter().enumerate() {
        for p in 0..w.len().saturating_sub(1) {
            if let (Letter::L(i), Letter::R(j)) = (w[p], w[p + 1]) {
                let e = ShuffleEdge {
                    prefix: w[..p].to_vec(),
                    i,
                    j,
                    suffix: w[p + 2..].to_vec(),
                };
                let t = index[&e.target()];
                edges.push((n, t, e));
            }
        }
    }
    Ok(ShuffleGraph {
        k,
        k2,
        vertices,
        edges,
    })
}

/// Position of each `ℓᵢ` in a shuffle, indexed by `i`.
pub fn lindex(w: &[Letter]) -> HashMap<usize, usize> {
    w.iter()
        .enumerate()
        .filter_map(|(p, x)| match x {
            Letter::L(i) => Some((*i, p)),
            Letter::R(_) => None,
        })
        .collect()
}

/// Number of pairs with an `r` letter before an `ℓ` letter.
pub fn inv(w: &[Letter]) -> usize {
    let mut rs = 0;
    let mut total = 0;
    for x in w {
        match x {
            Letter::R(_) => rs += 1,
            Letter::L(_) => total += rs,
        }
    }
    total
}

/// Whether a path `w → w′` exists: every `ℓᵢ` sits no further right in `w` than in `w′`.
pub fn path_exists(w: &[Letter], w2: &[Letter]) -> bool {
    let a = lindex(w);
    let b = lindex(w2);
    a.len() == b.len() && a.iter().all(|(i, p)| b.get(i).is_some_and(|q| p <= q))
}

/// The 2-cell `⟦u⟧^{i,j}` interleaving whiskers of `φ` and `ψ`, with `φᵢ` and `ψⱼ` next.
pub fn interp_vertex(
    sig: &Signature,
    u: &[Letter],
    i: usize,
    j: usize,
    phi: &TwoCell,
    psi: &TwoCell,
) -> Result<TwoCell, ShuffleError> {
    if i == 0 || j == 0 || i > phi.len() + 1 || j > psi.len() + 1 {
        return Err(ShuffleError::Malformed(format!("indices ({i}, {j}) out of range")));
    }
    if sig.one_end(&phi.source1) != psi.source1.start {
        return Err(CellError::NotComposable {
            a: 2,
            b: 2,
            i: 0,
            detail: "φ and ψ are not 0-composable".into(),
        }
        .into());
    }
    let (mut p, mut q) = (i - 1, j - 1);
    let source1 = sig.one_cell_at(phi, p).then(&sig.one_cell_at(psi, q));
    let mut whiskers = Vec::with_capacity(u.len());
    for x in u {
        match *x {
            Letter::L(s) if s == p + 1 && s <= phi.len() => {
                let w = &phi.whiskers[p];
                whiskers.push(Whisker2 {
                    left: w.left.clone(),
                    gen: w.gen,
                    right: w.right.then(&sig.one_cell_at(psi, q)),
                });
                p += 1;
            }
            Letter::R(t) if t == q + 1 && t <= psi.len() => {
                let w = &psi.whiskers[q];
                whiskers.push(Whisker2 {
                    left: sig.one_cell_at(phi, p).then(&w.left),
                    gen: w.gen,
                    right: w.right.clone(),
                });
                q += 1;
            }
            other => {
                return Err(ShuffleError::Malformed(format!(
                    "letter {other:?} out of order at state ({p}, {q})"
                )))
            }
        }
    }
    Ok(TwoCell { source1, whiskers })
}

/// The interchange step `⟦χ_{w,w′}⟧`.
pub fn interp_edge(
    sig: &Signature,
    e: &ShuffleEdge,
    phi: &TwoCell,
    psi: &TwoCell,
) -> Result<Step, ShuffleError> {
    let (i, j) = (e.i, e.j);
    if i == 0 || j == 0 || i > phi.len() || j > psi.len() {
        return Err(ShuffleError::Malformed(format!("edge swaps ℓ{i} r{j} out of range")));
    }
    let lambda = interp_vertex(sig, &e.prefix, 1, 1, phi, psi)?;
    let pre = lindex(&e.prefix).len();
    let pre_r = e.prefix.len() - pre;
    if pre != i - 1 || pre_r != j - 1 {
        return Err(ShuffleError::Malformed("edge prefix does not end before ℓᵢ rⱼ".into()));
    }
    let rho = interp_vertex(sig, &e.suffix, i + 1, j + 1, phi, psi)?;
    let a = &phi.whiskers[i - 1];
    let b = &psi.whiskers[j - 1];
    Ok(Step {
        lambda,
        l: a.left.clone(),
        inner: ThreeGenInstance::Interchanger {
            alpha: a.gen,
            g: a.right.then(&b.left),
            beta: b.gen,
            inverse: false,
        },
        r: b.right.clone(),
        rho,
    })
}

/// The canonical path from `ℓ₁…ℓₖ r₁…r_{k′}` to `r₁…r_{k′} ℓ₁…ℓₖ`:
/// `ℓₖ` moves right past every `r`, then `ℓ_{k−1}`, and so on.
pub fn sigma_path(k: usize, k2: usize) -> Vec<ShuffleEdge> {
    let mut w: ShuffleWord = (1..=k).map(Letter::L).chain((1..=k2).map(Letter::R)).collect();
    let mut path = Vec::with_capacity(k * k2);
    for p in (1..=k).rev() {
        for q in 1..=k2 {
            let pos = w.iter().position(|x| *x == Letter::L(p)).expect("letter present");
            debug_assert_eq!(w[pos + 1], Letter::R(q));
            let e = ShuffleEdge {
                prefix: w[..pos].to_vec(),
                i: p,
                j: q,
                suffix: w[pos + 2..].to_vec(),
            };
            w = e.target();
            path.push(e);
        }
    }
    path
}

/// The composite interchanger `X_{φ,ψ} = ⟦σ_{φ,ψ}⟧`.
pub fn big_x(sig: &Signature, phi: &TwoCell, psi: &TwoCell) -> Result<ThreeCell, ShuffleError> {
    let (k, k2) = (phi.len(), psi.len());
    let start: ShuffleWord = (1..=k).map(Letter::L).chain((1..=k2).map(Letter::R)).collect();
    let source2 = interp_vertex(sig, &start, 1, 1, phi, psi)?;
    let steps = sigma_path(k, k2)
        .iter()
        .map(|e| interp_edge(sig, e, phi, psi))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(ThreeCell { source2, steps })
}
