//! Seeded generators of random well-typed cells and expressions.
//!
//! Cells are grown from a random 1-cell by applying 2-generators and
//! rewriting steps at random positions. An expression denoting a given cell
//! is built by randomly splitting composites, factoring common contexts and
//! inserting identities, so that every constructor of [`Expr`] occurs.

use crate::cells::{Cell, Expr, GenId, Generator, OneCell, Signature, Step, ThreeCell, TwoCell, Whisker2};
use crate::presentation::GrayPresentation;
use crate::rewriting::{apply_step, find_redexes};
use rand::seq::SliceRandom;
use rand::Rng;

/// A random path of at most `len` 1-generators starting at `from`.
pub fn random_one_cell<R: Rng>(sig: &Signature, rng: &mut R, from: GenId, len: usize) -> OneCell {
    let mut u = OneCell::id(from);
    for _ in 0..len {
        let here = sig.one_end(&u);
        let out: Vec<GenId> = (0..sig.one.len()).filter(|&a| sig.one[a].source == here).collect();
        match out.choose(rng) {
            Some(&a) => u.word.push(a),
            None => break,
        }
    }
    u
}

/// Positions where `pattern` occurs in `u`, with the 0-cell check for empty patterns.
fn occurrences(sig: &Signature, u: &OneCell, pattern: &OneCell) -> Vec<usize> {
    let (n, m) = (u.len(), pattern.len());
    if m > n {
        return Vec::new();
    }
    (0..=n - m)
        .filter(|&p| u.word[p..p + m] == pattern.word[..] && sig.one_end(&u.slice(0, p, sig)) == pattern.start)
        .collect()
}

/// Extends `phi` by at most `steps` whiskers of 2-generators chosen at random.
pub fn grow_two_cell<R: Rng>(sig: &Signature, rng: &mut R, phi: TwoCell, steps: usize) -> TwoCell {
    let mut phi = phi;
    for _ in 0..steps {
        let cur = sig.target1(&phi);
        let mut moves = Vec::new();
        for (a, g) in sig.two.iter().enumerate() {
            for p in occurrences(sig, &cur, &g.source) {
                moves.push(Whisker2 {
                    left: cur.slice(0, p, sig),
                    gen: a,
                    right: cur.slice(p + g.source.len(), cur.len(), sig),
                });
            }
        }
        match moves.choose(rng) {
            Some(w) => phi.whiskers.push(w.clone()),
            None => break,
        }
    }
    phi
}

/// A random 2-cell on a random 1-cell of length at most `width` with at most `len` whiskers.
pub fn random_two_cell<R: Rng>(sig: &Signature, rng: &mut R, width: usize, len: usize) -> TwoCell {
    let x = rng.gen_range(0..sig.zero.len());
    let w = rng.gen_range(0..=width);
    let u = random_one_cell(sig, rng, x, w);
    let k = rng.gen_range(0..=len);
    grow_two_cell(sig, rng, TwoCell::identity(u), k)
}

/// A random rewriting path of at most `len` steps from `phi`.
pub fn random_three_cell<R: Rng>(p: &GrayPresentation, rng: &mut R, phi: TwoCell, len: usize) -> ThreeCell {
    let mut steps = Vec::new();
    let mut cur = phi.clone();
    for _ in 0..len {
        let redexes = find_redexes(&cur, p, true);
        let Some(s) = redexes.choose(rng) else {
            break;
        };
        cur = apply_step(&p.sig, s);
        steps.push(s.clone());
    }
    ThreeCell { source2: phi, steps }
}

/// A random cell of dimension 1, 2 or 3.
pub fn random_cell<R: Rng>(p: &GrayPresentation, rng: &mut R, dim: usize) -> Cell {
    let sig = &p.sig;
    match dim {
        1 => {
            let x = rng.gen_range(0..sig.zero.len());
            let n = rng.gen_range(0..=3);
            Cell::One(random_one_cell(sig, rng, x, n))
        }
        2 => Cell::Two(random_two_cell(sig, rng, 3, 3)),
        _ => {
            let phi = random_two_cell(sig, rng, 3, 3);
            let n = rng.gen_range(0..=3);
            Cell::Three(random_three_cell(p, rng, phi, n))
        }
    }
}

fn strip_two_left(sig: &Signature, phi: &TwoCell, u: &OneCell) -> Option<TwoCell> {
    Some(TwoCell {
        source1: phi.source1.strip_prefix(u, sig)?,
        whiskers: phi
            .whiskers
            .iter()
            .map(|w| {
                Some(Whisker2 {
                    left: w.left.strip_prefix(u, sig)?,
                    gen: w.gen,
                    right: w.right.clone(),
                })
            })
            .collect::<Option<_>>()?,
    })
}

fn strip_two_right(sig: &Signature, phi: &TwoCell, u: &OneCell) -> Option<TwoCell> {
    Some(TwoCell {
        source1: phi.source1.strip_suffix(u, sig)?,
        whiskers: phi
            .whiskers
            .iter()
            .map(|w| {
                Some(Whisker2 {
                    left: w.left.clone(),
                    gen: w.gen,
                    right: w.right.strip_suffix(u, sig)?,
                })
            })
            .collect::<Option<_>>()?,
    })
}

fn strip_three(sig: &Signature, f: &ThreeCell, u: &OneCell, left: bool) -> Option<ThreeCell> {
    let two = |phi: &TwoCell| if left { strip_two_left(sig, phi, u) } else { strip_two_right(sig, phi, u) };
    let steps = f
        .steps
        .iter()
        .map(|s| {
            let (l, r) = if left {
                (s.l.strip_prefix(u, sig)?, s.r.clone())
            } else {
                (s.l.clone(), s.r.strip_suffix(u, sig)?)
            };
            Some(Step {
                lambda: two(&s.lambda)?,
                l,
                inner: s.inner.clone(),
                r,
                rho: two(&s.rho)?,
            })
        })
        .collect::<Option<_>>()?;
    Some(ThreeCell {
        source2: two(&f.source2)?,
        steps,
    })
}

/// A 1-cell `u` with `c = u ∘₀ c′` (or `c′ ∘₀ u`), and `c′`.
fn factor0<R: Rng>(sig: &Signature, rng: &mut R, c: &Cell, left: bool) -> Option<(OneCell, Cell)> {
    let src = match c {
        Cell::One(_) | Cell::Zero(_) => return None,
        Cell::Two(phi) => phi.source1.clone(),
        Cell::Three(f) => f.source2.source1.clone(),
    };
    if src.is_empty() {
        return None;
    }
    let n = rng.gen_range(1..=src.len());
    let u = if left { src.slice(0, n, sig) } else { src.slice(src.len() - n, src.len(), sig) };
    let rest = match c {
        Cell::Two(phi) => Cell::Two(if left { strip_two_left(sig, phi, &u)? } else { strip_two_right(sig, phi, &u)? }),
        Cell::Three(f) => Cell::Three(strip_three(sig, f, &u, left)?),
        _ => unreachable!(),
    };
    Some((u, rest))
}

/// A 2-cell `λ` with `F = λ ∘₁ F′` (or `F′ ∘₁ λ`), and `F′`.
fn factor1<R: Rng>(sig: &Signature, rng: &mut R, f: &ThreeCell, left: bool) -> Option<(TwoCell, ThreeCell)> {
    let k = f.steps.iter().map(|s| if left { s.lambda.len() } else { s.rho.len() }).min()?;
    if k == 0 {
        return None;
    }
    let n = rng.gen_range(1..=k);
    let len = f.source2.len();
    let ctx = if left { sig.slice2(&f.source2, 0, n) } else { sig.slice2(&f.source2, len - n, len) };
    let steps = f
        .steps
        .iter()
        .map(|s| {
            let mut s = s.clone();
            if left {
                s.lambda = sig.slice2(&s.lambda, n, s.lambda.len());
            } else {
                s.rho = sig.slice2(&s.rho, 0, s.rho.len() - n);
            }
            s
        })
        .collect();
    let source2 = if left { sig.slice2(&f.source2, n, len) } else { sig.slice2(&f.source2, 0, len - n) };
    Some((ctx, ThreeCell { source2, steps }))
}

fn source_cell(c: &Cell) -> Cell {
    match c {
        Cell::Zero(x) | Cell::One(OneCell { start: x, .. }) => Cell::Zero(*x),
        Cell::Two(phi) => Cell::One(phi.source1.clone()),
        Cell::Three(f) => Cell::Two(f.source2.clone()),
    }
}

fn split(c: &Cell, sig: &Signature, k: usize) -> (Cell, Cell) {
    match c {
        Cell::One(u) => (Cell::One(u.slice(0, k, sig)), Cell::One(u.slice(k, u.len(), sig))),
        Cell::Two(phi) => (Cell::Two(sig.slice2(phi, 0, k)), Cell::Two(sig.slice2(phi, k, phi.len()))),
        Cell::Three(f) => {
            let a = ThreeCell {
                source2: f.source2.clone(),
                steps: f.steps[..k].to_vec(),
            };
            let mid = sig.target2(&a).expect("well-formed 3-cell");
            let b = ThreeCell {
                source2: mid,
                steps: f.steps[k..].to_vec(),
            };
            (Cell::Three(a), Cell::Three(b))
        }
        Cell::Zero(_) => unreachable!(),
    }
}

fn leaf(c: &Cell) -> Option<Expr> {
    match c {
        Cell::One(u) if u.len() == 1 => Some(Expr::Gen(Generator::One(u.word[0]))),
        Cell::Two(phi) if phi.len() == 1 && phi.whiskers[0].left.is_empty() && phi.whiskers[0].right.is_empty() => {
            Some(Expr::Gen(Generator::Two(phi.whiskers[0].gen)))
        }
        Cell::Three(f) if f.len() == 1 => {
            let s = &f.steps[0];
            let bare = s.lambda.is_empty() && s.rho.is_empty() && s.l.is_empty() && s.r.is_empty();
            bare.then(|| Expr::Gen(Generator::Three(s.inner.clone())))
        }
        _ if c.is_identity() => Some(Expr::Id(source_cell(c))),
        _ => None,
    }
}

/// A random expression denoting `c`, using roughly `budget` nodes.
pub fn random_expr_for<R: Rng>(sig: &Signature, rng: &mut R, c: &Cell, budget: usize) -> Expr {
    if budget <= 1 {
        if let Some(e) = leaf(c) {
            return e;
        }
        return Expr::from_cell(c).expect("cells of dimension 1 to 3");
    }
    let len = c.length();
    for _ in 0..8 {
        match rng.gen_range(0..6) {
            0 if len >= 2 => {
                let k = rng.gen_range(1..len);
                let (a, b) = split(c, sig, k);
                let ba = rng.gen_range(1..budget);
                return Expr::comp(random_expr_for(sig, rng, &a, ba), random_expr_for(sig, rng, &b, budget - ba));
            }
            1 | 2 => {
                let left = rng.gen_bool(0.5);
                if let Some((u, rest)) = factor0(sig, rng, c, left) {
                    let t = random_expr_for(sig, rng, &rest, budget - 1);
                    return if left { Expr::left(Cell::One(u), 0, t) } else { Expr::right(t, 0, Cell::One(u)) };
                }
            }
            3 => {
                if let Cell::Three(f) = c {
                    let left = rng.gen_bool(0.5);
                    if let Some((lam, rest)) = factor1(sig, rng, f, left) {
                        let t = random_expr_for(sig, rng, &Cell::Three(rest), budget - 1);
                        return if left { Expr::left(Cell::Two(lam), 1, t) } else { Expr::right(t, 1, Cell::Two(lam)) };
                    }
                }
            }
            4 if budget >= 3 => {
                let id_src = Expr::Id(source_cell(c));
                let rest = random_expr_for(sig, rng, c, budget - 2);
                return if rng.gen_bool(0.5) {
                    Expr::comp(id_src, rest)
                } else {
                    let tgt = sig.boundary(c, c.dim() - 1, crate::cells::Sign::Plus).expect("cells have boundaries");
                    Expr::comp(rest, Expr::Id(tgt))
                };
            }
            _ => {
                if let Some(e) = leaf(c) {
                    return e;
                }
            }
        }
    }
    Expr::from_cell(c).expect("cells of dimension 1 to 3")
}

/// A random well-typed expression with at most `max_nodes` nodes and dimension at most `max_dim`.
pub fn random_expr<R: Rng>(p: &GrayPresentation, rng: &mut R, max_nodes: usize, max_dim: usize) -> Expr {
    loop {
        let dim = rng.gen_range(1..=max_dim.clamp(1, 3));
        let c = random_cell(p, rng, dim);
        let low = if rng.gen_bool(0.5) { max_nodes / 2 } else { 1 };
        let budget = rng.gen_range(low.max(1)..=max_nodes.max(1));
        let e = random_expr_for(&p.sig, rng, &c, budget);
        if e.size() <= max_nodes {
            return e;
        }
    }
}
