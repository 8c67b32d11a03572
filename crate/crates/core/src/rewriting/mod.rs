//! Rewriting steps on 2-cells, local branchings and their classification.
//!
//! A rewriting step applies an operational 3-generator or an interchanger
//! inside a context `λ ∘₁ (l ∘₀ – ∘₀ r) ∘₁ ρ`. Two steps from the same 2-cell form
//! a local branching, which is trivial, non-minimal (a common context can be
//! factored out), independent (disjoint windows), natural (an interchanger
//! sliding a whisker across the other step's generator) or critical.

mod enumerate;
pub mod oracle;

pub use enumerate::{
    all_two_cells, brute_force_critical, canonical_pair, enumerate_critical, enumerate_critical_with,
    local_branchings, CriticalBranching, EnumerationError, EnumerationOptions,
};

use crate::cells::{GenId, OneCell, Signature, Step, ThreeGenInstance, TwoCell};
use crate::presentation::{interp_edge, GrayPresentation, InterchangeMode, Letter, ShuffleEdge};
use serde::Serialize;

/// Two rewriting steps from a common 2-cell.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Branching {
    pub source: TwoCell,
    pub s1: Step,
    pub s2: Step,
}

impl Branching {
    pub fn swapped(&self) -> Branching {
        Branching {
            source: self.source.clone(),
            s1: self.s2.clone(),
            s2: self.s1.clone(),
        }
    }
}

/// A common context `λ ∘₁ (l ∘₀ – ∘₀ r) ∘₁ ρ` of both steps of a branching.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct Factoring {
    pub lambda_len: usize,
    pub l: OneCell,
    pub r: OneCell,
    pub rho_len: usize,
}

impl Factoring {
    pub fn is_trivial(&self) -> bool {
        self.lambda_len == 0 && self.rho_len == 0 && self.l.is_empty() && self.r.is_empty()
    }
}

/// The classes of local branchings.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub enum BranchClass {
    Trivial,
    NonMinimal(Factoring),
    Independent,
    Natural,
    Critical,
}

impl BranchClass {
    pub fn name(&self) -> &'static str {
        match self {
            BranchClass::Trivial => "trivial",
            BranchClass::NonMinimal(_) => "non-minimal",
            BranchClass::Independent => "independent",
            BranchClass::Natural => "natural",
            BranchClass::Critical => "critical",
        }
    }

    pub fn is_critical(&self) -> bool {
        matches!(self, BranchClass::Critical)
    }
}

/// Number of whiskers of the source of a 3-generator instance.
pub fn window_len(sig: &Signature, a: &ThreeGenInstance) -> usize {
    match a {
        ThreeGenInstance::Operational(id) => sig.three[*id].source.len(),
        ThreeGenInstance::Interchanger { .. } => 2,
    }
}

fn op_redex_at(sig: &Signature, phi: &TwoCell, id: GenId, p0: usize) -> Option<Step> {
    let src = &sig.three[id].source;
    let m = src.len();
    if m == 0 || p0 + m > phi.len() {
        return None;
    }
    let first = &phi.whiskers[p0];
    let pat = &src.whiskers[0];
    if first.gen != pat.gen {
        return None;
    }
    let l = first.left.strip_suffix(&pat.left, sig)?;
    let r = first.right.strip_prefix(&pat.right, sig)?;
    for t in 0..m {
        if phi.whiskers[p0 + t] != src.whiskers[t].whiskered(&l, &r) {
            return None;
        }
    }
    Some(Step {
        lambda: sig.slice2(phi, 0, p0),
        l,
        inner: ThreeGenInstance::Operational(id),
        r,
        rho: sig.slice2(phi, p0 + m, phi.len()),
    })
}

/// The interchanger between whiskers `p` and `p + 1`, if they form a redex in
/// the rewriting alphabet of `pres`.
fn interchanger_at(pres: &GrayPresentation, phi: &TwoCell, p: usize) -> Option<Step> {
    let sig = &pres.sig;
    let (w1, w2) = (&phi.whiskers[p], &phi.whiskers[p + 1]);
    let ctx = |l: OneCell, inner: ThreeGenInstance, r: OneCell| Step {
        lambda: sig.slice2(phi, 0, p),
        l,
        inner,
        r,
        rho: sig.slice2(phi, p + 2, phi.len()),
    };
    // Forward shape: w1 = (l, α, g h r) above w2 = (l f′ g, β, r).
    let alpha = &sig.two[w1.gen];
    let beta = &sig.two[w2.gen];
    if let Some(g) = w2
        .left
        .strip_prefix(&w1.left.then(&alpha.target), sig)
    {
        let expected = g.then(&beta.source).then(&w2.right);
        if w1.right == expected && !pres.orientation(w1.gen, w2.gen) {
            let inst = ThreeGenInstance::Interchanger {
                alpha: w1.gen,
                g,
                beta: w2.gen,
                inverse: false,
            };
            return Some(ctx(w1.left.clone(), inst, w2.right.clone()));
        }
    }
    // Inverse shape: w1 = (l f g, β, r) above w2 = (l, α, g h′ r).
    if pres.mode == InterchangeMode::Q {
        let alpha = &sig.two[w2.gen];
        let beta = &sig.two[w1.gen];
        if let Some(g) = w1.left.strip_prefix(&w2.left.then(&alpha.source), sig) {
            let expected = g.then(&beta.target).then(&w1.right);
            if w2.right == expected && pres.orientation(w2.gen, w1.gen) {
                let inst = ThreeGenInstance::Interchanger {
                    alpha: w2.gen,
                    g,
                    beta: w1.gen,
                    inverse: true,
                };
                return Some(ctx(w2.left.clone(), inst, w1.right.clone()));
            }
        }
    }
    None
}

/// Every rewriting step with source `φ`, topmost first.
pub fn find_redexes(phi: &TwoCell, pres: &GrayPresentation, include_interchangers: bool) -> Vec<Step> {
    let sig = &pres.sig;
    let mut out = Vec::new();
    for p0 in 0..phi.len() {
        for id in 0..sig.three.len() {
            if let Some(s) = op_redex_at(sig, phi, id, p0) {
                out.push(s);
            }
        }
        if include_interchangers && p0 + 1 < phi.len() {
            if let Some(s) = interchanger_at(pres, phi, p0) {
                out.push(s);
            }
        }
    }
    out
}

/// The target of a rewriting step.
pub fn apply_step(sig: &Signature, s: &Step) -> TwoCell {
    sig.step_target(s).expect("rewriting step is well-typed")
}

fn common_prefix_len(words: &[&[GenId]]) -> usize {
    let min = words.iter().map(|w| w.len()).min().unwrap_or(0);
    (0..min)
        .take_while(|&i| words.iter().all(|w| w[i] == words[0][i]))
        .count()
}

fn common_suffix_len(words: &[&[GenId]]) -> usize {
    let min = words.iter().map(|w| w.len()).min().unwrap_or(0);
    (0..min)
        .take_while(|&i| words.iter().all(|w| w[w.len() - 1 - i] == words[0][words[0].len() - 1 - i]))
        .count()
}

/// The largest context common to both steps of a branching.
pub fn maximal_factoring(sig: &Signature, b: &Branching) -> Factoring {
    let k = b.source.len();
    let a = b.s1.lambda.len().min(b.s2.lambda.len());
    let bb = b.s1.rho.len().min(b.s2.rho.len());
    let middle = &b.source.whiskers[a..k - bb];
    let mut lefts: Vec<&[GenId]> = vec![&b.s1.l.word, &b.s2.l.word];
    lefts.extend(middle.iter().map(|w| w.left.word.as_slice()));
    let mut rights: Vec<&[GenId]> = vec![&b.s1.r.word, &b.s2.r.word];
    rights.extend(middle.iter().map(|w| w.right.word.as_slice()));
    let nl = common_prefix_len(&lefts);
    let nr = common_suffix_len(&rights);
    let l = b.s1.l.slice(0, nl, sig);
    let r = b.s1.r.slice(b.s1.r.len() - nr, b.s1.r.len(), sig);
    Factoring {
        lambda_len: a,
        l,
        r,
        rho_len: bb,
    }
}

/// Whether the generator windows of the two steps are disjoint.
pub fn windows_disjoint(sig: &Signature, b: &Branching) -> bool {
    let (p1, m1) = (b.s1.lambda.len(), window_len(sig, &b.s1.inner));
    let (p2, m2) = (b.s2.lambda.len(), window_len(sig, &b.s2.inner));
    p1 >= p2 + m2 || p2 >= p1 + m1
}

/// Strips `prefix` from every left context and `suffix` from every right context.
pub fn strip_context(sig: &Signature, phi: &TwoCell, prefix: &OneCell, suffix: &OneCell) -> Option<TwoCell> {
    let strip1 = |u: &OneCell, left: bool| -> Option<OneCell> {
        let v = if left { u.strip_prefix(prefix, sig)? } else { u.clone() };
        if left {
            Some(v)
        } else {
            v.strip_suffix(suffix, sig)
        }
    };
    let source1 = phi.source1.strip_prefix(prefix, sig)?.strip_suffix(suffix, sig)?;
    let whiskers = phi
        .whiskers
        .iter()
        .map(|w| {
            Some(crate::cells::Whisker2 {
                left: strip1(&w.left, true)?,
                gen: w.gen,
                right: strip1(&w.right, false)?,
            })
        })
        .collect::<Option<Vec<_>>>()?;
    Some(TwoCell { source1, whiskers })
}

/// The interchange step `⟦χ_{u,v}⟧_{φ,ψ}` swapping the last whisker of `φ` with the first of `ψ`.
pub fn boundary_swap(sig: &Signature, phi: &TwoCell, psi: &TwoCell) -> Option<Step> {
    let (k, k2) = (phi.len(), psi.len());
    if k == 0 || k2 == 0 {
        return None;
    }
    let e = ShuffleEdge {
        prefix: (1..k).map(Letter::L).collect(),
        i: k,
        j: 1,
        suffix: (2..=k2).map(Letter::R).collect(),
    };
    interp_edge(sig, &e, phi, psi).ok()
}

/// `S₁ = (A ∘₀ g h) ∘₁ (f′ ∘₀ g ∘₀ ψ)` and `S₂` the interchange of `A`'s last source whisker with `ψ`'s first.
fn natural_first_line(sig: &Signature, s1: &Step, s2: &Step) -> bool {
    if !s1.lambda.is_empty() || !s1.l.is_empty() || s1.rho.is_empty() {
        return false;
    }
    let Ok((a_src, _)) = sig.instance_boundaries(&s1.inner) else {
        return false;
    };
    let f2 = sig.target1(&a_src);
    let empty = OneCell::id(sig.one_end(&s1.rho.source1));
    let Some(psi) = strip_context(sig, &s1.rho, &f2, &empty) else {
        return false;
    };
    boundary_swap(sig, &a_src, &psi).is_some_and(|x| &x == s2)
}

/// `S₁ = (χ ∘₀ g h) ∘₁ (f′ g ∘₀ B)` and `S₂` the interchange of `χ`'s last whisker with `B`'s first source whisker.
fn natural_second_line(sig: &Signature, s1: &Step, s2: &Step) -> bool {
    if !s1.rho.is_empty() || !s1.r.is_empty() || s1.lambda.is_empty() {
        return false;
    }
    let Ok((b_src, _)) = sig.instance_boundaries(&s1.inner) else {
        return false;
    };
    let h = &b_src.source1;
    let empty = OneCell::id(s1.lambda.source1.start);
    let Some(chi) = strip_context(sig, &s1.lambda, &empty, h) else {
        return false;
    };
    boundary_swap(sig, &chi, &b_src).is_some_and(|x| &x == s2)
}

/// Whether a branching matches either natural pattern in either order.
pub fn is_natural(sig: &Signature, b: &Branching) -> bool {
    natural_first_line(sig, &b.s1, &b.s2)
        || natural_second_line(sig, &b.s1, &b.s2)
        || natural_first_line(sig, &b.s2, &b.s1)
        || natural_second_line(sig, &b.s2, &b.s1)
}

/// Classifies a local branching.
pub fn classify(b: &Branching, pres: &GrayPresentation) -> BranchClass {
    let sig = &pres.sig;
    if b.s1 == b.s2 {
        return BranchClass::Trivial;
    }
    let f = maximal_factoring(sig, b);
    if !f.is_trivial() {
        return BranchClass::NonMinimal(f);
    }
    if windows_disjoint(sig, b) {
        return BranchClass::Independent;
    }
    if pres.mode == InterchangeMode::Standard && is_natural(sig, b) {
        return BranchClass::Natural;
    }
    BranchClass::Critical
}

/// Builds a branching after checking both steps start at `source`.
pub fn branching(sig: &Signature, s1: Step, s2: Step) -> Option<Branching> {
    let a = sig.step_source(&s1).ok()?;
    let b = sig.step_source(&s2).ok()?;
    (a == b).then_some(Branching { source: a, s1, s2 })
}

#[cfg(test)]
mod tests;
