//! A reference classifier that checks each class against its defining equations.
//!
//! Every candidate context and every decomposition is enumerated and the
//! composite is rebuilt with the checked cell algebra, then compared to the
//! given steps. It is slow and exists to cross-check [`super::classify`].

use super::{Branching, BranchClass, Factoring};
use crate::cells::{Cell, OneCell, Signature, Step, ThreeCell, TwoCell, Whisker2};
use crate::presentation::{GrayPresentation, InterchangeMode};

fn three(c: crate::cells::Result<Cell>) -> Option<ThreeCell> {
    match c.ok()? {
        Cell::Three(f) => Some(f),
        _ => None,
    }
}

/// `λ ∘₁ (l ∘₀ F ∘₀ r) ∘₁ ρ` through the checked operations.
fn in_context(sig: &Signature, lambda: &TwoCell, l: &OneCell, f: &ThreeCell, r: &OneCell, rho: &TwoCell) -> Option<ThreeCell> {
    let mid = three(sig.whisker(l, &Cell::Three(f.clone()), r))?;
    let left = three(sig.compose(&Cell::Two(lambda.clone()), &Cell::Three(mid), 1))?;
    three(sig.compose(&Cell::Three(left), &Cell::Two(rho.clone()), 1))
}

fn single(sig: &Signature, s: &Step) -> Option<ThreeCell> {
    sig.step_cell(s).ok()
}

fn strip_whiskers(sig: &Signature, phi: &TwoCell, l: &OneCell, r: &OneCell) -> Option<TwoCell> {
    let source1 = phi.source1.strip_prefix(l, sig)?.strip_suffix(r, sig)?;
    let whiskers = phi
        .whiskers
        .iter()
        .map(|w| {
            Some(Whisker2 {
                left: w.left.strip_prefix(l, sig)?,
                gen: w.gen,
                right: w.right.strip_suffix(r, sig)?,
            })
        })
        .collect::<Option<Vec<_>>>()?;
    Some(TwoCell { source1, whiskers })
}

/// Reduces a step by a candidate context; `None` when the step does not factor.
fn reduce(sig: &Signature, s: &Step, f: &Factoring) -> Option<Step> {
    let nl = s.lambda.len().checked_sub(f.lambda_len)?;
    let nr = s.rho.len().checked_sub(f.rho_len)?;
    let lambda = strip_whiskers(sig, &sig.slice2(&s.lambda, f.lambda_len, s.lambda.len()), &f.l, &f.r)?;
    let rho = strip_whiskers(sig, &sig.slice2(&s.rho, 0, nr), &f.l, &f.r)?;
    debug_assert_eq!(lambda.len(), nl);
    Some(Step {
        lambda,
        l: s.l.strip_prefix(&f.l, sig)?,
        inner: s.inner.clone(),
        r: s.r.strip_suffix(&f.r, sig)?,
        rho,
    })
}

/// Whether `S = λ ∘₁ (l ∘₀ S′ ∘₀ r) ∘₁ ρ` holds for the reduced step.
fn refactors(sig: &Signature, b: &Branching, s: &Step, f: &Factoring) -> bool {
    let Some(reduced) = reduce(sig, s, f) else {
        return false;
    };
    let Some(inner) = single(sig, &reduced) else {
        return false;
    };
    let k = b.source.len();
    let lambda = sig.slice2(&b.source, 0, f.lambda_len);
    let rho = sig.slice2(&b.source, k - f.rho_len, k);
    in_context(sig, &lambda, &f.l, &inner, &f.r, &rho) == single(sig, s)
}

/// Whether a context factors both steps of a branching.
pub fn is_factoring(sig: &Signature, b: &Branching, f: &Factoring) -> bool {
    refactors(sig, b, &b.s1, f) && refactors(sig, b, &b.s2, f)
}

/// A non-trivial context common to both steps, found by exhaustive search.
pub fn find_factoring(sig: &Signature, b: &Branching) -> Option<Factoring> {
    let amax = b.s1.lambda.len().min(b.s2.lambda.len());
    let bmax = b.s1.rho.len().min(b.s2.rho.len());
    for lambda_len in 0..=amax {
        for rho_len in 0..=bmax {
            for nl in 0..=b.s1.l.len() {
                for nr in 0..=b.s1.r.len() {
                    let f = Factoring {
                        lambda_len,
                        l: b.s1.l.slice(0, nl, sig),
                        r: b.s1.r.slice(b.s1.r.len() - nr, b.s1.r.len(), sig),
                        rho_len,
                    };
                    if !f.is_trivial() && is_factoring(sig, b, &f) {
                        return Some(f);
                    }
                }
            }
        }
    }
    None
}

/// `S₁ = (l₁ A₁ r₁) ∘₁ χ ∘₁ (l₂ φ₂ r₂)` and `S₂ = (l₁ φ₁ r₁) ∘₁ χ ∘₁ (l₂ A₂ r₂)`.
fn independent_in_order(sig: &Signature, s1: &Step, s2: &Step, source: &TwoCell) -> bool {
    let Ok((src1, _)) = sig.instance_boundaries(&s1.inner) else {
        return false;
    };
    let Ok((src2, _)) = sig.instance_boundaries(&s2.inner) else {
        return false;
    };
    let (k, m1, m2) = (source.len(), src1.len(), src2.len());
    if k < m1 + m2 {
        return false;
    }
    let chi = sig.slice2(source, m1, k - m2);
    let phi1 = src1.whiskered(&s1.l, &s1.r);
    let phi2 = src2.whiskered(&s2.l, &s2.r);
    let (Ok(a1), Ok(a2)) = (sig.gen3(&s1.inner), sig.gen3(&s2.inner)) else {
        return false;
    };
    let empty_top = TwoCell::identity(source.source1.clone());
    let t1 = in_context(sig, &empty_top, &s1.l, &a1, &s1.r, &chi.then(&phi2));
    let before2 = phi1.then(&chi);
    let end = TwoCell::identity(sig.target1(&s2.rho));
    let t2 = in_context(sig, &before2, &s2.l, &a2, &s2.r, &end);
    t1.is_some() && t1 == single(sig, s1) && t2.is_some() && t2 == single(sig, s2)
}

/// The forward interchange step moving the last whisker of `χ ∘₀ g` past the first of `ψ`,
/// written out from the definition.
fn swap_step(sig: &Signature, chi: &TwoCell, g: &OneCell, psi: &TwoCell) -> Option<Step> {
    let (kc, kp) = (chi.len(), psi.len());
    if kc == 0 || kp == 0 {
        return None;
    }
    let f2 = sig.target1(chi);
    let h = &psi.source1;
    let a = &chi.whiskers[kc - 1];
    let b = &psi.whiskers[0];
    let lambda = TwoCell {
        source1: chi.source1.then(g).then(h),
        whiskers: chi.whiskers[..kc - 1]
            .iter()
            .map(|w| Whisker2 {
                left: w.left.clone(),
                gen: w.gen,
                right: w.right.then(g).then(h),
            })
            .collect(),
    };
    let rho_src = f2.then(g).then(&sig.whisker_target(b));
    let rho = TwoCell {
        source1: rho_src,
        whiskers: psi.whiskers[1..]
            .iter()
            .map(|w| Whisker2 {
                left: f2.then(g).then(&w.left),
                gen: w.gen,
                right: w.right.clone(),
            })
            .collect(),
    };
    Some(Step {
        lambda,
        l: a.left.clone(),
        inner: crate::cells::ThreeGenInstance::Interchanger {
            alpha: a.gen,
            g: a.right.then(g).then(&b.left),
            beta: b.gen,
            inverse: false,
        },
        r: b.right.clone(),
        rho,
    })
}

/// Natural pattern with the generator step on top: `S₁ = (A g h) ∘₁ (f′ g ψ)`.
fn natural_first(sig: &Signature, s1: &Step, s2: &Step) -> bool {
    if !s1.lambda.is_empty() || !s1.l.is_empty() {
        return false;
    }
    let Ok((a_src, _)) = sig.instance_boundaries(&s1.inner) else {
        return false;
    };
    let Ok(a) = sig.gen3(&s1.inner) else {
        return false;
    };
    let f2 = sig.target1(&a_src);
    for cut in 0..=s1.r.len() {
        let g = s1.r.slice(0, cut, sig);
        let h = s1.r.slice(cut, s1.r.len(), sig);
        let fg = f2.then(&g);
        let y = OneCell::id(sig.one_end(&s1.r));
        let Some(psi) = strip_whiskers(sig, &s1.rho, &fg, &y) else {
            continue;
        };
        if psi.is_empty() || psi.source1 != h {
            continue;
        }
        let top = TwoCell::identity(a_src.source1.then(&s1.r));
        let rebuilt = in_context(sig, &top, &OneCell::id(a_src.source1.start), &a, &s1.r, &psi.whiskered(&fg, &OneCell::id(y.start)));
        if rebuilt.is_none() || rebuilt != single(sig, s1) {
            continue;
        }
        if swap_step(sig, &a_src, &g, &psi).as_ref() == Some(s2) {
            return true;
        }
    }
    false
}

/// Natural pattern with the generator step below: `S₁ = (χ g h) ∘₁ (f′ g B)`.
fn natural_second(sig: &Signature, s1: &Step, s2: &Step) -> bool {
    if !s1.rho.is_empty() || !s1.r.is_empty() || s1.lambda.is_empty() {
        return false;
    }
    let Ok((b_src, _)) = sig.instance_boundaries(&s1.inner) else {
        return false;
    };
    let Ok(bgen) = sig.gen3(&s1.inner) else {
        return false;
    };
    let h = &b_src.source1;
    let x = OneCell::id(s1.lambda.source1.start);
    for cut in 0..=s1.l.len() {
        let g = s1.l.slice(cut, s1.l.len(), sig);
        let gh = g.then(h);
        let Some(chi) = strip_whiskers(sig, &s1.lambda, &x, &gh) else {
            continue;
        };
        if sig.target1(&chi) != s1.l.slice(0, cut, sig) {
            continue;
        }
        let end = TwoCell::identity(sig.target1(&s1.rho));
        let rebuilt = in_context(sig, &chi.whiskered(&x, &gh), &s1.l, &bgen, &OneCell::id(sig.one_end(h)), &end);
        if rebuilt.is_none() || rebuilt != single(sig, s1) {
            continue;
        }
        if swap_step(sig, &chi, &g, &b_src).as_ref() == Some(s2) {
            return true;
        }
    }
    false
}

/// Classifies a branching by direct search for each defining decomposition.
pub fn classify_by_definition(b: &Branching, pres: &GrayPresentation) -> BranchClass {
    let sig = &pres.sig;
    if b.s1 == b.s2 {
        return BranchClass::Trivial;
    }
    if let Some(f) = find_factoring(sig, b) {
        return BranchClass::NonMinimal(f);
    }
    if independent_in_order(sig, &b.s1, &b.s2, &b.source) || independent_in_order(sig, &b.s2, &b.s1, &b.source) {
        return BranchClass::Independent;
    }
    if pres.mode == InterchangeMode::Standard
        && (natural_first(sig, &b.s1, &b.s2)
            || natural_second(sig, &b.s1, &b.s2)
            || natural_first(sig, &b.s2, &b.s1)
            || natural_second(sig, &b.s2, &b.s1))
    {
        return BranchClass::Natural;
    }
    BranchClass::Critical
}
