//! Enumeration of critical branchings.
//!
//! In the standard mode the candidates are finite: overlaps of two operational
//! sources, and an operational source extended by one whisker above or below
//! that an interchanger can swap with it. Contexts longer than the widest
//! 2-generator boundary only produce natural branchings, so they are skipped.
//! Interchangers never overlap critically with each other in this mode.
//! With oriented interchangers no such bound is known, so candidates are all
//! 2-cells up to a length and width bound.

use super::{classify, find_redexes, Branching, BranchClass};
use crate::cells::{GenId, OneCell, Signature, TwoCell, Whisker2};
use crate::par::{self, Exec};
use crate::presentation::{GrayPresentation, InterchangeMode};
use crate::termination::words_from;
use std::collections::BTreeSet;
use thiserror::Error;

/// Errors raised by critical-branching enumeration.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EnumerationError {
    #[error("3-generator `{0}` has an identity source; its redexes are not enumerable")]
    EmptySource(String),
}

/// Tuning for [`enumerate_critical_with`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EnumerationOptions {
    pub exec: Exec,
    /// Maximal source length searched with oriented interchangers.
    pub q_max_len: usize,
    /// Maximal 1-cell width searched with oriented interchangers.
    pub q_max_width: usize,
}

impl Default for EnumerationOptions {
    fn default() -> Self {
        EnumerationOptions {
            exec: Exec::Parallel,
            q_max_len: 3,
            q_max_width: 4,
        }
    }
}

/// A critical branching with its ordering key `(A₁, A₂, ‖λ₁‖, ‖λ₂‖)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CriticalBranching {
    pub key: (String, String, usize, usize),
    pub branching: Branching,
}

fn step_key(sig: &Signature, s: &crate::cells::Step) -> (String, usize) {
    (sig.instance_name(&s.inner), s.lambda.len())
}

/// Orders the two steps so that `(name, ‖λ‖)` of the first is the smaller.
pub fn canonical_pair(sig: &Signature, b: &Branching) -> Branching {
    let k1 = (step_key(sig, &b.s1), &b.s1);
    let k2 = (step_key(sig, &b.s2), &b.s2);
    if k1 <= k2 {
        b.clone()
    } else {
        b.swapped()
    }
}

fn keyed(sig: &Signature, b: Branching) -> CriticalBranching {
    let b = canonical_pair(sig, &b);
    let (n1, l1) = step_key(sig, &b.s1);
    let (n2, l2) = step_key(sig, &b.s2);
    CriticalBranching {
        key: (n1, n2, l1, l2),
        branching: b,
    }
}

/// All unordered pairs of distinct rewriting steps from `φ`.
pub fn local_branchings(pres: &GrayPresentation, phi: &TwoCell) -> Vec<Branching> {
    let redexes = find_redexes(phi, pres, true);
    let mut out = Vec::new();
    for i in 0..redexes.len() {
        for j in i + 1..redexes.len() {
            out.push(Branching {
                source: phi.clone(),
                s1: redexes[i].clone(),
                s2: redexes[j].clone(),
            });
        }
    }
    out
}

fn critical_at(pres: &GrayPresentation, phi: &TwoCell) -> Vec<CriticalBranching> {
    local_branchings(pres, phi)
        .into_iter()
        .filter(|b| classify(b, pres) == BranchClass::Critical)
        .map(|b| keyed(&pres.sig, b))
        .collect()
}

fn collect(pres: &GrayPresentation, candidates: &[TwoCell], exec: Exec) -> Vec<CriticalBranching> {
    let found = par::map(exec, candidates, |phi| critical_at(pres, phi));
    let set: BTreeSet<CriticalBranching> = found.into_iter().flatten().collect();
    set.into_iter().collect()
}

/// Every 2-cell with at most `max_len` whiskers whose 1-cells have width at most `max_width`.
pub fn all_two_cells(sig: &Signature, max_len: usize, max_width: usize) -> Vec<TwoCell> {
    let mut out = Vec::new();
    let mut frontier: Vec<(TwoCell, OneCell)> = Vec::new();
    for x in 0..sig.zero.len() {
        for u in words_from(sig, x, max_width) {
            frontier.push((TwoCell::identity(u.clone()), u));
        }
    }
    for depth in 0..=max_len {
        out.extend(frontier.iter().map(|(phi, _)| phi.clone()));
        if depth == max_len {
            break;
        }
        let mut next = Vec::new();
        for (phi, u) in &frontier {
            for (alpha, g) in sig.two.iter().enumerate() {
                let (s, t) = (&g.source, &g.target);
                if u.len() < s.len() || u.len() - s.len() + t.len() > max_width {
                    continue;
                }
                for p in 0..=u.len() - s.len() {
                    let left = u.slice(0, p, sig);
                    if sig.one_end(&left) != s.start || u.word[p..p + s.len()] != s.word[..] {
                        continue;
                    }
                    let right = u.slice(p + s.len(), u.len(), sig);
                    let w = Whisker2 {
                        left: left.clone(),
                        gen: alpha,
                        right: right.clone(),
                    };
                    let v = left.then(t).then(&right);
                    let mut psi = phi.clone();
                    psi.whiskers.push(w);
                    next.push((psi, v));
                }
            }
        }
        frontier = next;
    }
    out
}

/// Critical branchings among all sources from [`all_two_cells`].
pub fn brute_force_critical(
    pres: &GrayPresentation,
    max_len: usize,
    max_width: usize,
    exec: Exec,
) -> Vec<CriticalBranching> {
    let cells = all_two_cells(&pres.sig, max_len, max_width);
    collect(pres, &cells, exec)
}

/// The widest boundary of a 2-generator.
fn max_boundary_width(sig: &Signature) -> usize {
    sig.two
        .iter()
        .map(|g| g.source.len().max(g.target.len()))
        .max()
        .unwrap_or(0)
}

/// Words ending at the 0-cell `y` of length at most `n`.
fn words_to(sig: &Signature, y: GenId, n: usize) -> Vec<OneCell> {
    (0..sig.zero.len())
        .flat_map(|x| words_from(sig, x, n))
        .filter(|u| sig.one_end(u) == y)
        .collect()
}

/// Positions `p` where `pat` occurs in `u` as a typed factor.
fn occurrences(sig: &Signature, u: &OneCell, pat: &OneCell) -> Vec<usize> {
    if u.len() < pat.len() {
        return Vec::new();
    }
    (0..=u.len() - pat.len())
        .filter(|&p| {
            u.word[p..p + pat.len()] == pat.word[..] && sig.one_end(&u.slice(0, p, sig)) == pat.start
        })
        .collect()
}

/// Sources where the operational sources `P` (from the top) and `Q` (shifted by `d` rows) overlap.
fn overlap(sig: &Signature, p: &TwoCell, q: &TwoCell, d: usize) -> Option<TwoCell> {
    let (m1, m2) = (p.len(), q.len());
    let (a, b) = (&p.whiskers[d], &q.whiskers[0]);
    if a.gen != b.gen {
        return None;
    }
    let (l1, l2) = if let Some(x) = b.left.strip_suffix(&a.left, sig) {
        (x, OneCell::id(q.source1.start))
    } else {
        (OneCell::id(p.source1.start), a.left.strip_suffix(&b.left, sig)?)
    };
    let (r1, r2) = if let Some(y) = b.right.strip_prefix(&a.right, sig) {
        (y, OneCell::id(sig.one_end(&q.source1)))
    } else {
        (OneCell::id(sig.one_end(&p.source1)), a.right.strip_prefix(&b.right, sig)?)
    };
    let pw = p.whiskered(&l1, &r1);
    let qw = q.whiskered(&l2, &r2);
    for t in 0..(m1 - d).min(m2) {
        if pw.whiskers[d + t] != qw.whiskers[t] {
            return None;
        }
    }
    let mut phi = pw;
    if m1 - d < m2 {
        phi.whiskers.extend_from_slice(&qw.whiskers[m1 - d..]);
    }
    sig.check_two(&phi).ok().map(|_| phi)
}

/// Sources with an extra whisker above an operational source `P`.
fn extended_above(sig: &Signature, p: &TwoCell, k: usize) -> Vec<TwoCell> {
    let mut out = Vec::new();
    let first = &p.whiskers[0];
    let beta_src = &sig.two[first.gen].source;
    for l1 in words_to(sig, p.source1.start, k) {
        let m = l1.then(&first.left);
        for (alpha, g) in sig.two.iter().enumerate() {
            for pos in occurrences(sig, &m, &g.target) {
                let l = m.slice(0, pos, sig);
                let mid = m.slice(pos + g.target.len(), m.len(), sig);
                let w0 = Whisker2 {
                    left: l.clone(),
                    gen: alpha,
                    right: mid.then(beta_src).then(&first.right),
                };
                let body = p.whiskered(&l1, &OneCell::id(sig.one_end(&p.source1)));
                let mut whiskers = vec![w0];
                whiskers.extend(body.whiskers);
                let phi = TwoCell {
                    source1: l.then(&g.source).then(&mid).then(beta_src).then(&first.right),
                    whiskers,
                };
                if sig.check_two(&phi).is_ok() {
                    out.push(phi);
                }
            }
        }
    }
    out
}

/// Sources with an extra whisker below an operational source `P`.
fn extended_below(sig: &Signature, p: &TwoCell, k: usize) -> Vec<TwoCell> {
    let mut out = Vec::new();
    let last = p.whiskers.last().expect("non-empty source");
    let alpha_tgt = &sig.two[last.gen].target;
    let end = sig.one_end(&p.source1);
    for r1 in words_from(sig, end, k) {
        let m = last.right.then(&r1);
        for (beta, g) in sig.two.iter().enumerate() {
            for pos in occurrences(sig, &m, &g.source) {
                let mid = m.slice(0, pos, sig);
                let r = m.slice(pos + g.source.len(), m.len(), sig);
                let mut phi = p.whiskered(&OneCell::id(p.source1.start), &r1);
                phi.whiskers.push(Whisker2 {
                    left: last.left.then(alpha_tgt).then(&mid),
                    gen: beta,
                    right: r,
                });
                if sig.check_two(&phi).is_ok() {
                    out.push(phi);
                }
            }
        }
    }
    out
}

fn standard_candidates(pres: &GrayPresentation) -> Vec<TwoCell> {
    let sig = &pres.sig;
    let k = max_boundary_width(sig);
    let mut set = BTreeSet::new();
    for a in &sig.three {
        set.insert(a.source.clone());
        for b in &sig.three {
            for d in 0..a.source.len() {
                set.extend(overlap(sig, &a.source, &b.source, d));
            }
        }
        set.extend(extended_above(sig, &a.source, k));
        set.extend(extended_below(sig, &a.source, k));
    }
    set.into_iter().collect()
}

/// All critical branchings of a presentation, sorted by key.
pub fn enumerate_critical(pres: &GrayPresentation) -> Result<Vec<CriticalBranching>, EnumerationError> {
    enumerate_critical_with(pres, &EnumerationOptions::default())
}

/// [`enumerate_critical`] with explicit options.
pub fn enumerate_critical_with(
    pres: &GrayPresentation,
    opts: &EnumerationOptions,
) -> Result<Vec<CriticalBranching>, EnumerationError> {
    if let Some(a) = pres.sig.three.iter().find(|a| a.source.is_empty()) {
        return Err(EnumerationError::EmptySource(a.name.clone()));
    }
    let candidates = match pres.mode {
        InterchangeMode::Standard => standard_candidates(pres),
        InterchangeMode::Q => all_two_cells(&pres.sig, opts.q_max_len, opts.q_max_width)
            .into_iter()
            .filter(|phi| phi.len() >= 2)
            .collect(),
    };
    Ok(collect(pres, &candidates, opts.exec))
}
