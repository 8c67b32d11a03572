//! Reduction orders and termination certificates.
//!
//! Four strategies are available: an affine interpretation combined with the
//! interchange norm, length combined with the interchange norm, length on
//! connected 2-cells (relying on the termination of interchangers there), and
//! the counting measure of self-dualities with oriented interchangers.

mod cospan;
mod monex;
mod selfdual;

pub use cospan::{cospan, is_connected, CospanValue};
pub use monex::{Affine, InterpretationError, LinearInterpretation};
pub use selfdual::{selfdual_measure, selfdual_shape, SelfDualMeasure, SelfDualShape};

use crate::cells::{GenId, OneCell, Signature, ThreeGenInstance, TwoCell};
use crate::presentation::{GrayPresentation, InterchangeMode};
use serde::Serialize;
use std::cmp::Ordering;
use std::fmt;
use thiserror::Error;

/// Longest middle word `g` used when checking interchanger instances.
pub const INSTANCE_WORD_BOUND: usize = 3;

/// The reversed sequence of left-context lengths `(‖l_k‖, …, ‖l₁‖)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct InterchangeNorm(pub Vec<usize>);

impl InterchangeNorm {
    /// Same-length lexicographic comparison; sequences of different lengths are incomparable.
    pub fn compare(&self, other: &InterchangeNorm) -> Option<Ordering> {
        (self.0.len() == other.0.len()).then(|| self.0.cmp(&other.0))
    }
}

impl fmt::Display for InterchangeNorm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(usize::to_string).collect();
        write!(f, "({})", parts.join(", "))
    }
}

/// The interchange norm of a 2-cell.
pub fn interchange_norm(phi: &TwoCell) -> InterchangeNorm {
    InterchangeNorm(phi.whiskers.iter().rev().map(|w| w.left.len()).collect())
}

/// The available reduction-order strategies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum TerminationStrategy {
    /// Affine interpretation, then interchange norm.
    Interpretation,
    /// Length, then interchange norm.
    Interchange,
    /// Length on connected 2-cells.
    Connected,
    /// Length, then the self-duality counting measure.
    SelfDual,
}

impl TerminationStrategy {
    pub const ALL: [TerminationStrategy; 4] = [
        TerminationStrategy::Interpretation,
        TerminationStrategy::Interchange,
        TerminationStrategy::Connected,
        TerminationStrategy::SelfDual,
    ];

    pub fn tag(&self) -> &'static str {
        match self {
            TerminationStrategy::Interpretation => "interpretation+intnorm",
            TerminationStrategy::Interchange => "length+intnorm",
            TerminationStrategy::Connected => "connected+length",
            TerminationStrategy::SelfDual => "selfdual-measure",
        }
    }

    /// Parses the command-line names `interp`, `interchange`, `connected`, `selfdual`.
    pub fn from_name(s: &str) -> Option<Self> {
        match s {
            "interp" | "interpretation" => Some(TerminationStrategy::Interpretation),
            "interchange" => Some(TerminationStrategy::Interchange),
            "connected" => Some(TerminationStrategy::Connected),
            "selfdual" => Some(TerminationStrategy::SelfDual),
            _ => None,
        }
    }
}

/// One re-checkable comparison of a certificate.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub generator: String,
    pub quantity: String,
    pub source: String,
    pub target: String,
}

/// A successful termination check.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TerminationCertificate {
    pub strategy: TerminationStrategy,
    pub tag: String,
    pub witnesses: Vec<Witness>,
    /// Results relied upon but not checked.
    pub assumptions: Vec<String>,
    /// The class of 2-cells on which termination is certified.
    pub scope: String,
}

impl TerminationCertificate {
    pub fn witness(&self, generator: &str, quantity: &str) -> Option<&Witness> {
        self.witnesses
            .iter()
            .find(|w| w.generator == generator && w.quantity == quantity)
    }
}

/// A failed termination check with the first failing comparison.
#[derive(Debug, Clone, Error, PartialEq, Eq, Serialize)]
#[error("termination refused ({}): {reason}", strategy.map_or("all strategies", |s| s.tag()))]
pub struct Refusal {
    pub strategy: Option<TerminationStrategy>,
    pub reason: String,
}

fn refuse(strategy: TerminationStrategy, reason: impl Into<String>) -> Refusal {
    Refusal {
        strategy: Some(strategy),
        reason: reason.into(),
    }
}

/// All words starting at `x` of length at most `max_len`.
pub fn words_from(sig: &Signature, x: GenId, max_len: usize) -> Vec<OneCell> {
    let mut out = vec![OneCell::id(x)];
    let mut frontier = vec![OneCell::id(x)];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for u in &frontier {
            let end = sig.one_end(u);
            for (a, g) in sig.one.iter().enumerate() {
                if g.source == end {
                    let mut v = u.clone();
                    v.word.push(a);
                    next.push(v);
                }
            }
        }
        out.extend(next.iter().cloned());
        frontier = next;
    }
    out
}

/// Every interchanger instance `(α, g, β)` in the rewriting alphabet with `‖g‖ ≤ bound`.
pub fn interchanger_instances(p: &GrayPresentation, bound: usize) -> Vec<ThreeGenInstance> {
    let sig = &p.sig;
    let mut out = Vec::new();
    for alpha in 0..sig.two.len() {
        let x = sig.one_end(&sig.two[alpha].source);
        for g in words_from(sig, x, bound) {
            let y = sig.one_end(&g);
            for beta in 0..sig.two.len() {
                if sig.two[beta].source.start == y {
                    out.push(p.interchanger(alpha, g.clone(), beta));
                }
            }
        }
    }
    out
}

/// Checks positivity and the strict decrease of the interchange norm on interchangers.
pub fn check_positive_intnorm(p: &GrayPresentation) -> Result<Vec<Witness>, Refusal> {
    let strat = TerminationStrategy::Interchange;
    let sig = &p.sig;
    if let Some(g) = sig.two.iter().find(|g| g.target.is_empty()) {
        return Err(refuse(
            strat,
            format!("2-generator `{}` has an empty target; the presentation is not positive", g.name),
        ));
    }
    let mut witnesses = Vec::new();
    for inst in interchanger_instances(p, INSTANCE_WORD_BOUND) {
        let (s, t) = sig.instance_boundaries(&inst).map_err(|e| refuse(strat, e.to_string()))?;
        let (ns, nt) = (interchange_norm(&s), interchange_norm(&t));
        if ns.compare(&nt) != Some(Ordering::Greater) {
            return Err(refuse(
                strat,
                format!("{}: interchange norm {ns} does not exceed {nt}", sig.instance_name(&inst)),
            ));
        }
        witnesses.push(Witness {
            generator: sig.instance_name(&inst),
            quantity: "intnorm".into(),
            source: ns.to_string(),
            target: nt.to_string(),
        });
    }
    Ok(witnesses)
}

/// Symbolic interpretations of every operational generator's boundaries, with the decrease check.
pub fn check_interpretation_decrease(
    f: &LinearInterpretation,
    p: &GrayPresentation,
) -> Result<Vec<Witness>, Refusal> {
    let strat = TerminationStrategy::Interpretation;
    let sig = &p.sig;
    f.check(sig).map_err(|e| refuse(strat, e.to_string()))?;
    let mut witnesses = Vec::new();
    for g in &sig.three {
        let fs = f.eval(sig, &g.source).map_err(|e| refuse(strat, e.to_string()))?;
        let ft = f.eval(sig, &g.target).map_err(|e| refuse(strat, e.to_string()))?;
        if !fs.dominates_strictly(&ft) {
            return Err(refuse(
                strat,
                format!("`{}`: interpretation {fs} does not strictly dominate {ft}", g.name),
            ));
        }
        witnesses.push(Witness {
            generator: g.name.clone(),
            quantity: "interpretation".into(),
            source: fs.to_string(),
            target: ft.to_string(),
        });
    }
    for inst in interchanger_instances(p, INSTANCE_WORD_BOUND) {
        let (s, t) = sig.instance_boundaries(&inst).map_err(|e| refuse(strat, e.to_string()))?;
        let fs = f.eval(sig, &s).map_err(|e| refuse(strat, e.to_string()))?;
        let ft = f.eval(sig, &t).map_err(|e| refuse(strat, e.to_string()))?;
        if fs != ft {
            return Err(refuse(
                strat,
                format!("{}: interpretations {fs} and {ft} differ", sig.instance_name(&inst)),
            ));
        }
    }
    Ok(witnesses)
}

fn length_decrease(p: &GrayPresentation, strat: TerminationStrategy) -> Result<Vec<Witness>, Refusal> {
    let sig = &p.sig;
    let mut witnesses = Vec::new();
    for g in &sig.three {
        if g.source.len() <= g.target.len() {
            return Err(refuse(
                strat,
                format!(
                    "`{}` does not decrease length ({} to {})",
                    g.name,
                    g.source.len(),
                    g.target.len()
                ),
            ));
        }
        witnesses.push(Witness {
            generator: g.name.clone(),
            quantity: "length".into(),
            source: g.source.len().to_string(),
            target: g.target.len().to_string(),
        });
    }
    Ok(witnesses)
}

fn certify_interpretation(p: &GrayPresentation) -> Result<TerminationCertificate, Refusal> {
    let strat = TerminationStrategy::Interpretation;
    let f = p
        .interpretation
        .as_ref()
        .ok_or_else(|| refuse(strat, "no linear interpretation is declared"))?;
    let mut witnesses = check_interpretation_decrease(f, p)?;
    witnesses.extend(check_positive_intnorm(p).map_err(|r| refuse(strat, r.reason))?);
    Ok(TerminationCertificate {
        strategy: strat,
        tag: strat.tag().into(),
        witnesses,
        assumptions: Vec::new(),
        scope: "all 2-cells".into(),
    })
}

fn certify_interchange(p: &GrayPresentation) -> Result<TerminationCertificate, Refusal> {
    let strat = TerminationStrategy::Interchange;
    let mut witnesses = length_decrease(p, strat)?;
    witnesses.extend(check_positive_intnorm(p)?);
    Ok(TerminationCertificate {
        strategy: strat,
        tag: strat.tag().into(),
        witnesses,
        assumptions: Vec::new(),
        scope: "all 2-cells".into(),
    })
}

fn certify_connected(p: &GrayPresentation) -> Result<TerminationCertificate, Refusal> {
    let strat = TerminationStrategy::Connected;
    let sig = &p.sig;
    if p.mode == InterchangeMode::Q {
        return Err(refuse(strat, "the connectedness theorem covers forward interchangers only"));
    }
    let mut witnesses = length_decrease(p, strat)?;
    for g in &sig.three {
        let (cs, ct) = (cospan(sig, &g.source), cospan(sig, &g.target));
        if cs != ct {
            return Err(refuse(strat, format!("`{}` changes the cospan value", g.name)));
        }
        witnesses.push(Witness {
            generator: g.name.clone(),
            quantity: "cospan".into(),
            source: format!("{cs:?}"),
            target: format!("{ct:?}"),
        });
    }
    for inst in interchanger_instances(p, INSTANCE_WORD_BOUND) {
        let (s, t) = sig.instance_boundaries(&inst).map_err(|e| refuse(strat, e.to_string()))?;
        if cospan(sig, &s) != cospan(sig, &t) {
            return Err(refuse(
                strat,
                format!("{} changes the cospan value", sig.instance_name(&inst)),
            ));
        }
    }
    Ok(TerminationCertificate {
        strategy: strat,
        tag: strat.tag().into(),
        witnesses,
        assumptions: vec![
            "interchangers terminate on connected 2-cells (external theorem, not re-checked)".into(),
        ],
        scope: "connected 2-cells".into(),
    })
}

/// Checks the oriented interchangers of a self-duality against the counting measure.
pub fn check_q_system(p: &GrayPresentation) -> Result<Vec<Witness>, Refusal> {
    let strat = TerminationStrategy::SelfDual;
    let sig = &p.sig;
    if p.mode != InterchangeMode::Q {
        return Err(refuse(strat, "the presentation does not orient its interchangers"));
    }
    if selfdual_shape(sig).is_none() {
        return Err(refuse(strat, "the signature is not a self-duality signature"));
    }
    let mut witnesses = length_decrease(p, strat)?;
    let a = sig.one[0].source;
    let contexts = words_from(sig, a, 2);
    for inst in interchanger_instances(p, INSTANCE_WORD_BOUND) {
        let (s, t) = sig.instance_boundaries(&inst).map_err(|e| refuse(strat, e.to_string()))?;
        for l in &contexts {
            for r in &contexts {
                let (ws, wt) = (s.whiskered(l, r), t.whiskered(l, r));
                let ms = selfdual_measure(sig, &ws).expect("shape checked");
                let mt = selfdual_measure(sig, &wt).expect("shape checked");
                if ms.compare(&mt) != Some(Ordering::Greater) {
                    return Err(refuse(
                        strat,
                        format!("{}: measure {ms:?} does not exceed {mt:?}", sig.instance_name(&inst)),
                    ));
                }
            }
        }
        let ms = selfdual_measure(sig, &s).expect("shape checked");
        let mt = selfdual_measure(sig, &t).expect("shape checked");
        witnesses.push(Witness {
            generator: sig.instance_name(&inst),
            quantity: "selfdual-measure".into(),
            source: format!("{ms:?}"),
            target: format!("{mt:?}"),
        });
    }
    Ok(witnesses)
}

fn certify_selfdual(p: &GrayPresentation) -> Result<TerminationCertificate, Refusal> {
    let strat = TerminationStrategy::SelfDual;
    let witnesses = check_q_system(p)?;
    Ok(TerminationCertificate {
        strategy: strat,
        tag: strat.tag().into(),
        witnesses,
        assumptions: Vec::new(),
        scope: "connected 2-cells".into(),
    })
}

/// Runs one strategy, or every strategy in order when `strategy` is `None`.
pub fn certify_termination(
    p: &GrayPresentation,
    strategy: Option<TerminationStrategy>,
) -> Result<TerminationCertificate, Refusal> {
    let run = |s: TerminationStrategy| match s {
        TerminationStrategy::Interpretation => certify_interpretation(p),
        TerminationStrategy::Interchange => certify_interchange(p),
        TerminationStrategy::Connected => certify_connected(p),
        TerminationStrategy::SelfDual => certify_selfdual(p),
    };
    if let Some(s) = strategy {
        return run(s);
    }
    let mut reasons = Vec::new();
    for s in TerminationStrategy::ALL {
        match run(s) {
            Ok(c) => return Ok(c),
            Err(r) => reasons.push(format!("{}: {}", s.tag(), r.reason)),
        }
    }
    Err(Refusal {
        strategy: None,
        reason: format!("no strategy applies; {}", reasons.join("; ")),
    })
}

#[cfg(test)]
mod tests;
