//! Normal forms, joins of critical branchings and Squier completion.
//!
//! A critical branching is joined by normalizing both of its targets with the
//! deterministic topmost-redex strategy. It is covered by a tile whose two
//! sides start with its two steps, in either order. Completion adds one tile
//! per joinable branching that no tile covers.

mod zigzag;

pub use zigzag::Zigzag;

use crate::cells::{Signature, Step, ThreeCell, TwoCell};
use crate::par::{self, Exec};
use crate::presentation::{GrayPresentation, InterchangeMode, Tile};
use crate::rewriting::{apply_step, enumerate_critical_with, find_redexes, CriticalBranching, EnumerationError, EnumerationOptions};
use crate::termination::{certify_termination, TerminationCertificate};
use crate::text::{step_to_text, three_cell_text, two_cell_text};
use serde::Serialize;
use thiserror::Error;

/// Default rewriting budget for one normalization.
pub const DEFAULT_MAX_STEPS: usize = 100_000;

/// The budget from `GRAYPOL_MAX_STEPS`, or [`DEFAULT_MAX_STEPS`].
pub fn default_max_steps() -> usize {
    std::env::var("GRAYPOL_MAX_STEPS")
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .unwrap_or(DEFAULT_MAX_STEPS)
}

/// Errors raised while normalizing or completing.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CoherenceError {
    #[error("no normal form reached within {steps} rewriting steps; the system may not terminate")]
    BudgetExhausted { steps: usize, last: TwoCell },
    #[error(transparent)]
    Enumeration(#[from] EnumerationError),
    #[error("ill-typed 2-cell: {0}")]
    IllTyped(String),
}

/// Rewrites `φ` by the topmost redex until none is left.
pub fn normalize2(phi: &TwoCell, p: &GrayPresentation, max_steps: usize) -> Result<(TwoCell, ThreeCell), CoherenceError> {
    p.sig
        .check_two(phi)
        .map_err(|e| CoherenceError::IllTyped(e.to_string()))?;
    let mut cur = phi.clone();
    let mut steps: Vec<Step> = Vec::new();
    loop {
        let Some(s) = find_redexes(&cur, p, true).into_iter().next() else {
            return Ok((
                cur,
                ThreeCell {
                    source2: phi.clone(),
                    steps,
                },
            ));
        };
        if steps.len() >= max_steps {
            return Err(CoherenceError::BudgetExhausted {
                steps: max_steps,
                last: cur,
            });
        }
        cur = apply_step(&p.sig, &s);
        steps.push(s);
    }
}

/// The result of normalizing both targets of a branching.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Join {
    Joined {
        f1: ThreeCell,
        f2: ThreeCell,
        normal_form: TwoCell,
    },
    NotJoinable {
        f1: ThreeCell,
        f2: ThreeCell,
        nf1: TwoCell,
        nf2: TwoCell,
    },
    Budget(String),
}

impl Join {
    pub fn is_joined(&self) -> bool {
        matches!(self, Join::Joined { .. })
    }
}

/// Normalizes `∂⁺S₁` and `∂⁺S₂` and compares the normal forms.
pub fn join_branching(s1: &Step, s2: &Step, p: &GrayPresentation, max_steps: usize) -> Join {
    let run = |s: &Step| normalize2(&apply_step(&p.sig, s), p, max_steps);
    match (run(s1), run(s2)) {
        (Ok((n1, f1)), Ok((n2, f2))) => {
            if n1 == n2 {
                Join::Joined {
                    f1,
                    f2,
                    normal_form: n1,
                }
            } else {
                Join::NotJoinable { f1, f2, nf1: n1, nf2: n2 }
            }
        }
        (Err(e), _) | (_, Err(e)) => Join::Budget(e.to_string()),
    }
}

/// `S ∘₂ F` as a 3-cell.
pub fn prepend(sig: &Signature, s: &Step, f: &ThreeCell) -> ThreeCell {
    let mut steps = vec![s.clone()];
    steps.extend(f.steps.iter().cloned());
    ThreeCell {
        source2: sig.step_source(s).expect("valid step"),
        steps,
    }
}

/// Whether a tile fills the branching `(S₁, S₂)` up to symmetry.
pub fn tile_covers(sig: &Signature, t: &Tile, s1: &Step, s2: &Step) -> bool {
    let parallel = t.lhs.source2 == t.rhs.source2 && sig.target2(&t.lhs).ok() == sig.target2(&t.rhs).ok();
    let (a, b) = (t.lhs.steps.first(), t.rhs.steps.first());
    parallel && ((a == Some(s1) && b == Some(s2)) || (a == Some(s2) && b == Some(s1)))
}

/// Outcome of the coherence analysis.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    CoherentBySquier,
    CompletedWithNewTiles,
    Inconclusive,
}

impl Verdict {
    pub fn name(&self) -> &'static str {
        match self {
            Verdict::CoherentBySquier => "coherent-by-squier",
            Verdict::CompletedWithNewTiles => "completed-with-new-tiles",
            Verdict::Inconclusive => "inconclusive",
        }
    }
}

/// Termination part of a report.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TerminationStatus {
    pub certified: bool,
    pub certificate: Option<TerminationCertificate>,
    pub refusal: Option<String>,
}

/// The join of one critical branching, rendered as text.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct JoinRecord {
    pub key: (String, String, usize, usize),
    pub source: String,
    pub s1: String,
    pub s2: String,
    pub joinable: bool,
    pub f1: Option<String>,
    pub f2: Option<String>,
    pub normal_form: Option<String>,
    /// The two distinct normal forms of a non-joinable branching.
    pub normal_forms: Option<(String, String)>,
    pub error: Option<String>,
    /// Name of the tile filling the branching, existing or new.
    pub tile: Option<String>,
    pub emitted: bool,
}

/// Everything the coherence analysis found.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CoherenceReport {
    pub presentation: String,
    pub mode: String,
    pub termination: TerminationStatus,
    pub enumeration: String,
    pub critical_count: usize,
    pub joins: Vec<JoinRecord>,
    pub new_tiles: Vec<String>,
    pub verdict: Verdict,
    pub notes: Vec<String>,
}

/// Options for [`squier_completion_with`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CompletionOptions {
    pub max_steps: usize,
    pub enumeration: EnumerationOptions,
}

impl Default for CompletionOptions {
    fn default() -> Self {
        CompletionOptions {
            max_steps: default_max_steps(),
            enumeration: EnumerationOptions::default(),
        }
    }
}

/// The critical branchings, their joins, the tiles that were added and the report.
#[derive(Debug, Clone)]
pub struct Completion {
    pub critical: Vec<CriticalBranching>,
    pub joins: Vec<Join>,
    pub new_tiles: Vec<Tile>,
    pub report: CoherenceReport,
}

impl Completion {
    /// The presentation with the new tiles installed.
    pub fn completed(&self, p: &GrayPresentation) -> GrayPresentation {
        let mut q = p.clone();
        q.tiles.extend(self.new_tiles.iter().cloned());
        q
    }
}

/// [`squier_completion_with`] with default options.
pub fn squier_completion(p: &GrayPresentation) -> Result<Completion, CoherenceError> {
    squier_completion_with(p, &CompletionOptions::default())
}

fn fresh_name(p: &GrayPresentation, taken: &[String]) -> String {
    let k = taken.len() + 1;
    let base = format!("R{k}");
    let used = |n: &str| p.tiles.iter().any(|t| t.name == n) || taken.iter().any(|t| t == n);
    if !used(&base) {
        return base;
    }
    (1..)
        .map(|i| format!("R{k}_{i}"))
        .find(|n| !used(n))
        .expect("unbounded supply of names")
}

/// Joins every critical branching and adds a tile for each uncovered one.
pub fn squier_completion_with(p: &GrayPresentation, opts: &CompletionOptions) -> Result<Completion, CoherenceError> {
    let sig = &p.sig;
    let termination = match certify_termination(p, None) {
        Ok(c) => TerminationStatus {
            certified: true,
            certificate: Some(c),
            refusal: None,
        },
        Err(r) => TerminationStatus {
            certified: false,
            certificate: None,
            refusal: Some(r.reason),
        },
    };
    let critical = enumerate_critical_with(p, &opts.enumeration)?;
    let joins = par::map(opts.enumeration.exec, &critical, |c| {
        join_branching(&c.branching.s1, &c.branching.s2, p, opts.max_steps)
    });
    let mut new_tiles: Vec<Tile> = Vec::new();
    let mut records = Vec::new();
    for (c, j) in critical.iter().zip(&joins) {
        let b = &c.branching;
        let existing = p.tiles.iter().find(|t| tile_covers(sig, t, &b.s1, &b.s2));
        let mut rec = JoinRecord {
            key: c.key.clone(),
            source: two_cell_text(sig, &b.source),
            s1: step_to_text(sig, &b.s1),
            s2: step_to_text(sig, &b.s2),
            joinable: j.is_joined(),
            f1: None,
            f2: None,
            normal_form: None,
            normal_forms: None,
            error: None,
            tile: existing.map(|t| t.name.clone()),
            emitted: false,
        };
        match j {
            Join::Joined { f1, f2, normal_form } => {
                rec.f1 = Some(three_cell_text(sig, f1));
                rec.f2 = Some(three_cell_text(sig, f2));
                rec.normal_form = Some(two_cell_text(sig, normal_form));
                if existing.is_none() {
                    let taken: Vec<String> = new_tiles.iter().map(|t| t.name.clone()).collect();
                    let name = fresh_name(p, &taken);
                    new_tiles.push(Tile {
                        name: name.clone(),
                        lhs: prepend(sig, &b.s1, f1),
                        rhs: prepend(sig, &b.s2, f2),
                    });
                    rec.tile = Some(name);
                    rec.emitted = true;
                }
            }
            Join::NotJoinable { f1, f2, nf1, nf2 } => {
                rec.f1 = Some(three_cell_text(sig, f1));
                rec.f2 = Some(three_cell_text(sig, f2));
                rec.normal_forms = Some((two_cell_text(sig, nf1), two_cell_text(sig, nf2)));
            }
            Join::Budget(e) => rec.error = Some(e.clone()),
        }
        records.push(rec);
    }
    let all_joined = joins.iter().all(Join::is_joined);
    let verdict = if termination.certified && all_joined && new_tiles.is_empty() {
        Verdict::CoherentBySquier
    } else if termination.certified && all_joined {
        Verdict::CompletedWithNewTiles
    } else {
        Verdict::Inconclusive
    };
    let mut notes = Vec::new();
    let enumeration = match p.mode {
        InterchangeMode::Standard => {
            notes.push(
                "natural branchings with the generator step below the interchange use mechanically mirrored shuffle indices"
                    .to_string(),
            );
            "complete".to_string()
        }
        InterchangeMode::Q => {
            notes.push("oriented interchangers: the natural class is not used and enumeration is bounded".to_string());
            format!(
                "bounded: sources of length at most {} and width at most {}",
                opts.enumeration.q_max_len, opts.enumeration.q_max_width
            )
        }
    };
    if !termination.certified {
        notes.push("termination is not certified; the tiles are conditional on termination".to_string());
    }
    if !all_joined {
        notes.push("some critical branchings are not joinable by normal forms".to_string());
    }
    let report = CoherenceReport {
        presentation: p.name.clone(),
        mode: match p.mode {
            InterchangeMode::Standard => "standard".into(),
            InterchangeMode::Q => "q".into(),
        },
        termination,
        enumeration,
        critical_count: critical.len(),
        joins: records,
        new_tiles: new_tiles.iter().map(|t| t.name.clone()).collect(),
        verdict,
        notes,
    };
    Ok(Completion {
        critical,
        joins,
        new_tiles,
        report,
    })
}

/// Normalizes each 2-cell independently.
pub fn normalize_all(cells: &[TwoCell], p: &GrayPresentation, max_steps: usize, exec: Exec) -> Vec<Result<(TwoCell, ThreeCell), CoherenceError>> {
    par::map(exec, cells, |phi| normalize2(phi, p, max_steps))
}

#[cfg(test)]
mod tests;
