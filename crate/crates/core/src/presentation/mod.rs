//! Gray presentations: a signature with operational 3-generators, the
//! schematic family of interchangers, user tiles, and the shuffle calculus
//! used to build composite interchangers.

mod shuffle;

pub use shuffle::{
    big_x, inv, interp_edge, interp_vertex, lindex, path_exists, shuffle_graph, sigma_path,
    Letter, ShuffleEdge, ShuffleError, ShuffleGraph, ShuffleWord, MAX_SHUFFLE_SIZE,
};

pub use crate::cells::ThreeGenInstance;
use crate::cells::{GenId, OneCell, Signature, ThreeCell};
use crate::termination::LinearInterpretation;
use serde::Serialize;
use std::collections::BTreeSet;

/// How interchangers enter the rewriting system.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Default)]
pub enum InterchangeMode {
    /// Every interchanger `X_{α,g,β}` is oriented forward and naturality tiles are implicit.
    #[default]
    Standard,
    /// Each pair `(α, β)` has its own orientation and the natural class of branchings is dropped.
    Q,
}

/// A 4-generator identifying two parallel 3-cells.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Tile {
    pub name: String,
    pub lhs: ThreeCell,
    pub rhs: ThreeCell,
}

/// A Gray presentation with its analysis hints.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct GrayPresentation {
    pub name: String,
    pub sig: Signature,
    pub mode: InterchangeMode,
    /// Pairs `(α, β)` whose interchangers are oriented backwards in Q-mode.
    pub inverse_pairs: BTreeSet<(GenId, GenId)>,
    pub tiles: Vec<Tile>,
    /// Optional linear interpretation used by the interpretation strategy.
    pub interpretation: Option<LinearInterpretation>,
}

/// Diagnostics returned by [`GrayPresentation::validate`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub well_typed: bool,
    pub positive: bool,
    pub operational_sources_nonempty: bool,
    /// 2-generators with an empty 1-target.
    pub non_positive: Vec<String>,
    pub diagnostics: Vec<String>,
}

impl GrayPresentation {
    pub fn new(name: &str, sig: Signature) -> Self {
        GrayPresentation {
            name: name.to_string(),
            sig,
            ..Default::default()
        }
    }

    /// The orientation of interchangers between `α` (left) and `β` (right):
    /// `false` for forward, `true` for inverse.
    pub fn orientation(&self, alpha: GenId, beta: GenId) -> bool {
        match self.mode {
            InterchangeMode::Standard => false,
            InterchangeMode::Q => self.inverse_pairs.contains(&(alpha, beta)),
        }
    }

    /// The interchanger instance in the rewriting alphabet for `(α, g, β)`.
    pub fn interchanger(&self, alpha: GenId, g: OneCell, beta: GenId) -> ThreeGenInstance {
        ThreeGenInstance::Interchanger {
            alpha,
            g,
            beta,
            inverse: self.orientation(alpha, beta),
        }
    }

    /// Checks typing of every generator and tile and the positivity conditions.
    pub fn validate(&self) -> ValidationReport {
        let sig = &self.sig;
        let mut diagnostics = Vec::new();
        for g in &sig.one {
            if g.source >= sig.zero.len() || g.target >= sig.zero.len() {
                diagnostics.push(format!("1-generator `{}` has undeclared endpoints", g.name));
            }
        }
        for g in &sig.two {
            for u in [&g.source, &g.target] {
                if let Err(e) = sig.check_one(u) {
                    diagnostics.push(format!("2-generator `{}`: {e}", g.name));
                }
            }
            if g.source.start != g.target.start || sig.one_end(&g.source) != sig.one_end(&g.target) {
                diagnostics.push(format!("2-generator `{}` has non-parallel boundaries", g.name));
            }
        }
        for g in &sig.three {
            for phi in [&g.source, &g.target] {
                if let Err(e) = sig.check_two(phi) {
                    diagnostics.push(format!("3-generator `{}`: {e}", g.name));
                }
            }
            if g.source.source1 != g.target.source1 || sig.target1(&g.source) != sig.target1(&g.target) {
                diagnostics.push(format!("3-generator `{}` has non-parallel boundaries", g.name));
            }
        }
        for t in &self.tiles {
            let checked = sig.check_three(&t.lhs).and_then(|_| sig.check_three(&t.rhs));
            match checked {
                Err(e) => diagnostics.push(format!("tile `{}`: {e}", t.name)),
                Ok(()) => {
                    let par = t.lhs.source2 == t.rhs.source2
                        && sig.target2(&t.lhs).ok() == sig.target2(&t.rhs).ok();
                    if !par {
                        diagnostics.push(format!("tile `{}` has non-parallel sides", t.name));
                    }
                }
            }
        }
        let non_positive: Vec<String> = sig
            .two
            .iter()
            .filter(|g| g.target.is_empty())
            .map(|g| g.name.clone())
            .collect();
        ValidationReport {
            well_typed: diagnostics.is_empty(),
            positive: non_positive.is_empty(),
            operational_sources_nonempty: sig.three.iter().all(|g| !g.source.is_empty()),
            non_positive,
            diagnostics,
        }
    }
}
