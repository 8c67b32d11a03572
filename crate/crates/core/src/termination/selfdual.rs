//! The counting measure for the oriented interchangers of a self-duality.
//!
//! For a 2-cell over a unit `η : 0 => 2` and a counit `ε : 2 => 0` with whiskers
//! `w₁ … w_k`, let `nᵢ` be the width of the right context of `wᵢ`. The measure
//! combines the number of `η`-before-`ε` pairs, the right widths of the `η`
//! whiskers read bottom-up and the right widths of the `ε` whiskers read
//! top-down, compared lexicographically.

use crate::cells::{GenId, Signature, TwoCell};
use serde::Serialize;
use std::cmp::Ordering;

/// The measure `(N₁, N₂^η, N₂^ε)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct SelfDualMeasure {
    pub n1: u64,
    pub n2_eta: Vec<u64>,
    pub n2_eps: Vec<u64>,
}

impl SelfDualMeasure {
    /// Lexicographic comparison; `None` when the sequences have different lengths.
    pub fn compare(&self, other: &SelfDualMeasure) -> Option<Ordering> {
        if self.n2_eta.len() != other.n2_eta.len() || self.n2_eps.len() != other.n2_eps.len() {
            return None;
        }
        Some(
            self.n1
                .cmp(&other.n1)
                .then_with(|| self.n2_eta.cmp(&other.n2_eta))
                .then_with(|| self.n2_eps.cmp(&other.n2_eps)),
        )
    }
}

/// The unit and counit of a self-duality signature.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SelfDualShape {
    pub eta: GenId,
    pub eps: GenId,
}

/// Recognizes a signature with one 0-cell, one 1-generator, a unit `∅ => 2` and a counit `2 => ∅`.
pub fn selfdual_shape(sig: &Signature) -> Option<SelfDualShape> {
    if sig.zero.len() != 1 || sig.one.len() != 1 || sig.two.len() != 2 {
        return None;
    }
    let find = |s: usize, t: usize| {
        sig.two
            .iter()
            .position(|g| g.source.len() == s && g.target.len() == t)
    };
    Some(SelfDualShape {
        eta: find(0, 2)?,
        eps: find(2, 0)?,
    })
}

/// Computes the measure of a 2-cell; `None` on a signature of the wrong shape.
pub fn selfdual_measure(sig: &Signature, phi: &TwoCell) -> Option<SelfDualMeasure> {
    let shape = selfdual_shape(sig)?;
    let mut n1 = 0u64;
    let mut etas_seen = 0u64;
    let mut n2_eta = Vec::new();
    let mut n2_eps = Vec::new();
    for w in &phi.whiskers {
        let n = w.right.len() as u64;
        if w.gen == shape.eta {
            etas_seen += 1;
            n2_eta.push(n);
        } else {
            n1 += etas_seen;
            n2_eps.push(n);
        }
    }
    n2_eta.reverse();
    Some(SelfDualMeasure {
        n1,
        n2_eta,
        n2_eps,
    })
}
