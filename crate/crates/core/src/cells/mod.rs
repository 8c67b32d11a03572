//! Cells of free precategories over a signature, kept in whisker normal form.
//!
//! A 1-cell is a word of 1-generators, a 2-cell is a list of whiskers
//! `l ∘₀ α ∘₀ r` composed along `∘₁`, and a 3-cell is a list of rewriting steps
//! `λ ∘₁ (l ∘₀ A ∘₀ r) ∘₁ ρ` composed along `∘₂`. Every cell of the free
//! precategory has exactly one such representative, so structural equality
//! decides equality of cells.

mod expr;

pub use expr::{Expr, Generator, Measure, Strategy};

use serde::Serialize;
use thiserror::Error;

/// Index of a generator inside its dimension's table in a [`Signature`].
pub type GenId = usize;

/// Orientation of a boundary.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Sign {
    Minus,
    Plus,
}

/// Errors raised by the cell algebra.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CellError {
    #[error("boundary of dimension {k} requested on a {dim}-cell")]
    Dimension { k: usize, dim: usize },
    #[error("cells of dimensions {a} and {b} are not {i}-composable: {detail}")]
    NotComposable {
        a: usize,
        b: usize,
        i: usize,
        detail: String,
    },
    #[error("unknown {dim}-generator with index {id}")]
    UnknownGenerator { dim: usize, id: GenId },
    #[error("ill-typed expression, rule `{rule}`: {detail}")]
    Typing { rule: &'static str, detail: String },
    #[error("malformed cell: {0}")]
    Malformed(String),
    #[error("generator `{name}`: {detail}")]
    BadGenerator { name: String, detail: String },
}

pub type Result<T> = std::result::Result<T, CellError>;

/// A 1-generator `a : x -> y`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct OneGen {
    pub name: String,
    pub source: GenId,
    pub target: GenId,
}

/// A 2-generator `α : f => f′`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TwoGen {
    pub name: String,
    pub source: OneCell,
    pub target: OneCell,
}

/// An operational 3-generator `A : φ ⇛ φ′`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ThreeGenDef {
    pub name: String,
    pub source: TwoCell,
    pub target: TwoCell,
}

/// Generators in dimensions 0 to 3 with their typed boundaries.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Signature {
    pub zero: Vec<String>,
    pub one: Vec<OneGen>,
    pub two: Vec<TwoGen>,
    pub three: Vec<ThreeGenDef>,
}

/// A 1-cell: a composable word of 1-generators starting at a 0-generator.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct OneCell {
    pub start: GenId,
    pub word: Vec<GenId>,
}

/// A 2-dimensional whisker `left ∘₀ gen ∘₀ right`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Whisker2 {
    pub left: OneCell,
    pub gen: GenId,
    pub right: OneCell,
}

/// A 2-cell: a `∘₁`-composite of whiskers, typed by its 1-source.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct TwoCell {
    pub source1: OneCell,
    pub whiskers: Vec<Whisker2>,
}

/// The generator at the core of a rewriting step.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum ThreeGenInstance {
    /// An operational 3-generator of the signature.
    Operational(GenId),
    /// The interchanger `X_{α,g,β}`, or its inverse when `inverse` is set.
    Interchanger {
        alpha: GenId,
        g: OneCell,
        beta: GenId,
        inverse: bool,
    },
}

/// A rewriting step `λ ∘₁ (l ∘₀ A ∘₀ r) ∘₁ ρ`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Step {
    pub lambda: TwoCell,
    pub l: OneCell,
    pub inner: ThreeGenInstance,
    pub r: OneCell,
    pub rho: TwoCell,
}

/// A 3-cell: a `∘₂`-composite of rewriting steps, typed by its 2-source.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct ThreeCell {
    pub source2: TwoCell,
    pub steps: Vec<Step>,
}

/// A cell of any dimension up to 3.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Cell {
    Zero(GenId),
    One(OneCell),
    Two(TwoCell),
    Three(ThreeCell),
}

impl OneCell {
    /// The identity 1-cell on a 0-generator.
    pub fn id(x: GenId) -> Self {
        OneCell {
            start: x,
            word: Vec::new(),
        }
    }

    pub fn new(start: GenId, word: Vec<GenId>) -> Self {
        OneCell { start, word }
    }

    pub fn len(&self) -> usize {
        self.word.len()
    }

    pub fn is_empty(&self) -> bool {
        self.word.is_empty()
    }

    /// Concatenation without a composability check; the caller guarantees it.
    pub fn then(&self, other: &OneCell) -> OneCell {
        let mut word = Vec::with_capacity(self.word.len() + other.word.len());
        word.extend_from_slice(&self.word);
        word.extend_from_slice(&other.word);
        OneCell {
            start: self.start,
            word,
        }
    }

    /// Removes `prefix` and returns the remainder, which starts where `prefix` ends.
    pub fn strip_prefix(&self, prefix: &OneCell, sig: &Signature) -> Option<OneCell> {
        if prefix.start != self.start || !self.word.starts_with(&prefix.word) {
            return None;
        }
        Some(OneCell {
            start: sig.one_end(prefix),
            word: self.word[prefix.word.len()..].to_vec(),
        })
    }

    /// Removes `suffix` and returns the remainder, which starts where `self` starts.
    pub fn strip_suffix(&self, suffix: &OneCell, sig: &Signature) -> Option<OneCell> {
        if !self.word.ends_with(&suffix.word) {
            return None;
        }
        let rest = OneCell {
            start: self.start,
            word: self.word[..self.word.len() - suffix.word.len()].to_vec(),
        };
        (sig.one_end(&rest) == suffix.start).then_some(rest)
    }

    /// The sub-word `word[a..b]` as a 1-cell.
    pub fn slice(&self, a: usize, b: usize, sig: &Signature) -> OneCell {
        let start = if a == 0 {
            self.start
        } else {
            sig.one[self.word[a - 1]].target
        };
        OneCell {
            start,
            word: self.word[a..b].to_vec(),
        }
    }
}

impl Whisker2 {
    /// Whiskers this whisker by `l` on the left and `r` on the right.
    pub fn whiskered(&self, l: &OneCell, r: &OneCell) -> Whisker2 {
        Whisker2 {
            left: l.then(&self.left),
            gen: self.gen,
            right: self.right.then(r),
        }
    }
}

impl TwoCell {
    /// The identity 2-cell on a 1-cell.
    pub fn identity(u: OneCell) -> Self {
        TwoCell {
            source1: u,
            whiskers: Vec::new(),
        }
    }

    /// Number of whiskers.
    pub fn len(&self) -> usize {
        self.whiskers.len()
    }

    pub fn is_empty(&self) -> bool {
        self.whiskers.is_empty()
    }

    /// `l ∘₀ self ∘₀ r` without a composability check.
    pub fn whiskered(&self, l: &OneCell, r: &OneCell) -> TwoCell {
        TwoCell {
            source1: l.then(&self.source1).then(r),
            whiskers: self.whiskers.iter().map(|w| w.whiskered(l, r)).collect(),
        }
    }

    /// `self ∘₁ other` without a composability check.
    pub fn then(&self, other: &TwoCell) -> TwoCell {
        let mut whiskers = self.whiskers.clone();
        whiskers.extend_from_slice(&other.whiskers);
        TwoCell {
            source1: self.source1.clone(),
            whiskers,
        }
    }
}

impl ThreeCell {
    /// The identity 3-cell on a 2-cell.
    pub fn identity(phi: TwoCell) -> Self {
        ThreeCell {
            source2: phi,
            steps: Vec::new(),
        }
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }
}

impl Cell {
    pub fn dim(&self) -> usize {
        match self {
            Cell::Zero(_) => 0,
            Cell::One(_) => 1,
            Cell::Two(_) => 2,
            Cell::Three(_) => 3,
        }
    }

    /// Whisker count for 2-cells, step count for 3-cells, word length for 1-cells.
    pub fn length(&self) -> usize {
        match self {
            Cell::Zero(_) => 0,
            Cell::One(u) => u.len(),
            Cell::Two(phi) => phi.len(),
            Cell::Three(f) => f.len(),
        }
    }

    /// True when the cell is an identity on a lower cell.
    pub fn is_identity(&self) -> bool {
        match self {
            Cell::Zero(_) => false,
            Cell::One(u) => u.is_empty(),
            Cell::Two(phi) => phi.is_empty(),
            Cell::Three(f) => f.is_empty(),
        }
    }

    pub fn as_one(&self) -> Option<&OneCell> {
        match self {
            Cell::One(u) => Some(u),
            _ => None,
        }
    }

    pub fn as_two(&self) -> Option<&TwoCell> {
        match self {
            Cell::Two(u) => Some(u),
            _ => None,
        }
    }

    pub fn as_three(&self) -> Option<&ThreeCell> {
        match self {
            Cell::Three(u) => Some(u),
            _ => None,
        }
    }
}

fn mismatch(a: &Cell, b: &Cell, i: usize, detail: impl Into<String>) -> CellError {
    CellError::NotComposable {
        a: a.dim(),
        b: b.dim(),
        i,
        detail: detail.into(),
    }
}

impl Signature {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_zero(&mut self, name: &str) -> GenId {
        self.zero.push(name.to_string());
        self.zero.len() - 1
    }

    pub fn add_one(&mut self, name: &str, source: GenId, target: GenId) -> Result<GenId> {
        if source >= self.zero.len() || target >= self.zero.len() {
            return Err(CellError::BadGenerator {
                name: name.to_string(),
                detail: "endpoint is not a declared 0-generator".into(),
            });
        }
        self.one.push(OneGen {
            name: name.to_string(),
            source,
            target,
        });
        Ok(self.one.len() - 1)
    }

    pub fn add_two(&mut self, name: &str, source: OneCell, target: OneCell) -> Result<GenId> {
        let bad = |detail: String| CellError::BadGenerator {
            name: name.to_string(),
            detail,
        };
        self.check_one(&source).map_err(|e| bad(e.to_string()))?;
        self.check_one(&target).map_err(|e| bad(e.to_string()))?;
        if source.start != target.start || self.one_end(&source) != self.one_end(&target) {
            return Err(bad("source and target 1-cells are not parallel".into()));
        }
        self.two.push(TwoGen {
            name: name.to_string(),
            source,
            target,
        });
        Ok(self.two.len() - 1)
    }

    pub fn add_three(&mut self, name: &str, source: TwoCell, target: TwoCell) -> Result<GenId> {
        let bad = |detail: String| CellError::BadGenerator {
            name: name.to_string(),
            detail,
        };
        self.check_two(&source).map_err(|e| bad(e.to_string()))?;
        self.check_two(&target).map_err(|e| bad(e.to_string()))?;
        if source.source1 != target.source1 || self.target1(&source) != self.target1(&target) {
            return Err(bad("source and target 2-cells are not parallel".into()));
        }
        self.three.push(ThreeGenDef {
            name: name.to_string(),
            source,
            target,
        });
        Ok(self.three.len() - 1)
    }

    pub fn find_zero(&self, name: &str) -> Option<GenId> {
        self.zero.iter().position(|n| n == name)
    }

    pub fn find_one(&self, name: &str) -> Option<GenId> {
        self.one.iter().position(|g| g.name == name)
    }

    pub fn find_two(&self, name: &str) -> Option<GenId> {
        self.two.iter().position(|g| g.name == name)
    }

    pub fn find_three(&self, name: &str) -> Option<GenId> {
        self.three.iter().position(|g| g.name == name)
    }

    /// The 0-cell at which a 1-cell ends.
    pub fn one_end(&self, u: &OneCell) -> GenId {
        u.word.last().map_or(u.start, |&a| self.one[a].target)
    }

    /// Checks that a 1-cell is a composable word over declared generators.
    pub fn check_one(&self, u: &OneCell) -> Result<()> {
        if u.start >= self.zero.len() {
            return Err(CellError::UnknownGenerator {
                dim: 0,
                id: u.start,
            });
        }
        let mut at = u.start;
        for &a in &u.word {
            let g = self.one.get(a).ok_or(CellError::UnknownGenerator { dim: 1, id: a })?;
            if g.source != at {
                return Err(CellError::Malformed(format!(
                    "1-generator `{}` does not start at `{}`",
                    g.name, self.zero[at]
                )));
            }
            at = g.target;
        }
        Ok(())
    }

    /// 1-source of a whisker: `left ∘₀ ∂⁻α ∘₀ right`.
    pub fn whisker_source(&self, w: &Whisker2) -> OneCell {
        w.left.then(&self.two[w.gen].source).then(&w.right)
    }

    /// 1-target of a whisker: `left ∘₀ ∂⁺α ∘₀ right`.
    pub fn whisker_target(&self, w: &Whisker2) -> OneCell {
        w.left.then(&self.two[w.gen].target).then(&w.right)
    }

    /// Checks the composability invariants of a 2-cell.
    pub fn check_two(&self, phi: &TwoCell) -> Result<()> {
        self.check_one(&phi.source1)?;
        let mut cur = phi.source1.clone();
        for (k, w) in phi.whiskers.iter().enumerate() {
            let g = self
                .two
                .get(w.gen)
                .ok_or(CellError::UnknownGenerator { dim: 2, id: w.gen })?;
            self.check_one(&w.left)?;
            self.check_one(&w.right)?;
            if self.one_end(&w.left) != g.source.start || w.right.start != self.one_end(&g.source) {
                return Err(CellError::Malformed(format!(
                    "whisker {k} around `{}` is not 0-composable",
                    g.name
                )));
            }
            if w.left.start != phi.source1.start {
                return Err(CellError::Malformed(format!(
                    "whisker {k} starts at the wrong 0-cell"
                )));
            }
            let src = self.whisker_source(w);
            if src != cur {
                return Err(CellError::Malformed(format!(
                    "whisker {k} around `{}` does not compose with the preceding 1-cell",
                    g.name
                )));
            }
            cur = self.whisker_target(w);
        }
        Ok(())
    }

    /// The 1-target of a 2-cell.
    pub fn target1(&self, phi: &TwoCell) -> OneCell {
        phi.whiskers
            .last()
            .map_or_else(|| phi.source1.clone(), |w| self.whisker_target(w))
    }

    /// The 1-cell between whisker `p - 1` and whisker `p`.
    pub fn one_cell_at(&self, phi: &TwoCell, p: usize) -> OneCell {
        if p == 0 {
            phi.source1.clone()
        } else {
            self.whisker_target(&phi.whiskers[p - 1])
        }
    }

    /// The sub-composite of whiskers `a..b`.
    pub fn slice2(&self, phi: &TwoCell, a: usize, b: usize) -> TwoCell {
        TwoCell {
            source1: self.one_cell_at(phi, a),
            whiskers: phi.whiskers[a..b].to_vec(),
        }
    }

    /// The 2-source and 2-target of a 3-generator instance.
    ///
    /// For `α : f => f′`, `β : h => h′` the interchanger `X_{α,g,β}` goes from
    /// `(α ∘₀ g ∘₀ h) ∘₁ (f′ ∘₀ g ∘₀ β)` to `(f ∘₀ g ∘₀ β) ∘₁ (α ∘₀ g ∘₀ h′)`.
    pub fn instance_boundaries(&self, a: &ThreeGenInstance) -> Result<(TwoCell, TwoCell)> {
        match a {
            ThreeGenInstance::Operational(id) => {
                let d = self
                    .three
                    .get(*id)
                    .ok_or(CellError::UnknownGenerator { dim: 3, id: *id })?;
                Ok((d.source.clone(), d.target.clone()))
            }
            ThreeGenInstance::Interchanger {
                alpha,
                g,
                beta,
                inverse,
            } => {
                let (s, t) = self.interchanger_boundaries(*alpha, g, *beta)?;
                Ok(if *inverse { (t, s) } else { (s, t) })
            }
        }
    }

    /// Source and target of the forward interchanger `X_{α,g,β}`.
    pub fn interchanger_boundaries(
        &self,
        alpha: GenId,
        g: &OneCell,
        beta: GenId,
    ) -> Result<(TwoCell, TwoCell)> {
        let a = self
            .two
            .get(alpha)
            .ok_or(CellError::UnknownGenerator { dim: 2, id: alpha })?;
        let b = self
            .two
            .get(beta)
            .ok_or(CellError::UnknownGenerator { dim: 2, id: beta })?;
        self.check_one(g)?;
        if self.one_end(&a.source) != g.start || self.one_end(g) != b.source.start {
            return Err(CellError::Malformed(format!(
                "interchanger of `{}` and `{}` is not 0-composable",
                a.name, b.name
            )));
        }
        let (f, f2, h, h2) = (&a.source, &a.target, &b.source, &b.target);
        let x = OneCell::id(f.start);
        let y = OneCell::id(self.one_end(h));
        let source = TwoCell {
            source1: f.then(g).then(h),
            whiskers: vec![
                Whisker2 {
                    left: x.clone(),
                    gen: alpha,
                    right: g.then(h),
                },
                Whisker2 {
                    left: f2.then(g),
                    gen: beta,
                    right: y.clone(),
                },
            ],
        };
        let target = TwoCell {
            source1: f.then(g).then(h),
            whiskers: vec![
                Whisker2 {
                    left: f.then(g),
                    gen: beta,
                    right: y,
                },
                Whisker2 {
                    left: x,
                    gen: alpha,
                    right: g.then(h2),
                },
            ],
        };
        Ok((source, target))
    }

    /// Source of a rewriting step; checks composability of its pieces.
    pub fn step_source(&self, s: &Step) -> Result<TwoCell> {
        Ok(self.step_boundaries(s)?.0)
    }

    /// Target of a rewriting step.
    pub fn step_target(&self, s: &Step) -> Result<TwoCell> {
        Ok(self.step_boundaries(s)?.1)
    }

    /// Source and target of a rewriting step.
    pub fn step_boundaries(&self, s: &Step) -> Result<(TwoCell, TwoCell)> {
        let (a_src, a_tgt) = self.instance_boundaries(&s.inner)?;
        self.check_one(&s.l)?;
        self.check_one(&s.r)?;
        if self.one_end(&s.l) != a_src.source1.start || self.one_end(&a_src.source1) != s.r.start {
            return Err(CellError::Malformed(
                "step context is not 0-composable with its generator".into(),
            ));
        }
        let mid_src = a_src.whiskered(&s.l, &s.r);
        let mid_tgt = a_tgt.whiskered(&s.l, &s.r);
        if self.target1(&s.lambda) != mid_src.source1 {
            return Err(CellError::Malformed(
                "lambda does not end at the step's 1-source".into(),
            ));
        }
        let mid_tgt1 = self.target1(&mid_tgt);
        if s.rho.source1 != mid_tgt1 {
            return Err(CellError::Malformed(
                "rho does not start at the step's 1-target".into(),
            ));
        }
        let src = s.lambda.then(&mid_src).then(&s.rho);
        let tgt = s.lambda.then(&mid_tgt).then(&s.rho);
        Ok((src, tgt))
    }

    /// The 2-target of a 3-cell.
    pub fn target2(&self, f: &ThreeCell) -> Result<TwoCell> {
        match f.steps.last() {
            None => Ok(f.source2.clone()),
            Some(s) => self.step_target(s),
        }
    }

    /// Checks that consecutive steps of a 3-cell compose.
    pub fn check_three(&self, f: &ThreeCell) -> Result<()> {
        self.check_two(&f.source2)?;
        let mut cur = f.source2.clone();
        for (k, s) in f.steps.iter().enumerate() {
            let (src, tgt) = self.step_boundaries(s)?;
            if src != cur {
                return Err(CellError::Malformed(format!(
                    "step {k} does not start at the preceding 2-cell"
                )));
            }
            cur = tgt;
        }
        Ok(())
    }

    /// `l ∘₀ step ∘₀ r`.
    pub fn whisker_step(&self, l: &OneCell, s: &Step, r: &OneCell) -> Step {
        Step {
            lambda: s.lambda.whiskered(l, r),
            l: l.then(&s.l),
            inner: s.inner.clone(),
            r: s.r.then(r),
            rho: s.rho.whiskered(l, r),
        }
    }

    /// `λ ∘₁ F ∘₁ ρ` on 3-cells; checks composability.
    pub fn whisker1(&self, lambda: &TwoCell, f: &ThreeCell, rho: &TwoCell) -> Result<ThreeCell> {
        if self.target1(lambda) != f.source2.source1 {
            return Err(CellError::NotComposable {
                a: 2,
                b: 3,
                i: 1,
                detail: "1-target of the left 2-cell differs from the 1-source of the 3-cell"
                    .into(),
            });
        }
        if self.target1(&f.source2) != rho.source1 {
            return Err(CellError::NotComposable {
                a: 3,
                b: 2,
                i: 1,
                detail: "1-target of the 3-cell differs from the 1-source of the right 2-cell"
                    .into(),
            });
        }
        Ok(ThreeCell {
            source2: lambda.then(&f.source2).then(rho),
            steps: f
                .steps
                .iter()
                .map(|s| Step {
                    lambda: lambda.then(&s.lambda),
                    l: s.l.clone(),
                    inner: s.inner.clone(),
                    r: s.r.clone(),
                    rho: s.rho.then(rho),
                })
                .collect(),
        })
    }

    /// `l ∘₀ c ∘₀ r` for a cell of dimension 1, 2 or 3; checks composability.
    pub fn whisker(&self, l: &OneCell, c: &Cell, r: &OneCell) -> Result<Cell> {
        let left = self.compose(&Cell::One(l.clone()), c, 0)?;
        self.compose(&left, &Cell::One(r.clone()), 0)
    }

    /// The iterated boundary `∂ₖ^ε(c)`.
    pub fn boundary(&self, c: &Cell, k: usize, eps: Sign) -> Result<Cell> {
        let dim = c.dim();
        if k >= dim {
            return Err(CellError::Dimension { k, dim });
        }
        let down: Cell = match c {
            Cell::Zero(_) => unreachable!(),
            Cell::One(u) => Cell::Zero(match eps {
                Sign::Minus => u.start,
                Sign::Plus => self.one_end(u),
            }),
            Cell::Two(phi) => Cell::One(match eps {
                Sign::Minus => phi.source1.clone(),
                Sign::Plus => self.target1(phi),
            }),
            Cell::Three(f) => Cell::Two(match eps {
                Sign::Minus => f.source2.clone(),
                Sign::Plus => self.target2(f)?,
            }),
        };
        if k + 1 == dim {
            Ok(down)
        } else {
            self.boundary(&down, k, eps)
        }
    }

    /// The identity on a cell of dimension at most 2.
    pub fn identity(&self, c: &Cell) -> Result<Cell> {
        Ok(match c {
            Cell::Zero(x) => Cell::One(OneCell::id(*x)),
            Cell::One(u) => Cell::Two(TwoCell::identity(u.clone())),
            Cell::Two(phi) => Cell::Three(ThreeCell::identity(phi.clone())),
            Cell::Three(_) => return Err(CellError::Dimension { k: 4, dim: 3 }),
        })
    }

    /// The composite `a ∘ᵢ b`, defined when `i = min(dim a, dim b) - 1`.
    pub fn compose(&self, a: &Cell, b: &Cell, i: usize) -> Result<Cell> {
        let (da, db) = (a.dim(), b.dim());
        if da == 0 || db == 0 || i + 1 != da.min(db) {
            return Err(mismatch(a, b, i, "composition index must be min(dim) - 1"));
        }
        let left_end = self.boundary(a, i, Sign::Plus)?;
        let right_start = self.boundary(b, i, Sign::Minus)?;
        if left_end != right_start {
            return Err(mismatch(a, b, i, "boundaries differ"));
        }
        Ok(match (a, b) {
            (Cell::One(u), Cell::One(v)) => Cell::One(u.then(v)),
            (Cell::One(u), Cell::Two(phi)) => {
                Cell::Two(phi.whiskered(u, &OneCell::id(self.one_end(&phi.source1))))
            }
            (Cell::Two(phi), Cell::One(v)) => {
                Cell::Two(phi.whiskered(&OneCell::id(phi.source1.start), v))
            }
            (Cell::One(u), Cell::Three(f)) => {
                let r = OneCell::id(self.one_end(&f.source2.source1));
                Cell::Three(self.whisker0_three(u, f, &r))
            }
            (Cell::Three(f), Cell::One(v)) => {
                let l = OneCell::id(f.source2.source1.start);
                Cell::Three(self.whisker0_three(&l, f, v))
            }
            (Cell::Two(phi), Cell::Two(psi)) => Cell::Two(phi.then(psi)),
            (Cell::Two(phi), Cell::Three(f)) => {
                let rho = TwoCell::identity(self.target1(&f.source2));
                Cell::Three(self.whisker1(phi, f, &rho)?)
            }
            (Cell::Three(f), Cell::Two(psi)) => {
                let lambda = TwoCell::identity(f.source2.source1.clone());
                Cell::Three(self.whisker1(&lambda, f, psi)?)
            }
            (Cell::Three(f), Cell::Three(g)) => {
                let mut steps = f.steps.clone();
                steps.extend_from_slice(&g.steps);
                Cell::Three(ThreeCell {
                    source2: f.source2.clone(),
                    steps,
                })
            }
            _ => return Err(mismatch(a, b, i, "unsupported dimensions")),
        })
    }

    /// `l ∘₀ F ∘₀ r` on 3-cells without a composability check.
    pub fn whisker0_three(&self, l: &OneCell, f: &ThreeCell, r: &OneCell) -> ThreeCell {
        ThreeCell {
            source2: f.source2.whiskered(l, r),
            steps: f.steps.iter().map(|s| self.whisker_step(l, s, r)).collect(),
        }
    }

    /// `F ∘₂ G` on 3-cells; checks that the 2-target of `F` is the 2-source of `G`.
    pub fn compose2(&self, f: &ThreeCell, g: &ThreeCell) -> Result<ThreeCell> {
        match self.compose(&Cell::Three(f.clone()), &Cell::Three(g.clone()), 2)? {
            Cell::Three(h) => Ok(h),
            _ => unreachable!(),
        }
    }

    /// A single-step 3-cell.
    pub fn step_cell(&self, s: &Step) -> Result<ThreeCell> {
        Ok(ThreeCell {
            source2: self.step_source(s)?,
            steps: vec![s.clone()],
        })
    }

    /// The one-whisker 2-cell of a 2-generator.
    pub fn gen2(&self, alpha: GenId) -> TwoCell {
        let g = &self.two[alpha];
        TwoCell {
            source1: g.source.clone(),
            whiskers: vec![Whisker2 {
                left: OneCell::id(g.source.start),
                gen: alpha,
                right: OneCell::id(self.one_end(&g.source)),
            }],
        }
    }

    /// The one-step 3-cell of a 3-generator instance.
    pub fn gen3(&self, a: &ThreeGenInstance) -> Result<ThreeCell> {
        let (src, tgt) = self.instance_boundaries(a)?;
        let x = OneCell::id(src.source1.start);
        let y = OneCell::id(self.one_end(&src.source1));
        Ok(ThreeCell {
            steps: vec![Step {
                lambda: TwoCell::identity(src.source1.clone()),
                l: x,
                inner: a.clone(),
                r: y,
                rho: TwoCell::identity(self.target1(&tgt)),
            }],
            source2: src,
        })
    }

    /// Name of a 3-generator instance for display.
    pub fn instance_name(&self, a: &ThreeGenInstance) -> String {
        match a {
            ThreeGenInstance::Operational(id) => self.three[*id].name.clone(),
            ThreeGenInstance::Interchanger {
                alpha,
                g,
                beta,
                inverse,
            } => format!(
                "{}({}, {}, {})",
                if *inverse { "Xinv" } else { "X" },
                self.two[*alpha].name,
                self.word_name(g),
                self.two[*beta].name
            ),
        }
    }

    /// Space-separated 1-generator names, `.` for an empty word.
    pub fn word_name(&self, u: &OneCell) -> String {
        if u.is_empty() {
            ".".to_string()
        } else {
            u.word
                .iter()
                .map(|&a| self.one[a].name.as_str())
                .collect::<Vec<_>>()
                .join(" ")
        }
    }
}
