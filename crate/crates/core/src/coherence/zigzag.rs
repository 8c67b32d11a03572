//! Zigzags: formal alternating composites of 3-cells and their inverses.
//!
//! The literal quotient rules (drop identities, merge neighbours of equal
//! sign, cancel `F⁺F⁻` and `F⁻F⁺`) are not confluent on their own: `(F⁺, F⁻, G⁻)`
//! reduces to `(G⁻)` or to the irreducible `(F⁺, (G ∘₂ F)⁻)`. [`Zigzag::simplify`]
//! therefore computes the reduced word of the free groupoid on rewriting
//! steps and regroups it into maximal runs of equal sign. This form is also
//! the unique normal form of the literal rules extended by cancelling a
//! common first step of `F⁻G⁺` or a common last step of `F⁺G⁻`.

use crate::cells::{CellError, OneCell, Sign, Signature, Step, ThreeCell, TwoCell};

/// A zigzag `(F₁^{ε₁}, …, F_k^{ε_k})` from `source2` to `target2`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Zigzag {
    pub source2: TwoCell,
    pub target2: TwoCell,
    pub entries: Vec<(ThreeCell, Sign)>,
}

fn ends(sig: &Signature, f: &ThreeCell, s: Sign) -> Result<(TwoCell, TwoCell), CellError> {
    let t = sig.target2(f)?;
    Ok(match s {
        Sign::Plus => (f.source2.clone(), t),
        Sign::Minus => (t, f.source2.clone()),
    })
}

fn flip(s: Sign) -> Sign {
    match s {
        Sign::Plus => Sign::Minus,
        Sign::Minus => Sign::Plus,
    }
}

impl Zigzag {
    /// The empty zigzag on `φ`.
    pub fn identity(phi: TwoCell) -> Zigzag {
        Zigzag {
            source2: phi.clone(),
            target2: phi,
            entries: Vec::new(),
        }
    }

    /// The one-entry zigzag `(F^ε)`.
    pub fn make(sig: &Signature, f: ThreeCell, sign: Sign) -> Result<Zigzag, CellError> {
        let (s, t) = ends(sig, &f, sign)?;
        Ok(Zigzag {
            source2: s,
            target2: t,
            entries: vec![(f, sign)],
        })
    }

    /// Builds a zigzag from entries, checking that consecutive entries meet.
    pub fn from_entries(sig: &Signature, source2: TwoCell, entries: Vec<(ThreeCell, Sign)>) -> Result<Zigzag, CellError> {
        let mut cur = source2.clone();
        for (k, (f, s)) in entries.iter().enumerate() {
            let (a, b) = ends(sig, f, *s)?;
            if a != cur {
                return Err(CellError::Malformed(format!("zigzag entry {k} does not start where the previous one ends")));
            }
            cur = b;
        }
        Ok(Zigzag {
            source2,
            target2: cur,
            entries,
        })
    }

    /// Reverses the order and flips every sign.
    pub fn invert(&self) -> Zigzag {
        Zigzag {
            source2: self.target2.clone(),
            target2: self.source2.clone(),
            entries: self.entries.iter().rev().map(|(f, s)| (f.clone(), flip(*s))).collect(),
        }
    }

    /// Concatenation `self ∘₂ other`.
    pub fn compose2(&self, other: &Zigzag) -> Result<Zigzag, CellError> {
        if self.target2 != other.source2 {
            return Err(CellError::NotComposable {
                a: 3,
                b: 3,
                i: 2,
                detail: "zigzag target differs from the next zigzag's source".into(),
            });
        }
        let mut entries = self.entries.clone();
        entries.extend(other.entries.iter().cloned());
        Ok(Zigzag {
            source2: self.source2.clone(),
            target2: other.target2.clone(),
            entries,
        })
    }

    /// `λ ∘₁ (l ∘₀ Z ∘₀ r) ∘₁ ρ`, entry by entry.
    pub fn whisker(
        &self,
        sig: &Signature,
        lambda: &TwoCell,
        l: &OneCell,
        r: &OneCell,
        rho: &TwoCell,
    ) -> Result<Zigzag, CellError> {
        let ctx = |f: &ThreeCell| sig.whisker1(lambda, &sig.whisker0_three(l, f, r), rho);
        let entries = self
            .entries
            .iter()
            .map(|(f, s)| Ok((ctx(f)?, *s)))
            .collect::<Result<Vec<_>, CellError>>()?;
        Ok(Zigzag {
            source2: ctx(&ThreeCell::identity(self.source2.clone()))?.source2,
            target2: ctx(&ThreeCell::identity(self.target2.clone()))?.source2,
            entries,
        })
    }

    /// The signed rewriting steps read along the zigzag.
    pub fn signed_steps(&self) -> Vec<(Step, Sign)> {
        let mut out = Vec::new();
        for (f, s) in &self.entries {
            match s {
                Sign::Plus => out.extend(f.steps.iter().map(|x| (x.clone(), Sign::Plus))),
                Sign::Minus => out.extend(f.steps.iter().rev().map(|x| (x.clone(), Sign::Minus))),
            }
        }
        out
    }

    /// The reduced form: free cancellation of inverse steps, then maximal runs of equal sign.
    pub fn simplify(&self, sig: &Signature) -> Zigzag {
        let mut stack: Vec<(Step, Sign)> = Vec::new();
        for (x, s) in self.signed_steps() {
            if stack.last().is_some_and(|(y, t)| *y == x && *t == flip(s)) {
                stack.pop();
            } else {
                stack.push((x, s));
            }
        }
        let mut entries: Vec<(ThreeCell, Sign)> = Vec::new();
        let mut i = 0;
        while i < stack.len() {
            let s = stack[i].1;
            let mut j = i;
            while j < stack.len() && stack[j].1 == s {
                j += 1;
            }
            let mut steps: Vec<Step> = stack[i..j].iter().map(|(x, _)| x.clone()).collect();
            if s == Sign::Minus {
                steps.reverse();
            }
            let source2 = sig.step_source(&steps[0]).expect("steps of a well-formed zigzag");
            entries.push((ThreeCell { source2, steps }, s));
            i = j;
        }
        Zigzag {
            source2: self.source2.clone(),
            target2: self.target2.clone(),
            entries,
        }
    }

    /// Whether no quotient rule applies.
    pub fn is_reduced(&self) -> bool {
        self.entries.iter().all(|(f, _)| !f.is_empty())
            && self.entries.windows(2).all(|w| {
                let ((f, s), (g, t)) = (&w[0], &w[1]);
                if s == t {
                    return false;
                }
                match s {
                    Sign::Plus => f.steps.last() != g.steps.last(),
                    Sign::Minus => f.steps.first() != g.steps.first(),
                }
            })
    }

    /// All zigzags reachable by one application of a quotient rule.
    pub fn one_step_reducts(&self, sig: &Signature) -> Vec<Zigzag> {
        let mut out = Vec::new();
        let e = &self.entries;
        let with = |k: usize, n: usize, repl: Vec<(ThreeCell, Sign)>| {
            let mut v = e[..k].to_vec();
            v.extend(repl);
            v.extend_from_slice(&e[k + n..]);
            Zigzag {
                source2: self.source2.clone(),
                target2: self.target2.clone(),
                entries: v,
            }
        };
        for k in 0..e.len() {
            if e[k].0.is_empty() {
                out.push(with(k, 1, Vec::new()));
            }
        }
        for k in 0..e.len().saturating_sub(1) {
            let ((f, s), (g, t)) = (&e[k], &e[k + 1]);
            if s == t {
                let merged = match s {
                    Sign::Plus => sig.compose2(f, g),
                    Sign::Minus => sig.compose2(g, f),
                };
                if let Ok(m) = merged {
                    out.push(with(k, 2, vec![(m, *s)]));
                }
            } else if f == g {
                out.push(with(k, 2, Vec::new()));
            } else {
                let shrink = |h: &ThreeCell, first: bool| -> ThreeCell {
                    if first {
                        let steps = h.steps[1..].to_vec();
                        let source2 = sig.target2(&ThreeCell { source2: h.source2.clone(), steps: h.steps[..1].to_vec() }).expect("well-formed");
                        ThreeCell { source2, steps }
                    } else {
                        ThreeCell { source2: h.source2.clone(), steps: h.steps[..h.steps.len() - 1].to_vec() }
                    }
                };
                let common = match s {
                    Sign::Plus => !f.is_empty() && !g.is_empty() && f.steps.last() == g.steps.last(),
                    Sign::Minus => !f.is_empty() && !g.is_empty() && f.steps.first() == g.steps.first(),
                };
                if common {
                    let first = *s == Sign::Minus;
                    out.push(with(k, 2, vec![(shrink(f, first), *s), (shrink(g, first), *t)]));
                }
            }
        }
        out
    }
}
