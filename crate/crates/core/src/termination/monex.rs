//! Affine interpretations of 2-cells into strictly monotone maps `ℕᵐ → ℕⁿ`.
//!
//! A 1-generator is sent to a number of coordinates (its weight), a
//! 2-generator to an affine map between the coordinate spaces of its
//! boundaries. Whiskering acts as the identity on context coordinates and
//! `φ ∘₁ ψ` is sent to `F(ψ) ∘ F(φ)`.

use crate::cells::{GenId, OneCell, Signature, TwoCell};
use serde::Serialize;
use std::fmt;

/// An affine map `x ↦ Mx + c` with natural coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct Affine {
    /// `rows × cols` coefficients.
    pub matrix: Vec<Vec<u64>>,
    pub constant: Vec<u64>,
    pub cols: usize,
}

impl Affine {
    pub fn new(matrix: Vec<Vec<u64>>, constant: Vec<u64>, cols: usize) -> Self {
        Affine {
            matrix,
            constant,
            cols,
        }
    }

    pub fn rows(&self) -> usize {
        self.constant.len()
    }

    pub fn identity(n: usize) -> Self {
        let matrix = (0..n)
            .map(|i| (0..n).map(|j| u64::from(i == j)).collect())
            .collect();
        Affine::new(matrix, vec![0; n], n)
    }

    /// `self` followed by `next`: `x ↦ next(self(x))`.
    pub fn then(&self, next: &Affine) -> Affine {
        assert_eq!(self.rows(), next.cols, "affine maps do not compose");
        let rows = next.rows();
        let mut matrix = vec![vec![0u64; self.cols]; rows];
        let mut constant = next.constant.clone();
        for (i, row) in matrix.iter_mut().enumerate() {
            for k in 0..next.cols {
                let a = next.matrix[i][k];
                if a == 0 {
                    continue;
                }
                for (j, slot) in row.iter_mut().enumerate() {
                    *slot += a * self.matrix[k][j];
                }
                constant[i] += a * self.constant[k];
            }
        }
        Affine::new(matrix, constant, self.cols)
    }

    /// `id_l × self × id_r` on coordinates.
    pub fn whiskered(&self, l: usize, r: usize) -> Affine {
        let rows = l + self.rows() + r;
        let cols = l + self.cols + r;
        let mut matrix = vec![vec![0u64; cols]; rows];
        let mut constant = vec![0u64; rows];
        for i in 0..l {
            matrix[i][i] = 1;
        }
        for i in 0..self.rows() {
            for j in 0..self.cols {
                matrix[l + i][l + j] = self.matrix[i][j];
            }
            constant[l + i] = self.constant[i];
        }
        for i in 0..r {
            matrix[l + self.rows() + i][l + self.cols + i] = 1;
        }
        Affine::new(matrix, constant, cols)
    }

    pub fn apply(&self, x: &[u64]) -> Vec<u64> {
        (0..self.rows())
            .map(|i| {
                self.constant[i]
                    + self.matrix[i]
                        .iter()
                        .zip(x)
                        .map(|(a, b)| a * b)
                        .sum::<u64>()
            })
            .collect()
    }

    /// Strict monotonicity: every column has a positive entry when there are rows.
    pub fn is_monotone(&self) -> bool {
        self.rows() == 0 || (0..self.cols).all(|j| self.matrix.iter().any(|r| r[j] > 0))
    }

    /// The sufficient decrease criterion: `self ≥ other` entrywise on matrix
    /// and constants, with some constant strictly greater.
    pub fn dominates_strictly(&self, other: &Affine) -> bool {
        if self.rows() != other.rows() || self.cols != other.cols {
            return false;
        }
        let matrix_ge = self
            .matrix
            .iter()
            .zip(&other.matrix)
            .all(|(a, b)| a.iter().zip(b).all(|(x, y)| x >= y));
        let const_ge = self.constant.iter().zip(&other.constant).all(|(x, y)| x >= y);
        let some_gt = self.constant.iter().zip(&other.constant).any(|(x, y)| x > y);
        matrix_ge && const_ge && some_gt
    }
}

fn var_name(j: usize) -> String {
    const NAMES: [&str; 8] = ["x", "y", "z", "w", "v", "u", "t", "s"];
    NAMES.get(j).map_or_else(|| format!("x{j}"), |s| s.to_string())
}

impl fmt::Display for Affine {
    /// Writes `4x+2y+z+3` for one output coordinate and a tuple otherwise.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let row = |i: usize| {
            let mut terms: Vec<String> = self.matrix[i]
                .iter()
                .enumerate()
                .filter(|(_, a)| **a > 0)
                .map(|(j, a)| {
                    if *a == 1 {
                        var_name(j)
                    } else {
                        format!("{a}{}", var_name(j))
                    }
                })
                .collect();
            if self.constant[i] > 0 || terms.is_empty() {
                terms.push(self.constant[i].to_string());
            }
            terms.join("+")
        };
        if self.rows() == 1 {
            write!(f, "{}", row(0))
        } else {
            let rows: Vec<String> = (0..self.rows()).map(row).collect();
            write!(f, "({})", rows.join(", "))
        }
    }
}

/// Weights of 1-generators and affine maps of 2-generators.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct LinearInterpretation {
    pub weights: Vec<u64>,
    pub maps: Vec<Option<Affine>>,
}

/// Errors while evaluating an interpretation.
#[derive(Debug, thiserror::Error, Clone, PartialEq, Eq)]
pub enum InterpretationError {
    #[error("no interpretation given for 2-generator `{0}`")]
    Undefined(String),
    #[error("interpretation of `{0}` has the wrong arity")]
    Arity(String),
    #[error("interpretation of `{0}` is not strictly monotone (zero column)")]
    NotMonotone(String),
}

impl LinearInterpretation {
    /// Weight 1 on every 1-generator and no 2-generator maps.
    pub fn new(sig: &Signature) -> Self {
        LinearInterpretation {
            weights: vec![1; sig.one.len()],
            maps: vec![None; sig.two.len()],
        }
    }

    /// Number of coordinates of a 1-cell.
    pub fn width(&self, u: &OneCell) -> usize {
        u.word.iter().map(|&a| self.weights[a] as usize).sum()
    }

    /// Checks arities and monotonicity of every 2-generator map.
    pub fn check(&self, sig: &Signature) -> Result<(), InterpretationError> {
        for (a, g) in sig.two.iter().enumerate() {
            let f = self.map(sig, a)?;
            if f.cols != self.width(&g.source) || f.rows() != self.width(&g.target) {
                return Err(InterpretationError::Arity(g.name.clone()));
            }
            if !f.is_monotone() {
                return Err(InterpretationError::NotMonotone(g.name.clone()));
            }
        }
        Ok(())
    }

    fn map(&self, sig: &Signature, a: GenId) -> Result<&Affine, InterpretationError> {
        self.maps
            .get(a)
            .and_then(Option::as_ref)
            .ok_or_else(|| InterpretationError::Undefined(sig.two[a].name.clone()))
    }

    /// The affine map of a 2-cell.
    pub fn eval(&self, sig: &Signature, phi: &TwoCell) -> Result<Affine, InterpretationError> {
        let mut acc = Affine::identity(self.width(&phi.source1));
        for w in &phi.whiskers {
            let f = self.map(sig, w.gen)?;
            if f.cols != self.width(&sig.two[w.gen].source) {
                return Err(InterpretationError::Arity(sig.two[w.gen].name.clone()));
            }
            let step = f.whiskered(self.width(&w.left), self.width(&w.right));
            acc = acc.then(&step);
        }
        Ok(acc)
    }
}
