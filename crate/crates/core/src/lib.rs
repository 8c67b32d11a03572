//! Rewriting in Gray categories presented by generators in dimensions 0 to 3.
//!
//! The crate provides the free precategory cells of a signature, Gray
//! presentations with their interchangers, rewriting steps and the
//! classification of their local branchings, termination certificates and a
//! coherence checker that joins critical branchings and looks for tiles.

pub mod catalog;
pub mod cells;
pub mod coherence;
pub mod par;
pub mod presentation;
pub mod random;
pub mod rewriting;
pub mod termination;
pub mod text;

pub use cells::{Cell, CellError, GenId, OneCell, Signature, Step, ThreeCell, ThreeGenInstance, TwoCell, Whisker2};
pub use par::Exec;
pub use presentation::{GrayPresentation, InterchangeMode, Tile};
