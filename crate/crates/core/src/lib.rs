//! Exact-arithmetic workbench for finitely generated groups acting on the
//! real line by orientation-preserving piecewise-linear homeomorphisms.
//!
//! The crate is organized bottom-up:
//!
//! * [`extpoint`]: the extended line `{-inf} ∪ ℚ ∪ {+inf}` with a total order.
//! * [`plmap`]: exact piecewise-linear homeomorphisms, their orbitals
//!   (maximal intervals of points moved) and germ comparison.
//! * [`words`]: free words over a finite generating set, reduction,
//!   length-lexicographic enumeration and evaluation into maps.
//! * [`towers`]: nested chains of signed orbitals, orbital pools,
//!   tower search, crossed pairs and related diagnostics.
//! * [`wreath`]: an ordered iterated wreath product built from
//!   finitely supported integer and dyadic-rational vectors.
//! * [`realize`]: realizing a left-orderable group as maps of the line
//!   via its positional order, with fixed-point estimation.
//! * [`models`]: stock generator assignments used across tests and the CLI.
//! * [`props`]: seeded randomized law checks shared by tests and reports.

pub mod extpoint;
pub mod models;
pub mod plmap;
pub mod props;
pub mod realize;
pub mod sample;
pub mod towers;
pub mod words;
pub mod wreath;

pub use extpoint::ExtPoint;
pub use plmap::{Affine, PLMap};
pub use words::{Assignment, Letter, Word};
