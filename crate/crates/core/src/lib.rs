//! Coboundary decompositions over `F_p^n` and certificates refuting linear
//! approximations of the evaluation map `v ↦ (f ↦ f(v))`.
//!
//! The crate is organized bottom-up:
//!
//! * [`field`]: residues, points of `F_p^n`, dense function tables.
//! * [`subspace`]: canonical subspaces, sums, intersections, linear extension.
//! * [`functional`]: evaluation functionals, coboundaries, the set `S` and
//!   membership in its sumsets.
//! * [`construction`]: candidate maps, `V_x` families, violating pairs,
//!   witnesses, certificates, exhaustive search and counting diagnostics.
//! * [`cli`]: the command-line front end used by the `cobound` binary.
//!
//! See `examples/` for one runnable program per capability.

pub mod cli;
pub mod construction;
mod error;
pub mod field;
pub mod functional;
pub mod subspace;

pub use error::{Error, Result};
pub use field::{FunctionTable, Params, Point, Residue};
pub use functional::{DecompositionPairs, Functional, SSet, SumsetMode};
pub use subspace::Subspace;
