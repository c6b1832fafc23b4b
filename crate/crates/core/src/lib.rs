//! Exact graph width parameters, Hadwiger numbers and multi-part
//! Nordhaus-Gaddum bounds for small graphs.
//!
//! The crate is organised bottom-up:
//!
//! * [`graph`]: bitset graphs on at most 32 vertices, canonical codes,
//!   graph6 and spanning-subgraph embedding.
//! * [`width`]: exact tree-width, path-width, proper path-width, largeur
//!   d'arborescence, Hadwiger number, clique and chromatic number, plus
//!   sandwich intervals for the Colin de Verdière type parameters.
//! * [`constructions`]: explicit r-decompositions of `K_n` with the bound
//!   each one guarantees.
//! * [`bounds`]: closed-form bound evaluators and the catalogue used to
//!   cross-check exact and sampled values.
//! * [`ng`]: exhaustive, symmetry-reduced enumeration of r-decompositions
//!   and Monte-Carlo sampling.
//! * [`report`], [`verify`] and [`cli`]: JSON reports, the verification suite and the
//!   `ngw` command line front end.

pub mod bounds;
pub mod cli;
pub mod constructions;
pub mod error;
pub mod graph;
pub mod ng;
pub mod report;
pub mod verify;
pub mod width;

#[cfg(test)]
mod testutil;

pub use error::{Error, Result};
pub use graph::{CanonCode, EdgeId, Graph, GraphFamily};
pub use width::{ParamKind, ValueInterval};
