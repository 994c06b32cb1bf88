//! Checkers, constructions, certificates and exhaustive searches for 2-colored
//! (and t-colored) graphs in which every vertex lies in a monochromatic
//! k-clique of each color, and for the equivalent k-piercing families of
//! sub-boxes of a discrete box.
//!
//! The crate is organised by role:
//!
//! - [`graph`]: the edge-colored graph type, clique search, the clique-cover
//!   property, edge-criticality and canonical forms.
//! - [`families`]: witness families `B`, `R`, their five structural
//!   conditions, normalization and the incidence/grid view.
//! - [`certificates`]: the exact rank certificate and the counting chain.
//! - [`constructions`]: extremal graphs built from complementary regular
//!   bipartite pairs, the blown-up 4-cycle and the t-color version.
//! - [`boxes`]: discrete boxes, sub-box families, piercing and the reduction
//!   from 2-dimensional families to 2-colored graphs.
//! - [`search`]: deterministic, budgeted exhaustive searches that produce
//!   [`search::ProofRecord`]s.

pub mod boxes;
pub mod certificates;
pub mod constructions;
mod error;
pub mod families;
pub mod graph;
pub mod search;
pub mod text;

pub use error::{Error, Result};
