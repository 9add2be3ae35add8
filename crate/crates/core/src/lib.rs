//! Exact braid group images from twisted quantum doubles of finite groups.
//!
//! The crate builds the twisted double `D^ω(G)` of a finite group over
//! exact roots of unity, realizes the braid group action on tensor powers
//! of its regular module as monomial operators, and computes the finite
//! image groups of the braid and pure braid groups.

pub mod braidrep;
pub mod cli;
pub mod cocycle;
pub mod double;
pub mod group;
pub mod image;
pub mod scalars;
