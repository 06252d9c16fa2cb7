//! Computational toolkit for rotary maps and self-dual chiral 4-polytopes.
//!
//! Groups are given by finite presentations and modelled through Todd–Coxeter
//! coset enumeration ([`engine`]). On top of that sit rotation-group wrappers
//! with their map invariants ([`rotary`]), detection of self-duality and the
//! extended groups ([`selfdual`]), and the mixing constructions that turn a
//! self-dual 4-polytope into a map of type {4, 2q | p} or {p, 2s}
//! ([`constructions`]). [`report`] aggregates everything into one serializable
//! analysis.

pub mod constructions;
pub mod engine;
pub mod presentation;
pub mod report;
pub mod rotary;
pub mod selfdual;

pub use engine::{enumerate, ElementIndex, EngineError, GroupRep, Subgroup, DEFAULT_MAX_COSETS};
pub use presentation::{parse_presentation, Presentation, PresentationError, Word};
