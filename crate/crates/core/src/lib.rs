//! Deterministic engine for two-voice counterpoint over `Z_2k`.
//!
//! The model splits the interval classes into consonances and dissonances
//! by a *strong dichotomy* (a half exchanged by a unique affine involution,
//! the polarity), and derives the legal continuations of a second-species
//! measure by exhaustively maximizing over non-invertible *species
//! projections* that deform the dichotomy. Everything is exact integer
//! arithmetic; every search is reproducible and comes with a brute-force
//! oracle twin for differential testing.
//!
//! Module map:
//!
//! - [`ring`]: residues, affine symmetries, intervals, projections;
//! - [`dichotomy`]: dichotomies, polarity search, deformed sets;
//! - [`projection`]: the successor search, memo table, and sweeps;
//! - [`oracle`]: independent brute-force reimplementations of the search;
//! - [`fux`]: composition validation and the rule-comparison experiment.

pub mod dichotomy;
pub mod fux;
pub mod laws;
pub mod oracle;
mod par;
pub mod projection;
pub mod ring;

pub use par::with_threads;
