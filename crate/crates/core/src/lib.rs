//! Simulation library for skew-product dynamics built from random walks along
//! orbits: shift spaces and their measurable models, validated 1-D fiber map
//! families, random walks with position-dependent step probabilities, skew
//! product presets with build-time hypothesis gates, suspension flows, and
//! attractor/basin analysis (classification grids, intermingledness verdicts,
//! pullback graphs, thickness estimates).
//!
//! Everything is seeded and deterministic: a computation is a pure function of
//! its inputs and a 64-bit seed, and parallel ensembles derive one independent
//! stream per work item so worker count never changes results.

pub mod attract;
pub mod flows;
pub mod maps1d;
pub mod numeric;
pub mod randomwalk;
pub mod report;
pub mod rng;
pub mod skew;
pub mod symbolic;
