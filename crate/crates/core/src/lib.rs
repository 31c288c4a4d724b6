//! Simulator, limit evaluator and solver for infinitary Rubik's cubes.
//!
//! Layers are indexed by the positive integers together with `0` (odd
//! cubes) and `±∞` (faces). Configurations are stored as finite
//! presentations over eventually periodic index classes; twist schedules
//! may have transfinite length up to `ω²`.

pub mod codec;
pub mod config;
pub mod evaluate;
pub mod geometry;
pub mod group;
pub mod moves;
pub mod oracle;
pub mod ordinal;
pub mod periodic;
pub mod perm;
pub mod schedule;
pub mod solver;
