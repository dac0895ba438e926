//! Exact invariants of classical and virtual knot diagrams.

pub mod ring;
pub mod diagram;
pub mod bracket;
pub mod moves;
pub mod biquandle;
pub mod vassiliev;
pub mod amplitude;
pub mod temperley_lieb;
pub mod tangle;
pub mod cli;
