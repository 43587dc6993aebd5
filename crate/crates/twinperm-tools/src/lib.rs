//! Std companion to [`twinperm_core`]: exhaustive threshold searches,
//! seeded Monte Carlo experiments on random permutations, and the text
//! formats behind the `twinperm` binary.

pub mod formats;
pub mod montecarlo;
pub mod search;
