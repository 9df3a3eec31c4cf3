//! Exact PATS solvers: the column DP verifier, minimum tile-set search for
//! fixed height, the linear-time uniform height-1 solver, and an independent
//! brute-force oracle.

mod brute;
mod dp;
mod synth;
mod uniform_h1;

use std::time::Duration;

pub use brute::{brute_force_min, brute_force_search, DEFAULT_BRUTE_NODES};
pub use dp::{dp_verify, SeedMode};
pub use synth::{solve_min, solve_nonuniform, solve_uniform, SolveOptions};
pub use uniform_h1::{longest_repeated_suffix, solve_uniform_h1, z_function};

use crate::rtas::Rtas;

/// Seed family a solver searches over.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SeedKind {
    NonUniform,
    Uniform,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct SolveStats {
    pub nodes: u64,
    pub elapsed: Duration,
}

/// A minimum tile set and how it was found.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolveResult {
    pub min_size: usize,
    pub witness: Rtas,
    pub stats: SolveStats,
}
