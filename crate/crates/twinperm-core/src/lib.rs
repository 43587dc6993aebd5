//! Core engine for multiple twins in permutations.
//!
//! A *permutation* here is any finite sequence of pairwise distinct integers;
//! the *canonical* ones use the values 1..=n exactly. Two sequences are
//! *similar* when they have the same relative order. The crate detects and
//! constructs three kinds of twin structures of multiplicity `r` and length
//! `k`:
//!
//! * **block twins**: `r` pairwise disjoint contiguous intervals of length
//!   `k` whose entries are pairwise similar;
//! * **tight twins**: `r` disjoint length-`k` subsequences, pairwise similar,
//!   whose positions jointly cover an interval of length `r * k`;
//! * **block-tight twins**: `r` *consecutive* contiguous blocks of length `k`
//!   sharing one pattern (both block and tight at once).
//!
//! Everything in this crate is deterministic and allocation-only; it builds
//! without the standard library. IO, parallel search and statistics live in
//! the companion `twinperm-tools` crate.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod construct;
pub mod detect;
pub mod matching;
pub mod perm;

pub use construct::{
    avoider_for_length, build_alternating, build_pi_k, build_pi_rk, build_quadratic,
    build_small_witness, ConstructionSpec, Family, WitnessName,
};
pub use detect::{
    detect, detect_block, detect_blocktight, detect_tight, max_len, oracle_tight, r_max,
    TightChecker, TwinKind, TwinsCertificate,
};
pub use matching::{match2, MatchCertificate, Orientation};
pub use perm::{Pattern, Permutation, Symmetry};

use core::fmt;

/// Errors shared by the whole engine.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// Input sequence contains a repeated value.
    DuplicateValues,
    /// Operation requires a canonical permutation (values exactly 1..=n).
    NotCanonical,
    /// A parameter is out of its documented range.
    InvalidInput(&'static str),
    /// Refused: the exact computation would exceed the configured size guard.
    ResourceLimit(&'static str),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::DuplicateValues => write!(f, "sequence contains duplicate values"),
            Error::NotCanonical => write!(f, "permutation is not canonical (values 1..=n)"),
            Error::InvalidInput(msg) => write!(f, "invalid input: {msg}"),
            Error::ResourceLimit(msg) => write!(f, "resource guard: {msg}"),
        }
    }
}

impl core::error::Error for Error {}
