//! Generators for the explicit avoider and witness permutations.
//!
//! The infinite-family generators first build a sequence of signed integers
//! and reduce it at the end; canonical output is part of the contract.

use alloc::vec::Vec;

use crate::perm::Permutation;
use crate::Error;

/// Reverses `block` and flips signs when `negate` is set.
fn signed_reversed(block: core::ops::RangeInclusive<i64>, negate: bool) -> impl Iterator<Item = i64> {
    let sign = if negate { -1 } else { 1 };
    block.rev().map(move |v| sign * v)
}

/// Shared scheme behind `build_pi_k` and `build_pi_rk`: consecutive blocks
/// `A_m = ((m-1)b+1, ..., mb)`, emitted reversed, with signs alternating
/// starting negative, then reduced.
fn signed_block_sequence(b: usize, n: usize) -> Result<Permutation, Error> {
    if n == 0 || n % b != 0 {
        return Err(Error::InvalidInput("length must be a positive multiple of the block length"));
    }
    let mut raw: Vec<i64> = Vec::with_capacity(n);
    for m in 1..=n / b {
        let lo = ((m - 1) * b + 1) as i64;
        let hi = (m * b) as i64;
        raw.extend(signed_reversed(lo..=hi, m % 2 == 1));
    }
    let raw = Permutation::new(raw).expect("blocks are disjoint");
    Ok(raw.reduce().to_permutation())
}

/// The avoider of tight 2-twins of length `2k-1` and `2k`: alternately
/// negated reversed blocks of length `2k-1`, truncated to `n` and reduced.
/// `n` must be a positive multiple of `2k-1`.
pub fn build_pi_k(k: usize, n: usize) -> Result<Permutation, Error> {
    if k < 2 {
        return Err(Error::InvalidInput("build_pi_k needs k >= 2"));
    }
    signed_block_sequence(2 * k - 1, n)
}

/// The avoider of tight r-twins of length `2k-1` and `2k`: the same scheme
/// with blocks of length `rk-1`. `n` must be a positive multiple of `rk-1`.
pub fn build_pi_rk(r: usize, k: usize, n: usize) -> Result<Permutation, Error> {
    if r < 2 || k < 2 {
        return Err(Error::InvalidInput("build_pi_rk needs r >= 2 and k >= 2"));
    }
    signed_block_sequence(r * k - 1, n)
}

/// Picks the avoider family member for twins of length `ell >= 3`: the block
/// parameter `k = (ell + 1) / 2` satisfies `ell ∈ {2k-1, 2k}`.
pub fn avoider_for_length(r: usize, ell: usize, n: usize) -> Result<Permutation, Error> {
    if ell < 3 {
        return Err(Error::InvalidInput("avoiders exist only for lengths >= 3"));
    }
    build_pi_rk(r, (ell + 1) / 2, n)
}

/// The quadratic-length avoider of tight r-twins of length 2, for `r >= 3`.
///
/// Segments `A_0` and `A_1` have length `r-1`, each later one is shorter by
/// one down to singletons, through `A_{3r-7}`. The left half emits them
/// reversed from the last down to `A_0` with signs `(-1)^j`, then a central
/// 0, then the mirror image with opposite signs; the whole is reduced. The
/// result has length `r(r+5) - 13`.
pub fn build_quadratic(r: usize) -> Result<Permutation, Error> {
    if r < 3 {
        return Err(Error::InvalidInput("build_quadratic needs r >= 3"));
    }
    let top = 3 * r - 7;
    let seg_len = |j: usize| if j == 0 { r - 1 } else { r.saturating_sub(j).max(1) };
    let mut bounds: Vec<(i64, i64)> = Vec::with_capacity(top + 1);
    let mut next = 1i64;
    for j in 0..=top {
        let hi = next + seg_len(j) as i64 - 1;
        bounds.push((next, hi));
        next = hi + 1;
    }
    let mut raw: Vec<i64> = Vec::with_capacity(2 * (next as usize - 1) + 1);
    for j in (0..=top).rev() {
        let (lo, hi) = bounds[j];
        raw.extend(signed_reversed(lo..=hi, j % 2 == 1));
    }
    raw.push(0);
    for j in 0..=top {
        let (lo, hi) = bounds[j];
        let sign = if j % 2 == 0 { -1 } else { 1 };
        raw.extend((lo..=hi).map(|v| sign * v));
    }
    let raw = Permutation::new(raw).expect("segments are disjoint and mirrored");
    Ok(raw.reduce().to_permutation())
}

/// The named witness permutations quoted verbatim.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WitnessName {
    Pi2,
    Pi3,
    IntroTight4,
    IntroBlock4,
    IntroBlocktight4,
}

impl WitnessName {
    pub const ALL: [WitnessName; 5] = [
        WitnessName::Pi2,
        WitnessName::Pi3,
        WitnessName::IntroTight4,
        WitnessName::IntroBlock4,
        WitnessName::IntroBlocktight4,
    ];

    pub fn name(self) -> &'static str {
        match self {
            WitnessName::Pi2 => "pi2",
            WitnessName::Pi3 => "pi3",
            WitnessName::IntroTight4 => "intro-tight4",
            WitnessName::IntroBlock4 => "intro-block4",
            WitnessName::IntroBlocktight4 => "intro-blocktight4",
        }
    }
}

impl core::str::FromStr for WitnessName {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        WitnessName::ALL
            .into_iter()
            .find(|w| w.name() == s)
            .ok_or(Error::InvalidInput("unknown witness name"))
    }
}

pub fn build_small_witness(name: WitnessName) -> Permutation {
    let vals: &[i64] = match name {
        WitnessName::Pi2 => &[1, 4, 3, 2, 5],
        WitnessName::Pi3 => &[11, 2, 3, 8, 7, 6, 5, 4, 9, 10, 1],
        WitnessName::IntroTight4 => {
            &[14, 18, 2, 5, 4, 1, 15, 12, 7, 17, 8, 9, 16, 3, 6, 10, 11, 13]
        }
        WitnessName::IntroBlock4 => {
            &[14, 2, 1, 3, 18, 6, 10, 5, 4, 8, 15, 7, 17, 11, 13, 12, 9, 16]
        }
        WitnessName::IntroBlocktight4 => {
            &[14, 18, 6, 2, 1, 3, 5, 4, 8, 15, 7, 17, 12, 9, 16, 10, 11, 13]
        }
    };
    Permutation::new(vals.to_vec()).expect("literal witnesses are permutations")
}

/// The up-up-down-down permutation: two rising steps, two falling steps,
/// repeating with period 4 from position 1.
///
/// Only the shape matters to its callers; the filling chosen here starts
/// from the identity and reverses the length-3 stretch at positions
/// `4t+3..4t+5` for every `t`, clipped at `n`.
pub fn build_alternating(n: usize) -> Permutation {
    let mut vals: Vec<i64> = (1..=n as i64).collect();
    let mut start = 2usize;
    while start < n {
        let end = (start + 3).min(n);
        vals[start..end].reverse();
        start += 4;
    }
    Permutation::new(vals).expect("a rearranged identity")
}

/// Parsed request for one member of the construction families.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ConstructionSpec {
    pub family: Family,
    pub r: Option<usize>,
    pub k: Option<usize>,
    pub n: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    PiK,
    PiRk,
    Quadratic,
    Alternating,
    Witness(WitnessName),
}

impl core::str::FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        match s {
            "pi-k" => Ok(Family::PiK),
            "pi-rk" => Ok(Family::PiRk),
            "quadratic" => Ok(Family::Quadratic),
            "alternating" => Ok(Family::Alternating),
            other => other.parse::<WitnessName>().map(Family::Witness),
        }
    }
}

impl ConstructionSpec {
    pub fn build(&self) -> Result<Permutation, Error> {
        let need = |v: Option<usize>, what: &'static str| v.ok_or(Error::InvalidInput(what));
        match self.family {
            Family::PiK => build_pi_k(
                need(self.k, "pi-k needs --k")?,
                need(self.n, "pi-k needs --n")?,
            ),
            Family::PiRk => build_pi_rk(
                need(self.r, "pi-rk needs --r")?,
                need(self.k, "pi-rk needs --k")?,
                need(self.n, "pi-rk needs --n")?,
            ),
            Family::Quadratic => build_quadratic(need(self.r, "quadratic needs --r")?),
            Family::Alternating => Ok(build_alternating(need(self.n, "alternating needs --n")?)),
            Family::Witness(w) => Ok(build_small_witness(w)),
        }
    }
}
