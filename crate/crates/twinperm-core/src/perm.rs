//! Permutations, patterns and the symmetries that preserve twin structure.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::Error;

/// A finite sequence of pairwise distinct integers.
///
/// Values are arbitrary `i64`s; constructions routinely pass through signed
/// intermediate sequences before reducing. A permutation whose values are
/// exactly `1..=n` is called *canonical*; some operations require that state
/// and say so.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Permutation {
    values: Vec<i64>,
}

impl Permutation {
    /// Wraps a sequence, rejecting duplicates.
    pub fn new(values: Vec<i64>) -> Result<Self, Error> {
        let mut sorted = values.clone();
        sorted.sort_unstable();
        if sorted.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::DuplicateValues);
        }
        Ok(Permutation { values })
    }

    /// The identity permutation `1, 2, ..., n`.
    pub fn identity(n: usize) -> Self {
        Permutation {
            values: (1..=n as i64).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn values(&self) -> &[i64] {
        &self.values
    }

    /// True when the values are exactly `1..=n`.
    pub fn is_canonical(&self) -> bool {
        let n = self.values.len() as i64;
        let mut seen = alloc::vec![false; self.values.len()];
        for &v in &self.values {
            if v < 1 || v > n || seen[(v - 1) as usize] {
                return false;
            }
            seen[(v - 1) as usize] = true;
        }
        true
    }

    /// The pattern of this sequence: entry `i` becomes the rank of
    /// `values[i]` among all values, smallest mapping to 1.
    pub fn reduce(&self) -> Pattern {
        Pattern::of(&self.values)
    }

    /// Same length and same relative order.
    pub fn is_similar(&self, other: &Permutation) -> bool {
        self.values.len() == other.values.len() && self.reduce() == other.reduce()
    }

    /// Applies one of the four order symmetries. Requires a canonical
    /// permutation so that complement `v -> n+1-v` stays within `1..=n`.
    pub fn apply_symmetry(&self, sym: Symmetry) -> Result<Permutation, Error> {
        if !self.is_canonical() {
            return Err(Error::NotCanonical);
        }
        let n = self.values.len() as i64;
        let mut values = self.values.clone();
        match sym {
            Symmetry::Identity => {}
            Symmetry::Reverse => values.reverse(),
            Symmetry::Complement => {
                for v in &mut values {
                    *v = n + 1 - *v;
                }
            }
            Symmetry::ReverseComplement => {
                values.reverse();
                for v in &mut values {
                    *v = n + 1 - *v;
                }
            }
        }
        Ok(Permutation { values })
    }

    /// A uniformly random canonical permutation of `1..=n`, reproducible from
    /// the seed: a Fisher-Yates shuffle driven by ChaCha8. The same seed gives
    /// the same permutation on every platform and thread count.
    pub fn random(n: usize, seed: u64) -> Result<Permutation, Error> {
        if n == 0 {
            return Err(Error::InvalidInput("random permutation needs n >= 1"));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut values: Vec<i64> = (1..=n as i64).collect();
        values.shuffle(&mut rng);
        Ok(Permutation { values })
    }

    /// The contiguous window of positions `start..start+len` (0-based start).
    pub fn window(&self, start: usize, len: usize) -> &[i64] {
        &self.values[start..start + len]
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, v) in self.values.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

impl FromStr for Permutation {
    type Err = Error;

    /// Parses decimal integers separated by spaces, commas or both.
    fn from_str(s: &str) -> Result<Self, Error> {
        let mut values = Vec::new();
        for tok in s.split(|c: char| c == ',' || c.is_whitespace()) {
            if tok.is_empty() {
                continue;
            }
            let v: i64 = tok
                .parse()
                .map_err(|_| Error::InvalidInput("unparsable integer in permutation"))?;
            values.push(v);
        }
        if values.is_empty() {
            return Err(Error::InvalidInput("empty permutation"));
        }
        Permutation::new(values)
    }
}

impl From<Pattern> for Permutation {
    fn from(p: Pattern) -> Permutation {
        Permutation {
            values: p.0.iter().map(|&v| v as i64).collect(),
        }
    }
}

/// A reduced pattern: a canonical permutation of `1..=m` stored compactly.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Pattern(Vec<u32>);

impl Pattern {
    /// Ranks every entry of `values` among the whole slice.
    pub fn of(values: &[i64]) -> Pattern {
        let mut idx: Vec<u32> = (0..values.len() as u32).collect();
        idx.sort_unstable_by_key(|&i| values[i as usize]);
        let mut ranks = alloc::vec![0u32; values.len()];
        for (rank, &i) in idx.iter().enumerate() {
            ranks[i as usize] = rank as u32 + 1;
        }
        Pattern(ranks)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn values(&self) -> &[u32] {
        &self.0
    }

    pub fn to_permutation(&self) -> Permutation {
        Permutation {
            values: self.0.iter().map(|&v| v as i64).collect(),
        }
    }
}

impl fmt::Display for Pattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

/// The Klein four-group of symmetries acting on canonical permutations.
///
/// Reversal flips positions, complement flips values. Both preserve
/// similarity of subsequences, and reversal maps intervals to intervals, so
/// all three twin kinds are stable under the whole group. Inversion
/// (`position <-> value`) does not preserve tight twins and is deliberately
/// not included.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Symmetry {
    Identity,
    Reverse,
    Complement,
    ReverseComplement,
}

impl Symmetry {
    pub const ALL: [Symmetry; 4] = [
        Symmetry::Identity,
        Symmetry::Reverse,
        Symmetry::Complement,
        Symmetry::ReverseComplement,
    ];

    /// Group composition: `a.compose(b)` acts like applying `b` first, then
    /// `a`. Every element is its own inverse.
    pub fn compose(self, other: Symmetry) -> Symmetry {
        use Symmetry::*;
        match (self, other) {
            (Identity, s) | (s, Identity) => s,
            (a, b) if a == b => Identity,
            (Reverse, Complement) | (Complement, Reverse) => ReverseComplement,
            (Reverse, ReverseComplement) | (ReverseComplement, Reverse) => Complement,
            (Complement, ReverseComplement) | (ReverseComplement, Complement) => Reverse,
            _ => unreachable!(),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Symmetry::Identity => "identity",
            Symmetry::Reverse => "reverse",
            Symmetry::Complement => "complement",
            Symmetry::ReverseComplement => "reverse-complement",
        }
    }
}

impl FromStr for Symmetry {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        match s {
            "identity" => Ok(Symmetry::Identity),
            "reverse" => Ok(Symmetry::Reverse),
            "complement" => Ok(Symmetry::Complement),
            "reverse-complement" => Ok(Symmetry::ReverseComplement),
            _ => Err(Error::InvalidInput("unknown symmetry name")),
        }
    }
}

/// Formats a permutation in the shared one-line text format.
pub fn to_line(p: &Permutation) -> String {
    alloc::format!("{p}")
}
