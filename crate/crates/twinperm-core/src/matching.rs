//! Perfect matchings between the two halves of a permutation.
//!
//! For even `n`, positions `1..n/2` and `n/2+1..n` form a bipartite graph
//! with an edge where the two values compare the right way. A perfect
//! matching is an instant certificate for `n/2` tight twins of length 2.

use alloc::collections::VecDeque;
use alloc::vec;
use alloc::vec::Vec;

use crate::detect::{TwinKind, TwinsCertificate};
use crate::perm::{Pattern, Permutation};
use crate::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Orientation {
    /// Left value below right value: every pair reduces to (1, 2).
    Increasing,
    /// Left value above right value: every pair reduces to (2, 1).
    Decreasing,
}

impl Orientation {
    pub fn name(self) -> &'static str {
        match self {
            Orientation::Increasing => "increasing",
            Orientation::Decreasing => "decreasing",
        }
    }
}

impl core::str::FromStr for Orientation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        match s {
            "increasing" | "inc" => Ok(Orientation::Increasing),
            "decreasing" | "dec" => Ok(Orientation::Decreasing),
            _ => Err(Error::InvalidInput("unknown orientation")),
        }
    }
}

/// A perfect matching between the halves. Pairs are 1-based `(left, right)`
/// positions, sorted by the left position.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MatchCertificate {
    pub orientation: Orientation,
    pub pairs: Vec<(usize, usize)>,
}

impl MatchCertificate {
    /// Re-checks the matching against `host`.
    pub fn validate(&self, host: &Permutation) -> Result<(), Error> {
        let n = host.len();
        let h = n / 2;
        if n % 2 != 0 || self.pairs.len() != h {
            return Err(Error::InvalidInput("matching size differs from n/2"));
        }
        let mut seen = vec![false; n + 1];
        for &(i, j) in &self.pairs {
            if i < 1 || i > h || j <= h || j > n {
                return Err(Error::InvalidInput("matched position out of its half"));
            }
            if seen[i] || seen[j] {
                return Err(Error::InvalidInput("position matched twice"));
            }
            seen[i] = true;
            seen[j] = true;
            let (a, b) = (host.values()[i - 1], host.values()[j - 1]);
            let ok = match self.orientation {
                Orientation::Increasing => a < b,
                Orientation::Decreasing => a > b,
            };
            if !ok {
                return Err(Error::InvalidInput("matched pair has the wrong order"));
            }
        }
        Ok(())
    }

    /// The matching seen as `n/2` tight twins of length 2.
    pub fn to_twins_certificate(&self, host: &Permutation) -> TwinsCertificate {
        let _ = host;
        let mut sets: Vec<Vec<usize>> = self.pairs.iter().map(|&(i, j)| vec![i, j]).collect();
        sets.sort_unstable();
        let pattern = match self.orientation {
            Orientation::Increasing => Pattern::of(&[1, 2]),
            Orientation::Decreasing => Pattern::of(&[2, 1]),
        };
        TwinsCertificate {
            kind: TwinKind::Tight,
            multiplicity: sets.len(),
            length: 2,
            position_sets: sets,
            pattern,
        }
    }
}

/// Searches for a perfect matching between the halves of `p` under the given
/// orientation. Hopcroft-Karp over adjacency lists in ascending order, so the
/// result is deterministic.
pub fn match2(p: &Permutation, orientation: Orientation) -> Result<Option<MatchCertificate>, Error> {
    let n = p.len();
    if n == 0 || n % 2 != 0 {
        return Err(Error::InvalidInput("match2 needs an even, nonempty permutation"));
    }
    let h = n / 2;
    let vals = p.values();
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); h];
    for u in 0..h {
        for w in 0..h {
            let ok = match orientation {
                Orientation::Increasing => vals[u] < vals[h + w],
                Orientation::Decreasing => vals[u] > vals[h + w],
            };
            if ok {
                adj[u].push(w);
            }
        }
    }
    match hopcroft_karp(&adj, h) {
        None => Ok(None),
        Some(pair_u) => {
            let pairs = pair_u
                .iter()
                .enumerate()
                .map(|(u, &w)| (u + 1, h + w + 1))
                .collect();
            Ok(Some(MatchCertificate { orientation, pairs }))
        }
    }
}

const UNMATCHED: usize = usize::MAX;

/// Returns `pair_u` (left vertex to right vertex) if the matching is perfect.
fn hopcroft_karp(adj: &[Vec<usize>], h: usize) -> Option<Vec<usize>> {
    let mut pair_u = vec![UNMATCHED; h];
    let mut pair_w = vec![UNMATCHED; h];
    let mut dist = vec![usize::MAX; h];
    let mut matched = 0;
    loop {
        if !hk_bfs(adj, &pair_u, &pair_w, &mut dist) {
            break;
        }
        for u in 0..h {
            if pair_u[u] == UNMATCHED && hk_dfs(adj, u, &mut pair_u, &mut pair_w, &mut dist) {
                matched += 1;
            }
        }
    }
    (matched == h).then_some(pair_u)
}

fn hk_bfs(adj: &[Vec<usize>], pair_u: &[usize], pair_w: &[usize], dist: &mut [usize]) -> bool {
    let mut queue = VecDeque::new();
    for u in 0..adj.len() {
        if pair_u[u] == UNMATCHED {
            dist[u] = 0;
            queue.push_back(u);
        } else {
            dist[u] = usize::MAX;
        }
    }
    let mut reachable = false;
    while let Some(u) = queue.pop_front() {
        for &w in &adj[u] {
            match pair_w[w] {
                UNMATCHED => reachable = true,
                next => {
                    if dist[next] == usize::MAX {
                        dist[next] = dist[u] + 1;
                        queue.push_back(next);
                    }
                }
            }
        }
    }
    reachable
}

fn hk_dfs(adj: &[Vec<usize>], u: usize, pair_u: &mut [usize], pair_w: &mut [usize], dist: &mut [usize]) -> bool {
    for idx in 0..adj[u].len() {
        let w = adj[u][idx];
        let advance = match pair_w[w] {
            UNMATCHED => true,
            next => dist[next] == dist[u] + 1 && hk_dfs(adj, next, pair_u, pair_w, dist),
        };
        if advance {
            pair_u[u] = w;
            pair_w[w] = u;
            return true;
        }
    }
    dist[u] = usize::MAX;
    false
}
