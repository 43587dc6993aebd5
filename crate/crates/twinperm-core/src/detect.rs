//! Detection of block, tight and block-tight twins, with certificates.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use crate::matching::{match2, Orientation};
use crate::perm::{Pattern, Permutation};
use crate::Error;

/// The three twin kinds handled by the engine.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TwinKind {
    /// Disjoint similar intervals, anywhere in the permutation.
    Block,
    /// Disjoint similar subsequences whose union is one interval.
    Tight,
    /// Consecutive similar intervals: block and tight at once.
    BlockTight,
}

impl TwinKind {
    pub fn name(self) -> &'static str {
        match self {
            TwinKind::Block => "block",
            TwinKind::Tight => "tight",
            TwinKind::BlockTight => "block-tight",
        }
    }
}

impl core::str::FromStr for TwinKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        match s {
            "block" => Ok(TwinKind::Block),
            "tight" => Ok(TwinKind::Tight),
            "block-tight" | "blocktight" => Ok(TwinKind::BlockTight),
            _ => Err(Error::InvalidInput("unknown twin kind")),
        }
    }
}

/// A verified witness: `multiplicity` disjoint position sets of size
/// `length`, all carrying the same reduced `pattern`.
///
/// Positions are 1-based. Each set is sorted ascending and the sets are
/// ordered by their first position.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwinsCertificate {
    pub kind: TwinKind,
    pub multiplicity: usize,
    pub length: usize,
    pub position_sets: Vec<Vec<usize>>,
    pub pattern: Pattern,
}

impl TwinsCertificate {
    /// Re-checks every claim of the certificate against `host`.
    pub fn validate(&self, host: &Permutation) -> Result<(), Error> {
        let n = host.len();
        let (r, k) = (self.multiplicity, self.length);
        if r == 0 || k == 0 {
            return Err(Error::InvalidInput("certificate with empty dimensions"));
        }
        if self.position_sets.len() != r {
            return Err(Error::InvalidInput("certificate set count differs from r"));
        }
        if self.pattern.len() != k {
            return Err(Error::InvalidInput("certificate pattern length differs from k"));
        }
        let mut all: Vec<usize> = Vec::with_capacity(r * k);
        for set in &self.position_sets {
            if set.len() != k {
                return Err(Error::InvalidInput("certificate set size differs from k"));
            }
            if set.windows(2).any(|w| w[0] >= w[1]) {
                return Err(Error::InvalidInput("certificate set not sorted"));
            }
            if set[0] < 1 || set[k - 1] > n {
                return Err(Error::InvalidInput("certificate position out of range"));
            }
            all.extend_from_slice(set);
        }
        all.sort_unstable();
        if all.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidInput("certificate sets overlap"));
        }
        if self
            .position_sets
            .windows(2)
            .any(|w| w[0][0] >= w[1][0])
        {
            return Err(Error::InvalidInput("certificate sets out of order"));
        }
        match self.kind {
            TwinKind::Block => {
                for set in &self.position_sets {
                    if !is_contiguous(set) {
                        return Err(Error::InvalidInput("block set is not an interval"));
                    }
                }
            }
            TwinKind::Tight => {
                if !is_contiguous(&all) {
                    return Err(Error::InvalidInput("tight union is not an interval"));
                }
            }
            TwinKind::BlockTight => {
                if !is_contiguous(&all) {
                    return Err(Error::InvalidInput("block-tight union is not an interval"));
                }
                for (j, set) in self.position_sets.iter().enumerate() {
                    if !is_contiguous(set) {
                        return Err(Error::InvalidInput("block-tight set is not an interval"));
                    }
                    if set[0] != all[0] + j * k {
                        return Err(Error::InvalidInput("block-tight blocks not consecutive"));
                    }
                }
            }
        }
        for set in &self.position_sets {
            let vals: Vec<i64> = set.iter().map(|&p| host.values()[p - 1]).collect();
            if Pattern::of(&vals) != self.pattern {
                return Err(Error::InvalidInput("certificate subsequence differs from pattern"));
            }
        }
        Ok(())
    }
}

fn is_contiguous(sorted: &[usize]) -> bool {
    sorted.windows(2).all(|w| w[1] == w[0] + 1)
}

/// Dispatches on the kind.
pub fn detect(p: &Permutation, kind: TwinKind, r: usize, k: usize) -> Option<TwinsCertificate> {
    match kind {
        TwinKind::Block => detect_block(p, r, k),
        TwinKind::Tight => detect_tight(p, r, k),
        TwinKind::BlockTight => detect_blocktight(p, r, k),
    }
}

/// Finds `r` pairwise disjoint similar intervals of length `k`.
///
/// Windows are bucketed by pattern; within a bucket a left-to-right greedy
/// selection of non-overlapping windows is optimal because all intervals have
/// equal length. The first pattern to complete `r` disjoint intervals wins,
/// which makes the reported certificate deterministic.
pub fn detect_block(p: &Permutation, r: usize, k: usize) -> Option<TwinsCertificate> {
    debug_assert!(r >= 1 && k >= 1);
    let n = p.len();
    if n < r * k {
        return None;
    }
    struct Bucket {
        starts: Vec<usize>,
        next_free: usize,
    }
    let mut buckets: BTreeMap<Vec<u32>, Bucket> = BTreeMap::new();
    for s in 0..=n - k {
        let pat = Pattern::of(p.window(s, k));
        let b = buckets.entry(pat.values().to_vec()).or_insert(Bucket {
            starts: Vec::new(),
            next_free: 0,
        });
        if s >= b.next_free {
            b.starts.push(s);
            b.next_free = s + k;
            if b.starts.len() == r {
                return Some(TwinsCertificate {
                    kind: TwinKind::Block,
                    multiplicity: r,
                    length: k,
                    position_sets: b.starts.iter().map(|&st| (st + 1..=st + k).collect()).collect(),
                    pattern: pat,
                });
            }
        }
    }
    None
}

/// Finds tight twins: scans windows of length `r * k` left to right and runs
/// a backtracking partition search inside each; the first window with a
/// valid partition wins and the assignment reported is the lexicographically
/// least one (positions are assigned to the lowest feasible group first).
pub fn detect_tight(p: &Permutation, r: usize, k: usize) -> Option<TwinsCertificate> {
    debug_assert!(r >= 1 && k >= 1);
    let n = p.len();
    let m = r * k;
    if n < m {
        return None;
    }
    if k == 1 {
        return Some(singleton_certificate(r));
    }
    let mut checker = TightChecker::new(r, k);
    for s in 0..=n - m {
        if let Some(assignment) = checker.try_partition(p.window(s, m)) {
            return Some(certificate_from_assignment(p, s, r, k, &assignment));
        }
    }
    None
}

/// Length-1 twins are singletons; the leftmost `r` positions always work.
fn singleton_certificate(r: usize) -> TwinsCertificate {
    TwinsCertificate {
        kind: TwinKind::Tight,
        multiplicity: r,
        length: 1,
        position_sets: (1..=r).map(|i| vec![i]).collect(),
        pattern: Pattern::of(&[1]),
    }
}

fn certificate_from_assignment(
    p: &Permutation,
    window_start: usize,
    r: usize,
    k: usize,
    assignment: &[u16],
) -> TwinsCertificate {
    let mut sets = vec![Vec::with_capacity(k); r];
    for (off, &g) in assignment.iter().enumerate() {
        sets[g as usize].push(window_start + off + 1);
    }
    let first: Vec<i64> = sets[0].iter().map(|&pos| p.values()[pos - 1]).collect();
    TwinsCertificate {
        kind: TwinKind::Tight,
        multiplicity: r,
        length: k,
        position_sets: sets,
        pattern: Pattern::of(&first),
    }
}

/// Reusable state for the tight-twin backtracker. Group vectors keep their
/// capacity between windows, which matters when scanning long permutations
/// or millions of search prefixes.
pub struct TightChecker {
    r: usize,
    k: usize,
    groups: Vec<Vec<i64>>,
    ins_ranks: Vec<Vec<u32>>,
    assignment: Vec<u16>,
}

impl TightChecker {
    pub fn new(r: usize, k: usize) -> Self {
        debug_assert!(r >= 1 && k >= 1);
        TightChecker {
            r,
            k,
            groups: vec![Vec::with_capacity(k); r],
            ins_ranks: vec![Vec::with_capacity(k); r],
            assignment: Vec::with_capacity(r * k),
        }
    }

    /// Decides whether `window` (of length `r * k`) splits into `r` pairwise
    /// similar subsequences of length `k`.
    pub fn check(&mut self, window: &[i64]) -> bool {
        if self.k == 1 {
            return true;
        }
        self.try_partition(window).is_some()
    }

    /// Tries to split `window` (of length `r * k`) into `r` pairwise similar
    /// subsequences of length `k`. Returns the lexicographically least group
    /// assignment, one group id per window offset.
    ///
    /// Three prunes keep the search shallow: full groups are skipped, group
    /// `j + 1` may open only after group `j` (each partition is visited once,
    /// labelled in order of first elements), and every placement must keep
    /// the prefixes of all groups pairwise order-isomorphic. The last rule is
    /// the workhorse: a placement is consistent iff the new element enters
    /// its group at the same rank as the corresponding element of every group
    /// that is already at least as long.
    pub(crate) fn try_partition(&mut self, window: &[i64]) -> Option<Vec<u16>> {
        debug_assert_eq!(window.len(), self.r * self.k);
        for g in &mut self.groups {
            g.clear();
        }
        for rks in &mut self.ins_ranks {
            rks.clear();
        }
        self.assignment.clear();
        if self.descend(window, 0, 0) {
            Some(self.assignment.clone())
        } else {
            None
        }
    }

    fn descend(&mut self, window: &[i64], idx: usize, opened: usize) -> bool {
        if idx == window.len() {
            return true;
        }
        let v = window[idx];
        let candidates = if opened < self.r { opened + 1 } else { opened };
        for g in 0..candidates {
            let len = self.groups[g].len();
            if len == self.k {
                continue;
            }
            let rank = self.groups[g].iter().filter(|&&x| x < v).count() as u32;
            let consistent = (0..opened)
                .filter(|&h| h != g)
                .all(|h| self.ins_ranks[h].len() <= len || self.ins_ranks[h][len] == rank);
            if !consistent {
                continue;
            }
            self.groups[g].push(v);
            self.ins_ranks[g].push(rank);
            self.assignment.push(g as u16);
            let now_open = opened.max(g + 1);
            if self.descend(window, idx + 1, now_open) {
                return true;
            }
            self.groups[g].pop();
            self.ins_ranks[g].pop();
            self.assignment.pop();
        }
        false
    }
}

/// Finds `r` consecutive blocks of length `k` sharing one pattern. Scans
/// starts left to right; block comparison bails out at the first order
/// disagreement, so random windows cost O(1) on average.
pub fn detect_blocktight(p: &Permutation, r: usize, k: usize) -> Option<TwinsCertificate> {
    debug_assert!(r >= 1 && k >= 1);
    let n = p.len();
    let m = r * k;
    if n < m {
        return None;
    }
    for s in 0..=n - m {
        let b0 = p.window(s, k);
        if (1..r).all(|j| blocks_similar(b0, p.window(s + j * k, k))) {
            let sets = (0..r)
                .map(|j| (s + j * k + 1..=s + (j + 1) * k).collect())
                .collect();
            return Some(TwinsCertificate {
                kind: TwinKind::BlockTight,
                multiplicity: r,
                length: k,
                position_sets: sets,
                pattern: Pattern::of(b0),
            });
        }
    }
    None
}

fn blocks_similar(a: &[i64], b: &[i64]) -> bool {
    for j in 1..a.len() {
        for i in 0..j {
            if (a[i] < a[j]) != (b[i] < b[j]) {
                return false;
            }
        }
    }
    true
}

/// Exhaustive reference check for tight twins on a single window.
///
/// Enumerates every partition of the window positions into `r` unordered
/// classes of size `k` (classes labelled by smallest element) and tests full
/// pairwise similarity only on complete partitions; no pruning beyond the
/// class sizes. Deliberately independent of the backtracker above.
pub fn oracle_tight(window: &Permutation, r: usize, k: usize) -> Result<bool, Error> {
    if r == 0 || k == 0 {
        return Err(Error::InvalidInput("oracle needs r >= 1 and k >= 1"));
    }
    if r * k > 12 {
        return Err(Error::ResourceLimit("oracle_tight is limited to r*k <= 12"));
    }
    if window.len() != r * k {
        return Err(Error::InvalidInput("oracle window length must be r*k"));
    }
    let mut used = vec![false; r * k];
    let mut classes: Vec<Vec<usize>> = Vec::with_capacity(r);
    Ok(oracle_next_class(window.values(), k, &mut used, &mut classes))
}

fn oracle_next_class(vals: &[i64], k: usize, used: &mut [bool], classes: &mut Vec<Vec<usize>>) -> bool {
    let first = match used.iter().position(|&u| !u) {
        None => return oracle_check(vals, classes),
        Some(f) => f,
    };
    used[first] = true;
    classes.push(vec![first]);
    let found = oracle_extend(vals, k, used, classes, first);
    classes.pop();
    used[first] = false;
    found
}

fn oracle_extend(vals: &[i64], k: usize, used: &mut [bool], classes: &mut Vec<Vec<usize>>, last: usize) -> bool {
    if classes.last().unwrap().len() == k {
        return oracle_next_class(vals, k, used, classes);
    }
    for cand in last + 1..vals.len() {
        if used[cand] {
            continue;
        }
        used[cand] = true;
        classes.last_mut().unwrap().push(cand);
        if oracle_extend(vals, k, used, classes, cand) {
            return true;
        }
        classes.last_mut().unwrap().pop();
        used[cand] = false;
    }
    false
}

fn oracle_check(vals: &[i64], classes: &[Vec<usize>]) -> bool {
    let sub = |class: &Vec<usize>| -> Vec<i64> { class.iter().map(|&i| vals[i]).collect() };
    let head = Pattern::of(&sub(&classes[0]));
    classes[1..].iter().all(|c| Pattern::of(&sub(c)) == head)
}

/// Block containment is monotone in the length: shortening every block of an
/// `r`-twin family from the left yields a family of any smaller length. The
/// ascending block scan therefore stops at the first failing `k`. Tight and
/// block-tight twins have no such monotonicity and must scan every `k`.
pub const BLOCK_SCAN_MONOTONE: bool = true;

/// The largest `k` for which `p` contains twins of the given kind and
/// multiplicity, with a witness. Returns `(0, None)` when `p` is shorter
/// than `r`.
pub fn max_len(p: &Permutation, r: usize, kind: TwinKind) -> (usize, Option<TwinsCertificate>) {
    debug_assert!(r >= 1);
    let n = p.len();
    if n < r {
        return (0, None);
    }
    match kind {
        TwinKind::Block if BLOCK_SCAN_MONOTONE => {
            let mut best = (0, None);
            for k in 1..=n / r {
                match detect_block(p, r, k) {
                    Some(cert) => best = (k, Some(cert)),
                    None => break,
                }
            }
            best
        }
        TwinKind::Block => {
            for k in (1..=n / r).rev() {
                if let Some(cert) = detect_block(p, r, k) {
                    return (k, Some(cert));
                }
            }
            (0, None)
        }
        TwinKind::Tight => {
            // Descending scan; each k is decided independently.
            for k in (2..=n / r).rev() {
                let mut scratch = TightChecker::new(r, k);
                let m = r * k;
                for s in 0..=n - m {
                    if let Some(assignment) = scratch.try_partition(p.window(s, m)) {
                        return (k, Some(certificate_from_assignment(p, s, r, k, &assignment)));
                    }
                }
            }
            (1, Some(singleton_certificate(r)))
        }
        TwinKind::BlockTight => {
            for k in (1..=n / r).rev() {
                if let Some(cert) = detect_blocktight(p, r, k) {
                    return (k, Some(cert));
                }
            }
            (0, None)
        }
    }
}

/// The largest multiplicity `r` for which `p` contains twins of length `k`.
/// Only block and tight twins are meaningful here. `r = 1` is always
/// achievable once `p` has at least `k` entries.
pub fn r_max(
    p: &Permutation,
    k: usize,
    kind: TwinKind,
) -> Result<(usize, Option<TwinsCertificate>), Error> {
    if k == 0 {
        return Err(Error::InvalidInput("r_max needs k >= 1"));
    }
    let n = p.len();
    if n < k {
        return Err(Error::InvalidInput("r_max needs a permutation of length >= k"));
    }
    match kind {
        TwinKind::Block => Ok(r_max_block(p, k)),
        TwinKind::Tight => Ok(r_max_tight(p, k)),
        TwinKind::BlockTight => Err(Error::InvalidInput("r_max is defined for block and tight kinds")),
    }
}

fn r_max_block(p: &Permutation, k: usize) -> (usize, Option<TwinsCertificate>) {
    let n = p.len();
    struct Bucket {
        starts: Vec<usize>,
        next_free: usize,
    }
    let mut buckets: BTreeMap<Vec<u32>, Bucket> = BTreeMap::new();
    for s in 0..=n - k {
        let pat = Pattern::of(p.window(s, k));
        let b = buckets.entry(pat.values().to_vec()).or_insert(Bucket {
            starts: Vec::new(),
            next_free: 0,
        });
        if s >= b.next_free {
            b.starts.push(s);
            b.next_free = s + k;
        }
    }
    // Deterministic winner: highest count, ties broken by the lexicographically
    // earlier list of starts.
    let mut best: Option<Vec<usize>> = None;
    for bucket in buckets.values() {
        let better = match &best {
            None => true,
            Some(b) => {
                bucket.starts.len() > b.len() || (bucket.starts.len() == b.len() && bucket.starts < *b)
            }
        };
        if better {
            best = Some(bucket.starts.clone());
        }
    }
    let starts = best.expect("at least one window");
    let r = starts.len();
    let cert = TwinsCertificate {
        kind: TwinKind::Block,
        multiplicity: r,
        length: k,
        position_sets: starts.iter().map(|&st| (st + 1..=st + k).collect()).collect(),
        pattern: Pattern::of(p.window(starts[0], k)),
    };
    (r, Some(cert))
}

fn r_max_tight(p: &Permutation, k: usize) -> (usize, Option<TwinsCertificate>) {
    let n = p.len();
    if k == 1 {
        // Singletons: the whole permutation splits into n twins of length 1.
        return (n, Some(singleton_certificate(n)));
    }
    // A perfect matching between the two halves certifies the maximum
    // multiplicity n/2 for k = 2 without any search.
    if k == 2 && n % 2 == 0 {
        for orientation in [Orientation::Increasing, Orientation::Decreasing] {
            if let Ok(Some(m)) = match2(p, orientation) {
                return (n / 2, Some(m.to_twins_certificate(p)));
            }
        }
    }
    for r in (2..=n / k).rev() {
        if let Some(cert) = detect_tight(p, r, k) {
            return (r, Some(cert));
        }
    }
    let cert = TwinsCertificate {
        kind: TwinKind::Tight,
        multiplicity: 1,
        length: k,
        position_sets: vec![(1..=k).collect()],
        pattern: Pattern::of(p.window(0, k)),
    };
    (1, Some(cert))
}
