//! Exhaustive verification of the threshold f(r,k) and exact counts of
//! fully decomposable windows.
//!
//! The avoider search walks prefixes of canonical permutations depth
//! first and prunes a subtree as soon as the newest complete window of
//! length `rk` forms tight r-twins. Every occurrence of tight twins is
//! confined to such a window, so a prefix that survives to full length
//! is exactly an avoider, and the first one met in lexicographic order
//! is the least one.

use std::collections::BTreeMap;
use std::sync::atomic::{AtomicU64, AtomicUsize, Ordering};
use std::sync::Mutex;
use std::thread;
use std::time::Instant;

use serde::Serialize;
use twinperm_core::{detect_tight, oracle_tight, Error, Permutation, TightChecker};

/// `compute_f` refuses scans beyond this length unless overridden;
/// 13! territory wants a distributed search, not a laptop.
pub const LARGE_N_GUARD: usize = 14;

/// Window-count guard for [`count_q`].
pub const COUNT_Q_GUARD: usize = 10;

/// Prefix depth at which the search tree is split into independent shards.
const SHARD_DEPTH: usize = 3;

/// How one exhaustive scan of S_n ended.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum SearchOutcome {
    #[serde(rename = "avoider-found")]
    AvoiderFound,
    #[serde(rename = "exhausted")]
    Exhausted,
}

/// Result of one avoider scan, serialized with this exact key order.
///
/// `outcome` and `witness` are deterministic for any worker count; the
/// two counters depend on scheduling (aborted shards stop counting at
/// different points) and are reported as observed.
#[derive(Clone, Debug, Serialize)]
pub struct SearchReport {
    pub r: usize,
    pub k: usize,
    pub n: usize,
    pub outcome: SearchOutcome,
    pub witness: Option<Vec<i64>>,
    pub nodes_visited: u64,
    pub prefixes_pruned: u64,
    pub wall_time_s: f64,
    pub worker_count: usize,
}

const FACT: [usize; 9] = [1, 1, 2, 6, 24, 120, 720, 5040, 40320];

/// Advances `v` to its lexicographic successor, false at the last one.
pub(crate) fn next_perm(v: &mut [i64]) -> bool {
    if v.len() < 2 {
        return false;
    }
    let mut i = v.len() - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = v.len() - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

fn lehmer_index(w: &[i64]) -> usize {
    let m = w.len();
    let mut idx = 0;
    for i in 0..m {
        let mut c = 0;
        for j in i + 1..m {
            if w[j] < w[i] {
                c += 1;
            }
        }
        idx += c * FACT[m - 1 - i];
    }
    idx
}

/// Decomposability of every length-m pattern, indexed by Lehmer code.
fn build_window_table(r: usize, k: usize) -> Vec<bool> {
    let m = r * k;
    let mut table = vec![false; FACT[m]];
    let mut vals: Vec<i64> = (1..=m as i64).collect();
    loop {
        let p = Permutation::new(vals.clone()).unwrap();
        table[lehmer_index(&vals)] = oracle_tight(&p, r, k).unwrap();
        if !next_perm(&mut vals) {
            break;
        }
    }
    table
}

/// Decides whether a window forms tight r-twins: table lookup when the
/// window is short enough to precompute, backtracking otherwise.
struct WindowCheck<'a> {
    table: Option<&'a [bool]>,
    checker: TightChecker,
}

impl<'a> WindowCheck<'a> {
    fn new(r: usize, k: usize, table: Option<&'a [bool]>) -> Self {
        WindowCheck {
            table,
            checker: TightChecker::new(r, k),
        }
    }

    fn has_twins(&mut self, w: &[i64]) -> bool {
        match self.table {
            Some(t) => t[lehmer_index(w)],
            None => self.checker.check(w),
        }
    }
}

/// Lexicographic prefixes of depth min(3, n) surviving the window checks,
/// first value capped at ⌈n/2⌉. Complementation acts position-wise and
/// preserves twins, so an avoider exists iff one starts at or below the
/// midpoint; the cap halves the tree without touching the outcome, and
/// the global least avoider itself satisfies it.
fn gen_shards(n: usize, m: usize, check: &mut WindowCheck) -> Vec<Vec<i64>> {
    fn rec(
        n: usize,
        m: usize,
        depth: usize,
        cur: &mut Vec<i64>,
        used: u32,
        check: &mut WindowCheck,
        out: &mut Vec<Vec<i64>>,
    ) {
        if cur.len() == depth {
            out.push(cur.clone());
            return;
        }
        let hi = if cur.is_empty() { (n + 1) / 2 } else { n };
        for v in 1..=hi as i64 {
            let bit = 1u32 << (v - 1);
            if used & bit != 0 {
                continue;
            }
            cur.push(v);
            let len = cur.len();
            if !(len >= m && check.has_twins(&cur[len - m..])) {
                rec(n, m, depth, cur, used | bit, check, out);
            }
            cur.pop();
        }
    }
    let mut shards = Vec::new();
    rec(n, m, SHARD_DEPTH.min(n), &mut Vec::new(), 0, check, &mut shards);
    shards
}

enum Walk {
    Dead,
    Aborted,
    Witness,
}

struct ShardRun<'a> {
    n: usize,
    m: usize,
    vals: Vec<i64>,
    used: u32,
    nodes: u64,
    pruned: u64,
    tick: u32,
    best: &'a AtomicUsize,
    index: usize,
    witness: Option<Vec<i64>>,
}

impl ShardRun<'_> {
    fn walk(&mut self, check: &mut WindowCheck) -> Walk {
        if self.vals.len() == self.n {
            self.witness = Some(self.vals.clone());
            return Walk::Witness;
        }
        self.tick = self.tick.wrapping_add(1);
        if self.tick & 0x3FF == 0 && self.best.load(Ordering::Relaxed) < self.index {
            return Walk::Aborted;
        }
        for v in 1..=self.n as i64 {
            let bit = 1u32 << (v - 1);
            if self.used & bit != 0 {
                continue;
            }
            self.vals.push(v);
            self.used |= bit;
            let len = self.vals.len();
            let mut result = Walk::Dead;
            if len >= self.m && check.has_twins(&self.vals[len - self.m..]) {
                self.pruned += 1;
            } else {
                self.nodes += 1;
                result = self.walk(check);
            }
            self.vals.pop();
            self.used &= !bit;
            match result {
                Walk::Dead => {}
                w => return w,
            }
        }
        Walk::Dead
    }
}

/// Scans a complement transversal of S_n for a permutation free of tight
/// r-twins of length k. Outcome and witness are independent of
/// `worker_count`; the witness, when present, is the lexicographically
/// least avoider.
pub fn exists_avoider(
    n: usize,
    r: usize,
    k: usize,
    worker_count: usize,
) -> Result<SearchReport, Error> {
    if r < 2 || k == 0 {
        return Err(Error::InvalidInput("exists_avoider needs r >= 2 and k >= 1"));
    }
    if worker_count == 0 {
        return Err(Error::InvalidInput("worker_count must be at least 1"));
    }
    if n > 32 {
        return Err(Error::ResourceLimit("exists_avoider is limited to n <= 32"));
    }
    let start = Instant::now();
    let m = r * k;
    let mut report = SearchReport {
        r,
        k,
        n,
        outcome: SearchOutcome::AvoiderFound,
        witness: None,
        nodes_visited: 0,
        prefixes_pruned: 0,
        wall_time_s: 0.0,
        worker_count,
    };
    if n < m {
        report.witness = Some(Permutation::identity(n).values().to_vec());
        report.wall_time_s = start.elapsed().as_secs_f64();
        return Ok(report);
    }

    let table = if m <= 8 {
        Some(build_window_table(r, k))
    } else {
        None
    };
    let table = table.as_deref();
    let shards = gen_shards(n, m, &mut WindowCheck::new(r, k, table));

    let next = AtomicUsize::new(0);
    let best = AtomicUsize::new(usize::MAX);
    let nodes = AtomicU64::new(0);
    let pruned = AtomicU64::new(0);
    let found: Mutex<BTreeMap<usize, Vec<i64>>> = Mutex::new(BTreeMap::new());

    thread::scope(|s| {
        for _ in 0..worker_count {
            s.spawn(|| {
                let mut check = WindowCheck::new(r, k, table);
                loop {
                    let i = next.fetch_add(1, Ordering::Relaxed);
                    if i >= shards.len() {
                        break;
                    }
                    // A shard above the current best cannot hold the least
                    // witness; shards below it are never abandoned, which
                    // keeps the final minimum scheduling-independent.
                    if best.load(Ordering::Relaxed) < i {
                        continue;
                    }
                    let prefix = &shards[i];
                    let mut st = ShardRun {
                        n,
                        m,
                        vals: prefix.clone(),
                        used: prefix.iter().fold(0u32, |acc, &v| acc | 1 << (v - 1)),
                        nodes: 0,
                        pruned: 0,
                        tick: 0,
                        best: &best,
                        index: i,
                        witness: None,
                    };
                    let walk = st.walk(&mut check);
                    nodes.fetch_add(st.nodes, Ordering::Relaxed);
                    pruned.fetch_add(st.pruned, Ordering::Relaxed);
                    if let Walk::Witness = walk {
                        let w = st.witness.expect("witness recorded on success");
                        found.lock().unwrap().insert(i, w);
                        best.fetch_min(i, Ordering::Relaxed);
                    }
                }
            });
        }
    });

    report.nodes_visited = nodes.into_inner();
    report.prefixes_pruned = pruned.into_inner();
    let found = found.into_inner().unwrap();
    match found.into_iter().next() {
        Some((_, w)) => {
            debug_assert!(detect_tight(&Permutation::new(w.clone()).unwrap(), r, k).is_none());
            report.witness = Some(w);
        }
        None => report.outcome = SearchOutcome::Exhausted,
    }
    report.wall_time_s = start.elapsed().as_secs_f64();
    Ok(report)
}

/// Full S_n sweep with no pruning and no symmetry, as a cross-check for
/// the sharded search. Cost is n! detector calls.
pub fn naive_exists_avoider(n: usize, r: usize, k: usize) -> Result<Option<Permutation>, Error> {
    if r < 2 || k == 0 {
        return Err(Error::InvalidInput("naive_exists_avoider needs r >= 2 and k >= 1"));
    }
    let mut vals: Vec<i64> = (1..=n as i64).collect();
    loop {
        let p = Permutation::new(vals.clone()).unwrap();
        if detect_tight(&p, r, k).is_none() {
            return Ok(Some(p));
        }
        if !next_perm(&mut vals) {
            return Ok(None);
        }
    }
}

/// Least n ≤ n_max whose scan exhausts, plus every report along the way.
/// Each n is decided independently; nothing is inferred from neighbours.
pub fn compute_f(
    r: usize,
    k: usize,
    n_max: usize,
    worker_count: usize,
    allow_large: bool,
) -> Result<(Option<usize>, Vec<SearchReport>), Error> {
    if r < 2 || k == 0 {
        return Err(Error::InvalidInput("compute_f needs r >= 2 and k >= 1"));
    }
    if n_max < r * k {
        return Err(Error::InvalidInput("n_max must be at least r*k"));
    }
    if n_max > LARGE_N_GUARD && !allow_large {
        return Err(Error::ResourceLimit(
            "compute_f refuses n_max > 14 without an explicit override",
        ));
    }
    let mut reports = Vec::new();
    for n in r * k..=n_max {
        let rep = exists_avoider(n, r, k, worker_count)?;
        let exhausted = rep.outcome == SearchOutcome::Exhausted;
        reports.push(rep);
        if exhausted {
            return Ok((Some(n), reports));
        }
    }
    Ok((None, reports))
}

/// Number of permutations of [rk] that decompose entirely into r
/// pairwise similar subsequences of length k.
pub fn count_q(r: usize, k: usize) -> Result<u64, Error> {
    if r == 0 || k == 0 {
        return Err(Error::InvalidInput("count_q needs r >= 1 and k >= 1"));
    }
    let m = r * k;
    if m > COUNT_Q_GUARD {
        return Err(Error::ResourceLimit("count_q is limited to r*k <= 10"));
    }
    let mut vals: Vec<i64> = (1..=m as i64).collect();
    let mut count = 0u64;
    loop {
        let p = Permutation::new(vals.clone()).unwrap();
        if oracle_tight(&p, r, k)? {
            count += 1;
        }
        if !next_perm(&mut vals) {
            break;
        }
    }
    Ok(count)
}
