//! Seeded experiments on uniform random permutations: length statistics
//! of the three twin kinds, the half-to-half matching construction,
//! exact finite-n probability laws, and degree profiles of the
//! comparison graph.

use std::thread;

use serde::Serialize;
use twinperm_core::{match2, max_len, Error, Orientation, Pattern, Permutation, TwinKind};

use crate::search::next_perm;

/// Host-length cap for block statistics.
pub const BT_MAX_N: usize = 1_000_000;

/// Host-length cap for block-tight statistics.
pub const BTT_MAX_N: usize = 10_000;

/// Host-length cap for tight statistics.
///
/// An exact tight maximum must refute decomposability of every window,
/// and the refutation cost on random input grows like exp(c·√d) in the
/// window length d (measured c ≈ 1.5: 38 µs at d=30, 225 ms at d=120,
/// hours past d=250). Longer hosts are refused rather than left to burn
/// CPU for days.
pub const TT_MAX_N: usize = 150;

/// Host-length cap for matching statistics.
pub const MATCH2_MAX_N: usize = 10_000;

/// Exhaustive sweeps enumerate all n! hosts; 8! is the desk limit.
pub const EXHAUSTIVE_MAX_N: usize = 8;

/// Exact probability checks enumerate all n! hosts.
pub const EXACT_PROB_MAX_N: usize = 8;

/// What is measured per sampled permutation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Statistic {
    /// Largest k with block r-twins of length k.
    BtLen,
    /// Largest k with tight r-twins of length k.
    TtLen,
    /// Largest k with block-tight r-twins of length k.
    BttLen,
    /// 1 when both orientations of the half-to-half matching succeed.
    Match2Success,
}

impl Statistic {
    pub const ALL: [Statistic; 4] = [
        Statistic::BtLen,
        Statistic::TtLen,
        Statistic::BttLen,
        Statistic::Match2Success,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Statistic::BtLen => "bt_len",
            Statistic::TtLen => "tt_len",
            Statistic::BttLen => "btt_len",
            Statistic::Match2Success => "match2_success",
        }
    }
}

impl std::str::FromStr for Statistic {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        match s {
            "bt_len" => Ok(Statistic::BtLen),
            "tt_len" => Ok(Statistic::TtLen),
            "btt_len" => Ok(Statistic::BttLen),
            "match2_success" => Ok(Statistic::Match2Success),
            _ => Err(Error::InvalidInput(
                "statistic must be one of bt_len, tt_len, btt_len, match2_success",
            )),
        }
    }
}

/// Aggregate of one experiment, serialized with this exact key order;
/// [`TrialStats::CSV_HEADER`] lists the same columns.
#[derive(Clone, Debug, Serialize)]
pub struct TrialStats {
    pub statistic: Statistic,
    pub n: usize,
    pub r: usize,
    pub trials: u64,
    pub seed: u64,
    pub mean: f64,
    pub var: f64,
    pub min: f64,
    pub max: f64,
    pub q05: f64,
    pub q50: f64,
    pub q95: f64,
    pub reference: f64,
}

impl TrialStats {
    pub const CSV_HEADER: &'static str =
        "statistic,n,r,trials,seed,mean,var,min,max,q05,q50,q95,reference";

    pub fn csv_row(&self) -> String {
        format!(
            "{},{},{},{},{},{},{},{},{},{},{},{},{}",
            self.statistic.name(),
            self.n,
            self.r,
            self.trials,
            self.seed,
            self.mean,
            self.var,
            self.min,
            self.max,
            self.q05,
            self.q50,
            self.q95,
            self.reference
        )
    }
}

/// splitmix64 of `seed + i·golden`, so every trial owns an independent
/// stream no matter how trials are split across workers.
pub fn trial_seed(seed: u64, i: u64) -> u64 {
    let mut z = seed.wrapping_add(i.wrapping_mul(0x9E37_79B9_7F4A_7C15));
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// The limit value the measured statistic is compared against: natural
/// logs, zero when log log n is not positive, 1 for the matching success
/// indicator.
pub fn reference_value(stat: Statistic, n: usize, r: usize) -> f64 {
    if let Statistic::Match2Success = stat {
        return 1.0;
    }
    let loglog = (n as f64).ln().ln();
    if loglog <= 0.0 {
        return 0.0;
    }
    let scale = (n as f64).ln() / loglog;
    let r = r as f64;
    match stat {
        Statistic::BtLen => r / (r - 1.0) * scale,
        Statistic::TtLen | Statistic::BttLen => 1.0 / (r - 1.0) * scale,
        Statistic::Match2Success => unreachable!(),
    }
}

fn sample_one(stat: Statistic, p: &Permutation, r: usize) -> f64 {
    let kind = match stat {
        Statistic::BtLen => TwinKind::Block,
        Statistic::TtLen => TwinKind::Tight,
        Statistic::BttLen => TwinKind::BlockTight,
        Statistic::Match2Success => {
            let both = match2(p, Orientation::Increasing).unwrap().is_some()
                && match2(p, Orientation::Decreasing).unwrap().is_some();
            return if both { 1.0 } else { 0.0 };
        }
    };
    max_len(p, r, kind).0 as f64
}

fn validate(stat: Statistic, n: usize, r: usize) -> Result<(), Error> {
    if r < 2 || n < r {
        return Err(Error::InvalidInput("statistics need n >= r >= 2"));
    }
    match stat {
        Statistic::BtLen if n > BT_MAX_N => {
            Err(Error::ResourceLimit("bt_len is limited to n <= 10^6"))
        }
        Statistic::TtLen if n > TT_MAX_N => Err(Error::ResourceLimit(
            "tt_len is limited to n <= 150; exact tight maxima grow as exp(c*sqrt(n))",
        )),
        Statistic::BttLen if n > BTT_MAX_N => {
            Err(Error::ResourceLimit("btt_len is limited to n <= 10^4"))
        }
        Statistic::Match2Success if n % 2 != 0 => {
            Err(Error::InvalidInput("match2_success needs even n"))
        }
        Statistic::Match2Success if n > MATCH2_MAX_N => {
            Err(Error::ResourceLimit("match2_success is limited to n <= 10^4"))
        }
        _ => Ok(()),
    }
}

fn aggregate(
    stat: Statistic,
    n: usize,
    r: usize,
    trials: u64,
    seed: u64,
    samples: Vec<f64>,
) -> TrialStats {
    let count = samples.len() as f64;
    let mean = samples.iter().sum::<f64>() / count;
    let var = if samples.len() < 2 {
        0.0
    } else {
        samples.iter().map(|x| (x - mean) * (x - mean)).sum::<f64>() / (count - 1.0)
    };
    let mut sorted = samples;
    sorted.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let quantile = |p: f64| {
        let rank = (p * sorted.len() as f64).ceil() as usize;
        sorted[rank.max(1) - 1]
    };
    TrialStats {
        statistic: stat,
        n,
        r,
        trials,
        seed,
        mean,
        var,
        min: sorted[0],
        max: sorted[sorted.len() - 1],
        q05: quantile(0.05),
        q50: quantile(0.50),
        q95: quantile(0.95),
        reference: reference_value(stat, n, r),
    }
}

/// Draws `trials` uniform hosts of length n and aggregates the statistic.
/// Trials are split into contiguous chunks across workers and reassembled
/// in trial order, so the result is identical for any worker count.
pub fn estimate_stat(
    stat: Statistic,
    n: usize,
    r: usize,
    trials: u64,
    seed: u64,
    workers: usize,
) -> Result<TrialStats, Error> {
    validate(stat, n, r)?;
    if trials == 0 {
        return Err(Error::InvalidInput("trials must be at least 1"));
    }
    if workers == 0 {
        return Err(Error::InvalidInput("workers must be at least 1"));
    }
    let workers = workers.min(trials as usize);
    let chunk = trials / workers as u64;
    let extra = trials % workers as u64;
    let samples = thread::scope(|s| {
        let mut handles = Vec::with_capacity(workers);
        let mut lo = 0u64;
        for w in 0..workers as u64 {
            let hi = lo + chunk + if w < extra { 1 } else { 0 };
            handles.push(s.spawn(move || {
                (lo..hi)
                    .map(|i| {
                        let p = Permutation::random(n, trial_seed(seed, i)).unwrap();
                        sample_one(stat, &p, r)
                    })
                    .collect::<Vec<f64>>()
            }));
            lo = hi;
        }
        let mut samples = Vec::with_capacity(trials as usize);
        for h in handles {
            samples.extend(h.join().expect("sampler thread"));
        }
        samples
    });
    Ok(aggregate(stat, n, r, trials, seed, samples))
}

/// The same aggregate over every canonical host of length n instead of a
/// random sample; `trials` reports n! and the seed is fixed at zero.
pub fn exhaustive_stat(stat: Statistic, n: usize, r: usize) -> Result<TrialStats, Error> {
    validate(stat, n, r)?;
    if n > EXHAUSTIVE_MAX_N {
        return Err(Error::ResourceLimit("exhaustive sweeps are limited to n <= 8"));
    }
    let mut vals: Vec<i64> = (1..=n as i64).collect();
    let mut samples = Vec::new();
    loop {
        let p = Permutation::new(vals.clone()).unwrap();
        samples.push(sample_one(stat, &p, r));
        if !next_perm(&mut vals) {
            break;
        }
    }
    let trials = samples.len() as u64;
    Ok(aggregate(stat, n, r, trials, 0, samples))
}

/// One probability measurement against its closed-form value.
#[derive(Clone, Debug, Serialize)]
pub struct ProbReport {
    pub n: usize,
    pub trials: u64,
    pub hits: u64,
    pub probability: f64,
    pub reference: f64,
    pub exact: bool,
}

fn checked_sets(n: usize, r: usize, k: usize, sets: &[Vec<usize>]) -> Result<Vec<Vec<usize>>, Error> {
    if r == 0 || k == 0 {
        return Err(Error::InvalidInput("probability checks need r >= 1 and k >= 1"));
    }
    if sets.len() != r {
        return Err(Error::InvalidInput("expected exactly r position sets"));
    }
    let mut seen = vec![false; n + 1];
    let mut out = Vec::with_capacity(r);
    for set in sets {
        if set.len() != k {
            return Err(Error::InvalidInput("every position set must have k elements"));
        }
        let mut s = set.clone();
        s.sort_unstable();
        for &pos in &s {
            if pos == 0 || pos > n {
                return Err(Error::InvalidInput("positions must lie in 1..=n"));
            }
            if seen[pos] {
                return Err(Error::InvalidInput("position sets must be pairwise disjoint"));
            }
            seen[pos] = true;
        }
        out.push(s);
    }
    Ok(out)
}

fn sets_similar(p: &Permutation, sets: &[Vec<usize>]) -> bool {
    let vals = p.values();
    let first: Vec<i64> = sets[0].iter().map(|&pos| vals[pos - 1]).collect();
    let pat = Pattern::of(&first);
    sets[1..].iter().all(|set| {
        let sub: Vec<i64> = set.iter().map(|&pos| vals[pos - 1]).collect();
        Pattern::of(&sub) == pat
    })
}

fn factorial_u64(n: usize) -> u64 {
    (2..=n as u64).product()
}

/// Probability that r fixed disjoint position sets of size k carry
/// pairwise similar subsequences: exactly k!^-(r-1), independent of the
/// choice of sets. Hosts up to length 8 are enumerated exactly and the
/// identity hits·k!^(r-1) = n! holds; longer hosts are sampled.
pub fn check_eq1(
    n: usize,
    r: usize,
    k: usize,
    sets: &[Vec<usize>],
    trials: u64,
    seed: u64,
) -> Result<ProbReport, Error> {
    let sets = checked_sets(n, r, k, sets)?;
    let reference = 1.0 / (factorial_u64(k) as f64).powi(r as i32 - 1);
    if n <= EXACT_PROB_MAX_N {
        let mut vals: Vec<i64> = (1..=n as i64).collect();
        let mut hits = 0u64;
        loop {
            let p = Permutation::new(vals.clone()).unwrap();
            if sets_similar(&p, &sets) {
                hits += 1;
            }
            if !next_perm(&mut vals) {
                break;
            }
        }
        let total = factorial_u64(n);
        return Ok(ProbReport {
            n,
            trials: total,
            hits,
            probability: hits as f64 / total as f64,
            reference,
            exact: true,
        });
    }
    if trials == 0 {
        return Err(Error::InvalidInput("trials must be at least 1"));
    }
    let mut hits = 0u64;
    for i in 0..trials {
        let p = Permutation::random(n, trial_seed(seed, i)).unwrap();
        if sets_similar(&p, &sets) {
            hits += 1;
        }
    }
    Ok(ProbReport {
        n,
        trials,
        hits,
        probability: hits as f64 / trials as f64,
        reference,
        exact: false,
    })
}

/// Exact verdict on whether two similarity events on disjoint supports
/// are independent; `equal` compares integer counts, never floats.
#[derive(Clone, Debug, Serialize)]
pub struct IndependenceReport {
    pub n: usize,
    pub total: u64,
    pub joint_count: u64,
    pub count1: u64,
    pub count2: u64,
    pub lhs: f64,
    pub rhs: f64,
    pub equal: bool,
}

/// Tests P(both families similar) = P(first)·P(second) by exact
/// enumeration of S_n. The two families must occupy disjoint positions.
pub fn check_independence(
    n: usize,
    r: usize,
    k: usize,
    sets1: &[Vec<usize>],
    sets2: &[Vec<usize>],
) -> Result<IndependenceReport, Error> {
    if n > EXACT_PROB_MAX_N {
        return Err(Error::ResourceLimit("independence checks are limited to n <= 8"));
    }
    let s1 = checked_sets(n, r, k, sets1)?;
    let s2 = checked_sets(n, r, k, sets2)?;
    let mut seen = vec![false; n + 1];
    for pos in s1.iter().flatten().chain(s2.iter().flatten()) {
        if seen[*pos] {
            return Err(Error::InvalidInput("the two families must occupy disjoint positions"));
        }
        seen[*pos] = true;
    }
    let mut vals: Vec<i64> = (1..=n as i64).collect();
    let (mut c1, mut c2, mut joint) = (0u64, 0u64, 0u64);
    loop {
        let p = Permutation::new(vals.clone()).unwrap();
        let a = sets_similar(&p, &s1);
        let b = sets_similar(&p, &s2);
        c1 += a as u64;
        c2 += b as u64;
        joint += (a && b) as u64;
        if !next_perm(&mut vals) {
            break;
        }
    }
    let total = factorial_u64(n);
    Ok(IndependenceReport {
        n,
        total,
        joint_count: joint,
        count1: c1,
        count2: c2,
        lhs: joint as f64 / total as f64,
        rhs: (c1 as f64 / total as f64) * (c2 as f64 / total as f64),
        equal: joint as u128 * total as u128 == c1 as u128 * c2 as u128,
    })
}

/// Vertex degrees of the half-to-half comparison graph.
///
/// `degrees[i]` counts right-half entries exceeding the value at left
/// position i+1; `codegrees` holds the same count for the larger value
/// of sampled left pairs.
#[derive(Clone, Debug)]
pub struct DegreeProfile {
    pub degrees: Vec<usize>,
    pub codegrees: Vec<usize>,
}

pub fn degree_profile(
    p: &Permutation,
    pair_samples: usize,
    seed: u64,
) -> Result<DegreeProfile, Error> {
    let n = p.len();
    if n == 0 || n % 2 != 0 {
        return Err(Error::InvalidInput("degree profiles need an even, nonempty host"));
    }
    let r = n / 2;
    let vals = p.values();
    let mut right: Vec<i64> = vals[r..].to_vec();
    right.sort_unstable();
    let above = |v: i64| right.len() - right.partition_point(|&w| w <= v);
    let degrees: Vec<usize> = vals[..r].iter().map(|&v| above(v)).collect();
    let mut codegrees = Vec::new();
    if r >= 2 {
        let mut state = seed;
        let mut draw = |bound: usize| {
            state = trial_seed(state, 0x9E37_79B9);
            (state % bound as u64) as usize
        };
        for _ in 0..pair_samples {
            let i = draw(r);
            let mut j = draw(r);
            while j == i {
                j = draw(r);
            }
            codegrees.push(above(vals[i].max(vals[j])));
        }
    }
    Ok(DegreeProfile { degrees, codegrees })
}
