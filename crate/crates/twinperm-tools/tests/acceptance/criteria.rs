//! One test per headline claim, ordered a01..a11. Quantities that a
//! claim pins exactly are asserted exactly; the two statistical claims
//! (a09, a10) state required thresholds next to what was measured and
//! fail when the measurement misses them.

use std::time::Instant;

use twinperm_core::{
    build_alternating, build_pi_k, build_pi_rk, build_quadratic, build_small_witness, detect,
    detect_tight, match2, oracle_tight, r_max, Error, Orientation, Pattern, Permutation, TwinKind,
    TwinsCertificate, WitnessName,
};
use twinperm_tools::montecarlo::{
    check_eq1, check_independence, degree_profile, estimate_stat, trial_seed, Statistic,
};
use twinperm_tools::search::{compute_f, count_q, exists_avoider, naive_exists_avoider, SearchOutcome};

const SEED: u64 = 0x5EED;

fn verdict(id: &str, what: &str, pass: bool, evidence: &str) {
    println!("[{id}] {what}: {} ({evidence})", if pass { "PASS" } else { "FAIL" });
}

/// Lexicographic successor in place; false once `v` is the last one.
fn next_perm(v: &mut [i64]) -> bool {
    let n = v.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

fn for_each_canonical(n: usize, mut f: impl FnMut(&Permutation)) {
    let mut vals: Vec<i64> = (1..=n as i64).collect();
    loop {
        f(&Permutation::new(vals.clone()).unwrap());
        if !next_perm(&mut vals) {
            break;
        }
    }
}

fn factorial(n: usize) -> u128 {
    (1..=n as u128).product()
}

#[test]
fn a01_least_full_length_for_tight_pair_twins_is_six() {
    let t0 = Instant::now();
    let five = exists_avoider(5, 2, 2, 1).unwrap();
    assert_eq!(five.outcome, SearchOutcome::AvoiderFound);
    let found = Permutation::new(five.witness.clone().unwrap()).unwrap();
    assert!(detect_tight(&found, 2, 2).is_none());

    let pi2 = build_small_witness(WitnessName::Pi2);
    assert_eq!(pi2.len(), 5);
    assert!(detect_tight(&pi2, 2, 2).is_none());

    let six = exists_avoider(6, 2, 2, 1).unwrap();
    assert_eq!(six.outcome, SearchOutcome::Exhausted);
    assert!(naive_exists_avoider(6, 2, 2).unwrap().is_none());

    let secs = t0.elapsed().as_secs_f64();
    let pass = secs < 1.0;
    verdict(
        "a01",
        "length 6 forces tight 2-twins of length 2",
        pass,
        &format!(
            "avoider {} at n=5, pruned and naive scans both exhaust n=6, {:.3} s (budget 1 s)",
            found, secs
        ),
    );
    assert!(pass, "runtime {secs:.3} s exceeded the 1 s budget");
}

#[test]
fn a02_least_full_length_for_tight_triple_twins_is_twelve() {
    let t0 = Instant::now();
    let eleven = exists_avoider(11, 3, 2, 8).unwrap();
    assert_eq!(eleven.outcome, SearchOutcome::AvoiderFound);

    let pi3 = build_small_witness(WitnessName::Pi3);
    assert_eq!(pi3.len(), 11);
    assert!(detect_tight(&pi3, 3, 2).is_none());

    let twelve = exists_avoider(12, 3, 2, 8).unwrap();
    assert_eq!(twelve.outcome, SearchOutcome::Exhausted);
    let secs8 = t0.elapsed().as_secs_f64();

    let t1 = Instant::now();
    let eleven1 = exists_avoider(11, 3, 2, 1).unwrap();
    let twelve1 = exists_avoider(12, 3, 2, 1).unwrap();
    let secs1 = t1.elapsed().as_secs_f64();
    assert_eq!(eleven1.outcome, eleven.outcome);
    assert_eq!(eleven1.witness, eleven.witness);
    assert_eq!(twelve1.outcome, twelve.outcome);

    let (f, _) = compute_f(3, 2, 12, 8, false).unwrap();
    assert_eq!(f, Some(12));

    let pass = secs8 < 1800.0;
    verdict(
        "a02",
        "length 12 forces tight 3-twins of length 2",
        pass,
        &format!(
            "avoider at n=11, S_12 exhausted; workers 8 vs 1 agree, {:.2} s / {:.2} s (budget 1800 s)",
            secs8, secs1
        ),
    );
    assert!(pass, "runtime {secs8:.2} s exceeded the 30 min budget");
}

#[test]
fn a03_constructions_avoid_their_target_twins() {
    let t0 = Instant::now();
    let mut checks = 0usize;

    for k in [2usize, 3, 4] {
        let block = 2 * k - 1;
        for m in 1..=8 {
            let p = build_pi_k(k, m * block).unwrap();
            for len in [2 * k - 1, 2 * k] {
                assert!(
                    detect_tight(&p, 2, len).is_none(),
                    "staircase k={k} n={} has tight 2-twins of length {len}",
                    m * block
                );
                checks += 1;
            }
        }
    }

    for r in [3usize, 4, 5] {
        let p = build_quadratic(r).unwrap();
        assert!(
            detect_tight(&p, r, 2).is_none(),
            "quadratic r={r} has tight {r}-twins of length 2"
        );
        checks += 1;
    }

    for m in 1..=6 {
        let p = build_pi_rk(3, 3, 8 * m).unwrap();
        for len in [5usize, 6] {
            assert!(
                detect_tight(&p, 3, len).is_none(),
                "triple staircase n={} has tight 3-twins of length {len}",
                8 * m
            );
            checks += 1;
        }
    }

    let secs = t0.elapsed().as_secs_f64();
    let pass = secs < 60.0;
    verdict(
        "a03",
        "construction families avoid their target twins",
        pass,
        &format!("{checks} absence checks, {:.2} s (budget 60 s)", secs),
    );
    assert!(pass, "runtime {secs:.2} s exceeded the 1 min budget");
}

fn k_subsets(pool: &[usize], k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for i in 0..pool.len() {
        if pool.len() - i < k {
            break;
        }
        for mut rest in k_subsets(&pool[i + 1..], k - 1) {
            rest.insert(0, pool[i]);
            out.push(rest);
        }
    }
    out
}

/// Unordered families of `r` disjoint `k`-subsets of `1..=n`, generated
/// once each by forcing set minima to increase.
fn disjoint_families(n: usize, r: usize, k: usize) -> Vec<Vec<Vec<usize>>> {
    fn go(
        avail: &[usize],
        left: usize,
        k: usize,
        prev_min: usize,
        acc: &mut Vec<Vec<usize>>,
        out: &mut Vec<Vec<Vec<usize>>>,
    ) {
        if left == 0 {
            out.push(acc.clone());
            return;
        }
        for set in k_subsets(avail, k) {
            if set[0] <= prev_min {
                continue;
            }
            let rest: Vec<usize> = avail.iter().copied().filter(|x| !set.contains(x)).collect();
            let min = set[0];
            acc.push(set);
            go(&rest, left - 1, k, min, acc, out);
            acc.pop();
        }
    }
    let all: Vec<usize> = (1..=n).collect();
    let mut out = Vec::new();
    go(&all, r, k, 0, &mut Vec::new(), &mut out);
    out
}

#[test]
fn a04_similarity_probability_identity() {
    let t0 = Instant::now();
    let mut families = 0u64;
    for n in 2..=6usize {
        for r in 2..=n {
            for k in 1..=n / r {
                for family in disjoint_families(n, r, k) {
                    let rep = check_eq1(n, r, k, &family, 0, 0).unwrap();
                    assert!(rep.exact);
                    let weight = factorial(k).pow(r as u32 - 1);
                    assert_eq!(
                        rep.hits as u128 * weight,
                        factorial(n),
                        "family {family:?} misses the identity at n={n}"
                    );
                    families += 1;
                }
            }
        }
    }
    let secs = t0.elapsed().as_secs_f64();
    let pass = secs < 60.0;
    verdict(
        "a04",
        "joint similarity probability is exactly 1/k!^(r-1)",
        pass,
        &format!(
            "{families} families swept at n <= 6, every count times k!^(r-1) equals n!, {:.2} s",
            secs
        ),
    );
    assert!(pass, "runtime {secs:.2} s exceeded the 1 min budget");
}

#[test]
fn a05_independence_on_disjoint_supports() {
    let t0 = Instant::now();
    let pair =
        |a: [usize; 2], b: [usize; 2]| vec![a.to_vec(), b.to_vec()];
    let singles = |xs: &[usize]| xs.iter().map(|&x| vec![x]).collect::<Vec<_>>();

    let mut configs: Vec<(usize, usize, usize, Vec<Vec<usize>>, Vec<Vec<usize>>)> = Vec::new();
    let pairings8: [([usize; 2], [usize; 2], [usize; 2], [usize; 2]); 12] = [
        ([1, 2], [3, 4], [5, 6], [7, 8]),
        ([1, 3], [2, 4], [5, 7], [6, 8]),
        ([1, 4], [2, 3], [5, 8], [6, 7]),
        ([1, 2], [5, 6], [3, 4], [7, 8]),
        ([1, 5], [2, 6], [3, 7], [4, 8]),
        ([1, 6], [2, 5], [3, 8], [4, 7]),
        ([1, 2], [7, 8], [3, 4], [5, 6]),
        ([1, 7], [2, 8], [3, 5], [4, 6]),
        ([1, 8], [2, 7], [3, 6], [4, 5]),
        ([2, 3], [6, 7], [1, 4], [5, 8]),
        ([2, 6], [3, 7], [1, 5], [4, 8]),
        ([2, 7], [3, 6], [1, 8], [4, 5]),
    ];
    for (a, b, c, d) in pairings8 {
        configs.push((8, 2, 2, pair(a, b), pair(c, d)));
    }
    configs.push((8, 2, 1, singles(&[1, 2]), singles(&[3, 4])));
    configs.push((8, 3, 1, singles(&[1, 2, 3]), singles(&[4, 5, 6])));
    configs.push((8, 4, 1, singles(&[1, 2, 3, 4]), singles(&[5, 6, 7, 8])));
    configs.push((6, 2, 1, singles(&[1, 2]), singles(&[3, 4])));
    configs.push((6, 2, 1, singles(&[1, 3]), singles(&[2, 5])));
    configs.push((6, 2, 1, singles(&[2, 4]), singles(&[5, 6])));
    configs.push((6, 2, 1, singles(&[1, 6]), singles(&[2, 3])));
    configs.push((6, 3, 1, singles(&[1, 2, 3]), singles(&[4, 5, 6])));
    configs.push((6, 3, 1, singles(&[1, 3, 5]), singles(&[2, 4, 6])));

    let total = configs.len();
    assert!(total >= 20);
    for (n, r, k, first, second) in configs {
        let rep = check_independence(n, r, k, &first, &second).unwrap();
        assert!(
            rep.equal,
            "n={n} r={r} k={k} first={first:?} second={second:?}: joint {} vs {}*{}/{}",
            rep.joint_count, rep.count1, rep.count2, rep.total
        );
    }

    let secs = t0.elapsed().as_secs_f64();
    let pass = secs < 300.0;
    verdict(
        "a05",
        "similarity events on disjoint supports are independent",
        pass,
        &format!("{total} configurations exact at n in {{6,8}}, {:.2} s", secs),
    );
    assert!(pass, "runtime {secs:.2} s exceeded the 5 min budget");
}

#[test]
fn a06_decomposition_oracle_agreement() {
    let t0 = Instant::now();
    let mut windows = 0u64;

    for (r, k) in [(2usize, 1usize), (3, 1), (4, 1), (5, 1), (6, 1), (2, 2), (3, 2), (2, 3)] {
        for_each_canonical(r * k, |p| {
            let fast = detect_tight(p, r, k).is_some();
            let slow = oracle_tight(p, r, k).unwrap();
            assert_eq!(fast, slow, "checkers disagree on {p} at r={r} k={k}");
            windows += 1;
        });
    }

    for (r, k) in [(2usize, 4usize), (4, 2)] {
        for t in 0..10_000u64 {
            let p = Permutation::random(8, trial_seed(0xACE8 + r as u64, t)).unwrap();
            let fast = detect_tight(&p, r, k).is_some();
            let slow = oracle_tight(&p, r, k).unwrap();
            assert_eq!(fast, slow, "checkers disagree on {p} at r={r} k={k}");
            windows += 1;
        }
    }

    let secs = t0.elapsed().as_secs_f64();
    let pass = secs < 600.0;
    verdict(
        "a06",
        "window checker matches the unpruned oracle",
        pass,
        &format!(
            "{windows} windows (exhaustive through length 6, 2x10000 random of length 8), {:.2} s",
            secs
        ),
    );
    assert!(pass, "runtime {secs:.2} s exceeded the 10 min budget");
}

fn cert(
    kind: TwinKind,
    sets: &[&[usize]],
    pattern: &[i64],
) -> TwinsCertificate {
    TwinsCertificate {
        kind,
        multiplicity: sets.len(),
        length: sets[0].len(),
        position_sets: sets.iter().map(|s| s.to_vec()).collect(),
        pattern: Pattern::of(pattern),
    }
}

#[test]
fn a07_worked_examples_certify() {
    let intro13 =
        Permutation::new(vec![12, 6, 7, 2, 5, 4, 1, 3, 8, 13, 10, 9, 11]).unwrap();
    let tight4 = build_small_witness(WitnessName::IntroTight4);
    let block4 = build_small_witness(WitnessName::IntroBlock4);
    let blocktight4 = build_small_witness(WitnessName::IntroBlocktight4);
    let pi12 = Permutation::new(vec![4, 5, 6, 9, 8, 7, 1, 2, 3, 12, 11, 10]).unwrap();

    // The published highlights, verbatim.
    let c13 = cert(TwinKind::Tight, &[&[4, 7, 8], &[5, 6, 9]], &[2, 1, 3]);
    let ct4 = cert(
        TwinKind::Tight,
        &[&[3, 6, 14], &[4, 5, 11], &[7, 9, 10], &[8, 12, 13]],
        &[2, 1, 3],
    );
    let cb4 = cert(
        TwinKind::Block,
        &[&[2, 3, 4], &[8, 9, 10], &[11, 12, 13], &[16, 17, 18]],
        &[2, 1, 3],
    );
    let cbt4 = cert(
        TwinKind::BlockTight,
        &[&[4, 5, 6], &[7, 8, 9], &[10, 11, 12], &[13, 14, 15]],
        &[2, 1, 3],
    );
    let c12a = cert(TwinKind::Tight, &[&[1, 4, 7], &[2, 5, 8], &[3, 6, 9]], &[2, 3, 1]);
    let c12b = cert(
        TwinKind::Tight,
        &[&[1, 2, 3, 4, 5, 6], &[7, 8, 9, 10, 11, 12]],
        &[1, 2, 3, 6, 5, 4],
    );

    c13.validate(&intro13).unwrap();
    ct4.validate(&tight4).unwrap();
    cb4.validate(&block4).unwrap();
    cbt4.validate(&blocktight4).unwrap();
    c12a.validate(&pi12).unwrap();
    c12b.validate(&pi12).unwrap();

    // The detectors find each structure; where the published highlight is
    // the earliest occurrence they return it verbatim. In the first two
    // hosts an earlier decomposition exists, so only validity is pinned.
    let d13 = detect(&intro13, TwinKind::Tight, 2, 3).unwrap();
    d13.validate(&intro13).unwrap();
    let dt4 = detect(&tight4, TwinKind::Tight, 4, 3).unwrap();
    dt4.validate(&tight4).unwrap();
    assert_eq!(detect(&block4, TwinKind::Block, 4, 3).unwrap(), cb4);
    assert_eq!(detect(&blocktight4, TwinKind::BlockTight, 4, 3).unwrap(), cbt4);
    assert_eq!(detect(&pi12, TwinKind::Tight, 3, 3).unwrap(), c12a);
    assert_eq!(detect(&pi12, TwinKind::Tight, 2, 6).unwrap(), c12b);

    assert!(detect_tight(&pi12, 2, 3).is_none());

    verdict(
        "a07",
        "worked examples certify",
        true,
        "6 published certificates validate, 4 reproduced verbatim, \
         absence of tight 2-twins of length 3 in the 12-element host confirmed",
    );
}

#[test]
fn a08_block_multiplicity_floor_formula() {
    let t0 = Instant::now();
    for n in 4..=8usize {
        let mut min_r = usize::MAX;
        for_each_canonical(n, |p| {
            let (r, _) = r_max(p, 2, TwinKind::Block).unwrap();
            min_r = min_r.min(r);
        });
        assert_eq!(min_r, (n + 2) / 4, "floor formula off at n={n}");
    }
    for n in 4..=20usize {
        let p = build_alternating(n);
        let (r, _) = r_max(&p, 2, TwinKind::Block).unwrap();
        assert_eq!(r, (n + 2) / 4, "up-up-down-down misses the floor at n={n}");
    }
    let secs = t0.elapsed().as_secs_f64();
    let pass = secs < 600.0;
    verdict(
        "a08",
        "guaranteed block pair multiplicity is floor((n+2)/4)",
        pass,
        &format!(
            "exhaustive n in 4..=8, up-up-down-down attains it through n=20, {:.2} s",
            secs
        ),
    );
    assert!(pass, "runtime {secs:.2} s exceeded the 10 min budget");
}

#[test]
fn a09_half_matching_concentration() {
    let t0 = Instant::now();
    let trials = 1000u64;
    let mut both = 0u64;
    let mut either = 0u64;
    for t in 0..trials {
        let p = Permutation::random(200, trial_seed(SEED, t)).unwrap();
        let inc = match2(&p, Orientation::Increasing).unwrap().is_some();
        let dec = match2(&p, Orientation::Decreasing).unwrap().is_some();
        if inc && dec {
            both += 1;
        }
        if inc || dec {
            either += 1;
        }
    }
    let need_both = (trials * 99).div_ceil(100);
    let ok_match = both >= need_both;

    let r = 500usize;
    let band = (r as f64).powf(2.0 / 3.0);
    let deg_mid = r as f64 / 2.0;
    let co_mid = r as f64 / 3.0;
    let band_trials = 50usize;
    let mut in_band = 0usize;
    for t in 0..band_trials as u64 {
        let p = Permutation::random(2 * r, trial_seed(SEED ^ 0xD0, t)).unwrap();
        let prof = degree_profile(&p, 200, trial_seed(SEED ^ 0xD1, t)).unwrap();
        let degs_ok = prof.degrees.iter().all(|&x| (x as f64 - deg_mid).abs() <= band);
        let cos_ok = prof.codegrees.iter().all(|&x| (x as f64 - co_mid).abs() <= band);
        if degs_ok && cos_ok {
            in_band += 1;
        }
    }
    let need_band = 48; // 95% of 50, rounded up
    let ok_band = in_band >= need_band;

    let secs = t0.elapsed().as_secs_f64();
    let evidence = format!(
        "both-orientation matchings {both}/{trials} (required >= {need_both}; either orientation: \
         {either}/{trials}); degree+codegree bands r/2+-r^(2/3), r/3+-r^(2/3) held in \
         {in_band}/{band_trials} trials at r=500 (required >= {need_band}); {:.1} s",
        secs
    );
    let pass = ok_match && ok_band && secs < 300.0;
    verdict("a09", "half-to-half matching succeeds and degrees concentrate", pass, &evidence);
    assert!(pass, "measured far from the required thresholds: {evidence}");
}

struct Sub {
    name: String,
    pass: bool,
    note: String,
}

fn sub(subs: &mut Vec<Sub>, name: String, pass: bool, note: String) {
    println!("  {name}: {} ({note})", if pass { "ok" } else { "MISS" });
    subs.push(Sub { name, pass, note });
}

#[test]
fn a10_random_length_growth() {
    let t0 = Instant::now();
    let mut subs: Vec<Sub> = Vec::new();
    let band = |mean: f64, reference: f64| {
        let ratio = mean / reference;
        (0.5..=1.5).contains(&ratio)
    };

    for r in [2usize, 3] {
        let mut means = Vec::new();
        for (n, trials) in [(1_000usize, 200u64), (10_000, 60), (100_000, 12)] {
            let s = estimate_stat(Statistic::BtLen, n, r, trials, SEED, 1).unwrap();
            sub(
                &mut subs,
                format!("block length r={r} n={n} in band"),
                band(s.mean, s.reference),
                format!("mean {:.2}, reference {:.2}, ratio {:.2}", s.mean, s.reference, s.mean / s.reference),
            );
            means.push(s.mean);
        }
        sub(
            &mut subs,
            format!("block length r={r} nondecreasing"),
            means.windows(2).all(|w| w[0] <= w[1]),
            format!("means {:.2} -> {:.2} -> {:.2}", means[0], means[1], means[2]),
        );
    }

    for r in [2usize, 3] {
        let mut means = Vec::new();
        for (n, trials) in [(1_000usize, 150u64), (10_000, 40)] {
            let s = estimate_stat(Statistic::BttLen, n, r, trials, SEED, 1).unwrap();
            sub(
                &mut subs,
                format!("consecutive-block length r={r} n={n} in band"),
                band(s.mean, s.reference),
                format!("mean {:.2}, reference {:.2}, ratio {:.2}", s.mean, s.reference, s.mean / s.reference),
            );
            means.push(s.mean);
        }
        sub(
            &mut subs,
            format!("consecutive-block length r={r} nondecreasing"),
            means[0] <= means[1],
            format!("means {:.2} -> {:.2}", means[0], means[1]),
        );
    }

    // The tight statistic needs every window of a host refuted before the
    // scan can move on, and refutation cost on random input grows like
    // exp(c*sqrt(len)); the sampler refuses hosts past its documented cap
    // rather than hang. The required grid sits far beyond the cap, so
    // these four subchecks fail by refusal, with the feasible-scale
    // measurements below as the closest attainable evidence.
    for r in [2usize, 3] {
        for n in [1_000usize, 10_000] {
            let note = match estimate_stat(Statistic::TtLen, n, r, 4, SEED, 1) {
                Err(Error::ResourceLimit(msg)) => format!("refused: {msg}"),
                Err(e) => format!("refused: {e}"),
                Ok(s) => format!("unexpectedly ran, mean {:.2}", s.mean),
            };
            sub(&mut subs, format!("tight length r={r} n={n}"), false, note);
        }
    }

    let tt_evidence: Vec<(usize, usize, u64)> = vec![
        (2, 60, 20),
        (2, 90, 8),
        (2, 120, 3),
        (3, 45, 20),
        (3, 60, 6),
    ];
    let mut tt60 = f64::NAN;
    for (r, n, trials) in tt_evidence {
        let s = estimate_stat(Statistic::TtLen, n, r, trials, SEED, 1).unwrap();
        if r == 2 && n == 60 {
            tt60 = s.mean;
        }
        println!(
            "  measured tight length r={r} n={n}: mean {:.2}, reference {:.2} ({} trials)",
            s.mean, s.reference, trials
        );
    }

    let bt60 = estimate_stat(Statistic::BtLen, 60, 2, 200, SEED, 1).unwrap().mean;
    let btt60 = estimate_stat(Statistic::BttLen, 60, 2, 200, SEED, 1).unwrap().mean;
    sub(
        &mut subs,
        "tight below block with ratio toward 1/r".into(),
        false,
        format!(
            "needs the refused grid; at the feasible n=60, r=2 the order is inverted: \
             tight {:.2} vs block {:.2}",
            tt60, bt60
        ),
    );
    sub(
        &mut subs,
        "consecutive-block within 1 of tight at n=10000".into(),
        false,
        format!(
            "needs the refused grid; at the feasible n=60, r=2 the gap is {:.2} \
             (tight {:.2}, consecutive-block {:.2})",
            (tt60 - btt60).abs(),
            tt60,
            btt60
        ),
    );

    let secs = t0.elapsed().as_secs_f64();
    let passed = subs.iter().filter(|s| s.pass).count();
    let failing: Vec<String> = subs
        .iter()
        .filter(|s| !s.pass)
        .map(|s| format!("{} [{}]", s.name, s.note))
        .collect();
    let pass = failing.is_empty() && secs < 1800.0;
    verdict(
        "a10",
        "random host twin lengths track their growth laws",
        pass,
        &format!("{passed}/{} subchecks, {:.0} s (budget 1800 s)", subs.len(), secs),
    );
    assert!(
        pass,
        "{} of {} subchecks missed: {}",
        failing.len(),
        subs.len(),
        failing.join("; ")
    );
}

#[test]
fn a11_full_decomposition_counts() {
    let t0 = Instant::now();
    for k in 1..=6usize {
        assert_eq!(count_q(1, k).unwrap() as u128, factorial(k));
    }

    // Golden values frozen from the unpruned enumeration; recounted here
    // with the production window checker as a second, independent decider.
    let golden: [(usize, usize, u64); 3] = [(2, 2, 20), (2, 3, 504), (3, 2, 642)];
    for (r, k, q) in golden {
        assert_eq!(count_q(r, k).unwrap(), q, "count drifted at r={r} k={k}");
        let mut recount = 0u64;
        for_each_canonical(r * k, |p| {
            if detect_tight(p, r, k).is_some() {
                recount += 1;
            }
        });
        assert_eq!(recount, q, "window checker recount differs at r={r} k={k}");
    }

    let secs = t0.elapsed().as_secs_f64();
    let pass = secs < 300.0;
    verdict(
        "a11",
        "full decomposition counts match goldens",
        pass,
        &format!(
            "k! identity through k=6; 20/504/642 confirmed by two deciders, {:.2} s",
            secs
        ),
    );
    assert!(pass, "runtime {secs:.2} s exceeded the 5 min budget");
}
