//! Acceptance suite: one test per criterion, each printing a single
//! PASS/FAIL line (visible with `--nocapture`) and enforcing its runtime
//! budget. Expected values are frozen here independently of the library's
//! own verify module.

use mslab::bounds::{alpha_window, build_f_alpha, counterexample_check, upper_bound_sum};
use mslab::certificates::{
    build_configuration, build_partition_systems, certified_row_floor, verify_configuration,
    verify_partition_systems,
};
use mslab::combinatorics::{binomial, enumerate_qstrings};
use mslab::pac::{degree_census, greedy_qpac, matching_qpac, verify_qpac, GreedyOutcome};
use mslab::rational::Rational;
use mslab::search::{
    minimize_phi_threads, psi_bracket_threads, sample_conforming, sample_weight_function,
    SearchConfig, SplitMix64,
};
use mslab::weights::WeightFunction;
use std::time::{Duration, Instant};

/// The published 3-string pairing, left sides in lexicographic order.
const Q3_LISTING: [(&str, &str); 35] = [
    ("123", "567"),
    ("124", "367"),
    ("125", "467"),
    ("126", "457"),
    ("127", "456"),
    ("134", "267"),
    ("135", "247"),
    ("136", "257"),
    ("137", "256"),
    ("145", "237"),
    ("146", "357"),
    ("147", "356"),
    ("156", "347"),
    ("157", "346"),
    ("167", "345"),
    ("234", "167"),
    ("235", "147"),
    ("236", "157"),
    ("237", "156"),
    ("245", "137"),
    ("246", "135"),
    ("247", "136"),
    ("256", "134"),
    ("257", "146"),
    ("267", "145"),
    ("345", "127"),
    ("346", "125"),
    ("347", "126"),
    ("356", "124"),
    ("357", "246"),
    ("367", "245"),
    ("456", "123"),
    ("457", "236"),
    ("467", "235"),
    ("567", "234"),
];

fn report(idx: usize, name: &str, started: Instant, budget: Duration, pass: bool, detail: &str) {
    let elapsed = started.elapsed();
    let within = elapsed <= budget;
    let status = if pass && within { "PASS" } else { "FAIL" };
    println!("criterion {idx:2} {name}: {status} [{detail}] in {elapsed:.2?}");
    assert!(pass, "criterion {idx} ({name}) failed: {detail}");
    assert!(
        within,
        "criterion {idx} ({name}) exceeded its {budget:?} budget: {elapsed:?}"
    );
}

fn threads() -> usize {
    std::thread::available_parallelism()
        .map(|n| n.get())
        .unwrap_or(1)
}

#[test]
fn criterion_01_q3_pac_reproduction() {
    let t = Instant::now();
    let m = match greedy_qpac(3).unwrap() {
        GreedyOutcome::Complete(m) => m,
        GreedyOutcome::Stuck { index, domain } => {
            panic!("greedy stuck at {index} ({domain})")
        }
    };
    assert_eq!(m.pairs.len(), 35);
    let mut matched = 0;
    for ((a, c), (ea, ec)) in m.pairs.iter().zip(Q3_LISTING.iter()) {
        assert_eq!(a.digits().unwrap(), *ea, "domain order");
        if c.digits().unwrap() == *ec {
            matched += 1;
        }
    }
    report(
        1,
        "q3-pac-reproduction",
        t,
        Duration::from_secs(1),
        matched == 35,
        &format!("{matched}/35 pairs match the listing"),
    );
}

#[test]
fn criterion_02_pac_existence_sweep() {
    let t = Instant::now();
    let expected = [3u64, 10, 35, 126, 462, 1716];
    let mut sizes = Vec::new();
    let mut valid = true;
    for q in 1..=6 {
        let m = matching_qpac(q).unwrap();
        sizes.push(m.len() as u64);
        valid &= verify_qpac(&m).unwrap().ok;
    }
    report(
        2,
        "pac-existence-sweep",
        t,
        Duration::from_secs(10),
        valid && sizes == expected,
        &format!("sizes {sizes:?}, all verified: {valid}"),
    );
}

#[test]
fn criterion_03_degree_lemma() {
    let t = Instant::now();
    let mut pass = true;
    for q in 1..=4 {
        let census = degree_census(q).unwrap();
        pass &= census.len() == enumerate_qstrings(2 * q + 1, q).unwrap().len();
        pass &= census.values().all(|&deg| deg == q + 1);
    }
    report(
        3,
        "degree-lemma",
        t,
        Duration::from_secs(1),
        pass,
        "degree equals q+1 uniformly for q=1..4",
    );
}

#[test]
fn criterion_04_construction_vs_formula() {
    let t = Instant::now();
    let mut cases = 0usize;
    let mut mismatches = 0usize;
    for n in 4..=12usize {
        for d in 2..=n {
            for r in d..=(d - 1) * n / d {
                if r * d > (d - 1) * n {
                    continue;
                }
                let expect = upper_bound_sum(n, d, r).unwrap();
                let window = alpha_window(n, d, r).unwrap();
                for i in 1..=5i128 {
                    let alpha = window * Rational::new(i, 6);
                    let f = build_f_alpha(n, d, r, alpha).unwrap();
                    assert_eq!(f.nonneg_count(), r);
                    cases += 1;
                    if f.count_dplus(d).unwrap() != expect {
                        mismatches += 1;
                    }
                }
            }
        }
    }
    report(
        4,
        "construction-vs-formula",
        t,
        Duration::from_secs(30),
        cases > 0 && mismatches == 0,
        &format!("{cases} (n,d,r,alpha) cases, {mismatches} mismatches"),
    );
}

#[test]
fn criterion_05_settled_values_under_10k_restarts() {
    let t = Instant::now();
    let cfg = SearchConfig {
        restarts: 10_000,
        seed: 8105,
        alpha_steps: 5,
        local_iters: 20,
    };
    // an undercut would abort inside the library with an invariant error
    let a = minimize_phi_threads(8, 3, 5, &cfg, threads()).unwrap();
    let b = minimize_phi_threads(10, 4, 7, &cfg, threads()).unwrap();
    let pass = a.best_phi == 20
        && b.best_phi == 70
        && a.gamma_known_match == Some(true)
        && b.gamma_known_match == Some(true);
    report(
        5,
        "settled-values-10k-restarts",
        t,
        Duration::from_secs(120),
        pass,
        &format!("(8,3,5) -> {}, (10,4,7) -> {}", a.best_phi, b.best_phi),
    );
}

#[test]
fn criterion_06_counterexample_to_conjecture() {
    let t = Instant::now();
    let mut pass = !counterexample_check(2).unwrap();
    for d in 3..=10 {
        pass &= counterexample_check(d).unwrap();
    }
    let at_d3 = binomial(5, 3).unwrap() + binomial(5, 2).unwrap();
    let conjectured = binomial(7, 2).unwrap();
    pass &= at_d3 == 20 && conjectured == 21;
    let cfg = SearchConfig {
        restarts: 400,
        seed: 8106,
        alpha_steps: 5,
        local_iters: 20,
    };
    let psi = psi_bracket_threads(8, 3, &cfg, threads()).unwrap();
    pass &= psi.psi_upper <= 20 && psi.psi_upper < conjectured;
    report(
        6,
        "counterexample-at-n-2d-plus-2",
        t,
        Duration::from_secs(120),
        pass,
        &format!("{at_d3} < {conjectured}; psi(8,3) <= {}", psi.psi_upper),
    );
}

#[test]
fn criterion_07_partition_regime_values() {
    let t = Instant::now();
    let cfg = SearchConfig {
        restarts: 2_000,
        seed: 8107,
        alpha_steps: 5,
        local_iters: 20,
    };
    let rep = minimize_phi_threads(6, 2, 3, &cfg, threads()).unwrap();
    let sys62 = build_partition_systems(6, 2).unwrap();
    let v62 = verify_partition_systems(&sys62, None).unwrap();
    let sys93 = build_partition_systems(9, 3).unwrap();
    let v93 = verify_partition_systems(&sys93, None).unwrap();
    let pass = rep.best_phi == 6
        && sys62.partitions.len() == 3
        && v62.ok
        && sys93.partitions.len() == 15
        && sys93.block_count() == 45
        && v93.ok;
    report(
        7,
        "partition-regime-values",
        t,
        Duration::from_secs(60),
        pass,
        &format!(
            "(6,2,3) -> {}; systems: {} and {} partitions ({} blocks)",
            rep.best_phi,
            sys62.partitions.len(),
            sys93.partitions.len(),
            sys93.block_count()
        ),
    );
}

#[test]
fn criterion_08_row_certificate_samples() {
    let t = Instant::now();
    let config = build_configuration(3).unwrap();
    assert!(verify_configuration(&config).unwrap().ok);
    let mut rng = SplitMix64::new(8108);
    let mut pass = true;
    for _ in 0..200 {
        // hypothesis: x_k + y_3 < 0 for every k, i.e. for the largest x
        let f = sample_conforming(8, 5, &mut rng, 100_000, |f| {
            (f.value(1) + f.value(8)).is_negative()
        })
        .expect("sampler");
        pass &= certified_row_floor(&f, &config).unwrap() == 10;
        pass &= f.count_dplus(3).unwrap() >= 20;
    }
    report(
        8,
        "row-certificate-200-samples",
        t,
        Duration::from_secs(60),
        pass,
        "certificate and brute-force floor agree on 200 samples",
    );
}

#[test]
fn criterion_09_nonneg_pair_bound_samples() {
    let t = Instant::now();
    let mut rng = SplitMix64::new(8109);
    let mut pass = true;
    let mut floors = Vec::new();
    for (n, d, r) in [(6usize, 2usize, 3usize), (8, 3, 5)] {
        let floor = binomial((r - 1) as u64, (d - 2) as u64).unwrap() * (n - r) as u64
            + binomial(r as u64, d as u64).unwrap();
        floors.push(floor);
        for _ in 0..200 {
            let f = sample_conforming(n, r, &mut rng, 100_000, |f| {
                (f.value(1) + f.value(n)).is_nonnegative()
            })
            .expect("sampler");
            pass &= f.count_dplus(d).unwrap() >= floor;
        }
    }
    report(
        9,
        "nonneg-pair-bound-samples",
        t,
        Duration::from_secs(60),
        pass,
        &format!("floors {floors:?} hold on 200 samples each"),
    );
}

#[test]
fn criterion_10_property_suite() {
    let t = Instant::now();
    let mut rng = SplitMix64::new(8110);
    let mut scale_ok = 0usize;
    let mut perm_ok = 0usize;
    let mut mono_ok = 0usize;
    for _ in 0..1000 {
        let n = 2 + rng.below(9) as usize;
        let r = 1 + rng.below(n as u64) as usize;
        let d = 1 + rng.below(n as u64) as usize;
        let f = sample_weight_function(n, r, &mut rng);
        let phi = f.count_dplus(d).unwrap();

        let lambda = Rational::new(1 + rng.below(256) as i128, 64);
        if f.scale(lambda).unwrap().count_dplus(d).unwrap() == phi {
            scale_ok += 1;
        }

        let mut shuffled = f.values().to_vec();
        for i in (1..shuffled.len()).rev() {
            let j = rng.below(i as u64 + 1) as usize;
            shuffled.swap(i, j);
        }
        if WeightFunction::new(shuffled).unwrap().count_dplus(d).unwrap() == phi {
            perm_ok += 1;
        }

        let mut raised = f.values().to_vec();
        let idx = rng.below(n as u64) as usize;
        raised[idx] = raised[idx] + Rational::new(1 + rng.below(128) as i128, 64);
        if WeightFunction::new(raised).unwrap().count_dplus(d).unwrap() >= phi {
            mono_ok += 1;
        }
    }
    report(
        10,
        "phi-property-suite",
        t,
        Duration::from_secs(60),
        scale_ok == 1000 && perm_ok == 1000 && mono_ok == 1000,
        &format!("scaling {scale_ok}/1000, permutation {perm_ok}/1000, monotonicity {mono_ok}/1000"),
    );
}
