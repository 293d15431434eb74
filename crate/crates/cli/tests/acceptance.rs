//! Acceptance gate: one test per shipped guarantee. Each test finishes
//! with a single PASS line carrying its headline numbers; an assert
//! failure is the corresponding FAIL.

use std::collections::HashSet;
use std::process::Command;
use std::time::{Duration, Instant};

use num_rational::BigRational;

use orbitalis_core::extpoint::ExtPoint;
use orbitalis_core::models::{self, check_affine_law};
use orbitalis_core::props::{
    plmap_group_axioms, plmap_monotonicity, plmap_orbital_partition, signature_order_laws,
    vec_compare_totality, wreath_group_laws,
};
use orbitalis_core::realize::{
    build_realization, check_action_consistency, check_order_isomorphism, estimate_F,
    verify_strict_tower, WreathOracle,
};
use orbitalis_core::sample::DEFAULT_SEED;
use orbitalis_core::towers::{
    count_distinct_positive_words, find_crossed_pair, tower_search_in_pool, OrbitalPool,
};
use orbitalis_core::wreath::WreathGroup;

#[test]
fn a1_reduced_words_are_affine_with_at_most_one_fixed_point() {
    let start = Instant::now();
    let report = check_affine_law(&models::bs12(), 12);
    let elapsed = start.elapsed();
    assert_eq!(report.words_checked, 1_062_881);
    assert!(report.holds, "violations: {:?}", report.violations);
    assert!(report.slopes_are_powers_of_two);
    assert_eq!(report.violations_total, 0);
    assert!(
        elapsed < Duration::from_secs(120),
        "scan took {elapsed:.1?}"
    );
    println!(
        "PASS affine law: {} reduced words of length <= 12 are 2^p x + q with one fixed point iff p != 0, in {:.2?}",
        report.words_checked, elapsed
    );
}

#[test]
fn a2_one_sided_towers_grow_while_strict_height_stays_one() {
    let assign = models::bs12();
    for n in 1usize..=5 {
        let bound = 2 * n + 2;
        let pool = OrbitalPool::build(&assign, bound);
        let tower = tower_search_in_pool(&pool, false, None);
        assert!(
            tower.height() >= n,
            "height {} below {n} at bound {bound}",
            tower.height()
        );
        for k in 1..=n {
            let hi = ExtPoint::from_ratio(-1, (1i64 << k) - 1);
            let entry = tower
                .elements
                .iter()
                .find(|e| e.lo() == &ExtPoint::NegInf && e.hi() == &hi)
                .unwrap_or_else(|| panic!("no (-inf, -1/{}) level at bound {bound}", (1 << k) - 1));
            // The right end must be exactly the word's unique fixed point.
            let map = assign.evaluate(&entry.signature);
            assert_eq!(map.fixed_set(), vec![(hi.clone(), hi.clone())]);
        }
        let strict = tower_search_in_pool(&pool, true, None);
        assert_eq!(strict.height(), 1, "strict height at bound {bound}");
    }
    println!(
        "PASS tower growth: bounds 2n+2 give height >= n with exact ends -1/(2^k - 1) for n = 1..5; strict height is 1 throughout"
    );
}

#[test]
fn a3_crossed_pair_generates_a_free_semigroup_to_depth_eight() {
    let assign = models::bs12();
    let pair = find_crossed_pair(&assign, 6, Some(8)).expect("a certified crossed pair");
    let distinct = count_distinct_positive_words(
        &assign.evaluate(&pair.fixer),
        &assign.evaluate(&pair.mover),
        8,
    );
    assert_eq!(distinct, 510);
    println!(
        "PASS crossed pair: `{}` fixes ({}, {}) crossed by `{}`; all 510 positive words to depth 8 are distinct",
        assign.display_word(&pair.fixer),
        pair.interval.lo,
        pair.interval.hi,
        assign.display_word(&pair.mover)
    );
}

#[test]
fn a4_wreath_algebra_laws_and_commuting_conjugates() {
    let laws = wreath_group_laws(DEFAULT_SEED, 10_000);
    assert_eq!(laws.cases, 10_000);
    assert!(laws.passed(), "first failure: {:?}", laws.first_failure);

    let group = WreathGroup::default();
    let family = group.conjugate_family(-5..=5);
    assert_eq!(family.len(), 11);
    for i in 0..family.len() {
        for j in (i + 1)..family.len() {
            assert_eq!(
                group.multiply(&family[i], &family[j]),
                group.multiply(&family[j], &family[i]),
                "conjugates {i} and {j} do not commute"
            );
        }
    }
    println!(
        "PASS wreath algebra: group laws on 10000 seeded triples; the 11 conjugates t^-k a t^k, k = -5..5, commute pairwise"
    );
}

#[test]
fn a5_order_contract_holds_with_zero_counterexamples() {
    let report = WreathGroup::default().check_conditions(10_000, 5, DEFAULT_SEED);
    assert!(report.condition_ii, "generator chain out of order");
    assert_eq!(report.condition_iii.checked, 55);
    assert_eq!(
        report.condition_iii.failures, 0,
        "{:?}",
        report.condition_iii.counterexample
    );
    assert_eq!(report.left_invariance.checked, 10_000);
    assert_eq!(
        report.left_invariance.failures, 0,
        "{:?}",
        report.left_invariance.counterexample
    );
    for (name, outcome) in [("iv", &report.condition_iv), ("v", &report.condition_v)] {
        assert!(outcome.checked >= 1_000, "condition {name} undersampled");
        assert_eq!(
            outcome.failures, 0,
            "condition {name}: {:?}",
            outcome.counterexample
        );
    }
    println!(
        "PASS order contract: chain condition exact, conjugate chain on 55 pairs, left-invariance on 10000 triples, sandwich conditions on 10000 pairs each, zero counterexamples"
    );
}

#[test]
fn a6_depth_six_realization_is_an_order_isomorphism_with_consistent_action() {
    let oracle = WreathOracle::new(WreathGroup::default());
    let table = build_realization(&oracle, 6).expect("depth-6 table");
    assert_eq!(table.element_count(), 15_523);

    let pairs = check_order_isomorphism(&oracle, &table).expect("positions sorted as the order");
    assert_eq!(pairs, 15_523u64 * 15_522 / 2);

    let coverage = check_action_consistency(&oracle, &table).expect("approximants act as the table");
    assert_eq!(coverage.len(), 3);
    assert!(coverage.iter().all(|(_, covered)| *covered > 0));

    let (plus, minus) = estimate_F(&oracle, &table, &oracle.group().a()).unwrap();
    let plus = plus.bracket.expect("upper fixed-point bracket for a");
    let minus = minus.bracket.expect("lower fixed-point bracket for a");
    println!(
        "PASS realization: {pairs} ordered pairs agree with positions; action consistent on {} covered pairs; a is bracketed in ({}, {}) and ({}, {})",
        coverage.iter().map(|(_, c)| c).sum::<usize>(),
        plus.lo, plus.hi, minus.lo, minus.hi
    );
}

#[test]
fn a7_strict_tower_certificate_reaches_range_two() {
    let oracle = WreathOracle::new(WreathGroup::default());
    let table = build_realization(&oracle, 6).expect("depth-6 table");
    let report = verify_strict_tower(&oracle, &table, 2).expect("tower report");

    assert!(
        report.conclusive_to.is_some_and(|k| k >= 2),
        "inconclusive beyond {:?}",
        report.conclusive_to
    );
    assert!(report.nesting_ok, "{:?}", report.nesting_violation);
    assert_eq!(report.certified_height(), 5);

    let parse = |s: &str| s.parse::<BigRational>().expect("rational endpoint");
    let mut ends: Vec<String> = Vec::new();
    for level in &report.tower {
        ends.push(level.lo.clone());
        ends.push(level.hi.clone());
    }
    let distinct: HashSet<&String> = ends.iter().collect();
    assert_eq!(distinct.len(), ends.len(), "tower ends collide");
    for pair in report.tower.windows(2) {
        assert!(parse(&pair[0].lo) < parse(&pair[1].lo));
        assert!(parse(&pair[1].hi) < parse(&pair[0].hi));
    }
    println!(
        "PASS strict tower: conjugates |k| <= 2 all bracketed at depth 6; 5 certified windows strictly nested with 10 pairwise distinct ends"
    );
}

#[test]
fn a8_property_suites_pass_on_seeded_cases() {
    let cases = 1_024;
    for outcome in [
        plmap_group_axioms(DEFAULT_SEED, cases),
        plmap_monotonicity(DEFAULT_SEED, cases),
        plmap_orbital_partition(DEFAULT_SEED, cases),
        signature_order_laws(DEFAULT_SEED, cases),
        vec_compare_totality(DEFAULT_SEED, cases),
    ] {
        assert_eq!(outcome.cases, cases, "{} undersampled", outcome.name);
        assert!(
            outcome.passed(),
            "{}: {:?}",
            outcome.name,
            outcome.first_failure
        );
    }
    println!(
        "PASS property suites: map group axioms, monotonicity, orbital partition, germ order, and lexicographic comparison each pass {cases} seeded cases"
    );
}

#[test]
fn a9_verification_bundles_are_byte_deterministic() {
    let capture = |extra: &[&str]| -> Vec<u8> {
        let mut cmd = Command::new(env!("CARGO_BIN_EXE_orbitalis"));
        cmd.env_remove("ORBITALIS_SEED");
        let out = cmd.args(extra).output().expect("bundle runs");
        assert!(
            out.status.success(),
            "bundle {:?} failed: {}",
            extra,
            String::from_utf8_lossy(&out.stderr)
        );
        out.stdout
    };
    for bundle in [["verify-construction", "bs12"], ["verify-construction", "wreath"]] {
        let first = capture(&bundle);
        let second = capture(&bundle);
        assert_eq!(first, second, "{bundle:?} differs across runs");
        let one = capture(&[&bundle[..], &["--workers", "1"]].concat());
        let four = capture(&[&bundle[..], &["--workers", "4"]].concat());
        assert_eq!(one, four, "{bundle:?} differs across worker counts");
        assert_eq!(first, one, "{bundle:?} differs when workers are pinned");
    }
    println!(
        "PASS determinism: both verification bundles emit byte-identical reports across repeated runs and worker counts 1 and 4"
    );
}
