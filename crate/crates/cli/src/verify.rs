//! The verify-construction bundles: one-shot verification reports for the
//! two reference constructions, with a nonzero exit on any failed check.

use std::cmp::Ordering;

use anyhow::{bail, Result};
use clap::{Args, Subcommand};
use serde::Serialize;

use orbitalis_core::extpoint::{format_rational, ExtPoint};
use orbitalis_core::models::{self, check_affine_law, AffineLawReport};
use orbitalis_core::props::{
    plmap_group_axioms, plmap_monotonicity, plmap_orbital_partition, signature_order_laws,
    vec_compare_totality, wreath_group_laws, PropOutcome,
};
use orbitalis_core::realize::{
    build_realization, check_action_consistency, check_order_isomorphism, estimate_F,
    verify_strict_tower, FixBracket, StrictTowerReport, WreathOracle,
};
use orbitalis_core::towers::{tower_search_in_pool, OrbitalPool};
use orbitalis_core::words::Assignment;
use orbitalis_core::wreath::{ConditionsReport, WreathGroup};

use crate::model_cmds::{crossed_summary, CrossedSummary, LevelRow};
use crate::output::{Outcome, RunConfig};
use crate::wreath_cmds::OrientationArg;

#[derive(Debug, Subcommand)]
pub enum Construction {
    /// The affine two-generator model: single-fixed-point law, one-sided
    /// tower growth, strict height one, a certified crossed pair, and the
    /// map property suites.
    Bs12(VerifyBs12Args),
    /// The ordered wreath model: order contract, conjugate family,
    /// realization checks, strict-tower certificate, and algebra suites.
    Wreath(VerifyWreathArgs),
}

#[derive(Debug, Args)]
pub struct VerifyBs12Args {
    /// Word-length bound for the affine-law scan and the deepest pool.
    #[arg(long, visible_alias = "L", default_value_t = 10)]
    pub max_len: usize,
    /// Positive-word depth for the crossed-pair certificate; 0 skips it.
    #[arg(long, default_value_t = 8)]
    pub certify_depth: usize,
    /// Cases per property suite.
    #[arg(long, default_value_t = 1024)]
    pub prop_cases: usize,
}

#[derive(Serialize)]
struct TowerCheck {
    n: usize,
    bound: usize,
    height: usize,
    strict_height: usize,
    reference_family_ok: bool,
    passed: bool,
    tower: Vec<LevelRow>,
}

/// At bound 2n+2 the non-strict search must reach height n and pick up the
/// one-sided family (-inf, -1/(2^k - 1)) for k = 1..n, while the strict
/// search stays at height one: affine maps admit no strictly nested pair.
fn tower_check(assign: &Assignment, n: usize) -> TowerCheck {
    let bound = 2 * n + 2;
    let pool = OrbitalPool::build(assign, bound);
    let tower = tower_search_in_pool(&pool, false, None);
    let strict = tower_search_in_pool(&pool, true, None);
    let reference_family_ok = (1..=n).all(|k| {
        let hi = ExtPoint::from_ratio(-1, (1i64 << k) - 1);
        tower
            .elements
            .iter()
            .any(|e| e.lo() == &ExtPoint::NegInf && e.hi() == &hi)
    });
    let passed = tower.height() >= n && reference_family_ok && strict.height() == 1;
    TowerCheck {
        n,
        bound,
        height: tower.height(),
        strict_height: strict.height(),
        reference_family_ok,
        passed,
        tower: tower
            .elements
            .iter()
            .map(|e| LevelRow::from_signed(assign, e))
            .collect(),
    }
}

#[derive(Serialize)]
struct VerifyBs12Report {
    config: RunConfig,
    affine_law: AffineLawReport,
    affine_ok: bool,
    towers: Vec<TowerCheck>,
    towers_ok: bool,
    crossed_pair: CrossedSummary,
    crossed_ok: bool,
    properties: Vec<PropOutcome>,
    properties_ok: bool,
    all_passed: bool,
}

pub fn bs12(args: &VerifyBs12Args, mut config: RunConfig) -> Result<Outcome> {
    config.model = Some("bs12".to_string());
    config.bounds.insert("L", args.max_len as i64);
    config.bounds.insert("certify_depth", args.certify_depth as i64);
    config.bounds.insert("prop_cases", args.prop_cases as i64);
    let assign = models::bs12();

    let affine_law = check_affine_law(&assign, args.max_len);
    let affine_ok = affine_law.holds && affine_law.slopes_are_powers_of_two;

    // Tower growth at the canonical bounds 2n+2, as deep as L allows.
    let deepest = (args.max_len.saturating_sub(2) / 2).min(5);
    let towers: Vec<TowerCheck> = (1..=deepest).map(|n| tower_check(&assign, n)).collect();
    let towers_ok = !towers.is_empty() && towers.iter().all(|t| t.passed);

    let crossed_pair = crossed_summary(&assign, 6, args.certify_depth);
    let crossed_ok = crossed_pair.found
        && crossed_pair
            .certificate
            .as_ref()
            .is_none_or(|c| c.complete);

    let properties = vec![
        plmap_group_axioms(config.seed, args.prop_cases),
        plmap_monotonicity(config.seed, args.prop_cases),
        plmap_orbital_partition(config.seed, args.prop_cases),
        signature_order_laws(config.seed, args.prop_cases),
    ];
    let properties_ok = properties.iter().all(|p| p.passed());

    let all_passed = affine_ok && towers_ok && crossed_ok && properties_ok;
    let report = VerifyBs12Report {
        config,
        affine_law,
        affine_ok,
        towers,
        towers_ok,
        crossed_pair,
        crossed_ok,
        properties,
        properties_ok,
        all_passed,
    };
    Outcome::new(&report, !all_passed, None)
}

#[derive(Debug, Args)]
pub struct VerifyWreathArgs {
    /// Ball radius of the realization table.
    #[arg(long, visible_alias = "M", default_value_t = 4)]
    pub depth: usize,
    /// Strict-tower conjugate range.
    #[arg(long, visible_alias = "K", default_value_t = 1)]
    pub range: i64,
    /// Random cases per sampled order condition.
    #[arg(long, default_value_t = 1000)]
    pub sample_size: usize,
    /// Support and exponent bound for sampled elements.
    #[arg(long, default_value_t = 5)]
    pub bound: i64,
    /// Cases per property suite.
    #[arg(long, default_value_t = 1024)]
    pub prop_cases: usize,
    #[arg(long, value_enum, default_value_t = OrientationArg::ConditionIii)]
    pub orientation: OrientationArg,
}

#[derive(Serialize)]
struct ConjugateFamilyCheck {
    range: i64,
    count: usize,
    commute_ok: bool,
    monotone_ok: bool,
}

/// The conjugates t^-k a t^k over |k| <= range must pairwise commute and
/// run strictly monotone in k, with the direction set by the orientation.
fn conjugate_family_check(
    group: &WreathGroup,
    range: i64,
    expected: Ordering,
) -> ConjugateFamilyCheck {
    let family = group.conjugate_family(-range..=range);
    let mut commute_ok = true;
    for i in 0..family.len() {
        for j in (i + 1)..family.len() {
            if group.multiply(&family[i], &family[j]) != group.multiply(&family[j], &family[i]) {
                commute_ok = false;
            }
        }
    }
    let monotone_ok = family
        .windows(2)
        .all(|pair| group.compare(&pair[0], &pair[1]) == expected);
    ConjugateFamilyCheck {
        range,
        count: family.len(),
        commute_ok,
        monotone_ok,
    }
}

#[derive(Serialize)]
struct RealizationCheck {
    depth: usize,
    element_count: usize,
    level_sizes: Vec<usize>,
    window: (String, String),
    order_isomorphism_pairs: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    order_error: Option<String>,
    action_coverage: Vec<(String, usize)>,
    #[serde(skip_serializing_if = "Option::is_none")]
    action_error: Option<String>,
    a_plus: FixBracket,
    a_minus: FixBracket,
}

#[derive(Serialize)]
struct VerifyWreathReport {
    config: RunConfig,
    conditions: ConditionsReport,
    conditions_ok: bool,
    conjugates: ConjugateFamilyCheck,
    conjugates_ok: bool,
    realization: RealizationCheck,
    realization_ok: bool,
    strict_tower: StrictTowerReport,
    strict_tower_ok: bool,
    properties: Vec<PropOutcome>,
    properties_ok: bool,
    all_passed: bool,
}

pub fn wreath(args: &VerifyWreathArgs, mut config: RunConfig) -> Result<Outcome> {
    if args.range < 0 {
        bail!("--range must be nonnegative");
    }
    config.model = Some("wreath".to_string());
    config.orientation = Some(args.orientation.name());
    config.bounds.insert("M", args.depth as i64);
    config.bounds.insert("K", args.range);
    config.bounds.insert("sample_size", args.sample_size as i64);
    config.bounds.insert("support_bound", args.bound);
    config.bounds.insert("prop_cases", args.prop_cases as i64);

    let group = WreathGroup::new(args.orientation.orientation());
    let conditions = group.check_conditions(args.sample_size, args.bound, config.seed);
    let conditions_ok = conditions.all_passed();

    let expected = match args.orientation {
        OrientationArg::ConditionIii => Ordering::Greater,
        OrientationArg::PositiveShift => Ordering::Less,
    };
    let conjugates = conjugate_family_check(&group, 5, expected);
    let conjugates_ok = conjugates.commute_ok && conjugates.monotone_ok;

    let oracle = WreathOracle::new(WreathGroup::new(args.orientation.orientation()));
    let table = build_realization(&oracle, args.depth)?;
    let (order_isomorphism_pairs, order_error) = match check_order_isomorphism(&oracle, &table) {
        Ok(pairs) => (pairs, None),
        Err(e) => (0, Some(e.to_string())),
    };
    let (action_coverage, action_error) = match check_action_consistency(&oracle, &table) {
        Ok(coverage) => (coverage, None),
        Err(e) => (Vec::new(), Some(e.to_string())),
    };
    let (a_plus, a_minus) = estimate_F(&oracle, &table, &oracle.group().a())?;
    let brackets_ok = a_plus.bracket.is_some() && a_minus.bracket.is_some();
    let realization_ok = order_error.is_none() && action_error.is_none() && brackets_ok;
    let realization = RealizationCheck {
        depth: table.depth(),
        element_count: table.element_count(),
        level_sizes: table.level_sizes().to_vec(),
        window: {
            let (lo, hi) = table.window();
            (format_rational(&lo), format_rational(&hi))
        },
        order_isomorphism_pairs,
        order_error,
        action_coverage,
        action_error,
        a_plus,
        a_minus,
    };

    let strict_tower = verify_strict_tower(&oracle, &table, args.range)?;
    let strict_tower_ok =
        strict_tower.nesting_ok && strict_tower.conclusive_to.is_some_and(|k| k >= args.range);

    let properties = vec![
        wreath_group_laws(config.seed, args.prop_cases),
        vec_compare_totality(config.seed, args.prop_cases),
    ];
    let properties_ok = properties.iter().all(|p| p.passed());

    let all_passed =
        conditions_ok && conjugates_ok && realization_ok && strict_tower_ok && properties_ok;
    let report = VerifyWreathReport {
        config,
        conditions,
        conditions_ok,
        conjugates,
        conjugates_ok,
        realization,
        realization_ok,
        strict_tower,
        strict_tower_ok,
        properties,
        properties_ok,
        all_passed,
    };
    Outcome::new(&report, !all_passed, None)
}
