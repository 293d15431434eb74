//! Subcommands over the ordered wreath model: the order contract, the
//! realization table, and the strict-tower certificate.

use anyhow::{bail, Result};
use clap::{Args, ValueEnum};
use serde::Serialize;

use orbitalis_core::extpoint::format_rational;
use orbitalis_core::realize::{
    build_realization, estimate_F, verify_strict_tower, FixBracket, OrderedGroupOracle,
    RealizationTable, StrictTowerReport, TowerLevel, WreathOracle, ZOracle,
};
use orbitalis_core::wreath::{ConditionsReport, ShiftOrientation, WreathGroup};

use crate::output::{CsvTable, Outcome, RunConfig};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OrientationArg {
    /// Conjugation by t moves lamp slots down, so t^m a t^-m grows with m.
    ConditionIii,
    /// The opposite sign convention for the shift.
    PositiveShift,
}

impl OrientationArg {
    pub fn orientation(self) -> ShiftOrientation {
        match self {
            OrientationArg::ConditionIii => ShiftOrientation::ConditionIii,
            OrientationArg::PositiveShift => ShiftOrientation::PositiveShift,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            OrientationArg::ConditionIii => "condition_iii",
            OrientationArg::PositiveShift => "positive_shift",
        }
    }
}

#[derive(Debug, Args)]
pub struct OrderCheckArgs {
    /// Random triples/pairs per sampled condition.
    #[arg(long, default_value_t = 1000)]
    pub sample_size: usize,
    /// Support and exponent bound for sampled elements.
    #[arg(long, default_value_t = 5)]
    pub bound: i64,
    #[arg(long, value_enum, default_value_t = OrientationArg::ConditionIii)]
    pub orientation: OrientationArg,
}

#[derive(Serialize)]
struct OrderCheckReport {
    config: RunConfig,
    report: ConditionsReport,
    all_passed: bool,
}

pub fn order_check(args: &OrderCheckArgs, mut config: RunConfig) -> Result<Outcome> {
    config.orientation = Some(args.orientation.name());
    config.bounds.insert("sample_size", args.sample_size as i64);
    config.bounds.insert("support_bound", args.bound);
    let group = WreathGroup::new(args.orientation.orientation());
    let report = group.check_conditions(args.sample_size, args.bound, config.seed);
    let all_passed = report.all_passed();
    let out = OrderCheckReport {
        config,
        report,
        all_passed,
    };
    Outcome::new(&out, !all_passed, None)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum GroupArg {
    /// The lamplighter-style wreath model with generators t, a, b.
    Wreath,
    /// The infinite cyclic group, as a smoke-test oracle.
    Z,
}

#[derive(Debug, Args)]
pub struct RealizeArgs {
    /// Group to realize on the line.
    #[arg(long, value_enum, default_value_t = GroupArg::Wreath)]
    pub group: GroupArg,
    /// Ball radius of the table.
    #[arg(long, visible_alias = "M", default_value_t = 4)]
    pub depth: usize,
    #[arg(long, value_enum, default_value_t = OrientationArg::ConditionIii)]
    pub orientation: OrientationArg,
}

#[derive(Serialize)]
struct GeneratorBlock {
    name: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    position: Option<String>,
    plus: FixBracket,
    minus: FixBracket,
}

#[derive(Serialize)]
struct RealizeReport {
    config: RunConfig,
    depth: usize,
    element_count: usize,
    level_sizes: Vec<usize>,
    window: (String, String),
    generators: Vec<GeneratorBlock>,
}

fn realize_with<O: OrderedGroupOracle>(
    oracle: &O,
    depth: usize,
    config: RunConfig,
) -> Result<Outcome> {
    let table = build_realization(oracle, depth)?;
    let mut generators = Vec::new();
    for (name, gen) in oracle.generators() {
        let (plus, minus) = estimate_F(oracle, &table, &gen)?;
        generators.push(GeneratorBlock {
            name,
            position: table.position(&gen).map(format_rational),
            plus,
            minus,
        });
    }
    let report = RealizeReport {
        config,
        depth: table.depth(),
        element_count: table.element_count(),
        level_sizes: table.level_sizes().to_vec(),
        window: {
            let (lo, hi) = table.window();
            (format_rational(&lo), format_rational(&hi))
        },
        generators,
    };
    Outcome::new(&report, false, Some(table_dump(oracle, &table)))
}

/// The (element, position) dump in ascending position order.
fn table_dump<O: OrderedGroupOracle>(
    oracle: &O,
    table: &RealizationTable<O::Elem>,
) -> CsvTable {
    CsvTable {
        header: &["element", "position"],
        rows: table
            .sorted_ids()
            .iter()
            .map(|&id| {
                vec![
                    oracle.describe(&table.elements()[id]),
                    format_rational(table.position_by_id(id)),
                ]
            })
            .collect(),
    }
}

pub fn realize(args: &RealizeArgs, mut config: RunConfig) -> Result<Outcome> {
    config.bounds.insert("M", args.depth as i64);
    match args.group {
        GroupArg::Wreath => {
            config.model = Some("wreath".to_string());
            config.orientation = Some(args.orientation.name());
            let oracle = WreathOracle::new(WreathGroup::new(args.orientation.orientation()));
            realize_with(&oracle, args.depth, config)
        }
        GroupArg::Z => {
            config.model = Some("z".to_string());
            realize_with(&ZOracle, args.depth, config)
        }
    }
}

#[derive(Debug, Args)]
pub struct VerifyTowerArgs {
    /// Ball radius of the table.
    #[arg(long, visible_alias = "M", default_value_t = 6)]
    pub depth: usize,
    /// Conjugates t^-k a t^k for |k| <= range must resolve to brackets.
    #[arg(long, visible_alias = "K", default_value_t = 2)]
    pub range: i64,
    #[arg(long, value_enum, default_value_t = OrientationArg::ConditionIii)]
    pub orientation: OrientationArg,
}

#[derive(Serialize)]
struct ResolutionBlock {
    depth: usize,
    elements: usize,
    level_sizes: Vec<usize>,
    window: (String, String),
}

#[derive(Serialize)]
struct VerifyTowerReport {
    config: RunConfig,
    bound: usize,
    strict: bool,
    height: usize,
    tower: Vec<TowerLevel>,
    resolution: ResolutionBlock,
    passed: bool,
    detail: StrictTowerReport,
}

pub fn verify_tower(args: &VerifyTowerArgs, mut config: RunConfig) -> Result<Outcome> {
    if args.range < 0 {
        bail!("--range must be nonnegative");
    }
    config.model = Some("wreath".to_string());
    config.orientation = Some(args.orientation.name());
    config.bounds.insert("M", args.depth as i64);
    config.bounds.insert("K", args.range);
    let oracle = WreathOracle::new(WreathGroup::new(args.orientation.orientation()));
    let table = build_realization(&oracle, args.depth)?;
    let report = verify_strict_tower(&oracle, &table, args.range)?;
    let passed = report.nesting_ok && report.conclusive_to.is_some_and(|k| k >= args.range);
    let resolution = ResolutionBlock {
        depth: table.depth(),
        elements: table.element_count(),
        level_sizes: table.level_sizes().to_vec(),
        window: {
            let (lo, hi) = table.window();
            (format_rational(&lo), format_rational(&hi))
        },
    };
    let csv = CsvTable {
        header: &["level", "lo", "hi", "signature"],
        rows: report
            .tower
            .iter()
            .enumerate()
            .map(|(i, level)| {
                vec![
                    (i + 1).to_string(),
                    level.lo.clone(),
                    level.hi.clone(),
                    level.signature.clone(),
                ]
            })
            .collect(),
    };
    let out = VerifyTowerReport {
        config,
        bound: table.depth(),
        strict: true,
        height: report.certified_height(),
        tower: report.tower.clone(),
        resolution,
        passed,
        detail: report,
    };
    Outcome::new(&out, !passed, Some(csv))
}
