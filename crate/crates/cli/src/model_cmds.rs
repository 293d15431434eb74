//! Subcommands over piecewise-linear generator assignments: orbitals of a
//! word, tower search, crossed pairs, quasi-orbital witnesses, and the
//! iterated commutator probe.

use std::path::PathBuf;

use anyhow::{bail, Context, Result};
use clap::Args;
use num_rational::BigRational;
use serde::Serialize;

use orbitalis_core::extpoint::{format_rational, ExtPoint};
use orbitalis_core::models;
use orbitalis_core::plmap::{Orbital, PLMap};
use orbitalis_core::towers::{
    count_distinct_positive_words, find_crossed_pair, quasi_orbital_witnesses, tower_search,
    Side, SignedOrbital,
};
use orbitalis_core::words::{commutator_probe, Assignment, CommutatorProbe};

use crate::output::{CsvTable, Outcome, RunConfig};

#[derive(Debug, Args)]
pub struct ModelArgs {
    /// Built-in generator assignment.
    #[arg(long, default_value = "bs12", conflicts_with = "model_file")]
    pub model: String,
    /// JSON file with a custom assignment:
    /// {"generators": [["name", {"breakpoints": [..], "pieces": [..]}], ..]}.
    #[arg(long, value_name = "FILE")]
    pub model_file: Option<PathBuf>,
}

impl ModelArgs {
    /// Resolves to a label for the report and the assignment itself.
    pub fn load(&self) -> Result<(String, Assignment)> {
        if let Some(path) = &self.model_file {
            let text = std::fs::read_to_string(path)
                .with_context(|| format!("reading model file {}", path.display()))?;
            let assign: Assignment = serde_json::from_str(&text)
                .with_context(|| format!("parsing model file {}", path.display()))?;
            return Ok((format!("custom:{}", path.display()), assign));
        }
        match models::by_name(&self.model) {
            Some(assign) => Ok((self.model.clone(), assign)),
            None => bail!(
                "unknown model `{}`; built-ins are {}",
                self.model,
                models::names().join(", ")
            ),
        }
    }
}

fn parse_rational_arg(s: &str) -> Result<BigRational, String> {
    s.parse::<BigRational>().map_err(|e| e.to_string())
}

/// One tower level in report form; matches the tower JSON schema used by
/// every command that emits nested intervals.
#[derive(Debug, Clone, Serialize)]
pub struct LevelRow {
    pub lo: String,
    pub hi: String,
    pub signature: String,
}

impl LevelRow {
    pub fn from_signed(assign: &Assignment, entry: &SignedOrbital) -> LevelRow {
        LevelRow {
            lo: entry.lo().to_string(),
            hi: entry.hi().to_string(),
            signature: assign.display_word(&entry.signature),
        }
    }
}

#[derive(Debug, Args)]
pub struct OrbitalsArgs {
    #[command(flatten)]
    pub model: ModelArgs,
    /// Word to evaluate, e.g. "g f^-2"; `1` is the identity.
    #[arg(long, default_value = "1")]
    pub word: String,
    /// Left end of the graph sample window (exact rational).
    #[arg(long, default_value = "-4", value_parser = parse_rational_arg, allow_hyphen_values = true)]
    pub graph_lo: BigRational,
    /// Right end of the graph sample window (exact rational).
    #[arg(long, default_value = "4", value_parser = parse_rational_arg, allow_hyphen_values = true)]
    pub graph_hi: BigRational,
    /// Embed this many graph subdivisions in the JSON report; csv output
    /// always samples, defaulting to 16.
    #[arg(long)]
    pub graph_samples: Option<usize>,
}

#[derive(Serialize)]
struct OrbitalsReport {
    config: RunConfig,
    word: String,
    reduced: String,
    map: PLMap,
    orbitals: Vec<Orbital>,
    fixed_set: Vec<(ExtPoint, ExtPoint)>,
    #[serde(skip_serializing_if = "Option::is_none")]
    graph: Option<Vec<(String, String)>>,
}

pub fn orbitals(args: &OrbitalsArgs, mut config: RunConfig) -> Result<Outcome> {
    let (label, assign) = args.model.load()?;
    config.model = Some(label);
    if let Some(n) = args.graph_samples {
        config.bounds.insert("graph_samples", n as i64);
    }
    if args.graph_lo >= args.graph_hi {
        bail!("graph window is empty: --graph-lo must be below --graph-hi");
    }
    let word = assign.parse_word(&args.word)?;
    let map = assign.evaluate(&word);
    let sample = |n: usize| -> Vec<(String, String)> {
        map.graph_samples(&args.graph_lo, &args.graph_hi, n)
            .into_iter()
            .map(|(x, y)| (format_rational(&x), format_rational(&y)))
            .collect()
    };
    let graph = args.graph_samples.map(sample);
    let csv_points = match &graph {
        Some(points) => points.clone(),
        None => sample(16),
    };
    let report = OrbitalsReport {
        config,
        word: assign.display_word(&word),
        reduced: assign.display_word(&word.reduce()),
        orbitals: map.signed_orbitals(),
        fixed_set: map.fixed_set(),
        map,
        graph,
    };
    let csv = CsvTable {
        header: &["x", "image"],
        rows: csv_points.into_iter().map(|(x, y)| vec![x, y]).collect(),
    };
    Outcome::new(&report, false, Some(csv))
}

#[derive(Debug, Args)]
pub struct TowerSearchArgs {
    #[command(flatten)]
    pub model: ModelArgs,
    /// Word-length bound for the orbital pool.
    #[arg(long, visible_alias = "L", default_value_t = 8)]
    pub max_len: usize,
    /// Demand all four endpoints of consecutive levels distinct.
    #[arg(long)]
    pub strict: bool,
    /// Stop growing the chain at this height.
    #[arg(long)]
    pub target: Option<usize>,
}

#[derive(Serialize)]
struct TowerReport {
    config: RunConfig,
    bound: usize,
    strict: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    target: Option<usize>,
    height: usize,
    tower: Vec<LevelRow>,
}

pub fn tower_search_cmd(args: &TowerSearchArgs, mut config: RunConfig) -> Result<Outcome> {
    let (label, assign) = args.model.load()?;
    config.model = Some(label);
    config.bounds.insert("L", args.max_len as i64);
    if let Some(target) = args.target {
        config.bounds.insert("target", target as i64);
    }
    let tower = tower_search(&assign, args.max_len, args.strict, args.target);
    let rows: Vec<LevelRow> = tower
        .elements
        .iter()
        .map(|e| LevelRow::from_signed(&assign, e))
        .collect();
    let csv = CsvTable {
        header: &["level", "lo", "hi", "signature"],
        rows: rows
            .iter()
            .enumerate()
            .map(|(i, r)| {
                vec![
                    (i + 1).to_string(),
                    r.lo.clone(),
                    r.hi.clone(),
                    r.signature.clone(),
                ]
            })
            .collect(),
    };
    let report = TowerReport {
        config,
        bound: args.max_len,
        strict: args.strict,
        target: args.target,
        height: tower.height(),
        tower: rows,
    };
    Outcome::new(&report, false, Some(csv))
}

#[derive(Debug, Args)]
pub struct CrossedPairArgs {
    #[command(flatten)]
    pub model: ModelArgs,
    /// Word-length bound for the pair search.
    #[arg(long, visible_alias = "L", default_value_t = 6)]
    pub max_len: usize,
    /// Positive-word depth for the free-semigroup certificate; 0 skips it.
    #[arg(long, default_value_t = 8)]
    pub certify_depth: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct CertificateBlock {
    pub depth: usize,
    pub distinct_positive_words: u64,
    pub expected: u64,
    pub complete: bool,
}

/// Crossed-pair search result shared by the standalone subcommand and the
/// construction verifier.
#[derive(Debug, Clone, Serialize)]
pub struct CrossedSummary {
    pub bound: usize,
    pub found: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub fixer: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mover: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub interval: Option<Orbital>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub certificate: Option<CertificateBlock>,
}

pub fn crossed_summary(
    assign: &Assignment,
    max_len: usize,
    certify_depth: usize,
) -> CrossedSummary {
    let certify = (certify_depth > 0).then_some(certify_depth);
    match find_crossed_pair(assign, max_len, certify) {
        None => CrossedSummary {
            bound: max_len,
            found: false,
            fixer: None,
            mover: None,
            interval: None,
            certificate: None,
        },
        Some(pair) => {
            let certificate = certify.map(|depth| {
                let distinct = count_distinct_positive_words(
                    &assign.evaluate(&pair.fixer),
                    &assign.evaluate(&pair.mover),
                    depth,
                );
                let expected = (1u64 << (depth + 1)) - 2;
                CertificateBlock {
                    depth,
                    distinct_positive_words: distinct,
                    expected,
                    complete: distinct == expected,
                }
            });
            CrossedSummary {
                bound: max_len,
                found: true,
                fixer: Some(assign.display_word(&pair.fixer)),
                mover: Some(assign.display_word(&pair.mover)),
                interval: Some(pair.interval),
                certificate,
            }
        }
    }
}

#[derive(Serialize)]
struct CrossedPairReport {
    config: RunConfig,
    #[serde(flatten)]
    summary: CrossedSummary,
}

pub fn crossed_pair_cmd(args: &CrossedPairArgs, mut config: RunConfig) -> Result<Outcome> {
    let (label, assign) = args.model.load()?;
    config.model = Some(label);
    config.bounds.insert("L", args.max_len as i64);
    config.bounds.insert("certify_depth", args.certify_depth as i64);
    let summary = crossed_summary(&assign, args.max_len, args.certify_depth);
    Outcome::new(&CrossedPairReport { config, summary }, false, None)
}

#[derive(Debug, Args)]
pub struct QuasiOrbitalArgs {
    #[command(flatten)]
    pub model: ModelArgs,
    /// Word-length bound for the orbital pool.
    #[arg(long, visible_alias = "L", default_value_t = 8)]
    pub max_len: usize,
    /// Minimum chain length to count as a witness.
    #[arg(long, default_value_t = 2)]
    pub min_len: usize,
}

#[derive(Serialize)]
struct WitnessBlock {
    side: Side,
    shared_end: String,
    height: usize,
    chain: Vec<LevelRow>,
}

#[derive(Serialize)]
struct QuasiReport {
    config: RunConfig,
    bound: usize,
    min_len: usize,
    witnesses: Vec<WitnessBlock>,
}

pub fn quasi_orbital_cmd(args: &QuasiOrbitalArgs, mut config: RunConfig) -> Result<Outcome> {
    let (label, assign) = args.model.load()?;
    config.model = Some(label);
    config.bounds.insert("L", args.max_len as i64);
    config.bounds.insert("min_len", args.min_len as i64);
    let witnesses = quasi_orbital_witnesses(&assign, args.max_len, args.min_len);
    let blocks: Vec<WitnessBlock> = witnesses
        .iter()
        .map(|w| WitnessBlock {
            side: w.side,
            shared_end: w.shared_end.to_string(),
            height: w.chain.len(),
            chain: w
                .chain
                .iter()
                .map(|e| LevelRow::from_signed(&assign, e))
                .collect(),
        })
        .collect();
    let csv = CsvTable {
        header: &["witness", "side", "shared_end", "level", "lo", "hi", "signature"],
        rows: blocks
            .iter()
            .enumerate()
            .flat_map(|(w, block)| {
                let side = match block.side {
                    Side::Left => "left",
                    Side::Right => "right",
                };
                block.chain.iter().enumerate().map(move |(i, row)| {
                    vec![
                        (w + 1).to_string(),
                        side.to_string(),
                        block.shared_end.clone(),
                        (i + 1).to_string(),
                        row.lo.clone(),
                        row.hi.clone(),
                        row.signature.clone(),
                    ]
                })
            })
            .collect(),
    };
    let report = QuasiReport {
        config,
        bound: args.max_len,
        min_len: args.min_len,
        witnesses: blocks,
    };
    Outcome::new(&report, false, Some(csv))
}

#[derive(Debug, Args)]
pub struct CommutatorProbeArgs {
    #[command(flatten)]
    pub model: ModelArgs,
    /// Word-length bound for the depth-0 ball.
    #[arg(long, visible_alias = "L", default_value_t = 4)]
    pub max_len: usize,
    /// Iterated commutator depth.
    #[arg(long, default_value_t = 3)]
    pub depth: usize,
}

#[derive(Serialize)]
struct ProbeReport {
    config: RunConfig,
    bound: usize,
    depth: usize,
    probe: CommutatorProbe,
}

pub fn commutator_probe_cmd(
    args: &CommutatorProbeArgs,
    mut config: RunConfig,
) -> Result<Outcome> {
    let (label, assign) = args.model.load()?;
    config.model = Some(label);
    config.bounds.insert("L", args.max_len as i64);
    config.bounds.insert("depth", args.depth as i64);
    let probe = commutator_probe(&assign, args.max_len, args.depth);
    let report = ProbeReport {
        config,
        bound: args.max_len,
        depth: args.depth,
        probe,
    };
    Outcome::new(&report, false, None)
}
