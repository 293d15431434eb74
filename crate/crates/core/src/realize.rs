//! Realizing a countable left-ordered group as positions on the line.
//!
//! Given an oracle for exact group arithmetic and a left-invariant total
//! order, [`build_realization`] enumerates the ball of a given radius in
//! the generators and assigns each element an exact rational position,
//! order-isomorphically, by midpoint insertion. Generator actions become
//! piecewise-linear approximants interpolated through the known orbit
//! pairs. On top of the table, [`estimate_F`] brackets the fixed points
//! flanking the identity's orbit for a given element, and
//! [`verify_strict_tower`] certifies (at table resolution) the strict
//! nesting of the orbitals of the conjugate family t^-k a t^k.
//!
//! Everything downstream of the table is bracket arithmetic: no claim is
//! made about true fixed points of the infinite-precision action, and a
//! missing bracket is reported as inconclusive, never as absence.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::hash::Hash;
use std::sync::{Arc, RwLock};

use num_rational::BigRational;
use num_traits::Zero;
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::extpoint::format_rational;
use crate::plmap::{PLError, PLMap};
use crate::wreath::{vec_compare, DyadicRational, FinSupportVec, WreathElement, WreathGroup};

/// Exact arithmetic plus a total left-invariant order for a finitely
/// generated group, queried element by element.
pub trait OrderedGroupOracle {
    type Elem: Clone + Eq + Hash + Send + Sync;

    fn identity(&self) -> Self::Elem;
    fn multiply(&self, x: &Self::Elem, y: &Self::Elem) -> Self::Elem;
    fn invert(&self, x: &Self::Elem) -> Self::Elem;
    fn compare(&self, x: &Self::Elem, y: &Self::Elem) -> Ordering;
    /// Named generating set; inverses are derived, not listed.
    fn generators(&self) -> Vec<(String, Self::Elem)>;
    fn describe(&self, x: &Self::Elem) -> String;

    fn power(&self, g: &Self::Elem, n: i64) -> Self::Elem {
        let step = if n >= 0 { g.clone() } else { self.invert(g) };
        let mut out = self.identity();
        for _ in 0..n.unsigned_abs() {
            out = self.multiply(&out, &step);
        }
        out
    }
}

/// The infinite cyclic group under addition, ordered as integers.
#[derive(Debug, Clone, Copy, Default)]
pub struct ZOracle;

impl OrderedGroupOracle for ZOracle {
    type Elem = i64;

    fn identity(&self) -> i64 {
        0
    }
    fn multiply(&self, x: &i64, y: &i64) -> i64 {
        x + y
    }
    fn invert(&self, x: &i64) -> i64 {
        -x
    }
    fn compare(&self, x: &i64, y: &i64) -> Ordering {
        x.cmp(y)
    }
    fn generators(&self) -> Vec<(String, i64)> {
        vec![("t".into(), 1)]
    }
    fn describe(&self, x: &i64) -> String {
        format!("t^{x}")
    }
}

type LeftCoords = (FinSupportVec<DyadicRational>, FinSupportVec<i64>);

/// Oracle for the ordered wreath group. Left-normal-form coordinates are
/// memoized per element, so repeated comparisons (table construction,
/// all-pairs checks) reduce to cached vector walks.
#[derive(Debug, Default)]
pub struct WreathOracle {
    group: WreathGroup,
    coords: RwLock<HashMap<WreathElement, Arc<LeftCoords>>>,
}

impl WreathOracle {
    pub fn new(group: WreathGroup) -> Self {
        WreathOracle {
            group,
            coords: RwLock::new(HashMap::new()),
        }
    }

    pub fn group(&self) -> &WreathGroup {
        &self.group
    }

    fn coords_of(&self, e: &WreathElement) -> Arc<LeftCoords> {
        if let Some(c) = self.coords.read().expect("coords lock").get(e) {
            return Arc::clone(c);
        }
        let c = Arc::new(self.group.left_coords(e));
        self.coords
            .write()
            .expect("coords lock")
            .entry(e.clone())
            .or_insert(c)
            .clone()
    }
}

impl OrderedGroupOracle for WreathOracle {
    type Elem = WreathElement;

    fn identity(&self) -> WreathElement {
        WreathElement::identity()
    }
    fn multiply(&self, x: &WreathElement, y: &WreathElement) -> WreathElement {
        self.group.multiply(x, y)
    }
    fn invert(&self, x: &WreathElement) -> WreathElement {
        self.group.invert(x)
    }
    fn compare(&self, x: &WreathElement, y: &WreathElement) -> Ordering {
        let cx = self.coords_of(x);
        let cy = self.coords_of(y);
        vec_compare(&cx.0, &cy.0)
            .then_with(|| vec_compare(&cx.1, &cy.1))
            .then_with(|| x.m.cmp(&y.m))
    }
    fn generators(&self) -> Vec<(String, WreathElement)> {
        self.group.generators()
    }
    fn describe(&self, x: &WreathElement) -> String {
        x.to_string()
    }
}

#[derive(Debug, Error)]
pub enum RealizeError {
    #[error("order oracle compared distinct elements as equal: {left} vs {right}")]
    CompareCollision { left: String, right: String },
    #[error("order oracle is inconsistent near {left} vs {right}")]
    OrderInconsistent { left: String, right: String },
    #[error("position order disagrees with the oracle on ({left}, {right})")]
    OrderMismatch { left: String, right: String },
    #[error("approximant for generator {generator} is not monotone: {source}")]
    ApproximantNotMonotone {
        generator: String,
        source: PLError,
    },
    #[error("approximant for {generator} misses the table at {at}")]
    ActionMismatch { generator: String, at: String },
    #[error("the identity element has no flanking fixed points to bracket")]
    IdentityElement,
    #[error("realization has no generator named `{0}`")]
    MissingGenerator(String),
}

/// Order-isomorphic position table for the ball of radius `depth`.
///
/// Elements are stored in discovery order (identity first); `sorted` holds
/// element ids in increasing position order. Positions never change once
/// assigned, so growing the depth only refines the table.
#[derive(Debug, Clone)]
pub struct RealizationTable<E> {
    depth: usize,
    elements: Vec<E>,
    index: HashMap<E, usize>,
    positions: Vec<BigRational>,
    sorted: Vec<usize>,
    levels: Vec<usize>,
    approximants: Vec<(String, PLMap)>,
}

impl<E: Clone + Eq + Hash> RealizationTable<E> {
    pub fn depth(&self) -> usize {
        self.depth
    }

    pub fn element_count(&self) -> usize {
        self.elements.len()
    }

    /// Cumulative ball sizes, one entry per completed radius.
    pub fn level_sizes(&self) -> &[usize] {
        &self.levels
    }

    pub fn elements(&self) -> &[E] {
        &self.elements
    }

    pub fn id_of(&self, e: &E) -> Option<usize> {
        self.index.get(e).copied()
    }

    pub fn position_by_id(&self, id: usize) -> &BigRational {
        &self.positions[id]
    }

    pub fn position(&self, e: &E) -> Option<&BigRational> {
        self.id_of(e).map(|i| &self.positions[i])
    }

    /// Element ids in increasing position order.
    pub fn sorted_ids(&self) -> &[usize] {
        &self.sorted
    }

    pub fn approximants(&self) -> &[(String, PLMap)] {
        &self.approximants
    }

    pub fn approximant(&self, name: &str) -> Option<&PLMap> {
        self.approximants
            .iter()
            .find(|(n, _)| n == name)
            .map(|(_, m)| m)
    }

    /// Smallest and largest assigned positions.
    pub fn window(&self) -> (BigRational, BigRational) {
        let lo = self.positions[*self.sorted.first().expect("nonempty table")].clone();
        let hi = self.positions[*self.sorted.last().expect("nonempty table")].clone();
        (lo, hi)
    }
}

/// Enumerates the ball of radius `depth` breadth-first (each frontier
/// element extended on the right by every generator letter and inverse),
/// deduplicates by oracle equality, and assigns positions by midpoint
/// insertion in compare order: first element at 0, new extremes one unit
/// out, everything else at the midpoint of its order neighbors.
pub fn build_realization<O: OrderedGroupOracle>(
    oracle: &O,
    depth: usize,
) -> Result<RealizationTable<O::Elem>, RealizeError> {
    let gens = oracle.generators();
    let mut letters: Vec<O::Elem> = gens.iter().map(|(_, g)| g.clone()).collect();
    letters.extend(gens.iter().map(|(_, g)| oracle.invert(g)));

    let ident = oracle.identity();
    let mut table = RealizationTable {
        depth,
        elements: vec![ident.clone()],
        index: HashMap::from([(ident, 0usize)]),
        positions: vec![BigRational::zero()],
        sorted: vec![0],
        levels: vec![1],
        approximants: Vec::new(),
    };

    let mut frontier: Vec<usize> = vec![0];
    for _ in 0..depth {
        let mut discovered: Vec<usize> = Vec::new();
        for &fid in &frontier {
            for letter in &letters {
                let cand = oracle.multiply(&table.elements[fid], letter);
                if table.index.contains_key(&cand) {
                    continue;
                }
                let id = table.elements.len();
                let at = place(oracle, &table, &cand)?;
                let one = BigRational::from_integer(1.into());
                let pos = if at == 0 {
                    table.positions[table.sorted[0]].clone() - one
                } else if at == table.sorted.len() {
                    table.positions[*table.sorted.last().unwrap()].clone() + one
                } else {
                    (&table.positions[table.sorted[at - 1]]
                        + &table.positions[table.sorted[at]])
                        / BigRational::from_integer(2.into())
                };
                table.index.insert(cand.clone(), id);
                table.elements.push(cand);
                table.positions.push(pos);
                table.sorted.insert(at, id);
                discovered.push(id);
            }
        }
        if discovered.is_empty() {
            break;
        }
        frontier = discovered;
        table.levels.push(table.elements.len());
    }

    for (name, gen) in &gens {
        let mut nodes: Vec<(BigRational, BigRational)> = Vec::new();
        for (i, e) in table.elements.iter().enumerate() {
            if let Some(&j) = table.index.get(&oracle.multiply(gen, e)) {
                nodes.push((table.positions[i].clone(), table.positions[j].clone()));
            }
        }
        nodes.sort_by(|a, b| a.0.cmp(&b.0));
        let map = PLMap::interpolate(&nodes).map_err(|source| {
            RealizeError::ApproximantNotMonotone {
                generator: name.clone(),
                source,
            }
        })?;
        table.approximants.push((name.clone(), map));
    }
    Ok(table)
}

/// Binary search for the compare-order slot of a new element, erroring on
/// any totality violation the probes expose.
fn place<O: OrderedGroupOracle>(
    oracle: &O,
    table: &RealizationTable<O::Elem>,
    cand: &O::Elem,
) -> Result<usize, RealizeError> {
    let collision = |other: &O::Elem| RealizeError::CompareCollision {
        left: oracle.describe(other),
        right: oracle.describe(cand),
    };
    let (mut lo, mut hi) = (0usize, table.sorted.len());
    while lo < hi {
        let mid = (lo + hi) / 2;
        match oracle.compare(&table.elements[table.sorted[mid]], cand) {
            Ordering::Equal => return Err(collision(&table.elements[table.sorted[mid]])),
            Ordering::Less => lo = mid + 1,
            Ordering::Greater => hi = mid,
        }
    }
    // Re-check both neighbors: a comparator that is not a total order can
    // steer the search to a slot its own answers contradict.
    for (neighbor, want) in [
        (lo.checked_sub(1), Ordering::Less),
        ((lo < table.sorted.len()).then_some(lo), Ordering::Greater),
    ] {
        if let Some(n) = neighbor {
            let e = &table.elements[table.sorted[n]];
            match oracle.compare(e, cand) {
                Ordering::Equal => return Err(collision(e)),
                c if c != want => {
                    return Err(RealizeError::OrderInconsistent {
                        left: oracle.describe(e),
                        right: oracle.describe(cand),
                    })
                }
                _ => {}
            }
        }
    }
    Ok(lo)
}

/// Checks compare(g,h) against position order on every table pair.
/// Returns the number of pairs checked.
pub fn check_order_isomorphism<O>(
    oracle: &O,
    table: &RealizationTable<O::Elem>,
) -> Result<u64, RealizeError>
where
    O: OrderedGroupOracle + Sync,
{
    let n = table.element_count();
    let violation = (0..n).into_par_iter().find_map_any(|i| {
        for j in (i + 1)..n {
            let by_pos = table.positions[i].cmp(&table.positions[j]);
            if oracle.compare(&table.elements[i], &table.elements[j]) != by_pos {
                return Some((i, j));
            }
        }
        None
    });
    match violation {
        Some((i, j)) => Err(RealizeError::OrderMismatch {
            left: oracle.describe(&table.elements[i]),
            right: oracle.describe(&table.elements[j]),
        }),
        None => Ok((n as u64) * (n as u64 - 1) / 2),
    }
}

/// Evaluates every generator approximant at every table point whose image
/// is in the table and demands exact agreement. Returns pairs covered per
/// generator, in generator order.
pub fn check_action_consistency<O: OrderedGroupOracle>(
    oracle: &O,
    table: &RealizationTable<O::Elem>,
) -> Result<Vec<(String, usize)>, RealizeError> {
    let mut out = Vec::new();
    for (name, gen) in oracle.generators() {
        let map = table
            .approximant(&name)
            .ok_or_else(|| RealizeError::MissingGenerator(name.clone()))?;
        let mut covered = 0usize;
        for (i, e) in table.elements.iter().enumerate() {
            let Some(&j) = table.index.get(&oracle.multiply(&gen, e)) else {
                continue;
            };
            if map.evaluate(&table.positions[i]) != table.positions[j] {
                return Err(RealizeError::ActionMismatch {
                    generator: name,
                    at: format_rational(&table.positions[i]),
                });
            }
            covered += 1;
        }
        out.push((name, covered));
    }
    Ok(out)
}

/// How a fixed-point bracket was certified.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BracketKind {
    /// One end is the last in-table orbit point of the element, the other
    /// a table point verified (by exact group arithmetic well past the
    /// table edge) to stay on the far side of the whole checked orbit.
    OrbitLimit,
    /// Two adjacent usable table points whose displacements under the
    /// element have opposite signs.
    Crossing,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum FixSide {
    Plus,
    Minus,
}

/// An exact open interval certified to contain the flanking fixed point.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BracketData {
    pub lo: String,
    pub hi: String,
    pub kind: BracketKind,
    /// Orbit points of the identity that stayed inside the table (J).
    pub orbit_steps: usize,
    /// Text form of the validated far-side table element, for orbit-limit
    /// brackets.
    pub bound: Option<String>,
}

impl BracketData {
    pub fn lo_value(&self) -> BigRational {
        parse_rational(&self.lo)
    }

    pub fn hi_value(&self) -> BigRational {
        parse_rational(&self.hi)
    }
}

fn parse_rational(s: &str) -> BigRational {
    let (n, d) = match s.split_once('/') {
        None => (s, "1"),
        Some((n, d)) => (n, d),
    };
    BigRational::new(
        n.parse().expect("bracket numerator"),
        d.parse().expect("bracket denominator"),
    )
}

/// One side of the fixed-point estimate; `bracket: None` means the table
/// depth was insufficient, not that the fixed point is absent.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FixBracket {
    pub element: String,
    pub side: FixSide,
    pub bracket: Option<BracketData>,
}

/// Longest orbit prefix followed before giving up on leaving the table.
const ORBIT_CAP: usize = 64;
/// Extra orbit steps (beyond the in-table prefix) validated against an
/// orbit-limit bound by exact arithmetic.
const VALIDATION_EXTRA: usize = 8;

/// Brackets the fixed points of `g` flanking the identity: the nearest
/// one above 0 (plus side) and below 0 (minus side).
///
/// Strategy per side: walk the identity's orbit under g (inverted when
/// g < identity, so the plus orbit always climbs) while it stays in the
/// table; the last in-table orbit point is a certified inner end. The
/// first table point beyond it that provably dominates the orbit well
/// past the table edge closes the bracket. When the orbit leaves the
/// table immediately, fall back to scanning usable table points for a
/// displacement sign change.
#[allow(non_snake_case)]
pub fn estimate_F<O: OrderedGroupOracle>(
    oracle: &O,
    table: &RealizationTable<O::Elem>,
    g: &O::Elem,
) -> Result<(FixBracket, FixBracket), RealizeError> {
    let ident = oracle.identity();
    let h = match oracle.compare(g, &ident) {
        Ordering::Equal => return Err(RealizeError::IdentityElement),
        Ordering::Greater => g.clone(),
        Ordering::Less => oracle.invert(g),
    };
    let text = oracle.describe(g);
    let mk = |side, bracket| FixBracket {
        element: text.clone(),
        side,
        bracket,
    };
    Ok((
        mk(FixSide::Plus, bracket_side(oracle, table, &h, true)),
        mk(FixSide::Minus, bracket_side(oracle, table, &h, false)),
    ))
}

fn bracket_side<O: OrderedGroupOracle>(
    oracle: &O,
    table: &RealizationTable<O::Elem>,
    h: &O::Elem,
    plus: bool,
) -> Option<BracketData> {
    let step = if plus { h.clone() } else { oracle.invert(h) };
    let mut orbit: Vec<usize> = Vec::new();
    let mut cur = oracle.identity();
    for _ in 0..ORBIT_CAP {
        cur = oracle.multiply(&step, &cur);
        match table.id_of(&cur) {
            Some(i) => orbit.push(i),
            None => break,
        }
    }

    if let Some(&last) = orbit.last() {
        let j = orbit.len();
        let edge = &table.positions[last];
        // sorted_ids walk: nearest table points strictly beyond the edge,
        // closest first.
        let split = table
            .sorted
            .partition_point(|&i| table.positions[i] <= *edge);
        let candidates: Box<dyn Iterator<Item = usize>> = if plus {
            Box::new(table.sorted[split..].iter().copied())
        } else {
            Box::new(table.sorted[..split].iter().rev().copied().filter(|&i| {
                table.positions[i] < *edge
            }))
        };
        let want = if plus { Ordering::Less } else { Ordering::Greater };
        'cand: for ci in candidates {
            let cand = &table.elements[ci];
            let mut cur = oracle.identity();
            for _ in 0..(j + VALIDATION_EXTRA) {
                cur = oracle.multiply(&step, &cur);
                if oracle.compare(&cur, cand) != want {
                    continue 'cand;
                }
            }
            let (lo, hi) = if plus {
                (edge.clone(), table.positions[ci].clone())
            } else {
                (table.positions[ci].clone(), edge.clone())
            };
            return Some(BracketData {
                lo: format_rational(&lo),
                hi: format_rational(&hi),
                kind: BracketKind::OrbitLimit,
                orbit_steps: j,
                bound: Some(oracle.describe(cand)),
            });
        }
    }

    // Crossing fallback: adjacent usable points with opposite displacement.
    let zero = BigRational::zero();
    let usable: Box<dyn Iterator<Item = usize>> = if plus {
        Box::new(table.sorted.iter().copied().filter(|&i| table.positions[i] > zero))
    } else {
        Box::new(
            table
                .sorted
                .iter()
                .rev()
                .copied()
                .filter(|&i| table.positions[i] < zero),
        )
    };
    let mut prev: Option<(usize, bool)> = None;
    for i in usable {
        let Some(im) = table.id_of(&oracle.multiply(h, &table.elements[i])) else {
            continue;
        };
        let up = table.positions[im] > table.positions[i];
        if let Some((pi, pup)) = prev {
            if up != pup {
                let (lo, hi) = if plus {
                    (table.positions[pi].clone(), table.positions[i].clone())
                } else {
                    (table.positions[i].clone(), table.positions[pi].clone())
                };
                return Some(BracketData {
                    lo: format_rational(&lo),
                    hi: format_rational(&hi),
                    kind: BracketKind::Crossing,
                    orbit_steps: 0,
                    bound: None,
                });
            }
        }
        prev = Some((i, up));
    }
    None
}

/// Fixed-point estimate for one member of the conjugate family.
#[derive(Debug, Clone, Serialize)]
pub struct ConjugateEntry {
    pub k: i64,
    pub element: String,
    pub plus: FixBracket,
    pub minus: FixBracket,
}

/// Interval certified to lie inside one conjugate's orbital, labeled by
/// the conjugating word.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TowerLevel {
    pub lo: String,
    pub hi: String,
    pub signature: String,
}

/// Direction the t-approximant moves the right end of a's plus bracket.
#[derive(Debug, Clone, Serialize)]
pub struct DriftProbe {
    pub p: String,
    pub image: String,
    pub relation: String,
}

/// Finite-depth certificate for the strict tower of conjugate orbitals.
#[derive(Debug, Clone, Serialize)]
pub struct StrictTowerReport {
    /// Ball radius of the underlying table.
    pub depth: usize,
    /// Requested conjugate range: k runs over -range..=range.
    pub range: i64,
    /// Position window covered by the table.
    pub window: (String, String),
    /// Largest k' such that every |k| <= k' produced both brackets;
    /// None when even k=0 is unresolved. Larger k are inconclusive, not
    /// refuted.
    pub conclusive_to: Option<i64>,
    pub entries: Vec<ConjugateEntry>,
    /// Whether brackets of adjacent conclusive levels are disjoint in the
    /// nesting direction (plus chain descending, minus chain ascending),
    /// which certifies strict nesting of the true orbitals.
    pub nesting_ok: bool,
    pub nesting_violation: Option<String>,
    /// Certified-inner windows, outermost (most negative k) first; filled
    /// only when nesting holds.
    pub tower: Vec<TowerLevel>,
    pub t_drift: Option<DriftProbe>,
    /// Fixed-point-freeness of the whole realized action is not decidable
    /// at finite depth; reports never assert it.
    pub scope_note: &'static str,
}

impl StrictTowerReport {
    pub fn certified_height(&self) -> usize {
        self.tower.len()
    }
}

fn conjugate_signature(k: i64) -> String {
    if k == 0 {
        "a".to_string()
    } else {
        format!("t^{} a t^{}", -k, k)
    }
}

/// Estimates F± for the conjugates t^-k a t^k, k = -range..=range, and
/// certifies strict nesting of their orbitals from bracket disjointness.
pub fn verify_strict_tower<O: OrderedGroupOracle>(
    oracle: &O,
    table: &RealizationTable<O::Elem>,
    range: i64,
) -> Result<StrictTowerReport, RealizeError> {
    let gens = oracle.generators();
    let named = |name: &str| {
        gens.iter()
            .find(|(n, _)| n == name)
            .map(|(_, g)| g.clone())
            .ok_or_else(|| RealizeError::MissingGenerator(name.to_string()))
    };
    let t = named("t")?;
    let a = named("a")?;

    let mut entries = Vec::new();
    for k in -range..=range {
        let tk = oracle.power(&t, k);
        let conj = oracle.multiply(&oracle.multiply(&oracle.invert(&tk), &a), &tk);
        let (plus, minus) = estimate_F(oracle, table, &conj)?;
        entries.push(ConjugateEntry {
            k,
            element: oracle.describe(&conj),
            plus,
            minus,
        });
    }

    let both = |k: i64| {
        let e = &entries[(k + range) as usize];
        e.plus.bracket.is_some() && e.minus.bracket.is_some()
    };
    let conclusive_to = (0..=range)
        .take_while(|&k| both(k) && both(-k))
        .last();

    let mut nesting_ok = true;
    let mut nesting_violation = None;
    if let Some(k0) = conclusive_to {
        for k in -k0..k0 {
            let outer = &entries[(k + range) as usize];
            let inner = &entries[(k + 1 + range) as usize];
            let op = outer.plus.bracket.as_ref().unwrap();
            let ip = inner.plus.bracket.as_ref().unwrap();
            let om = outer.minus.bracket.as_ref().unwrap();
            let im = inner.minus.bracket.as_ref().unwrap();
            if ip.hi_value() >= op.lo_value() {
                nesting_ok = false;
                nesting_violation =
                    Some(format!("plus brackets of k={} and k={} overlap", k, k + 1));
                break;
            }
            if im.lo_value() <= om.hi_value() {
                nesting_ok = false;
                nesting_violation =
                    Some(format!("minus brackets of k={} and k={} overlap", k, k + 1));
                break;
            }
        }
    }

    let mut tower = Vec::new();
    if nesting_ok {
        if let Some(k0) = conclusive_to {
            for k in -k0..=k0 {
                let e = &entries[(k + range) as usize];
                tower.push(TowerLevel {
                    lo: e.minus.bracket.as_ref().unwrap().hi.clone(),
                    hi: e.plus.bracket.as_ref().unwrap().lo.clone(),
                    signature: conjugate_signature(k),
                });
            }
        }
    }

    let t_drift = entries[range as usize]
        .plus
        .bracket
        .as_ref()
        .zip(table.approximant("t"))
        .map(|(b, tmap)| {
            let p = b.hi_value();
            let image = tmap.evaluate(&p);
            let relation = match image.cmp(&p) {
                Ordering::Less => "less",
                Ordering::Equal => "equal",
                Ordering::Greater => "greater",
            };
            DriftProbe {
                p: b.hi.clone(),
                image: format_rational(&image),
                relation: relation.to_string(),
            }
        });

    let (wlo, whi) = table.window();
    Ok(StrictTowerReport {
        depth: table.depth(),
        range,
        window: (format_rational(&wlo), format_rational(&whi)),
        conclusive_to,
        entries,
        nesting_ok,
        nesting_violation,
        tower,
        t_drift,
        scope_note: "brackets certify containment at table resolution only; \
                     global fixed-point freeness is outside finite-depth verification",
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::wreath::ShiftOrientation;

    fn rat(s: &str) -> BigRational {
        parse_rational(s)
    }

    #[test]
    fn cyclic_group_realizes_as_integers() {
        let oracle = ZOracle;
        let table = build_realization(&oracle, 3).unwrap();
        assert_eq!(table.level_sizes(), &[1, 3, 5, 7]);
        assert_eq!(table.element_count(), 7);
        for k in -3i64..=3 {
            assert_eq!(table.position(&k), Some(&rat(&k.to_string())), "k={k}");
        }
        assert_eq!(check_order_isomorphism(&oracle, &table).unwrap(), 21);
        assert_eq!(
            check_action_consistency(&oracle, &table).unwrap(),
            vec![("t".to_string(), 6)]
        );
        let (plus, minus) = estimate_F(&oracle, &table, &1).unwrap();
        assert!(plus.bracket.is_none(), "a translation has no fixed point");
        assert!(minus.bracket.is_none());
        assert!(matches!(
            estimate_F(&oracle, &table, &0),
            Err(RealizeError::IdentityElement)
        ));
        assert!(matches!(
            verify_strict_tower(&oracle, &table, 0),
            Err(RealizeError::MissingGenerator(_))
        ));
    }

    #[test]
    fn wreath_table_depth_two_spot_positions() {
        let oracle = WreathOracle::new(WreathGroup::new(ShiftOrientation::ConditionIii));
        let table = build_realization(&oracle, 2).unwrap();
        assert_eq!(table.level_sizes(), &[1, 7, 37]);
        let g = oracle.group();
        let (t, a, b) = (g.t(), g.a(), g.b());
        let pos = |e: &WreathElement| format_rational(table.position(e).unwrap());
        assert_eq!(pos(&WreathElement::identity()), "0");
        assert_eq!(pos(&t), "1");
        assert_eq!(pos(&a), "2");
        assert_eq!(pos(&b), "3");
        assert_eq!(pos(&g.invert(&t)), "-1");
        assert_eq!(pos(&g.invert(&a)), "-2");
        assert_eq!(pos(&g.invert(&b)), "-3");
        assert_eq!(pos(&g.power(&t, 2)), "3/2");
        assert_eq!(pos(&g.power(&t, -2)), "-3/2");
        assert_eq!(pos(&g.multiply(&a, &a)), "19/8");
        assert_eq!(pos(&g.multiply(&t, &a)), "5/2");
        assert_eq!(pos(&g.multiply(&a, &t)), "9/4");
        assert_eq!(pos(&g.multiply(&t, &b)), "4");
        assert_eq!(pos(&g.multiply(&b, &t)), "13/4");
        assert_eq!(check_order_isomorphism(&oracle, &table).unwrap(), 666);
        let action = check_action_consistency(&oracle, &table).unwrap();
        assert_eq!(action.len(), 3);
        assert!(action.iter().all(|(_, covered)| *covered > 0));
    }

    #[test]
    fn wreath_fix_brackets_at_depth_four() {
        let oracle = WreathOracle::new(WreathGroup::default());
        let table = build_realization(&oracle, 4).unwrap();
        assert_eq!(table.element_count(), 813);

        let (plus, minus) = estimate_F(&oracle, &table, &oracle.group().a()).unwrap();
        let p = plus.bracket.expect("plus bracket at depth 4");
        assert_eq!((p.lo.as_str(), p.hi.as_str()), ("2483/1024", "4967/2048"));
        assert_eq!(p.kind, BracketKind::OrbitLimit);
        assert_eq!(p.orbit_steps, 4);
        assert_eq!(p.bound.as_deref(), Some("t^1 * d[{0:1,1:-2}] * w[{}]"));
        let m = minus.bracket.expect("minus bracket at depth 4");
        assert_eq!((m.lo.as_str(), m.hi.as_str()), ("-1229/512", "-4915/2048"));
        assert_eq!(m.orbit_steps, 4);
    }

    #[test]
    fn strict_tower_report_at_depth_four() {
        let oracle = WreathOracle::new(WreathGroup::default());
        let table = build_realization(&oracle, 4).unwrap();
        let report = verify_strict_tower(&oracle, &table, 2).unwrap();

        // Depth 4 resolves |k| <= 1 on both sides; k = ±2 lacks a plus
        // bracket, so the report is inconclusive beyond 1, not false.
        assert_eq!(report.conclusive_to, Some(1));
        assert!(report.nesting_ok);
        assert_eq!(report.certified_height(), 3);
        let sigs: Vec<&str> = report.tower.iter().map(|l| l.signature.as_str()).collect();
        assert_eq!(sigs, ["t^1 a t^-1", "a", "t^-1 a t^1"]);
        assert_eq!(report.tower[0].lo, "-665/256");
        assert_eq!(report.tower[0].hi, "1291/512");
        assert_eq!(report.tower[1].lo, "-4915/2048");
        assert_eq!(report.tower[1].hi, "2483/1024");
        assert_eq!(report.tower[2].lo, "-471/256");
        assert_eq!(report.tower[2].hi, "1689/1024");
        for w in report.tower.windows(2) {
            assert!(rat(&w[0].lo) < rat(&w[1].lo) && rat(&w[1].hi) < rat(&w[0].hi));
        }

        let k2 = report.entries.iter().find(|e| e.k == 2).unwrap();
        assert!(k2.plus.bracket.is_none());
        let drift = report.t_drift.as_ref().expect("drift probe");
        assert_eq!(drift.p, "4967/2048");
        assert_eq!(drift.image, "82791/32768");
        assert_eq!(drift.relation, "greater");

        let k1 = report.entries.iter().find(|e| e.k == 1).unwrap();
        let b = k1.plus.bracket.as_ref().unwrap();
        assert_eq!((b.lo.as_str(), b.hi.as_str()), ("1689/1024", "845/512"));
        assert_eq!(b.orbit_steps, 2);
        assert_eq!(b.bound.as_deref(), Some("t^-1 * d[{-1:1,0:-2}] * w[{}]"));

        // K=0: a single certified level.
        let single = verify_strict_tower(&oracle, &table, 0).unwrap();
        assert_eq!(single.conclusive_to, Some(0));
        assert_eq!(single.certified_height(), 1);
        assert_eq!(single.tower[0].signature, "a");
    }

    #[test]
    fn broken_comparator_is_reported() {
        struct Lying;
        impl OrderedGroupOracle for Lying {
            type Elem = i64;
            fn identity(&self) -> i64 {
                0
            }
            fn multiply(&self, x: &i64, y: &i64) -> i64 {
                x + y
            }
            fn invert(&self, x: &i64) -> i64 {
                -x
            }
            fn compare(&self, x: &i64, y: &i64) -> Ordering {
                // Collapses 1 and -1, which the table must detect when
                // the second of the pair arrives.
                x.abs().cmp(&y.abs())
            }
            fn generators(&self) -> Vec<(String, i64)> {
                vec![("t".into(), 1)]
            }
            fn describe(&self, x: &i64) -> String {
                format!("t^{x}")
            }
        }
        match build_realization(&Lying, 2) {
            Err(RealizeError::CompareCollision { .. }) => {}
            other => panic!("expected a compare collision, got {other:?}"),
        }
    }
}
