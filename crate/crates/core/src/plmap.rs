//! Exact piecewise-linear orientation-preserving homeomorphisms of the line.
//!
//! A [`PLMap`] is a strictly increasing continuous map that is affine with
//! positive rational slope on each of finitely many pieces. Values are
//! computed exactly over `BigRational`, so fixed points, orbitals and
//! equality are decidable, not approximate.

use std::collections::BTreeSet;
use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::extpoint::{format_rational, parse_rational, ExtPoint, ParsePointError};

/// One affine piece `x ↦ slope·x + offset`. Inside a valid [`PLMap`] the
/// slope is always positive.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Affine {
    pub slope: BigRational,
    pub offset: BigRational,
}

impl Affine {
    pub fn new(slope: BigRational, offset: BigRational) -> Self {
        Affine { slope, offset }
    }

    pub fn identity() -> Self {
        Affine::new(BigRational::one(), BigRational::zero())
    }

    pub fn is_identity(&self) -> bool {
        self.slope.is_one() && self.offset.is_zero()
    }

    pub fn apply(&self, x: &BigRational) -> BigRational {
        &self.slope * x + &self.offset
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Affine) -> Affine {
        Affine::new(
            &self.slope * &other.slope,
            &self.slope * &other.offset + &self.offset,
        )
    }

    /// Inverse piece; requires a positive slope.
    pub fn invert(&self) -> Affine {
        let inv = self.slope.recip();
        Affine::new(inv.clone(), -(&inv * &self.offset))
    }

    /// The unique fixed point, unless the slope is 1.
    pub fn fixed_point(&self) -> Option<BigRational> {
        if self.slope.is_one() {
            None
        } else {
            Some(&self.offset / (BigRational::one() - &self.slope))
        }
    }
}

impl fmt::Display for Affine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}*x + {}",
            format_rational(&self.slope),
            format_rational(&self.offset)
        )
    }
}

/// Sign of `f(x) - x` on an orbital: the map pushes points right (`+`)
/// or left (`-`) throughout.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sign {
    Pos,
    Neg,
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Sign::Pos => write!(f, "+"),
            Sign::Neg => write!(f, "-"),
        }
    }
}

impl Serialize for Sign {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
        ser.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Sign {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> Result<Self, D::Error> {
        match String::deserialize(de)?.as_str() {
            "+" => Ok(Sign::Pos),
            "-" => Ok(Sign::Neg),
            other => Err(serde::de::Error::custom(format!("bad sign `{other}`"))),
        }
    }
}

/// A maximal open interval on which a map moves every point, together with
/// the common direction of motion. Endpoints may be infinite.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Orbital {
    pub lo: ExtPoint,
    pub hi: ExtPoint,
    pub sign: Sign,
}

impl Orbital {
    pub fn is_inner(&self) -> bool {
        self.lo.is_finite() && self.hi.is_finite()
    }

    /// Same left endpoint or same right endpoint; an endpoint meeting the
    /// opposite side of the other interval does not count.
    pub fn shares_end(&self, other: &Orbital) -> bool {
        self.lo == other.lo || self.hi == other.hi
    }

    pub fn contains(&self, x: &ExtPoint) -> bool {
        self.lo < *x && *x < self.hi
    }

    /// Strict containment of open intervals: `other ⊊ self`.
    pub fn strictly_contains(&self, other: &Orbital) -> bool {
        self.lo <= other.lo
            && other.hi <= self.hi
            && (self.lo < other.lo || other.hi < self.hi)
    }
}

impl fmt::Display for Orbital {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}){}", self.lo, self.hi, self.sign)
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PLError {
    #[error("expected {breakpoints} breakpoints to carry {} pieces, got {pieces}", breakpoints + 1)]
    PieceCountMismatch { breakpoints: usize, pieces: usize },
    #[error("a map needs at least one piece")]
    EmptyPieces,
    #[error("piece {piece} has non-positive slope")]
    NonPositiveSlope { piece: usize },
    #[error("breakpoints not strictly increasing at index {index}")]
    BreakpointsNotIncreasing { index: usize },
    #[error("pieces disagree at breakpoint {breakpoint}")]
    Discontinuity { breakpoint: String },
    #[error("interpolation nodes not strictly increasing at index {index}")]
    NotMonotone { index: usize },
    #[error(transparent)]
    Parse(#[from] ParsePointError),
}

/// An exact piecewise-linear homeomorphism of the line.
///
/// Invariants (enforced by every constructor):
/// * `pieces.len() == breakpoints.len() + 1`,
/// * breakpoints strictly increasing,
/// * every slope positive,
/// * adjacent pieces agree at the breakpoint between them,
/// * canonical: no two adjacent pieces are equal.
///
/// Piece `i` governs `(breakpoints[i-1], breakpoints[i])`, with the missing
/// endpoints read as `-inf` / `+inf`. Equality and hashing are well-defined
/// because the representation is canonical.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawPLMap", into = "RawPLMap")]
pub struct PLMap {
    breakpoints: Vec<BigRational>,
    pieces: Vec<Affine>,
}

impl PLMap {
    pub fn new(breakpoints: Vec<BigRational>, pieces: Vec<Affine>) -> Result<Self, PLError> {
        if pieces.is_empty() {
            return Err(PLError::EmptyPieces);
        }
        if pieces.len() != breakpoints.len() + 1 {
            return Err(PLError::PieceCountMismatch {
                breakpoints: breakpoints.len(),
                pieces: pieces.len(),
            });
        }
        for (i, piece) in pieces.iter().enumerate() {
            if !piece.slope.is_positive() {
                return Err(PLError::NonPositiveSlope { piece: i });
            }
        }
        for (i, w) in breakpoints.windows(2).enumerate() {
            if w[0] >= w[1] {
                return Err(PLError::BreakpointsNotIncreasing { index: i + 1 });
            }
        }
        for (i, b) in breakpoints.iter().enumerate() {
            if pieces[i].apply(b) != pieces[i + 1].apply(b) {
                return Err(PLError::Discontinuity {
                    breakpoint: format_rational(b),
                });
            }
        }
        Ok(Self::canonicalize(breakpoints, pieces))
    }

    /// Merges equal adjacent pieces; assumes the other invariants hold.
    fn canonicalize(breakpoints: Vec<BigRational>, pieces: Vec<Affine>) -> Self {
        let mut keep_bp = Vec::with_capacity(breakpoints.len());
        let mut keep_pc = Vec::with_capacity(pieces.len());
        let mut pieces = pieces.into_iter();
        keep_pc.push(pieces.next().expect("at least one piece"));
        for (b, piece) in breakpoints.into_iter().zip(pieces) {
            if piece != *keep_pc.last().expect("nonempty") {
                keep_bp.push(b);
                keep_pc.push(piece);
            }
        }
        PLMap {
            breakpoints: keep_bp,
            pieces: keep_pc,
        }
    }

    fn from_parts(breakpoints: Vec<BigRational>, pieces: Vec<Affine>) -> Self {
        debug_assert!(
            PLMap::new(breakpoints.clone(), pieces.clone()).is_ok(),
            "internal construction broke a PLMap invariant"
        );
        Self::canonicalize(breakpoints, pieces)
    }

    pub fn identity() -> Self {
        PLMap {
            breakpoints: Vec::new(),
            pieces: vec![Affine::identity()],
        }
    }

    /// A single global affine piece.
    pub fn affine(slope: BigRational, offset: BigRational) -> Result<Self, PLError> {
        PLMap::new(Vec::new(), vec![Affine::new(slope, offset)])
    }

    pub fn is_identity(&self) -> bool {
        self.breakpoints.is_empty() && self.pieces[0].is_identity()
    }

    pub fn breakpoints(&self) -> &[BigRational] {
        &self.breakpoints
    }

    pub fn pieces(&self) -> &[Affine] {
        &self.pieces
    }

    fn piece_index_at(&self, x: &BigRational) -> usize {
        // Number of breakpoints strictly below x; at a breakpoint either
        // neighbor works by continuity.
        self.breakpoints.partition_point(|b| b < x)
    }

    pub fn piece_at(&self, x: &BigRational) -> &Affine {
        &self.pieces[self.piece_index_at(x)]
    }

    pub fn evaluate(&self, x: &BigRational) -> BigRational {
        self.piece_at(x).apply(x)
    }

    /// Extends evaluation to the endpoints, which every map fixes.
    pub fn evaluate_ext(&self, x: &ExtPoint) -> ExtPoint {
        match x {
            ExtPoint::NegInf => ExtPoint::NegInf,
            ExtPoint::PosInf => ExtPoint::PosInf,
            ExtPoint::Finite(q) => ExtPoint::Finite(self.evaluate(q)),
        }
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &PLMap) -> PLMap {
        let other_inv = other.invert();
        let mut merged: BTreeSet<BigRational> = other.breakpoints.iter().cloned().collect();
        merged.extend(self.breakpoints.iter().map(|b| other_inv.evaluate(b)));
        let merged: Vec<BigRational> = merged.into_iter().collect();
        let pieces = region_representatives(&merged)
            .map(|x| {
                let inner = other.piece_at(&x);
                self.piece_at(&inner.apply(&x)).compose(inner)
            })
            .collect();
        PLMap::from_parts(merged, pieces)
    }

    pub fn invert(&self) -> PLMap {
        let breakpoints = self
            .breakpoints
            .iter()
            .enumerate()
            .map(|(i, b)| self.pieces[i].apply(b))
            .collect();
        let pieces = self.pieces.iter().map(Affine::invert).collect();
        PLMap::from_parts(breakpoints, pieces)
    }

    /// Repeated composition; `power(0)` is the identity and negative
    /// exponents invert first.
    pub fn power(&self, n: i64) -> PLMap {
        let base = if n < 0 { self.invert() } else { self.clone() };
        let mut out = PLMap::identity();
        for _ in 0..n.unsigned_abs() {
            out = base.compose(&out);
        }
        out
    }

    /// The maximal open intervals of moved points, left to right, each with
    /// its direction of motion.
    pub fn signed_orbitals(&self) -> Vec<Orbital> {
        let scan = self.displacement_scan();
        let mut out = Vec::new();
        let mut run_start: Option<(ExtPoint, Option<Sign>)> = None;
        for item in &scan {
            match (item.moved(), &mut run_start) {
                (true, None) => run_start = Some((item.left_end(), item.sign())),
                (true, Some((_, sign @ None))) => *sign = item.sign(),
                (true, Some((_, Some(s)))) => {
                    debug_assert!(
                        item.sign().map_or(true, |t| t == *s),
                        "sign flip without a fixed point"
                    );
                }
                (false, Some(_)) => {
                    let (lo, sign) = run_start.take().expect("run in progress");
                    out.push(Orbital {
                        lo,
                        hi: item.left_end(),
                        sign: sign.expect("a moved run contains an interval"),
                    });
                }
                (false, None) => {}
            }
        }
        if let Some((lo, sign)) = run_start {
            out.push(Orbital {
                lo,
                hi: ExtPoint::PosInf,
                sign: sign.expect("a moved run contains an interval"),
            });
        }
        out
    }

    /// Maximal components of the fixed set, left to right, as closed
    /// intervals (a single fixed point has `lo == hi`).
    pub fn fixed_set(&self) -> Vec<(ExtPoint, ExtPoint)> {
        let scan = self.displacement_scan();
        let mut out = Vec::new();
        let mut run_start: Option<ExtPoint> = None;
        for item in &scan {
            match (item.moved(), &mut run_start) {
                (false, None) => run_start = Some(item.left_end()),
                (false, Some(_)) => {}
                (true, Some(_)) => {
                    out.push((run_start.take().expect("run"), item.left_end()));
                }
                (true, None) => {}
            }
        }
        if let Some(lo) = run_start {
            out.push((lo, ExtPoint::PosInf));
        }
        out
    }

    /// Alternating point/interval scan of `sign(f(x) - x)` over the partition
    /// induced by breakpoints and per-piece fixed points.
    fn displacement_scan(&self) -> Vec<ScanItem> {
        let mut critical: BTreeSet<BigRational> = self.breakpoints.iter().cloned().collect();
        for (i, piece) in self.pieces.iter().enumerate() {
            if let Some(fp) = piece.fixed_point() {
                let above_lo = i == 0 || self.breakpoints[i - 1] < fp;
                let below_hi = i == self.breakpoints.len() || fp < self.breakpoints[i];
                if above_lo && below_hi {
                    critical.insert(fp);
                }
            }
        }
        let critical: Vec<BigRational> = critical.into_iter().collect();
        let mut items = Vec::with_capacity(2 * critical.len() + 1);
        for (i, x) in region_representatives(&critical).enumerate() {
            if i > 0 {
                let p = &critical[i - 1];
                items.push(ScanItem::Point {
                    at: p.clone(),
                    fixed: self.evaluate(p) == *p,
                });
            }
            let d = self.evaluate(&x) - &x;
            let sign = if d.is_zero() {
                None
            } else if d.is_positive() {
                Some(Sign::Pos)
            } else {
                Some(Sign::Neg)
            };
            let left = if i == 0 {
                ExtPoint::NegInf
            } else {
                ExtPoint::Finite(critical[i - 1].clone())
            };
            items.push(ScanItem::Interval { left, sign });
        }
        items
    }

    pub fn inner_orbitals(&self) -> Vec<Orbital> {
        self.signed_orbitals()
            .into_iter()
            .filter(Orbital::is_inner)
            .collect()
    }

    /// A map is special when none of its orbitals is inner, i.e. every
    /// orbital reaches an infinite end.
    pub fn is_special(&self) -> bool {
        self.inner_orbitals().is_empty()
    }

    /// The increasing PL map through the given nodes, extended by
    /// translation beyond the extremes. Nodes must be strictly increasing
    /// in both coordinates; no nodes yields the identity.
    pub fn interpolate(nodes: &[(BigRational, BigRational)]) -> Result<Self, PLError> {
        for (i, w) in nodes.windows(2).enumerate() {
            if w[0].0 >= w[1].0 || w[0].1 >= w[1].1 {
                return Err(PLError::NotMonotone { index: i + 1 });
            }
        }
        let Some((first, last)) = nodes.first().zip(nodes.last()) else {
            return Ok(PLMap::identity());
        };
        let mut pieces = Vec::with_capacity(nodes.len() + 1);
        pieces.push(Affine::new(BigRational::one(), &first.1 - &first.0));
        for w in nodes.windows(2) {
            let slope = (&w[1].1 - &w[0].1) / (&w[1].0 - &w[0].0);
            let offset = &w[0].1 - &slope * &w[0].0;
            pieces.push(Affine::new(slope, offset));
        }
        pieces.push(Affine::new(BigRational::one(), &last.1 - &last.0));
        let breakpoints = nodes.iter().map(|(x, _)| x.clone()).collect();
        Ok(PLMap::from_parts(breakpoints, pieces))
    }

    /// Exact graph samples over `[lo, hi]`: `n` even subdivisions plus any
    /// breakpoints inside the window, sorted.
    pub fn graph_samples(
        &self,
        lo: &BigRational,
        hi: &BigRational,
        n: usize,
    ) -> Vec<(BigRational, BigRational)> {
        assert!(lo < hi, "empty sample window");
        assert!(n > 0, "need at least one subdivision");
        let mut xs: BTreeSet<BigRational> = self
            .breakpoints
            .iter()
            .filter(|b| lo <= *b && *b <= hi)
            .cloned()
            .collect();
        let step = (hi - lo) / BigRational::from_integer(n.into());
        for k in 0..=n {
            xs.insert(lo + &step * BigRational::from_integer(k.into()));
        }
        xs.into_iter().map(|x| (x.clone(), self.evaluate(&x))).collect()
    }
}

/// One exact point inside each open region cut out by `cuts`.
pub(crate) fn region_representatives(cuts: &[BigRational]) -> impl Iterator<Item = BigRational> + '_ {
    let one = BigRational::one;
    let two = || BigRational::from_integer(2.into());
    (0..=cuts.len()).map(move |i| {
        if cuts.is_empty() {
            BigRational::zero()
        } else if i == 0 {
            &cuts[0] - one()
        } else if i == cuts.len() {
            &cuts[i - 1] + one()
        } else {
            (&cuts[i - 1] + &cuts[i]) / two()
        }
    })
}

enum ScanItem {
    /// Open region whose left end is `left`; `sign` is `None` when the map
    /// is the identity on it.
    Interval { left: ExtPoint, sign: Option<Sign> },
    Point { at: BigRational, fixed: bool },
}

impl ScanItem {
    fn moved(&self) -> bool {
        match self {
            ScanItem::Interval { sign, .. } => sign.is_some(),
            ScanItem::Point { fixed, .. } => !fixed,
        }
    }

    fn sign(&self) -> Option<Sign> {
        match self {
            ScanItem::Interval { sign, .. } => *sign,
            ScanItem::Point { .. } => None,
        }
    }

    fn left_end(&self) -> ExtPoint {
        match self {
            ScanItem::Interval { left, .. } => left.clone(),
            ScanItem::Point { at, .. } => ExtPoint::Finite(at.clone()),
        }
    }
}

impl fmt::Display for PLMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.breakpoints.is_empty() {
            return write!(f, "{}", self.pieces[0]);
        }
        let mut first = true;
        for (i, piece) in self.pieces.iter().enumerate() {
            if !first {
                write!(f, " | ")?;
            }
            first = false;
            let lo = if i == 0 {
                "-inf".to_string()
            } else {
                format_rational(&self.breakpoints[i - 1])
            };
            let hi = if i == self.breakpoints.len() {
                "+inf".to_string()
            } else {
                format_rational(&self.breakpoints[i])
            };
            write!(f, "[{lo}, {hi}]: {piece}")?;
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct RawAffine {
    slope: String,
    offset: String,
}

#[derive(Serialize, Deserialize)]
struct RawPLMap {
    breakpoints: Vec<String>,
    pieces: Vec<RawAffine>,
}

impl From<PLMap> for RawPLMap {
    fn from(m: PLMap) -> Self {
        RawPLMap {
            breakpoints: m.breakpoints.iter().map(format_rational).collect(),
            pieces: m
                .pieces
                .iter()
                .map(|p| RawAffine {
                    slope: format_rational(&p.slope),
                    offset: format_rational(&p.offset),
                })
                .collect(),
        }
    }
}

impl TryFrom<RawPLMap> for PLMap {
    type Error = PLError;

    fn try_from(raw: RawPLMap) -> Result<Self, Self::Error> {
        let breakpoints = raw
            .breakpoints
            .iter()
            .map(|s| parse_rational(s))
            .collect::<Result<Vec<_>, _>>()?;
        let pieces = raw
            .pieces
            .iter()
            .map(|p| Ok(Affine::new(parse_rational(&p.slope)?, parse_rational(&p.offset)?)))
            .collect::<Result<Vec<_>, ParsePointError>>()?;
        PLMap::new(breakpoints, pieces)
    }
}
