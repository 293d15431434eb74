//! Exact normal-form arithmetic and a left-invariant total order for the
//! iterated wreath group generated by a shift `t`, a doubling lamp `a`,
//! and a dyadic lamp `b`.
//!
//! Elements carry a unique normal form t^m * Delta(d) * omega(w) where d is
//! a finitely supported integer vector (the a-copies) and w a finitely
//! supported dyadic vector (the b-copies). `t` shifts slots, `Delta(d)`
//! scales every w-coordinate by 2^(sum d).
//!
//! The order compares elements in left-normal-form coordinates (w-part
//! written leftmost): w first, then d, then the t-exponent, each vector by
//! the scalar order at the smallest differing index. Comparing the raw
//! right-normal-form parts instead is not left-invariant; see the unit
//! test with an explicit counterexample.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::Rng;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::sample::rng_from_seed;

/// Exact dyadic rational num / 2^exp, canonical when num is odd or exp = 0.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DyadicRational {
    num: BigInt,
    exp: u32,
}

impl DyadicRational {
    pub fn new(num: BigInt, exp: u32) -> Self {
        let mut d = DyadicRational { num, exp };
        d.canonicalize();
        d
    }

    pub fn from_int(n: i64) -> Self {
        DyadicRational {
            num: BigInt::from(n),
            exp: 0,
        }
    }

    /// p / 2^e before canonicalization.
    pub fn from_parts(p: i64, e: u32) -> Self {
        DyadicRational::new(BigInt::from(p), e)
    }

    fn canonicalize(&mut self) {
        if self.num.is_zero() {
            self.exp = 0;
            return;
        }
        while self.exp > 0 && num_integer::Integer::is_even(&self.num) {
            self.num /= 2;
            self.exp -= 1;
        }
    }

    pub fn numerator(&self) -> &BigInt {
        &self.num
    }

    pub fn exponent(&self) -> u32 {
        self.exp
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn neg(&self) -> Self {
        DyadicRational {
            num: -&self.num,
            exp: self.exp,
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let e = self.exp.max(other.exp);
        let num = (&self.num << (e - self.exp)) + (&other.num << (e - other.exp));
        DyadicRational::new(num, e)
    }

    /// Multiplication by 2^k.
    pub fn scale_pow2(&self, k: i64) -> Self {
        if self.num.is_zero() {
            return self.clone();
        }
        if k >= 0 {
            DyadicRational::new(&self.num << (k as u32), self.exp)
        } else {
            DyadicRational::new(self.num.clone(), self.exp + (-k) as u32)
        }
    }
}

impl PartialOrd for DyadicRational {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for DyadicRational {
    fn cmp(&self, other: &Self) -> Ordering {
        (&self.num << other.exp).cmp(&(&other.num << self.exp))
    }
}

/// Renders as "p/q" with q = 2^exp, "p" when exp = 0.
impl fmt::Display for DyadicRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.exp == 0 {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, BigInt::one() << self.exp)
        }
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum WreathError {
    #[error("cannot parse `{0}` as a dyadic rational p/2^e")]
    BadDyadic(String),
    #[error("element {0} has a nonzero lamp part and does not act on vectors")]
    ActOutsideTopGroup(String),
}

impl FromStr for DyadicRational {
    type Err = WreathError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || WreathError::BadDyadic(s.to_string());
        let (p, q) = match s.split_once('/') {
            None => (s.trim(), None),
            Some((p, q)) => (p.trim(), Some(q.trim())),
        };
        let num: BigInt = p.parse().map_err(|_| bad())?;
        let exp = match q {
            None => 0,
            Some(q) => {
                let den: BigInt = q.parse().map_err(|_| bad())?;
                if den < BigInt::one() {
                    return Err(bad());
                }
                let bits = den.bits() - 1;
                if BigInt::one() << bits != den {
                    return Err(bad());
                }
                bits as u32
            }
        };
        Ok(DyadicRational::new(num, exp))
    }
}

impl Serialize for DyadicRational {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for DyadicRational {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let raw = String::deserialize(d)?;
        raw.parse().map_err(|e| D::Error::custom(format!("{e}")))
    }
}

/// Scalar values storable in a finitely supported vector.
pub trait Scalar: Clone + Ord + Eq + std::hash::Hash + fmt::Display {
    fn zero() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
}

impl Scalar for i64 {
    fn zero() -> Self {
        0
    }
    fn is_zero(&self) -> bool {
        *self == 0
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn neg(&self) -> Self {
        -self
    }
}

impl Scalar for DyadicRational {
    fn zero() -> Self {
        DyadicRational::from_int(0)
    }
    fn is_zero(&self) -> bool {
        DyadicRational::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        DyadicRational::add(self, other)
    }
    fn neg(&self) -> Self {
        DyadicRational::neg(self)
    }
}

/// Finitely supported vector over integer slots; zero values never stored.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FinSupportVec<S: Scalar> {
    entries: BTreeMap<i64, S>,
}

impl<S: Scalar> Default for FinSupportVec<S> {
    fn default() -> Self {
        FinSupportVec {
            entries: BTreeMap::new(),
        }
    }
}

impl<S: Scalar> FinSupportVec<S> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn unit(index: i64, value: S) -> Self {
        let mut v = Self::new();
        v.set(index, value);
        v
    }

    pub fn from_entries(entries: impl IntoIterator<Item = (i64, S)>) -> Self {
        let mut v = Self::new();
        for (i, s) in entries {
            v.set(i, v.get(i).add(&s));
        }
        v
    }

    pub fn set(&mut self, index: i64, value: S) {
        if value.is_zero() {
            self.entries.remove(&index);
        } else {
            self.entries.insert(index, value);
        }
    }

    pub fn get(&self, index: i64) -> S {
        self.entries.get(&index).cloned().unwrap_or_else(S::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn support(&self) -> impl Iterator<Item = i64> + '_ {
        self.entries.keys().copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = (i64, &S)> {
        self.entries.iter().map(|(&k, v)| (k, v))
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (i, s) in other.iter() {
            out.set(i, out.get(i).add(s));
        }
        out
    }

    pub fn neg(&self) -> Self {
        FinSupportVec {
            entries: self.entries.iter().map(|(&k, v)| (k, v.neg())).collect(),
        }
    }

    fn map_values(&self, f: impl Fn(&S) -> S) -> Self {
        let mut v = Self::new();
        for (i, s) in self.iter() {
            v.set(i, f(s));
        }
        v
    }
}

/// Order at the smallest differing slot: the vector with the smaller scalar
/// there is smaller; equal iff identical.
pub fn vec_compare<S: Scalar>(x: &FinSupportVec<S>, y: &FinSupportVec<S>) -> Ordering {
    let mut xi = x.iter().peekable();
    let mut yi = y.iter().peekable();
    loop {
        match (xi.peek(), yi.peek()) {
            (None, None) => return Ordering::Equal,
            (Some((_, xv)), None) => return (*xv).cmp(&S::zero()),
            (None, Some((_, yv))) => return S::zero().cmp(yv),
            (Some(&(xk, xv)), Some(&(yk, yv))) => match xk.cmp(&yk) {
                Ordering::Less => {
                    let c = xv.cmp(&S::zero());
                    if c != Ordering::Equal {
                        return c;
                    }
                    xi.next();
                }
                Ordering::Greater => {
                    let c = S::zero().cmp(yv);
                    if c != Ordering::Equal {
                        return c;
                    }
                    yi.next();
                }
                Ordering::Equal => {
                    let c = xv.cmp(yv);
                    if c != Ordering::Equal {
                        return c;
                    }
                    xi.next();
                    yi.next();
                }
            },
        }
    }
}

/// Direction the shift moves slot indices. `ConditionIii` sends the unit at
/// slot i to slot i-1 under one application of t, which is the orientation
/// making the conjugate chain t^m a t^-m increasing in m. `PositiveShift`
/// reads the same formula with the opposite sign.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ShiftOrientation {
    ConditionIii,
    PositiveShift,
}

impl Default for ShiftOrientation {
    fn default() -> Self {
        ShiftOrientation::ConditionIii
    }
}

impl ShiftOrientation {
    /// sigma^s applied to slot indices.
    fn offset(self, s: i64) -> i64 {
        match self {
            ShiftOrientation::ConditionIii => -s,
            ShiftOrientation::PositiveShift => s,
        }
    }
}

fn shift_vec<S: Scalar>(v: &FinSupportVec<S>, s: i64, orient: ShiftOrientation) -> FinSupportVec<S> {
    if s == 0 {
        return v.clone();
    }
    let off = orient.offset(s);
    FinSupportVec {
        entries: v.iter().map(|(k, val)| (k + off, val.clone())).collect(),
    }
}

/// Normal form t^m * Delta(d) * omega(w).
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct WreathElement {
    pub m: i64,
    #[serde(with = "vec_pairs_int")]
    pub d: FinSupportVec<i64>,
    #[serde(with = "vec_pairs_dyadic")]
    pub w: FinSupportVec<DyadicRational>,
}

macro_rules! vec_pairs_impl {
    ($name:ident, $scalar:ty) => {
        mod $name {
            use super::*;
            pub fn serialize<S: Serializer>(
                v: &FinSupportVec<$scalar>,
                s: S,
            ) -> Result<S::Ok, S::Error> {
                let pairs: Vec<(i64, $scalar)> =
                    v.iter().map(|(k, val)| (k, val.clone())).collect();
                pairs.serialize(s)
            }
            pub fn deserialize<'de, D: Deserializer<'de>>(
                d: D,
            ) -> Result<FinSupportVec<$scalar>, D::Error> {
                let pairs: Vec<(i64, $scalar)> = Vec::deserialize(d)?;
                Ok(FinSupportVec::from_entries(pairs))
            }
        }
    };
}

vec_pairs_impl!(vec_pairs_int, i64);
vec_pairs_impl!(vec_pairs_dyadic, DyadicRational);

impl WreathElement {
    pub fn identity() -> Self {
        WreathElement {
            m: 0,
            d: FinSupportVec::new(),
            w: FinSupportVec::new(),
        }
    }

    pub fn is_identity(&self) -> bool {
        self.m == 0 && self.d.is_zero() && self.w.is_zero()
    }

    /// Member of the cyclic subgroup generated by t.
    pub fn in_c(&self) -> bool {
        self.d.is_zero() && self.w.is_zero()
    }

    /// Member of the subgroup generated by t and a.
    pub fn in_g(&self) -> bool {
        self.w.is_zero()
    }
}

impl fmt::Display for WreathElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ds: Vec<String> = self.d.iter().map(|(k, v)| format!("{k}:{v}")).collect();
        let ws: Vec<String> = self.w.iter().map(|(k, v)| format!("{k}:{v}")).collect();
        write!(
            f,
            "t^{} * d[{{{}}}] * w[{{{}}}]",
            self.m,
            ds.join(","),
            ws.join(",")
        )
    }
}

/// The group with a fixed shift orientation; all operations are exact.
#[derive(Debug, Clone, Copy, Default)]
pub struct WreathGroup {
    pub orientation: ShiftOrientation,
}

impl WreathGroup {
    pub fn new(orientation: ShiftOrientation) -> Self {
        WreathGroup { orientation }
    }

    pub fn t(&self) -> WreathElement {
        WreathElement {
            m: 1,
            ..WreathElement::identity()
        }
    }

    pub fn a(&self) -> WreathElement {
        WreathElement {
            d: FinSupportVec::unit(0, 1),
            ..WreathElement::identity()
        }
    }

    pub fn b(&self) -> WreathElement {
        WreathElement {
            w: FinSupportVec::unit(0, DyadicRational::from_int(1)),
            ..WreathElement::identity()
        }
    }

    pub fn generators(&self) -> Vec<(String, WreathElement)> {
        vec![
            ("t".into(), self.t()),
            ("a".into(), self.a()),
            ("b".into(), self.b()),
        ]
    }

    pub fn multiply(&self, g1: &WreathElement, g2: &WreathElement) -> WreathElement {
        let or = self.orientation;
        let sum_d2: i64 = g2.d.iter().map(|(_, v)| v).sum();
        WreathElement {
            m: g1.m + g2.m,
            d: shift_vec(&g1.d, -g2.m, or).add(&g2.d),
            w: shift_vec(&g1.w, -g2.m, or)
                .map_values(|v| v.scale_pow2(-sum_d2))
                .add(&g2.w),
        }
    }

    pub fn invert(&self, g: &WreathElement) -> WreathElement {
        let or = self.orientation;
        let sum_d: i64 = g.d.iter().map(|(_, v)| v).sum();
        WreathElement {
            m: -g.m,
            d: shift_vec(&g.d, g.m, or).neg(),
            w: shift_vec(&g.w, g.m, or)
                .map_values(|v| v.scale_pow2(sum_d))
                .neg(),
        }
    }

    pub fn power(&self, g: &WreathElement, n: i64) -> WreathElement {
        let step = if n >= 0 { g.clone() } else { self.invert(g) };
        let mut out = WreathElement::identity();
        for _ in 0..n.abs() {
            out = self.multiply(&out, &step);
        }
        out
    }

    /// Action of a w-free element on a dyadic vector: scale by 2^(sum d)
    /// and shift slots by t^m.
    pub fn act(
        &self,
        g: &WreathElement,
        x: &FinSupportVec<DyadicRational>,
    ) -> Result<FinSupportVec<DyadicRational>, WreathError> {
        if !g.w.is_zero() {
            return Err(WreathError::ActOutsideTopGroup(g.to_string()));
        }
        let sum_d: i64 = g.d.iter().map(|(_, v)| v).sum();
        Ok(shift_vec(x, g.m, self.orientation).map_values(|v| v.scale_pow2(sum_d)))
    }

    /// Left-normal-form coordinates (w written leftmost): the w and d
    /// parts as seen after commuting t^m Delta(d) across them. Comparing
    /// these coordinate pairs (and then m) gives [`WreathGroup::compare`].
    pub fn left_coords(
        &self,
        g: &WreathElement,
    ) -> (FinSupportVec<DyadicRational>, FinSupportVec<i64>) {
        let sum_d: i64 = g.d.iter().map(|(_, v)| v).sum();
        let w = shift_vec(&g.w, g.m, self.orientation).map_values(|v| v.scale_pow2(sum_d));
        let d = shift_vec(&g.d, g.m, self.orientation);
        (w, d)
    }

    /// Total left-invariant order: w-part first, then d-part, then the
    /// t-exponent, vectors compared at the smallest differing slot.
    pub fn compare(&self, g1: &WreathElement, g2: &WreathElement) -> Ordering {
        let (w1, d1) = self.left_coords(g1);
        let (w2, d2) = self.left_coords(g2);
        vec_compare(&w1, &w2)
            .then_with(|| vec_compare(&d1, &d2))
            .then_with(|| g1.m.cmp(&g2.m))
    }

    /// Conjugates t^-k a t^k for k over the range, in k order. Under the
    /// ConditionIii orientation the k-th member is Delta(e_k).
    pub fn conjugate_family(&self, range: std::ops::RangeInclusive<i64>) -> Vec<WreathElement> {
        range
            .map(|k| {
                let tk = self.power(&self.t(), k);
                self.multiply(&self.multiply(&self.invert(&tk), &self.a()), &tk)
            })
            .collect()
    }

    pub fn random_element(&self, rng: &mut impl Rng, bound: i64) -> WreathElement {
        let b = bound.max(1);
        let mut d = FinSupportVec::new();
        for _ in 0..rng.gen_range(0..=3) {
            d.set(rng.gen_range(-b..=b), rng.gen_range(-b..=b));
        }
        let mut w = FinSupportVec::new();
        for _ in 0..rng.gen_range(0..=3) {
            w.set(
                rng.gen_range(-b..=b),
                DyadicRational::from_parts(rng.gen_range(-b..=b), rng.gen_range(0..=3)),
            );
        }
        WreathElement {
            m: rng.gen_range(-b..=b),
            d,
            w,
        }
    }

    /// Samples the order contract: the fixed generator chain, the
    /// conjugate chain, left-invariance, and the two subgroup sandwiches.
    pub fn check_conditions(&self, sample_size: usize, bound: i64, seed: u64) -> ConditionsReport {
        let mut rng = rng_from_seed(seed);
        let one = WreathElement::identity();
        let (t, a, b) = (self.t(), self.a(), self.b());
        let chain = [
            self.invert(&b),
            self.invert(&a),
            self.invert(&t),
            one.clone(),
            t.clone(),
            a.clone(),
            b.clone(),
        ];
        let condition_ii = chain
            .windows(2)
            .all(|p| self.compare(&p[0], &p[1]) == Ordering::Less);

        let mut condition_iii = CheckOutcome::default();
        for m in -bound..=bound {
            for n in (m + 1)..=bound {
                let cm = self.multiply(&self.multiply(&self.power(&t, m), &a), &self.power(&t, -m));
                let cn = self.multiply(&self.multiply(&self.power(&t, n), &a), &self.power(&t, -n));
                condition_iii.record(
                    self.compare(&cm, &cn) == Ordering::Less,
                    || format!("t^{m} a t^-{m} vs t^{n} a t^-{n}"),
                );
            }
        }

        let mut left_invariance = CheckOutcome::default();
        for _ in 0..sample_size {
            let g = self.random_element(&mut rng, bound);
            let h1 = self.random_element(&mut rng, bound);
            let h2 = self.random_element(&mut rng, bound);
            let want = self.compare(&h1, &h2);
            left_invariance.record(
                self.compare(&self.multiply(&g, &h1), &self.multiply(&g, &h2)) == want,
                || format!("g={g} h1={h1} h2={h2}"),
            );
        }

        let mut condition_iv = CheckOutcome::default();
        while condition_iv.checked < sample_size {
            let g = self.power(&t, rng.gen_range(-100..=100));
            let f = self.random_element(&mut rng, bound);
            if f.in_c() || self.compare(&one, &f) != Ordering::Less {
                continue;
            }
            condition_iv.record(self.sandwiched(&g, &f), || format!("g={g} f={f}"));
        }

        let mut condition_v = CheckOutcome::default();
        while condition_v.checked < sample_size {
            let mut g = self.random_element(&mut rng, bound);
            g.w = FinSupportVec::new();
            let f = self.random_element(&mut rng, bound);
            if f.in_g() || self.compare(&one, &f) != Ordering::Less {
                continue;
            }
            condition_v.record(self.sandwiched(&g, &f), || format!("g={g} f={f}"));
        }

        ConditionsReport {
            seed,
            sample_size,
            bound,
            orientation: self.orientation,
            condition_ii,
            condition_iii,
            left_invariance,
            condition_iv,
            condition_v,
        }
    }

    /// f^-1 < g < f and f^-1 < g^-1 < f.
    fn sandwiched(&self, g: &WreathElement, f: &WreathElement) -> bool {
        let fi = self.invert(f);
        let gi = self.invert(g);
        self.compare(&fi, g) == Ordering::Less
            && self.compare(g, f) == Ordering::Less
            && self.compare(&fi, &gi) == Ordering::Less
            && self.compare(&gi, f) == Ordering::Less
    }
}

#[derive(Debug, Clone, Default, Serialize)]
pub struct CheckOutcome {
    pub checked: usize,
    pub failures: usize,
    pub counterexample: Option<String>,
}

impl CheckOutcome {
    fn record(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.failures += 1;
            if self.counterexample.is_none() {
                self.counterexample = Some(describe());
            }
        }
    }

    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ConditionsReport {
    pub seed: u64,
    pub sample_size: usize,
    pub bound: i64,
    pub orientation: ShiftOrientation,
    pub condition_ii: bool,
    pub condition_iii: CheckOutcome,
    pub left_invariance: CheckOutcome,
    pub condition_iv: CheckOutcome,
    pub condition_v: CheckOutcome,
}

impl ConditionsReport {
    pub fn all_passed(&self) -> bool {
        self.condition_ii
            && self.condition_iii.passed()
            && self.left_invariance.passed()
            && self.condition_iv.passed()
            && self.condition_v.passed()
    }
}
