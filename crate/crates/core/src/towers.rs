//! Towers of signed orbitals: pools, chain search, crossed pairs,
//! maximal inner orbitals and quasi-orbital witnesses.
//!
//! A signed orbital pairs an orbital interval with a witness word (its
//! signature). A tower is a chain of signed orbitals whose intervals nest,
//! holding exactly one signature per interval; a strict tower additionally
//! forbids any two intervals from sharing an end.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap, HashSet};

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::extpoint::ExtPoint;
use crate::plmap::{Orbital, PLMap};
use crate::words::{Assignment, Letter, Word};

/// An orbital interval together with the word that produces it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SignedOrbital {
    pub orbital: Orbital,
    pub signature: Word,
}

impl SignedOrbital {
    pub fn lo(&self) -> &ExtPoint {
        &self.orbital.lo
    }

    pub fn hi(&self) -> &ExtPoint {
        &self.orbital.hi
    }

    /// Checks that the interval really is an orbital (with matching sign)
    /// of the evaluated signature.
    pub fn validate(&self, assign: &Assignment) -> Result<(), TowerError> {
        let map = assign.evaluate(&self.signature);
        if map.signed_orbitals().contains(&self.orbital) {
            Ok(())
        } else {
            Err(TowerError::InvalidOrbital {
                signature: assign.display_word(&self.signature),
                interval: format!("({}, {})", self.orbital.lo, self.orbital.hi),
            })
        }
    }
}

/// A chain of signed orbitals, stored outermost first.
#[derive(Debug, Clone, Default)]
pub struct Tower {
    pub elements: Vec<SignedOrbital>,
    pub strict: bool,
}

impl Tower {
    pub fn height(&self) -> usize {
        self.elements.len()
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum TowerError {
    #[error("interval {interval} is not an orbital of `{signature}`")]
    InvalidOrbital { signature: String, interval: String },
}

/// Germ comparison at the leftmost disagreement: `Less` means the first
/// map runs below the second just right of the last point (or `-inf`)
/// where they agree.
pub fn signature_less(f: &PLMap, g: &PLMap) -> Ordering {
    if f == g {
        return Ordering::Equal;
    }
    let mut cuts: Vec<_> = f
        .breakpoints()
        .iter()
        .chain(g.breakpoints())
        .cloned()
        .collect();
    cuts.sort();
    cuts.dedup();
    for (i, rep) in crate::plmap::region_representatives(&cuts).enumerate() {
        let pf = f.piece_at(&rep);
        let pg = g.piece_at(&rep);
        if pf == pg {
            continue;
        }
        return if i == 0 {
            // Germ at -inf: the steeper map lies below; equal slopes fall
            // back to offsets.
            pg.slope
                .cmp(&pf.slope)
                .then_with(|| pf.offset.cmp(&pg.offset))
        } else {
            // Maps agree up to the cut by continuity, so just right of it
            // the smaller slope runs below.
            pf.slope.cmp(&pg.slope)
        };
    }
    unreachable!("maps differ but all pieces agree");
}

/// Chain, one-signature-per-interval and (optionally) strictness checks.
/// Errors if some entry is not a genuine signed orbital.
pub fn is_tower(
    assign: &Assignment,
    elements: &[SignedOrbital],
    strict: bool,
) -> Result<bool, TowerError> {
    for e in elements {
        e.validate(assign)?;
    }
    // Set semantics: exact duplicates collapse to one element.
    let mut set: Vec<&SignedOrbital> = Vec::new();
    for e in elements {
        if !set.contains(&e) {
            set.push(e);
        }
    }
    for (i, a) in set.iter().enumerate() {
        for b in &set[i + 1..] {
            let (alo, ahi) = (&a.orbital.lo, &a.orbital.hi);
            let (blo, bhi) = (&b.orbital.lo, &b.orbital.hi);
            if alo == blo && ahi == bhi {
                // Same interval under two signatures.
                return Ok(false);
            }
            let a_in_b = blo <= alo && ahi <= bhi;
            let b_in_a = alo <= blo && bhi <= ahi;
            if !a_in_b && !b_in_a {
                return Ok(false);
            }
            if strict && a.orbital.shares_end(&b.orbital) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// All distinct orbital intervals of all reduced words up to a length
/// bound. Each interval keeps one signature: the length-lex first word
/// whose map has it as an orbital.
///
/// Enumeration walks elements rather than words: in length-lex order, the
/// first word reaching a group element extends the first word of its
/// prefix element, so extending only first-words by non-cancelling
/// letters visits every element exactly once.
#[derive(Debug, Clone)]
pub struct OrbitalPool {
    /// Sorted by (lo ascending, hi descending); intervals unique.
    entries: Vec<SignedOrbital>,
    /// Distinct group elements seen, identity included.
    pub element_count: usize,
    pub bound: usize,
}

impl OrbitalPool {
    pub fn build(assign: &Assignment, max_len: usize) -> OrbitalPool {
        let mut seen: HashSet<PLMap> = HashSet::new();
        seen.insert(PLMap::identity());
        let mut frontier: Vec<(Word, PLMap)> = vec![(Word::empty(), PLMap::identity())];
        let mut pool: HashMap<(ExtPoint, ExtPoint), SignedOrbital> = HashMap::new();

        for _ in 0..max_len {
            // Candidates inherit length-lex order from the sorted frontier
            // and ascending letters; evaluation is pure, so it can run in
            // parallel while claiming stays sequential.
            let candidates: Vec<(Word, PLMap)> = frontier
                .par_iter()
                .flat_map_iter(|(word, map)| {
                    let assign = &*assign;
                    Letter::all(assign.len())
                        .filter(|&l| word.letters().last().is_none_or(|&last| !last.cancels(l)))
                        .map(move |l| {
                            let mut letters = word.letters().to_vec();
                            letters.push(l);
                            (Word::from(letters), map.compose(assign.map_for(l)))
                        })
                })
                .collect();
            let mut level = Vec::new();
            for (word, map) in candidates {
                if !seen.insert(map.clone()) {
                    continue;
                }
                for orbital in map.signed_orbitals() {
                    let key = (orbital.lo.clone(), orbital.hi.clone());
                    pool.entry(key).or_insert_with(|| SignedOrbital {
                        orbital,
                        signature: word.clone(),
                    });
                }
                level.push((word, map));
            }
            if level.is_empty() {
                break;
            }
            frontier = level;
        }

        let mut entries: Vec<SignedOrbital> = pool.into_values().collect();
        entries.sort_by(|a, b| {
            a.lo()
                .cmp(b.lo())
                .then_with(|| b.hi().cmp(a.hi()))
        });
        OrbitalPool {
            entries,
            element_count: seen.len(),
            bound: max_len,
        }
    }

    pub fn entries(&self) -> &[SignedOrbital] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

/// Fenwick tree for prefix maxima; updates only ever raise values.
struct MaxTree {
    a: Vec<usize>,
}

impl MaxTree {
    fn new(n: usize) -> Self {
        MaxTree { a: vec![0; n + 1] }
    }

    fn raise(&mut self, mut i: usize, v: usize) {
        while i < self.a.len() {
            self.a[i] = self.a[i].max(v);
            i += i & i.wrapping_neg();
        }
    }

    fn prefix_max(&self, mut i: usize) -> usize {
        let mut out = 0;
        while i > 0 {
            out = out.max(self.a[i]);
            i -= i & i.wrapping_neg();
        }
        out
    }
}

/// For each pool entry, the length of the longest chain going upward
/// (entry innermost, every later interval containing the previous;
/// strictly containing with distinct ends when `strict`).
fn upward_chain_lengths(entries: &[SignedOrbital], strict: bool) -> Vec<usize> {
    let n = entries.len();
    let mut order: Vec<usize> = (0..n).collect();
    if strict {
        order.sort_by(|&i, &j| {
            entries[i]
                .lo()
                .cmp(entries[j].lo())
                .then_with(|| entries[i].hi().cmp(entries[j].hi()))
        });
    } else {
        order.sort_by(|&i, &j| {
            entries[i]
                .lo()
                .cmp(entries[j].lo())
                .then_with(|| entries[j].hi().cmp(entries[i].hi()))
        });
    }
    // Rank his descending so "hi at least mine" becomes a prefix.
    let mut his: Vec<&ExtPoint> = entries.iter().map(SignedOrbital::hi).collect();
    his.sort();
    his.dedup();
    let rank_desc = |hi: &ExtPoint| -> usize {
        let pos = his.partition_point(|h| *h < hi);
        his.len() - pos
    };

    let mut above = vec![0usize; n];
    let mut tree = MaxTree::new(his.len());
    let mut idx = 0;
    while idx < order.len() {
        // Entries sharing a left endpoint: under strict nesting none may
        // contain another, so resolve the whole group before inserting it.
        let mut group_end = idx + 1;
        while strict
            && group_end < order.len()
            && entries[order[group_end]].lo() == entries[order[idx]].lo()
        {
            group_end += 1;
        }
        let group = if strict { &order[idx..group_end] } else { &order[idx..idx + 1] };
        for &i in group {
            let r = rank_desc(entries[i].hi());
            let best = if strict {
                // Need hi strictly above mine: prefix up to r - 1.
                tree.prefix_max(r.saturating_sub(1))
            } else {
                tree.prefix_max(r)
            };
            above[i] = best + 1;
        }
        for &i in group {
            tree.raise(rank_desc(entries[i].hi()), above[i]);
        }
        idx = group.len() + idx;
    }
    above
}

fn contains_interval(outer: &SignedOrbital, inner: &SignedOrbital, strict: bool) -> bool {
    if strict {
        outer.lo() < inner.lo() && inner.hi() < outer.hi()
    } else {
        outer.lo() <= inner.lo()
            && inner.hi() <= outer.hi()
            && (outer.lo(), outer.hi()) != (inner.lo(), inner.hi())
    }
}

/// Finds a longest chain in the orbital pool (capped at `target` when
/// given) and returns it as a tower, outermost first.
///
/// Equal-length chains tie-break on the signature word list compared from
/// the innermost level outward, each word length-then-lex; remaining ties
/// fall to the interval endpoints. The result is a certified lower bound
/// for the (strict) height at this word-length bound.
pub fn tower_search(
    assign: &Assignment,
    max_len: usize,
    strict: bool,
    target: Option<usize>,
) -> Tower {
    let pool = OrbitalPool::build(assign, max_len);
    tower_search_in_pool(&pool, strict, target)
}

/// As [`tower_search`], over an already-built pool.
pub fn tower_search_in_pool(pool: &OrbitalPool, strict: bool, target: Option<usize>) -> Tower {
    let entries = pool.entries();
    if entries.is_empty() {
        return Tower {
            elements: Vec::new(),
            strict,
        };
    }
    let above = upward_chain_lengths(entries, strict);
    let best = *above.iter().max().expect("nonempty pool");
    let cap = target.unwrap_or(best).min(best);
    if cap == 0 {
        return Tower {
            elements: Vec::new(),
            strict,
        };
    }

    let key = |i: usize| (&entries[i].signature, entries[i].lo(), entries[i].hi());
    let mut chain: Vec<usize> = Vec::with_capacity(cap);
    let mut current = (0..entries.len())
        .filter(|&i| above[i] >= cap)
        .min_by(|&i, &j| key(i).cmp(&key(j)))
        .expect("some entry reaches the cap");
    chain.push(current);
    for remaining in (1..cap).rev() {
        current = (0..entries.len())
            .filter(|&j| above[j] >= remaining && contains_interval(&entries[j], &entries[current], strict))
            .min_by(|&i, &j| key(i).cmp(&key(j)))
            .expect("chain length certified by the DP");
        chain.push(current);
    }
    chain.reverse();
    Tower {
        elements: chain.into_iter().map(|i| entries[i].clone()).collect(),
        strict,
    }
}

/// Words `fixer`, `mover` and an orbital `(a,b)` of `fixer` such that
/// `mover` sends `a` or `b` strictly inside `(a,b)`.
#[derive(Debug, Clone)]
pub struct CrossedPair {
    pub fixer: Word,
    pub mover: Word,
    pub interval: Orbital,
}

/// Number of distinct maps among the nonempty positive words of length at
/// most `max_len` in two maps. `2^(max_len+1) - 2` distinct maps certify
/// that the pair generates a free semigroup to that depth.
pub fn count_distinct_positive_words(m1: &PLMap, m2: &PLMap, max_len: usize) -> u64 {
    let mut seen: HashSet<PLMap> = HashSet::new();
    let mut frontier = vec![PLMap::identity()];
    for _ in 0..max_len {
        let mut next = Vec::with_capacity(frontier.len() * 2);
        for m in &frontier {
            for factor in [m1, m2] {
                let composed = m.compose(factor);
                seen.insert(composed.clone());
                next.push(composed);
            }
        }
        frontier = next;
    }
    seen.len() as u64
}

/// Searches word pairs in length-lex order for a crossed pair. With
/// `certify_depth`, pairs are additionally required to have all positive
/// words up to that depth pairwise distinct (a free-semigroup certificate),
/// and the first certified pair is returned.
pub fn find_crossed_pair(
    assign: &Assignment,
    max_len: usize,
    certify_depth: Option<usize>,
) -> Option<CrossedPair> {
    // Element representatives in length-lex order; any crossed pair of
    // words has a crossed pair of representatives no later in the order.
    let mut reps: Vec<(Word, PLMap)> = Vec::new();
    let mut seen: HashSet<PLMap> = HashSet::new();
    seen.insert(PLMap::identity());
    let mut frontier = vec![(Word::empty(), PLMap::identity())];
    for _ in 0..max_len {
        let mut level = Vec::new();
        for (word, map) in &frontier {
            for l in Letter::all(assign.len()) {
                if word.letters().last().is_some_and(|&last| last.cancels(l)) {
                    continue;
                }
                let mut letters = word.letters().to_vec();
                letters.push(l);
                let next = map.compose(assign.map_for(l));
                if seen.insert(next.clone()) {
                    level.push((Word::from(letters), next));
                }
            }
        }
        reps.extend(level.iter().cloned());
        frontier = level;
    }

    for (fixer, fixer_map) in &reps {
        let orbitals = fixer_map.signed_orbitals();
        if orbitals.is_empty() {
            continue;
        }
        for (mover, mover_map) in &reps {
            for orbital in &orbitals {
                let sent_inside = [&orbital.lo, &orbital.hi].into_iter().any(|end| {
                    end.as_finite()
                        .map(|q| mover_map.evaluate(q))
                        .is_some_and(|img| orbital.contains(&ExtPoint::Finite(img)))
                });
                if !sent_inside {
                    continue;
                }
                if let Some(depth) = certify_depth {
                    let want = 2u64.pow(depth as u32 + 1) - 2;
                    if count_distinct_positive_words(fixer_map, mover_map, depth) != want {
                        continue;
                    }
                }
                return Some(CrossedPair {
                    fixer: fixer.clone(),
                    mover: mover.clone(),
                    interval: orbital.clone(),
                });
            }
        }
    }
    None
}

/// Orbitals with both ends finite that are not strictly contained in
/// another such orbital, sorted by (lo ascending, hi descending).
pub fn maximal_inner_orbitals(assign: &Assignment, max_len: usize) -> Vec<SignedOrbital> {
    let pool = OrbitalPool::build(assign, max_len);
    let inner: Vec<&SignedOrbital> = pool
        .entries()
        .iter()
        .filter(|e| e.orbital.is_inner())
        .collect();
    inner
        .iter()
        .filter(|a| {
            !inner
                .iter()
                .any(|b| b.orbital.strictly_contains(&a.orbital))
        })
        .map(|e| (*e).clone())
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Left,
    Right,
}

/// A maximal family of pool orbitals sharing one end: pairwise strictly
/// nested, finite-depth evidence for a quasi-orbital with that heavy end.
#[derive(Debug, Clone)]
pub struct QuasiOrbitalWitness {
    /// Outermost first.
    pub chain: Vec<SignedOrbital>,
    pub shared_end: ExtPoint,
    pub side: Side,
}

/// Groups the pool by (shared end, side) and reports every group of size
/// at least `min_len` as a witness chain. Witnesses are ordered left side
/// first, then by end.
pub fn quasi_orbital_witnesses(
    assign: &Assignment,
    max_len: usize,
    min_len: usize,
) -> Vec<QuasiOrbitalWitness> {
    let pool = OrbitalPool::build(assign, max_len);
    let mut groups: BTreeMap<(Side, ExtPoint), Vec<SignedOrbital>> = BTreeMap::new();
    for e in pool.entries() {
        groups
            .entry((Side::Left, e.lo().clone()))
            .or_default()
            .push(e.clone());
        groups
            .entry((Side::Right, e.hi().clone()))
            .or_default()
            .push(e.clone());
    }
    groups
        .into_iter()
        .filter(|(_, members)| members.len() >= min_len.max(1))
        .map(|((side, shared_end), mut members)| {
            match side {
                // Shared left end: wider means larger hi.
                Side::Left => members.sort_by(|a, b| b.hi().cmp(a.hi())),
                Side::Right => members.sort_by(|a, b| a.lo().cmp(b.lo())),
            }
            QuasiOrbitalWitness {
                chain: members,
                shared_end,
                side,
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::models;
    use crate::plmap::Sign;
    use num_bigint::BigInt;
    use num_rational::BigRational;

    fn qi(n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    fn ext(n: i64, d: i64) -> ExtPoint {
        ExtPoint::from_ratio(n, d)
    }

    fn orb(lo: ExtPoint, hi: ExtPoint, sign: Sign) -> Orbital {
        Orbital { lo, hi, sign }
    }

    #[test]
    fn shares_end_examples() {
        let o = |lo, hi| orb(lo, hi, Sign::Pos);
        assert!(o(ext(0, 1), ext(1, 2)).shares_end(&o(ext(0, 1), ext(3, 4))));
        assert!(o(ExtPoint::NegInf, ext(-1, 1)).shares_end(&o(ExtPoint::NegInf, ext(-1, 3))));
        assert!(!o(ext(1, 4), ext(1, 2)).shares_end(&o(ext(1, 2), ext(3, 4))));
    }

    #[test]
    fn signature_less_reference_cases() {
        let id = PLMap::identity();
        let shift = PLMap::affine(qi(1), qi(1)).unwrap();
        let doubling = PLMap::affine(qi(2), qi(0)).unwrap();
        // Disagree everywhere; equal slopes, offsets decide.
        assert_eq!(signature_less(&id, &shift), Ordering::Less);
        assert_eq!(signature_less(&shift, &id), Ordering::Greater);
        assert_eq!(signature_less(&doubling, &doubling), Ordering::Equal);
        // Steeper map lies below near -inf.
        assert_eq!(signature_less(&doubling, &id), Ordering::Less);

        // Identity on (-inf, 0], steeper after: decided at 0 by slopes.
        let kink = PLMap::new(
            vec![qi(0)],
            vec![crate::plmap::Affine::identity(), crate::plmap::Affine::new(qi(3), qi(0))],
        )
        .unwrap();
        assert_eq!(signature_less(&id, &kink), Ordering::Less);
        // x+1 vs the kink disagree already near -inf; offsets decide there.
        assert_eq!(signature_less(&kink, &shift), Ordering::Less);
    }

    #[test]
    fn signature_less_matches_pointwise_probe() {
        // Independent check: compare maps by value just right of the first
        // grid point where they differ, on a fine dyadic grid.
        let a = models::bs12();
        let words = ["f", "g", "f^-1 g", "g f", "f g^-1", "g^-2 f"];
        let maps: Vec<PLMap> = words
            .iter()
            .map(|w| a.evaluate(&a.parse_word(w).unwrap()))
            .collect();
        for m1 in &maps {
            for m2 in &maps {
                let got = signature_less(m1, m2);
                // Probe far left, then walk right; affine maps disagree
                // everywhere or nowhere, so one sample point decides.
                let x = qi(-1000);
                let want = if m1 == m2 {
                    Ordering::Equal
                } else {
                    m1.evaluate(&x).cmp(&m2.evaluate(&x))
                };
                assert_eq!(got, want, "{m1} vs {m2}");
            }
        }
    }

    #[test]
    fn is_tower_reference_cases() {
        let a = models::bs12();
        let gf = SignedOrbital {
            orbital: orb(ExtPoint::NegInf, ext(-1, 1), Sign::Neg),
            signature: a.parse_word("g f").unwrap(),
        };
        let gff = SignedOrbital {
            orbital: orb(ExtPoint::NegInf, ext(-1, 3), Sign::Neg),
            signature: a.parse_word("g f^2").unwrap(),
        };
        let set = [gff.clone(), gf.clone()];
        assert_eq!(is_tower(&a, &set, false), Ok(true));
        // Shared end -inf rules the strict variant out.
        assert_eq!(is_tower(&a, &set, true), Ok(false));
        assert_eq!(is_tower(&a, &[], false), Ok(true));
        assert_eq!(is_tower(&a, &[], true), Ok(true));

        // Not a real orbital: wrong endpoint.
        let bogus = SignedOrbital {
            orbital: orb(ExtPoint::NegInf, ext(-1, 2), Sign::Neg),
            signature: a.parse_word("g f").unwrap(),
        };
        assert!(matches!(
            is_tower(&a, &[bogus], false),
            Err(TowerError::InvalidOrbital { .. })
        ));

        // Overlapping but not nested intervals.
        let b = models::bumps();
        let u = SignedOrbital {
            orbital: orb(ext(0, 1), ext(1, 1), Sign::Pos),
            signature: b.parse_word("u").unwrap(),
        };
        let v = SignedOrbital {
            orbital: orb(ext(1, 2), ext(5, 2), Sign::Pos),
            signature: b.parse_word("v").unwrap(),
        };
        assert_eq!(is_tower(&b, &[u.clone(), v], false), Ok(false));
        // Same interval, two signatures.
        let u2 = SignedOrbital {
            orbital: orb(ext(0, 1), ext(1, 1), Sign::Pos),
            signature: b.parse_word("u v u^-1 v^-1 u").unwrap(),
        };
        if u2.validate(&b).is_ok() {
            assert_eq!(is_tower(&b, &[u, u2], false), Ok(false));
        }
    }

    #[test]
    fn pool_at_bound_two_is_frozen() {
        let pool = OrbitalPool::build(&models::bs12(), 2);
        assert_eq!(pool.element_count, 17);
        assert_eq!(pool.len(), 11);
        let a = models::bs12();
        let rendered: Vec<(String, String, String)> = pool
            .entries()
            .iter()
            .map(|e| {
                (
                    e.lo().to_string(),
                    e.hi().to_string(),
                    a.display_word(&e.signature),
                )
            })
            .collect();
        let expect = [
            ("-inf", "+inf", "g"),
            ("-inf", "2", "f g^-1"),
            ("-inf", "1", "f^-1 g"),
            ("-inf", "0", "f"),
            ("-inf", "-1", "g f"),
            ("-inf", "-2", "f g"),
            ("-2", "+inf", "f g"),
            ("-1", "+inf", "g f"),
            ("0", "+inf", "f"),
            ("1", "+inf", "f^-1 g"),
            ("2", "+inf", "f g^-1"),
        ];
        let expect: Vec<(String, String, String)> = expect
            .iter()
            .map(|(a, b, c)| (a.to_string(), b.to_string(), c.to_string()))
            .collect();
        assert_eq!(rendered, expect);
        for e in pool.entries() {
            assert!(e.validate(&a).is_ok());
        }
    }

    #[test]
    fn search_picks_left_family_and_respects_cap() {
        let a = models::bs12();
        let tower = tower_search(&a, 2, false, None);
        // 5 fixed points, so the maximal chain is the whole-line orbital
        // plus all five left intervals.
        assert_eq!(tower.height(), 6);
        let desc: Vec<(String, String)> = tower
            .elements
            .iter()
            .map(|e| (e.lo().to_string(), a.display_word(&e.signature)))
            .collect();
        assert_eq!(
            desc,
            vec![
                ("-inf".into(), "g".into()),
                ("-inf".into(), "f g^-1".into()),
                ("-inf".into(), "f^-1 g".into()),
                ("-inf".into(), "f".into()),
                ("-inf".into(), "g f".into()),
                ("-inf".into(), "f g".into()),
            ]
        );
        assert_eq!(is_tower(&a, &tower.elements, false), Ok(true));

        let capped = tower_search(&a, 2, false, Some(3));
        assert_eq!(capped.height(), 3);
        assert_eq!(is_tower(&a, &capped.elements, false), Ok(true));

        let strict = tower_search(&a, 2, true, None);
        assert_eq!(strict.height(), 1);
    }

    #[test]
    fn single_translation_has_whole_line_tower() {
        let a = Assignment::new(vec![(
            "t".into(),
            PLMap::affine(qi(1), qi(1)).unwrap(),
        )])
        .unwrap();
        let tower = tower_search(&a, 3, false, None);
        assert_eq!(tower.height(), 1);
        assert_eq!(tower.elements[0].lo(), &ExtPoint::NegInf);
        assert_eq!(tower.elements[0].hi(), &ExtPoint::PosInf);
        assert_eq!(a.display_word(&tower.elements[0].signature), "t");
    }

    #[test]
    fn empty_assignment_gives_empty_tower() {
        let a = Assignment::new(Vec::new()).unwrap();
        let tower = tower_search(&a, 4, false, None);
        assert_eq!(tower.height(), 0);
    }

    #[test]
    fn crossed_pair_on_reference_model() {
        let a = models::bs12();
        let pair = find_crossed_pair(&a, 2, None).unwrap();
        assert_eq!(a.display_word(&pair.fixer), "f");
        assert_eq!(a.display_word(&pair.mover), "g");
        assert_eq!(pair.interval.lo, ExtPoint::from_int(0));
        assert_eq!(pair.interval.hi, ExtPoint::PosInf);

        // The uncertified pair is not positively free: f g equals g g f.
        let fm = a.evaluate(&pair.fixer);
        let gm = a.evaluate(&pair.mover);
        assert_eq!(fm.compose(&gm), gm.compose(&gm).compose(&fm));
        assert!(count_distinct_positive_words(&fm, &gm, 8) < 510);

        let certified = find_crossed_pair(&a, 2, Some(8)).unwrap();
        assert_eq!(a.display_word(&certified.fixer), "f");
        assert_eq!(a.display_word(&certified.mover), "f g");
        assert_eq!(certified.interval.lo, ExtPoint::from_int(0));
        assert_eq!(certified.interval.hi, ExtPoint::PosInf);
        let m2 = a.evaluate(&certified.mover);
        assert_eq!(count_distinct_positive_words(&fm, &m2, 8), 510);
    }

    #[test]
    fn translations_have_no_crossed_pair() {
        let a = models::translations();
        assert!(find_crossed_pair(&a, 3, None).is_none());
    }

    #[test]
    fn maximal_inner_orbitals_examples() {
        // Affine model: no inner orbitals at all.
        assert!(maximal_inner_orbitals(&models::bs12(), 3).is_empty());

        // One bump: its orbital is the single maximal inner orbital.
        let single = Assignment::new(vec![("u".into(), models::bump(q(1, 4), q(1, 2)))]).unwrap();
        let got = maximal_inner_orbitals(&single, 1);
        assert_eq!(got.len(), 1);
        assert_eq!(got[0].lo(), &ext(1, 4));
        assert_eq!(got[0].hi(), &ext(1, 2));

        // Nested bumps: only the outer one survives.
        let nested = Assignment::new(vec![
            ("u".into(), models::bump(q(1, 4), q(1, 2))),
            ("w".into(), models::bump(q(1, 8), q(3, 4))),
        ])
        .unwrap();
        let got = maximal_inner_orbitals(&nested, 1);
        assert_eq!(got.len(), 1);
        assert_eq!(got[0].lo(), &ext(1, 8));
        assert_eq!(got[0].hi(), &ext(3, 4));
        let wa = nested.parse_word("w").unwrap();
        assert_eq!(got[0].signature, wa);
    }

    #[test]
    fn quasi_orbital_witnesses_examples() {
        let a = models::bs12();
        // At bound 2 each infinite end carries a 6-element family.
        let ws = quasi_orbital_witnesses(&a, 2, 3);
        assert_eq!(ws.len(), 2);
        assert_eq!(ws[0].side, Side::Left);
        assert_eq!(ws[0].shared_end, ExtPoint::NegInf);
        assert_eq!(ws[0].chain.len(), 6);
        assert_eq!(ws[1].side, Side::Right);
        assert_eq!(ws[1].shared_end, ExtPoint::PosInf);
        assert_eq!(ws[1].chain.len(), 6);
        // Chains are strictly nested outermost-first.
        for w in &ws {
            for pair in w.chain.windows(2) {
                assert!(pair[0].orbital.strictly_contains(&pair[1].orbital));
            }
        }

        // Translations: single whole-line orbital per end, none at k=2.
        assert!(quasi_orbital_witnesses(&models::translations(), 2, 2).is_empty());
        // k=1: every orbital shows up.
        assert!(!quasi_orbital_witnesses(&models::translations(), 2, 1).is_empty());
    }
}
