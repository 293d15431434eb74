//! Stock generator assignments used by tests and the CLI.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use serde::Serialize;

use crate::plmap::{Affine, PLMap};
use crate::words::Assignment;

fn qi(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// `f: x ↦ 2x`, `g: x ↦ x+1`. The group they generate consists of the
/// affine maps `x ↦ 2^a·x + b` with `b` dyadic, so every non-identity
/// element has at most one fixed point.
pub fn bs12() -> Assignment {
    Assignment::new(vec![
        ("f".into(), PLMap::affine(qi(2), qi(0)).expect("valid slope")),
        ("g".into(), PLMap::affine(qi(1), qi(1)).expect("valid slope")),
    ])
    .expect("valid names")
}

/// Two commuting translations, `s: x ↦ x+1` and `t: x ↦ x+1/3`.
pub fn translations() -> Assignment {
    Assignment::new(vec![
        ("s".into(), PLMap::affine(qi(1), qi(1)).expect("valid slope")),
        ("t".into(), PLMap::affine(qi(1), q(1, 3)).expect("valid slope")),
    ])
    .expect("valid names")
}

/// Identity outside `(lo, hi)`, pushes right inside: slope 2 on the first
/// third of the interval, then 1/2 back down to the endpoint.
pub fn bump(lo: BigRational, hi: BigRational) -> PLMap {
    assert!(lo < hi, "bump needs a nonempty interval");
    let third = (&hi - &lo) / qi(3);
    let mid = &lo + &third;
    let half = q(1, 2);
    PLMap::new(
        vec![lo.clone(), mid, hi.clone()],
        vec![
            Affine::identity(),
            Affine::new(qi(2), -lo),
            Affine::new(half.clone(), &half * &hi),
            Affine::identity(),
        ],
    )
    .expect("bump pieces are continuous")
}

/// Two overlapping single-bump maps, supports `(0, 1)` and `(1/2, 5/2)`.
pub fn bumps() -> Assignment {
    Assignment::new(vec![
        ("u".into(), bump(qi(0), qi(1))),
        ("v".into(), bump(q(1, 2), q(5, 2))),
    ])
    .expect("valid names")
}

pub fn names() -> &'static [&'static str] {
    &["bs12", "translations", "bumps"]
}

pub fn by_name(name: &str) -> Option<Assignment> {
    match name {
        "bs12" => Some(bs12()),
        "translations" => Some(translations()),
        "bumps" => Some(bumps()),
        _ => None,
    }
}

/// Outcome of scanning every reduced word up to a length bound for the
/// law "each non-identity element is affine with at most one fixed point".
#[derive(Debug, Clone, Serialize)]
pub struct AffineLawReport {
    pub max_len: usize,
    pub words_checked: u64,
    pub distinct_nonidentity: u64,
    pub holds: bool,
    /// Whether every slope seen was an integer power of two.
    pub slopes_are_powers_of_two: bool,
    pub violations_total: u64,
    /// At most the first 20 offending words.
    pub violations: Vec<String>,
}

fn is_power_of_two(n: &num_bigint::BigInt) -> bool {
    use num_traits::One;
    n > &num_bigint::BigInt::from(0) && {
        let bits = n.bits() - 1;
        (num_bigint::BigInt::one() << bits) == *n
    }
}

/// Checks the law above over all reduced words of length at most `max_len`.
pub fn check_affine_law(assign: &Assignment, max_len: usize) -> AffineLawReport {
    let mut words_checked = 0u64;
    let mut violations_total = 0u64;
    let mut violations = Vec::new();
    let mut slopes_pow2 = true;
    let mut distinct = std::collections::HashSet::new();
    assign.for_each_reduced_map(max_len, &mut |letters, map| {
        words_checked += 1;
        slopes_pow2 &= map.pieces().iter().all(|p| {
            (p.slope.denom().is_one() && is_power_of_two(p.slope.numer()))
                || (p.slope.numer().is_one() && is_power_of_two(p.slope.denom()))
        });
        if map.is_identity() {
            return;
        }
        // A non-identity affine map has one fixed point (slope != 1) or
        // none (a translation); anything with a breakpoint breaks the law,
        // as would a non-identity map fixing an interval.
        let affine_with_few_fixed = map.breakpoints().is_empty() && {
            let piece = &map.pieces()[0];
            !piece.slope.is_one() || !num_traits::Zero::is_zero(&piece.offset)
        };
        if affine_with_few_fixed {
            let piece = &map.pieces()[0];
            distinct.insert((piece.slope.clone(), piece.offset.clone()));
        } else {
            violations_total += 1;
            if violations.len() < 20 {
                let word = crate::words::Word::from(letters.to_vec());
                violations.push(assign.display_word(&word));
            }
        }
    });
    AffineLawReport {
        max_len,
        words_checked,
        distinct_nonidentity: distinct.len() as u64,
        holds: violations_total == 0,
        slopes_are_powers_of_two: slopes_pow2,
        violations_total,
        violations,
    }
}
