//! Free words over a finite generating set and their evaluation into maps.
//!
//! Letters are ordered with all positive generators first, then all
//! inverses, each block in generator order. Word enumeration is
//! length-first, then lexicographic in that letter order.

use std::cmp::Ordering;
use std::collections::{HashMap, HashSet};
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::plmap::PLMap;

/// A generator or its inverse, identified by generator index.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Letter {
    pub gen: usize,
    pub inv: bool,
}

impl Letter {
    pub fn new(gen: usize, inv: bool) -> Self {
        Letter { gen, inv }
    }

    pub fn inverse(self) -> Letter {
        Letter {
            gen: self.gen,
            inv: !self.inv,
        }
    }

    /// True when the two letters multiply to the identity.
    pub fn cancels(self, other: Letter) -> bool {
        self.gen == other.gen && self.inv != other.inv
    }

    /// All `2k` letters in enumeration order: positives then inverses.
    pub fn all(k: usize) -> impl Iterator<Item = Letter> + Clone {
        (0..k)
            .map(|g| Letter::new(g, false))
            .chain((0..k).map(|g| Letter::new(g, true)))
    }
}

impl PartialOrd for Letter {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Letter {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.inv, self.gen).cmp(&(other.inv, other.gen))
    }
}

/// A word in the free group on the generators; not necessarily reduced.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Word(Vec<Letter>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Free reduction: repeatedly drop adjacent mutually inverse letters.
    pub fn reduce(&self) -> Word {
        let mut stack: Vec<Letter> = Vec::with_capacity(self.0.len());
        for &letter in &self.0 {
            if stack.last().is_some_and(|&top| top.cancels(letter)) {
                stack.pop();
            } else {
                stack.push(letter);
            }
        }
        Word(stack)
    }

    pub fn is_reduced(&self) -> bool {
        self.0.windows(2).all(|w| !w[0].cancels(w[1]))
    }

    pub fn inverse(&self) -> Word {
        Word(self.0.iter().rev().map(|l| l.inverse()).collect())
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut letters = self.0.clone();
        letters.extend_from_slice(&other.0);
        Word(letters)
    }

    /// The reduced commutator word `x y x⁻¹ y⁻¹`.
    pub fn commutator(x: &Word, y: &Word) -> Word {
        x.concat(y)
            .concat(&x.inverse())
            .concat(&y.inverse())
            .reduce()
    }
}

impl From<Vec<Letter>> for Word {
    fn from(letters: Vec<Letter>) -> Self {
        Word(letters)
    }
}

/// Length-first, then letter-lexicographic.
impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len()
            .cmp(&other.len())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum WordError {
    #[error("generator name `{0}` is invalid (want an identifier)")]
    InvalidName(String),
    #[error("duplicate generator name `{0}`")]
    DuplicateGenerator(String),
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
    #[error("malformed word token `{0}`")]
    BadToken(String),
    #[error("zero exponent in token `{0}`")]
    ZeroExponent(String),
}

#[derive(Debug, Clone)]
struct GenEntry {
    name: String,
    map: PLMap,
    inv: PLMap,
}

/// Named generators with their maps; the inverses are precomputed.
///
/// A word evaluates to the composition of its letters' maps with the
/// leftmost letter outermost, i.e. the rightmost letter acts first.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(try_from = "RawAssignment", into = "RawAssignment")]
pub struct Assignment {
    gens: Vec<GenEntry>,
}

fn valid_name(name: &str) -> bool {
    let mut chars = name.chars();
    chars
        .next()
        .is_some_and(|c| c.is_ascii_alphabetic())
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl Assignment {
    pub fn new(gens: Vec<(String, PLMap)>) -> Result<Self, WordError> {
        let mut seen = HashMap::new();
        for (i, (name, _)) in gens.iter().enumerate() {
            if !valid_name(name) {
                return Err(WordError::InvalidName(name.clone()));
            }
            if seen.insert(name.clone(), i).is_some() {
                return Err(WordError::DuplicateGenerator(name.clone()));
            }
        }
        Ok(Assignment {
            gens: gens
                .into_iter()
                .map(|(name, map)| {
                    let inv = map.invert();
                    GenEntry { name, map, inv }
                })
                .collect(),
        })
    }

    pub fn len(&self) -> usize {
        self.gens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.gens.iter().map(|g| g.name.as_str())
    }

    pub fn generators(&self) -> impl Iterator<Item = (&str, &PLMap)> {
        self.gens.iter().map(|g| (g.name.as_str(), &g.map))
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.gens.iter().position(|g| g.name == name)
    }

    pub fn map_for(&self, letter: Letter) -> &PLMap {
        let entry = &self.gens[letter.gen];
        if letter.inv {
            &entry.inv
        } else {
            &entry.map
        }
    }

    pub fn evaluate(&self, word: &Word) -> PLMap {
        word.letters().iter().fold(PLMap::identity(), |acc, &l| {
            acc.compose(self.map_for(l))
        })
    }

    /// Parses `f g^-2 f` style words; `1` alone is the empty word.
    pub fn parse_word(&self, s: &str) -> Result<Word, WordError> {
        let s = s.trim();
        if s == "1" {
            return Ok(Word::empty());
        }
        let mut letters = Vec::new();
        for token in s.split_whitespace() {
            let (name, exp) = match token.split_once('^') {
                Some((name, exp)) => {
                    let exp: i64 = exp
                        .parse()
                        .map_err(|_| WordError::BadToken(token.to_string()))?;
                    (name, exp)
                }
                None => (token, 1),
            };
            if exp == 0 {
                return Err(WordError::ZeroExponent(token.to_string()));
            }
            let gen = self
                .index_of(name)
                .ok_or_else(|| WordError::UnknownGenerator(name.to_string()))?;
            for _ in 0..exp.unsigned_abs() {
                letters.push(Letter::new(gen, exp < 0));
            }
        }
        Ok(Word(letters))
    }

    /// Inverse of [`Assignment::parse_word`]: runs of a letter print as
    /// powers, the empty word prints as `1`.
    pub fn display_word(&self, word: &Word) -> String {
        if word.is_empty() {
            return "1".to_string();
        }
        let mut out = String::new();
        let flush = |out: &mut String, letter: Letter, count: i64| {
            if !out.is_empty() {
                out.push(' ');
            }
            let name = &self.gens[letter.gen].name;
            let signed = if letter.inv { -count } else { count };
            if signed == 1 {
                out.push_str(name);
            } else {
                write!(out, "{name}^{signed}").expect("write to string");
            }
        };
        let mut run: Option<(Letter, i64)> = None;
        for &letter in word.letters() {
            run = match run {
                Some((l, count)) if l == letter => Some((l, count + 1)),
                Some((l, count)) => {
                    flush(&mut out, l, count);
                    Some((letter, 1))
                }
                None => Some((letter, 1)),
            };
        }
        if let Some((l, count)) = run {
            flush(&mut out, l, count);
        }
        out
    }

    /// Visits every reduced word of length at most `max_len` together with
    /// its map, in depth-first prefix order. Each word costs one
    /// composition on top of its parent.
    pub fn for_each_reduced_map<F: FnMut(&[Letter], &PLMap)>(&self, max_len: usize, f: &mut F) {
        fn rec<F: FnMut(&[Letter], &PLMap)>(
            assign: &Assignment,
            buf: &mut Vec<Letter>,
            map: &PLMap,
            max_len: usize,
            f: &mut F,
        ) {
            f(buf, map);
            if buf.len() == max_len {
                return;
            }
            for letter in Letter::all(assign.len()) {
                if buf.last().is_some_and(|&last| last.cancels(letter)) {
                    continue;
                }
                let next = map.compose(assign.map_for(letter));
                buf.push(letter);
                rec(assign, buf, &next, max_len, f);
                buf.pop();
            }
        }
        rec(self, &mut Vec::new(), &PLMap::identity(), max_len, f);
    }
}

#[derive(Serialize, Deserialize)]
struct RawAssignment {
    generators: Vec<(String, PLMap)>,
}

impl From<Assignment> for RawAssignment {
    fn from(a: Assignment) -> Self {
        RawAssignment {
            generators: a
                .gens
                .into_iter()
                .map(|g| (g.name, g.map))
                .collect(),
        }
    }
}

impl TryFrom<RawAssignment> for Assignment {
    type Error = WordError;

    fn try_from(raw: RawAssignment) -> Result<Self, Self::Error> {
        Assignment::new(raw.generators)
    }
}

/// Iterator over all reduced words of length at most `max_len` over `k`
/// generators, in length-lex order, starting from the empty word.
pub struct ReducedWords {
    k: usize,
    max_len: usize,
    /// The word to yield next; `None` when exhausted.
    next: Option<Vec<Letter>>,
}

impl ReducedWords {
    pub fn new(k: usize, max_len: usize) -> Self {
        ReducedWords {
            k,
            max_len,
            next: Some(Vec::new()),
        }
    }

    fn smallest_after(&self, prev: Option<Letter>) -> Option<Letter> {
        Letter::all(self.k).find(|&l| prev.is_none_or(|p| !p.cancels(l)))
    }

    /// Advances `word` to its length-lex successor of the same length;
    /// false when `word` is the last of its length.
    fn bump(&self, word: &mut Vec<Letter>) -> bool {
        for i in (0..word.len()).rev() {
            let prev = if i > 0 { Some(word[i - 1]) } else { None };
            let bigger = Letter::all(self.k)
                .find(|&l| l > word[i] && prev.is_none_or(|p| !p.cancels(l)));
            if let Some(l) = bigger {
                word[i] = l;
                for j in i + 1..word.len() {
                    word[j] = self
                        .smallest_after(Some(word[j - 1]))
                        .expect("k >= 1 always leaves a non-cancelling letter");
                }
                return true;
            }
        }
        false
    }
}

impl Iterator for ReducedWords {
    type Item = Word;

    fn next(&mut self) -> Option<Self::Item> {
        let current = self.next.take()?;
        let out = Word(current.clone());
        let mut word = current;
        if self.k > 0 && !self.bump(&mut word) {
            if word.len() < self.max_len {
                let len = word.len() + 1;
                word.clear();
                for _ in 0..len {
                    let prev = word.last().copied();
                    word.push(self.smallest_after(prev).expect("k >= 1"));
                }
                self.next = Some(word);
            }
        } else if self.k > 0 {
            self.next = Some(word);
        }
        Some(out)
    }
}

/// Result of iterated commutator probing: sizes of the distinct
/// non-identity element sets per depth and the smallest surviving word.
#[derive(Debug, Clone, Serialize)]
pub struct CommutatorProbe {
    /// `depth_counts[d]` is the number of distinct non-identity elements at
    /// depth `d`; depth 0 is the ball of reduced words itself.
    pub depth_counts: Vec<usize>,
    /// True when the final depth produced no non-identity element.
    pub all_trivial: bool,
    /// Length-lex smallest non-identity representative at the final depth.
    pub witness: Option<String>,
}

/// Depth 0 collects the distinct non-identity maps of all reduced words of
/// length at most `max_len`; depth `d+1` consists of all commutators of
/// pairs from depth `d`, again deduplicated by map.
pub fn commutator_probe(assign: &Assignment, max_len: usize, depth: usize) -> CommutatorProbe {
    // Enumerate in length-lex order so each element's representative is its
    // length-lex first word.
    let mut level: Vec<(Word, PLMap)> = Vec::new();
    let mut seen: HashSet<PLMap> = HashSet::new();
    for word in ReducedWords::new(assign.len(), max_len) {
        let map = assign.evaluate(&word);
        if !map.is_identity() && seen.insert(map.clone()) {
            level.push((word, map));
        }
    }
    let mut counts = vec![level.len()];
    for _ in 0..depth {
        let mut next: Vec<(Word, PLMap)> = Vec::new();
        let mut seen: HashSet<PLMap> = HashSet::new();
        for (i, (wx, mx)) in level.iter().enumerate() {
            for (j, (wy, my)) in level.iter().enumerate() {
                if i == j {
                    continue;
                }
                let map = mx
                    .compose(my)
                    .compose(&mx.invert())
                    .compose(&my.invert());
                if map.is_identity() || !seen.insert(map.clone()) {
                    continue;
                }
                next.push((Word::commutator(wx, wy), map));
            }
        }
        next.sort_by(|a, b| a.0.cmp(&b.0));
        counts.push(next.len());
        level = next;
    }
    let witness = level.iter().map(|(w, _)| w).min();
    CommutatorProbe {
        all_trivial: level.is_empty(),
        witness: witness.map(|w| assign.display_word(w)),
        depth_counts: counts,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::models;
    use num_bigint::BigInt;
    use num_rational::BigRational;

    fn qi(n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }

    fn f() -> Letter {
        Letter::new(0, false)
    }
    fn g() -> Letter {
        Letter::new(1, false)
    }
    fn fi() -> Letter {
        Letter::new(0, true)
    }
    fn gi() -> Letter {
        Letter::new(1, true)
    }

    #[test]
    fn letter_order_puts_positives_first() {
        let all: Vec<Letter> = Letter::all(2).collect();
        assert_eq!(all, vec![f(), g(), fi(), gi()]);
        assert!(f() < g() && g() < fi() && fi() < gi());
    }

    #[test]
    fn reduction_is_a_stack_discipline() {
        let w = Word::from(vec![f(), g(), gi(), fi()]);
        assert!(w.reduce().is_empty());
        let w = Word::from(vec![f(), g(), gi(), f()]);
        assert_eq!(w.reduce(), Word::from(vec![f(), f()]));
        assert!(w.reduce().is_reduced());
        assert!(!w.is_reduced());
        // Reduction of w · w⁻¹ is always empty.
        let w = Word::from(vec![g(), fi(), fi(), g()]);
        assert!(w.concat(&w.inverse()).reduce().is_empty());
        assert_eq!(w.inverse(), Word::from(vec![gi(), f(), f(), gi()]));
    }

    #[test]
    fn word_order_is_length_then_lex() {
        let mut ws = vec![
            Word::from(vec![fi()]),
            Word::empty(),
            Word::from(vec![f(), g()]),
            Word::from(vec![g()]),
            Word::from(vec![f(), f()]),
        ];
        ws.sort();
        assert_eq!(
            ws,
            vec![
                Word::empty(),
                Word::from(vec![g()]),
                Word::from(vec![fi()]),
                Word::from(vec![f(), f()]),
                Word::from(vec![f(), g()]),
            ]
        );
    }

    #[test]
    fn assignment_validates_names() {
        let id = PLMap::identity;
        assert!(Assignment::new(vec![("f".into(), id()), ("g".into(), id())]).is_ok());
        assert_eq!(
            Assignment::new(vec![("f".into(), id()), ("f".into(), id())]).unwrap_err(),
            WordError::DuplicateGenerator("f".into())
        );
        for bad in ["", "1", "a b", "x^2", "-t"] {
            assert_eq!(
                Assignment::new(vec![(bad.to_string(), id())]).unwrap_err(),
                WordError::InvalidName(bad.into()),
                "name `{bad}` should be rejected"
            );
        }
        assert!(Assignment::new(vec![("t_1".into(), id())]).is_ok());
    }

    #[test]
    fn parse_and_display_round_trip() {
        let a = models::bs12();
        for s in ["1", "f", "g^-1", "f^2 g", "f g f^-1 g^-1", "g^3 f^-2 g"] {
            let w = a.parse_word(s).unwrap();
            assert_eq!(a.display_word(&w), s);
        }
        // Powers expand to letter runs.
        let w = a.parse_word("f^3").unwrap();
        assert_eq!(w, Word::from(vec![f(), f(), f()]));
        let w = a.parse_word("g^-2").unwrap();
        assert_eq!(w, Word::from(vec![gi(), gi()]));

        assert_eq!(
            a.parse_word("h"),
            Err(WordError::UnknownGenerator("h".into()))
        );
        assert_eq!(
            a.parse_word("f^x"),
            Err(WordError::BadToken("f^x".into()))
        );
        assert_eq!(
            a.parse_word("f^0"),
            Err(WordError::ZeroExponent("f^0".into()))
        );
        // `1` is only the empty word when it stands alone.
        assert_eq!(
            a.parse_word("f 1"),
            Err(WordError::UnknownGenerator("1".into()))
        );
    }

    #[test]
    fn evaluation_is_a_homomorphism() {
        let a = models::bs12();
        // g f doubles then shifts: x ↦ 2x + 1.
        let gf = a.evaluate(&a.parse_word("g f").unwrap());
        assert_eq!(gf, PLMap::affine(qi(2), qi(1)).unwrap());
        // g f^2: x ↦ 4x + 1.
        let gff = a.evaluate(&a.parse_word("g f^2").unwrap());
        assert_eq!(gff, PLMap::affine(qi(4), qi(1)).unwrap());
        // f g: x ↦ 2x + 2.
        let fg = a.evaluate(&a.parse_word("f g").unwrap());
        assert_eq!(fg, PLMap::affine(qi(2), qi(2)).unwrap());

        let w1 = a.parse_word("g f^-1 g").unwrap();
        let w2 = a.parse_word("f g^-2 f").unwrap();
        assert_eq!(
            a.evaluate(&w1.concat(&w2)),
            a.evaluate(&w1).compose(&a.evaluate(&w2))
        );
        assert_eq!(a.evaluate(&w1.inverse()), a.evaluate(&w1).invert());
        assert_eq!(a.evaluate(&w1.reduce()), a.evaluate(&w1));
    }

    #[test]
    fn enumeration_order_is_frozen() {
        let a = models::bs12();
        let words: Vec<String> = ReducedWords::new(2, 2)
            .map(|w| a.display_word(&w))
            .collect();
        assert_eq!(
            words,
            vec![
                "1", "f", "g", "f^-1", "g^-1", "f^2", "f g", "f g^-1", "g f", "g^2", "g f^-1",
                "f^-1 g", "f^-2", "f^-1 g^-1", "g^-1 f", "g^-1 f^-1", "g^-2",
            ]
        );
    }

    #[test]
    fn enumeration_matches_filtering_oracle() {
        // Oracle: generate all 4^n letter sequences, keep the reduced ones.
        let mut oracle: Vec<Word> = vec![Word::empty()];
        let mut layer: Vec<Vec<Letter>> = vec![Vec::new()];
        for _ in 0..3 {
            let mut next = Vec::new();
            for w in &layer {
                for l in Letter::all(2) {
                    let mut w2 = w.clone();
                    w2.push(l);
                    next.push(w2);
                }
            }
            oracle.extend(
                next.iter()
                    .map(|w| Word::from(w.clone()))
                    .filter(Word::is_reduced),
            );
            layer = next;
        }
        oracle.sort();

        let got: Vec<Word> = ReducedWords::new(2, 3).collect();
        assert_eq!(got, oracle);
        // 1 + 4 + 4·3 + 4·9 words.
        assert_eq!(got.len(), 53);
    }

    #[test]
    fn enumeration_counts_follow_the_free_formula() {
        // 2k(2k-1)^(n-1) reduced words of length n.
        let count = |k: usize, max: usize| ReducedWords::new(k, max).count();
        assert_eq!(count(2, 5), 1 + 4 * (1 + 3 + 9 + 27 + 81));
        assert_eq!(count(1, 3), 1 + 2 + 2 + 2);
        assert_eq!(count(3, 2), 1 + 6 + 6 * 5);
        assert_eq!(count(0, 4), 1);
    }

    #[test]
    fn visitor_agrees_with_iterator() {
        let a = models::bs12();
        let mut visited = Vec::new();
        a.for_each_reduced_map(3, &mut |letters, map| {
            let w = Word::from(letters.to_vec());
            assert!(w.is_reduced());
            assert_eq!(*map, a.evaluate(&w), "incremental map drifted");
            visited.push(w);
        });
        visited.sort();
        let expected: Vec<Word> = ReducedWords::new(2, 3).collect();
        assert_eq!(visited, expected);
    }

    #[test]
    fn commutator_word_shape() {
        let a = models::bs12();
        let x = a.parse_word("f").unwrap();
        let y = a.parse_word("g").unwrap();
        assert_eq!(a.display_word(&Word::commutator(&x, &y)), "f g f^-1 g^-1");
        assert!(Word::commutator(&x, &x).is_empty());
    }

    #[test]
    fn probe_counts_against_translation_oracle() {
        // Every element of the model is x ↦ 2^a·x + b, and
        // [m1, m2](x) = x + (2^a - 1)·d - (2^c - 1)·b for m1 = 2^a x + b,
        // m2 = 2^c x + d. The oracle counts distinct such translations
        // without composing any maps.
        let a = models::bs12();
        let mut ball: Vec<(BigRational, BigRational)> = Vec::new();
        let mut seen = std::collections::HashSet::new();
        a.for_each_reduced_map(2, &mut |_, map| {
            assert!(map.breakpoints().is_empty());
            let piece = &map.pieces()[0];
            if !map.is_identity() && seen.insert((piece.slope.clone(), piece.offset.clone())) {
                ball.push((piece.slope.clone(), piece.offset.clone()));
            }
        });
        assert_eq!(ball.len(), 16);

        let one = qi(1);
        let mut translations = std::collections::HashSet::new();
        for (s1, o1) in &ball {
            for (s2, o2) in &ball {
                let shift = (s1 - &one) * o2 - (s2 - &one) * o1;
                if !num_traits::Zero::is_zero(&shift) {
                    translations.insert(shift);
                }
            }
        }

        let probe = commutator_probe(&a, 2, 1);
        assert_eq!(probe.depth_counts[0], 16);
        assert_eq!(probe.depth_counts[1], translations.len());
        assert!(!probe.all_trivial);
        assert_eq!(probe.witness.as_deref(), Some("f g f^-1 g^-1"));
    }

    #[test]
    fn probe_depth_two_is_trivial_for_affine_model() {
        // Depth-1 elements are translations, which commute.
        let probe = commutator_probe(&models::bs12(), 4, 2);
        assert_eq!(probe.depth_counts.len(), 3);
        assert_eq!(probe.depth_counts[2], 0);
        assert!(probe.all_trivial);
        assert_eq!(probe.witness, None);
    }

    #[test]
    fn zero_generator_assignment_degenerates_gracefully() {
        let a = Assignment::new(Vec::new()).unwrap();
        assert!(a.is_empty());
        let words: Vec<Word> = ReducedWords::new(0, 5).collect();
        assert_eq!(words, vec![Word::empty()]);
        assert_eq!(a.parse_word("1").unwrap(), Word::empty());
        let probe = commutator_probe(&a, 5, 1);
        assert!(probe.all_trivial);
        assert_eq!(probe.depth_counts, vec![0, 0]);
    }

    #[test]
    fn assignment_serde_round_trip() {
        let a = models::bs12();
        let js = serde_json::to_string(&a).unwrap();
        let back: Assignment = serde_json::from_str(&js).unwrap();
        let names: Vec<&str> = back.names().collect();
        assert_eq!(names, vec!["f", "g"]);
        for (w, _) in [("f", ()), ("g", ())] {
            let word = a.parse_word(w).unwrap();
            assert_eq!(a.evaluate(&word), back.evaluate(&word));
        }
        // Duplicate names are rejected at the serde boundary too.
        let bad = "{\"generators\":[[\"f\",{\"breakpoints\":[],\"pieces\":[{\"slope\":\"1\",\"offset\":\"0\"}]}],[\"f\",{\"breakpoints\":[],\"pieces\":[{\"slope\":\"1\",\"offset\":\"0\"}]}]]}";
        assert!(serde_json::from_str::<Assignment>(bad).is_err());
    }
}
