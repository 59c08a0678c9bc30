//! Words in the virtual braid group on `n` strands.
//!
//! A word is a sequence of generators read top to bottom: `s<i>` is the
//! positive classical crossing of strands i and i+1 (the strand entering at
//! position i passes over), `s<i>'` is its inverse, and `v<i>` is the virtual
//! crossing. Indices are 1-based and must stay below the strand count.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::Result;

/// A single letter of a braid word.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Generator {
    /// Positive classical crossing of strands i, i+1.
    Sigma(usize),
    /// Negative classical crossing of strands i, i+1.
    SigmaInv(usize),
    /// Virtual crossing of strands i, i+1.
    V(usize),
}

impl Generator {
    pub fn index(&self) -> usize {
        match *self {
            Generator::Sigma(i) | Generator::SigmaInv(i) | Generator::V(i) => i,
        }
    }

    pub fn is_classical(&self) -> bool {
        !matches!(self, Generator::V(_))
    }

    /// +1 for `Sigma`, -1 for `SigmaInv`, none for `V`.
    pub fn sign(&self) -> Option<i8> {
        match self {
            Generator::Sigma(_) => Some(1),
            Generator::SigmaInv(_) => Some(-1),
            Generator::V(_) => None,
        }
    }

    /// The inverse letter; `v_i` is an involution.
    pub fn inverse(&self) -> Generator {
        match *self {
            Generator::Sigma(i) => Generator::SigmaInv(i),
            Generator::SigmaInv(i) => Generator::Sigma(i),
            Generator::V(i) => Generator::V(i),
        }
    }

    fn cancels(&self, other: &Generator) -> bool {
        self.inverse() == *other
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Generator::Sigma(i) => write!(f, "s{i}"),
            Generator::SigmaInv(i) => write!(f, "s{i}'"),
            Generator::V(i) => write!(f, "v{i}"),
        }
    }
}

impl FromStr for Generator {
    type Err = Error;

    fn from_str(s: &str) -> Result<Generator> {
        parse_generator(s, 0)
    }
}

fn parse_generator(tok: &str, pos: usize) -> Result<Generator> {
    let err = |msg: String| Error::Parse { pos, msg };
    let (kind, rest) = tok.split_at(tok.len().min(1));
    let (digits, inv) = match rest.strip_suffix('\'') {
        Some(d) => (d, true),
        None => (rest, false),
    };
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return Err(err(format!("expected generator token, got `{tok}`")));
    }
    let i: usize = digits
        .parse()
        .map_err(|_| err(format!("index too large in `{tok}`")))?;
    if i == 0 {
        return Err(err(format!("index must be at least 1 in `{tok}`")));
    }
    match (kind, inv) {
        ("s", false) => Ok(Generator::Sigma(i)),
        ("s", true) => Ok(Generator::SigmaInv(i)),
        ("v", false) => Ok(Generator::V(i)),
        ("v", true) => Err(err(format!("`v{i}` has no primed form"))),
        _ => Err(err(format!("unknown generator kind in `{tok}`"))),
    }
}

/// A braid word together with its explicit strand count.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BraidWord {
    strands: usize,
    letters: Vec<Generator>,
}

impl BraidWord {
    /// Builds a word, checking that every letter index is below `strands`.
    pub fn new(strands: usize, letters: Vec<Generator>) -> Result<BraidWord> {
        if strands == 0 {
            return Err(Error::IndexOutOfRange("strand count must be at least 1".into()));
        }
        for g in &letters {
            if g.index() + 1 > strands {
                return Err(Error::IndexOutOfRange(format!(
                    "letter {g} needs at least {} strands, word has {strands}",
                    g.index() + 1
                )));
            }
        }
        Ok(BraidWord { strands, letters })
    }

    pub fn empty(strands: usize) -> BraidWord {
        BraidWord::new(strands, Vec::new()).expect("positive strand count")
    }

    /// Internal constructor for letters already known to be in range.
    pub(crate) fn from_parts(strands: usize, letters: Vec<Generator>) -> BraidWord {
        debug_assert!(strands >= 1 && letters.iter().all(|g| g.index() < strands));
        BraidWord { strands, letters }
    }

    pub fn strands(&self) -> usize {
        self.strands
    }

    pub fn letters(&self) -> &[Generator] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Group multiplication; both factors must live on the same strand count.
    pub fn concat(&self, other: &BraidWord) -> Result<BraidWord> {
        if self.strands != other.strands {
            return Err(Error::StrandMismatch(self.strands, other.strands));
        }
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        Ok(BraidWord::from_parts(self.strands, letters))
    }

    /// Group inverse: letters reversed, each replaced by its inverse.
    pub fn invert(&self) -> BraidWord {
        let letters = self.letters.iter().rev().map(Generator::inverse).collect();
        BraidWord::from_parts(self.strands, letters)
    }

    /// Same letters on a larger strand count.
    pub fn embed(&self, new_strands: usize) -> Result<BraidWord> {
        if new_strands < self.strands {
            return Err(Error::IndexOutOfRange(format!(
                "cannot embed a word on {} strands into {new_strands}",
                self.strands
            )));
        }
        Ok(BraidWord::from_parts(new_strands, self.letters.clone()))
    }
}

impl fmt::Display for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} |", self.strands)?;
        if self.letters.is_empty() {
            return write!(f, " ");
        }
        for g in &self.letters {
            write!(f, " {g}")?;
        }
        Ok(())
    }
}

impl FromStr for BraidWord {
    type Err = Error;

    fn from_str(text: &str) -> Result<BraidWord> {
        // Optional "<n> |" strand declaration ahead of the letters.
        let mut declared: Option<usize> = None;
        let mut body = text;
        let mut body_offset = 0;
        if let Some(bar) = text.find('|') {
            let head = &text[..bar];
            if head.trim().is_empty() {
                return Err(Error::Parse {
                    pos: bar,
                    msg: "strand declaration before `|` is empty".into(),
                });
            }
            let n: usize = head.trim().parse().map_err(|_| Error::Parse {
                pos: text.find(|c: char| !c.is_whitespace()).unwrap_or(0),
                msg: format!("invalid strand count `{}`", head.trim()),
            })?;
            if n == 0 {
                return Err(Error::Parse {
                    pos: 0,
                    msg: "strand count must be at least 1".into(),
                });
            }
            declared = Some(n);
            body = &text[bar + 1..];
            body_offset = bar + 1;
        }

        let mut letters = Vec::new();
        let mut max_index = 0;
        let mut rest = body;
        let mut offset = body_offset;
        loop {
            let trimmed = rest.trim_start();
            offset += rest.len() - trimmed.len();
            if trimmed.is_empty() {
                break;
            }
            let end = trimmed
                .find(char::is_whitespace)
                .unwrap_or(trimmed.len());
            let tok = &trimmed[..end];
            let g = parse_generator(tok, offset)?;
            if let Some(n) = declared {
                if g.index() + 1 > n {
                    return Err(Error::Parse {
                        pos: offset,
                        msg: format!("letter `{tok}` out of range for {n} strands"),
                    });
                }
            }
            max_index = max_index.max(g.index());
            letters.push(g);
            rest = &trimmed[end..];
            offset += end;
        }

        let strands = declared.unwrap_or(if letters.is_empty() { 1 } else { max_index + 1 });
        Ok(BraidWord::from_parts(strands, letters))
    }
}

#[derive(Serialize, Deserialize)]
struct WordRepr {
    strands: usize,
    word: Vec<String>,
}

impl Serialize for BraidWord {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        WordRepr {
            strands: self.strands,
            word: self.letters.iter().map(|g| g.to_string()).collect(),
        }
        .serialize(ser)
    }
}

impl<'de> Deserialize<'de> for BraidWord {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> std::result::Result<BraidWord, D::Error> {
        let repr = WordRepr::deserialize(de)?;
        let mut letters = Vec::with_capacity(repr.word.len());
        for (k, tok) in repr.word.iter().enumerate() {
            let g = parse_generator(tok, k).map_err(serde::de::Error::custom)?;
            letters.push(g);
        }
        BraidWord::new(repr.strands, letters).map_err(serde::de::Error::custom)
    }
}

/// Cancels adjacent `s_i s_i'`, `s_i' s_i` and `v_i v_i` pairs until none
/// remain. The cancellation system is terminating and confluent, so the
/// result does not depend on the order pairs are removed in.
pub fn free_reduce(w: &BraidWord) -> BraidWord {
    let mut stack: Vec<Generator> = Vec::with_capacity(w.letters.len());
    for &g in &w.letters {
        if stack.last().is_some_and(|t| t.cancels(&g)) {
            stack.pop();
        } else {
            stack.push(g);
        }
    }
    BraidWord::from_parts(w.strands, stack)
}

/// A permutation of {1..n}; `images[p-1]` is where position p is sent.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn new(images: Vec<usize>) -> Result<Permutation> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &im in &images {
            if im == 0 || im > n || seen[im - 1] {
                return Err(Error::IndexOutOfRange(format!(
                    "images are not a bijection on 1..={n}"
                )));
            }
            seen[im - 1] = true;
        }
        Ok(Permutation { images })
    }

    pub fn identity(n: usize) -> Permutation {
        Permutation {
            images: (1..=n).collect(),
        }
    }

    pub fn size(&self) -> usize {
        self.images.len()
    }

    pub fn apply(&self, p: usize) -> usize {
        self.images[p - 1]
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(k, &im)| im == k + 1)
    }

    /// Function composition: `self.compose(g)` applies `g` first, then `self`.
    pub fn compose(&self, g: &Permutation) -> Permutation {
        debug_assert_eq!(self.size(), g.size());
        Permutation {
            images: (1..=self.size()).map(|p| self.apply(g.apply(p))).collect(),
        }
    }

    pub fn cycle_count(&self) -> usize {
        let n = self.size();
        let mut seen = vec![false; n];
        let mut cycles = 0;
        for start in 0..n {
            if seen[start] {
                continue;
            }
            cycles += 1;
            let mut p = start;
            while !seen[p] {
                seen[p] = true;
                p = self.images[p] - 1;
            }
        }
        cycles
    }
}

/// Strand permutation of a word: maps a strand's top position to its bottom
/// position, letters applied top to bottom. Every letter acts as the
/// transposition (i, i+1), so `pi(a.b) == compose(pi(b), pi(a))`.
pub fn underlying_permutation(w: &BraidWord) -> Permutation {
    let n = w.strands;
    // col_to_top[c] = which top position's strand currently occupies column c.
    let mut col_to_top: Vec<usize> = (1..=n).collect();
    for g in &w.letters {
        col_to_top.swap(g.index() - 1, g.index());
    }
    let mut images = vec![0; n];
    for (col, &top) in col_to_top.iter().enumerate() {
        images[top - 1] = col + 1;
    }
    Permutation { images }
}

/// Exponent sum of the classical letters.
pub fn writhe(w: &BraidWord) -> i64 {
    w.letters
        .iter()
        .filter_map(|g| g.sign())
        .map(i64::from)
        .sum()
}

/// Uniform random word: each letter drawn from the 3(n-1) generators.
pub fn random_word(n: usize, len: usize, seed: u64) -> Result<BraidWord> {
    if n < 2 && len > 0 {
        return Err(Error::IndexOutOfRange(
            "a word on fewer than 2 strands must be empty".into(),
        ));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let letters = (0..len)
        .map(|_| {
            let i = rng.gen_range(1..n);
            match rng.gen_range(0..3) {
                0 => Generator::Sigma(i),
                1 => Generator::SigmaInv(i),
                _ => Generator::V(i),
            }
        })
        .collect();
    BraidWord::new(n.max(1), letters)
}

/// The defining relations of the virtual braid group, beyond free cancellation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Relation {
    /// s_i s_{i+1} s_i = s_{i+1} s_i s_{i+1} (uniformly signed).
    Braid,
    /// v_i v_{i+1} v_i = v_{i+1} v_i v_{i+1}.
    VBraid,
    /// v_i s_{i+1} v_i = v_{i+1} s_i v_{i+1}.
    Mixed,
    /// x_i y_j = y_j x_i whenever |i-j| >= 2, for any generator kinds.
    FarCommute,
}

impl Relation {
    pub const ALL: [Relation; 4] = [
        Relation::Braid,
        Relation::VBraid,
        Relation::Mixed,
        Relation::FarCommute,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Relation::Braid => "braid",
            Relation::VBraid => "v-braid",
            Relation::Mixed => "mixed",
            Relation::FarCommute => "far-commute",
        }
    }
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Relation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Relation> {
        match s {
            "braid" => Ok(Relation::Braid),
            "v-braid" => Ok(Relation::VBraid),
            "mixed" => Ok(Relation::Mixed),
            "far-commute" => Ok(Relation::FarCommute),
            _ => Err(Error::Parse {
                pos: 0,
                msg: format!("unknown relation `{s}`"),
            }),
        }
    }
}

/// Which side of a relation is matched: `Forward` matches the left-hand side.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    Forward,
    Backward,
}

impl Direction {
    pub fn flip(&self) -> Direction {
        match self {
            Direction::Forward => Direction::Backward,
            Direction::Backward => Direction::Forward,
        }
    }
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Direction::Forward => "forward",
            Direction::Backward => "backward",
        })
    }
}

// For the three-letter relations, forward direction requires the middle index
// to be one above the outer index; backward requires one below. Both rewrite
// [a, b, a] to [b, a, b].
fn match_triple(w: &BraidWord, rel: Relation, pos: usize, dir: Direction) -> Option<[Generator; 2]> {
    let ls = &w.letters;
    if pos + 3 > ls.len() {
        return None;
    }
    let (a, b, c) = (ls[pos], ls[pos + 1], ls[pos + 2]);
    if a != c {
        return None;
    }
    let (i, j) = (a.index(), b.index());
    let offset_ok = match dir {
        Direction::Forward => j == i + 1,
        Direction::Backward => j + 1 == i,
    };
    if !offset_ok {
        return None;
    }
    let shape_ok = match rel {
        Relation::Braid => {
            matches!((a, b), (Generator::Sigma(_), Generator::Sigma(_)))
                || matches!((a, b), (Generator::SigmaInv(_), Generator::SigmaInv(_)))
        }
        Relation::VBraid => {
            matches!((a, b), (Generator::V(_), Generator::V(_)))
        }
        Relation::Mixed => a == Generator::V(i) && b.is_classical(),
        Relation::FarCommute => return None,
    };
    if !shape_ok {
        return None;
    }
    // Rebuild both letters with indices exchanged: [a_i, b_j, a_i] becomes
    // [a_j, b_i, a_j].
    let reindex = |g: Generator, idx: usize| match g {
        Generator::Sigma(_) => Generator::Sigma(idx),
        Generator::SigmaInv(_) => Generator::SigmaInv(idx),
        Generator::V(_) => Generator::V(idx),
    };
    Some([reindex(a, j), reindex(b, i)])
}

/// Rewrites `w` at `pos` by the named relation. Forward matches the side
/// whose outer index is the lower one (for far-commute the two directions
/// coincide). Errors with [`Error::NoMatch`] when the pattern is absent.
pub fn apply_relation(
    w: &BraidWord,
    rel: Relation,
    pos: usize,
    dir: Direction,
) -> Result<BraidWord> {
    let no_match = || Error::NoMatch {
        rel: rel.name().into(),
        pos,
    };
    let mut letters = w.letters.clone();
    match rel {
        Relation::FarCommute => {
            if pos + 2 > letters.len() {
                return Err(no_match());
            }
            let (a, b) = (letters[pos], letters[pos + 1]);
            if a.index().abs_diff(b.index()) < 2 {
                return Err(no_match());
            }
            letters.swap(pos, pos + 1);
        }
        _ => {
            let [x, y] = match_triple(w, rel, pos, dir).ok_or_else(no_match)?;
            letters[pos] = x;
            letters[pos + 1] = y;
            letters[pos + 2] = x;
        }
    }
    Ok(BraidWord::from_parts(w.strands, letters))
}

/// Every single-relation rewrite of `w`, in a fixed deterministic order:
/// positions ascending, relations in declaration order, forward before
/// backward (far-commute only forward, its two directions being equal).
pub fn enumerate_relations(w: &BraidWord) -> Vec<(Relation, usize, Direction, BraidWord)> {
    let mut out = Vec::new();
    for pos in 0..w.len() {
        for rel in Relation::ALL {
            let dirs: &[Direction] = if rel == Relation::FarCommute {
                &[Direction::Forward]
            } else {
                &[Direction::Forward, Direction::Backward]
            };
            for &dir in dirs {
                if let Ok(next) = apply_relation(w, rel, pos, dir) {
                    out.push((rel, pos, dir, next));
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn word(text: &str) -> BraidWord {
        text.parse().unwrap()
    }

    #[test]
    fn parse_infers_strand_count() {
        let w = word("s1 v2 s1'");
        assert_eq!(w.strands(), 3);
        assert_eq!(
            w.letters(),
            &[Generator::Sigma(1), Generator::V(2), Generator::SigmaInv(1)]
        );
        assert_eq!(word("").strands(), 1);
        assert_eq!(word("v1 v1").strands(), 2);
    }

    #[test]
    fn parse_respects_declared_strands() {
        assert_eq!(word("4 | s1").strands(), 4);
        assert!(matches!(
            "2 | s2".parse::<BraidWord>(),
            Err(Error::Parse { .. })
        ));
        assert!(matches!(
            "0 | s1".parse::<BraidWord>(),
            Err(Error::Parse { .. })
        ));
    }

    #[test]
    fn parse_rejects_bad_tokens() {
        for bad in ["s0", "t1", "v1'", "s", "s1x"] {
            let got = bad.parse::<BraidWord>();
            assert!(matches!(got, Err(Error::Parse { .. })), "{bad}: {got:?}");
        }
        // Error position points at the offending token.
        match "s1  v0".parse::<BraidWord>() {
            Err(Error::Parse { pos, .. }) => assert_eq!(pos, 4),
            other => panic!("expected parse error, got {other:?}"),
        }
    }

    #[test]
    fn print_forms() {
        assert_eq!(word("2 | s1").to_string(), "2 | s1");
        assert_eq!(BraidWord::empty(1).to_string(), "1 | ");
        assert_eq!(word("3 | v1 s2'").to_string(), "3 | v1 s2'");
    }

    #[test]
    fn concat_and_invert() {
        let a = word("2 | s1");
        let b = word("2 | v1");
        assert_eq!(a.concat(&b).unwrap().to_string(), "2 | s1 v1");
        assert!(matches!(
            a.concat(&word("3 | v1")),
            Err(Error::StrandMismatch(2, 3))
        ));
        assert_eq!(word("3 | s1 v2").invert().to_string(), "3 | v2 s1'");
        assert_eq!(word("2 | v1").invert().to_string(), "2 | v1");
    }

    #[test]
    fn free_reduce_examples() {
        assert_eq!(free_reduce(&word("s1 s1'")), BraidWord::empty(2));
        assert_eq!(free_reduce(&word("v2 v2 s1")), word("3 | s1"));
        assert_eq!(free_reduce(&word("s1 v2 v2 s1'")), BraidWord::empty(3));
    }

    #[test]
    fn permutation_examples() {
        let p = underlying_permutation(&word("2 | s1"));
        assert_eq!(p.images(), &[2, 1]);
        assert!(underlying_permutation(&word("2 | v1 v1")).is_identity());
        let q = underlying_permutation(&word("3 | s1 v2"));
        assert_eq!(q.images(), &[3, 1, 2]);
        assert_eq!(q.cycle_count(), 1);
    }

    #[test]
    fn writhe_examples() {
        assert_eq!(writhe(&word("s1 s1 v1")), 2);
        assert_eq!(writhe(&word("s1 s1'")), 0);
        assert_eq!(writhe(&BraidWord::empty(1)), 0);
    }

    #[test]
    fn embed_examples() {
        assert_eq!(word("2 | s1").embed(3).unwrap(), word("3 | s1"));
        assert!(word("3 | s2").embed(2).is_err());
    }

    #[test]
    fn relation_examples() {
        let got = apply_relation(&word("v1 s2 v1"), Relation::Mixed, 0, Direction::Forward);
        assert_eq!(got.unwrap(), word("3 | v2 s1 v2"));
        let got = apply_relation(&word("4 | s1 s3"), Relation::FarCommute, 0, Direction::Forward);
        assert_eq!(got.unwrap(), word("4 | s3 s1"));
        let got = apply_relation(&word("v1 v2 v1"), Relation::VBraid, 0, Direction::Forward);
        assert_eq!(got.unwrap(), word("3 | v2 v1 v2"));
        // Backward direction matches the mirrored pattern.
        let got = apply_relation(&word("v2 s1 v2"), Relation::Mixed, 0, Direction::Backward);
        assert_eq!(got.unwrap(), word("3 | v1 s2 v1"));
        assert!(matches!(
            apply_relation(&word("s1 s2 s1"), Relation::Braid, 0, Direction::Backward),
            Err(Error::NoMatch { .. })
        ));
        assert!(matches!(
            apply_relation(&word("s1 s2' s1"), Relation::Braid, 0, Direction::Forward),
            Err(Error::NoMatch { .. })
        ));
    }

    #[test]
    fn random_word_is_deterministic_and_bounded() {
        let a = random_word(2, 5, 42).unwrap();
        let b = random_word(2, 5, 42).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.len(), 5);
        let c = random_word(5, 12, 7).unwrap();
        assert!(c.letters().iter().all(|g| g.index() <= 4));
        assert_eq!(random_word(3, 0, 0).unwrap(), BraidWord::empty(3));
        assert!(random_word(1, 3, 0).is_err());
    }

    #[test]
    fn word_json_round_trip() {
        let w = word("3 | s1 v2 s1'");
        let js = serde_json::to_string(&w).unwrap();
        assert_eq!(js, r#"{"strands":3,"word":["s1","v2","s1'"]}"#);
        assert_eq!(serde_json::from_str::<BraidWord>(&js).unwrap(), w);
        assert!(serde_json::from_str::<BraidWord>(r#"{"strands":2,"word":["s2"]}"#).is_err());
    }

    prop_compose! {
        fn arb_word()(n in 2usize..=5)(
            n in Just(n),
            raw in proptest::collection::vec((0u8..3, 1usize..5), 0..16),
        ) -> BraidWord {
            let letters = raw
                .into_iter()
                .map(|(k, i)| {
                    let i = (i - 1) % (n - 1) + 1;
                    match k {
                        0 => Generator::Sigma(i),
                        1 => Generator::SigmaInv(i),
                        _ => Generator::V(i),
                    }
                })
                .collect();
            BraidWord::new(n, letters).unwrap()
        }
    }

    // Reduces by repeatedly deleting a randomly chosen cancelling pair, as an
    // order-independence oracle against the stack-based implementation.
    fn reduce_in_random_order(w: &BraidWord, seed: u64) -> BraidWord {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let mut letters = w.letters().to_vec();
        loop {
            let pairs: Vec<usize> = (0..letters.len().saturating_sub(1))
                .filter(|&k| letters[k].cancels(&letters[k + 1]))
                .collect();
            if pairs.is_empty() {
                return BraidWord::new(w.strands(), letters).unwrap();
            }
            let k = pairs[rng.gen_range(0..pairs.len())];
            letters.drain(k..k + 2);
        }
    }

    proptest! {
        #[test]
        fn round_trip_print_parse(w in arb_word()) {
            let text = w.to_string();
            prop_assert_eq!(text.parse::<BraidWord>().unwrap(), w);
        }

        #[test]
        fn free_reduce_idempotent_and_order_independent(w in arb_word(), seed in any::<u64>()) {
            let r = free_reduce(&w);
            prop_assert_eq!(&free_reduce(&r), &r);
            prop_assert_eq!(&reduce_in_random_order(&w, seed), &r);
        }

        #[test]
        fn inverse_cancels(w in arb_word()) {
            let prod = w.concat(&w.invert()).unwrap();
            prop_assert!(free_reduce(&prod).is_empty());
        }

        #[test]
        fn permutation_is_a_homomorphism(a in arb_word(), b in arb_word()) {
            prop_assume!(a.strands() == b.strands());
            let ab = a.concat(&b).unwrap();
            let expected = underlying_permutation(&b).compose(&underlying_permutation(&a));
            prop_assert_eq!(underlying_permutation(&ab), expected);
        }

        #[test]
        fn relations_preserve_permutation_and_writhe(w in arb_word()) {
            for (_, _, _, next) in enumerate_relations(&w) {
                prop_assert_eq!(underlying_permutation(&next), underlying_permutation(&w));
                prop_assert_eq!(writhe(&next), writhe(&w));
                prop_assert_eq!(next.strands(), w.strands());
            }
        }

        #[test]
        fn relation_rewrites_invert(w in arb_word()) {
            for (rel, pos, dir, next) in enumerate_relations(&w) {
                let back = apply_relation(&next, rel, pos, dir.flip()).unwrap();
                prop_assert_eq!(back, w.clone());
            }
        }
    }
}
