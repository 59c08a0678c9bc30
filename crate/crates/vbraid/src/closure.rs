//! Gauss codes for oriented link diagrams and the braid-closure map.
//!
//! A code is a list of components, each a cyclic sequence of crossing
//! passes. Codes are kept in a canonical form: the lexicographically
//! smallest token stream over all component orderings and rotations, with
//! crossing ids relabelled in order of first appearance. Two codes that
//! differ only by those choices therefore compare equal.

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::word::{underlying_permutation, BraidWord, Generator};
use crate::Result;

/// Which side of a crossing a strand takes when passing through it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Role {
    O,
    U,
}

/// One visit of a strand to a crossing.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Pass {
    pub id: usize,
    pub role: Role,
    pub sign: i8,
}

impl fmt::Display for Pass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let role = match self.role {
            Role::O => 'O',
            Role::U => 'U',
        };
        let sign = if self.sign > 0 { '+' } else { '-' };
        write!(f, "{role}{}{sign}", self.id)
    }
}

/// A validated, canonicalized Gauss code.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "GaussCodeRepr")]
pub struct GaussCode {
    components: Vec<Vec<Pass>>,
}

#[derive(Deserialize)]
struct GaussCodeRepr {
    components: Vec<Vec<Pass>>,
}

impl TryFrom<GaussCodeRepr> for GaussCode {
    type Error = Error;

    fn try_from(repr: GaussCodeRepr) -> Result<GaussCode> {
        GaussCode::new(repr.components)
    }
}

impl GaussCode {
    /// Validates and canonicalizes a raw component list.
    pub fn new(components: Vec<Vec<Pass>>) -> Result<GaussCode> {
        let problems = validate_gauss(&components);
        if !problems.is_empty() {
            return Err(Error::InvalidCode(problems.join("; ")));
        }
        Ok(GaussCode {
            components: canonicalize(components),
        })
    }

    pub fn components(&self) -> &[Vec<Pass>] {
        &self.components
    }

    pub fn component_count(&self) -> usize {
        self.components.len()
    }

    pub fn crossing_count(&self) -> usize {
        self.components.iter().map(Vec::len).sum::<usize>() / 2
    }
}

impl fmt::Display for GaussCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, comp) in self.components.iter().enumerate() {
            if k > 0 {
                f.write_str(";")?;
            }
            for (j, pass) in comp.iter().enumerate() {
                if j > 0 {
                    f.write_str(",")?;
                }
                write!(f, "{pass}")?;
            }
        }
        Ok(())
    }
}

impl FromStr for GaussCode {
    type Err = Error;

    fn from_str(text: &str) -> Result<GaussCode> {
        let text = text.trim();
        let mut components = Vec::new();
        let mut offset = 0;
        for chunk in text.split(';') {
            let mut comp = Vec::new();
            if !chunk.trim().is_empty() {
                let mut tok_offset = offset;
                for tok in chunk.split(',') {
                    comp.push(parse_pass(tok, tok_offset)?);
                    tok_offset += tok.len() + 1;
                }
            }
            components.push(comp);
            offset += chunk.len() + 1;
        }
        GaussCode::new(components)
    }
}

fn parse_pass(tok: &str, offset: usize) -> Result<Pass> {
    let trimmed = tok.trim();
    let pos = offset + (tok.len() - tok.trim_start().len());
    let err = |msg: String| Error::Parse { pos, msg };
    let mut chars = trimmed.chars();
    let role = match chars.next() {
        Some('O') => Role::O,
        Some('U') => Role::U,
        other => {
            return Err(err(format!(
                "expected pass starting with `O` or `U`, found {:?}",
                other.map(String::from).unwrap_or_default()
            )))
        }
    };
    let rest = chars.as_str();
    let sign = match rest.chars().last() {
        Some('+') => 1,
        Some('-') => -1,
        _ => return Err(err(format!("pass `{trimmed}` must end with `+` or `-`"))),
    };
    let digits = &rest[..rest.len() - 1];
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return Err(err(format!("bad crossing id in pass `{trimmed}`")));
    }
    let id: usize = digits
        .parse()
        .map_err(|_| err(format!("crossing id out of range in `{trimmed}`")))?;
    if id == 0 {
        return Err(err("crossing ids start at 1".into()));
    }
    Ok(Pass { id, role, sign })
}

/// Checks structural soundness of a raw component list and reports every
/// problem found. An empty result means the code is valid.
pub fn validate_gauss(components: &[Vec<Pass>]) -> Vec<String> {
    let mut problems = Vec::new();
    if components.is_empty() {
        problems.push("a code must have at least one component".to_string());
        return problems;
    }
    let mut max_id = 0;
    let mut seen: std::collections::BTreeMap<usize, Vec<Pass>> = Default::default();
    for comp in components {
        for pass in comp {
            if pass.sign != 1 && pass.sign != -1 {
                problems.push(format!("crossing {} has sign {}, expected 1 or -1", pass.id, pass.sign));
            }
            max_id = max_id.max(pass.id);
            seen.entry(pass.id).or_default().push(*pass);
        }
    }
    for (id, passes) in &seen {
        let overs = passes.iter().filter(|p| p.role == Role::O).count();
        let unders = passes.len() - overs;
        if overs != 1 || unders != 1 {
            problems.push(format!(
                "crossing {id} is visited {overs} time(s) as over and {unders} as under, expected once each"
            ));
        } else if passes[0].sign != passes[1].sign {
            problems.push(format!("crossing {id} has mismatched signs on its two passes"));
        }
    }
    if max_id != seen.len() {
        problems.push(format!(
            "crossing ids must be exactly 1..={}, found {} distinct ids with maximum {}",
            seen.len(),
            seen.len(),
            max_id
        ));
    }
    problems
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
enum Token {
    Sep,
    Pass { id: usize, role: Role, neg: bool },
}

#[derive(Clone)]
struct BeamState {
    mask: u64,
    /// Component being read: (index, rotation, passes already emitted).
    active: Option<(usize, usize, usize)>,
    /// Original id -> canonical id, grown on first appearance.
    relabel: Vec<Option<usize>>,
    next_fresh: usize,
}

impl BeamState {
    fn dedup_key(&self, components: &[Vec<Pass>]) -> (u64, Vec<Pass>, Vec<Option<usize>>) {
        let remaining = match self.active {
            Some((ci, rot, off)) => {
                let comp = &components[ci];
                (off..comp.len())
                    .map(|k| comp[(rot + k) % comp.len()])
                    .collect()
            }
            None => Vec::new(),
        };
        (self.mask, remaining, self.relabel.clone())
    }
}

/// Lexicographically smallest relabelled token stream over all component
/// orders and rotations, found by advancing every tied prefix one token at
/// a time. Separators sort below passes, so empty components come first.
fn canonicalize(components: Vec<Vec<Pass>>) -> Vec<Vec<Pass>> {
    let crossings: usize = components.iter().map(Vec::len).sum::<usize>() / 2;
    let total_tokens = components.len() + crossings * 2;
    let mut states = vec![BeamState {
        mask: 0,
        active: None,
        relabel: vec![None; crossings + 1],
        next_fresh: 1,
    }];
    let mut stream = Vec::with_capacity(total_tokens);
    for _ in 0..total_tokens {
        let mut best: Option<Token> = None;
        let mut candidates: Vec<(Token, BeamState)> = Vec::new();
        for st in &states {
            match st.active {
                Some((ci, rot, off)) => {
                    let comp = &components[ci];
                    let pass = comp[(rot + off) % comp.len()];
                    let mut st2 = st.clone();
                    let id = match st2.relabel[pass.id] {
                        Some(id) => id,
                        None => {
                            let id = st2.next_fresh;
                            st2.relabel[pass.id] = Some(id);
                            st2.next_fresh += 1;
                            id
                        }
                    };
                    st2.active = (off + 1 < comp.len()).then_some((ci, rot, off + 1));
                    candidates.push((
                        Token::Pass {
                            id,
                            role: pass.role,
                            neg: pass.sign < 0,
                        },
                        st2,
                    ));
                }
                None => {
                    for ci in 0..components.len() {
                        if st.mask & (1 << ci) != 0 {
                            continue;
                        }
                        let rotations = components[ci].len().max(1);
                        for rot in 0..rotations {
                            let mut st2 = st.clone();
                            st2.mask |= 1 << ci;
                            st2.active = (!components[ci].is_empty()).then_some((ci, rot, 0));
                            candidates.push((Token::Sep, st2));
                        }
                    }
                }
            }
        }
        for (tok, _) in &candidates {
            if best.map_or(true, |b| *tok < b) {
                best = Some(*tok);
            }
        }
        let best = best.expect("token budget matches total stream length");
        stream.push(best);
        let mut seen = HashSet::new();
        states = candidates
            .into_iter()
            .filter(|(tok, _)| *tok == best)
            .map(|(_, st)| st)
            .filter(|st| seen.insert(st.dedup_key(&components)))
            .collect();
    }

    let mut out = Vec::new();
    for tok in stream {
        match tok {
            Token::Sep => out.push(Vec::new()),
            Token::Pass { id, role, neg } => out.last_mut().expect("stream starts with Sep").push(Pass {
                id,
                role,
                sign: if neg { -1 } else { 1 },
            }),
        }
    }
    out
}

/// Gauss code of the standard closure of a braid word.
///
/// Each strand of the closed diagram is traced from its topmost point;
/// every classical letter it meets contributes one pass, with the crossing
/// numbered by its position among the word's classical letters.
pub fn close_braid(word: &BraidWord) -> GaussCode {
    let mut crossing_id = vec![0usize; word.len()];
    let mut next = 1;
    for (k, g) in word.letters().iter().enumerate() {
        if g.is_classical() {
            crossing_id[k] = next;
            next += 1;
        }
    }
    let perm = underlying_permutation(word);

    let mut visited = vec![false; word.strands() + 1];
    let mut components = Vec::new();
    for start in 1..=word.strands() {
        if visited[start] {
            continue;
        }
        let mut passes = Vec::new();
        let mut top = start;
        loop {
            visited[top] = true;
            let mut col = top;
            for (k, g) in word.letters().iter().enumerate() {
                let i = g.index();
                if col != i && col != i + 1 {
                    continue;
                }
                match g {
                    Generator::V(_) => {}
                    Generator::Sigma(_) | Generator::SigmaInv(_) => {
                        let sign = g.sign().expect("classical letter");
                        let over_col = if sign > 0 { i } else { i + 1 };
                        passes.push(Pass {
                            id: crossing_id[k],
                            role: if col == over_col { Role::O } else { Role::U },
                            sign,
                        });
                    }
                }
                col = if col == i { i + 1 } else { i };
            }
            debug_assert_eq!(col, perm.apply(top));
            top = col;
            if top == start {
                break;
            }
        }
        components.push(passes);
    }
    GaussCode::new(components).expect("closure of a braid is always a valid code")
}
