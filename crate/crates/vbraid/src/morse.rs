//! Morse words: closed curve diagrams described slice by slice, top to
//! bottom, by cups (local maxima), caps (local minima), classical
//! crossings and virtual crossings.
//!
//! [`evaluate_morse`] traces the curves, orients each circle, and reads
//! off a canonical Gauss code. The tracer also records, for every slice,
//! which way the flow runs through it; the braiding pass reuses that.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::de::Error as _;
use serde::{Deserialize, Serialize};

use crate::closure::{GaussCode, Pass, Role};
use crate::error::Error;
use crate::moves::Sign;
use crate::Result;

/// One slice of a Morse word. Indices are 1-based column positions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MorseToken {
    /// Local maximum: inserts two new strands at columns i, i+1.
    Cup(usize),
    /// Local minimum: joins the strands at columns i, i+1.
    Cap(usize),
    /// Classical crossing of columns i, i+1 with the given sign.
    X(usize, Sign),
    /// Virtual crossing of columns i, i+1.
    V(usize),
}

impl fmt::Display for MorseToken {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            MorseToken::Cup(i) => write!(f, "cup{i}"),
            MorseToken::Cap(i) => write!(f, "cap{i}"),
            MorseToken::X(i, sign) => write!(f, "x{i}{sign}"),
            MorseToken::V(i) => write!(f, "v{i}"),
        }
    }
}

fn parse_morse_token(tok: &str, pos: usize) -> Result<MorseToken> {
    let err = |msg: String| Error::Parse { pos, msg };
    let (kind, rest): (&str, &str) = if let Some(rest) = tok.strip_prefix("cup") {
        ("cup", rest)
    } else if let Some(rest) = tok.strip_prefix("cap") {
        ("cap", rest)
    } else if let Some(rest) = tok.strip_prefix('x') {
        ("x", rest)
    } else if let Some(rest) = tok.strip_prefix('v') {
        ("v", rest)
    } else {
        return Err(err(format!("unknown slice `{tok}`")));
    };
    let (digits, sign) = if kind == "x" {
        match rest.chars().last() {
            Some('+') => (&rest[..rest.len() - 1], Sign::PLUS),
            Some('-') => (&rest[..rest.len() - 1], Sign::MINUS),
            _ => return Err(err(format!("crossing `{tok}` must end with `+` or `-`"))),
        }
    } else {
        (rest, Sign::PLUS)
    };
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return Err(err(format!("bad column index in `{tok}`")));
    }
    let i: usize = digits
        .parse()
        .map_err(|_| err(format!("column index out of range in `{tok}`")))?;
    if i == 0 {
        return Err(err("column indices start at 1".into()));
    }
    Ok(match kind {
        "cup" => MorseToken::Cup(i),
        "cap" => MorseToken::Cap(i),
        "x" => MorseToken::X(i, sign),
        _ => MorseToken::V(i),
    })
}

impl FromStr for MorseToken {
    type Err = Error;

    fn from_str(tok: &str) -> Result<MorseToken> {
        parse_morse_token(tok, 0)
    }
}

/// A whole slice sequence. Structural soundness is checked by
/// [`validate_morse`] and enforced by the evaluators.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct MorseWord {
    tokens: Vec<MorseToken>,
}

impl MorseWord {
    pub fn new(tokens: Vec<MorseToken>) -> MorseWord {
        MorseWord { tokens }
    }

    pub fn tokens(&self) -> &[MorseToken] {
        &self.tokens
    }

    pub fn len(&self) -> usize {
        self.tokens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tokens.is_empty()
    }
}

impl fmt::Display for MorseWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, tok) in self.tokens.iter().enumerate() {
            if k > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{tok}")?;
        }
        Ok(())
    }
}

impl FromStr for MorseWord {
    type Err = Error;

    fn from_str(text: &str) -> Result<MorseWord> {
        let mut tokens = Vec::new();
        let mut offset = 0;
        for chunk in text.split_whitespace() {
            let pos = offset + text[offset..].find(chunk).expect("chunk comes from text");
            tokens.push(parse_morse_token(chunk, pos)?);
            offset = pos + chunk.len();
        }
        Ok(MorseWord::new(tokens))
    }
}

impl Serialize for MorseWord {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        ser.collect_seq(self.tokens.iter().map(MorseToken::to_string))
    }
}

impl<'de> Deserialize<'de> for MorseWord {
    fn deserialize<D: serde::Deserializer<'de>>(
        de: D,
    ) -> std::result::Result<MorseWord, D::Error> {
        let raw = Vec::<String>::deserialize(de)?;
        let mut tokens = Vec::with_capacity(raw.len());
        for tok in &raw {
            tokens.push(parse_morse_token(tok, 0).map_err(D::Error::custom)?);
        }
        Ok(MorseWord::new(tokens))
    }
}

/// Checks that the slices fit together into a closed diagram; reports the
/// problems found up to the first structural break.
pub fn validate_morse(word: &MorseWord) -> Vec<String> {
    let mut problems = Vec::new();
    if word.is_empty() {
        problems.push("a closed diagram needs at least one slice".to_string());
        return problems;
    }
    let mut width = 0usize;
    for (k, tok) in word.tokens().iter().enumerate() {
        let slice = k + 1;
        match *tok {
            MorseToken::Cup(i) => {
                if i > width + 1 {
                    problems.push(format!(
                        "slice {slice}: cup{i} does not fit at width {width}"
                    ));
                    return problems;
                }
                width += 2;
            }
            MorseToken::Cap(i) | MorseToken::X(i, _) | MorseToken::V(i) => {
                if width < 2 || i > width - 1 {
                    problems.push(format!(
                        "slice {slice}: {tok} does not fit at width {width}"
                    ));
                    return problems;
                }
                if matches!(tok, MorseToken::Cap(_)) {
                    width -= 2;
                }
            }
        }
    }
    if width != 0 {
        problems.push(format!("diagram is left open: width {width} after the last slice"));
    }
    problems
}

fn check(word: &MorseWord) -> Result<()> {
    let problems = validate_morse(word);
    if problems.is_empty() {
        Ok(())
    } else {
        Err(Error::InvalidMorse(problems.join("; ")))
    }
}

/// Which way the flow runs through a cup or cap (or neither, for the
/// two-slice circle of an adjacent cup/cap pair, which has no crossings
/// and carries no orientation).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum EndKind {
    Crossingless,
    DownLeft,
    DownRight,
}

/// A slice annotated with flow directions found while tracing.
#[derive(Debug, Clone, Copy)]
pub(crate) enum SliceInfo {
    Cup { i: usize, kind: EndKind },
    Cap { i: usize, kind: EndKind },
    /// d_left: +1 if the strand entering at column i runs downward;
    /// d_right: the same for the strand entering at column i+1.
    X { i: usize, sign: i8, d_left: i8, d_right: i8 },
    V { i: usize },
}

pub(crate) struct Traced {
    pub(crate) slices: Vec<SliceInfo>,
    pub(crate) code: GaussCode,
    pub(crate) n_crossingless: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
enum LinkKey {
    Trans { slice: usize, upper_col: usize },
    CupTurn { slice: usize },
    CapTurn { slice: usize },
}

#[derive(Debug, Clone, Copy)]
struct Link {
    other: usize,
    key: LinkKey,
}

struct Port {
    col: usize,
    up: Option<Link>,
    down: Option<Link>,
}

#[derive(Debug, Clone, Copy)]
struct Step {
    from: usize,
    to: usize,
    key: LinkKey,
    from_down: bool,
    to_down: bool,
}

/// Traces the curves of a validated Morse word: builds the port graph,
/// walks and orients each circle, reads off passes and slice flow data.
pub(crate) fn trace(word: &MorseWord) -> Result<Traced> {
    check(word)?;
    let toks = word.tokens();

    // Ports are strand ends on the levels between slices; each port links
    // upward and downward through the neighboring slices.
    let mut ports: Vec<Port> = Vec::new();
    let mut cols: Vec<usize> = Vec::new(); // port at each current column
    for (k, tok) in toks.iter().enumerate() {
        let slice = k + 1;
        let w0 = cols.len();
        let mut new_cols = Vec::new();
        let fresh = |ports: &mut Vec<Port>, col: usize| -> usize {
            ports.push(Port { col, up: None, down: None });
            ports.len() - 1
        };
        let trans = |ports: &mut Vec<Port>, upper: usize, new_col: usize| -> usize {
            let upper_col = ports[upper].col;
            let lower = fresh(ports, new_col);
            let key = LinkKey::Trans { slice, upper_col };
            ports[upper].down = Some(Link { other: lower, key });
            ports[lower].up = Some(Link { other: upper, key });
            lower
        };
        match *tok {
            MorseToken::Cup(i) => {
                for c in 1..i {
                    new_cols.push(trans(&mut ports, cols[c - 1], c));
                }
                let left = fresh(&mut ports, i);
                let right = fresh(&mut ports, i + 1);
                let key = LinkKey::CupTurn { slice };
                ports[left].up = Some(Link { other: right, key });
                ports[right].up = Some(Link { other: left, key });
                new_cols.push(left);
                new_cols.push(right);
                for c in i..=w0 {
                    new_cols.push(trans(&mut ports, cols[c - 1], c + 2));
                }
            }
            MorseToken::Cap(i) => {
                let (a, b) = (cols[i - 1], cols[i]);
                let key = LinkKey::CapTurn { slice };
                ports[a].down = Some(Link { other: b, key });
                ports[b].down = Some(Link { other: a, key });
                for c in 1..i {
                    new_cols.push(trans(&mut ports, cols[c - 1], c));
                }
                for c in i + 2..=w0 {
                    new_cols.push(trans(&mut ports, cols[c - 1], c - 2));
                }
            }
            MorseToken::X(i, _) | MorseToken::V(i) => {
                for c in 1..=w0 {
                    let src = if c == i {
                        i + 1
                    } else if c == i + 1 {
                        i
                    } else {
                        c
                    };
                    new_cols.push(trans(&mut ports, cols[src - 1], c));
                }
            }
        }
        cols = new_cols;
    }
    debug_assert!(cols.is_empty());

    // Pre-fill slice records; circle walks overwrite the flow fields.
    let mut slices: Vec<SliceInfo> = toks
        .iter()
        .map(|tok| match *tok {
            MorseToken::Cup(i) => SliceInfo::Cup { i, kind: EndKind::Crossingless },
            MorseToken::Cap(i) => SliceInfo::Cap { i, kind: EndKind::Crossingless },
            MorseToken::X(i, sign) => SliceInfo::X { i, sign: sign.value(), d_left: 0, d_right: 0 },
            MorseToken::V(i) => SliceInfo::V { i },
        })
        .collect();
    let mut crossing_of_slice: Vec<Option<usize>> = vec![None; toks.len()];
    let mut xsigns: Vec<i8> = Vec::new();
    for (k, tok) in toks.iter().enumerate() {
        if let MorseToken::X(_, sign) = tok {
            crossing_of_slice[k] = Some(xsigns.len());
            xsigns.push(sign.value());
        }
    }
    // Per crossing: (d_left, d_right), filled in during the walks.
    let mut flows: Vec<(i8, i8)> = vec![(0, 0); xsigns.len()];

    let mut visited = vec![false; ports.len()];
    let mut walks: Vec<Vec<(usize, bool)>> = Vec::new(); // (crossing, left arc)
    let mut n_crossingless = 0;
    for p0 in 0..ports.len() {
        if visited[p0] {
            continue;
        }
        let mut steps = Vec::new();
        let start = (p0, true);
        let (mut port, mut down) = start;
        loop {
            visited[port] = true;
            let link = if down { ports[port].down } else { ports[port].up }
                .expect("closed diagram: every port links both ways");
            let to_down = ports[link.other]
                .down
                .map(|l| l.key == link.key)
                .unwrap_or(false);
            steps.push(Step {
                from: port,
                to: link.other,
                key: link.key,
                from_down: down,
                to_down,
            });
            port = link.other;
            down = !to_down;
            if (port, down) == start {
                break;
            }
        }

        let first_trans = steps
            .iter()
            .filter(|s| matches!(s.key, LinkKey::Trans { .. }))
            .min_by_key(|s| s.key)
            .copied();
        let oriented: Vec<Step> = match first_trans {
            None => {
                // A cup immediately capped: no crossings, no orientation.
                n_crossingless += 1;
                walks.push(Vec::new());
                continue;
            }
            // The scan-first strand segment flows downward; reverse the
            // walk if it was traversed the other way.
            Some(anchor) if anchor.from_down => steps,
            Some(_) => steps
                .iter()
                .rev()
                .map(|s| Step {
                    from: s.to,
                    to: s.from,
                    key: s.key,
                    from_down: s.to_down,
                    to_down: s.from_down,
                })
                .collect(),
        };

        let mut passes = Vec::new();
        for s in &oriented {
            match s.key {
                LinkKey::Trans { slice, upper_col } => {
                    // Only the two columns a crossing acts on contribute
                    // a pass; other strands cross the slice untouched.
                    if let MorseToken::X(i, _) = toks[slice - 1] {
                        if upper_col == i || upper_col == i + 1 {
                            let id = crossing_of_slice[slice - 1].expect("crossing slice");
                            let d: i8 = if s.from_down { 1 } else { -1 };
                            let left = upper_col == i;
                            if left {
                                flows[id].0 = d;
                            } else {
                                flows[id].1 = d;
                            }
                            passes.push((id, left));
                        }
                    }
                }
                LinkKey::CupTurn { slice } => {
                    if let SliceInfo::Cup { i, kind } = &mut slices[slice - 1] {
                        // Flow exits the turn downward on one leg.
                        *kind = if ports[s.to].col == *i {
                            EndKind::DownLeft
                        } else {
                            EndKind::DownRight
                        };
                    }
                }
                LinkKey::CapTurn { slice } => {
                    if let SliceInfo::Cap { i, kind } = &mut slices[slice - 1] {
                        // Flow enters the turn downward on one leg.
                        *kind = if ports[s.from].col == *i {
                            EndKind::DownLeft
                        } else {
                            EndKind::DownRight
                        };
                    }
                }
            }
        }
        walks.push(passes);
    }

    for (k, info) in slices.iter_mut().enumerate() {
        if let SliceInfo::X { d_left, d_right, .. } = info {
            let (dl, dr) = flows[crossing_of_slice[k].expect("crossing slice")];
            debug_assert!(dl != 0 && dr != 0);
            *d_left = dl;
            *d_right = dr;
        }
    }

    let components: Vec<Vec<Pass>> = walks
        .into_iter()
        .map(|walk| {
            walk.into_iter()
                .map(|(id, left)| {
                    let (dl, dr) = flows[id];
                    // Both arcs down or both up keeps the local sign; an
                    // antiparallel pair flips it. The over strand is the
                    // one entering upper-left exactly for positive slices.
                    let over_left = xsigns[id] > 0;
                    Pass {
                        id: id + 1,
                        role: if left == over_left { Role::O } else { Role::U },
                        sign: xsigns[id] * dl * dr,
                    }
                })
                .collect()
        })
        .collect();
    let code = GaussCode::new(components).expect("traced circles form a valid code");
    Ok(Traced {
        slices,
        code,
        n_crossingless,
    })
}

/// Canonical Gauss code of the diagram a Morse word describes.
pub fn evaluate_morse(word: &MorseWord) -> Result<GaussCode> {
    Ok(trace(word)?.code)
}

/// Random well-formed Morse word with width at most `max_width` and at
/// most `max_slices` slices. Deterministic in the seed, never empty.
pub fn random_morse(seed: u64, max_width: usize, max_slices: usize) -> MorseWord {
    let max_width = max_width.max(2);
    let max_slices = max_slices.max(2);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let target = rng.gen_range(2..=max_slices);
    let mut tokens = Vec::new();
    let mut width = 0usize;
    loop {
        let remaining = target.saturating_sub(tokens.len());
        if width == 0 && remaining < 2 {
            break;
        }
        // Options that keep the word closable within the target length.
        let mut kinds = Vec::new();
        if width + 2 <= max_width && remaining >= 1 && (width + 2) / 2 <= remaining - 1 {
            kinds.push(0); // cup
        }
        if width >= 2 {
            kinds.push(1); // cap
            if remaining >= 1 && width / 2 <= remaining - 1 {
                kinds.extend([2, 2, 3]); // crossings twice as likely as v
            }
        }
        if kinds.is_empty() {
            kinds.push(1);
        }
        let tok = match kinds[rng.gen_range(0..kinds.len())] {
            0 => {
                let i = rng.gen_range(1..=width + 1);
                width += 2;
                MorseToken::Cup(i)
            }
            1 => {
                let i = rng.gen_range(1..=width - 1);
                width -= 2;
                MorseToken::Cap(i)
            }
            2 => {
                let sign = if rng.gen::<bool>() { Sign::PLUS } else { Sign::MINUS };
                MorseToken::X(rng.gen_range(1..=width - 1), sign)
            }
            _ => MorseToken::V(rng.gen_range(1..=width - 1)),
        };
        tokens.push(tok);
    }
    MorseWord::new(tokens)
}
