//! Markov-style moves on braid words: conjugation, stabilization,
//! threaded stabilization, strand insertion, and their inverses.
//!
//! Every move here preserves the closure's invariants; the test suite and
//! the equivalence search both rely on that. Moves are also available as
//! serializable [`Move`] records so move sequences can be logged, replayed
//! and inverted.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::word::{apply_relation, free_reduce, BraidWord, Direction, Generator, Relation};
use crate::Result;

/// Crossing sign restricted to +1 / -1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "i8", into = "i8")]
pub struct Sign(i8);

impl Sign {
    pub const PLUS: Sign = Sign(1);
    pub const MINUS: Sign = Sign(-1);

    pub fn value(self) -> i8 {
        self.0
    }

    pub fn flip(self) -> Sign {
        Sign(-self.0)
    }
}

impl TryFrom<i8> for Sign {
    type Error = Error;

    fn try_from(v: i8) -> Result<Sign> {
        match v {
            1 => Ok(Sign::PLUS),
            -1 => Ok(Sign::MINUS),
            other => Err(Error::InvalidMove(format!(
                "sign must be 1 or -1, got {other}"
            ))),
        }
    }
}

impl From<Sign> for i8 {
    fn from(s: Sign) -> i8 {
        s.0
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(if self.0 > 0 { "+" } else { "-" })
    }
}

/// Whether a stabilization adds a virtual or a classical crossing.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum StabFlavor {
    Virtual,
    Real,
}

/// The four strand-insertion variants: the new strand is attached through
/// virtual crossings (`Virtual`, or `Real` for a final classical one), or
/// threaded entirely over/under the diagram (`Over`, `Under`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum LmoveFlavor {
    Virtual,
    Real,
    Over,
    Under,
}

fn classical(i: usize, eps: Sign) -> Generator {
    if eps.value() > 0 {
        Generator::Sigma(i)
    } else {
        Generator::SigmaInv(i)
    }
}

/// v_i w v_i.
pub fn conj_virtual(word: &BraidWord, i: usize) -> Result<BraidWord> {
    if i == 0 || i + 1 > word.strands() {
        return Err(Error::IndexOutOfRange(format!(
            "v{i} does not fit on {} strand(s)",
            word.strands()
        )));
    }
    let mut letters = Vec::with_capacity(word.len() + 2);
    letters.push(Generator::V(i));
    letters.extend_from_slice(word.letters());
    letters.push(Generator::V(i));
    Ok(BraidWord::from_parts(word.strands(), letters))
}

/// s_i^{-eps} w s_i^{eps}.
pub fn conj_real(word: &BraidWord, i: usize, eps: Sign) -> Result<BraidWord> {
    if i == 0 || i + 1 > word.strands() {
        return Err(Error::IndexOutOfRange(format!(
            "s{i} does not fit on {} strand(s)",
            word.strands()
        )));
    }
    let mut letters = Vec::with_capacity(word.len() + 2);
    letters.push(classical(i, eps.flip()));
    letters.extend_from_slice(word.letters());
    letters.push(classical(i, eps));
    Ok(BraidWord::from_parts(word.strands(), letters))
}

/// Adds a strand on the right, attached by one crossing: w v_n or
/// w s_n^{eps} on n+1 strands.
pub fn stab(word: &BraidWord, flavor: StabFlavor, eps: Option<Sign>) -> Result<BraidWord> {
    let n = word.strands();
    let last = match (flavor, eps) {
        (StabFlavor::Virtual, None) => Generator::V(n),
        (StabFlavor::Real, Some(eps)) => classical(n, eps),
        (StabFlavor::Virtual, Some(_)) => {
            return Err(Error::InvalidMove(
                "virtual stabilization takes no sign".into(),
            ))
        }
        (StabFlavor::Real, None) => {
            return Err(Error::InvalidMove(
                "real stabilization needs a sign".into(),
            ))
        }
    };
    let mut letters = word.letters().to_vec();
    letters.push(last);
    Ok(BraidWord::from_parts(n + 1, letters))
}

fn strip_last_strand(strands: usize, mut letters: Vec<Generator>, at: usize) -> BraidWord {
    letters.remove(at);
    BraidWord::from_parts(strands - 1, letters)
}

/// Inverse of [`stab`]: removes the last strand when it is attached to the
/// rest of the word by exactly one crossing at the word's end (possibly
/// after free reduction).
pub fn destab(word: &BraidWord) -> Result<BraidWord> {
    let n = word.strands();
    if n == 1 {
        return Err(Error::NotDestabilizable {
            reason: "a one-strand word cannot lose a strand".into(),
        });
    }
    let seam = |w: &BraidWord| -> Option<usize> {
        let count = w.letters().iter().filter(|g| g.index() == n - 1).count();
        match w.letters().last() {
            Some(g) if g.index() == n - 1 && count == 1 => Some(w.len() - 1),
            _ => None,
        }
    };
    if let Some(at) = seam(word) {
        return Ok(strip_last_strand(n, word.letters().to_vec(), at));
    }
    let reduced = free_reduce(word);
    if let Some(at) = seam(&reduced) {
        return Ok(strip_last_strand(n, reduced.letters().to_vec(), at));
    }
    Err(Error::NotDestabilizable {
        reason: format!(
            "strand {n} is not attached by a single final crossing, even after free reduction"
        ),
    })
}

/// Adds a strand on the right threaded under-and-back through the last
/// strand: w s_n^{eps} v_{n-1} s_n^{-eps} on n+1 strands.
pub fn thread_right(word: &BraidWord, eps: Sign) -> Result<BraidWord> {
    let n = word.strands();
    if n < 2 {
        return Err(Error::IndexOutOfRange(
            "threading needs at least 2 strands".into(),
        ));
    }
    let mut letters = word.letters().to_vec();
    letters.push(classical(n, eps));
    letters.push(Generator::V(n - 1));
    letters.push(classical(n, eps.flip()));
    Ok(BraidWord::from_parts(n + 1, letters))
}

/// Left-handed variant of [`thread_right`], routed around the far side:
/// appends v_n v_{n-1} s_{n-1}^{-eps} v_n s_{n-1}^{eps} v_{n-1} v_n.
pub fn thread_left(word: &BraidWord, eps: Sign) -> Result<BraidWord> {
    let n = word.strands();
    if n < 2 {
        return Err(Error::IndexOutOfRange(
            "threading needs at least 2 strands".into(),
        ));
    }
    let mut letters = word.letters().to_vec();
    letters.extend([
        Generator::V(n),
        Generator::V(n - 1),
        classical(n - 1, eps.flip()),
        Generator::V(n),
        classical(n - 1, eps),
        Generator::V(n - 1),
        Generator::V(n),
    ]);
    Ok(BraidWord::from_parts(n + 1, letters))
}

fn unthread_template(strands: usize, eps: Sign, left: bool) -> Vec<Generator> {
    let m = strands;
    if left {
        vec![
            Generator::V(m - 1),
            Generator::V(m - 2),
            classical(m - 2, eps.flip()),
            Generator::V(m - 1),
            classical(m - 2, eps),
            Generator::V(m - 2),
            Generator::V(m - 1),
        ]
    } else {
        vec![
            classical(m - 1, eps),
            Generator::V(m - 2),
            classical(m - 1, eps.flip()),
        ]
    }
}

fn unthread(word: &BraidWord, eps: Sign, left: bool) -> Result<BraidWord> {
    let m = word.strands();
    let which = if left { "left" } else { "right" };
    if m < 3 {
        return Err(Error::NotDestabilizable {
            reason: format!("unthreading ({which}) needs at least 3 strands"),
        });
    }
    let reduced = free_reduce(word);
    let template = unthread_template(m, eps, left);
    let tail_at = reduced
        .len()
        .checked_sub(template.len())
        .filter(|&at| reduced.letters()[at..] == template[..]);
    let tail_at = match tail_at {
        Some(at) => at,
        None => {
            return Err(Error::NotDestabilizable {
                reason: format!("word does not end with a {which}-threaded strand"),
            })
        }
    };
    let body = &reduced.letters()[..tail_at];
    if body.iter().any(|g| g.index() == m - 1) {
        return Err(Error::NotDestabilizable {
            reason: format!("strand {m} is used before its {which}-threaded tail"),
        });
    }
    Ok(BraidWord::from_parts(m - 1, body.to_vec()))
}

/// Inverse of [`thread_right`], applied after free reduction.
pub fn unthread_right(word: &BraidWord, eps: Sign) -> Result<BraidWord> {
    unthread(word, eps, false)
}

/// Inverse of [`thread_left`], applied after free reduction.
pub fn unthread_left(word: &BraidWord, eps: Sign) -> Result<BraidWord> {
    unthread(word, eps, true)
}

fn lmove_bounds(word: &BraidWord, p: usize, j: usize) -> Result<()> {
    if p > word.len() {
        return Err(Error::IndexOutOfRange(format!(
            "cut position {p} exceeds word length {}",
            word.len()
        )));
    }
    if j == 0 || j > word.strands() {
        return Err(Error::IndexOutOfRange(format!(
            "target position {j} is not on 1..={}",
            word.strands()
        )));
    }
    Ok(())
}

/// Inserts a strand at position j of the closure, cut into the word after
/// its first p letters. The new strand is routed through virtual
/// crossings, finishing with either a virtual (`Virtual`) or classical
/// (`Real`, signed) crossing. With p = len and j = n this is exactly a
/// stabilization.
pub fn lmove_virtual(
    word: &BraidWord,
    p: usize,
    j: usize,
    flavor: LmoveFlavor,
    eps: Option<Sign>,
) -> Result<BraidWord> {
    lmove_bounds(word, p, j)?;
    let n = word.strands();
    let mut mid = Vec::new();
    match (flavor, eps) {
        (LmoveFlavor::Virtual, None) => {
            for k in (j..=n).rev() {
                mid.push(Generator::V(k));
            }
        }
        (LmoveFlavor::Real, Some(eps)) => {
            for k in (j + 1..=n).rev() {
                mid.push(Generator::V(k));
            }
            mid.push(classical(j, eps));
        }
        (LmoveFlavor::Virtual, Some(_)) => {
            return Err(Error::InvalidMove(
                "virtual strand insertion takes no sign".into(),
            ))
        }
        (LmoveFlavor::Real, None) => {
            return Err(Error::InvalidMove(
                "real strand insertion needs a sign".into(),
            ))
        }
        (LmoveFlavor::Over | LmoveFlavor::Under, _) => {
            return Err(Error::InvalidMove(
                "over/under insertion is classical; use the classical form".into(),
            ))
        }
    }
    for k in j + 1..=n {
        mid.push(Generator::V(k));
    }
    let mut letters = word.letters()[..p].to_vec();
    letters.extend(mid);
    letters.extend_from_slice(&word.letters()[p..]);
    Ok(BraidWord::from_parts(n + 1, letters))
}

fn shift_up(letters: &[Generator]) -> Vec<Generator> {
    letters
        .iter()
        .map(|g| match *g {
            Generator::Sigma(i) => Generator::Sigma(i + 1),
            Generator::SigmaInv(i) => Generator::SigmaInv(i + 1),
            Generator::V(i) => Generator::V(i + 1),
        })
        .collect()
}

/// Classical strand insertion: the new strand passes entirely over
/// (`Over`) or entirely under (`Under`) the strands it crosses. It can be
/// routed in from the right only if no virtual crossing sits at or right
/// of position j, and from the left only if none sits at or left of it;
/// otherwise the move is not allowed.
pub fn lmove_classical(
    word: &BraidWord,
    p: usize,
    j: usize,
    flavor: LmoveFlavor,
) -> Result<BraidWord> {
    lmove_bounds(word, p, j)?;
    let over = match flavor {
        LmoveFlavor::Over => true,
        LmoveFlavor::Under => false,
        LmoveFlavor::Virtual | LmoveFlavor::Real => {
            return Err(Error::InvalidMove(
                "virtual/real strand insertion is not classical; use the virtual form".into(),
            ))
        }
    };
    let n = word.strands();
    let blocks_right = |k: usize| k + 1 >= j; // k >= j-1
    let blocks_left = |k: usize| k <= j;
    let virtual_cols: Vec<usize> = word
        .letters()
        .iter()
        .filter_map(|g| match g {
            Generator::V(i) => Some(*i),
            _ => None,
        })
        .collect();
    let right_clear = !virtual_cols.iter().any(|&k| blocks_right(k));
    let left_clear = !virtual_cols.iter().any(|&k| blocks_left(k));

    let (prefix, suffix, mid) = if right_clear {
        // New strand enters at position n+1 and is carried across to j.
        let mut mid = Vec::new();
        for k in (j..=n).rev() {
            mid.push(if over {
                Generator::SigmaInv(k)
            } else {
                Generator::Sigma(k)
            });
        }
        for k in j + 1..=n {
            mid.push(if over {
                Generator::Sigma(k)
            } else {
                Generator::SigmaInv(k)
            });
        }
        (
            word.letters()[..p].to_vec(),
            word.letters()[p..].to_vec(),
            mid,
        )
    } else if left_clear {
        // New strand enters at position 1; existing strands shift up one.
        let mut mid = Vec::new();
        for k in 1..=j {
            mid.push(if over {
                Generator::Sigma(k)
            } else {
                Generator::SigmaInv(k)
            });
        }
        for k in (1..j).rev() {
            mid.push(if over {
                Generator::SigmaInv(k)
            } else {
                Generator::Sigma(k)
            });
        }
        (
            shift_up(&word.letters()[..p]),
            shift_up(&word.letters()[p..]),
            mid,
        )
    } else {
        return Err(Error::NotAllowed);
    };

    let mut letters = prefix;
    letters.extend(mid);
    letters.extend(suffix);
    Ok(BraidWord::from_parts(n + 1, letters))
}

/// A move as a replayable record.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "move", rename_all = "snake_case")]
pub enum Move {
    ConjVirtual {
        i: usize,
    },
    ConjReal {
        i: usize,
        eps: Sign,
    },
    Stab {
        flavor: StabFlavor,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        eps: Option<Sign>,
    },
    Destab,
    ThreadRight {
        eps: Sign,
    },
    ThreadLeft {
        eps: Sign,
    },
    UnthreadRight {
        eps: Sign,
    },
    UnthreadLeft {
        eps: Sign,
    },
    Lmove {
        p: usize,
        j: usize,
        flavor: LmoveFlavor,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        eps: Option<Sign>,
    },
    Relation {
        rel: Relation,
        pos: usize,
        dir: Direction,
    },
}

/// Applies a move record to a word.
pub fn apply_move(word: &BraidWord, mv: &Move) -> Result<BraidWord> {
    match *mv {
        Move::ConjVirtual { i } => conj_virtual(word, i),
        Move::ConjReal { i, eps } => conj_real(word, i, eps),
        Move::Stab { flavor, eps } => stab(word, flavor, eps),
        Move::Destab => destab(word),
        Move::ThreadRight { eps } => thread_right(word, eps),
        Move::ThreadLeft { eps } => thread_left(word, eps),
        Move::UnthreadRight { eps } => unthread_right(word, eps),
        Move::UnthreadLeft { eps } => unthread_left(word, eps),
        Move::Lmove { p, j, flavor, eps } => match flavor {
            LmoveFlavor::Virtual | LmoveFlavor::Real => lmove_virtual(word, p, j, flavor, eps),
            LmoveFlavor::Over | LmoveFlavor::Under => {
                if eps.is_some() {
                    return Err(Error::InvalidMove(
                        "over/under strand insertion takes no sign".into(),
                    ));
                }
                lmove_classical(word, p, j, flavor)
            }
        },
        Move::Relation { rel, pos, dir } => apply_relation(word, rel, pos, dir),
    }
}

/// The move that undoes `mv`, given the word it was applied to. Exact for
/// free-reduced words; strand insertions are not invertible as single
/// records.
pub fn invert_move(mv: &Move, before: &BraidWord) -> Result<Move> {
    Ok(match *mv {
        Move::ConjVirtual { i } => Move::ConjVirtual { i },
        Move::ConjReal { i, eps } => Move::ConjReal { i, eps: eps.flip() },
        Move::Stab { .. } => Move::Destab,
        Move::Destab => {
            let n = before.strands();
            let reduced = free_reduce(before);
            match reduced.letters().last() {
                Some(g) if g.index() == n - 1 => match g {
                    Generator::V(_) => Move::Stab {
                        flavor: StabFlavor::Virtual,
                        eps: None,
                    },
                    Generator::Sigma(_) => Move::Stab {
                        flavor: StabFlavor::Real,
                        eps: Some(Sign::PLUS),
                    },
                    Generator::SigmaInv(_) => Move::Stab {
                        flavor: StabFlavor::Real,
                        eps: Some(Sign::MINUS),
                    },
                },
                _ => {
                    return Err(Error::Internal(
                        "cannot read the crossing a destabilization removes".into(),
                    ))
                }
            }
        }
        Move::ThreadRight { eps } => Move::UnthreadRight { eps },
        Move::ThreadLeft { eps } => Move::UnthreadLeft { eps },
        Move::UnthreadRight { eps } => Move::ThreadRight { eps },
        Move::UnthreadLeft { eps } => Move::ThreadLeft { eps },
        Move::Relation { rel, pos, dir } => Move::Relation {
            rel,
            pos,
            dir: dir.flip(),
        },
        Move::Lmove { .. } => {
            return Err(Error::Internal(
                "strand insertions are not invertible as single moves".into(),
            ))
        }
    })
}

/// Size limits for enumerated neighbors.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct MoveBudget {
    pub max_strands: usize,
    pub max_len: usize,
}

/// All single-move neighbors of a word, free-reduced, within budget, and
/// deduplicated by printed form (first occurrence wins). Strand
/// insertions are excluded: the moves here suffice to realize them.
pub fn enumerate_moves(word: &BraidWord, budget: &MoveBudget) -> Vec<(Move, BraidWord)> {
    let n = word.strands();
    let mut moves = Vec::new();
    for i in 1..n {
        moves.push(Move::ConjVirtual { i });
    }
    for i in 1..n {
        moves.push(Move::ConjReal { i, eps: Sign::PLUS });
        moves.push(Move::ConjReal {
            i,
            eps: Sign::MINUS,
        });
    }
    moves.push(Move::Stab {
        flavor: StabFlavor::Virtual,
        eps: None,
    });
    moves.push(Move::Stab {
        flavor: StabFlavor::Real,
        eps: Some(Sign::PLUS),
    });
    moves.push(Move::Stab {
        flavor: StabFlavor::Real,
        eps: Some(Sign::MINUS),
    });
    moves.push(Move::Destab);
    for eps in [Sign::PLUS, Sign::MINUS] {
        moves.push(Move::ThreadRight { eps });
    }
    for eps in [Sign::PLUS, Sign::MINUS] {
        moves.push(Move::ThreadLeft { eps });
    }
    for eps in [Sign::PLUS, Sign::MINUS] {
        moves.push(Move::UnthreadRight { eps });
    }
    for eps in [Sign::PLUS, Sign::MINUS] {
        moves.push(Move::UnthreadLeft { eps });
    }

    let mut seen = std::collections::HashSet::new();
    let mut out = Vec::new();
    for mv in moves {
        let result = match apply_move(word, &mv) {
            Ok(w) => free_reduce(&w),
            Err(_) => continue,
        };
        if result.strands() > budget.max_strands || result.len() > budget.max_len {
            continue;
        }
        if seen.insert(result.to_string()) {
            out.push((mv, result));
        }
    }
    out
}
