//! Equivalence search between braid words.
//!
//! Cheap screens run first: identical free reductions are equivalent
//! outright, and words whose closures differ in component count or in
//! the normalized bracket polynomial cannot be equivalent. What survives
//! goes to a bidirectional breadth-first search over free-reduced words,
//! whose edges are single relation rewrites and single diagram moves.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::invariants::{f_poly_braid, DEFAULT_CROSSING_LIMIT};
use crate::moves::{apply_move, enumerate_moves, invert_move, Move, MoveBudget};
use crate::word::{enumerate_relations, free_reduce, underlying_permutation, BraidWord};
use crate::Result;

/// Limits on the search: words may not grow past `max_strands` or
/// `max_len`, and at most `max_nodes` words are expanded.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchBudget {
    pub max_strands: usize,
    pub max_len: usize,
    pub max_nodes: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Equivalent,
    NotFoundWithinBudget,
}

/// Outcome of [`equiv_within`]. On an `Equivalent` verdict, `path`
/// replays from the first word (free-reducing after every step) to the
/// free reduction of the second.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchResult {
    pub verdict: Verdict,
    pub path: Vec<Move>,
    pub nodes_expanded: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub distinguished_by_invariant: Option<String>,
}

fn neighbors(word: &BraidWord, budget: &MoveBudget) -> Vec<(Move, BraidWord)> {
    let mut out: Vec<(Move, BraidWord)> = enumerate_relations(word)
        .into_iter()
        .map(|(rel, pos, dir, w)| (Move::Relation { rel, pos, dir }, free_reduce(&w)))
        .filter(|(_, w)| w.strands() <= budget.max_strands && w.len() <= budget.max_len)
        .collect();
    out.extend(enumerate_moves(word, budget));
    out
}

type Visited = HashMap<String, (BraidWord, Option<(String, Move)>)>;

/// The raw bidirectional search, without invariant screening. Both
/// inputs must be free-reduced. Returns the path (all moves pointing
/// from `a0` toward `b0`) and the number of words expanded.
///
/// The side growing from the target stores, for each discovered word,
/// the inverse of the move that found it — checked by applying it back —
/// so a meeting point yields a path consisting of forward moves only.
pub(crate) fn search_path(
    a0: &BraidWord,
    b0: &BraidWord,
    budget: &SearchBudget,
) -> (Option<Vec<Move>>, usize) {
    let key_a = a0.to_string();
    let key_b = b0.to_string();
    if key_a == key_b {
        return (Some(Vec::new()), 0);
    }
    let mbudget = MoveBudget {
        max_strands: budget.max_strands,
        max_len: budget.max_len,
    };

    let mut a_visited: Visited = HashMap::new();
    let mut b_visited: Visited = HashMap::new();
    a_visited.insert(key_a.clone(), (a0.clone(), None));
    b_visited.insert(key_b.clone(), (b0.clone(), None));
    let mut a_frontier = vec![key_a];
    let mut b_frontier = vec![key_b];
    let mut nodes_expanded = 0usize;

    loop {
        let expand_a = a_frontier.len() <= b_frontier.len();
        let frontier = if expand_a { &a_frontier } else { &b_frontier };
        if frontier.is_empty() {
            return (None, nodes_expanded);
        }

        let mut next = Vec::new();
        let mut meets: Vec<String> = Vec::new();
        for key in frontier {
            nodes_expanded += 1;
            let word = if expand_a {
                a_visited[key].0.clone()
            } else {
                b_visited[key].0.clone()
            };
            for (mv, result) in neighbors(&word, &mbudget) {
                let rkey = result.to_string();
                if expand_a {
                    if a_visited.contains_key(&rkey) {
                        continue;
                    }
                    if b_visited.contains_key(&rkey) {
                        meets.push(rkey.clone());
                    }
                    a_visited.insert(rkey.clone(), (result, Some((key.clone(), mv))));
                } else {
                    if b_visited.contains_key(&rkey) {
                        continue;
                    }
                    let back = match invert_move(&mv, &word) {
                        Ok(m) => m,
                        Err(_) => continue,
                    };
                    let undoes = apply_move(&result, &back)
                        .map(|w| free_reduce(&w).to_string() == *key)
                        .unwrap_or(false);
                    if !undoes {
                        continue;
                    }
                    if a_visited.contains_key(&rkey) {
                        meets.push(rkey.clone());
                    }
                    b_visited.insert(rkey.clone(), (result, Some((key.clone(), back))));
                }
                next.push(rkey);
            }
        }
        if expand_a {
            a_frontier = next;
        } else {
            b_frontier = next;
        }

        if let Some(meet) = meets.into_iter().min() {
            let mut path = Vec::new();
            let mut cur = meet.clone();
            while let Some((prev, mv)) = a_visited[&cur].1.clone() {
                path.push(mv);
                cur = prev;
            }
            path.reverse();
            let mut cur = meet;
            while let Some((next_key, mv)) = b_visited[&cur].1.clone() {
                path.push(mv);
                cur = next_key;
            }
            return (Some(path), nodes_expanded);
        }
        if nodes_expanded > budget.max_nodes {
            return (None, nodes_expanded);
        }
    }
}

fn replay(a: &BraidWord, path: &[Move], b: &BraidWord) -> Result<()> {
    let mut cur = free_reduce(a);
    for mv in path {
        cur = free_reduce(&apply_move(&cur, mv).map_err(|e| {
            Error::Internal(format!("search produced a path that fails to replay: {e}"))
        })?);
    }
    if cur == free_reduce(b) {
        Ok(())
    } else {
        Err(Error::Internal(
            "search produced a path that misses its target".into(),
        ))
    }
}

/// Decides whether two words are connected by relations and moves within
/// the budget. Returns `Equivalent` with a replayable path, or
/// `NotFoundWithinBudget` — with the name of the distinguishing
/// invariant when the verdict is definitive rather than a timeout.
pub fn equiv_within(a: &BraidWord, b: &BraidWord, budget: &SearchBudget) -> Result<SearchResult> {
    if budget.max_strands == 0 || budget.max_len == 0 || budget.max_nodes == 0 {
        return Err(Error::InvalidBudget(
            "all search limits must be positive".into(),
        ));
    }
    if budget.max_strands < a.strands() || budget.max_strands < b.strands() {
        return Err(Error::InvalidBudget(format!(
            "strand limit {} is below the inputs ({} and {} strands)",
            budget.max_strands,
            a.strands(),
            b.strands()
        )));
    }

    let done = |verdict, path, nodes_expanded, why: Option<&str>| SearchResult {
        verdict,
        path,
        nodes_expanded,
        distinguished_by_invariant: why.map(String::from),
    };

    let a0 = free_reduce(a);
    let b0 = free_reduce(b);
    if a0 == b0 {
        return Ok(done(Verdict::Equivalent, Vec::new(), 0, None));
    }
    if underlying_permutation(&a0).cycle_count() != underlying_permutation(&b0).cycle_count() {
        return Ok(done(
            Verdict::NotFoundWithinBudget,
            Vec::new(),
            0,
            Some("closure component count"),
        ));
    }
    if let (Ok(fa), Ok(fb)) = (
        f_poly_braid(&a0, DEFAULT_CROSSING_LIMIT),
        f_poly_braid(&b0, DEFAULT_CROSSING_LIMIT),
    ) {
        if fa != fb {
            return Ok(done(
                Verdict::NotFoundWithinBudget,
                Vec::new(),
                0,
                Some("normalized bracket polynomial"),
            ));
        }
    }

    match search_path(&a0, &b0, budget) {
        (Some(path), nodes_expanded) => {
            replay(a, &path, b)?;
            Ok(done(Verdict::Equivalent, path, nodes_expanded, None))
        }
        (None, nodes_expanded) => Ok(done(
            Verdict::NotFoundWithinBudget,
            Vec::new(),
            nodes_expanded,
            None,
        )),
    }
}
