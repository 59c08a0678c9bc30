//! Bracket-polynomial and writhe invariants of closed diagrams.
//!
//! The bracket is computed twice over, by deliberately different routes:
//! [`bracket_gauss`] expands smoothings of a Gauss code, while
//! [`bracket_braid`] runs a state sum directly on a braid word and its
//! closure arcs without ever building a code. Agreement of the two is used
//! as a cross-check throughout the test suite.

use std::collections::HashMap;

use num_bigint::BigInt;

use crate::closure::{GaussCode, Role};
use crate::error::Error;
use crate::poly::LaurentPoly;
use crate::word::{writhe, BraidWord, Generator};
use crate::Result;

/// Bracket state sums grow as 2^crossings; refuse anything bigger than
/// this unless the caller raises the limit explicitly.
pub const DEFAULT_CROSSING_LIMIT: usize = 20;

struct Uf {
    parent: Vec<usize>,
    merges: usize,
}

impl Uf {
    fn new(n: usize) -> Uf {
        Uf {
            parent: (0..n).collect(),
            merges: 0,
        }
    }

    fn make(&mut self) -> usize {
        self.parent.push(self.parent.len());
        self.parent.len() - 1
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra] = rb;
            self.merges += 1;
        }
    }

    fn clone_state(&self) -> Uf {
        Uf {
            parent: self.parent.clone(),
            merges: self.merges,
        }
    }

    /// Number of classes once every arc end has been joined; each class is
    /// then one closed loop.
    fn loops(&self) -> usize {
        self.parent.len() - self.merges
    }
}

/// Histogram of states keyed by (A-exponent, loop count). Collapsing the
/// 2^c states this way keeps the number of polynomial operations quadratic
/// in the crossing count.
type StateHist = HashMap<(i64, usize), u64>;

fn hist_to_poly(hist: &StateHist) -> LaurentPoly {
    let max_loops = hist.keys().map(|&(_, l)| l).max().unwrap_or(1);
    let mut d_pows = Vec::with_capacity(max_loops);
    d_pows.push(LaurentPoly::one());
    for _ in 1..max_loops {
        d_pows.push(d_pows.last().unwrap() * &LaurentPoly::loop_value());
    }
    let mut out = LaurentPoly::zero();
    for (&(exp, loops), &count) in hist {
        let term = LaurentPoly::monomial(exp, BigInt::from(count));
        out = &out + &(&term * &d_pows[loops - 1]);
    }
    out
}

/// The four arc ends meeting at one crossing of a Gauss code.
struct CrossingEnds {
    sign: i8,
    over_in: usize,
    over_out: usize,
    under_in: usize,
    under_out: usize,
}

fn crossing_ends(code: &GaussCode) -> (Vec<CrossingEnds>, usize, usize) {
    let mut offsets = Vec::new();
    let mut arcs = 0;
    let mut empty_components = 0;
    for comp in code.components() {
        offsets.push(arcs);
        arcs += comp.len();
        if comp.is_empty() {
            empty_components += 1;
        }
    }
    let mut halves: HashMap<usize, (i8, [Option<(usize, usize)>; 2])> = HashMap::new();
    for (ci, comp) in code.components().iter().enumerate() {
        for (k, pass) in comp.iter().enumerate() {
            let arc_in = offsets[ci] + k;
            let arc_out = offsets[ci] + (k + 1) % comp.len();
            let slot = match pass.role {
                Role::O => 0,
                Role::U => 1,
            };
            halves.entry(pass.id).or_insert((pass.sign, [None, None])).1[slot] =
                Some((arc_in, arc_out));
        }
    }
    let mut ends: Vec<CrossingEnds> = halves
        .into_iter()
        .map(|(id, (sign, [over, under]))| {
            let (over_in, over_out) = over.expect("validated code has an over pass");
            let (under_in, under_out) = under.expect("validated code has an under pass");
            (
                id,
                CrossingEnds {
                    sign,
                    over_in,
                    over_out,
                    under_in,
                    under_out,
                },
            )
        })
        .map(|(_, e)| e)
        .collect();
    ends.sort_by_key(|e| e.over_in);
    (ends, arcs, empty_components)
}

fn explore_code(
    ends: &[CrossingEnds],
    k: usize,
    mut uf: Uf,
    mut exp: i64,
    extra_loops: usize,
    hist: &mut StateHist,
) {
    let mut k = k;
    while k < ends.len() {
        let e = &ends[k];
        // Joins made by the two smoothings; which one earns the A depends
        // on the crossing sign.
        let oriented = [(e.under_in, e.over_out), (e.over_in, e.under_out)];
        let parallel = [(e.under_in, e.over_in), (e.under_out, e.over_out)];
        let (a_joins, b_joins) = if e.sign > 0 {
            (oriented, parallel)
        } else {
            (parallel, oriented)
        };
        let mut other = uf.clone_state();
        for (x, y) in b_joins {
            other.union(x, y);
        }
        explore_code(ends, k + 1, other, exp - 1, extra_loops, hist);
        for (x, y) in a_joins {
            uf.union(x, y);
        }
        exp += 1;
        k += 1;
    }
    *hist.entry((exp, uf.loops() + extra_loops)).or_insert(0) += 1;
}

/// Bracket polynomial of the diagram described by a Gauss code, refusing
/// codes with more crossings than `limit`.
pub fn bracket_gauss_limited(code: &GaussCode, limit: usize) -> Result<LaurentPoly> {
    let count = code.crossing_count();
    if count > limit {
        return Err(Error::CrossingLimit { count, limit });
    }
    let (ends, arcs, empty_components) = crossing_ends(code);
    let mut hist = StateHist::new();
    explore_code(&ends, 0, Uf::new(arcs), 0, empty_components, &mut hist);
    Ok(hist_to_poly(&hist))
}

pub fn bracket_gauss(code: &GaussCode) -> Result<LaurentPoly> {
    bracket_gauss_limited(code, DEFAULT_CROSSING_LIMIT)
}

fn explore_braid(
    letters: &[Generator],
    k: usize,
    mut frontier: Vec<usize>,
    mut uf: Uf,
    mut exp: i64,
    hist: &mut StateHist,
) {
    let mut k = k;
    while k < letters.len() {
        let g = letters[k];
        let i = g.index();
        match g {
            Generator::V(_) => frontier.swap(i - 1, i),
            Generator::Sigma(_) | Generator::SigmaInv(_) => {
                let eps = i64::from(g.sign().expect("classical letter"));
                explore_braid(letters, k + 1, frontier.clone(), uf.clone_state(), exp + eps, hist);
                // Cup-cap smoothing: the incoming arcs join, one new arc
                // spans both columns below.
                exp -= eps;
                uf.union(frontier[i - 1], frontier[i]);
                let fresh = uf.make();
                frontier[i - 1] = fresh;
                frontier[i] = fresh;
            }
        }
        k += 1;
    }
    // Close the braid: bottom of column q meets top of column q.
    for (top, &bottom) in frontier.iter().enumerate() {
        uf.union(bottom, top);
    }
    *hist.entry((exp, uf.loops())).or_insert(0) += 1;
}

/// Bracket polynomial of the closure of a braid word, computed as a state
/// sum over the word itself.
pub fn bracket_braid_limited(word: &BraidWord, limit: usize) -> Result<LaurentPoly> {
    let count = word.letters().iter().filter(|g| g.is_classical()).count();
    if count > limit {
        return Err(Error::CrossingLimit { count, limit });
    }
    let frontier: Vec<usize> = (0..word.strands()).collect();
    let uf = Uf::new(word.strands());
    let mut hist = StateHist::new();
    explore_braid(word.letters(), 0, frontier, uf, 0, &mut hist);
    Ok(hist_to_poly(&hist))
}

pub fn bracket_braid(word: &BraidWord) -> Result<LaurentPoly> {
    bracket_braid_limited(word, DEFAULT_CROSSING_LIMIT)
}

/// Sum of crossing signs of a code, each crossing counted once.
pub fn code_writhe(code: &GaussCode) -> i64 {
    code.components()
        .iter()
        .flatten()
        .filter(|p| p.role == Role::O)
        .map(|p| i64::from(p.sign))
        .sum()
}

/// Writhe-normalized bracket of a coded diagram.
pub fn f_poly(code: &GaussCode, limit: usize) -> Result<LaurentPoly> {
    let bracket = bracket_gauss_limited(code, limit)?;
    Ok(&LaurentPoly::neg_a_cubed_pow(-code_writhe(code)) * &bracket)
}

/// Writhe-normalized bracket of the closure of a braid word.
pub fn f_poly_braid(word: &BraidWord, limit: usize) -> Result<LaurentPoly> {
    let bracket = bracket_braid_limited(word, limit)?;
    Ok(&LaurentPoly::neg_a_cubed_pow(-writhe(word)) * &bracket)
}

/// Sum of signs of the odd crossings of a one-component code: those with
/// an odd number of passes strictly between their two visits.
pub fn odd_writhe(code: &GaussCode) -> Result<i64> {
    if code.component_count() != 1 {
        return Err(Error::MultiComponent(code.component_count()));
    }
    let comp = &code.components()[0];
    let mut first_seen: HashMap<usize, usize> = HashMap::new();
    let mut total = 0;
    for (pos, pass) in comp.iter().enumerate() {
        match first_seen.get(&pass.id) {
            None => {
                first_seen.insert(pass.id, pos);
            }
            Some(&prev) => {
                if (pos - prev - 1) % 2 == 1 {
                    total += i64::from(pass.sign);
                }
            }
        }
    }
    Ok(total)
}
