//! Turns a Morse diagram into a braid word whose closure carries the
//! same Gauss code.
//!
//! Three steps. Crossings threaded by upward arcs are first rotated into
//! downward position with small cup/cap gadgets. Every remaining upward
//! arc then gets its own braid strand, parked to the right of the
//! diagram; the arc's turns become detours onto and off that strand,
//! written as runs of virtual crossings. Circles with no crossings park
//! as untouched strands on the left.

use serde::{Deserialize, Serialize};

use crate::morse::{trace, EndKind, MorseWord, SliceInfo};
use crate::word::{BraidWord, Generator};
use crate::Result;

/// Strand bookkeeping reported alongside the braid word.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct BraidingStats {
    /// Maximal downward arcs after rotation; one braid body each.
    pub down_runs: usize,
    /// Maximal upward arcs after rotation; one parked strand each.
    pub up_runs: usize,
    /// Crossing-free circles; one untouched strand each.
    pub crossingless: usize,
}

/// A diagram event after rotation: all crossings run downward, and cups
/// and caps are tagged with the side their upward leg is on. Crossing-
/// free circles are dropped here; they only shift columns by the
/// crossingless count.
#[derive(Debug, Clone, Copy)]
enum Event {
    Cup { i: usize, up_right: bool },
    Cap { i: usize, up_right: bool },
    X { i: usize, sign: i8 },
    V { i: usize },
}

/// Replaces every crossing with an upward strand by a gadget whose one
/// crossing runs downward. A strand is turned with a cup before the
/// crossing and a cap after it; when both strands point up, the rotated
/// pair is also rerouted with two virtual crossings so the turns stay
/// adjacent. Circle structure, crossing order along each circle, signs
/// and over/under data are all preserved.
fn rotate_down(slices: &[SliceInfo]) -> Vec<Event> {
    let mut events = Vec::new();
    for info in slices {
        match *info {
            SliceInfo::Cup { kind: EndKind::Crossingless, .. }
            | SliceInfo::Cap { kind: EndKind::Crossingless, .. } => {}
            SliceInfo::Cup { i, kind } => events.push(Event::Cup {
                i,
                up_right: kind == EndKind::DownLeft,
            }),
            SliceInfo::Cap { i, kind } => events.push(Event::Cap {
                i,
                up_right: kind == EndKind::DownLeft,
            }),
            SliceInfo::V { i } => events.push(Event::V { i }),
            SliceInfo::X { i, sign, d_left, d_right } => match (d_left, d_right) {
                (1, 1) => events.push(Event::X { i, sign }),
                (1, -1) => events.extend([
                    Event::Cup { i, up_right: false },
                    Event::X { i: i + 1, sign: -sign },
                    Event::Cap { i: i + 2, up_right: true },
                ]),
                (-1, 1) => events.extend([
                    Event::Cup { i: i + 2, up_right: true },
                    Event::X { i: i + 1, sign: -sign },
                    Event::Cap { i, up_right: false },
                ]),
                _ => events.extend([
                    Event::Cup { i: i + 2, up_right: true },
                    Event::Cup { i: i + 4, up_right: true },
                    Event::V { i: i + 3 },
                    Event::X { i: i + 2, sign },
                    Event::Cap { i: i + 1, up_right: false },
                    Event::Cap { i, up_right: false },
                    Event::V { i },
                ]),
            },
        }
    }
    events
}

/// What a braid column is doing at the current level.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Slot {
    /// Crossing-free circle, parked on the left for good.
    Free,
    /// Parked strand whose upward arc has not been reached yet.
    Top(usize),
    /// A downward arc of the diagram.
    Body,
    /// Parked strand whose upward arc is already behind us.
    Bottom(usize),
}

/// A diagram column: a downward arc, or an upward arc with its run id.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Lane {
    Down,
    Up(usize),
}

/// Like [`braid_morse`], but also reports strand bookkeeping.
pub fn braid_morse_report(word: &MorseWord) -> Result<(BraidWord, BraidingStats)> {
    let traced = trace(word)?;
    let events = rotate_down(&traced.slices);

    let k0 = traced.n_crossingless;
    let runs = events.iter().filter(|e| matches!(e, Event::Cup { .. })).count();
    let n = k0 + runs;
    debug_assert!(n >= 1, "a closed diagram has at least one circle");

    // Bodies sit at k0+1..=k0+#down in diagram order; parked strands stay
    // to their right. Every braid column move below is a virtual detour,
    // so none of it shows up in the closure's Gauss code.
    let body_col = |lanes: &[Lane], col: usize| -> usize {
        k0 + lanes[..col]
            .iter()
            .filter(|l| matches!(l, Lane::Down))
            .count()
    };

    let mut letters: Vec<Generator> = Vec::new();
    let mut slots: Vec<Slot> = vec![Slot::Free; k0];
    slots.extend((0..runs).map(Slot::Top));
    let mut lanes: Vec<Lane> = Vec::new();
    let mut next_run = 0usize;

    for ev in &events {
        match *ev {
            Event::Cup { i, up_right } => {
                // The parked strand comes in from the right and takes
                // over at the cup's downward leg.
                let r = next_run;
                next_run += 1;
                let pair = if up_right {
                    [Lane::Down, Lane::Up(r)]
                } else {
                    [Lane::Up(r), Lane::Down]
                };
                lanes.splice(i - 1..i - 1, pair);
                let down_col = if up_right { i } else { i + 1 };
                let c = body_col(&lanes, down_col);
                let p = slots
                    .iter()
                    .position(|s| *s == Slot::Top(r))
                    .expect("parked strand is present until its cup")
                    + 1;
                debug_assert!(p >= c);
                for k in (c..p).rev() {
                    letters.push(Generator::V(k));
                    slots.swap(k - 1, k);
                }
                slots[c - 1] = Slot::Body;
            }
            Event::Cap { i, up_right } => {
                // The downward leg leaves to the right and parks.
                let (down_col, up_col) = if up_right { (i, i + 1) } else { (i + 1, i) };
                debug_assert_eq!(lanes[down_col - 1], Lane::Down);
                let r = match lanes[up_col - 1] {
                    Lane::Up(r) => r,
                    Lane::Down => unreachable!("cap joins one downward and one upward arc"),
                };
                let c = body_col(&lanes, down_col);
                debug_assert_eq!(slots[c - 1], Slot::Body);
                lanes.drain(i - 1..=i);
                for k in c..n {
                    letters.push(Generator::V(k));
                    slots.swap(k - 1, k);
                }
                slots[n - 1] = Slot::Bottom(r);
            }
            Event::X { i, sign } => {
                debug_assert_eq!(lanes[i - 1], Lane::Down);
                debug_assert_eq!(lanes[i], Lane::Down);
                let b = body_col(&lanes, i);
                letters.push(if sign > 0 {
                    Generator::Sigma(b)
                } else {
                    Generator::SigmaInv(b)
                });
            }
            Event::V { i } => {
                if lanes[i - 1] == Lane::Down && lanes[i] == Lane::Down {
                    letters.push(Generator::V(body_col(&lanes, i)));
                }
                lanes.swap(i - 1, i);
            }
        }
    }
    debug_assert!(lanes.is_empty());

    // The closure joins bottom to top column by column, so the parked
    // strands must leave in the order they arrived.
    for j in 1..=runs {
        let t = k0 + j;
        let p = slots
            .iter()
            .position(|s| *s == Slot::Bottom(j - 1))
            .expect("every parked strand has left the diagram")
            + 1;
        debug_assert!(p >= t);
        for k in (t..p).rev() {
            letters.push(Generator::V(k));
            slots.swap(k - 1, k);
        }
    }

    let stats = BraidingStats {
        down_runs: runs,
        up_runs: runs,
        crossingless: k0,
    };
    Ok((BraidWord::from_parts(n, letters), stats))
}

/// Braid word on `crossingless + up_runs` strands whose closure has the
/// same canonical Gauss code as the diagram itself.
pub fn braid_morse(word: &MorseWord) -> Result<BraidWord> {
    braid_morse_report(word).map(|(braid, _)| braid)
}
