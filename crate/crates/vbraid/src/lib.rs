//! Virtual braid calculus: braid words over the generators `s<i>`, `s<i>'`,
//! `v<i>`, local relation rewrites, stabilization-style moves, closure to
//! Gauss codes, bracket/f-polynomial invariants, a Morse-diagram braiding
//! algorithm, and a bidirectional equivalence search.

mod braiding;
mod closure;
mod error;
mod gauss_moves;
mod invariants;
mod morse;
mod moves;
mod poly;
mod search;
mod word;

pub use braiding::{braid_morse, braid_morse_report, BraidingStats};
pub use closure::{close_braid, validate_gauss, GaussCode, Pass, Role};
pub use error::Error;
pub use gauss_moves::{
    apply_gauss_move, forbidden_over, forbidden_under, r1_delete, r1_insert, r2_delete, r2_insert,
    random_code, GaussMove,
};
pub use invariants::{
    bracket_braid, bracket_braid_limited, bracket_gauss, bracket_gauss_limited, code_writhe,
    f_poly, f_poly_braid, odd_writhe, DEFAULT_CROSSING_LIMIT,
};
pub use morse::{evaluate_morse, random_morse, validate_morse, MorseToken, MorseWord};
pub use moves::{
    apply_move, conj_real, conj_virtual, destab, enumerate_moves, invert_move, lmove_classical,
    lmove_virtual, stab, thread_left, thread_right, unthread_left, unthread_right, LmoveFlavor,
    Move, MoveBudget, Sign, StabFlavor,
};
pub use poly::{random_poly, LaurentPoly};
pub use search::{equiv_within, SearchBudget, SearchResult, Verdict};
pub use word::{
    apply_relation, enumerate_relations, free_reduce, random_word, underlying_permutation, writhe,
    BraidWord, Direction, Generator, Permutation, Relation,
};

/// Convenience alias used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;
