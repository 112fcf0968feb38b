//! Black-peg Mastermind without repeated colors.
//!
//! A secret is an injective code of length `n` over `k >= n` colors; each
//! guess is answered with the number of positions it gets right. This crate
//! provides
//!
//! * [`code`]: codes, feedback counts, the rotation family, transcripts;
//! * [`codebreaker`]: an adaptive solver using `O(n log n)` guesses;
//! * [`codemaker`]: honest and adversarial codemakers, plus the secret
//!   adaption routines behind the lower bounds;
//! * [`oracle`]: exhaustive verification, transcript checks and exact
//!   minimax values for tiny instances.
//!
//! Colors are `1..=k`. Positions and rotation indices are zero-based.

pub mod code;
pub mod codebreaker;
pub mod codemaker;
pub mod oracle;

pub use code::{
    all_codes, black, black_partial, open_matches, rotation, validate_code, white, Code, CodeError,
    Color, Event, GameConfig, PartialSolution, Transcript,
};
pub use codebreaker::{query_bound, solve, CodemakerOracle, OracleFailure, SolveError};
pub use codemaker::{CodemakerError, StaticCodemaker, DEFAULT_MAX_STATES};
