//! Codemakers: an honest one holding a fixed secret, and an adversary that
//! keeps every consistent secret alive and answers with the smallest count.

mod adaption;
mod adversary;

pub use adaption::{
    adapt_secret_eq, adapt_secret_eq_with, adapt_secret_gt, adapt_secret_gt_with, AdaptionInstance,
};
pub use adversary::{
    adversary_answer, check_lemmas, play_against_adversary, verify_lower_bound_play, Adversary,
    FeasibleSet, LowerBoundPlay,
};

use thiserror::Error;

use crate::code::{black, Code, CodeError, GameConfig};
use crate::codebreaker::{CodemakerOracle, OracleFailure, SolveError};

/// Largest number of codes the explicit feasible set may hold by default.
pub const DEFAULT_MAX_STATES: u64 = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CodemakerError {
    #[error("{config} has {states} codes, above the limit of {limit}")]
    Capacity {
        config: GameConfig,
        states: u64,
        limit: u64,
    },
    #[error("no code is consistent with the answers so far")]
    EmptyFeasibleSet,
    #[error(transparent)]
    Code(#[from] CodeError),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("lower-bound lemma violated at query {m}: answer {answer} ({rule})")]
    LemmaViolation {
        m: usize,
        answer: usize,
        rule: &'static str,
    },
    #[error("strategy failed against the adversary: {0}")]
    Strategy(#[from] SolveError),
    #[error("strategy stopped without identifying the secret: {0}")]
    Unresolved(String),
}

/// Checks the capacity guard for enumerating all codes of `config`.
pub fn check_capacity(config: GameConfig, limit: u64) -> Result<u64, CodemakerError> {
    let states = config.code_count();
    if states > limit {
        return Err(CodemakerError::Capacity {
            config,
            states,
            limit,
        });
    }
    Ok(states)
}

/// The honest answer: black count of `guess` against `secret`.
pub fn static_answer(secret: &Code, guess: &Code) -> Result<usize, CodeError> {
    black(guess, secret)
}

/// A codemaker committed to one secret.
#[derive(Debug, Clone)]
pub struct StaticCodemaker {
    secret: Code,
}

impl StaticCodemaker {
    pub fn new(secret: Code) -> Self {
        Self { secret }
    }

    pub fn secret(&self) -> &Code {
        &self.secret
    }
}

impl CodemakerOracle for StaticCodemaker {
    fn answer(&mut self, guess: &Code) -> Result<usize, OracleFailure> {
        static_answer(&self.secret, guess).map_err(|e| OracleFailure(e.to_string()))
    }
}
