//! Brute-force ground truth for the solver.

mod minimax;

pub use minimax::{minimax_value, minimax_value_naive, MINIMAX_MAX_N, MINIMAX_MAX_N_EXTENDED};

use std::collections::BTreeMap;
use std::fmt;

use num_rational::Ratio;
use rayon::prelude::*;

use crate::code::{all_codes, count_black, rotation, Code, GameConfig, Transcript};
use crate::codebreaker::{bound_enforced, query_bound, solve};
use crate::codemaker::{check_capacity, CodemakerError, StaticCodemaker};

/// First event of a transcript that disagrees with a secret.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TranscriptViolation {
    pub index: usize,
    pub reason: String,
}

impl fmt::Display for TranscriptViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "event {}: {}", self.index, self.reason)
    }
}

impl std::error::Error for TranscriptViolation {}

/// Checks every answer against `secret`, and every derived count against
/// the rotation-sum identity.
pub fn check_transcript(transcript: &Transcript, secret: &Code) -> Result<(), TranscriptViolation> {
    let config = transcript.config();
    let n = config.n();
    let violation = |index, reason: String| Err(TranscriptViolation { index, reason });
    if secret.len() != n {
        return violation(
            0,
            format!("secret has length {}, expected {n}", secret.len()),
        );
    }
    let rotations: Vec<Code> = (0..config.k())
        .map(|j| rotation(j, config).expect("index below k"))
        .collect();
    for (index, event) in transcript.events().iter().enumerate() {
        if event.guess.len() != n {
            return violation(index, format!("guess has length {}", event.guess.len()));
        }
        if event.derived {
            let Some(j) = rotations.iter().position(|r| *r == event.guess) else {
                return violation(index, "derived entry is not a rotation".into());
            };
            let mut total = 0;
            for (other, rot) in rotations.iter().enumerate().filter(|(o, _)| *o != j) {
                let Some(earlier) = transcript.events()[..index]
                    .iter()
                    .find(|e| !e.derived && e.guess == *rot)
                else {
                    return violation(index, format!("rotation {} was never asked", other + 1));
                };
                total += earlier.black;
            }
            if total + event.black != n {
                return violation(
                    index,
                    format!(
                        "derived count {} but rotation counts sum to {total}",
                        event.black
                    ),
                );
            }
        }
        let actual = count_black(event.guess.colors(), secret.colors());
        if actual != event.black {
            return violation(
                index,
                format!("recorded {} but the secret gives {actual}", event.black),
            );
        }
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerificationFailure {
    pub secret: Code,
    pub reason: String,
}

/// Outcome of solving every secret of one configuration.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerificationReport {
    pub config: GameConfig,
    pub secrets_tested: u64,
    pub failures: Vec<VerificationFailure>,
    pub max_queries: usize,
    pub mean_queries: Ratio<u64>,
    /// Query count to number of secrets.
    pub histogram: BTreeMap<usize, u64>,
    pub bound: usize,
    /// `false` where the closed-form bound makes no claim (`k = n <= 3`).
    pub bound_enforced: bool,
    pub bound_satisfied: bool,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty() && (self.bound_satisfied || !self.bound_enforced)
    }
}

/// Runs the solver against every injective secret of `config`.
pub fn exhaustive_verify(
    config: GameConfig,
    max_states: u64,
) -> Result<VerificationReport, CodemakerError> {
    check_capacity(config, max_states)?;
    let outcomes: Vec<Result<usize, VerificationFailure>> = all_codes(config)
        .into_par_iter()
        .map(|secret| {
            let fail = |reason: String| VerificationFailure {
                secret: secret.clone(),
                reason,
            };
            let (found, transcript) = solve(&mut StaticCodemaker::new(secret.clone()), config)
                .map_err(|e| fail(e.to_string()))?;
            if found != secret {
                return Err(fail(format!("solver returned {found}")));
            }
            check_transcript(&transcript, &secret).map_err(|v| fail(v.to_string()))?;
            Ok(transcript.query_count())
        })
        .collect();

    let mut histogram = BTreeMap::new();
    let mut failures = Vec::new();
    let mut total = 0u64;
    for outcome in outcomes {
        match outcome {
            Ok(q) => {
                *histogram.entry(q).or_insert(0u64) += 1;
                total += q as u64;
            }
            Err(f) => failures.push(f),
        }
    }
    failures.sort_by(|a, b| a.secret.cmp(&b.secret));
    let solved: u64 = histogram.values().sum();
    let max_queries = histogram.keys().next_back().copied().unwrap_or(0);
    let bound = query_bound(config);
    Ok(VerificationReport {
        config,
        secrets_tested: config.code_count(),
        failures,
        max_queries,
        mean_queries: if solved == 0 {
            Ratio::from_integer(0)
        } else {
            Ratio::new(total, solved)
        },
        histogram,
        bound,
        bound_enforced: bound_enforced(config),
        bound_satisfied: max_queries <= bound,
    })
}
