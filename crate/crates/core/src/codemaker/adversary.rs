use crate::code::{all_codes, count_black, Code, GameConfig, Transcript};
use crate::codebreaker::{solve, CodemakerOracle, OracleFailure, SolveError};

use super::{check_capacity, CodemakerError};

/// Every code consistent with the answers given so far.
#[derive(Debug, Clone)]
pub struct FeasibleSet {
    config: GameConfig,
    members: Vec<Code>,
}

impl FeasibleSet {
    pub fn new(config: GameConfig, max_states: u64) -> Result<Self, CodemakerError> {
        check_capacity(config, max_states)?;
        Ok(Self {
            config,
            members: all_codes(config),
        })
    }

    pub fn config(&self) -> GameConfig {
        self.config
    }

    pub fn members(&self) -> &[Code] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// Keeps only the codes scoring `answer` against `guess`.
    pub fn restrict(&mut self, guess: &Code, answer: usize) {
        self.members
            .retain(|m| count_black(m.colors(), guess.colors()) == answer);
    }
}

/// Answers with the smallest count any feasible code gives, then keeps only
/// the codes that give it.
pub fn adversary_answer(state: &mut FeasibleSet, guess: &Code) -> Result<usize, CodemakerError> {
    if guess.len() != state.config.n() {
        return Err(crate::code::CodeError::Length {
            expected: state.config.n(),
            got: guess.len(),
        }
        .into());
    }
    let answer = state
        .members
        .iter()
        .map(|m| count_black(m.colors(), guess.colors()))
        .min()
        .ok_or(CodemakerError::EmptyFeasibleSet)?;
    state.restrict(guess, answer);
    Ok(answer)
}

/// An adaptive codemaker recording `(m, b_m)` for every query.
#[derive(Debug, Clone)]
pub struct Adversary {
    feasible: FeasibleSet,
    answers: Vec<(usize, usize)>,
}

impl Adversary {
    pub fn new(config: GameConfig, max_states: u64) -> Result<Self, CodemakerError> {
        Ok(Self {
            feasible: FeasibleSet::new(config, max_states)?,
            answers: Vec::new(),
        })
    }

    pub fn feasible(&self) -> &FeasibleSet {
        &self.feasible
    }

    /// One-based query index and the answer given.
    pub fn answers(&self) -> &[(usize, usize)] {
        &self.answers
    }
}

impl CodemakerOracle for Adversary {
    fn answer(&mut self, guess: &Code) -> Result<usize, OracleFailure> {
        let b = adversary_answer(&mut self.feasible, guess)
            .map_err(|e| OracleFailure(e.to_string()))?;
        if self.feasible.is_empty() {
            return Err(OracleFailure(CodemakerError::EmptyFeasibleSet.to_string()));
        }
        self.answers.push((self.answers.len() + 1, b));
        Ok(b)
    }
}

/// Outcome of one game against the adversary.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LowerBoundPlay {
    pub queries_used: usize,
    /// `(m, b_m)` for every query, one-based.
    pub witness: Vec<(usize, usize)>,
    pub secret: Code,
}

/// Plays `strategy` against the adversary and checks the lower-bound lemmas:
/// `b_m <= m` for every query when `k = n`, and `b_m < n` for `m < k` when
/// `k > n`.
pub fn verify_lower_bound_play<S>(
    config: GameConfig,
    max_states: u64,
    strategy: S,
) -> Result<LowerBoundPlay, CodemakerError>
where
    S: FnOnce(&mut dyn CodemakerOracle, GameConfig) -> Result<(Code, Transcript), SolveError>,
{
    let mut adversary = Adversary::new(config, max_states)?;
    let (secret, transcript) = strategy(&mut adversary, config)?;
    let witness = adversary.answers.clone();
    check_lemmas(config, &witness)?;
    let n = config.n();
    let feasible = adversary.feasible.members();
    if feasible != [secret.clone()] {
        return Err(CodemakerError::Unresolved(format!(
            "strategy returned {secret} with {} feasible codes left",
            feasible.len()
        )));
    }
    if witness.last().map(|&(_, b)| b) != Some(n) {
        return Err(CodemakerError::Unresolved(
            "the final guess was not answered with n".into(),
        ));
    }
    debug_assert_eq!(transcript.query_count(), witness.len());
    Ok(LowerBoundPlay {
        queries_used: witness.len(),
        witness,
        secret,
    })
}

/// Checks `b_m <= m` (`k = n`) or `b_m < n` for `m < k` (`k > n`) on every
/// recorded `(m, b_m)`.
pub fn check_lemmas(config: GameConfig, witness: &[(usize, usize)]) -> Result<(), CodemakerError> {
    let (n, k) = (config.n(), config.k());
    for &(m, b) in witness {
        if config.is_permutation() && b > m {
            return Err(CodemakerError::LemmaViolation {
                m,
                answer: b,
                rule: "b_m <= m",
            });
        }
        if !config.is_permutation() && m < k && b >= n {
            return Err(CodemakerError::LemmaViolation {
                m,
                answer: b,
                rule: "b_m < n for m < k",
            });
        }
    }
    Ok(())
}

/// [`verify_lower_bound_play`] with the crate's own codebreaker.
pub fn play_against_adversary(
    config: GameConfig,
    max_states: u64,
) -> Result<LowerBoundPlay, CodemakerError> {
    verify_lower_bound_play(config, max_states, solve)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::code::{black, Color};
    use crate::codemaker::{static_answer, DEFAULT_MAX_STATES};

    fn cfg(n: usize, k: usize) -> GameConfig {
        GameConfig::new(n, k).unwrap()
    }

    fn code(colors: &[Color], config: GameConfig) -> Code {
        Code::new(colors.to_vec(), config).unwrap()
    }

    #[test]
    fn three_hole_answers() {
        let config = cfg(3, 3);
        let mut set = FeasibleSet::new(config, DEFAULT_MAX_STATES).unwrap();
        assert_eq!(
            adversary_answer(&mut set, &code(&[1, 2, 3], config)).unwrap(),
            0
        );
        assert_eq!(
            set.members(),
            &[code(&[2, 3, 1], config), code(&[3, 1, 2], config)]
        );
        assert_eq!(
            adversary_answer(&mut set, &code(&[2, 1, 3], config)).unwrap(),
            1
        );
        assert_eq!(set.len(), 2);
    }

    #[test]
    fn singleton_degenerates_to_static() {
        let config = cfg(3, 4);
        let mut set = FeasibleSet::new(config, DEFAULT_MAX_STATES).unwrap();
        let y = code(&[4, 1, 3], config);
        set.members.retain(|m| *m == y);
        for g in all_codes(config) {
            let mut s = set.clone();
            assert_eq!(
                adversary_answer(&mut s, &g).unwrap(),
                static_answer(&y, &g).unwrap()
            );
        }
        assert_eq!(adversary_answer(&mut set, &y).unwrap(), 3);
    }

    #[test]
    fn empty_set_is_an_error() {
        let config = cfg(2, 2);
        let mut set = FeasibleSet::new(config, DEFAULT_MAX_STATES).unwrap();
        set.members.clear();
        assert_eq!(
            adversary_answer(&mut set, &code(&[1, 2], config)),
            Err(CodemakerError::EmptyFeasibleSet)
        );
    }

    #[test]
    fn answers_never_exceed_any_feasible_code() {
        let config = cfg(4, 4);
        let mut set = FeasibleSet::new(config, DEFAULT_MAX_STATES).unwrap();
        for g in [[1, 2, 3, 4], [2, 1, 4, 3], [1, 3, 2, 4], [4, 3, 2, 1]] {
            let g = code(&g, config);
            let before = set.clone();
            let b = adversary_answer(&mut set, &g).unwrap();
            assert!(before.members().iter().all(|m| black(m, &g).unwrap() >= b));
            assert!(!set.is_empty());
            assert!(set.members().iter().all(|m| black(m, &g).unwrap() == b));
        }
    }

    #[test]
    fn lower_bound_games() {
        let play = play_against_adversary(cfg(3, 3), DEFAULT_MAX_STATES).unwrap();
        assert!(play.queries_used >= 3);
        let play = play_against_adversary(cfg(3, 5), DEFAULT_MAX_STATES).unwrap();
        assert!(play.queries_used >= 5);
        let play = play_against_adversary(cfg(2, 2), DEFAULT_MAX_STATES).unwrap();
        assert_eq!(play.queries_used, 2);
        assert_eq!(play.witness, vec![(1, 0), (2, 2)]);
    }

    #[test]
    fn lemma_checks() {
        let eq = cfg(4, 4);
        assert!(check_lemmas(eq, &[(1, 0), (2, 2), (3, 1), (4, 4)]).is_ok());
        assert_eq!(
            check_lemmas(eq, &[(1, 0), (2, 3)]),
            Err(CodemakerError::LemmaViolation {
                m: 2,
                answer: 3,
                rule: "b_m <= m"
            })
        );
        let gt = cfg(2, 3);
        assert!(check_lemmas(gt, &[(1, 1), (2, 1), (3, 2)]).is_ok());
        assert!(matches!(
            check_lemmas(gt, &[(1, 0), (2, 2)]),
            Err(CodemakerError::LemmaViolation { m: 2, .. })
        ));
    }

    #[test]
    fn strategy_that_stops_early_is_unresolved() {
        let config = cfg(3, 3);
        let err = verify_lower_bound_play(config, DEFAULT_MAX_STATES, |oracle, config| {
            let g = code(&[1, 2, 3], config);
            let mut t = Transcript::new(config);
            t.push_query(g.clone(), oracle.answer(&g).unwrap());
            Ok((g, t))
        })
        .unwrap_err();
        assert!(matches!(err, CodemakerError::Unresolved(_)));
    }

    #[test]
    fn capacity_limit_applies() {
        assert!(matches!(
            Adversary::new(cfg(10, 10), DEFAULT_MAX_STATES),
            Err(CodemakerError::Capacity { .. })
        ));
        assert!(matches!(
            Adversary::new(cfg(4, 8), 1000),
            Err(CodemakerError::Capacity { states: 1680, .. })
        ));
        assert!(Adversary::new(cfg(4, 8), 1680).is_ok());
    }
}
