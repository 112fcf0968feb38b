//! The adaptive codebreaker.
//!
//! Phase one guesses all but one rotation of the identity and derives the
//! last count from the fact that the rotation counts sum to `n`. Afterwards
//! every secret component is located by a binary search anchored at an
//! *active* rotation: one that still matches the secret at an open position
//! while its cyclic successor matches nowhere open. For `k = n` a fixed
//! color serves as pivot peg; for `k > n` the spare colors make the pivot
//! unnecessary. The last two components are settled by at most two guesses.

use thiserror::Error;

use crate::code::{
    open_matches, rotation, rotation_color, rotation_with, validate_code, Code, CodeError, Color,
    GameConfig, PartialSolution, Transcript,
};

/// Anything that answers guesses with a black count.
pub trait CodemakerOracle {
    fn answer(&mut self, guess: &Code) -> Result<usize, OracleFailure>;
}

impl<T: CodemakerOracle + ?Sized> CodemakerOracle for &mut T {
    fn answer(&mut self, guess: &Code) -> Result<usize, OracleFailure> {
        (**self).answer(guess)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{0}")]
pub struct OracleFailure(pub String);

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SolveError {
    #[error("solver produced an invalid guess: {0}")]
    InvalidGuess(CodeError),
    #[error("answer {answer} is outside 0..={n}")]
    AnswerOutOfRange { answer: usize, n: usize },
    #[error("codemaker failed: {0}")]
    Oracle(#[from] OracleFailure),
    #[error("answers are inconsistent after {} queries: {reason}", transcript.query_count())]
    Inconsistent {
        reason: String,
        transcript: Box<Transcript>,
    },
}

/// Why a solver step stopped early.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Halt {
    /// A guess was answered with `n`.
    Cracked(Code),
    Failed(SolveError),
}

impl From<SolveError> for Halt {
    fn from(e: SolveError) -> Self {
        Halt::Failed(e)
    }
}

pub(crate) fn ceil_log2(n: usize) -> usize {
    debug_assert!(n >= 1);
    (usize::BITS - (n - 1).leading_zeros()) as usize
}

/// Query budget of [`find_first`].
pub fn find_first_budget(n: usize) -> usize {
    2 * ceil_log2(n)
}

/// Query budget of [`find_first_uniform`].
pub fn find_first_uniform_budget(n: usize) -> usize {
    n / 2 + 1
}

/// Query budget of [`find_next`].
pub fn find_next_budget(n: usize) -> usize {
    1 + ceil_log2(n)
}

/// Query budget of [`find_next_many_colors`].
pub fn find_next_many_colors_budget(n: usize) -> usize {
    ceil_log2(n)
}

/// Everything the codebreaker knows during one game.
#[derive(Debug, Clone)]
pub struct SolverState {
    config: GameConfig,
    partial: PartialSolution,
    /// Per rotation: matches with the secret at open positions.
    open_counts: Vec<usize>,
    rotation_answers: Vec<Option<usize>>,
    transcript: Transcript,
}

impl SolverState {
    pub fn new(config: GameConfig) -> Self {
        Self {
            config,
            partial: PartialSolution::open(config.n()),
            open_counts: vec![0; config.k()],
            rotation_answers: vec![None; config.k()],
            transcript: Transcript::new(config),
        }
    }

    pub fn config(&self) -> GameConfig {
        self.config
    }

    pub fn partial(&self) -> &PartialSolution {
        &self.partial
    }

    pub fn open_counts(&self) -> &[usize] {
        &self.open_counts
    }

    /// Black count of each rotation, once phase one has run.
    pub fn rotation_answers(&self) -> Vec<Option<usize>> {
        self.rotation_answers.clone()
    }

    pub fn transcript(&self) -> &Transcript {
        &self.transcript
    }

    pub fn into_transcript(self) -> Transcript {
        self.transcript
    }

    pub fn query_count(&self) -> usize {
        self.transcript.query_count()
    }

    /// Submits `guess`, records the answer and halts if the guess is the secret.
    pub fn ask(&mut self, oracle: &mut dyn CodemakerOracle, guess: Code) -> Result<usize, Halt> {
        validate_code(&guess, self.config).map_err(SolveError::InvalidGuess)?;
        let answer = oracle.answer(&guess).map_err(SolveError::Oracle)?;
        let n = self.config.n();
        if answer > n {
            return Err(SolveError::AnswerOutOfRange { answer, n }.into());
        }
        self.transcript.push_query(guess.clone(), answer);
        if answer == n {
            return Err(Halt::Cracked(guess));
        }
        Ok(answer)
    }

    /// Asks `guess` and returns its matches at open positions.
    fn ask_open(&mut self, oracle: &mut dyn CodemakerOracle, guess: Code) -> Result<usize, Halt> {
        let answer = self.ask(oracle, guess.clone())?;
        open_matches(answer, &guess, &self.partial)
            .map_err(|e| self.inconsistent(e.to_string()).into())
    }

    /// Records that the secret has `color` at `position`.
    pub fn fix(&mut self, position: usize, color: Color) -> Result<(), SolveError> {
        if position >= self.config.n() || color == 0 || color as usize > self.config.k() {
            return Err(
                self.inconsistent(format!("cannot fix color {color} at position {position}"))
            );
        }
        if !self.partial.is_open(position) {
            return Err(self.inconsistent(format!("position {} is already fixed", position + 1)));
        }
        if self.partial.contains_color(color) {
            return Err(self.inconsistent(format!("color {color} is already fixed elsewhere")));
        }
        let j = rotation_with(color, position, self.config.k());
        if self.open_counts[j] == 0 {
            return Err(self.inconsistent(format!(
                "rotation {} has no open match left for color {color} at position {}",
                j + 1,
                position + 1
            )));
        }
        self.partial.fix(position, color);
        self.open_counts[j] -= 1;
        Ok(())
    }

    fn inconsistent(&self, reason: impl Into<String>) -> SolveError {
        SolveError::Inconsistent {
            reason: reason.into(),
            transcript: Box::new(self.transcript.clone()),
        }
    }

    fn rotation_colors(&self, j: usize) -> Vec<Color> {
        (0..self.config.n())
            .map(|p| rotation_color(j, p, self.config.k()))
            .collect()
    }
}

/// Guesses rotations `0..k-1` and derives the count of the last one.
pub fn initial_phase(
    oracle: &mut dyn CodemakerOracle,
    state: &mut SolverState,
) -> Result<(), Halt> {
    let config = state.config;
    let (n, k) = (config.n(), config.k());
    let mut total = 0;
    for j in 0..k - 1 {
        let guess = rotation(j, config).expect("index below k");
        let answer = state.ask(oracle, guess)?;
        state.rotation_answers[j] = Some(answer);
        total += answer;
    }
    let Some(last) = n.checked_sub(total) else {
        return Err(state
            .inconsistent(format!("rotation counts sum to {total} > n = {n}"))
            .into());
    };
    state.rotation_answers[k - 1] = Some(last);
    state
        .transcript
        .push_derived(rotation(k - 1, config).expect("index below k"), last);
    for (j, answer) in state.rotation_answers.iter().enumerate() {
        let answer = answer.expect("all rotations answered");
        let rot = rotation(j, config).expect("index below k");
        state.open_counts[j] = open_matches(answer, &rot, &state.partial)
            .map_err(|e| state.inconsistent(e.to_string()))?;
    }
    Ok(())
}

/// Smallest `j` with an open match whose cyclic successor `r` has none.
pub fn select_active_index(state: &SolverState) -> Result<(usize, usize), SolveError> {
    let v = &state.open_counts;
    let k = v.len();
    (0..k)
        .find(|&j| v[j] > 0 && v[(j + 1) % k] == 0)
        .map(|j| (j, (j + 1) % k))
        .ok_or_else(|| {
            let reason = if v.iter().all(|&c| c == 0) {
                "no rotation has an open match left".to_string()
            } else {
                format!("every rotation still has an open match: {v:?}")
            };
            state.inconsistent(reason)
        })
}

/// Leftmost position where rotation `j` matches the secret, for `k = n`
/// before any component is fixed.
pub fn find_first(
    oracle: &mut dyn CodemakerOracle,
    state: &mut SolverState,
    j: usize,
) -> Result<usize, Halt> {
    let config = state.config;
    let n = config.n();
    let k = config.k();
    let r = (j + 1) % k;
    if !config.is_permutation() {
        return Err(state.inconsistent("find_first requires k = n").into());
    }
    if state.rotation_answers[j].unwrap_or(0) == 0 || state.rotation_answers[r] != Some(0) {
        return Err(state
            .inconsistent(format!("rotation {} is not active", j + 1))
            .into());
    }
    let start = state.query_count();
    let active = state.rotation_colors(j);
    let successor = state.rotation_colors(r);
    let pivot = successor[0];

    // One-based search interval; the answer is always in [low, high].
    let (mut low, mut high) = (1, n);
    while high > low {
        let l = (low + high).div_ceil(2);
        // Active prefix, the pivot at l, successor suffix.
        let mut probe = Vec::with_capacity(n);
        probe.extend_from_slice(&active[..l - 1]);
        probe.push(pivot);
        probe.extend_from_slice(&successor[l..]);
        let mut s = state.ask(oracle, Code::from_vec_unchecked(probe))?;
        if s == 1 {
            // Move the pivot onto a peg known to be wrong.
            let swapped = if l < n {
                let mut v = Vec::with_capacity(n);
                v.extend_from_slice(&active[..l]);
                v.push(pivot);
                v.extend_from_slice(&successor[l + 1..]);
                v
            } else {
                // Needs position 1 of the active rotation to be wrong, which
                // low > 1 guarantees.
                if low < 2 {
                    return Err(state
                        .inconsistent("wrap-around probe issued before position 1 was excluded")
                        .into());
                }
                let mut v = active.clone();
                v.swap(0, n - 1);
                v
            };
            s = state.ask(oracle, Code::from_vec_unchecked(swapped))?;
        }
        if s > 0 {
            high = l - 1;
        } else {
            low = l;
        }
    }
    debug_assert!(state.query_count() - start <= find_first_budget(n));
    Ok(high - 1)
}

/// Position where the identity matches the secret, when every rotation
/// scores exactly one (`k = n`).
pub fn find_first_uniform(
    oracle: &mut dyn CodemakerOracle,
    state: &mut SolverState,
) -> Result<usize, Halt> {
    let n = state.config.n();
    if !state.config.is_permutation() || state.open_counts.iter().any(|&c| c != 1) {
        return Err(state
            .inconsistent("uniform search needs every rotation to score 1")
            .into());
    }
    let start = state.query_count();
    let identity = state.rotation_colors(0);
    let swapped = |a: usize, b: usize| {
        let mut v = identity.clone();
        v.swap(a, b);
        Code::from_vec_unchecked(v)
    };
    for pair in 0..n / 2 {
        let (first, second) = (2 * pair, 2 * pair + 1);
        if state.ask(oracle, swapped(first, second))? != 0 {
            continue;
        }
        // Every position outside the pair is wrong.
        let partner = if pair == 0 { 2 } else { 0 };
        if partner >= n {
            break;
        }
        let found = if state.ask(oracle, swapped(first, partner))? == 0 {
            first
        } else {
            second
        };
        debug_assert!(state.query_count() - start <= find_first_uniform_budget(n));
        return Ok(found);
    }
    if n % 2 == 1 {
        return Ok(n - 1);
    }
    Err(state
        .inconsistent("no swapped pair isolates the matching position")
        .into())
}

/// An open position where rotation `j` matches the secret (`k = n`, at
/// least one component fixed). The smallest fixed color is the pivot.
pub fn find_next(
    oracle: &mut dyn CodemakerOracle,
    state: &mut SolverState,
    j: usize,
) -> Result<usize, Halt> {
    let config = state.config;
    let (n, k) = (config.n(), config.k());
    if !config.is_permutation() {
        return Err(state.inconsistent("find_next requires k = n").into());
    }
    let r = (j + 1) % k;
    if state.open_counts[j] == 0 || state.open_counts[r] != 0 {
        return Err(state
            .inconsistent(format!("rotation {} is not active", j + 1))
            .into());
    }
    let Some(pivot) = state.partial.fixed_colors().min() else {
        return Err(state
            .inconsistent("find_next needs a fixed pivot color")
            .into());
    };
    let start = state.query_count();
    let active = state.rotation_colors(j);
    let successor = state.rotation_colors(r);
    let pivot_active = active
        .iter()
        .position(|&c| c == pivot)
        .expect("rotation is a permutation");
    let pivot_successor = successor
        .iter()
        .position(|&c| c == pivot)
        .expect("rotation is a permutation");

    let left = if pivot_active == n - 1 {
        true
    } else {
        let mut probe = Vec::with_capacity(n);
        probe.push(pivot);
        probe.extend_from_slice(&active[..pivot_active]);
        probe.extend_from_slice(&active[pivot_active + 1..]);
        state.ask_open(oracle, Code::from_vec_unchecked(probe))? == 0
    };

    // One-based interval, as the pivot positions are one-based below.
    let (lj, lr) = (pivot_active + 1, pivot_successor + 1);
    let (mut low, mut high) = if left { (1, lj) } else { (lr, n) };
    while high > low {
        let l = (low + high).div_ceil(2);
        let mut probe = Vec::with_capacity(n);
        if left {
            probe.extend_from_slice(&active[..l - 1]);
            probe.push(pivot);
            probe.extend_from_slice(&successor[l..lj]);
            probe.extend_from_slice(&active[lj..]);
        } else {
            probe.extend_from_slice(&successor[..lr - 1]);
            probe.extend_from_slice(&active[lr - 1..l - 1]);
            probe.push(pivot);
            probe.extend_from_slice(&successor[l..]);
        }
        if state.ask_open(oracle, Code::from_vec_unchecked(probe))? > 0 {
            high = l - 1;
        } else {
            low = l;
        }
    }
    debug_assert!(state.query_count() - start <= find_next_budget(n));
    let found = high - 1;
    if !state.partial.is_open(found) {
        return Err(state
            .inconsistent(format!("search ended on fixed position {}", high))
            .into());
    }
    Ok(found)
}

/// An open position where rotation `j` matches the secret (`k > n`); the
/// rightmost such position is returned.
pub fn find_next_many_colors(
    oracle: &mut dyn CodemakerOracle,
    state: &mut SolverState,
    j: usize,
) -> Result<usize, Halt> {
    let config = state.config;
    let (n, k) = (config.n(), config.k());
    if config.is_permutation() {
        return Err(state
            .inconsistent("find_next_many_colors requires k > n")
            .into());
    }
    let r = (j + 1) % k;
    if state.open_counts[j] == 0 || state.open_counts[r] != 0 {
        return Err(state
            .inconsistent(format!("rotation {} is not active", j + 1))
            .into());
    }
    let start = state.query_count();
    let active = state.rotation_colors(j);
    let successor = state.rotation_colors(r);
    let (mut low, mut high) = (1, n);
    while high > low {
        let l = (low + high).div_ceil(2);
        let mut probe = Vec::with_capacity(n);
        probe.extend_from_slice(&successor[..l - 1]);
        probe.extend_from_slice(&active[l - 1..]);
        if state.ask_open(oracle, Code::from_vec_unchecked(probe))? > 0 {
            low = l;
        } else {
            high = l - 1;
        }
    }
    debug_assert!(state.query_count() - start <= find_next_many_colors_budget(n));
    let found = low - 1;
    if !state.partial.is_open(found) {
        return Err(state
            .inconsistent(format!("search ended on fixed position {}", low))
            .into());
    }
    Ok(found)
}

/// Completions of the partial solution that respect the open counts and
/// every recorded answer, in lexicographic order.
pub fn endgame_candidates(state: &SolverState) -> Vec<Code> {
    let k = state.config.k();
    let open: Vec<usize> = state.partial.open_positions().collect();
    let mut remaining = state.open_counts.clone();
    let mut current = state.partial.clone();
    let mut out = Vec::new();

    fn assign(
        state: &SolverState,
        open: &[usize],
        remaining: &mut [usize],
        current: &mut PartialSolution,
        out: &mut Vec<Code>,
        k: usize,
    ) {
        let Some((&position, rest)) = open.split_first() else {
            if remaining.iter().all(|&c| c == 0) {
                let code = current.to_code().expect("all positions assigned");
                if state.transcript.is_consistent_with(&code) {
                    out.push(code);
                }
            }
            return;
        };
        let mut colors: Vec<(Color, usize)> = (0..k)
            .filter(|&j| remaining[j] > 0)
            .map(|j| (rotation_color(j, position, k), j))
            .filter(|&(c, _)| !current.contains_color(c))
            .collect();
        colors.sort_unstable();
        for (color, j) in colors {
            remaining[j] -= 1;
            current.fix(position, color);
            assign(state, rest, remaining, current, out, k);
            current.unfix(position);
            remaining[j] += 1;
        }
    }

    assign(state, &open, &mut remaining, &mut current, &mut out, k);
    out
}

/// Settles the last (at most two) open positions.
pub fn endgame(
    oracle: &mut dyn CodemakerOracle,
    state: &mut SolverState,
) -> Result<Code, SolveError> {
    let open = state.partial.open_count();
    if open > 2 {
        return Err(state.inconsistent(format!("endgame entered with {open} open positions")));
    }
    let candidates = endgame_candidates(state);
    match candidates.len() {
        0 => return Err(state.inconsistent("no code is consistent with the answers")),
        1 | 2 => {}
        c => {
            return Err(state.inconsistent(format!("{c} completions remain for two open positions")))
        }
    }
    for candidate in candidates {
        match state.ask(oracle, candidate) {
            Ok(_) => continue,
            Err(Halt::Cracked(code)) => return Ok(code),
            Err(Halt::Failed(e)) => return Err(e),
        }
    }
    Err(state.inconsistent("every remaining completion was rejected"))
}

fn play(oracle: &mut dyn CodemakerOracle, state: &mut SolverState) -> Result<Code, Halt> {
    initial_phase(oracle, state)?;
    if state.config.is_permutation() && state.partial.open_count() > 2 {
        let (j, position) = if state.open_counts.iter().all(|&c| c == 1) {
            (0, find_first_uniform(oracle, state)?)
        } else {
            let (j, _) = select_active_index(state)?;
            (j, find_first(oracle, state, j)?)
        };
        let color = rotation_color(j, position, state.config.k());
        state.fix(position, color)?;
    }
    while state.partial.open_count() > 2 {
        let (j, _) = select_active_index(state)?;
        let position = if state.config.is_permutation() {
            find_next(oracle, state, j)?
        } else {
            find_next_many_colors(oracle, state, j)?
        };
        let color = rotation_color(j, position, state.config.k());
        state.fix(position, color)?;
    }
    Ok(endgame(oracle, state)?)
}

/// Plays a full game and returns the secret with the game's transcript.
pub fn solve(
    oracle: &mut dyn CodemakerOracle,
    config: GameConfig,
) -> Result<(Code, Transcript), SolveError> {
    let mut state = SolverState::new(config);
    match play(oracle, &mut state) {
        Ok(code) | Err(Halt::Cracked(code)) => Ok((code, state.into_transcript())),
        Err(Halt::Failed(e)) => Err(e),
    }
}

/// Worst-case query bound of [`solve`] for `config`.
///
/// For `k = n` this is `(n-3)*ceil(log2 n) + floor((5n-2)/2)`, the integer
/// form of `(n-3)*ceil(log2 n) + 5n/2 - 1`; it is only meaningful for
/// `n >= 4`. For `k > n` it is `(n-2)*ceil(log2 n) + k + 1`.
pub fn query_bound(config: GameConfig) -> usize {
    let (n, k) = (config.n(), config.k());
    let log = ceil_log2(n);
    if config.is_permutation() {
        (n.saturating_sub(3)) * log + (5 * n - 2) / 2
    } else {
        (n - 2) * log + k + 1
    }
}

/// Whether [`query_bound`] is a claim for `config`.
pub fn bound_enforced(config: GameConfig) -> bool {
    !config.is_permutation() || config.n() >= 4
}
