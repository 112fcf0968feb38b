//! Exact optimal worst-case query count for permutation games.
//!
//! A state is the set of secrets still consistent with the answers, stored
//! as a bitmask over the lexicographic list of permutations (at most 120
//! for `n = 5`, so a `u128` suffices). Any permutation may be guessed; the
//! answer splits the state, and guessing the secret itself ends the game.

use std::collections::HashMap;

use crate::code::{all_codes, count_black, GameConfig};
use crate::codemaker::CodemakerError;

pub const MINIMAX_MAX_N: usize = 4;
pub const MINIMAX_MAX_N_EXTENDED: usize = 5;

struct Search {
    n: usize,
    /// `scores[g * count + s]`: black count of guess `g` against secret `s`.
    scores: Vec<u8>,
    count: usize,
    memo: HashMap<u128, u32>,
}

impl Search {
    fn new(config: GameConfig) -> Self {
        let perms = all_codes(config);
        let count = perms.len();
        let mut scores = Vec::with_capacity(count * count);
        for g in &perms {
            for s in &perms {
                scores.push(count_black(g.colors(), s.colors()) as u8);
            }
        }
        Self {
            n: config.n(),
            scores,
            count,
            memo: HashMap::new(),
        }
    }

    fn split(&self, guess: usize, set: u128) -> Vec<u128> {
        let mut parts = vec![0u128; self.n + 1];
        let mut rest = set;
        while rest != 0 {
            let s = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            parts[self.scores[guess * self.count + s] as usize] |= 1 << s;
        }
        parts
    }

    fn value(&mut self, set: u128) -> u32 {
        if set.count_ones() == 1 {
            return 1;
        }
        if let Some(&v) = self.memo.get(&set) {
            return v;
        }
        // Guessing members one at a time always works.
        let mut best = set.count_ones();
        for guess in 0..self.count {
            let parts = self.split(guess, set);
            let useful = parts[..self.n].iter().filter(|&&p| p != 0).count()
                + usize::from(parts[self.n] != 0);
            if useful < 2 && parts[self.n] == 0 {
                continue;
            }
            let mut worst = 0;
            for &part in &parts[..self.n] {
                if part == 0 {
                    continue;
                }
                worst = worst.max(self.value(part));
                if 1 + worst >= best {
                    break;
                }
            }
            best = best.min(1 + worst);
            if best == 2 {
                break;
            }
        }
        self.memo.insert(set, best);
        best
    }
}

fn full_set(count: usize) -> u128 {
    if count == 128 {
        u128::MAX
    } else {
        (1u128 << count) - 1
    }
}

fn check_config(config: GameConfig, allow_extended: bool) -> Result<(), CodemakerError> {
    let limit = if allow_extended {
        MINIMAX_MAX_N_EXTENDED
    } else {
        MINIMAX_MAX_N
    };
    if !config.is_permutation() {
        return Err(CodemakerError::Precondition(
            "minimax search supports k = n only".into(),
        ));
    }
    if config.n() > limit {
        return Err(CodemakerError::Capacity {
            config,
            states: config.code_count(),
            limit: all_perms(limit),
        });
    }
    Ok(())
}

fn all_perms(n: usize) -> u64 {
    (1..=n as u64).product()
}

/// Optimal worst-case number of queries, counting the final correct guess.
/// `n <= 4`, or `n = 5` with `allow_extended`.
pub fn minimax_value(config: GameConfig, allow_extended: bool) -> Result<usize, CodemakerError> {
    check_config(config, allow_extended)?;
    let mut search = Search::new(config);
    let all = full_set(search.count);
    Ok(search.value(all) as usize)
}

/// Plain recursion without memo or pruning, for cross-checking on `n <= 3`.
pub fn minimax_value_naive(config: GameConfig) -> Result<usize, CodemakerError> {
    if !config.is_permutation() || config.n() > 3 {
        return Err(CodemakerError::Precondition(
            "naive minimax supports k = n <= 3".into(),
        ));
    }
    let search = Search::new(config);

    fn value(search: &Search, set: u128, depth: u32) -> u32 {
        if set.count_ones() == 1 {
            return 1;
        }
        // Guards against guesses that never split the state.
        if depth > 8 {
            return u32::MAX / 2;
        }
        (0..search.count)
            .map(|g| {
                let parts = search.split(g, set);
                1 + parts[..search.n]
                    .iter()
                    .filter(|&&p| p != 0)
                    .map(|&p| value(search, p, depth + 1))
                    .max()
                    .unwrap_or(0)
            })
            .min()
            .expect("at least one guess")
    }

    Ok(value(&search, full_set(search.count), 0) as usize)
}
