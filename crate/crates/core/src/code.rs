//! Codes, black/white feedback, the rotation family and transcripts.
//!
//! Colors are the values `1..=k`. Positions and rotation indices are
//! zero-based in the API; external formats shift them to one-based.

use std::fmt;

use thiserror::Error;

pub type Color = u16;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CodeError {
    #[error("invalid game config n = {n}, k = {k}: need 2 <= n <= k <= {max}", max = Color::MAX)]
    Config { n: usize, k: usize },
    #[error("code has length {got}, expected {expected}")]
    Length { expected: usize, got: usize },
    #[error("color {color} at position {} is outside 1..={k}", .position + 1)]
    Range {
        position: usize,
        color: Color,
        k: usize,
    },
    #[error("duplicate color {color} at positions {} and {}", .first + 1, .second + 1)]
    Duplicate {
        color: Color,
        first: usize,
        second: usize,
    },
    #[error("rotation index {} out of range for k = {k}", .index + 1)]
    RotationIndex { index: usize, k: usize },
    #[error("open-match count is negative: answer {answer} < {fixed} fixed matches")]
    NegativeOpenMatches { answer: usize, fixed: usize },
}

/// Number of holes `n` and colors `k`, with `2 <= n <= k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct GameConfig {
    n: usize,
    k: usize,
}

impl GameConfig {
    pub fn new(n: usize, k: usize) -> Result<Self, CodeError> {
        if n < 2 || n > k || k > Color::MAX as usize {
            return Err(CodeError::Config { n, k });
        }
        Ok(Self { n, k })
    }

    pub fn permutation(n: usize) -> Result<Self, CodeError> {
        Self::new(n, n)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn is_permutation(&self) -> bool {
        self.n == self.k
    }

    /// Number of injective codes, `k! / (k - n)!`, saturating at `u64::MAX`.
    pub fn code_count(&self) -> u64 {
        ((self.k - self.n + 1)..=self.k).fold(1u64, |acc, f| acc.saturating_mul(f as u64))
    }
}

impl fmt::Display for GameConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "n={} k={}", self.n, self.k)
    }
}

/// An injective code: a sequence of pairwise distinct colors.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Code(Vec<Color>);

impl Code {
    pub fn new(colors: Vec<Color>, config: GameConfig) -> Result<Self, CodeError> {
        validate_colors(&colors, config)?;
        Ok(Self(colors))
    }

    /// Builds a code without validation. Callers guarantee injectivity.
    pub(crate) fn from_vec_unchecked(colors: Vec<Color>) -> Self {
        Self(colors)
    }

    pub fn colors(&self) -> &[Color] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn get(&self, position: usize) -> Color {
        self.0[position]
    }

    pub fn position_of(&self, color: Color) -> Option<usize> {
        self.0.iter().position(|&c| c == color)
    }

    pub fn into_vec(self) -> Vec<Color> {
        self.0
    }
}

impl fmt::Display for Code {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

/// Identified secret components; `None` marks an open position.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartialSolution(Vec<Option<Color>>);

impl PartialSolution {
    pub fn open(n: usize) -> Self {
        Self(vec![None; n])
    }

    /// Parses the external form where `0` marks an open position.
    pub fn from_external(entries: &[Color], config: GameConfig) -> Result<Self, CodeError> {
        if entries.len() != config.n {
            return Err(CodeError::Length {
                expected: config.n,
                got: entries.len(),
            });
        }
        let mut seen = vec![None; config.k + 1];
        for (position, &color) in entries.iter().enumerate() {
            if color == 0 {
                continue;
            }
            if color as usize > config.k {
                return Err(CodeError::Range {
                    position,
                    color,
                    k: config.k,
                });
            }
            if let Some(first) = seen[color as usize] {
                return Err(CodeError::Duplicate {
                    color,
                    first,
                    second: position,
                });
            }
            seen[color as usize] = Some(position);
        }
        Ok(Self(
            entries.iter().map(|&c| (c != 0).then_some(c)).collect(),
        ))
    }

    pub fn to_external(&self) -> Vec<Color> {
        self.0.iter().map(|c| c.unwrap_or(0)).collect()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn get(&self, position: usize) -> Option<Color> {
        self.0[position]
    }

    pub fn is_open(&self, position: usize) -> bool {
        self.0[position].is_none()
    }

    pub fn open_count(&self) -> usize {
        self.0.iter().filter(|c| c.is_none()).count()
    }

    pub fn open_positions(&self) -> impl Iterator<Item = usize> + '_ {
        self.0
            .iter()
            .enumerate()
            .filter(|(_, c)| c.is_none())
            .map(|(i, _)| i)
    }

    pub fn fixed_colors(&self) -> impl Iterator<Item = Color> + '_ {
        self.0.iter().flatten().copied()
    }

    pub fn contains_color(&self, color: Color) -> bool {
        self.0.contains(&Some(color))
    }

    pub(crate) fn fix(&mut self, position: usize, color: Color) {
        self.0[position] = Some(color);
    }

    pub(crate) fn unfix(&mut self, position: usize) {
        self.0[position] = None;
    }

    /// The full code, once no position is open.
    pub fn to_code(&self) -> Option<Code> {
        self.0.iter().copied().collect::<Option<Vec<_>>>().map(Code)
    }
}

impl fmt::Display for PartialSolution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            match c {
                Some(c) => write!(f, "{c}")?,
                None => f.write_str(".")?,
            }
        }
        Ok(())
    }
}

pub(crate) fn count_black(a: &[Color], b: &[Color]) -> usize {
    a.iter().zip(b).filter(|(x, y)| x == y).count()
}

/// Number of positions where `w` and `x` agree.
pub fn black(w: &Code, x: &Code) -> Result<usize, CodeError> {
    if w.len() != x.len() {
        return Err(CodeError::Length {
            expected: w.len(),
            got: x.len(),
        });
    }
    Ok(count_black(&w.0, &x.0))
}

/// Number of fixed positions of `x` that `w` reproduces.
pub fn black_partial(w: &Code, x: &PartialSolution) -> Result<usize, CodeError> {
    if w.len() != x.len() {
        return Err(CodeError::Length {
            expected: w.len(),
            got: x.len(),
        });
    }
    Ok(w.0
        .iter()
        .zip(&x.0)
        .filter(|(c, p)| Some(**c) == **p)
        .count())
}

/// Matches of `w` at open positions, given the codemaker's answer for `w`.
pub fn open_matches(total_black: usize, w: &Code, x: &PartialSolution) -> Result<usize, CodeError> {
    let fixed = black_partial(w, x)?;
    total_black
        .checked_sub(fixed)
        .ok_or(CodeError::NegativeOpenMatches {
            answer: total_black,
            fixed,
        })
}

/// Shared colors in different positions. Both codes must be injective.
pub fn white(w: &Code, x: &Code) -> Result<usize, CodeError> {
    let exact = black(w, x)?;
    let shared = w.0.iter().filter(|c| x.0.contains(c)).count();
    Ok(shared - exact)
}

pub(crate) fn rotation_color(index: usize, position: usize, k: usize) -> Color {
    ((position + k - index % k) % k + 1) as Color
}

/// The first `n` entries of `(1, 2, ..., k)` shifted right `index` times.
pub fn rotation(index: usize, config: GameConfig) -> Result<Code, CodeError> {
    if index >= config.k {
        return Err(CodeError::RotationIndex { index, k: config.k });
    }
    Ok(Code(
        (0..config.n)
            .map(|p| rotation_color(index, p, config.k))
            .collect(),
    ))
}

/// The rotation whose entry at `position` is `color`.
pub(crate) fn rotation_with(color: Color, position: usize, k: usize) -> usize {
    (position + k - (color as usize - 1)) % k
}

fn validate_colors(colors: &[Color], config: GameConfig) -> Result<(), CodeError> {
    if colors.len() != config.n {
        return Err(CodeError::Length {
            expected: config.n,
            got: colors.len(),
        });
    }
    let mut seen = vec![None; config.k + 1];
    for (position, &color) in colors.iter().enumerate() {
        if color == 0 || color as usize > config.k {
            return Err(CodeError::Range {
                position,
                color,
                k: config.k,
            });
        }
        if let Some(first) = seen[color as usize] {
            return Err(CodeError::Duplicate {
                color,
                first,
                second: position,
            });
        }
        seen[color as usize] = Some(position);
    }
    Ok(())
}

/// Checks length, color range and distinctness, reporting the first violation.
pub fn validate_code(code: &Code, config: GameConfig) -> Result<(), CodeError> {
    validate_colors(&code.0, config)
}

/// Enumerates every injective code of `config` in lexicographic order.
pub fn all_codes(config: GameConfig) -> Vec<Code> {
    let mut out = Vec::with_capacity(config.code_count().min(1 << 24) as usize);
    let mut current = Vec::with_capacity(config.n);
    let mut used = vec![false; config.k + 1];
    fn extend(
        config: GameConfig,
        current: &mut Vec<Color>,
        used: &mut [bool],
        out: &mut Vec<Code>,
    ) {
        if current.len() == config.n {
            out.push(Code(current.clone()));
            return;
        }
        for c in 1..=config.k {
            if !used[c] {
                used[c] = true;
                current.push(c as Color);
                extend(config, current, used, out);
                current.pop();
                used[c] = false;
            }
        }
    }
    extend(config, &mut current, &mut used, &mut out);
    out
}

/// One guess and its black count. Derived events were inferred, not asked.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Event {
    pub guess: Code,
    pub black: usize,
    pub derived: bool,
}

/// The ordered audit trail of one game.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Transcript {
    config: GameConfig,
    events: Vec<Event>,
}

impl Transcript {
    pub fn new(config: GameConfig) -> Self {
        Self {
            config,
            events: Vec::new(),
        }
    }

    pub fn config(&self) -> GameConfig {
        self.config
    }

    pub fn events(&self) -> &[Event] {
        &self.events
    }

    pub fn push_query(&mut self, guess: Code, black: usize) {
        debug_assert!(black <= self.config.n);
        self.events.push(Event {
            guess,
            black,
            derived: false,
        });
    }

    pub fn push_derived(&mut self, code: Code, black: usize) {
        debug_assert!(black <= self.config.n);
        self.events.push(Event {
            guess: code,
            black,
            derived: true,
        });
    }

    /// Number of guesses actually asked.
    pub fn query_count(&self) -> usize {
        self.events.iter().filter(|e| !e.derived).count()
    }

    /// Whether `candidate` reproduces every recorded count.
    pub fn is_consistent_with(&self, candidate: &Code) -> bool {
        self.events
            .iter()
            .all(|e| count_black(&e.guess.0, &candidate.0) == e.black)
    }
}
