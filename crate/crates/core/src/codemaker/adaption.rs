//! Secret-code adaption: given the adversary's current secret and the
//! queries so far, build another secret that scores the same on every
//! earlier query but strictly lower on the current one.
//!
//! The new secret replaces colors along a chain of positions. Each chain
//! position `i` receives a color from `C_i`, the colors that neither the
//! current secret nor any query holds at `i`, so no earlier query gains a
//! match there.

use std::collections::BTreeSet;

use crate::code::{count_black, validate_code, Code, Color, GameConfig};

use super::CodemakerError;

/// Current secret and the queries answered against it (last = current).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AdaptionInstance {
    config: GameConfig,
    current_secret: Code,
    queries: Vec<Code>,
}

impl AdaptionInstance {
    pub fn new(
        config: GameConfig,
        current_secret: Code,
        queries: Vec<Code>,
    ) -> Result<Self, CodemakerError> {
        validate_code(&current_secret, config)?;
        for q in &queries {
            validate_code(q, config)?;
        }
        if queries.is_empty() {
            return Err(CodemakerError::Precondition(
                "at least one query is required".into(),
            ));
        }
        Ok(Self {
            config,
            current_secret,
            queries,
        })
    }

    pub fn config(&self) -> GameConfig {
        self.config
    }

    pub fn current_secret(&self) -> &Code {
        &self.current_secret
    }

    pub fn queries(&self) -> &[Code] {
        &self.queries
    }

    pub fn current_query(&self) -> &Code {
        self.queries.last().expect("non-empty by construction")
    }

    /// Colors placed identically in the current query and the secret.
    pub fn agreeing_colors(&self) -> BTreeSet<Color> {
        let q = self.current_query();
        (0..self.config.n())
            .filter(|&i| q.get(i) == self.current_secret.get(i))
            .map(|i| q.get(i))
            .collect()
    }

    /// Colors absent from `position` in every query and in the secret.
    pub fn free_colors(&self, position: usize) -> BTreeSet<Color> {
        (1..=self.config.k() as Color)
            .filter(|&c| c != self.current_secret.get(position))
            .filter(|&c| self.queries.iter().all(|q| q.get(position) != c))
            .collect()
    }
}

fn pick(
    choose: &mut impl FnMut(usize, &[Color]) -> Color,
    position: usize,
    candidates: &BTreeSet<Color>,
) -> Result<Color, CodemakerError> {
    if candidates.is_empty() {
        return Err(CodemakerError::Precondition(format!(
            "no replacement color is available at position {}",
            position + 1
        )));
    }
    let list: Vec<Color> = candidates.iter().copied().collect();
    let c = choose(position, &list);
    if !candidates.contains(&c) {
        return Err(CodemakerError::Precondition(format!(
            "chosen color {c} is not a candidate"
        )));
    }
    Ok(c)
}

fn smallest(_: usize, candidates: &[Color]) -> Color {
    candidates[0]
}

fn apply_chain(secret: &Code, positions: &[usize], colors: &[Color], from: usize) -> Code {
    let mut z = secret.colors().to_vec();
    for l in from..positions.len() {
        z[positions[l]] = colors[l];
    }
    Code::from_vec_unchecked(z)
}

/// Adaption for `k = n` with smallest-first choices.
pub fn adapt_secret_eq(inst: &AdaptionInstance) -> Result<Code, CodemakerError> {
    adapt_secret_eq_with(inst, smallest)
}

/// Adaption for `k = n`. Replacement colors are drawn from the agreeing
/// colors, so the chain stays on agreeing positions and closes into a cycle;
/// `choose` picks one color out of the sorted candidates at each step.
pub fn adapt_secret_eq_with(
    inst: &AdaptionInstance,
    mut choose: impl FnMut(usize, &[Color]) -> Color,
) -> Result<Code, CodemakerError> {
    if !inst.config.is_permutation() {
        return Err(CodemakerError::Precondition(
            "adapt_secret_eq needs k = n".into(),
        ));
    }
    let y = &inst.current_secret;
    let agreeing = inst.agreeing_colors();
    let Some(first) = (0..inst.config.n()).find(|&i| inst.current_query().get(i) == y.get(i))
    else {
        return Err(CodemakerError::Precondition(
            "the current query matches the secret nowhere".into(),
        ));
    };
    let candidates = |i: usize| -> BTreeSet<Color> {
        inst.free_colors(i)
            .intersection(&agreeing)
            .copied()
            .collect()
    };

    let mut positions = vec![first];
    let mut colors = vec![pick(&mut choose, first, &candidates(first))?];
    let mut used = BTreeSet::new();
    loop {
        let last = *colors.last().expect("chain is non-empty");
        if used.contains(&last) {
            break;
        }
        used.insert(y.get(*positions.last().expect("chain is non-empty")));
        let next = y
            .position_of(last)
            .expect("agreeing colors occur in the secret");
        positions.push(next);
        colors.push(pick(&mut choose, next, &candidates(next))?);
    }
    let closing = *colors.last().expect("chain is non-empty");
    let start = positions
        .iter()
        .position(|&i| y.get(i) == closing)
        .expect("closing color was collected from the chain");
    Ok(apply_chain(y, &positions, &colors, start))
}

/// Adaption for `k > n` with smallest-first choices.
pub fn adapt_secret_gt(inst: &AdaptionInstance) -> Result<Code, CodemakerError> {
    adapt_secret_gt_with(inst, smallest)
}

/// Adaption for `k > n`. The chain starts at position 1 when the secret and
/// current query agree there, otherwise at the first agreeing position. It
/// ends either by closing a cycle or by reaching a color the secret does not
/// use.
pub fn adapt_secret_gt_with(
    inst: &AdaptionInstance,
    mut choose: impl FnMut(usize, &[Color]) -> Color,
) -> Result<Code, CodemakerError> {
    if inst.config.is_permutation() {
        return Err(CodemakerError::Precondition(
            "adapt_secret_gt needs k > n".into(),
        ));
    }
    let y = &inst.current_secret;
    let Some(first) = (0..inst.config.n()).find(|&i| inst.current_query().get(i) == y.get(i))
    else {
        return Err(CodemakerError::Precondition(
            "the current query matches the secret nowhere".into(),
        ));
    };
    let unused: BTreeSet<Color> = (1..=inst.config.k() as Color)
        .filter(|c| !y.colors().contains(c))
        .collect();

    let mut positions = vec![first];
    let mut colors = vec![pick(&mut choose, first, &inst.free_colors(first))?];
    let mut used = BTreeSet::new();
    loop {
        let last = *colors.last().expect("chain is non-empty");
        if used.contains(&last) || unused.contains(&last) {
            break;
        }
        used.insert(y.get(*positions.last().expect("chain is non-empty")));
        let next = y.position_of(last).expect("color is used by the secret");
        positions.push(next);
        colors.push(pick(&mut choose, next, &inst.free_colors(next))?);
    }
    let closing = *colors.last().expect("chain is non-empty");
    let start = if unused.contains(&closing) {
        0
    } else {
        positions
            .iter()
            .position(|&i| y.get(i) == closing)
            .expect("closing color was collected from the chain")
    };
    let z = apply_chain(y, &positions, &colors, start);
    debug_assert!(
        count_black(z.colors(), inst.current_query().colors())
            < count_black(y.colors(), inst.current_query().colors())
    );
    Ok(z)
}
