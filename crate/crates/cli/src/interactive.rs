//! A human codemaker on a text stream.

use std::io::{BufRead, Write};

use permmind::codemaker::FeasibleSet;
use permmind::{Code, CodemakerOracle, GameConfig, OracleFailure};

pub struct HumanCodemaker<R, W> {
    input: R,
    output: W,
    n: usize,
    asked: usize,
    /// Every code consistent with the answers so far, when small enough to
    /// enumerate.
    feasible: Option<FeasibleSet>,
    contradiction: Option<String>,
}

impl<R: BufRead, W: Write> HumanCodemaker<R, W> {
    pub fn new(config: GameConfig, max_states: u64, input: R, output: W) -> Self {
        Self {
            input,
            output,
            n: config.n(),
            asked: 0,
            feasible: FeasibleSet::new(config, max_states).ok(),
            contradiction: None,
        }
    }

    pub fn tracks_feasible_set(&self) -> bool {
        self.feasible.is_some()
    }

    /// Why the answers were rejected, if they were.
    pub fn contradiction(&self) -> Option<&str> {
        self.contradiction.as_deref()
    }

    pub fn output(&mut self) -> &mut W {
        &mut self.output
    }

    fn read_answer(&mut self) -> Result<usize, OracleFailure> {
        let io = |e: std::io::Error| OracleFailure(e.to_string());
        loop {
            write!(self.output, "black? ").map_err(io)?;
            self.output.flush().map_err(io)?;
            let mut line = String::new();
            if self.input.read_line(&mut line).map_err(io)? == 0 {
                return Err(OracleFailure("input closed before the game ended".into()));
            }
            match line.trim().parse::<usize>() {
                Ok(b) if b <= self.n => return Ok(b),
                _ => writeln!(self.output, "enter a whole number from 0 to {}", self.n)
                    .map_err(io)?,
            }
        }
    }
}

impl<R: BufRead, W: Write> CodemakerOracle for HumanCodemaker<R, W> {
    fn answer(&mut self, guess: &Code) -> Result<usize, OracleFailure> {
        self.asked += 1;
        writeln!(self.output, "guess {}: {guess}", self.asked)
            .map_err(|e| OracleFailure(e.to_string()))?;
        let b = self.read_answer()?;
        if let Some(feasible) = &mut self.feasible {
            feasible.restrict(guess, b);
            if feasible.is_empty() {
                let reason = format!(
                    "no secret agrees with every answer once guess {} scores {b}",
                    self.asked
                );
                self.contradiction = Some(reason.clone());
                return Err(OracleFailure(reason));
            }
        }
        Ok(b)
    }
}
