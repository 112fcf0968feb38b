use std::fs::File;
use std::io::{self, BufRead, BufWriter, Write};
use std::path::Path;

use permmind::codemaker::play_against_adversary;
use permmind::oracle::{check_transcript, exhaustive_verify, minimax_value};
use permmind::{
    query_bound, solve, Code, CodemakerError, Color, GameConfig, SolveError, StaticCodemaker,
};
use rayon::prelude::*;

use crate::interactive::HumanCodemaker;
use crate::report::{RunStats, TranscriptFile};
use crate::secrets::seeded_secrets;
use crate::{
    AdversaryArgs, BenchArgs, ExhaustiveArgs, GameArgs, InteractiveArgs, MinimaxArgs, SolveArgs,
    Status,
};

fn config(game: &GameArgs, err: &mut dyn Write) -> io::Result<Result<GameConfig, Status>> {
    match GameConfig::new(game.n, game.k.unwrap_or(game.n)) {
        Ok(c) => Ok(Ok(c)),
        Err(e) => {
            writeln!(err, "error: {e}")?;
            Ok(Err(Status::Usage))
        }
    }
}

macro_rules! config_or_return {
    ($game:expr, $err:expr) => {
        match config($game, $err)? {
            Ok(c) => c,
            Err(status) => return Ok(status),
        }
    };
}

fn parse_secret(text: &str, config: GameConfig) -> Result<Code, String> {
    let colors = text
        .split(',')
        .map(|s| {
            s.trim()
                .parse::<Color>()
                .map_err(|_| format!("'{}' is not a color", s.trim()))
        })
        .collect::<Result<Vec<_>, _>>()?;
    Code::new(colors, config).map_err(|e| e.to_string())
}

fn write_json(path: &Path, value: &impl serde::Serialize) -> io::Result<()> {
    let mut w = BufWriter::new(File::create(path)?);
    serde_json::to_writer_pretty(&mut w, value)?;
    writeln!(w)?;
    w.flush()
}

fn emit_csv(stats: &RunStats, path: Option<&Path>, out: &mut dyn Write) -> io::Result<()> {
    match path {
        Some(p) => stats.write_csv(File::create(p)?)?,
        None => {
            writeln!(out)?;
            stats.write_csv(&mut *out)?;
        }
    }
    Ok(())
}

pub fn cmd_solve(args: &SolveArgs, out: &mut dyn Write, err: &mut dyn Write) -> io::Result<Status> {
    let config = config_or_return!(&args.game, err);
    let secret = match parse_secret(&args.secret, config) {
        Ok(s) => s,
        Err(e) => {
            writeln!(err, "error: invalid secret: {e}")?;
            return Ok(Status::Usage);
        }
    };
    let (found, transcript) = match solve(&mut StaticCodemaker::new(secret.clone()), config) {
        Ok(r) => r,
        Err(e) => {
            writeln!(err, "error: {e}")?;
            return Ok(Status::Verification);
        }
    };
    if let Some(path) = &args.transcript {
        write_json(path, &TranscriptFile::new(&transcript, Some(&secret)))?;
    }
    let queries = transcript.query_count();
    let bound = query_bound(config);
    writeln!(out, "secret    {secret}")?;
    writeln!(out, "recovered {found}")?;
    writeln!(out, "queries   {queries}")?;
    writeln!(out, "bound     {bound}")?;
    if found != secret {
        writeln!(err, "error: recovered code differs from the secret")?;
        return Ok(Status::Verification);
    }
    if let Err(v) = check_transcript(&transcript, &secret) {
        writeln!(err, "error: transcript check failed at {v}")?;
        return Ok(Status::Verification);
    }
    if queries > bound && permmind::codebreaker::bound_enforced(config) {
        writeln!(err, "error: {queries} queries exceed the bound {bound}")?;
        return Ok(Status::Verification);
    }
    Ok(Status::Success)
}

fn capacity_status(e: &CodemakerError, err: &mut dyn Write) -> io::Result<Status> {
    writeln!(err, "error: {e}")?;
    Ok(match e {
        CodemakerError::Capacity { .. }
        | CodemakerError::Precondition(_)
        | CodemakerError::Code(_) => Status::Usage,
        CodemakerError::LemmaViolation { .. } => Status::Falsified,
        _ => Status::Verification,
    })
}

pub fn cmd_exhaustive(
    args: &ExhaustiveArgs,
    max_states: u64,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> io::Result<Status> {
    let config = config_or_return!(&args.game, err);
    let report = match exhaustive_verify(config, max_states) {
        Ok(r) => r,
        Err(e) => return capacity_status(&e, err),
    };
    let stats = RunStats::from_report(&report);
    stats.write_summary(&mut *out)?;
    emit_csv(&stats, args.csv.as_deref(), out)?;
    Ok(if report.passed() {
        Status::Success
    } else {
        Status::Verification
    })
}

pub fn cmd_adversary(
    args: &AdversaryArgs,
    max_states: u64,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> io::Result<Status> {
    let config = config_or_return!(&args.game, err);
    let play = match play_against_adversary(config, max_states) {
        Ok(p) => p,
        Err(e) => return capacity_status(&e, err),
    };
    let needed = if config.is_permutation() {
        config.n()
    } else {
        config.k()
    };
    writeln!(
        out,
        "{config}: secret {} after {} queries (lower bound {needed})",
        play.secret, play.queries_used
    )?;
    writeln!(out, "m b_m")?;
    for (m, b) in &play.witness {
        writeln!(out, "{m} {b}")?;
    }
    if play.queries_used < needed {
        writeln!(
            err,
            "error: only {} queries against the adversary",
            play.queries_used
        )?;
        return Ok(Status::Verification);
    }
    Ok(Status::Success)
}

/// Solves every seeded secret in parallel; results come back in draw order.
pub fn bench_stats(config: GameConfig, samples: usize, seed: u64) -> RunStats {
    let secrets = seeded_secrets(config, samples, seed);
    let outcomes: Vec<Result<usize, String>> = secrets
        .par_iter()
        .map(|secret| {
            let (found, transcript) = solve(&mut StaticCodemaker::new(secret.clone()), config)
                .map_err(|e| format!("{secret}: {e}"))?;
            if found != *secret {
                return Err(format!("{secret}: recovered {found}"));
            }
            check_transcript(&transcript, secret).map_err(|v| format!("{secret}: {v}"))?;
            Ok(transcript.query_count())
        })
        .collect();
    let (counts, failures): (Vec<_>, Vec<_>) = outcomes.into_iter().partition(Result::is_ok);
    RunStats::from_counts(
        config,
        Some(seed),
        &counts.into_iter().map(Result::unwrap).collect::<Vec<_>>(),
        failures.into_iter().map(Result::unwrap_err).collect(),
    )
}

pub fn cmd_bench(args: &BenchArgs, out: &mut dyn Write, err: &mut dyn Write) -> io::Result<Status> {
    let config = config_or_return!(&args.game, err);
    if args.samples == 0 {
        writeln!(err, "error: --samples must be at least 1")?;
        return Ok(Status::Usage);
    }
    let stats = bench_stats(config, args.samples, args.seed);
    stats.write_summary(&mut *out)?;
    emit_csv(&stats, args.csv.as_deref(), out)?;
    if let Some(path) = &args.json {
        write_json(path, &stats.to_json())?;
    }
    Ok(if stats.passed() {
        Status::Success
    } else {
        Status::Verification
    })
}

pub fn cmd_interactive(
    args: &InteractiveArgs,
    max_states: u64,
    input: &mut dyn BufRead,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> io::Result<Status> {
    let config = config_or_return!(&args.game, err);
    writeln!(
        out,
        "Think of {} distinct colors from 1 to {}, one per position.",
        config.n(),
        config.k()
    )?;
    writeln!(
        out,
        "Answer each guess with how many positions it gets exactly right."
    )?;
    let mut human = HumanCodemaker::new(config, max_states, input, &mut *out);
    if !human.tracks_feasible_set() {
        writeln!(
            human.output(),
            "(too many codes to cross-check answers as you go)"
        )?;
    }
    match solve(&mut human, config) {
        Ok((secret, transcript)) => {
            writeln!(
                out,
                "your secret is {secret} ({} queries)",
                transcript.query_count()
            )?;
            Ok(Status::Success)
        }
        Err(e) => {
            let reason = match (&e, human.contradiction()) {
                (_, Some(c)) => c.to_string(),
                (SolveError::Inconsistent { reason, .. }, None) => {
                    format!("the answers contradict each other: {reason}")
                }
                _ => e.to_string(),
            };
            writeln!(err, "game aborted: {reason}")?;
            Ok(Status::Usage)
        }
    }
}

pub fn cmd_minimax(
    args: &MinimaxArgs,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> io::Result<Status> {
    let config = match GameConfig::permutation(args.n) {
        Ok(c) => c,
        Err(e) => {
            writeln!(err, "error: {e}")?;
            return Ok(Status::Usage);
        }
    };
    match minimax_value(config, args.extended) {
        Ok(v) => {
            writeln!(out, "{config}: optimal worst case {v} queries")?;
            Ok(Status::Success)
        }
        Err(e) => capacity_status(&e, err),
    }
}
