//! Transcript files and run statistics.

use std::collections::BTreeMap;
use std::io::Write;

use num_rational::Ratio;
use permmind::codebreaker::{bound_enforced, query_bound};
use permmind::oracle::VerificationReport;
use permmind::{Code, CodeError, Color, GameConfig, Transcript};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EventRecord {
    pub guess: Vec<Color>,
    pub black: usize,
    pub derived: bool,
}

/// On-disk form of a game: colors are one-based, `derived` marks counts
/// inferred from the rotation sum instead of asked.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TranscriptFile {
    pub n: usize,
    pub k: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub secret: Option<Vec<Color>>,
    pub events: Vec<EventRecord>,
    pub queries: usize,
    pub bound: usize,
}

impl TranscriptFile {
    pub fn new(transcript: &Transcript, secret: Option<&Code>) -> Self {
        let config = transcript.config();
        Self {
            n: config.n(),
            k: config.k(),
            secret: secret.map(|s| s.colors().to_vec()),
            events: transcript
                .events()
                .iter()
                .map(|e| EventRecord {
                    guess: e.guess.colors().to_vec(),
                    black: e.black,
                    derived: e.derived,
                })
                .collect(),
            queries: transcript.query_count(),
            bound: query_bound(config),
        }
    }

    /// Rebuilds the transcript, validating every code.
    pub fn to_transcript(&self) -> Result<(Transcript, Option<Code>), CodeError> {
        let config = GameConfig::new(self.n, self.k)?;
        let mut transcript = Transcript::new(config);
        for e in &self.events {
            let guess = Code::new(e.guess.clone(), config)?;
            if e.derived {
                transcript.push_derived(guess, e.black);
            } else {
                transcript.push_query(guess, e.black);
            }
        }
        let secret = self
            .secret
            .clone()
            .map(|s| Code::new(s, config))
            .transpose()?;
        Ok((transcript, secret))
    }
}

/// Query statistics over a batch of games.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunStats {
    pub config: GameConfig,
    pub samples: u64,
    /// `None` for exhaustive runs.
    pub seed: Option<u64>,
    pub max_queries: usize,
    pub mean_queries: Ratio<u64>,
    pub histogram: BTreeMap<usize, u64>,
    pub bound: usize,
    pub failures: Vec<String>,
}

pub const CSV_HEADER: [&str; 8] = [
    "n",
    "k",
    "samples",
    "seed",
    "max_queries",
    "mean_queries",
    "bound",
    "bound_ok",
];

impl RunStats {
    /// Builds stats from per-game query counts in any order.
    pub fn from_counts(
        config: GameConfig,
        seed: Option<u64>,
        counts: &[usize],
        failures: Vec<String>,
    ) -> Self {
        let mut histogram = BTreeMap::new();
        for &q in counts {
            *histogram.entry(q).or_insert(0u64) += 1;
        }
        let total: u64 = counts.iter().map(|&q| q as u64).sum();
        let samples = counts.len() as u64 + failures.len() as u64;
        Self {
            config,
            samples,
            seed,
            max_queries: histogram.keys().next_back().copied().unwrap_or(0),
            mean_queries: if counts.is_empty() {
                Ratio::from_integer(0)
            } else {
                Ratio::new(total, counts.len() as u64)
            },
            histogram,
            bound: query_bound(config),
            failures,
        }
    }

    pub fn from_report(report: &VerificationReport) -> Self {
        Self {
            config: report.config,
            samples: report.secrets_tested,
            seed: None,
            max_queries: report.max_queries,
            mean_queries: report.mean_queries,
            histogram: report.histogram.clone(),
            bound: report.bound,
            failures: report
                .failures
                .iter()
                .map(|f| format!("{}: {}", f.secret, f.reason))
                .collect(),
        }
    }

    pub fn bound_ok(&self) -> bool {
        self.max_queries <= self.bound
    }

    pub fn bound_enforced(&self) -> bool {
        bound_enforced(self.config)
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty() && (self.bound_ok() || !self.bound_enforced())
    }

    pub fn write_csv(&self, w: impl Write) -> csv::Result<()> {
        let mut writer = csv::Writer::from_writer(w);
        writer.write_record(CSV_HEADER)?;
        writer.write_record([
            self.config.n().to_string(),
            self.config.k().to_string(),
            self.samples.to_string(),
            self.seed.map(|s| s.to_string()).unwrap_or_default(),
            self.max_queries.to_string(),
            self.mean_queries.to_string(),
            self.bound.to_string(),
            self.bound_ok().to_string(),
        ])?;
        writer.flush()?;
        Ok(())
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "n": self.config.n(),
            "k": self.config.k(),
            "samples": self.samples,
            "seed": self.seed,
            "max_queries": self.max_queries,
            "mean_queries": self.mean_queries.to_string(),
            "histogram": self.histogram,
            "bound": self.bound,
            "bound_ok": self.bound_ok(),
            "failures": self.failures,
        })
    }

    pub fn write_summary(&self, mut w: impl Write) -> std::io::Result<()> {
        writeln!(
            w,
            "{}: {} games, {} failed",
            self.config,
            self.samples,
            self.failures.len()
        )?;
        writeln!(
            w,
            "max queries {}, mean {}",
            self.max_queries, self.mean_queries
        )?;
        let note = if self.bound_enforced() {
            ""
        } else {
            " (not enforced)"
        };
        let verdict = if self.bound_ok() { "ok" } else { "EXCEEDED" };
        writeln!(w, "bound {}{note}: {verdict}", self.bound)?;
        let buckets: Vec<String> = self
            .histogram
            .iter()
            .map(|(q, c)| format!("{q}:{c}"))
            .collect();
        writeln!(w, "histogram {}", buckets.join(" "))?;
        for f in self.failures.iter().take(10) {
            writeln!(w, "failed {f}")?;
        }
        Ok(())
    }
}
