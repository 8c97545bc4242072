//! Timing of the gear pattern on generated logs.

use std::time::{Duration, Instant};

use super::gear::{generate_gear_word, GearError, GearGenConfig, GEAR_TRE};
use crate::automata::{Pattern, SkipTables};
use crate::matcher::{scan, Algorithm, MatchStats};
use crate::word::TimedWord;

#[derive(Debug, Clone, PartialEq)]
pub struct BenchRow {
    pub events: usize,
    pub algorithm: Algorithm,
    /// Median over the runs of the time per scan.
    pub time: Duration,
    pub stats: MatchStats,
}

/// Scans `w` `repeats` times and returns the mean time per scan.
pub fn time_scan(
    pattern: &Pattern,
    tables: Option<&SkipTables>,
    w: &TimedWord,
    repeats: usize,
) -> (Duration, MatchStats) {
    let repeats = repeats.max(1);
    let mut stats = MatchStats::default();
    let start = Instant::now();
    for _ in 0..repeats {
        let mut zones = Vec::new();
        stats = scan(pattern, tables, w.stream(), &mut zones).expect("generated words are valid");
    }
    (start.elapsed() / repeats as u32, stats)
}

pub fn median(mut samples: Vec<Duration>) -> Duration {
    samples.sort();
    samples[samples.len() / 2]
}

/// Times both algorithms on gear logs of each size. Each of the `runs`
/// measurements averages `repeats` scans.
pub fn gear_series(
    sizes: &[usize],
    seed: u64,
    runs: usize,
    repeats: usize,
) -> Result<Vec<BenchRow>, GearError> {
    let pattern = Pattern::from_tre(GEAR_TRE).expect("gear pattern compiles");
    let tables = pattern.skip_tables().expect("gear pattern is satisfiable");
    let mut rows = Vec::new();
    for &count in sizes {
        let w = generate_gear_word(GearGenConfig {
            count,
            seed,
            gap: 1.0,
        })?;
        for algorithm in [Algorithm::Fjs, Algorithm::Brute] {
            let skip = (algorithm == Algorithm::Fjs).then_some(&tables);
            let mut samples = Vec::new();
            let mut stats = MatchStats::default();
            for _ in 0..runs.max(1) {
                let (t, s) = time_scan(&pattern, skip, &w, repeats);
                samples.push(t);
                stats = s;
            }
            rows.push(BenchRow {
                events: count,
                algorithm,
                time: median(samples),
                stats,
            });
        }
    }
    Ok(rows)
}
