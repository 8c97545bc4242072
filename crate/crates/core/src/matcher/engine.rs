use std::ops::ControlFlow;

use thiserror::Error;

use super::buffer::{EventBuffer, EventWindow};
use super::trial::{run_trial_with, ZoneRecord};
use crate::automata::{Pattern, SkipTables};
use crate::word::{Event, EventStream, TimedWord, WordError};

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct MatchStats {
    pub trials_run: usize,
    /// Start segments rejected by the gate check alone.
    pub trials_gate_skipped: usize,
    pub events_read: usize,
    pub zones_emitted: usize,
    pub peak_buffered: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct MatchReport {
    pub zones: Vec<ZoneRecord>,
    pub stats: MatchStats,
}

/// Receives zones while a scan is running.
pub trait MatchSink {
    fn zone(&mut self, record: &ZoneRecord) -> ControlFlow<()>;

    fn trial_started(&mut self, _start: usize) {}
}

impl MatchSink for Vec<ZoneRecord> {
    fn zone(&mut self, record: &ZoneRecord) -> ControlFlow<()> {
        self.push(*record);
        ControlFlow::Continue(())
    }
}

/// A read error in the middle of a scan. Zones found before it have already
/// been delivered to the sink.
#[derive(Debug, Error)]
#[error("{error}")]
pub struct ScanError {
    pub error: WordError,
    pub stats: MatchStats,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Algorithm {
    Brute,
    Fjs,
}

/// Scans `stream` for matches.
///
/// Without skip tables every start segment gets a trial. With them, a
/// segment is first checked against the gate, and after each trial the scan
/// jumps ahead by the larger of the two table shifts.
pub fn scan<I, S>(
    pattern: &Pattern,
    skip: Option<&SkipTables>,
    stream: EventStream<I>,
    sink: &mut S,
) -> Result<MatchStats, ScanError>
where
    I: Iterator<Item = Result<Event, WordError>>,
    S: MatchSink + ?Sized,
{
    let mut buffer = EventBuffer::new(stream);
    let mut stats = MatchStats::default();
    let outcome = scan_buffer(pattern, skip, &mut buffer, sink, &mut stats);
    stats.events_read = buffer.events_read();
    stats.peak_buffered = buffer.peak();
    match outcome {
        Ok(()) => Ok(stats),
        Err(error) => Err(ScanError { error, stats }),
    }
}

fn scan_buffer<I, S>(
    pattern: &Pattern,
    skip: Option<&SkipTables>,
    buffer: &mut EventBuffer<I>,
    sink: &mut S,
    stats: &mut MatchStats,
) -> Result<(), WordError>
where
    I: Iterator<Item = Result<Event, WordError>>,
    S: MatchSink + ?Sized,
{
    let mut i = 1;
    loop {
        buffer.release_before(i - 1)?;
        let mut shift = 1;
        if let Some(tables) = skip.filter(|t| t.n_min() > 0) {
            let Some(gate) = buffer.event(i + tables.n_min() - 1)? else {
                return Ok(());
            };
            shift = tables.delta(gate.label);
            if !tables.passes_gate(gate.label) {
                stats.trials_gate_skipped += 1;
                i += shift;
                continue;
            }
        }
        sink.trial_started(i);
        stats.trials_run += 1;
        let mut emitted = 0;
        let run = run_trial_with(pattern, buffer, i, &mut |r| {
            emitted += 1;
            sink.zone(r)
        })?;
        stats.zones_emitted += emitted;
        if run.stopped {
            return Ok(());
        }
        if buffer.event(i)?.is_none() {
            return Ok(());
        }
        if let Some(tables) = skip {
            shift = shift.max(tables.beta(run.progress));
        }
        i += shift;
    }
}

/// Runs a trial for every start segment of `w`.
pub fn match_brute(pattern: &Pattern, w: &TimedWord) -> MatchReport {
    collect(pattern, None, w)
}

/// Matches `w` with gate checks and table-driven skips.
pub fn match_fjs(pattern: &Pattern, tables: &SkipTables, w: &TimedWord) -> MatchReport {
    collect(pattern, Some(tables), w)
}

fn collect(pattern: &Pattern, skip: Option<&SkipTables>, w: &TimedWord) -> MatchReport {
    let mut zones = Vec::new();
    let stats =
        scan(pattern, skip, w.stream(), &mut zones).expect("a timed word is already validated");
    MatchReport { zones, stats }
}
