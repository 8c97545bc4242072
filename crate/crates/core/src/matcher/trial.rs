//! One matching trial: every run of the automaton whose start time `t` lies
//! in a single start segment, simulated symbolically.
//!
//! During event-based matching each clock either was reset at a known event
//! timestamp, or still measures time since `t`. A guard on a reset clock is
//! therefore decided outright when an event is read, and a guard on an
//! unreset clock bounds `t`. The only symbolic state of a run is an interval
//! of start times; duration constraints on `t' - t` appear only when the
//! match zone is closed at the end of the interval.

use std::ops::ControlFlow;

use super::buffer::EventWindow;
use crate::automata::{ClockGuard, ClockOp, Pattern};
use crate::word::{Event, WordError};
use crate::zones::{Bound, Interval, MatchZone};

/// A match zone together with the event span it was found for: the
/// restriction holds events `start..=end`, and `end == start - 1` for
/// matches that contain no event.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ZoneRecord {
    pub start: usize,
    pub end: usize,
    pub zone: MatchZone,
}

#[derive(Debug, Clone, PartialEq)]
pub struct TrialOutcome {
    pub zones: Vec<ZoneRecord>,
    /// Events consumed before the last configuration died, or before the
    /// word ended.
    pub progress: usize,
}

#[derive(Debug, Clone)]
struct Configuration {
    location: usize,
    /// `Some(τ)`: reset when the event at τ was read; `None`: never reset
    /// since `t`.
    resets: Vec<Option<f64>>,
    start: Interval,
}

#[derive(Default)]
struct ConfigSet {
    configs: Vec<Configuration>,
}

impl ConfigSet {
    /// Adds `c`, merging it into a configuration with the same location and
    /// reset times whose start interval touches its own.
    fn insert(&mut self, c: Configuration) {
        for existing in &mut self.configs {
            if existing.location == c.location
                && existing.resets == c.resets
                && existing.start.touches(&c.start)
            {
                existing.start = existing.start.hull(&c.start);
                return;
            }
        }
        self.configs.push(c);
    }
}

fn apply(interval: &mut Interval, op: ClockOp, value: f64) {
    match op {
        ClockOp::Lt => interval.tighten_upper(Bound::open(value)),
        ClockOp::Le => interval.tighten_upper(Bound::closed(value)),
        ClockOp::Gt => interval.tighten_lower(Bound::open(value)),
        ClockOp::Ge => interval.tighten_lower(Bound::closed(value)),
    }
}

/// `time - t op c` rewritten as a bound on `t`.
fn bound_start(interval: &mut Interval, guard: &ClockGuard, time: f64) {
    let pivot = time - guard.constant as f64;
    let flipped = match guard.op {
        ClockOp::Lt => ClockOp::Gt,
        ClockOp::Le => ClockOp::Ge,
        ClockOp::Gt => ClockOp::Lt,
        ClockOp::Ge => ClockOp::Le,
    };
    apply(interval, flipped, pivot);
}

fn step(pattern: &Pattern, configs: &[Configuration], event: Event) -> ConfigSet {
    let mut next = ConfigSet::default();
    for c in configs {
        for &(label, k) in pattern.event_edges(c.location) {
            if label != event.label {
                continue;
            }
            let tr = pattern.transition(k);
            let mut start = c.start;
            let mut enabled = true;
            for g in &tr.guards {
                match c.resets[g.clock] {
                    Some(r) => enabled &= g.holds(event.time - r),
                    None => bound_start(&mut start, g, event.time),
                }
            }
            if !enabled || start.is_empty() {
                continue;
            }
            let mut resets = c.resets.clone();
            for &x in &tr.resets {
                resets[x] = Some(event.time);
            }
            next.insert(Configuration {
                location: pattern.target(k),
                resets,
                start,
            });
        }
    }
    next
}

/// Zones closed by the configurations for end times in `end_segment`.
fn close(
    pattern: &Pattern,
    configs: &[Configuration],
    end_segment: Interval,
    mut emit: impl FnMut(MatchZone),
) {
    let positive = Interval::new(Bound::open(0.0), Bound::INFINITY);
    for c in configs {
        if pattern.is_accepting(c.location) {
            if let Some(z) = MatchZone::new(c.start, end_segment, positive).normalize() {
                emit(z);
            }
        }
        for &k in pattern.terminal_edges(c.location) {
            if !pattern.is_accepting(pattern.target(k)) {
                continue;
            }
            let mut end = end_segment;
            let mut diff = positive;
            for g in &pattern.transition(k).guards {
                match c.resets[g.clock] {
                    Some(r) => apply(&mut end, g.op, g.constant as f64 + r),
                    None => apply(&mut diff, g.op, g.constant as f64),
                }
            }
            if let Some(z) = MatchZone::new(c.start, end, diff).normalize() {
                emit(z);
            }
        }
    }
}

pub(crate) struct TrialRun {
    pub progress: usize,
    pub stopped: bool,
}

/// Runs the trial for start segment `start` (1-based): `t` ranges over
/// `[τ_{start-1}, τ_start)`. Each zone is handed to `sink` as soon as the
/// event closing its end segment has been read; returning
/// `ControlFlow::Break` from the sink abandons the trial.
pub(crate) fn run_trial_with(
    pattern: &Pattern,
    window: &mut impl EventWindow,
    start: usize,
    sink: &mut dyn FnMut(&ZoneRecord) -> ControlFlow<()>,
) -> Result<TrialRun, WordError> {
    let t_lo = window.time_before(start)?.max(0.0);
    let mut next = window.event(start)?;
    let t_hi = next.map_or(Bound::INFINITY, |e| Bound::open(e.time));
    let start_segment = Interval::new(Bound::closed(t_lo), t_hi);
    let mut done = TrialRun {
        progress: 0,
        stopped: false,
    };
    if start_segment.is_empty() {
        return Ok(done);
    }

    let mut configs: Vec<Configuration> = pattern
        .initial()
        .iter()
        .map(|&q| Configuration {
            location: q,
            resets: vec![None; pattern.clock_count()],
            start: start_segment,
        })
        .collect();
    let mut emitted: Vec<MatchZone> = Vec::new();
    // t' > t is enforced by the positive duration bound
    let mut end_lo = Bound::NEG_INFINITY;
    loop {
        let end_hi = next.map_or(Bound::INFINITY, |e| Bound::closed(e.time));
        let end = start + done.progress - 1;
        let mut stop = false;
        close(pattern, &configs, Interval::new(end_lo, end_hi), |z| {
            if stop || emitted.iter().any(|e| e.key() == z.key()) {
                return;
            }
            emitted.push(z);
            let record = ZoneRecord {
                start,
                end,
                zone: z,
            };
            stop = sink(&record).is_break();
        });
        if stop {
            done.stopped = true;
            return Ok(done);
        }
        let Some(event) = next else {
            return Ok(done);
        };
        configs = step(pattern, &configs, event).configs;
        if configs.is_empty() {
            return Ok(done);
        }
        done.progress += 1;
        end_lo = Bound::open(event.time);
        next = window.event(start + done.progress)?;
    }
}

/// Runs a single trial and collects its zones.
pub fn run_trial(
    pattern: &Pattern,
    window: &mut impl EventWindow,
    start: usize,
) -> Result<TrialOutcome, WordError> {
    let mut zones = Vec::new();
    let run = run_trial_with(pattern, window, start, &mut |r| {
        zones.push(*r);
        ControlFlow::Continue(())
    })?;
    Ok(TrialOutcome {
        zones,
        progress: run.progress,
    })
}
