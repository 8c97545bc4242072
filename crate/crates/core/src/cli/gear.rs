//! Synthetic gearbox logs over the labels `1`..`4` (gear engaged), `H` and
//! `L` (engine speed high or low).

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Exp};
use thiserror::Error;

use crate::word::{Event, Label, TimedWord};

/// An upshift sequence with one high-speed reading, followed by a cruise
/// phase that lasts longer than one time unit.
pub const GEAR_TRE: &str = "(1234H|123H4|12H34|1H234|H1234)%(0,10)(3|4|L|H)+%(1,1000)";

const GRID: f64 = 0.125;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GearGenConfig {
    pub count: usize,
    pub seed: u64,
    /// Mean gap between consecutive events.
    pub gap: f64,
}

impl Default for GearGenConfig {
    fn default() -> Self {
        GearGenConfig {
            count: 1000,
            seed: 0,
            gap: 1.0,
        }
    }
}

#[derive(Debug, Error, PartialEq)]
pub enum GearError {
    #[error("event count must be at least 1")]
    ZeroCount,
    #[error("mean gap must be positive and finite, got {0}")]
    BadGap(f64),
}

/// The endless event sequence behind [`generate_gear_word`]. Every word it
/// produces for a seed is a prefix of the longer ones.
pub struct GearEvents {
    rng: ChaCha8Rng,
    gaps: Exp<f64>,
    time: f64,
    pending: Vec<char>,
}

impl GearEvents {
    pub fn new(seed: u64, gap: f64) -> Result<GearEvents, GearError> {
        if !(gap > 0.0 && gap.is_finite()) {
            return Err(GearError::BadGap(gap));
        }
        Ok(GearEvents {
            rng: ChaCha8Rng::seed_from_u64(seed),
            gaps: Exp::new(1.0 / gap).map_err(|_| GearError::BadGap(gap))?,
            time: 0.0,
            pending: Vec::new(),
        })
    }

    /// Labels of one drive cycle, in reverse order.
    fn cycle(&mut self) -> Vec<char> {
        let rng = &mut self.rng;
        let mut labels = Vec::new();
        if rng.random_bool(0.5) {
            labels.push('2');
        }
        let mut upshift = vec!['1', '2', '3', '4'];
        let speed = match rng.random_range(0..10) {
            0..6 => Some('H'),
            6..8 => Some('L'),
            _ => None,
        };
        if let Some(s) = speed {
            upshift.insert(rng.random_range(0..=4), s);
        }
        labels.extend(upshift);
        for _ in 0..rng.random_range(1..=8) {
            labels.push(match rng.random_range(0..10) {
                0..6 => 'L',
                6 => 'H',
                7 => '3',
                _ => '4',
            });
        }
        labels.reverse();
        labels
    }
}

impl Iterator for GearEvents {
    type Item = Event;

    fn next(&mut self) -> Option<Event> {
        if self.pending.is_empty() {
            self.pending = self.cycle();
        }
        let c = self.pending.pop().expect("cycles are never empty");
        let gap = (self.gaps.sample(&mut self.rng) / GRID).round().max(1.0) * GRID;
        self.time += gap;
        Some(
            Event::new(Label::new(c).expect("gear labels are valid"), self.time)
                .expect("time is finite"),
        )
    }
}

pub fn generate_gear_word(cfg: GearGenConfig) -> Result<TimedWord, GearError> {
    if cfg.count == 0 {
        return Err(GearError::ZeroCount);
    }
    let events = GearEvents::new(cfg.seed, cfg.gap)?
        .take(cfg.count)
        .collect();
    Ok(TimedWord::new(events).expect("generated times increase"))
}
