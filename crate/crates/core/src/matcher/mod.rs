//! Matching engines: a trial per start segment, optionally accelerated by
//! skip tables, and a concrete reference oracle.

mod buffer;
mod engine;
mod oracle;
mod trial;

pub use buffer::{EventBuffer, EventWindow};
pub use engine::{
    match_brute, match_fjs, scan, Algorithm, MatchReport, MatchSink, MatchStats, ScanError,
};
pub use oracle::accepts_restriction;
pub use trial::{run_trial, TrialOutcome, ZoneRecord};
