//! Timed pattern matching over timestamped event logs.
//!
//! Given a pattern (a timed automaton, or a timed regular expression compiled
//! to one) and a log, the matchers report every interval `(t, t')` of the log
//! whose restriction the pattern accepts, as a list of [`zones::MatchZone`]s.

pub mod automata;
pub mod cli;
pub mod matcher;
pub mod word;
pub mod zones;

pub use automata::{Pattern, SkipTables};
pub use matcher::{match_brute, match_fjs, MatchReport};

pub use word::{Event, Label, TimedWord};
pub use zones::MatchZone;
