//! The pattern side: timed automata, timed regular expressions and their
//! compilation, the untimed projection, and the skip tables.

mod compile;
mod json;
mod skip;
mod ta;
mod tre;
mod untimed;

use thiserror::Error;

pub use compile::compile_tre;
pub use json::{from_json, to_json, FormatError};
pub use skip::{kmp_skip_table, min_match_length, quick_search_table, SkipTables};
pub use ta::{
    ClockGuard, ClockOp, Diagnostic, EdgeLabel, Location, Pattern, TimedAutomaton, Transition,
};
pub use tre::{parse_tre, TimeWindow, Tre, TreError};
pub use untimed::{untimed_projection, UntimedNfa};

#[derive(Debug, Error)]
pub enum AutomatonError {
    #[error("pattern matches nothing")]
    EmptyLanguage,
    #[error("invalid automaton: {}", join(.0))]
    Invalid(Vec<Diagnostic>),
    #[error(transparent)]
    Format(#[from] FormatError),
    #[error(transparent)]
    Tre(#[from] TreError),
}

fn join(diagnostics: &[Diagnostic]) -> String {
    diagnostics
        .iter()
        .map(|d| d.to_string())
        .collect::<Vec<_>>()
        .join("; ")
}

impl Pattern {
    /// Parses and compiles a timed regular expression.
    pub fn from_tre(text: &str) -> Result<Pattern, AutomatonError> {
        let tre = parse_tre(text)?;
        Pattern::new(compile_tre(&tre)).map_err(AutomatonError::Invalid)
    }

    /// Loads an automaton document.
    pub fn from_json(text: &str) -> Result<Pattern, AutomatonError> {
        Pattern::new(from_json(text)?).map_err(AutomatonError::Invalid)
    }

    pub fn skip_tables(&self) -> Result<SkipTables, AutomatonError> {
        SkipTables::new(&untimed_projection(self))
    }
}
