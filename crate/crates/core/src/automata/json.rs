//! The JSON document format for hand-written automata.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::ta::{ClockGuard, ClockOp, EdgeLabel, Location, TimedAutomaton, Transition};
use crate::word::Label;

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("malformed automaton document: {0}")]
    Json(#[from] serde_json::Error),
    #[error("invalid label {0:?}")]
    Label(String),
    #[error("invalid guard operator {0:?}")]
    Operator(String),
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct Document {
    alphabet: Vec<String>,
    clocks: usize,
    locations: Vec<LocationDoc>,
    transitions: Vec<TransitionDoc>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct LocationDoc {
    id: u32,
    initial: bool,
    accepting: bool,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct TransitionDoc {
    from: u32,
    to: u32,
    label: String,
    #[serde(default)]
    guards: Vec<GuardDoc>,
    #[serde(default)]
    resets: Vec<usize>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct GuardDoc {
    clock: usize,
    op: String,
    bound: u32,
}

fn label(s: &str) -> Result<Label, FormatError> {
    Label::parse(s).map_err(|_| FormatError::Label(s.to_string()))
}

/// Parses an automaton document. Structural checks are left to
/// [`TimedAutomaton::validate`].
pub fn from_json(text: &str) -> Result<TimedAutomaton, FormatError> {
    let doc: Document = serde_json::from_str(text)?;
    let alphabet = doc
        .alphabet
        .iter()
        .map(|s| label(s))
        .collect::<Result<_, _>>()?;
    let locations = doc
        .locations
        .iter()
        .map(|l| Location {
            id: l.id,
            initial: l.initial,
            accepting: l.accepting,
        })
        .collect();
    let mut transitions = Vec::with_capacity(doc.transitions.len());
    for t in doc.transitions {
        let edge_label = if t.label == "$" {
            EdgeLabel::Terminal
        } else {
            EdgeLabel::Event(label(&t.label)?)
        };
        let guards = t
            .guards
            .iter()
            .map(|g| {
                ClockOp::from_symbol(&g.op)
                    .map(|op| ClockGuard::new(g.clock, op, g.bound))
                    .ok_or_else(|| FormatError::Operator(g.op.clone()))
            })
            .collect::<Result<_, _>>()?;
        transitions.push(Transition {
            from: t.from,
            to: t.to,
            label: edge_label,
            guards,
            resets: t.resets,
        });
    }
    Ok(TimedAutomaton {
        alphabet,
        clock_count: doc.clocks,
        locations,
        transitions,
    })
}

pub fn to_json(ta: &TimedAutomaton) -> String {
    let doc = Document {
        alphabet: ta.alphabet.iter().map(|l| l.to_string()).collect(),
        clocks: ta.clock_count,
        locations: ta
            .locations
            .iter()
            .map(|l| LocationDoc {
                id: l.id,
                initial: l.initial,
                accepting: l.accepting,
            })
            .collect(),
        transitions: ta
            .transitions
            .iter()
            .map(|t| TransitionDoc {
                from: t.from,
                to: t.to,
                label: t.label.to_string(),
                guards: t
                    .guards
                    .iter()
                    .map(|g| GuardDoc {
                        clock: g.clock,
                        op: g.op.symbol().to_string(),
                        bound: g.constant,
                    })
                    .collect(),
                resets: t.resets.clone(),
            })
            .collect(),
    };
    serde_json::to_string_pretty(&doc).expect("automaton documents always serialize")
}
