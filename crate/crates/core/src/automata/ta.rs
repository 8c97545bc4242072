use std::collections::{BTreeSet, HashMap, HashSet};
use std::fmt;

use crate::word::Label;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ClockOp {
    Lt,
    Le,
    Gt,
    Ge,
}

impl ClockOp {
    pub fn holds(self, value: f64, constant: f64) -> bool {
        match self {
            ClockOp::Lt => value < constant,
            ClockOp::Le => value <= constant,
            ClockOp::Gt => value > constant,
            ClockOp::Ge => value >= constant,
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            ClockOp::Lt => "<",
            ClockOp::Le => "<=",
            ClockOp::Gt => ">",
            ClockOp::Ge => ">=",
        }
    }

    pub fn from_symbol(s: &str) -> Option<ClockOp> {
        Some(match s {
            "<" => ClockOp::Lt,
            "<=" => ClockOp::Le,
            ">" => ClockOp::Gt,
            ">=" => ClockOp::Ge,
            _ => return None,
        })
    }
}

/// `clock op constant`
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ClockGuard {
    pub clock: usize,
    pub op: ClockOp,
    pub constant: u32,
}

impl ClockGuard {
    pub fn new(clock: usize, op: ClockOp, constant: u32) -> ClockGuard {
        ClockGuard {
            clock,
            op,
            constant,
        }
    }

    pub fn holds(&self, clock_value: f64) -> bool {
        self.op.holds(clock_value, self.constant as f64)
    }
}

impl fmt::Display for ClockGuard {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "x{} {} {}", self.clock, self.op.symbol(), self.constant)
    }
}

/// What a transition reads: an event label, or the end-of-interval marker
/// `$` taken once at `t'`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum EdgeLabel {
    Event(Label),
    Terminal,
}

impl fmt::Display for EdgeLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EdgeLabel::Event(l) => write!(f, "{l}"),
            EdgeLabel::Terminal => write!(f, "$"),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Transition {
    pub from: u32,
    pub to: u32,
    pub label: EdgeLabel,
    pub guards: Vec<ClockGuard>,
    pub resets: Vec<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Location {
    pub id: u32,
    pub initial: bool,
    pub accepting: bool,
}

/// A timed automaton whose runs start with every clock at zero at the
/// beginning of the observed interval.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct TimedAutomaton {
    pub alphabet: BTreeSet<Label>,
    pub clock_count: usize,
    pub locations: Vec<Location>,
    pub transitions: Vec<Transition>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Diagnostic {
    NoInitialLocation,
    DuplicateLocation(u32),
    DanglingLocation { transition: usize, location: u32 },
    TerminalWithResets { transition: usize },
    TerminalToNonAccepting { transition: usize },
    UnknownClock { transition: usize, clock: usize },
    LabelOutsideAlphabet { transition: usize, label: Label },
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Diagnostic::NoInitialLocation => write!(f, "no initial location"),
            Diagnostic::DuplicateLocation(id) => write!(f, "location {id} declared twice"),
            Diagnostic::DanglingLocation {
                transition,
                location,
            } => write!(
                f,
                "transition {transition} refers to undeclared location {location}"
            ),
            Diagnostic::TerminalWithResets { transition } => {
                write!(f, "terminal transition {transition} resets clocks")
            }
            Diagnostic::TerminalToNonAccepting { transition } => write!(
                f,
                "terminal transition {transition} targets a non-accepting location"
            ),
            Diagnostic::UnknownClock { transition, clock } => write!(
                f,
                "transition {transition} uses clock {clock} beyond the declared clock count"
            ),
            Diagnostic::LabelOutsideAlphabet { transition, label } => write!(
                f,
                "transition {transition} reads {label}, which is not in the alphabet"
            ),
        }
    }
}

impl TimedAutomaton {
    /// All violations of the automaton's structural invariants; empty when
    /// the automaton is well formed.
    pub fn validate(&self) -> Vec<Diagnostic> {
        let mut out = Vec::new();
        let mut seen = HashSet::new();
        for loc in &self.locations {
            if !seen.insert(loc.id) {
                out.push(Diagnostic::DuplicateLocation(loc.id));
            }
        }
        if !self.locations.iter().any(|l| l.initial) {
            out.push(Diagnostic::NoInitialLocation);
        }
        let accepting: HashMap<u32, bool> =
            self.locations.iter().map(|l| (l.id, l.accepting)).collect();
        for (k, tr) in self.transitions.iter().enumerate() {
            for endpoint in [tr.from, tr.to] {
                if !accepting.contains_key(&endpoint) {
                    out.push(Diagnostic::DanglingLocation {
                        transition: k,
                        location: endpoint,
                    });
                }
            }
            match tr.label {
                EdgeLabel::Terminal => {
                    if !tr.resets.is_empty() {
                        out.push(Diagnostic::TerminalWithResets { transition: k });
                    }
                    if accepting.get(&tr.to) == Some(&false) {
                        out.push(Diagnostic::TerminalToNonAccepting { transition: k });
                    }
                }
                EdgeLabel::Event(label) => {
                    if !self.alphabet.contains(&label) {
                        out.push(Diagnostic::LabelOutsideAlphabet {
                            transition: k,
                            label,
                        });
                    }
                }
            }
            let clocks = tr
                .guards
                .iter()
                .map(|g| g.clock)
                .chain(tr.resets.iter().copied());
            for clock in clocks {
                if clock >= self.clock_count {
                    out.push(Diagnostic::UnknownClock {
                        transition: k,
                        clock,
                    });
                }
            }
        }
        out
    }
}

/// A validated automaton with dense location indices and per-location
/// adjacency, shared by the matchers and the skip-table construction.
#[derive(Debug, Clone)]
pub struct Pattern {
    ta: TimedAutomaton,
    initial: Vec<usize>,
    accepting: Vec<bool>,
    /// outgoing event transitions per location: (label, transition index)
    event_edges: Vec<Vec<(Label, usize)>>,
    /// outgoing terminal transitions per location
    terminal_edges: Vec<Vec<usize>>,
    /// dense (from, to) per transition
    endpoints: Vec<(usize, usize)>,
}

impl Pattern {
    pub fn new(ta: TimedAutomaton) -> Result<Pattern, Vec<Diagnostic>> {
        let diagnostics = ta.validate();
        if !diagnostics.is_empty() {
            return Err(diagnostics);
        }
        let index: HashMap<u32, usize> = ta
            .locations
            .iter()
            .enumerate()
            .map(|(k, l)| (l.id, k))
            .collect();
        let n = ta.locations.len();
        let initial = (0..n).filter(|&k| ta.locations[k].initial).collect();
        let accepting = ta.locations.iter().map(|l| l.accepting).collect();
        let mut event_edges = vec![Vec::new(); n];
        let mut terminal_edges = vec![Vec::new(); n];
        let mut endpoints = Vec::with_capacity(ta.transitions.len());
        for (k, tr) in ta.transitions.iter().enumerate() {
            let (from, to) = (index[&tr.from], index[&tr.to]);
            endpoints.push((from, to));
            match tr.label {
                EdgeLabel::Event(l) => event_edges[from].push((l, k)),
                EdgeLabel::Terminal => terminal_edges[from].push(k),
            }
        }
        Ok(Pattern {
            ta,
            initial,
            accepting,
            event_edges,
            terminal_edges,
            endpoints,
        })
    }

    pub fn automaton(&self) -> &TimedAutomaton {
        &self.ta
    }

    pub fn location_count(&self) -> usize {
        self.accepting.len()
    }

    pub fn clock_count(&self) -> usize {
        self.ta.clock_count
    }

    pub fn initial(&self) -> &[usize] {
        &self.initial
    }

    pub fn is_accepting(&self, loc: usize) -> bool {
        self.accepting[loc]
    }

    pub fn transition(&self, k: usize) -> &Transition {
        &self.ta.transitions[k]
    }

    pub fn target(&self, k: usize) -> usize {
        self.endpoints[k].1
    }

    pub fn event_edges(&self, loc: usize) -> &[(Label, usize)] {
        &self.event_edges[loc]
    }

    pub fn terminal_edges(&self, loc: usize) -> &[usize] {
        &self.terminal_edges[loc]
    }
}
