//! Translation of timed regular expressions into timed automata.
//!
//! The automaton is the position automaton of `e·$`: one location per atom
//! occurrence plus an initial and an accepting location, where the accepting
//! location is only reachable through terminal edges. Each `%` window owns a
//! clock. The clock is reset on edges that enter the window's sub-expression
//! from outside (edges leaving the initial location need no reset), and the
//! window's guard sits on every edge that leaves the sub-expression,
//! including loop-back edges of an enclosing `*`/`+` and terminal edges.
//! Guards are evaluated before resets, so an edge that leaves and re-enters
//! a window checks the old value and then restarts the clock.
//!
//! A sub-match therefore lasts from its first event (or from `t` when no
//! event precedes it) to the first event after it (or to `t'`). An empty
//! sub-match takes no time, except before the first event of the match,
//! where it lasts from `t` to that event: windows skipped there are checked
//! on the edges leaving the initial location.

use std::collections::BTreeSet;
use std::ops::Range;

use super::ta::{ClockGuard, ClockOp, EdgeLabel, Location, TimedAutomaton, Transition};
use super::tre::{TimeWindow, Tre};
use crate::word::Label;

struct Window {
    clock: usize,
    positions: Range<usize>,
    bounds: TimeWindow,
}

/// First/last sets of a sub-expression; positions are 0-based.
struct Summary {
    /// Matches the empty word in a place where that takes no time.
    nullable: bool,
    first: Vec<usize>,
    last: Vec<usize>,
    positions: Range<usize>,
    /// First positions reachable at the start of a match, each with the
    /// windows matched empty before it.
    leading: BTreeSet<(usize, Vec<usize>)>,
    /// Ways to match nothing at the start of a match, as the sets of
    /// windows matched empty.
    empties: BTreeSet<Vec<usize>>,
}

fn merge(a: &[usize], b: &[usize]) -> Vec<usize> {
    let mut out: Vec<usize> = a.iter().chain(b).copied().collect();
    out.sort_unstable();
    out.dedup();
    out
}

fn product(a: &BTreeSet<Vec<usize>>, b: &BTreeSet<Vec<usize>>) -> BTreeSet<Vec<usize>> {
    a.iter()
        .flat_map(|x| b.iter().map(move |y| merge(x, y)))
        .collect()
}

/// A follow edge between positions, with the windows it leaves and enters.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord)]
struct Follow {
    from: usize,
    to: usize,
    exits: Vec<usize>,
    enters: Vec<usize>,
}

#[derive(Default)]
struct Builder {
    atoms: Vec<Label>,
    windows: Vec<Window>,
    follows: BTreeSet<Follow>,
}

impl Builder {
    /// Windows nested inside `scope` (inclusive) that contain `pos`.
    fn windows_in(&self, scope: &Range<usize>, pos: usize) -> Vec<usize> {
        self.windows
            .iter()
            .enumerate()
            .filter(|(_, w)| {
                w.positions.start >= scope.start
                    && w.positions.end <= scope.end
                    && w.positions.contains(&pos)
            })
            .map(|(k, _)| k)
            .collect()
    }

    fn link(&mut self, from: &Summary, to: &Summary) {
        for &p in &from.last {
            for &q in &to.first {
                let exits = self.windows_in(&from.positions, p);
                let enters = self.windows_in(&to.positions, q);
                self.follows.insert(Follow {
                    from: p,
                    to: q,
                    exits,
                    enters,
                });
            }
        }
    }

    fn visit(&mut self, e: &Tre) -> Summary {
        match e {
            Tre::Atom(l) => {
                let p = self.atoms.len();
                self.atoms.push(*l);
                Summary {
                    nullable: false,
                    first: vec![p],
                    last: vec![p],
                    positions: p..p + 1,
                    leading: BTreeSet::from([(p, Vec::new())]),
                    empties: BTreeSet::new(),
                }
            }
            Tre::Concat(items) => {
                let start = self.atoms.len();
                let parts: Vec<Summary> = items.iter().map(|i| self.visit(i)).collect();
                for j in 1..parts.len() {
                    for i in (0..j).rev() {
                        let (left, right) = (&parts[i], &parts[j]);
                        self.link(left, right);
                        if !parts[i].nullable {
                            break;
                        }
                    }
                }
                let mut first = Vec::new();
                for p in &parts {
                    first.extend_from_slice(&p.first);
                    if !p.nullable {
                        break;
                    }
                }
                let mut last = Vec::new();
                for p in parts.iter().rev() {
                    last.extend_from_slice(&p.last);
                    if !p.nullable {
                        break;
                    }
                }
                let mut leading = BTreeSet::new();
                let mut before = BTreeSet::from([Vec::new()]);
                for p in &parts {
                    for (q, skipped) in &p.leading {
                        for earlier in &before {
                            leading.insert((*q, merge(skipped, earlier)));
                        }
                    }
                    before = product(&before, &p.empties);
                }
                Summary {
                    nullable: parts.iter().all(|p| p.nullable),
                    first,
                    last,
                    positions: start..self.atoms.len(),
                    leading,
                    empties: before,
                }
            }
            Tre::Union(items) => {
                let start = self.atoms.len();
                let parts: Vec<Summary> = items.iter().map(|i| self.visit(i)).collect();
                Summary {
                    nullable: parts.iter().any(|p| p.nullable),
                    first: parts.iter().flat_map(|p| p.first.iter().copied()).collect(),
                    last: parts.iter().flat_map(|p| p.last.iter().copied()).collect(),
                    positions: start..self.atoms.len(),
                    leading: parts
                        .iter()
                        .flat_map(|p| p.leading.iter().cloned())
                        .collect(),
                    empties: parts
                        .iter()
                        .flat_map(|p| p.empties.iter().cloned())
                        .collect(),
                }
            }
            Tre::Star(child) | Tre::Plus(child) => {
                let inner = self.visit(child);
                self.link(&inner, &inner);
                let star = matches!(e, Tre::Star(_));
                Summary {
                    nullable: star || inner.nullable,
                    empties: if star {
                        BTreeSet::from([Vec::new()])
                    } else {
                        inner.empties.clone()
                    },
                    ..inner
                }
            }
            Tre::Within(child, bounds) => {
                let clock = self.windows.len();
                let start = self.atoms.len();
                // reserve the clock before visiting so outer windows get lower indices
                self.windows.push(Window {
                    clock,
                    positions: start..start,
                    bounds: *bounds,
                });
                let inner = self.visit(child);
                self.windows[clock].positions = inner.positions.clone();
                let instant = bounds.lower == 0 && !bounds.lower_strict;
                Summary {
                    nullable: inner.nullable && instant,
                    empties: inner.empties.iter().map(|s| merge(s, &[clock])).collect(),
                    ..inner
                }
            }
        }
    }
}

fn window_guards(w: &Window) -> Vec<ClockGuard> {
    let b = &w.bounds;
    let mut guards = Vec::with_capacity(2);
    let lower_op = if b.lower_strict {
        ClockOp::Gt
    } else {
        ClockOp::Ge
    };
    guards.push(ClockGuard::new(w.clock, lower_op, b.lower));
    if let Some(u) = b.upper {
        let upper_op = if b.upper_strict {
            ClockOp::Lt
        } else {
            ClockOp::Le
        };
        guards.push(ClockGuard::new(w.clock, upper_op, u));
    }
    guards
}

/// Compiles `e` into a timed automaton.
///
/// Location 0 is initial, locations `1..=n` are the atom positions in
/// left-to-right order, and location `n + 1` is accepting. Clocks are
/// numbered by the pre-order position of their `%` window.
pub fn compile_tre(e: &Tre) -> TimedAutomaton {
    let mut b = Builder::default();
    let top = b.visit(e);
    let n = b.atoms.len();
    let init = 0u32;
    let accept = n as u32 + 1;
    let loc = |p: usize| p as u32 + 1;
    let guards_for = |ws: &[usize]| -> Vec<ClockGuard> {
        ws.iter()
            .flat_map(|&w| window_guards(&b.windows[w]))
            .collect()
    };
    let everything = 0..n;

    let mut transitions = Vec::new();
    for (q, skipped) in &top.leading {
        transitions.push(Transition {
            from: init,
            to: loc(*q),
            label: EdgeLabel::Event(b.atoms[*q]),
            guards: guards_for(skipped),
            resets: vec![],
        });
    }
    for f in &b.follows {
        transitions.push(Transition {
            from: loc(f.from),
            to: loc(f.to),
            label: EdgeLabel::Event(b.atoms[f.to]),
            guards: guards_for(&f.exits),
            resets: f.enters.iter().map(|&w| b.windows[w].clock).collect(),
        });
    }
    for &p in &top.last {
        transitions.push(Transition {
            from: loc(p),
            to: accept,
            label: EdgeLabel::Terminal,
            guards: guards_for(&b.windows_in(&everything, p)),
            resets: vec![],
        });
    }
    for skipped in &top.empties {
        transitions.push(Transition {
            from: init,
            to: accept,
            label: EdgeLabel::Terminal,
            guards: guards_for(skipped),
            resets: vec![],
        });
    }

    let mut locations = Vec::with_capacity(n + 2);
    locations.push(Location {
        id: init,
        initial: true,
        accepting: false,
    });
    locations.extend((0..n).map(|p| Location {
        id: loc(p),
        initial: false,
        accepting: false,
    }));
    locations.push(Location {
        id: accept,
        initial: false,
        accepting: true,
    });

    let ta = TimedAutomaton {
        alphabet: b.atoms.iter().copied().collect(),
        clock_count: b.windows.len(),
        locations,
        transitions,
    };
    debug_assert!(ta.validate().is_empty(), "compiled automaton is malformed");
    ta
}
