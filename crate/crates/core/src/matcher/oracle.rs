//! Reference semantics: concrete simulation of one restriction.

use std::cmp::Ordering;
use std::collections::HashSet;

use crate::automata::Pattern;
use crate::word::{restricted_slice, TimedWord, WordError};

/// Whether the pattern accepts `w|(t, t_prime)`.
///
/// Clocks are tracked by the relative time of their last reset, so every
/// state reached is concrete and the simulation is exact up to floating
/// point subtraction.
pub fn accepts_restriction(
    pattern: &Pattern,
    w: &TimedWord,
    t: f64,
    t_prime: f64,
) -> Result<bool, WordError> {
    if t.partial_cmp(&t_prime) != Some(Ordering::Less) || t < 0.0 {
        return Err(WordError::InvalidInterval { t, t_prime });
    }
    let fresh = vec![0.0; pattern.clock_count()];
    let mut states: Vec<(usize, Vec<f64>)> = pattern
        .initial()
        .iter()
        .map(|&q| (q, fresh.clone()))
        .collect();
    for e in restricted_slice(w.events(), t, t_prime) {
        let now = e.time - t;
        let mut seen = HashSet::new();
        let mut next = Vec::new();
        for (q, resets) in &states {
            for &(label, k) in pattern.event_edges(*q) {
                let tr = pattern.transition(k);
                if label != e.label || !tr.guards.iter().all(|g| g.holds(now - resets[g.clock])) {
                    continue;
                }
                let mut r = resets.clone();
                for &x in &tr.resets {
                    r[x] = now;
                }
                let key = (
                    pattern.target(k),
                    r.iter().map(|v| v.to_bits()).collect::<Vec<_>>(),
                );
                if seen.insert(key) {
                    next.push((pattern.target(k), r));
                }
            }
        }
        if next.is_empty() {
            return Ok(false);
        }
        states = next;
    }
    let end = t_prime - t;
    Ok(states.iter().any(|(q, resets)| {
        pattern.is_accepting(*q)
            || pattern.terminal_edges(*q).iter().any(|&k| {
                pattern.is_accepting(pattern.target(k))
                    && pattern
                        .transition(k)
                        .guards
                        .iter()
                        .all(|g| g.holds(end - resets[g.clock]))
            })
    }))
}
