//! Skip tables for the accelerated matcher.
//!
//! All tables are computed on the untimed projection, which over-approximates
//! the timed language; every skip they allow is therefore also sound for the
//! timed automaton.

use super::untimed::UntimedNfa;
use super::AutomatonError;
use crate::word::Label;

const LABEL_SLOTS: usize = 128;

/// Number of events in the shortest word accepted by `nfa`.
pub fn min_match_length(nfa: &UntimedNfa) -> Result<usize, AutomatonError> {
    nfa.distances()
        .iter()
        .enumerate()
        .filter(|&(q, _)| nfa.is_accepting(q))
        .filter_map(|(_, d)| *d)
        .min()
        .ok_or(AutomatonError::EmptyLanguage)
}

/// `runnable[r][q]`: some path of exactly `r` edges leaves `q`.
fn runnable_lengths(nfa: &UntimedNfa, max: usize) -> Vec<Vec<bool>> {
    let n = nfa.location_count();
    let mut out = vec![vec![true; n]];
    for r in 0..max {
        let prev = &out[r];
        let next = (0..n)
            .map(|q| nfa.edges(q).iter().any(|&(_, t)| prev[t]))
            .collect();
        out.push(next);
    }
    out
}

/// Location sets reachable from the initial set in exactly `d` steps.
fn free_reach(nfa: &UntimedNfa, max: usize) -> Vec<Vec<bool>> {
    let mut out = vec![nfa.initial_set()];
    for d in 0..max {
        let next = nfa.step(&out[d], None);
        out.push(next);
    }
    out
}

/// Shift table indexed by trial progress.
///
/// `beta[m]` is the least shift `d` in `1..=m` such that some word `u` of
/// length `m` runnable from the initial locations has a suffix `u[d..]`
/// that a fresh run could follow: either the whole suffix is runnable, or
/// one of its prefixes is already accepted. `beta[0] = 1`, and `beta[m] = m`
/// when no smaller shift qualifies.
///
/// Qualification is checked in the product of two copies of the automaton:
/// the first copy runs freely for `d` steps and then reads the same labels
/// as the second copy, which starts afresh.
pub fn kmp_skip_table(nfa: &UntimedNfa, cap: usize) -> Vec<usize> {
    assert!(cap >= 1, "progress cap must be positive");
    let n = nfa.location_count();
    let runnable = runnable_lengths(nfa, cap);
    let reach = free_reach(nfa, cap);
    let init = nfa.initial_set();

    // qualifies[d][k]: shift d qualifies for progress m = d + k
    let mut qualifies = vec![Vec::new(); cap + 1];
    for d in 1..=cap {
        let horizon = cap - d;
        let mut layer = vec![false; n * n];
        for q1 in (0..n).filter(|&q| reach[d][q]) {
            for q2 in (0..n).filter(|&q| init[q]) {
                layer[q1 * n + q2] = true;
            }
        }
        let mut alive = Vec::with_capacity(horizon + 1);
        // accepted_at[k][r]: after k synchronized steps the fresh copy
        // accepts while the first copy can still run r more steps
        let mut accepted_at: Vec<Vec<bool>> = Vec::with_capacity(horizon + 1);
        for k in 0..=horizon {
            alive.push(layer.iter().any(|&x| x));
            let mut firsts = vec![false; n];
            for (idx, _) in layer.iter().enumerate().filter(|(_, &x)| x) {
                if nfa.is_accepting(idx % n) {
                    firsts[idx / n] = true;
                }
            }
            accepted_at.push(
                (0..=horizon - k)
                    .map(|r| (0..n).any(|q1| firsts[q1] && runnable[r][q1]))
                    .collect(),
            );
            if k < horizon {
                let mut next = vec![false; n * n];
                for (idx, _) in layer.iter().enumerate().filter(|(_, &x)| x) {
                    let (q1, q2) = (idx / n, idx % n);
                    for &(l1, r1) in nfa.edges(q1) {
                        for &(l2, r2) in nfa.edges(q2) {
                            if l1 == l2 {
                                next[r1 * n + r2] = true;
                            }
                        }
                    }
                }
                layer = next;
            }
        }
        qualifies[d] = (0..=horizon)
            .map(|big_k| alive[big_k] || (0..=big_k).any(|k| accepted_at[k][big_k - k]))
            .collect();
    }

    let mut beta = vec![1; cap + 1];
    for (m, slot) in beta.iter_mut().enumerate().skip(1) {
        *slot = (1..m).find(|&d| qualifies[d][m - d]).unwrap_or(m);
    }
    beta
}

/// `labels_at[j][l]`: label `l` is read as the `j`-th event (1-based) of
/// some path from the initial locations.
fn labels_at(nfa: &UntimedNfa, max: usize) -> Vec<Vec<bool>> {
    let reach = free_reach(nfa, max);
    let mut out = vec![vec![false; LABEL_SLOTS]];
    for set in reach.iter().take(max) {
        let mut labels = vec![false; LABEL_SLOTS];
        for q in (0..nfa.location_count()).filter(|&q| set[q]) {
            for &(l, _) in nfa.edges(q) {
                labels[l.index()] = true;
            }
        }
        out.push(labels);
    }
    out
}

/// Shift table indexed by the label observed at the last position of the
/// `n_min`-event window: `n_min - j` for the largest `j < n_min` at which
/// the label can occur, or `n_min` if it never occurs before position
/// `n_min`. Returned as a 128-slot table indexed by [`Label::index`].
pub fn quick_search_table(nfa: &UntimedNfa, n_min: usize) -> Vec<usize> {
    if n_min == 0 {
        return Vec::new();
    }
    let at = labels_at(nfa, n_min);
    (0..LABEL_SLOTS)
        .map(|l| {
            (1..n_min)
                .rev()
                .find(|&j| at[j][l])
                .map_or(n_min, |j| n_min - j)
        })
        .collect()
}

/// Precomputed skip information for one pattern.
#[derive(Debug, Clone)]
pub struct SkipTables {
    n_min: usize,
    cap: usize,
    beta: Vec<usize>,
    delta: Vec<usize>,
    gate: Vec<bool>,
}

impl SkipTables {
    /// Builds the tables with the default progress cap
    /// `max(2 * locations, n_min)`.
    pub fn new(nfa: &UntimedNfa) -> Result<SkipTables, AutomatonError> {
        let n_min = min_match_length(nfa)?;
        let cap = (2 * nfa.location_count()).max(n_min).max(1);
        Self::with_cap(nfa, cap)
    }

    pub fn with_cap(nfa: &UntimedNfa, cap: usize) -> Result<SkipTables, AutomatonError> {
        let n_min = min_match_length(nfa)?;
        let cap = cap.max(1);
        let gate = if n_min == 0 {
            vec![true; LABEL_SLOTS]
        } else {
            labels_at(nfa, n_min).swap_remove(n_min)
        };
        Ok(SkipTables {
            n_min,
            cap,
            beta: kmp_skip_table(nfa, cap),
            delta: quick_search_table(nfa, n_min),
            gate,
        })
    }

    pub fn n_min(&self) -> usize {
        self.n_min
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    pub fn beta_table(&self) -> &[usize] {
        &self.beta
    }

    /// Shift after a trial that consumed `progress` events. Beyond the cap
    /// the last entry is used: shifts never shrink as progress grows.
    pub fn beta(&self, progress: usize) -> usize {
        self.beta[progress.min(self.cap)]
    }

    pub fn delta(&self, label: Label) -> usize {
        if self.n_min == 0 {
            1
        } else {
            self.delta[label.index()]
        }
    }

    /// Whether `label` can be the `n_min`-th event of an accepted word.
    pub fn passes_gate(&self, label: Label) -> bool {
        self.gate[label.index()]
    }
}
