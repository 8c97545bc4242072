use std::collections::VecDeque;

use super::ta::Pattern;
use crate::word::Label;

/// The discrete skeleton of a timed automaton: guards and resets dropped,
/// terminal edges folded into acceptance of their source.
///
/// Location indices and event edges correspond one to one with those of the
/// source [`Pattern`].
#[derive(Debug, Clone)]
pub struct UntimedNfa {
    initial: Vec<usize>,
    accepting: Vec<bool>,
    edges: Vec<Vec<(Label, usize)>>,
}

pub fn untimed_projection(pattern: &Pattern) -> UntimedNfa {
    let n = pattern.location_count();
    let accepting = (0..n)
        .map(|q| {
            pattern.is_accepting(q)
                || pattern
                    .terminal_edges(q)
                    .iter()
                    .any(|&k| pattern.is_accepting(pattern.target(k)))
        })
        .collect();
    let edges = (0..n)
        .map(|q| {
            pattern
                .event_edges(q)
                .iter()
                .map(|&(l, k)| (l, pattern.target(k)))
                .collect()
        })
        .collect();
    UntimedNfa {
        initial: pattern.initial().to_vec(),
        accepting,
        edges,
    }
}

impl UntimedNfa {
    pub fn location_count(&self) -> usize {
        self.accepting.len()
    }

    pub fn initial(&self) -> &[usize] {
        &self.initial
    }

    pub fn is_accepting(&self, q: usize) -> bool {
        self.accepting[q]
    }

    pub fn edges(&self, q: usize) -> &[(Label, usize)] {
        &self.edges[q]
    }

    pub fn initial_set(&self) -> Vec<bool> {
        let mut set = vec![false; self.location_count()];
        for &q in &self.initial {
            set[q] = true;
        }
        set
    }

    /// One step of the subset construction on `label`, or on any label when
    /// `label` is `None`.
    pub fn step(&self, set: &[bool], label: Option<Label>) -> Vec<bool> {
        let mut next = vec![false; set.len()];
        for (q, _) in set.iter().enumerate().filter(|(_, &live)| live) {
            for &(l, r) in &self.edges[q] {
                if label.is_none_or(|want| want == l) {
                    next[r] = true;
                }
            }
        }
        next
    }

    pub fn accepts(&self, word: &[Label]) -> bool {
        let mut set = self.initial_set();
        for &l in word {
            set = self.step(&set, Some(l));
        }
        set.iter()
            .zip(&self.accepting)
            .any(|(&live, &acc)| live && acc)
    }

    /// Breadth-first distance from the initial locations, `None` where
    /// unreachable.
    pub fn distances(&self) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.location_count()];
        let mut queue = VecDeque::new();
        for &q in &self.initial {
            if dist[q].is_none() {
                dist[q] = Some(0);
                queue.push_back(q);
            }
        }
        while let Some(q) = queue.pop_front() {
            let d = dist[q].unwrap();
            for &(_, r) in &self.edges[q] {
                if dist[r].is_none() {
                    dist[r] = Some(d + 1);
                    queue.push_back(r);
                }
            }
        }
        dist
    }
}
