#![allow(dead_code)]

use std::collections::{BTreeSet, HashMap};

use rand::seq::IndexedRandom;
use rand::Rng;
use tempomatch::automata::{
    ClockGuard, ClockOp, EdgeLabel, Location, TimeWindow, TimedAutomaton, Transition, Tre,
};
use tempomatch::matcher::{accepts_restriction, ZoneRecord};
use tempomatch::{Label, Pattern, TimedWord};

pub const GRID: f64 = 0.125;

pub fn label(c: char) -> Label {
    Label::new(c).unwrap()
}

const OPS: [ClockOp; 4] = [ClockOp::Lt, ClockOp::Le, ClockOp::Gt, ClockOp::Ge];

fn guards(rng: &mut impl Rng, clocks: usize) -> Vec<ClockGuard> {
    if clocks == 0 {
        return Vec::new();
    }
    (0..rng.random_range(0..=2))
        .map(|_| {
            ClockGuard::new(
                rng.random_range(0..clocks),
                *OPS.choose(rng).unwrap(),
                rng.random_range(0..=4),
            )
        })
        .collect()
}

/// An automaton with at most 5 locations, 2 clocks and guard constants up
/// to 4 over the labels `a`, `b`, `c`.
pub fn random_automaton(rng: &mut impl Rng) -> TimedAutomaton {
    let n = rng.random_range(1..=5u32);
    let clocks = rng.random_range(0..=2);
    let alphabet: BTreeSet<Label> = ['a', 'b', 'c'].into_iter().map(label).collect();
    let letters: Vec<Label> = alphabet.iter().copied().collect();
    let locations: Vec<Location> = (0..n)
        .map(|id| Location {
            id,
            initial: id == 0 || rng.random_bool(0.15),
            accepting: rng.random_bool(0.35),
        })
        .collect();
    let accepting: Vec<u32> = locations
        .iter()
        .filter(|l| l.accepting)
        .map(|l| l.id)
        .collect();
    let mut transitions = Vec::new();
    for _ in 0..rng.random_range(1..=2 * n + 3) {
        let from = rng.random_range(0..n);
        if !accepting.is_empty() && rng.random_bool(0.2) {
            transitions.push(Transition {
                from,
                to: *accepting.choose(rng).unwrap(),
                label: EdgeLabel::Terminal,
                guards: guards(rng, clocks),
                resets: Vec::new(),
            });
            continue;
        }
        let resets = (0..clocks).filter(|_| rng.random_bool(0.3)).collect();
        transitions.push(Transition {
            from,
            to: rng.random_range(0..n),
            label: EdgeLabel::Event(*letters.choose(rng).unwrap()),
            guards: guards(rng, clocks),
            resets,
        });
    }
    TimedAutomaton {
        alphabet,
        clock_count: clocks,
        locations,
        transitions,
    }
}

pub fn random_tre(rng: &mut impl Rng, depth: u32) -> Tre {
    let leaf = depth == 0 || rng.random_bool(0.25);
    if leaf {
        return Tre::Atom(label(*['a', 'b', 'c'].choose(rng).unwrap()));
    }
    match rng.random_range(0..5) {
        0 => Tre::Concat(
            (0..rng.random_range(2..=3))
                .map(|_| random_tre(rng, depth - 1))
                .collect(),
        ),
        1 => Tre::Union((0..2).map(|_| random_tre(rng, depth - 1)).collect()),
        2 => Tre::Star(Box::new(random_tre(rng, depth - 1))),
        3 => Tre::Plus(Box::new(random_tre(rng, depth - 1))),
        _ => Tre::Within(Box::new(random_tre(rng, depth - 1)), random_window(rng)),
    }
}

pub fn random_window(rng: &mut impl Rng) -> TimeWindow {
    let lower = rng.random_range(0..=3);
    let upper = if rng.random_bool(0.2) {
        None
    } else {
        Some(lower + rng.random_range(1..=3))
    };
    TimeWindow::new(lower, rng.random_bool(0.5), upper, rng.random_bool(0.5))
}

/// Like `random_tre`, but every other expression has an optional window
/// somewhere, so empty windows are common.
pub fn random_tre_with_empty_windows(rng: &mut impl Rng) -> Tre {
    fn optional(rng: &mut impl Rng) -> Tre {
        let inner = Tre::Star(Box::new(random_tre(rng, 1)));
        Tre::Within(Box::new(inner), random_window(rng))
    }
    match rng.random_range(0..4) {
        0 => Tre::Concat(vec![optional(rng), random_tre(rng, 2)]),
        1 => Tre::Concat(vec![random_tre(rng, 2), optional(rng)]),
        2 => Tre::Concat(vec![random_tre(rng, 1), optional(rng), random_tre(rng, 1)]),
        _ => random_tre(rng, 3),
    }
}

/// A word over `letters` with times on the 1/8 grid; equal timestamps occur.
pub fn random_word(rng: &mut impl Rng, letters: &[char], max_len: usize) -> TimedWord {
    let len = rng.random_range(0..=max_len);
    let mut time = 0.0;
    let pairs: Vec<(char, f64)> = (0..len)
        .map(|_| {
            time += GRID * rng.random_range(0..=5) as f64;
            (*letters.choose(rng).unwrap(), time)
        })
        .collect();
    TimedWord::from_pairs(&pairs).unwrap()
}

/// Sample points that hit every cell of the arrangement cut out by the
/// lines `t = k/8`, `t' = k/8` and `t' - t = k/8`: offsets 0, 1/32 and
/// 1/16 inside each grid step.
pub fn critical_times(w: &TimedWord) -> Vec<f64> {
    let last = w.events().last().map_or(0.0, |e| e.time);
    let steps = ((last + 5.0) / GRID) as usize;
    (0..=steps)
        .flat_map(|k| {
            let base = k as f64 * GRID;
            [base, base + GRID / 4.0, base + GRID / 2.0]
        })
        .collect()
}

pub fn covered(zones: &[ZoneRecord], t: f64, t_prime: f64) -> bool {
    zones.iter().any(|r| r.zone.contains(t, t_prime))
}

/// Compares zone membership with the oracle on critical points. With more
/// than `budget` candidate pairs a random subset of that size is checked.
pub fn check_zones(
    pattern: &Pattern,
    w: &TimedWord,
    zones: &[ZoneRecord],
    budget: usize,
    rng: &mut impl Rng,
) -> Result<usize, String> {
    let times = critical_times(w);
    let pairs = times.len() * (times.len() - 1) / 2;
    let check = |t: f64, tp: f64| -> Result<(), String> {
        let want = accepts_restriction(pattern, w, t, tp).unwrap();
        let got = covered(zones, t, tp);
        if want != got {
            return Err(format!(
                "at (t, t') = ({t}, {tp}): oracle {want}, zones {got}"
            ));
        }
        Ok(())
    };
    if pairs <= budget {
        for (a, &t) in times.iter().enumerate() {
            for &tp in &times[a + 1..] {
                check(t, tp)?;
            }
        }
        Ok(pairs)
    } else {
        for _ in 0..budget {
            let a = rng.random_range(0..times.len() - 1);
            let b = rng.random_range(a + 1..times.len());
            check(times[a], times[b])?;
        }
        Ok(budget)
    }
}

/// Untimed regular expressions, matched by derivatives.
#[derive(Debug, Clone, PartialEq)]
pub enum Re {
    Empty,
    Eps,
    Sym(Label),
    Cat(Box<Re>, Box<Re>),
    Alt(Box<Re>, Box<Re>),
    Star(Box<Re>),
    /// A window that rules out duration 0: it may match empty before the
    /// first letter only.
    Lead(Box<Re>),
    /// `Lead` after the first letter.
    Solid(Box<Re>),
}

impl Re {
    /// Drops every duration window.
    pub fn from_tre(tre: &Tre) -> Re {
        match tre {
            Tre::Atom(l) => Re::Sym(*l),
            Tre::Concat(items) => items
                .iter()
                .map(Re::from_tre)
                .reduce(|a, b| Re::Cat(Box::new(a), Box::new(b)))
                .unwrap_or(Re::Eps),
            Tre::Union(items) => items
                .iter()
                .map(Re::from_tre)
                .reduce(|a, b| Re::Alt(Box::new(a), Box::new(b)))
                .unwrap_or(Re::Empty),
            Tre::Star(c) => Re::Star(Box::new(Re::from_tre(c))),
            Tre::Plus(c) => {
                let inner = Re::from_tre(c);
                Re::Cat(Box::new(inner.clone()), Box::new(Re::Star(Box::new(inner))))
            }
            Tre::Within(c, w) if w.lower > 0 || w.lower_strict => {
                Re::Lead(Box::new(Re::from_tre(c)))
            }
            Tre::Within(c, _) => Re::from_tre(c),
        }
    }

    fn settle(self) -> Re {
        let b = |r: Box<Re>| Box::new(r.settle());
        match self {
            Re::Lead(a) | Re::Solid(a) => Re::Solid(b(a)),
            Re::Cat(x, y) => Re::Cat(b(x), b(y)),
            Re::Alt(x, y) => Re::Alt(b(x), b(y)),
            Re::Star(a) => Re::Star(b(a)),
            r => r,
        }
    }

    pub fn nullable(&self) -> bool {
        match self {
            Re::Empty | Re::Sym(_) => false,
            Re::Eps | Re::Star(_) => true,
            Re::Lead(a) => a.nullable(),
            Re::Solid(_) => false,
            Re::Cat(a, b) => a.nullable() && b.nullable(),
            Re::Alt(a, b) => a.nullable() || b.nullable(),
        }
    }

    pub fn derive(&self, l: Label) -> Re {
        match self {
            Re::Empty | Re::Eps => Re::Empty,
            Re::Sym(s) => {
                if *s == l {
                    Re::Eps
                } else {
                    Re::Empty
                }
            }
            Re::Cat(a, b) => {
                let left = cat(a.derive(l), (**b).clone());
                if a.nullable() {
                    alt(left, b.derive(l))
                } else {
                    left
                }
            }
            Re::Alt(a, b) => alt(a.derive(l), b.derive(l)),
            Re::Star(a) => cat(a.derive(l), self.clone()),
            Re::Lead(a) | Re::Solid(a) => a.derive(l),
        }
    }

    pub fn matches(&self, word: &[Label]) -> bool {
        let mut r = self.clone();
        for &l in word {
            r = r.derive(l).settle();
            if r == Re::Empty {
                return false;
            }
        }
        r.nullable()
    }
}

fn cat(a: Re, b: Re) -> Re {
    match (a, b) {
        (Re::Empty, _) | (_, Re::Empty) => Re::Empty,
        (Re::Eps, b) => b,
        (a, Re::Eps) => a,
        (a, b) => Re::Cat(Box::new(a), Box::new(b)),
    }
}

fn alt(a: Re, b: Re) -> Re {
    match (a, b) {
        (Re::Empty, b) => b,
        (a, Re::Empty) => a,
        (a, b) if a == b => a,
        (a, b) => Re::Alt(Box::new(a), Box::new(b)),
    }
}

/// Every word over `letters` of length at most `max`.
pub fn all_words(letters: &[Label], max: usize) -> Vec<Vec<Label>> {
    let mut out = vec![Vec::new()];
    let mut layer = vec![Vec::new()];
    for _ in 0..max {
        layer = layer
            .iter()
            .flat_map(|w: &Vec<Label>| {
                letters.iter().map(move |&l| {
                    let mut next = w.clone();
                    next.push(l);
                    next
                })
            })
            .collect();
        out.extend(layer.iter().cloned());
    }
    out
}

/// Start and end times worth probing: 0, each timestamp, each timestamp
/// shifted by every guard constant, and all of these nudged by 1/64.
pub fn guard_grid(pattern: &Pattern, w: &TimedWord) -> Vec<f64> {
    let mut constants: Vec<f64> = pattern
        .automaton()
        .transitions
        .iter()
        .flat_map(|t| t.guards.iter().map(|g| g.constant as f64))
        .collect();
    constants.push(0.0);
    let mut points = vec![0.0];
    for e in w.events() {
        for &c in &constants {
            for base in [e.time - c, e.time + c] {
                points.extend([base - 1.0 / 64.0, base, base + 1.0 / 64.0]);
            }
        }
    }
    points.retain(|&x| x >= 0.0);
    points.sort_by(f64::total_cmp);
    points.dedup();
    points
}

/// Checks every ordered pair `t < t'` of `points` against the oracle and
/// returns the number of pairs.
pub fn check_all_pairs(
    pattern: &Pattern,
    w: &TimedWord,
    zones: &[ZoneRecord],
    points: &[f64],
) -> Result<usize, String> {
    let mut pairs = 0;
    for (a, &t) in points.iter().enumerate() {
        let candidates: Vec<&ZoneRecord> = zones.iter().filter(|r| r.zone.t.contains(t)).collect();
        for &tp in &points[a + 1..] {
            let want = accepts_restriction(pattern, w, t, tp).unwrap();
            let got = candidates.iter().any(|r| r.zone.contains(t, tp));
            if want != got {
                return Err(format!(
                    "at (t, t') = ({t}, {tp}): oracle {want}, zones {got}"
                ));
            }
            pairs += 1;
        }
    }
    Ok(pairs)
}

fn admits(w: &TimeWindow, d: f64) -> bool {
    let lo = w.lower as f64;
    let above = if w.lower_strict { d > lo } else { d >= lo };
    let below = match w.upper {
        None => true,
        Some(u) if w.upper_strict => d < u as f64,
        Some(u) => d <= u as f64,
    };
    above && below
}

/// Direct semantics of an expression on the events strictly inside
/// `(t, t')`. A sub-match of events `i..j` begins at `t` when `i == 0` and
/// otherwise at the `i`-th event, and ends at the `j`-th event, or at `t'`
/// when nothing follows.
pub fn tre_accepts(tre: &Tre, w: &TimedWord, t: f64, t_prime: f64) -> bool {
    let events: Vec<_> = w
        .events()
        .iter()
        .filter(|e| e.time > t && e.time < t_prime)
        .copied()
        .collect();
    let mut sem = Semantics {
        labels: events.iter().map(|e| e.label).collect(),
        times: events.iter().map(|e| e.time).collect(),
        t,
        t_prime,
        memo: HashMap::new(),
    };
    let n = events.len();
    sem.holds(tre, 0, n)
}

struct Semantics {
    labels: Vec<Label>,
    times: Vec<f64>,
    t: f64,
    t_prime: f64,
    memo: HashMap<(usize, usize, usize), bool>,
}

impl Semantics {
    fn end(&self, j: usize) -> f64 {
        self.times.get(j).copied().unwrap_or(self.t_prime)
    }

    fn begin(&self, i: usize) -> f64 {
        if i == 0 {
            self.t
        } else {
            self.end(i)
        }
    }

    fn holds(&mut self, e: &Tre, i: usize, j: usize) -> bool {
        let key = (e as *const Tre as usize, i, j);
        if let Some(&v) = self.memo.get(&key) {
            return v;
        }
        let v = match e {
            Tre::Atom(l) => j == i + 1 && self.labels[i] == *l,
            Tre::Concat(parts) => self.sequence(parts, i, j),
            Tre::Union(parts) => parts.iter().any(|p| self.holds(p, i, j)),
            Tre::Star(c) => i == j || self.iterations(c, i, j),
            Tre::Plus(c) => self.holds(c, i, j) || self.iterations(c, i, j),
            Tre::Within(c, w) => admits(w, self.end(j) - self.begin(i)) && self.holds(c, i, j),
        };
        self.memo.insert(key, v);
        v
    }

    fn sequence(&mut self, parts: &[Tre], i: usize, j: usize) -> bool {
        match parts {
            [] => i == j,
            [last] => self.holds(last, i, j),
            [head, rest @ ..] => {
                (i..=j).any(|k| self.holds(head, i, k) && self.sequence(rest, k, j))
            }
        }
    }

    /// One or more non-empty iterations of `c` covering `i..j`.
    fn iterations(&mut self, c: &Tre, i: usize, j: usize) -> bool {
        (i + 1..=j).any(|k| self.holds(c, i, k) && (k == j || self.iterations(c, k, j)))
    }
}
