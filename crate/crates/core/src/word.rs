//! Timed words: labelled, timestamped events and the restriction operator.

use std::fmt;
use std::io::BufRead;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum WordError {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("event {index}: timestamp {time} is smaller than the previous timestamp {previous}")]
    NonMonotone {
        index: usize,
        previous: f64,
        time: f64,
    },
    #[error("invalid label {0:?}: expected a single character in [a-zA-Z0-9]")]
    InvalidLabel(String),
    #[error("invalid timestamp {0}: must be finite and non-negative")]
    InvalidTime(f64),
    #[error("empty restriction interval ({t}, {t_prime})")]
    InvalidInterval { t: f64, t_prime: f64 },
    #[error("read error: {0}")]
    Io(String),
}

/// One symbol of the alphabet. Always an ASCII alphanumeric character.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Label(u8);

impl Label {
    pub fn new(c: char) -> Result<Label, WordError> {
        if c.is_ascii_alphanumeric() {
            Ok(Label(c as u8))
        } else {
            Err(WordError::InvalidLabel(c.to_string()))
        }
    }

    /// Parses a label from a string that must hold exactly one character.
    pub fn parse(s: &str) -> Result<Label, WordError> {
        let mut chars = s.chars();
        match (chars.next(), chars.next()) {
            (Some(c), None) => Label::new(c).map_err(|_| WordError::InvalidLabel(s.to_string())),
            _ => Err(WordError::InvalidLabel(s.to_string())),
        }
    }

    pub fn as_char(self) -> char {
        self.0 as char
    }

    /// Dense index in `0..128`, usable for label-indexed tables.
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.as_char())
    }
}

impl fmt::Debug for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "'{}'", self.as_char())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Event {
    pub label: Label,
    pub time: f64,
}

impl Event {
    pub fn new(label: Label, time: f64) -> Result<Event, WordError> {
        if time.is_finite() && time >= 0.0 {
            Ok(Event { label, time })
        } else {
            Err(WordError::InvalidTime(time))
        }
    }
}

/// Prints the event in the event-line format. The timestamp uses the
/// shortest representation that parses back to the same value.
impl fmt::Display for Event {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}", self.label, self.time)
    }
}

fn is_decimal_literal(s: &str) -> bool {
    let (int, frac) = match s.split_once('.') {
        Some((i, f)) => (i, Some(f)),
        None => (s, None),
    };
    let digits = |p: &str| p.bytes().all(|b| b.is_ascii_digit());
    match frac {
        None => !int.is_empty() && digits(int),
        Some(f) => (!int.is_empty() || !f.is_empty()) && digits(int) && digits(f),
    }
}

/// Parses one line of the event-line format.
///
/// Returns `Ok(None)` for blank lines and `#` comments. `line_no` is only
/// used for error reporting.
pub fn parse_event_line(line: &str, line_no: usize) -> Result<Option<Event>, WordError> {
    let trimmed = line.trim();
    if trimmed.is_empty() || trimmed.starts_with('#') {
        return Ok(None);
    }
    let err = |message: String| WordError::Parse {
        line: line_no,
        message,
    };
    let mut fields = trimmed.split([' ', '\t']).filter(|f| !f.is_empty());
    let (label, time) = match (fields.next(), fields.next(), fields.next()) {
        (Some(l), Some(t), None) => (l, t),
        _ => {
            return Err(err(format!(
                "expected `<label> <timestamp>`, got {trimmed:?}"
            )))
        }
    };
    let label = Label::parse(label).map_err(|e| err(e.to_string()))?;
    if let Some(rest) = time.strip_prefix('-') {
        if is_decimal_literal(rest) {
            return Err(err(format!("negative timestamp {time}")));
        }
    }
    if !is_decimal_literal(time) {
        return Err(err(format!("unparsable timestamp {time:?}")));
    }
    let value: f64 = time
        .parse()
        .map_err(|_| err(format!("unparsable timestamp {time:?}")))?;
    Event::new(label, value)
        .map(Some)
        .map_err(|e| err(e.to_string()))
}

/// A finite sequence of events with non-decreasing timestamps.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct TimedWord {
    events: Vec<Event>,
}

impl TimedWord {
    pub fn new(events: Vec<Event>) -> Result<TimedWord, WordError> {
        for (k, pair) in events.windows(2).enumerate() {
            if pair[1].time < pair[0].time {
                return Err(WordError::NonMonotone {
                    index: k + 2,
                    previous: pair[0].time,
                    time: pair[1].time,
                });
            }
        }
        Ok(TimedWord { events })
    }

    /// Builds a word from `(label, time)` pairs; convenient in tests.
    pub fn from_pairs(pairs: &[(char, f64)]) -> Result<TimedWord, WordError> {
        let events = pairs
            .iter()
            .map(|&(c, t)| Event::new(Label::new(c)?, t))
            .collect::<Result<Vec<_>, _>>()?;
        TimedWord::new(events)
    }

    pub fn events(&self) -> &[Event] {
        &self.events
    }

    pub fn len(&self) -> usize {
        self.events.len()
    }

    pub fn is_empty(&self) -> bool {
        self.events.is_empty()
    }

    pub fn into_events(self) -> Vec<Event> {
        self.events
    }

    /// A stream over a copy of this word's events.
    pub fn stream(&self) -> EventStream<impl Iterator<Item = Result<Event, WordError>> + '_> {
        EventStream::new(self.events.iter().copied().map(Ok))
    }
}

/// The restriction of `w` to the open interval `(t, t_prime)`: events
/// strictly inside the interval, shifted so that `t` becomes time zero.
pub fn restrict(w: &TimedWord, t: f64, t_prime: f64) -> Result<TimedWord, WordError> {
    if t.partial_cmp(&t_prime) != Some(std::cmp::Ordering::Less) {
        return Err(WordError::InvalidInterval { t, t_prime });
    }
    let events = restricted_slice(w.events(), t, t_prime)
        .iter()
        .map(|e| Event {
            label: e.label,
            time: e.time - t,
        })
        .collect();
    Ok(TimedWord { events })
}

/// The unshifted events of `events` lying strictly inside `(t, t_prime)`.
pub(crate) fn restricted_slice(events: &[Event], t: f64, t_prime: f64) -> &[Event] {
    let lo = events.partition_point(|e| e.time <= t);
    let hi = events.partition_point(|e| e.time < t_prime);
    &events[lo..hi.max(lo)]
}

/// A single-pass source of events that enforces timestamp monotonicity at
/// pull time.
pub struct EventStream<I> {
    inner: I,
    previous: Option<f64>,
    pulled: usize,
    failed: bool,
}

impl<I> EventStream<I>
where
    I: Iterator<Item = Result<Event, WordError>>,
{
    pub fn new(inner: I) -> Self {
        EventStream {
            inner,
            previous: None,
            pulled: 0,
            failed: false,
        }
    }

    /// Number of events successfully yielded so far.
    pub fn pulled(&self) -> usize {
        self.pulled
    }
}

impl<I> Iterator for EventStream<I>
where
    I: Iterator<Item = Result<Event, WordError>>,
{
    type Item = Result<Event, WordError>;

    fn next(&mut self) -> Option<Self::Item> {
        if self.failed {
            return None;
        }
        let item = self.inner.next()?;
        let event = match item {
            Ok(e) => e,
            Err(e) => {
                self.failed = true;
                return Some(Err(e));
            }
        };
        if let Some(previous) = self.previous {
            if event.time < previous {
                self.failed = true;
                return Some(Err(WordError::NonMonotone {
                    index: self.pulled + 1,
                    previous,
                    time: event.time,
                }));
            }
        }
        self.previous = Some(event.time);
        self.pulled += 1;
        Some(Ok(event))
    }
}

/// Lazily parses events from a line-oriented reader. Out-of-order
/// timestamps are reported with their line number.
pub struct LineEvents<R> {
    reader: R,
    line_no: usize,
    buf: String,
    previous: Option<f64>,
}

impl<R: BufRead> LineEvents<R> {
    pub fn new(reader: R) -> Self {
        LineEvents {
            reader,
            line_no: 0,
            buf: String::new(),
            previous: None,
        }
    }
}

impl<R: BufRead> Iterator for LineEvents<R> {
    type Item = Result<Event, WordError>;

    fn next(&mut self) -> Option<Self::Item> {
        loop {
            self.buf.clear();
            match self.reader.read_line(&mut self.buf) {
                Ok(0) => return None,
                Ok(_) => {}
                Err(e) => return Some(Err(WordError::Io(e.to_string()))),
            }
            self.line_no += 1;
            match parse_event_line(&self.buf, self.line_no) {
                Ok(Some(event)) => {
                    if let Some(previous) = self.previous.filter(|&p| event.time < p) {
                        return Some(Err(WordError::Parse {
                            line: self.line_no,
                            message: format!(
                                "timestamp {} is smaller than the previous timestamp {previous}",
                                event.time
                            ),
                        }));
                    }
                    self.previous = Some(event.time);
                    return Some(Ok(event));
                }
                Ok(None) => continue,
                Err(e) => return Some(Err(e)),
            }
        }
    }
}

/// Reads a whole timed word from a reader in the event-line format.
pub fn read_word<R: BufRead>(reader: R) -> Result<TimedWord, WordError> {
    let events = EventStream::new(LineEvents::new(reader)).collect::<Result<Vec<_>, _>>()?;
    Ok(TimedWord { events })
}
