use std::collections::VecDeque;

use crate::word::{Event, EventStream, TimedWord, WordError};

/// Random access to events by 1-based index.
pub trait EventWindow {
    /// The event at `index`, or `None` past the end of the word.
    fn event(&mut self, index: usize) -> Result<Option<Event>, WordError>;

    /// Timestamp of the event just before `index`; zero for `index == 1`.
    fn time_before(&mut self, index: usize) -> Result<f64, WordError>;
}

impl EventWindow for TimedWord {
    fn event(&mut self, index: usize) -> Result<Option<Event>, WordError> {
        Ok(self.events().get(index - 1).copied())
    }

    fn time_before(&mut self, index: usize) -> Result<f64, WordError> {
        Ok(if index <= 1 {
            0.0
        } else {
            self.events()[index - 2].time
        })
    }
}

/// A sliding window over a single-pass stream.
///
/// Events are pulled on demand and kept until [`EventBuffer::release_before`]
/// moves the window start past them.
pub struct EventBuffer<I> {
    stream: EventStream<I>,
    events: VecDeque<Event>,
    /// index of `events[0]`
    first: usize,
    /// timestamp of event `first - 1`
    before_first: f64,
    ended: bool,
    peak: usize,
}

impl<I> EventBuffer<I>
where
    I: Iterator<Item = Result<Event, WordError>>,
{
    pub fn new(stream: EventStream<I>) -> Self {
        EventBuffer {
            stream,
            events: VecDeque::new(),
            first: 1,
            before_first: 0.0,
            ended: false,
            peak: 0,
        }
    }

    fn pull(&mut self) -> Result<bool, WordError> {
        if self.ended {
            return Ok(false);
        }
        match self.stream.next() {
            Some(Ok(e)) => {
                self.events.push_back(e);
                self.peak = self.peak.max(self.events.len());
                Ok(true)
            }
            Some(Err(e)) => {
                self.ended = true;
                Err(e)
            }
            None => {
                self.ended = true;
                Ok(false)
            }
        }
    }

    /// Drops every event with an index below `index`.
    pub fn release_before(&mut self, index: usize) -> Result<(), WordError> {
        while self.first < index {
            if self.events.is_empty() && !self.pull()? {
                self.first = index;
                break;
            }
            let e = self.events.pop_front().expect("pulled above");
            self.before_first = e.time;
            self.first += 1;
        }
        Ok(())
    }

    /// Events pulled from the underlying stream so far.
    pub fn events_read(&self) -> usize {
        self.stream.pulled()
    }

    /// Largest number of events held at once.
    pub fn peak(&self) -> usize {
        self.peak
    }
}

impl<I> EventWindow for EventBuffer<I>
where
    I: Iterator<Item = Result<Event, WordError>>,
{
    fn event(&mut self, index: usize) -> Result<Option<Event>, WordError> {
        assert!(index >= self.first, "event {index} was already released");
        while self.first + self.events.len() <= index {
            if !self.pull()? {
                return Ok(None);
            }
        }
        Ok(self.events.get(index - self.first).copied())
    }

    fn time_before(&mut self, index: usize) -> Result<f64, WordError> {
        assert!(
            index >= self.first,
            "event {} was already released",
            index - 1
        );
        if index == self.first {
            return Ok(self.before_first);
        }
        Ok(self.event(index - 1)?.map_or(self.before_first, |e| e.time))
    }
}
