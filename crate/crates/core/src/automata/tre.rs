//! Timed regular expressions.
//!
//! ```text
//! expr     := alt
//! alt      := cat ( '|' cat )*
//! cat      := rep rep*
//! rep      := base ( '*' | '+' | '%' interval )*
//! base     := ATOM | '(' alt ')'
//! interval := ( '(' | '[' ) INT ',' ( INT | 'inf' ) ( ')' | ']' )
//! ```

use std::fmt;

use thiserror::Error;

use crate::word::Label;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TreError {
    #[error("syntax error at position {position}: {message}")]
    Syntax { position: usize, message: String },
    #[error("invalid interval at position {position}: {message}")]
    Interval { position: usize, message: String },
}

/// Duration window of a `%` operator. `upper == None` means `+inf`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TimeWindow {
    pub lower: u32,
    pub lower_strict: bool,
    pub upper: Option<u32>,
    pub upper_strict: bool,
}

impl TimeWindow {
    pub fn new(lower: u32, lower_strict: bool, upper: Option<u32>, upper_strict: bool) -> Self {
        TimeWindow {
            lower,
            lower_strict,
            upper,
            upper_strict: upper_strict || upper.is_none(),
        }
    }

    /// `(lower, upper)` with both ends strict.
    pub fn open(lower: u32, upper: u32) -> Self {
        TimeWindow::new(lower, true, Some(upper), true)
    }

    fn check(&self) -> Result<(), String> {
        match self.upper {
            Some(u) if self.lower > u => Err(format!(
                "lower bound {} exceeds upper bound {u}",
                self.lower
            )),
            Some(u) if self.lower == u && (self.lower_strict || self.upper_strict) => {
                Err(format!("interval around {u} is empty"))
            }
            None if !self.upper_strict => Err("an infinite upper bound must be open".into()),
            _ => Ok(()),
        }
    }
}

impl fmt::Display for TimeWindow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let open = if self.lower_strict { '(' } else { '[' };
        write!(f, "{open}{},", self.lower)?;
        match self.upper {
            Some(u) => write!(f, "{u}")?,
            None => write!(f, "inf")?,
        }
        write!(f, "{}", if self.upper_strict { ')' } else { ']' })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Tre {
    Atom(Label),
    Concat(Vec<Tre>),
    Union(Vec<Tre>),
    Star(Box<Tre>),
    Plus(Box<Tre>),
    Within(Box<Tre>, TimeWindow),
}

impl Tre {
    pub fn parse(text: &str) -> Result<Tre, TreError> {
        parse_tre(text)
    }
}

impl fmt::Display for Tre {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tre::Atom(l) => write!(f, "{l}"),
            Tre::Concat(items) => {
                for item in items {
                    match item {
                        Tre::Union(_) | Tre::Concat(_) => write!(f, "({item})")?,
                        _ => write!(f, "{item}")?,
                    }
                }
                Ok(())
            }
            Tre::Union(items) => {
                for (k, item) in items.iter().enumerate() {
                    if k > 0 {
                        write!(f, "|")?;
                    }
                    match item {
                        Tre::Union(_) => write!(f, "({item})")?,
                        _ => write!(f, "{item}")?,
                    }
                }
                Ok(())
            }
            Tre::Star(c) => write_postfix(f, c, "*"),
            Tre::Plus(c) => write_postfix(f, c, "+"),
            Tre::Within(c, w) => write_postfix(f, c, &format!("%{w}")),
        }
    }
}

fn write_postfix(f: &mut fmt::Formatter<'_>, child: &Tre, op: &str) -> fmt::Result {
    match child {
        Tre::Atom(_) | Tre::Star(_) | Tre::Plus(_) | Tre::Within(..) => write!(f, "{child}{op}"),
        _ => write!(f, "({child}){op}"),
    }
}

struct Parser {
    chars: Vec<char>,
    pos: usize,
}

/// Parses the concrete syntax. Error positions are 1-based character
/// columns; the end of input is one past the last character.
pub fn parse_tre(text: &str) -> Result<Tre, TreError> {
    let mut p = Parser {
        chars: text.chars().collect(),
        pos: 0,
    };
    let e = p.alt()?;
    p.skip_ws();
    if p.pos < p.chars.len() {
        return Err(p.syntax(format!("unexpected {:?}", p.chars[p.pos])));
    }
    Ok(e)
}

impl Parser {
    fn skip_ws(&mut self) {
        while self.pos < self.chars.len() && self.chars[self.pos].is_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn syntax(&self, message: String) -> TreError {
        TreError::Syntax {
            position: self.pos + 1,
            message,
        }
    }

    fn describe_here(&mut self) -> String {
        match self.peek() {
            Some(c) => format!("unexpected {c:?}"),
            None => "unexpected end of input".to_string(),
        }
    }

    fn expect(&mut self, c: char) -> Result<(), TreError> {
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            let found = self.describe_here();
            Err(self.syntax(format!("expected {c:?}, {found}")))
        }
    }

    fn alt(&mut self) -> Result<Tre, TreError> {
        let mut items = vec![self.cat()?];
        while self.peek() == Some('|') {
            self.pos += 1;
            items.push(self.cat()?);
        }
        Ok(if items.len() == 1 {
            items.pop().unwrap()
        } else {
            Tre::Union(items)
        })
    }

    fn starts_base(&mut self) -> bool {
        matches!(self.peek(), Some(c) if c == '(' || c.is_ascii_alphanumeric())
    }

    fn cat(&mut self) -> Result<Tre, TreError> {
        let mut items = vec![self.rep()?];
        while self.starts_base() {
            items.push(self.rep()?);
        }
        Ok(if items.len() == 1 {
            items.pop().unwrap()
        } else {
            Tre::Concat(items)
        })
    }

    fn rep(&mut self) -> Result<Tre, TreError> {
        let mut e = self.base()?;
        loop {
            match self.peek() {
                Some('*') => {
                    self.pos += 1;
                    e = Tre::Star(Box::new(e));
                }
                Some('+') => {
                    self.pos += 1;
                    e = Tre::Plus(Box::new(e));
                }
                Some('%') => {
                    self.pos += 1;
                    let w = self.interval()?;
                    e = Tre::Within(Box::new(e), w);
                }
                _ => return Ok(e),
            }
        }
    }

    fn base(&mut self) -> Result<Tre, TreError> {
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let e = self.alt()?;
                self.expect(')')?;
                Ok(e)
            }
            Some(c) if c.is_ascii_alphanumeric() => {
                self.pos += 1;
                Ok(Tre::Atom(Label::new(c).expect("alphanumeric")))
            }
            _ => {
                let found = self.describe_here();
                Err(self.syntax(format!("expected an atom or '(', {found}")))
            }
        }
    }

    fn int(&mut self) -> Result<u32, TreError> {
        self.skip_ws();
        if self.chars.get(self.pos) == Some(&'-') {
            return Err(TreError::Interval {
                position: self.pos + 1,
                message: "negative constant".into(),
            });
        }
        let start = self.pos;
        while self.pos < self.chars.len() && self.chars[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            let found = self.describe_here();
            return Err(self.syntax(format!("expected an integer, {found}")));
        }
        let digits: String = self.chars[start..self.pos].iter().collect();
        digits.parse().map_err(|_| TreError::Interval {
            position: start + 1,
            message: format!("constant {digits} is too large"),
        })
    }

    fn interval(&mut self) -> Result<TimeWindow, TreError> {
        let start = self.pos + 1;
        let lower_strict = match self.peek() {
            Some('(') => true,
            Some('[') => false,
            _ => {
                let found = self.describe_here();
                return Err(self.syntax(format!("expected '(' or '[', {found}")));
            }
        };
        self.pos += 1;
        let lower = self.int()?;
        self.expect(',')?;
        let upper = if self.peek() == Some('i') {
            for c in "inf".chars() {
                self.expect(c)?;
            }
            None
        } else {
            Some(self.int()?)
        };
        let upper_strict = match self.peek() {
            Some(')') => true,
            Some(']') => false,
            _ => {
                let found = self.describe_here();
                return Err(self.syntax(format!("expected ')' or ']', {found}")));
            }
        };
        self.pos += 1;
        let w = TimeWindow {
            lower,
            lower_strict,
            upper,
            upper_strict,
        };
        w.check().map_err(|message| TreError::Interval {
            position: start,
            message,
        })?;
        Ok(w)
    }
}
