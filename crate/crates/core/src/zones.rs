//! Bound arithmetic and match zones.
//!
//! A [`MatchZone`] is a conjunction of bounds on the start time `t`, the end
//! time `t'`, and the duration `t' - t`. Canonicalization closes the three
//! constraints over each other, which is shortest-path closure on a
//! three-node difference graph (the zero clock, `t`, and `t'`).

use std::cmp::Ordering;
use std::fmt;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ZoneError {
    #[error("cannot add +inf and -inf")]
    OppositeInfinities,
}

/// A constant together with a strictness flag.
///
/// Whether the bound is a lower or an upper bound is decided by where it is
/// stored; infinite bounds are always strict.
#[derive(Clone, Copy, PartialEq)]
pub struct Bound {
    value: f64,
    strict: bool,
}

impl Bound {
    pub const INFINITY: Bound = Bound {
        value: f64::INFINITY,
        strict: true,
    };
    pub const NEG_INFINITY: Bound = Bound {
        value: f64::NEG_INFINITY,
        strict: true,
    };

    /// A non-strict bound (`<=` or `>=`).
    pub fn closed(value: f64) -> Bound {
        Bound::new(value, false)
    }

    /// A strict bound (`<` or `>`).
    pub fn open(value: f64) -> Bound {
        Bound::new(value, true)
    }

    pub fn new(value: f64, strict: bool) -> Bound {
        assert!(!value.is_nan(), "bound value must not be NaN");
        // normalise -0.0 so equal bounds compare and print identically
        let value = if value == 0.0 { 0.0 } else { value };
        Bound {
            value,
            strict: strict || value.is_infinite(),
        }
    }

    pub fn value(self) -> f64 {
        self.value
    }

    pub fn is_strict(self) -> bool {
        self.strict
    }

    pub fn is_finite(self) -> bool {
        self.value.is_finite()
    }

    fn negate(self) -> Bound {
        Bound::new(-self.value, self.strict)
    }

    /// Orders bounds read as upper bounds: smaller is tighter, and at equal
    /// values a strict bound is tighter.
    fn cmp_upper(self, other: Bound) -> Ordering {
        self.value
            .partial_cmp(&other.value)
            .expect("bounds are never NaN")
            .then_with(|| other.strict.cmp(&self.strict))
    }

    fn bits(self) -> (u64, bool) {
        (self.value.to_bits(), self.strict)
    }
}

impl fmt::Debug for Bound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", if self.strict { "<" } else { "<=" }, self.value)
    }
}

/// Sum of two bounds; the result is strict if either operand is.
pub fn bound_add(x: Bound, y: Bound) -> Result<Bound, ZoneError> {
    if x.value.is_infinite() && y.value.is_infinite() && x.value != y.value {
        return Err(ZoneError::OppositeInfinities);
    }
    Ok(Bound::new(x.value + y.value, x.strict || y.strict))
}

/// A lower and an upper bound on one quantity.
#[derive(Clone, Copy, PartialEq, Debug)]
pub struct Interval {
    pub lower: Bound,
    pub upper: Bound,
}

impl Interval {
    pub const UNBOUNDED: Interval = Interval {
        lower: Bound::NEG_INFINITY,
        upper: Bound::INFINITY,
    };

    pub fn new(lower: Bound, upper: Bound) -> Interval {
        Interval { lower, upper }
    }

    pub fn contains(&self, x: f64) -> bool {
        let above = if self.lower.strict {
            x > self.lower.value
        } else {
            x >= self.lower.value
        };
        let below = if self.upper.strict {
            x < self.upper.value
        } else {
            x <= self.upper.value
        };
        above && below
    }

    pub fn is_empty(&self) -> bool {
        match self.lower.value.partial_cmp(&self.upper.value) {
            Some(Ordering::Less) => false,
            Some(Ordering::Equal) => self.lower.strict || self.upper.strict,
            _ => true,
        }
    }

    /// Keeps the tighter of the current and the given lower bound.
    pub fn tighten_lower(&mut self, b: Bound) {
        if b.negate().cmp_upper(self.lower.negate()) == Ordering::Less {
            self.lower = b;
        }
    }

    /// Keeps the tighter of the current and the given upper bound.
    pub fn tighten_upper(&mut self, b: Bound) {
        if b.cmp_upper(self.upper) == Ordering::Less {
            self.upper = b;
        }
    }

    /// Whether the union of the two intervals is again an interval.
    pub fn touches(&self, other: &Interval) -> bool {
        let (first, second) =
            if self.lower.negate().cmp_upper(other.lower.negate()) != Ordering::Less {
                (self, other)
            } else {
                (other, self)
            };
        // `first` starts no later than `second`
        match second.lower.value.partial_cmp(&first.upper.value) {
            Some(Ordering::Less) => true,
            Some(Ordering::Equal) => !(second.lower.strict && first.upper.strict),
            _ => false,
        }
    }

    /// Smallest interval containing both.
    pub fn hull(&self, other: &Interval) -> Interval {
        let mut out = *self;
        if other.lower.negate().cmp_upper(out.lower.negate()) == Ordering::Greater {
            out.lower = other.lower;
        }
        if other.upper.cmp_upper(out.upper) == Ordering::Greater {
            out.upper = other.upper;
        }
        out
    }
}

/// Bounds on `t`, `t'` and `t' - t`; one element of a match set.
#[derive(Clone, Copy, PartialEq, Debug)]
pub struct MatchZone {
    pub t: Interval,
    pub t_prime: Interval,
    pub diff: Interval,
}

// DBM node indices: the zero clock, t and t'.
const Z: usize = 0;
const T: usize = 1;
const P: usize = 2;

impl MatchZone {
    pub fn new(t: Interval, t_prime: Interval, diff: Interval) -> MatchZone {
        MatchZone { t, t_prime, diff }
    }

    /// Tightest equivalent zone, or `None` if the zone is empty.
    pub fn normalize(&self) -> Option<MatchZone> {
        if self.t.is_empty() || self.t_prime.is_empty() || self.diff.is_empty() {
            return None;
        }
        // m[x][y] bounds x - y from above.
        let mut m = [[Bound::closed(0.0); 3]; 3];
        m[T][Z] = self.t.upper;
        m[Z][T] = self.t.lower.negate();
        m[P][Z] = self.t_prime.upper;
        m[Z][P] = self.t_prime.lower.negate();
        m[P][T] = self.diff.upper;
        m[T][P] = self.diff.lower.negate();

        for k in 0..3 {
            for i in 0..3 {
                for j in 0..3 {
                    if i == j || i == k || j == k {
                        continue;
                    }
                    // never -inf: empty intervals were rejected above
                    let via = bound_add(m[i][k], m[k][j]).expect("no -inf entries");
                    if via.cmp_upper(m[i][j]) == Ordering::Less {
                        m[i][j] = via;
                    }
                }
            }
        }
        for (i, j) in [(Z, T), (Z, P), (T, P)] {
            let cycle = bound_add(m[i][j], m[j][i]).expect("no -inf entries");
            if cycle.cmp_upper(Bound::closed(0.0)) == Ordering::Less {
                return None;
            }
        }
        Some(MatchZone {
            t: Interval::new(m[Z][T].negate(), m[T][Z]),
            t_prime: Interval::new(m[Z][P].negate(), m[P][Z]),
            diff: Interval::new(m[T][P].negate(), m[P][T]),
        })
    }

    /// Pointwise membership, checked directly against the stored bounds.
    pub fn contains(&self, t: f64, t_prime: f64) -> bool {
        self.t.contains(t) && self.t_prime.contains(t_prime) && self.diff.contains(t_prime - t)
    }

    /// A total key over the exact bit patterns of all six bounds; equal keys
    /// mean equal zones.
    pub fn key(&self) -> [(u64, bool); 6] {
        [
            self.t.lower.bits(),
            self.t.upper.bits(),
            self.t_prime.lower.bits(),
            self.t_prime.upper.bits(),
            self.diff.lower.bits(),
            self.diff.upper.bits(),
        ]
    }
}

/// Equality of normalized zones; `None` stands for the empty zone.
pub fn zone_equal(a: Option<&MatchZone>, b: Option<&MatchZone>) -> bool {
    match (a, b) {
        (None, None) => true,
        (Some(a), Some(b)) => a.key() == b.key(),
        _ => false,
    }
}
