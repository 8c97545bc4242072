use std::fmt::Write;

use crate::zones::{Bound, Interval, MatchZone};

pub const SEPARATOR: &str = "=============================";

/// Up to 10 significant digits, no trailing zeros, `inf` for infinities.
pub fn format_number(v: f64) -> String {
    if v.is_infinite() {
        return if v > 0.0 { "inf" } else { "-inf" }.to_string();
    }
    let rounded: f64 = format!("{v:.9e}").parse().expect("formatted float parses");
    if rounded == 0.0 {
        return "0".to_string();
    }
    format!("{rounded}")
}

fn op(b: Bound) -> &'static str {
    if b.is_strict() || !b.is_finite() {
        "<"
    } else {
        "<="
    }
}

fn line(out: &mut String, name: &str, iv: &Interval) {
    writeln!(
        out,
        "{} {} {name} {} {}",
        format_number(iv.lower.value()),
        op(iv.lower),
        op(iv.upper),
        format_number(iv.upper.value()),
    )
    .unwrap();
}

/// The four-line block printed for one zone.
pub fn format_zone(z: &MatchZone) -> String {
    let mut out = String::new();
    line(&mut out, "t", &z.t);
    line(&mut out, "t'", &z.t_prime);
    line(&mut out, "t' - t", &z.diff);
    out.push_str(SEPARATOR);
    out.push('\n');
    out
}
