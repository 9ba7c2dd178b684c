//! Strict numeric parsing for cell values.
//!
//! `f64::from_str` is too permissive for quality checks: it accepts "inf",
//! "NaN" and similar spellings that must never count as numeric data. The
//! grammar here is optional sign, decimal digits with an optional decimal
//! point, and an optional scientific-notation exponent. Comma decimal
//! separators are rejected (ambiguous with the comma delimiter).

/// Parses a trimmed cell as a finite number, or returns `None`.
pub fn parse_number(s: &str) -> Option<f64> {
    if !is_numeric_literal(s) {
        return None;
    }
    s.parse::<f64>().ok().filter(|v| v.is_finite())
}

/// True when the string matches `[+-]? ( digits [. digits?] | . digits ) ( [eE] [+-]? digits )?`.
pub fn is_numeric_literal(s: &str) -> bool {
    let b = s.as_bytes();
    let mut i = 0;
    if i < b.len() && (b[i] == b'+' || b[i] == b'-') {
        i += 1;
    }
    let int_digits = eat_digits(b, &mut i);
    let mut frac_digits = 0;
    if i < b.len() && b[i] == b'.' {
        i += 1;
        frac_digits = eat_digits(b, &mut i);
    }
    if int_digits == 0 && frac_digits == 0 {
        return false;
    }
    if i < b.len() && (b[i] == b'e' || b[i] == b'E') {
        i += 1;
        if i < b.len() && (b[i] == b'+' || b[i] == b'-') {
            i += 1;
        }
        if eat_digits(b, &mut i) == 0 {
            return false;
        }
    }
    i == b.len()
}

/// True when every character is an ASCII digit (and the string is non-empty).
pub fn is_pure_digits(s: &str) -> bool {
    !s.is_empty() && s.bytes().all(|c| c.is_ascii_digit())
}

fn eat_digits(b: &[u8], i: &mut usize) -> usize {
    let start = *i;
    while *i < b.len() && b[*i].is_ascii_digit() {
        *i += 1;
    }
    *i - start
}
