//! Complex literals of the form `a`, `bi`, `a+bi` and `a-bi`.
//!
//! Components are plain decimals (`-1`, `2.5`, `.5`, `3.`), no exponents and
//! no whitespace. The imaginary coefficient is mandatory: `i` alone is
//! rejected, `1i` is accepted.

use std::fmt;

use crate::ComplexValue;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("cannot parse `{input}` as a complex number: {reason}")]
pub struct ParseComplexError {
    pub input: String,
    pub reason: &'static str,
}

pub fn parse_complex(input: &str) -> Result<ComplexValue, ParseComplexError> {
    let fail = |reason| ParseComplexError {
        input: input.to_string(),
        reason,
    };
    if input.is_empty() {
        return Err(fail("empty input"));
    }
    let Some(body) = input.strip_suffix('i') else {
        return parse_decimal(input)
            .map(|re| ComplexValue::new(re, 0.0))
            .ok_or_else(|| fail("bad real part"));
    };
    // the imaginary part starts at the last sign that is not leading
    let split = body.rfind(['+', '-']).filter(|&pos| pos > 0);
    let (re, im) = match split {
        Some(pos) => (
            parse_decimal(&body[..pos]).ok_or_else(|| fail("bad real part"))?,
            parse_decimal(&body[pos..]).ok_or_else(|| fail("bad imaginary part"))?,
        ),
        None => (
            0.0,
            parse_decimal(body).ok_or_else(|| fail("bad imaginary part"))?,
        ),
    };
    Ok(ComplexValue::new(re, im))
}

fn parse_decimal(text: &str) -> Option<f64> {
    let digits = text.strip_prefix(['+', '-']).unwrap_or(text);
    let (int, frac) = digits.split_once('.').unwrap_or((digits, ""));
    let all_digits = |s: &str| s.bytes().all(|b| b.is_ascii_digit());
    if int.is_empty() && frac.is_empty() || !all_digits(int) || !all_digits(frac) {
        return None;
    }
    text.parse().ok()
}

/// Shortest round-trip rendering, e.g. `1.635086681770856-0.09276470218990829i`.
pub struct Exact(pub ComplexValue);

/// Fixed-decimal rendering with spaced sign, e.g. `1.6351 - 0.0928i`.
pub struct Fixed(pub ComplexValue, pub usize);

fn sign(im: f64) -> char {
    if im.is_sign_negative() {
        '-'
    } else {
        '+'
    }
}

impl fmt::Display for Exact {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = self.0;
        write!(f, "{}{}{}i", c.re, sign(c.im), c.im.abs())
    }
}

impl fmt::Display for Fixed {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (c, prec) = (self.0, self.1);
        write!(f, "{:.prec$} {} {:.prec$}i", c.re, sign(c.im), c.im.abs())
    }
}
