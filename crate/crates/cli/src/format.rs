//! Number formatting and exact real parsing.

use std::fmt;
use std::str::FromStr;

use num_rational::Rational64;
use num_traits::{ToPrimitive, Zero};

/// `%.12g`: 12 significant digits, trailing zeros dropped, exponent form
/// outside `[1e-5, 1e12)`.
pub fn g12(x: f64) -> String {
    if x == 0.0 {
        return "0".into();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let sci = format!("{:.11e}", x);
    let (mantissa, exp) = sci.split_once('e').expect("exponent form");
    let exp: i32 = exp.parse().expect("integer exponent");
    if !(-5..12).contains(&exp) {
        let m = trim(mantissa);
        let sign = if exp < 0 { '-' } else { '+' };
        return format!("{m}e{sign}{:02}", exp.abs());
    }
    trim(&format!("{:.*}", (11 - exp) as usize, x)).to_string()
}

fn trim(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

pub fn rational_g12(x: Rational64) -> String {
    g12(x.to_f64().unwrap_or(f64::NAN))
}

/// `7/2 (3.5)`, or just `3` for integers.
pub fn exact(x: Rational64) -> String {
    if x.is_integer() {
        x.to_integer().to_string()
    } else {
        format!("{x} ({})", rational_g12(x))
    }
}

/// A non-negative real read exactly from a decimal (`0.875`) or a fraction
/// (`7/8`).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ExactReal(pub Rational64);

impl FromStr for ExactReal {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let s = s.trim();
        let bad = || format!("`{s}` is not a decimal or p/q fraction");
        if let Some((p, q)) = s.split_once('/') {
            let p: i64 = p.trim().parse().map_err(|_| bad())?;
            let q: i64 = q.trim().parse().map_err(|_| bad())?;
            if q == 0 {
                return Err(format!("`{s}` has a zero denominator"));
            }
            return Ok(ExactReal(Rational64::new(p, q)));
        }
        let (neg, body) = match s.strip_prefix('-') {
            Some(rest) => (true, rest),
            None => (false, s.strip_prefix('+').unwrap_or(s)),
        };
        let (int, frac) = body.split_once('.').unwrap_or((body, ""));
        if int.is_empty() && frac.is_empty()
            || !int.chars().chain(frac.chars()).all(|c| c.is_ascii_digit())
            || frac.len() > 15
        {
            return Err(bad());
        }
        let digits: i64 = format!("{int}{frac}").parse().map_err(|_| bad())?;
        let value = Rational64::new(digits, 10i64.pow(frac.len() as u32));
        Ok(ExactReal(if neg { -value } else { value }))
    }
}

impl fmt::Display for ExactReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl ExactReal {
    pub fn is_negative(&self) -> bool {
        self.0 < Rational64::zero()
    }
}
