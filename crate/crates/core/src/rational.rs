//! Exact rational scalars.
//!
//! `Rational` is an arbitrary-precision fraction kept in lowest terms with a
//! positive denominator; zero is always `0/1`. Those invariants are maintained
//! by the underlying `num_rational::BigRational`.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

/// Coefficient field for every symbolic computation in this crate.
pub type Rational = BigRational;

/// Shorthand for an integer rational.
pub fn rational(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Shorthand for `num/den`. Panics on a zero denominator.
pub fn rational_frac(num: i64, den: i64) -> Rational {
    assert!(den != 0, "zero denominator");
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Error produced when a rational literal cannot be parsed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RationalParseError {
    Malformed(String),
    ZeroDenominator(String),
}

impl fmt::Display for RationalParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RationalParseError::Malformed(s) => write!(f, "malformed rational literal `{s}`"),
            RationalParseError::ZeroDenominator(s) => {
                write!(f, "zero denominator in rational literal `{s}`")
            }
        }
    }
}

impl std::error::Error for RationalParseError {}

/// Parses `p` or `p/q` with an optional leading sign.
pub fn parse_rational(text: &str) -> Result<Rational, RationalParseError> {
    let trimmed = text.trim();
    let (num_text, den_text) = match trimmed.split_once('/') {
        Some((n, d)) => (n.trim(), Some(d.trim())),
        None => (trimmed, None),
    };
    let num = BigInt::from_str(num_text)
        .map_err(|_| RationalParseError::Malformed(text.to_owned()))?;
    let den = match den_text {
        Some(d) => BigInt::from_str(d).map_err(|_| RationalParseError::Malformed(text.to_owned()))?,
        None => BigInt::one(),
    };
    if den == BigInt::from(0) {
        return Err(RationalParseError::ZeroDenominator(text.to_owned()));
    }
    Ok(Rational::new(num, den))
}

/// Canonical rendering: `p` for integers, `p/q` otherwise.
pub fn render_rational(value: &Rational) -> String {
    if value.denom().is_one() {
        value.numer().to_string()
    } else {
        format!("{}/{}", value.numer(), value.denom())
    }
}

/// Lossy conversion for the numeric subsystems.
pub fn rational_to_f64(value: &Rational) -> f64 {
    let numer = bigint_to_f64(value.numer());
    let denom = bigint_to_f64(value.denom());
    numer / denom
}

fn bigint_to_f64(value: &BigInt) -> f64 {
    // `to_string` round-trip keeps full precision for desk-scale integers and
    // degrades gracefully for large ones.
    value.to_string().parse::<f64>().unwrap_or(f64::NAN)
}
