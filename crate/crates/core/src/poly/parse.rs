//! Text grammar for polynomials.
//!
//! Terms are joined by `+`/`-`; each term is an optional rational coefficient
//! (`p` or `p/q`) and `*`-joined variable powers `name^e`. Whitespace is
//! ignored. The renderer in [`super::Polynomial::render`] emits exactly this
//! grammar, so parse-render is an identity.

use std::fmt;

use num_bigint::BigInt;
use num_traits::One;

use crate::rational::Rational;

use super::{Monomial, Polynomial};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParseErrorKind {
    UnexpectedChar(char),
    UnexpectedEnd,
    UnknownVariable(String),
    ZeroDenominator,
    MissingExponent,
}

/// Syntax error with the byte offset where it was detected.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub position: usize,
    pub kind: ParseErrorKind,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            ParseErrorKind::UnexpectedChar(c) => {
                write!(f, "unexpected character `{c}` at position {}", self.position)
            }
            ParseErrorKind::UnexpectedEnd => {
                write!(f, "unexpected end of input at position {}", self.position)
            }
            ParseErrorKind::UnknownVariable(name) => {
                write!(f, "unknown variable `{name}` at position {}", self.position)
            }
            ParseErrorKind::ZeroDenominator => {
                write!(f, "zero denominator at position {}", self.position)
            }
            ParseErrorKind::MissingExponent => {
                write!(f, "missing exponent at position {}", self.position)
            }
        }
    }
}

impl std::error::Error for ParseError {}

struct Lexer<'a> {
    chars: Vec<(usize, char)>,
    cursor: usize,
    len: usize,
    _text: &'a str,
}

impl<'a> Lexer<'a> {
    fn new(text: &'a str) -> Self {
        Lexer {
            chars: text.char_indices().collect(),
            cursor: 0,
            len: text.len(),
            _text: text,
        }
    }

    fn skip_ws(&mut self) {
        while let Some(&(_, c)) = self.chars.get(self.cursor) {
            if c.is_whitespace() {
                self.cursor += 1;
            } else {
                break;
            }
        }
    }

    fn peek(&mut self) -> Option<(usize, char)> {
        self.skip_ws();
        self.chars.get(self.cursor).copied()
    }

    fn bump(&mut self) -> Option<(usize, char)> {
        let item = self.peek();
        if item.is_some() {
            self.cursor += 1;
        }
        item
    }

    fn position(&mut self) -> usize {
        self.peek().map(|(p, _)| p).unwrap_or(self.len)
    }

    /// Reads a digit run; assumes the next character is a digit.
    fn integer(&mut self) -> BigInt {
        let mut digits = String::new();
        while let Some(&(_, c)) = self.chars.get(self.cursor) {
            if c.is_ascii_digit() {
                digits.push(c);
                self.cursor += 1;
            } else {
                break;
            }
        }
        digits.parse().expect("digit run")
    }

    fn identifier(&mut self) -> String {
        let mut name = String::new();
        while let Some(&(_, c)) = self.chars.get(self.cursor) {
            if c.is_alphanumeric() || c == '_' {
                name.push(c);
                self.cursor += 1;
            } else {
                break;
            }
        }
        name
    }
}

/// Parses `text` into a polynomial over the named variables.
pub fn parse_polynomial(text: &str, variable_names: &[&str]) -> Result<Polynomial, ParseError> {
    let nvars = variable_names.len();
    let mut lexer = Lexer::new(text);
    let mut poly = Polynomial::zero(nvars);

    loop {
        // Sign prefix for this term.
        let mut sign = Rational::one();
        loop {
            match lexer.peek() {
                Some((_, '+')) => {
                    lexer.bump();
                }
                Some((_, '-')) => {
                    lexer.bump();
                    sign = -sign;
                }
                _ => break,
            }
        }

        let (mono, coeff) = parse_term(&mut lexer, variable_names)?;
        poly.add_term(mono, coeff * sign);

        match lexer.peek() {
            None => break,
            Some((_, '+')) | Some((_, '-')) => continue,
            Some((pos, c)) => {
                return Err(ParseError {
                    position: pos,
                    kind: ParseErrorKind::UnexpectedChar(c),
                })
            }
        }
    }
    Ok(poly)
}

fn parse_term(
    lexer: &mut Lexer<'_>,
    variable_names: &[&str],
) -> Result<(Monomial, Rational), ParseError> {
    let nvars = variable_names.len();
    let mut coeff = Rational::one();
    let mut exponents = vec![0u32; nvars];
    let mut first = true;

    loop {
        match lexer.peek() {
            Some((_, c)) if c.is_ascii_digit() => {
                let numer = lexer.integer();
                let denom = if let Some((_, '/')) = lexer.peek() {
                    lexer.bump();
                    let den_pos = lexer.position();
                    match lexer.peek() {
                        Some((_, d)) if d.is_ascii_digit() => {
                            let den = lexer.integer();
                            if den == BigInt::from(0) {
                                return Err(ParseError {
                                    position: den_pos,
                                    kind: ParseErrorKind::ZeroDenominator,
                                });
                            }
                            den
                        }
                        Some((pos, d)) => {
                            return Err(ParseError {
                                position: pos,
                                kind: ParseErrorKind::UnexpectedChar(d),
                            })
                        }
                        None => {
                            return Err(ParseError {
                                position: den_pos,
                                kind: ParseErrorKind::UnexpectedEnd,
                            })
                        }
                    }
                } else {
                    BigInt::one()
                };
                coeff *= Rational::new(numer, denom);
            }
            Some((pos, c)) if c.is_alphabetic() || c == '_' => {
                let name = lexer.identifier();
                let index = variable_names.iter().position(|v| *v == name).ok_or(
                    ParseError {
                        position: pos,
                        kind: ParseErrorKind::UnknownVariable(name.clone()),
                    },
                )?;
                let exponent = if let Some((_, '^')) = lexer.peek() {
                    lexer.bump();
                    let exp_pos = lexer.position();
                    match lexer.peek() {
                        Some((_, d)) if d.is_ascii_digit() => {
                            let e = lexer.integer();
                            u32::try_from(&e).map_err(|_| ParseError {
                                position: exp_pos,
                                kind: ParseErrorKind::MissingExponent,
                            })?
                        }
                        _ => {
                            return Err(ParseError {
                                position: exp_pos,
                                kind: ParseErrorKind::MissingExponent,
                            })
                        }
                    }
                } else {
                    1
                };
                exponents[index] += exponent;
            }
            Some((pos, c)) => {
                if first {
                    return Err(ParseError {
                        position: pos,
                        kind: ParseErrorKind::UnexpectedChar(c),
                    });
                }
                break;
            }
            None => {
                if first {
                    return Err(ParseError {
                        position: lexer.position(),
                        kind: ParseErrorKind::UnexpectedEnd,
                    });
                }
                break;
            }
        }
        first = false;

        // Factors are joined by `*`; anything else ends the term.
        if let Some((_, '*')) = lexer.peek() {
            lexer.bump();
        } else {
            break;
        }
    }

    Ok((Monomial::new(exponents), coeff))
}
