//! Canonical text format for rational polynomials.
//!
//! Grammar (whitespace insignificant between tokens):
//!
//! ```text
//! poly   := [ '-' ] term { ( '+' | '-' ) term }
//! term   := atom { [ '*' ] atom }
//! atom   := number | variable [ '^' integer ]
//! number := integer [ '/' integer ]
//! ```
//!
//! Printing always emits the canonical form: terms in graded-lexicographic
//! order, `*` between factors, unit coefficients omitted, e.g.
//! `-s1^2 - s2^2` or `x^4 - x^2 + 1`.  Parsing accepts the canonical form
//! (and is lenient about omitted `*`).

use super::{Monomial, PolyError, Polynomial, VariableSet};
use crate::arith::Rational;
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use std::fmt;

impl fmt::Display for Polynomial<Rational> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (mono, coeff) in self.terms() {
            let negative = coeff.is_negative();
            let abs = if negative { -coeff } else { coeff.clone() };
            if first {
                if negative {
                    write!(f, "-")?;
                }
                first = false;
            } else if negative {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mut printed_factor = false;
            if mono.is_constant() || !abs.is_one() {
                write!(f, "{abs}")?;
                printed_factor = true;
            }
            for (i, &e) in mono.exponents().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                if printed_factor {
                    write!(f, "*")?;
                }
                printed_factor = true;
                write!(f, "{}", self.vars().name(i))?;
                if e > 1 {
                    write!(f, "^{e}")?;
                }
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Plus,
    Minus,
    Star,
    Caret,
    Number(Rational),
    Ident(String),
}

fn lex(text: &str) -> Result<Vec<(usize, Token)>, PolyError> {
    let bytes = text.as_bytes();
    let mut tokens = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        match c {
            ' ' | '\t' | '\n' | '\r' => i += 1,
            '+' => {
                tokens.push((i, Token::Plus));
                i += 1;
            }
            '-' => {
                tokens.push((i, Token::Minus));
                i += 1;
            }
            '*' => {
                tokens.push((i, Token::Star));
                i += 1;
            }
            '^' => {
                tokens.push((i, Token::Caret));
                i += 1;
            }
            '0'..='9' => {
                let start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let numer: BigInt = text[start..i].parse().expect("digits");
                let mut denom = BigInt::one();
                if i < bytes.len()
                    && bytes[i] == b'/'
                    && i + 1 < bytes.len()
                    && bytes[i + 1].is_ascii_digit()
                {
                    i += 1;
                    let dstart = i;
                    while i < bytes.len() && bytes[i].is_ascii_digit() {
                        i += 1;
                    }
                    denom = text[dstart..i].parse().expect("digits");
                    if denom.is_zero() {
                        return Err(PolyError::Parse {
                            at: dstart,
                            message: "zero denominator".into(),
                        });
                    }
                }
                tokens.push((start, Token::Number(Rational::new(numer, denom))));
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                let start = i;
                while i < bytes.len()
                    && ((bytes[i] as char).is_ascii_alphanumeric() || bytes[i] == b'_')
                {
                    i += 1;
                }
                tokens.push((start, Token::Ident(text[start..i].to_string())));
            }
            other => {
                return Err(PolyError::Parse {
                    at: i,
                    message: format!("unexpected character `{other}`"),
                });
            }
        }
    }
    Ok(tokens)
}

/// Parses the canonical polynomial text format over the given variables.
pub fn parse_polynomial(
    text: &str,
    vars: &VariableSet,
) -> Result<Polynomial<Rational>, PolyError> {
    let tokens = lex(text)?;
    let mut pos = 0;
    let mut terms: Vec<(Monomial, Rational)> = Vec::new();
    let end_at = text.len();
    if tokens.is_empty() {
        return Err(PolyError::Parse {
            at: 0,
            message: "empty polynomial".into(),
        });
    }
    loop {
        // Sign.
        let mut sign = Rational::one();
        match tokens.get(pos) {
            Some((_, Token::Minus)) => {
                sign = -sign;
                pos += 1;
            }
            Some((_, Token::Plus)) if pos > 0 => {
                pos += 1;
            }
            _ => {}
        }
        // One or more atoms.
        let mut coeff = sign;
        let mut exps = vec![0u32; vars.len()];
        let mut atoms = 0;
        loop {
            match tokens.get(pos) {
                Some((_, Token::Number(n))) => {
                    coeff *= n;
                    pos += 1;
                    atoms += 1;
                }
                Some((at, Token::Ident(name))) => {
                    let index = vars.index_of(name).ok_or_else(|| PolyError::Parse {
                        at: *at,
                        message: format!("unknown variable `{name}`"),
                    })?;
                    pos += 1;
                    let mut exp = 1u32;
                    if let Some((_, Token::Caret)) = tokens.get(pos) {
                        pos += 1;
                        match tokens.get(pos) {
                            Some((_, Token::Number(n))) if n.is_integer() && !n.is_negative() => {
                                exp = n
                                    .to_integer()
                                    .try_into()
                                    .map_err(|_| PolyError::Parse {
                                        at: *at,
                                        message: "exponent out of range".into(),
                                    })?;
                                pos += 1;
                            }
                            other => {
                                let at = other.map(|(a, _)| *a).unwrap_or(end_at);
                                return Err(PolyError::Parse {
                                    at,
                                    message: "expected integer exponent after `^`".into(),
                                });
                            }
                        }
                    }
                    exps[index] += exp;
                    atoms += 1;
                }
                Some((_, Token::Star)) if atoms > 0 => {
                    pos += 1;
                    // A factor must follow.
                    match tokens.get(pos) {
                        Some((_, Token::Number(_) | Token::Ident(_))) => {}
                        other => {
                            let at = other.map(|(a, _)| *a).unwrap_or(end_at);
                            return Err(PolyError::Parse {
                                at,
                                message: "expected factor after `*`".into(),
                            });
                        }
                    }
                }
                _ => break,
            }
        }
        if atoms == 0 {
            let at = tokens.get(pos).map(|(a, _)| *a).unwrap_or(end_at);
            return Err(PolyError::Parse {
                at,
                message: "expected a term".into(),
            });
        }
        terms.push((Monomial::new(vars, exps)?, coeff));
        match tokens.get(pos) {
            None => break,
            Some((_, Token::Plus | Token::Minus)) => continue,
            Some((at, _)) => {
                return Err(PolyError::Parse {
                    at: *at,
                    message: "expected `+` or `-` between terms".into(),
                });
            }
        }
    }
    Polynomial::from_terms(vars, terms)
}
