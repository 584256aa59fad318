//! Text parsing for polynomials and fixture files.
//!
//! Grammar: expr := term (('+'|'-') term)*; term := factor ('*' factor)*;
//! factor := atom ('^' uint)?; atom := rational | ident | '(' expr ')' | '-' factor.
//! Rational literals may be written `p/q`.

use crate::poly::SparsePoly;
use crate::scalar::Scalar;
use num_bigint::BigInt;
use num_rational::BigRational;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ParseError {
    #[error("unexpected character `{0}` at position {1}")]
    UnexpectedChar(char, usize),
    #[error("unexpected end of input")]
    UnexpectedEnd,
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("expected `{0}`")]
    Expected(String),
    #[error("malformed fixture line: {0}")]
    Fixture(String),
}

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Num(BigRational),
    Ident(String),
    Plus,
    Minus,
    Star,
    Caret,
    Slash,
    LParen,
    RParen,
}

fn tokenize(input: &str) -> Result<Vec<Token>, ParseError> {
    let mut tokens = Vec::new();
    let chars: Vec<char> = input.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        match c {
            ' ' | '\t' => i += 1,
            '+' => {
                tokens.push(Token::Plus);
                i += 1;
            }
            '-' => {
                tokens.push(Token::Minus);
                i += 1;
            }
            '*' => {
                tokens.push(Token::Star);
                i += 1;
            }
            '^' => {
                tokens.push(Token::Caret);
                i += 1;
            }
            '/' => {
                tokens.push(Token::Slash);
                i += 1;
            }
            '(' => {
                tokens.push(Token::LParen);
                i += 1;
            }
            ')' => {
                tokens.push(Token::RParen);
                i += 1;
            }
            '0'..='9' => {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let s: String = chars[start..i].iter().collect();
                tokens.push(Token::Num(BigRational::from_integer(
                    s.parse::<BigInt>().unwrap(),
                )));
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                let start = i;
                while i < chars.len()
                    && (chars[i].is_ascii_alphanumeric() || chars[i] == '_')
                {
                    i += 1;
                }
                tokens.push(Token::Ident(chars[start..i].iter().collect()));
            }
            _ => return Err(ParseError::UnexpectedChar(c, i)),
        }
    }
    Ok(tokens)
}

struct Parser<'a> {
    tokens: Vec<Token>,
    pos: usize,
    names: &'a [String],
    alpha_symbol: &'a str,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos)
    }

    fn next(&mut self) -> Option<Token> {
        let t = self.tokens.get(self.pos).cloned();
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn nvars(&self) -> usize {
        self.names.len()
    }

    fn expr(&mut self) -> Result<SparsePoly, ParseError> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(Token::Plus) => {
                    self.next();
                    acc = acc.add(&self.term()?);
                }
                Some(Token::Minus) => {
                    self.next();
                    acc = acc.sub(&self.term()?);
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<SparsePoly, ParseError> {
        let mut acc = self.factor()?;
        while matches!(self.peek(), Some(Token::Star)) {
            self.next();
            acc = acc.mul(&self.factor()?);
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<SparsePoly, ParseError> {
        let base = self.atom()?;
        if matches!(self.peek(), Some(Token::Caret)) {
            self.next();
            match self.next() {
                Some(Token::Num(q)) if q.is_integer() && q.numer() >= &BigInt::from(0) => {
                    let e: u32 = q.numer().try_into().map_err(|_| {
                        ParseError::Expected("small nonnegative exponent".into())
                    })?;
                    Ok(base.pow(e))
                }
                _ => Err(ParseError::Expected("nonnegative integer exponent".into())),
            }
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<SparsePoly, ParseError> {
        match self.next() {
            Some(Token::Num(q)) => {
                // optional rational literal p/q
                if matches!(self.peek(), Some(Token::Slash)) {
                    self.next();
                    match self.next() {
                        Some(Token::Num(d)) if !num_traits::Zero::is_zero(&d) => Ok(
                            SparsePoly::constant(self.nvars(), Scalar::from_rational(&q / &d)),
                        ),
                        _ => Err(ParseError::Expected("nonzero integer denominator".into())),
                    }
                } else {
                    Ok(SparsePoly::constant(self.nvars(), Scalar::from_rational(q)))
                }
            }
            Some(Token::Ident(name)) => {
                if name == self.alpha_symbol || name == "alpha" {
                    return Ok(SparsePoly::constant(self.nvars(), Scalar::alpha()));
                }
                match self.names.iter().position(|n| n == &name) {
                    Some(i) => Ok(SparsePoly::var(i, self.nvars())),
                    None => Err(ParseError::UnknownVariable(name)),
                }
            }
            Some(Token::Minus) => Ok(self.factor()?.neg()),
            Some(Token::LParen) => {
                let inner = self.expr()?;
                match self.next() {
                    Some(Token::RParen) => Ok(inner),
                    _ => Err(ParseError::Expected(")".into())),
                }
            }
            Some(t) => Err(ParseError::Expected(format!("atom, found {t:?}"))),
            None => Err(ParseError::UnexpectedEnd),
        }
    }
}

/// Parses a polynomial over the named variables. The alpha symbol (and the
/// spelled-out `alpha`) denotes the distinguished parameter unless it names a
/// variable.
pub fn parse_poly(
    input: &str,
    names: &[String],
    alpha_symbol: &str,
) -> Result<SparsePoly, ParseError> {
    let tokens = tokenize(input)?;
    let mut p = Parser {
        tokens,
        pos: 0,
        names,
        alpha_symbol: if names.iter().any(|n| n == alpha_symbol) {
            "\u{0}" // alpha symbol shadowed by a variable of the same name
        } else {
            alpha_symbol
        },
    };
    let poly = p.expr()?;
    if p.pos != p.tokens.len() {
        return Err(ParseError::Expected("end of input".into()));
    }
    Ok(poly)
}

/// Parses a scalar (constant polynomial, alpha allowed).
pub fn parse_scalar(input: &str) -> Result<Scalar, ParseError> {
    let poly = parse_poly(input, &[], "a")?;
    Ok(poly.constant_term())
}

/// Parses a rational literal such as `7`, `-3/4`.
pub fn parse_rational(input: &str) -> Result<BigRational, ParseError> {
    let s = parse_scalar(input)?;
    s.as_rational()
        .ok_or_else(|| ParseError::Expected("rational".into()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::default_names;

    #[test]
    fn parses_examples() {
        let names = default_names(3);
        let p = parse_poly("x1^2 + (1/2)*x2*x3 + a*x1", &names, "a").unwrap();
        assert_eq!(p.render(&names, "a"), "x1^2 + (1/2)*x2*x3 + a*x1");
        let q = parse_poly("-(x1 - x2)^2", &names, "a").unwrap();
        assert_eq!(q.render(&names, "a"), "-x1^2 + 2*x1*x2 - x2^2");
    }

    #[test]
    fn rational_literal() {
        assert_eq!(parse_rational("-3/4").unwrap(), BigRational::new((-3).into(), 4.into()));
    }

    #[test]
    fn alpha_shadowed_by_variable() {
        // in the certificate unknowns, `a` is an unknown and alpha is spelled out
        let names: Vec<String> = ["a", "b"].iter().map(|s| s.to_string()).collect();
        let p = parse_poly("a + alpha", &names, "a").unwrap();
        assert_eq!(p.render(&names, "alpha"), "a + alpha");
    }

    #[test]
    fn rejects_unknown_variable() {
        let names = default_names(2);
        assert!(parse_poly("x3", &names, "a").is_err());
    }
}
