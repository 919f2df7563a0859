//! Recursive-descent parser for polynomial expressions and rational
//! points.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary ('*' unary)*
//! unary  := '-' unary | power
//! power  := atom ('^' integer)?
//! atom   := integer ('/' integer)? | variable | '(' expr ')'
//! ```

use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;
use osc_core::{MPoly, Rat};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "line {}, column {}: {}",
            self.line, self.column, self.message
        )
    }
}

impl std::error::Error for ParseError {}

struct Parser<'a> {
    chars: Vec<char>,
    pos: usize,
    vars: &'a [String],
}

impl<'a> Parser<'a> {
    fn new(src: &str, vars: &'a [String]) -> Self {
        Parser {
            chars: src.chars().collect(),
            pos: 0,
            vars,
        }
    }

    fn location(&self, pos: usize) -> (usize, usize) {
        let mut line = 1;
        let mut col = 1;
        for &c in &self.chars[..pos.min(self.chars.len())] {
            if c == '\n' {
                line += 1;
                col = 1;
            } else {
                col += 1;
            }
        }
        (line, col)
    }

    fn error_at(&self, pos: usize, message: impl Into<String>) -> ParseError {
        let (line, column) = self.location(pos);
        ParseError {
            line,
            column,
            message: message.into(),
        }
    }

    fn skip_ws(&mut self) {
        while self.chars.get(self.pos).is_some_and(|c| c.is_whitespace()) {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn unexpected(&mut self, wanted: &str) -> ParseError {
        match self.peek() {
            Some(c) => self.error_at(self.pos, format!("expected {wanted}, found `{c}`")),
            None => self.error_at(self.pos, format!("expected {wanted}, found end of input")),
        }
    }

    fn integer(&mut self) -> Option<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.chars.get(self.pos).is_some_and(char::is_ascii_digit) {
            self.pos += 1;
        }
        if start == self.pos {
            return None;
        }
        let s: String = self.chars[start..self.pos].iter().collect();
        Some(s.parse().expect("ascii digits"))
    }

    fn nvars(&self) -> usize {
        self.vars.len()
    }

    fn expr(&mut self) -> Result<MPoly, ParseError> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some('+') => {
                    self.pos += 1;
                    acc = &acc + &self.term()?;
                }
                Some('-') => {
                    self.pos += 1;
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<MPoly, ParseError> {
        let mut acc = self.unary()?;
        while self.peek() == Some('*') {
            self.pos += 1;
            acc = &acc * &self.unary()?;
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<MPoly, ParseError> {
        if self.peek() == Some('-') {
            self.pos += 1;
            return Ok(-&self.unary()?);
        }
        self.power()
    }

    fn power(&mut self) -> Result<MPoly, ParseError> {
        let base = self.atom()?;
        if self.peek() != Some('^') {
            return Ok(base);
        }
        self.pos += 1;
        let at = {
            self.skip_ws();
            self.pos
        };
        let e = self
            .integer()
            .ok_or_else(|| self.unexpected("a non-negative integer exponent"))?;
        let e: u32 = e
            .try_into()
            .map_err(|_| self.error_at(at, "exponent too large"))?;
        Ok(base.pow(e))
    }

    fn atom(&mut self) -> Result<MPoly, ParseError> {
        match self.peek() {
            Some(c) if c.is_ascii_digit() => {
                let num = self.integer().expect("digit present");
                if self.peek() == Some('/') {
                    let slash = self.pos;
                    self.pos += 1;
                    let den = self
                        .integer()
                        .ok_or_else(|| self.unexpected("a denominator"))?;
                    if den.is_zero() {
                        return Err(self.error_at(slash, "division by zero"));
                    }
                    return Ok(MPoly::constant(self.nvars(), Rat::new(num, den)));
                }
                Ok(MPoly::constant(self.nvars(), Rat::from_integer(num)))
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let start = self.pos;
                while self
                    .chars
                    .get(self.pos)
                    .is_some_and(|c| c.is_ascii_alphanumeric() || *c == '_')
                {
                    self.pos += 1;
                }
                let name: String = self.chars[start..self.pos].iter().collect();
                match self.vars.iter().position(|v| *v == name) {
                    Some(i) => Ok(MPoly::var(self.nvars(), i)),
                    None => Err(self.error_at(start, format!("unknown variable `{name}`"))),
                }
            }
            Some('(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() != Some(')') {
                    return Err(self.unexpected("`)`"));
                }
                self.pos += 1;
                Ok(inner)
            }
            _ => Err(self.unexpected("a number, variable or `(`")),
        }
    }
}

/// Whether `name` matches `[A-Za-z][A-Za-z0-9_]*`.
pub fn is_identifier(name: &str) -> bool {
    let mut chars = name.chars();
    chars.next().is_some_and(|c| c.is_ascii_alphabetic())
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// Parses a polynomial in the named variables.
pub fn parse_poly(src: &str, vars: &[String]) -> Result<MPoly, ParseError> {
    let mut p = Parser::new(src, vars);
    let out = p.expr()?;
    if p.peek().is_some() {
        return Err(p.unexpected("an operator or end of input"));
    }
    Ok(out)
}

/// Parses `a` or `a/b`, optionally signed.
pub fn parse_rational(src: &str) -> Result<Rat, ParseError> {
    let s = src.trim();
    let bad = || ParseError {
        line: 1,
        column: 1,
        message: format!("`{s}` is not a rational number"),
    };
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let num: BigInt = num.parse().map_err(|_| bad())?;
    let den: BigInt = den.parse().map_err(|_| bad())?;
    if den.is_zero() {
        return Err(ParseError {
            message: "division by zero".into(),
            ..bad()
        });
    }
    Ok(Rat::new(num, den))
}

/// Comma-separated rationals, `1/2,-3`.
pub fn parse_point(src: &str) -> Result<Vec<Rat>, ParseError> {
    let mut out = Vec::new();
    let mut column = 1;
    for part in src.split(',') {
        out.push(parse_rational(part).map_err(|e| ParseError { column, ..e })?);
        column += part.chars().count() + 1;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn xy() -> Vec<String> {
        vec!["x".into(), "y".into()]
    }

    fn r(k: i64) -> Rat {
        Rat::from_integer(k.into())
    }

    #[test]
    fn precedence() {
        let x = MPoly::var(2, 0);
        let y = MPoly::var(2, 1);
        assert_eq!(
            parse_poly("x + y*x^2", &xy()).unwrap(),
            &x + &(&y * &x.pow(2))
        );
        assert_eq!(parse_poly("-x^2", &xy()).unwrap(), -&x.pow(2));
        assert_eq!(parse_poly("(x - y)^2", &xy()).unwrap(), (&x - &y).pow(2));
        assert_eq!(
            parse_poly("x - y - 1", &xy()).unwrap(),
            &(&x - &y) - &MPoly::one(2)
        );
        assert_eq!(parse_poly("2*-x", &xy()).unwrap(), x.scale(&r(-2)));
    }

    #[test]
    fn rational_literals() {
        let p = parse_poly("1/2*x - 3/4", &xy()).unwrap();
        assert_eq!(p.to_string(), "1/2*x - 3/4");
        assert_eq!(
            parse_poly("4/6", &xy()).unwrap(),
            MPoly::constant(2, Rat::new(2.into(), 3.into()))
        );
    }

    #[test]
    fn errors_carry_positions() {
        let e = parse_poly("x**2", &xy()).unwrap_err();
        assert_eq!((e.line, e.column), (1, 3));
        let e = parse_poly("x +\n  z", &xy()).unwrap_err();
        assert_eq!((e.line, e.column), (2, 3));
        assert!(e.message.contains("unknown variable"));
        let e = parse_poly("x^-1", &xy()).unwrap_err();
        assert_eq!(e.column, 3);
        let e = parse_poly("(x + y", &xy()).unwrap_err();
        assert!(e.message.contains("`)`"));
        assert!(parse_poly("1/0", &xy()).is_err());
        assert!(parse_poly("", &xy()).is_err());
        assert!(parse_poly("x y", &xy()).is_err());
    }

    #[test]
    fn points() {
        assert_eq!(
            parse_point("1/2,-3").unwrap(),
            vec![Rat::new(1.into(), 2.into()), r(-3)]
        );
        assert_eq!(parse_point(" 0 , 7 ").unwrap(), vec![r(0), r(7)]);
        let e = parse_point("1,x").unwrap_err();
        assert_eq!(e.column, 3);
        assert!(parse_point("1/0").is_err());
    }
}
