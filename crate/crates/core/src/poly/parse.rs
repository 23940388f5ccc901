//! Text form of polynomials.
//!
//! ```text
//! poly   := sign? term (("+" | "-") term)*
//! term   := factor ("*" factor)*
//! factor := integer ("/" integer)? | symbol ("^" "-"? integer)?
//! ```
//!
//! Whitespace is insignificant. The same lexer drives the grammar DSL.

use num_bigint::BigInt;

use super::{Monomial, Poly, Rational, Symbol};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) enum Tok {
    Ident(String),
    Int(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    Arrow,
    Semi,
    Eof,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Ident(s) => format!("identifier `{s}`"),
            Tok::Int(s) => format!("number `{s}`"),
            Tok::Plus => "`+`".into(),
            Tok::Minus => "`-`".into(),
            Tok::Star => "`*`".into(),
            Tok::Slash => "`/`".into(),
            Tok::Caret => "`^`".into(),
            Tok::Arrow => "`->`".into(),
            Tok::Semi => "`;`".into(),
            Tok::Eof => "end of input".into(),
        }
    }
}

#[derive(Debug, Clone)]
pub(crate) struct Token {
    pub tok: Tok,
    pub line: usize,
    pub column: usize,
}

pub(crate) fn syntax(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Syntax {
        line,
        column,
        message: message.into(),
    }
}

/// Splits `text` into tokens. `#` starts a comment running to end of line.
pub(crate) fn tokenize(text: &str) -> Result<Vec<Token>> {
    let mut out = Vec::new();
    let mut chars = text.chars().peekable();
    let (mut line, mut column) = (1usize, 1usize);
    while let Some(&c) = chars.peek() {
        let (tl, tc) = (line, column);
        let mut bump = |chars: &mut std::iter::Peekable<std::str::Chars<'_>>| {
            let c = chars.next();
            if c == Some('\n') {
                line += 1;
                column = 1;
            } else {
                column += 1;
            }
            c
        };
        let tok = match c {
            c if c.is_whitespace() => {
                bump(&mut chars);
                continue;
            }
            '#' => {
                while let Some(&c) = chars.peek() {
                    if c == '\n' {
                        break;
                    }
                    bump(&mut chars);
                }
                continue;
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                let mut s = String::new();
                while let Some(&c) = chars.peek() {
                    if c.is_ascii_alphanumeric() || c == '_' {
                        s.push(c);
                        bump(&mut chars);
                    } else {
                        break;
                    }
                }
                Tok::Ident(s)
            }
            c if c.is_ascii_digit() => {
                let mut s = String::new();
                while let Some(&c) = chars.peek() {
                    if c.is_ascii_digit() {
                        s.push(c);
                        bump(&mut chars);
                    } else {
                        break;
                    }
                }
                Tok::Int(s)
            }
            '+' => {
                bump(&mut chars);
                Tok::Plus
            }
            '*' => {
                bump(&mut chars);
                Tok::Star
            }
            '/' => {
                bump(&mut chars);
                Tok::Slash
            }
            '^' => {
                bump(&mut chars);
                Tok::Caret
            }
            ';' => {
                bump(&mut chars);
                Tok::Semi
            }
            '-' => {
                bump(&mut chars);
                if chars.peek() == Some(&'>') {
                    bump(&mut chars);
                    Tok::Arrow
                } else {
                    Tok::Minus
                }
            }
            '|' => {
                bump(&mut chars);
                if chars.next_if_eq(&'-').is_some() && chars.next_if_eq(&'>').is_some() {
                    column += 2;
                    Tok::Arrow
                } else {
                    return Err(syntax(tl, tc, "expected `|->`"));
                }
            }
            other => return Err(syntax(tl, tc, format!("unexpected character {other:?}"))),
        };
        out.push(Token {
            tok,
            line: tl,
            column: tc,
        });
    }
    out.push(Token {
        tok: Tok::Eof,
        line,
        column,
    });
    Ok(out)
}

/// Recursive-descent cursor over a token stream.
pub(crate) struct Parser {
    toks: Vec<Token>,
    pos: usize,
}

impl Parser {
    pub fn new(toks: Vec<Token>) -> Parser {
        Parser { toks, pos: 0 }
    }

    pub fn peek(&self) -> &Token {
        &self.toks[self.pos]
    }

    pub fn next(&mut self) -> Token {
        let t = self.toks[self.pos].clone();
        if t.tok != Tok::Eof {
            self.pos += 1;
        }
        t
    }

    pub fn error_here(&self, expected: &str) -> Error {
        let t = self.peek();
        syntax(
            t.line,
            t.column,
            format!("expected {expected}, found {}", t.tok.describe()),
        )
    }

    pub fn expect(&mut self, tok: Tok, expected: &str) -> Result<Token> {
        if self.peek().tok == tok {
            Ok(self.next())
        } else {
            Err(self.error_here(expected))
        }
    }

    fn integer(&mut self) -> Result<BigInt> {
        match &self.peek().tok {
            Tok::Int(s) => {
                let n = s.parse().expect("lexer yields digits");
                self.next();
                Ok(n)
            }
            _ => Err(self.error_here("an integer")),
        }
    }

    fn factor(&mut self) -> Result<Poly> {
        let t = self.peek().clone();
        match &t.tok {
            Tok::Int(_) => {
                let n = self.integer()?;
                if self.peek().tok == Tok::Slash {
                    self.next();
                    let d = self.integer()?;
                    if d == BigInt::from(0) {
                        return Err(syntax(t.line, t.column, "zero denominator"));
                    }
                    let r = Rational::from_big(num_rational::BigRational::new(n, d));
                    Ok(Poly::constant(r))
                } else {
                    Ok(Poly::constant(Rational::from_bigint(n)))
                }
            }
            Tok::Ident(name) => {
                self.next();
                let sym = Symbol::new(name);
                let mut e: i64 = 1;
                if self.peek().tok == Tok::Caret {
                    self.next();
                    let negative = if self.peek().tok == Tok::Minus {
                        self.next();
                        true
                    } else {
                        false
                    };
                    let here = self.peek().clone();
                    let mag = self.integer()?;
                    let mag = i64::try_from(mag)
                        .ok()
                        .filter(|m| *m <= i32::MAX as i64 + 1);
                    let Some(mag) = mag else {
                        return Err(Error::ExponentOverflow(format!(
                            "exponent at line {}, column {}",
                            here.line, here.column
                        )));
                    };
                    e = if negative { -mag } else { mag };
                }
                let e =
                    i32::try_from(e).map_err(|_| Error::ExponentOverflow(format!("{sym}^{e}")))?;
                Ok(Poly::term(1, Monomial::power(sym, e)))
            }
            _ => Err(self.error_here("a number or symbol")),
        }
    }

    fn term(&mut self) -> Result<Poly> {
        let mut acc = self.factor()?;
        while self.peek().tok == Tok::Star {
            self.next();
            acc = acc.checked_mul(&self.factor()?)?;
        }
        Ok(acc)
    }

    pub fn polynomial(&mut self) -> Result<Poly> {
        let mut negate = false;
        match self.peek().tok {
            Tok::Minus => {
                self.next();
                negate = true;
            }
            Tok::Plus => {
                self.next();
            }
            _ => {}
        }
        let first = self.term()?;
        let mut acc = if negate { -first } else { first };
        loop {
            match self.peek().tok {
                Tok::Plus => {
                    self.next();
                    acc = &acc + &self.term()?;
                }
                Tok::Minus => {
                    self.next();
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }
}

/// Parses a polynomial in the canonical text format.
pub fn parse_poly(text: &str) -> Result<Poly> {
    let mut p = Parser::new(tokenize(text)?);
    let poly = p.polynomial()?;
    if p.peek().tok != Tok::Eof {
        return Err(p.error_here("`+`, `-`, `*` or end of input"));
    }
    Ok(poly)
}

impl std::str::FromStr for Poly {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        parse_poly(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_whitespace_and_signs() {
        let a = parse_poly("  -x^2*y +3 * z ^ -3 - 1/2 ").unwrap();
        let b = parse_poly("-x^2*y+3*z^-3-1/2").unwrap();
        assert_eq!(a, b);
        assert_eq!(a.to_string(), "3*z^-3 - 1/2 - x^2*y");
    }

    #[test]
    fn repeated_factors_merge() {
        assert_eq!(
            parse_poly("x*x*2*x^-1").unwrap(),
            parse_poly("2*x").unwrap()
        );
        assert!(parse_poly("x - x").unwrap().is_zero());
    }

    #[test]
    fn reports_positions() {
        match parse_poly("x +\n  * y") {
            Err(Error::Syntax { line, column, .. }) => assert_eq!((line, column), (2, 3)),
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(parse_poly(""), Err(Error::Syntax { .. })));
        assert!(matches!(parse_poly("x y"), Err(Error::Syntax { .. })));
        assert!(matches!(parse_poly("x^"), Err(Error::Syntax { .. })));
        assert!(matches!(parse_poly("1/0"), Err(Error::Syntax { .. })));
        assert!(matches!(
            parse_poly("x $ y"),
            Err(Error::Syntax {
                line: 1,
                column: 3,
                ..
            })
        ));
    }

    #[test]
    fn huge_exponent_is_overflow() {
        assert!(matches!(
            parse_poly("x^99999999999"),
            Err(Error::ExponentOverflow(_))
        ));
        assert!(parse_poly("x^-2147483648").is_ok());
    }
}
