//! Recursive-descent parser for the expression grammar:
//!
//! ```text
//! expr   := term (("+"|"-") term)*
//! term   := factor (("*"|"/") factor)*
//! factor := base ("^" base)? | "-" factor
//! base   := NUMBER | IDENT | "(" expr ")" | FUNC "(" expr ")"
//! ```
//!
//! Whitespace is insignificant; `^` binds tighter than unary minus.

use thiserror::Error;

use super::{Expr, Func};
use crate::scalar::{lit, Scalar};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("syntax error at byte {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("unknown identifier `{name}` at byte {pos}")]
    UnknownIdentifier { name: String, pos: usize },
}

fn syntax(pos: usize, msg: impl Into<String>) -> ParseError {
    ParseError::Syntax {
        pos,
        msg: msg.into(),
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(f64),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

struct Lexer<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Lexer<'a> {
    fn tokens(src: &'a str) -> Result<Vec<(Tok, usize)>, ParseError> {
        let mut lx = Lexer {
            src: src.as_bytes(),
            pos: 0,
        };
        let mut out = Vec::new();
        while let Some((tok, at)) = lx.next_token()? {
            out.push((tok, at));
        }
        Ok(out)
    }

    fn next_token(&mut self) -> Result<Option<(Tok, usize)>, ParseError> {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
        if self.pos >= self.src.len() {
            return Ok(None);
        }
        let at = self.pos;
        let c = self.src[self.pos];
        let tok = match c {
            b'+' => {
                self.pos += 1;
                Tok::Plus
            }
            b'-' => {
                self.pos += 1;
                Tok::Minus
            }
            b'*' => {
                self.pos += 1;
                Tok::Star
            }
            b'/' => {
                self.pos += 1;
                Tok::Slash
            }
            b'^' => {
                self.pos += 1;
                Tok::Caret
            }
            b'(' => {
                self.pos += 1;
                Tok::LParen
            }
            b')' => {
                self.pos += 1;
                Tok::RParen
            }
            b'0'..=b'9' => self.number(at)?,
            c if c.is_ascii_alphabetic() => {
                let mut end = self.pos;
                while end < self.src.len()
                    && (self.src[end].is_ascii_alphanumeric() || self.src[end] == b'_')
                {
                    end += 1;
                }
                let name = std::str::from_utf8(&self.src[self.pos..end])
                    .expect("identifier bytes are ascii")
                    .to_string();
                self.pos = end;
                Tok::Ident(name)
            }
            other => {
                return Err(syntax(at, format!("unexpected character `{}`", other as char)));
            }
        };
        Ok(Some((tok, at)))
    }

    fn number(&mut self, at: usize) -> Result<Tok, ParseError> {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if self.pos < self.src.len() && self.src[self.pos] == b'.' {
            self.pos += 1;
            while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
                self.pos += 1;
            }
        }
        if self.pos < self.src.len() && (self.src[self.pos] | 0x20) == b'e' {
            let mark = self.pos;
            self.pos += 1;
            if self.pos < self.src.len() && (self.src[self.pos] == b'+' || self.src[self.pos] == b'-')
            {
                self.pos += 1;
            }
            if self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
                while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
                    self.pos += 1;
                }
            } else {
                // `e` begins an identifier, not an exponent
                self.pos = mark;
            }
        }
        let text = std::str::from_utf8(&self.src[start..self.pos]).expect("digits are ascii");
        let value: f64 = text
            .parse()
            .map_err(|_| syntax(at, format!("invalid number literal `{text}`")))?;
        Ok(Tok::Num(value))
    }
}

struct Parser<'a, T> {
    toks: Vec<(Tok, usize)>,
    cursor: usize,
    end: usize,
    coords: Vec<(&'a str, usize)>,
    _marker: std::marker::PhantomData<T>,
}

impl<'a, T: Scalar> Parser<'a, T> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.cursor).map(|(t, _)| t)
    }

    fn pos(&self) -> usize {
        self.toks
            .get(self.cursor)
            .map(|&(_, p)| p)
            .unwrap_or(self.end)
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.cursor).map(|(t, _)| t.clone());
        self.cursor += 1;
        t
    }

    fn expect(&mut self, tok: Tok, what: &str) -> Result<(), ParseError> {
        let at = self.pos();
        match self.bump() {
            Some(t) if t == tok => Ok(()),
            _ => Err(syntax(at, format!("expected {what}"))),
        }
    }

    fn expr(&mut self) -> Result<Expr<T>, ParseError> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.bump();
                    let rhs = self.term()?;
                    acc = plain_add(acc, rhs);
                }
                Some(Tok::Minus) => {
                    self.bump();
                    let rhs = self.term()?;
                    acc = plain_sub(acc, rhs);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Expr<T>, ParseError> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.bump();
                    let rhs = self.factor()?;
                    acc = plain_mul(acc, rhs);
                }
                Some(Tok::Slash) => {
                    self.bump();
                    let rhs = self.factor()?;
                    acc = plain_div(acc, rhs);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<Expr<T>, ParseError> {
        if matches!(self.peek(), Some(Tok::Minus)) {
            self.bump();
            let inner = self.factor()?;
            return Ok(plain_neg(inner));
        }
        let base = self.base()?;
        if matches!(self.peek(), Some(Tok::Caret)) {
            self.bump();
            let exponent = self.base()?;
            return Ok(plain_pow(base, exponent));
        }
        Ok(base)
    }

    fn base(&mut self) -> Result<Expr<T>, ParseError> {
        let at = self.pos();
        match self.bump() {
            Some(Tok::Num(v)) => Ok(Expr::Const(lit(v))),
            Some(Tok::LParen) => {
                let inner = self.expr()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(inner)
            }
            Some(Tok::Ident(name)) => {
                if matches!(self.peek(), Some(Tok::LParen)) {
                    let func = Func::from_name(&name).ok_or_else(|| ParseError::UnknownIdentifier {
                        name: name.clone(),
                        pos: at,
                    })?;
                    self.bump();
                    let arg = self.expr()?;
                    self.expect(Tok::RParen, "`)`")?;
                    Ok(Expr::func(func, arg))
                } else {
                    match self.coords.iter().find(|(n, _)| *n == name) {
                        Some(&(n, index)) => Ok(Expr::coord(n, index)),
                        None => Err(ParseError::UnknownIdentifier { name, pos: at }),
                    }
                }
            }
            _ => Err(syntax(at, "expected a number, identifier, or `(`")),
        }
    }
}

// Structure-preserving node builders: the parser must return the literal tree,
// so the simplifying `ops` constructors are not used here.
fn plain_add<T>(a: Expr<T>, b: Expr<T>) -> Expr<T> {
    Expr::Add(a.into(), b.into())
}
fn plain_sub<T>(a: Expr<T>, b: Expr<T>) -> Expr<T> {
    Expr::Sub(a.into(), b.into())
}
fn plain_mul<T>(a: Expr<T>, b: Expr<T>) -> Expr<T> {
    Expr::Mul(a.into(), b.into())
}
fn plain_div<T>(a: Expr<T>, b: Expr<T>) -> Expr<T> {
    Expr::Div(a.into(), b.into())
}
fn plain_pow<T>(a: Expr<T>, b: Expr<T>) -> Expr<T> {
    Expr::Pow(a.into(), b.into())
}
fn plain_neg<T>(a: Expr<T>) -> Expr<T> {
    Expr::Neg(a.into())
}

/// Parses `source` against the declared coordinate names.
pub fn parse_expr<T: Scalar, S: AsRef<str>>(
    source: &str,
    coords: &[S],
) -> Result<Expr<T>, ParseError> {
    let toks = Lexer::tokens(source)?;
    let mut parser = Parser::<T> {
        toks,
        cursor: 0,
        end: source.len(),
        coords: coords
            .iter()
            .enumerate()
            .map(|(i, s)| (s.as_ref(), i))
            .collect(),
        _marker: std::marker::PhantomData,
    };
    let expr = parser.expr()?;
    if parser.cursor != parser.toks.len() {
        return Err(syntax(parser.pos(), "unexpected trailing input"));
    }
    Ok(expr)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symexpr::Point;

    const XYZ: [&str; 3] = ["x", "y", "z"];

    fn p(src: &str) -> Expr<f64> {
        parse_expr(src, &XYZ).unwrap()
    }

    #[test]
    fn parses_direct_grammar_cases() {
        let e = p("exp(2*z)");
        assert_eq!(e.evaluate(&Point::new(vec![0.0, 0.0, 1.0])).unwrap(), (2.0f64).exp());
        let e = p("-2*z");
        assert_eq!(e.evaluate(&Point::new(vec![0.0, 0.0, 1.0])).unwrap(), -2.0);
        let e = p("ln(cosh(z))");
        assert_eq!(e.evaluate(&Point::new(vec![0.0, 0.0, 0.0])).unwrap(), 0.0);
    }

    #[test]
    fn power_binds_tighter_than_unary_minus() {
        let e = p("-z^2");
        assert_eq!(e.evaluate(&Point::new(vec![0.0, 0.0, 3.0])).unwrap(), -9.0);
    }

    #[test]
    fn precedence_and_associativity() {
        let pt = Point::new(vec![2.0, 3.0, 4.0]);
        assert_eq!(p("x+y*z").evaluate(&pt).unwrap(), 14.0);
        assert_eq!(p("x-y-z").evaluate(&pt).unwrap(), -5.0);
        assert_eq!(p("x/y/z").evaluate(&pt).unwrap(), 2.0 / 3.0 / 4.0);
        assert_eq!(p("(x+y)*z").evaluate(&pt).unwrap(), 20.0);
    }

    #[test]
    fn number_literals() {
        let pt = Point::new(vec![0.0, 0.0, 0.0]);
        assert_eq!(p("1.5").evaluate(&pt).unwrap(), 1.5);
        assert_eq!(p("2e-3").evaluate(&pt).unwrap(), 2e-3);
        assert_eq!(p("1.25e2").evaluate(&pt).unwrap(), 125.0);
    }

    #[test]
    fn unknown_identifier_is_reported_with_position() {
        match parse_expr::<f64, _>("ex(z)", &XYZ) {
            Err(ParseError::UnknownIdentifier { name, pos }) => {
                assert_eq!(name, "ex");
                assert_eq!(pos, 0);
            }
            other => panic!("expected unknown identifier, got {other:?}"),
        }
        match parse_expr::<f64, _>("x + w", &XYZ) {
            Err(ParseError::UnknownIdentifier { name, pos }) => {
                assert_eq!(name, "w");
                assert_eq!(pos, 4);
            }
            other => panic!("expected unknown identifier, got {other:?}"),
        }
    }

    #[test]
    fn syntax_errors_carry_positions() {
        assert!(matches!(
            parse_expr::<f64, _>("x + ", &XYZ),
            Err(ParseError::Syntax { pos: 4, .. })
        ));
        assert!(matches!(
            parse_expr::<f64, _>("(x", &XYZ),
            Err(ParseError::Syntax { .. })
        ));
        // `^` is non-associative: a second caret is trailing input.
        assert!(matches!(
            parse_expr::<f64, _>("2^3^4", &XYZ),
            Err(ParseError::Syntax { .. })
        ));
        assert!(matches!(
            parse_expr::<f64, _>("2 z", &XYZ),
            Err(ParseError::Syntax { .. })
        ));
    }

    #[test]
    fn exponent_must_be_a_base() {
        assert!(parse_expr::<f64, _>("x^-2", &XYZ).is_err());
        assert!(parse_expr::<f64, _>("x^(-2)", &XYZ).is_ok());
    }
}
