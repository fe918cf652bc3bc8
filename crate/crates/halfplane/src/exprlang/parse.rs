//! Lexer and recursive-descent parser for the expression surface syntax.

use std::fmt;

use num_complex::Complex64;
use thiserror::Error;

use super::{call, neg, pow, Expr, Func};

/// Syntax error with byte offset and the token set that was expected there.
#[derive(Debug, Error, Clone, PartialEq)]
pub struct ParseError {
    pub offset: usize,
    pub expected: Vec<&'static str>,
    pub found: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "syntax error at offset {}: expected {}, found {}",
            self.offset,
            self.expected.join(" | "),
            self.found
        )
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(f64),
    /// number immediately followed by `i`
    Imag(f64),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    Eof,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Num(v) => format!("number `{v}`"),
            Tok::Imag(v) => format!("imaginary literal `{v}i`"),
            Tok::Ident(s) => format!("`{s}`"),
            Tok::Plus => "`+`".into(),
            Tok::Minus => "`-`".into(),
            Tok::Star => "`*`".into(),
            Tok::Slash => "`/`".into(),
            Tok::Caret => "`^`".into(),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
            Tok::Eof => "end of input".into(),
        }
    }
}

struct Lexer<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Lexer<'a> {
    fn new(src: &'a str) -> Self {
        Lexer {
            src: src.as_bytes(),
            pos: 0,
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn next(&mut self) -> Result<(Tok, usize), ParseError> {
        self.skip_ws();
        let start = self.pos;
        if self.pos >= self.src.len() {
            return Ok((Tok::Eof, start));
        }
        let c = self.src[self.pos];
        let simple = match c {
            b'+' => Some(Tok::Plus),
            b'-' => Some(Tok::Minus),
            b'*' => Some(Tok::Star),
            b'/' => Some(Tok::Slash),
            b'^' => Some(Tok::Caret),
            b'(' => Some(Tok::LParen),
            b')' => Some(Tok::RParen),
            _ => None,
        };
        if let Some(t) = simple {
            self.pos += 1;
            return Ok((t, start));
        }
        if c.is_ascii_digit() {
            return self.lex_number(start);
        }
        if c.is_ascii_alphabetic() {
            let mut end = self.pos;
            while end < self.src.len() && self.src[end].is_ascii_alphabetic() {
                end += 1;
            }
            let word = std::str::from_utf8(&self.src[self.pos..end])
                .unwrap()
                .to_string();
            self.pos = end;
            return Ok((Tok::Ident(word), start));
        }
        Err(ParseError {
            offset: start,
            expected: vec!["number", "`i`", "`z`", "function name", "`(`", "operator"],
            found: format!("`{}`", char::from(c)),
        })
    }

    fn lex_number(&mut self, start: usize) -> Result<(Tok, usize), ParseError> {
        let mut end = self.pos;
        while end < self.src.len() && self.src[end].is_ascii_digit() {
            end += 1;
        }
        if end < self.src.len() && self.src[end] == b'.' {
            end += 1;
            while end < self.src.len() && self.src[end].is_ascii_digit() {
                end += 1;
            }
        }
        // exponent part only if `e` is followed by a (signed) digit
        if end < self.src.len() && (self.src[end] == b'e' || self.src[end] == b'E') {
            let mut k = end + 1;
            if k < self.src.len() && (self.src[k] == b'+' || self.src[k] == b'-') {
                k += 1;
            }
            if k < self.src.len() && self.src[k].is_ascii_digit() {
                end = k;
                while end < self.src.len() && self.src[end].is_ascii_digit() {
                    end += 1;
                }
            }
        }
        let text = std::str::from_utf8(&self.src[self.pos..end]).unwrap();
        let value: f64 = text.parse().map_err(|_| ParseError {
            offset: start,
            expected: vec!["number"],
            found: format!("`{text}`"),
        })?;
        if !value.is_finite() {
            return Err(ParseError {
                offset: start,
                expected: vec!["finite number literal"],
                found: format!("`{text}`"),
            });
        }
        self.pos = end;
        if self.pos < self.src.len() && self.src[self.pos] == b'i' {
            // reject `2iz`-style runs: `i` must not be followed by a letter
            if self.pos + 1 >= self.src.len() || !self.src[self.pos + 1].is_ascii_alphabetic() {
                self.pos += 1;
                return Ok((Tok::Imag(value), start));
            }
        }
        Ok((Tok::Num(value), start))
    }
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    idx: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.idx].0
    }

    fn offset(&self) -> usize {
        self.toks[self.idx].1
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.idx].0.clone();
        if self.idx + 1 < self.toks.len() {
            self.idx += 1;
        }
        t
    }

    fn err(&self, expected: Vec<&'static str>) -> ParseError {
        ParseError {
            offset: self.offset(),
            expected,
            found: self.peek().describe(),
        }
    }

    fn expr(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.term()?;
        loop {
            let minus = match self.peek() {
                Tok::Plus => false,
                Tok::Minus => true,
                _ => break,
            };
            self.bump();
            let rhs = self.term()?;
            // fold literal arithmetic only; in particular `a+bi` / `a-bi`
            // complex literals collapse to a single constant node
            if let (Expr::Const(l), Expr::Const(r)) = (&lhs, &rhs) {
                lhs = Expr::Const(if minus { l - r } else { l + r });
                continue;
            }
            lhs = if minus {
                Expr::Sub(Box::new(lhs), Box::new(rhs))
            } else {
                Expr::Add(Box::new(lhs), Box::new(rhs))
            };
        }
        Ok(lhs)
    }

    fn term(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.factor()?;
        loop {
            let is_div = match self.peek() {
                Tok::Star => false,
                Tok::Slash => true,
                _ => break,
            };
            self.bump();
            let rhs = self.factor()?;
            lhs = match (&lhs, &rhs, is_div) {
                (Expr::Const(l), Expr::Const(r), false) => Expr::Const(l * r),
                // literal division folds, but x/0 stays an eval-time error
                (Expr::Const(l), Expr::Const(r), true) if *r != Complex64::new(0.0, 0.0) => {
                    Expr::Const(l / r)
                }
                (_, _, true) => Expr::Div(Box::new(lhs), Box::new(rhs)),
                (_, _, false) => Expr::Mul(Box::new(lhs), Box::new(rhs)),
            };
        }
        Ok(lhs)
    }

    fn factor(&mut self) -> Result<Expr, ParseError> {
        if matches!(self.peek(), Tok::Minus) {
            self.bump();
            let inner = self.factor()?;
            return Ok(neg(inner));
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expr, ParseError> {
        let base = self.atom()?;
        if matches!(self.peek(), Tok::Caret) {
            self.bump();
            let expo = self.factor()?;
            return Ok(pow(base, expo));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Expr, ParseError> {
        match self.peek().clone() {
            Tok::Num(v) => {
                self.bump();
                Ok(Expr::Const(Complex64::new(v, 0.0)))
            }
            Tok::Imag(v) => {
                self.bump();
                Ok(Expr::Const(Complex64::new(0.0, v)))
            }
            Tok::Ident(name) => {
                if name == "z" {
                    self.bump();
                    return Ok(Expr::Var);
                }
                if name == "i" {
                    self.bump();
                    return Ok(Expr::Const(Complex64::new(0.0, 1.0)));
                }
                if let Some(f) = Func::from_name(&name) {
                    self.bump();
                    if !matches!(self.peek(), Tok::LParen) {
                        return Err(self.err(vec!["`(`"]));
                    }
                    self.bump();
                    let arg = self.expr()?;
                    if !matches!(self.peek(), Tok::RParen) {
                        return Err(self.err(vec!["`)`"]));
                    }
                    self.bump();
                    return Ok(call(f, arg));
                }
                Err(self.err(vec!["`z`", "`i`", "exp", "log", "sqrt", "sin", "cos"]))
            }
            Tok::LParen => {
                self.bump();
                let inner = self.expr()?;
                if !matches!(self.peek(), Tok::RParen) {
                    return Err(self.err(vec!["`)`"]));
                }
                self.bump();
                Ok(inner)
            }
            _ => Err(self.err(vec!["number", "`i`", "`z`", "function name", "`(`", "`-`"])),
        }
    }
}

/// Parse expression source text into an AST.
pub fn parse(src: &str) -> Result<Expr, ParseError> {
    if src.trim().is_empty() {
        return Err(ParseError {
            offset: 0,
            expected: vec!["expression"],
            found: "empty input".into(),
        });
    }
    let mut lx = Lexer::new(src);
    let mut toks = Vec::new();
    loop {
        let (t, off) = lx.next()?;
        let is_eof = t == Tok::Eof;
        toks.push((t, off));
        if is_eof {
            break;
        }
    }
    let mut p = Parser { toks, idx: 0 };
    let e = p.expr()?;
    if !matches!(p.peek(), Tok::Eof) {
        return Err(p.err(vec!["operator", "end of input"]));
    }
    Ok(e)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn structure_of_exp_iz() {
        let e = parse("exp(i*z)").unwrap();
        assert_eq!(
            e,
            call(
                Func::Exp,
                Expr::Mul(
                    Box::new(Expr::Const(Complex64::new(0.0, 1.0))),
                    Box::new(Expr::Var)
                )
            )
        );
    }

    #[test]
    fn structure_of_cayley() {
        let e = parse("(z-i)/(z+i)").unwrap();
        let i = Expr::Const(Complex64::new(0.0, 1.0));
        assert_eq!(
            e,
            Expr::Div(
                Box::new(Expr::Sub(Box::new(Expr::Var), Box::new(i.clone()))),
                Box::new(Expr::Add(Box::new(Expr::Var), Box::new(i))),
            )
        );
    }

    #[test]
    fn double_caret_is_an_error_at_offset_2() {
        let err = parse("z^^2").unwrap_err();
        assert_eq!(err.offset, 2);
        assert!(!err.expected.is_empty());
    }

    #[test]
    fn complex_literal_folding() {
        assert_eq!(
            parse("1+2i").unwrap(),
            Expr::Const(Complex64::new(1.0, 2.0))
        );
        assert_eq!(
            parse("3-2i").unwrap(),
            Expr::Const(Complex64::new(3.0, -2.0))
        );
        assert_eq!(parse("-2").unwrap(), Expr::Const(Complex64::new(-2.0, 0.0)));
        assert_eq!(parse("2i").unwrap(), Expr::Const(Complex64::new(0.0, 2.0)));
    }

    #[test]
    fn power_is_right_associative() {
        assert_eq!(parse("z^2^3").unwrap(), parse("z^(2^3)").unwrap());
        assert_ne!(parse("z^2^3").unwrap(), parse("(z^2)^3").unwrap());
    }

    #[test]
    fn unary_minus_binds_looser_than_power() {
        assert_eq!(parse("-z^2").unwrap(), neg(parse("z^2").unwrap()));
    }

    #[test]
    fn whitespace_insensitive() {
        assert_eq!(
            parse("  exp( i * z )  ").unwrap(),
            parse("exp(i*z)").unwrap()
        );
    }

    #[test]
    fn reports_position_of_bad_char() {
        let err = parse("z + $").unwrap_err();
        assert_eq!(err.offset, 4);
    }

    #[test]
    fn empty_input_rejected() {
        assert!(parse("   ").is_err());
    }

    #[test]
    fn trailing_garbage_rejected() {
        assert!(parse("z z").is_err());
        assert!(parse("2 i").is_err());
    }
}
