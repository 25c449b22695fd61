use std::fmt;

use thiserror::Error;

use crate::error::{Error, Result};
use crate::pinj::FiniteMap;
use crate::Nat;

use super::Expr;

/// Limit on the depth of a parsed term tree.
pub const MAX_DEPTH: usize = 256;

/// Limit on bracket and prefix-operator nesting while parsing.
pub const MAX_NESTING: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub struct ParseError {
    /// Byte offset into the input.
    pub position: usize,
    pub message: String,
    pub expected: Vec<String>,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "parse error at offset {}: {}", self.position, self.message)?;
        if !self.expected.is_empty() {
            write!(f, " (expected {})", self.expected.join(", "))?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Name(String),
    Num(Nat),
    Sym(&'static str),
    End,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Name(n) => write!(f, "name `{n}`"),
            Tok::Num(n) => write!(f, "number {n}"),
            Tok::Sym(s) => write!(f, "`{s}`"),
            Tok::End => f.write_str("end of input"),
        }
    }
}

const SYMBOLS: &[&str] = &["->", "+", ".", "*", "&", "!", "?", "~", "^", "(", ")", "{", "}", ","];

fn lex(text: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        if c.is_ascii_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            let n: Nat = text[start..i].parse().expect("ascii digits");
            out.push((start, Tok::Num(n)));
        } else if c.is_ascii_alphabetic() || c == b'_' {
            let start = i;
            while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                i += 1;
            }
            out.push((start, Tok::Name(text[start..i].to_string())));
        } else if let Some(sym) = SYMBOLS.iter().find(|s| text[i..].starts_with(**s)) {
            out.push((i, Tok::Sym(sym)));
            i += sym.len();
        } else {
            let ch = text[i..].chars().next().expect("in bounds");
            return Err(ParseError {
                position: i,
                message: format!("unexpected character {ch:?}"),
                expected: Vec::new(),
            });
        }
    }
    out.push((text.len(), Tok::End));
    Ok(out)
}

/// A parsed subterm with its tree depth.
type Sized = (Expr, usize);

struct Parser {
    toks: Vec<(usize, Tok)>,
    at: usize,
    depth: usize,
}

fn expected(list: &[&str]) -> Vec<String> {
    list.iter().map(|s| s.to_string()).collect()
}

const ATOM_START: &[&str] = &["name", "number list `{`", "`(`", "`!`", "`?`"];

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.at].1
    }

    fn pos(&self) -> usize {
        self.toks[self.at].0
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.at].1.clone();
        if self.at + 1 < self.toks.len() {
            self.at += 1;
        }
        t
    }

    fn eat(&mut self, sym: &str) -> bool {
        if matches!(self.peek(), Tok::Sym(s) if *s == sym) {
            self.bump();
            true
        } else {
            false
        }
    }

    fn fail<T>(&self, expected_list: Vec<String>) -> Result<T> {
        Err(Error::Parse(ParseError {
            position: self.pos(),
            message: format!("unexpected {}", self.peek()),
            expected: expected_list,
        }))
    }

    fn expect(&mut self, sym: &'static str) -> Result<()> {
        if self.eat(sym) {
            Ok(())
        } else {
            self.fail(vec![format!("`{sym}`")])
        }
    }

    fn nat(&mut self) -> Result<Nat> {
        match self.peek().clone() {
            Tok::Num(n) => {
                self.bump();
                Ok(n)
            }
            _ => self.fail(expected(&["number"])),
        }
    }

    fn small(&mut self) -> Result<u64> {
        let position = self.pos();
        let n = self.nat()?;
        u64::try_from(&n).map_err(|_| {
            Error::Parse(ParseError {
                position,
                message: format!("number {n} is too large here"),
                expected: Vec::new(),
            })
        })
    }

    fn descend(&mut self) -> Result<()> {
        self.depth += 1;
        if self.depth > MAX_NESTING {
            return Err(Error::Parse(ParseError {
                position: self.pos(),
                message: format!("nesting deeper than {MAX_NESTING}"),
                expected: Vec::new(),
            }));
        }
        Ok(())
    }

    fn tall(&self, d: usize) -> Result<usize> {
        if d > MAX_DEPTH {
            return Err(Error::Parse(ParseError {
                position: self.pos(),
                message: format!("term deeper than {MAX_DEPTH}"),
                expected: Vec::new(),
            }));
        }
        Ok(d)
    }

    fn expr(&mut self) -> Result<Sized> {
        self.descend()?;
        let (mut lhs, mut d) = self.comp()?;
        while self.eat("+") {
            let (rhs, e) = self.comp()?;
            d = self.tall(d.max(e) + 1)?;
            lhs = lhs.join(rhs);
        }
        self.depth -= 1;
        Ok((lhs, d))
    }

    fn comp(&mut self) -> Result<Sized> {
        let (mut lhs, mut d) = self.tensor()?;
        while self.eat(".") {
            let (rhs, e) = self.tensor()?;
            d = self.tall(d.max(e) + 1)?;
            lhs = lhs.compose(rhs);
        }
        Ok((lhs, d))
    }

    fn tensor(&mut self) -> Result<Sized> {
        let (mut lhs, mut d) = self.unary()?;
        loop {
            let star = if self.eat("*") {
                true
            } else if self.eat("&") {
                false
            } else {
                return Ok((lhs, d));
            };
            let (rhs, e) = self.unary()?;
            d = self.tall(d.max(e) + 1)?;
            lhs = if star { lhs.star(rhs) } else { lhs.odot(rhs) };
        }
    }

    fn unary(&mut self) -> Result<Sized> {
        let prefix = if self.eat("!") {
            Some(true)
        } else if self.eat("?") {
            Some(false)
        } else {
            None
        };
        match prefix {
            Some(is_bang) => {
                self.descend()?;
                let (inner, d) = self.unary()?;
                self.depth -= 1;
                let d = self.tall(d + 1)?;
                Ok((if is_bang { inner.bang() } else { inner.whimper() }, d))
            }
            None => self.postfix(),
        }
    }

    fn postfix(&mut self) -> Result<Sized> {
        let (mut e, mut d) = self.atom()?;
        loop {
            if self.eat("~") {
                e = e.inverse();
            } else if self.eat("^") {
                e = e.power(self.small()?);
            } else {
                return Ok((e, d));
            }
            d = self.tall(d + 1)?;
        }
    }

    fn atom(&mut self) -> Result<Sized> {
        match self.peek().clone() {
            Tok::Name(name) => {
                self.bump();
                let call = matches!(self.peek(), Tok::Sym("("));
                match name.as_str() {
                    "r" if call => {
                        self.bump();
                        let j = self.small()?;
                        self.expect(")")?;
                        Ok((Expr::RGen(j), 1))
                    }
                    "ex" if call => {
                        self.bump();
                        let (inner, d) = self.expr()?;
                        self.expect(")")?;
                        let d = self.tall(d + 1)?;
                        Ok((inner.exec(), d))
                    }
                    _ => Ok((Expr::Atom(name), 1)),
                }
            }
            Tok::Sym("(") => {
                self.bump();
                let inner = self.expr()?;
                self.expect(")")?;
                Ok(inner)
            }
            Tok::Sym("{") => {
                self.bump();
                let mut pairs = Vec::new();
                loop {
                    let a = self.nat()?;
                    self.expect("->")?;
                    let b = self.nat()?;
                    pairs.push((a, b));
                    if self.eat("}") {
                        break;
                    }
                    if !self.eat(",") {
                        return self.fail(expected(&["`,`", "`}`"]));
                    }
                }
                FiniteMap::new(pairs.iter().cloned())?;
                Ok((Expr::FiniteLit(pairs), 1))
            }
            _ => self.fail(expected(ATOM_START)),
        }
    }
}

/// Parses a term. Literal maps are checked for injectivity here.
pub fn parse(text: &str) -> Result<Expr> {
    let toks = lex(text)?;
    let mut p = Parser { toks, at: 0, depth: 0 };
    let (e, _) = p.expr()?;
    if *p.peek() != Tok::End {
        return p.fail(expected(&["`+`", "`.`", "`*`", "`&`", "`~`", "`^`", "end of input"]));
    }
    Ok(e)
}
