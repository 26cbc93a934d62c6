//! Text syntax for group elements.
//!
//! ```text
//! word := term*
//! term := atom ('^' (int | atom))?
//! atom := gen | '1' | '(' word ')' | '[' word ',' word ']'
//! gen  := 'a' digits | 't' | 'p' | 'h' digits | '~' gen
//! int  := '-'? digits
//! ```
//!
//! `x^n` is a power, `x^y` is the conjugate `y^-1 x y`, `[x, y]` is
//! `x^-1 y^-1 x y`, and `1` is the identity. Whitespace may appear between
//! tokens.

use std::fmt;

use crate::error::{Error, Result};
use crate::words::{GenKind, Generator, Word, DEFAULT_MAX_LENGTH};

const MAX_DEPTH: usize = 200;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Expr {
    Gen(Generator),
    Identity,
    Seq(Vec<Expr>),
    Pow(Box<Expr>, i64),
    Conj(Box<Expr>, Box<Expr>),
    Comm(Box<Expr>, Box<Expr>),
}

impl Expr {
    pub fn eval(&self) -> Result<Word> {
        self.eval_bounded(DEFAULT_MAX_LENGTH)
    }

    pub fn eval_bounded(&self, limit: usize) -> Result<Word> {
        match self {
            Expr::Gen(g) => Ok(Word::gen(*g)),
            Expr::Identity => Ok(Word::empty()),
            Expr::Seq(terms) => {
                let mut acc = Word::empty();
                for t in terms {
                    acc = acc.mul_bounded(&t.eval_bounded(limit)?, limit)?;
                }
                Ok(acc)
            }
            Expr::Pow(x, n) => x.eval_bounded(limit)?.pow(*n, limit),
            Expr::Conj(x, y) => {
                let (x, y) = (x.eval_bounded(limit)?, y.eval_bounded(limit)?);
                y.inverse().mul_bounded(&x, limit)?.mul_bounded(&y, limit)
            }
            Expr::Comm(x, y) => {
                let (x, y) = (x.eval_bounded(limit)?, y.eval_bounded(limit)?);
                x.inverse()
                    .mul_bounded(&y.inverse(), limit)?
                    .mul_bounded(&x, limit)?
                    .mul_bounded(&y, limit)
            }
        }
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Gen(g) => write!(f, "{g}"),
            Expr::Identity => f.write_str("1"),
            Expr::Seq(terms) => {
                f.write_str("(")?;
                for (i, t) in terms.iter().enumerate() {
                    if i > 0 {
                        f.write_str(" ")?;
                    }
                    write!(f, "{t}")?;
                }
                f.write_str(")")
            }
            Expr::Pow(x, n) => write!(f, "{x}^{n}"),
            Expr::Conj(x, y) => write!(f, "{x}^{y}"),
            Expr::Comm(x, y) => write!(f, "[{x}, {y}]"),
        }
    }
}

pub fn parse(text: &str) -> Result<Expr> {
    let mut p = Parser {
        src: text.as_bytes(),
        pos: 0,
        depth: 0,
    };
    let e = p.word()?;
    p.skip_ws();
    if p.pos < p.src.len() {
        return Err(p.error(format!("unexpected '{}'", p.src[p.pos] as char)));
    }
    Ok(e)
}

/// Parses and evaluates in one step.
pub fn parse_word(text: &str) -> Result<Word> {
    parse(text)?.eval()
}

pub fn parse_word_bounded(text: &str, limit: usize) -> Result<Word> {
    parse(text)?.eval_bounded(limit)
}

/// Exponent-folded text that [`parse_word`] reads back to the same word.
pub fn format(w: &Word) -> String {
    w.to_string()
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    depth: usize,
}

impl Parser<'_> {
    fn error(&self, msg: impl Into<String>) -> Error {
        Error::Syntax {
            pos: self.pos,
            msg: msg.into(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.error(format!("expected '{}'", c as char)))
        }
    }

    fn word(&mut self) -> Result<Expr> {
        let mut terms = Vec::new();
        while let Some(c) = self.peek() {
            if matches!(c, b')' | b']' | b',') {
                break;
            }
            terms.push(self.term()?);
        }
        Ok(if terms.len() == 1 {
            terms.pop().expect("one term")
        } else {
            Expr::Seq(terms)
        })
    }

    fn term(&mut self) -> Result<Expr> {
        let base = self.atom()?;
        if self.peek() != Some(b'^') {
            return Ok(base);
        }
        self.pos += 1;
        match self.peek() {
            Some(c) if c == b'-' || c.is_ascii_digit() => {
                let n = self.int()?;
                Ok(Expr::Pow(Box::new(base), n))
            }
            Some(_) => {
                let by = self.atom()?;
                Ok(Expr::Conj(Box::new(base), Box::new(by)))
            }
            None => Err(self.error("expected an exponent after '^'")),
        }
    }

    fn atom(&mut self) -> Result<Expr> {
        self.depth += 1;
        if self.depth > MAX_DEPTH {
            return Err(self.error("expression nested too deeply"));
        }
        let out = match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let inner = self.word()?;
                self.expect(b')')?;
                inner
            }
            Some(b'[') => {
                self.pos += 1;
                let x = self.word()?;
                self.expect(b',')?;
                let y = self.word()?;
                self.expect(b']')?;
                Expr::Comm(Box::new(x), Box::new(y))
            }
            Some(b'1') => {
                self.pos += 1;
                if self.src.get(self.pos).is_some_and(u8::is_ascii_digit) {
                    return Err(self.error("unexpected digit after '1'"));
                }
                Expr::Identity
            }
            Some(_) => Expr::Gen(self.gen()?),
            None => return Err(self.error("unexpected end of input")),
        };
        self.depth -= 1;
        Ok(out)
    }

    fn gen(&mut self) -> Result<Generator> {
        let start = self.pos;
        let Some(&c) = self.src.get(self.pos) else {
            return Err(self.error("expected a generator"));
        };
        self.pos += 1;
        let g = match c {
            b'~' => {
                let inner = self.gen()?;
                if !matches!(inner.kind, GenKind::A(_) | GenKind::T) {
                    self.pos = start;
                    return Err(self.error("only a- and t-letters can be mirrored"));
                }
                return Ok(inner.toggle_mirror());
            }
            b't' => Generator::T,
            b'p' => Generator::P,
            b'a' => Generator::a(self.index()?),
            b'h' => Generator::h(self.index()?),
            _ => {
                self.pos = start;
                return Err(self.error(format!("unexpected '{}'", c as char)));
            }
        };
        Ok(g)
    }

    fn digits(&mut self) -> Result<&str> {
        let start = self.pos;
        while self.src.get(self.pos).is_some_and(u8::is_ascii_digit) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected digits"));
        }
        Ok(std::str::from_utf8(&self.src[start..self.pos]).expect("ascii"))
    }

    fn index(&mut self) -> Result<u32> {
        let start = self.pos;
        let i: u32 = self.digits()?.parse().map_err(|_| Error::Syntax {
            pos: start,
            msg: "generator index out of range".into(),
        })?;
        if i == 0 {
            return Err(Error::Syntax {
                pos: start,
                msg: "generator indices start at 1".into(),
            });
        }
        Ok(i)
    }

    fn int(&mut self) -> Result<i64> {
        let start = self.pos;
        let neg = self.src.get(self.pos) == Some(&b'-');
        if neg {
            self.pos += 1;
        }
        let digits = self.digits()?;
        let text = if neg {
            format!("-{digits}")
        } else {
            digits.to_string()
        };
        text.parse().map_err(|_| Error::Syntax {
            pos: start,
            msg: "exponent out of range".into(),
        })
    }
}
