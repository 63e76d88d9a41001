//! Recursive-descent parser for polynomial text.
//!
//! Grammar:
//!
//! ```text
//! expr   := ['-'] term (('+' | '-') term)*
//! term   := factor (('*' | '/') factor)*
//! factor := atom ['^' integer]
//! atom   := integer | variable | '(' expr ')' | '-' atom
//! ```
//!
//! Division is only accepted by a nonzero constant.

use num_bigint::BigInt;

use super::Polynomial;
use crate::error::{Error, Result};
use crate::field::Field;

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    End,
}

fn tokenize(text: &str) -> Result<Vec<(Tok, usize)>> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        let start = i;
        let tok = match c {
            b' ' | b'\t' | b'\n' | b'\r' => {
                i += 1;
                continue;
            }
            b'+' => Tok::Plus,
            b'-' => Tok::Minus,
            b'*' => Tok::Star,
            b'/' => Tok::Slash,
            b'^' => Tok::Caret,
            b'(' => Tok::LParen,
            b')' => Tok::RParen,
            b'0'..=b'9' => {
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let v = text[start..i].parse::<BigInt>().expect("digits");
                out.push((Tok::Int(v), start));
                continue;
            }
            c if c.is_ascii_alphabetic() || c == b'_' => {
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                out.push((Tok::Ident(text[start..i].to_string()), start));
                continue;
            }
            _ => {
                return Err(Error::Syntax {
                    offset: start,
                    message: format!(
                        "unexpected character `{}`",
                        text[start..].chars().next().unwrap()
                    ),
                })
            }
        };
        out.push((tok, start));
        i += 1;
    }
    out.push((Tok::End, text.len()));
    Ok(out)
}

struct Parser<'a, F: Field> {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    names: &'a [&'a str],
    field: &'a F,
}

impl<F: Field> Parser<'_, F> {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn offset(&self) -> usize {
        self.toks[self.pos].1
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].0.clone();
        if t != Tok::End {
            self.pos += 1;
        }
        t
    }

    fn error<T>(&self, message: impl Into<String>) -> Result<T> {
        Err(Error::Syntax {
            offset: self.offset(),
            message: message.into(),
        })
    }

    fn expr(&mut self) -> Result<Polynomial<F>> {
        let mut acc = if *self.peek() == Tok::Minus {
            self.bump();
            self.term()?.neg()
        } else {
            self.term()?
        };
        loop {
            match self.peek() {
                Tok::Plus => {
                    self.bump();
                    acc = acc.add(&self.term()?);
                }
                Tok::Minus => {
                    self.bump();
                    acc = acc.sub(&self.term()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Polynomial<F>> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Tok::Star => {
                    self.bump();
                    acc = acc.multiply(&self.factor()?);
                }
                Tok::Slash => {
                    self.bump();
                    let at = self.offset();
                    let d = self.factor()?;
                    let c = constant_value(&d).ok_or(Error::Syntax {
                        offset: at,
                        message: "division is only allowed by a constant".into(),
                    })?;
                    let inv = self.field.inv(&c).map_err(|_| Error::Syntax {
                        offset: at,
                        message: "division by zero".into(),
                    })?;
                    acc = acc.scale(&inv);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<Polynomial<F>> {
        let base = self.atom()?;
        if *self.peek() == Tok::Caret {
            self.bump();
            match self.bump() {
                Tok::Int(e) => {
                    let e: u32 = e.try_into().map_err(|_| Error::Syntax {
                        offset: self.toks[self.pos - 1].1,
                        message: "exponent too large".into(),
                    })?;
                    return Ok(base.pow(e));
                }
                _ => {
                    self.pos -= 1;
                    return self.error("expected integer exponent");
                }
            }
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Polynomial<F>> {
        let nvars = self.names.len();
        let at = self.offset();
        match self.bump() {
            Tok::Int(v) => Ok(Polynomial::constant(
                self.field,
                nvars,
                self.field.from_bigint(&v),
            )),
            Tok::Ident(name) => match self.names.iter().position(|n| *n == name) {
                Some(j) => Ok(Polynomial::var(self.field, nvars, j)),
                None => Err(Error::UnknownVariable { name, offset: at }),
            },
            Tok::LParen => {
                let inner = self.expr()?;
                if self.bump() != Tok::RParen {
                    self.pos -= 1;
                    return self.error("expected `)`");
                }
                Ok(inner)
            }
            Tok::Minus => Ok(self.atom()?.neg()),
            Tok::End => {
                self.pos = self.toks.len() - 1;
                self.error("unexpected end of input")
            }
            t => {
                self.pos -= 1;
                self.error(format!("unexpected token {t:?}"))
            }
        }
    }
}

fn constant_value<F: Field>(p: &Polynomial<F>) -> Option<F::Elem> {
    match p.num_terms() {
        0 => Some(p.field().zero()),
        1 => {
            let (m, c) = p.terms().next()?;
            (m.degree() == 0).then(|| c.clone())
        }
        _ => None,
    }
}

/// Parses `text` over `field` in the variables `names` (index order).
pub fn parse_polynomial<F: Field>(
    text: &str,
    names: &[impl AsRef<str>],
    field: &F,
) -> Result<Polynomial<F>> {
    let names: Vec<&str> = names.iter().map(AsRef::as_ref).collect();
    let mut parser = Parser {
        toks: tokenize(text)?,
        pos: 0,
        names: &names,
        field,
    };
    if *parser.peek() == Tok::End {
        return parser.error("empty polynomial");
    }
    let p = parser.expr()?;
    if *parser.peek() != Tok::End {
        return parser.error("trailing input");
    }
    Ok(p)
}
