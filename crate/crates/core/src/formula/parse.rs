//! Recursive-descent parser.
//!
//! ```text
//! iff     := implies ("<->" implies)*        left-associative
//! implies := or ("->" implies)?              right-associative
//! or      := and ("|" and)*
//! and     := unary ("&" unary)*
//! unary   := "~" unary | primary
//! primary := "p" digits | "TOP" | "BOT" | "(" iff ")"
//! ```

use super::{Connective, Formula};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Tok {
    Atom(u32),
    Top,
    Bot,
    Not,
    Op(Connective),
    LParen,
    RParen,
    End,
}

fn describe(t: Tok) -> String {
    match t {
        Tok::Atom(i) => format!("atom p{i}"),
        Tok::Top => "TOP".into(),
        Tok::Bot => "BOT".into(),
        Tok::Not => "'~'".into(),
        Tok::Op(op) => format!("'{}'", op.symbol()),
        Tok::LParen => "'('".into(),
        Tok::RParen => "')'".into(),
        Tok::End => "end of input".into(),
    }
}

fn tokenize(text: &str) -> Result<Vec<(usize, Tok)>> {
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
            b'(' => {
                i += 1;
                Tok::LParen
            }
            b')' => {
                i += 1;
                Tok::RParen
            }
            b'~' => {
                i += 1;
                Tok::Not
            }
            b'&' => {
                i += 1;
                Tok::Op(Connective::And)
            }
            b'|' => {
                i += 1;
                Tok::Op(Connective::Or)
            }
            b'-' if text[i..].starts_with("->") => {
                i += 2;
                Tok::Op(Connective::Implies)
            }
            b'<' if text[i..].starts_with("<->") => {
                i += 3;
                Tok::Op(Connective::Iff)
            }
            b'p' => {
                i += 1;
                let digits_start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                if digits_start == i {
                    return Err(Error::parse(start, "expected digits after 'p'"));
                }
                let index: u32 = text[digits_start..i]
                    .parse()
                    .map_err(|_| Error::parse(start, "atom index too large"))?;
                if index == 0 {
                    return Err(Error::parse(start, "atom index must be at least 1"));
                }
                Tok::Atom(index)
            }
            b'T' if text[i..].starts_with("TOP") => {
                i += 3;
                Tok::Top
            }
            b'B' if text[i..].starts_with("BOT") => {
                i += 3;
                Tok::Bot
            }
            _ => {
                let ch = text[i..].chars().next().unwrap_or('?');
                return Err(Error::parse(start, format!("unexpected character {ch:?}")));
            }
        };
        // Keywords and atoms must not run into identifier characters.
        if matches!(tok, Tok::Atom(_) | Tok::Top | Tok::Bot)
            && i < bytes.len()
            && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_')
        {
            return Err(Error::parse(start, "malformed identifier"));
        }
        out.push((start, tok));
    }
    out.push((text.len(), Tok::End));
    Ok(out)
}

struct Parser {
    tokens: Vec<(usize, Tok)>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> Tok {
        self.tokens[self.pos].1
    }

    fn offset(&self) -> usize {
        self.tokens[self.pos].0
    }

    fn bump(&mut self) -> Tok {
        let t = self.peek();
        if t != Tok::End {
            self.pos += 1;
        }
        t
    }

    fn eat(&mut self, op: Connective) -> bool {
        if self.peek() == Tok::Op(op) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn iff(&mut self) -> Result<Formula> {
        let mut lhs = self.implies()?;
        while self.eat(Connective::Iff) {
            let rhs = self.implies()?;
            lhs = lhs.iff(rhs);
        }
        Ok(lhs)
    }

    fn implies(&mut self) -> Result<Formula> {
        let lhs = self.or()?;
        if self.eat(Connective::Implies) {
            let rhs = self.implies()?;
            return Ok(lhs.implies(rhs));
        }
        Ok(lhs)
    }

    fn or(&mut self) -> Result<Formula> {
        let mut lhs = self.and()?;
        while self.eat(Connective::Or) {
            lhs = lhs.or(self.and()?);
        }
        Ok(lhs)
    }

    fn and(&mut self) -> Result<Formula> {
        let mut lhs = self.unary()?;
        while self.eat(Connective::And) {
            lhs = lhs.and(self.unary()?);
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Formula> {
        if self.peek() == Tok::Not {
            self.pos += 1;
            return Ok(self.unary()?.not());
        }
        self.primary()
    }

    fn primary(&mut self) -> Result<Formula> {
        let at = self.offset();
        match self.bump() {
            Tok::Atom(i) => Ok(Formula::Atom(i)),
            Tok::Top => Ok(Formula::Top),
            Tok::Bot => Ok(Formula::Bottom),
            Tok::LParen => {
                let inner = self.iff()?;
                let close = self.offset();
                match self.bump() {
                    Tok::RParen => Ok(inner),
                    other => Err(Error::parse(
                        close,
                        format!("expected ')', found {}", describe(other)),
                    )),
                }
            }
            other => Err(Error::parse(
                at,
                format!("expected a formula, found {}", describe(other)),
            )),
        }
    }
}

pub fn parse(text: &str) -> Result<Formula> {
    let mut p = Parser {
        tokens: tokenize(text)?,
        pos: 0,
    };
    let f = p.iff()?;
    match p.peek() {
        Tok::End => Ok(f),
        other => Err(Error::parse(
            p.offset(),
            format!("unexpected {} after formula", describe(other)),
        )),
    }
}
