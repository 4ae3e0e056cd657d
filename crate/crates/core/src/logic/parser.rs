//! Recursive-descent parser for the ASCII formula syntax.
//!
//! ```text
//! formula := disj (("S" | "U") formula)?        right-associative
//! disj    := conj ("|" conj)*
//! conj    := unary ("&" unary)*
//! unary   := ("!" | "Y" | "Y^" INT | "Ystar" | "P") unary | primary
//! primary := "true" | "false" | IDENT | "MOD(" INT "," INT ")" | "(" formula ")"
//! ```

use super::Formula;
use crate::{Alphabet, Error, Result};

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Ident(String),
    Int(usize),
    Bang,
    Amp,
    Pipe,
    Caret,
    Comma,
    LParen,
    RParen,
    Eof,
}

#[derive(Clone, Copy, Debug)]
struct Pos {
    line: usize,
    column: usize,
}

fn syntax(pos: Pos, message: impl Into<String>) -> Error {
    Error::Syntax {
        line: pos.line,
        column: pos.column,
        message: message.into(),
    }
}

fn lex(text: &str) -> Result<Vec<(Tok, Pos)>> {
    let mut out = Vec::new();
    let mut chars = text.chars().peekable();
    let (mut line, mut column) = (1, 1);
    while let Some(&c) = chars.peek() {
        let pos = Pos { line, column };
        if c == '\n' {
            chars.next();
            line += 1;
            column = 1;
            continue;
        }
        if c.is_whitespace() {
            chars.next();
            column += 1;
            continue;
        }
        let single = match c {
            '!' => Some(Tok::Bang),
            '&' => Some(Tok::Amp),
            '|' => Some(Tok::Pipe),
            '^' => Some(Tok::Caret),
            ',' => Some(Tok::Comma),
            '(' => Some(Tok::LParen),
            ')' => Some(Tok::RParen),
            _ => None,
        };
        if let Some(tok) = single {
            chars.next();
            column += 1;
            out.push((tok, pos));
            continue;
        }
        if c.is_ascii_alphanumeric() || c == '_' {
            let mut word = String::new();
            while let Some(&d) = chars.peek() {
                if d.is_ascii_alphanumeric() || d == '_' {
                    word.push(d);
                    chars.next();
                    column += 1;
                } else {
                    break;
                }
            }
            let tok = if word.chars().all(|d| d.is_ascii_digit()) {
                Tok::Int(word.parse().map_err(|_| syntax(pos, "integer out of range"))?)
            } else {
                Tok::Ident(word)
            };
            out.push((tok, pos));
            continue;
        }
        return Err(syntax(pos, format!("unexpected character `{c}`")));
    }
    out.push((Tok::Eof, Pos { line, column }));
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<(Tok, Pos)>,
    at: usize,
    alphabet: &'a Alphabet,
}

impl Parser<'_> {
    fn peek(&self) -> &Tok {
        &self.toks[self.at].0
    }

    fn pos(&self) -> Pos {
        self.toks[self.at].1
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.at].0.clone();
        if self.at + 1 < self.toks.len() {
            self.at += 1;
        }
        t
    }

    fn expect(&mut self, want: Tok, what: &str) -> Result<()> {
        if *self.peek() == want {
            self.bump();
            Ok(())
        } else {
            Err(syntax(self.pos(), format!("expected {what}")))
        }
    }

    fn int(&mut self) -> Result<usize> {
        match self.bump() {
            Tok::Int(n) => Ok(n),
            _ => Err(syntax(self.toks[self.at.saturating_sub(1)].1, "expected integer")),
        }
    }

    fn is_kw(&self, kw: &str) -> bool {
        matches!(self.peek(), Tok::Ident(s) if s == kw)
    }

    fn formula(&mut self) -> Result<Formula> {
        let lhs = self.disjunction()?;
        if self.is_kw("S") || self.is_kw("U") {
            let since = self.is_kw("S");
            self.bump();
            let rhs = self.formula()?;
            return Ok(if since {
                Formula::since(lhs, rhs)
            } else {
                Formula::until(lhs, rhs)
            });
        }
        Ok(lhs)
    }

    fn disjunction(&mut self) -> Result<Formula> {
        let mut f = self.conjunction()?;
        while *self.peek() == Tok::Pipe {
            self.bump();
            f = Formula::or(f, self.conjunction()?);
        }
        Ok(f)
    }

    fn conjunction(&mut self) -> Result<Formula> {
        let mut f = self.unary()?;
        while *self.peek() == Tok::Amp {
            self.bump();
            f = Formula::and(f, self.unary()?);
        }
        Ok(f)
    }

    fn unary(&mut self) -> Result<Formula> {
        let pos = self.pos();
        match self.peek().clone() {
            Tok::Bang => {
                self.bump();
                Ok(Formula::not(self.unary()?))
            }
            Tok::Ident(kw) if kw == "Y" => {
                self.bump();
                if *self.peek() == Tok::Caret {
                    self.bump();
                    let k = self.int()?;
                    if k == 0 {
                        return Err(syntax(pos, "Y^k requires k >= 1"));
                    }
                    Ok(Formula::YesterdayWithin(k, Box::new(self.unary()?)))
                } else {
                    Ok(Formula::yesterday(self.unary()?))
                }
            }
            Tok::Ident(kw) if kw == "Ystar" => {
                self.bump();
                Ok(Formula::yesterday_star(self.unary()?))
            }
            Tok::Ident(kw) if kw == "P" => {
                self.bump();
                Ok(Formula::past(self.unary()?))
            }
            _ => self.primary(),
        }
    }

    fn primary(&mut self) -> Result<Formula> {
        let pos = self.pos();
        match self.bump() {
            Tok::LParen => {
                let f = self.formula()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(f)
            }
            Tok::Ident(id) => match id.as_str() {
                "true" => Ok(Formula::Top),
                "false" => Ok(Formula::Bot),
                "MOD" => {
                    self.expect(Tok::LParen, "`(` after MOD")?;
                    let m = self.int()?;
                    self.expect(Tok::Comma, "`,`")?;
                    let r = self.int()?;
                    self.expect(Tok::RParen, "`)`")?;
                    if m == 0 {
                        return Err(syntax(pos, "MOD(m,r) requires m > 0"));
                    }
                    Formula::modulo(m, r)
                }
                "S" | "U" | "Y" | "Ystar" | "P" => {
                    Err(syntax(pos, format!("unexpected keyword `{id}`")))
                }
                _ => {
                    if self.alphabet.index_of(&id).is_none() {
                        return Err(Error::UnknownToken(id));
                    }
                    Ok(Formula::Atom(id))
                }
            },
            Tok::Eof => Err(syntax(pos, "unexpected end of input")),
            other => Err(syntax(pos, format!("unexpected token {other:?}"))),
        }
    }
}

/// Parses `text` into a formula whose atoms must belong to `alphabet`.
pub fn parse_formula(text: &str, alphabet: &Alphabet) -> Result<Formula> {
    let mut p = Parser {
        toks: lex(text)?,
        at: 0,
        alphabet,
    };
    let f = p.formula()?;
    if *p.peek() != Tok::Eof {
        return Err(syntax(p.pos(), "trailing input"));
    }
    Ok(f)
}
