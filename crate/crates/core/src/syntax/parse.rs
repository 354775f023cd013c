//! Recursive-descent parser for formulas, structures and sequents.
//!
//! Precedence, tightest first: `~` (prefix), `*`, `&`, `|`, then `->` and
//! `<-`. `->` is right-associative, `<-` and the lattice/product operators are
//! left-associative. In structures `,` is `⊙` and `;` is `⊘`; `,` binds
//! tighter than `;` and both associate to the left.

use std::collections::BTreeSet;

use thiserror::Error;

use super::{Formula, Sequent, SimpleSequent, Structure};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("parse error at byte {offset}: expected {}, found {found}", expected_list(.expected))]
pub struct ParseError {
    pub offset: usize,
    pub expected: BTreeSet<String>,
    pub found: String,
}

fn expected_list(e: &BTreeSet<String>) -> String {
    let v: Vec<&str> = e.iter().map(String::as_str).collect();
    if v.len() == 1 {
        v[0].to_string()
    } else {
        format!("one of {}", v.join(" "))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Bot,
    Top,
    Amp,
    Bar,
    Star,
    Arrow,
    LArrow,
    Tilde,
    LParen,
    RParen,
    Comma,
    Semi,
    Turnstile,
    Eof,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Ident(s) => format!("identifier `{s}`"),
            Tok::Bot => "`bot`".into(),
            Tok::Top => "`top`".into(),
            Tok::Amp => "`&`".into(),
            Tok::Bar => "`|`".into(),
            Tok::Star => "`*`".into(),
            Tok::Arrow => "`->`".into(),
            Tok::LArrow => "`<-`".into(),
            Tok::Tilde => "`~`".into(),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
            Tok::Comma => "`,`".into(),
            Tok::Semi => "`;`".into(),
            Tok::Turnstile => "`|-`".into(),
            Tok::Eof => "end of input".into(),
        }
    }
}

fn lex(text: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        if c.is_ascii_whitespace() {
            i += 1;
            continue;
        }
        let start = i;
        let two = bytes.get(i..i + 2);
        let tok = match c {
            b'&' => Tok::Amp,
            b'*' => Tok::Star,
            b'~' => Tok::Tilde,
            b'(' => Tok::LParen,
            b')' => Tok::RParen,
            b',' => Tok::Comma,
            b';' => Tok::Semi,
            b'|' if two == Some(b"|-") => {
                i += 1;
                Tok::Turnstile
            }
            b'|' => Tok::Bar,
            b'-' if two == Some(b"->") => {
                i += 1;
                Tok::Arrow
            }
            b'<' if two == Some(b"<-") => {
                i += 1;
                Tok::LArrow
            }
            c if c.is_ascii_alphabetic() || c == b'_' => {
                while i + 1 < bytes.len()
                    && (bytes[i + 1].is_ascii_alphanumeric() || bytes[i + 1] == b'_' || bytes[i + 1] == b'\'')
                {
                    i += 1;
                }
                match &text[start..=i] {
                    "bot" => Tok::Bot,
                    "top" => Tok::Top,
                    s => Tok::Ident(s.to_string()),
                }
            }
            _ => {
                let ch = text[start..].chars().next().unwrap_or('?');
                return Err(ParseError {
                    offset: start,
                    expected: ["token".to_string()].into_iter().collect(),
                    found: format!("character `{ch}`"),
                });
            }
        };
        i += 1;
        out.push((start, tok));
    }
    out.push((text.len(), Tok::Eof));
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    /// Furthest failure seen, kept across backtracking.
    best: Option<ParseError>,
}

type PResult<T> = Result<T, ParseError>;

impl Parser {
    fn new(text: &str) -> PResult<Parser> {
        Ok(Parser { toks: lex(text)?, pos: 0, best: None })
    }

    fn peek(&self) -> &Tok {
        &self.toks[self.pos].1
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].1.clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn error(&mut self, expected: &[&str]) -> ParseError {
        let (offset, tok) = &self.toks[self.pos];
        let err = ParseError {
            offset: *offset,
            expected: expected.iter().map(|s| s.to_string()).collect(),
            found: tok.describe(),
        };
        match &mut self.best {
            Some(b) if b.offset > err.offset => b.clone(),
            Some(b) if b.offset == err.offset => {
                b.expected.extend(err.expected.iter().cloned());
                b.clone()
            }
            _ => {
                self.best = Some(err.clone());
                err
            }
        }
    }

    fn expect(&mut self, tok: Tok, name: &str) -> PResult<()> {
        if *self.peek() == tok {
            self.bump();
            Ok(())
        } else {
            Err(self.error(&[name]))
        }
    }

    fn imp(&mut self) -> PResult<Formula> {
        let mut lhs = self.disj()?;
        loop {
            match self.peek() {
                Tok::Arrow => {
                    self.bump();
                    let rhs = self.imp()?;
                    return Ok(Formula::rimp(lhs, rhs));
                }
                Tok::LArrow => {
                    self.bump();
                    let rhs = self.disj()?;
                    lhs = Formula::limp(lhs, rhs);
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn disj(&mut self) -> PResult<Formula> {
        let mut lhs = self.conj()?;
        while *self.peek() == Tok::Bar {
            self.bump();
            lhs = Formula::or(lhs, self.conj()?);
        }
        Ok(lhs)
    }

    fn conj(&mut self) -> PResult<Formula> {
        let mut lhs = self.product()?;
        while *self.peek() == Tok::Amp {
            self.bump();
            lhs = Formula::and(lhs, self.product()?);
        }
        Ok(lhs)
    }

    fn product(&mut self) -> PResult<Formula> {
        let mut lhs = self.unary()?;
        while *self.peek() == Tok::Star {
            self.bump();
            lhs = Formula::prod(lhs, self.unary()?);
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> PResult<Formula> {
        if *self.peek() == Tok::Tilde {
            self.bump();
            return Ok(Formula::neg(self.unary()?));
        }
        self.atom()
    }

    fn atom(&mut self) -> PResult<Formula> {
        match self.peek().clone() {
            Tok::Ident(name) => {
                self.bump();
                Ok(Formula::prop(&name))
            }
            Tok::Bot => {
                self.bump();
                Ok(Formula::Bot)
            }
            Tok::Top => {
                self.bump();
                Ok(Formula::Top)
            }
            Tok::LParen => {
                self.bump();
                let f = self.imp()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(f)
            }
            _ => Err(self.error(&["identifier", "`bot`", "`top`", "`~`", "`(`"])),
        }
    }

    fn structure(&mut self) -> PResult<Structure> {
        let mut lhs = self.struct_prod()?;
        while *self.peek() == Tok::Semi {
            self.bump();
            lhs = Structure::omeet(lhs, self.struct_prod()?);
        }
        Ok(lhs)
    }

    fn struct_prod(&mut self) -> PResult<Structure> {
        let mut lhs = self.struct_term()?;
        while *self.peek() == Tok::Comma {
            self.bump();
            lhs = Structure::oprod(lhs, self.struct_term()?);
        }
        Ok(lhs)
    }

    fn struct_term(&mut self) -> PResult<Structure> {
        let save = self.pos;
        let formula = self.imp();
        if let Ok(f) = formula {
            if matches!(self.peek(), Tok::Comma | Tok::Semi | Tok::RParen | Tok::Turnstile | Tok::Eof) {
                return Ok(Structure::Leaf(f));
            }
            self.error(&["`,`", "`;`", "`|-`"]);
        }
        self.pos = save;
        if *self.peek() != Tok::LParen {
            return Err(self.best.clone().unwrap_or_else(|| self.error(&["formula"])));
        }
        self.bump();
        let s = self.structure()?;
        if *self.peek() != Tok::RParen {
            self.error(&["`)`"]);
            return Err(self.best.clone().unwrap());
        }
        self.bump();
        Ok(s)
    }

    fn finish(&mut self) -> PResult<()> {
        if *self.peek() == Tok::Eof {
            Ok(())
        } else {
            self.error(&["end of input"]);
            Err(self.best.clone().unwrap())
        }
    }
}

/// Parses a formula, e.g. `p * q -> r`.
pub fn parse_formula(text: &str) -> Result<Formula, ParseError> {
    let mut p = Parser::new(text)?;
    let f = p.imp()?;
    if *p.peek() != Tok::Eof {
        return Err(p.error(&["`&`", "`|`", "`*`", "`->`", "`<-`", "end of input"]));
    }
    Ok(f)
}

/// Parses a structure, e.g. `p , (q ; r)`.
pub fn parse_structure(text: &str) -> Result<Structure, ParseError> {
    let mut p = Parser::new(text)?;
    let s = p.structure()?;
    p.finish()?;
    Ok(s)
}

/// Parses `Γ |- A`.
pub fn parse_sequent(text: &str) -> Result<Sequent, ParseError> {
    let mut p = Parser::new(text)?;
    let ante = p.structure()?;
    if *p.peek() != Tok::Turnstile {
        p.error(&["`|-`"]);
        return Err(p.best.clone().unwrap());
    }
    p.bump();
    let succ = p.imp()?;
    p.finish()?;
    Ok(Sequent::new(ante, succ))
}

/// Parses `A |- B` where both sides are single formulas.
pub fn parse_simple_sequent(text: &str) -> Result<SimpleSequent, ParseError> {
    let mut p = Parser::new(text)?;
    let lhs = p.imp()?;
    p.expect(Tok::Turnstile, "`|-`")?;
    let rhs = p.imp()?;
    p.finish()?;
    Ok(SimpleSequent::new(lhs, rhs))
}
