//! Minimal S-expressions for proof and derivation files.
//!
//! Atoms are bare tokens; strings are double-quoted with `\"` and `\\`
//! escapes. `;` starts a line comment.

use std::fmt;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Sexpr {
    Atom(String),
    Str(String),
    List(Vec<Sexpr>),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("s-expression error at byte {offset}: {message}")]
pub struct SexprError {
    pub offset: usize,
    pub message: String,
}

impl Sexpr {
    pub fn as_atom(&self) -> Option<&str> {
        match self {
            Sexpr::Atom(a) => Some(a),
            _ => None,
        }
    }

    pub fn as_str(&self) -> Option<&str> {
        match self {
            Sexpr::Str(s) => Some(s),
            _ => None,
        }
    }

    pub fn as_list(&self) -> Option<&[Sexpr]> {
        match self {
            Sexpr::List(xs) => Some(xs),
            _ => None,
        }
    }

    /// Multi-line rendering: a list whose elements are all flat stays on one
    /// line, otherwise nested lists go on their own indented lines.
    pub fn pretty(&self) -> String {
        let mut out = String::new();
        self.write_pretty(0, &mut out);
        out
    }

    fn write_pretty(&self, indent: usize, out: &mut String) {
        match self {
            Sexpr::List(xs) if xs.iter().any(|x| matches!(x, Sexpr::List(_))) => {
                out.push('(');
                let mut first = true;
                for x in xs {
                    if let Sexpr::List(_) = x {
                        out.push('\n');
                        out.push_str(&" ".repeat(indent + 2));
                        x.write_pretty(indent + 2, out);
                    } else {
                        if !first {
                            out.push(' ');
                        }
                        out.push_str(&x.to_string());
                    }
                    first = false;
                }
                out.push(')');
            }
            _ => out.push_str(&self.to_string()),
        }
    }
}

impl fmt::Display for Sexpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Sexpr::Atom(a) => write!(f, "{a}"),
            Sexpr::Str(s) => {
                write!(f, "\"")?;
                for c in s.chars() {
                    match c {
                        '"' => write!(f, "\\\"")?,
                        '\\' => write!(f, "\\\\")?,
                        _ => write!(f, "{c}")?,
                    }
                }
                write!(f, "\"")
            }
            Sexpr::List(xs) => {
                write!(f, "(")?;
                for (i, x) in xs.iter().enumerate() {
                    if i > 0 {
                        write!(f, " ")?;
                    }
                    write!(f, "{x}")?;
                }
                write!(f, ")")
            }
        }
    }
}

struct Reader<'a> {
    text: &'a str,
    pos: usize,
}

impl Reader<'_> {
    fn err<T>(&self, message: &str) -> Result<T, SexprError> {
        Err(SexprError { offset: self.pos, message: message.to_string() })
    }

    fn skip_ws(&mut self) {
        let bytes = self.text.as_bytes();
        while self.pos < bytes.len() {
            match bytes[self.pos] {
                b';' => {
                    while self.pos < bytes.len() && bytes[self.pos] != b'\n' {
                        self.pos += 1;
                    }
                }
                c if c.is_ascii_whitespace() => self.pos += 1,
                _ => break,
            }
        }
    }

    fn read(&mut self) -> Result<Sexpr, SexprError> {
        self.skip_ws();
        let rest = &self.text[self.pos..];
        let Some(c) = rest.chars().next() else {
            return self.err("unexpected end of input");
        };
        match c {
            '(' => {
                self.pos += 1;
                let mut xs = Vec::new();
                loop {
                    self.skip_ws();
                    match self.text[self.pos..].chars().next() {
                        Some(')') => {
                            self.pos += 1;
                            return Ok(Sexpr::List(xs));
                        }
                        None => return self.err("unclosed `(`"),
                        _ => xs.push(self.read()?),
                    }
                }
            }
            ')' => self.err("unexpected `)`"),
            '"' => {
                self.pos += 1;
                let mut s = String::new();
                let mut chars = self.text[self.pos..].char_indices();
                while let Some((i, c)) = chars.next() {
                    match c {
                        '"' => {
                            self.pos += i + 1;
                            return Ok(Sexpr::Str(s));
                        }
                        '\\' => match chars.next() {
                            Some((_, e)) => s.push(e),
                            None => break,
                        },
                        _ => s.push(c),
                    }
                }
                self.err("unterminated string")
            }
            _ => {
                let end = rest
                    .find(|c: char| c.is_whitespace() || c == '(' || c == ')' || c == '"' || c == ';')
                    .unwrap_or(rest.len());
                self.pos += end;
                Ok(Sexpr::Atom(rest[..end].to_string()))
            }
        }
    }
}

/// Parses exactly one S-expression (surrounding whitespace and comments allowed).
pub fn parse_sexpr(text: &str) -> Result<Sexpr, SexprError> {
    let mut r = Reader { text, pos: 0 };
    let x = r.read()?;
    r.skip_ws();
    if r.pos != text.len() {
        return r.err("trailing input");
    }
    Ok(x)
}
