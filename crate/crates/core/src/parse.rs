//! Recursive-descent parser for the formula text grammar:
//!
//! ```text
//! formula := dis
//! dis     := con ('||' con)*
//! con     := unary ('&&' unary)*
//! unary   := '!' unary | '(' formula ')' | 'T' | 'F' | IDENT
//! ```

use std::fmt;

use thiserror::Error;

use crate::formula::{Atom, Formula};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("unexpected character `{found}` at position {pos}")]
    UnexpectedChar { pos: usize, found: char },
    #[error("expected {expected} at position {pos}, found {found}")]
    UnexpectedToken {
        pos: usize,
        expected: &'static str,
        found: String,
    },
    #[error("unexpected end of input at position {pos}, expected {expected}")]
    UnexpectedEnd { pos: usize, expected: &'static str },
}

impl ParseError {
    pub fn position(&self) -> usize {
        match self {
            ParseError::UnexpectedChar { pos, .. }
            | ParseError::UnexpectedToken { pos, .. }
            | ParseError::UnexpectedEnd { pos, .. } => *pos,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Not,
    And,
    Or,
    LParen,
    RParen,
    True,
    False,
    Ident(String),
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Not => f.write_str("`!`"),
            Tok::And => f.write_str("`&&`"),
            Tok::Or => f.write_str("`||`"),
            Tok::LParen => f.write_str("`(`"),
            Tok::RParen => f.write_str("`)`"),
            Tok::True => f.write_str("`T`"),
            Tok::False => f.write_str("`F`"),
            Tok::Ident(s) => write!(f, "`{s}`"),
        }
    }
}

fn lex(input: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let bytes = input.as_bytes();
    let mut toks = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        match c {
            b' ' | b'\t' | b'\n' | b'\r' => i += 1,
            b'!' => {
                toks.push((i, Tok::Not));
                i += 1;
            }
            b'(' => {
                toks.push((i, Tok::LParen));
                i += 1;
            }
            b')' => {
                toks.push((i, Tok::RParen));
                i += 1;
            }
            b'&' if bytes.get(i + 1) == Some(&b'&') => {
                toks.push((i, Tok::And));
                i += 2;
            }
            b'|' if bytes.get(i + 1) == Some(&b'|') => {
                toks.push((i, Tok::Or));
                i += 2;
            }
            c if c.is_ascii_alphabetic() || c == b'_' => {
                let start = i;
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                let word = &input[start..i];
                let tok = match word {
                    "T" => Tok::True,
                    "F" => Tok::False,
                    _ => Tok::Ident(word.to_string()),
                };
                toks.push((start, tok));
            }
            _ => {
                let found = input[i..].chars().next().unwrap_or('?');
                return Err(ParseError::UnexpectedChar { pos: i, found });
            }
        }
    }
    Ok(toks)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    idx: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.idx).map(|(_, t)| t)
    }

    fn pos(&self) -> usize {
        self.toks.get(self.idx).map_or(self.end, |(p, _)| *p)
    }

    fn dis(&mut self) -> Result<Formula, ParseError> {
        let mut left = self.con()?;
        while self.peek() == Some(&Tok::Or) {
            self.idx += 1;
            let right = self.con()?;
            left = Formula::or(left, right);
        }
        Ok(left)
    }

    fn con(&mut self) -> Result<Formula, ParseError> {
        let mut left = self.unary()?;
        while self.peek() == Some(&Tok::And) {
            self.idx += 1;
            let right = self.unary()?;
            left = Formula::and(left, right);
        }
        Ok(left)
    }

    fn unary(&mut self) -> Result<Formula, ParseError> {
        const EXPECTED: &str = "`!`, `(`, `T`, `F` or an atom";
        let pos = self.pos();
        let Some(tok) = self.peek().cloned() else {
            return Err(ParseError::UnexpectedEnd { pos, expected: EXPECTED });
        };
        self.idx += 1;
        match tok {
            Tok::Not => Ok(Formula::not(self.unary()?)),
            Tok::LParen => {
                let inner = self.dis()?;
                match self.peek() {
                    Some(Tok::RParen) => {
                        self.idx += 1;
                        Ok(inner)
                    }
                    Some(other) => Err(ParseError::UnexpectedToken {
                        pos: self.pos(),
                        expected: "`)`",
                        found: other.to_string(),
                    }),
                    None => Err(ParseError::UnexpectedEnd {
                        pos: self.pos(),
                        expected: "`)`",
                    }),
                }
            }
            Tok::True => Ok(Formula::TRUE),
            Tok::False => Ok(Formula::FALSE),
            // The lexer only produces identifiers that are valid atoms.
            Tok::Ident(name) => Ok(Formula::Lit(Atom::new(&name).expect("lexed identifier"))),
            other => Err(ParseError::UnexpectedToken {
                pos,
                expected: EXPECTED,
                found: other.to_string(),
            }),
        }
    }
}

/// Parses a formula. `!` binds tighter than `&&`, which binds tighter than
/// `||`; both binary operators associate to the left.
pub fn parse(input: &str) -> Result<Formula, ParseError> {
    let toks = lex(input)?;
    let mut parser = Parser {
        toks,
        idx: 0,
        end: input.len(),
    };
    let f = parser.dis()?;
    if let Some(tok) = parser.peek() {
        return Err(ParseError::UnexpectedToken {
            pos: parser.pos(),
            expected: "`&&`, `||` or end of input",
            found: tok.to_string(),
        });
    }
    Ok(f)
}

impl std::str::FromStr for Formula {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse(s)
    }
}
