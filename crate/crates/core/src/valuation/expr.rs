//! Propositional expressions over named projectors.
//!
//! Text grammar, loosest binding first:
//!
//! ```text
//! or    := and ('|' and)*
//! and   := unary ('&' unary)*
//! unary := '!' unary | '(' or ')' | atom
//! ```
//!
//! An atom is any run of characters other than whitespace, `!`, `&`, `|`,
//! `(` and `)`, so names like `x+` or `P_1z-` need no quoting.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum PropExpr {
    Atom(String),
    Not(Box<PropExpr>),
    And(Box<PropExpr>, Box<PropExpr>),
    Or(Box<PropExpr>, Box<PropExpr>),
}

impl PropExpr {
    pub fn atom(name: impl Into<String>) -> Self {
        Self::Atom(name.into())
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(e: PropExpr) -> Self {
        Self::Not(Box::new(e))
    }

    pub fn and(a: PropExpr, b: PropExpr) -> Self {
        Self::And(Box::new(a), Box::new(b))
    }

    pub fn or(a: PropExpr, b: PropExpr) -> Self {
        Self::Or(Box::new(a), Box::new(b))
    }

    /// Atom names in left-to-right order, with repeats.
    pub fn atoms(&self) -> Vec<&str> {
        let mut out = Vec::new();
        self.collect_atoms(&mut out);
        out
    }

    fn collect_atoms<'a>(&'a self, out: &mut Vec<&'a str>) {
        match self {
            Self::Atom(name) => out.push(name),
            Self::Not(e) => e.collect_atoms(out),
            Self::And(a, b) | Self::Or(a, b) => {
                a.collect_atoms(out);
                b.collect_atoms(out);
            }
        }
    }
}

impl fmt::Display for PropExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Atom(name) => write!(f, "{name}"),
            Self::Not(e) => match **e {
                Self::Atom(_) | Self::Not(_) => write!(f, "!{e}"),
                _ => write!(f, "!({e})"),
            },
            Self::And(a, b) => {
                write_operand(f, a, matches!(**a, Self::Or(..)))?;
                write!(f, " & ")?;
                write_operand(f, b, matches!(**b, Self::Or(..) | Self::And(..)))
            }
            Self::Or(a, b) => {
                write_operand(f, a, false)?;
                write!(f, " | ")?;
                write_operand(f, b, matches!(**b, Self::Or(..)))
            }
        }
    }
}

fn write_operand(f: &mut fmt::Formatter<'_>, e: &PropExpr, parens: bool) -> fmt::Result {
    if parens {
        write!(f, "({e})")
    } else {
        write!(f, "{e}")
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("expression error at offset {offset}: {message}")]
pub struct ParseError {
    pub offset: usize,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Not,
    And,
    Or,
    Open,
    Close,
    Atom(String),
}

fn is_atom_char(c: char) -> bool {
    !c.is_whitespace() && !matches!(c, '!' | '&' | '|' | '(' | ')')
}

fn tokenize(input: &str) -> Vec<(usize, Token)> {
    let mut tokens = Vec::new();
    let mut chars = input.char_indices().peekable();
    while let Some(&(offset, ch)) = chars.peek() {
        let token = match ch {
            c if c.is_whitespace() => {
                chars.next();
                continue;
            }
            '!' => Token::Not,
            '&' => Token::And,
            '|' => Token::Or,
            '(' => Token::Open,
            ')' => Token::Close,
            _ => {
                let mut name = String::new();
                while let Some(&(_, c)) = chars.peek() {
                    if !is_atom_char(c) {
                        break;
                    }
                    name.push(c);
                    chars.next();
                }
                tokens.push((offset, Token::Atom(name)));
                continue;
            }
        };
        chars.next();
        tokens.push((offset, token));
    }
    tokens
}

struct Parser {
    tokens: Vec<(usize, Token)>,
    pos: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos).map(|(_, t)| t)
    }

    fn offset(&self) -> usize {
        self.tokens.get(self.pos).map_or(self.end, |(o, _)| *o)
    }

    fn error<T>(&self, message: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError {
            offset: self.offset(),
            message: message.into(),
        })
    }

    fn or(&mut self) -> Result<PropExpr, ParseError> {
        let mut lhs = self.and()?;
        while self.peek() == Some(&Token::Or) {
            self.pos += 1;
            lhs = PropExpr::or(lhs, self.and()?);
        }
        Ok(lhs)
    }

    fn and(&mut self) -> Result<PropExpr, ParseError> {
        let mut lhs = self.unary()?;
        while self.peek() == Some(&Token::And) {
            self.pos += 1;
            lhs = PropExpr::and(lhs, self.unary()?);
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<PropExpr, ParseError> {
        match self.peek().cloned() {
            Some(Token::Not) => {
                self.pos += 1;
                Ok(PropExpr::not(self.unary()?))
            }
            Some(Token::Open) => {
                self.pos += 1;
                let inner = self.or()?;
                if self.peek() != Some(&Token::Close) {
                    return self.error("expected `)`");
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(Token::Atom(name)) => {
                self.pos += 1;
                Ok(PropExpr::Atom(name))
            }
            Some(_) => self.error("expected a projector name, `!` or `(`"),
            None => self.error("unexpected end of expression"),
        }
    }
}

impl FromStr for PropExpr {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut parser = Parser {
            tokens: tokenize(s),
            pos: 0,
            end: s.len(),
        };
        let expr = parser.or()?;
        if parser.pos != parser.tokens.len() {
            return parser.error("trailing input");
        }
        Ok(expr)
    }
}
