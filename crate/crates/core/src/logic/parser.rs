//! Recursive descent parser for sentences.
//!
//! ```text
//! formula := unary_or_quant { ... }        see the precedence below
//! quant   := ("forall" | "exists") ident "." formula
//! atom    := "P" "(" term ")" | term ("=" | "<=") term | "(" formula ")"
//! term    := meet { "|" meet } ;  meet := compl { "&" compl }
//! compl   := "~" compl | ident | "0" | "1" | "(" term ")"
//! ```
//!
//! Formula precedence, loosest first: `->` (right associative), `or`,
//! `and`, `not`. A quantifier body extends as far right as possible.

use super::syntax::{Formula, Term};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Zero,
    One,
    Amp,
    Bar,
    Tilde,
    Eq,
    Leq,
    LParen,
    RParen,
    Dot,
    Arrow,
    And,
    Or,
    Not,
    Forall,
    Exists,
    P,
    Eof,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Ident(s) => format!("`{s}`"),
            Tok::Eof => "end of input".into(),
            other => format!("`{}`", match other {
                Tok::Zero => "0",
                Tok::One => "1",
                Tok::Amp => "&",
                Tok::Bar => "|",
                Tok::Tilde => "~",
                Tok::Eq => "=",
                Tok::Leq => "<=",
                Tok::LParen => "(",
                Tok::RParen => ")",
                Tok::Dot => ".",
                Tok::Arrow => "->",
                Tok::And => "and",
                Tok::Or => "or",
                Tok::Not => "not",
                Tok::Forall => "forall",
                Tok::Exists => "exists",
                Tok::P => "P",
                Tok::Ident(_) | Tok::Eof => unreachable!(),
            }),
        }
    }
}

#[derive(Debug, Clone)]
struct Spanned {
    tok: Tok,
    line: usize,
    column: usize,
}

fn syntax(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Syntax {
        line,
        column,
        message: message.into(),
    }
}

fn lex(text: &str) -> Result<Vec<Spanned>> {
    let mut out = Vec::new();
    let (mut line, mut column) = (1, 1);
    let chars: Vec<char> = text.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let (l, col) = (line, column);
        let mut push = |tok, len: usize| {
            out.push(Spanned { tok, line: l, column: col });
            len
        };
        let len = match c {
            '\n' => {
                line += 1;
                column = 1;
                i += 1;
                continue;
            }
            c if c.is_whitespace() => 1,
            '&' => push(Tok::Amp, 1),
            '|' => push(Tok::Bar, 1),
            '~' => push(Tok::Tilde, 1),
            '=' => push(Tok::Eq, 1),
            '(' => push(Tok::LParen, 1),
            ')' => push(Tok::RParen, 1),
            '.' => push(Tok::Dot, 1),
            '<' if chars.get(i + 1) == Some(&'=') => push(Tok::Leq, 2),
            '-' if chars.get(i + 1) == Some(&'>') => push(Tok::Arrow, 2),
            c if c.is_ascii_digit() => {
                let end = (i..chars.len()).find(|&j| !chars[j].is_ascii_alphanumeric()).unwrap_or(chars.len());
                let word: String = chars[i..end].iter().collect();
                match word.as_str() {
                    "0" => push(Tok::Zero, 1),
                    "1" => push(Tok::One, 1),
                    _ => return Err(syntax(l, col, format!("unexpected `{word}`; only 0 and 1 are constants"))),
                }
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                let end = (i..chars.len())
                    .find(|&j| !(chars[j].is_ascii_alphanumeric() || chars[j] == '_'))
                    .unwrap_or(chars.len());
                let word: String = chars[i..end].iter().collect();
                let tok = match word.as_str() {
                    "and" => Tok::And,
                    "or" => Tok::Or,
                    "not" => Tok::Not,
                    "forall" => Tok::Forall,
                    "exists" => Tok::Exists,
                    "P" => Tok::P,
                    _ => Tok::Ident(word.clone()),
                };
                push(tok, end - i)
            }
            other => return Err(syntax(l, col, format!("unexpected character `{other}`"))),
        };
        i += len;
        column += len;
    }
    out.push(Spanned {
        tok: Tok::Eof,
        line,
        column,
    });
    Ok(out)
}

struct Parser {
    toks: Vec<Spanned>,
    pos: usize,
    scope: Vec<String>,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].tok
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].tok.clone();
        if t != Tok::Eof {
            self.pos += 1;
        }
        t
    }

    fn error(&self, message: impl Into<String>) -> Error {
        let s = &self.toks[self.pos];
        syntax(s.line, s.column, message)
    }

    fn expect(&mut self, want: Tok) -> Result<()> {
        if *self.peek() == want {
            self.bump();
            Ok(())
        } else {
            Err(self.error(format!(
                "expected {}, found {}",
                want.describe(),
                self.peek().describe()
            )))
        }
    }

    fn formula(&mut self) -> Result<Formula> {
        let lhs = self.disjunction()?;
        if *self.peek() == Tok::Arrow {
            self.bump();
            let rhs = self.formula()?;
            return Ok(Formula::implies(lhs, rhs));
        }
        Ok(lhs)
    }

    fn disjunction(&mut self) -> Result<Formula> {
        let mut acc = self.conjunction()?;
        while *self.peek() == Tok::Or {
            self.bump();
            acc = Formula::or(acc, self.conjunction()?);
        }
        Ok(acc)
    }

    fn conjunction(&mut self) -> Result<Formula> {
        let mut acc = self.unary()?;
        while *self.peek() == Tok::And {
            self.bump();
            acc = Formula::and(acc, self.unary()?);
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<Formula> {
        match self.peek() {
            Tok::Not => {
                self.bump();
                Ok(Formula::not(self.unary()?))
            }
            Tok::Forall | Tok::Exists => {
                let universal = self.bump() == Tok::Forall;
                let v = match self.bump() {
                    Tok::Ident(v) => v,
                    other => {
                        self.pos -= usize::from(other != Tok::Eof);
                        return Err(self.error(format!("expected a variable, found {}", other.describe())));
                    }
                };
                self.expect(Tok::Dot)?;
                self.scope.push(v.clone());
                let body = self.formula();
                self.scope.pop();
                let body = Box::new(body?);
                Ok(if universal {
                    Formula::Forall(v, body)
                } else {
                    Formula::Exists(v, body)
                })
            }
            _ => self.atom(),
        }
    }

    fn atom(&mut self) -> Result<Formula> {
        match self.peek() {
            Tok::P => {
                self.bump();
                self.expect(Tok::LParen)?;
                let t = self.term()?;
                self.expect(Tok::RParen)?;
                Ok(Formula::P(t))
            }
            Tok::LParen => {
                let save = self.pos;
                if let Ok(f) = self.comparison() {
                    return Ok(f);
                }
                self.pos = save;
                self.bump();
                let f = self.formula()?;
                self.expect(Tok::RParen)?;
                Ok(f)
            }
            _ => self.comparison(),
        }
    }

    fn comparison(&mut self) -> Result<Formula> {
        let lhs = self.term()?;
        match self.peek() {
            Tok::Eq => {
                self.bump();
                Ok(Formula::Eq(lhs, self.term()?))
            }
            Tok::Leq => {
                self.bump();
                Ok(Formula::Leq(lhs, self.term()?))
            }
            other => Err(self.error(format!("expected `=` or `<=`, found {}", other.describe()))),
        }
    }

    fn term(&mut self) -> Result<Term> {
        let mut acc = self.meet()?;
        while *self.peek() == Tok::Bar {
            self.bump();
            acc = Term::join(acc, self.meet()?);
        }
        Ok(acc)
    }

    fn meet(&mut self) -> Result<Term> {
        let mut acc = self.compl()?;
        while *self.peek() == Tok::Amp {
            self.bump();
            acc = Term::meet(acc, self.compl()?);
        }
        Ok(acc)
    }

    fn compl(&mut self) -> Result<Term> {
        match self.peek().clone() {
            Tok::Tilde => {
                self.bump();
                Ok(Term::compl(self.compl()?))
            }
            Tok::Zero => {
                self.bump();
                Ok(Term::Zero)
            }
            Tok::One => {
                self.bump();
                Ok(Term::One)
            }
            Tok::Ident(v) => {
                if !self.scope.contains(&v) {
                    return Err(Error::FreeVariable(v));
                }
                self.bump();
                Ok(Term::Var(v))
            }
            Tok::LParen => {
                self.bump();
                let t = self.term()?;
                self.expect(Tok::RParen)?;
                Ok(t)
            }
            other => Err(self.error(format!("expected a term, found {}", other.describe()))),
        }
    }
}

/// Parses a closed sentence. Positions in errors are 1-based; the end of
/// input sits one column past the last character.
pub fn parse_sentence(text: &str) -> Result<Formula> {
    let mut p = Parser {
        toks: lex(text)?,
        pos: 0,
        scope: Vec::new(),
    };
    let f = p.formula()?;
    if *p.peek() != Tok::Eof {
        return Err(p.error(format!("unexpected {}", p.peek().describe())));
    }
    Ok(f)
}
