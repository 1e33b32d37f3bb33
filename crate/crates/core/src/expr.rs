//! Graph expressions.
//!
//! ```text
//! atom := "k" INT | "c" INT | "e" INT | "kg(" INT "," INT ")" | "petersen" | "file:" PATH
//! expr := atom
//!       | "join(" expr "," expr ")" | "disj(" expr "," expr ")" | "lex(" expr "," expr ")"
//!       | "blow(" expr "," INT ")" | "frac(" expr "," INT ")"
//!       | "compl(" expr ")" | "pow(" expr "," INT ")"
//! ```
//!
//! Whitespace between tokens is ignored. A `file:` path runs up to the next
//! `,` or `)`.

use std::fmt;
use std::path::PathBuf;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::ops;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GraphExpr {
    Complete(usize),
    Cycle(usize),
    Edgeless(usize),
    Kneser(usize, usize),
    Petersen,
    File(PathBuf),
    Join(Box<GraphExpr>, Box<GraphExpr>),
    Disjunctive(Box<GraphExpr>, Box<GraphExpr>),
    Lexicographic(Box<GraphExpr>, Box<GraphExpr>),
    Blowup(Box<GraphExpr>, usize),
    Fractionalize(Box<GraphExpr>, usize),
    Complement(Box<GraphExpr>),
    Power(Box<GraphExpr>, usize),
}

impl fmt::Display for GraphExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use GraphExpr::*;
        match self {
            Complete(n) => write!(f, "k{n}"),
            Cycle(n) => write!(f, "c{n}"),
            Edgeless(n) => write!(f, "e{n}"),
            Kneser(n, k) => write!(f, "kg({n},{k})"),
            Petersen => write!(f, "petersen"),
            File(p) => write!(f, "file:{}", p.display()),
            Join(a, b) => write!(f, "join({a},{b})"),
            Disjunctive(a, b) => write!(f, "disj({a},{b})"),
            Lexicographic(a, b) => write!(f, "lex({a},{b})"),
            Blowup(a, d) => write!(f, "blow({a},{d})"),
            Fractionalize(a, d) => write!(f, "frac({a},{d})"),
            Complement(a) => write!(f, "compl({a})"),
            Power(a, k) => write!(f, "pow({a},{k})"),
        }
    }
}

struct Parser<'a> {
    text: &'a str,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Parse {
            pos: self.pos,
            msg: msg.into(),
        })
    }

    fn skip_ws(&mut self) {
        while self.text[self.pos..].starts_with(char::is_whitespace) {
            self.pos += self.text[self.pos..].chars().next().unwrap().len_utf8();
        }
    }

    fn peek(&self) -> Option<char> {
        self.text[self.pos..].chars().next()
    }

    fn expect(&mut self, c: char) -> Result<()> {
        self.skip_ws();
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            self.err(format!("expected '{c}'"))
        }
    }

    fn word(&mut self) -> &'a str {
        self.skip_ws();
        let start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_alphabetic()) {
            self.pos += 1;
        }
        &self.text[start..self.pos]
    }

    fn int(&mut self) -> Result<usize> {
        self.skip_ws();
        let start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected an integer");
        }
        self.text[start..self.pos].parse().or_else(|_| {
            self.pos = start;
            self.err("integer out of range")
        })
    }

    fn binary(&mut self) -> Result<(Box<GraphExpr>, Box<GraphExpr>)> {
        self.expect('(')?;
        let a = self.expr()?;
        self.expect(',')?;
        let b = self.expr()?;
        self.expect(')')?;
        Ok((Box::new(a), Box::new(b)))
    }

    fn with_int(&mut self) -> Result<(Box<GraphExpr>, usize)> {
        self.expect('(')?;
        let a = self.expr()?;
        self.expect(',')?;
        let d = self.int()?;
        self.expect(')')?;
        Ok((Box::new(a), d))
    }

    fn expr(&mut self) -> Result<GraphExpr> {
        self.skip_ws();
        let start = self.pos;
        let word = self.word();
        Ok(match word {
            "k" => GraphExpr::Complete(self.int()?),
            "c" => GraphExpr::Cycle(self.int()?),
            "e" => GraphExpr::Edgeless(self.int()?),
            "kg" => {
                self.expect('(')?;
                let n = self.int()?;
                self.expect(',')?;
                let k = self.int()?;
                self.expect(')')?;
                GraphExpr::Kneser(n, k)
            }
            "petersen" => GraphExpr::Petersen,
            "file" => {
                self.expect(':')?;
                let begin = self.pos;
                while matches!(self.peek(), Some(c) if c != ',' && c != ')') {
                    self.pos += self.peek().unwrap().len_utf8();
                }
                let path = self.text[begin..self.pos].trim();
                if path.is_empty() {
                    return self.err("empty file path");
                }
                GraphExpr::File(PathBuf::from(path))
            }
            "join" => {
                let (a, b) = self.binary()?;
                GraphExpr::Join(a, b)
            }
            "disj" => {
                let (a, b) = self.binary()?;
                GraphExpr::Disjunctive(a, b)
            }
            "lex" => {
                let (a, b) = self.binary()?;
                GraphExpr::Lexicographic(a, b)
            }
            "blow" => {
                let (a, d) = self.with_int()?;
                GraphExpr::Blowup(a, d)
            }
            "frac" => {
                let (a, d) = self.with_int()?;
                GraphExpr::Fractionalize(a, d)
            }
            "pow" => {
                let (a, k) = self.with_int()?;
                GraphExpr::Power(a, k)
            }
            "compl" => {
                self.expect('(')?;
                let a = self.expr()?;
                self.expect(')')?;
                GraphExpr::Complement(Box::new(a))
            }
            "" => return self.err("expected a graph expression"),
            other => {
                self.pos = start;
                return self.err(format!("unknown constructor {other:?}"));
            }
        })
    }
}

/// Parses a graph expression.
pub fn parse_expr(text: &str) -> Result<GraphExpr> {
    let mut p = Parser { text, pos: 0 };
    let e = p.expr()?;
    p.skip_ws();
    if p.pos != text.len() {
        return p.err("trailing input");
    }
    Ok(e)
}

impl GraphExpr {
    /// Parameter checks that do not need any graph to be built.
    pub fn validate(&self) -> Result<()> {
        use GraphExpr::*;
        match self {
            Cycle(n) if *n < 3 => Err(Error::Eval(format!("c{n}: cycles need n >= 3"))),
            Kneser(n, k) if k > n => Err(Error::Eval(format!("kg({n},{k}): need k <= n"))),
            Blowup(_, 0) => Err(Error::Eval("blow(_, 0): factor must be >= 1".into())),
            Fractionalize(_, 0) => Err(Error::Eval("frac(_, 0): d must be >= 1".into())),
            Join(a, b) | Disjunctive(a, b) | Lexicographic(a, b) => {
                a.validate()?;
                b.validate()
            }
            Blowup(a, _) | Fractionalize(a, _) | Complement(a) | Power(a, _) => a.validate(),
            _ => Ok(()),
        }
    }

    pub fn eval(&self) -> Result<Graph> {
        self.validate()?;
        self.eval_unchecked()
    }

    fn eval_unchecked(&self) -> Result<Graph> {
        use GraphExpr::*;
        match self {
            Complete(n) => Graph::complete(*n),
            Cycle(n) => Graph::cycle(*n),
            Edgeless(n) => Graph::edgeless(*n),
            Kneser(n, k) => Graph::kneser(*n, *k),
            Petersen => Ok(Graph::petersen()),
            File(p) => Graph::read_edge_list(p),
            Join(a, b) => ops::join(&a.eval_unchecked()?, &b.eval_unchecked()?),
            Disjunctive(a, b) => ops::disjunctive(&a.eval_unchecked()?, &b.eval_unchecked()?),
            Lexicographic(a, b) => ops::lexicographic(&a.eval_unchecked()?, &b.eval_unchecked()?),
            Blowup(a, d) => ops::blowup(&a.eval_unchecked()?, *d),
            Fractionalize(a, d) => ops::fractionalize(&a.eval_unchecked()?, *d),
            Complement(a) => Ok(a.eval_unchecked()?.complement()),
            Power(a, k) => ops::disjunctive_power(&a.eval_unchecked()?, *k),
        }
    }
}

/// Parses and evaluates in one step.
pub fn eval_str(text: &str) -> Result<Graph> {
    parse_expr(text)?.eval()
}
