//! Text grammar for surreal expressions.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := factor ('*' factor)*
//! factor := int ['/' int] | 'w' ['^' (int | '(' expr ')')] | '(' expr ')'
//!         | '-' factor | '{' list '|' list '}' | ident
//! list   := [expr (',' expr)*]
//! ```
//!
//! `ω` is accepted for `w`. Cuts evaluate to the simplest number between
//! their sides.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;
use thiserror::Error;

use crate::conway::{omega_power, srl_simplest_between, ConwayError, Fuel, Surreal};
use crate::number::Rational;

/// Maximum nesting of parentheses, braces, exponents and unary minus.
pub const MAX_DEPTH: usize = 128;

/// Maximum height of the syntax tree, which bounds evaluation recursion.
pub const MAX_HEIGHT: usize = 512;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Expr {
    Rational(Rational),
    Omega,
    /// `w^(e)`.
    Power(Box<Expr>),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Cut(Vec<Expr>, Vec<Expr>),
    Var(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{line}:{col}: {msg}")]
pub struct SyntaxError {
    pub line: usize,
    pub col: usize,
    pub msg: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EvalError {
    #[error("unbound variable `{0}`")]
    Unbound(String),
    #[error("in `{expr}`: {source}")]
    Conway { expr: String, source: ConwayError },
}

pub type Env = BTreeMap<String, Surreal>;

pub fn parse_expr(input: &str) -> Result<Expr, SyntaxError> {
    let mut p = Parser::new(input);
    let (e, _) = p.expr()?;
    p.finish()?;
    Ok(e)
}

/// A comma-separated list of expressions; empty input gives an empty list.
pub fn parse_list(input: &str) -> Result<Vec<Expr>, SyntaxError> {
    let mut p = Parser::new(input);
    let (v, _) = p.list(None)?;
    p.finish()?;
    Ok(v)
}

/// Parses and evaluates with no bindings.
pub fn parse_surreal(input: &str) -> Result<Surreal, String> {
    let e = parse_expr(input).map_err(|e| e.to_string())?;
    eval(&e, &Env::new(), &Fuel::default()).map_err(|e| e.to_string())
}

pub fn eval(e: &Expr, env: &Env, fuel: &Fuel) -> Result<Surreal, EvalError> {
    let sub = |x: &Expr| eval(x, env, fuel);
    Ok(match e {
        Expr::Rational(r) => Surreal::from_rational(r.clone()),
        Expr::Omega => Surreal::omega(),
        Expr::Power(y) => omega_power(&sub(y)?),
        Expr::Neg(x) => sub(x)?.neg(),
        Expr::Add(a, b) => sub(a)?.add(&sub(b)?),
        Expr::Sub(a, b) => sub(a)?.sub(&sub(b)?),
        Expr::Mul(a, b) => sub(a)?.mul(&sub(b)?),
        Expr::Var(name) => env
            .get(name)
            .cloned()
            .ok_or_else(|| EvalError::Unbound(name.clone()))?,
        Expr::Cut(l, r) => {
            let l = l.iter().map(sub).collect::<Result<Vec<_>, _>>()?;
            let r = r.iter().map(sub).collect::<Result<Vec<_>, _>>()?;
            srl_simplest_between(&l, &r, fuel).map_err(|source| EvalError::Conway {
                expr: e.to_string(),
                source,
            })?
        }
    })
}

impl Expr {
    fn precedence(&self) -> u8 {
        match self {
            Expr::Add(..) | Expr::Sub(..) => 0,
            Expr::Mul(..) => 1,
            Expr::Neg(_) => 2,
            Expr::Rational(r) if !r.is_integer() => 1,
            Expr::Rational(r) if *r < Rational::zero() => 2,
            _ => 3,
        }
    }
}

struct Wrap<'a>(&'a Expr, u8);

impl fmt::Display for Wrap<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.precedence() < self.1 {
            write!(f, "({})", self.0)
        } else {
            write!(f, "{}", self.0)
        }
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Rational(r) => write!(f, "{r}"),
            Expr::Omega => f.write_str("w"),
            Expr::Power(y) => write!(f, "w^({y})"),
            Expr::Neg(x) => write!(f, "-{}", Wrap(x, 2)),
            Expr::Add(a, b) => write!(f, "{} + {}", a, Wrap(b, 1)),
            Expr::Sub(a, b) => write!(f, "{} - {}", a, Wrap(b, 1)),
            Expr::Mul(a, b) => write!(f, "{}*{}", Wrap(a, 1), Wrap(b, 2)),
            Expr::Var(name) => f.write_str(name),
            Expr::Cut(l, r) => {
                let side = |v: &[Expr]| {
                    v.iter()
                        .map(|e| e.to_string())
                        .collect::<Vec<_>>()
                        .join(", ")
                };
                write!(f, "{{{} | {}}}", side(l), side(r))
            }
        }
    }
}

type Node = (Expr, usize);

struct Parser {
    chars: Vec<char>,
    pos: usize,
    depth: usize,
}

impl Parser {
    fn new(src: &str) -> Self {
        Parser {
            chars: src.chars().collect(),
            pos: 0,
            depth: 0,
        }
    }

    fn error<T>(&self, at: usize, msg: impl Into<String>) -> Result<T, SyntaxError> {
        let (mut line, mut col) = (1, 1);
        for c in self.chars.iter().take(at) {
            if *c == '\n' {
                line += 1;
                col = 1;
            } else {
                col += 1;
            }
        }
        Err(SyntaxError {
            line,
            col,
            msg: msg.into(),
        })
    }

    fn skip_ws(&mut self) {
        while self.chars.get(self.pos).is_some_and(|c| c.is_whitespace()) {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<(), SyntaxError> {
        if self.eat(c) {
            return Ok(());
        }
        match self.peek() {
            Some(found) => self.error(self.pos, format!("expected `{c}`, found `{found}`")),
            None => self.error(self.pos, format!("expected `{c}`, found end of input")),
        }
    }

    fn finish(&mut self) -> Result<(), SyntaxError> {
        match self.peek() {
            None => Ok(()),
            Some(c) => self.error(self.pos, format!("unexpected `{c}`")),
        }
    }

    fn enter(&mut self) -> Result<(), SyntaxError> {
        self.depth += 1;
        if self.depth > MAX_DEPTH {
            return self.error(self.pos, format!("nesting deeper than {MAX_DEPTH}"));
        }
        Ok(())
    }

    fn node(&self, e: Expr, height: usize) -> Result<Node, SyntaxError> {
        if height > MAX_HEIGHT {
            return self.error(self.pos, format!("expression taller than {MAX_HEIGHT}"));
        }
        Ok((e, height))
    }

    fn expr(&mut self) -> Result<Node, SyntaxError> {
        let (mut e, mut h) = self.term()?;
        loop {
            let op: fn(Box<Expr>, Box<Expr>) -> Expr = if self.eat('+') {
                Expr::Add
            } else if self.eat('-') {
                Expr::Sub
            } else {
                return Ok((e, h));
            };
            let (b, hb) = self.term()?;
            (e, h) = self.node(op(Box::new(e), Box::new(b)), h.max(hb) + 1)?;
        }
    }

    fn term(&mut self) -> Result<Node, SyntaxError> {
        let (mut e, mut h) = self.factor()?;
        while self.eat('*') {
            let (b, hb) = self.factor()?;
            (e, h) = self.node(Expr::Mul(Box::new(e), Box::new(b)), h.max(hb) + 1)?;
        }
        Ok((e, h))
    }

    fn integer(&mut self) -> Result<BigInt, SyntaxError> {
        self.skip_ws();
        let start = self.pos;
        while self.chars.get(self.pos).is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return self.error(start, "expected an integer");
        }
        let digits: String = self.chars[start..self.pos].iter().collect();
        Ok(digits.parse().expect("ascii digits"))
    }

    fn factor(&mut self) -> Result<Node, SyntaxError> {
        self.enter()?;
        let e = self.factor_inner();
        self.depth -= 1;
        e
    }

    fn factor_inner(&mut self) -> Result<Node, SyntaxError> {
        let Some(c) = self.peek() else {
            return self.error(self.pos, "expected an expression, found end of input");
        };
        let start = self.pos;
        match c {
            '0'..='9' => {
                let n = self.integer()?;
                if !self.eat('/') {
                    return Ok((Expr::Rational(Rational::from_integer(n)), 1));
                }
                let at = self.pos;
                let d = self.integer()?;
                if d.is_zero() {
                    return self.error(at, "zero denominator");
                }
                Ok((Expr::Rational(Rational::new(n, d)), 1))
            }
            '-' => {
                self.pos += 1;
                let (x, h) = self.factor()?;
                self.node(Expr::Neg(Box::new(x)), h + 1)
            }
            '(' => {
                self.pos += 1;
                let e = self.expr()?;
                self.expect(')')?;
                Ok(e)
            }
            '{' => {
                self.pos += 1;
                let (left, hl) = self.list(Some('|'))?;
                self.expect('|')?;
                let (right, hr) = self.list(Some('}'))?;
                self.expect('}')?;
                self.node(Expr::Cut(left, right), hl.max(hr) + 1)
            }
            'ω' => {
                self.pos += 1;
                self.power()
            }
            c if c.is_alphabetic() || c == '_' => {
                while self
                    .chars
                    .get(self.pos)
                    .is_some_and(|c| c.is_alphanumeric() || *c == '_')
                {
                    self.pos += 1;
                }
                let name: String = self.chars[start..self.pos].iter().collect();
                if name == "w" {
                    self.power()
                } else {
                    Ok((Expr::Var(name), 1))
                }
            }
            c => self.error(start, format!("unexpected `{c}`")),
        }
    }

    fn power(&mut self) -> Result<Node, SyntaxError> {
        if !self.eat('^') {
            return Ok((Expr::Omega, 1));
        }
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                self.enter()?;
                let (y, h) = self.expr()?;
                self.depth -= 1;
                self.expect(')')?;
                self.node(Expr::Power(Box::new(y)), h + 1)
            }
            Some('0'..='9') => Ok((
                Expr::Power(Box::new(Expr::Rational(Rational::from_integer(
                    self.integer()?,
                )))),
                2,
            )),
            _ => self.error(self.pos, "expected `(` or an integer after `^`"),
        }
    }

    /// Comma-separated expressions up to (not including) `end`, or to end of input.
    fn list(&mut self, end: Option<char>) -> Result<(Vec<Expr>, usize), SyntaxError> {
        let (mut out, mut height) = (Vec::new(), 0);
        if self.peek() == end {
            return Ok((out, height));
        }
        loop {
            let (e, h) = self.expr()?;
            out.push(e);
            height = height.max(h);
            if !self.eat(',') {
                return Ok((out, height));
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::number::rat;

    fn ev(s: &str) -> Surreal {
        eval(&parse_expr(s).unwrap(), &Env::new(), &Fuel::default()).unwrap()
    }

    #[test]
    fn grammar_examples() {
        let half = Expr::Rational(rat(1, 2));
        assert_eq!(
            parse_expr("w + 1/2").unwrap(),
            Expr::Add(Box::new(Expr::Omega), Box::new(half.clone()))
        );
        assert_eq!(
            parse_expr("{0 | 1}").unwrap(),
            Expr::Cut(
                vec![Expr::Rational(rat(0, 1))],
                vec![Expr::Rational(rat(1, 1))]
            )
        );
        let e = parse_expr("w^(1/2)*2 - 3").unwrap();
        let power = Expr::Mul(
            Box::new(Expr::Power(Box::new(half))),
            Box::new(Expr::Rational(rat(2, 1))),
        );
        assert_eq!(
            e,
            Expr::Sub(Box::new(power), Box::new(Expr::Rational(rat(3, 1))))
        );
    }

    #[test]
    fn evaluation() {
        assert_eq!(ev("{0 | 1}"), Surreal::from_rational(rat(1, 2)));
        assert_eq!(ev("w - 1 + 1"), Surreal::omega());
        assert_eq!(ev("{|}"), Surreal::zero());
        assert_eq!(ev("{0, 1, 2 | }"), Surreal::from_int(3));
        assert_eq!(ev("ω^2"), ev("w*w"));
        assert_eq!(ev("-(w + 1)"), ev("-w - 1"));
    }

    #[test]
    fn printed_values_reparse() {
        for s in [
            "w^(1/2)*2 - 3",
            "w*1/2",
            "w^(-1)",
            "-w^2",
            "w^(w)*3 + w^(1/2) - 1/4",
            "0",
        ] {
            let x = ev(s);
            assert_eq!(ev(&x.to_string()), x, "{s}");
            assert_eq!(ev(&x.nf().to_string()), x, "{s}");
            assert_eq!(ev(&x.unicode().to_string()), x, "{s}");
        }
    }

    #[test]
    fn errors_have_positions() {
        let e = parse_expr("1 +\n  * 2").unwrap_err();
        assert_eq!((e.line, e.col), (2, 3));
        assert!(parse_expr("1/0").is_err());
        assert!(parse_expr("(1").is_err());
        assert!(parse_expr("w^x").is_err());
        assert!(parse_expr(&"(".repeat(1000)).is_err());
        let long = format!("{}1", "1+".repeat(100_000));
        assert!(parse_expr(&long).unwrap_err().msg.contains("taller"));
        assert!(parse_expr(&format!("{}1", "1+".repeat(500))).is_ok());
        assert!(parse_expr(&"-".repeat(1000)).is_err());
        let err = eval(
            &parse_expr("{1 | 0}").unwrap(),
            &Env::new(),
            &Fuel::default(),
        )
        .unwrap_err();
        assert!(matches!(
            err,
            EvalError::Conway {
                source: ConwayError::CutViolation { .. },
                ..
            }
        ));
        assert_eq!(
            eval(&parse_expr("x + 1").unwrap(), &Env::new(), &Fuel::default()),
            Err(EvalError::Unbound("x".into()))
        );
    }

    #[test]
    fn display_round_trips_structure() {
        for s in [
            "w + 1/2",
            "-(1 - 2)*3",
            "{0, w | w^(2)}",
            "1 - (2 - 3)",
            "(1/2)*w",
            "--1",
        ] {
            let e = parse_expr(s).unwrap();
            assert_eq!(parse_expr(&e.to_string()).unwrap(), e, "{s} printed as {e}");
        }
    }
}
