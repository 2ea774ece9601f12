//! Scalar expression trees and the shared infix grammar.
//!
//! The same tokenizer and precedence-climbing parser serve both the scalar
//! language here and the operator literals in [`crate::opalg::OpExpr`]; the
//! raw [`Ast`] is converted into the typed tree by each consumer.

use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;

use super::{Param, ParamPoint, Rational};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BinOp {
    Add,
    Sub,
    Mul,
    Div,
}

impl BinOp {
    fn precedence(self) -> u8 {
        match self {
            BinOp::Add | BinOp::Sub => 1,
            BinOp::Mul | BinOp::Div => 2,
        }
    }

    fn symbol(self) -> &'static str {
        match self {
            BinOp::Add => " + ",
            BinOp::Sub => " - ",
            BinOp::Mul => "*",
            BinOp::Div => "/",
        }
    }
}

pub(crate) const PREC_NEG: u8 = 3;
pub(crate) const PREC_POW: u8 = 4;
pub(crate) const PREC_ATOM: u8 = 5;

/// Untyped parse tree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) enum Ast {
    Num(BigInt),
    Ident(String),
    Neg(Box<Ast>),
    Bin(BinOp, Box<Ast>, Box<Ast>),
    Pow(Box<Ast>, u32),
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Token {
    Num(BigInt),
    Ident(String),
    Op(char),
    LParen,
    RParen,
}

fn tokenize(src: &str) -> Result<Vec<(usize, Token)>> {
    let bytes = src.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        match c {
            ' ' | '\t' | '\n' | '\r' => i += 1,
            '0'..='9' => {
                let start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let n: BigInt = src[start..i].parse().expect("digits");
                out.push((start, Token::Num(n)));
            }
            'a'..='z' | 'A'..='Z' | '_' => {
                let start = i;
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                out.push((start, Token::Ident(src[start..i].to_string())));
            }
            '+' | '-' | '*' | '/' | '^' => {
                out.push((i, Token::Op(c)));
                i += 1;
            }
            '(' => {
                out.push((i, Token::LParen));
                i += 1;
            }
            ')' => {
                out.push((i, Token::RParen));
                i += 1;
            }
            _ => return Err(Error::parse(format!("col {}", i + 1), format!("unexpected character `{c}`"))),
        }
    }
    Ok(out)
}

struct Parser<'a> {
    src: &'a str,
    tokens: Vec<(usize, Token)>,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos).map(|(_, t)| t)
    }

    fn location(&self) -> String {
        let col = self
            .tokens
            .get(self.pos)
            .map(|(c, _)| c + 1)
            .unwrap_or(self.src.len() + 1);
        format!("col {col} of `{}`", self.src)
    }

    fn err<T>(&self, msg: &str) -> Result<T> {
        Err(Error::parse(self.location(), msg))
    }

    fn expr(&mut self) -> Result<Ast> {
        let mut lhs = self.term()?;
        while let Some(Token::Op(c @ ('+' | '-'))) = self.peek() {
            let op = if *c == '+' { BinOp::Add } else { BinOp::Sub };
            self.pos += 1;
            let rhs = self.term()?;
            lhs = Ast::Bin(op, Box::new(lhs), Box::new(rhs));
        }
        Ok(lhs)
    }

    fn term(&mut self) -> Result<Ast> {
        let mut lhs = self.unary()?;
        while let Some(Token::Op(c @ ('*' | '/'))) = self.peek() {
            let op = if *c == '*' { BinOp::Mul } else { BinOp::Div };
            self.pos += 1;
            let rhs = self.unary()?;
            lhs = Ast::Bin(op, Box::new(lhs), Box::new(rhs));
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Ast> {
        if let Some(Token::Op('-')) = self.peek() {
            self.pos += 1;
            return Ok(Ast::Neg(Box::new(self.unary()?)));
        }
        self.power()
    }

    fn power(&mut self) -> Result<Ast> {
        let base = self.atom()?;
        if let Some(Token::Op('^')) = self.peek() {
            self.pos += 1;
            match self.peek().cloned() {
                Some(Token::Num(n)) => {
                    self.pos += 1;
                    let e: u32 = n
                        .try_into()
                        .or_else(|_| self.err("exponent out of range"))?;
                    Ok(Ast::Pow(Box::new(base), e))
                }
                _ => self.err("expected integer exponent"),
            }
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<Ast> {
        match self.peek().cloned() {
            Some(Token::Num(n)) => {
                self.pos += 1;
                Ok(Ast::Num(n))
            }
            Some(Token::Ident(s)) => {
                self.pos += 1;
                Ok(Ast::Ident(s))
            }
            Some(Token::LParen) => {
                self.pos += 1;
                let e = self.expr()?;
                match self.peek() {
                    Some(Token::RParen) => {
                        self.pos += 1;
                        Ok(e)
                    }
                    _ => self.err("expected `)`"),
                }
            }
            _ => self.err("expected a number, identifier or `(`"),
        }
    }
}

pub(crate) fn parse_ast(src: &str) -> Result<Ast> {
    let tokens = tokenize(src)?;
    let mut p = Parser { src, tokens, pos: 0 };
    let ast = p.expr()?;
    if p.pos != p.tokens.len() {
        return p.err("trailing input");
    }
    Ok(ast)
}

/// Scalar expression over rational literals and the named parameters.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum ScalarExpr {
    Lit(Rational),
    Param(Param),
    Neg(Box<ScalarExpr>),
    Bin(BinOp, Box<ScalarExpr>, Box<ScalarExpr>),
}

impl ScalarExpr {
    pub fn parse(src: &str) -> Result<Self> {
        Self::from_ast(&parse_ast(src)?).map_err(|msg| Error::parse(format!("`{src}`"), msg))
    }

    pub(crate) fn from_ast(ast: &Ast) -> std::result::Result<Self, String> {
        Ok(match ast {
            Ast::Num(n) => ScalarExpr::Lit(Rational::from_integer(n.clone())),
            Ast::Ident(name) => ScalarExpr::Param(
                Param::from_name(name).ok_or_else(|| format!("unknown parameter `{name}`"))?,
            ),
            Ast::Neg(a) => ScalarExpr::Neg(Box::new(Self::from_ast(a)?)),
            Ast::Bin(op, a, b) => {
                ScalarExpr::Bin(*op, Box::new(Self::from_ast(a)?), Box::new(Self::from_ast(b)?))
            }
            Ast::Pow(..) => return Err("powers are not part of the scalar language".into()),
        })
    }

    pub fn lit(v: impl Into<Rational>) -> Self {
        ScalarExpr::Lit(v.into())
    }

    pub fn param(p: Param) -> Self {
        ScalarExpr::Param(p)
    }

    pub fn bin(op: BinOp, a: ScalarExpr, b: ScalarExpr) -> Self {
        ScalarExpr::Bin(op, Box::new(a), Box::new(b))
    }

    /// Exact evaluation at a parameter point.
    pub fn eval(&self, p: &ParamPoint) -> Result<Rational> {
        let mut path = String::from("$");
        self.eval_at(p, &mut path)
    }

    fn eval_at(&self, p: &ParamPoint, path: &mut String) -> Result<Rational> {
        match self {
            ScalarExpr::Lit(v) => Ok(v.clone()),
            ScalarExpr::Param(name) => Ok(p.get(*name).clone()),
            ScalarExpr::Neg(a) => {
                let len = path.len();
                path.push_str(".0");
                let v = a.eval_at(p, path)?;
                path.truncate(len);
                Ok(-v)
            }
            ScalarExpr::Bin(op, a, b) => {
                let len = path.len();
                path.push_str(".0");
                let x = a.eval_at(p, path)?;
                path.truncate(len);
                path.push_str(".1");
                let y = b.eval_at(p, path)?;
                let out = match op {
                    BinOp::Add => x + y,
                    BinOp::Sub => x - y,
                    BinOp::Mul => x * y,
                    BinOp::Div => {
                        if y.is_zero() {
                            return Err(Error::DivisionByZero {
                                path: path.clone(),
                                divisor: b.to_string(),
                            });
                        }
                        x / y
                    }
                };
                path.truncate(len);
                Ok(out)
            }
        }
    }

    pub fn precedence(&self) -> u8 {
        match self {
            ScalarExpr::Lit(v) if !v.is_integer() || *v < Rational::zero() => BinOp::Div.precedence(),
            ScalarExpr::Lit(_) | ScalarExpr::Param(_) => PREC_ATOM,
            ScalarExpr::Neg(_) => PREC_NEG,
            ScalarExpr::Bin(op, ..) => op.precedence(),
        }
    }

    pub fn params(&self) -> Vec<Param> {
        let mut out = Vec::new();
        self.collect_params(&mut out);
        out.sort();
        out.dedup();
        out
    }

    fn collect_params(&self, out: &mut Vec<Param>) {
        match self {
            ScalarExpr::Lit(_) => {}
            ScalarExpr::Param(p) => out.push(*p),
            ScalarExpr::Neg(a) => a.collect_params(out),
            ScalarExpr::Bin(_, a, b) => {
                a.collect_params(out);
                b.collect_params(out);
            }
        }
    }
}

/// Writes `child` with parentheses when its precedence is below `min`.
pub(crate) fn write_child(
    f: &mut fmt::Formatter<'_>,
    child: &dyn fmt::Display,
    child_prec: u8,
    min: u8,
) -> fmt::Result {
    if child_prec < min {
        write!(f, "({child})")
    } else {
        write!(f, "{child}")
    }
}

pub(crate) fn write_bin(
    f: &mut fmt::Formatter<'_>,
    op: BinOp,
    a: (&dyn fmt::Display, u8),
    b: (&dyn fmt::Display, u8),
) -> fmt::Result {
    let p = op.precedence();
    write_child(f, a.0, a.1, p)?;
    f.write_str(op.symbol())?;
    // Right operands of equal precedence keep their parentheses so that
    // the printed tree re-parses to the same tree.
    write_child(f, b.0, b.1, p + 1)
}

impl fmt::Display for ScalarExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ScalarExpr::Lit(v) => write!(f, "{v}"),
            ScalarExpr::Param(p) => f.write_str(p.name()),
            ScalarExpr::Neg(a) => {
                f.write_str("-")?;
                write_child(f, a.as_ref(), a.precedence(), PREC_NEG)
            }
            ScalarExpr::Bin(op, a, b) => {
                write_bin(f, *op, (a.as_ref(), a.precedence()), (b.as_ref(), b.precedence()))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::params::ParamPoint;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    #[test]
    fn evaluates_differences_at_reference_point() {
        let p = ParamPoint::reference_free();
        let e = ScalarExpr::parse("g20 - g30").unwrap();
        assert_eq!(e.eval(&p).unwrap(), q(3, 7));
    }

    #[test]
    fn zero_annihilates() {
        let e = ScalarExpr::parse("0 * g11").unwrap();
        assert_eq!(e.eval(&ParamPoint::reference_free()).unwrap(), q(0, 1));
        assert_eq!(e.eval(&ParamPoint::reference_bounce()).unwrap(), q(0, 1));
    }

    #[test]
    fn bounce_ratio() {
        let e = ScalarExpr::parse("(1+u*u)/(6*u)").unwrap();
        assert_eq!(e.eval(&ParamPoint::reference_bounce()).unwrap(), q(5, 12));
    }

    #[test]
    fn division_by_zero_reports_subtree() {
        let e = ScalarExpr::parse("g10 + 1/(g20 - g20)").unwrap();
        match e.eval(&ParamPoint::reference_free()) {
            Err(Error::DivisionByZero { path, divisor }) => {
                assert_eq!(path, "$.1.1");
                assert_eq!(divisor, "g20 - g20");
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn rejects_unknown_names_and_powers() {
        assert!(ScalarExpr::parse("g40").is_err());
        assert!(ScalarExpr::parse("g10^2").is_err());
        assert!(ScalarExpr::parse("(g10").is_err());
        assert!(ScalarExpr::parse("g10 g20").is_err());
    }

    #[test]
    fn display_keeps_tree_shape() {
        for src in ["a", "g10 - (g20 - g30)", "-(g10 + 1)*2", "1/(2*g11)", "g10 - -g20", "(1 + u*u)/(6*u)"] {
            if let Ok(e) = ScalarExpr::parse(src) {
                let again = ScalarExpr::parse(&e.to_string()).unwrap();
                assert_eq!(e, again, "{src} -> {e}");
            }
        }
    }
}
