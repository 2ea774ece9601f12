//! Operator literals such as `(g10 - g20)/(4*g11)*(D3*D2 + 2*g11*D1)`.

use std::fmt;

use num_traits::{One, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::{OpMatrix, Operator, StructureConstants};
use crate::error::{Error, Result};
use crate::linalg::QMatrix;
use crate::params::{
    parse_ast, write_bin, write_child, Ast, BinOp, ParamPoint, Rational, ScalarExpr, PREC_ATOM, PREC_NEG,
    PREC_POW,
};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum OpExpr {
    Scalar(ScalarExpr),
    /// Zero-based generator index.
    Gen(usize),
    Neg(Box<OpExpr>),
    /// Division only by a scalar right operand.
    Bin(BinOp, Box<OpExpr>, Box<OpExpr>),
    Pow(Box<OpExpr>, u32),
}

fn generator_index(name: &str) -> Option<usize> {
    match name {
        "D1" => Some(0),
        "D2" => Some(1),
        "D3" => Some(2),
        _ => None,
    }
}

fn is_scalar_ast(ast: &Ast) -> bool {
    match ast {
        Ast::Num(_) => true,
        Ast::Ident(name) => generator_index(name).is_none(),
        Ast::Neg(a) => is_scalar_ast(a),
        Ast::Bin(_, a, b) => is_scalar_ast(a) && is_scalar_ast(b),
        Ast::Pow(..) => false,
    }
}

impl OpExpr {
    pub fn parse(src: &str) -> Result<Self> {
        let ast = parse_ast(src)?;
        Self::from_ast(&ast).map_err(|msg| Error::parse(format!("`{src}`"), msg))
    }

    fn from_ast(ast: &Ast) -> std::result::Result<Self, String> {
        if is_scalar_ast(ast) {
            return Ok(OpExpr::Scalar(ScalarExpr::from_ast(ast)?));
        }
        Ok(match ast {
            Ast::Ident(name) => OpExpr::Gen(generator_index(name).expect("non-scalar identifier")),
            Ast::Neg(a) => OpExpr::Neg(Box::new(Self::from_ast(a)?)),
            Ast::Bin(BinOp::Div, _, b) if !is_scalar_ast(b) => {
                return Err("division by an operator".into());
            }
            Ast::Bin(op, a, b) => OpExpr::Bin(*op, Box::new(Self::from_ast(a)?), Box::new(Self::from_ast(b)?)),
            Ast::Pow(a, e) => OpExpr::Pow(Box::new(Self::from_ast(a)?), *e),
            Ast::Num(_) => unreachable!("numbers are scalar"),
        })
    }

    pub fn zero() -> Self {
        OpExpr::Scalar(ScalarExpr::lit(Rational::zero()))
    }

    pub fn is_literal_zero(&self) -> bool {
        matches!(self, OpExpr::Scalar(ScalarExpr::Lit(v)) if v.is_zero())
    }

    pub fn is_scalar(&self) -> bool {
        matches!(self, OpExpr::Scalar(_))
    }

    /// Upper bound on the operator order, read off the syntax tree.
    pub fn degree(&self) -> u32 {
        match self {
            OpExpr::Scalar(_) => 0,
            OpExpr::Gen(_) => 1,
            OpExpr::Neg(a) => a.degree(),
            OpExpr::Bin(BinOp::Add | BinOp::Sub, a, b) => a.degree().max(b.degree()),
            OpExpr::Bin(BinOp::Mul, a, b) => a.degree() + b.degree(),
            OpExpr::Bin(BinOp::Div, a, _) => a.degree(),
            OpExpr::Pow(a, e) => a.degree() * e,
        }
    }

    pub fn eval(&self, pt: &ParamPoint, sc: &StructureConstants) -> Result<Operator> {
        let mut rw = sc.rewriter();
        self.eval_with(pt, &mut rw, &mut String::from("$"))
    }

    fn eval_with(&self, pt: &ParamPoint, rw: &mut super::Rewriter<'_>, path: &mut String) -> Result<Operator> {
        let child = |path: &mut String, idx: &str| {
            let len = path.len();
            path.push_str(idx);
            len
        };
        match self {
            OpExpr::Scalar(s) => s.eval(pt).map(Operator::scalar).map_err(|e| match e {
                Error::DivisionByZero { path: inner, divisor } => Error::DivisionByZero {
                    path: format!("{path}{}", &inner[1..]),
                    divisor,
                },
                other => other,
            }),
            OpExpr::Gen(i) => Ok(Operator::generator(*i)),
            OpExpr::Neg(a) => {
                let len = child(path, ".0");
                let v = a.eval_with(pt, rw, path)?;
                path.truncate(len);
                Ok(-&v)
            }
            OpExpr::Pow(a, e) => {
                let len = child(path, ".0");
                let base = a.eval_with(pt, rw, path)?;
                path.truncate(len);
                let mut out = Operator::one();
                for _ in 0..*e {
                    out = rw.mul(&out, &base);
                }
                Ok(out)
            }
            OpExpr::Bin(op, a, b) => {
                let len = child(path, ".0");
                let x = a.eval_with(pt, rw, path)?;
                path.truncate(len);
                child(path, ".1");
                let y = b.eval_with(pt, rw, path)?;
                let out = match op {
                    BinOp::Add => &x + &y,
                    BinOp::Sub => &x - &y,
                    BinOp::Mul => rw.mul(&x, &y),
                    BinOp::Div => {
                        let d = y.as_scalar().expect("divisor is scalar by construction");
                        if d.is_zero() {
                            return Err(Error::DivisionByZero {
                                path: path.clone(),
                                divisor: b.to_string(),
                            });
                        }
                        x.scale(&(Rational::one() / d))
                    }
                };
                path.truncate(len);
                Ok(out)
            }
        }
    }

    fn precedence(&self) -> u8 {
        match self {
            OpExpr::Scalar(s) => s.precedence(),
            OpExpr::Gen(_) => PREC_ATOM,
            OpExpr::Neg(_) => PREC_NEG,
            OpExpr::Bin(op, ..) => match op {
                BinOp::Add | BinOp::Sub => 1,
                BinOp::Mul | BinOp::Div => 2,
            },
            OpExpr::Pow(..) => PREC_POW,
        }
    }
}

impl fmt::Display for OpExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OpExpr::Scalar(s) => write!(f, "{s}"),
            OpExpr::Gen(i) => write!(f, "D{}", i + 1),
            OpExpr::Neg(a) => {
                f.write_str("-")?;
                write_child(f, a.as_ref(), a.precedence(), PREC_NEG)
            }
            OpExpr::Bin(op, a, b) => write_bin(f, *op, (a.as_ref(), a.precedence()), (b.as_ref(), b.precedence())),
            OpExpr::Pow(a, e) => {
                write_child(f, a.as_ref(), a.precedence(), PREC_ATOM)?;
                write!(f, "^{e}")
            }
        }
    }
}

impl std::str::FromStr for OpExpr {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        OpExpr::parse(s)
    }
}

impl Serialize for OpExpr {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for OpExpr {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        OpExpr::parse(&s).map_err(serde::de::Error::custom)
    }
}

/// Matrix of operator literals, evaluated at a parameter point on demand.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExprMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<OpExpr>,
}

impl ExprMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        ExprMatrix {
            rows,
            cols,
            entries: vec![OpExpr::zero(); rows * cols],
        }
    }

    /// Parses row-major entry strings; `name` labels errors.
    pub fn parse(name: &str, rows: &[Vec<String>]) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let mut entries = Vec::with_capacity(r * c);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != c {
                return Err(Error::shape(
                    name,
                    format!("{c} entries in row {}", i + 1),
                    row.len(),
                ));
            }
            for (j, src) in row.iter().enumerate() {
                let e = OpExpr::parse(src).map_err(|e| match e {
                    Error::Parse { message, .. } => {
                        Error::parse(format!("{name}[{},{}] `{src}`", i + 1, j + 1), message)
                    }
                    other => other,
                })?;
                entries.push(e);
            }
        }
        Ok(ExprMatrix { rows: r, cols: c, entries })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn get(&self, i: usize, j: usize) -> &OpExpr {
        &self.entries[i * self.cols + j]
    }

    /// True when no entry mentions a generator.
    pub fn is_scalar(&self) -> bool {
        self.entries.iter().all(OpExpr::is_scalar)
    }

    pub fn is_literal_zero(&self) -> bool {
        self.entries.iter().all(OpExpr::is_literal_zero)
    }

    /// Largest syntactic order among the entries, with its (1-based) position.
    pub fn degree(&self) -> (u32, Option<(usize, usize)>) {
        let mut best = (0, None);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let d = self.get(i, j).degree();
                if d > best.0 {
                    best = (d, Some((i + 1, j + 1)));
                }
            }
        }
        best
    }

    pub fn set(&mut self, i: usize, j: usize, e: OpExpr) {
        self.entries[i * self.cols + j] = e;
    }

    pub fn eval(&self, pt: &ParamPoint, sc: &StructureConstants) -> Result<OpMatrix> {
        let mut out = OpMatrix::zeros(self.rows, self.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(i, j, self.get(i, j).eval(pt, sc)?);
            }
        }
        Ok(out)
    }

    /// Evaluates a scalar matrix; operator entries are a parse error.
    pub fn eval_scalar(&self, pt: &ParamPoint) -> Result<QMatrix> {
        let mut out = QMatrix::zeros(self.rows, self.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                match self.get(i, j) {
                    OpExpr::Scalar(s) => out[(i, j)] = s.eval(pt)?,
                    other => {
                        return Err(Error::parse(
                            format!("entry [{},{}]", i + 1, j + 1),
                            format!("expected a scalar, found `{other}`"),
                        ))
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn to_strings(&self) -> Vec<Vec<String>> {
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self.get(i, j).to_string()).collect())
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::params::{int, rat};

    fn bounce_sc() -> StructureConstants {
        StructureConstants::diagonal(int(-2), int(-2), int(2)).unwrap()
    }

    #[test]
    fn parses_mixed_literals() {
        let e = OpExpr::parse("-2/(u*(1+u*u))*(D3*D2 + 2*D1)").unwrap();
        let op = e.eval(&ParamPoint::reference_bounce(), &bounce_sc()).unwrap();
        // D3 D2 = D2 D3 + 2 D1, so the bracket is 4 D1 + D2 D3, scaled by -1/5
        assert_eq!(op.to_string(), "-4/5*D1 - 1/5*D2*D3");
    }

    #[test]
    fn powers_and_scalars() {
        let pt = ParamPoint::reference_bounce();
        let sc = bounce_sc();
        let a = OpExpr::parse("D2^2 + 4*g31").unwrap().eval(&pt, &sc).unwrap();
        let b = OpExpr::parse("D2*D2 - 4").unwrap().eval(&pt, &sc).unwrap();
        assert_eq!(a, b);
        assert!(OpExpr::parse("g10 - g20").unwrap().is_scalar());
        assert!(!OpExpr::parse("0*D1").unwrap().is_scalar());
    }

    #[test]
    fn rejects_operator_divisor() {
        assert!(OpExpr::parse("1/D1").is_err());
        assert!(OpExpr::parse("D4").is_err());
    }

    #[test]
    fn division_by_zero_path() {
        let e = OpExpr::parse("D1 + D2/(u - 2)").unwrap();
        match e.eval(&ParamPoint::reference_bounce(), &bounce_sc()) {
            Err(Error::DivisionByZero { path, .. }) => assert_eq!(path, "$.1.1"),
            other => panic!("{other:?}"),
        }
        let e = OpExpr::parse("D1 + (1/(u - 2))*D2").unwrap();
        match e.eval(&ParamPoint::reference_bounce(), &bounce_sc()) {
            Err(Error::DivisionByZero { path, .. }) => assert_eq!(path, "$.1.0.1"),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn display_round_trip() {
        for src in ["-(D1 - D2)*D3", "D2^2/(2*g11) + 2*g31", "(g10 - g30)/(2*g11)*D3", "-D1^3"] {
            let e = OpExpr::parse(src).unwrap();
            assert_eq!(OpExpr::parse(&e.to_string()).unwrap(), e, "{src} -> {e}");
        }
    }

    #[test]
    fn matrix_parse_and_eval() {
        let rows = vec![
            vec!["g10".to_string(), "D1".to_string()],
            vec!["1/2".to_string(), "0".to_string()],
        ];
        let m = ExprMatrix::parse("m", &rows).unwrap();
        assert!(!m.is_scalar());
        let pt = ParamPoint::reference_free();
        assert!(m.eval_scalar(&pt).is_err());
        let ev = m.eval(&pt, &StructureConstants::abelian()).unwrap();
        assert_eq!(ev.scalar_part()[(0, 0)], rat(2, 7));
        let bad = vec![vec!["1".to_string()], vec![]];
        assert!(matches!(ExprMatrix::parse("bad", &bad), Err(Error::Shape { .. })));
    }
}
