//! The enveloping algebra of a three-dimensional Lie algebra.
//!
//! Elements are kept in PBW normal form `D1^a D2^b D3^c` with the fixed order
//! `D1 < D2 < D3`. Products are computed by rewriting `Dj Di -> Di Dj - [Di, Dj]`
//! for `j > i` until every word is sorted.

mod literal;
mod matrix;

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_traits::{One, Signed, Zero};

pub use literal::{ExprMatrix, OpExpr};
pub use matrix::OpMatrix;

use crate::error::{Error, Result};
use crate::params::Rational;

/// PBW monomial `D1^e[0] D2^e[1] D3^e[2]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Monomial(pub [u32; 3]);

impl Monomial {
    pub const ONE: Monomial = Monomial([0, 0, 0]);

    pub fn generator(i: usize) -> Self {
        let mut e = [0; 3];
        e[i] = 1;
        Monomial(e)
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    /// The sorted word `[0; a] ++ [1; b] ++ [2; c]`.
    pub fn word(&self) -> Vec<u8> {
        let mut w = Vec::with_capacity(self.degree() as usize);
        for (g, &e) in self.0.iter().enumerate() {
            w.extend(std::iter::repeat_n(g as u8, e as usize));
        }
        w
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Monomial {
    /// Graded order: lower degree first, then `D1`-heavy monomials first.
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| other.0.cmp(&self.0))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if *self == Monomial::ONE {
            return f.write_str("1");
        }
        let mut first = true;
        for (g, &e) in self.0.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                f.write_str("*")?;
            }
            first = false;
            write!(f, "D{}", g + 1)?;
            if e > 1 {
                write!(f, "^{e}")?;
            }
        }
        Ok(())
    }
}

/// Canonical element of the enveloping algebra with rational coefficients.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct Operator {
    terms: BTreeMap<Monomial, Rational>,
}

impl Operator {
    pub fn zero() -> Self {
        Operator::default()
    }

    pub fn scalar(c: Rational) -> Self {
        Self::term(c, Monomial::ONE)
    }

    pub fn one() -> Self {
        Self::scalar(Rational::one())
    }

    pub fn generator(i: usize) -> Self {
        Self::term(Rational::one(), Monomial::generator(i))
    }

    pub fn term(c: Rational, m: Monomial) -> Self {
        let mut op = Operator::zero();
        op.add_term(m, c);
        op
    }

    pub fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(m).or_insert_with(Rational::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    /// Constant term, i.e. the image under `Di -> 0`.
    pub fn constant(&self) -> Rational {
        self.coefficient(&Monomial::ONE)
    }

    /// Highest total degree present; zero for the zero operator.
    pub fn order(&self) -> u32 {
        self.terms.keys().map(Monomial::degree).max().unwrap_or(0)
    }

    /// `Some(c)` iff the operator is the constant `c`.
    pub fn as_scalar(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => self.terms.get(&Monomial::ONE).cloned(),
            _ => None,
        }
    }

    pub fn scale(&self, c: &Rational) -> Operator {
        let mut out = Operator::zero();
        for (m, v) in &self.terms {
            out.add_term(*m, v * c);
        }
        out
    }

    pub fn to_canonical_string(&self) -> String {
        self.to_string()
    }
}

impl Add for &Operator {
    type Output = Operator;

    fn add(self, rhs: &Operator) -> Operator {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(*m, c.clone());
        }
        out
    }
}

impl Sub for &Operator {
    type Output = Operator;

    fn sub(self, rhs: &Operator) -> Operator {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(*m, -c.clone());
        }
        out
    }
}

impl Neg for &Operator {
    type Output = Operator;

    fn neg(self) -> Operator {
        self.scale(&-Rational::one())
    }
}

impl fmt::Display for Operator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (idx, (m, c)) in self.terms.iter().enumerate() {
            let mag = c.abs();
            match (idx, c.is_negative()) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            if *m == Monomial::ONE {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{mag}*{m}")?;
            }
        }
        Ok(())
    }
}

/// Rewriting strategy: which out-of-order adjacent pair is swapped first.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RewriteOrder {
    Leftmost,
    Rightmost,
}

/// Lie brackets `[Di, Dj] = sum_k c[i][j][k] Dk` of the three generators.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StructureConstants {
    c: [[[Rational; 3]; 3]; 3],
}

impl StructureConstants {
    /// Validates antisymmetry and the Jacobi identity.
    pub fn new(c: [[[Rational; 3]; 3]; 3]) -> Result<Self> {
        for i in 0..3 {
            for j in 0..3 {
                for k in 0..3 {
                    if c[i][j][k] != -c[j][i][k].clone() {
                        return Err(Error::InvalidStructureConstants(format!(
                            "antisymmetry fails at [D{}, D{}]",
                            i + 1,
                            j + 1
                        )));
                    }
                }
            }
        }
        let sc = StructureConstants { c };
        if let Some((i, j, k)) = sc.jacobi_violation() {
            return Err(Error::InvalidStructureConstants(format!(
                "Jacobi identity fails for (D{}, D{}, D{})",
                i + 1,
                j + 1,
                k + 1
            )));
        }
        Ok(sc)
    }

    /// From the three independent brackets `[D2,D3]`, `[D3,D1]`, `[D1,D2]`.
    pub fn from_brackets(b23: [Rational; 3], b31: [Rational; 3], b12: [Rational; 3]) -> Result<Self> {
        let zero = || [Rational::zero(), Rational::zero(), Rational::zero()];
        let neg = |v: &[Rational; 3]| [-v[0].clone(), -v[1].clone(), -v[2].clone()];
        let mut c: [[[Rational; 3]; 3]; 3] = [
            [zero(), zero(), zero()],
            [zero(), zero(), zero()],
            [zero(), zero(), zero()],
        ];
        c[2][1] = neg(&b23);
        c[0][2] = neg(&b31);
        c[1][0] = neg(&b12);
        c[1][2] = b23;
        c[2][0] = b31;
        c[0][1] = b12;
        Self::new(c)
    }

    /// The table `[D2,D3] = a D1`, `[D3,D1] = b D2`, `[D1,D2] = c D3`.
    pub fn diagonal(a: Rational, b: Rational, c: Rational) -> Result<Self> {
        let z = Rational::zero;
        Self::from_brackets([a, z(), z()], [z(), b, z()], [z(), z(), c])
    }

    pub fn abelian() -> Self {
        Self::diagonal(Rational::zero(), Rational::zero(), Rational::zero()).expect("abelian")
    }

    pub fn coefficient(&self, i: usize, j: usize, k: usize) -> &Rational {
        &self.c[i][j][k]
    }

    pub fn bracket(&self, i: usize, j: usize) -> Operator {
        let mut out = Operator::zero();
        for k in 0..3 {
            out.add_term(Monomial::generator(k), self.c[i][j][k].clone());
        }
        out
    }

    /// First triple violating the Jacobi identity, if any.
    pub fn jacobi_violation(&self) -> Option<(usize, usize, usize)> {
        let c = &self.c;
        for i in 0..3 {
            for j in 0..3 {
                for k in 0..3 {
                    for l in 0..3 {
                        let mut s = Rational::zero();
                        for m in 0..3 {
                            s += &c[i][j][m] * &c[m][k][l];
                            s += &c[j][k][m] * &c[m][i][l];
                            s += &c[k][i][m] * &c[m][j][l];
                        }
                        if !s.is_zero() {
                            return Some((i, j, k));
                        }
                    }
                }
            }
        }
        None
    }

    pub fn rewriter(&self) -> Rewriter<'_> {
        Rewriter {
            sc: self,
            order: RewriteOrder::Leftmost,
            memo: HashMap::new(),
        }
    }

    pub fn mul(&self, a: &Operator, b: &Operator) -> Operator {
        self.rewriter().mul(a, b)
    }

    pub fn commutator(&self, a: &Operator, b: &Operator) -> Operator {
        let mut rw = self.rewriter();
        &rw.mul(a, b) - &rw.mul(b, a)
    }
}

/// Memoizing PBW rewriter for one set of structure constants.
pub struct Rewriter<'a> {
    sc: &'a StructureConstants,
    order: RewriteOrder,
    memo: HashMap<Vec<u8>, Operator>,
}

impl<'a> Rewriter<'a> {
    pub fn with_order(mut self, order: RewriteOrder) -> Self {
        self.order = order;
        self.memo.clear();
        self
    }

    /// Normal form of a word over generator indices `0, 1, 2`.
    pub fn word(&mut self, w: &[u8]) -> Operator {
        if let Some(op) = self.memo.get(w) {
            return op.clone();
        }
        let descent = {
            let mut it = (0..w.len().saturating_sub(1)).filter(|&t| w[t] > w[t + 1]);
            match self.order {
                RewriteOrder::Leftmost => it.next(),
                RewriteOrder::Rightmost => it.next_back(),
            }
        };
        let out = match descent {
            None => {
                let mut e = [0u32; 3];
                for &g in w {
                    e[g as usize] += 1;
                }
                Operator::term(Rational::one(), Monomial(e))
            }
            Some(t) => {
                // w[t] = j > i = w[t+1]:  Dj Di = Di Dj - [Di, Dj]
                let (j, i) = (w[t] as usize, w[t + 1] as usize);
                let mut swapped = w.to_vec();
                swapped.swap(t, t + 1);
                let mut out = self.word(&swapped);
                for k in 0..3 {
                    let c = self.sc.c[i][j][k].clone();
                    if c.is_zero() {
                        continue;
                    }
                    let mut shorter = Vec::with_capacity(w.len() - 1);
                    shorter.extend_from_slice(&w[..t]);
                    shorter.push(k as u8);
                    shorter.extend_from_slice(&w[t + 2..]);
                    let tail = self.word(&shorter);
                    out = &out - &tail.scale(&c);
                }
                out
            }
        };
        self.memo.insert(w.to_vec(), out.clone());
        out
    }

    /// Normal form of a linear combination of words.
    pub fn normal_form(&mut self, terms: &[(Rational, Vec<u8>)]) -> Operator {
        let mut out = Operator::zero();
        for (c, w) in terms {
            if c.is_zero() {
                continue;
            }
            out = &out + &self.word(w).scale(c);
        }
        out
    }

    pub fn mul(&mut self, a: &Operator, b: &Operator) -> Operator {
        let mut out = Operator::zero();
        for (ma, ca) in a.terms() {
            for (mb, cb) in b.terms() {
                let mut w = ma.word();
                w.extend(mb.word());
                let coeff = ca * cb;
                out = &out + &self.word(&w).scale(&coeff);
            }
        }
        out
    }
}

/// PBW normal form of `sum c * word` (words over generator indices `0..3`).
pub fn normal_form(terms: &[(Rational, Vec<u8>)], sc: &StructureConstants) -> Operator {
    sc.rewriter().normal_form(terms)
}

pub fn op_mul(a: &Operator, b: &Operator, sc: &StructureConstants) -> Operator {
    sc.mul(a, b)
}

pub fn mat_mul(a: &OpMatrix, b: &OpMatrix, sc: &StructureConstants) -> Result<OpMatrix> {
    a.mul(b, sc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::params::{int, rat};

    fn d(i: usize) -> Operator {
        Operator::generator(i - 1)
    }

    /// `[D2,D3] = -2 g11 D1`, `[D3,D1] = -2 g21 D2`, `[D1,D2] = -2 g31 D3`.
    fn sc_with(g11: Rational, g21: Rational, g31: Rational) -> StructureConstants {
        let m2 = int(-2);
        StructureConstants::diagonal(&m2 * &g11, &m2 * &g21, &m2 * &g31).unwrap()
    }

    #[test]
    fn one_commutator_step() {
        // bounce table, g11 = 1
        let sc = sc_with(int(1), int(1), int(-1));
        let op = normal_form(&[(int(1), vec![2, 1])], &sc);
        let expected = &sc.mul(&d(2), &d(3)) + &d(1).scale(&int(2));
        assert_eq!(op, expected);
        assert_eq!(op.to_string(), "2*D1 + D2*D3");
    }

    #[test]
    fn sorted_word_is_untouched() {
        let sc = sc_with(int(1), int(2), int(3));
        let op = normal_form(&[(int(1), vec![0, 0])], &sc);
        assert_eq!(op, Operator::term(int(1), Monomial([2, 0, 0])));
    }

    #[test]
    fn products_of_generators() {
        let sc = sc_with(int(1), int(1), int(-1));
        let d2d3 = Operator::term(int(1), Monomial([0, 1, 1]));
        assert_eq!(sc.mul(&d(2), &d2d3), Operator::term(int(1), Monomial([0, 2, 1])));
        // D2 D1 = D1 D2 - [D1, D2] = D1 D2 + 2 g31 D3
        assert_eq!(sc.mul(&d(2), &d(1)).to_string(), "-2*D3 + D1*D2");
        // D3 D1 = D1 D3 - [D1, D3] = D1 D3 + [D3, D1] = D1 D3 - 2 g21 D2
        assert_eq!(sc.mul(&d(3), &d(1)).to_string(), "-2*D2 + D1*D3");
    }

    #[test]
    fn commutators_match_table() {
        let sc = sc_with(rat(1, 3), int(2), int(-5));
        for i in 0..3 {
            for j in 0..3 {
                let lhs = sc.commutator(&Operator::generator(i), &Operator::generator(j));
                assert_eq!(lhs, sc.bracket(i, j));
            }
        }
    }

    #[test]
    fn rejects_non_jacobi_table() {
        // [D1,D2] = D1, [D2,D3] = D3, [D3,D1] = D1 is antisymmetric but not Jacobi
        let z = Rational::zero;
        let err = StructureConstants::from_brackets(
            [z(), z(), int(1)],
            [int(1), z(), z()],
            [int(1), z(), z()],
        );
        assert!(matches!(err, Err(Error::InvalidStructureConstants(_))));
        let mut c = sc_with(int(1), int(1), int(1)).c.clone();
        c[0][1][2] = int(5);
        assert!(StructureConstants::new(c).is_err());
    }

    #[test]
    fn order_and_constant() {
        let sc = sc_with(int(1), int(1), int(1));
        let op = &sc.mul(&d(3), &d(2)) + &Operator::scalar(int(4));
        assert_eq!(op.order(), 2);
        assert_eq!(op.constant(), int(4));
        assert_eq!(Operator::zero().order(), 0);
        assert_eq!(Operator::scalar(int(3)).as_scalar(), Some(int(3)));
        assert_eq!(d(1).as_scalar(), None);
    }
}
