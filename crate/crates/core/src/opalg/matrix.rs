use std::fmt;

use super::{Operator, StructureConstants};
use crate::error::{Error, Result};
use crate::linalg::QMatrix;
use crate::params::Rational;

/// Dense matrix of operators. Indices are zero-based.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OpMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Operator>,
}

impl OpMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        OpMatrix {
            rows,
            cols,
            data: vec![Operator::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Operator::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Operator>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(r * c);
        for (i, row) in rows.into_iter().enumerate() {
            if row.len() != c {
                return Err(Error::DimensionMismatch(format!(
                    "row {} has {} entries, expected {c}",
                    i + 1,
                    row.len()
                )));
            }
            data.extend(row);
        }
        Ok(OpMatrix { rows: r, cols: c, data })
    }

    pub fn from_scalar(m: &QMatrix) -> Self {
        let mut out = Self::zeros(m.rows(), m.cols());
        for i in 0..m.rows() {
            for j in 0..m.cols() {
                out.set(i, j, Operator::scalar(m[(i, j)].clone()));
            }
        }
        out
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

    pub fn get(&self, i: usize, j: usize) -> &Operator {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Operator) {
        self.data[i * self.cols + j] = v;
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Operator::is_zero)
    }

    pub fn row_is_zero(&self, i: usize) -> bool {
        (0..self.cols).all(|j| self.get(i, j).is_zero())
    }

    pub fn col_is_zero(&self, j: usize) -> bool {
        (0..self.rows).all(|i| self.get(i, j).is_zero())
    }

    /// Highest operator order among all entries.
    pub fn order(&self) -> u32 {
        self.data.iter().map(Operator::order).max().unwrap_or(0)
    }

    /// Entrywise constant terms.
    pub fn scalar_part(&self) -> QMatrix {
        let mut out = QMatrix::zeros(self.rows, self.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[(i, j)] = self.get(i, j).constant();
            }
        }
        out
    }

    /// `Some` iff every entry is a constant.
    pub fn as_scalar(&self) -> Option<QMatrix> {
        if self.order() == 0 {
            Some(self.scalar_part())
        } else {
            None
        }
    }

    pub fn mul(&self, rhs: &OpMatrix, sc: &StructureConstants) -> Result<OpMatrix> {
        if self.cols != rhs.rows {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut rw = sc.rewriter();
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for j in 0..rhs.cols {
                let mut acc = Operator::zero();
                for k in 0..self.cols {
                    let (a, b) = (self.get(i, k), rhs.get(k, j));
                    if a.is_zero() || b.is_zero() {
                        continue;
                    }
                    acc = &acc + &rw.mul(a, b);
                }
                out.set(i, j, acc);
            }
        }
        Ok(out)
    }

    fn zip(&self, rhs: &OpMatrix, f: impl Fn(&Operator, &Operator) -> Operator) -> Result<OpMatrix> {
        if self.shape() != rhs.shape() {
            return Err(Error::DimensionMismatch(format!(
                "{:?} against {:?}",
                self.shape(),
                rhs.shape()
            )));
        }
        Ok(OpMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| f(a, b)).collect(),
        })
    }

    pub fn add(&self, rhs: &OpMatrix) -> Result<OpMatrix> {
        self.zip(rhs, |a, b| a + b)
    }

    pub fn sub(&self, rhs: &OpMatrix) -> Result<OpMatrix> {
        self.zip(rhs, |a, b| a - b)
    }

    pub fn scale(&self, c: &Rational) -> OpMatrix {
        OpMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| a.scale(c)).collect(),
        }
    }

    /// Submatrix on the given (zero-based) rows and columns, in order.
    pub fn select(&self, rows: &[usize], cols: &[usize]) -> OpMatrix {
        let mut out = Self::zeros(rows.len(), cols.len());
        for (a, &i) in rows.iter().enumerate() {
            for (b, &j) in cols.iter().enumerate() {
                out.set(a, b, self.get(i, j).clone());
            }
        }
        out
    }

    pub fn to_strings(&self) -> Vec<Vec<String>> {
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self.get(i, j).to_string()).collect())
            .collect()
    }
}

impl fmt::Display for OpMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in self.to_strings() {
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::params::int;

    #[test]
    fn product_shapes() {
        let sc = StructureConstants::abelian();
        let a = OpMatrix::zeros(2, 3);
        let b = OpMatrix::zeros(2, 3);
        assert!(matches!(a.mul(&b, &sc), Err(Error::DimensionMismatch(_))));
        assert_eq!(a.mul(&OpMatrix::identity(3), &sc).unwrap(), a);
    }

    #[test]
    fn noncommuting_product() {
        let sc = StructureConstants::diagonal(int(-2), int(-2), int(2)).unwrap();
        let row = OpMatrix::from_rows(vec![vec![Operator::generator(2), Operator::generator(1)]]).unwrap();
        let col = OpMatrix::from_rows(vec![vec![Operator::generator(1)], vec![Operator::generator(2)]]).unwrap();
        // D3 D2 + D2 D3 = 2 D2 D3 - [D2, D3] = 2 D2 D3 + 2 D1
        let p = row.mul(&col, &sc).unwrap();
        assert_eq!(p.get(0, 0).to_string(), "2*D1 + 2*D2*D3");
        assert_eq!(p.order(), 2);
        assert_eq!(p.scalar_part(), QMatrix::zeros(1, 1));
    }
}
