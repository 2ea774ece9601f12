//! Unit-pivot elimination on a cokernel condition `im A = ker B`, the
//! slashed matrices it leaves behind, and syntactic certificates that stand
//! in for injectivity and surjectivity of operator matrices.
//!
//! Inputs are indexed from zero. Everything written to logs and
//! certificates is indexed from one, since it ends up in reports.

use std::collections::BTreeSet;

use num_traits::Zero;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::QMatrix;
use crate::opalg::{OpMatrix, Operator, StructureConstants};
use crate::params::{ParamPoint, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Move {
    /// Column `column` of B had a lone unit in row `row`.
    PivotInB { sweep: usize, column: usize, row: usize },
    /// Column `column` of incoming map `map` had a lone unit in domain row
    /// `row`.
    PivotInIncoming {
        sweep: usize,
        map: usize,
        column: usize,
        row: usize,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DeletionLog {
    pub moves: Vec<Move>,
    pub deleted_rows: Vec<usize>,
    pub deleted_columns: Vec<usize>,
    pub surviving_rows: Vec<usize>,
    pub surviving_columns: Vec<usize>,
    /// Surviving columns of each incoming map.
    pub surviving_incoming: Vec<Vec<usize>>,
}

#[derive(Debug, Clone)]
pub struct Reduction {
    pub b: OpMatrix,
    pub incoming: Vec<OpMatrix>,
    pub log: DeletionLog,
}

fn unit(op: &Operator) -> bool {
    op.as_scalar().is_some_and(|c| !c.is_zero())
}

/// The only nonzero entry among `rows` of column `j`, if there is exactly
/// one and it is a nonzero scalar.
fn lone_unit(m: &OpMatrix, j: usize, rows: &BTreeSet<usize>) -> Option<usize> {
    let mut hit = None;
    for &i in rows {
        if !m.get(i, j).is_zero() {
            if hit.is_some() {
                return None;
            }
            hit = Some(i);
        }
    }
    hit.filter(|&i| unit(m.get(i, j)))
}

/// Eliminates scalar unit pivots from the pair `(incoming, B)` until no
/// move applies. Eligibility is fixed at the start of a sweep; moves on B
/// come first, lowest column first, and a move whose row or column was
/// removed earlier in the same sweep is skipped.
pub fn unit_pivot_reduce(b: &OpMatrix, incoming: &[OpMatrix], sc: &StructureConstants) -> Result<Reduction> {
    for (n, a) in incoming.iter().enumerate() {
        if a.rows() != b.cols() {
            return Err(Error::DimensionMismatch(format!(
                "incoming map {} has {} rows, B has {} columns",
                n + 1,
                a.rows(),
                b.cols()
            )));
        }
        if !b.mul(a, sc)?.is_zero() {
            return Err(Error::NotAComplex(format!("B composed with incoming map {} is nonzero", n + 1)));
        }
    }
    let mut rows: BTreeSet<usize> = (0..b.rows()).collect();
    let mut cols: BTreeSet<usize> = (0..b.cols()).collect();
    let mut in_cols: Vec<BTreeSet<usize>> = incoming.iter().map(|a| (0..a.cols()).collect()).collect();
    let mut moves = Vec::new();
    for sweep in 1.. {
        let a_moves: Vec<(usize, usize)> = cols
            .iter()
            .filter_map(|&j| lone_unit(b, j, &rows).map(|i| (j, i)))
            .collect();
        let b_moves: Vec<(usize, usize, usize)> = incoming
            .iter()
            .enumerate()
            .flat_map(|(n, a)| {
                let cols = &cols;
                in_cols[n]
                    .iter()
                    .filter_map(move |&c| lone_unit(a, c, cols).map(|j| (n, c, j)))
                    .collect::<Vec<_>>()
            })
            .collect();
        let before = moves.len();
        for (j, i) in a_moves {
            if cols.contains(&j) && rows.contains(&i) && lone_unit(b, j, &rows) == Some(i) {
                cols.remove(&j);
                rows.remove(&i);
                moves.push(Move::PivotInB {
                    sweep,
                    column: j + 1,
                    row: i + 1,
                });
            }
        }
        for (n, c, j) in b_moves {
            if in_cols[n].contains(&c) && cols.contains(&j) && lone_unit(&incoming[n], c, &cols) == Some(j) {
                in_cols[n].remove(&c);
                cols.remove(&j);
                moves.push(Move::PivotInIncoming {
                    sweep,
                    map: n + 1,
                    column: c + 1,
                    row: j + 1,
                });
            }
        }
        if moves.len() == before {
            break;
        }
    }
    let rows: Vec<usize> = rows.into_iter().collect();
    let cols: Vec<usize> = cols.into_iter().collect();
    let in_cols: Vec<Vec<usize>> = in_cols.into_iter().map(|s| s.into_iter().collect()).collect();
    let one_based = |v: &[usize]| v.iter().map(|x| x + 1).collect::<Vec<_>>();
    let complement = |keep: &[usize], n: usize| (1..=n).filter(|x| !keep.contains(&(x - 1))).collect::<Vec<_>>();
    let log = DeletionLog {
        moves,
        deleted_rows: complement(&rows, b.rows()),
        deleted_columns: complement(&cols, b.cols()),
        surviving_rows: one_based(&rows),
        surviving_columns: one_based(&cols),
        surviving_incoming: in_cols.iter().map(|c| one_based(c)).collect(),
    };
    Ok(Reduction {
        b: b.select(&rows, &cols),
        incoming: incoming
            .iter()
            .zip(&in_cols)
            .map(|(a, c)| a.select(&cols, c))
            .collect(),
        log,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Certificate {
    /// Row `witness_rows[c]` holds a nonzero scalar in column `c` and
    /// zeros elsewhere.
    InjectiveUnitRows {
        witness_rows: Vec<usize>,
        #[serde(with = "rational_vec")]
        entries: Vec<Rational>,
    },
    /// The selected block is `D_derivation * 1 + constant`; surjectivity
    /// then rests on existence for linear first-order ODEs.
    TransportSurjective {
        derivation: usize,
        rows: Vec<usize>,
        columns: Vec<usize>,
        #[serde(serialize_with = "ser_qmatrix")]
        constant: QMatrix,
    },
}

mod rational_vec {
    use super::Rational;
    use crate::params::format_rational;
    pub fn serialize<S: serde::Serializer>(v: &[Rational], s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(v.iter().map(format_rational))
    }
}

fn ser_qmatrix<S: serde::Serializer>(m: &QMatrix, s: S) -> std::result::Result<S::Ok, S::Error> {
    serde::Serialize::serialize(&m.to_strings(), s)
}

impl Certificate {
    pub fn kind(&self) -> &'static str {
        match self {
            Certificate::InjectiveUnitRows { .. } => "injective-unit-rows",
            Certificate::TransportSurjective { .. } => "transport-surjective",
        }
    }

    /// Checks the witness against `m` from scratch.
    pub fn recheck(&self, m: &OpMatrix) -> bool {
        match self {
            Certificate::InjectiveUnitRows { witness_rows, entries } => {
                witness_rows.len() == m.cols()
                    && witness_rows.iter().zip(entries).enumerate().all(|(c, (&r, e))| {
                        r >= 1
                            && r <= m.rows()
                            && m.get(r - 1, c).as_scalar().as_ref() == Some(e)
                            && !e.is_zero()
                            && (0..m.cols()).all(|c2| c2 == c || m.get(r - 1, c2).is_zero())
                    })
            }
            Certificate::TransportSurjective {
                derivation,
                rows,
                columns,
                ..
            } => {
                let r: Vec<usize> = rows.iter().map(|x| x - 1).collect();
                let c: Vec<usize> = columns.iter().map(|x| x - 1).collect();
                r.iter().chain(&c).all(|&x| x < m.rows().max(m.cols()))
                    && transport_certificate(m, derivation - 1, &r, &c).as_ref() == Ok(self)
            }
        }
    }
}

/// Why no certificate was produced. This never means the property fails.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Refusal {
    pub reason: String,
}

fn refuse<T>(reason: impl Into<String>) -> std::result::Result<T, Refusal> {
    Err(Refusal { reason: reason.into() })
}

/// Looks for one row per column holding a nonzero scalar there and zeros in
/// every other column. The lowest such row is taken.
pub fn injectivity_certificate(m: &OpMatrix) -> std::result::Result<Certificate, Refusal> {
    if m.cols() == 0 {
        return refuse("no columns");
    }
    let mut witness_rows = Vec::new();
    let mut entries = Vec::new();
    for c in 0..m.cols() {
        let hit = (0..m.rows()).find(|&r| unit(m.get(r, c)) && (0..m.cols()).all(|c2| c2 == c || m.get(r, c2).is_zero()));
        match hit {
            Some(r) => {
                witness_rows.push(r + 1);
                entries.push(m.get(r, c).constant());
            }
            None => return refuse(format!("column {} has no isolated scalar unit", c + 1)),
        }
    }
    Ok(Certificate::InjectiveUnitRows { witness_rows, entries })
}

/// Recognises `block = D_derivation * 1 + constant` on a square selection.
/// `derivation` is a zero-based generator index.
pub fn transport_certificate(
    m: &OpMatrix,
    derivation: usize,
    rows: &[usize],
    cols: &[usize],
) -> std::result::Result<Certificate, Refusal> {
    if rows.len() != cols.len() || rows.is_empty() {
        return refuse("selection is not a nonempty square");
    }
    if derivation > 2 {
        return refuse("no such derivation");
    }
    if rows.iter().any(|&r| r >= m.rows()) || cols.iter().any(|&c| c >= m.cols()) {
        return refuse("selection outside the matrix");
    }
    let block = m.select(rows, cols);
    let d = Operator::generator(derivation);
    let mut constant = QMatrix::zeros(rows.len(), cols.len());
    for a in 0..rows.len() {
        for b in 0..cols.len() {
            let mut e = block.get(a, b).clone();
            if a == b {
                e = &e - &d;
            }
            match e.as_scalar() {
                Some(c) => constant[(a, b)] = c,
                None => {
                    return refuse(format!(
                        "entry ({},{}) is not D{} times identity plus a constant",
                        rows[a] + 1,
                        cols[b] + 1,
                        derivation + 1
                    ))
                }
            }
        }
    }
    Ok(Certificate::TransportSurjective {
        derivation: derivation + 1,
        rows: rows.iter().map(|x| x + 1).collect(),
        columns: cols.iter().map(|x| x + 1).collect(),
        constant,
    })
}

/// Distinct nonzero constants of a transport certificate.
pub fn transport_constants(c: &Certificate) -> Vec<Rational> {
    match c {
        Certificate::TransportSurjective { constant, .. } => {
            let mut out: Vec<Rational> = Vec::new();
            for i in 0..constant.rows() {
                for j in 0..constant.cols() {
                    let x = &constant[(i, j)];
                    if !x.is_zero() && !out.contains(x) {
                        out.push(x.clone());
                    }
                }
            }
            out.sort();
            out
        }
        _ => Vec::new(),
    }
}

/// One pivot of the triangular span argument on the slashed transferred
/// differential.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SpanPivot {
    pub row: usize,
    pub column: usize,
    pub entry: String,
    /// `scalar` or `transport` (nonzero multiple of a derivation plus a
    /// constant).
    pub kind: &'static str,
}

#[derive(Debug, Clone, Serialize)]
pub struct TwoByTwo {
    #[serde(serialize_with = "ser_opmatrix")]
    pub matrix: OpMatrix,
    #[serde(serialize_with = "ser_opmatrix")]
    pub pattern: OpMatrix,
    /// `matrix = pattern * diag(column_scales)`.
    #[serde(with = "rational_vec")]
    pub column_scales: Vec<Rational>,
    #[serde(serialize_with = "ser_opmatrix")]
    pub residual: OpMatrix,
    pub span_pivots: Vec<SpanPivot>,
    /// Rank of the constant part of the spanning columns at the point.
    pub scalar_span_rank: usize,
}

fn ser_opmatrix<S: serde::Serializer>(m: &OpMatrix, s: S) -> std::result::Result<S::Ok, S::Error> {
    serde::Serialize::serialize(&m.to_strings(), s)
}

impl TwoByTwo {
    /// The common scale when both columns carry the same one.
    pub fn scale(&self) -> Option<&Rational> {
        match self.column_scales.as_slice() {
            [a, b] if a == b => Some(a),
            _ => None,
        }
    }
}

/// `[[D3 D2 + 2a D1, -D3 D3 - 4a b], [-D2 D2 - 4a c, D2 D3 - 2a D1]]` with
/// `a = g11`, `b = g21`, `c = g31`.
pub fn two_by_two_pattern(pt: &ParamPoint, sc: &StructureConstants) -> OpMatrix {
    let g = |i: usize| Operator::generator(i);
    let s = |x: Rational| Operator::scalar(x);
    let two = Rational::from_integer(2.into());
    let four = Rational::from_integer(4.into());
    let (a, b, c) = (pt.g11.clone(), pt.g21.clone(), pt.g31.clone());
    let e11 = &sc.mul(&g(2), &g(1)) + &g(0).scale(&(&two * &a));
    let e12 = -&(&sc.mul(&g(2), &g(2)) + &s(&(&four * &a) * &b));
    let e21 = -&(&sc.mul(&g(1), &g(1)) + &s(&(&four * &a) * &c));
    let e22 = &sc.mul(&g(1), &g(2)) - &g(0).scale(&(&two * &a));
    OpMatrix::from_rows(vec![vec![e11, e12], vec![e21, e22]]).expect("square")
}

/// Rows and columns (one-based) of the fixed elimination pattern on the
/// 5x10 slashed transferred differential.
pub const SPAN_PIVOTS: [(usize, usize); 3] = [(4, 9), (3, 4), (1, 5)];
pub const SPAN_ZERO_ROWS: [usize; 2] = [2, 5];
pub const TWO_BY_TWO_COLUMNS: [usize; 2] = [1, 6];

fn pivot_kind(op: &Operator) -> Option<&'static str> {
    if unit(op) {
        return Some("scalar");
    }
    if op.order() != 1 {
        return None;
    }
    let first: Vec<_> = op.terms().filter(|(m, _)| m.degree() == 1).collect();
    (first.len() == 1 && !first[0].1.is_zero()).then_some("transport")
}

/// Eliminates rows `{1,3,4}` of the slashed differential by a triangular
/// pivot argument on columns `{4,5,9}`, then checks that the surviving
/// rows `{2,5}` live on columns `{1,6}` and match the fixed 2x2 pattern up
/// to a nonzero scale per column. The residual `B` (columns `{2,5}` of
/// `b_slashed`) must annihilate the result.
pub fn extract_two_by_two(
    delta: &OpMatrix,
    b_slashed: &OpMatrix,
    sc: &StructureConstants,
    pt: &ParamPoint,
) -> Result<TwoByTwo> {
    if delta.shape() != (5, 10) || b_slashed.shape() != (1, 5) {
        return Err(Error::PatternMismatch(format!(
            "expected 5x10 and 1x5, found {:?} and {:?}",
            delta.shape(),
            b_slashed.shape()
        )));
    }
    let span_cols: Vec<usize> = SPAN_PIVOTS.iter().map(|p| p.1 - 1).collect();
    for &r in &SPAN_ZERO_ROWS {
        for &c in &span_cols {
            if !delta.get(r - 1, c).is_zero() {
                return Err(Error::SpanCheckFailed(format!("row {r} is nonzero in column {}", c + 1)));
            }
        }
    }
    let mut pivots = Vec::new();
    for (step, &(r, c)) in SPAN_PIVOTS.iter().enumerate() {
        let e = delta.get(r - 1, c - 1);
        let kind = pivot_kind(e)
            .ok_or_else(|| Error::SpanCheckFailed(format!("pivot ({r},{c}) `{e}` is neither a unit nor a transport entry")))?;
        for &(earlier, _) in &SPAN_PIVOTS[..step] {
            if !delta.get(earlier - 1, c - 1).is_zero() {
                return Err(Error::SpanCheckFailed(format!(
                    "column {c} reaches row {earlier}, which an earlier pivot already fixed"
                )));
            }
        }
        pivots.push(SpanPivot {
            row: r,
            column: c,
            entry: e.to_string(),
            kind,
        });
    }
    let scalar_span_rank = delta.select(&[0, 1, 2, 3, 4], &span_cols).scalar_part().rank();

    let keep_rows: Vec<usize> = SPAN_ZERO_ROWS.iter().map(|r| r - 1).collect();
    let keep_cols: Vec<usize> = TWO_BY_TWO_COLUMNS.iter().map(|c| c - 1).collect();
    for &r in &keep_rows {
        for c in 0..10 {
            if !keep_cols.contains(&c) && !delta.get(r, c).is_zero() {
                return Err(Error::PatternMismatch(format!("row {} is nonzero in column {}", r + 1, c + 1)));
            }
        }
    }
    let matrix = delta.select(&keep_rows, &keep_cols);
    let residual = b_slashed.select(&[0], &keep_rows);
    let pattern = two_by_two_pattern(pt, sc);
    let mut column_scales = Vec::new();
    for c in 0..2 {
        let (m, t) = (matrix.get(0, c), pattern.get(0, c));
        let (mono, tc) = t
            .terms()
            .next()
            .ok_or_else(|| Error::PatternMismatch("pattern column vanishes".into()))?;
        let s = &m.coefficient(mono) / tc;
        if s.is_zero() {
            return Err(Error::PatternMismatch(format!("column {} has zero scale", c + 1)));
        }
        for r in 0..2 {
            if *matrix.get(r, c) != pattern.get(r, c).scale(&s) {
                return Err(Error::PatternMismatch(format!(
                    "entry ({},{}) `{}` is not {} times `{}`",
                    r + 1,
                    c + 1,
                    matrix.get(r, c),
                    s,
                    pattern.get(r, c)
                )));
            }
        }
        column_scales.push(s);
    }
    if !residual.mul(&matrix, sc)?.is_zero() {
        return Err(Error::PatternMismatch("residual row does not annihilate the 2x2 system".into()));
    }
    Ok(TwoByTwo {
        matrix,
        pattern,
        column_scales,
        residual,
        span_pivots: pivots,
        scalar_span_rank,
    })
}

/// `(g10 + g20 + g30) / (4 g11)`, the scale expected in the free case.
pub fn free_scale(pt: &ParamPoint) -> Rational {
    (&pt.g10 + &pt.g20 + &pt.g30) / (Rational::from_integer(4.into()) * &pt.g11)
}

/// Exactness of `im A = ker B` for scalar matrices.
pub fn scalar_exact(a: &QMatrix, b: &QMatrix) -> bool {
    a.rank() == b.nullity()
}
