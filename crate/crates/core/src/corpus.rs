//! The two bundled computation corpora and their JSON format.
//!
//! A fixture carries the graded basis of the 72-rank module, the diagonal
//! block differentials of the 0th page, the representatives and kernel
//! complements used for the contractions, and the page-1 and page-2 operator
//! matrices. Entries are strings in the operator-literal grammar.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::linalg::QMatrix;
use crate::opalg::{ExprMatrix, OpMatrix, StructureConstants};
use crate::params::{Case, ParamPoint, ScalarExpr};

pub const SCHEMA: &str = "specseq-fixture/1";
/// Homological degrees `k = 0..=4`.
pub const DEGREES: usize = 5;
/// Filtration columns `p = 0..=4`.
pub const COLUMNS: usize = 5;

const FREE_SOURCE: &str = include_str!("../fixtures/free.json");
const BOUNCE_SOURCE: &str = include_str!("../fixtures/bounce.json");

/// Coarse grading `p2 p3`; the filtration column is `p = p2 + p3`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Block {
    pub p2: u8,
    pub p3: u8,
}

impl Block {
    /// Every block, grouped by column and ordered by decreasing `p2`.
    pub const ALL: [Block; 9] = [
        Block::new(0, 0),
        Block::new(1, 0),
        Block::new(0, 1),
        Block::new(2, 0),
        Block::new(1, 1),
        Block::new(0, 2),
        Block::new(2, 1),
        Block::new(1, 2),
        Block::new(2, 2),
    ];

    pub const fn new(p2: u8, p3: u8) -> Self {
        Block { p2, p3 }
    }

    pub fn column(self) -> usize {
        (self.p2 + self.p3) as usize
    }

    pub fn name(self) -> String {
        format!("{}{}", self.p2, self.p3)
    }

    pub fn parse(s: &str) -> Option<Self> {
        let b = s.as_bytes();
        if b.len() != 2 {
            return None;
        }
        let d = |c: u8| (b'0'..=b'2').contains(&c).then(|| c - b'0');
        Some(Block::new(d(b[0])?, d(b[1])?))
    }

    /// Blocks making up column `p`, in basis order.
    pub fn in_column(p: usize) -> Vec<Block> {
        Block::ALL.into_iter().filter(|b| b.column() == p).collect()
    }

    fn of_alpha(alpha: &str) -> Option<Block> {
        Block::parse(alpha.get(1..)?)
    }
}

impl fmt::Display for Block {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.p2, self.p3)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BasisEntry {
    /// Tri-grading `p1 p2 p3`.
    pub alpha: String,
    pub k: usize,
    /// 1-based position within `(alpha, k)`.
    pub index: usize,
    /// Opaque display string.
    pub label: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedBasis {
    entries: Vec<BasisEntry>,
}

impl GradedBasis {
    pub fn entries(&self) -> &[BasisEntry] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn alpha_rank(&self, alpha: &str) -> usize {
        self.entries.iter().filter(|e| e.alpha == alpha).count()
    }

    pub fn block_rank(&self, b: Block, k: usize) -> usize {
        self.entries
            .iter()
            .filter(|e| e.k == k && Block::of_alpha(&e.alpha) == Some(b))
            .count()
    }

    pub fn block_ranks(&self, b: Block) -> [usize; DEGREES] {
        std::array::from_fn(|k| self.block_rank(b, k))
    }

    pub fn column_ranks(&self, p: usize) -> [usize; DEGREES] {
        let mut out = [0; DEGREES];
        for b in Block::in_column(p) {
            for (k, r) in self.block_ranks(b).into_iter().enumerate() {
                out[k] += r;
            }
        }
        out
    }

    /// Labels of the basis of `G_b C^k`, tri-gradings in increasing `p1`.
    pub fn block_labels(&self, b: Block, k: usize) -> Vec<&BasisEntry> {
        let mut v: Vec<&BasisEntry> = self
            .entries
            .iter()
            .filter(|e| e.k == k && Block::of_alpha(&e.alpha) == Some(b))
            .collect();
        v.sort_by(|x, y| (&x.alpha[..1], x.index).cmp(&(&y.alpha[..1], y.index)));
        v
    }
}

/// Rank tables keyed by tri-grading and by `(p, k)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RankTable {
    pub by_alpha: BTreeMap<String, usize>,
    /// `by_column[p][k]`.
    pub by_column: [[usize; DEGREES]; COLUMNS],
}

impl RankTable {
    /// Zero for tri-gradings without basis elements.
    pub fn alpha(&self, alpha: &str) -> usize {
        self.by_alpha.get(alpha).copied().unwrap_or(0)
    }

    pub fn total(&self) -> usize {
        self.by_alpha.values().sum()
    }
}

pub fn basis_ranks(fx: &CaseFixture) -> RankTable {
    let mut by_alpha = BTreeMap::new();
    for e in fx.basis.entries() {
        *by_alpha.entry(e.alpha.clone()).or_insert(0) += 1;
    }
    RankTable {
        by_alpha,
        by_column: std::array::from_fn(|p| fx.basis.column_ranks(p)),
    }
}

/// A matrix together with its location tag.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Located<T> {
    pub location: String,
    pub value: T,
}

/// Prescribed complement of the kernel in `G_b C^k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ComplementSpec {
    /// Span of the coordinate directions marked `*`.
    Pattern(Vec<bool>),
    /// Span of explicit row vectors.
    Vectors(ExprMatrix),
}

impl ComplementSpec {
    /// Basis of the prescribed span as matrix columns.
    pub fn basis(&self, dim: usize, pt: &ParamPoint) -> Result<QMatrix> {
        match self {
            ComplementSpec::Pattern(stars) => {
                let cols: Vec<usize> = (0..stars.len()).filter(|&i| stars[i]).collect();
                Ok(QMatrix::identity(dim).select_columns(&cols))
            }
            ComplementSpec::Vectors(m) => Ok(m.eval_scalar(pt)?.transpose()),
        }
    }

    fn width(&self) -> usize {
        match self {
            ComplementSpec::Pattern(s) => s.len(),
            ComplementSpec::Vectors(m) => m.cols(),
        }
    }
}

fn parse_pattern(s: &str) -> Option<Vec<bool>> {
    let inner = s.trim().strip_prefix('(')?.strip_suffix(')')?;
    inner
        .split(',')
        .map(|t| match t.trim() {
            "*" => Some(true),
            "0" => Some(false),
            _ => None,
        })
        .collect()
}

fn format_pattern(stars: &[bool]) -> String {
    let items: Vec<&str> = stars.iter().map(|&s| if s { "*" } else { "0" }).collect();
    format!("({})", items.join(","))
}

/// Symbolic bracket table `[D2,D3]`, `[D3,D1]`, `[D1,D2]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BracketTable {
    /// True when the table is not stated alongside the corpus but inferred
    /// from the composition identities it has to satisfy.
    pub inferred: bool,
    pub brackets: [[ScalarExpr; 3]; 3],
}

impl BracketTable {
    pub fn at(&self, pt: &ParamPoint) -> Result<StructureConstants> {
        let ev = |v: &[ScalarExpr; 3]| -> Result<[crate::params::Rational; 3]> {
            Ok([v[0].eval(pt)?, v[1].eval(pt)?, v[2].eval(pt)?])
        };
        StructureConstants::from_brackets(ev(&self.brackets[0])?, ev(&self.brackets[1])?, ev(&self.brackets[2])?)
    }

    pub fn describe(&self) -> String {
        let names = ["[D2,D3]", "[D3,D1]", "[D1,D2]"];
        let parts: Vec<String> = names
            .iter()
            .zip(&self.brackets)
            .map(|(n, v)| {
                let terms: Vec<String> = v
                    .iter()
                    .enumerate()
                    .filter(|(_, e)| !matches!(e, ScalarExpr::Lit(x) if num_traits::Zero::is_zero(x)))
                    .map(|(i, e)| format!("({e})*D{}", i + 1))
                    .collect();
                format!("{n} = {}", if terms.is_empty() { "0".into() } else { terms.join(" + ") })
            })
            .collect();
        parts.join(", ")
    }
}

/// Names of the page maps carried by a fixture.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum MapName {
    D10p,
    D32,
    D43,
    DeltaSlashed,
}

impl MapName {
    pub const ALL: [MapName; 4] = [MapName::D10p, MapName::D32, MapName::D43, MapName::DeltaSlashed];

    pub fn key(self) -> &'static str {
        match self {
            MapName::D10p => "d10p",
            MapName::D32 => "d32",
            MapName::D43 => "d43",
            MapName::DeltaSlashed => "delta_slashed",
        }
    }

    pub fn shape(self) -> (usize, usize) {
        match self {
            MapName::D10p => (10, 3),
            MapName::D32 => (10, 2),
            MapName::D43 => (4, 10),
            MapName::DeltaSlashed => (5, 10),
        }
    }

    /// Allowed operator order.
    pub fn max_order(self) -> u32 {
        match self {
            MapName::DeltaSlashed => 2,
            _ => 1,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CaseFixture {
    pub case: Case,
    pub structure: BracketTable,
    pub basis: GradedBasis,
    /// `None` marks a block declared zero.
    pub blocks: BTreeMap<(Block, usize), Located<Option<ExprMatrix>>>,
    pub representatives: BTreeMap<(Block, usize), Located<ExprMatrix>>,
    pub complements: BTreeMap<(Block, usize), ComplementSpec>,
    pub maps: BTreeMap<MapName, Located<ExprMatrix>>,
    /// Rows of the unreduced transferred differential kept in the reduced one.
    pub row_origin: Vec<usize>,
    /// Opaque case metadata.
    pub metadata: serde_json::Value,
}

mod raw {
    use super::*;

    #[derive(Debug, Serialize, Deserialize)]
    #[serde(deny_unknown_fields)]
    pub struct Fixture {
        pub schema: String,
        pub case: Case,
        pub structure_constants: Structure,
        pub basis: Vec<BasisEntry>,
        pub blocks: Vec<BlockEntry>,
        pub representatives: Vec<Reps>,
        pub complements: Vec<Complement>,
        pub maps: Maps,
        #[serde(default)]
        pub metadata: serde_json::Value,
    }

    #[derive(Debug, Serialize, Deserialize)]
    #[serde(deny_unknown_fields)]
    pub struct Structure {
        pub inferred: bool,
        pub brackets: Brackets,
    }

    #[derive(Debug, Serialize, Deserialize)]
    #[serde(deny_unknown_fields)]
    pub struct Brackets {
        #[serde(rename = "D2,D3")]
        pub b23: [String; 3],
        #[serde(rename = "D3,D1")]
        pub b31: [String; 3],
        #[serde(rename = "D1,D2")]
        pub b12: [String; 3],
    }

    #[derive(Debug, Serialize, Deserialize)]
    #[serde(deny_unknown_fields)]
    pub struct BlockEntry {
        pub block: String,
        pub k: usize,
        pub location: String,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        pub rows: Option<Vec<Vec<String>>>,
        #[serde(default, skip_serializing_if = "std::ops::Not::not")]
        pub zero: bool,
    }

    #[derive(Debug, Serialize, Deserialize)]
    #[serde(deny_unknown_fields)]
    pub struct Reps {
        pub block: String,
        pub k: usize,
        pub location: String,
        pub vectors: Vec<Vec<String>>,
    }

    #[derive(Debug, Serialize, Deserialize)]
    #[serde(deny_unknown_fields)]
    pub struct Complement {
        pub block: String,
        pub k: usize,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        pub pattern: Option<String>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        pub vectors: Option<Vec<Vec<String>>>,
    }

    #[derive(Debug, Serialize, Deserialize)]
    #[serde(deny_unknown_fields)]
    pub struct Map {
        pub location: String,
        pub rows: Vec<Vec<String>>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        pub row_origin: Option<Vec<usize>>,
    }

    #[derive(Debug, Serialize, Deserialize)]
    #[serde(deny_unknown_fields)]
    pub struct Maps {
        pub d10p: Map,
        pub d32: Map,
        pub d43: Map,
        pub delta_slashed: Map,
    }
}

fn block_key(name: &str, k: usize, ctx: &str) -> Result<(Block, usize)> {
    let b = Block::parse(name).ok_or_else(|| Error::parse(ctx, format!("unknown block `{name}`")))?;
    Ok((b, k))
}

fn scalar(src: &str, ctx: &str) -> Result<ScalarExpr> {
    ScalarExpr::parse(src).map_err(|e| match e {
        Error::Parse { message, .. } => Error::parse(ctx, message),
        other => other,
    })
}

/// Parses and validates a fixture for `case`.
pub fn load_fixture(case: Case, source: &[u8]) -> Result<CaseFixture> {
    let raw: raw::Fixture = serde_json::from_slice(source).map_err(|e| {
        Error::parse(format!("line {} column {}", e.line(), e.column()), e.to_string())
    })?;
    if raw.schema != SCHEMA {
        return Err(Error::parse("schema", format!("expected `{SCHEMA}`, found `{}`", raw.schema)));
    }
    if raw.case != case {
        return Err(Error::parse("case", format!("expected `{case}`, found `{}`", raw.case)));
    }
    let br = &raw.structure_constants.brackets;
    let triple = |v: &[String; 3], name: &str| -> Result<[ScalarExpr; 3]> {
        Ok([
            scalar(&v[0], &format!("structure_constants.{name}[1]"))?,
            scalar(&v[1], &format!("structure_constants.{name}[2]"))?,
            scalar(&v[2], &format!("structure_constants.{name}[3]"))?,
        ])
    };
    let structure = BracketTable {
        inferred: raw.structure_constants.inferred,
        brackets: [triple(&br.b23, "D2,D3")?, triple(&br.b31, "D3,D1")?, triple(&br.b12, "D1,D2")?],
    };
    let basis = GradedBasis { entries: raw.basis };
    for (n, e) in basis.entries.iter().enumerate() {
        if Block::of_alpha(&e.alpha).is_none() || e.alpha.len() != 3 || e.k >= DEGREES {
            return Err(Error::parse(
                format!("basis[{}]", n + 1),
                format!("bad grading alpha `{}`, k = {}", e.alpha, e.k),
            ));
        }
    }

    let mut blocks = BTreeMap::new();
    for (n, b) in raw.blocks.into_iter().enumerate() {
        let ctx = format!("blocks[{}]", n + 1);
        let key = block_key(&b.block, b.k, &ctx)?;
        let name = format!("ddc{{{},{}}}", b.k, b.block);
        let expected = (basis.block_rank(key.0, b.k + 1), basis.block_rank(key.0, b.k));
        let value = match (b.rows, b.zero) {
            (Some(rows), false) => {
                let m = ExprMatrix::parse(&name, &rows)?;
                if m.shape() != expected && !(rows.is_empty() && expected.0 == 0) {
                    return Err(Error::shape(&name, fmt_shape(expected), fmt_shape(m.shape())));
                }
                Some(m)
            }
            (None, true) => None,
            _ => return Err(Error::parse(ctx, "a block needs exactly one of `rows` and `zero`")),
        };
        if blocks.insert(key, Located { location: b.location, value }).is_some() {
            return Err(Error::parse(ctx, format!("duplicate block {name}")));
        }
    }

    let mut representatives = BTreeMap::new();
    for (n, r) in raw.representatives.into_iter().enumerate() {
        let ctx = format!("representatives[{}]", n + 1);
        let key = block_key(&r.block, r.k, &ctx)?;
        let name = format!("representatives{{{},{}}}", r.k, r.block);
        let m = ExprMatrix::parse(&name, &r.vectors)?;
        let dim = basis.block_rank(key.0, key.1);
        if m.cols() != dim {
            return Err(Error::shape(&name, format!("vectors of length {dim}"), m.cols()));
        }
        representatives.insert(key, Located { location: r.location, value: m });
    }

    let mut complements = BTreeMap::new();
    for (n, c) in raw.complements.into_iter().enumerate() {
        let ctx = format!("complements[{}]", n + 1);
        let key = block_key(&c.block, c.k, &ctx)?;
        let name = format!("complement{{{},{}}}", c.k, c.block);
        let spec = match (c.pattern, c.vectors) {
            (Some(p), None) => ComplementSpec::Pattern(
                parse_pattern(&p).ok_or_else(|| Error::parse(&ctx, format!("bad pattern `{p}`")))?,
            ),
            (None, Some(v)) => ComplementSpec::Vectors(ExprMatrix::parse(&name, &v)?),
            _ => return Err(Error::parse(ctx, "a complement needs exactly one of `pattern` and `vectors`")),
        };
        let dim = basis.block_rank(key.0, key.1);
        if spec.width() != dim {
            return Err(Error::shape(&name, format!("vectors of length {dim}"), spec.width()));
        }
        complements.insert(key, spec);
    }

    let mut maps = BTreeMap::new();
    let mut row_origin = Vec::new();
    let raw::Maps { d10p, d32, d43, delta_slashed } = raw.maps;
    for (name, m) in [
        (MapName::D10p, d10p),
        (MapName::D32, d32),
        (MapName::D43, d43),
        (MapName::DeltaSlashed, delta_slashed),
    ] {
        let parsed = ExprMatrix::parse(name.key(), &m.rows)?;
        if parsed.shape() != name.shape() {
            return Err(Error::shape(
                format!("maps.{}", name.key()),
                fmt_shape(name.shape()),
                fmt_shape(parsed.shape()),
            ));
        }
        if let Some(r) = m.row_origin {
            row_origin = r;
        }
        maps.insert(name, Located { location: m.location, value: parsed });
    }

    Ok(CaseFixture {
        case,
        structure,
        basis,
        blocks,
        representatives,
        complements,
        maps,
        row_origin,
        metadata: raw.metadata,
    })
}

fn fmt_shape((r, c): (usize, usize)) -> String {
    format!("{r}x{c}")
}

/// The corpus shipped with the crate.
pub fn bundled(case: Case) -> CaseFixture {
    let src = match case {
        Case::Free => FREE_SOURCE,
        Case::Bounce => BOUNCE_SOURCE,
    };
    load_fixture(case, src.as_bytes()).expect("bundled fixture is valid")
}

impl CaseFixture {
    pub fn block_rank(&self, b: Block, k: usize) -> usize {
        self.basis.block_rank(b, k)
    }

    pub fn structure_constants(&self, pt: &ParamPoint) -> Result<StructureConstants> {
        self.structure.at(pt)
    }

    /// `ddc{k, b}` evaluated at `pt`; blocks not listed are zero.
    pub fn block_matrix(&self, b: Block, k: usize, pt: &ParamPoint) -> Result<QMatrix> {
        let shape = (self.block_rank(b, k + 1), self.block_rank(b, k));
        match self.blocks.get(&(b, k)).and_then(|l| l.value.as_ref()) {
            Some(m) if m.rows() > 0 => m.eval_scalar(pt),
            _ => Ok(QMatrix::zeros(shape.0, shape.1)),
        }
    }

    /// Representatives as matrix columns; empty if none are listed.
    pub fn representatives_at(&self, b: Block, k: usize, pt: &ParamPoint) -> Result<QMatrix> {
        match self.representatives.get(&(b, k)) {
            Some(r) => Ok(r.value.eval_scalar(pt)?.transpose()),
            None => Ok(QMatrix::zeros(self.block_rank(b, k), 0)),
        }
    }

    pub fn map(&self, name: MapName) -> &ExprMatrix {
        &self.maps[&name].value
    }

    pub fn map_at(&self, name: MapName, pt: &ParamPoint, sc: &StructureConstants) -> Result<OpMatrix> {
        self.map(name).eval(pt, sc)
    }

    /// Every location tag, in a fixed order.
    pub fn locations(&self) -> Vec<&str> {
        let mut out: Vec<&str> = self
            .blocks
            .values()
            .filter(|b| b.value.is_some())
            .map(|b| b.location.as_str())
            .collect();
        out.extend(self.representatives.values().map(|r| r.location.as_str()));
        out.extend(self.maps.values().map(|m| m.location.as_str()));
        out
    }

    fn to_raw(&self) -> raw::Fixture {
        let strs = |m: &ExprMatrix| m.to_strings();
        let triple = |v: &[ScalarExpr; 3]| [v[0].to_string(), v[1].to_string(), v[2].to_string()];
        let map = |n: MapName| {
            let l = &self.maps[&n];
            raw::Map {
                location: l.location.clone(),
                rows: strs(&l.value),
                row_origin: (n == MapName::DeltaSlashed).then(|| self.row_origin.clone()),
            }
        };
        raw::Fixture {
            schema: SCHEMA.into(),
            case: self.case,
            structure_constants: raw::Structure {
                inferred: self.structure.inferred,
                brackets: raw::Brackets {
                    b23: triple(&self.structure.brackets[0]),
                    b31: triple(&self.structure.brackets[1]),
                    b12: triple(&self.structure.brackets[2]),
                },
            },
            basis: self.basis.entries.clone(),
            blocks: self
                .blocks
                .iter()
                .map(|((b, k), l)| raw::BlockEntry {
                    block: b.name(),
                    k: *k,
                    location: l.location.clone(),
                    rows: l.value.as_ref().map(strs),
                    zero: l.value.is_none(),
                })
                .collect(),
            representatives: self
                .representatives
                .iter()
                .map(|((b, k), l)| raw::Reps {
                    block: b.name(),
                    k: *k,
                    location: l.location.clone(),
                    vectors: strs(&l.value),
                })
                .collect(),
            complements: self
                .complements
                .iter()
                .map(|((b, k), c)| {
                    let (pattern, vectors) = match c {
                        ComplementSpec::Pattern(p) => (Some(format_pattern(p)), None),
                        ComplementSpec::Vectors(m) => (None, Some(strs(m))),
                    };
                    raw::Complement {
                        block: b.name(),
                        k: *k,
                        pattern,
                        vectors,
                    }
                })
                .collect(),
            maps: raw::Maps {
                d10p: map(MapName::D10p),
                d32: map(MapName::D32),
                d43: map(MapName::D43),
                delta_slashed: map(MapName::DeltaSlashed),
            },
            metadata: self.metadata.clone(),
        }
    }

    /// Canonical JSON: fixed key order, normalized entry strings.
    pub fn to_canonical_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.to_raw()).expect("fixture serializes");
        s.push('\n');
        s
    }

    /// SHA-256 of the canonical serialization, hex encoded.
    pub fn checksum(&self) -> String {
        hex::encode(Sha256::digest(self.to_canonical_json().as_bytes()))
    }
}

/// One line of [`check_fixture_shapes`] output.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Diagnostic {
    pub check: String,
    pub subject: String,
    pub ok: bool,
    pub detail: String,
}

/// The expected Table-of-ranks values.
pub const ALPHA_RANKS: [(&str, usize); 11] = [
    ("000", 9),
    ("200", 1),
    ("020", 1),
    ("002", 1),
    ("011", 11),
    ("101", 11),
    ("110", 11),
    ("211", 7),
    ("121", 7),
    ("112", 7),
    ("222", 6),
];

/// `COLUMN_RANKS[p][k]`.
pub const COLUMN_RANKS: [[usize; DEGREES]; COLUMNS] = [
    [5, 4, 1, 0, 0],
    [4, 16, 2, 0, 0],
    [2, 11, 7, 0, 0],
    [0, 2, 12, 0, 0],
    [0, 0, 1, 5, 0],
];

/// Homology ranks of each diagonal block in degrees 0 to 3.
pub const BLOCK_HOMOLOGY: [(&str, [usize; 4]); 9] = [
    ("00", [3, 1, 0, 0]),
    ("10", [0, 5, 0, 0]),
    ("01", [0, 5, 0, 0]),
    ("20", [0, 1, 0, 0]),
    ("11", [0, 0, 0, 0]),
    ("02", [0, 1, 0, 0]),
    ("21", [0, 0, 5, 0]),
    ("12", [0, 0, 5, 0]),
    ("22", [0, 0, 0, 4]),
];

/// First-page ranks `E1_RANKS[p][k]`.
pub const E1_RANKS: [[usize; DEGREES]; COLUMNS] = [
    [3, 1, 0, 0, 0],
    [0, 10, 0, 0, 0],
    [0, 2, 0, 0, 0],
    [0, 0, 10, 0, 0],
    [0, 0, 0, 4, 0],
];

pub fn check_fixture_shapes(fx: &CaseFixture) -> Vec<Diagnostic> {
    let mut out = Vec::new();
    let mut push = |check: &str, subject: String, ok: bool, detail: String| {
        out.push(Diagnostic {
            check: check.into(),
            subject,
            ok,
            detail,
        })
    };
    let ranks = basis_ranks(fx);
    let expected: BTreeMap<String, usize> = ALPHA_RANKS.iter().map(|(a, r)| (a.to_string(), *r)).collect();
    push(
        "rank-table",
        "by tri-grading".into(),
        ranks.by_alpha == expected,
        format!("{:?}", ranks.by_alpha),
    );
    push(
        "rank-table",
        "by column".into(),
        ranks.by_column == COLUMN_RANKS,
        format!("{:?}", ranks.by_column),
    );
    push("rank-table", "total".into(), ranks.total() == 72, ranks.total().to_string());

    for b in Block::ALL {
        for k in 0..3 {
            let subject = format!("ddc{{{k},{b}}}");
            match fx.blocks.get(&(b, k)) {
                None => push("block-present", subject, false, "missing".into()),
                Some(l) => match &l.value {
                    None => push("block-scalar", subject, true, "zero".into()),
                    Some(m) => {
                        let (d, at) = m.degree();
                        push(
                            "block-scalar",
                            subject,
                            d == 0,
                            at.map_or("constant entries".into(), |(i, j)| format!("order {d} at ({i},{j})")),
                        );
                    }
                },
            }
        }
    }
    // Only diagonal blocks are representable, so every block that raises a
    // tri-grading component is absent by construction.
    let off_diagonal = fx
        .blocks
        .keys()
        .filter(|(b, _)| !Block::ALL.contains(b))
        .count();
    push(
        "off-diagonal-zero",
        "all blocks".into(),
        off_diagonal == 0,
        "fixture lists diagonal blocks only".into(),
    );

    for name in MapName::ALL {
        let m = fx.map(name);
        let (d, at) = m.degree();
        push(
            "map-order",
            name.key().into(),
            d <= name.max_order(),
            match at {
                Some((i, j)) if d > name.max_order() => {
                    format!("order {d} > {} at ({i},{j})", name.max_order())
                }
                _ => format!("order {d} <= {}", name.max_order()),
            },
        );
    }

    let locations = fx.locations();
    let unique: BTreeSet<&str> = locations.iter().copied().collect();
    push(
        "locations-unique",
        "all matrices".into(),
        unique.len() == locations.len(),
        format!("{} tags", locations.len()),
    );
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::opalg::OpExpr;
    use crate::params::{int, rat};

    #[test]
    fn bundled_fixtures_load() {
        for case in [Case::Free, Case::Bounce] {
            let fx = bundled(case);
            assert_eq!(fx.map(MapName::D43).shape(), (4, 10));
            assert_eq!(fx.basis.len(), 72);
            for d in check_fixture_shapes(&fx) {
                assert!(d.ok, "{case}: {d:?}");
            }
        }
    }

    #[test]
    fn rank_tables() {
        let t = basis_ranks(&bundled(Case::Free));
        assert_eq!(t.alpha("011"), 11);
        assert_eq!(t.alpha("111"), 0);
        assert_eq!(t.total(), 72);
        assert_eq!(t.by_column, COLUMN_RANKS);
        let row_sums: usize = t.by_column.iter().flatten().sum();
        assert_eq!(row_sums, 72);
    }

    #[test]
    fn wrong_shape_is_reported() {
        let mut v: serde_json::Value = serde_json::from_str(FREE_SOURCE).unwrap();
        v["maps"]["d43"]["rows"].as_array_mut().unwrap().pop();
        let err = load_fixture(Case::Free, v.to_string().as_bytes()).unwrap_err();
        match err {
            Error::Shape { matrix, expected, actual } => {
                assert_eq!(matrix, "maps.d43");
                assert_eq!(expected, "4x10");
                assert_eq!(actual, "3x10");
            }
            other => panic!("{other:?}"),
        }
        assert!(matches!(load_fixture(Case::Free, &FREE_SOURCE.as_bytes()[..100]), Err(Error::Parse { .. })));
    }

    #[test]
    fn parse_errors_carry_location() {
        let mut v: serde_json::Value = serde_json::from_str(FREE_SOURCE).unwrap();
        v["maps"]["d32"]["rows"][1][0] = "2 +".into();
        match load_fixture(Case::Free, v.to_string().as_bytes()) {
            Err(Error::Parse { location, .. }) => assert!(location.starts_with("d32[2,1]"), "{location}"),
            other => panic!("{other:?}"),
        }
        assert!(matches!(load_fixture(Case::Bounce, FREE_SOURCE.as_bytes()), Err(Error::Parse { .. })));
    }

    #[test]
    fn order_violation_is_flagged() {
        let mut fx = bundled(Case::Free);
        let mut m = fx.map(MapName::DeltaSlashed).clone();
        m.set(2, 1, OpExpr::parse("D2^3").unwrap());
        fx.maps.get_mut(&MapName::DeltaSlashed).unwrap().value = m;
        let bad: Vec<_> = check_fixture_shapes(&fx).into_iter().filter(|d| !d.ok).collect();
        assert_eq!(bad.len(), 1);
        assert_eq!(bad[0].subject, "delta_slashed");
        assert!(bad[0].detail.contains("(3,2)"));
    }

    #[test]
    fn zero_blocks_evaluate_to_zero() {
        let fx = bundled(Case::Free);
        let pt = ParamPoint::reference_free();
        let m = fx.block_matrix(Block::new(2, 1), 0, &pt).unwrap();
        assert_eq!(m.shape(), (1, 0));
        let m = fx.block_matrix(Block::new(2, 1), 2, &pt).unwrap();
        assert!(m.is_zero());
        assert_eq!(m.shape(), (0, 6));
        let d0 = fx.block_matrix(Block::new(0, 0), 0, &pt).unwrap();
        assert_eq!(d0[(3, 0)], rat(-4, 7));
        assert_eq!(d0[(3, 4)], int(-1));
    }

    #[test]
    fn page_one_maps_agree_across_cases() {
        // the bounce maps are the free ones with g11 = 1
        let (free, bounce) = (bundled(Case::Free), bundled(Case::Bounce));
        for seed in 0..4 {
            let q = crate::params::sample_bounce_point(seed).unwrap();
            let sc = bounce.structure_constants(&q).unwrap();
            assert_eq!(free.structure_constants(&q).unwrap(), sc);
            for name in [MapName::D10p, MapName::D32, MapName::D43] {
                assert_eq!(free.map_at(name, &q, &sc).unwrap(), bounce.map_at(name, &q, &sc).unwrap());
            }
        }
    }

    #[test]
    fn canonical_form_is_a_fixed_point() {
        for case in [Case::Free, Case::Bounce] {
            let fx = bundled(case);
            let once = fx.to_canonical_json();
            let again = load_fixture(case, once.as_bytes()).unwrap();
            assert_eq!(again, fx);
            assert_eq!(again.to_canonical_json(), once);
            assert_eq!(fx.checksum().len(), 64);
        }
    }

    #[test]
    fn every_displayed_matrix_is_tagged_once() {
        for case in [Case::Free, Case::Bounce] {
            let fx = bundled(case);
            let locs = fx.locations();
            let unique: BTreeSet<_> = locs.iter().collect();
            assert_eq!(unique.len(), locs.len());
            // 11 nonzero blocks, 9 representative lists, 4 page maps
            assert_eq!(locs.len(), 24, "{case}");
        }
    }

    #[test]
    fn column_order() {
        assert_eq!(Block::in_column(2), vec![Block::new(2, 0), Block::new(1, 1), Block::new(0, 2)]);
        let fx = bundled(Case::Free);
        let labels = fx.basis.block_labels(Block::new(1, 1), 1);
        assert_eq!(labels.len(), 9);
        assert_eq!(labels[8].alpha, "211");
    }
}
