//! Page-by-page bookkeeping for the operator complex.
//!
//! Cells hold exact ranks where everything adjacent is a scalar
//! computation. Elsewhere a cell is a zero claim backed by a certificate or
//! a named analytic axiom, or a module known only by description.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::ser::SerializeMap;
use serde::{Serialize, Serializer};

use crate::contraction::block_complex;
use crate::corpus::{Block, CaseFixture, COLUMNS, DEGREES};
use crate::error::{Error, Result};
use crate::params::{Case, ParamPoint};
use crate::reduce::Certificate;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Justification {
    #[serde(rename = "computed")]
    Computed,
    #[serde(rename = "certificate:injective")]
    CertificateInjective,
    #[serde(rename = "certificate:transport")]
    CertificateTransport,
    #[serde(rename = "axiom:analytic")]
    AxiomAnalytic,
}

impl fmt::Display for Justification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Justification::Computed => "computed",
            Justification::CertificateInjective => "certificate:injective",
            Justification::CertificateTransport => "certificate:transport",
            Justification::AxiomAnalytic => "axiom:analytic",
        })
    }
}

/// Facts taken from analysis rather than computed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Axiom {
    /// The kernel of the page-1 map out of column 0 is three-dimensional.
    KernelD10Prime,
    /// A block `D2 * 1 + constant` is onto, by linear ODE existence in the
    /// coordinate where `D2` is a partial derivative.
    D43Surjective,
    /// The reduced page-2 map is onto; the last solvability step for the
    /// 2x2 system.
    SlashedCokernel,
}

impl Axiom {
    pub const ALL: [Axiom; 3] = [Axiom::KernelD10Prime, Axiom::D43Surjective, Axiom::SlashedCokernel];

    pub fn id(self) -> &'static str {
        match self {
            Axiom::KernelD10Prime => "ker-d10p-r3",
            Axiom::D43Surjective => "d43-ode-surjective",
            Axiom::SlashedCokernel => "coker-slashed-d3-solvable",
        }
    }

    pub fn statement(self) -> &'static str {
        match self {
            Axiom::KernelD10Prime => "ker D10′ ≃ ℝ³ as vector spaces",
            Axiom::D43Surjective => "D43 is onto: its leftmost 4x4 block is D2·1 + const, solvable by linear ODEs",
            Axiom::SlashedCokernel => "coker D̸3 = 0: the reduced 2x2 system is solvable",
        }
    }
}

impl Serialize for Axiom {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.id())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CellValue {
    Rank(usize),
    /// Zero by certificate or axiom rather than by computation.
    Zero,
    /// A module with no rank claim.
    Module(String),
}

impl CellValue {
    pub fn is_zero(&self) -> bool {
        matches!(self, CellValue::Rank(0) | CellValue::Zero)
    }

    pub fn rank(&self) -> Option<usize> {
        match self {
            CellValue::Rank(n) => Some(*n),
            CellValue::Zero => Some(0),
            CellValue::Module(_) => None,
        }
    }
}

impl fmt::Display for CellValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CellValue::Rank(n) => write!(f, "{n}"),
            CellValue::Zero => f.write_str("0*"),
            CellValue::Module(m) => f.write_str(m),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LedgerCell {
    pub value: CellValue,
    pub justification: Justification,
    pub axioms: Vec<Axiom>,
    pub reference: String,
}

impl LedgerCell {
    fn computed(n: usize, reference: impl Into<String>) -> Self {
        LedgerCell {
            value: CellValue::Rank(n),
            justification: Justification::Computed,
            axioms: Vec::new(),
            reference: reference.into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LedgerPage {
    pub r: usize,
    pub cells: BTreeMap<(usize, usize), LedgerCell>,
}

impl LedgerPage {
    pub fn cell(&self, p: usize, k: usize) -> Option<&LedgerCell> {
        self.cells.get(&(p, k))
    }

    pub fn is_nonzero(&self, p: usize, k: usize) -> bool {
        self.cell(p, k).is_some_and(|c| !c.value.is_zero())
    }

    /// Name of a cell on this page, used to describe subquotients.
    pub fn cell_name(&self, p: usize, k: usize) -> String {
        if self.r == 1 {
            format!("H{k}(D{p}{p})")
        } else {
            format!("E{}({p},{k})", self.r)
        }
    }
}

/// Serialized as one object per cell.
impl Serialize for LedgerPage {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Row<'a> {
            p: usize,
            k: usize,
            #[serde(skip_serializing_if = "Option::is_none")]
            rank: Option<usize>,
            #[serde(skip_serializing_if = "Option::is_none")]
            zero: Option<bool>,
            #[serde(skip_serializing_if = "Option::is_none")]
            module: Option<&'a str>,
            justification: Justification,
            #[serde(skip_serializing_if = "<[Axiom]>::is_empty")]
            axioms: &'a [Axiom],
            reference: &'a str,
        }
        let mut m = s.serialize_map(Some(2))?;
        m.serialize_entry("page", &self.r)?;
        let rows: Vec<Row> = self
            .cells
            .iter()
            .map(|(&(p, k), c)| Row {
                p,
                k,
                rank: match c.value {
                    CellValue::Rank(n) => Some(n),
                    _ => None,
                },
                zero: matches!(c.value, CellValue::Zero).then_some(true),
                module: match &c.value {
                    CellValue::Module(d) => Some(d),
                    _ => None,
                },
                justification: c.justification,
                axioms: &c.axioms,
                reference: &c.reference,
            })
            .collect();
        m.serialize_entry("cells", &rows)?;
        m.end()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PageLedger {
    pub case: Case,
    pub pages: Vec<LedgerPage>,
}

impl PageLedger {
    pub fn last(&self) -> &LedgerPage {
        self.pages.last().expect("ledger starts with page 0")
    }

    pub fn page(&self, r: usize) -> Option<&LedgerPage> {
        self.pages.iter().find(|p| p.r == r)
    }

    /// Every named axiom used in any cell.
    pub fn axioms(&self) -> BTreeSet<Axiom> {
        self.pages
            .iter()
            .flat_map(|p| p.cells.values())
            .flat_map(|c| c.axioms.iter().copied())
            .collect()
    }
}

/// What is known about one page differential.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MapFact {
    /// A scalar map of known rank.
    Rank(usize),
    Injective(Certificate),
    /// Onto, on the strength of an analytic axiom and possibly a
    /// certificate that reduces it to a standard fact.
    Surjective {
        certificate: Option<Certificate>,
        axiom: Axiom,
    },
    /// The kernel is known only analytically.
    Kernel { description: String, axiom: Axiom },
    /// No usable information.
    Opaque,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PageMap {
    pub from: (usize, usize),
    pub to: (usize, usize),
    pub label: String,
    pub fact: MapFact,
}

/// Pages 0 and 1: graded ranks, then the homology of the diagonal blocks
/// assembled column by column.
pub fn page0_homology(fx: &CaseFixture, pt: &ParamPoint) -> Result<PageLedger> {
    pt.ensure_valid()?;
    let mut e0 = BTreeMap::new();
    let mut e1 = BTreeMap::new();
    for p in 0..COLUMNS {
        let ranks = fx.basis.column_ranks(p);
        let mut h = [0usize; DEGREES];
        for b in Block::in_column(p) {
            for (k, d) in block_complex(fx, b, pt)?.homology_dims().into_iter().enumerate() {
                h[k] += d;
            }
        }
        for k in 0..DEGREES {
            e0.insert((p, k), LedgerCell::computed(ranks[k], "graded basis rank"));
            e1.insert((p, k), LedgerCell::computed(h[k], "homology of the diagonal blocks in this column"));
        }
    }
    Ok(PageLedger {
        case: fx.case,
        pages: vec![LedgerPage { r: 0, cells: e0 }, LedgerPage { r: 1, cells: e1 }],
    })
}

fn map_between(maps: &[PageMap], from: (usize, usize), to: (usize, usize)) -> Option<&PageMap> {
    maps.iter().find(|m| m.from == from && m.to == to)
}

/// Computes page `r + 1` from the last page `r` and its differentials.
/// Every differential between two nonzero cells must be supplied.
pub fn ledger_advance(ledger: &PageLedger, maps: &[PageMap]) -> Result<PageLedger> {
    let page = ledger.last();
    let r = page.r;
    if r == 0 {
        return Err(Error::LedgerIncomplete("page 1 comes from block homology, not from page maps".into()));
    }
    for m in maps {
        if m.to != (m.from.0 + r, m.from.1 + 1) {
            return Err(Error::DimensionMismatch(format!(
                "map {} from {:?} to {:?} is not a page-{r} differential",
                m.label, m.from, m.to
            )));
        }
    }
    let mut cells = BTreeMap::new();
    for (&(p, k), cell) in &page.cells {
        let incoming = if p >= r && k >= 1 && page.is_nonzero(p - r, k - 1) && !cell.value.is_zero() {
            let from = (p - r, k - 1);
            Some(map_between(maps, from, (p, k)).ok_or(Error::MissingMap { page: r, from, to: (p, k) })?)
        } else {
            None
        };
        let outgoing = if page.is_nonzero(p + r, k + 1) && !cell.value.is_zero() {
            let to = (p + r, k + 1);
            Some(map_between(maps, (p, k), to).ok_or(Error::MissingMap { page: r, from: (p, k), to })?)
        } else {
            None
        };
        let next = match (incoming, outgoing) {
            (None, None) => cell.clone(),
            (i, o) => advance_cell(page, p, k, cell, i, o),
        };
        cells.insert((p, k), next);
    }
    let mut out = ledger.clone();
    out.pages.push(LedgerPage { r: r + 1, cells });
    Ok(out)
}

fn advance_cell(page: &LedgerPage, p: usize, k: usize, cell: &LedgerCell, incoming: Option<&PageMap>, outgoing: Option<&PageMap>) -> LedgerCell {
    let rank_of = |m: Option<&PageMap>| match m.map(|m| &m.fact) {
        None => Some(0),
        Some(MapFact::Rank(n)) => Some(*n),
        _ => None,
    };
    if let (CellValue::Rank(n), Some(a), Some(b)) = (&cell.value, rank_of(incoming), rank_of(outgoing)) {
        return LedgerCell::computed(n - a - b, "scalar page differentials of known rank");
    }
    let in_fact = incoming.map(|m| &m.fact);
    let out_fact = outgoing.map(|m| &m.fact);
    match (in_fact, out_fact) {
        (None, Some(MapFact::Injective(_))) => {
            return LedgerCell {
                value: CellValue::Zero,
                justification: Justification::CertificateInjective,
                axioms: Vec::new(),
                reference: format!("{} is injective (isolated scalar units)", outgoing.unwrap().label),
            }
        }
        (Some(MapFact::Surjective { certificate, axiom }), None) => {
            let justification = match certificate {
                Some(Certificate::TransportSurjective { .. }) => Justification::CertificateTransport,
                Some(Certificate::InjectiveUnitRows { .. }) | None => Justification::AxiomAnalytic,
            };
            return LedgerCell {
                value: CellValue::Zero,
                justification,
                axioms: vec![*axiom],
                reference: format!("{} is onto: {}", incoming.unwrap().label, axiom.statement()),
            };
        }
        (None, Some(MapFact::Kernel { description, axiom })) => {
            return LedgerCell {
                value: CellValue::Module(description.clone()),
                justification: Justification::AxiomAnalytic,
                axioms: vec![*axiom],
                reference: format!("kernel of {}: {}", outgoing.unwrap().label, axiom.statement()),
            }
        }
        _ => {}
    }
    // anything else is a subquotient known by description only
    let base = match &cell.value {
        CellValue::Module(d) => d.clone(),
        _ => page.cell_name(p, k),
    };
    let value = match (incoming, outgoing) {
        (Some(i), Some(o)) => format!("ker {} / im {}", o.label, i.label),
        (Some(i), None) => format!("{base} / im {}", i.label),
        (None, Some(o)) => format!("ker {}", o.label),
        (None, None) => base,
    };
    LedgerCell {
        value: CellValue::Module(value),
        justification: Justification::AxiomAnalytic,
        axioms: Vec::new(),
        reference: "description only; no rank is claimed".into(),
    }
}

/// Whether some page-`r'` differential with `r' >= r` joins two nonzero
/// cells of `page`.
fn admits_differential(page: &LedgerPage, from_r: usize) -> Option<((usize, usize), (usize, usize))> {
    for (&(p, k), c) in &page.cells {
        if c.value.is_zero() {
            continue;
        }
        for s in from_r..COLUMNS {
            if page.is_nonzero(p + s, k + 1) {
                return Some(((p, k), (p + s, k + 1)));
            }
        }
    }
    None
}

/// Cells of page 1 that break the expected concentration: column 0 in
/// degrees 0 and 1, columns 1 and 2 in degree 1, column 3 in degree 2 and
/// column 4 in degree 3.
pub fn concentration_violations(ledger: &PageLedger) -> Vec<(usize, usize)> {
    let allowed = |p: usize, k: usize| matches!((p, k), (0, 0) | (0, 1) | (1, 1) | (2, 1) | (3, 2) | (4, 3));
    ledger
        .page(1)
        .map(|pg| {
            pg.cells
                .iter()
                .filter(|(&(p, k), c)| !allowed(p, k) && !c.value.is_zero())
                .map(|(&c, _)| c)
                .collect()
        })
        .unwrap_or_default()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EulerCheck {
    pub pages: (usize, usize),
    /// `None` for the total over all columns.
    pub column: Option<usize>,
    pub before: i64,
    pub after: i64,
}

impl EulerCheck {
    pub fn ok(&self) -> bool {
        self.before == self.after
    }
}

fn euler(page: &LedgerPage, column: Option<usize>) -> Option<i64> {
    let mut chi = 0i64;
    for (&(p, k), c) in &page.cells {
        if column.is_some_and(|q| q != p) {
            continue;
        }
        let n = c.value.rank()? as i64;
        chi += if k % 2 == 0 { n } else { -n };
    }
    Some(chi)
}

/// Euler characteristics across consecutive pages where every cell has a
/// rank. Going from page 0 to 1 the differential stays in its column, so
/// the check is per column there; later it is on the total.
pub fn euler_checks(ledger: &PageLedger) -> Vec<EulerCheck> {
    let mut out = Vec::new();
    for w in ledger.pages.windows(2) {
        let (a, b) = (&w[0], &w[1]);
        let columns: Vec<Option<usize>> = if a.r == 0 {
            (0..COLUMNS).map(Some).collect()
        } else {
            vec![None]
        };
        for c in columns {
            if let (Some(before), Some(after)) = (euler(a, c), euler(b, c)) {
                out.push(EulerCheck {
                    pages: (a.r, b.r),
                    column: c,
                    before,
                    after,
                });
            }
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ChainLink {
    pub page: usize,
    pub p: usize,
    pub k: usize,
    pub value: String,
    pub justification: Justification,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CohomologyClaim {
    pub degree: usize,
    /// `Some(0)` for a vanishing claim; `None` for a module given by
    /// description.
    pub rank: Option<usize>,
    pub description: String,
    /// Where each contributing cell was settled.
    pub chain: Vec<ChainLink>,
    pub axioms: Vec<Axiom>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub heuristic: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EinfSummary {
    pub last_page: usize,
    pub degrees: Vec<CohomologyClaim>,
    pub axioms: Vec<Axiom>,
}

impl EinfSummary {
    pub fn degree(&self, k: usize) -> &CohomologyClaim {
        &self.degrees[k]
    }
}

/// Reads off `Gr H^k` from the last page. Fails unless no further
/// differential can join two nonzero cells.
pub fn einf_summary(ledger: &PageLedger) -> Result<EinfSummary> {
    let last = ledger.last();
    if last.r < 2 {
        return Err(Error::LedgerIncomplete(format!("only pages up to {} are filled", last.r)));
    }
    if let Some((a, b)) = admits_differential(last, last.r) {
        return Err(Error::LedgerIncomplete(format!(
            "page {} still admits a differential from {a:?} to {b:?}",
            last.r
        )));
    }
    let mut degrees = Vec::new();
    for k in 0..DEGREES {
        let mut chain = Vec::new();
        let mut axioms = BTreeSet::new();
        let mut parts = Vec::new();
        let mut total = Some(0usize);
        for p in 0..COLUMNS {
            let Some(cell) = last.cell(p, k) else { continue };
            // first page on which the cell took its final value
            let settled = ledger
                .pages
                .iter()
                .find(|pg| pg.cell(p, k).is_some_and(|c| c.value == cell.value && c.justification == cell.justification))
                .map_or(last.r, |pg| pg.r);
            // a cell that is zero from page 0 on needs no justification
            if settled > 0 || !cell.value.is_zero() {
                chain.push(ChainLink {
                    page: settled,
                    p,
                    k,
                    value: cell.value.to_string(),
                    justification: cell.justification,
                });
            }
            axioms.extend(cell.axioms.iter().copied());
            if !cell.value.is_zero() {
                parts.push(match &cell.value {
                    CellValue::Rank(n) => format!("{} (rank {n})", ledger.pages[1].cell_name(p, k)),
                    v => v.to_string(),
                });
            }
            total = match (total, cell.value.rank()) {
                (Some(t), Some(n)) => Some(t + n),
                _ => None,
            };
        }
        let description = if parts.is_empty() {
            "0".to_string()
        } else {
            parts.join(" ⊕ ")
        };
        let heuristic = (k == 1 && total.is_none())
            .then(|| "informal count: ker D̸3 has rank 10 − 5 + 1 = 6, minus 3 for im D10′; not a computed rank".to_string());
        degrees.push(CohomologyClaim {
            degree: k,
            rank: total,
            description,
            chain,
            axioms: axioms.into_iter().collect(),
            heuristic,
        });
    }
    Ok(EinfSummary {
        last_page: last.r,
        axioms: ledger.axioms().into_iter().collect(),
        degrees,
    })
}

/// The page differentials of the operator complex. `d32` and `d43` carry
/// the certificates found for them, if any.
pub fn corpus_page_maps(page: usize, d32: Option<Certificate>, d43: Option<Certificate>) -> Vec<PageMap> {
    match page {
        1 => vec![
            PageMap {
                from: (0, 0),
                to: (1, 1),
                label: "D10′".into(),
                fact: MapFact::Kernel {
                    description: "ker D10′ ≃ ℝ³".into(),
                    axiom: Axiom::KernelD10Prime,
                },
            },
            PageMap {
                from: (2, 1),
                to: (3, 2),
                label: "D32".into(),
                fact: d32.map_or(MapFact::Opaque, MapFact::Injective),
            },
            PageMap {
                from: (3, 2),
                to: (4, 3),
                label: "D43".into(),
                fact: MapFact::Surjective {
                    certificate: d43,
                    axiom: Axiom::D43Surjective,
                },
            },
        ],
        2 => vec![PageMap {
            from: (1, 1),
            to: (3, 2),
            label: "D̸3".into(),
            fact: MapFact::Surjective {
                certificate: None,
                axiom: Axiom::SlashedCokernel,
            },
        }],
        _ => Vec::new(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::{bundled, MapName};
    use crate::reduce::{injectivity_certificate, transport_certificate};

    fn e1_table() -> BTreeMap<(usize, usize), usize> {
        [((0, 0), 3), ((0, 1), 1), ((1, 1), 10), ((2, 1), 2), ((3, 2), 10), ((4, 3), 4)].into()
    }

    fn full_ledger(case: Case) -> PageLedger {
        let fx = bundled(case);
        let pt = ParamPoint::reference(case);
        let sc = fx.structure_constants(&pt).unwrap();
        let d32 = fx.map_at(MapName::D32, &pt, &sc).unwrap();
        let d43 = fx.map_at(MapName::D43, &pt, &sc).unwrap();
        let l = page0_homology(&fx, &pt).unwrap();
        let l = ledger_advance(
            &l,
            &corpus_page_maps(1, injectivity_certificate(&d32).ok(), transport_certificate(&d43, 1, &[0, 1, 2, 3], &[0, 1, 2, 3]).ok()),
        )
        .unwrap();
        ledger_advance(&l, &corpus_page_maps(2, None, None)).unwrap()
    }

    #[test]
    fn first_page_ranks() {
        for case in [Case::Free, Case::Bounce] {
            let fx = bundled(case);
            let l = page0_homology(&fx, &ParamPoint::reference(case)).unwrap();
            let e1 = &l.pages[1];
            for p in 0..COLUMNS {
                for k in 0..DEGREES {
                    let want = e1_table().get(&(p, k)).copied().unwrap_or(0);
                    assert_eq!(e1.cell(p, k).unwrap().value, CellValue::Rank(want), "{case:?} ({p},{k})");
                }
            }
            assert!(concentration_violations(&l).is_empty());
            assert!(euler_checks(&l).iter().all(EulerCheck::ok));
            assert_eq!(euler_checks(&l).len(), COLUMNS);
        }
    }

    #[test]
    fn missing_map_is_reported() {
        let fx = bundled(Case::Free);
        let l = page0_homology(&fx, &ParamPoint::reference_free()).unwrap();
        let mut maps = corpus_page_maps(1, None, None);
        maps.remove(1);
        assert_eq!(
            ledger_advance(&l, &maps),
            Err(Error::MissingMap {
                page: 1,
                from: (2, 1),
                to: (3, 2)
            })
        );
    }

    #[test]
    fn second_page_claims() {
        let l = full_ledger(Case::Free);
        let e2 = l.page(2).unwrap();
        let j = |p, k| e2.cell(p, k).unwrap().justification;
        assert_eq!(e2.cell(2, 1).unwrap().value, CellValue::Zero);
        assert_eq!(j(2, 1), Justification::CertificateInjective);
        assert_eq!(e2.cell(4, 3).unwrap().value, CellValue::Zero);
        assert_eq!(j(4, 3), Justification::CertificateTransport);
        assert_eq!(j(0, 0), Justification::AxiomAnalytic);
        assert_eq!(e2.cell(0, 1).unwrap().value, CellValue::Rank(1));
        assert_eq!(j(0, 1), Justification::Computed);
        let e3 = l.page(3).unwrap();
        assert_eq!(e3.cell(3, 2).unwrap().value, CellValue::Zero);
        assert_eq!(e3.cell(1, 1).unwrap().value, CellValue::Module("ker D̸3".into()));
    }

    #[test]
    fn computed_ranks_are_never_downgraded() {
        let l = full_ledger(Case::Bounce);
        for w in l.pages.windows(2) {
            for (c, before) in &w[0].cells {
                let after = &w[1].cells[c];
                if before.justification == Justification::Computed && before.value.is_zero() {
                    assert_eq!((&after.value, after.justification), (&before.value, before.justification));
                }
            }
        }
    }

    #[test]
    fn vanishing_in_high_degrees() {
        for case in [Case::Free, Case::Bounce] {
            let s = einf_summary(&full_ledger(case)).unwrap();
            for k in 2..=4 {
                assert_eq!(s.degree(k).rank, Some(0), "{case:?} H{k}");
            }
            assert!(s.degree(4).axioms.is_empty());
            assert!(s.degree(4).chain.is_empty());
            assert_eq!(s.degree(2).axioms, vec![Axiom::SlashedCokernel]);
            assert_eq!(s.degree(3).axioms, vec![Axiom::D43Surjective]);
            assert_eq!(s.degree(0).axioms, vec![Axiom::KernelD10Prime]);
            assert_eq!(s.axioms, Axiom::ALL.to_vec());
            assert_eq!(s.degree(1).rank, None);
            assert!(s.degree(1).heuristic.is_some());
        }
    }

    #[test]
    fn summary_needs_a_stable_page() {
        let fx = bundled(Case::Free);
        let l = page0_homology(&fx, &ParamPoint::reference_free()).unwrap();
        assert!(matches!(einf_summary(&l), Err(Error::LedgerIncomplete(_))));
        let l = ledger_advance(&l, &corpus_page_maps(1, None, None)).unwrap();
        assert!(matches!(einf_summary(&l), Err(Error::LedgerIncomplete(_))));
    }
}
