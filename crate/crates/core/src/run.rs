//! End-to-end verification of one case, and its JSON and text reports.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

use crate::contraction::{block_complex, fixture_contraction, representatives_match, verify_contraction, Contraction, IdentityCheck};
use crate::corpus::{
    bundled, check_fixture_shapes, load_fixture, basis_ranks, Block, CaseFixture, Diagnostic, MapName, RankTable,
    BLOCK_HOMOLOGY, COLUMNS, DEGREES, E1_RANKS,
};
use crate::error::Error;
use crate::opalg::{OpMatrix, StructureConstants};
use crate::params::{format_rational, sample_point, Case, ParamPoint};
use crate::reduce::{
    extract_two_by_two, free_scale, injectivity_certificate, transport_certificate, transport_constants, Certificate,
    DeletionLog, Refusal, TwoByTwo,
};
use crate::specseq::{
    brute_force_gr_homology, concentration_violations, corpus_page_maps, einf_ranks, einf_summary, euler_checks,
    ledger_advance, page0_homology, random_filtered_complex, Axiom, CellValue, EinfSummary, EulerCheck, LedgerPage,
};

pub const REPORT_SCHEMA: &str = "specseq-report/1";

/// A run stopped early; `section` names the stage that failed.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("{section}: {source}")]
pub struct RunError {
    pub section: &'static str,
    pub source: Error,
}

fn at(section: &'static str) -> impl Fn(Error) -> RunError {
    move |source| RunError { section, source }
}

#[derive(Debug, Clone)]
pub struct RunOptions {
    /// Drives the primary point (unless `params` is set), the extra points
    /// and the synthetic trials.
    pub seed: u64,
    pub params: Option<ParamPoint>,
    /// Label and contents of a fixture replacing the bundled one.
    pub fixture: Option<(String, Vec<u8>)>,
    pub extra_points: usize,
    pub synthetic_trials: usize,
}

impl Default for RunOptions {
    fn default() -> Self {
        RunOptions {
            seed: 0,
            params: None,
            fixture: None,
            extra_points: 3,
            synthetic_trials: 0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
}

#[derive(Debug, Clone, Serialize)]
pub struct PointRecord {
    pub role: &'static str,
    pub seed: Option<u64>,
    pub point: ParamPoint,
}

#[derive(Debug, Clone, Serialize)]
pub struct FixtureRecord {
    pub source: String,
    pub checksum: String,
    pub structure_constants: String,
    pub structure_constants_inferred: bool,
}

/// One check at one point (an index into `points`).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckRecord {
    pub check: String,
    pub subject: String,
    pub point: usize,
    pub ok: bool,
    #[serde(skip_serializing_if = "String::is_empty")]
    pub detail: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct ContractionRecord {
    pub homology: Vec<usize>,
    pub homotopy_shapes: Vec<[usize; 2]>,
    /// Identities at the primary point.
    pub identities: Vec<IdentityCheck>,
    /// Number of points at which all identities held.
    pub points_passed: usize,
    pub contraction: Contraction,
}

#[derive(Debug, Clone, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Outcome {
    Found { certificate: Certificate, rechecked: bool },
    Refused(Refusal),
}

impl Outcome {
    fn new(r: Result<Certificate, Refusal>, m: &OpMatrix) -> Self {
        match r {
            Ok(c) => Outcome::Found {
                rechecked: c.recheck(m),
                certificate: c,
            },
            Err(e) => Outcome::Refused(e),
        }
    }

    pub fn certificate(&self) -> Option<&Certificate> {
        match self {
            Outcome::Found { certificate, rechecked: true } => Some(certificate),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ReductionRecord {
    pub log: DeletionLog,
    pub b_slashed: Vec<Vec<String>>,
    pub two_by_two: TwoByTwo,
    pub certificates: BTreeMap<&'static str, Outcome>,
    pub transport_constants: Vec<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct AxiomRecord {
    pub id: &'static str,
    pub statement: &'static str,
}

#[derive(Debug, Clone, Serialize)]
pub struct SyntheticRecord {
    pub trials: usize,
    pub agreed: usize,
    pub total_rank: usize,
    pub disagreements: Vec<u64>,
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub schema: &'static str,
    pub case: Case,
    pub seed: u64,
    pub points: Vec<PointRecord>,
    pub fixture: FixtureRecord,
    pub shapes: Vec<Diagnostic>,
    pub rank_table: RankTable,
    pub block_homology: BTreeMap<String, Vec<usize>>,
    pub first_page: Vec<Vec<usize>>,
    pub checks: Vec<CheckRecord>,
    pub contractions: BTreeMap<Case, BTreeMap<String, ContractionRecord>>,
    pub reduction: ReductionRecord,
    pub pages: Vec<LedgerPage>,
    pub euler: Vec<EulerCheck>,
    pub einf: BTreeMap<String, Value>,
    pub einf_chains: EinfSummary,
    pub axioms: Vec<AxiomRecord>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub synthetic: Option<SyntheticRecord>,
    pub failures: Vec<String>,
    pub verdict: Verdict,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }

    pub fn checks_named(&self, check: &str) -> impl Iterator<Item = &CheckRecord> {
        let check = check.to_string();
        self.checks.iter().filter(move |c| c.check == check)
    }
}

struct Checks(Vec<CheckRecord>);

impl Checks {
    fn push(&mut self, check: &str, subject: impl Into<String>, point: usize, ok: bool, detail: impl Into<String>) {
        self.0.push(CheckRecord {
            check: check.into(),
            subject: subject.into(),
            point,
            ok,
            detail: detail.into(),
        });
    }
}

fn derived_seeds(seed: u64, stream: u64, n: usize) -> Vec<u64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    (0..n).map(|_| rng.gen_range(1..u64::MAX)).collect()
}

struct CaseMaps {
    sc: StructureConstants,
    d10p: OpMatrix,
    d32: OpMatrix,
    d43: OpMatrix,
    delta: OpMatrix,
}

fn case_maps(fx: &CaseFixture, pt: &ParamPoint) -> crate::error::Result<CaseMaps> {
    let sc = fx.structure_constants(pt)?;
    Ok(CaseMaps {
        d10p: fx.map_at(MapName::D10p, pt, &sc)?,
        d32: fx.map_at(MapName::D32, pt, &sc)?,
        d43: fx.map_at(MapName::D43, pt, &sc)?,
        delta: fx.map_at(MapName::DeltaSlashed, pt, &sc)?,
        sc,
    })
}

const D43_BLOCK: [usize; 4] = [0, 1, 2, 3];

/// Per-point algebra: block differentials, representatives, contractions,
/// compositions and the reduction chain.
fn point_checks(
    fx: &CaseFixture,
    pt: &ParamPoint,
    idx: usize,
    checks: &mut Checks,
    contractions: &mut BTreeMap<String, ContractionRecord>,
) -> Result<(DeletionLog, TwoByTwo, CaseMaps, OpMatrix), RunError> {
    for b in Block::ALL {
        let name = b.name();
        match block_complex(fx, b, pt) {
            Ok(_) => checks.push("block-differential", &name, idx, true, ""),
            Err(Error::NotAComplex(m)) => checks.push("block-differential", &name, idx, false, m),
            Err(e) => return Err(at("contractions")(e)),
        }
        let (cx, c) = fixture_contraction(fx, b, pt).map_err(at("contractions"))?;
        for k in 0..cx.len() {
            let reps = fx.representatives_at(b, k, pt).map_err(at("contractions"))?;
            let ok = representatives_match(&cx, k, &reps).map_err(at("contractions"))?;
            checks.push("representatives", format!("{name} degree {k}"), idx, ok, "");
        }
        let ids = verify_contraction(&c, &cx);
        let all = ids.iter().all(|i| i.ok);
        let failed: Vec<String> = ids.iter().filter(|i| !i.ok).map(|i| i.identity.to_string()).collect();
        checks.push("contraction", &name, idx, all, failed.join(", "));
        let rec = contractions.entry(name).or_insert_with(|| ContractionRecord {
            homology: c.homology_dims(),
            homotopy_shapes: c.h.iter().map(|h| [h.rows(), h.cols()]).collect(),
            identities: ids.clone(),
            points_passed: 0,
            contraction: c.clone(),
        });
        rec.points_passed += usize::from(all);
    }

    let m = case_maps(fx, pt).map_err(at("compositions"))?;
    let mut zero = |name: &str, r: crate::error::Result<OpMatrix>| -> Result<(), RunError> {
        let p = r.map_err(at("compositions"))?;
        let ok = p.is_zero();
        checks.push("composition", name, idx, ok, if ok { String::new() } else { p.to_string() });
        Ok(())
    };
    zero("D43·D32 = 0", m.d43.mul(&m.d32, &m.sc))?;
    zero("D43·D32 = 0 without commutators", m.d43.mul(&m.d32, &StructureConstants::abelian()))?;
    zero("δ̸·D10′ = 0", m.delta.mul(&m.d10p, &m.sc))?;

    let red = crate::reduce::unit_pivot_reduce(&m.d43, std::slice::from_ref(&m.d32), &m.sc).map_err(at("reduction"))?;
    zero("D̸43·δ̸ = 0", red.b.mul(&m.delta, &m.sc))?;
    let two = extract_two_by_two(&m.delta, &red.b, &m.sc, pt).map_err(at("reduction"))?;
    zero("(D2 D3)·2x2 = 0", two.residual.mul(&two.matrix, &m.sc))?;
    let scales_ok = two.column_scales.iter().all(|s| !num_traits::Zero::is_zero(s));
    let detail: Vec<String> = two.column_scales.iter().map(format_rational).collect();
    checks.push("two-by-two-scale", "nonzero", idx, scales_ok, detail.join(", "));
    if fx.case == Case::Free {
        let want = free_scale(pt);
        checks.push(
            "two-by-two-scale",
            "(g10+g20+g30)/(4 g11)",
            idx,
            two.scale() == Some(&want),
            format_rational(&want),
        );
    }
    let d32 = injectivity_certificate(&m.d32);
    checks.push("certificate", "D32 injective", idx, d32.is_ok(), "");
    let d43 = transport_certificate(&m.d43, 1, &D43_BLOCK, &D43_BLOCK);
    checks.push("certificate", "D43 transport", idx, d43.is_ok(), "");
    let b = red.b.clone();
    Ok((red.log, two, m, b))
}

/// Runs every stage for one case. Failed checks make the verdict fail;
/// errors abort the run.
pub fn run_case(case: Case, options: &RunOptions) -> Result<Report, RunError> {
    // validate
    let primary = match &options.params {
        Some(p) => {
            if p.case != case {
                return Err(RunError {
                    section: "validate",
                    source: Error::InvalidPoint(vec![format!("point is for the {} case", p.case.name())]),
                });
            }
            p.clone()
        }
        None => sample_point(case, options.seed).map_err(at("validate"))?,
    };
    primary.ensure_valid().map_err(at("validate"))?;
    let mut points = vec![PointRecord {
        role: "primary",
        seed: options.params.is_none().then_some(options.seed),
        point: primary,
    }];
    for s in derived_seeds(options.seed, 1, options.extra_points) {
        let pt = sample_point(case, s).map_err(at("validate"))?;
        pt.ensure_valid().map_err(at("validate"))?;
        points.push(PointRecord {
            role: "extra",
            seed: Some(s),
            point: pt,
        });
    }

    // fixture
    let (source, fx) = match &options.fixture {
        Some((label, bytes)) => (label.clone(), load_fixture(case, bytes).map_err(at("fixture"))?),
        None => ("bundled".to_string(), bundled(case)),
    };
    let fixture = FixtureRecord {
        source,
        checksum: fx.checksum(),
        structure_constants: fx.structure.describe(),
        structure_constants_inferred: fx.structure.inferred,
    };

    let mut failures = Vec::new();
    let shapes = check_fixture_shapes(&fx);
    failures.extend(shapes.iter().filter(|d| !d.ok).map(|d| format!("shapes: {} {}", d.check, d.subject)));
    let rank_table = basis_ranks(&fx);

    // page 0
    let pt0 = &points[0].point;
    let mut checks = Checks(Vec::new());
    let mut block_homology = BTreeMap::new();
    for (name, want) in BLOCK_HOMOLOGY {
        let b = Block::parse(name).expect("known block");
        let h = block_complex(&fx, b, pt0).map_err(at("page0"))?.homology_dims();
        checks.push("block-homology", name, 0, h[..4] == want, format!("{:?}", &h[..4]));
        block_homology.insert(name.to_string(), h);
    }
    let ledger = page0_homology(&fx, pt0).map_err(at("page0"))?;
    let first_page: Vec<Vec<usize>> = (0..COLUMNS)
        .map(|p| {
            (0..DEGREES)
                .map(|k| ledger.pages[1].cell(p, k).and_then(|c| c.value.rank()).unwrap_or(0))
                .collect()
        })
        .collect();
    let e1_ok = first_page.iter().zip(E1_RANKS).all(|(a, b)| a[..] == b[..]);
    checks.push("first-page", "ranks by column", 0, e1_ok, "");
    let conc = concentration_violations(&ledger);
    checks.push("first-page", "concentration", 0, conc.is_empty(), format!("{conc:?}"));

    // contractions, compositions and reduction at every point
    let mut contractions = BTreeMap::new();
    let mut primary_out: Option<(DeletionLog, TwoByTwo, CaseMaps, OpMatrix)> = None;
    for (idx, rec) in points.iter().enumerate() {
        let (log, two, maps, b) = point_checks(&fx, &rec.point, idx, &mut checks, &mut contractions)?;
        match &primary_out {
            None => primary_out = Some((log, two, maps, b)),
            Some((first, ..)) => checks.push("reduction-replay", "deletion log", idx, &log == first, ""),
        }
    }
    let (log, two_by_two, maps, b_slashed) = primary_out.expect("primary point");
    let expected_rows = log.deleted_rows == [1, 2, 3];
    let expected_cols = log.deleted_columns == [2, 3, 5, 8, 10];
    checks.push("reduction", "deleted rows {1,2,3}", 0, expected_rows, format!("{:?}", log.deleted_rows));
    checks.push("reduction", "deleted columns {2,3,5,8,10}", 0, expected_cols, format!("{:?}", log.deleted_columns));
    let b_ok = b_slashed.to_strings() == [["0", "D2", "0", "0", "D3"]];
    checks.push("reduction", "slashed D43 = (0 D2 0 0 D3)", 0, b_ok, b_slashed.to_string().trim().to_string());

    let mut certificates = BTreeMap::new();
    certificates.insert("D32 injective", Outcome::new(injectivity_certificate(&maps.d32), &maps.d32));
    certificates.insert("D10′ injective", Outcome::new(injectivity_certificate(&maps.d10p), &maps.d10p));
    certificates.insert(
        "D43 transport",
        Outcome::new(transport_certificate(&maps.d43, 1, &D43_BLOCK, &D43_BLOCK), &maps.d43),
    );
    let witness_ok = matches!(
        certificates["D32 injective"].certificate(),
        Some(Certificate::InjectiveUnitRows { witness_rows, .. }) if witness_rows == &[2, 8]
    );
    checks.push("certificate", "D32 witness rows {2,8}", 0, witness_ok, "");
    let transport_constants = certificates["D43 transport"]
        .certificate()
        .map(|c| transport_constants(c).iter().map(format_rational).collect())
        .unwrap_or_default();

    // ledger
    let ledger = ledger_advance(
        &ledger,
        &corpus_page_maps(
            1,
            certificates["D32 injective"].certificate().cloned(),
            certificates["D43 transport"].certificate().cloned(),
        ),
    )
    .map_err(at("ledger"))?;
    let ledger = ledger_advance(&ledger, &corpus_page_maps(2, None, None)).map_err(at("ledger"))?;
    let euler = euler_checks(&ledger);
    for e in &euler {
        let subject = match e.column {
            Some(p) => format!("pages {}→{}, column {p}", e.pages.0, e.pages.1),
            None => format!("pages {}→{}, total", e.pages.0, e.pages.1),
        };
        checks.push("euler", subject, 0, e.ok(), format!("{} vs {}", e.before, e.after));
    }

    // E_inf
    let summary = einf_summary(&ledger).map_err(at("einf"))?;
    let mut einf = BTreeMap::new();
    for c in &summary.degrees {
        let v = match c.rank {
            Some(n) => json!({ "rank": n }),
            None => json!({ "module": c.description }),
        };
        einf.insert(format!("H{}", c.degree), v);
    }
    for k in 2..DEGREES {
        checks.push("einf", format!("H{k} = 0"), 0, summary.degree(k).rank == Some(0), "");
    }
    checks.push("einf", "H4 without axioms", 0, summary.degree(4).axioms.is_empty(), "");
    let axioms: Vec<AxiomRecord> = summary
        .axioms
        .iter()
        .map(|a| AxiomRecord {
            id: a.id(),
            statement: a.statement(),
        })
        .collect();
    checks.push("einf", "axiom inventory", 0, summary.axioms == Axiom::ALL, "");

    // synthetic oracle
    let synthetic = (options.synthetic_trials > 0).then(|| {
        let mut rec = SyntheticRecord {
            trials: options.synthetic_trials,
            agreed: 0,
            total_rank: 0,
            disagreements: Vec::new(),
        };
        for s in derived_seeds(options.seed, 2, options.synthetic_trials) {
            let sc = random_filtered_complex(s, 30, 5);
            rec.total_rank += sc.complex.len();
            let brute = brute_force_gr_homology(&sc.complex);
            let agree = einf_ranks(&sc.complex).is_ok_and(|t| t == brute) && brute == sc.expected_einf;
            if agree {
                rec.agreed += 1;
            } else {
                rec.disagreements.push(s);
            }
        }
        rec
    });
    if let Some(s) = &synthetic {
        checks.push("synthetic", "transfer = brute force", 0, s.agreed == s.trials, format!("{}/{}", s.agreed, s.trials));
    }

    failures.extend(
        checks
            .0
            .iter()
            .filter(|c| !c.ok)
            .map(|c| format!("{}: {} at point {}", c.check, c.subject, c.point)),
    );
    let verdict = if failures.is_empty() { Verdict::Pass } else { Verdict::Fail };
    Ok(Report {
        schema: REPORT_SCHEMA,
        case,
        seed: options.seed,
        points,
        fixture,
        shapes,
        rank_table,
        block_homology,
        first_page,
        checks: checks.0,
        contractions: BTreeMap::from([(case, contractions)]),
        reduction: ReductionRecord {
            log,
            b_slashed: b_slashed.to_strings(),
            two_by_two,
            certificates,
            transport_constants,
        },
        pages: ledger.pages,
        euler,
        einf,
        einf_chains: summary,
        axioms,
        synthetic,
        failures,
        verdict,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Json,
    Text,
}

impl std::str::FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "json" => Ok(Format::Json),
            "text" => Ok(Format::Text),
            other => Err(format!("unknown format `{other}`")),
        }
    }
}

pub fn emit_report(r: &Report, format: Format) -> String {
    match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(r).expect("report serializes");
            s.push('\n');
            s
        }
        Format::Text => render_text(r),
    }
}

fn cell_marker(v: &CellValue, j: crate::specseq::Justification) -> String {
    use crate::specseq::Justification as J;
    let mark = match j {
        J::Computed => "",
        J::CertificateInjective => " [inj]",
        J::CertificateTransport => " [tr]",
        J::AxiomAnalytic => " [ax]",
    };
    match v {
        CellValue::Rank(n) => format!("{n}{mark}"),
        CellValue::Zero => format!("0{mark}"),
        CellValue::Module(_) => format!("M{mark}"),
    }
}

fn render_text(r: &Report) -> String {
    let mut o = String::new();
    let _ = writeln!(o, "case {}   verdict {}", r.case.name(), if r.passed() { "PASS" } else { "FAIL" });
    for p in &r.points {
        let pt = &p.point;
        let g1 = format!(
            "g1 = ({}, {}, {})",
            format_rational(&pt.g11),
            format_rational(&pt.g21),
            format_rational(&pt.g31)
        );
        let _ = match r.case {
            Case::Free => writeln!(
                o,
                "{:<8} g0 = ({}, {}, {})  {g1}",
                p.role,
                format_rational(&pt.g10),
                format_rational(&pt.g20),
                format_rational(&pt.g30)
            ),
            Case::Bounce => writeln!(o, "{:<8} u = {}  {g1}", p.role, format_rational(&pt.u)),
        };
    }
    let _ = writeln!(o, "fixture {} sha256 {}", r.fixture.source, r.fixture.checksum);
    let _ = writeln!(
        o,
        "brackets {}{}",
        r.fixture.structure_constants,
        if r.fixture.structure_constants_inferred { " (inferred)" } else { "" }
    );

    let _ = writeln!(o, "\nranks by tri-grading (total {})", r.rank_table.total());
    let row: Vec<String> = r.rank_table.by_alpha.iter().map(|(a, n)| format!("{a}:{n}")).collect();
    let _ = writeln!(o, "  {}", row.join("  "));

    let table = |o: &mut String, title: &str, head: char, rows: Vec<(String, Vec<String>)>| {
        let _ = writeln!(o, "\n{title}");
        let _ = write!(o, "  {:<10}", "");
        for k in 0..4 {
            let _ = write!(o, "{:>5}", format!("{head}{k}"));
        }
        let _ = writeln!(o);
        for (name, vals) in rows {
            let _ = write!(o, "  {name:<10}");
            for v in vals.iter().take(4) {
                let _ = write!(o, "{v:>5}");
            }
            let _ = writeln!(o);
        }
    };
    let graded: Vec<(String, Vec<String>)> = (0..COLUMNS)
        .map(|p| {
            let ranks: Vec<String> = (0..4)
                .map(|k| r.pages[0].cell(p, k).map_or("0".into(), |c| c.value.to_string()))
                .collect();
            (format!("C(p={p})"), ranks)
        })
        .collect();
    table(&mut o, "graded ranks by column", 'C', graded);
    let blocks: Vec<(String, Vec<String>)> = BLOCK_HOMOLOGY
        .iter()
        .map(|(b, _)| {
            let h = &r.block_homology[*b];
            (format!("block {b}"), h.iter().map(|x| x.to_string()).collect())
        })
        .collect();
    table(&mut o, "homology of the 0th page, by block", 'H', blocks);
    let cols: Vec<(String, Vec<String>)> = r
        .first_page
        .iter()
        .enumerate()
        .map(|(p, ks)| (format!("D{p}{p}"), ks.iter().map(|x| x.to_string()).collect()))
        .collect();
    table(&mut o, "homology of the 0th page, by column", 'H', cols);

    let _ = writeln!(o, "\nchecks");
    let mut by: BTreeMap<&str, (usize, usize)> = BTreeMap::new();
    for c in &r.checks {
        let e = by.entry(&c.check).or_default();
        e.0 += usize::from(c.ok);
        e.1 += 1;
    }
    for (name, (ok, n)) in by {
        let _ = writeln!(o, "  {name:<22}{ok:>4}/{n:<4}{}", if ok == n { "" } else { "  FAILED" });
    }

    let red = &r.reduction;
    let _ = writeln!(o, "\nreduction");
    let _ = writeln!(o, "  deleted rows {:?}, columns {:?}", red.log.deleted_rows, red.log.deleted_columns);
    let _ = writeln!(o, "  slashed D43 = ({})", red.b_slashed[0].join(" "));
    let _ = writeln!(o, "  2x2 system, column scales {:?}", red.two_by_two.column_scales.iter().map(format_rational).collect::<Vec<_>>());
    for row in red.two_by_two.matrix.to_strings() {
        let _ = writeln!(o, "    [{}]", row.join(", "));
    }
    for (name, out) in &red.certificates {
        let s = match out {
            Outcome::Found { certificate, rechecked } => format!("found ({}), rechecked {rechecked}", certificate.kind()),
            Outcome::Refused(e) => format!("refused: {}", e.reason),
        };
        let _ = writeln!(o, "  {name}: {s}");
    }

    for page in &r.pages {
        let _ = writeln!(o, "\npage {}", page.r);
        let _ = writeln!(o, "  {:<6}{:>10}{:>10}{:>10}{:>10}", "", "k=0", "k=1", "k=2", "k=3");
        for p in 0..COLUMNS {
            let _ = write!(o, "  p={p:<4}");
            for k in 0..4 {
                let s = page.cell(p, k).map_or("0".into(), |c| cell_marker(&c.value, c.justification));
                let _ = write!(o, "{s:>10}");
            }
            let _ = writeln!(o);
        }
        for (&(p, k), c) in &page.cells {
            if let CellValue::Module(d) = &c.value {
                let _ = writeln!(o, "  M at ({p},{k}) = {d}");
            }
        }
    }

    let _ = writeln!(o, "\nE_inf = E_{}", r.einf_chains.last_page);
    for c in &r.einf_chains.degrees {
        let ax: Vec<&str> = c.axioms.iter().map(|a| a.id()).collect();
        let _ = writeln!(
            o,
            "  H{} = {}{}",
            c.degree,
            c.description,
            if ax.is_empty() { String::new() } else { format!("   axioms: {}", ax.join(", ")) }
        );
        if let Some(h) = &c.heuristic {
            let _ = writeln!(o, "       {h}");
        }
    }
    let _ = writeln!(o, "\naxioms used");
    for a in &r.axioms {
        let _ = writeln!(o, "  {}: {}", a.id, a.statement);
    }
    if let Some(s) = &r.synthetic {
        let _ = writeln!(o, "\nsynthetic transfer vs brute force: {}/{} agree", s.agreed, s.trials);
    }
    if !r.failures.is_empty() {
        let _ = writeln!(o, "\nfailures");
        for f in &r.failures {
            let _ = writeln!(o, "  {f}");
        }
    }
    o
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::params::rat;

    fn quick() -> RunOptions {
        RunOptions {
            extra_points: 1,
            ..RunOptions::default()
        }
    }

    #[test]
    fn free_passes() {
        let r = run_case(Case::Free, &quick()).unwrap();
        assert!(r.passed(), "{:?}", r.failures);
        assert_eq!(r.einf["H2"], json!({ "rank": 0 }));
        assert_eq!(r.axioms.len(), 3);
    }

    #[test]
    fn bounce_passes() {
        let r = run_case(Case::Bounce, &quick()).unwrap();
        assert!(r.passed(), "{:?}", r.failures);
    }

    #[test]
    fn kasner_violation_aborts_in_validate() {
        let bad = ParamPoint::free([rat(2, 7), rat(-3, 7), rat(-1, 7)], [rat(1, 1), rat(2, 1), rat(3, 1)]);
        let opts = RunOptions {
            params: Some(bad),
            ..quick()
        };
        let e = run_case(Case::Free, &opts).unwrap_err();
        assert_eq!(e.section, "validate");
        assert!(e.to_string().contains("Kasner"), "{e}");
    }

    #[test]
    fn reports_are_deterministic() {
        let opts = RunOptions {
            seed: 11,
            synthetic_trials: 3,
            ..quick()
        };
        let a = emit_report(&run_case(Case::Free, &opts).unwrap(), Format::Json);
        let b = emit_report(&run_case(Case::Free, &opts).unwrap(), Format::Json);
        assert_eq!(a, b);
        let t = emit_report(&run_case(Case::Free, &opts).unwrap(), Format::Text);
        assert!(t.contains("D11"));
    }
}
