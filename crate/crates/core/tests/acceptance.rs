//! Acceptance run: one line per criterion, nonzero exit if any fails.

use std::process::ExitCode;

use num_traits::Zero;
use specseq::contraction::{block_complex, fixture_contraction, representatives_match, verify_contraction};
use specseq::corpus::{bundled, basis_ranks, Block, CaseFixture, MapName, ALPHA_RANKS, BLOCK_HOMOLOGY, COLUMN_RANKS};
use specseq::error::Error;
use specseq::opalg::{OpMatrix, Operator, StructureConstants};
use specseq::params::{rat, sample_point, Case, ParamPoint};
use specseq::reduce::{
    extract_two_by_two, free_scale, injectivity_certificate, transport_certificate, unit_pivot_reduce, Certificate,
};
use specseq::run::{emit_report, run_case, Format, RunOptions};
use specseq::specseq::{
    brute_force_gr_homology, corpus_page_maps, einf_ranks, einf_summary, ledger_advance, page0_homology,
    random_filtered_complex, Axiom,
};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

const CASES: [Case; 2] = [Case::Free, Case::Bounce];

fn ensure(ok: bool, msg: impl Into<String>) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn e(err: Error) -> String {
    err.to_string()
}

/// Reference point plus three sampled ones.
fn points(case: Case) -> Vec<ParamPoint> {
    [0, 101, 202, 303].iter().map(|&s| sample_point(case, s).unwrap()).collect()
}

fn maps(fx: &CaseFixture, pt: &ParamPoint) -> Result<(StructureConstants, [OpMatrix; 4]), String> {
    let sc = fx.structure_constants(pt).map_err(e)?;
    let get = |m| fx.map_at(m, pt, &sc).map_err(e);
    let m = [get(MapName::D10p)?, get(MapName::D32)?, get(MapName::D43)?, get(MapName::DeltaSlashed)?];
    Ok((sc, m))
}

fn rank_tables() -> Outcome {
    for case in CASES {
        let t = basis_ranks(&bundled(case));
        for (a, n) in ALPHA_RANKS {
            ensure(t.alpha(a) == n, format!("{case:?}: rank of {a} is {}, expected {n}", t.alpha(a)))?;
        }
        ensure(t.total() == 72, format!("{case:?}: total {}", t.total()))?;
        ensure(t.by_column == COLUMN_RANKS, format!("{case:?}: column table {:?}", t.by_column))?;
    }
    Ok("per-tri-grading ranks sum to 72; column table matches".into())
}

fn block_differentials() -> Outcome {
    let mut n = 0;
    for case in CASES {
        let fx = bundled(case);
        for pt in points(case) {
            for b in Block::ALL {
                block_complex(&fx, b, &pt).map_err(|x| format!("{case:?} block {b}: {x}"))?;
                n += 1;
            }
        }
    }
    let bad = ParamPoint::free([rat(2, 7), rat(-3, 7), rat(-1, 7)], [rat(1, 1), rat(2, 1), rat(3, 1)]);
    let control = block_complex(&bundled(Case::Free), Block::parse("00").unwrap(), &bad);
    ensure(matches!(control, Err(Error::NotAComplex(_))), "negative control did not fail")?;
    Ok(format!("{n} block complexes square to zero; Kasner-violating control fails"))
}

fn zeroth_page() -> Outcome {
    let e1 = [[3, 1, 0, 0], [0, 10, 0, 0], [0, 2, 0, 0], [0, 0, 10, 0], [0, 0, 0, 4]];
    for case in CASES {
        let fx = bundled(case);
        let pt = ParamPoint::reference(case);
        for (name, want) in BLOCK_HOMOLOGY {
            let h = block_complex(&fx, Block::parse(name).unwrap(), &pt).map_err(e)?.homology_dims();
            ensure(h[..4] == want, format!("{case:?} block {name}: {:?}", &h[..4]))?;
        }
        let l = page0_homology(&fx, &pt).map_err(e)?;
        for (p, row) in e1.iter().enumerate() {
            for (k, &want) in row.iter().enumerate() {
                let got = l.pages[1].cell(p, k).and_then(|c| c.value.rank());
                ensure(got == Some(want), format!("{case:?} E1({p},{k}) = {got:?}"))?;
            }
        }
    }
    Ok("block and column homology tables match in both cases".into())
}

fn representatives() -> Outcome {
    let mut n = 0;
    for case in CASES {
        let fx = bundled(case);
        for pt in points(case) {
            for b in Block::ALL {
                let cx = block_complex(&fx, b, &pt).map_err(e)?;
                for k in 0..cx.len() {
                    let reps = fx.representatives_at(b, k, &pt).map_err(e)?;
                    ensure((&cx.d(k as isize) * &reps).is_zero(), format!("{case:?} {b}/{k}: not cycles"))?;
                    ensure(representatives_match(&cx, k, &reps).map_err(e)?, format!("{case:?} {b}/{k}: span differs"))?;
                    n += 1;
                }
            }
        }
    }
    Ok(format!("{n} representative sets are cycles spanning homology"))
}

fn contractions() -> Outcome {
    let mut n = 0;
    for case in CASES {
        let fx = bundled(case);
        for pt in points(case) {
            for b in Block::ALL {
                let (cx, c) = fixture_contraction(&fx, b, &pt).map_err(e)?;
                for check in verify_contraction(&c, &cx) {
                    ensure(check.ok, format!("{case:?} {b}: {} {:?}", check.identity, check.first_failure))?;
                }
                if b.name() == "11" {
                    ensure(c.h[2].shape() == (9, 7), format!("h11 degree 2 has shape {:?}", c.h[2].shape()))?;
                }
                n += 1;
            }
        }
    }
    Ok(format!("all seven identities hold for {n} block contractions; h11 (2→1) is 9x7"))
}

fn compositions() -> Outcome {
    let row = OpMatrix::from_rows(vec![vec![Operator::generator(1), Operator::generator(2)]]).unwrap();
    let mut n = 0;
    for case in CASES {
        let fx = bundled(case);
        for pt in points(case) {
            let (sc, [d10p, d32, d43, delta]) = maps(&fx, &pt)?;
            let zero = |m: Result<OpMatrix, Error>, what: &str| -> Result<(), String> {
                ensure(m.map_err(e)?.is_zero(), format!("{case:?}: {what} is nonzero"))
            };
            zero(d43.mul(&d32, &sc), "D43·D32")?;
            zero(d43.mul(&d32, &StructureConstants::abelian()), "D43·D32 without commutators")?;
            let red = unit_pivot_reduce(&d43, &[d32], &sc).map_err(e)?;
            zero(red.b.mul(&delta, &sc), "D̸43·δ̸")?;
            zero(delta.mul(&d10p, &sc), "δ̸·D10′")?;
            let t = extract_two_by_two(&delta, &red.b, &sc, &pt).map_err(e)?;
            ensure(t.residual == row, "residual row is not (D2 D3)")?;
            zero(t.residual.mul(&t.matrix, &sc), "(D2 D3)·2x2")?;
            n += 1;
        }
    }
    Ok(format!("four composition identities vanish at {n} case-points"))
}

fn reduction() -> Outcome {
    for case in CASES {
        let fx = bundled(case);
        let pt = ParamPoint::reference(case);
        let (sc, [_, d32, d43, delta]) = maps(&fx, &pt)?;
        let red = unit_pivot_reduce(&d43, &[d32], &sc).map_err(e)?;
        ensure(red.log.deleted_rows == [1, 2, 3], format!("{case:?}: rows {:?}", red.log.deleted_rows))?;
        ensure(red.log.deleted_columns == [2, 3, 5, 8, 10], format!("{case:?}: columns {:?}", red.log.deleted_columns))?;
        ensure(red.b.to_strings() == [["0", "D2", "0", "0", "D3"]], format!("{case:?}: slashed {}", red.b))?;
        extract_two_by_two(&delta, &red.b, &sc, &pt).map_err(e)?;
    }
    let fx = bundled(Case::Free);
    let mut n = 0;
    for seed in 0..25 {
        let pt = sample_point(Case::Free, seed).map_err(e)?;
        let (sc, [_, d32, d43, delta]) = maps(&fx, &pt)?;
        let red = unit_pivot_reduce(&d43, &[d32], &sc).map_err(e)?;
        let t = extract_two_by_two(&delta, &red.b, &sc, &pt).map_err(e)?;
        let want = free_scale(&pt);
        ensure(!want.is_zero() && t.scale() == Some(&want), format!("seed {seed}: scale {:?}", t.column_scales))?;
        n += 1;
    }
    Ok(format!("deletions {{1,2,3}} x {{2,3,5,8,10}}; 2x2 scale (g10+g20+g30)/(4 g11) nonzero at {n} free points"))
}

fn certificates() -> Outcome {
    for case in CASES {
        let fx = bundled(case);
        let pt = ParamPoint::reference(case);
        let (_, [d10p, d32, d43, _]) = maps(&fx, &pt)?;
        let inj = injectivity_certificate(&d32).map_err(|r| r.reason)?;
        ensure(
            matches!(&inj, Certificate::InjectiveUnitRows { witness_rows, .. } if witness_rows == &[2, 8]) && inj.recheck(&d32),
            format!("{case:?}: D32 witness {inj:?}"),
        )?;
        ensure(injectivity_certificate(&d10p).is_err(), "D10′ should be refused")?;
        let tr = transport_certificate(&d43, 1, &[0, 1, 2, 3], &[0, 1, 2, 3]).map_err(|r| r.reason)?;
        ensure(tr.recheck(&d43), "transport certificate does not recheck")?;
    }
    Ok("D32 injective with witness rows {2,8}; D43 block is D2·1 + const in both cases".into())
}

fn einf() -> Outcome {
    for case in CASES {
        let fx = bundled(case);
        let pt = ParamPoint::reference(case);
        let (_, [_, d32, d43, _]) = maps(&fx, &pt)?;
        let l = page0_homology(&fx, &pt).map_err(e)?;
        let l = ledger_advance(
            &l,
            &corpus_page_maps(
                1,
                injectivity_certificate(&d32).ok(),
                transport_certificate(&d43, 1, &[0, 1, 2, 3], &[0, 1, 2, 3]).ok(),
            ),
        )
        .map_err(e)?;
        let l = ledger_advance(&l, &corpus_page_maps(2, None, None)).map_err(e)?;
        let s = einf_summary(&l).map_err(e)?;
        for k in 2..=4 {
            ensure(s.degree(k).rank == Some(0), format!("{case:?}: H{k} = {}", s.degree(k).description))?;
        }
        ensure(s.degree(4).axioms.is_empty(), "H4 uses an axiom")?;
        ensure(s.axioms == Axiom::ALL, format!("{case:?}: axioms {:?}", s.axioms))?;
    }
    Ok("H2 = H3 = H4 = 0 in both cases; exactly three analytic axioms, none for H4".into())
}

fn synthetic() -> Outcome {
    let trials = 60;
    for seed in 0..trials {
        let s = random_filtered_complex(seed, 30, 5);
        let brute = brute_force_gr_homology(&s.complex);
        let t = einf_ranks(&s.complex).map_err(e)?;
        ensure(t == brute && brute == s.expected_einf, format!("seed {seed} disagrees"))?;
    }
    Ok(format!("{trials}/{trials} random filtered complexes agree with brute force"))
}

fn determinism() -> Outcome {
    for case in CASES {
        let opts = RunOptions {
            seed: 42,
            synthetic_trials: 4,
            ..RunOptions::default()
        };
        let a = emit_report(&run_case(case, &opts).map_err(|x| x.to_string())?, Format::Json);
        let b = emit_report(&run_case(case, &opts).map_err(|x| x.to_string())?, Format::Json);
        ensure(a == b, format!("{case:?}: reports differ"))?;
    }
    Ok("identical seeds give byte-identical JSON in both cases".into())
}

fn main() -> ExitCode {
    let criteria: [Criterion; 11] = [
        ("rank tables", rank_tables),
        ("block differentials", block_differentials),
        ("0th-page homology", zeroth_page),
        ("representative bases", representatives),
        ("contraction identities", contractions),
        ("operator compositions", compositions),
        ("reduction and 2x2 system", reduction),
        ("certificates", certificates),
        ("E_inf summary", einf),
        ("synthetic oracle", synthetic),
        ("determinism", determinism),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        match f() {
            Ok(msg) => println!("criterion {:>2} PASS  {name}: {msg}", i + 1),
            Err(msg) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name}: {msg}", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
