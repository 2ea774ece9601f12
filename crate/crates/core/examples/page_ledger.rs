//! Walk the page ledger from the block homology to the limit page and print
//! how each cohomology degree is justified.

use specseq::corpus::{bundled, MapName};
use specseq::params::{Case, ParamPoint};
use specseq::reduce::{injectivity_certificate, transport_certificate};
use specseq::specseq::{corpus_page_maps, einf_summary, ledger_advance, page0_homology};

fn main() -> Result<(), specseq::Error> {
    let case = Case::Free;
    let fx = bundled(case);
    let pt = ParamPoint::reference(case);
    let sc = fx.structure_constants(&pt)?;
    let d32 = fx.map_at(MapName::D32, &pt, &sc)?;
    let d43 = fx.map_at(MapName::D43, &pt, &sc)?;

    let mut ledger = page0_homology(&fx, &pt)?;
    let certs = (injectivity_certificate(&d32).ok(), transport_certificate(&d43, 1, &[0, 1, 2, 3], &[0, 1, 2, 3]).ok());
    ledger = ledger_advance(&ledger, &corpus_page_maps(1, certs.0, certs.1))?;
    ledger = ledger_advance(&ledger, &corpus_page_maps(2, None, None))?;

    for page in &ledger.pages {
        println!("page {}", page.r);
        for ((p, k), cell) in &page.cells {
            if !cell.value.is_zero() {
                println!("  ({p},{k}) {} [{}]", cell.value, cell.justification);
            }
        }
    }

    let s = einf_summary(&ledger)?;
    println!("\nlimit page E{}", s.last_page);
    for c in &s.degrees {
        let axioms: Vec<_> = c.axioms.iter().map(|a| a.id()).collect();
        println!("  H{}: {}  axioms {axioms:?}", c.degree, c.description);
    }
    Ok(())
}
