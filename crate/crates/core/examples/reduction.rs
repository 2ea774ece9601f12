//! Unit-pivot reduction of the degree-3 map, certificates for the page-two
//! maps, and the residual 2x2 system.

use specseq::corpus::{bundled, MapName};
use specseq::params::{Case, ParamPoint};
use specseq::reduce::{extract_two_by_two, injectivity_certificate, transport_certificate, unit_pivot_reduce};

fn main() -> Result<(), specseq::Error> {
    for case in [Case::Free, Case::Bounce] {
        let fx = bundled(case);
        let pt = ParamPoint::reference(case);
        let sc = fx.structure_constants(&pt)?;
        let d10p = fx.map_at(MapName::D10p, &pt, &sc)?;
        let d32 = fx.map_at(MapName::D32, &pt, &sc)?;
        let d43 = fx.map_at(MapName::D43, &pt, &sc)?;
        let delta = fx.map_at(MapName::DeltaSlashed, &pt, &sc)?;

        println!("== {case}");
        let red = unit_pivot_reduce(&d43, std::slice::from_ref(&d32), &sc)?;
        for m in &red.log.moves {
            println!("  {m:?}");
        }
        println!("  deleted rows {:?} columns {:?}", red.log.deleted_rows, red.log.deleted_columns);
        println!("  reduced map: {}", red.b);

        let t = extract_two_by_two(&delta, &red.b, &sc, &pt)?;
        println!("  2x2 block:\n{}", t.matrix);
        println!("  column scales {:?}", t.column_scales.iter().map(|s| s.to_string()).collect::<Vec<_>>());

        match injectivity_certificate(&d32) {
            Ok(c) => println!("  D32: {c:?}"),
            Err(r) => println!("  D32 refused: {}", r.reason),
        }
        match injectivity_certificate(&d10p) {
            Ok(c) => println!("  D10': {c:?}"),
            Err(r) => println!("  D10' refused: {}", r.reason),
        }
        match transport_certificate(&d43, 1, &[0, 1, 2, 3], &[0, 1, 2, 3]) {
            Ok(c) => println!("  D43: {c:?}"),
            Err(r) => println!("  D43 refused: {}", r.reason),
        }
    }
    Ok(())
}
