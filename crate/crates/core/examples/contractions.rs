//! Build the explicit contraction onto homology for every block and check
//! the seven identities, then do the same for a hand-made complex.

use specseq::contraction::{auto_contraction, fixture_contraction, verify_contraction, CochainComplex};
use specseq::corpus::{bundled, Block};
use specseq::linalg::QMatrix;
use specseq::params::{Case, ParamPoint};

fn main() -> Result<(), specseq::Error> {
    let fx = bundled(Case::Free);
    let pt = ParamPoint::reference(Case::Free);
    for b in Block::ALL {
        let (cx, c) = fixture_contraction(&fx, b, &pt)?;
        let ok = verify_contraction(&c, &cx).iter().all(|x| x.ok);
        let shapes: Vec<_> = c.h.iter().map(|h| h.shape()).collect();
        println!("block {b}: homology {:?} identities {} h shapes {shapes:?}", c.homology_dims(), if ok { "ok" } else { "FAIL" });
    }

    // 0 -> Q -> Q^2 -> Q -> 0 with H = (0, 0, 0)
    let cx = CochainComplex::new(
        vec![1, 2, 1],
        vec![QMatrix::from_i64(&[&[1], &[1]]), QMatrix::from_i64(&[&[1, -1]])],
    )?;
    let c = auto_contraction(&cx)?;
    println!("\nsmall complex: homology {:?}", c.homology_dims());
    for check in verify_contraction(&c, &cx) {
        println!("  {:<24} {}", check.identity, check.ok);
    }
    Ok(())
}
