//! Rank table of the bundled basis and the homology of each block complex.

use specseq::contraction::block_complex;
use specseq::corpus::{bundled, basis_ranks, Block};
use specseq::params::{Case, ParamPoint};

fn main() -> Result<(), specseq::Error> {
    let case = match std::env::args().nth(1).as_deref() {
        Some("bounce") => Case::Bounce,
        _ => Case::Free,
    };
    let fx = bundled(case);
    let pt = ParamPoint::reference(case);
    let t = basis_ranks(&fx);
    println!("{case}: {} basis elements, columns {:?}", t.total(), t.by_column);

    println!("{:>6} {:>16} {:>16}", "block", "ranks", "homology");
    for b in Block::ALL {
        let cx = block_complex(&fx, b, &pt)?;
        println!("{:>6} {:>16} {:>16}", b.name(), format!("{:?}", cx.dims()), format!("{:?}", cx.homology_dims()));
    }
    Ok(())
}
