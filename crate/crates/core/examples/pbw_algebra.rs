//! Normal forms in the enveloping algebra of the frame derivations.
//!
//! Products are rewritten into ordered monomials D1^a D2^b D3^c with the
//! structure constants of the chosen point.

use specseq::opalg::{normal_form, op_mul, Operator};
use specseq::params::{int, Case, ParamPoint};

fn main() -> Result<(), specseq::Error> {
    for case in [Case::Free, Case::Bounce] {
        let pt = ParamPoint::reference(case);
        let sc = specseq::corpus::bundled(case).structure_constants(&pt)?;
        println!("{case}:");
        for (i, j) in [(1, 2), (2, 0), (0, 1)] {
            println!("  [D{}, D{}] = {}", i + 1, j + 1, sc.bracket(i, j));
        }

        // D3 D2 D1 reordered
        let w = normal_form(&[(int(1), vec![2, 1, 0])], &sc);
        println!("  D3 D2 D1 = {w}");

        let (d2, d3) = (Operator::generator(1), Operator::generator(2));
        let lhs = op_mul(&op_mul(&d3, &d2, &sc), &d3, &sc);
        let rhs = op_mul(&d3, &op_mul(&d2, &d3, &sc), &sc);
        println!("  (D3 D2) D3 == D3 (D2 D3): {}", lhs == rhs);
    }
    Ok(())
}
