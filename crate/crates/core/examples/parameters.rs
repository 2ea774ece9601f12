//! Validate the reference constants, sample more points, and show what a
//! violation looks like.

use specseq::params::{rat, sample_point, Case, ParamPoint};

fn main() -> Result<(), specseq::Error> {
    for case in [Case::Free, Case::Bounce] {
        let pt = ParamPoint::reference(case);
        println!("{case}: reference {pt} valid={}", pt.is_valid());
        for seed in 1..=3 {
            let s = sample_point(case, seed)?;
            println!("  seed {seed}: {s}  kasner form = {}", s.kasner_form());
        }
    }

    let bad = ParamPoint::free([rat(2, 7), rat(-3, 7), rat(-1, 7)], [rat(1, 1), rat(2, 1), rat(3, 1)]);
    println!("\n{bad}");
    for v in bad.validate() {
        println!("  {v}");
    }
    Ok(())
}
