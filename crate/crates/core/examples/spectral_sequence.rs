//! Run the transfer-based spectral sequence on random filtered complexes and
//! compare the limit page with a brute-force count.

use specseq::specseq::{brute_force_gr_homology, random_filtered_complex, spectral_sequence, CellRanks};

fn nonzero(c: CellRanks) -> Vec<((usize, usize), usize)> {
    c.into_iter().filter(|&(_, n)| n > 0).collect()
}

fn main() -> Result<(), specseq::Error> {
    let seed = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(7);
    let s = random_filtered_complex(seed, 24, 4);
    println!("seed {seed}: {} generators over columns 0..={}", s.complex.len(), s.complex.column_span());

    let pages = spectral_sequence(&s.complex)?;
    for page in &pages {
        println!("E{}: {:?}", page.r, nonzero(page.complex.cell_ranks()));
    }
    let last = pages.last().expect("at least one page").complex.cell_ranks();
    let brute = brute_force_gr_homology(&s.complex);
    println!("agrees with brute force: {}", nonzero(last) == nonzero(brute));
    Ok(())
}
