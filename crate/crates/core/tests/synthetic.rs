use proptest::prelude::*;
use specseq::linalg::QMatrix;
use specseq::opalg::{OpMatrix, StructureConstants};
use specseq::reduce::{scalar_exact, unit_pivot_reduce};
use specseq::specseq::{
    brute_force_gr_homology, einf_ranks, page_contraction, random_filtered_complex, spectral_sequence, transfer_differential,
    FilteredComplex,
};

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn transfer_agrees_with_brute_force(seed in any::<u64>()) {
        let s = random_filtered_complex(seed, 30, 5);
        prop_assert!(s.complex.len() <= 30);
        let brute = brute_force_gr_homology(&s.complex);
        prop_assert_eq!(&brute, &s.expected_einf);
        prop_assert_eq!(einf_ranks(&s.complex).unwrap(), brute);
    }

    #[test]
    fn page_differentials_square_to_zero(seed in any::<u64>()) {
        let s = random_filtered_complex(seed, 20, 4);
        for page in spectral_sequence(&s.complex).unwrap() {
            let d = page.complex.differential();
            prop_assert!((d * d).is_zero());
            for r in 0..page.r {
                prop_assert!(page.complex.shift_part(r).is_zero());
            }
        }
    }
}

#[test]
fn unperturbed_complex_transfers_to_zero() {
    // d0 only: each column is its own complex
    let d = QMatrix::from_i64(&[&[0, 0, 0, 0], &[2, 0, 0, 0], &[0, 0, 0, 0], &[0, 0, 1, 0]]);
    let fc = FilteredComplex::new(vec![0, 0, 1, 1], vec![0, 1, 0, 1], d).unwrap();
    let c = page_contraction(&fc, 0).unwrap();
    for r in 0..4 {
        assert!(transfer_differential(&fc, &c, r).unwrap().is_zero());
    }
}

fn small_matrix(rows: usize, cols: usize) -> impl Strategy<Value = QMatrix> {
    // mostly zeros with a few units, so that pivots actually occur
    let entry = prop_oneof![6 => Just(0i64), 3 => Just(1i64), 1 => -3i64..=3];
    prop::collection::vec(entry, rows * cols).prop_map(move |v| {
        let rows: Vec<Vec<i64>> = v.chunks(cols).map(<[i64]>::to_vec).collect();
        let refs: Vec<&[i64]> = rows.iter().map(Vec::as_slice).collect();
        QMatrix::from_i64(&refs)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn reduction_preserves_exactness(b in small_matrix(3, 6), mix in small_matrix(6, 4), full in any::<bool>()) {
        let k = b.kernel_basis();
        let a = if full || k.cols() == 0 {
            k.clone()
        } else {
            let sel: Vec<usize> = (0..k.cols()).collect();
            let rows: Vec<usize> = (0..k.cols().min(6)).collect();
            let cols: Vec<usize> = (0..4).collect();
            &k.select_columns(&sel) * &mix.select(&rows, &cols)
        };
        let sc = StructureConstants::abelian();
        let red = unit_pivot_reduce(&OpMatrix::from_scalar(&b), &[OpMatrix::from_scalar(&a)], &sc).unwrap();
        let b2 = red.b.as_scalar().unwrap();
        let a2 = red.incoming[0].as_scalar().unwrap();
        prop_assert!((&b2 * &a2).is_zero());
        prop_assert_eq!(scalar_exact(&a, &b), scalar_exact(&a2, &b2));
    }
}
