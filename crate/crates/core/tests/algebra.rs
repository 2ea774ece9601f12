use std::sync::OnceLock;

use proptest::prelude::*;
use specseq::corpus::{bundled, CaseFixture, MapName};
use specseq::opalg::{mat_mul, op_mul, Monomial, OpExpr, OpMatrix, Operator, RewriteOrder, StructureConstants};
use specseq::params::{rat, sample_point, Case, ParamPoint, ScalarExpr};
use specseq::reduce::two_by_two_pattern;

fn point(case: Case, seed: u64) -> ParamPoint {
    sample_point(case, seed).unwrap()
}

fn fixture(case: Case) -> &'static CaseFixture {
    static FREE: OnceLock<CaseFixture> = OnceLock::new();
    static BOUNCE: OnceLock<CaseFixture> = OnceLock::new();
    match case {
        Case::Free => FREE.get_or_init(|| bundled(case)),
        Case::Bounce => BOUNCE.get_or_init(|| bundled(case)),
    }
}

fn constants(case: Case, seed: u64) -> StructureConstants {
    fixture(case).structure_constants(&point(case, seed)).unwrap()
}

fn operator() -> impl Strategy<Value = Operator> {
    let term = (-4i64..=4, 1i64..=3, 0u32..=1, 0u32..=1, 0u32..=1);
    prop::collection::vec(term, 0..4).prop_map(|ts| {
        let mut op = Operator::zero();
        for (n, d, a, b, c) in ts {
            op.add_term(Monomial([a, b, c]), rat(n, d));
        }
        op
    })
}

fn expr() -> impl Strategy<Value = String> {
    let atom = prop::sample::select(vec!["D1", "D2", "D3", "g11", "g21", "g31", "g10", "2", "1/3", "-3"]).prop_map(String::from);
    atom.prop_recursive(3, 12, 2, |inner| {
        (inner.clone(), prop::sample::select(vec!["+", "-", "*"]), inner).prop_map(|(a, op, b)| format!("({a}) {op} ({b})"))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn multiplication_is_associative(a in operator(), b in operator(), c in operator(), seed in 0u64..50) {
        let sc = constants(Case::Free, seed);
        let left = op_mul(&op_mul(&a, &b, &sc), &c, &sc);
        let right = op_mul(&a, &op_mul(&b, &c, &sc), &sc);
        prop_assert_eq!(left, right);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn rewriting_is_confluent(word in prop::collection::vec(0u8..3, 0..=6), seed in 0u64..20, bounce in any::<bool>()) {
        let case = if bounce { Case::Bounce } else { Case::Free };
        let sc = constants(case, seed);
        let left = sc.rewriter().with_order(RewriteOrder::Leftmost).word(&word);
        let right = sc.rewriter().with_order(RewriteOrder::Rightmost).word(&word);
        prop_assert_eq!(left, right);
    }

    #[test]
    fn evaluation_respects_ring_operations(a in expr(), b in expr(), seed in 0u64..20) {
        let pt = point(Case::Free, seed);
        let sc = constants(Case::Free, seed);
        let ea = OpExpr::parse(&a).unwrap().eval(&pt, &sc).unwrap();
        let eb = OpExpr::parse(&b).unwrap().eval(&pt, &sc).unwrap();
        let ev = |s: String| OpExpr::parse(&s).unwrap().eval(&pt, &sc).unwrap();
        prop_assert_eq!(ev(format!("({a}) + ({b})")), &ea + &eb);
        prop_assert_eq!(ev(format!("({a}) - ({b})")), &ea - &eb);
        prop_assert_eq!(ev(format!("({a}) * ({b})")), op_mul(&ea, &eb, &sc));
        prop_assert_eq!(ev(format!("-({a})")), -&ea);
    }

    #[test]
    fn display_round_trips(a in expr()) {
        let e = OpExpr::parse(&a).unwrap();
        prop_assert_eq!(OpExpr::parse(&e.to_string()).unwrap(), e);
    }

    #[test]
    fn scalar_evaluation_is_a_homomorphism(seed in 0u64..40) {
        let pt = point(Case::Free, seed);
        let a = ScalarExpr::parse("g10 * g21 - 3/2").unwrap();
        let b = ScalarExpr::parse("g31 + g20 / g11").unwrap();
        let prod = ScalarExpr::parse("(g10 * g21 - 3/2) * (g31 + g20 / g11)").unwrap();
        let sum = ScalarExpr::parse("(g10 * g21 - 3/2) + (g31 + g20 / g11)").unwrap();
        let (x, y) = (a.eval(&pt).unwrap(), b.eval(&pt).unwrap());
        prop_assert_eq!(prod.eval(&pt).unwrap(), &x * &y);
        prop_assert_eq!(sum.eval(&pt).unwrap(), &x + &y);
    }

    #[test]
    fn reference_compositions_vanish(seed in 0u64..30, bounce in any::<bool>()) {
        let case = if bounce { Case::Bounce } else { Case::Free };
        let fx = fixture(case);
        let pt = point(case, seed);
        let sc = fx.structure_constants(&pt).unwrap();
        let d32 = fx.map_at(MapName::D32, &pt, &sc).unwrap();
        let d43 = fx.map_at(MapName::D43, &pt, &sc).unwrap();
        prop_assert!(mat_mul(&d43, &d32, &sc).unwrap().is_zero());
        prop_assert!(mat_mul(&d43, &d32, &StructureConstants::abelian()).unwrap().is_zero());
        let row = OpMatrix::from_rows(vec![vec![Operator::generator(1), Operator::generator(2)]]).unwrap();
        prop_assert!(mat_mul(&row, &two_by_two_pattern(&pt, &sc), &sc).unwrap().is_zero());
    }
}

#[test]
fn matrix_product_is_associative_with_operators() {
    let sc = constants(Case::Free, 0);
    let g = Operator::generator;
    let a = OpMatrix::from_rows(vec![vec![g(0), g(1)], vec![Operator::one(), g(2)]]).unwrap();
    let b = OpMatrix::from_rows(vec![vec![g(2), Operator::zero()], vec![g(1), g(0)]]).unwrap();
    let c = OpMatrix::from_rows(vec![vec![g(1)], vec![g(2)]]).unwrap();
    let left = mat_mul(&mat_mul(&a, &b, &sc).unwrap(), &c, &sc).unwrap();
    let right = mat_mul(&a, &mat_mul(&b, &c, &sc).unwrap(), &sc).unwrap();
    assert_eq!(left, right);
}
