mod common;

use proptest::prelude::*;
use proptest::test_runner::{Config, RngSeed};

use theta_adhm::geom;
use theta_adhm::parse::ParseContext;

fn config(seed: u64) -> Config {
    Config { cases: 256, rng_seed: RngSeed::Fixed(seed), failure_persistence: None, ..Config::default() }
}

proptest! {
    #![proptest_config(config(11))]

    #[test]
    fn products_are_associative(seed in any::<u64>()) {
        common::associativity(seed).map_err(TestCaseError::fail)?;
    }

    #[test]
    fn star_reverses_products(seed in any::<u64>()) {
        common::star_anti_multiplicative(seed).map_err(TestCaseError::fail)?;
    }

    #[test]
    fn d_squares_to_zero(seed in any::<u64>()) {
        common::d_squared(seed).map_err(TestCaseError::fail)?;
    }

    #[test]
    fn d_is_a_graded_derivation(seed in any::<u64>()) {
        common::graded_leibniz(seed).map_err(TestCaseError::fail)?;
    }

    #[test]
    fn normal_forms_are_stable(seed in any::<u64>()) {
        common::reduction_idempotent(seed).map_err(TestCaseError::fail)?;
    }

    #[test]
    fn bounded_membership_matches_reduction(seed in any::<u64>()) {
        common::membership_agreement(seed).map_err(TestCaseError::fail)?;
    }

    #[test]
    fn printing_then_parsing_is_identity(seed in any::<u64>()) {
        let ctx = ParseContext::named_algebra("C4", false).unwrap();
        let mut r = common::rng(seed);
        let a = common::element(&mut r, &ctx.spec, 4, 3);
        let back = ctx.parse_element(&a.to_string()).map_err(|e| TestCaseError::fail(e.to_string()))?;
        prop_assert_eq!(back, a);
    }

    #[test]
    fn forms_round_trip(seed in any::<u64>()) {
        let ctx = ParseContext::named_algebra("C4", false).unwrap();
        let mut r = common::rng(seed);
        let f = common::form(&mut r, &ctx.calc, 1);
        let back = ctx.parse(&f.to_string()).map_err(|e| TestCaseError::fail(e.to_string()))?;
        prop_assert_eq!(back.to_string(), f.to_string());
    }

    #[test]
    fn j_squares_to_minus_one(seed in any::<u64>()) {
        let g = common::geometry();
        let mut r = common::rng(seed);
        let a = common::element(&mut r, g.c4(), 3, 2);
        // J is antilinear, so J(J(a)) = a on even-degree parts and -a on odd ones
        let jj = geom::apply_j(&geom::apply_j(&a));
        let mut want = a.degree_part(0);
        for d in 1..=a.degree() {
            let p = a.degree_part(d);
            want = &want + &(if d % 2 == 0 { p } else { p.neg() });
        }
        prop_assert_eq!(jj, want);
    }
}
