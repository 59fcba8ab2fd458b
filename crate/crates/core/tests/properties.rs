//! Invariants over random inputs, judged by the independent oracles.

use dfan_core::grammar::{parse_element, parse_operator};
use dfan_core::{
    divide, kernel_normalize, monomial_filtration, sample, AlgebraError, HomogenizedModule,
    LinearForm, OpVec, ShiftMatrix,
};
use dfan_testkit::criteria;
use dfan_testkit::evaluator::product_agrees;
use dfan_testkit::syzygy;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn weyl_product_matches_action(seed in any::<u64>(), n in 1usize..=3, homogenized in any::<bool>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let p = sample::operator(&mut rng, n, 3, 3, homogenized);
        let q = sample::operator(&mut rng, n, 3, 3, homogenized);
        let pq = if homogenized { p.mul_dt(&q).unwrap() } else { p.mul(&q).unwrap() };
        prop_assert!(product_agrees(&p, &q, &pq, homogenized));
    }

    #[test]
    fn printing_round_trips(seed in any::<u64>(), n in 1usize..=3, r in 1usize..=3) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let op = sample::operator(&mut rng, n, 4, 4, false);
        prop_assert_eq!(parse_operator(&op.to_string(), n).unwrap(), op);
        let v = sample::vector(&mut rng, n, r, 3, 3, false);
        prop_assert_eq!(parse_element(&v.to_string(), n, r).unwrap(), v);
    }

    #[test]
    fn homogenization_inverts(seed in any::<u64>(), n in 1usize..=3) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let v = sample::vector(&mut rng, n, 2, 4, 4, false);
        prop_assert_eq!(v.homogenize().unwrap().dehomogenize(), v);
    }

    #[test]
    fn generators_divide_to_zero(seed in any::<u64>(), a in 0i64..4, b in 1i64..4) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let gens: Vec<OpVec> = (0..2).map(|_| sample::vector(&mut rng, 2, 1, 2, 3, false)).collect();
        // draws that exceed the engine limits say nothing about correctness
        let module = match HomogenizedModule::new(gens.clone(), ShiftMatrix::zero(2, 1)) {
            Ok(module) => module,
            Err(AlgebraError::ResourceBound(_)) => return Ok(()),
            Err(e) => return Err(TestCaseError::fail(e.to_string())),
        };
        let basis = match module.standard_basis(&LinearForm::from_i64(&[a, b]).unwrap()) {
            Ok(basis) => basis,
            Err(AlgebraError::ResourceBound(_)) => return Ok(()),
            Err(e) => return Err(TestCaseError::fail(e.to_string())),
        };
        for g in &gens {
            let h = g.homogenize().unwrap();
            prop_assert!(divide(&h, &basis).unwrap().remainder.is_zero());
            criteria::division_contract(&h, &basis).map_err(TestCaseError::fail)?;
        }
    }

    #[test]
    fn kernel_normalization_identities(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (exps, ops) = criteria::random_syzygy(&mut rng);
        let norm = kernel_normalize(&exps, &ops).unwrap();
        syzygy::check(&norm).map_err(TestCaseError::fail)?;
    }

    #[test]
    fn monomial_chains_count_dimensions(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let h = criteria::random_monomial_ideal(&mut rng);
        prop_assert!(monomial_filtration(&h).validate().is_ok());
        criteria::monomial_chain(&h, 5).map_err(TestCaseError::fail)?;
    }
}
