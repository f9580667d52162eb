use std::sync::Arc;

use proptest::prelude::*;
use quasishuffle::algebra::{Module, QuasiShuffle};
use quasishuffle::cli::parse_series;
use quasishuffle::linear::rat;
use quasishuffle::process::{integer_path, Grid, JumpPattern, PathAlgebra};
use quasishuffle::rota_baxter::{RBSequence, RBStructure, Scaled, Summation};
use quasishuffle::words::{Word, WordAlgebra, WordSeries};

fn word() -> impl Strategy<Value = Word> {
    prop::collection::vec(1u32..=4, 0..=3).prop_map(|v| Word::from_values(&v))
}

fn nonempty_word() -> impl Strategy<Value = Word> {
    prop::collection::vec(1u32..=4, 1..=3).prop_map(|v| Word::from_values(&v))
}

fn series() -> impl Strategy<Value = WordSeries> {
    prop::collection::vec((word(), -6i64..=6, 1i64..=4), 0..=3)
        .prop_map(|terms| WordSeries::from_terms(terms.into_iter().map(|(w, p, q)| (w, rat(p, q)))))
}

/// Series without an empty-word term, the domain of the half-shuffles.
fn augmented() -> impl Strategy<Value = WordSeries> {
    prop::collection::vec((nonempty_word(), -6i64..=6, 1i64..=4), 0..=3)
        .prop_map(|terms| WordSeries::from_terms(terms.into_iter().map(|(w, p, q)| (w, rat(p, q)))))
}

fn small_series() -> impl Strategy<Value = WordSeries> {
    prop::collection::vec((word(), -3i64..=3), 1..=2)
        .prop_map(|terms| WordSeries::from_terms(terms.into_iter().map(|(w, p)| (w, rat(p, 1)))))
}

proptest! {
    #[test]
    fn print_parse_round_trip(s in series()) {
        prop_assert_eq!(parse_series(&s.to_string()).unwrap(), s);
    }

    #[test]
    fn product_is_commutative(a in series(), b in series()) {
        let alg = WordAlgebra::integer();
        prop_assert_eq!(alg.product(&a, &b).unwrap(), alg.product(&b, &a).unwrap());
    }

    #[test]
    fn product_is_associative(a in small_series(), b in small_series(), c in small_series()) {
        let alg = WordAlgebra::integer();
        let l = alg.product(&alg.product(&a, &b).unwrap(), &c).unwrap();
        let r = alg.product(&a, &alg.product(&b, &c).unwrap()).unwrap();
        prop_assert_eq!(l, r);
    }

    #[test]
    fn product_splits_into_three_parts(a in augmented(), b in augmented()) {
        let alg = WordAlgebra::integer();
        let sum = alg.add(&alg.add(&alg.prec(&a, &b).unwrap(), &alg.succ(&a, &b).unwrap()).unwrap(), &alg.bracket(&a, &b).unwrap()).unwrap();
        prop_assert_eq!(alg.product(&a, &b).unwrap(), sum);
    }

    #[test]
    fn half_shuffles_swap(a in augmented(), b in augmented()) {
        let alg = WordAlgebra::integer();
        prop_assert_eq!(alg.prec(&a, &b).unwrap(), alg.succ(&b, &a).unwrap());
    }

    #[test]
    fn integer_paths_satisfy_karandikar(seed in any::<u64>(), dim in 1usize..=3, steps in 1usize..=24) {
        let grid = Arc::new(Grid::uniform(steps, 1.0).unwrap());
        let b = PathAlgebra::new(grid.clone(), dim);
        let p = |i| integer_path(&grid, dim, seed, i, 3, JumpPattern::Mixed).unwrap();
        let (x, y, z) = (p(0), p(1), p(2));
        let k4l = b.prec(&b.prec(&x, &y).unwrap(), &z).unwrap();
        let k4r = b.prec(&x, &b.product(&y, &z).unwrap()).unwrap();
        prop_assert_eq!(b.residual(&k4l, &k4r).unwrap(), 0.0);
        let k6l = b.prec(&b.succ(&x, &y).unwrap(), &z).unwrap();
        let k6r = b.succ(&x, &b.prec(&y, &z).unwrap()).unwrap();
        prop_assert_eq!(b.residual(&k6l, &k6r).unwrap(), 0.0);
        let k11l = b.bracket(&b.bracket(&x, &y).unwrap(), &z).unwrap();
        let k11r = b.bracket(&x, &b.bracket(&y, &z).unwrap()).unwrap();
        prop_assert_eq!(b.residual(&k11l, &k11r).unwrap(), 0.0);
    }

    #[test]
    fn summation_is_rota_baxter(seed in any::<u64>(), len in 1usize..=12, dim in 1usize..=3, theta in -2i64..=2) {
        let x = RBSequence::random_integer(len, dim, seed, 0, 5);
        let y = RBSequence::random_integer(len, dim, seed, 1, 5);
        prop_assert_eq!(RBStructure::new(Summation).relation_residual(&x, &y).unwrap(), 0.0);
        let scaled = RBStructure::new(Scaled { factor: rat(theta, 1), inner: Summation });
        prop_assert_eq!(scaled.relation_residual(&x, &y).unwrap(), 0.0);
    }
}
