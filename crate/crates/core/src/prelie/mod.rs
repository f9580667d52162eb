//! Pre-Lie products, brace maps, the enveloping algebra and Magnus expansions.

pub mod bernoulli;
pub mod exponential;
pub mod flavor;
pub mod linalg;
pub mod magma;
pub mod poly;
pub mod study;
pub mod trees;

pub use bernoulli::{factorial, BernoulliCache};
pub use exponential::{exp_series, magnus, magnus_graded, negate, stoch_exp, Side};
pub use flavor::{associator, commutator_residual, flavored, prelie_product, prelie_residual, Flavor, FlavorShuffle};
pub use linalg::{expm, logm};
pub use magma::{evaluate_magma, evaluate_magma_series, FreeMagma, Magma, MagmaDisplay, MagmaSeries};
pub use poly::{
    brace, brace_poly, display_poly, exp_odot, iota, log_star, magnus_poly, odot, odot_element, poly_linear, poly_unit,
    star, star_truncated, time_ordered, Monomial, Poly, MAX_FACTORS,
};
pub use trees::{evaluate_tree, evaluate_tree_series, magma_to_trees, RootedTrees, Tree, TreeSeries};
pub use study::{magnus_errors, magnus_study, reference_exponential, Driver, MagnusConfig, MagnusRow, MagnusStudy};
