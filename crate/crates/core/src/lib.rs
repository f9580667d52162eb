//! Quasi-shuffle calculus for matrix-valued integrals.
//!
//! Backends implementing [`algebra::QuasiShuffle`]:
//! - [`words::WordAlgebra`]: the free model on words, exact rationals;
//! - [`process::PathAlgebra`]: discrete matrix semimartingales on a grid;
//! - [`rota_baxter::RbQuasiShuffle`]: matrix sequences under the summation operator.
//!
//! On top of these, [`strat`] builds the Stratonovich half-shuffles, [`prelie`]
//! the pre-Lie products, the enveloping algebra and the Magnus expansions, and
//! [`axioms`] turns every identity into a randomized check.

pub mod algebra;
pub mod axioms;
pub mod cli;
pub mod error;
pub mod linear;
pub mod prelie;
pub mod process;
mod rational;
pub mod rota_baxter;
pub mod strat;
pub mod words;

pub use error::{Error, Result};
