//! The free quasi-shuffle algebra on words over a letter monoid.

mod algebra;
mod letter;
pub mod oracle;
mod word;

pub use algebra::{BracketRegime, WordAlgebra, WordSeries};
pub use letter::{IntegerAddition, Letter, LetterMonoid, NullMonoid, TruncatedAddition, UpperUnits};
pub use oracle::qs_oracle_product;
pub use word::Word;
