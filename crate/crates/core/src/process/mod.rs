//! Discrete matrix-valued semimartingales on a time grid.
//!
//! Left limits use the left grid point: at step `k` the integrand value is
//! `X(t_{k−1})`. With that convention every Karandikar identity is a term-by-term
//! identity between finite sums.

mod csv_io;
mod grid;
mod matrix;
mod path;
mod sample;

pub use csv_io::{read_csv, write_csv};
pub use grid::Grid;
pub use matrix::Mat;
pub(crate) use matrix::matmul_acc;
pub use path::{
    bracket_split, delta, path_bracket, path_prec, path_product, path_succ, BracketSplit,
    GridPath, PathAlgebra,
};
pub use sample::{integer_path, sample_path, JumpPattern, PathKind, StepRng};
