//! The summation operator on integer matrix sequences.

use quasishuffle::algebra::QuasiShuffle;
use quasishuffle::rota_baxter::{rb_to_quasi_shuffle, RBSequence, RBStructure};

fn main() -> quasishuffle::Result<()> {
    let x = RBSequence::random_integer(16, 3, 7, 0, 5);
    let y = RBSequence::random_integer(16, 3, 7, 1, 5);
    let s = RBStructure::default();
    println!("weight {}", s.weight());
    println!("relation residual {}", s.relation_residual(&x, &y)?);

    let q = rb_to_quasi_shuffle(s, 16, 3)?;
    let lhs = q.prec(&q.prec(&x, &y)?, &x)?;
    let rhs = q.prec(&x, &q.product(&y, &x)?)?;
    println!("(x≺y)≺x − x≺(yx) = {}", lhs.max_abs_diff(&rhs)?);
    Ok(())
}
