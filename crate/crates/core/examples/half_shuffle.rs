//! Half-shuffles, bracket and product of words over the positive integers.

use quasishuffle::algebra::QuasiShuffle;
use quasishuffle::words::{Word, WordAlgebra, WordSeries};

fn main() -> quasishuffle::Result<()> {
    let b = WordAlgebra::integer();
    let x = WordSeries::basis(Word::from_values(&[2, 3]));
    let y = WordSeries::basis(Word::from_values(&[1]));
    println!("x ≺ y   = {}", b.prec(&x, &y)?);
    println!("x ≻ y   = {}", b.succ(&x, &y)?);
    println!("[x, y]  = {}", b.bracket(&x, &y)?);
    println!("x y     = {}", b.product(&x, &y)?);
    Ok(())
}
