//! The universal Magnus expansion in the free magma, and its value on a word.

use quasishuffle::prelie::{flavored, magnus, Flavor, FreeMagma, MagmaDisplay};
use quasishuffle::words::{Word, WordAlgebra, WordSeries};

fn main() -> quasishuffle::Result<()> {
    let m = FreeMagma;
    for order in 1..=4 {
        let omega = magnus(&m, &m.generator(), order)?.total(&m)?;
        println!("Ω_{order} = {}", MagmaDisplay { series: &omega, name: "X", op: '▷' });
    }
    let b = WordAlgebra::integer();
    let p = flavored(&b, Flavor::Ito);
    let x = WordSeries::basis(Word::from_values(&[1]));
    println!("Γ_3(1) = {}", magnus(&p, &x, 3)?.total(&p)?);
    Ok(())
}
