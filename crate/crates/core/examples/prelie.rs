//! Pre-Lie products on words in the strictly upper-triangular 3×3 matrix units
//! (`1 = E₁₂`, `2 = E₁₃`, `3 = E₂₃`), the brace map and the star product.

use quasishuffle::algebra::PreLie;
use quasishuffle::cli::parse_poly;
use quasishuffle::prelie::{associator, brace, display_poly, flavored, star, Flavor};
use quasishuffle::words::{Word, WordAlgebra, WordSeries};

fn main() -> quasishuffle::Result<()> {
    let b = WordAlgebra::upper_units(3);
    let w = |v: &[u32]| WordSeries::basis(Word::from_values(v));
    let (x, y, z) = (w(&[1]), w(&[3]), w(&[1, 3]));
    for flavor in [Flavor::Ito, Flavor::Strat] {
        let p = flavored(&b, flavor);
        println!("{flavor}: x∘y = {}", p.prelie(&x, &y)?);
        let a = associator(&p, &x, &y, &z)?;
        let d = a.minus(&associator(&p, &y, &x, &z)?);
        println!("{flavor}: associator {a}, left pre-Lie defect {d}");
    }
    let p = flavored(&b, Flavor::Strat);
    println!("{{x, y}}z = {}", brace(&p, &[x.clone(), y.clone()], &z)?);
    println!("{{y, x}}z = {}", brace(&p, &[y, x], &z)?);
    let s = star(&p, &parse_poly("(1) ⊙ (3)")?, &parse_poly("1 3")?)?;
    println!("(1 ⊙ 3) ⋆ (1 3) = {}", display_poly(&s));
    Ok(())
}
