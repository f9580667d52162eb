//! Stochastic exponentials and the pre-Lie Magnus expansion, truncated by the
//! polynomial degree in the driver.

use num_traits::{One, Zero};

use crate::algebra::{Dendriform, Graded, Module, PreLie};
use crate::error::{Error, Result};
use crate::linear::Rational;

use super::bernoulli::{factorial, BernoulliCache};

/// Right: `E = 1 + X ⋄ E` with the dendriform `≺`. Left: `E = 1 + E ⋄' X` with `≻`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

fn check_order(order: usize) -> Result<()> {
    if order == 0 {
        return Err(Error::Config("truncation order must be at least 1".into()));
    }
    Ok(())
}

/// `E(X) − 1` by Picard iteration; component `n` is the `n`-fold nested product.
pub fn stoch_exp<D: Dendriform>(d: &D, x: &D::Elem, side: Side, order: usize) -> Result<Graded<D::Elem>> {
    check_order(order)?;
    let mut comps = Vec::with_capacity(order);
    comps.push(x.clone());
    for n in 1..order {
        let prev = &comps[n - 1];
        let next = match side {
            Side::Right => d.prec(x, prev)?,
            Side::Left => d.succ(prev, x)?,
        };
        comps.push(next);
    }
    Ok(Graded::from_components(comps))
}

/// `exp(Ω) − 1 = Σ_k Ω^k/k!` under the dendriform's associative product.
pub fn exp_series<D: Dendriform>(d: &D, omega: &Graded<D::Elem>) -> Result<Graded<D::Elem>> {
    let order = omega.order();
    let mut out = omega.clone();
    let mut power = omega.clone();
    for k in 2..=order {
        power = power.combine(d, omega, |a, b| d.product(a, b))?;
        out = out.add(d, &power.scale(d, &(Rational::one() / factorial(k))))?;
    }
    Ok(out)
}

/// Solves `Ω = Σ_n (B_n/n!)·ℓ⁽ⁿ⁾_{Ω∘}(X)` with `ℓ_{Ω∘}(Y) = Ω∘Y`, one sweep per degree.
pub fn magnus<P: PreLie>(p: &P, x: &P::Elem, order: usize) -> Result<Graded<P::Elem>> {
    check_order(order)?;
    magnus_graded(p, &Graded::linear(p, x, order))
}

/// [`magnus`] for a driver given by its graded components.
pub fn magnus_graded<P: PreLie>(p: &P, x: &Graded<P::Elem>) -> Result<Graded<P::Elem>> {
    let order = x.order();
    let bern = BernoulliCache::new(order);
    let mut omega = x.clone();
    for _ in 1..order {
        let mut acc = x.clone();
        let mut term = x.clone();
        for n in 1..order {
            term = omega.combine(p, &term, |a, b| p.prelie(a, b))?;
            let b = bern.get(n);
            if !b.is_zero() {
                acc = acc.add(p, &term.scale(p, &(b / factorial(n))))?;
            }
        }
        omega = acc;
    }
    Ok(omega)
}

/// The graded negation `−x`.
pub fn negate<M: Module>(m: &M, x: &Graded<M::Elem>) -> Graded<M::Elem> {
    x.scale(m, &-Rational::one())
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::prelie::flavor::{flavored, Flavor, FlavorShuffle};
    use crate::prelie::magma::{FreeMagma, MagmaDisplay};
    use crate::process::{Grid, GridPath, Mat, PathAlgebra};
    use crate::words::{Word, WordAlgebra, WordSeries};

    #[test]
    fn magma_expansion_to_degree_three() {
        let m = FreeMagma;
        let omega = magnus(&m, &m.generator(), 3).unwrap().total(&m).unwrap();
        let shown = MagmaDisplay { series: &omega, name: "X", op: '▷' }.to_string();
        assert_eq!(shown, "X − 1/2·X▷X + 1/4·(X▷X)▷X + 1/12·X▷(X▷X)");
        let one = magnus(&m, &m.generator(), 1).unwrap().total(&m).unwrap();
        assert_eq!(MagmaDisplay { series: &one, name: "X", op: '▷' }.to_string(), "X");
    }

    #[test]
    fn zero_driver() {
        let b = WordAlgebra::integer();
        let d = FlavorShuffle::new(&b, Flavor::Ito);
        let e = stoch_exp(&d, &WordSeries::zero(), Side::Right, 4).unwrap();
        assert!(e.components().iter().all(|c| c.is_zero()));
    }

    #[test]
    fn two_step_scalar_path() {
        let g = Arc::new(Grid::uniform(2, 1.0).unwrap());
        let b = PathAlgebra::new(g.clone(), 1);
        let x = GridPath::from_increments(g, 1, &[Mat::scalar(2.0), Mat::scalar(5.0)], &[]).unwrap();
        let d = FlavorShuffle::new(&b, Flavor::Ito);
        let e = stoch_exp(&d, &x, Side::Right, 3).unwrap().total(&b).unwrap();
        assert_eq!(1.0 + e.terminal().get(0, 0), 3.0 * 6.0);
        assert_eq!(b.ordered_product(&x).unwrap().get(0, 0), 18.0);
    }

    #[test]
    fn exp_of_magnus_is_right_exponential_on_shuffle_words() {
        let b = WordAlgebra::shuffle();
        let x = WordSeries::basis(Word::from_values(&[1])).plus(&WordSeries::basis(Word::from_values(&[2, 1])));
        let d = FlavorShuffle::new(&b, Flavor::Strat);
        let omega = magnus(&flavored(&b, Flavor::Strat), &x, 4).unwrap();
        assert_eq!(exp_series(&d, &omega).unwrap(), stoch_exp(&d, &x, Side::Right, 4).unwrap());
    }

    #[test]
    fn scalar_path_magnus_is_linear() {
        let g = Arc::new(Grid::uniform(6, 1.0).unwrap());
        let b = PathAlgebra::new(g.clone(), 1);
        let incs: Vec<Mat> = (1..=6).map(|k| Mat::scalar(k as f64 / 8.0)).collect();
        let x = GridPath::from_increments(g, 1, &incs, &[]).unwrap();
        let omega = magnus(&flavored(&b, Flavor::Strat), &x, 4).unwrap();
        for c in &omega.components()[1..] {
            assert_eq!(c.max_abs(), 0.0);
        }
    }
}
