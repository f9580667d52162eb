use std::cmp::{Ordering, Reverse};
use std::fmt;

use crate::algebra::{Module, PreLie};
use crate::error::Result;
use num_traits::One;
use crate::linear::{write_terms, LinComb, Rational};

/// Binary bracketing of the generator `X`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Magma {
    Leaf,
    Node(Box<Magma>, Box<Magma>),
}

impl Magma {
    pub fn node(a: Magma, b: Magma) -> Self {
        Magma::Node(Box::new(a), Box::new(b))
    }

    pub fn degree(&self) -> usize {
        match self {
            Magma::Leaf => 1,
            Magma::Node(a, b) => a.degree() + b.degree(),
        }
    }

    fn write(&self, out: &mut String, name: &str, op: char, nested: bool) {
        match self {
            Magma::Leaf => out.push_str(name),
            Magma::Node(a, b) => {
                if nested {
                    out.push('(');
                }
                a.write(out, name, op, true);
                out.push(op);
                b.write(out, name, op, true);
                if nested {
                    out.push(')');
                }
            }
        }
    }

    pub fn render(&self, name: &str, op: char) -> String {
        let mut s = String::new();
        self.write(&mut s, name, op, false);
        s
    }
}

/// Lower degree first; within a degree, heavier left factors first.
impl Ord for Magma {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Magma::Leaf, Magma::Leaf) => Ordering::Equal,
            (Magma::Leaf, Magma::Node(..)) => Ordering::Less,
            (Magma::Node(..), Magma::Leaf) => Ordering::Greater,
            (Magma::Node(a, b), Magma::Node(c, d)) => self
                .degree()
                .cmp(&other.degree())
                .then_with(|| Reverse(a).cmp(&Reverse(c)))
                .then_with(|| b.cmp(d)),
        }
    }
}

impl PartialOrd for Magma {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Free magma on one generator, read as a pre-Lie algebra with no relations.
#[derive(Debug, Clone, Copy, Default)]
pub struct FreeMagma;

pub type MagmaSeries = LinComb<Magma>;

impl FreeMagma {
    pub fn generator(&self) -> MagmaSeries {
        MagmaSeries::basis(Magma::Leaf)
    }
}

impl Module for FreeMagma {
    type Elem = MagmaSeries;
    fn zero(&self) -> MagmaSeries {
        MagmaSeries::zero()
    }
    fn add(&self, a: &MagmaSeries, b: &MagmaSeries) -> Result<MagmaSeries> {
        Ok(a.plus(b))
    }
    fn add_assign(&self, acc: &mut MagmaSeries, x: &MagmaSeries) -> Result<()> {
        acc.add_scaled(x, &Rational::one());
        Ok(())
    }
    fn sub(&self, a: &MagmaSeries, b: &MagmaSeries) -> Result<MagmaSeries> {
        Ok(a.minus(b))
    }
    fn scale(&self, a: &MagmaSeries, c: &Rational) -> MagmaSeries {
        a.scale(c)
    }
    fn residual(&self, a: &MagmaSeries, b: &MagmaSeries) -> Result<f64> {
        Ok(a.max_abs_diff(b))
    }
    fn magnitude(&self, a: &MagmaSeries) -> f64 {
        a.max_abs()
    }
    fn is_exact(&self) -> bool {
        true
    }
}

impl PreLie for FreeMagma {
    fn prelie(&self, a: &MagmaSeries, b: &MagmaSeries) -> Result<MagmaSeries> {
        a.bilinear(b, |x, y| Ok(MagmaSeries::basis(Magma::node(x.clone(), y.clone()))))
    }
}

/// Displays a magma series with a chosen generator name and product symbol.
pub struct MagmaDisplay<'a> {
    pub series: &'a MagmaSeries,
    pub name: &'a str,
    pub op: char,
}

impl fmt::Display for MagmaDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_terms(f, self.series.iter(), |m| m.render(self.name, self.op))
    }
}

/// Evaluates a magma expression in a pre-Lie algebra, sending the generator to `x`.
pub fn evaluate_magma<P: PreLie>(p: &P, m: &Magma, x: &P::Elem) -> Result<P::Elem> {
    match m {
        Magma::Leaf => Ok(x.clone()),
        Magma::Node(a, b) => p.prelie(&evaluate_magma(p, a, x)?, &evaluate_magma(p, b, x)?),
    }
}

/// Linear extension of [`evaluate_magma`].
pub fn evaluate_magma_series<P: PreLie>(p: &P, s: &MagmaSeries, x: &P::Elem) -> Result<P::Elem> {
    let mut acc = p.zero();
    for (m, c) in s.iter() {
        acc = p.add(&acc, &p.scale(&evaluate_magma(p, m, x)?, c))?;
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linear::rat;

    #[test]
    fn render_and_order() {
        let x = Magma::Leaf;
        let xx = Magma::node(x.clone(), x.clone());
        let s = MagmaSeries::from_terms([
            (Magma::node(x.clone(), xx.clone()), rat(1, 12)),
            (x.clone(), rat(1, 1)),
            (Magma::node(xx.clone(), x.clone()), rat(1, 4)),
            (xx, rat(-1, 2)),
        ]);
        let d = MagmaDisplay { series: &s, name: "X", op: '▷' };
        assert_eq!(d.to_string(), "X − 1/2·X▷X + 1/4·(X▷X)▷X + 1/12·X▷(X▷X)");
    }

    #[test]
    fn degree_counts_leaves() {
        let m = Magma::node(Magma::Leaf, Magma::node(Magma::Leaf, Magma::Leaf));
        assert_eq!(m.degree(), 3);
    }
}
