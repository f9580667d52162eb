use std::fmt;

use crate::algebra::{Module, PreLie};
use crate::error::Result;
use num_traits::One;
use crate::linear::{LinComb, Rational};

use super::magma::Magma;
use super::poly::brace;

/// Non-planar rooted tree; children are kept sorted.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Tree {
    size: usize,
    children: Vec<Tree>,
}

impl Tree {
    pub fn leaf() -> Self {
        Tree { size: 1, children: Vec::new() }
    }

    pub fn with_children(mut children: Vec<Tree>) -> Self {
        children.sort();
        let size = 1 + children.iter().map(|c| c.size).sum::<usize>();
        Tree { size, children }
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn children(&self) -> &[Tree] {
        &self.children
    }

    /// All trees obtained by attaching `s` to one vertex of `self`, with multiplicity.
    pub fn grafts(&self, s: &Tree) -> Vec<Tree> {
        let mut out = Vec::new();
        let mut at_root = self.children.clone();
        at_root.push(s.clone());
        out.push(Tree::with_children(at_root));
        for (i, c) in self.children.iter().enumerate() {
            for g in c.grafts(s) {
                let mut ch = self.children.clone();
                ch[i] = g;
                out.push(Tree::with_children(ch));
            }
        }
        out
    }
}

impl fmt::Display for Tree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("•")?;
        if !self.children.is_empty() {
            f.write_str("[")?;
            for (i, c) in self.children.iter().enumerate() {
                if i > 0 {
                    f.write_str(",")?;
                }
                write!(f, "{c}")?;
            }
            f.write_str("]")?;
        }
        Ok(())
    }
}

pub type TreeSeries = LinComb<Tree>;

/// The free pre-Lie algebra on one generator: `s ▷ t` grafts `s` onto every vertex of `t`.
#[derive(Debug, Clone, Copy, Default)]
pub struct RootedTrees;

impl RootedTrees {
    pub fn generator(&self) -> TreeSeries {
        TreeSeries::basis(Tree::leaf())
    }
}

impl Module for RootedTrees {
    type Elem = TreeSeries;
    fn zero(&self) -> TreeSeries {
        TreeSeries::zero()
    }
    fn add(&self, a: &TreeSeries, b: &TreeSeries) -> Result<TreeSeries> {
        Ok(a.plus(b))
    }
    fn add_assign(&self, acc: &mut TreeSeries, x: &TreeSeries) -> Result<()> {
        acc.add_scaled(x, &Rational::one());
        Ok(())
    }
    fn sub(&self, a: &TreeSeries, b: &TreeSeries) -> Result<TreeSeries> {
        Ok(a.minus(b))
    }
    fn scale(&self, a: &TreeSeries, c: &Rational) -> TreeSeries {
        a.scale(c)
    }
    fn residual(&self, a: &TreeSeries, b: &TreeSeries) -> Result<f64> {
        Ok(a.max_abs_diff(b))
    }
    fn magnitude(&self, a: &TreeSeries) -> f64 {
        a.max_abs()
    }
    fn is_exact(&self) -> bool {
        true
    }
}

impl PreLie for RootedTrees {
    fn prelie(&self, a: &TreeSeries, b: &TreeSeries) -> Result<TreeSeries> {
        a.bilinear(b, |s, t| Ok(t.grafts(s).into_iter().map(|g| (g, Rational::from_integer(1.into()))).collect()))
    }
}

/// Image of a magma expression in the free pre-Lie algebra.
pub fn magma_to_trees(m: &Magma) -> TreeSeries {
    match m {
        Magma::Leaf => RootedTrees.generator(),
        Magma::Node(a, b) => RootedTrees
            .prelie(&magma_to_trees(a), &magma_to_trees(b))
            .expect("tree grafting is infallible"),
    }
}

/// Image of a tree under the pre-Lie morphism sending the one-vertex tree to `x`:
/// a root with branches `t₁…t_k` maps to `{F(t₁),…,F(t_k)}x`.
pub fn evaluate_tree<P: PreLie>(p: &P, t: &Tree, x: &P::Elem) -> Result<P::Elem> {
    let slots = t.children.iter().map(|c| evaluate_tree(p, c, x)).collect::<Result<Vec<_>>>()?;
    brace(p, &slots, x)
}

/// Linear extension of [`evaluate_tree`].
pub fn evaluate_tree_series<P: PreLie>(p: &P, s: &TreeSeries, x: &P::Elem) -> Result<P::Elem> {
    let mut acc = p.zero();
    for (t, c) in s.iter() {
        acc = p.add(&acc, &p.scale(&evaluate_tree(p, t, x)?, c))?;
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::prelie::flavor::prelie_residual;

    fn all_trees(max: usize) -> Vec<Tree> {
        let mut level = vec![Tree::leaf()];
        let mut all = level.clone();
        for _ in 1..max {
            let mut next: Vec<Tree> = level.iter().flat_map(|t| t.grafts(&Tree::leaf())).collect();
            next.sort();
            next.dedup();
            all.extend(next.iter().cloned());
            level = next;
        }
        all
    }

    #[test]
    fn tree_counts() {
        let counts: Vec<usize> = (1..=5).map(|n| all_trees(5).iter().filter(|t| t.size() == n).count()).collect();
        assert_eq!(counts, [1, 1, 2, 4, 9]);
    }

    #[test]
    fn grafting_is_left_prelie() {
        let ts = all_trees(3);
        for a in &ts {
            for b in &ts {
                for c in &ts {
                    let (a, b, c) = (TreeSeries::basis(a.clone()), TreeSeries::basis(b.clone()), TreeSeries::basis(c.clone()));
                    assert_eq!(prelie_residual(&RootedTrees, &a, &b, &c).unwrap(), 0.0);
                }
            }
        }
    }

    #[test]
    fn small_grafts() {
        let l = Tree::leaf();
        let ladder = Tree::with_children(vec![l.clone()]);
        assert_eq!(ladder.to_string(), "•[•]");
        let g = RootedTrees.prelie(&TreeSeries::basis(l.clone()), &TreeSeries::basis(ladder.clone())).unwrap();
        let cherry = Tree::with_children(vec![l.clone(), l.clone()]);
        let long = Tree::with_children(vec![ladder]);
        assert_eq!(g, TreeSeries::from_terms([(cherry, 1.into()), (long, 1.into())].map(|(t, c): (Tree, i64)| (t, Rational::from_integer(c.into())))));
    }
}
