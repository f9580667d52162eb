//! Stratonovich half-shuffles, the derived shuffle `(≺, ⋗)` and the shuffle
//! identities they satisfy.
//!
//! ```text
//! X ≽ Y = X ≻ Y + ½[X,Y]^c        X ≼ Y = X ≺ Y + ½[X,Y]^c        X ⋗ Y = X ≻ Y + [X,Y]
//! ```

use crate::algebra::{Dendriform, Module, QuasiShuffle, SingularQuasiShuffle};
use crate::error::{Error, Result};
use crate::linear::{rat, Rational};

/// Harness threshold for treating triple brackets as vanishing.
pub const REGULAR_TOL: f64 = 1e-6;

macro_rules! forward_module_to_inner {
    () => {
        type Elem = B::Elem;
        fn zero(&self) -> Self::Elem {
            self.0.zero()
        }
        fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Result<Self::Elem> {
            self.0.add(a, b)
        }
        fn add_assign(&self, acc: &mut Self::Elem, x: &Self::Elem) -> Result<()> {
            self.0.add_assign(acc, x)
        }
        fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Result<Self::Elem> {
            self.0.sub(a, b)
        }
        fn scale(&self, a: &Self::Elem, c: &Rational) -> Self::Elem {
            self.0.scale(a, c)
        }
        fn residual(&self, a: &Self::Elem, b: &Self::Elem) -> Result<f64> {
            self.0.residual(a, b)
        }
        fn magnitude(&self, a: &Self::Elem) -> f64 {
            self.0.magnitude(a)
        }
        fn is_exact(&self) -> bool {
            self.0.is_exact()
        }
    };
}

/// `(≼, ≽)` over a singular quasi-shuffle backend.
#[derive(Debug, Clone, Copy)]
pub struct StratShuffle<B>(pub B);

impl<B: SingularQuasiShuffle> Module for StratShuffle<B> {
    forward_module_to_inner!();
}

impl<B: SingularQuasiShuffle> Dendriform for StratShuffle<B> {
    fn prec(&self, a: &B::Elem, b: &B::Elem) -> Result<B::Elem> {
        strat_prec(&self.0, a, b)
    }
    fn succ(&self, a: &B::Elem, b: &B::Elem) -> Result<B::Elem> {
        strat_succ(&self.0, a, b)
    }
}

/// `(≺, ⋗)` over any quasi-shuffle backend.
#[derive(Debug, Clone, Copy)]
pub struct DerivedShuffle<B>(pub B);

impl<B: QuasiShuffle> Module for DerivedShuffle<B> {
    forward_module_to_inner!();
}

impl<B: QuasiShuffle> Dendriform for DerivedShuffle<B> {
    fn prec(&self, a: &B::Elem, b: &B::Elem) -> Result<B::Elem> {
        self.0.prec(a, b)
    }
    fn succ(&self, a: &B::Elem, b: &B::Elem) -> Result<B::Elem> {
        succ_dot(&self.0, a, b)
    }
    fn product(&self, a: &B::Elem, b: &B::Elem) -> Result<B::Elem> {
        self.0.product(a, b)
    }
}

fn half() -> Rational {
    rat(1, 2)
}

/// `X ≼ Y`.
pub fn strat_prec<B: SingularQuasiShuffle>(b: &B, x: &B::Elem, y: &B::Elem) -> Result<B::Elem> {
    b.add(&b.prec(x, y)?, &b.scale(&b.bracket_c(x, y)?, &half()))
}

/// `X ≽ Y`.
pub fn strat_succ<B: SingularQuasiShuffle>(b: &B, x: &B::Elem, y: &B::Elem) -> Result<B::Elem> {
    b.add(&b.succ(x, y)?, &b.scale(&b.bracket_c(x, y)?, &half()))
}

/// `(X ≽ Y, X ≼ Y)`.
pub fn strat_products<B: SingularQuasiShuffle>(b: &B, x: &B::Elem, y: &B::Elem) -> Result<(B::Elem, B::Elem)> {
    Ok((strat_succ(b, x, y)?, strat_prec(b, x, y)?))
}

/// `X ⋗ Y`.
pub fn succ_dot<B: QuasiShuffle>(b: &B, x: &B::Elem, y: &B::Elem) -> Result<B::Elem> {
    b.add(&b.succ(x, y)?, &b.bracket(x, y)?)
}

/// `XY − (X≽Y + X≼Y + [X,Y]^j)`.
pub fn integration_by_parts_defect<B: SingularQuasiShuffle>(b: &B, x: &B::Elem, y: &B::Elem) -> Result<B::Elem> {
    let (s, p) = strat_products(b, x, y)?;
    let rhs = b.add(&b.add(&s, &p)?, &b.bracket_j(x, y)?)?;
    b.sub(&b.product(x, y)?, &rhs)
}

/// Residuals of `[X≺Y,Z]^c = [X,Y≻Z]^c` and `[X≺Y,Z]^j = [X,Y≻Z]^j`.
pub fn mixed_singular_residuals<B: SingularQuasiShuffle>(b: &B, x: &B::Elem, y: &B::Elem, z: &B::Elem) -> Result<[f64; 2]> {
    let xy = b.prec(x, y)?;
    let yz = b.succ(y, z)?;
    Ok([
        b.residual(&b.bracket_c(&xy, z)?, &b.bracket_c(x, &yz)?)?,
        b.residual(&b.bracket_j(&xy, z)?, &b.bracket_j(x, &yz)?)?,
    ])
}

/// Both sides of the three shuffle identities of a dendriform structure:
///
/// ```text
/// (X≺Y)≺Z = X≺(Y∗Z)      (X≻Y)≺Z = X≻(Y≺Z)      X≻(Y≻Z) = (X∗Y)≻Z
/// ```
pub fn shuffle_sides<D: Dendriform>(d: &D, x: &D::Elem, y: &D::Elem, z: &D::Elem) -> Result<[(D::Elem, D::Elem); 3]> {
    Ok([
        (d.prec(&d.prec(x, y)?, z)?, d.prec(x, &d.product(y, z)?)?),
        (d.prec(&d.succ(x, y)?, z)?, d.succ(x, &d.prec(y, z)?)?),
        (d.succ(x, &d.succ(y, z)?)?, d.succ(&d.product(x, y)?, z)?),
    ])
}

/// `lhs − rhs` for each of [`shuffle_sides`].
pub fn shuffle_defects<D: Dendriform>(d: &D, x: &D::Elem, y: &D::Elem, z: &D::Elem) -> Result<[D::Elem; 3]> {
    let [a, b, c] = shuffle_sides(d, x, y, z)?;
    Ok([d.sub(&a.0, &a.1)?, d.sub(&b.0, &b.1)?, d.sub(&c.0, &c.1)?])
}

/// Max-norms of [`shuffle_defects`].
pub fn shuffle_residuals<D: Dendriform>(d: &D, x: &D::Elem, y: &D::Elem, z: &D::Elem) -> Result<[f64; 3]> {
    let defects = shuffle_defects(d, x, y, z)?;
    let zero = d.zero();
    let mut out = [0.0; 3];
    for (o, e) in out.iter_mut().zip(&defects) {
        *o = d.residual(e, &zero)?;
    }
    Ok(out)
}

/// The Stratonovich shuffle defects computed directly and from bracket formulas.
#[derive(Debug, Clone)]
pub struct ShuffleResidual<E> {
    pub direct: [E; 3],
    pub closed_form: [E; 3],
}

impl<E> ShuffleResidual<E> {
    /// Max-norm of `direct − closed_form` per identity.
    pub fn agreement<M: Module<Elem = E>>(&self, m: &M) -> Result<[f64; 3]> {
        let mut out = [0.0; 3];
        for i in 0..3 {
            out[i] = m.residual(&self.direct[i], &self.closed_form[i])?;
        }
        Ok(out)
    }

    /// Max-norm of the direct defects.
    pub fn magnitudes<M: Module<Elem = E>>(&self, m: &M) -> [f64; 3] {
        [0, 1, 2].map(|i| m.magnitude(&self.direct[i]))
    }
}

/// Defects of the shuffle identities for `(≼, ≽)` on a backend without jumps.
///
/// ```text
/// (X≼Y)≼Z − X≼(YZ) = ¼[[X,Y],Z] − ½[X,[Y,Z]]
/// (X≽Y)≼Z − X≽(Y≼Z) = 0
/// X≽(Y≽Z) − (XY)≽Z = ¼[X,[Y,Z]] − ½[[X,Y],Z]
/// ```
pub fn shuffle_residual<B: SingularQuasiShuffle>(b: &B, x: &B::Elem, y: &B::Elem, z: &B::Elem) -> Result<ShuffleResidual<B::Elem>> {
    if b.has_jumps(x) || b.has_jumps(y) || b.has_jumps(z) {
        return Err(Error::JumpsPresent);
    }
    let s = StratShuffle(b);
    let direct = shuffle_defects(&s, x, y, z)?;
    let xy_z = b.bracket(&b.bracket(x, y)?, z)?;
    let x_yz = b.bracket(x, &b.bracket(y, z)?)?;
    let combo = |p: &B::Elem, q: &B::Elem| -> Result<B::Elem> { b.sub(&b.scale(p, &rat(1, 4)), &b.scale(q, &half())) };
    let closed_form = [combo(&xy_z, &x_yz)?, b.zero(), combo(&x_yz, &xy_z)?];
    Ok(ShuffleResidual { direct, closed_form })
}

/// Max-norms of `[[X,Y],Z]` and `[X,[Y,Z]]`.
pub fn triple_brackets<B: QuasiShuffle>(b: &B, x: &B::Elem, y: &B::Elem, z: &B::Elem) -> Result<(f64, f64)> {
    let l = b.bracket(&b.bracket(x, y)?, z)?;
    let r = b.bracket(x, &b.bracket(y, z)?)?;
    Ok((b.magnitude(&l), b.magnitude(&r)))
}

/// Whether both triple brackets are within `tol`, relative to `max(1, |X|, |Y|, |Z|)³`.
pub fn regular_check<B: QuasiShuffle>(b: &B, x: &B::Elem, y: &B::Elem, z: &B::Elem, tol: f64) -> Result<bool> {
    let (l, r) = triple_brackets(b, x, y, z)?;
    let scale = 1f64.max(b.magnitude(x)).max(b.magnitude(y)).max(b.magnitude(z)).powi(3);
    Ok(l.max(r) <= tol * scale)
}

/// Packages `(≼, ≽)` as a shuffle algebra after checking regularity on `samples`.
pub fn functor_to_shuffle<B: SingularQuasiShuffle>(b: B, samples: &[(B::Elem, B::Elem, B::Elem)], tol: f64) -> Result<StratShuffle<B>> {
    for (x, y, z) in samples {
        if b.has_jumps(x) || b.has_jumps(y) || b.has_jumps(z) {
            return Err(Error::JumpsPresent);
        }
        let (l, r) = triple_brackets(&b, x, y, z)?;
        let scale = 1f64.max(b.magnitude(x)).max(b.magnitude(y)).max(b.magnitude(z)).powi(3);
        if l.max(r) > tol * scale {
            return Err(Error::NotRegular(l.max(r), tol * scale));
        }
    }
    Ok(StratShuffle(b))
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::process::{integer_path, sample_path, Grid, GridPath, JumpPattern, Mat, PathAlgebra, PathKind};
    use crate::words::{Word, WordAlgebra, WordSeries};

    fn w(v: &[u32]) -> WordSeries {
        WordSeries::basis(Word::from_values(v))
    }

    fn grid(k: usize) -> Arc<Grid> {
        Arc::new(Grid::uniform(k, 1.0).unwrap())
    }

    #[test]
    fn zero_bracket_backend_leaves_products_unchanged() {
        let b = WordAlgebra::integer();
        let (s, p) = strat_products(&b, &w(&[1, 2]), &w(&[3])).unwrap();
        assert_eq!(s, b.succ(&w(&[1, 2]), &w(&[3])).unwrap());
        assert_eq!(p, b.prec(&w(&[1, 2]), &w(&[3])).unwrap());
    }

    #[test]
    fn pure_jump_paths_have_no_correction() {
        let g = grid(12);
        let b = PathAlgebra::new(g.clone(), 2);
        let x = integer_path(&g, 2, 1, 0, 3, JumpPattern::All).unwrap();
        let y = integer_path(&g, 2, 1, 1, 3, JumpPattern::All).unwrap();
        let (s, p) = strat_products(&b, &x, &y).unwrap();
        assert_eq!(s, b.succ(&x, &y).unwrap());
        assert_eq!(p, b.prec(&x, &y).unwrap());
    }

    #[test]
    fn fv_integer_path_with_bracket_subtracted() {
        let g = grid(10);
        let b = PathAlgebra::new(g.clone(), 2);
        let x = integer_path(&g, 2, 4, 0, 2, JumpPattern::None).unwrap();
        let y = integer_path(&g, 2, 4, 1, 2, JumpPattern::None).unwrap();
        let p = strat_prec(&b, &x, &y).unwrap();
        let half_bracket = b.scale(&b.bracket(&x, &y).unwrap(), &half());
        assert_eq!(b.sub(&p, &half_bracket).unwrap(), b.prec(&x, &y).unwrap());
    }

    #[test]
    fn scalar_brownian_product_rule() {
        let g = grid(1024);
        let b = PathAlgebra::new(g.clone(), 1);
        let x = sample_path(PathKind::Brownian, 1, &g, 3, 0).unwrap();
        let (s, p) = strat_products(&b, &x, &x).unwrap();
        let lhs = s.terminal().get(0, 0) + p.terminal().get(0, 0);
        let t = x.terminal().get(0, 0);
        assert!((lhs - t * t).abs() <= 1e-12 * t.abs().max(1.0).powi(2));
        assert_eq!(b.bracket_j(&x, &x).unwrap().max_abs(), 0.0);
    }

    #[test]
    fn integration_by_parts_on_mixed_paths() {
        let g = grid(64);
        let b = PathAlgebra::new(g.clone(), 3);
        let x = integer_path(&g, 3, 2, 0, 3, JumpPattern::Mixed).unwrap();
        let y = integer_path(&g, 3, 2, 1, 3, JumpPattern::Mixed).unwrap();
        assert_eq!(integration_by_parts_defect(&b, &x, &y).unwrap().max_abs(), 0.0);
        assert_eq!(mixed_singular_residuals(&b, &x, &y, &x).unwrap(), [0.0, 0.0]);
    }

    #[test]
    fn closed_forms_match_on_integer_paths() {
        let g = grid(20);
        let b = PathAlgebra::new(g.clone(), 2);
        for seed in 0..10 {
            let p: Vec<GridPath> = (0..3).map(|i| integer_path(&g, 2, seed, i, 3, JumpPattern::None).unwrap()).collect();
            let r = shuffle_residual(&b, &p[0], &p[1], &p[2]).unwrap();
            assert_eq!(r.agreement(&b).unwrap(), [0.0; 3]);
            assert!(r.magnitudes(&b)[0] > 0.0);
        }
    }

    #[test]
    fn jumps_rejected() {
        let g = grid(8);
        let b = PathAlgebra::new(g.clone(), 1);
        let x = integer_path(&g, 1, 0, 0, 3, JumpPattern::All).unwrap();
        assert!(matches!(shuffle_residual(&b, &x, &x, &x), Err(Error::JumpsPresent)));
    }

    #[test]
    fn zero_bracket_model_is_a_shuffle_algebra() {
        let b = WordAlgebra::shuffle();
        let r = shuffle_residual(&b, &w(&[1, 2]), &w(&[3]), &w(&[2, 2])).unwrap();
        assert_eq!(r.magnitudes(&b), [0.0; 3]);
    }

    #[test]
    fn regularity() {
        let words = WordAlgebra::integer();
        assert_eq!(words.bracket(&words.bracket(&w(&[2]), &w(&[3])).unwrap(), &w(&[4])).unwrap(), w(&[9]));
        assert!(!regular_check(&words, &w(&[2]), &w(&[3]), &w(&[4]), REGULAR_TOL).unwrap());
        assert!(regular_check(&WordAlgebra::truncated(2), &w(&[1]), &w(&[1]), &w(&[1]), 0.0).unwrap());

        let g = grid(16);
        let b = PathAlgebra::new(g.clone(), 1);
        let single = |k: usize| {
            let incs: Vec<Mat> = (1..=16).map(|s| Mat::scalar(if s == k { 1.0 } else { 0.0 })).collect();
            GridPath::from_increments(g.clone(), 1, &incs, &[k]).unwrap()
        };
        assert!(regular_check(&b, &single(2), &single(5), &single(9), 0.0).unwrap());
    }

    #[test]
    fn fv_triple_brackets_shrink() {
        let mut last = f64::INFINITY;
        for k in [64, 256, 1024] {
            let g = grid(k);
            let b = PathAlgebra::new(g.clone(), 2);
            let x = sample_path(PathKind::FiniteVariation, 2, &g, 1, 0).unwrap();
            let (l, _) = triple_brackets(&b, &x, &x, &x).unwrap();
            assert!(l < last / 8.0);
            last = l;
        }
    }

    #[test]
    fn functor_rejects_free_model() {
        let samples = vec![(w(&[2]), w(&[3]), w(&[4]))];
        assert!(matches!(
            functor_to_shuffle(WordAlgebra::new(crate::words::IntegerAddition, crate::words::BracketRegime::Continuous), &samples, REGULAR_TOL),
            Err(Error::NotRegular(..))
        ));
        let ok = functor_to_shuffle(WordAlgebra::truncated(2), &[(w(&[1]), w(&[1, 1]), w(&[1]))], REGULAR_TOL).unwrap();
        assert_eq!(shuffle_residuals(&ok, &w(&[1]), &w(&[1, 1]), &w(&[1])).unwrap(), [0.0; 3]);
    }

    #[test]
    fn derived_shuffle_is_exact_on_free_model() {
        let d = DerivedShuffle(WordAlgebra::integer());
        assert_eq!(shuffle_residuals(&d, &w(&[1, 2]), &w(&[3]), &w(&[1, 1])).unwrap(), [0.0; 3]);
    }
}
