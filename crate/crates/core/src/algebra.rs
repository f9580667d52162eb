//! The operation interfaces shared by every backend.
//!
//! A backend is a context object (it may own a grid, a dimension, a letter monoid)
//! whose associated `Elem` type carries the algebra elements. Operations are
//! fallible because backends validate operand compatibility.

use std::fmt;

use num_traits::One;

use crate::error::Result;
use crate::linear::Rational;

pub trait Module {
    type Elem: Clone + fmt::Debug + Send + Sync;

    fn zero(&self) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Result<Self::Elem>;
    fn scale(&self, a: &Self::Elem, c: &Rational) -> Self::Elem;

    /// `acc += x`.
    fn add_assign(&self, acc: &mut Self::Elem, x: &Self::Elem) -> Result<()> {
        *acc = self.add(acc, x)?;
        Ok(())
    }

    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Result<Self::Elem> {
        self.add(a, &self.scale(b, &-Rational::one()))
    }

    /// Max-norm of `a - b`. Zero iff equal on exact backends.
    fn residual(&self, a: &Self::Elem, b: &Self::Elem) -> Result<f64>;

    /// Max-norm of `a`.
    fn magnitude(&self, a: &Self::Elem) -> f64;

    /// True when arithmetic is exact (rational coefficients).
    fn is_exact(&self) -> bool;
}

/// Left half-shuffle `≺`, right half-shuffle `≻` and bracket `[,]`.
pub trait QuasiShuffle: Module {
    fn prec(&self, a: &Self::Elem, b: &Self::Elem) -> Result<Self::Elem>;
    fn succ(&self, a: &Self::Elem, b: &Self::Elem) -> Result<Self::Elem>;
    fn bracket(&self, a: &Self::Elem, b: &Self::Elem) -> Result<Self::Elem>;

    /// The associative product. Backends with a native product override this;
    /// the default is `≺ + ≻ + [,]`.
    fn product(&self, a: &Self::Elem, b: &Self::Elem) -> Result<Self::Elem> {
        let s = self.add(&self.prec(a, b)?, &self.succ(a, b)?)?;
        self.add(&s, &self.bracket(a, b)?)
    }
}

/// A quasi-shuffle algebra whose bracket splits into continuous and jump parts.
pub trait SingularQuasiShuffle: QuasiShuffle {
    fn bracket_c(&self, a: &Self::Elem, b: &Self::Elem) -> Result<Self::Elem>;

    fn bracket_j(&self, a: &Self::Elem, b: &Self::Elem) -> Result<Self::Elem> {
        self.sub(&self.bracket(a, b)?, &self.bracket_c(a, b)?)
    }

    /// Whether `a` carries any jump structure.
    fn has_jumps(&self, a: &Self::Elem) -> bool;
}

/// Two half-products whose sum is associative.
pub trait Dendriform: Module {
    fn prec(&self, a: &Self::Elem, b: &Self::Elem) -> Result<Self::Elem>;
    fn succ(&self, a: &Self::Elem, b: &Self::Elem) -> Result<Self::Elem>;

    fn product(&self, a: &Self::Elem, b: &Self::Elem) -> Result<Self::Elem> {
        self.add(&self.prec(a, b)?, &self.succ(a, b)?)
    }
}

pub trait PreLie: Module {
    fn prelie(&self, a: &Self::Elem, b: &Self::Elem) -> Result<Self::Elem>;
}

/// The pre-Lie product `x ≻ y − y ≺ x` carried by any dendriform structure.
#[derive(Debug, Clone, Copy)]
pub struct DendriformPreLie<D>(pub D);

impl<D: Module> Module for DendriformPreLie<D> {
    type Elem = D::Elem;
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
}

impl<D: Dendriform> PreLie for DendriformPreLie<D> {
    fn prelie(&self, a: &Self::Elem, b: &Self::Elem) -> Result<Self::Elem> {
        self.0.sub(&self.0.succ(a, b)?, &self.0.prec(b, a)?)
    }
}

macro_rules! forward_module {
    ($t:ty) => {
        type Elem = <$t as Module>::Elem;
        fn zero(&self) -> Self::Elem {
            (**self).zero()
        }
        fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Result<Self::Elem> {
            (**self).add(a, b)
        }
        fn add_assign(&self, acc: &mut Self::Elem, x: &Self::Elem) -> Result<()> {
            (**self).add_assign(acc, x)
        }
        fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Result<Self::Elem> {
            (**self).sub(a, b)
        }
        fn scale(&self, a: &Self::Elem, c: &Rational) -> Self::Elem {
            (**self).scale(a, c)
        }
        fn residual(&self, a: &Self::Elem, b: &Self::Elem) -> Result<f64> {
            (**self).residual(a, b)
        }
        fn magnitude(&self, a: &Self::Elem) -> f64 {
            (**self).magnitude(a)
        }
        fn is_exact(&self) -> bool {
            (**self).is_exact()
        }
    };
}

impl<M: Module + ?Sized> Module for &M {
    forward_module!(M);
}

impl<Q: QuasiShuffle + ?Sized> QuasiShuffle for &Q {
    fn prec(&self, a: &Self::Elem, b: &Self::Elem) -> Result<Self::Elem> {
        (**self).prec(a, b)
    }
    fn succ(&self, a: &Self::Elem, b: &Self::Elem) -> Result<Self::Elem> {
        (**self).succ(a, b)
    }
    fn bracket(&self, a: &Self::Elem, b: &Self::Elem) -> Result<Self::Elem> {
        (**self).bracket(a, b)
    }
    fn product(&self, a: &Self::Elem, b: &Self::Elem) -> Result<Self::Elem> {
        (**self).product(a, b)
    }
}

impl<Q: SingularQuasiShuffle + ?Sized> SingularQuasiShuffle for &Q {
    fn bracket_c(&self, a: &Self::Elem, b: &Self::Elem) -> Result<Self::Elem> {
        (**self).bracket_c(a, b)
    }
    fn bracket_j(&self, a: &Self::Elem, b: &Self::Elem) -> Result<Self::Elem> {
        (**self).bracket_j(a, b)
    }
    fn has_jumps(&self, a: &Self::Elem) -> bool {
        (**self).has_jumps(a)
    }
}

impl<D: Dendriform + ?Sized> Dendriform for &D {
    fn prec(&self, a: &Self::Elem, b: &Self::Elem) -> Result<Self::Elem> {
        (**self).prec(a, b)
    }
    fn succ(&self, a: &Self::Elem, b: &Self::Elem) -> Result<Self::Elem> {
        (**self).succ(a, b)
    }
    fn product(&self, a: &Self::Elem, b: &Self::Elem) -> Result<Self::Elem> {
        (**self).product(a, b)
    }
}

impl<P: PreLie + ?Sized> PreLie for &P {
    fn prelie(&self, a: &Self::Elem, b: &Self::Elem) -> Result<Self::Elem> {
        (**self).prelie(a, b)
    }
}

/// Sum of a sequence of elements.
pub fn sum<M: Module, I>(m: &M, items: I) -> Result<M::Elem>
where
    I: IntoIterator<Item = M::Elem>,
{
    let mut acc = m.zero();
    for x in items {
        m.add_assign(&mut acc, &x)?;
    }
    Ok(acc)
}

/// Max of the residuals `|lhs − rhs|` relative to `max(1, |lhs|, |rhs|)`; exact
/// backends report the absolute residual.
pub fn relative_residual<M: Module>(m: &M, lhs: &M::Elem, rhs: &M::Elem) -> Result<f64> {
    let r = m.residual(lhs, rhs)?;
    if m.is_exact() {
        return Ok(r);
    }
    let scale = 1f64.max(m.magnitude(lhs)).max(m.magnitude(rhs));
    Ok(r / scale)
}

/// An element truncated by polynomial degree in a single input: `comps[i]` is the
/// homogeneous component of degree `i + 1`. There is no degree-0 part.
#[derive(Debug, Clone, PartialEq)]
pub struct Graded<E> {
    comps: Vec<E>,
}

impl<E: Clone> Graded<E> {
    pub fn zeros<M: Module<Elem = E>>(m: &M, order: usize) -> Self {
        Graded { comps: vec![m.zero(); order] }
    }

    /// `x` placed in degree one.
    pub fn linear<M: Module<Elem = E>>(m: &M, x: &E, order: usize) -> Self {
        let mut g = Self::zeros(m, order);
        if order > 0 {
            g.comps[0] = x.clone();
        }
        g
    }

    pub fn from_components(comps: Vec<E>) -> Self {
        Graded { comps }
    }

    pub fn order(&self) -> usize {
        self.comps.len()
    }

    /// Component of degree `deg` (1-based).
    pub fn degree(&self, deg: usize) -> &E {
        &self.comps[deg - 1]
    }

    pub fn components(&self) -> &[E] {
        &self.comps
    }

    pub fn into_components(self) -> Vec<E> {
        self.comps
    }

    pub fn total<M: Module<Elem = E>>(&self, m: &M) -> Result<E> {
        sum(m, self.comps.iter().cloned())
    }

    pub fn add<M: Module<Elem = E>>(&self, m: &M, other: &Self) -> Result<Self> {
        let comps = self
            .comps
            .iter()
            .zip(&other.comps)
            .map(|(a, b)| m.add(a, b))
            .collect::<Result<_>>()?;
        Ok(Graded { comps })
    }

    pub fn scale<M: Module<Elem = E>>(&self, m: &M, c: &Rational) -> Self {
        Graded { comps: self.comps.iter().map(|a| m.scale(a, c)).collect() }
    }

    /// Bilinear `op` extended degree-wise and truncated at the common order.
    pub fn combine<M, F>(&self, m: &M, other: &Self, mut op: F) -> Result<Self>
    where
        M: Module<Elem = E>,
        F: FnMut(&E, &E) -> Result<E>,
    {
        let order = self.order().min(other.order());
        let mut out = Self::zeros(m, order);
        for i in 1..=order {
            for j in 1..=order {
                if i + j > order {
                    break;
                }
                let term = op(&self.comps[i - 1], &other.comps[j - 1])?;
                out.comps[i + j - 1] = m.add(&out.comps[i + j - 1], &term)?;
            }
        }
        Ok(out)
    }

    /// Degree-wise residuals against another graded element.
    pub fn residuals<M: Module<Elem = E>>(&self, m: &M, other: &Self) -> Result<Vec<f64>> {
        self.comps.iter().zip(&other.comps).map(|(a, b)| m.residual(a, b)).collect()
    }
}

/// `scalar·1 + elem`, for algebras whose unit is not an element of the backend.
#[derive(Debug, Clone, PartialEq)]
pub struct Unital<E> {
    pub scalar: Rational,
    pub elem: E,
}

impl<E: Clone> Unital<E> {
    pub fn mul<M: Module<Elem = E>, F>(&self, m: &M, other: &Self, product: F) -> Result<Self>
    where
        F: FnOnce(&E, &E) -> Result<E>,
    {
        let ab = product(&self.elem, &other.elem)?;
        let elem = m.add(
            &m.add(&m.scale(&other.elem, &self.scalar), &m.scale(&self.elem, &other.scalar))?,
            &ab,
        )?;
        Ok(Unital { scalar: &self.scalar * &other.scalar, elem })
    }
}
