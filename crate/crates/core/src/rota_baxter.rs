//! Rota–Baxter operators on finite matrix sequences.
//!
//! `R(x)R(y) = R(R(x)y + xR(y) + θxy)`. The built-in operator is the summation
//! `R(f)(n) = Σ_{k<n} f(k)`, of weight one; with weight one, `a ≺ b = aR(b)`,
//! `a ≻ b = R(a)b` and `[a, b] = ab` form a quasi-shuffle algebra.

use std::fmt;

use num_traits::{One, Zero};

use crate::algebra::{Module, QuasiShuffle, SingularQuasiShuffle};
use crate::error::{Error, Result};
use crate::linear::{to_f64, Rational};
use crate::process::{Mat, StepRng};
use crate::process::matmul_acc;

/// Sequence `f(0), …, f(N−1)` of `d×d` matrices.
#[derive(Clone, PartialEq)]
pub struct RBSequence {
    len: usize,
    dim: usize,
    data: Vec<f64>,
}

impl fmt::Debug for RBSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries((0..self.len).map(|n| self.at(n))).finish()
    }
}

impl RBSequence {
    pub fn zeros(len: usize, dim: usize) -> Self {
        RBSequence { len, dim, data: vec![0.0; len * dim * dim] }
    }

    pub fn from_matrices(items: &[Mat]) -> Result<Self> {
        let dim = items.first().map_or(1, Mat::dim);
        let mut data = Vec::with_capacity(items.len() * dim * dim);
        for m in items {
            if m.dim() != dim {
                return Err(Error::DimMismatch(m.dim(), dim));
            }
            data.extend_from_slice(m.as_slice());
        }
        Ok(RBSequence { len: items.len(), dim, data })
    }

    pub fn constant(len: usize, value: &Mat) -> Self {
        let mut data = Vec::with_capacity(len * value.dim() * value.dim());
        for _ in 0..len {
            data.extend_from_slice(value.as_slice());
        }
        RBSequence { len, dim: value.dim(), data }
    }

    /// Integer entries in `[-max_abs, max_abs]`, reproducible from `(seed, id)`.
    pub fn random_integer(len: usize, dim: usize, seed: u64, id: u64, max_abs: i64) -> Self {
        let rng = StepRng::new(seed, id);
        let mut data = Vec::with_capacity(len * dim * dim);
        for n in 0..len {
            let mut d = rng.at(n as u64);
            data.extend((0..dim * dim).map(|_| d.int_in(-max_abs, max_abs) as f64));
        }
        RBSequence { len, dim, data }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn at(&self, n: usize) -> Mat {
        Mat::from_row_major(self.dim, self.slice(n).to_vec())
    }

    fn slice(&self, n: usize) -> &[f64] {
        let sz = self.dim * self.dim;
        &self.data[n * sz..(n + 1) * sz]
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.len != other.len || self.dim != other.dim {
            return Err(Error::ShapeMismatch(self.len, self.dim, other.len, other.dim));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect();
        Ok(RBSequence { data, ..*self })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect();
        Ok(RBSequence { data, ..*self })
    }

    pub fn scale(&self, c: f64) -> Self {
        RBSequence { data: self.data.iter().map(|v| v * c).collect(), ..*self }
    }

    /// Pointwise matrix product.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let sz = self.dim * self.dim;
        let mut data = vec![0.0; self.data.len()];
        for n in 0..self.len {
            matmul_acc(self.slice(n), other.slice(n), &mut data[n * sz..(n + 1) * sz], self.dim);
        }
        Ok(RBSequence { data, ..*self })
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0, |m, v| m.max(v.abs()))
    }

    pub fn max_abs_diff(&self, other: &Self) -> Result<f64> {
        self.check(other)?;
        Ok(self.data.iter().zip(&other.data).fold(0.0, |m, (a, b)| m.max((a - b).abs())))
    }
}

/// A linear operator on sequences together with its claimed weight.
pub trait RotaBaxterOperator: fmt::Debug + Send + Sync {
    fn apply(&self, f: &RBSequence) -> RBSequence;
    fn weight(&self) -> Rational;
}

/// `R(f)(n) = Σ_{k<n} f(k)`; weight one.
#[derive(Debug, Clone, Copy, Default)]
pub struct Summation;

impl RotaBaxterOperator for Summation {
    fn apply(&self, f: &RBSequence) -> RBSequence {
        rb_apply(f)
    }
    fn weight(&self) -> Rational {
        Rational::one()
    }
}

/// `βR`, of weight `βθ`.
#[derive(Debug, Clone)]
pub struct Scaled<R> {
    pub factor: Rational,
    pub inner: R,
}

impl<R: RotaBaxterOperator> RotaBaxterOperator for Scaled<R> {
    fn apply(&self, f: &RBSequence) -> RBSequence {
        self.inner.apply(f).scale(to_f64(&self.factor))
    }
    fn weight(&self) -> Rational {
        &self.factor * self.inner.weight()
    }
}

/// `R(f)(n) = N·f(n)` for a fixed `N` with `N² = 0`; weight zero.
#[derive(Debug, Clone)]
pub struct NilpotentMultiplier {
    pub factor: Mat,
}

impl NilpotentMultiplier {
    /// The elementary matrix `E_{0,d−1}` (square zero for `d ≥ 2`).
    pub fn corner(dim: usize) -> Self {
        let mut data = vec![0.0; dim * dim];
        data[dim - 1] = 1.0;
        NilpotentMultiplier { factor: Mat::from_row_major(dim, data) }
    }
}

impl RotaBaxterOperator for NilpotentMultiplier {
    fn apply(&self, f: &RBSequence) -> RBSequence {
        let n = RBSequence::constant(f.len(), &self.factor);
        n.mul(f).expect("factor matches sequence dimension")
    }
    fn weight(&self) -> Rational {
        Rational::zero()
    }
}

/// Summation operator.
pub fn rb_apply(f: &RBSequence) -> RBSequence {
    let sz = f.dim * f.dim;
    let mut data = vec![0.0; f.data.len()];
    for n in 1..f.len {
        for e in 0..sz {
            data[n * sz + e] = data[(n - 1) * sz + e] + f.data[(n - 1) * sz + e];
        }
    }
    RBSequence { data, ..*f }
}

/// `R(f)g + fR(g) + θfg` with the summation operator.
pub fn rb_product(f: &RBSequence, g: &RBSequence, theta: &Rational) -> Result<RBSequence> {
    product_with(&Summation, f, g, theta)
}

fn product_with<R: RotaBaxterOperator + ?Sized>(op: &R, f: &RBSequence, g: &RBSequence, theta: &Rational) -> Result<RBSequence> {
    let a = op.apply(f).mul(g)?;
    let b = f.mul(&op.apply(g))?;
    let c = f.mul(g)?.scale(to_f64(theta));
    a.add(&b)?.add(&c)
}

/// An operator with the algebra it acts on.
#[derive(Debug, Clone)]
pub struct RBStructure<R> {
    op: R,
}

impl<R: RotaBaxterOperator> RBStructure<R> {
    pub fn new(op: R) -> Self {
        RBStructure { op }
    }

    pub fn operator(&self) -> &R {
        &self.op
    }

    pub fn weight(&self) -> Rational {
        self.op.weight()
    }

    /// `x ∗_θ y` with `θ` the operator's weight.
    pub fn product(&self, f: &RBSequence, g: &RBSequence) -> Result<RBSequence> {
        product_with(&self.op, f, g, &self.op.weight())
    }

    /// Max-norm of `R(x)R(y) − R(R(x)y + xR(y) + θxy)`.
    pub fn relation_residual(&self, x: &RBSequence, y: &RBSequence) -> Result<f64> {
        let lhs = self.op.apply(x).mul(&self.op.apply(y))?;
        let rhs = self.op.apply(&self.product(x, y)?);
        lhs.max_abs_diff(&rhs)
    }
}

impl Default for RBStructure<Summation> {
    fn default() -> Self {
        RBStructure::new(Summation)
    }
}

/// Weight-one Rota–Baxter algebra viewed as a quasi-shuffle algebra.
#[derive(Debug, Clone)]
pub struct RbQuasiShuffle<R> {
    structure: RBStructure<R>,
    len: usize,
    dim: usize,
}

pub fn rb_to_quasi_shuffle<R: RotaBaxterOperator>(structure: RBStructure<R>, len: usize, dim: usize) -> Result<RbQuasiShuffle<R>> {
    let w = structure.weight();
    if !w.is_one() {
        return Err(Error::WrongWeight(w.to_string()));
    }
    Ok(RbQuasiShuffle { structure, len, dim })
}

impl<R: RotaBaxterOperator> RbQuasiShuffle<R> {
    pub fn structure(&self) -> &RBStructure<R> {
        &self.structure
    }

    fn r(&self, f: &RBSequence) -> RBSequence {
        self.structure.op.apply(f)
    }
}

impl<R: RotaBaxterOperator> Module for RbQuasiShuffle<R> {
    type Elem = RBSequence;

    fn zero(&self) -> RBSequence {
        RBSequence::zeros(self.len, self.dim)
    }
    fn add(&self, a: &RBSequence, b: &RBSequence) -> Result<RBSequence> {
        a.add(b)
    }
    fn sub(&self, a: &RBSequence, b: &RBSequence) -> Result<RBSequence> {
        a.sub(b)
    }
    fn scale(&self, a: &RBSequence, c: &Rational) -> RBSequence {
        a.scale(to_f64(c))
    }
    fn residual(&self, a: &RBSequence, b: &RBSequence) -> Result<f64> {
        a.max_abs_diff(b)
    }
    fn magnitude(&self, a: &RBSequence) -> f64 {
        a.max_abs()
    }
    fn is_exact(&self) -> bool {
        false
    }
}

impl<R: RotaBaxterOperator> QuasiShuffle for RbQuasiShuffle<R> {
    fn prec(&self, a: &RBSequence, b: &RBSequence) -> Result<RBSequence> {
        a.mul(&self.r(b))
    }
    fn succ(&self, a: &RBSequence, b: &RBSequence) -> Result<RBSequence> {
        self.r(a).mul(b)
    }
    fn bracket(&self, a: &RBSequence, b: &RBSequence) -> Result<RBSequence> {
        a.mul(b)
    }
    fn product(&self, a: &RBSequence, b: &RBSequence) -> Result<RBSequence> {
        self.structure.product(a, b)
    }
}

/// The whole bracket is a jump: summation is a purely discrete integral.
impl<R: RotaBaxterOperator> SingularQuasiShuffle for RbQuasiShuffle<R> {
    fn bracket_c(&self, a: &RBSequence, b: &RBSequence) -> Result<RBSequence> {
        a.check(b)?;
        Ok(self.zero())
    }
    fn bracket_j(&self, a: &RBSequence, b: &RBSequence) -> Result<RBSequence> {
        a.mul(b)
    }
    fn has_jumps(&self, a: &RBSequence) -> bool {
        a.max_abs() > 0.0
    }
}
