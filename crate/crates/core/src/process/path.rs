use std::sync::Arc;

use super::grid::Grid;
use super::matrix::{matmul_acc, Mat};
use crate::algebra::{Module, QuasiShuffle, SingularQuasiShuffle};
use crate::error::{Error, Result};
use crate::linear::{to_f64, Rational};

/// Matrix-valued path `X(t_k)`, `k = 0..=K`, with `X(t₀) = 0` and a set `J` of
/// steps classified as jumps.
///
/// Both values and increments are stored so that half-shuffles of derived
/// paths reuse the exact per-step terms instead of re-differencing sums.
#[derive(Debug, Clone)]
pub struct GridPath {
    grid: Arc<Grid>,
    dim: usize,
    values: Vec<f64>,
    increments: Vec<f64>,
    jumps: Vec<bool>,
}

impl PartialEq for GridPath {
    fn eq(&self, other: &Self) -> bool {
        same_grid(&self.grid, &other.grid)
            && self.dim == other.dim
            && self.values == other.values
            && self.jumps == other.jumps
    }
}

fn same_grid(a: &Arc<Grid>, b: &Arc<Grid>) -> bool {
    Arc::ptr_eq(a, b) || a == b
}

impl GridPath {
    /// Builds a path from per-step increments `ΔX_1..ΔX_K` (row-major `d×d` each).
    pub fn from_increments(grid: Arc<Grid>, dim: usize, increments: &[Mat], jumps: &[usize]) -> Result<Self> {
        let k = grid.steps();
        if increments.len() != k {
            return Err(Error::InvalidGrid(format!("{} increments for {} steps", increments.len(), k)));
        }
        let sz = dim * dim;
        let mut inc = vec![0.0; (k + 1) * sz];
        for (s, m) in increments.iter().enumerate() {
            if m.dim() != dim {
                return Err(Error::DimMismatch(m.dim(), dim));
            }
            inc[(s + 1) * sz..(s + 2) * sz].copy_from_slice(m.as_slice());
        }
        Self::from_raw_increments(grid, dim, inc, flags(k, jumps)?)
    }

    /// Builds a path from values `X(t_0..t_K)`; `X(t₀)` must vanish.
    pub fn from_values(grid: Arc<Grid>, dim: usize, values: &[Mat], jumps: &[usize]) -> Result<Self> {
        let k = grid.steps();
        if values.len() != k + 1 {
            return Err(Error::InvalidGrid(format!("{} values for {} grid points", values.len(), k + 1)));
        }
        let mut flat = Vec::with_capacity((k + 1) * dim * dim);
        for m in values {
            if m.dim() != dim {
                return Err(Error::DimMismatch(m.dim(), dim));
            }
            flat.extend_from_slice(m.as_slice());
        }
        Self::from_raw_values(grid, dim, flat, flags(k, jumps)?)
    }

    pub(crate) fn from_raw_increments(grid: Arc<Grid>, dim: usize, increments: Vec<f64>, jumps: Vec<bool>) -> Result<Self> {
        let sz = dim * dim;
        if dim == 0 || increments.len() != (grid.steps() + 1) * sz {
            return Err(Error::InvalidGrid("increment buffer has wrong length".into()));
        }
        if increments[..sz].iter().any(|v| *v != 0.0) {
            return Err(Error::NonZeroStart);
        }
        let mut values = vec![0.0; increments.len()];
        for k in 1..=grid.steps() {
            for e in 0..sz {
                values[k * sz + e] = values[(k - 1) * sz + e] + increments[k * sz + e];
            }
        }
        Ok(GridPath { grid, dim, values, increments, jumps })
    }

    pub(crate) fn from_raw_values(grid: Arc<Grid>, dim: usize, values: Vec<f64>, jumps: Vec<bool>) -> Result<Self> {
        let sz = dim * dim;
        if dim == 0 || values.len() != (grid.steps() + 1) * sz {
            return Err(Error::InvalidGrid("value buffer has wrong length".into()));
        }
        if values[..sz].iter().any(|v| *v != 0.0) {
            return Err(Error::NonZeroStart);
        }
        let mut increments = vec![0.0; values.len()];
        for k in 1..=grid.steps() {
            for e in 0..sz {
                increments[k * sz + e] = values[k * sz + e] - values[(k - 1) * sz + e];
            }
        }
        Ok(GridPath { grid, dim, values, increments, jumps })
    }

    pub fn zero(grid: Arc<Grid>, dim: usize) -> Self {
        let n = (grid.steps() + 1) * dim * dim;
        let jumps = vec![false; grid.steps() + 1];
        GridPath { grid, dim, values: vec![0.0; n], increments: vec![0.0; n], jumps }
    }

    pub fn grid(&self) -> &Arc<Grid> {
        &self.grid
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn steps(&self) -> usize {
        self.grid.steps()
    }

    pub fn value(&self, k: usize) -> Mat {
        Mat::from_row_major(self.dim, self.value_slice(k).to_vec())
    }

    pub fn increment(&self, k: usize) -> Mat {
        Mat::from_row_major(self.dim, self.increment_slice(k).to_vec())
    }

    pub fn terminal(&self) -> Mat {
        self.value(self.steps())
    }

    pub(crate) fn value_slice(&self, k: usize) -> &[f64] {
        let sz = self.dim * self.dim;
        &self.values[k * sz..(k + 1) * sz]
    }

    pub(crate) fn increment_slice(&self, k: usize) -> &[f64] {
        let sz = self.dim * self.dim;
        &self.increments[k * sz..(k + 1) * sz]
    }

    /// Steps flagged as jumps, ascending.
    pub fn jump_steps(&self) -> Vec<usize> {
        (1..self.jumps.len()).filter(|&k| self.jumps[k]).collect()
    }

    pub fn is_jump(&self, k: usize) -> bool {
        self.jumps[k]
    }

    pub fn with_jumps(mut self, jumps: &[usize]) -> Result<Self> {
        self.jumps = flags(self.steps(), jumps)?;
        Ok(self)
    }

    /// Max absolute entry over all grid points.
    pub fn max_abs(&self) -> f64 {
        self.values.iter().fold(0.0, |m, v| m.max(v.abs()))
    }

    /// Max absolute entry of `self − other` over all grid points.
    pub fn max_abs_diff(&self, other: &GridPath) -> Result<f64> {
        check_pair(self, other)?;
        Ok(self.values.iter().zip(&other.values).fold(0.0, |m, (a, b)| m.max((a - b).abs())))
    }

    fn map_pair(&self, other: &GridPath, f: impl Fn(f64, f64) -> f64) -> Result<GridPath> {
        check_pair(self, other)?;
        let increments = self.increments.iter().zip(&other.increments).map(|(a, b)| f(*a, *b)).collect();
        Self::from_raw_increments(self.grid.clone(), self.dim, increments, union(&self.jumps, &other.jumps))
    }

    pub fn add(&self, other: &GridPath) -> Result<GridPath> {
        self.map_pair(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &GridPath) -> Result<GridPath> {
        self.map_pair(other, |a, b| a - b)
    }

    pub fn scale(&self, c: f64) -> GridPath {
        let mut out = self.clone();
        out.increments.iter_mut().for_each(|v| *v *= c);
        out.values.iter_mut().for_each(|v| *v *= c);
        out
    }
}

fn flags(steps: usize, jumps: &[usize]) -> Result<Vec<bool>> {
    let mut f = vec![false; steps + 1];
    for &k in jumps {
        if k == 0 || k > steps {
            return Err(Error::InvalidGrid(format!("jump step {k} outside 1..={steps}")));
        }
        f[k] = true;
    }
    Ok(f)
}

fn union(a: &[bool], b: &[bool]) -> Vec<bool> {
    a.iter().zip(b).map(|(x, y)| *x || *y).collect()
}

fn check_pair(x: &GridPath, y: &GridPath) -> Result<()> {
    if !same_grid(&x.grid, &y.grid) {
        return Err(Error::GridMismatch);
    }
    if x.dim != y.dim {
        return Err(Error::DimMismatch(x.dim, y.dim));
    }
    Ok(())
}

/// Per-step bilinear integral: increment at step `k` is `term(X, Y, k)`,
/// restricted to steps accepted by `keep`.
fn integrate(
    x: &GridPath,
    y: &GridPath,
    keep: impl Fn(usize, &[bool]) -> bool,
    term: impl Fn(&GridPath, &GridPath, usize, &mut [f64]),
) -> Result<GridPath> {
    check_pair(x, y)?;
    let d = x.dim;
    let sz = d * d;
    let jumps = union(&x.jumps, &y.jumps);
    let mut inc = vec![0.0; x.increments.len()];
    for k in 1..=x.steps() {
        if keep(k, &jumps) {
            term(x, y, k, &mut inc[k * sz..(k + 1) * sz]);
        }
    }
    GridPath::from_raw_increments(x.grid.clone(), d, inc, jumps)
}

/// `(X ≺ Y)(t_m) = Σ_{k≤m} ΔX_k · Y(t_{k−1})`.
pub fn path_prec(x: &GridPath, y: &GridPath) -> Result<GridPath> {
    integrate(x, y, |_, _| true, |x, y, k, out| {
        matmul_acc(x.increment_slice(k), y.value_slice(k - 1), out, x.dim)
    })
}

/// `(X ≻ Y)(t_m) = Σ_{k≤m} X(t_{k−1}) · ΔY_k`.
pub fn path_succ(x: &GridPath, y: &GridPath) -> Result<GridPath> {
    integrate(x, y, |_, _| true, |x, y, k, out| {
        matmul_acc(x.value_slice(k - 1), y.increment_slice(k), out, x.dim)
    })
}

/// `[X, Y](t_m) = Σ_{k≤m} ΔX_k · ΔY_k`.
pub fn path_bracket(x: &GridPath, y: &GridPath) -> Result<GridPath> {
    integrate(x, y, |_, _| true, bracket_term)
}

fn bracket_term(x: &GridPath, y: &GridPath, k: usize, out: &mut [f64]) {
    matmul_acc(x.increment_slice(k), y.increment_slice(k), out, x.dim)
}

/// Pointwise matrix product `X(t_k)·Y(t_k)`.
pub fn path_product(x: &GridPath, y: &GridPath) -> Result<GridPath> {
    check_pair(x, y)?;
    let d = x.dim;
    let sz = d * d;
    let mut values = vec![0.0; x.values.len()];
    for k in 0..=x.steps() {
        matmul_acc(x.value_slice(k), y.value_slice(k), &mut values[k * sz..(k + 1) * sz], d);
    }
    GridPath::from_raw_values(x.grid.clone(), d, values, union(&x.jumps, &y.jumps))
}

/// Path of jumps: its value at `t_k` is `ΔX_k`.
pub fn delta(x: &GridPath) -> GridPath {
    GridPath::from_raw_values(x.grid.clone(), x.dim, x.increments.clone(), x.jumps.clone())
        .expect("increment buffer starts at zero")
}

#[derive(Debug, Clone)]
pub struct BracketSplit {
    pub total: GridPath,
    pub continuous: GridPath,
    pub jump: GridPath,
}

/// Splits `[X, Y]` over steps in `J` (jump) and outside `J` (continuous), with
/// `J` the union of both flag sets.
pub fn bracket_split(x: &GridPath, y: &GridPath) -> Result<BracketSplit> {
    Ok(BracketSplit {
        total: path_bracket(x, y)?,
        continuous: integrate(x, y, |k, j| !j[k], bracket_term)?,
        jump: integrate(x, y, |k, j| j[k], bracket_term)?,
    })
}

/// Backend object for paths on a fixed grid and dimension.
#[derive(Debug, Clone)]
pub struct PathAlgebra {
    grid: Arc<Grid>,
    dim: usize,
}

impl PathAlgebra {
    pub fn new(grid: Arc<Grid>, dim: usize) -> Self {
        PathAlgebra { grid, dim }
    }

    pub fn grid(&self) -> &Arc<Grid> {
        &self.grid
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    fn check(&self, x: &GridPath) -> Result<()> {
        if !same_grid(&self.grid, &x.grid) {
            return Err(Error::GridMismatch);
        }
        if self.dim != x.dim {
            return Err(Error::DimMismatch(self.dim, x.dim));
        }
        Ok(())
    }

    fn check2(&self, x: &GridPath, y: &GridPath) -> Result<()> {
        self.check(x)?;
        self.check(y)
    }

    /// Right stochastic exponential evaluated exactly:
    /// `E(t_m) = (1+ΔX_m)(1+ΔX_{m−1})⋯(1+ΔX_1)`.
    pub fn ordered_product(&self, x: &GridPath) -> Result<Mat> {
        self.check(x)?;
        let mut e = Mat::identity(self.dim);
        for k in 1..=x.steps() {
            let step = Mat::identity(self.dim).add(&x.increment(k));
            e = step.mul(&e);
        }
        Ok(e)
    }
}

impl Module for PathAlgebra {
    type Elem = GridPath;

    fn zero(&self) -> GridPath {
        GridPath::zero(self.grid.clone(), self.dim)
    }
    fn add(&self, a: &GridPath, b: &GridPath) -> Result<GridPath> {
        self.check2(a, b)?;
        a.add(b)
    }
    fn sub(&self, a: &GridPath, b: &GridPath) -> Result<GridPath> {
        self.check2(a, b)?;
        a.sub(b)
    }
    fn scale(&self, a: &GridPath, c: &Rational) -> GridPath {
        a.scale(to_f64(c))
    }
    fn residual(&self, a: &GridPath, b: &GridPath) -> Result<f64> {
        self.check2(a, b)?;
        a.max_abs_diff(b)
    }
    fn magnitude(&self, a: &GridPath) -> f64 {
        a.max_abs()
    }
    fn is_exact(&self) -> bool {
        false
    }
}

impl QuasiShuffle for PathAlgebra {
    fn prec(&self, a: &GridPath, b: &GridPath) -> Result<GridPath> {
        self.check2(a, b)?;
        path_prec(a, b)
    }
    fn succ(&self, a: &GridPath, b: &GridPath) -> Result<GridPath> {
        self.check2(a, b)?;
        path_succ(a, b)
    }
    fn bracket(&self, a: &GridPath, b: &GridPath) -> Result<GridPath> {
        self.check2(a, b)?;
        path_bracket(a, b)
    }
    fn product(&self, a: &GridPath, b: &GridPath) -> Result<GridPath> {
        self.check2(a, b)?;
        path_product(a, b)
    }
}

impl SingularQuasiShuffle for PathAlgebra {
    fn bracket_c(&self, a: &GridPath, b: &GridPath) -> Result<GridPath> {
        self.check2(a, b)?;
        integrate(a, b, |k, j| !j[k], bracket_term)
    }
    fn bracket_j(&self, a: &GridPath, b: &GridPath) -> Result<GridPath> {
        self.check2(a, b)?;
        integrate(a, b, |k, j| j[k], bracket_term)
    }
    fn has_jumps(&self, a: &GridPath) -> bool {
        a.jumps.iter().any(|j| *j)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn scalar_path(grid: &Arc<Grid>, incs: &[f64], jumps: &[usize]) -> GridPath {
        let m: Vec<Mat> = incs.iter().map(|v| Mat::scalar(*v)).collect();
        GridPath::from_increments(grid.clone(), 1, &m, jumps).unwrap()
    }

    #[test]
    fn single_increment_half_shuffles_vanish() {
        let g = Arc::new(Grid::uniform(1, 1.0).unwrap());
        let x = scalar_path(&g, &[3.0], &[]);
        assert_eq!(path_prec(&x, &x).unwrap().terminal().get(0, 0), 0.0);
        assert_eq!(path_succ(&x, &x).unwrap().terminal().get(0, 0), 0.0);
        assert_eq!(path_bracket(&x, &x).unwrap().terminal().get(0, 0), 9.0);
        assert_eq!(path_product(&x, &x).unwrap().terminal().get(0, 0), 9.0);
    }

    #[test]
    fn two_step_matrix_bracket() {
        let g = Arc::new(Grid::uniform(2, 1.0).unwrap());
        let a1 = Mat::from_row_major(2, vec![1.0, -2.0, 0.0, 3.0]);
        let a2 = Mat::from_row_major(2, vec![2.0, 1.0, -1.0, 1.0]);
        let b1 = Mat::from_row_major(2, vec![0.0, 1.0, 4.0, -1.0]);
        let b2 = Mat::from_row_major(2, vec![-3.0, 2.0, 1.0, 1.0]);
        let x = GridPath::from_increments(g.clone(), 2, &[a1.clone(), a2.clone()], &[]).unwrap();
        let y = GridPath::from_increments(g.clone(), 2, &[b1.clone(), b2.clone()], &[]).unwrap();
        let direct = a1.mul(&b1).add(&a2.mul(&b2));
        let br = path_bracket(&x, &y).unwrap().terminal();
        assert_eq!(br, direct);
        let via_ibp = path_product(&x, &y)
            .unwrap()
            .sub(&path_prec(&x, &y).unwrap())
            .unwrap()
            .sub(&path_succ(&x, &y).unwrap())
            .unwrap()
            .terminal();
        assert_eq!(via_ibp, direct);
    }

    #[test]
    fn delta_of_uniform_increments() {
        let g = Arc::new(Grid::uniform(3, 1.0).unwrap());
        let x = scalar_path(&g, &[2.0, 2.0, 2.0], &[]);
        let d = delta(&x);
        for k in 1..=3 {
            assert_eq!(d.value(k).get(0, 0), 2.0);
        }
        assert_eq!(d.value(0).get(0, 0), 0.0);
        let z = GridPath::zero(g, 1);
        assert_eq!(delta(&z), z);
    }

    #[test]
    fn split_extremes() {
        let g = Arc::new(Grid::uniform(4, 1.0).unwrap());
        let x = scalar_path(&g, &[1.0, -2.0, 3.0, 0.5], &[]);
        let s = bracket_split(&x, &x).unwrap();
        assert_eq!(s.jump.max_abs(), 0.0);
        assert_eq!(s.continuous, s.total);
        let xj = x.clone().with_jumps(&[1, 2, 3, 4]).unwrap();
        let s = bracket_split(&xj, &xj).unwrap();
        assert_eq!(s.continuous.max_abs(), 0.0);
        assert_eq!(s.jump.values, s.total.values);
    }

    #[test]
    fn jump_part_from_delta() {
        let g = Arc::new(Grid::uniform(5, 1.0).unwrap());
        let x = scalar_path(&g, &[1.0, 2.0, -1.0, 4.0, 2.0], &[2, 4]);
        let y = scalar_path(&g, &[3.0, -1.0, 2.0, 1.0, 5.0], &[4]);
        let (dx, dy) = (delta(&x), delta(&y));
        let split = bracket_split(&x, &y).unwrap();
        let mut acc = 0.0;
        for m in 1..=5 {
            if m == 2 || m == 4 {
                acc += dx.value(m).get(0, 0) * dy.value(m).get(0, 0);
            }
            assert_eq!(split.jump.value(m).get(0, 0), acc);
        }
    }

    #[test]
    fn mismatches_are_errors() {
        let g1 = Arc::new(Grid::uniform(2, 1.0).unwrap());
        let g2 = Arc::new(Grid::uniform(3, 1.0).unwrap());
        let a = GridPath::zero(g1.clone(), 1);
        let b = GridPath::zero(g2, 1);
        assert_eq!(path_prec(&a, &b).unwrap_err(), Error::GridMismatch);
        let c = GridPath::zero(g1, 2);
        assert_eq!(path_succ(&a, &c).unwrap_err(), Error::DimMismatch(1, 2));
    }

    #[test]
    fn nonzero_start_rejected() {
        let g = Arc::new(Grid::uniform(1, 1.0).unwrap());
        let r = GridPath::from_values(g, 1, &[Mat::scalar(1.0), Mat::scalar(2.0)], &[]);
        assert_eq!(r.unwrap_err(), Error::NonZeroStart);
    }
}
