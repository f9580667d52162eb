use std::f64::consts::PI;
use std::sync::Arc;

use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::grid::Grid;
use super::matrix::Mat;
use super::path::GridPath;
use crate::error::Result;

/// Counter-based random source: the draws for `(seed, stream, step)` do not
/// depend on which other steps or streams were generated, or in what order.
#[derive(Clone)]
pub struct StepRng {
    base: ChaCha8Rng,
}

/// 32-bit words reserved per step.
const STEP_STRIDE: u128 = 1 << 16;
/// Stream shared by every path of a seed: jump times.
const JUMP_STREAM: u64 = u64::MAX;
/// Offset for per-path coefficient streams.
const COEFF_STREAM: u64 = 1 << 62;

impl StepRng {
    pub fn new(seed: u64, stream: u64) -> Self {
        let mut base = ChaCha8Rng::seed_from_u64(seed);
        base.set_stream(stream);
        StepRng { base }
    }

    pub fn at(&self, step: u64) -> StepDraws {
        let mut r = self.base.clone();
        r.set_word_pos(step as u128 * STEP_STRIDE);
        StepDraws { rng: r }
    }
}

pub struct StepDraws {
    rng: ChaCha8Rng,
}

impl StepDraws {
    /// Uniform on `(0, 1]`.
    pub fn uniform(&mut self) -> f64 {
        1.0 - (self.rng.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// Standard normal by Box–Muller.
    pub fn normal(&mut self) -> f64 {
        let u1 = self.uniform();
        let u2 = self.uniform();
        (-2.0 * u1.ln()).sqrt() * (2.0 * PI * u2).cos()
    }

    pub fn int_in(&mut self, lo: i64, hi: i64) -> i64 {
        self.rng.random_range(lo..=hi)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PathKind {
    /// i.i.d. `N(0, Δt)` increments per entry; no jumps.
    Brownian,
    /// Smooth deterministic-looking paths `a·sin(ωt) + b·t` with random coefficients.
    FiniteVariation,
    /// O(1) Gaussian increments at jump times only.
    CompoundJump,
    /// Brownian plus compound jump.
    Mixed,
}

impl std::str::FromStr for PathKind {
    type Err = crate::error::Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "brownian" => Ok(PathKind::Brownian),
            "finite_variation" | "fv" => Ok(PathKind::FiniteVariation),
            "compound_jump" | "jump" => Ok(PathKind::CompoundJump),
            "mixed" => Ok(PathKind::Mixed),
            other => Err(crate::error::Error::Config(format!("unknown path kind `{other}`"))),
        }
    }
}

/// Expected number of jumps over the horizon.
const JUMP_INTENSITY: f64 = 6.0;

/// Jump steps shared by all paths sampled with `seed`.
pub fn jump_steps(grid: &Grid, seed: u64) -> Vec<usize> {
    let rng = StepRng::new(seed, JUMP_STREAM);
    let rate = JUMP_INTENSITY / grid.horizon();
    (1..=grid.steps())
        .filter(|&k| {
            let p = 1.0 - (-rate * grid.dt(k)).exp();
            rng.at(k as u64).uniform() <= p
        })
        .collect()
}

/// Samples path `path_id` of the given kind. Paths with the same seed share
/// jump times; different `path_id`s are independent.
pub fn sample_path(kind: PathKind, dim: usize, grid: &Arc<Grid>, seed: u64, path_id: u64) -> Result<GridPath> {
    let sz = dim * dim;
    let k = grid.steps();
    let rng = StepRng::new(seed, path_id);
    match kind {
        PathKind::FiniteVariation => {
            let mut coeff = StepRng::new(seed, COEFF_STREAM + path_id).at(0);
            let params: Vec<(f64, f64, f64)> =
                (0..sz).map(|_| (coeff.normal(), 1.0 + 4.0 * (1.0 - coeff.uniform()), coeff.normal())).collect();
            let mut values = Vec::with_capacity((k + 1) * sz);
            for &t in grid.times() {
                values.extend(params.iter().map(|(a, w, b)| a * (w * t).sin() + b * t));
            }
            GridPath::from_raw_values(grid.clone(), dim, values, vec![false; k + 1])
        }
        _ => {
            let jumps = match kind {
                PathKind::Brownian => Vec::new(),
                _ => jump_steps(grid, seed),
            };
            let mut is_jump = vec![false; k + 1];
            for &j in &jumps {
                is_jump[j] = true;
            }
            let mut inc = vec![0.0; (k + 1) * sz];
            for s in 1..=k {
                let mut d = rng.at(s as u64);
                let out = &mut inc[s * sz..(s + 1) * sz];
                if matches!(kind, PathKind::Brownian | PathKind::Mixed) {
                    let sd = grid.dt(s).sqrt();
                    out.iter_mut().for_each(|v| *v += sd * d.normal());
                }
                if is_jump[s] {
                    out.iter_mut().for_each(|v| *v += 0.5 * d.normal());
                }
            }
            GridPath::from_raw_increments(grid.clone(), dim, inc, is_jump)
        }
    }
}

/// Jump flags attached to integer test paths.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum JumpPattern {
    None,
    All,
    /// Increments supported on a random shared subset, which is flagged.
    PureJumpSubset,
    /// Random shared subset flagged; increments at every step.
    Mixed,
}

/// Integer-valued path with increments in `[-max_abs, max_abs]`: every product
/// of such paths is exact in double precision at test sizes.
pub fn integer_path(grid: &Arc<Grid>, dim: usize, seed: u64, path_id: u64, max_abs: i64, pattern: JumpPattern) -> Result<GridPath> {
    let k = grid.steps();
    let shared = StepRng::new(seed, JUMP_STREAM);
    let flagged: Vec<bool> = (0..=k)
        .map(|s| match pattern {
            JumpPattern::None => false,
            JumpPattern::All => s > 0,
            JumpPattern::PureJumpSubset | JumpPattern::Mixed => s > 0 && shared.at(s as u64).uniform() <= 0.4,
        })
        .collect();
    let rng = StepRng::new(seed, path_id);
    let incs: Vec<Mat> = (1..=k)
        .map(|s| {
            let mut d = rng.at(s as u64);
            let data = (0..dim * dim)
                .map(|_| {
                    if pattern == JumpPattern::PureJumpSubset && !flagged[s] {
                        0.0
                    } else {
                        d.int_in(-max_abs, max_abs) as f64
                    }
                })
                .collect();
            Mat::from_row_major(dim, data)
        })
        .collect();
    let jumps: Vec<usize> = (1..=k).filter(|&s| flagged[s]).collect();
    GridPath::from_increments(grid.clone(), dim, &incs, &jumps)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::process::{bracket_split, delta, path_bracket};

    #[test]
    fn deterministic_given_seed() {
        let g = Arc::new(Grid::uniform(64, 1.0).unwrap());
        for kind in [PathKind::Brownian, PathKind::FiniteVariation, PathKind::CompoundJump, PathKind::Mixed] {
            let a = sample_path(kind, 2, &g, 11, 3).unwrap();
            let b = sample_path(kind, 2, &g, 11, 3).unwrap();
            assert_eq!(a, b);
            let c = sample_path(kind, 2, &g, 12, 3).unwrap();
            assert_ne!(a, c);
        }
    }

    #[test]
    fn draws_do_not_depend_on_order() {
        let r = StepRng::new(5, 1);
        let late = r.at(40).normal();
        let _ = r.at(3).normal();
        assert_eq!(r.at(40).normal(), late);
    }

    #[test]
    fn compound_jump_supported_on_flags() {
        let g = Arc::new(Grid::uniform(200, 1.0).unwrap());
        let x = sample_path(PathKind::CompoundJump, 1, &g, 4, 0).unwrap();
        let d = delta(&x);
        let flagged = x.jump_steps();
        assert!(!flagged.is_empty());
        for k in 1..=200 {
            if !x.is_jump(k) {
                assert_eq!(d.value(k).get(0, 0), 0.0);
            }
        }
        let s = bracket_split(&x, &x).unwrap();
        assert_eq!(s.continuous.max_abs(), 0.0);
    }

    #[test]
    fn finite_variation_linear_path_bracket() {
        // X(t) = t: [X,X](t_K) = Σ Δt² = 1/K
        for &k in &[16usize, 64, 256] {
            let g = Arc::new(Grid::uniform(k, 1.0).unwrap());
            let m: Vec<Mat> = (1..=k).map(|s| Mat::scalar(g.dt(s))).collect();
            let x = GridPath::from_increments(g.clone(), 1, &m, &[]).unwrap();
            let br = path_bracket(&x, &x).unwrap().terminal().get(0, 0);
            assert!((br - 1.0 / k as f64).abs() < 1e-15);
        }
    }

    #[test]
    fn brownian_quadratic_variation() {
        // |Σ(ΔW)² − T| ≤ 5·sqrt(2T²/K) in at least 95 of 100 seeds.
        let k = 1 << 14;
        let g = Arc::new(Grid::uniform(k, 1.0).unwrap());
        let bound = 5.0 * (2.0 / k as f64).sqrt();
        let ok = (0..100)
            .filter(|&seed| {
                let w = sample_path(PathKind::Brownian, 1, &g, seed, 0).unwrap();
                let qv = bracket_split(&w, &w).unwrap().continuous.terminal().get(0, 0);
                (qv - 1.0).abs() <= bound
            })
            .count();
        assert!(ok >= 95, "{ok} of 100 within bound");
    }
}
