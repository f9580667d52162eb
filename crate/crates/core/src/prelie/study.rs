//! Numerical Magnus experiments on matrix paths.

use std::sync::Arc;

use rayon::prelude::*;

use crate::algebra::Module;
use crate::error::{Error, Result};
use crate::process::{integer_path, sample_path, Grid, GridPath, JumpPattern, Mat, PathAlgebra, PathKind};

use super::exponential::magnus;
use super::flavor::{flavored, Flavor};
use super::linalg::expm;

/// Driver family for [`magnus_study`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Driver {
    /// Entries in `{−1, 0, 1}` scaled by `scale / dim`, so each increment has
    /// Frobenius norm at most `scale`.
    Integer,
    /// Brownian increments on `[0, 1]`, multiplied by `scale`.
    Brownian,
    Zero,
}

#[derive(Debug, Clone)]
pub struct MagnusConfig {
    pub flavor: Flavor,
    pub driver: Driver,
    pub dim: usize,
    pub steps: usize,
    pub max_order: usize,
    pub trials: usize,
    pub seed: u64,
    pub scale: f64,
}

impl Default for MagnusConfig {
    fn default() -> Self {
        MagnusConfig {
            flavor: Flavor::Ito,
            driver: Driver::Integer,
            dim: 3,
            steps: 8,
            max_order: 6,
            trials: 20,
            seed: 0,
            scale: 0.1,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct MagnusRow {
    pub order: usize,
    pub mean: f64,
    pub std: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct MagnusStudy {
    pub rows: Vec<MagnusRow>,
    /// Mean error at the highest order on `K` and `4K` steps, when requested.
    pub floor: Option<(f64, f64)>,
}

impl MagnusStudy {
    pub fn strictly_decreasing(&self) -> bool {
        self.rows.windows(2).all(|w| w[1].mean < w[0].mean)
    }

    /// `order,mean_err,std`, plus a commented floor line when present.
    pub fn to_csv(&self) -> Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(["order", "mean_err", "std"])?;
        for r in &self.rows {
            w.write_record([r.order.to_string(), format!("{:.16e}", r.mean), format!("{:.16e}", r.std)])?;
        }
        let mut out = String::from_utf8(w.into_inner().map_err(|e| Error::Io(e.to_string()))?).map_err(|e| Error::Io(e.to_string()))?;
        if let Some((k, k4)) = self.floor {
            out.push_str(&format!("# floor,{k:.16e},{k4:.16e}\n"));
        }
        Ok(out)
    }
}

/// Exact grid-level solution of the right exponential equation:
/// `Π(1+ΔX_k)` (Itô) or `Π(1−½ΔX_k)⁻¹(1+½ΔX_k)` (Stratonovich, no jumps),
/// later steps multiplying on the left.
pub fn reference_exponential(flavor: Flavor, x: &GridPath) -> Result<Mat> {
    let d = x.dim();
    let id = Mat::identity(d);
    let mut e = id.clone();
    for k in 1..=x.steps() {
        let dx = x.increment(k);
        let step = match flavor {
            Flavor::Ito => id.add(&dx),
            Flavor::Strat => {
                let half = dx.scale(0.5);
                let inv = id.sub(&half).to_nalgebra().try_inverse().ok_or_else(|| Error::Config("singular Cayley factor".into()))?;
                Mat::from_nalgebra(&inv).mul(&id.add(&half))
            }
        };
        e = step.mul(&e);
    }
    Ok(e)
}

/// Frobenius errors `‖exp(Ω_N(t_K)) − E(t_K)‖` for `N = 1..=max_order`.
pub fn magnus_errors(flavor: Flavor, x: &GridPath, max_order: usize) -> Result<Vec<f64>> {
    let b = PathAlgebra::new(x.grid().clone(), x.dim());
    let omega = magnus(&flavored(&b, flavor), x, max_order)?;
    let target = reference_exponential(flavor, x)?;
    let mut partial = b.zero();
    let mut out = Vec::with_capacity(max_order);
    for c in omega.components() {
        partial = b.add(&partial, c)?;
        out.push(expm(&partial.terminal()).sub(&target).frobenius());
    }
    Ok(out)
}

pub fn magnus_driver(cfg: &MagnusConfig, grid: &Arc<Grid>, trial: u64) -> Result<GridPath> {
    match cfg.driver {
        Driver::Integer => Ok(integer_path(grid, cfg.dim, cfg.seed, trial, 1, JumpPattern::None)?.scale(cfg.scale / cfg.dim as f64)),
        Driver::Brownian => Ok(sample_path(PathKind::Brownian, cfg.dim, grid, cfg.seed, trial)?.scale(cfg.scale)),
        Driver::Zero => Ok(GridPath::zero(grid.clone(), cfg.dim)),
    }
}

fn mean_std(v: &[f64]) -> (f64, f64) {
    let n = v.len() as f64;
    let mean = v.iter().sum::<f64>() / n;
    if v.len() < 2 {
        return (mean, 0.0);
    }
    let var = v.iter().map(|e| (e - mean).powi(2)).sum::<f64>() / (n - 1.0);
    (mean, var.sqrt())
}

fn errors_table(cfg: &MagnusConfig, steps: usize) -> Result<Vec<Vec<f64>>> {
    let grid = Arc::new(Grid::uniform(steps, 1.0)?);
    (0..cfg.trials as u64)
        .into_par_iter()
        .map(|t| magnus_errors(cfg.flavor, &magnus_driver(cfg, &grid, t)?, cfg.max_order))
        .collect()
}

/// Mean and standard deviation over trials of the Magnus truncation error.
///
/// Stratonovich runs also report the error at the highest order on a grid four
/// times finer, which estimates the discretization floor.
pub fn magnus_study(cfg: &MagnusConfig) -> Result<MagnusStudy> {
    if cfg.max_order == 0 || cfg.trials == 0 || cfg.dim == 0 {
        return Err(Error::Config("order, trials and dimension must be positive".into()));
    }
    let table = errors_table(cfg, cfg.steps)?;
    let rows = (0..cfg.max_order)
        .map(|n| {
            let col: Vec<f64> = table.iter().map(|r| r[n]).collect();
            let (mean, std) = mean_std(&col);
            MagnusRow { order: n + 1, mean, std }
        })
        .collect();
    let floor = match cfg.flavor {
        Flavor::Strat => {
            let last = |t: &[Vec<f64>]| mean_std(&t.iter().map(|r| r[cfg.max_order - 1]).collect::<Vec<_>>()).0;
            Some((last(&table), last(&errors_table(cfg, 4 * cfg.steps)?)))
        }
        Flavor::Ito => None,
    };
    Ok(MagnusStudy { rows, floor })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ito_errors_decrease() {
        let s = magnus_study(&MagnusConfig::default()).unwrap();
        assert!(s.strictly_decreasing(), "{:?}", s.rows);
        assert!(s.rows[5].mean <= 1e-6, "{:?}", s.rows);
    }

    #[test]
    fn zero_driver_has_no_error() {
        let cfg = MagnusConfig { driver: Driver::Zero, ..MagnusConfig::default() };
        let s = magnus_study(&cfg).unwrap();
        assert!(s.rows.iter().all(|r| r.mean == 0.0));
    }

    #[test]
    fn strat_errors_reach_floor() {
        let cfg = MagnusConfig { flavor: Flavor::Strat, driver: Driver::Brownian, dim: 2, steps: 1024, max_order: 4, trials: 4, scale: 0.5, ..MagnusConfig::default() };
        let s = magnus_study(&cfg).unwrap();
        assert!(s.strictly_decreasing());
    }
}
