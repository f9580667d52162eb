use std::sync::Arc;

use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::{Module, QuasiShuffle, SingularQuasiShuffle};
use crate::error::{Error, Result};
use crate::process::{sample_path, Grid, PathAlgebra, PathKind};
use crate::strat::shuffle_residual;

use super::generators::trial_seed;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RefinementRow {
    pub k: usize,
    pub median: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RefinementTable {
    pub id: String,
    pub rows: Vec<RefinementRow>,
    pub pass: bool,
}

impl RefinementTable {
    /// Medians strictly decrease along the grid list (or vanish throughout).
    fn judge(rows: &[RefinementRow]) -> bool {
        rows.iter().all(|r| r.median == 0.0) || rows.windows(2).all(|w| w[1].median < w[0].median)
    }

    pub fn to_csv(&self) -> Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(["id", "k", "median"])?;
        for r in &self.rows {
            w.write_record([self.id.clone(), r.k.to_string(), format!("{:.16e}", r.median)])?;
        }
        String::from_utf8(w.into_inner().map_err(|e| Error::Io(e.to_string()))?).map_err(|e| Error::Io(e.to_string()))
    }
}

/// Checks with a meaningful magnitude under grid refinement.
pub const ASYMPTOTIC_IDS: &[&str] = &["S19", "S20", "S21", "REGULAR", "SH27", "SH28", "SH29"];

/// Size of the quantity that check `id` asserts to vanish on one path triple.
///
/// For the Stratonovich shuffle identities this is the closed-form bracket
/// expression, which equals the direct defect at grid level but carries no
/// cancellation roundoff.
pub fn measure(id: &str, b: &PathAlgebra, x: &crate::process::GridPath, y: &crate::process::GridPath, z: &crate::process::GridPath) -> Result<f64> {
    let pair = |l: crate::process::GridPath, r: crate::process::GridPath| b.magnitude(&l).max(b.magnitude(&r));
    match id {
        "S19" => Ok(pair(b.bracket_c(&b.bracket_c(x, y)?, z)?, b.bracket_c(x, &b.bracket_c(y, z)?)?)),
        "S20" => Ok(pair(b.bracket_j(&b.bracket_c(x, y)?, z)?, b.bracket_j(x, &b.bracket_c(y, z)?)?)),
        "S21" => Ok(pair(b.bracket_c(&b.bracket_j(x, y)?, z)?, b.bracket_c(x, &b.bracket_j(y, z)?)?)),
        "REGULAR" => Ok(pair(b.bracket(&b.bracket(x, y)?, z)?, b.bracket(x, &b.bracket(y, z)?)?)),
        "SH27" | "SH28" | "SH29" => {
            let i = (id.as_bytes()[3] - b'7') as usize;
            Ok(b.magnitude(&shuffle_residual(b, x, y, z)?.closed_form[i]))
        }
        other => Err(Error::Config(format!("check `{other}` has no asymptotic form"))),
    }
}

fn median(mut v: Vec<f64>) -> f64 {
    v.sort_by(f64::total_cmp);
    let n = v.len();
    if n == 0 {
        return 0.0;
    }
    if n % 2 == 1 {
        v[n / 2]
    } else {
        0.5 * (v[n / 2 - 1] + v[n / 2])
    }
}

/// Median over `seeds` independent path triples of [`measure`], for each grid size.
pub fn refinement_study(id: &str, kind: Option<PathKind>, dim: usize, ks: &[usize], seeds: usize, base_seed: u64) -> Result<RefinementTable> {
    let id = super::catalog::find(id)?.id;
    if !ASYMPTOTIC_IDS.contains(&id) {
        return Err(Error::Config(format!("check `{id}` has no asymptotic form")));
    }
    if ks.is_empty() || seeds == 0 {
        return Err(Error::Config("refinement needs at least one grid and one seed".into()));
    }
    let mut rows = Vec::with_capacity(ks.len());
    for &k in ks {
        let grid = Arc::new(Grid::uniform(k, 1.0)?);
        let b = PathAlgebra::new(grid.clone(), dim);
        let values = (0..seeds as u64)
            .into_par_iter()
            .map(|s| {
                let seed = trial_seed(base_seed, s);
                let path = |i| match kind {
                    Some(kind) => sample_path(kind, dim, &grid, seed, i),
                    None => Ok(b.zero()),
                };
                measure(id, &b, &path(0)?, &path(1)?, &path(2)?)
            })
            .collect::<Result<Vec<f64>>>()?;
        rows.push(RefinementRow { k, median: median(values) });
    }
    let pass = RefinementTable::judge(&rows);
    Ok(RefinementTable { id: id.to_string(), rows, pass })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_paths_vanish_everywhere() {
        let t = refinement_study("S19", None, 2, &[16, 64], 3, 0).unwrap();
        assert!(t.rows.iter().all(|r| r.median == 0.0));
        assert!(t.pass);
    }

    #[test]
    fn fv_triple_bracket_decays_fast() {
        let t = refinement_study("REGULAR", Some(PathKind::FiniteVariation), 2, &[64, 256, 1024], 5, 1).unwrap();
        assert!(t.pass);
        let ratio = t.rows[0].median / t.rows[2].median;
        assert!(ratio > 16.0f64.powi(2) / 4.0, "{ratio}");
    }

    #[test]
    fn brownian_singular_bracket_decays() {
        let t = refinement_study("S19", Some(PathKind::Brownian), 2, &[256, 1024, 4096], 20, 0).unwrap();
        assert!(t.pass, "{:?}", t.rows);
    }

    #[test]
    fn non_asymptotic_rejected() {
        assert!(refinement_study("K4", Some(PathKind::Brownian), 1, &[8], 1, 0).is_err());
        assert!(matches!(refinement_study("NOPE", None, 1, &[8], 1, 0), Err(Error::UnknownCheckId(_))));
    }
}
