//! Stratonovich half-products on continuous paths: the shuffle defects and
//! their bracket closed forms.

use std::sync::Arc;

use quasishuffle::axioms::refinement_study;
use quasishuffle::process::{integer_path, Grid, JumpPattern, PathAlgebra, PathKind};
use quasishuffle::strat::shuffle_residual;

fn main() -> quasishuffle::Result<()> {
    let grid = Arc::new(Grid::uniform(32, 1.0)?);
    let b = PathAlgebra::new(grid.clone(), 2);
    let [x, y, z] = [0, 1, 2].map(|i| integer_path(&grid, 2, 3, i, 3, JumpPattern::None).unwrap());
    let r = shuffle_residual(&b, &x, &y, &z)?;
    println!("defect sizes       {:?}", r.magnitudes(&b));
    println!("direct − closed    {:?}", r.agreement(&b)?);

    let t = refinement_study("SH27", Some(PathKind::Brownian), 2, &[256, 1024, 4096], 20, 0)?;
    for row in &t.rows {
        println!("K={:<5} median {:.3e}", row.k, row.median);
    }
    Ok(())
}
