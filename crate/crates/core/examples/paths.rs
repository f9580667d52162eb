//! Samples matrix-valued paths and checks an identity on them.

use std::sync::Arc;

use quasishuffle::axioms::eval_generic;
use quasishuffle::process::{sample_path, write_csv, Grid, PathAlgebra, PathKind};

fn main() -> quasishuffle::Result<()> {
    let grid = Arc::new(Grid::uniform(256, 1.0)?);
    let b = PathAlgebra::new(grid.clone(), 2);
    let t = [0, 1, 2].map(|i| sample_path(PathKind::Mixed, 2, &grid, 42, i)).map(Result::unwrap);
    for id in ["K4", "K7", "K11", "S19"] {
        println!("{id:>4} residual {:.3e}", eval_generic(&b, id, &t)?.unwrap());
    }
    let mut head = Vec::new();
    write_csv(&t[0], &mut head)?;
    for line in String::from_utf8_lossy(&head).lines().take(5) {
        println!("{line}");
    }
    Ok(())
}
