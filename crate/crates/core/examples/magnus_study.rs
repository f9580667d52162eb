//! Truncation error of the Itô Magnus expansion on matrix paths.

use quasishuffle::prelie::{magnus_study, MagnusConfig};

fn main() -> quasishuffle::Result<()> {
    let s = magnus_study(&MagnusConfig::default())?;
    print!("{}", s.to_csv()?);
    println!("strictly decreasing: {}", s.strictly_decreasing());
    Ok(())
}
