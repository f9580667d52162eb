use std::io::{Read, Write};
use std::sync::Arc;

use super::grid::Grid;
use super::path::GridPath;
use crate::error::{Error, Result};

/// Writes `t,i,j,value` rows, one per grid point and matrix entry, with 17
/// significant digits.
pub fn write_csv<W: Write>(path: &GridPath, out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["t", "i", "j", "value"])?;
    let d = path.dim();
    for (k, t) in path.grid().times().iter().enumerate() {
        let v = path.value(k);
        for i in 0..d {
            for j in 0..d {
                w.write_record([format!("{t:.16e}"), i.to_string(), j.to_string(), format!("{:.16e}", v.get(i, j))])?;
            }
        }
    }
    w.flush()?;
    Ok(())
}

/// Reads a dump produced by [`write_csv`]. Jump flags are not part of the format.
pub fn read_csv<R: Read>(input: R) -> Result<GridPath> {
    let mut r = csv::Reader::from_reader(input);
    let header = r.headers()?.clone();
    if header.iter().collect::<Vec<_>>() != ["t", "i", "j", "value"] {
        return Err(Error::Parse(format!("unexpected header {header:?}")));
    }
    let mut times: Vec<f64> = Vec::new();
    let mut rows: Vec<(usize, usize, usize, f64)> = Vec::new();
    for rec in r.records() {
        let rec = rec?;
        let num = |i: usize| -> Result<&str> { rec.get(i).ok_or_else(|| Error::Parse("short row".into())) };
        let t: f64 = num(0)?.parse().map_err(|_| Error::Parse("bad t".into()))?;
        let i: usize = num(1)?.parse().map_err(|_| Error::Parse("bad i".into()))?;
        let j: usize = num(2)?.parse().map_err(|_| Error::Parse("bad j".into()))?;
        let v: f64 = num(3)?.parse().map_err(|_| Error::Parse("bad value".into()))?;
        if times.last() != Some(&t) {
            times.push(t);
        }
        rows.push((times.len() - 1, i, j, v));
    }
    if times.is_empty() {
        return Err(Error::Parse("no rows".into()));
    }
    let per_point = rows.len() / times.len();
    let dim = (per_point as f64).sqrt().round() as usize;
    if dim * dim * times.len() != rows.len() {
        return Err(Error::Parse("row count is not a square per grid point".into()));
    }
    let grid = Arc::new(Grid::new(times)?);
    let mut values = vec![0.0; rows.len()];
    for (k, i, j, v) in rows {
        if i >= dim || j >= dim {
            return Err(Error::Parse(format!("entry ({i}, {j}) out of range")));
        }
        values[k * dim * dim + i * dim + j] = v;
    }
    GridPath::from_raw_values(grid.clone(), dim, values, vec![false; grid.steps() + 1])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::process::{sample_path, PathKind};

    #[test]
    fn round_trip_is_bit_exact() {
        let g = Arc::new(Grid::uniform(37, 0.7).unwrap());
        let x = sample_path(PathKind::Brownian, 3, &g, 9, 1).unwrap();
        let mut buf = Vec::new();
        write_csv(&x, &mut buf).unwrap();
        let text = String::from_utf8(buf.clone()).unwrap();
        assert!(text.starts_with("t,i,j,value\n"));
        assert_eq!(text.lines().count(), 1 + 38 * 9);
        let y = read_csv(buf.as_slice()).unwrap();
        for k in 0..=37 {
            assert_eq!(x.value(k), y.value(k));
            assert_eq!(x.grid().times()[k].to_bits(), y.grid().times()[k].to_bits());
        }
    }
}
