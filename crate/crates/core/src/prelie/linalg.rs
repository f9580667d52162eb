//! Dense matrix exponential and principal logarithm.

use nalgebra::DMatrix;

use crate::error::{Error, Result};
use crate::process::Mat;

pub fn expm(a: &Mat) -> Mat {
    Mat::from_nalgebra(&a.to_nalgebra().exp())
}

fn inverse(m: &DMatrix<f64>) -> Result<DMatrix<f64>> {
    m.clone().try_inverse().ok_or_else(|| Error::LogUndefined("singular matrix".into()))
}

/// Principal logarithm by inverse scaling and squaring.
///
/// Rejects matrices with an eigenvalue on the closed negative real axis.
pub fn logm(a: &Mat) -> Result<Mat> {
    let m = a.to_nalgebra();
    let n = m.nrows();
    let scale = m.amax().max(1.0);
    for ev in m.complex_eigenvalues().iter() {
        if ev.im.abs() <= 1e-12 * scale && ev.re <= 1e-12 * scale {
            return Err(Error::LogUndefined(format!("eigenvalue {ev} on the negative real axis")));
        }
    }
    let id = DMatrix::<f64>::identity(n, n);
    let mut y = m;
    let mut squarings = 0u32;
    while (&y - &id).norm() > 0.2 {
        if squarings > 60 {
            return Err(Error::LogUndefined("square roots did not approach the identity".into()));
        }
        y = sqrtm(&y)?;
        squarings += 1;
    }
    let e = &y - &id;
    let mut term = e.clone();
    let mut acc = DMatrix::<f64>::zeros(n, n);
    for k in 1..=60 {
        let c = if k % 2 == 1 { 1.0 } else { -1.0 } / k as f64;
        acc += &term * c;
        if term.norm() < 1e-18 {
            break;
        }
        term = &term * &e;
    }
    Ok(Mat::from_nalgebra(&(acc * 2f64.powi(squarings as i32))))
}

/// Denman–Beavers iteration.
fn sqrtm(a: &DMatrix<f64>) -> Result<DMatrix<f64>> {
    let n = a.nrows();
    let mut y = a.clone();
    let mut z = DMatrix::<f64>::identity(n, n);
    for _ in 0..100 {
        let yi = inverse(&y)?;
        let zi = inverse(&z)?;
        let ny = (&y + zi) * 0.5;
        let nz = (&z + yi) * 0.5;
        let done = (&ny - &y).norm() <= 1e-15 * ny.norm();
        y = ny;
        z = nz;
        if done {
            break;
        }
    }
    Ok(y)
}
