use crate::error::{Error, Result};

/// Strictly increasing times `0 = t₀ < t₁ < … < t_K`.
#[derive(Debug, Clone, PartialEq)]
pub struct Grid {
    times: Vec<f64>,
}

impl Grid {
    pub fn new(times: Vec<f64>) -> Result<Self> {
        if times.len() < 2 {
            return Err(Error::InvalidGrid("need at least one step".into()));
        }
        if times[0] != 0.0 {
            return Err(Error::InvalidGrid(format!("t0 = {} (must be 0)", times[0])));
        }
        if let Some(k) = times.windows(2).position(|w| !(w[1] > w[0])) {
            return Err(Error::InvalidGrid(format!("times not increasing at step {}", k + 1)));
        }
        Ok(Grid { times })
    }

    /// `steps` equal steps on `[0, horizon]`.
    pub fn uniform(steps: usize, horizon: f64) -> Result<Self> {
        if steps == 0 || !(horizon > 0.0) {
            return Err(Error::InvalidGrid(format!("steps = {steps}, horizon = {horizon}")));
        }
        Grid::new((0..=steps).map(|k| horizon * k as f64 / steps as f64).collect())
    }

    pub fn steps(&self) -> usize {
        self.times.len() - 1
    }

    pub fn times(&self) -> &[f64] {
        &self.times
    }

    pub fn horizon(&self) -> f64 {
        self.times[self.times.len() - 1]
    }

    /// `t_k − t_{k−1}` for `k ≥ 1`.
    pub fn dt(&self, k: usize) -> f64 {
        self.times[k] - self.times[k - 1]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_bad_grids() {
        assert!(Grid::new(vec![0.0]).is_err());
        assert!(Grid::new(vec![0.1, 0.2]).is_err());
        assert!(Grid::new(vec![0.0, 0.5, 0.5]).is_err());
        assert!(Grid::uniform(0, 1.0).is_err());
        let g = Grid::uniform(4, 2.0).unwrap();
        assert_eq!(g.steps(), 4);
        assert_eq!(g.dt(3), 0.5);
    }
}
