use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::linear::Rational;

/// `B₀ … B_N` from `Σ_{j≤n} C(n+1, j)·B_j = 0`, with `B₁ = −1/2`.
#[derive(Debug, Clone)]
pub struct BernoulliCache {
    values: Vec<Rational>,
}

fn binomial(n: usize, k: usize) -> BigInt {
    let mut c = BigInt::one();
    for i in 0..k {
        c = c * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    c
}

impl BernoulliCache {
    pub fn new(max: usize) -> Self {
        let mut values: Vec<Rational> = Vec::with_capacity(max + 1);
        for n in 0..=max {
            if n == 0 {
                values.push(Rational::one());
                continue;
            }
            let mut s = Rational::zero();
            for (j, b) in values.iter().enumerate() {
                s += Rational::from_integer(binomial(n + 1, j)) * b;
            }
            values.push(-s / Rational::from_integer(BigInt::from(n + 1)));
        }
        BernoulliCache { values }
    }

    pub fn get(&self, n: usize) -> &Rational {
        &self.values[n]
    }

    pub fn max(&self) -> usize {
        self.values.len() - 1
    }
}

/// `n!` as a rational.
pub fn factorial(n: usize) -> Rational {
    Rational::from_integer((1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linear::rat;

    #[test]
    fn first_values() {
        let b = BernoulliCache::new(6);
        let want = [rat(1, 1), rat(-1, 2), rat(1, 6), rat(0, 1), rat(-1, 30), rat(0, 1), rat(1, 42)];
        for (n, w) in want.iter().enumerate() {
            assert_eq!(b.get(n), w, "B_{n}");
        }
    }

    #[test]
    fn odd_values_vanish() {
        let b = BernoulliCache::new(15);
        for n in (3..=15).step_by(2) {
            assert!(b.get(n).is_zero());
        }
    }
}
