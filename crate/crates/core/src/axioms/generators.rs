//! Deterministic random inputs for the catalog, one independent stream per trial.

use std::sync::Arc;

use crate::error::Result;
use crate::linear::{int, Rational};
use crate::prelie::{Monomial, Poly};
use crate::process::{integer_path, sample_path, Grid, GridPath, JumpPattern, PathKind, StepRng};
use crate::rota_baxter::RBSequence;
use crate::words::{Word, WordSeries};

/// Mixes a master seed and a trial index into an independent seed.
pub fn trial_seed(seed: u64, trial: u64) -> u64 {
    let mut z = seed ^ trial.wrapping_mul(0x9E37_79B9_7F4A_7C15).wrapping_add(0xD1B5_4A32_D192_ED03);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Three words with letters in `1..=max_letter` and lengths in `1..=max_len`.
pub fn word_triple(seed: u64, trial: u64, max_letter: u32, max_len: usize) -> [WordSeries; 3] {
    let rng = StepRng::new(seed, trial);
    [0u64, 1, 2].map(|i| {
        let mut d = rng.at(i);
        let len = d.int_in(1, max_len as i64) as usize;
        let letters: Vec<u32> = (0..len).map(|_| d.int_in(1, max_letter as i64) as u32).collect();
        WordSeries::basis(Word::from_values(&letters))
    })
}

/// A polynomial with one or two monomials of degree 1 or 2 over short words.
pub fn small_poly(seed: u64, trial: u64, slot: u64, max_letter: u32) -> Poly<Word> {
    let mut d = StepRng::new(seed, trial).at(16 + slot);
    let terms = d.int_in(1, 2);
    let mut p = Poly::zero();
    for _ in 0..terms {
        let deg = d.int_in(1, 2) as usize;
        let factors: Vec<Word> = (0..deg)
            .map(|_| {
                let len = d.int_in(1, 2) as usize;
                Word::from_values(&(0..len).map(|_| d.int_in(1, max_letter as i64) as u32).collect::<Vec<_>>())
            })
            .collect();
        let c: Rational = int(d.int_in(1, 3));
        p.add_term(Monomial::new(factors), c);
    }
    p
}

/// How path triples are drawn for a process backend.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PathFamily {
    pub float_kinds: [PathKind; 2],
    pub integer_pattern: JumpPattern,
}

/// Even trials use float sample paths, odd trials integer paths; the matrix
/// dimension cycles through `1..=4`.
pub fn path_triple(family: PathFamily, grid: &Arc<Grid>, seed: u64, trial: u64) -> Result<[GridPath; 3]> {
    let dim = 1 + (trial % 4) as usize;
    let s = trial_seed(seed, trial);
    let make = |i: u64| -> Result<GridPath> {
        if trial % 2 == 0 {
            let kind = family.float_kinds[((trial / 2) % 2) as usize];
            sample_path(kind, dim, grid, s, i)
        } else {
            integer_path(grid, dim, s, i, 3, family.integer_pattern)
        }
    };
    Ok([make(0)?, make(1)?, make(2)?])
}

pub fn rb_triple(seed: u64, trial: u64, len: usize, dim: usize) -> [RBSequence; 3] {
    let s = trial_seed(seed, trial);
    [0u64, 1, 2].map(|i| RBSequence::random_integer(len, dim, s, i, 5))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn words_within_bounds() {
        for t in 0..50 {
            for w in word_triple(3, t, 5, 4) {
                let (k, _) = w.iter().next().unwrap();
                assert!((1..=4).contains(&k.len()));
                assert!(k.letters().iter().all(|l| (1..=5).contains(&l.value())));
            }
        }
    }

    #[test]
    fn trial_seeds_differ() {
        assert_ne!(trial_seed(0, 0), trial_seed(0, 1));
        assert_ne!(trial_seed(0, 1), trial_seed(1, 0));
    }
}
