use std::fmt;

use crate::error::{Error, Result};

/// A letter: a positive integer.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Letter(u32);

impl Letter {
    pub fn new(value: u32) -> Result<Self> {
        if value == 0 {
            return Err(Error::Parse("letters are positive integers".into()));
        }
        Ok(Letter(value))
    }

    /// For values already known to be positive.
    pub(crate) fn from_raw(value: u32) -> Self {
        debug_assert!(value > 0);
        Letter(value)
    }

    pub fn value(self) -> u32 {
        self.0
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Associative product on letters used to fuse letters in the bracket.
///
/// `None` stands for an absorbing zero: the fused term vanishes. This lets a
/// single word model cover quasi-shuffles (`IntegerAddition`), shuffles
/// (`NullMonoid`) and nilpotent brackets (`TruncatedAddition`).
pub trait LetterMonoid: fmt::Debug + Send + Sync {
    fn combine(&self, a: Letter, b: Letter) -> Option<Letter>;
}

/// `(ℤ₊, +)`.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct IntegerAddition;

impl LetterMonoid for IntegerAddition {
    fn combine(&self, a: Letter, b: Letter) -> Option<Letter> {
        Some(Letter(a.0 + b.0))
    }
}

/// Every fusion vanishes; the bracket is zero and the products are shuffles.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct NullMonoid;

impl LetterMonoid for NullMonoid {
    fn combine(&self, _: Letter, _: Letter) -> Option<Letter> {
        None
    }
}

/// Addition that vanishes once the sum exceeds `cap`.
///
/// With `cap = 2`, any fusion of three letters vanishes, so the bracket is
/// nilpotent of order three: the word analogue of `dW·dW = dt`, `dt·dW = 0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TruncatedAddition {
    pub cap: u32,
}

impl LetterMonoid for TruncatedAddition {
    fn combine(&self, a: Letter, b: Letter) -> Option<Letter> {
        let s = a.0 + b.0;
        (s <= self.cap).then_some(Letter(s))
    }
}

/// Strictly upper-triangular matrix units `E_ij` (`i < j ≤ n`) under matrix
/// multiplication, numbered row by row from 1: for `n = 3`, `1 = E₁₂`,
/// `2 = E₁₃`, `3 = E₂₃`.
///
/// Non-commutative, and every product of `n` letters vanishes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct UpperUnits {
    pub n: u32,
}

impl UpperUnits {
    pub fn letters(&self) -> u32 {
        self.n * (self.n - 1) / 2
    }

    /// `j − i` for the letter `E_ij`; additive under fusion.
    pub fn grade(&self, l: Letter) -> Option<u32> {
        self.pair(l).map(|(i, j)| j - i)
    }

    fn index(&self, i: u32, j: u32) -> u32 {
        (1..i).map(|r| self.n - r).sum::<u32>() + (j - i)
    }

    fn pair(&self, l: Letter) -> Option<(u32, u32)> {
        let mut k = l.0;
        for i in 1..self.n {
            if k <= self.n - i {
                return Some((i, i + k));
            }
            k -= self.n - i;
        }
        None
    }
}

impl LetterMonoid for UpperUnits {
    fn combine(&self, a: Letter, b: Letter) -> Option<Letter> {
        let (i, j) = self.pair(a)?;
        let (k, l) = self.pair(b)?;
        (j == k).then(|| Letter(self.index(i, l)))
    }
}

impl<M: LetterMonoid + ?Sized> LetterMonoid for &M {
    fn combine(&self, a: Letter, b: Letter) -> Option<Letter> {
        (**self).combine(a, b)
    }
}

impl<M: LetterMonoid + ?Sized> LetterMonoid for Box<M> {
    fn combine(&self, a: Letter, b: Letter) -> Option<Letter> {
        (**self).combine(a, b)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn l(v: u32) -> Letter {
        Letter::new(v).unwrap()
    }

    #[test]
    fn zero_letter_rejected() {
        assert!(Letter::new(0).is_err());
    }

    #[test]
    fn upper_units() {
        let m = UpperUnits { n: 3 };
        assert_eq!(m.combine(l(1), l(3)), Some(l(2)));
        assert_eq!(m.combine(l(3), l(1)), None);
        assert_eq!(m.combine(l(2), l(3)), None);
        let m4 = UpperUnits { n: 4 };
        assert_eq!(m4.letters(), 6);
        for a in 1..=6 {
            let (i, j) = m4.pair(l(a)).unwrap();
            assert_eq!(m4.index(i, j), a);
        }
        assert_eq!(m4.pair(l(7)), None);
    }

    #[test]
    fn truncated_addition_is_associative() {
        let m = TruncatedAddition { cap: 4 };
        let fuse = |a: Option<Letter>, b: Option<Letter>| match (a, b) {
            (Some(a), Some(b)) => m.combine(a, b),
            _ => None,
        };
        for a in 1..=5 {
            for b in 1..=5 {
                for c in 1..=5 {
                    let (a, b, c) = (Some(l(a)), Some(l(b)), Some(l(c)));
                    assert_eq!(fuse(fuse(a, b), c), fuse(a, fuse(b, c)));
                }
            }
        }
    }
}
