use num_bigint::BigInt;
use rustc_hash::FxHashMap;


use super::letter::{IntegerAddition, Letter, LetterMonoid, NullMonoid, TruncatedAddition, UpperUnits};
use super::word::Word;
use crate::algebra::{Module, QuasiShuffle, SingularQuasiShuffle};
use crate::error::{Error, Result};
use num_traits::One;
use crate::linear::{LinComb, Rational};
use crate::rational::lcm_small;

pub type WordSeries = LinComb<Word>;

/// Weighted multiset of words. Words of length at most 15 with letters below 256
/// are packed into a `u128` (length in the top byte, letters big-endian below)
/// whose numeric order reverses the order on [`Word`].
#[derive(Default)]
struct Acc {
    packed: FxHashMap<u128, i128>,
    long: FxHashMap<Vec<Letter>, i128>,
    weight: i128,
    overflow: bool,
}

impl Acc {
    fn new(weight: i128) -> Self {
        Acc { weight, ..Acc::default() }
    }

    fn pack(prefix: &[Letter], tail: &[Letter]) -> Option<u128> {
        let len = prefix.len() + tail.len();
        if len > 15 {
            return None;
        }
        let mut k = 0u128;
        for l in prefix.iter().chain(tail) {
            let v = l.value();
            if v > 255 {
                return None;
            }
            k = (k << 8) | v as u128;
        }
        Some(k | (len as u128) << 120)
    }

    fn unpack(k: u128) -> Word {
        let len = (k >> 120) as usize;
        Word::new((0..len).map(|i| Letter::from_raw(((k >> (8 * (len - 1 - i))) & 0xff) as u32)).collect())
    }

    fn insert(&mut self, prefix: &mut Vec<Letter>, tail: &[Letter]) {
        let w = self.weight;
        let slot = if let Some(k) = Self::pack(prefix, tail) {
            self.packed.entry(k).or_insert(0)
        } else {
            let n = prefix.len();
            prefix.extend_from_slice(tail);
            if !self.long.contains_key(prefix.as_slice()) {
                self.long.insert(prefix.clone(), 0);
            }
            let slot = self.long.get_mut(prefix.as_slice()).expect("inserted");
            prefix.truncate(n);
            slot
        };
        match slot.checked_add(w) {
            Some(v) => *slot = v,
            None => self.overflow = true,
        }
    }

    /// Nonzero entries, mostly in word order, leaving the accumulator empty.
    fn drain(&mut self) -> Vec<(Word, i128)> {
        let mut packed: Vec<(u128, i128)> = self.packed.drain().filter(|(_, n)| *n != 0).collect();
        packed.sort_unstable_by(|a, b| b.0.cmp(&a.0));
        let mut out: Vec<(Word, i128)> = packed.into_iter().map(|(k, n)| (Self::unpack(k), n)).collect();
        out.extend(self.long.drain().filter(|(_, n)| *n != 0).map(|(w, n)| (Word::new(w), n)));
        out
    }
}

/// How the word bracket is classified when splitting `[,] = [,]^c + [,]^j`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BracketRegime {
    /// Whole bracket is continuous. Regular when the monoid is nilpotent of order three.
    Continuous,
    /// Whole bracket is jump. Satisfies the singular axioms for any monoid.
    Jump,
}

/// Word quasi-shuffle algebra:
///
/// ```text
/// x₁⋯xₙ ≺ y₁⋯yₘ = x₁(x₂⋯xₙ ∗ y₁⋯yₘ)
/// x₁⋯xₙ ≻ y₁⋯yₘ = y₁(x₁⋯xₙ ∗ y₂⋯yₘ)
/// [x₁⋯xₙ, y₁⋯yₘ] = (x₁×y₁)(x₂⋯xₙ ∗ y₂⋯yₘ)
/// ```
#[derive(Debug, Clone)]
pub struct WordAlgebra<M = IntegerAddition> {
    monoid: M,
    regime: BracketRegime,
}

impl WordAlgebra<IntegerAddition> {
    /// Letters in `(ℤ₊, +)`, bracket classified as jump.
    pub fn integer() -> Self {
        WordAlgebra { monoid: IntegerAddition, regime: BracketRegime::Jump }
    }
}

impl WordAlgebra<NullMonoid> {
    /// The shuffle algebra: no fusions.
    pub fn shuffle() -> Self {
        WordAlgebra { monoid: NullMonoid, regime: BracketRegime::Continuous }
    }
}

impl WordAlgebra<TruncatedAddition> {
    /// Fusions vanish above `cap`; with `cap = 2` the algebra is regular.
    pub fn truncated(cap: u32) -> Self {
        WordAlgebra { monoid: TruncatedAddition { cap }, regime: BracketRegime::Continuous }
    }
}

impl WordAlgebra<UpperUnits> {
    /// Non-commutative fusions of strictly upper-triangular `n×n` matrix units;
    /// regular for `n = 3`.
    pub fn upper_units(n: u32) -> Self {
        WordAlgebra { monoid: UpperUnits { n }, regime: BracketRegime::Continuous }
    }
}

impl<M: LetterMonoid> WordAlgebra<M> {
    pub fn new(monoid: M, regime: BracketRegime) -> Self {
        WordAlgebra { monoid, regime }
    }

    pub fn monoid(&self) -> &M {
        &self.monoid
    }

    pub fn regime(&self) -> BracketRegime {
        self.regime
    }

    fn emit(prefix: &mut Vec<Letter>, tail: &[Letter], acc: &mut Acc) {
        acc.insert(prefix, tail);
    }

    /// Accumulates `weight · prefix·(a ∗ b)`.
    fn product_into(&self, prefix: &mut Vec<Letter>, a: &[Letter], b: &[Letter], acc: &mut Acc) {
        if a.is_empty() {
            return Self::emit(prefix, b, acc);
        }
        if b.is_empty() {
            return Self::emit(prefix, a, acc);
        }
        prefix.push(a[0]);
        self.product_into(prefix, &a[1..], b, acc);
        prefix.pop();
        prefix.push(b[0]);
        self.product_into(prefix, a, &b[1..], acc);
        prefix.pop();
        if let Some(c) = self.monoid.combine(a[0], b[0]) {
            prefix.push(c);
            self.product_into(prefix, &a[1..], &b[1..], acc);
            prefix.pop();
        }
    }

    fn bilinear<F>(&self, a: &WordSeries, b: &WordSeries, allow_unit: bool, f: F) -> Result<WordSeries>
    where
        F: Fn(&[Letter], &[Letter], &mut Acc),
    {
        if !allow_unit && (a.keys().any(Word::is_empty) || b.keys().any(Word::is_empty)) {
            return Err(Error::UnitOperand);
        }
        if let Some(out) = Self::bilinear_small(a, b, &f) {
            return Ok(out);
        }
        let mut out = WordSeries::zero();
        let mut acc = Acc::new(1);
        for (u, cu) in a.iter() {
            for (v, cv) in b.iter() {
                f(u.letters(), v.letters(), &mut acc);
                let c = cu * cv;
                for (w, n) in acc.drain() {
                    out.add_term(w, &c * Rational::from_integer(n.into()));
                }
            }
        }
        Ok(out)
    }

    /// Machine-integer accumulation over a common denominator; `None` on overflow.
    fn bilinear_small<F>(a: &WordSeries, b: &WordSeries, f: &F) -> Option<WordSeries>
    where
        F: Fn(&[Letter], &[Letter], &mut Acc),
    {
        fn scaled(s: &WordSeries) -> Option<(i64, Vec<(&Word, i128)>)> {
            let mut den = 1i64;
            for (_, c) in s.iter() {
                den = lcm_small(den, c.as_small()?.1)?;
            }
            let nums = s
                .iter()
                .map(|(w, c)| {
                    let (n, d) = c.as_small().expect("checked above");
                    (w, n as i128 * (den / d) as i128)
                })
                .collect();
            Some((den, nums))
        }
        let (da, na) = scaled(a)?;
        let (db, nb) = scaled(b)?;
        let mut acc = Acc::new(0);
        for (u, cu) in &na {
            for (v, cv) in &nb {
                acc.weight = cu.checked_mul(*cv)?;
                f(u.letters(), v.letters(), &mut acc);
                if acc.overflow {
                    return None;
                }
            }
        }
        let d = BigInt::from(da) * BigInt::from(db);
        let integral = da == 1 && db == 1;
        Some(WordSeries::from_distinct(
            acc.drain()
                .into_iter()
                .map(|(w, n)| {
                    let c = if integral { Rational::from_integer(BigInt::from(n)) } else { Rational::new(BigInt::from(n), d.clone()) };
                    (w, c)
                })
                .collect(),
        ))
    }

    pub fn word_prec(&self, a: &WordSeries, b: &WordSeries) -> Result<WordSeries> {
        self.bilinear(a, b, false, |u, v, out| {
            let mut prefix = vec![u[0]];
            self.product_into(&mut prefix, &u[1..], v, out);
        })
    }

    pub fn word_succ(&self, a: &WordSeries, b: &WordSeries) -> Result<WordSeries> {
        self.bilinear(a, b, false, |u, v, out| {
            let mut prefix = vec![v[0]];
            self.product_into(&mut prefix, u, &v[1..], out);
        })
    }

    pub fn word_bracket(&self, a: &WordSeries, b: &WordSeries) -> Result<WordSeries> {
        self.bilinear(a, b, false, |u, v, out| {
            if let Some(x) = self.monoid.combine(u[0], v[0]) {
                let mut prefix = vec![x];
                self.product_into(&mut prefix, &u[1..], &v[1..], out);
            }
        })
    }

    /// `∗`, with the empty word as two-sided unit.
    pub fn word_product(&self, a: &WordSeries, b: &WordSeries) -> Result<WordSeries> {
        self.bilinear(a, b, true, |u, v, out| {
            self.product_into(&mut Vec::new(), u, v, out);
        })
    }

    /// Product of two single words.
    pub fn product_words(&self, a: &Word, b: &Word) -> WordSeries {
        let mut acc = Acc::new(1);
        self.product_into(&mut Vec::new(), a.letters(), b.letters(), &mut acc);
        WordSeries::from_distinct(acc.drain().into_iter().map(|(w, n)| (w, Rational::from_integer(n.into()))).collect())
    }
}

impl<M: LetterMonoid> Module for WordAlgebra<M> {
    type Elem = WordSeries;

    fn zero(&self) -> WordSeries {
        WordSeries::zero()
    }
    fn add(&self, a: &WordSeries, b: &WordSeries) -> Result<WordSeries> {
        Ok(a.plus(b))
    }
    fn add_assign(&self, acc: &mut WordSeries, x: &WordSeries) -> Result<()> {
        acc.add_scaled(x, &Rational::one());
        Ok(())
    }
    fn sub(&self, a: &WordSeries, b: &WordSeries) -> Result<WordSeries> {
        Ok(a.minus(b))
    }
    fn scale(&self, a: &WordSeries, c: &Rational) -> WordSeries {
        a.scale(c)
    }
    fn residual(&self, a: &WordSeries, b: &WordSeries) -> Result<f64> {
        Ok(a.max_abs_diff(b))
    }
    fn magnitude(&self, a: &WordSeries) -> f64 {
        a.max_abs()
    }
    fn is_exact(&self) -> bool {
        true
    }
}

impl<M: LetterMonoid> QuasiShuffle for WordAlgebra<M> {
    fn prec(&self, a: &WordSeries, b: &WordSeries) -> Result<WordSeries> {
        self.word_prec(a, b)
    }
    fn succ(&self, a: &WordSeries, b: &WordSeries) -> Result<WordSeries> {
        self.word_succ(a, b)
    }
    fn bracket(&self, a: &WordSeries, b: &WordSeries) -> Result<WordSeries> {
        self.word_bracket(a, b)
    }
    fn product(&self, a: &WordSeries, b: &WordSeries) -> Result<WordSeries> {
        self.word_product(a, b)
    }
}

impl<M: LetterMonoid> SingularQuasiShuffle for WordAlgebra<M> {
    fn bracket_c(&self, a: &WordSeries, b: &WordSeries) -> Result<WordSeries> {
        match self.regime {
            BracketRegime::Continuous => self.word_bracket(a, b),
            BracketRegime::Jump => {
                // still validate operands
                self.word_bracket(a, b)?;
                Ok(WordSeries::zero())
            }
        }
    }
    fn bracket_j(&self, a: &WordSeries, b: &WordSeries) -> Result<WordSeries> {
        match self.regime {
            BracketRegime::Jump => self.word_bracket(a, b),
            BracketRegime::Continuous => {
                self.word_bracket(a, b)?;
                Ok(WordSeries::zero())
            }
        }
    }
    fn has_jumps(&self, a: &WordSeries) -> bool {
        self.regime == BracketRegime::Jump && !a.is_zero()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linear::int;

    fn w(v: &[u32]) -> WordSeries {
        WordSeries::basis(Word::from_values(v))
    }

    fn series(s: &str) -> WordSeries {
        crate::linear::parse_terms(s, |k| k.parse::<Word>()).unwrap()
    }

    #[test]
    fn worked_prec_example() {
        let a = WordAlgebra::integer();
        let r = a.word_prec(&w(&[2, 3]), &w(&[1])).unwrap();
        assert_eq!(r, series("2 3 1 + 2 1 3 + 2 4"));
        assert_eq!(r.to_string(), "2 3 1 + 2 1 3 + 2 4");
    }

    #[test]
    fn one_letter_base_case() {
        let a = WordAlgebra::integer();
        assert_eq!(a.word_prec(&w(&[2]), &w(&[3])).unwrap(), w(&[2, 3]));
        assert_eq!(a.word_succ(&w(&[2]), &w(&[3])).unwrap(), w(&[3, 2]));
        assert_eq!(a.word_bracket(&w(&[2]), &w(&[3])).unwrap(), w(&[5]));
    }

    #[test]
    fn product_example() {
        let a = WordAlgebra::integer();
        let r = a.word_product(&w(&[1, 2]), &w(&[3])).unwrap();
        assert_eq!(r, series("1 2 3 + 1 3 2 + 3 1 2 + 1 5 + 4 2"));
    }

    #[test]
    fn unit_operand_rejected_by_half_shuffles() {
        let a = WordAlgebra::integer();
        let unit = WordSeries::basis(Word::empty());
        assert_eq!(a.word_prec(&unit, &w(&[1])), Err(Error::UnitOperand));
        assert_eq!(a.word_succ(&w(&[1]), &unit), Err(Error::UnitOperand));
        assert_eq!(a.word_bracket(&unit, &unit), Err(Error::UnitOperand));
        assert_eq!(a.word_product(&unit, &w(&[1, 2])).unwrap(), w(&[1, 2]));
        assert_eq!(a.word_product(&w(&[1, 2]), &unit).unwrap(), w(&[1, 2]));
    }

    #[test]
    fn shuffle_model_has_no_bracket() {
        let a = WordAlgebra::shuffle();
        assert!(a.word_bracket(&w(&[1, 2]), &w(&[3])).unwrap().is_zero());
        let p = a.word_product(&w(&[1]), &w(&[1])).unwrap();
        assert_eq!(p, WordSeries::term(Word::from_values(&[1, 1]), int(2)));
    }

    #[test]
    fn truncated_model_is_nilpotent() {
        let a = WordAlgebra::truncated(2);
        let xy = a.word_bracket(&w(&[1]), &w(&[1])).unwrap();
        assert_eq!(xy, w(&[2]));
        assert!(a.word_bracket(&xy, &w(&[1])).unwrap().is_zero());
    }

    #[test]
    fn regime_split() {
        let j = WordAlgebra::integer();
        assert!(j.bracket_c(&w(&[1]), &w(&[2])).unwrap().is_zero());
        assert_eq!(j.bracket_j(&w(&[1]), &w(&[2])).unwrap(), w(&[3]));
        let c = WordAlgebra::truncated(2);
        assert_eq!(c.bracket_c(&w(&[1]), &w(&[1])).unwrap(), w(&[2]));
        assert!(c.bracket_j(&w(&[1]), &w(&[1])).unwrap().is_zero());
    }
}
