//! Finite linear combinations with exact rational coefficients.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

pub use crate::rational::Rational;

pub fn rat(p: i64, q: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(q))
}

pub fn int(p: i64) -> Rational {
    Rational::from_i64(p)
}

pub fn to_f64(r: &Rational) -> f64 {
    r.to_f64()
}

/// Sparse map `key -> coefficient` that never stores a zero coefficient.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct LinComb<K: Ord> {
    terms: BTreeMap<K, Rational>,
}

impl<K: Ord> Default for LinComb<K> {
    fn default() -> Self {
        LinComb { terms: BTreeMap::new() }
    }
}

impl<K: Ord + Clone> LinComb<K> {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn basis(key: K) -> Self {
        Self::term(key, Rational::one())
    }

    pub fn term(key: K, coeff: Rational) -> Self {
        let mut out = Self::zero();
        out.add_term(key, coeff);
        out
    }

    pub fn from_terms<I: IntoIterator<Item = (K, Rational)>>(iter: I) -> Self {
        let mut out = Self::zero();
        for (k, c) in iter {
            out.add_term(k, c);
        }
        out
    }

    pub fn add_term(&mut self, key: K, coeff: Rational) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(key) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += coeff;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add_scaled(&mut self, other: &Self, c: &Rational) {
        if c.is_zero() {
            return;
        }
        if self.terms.is_empty() {
            *self = other.scale(c);
            return;
        }
        let one = c.is_one();
        for (k, v) in &other.terms {
            match self.terms.get_mut(k) {
                Some(e) => {
                    if one {
                        *e += v;
                    } else {
                        *e += v * c;
                    }
                    if e.is_zero() {
                        self.terms.remove(k);
                    }
                }
                None => {
                    self.terms.insert(k.clone(), if one { v.clone() } else { v * c });
                }
            }
        }
    }

    /// Builds from terms with pairwise distinct keys, dropping zeros.
    pub fn from_distinct(terms: Vec<(K, Rational)>) -> Self {
        LinComb { terms: terms.into_iter().filter(|(_, c)| !c.is_zero()).collect() }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, key: &K) -> Rational {
        self.terms.get(key).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&K, &Rational)> {
        self.terms.iter()
    }

    pub fn keys(&self) -> impl Iterator<Item = &K> {
        self.terms.keys()
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        if c.is_one() {
            return self.clone();
        }
        LinComb {
            terms: self.terms.iter().map(|(k, v)| (k.clone(), v * c)).collect(),
        }
    }

    pub fn plus(&self, other: &Self) -> Self {
        let (big, small) = if self.len() >= other.len() { (self, other) } else { (other, self) };
        let mut out = big.clone();
        out.add_scaled(small, &Rational::one());
        out
    }

    pub fn minus(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.add_scaled(other, &-Rational::one());
        out
    }

    /// Largest absolute coefficient, as a float.
    pub fn max_abs(&self) -> f64 {
        self.terms
            .values()
            .map(|c| to_f64(&c.abs()))
            .fold(0.0, f64::max)
    }

    /// `self.minus(other).max_abs()` without building the difference.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        let mut worst: f64 = 0.0;
        let mut a = self.terms.iter().peekable();
        let mut b = other.terms.iter().peekable();
        loop {
            let d = match (a.peek(), b.peek()) {
                (None, None) => break,
                (Some((_, ca)), None) => {
                    let d = to_f64(&ca.abs());
                    a.next();
                    d
                }
                (None, Some((_, cb))) => {
                    let d = to_f64(&cb.abs());
                    b.next();
                    d
                }
                (Some((ka, ca)), Some((kb, cb))) => match ka.cmp(kb) {
                    std::cmp::Ordering::Less => {
                        let d = to_f64(&ca.abs());
                        a.next();
                        d
                    }
                    std::cmp::Ordering::Greater => {
                        let d = to_f64(&cb.abs());
                        b.next();
                        d
                    }
                    std::cmp::Ordering::Equal => {
                        let d = if ca == cb { 0.0 } else { to_f64(&(*ca - *cb).abs()) };
                        a.next();
                        b.next();
                        d
                    }
                },
            };
            worst = worst.max(d);
        }
        worst
    }

    /// Applies a linear map given on basis elements.
    pub fn map_linear<L: Ord + Clone, F>(&self, mut f: F) -> Result<LinComb<L>>
    where
        F: FnMut(&K) -> Result<LinComb<L>>,
    {
        let mut out = LinComb::zero();
        for (k, c) in &self.terms {
            out.add_scaled(&f(k)?, c);
        }
        Ok(out)
    }

    /// Extends a bilinear map given on pairs of basis elements.
    pub fn bilinear<L: Ord + Clone, M: Ord + Clone, F>(
        &self,
        other: &LinComb<L>,
        mut f: F,
    ) -> Result<LinComb<M>>
    where
        F: FnMut(&K, &L) -> Result<LinComb<M>>,
    {
        let mut out = LinComb::zero();
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                out.add_scaled(&f(a, b)?, &(ca * cb));
            }
        }
        Ok(out)
    }
}

impl<K: Ord + Clone> FromIterator<(K, Rational)> for LinComb<K> {
    fn from_iter<I: IntoIterator<Item = (K, Rational)>>(iter: I) -> Self {
        Self::from_terms(iter)
    }
}

pub(crate) const MINUS: char = '\u{2212}';

/// Writes `c·key` terms joined by ` + ` / ` − `; unit coefficients are elided.
pub fn write_terms<'a, K: 'a, I, F>(f: &mut fmt::Formatter<'_>, terms: I, mut key: F) -> fmt::Result
where
    I: IntoIterator<Item = (&'a K, &'a Rational)>,
    F: FnMut(&K) -> String,
{
    let mut first = true;
    for (k, c) in terms {
        let neg = c.is_negative();
        let mag = c.abs();
        if first {
            if neg {
                write!(f, "{MINUS}")?;
            }
        } else if neg {
            write!(f, " {MINUS} ")?;
        } else {
            write!(f, " + ")?;
        }
        if !mag.is_one() {
            write!(f, "{mag}\u{b7}")?;
        }
        write!(f, "{}", key(k))?;
        first = false;
    }
    if first {
        write!(f, "0")?;
    }
    Ok(())
}

impl<K: Ord + Clone + fmt::Display> fmt::Display for LinComb<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_terms(f, self.iter(), |k| k.to_string())
    }
}

fn parse_rational(s: &str) -> Result<Rational> {
    let bad = || Error::Parse(format!("bad coefficient `{s}`"));
    match s.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().map_err(|_| bad())?;
            let q: BigInt = q.trim().parse().map_err(|_| bad())?;
            if q.is_zero() {
                return Err(bad());
            }
            Ok(Rational::new(p, q))
        }
        None => Ok(Rational::from_integer(s.trim().parse().map_err(|_| bad())?)),
    }
}

/// Parses the format produced by [`write_terms`]. Accepts ASCII `-` for the minus
/// sign and `*` for the coefficient separator.
pub fn parse_terms<K: Ord + Clone, F>(input: &str, mut key: F) -> Result<LinComb<K>>
where
    F: FnMut(&str) -> Result<K>,
{
    let s = input.trim();
    if s == "0" {
        return Ok(LinComb::zero());
    }
    if s.is_empty() {
        return Err(Error::Parse("empty series".into()));
    }
    // Signs only separate terms when surrounded by spaces (or lead the input).
    let normalized = s.replace(MINUS, "-");
    let mut pieces: Vec<(bool, String)> = Vec::new();
    let mut rest = normalized.as_str();
    let mut neg = false;
    if let Some(r) = rest.strip_prefix('-') {
        neg = true;
        rest = r.trim_start();
    }
    loop {
        let plus = rest.find(" + ");
        let minus = rest.find(" - ");
        let cut = match (plus, minus) {
            (Some(p), Some(m)) => Some((p.min(m), p < m)),
            (Some(p), None) => Some((p, true)),
            (None, Some(m)) => Some((m, false)),
            (None, None) => None,
        };
        match cut {
            Some((at, is_plus)) => {
                pieces.push((neg, rest[..at].trim().to_string()));
                neg = !is_plus;
                rest = &rest[at + 3..];
            }
            None => {
                pieces.push((neg, rest.trim().to_string()));
                break;
            }
        }
    }
    let mut out = LinComb::zero();
    for (neg, body) in pieces {
        let (coeff, key_str) = match body.split_once(['\u{b7}', '*']) {
            Some((c, k)) => (parse_rational(c)?, k.trim()),
            None => (Rational::one(), body.as_str()),
        };
        let coeff = if neg { -coeff } else { coeff };
        out.add_term(key(key_str)?, coeff);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_coefficients_are_dropped() {
        let mut a = LinComb::basis(3u32);
        a.add_term(3, -int(1));
        assert!(a.is_zero());
        a.add_term(4, Rational::zero());
        assert_eq!(a.len(), 0);
    }

    #[test]
    fn display_and_parse() {
        let a = LinComb::from_terms(vec![(1u32, int(1)), (2, rat(-1, 2)), (5, int(3))]);
        let s = a.to_string();
        assert_eq!(s, "1 \u{2212} 1/2\u{b7}2 + 3\u{b7}5");
        let back = parse_terms(&s, |k| k.parse::<u32>().map_err(|e| Error::Parse(e.to_string()))).unwrap();
        assert_eq!(back, a);
        let neg = LinComb::term(7u32, rat(-2, 3));
        assert_eq!(neg.to_string(), "\u{2212}2/3\u{b7}7");
        assert_eq!(LinComb::<u32>::zero().to_string(), "0");
    }
}
