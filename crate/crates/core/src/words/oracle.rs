//! Quasi-shuffle product by direct enumeration of merged placements.
//!
//! Independent of the recursive definition: a term of `a ∗ b` is determined by
//! an output length `L` and two increasing position sets `Sa, Sb ⊆ {0..L}` of
//! sizes `|a|`, `|b|` covering `{0..L}`. Shared positions fuse the two letters.

use num_traits::One;

use super::algebra::WordSeries;
use super::letter::{Letter, LetterMonoid};
use super::word::Word;
use crate::linear::Rational;

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

pub fn qs_oracle_product<M: LetterMonoid>(monoid: &M, a: &Word, b: &Word) -> WordSeries {
    let (x, y) = (a.letters(), b.letters());
    let (n, m) = (x.len(), y.len());
    let mut out = WordSeries::zero();
    for len in n.max(m)..=n + m {
        let shared = n + m - len;
        for pos_a in combinations(len, n) {
            let mut in_a = vec![false; len];
            for &p in &pos_a {
                in_a[p] = true;
            }
            let free: Vec<usize> = (0..len).filter(|p| !in_a[*p]).collect();
            // Sb = complement of Sa plus `shared` positions drawn from Sa.
            for extra in combinations(n, shared) {
                let mut in_b = vec![false; len];
                for &p in &free {
                    in_b[p] = true;
                }
                for &e in &extra {
                    in_b[pos_a[e]] = true;
                }
                let (mut i, mut j) = (0, 0);
                let mut letters: Vec<Letter> = Vec::with_capacity(len);
                let mut vanished = false;
                for p in 0..len {
                    match (in_a[p], in_b[p]) {
                        (true, true) => {
                            match monoid.combine(x[i], y[j]) {
                                Some(c) => letters.push(c),
                                None => vanished = true,
                            }
                            i += 1;
                            j += 1;
                        }
                        (true, false) => {
                            letters.push(x[i]);
                            i += 1;
                        }
                        (false, true) => {
                            letters.push(y[j]);
                            j += 1;
                        }
                        (false, false) => unreachable!("positions cover the output"),
                    }
                }
                if !vanished {
                    out.add_term(Word::new(letters), Rational::one());
                }
            }
        }
    }
    out
}
