use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use super::letter::Letter;
use crate::error::{Error, Result};

/// A finite sequence of letters. The empty word is the unit of `∗`.
///
/// Ordered by descending length, then descending lexicographic order, so that
/// serialized series list the longest words first and are canonical.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Word(Vec<Letter>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn new(letters: Vec<Letter>) -> Self {
        Word(letters)
    }

    /// Panics on a zero entry; meant for literals in tests and examples.
    pub fn from_values(values: &[u32]) -> Self {
        Word(values.iter().map(|&v| Letter::new(v).expect("positive letter")).collect())
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Sum of letter values; additive under every product of the integer model.
    pub fn weight(&self) -> u64 {
        self.0.iter().map(|l| l.value() as u64).sum()
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        other.0.len().cmp(&self.0.len()).then_with(|| other.0.cmp(&self.0))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "\u{3b5}");
        }
        for (i, l) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

impl FromStr for Word {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "\u{3b5}" || s == "e" {
            return Ok(Word::empty());
        }
        s.split_whitespace()
            .map(|t| {
                let v: u32 = t.parse().map_err(|_| Error::Parse(format!("bad letter `{t}`")))?;
                Letter::new(v)
            })
            .collect::<Result<Vec<_>>>()
            .and_then(|v| {
                if v.is_empty() {
                    Err(Error::Parse("empty word".into()))
                } else {
                    Ok(Word(v))
                }
            })
    }
}
