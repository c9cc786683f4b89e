use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use super::verify::inv1;
use super::{Generators, Group};
use crate::error::{Error, Result};
use crate::linalg::{Mat3, MatF, MatX, Scalar};

/// A word in the generators: `k` stands for `R_k`, `-k` for its inverse.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Word(pub Vec<i8>);

impl Word {
    pub fn new(letters: Vec<i8>) -> Result<Word> {
        if let Some(bad) = letters.iter().find(|l| !matches!(l.abs(), 1..=3)) {
            return Err(Error::InvalidWord(format!("letter {bad} is not in {{±1, ±2, ±3}}")));
        }
        Ok(Word(letters))
    }

    pub fn identity() -> Word {
        Word(Vec::new())
    }

    pub fn letters(&self) -> &[i8] {
        &self.0
    }

    pub fn is_identity(&self) -> bool {
        self.0.is_empty()
    }

    /// The formal inverse: reversed, with every letter inverted.
    pub fn inverse(&self) -> Word {
        Word(self.0.iter().rev().map(|l| -l).collect())
    }

    pub fn concat(&self, other: &Word) -> Word {
        Word(self.0.iter().chain(&other.0).copied().collect())
    }
}

impl FromStr for Word {
    type Err = Error;

    /// Accepts signed integers separated by spaces or commas, optionally in
    /// brackets; `e` or an empty string is the identity word.
    fn from_str(s: &str) -> Result<Word> {
        let t = s.trim().trim_start_matches('[').trim_end_matches(']').trim();
        if t.is_empty() || t == "e" {
            return Ok(Word::identity());
        }
        let letters = t
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|x| !x.is_empty())
            .map(|x| x.parse::<i8>().map_err(|_| Error::InvalidWord(format!("cannot parse letter {x:?}"))))
            .collect::<Result<Vec<_>>>()?;
        Word::new(letters)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("e");
        }
        let parts: Vec<String> = self.0.iter().map(|l| l.to_string()).collect();
        f.write_str(&parts.join(" "))
    }
}

fn eval<T: Scalar>(gens: &Generators<T>, w: &Word) -> Mat3<T> {
    let mut acc = Mat3::<T>::identity();
    for &l in &w.0 {
        let g = gens.gen(l.unsigned_abs());
        acc = if l > 0 { acc.mul(g) } else { acc.mul(&inv1(g)) };
    }
    acc
}

/// Left-to-right product of the letters, at the group's float precision.
pub fn evaluate_word(g: &Group, w: &Word) -> MatF {
    eval(&g.float, w)
}

/// Exact product, when the group has exact matrices.
pub fn evaluate_word_exact(g: &Group, w: &Word) -> Option<MatX> {
    g.exact.as_ref().map(|x| eval(x, w))
}
