//! Words over the two-letter alphabet `x < y`.
//!
//! A word of length `n` is packed into a `u64` as a leading sentinel bit
//! followed by `n` letter bits (`x = 0`, `y = 1`, first letter most
//! significant). Comparing the packed integers orders words by length and then
//! lexicographically, which is the graded-lex order used throughout.

use std::fmt;
use std::str::FromStr;

use crate::Error;

/// Longest word that fits the packed representation.
pub const MAX_WORD_LEN: usize = 62;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Word(u64);

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Letter {
    X,
    Y,
}

impl Letter {
    fn bit(self) -> u64 {
        match self {
            Letter::X => 0,
            Letter::Y => 1,
        }
    }
}

impl Word {
    pub const EMPTY: Word = Word(1);
    pub const X: Word = Word(0b10);
    pub const Y: Word = Word(0b11);

    pub fn from_letters(letters: &[Letter]) -> Word {
        assert!(letters.len() <= MAX_WORD_LEN, "word too long");
        let mut k = 1u64;
        for l in letters {
            k = (k << 1) | l.bit();
        }
        Word(k)
    }

    /// Word with the given length whose letter bits are `bits`.
    pub fn from_bits(len: usize, bits: u64) -> Word {
        assert!(len <= MAX_WORD_LEN, "word too long");
        debug_assert!(len == 64 || bits >> len == 0);
        Word((1u64 << len) | bits)
    }

    pub fn len(self) -> usize {
        63 - self.0.leading_zeros() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 1
    }

    /// Letter bits without the sentinel.
    pub fn bits(self) -> u64 {
        self.0 ^ (1u64 << self.len())
    }

    pub fn key(self) -> u64 {
        self.0
    }

    pub fn letter(self, i: usize) -> Letter {
        let n = self.len();
        assert!(i < n);
        if (self.0 >> (n - 1 - i)) & 1 == 1 {
            Letter::Y
        } else {
            Letter::X
        }
    }

    pub fn letters(self) -> impl Iterator<Item = Letter> {
        (0..self.len()).map(move |i| self.letter(i))
    }

    pub fn first(self) -> Option<Letter> {
        (!self.is_empty()).then(|| self.letter(0))
    }

    pub fn last(self) -> Option<Letter> {
        (!self.is_empty()).then(|| self.letter(self.len() - 1))
    }

    pub fn concat(self, other: Word) -> Word {
        let n = other.len();
        assert!(self.len() + n <= MAX_WORD_LEN, "word too long");
        Word((self.0 << n) | other.bits())
    }

    /// Letters `[start, end)`.
    pub fn slice(self, start: usize, end: usize) -> Word {
        let n = self.len();
        assert!(start <= end && end <= n);
        let len = end - start;
        let bits = (self.bits() >> (n - end)) & mask(len);
        Word::from_bits(len, bits)
    }

    /// Left rotation by `k` letters.
    pub fn rotate(self, k: usize) -> Word {
        let n = self.len();
        if n == 0 {
            return self;
        }
        let k = k % n;
        self.slice(k, n).concat(self.slice(0, k))
    }

    /// Least rotation; the canonical representative of the necklace.
    pub fn necklace(self) -> Word {
        (0..self.len().max(1))
            .map(|k| self.rotate(k))
            .min()
            .unwrap_or(self)
    }

    /// Strictly smaller than all proper rotations.
    pub fn is_lyndon(self) -> bool {
        let n = self.len();
        n >= 1 && (1..n).all(|k| self < self.rotate(k))
    }

    /// Standard factorization `w = uv` with `v` the longest proper Lyndon suffix.
    pub fn standard_factorization(self) -> Option<(Word, Word)> {
        let n = self.len();
        (1..n)
            .map(|i| (self.slice(0, i), self.slice(i, n)))
            .find(|(_, v)| v.is_lyndon())
    }
}

fn mask(len: usize) -> u64 {
    if len >= 64 {
        u64::MAX
    } else {
        (1u64 << len) - 1
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return f.write_str("1");
        }
        for l in self.letters() {
            f.write_str(match l {
                Letter::X => "x",
                Letter::Y => "y",
            })?;
        }
        Ok(())
    }
}

impl FromStr for Word {
    type Err = Error;

    /// Parses a string over `x`/`y`; `""` and `"1"` are the empty word.
    fn from_str(s: &str) -> Result<Word, Error> {
        if s == "1" {
            return Ok(Word::EMPTY);
        }
        if s.len() > MAX_WORD_LEN {
            return Err(Error::Parse(format!("word too long: {s}")));
        }
        let letters = s
            .chars()
            .map(|c| match c {
                'x' => Ok(Letter::X),
                'y' => Ok(Letter::Y),
                other => Err(Error::Parse(format!(
                    "invalid letter {other:?} in word {s:?}"
                ))),
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Word::from_letters(&letters))
    }
}

/// All words of length `n` in lexicographic order.
pub fn words_of_len(n: usize) -> impl Iterator<Item = Word> {
    assert!(n <= MAX_WORD_LEN);
    (0..(1u64 << n)).map(move |b| Word::from_bits(n, b))
}
