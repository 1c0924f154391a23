//! Permutations of `{1..n}`: construction, standardization, ranking, parity.
//!
//! Letters and positions are 1-based in every text format; in-memory slices
//! are 0-indexed as usual.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Largest supported permutation length. `12!` ranks still fit comfortably in
/// a `u32`, and the enumeration engine's memory planning stops here.
pub const MAX_N: usize = 12;

/// `FACTORIAL[k] = k!` for `k <= MAX_N`.
pub const FACTORIAL: [usize; MAX_N + 1] = {
    let mut f = [1usize; MAX_N + 1];
    let mut k = 1;
    while k <= MAX_N {
        f[k] = f[k - 1] * k;
        k += 1;
    }
    f
};

/// A permutation of the letters `1..=n`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    letters: Vec<u8>,
}

/// Parity of the inversion count of a permutation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, serde::Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Even,
    Odd,
}

impl fmt::Display for Parity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Parity::Even => "even",
            Parity::Odd => "odd",
        })
    }
}

impl Permutation {
    /// Builds a permutation, validating that `letters` is a bijection on
    /// `{1..=n}` with `n <= MAX_N`.
    pub fn new(letters: Vec<u8>) -> Result<Self> {
        let n = letters.len();
        if n == 0 {
            return Err(Error::InvalidInput("empty permutation".into()));
        }
        if n > MAX_N {
            return Err(Error::InvalidInput(format!(
                "length {n} exceeds the supported maximum {MAX_N}"
            )));
        }
        let mut seen = [false; MAX_N + 1];
        for &x in &letters {
            if x == 0 || x as usize > n {
                return Err(Error::InvalidInput(format!(
                    "letter {x} out of range 1..={n}"
                )));
            }
            if seen[x as usize] {
                return Err(Error::InvalidInput(format!("duplicate letter {x}")));
            }
            seen[x as usize] = true;
        }
        Ok(Permutation { letters })
    }

    /// The identity permutation `1 2 ... n`.
    pub fn identity(n: usize) -> Result<Self> {
        Permutation::new((1..=n as u8).collect())
    }

    /// Standardization: the order-isomorphic permutation obtained by replacing
    /// the i-th smallest letter of `word` with `i`.
    pub fn standardize(word: &[u32]) -> Result<Self> {
        if word.is_empty() {
            return Err(Error::InvalidInput("empty word".into()));
        }
        if word.len() > MAX_N {
            return Err(Error::InvalidInput(format!(
                "length {} exceeds the supported maximum {MAX_N}",
                word.len()
            )));
        }
        let letters: Vec<u8> = word
            .iter()
            .map(|&x| {
                1 + word.iter().filter(|&&y| y < x).count() as u8
            })
            .collect();
        // Equal letters would collide after ranking.
        let mut seen = [false; MAX_N + 1];
        for &x in &letters {
            if seen[x as usize] {
                return Err(Error::InvalidInput("letters are not pairwise distinct".into()));
            }
            seen[x as usize] = true;
        }
        Ok(Permutation { letters })
    }

    pub(crate) fn from_letters_unchecked(letters: Vec<u8>) -> Self {
        debug_assert!(Permutation::new(letters.clone()).is_ok());
        Permutation { letters }
    }

    pub fn n(&self) -> usize {
        self.letters.len()
    }

    /// The image sequence, 0-indexed: `letters()[i]` is the letter at
    /// (1-based) position `i + 1`.
    pub fn letters(&self) -> &[u8] {
        &self.letters
    }

    pub fn begins_with_max(&self) -> bool {
        self.letters[0] as usize == self.n()
    }

    pub fn ends_with_min(&self) -> bool {
        *self.letters.last().unwrap() == 1
    }

    /// Standardization of this permutation with one letter deleted.
    pub fn sub_standardize(&self, letter: u8) -> Result<Self> {
        if letter == 0 || letter as usize > self.n() {
            return Err(Error::InvalidInput(format!(
                "letter {letter} does not occur in a permutation of length {}",
                self.n()
            )));
        }
        let letters = self
            .letters
            .iter()
            .filter(|&&x| x != letter)
            .map(|&x| if x > letter { x - 1 } else { x })
            .collect();
        Ok(Permutation { letters })
    }

    /// Inverse of `sub_standardize`: shifts letters `>= letter` up by one and
    /// inserts `letter` at 0-based position `pos`.
    pub fn insert_letter(&self, letter: u8, pos: usize) -> Result<Self> {
        let n = self.n() + 1;
        if n > MAX_N {
            return Err(Error::InvalidInput(format!(
                "length {n} exceeds the supported maximum {MAX_N}"
            )));
        }
        if letter == 0 || letter as usize > n {
            return Err(Error::InvalidInput(format!("letter {letter} out of range 1..={n}")));
        }
        if pos > self.n() {
            return Err(Error::InvalidInput(format!("position {pos} out of range")));
        }
        let mut letters: Vec<u8> = Vec::with_capacity(n);
        letters.extend(self.letters.iter().map(|&x| if x >= letter { x + 1 } else { x }));
        letters.insert(pos, letter);
        Ok(Permutation { letters })
    }

    /// Parity of the number of pairs `i < j` with `p[i] > p[j]`.
    pub fn inversion_parity(&self) -> Parity {
        let mut inv = 0usize;
        for i in 0..self.letters.len() {
            for j in i + 1..self.letters.len() {
                if self.letters[i] > self.letters[j] {
                    inv += 1;
                }
            }
        }
        if inv.is_multiple_of(2) {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    /// Lehmer rank: the position of this permutation in the lexicographic
    /// order of `S_n`, in `[0, n!)`. The identity has rank 0.
    pub fn rank(&self) -> usize {
        rank_letters(&self.letters)
    }

    /// Inverse of [`rank`](Self::rank).
    pub fn unrank(n: usize, rank: usize) -> Result<Self> {
        if n == 0 || n > MAX_N {
            return Err(Error::InvalidInput(format!("length {n} out of range 1..={MAX_N}")));
        }
        if rank >= FACTORIAL[n] {
            return Err(Error::InvalidInput(format!(
                "rank {rank} out of range for S_{n} (max {})",
                FACTORIAL[n] - 1
            )));
        }
        let mut available: Vec<u8> = (1..=n as u8).collect();
        let mut letters = Vec::with_capacity(n);
        let mut r = rank;
        for i in (0..n).rev() {
            let f = FACTORIAL[i];
            let idx = r / f;
            r %= f;
            letters.push(available.remove(idx));
        }
        Ok(Permutation { letters })
    }
}

/// Lehmer rank of a letter slice; also used by the engine on raw buffers.
pub(crate) fn rank_letters(letters: &[u8]) -> usize {
    let n = letters.len();
    let mut rank = 0usize;
    for i in 0..n {
        let smaller_after = letters[i + 1..].iter().filter(|&&x| x < letters[i]).count();
        rank += smaller_after * FACTORIAL[n - 1 - i];
    }
    rank
}

/// Advances `letters` to the lexicographic successor in place. Returns false
/// (leaving the slice reversed back to the identity-like minimum) when the
/// input was the maximum.
pub(crate) fn advance_lex(letters: &mut [u8]) -> bool {
    let n = letters.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && letters[i - 1] >= letters[i] {
        i -= 1;
    }
    if i == 0 {
        letters.reverse();
        return false;
    }
    let mut j = n - 1;
    while letters[j] <= letters[i - 1] {
        j -= 1;
    }
    letters.swap(i - 1, j);
    letters[i..].reverse();
    true
}

/// A swap of two distinct positions, `pos_a < pos_b` (0-based).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Transposition {
    pub pos_a: usize,
    pub pos_b: usize,
}

impl Transposition {
    /// The two positions where `p` and `q` differ, when `p` is exactly one
    /// transposition away from `q`.
    pub fn between(p: &Permutation, q: &Permutation) -> Option<Transposition> {
        if p.n() != q.n() {
            return None;
        }
        let mut diff = [0usize; 2];
        let mut count = 0;
        for i in 0..p.n() {
            if p.letters[i] != q.letters[i] {
                if count == 2 {
                    return None;
                }
                diff[count] = i;
                count += 1;
            }
        }
        if count != 2 {
            return None;
        }
        let (a, b) = (diff[0], diff[1]);
        if p.letters[a] != q.letters[b] || p.letters[b] != q.letters[a] {
            return None;
        }
        Some(Transposition { pos_a: a, pos_b: b })
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, x) in self.letters.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{x}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{self}]")
    }
}

impl FromStr for Permutation {
    type Err = Error;

    /// Parses the comma-separated form ("7,1,6,2,4,3,5"). The compact form
    /// without separators ("7162435") is accepted only for `n <= 9`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Err(Error::InvalidInput("empty permutation string".into()));
        }
        let letters: Vec<u8> = if s.contains(',') {
            s.split(',')
                .map(|tok| {
                    tok.trim()
                        .parse::<u8>()
                        .map_err(|_| Error::InvalidInput(format!("bad letter {tok:?}")))
                })
                .collect::<Result<_>>()?
        } else {
            if s.len() > 9 {
                return Err(Error::InvalidInput(
                    "compact form only supports n <= 9; use comma-separated letters".into(),
                ));
            }
            s.chars()
                .map(|c| {
                    c.to_digit(10)
                        .filter(|&d| d > 0)
                        .map(|d| d as u8)
                        .ok_or_else(|| Error::InvalidInput(format!("bad digit {c:?}")))
                })
                .collect::<Result<_>>()?
        };
        Permutation::new(letters)
    }
}
