//! Pattern sets, occurrence search, and pattern-replacement moves.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::perm::Permutation;

/// A nonempty set of pairwise-distinct patterns, all of the same length `c`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PatternSet {
    patterns: Vec<Permutation>,
    c: usize,
}

impl PatternSet {
    pub fn new(patterns: Vec<Permutation>) -> Result<Self> {
        if patterns.is_empty() {
            return Err(Error::InvalidInput("pattern set is empty".into()));
        }
        let c = patterns[0].n();
        if c < 2 {
            return Err(Error::InvalidInput("patterns must have length at least 2".into()));
        }
        if patterns.iter().any(|p| p.n() != c) {
            return Err(Error::InvalidInput("patterns have mixed lengths".into()));
        }
        let mut patterns = patterns;
        patterns.sort();
        patterns.dedup();
        Ok(PatternSet { patterns, c })
    }

    /// Common pattern length.
    pub fn c(&self) -> usize {
        self.c
    }

    /// Patterns in lexicographic order.
    pub fn patterns(&self) -> &[Permutation] {
        &self.patterns
    }

    pub fn len(&self) -> usize {
        self.patterns.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// The `{1234, 3412}` replacement relation studied throughout.
    pub fn quad_standard() -> Self {
        PatternSet::new(vec!["1234".parse().unwrap(), "3412".parse().unwrap()]).unwrap()
    }

    /// Canonical text form: patterns sorted and comma-joined, each compact
    /// when `c <= 9`. Cache keys and census records use this string.
    pub fn canonical_string(&self) -> String {
        let toks: Vec<String> = self
            .patterns
            .iter()
            .map(|p| {
                if p.n() <= 9 {
                    p.letters().iter().map(|x| x.to_string()).collect()
                } else {
                    p.to_string().replace(',', "-")
                }
            })
            .collect();
        toks.join(",")
    }
}

impl FromStr for PatternSet {
    type Err = Error;

    /// Accepts comma-joined compact patterns, optionally brace-wrapped:
    /// `"1234,3412"` or `"{1234,3412}"`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let s = s.strip_prefix('{').and_then(|t| t.strip_suffix('}')).unwrap_or(s);
        let patterns: Vec<Permutation> = s
            .split(',')
            .map(|tok| tok.trim().parse())
            .collect::<Result<_>>()?;
        PatternSet::new(patterns)
    }
}

impl fmt::Display for PatternSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.canonical_string())
    }
}

/// An occurrence of `pattern` in some host permutation: the host letters at
/// `indices` (0-based, strictly increasing) standardize to `pattern`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Occurrence {
    indices: Vec<usize>,
    pattern: Permutation,
}

impl Occurrence {
    /// 0-based index tuple, strictly increasing.
    pub fn indices(&self) -> &[usize] {
        &self.indices
    }

    /// 1-based positions, as written in text formats.
    pub fn positions(&self) -> Vec<usize> {
        self.indices.iter().map(|&i| i + 1).collect()
    }

    pub fn pattern(&self) -> &Permutation {
        &self.pattern
    }
}

/// Do `letters` form `pattern`, i.e. share its pairwise order relations?
pub(crate) fn forms_pattern(letters: &[u8], pattern: &[u8]) -> bool {
    debug_assert_eq!(letters.len(), pattern.len());
    for i in 0..letters.len() {
        for j in i + 1..letters.len() {
            if (letters[i] < letters[j]) != (pattern[i] < pattern[j]) {
                return false;
            }
        }
    }
    true
}

/// Calls `f` for every strictly increasing `c`-tuple of indices into a host
/// of length `n`, in lexicographic order. `idx` is scratch space of length `c`.
pub(crate) fn for_each_index_tuple(n: usize, c: usize, f: &mut impl FnMut(&[usize])) {
    if c > n || c == 0 {
        return;
    }
    let mut idx: Vec<usize> = (0..c).collect();
    loop {
        f(&idx);
        // odometer step
        let mut k = c;
        loop {
            if k == 0 {
                return;
            }
            k -= 1;
            idx[k] += 1;
            if idx[k] <= n - (c - k) {
                for t in k + 1..c {
                    idx[t] = idx[t - 1] + 1;
                }
                break;
            }
        }
    }
}

/// All occurrences of `pattern` in `p`, in lexicographic order of index
/// tuples. An empty result signals avoidance.
pub fn occurrences(p: &Permutation, pattern: &Permutation) -> Vec<Occurrence> {
    let n = p.n();
    let c = pattern.n();
    let mut out = Vec::new();
    if c > n {
        return out;
    }
    let letters = p.letters();
    let mut window = vec![0u8; c];
    for_each_index_tuple(n, c, &mut |idx| {
        for (w, &i) in window.iter_mut().zip(idx) {
            *w = letters[i];
        }
        if forms_pattern(&window, pattern.letters()) {
            out.push(Occurrence {
                indices: idx.to_vec(),
                pattern: pattern.clone(),
            });
        }
    });
    out
}

/// Rearranges the letters at `occ.indices` so they form `target`, leaving
/// every other position of `p` untouched.
pub fn apply_replacement(p: &Permutation, occ: &Occurrence, target: &Permutation) -> Result<Permutation> {
    let c = occ.pattern.n();
    if target.n() != c {
        return Err(Error::InvalidInput(format!(
            "target length {} does not match occurrence pattern length {c}",
            target.n()
        )));
    }
    if target == &occ.pattern {
        return Err(Error::InvalidInput("target equals the occurrence's pattern".into()));
    }
    if occ.indices.len() != c
        || occ.indices.windows(2).any(|w| w[0] >= w[1])
        || occ.indices.last().is_some_and(|&i| i >= p.n())
    {
        return Err(Error::InvalidInput("occurrence indices invalid for host".into()));
    }
    let letters = p.letters();
    let window: Vec<u8> = occ.indices.iter().map(|&i| letters[i]).collect();
    if !forms_pattern(&window, occ.pattern.letters()) {
        return Err(Error::InvalidInput(
            "occurrence letters do not form its pattern in this host".into(),
        ));
    }
    // The letter of rank t among the occurrence letters is window[k] where
    // pattern[k] = t, so sorting is not needed.
    let mut sorted = vec![0u8; c];
    for (k, &pat) in occ.pattern.letters().iter().enumerate() {
        sorted[pat as usize - 1] = window[k];
    }
    let mut out = letters.to_vec();
    for (k, &i) in occ.indices.iter().enumerate() {
        out[i] = sorted[target.letters()[k] as usize - 1];
    }
    Ok(Permutation::from_letters_unchecked(out))
}
