//! Set-based brute-force oracle. Deliberately independent of the library's
//! ranking, union-find, and occurrence machinery: permutations are generated
//! by itertools, occurrences by nested index loops, classes by BFS over
//! explicit permutation sets.

#![allow(dead_code)]

use std::collections::{BTreeSet, HashSet, VecDeque};

use itertools::Itertools;

pub type Word = Vec<u8>;

pub fn all_perms(n: usize) -> Vec<Word> {
    (1..=n as u8).permutations(n).collect()
}

pub fn standardize(word: &[u8]) -> Word {
    word.iter()
        .map(|&x| 1 + word.iter().filter(|&&y| y < x).count() as u8)
        .collect()
}

/// Literal transcription of the definition for length-4 patterns: four nested
/// index loops and a standardization comparison.
pub fn naive_occurrences_c4(host: &[u8], pattern: &[u8]) -> Vec<[usize; 4]> {
    assert_eq!(pattern.len(), 4);
    let n = host.len();
    let mut out = Vec::new();
    for i1 in 0..n {
        for i2 in i1 + 1..n {
            for i3 in i2 + 1..n {
                for i4 in i3 + 1..n {
                    let w = [host[i1], host[i2], host[i3], host[i4]];
                    if standardize(&w) == pattern {
                        out.push([i1, i2, i3, i4]);
                    }
                }
            }
        }
    }
    out
}

/// Rearranges the letters at `idx` so they form `target`.
pub fn rearrange(host: &[u8], idx: &[usize], target: &[u8]) -> Word {
    let mut letters: Vec<u8> = idx.iter().map(|&i| host[i]).collect();
    letters.sort_unstable();
    let mut out = host.to_vec();
    for (k, &i) in idx.iter().enumerate() {
        out[i] = letters[target[k] as usize - 1];
    }
    out
}

/// All one-replacement neighbors of `host` under a same-length pattern set.
pub fn naive_neighbors(host: &[u8], patterns: &[Word]) -> BTreeSet<Word> {
    let c = patterns[0].len();
    let mut out = BTreeSet::new();
    if c > host.len() {
        return out;
    }
    for idx in (0..host.len()).combinations(c) {
        let window: Word = idx.iter().map(|&i| host[i]).collect();
        let std = standardize(&window);
        for src in patterns {
            if &std == src {
                for tgt in patterns {
                    if tgt != src {
                        out.insert(rearrange(host, &idx, tgt));
                    }
                }
            }
        }
    }
    out
}

/// The full partition of `S_n` as a set of explicit classes, via BFS.
pub fn naive_partition(n: usize, patterns: &[Word]) -> Vec<BTreeSet<Word>> {
    let mut seen: HashSet<Word> = HashSet::new();
    let mut classes = Vec::new();
    for start in all_perms(n) {
        if seen.contains(&start) {
            continue;
        }
        let mut class: BTreeSet<Word> = BTreeSet::new();
        let mut queue = VecDeque::new();
        class.insert(start.clone());
        queue.push_back(start);
        while let Some(host) = queue.pop_front() {
            for nb in naive_neighbors(&host, patterns) {
                if class.insert(nb.clone()) {
                    queue.push_back(nb);
                }
            }
        }
        seen.extend(class.iter().cloned());
        classes.push(class);
    }
    classes
}

/// `(total, nontrivial, b_count)` computed from the explicit classes.
pub fn naive_counts(classes: &[BTreeSet<Word>], n: usize) -> (usize, usize, usize) {
    let total = classes.len();
    let nontrivial = classes.iter().filter(|c| c.len() > 1).count();
    let b_count = classes
        .iter()
        .filter(|c| {
            c.len() > 1
                && !c
                    .iter()
                    .any(|p| p[0] as usize == n || *p.last().unwrap() == 1)
        })
        .count();
    (total, nontrivial, b_count)
}

pub fn quad_patterns() -> Vec<Word> {
    vec![vec![1, 2, 3, 4], vec![3, 4, 1, 2]]
}
