//! Exhaustive enumeration of the equivalence-class partition of `S_n` under a
//! pattern set, plus derived censuses and targeted class queries.
//!
//! States are Lehmer ranks; the partition is a flat union-find array over
//! `[0, n!)`. Workers split the rank space into contiguous chunks and walk
//! their chunk in lexicographic order, unioning each permutation with every
//! one-replacement neighbor. The finished partition stores, for every rank,
//! the minimum rank of its class, which makes results independent of worker
//! count.

mod union_find;
pub mod cache;

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::pattern::{apply_replacement, for_each_index_tuple, forms_pattern, occurrences, PatternSet};
use crate::perm::{advance_lex, rank_letters, Parity, Permutation, FACTORIAL, MAX_N};

use union_find::AtomicUnionFind;

/// Enumerating `S_12` allocates one `u32` per state, about 1.9 GiB; anything
/// from `S_11` down fits desk-scale memory without ceremony.
pub const BIG_N: usize = 12;

/// Default cap on the number of states a targeted class query may visit.
pub const DEFAULT_CLASS_CAP: usize = 10_000_000;

#[derive(Debug, Clone, Default)]
pub struct EnumerateOptions {
    /// Worker threads; 0 means all available parallelism.
    pub workers: usize,
    /// Permits n = 12 despite its memory footprint.
    pub allow_big_n: bool,
}

impl EnumerateOptions {
    pub fn resolved_workers(&self) -> usize {
        if self.workers > 0 {
            self.workers
        } else {
            std::thread::available_parallelism().map(|p| p.get()).unwrap_or(1)
        }
    }
}

/// The partition of `S_n` into equivalence classes, stored as the canonical
/// root array: `roots[r]` is the minimum rank in the class of rank `r`.
pub struct ClassPartition {
    n: usize,
    patterns: PatternSet,
    roots: Vec<u32>,
    class_sizes: HashMap<u32, u32>,
    survey: OnceLock<ClassSurvey>,
}

impl std::fmt::Debug for ClassPartition {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("ClassPartition")
            .field("n", &self.n)
            .field("patterns", &self.patterns.canonical_string())
            .field("states", &self.roots.len())
            .field("classes", &self.class_sizes.len())
            .finish()
    }
}


/// Aggregate counts for one partition.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Census {
    pub n: usize,
    pub patterns: String,
    pub total_classes: u64,
    pub nontrivial_classes: u64,
    pub b_count: u64,
    pub size_histogram: BTreeMap<u32, u64>,
}

/// Per-class facts gathered in one sweep over the nontrivial classes.
#[derive(Debug, Clone)]
pub struct RootStats {
    pub size: u32,
    pub any_begins_with_max: bool,
    pub all_begins_with_max: bool,
    pub any_ends_with_min: bool,
    pub all_ends_with_min: bool,
    pub even_members: u64,
    pub odd_members: u64,
    pub root_parity: Parity,
    /// Rank of the first member whose parity differs from the root member's.
    pub first_parity_mismatch: Option<u32>,
}

/// Stats for every nontrivial class, keyed by canonical root.
#[derive(Debug, Clone, Default)]
pub struct ClassSurvey {
    pub nontrivial: HashMap<u32, RootStats>,
}

fn parity_of_letters(letters: &[u8]) -> Parity {
    let mut inv = 0usize;
    for i in 0..letters.len() {
        for j in i + 1..letters.len() {
            if letters[i] > letters[j] {
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

impl ClassPartition {
    /// Rebuilds a partition from a canonical root array, validating shape:
    /// every entry points at a class minimum that points at itself.
    pub fn from_canonical_roots(n: usize, patterns: PatternSet, roots: Vec<u32>) -> Result<Self> {
        if n == 0 || n > MAX_N {
            return Err(Error::InvalidInput(format!("length {n} out of range 1..={MAX_N}")));
        }
        if roots.len() != FACTORIAL[n] {
            return Err(Error::InvalidInput(format!(
                "root array has {} entries, expected {}!",
                roots.len(),
                n
            )));
        }
        let mut class_sizes: HashMap<u32, u32> = HashMap::new();
        for (r, &root) in roots.iter().enumerate() {
            if root as usize > r || roots[root as usize] != root {
                return Err(Error::InvalidInput(format!(
                    "root array is not canonical at rank {r}"
                )));
            }
            *class_sizes.entry(root).or_insert(0) += 1;
        }
        Ok(ClassPartition {
            n,
            patterns,
            roots,
            class_sizes,
            survey: OnceLock::new(),
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn patterns(&self) -> &PatternSet {
        &self.patterns
    }

    pub fn total_states(&self) -> usize {
        self.roots.len()
    }

    /// Canonical root array; entry `r` is the minimum rank of `r`'s class.
    pub fn roots(&self) -> &[u32] {
        &self.roots
    }

    pub fn root_of_rank(&self, rank: usize) -> u32 {
        self.roots[rank]
    }

    pub fn root_of(&self, p: &Permutation) -> u32 {
        assert_eq!(p.n(), self.n, "permutation length does not match partition");
        self.roots[p.rank()]
    }

    pub fn same_class(&self, p: &Permutation, q: &Permutation) -> bool {
        self.root_of(p) == self.root_of(q)
    }

    pub fn class_size_of_root(&self, root: u32) -> u32 {
        self.class_sizes.get(&root).copied().unwrap_or(0)
    }

    pub fn class_sizes(&self) -> &HashMap<u32, u32> {
        &self.class_sizes
    }

    /// All members of one class, in rank order. Walks the whole rank space.
    pub fn members_of_root(&self, root: u32) -> Vec<Permutation> {
        let mut out = Vec::with_capacity(self.class_size_of_root(root) as usize);
        for (r, &rt) in self.roots.iter().enumerate() {
            if rt == root {
                out.push(Permutation::unrank(self.n, r).expect("rank in range"));
            }
        }
        out
    }

    /// One sweep over `S_n` in lexicographic order collecting per-class stats
    /// for the nontrivial classes. Cached after the first call.
    pub fn survey(&self) -> &ClassSurvey {
        self.survey.get_or_init(|| {
            let mut nontrivial: HashMap<u32, RootStats> = HashMap::new();
            let n = self.n;
            let max = n as u8;
            let mut letters: Vec<u8> = (1..=max).collect();
            for r in 0..self.roots.len() {
                let root = self.roots[r];
                if self.class_sizes[&root] >= 2 {
                    let begins = letters[0] == max;
                    let ends = letters[n - 1] == 1;
                    let parity = parity_of_letters(&letters);
                    let stats = nontrivial.entry(root).or_insert_with(|| RootStats {
                        size: self.class_sizes[&root],
                        any_begins_with_max: false,
                        all_begins_with_max: true,
                        any_ends_with_min: false,
                        all_ends_with_min: true,
                        even_members: 0,
                        odd_members: 0,
                        // ranks ascend, so the first member seen is the root
                        root_parity: parity,
                        first_parity_mismatch: None,
                    });
                    stats.any_begins_with_max |= begins;
                    stats.all_begins_with_max &= begins;
                    stats.any_ends_with_min |= ends;
                    stats.all_ends_with_min &= ends;
                    match parity {
                        Parity::Even => stats.even_members += 1,
                        Parity::Odd => stats.odd_members += 1,
                    }
                    if parity != stats.root_parity && stats.first_parity_mismatch.is_none() {
                        stats.first_parity_mismatch = Some(r as u32);
                    }
                }
                advance_lex(&mut letters);
            }
            ClassSurvey { nontrivial }
        })
    }

    /// Aggregate counts. `b_count` is the number of nontrivial classes in
    /// which no member begins with `n` or ends with `1`, established by
    /// scanning members rather than assuming the moves preserve endpoints.
    pub fn census(&self) -> Census {
        let survey = self.survey();
        let mut size_histogram: BTreeMap<u32, u64> = BTreeMap::new();
        for &size in self.class_sizes.values() {
            *size_histogram.entry(size).or_insert(0) += 1;
        }
        let b_count = survey
            .nontrivial
            .values()
            .filter(|s| !s.any_begins_with_max && !s.any_ends_with_min)
            .count() as u64;
        Census {
            n: self.n,
            patterns: self.patterns.canonical_string(),
            total_classes: self.class_sizes.len() as u64,
            nontrivial_classes: survey.nontrivial.len() as u64,
            b_count,
            size_histogram,
        }
    }
}

/// Pattern data laid out for the enumeration hot loop: for each ordered pair
/// `(s, t)` of distinct patterns, `pair_map[s][t][k]` is the window index
/// whose letter lands at occurrence slot `k` after an `s -> t` replacement.
struct CompiledPatterns {
    c: usize,
    letters: Vec<Vec<u8>>,
    pair_map: Vec<Vec<Vec<usize>>>,
}

impl CompiledPatterns {
    fn new(patterns: &PatternSet) -> Self {
        let c = patterns.c();
        let letters: Vec<Vec<u8>> = patterns.patterns().iter().map(|p| p.letters().to_vec()).collect();
        let np = letters.len();
        let mut pair_map = vec![vec![Vec::new(); np]; np];
        for s in 0..np {
            for t in 0..np {
                if s == t {
                    continue;
                }
                pair_map[s][t] = (0..c)
                    .map(|k| letters[s].iter().position(|&x| x == letters[t][k]).unwrap())
                    .collect();
            }
        }
        CompiledPatterns { c, letters, pair_map }
    }
}

/// Unions `rank` with every one-replacement neighbor of `letters`.
fn union_neighbors(
    uf: &AtomicUnionFind,
    rank: usize,
    letters: &[u8],
    compiled: &CompiledPatterns,
    window: &mut [u8],
    buf: &mut [u8],
) {
    let n = letters.len();
    let c = compiled.c;
    if c > n {
        return;
    }
    let np = compiled.letters.len();
    for_each_index_tuple(n, c, &mut |idx| {
        for (w, &i) in window.iter_mut().zip(idx) {
            *w = letters[i];
        }
        // A window standardizes to exactly one pattern, so stop at a match.
        for s in 0..np {
            if forms_pattern(window, &compiled.letters[s]) {
                for t in 0..np {
                    if t == s {
                        continue;
                    }
                    buf.copy_from_slice(letters);
                    let map = &compiled.pair_map[s][t];
                    for k in 0..c {
                        buf[idx[k]] = window[map[k]];
                    }
                    uf.union(rank as u32, rank_letters(buf) as u32);
                }
                break;
            }
        }
    });
}

/// Enumerates the full partition of `S_n` under `patterns`.
///
/// `n = 12` is refused unless `allow_big_n` is set. The result is a value:
/// identical for any worker count.
pub fn enumerate_partition(
    n: usize,
    patterns: &PatternSet,
    opts: &EnumerateOptions,
) -> Result<ClassPartition> {
    if n == 0 || n > MAX_N {
        return Err(Error::InvalidInput(format!("length {n} out of range 1..={MAX_N}")));
    }
    if n >= BIG_N && !opts.allow_big_n {
        let gib = (FACTORIAL[n] * 4) as f64 / (1u64 << 30) as f64;
        return Err(Error::Resource(format!(
            "enumerating S_{n} needs a {}-entry union-find (~{gib:.1} GiB); \
             pass the big-n override to proceed",
            FACTORIAL[n]
        )));
    }
    let total = FACTORIAL[n];
    let uf = AtomicUnionFind::new(total);
    let compiled = CompiledPatterns::new(patterns);
    let workers = opts.resolved_workers().clamp(1, total.max(1));

    std::thread::scope(|scope| {
        let per = total / workers;
        let rem = total % workers;
        let mut start = 0usize;
        for w in 0..workers {
            let len = per + usize::from(w < rem);
            let (lo, hi) = (start, start + len);
            start = hi;
            if lo >= hi {
                continue;
            }
            let uf = &uf;
            let compiled = &compiled;
            scope.spawn(move || {
                let mut letters = Permutation::unrank(n, lo)
                    .expect("chunk start in range")
                    .letters()
                    .to_vec();
                let mut window = vec![0u8; compiled.c];
                let mut buf = vec![0u8; n];
                for r in lo..hi {
                    union_neighbors(uf, r, &letters, compiled, &mut window, &mut buf);
                    advance_lex(&mut letters);
                }
            });
        }
    });

    let roots = uf.into_canonical_roots();
    ClassPartition::from_canonical_roots(n, patterns.clone(), roots)
}

/// All permutations reachable from `p` by a single replacement.
pub fn neighbors(p: &Permutation, patterns: &PatternSet) -> BTreeSet<Permutation> {
    let mut out = BTreeSet::new();
    for src in patterns.patterns() {
        for occ in occurrences(p, src) {
            for tgt in patterns.patterns() {
                if tgt != src {
                    out.insert(apply_replacement(p, &occ, tgt).expect("occurrence is valid"));
                }
            }
        }
    }
    out
}

/// The equivalence class of `p`, by breadth-first closure under `neighbors`.
/// Fails once more than `cap` states have been reached.
pub fn class_of(p: &Permutation, patterns: &PatternSet, cap: usize) -> Result<BTreeSet<Permutation>> {
    let mut seen = BTreeSet::new();
    seen.insert(p.clone());
    let mut queue = VecDeque::new();
    queue.push_back(p.clone());
    while let Some(q) = queue.pop_front() {
        for nb in neighbors(&q, patterns) {
            if !seen.contains(&nb) {
                if seen.len() >= cap {
                    return Err(Error::Resource(format!(
                        "class of {p} exceeds the exploration cap of {cap} states"
                    )));
                }
                seen.insert(nb.clone());
                queue.push_back(nb);
            }
        }
    }
    Ok(seen)
}

/// Prepends a new maximum letter to every member of a class in `S_{n-1}`,
/// producing a class of `S_n`.
pub fn lift_front(class: &BTreeSet<Permutation>) -> Result<BTreeSet<Permutation>> {
    class
        .iter()
        .map(|p| p.insert_letter(p.n() as u8 + 1, 0))
        .collect()
}

/// Appends a new minimum to every member: all letters shift up by one and a
/// trailing 1 is added.
pub fn lift_back(class: &BTreeSet<Permutation>) -> Result<BTreeSet<Permutation>> {
    class.iter().map(|p| p.insert_letter(1, p.n())).collect()
}
