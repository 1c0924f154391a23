//! The checkers. Each one re-derives a single quantitative or structural
//! statement from an enumerated partition (or by direct scanning) and reports
//! pass/fail with a minimal witness.

use std::collections::HashSet;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::engine::{Census, ClassPartition};
use crate::error::{Error, Result};
use crate::leader::{adjacency_set, is_adjacent, leader, leader_permutations};
use crate::pattern::{apply_replacement, forms_pattern, occurrences, Occurrence, PatternSet};
use crate::perm::{advance_lex, Parity, Permutation, Transposition, FACTORIAL, MAX_N};
use crate::verify::report::{CheckReport, Counterexample};

/// Default sample count for the randomized move test.
pub const DEFAULT_MOVE_SAMPLES: usize = 100_000;
/// Default sample count for the randomized triple scan.
pub const DEFAULT_TRIPLE_SAMPLES: usize = 100_000;

/// Number of nontrivial classes claimed for `n >= 7`:
/// `(n^3 + 6n^2 - 55n + 54) / 6`.
pub fn closed_form_value(n: usize) -> u64 {
    assert!(n >= 7, "closed form only claimed for n >= 7");
    let n = n as u64;
    (n * n * n + 6 * n * n + 54 - 55 * n) / 6
}

fn quad_guard(patterns: &PatternSet, check: &str) -> Result<()> {
    if patterns != &PatternSet::quad_standard() {
        return Err(Error::Precondition(format!(
            "{check} is a statement about the 1234,3412 relation; got patterns {patterns}"
        )));
    }
    Ok(())
}

fn quad_census_guard(census: &Census, check: &str) -> Result<()> {
    if census.patterns != PatternSet::quad_standard().canonical_string() {
        return Err(Error::Precondition(format!(
            "{check} is a statement about the 1234,3412 relation; got patterns {}",
            census.patterns
        )));
    }
    Ok(())
}

/// Nontrivial-class count equals the closed form, `n >= 7`.
pub fn check_closed_form(partition: &ClassPartition) -> Result<CheckReport> {
    let started = Instant::now();
    quad_guard(partition.patterns(), "closed-form")?;
    let n = partition.n();
    if n < 7 {
        return Err(Error::Precondition(format!(
            "closed-form is only claimed for n >= 7 (requested {n})"
        )));
    }
    let expected = closed_form_value(n);
    let actual = partition.census().nontrivial_classes;
    let outcome = (actual != expected).then(|| Counterexample::Count {
        n,
        expected: expected as i64,
        actual: actual as i64,
        detail: "nontrivial class count differs from (n^3+6n^2-55n+54)/6".into(),
    });
    Ok(CheckReport::from_outcome("closed-form", [n, n], outcome, None, started))
}

/// `A_n - B_n = 2*A_{n-1} - A_{n-2}` from enumerated censuses.
pub fn check_recurrence(cn: &Census, cn1: &Census, cn2: &Census) -> Result<CheckReport> {
    let started = Instant::now();
    let n = cn.n;
    if cn.patterns != cn1.patterns || cn.patterns != cn2.patterns {
        return Err(Error::InvalidInput(format!(
            "censuses mix pattern sets: {} / {} / {}",
            cn.patterns, cn1.patterns, cn2.patterns
        )));
    }
    if cn1.n + 1 != n || cn2.n + 2 != n {
        return Err(Error::InvalidInput(format!(
            "censuses are not for consecutive lengths: {}, {}, {}",
            n, cn1.n, cn2.n
        )));
    }
    if n < 3 {
        return Err(Error::Precondition(format!(
            "the recurrence is stated for n >= 3 (requested {n})"
        )));
    }
    let lhs = cn.nontrivial_classes as i64 - cn.b_count as i64;
    let rhs = 2 * cn1.nontrivial_classes as i64 - cn2.nontrivial_classes as i64;
    let outcome = (lhs != rhs).then(|| Counterexample::Count {
        n,
        expected: rhs,
        actual: lhs,
        detail: format!(
            "A_{n} - B_{n} = {lhs} but 2*A_{} - A_{} = {rhs}",
            n - 1,
            n - 2
        ),
    });
    Ok(CheckReport::from_outcome("recurrence", [n - 2, n], outcome, None, started))
}

/// `B_n = n + 1` for `n >= 7`.
pub fn check_b_count(census: &Census) -> Result<CheckReport> {
    let started = Instant::now();
    quad_census_guard(census, "b-count")?;
    let n = census.n;
    if n < 7 {
        return Err(Error::Precondition(format!(
            "b-count is only claimed for n >= 7 (requested {n})"
        )));
    }
    let expected = (n + 1) as u64;
    let outcome = (census.b_count != expected).then(|| Counterexample::Count {
        n,
        expected: expected as i64,
        actual: census.b_count as i64,
        detail: "count of nontrivial classes avoiding leading n and trailing 1".into(),
    });
    Ok(CheckReport::from_outcome("b-count", [n, n], outcome, None, started))
}

/// Each leader's adjacency set is exactly one class, the n-1 classes are
/// pairwise distinct, and every leader is itself a singleton class.
pub fn check_leader_classes(partition: &ClassPartition) -> Result<CheckReport> {
    let started = Instant::now();
    quad_guard(partition.patterns(), "leader-classes")?;
    let n = partition.n();
    if n < 7 {
        return Err(Error::Precondition(format!(
            "leader-classes is only claimed for n >= 7 (requested {n})"
        )));
    }
    let mut seen_roots: HashSet<u32> = HashSet::new();
    let mut outcome = None;
    'leaders: for k in 2..=n {
        let l = leader(n, k)?;
        let adj = adjacency_set(&l);
        let Some(first) = adj.iter().next() else {
            outcome = Some(Counterexample::Permutation {
                perm: l.to_string(),
                detail: format!("leader with break point {k} has an empty adjacency set"),
            });
            break;
        };
        let root = partition.root_of(first);
        for member in &adj {
            if partition.root_of(member) != root {
                outcome = Some(Counterexample::Permutation {
                    perm: member.to_string(),
                    detail: format!(
                        "adjacency set of the break-point-{k} leader spans several classes"
                    ),
                });
                break 'leaders;
            }
        }
        let block_size = partition.class_size_of_root(root);
        if block_size as usize != adj.len() {
            outcome = Some(Counterexample::Class {
                representative: first.to_string(),
                size: block_size as u64,
                detail: format!(
                    "class strictly contains the adjacency set of the break-point-{k} leader \
                     ({} adjacent permutations)",
                    adj.len()
                ),
            });
            break;
        }
        if partition.class_size_of_root(partition.root_of(&l)) != 1 {
            outcome = Some(Counterexample::Permutation {
                perm: l.to_string(),
                detail: format!("leader with break point {k} is not a singleton class"),
            });
            break;
        }
        if !seen_roots.insert(root) {
            outcome = Some(Counterexample::Class {
                representative: first.to_string(),
                size: block_size as u64,
                detail: format!("two leaders share the class of break point {k}"),
            });
            break;
        }
    }
    Ok(CheckReport::from_outcome("leader-classes", [n, n], outcome, None, started))
}

/// Every class is parity-homogeneous.
pub fn check_parity(partition: &ClassPartition) -> CheckReport {
    let started = Instant::now();
    let n = partition.n();
    let survey = partition.survey();
    let mut violating: Option<u32> = None;
    for (&root, stats) in &survey.nontrivial {
        if stats.even_members > 0 && stats.odd_members > 0 {
            violating = Some(match violating {
                Some(prev) => prev.min(root),
                None => root,
            });
        }
    }
    let outcome = violating.map(|root| {
        let stats = &survey.nontrivial[&root];
        let rep = Permutation::unrank(n, root as usize).expect("root in range");
        let mismatch = stats.first_parity_mismatch.expect("mixed class has a mismatch");
        let witness = Permutation::unrank(n, mismatch as usize).expect("rank in range");
        Counterexample::Class {
            representative: rep.to_string(),
            size: stats.size as u64,
            detail: format!(
                "class mixes parities ({} even, {} odd); first member differing from \
                 {rep} is {witness}",
                stats.even_members, stats.odd_members
            ),
        }
    });
    CheckReport::from_outcome("parity", [n, n], outcome, None, started)
}

/// Applies `samples` random single replacements at length `n` and verifies
/// none of them changes the inversion parity.
pub fn check_parity_moves(
    n: usize,
    patterns: &PatternSet,
    samples: usize,
    seed: u64,
) -> Result<CheckReport> {
    let started = Instant::now();
    if n == 0 || n > MAX_N {
        return Err(Error::InvalidInput(format!("length {n} out of range 1..={MAX_N}")));
    }
    if patterns.c() > n {
        return Err(Error::Precondition(format!(
            "no replacement fits: pattern length {} exceeds n = {n}",
            patterns.c()
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut counted = 0usize;
    let mut attempts = 0usize;
    let max_attempts = samples.saturating_mul(100);
    let mut outcome = None;
    while counted < samples && attempts < max_attempts && outcome.is_none() {
        attempts += 1;
        let rank = rng.gen_range(0..FACTORIAL[n]);
        let perm = Permutation::unrank(n, rank).expect("rank in range");
        let mut moves: Vec<(Occurrence, &Permutation)> = Vec::new();
        for src in patterns.patterns() {
            for occ in occurrences(&perm, src) {
                for tgt in patterns.patterns() {
                    if tgt != src {
                        moves.push((occ.clone(), tgt));
                    }
                }
            }
        }
        if moves.is_empty() {
            continue;
        }
        let (occ, tgt) = &moves[rng.gen_range(0..moves.len())];
        let replaced = apply_replacement(&perm, occ, tgt).expect("occurrence is valid");
        counted += 1;
        if replaced.inversion_parity() != perm.inversion_parity() {
            outcome = Some(Counterexample::Permutation {
                perm: perm.to_string(),
                detail: format!(
                    "replacing the occurrence at positions {:?} with {tgt} gave {replaced}, \
                     changing parity",
                    occ.positions()
                ),
            });
        }
    }
    let notes = (counted < samples && outcome.is_none()).then(|| {
        format!("only {counted} of {samples} requested moves were found in {attempts} attempts")
    });
    Ok(CheckReport::from_outcome("parity-moves", [n, n], outcome, Some(seed), started)
        .with_notes(notes))
}

fn identity_perm(n: usize) -> Permutation {
    Permutation::identity(n).expect("n validated")
}

/// `1 2 ... (n-2) n (n-1)`: the identity with its last two letters swapped.
fn near_identity_perm(n: usize) -> Permutation {
    let mut letters: Vec<u8> = (1..=n as u8).collect();
    letters.swap(n - 2, n - 1);
    Permutation::new(letters).expect("valid letters")
}

/// Classifies the nontrivial classes with no member beginning with `n` or
/// ending with `1`: after removing the n-1 leader-adjacency classes, exactly
/// two remain, the even one containing the identity and the odd one
/// containing the identity with its final two letters swapped.
pub fn check_primary_classes(partition: &ClassPartition) -> Result<CheckReport> {
    let started = Instant::now();
    quad_guard(partition.patterns(), "primary-classes")?;
    let n = partition.n();
    if n < 7 {
        return Err(Error::Precondition(format!(
            "primary-classes is only claimed for n >= 7 (requested {n})"
        )));
    }
    let survey = partition.survey();
    let leader_roots: HashSet<u32> = (2..=n)
        .map(|k| {
            let l = leader(n, k)?;
            let adj = adjacency_set(&l);
            Ok(partition.root_of(adj.iter().next().expect("nonempty for n >= 7")))
        })
        .collect::<Result<_>>()?;
    let mut primaries: Vec<u32> = survey
        .nontrivial
        .iter()
        .filter(|(root, stats)| {
            !stats.any_begins_with_max
                && !stats.any_ends_with_min
                && !leader_roots.contains(root)
        })
        .map(|(&root, _)| root)
        .collect();
    primaries.sort_unstable();

    let outcome = (|| {
        if primaries.len() != 2 {
            return Some(Counterexample::Count {
                n,
                expected: 2,
                actual: primaries.len() as i64,
                detail: "number of candidate primary classes after removing leader classes".into(),
            });
        }
        let pi = identity_perm(n);
        let psi = near_identity_perm(n);
        for (perm, parity, name) in
            [(&pi, Parity::Even, "identity"), (&psi, Parity::Odd, "near-identity")]
        {
            let root = partition.root_of(perm);
            if !primaries.contains(&root) {
                return Some(Counterexample::Permutation {
                    perm: perm.to_string(),
                    detail: format!("the {name} permutation is not in a primary class"),
                });
            }
            let stats = &survey.nontrivial[&root];
            let (even, odd) = (stats.even_members, stats.odd_members);
            let homogeneous = match parity {
                Parity::Even => odd == 0,
                Parity::Odd => even == 0,
            };
            if !homogeneous {
                return Some(Counterexample::Class {
                    representative: perm.to_string(),
                    size: stats.size as u64,
                    detail: format!(
                        "primary class of the {name} permutation is not all-{parity} \
                         ({even} even, {odd} odd)"
                    ),
                });
            }
        }
        if partition.root_of(&pi) == partition.root_of(&psi) {
            return Some(Counterexample::Permutation {
                perm: psi.to_string(),
                detail: "identity and near-identity share a class despite differing parity".into(),
            });
        }
        None
    })();
    Ok(CheckReport::from_outcome("primary-classes", [n, n], outcome, None, started))
}

/// The assembly identity: the nontrivial classes avoiding leading `n` and
/// trailing `1` are exactly the n-1 leader classes plus the 2 primary
/// classes, and every other nontrivial class is a lifted class.
pub fn check_assembly(partition: &ClassPartition) -> Result<CheckReport> {
    let started = Instant::now();
    quad_guard(partition.patterns(), "assembly")?;
    let n = partition.n();
    if n < 7 {
        return Err(Error::Precondition(format!(
            "assembly is only claimed for n >= 7 (requested {n})"
        )));
    }
    let survey = partition.survey();
    let mut leader_roots: HashSet<u32> = HashSet::new();
    for k in 2..=n {
        let l = leader(n, k)?;
        let adj = adjacency_set(&l);
        leader_roots.insert(partition.root_of(adj.iter().next().expect("nonempty")));
    }
    let mut b_family: Vec<u32> = Vec::new();
    let mut outcome = None;
    let mut sorted_roots: Vec<u32> = survey.nontrivial.keys().copied().collect();
    sorted_roots.sort_unstable();
    for root in sorted_roots {
        let stats = &survey.nontrivial[&root];
        let in_b_family = !stats.any_begins_with_max && !stats.any_ends_with_min;
        if in_b_family {
            b_family.push(root);
        } else if !stats.all_begins_with_max && !stats.all_ends_with_min {
            // A lifted class must be uniformly lifted; a mix means the tag
            // taxonomy fails to cover it.
            let rep = Permutation::unrank(n, root as usize).expect("root in range");
            outcome = Some(Counterexample::Class {
                representative: rep.to_string(),
                size: stats.size as u64,
                detail: "nontrivial class mixes members with and without a leading n / \
                         trailing 1; no tag applies"
                    .into(),
            });
            break;
        }
    }
    if outcome.is_none() {
        if !leader_roots.iter().all(|r| b_family.contains(r)) {
            let bad = leader_roots.iter().find(|r| !b_family.contains(r)).unwrap();
            let rep = Permutation::unrank(n, *bad as usize).expect("root in range");
            outcome = Some(Counterexample::Class {
                representative: rep.to_string(),
                size: partition.class_size_of_root(*bad) as u64,
                detail: "a leader-adjacency class contains a member with a leading n or \
                         trailing 1"
                    .into(),
            });
        } else if leader_roots.len() != n - 1 {
            outcome = Some(Counterexample::Count {
                n,
                expected: (n - 1) as i64,
                actual: leader_roots.len() as i64,
                detail: "distinct leader-adjacency classes".into(),
            });
        } else if b_family.len() != n + 1 {
            outcome = Some(Counterexample::Count {
                n,
                expected: (n + 1) as i64,
                actual: b_family.len() as i64,
                detail: "classes avoiding leading n and trailing 1 should number (n-1) + 2".into(),
            });
        } else {
            let primaries = b_family.iter().filter(|r| !leader_roots.contains(r)).count();
            if primaries != 2 {
                outcome = Some(Counterexample::Count {
                    n,
                    expected: 2,
                    actual: primaries as i64,
                    detail: "primary classes left after removing leader classes".into(),
                });
            }
        }
    }
    Ok(CheckReport::from_outcome("assembly", [n, n], outcome, None, started))
}

// ---------------------------------------------------------------------------
// Creating primary permutations (the triple scan)
// ---------------------------------------------------------------------------

/// Does `word` (distinct letters, arbitrary values) contain an occurrence of
/// any pattern in `pats`?
fn word_contains_any(word: &[u8], pats: &[&[u8]]) -> bool {
    let n = word.len();
    let c = pats[0].len();
    if c > n {
        return false;
    }
    let mut idx: Vec<usize> = (0..c).collect();
    let mut window = vec![0u8; c];
    loop {
        for (w, &i) in window.iter_mut().zip(&idx) {
            *w = word[i];
        }
        if pats.iter().any(|p| forms_pattern(&window, p)) {
            return true;
        }
        let mut k = c;
        loop {
            if k == 0 {
                return false;
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

/// Is `a` congruent to `b +- 1` modulo `m`?
fn letters_adjacent_mod(a: u8, b: u8, m: usize) -> bool {
    let d = (a as i64 - b as i64).rem_euclid(m as i64);
    d == 1 || d == m as i64 - 1
}

/// Call-site side conditions on the second removed letter.
fn call_site_conditions(letters: &[u8], b: u8) -> bool {
    let n = letters.len();
    let max = n as u8;
    !((letters[1] == max && b == letters[0])
        || (letters[n - 2] == 1 && b == letters[n - 1])
        || (letters[n - 1] == 2 && b == 1)
        || (letters[0] == max - 1 && b == max))
}

#[derive(Default)]
struct TripleScanOutcome {
    stated_triples: u64,
    stated_witness: Option<(Permutation, u8, u8)>,
    variant_triples: u64,
    variant_witness: Option<(Permutation, u8, u8, String)>,
    alt_triples: u64,
    alt_witness: Option<(Permutation, u8, u8)>,
}

struct TripleScanner {
    n: usize,
    leaders_sub: Vec<Permutation>,
    quad: PatternSet,
}

impl TripleScanner {
    fn new(n: usize) -> Self {
        TripleScanner {
            n,
            leaders_sub: leader_permutations(n - 1).expect("n >= 3"),
            quad: PatternSet::quad_standard(),
        }
    }

    fn sub_adjacencies(&self, sigma: &Permutation) -> Vec<(usize, Transposition)> {
        self.leaders_sub
            .iter()
            .enumerate()
            .filter(|(_, l)| is_adjacent(sigma, l))
            .map(|(i, l)| (i, Transposition::between(sigma, l).expect("adjacent")))
            .collect()
    }

    /// Evaluates all `b` choices for one `(rho, a, tau)` hypothesis instance.
    /// `word_a` holds rho's letters with `a` removed, unstandardized.
    #[allow(clippy::too_many_arguments)]
    fn scan_bs(
        &self,
        rho: &Permutation,
        a: u8,
        word_a: &[u8],
        tau: Transposition,
        out: &mut TripleScanOutcome,
        removal_cache: &mut [Option<(bool, bool, bool)>],
        only_b: Option<u8>,
    ) {
        let n = self.n;
        let phys = (word_a[tau.pos_a], word_a[tau.pos_b]);
        let between = (tau.pos_b - tau.pos_a == 2).then(|| word_a[tau.pos_a + 1]);
        let pats: Vec<&[u8]> = self.quad.patterns().iter().map(|p| p.letters()).collect();
        let bs: Vec<u8> = match only_b {
            Some(b) => vec![b],
            None => (1..=n as u8).collect(),
        };
        for b in bs {
            if b == a || b == phys.0 || b == phys.1 {
                continue;
            }
            if between == Some(b) {
                continue;
            }
            // The scan also demands a witnessing occurrence of 1234 or 3412
            // in rho that uses neither a nor b; without it the statement has
            // small-n counterexamples where removing b collapses onto the
            // same leader-adjacent picture.
            let word_ab: Vec<u8> = rho
                .letters()
                .iter()
                .copied()
                .filter(|&x| x != a && x != b)
                .collect();
            if !word_contains_any(&word_ab, &pats) {
                continue;
            }
            let stated_mod = !letters_adjacent_mod(a, b, n);
            let alt_mod = !letters_adjacent_mod(a, b, n - 1);
            if !stated_mod && !alt_mod {
                continue;
            }
            let (adjacent_bad, begins_bad, ends_bad) = match removal_cache[b as usize] {
                Some(c) => c,
                None => {
                    let rho_b = rho.sub_standardize(b).expect("letter present");
                    let bad = self
                        .leaders_sub
                        .iter()
                        .any(|l| is_adjacent(&rho_b, l));
                    let c = (bad, rho_b.begins_with_max(), rho_b.ends_with_min());
                    removal_cache[b as usize] = Some(c);
                    c
                }
            };
            if stated_mod {
                out.stated_triples += 1;
                if adjacent_bad && out.stated_witness.is_none() {
                    out.stated_witness = Some((rho.clone(), a, b));
                }
                if call_site_conditions(rho.letters(), b) {
                    out.variant_triples += 1;
                    if out.variant_witness.is_none() {
                        let problem = if adjacent_bad {
                            Some("is adjacent to a leader permutation")
                        } else if begins_bad {
                            Some("begins with its maximum letter")
                        } else if ends_bad {
                            Some("ends with 1")
                        } else {
                            None
                        };
                        if let Some(problem) = problem {
                            out.variant_witness =
                                Some((rho.clone(), a, b, problem.to_string()));
                        }
                    }
                }
            }
            if alt_mod {
                out.alt_triples += 1;
                if adjacent_bad && out.alt_witness.is_none() {
                    out.alt_witness = Some((rho.clone(), a, b));
                }
            }
        }
    }

    fn exhaustive(&self) -> TripleScanOutcome {
        let n = self.n;
        let leaders_full = leader_permutations(n).expect("n >= 2");
        let mut out = TripleScanOutcome::default();
        let mut letters: Vec<u8> = (1..=n as u8).collect();
        for _ in 0..FACTORIAL[n] {
            let rho = Permutation::new(letters.clone()).expect("valid letters");
            if !rho.begins_with_max()
                && !rho.ends_with_min()
                && !leaders_full.iter().any(|l| is_adjacent(&rho, l))
            {
                let mut removal_cache = vec![None; MAX_N + 1];
                for a in 1..=n as u8 {
                    let word_a: Vec<u8> =
                        letters.iter().copied().filter(|&x| x != a).collect();
                    let sigma = rho.sub_standardize(a).expect("letter present");
                    for (_, tau) in self.sub_adjacencies(&sigma) {
                        self.scan_bs(&rho, a, &word_a, tau, &mut out, &mut removal_cache, None);
                    }
                }
            }
            advance_lex(&mut letters);
        }
        out
    }

    /// Hypothesis-directed sampling: build rho by inserting a letter into a
    /// random leader-adjacent permutation of length n-1, so that removing it
    /// reproduces the leader-adjacent picture by construction.
    fn sampled(&self, samples: usize, seed: u64) -> (TripleScanOutcome, usize) {
        let n = self.n;
        let leaders_full = leader_permutations(n).expect("n >= 2");
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut out = TripleScanOutcome::default();
        let mut attempts = 0usize;
        let max_attempts = samples.saturating_mul(200);
        while out.stated_triples < samples as u64 && attempts < max_attempts {
            attempts += 1;
            let l = &self.leaders_sub[rng.gen_range(0..self.leaders_sub.len())];
            let i = rng.gen_range(0..n - 1);
            let j = rng.gen_range(0..n - 1);
            if i == j {
                continue;
            }
            let mut sigma_letters = l.letters().to_vec();
            sigma_letters.swap(i, j);
            let sigma = Permutation::new(sigma_letters).expect("valid letters");
            if !is_adjacent(&sigma, l) {
                continue;
            }
            let a = rng.gen_range(1..=n as u8);
            let pos = rng.gen_range(0..n);
            let rho = sigma.insert_letter(a, pos).expect("length stays in range");
            if rho.begins_with_max()
                || rho.ends_with_min()
                || leaders_full.iter().any(|l| is_adjacent(&rho, l))
            {
                continue;
            }
            let word_a: Vec<u8> = rho.letters().iter().copied().filter(|&x| x != a).collect();
            let b = rng.gen_range(1..=n as u8);
            let mut removal_cache = vec![None; MAX_N + 1];
            // removing a recovers sigma, so every adjacency of sigma is a
            // valid tau for this triple
            for (_, tau) in self.sub_adjacencies(&sigma) {
                self.scan_bs(&rho, a, &word_a, tau, &mut out, &mut removal_cache, Some(b));
            }
        }
        (out, attempts)
    }
}

/// Scans `(rho, a, b)` triples satisfying the creating-primary hypotheses and
/// verifies that removing `b` never yields a leader-adjacent permutation.
/// Exhaustive for `n <= 8`, hypothesis-directed sampling above that. A
/// variant pass additionally applies the call-site side conditions and then
/// requires the result to be fully primary.
pub fn check_creating_primary(n: usize, samples: usize, seed: u64) -> Result<CheckReport> {
    let started = Instant::now();
    if n > MAX_N {
        return Err(Error::InvalidInput(format!("length {n} out of range 1..={MAX_N}")));
    }
    if n < 5 {
        return Err(Error::Precondition(format!(
            "creating-primary is stated for n >= 5 (requested {n})"
        )));
    }
    let scanner = TripleScanner::new(n);
    let exhaustive = n <= 8;
    let (out, seed_used, notes_base) = if exhaustive {
        let out = scanner.exhaustive();
        let note = format!(
            "exhaustive scan: {} statement triples, {} variant triples",
            out.stated_triples, out.variant_triples
        );
        (out, None, note)
    } else {
        let (out, attempts) = scanner.sampled(samples, seed);
        let note = format!(
            "sampled scan: {} statement triples in {attempts} attempts",
            out.stated_triples
        );
        (out, Some(seed), note)
    };

    let outcome = match (&out.stated_witness, &out.variant_witness) {
        (Some((rho, a, b)), _) => Some(Counterexample::Triple {
            perm: rho.to_string(),
            removed_first: *a,
            removed_second: *b,
            detail: "removing the second letter still yields a leader-adjacent permutation"
                .into(),
        }),
        (None, Some((rho, a, b, problem))) => Some(Counterexample::Triple {
            perm: rho.to_string(),
            removed_first: *a,
            removed_second: *b,
            detail: format!(
                "variant mode: under the call-site side conditions the result {problem}"
            ),
        }),
        (None, None) => None,
    };

    // The statement writes the modular condition with the length of rho; the
    // scan also runs it with the length of the shortened permutation and
    // reports when the two interpretations disagree.
    let mut notes = notes_base;
    let stated_fails = out.stated_witness.is_some();
    let alt_fails = out.alt_witness.is_some();
    if stated_fails != alt_fails {
        let (rho, a, b) = out
            .alt_witness
            .as_ref()
            .or(out.stated_witness.as_ref())
            .expect("one side has a witness");
        notes.push_str(&format!(
            "; modulus interpretations disagree: with modulus {} the scan finds \
             counterexample (perm {rho}, removed {a} then {b}), with modulus {} it finds {}",
            if alt_fails { n - 1 } else { n },
            if alt_fails { n } else { n - 1 },
            "none"
        ));
    }

    Ok(
        CheckReport::from_outcome("creating-primary", [n, n], outcome, seed_used, started)
            .with_notes(Some(notes)),
    )
}

// ---------------------------------------------------------------------------
// Registry
// ---------------------------------------------------------------------------

/// The checkers by name, with their domains, for command-line dispatch.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CheckKind {
    ClosedForm,
    Recurrence,
    BCount,
    LeaderClasses,
    Parity,
    ParityMoves,
    PrimaryClasses,
    CreatingPrimary,
    Assembly,
}

impl CheckKind {
    pub const ALL: [CheckKind; 9] = [
        CheckKind::ClosedForm,
        CheckKind::Recurrence,
        CheckKind::BCount,
        CheckKind::LeaderClasses,
        CheckKind::Parity,
        CheckKind::ParityMoves,
        CheckKind::PrimaryClasses,
        CheckKind::CreatingPrimary,
        CheckKind::Assembly,
    ];

    pub fn name(self) -> &'static str {
        match self {
            CheckKind::ClosedForm => "closed-form",
            CheckKind::Recurrence => "recurrence",
            CheckKind::BCount => "b-count",
            CheckKind::LeaderClasses => "leader-classes",
            CheckKind::Parity => "parity",
            CheckKind::ParityMoves => "parity-moves",
            CheckKind::PrimaryClasses => "primary-classes",
            CheckKind::CreatingPrimary => "creating-primary",
            CheckKind::Assembly => "assembly",
        }
    }

    pub fn from_name(name: &str) -> Option<CheckKind> {
        CheckKind::ALL.into_iter().find(|k| k.name() == name)
    }

    /// Smallest length the check is stated for.
    pub fn min_n(self) -> usize {
        match self {
            CheckKind::ClosedForm
            | CheckKind::BCount
            | CheckKind::LeaderClasses
            | CheckKind::PrimaryClasses
            | CheckKind::Assembly => 7,
            CheckKind::Recurrence => 3,
            CheckKind::CreatingPrimary => 5,
            CheckKind::Parity => 2,
            CheckKind::ParityMoves => 4,
        }
    }

    /// Whether the claim is specific to the `{1234, 3412}` relation.
    pub fn requires_quad(self) -> bool {
        !matches!(self, CheckKind::Parity | CheckKind::ParityMoves | CheckKind::Recurrence)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine::{enumerate_partition, EnumerateOptions};
    use std::sync::OnceLock;

    fn quad() -> PatternSet {
        PatternSet::quad_standard()
    }

    fn part7() -> &'static ClassPartition {
        static P: OnceLock<ClassPartition> = OnceLock::new();
        P.get_or_init(|| enumerate_partition(7, &quad(), &EnumerateOptions::default()).unwrap())
    }

    #[test]
    fn closed_form_values_frozen() {
        assert_eq!(closed_form_value(7), 51);
        assert_eq!(closed_form_value(8), 85);
        assert_eq!(closed_form_value(9), 129);
        assert_eq!(closed_form_value(10), 184);
        assert_eq!(closed_form_value(11), 251);
    }

    #[test]
    fn closed_form_matches_its_own_recurrence() {
        // the induction algebra: f(k) = k+1 + 2 f(k-1) - f(k-2), checked
        // numerically far beyond the enumerable range
        let f = |k: i128| (k * k * k + 6 * k * k - 55 * k + 54) / 6;
        for k in 9..=2000i128 {
            assert_eq!(f(k), k + 1 + 2 * f(k - 1) - f(k - 2), "k={k}");
        }
        // and the numerator is always divisible by 6
        for k in 7..=2000i128 {
            assert_eq!((k * k * k + 6 * k * k - 55 * k + 54) % 6, 0);
        }
    }

    #[test]
    fn closed_form_passes_at_7() {
        let report = check_closed_form(part7()).unwrap();
        assert!(report.passed, "{report:?}");
    }

    #[test]
    fn closed_form_preconditions() {
        let part = enumerate_partition(5, &quad(), &EnumerateOptions::default()).unwrap();
        assert!(matches!(check_closed_form(&part), Err(Error::Precondition(_))));
        let other: PatternSet = "1234,2143".parse().unwrap();
        let part = enumerate_partition(4, &other, &EnumerateOptions::default()).unwrap();
        assert!(matches!(check_closed_form(&part), Err(Error::Precondition(_))));
    }

    #[test]
    fn b_count_passes_at_7() {
        let report = check_b_count(&part7().census()).unwrap();
        assert!(report.passed, "{report:?}");
        assert_eq!(part7().census().b_count, 8);
    }

    #[test]
    fn recurrence_small_n() {
        let censuses: Vec<Census> = (1..=7)
            .map(|n| enumerate_partition(n, &quad(), &EnumerateOptions::default()).unwrap().census())
            .collect();
        // A_4 = 1, B_4 = 1, A_3 = A_2 = 0
        for n in 3..=7 {
            let report = check_recurrence(&censuses[n - 1], &censuses[n - 2], &censuses[n - 3]).unwrap();
            assert!(report.passed, "n={n}: {report:?}");
        }
        assert_eq!(censuses[3].nontrivial_classes, 1);
        assert_eq!(censuses[3].b_count, 1);
        assert_eq!(censuses[2].nontrivial_classes, 0);
    }

    #[test]
    fn recurrence_rejects_mixed_inputs() {
        let ps: PatternSet = "1234,2143".parse().unwrap();
        let c5 = enumerate_partition(5, &quad(), &EnumerateOptions::default()).unwrap().census();
        let c4 = enumerate_partition(4, &quad(), &EnumerateOptions::default()).unwrap().census();
        let c3_other = enumerate_partition(3, &ps, &EnumerateOptions::default()).unwrap().census();
        assert!(matches!(
            check_recurrence(&c5, &c4, &c3_other),
            Err(Error::InvalidInput(_))
        ));
        let c3 = enumerate_partition(3, &quad(), &EnumerateOptions::default()).unwrap().census();
        assert!(matches!(
            check_recurrence(&c5, &c3, &c4),
            Err(Error::InvalidInput(_))
        ));
    }

    #[test]
    fn recurrence_fails_honestly_for_endpoint_moving_patterns() {
        // {123, 321} moves can displace a leading maximum, so the lifting
        // argument breaks and the recurrence with it: A_3 - B_3 = 1 but
        // 2 A_2 - A_1 = 0.
        let ps: PatternSet = "123,321".parse().unwrap();
        let censuses: Vec<Census> = (1..=3)
            .map(|n| enumerate_partition(n, &ps, &EnumerateOptions::default()).unwrap().census())
            .collect();
        let report = check_recurrence(&censuses[2], &censuses[1], &censuses[0]).unwrap();
        assert!(!report.passed);
        match report.counterexample.unwrap() {
            Counterexample::Count { actual, expected, .. } => {
                assert_eq!((actual, expected), (1, 0));
            }
            other => panic!("unexpected counterexample {other:?}"),
        }
    }

    #[test]
    fn parity_passes_at_7_and_fails_for_odd_moves() {
        assert!(check_parity(part7()).passed);

        // a 123 <-> 321 move is a single transposition of the outer letters,
        // so it flips parity and mixes classes
        let ps: PatternSet = "123,321".parse().unwrap();
        let part = enumerate_partition(3, &ps, &EnumerateOptions::default()).unwrap();
        let report = check_parity(&part);
        assert!(!report.passed);
        match report.counterexample.unwrap() {
            Counterexample::Class { representative, size, detail } => {
                assert_eq!(representative, "1,2,3");
                assert_eq!(size, 2);
                assert!(detail.contains("3,2,1"), "{detail}");
            }
            other => panic!("unexpected counterexample {other:?}"),
        }
    }

    #[test]
    fn parity_moves_sampled() {
        let report = check_parity_moves(6, &quad(), 2_000, 330395).unwrap();
        assert!(report.passed, "{report:?}");
        assert_eq!(report.seed, Some(330395));
        assert!(matches!(
            check_parity_moves(3, &quad(), 10, 0),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn leader_primary_assembly_pass_at_7() {
        assert!(check_leader_classes(part7()).unwrap().passed);
        assert!(check_primary_classes(part7()).unwrap().passed);
        assert!(check_assembly(part7()).unwrap().passed);
    }

    #[test]
    fn creating_primary_passes_at_7() {
        let report = check_creating_primary(7, 0, 0).unwrap();
        assert!(report.passed, "{report:?}");
        assert!(report.seed.is_none());
        assert!(report.notes.as_deref().unwrap_or("").contains("statement triples"));
    }

    #[test]
    fn creating_primary_fails_honestly_at_6() {
        // at n = 6 the statement genuinely has counterexamples; the scan must
        // find the smallest one
        let report = check_creating_primary(6, 0, 0).unwrap();
        assert!(!report.passed);
        match report.counterexample.unwrap() {
            Counterexample::Triple { perm, removed_first, removed_second, .. } => {
                assert_eq!(perm, "1,2,4,3,6,5");
                assert_eq!((removed_first, removed_second), (3, 5));
            }
            other => panic!("unexpected counterexample {other:?}"),
        }
    }

    #[test]
    fn creating_primary_precondition() {
        assert!(matches!(check_creating_primary(4, 0, 0), Err(Error::Precondition(_))));
    }

    #[test]
    fn check_kind_registry_round_trips() {
        for kind in CheckKind::ALL {
            assert_eq!(CheckKind::from_name(kind.name()), Some(kind));
        }
        assert_eq!(CheckKind::from_name("nope"), None);
        assert_eq!(CheckKind::ClosedForm.min_n(), 7);
        assert!(!CheckKind::Parity.requires_quad());
    }
}
