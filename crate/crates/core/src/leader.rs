//! Leader permutations and the adjacency predicate.
//!
//! A leader of length `n` with break point `k` is two decreasing runs,
//! `(k-1)(k-2)...1` followed by `n(n-1)...k`. A permutation is adjacent to a
//! leader when it is exactly one transposition away, the swapped letters
//! differ by neither 1 nor n-1, and neither side begins with n or ends with 1.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::perm::{Permutation, Transposition, MAX_N};

/// The leader with break point `k`, for `2 <= k <= n`.
pub fn leader(n: usize, k: usize) -> Result<Permutation> {
    if !(2..=MAX_N).contains(&n) {
        return Err(Error::InvalidInput(format!("length {n} out of range 2..={MAX_N}")));
    }
    if k < 2 || k > n {
        return Err(Error::InvalidInput(format!("break point {k} out of range 2..={n}")));
    }
    let letters = (1..=n)
        .map(|i| if i < k { (k - i) as u8 } else { (n + k - i) as u8 })
        .collect();
    Ok(Permutation::from_letters_unchecked(letters))
}

/// The `n - 1` leaders of length `n`, in increasing break-point order.
pub fn leader_permutations(n: usize) -> Result<Vec<Permutation>> {
    if n < 2 {
        return Err(Error::InvalidInput(format!("no leader permutations for n = {n}")));
    }
    (2..=n).map(|k| leader(n, k)).collect()
}

/// Recovers the break point of a leader permutation, or `None` if `p` is not
/// one. The break point is the first letter plus one.
pub fn leader_break_point(p: &Permutation) -> Option<usize> {
    let n = p.n();
    if n < 2 {
        return None;
    }
    let k = p.letters()[0] as usize + 1;
    if k < 2 || k > n {
        return None;
    }
    leader(n, k).ok().filter(|l| l == p).map(|_| k)
}

fn excluded_endpoints(p: &Permutation) -> bool {
    p.begins_with_max() || p.ends_with_min()
}

/// Adjacency in the sense above. Both endpoint conditions are checked even
/// though leaders themselves never begin with n or end with 1.
pub fn is_adjacent(p: &Permutation, leader: &Permutation) -> bool {
    let n = p.n();
    if leader.n() != n {
        return false;
    }
    let Some(t) = Transposition::between(p, leader) else {
        return false;
    };
    let (x, y) = (p.letters()[t.pos_a], p.letters()[t.pos_b]);
    let d = x.abs_diff(y) as usize;
    if d == 1 || d == n - 1 {
        return false;
    }
    !excluded_endpoints(p) && !excluded_endpoints(leader)
}

/// The full adjacency set of a leader, built by trying every transposition.
pub fn adjacency_set(leader: &Permutation) -> BTreeSet<Permutation> {
    let n = leader.n();
    let mut out = BTreeSet::new();
    for i in 0..n {
        for j in i + 1..n {
            let mut letters = leader.letters().to_vec();
            letters.swap(i, j);
            let cand = Permutation::from_letters_unchecked(letters);
            if is_adjacent(&cand, leader) {
                out.insert(cand);
            }
        }
    }
    out
}

/// Every `(leader, transposition)` pair witnessing that `p` is adjacent to a
/// leader of its own length. Usually at most one for n >= 5, since distinct
/// leaders differ in every position.
pub fn leader_adjacencies(p: &Permutation) -> Vec<(Permutation, Transposition)> {
    let mut out = Vec::new();
    if p.n() < 2 {
        return out;
    }
    for l in leader_permutations(p.n()).expect("n >= 2") {
        if is_adjacent(p, &l) {
            let t = Transposition::between(p, &l).expect("adjacent implies one transposition");
            out.push((l, t));
        }
    }
    out
}

/// Not adjacent to any leader, does not begin with n, does not end with 1.
pub fn is_primary(p: &Permutation) -> bool {
    !excluded_endpoints(p) && leader_adjacencies(p).is_empty()
}
