//! Structural tags for equivalence classes under the `{1234, 3412}` relation.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::leader::{adjacency_set, leader_adjacencies, leader_break_point};
use crate::perm::{Parity, Permutation};

/// Where a class sits in the structural taxonomy: adjacency class of the
/// leader with the given break point, one of the two primary classes, a class
/// lifted from below (all members begin with n, all end with 1, or both), or
/// a singleton.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "tag", rename_all = "snake_case")]
pub enum ClassTag {
    LeaderAdjacent { break_point: usize },
    PrimaryEven,
    PrimaryOdd,
    LiftedFront,
    LiftedBack,
    LiftedBoth,
    Singleton,
}

impl std::fmt::Display for ClassTag {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ClassTag::LeaderAdjacent { break_point } => write!(f, "leader-adjacent(k={break_point})"),
            ClassTag::PrimaryEven => f.write_str("primary-even"),
            ClassTag::PrimaryOdd => f.write_str("primary-odd"),
            ClassTag::LiftedFront => f.write_str("lifted-front"),
            ClassTag::LiftedBack => f.write_str("lifted-back"),
            ClassTag::LiftedBoth => f.write_str("lifted-both"),
            ClassTag::Singleton => f.write_str("singleton"),
        }
    }
}

/// All tags that apply to an explicitly materialized class.
///
/// For partitions of the `{1234, 3412}` relation every class receives at
/// least one tag; under other pattern sets the taxonomy may not apply and the
/// result can be empty.
pub fn tag_class(class: &BTreeSet<Permutation>) -> Vec<ClassTag> {
    let mut tags = Vec::new();
    let Some(first) = class.iter().next() else {
        return tags;
    };
    if class.len() == 1 {
        tags.push(ClassTag::Singleton);
    }
    let all_front = class.iter().all(|p| p.begins_with_max());
    let all_back = class.iter().all(|p| p.ends_with_min());
    match (all_front, all_back) {
        (true, true) => tags.push(ClassTag::LiftedBoth),
        (true, false) => tags.push(ClassTag::LiftedFront),
        (false, true) => tags.push(ClassTag::LiftedBack),
        (false, false) => {}
    }
    if class.len() >= 2 {
        let mut leader_tagged = false;
        for (leader, _) in leader_adjacencies(first) {
            if &adjacency_set(&leader) == class {
                let k = leader_break_point(&leader).expect("adjacency implies a leader");
                tags.push(ClassTag::LeaderAdjacent { break_point: k });
                leader_tagged = true;
                break;
            }
        }
        let none_front = class.iter().all(|p| !p.begins_with_max());
        let none_back = class.iter().all(|p| !p.ends_with_min());
        if !leader_tagged && none_front && none_back {
            let parities: BTreeSet<Parity> =
                class.iter().map(|p| p.inversion_parity()).collect();
            if parities.len() == 1 {
                tags.push(match parities.into_iter().next().unwrap() {
                    Parity::Even => ClassTag::PrimaryEven,
                    Parity::Odd => ClassTag::PrimaryOdd,
                });
            }
        }
    }
    tags
}
