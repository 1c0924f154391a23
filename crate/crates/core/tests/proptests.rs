//! Property tests over randomly drawn permutations and words.

use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::SeedableRng;

use permq_core::engine::neighbors;
use permq_core::{apply_replacement, occurrences, PatternSet, Permutation, FACTORIAL};

fn random_perm(max_n: usize) -> impl Strategy<Value = Permutation> {
    (1..=max_n, any::<u64>()).prop_map(|(n, seed)| {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let mut letters: Vec<u8> = (1..=n as u8).collect();
        letters.shuffle(&mut rng);
        Permutation::new(letters).unwrap()
    })
}

proptest! {
    #[test]
    fn standardize_is_idempotent(word in proptest::collection::btree_set(any::<u32>(), 1..=12), seed in any::<u64>()) {
        let mut word: Vec<u32> = word.into_iter().collect();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        word.shuffle(&mut rng);
        let once = Permutation::standardize(&word).unwrap();
        let again: Vec<u32> = once.letters().iter().map(|&x| x as u32).collect();
        prop_assert_eq!(Permutation::standardize(&again).unwrap(), once);
    }

    #[test]
    fn rank_unrank_round_trip(n in 1usize..=12, bits in any::<u64>()) {
        let r = bits as usize % FACTORIAL[n];
        let p = Permutation::unrank(n, r).unwrap();
        prop_assert_eq!(p.rank(), r);
    }

    #[test]
    fn sub_standardize_inverts_insert_letter(p in random_perm(11), letter_bits in any::<u32>(), pos_bits in any::<u32>()) {
        let n = p.n();
        let letter = (letter_bits as usize % (n + 1)) as u8 + 1;
        let pos = pos_bits as usize % (n + 1);
        let grown = p.insert_letter(letter, pos).unwrap();
        prop_assert_eq!(grown.sub_standardize(letter).unwrap(), p);
    }

    #[test]
    fn replacement_is_a_parity_preserving_involution(p in random_perm(10), pick in any::<prop::sample::Index>()) {
        let source: Permutation = "1234".parse().unwrap();
        let target: Permutation = "3412".parse().unwrap();
        let occs = occurrences(&p, &source);
        if !occs.is_empty() {
            let occ = &occs[pick.index(occs.len())];
            let out = apply_replacement(&p, occ, &target).unwrap();
            prop_assert_ne!(&out, &p);
            prop_assert_eq!(out.inversion_parity(), p.inversion_parity());

            // letters off the occurrence stay put, the multiset is preserved
            for i in 0..p.n() {
                if !occ.indices().contains(&i) {
                    prop_assert_eq!(p.letters()[i], out.letters()[i]);
                }
            }
            let mut a = p.letters().to_vec();
            let mut b = out.letters().to_vec();
            a.sort_unstable();
            b.sort_unstable();
            prop_assert_eq!(a, b);

            // the reverse replacement on the same indices restores p
            let back = occurrences(&out, &target)
                .into_iter()
                .find(|o| o.indices() == occ.indices())
                .expect("replaced letters form the target");
            prop_assert_eq!(apply_replacement(&out, &back, &source).unwrap(), p);
        }
    }

    #[test]
    fn neighbor_relation_is_symmetric_on_samples(p in random_perm(8)) {
        let quad = PatternSet::quad_standard();
        for nb in neighbors(&p, &quad) {
            prop_assert!(neighbors(&nb, &quad).contains(&p));
        }
    }
}
