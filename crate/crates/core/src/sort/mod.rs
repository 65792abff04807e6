//! The three sorting techniques under study, plus the correctness check the
//! benchmark harness gates every measured run on.

mod heap;
mod shell;
mod treap;

pub use heap::{heap_sort, HeapArray};
pub use shell::{is_h_sorted, shell_sort, shell_sort_with_hook, GapSequence, GapSequenceError};
pub use treap::{treap_sort, Treap};

use std::collections::HashMap;

/// Element type sorted by every technique.
pub type SortKey = i64;

/// True iff `output` is non-decreasing and holds exactly the same multiset of
/// keys as `input`.
pub fn verify_sorted_permutation(input: &[SortKey], output: &[SortKey]) -> bool {
    if input.len() != output.len() {
        return false;
    }
    if output.windows(2).any(|w| w[0] > w[1]) {
        return false;
    }
    let mut counts: HashMap<SortKey, i64> = HashMap::new();
    for &k in input {
        *counts.entry(k).or_insert(0) += 1;
    }
    for &k in output {
        match counts.get_mut(&k) {
            Some(c) => *c -= 1,
            None => return false,
        }
    }
    counts.values().all(|&c| c == 0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bench::{generate_dataset, Distribution};
    use proptest::prelude::*;

    /// Straight insertion sort, the brute-force oracle the techniques are
    /// checked against. Kept independent of the implementations under test.
    pub(crate) fn insertion_sort_oracle(v: &[SortKey]) -> Vec<SortKey> {
        let mut out = v.to_vec();
        for i in 1..out.len() {
            let key = out[i];
            let mut j = i;
            while j > 0 && out[j - 1] > key {
                out[j] = out[j - 1];
                j -= 1;
            }
            out[j] = key;
        }
        out
    }

    #[test]
    fn verify_accepts_sorted_permutation() {
        assert!(verify_sorted_permutation(&[2, 1], &[1, 2]));
    }

    #[test]
    fn verify_rejects_multiset_mismatch() {
        assert!(!verify_sorted_permutation(&[2, 1], &[1, 3]));
    }

    #[test]
    fn verify_rejects_unsorted_output() {
        assert!(!verify_sorted_permutation(&[2, 1], &[2, 1]));
    }

    #[test]
    fn verify_rejects_length_mismatch() {
        assert!(!verify_sorted_permutation(&[1, 2, 3], &[1, 2]));
    }

    #[test]
    fn techniques_match_insertion_oracle_on_seeded_input() {
        let data = generate_dataset(1000, 42, Distribution::Uniform);
        let expected = insertion_sort_oracle(&data);
        let gaps = GapSequence::halving(data.len());
        assert_eq!(shell_sort(&data, &gaps), expected);
        assert_eq!(heap_sort(&data), expected);
        assert_eq!(treap_sort(&data, 7), expected);
    }

    fn patterned_inputs() -> impl Strategy<Value = Vec<SortKey>> {
        prop_oneof![
            proptest::collection::vec(any::<SortKey>(), 0..300),
            proptest::collection::vec(-4i64..4, 0..300),
            (0usize..300).prop_map(|n| vec![7; n]),
            (0usize..300).prop_map(|n| (0..n as i64).collect()),
            (0usize..300).prop_map(|n| (0..n as i64).rev().collect()),
        ]
    }

    proptest! {
        #[test]
        fn every_technique_emits_a_sorted_permutation(v in patterned_inputs(), seed in any::<u64>()) {
            let gaps = GapSequence::halving(v.len());
            let by_shell = shell_sort(&v, &gaps);
            let by_heap = heap_sort(&v);
            let by_treap = treap_sort(&v, seed);
            prop_assert!(verify_sorted_permutation(&v, &by_shell));
            prop_assert!(verify_sorted_permutation(&v, &by_heap));
            prop_assert!(verify_sorted_permutation(&v, &by_treap));
            // sorted order of a multiset is unique, so the outputs must agree
            prop_assert_eq!(&by_shell, &by_heap);
            prop_assert_eq!(&by_shell, &by_treap);
        }
    }
}
