use thiserror::Error;

use super::SortKey;

/// Diminishing gap schedule for shell sort: strictly decreasing, ending at 1.
///
/// The final gap of 1 makes the last pass a plain insertion sort, which is
/// what guarantees a fully sorted result.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GapSequence {
    gaps: Vec<usize>,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GapSequenceError {
    #[error("gap sequence is empty")]
    Empty,
    #[error("gap at index {0} is zero")]
    ZeroGap(usize),
    #[error("gaps must be strictly decreasing (violated at index {0})")]
    NotDecreasing(usize),
    #[error("last gap must be 1, found {0}")]
    LastNotOne(usize),
}

impl GapSequence {
    pub fn new(gaps: Vec<usize>) -> Result<Self, GapSequenceError> {
        if gaps.is_empty() {
            return Err(GapSequenceError::Empty);
        }
        for (i, &g) in gaps.iter().enumerate() {
            if g == 0 {
                return Err(GapSequenceError::ZeroGap(i));
            }
            if i > 0 && gaps[i - 1] <= g {
                return Err(GapSequenceError::NotDecreasing(i));
            }
        }
        let last = *gaps.last().expect("non-empty");
        if last != 1 {
            return Err(GapSequenceError::LastNotOne(last));
        }
        Ok(Self { gaps })
    }

    /// The classic halving schedule for an input of length `n`:
    /// `n/2, n/4, ..., 1`. Degenerates to `[1]` for `n <= 3`.
    pub fn halving(n: usize) -> Self {
        let mut gaps = Vec::new();
        let mut g = n / 2;
        while g > 1 {
            gaps.push(g);
            g /= 2;
        }
        gaps.push(1);
        Self { gaps }
    }

    pub fn gaps(&self) -> &[usize] {
        &self.gaps
    }
}

/// Sorts a copy of `arr` with diminishing-gap insertion passes.
pub fn shell_sort(arr: &[SortKey], gaps: &GapSequence) -> Vec<SortKey> {
    shell_sort_with_hook(arr, gaps, |_, _| {})
}

/// Like [`shell_sort`], invoking `hook(h, slice)` after each gap pass so the
/// h-sortedness of the intermediate state can be inspected.
pub fn shell_sort_with_hook(
    arr: &[SortKey],
    gaps: &GapSequence,
    mut hook: impl FnMut(usize, &[SortKey]),
) -> Vec<SortKey> {
    let mut v = arr.to_vec();
    for &h in gaps.gaps() {
        for i in h..v.len() {
            let key = v[i];
            let mut j = i;
            while j >= h && v[j - h] > key {
                v[j] = v[j - h];
                j -= h;
            }
            v[j] = key;
        }
        hook(h, &v);
    }
    v
}

/// True iff every pair of elements `h` apart is ordered.
pub fn is_h_sorted(arr: &[SortKey], h: usize) -> bool {
    (h..arr.len()).all(|i| arr[i - h] <= arr[i])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bench::{generate_dataset, Distribution};

    #[test]
    fn empty_input() {
        assert_eq!(shell_sort(&[], &GapSequence::halving(0)), Vec::<SortKey>::new());
    }

    #[test]
    fn single_gap_is_insertion_sort() {
        let gaps = GapSequence::new(vec![1]).unwrap();
        assert_eq!(shell_sort(&[3, 1, 2], &gaps), vec![1, 2, 3]);
    }

    #[test]
    fn halving_schedule_shape() {
        assert_eq!(GapSequence::halving(10).gaps(), &[5, 2, 1]);
        assert_eq!(GapSequence::halving(4).gaps(), &[2, 1]);
        assert_eq!(GapSequence::halving(0).gaps(), &[1]);
        assert_eq!(GapSequence::halving(1).gaps(), &[1]);
    }

    #[test]
    fn gap_validation() {
        assert_eq!(GapSequence::new(vec![]), Err(GapSequenceError::Empty));
        assert_eq!(GapSequence::new(vec![4, 0]), Err(GapSequenceError::ZeroGap(1)));
        assert_eq!(
            GapSequence::new(vec![4, 4, 1]),
            Err(GapSequenceError::NotDecreasing(1))
        );
        assert_eq!(GapSequence::new(vec![4, 2]), Err(GapSequenceError::LastNotOne(2)));
        assert!(GapSequence::new(vec![5, 3, 1]).is_ok());
    }

    #[test]
    fn every_pass_leaves_the_array_h_sorted() {
        let data = generate_dataset(500, 9, Distribution::Uniform);
        let gaps = GapSequence::halving(data.len());
        let mut seen = 0;
        shell_sort_with_hook(&data, &gaps, |h, slice| {
            assert!(is_h_sorted(slice, h), "not {h}-sorted after gap pass");
            seen += 1;
        });
        assert_eq!(seen, gaps.gaps().len());
    }

    #[test]
    fn matches_oracle_on_patterned_inputs() {
        for dist in [
            Distribution::Uniform,
            Distribution::Sorted,
            Distribution::Reverse,
            Distribution::FewUnique,
        ] {
            let data = generate_dataset(257, 3, dist);
            let gaps = GapSequence::halving(data.len());
            assert_eq!(
                shell_sort(&data, &gaps),
                crate::sort::tests::insertion_sort_oracle(&data)
            );
        }
    }
}
