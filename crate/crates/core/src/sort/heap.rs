use super::SortKey;

/// Implicit binary max-heap laid out in a flat array. The heap occupies the
/// prefix `slots[..heap_len]`; children of `i` sit at `2i+1` and `2i+2`.
#[derive(Debug, Clone)]
pub struct HeapArray {
    slots: Vec<SortKey>,
    heap_len: usize,
}

impl HeapArray {
    /// Builds the max-heap bottom-up: downheap from the last internal node.
    pub fn build(slots: Vec<SortKey>) -> Self {
        let heap_len = slots.len();
        let mut heap = Self { slots, heap_len };
        for i in (0..heap_len / 2).rev() {
            heap.downheap(i);
        }
        heap
    }

    /// True iff every parent in the active prefix dominates its children.
    pub fn is_max_heap(&self) -> bool {
        (1..self.heap_len).all(|i| self.slots[(i - 1) / 2] >= self.slots[i])
    }

    pub fn len(&self) -> usize {
        self.slots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.slots.is_empty()
    }

    /// Repeatedly swaps the root with the last active slot, shrinks the heap
    /// and restores the heap property, leaving the array fully sorted.
    pub fn into_sorted(mut self) -> Vec<SortKey> {
        while self.heap_len > 1 {
            self.heap_len -= 1;
            self.slots.swap(0, self.heap_len);
            self.downheap(0);
        }
        self.slots
    }

    fn downheap(&mut self, mut i: usize) {
        loop {
            let left = 2 * i + 1;
            if left >= self.heap_len {
                break;
            }
            let right = left + 1;
            let mut child = left;
            if right < self.heap_len && self.slots[right] > self.slots[left] {
                child = right;
            }
            if self.slots[child] <= self.slots[i] {
                break;
            }
            self.slots.swap(i, child);
            i = child;
        }
    }
}

/// Sorts a copy of `arr` in place: buildheap, then repeated root extraction.
pub fn heap_sort(arr: &[SortKey]) -> Vec<SortKey> {
    HeapArray::build(arr.to_vec()).into_sorted()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bench::{generate_dataset, Distribution};

    #[test]
    fn singleton() {
        assert_eq!(heap_sort(&[5]), vec![5]);
    }

    #[test]
    fn all_equal() {
        assert_eq!(heap_sort(&[2, 2, 2]), vec![2, 2, 2]);
    }

    #[test]
    fn empty() {
        assert_eq!(heap_sort(&[]), Vec::<SortKey>::new());
    }

    #[test]
    fn buildheap_satisfies_heap_property() {
        for seed in 0..5 {
            let data = generate_dataset(513, seed, Distribution::Uniform);
            let heap = HeapArray::build(data);
            assert!(heap.is_max_heap());
        }
        assert!(HeapArray::build(vec![]).is_max_heap());
        assert!(HeapArray::build(vec![1]).is_max_heap());
    }

    #[test]
    fn matches_oracle_on_seeded_input() {
        let data = generate_dataset(1000, 42, Distribution::Uniform);
        assert_eq!(heap_sort(&data), crate::sort::tests::insertion_sort_oracle(&data));
    }
}
