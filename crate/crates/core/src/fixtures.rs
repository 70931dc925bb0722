//! Small named instances shared by tests, benches and the command line.

use crate::reduce::{multipartite_expansion, PartitionedExpansion};
use crate::solve::ListAssignment;

/// All-negative K4 as the expansion of a single part of size 4.
pub fn negative_k4_expansion() -> PartitionedExpansion {
    multipartite_expansion(&[4]).expect("nonempty part")
}

/// Zero-free 2-lists on the all-negative K4 that admit no coloring:
/// `{1,2}, {1,-2}, {-1,2}, {-1,-2}`.
pub fn negative_k4_lists() -> ListAssignment {
    ListAssignment::zero_free(vec![vec![1, 2], vec![1, -2], vec![-1, 2], vec![-1, -2]])
        .expect("zero-free lists")
}
