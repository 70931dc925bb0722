#![allow(dead_code)]

use proptest::prelude::*;
use sgc_core::{ListAssignment, PairKind, SignedGraph, SwitchSet};

pub const KINDS: [PairKind; 4] = [
    PairKind::None,
    PairKind::PositiveOnly,
    PairKind::NegativeOnly,
    PairKind::Double,
];

pub fn graph_from_codes(n: usize, codes: &[u8]) -> SignedGraph {
    let mut table = vec![PairKind::None; n * n];
    let mut it = codes.iter();
    for u in 0..n {
        for v in u + 1..n {
            table[u * n + v] = KINDS[*it.next().unwrap() as usize % 4];
        }
    }
    SignedGraph::from_kinds(n, |u, v| table[u.min(v) * n + u.max(v)])
}

pub fn arb_graph(max_n: usize) -> impl Strategy<Value = SignedGraph> {
    (1..=max_n).prop_flat_map(|n| {
        proptest::collection::vec(0u8..4, n * (n - 1) / 2)
            .prop_map(move |codes| graph_from_codes(n, &codes))
    })
}

pub fn arb_graph_and_set(max_n: usize) -> impl Strategy<Value = (SignedGraph, SwitchSet)> {
    arb_graph(max_n).prop_flat_map(|g| {
        let n = g.vertex_count();
        proptest::collection::vec(any::<bool>(), n).prop_map(move |bits| {
            let x = SwitchSet::new((0..n).filter(|&v| bits[v]));
            (g.clone(), x)
        })
    })
}

/// Zero-free lists over `{±1..±m}` with sizes in `1..=max_len`.
pub fn arb_lists(n: usize, m: i32, max_len: usize) -> impl Strategy<Value = ListAssignment> {
    let color = (1..=m, any::<bool>()).prop_map(|(a, neg)| if neg { -a } else { a });
    proptest::collection::vec(proptest::collection::vec(color, 1..=max_len), n)
        .prop_map(|lists| ListAssignment::zero_free(lists).unwrap())
}

pub fn arb_graph_with_lists(
    max_n: usize,
    m: i32,
    max_len: usize,
) -> impl Strategy<Value = (SignedGraph, ListAssignment)> {
    arb_graph(max_n).prop_flat_map(move |g| {
        let n = g.vertex_count();
        arb_lists(n, m, max_len).prop_map(move |l| (g.clone(), l))
    })
}

/// Properness straight from the edge list: `f(u) != sign * f(v)`.
pub fn proper_by_edges(g: &SignedGraph, f: &[i32]) -> bool {
    g.edges().iter().all(|e| f[e.u] != e.sign.value() * f[e.v])
}

/// Exhaustive list coloring over every assignment from the lists.
pub fn brute_force_list_colorable(g: &SignedGraph, lists: &ListAssignment) -> bool {
    let n = g.vertex_count();
    let mut idx = vec![0usize; n];
    if lists.lists().iter().any(|l| l.is_empty()) {
        return false;
    }
    loop {
        let f: Vec<i32> = (0..n).map(|v| lists.list(v)[idx[v]]).collect();
        if proper_by_edges(g, &f) {
            return true;
        }
        let mut v = 0;
        loop {
            if v == n {
                return false;
            }
            idx[v] += 1;
            if idx[v] < lists.list(v).len() {
                break;
            }
            idx[v] = 0;
            v += 1;
        }
    }
}
