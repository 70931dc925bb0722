//! Constructions linking ordinary graphs to signed graphs: complete
//! expansions, coloring and list lifts, and the switching normal form.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::graph::{PairKind, SignedGraph, SwitchSet};
use crate::solve::{is_proper, zero_free_chromatic, Coloring, ListAssignment, ListMode};

/// A simple undirected graph on `0..n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimpleGraph {
    n: usize,
    edges: Vec<(usize, usize)>,
}

impl SimpleGraph {
    pub fn new(n: usize, edge_list: &[(usize, usize)]) -> Result<SimpleGraph> {
        let mut seen = BTreeSet::new();
        for &(a, b) in edge_list {
            for x in [a, b] {
                if x >= n {
                    return Err(Error::VertexOutOfRange { vertex: x, n });
                }
            }
            if a == b {
                return Err(Error::LoopEdge(a));
            }
            let pair = (a.min(b), a.max(b));
            if !seen.insert(pair) {
                return Err(Error::DuplicateEdge(pair.0, pair.1));
            }
        }
        Ok(SimpleGraph {
            n,
            edges: seen.into_iter().collect(),
        })
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.edges.binary_search(&(u.min(v), u.max(v))).is_ok()
    }

    /// Whether `f` is a proper coloring with positive colors.
    pub fn is_proper_positive(&self, f: &Coloring) -> bool {
        f.0.len() == self.n
            && f.0.iter().all(|&c| c > 0)
            && self.edges.iter().all(|&(u, v)| f.0[u] != f.0[v])
    }
}

/// Positive edges where `g` has edges, plus a negative edge on every pair.
pub fn complete_expansion(g: &SimpleGraph) -> SignedGraph {
    SignedGraph::from_kinds(g.n, |u, v| {
        if g.has_edge(u, v) {
            PairKind::Double
        } else {
            PairKind::NegativeOnly
        }
    })
}

/// The complete expansion of a complete multipartite graph, with its parts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartitionedExpansion {
    graph: SignedGraph,
    parts: Vec<Vec<usize>>,
    part_of: Vec<usize>,
}

impl PartitionedExpansion {
    /// Checks that `parts` partitions the vertices and that `graph` is
    /// exactly the expansion of the multipartite graph with those parts.
    pub fn new(graph: SignedGraph, parts: Vec<Vec<usize>>) -> Result<PartitionedExpansion> {
        let n = graph.vertex_count();
        let mut part_of = vec![usize::MAX; n];
        for (i, part) in parts.iter().enumerate() {
            if part.is_empty() {
                return Err(Error::PartitionMismatch(format!("part {i} is empty")));
            }
            for &v in part {
                if v >= n {
                    return Err(Error::PartitionMismatch(format!(
                        "vertex {v} out of range for {n} vertices"
                    )));
                }
                if part_of[v] != usize::MAX {
                    return Err(Error::PartitionMismatch(format!(
                        "vertex {v} appears in more than one part"
                    )));
                }
                part_of[v] = i;
            }
        }
        if let Some(v) = part_of.iter().position(|&p| p == usize::MAX) {
            return Err(Error::PartitionMismatch(format!("vertex {v} is in no part")));
        }
        for u in 0..n {
            for v in u + 1..n {
                let want = if part_of[u] == part_of[v] {
                    PairKind::NegativeOnly
                } else {
                    PairKind::Double
                };
                if graph.kind(u, v) != want {
                    return Err(Error::PartitionMismatch(format!(
                        "pair ({u}, {v}) is {:?}, expected {want:?}",
                        graph.kind(u, v)
                    )));
                }
            }
        }
        let parts = parts
            .into_iter()
            .map(|mut p| {
                p.sort_unstable();
                p
            })
            .collect();
        Ok(PartitionedExpansion {
            graph,
            parts,
            part_of,
        })
    }

    pub fn graph(&self) -> &SignedGraph {
        &self.graph
    }

    pub fn parts(&self) -> &[Vec<usize>] {
        &self.parts
    }

    /// Number of parts.
    pub fn k(&self) -> usize {
        self.parts.len()
    }

    /// Number of one-vertex parts.
    pub fn singleton_count(&self) -> usize {
        self.parts.iter().filter(|p| p.len() == 1).count()
    }

    pub fn part_of(&self, v: usize) -> usize {
        self.part_of[v]
    }

    pub fn is_singleton(&self, v: usize) -> bool {
        self.parts[self.part_of[v]].len() == 1
    }

    pub fn vertex_count(&self) -> usize {
        self.graph.vertex_count()
    }
}

/// Expansion of the complete multipartite graph with the given part sizes;
/// vertices are numbered part by part.
pub fn multipartite_expansion(part_sizes: &[usize]) -> Result<PartitionedExpansion> {
    if part_sizes.is_empty() || part_sizes.contains(&0) {
        return Err(Error::EmptyPart);
    }
    let mut parts = Vec::with_capacity(part_sizes.len());
    let mut next = 0;
    for &size in part_sizes {
        parts.push((next..next + size).collect::<Vec<_>>());
        next += size;
    }
    let mut part_of = vec![0; next];
    for (i, p) in parts.iter().enumerate() {
        for &v in p {
            part_of[v] = i;
        }
    }
    let graph = SignedGraph::from_kinds(next, |u, v| {
        if part_of[u] == part_of[v] {
            PairKind::NegativeOnly
        } else {
            PairKind::Double
        }
    });
    Ok(PartitionedExpansion {
        graph,
        parts,
        part_of,
    })
}

/// Lifts a proper positive coloring of `g` to its complete expansion
/// unchanged.
pub fn lift_coloring(g: &SimpleGraph, f: &Coloring) -> Result<Coloring> {
    if !g.is_proper_positive(f) {
        return Err(Error::ImproperInput(format!(
            "{f} is not a proper positive coloring"
        )));
    }
    let lifted = f.clone();
    debug_assert!(is_proper(&complete_expansion(g), &lifted).unwrap());
    Ok(lifted)
}

/// Absolute-value projection of a zero-free coloring of the expansion of
/// `g`, yielding a proper coloring of `g`.
pub fn project_coloring(g: &SimpleGraph, f: &Coloring) -> Result<Coloring> {
    let expansion = complete_expansion(g);
    if f.0.len() != g.n || f.0.contains(&0) || !is_proper(&expansion, f)? {
        return Err(Error::ImproperInput(format!(
            "{f} is not a proper zero-free coloring of the expansion"
        )));
    }
    let projected = Coloring(f.0.iter().map(|c| c.abs()).collect());
    debug_assert!(g.is_proper_positive(&projected));
    Ok(projected)
}

/// Closes positive lists under negation.
pub fn lift_lists(lists: &ListAssignment) -> Result<ListAssignment> {
    let mut out = Vec::with_capacity(lists.len());
    for (v, list) in lists.lists().iter().enumerate() {
        if let Some(c) = list.iter().find(|&&c| c <= 0) {
            return Err(Error::ModeViolation(format!(
                "non-positive color {c} in the list of vertex {v}"
            )));
        }
        out.push(list.iter().flat_map(|&c| [c, -c]).collect());
    }
    ListAssignment::new(ListMode::ZeroFree, out)
}

/// Result of [`addswitch_normal_form`].
#[derive(Debug, Clone)]
pub struct NormalForm {
    /// Vertices colored with a positive color by `witness`.
    pub switch_set: SwitchSet,
    /// Parts group vertices by the absolute value of their color.
    pub expansion: PartitionedExpansion,
    /// Optimal zero-free coloring the form was built from.
    pub witness: Coloring,
}

/// Switches `g` so that it becomes a subgraph of the expansion of a
/// complete `χ*/2`-partite graph. Vertex ids are kept.
pub fn addswitch_normal_form(g: &SignedGraph) -> NormalForm {
    let (chi, witness) = zero_free_chromatic(g);
    let k = (chi / 2) as usize;
    let mut parts = vec![Vec::new(); k];
    for (v, &c) in witness.0.iter().enumerate() {
        parts[c.unsigned_abs() as usize - 1].push(v);
    }
    // an optimal coloring uses every absolute value
    debug_assert!(parts.iter().all(|p| !p.is_empty()));
    let switch_set = SwitchSet::new((0..g.vertex_count()).filter(|&v| witness.0[v] > 0));
    let mut part_of = vec![0; g.vertex_count()];
    for (i, p) in parts.iter().enumerate() {
        for &v in p {
            part_of[v] = i;
        }
    }
    let graph = SignedGraph::from_kinds(g.vertex_count(), |u, v| {
        if part_of[u] == part_of[v] {
            PairKind::NegativeOnly
        } else {
            PairKind::Double
        }
    });
    NormalForm {
        switch_set,
        expansion: PartitionedExpansion {
            graph,
            parts,
            part_of,
        },
        witness,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Sign::{Neg, Pos};
    use crate::solve::zero_free_chromatic_number;

    #[test]
    fn expansion_examples() {
        let k2 = SimpleGraph::new(2, &[(0, 1)]).unwrap();
        assert_eq!(
            complete_expansion(&k2),
            SignedGraph::new(2, &[(0, 1, Pos), (0, 1, Neg)]).unwrap()
        );
        let empty = SimpleGraph::new(3, &[]).unwrap();
        assert_eq!(
            complete_expansion(&empty),
            SignedGraph::from_kinds(3, |_, _| PairKind::NegativeOnly)
        );
        let path = SimpleGraph::new(3, &[(0, 1), (1, 2)]).unwrap();
        let e = complete_expansion(&path);
        assert_eq!(e.kind(0, 1), PairKind::Double);
        assert_eq!(e.kind(1, 2), PairKind::Double);
        assert_eq!(e.kind(0, 2), PairKind::NegativeOnly);
    }

    #[test]
    fn simple_graph_errors() {
        assert_eq!(SimpleGraph::new(2, &[(1, 1)]), Err(Error::LoopEdge(1)));
        assert_eq!(
            SimpleGraph::new(2, &[(0, 1), (1, 0)]),
            Err(Error::DuplicateEdge(0, 1))
        );
    }

    #[test]
    fn multipartite_examples() {
        let one = multipartite_expansion(&[1]).unwrap();
        assert_eq!((one.vertex_count(), one.k(), one.singleton_count()), (1, 1, 1));
        let four = multipartite_expansion(&[4]).unwrap();
        assert_eq!((four.k(), four.singleton_count()), (1, 0));
        assert!(four
            .graph()
            .pair_kind_map()
            .values()
            .all(|k| *k == PairKind::NegativeOnly));
        let k23 = multipartite_expansion(&[2, 3]).unwrap();
        assert_eq!((k23.vertex_count(), k23.k()), (5, 2));
        assert_eq!(k23.graph().kind(0, 1), PairKind::NegativeOnly);
        assert_eq!(k23.graph().kind(1, 2), PairKind::Double);
        assert_eq!(multipartite_expansion(&[]), Err(Error::EmptyPart));
        assert_eq!(multipartite_expansion(&[2, 0]), Err(Error::EmptyPart));
    }

    #[test]
    fn multipartite_invariants_up_to_eight() {
        fn compositions(total: usize, out: &mut Vec<Vec<usize>>, cur: &mut Vec<usize>) {
            if total == 0 {
                out.push(cur.clone());
                return;
            }
            for s in 1..=total {
                cur.push(s);
                compositions(total - s, out, cur);
                cur.pop();
            }
        }
        for total in 1..=8 {
            let mut all = Vec::new();
            compositions(total, &mut all, &mut Vec::new());
            for sizes in all {
                let pe = multipartite_expansion(&sizes).unwrap();
                assert_eq!(pe.k(), sizes.len());
                assert_eq!(
                    pe.singleton_count(),
                    sizes.iter().filter(|&&s| s == 1).count()
                );
                // revalidating through the checked constructor
                PartitionedExpansion::new(pe.graph().clone(), pe.parts().to_vec()).unwrap();
            }
        }
    }

    #[test]
    fn partition_validation() {
        let pe = multipartite_expansion(&[2, 1]).unwrap();
        let g = pe.graph().clone();
        assert!(PartitionedExpansion::new(g.clone(), vec![vec![0, 1]]).is_err());
        assert!(PartitionedExpansion::new(g.clone(), vec![vec![0], vec![1], vec![2]]).is_err());
        assert!(PartitionedExpansion::new(g.clone(), vec![vec![0, 1], vec![1, 2]]).is_err());
        assert!(PartitionedExpansion::new(g, vec![vec![1, 0], vec![2]]).is_ok());
    }

    #[test]
    fn lift_and_project_examples() {
        let k2 = SimpleGraph::new(2, &[(0, 1)]).unwrap();
        let lifted = lift_coloring(&k2, &Coloring(vec![1, 2])).unwrap();
        assert_eq!(lifted, Coloring(vec![1, 2]));
        assert!(is_proper(&complete_expansion(&k2), &lifted).unwrap());
        let empty2 = SimpleGraph::new(2, &[]).unwrap();
        assert_eq!(
            lift_coloring(&empty2, &Coloring(vec![1, 1])).unwrap(),
            Coloring(vec![1, 1])
        );
        assert!(matches!(
            lift_coloring(&k2, &Coloring(vec![1, 1])),
            Err(Error::ImproperInput(_))
        ));

        assert_eq!(
            project_coloring(&k2, &Coloring(vec![1, -2])).unwrap(),
            Coloring(vec![1, 2])
        );
        let empty3 = SimpleGraph::new(3, &[]).unwrap();
        assert_eq!(
            project_coloring(&empty3, &Coloring(vec![1, 1, -1])),
            Err(Error::ImproperInput(
                "(1, 1, -1) is not a proper zero-free coloring of the expansion".into()
            ))
        );
        assert_eq!(
            project_coloring(&empty3, &Coloring(vec![1, 1, 2])).unwrap(),
            Coloring(vec![1, 1, 2])
        );
        assert!(project_coloring(&k2, &Coloring(vec![1, -1])).is_err());
    }

    #[test]
    fn lift_lists_examples() {
        let l = ListAssignment::new(ListMode::General, vec![vec![1, 2]]).unwrap();
        assert_eq!(lift_lists(&l).unwrap().list(0), &[1, -1, 2, -2]);
        let l = ListAssignment::new(ListMode::General, vec![vec![5]]).unwrap();
        assert_eq!(lift_lists(&l).unwrap().list(0), &[5, -5]);
        let l = ListAssignment::new(ListMode::General, vec![vec![-1]]).unwrap();
        assert!(matches!(lift_lists(&l), Err(Error::ModeViolation(_))));
    }

    fn check_normal_form(g: &SignedGraph) -> NormalForm {
        let nf = addswitch_normal_form(g);
        let switched = g.switch(&nf.switch_set).unwrap();
        assert!(switched.is_subgraph_of(nf.expansion.graph()));
        assert_eq!(
            2 * nf.expansion.k() as u32,
            zero_free_chromatic_number(g)
        );
        for part in nf.expansion.parts() {
            for (i, &u) in part.iter().enumerate() {
                for &v in &part[i + 1..] {
                    assert!(!switched.kind(u, v).has(Pos));
                }
            }
        }
        nf
    }

    #[test]
    fn normal_form_examples() {
        let plus = SignedGraph::new(2, &[(0, 1, Pos)]).unwrap();
        let nf = check_normal_form(&plus);
        assert_eq!(nf.witness, Coloring(vec![1, -1]));
        assert_eq!(nf.switch_set, SwitchSet::new([0]));
        assert_eq!(nf.expansion.parts(), &[vec![0, 1]]);

        let minus = SignedGraph::new(2, &[(0, 1, Neg)]).unwrap();
        let nf = check_normal_form(&minus);
        assert_eq!(nf.switch_set, SwitchSet::new([0, 1]));
        assert_eq!(nf.expansion.k(), 1);

        let double = SignedGraph::new(2, &[(0, 1, Pos), (0, 1, Neg)]).unwrap();
        let nf = check_normal_form(&double);
        assert_eq!(nf.expansion.parts(), &[vec![0], vec![1]]);
        assert_eq!(nf.expansion.graph(), &double);
    }

    #[test]
    fn normal_form_on_all_four_vertex_graphs() {
        let kinds = [
            PairKind::None,
            PairKind::PositiveOnly,
            PairKind::NegativeOnly,
            PairKind::Double,
        ];
        for code in 0..4usize.pow(6) {
            let mut idx = 0;
            let mut pairs = [PairKind::None; 16];
            for u in 0..4 {
                for v in u + 1..4 {
                    pairs[u * 4 + v] = kinds[(code >> (2 * idx)) & 3];
                    idx += 1;
                }
            }
            let g = SignedGraph::from_kinds(4, |u, v| pairs[u * 4 + v]);
            check_normal_form(&g);
        }
    }
}
