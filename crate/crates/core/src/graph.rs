//! Signed graphs with opposite-sign parallel pairs, and switching.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Edge sign. Orders `Pos` before `Neg`, which is also the canonical
/// serialization order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Sign {
    Pos,
    Neg,
}

impl Sign {
    pub fn from_int(s: i64) -> Option<Sign> {
        match s {
            1 => Some(Sign::Pos),
            -1 => Some(Sign::Neg),
            _ => None,
        }
    }

    pub fn value(self) -> i32 {
        match self {
            Sign::Pos => 1,
            Sign::Neg => -1,
        }
    }

    pub fn flip(self) -> Sign {
        match self {
            Sign::Pos => Sign::Neg,
            Sign::Neg => Sign::Pos,
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Pos => "+",
            Sign::Neg => "-",
        })
    }
}

/// Which signed edges join an unordered vertex pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub enum PairKind {
    #[default]
    None,
    PositiveOnly,
    NegativeOnly,
    Double,
}

impl PairKind {
    fn with(self, sign: Sign) -> PairKind {
        match (self, sign) {
            (PairKind::None, Sign::Pos) => PairKind::PositiveOnly,
            (PairKind::None, Sign::Neg) => PairKind::NegativeOnly,
            (PairKind::PositiveOnly, Sign::Neg) | (PairKind::NegativeOnly, Sign::Pos) => {
                PairKind::Double
            }
            (k, _) => k,
        }
    }

    pub fn has(self, sign: Sign) -> bool {
        matches!(
            (self, sign),
            (PairKind::Double, _)
                | (PairKind::PositiveOnly, Sign::Pos)
                | (PairKind::NegativeOnly, Sign::Neg)
        )
    }

    pub fn flipped(self) -> PairKind {
        match self {
            PairKind::PositiveOnly => PairKind::NegativeOnly,
            PairKind::NegativeOnly => PairKind::PositiveOnly,
            k => k,
        }
    }

    /// The single sign of a one-edge pair.
    pub fn single_sign(self) -> Option<Sign> {
        match self {
            PairKind::PositiveOnly => Some(Sign::Pos),
            PairKind::NegativeOnly => Some(Sign::Neg),
            _ => None,
        }
    }

    /// Whether coloring the two ends with `a` and `b` violates some edge.
    #[inline]
    pub fn conflicts(self, a: i32, b: i32) -> bool {
        match self {
            PairKind::None => false,
            PairKind::PositiveOnly => a == b,
            PairKind::NegativeOnly => a == -b,
            PairKind::Double => a == b || a == -b,
        }
    }
}

/// A signed edge `(u, v, sign)` with `u < v`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Edge {
    pub u: usize,
    pub v: usize,
    pub sign: Sign,
}

/// A loopless signed graph on vertices `0..n`. A pair carries at most one
/// edge of each sign.
#[derive(Clone)]
pub struct SignedGraph {
    n: usize,
    edges: Vec<Edge>,
    kinds: Vec<PairKind>,
}

impl PartialEq for SignedGraph {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.edges == other.edges
    }
}

impl Eq for SignedGraph {}

impl fmt::Debug for SignedGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SignedGraph(n={}; ", self.n)?;
        for (i, e) in self.edges.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{}{}{}", e.u, e.sign, e.v)?;
        }
        f.write_str(")")
    }
}

impl SignedGraph {
    /// Validates and normalizes a raw edge list. Edges may be given with
    /// either endpoint first.
    pub fn new(n: usize, edge_list: &[(usize, usize, Sign)]) -> Result<SignedGraph> {
        let mut seen = BTreeSet::new();
        let mut edges = Vec::with_capacity(edge_list.len());
        for &(a, b, sign) in edge_list {
            for x in [a, b] {
                if x >= n {
                    return Err(Error::VertexOutOfRange { vertex: x, n });
                }
            }
            if a == b {
                return Err(Error::LoopEdge(a));
            }
            let (u, v) = if a < b { (a, b) } else { (b, a) };
            let e = Edge { u, v, sign };
            if !seen.insert(e) {
                return Err(Error::DuplicateSignedEdge(u, v, sign));
            }
            edges.push(e);
        }
        Ok(Self::from_sorted_unchecked(n, seen.into_iter().collect()))
    }

    /// Builds a graph from a pair-kind assignment, `kind(u, v)` for `u < v`.
    pub fn from_kinds(n: usize, mut kind: impl FnMut(usize, usize) -> PairKind) -> SignedGraph {
        let mut edges = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                let k = kind(u, v);
                for sign in [Sign::Pos, Sign::Neg] {
                    if k.has(sign) {
                        edges.push(Edge { u, v, sign });
                    }
                }
            }
        }
        Self::from_sorted_unchecked(n, edges)
    }

    fn from_sorted_unchecked(n: usize, edges: Vec<Edge>) -> SignedGraph {
        let mut kinds = vec![PairKind::None; n * n];
        for e in &edges {
            let k = kinds[e.u * n + e.v].with(e.sign);
            kinds[e.u * n + e.v] = k;
            kinds[e.v * n + e.u] = k;
        }
        SignedGraph { n, edges, kinds }
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    /// Edges sorted by `(u, v, sign)`.
    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    #[inline]
    pub fn kind(&self, u: usize, v: usize) -> PairKind {
        self.kinds[u * self.n + v]
    }

    /// Every unordered pair `(u, v)`, `u < v`, with its kind.
    pub fn pair_kind_map(&self) -> BTreeMap<(usize, usize), PairKind> {
        let mut map = BTreeMap::new();
        for u in 0..self.n {
            for v in u + 1..self.n {
                map.insert((u, v), self.kind(u, v));
            }
        }
        map
    }

    /// Neighbors of `v` joined by at least one edge.
    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.n).filter(move |&u| self.kind(v, u) != PairKind::None)
    }

    /// Subgraph induced on `vertices`, renumbered in the given order.
    pub fn induced(&self, vertices: &[usize]) -> SignedGraph {
        Self::from_kinds(vertices.len(), |i, j| self.kind(vertices[i], vertices[j]))
    }

    /// Whether every edge of `self` is also an edge of `other`.
    pub fn is_subgraph_of(&self, other: &SignedGraph) -> bool {
        self.n == other.n
            && self
                .edges
                .iter()
                .all(|e| other.kind(e.u, e.v).has(e.sign))
    }

    /// Flips the sign of every edge with exactly one end in `x`.
    pub fn switch(&self, x: &SwitchSet) -> Result<SignedGraph> {
        let inside = x.indicator(self.n)?;
        Ok(Self::from_kinds(self.n, |u, v| {
            let k = self.kind(u, v);
            if inside[u] != inside[v] {
                k.flipped()
            } else {
                k
            }
        }))
    }

    /// Returns some `X` with `switch(self, X) == other`, keeping vertex
    /// identities fixed. Roots of free components are left unswitched.
    pub fn switching_equivalent(&self, other: &SignedGraph) -> Result<Option<SwitchSet>> {
        if self.n != other.n {
            return Err(Error::SizeMismatch {
                left: self.n,
                right: other.n,
            });
        }
        let n = self.n;
        let mut diff: Vec<Vec<(usize, bool)>> = vec![Vec::new(); n];
        for u in 0..n {
            for v in u + 1..n {
                let (a, b) = (self.kind(u, v), other.kind(u, v));
                match (a.single_sign(), b.single_sign()) {
                    (Some(sa), Some(sb)) => {
                        let delta = sa != sb;
                        diff[u].push((v, delta));
                        diff[v].push((u, delta));
                    }
                    _ if a == b => {}
                    _ => return Ok(None),
                }
            }
        }
        let mut side: Vec<Option<bool>> = vec![None; n];
        let mut queue = VecDeque::new();
        for root in 0..n {
            if side[root].is_some() {
                continue;
            }
            side[root] = Some(false);
            queue.push_back(root);
            while let Some(u) = queue.pop_front() {
                let su = side[u].unwrap();
                for &(v, delta) in &diff[u] {
                    let want = su ^ delta;
                    match side[v] {
                        None => {
                            side[v] = Some(want);
                            queue.push_back(v);
                        }
                        Some(sv) if sv != want => return Ok(None),
                        Some(_) => {}
                    }
                }
            }
        }
        Ok(Some(SwitchSet::new(
            side.iter()
                .enumerate()
                .filter(|(_, s)| **s == Some(true))
                .map(|(v, _)| v),
        )))
    }
}

/// A vertex subset at which to switch.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct SwitchSet(BTreeSet<usize>);

impl SwitchSet {
    pub fn new(vertices: impl IntoIterator<Item = usize>) -> SwitchSet {
        SwitchSet(vertices.into_iter().collect())
    }

    pub fn contains(&self, v: usize) -> bool {
        self.0.contains(&v)
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().copied()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn complement(&self, n: usize) -> SwitchSet {
        SwitchSet((0..n).filter(|v| !self.0.contains(v)).collect())
    }

    fn indicator(&self, n: usize) -> Result<Vec<bool>> {
        let mut inside = vec![false; n];
        for &v in &self.0 {
            if v >= n {
                return Err(Error::VertexOutOfRange { vertex: v, n });
            }
            inside[v] = true;
        }
        Ok(inside)
    }
}
