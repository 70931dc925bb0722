//! Proper-coloring checks and exact backtracking solvers.
//!
//! A coloring `f` is proper when `f(u) != sign * f(v)` across every signed
//! edge, so a positive edge forbids equal colors, a negative edge forbids
//! opposite colors and a double pair forbids equal absolute values.
//!
//! Candidate colors are always tried in the order given by [`color_order`]:
//! ascending absolute value, positive before negative, zero last. Witnesses
//! are therefore the least proper coloring in that order, vertex by vertex.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::SignedGraph;

pub type Color = i32;

/// Sort key implementing the solver's candidate order.
#[inline]
pub fn color_order(c: Color) -> (u32, u8) {
    if c == 0 {
        (u32::MAX, 0)
    } else {
        (c.unsigned_abs(), u8::from(c < 0))
    }
}

pub fn cmp_colors(a: Color, b: Color) -> Ordering {
    color_order(a).cmp(&color_order(b))
}

/// Palette semantics.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Palette {
    /// `{±1, .., ±k}`.
    ZeroFree(u32),
    /// The symmetric `n`-set, containing 0 iff `n` is odd.
    Mn(u32),
}

impl Palette {
    pub fn colors(self) -> Vec<Color> {
        let (half, zero) = match self {
            Palette::ZeroFree(k) => (k, false),
            Palette::Mn(n) => (n / 2, n % 2 == 1),
        };
        let mut out: Vec<Color> = (1..=half as Color).flat_map(|a| [a, -a]).collect();
        if zero {
            out.push(0);
        }
        out
    }

    pub fn size(self) -> usize {
        match self {
            Palette::ZeroFree(k) => 2 * k as usize,
            Palette::Mn(n) => n as usize,
        }
    }
}

/// A total vertex coloring.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Coloring(pub Vec<Color>);

impl Coloring {
    pub fn get(&self, v: usize) -> Option<Color> {
        self.0.get(v).copied()
    }

    pub fn values(&self) -> &[Color] {
        &self.0
    }
}

impl fmt::Display for Coloring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{c}")?;
        }
        f.write_str(")")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ListMode {
    /// Lists drawn from the nonzero integers.
    #[serde(rename = "zero-free")]
    ZeroFree,
    /// Lists drawn from all integers.
    #[serde(rename = "general")]
    General,
}

impl ListMode {
    pub fn as_str(self) -> &'static str {
        match self {
            ListMode::ZeroFree => "zero-free",
            ListMode::General => "general",
        }
    }
}

/// Per-vertex lists of permissible colors, each stored deduplicated in
/// candidate order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ListAssignment {
    mode: ListMode,
    lists: Vec<Vec<Color>>,
}

impl ListAssignment {
    pub fn new(mode: ListMode, lists: Vec<Vec<Color>>) -> Result<ListAssignment> {
        let mut lists = lists;
        for (v, list) in lists.iter_mut().enumerate() {
            if mode == ListMode::ZeroFree && list.contains(&0) {
                return Err(Error::ModeViolation(format!(
                    "color 0 in the zero-free list of vertex {v}"
                )));
            }
            list.sort_by(|a, b| cmp_colors(*a, *b));
            list.dedup();
        }
        Ok(ListAssignment { mode, lists })
    }

    pub fn zero_free(lists: Vec<Vec<Color>>) -> Result<ListAssignment> {
        Self::new(ListMode::ZeroFree, lists)
    }

    pub fn mode(&self) -> ListMode {
        self.mode
    }

    pub fn len(&self) -> usize {
        self.lists.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lists.is_empty()
    }

    pub fn list(&self, v: usize) -> &[Color] {
        &self.lists[v]
    }

    pub fn lists(&self) -> &[Vec<Color>] {
        &self.lists
    }

    pub fn contains(&self, v: usize, c: Color) -> bool {
        self.lists[v]
            .binary_search_by(|x| cmp_colors(*x, c))
            .is_ok()
    }

    /// Union of all lists, in candidate order.
    pub fn union(&self) -> Vec<Color> {
        let mut all: Vec<Color> = self.lists.iter().flatten().copied().collect();
        all.sort_by(|a, b| cmp_colors(*a, *b));
        all.dedup();
        all
    }

    /// Negates the lists of the vertices in `x`.
    pub fn negated_on(&self, x: impl Fn(usize) -> bool) -> ListAssignment {
        let lists = self
            .lists
            .iter()
            .enumerate()
            .map(|(v, l)| {
                if x(v) {
                    l.iter().map(|c| -c).collect()
                } else {
                    l.clone()
                }
            })
            .collect();
        ListAssignment::new(self.mode, lists).expect("negation preserves the mode")
    }

    pub(crate) fn check_total(&self, n: usize) -> Result<()> {
        if self.lists.len() < n {
            return Err(Error::MissingVertexColor(self.lists.len()));
        }
        if self.lists.len() > n {
            return Err(Error::VertexOutOfRange {
                vertex: n,
                n,
            });
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Verdict {
    Colorable,
    NotColorable,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolveResult {
    pub verdict: Verdict,
    pub witness: Option<Coloring>,
    pub nodes_explored: u64,
}

impl SolveResult {
    pub fn is_colorable(&self) -> bool {
        self.verdict == Verdict::Colorable
    }
}

/// Whether `f` is a proper coloring of `g`.
pub fn is_proper(g: &SignedGraph, f: &Coloring) -> Result<bool> {
    let n = g.vertex_count();
    if f.0.len() < n {
        return Err(Error::MissingVertexColor(f.0.len()));
    }
    Ok(g
        .edges()
        .iter()
        .all(|e| f.0[e.u] != e.sign.value() * f.0[e.v]))
}

/// Whether `f` is a proper coloring with `f(v)` in `L(v)` for every `v`.
pub fn is_list_coloring(g: &SignedGraph, lists: &ListAssignment, f: &Coloring) -> Result<bool> {
    lists.check_total(g.vertex_count())?;
    Ok(is_proper(g, f)?
        && (0..g.vertex_count()).all(|v| lists.contains(v, f.0[v])))
}

/// Decides colorability with the given palette.
pub fn find_coloring(g: &SignedGraph, palette: Palette) -> SolveResult {
    let colors = palette.colors();
    let domains = vec![colors; g.vertex_count()];
    backtrack(g, &domains)
}

/// Smallest even `2k` such that `g` has a proper coloring into `{±1..±k}`,
/// together with the witness for that `k`.
pub fn zero_free_chromatic(g: &SignedGraph) -> (u32, Coloring) {
    for k in 1.. {
        let r = find_coloring(g, Palette::ZeroFree(k));
        if let Some(w) = r.witness {
            return (2 * k, w);
        }
    }
    unreachable!("k = n always admits a coloring")
}

pub fn zero_free_chromatic_number(g: &SignedGraph) -> u32 {
    zero_free_chromatic(g).0
}

/// Smallest `n` such that `g` has a proper coloring into `M_n`, with witness.
pub fn mn_chromatic(g: &SignedGraph) -> (u32, Coloring) {
    for n in 1.. {
        let r = find_coloring(g, Palette::Mn(n));
        if let Some(w) = r.witness {
            return (n, w);
        }
    }
    unreachable!("n = 2|V| always admits a coloring")
}

pub fn mn_chromatic_number(g: &SignedGraph) -> u32 {
    mn_chromatic(g).0
}

/// Decides whether `g` has an L-coloring.
pub fn list_colorable(g: &SignedGraph, lists: &ListAssignment) -> Result<SolveResult> {
    lists.check_total(g.vertex_count())?;
    Ok(backtrack(g, lists.lists()))
}

/// Chronological backtracking in vertex order with forward checking.
/// `domains[v]` must already be in candidate order.
pub(crate) fn backtrack(g: &SignedGraph, domains: &[Vec<Color>]) -> SolveResult {
    let n = g.vertex_count();
    debug_assert_eq!(domains.len(), n);
    let mut search = Search {
        g,
        domains,
        later: (0..n)
            .map(|v| (v + 1..n).filter(|&w| g.kind(v, w) != crate::graph::PairKind::None).collect())
            .collect(),
        alive: domains.iter().map(|d| vec![true; d.len()]).collect(),
        alive_count: domains.iter().map(Vec::len).collect(),
        trail: Vec::new(),
        assignment: vec![0; n],
        nodes: 0,
    };
    let found = search.alive_count.iter().all(|&c| c > 0) && search.dfs(0);
    SolveResult {
        verdict: if found {
            Verdict::Colorable
        } else {
            Verdict::NotColorable
        },
        witness: found.then(|| Coloring(search.assignment.clone())),
        nodes_explored: search.nodes,
    }
}

struct Search<'a> {
    g: &'a SignedGraph,
    domains: &'a [Vec<Color>],
    later: Vec<Vec<usize>>,
    alive: Vec<Vec<bool>>,
    alive_count: Vec<usize>,
    trail: Vec<(usize, usize)>,
    assignment: Vec<Color>,
    nodes: u64,
}

impl Search<'_> {
    fn dfs(&mut self, v: usize) -> bool {
        if v == self.assignment.len() {
            return true;
        }
        for i in 0..self.domains[v].len() {
            if !self.alive[v][i] {
                continue;
            }
            let c = self.domains[v][i];
            self.nodes += 1;
            self.assignment[v] = c;
            let mark = self.trail.len();
            let mut wiped = false;
            for idx in 0..self.later[v].len() {
                let w = self.later[v][idx];
                let kind = self.g.kind(v, w);
                for (j, &d) in self.domains[w].iter().enumerate() {
                    if self.alive[w][j] && kind.conflicts(c, d) {
                        self.alive[w][j] = false;
                        self.alive_count[w] -= 1;
                        self.trail.push((w, j));
                    }
                }
                if self.alive_count[w] == 0 {
                    wiped = true;
                    break;
                }
            }
            if !wiped && self.dfs(v + 1) {
                return true;
            }
            while self.trail.len() > mark {
                let (w, j) = self.trail.pop().unwrap();
                self.alive[w][j] = true;
                self.alive_count[w] += 1;
            }
        }
        false
    }
}
