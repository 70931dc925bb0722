//! Signed color sets and good matchings.
//!
//! A matching between tags and nonzero colors is *good* when its colors
//! have pairwise distinct absolute values. Good matchings are found by
//! collapsing each color to its absolute value and running an ordinary
//! augmenting-path matching on the collapsed graph, then lifting every
//! matched absolute value back to a concrete color (positive first).

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::error::{Error, Result};
use crate::graph::SignedGraph;
use crate::solve::{cmp_colors, Color, ListAssignment, ListMode};

/// A finite set of nonzero colors, kept in candidate order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct ColorSet(Vec<Color>);

impl ColorSet {
    pub fn new(colors: impl IntoIterator<Item = Color>) -> Result<ColorSet> {
        let mut v: Vec<Color> = colors.into_iter().collect();
        if v.contains(&0) {
            return Err(Error::ModeViolation("color sets exclude 0".into()));
        }
        v.sort_by(|a, b| cmp_colors(*a, *b));
        v.dedup();
        Ok(ColorSet(v))
    }

    pub fn colors(&self) -> &[Color] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, c: Color) -> bool {
        self.0.binary_search_by(|x| cmp_colors(*x, c)).is_ok()
    }

    /// `Y ∪ -Y`.
    pub fn symmetric_closure(&self) -> ColorSet {
        ColorSet::new(self.0.iter().flat_map(|&c| [c, -c])).unwrap()
    }
}

/// `{|y| : y ∈ Y}`.
pub fn abs_set(colors: &ColorSet) -> BTreeSet<u32> {
    colors.0.iter().map(|c| c.unsigned_abs()).collect()
}

/// One color per absolute value; the positive one when both are present.
pub fn representative_subset(colors: &ColorSet) -> ColorSet {
    let mut out: Vec<Color> = Vec::new();
    for &c in &colors.0 {
        // candidate order puts +a right before -a
        if out.last().map(|l: &Color| l.unsigned_abs()) != Some(c.unsigned_abs()) {
            out.push(c);
        }
    }
    ColorSet(out)
}

/// Bipartite incidence between opaque tags and colors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TagBipartite {
    tags: Vec<usize>,
    adjacency: Vec<ColorSet>,
}

impl TagBipartite {
    pub fn new(rows: Vec<(usize, ColorSet)>) -> TagBipartite {
        let (tags, adjacency) = rows.into_iter().unzip();
        TagBipartite { tags, adjacency }
    }

    pub fn tags(&self) -> &[usize] {
        &self.tags
    }

    pub fn adjacency(&self, position: usize) -> &ColorSet {
        &self.adjacency[position]
    }

    pub fn len(&self) -> usize {
        self.tags.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tags.is_empty()
    }

    fn position(&self, tag: usize) -> Result<usize> {
        self.tags
            .iter()
            .position(|&t| t == tag)
            .ok_or(Error::UnknownTag(tag))
    }

    /// `N(S)` for a set of tag positions.
    pub fn neighborhood(&self, positions: impl IntoIterator<Item = usize>) -> ColorSet {
        ColorSet::new(
            positions
                .into_iter()
                .flat_map(|p| self.adjacency[p].0.iter().copied()),
        )
        .unwrap()
    }

    /// Collapsed graph: every row as indices into the sorted absolute values.
    fn collapsed(&self) -> (Vec<u32>, Vec<Vec<usize>>) {
        let values: Vec<u32> = self
            .adjacency
            .iter()
            .flat_map(|s| s.0.iter().map(|c| c.unsigned_abs()))
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        let rows = self
            .adjacency
            .iter()
            .map(|s| {
                abs_set(s)
                    .into_iter()
                    .map(|a| values.binary_search(&a).unwrap())
                    .collect()
            })
            .collect();
        (values, rows)
    }
}

impl fmt::Display for TagBipartite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (tag, set) in self.tags.iter().zip(&self.adjacency) {
            write!(f, "{tag}:")?;
            for c in &set.0 {
                write!(f, " {c}")?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// A matching whose colors have pairwise distinct absolute values.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GoodMatching {
    pub pairs: Vec<(usize, Color)>,
}

impl GoodMatching {
    /// Distinct tags, distinct absolute values, and every pair an edge.
    pub fn is_valid_in(&self, b: &TagBipartite) -> bool {
        let tags: BTreeSet<usize> = self.pairs.iter().map(|p| p.0).collect();
        let abs: BTreeSet<u32> = self.pairs.iter().map(|p| p.1.unsigned_abs()).collect();
        tags.len() == self.pairs.len()
            && abs.len() == self.pairs.len()
            && self
                .pairs
                .iter()
                .all(|&(t, c)| b.position(t).is_ok_and(|p| b.adjacency[p].contains(c)))
    }

    pub fn color_of(&self, tag: usize) -> Option<Color> {
        self.pairs.iter().find(|p| p.0 == tag).map(|p| p.1)
    }
}

/// Maximum bipartite matching by augmenting paths. Left vertices in `order`
/// are processed in sequence; each first takes a free neighbor in row order
/// and only then tries to augment.
pub(crate) struct Matching {
    pub left: Vec<Option<usize>>,
    pub right: Vec<Option<usize>>,
}

pub(crate) fn augmenting_matching(
    rows: &[Vec<usize>],
    right_count: usize,
    order: impl IntoIterator<Item = usize>,
) -> Matching {
    let mut m = Matching {
        left: vec![None; rows.len()],
        right: vec![None; right_count],
    };
    for x in order {
        let mut visited = vec![false; right_count];
        augment(rows, &mut m, &mut visited, x);
    }
    m
}

fn augment(rows: &[Vec<usize>], m: &mut Matching, visited: &mut [bool], x: usize) -> bool {
    if let Some(&y) = rows[x].iter().find(|&&y| m.right[y].is_none()) {
        m.right[y] = Some(x);
        m.left[x] = Some(y);
        return true;
    }
    for &y in &rows[x] {
        if visited[y] {
            continue;
        }
        visited[y] = true;
        let holder = m.right[y].expect("free neighbors were taken above");
        if augment(rows, m, visited, holder) {
            m.right[y] = Some(x);
            m.left[x] = Some(y);
            return true;
        }
    }
    false
}

/// A good matching saturating `targets`, if one exists.
pub fn good_matching_saturating(
    b: &TagBipartite,
    targets: &[usize],
) -> Result<Option<GoodMatching>> {
    let mut positions = targets
        .iter()
        .map(|&t| b.position(t))
        .collect::<Result<Vec<_>>>()?;
    positions.sort_unstable();
    positions.dedup();
    let (values, rows) = b.collapsed();
    let m = augmenting_matching(&rows, values.len(), positions.iter().copied());
    if positions.iter().any(|&p| m.left[p].is_none()) {
        return Ok(None);
    }
    let pairs = positions
        .iter()
        .map(|&p| {
            let a = values[m.left[p].unwrap()] as Color;
            let c = if b.adjacency[p].contains(a) { a } else { -a };
            (b.tags[p], c)
        })
        .collect();
    Ok(Some(GoodMatching { pairs }))
}

/// Representative subset `C` of the union of the lists and an injective
/// `h: C → V` with `c ∈ L(h(c))`, when every absolute value can be matched.
pub fn saturate_representative(
    g: &SignedGraph,
    lists: &ListAssignment,
) -> Result<Option<(ColorSet, BTreeMap<Color, usize>)>> {
    if lists.mode() != ListMode::ZeroFree {
        return Err(Error::ModeViolation(
            "representative saturation needs zero-free lists".into(),
        ));
    }
    lists.check_total(g.vertex_count())?;
    let n = g.vertex_count();
    let values: Vec<u32> = lists
        .lists()
        .iter()
        .flatten()
        .map(|c| c.unsigned_abs())
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    // vertices holding +a come before those holding only -a
    let rows: Vec<Vec<usize>> = values
        .iter()
        .map(|&a| {
            let a = a as Color;
            let pos = (0..n).filter(|&v| lists.contains(v, a));
            let neg = (0..n).filter(|&v| !lists.contains(v, a) && lists.contains(v, -a));
            pos.chain(neg).collect()
        })
        .collect();
    let m = augmenting_matching(&rows, n, 0..values.len());
    if m.left.iter().any(Option::is_none) {
        return Ok(None);
    }
    let mut h = BTreeMap::new();
    for (i, &a) in values.iter().enumerate() {
        let v = m.left[i].unwrap();
        let a = a as Color;
        let c = if lists.contains(v, a) { a } else { -a };
        h.insert(c, v);
    }
    let c = ColorSet::new(h.keys().copied())?;
    Ok(Some((c, h)))
}

/// Maximizer of `|S| - |abs(N(S))|` as tags, with the maximum value.
pub type Deficiency = (Vec<usize>, i64);

/// The inclusion-maximal maximizer of `|S| - |abs(N(S))|`. Uses subset
/// enumeration up to 20 tags and matching duality beyond.
pub fn max_deficiency_set(b: &TagBipartite) -> Deficiency {
    if b.len() <= 20 {
        max_deficiency_by_enumeration(b)
    } else {
        max_deficiency_by_matching(b)
    }
}

/// Enumerates every subset; the maximizers form a union-closed family, so
/// their union is returned.
pub fn max_deficiency_by_enumeration(b: &TagBipartite) -> Deficiency {
    let l = b.len();
    assert!(l <= 24, "subset enumeration over {l} tags");
    let (values, rows) = b.collapsed();
    let words = values.len().div_ceil(64).max(1);
    let masks: Vec<Vec<u64>> = rows
        .iter()
        .map(|r| {
            let mut m = vec![0u64; words];
            for &i in r {
                m[i / 64] |= 1 << (i % 64);
            }
            m
        })
        .collect();
    let mut best = 0i64;
    let mut union_of_best = 0u32;
    let mut cover = vec![0u64; words];
    for subset in 0u32..(1u32 << l) {
        cover.iter_mut().for_each(|w| *w = 0);
        for (p, m) in masks.iter().enumerate() {
            if subset >> p & 1 == 1 {
                for (w, x) in cover.iter_mut().zip(m) {
                    *w |= x;
                }
            }
        }
        let covered: u32 = cover.iter().map(|w| w.count_ones()).sum();
        let d = subset.count_ones() as i64 - covered as i64;
        if d > best {
            best = d;
            union_of_best = subset;
        } else if d == best {
            union_of_best |= subset;
        }
    }
    let tags = (0..l)
        .filter(|&p| union_of_best >> p & 1 == 1)
        .map(|p| b.tags[p])
        .collect();
    (tags, best)
}

/// Deficiency version of Hall's theorem: the maximum is `|left| - ν`, and
/// the maximal maximizer is everything not reachable by alternating paths
/// from an unmatched absolute value.
pub fn max_deficiency_by_matching(b: &TagBipartite) -> Deficiency {
    let (values, rows) = b.collapsed();
    let m = augmenting_matching(&rows, values.len(), 0..b.len());
    let matched = m.left.iter().filter(|x| x.is_some()).count();
    let mut by_value: Vec<Vec<usize>> = vec![Vec::new(); values.len()];
    for (x, r) in rows.iter().enumerate() {
        for &y in r {
            by_value[y].push(x);
        }
    }
    let mut reached = vec![false; b.len()];
    let mut seen_value = vec![false; values.len()];
    let mut stack: Vec<usize> = (0..values.len()).filter(|&y| m.right[y].is_none()).collect();
    stack.iter().for_each(|&y| seen_value[y] = true);
    while let Some(y) = stack.pop() {
        for &x in &by_value[y] {
            if m.right[y] == Some(x) || reached[x] {
                continue;
            }
            reached[x] = true;
            if let Some(y2) = m.left[x] {
                if !seen_value[y2] {
                    seen_value[y2] = true;
                    stack.push(y2);
                }
            }
        }
    }
    let tags = (0..b.len())
        .filter(|&x| !reached[x])
        .map(|x| b.tags[x])
        .collect();
    (tags, (b.len() - matched) as i64)
}

/// The inclusion-minimal maximizer: tags reachable by alternating paths
/// from tags left unmatched by a maximum matching.
pub fn min_deficiency_set(b: &TagBipartite) -> Deficiency {
    let (values, rows) = b.collapsed();
    let m = augmenting_matching(&rows, values.len(), 0..b.len());
    let matched = m.left.iter().filter(|x| x.is_some()).count();
    let mut reached = vec![false; b.len()];
    let mut stack: Vec<usize> = (0..b.len()).filter(|&x| m.left[x].is_none()).collect();
    stack.iter().for_each(|&x| reached[x] = true);
    while let Some(x) = stack.pop() {
        for &y in &rows[x] {
            if let Some(x2) = m.right[y] {
                if !reached[x2] {
                    reached[x2] = true;
                    stack.push(x2);
                }
            }
        }
    }
    let tags = (0..b.len())
        .filter(|&x| reached[x])
        .map(|x| b.tags[x])
        .collect();
    (tags, (b.len() - matched) as i64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::PairKind;

    fn cs(colors: &[Color]) -> ColorSet {
        ColorSet::new(colors.iter().copied()).unwrap()
    }

    fn bip(rows: &[&[Color]]) -> TagBipartite {
        TagBipartite::new(rows.iter().enumerate().map(|(i, r)| (i, cs(r))).collect())
    }

    /// Every good matching saturating all tags, by brute force.
    fn brute_force_saturating(b: &TagBipartite) -> Vec<Vec<Color>> {
        fn go(b: &TagBipartite, p: usize, cur: &mut Vec<Color>, out: &mut Vec<Vec<Color>>) {
            if p == b.len() {
                out.push(cur.clone());
                return;
            }
            for &c in b.adjacency(p).colors() {
                if cur.iter().all(|x| x.unsigned_abs() != c.unsigned_abs()) {
                    cur.push(c);
                    go(b, p + 1, cur, out);
                    cur.pop();
                }
            }
        }
        let mut out = Vec::new();
        go(b, 0, &mut Vec::new(), &mut out);
        out
    }

    #[test]
    fn abs_and_representatives() {
        assert_eq!(abs_set(&cs(&[1, -1, 2])), BTreeSet::from([1, 2]));
        assert!(abs_set(&cs(&[])).is_empty());
        assert_eq!(abs_set(&cs(&[-3])), BTreeSet::from([3]));
        assert_eq!(representative_subset(&cs(&[1, -1, 2])), cs(&[1, 2]));
        assert_eq!(representative_subset(&cs(&[-3, -5])), cs(&[-3, -5]));
        assert_eq!(representative_subset(&cs(&[2, -2])), cs(&[2]));
        assert!(ColorSet::new([0]).is_err());
    }

    #[test]
    fn good_matching_examples() {
        let b = bip(&[&[1, -1], &[-1]]);
        assert!(brute_force_saturating(&b).is_empty());
        assert_eq!(good_matching_saturating(&b, &[0, 1]).unwrap(), None);

        let b = bip(&[&[1, 2], &[-1]]);
        assert_eq!(brute_force_saturating(&b), vec![vec![2, -1]]);
        let m = good_matching_saturating(&b, &[0, 1]).unwrap().unwrap();
        assert_eq!(m.pairs, vec![(0, 2), (1, -1)]);
        assert!(m.is_valid_in(&b));

        let b = TagBipartite::new(vec![(7, cs(&[3]))]);
        let m = good_matching_saturating(&b, &[7]).unwrap().unwrap();
        assert_eq!(m.pairs, vec![(7, 3)]);
        assert_eq!(good_matching_saturating(&b, &[8]), Err(Error::UnknownTag(8)));
    }

    #[test]
    fn partial_targets() {
        let b = bip(&[&[1], &[-1], &[2]]);
        let m = good_matching_saturating(&b, &[1, 2]).unwrap().unwrap();
        assert_eq!(m.pairs, vec![(1, -1), (2, 2)]);
        assert_eq!(good_matching_saturating(&b, &[0, 1]).unwrap(), None);
    }

    #[test]
    fn deficiency_examples() {
        let b = bip(&[&[1], &[-1], &[2]]);
        assert_eq!(max_deficiency_set(&b), (vec![0, 1, 2], 1));
        assert_eq!(max_deficiency_by_matching(&b), (vec![0, 1, 2], 1));
        assert_eq!(min_deficiency_set(&b), (vec![0, 1], 1));

        let b = bip(&[&[1, 2]]);
        assert_eq!(max_deficiency_set(&b), (vec![], 0));
        assert_eq!(max_deficiency_by_matching(&b), (vec![], 0));

        let empty = TagBipartite::new(vec![]);
        assert_eq!(max_deficiency_set(&empty), (vec![], 0));
        assert_eq!(max_deficiency_by_matching(&empty), (vec![], 0));
        assert_eq!(min_deficiency_set(&empty), (vec![], 0));
    }

    #[test]
    fn tight_hall_maximal_set_is_everything() {
        let b = bip(&[&[1], &[2]]);
        assert_eq!(max_deficiency_set(&b), (vec![0, 1], 0));
        assert_eq!(min_deficiency_set(&b), (vec![], 0));
    }

    fn negative_k4() -> SignedGraph {
        SignedGraph::from_kinds(4, |_, _| PairKind::NegativeOnly)
    }

    #[test]
    fn representative_saturation_examples() {
        let lists =
            ListAssignment::zero_free(vec![vec![1, 2], vec![1, -2], vec![-1, 2], vec![-1, -2]])
                .unwrap();
        let (c, h) = saturate_representative(&negative_k4(), &lists)
            .unwrap()
            .unwrap();
        assert_eq!(c, cs(&[1, 2]));
        assert_eq!(h, BTreeMap::from([(1, 0), (2, 2)]));

        let one = SignedGraph::new(1, &[]).unwrap();
        let lists = ListAssignment::zero_free(vec![vec![1, 2]]).unwrap();
        assert_eq!(saturate_representative(&one, &lists).unwrap(), None);

        let lists = ListAssignment::zero_free(vec![vec![5, -5]]).unwrap();
        let (c, h) = saturate_representative(&one, &lists).unwrap().unwrap();
        assert_eq!(c, cs(&[5]));
        assert_eq!(h, BTreeMap::from([(5, 0)]));

        let general = ListAssignment::new(ListMode::General, vec![vec![0]]).unwrap();
        assert!(matches!(
            saturate_representative(&one, &general),
            Err(Error::ModeViolation(_))
        ));
    }

    #[test]
    fn display_dump() {
        let b = bip(&[&[-1, 2, 1], &[]]);
        assert_eq!(b.to_string(), "0: 1 -1 2\n1:\n");
    }
}
