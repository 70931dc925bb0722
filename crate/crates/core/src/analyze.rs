//! Diagnostics for bad list assignments on complete multipartite
//! expansions: list statistics, weak and near colorings, and constructive
//! completion of partial colorings.
//!
//! Throughout, `k` is the number of parts, `xi` the number of one-vertex
//! parts and `gamma = |V| - |abs(C_L)|`, where `C_L` is the union of all
//! lists.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::SignedGraph;
use crate::matching::{
    good_matching_saturating, min_deficiency_set, saturate_representative, ColorSet,
    TagBipartite,
};
use crate::reduce::PartitionedExpansion;
use crate::solve::{
    cmp_colors, is_proper, list_colorable, zero_free_chromatic_number, Color, Coloring,
    ListAssignment, ListMode,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Frequency {
    Globally,
    AmongSingletons,
    Both,
    None,
}

impl Frequency {
    pub fn is_frequent(self) -> bool {
        self != Frequency::None
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum AuditStatus {
    Holds,
    Violated,
    NotApplicable,
}

impl AuditStatus {
    fn of(holds: bool) -> AuditStatus {
        if holds {
            AuditStatus::Holds
        } else {
            AuditStatus::Violated
        }
    }
}

/// A bound that holds for bad lists in the minimal-counterexample regime.
/// Violations on other instances are informational.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Audit {
    pub id: &'static str,
    pub status: AuditStatus,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AnalysisReport {
    pub gamma: i64,
    pub xi: usize,
    pub k: usize,
    pub abs_universe: usize,
    pub frequent: BTreeMap<Color, Frequency>,
    /// Set when `gamma <= 0`, where "frequent among singletons" is undefined.
    pub among_singletons_vacuous: bool,
    pub weak_exists: bool,
    pub near_exists: bool,
    /// `None` when the lists admit a coloring.
    pub maximal: Option<bool>,
    pub audits: Vec<Audit>,
}

/// A proper coloring into `C_L` where every vertex either gets a color
/// from its list or is alone in its color class.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WeakColoring {
    pub values: Coloring,
    /// Vertices whose color is not in their list.
    pub private_vertices: BTreeSet<usize>,
}

impl WeakColoring {
    /// Checks the weak-coloring conditions and fills in the private set.
    pub fn new(pe: &PartitionedExpansion, lists: &ListAssignment, values: Coloring) -> Result<Self> {
        check_instance(pe, lists)?;
        if values.0.len() != pe.vertex_count() {
            return Err(Error::SizeMismatch {
                left: values.0.len(),
                right: pe.vertex_count(),
            });
        }
        if !is_proper(pe.graph(), &values)? {
            return Err(Error::ImproperInput("coloring is not proper".into()));
        }
        let union: BTreeSet<Color> = lists.union().into_iter().collect();
        let mut private_vertices = BTreeSet::new();
        for (v, &c) in values.0.iter().enumerate() {
            if !union.contains(&c) {
                return Err(Error::ImproperInput(format!(
                    "color {c} of vertex {v} is outside the list union"
                )));
            }
            if !lists.contains(v, c) {
                if values.0.iter().filter(|&&d| d == c).count() > 1 {
                    return Err(Error::ImproperInput(format!(
                        "vertex {v} has color {c} off its list but shares its class"
                    )));
                }
                private_vertices.insert(v);
            }
        }
        Ok(WeakColoring {
            values,
            private_vertices,
        })
    }

    pub fn is_list_coloring(&self) -> bool {
        self.private_vertices.is_empty()
    }

    /// Distinct colors used, in candidate order.
    pub fn image(&self) -> Vec<Color> {
        let mut image: Vec<Color> = self.values.0.clone();
        image.sort_by(|a, b| cmp_colors(*a, *b));
        image.dedup();
        image
    }
}

fn check_instance(pe: &PartitionedExpansion, lists: &ListAssignment) -> Result<()> {
    if lists.mode() != ListMode::ZeroFree {
        return Err(Error::ModeViolation("analysis needs zero-free lists".into()));
    }
    lists.check_total(pe.vertex_count())
}

fn abs_universe(lists: &ListAssignment) -> BTreeSet<u32> {
    lists.union().iter().map(|c| c.unsigned_abs()).collect()
}

fn gamma(pe: &PartitionedExpansion, lists: &ListAssignment) -> i64 {
    pe.vertex_count() as i64 - abs_universe(lists).len() as i64
}

/// Classification of every color of `C_L`. A color is globally frequent
/// when it lies in at least `k + 1` lists and frequent among singletons
/// when it lies in at least `gamma >= 1` lists of one-vertex parts.
pub fn classify_colors(
    pe: &PartitionedExpansion,
    lists: &ListAssignment,
) -> Result<BTreeMap<Color, Frequency>> {
    check_instance(pe, lists)?;
    let n = pe.vertex_count();
    let gamma = gamma(pe, lists);
    Ok(lists
        .union()
        .into_iter()
        .map(|c| {
            let holders = (0..n).filter(|&v| lists.contains(v, c));
            let global = holders.clone().count() > pe.k();
            let singles = holders.filter(|&v| pe.is_singleton(v)).count() as i64;
            let among = gamma >= 1 && singles >= gamma;
            let f = match (global, among) {
                (true, true) => Frequency::Both,
                (true, false) => Frequency::Globally,
                (false, true) => Frequency::AmongSingletons,
                (false, false) => Frequency::None,
            };
            (c, f)
        })
        .collect())
}

pub fn analyze(pe: &PartitionedExpansion, lists: &ListAssignment) -> Result<AnalysisReport> {
    check_instance(pe, lists)?;
    let n = pe.vertex_count();
    let k = pe.k();
    let xi = pe.singleton_count();
    let abs_universe = abs_universe(lists).len();
    let gamma = n as i64 - abs_universe as i64;
    let frequent = classify_colors(pe, lists)?;
    let weak_exists = find_weak_coloring(pe, lists, false)?.is_some();
    let near_exists = find_weak_coloring(pe, lists, true)?.is_some();
    let colorable = list_colorable(pe.graph(), lists)?.is_colorable();
    let maximal = if colorable {
        None
    } else {
        Some(is_maximal_bad_list(pe, lists)?)
    };

    let nonsingleton: Vec<&Vec<usize>> = pe.parts().iter().filter(|p| p.len() > 1).collect();
    let disjoint = if nonsingleton.is_empty() {
        AuditStatus::NotApplicable
    } else {
        AuditStatus::of(nonsingleton.iter().all(|p| {
            lists
                .list(p[0])
                .iter()
                .all(|&c| p.iter().any(|&v| !lists.contains(v, c)))
        }))
    };
    let frequent_count = frequent.values().filter(|f| f.is_frequent()).count() as i64;
    let (k_i, xi_i) = (k as i64, xi as i64);
    let regime = |holds: bool| {
        if gamma <= 0 {
            AuditStatus::NotApplicable
        } else {
            AuditStatus::of(holds)
        }
    };
    let audits = vec![
        Audit {
            id: "nonsingleton-parts-disjoint",
            status: disjoint,
        },
        Audit {
            id: "abs-universe-below-order",
            status: AuditStatus::of(abs_universe < n),
        },
        Audit {
            id: "order-is-2k-plus-1",
            status: AuditStatus::of(n == 2 * k + 1),
        },
        Audit {
            id: "singletons-at-least-gamma",
            status: regime(xi_i >= gamma),
        },
        Audit {
            id: "singletons-at-least-twice-gamma",
            status: regime(xi_i >= 2 * gamma),
        },
        Audit {
            id: "frequent-colors-at-most-2k-minus-2",
            status: regime(frequent_count <= 2 * (k_i - 1)),
        },
        Audit {
            id: "frequent-colors-at-most-2k-minus-2xi-minus-2",
            status: regime(frequent_count <= 2 * (k_i - xi_i - 1)),
        },
    ];

    Ok(AnalysisReport {
        gamma,
        xi,
        k,
        abs_universe,
        frequent,
        among_singletons_vacuous: gamma <= 0,
        weak_exists,
        near_exists,
        maximal,
        audits,
    })
}

struct WeakSearch<'a> {
    g: &'a SignedGraph,
    lists: &'a ListAssignment,
    /// Per vertex: list colors, then off-list colors.
    candidates: Vec<Vec<(Color, bool)>>,
    values: Vec<Color>,
    private: Vec<bool>,
    uses: BTreeMap<Color, usize>,
    private_owner: BTreeMap<Color, usize>,
}

impl WeakSearch<'_> {
    fn fits(&self, v: usize, c: Color, private: bool) -> bool {
        if self.private_owner.contains_key(&c) {
            return false;
        }
        if private && self.uses.get(&c).copied().unwrap_or(0) > 0 {
            return false;
        }
        (0..v).all(|u| !self.g.kind(u, v).conflicts(self.values[u], c))
    }

    fn run(&mut self, v: usize) -> bool {
        if v == self.values.len() {
            return true;
        }
        for i in 0..self.candidates[v].len() {
            let (c, private) = self.candidates[v][i];
            if !self.fits(v, c, private) {
                continue;
            }
            self.values[v] = c;
            self.private[v] = private;
            *self.uses.entry(c).or_insert(0) += 1;
            if private {
                self.private_owner.insert(c, v);
            }
            if self.run(v + 1) {
                return true;
            }
            *self.uses.get_mut(&c).unwrap() -= 1;
            if private {
                self.private_owner.remove(&c);
            }
        }
        false
    }
}

/// Searches for a weak coloring, trying list colors before off-list ones
/// at every vertex. With `near_only`, off-list colors must be frequent.
pub fn find_weak_coloring(
    pe: &PartitionedExpansion,
    lists: &ListAssignment,
    near_only: bool,
) -> Result<Option<WeakColoring>> {
    check_instance(pe, lists)?;
    let frequent = classify_colors(pe, lists)?;
    let union = lists.union();
    let n = pe.vertex_count();
    let candidates = (0..n)
        .map(|v| {
            let on = lists.list(v).iter().map(|&c| (c, false));
            let off = union
                .iter()
                .filter(|&&c| !lists.contains(v, c))
                .filter(|c| !near_only || frequent[c].is_frequent())
                .map(|&c| (c, true));
            on.chain(off).collect()
        })
        .collect();
    let mut search = WeakSearch {
        g: pe.graph(),
        lists,
        candidates,
        values: vec![0; n],
        private: vec![false; n],
        uses: BTreeMap::new(),
        private_owner: BTreeMap::new(),
    };
    if !search.run(0) {
        return Ok(None);
    }
    debug_assert!(search.private.iter().enumerate().all(|(v, &p)| p
        != search.lists.contains(v, search.values[v])));
    Ok(Some(WeakColoring {
        values: Coloring(search.values.clone()),
        private_vertices: (0..n).filter(|&v| search.private[v]).collect(),
    }))
}

/// Rebuilds `f` into a weak coloring onto a representative subset of
/// `C_L`. Starting from `f` with every color projected into the subset
/// `C` from [`saturate_representative`], an unused `c` is repeatedly
/// placed on its matched vertex `h(c)` until every color of `C` is used.
/// Classes that end up neither list-valid nor equal
/// to `f` are then negated back to `f`.
///
/// The result `g` satisfies: `f(v) ∈ L(v)` implies `g(v) ∈ L(v)`, and
/// `g(v) ∉ L(v)` implies `g(v) = f(v)`. Returns the image of `g`.
pub fn normalize_weak_coloring(
    pe: &PartitionedExpansion,
    lists: &ListAssignment,
    f: &WeakColoring,
) -> Result<(ColorSet, WeakColoring)> {
    let f = WeakColoring::new(pe, lists, f.values.clone())?;
    let n = pe.vertex_count();
    if abs_universe(lists).len() > n {
        return Err(Error::PreconditionFailed(format!(
            "{} absolute values exceed {n} vertices",
            abs_universe(lists).len()
        )));
    }
    let (c, h) = saturate_representative(pe.graph(), lists)?.ok_or_else(|| {
        Error::PreconditionFailed("no matching saturates a representative subset".into())
    })?;
    let project = |x: Color| if c.contains(x) { x } else { -x };
    let mut g: Vec<Color> = f.values.0.iter().map(|&x| project(x)).collect();
    // each step adds one color where g agrees with h and keeps the others,
    // so this stops after at most |C| steps
    while let Some(&x) = c.colors().iter().find(|x| !g.contains(x)) {
        g[h[&x]] = x;
    }
    // classes failing both "all on their lists" and "all equal to f"
    let mut negate = BTreeSet::new();
    for &x in c.colors() {
        let class: Vec<usize> = (0..n).filter(|&v| g[v] == x).collect();
        let listed = class.iter().all(|&v| lists.contains(v, x));
        let kept = class.iter().all(|&v| f.values.0[v] == x);
        if !listed && !kept {
            debug_assert!(class.iter().all(|&v| f.values.0[v] == -x));
            negate.insert(x);
        }
    }
    for x in g.iter_mut() {
        if negate.contains(x) {
            *x = -*x;
        }
    }
    let g = WeakColoring::new(pe, lists, Coloring(g))?;
    let image = ColorSet::new(g.image())?;
    Ok((image, g))
}

/// Per-condition result of [`check_extension_conditions`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ExtensionCheck {
    /// The partial coloring is a proper list coloring of the induced graph.
    pub partial_coloring: bool,
    /// `|V \ A| <= 2(k - ell) + 1`.
    pub remainder_order: bool,
    /// The zero-free chromatic number of `Σ - A` is at most `2(k - ell)`.
    pub remainder_chromatic: bool,
    /// Every `v ∉ A` keeps at least `2(k - ell)` colors off `g(A)^±`.
    pub remainder_lists: bool,
}

impl ExtensionCheck {
    pub fn holds(&self) -> bool {
        self.partial_coloring
            && self.remainder_order
            && self.remainder_chromatic
            && self.remainder_lists
    }
}

fn split_subset(
    pe: &PartitionedExpansion,
    a: &BTreeSet<usize>,
    g_a: &BTreeMap<usize, Color>,
) -> Result<Vec<usize>> {
    let n = pe.vertex_count();
    if a.is_empty() || a.len() >= n {
        return Err(Error::BadSubset(
            "the colored set must be a nonempty proper subset".into(),
        ));
    }
    if let Some(&v) = a.iter().find(|&&v| v >= n) {
        return Err(Error::BadSubset(format!("vertex {v} out of range")));
    }
    if !g_a.keys().eq(a.iter()) {
        return Err(Error::BadSubset(
            "the partial coloring must be defined exactly on the colored set".into(),
        ));
    }
    Ok((0..n).filter(|v| !a.contains(v)).collect())
}

/// Lists of the uncolored vertices with `g(A)^±` removed.
fn remainder_lists(
    lists: &ListAssignment,
    rest: &[usize],
    g_a: &BTreeMap<usize, Color>,
) -> Result<ListAssignment> {
    let used: BTreeSet<u32> = g_a.values().map(|c| c.unsigned_abs()).collect();
    let reduced = rest
        .iter()
        .map(|&v| {
            lists
                .list(v)
                .iter()
                .copied()
                .filter(|c| !used.contains(&c.unsigned_abs()))
                .collect()
        })
        .collect();
    ListAssignment::new(lists.mode(), reduced)
}

/// Evaluates the four conditions under which a list coloring of `A`
/// extends to the whole graph.
pub fn check_extension_conditions(
    pe: &PartitionedExpansion,
    lists: &ListAssignment,
    a: &BTreeSet<usize>,
    g_a: &BTreeMap<usize, Color>,
    ell: usize,
) -> Result<ExtensionCheck> {
    check_instance(pe, lists)?;
    let rest = split_subset(pe, a, g_a)?;
    let budget = 2 * (pe.k() as i64 - ell as i64);

    let inside: Vec<usize> = a.iter().copied().collect();
    let sub = pe.graph().induced(&inside);
    let partial = Coloring(inside.iter().map(|v| g_a[v]).collect());
    let partial_coloring = is_proper(&sub, &partial)?
        && inside.iter().all(|&v| lists.contains(v, g_a[&v]));

    let remainder_order = rest.len() as i64 <= budget + 1;
    let remainder_chromatic =
        zero_free_chromatic_number(&pe.graph().induced(&rest)) as i64 <= budget;
    let reduced = remainder_lists(lists, &rest, g_a)?;
    let remainder_lists = reduced.lists().iter().all(|l| l.len() as i64 >= budget);

    Ok(ExtensionCheck {
        partial_coloring,
        remainder_order,
        remainder_chromatic,
        remainder_lists,
    })
}

/// Extends `g_a` to a list coloring of the whole graph by solving the
/// remainder with the reduced lists.
pub fn complete_by_extension(
    pe: &PartitionedExpansion,
    lists: &ListAssignment,
    a: &BTreeSet<usize>,
    g_a: &BTreeMap<usize, Color>,
    ell: usize,
) -> Result<Coloring> {
    let check = check_extension_conditions(pe, lists, a, g_a, ell)?;
    if !check.holds() {
        return Err(Error::PreconditionFailed(format!(
            "extension conditions fail: {check:?}"
        )));
    }
    let rest = split_subset(pe, a, g_a)?;
    let reduced = remainder_lists(lists, &rest, g_a)?;
    let solved = list_colorable(&pe.graph().induced(&rest), &reduced)?;
    let Some(h) = solved.witness else {
        return Err(Error::SearchExhausted(
            "the remainder has no coloring from its reduced lists".into(),
        ));
    };
    let mut values = vec![0; pe.vertex_count()];
    for (&v, &c) in g_a {
        values[v] = c;
    }
    for (i, &v) in rest.iter().enumerate() {
        values[v] = h.0[i];
    }
    let f = Coloring(values);
    debug_assert!(is_proper(pe.graph(), &f)? && is_list_coloring_of(lists, &f));
    Ok(f)
}

fn is_list_coloring_of(lists: &ListAssignment, f: &Coloring) -> bool {
    f.0.iter().enumerate().all(|(v, &c)| lists.contains(v, c))
}

/// Turns a weak coloring `f` onto a representative subset of `C_L` into a
/// list coloring.
///
/// Color classes of `f` form the left side of a bipartite graph joined to
/// the colors common to all lists in the class. With `S` the smallest set
/// of classes of maximum deficiency, classes outside `S` get a good
/// matching that avoids `N(S)^±`, classes of size two or more inside `S`
/// keep their color, and the one-vertex classes inside `S` are filled in
/// by [`complete_by_extension`]. This needs at least `gamma` one-vertex
/// parts among the classes outside `S`.
pub fn extend_via_singletons(
    pe: &PartitionedExpansion,
    lists: &ListAssignment,
    f: &WeakColoring,
) -> Result<Coloring> {
    let f = WeakColoring::new(pe, lists, f.values.clone())?;
    let n = pe.vertex_count();
    let image = f.image();
    let image_abs: BTreeSet<u32> = image.iter().map(|c| c.unsigned_abs()).collect();
    if image_abs.len() != image.len() || image_abs != abs_universe(lists) {
        return Err(Error::PreconditionFailed(
            "the coloring must map onto a representative subset of the list union".into(),
        ));
    }
    if f.is_list_coloring() {
        return Ok(f.values);
    }

    let classes: Vec<Vec<usize>> = image
        .iter()
        .map(|&c| (0..n).filter(|&v| f.values.0[v] == c).collect())
        .collect();
    let common = |class: &[usize]| -> Vec<Color> {
        lists
            .list(class[0])
            .iter()
            .copied()
            .filter(|&c| class.iter().all(|&v| lists.contains(v, c)))
            .collect()
    };
    let rows = classes
        .iter()
        .enumerate()
        .map(|(i, class)| Ok((i, ColorSet::new(common(class))?)))
        .collect::<Result<Vec<_>>>()?;
    let b = TagBipartite::new(rows);
    let (s, _) = min_deficiency_set(&b);
    let in_s: BTreeSet<usize> = s.iter().copied().collect();
    let blocked: BTreeSet<u32> = b
        .neighborhood(s.iter().copied())
        .colors()
        .iter()
        .map(|c| c.unsigned_abs())
        .collect();

    let gamma = gamma(pe, lists);
    let free_singletons = (0..classes.len())
        .filter(|i| !in_s.contains(i))
        .filter(|&i| classes[i].len() == 1 && pe.is_singleton(classes[i][0]))
        .count() as i64;
    if free_singletons < gamma {
        return Err(Error::PreconditionFailed(format!(
            "only {free_singletons} one-vertex parts lie outside the deficient classes, \
             {gamma} needed"
        )));
    }

    let outside: Vec<usize> = (0..classes.len()).filter(|i| !in_s.contains(i)).collect();
    let trimmed = TagBipartite::new(
        outside
            .iter()
            .map(|&i| {
                let kept = b
                    .adjacency(i)
                    .colors()
                    .iter()
                    .copied()
                    .filter(|c| !blocked.contains(&c.unsigned_abs()));
                Ok((i, ColorSet::new(kept)?))
            })
            .collect::<Result<Vec<_>>>()?,
    );
    let matching = good_matching_saturating(&trimmed, &outside)?.ok_or_else(|| {
        Error::SearchExhausted(
            "matching step: no good matching saturates the classes outside the deficient set"
                .into(),
        )
    })?;

    let mut g_a = BTreeMap::new();
    for &i in &outside {
        let c = matching.color_of(i).expect("saturating matching");
        for &v in &classes[i] {
            g_a.insert(v, c);
        }
    }
    let mut multi_classes = 0;
    for (i, class) in classes.iter().enumerate() {
        if class.len() > 1 {
            multi_classes += 1;
            if in_s.contains(&i) {
                for &v in class {
                    g_a.insert(v, image[i]);
                }
            }
        }
    }
    if g_a.len() == n {
        let values = Coloring((0..n).map(|v| g_a[&v]).collect());
        if !(is_proper(pe.graph(), &values)? && is_list_coloring_of(lists, &values)) {
            return Err(Error::SearchExhausted(
                "matching step: combined coloring is not a list coloring".into(),
            ));
        }
        return Ok(values);
    }
    let a: BTreeSet<usize> = g_a.keys().copied().collect();
    complete_by_extension(pe, lists, &a, &g_a, multi_classes).map_err(|e| match e {
        Error::PreconditionFailed(m) => Error::PreconditionFailed(format!("completion step: {m}")),
        Error::SearchExhausted(m) => Error::SearchExhausted(format!("completion step: {m}")),
        other => other,
    })
}

/// Finds a weak coloring, normalizes it and extends it to a list coloring.
pub fn extend_from_weak(pe: &PartitionedExpansion, lists: &ListAssignment) -> Result<Coloring> {
    let f = find_weak_coloring(pe, lists, false)?
        .ok_or_else(|| Error::PreconditionFailed("no weak coloring exists".into()))?;
    let (_, g) = normalize_weak_coloring(pe, lists, &f)?;
    extend_via_singletons(pe, lists, &g)
}

/// Whether the bad assignment becomes colorable after adding any single
/// color of `C_L` to any single list that lacks it.
pub fn is_maximal_bad_list(pe: &PartitionedExpansion, lists: &ListAssignment) -> Result<bool> {
    check_instance(pe, lists)?;
    if list_colorable(pe.graph(), lists)?.is_colorable() {
        return Err(Error::NotABadList);
    }
    let union = lists.union();
    for v in 0..pe.vertex_count() {
        for &c in union.iter().filter(|&&c| !lists.contains(v, c)) {
            let mut grown = lists.lists().to_vec();
            grown[v].push(c);
            let grown = ListAssignment::new(lists.mode(), grown)?;
            if !list_colorable(pe.graph(), &grown)?.is_colorable() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{negative_k4_expansion, negative_k4_lists};
    use crate::reduce::multipartite_expansion;

    fn zf(lists: &[&[Color]]) -> ListAssignment {
        ListAssignment::zero_free(lists.iter().map(|l| l.to_vec()).collect()).unwrap()
    }

    fn status(r: &AnalysisReport, id: &str) -> AuditStatus {
        r.audits.iter().find(|a| a.id == id).unwrap().status
    }

    #[test]
    fn k4_report() {
        let pe = negative_k4_expansion();
        let r = analyze(&pe, &negative_k4_lists()).unwrap();
        assert_eq!((r.gamma, r.xi, r.k, r.abs_universe), (2, 0, 1, 2));
        assert_eq!(r.frequent.len(), 4);
        assert!(r.frequent.values().all(|&f| f == Frequency::Globally));
        assert!(!r.weak_exists && !r.near_exists);
        assert_eq!(r.maximal, Some(true));
        assert_eq!(
            status(&r, "nonsingleton-parts-disjoint"),
            AuditStatus::Holds
        );
        assert_eq!(status(&r, "order-is-2k-plus-1"), AuditStatus::Violated);
    }

    #[test]
    fn single_vertex_report() {
        let pe = multipartite_expansion(&[1]).unwrap();
        let r = analyze(&pe, &zf(&[&[1, 2]])).unwrap();
        assert_eq!((r.gamma, r.xi), (-1, 1));
        assert!(r.among_singletons_vacuous);
        let na = r
            .audits
            .iter()
            .filter(|a| a.status == AuditStatus::NotApplicable)
            .count();
        assert_eq!(na, 5);
        assert!(r.weak_exists);
        assert_eq!(r.maximal, None);
    }

    #[test]
    fn colorable_instance_has_weak_coloring() {
        let pe = multipartite_expansion(&[3]).unwrap();
        let r = analyze(&pe, &zf(&[&[1, 2], &[1, 2], &[1, 2]])).unwrap();
        assert!(r.weak_exists);
        assert_eq!(r.gamma + r.abs_universe as i64, 3);
    }

    #[test]
    fn weak_search_examples() {
        let pe = negative_k4_expansion();
        assert_eq!(
            find_weak_coloring(&pe, &negative_k4_lists(), true).unwrap(),
            None
        );
        let all12 = zf(&[&[1, 2][..]; 4]);
        let f = find_weak_coloring(&pe, &all12, false).unwrap().unwrap();
        assert_eq!(f.values, Coloring(vec![1; 4]));
        assert!(f.is_list_coloring());

        let pair = multipartite_expansion(&[1, 1]).unwrap();
        let f = find_weak_coloring(&pair, &zf(&[&[1, 2], &[3, 4]]), false)
            .unwrap()
            .unwrap();
        assert_eq!(f.values, Coloring(vec![1, 3]));
    }

    #[test]
    fn weak_search_uses_private_colors() {
        let pe = multipartite_expansion(&[1, 1]).unwrap();
        assert_eq!(find_weak_coloring(&pe, &zf(&[&[1], &[1]]), false).unwrap(), None);
        let lists = zf(&[&[1], &[1, 2]]);
        let f = find_weak_coloring(&pe, &lists, false).unwrap().unwrap();
        assert!(f.is_list_coloring());
        let three = multipartite_expansion(&[1, 1, 1]).unwrap();
        let lists = zf(&[&[1, 2], &[1, 2], &[1, 2]]);
        let f = find_weak_coloring(&three, &lists, false).unwrap();
        assert!(f.is_none(), "only two absolute values for three vertices");
        let lists = zf(&[&[1], &[1], &[2, 3]]);
        let f = find_weak_coloring(&three, &lists, false).unwrap().unwrap();
        assert_eq!(f.values, Coloring(vec![1, 2, 3]));
        assert_eq!(f.private_vertices, BTreeSet::from([1]));
        assert_eq!(WeakColoring::new(&three, &lists, f.values.clone()).unwrap(), f);
    }

    #[test]
    fn normalize_recolors_through_h() {
        let pe = negative_k4_expansion();
        let lists = zf(&[&[1, 2][..]; 4]);
        let f = WeakColoring::new(&pe, &lists, Coloring(vec![1; 4])).unwrap();
        let (c, g) = normalize_weak_coloring(&pe, &lists, &f).unwrap();
        assert_eq!(c.colors(), &[1, 2]);
        assert_eq!(g.values.0.iter().filter(|&&x| x == 1).count(), 3);
        assert_eq!(g.values.0.iter().filter(|&&x| x == 2).count(), 1);
        assert!(g.is_list_coloring());
    }

    #[test]
    fn normalize_keeps_surjective_list_coloring() {
        let pe = multipartite_expansion(&[1, 1]).unwrap();
        let lists = zf(&[&[1, 2], &[2, 1]]);
        let f = WeakColoring::new(&pe, &lists, Coloring(vec![2, 1])).unwrap();
        let (c, g) = normalize_weak_coloring(&pe, &lists, &f).unwrap();
        assert_eq!(g, f);
        assert_eq!(c.colors(), &[1, 2]);
    }

    #[test]
    fn normalize_flips_negated_private_class() {
        // v0 holds -1 privately; the representative subset picks +1
        let pe = multipartite_expansion(&[1, 1]).unwrap();
        let lists = zf(&[&[2], &[1, 2]]);
        let f = WeakColoring::new(&pe, &lists, Coloring(vec![1, 2])).unwrap();
        let (_, g) = normalize_weak_coloring(&pe, &lists, &f).unwrap();
        for v in 0..2 {
            if lists.contains(v, f.values.0[v]) {
                assert!(lists.contains(v, g.values.0[v]));
            }
            if !lists.contains(v, g.values.0[v]) {
                assert_eq!(g.values.0[v], f.values.0[v]);
            }
        }
    }

    #[test]
    fn normalize_rejects_large_universe() {
        let pe = multipartite_expansion(&[1]).unwrap();
        let lists = zf(&[&[1, 2]]);
        let f = WeakColoring::new(&pe, &lists, Coloring(vec![1])).unwrap();
        assert!(matches!(
            normalize_weak_coloring(&pe, &lists, &f),
            Err(Error::PreconditionFailed(_))
        ));
    }

    fn pair_instance() -> (PartitionedExpansion, ListAssignment) {
        let pe = multipartite_expansion(&[1, 1]).unwrap();
        (pe, zf(&[&[1, 2, 3, 4], &[1, 2, 3, 4]]))
    }

    #[test]
    fn extension_conditions() {
        let (pe, lists) = pair_instance();
        let a = BTreeSet::from([0]);
        let g_a = BTreeMap::from([(0, 1)]);
        let c = check_extension_conditions(&pe, &lists, &a, &g_a, 1).unwrap();
        assert!(c.holds());
        let c = check_extension_conditions(&pe, &lists, &a, &g_a, 2).unwrap();
        assert!(c.remainder_lists && c.remainder_order && !c.remainder_chromatic);
        let all = BTreeSet::from([0, 1]);
        let g_all = BTreeMap::from([(0, 1), (1, 2)]);
        assert!(matches!(
            check_extension_conditions(&pe, &lists, &all, &g_all, 1),
            Err(Error::BadSubset(_))
        ));
    }

    #[test]
    fn completion() {
        let (pe, lists) = pair_instance();
        let a = BTreeSet::from([0]);
        let g_a = BTreeMap::from([(0, 1)]);
        let f = complete_by_extension(&pe, &lists, &a, &g_a, 1).unwrap();
        assert_eq!(f, Coloring(vec![1, 2]));
        // (d) fails: the remaining list loses its only other color
        let tight = zf(&[&[1, 2], &[1, -1]]);
        assert!(matches!(
            complete_by_extension(&pe, &tight, &a, &g_a, 0),
            Err(Error::PreconditionFailed(_))
        ));
    }

    #[test]
    fn extension_with_one_vertex_left() {
        let pe = multipartite_expansion(&[1, 1, 1]).unwrap();
        let lists = zf(&[&[1, 2], &[2, 3], &[3, 4]]);
        let a = BTreeSet::from([0, 1]);
        let g_a = BTreeMap::from([(0, 1), (1, 2)]);
        let f = complete_by_extension(&pe, &lists, &a, &g_a, 3).unwrap_err();
        assert!(matches!(f, Error::PreconditionFailed(_)));
        let f = complete_by_extension(&pe, &lists, &a, &g_a, 2).unwrap();
        assert_eq!(f, Coloring(vec![1, 2, 3]));
    }

    #[test]
    fn extend_returns_list_colorings() {
        let pe3 = multipartite_expansion(&[3]).unwrap();
        let lists3 = zf(&[&[1, 2], &[1, 2], &[1, 2]]);
        let f = WeakColoring::new(&pe3, &lists3, Coloring(vec![1, 2, 1]));
        assert!(f.is_ok());
        let g = extend_via_singletons(&pe3, &lists3, &f.unwrap()).unwrap();
        assert_eq!(g, Coloring(vec![1, 2, 1]));
    }

    #[test]
    fn extend_runs_matching_path() {
        let pe = multipartite_expansion(&[1, 1, 1]).unwrap();
        let lists = zf(&[&[1, 2], &[2], &[3]]);
        let f = WeakColoring::new(&pe, &lists, Coloring(vec![3, 2, 1])).unwrap();
        assert_eq!(f.private_vertices, BTreeSet::from([0, 2]));
        let g = extend_via_singletons(&pe, &lists, &f).unwrap();
        assert_eq!(g, Coloring(vec![1, 2, 3]));
    }

    #[test]
    fn extend_needs_a_weak_coloring_on_k4() {
        let pe = negative_k4_expansion();
        assert!(matches!(
            extend_from_weak(&pe, &negative_k4_lists()),
            Err(Error::PreconditionFailed(_))
        ));
    }

    #[test]
    fn maximality() {
        let pe = negative_k4_expansion();
        assert_eq!(is_maximal_bad_list(&pe, &negative_k4_lists()), Ok(true));
        // a sub-list of a bad list is bad; putting -2 back restores the original
        let shrunk = zf(&[&[1, 2], &[1, -2], &[-1, 2], &[-1]]);
        assert!(!list_colorable(pe.graph(), &shrunk).unwrap().is_colorable());
        assert_eq!(is_maximal_bad_list(&pe, &shrunk), Ok(false));
        let ok = zf(&[&[1, 2][..]; 4]);
        assert_eq!(is_maximal_bad_list(&pe, &ok), Err(Error::NotABadList));
    }
}
