mod common;

use std::collections::{BTreeMap, BTreeSet};

use common::{arb_lists, proper_by_edges};
use proptest::prelude::*;
use sgc_core::analyze::*;
use sgc_core::reduce::{multipartite_expansion, PartitionedExpansion};
use sgc_core::solve::list_colorable;
use sgc_core::{Error, ListAssignment};

fn arb_instance(m: i32, max_len: usize) -> impl Strategy<Value = (PartitionedExpansion, ListAssignment)> {
    proptest::collection::vec(1usize..=3, 1..=3).prop_flat_map(move |sizes| {
        let pe = multipartite_expansion(&sizes).unwrap();
        let n = pe.vertex_count();
        arb_lists(n, m, max_len).prop_map(move |l| (pe.clone(), l))
    })
}

fn is_list_coloring(pe: &PartitionedExpansion, lists: &ListAssignment, f: &[i32]) -> bool {
    proper_by_edges(pe.graph(), f) && f.iter().enumerate().all(|(v, &c)| lists.contains(v, c))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(150))]

    #[test]
    fn report_invariants((pe, lists) in arb_instance(4, 3)) {
        let r = analyze(&pe, &lists).unwrap();
        prop_assert_eq!(r.gamma + r.abs_universe as i64, pe.vertex_count() as i64);
        if r.near_exists {
            prop_assert!(r.weak_exists);
        }
        let colorable = list_colorable(pe.graph(), &lists).unwrap().is_colorable();
        if colorable {
            prop_assert!(r.weak_exists);
        }
        prop_assert_eq!(r.maximal.is_none(), colorable);
        prop_assert_eq!(r.frequent.len(), lists.union().len());
    }

    #[test]
    fn weak_colorings_normalize((pe, lists) in arb_instance(4, 3)) {
        let Some(f) = find_weak_coloring(&pe, &lists, false).unwrap() else { return Ok(()); };
        prop_assert!(proper_by_edges(pe.graph(), &f.values.0));
        for &v in &f.private_vertices {
            let c = f.values.0[v];
            prop_assert_eq!(f.values.0.iter().filter(|&&d| d == c).count(), 1);
        }
        let (c, g) = match normalize_weak_coloring(&pe, &lists, &f) {
            Ok(x) => x,
            Err(Error::PreconditionFailed(_)) => return Ok(()),
            Err(e) => return Err(TestCaseError::fail(e.to_string())),
        };
        let gv = &g.values.0;
        prop_assert!(proper_by_edges(pe.graph(), gv));
        let image: BTreeSet<i32> = gv.iter().copied().collect();
        prop_assert_eq!(image, c.colors().iter().copied().collect::<BTreeSet<_>>());
        let abs: BTreeSet<u32> = c.colors().iter().map(|x| x.unsigned_abs()).collect();
        let universe: BTreeSet<u32> = lists.union().iter().map(|x| x.unsigned_abs()).collect();
        prop_assert_eq!(abs.len(), c.len());
        prop_assert_eq!(abs, universe);
        for v in 0..pe.vertex_count() {
            if lists.contains(v, f.values.0[v]) {
                prop_assert!(lists.contains(v, gv[v]));
            }
            if !lists.contains(v, gv[v]) {
                prop_assert_eq!(gv[v], f.values.0[v]);
                prop_assert_eq!(gv.iter().filter(|&&d| d == gv[v]).count(), 1);
            }
        }
        match extend_via_singletons(&pe, &lists, &g) {
            Ok(h) => prop_assert!(is_list_coloring(&pe, &lists, &h.0)),
            Err(Error::PreconditionFailed(_)) | Err(Error::SearchExhausted(_)) => {}
            Err(e) => return Err(TestCaseError::fail(e.to_string())),
        }
    }

    #[test]
    fn completions_are_list_colorings(
        (pe, lists) in arb_instance(5, 4),
        pick in any::<u16>(),
        ell in 0usize..3,
    ) {
        let n = pe.vertex_count();
        let a: BTreeSet<usize> = (0..n).filter(|v| pick >> v & 1 == 1).collect();
        if a.is_empty() || a.len() == n {
            return Ok(());
        }
        let g_a: BTreeMap<usize, i32> = a
            .iter()
            .map(|&v| (v, lists.list(v)[(pick as usize >> 8) % lists.list(v).len()]))
            .collect();
        let check = check_extension_conditions(&pe, &lists, &a, &g_a, ell).unwrap();
        match complete_by_extension(&pe, &lists, &a, &g_a, ell) {
            Ok(f) => {
                prop_assert!(check.holds());
                prop_assert!(is_list_coloring(&pe, &lists, &f.0));
                prop_assert!(a.iter().all(|v| f.0[*v] == g_a[v]));
            }
            Err(Error::PreconditionFailed(_)) => prop_assert!(!check.holds()),
            Err(Error::SearchExhausted(_)) => prop_assert!(check.holds()),
            Err(e) => return Err(TestCaseError::fail(e.to_string())),
        }
    }

    #[test]
    fn theorem_regime_has_no_bad_lists(
        sizes in proptest::collection::vec(1usize..=2, 1..=2),
        seed in any::<u64>(),
    ) {
        let k = sizes.len();
        let pe = multipartite_expansion(&sizes).unwrap();
        let n = pe.vertex_count();
        prop_assume!(n <= 2 * k + 1);
        let m = 2 * k as i32 + 1;
        let mut s = seed;
        let lists = (0..n)
            .map(|_| {
                let mut l = BTreeSet::new();
                while l.len() < 2 * k {
                    s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                    let a = (s >> 33) as i32 % m + 1;
                    l.insert(if s >> 32 & 1 == 1 { -a } else { a });
                }
                l.into_iter().collect()
            })
            .collect();
        let lists = ListAssignment::zero_free(lists).unwrap();
        prop_assert!(list_colorable(pe.graph(), &lists).unwrap().is_colorable());
        prop_assert_eq!(is_maximal_bad_list(&pe, &lists), Err(Error::NotABadList));
    }
}
