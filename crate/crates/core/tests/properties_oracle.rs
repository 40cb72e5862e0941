use proptest::prelude::*;
use sclub::graph::diameter;
use sclub::properties::{check_certificate, robustness_check, verify_edge_triangle_club, Certificate};
use sclub::{EdgeSet, Graph, ProblemSpec, VertexSet};

fn graph_strategy(max_n: usize) -> impl Strategy<Value = Graph> {
    (2..=max_n).prop_flat_map(|n| {
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
        let len = pairs.len();
        proptest::collection::vec(proptest::bool::weighted(0.7), len).prop_map(move |keep| {
            Graph::new(n, pairs.iter().zip(keep).filter(|&(_, k)| k).map(|(&e, _)| e)).unwrap()
        })
    })
}

/// Whether some spanning edge set of G[S] has every edge in >= ell of its own
/// triangles and diameter <= s; found by trying all edge subsets.
fn edge_variant_by_subsets(g: &Graph, set: &VertexSet, s: usize, ell: usize) -> bool {
    let edges: Vec<_> = g.edges().filter(|&(u, v)| set.contains(u) && set.contains(v)).collect();
    (0u32..(1 << edges.len())).any(|bits| {
        let f: EdgeSet = edges.iter().enumerate().filter(|&(i, _)| bits >> i & 1 == 1).map(|(_, &e)| e).collect();
        let closed = f.iter().all(|(u, v)| {
            g.neighbors(u).iter().filter(|&&w| f.contains(u, w) && f.contains(v, w)).count() >= ell
        });
        closed && diameter(g, Some(set), Some(&f)).unwrap().at_most(s)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(150))]

    #[test]
    fn edge_verifier_matches_subset_search(g in graph_strategy(6), bits in any::<u8>(), s in 1..=3usize, ell in 1..=2usize) {
        let set = VertexSet::from_members(g.n(), (0..g.n()).filter(|v| bits >> v & 1 == 1)).unwrap();
        prop_assume!(!set.is_empty());
        let m = g.edges().filter(|&(u, v)| set.contains(u) && set.contains(v)).count();
        prop_assume!(m <= 12);
        let got = verify_edge_triangle_club(&g, &set, s, ell).unwrap();
        prop_assert_eq!(got.is_some(), edge_variant_by_subsets(&g, &set, s, ell));
    }

    #[test]
    fn witnesses_survive_budgeted_deletions(g in graph_strategy(7), s in 1..=3usize, ell in 1..=2usize) {
        let spec = ProblemSpec::edge_triangle(s, ell, 1);
        let full = VertexSet::full(g.n());
        if let Some(f) = verify_edge_triangle_club(&g, &full, s, ell).unwrap() {
            let cert = Certificate::with_edges(full, f);
            prop_assert!(check_certificate(&g, &spec, &cert).unwrap().is_ok());
            let report = robustness_check(&g, &cert, s, ell, ell).unwrap();
            prop_assert!(report.holds, "{:?}", report.counterexample);
        }
    }
}

#[test]
fn explicit_witness_is_checked_as_given() {
    let g = Graph::complete(4);
    let spec = ProblemSpec::edge_triangle(2, 1, 1);
    let all = VertexSet::full(4);
    // a triangle plus an isolated vertex: diameter unbounded
    let tri: EdgeSet = [(0, 1), (1, 2), (0, 2)].into_iter().collect();
    assert!(check_certificate(&g, &spec, &Certificate::with_edges(all.clone(), tri)).unwrap().is_err());
    // an edge with no witness triangle
    let lone: EdgeSet = [(0, 1)].into_iter().collect();
    assert!(check_certificate(&g, &spec, &Certificate::with_edges(all, lone)).unwrap().is_err());
}
