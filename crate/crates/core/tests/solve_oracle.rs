use proptest::prelude::*;
use sclub::properties::verify;
use sclub::solve::{brute_force_max, solve_decision, solve_max, solve_max_with, SolveOptions};
use sclub::{Graph, ProblemSpec};

fn graph_strategy(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n).prop_flat_map(|n| {
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
        let len = pairs.len();
        (proptest::collection::vec(proptest::bool::weighted(0.55), len), Just(n), Just(pairs))
            .prop_map(|(keep, n, pairs)| {
                let edges = pairs.into_iter().zip(keep).filter(|&(_, k)| k).map(|(e, _)| e);
                Graph::new(n, edges).unwrap()
            })
    })
}

fn spec_strategy() -> impl Strategy<Value = ProblemSpec> {
    prop_oneof![
        (1..=4usize).prop_map(|s| ProblemSpec::club(s, 1)),
        (1..=4usize, 1..=3usize).prop_map(|(s, l)| ProblemSpec::vertex_triangle(s, l, 1)),
        (1..=4usize, 1..=2usize).prop_map(|(s, l)| ProblemSpec::edge_triangle(s, l, 1)),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn maximum_matches_brute_force(g in graph_strategy(9), spec in spec_strategy()) {
        let (want, _) = brute_force_max(&g, &spec).unwrap();
        let got = solve_max(&g, &spec).unwrap();
        prop_assert_eq!(got.optimum_size, want);
        if let Some(cert) = &got.best {
            prop_assert!(verify(&g, &spec, cert).unwrap());
        }
    }

    #[test]
    fn seeded_matches_brute_force(g in graph_strategy(9), s in 1..=4usize, picks in proptest::collection::vec(0..9usize, 1..=3)) {
        let seeds: Vec<_> = picks.into_iter().map(|w| w % g.n()).collect();
        let spec = ProblemSpec::seeded(s, 1, seeds);
        let (want, _) = brute_force_max(&g, &spec).unwrap();
        let got = solve_max(&g, &spec).unwrap();
        prop_assert_eq!(got.optimum_size, want);
    }

    #[test]
    fn decision_agrees_with_maximum(g in graph_strategy(9), spec in spec_strategy(), k in 1..=9usize) {
        let spec = ProblemSpec { k, ..spec };
        let max = solve_max(&g, &spec).unwrap().optimum_size;
        let d = solve_decision(&g, &spec).unwrap();
        prop_assert_eq!(d.yes, max >= k);
        if let Some(cert) = &d.certificate {
            prop_assert!(cert.len() >= k);
            prop_assert!(verify(&g, &spec, cert).unwrap());
        }
    }

    #[test]
    fn thread_count_is_invisible(g in graph_strategy(12), spec in spec_strategy()) {
        let one = solve_max(&g, &spec).unwrap();
        let four = solve_max_with(&g, &spec, &SolveOptions { threads: Some(4) }).unwrap();
        prop_assert_eq!(one.optimum_size, four.optimum_size);
        prop_assert_eq!(one.best, four.best);
    }
}
