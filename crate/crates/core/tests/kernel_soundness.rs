use proptest::prelude::*;
use sclub::generators::gen_random_gnp;
use sclub::kernel::{et_shortcut, reduce, seeded_shortcut, turing_subinstances, vt_shortcut, TuringOutcome};
use sclub::properties::verify;
use sclub::solve::brute_force_max;
use sclub::{Graph, ProblemSpec, VertexSet};

fn random_graph() -> impl Strategy<Value = Graph> {
    (3..=10usize, any::<u64>(), prop_oneof![Just(0.2), Just(0.4), Just(0.6)])
        .prop_map(|(n, seed, p)| gen_random_gnp(n, p, seed).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(150))]

    #[test]
    fn reduction_preserves_the_optimum(g in random_graph(), s in 2..=4usize, ell in 1..=2usize) {
        for spec in [ProblemSpec::vertex_triangle(s, ell, 1), ProblemSpec::edge_triangle(s, ell, 1)] {
            let (reduced, _) = reduce(&g, &spec).unwrap();
            prop_assert_eq!(brute_force_max(&g, &spec).unwrap().0, brute_force_max(&reduced, &spec).unwrap().0);
        }
    }

    #[test]
    fn seed_pruning_preserves_the_answer(g in random_graph(), s in 1..=4usize, w in 0usize..10, w2 in 0usize..10) {
        let spec = ProblemSpec::seeded(s, 1, [w % g.n(), w2 % g.n()]);
        let (reduced, trace) = reduce(&g, &spec).unwrap();
        let before = brute_force_max(&g, &spec).unwrap().0;
        if trace.infeasible {
            prop_assert_eq!(before, 0);
        } else {
            prop_assert_eq!(before, brute_force_max(&reduced, &spec).unwrap().0);
        }
    }

    #[test]
    fn universes_contain_some_optimum(g in random_graph(), s in 4..=5usize) {
        let spec = ProblemSpec::vertex_triangle(s, 1, 1);
        let (reduced, _) = reduce(&g, &spec).unwrap();
        let (best, cert) = brute_force_max(&reduced, &spec).unwrap();
        let spec = ProblemSpec { k: best.max(1) + 1, ..spec };
        if let (TuringOutcome::Subinstances(subs), Some(cert)) = (turing_subinstances(&reduced, &spec).unwrap(), cert) {
            let first = cert.vertices.first().unwrap();
            prop_assert!(subs.iter().any(|u| cert.vertices.is_subset(&u.vertex_universe) && u.vertex_universe.contains(first)));
        }
    }

    #[test]
    fn shortcut_witnesses_verify(g in (8..=14usize, any::<u64>()).prop_map(|(n, seed)| gen_random_gnp(n, 0.7, seed).unwrap()), k in 2..=6usize, s in 2..=5usize) {
        // each lemma is stated for the graph reduced by its own rule
        let vt_spec = ProblemSpec::vertex_triangle(s, 1, k);
        let et_spec = ProblemSpec::edge_triangle(s, 1, k);
        if s >= 4 {
            let (h, _) = reduce(&g, &vt_spec).unwrap();
            if let Some(c) = vt_shortcut(&h, k, s).unwrap() {
                prop_assert!(c.len() >= k && verify(&g, &vt_spec, &c).unwrap());
            }
        }
        let (h, _) = reduce(&g, &et_spec).unwrap();
        if let Some(c) = et_shortcut(&h, k, s).unwrap() {
            prop_assert!(c.len() >= k && verify(&g, &et_spec, &c).unwrap());
        }
        let seeds: Vec<_> = g.neighbors(0).iter().copied().take(1).chain([0]).collect();
        let w = VertexSet::from_members(g.n(), seeds.iter().copied()).unwrap();
        let seeded_spec = ProblemSpec::seeded(s, k, seeds);
        let (h, trace) = reduce(&g, &seeded_spec).unwrap();
        if !trace.infeasible {
            if let Some((c, _)) = seeded_shortcut(&h, &w, k, s).unwrap() {
                prop_assert!(c.len() >= k && verify(&g, &seeded_spec, &c).unwrap());
            }
        }
    }
}
