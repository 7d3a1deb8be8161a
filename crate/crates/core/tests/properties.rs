use proptest::prelude::*;

use spectral_clique::bounds::{full_report, BoundId, Status, Thm4Check, EPS_EQ};
use spectral_clique::experiments::{conjecture_search, tightness_regular, SearchMode};
use spectral_clique::generate::{complete_multipartite, enumerate_labeled_graphs, gnp, random_regular};
use spectral_clique::oracle::{greedy_independent_set, max_clique, max_independent_set, motzkin_straus_maximize};
use spectral_clique::spectra::{adjacency_spectrum, laplacian_spectrum, EPS_SPEC};
use spectral_clique::{bounds, Graph};

fn arb_graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n, 0.0..=1.0f64, any::<u64>()).prop_map(|(n, p, seed)| gnp(n, p, seed).unwrap())
}

fn arb_regular() -> impl Strategy<Value = Graph> {
    (4usize..=16, 1usize..=5, any::<u64>())
        .prop_filter("valid degree sequence", |(n, d, _)| d < n && (n * d) % 2 == 0)
        .prop_map(|(n, d, seed)| random_regular(n, d, seed).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn adjacency_is_symmetric_and_loopless(g in arb_graph(70)) {
        for u in 0..g.n() {
            prop_assert!(!g.has_edge(u, u));
            for v in 0..g.n() {
                prop_assert_eq!(g.has_edge(u, v), g.has_edge(v, u));
            }
        }
    }

    #[test]
    fn complement_is_an_involution(g in arb_graph(70)) {
        prop_assert_eq!(g.complement().complement(), g.clone());
        prop_assert_eq!(g.m() + g.complement().m(), g.n() * (g.n() - 1) / 2);
    }

    #[test]
    fn edge_list_round_trip(g in arb_graph(30)) {
        prop_assert_eq!(Graph::parse_edge_list(&g.to_edge_list()).unwrap(), g);
    }

    #[test]
    fn independence_is_clique_of_complement(g in arb_graph(14)) {
        let alpha = max_independent_set(&g);
        prop_assert_eq!(alpha.size, max_clique(&g.complement()).size);
        for (i, &u) in alpha.witness.iter().enumerate() {
            for &v in &alpha.witness[i + 1..] {
                prop_assert!(!g.has_edge(u, v));
            }
        }
        prop_assert!(greedy_independent_set(&g).len() <= alpha.size);
    }

    #[test]
    fn spectral_sanity(g in arb_graph(14)) {
        let a = adjacency_spectrum(&g).unwrap();
        let l = laplacian_spectrum(&g).unwrap();
        prop_assert!(a.satisfies_invariants(g.n(), g.m(), EPS_SPEC));
        prop_assert!(l.satisfies_invariants(g.n(), g.m(), EPS_SPEC));
        prop_assert!(l.largest() + a.smallest() <= g.max_degree() as f64 + EPS_SPEC);
        if g.m() > 0 {
            let d = g.average_degree();
            prop_assert!(a.largest() >= d - EPS_SPEC && d >= a.smallest());
            prop_assert!(a.smallest() <= -1.0 + EPS_SPEC);
        }
    }

    #[test]
    fn replicator_is_monotone_and_optimal(g in arb_graph(10), seed in any::<u64>()) {
        let ms = motzkin_straus_maximize(&g, 2, seed).unwrap();
        let omega = max_clique(&g).size as f64;
        prop_assert!(ms.monotone);
        prop_assert!((ms.value - (1.0 - 1.0 / omega)).abs() <= 1e-9);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(120))]

    #[test]
    fn every_applicable_bound_holds(g in arb_graph(12)) {
        let report = full_report(&g);
        prop_assert_eq!(report.evaluations.len(), BoundId::ALL.len());
        for id in BoundId::ALL {
            prop_assert_eq!(report.evaluations.iter().filter(|e| e.bound == id).count(), 1);
        }
        let violations = report.violations(EPS_EQ);
        prop_assert!(violations.is_empty(), "{:?} on {:?}", violations, g);
    }

    #[test]
    fn spectral_turan_implies_wilf(g in arb_graph(12)) {
        let report = full_report(&g);
        let omega = report.graph.omega as f64;
        let mu = report.graph.mu_1;
        let m = g.m() as f64;
        let n = g.n() as f64;
        let scale = (2.0 * m).max(1.0);
        if mu * mu <= 2.0 * (omega - 1.0) / omega * m + EPS_EQ * scale {
            prop_assert!(mu <= (omega - 1.0) / omega * n + EPS_EQ * n.max(1.0));
        }
    }

    #[test]
    fn regular_graphs_equate_smallest_eigenvalue_and_laplacian_bounds(g in arb_regular()) {
        let report = full_report(&g);
        let a = report.evaluation(BoundId::SmallestEigenvalueClique);
        let b = report.evaluation(BoundId::LaplacianClique);
        prop_assert_eq!(a.status, Status::Applicable);
        prop_assert!((a.value - b.value).abs() <= EPS_EQ * a.value.abs().max(1.0));
    }

    #[test]
    fn regular_witness_identities(g in arb_regular()) {
        let witness = max_independent_set(&g).witness;
        match bounds::thm4_exact_alpha_check(&g, &witness).unwrap() {
            Thm4Check::Checked(r) => {
                prop_assert!(r.passed, "{:?}", r);
                prop_assert!(r.eq2_residual <= 1e-9 && r.scaling_residual <= 1e-9);
            }
            Thm4Check::NotApplicable { reason, .. } => prop_assert!(false, "{}", reason),
        }
        let theta = full_report(&g);
        prop_assert!(theta.evaluation(BoundId::WilfTheta).holds(EPS_EQ));
    }

    #[test]
    fn multipartite_classification_round_trip(parts in prop::collection::vec(1usize..=4, 1..=4)) {
        let g = complete_multipartite(&parts).unwrap();
        let cert = g.classify_complete_multipartite().unwrap();
        let mut got = cert.part_sizes();
        let mut want = parts.clone();
        got.sort_unstable();
        want.sort_unstable();
        prop_assert_eq!(got, want);
    }
}

fn partitions(n: usize, max_part: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for first in (1..=max_part.min(n)).rev() {
        for mut rest in partitions(n - first, first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

#[test]
fn multipartite_certificates_are_consistent_up_to_twelve_vertices() {
    for n in 1..=12 {
        for parts in partitions(n, n) {
            let g = complete_multipartite(&parts).unwrap();
            let report = full_report(&g);
            for c in &report.certificates {
                assert!(c.consistent, "{parts:?}: {c:?}");
            }
            assert!(report.violations(EPS_EQ).is_empty(), "{parts:?}");
        }
    }
}

/// Triangles through each vertex versus a scan of every vertex triple.
#[test]
fn triangle_counts_match_triple_scan() {
    for n in 1..=7 {
        for g in enumerate_labeled_graphs(n).unwrap() {
            let mut scan = 0;
            for a in 0..n {
                for b in a + 1..n {
                    for c in b + 1..n {
                        scan += (g.has_edge(a, b) && g.has_edge(b, c) && g.has_edge(a, c)) as usize;
                    }
                }
            }
            assert_eq!(g.triangles_per_vertex().iter().sum::<usize>(), 3 * scan);
            assert_eq!(g.triangle_count(), scan);
        }
    }
}

#[test]
fn trace_identities_hold_for_all_graphs_up_to_seven_vertices() {
    for n in 1..=7 {
        for g in enumerate_labeled_graphs(n).unwrap() {
            let a = adjacency_spectrum(&g).unwrap();
            let l = laplacian_spectrum(&g).unwrap();
            assert!(a.satisfies_invariants(n, g.m(), EPS_SPEC), "{g:?}");
            assert!(l.satisfies_invariants(n, g.m(), EPS_SPEC), "{g:?}");
            assert!(l.largest() + a.smallest() <= g.max_degree() as f64 + EPS_SPEC, "{g:?}");
            if g.m() > 0 {
                assert!(a.smallest() <= -1.0 + EPS_SPEC, "{g:?}");
                let d = g.average_degree();
                assert!(a.largest() >= d - EPS_SPEC && d >= a.smallest(), "{g:?}");
            }
        }
    }
}

#[test]
fn experiment_outputs_are_deterministic() {
    for seed in [0, 1, 99] {
        let a = tightness_regular(24, 3, 5, seed).unwrap();
        let b = tightness_regular(24, 3, 5, seed).unwrap();
        assert_eq!(a.to_json(), b.to_json());
        assert_eq!(a.to_csv(), b.to_csv());
        assert!(a.pass);
    }
    let mode = SearchMode::Sample { count: 300, seed: 5 };
    assert_eq!(
        conjecture_search(3, 8, mode).unwrap().to_json(),
        conjecture_search(3, 8, mode).unwrap().to_json()
    );
}

#[test]
fn bipartite_spectral_turan_holds_exhaustively() {
    for n in 3..=7 {
        let r = conjecture_search(2, n, SearchMode::Exhaustive).unwrap();
        assert!(r.pass && r.violations.is_empty(), "n = {n}");
    }
}
