//! Structural invariants checked over exhaustive sweeps and search output.

mod common;

use std::collections::BTreeSet;
use std::io::Cursor;

use common::sweeps::sweep;
use csat_core::search::InputOutcome;
use csat_core::*;

/// Nontrivial certified graphs from small pruned searches, with their `t`.
fn certified_graphs() -> Vec<(usize, Graph)> {
    let mut out: Vec<(usize, Graph)> = Vec::new();
    for (t, n_max) in [(3, 8), (4, 9), (5, 9)] {
        let found = enumerate(&SearchConfig::new(t, t, n_max)).unwrap();
        out.extend(found.certified.into_iter().map(|c| (t, c.graph)));
    }
    out.push((3, families::petersen()));
    out
}

#[test]
fn saturated_graphs_have_small_diameter() {
    for g in sweep(7) {
        for t in 3..=7 {
            if certify(&g, t).unwrap().verdict != Verdict::NotSaturated {
                let d = g.diameter().expect("a saturated graph with a non-edge is connected");
                assert!(d < t, "{g:?} t={t} diameter {d}");
            }
        }
    }
    for (t, g) in certified_graphs() {
        assert!(g.diameter().unwrap() < t);
    }
}

#[test]
fn uniquely_saturated_path_counts_follow_adjacency() {
    for g in sweep(7) {
        for t in 3..=g.n().min(7) {
            if !is_uniquely_saturated(&g, t).unwrap() {
                continue;
            }
            if !g.complement_non_edges().is_empty() {
                assert!(g.is_connected(), "{g:?} t={t}");
            }
            for u in 0..g.n() {
                for v in u + 1..g.n() {
                    let want = if g.has_edge(u, v) { 0 } else { 1 };
                    assert_eq!(count_paths_between(&g, u, v, t).unwrap(), want, "{g:?} t={t} {u}-{v}");
                }
            }
        }
    }
}

#[test]
fn certificate_verdicts_match_their_definitions() {
    for g in sweep(6) {
        for t in 3..=8 {
            let cert = certify(&g, t).unwrap();
            assert_eq!(cert.non_edge_counts.iter().map(|e| (e.u, e.v)).collect::<Vec<_>>(), g.complement_non_edges());
            let all = |p: fn(u64) -> bool| cert.non_edge_counts.iter().all(|e| p(e.count));
            let clean = !cert.contains_target();
            assert_eq!(cert.verdict == Verdict::UniquelySaturated, clean && all(|c| c == 1));
            assert_eq!(cert.verdict != Verdict::NotSaturated, clean && all(|c| c >= 1));
            assert_eq!(cert.nontrivial(), g.n() >= t);
            assert_eq!(is_nontrivial(&g, t).unwrap(), g.n() >= t);
            if cert.trivial {
                assert!(g.is_complete() && g.n() < t);
            }
            if g.is_complete() && g.n() >= t {
                assert_eq!(cert.verdict, Verdict::NotSaturated);
            }
        }
    }
}

#[test]
fn blocks_partition_the_edges() {
    for_each_connected(7, |g| {
        let d = block_decomposition(g).unwrap();
        for (u, v) in g.edges() {
            let holders = d.blocks.iter().filter(|b| b.vertices.contains(&u) && b.vertices.contains(&v)).count();
            assert_eq!(holders, 1, "{g:?} edge {u}-{v}");
        }
        let cuts: BTreeSet<usize> = d.cut_vertices.iter().copied().collect();
        assert_eq!(cuts, graph::Bits(g.cut_vertex_mask()).collect());
        for (i, a) in d.blocks.iter().enumerate() {
            for b in &d.blocks[i + 1..] {
                let shared: Vec<_> = a.vertices.iter().filter(|v| b.vertices.contains(v)).collect();
                assert!(shared.len() <= 1, "{g:?}");
                assert!(shared.iter().all(|v| cuts.contains(v)), "{g:?}");
            }
        }
        for b in &d.blocks {
            assert_eq!(b.complete, g.induced(&b.vertices).unwrap().is_complete());
        }
    });
}

#[test]
fn blocks_of_certified_graphs_recertify() {
    for (t, g) in certified_graphs() {
        for b in block_decomposition(&g).unwrap().blocks {
            let h = g.induced(&b.vertices).unwrap();
            let small_complete = h.is_complete() && h.n() < t;
            assert!(small_complete || is_uniquely_saturated(&h, t).unwrap(), "{g:?} t={t} block {:?}", b.vertices);
        }
    }
}

#[test]
fn certified_graphs_pass_the_audit() {
    for (t, g) in certified_graphs() {
        let report = lemma_audit(&g, t).unwrap();
        assert!(report.all_passed(), "{g:?} t={t}: {:?}", report.failures().map(|e| e.name).collect::<Vec<_>>());
    }
}

#[test]
fn failed_audit_entries_carry_witnesses() {
    for_each_connected(7, |g| {
        for t in 3..=8 {
            for e in lemma_audit(g, t).unwrap().failures() {
                assert!(e.applicable);
                assert!(e.witness.as_ref().is_some_and(|w| !w.is_empty()), "{g:?} t={t} {}", e.name);
            }
        }
    });
}

#[test]
fn friendship_graphs_are_exactly_the_uniquely_c5_saturated_ones() {
    let mut found = 0;
    for_each_connected(9, |g| {
        if g.n() >= 5 {
            let unique = is_uniquely_saturated(g, 5).unwrap();
            assert_eq!(is_friendship(g), unique, "{g:?}");
            found += unique as usize;
        }
    });
    assert_eq!(found, 3);
}

#[test]
fn friendship_generator_shape() {
    for k in 1..=10 {
        let g = families::friendship(k).unwrap();
        assert_eq!((g.n(), g.edge_count()), (2 * k + 1, 3 * k));
        let mut degrees: Vec<usize> = (0..g.n()).map(|v| g.degree(v).unwrap()).collect();
        degrees.sort();
        assert_eq!(degrees.pop(), Some(2 * k));
        if k > 1 {
            assert!(degrees.iter().all(|&d| d == 2));
        }
        for u in 0..g.n() {
            for v in u + 1..g.n() {
                assert_eq!((g.neighbors(u) & g.neighbors(v)).count_ones(), 1);
            }
        }
        assert!(is_friendship(&g));
    }
}

#[test]
fn filter_of_all_six_vertex_graphs_at_t6_is_empty() {
    let mut text = String::new();
    for_each_connected(6, |g| {
        if g.n() == 6 {
            text.push_str(graph6::encode(g).unwrap().as_str());
            text.push('\n');
        }
    });
    let out = filter_stream(&SearchConfig::new(6, 1, 64), Cursor::new(text)).unwrap();
    assert_eq!(out.input_log.len(), 112);
    assert!(out.certified.is_empty() && out.trivial.is_empty());
    assert!(out.input_log.iter().all(|e| e.outcome == InputOutcome::Rejected));
}

#[test]
fn filter_reports_small_complete_graphs_as_trivial() {
    let out = filter_stream(&SearchConfig::new(6, 1, 64), Cursor::new("C~\nD~{\n")).unwrap();
    assert!(out.certified.is_empty());
    assert_eq!(out.trivial.iter().map(|c| c.n()).collect::<Vec<_>>(), [4, 5]);
    assert!(out.input_log.iter().all(|e| e.outcome == InputOutcome::Trivial));
}

#[test]
fn filter_of_empty_stream_succeeds() {
    let out = filter_stream(&SearchConfig::new(6, 1, 64), Cursor::new("")).unwrap();
    assert!(out.certified.is_empty() && out.trivial.is_empty() && out.input_log.is_empty());
}

#[test]
fn biconnected_mode_examines_fewer_graphs_and_agrees() {
    for t in [6, 7] {
        let all = enumerate(&SearchConfig::new(t, t, 9)).unwrap();
        let bi = enumerate(&SearchConfig::new(t, t, 9).biconnected()).unwrap();
        assert!(all.certified.is_empty() && bi.certified.is_empty());
        assert_eq!(all.stats.visited(), bi.stats.visited());
        assert!(bi.stats.examined < all.stats.examined);
    }
}

#[test]
fn search_is_deterministic_across_worker_counts() {
    let forms = |workers| {
        let mut cfg = SearchConfig::new(3, 3, 8);
        cfg.workers = workers;
        enumerate(&cfg).unwrap().forms().into_iter().map(String::from).collect::<Vec<_>>()
    };
    let one = forms(1);
    assert_eq!(one.len(), 7);
    assert_eq!(one, forms(3));
    assert_eq!(one, forms(0));
}

#[test]
fn generator_matches_naive_class_counts() {
    let mut visited = [0usize; 8];
    for_each_connected(7, |g| visited[g.n()] += 1);
    for (n, &count) in visited.iter().enumerate().take(7).skip(1) {
        let perms = common::permutations(n);
        let classes: BTreeSet<u64> = common::all_labeled_graphs(n)
            .filter(|g| g.is_connected())
            .map(|g| common::brute_canonical(&g, &perms))
            .collect();
        assert_eq!(count, classes.len(), "n={n}");
    }
    assert_eq!(visited[7], 853);
}
