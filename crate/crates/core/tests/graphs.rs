use std::collections::BTreeSet;

use ocformal::exec::Exec;
use ocformal::graphs::*;
use proptest::prelude::*;

/// Independent count of marked-isomorphism classes: enumerate labeled
/// matchings and dedupe by brute-force isomorphism testing, i.e. search for
/// a vertex-preserving bijection of half-edges carrying edges onto edges.
fn isomorphic_brute(a: &MarkedGraph, b: &MarkedGraph) -> bool {
    if a.vertex_count() != b.vertex_count() {
        return false;
    }
    for v in 0..a.vertex_count() {
        if a.valency(v) != b.valency(v) || a.defect(v) != b.defect(v) {
            return false;
        }
    }
    // try every product of per-vertex bijections h_v(a) → h_v(b)
    let perms: Vec<Vec<Vec<usize>>> = (0..a.vertex_count())
        .map(|v| ocformal::graded::permutations(a.valency(v)))
        .collect();
    let target: BTreeSet<(u32, u32)> = b
        .edges()
        .iter()
        .map(|&(x, y)| (x.min(y), x.max(y)))
        .collect();
    let mut choice = vec![0usize; perms.len()];
    loop {
        let mut map = std::collections::BTreeMap::new();
        for v in 0..a.vertex_count() {
            let p = &perms[v][choice[v]];
            for (k, &h) in a.vertices()[v].half_edges.iter().enumerate() {
                map.insert(h, b.vertices()[v].half_edges[p[k]]);
            }
        }
        let ok = a.edges().len() == b.edges().len()
            && a.edges().iter().all(|&(x, y)| {
                let (u, w) = (map[&x], map[&y]);
                target.contains(&(u.min(w), u.max(w)))
            });
        if ok {
            return true;
        }
        let mut k = 0;
        loop {
            if k == choice.len() {
                return false;
            }
            choice[k] += 1;
            if choice[k] < perms[k].len() {
                break;
            }
            choice[k] = 0;
            k += 1;
        }
    }
}

fn brute_classes(valencies: &[usize], defects: &[u32]) -> Vec<MarkedGraph> {
    let mut reps: Vec<MarkedGraph> = Vec::new();
    for g in enumerate_labeled(valencies, defects) {
        if !reps.iter().any(|r| isomorphic_brute(r, &g)) {
            reps.push(g);
        }
    }
    reps
}

#[test]
fn profile_enumeration_matches_brute_force_classes() {
    let profiles: &[&[usize]] = &[
        &[2],
        &[3],
        &[4],
        &[1, 1],
        &[2, 1],
        &[2, 2],
        &[3, 1],
        &[1, 2, 1],
        &[2, 2, 2],
    ];
    for vals in profiles {
        let defs = vec![0; vals.len()];
        let fast = enumerate_profile(vals, &defs, false);
        let slow = brute_classes(vals, &defs);
        assert_eq!(fast.len(), slow.len(), "profile {vals:?}");
        let fast_keys: BTreeSet<_> = fast.iter().map(|c| c.canonical.clone()).collect();
        let slow_keys: BTreeSet<_> = slow.iter().map(canonical_form).collect();
        assert_eq!(fast_keys, slow_keys, "profile {vals:?}");
    }
}

#[test]
fn enumerated_classes_have_requested_parameters() {
    for g in 0..=2 {
        for n in 0..=3 {
            for m in 1..=3 {
                let classes = enumerate_graphs(g, n, m, None, false).unwrap();
                let keys: BTreeSet<_> = classes.iter().map(|c| c.canonical.clone()).collect();
                assert_eq!(keys.len(), classes.len());
                for c in &classes {
                    assert_eq!(c.graph.betti().unwrap(), g);
                    assert_eq!(c.graph.leaf_count(), n as usize);
                    assert_eq!(c.graph.vertex_count(), m);
                }
                assert_eq!(classes, enumerate_graphs(g, n, m, None, false).unwrap());
            }
        }
    }
}

#[test]
fn aut_order_matches_brute_force_up_to_eight_half_edges() {
    let mut checked = 0;
    for g in 0..=3 {
        for n in 0..=4 {
            for m in 1..=3 {
                for c in enumerate_graphs(g, n, m, None, false).unwrap() {
                    if c.graph.half_edge_count() <= 8 {
                        assert_eq!(c.aut, aut_order_brute(&c.graph), "{:?}", c.graph);
                        checked += 1;
                    }
                }
            }
        }
    }
    assert!(checked > 100);
}

#[test]
fn aut_order_spec_examples() {
    for n in 0..6u32 {
        let g = MarkedGraph::new(
            vec![Vertex {
                defect: 0,
                half_edges: (0..n).collect(),
            }],
            vec![],
        )
        .unwrap();
        assert_eq!(aut_order_brute(&g), (1..=n as u64).product::<u64>());
    }
    for k in 1..4u32 {
        let g = MarkedGraph::new(
            vec![
                Vertex {
                    defect: 0,
                    half_edges: (0..k).collect(),
                },
                Vertex {
                    defect: 0,
                    half_edges: (k..2 * k).collect(),
                },
            ],
            (0..k).map(|i| (i, k + i)).collect(),
        )
        .unwrap();
        assert_eq!(aut_order(&g), aut_order_brute(&g));
        assert_eq!(aut_order(&g), (1..=k as u64).product::<u64>());
    }
}

fn every_partition(g: &MarkedGraph, k1: usize) -> Vec<(Vec<u32>, Vec<u32>)> {
    let h = &g.vertices()[0].half_edges;
    let mut out = Vec::new();
    for mask in 0u32..(1 << h.len()) {
        if mask.count_ones() as usize == k1 {
            let i = (0..h.len())
                .filter(|b| mask >> b & 1 == 1)
                .map(|b| h[b])
                .collect();
            let j = (0..h.len())
                .filter(|b| mask >> b & 1 == 0)
                .map(|b| h[b])
                .collect();
            out.push((i, j));
        }
    }
    out
}

#[test]
fn split_conserves_structure() {
    for g in 0..=2 {
        for n in 0..=3 {
            for m in 1..=2 {
                for c in enumerate_graphs(g, n, m, None, false).unwrap() {
                    let v = c.graph.valency(0);
                    for k1 in 1..v {
                        for (i, j) in every_partition(&c.graph, k1) {
                            let split = split_vertex(&c.graph, &i, &j).unwrap();
                            match split {
                                SplitResult::Connected(h) => {
                                    assert_eq!(h.edge_count(), c.graph.edge_count());
                                    assert_eq!(h.leaf_count(), c.graph.leaf_count());
                                    assert_eq!(h.betti().unwrap() + 1, g);
                                }
                                SplitResult::Disconnected(p) => {
                                    assert_eq!(
                                        p.first.edge_count() + p.second.edge_count(),
                                        c.graph.edge_count()
                                    );
                                    assert_eq!(
                                        p.first.leaf_count() + p.second.leaf_count(),
                                        c.graph.leaf_count()
                                    );
                                    let defects: u32 = p
                                        .first
                                        .vertices()
                                        .iter()
                                        .chain(p.second.vertices())
                                        .map(|v| v.defect)
                                        .sum();
                                    let original: u32 =
                                        c.graph.vertices().iter().map(|v| v.defect).sum();
                                    assert_eq!(defects, original);
                                    assert_eq!(
                                        p.first.betti().unwrap() + p.second.betti().unwrap(),
                                        g
                                    );
                                }
                            }
                        }
                    }
                }
            }
        }
    }
}

#[test]
fn gt_bijection_spec_cell() {
    let r = verify_gt_bijection(0, 2, 1, 1, 2, DefectMode::KeepOnFirst).unwrap();
    assert_eq!((r.a, r.b, r.c), (1, 0, 1));
}

#[test]
fn gt_bijection_sweep_both_modes() {
    let limits = GtLimits {
        g_max: 2,
        n_max: 4,
        m_max: 3,
        k_max: 3,
        half_edge_max: 10,
    };
    for mode in [DefectMode::Redistribute, DefectMode::KeepOnFirst] {
        let reports = sweep_gt(limits, mode, Exec::Parallel).unwrap();
        assert!(!reports.is_empty());
        for r in &reports {
            assert!(r.holds(), "{r:?}");
        }
        // some cells must be nontrivial on both sides
        assert!(reports.iter().any(|r| r.b > 0));
        assert!(reports.iter().any(|r| r.c > 0));
    }
}

#[test]
fn swapped_markers_preserve_b_counts() {
    // B̃ with markers (i, j) = (2, 1): classes with |h_2| = k1, |h_1| = k2
    for g in 1..=2 {
        for n in 0..=3 {
            for (k1, k2) in [(1, 1), (1, 2), (2, 1), (2, 2)] {
                let classes = enumerate_graphs(g - 1, n, 3, None, false).unwrap();
                let b = classes
                    .iter()
                    .filter(|c| c.graph.valency(0) == k1 && c.graph.valency(2) == k2)
                    .count();
                let b_tilde = classes
                    .iter()
                    .filter(|c| c.graph.valency(1) == k1 && c.graph.valency(0) == k2)
                    .count();
                let swapped: BTreeSet<_> = classes
                    .iter()
                    .filter(|c| c.graph.valency(1) == k1 && c.graph.valency(0) == k2)
                    .map(|c| {
                        let s = c
                            .graph
                            .relabel_swap(0, 1)
                            .unwrap()
                            .relabel_swap(1, 2)
                            .unwrap();
                        canonical_form(&s)
                    })
                    .collect();
                assert_eq!(b, b_tilde);
                assert_eq!(swapped.len(), b_tilde);
            }
        }
    }
}

#[test]
fn psi_examples() {
    let lp = MarkedGraph::new(
        vec![Vertex {
            defect: 0,
            half_edges: vec![0, 1],
        }],
        vec![(0, 1)],
    )
    .unwrap();
    let parts = partitions_mod_equiv(&lp, 1, 1, DefectMode::KeepOnFirst).unwrap();
    assert_eq!(parts.len(), 1);
    match psi(&lp, &parts[0]).unwrap() {
        SplitResult::Connected(h) => {
            assert_eq!(h.vertex_count(), 2);
            assert_eq!(h.edge_count(), 1);
        }
        other => panic!("{other:?}"),
    }
}

#[test]
fn graph_json_round_trip() {
    let c = &enumerate_graphs(1, 2, 2, None, false).unwrap()[0];
    let text = serde_json::to_string(c).unwrap();
    let back: GraphClass = serde_json::from_str(&text).unwrap();
    assert_eq!(&back, c);
}

proptest! {
    #[test]
    fn canonical_form_ignores_half_edge_names(g in 0u32..=2, n in 0u32..=3, m in 1usize..=3, seed in any::<u64>()) {
        use rand::{seq::SliceRandom, SeedableRng};
        let classes = enumerate_graphs(g, n, m, None, false).unwrap();
        prop_assume!(!classes.is_empty());
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let c = &classes[(seed as usize) % classes.len()];
        let total = c.graph.half_edge_count() as u32;
        let mut names: Vec<u32> = (100..100 + total).collect();
        names.shuffle(&mut rng);
        let rename = |h: u32| names[h as usize];
        let mut vertices: Vec<Vertex> = c.graph.vertices().to_vec();
        for v in &mut vertices {
            v.half_edges = v.half_edges.iter().map(|&h| rename(h)).collect();
            v.half_edges.shuffle(&mut rng);
        }
        let mut edges: Vec<(u32, u32)> = c.graph.edges().iter().map(|&(a, b)| {
            if rand::Rng::gen_bool(&mut rng, 0.5) { (rename(a), rename(b)) } else { (rename(b), rename(a)) }
        }).collect();
        edges.shuffle(&mut rng);
        let h = MarkedGraph::new(vertices, edges).unwrap();
        prop_assert_eq!(canonical_form(&h), c.canonical.clone());
        prop_assert_eq!(aut_order(&h), c.aut);
    }

    #[test]
    fn relabel_swap_is_involution(g in 0u32..=2, n in 0u32..=3, a in 0usize..3, b in 0usize..3) {
        for c in enumerate_graphs(g, n, 3, None, false).unwrap() {
            let twice = c.graph.relabel_swap(a, b).unwrap().relabel_swap(a, b).unwrap();
            prop_assert_eq!(twice, c.graph.clone());
        }
    }
}
