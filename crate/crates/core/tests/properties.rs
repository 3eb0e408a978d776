use num_bigint::BigUint;
use parityhom::construct::{build_g01, build_gu, build_star_simplified, build_tilde_gu};
use parityhom::cycles::{has_cycle_structure, CycleStructureSpec};
use parityhom::families::{hd_closure_probe, indistinguishable_up_to, union_lemma_check, FamilyPredicate, Verdict};
use parityhom::graph::*;
use parityhom::homcount::{fibered_system_any, hom_count};
use parityhom::oddo::{
    certificate_for_map, find_weak_oddism, find_weak_oddo, odd_cover, odd_subdivision, oddism_to_oddomorphism,
    random_voltages, CertificateKind,
};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn connected(max_n: usize) -> impl Strategy<Value = Graph> {
    (2..=max_n, any::<u64>()).prop_map(|(n, seed)| random_connected(n, 0.5, &mut ChaCha8Rng::seed_from_u64(seed)))
}

fn any_graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n, any::<u64>()).prop_map(|(n, seed)| random_gnp(n, 0.5, &mut ChaCha8Rng::seed_from_u64(seed)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn lift_class_depends_on_parity(g in connected(5), mask in any::<u32>()) {
        let u: Vec<usize> = (0..g.n()).filter(|&v| mask >> v & 1 == 1).collect();
        let (g0, g1) = build_g01(&g).unwrap();
        let lift = build_gu(&g, &u).unwrap().graph;
        let same = if u.len() % 2 == 0 { &g0.graph } else { &g1.graph };
        prop_assert!(is_isomorphic(&lift, same).is_some());
    }

    #[test]
    fn even_lift_dominates(f in any_graph(5), g in connected(4), mask in any::<u32>()) {
        let u: Vec<usize> = (0..g.n()).filter(|&v| mask >> v & 1 == 1).collect();
        let (g0, _) = build_g01(&g).unwrap();
        let lift = build_gu(&g, &u).unwrap().graph;
        prop_assert!(hom_count(&f, &lift).unwrap() <= hom_count(&f, &g0.graph).unwrap());
    }

    /// A chordless cycle in the target reappears, at least as long and of
    /// the same parity, in any odd subdivision or odd cover.
    #[test]
    fn cycles_transport_to_sources(g in connected(5), seed in any::<u64>(), cover in any::<bool>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (f, _) = if cover && g.n() <= 4 {
            odd_cover(&g, 3, &random_voltages(&g, 3, &mut rng)).unwrap()
        } else {
            let mut spare = 16 - g.n();
            let lengths: Vec<usize> = (0..g.m())
                .map(|e| {
                    if (seed >> e) & 1 == 1 && spare >= 2 {
                        spare -= 2;
                        3
                    } else {
                        1
                    }
                })
                .collect();
            odd_subdivision(&g, &lengths).unwrap()
        };
        for c in all_cycles(&g, 1000).unwrap() {
            if !is_chordless_cycle(&g, &c) {
                continue;
            }
            let spec = CycleStructureSpec { pattern: Graph::empty(1), chordless: vec![true], min_len: vec![c.len()] };
            prop_assert!(has_cycle_structure(&f, &spec).unwrap().is_some(), "cycle {:?}", c);
        }
    }
}

#[test]
fn two_triangles_transport_to_subdivisions() {
    let g = complete(3).disjoint_union(&complete(3));
    let spec = CycleStructureSpec {
        pattern: complete(2),
        chordless: vec![true, true],
        min_len: vec![3, 3],
    };
    assert!(has_cycle_structure(&g, &spec).unwrap().is_some());
    let (f, _) = odd_subdivision(&g, &[3, 1, 1, 1, 1, 3]).unwrap();
    assert!(has_cycle_structure(&f, &spec).unwrap().is_some());
    assert!(has_cycle_structure(&complete(3), &spec).unwrap().is_none());
}

/// Each component of the target receives a weak oddomorphism from some
/// component of the source.
#[test]
fn components_transport() {
    let all: Vec<Graph> = enumerate_graphs(5, false).unwrap().collect();
    for g in all.iter().filter(|g| !is_connected(g)) {
        for f in &all {
            if find_weak_oddo(f, g).unwrap().is_none() {
                continue;
            }
            for gc in components(g) {
                let gc = g.induced_subgraph(&gc);
                let hit = components(f)
                    .iter()
                    .any(|fc| find_weak_oddo(&f.induced_subgraph(fc), &gc).unwrap().is_some());
                assert!(hit, "F={:?} G={:?}", f.to_data(), g.to_data());
            }
        }
    }
}

/// Counting looped lifts one map at a time, over all maps.
#[test]
fn looped_lift_counts_split_over_maps() {
    let g = star(2);
    for f in enumerate_graphs_with_loops(3, false).unwrap() {
        for u in [vec![], vec![0]] {
            let lift = build_tilde_gu(&g, &u).unwrap().graph;
            let mut total = BigUint::default();
            for code in 0..3usize.pow(f.n() as u32) {
                let psi = VertexMap((0..f.n()).map(|a| code / 3usize.pow(a as u32) % 3).collect());
                let sys = fibered_system_any(&f, &g, &u, &psi).unwrap();
                if let Some(l) = sys.system.solution_count_log2() {
                    total += BigUint::from(1u8) << l;
                }
            }
            assert_eq!(total, hom_count(&f, &lift).unwrap(), "F={:?} U={u:?}", f.to_data());
        }
    }
}

#[test]
fn oddisms_leave_an_oddomorphic_subgraph() {
    for f in enumerate_graphs_with_loops(4, false).unwrap() {
        for g in [star(2), complete(3)] {
            let Some(c) = find_weak_oddism(&f, &g).unwrap() else {
                continue;
            };
            let trimmed = oddism_to_oddomorphism(&f, &c.psi, &g);
            assert!(!trimmed.has_loops());
            let w = certificate_for_map(&trimmed, &g, &c.psi, CertificateKind::WeakOddomorphism).unwrap();
            assert!(w.is_some(), "F={:?}", f.to_data());
        }
    }
}

#[test]
fn disjoint_unions_preserve_indistinguishability() {
    let (h, _) = build_star_simplified(3, 0).unwrap();
    let (h2, _) = build_star_simplified(3, 1).unwrap();
    let low = FamilyPredicate::max_degree_below(3);
    assert!(union_lemma_check((&h, &h2), (&h, &h2), &low, 5).unwrap());
    assert!(union_lemma_check((&h, &h2), (&cycle(6).unwrap(), &cycle(6).unwrap()), &low, 5).unwrap());
    // Refused when an input pair is already told apart.
    let two_triangles = complete(3).disjoint_union(&complete(3));
    assert!(union_lemma_check((&h, &h2), (&cycle(6).unwrap(), &two_triangles), &low, 5).is_err());
}

/// A distinguishing graph for the padded lifts has a component with a weak
/// oddomorphism onto the base.
#[test]
fn probe_counterexamples_certify() {
    for g in [complete(3), cycle(5).unwrap(), star(3)] {
        let (g0, g1) = build_g01(&g).unwrap();
        let r = indistinguishable_up_to(&g0.graph, &g1.graph, &FamilyPredicate::all_graphs(), 5, true).unwrap();
        assert_eq!(r.verdict, Verdict::Distinguished);
        let f = parse_graph6(&r.counterexample.unwrap().graph6).unwrap();
        assert!(find_weak_oddo(&f, &g).unwrap().is_some());
    }
}

#[test]
fn probes_against_closed_families() {
    let cases = [
        (cycle(5).unwrap(), FamilyPredicate::forests()),
        (complete(4), FamilyPredicate::treewidth_at_most_2()),
        (star(3), FamilyPredicate::max_degree_below(3)),
        (complete(3), FamilyPredicate::circumference_at_most(2)),
    ];
    for (g, pred) in cases {
        let r = hd_closure_probe(&g, &pred, 5, None).unwrap();
        assert!(r.passed, "{}: {:?}", pred.name, r.family.counterexample);
    }
}

/// Declared closure flags against every graph up to five vertices.
#[test]
fn closure_flags_hold_on_small_graphs() {
    let preds = [
        FamilyPredicate::max_degree_below(3),
        FamilyPredicate::forests(),
        FamilyPredicate::treewidth_at_most_2(),
        FamilyPredicate::circumference_at_most(4),
        FamilyPredicate::no_odd_holes(),
        FamilyPredicate::no_induced_star(3),
        FamilyPredicate::planar(),
        FamilyPredicate::clique_unions(vec![1, 3], None),
        FamilyPredicate::minor_free(complete(4)),
        FamilyPredicate::minors_of(cycle(4).unwrap()),
    ];
    let all: Vec<Graph> = enumerate_graphs(5, false).unwrap().collect();
    let small: Vec<&Graph> = all.iter().filter(|g| g.n() <= 3).collect();
    for p in &preds {
        let members: Vec<&Graph> = all.iter().filter(|g| p.contains(g).unwrap()).collect();
        for g in &members {
            if p.closure.component_closed {
                for c in components(g) {
                    assert!(p.contains(&g.induced_subgraph(&c)).unwrap(), "{} component", p.name);
                }
            }
            if p.closure.minor_closed {
                for (e, &(u, v)) in g.edges().iter().enumerate() {
                    assert!(
                        p.contains(&g.contract_edge(u, v).unwrap().0).unwrap(),
                        "{} contraction",
                        p.name
                    );
                    assert!(p.contains(&g.remove_edges(&[e])).unwrap(), "{} deletion", p.name);
                }
            }
            if p.closure.union_closed && g.n() <= 3 {
                for h in small.iter().filter(|h| p.contains(h).unwrap()) {
                    assert!(p.contains(&g.disjoint_union(h)).unwrap(), "{} union", p.name);
                }
            }
        }
    }
}
