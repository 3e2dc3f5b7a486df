use proptest::prelude::*;

use stabloc::check::{pure_case, PureReport};
use stabloc::oracle::{self, dense_tagged_state, hadamard, pauli, phase_r};
use stabloc::reduction::{classify_outcomes, measure_graph, reduce, z_measure, OutcomeKind};
use stabloc::tags::{AttributeOp, Gate};
use stabloc::{AttributedGraph, Axis, CliffordTag, Graph, PauliSetup};

/// Kite graph: a = 0 and b = 1 are kept, the two measured qubits touch both.
fn kite() -> Graph {
    Graph::from_edges(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3)]).unwrap()
}

#[test]
fn tag_tables() {
    assert_eq!(CliffordTag::I.apply(AttributeOp::FlipFill), CliffordTag::H);
    assert_eq!(CliffordTag::I.apply(AttributeOp::Reshape), CliffordTag::R);
    assert_eq!(CliffordTag::R.apply(AttributeOp::Reshape), CliffordTag::Z);
    assert_eq!(CliffordTag::HRZ.apply(AttributeOp::Reshape), CliffordTag::H);
    assert_eq!(CliffordTag::HZ.apply(AttributeOp::FlipSign), CliffordTag::H);
    assert_eq!(CliffordTag::HR.apply(AttributeOp::FlipShape), CliffordTag::H);
    for t in CliffordTag::ALL {
        assert_eq!(CliffordTag::parse(t.name()), Some(t));
        for op in [AttributeOp::FlipFill, AttributeOp::FlipShape, AttributeOp::FlipSign] {
            assert_eq!(t.apply(op).apply(op), t);
        }
    }
}

#[test]
fn gates_match_dense_unitaries() {
    let g = kite();
    for (gate, u) in [(Gate::Z, pauli(3)), (Gate::H, hadamard()), (Gate::R, phase_r())] {
        for t in CliffordTag::ALL {
            for i in 0..4 {
                let mut tags = vec![CliffordTag::I; 4];
                tags[i] = t;
                tags[(i + 1) % 4] = CliffordTag::HR;
                let ag = AttributedGraph::with_tags(g.clone(), tags.clone()).unwrap();
                let out = ag.apply_clifford_tag(i, gate).unwrap();
                let mut want = dense_tagged_state(&g, &tags).unwrap();
                want.apply_1q(i, &u);
                let got = dense_tagged_state(&out.graph, &out.tags).unwrap();
                let f = got.fidelity(&want);
                assert!((f - 1.0).abs() < 1e-12, "{gate:?} on {t} at {i}: fidelity {f}");
            }
        }
    }
}

#[test]
fn kite_xx_has_two_forbidden_outcomes() {
    let setup = PauliSetup::new(4, &[(2, Axis::X), (3, Axis::X)]).unwrap();
    let rr = reduce(&kite(), &setup).unwrap();
    assert!(!rr.is_gamma());
    let c = classify_outcomes(&rr).unwrap();
    assert_eq!(c.kind, OutcomeKind::GammaBar);
    assert_eq!(c.forbidden, vec![1, 2]);
    for k in 0..4 {
        let pm = measure_graph(&rr, k).unwrap();
        assert_eq!(pm.forbidden, k == 1 || k == 2);
        assert_eq!(pm.probability, if pm.forbidden { 0.0 } else { 0.5 });
    }
}

#[test]
fn kite_zz_is_gamma() {
    let setup = PauliSetup::new(4, &[(2, Axis::Z), (3, Axis::Z)]).unwrap();
    let rr = reduce(&kite(), &setup).unwrap();
    assert!(rr.is_gamma());
    assert!(classify_outcomes(&rr).unwrap().forbidden.is_empty());
    assert_eq!(rr.subgraph_on_s().edges(), vec![(0, 1)]);
}

#[test]
fn bell_pair_from_three_node_line() {
    let g = Graph::path(3);
    for (axis, linked) in [(Axis::X, true), (Axis::Y, true), (Axis::Z, false)] {
        let rr = reduce(&g, &PauliSetup::new(3, &[(1, axis)]).unwrap()).unwrap();
        assert_eq!(rr.subgraph_on_s().has_edge(0, 1), linked, "{axis:?}");
        assert!(rr.is_gamma());
    }
}

#[test]
fn z_on_isolated_node_only_drops_it() {
    let g = Graph::from_edges(4, &[(0, 1), (1, 2)]).unwrap();
    let h = z_measure(&g, 3).unwrap();
    assert_eq!(h.edges(), g.edges());
    let rr = reduce(&g, &PauliSetup::new(4, &[(3, Axis::Z)]).unwrap()).unwrap();
    assert_eq!(rr.subgraph_on_s().edges(), vec![(0, 1), (1, 2)]);
    assert!(rr.is_gamma());
}

#[test]
fn all_z_leaves_the_induced_subgraph() {
    let g = Graph::from_edges(6, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 0), (0, 3), (1, 4)]).unwrap();
    let s = [0, 1, 3, 4];
    let setup = PauliSetup::uniform(6, &s, Axis::Z);
    let rr = reduce(&g, &setup).unwrap();
    assert!(rr.is_gamma());
    assert_eq!(rr.regions.s, s.to_vec());
    assert_eq!(rr.subgraph_on_s(), g.induced(&s));
    for k in 0..4 {
        let pm = measure_graph(&rr, k).unwrap();
        assert_eq!(pm.probability, 0.25);
        // outcomes only add Z strings on the neighbors
        assert!(pm.correction.iter().all(|t| !t.white && !t.diamond));
    }
}

#[test]
fn measured_nodes_split_into_s1_and_s2() {
    let g = Graph::path(7);
    let setup = PauliSetup::new(7, &[(0, Axis::X), (3, Axis::Y), (6, Axis::Z)]).unwrap();
    let rr = reduce(&g, &setup).unwrap();
    rr.check_properties().unwrap();
    assert_eq!(rr.regions.s, vec![1, 2, 4, 5]);
    let mut all = rr.regions.s1.clone();
    all.extend(&rr.regions.s2);
    all.sort();
    assert_eq!(all, setup.measured());
}

#[test]
fn allowed_outcomes_are_equally_likely() {
    let g = Graph::complete(5);
    for axis in Axis::ALL {
        let setup = PauliSetup::uniform(5, &[0, 1], axis);
        let rr = reduce(&g, &setup).unwrap();
        let ps: Vec<f64> = (0..8).map(|k| measure_graph(&rr, k).unwrap().probability).collect();
        let total: f64 = ps.iter().sum();
        assert!((total - 1.0).abs() < 1e-12, "{axis:?}: {ps:?}");
        let allowed: Vec<f64> = ps.iter().copied().filter(|&p| p > 0.0).collect();
        assert!(allowed.iter().all(|&p| p == allowed[0]));
        // agrees with the dense state
        let rho = oracle::dense_graph_state(&g).unwrap().density();
        for (k, &p) in ps.iter().enumerate() {
            let (want, _) = oracle::project_and_condition(&rho, &setup, k as u64).unwrap();
            assert!((want - p).abs() < 1e-12);
        }
    }
}

fn arb_case() -> impl Strategy<Value = (Graph, Vec<usize>)> {
    (3usize..=6).prop_flat_map(|n| {
        (
            proptest::collection::vec(any::<bool>(), n * (n - 1) / 2),
            proptest::collection::vec(any::<bool>(), n),
        )
            .prop_map(move |(bits, keep)| {
                let mut g = Graph::empty(n);
                let mut k = 0;
                for i in 0..n {
                    for j in i + 1..n {
                        g.set_edge(i, j, bits[k]);
                        k += 1;
                    }
                }
                let mut s: Vec<usize> = (0..n).filter(|&i| keep[i]).collect();
                if s.is_empty() {
                    s.push(0);
                }
                (g, s)
            })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn reduction_matches_dense_states((g, s) in arb_case()) {
        let mut rep = PureReport { min_fidelity: 1.0, ..Default::default() };
        pure_case(&g, &s, &mut rep).unwrap();
        prop_assert!(rep.failure.is_none(), "{:?}", rep.failure);
        prop_assert!(rep.max_prob_err < 1e-12);
    }
}
