use proptest::prelude::*;

use stabloc::graph::{gf2_rank_offdiagonal, Bipartition, Graph};
use stabloc::orbit::{canonical_form, isomorphism, lc_orbit, lc_path};
use stabloc::reduction::z_measure;

fn edges(g: &Graph) -> Vec<(usize, usize)> {
    g.edges()
}

#[test]
fn complement_middle_of_path_gives_triangle() {
    let g = Graph::path(3).local_complement(1).unwrap();
    assert_eq!(edges(&g), vec![(0, 1), (0, 2), (1, 2)]);
}

#[test]
fn complement_at_leaf_is_noop() {
    let g = Graph::path(3);
    assert_eq!(g.local_complement(0).unwrap(), g);
}

#[test]
fn edge_complement_of_single_edge_is_noop() {
    let g = Graph::path(2);
    assert_eq!(g.local_complement_edge(0, 1).unwrap(), g);
}

#[test]
fn edge_complement_matches_three_vertex_complements() {
    let g = Graph::path(4);
    let by_hand = g.local_complement(1).unwrap().local_complement(2).unwrap().local_complement(1).unwrap();
    assert_eq!(g.local_complement_edge(1, 2).unwrap(), by_hand);
}

#[test]
fn edge_complement_needs_an_edge() {
    assert!(Graph::path(4).local_complement_edge(0, 2).is_err());
}

#[test]
fn rank_examples() {
    let star = Graph::star(5);
    for a in [vec![0], vec![1, 2], vec![0, 3, 4]] {
        assert_eq!(gf2_rank_offdiagonal(&star, &Bipartition::new(5, &a).unwrap()).unwrap(), 1);
    }
    let line = Graph::path(4);
    assert_eq!(gf2_rank_offdiagonal(&line, &Bipartition::new(4, &[0, 2]).unwrap()).unwrap(), 2);
    let empty = Graph::empty(4);
    assert_eq!(gf2_rank_offdiagonal(&empty, &Bipartition::new(4, &[0, 1]).unwrap()).unwrap(), 0);
}

#[test]
fn bipartition_rejects_trivial_cuts() {
    assert!(Bipartition::new(3, &[]).is_err());
    assert!(Bipartition::new(3, &[0, 1, 2]).is_err());
}

#[test]
fn components() {
    assert_eq!(Graph::complete(3).connected_components(), vec![vec![0, 1, 2]]);
    let two = Graph::from_edges(4, &[(0, 1), (2, 3)]).unwrap();
    assert_eq!(two.connected_components().len(), 2);
    // deleting the cut vertex of a path splits it
    let cut = z_measure(&Graph::path(5), 2).unwrap();
    let nontrivial = cut.connected_components().into_iter().filter(|c| c.len() > 1).count();
    assert_eq!(nontrivial, 2);
}

#[test]
fn validation_catches_corruption() {
    let mut g = Graph::path(3);
    assert!(g.validate().is_ok());
    g.corrupt_bit(1, 1);
    assert!(g.validate().is_err());
    assert!(Graph::from_edges(3, &[(0, 0)]).is_err());
    assert!(Graph::from_edges(3, &[(0, 3)]).is_err());
}

#[test]
fn wide_graphs_use_more_than_one_word() {
    let g = Graph::path(100);
    assert!(g.has_edge(63, 64) && g.has_edge(98, 99));
    let h = g.local_complement(64).unwrap();
    assert!(h.has_edge(63, 65));
    assert_eq!(h.local_complement(64).unwrap(), g);
}

#[test]
fn tiny_orbits() {
    assert_eq!(lc_orbit(&Graph::path(2)).unwrap().len(), 1);
    // star and complete graph on 4 nodes are LC equivalent, the path is not
    let star = lc_orbit(&Graph::star(4)).unwrap();
    assert!(star.contains(&canonical_form(&Graph::complete(4)).unwrap()));
    assert!(!star.contains(&canonical_form(&Graph::path(4)).unwrap()));
}

#[test]
fn lc_path_connects_star_and_complete() {
    let (seq, perm) = lc_path(&Graph::star(4), &Graph::complete(4)).unwrap().expect("equivalent");
    let mut g = Graph::star(4);
    for &i in &seq {
        g = g.local_complement(i).unwrap();
    }
    assert!(isomorphism(&g, &Graph::complete(4)).is_some());
    assert_eq!(perm.len(), 4);
    assert!(lc_path(&Graph::star(4), &Graph::path(4)).unwrap().is_none());
}

#[test]
fn canonical_form_ignores_labels() {
    let a = Graph::from_edges(4, &[(0, 1), (1, 2), (2, 3)]).unwrap();
    let b = Graph::from_edges(4, &[(2, 0), (0, 3), (3, 1)]).unwrap();
    assert_eq!(canonical_form(&a).unwrap(), canonical_form(&b).unwrap());
    assert_eq!(canonical_form(&a).unwrap().graph().n_edges(), 3);
    assert!(canonical_form(&Graph::path(9)).is_err());
}

fn arb_graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (2..=max_n).prop_flat_map(|n| {
        proptest::collection::vec(any::<bool>(), n * (n - 1) / 2).prop_map(move |bits| {
            let mut g = Graph::empty(n);
            let mut k = 0;
            for i in 0..n {
                for j in i + 1..n {
                    g.set_edge(i, j, bits[k]);
                    k += 1;
                }
            }
            g
        })
    })
}

proptest! {
    #[test]
    fn local_complement_is_an_involution(g in arb_graph(10), i in 0usize..10) {
        let i = i % g.n_nodes();
        let h = g.local_complement(i).unwrap();
        prop_assert!(h.validate().is_ok());
        prop_assert_eq!(h.local_complement(i).unwrap(), g);
    }

    #[test]
    fn edge_complement_is_symmetric(g in arb_graph(10), i in 0usize..10, j in 0usize..10) {
        let n = g.n_nodes();
        let (i, j) = (i % n, j % n);
        prop_assume!(g.has_edge(i, j));
        let a = g.local_complement_edge(i, j).unwrap();
        prop_assert!(a.validate().is_ok());
        prop_assert_eq!(a, g.local_complement_edge(j, i).unwrap());
    }

    #[test]
    fn cut_rank_is_symmetric(g in arb_graph(10), mask in 1u32..1023) {
        let n = g.n_nodes();
        let a: Vec<usize> = (0..n).filter(|&i| mask >> i & 1 == 1).collect();
        prop_assume!(!a.is_empty() && a.len() < n);
        let p = Bipartition::new(n, &a).unwrap();
        prop_assert_eq!(
            gf2_rank_offdiagonal(&g, &p).unwrap(),
            gf2_rank_offdiagonal(&g, &p.complement()).unwrap()
        );
    }

    #[test]
    fn orbits_are_closed(g in arb_graph(5)) {
        let orbit = lc_orbit(&g).unwrap();
        for c in &orbit {
            let m = c.graph();
            for i in 0..m.n_nodes() {
                prop_assert!(orbit.contains(&canonical_form(&m.local_complement(i).unwrap()).unwrap()));
            }
        }
    }
}
