use monoidlab::catalog::{lookup, Backend};
use monoidlab::conditions::Bounds;
use monoidlab::graphprod::{GraphSpec, VertexKind};
use monoidlab::ktheory::{clique_count, graph_product_k_index, k_descriptor, KSummand, VertexOrbits};
use proptest::prelude::*;

fn descriptor(name: &str, sizes: Option<&[usize]>) -> monoidlab::ktheory::KDescriptor {
    k_descriptor(&lookup(name).unwrap(), &Bounds::default(), sizes).unwrap()
}

fn graph(n: usize, edges: &[(usize, usize)]) -> GraphSpec {
    GraphSpec::new((0..n).map(|i| format!("v{i}")).collect(), edges, VertexKind::Free(1)).unwrap()
}

/// Σ over vertex subsets whose pairs are all edges, of the product of sizes, plus one.
fn expected_count(n: usize, edges: &[(usize, usize)], sizes: &[usize]) -> usize {
    let adj = |a: usize, b: usize| edges.iter().any(|&(x, y)| (x, y) == (a, b) || (x, y) == (b, a));
    let mut total = 1;
    for mask in 1u32..1 << n {
        let w: Vec<usize> = (0..n).filter(|&i| mask >> i & 1 == 1).collect();
        if w.iter().all(|&a| w.iter().all(|&b| a == b || adj(a, b))) {
            total += w.iter().map(|&v| sizes[v]).product::<usize>();
        }
    }
    total
}

#[test]
fn edge_of_nat_vertices_has_one_summand() {
    let d = descriptor("nat2", None);
    assert_eq!(d.summands, vec![KSummand { clique: vec![], tuple: vec!["P".into()], stabilizer: "trivial".into() }]);
}

#[test]
fn free_monoid_has_one_trivial_summand() {
    let d = descriptor("free2", None);
    assert_eq!(d.summands.len(), 1);
    assert_eq!(d.summands[0].stabilizer, "trivial");
    assert!(!d.citations.is_empty());
}

#[test]
fn triangle_with_synthetic_orbits() {
    let d = descriptor("raam:triangle", Some(&[1, 2, 1]));
    assert_eq!(d.summands.len(), 12);
    assert_eq!(d.summands.len(), 1 + (1 + 2 + 1) + (2 + 2 + 1) + 2);
    let Backend::Graph(gp) = lookup("raam:triangle").unwrap().backend else { panic!() };
    assert_eq!(clique_count(&gp.spec, &[1, 2, 1]), 12);
    assert!(d.notes.iter().any(|n| n.contains("synthetic")));
}

#[test]
fn no_edge_gives_singleton_cliques() {
    let g = graph(2, &[]);
    let data = vec![VertexOrbits::synthetic("v0", 1), VertexOrbits::synthetic("v1", 1)];
    let d = graph_product_k_index("g", &g, &data, "trivial").unwrap();
    assert_eq!(d.summands.len(), 3);
    assert!(d.summands.iter().all(|s| s.clique.len() <= 1));
}

#[test]
fn principal_case_examples() {
    let d = descriptor("axb-Z", None);
    assert_eq!(d.summands.len(), 1);
    assert_eq!(d.summands[0].stabilizer, "Z x| {+-1}");
    assert!(d.notes.iter().any(|n| n.contains("|Cl| = 1")));

    let d = descriptor("braid:3", None);
    assert_eq!(d.summands.len(), 1);
    assert_eq!(d.summands[0].stabilizer, "trivial");
    assert!(d.notes.iter().any(|n| n.contains("isomorphism")));
}

#[test]
fn non_principal_entries_are_refused() {
    let b = Bounds::default();
    assert!(k_descriptor(&lookup("numerical:1").unwrap(), &b, None).is_err());
    assert!(k_descriptor(&lookup("nat").unwrap(), &b, Some(&[1])).is_err());
    assert!(k_descriptor(&lookup("raam:triangle").unwrap(), &b, Some(&[1, 2])).is_err());
}

#[test]
fn mismatched_vertex_data_is_an_error() {
    let g = graph(2, &[(0, 1)]);
    assert!(graph_product_k_index("g", &g, &[VertexOrbits::default()], "trivial").is_err());
    let bad = VertexOrbits { reps: vec!["X".into()], stabilizers: vec![] };
    assert!(graph_product_k_index("g", &g, &[bad, VertexOrbits::default()], "trivial").is_err());
}

#[test]
fn stabilizers_multiply_over_cliques() {
    let g = graph(2, &[(0, 1)]);
    let a = VertexOrbits { reps: vec!["X".into()], stabilizers: vec!["Z".into()] };
    let b = VertexOrbits { reps: vec!["Y".into()], stabilizers: vec!["Z/2".into()] };
    let d = graph_product_k_index("g", &g, &[a, b], "trivial").unwrap();
    let top = d.summands.iter().find(|s| s.clique.len() == 2).unwrap();
    assert_eq!(top.tuple, vec!["X", "Y"]);
    assert_eq!(top.stabilizer, "Z x Z/2");
}

#[test]
fn descriptor_lines_format() {
    let d = descriptor("raam:path3", Some(&[1, 1, 1]));
    for line in d.lines().lines() {
        assert!(line.starts_with("clique=[") && line.contains("] tuple=[") && line.contains("] stabilizer="), "{line}");
    }
    assert_eq!(d.lines().lines().count(), d.summands.len());
}

fn random_graph() -> impl Strategy<Value = (usize, Vec<(usize, usize)>, Vec<usize>)> {
    (1usize..=5).prop_flat_map(|n| {
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).collect();
        let m = pairs.len();
        (Just(n), prop::collection::vec(any::<bool>(), m), prop::collection::vec(0usize..4, n)).prop_map(move |(n, keep, sizes)| {
            let edges = pairs.iter().zip(&keep).filter(|(_, &k)| k).map(|(&p, _)| p).collect();
            (n, edges, sizes)
        })
    })
}

proptest! {
    #[test]
    fn summand_count_matches_subset_brute_force((n, edges, sizes) in random_graph()) {
        let g = graph(n, &edges);
        let data: Vec<VertexOrbits> = sizes.iter().enumerate().map(|(i, &k)| VertexOrbits::synthetic(&format!("v{i}"), k)).collect();
        let d = graph_product_k_index("g", &g, &data, "trivial").unwrap();
        let expect = expected_count(n, &edges, &sizes);
        prop_assert_eq!(d.summands.len(), expect);
        prop_assert_eq!(clique_count(&g, &sizes), expect);
        for s in &d.summands[1..] {
            let ids: Vec<usize> = s.clique.iter().map(|v| g.vertex_index(v).unwrap()).collect();
            prop_assert!(g.is_clique(&ids));
            prop_assert_eq!(s.tuple.len(), s.clique.len());
        }
        prop_assert_eq!(graph_product_k_index("g", &g, &data, "trivial").unwrap(), d);
    }
}
