use std::collections::BTreeSet;

use monoidlab::catalog::lookup;
use monoidlab::semilattice::{
    chimax_failures, enumerate_characters, enumerate_characters_bounded, max_and_boundary, omega_contains_boundary,
    omega_subspace, truncation, Cover, FiniteSemilattice,
};
use monoidlab::with_backend;
use proptest::prelude::*;

fn set(xs: &[usize]) -> BTreeSet<usize> {
    xs.iter().copied().collect()
}

fn filters(cs: &[monoidlab::semilattice::Character]) -> BTreeSet<BTreeSet<usize>> {
    cs.iter().map(|c| c.filter.clone()).collect()
}

/// Filter axioms checked directly on the meet table.
fn is_filter(e: &FiniteSemilattice, f: &BTreeSet<usize>) -> bool {
    let n = e.len();
    let le = |a: usize, b: usize| e.meet[a][b] == a;
    !f.is_empty()
        && e.zero.is_none_or(|z| !f.contains(&z))
        && f.iter().all(|&a| (0..n).all(|b| !le(a, b) || f.contains(&b)))
        && f.iter().all(|&a| f.iter().all(|&b| f.contains(&e.meet[a][b])))
}

fn brute_filters(e: &FiniteSemilattice) -> BTreeSet<BTreeSet<usize>> {
    (0u64..1 << e.len())
        .map(|mask| (0..e.len()).filter(|&i| mask >> i & 1 == 1).collect::<BTreeSet<usize>>())
        .filter(|f| is_filter(e, f))
        .collect()
}

fn single() -> FiniteSemilattice {
    FiniteSemilattice::new(vec!["P".into()], vec![vec![0]], None, Vec::new()).unwrap()
}

/// P, aP, bP, empty with aP ∩ bP empty.
fn free_depth1() -> FiniteSemilattice {
    let meet = vec![vec![0, 1, 2, 3], vec![1, 1, 3, 3], vec![2, 3, 2, 3], vec![3, 3, 3, 3]];
    FiniteSemilattice::new(vec!["P".into(), "aP".into(), "bP".into(), "empty".into()], meet, Some(3), Vec::new()).unwrap()
}

fn chain(n: usize) -> FiniteSemilattice {
    let meet = (0..n).map(|a| (0..n).map(|b| a.max(b)).collect()).collect();
    FiniteSemilattice::new((0..n).map(|i| format!("{i}+N")).collect(), meet, None, Vec::new()).unwrap()
}

fn truncated(name: &str, depth: usize, bound: usize) -> FiniteSemilattice {
    let entry = lookup(name).unwrap();
    with_backend!(&entry.backend, m => truncation(m, depth, 6, bound)).unwrap()
}

#[test]
fn one_element_has_one_character() {
    let e = single();
    assert_eq!(filters(&enumerate_characters(&e).unwrap()), BTreeSet::from([set(&[0])]));
    let (max, boundary) = max_and_boundary(&e).unwrap();
    assert_eq!(max.len(), 1);
    assert_eq!(boundary, max);
}

#[test]
fn free_depth_one_characters() {
    let e = free_depth1();
    let chars = enumerate_characters(&e).unwrap();
    assert_eq!(filters(&chars), BTreeSet::from([set(&[0]), set(&[0, 1]), set(&[0, 2])]));
    let (max, _) = max_and_boundary(&e).unwrap();
    assert_eq!(filters(&max), BTreeSet::from([set(&[0, 1]), set(&[0, 2])]));
    assert!(chimax_failures(&e).unwrap().is_empty());
}

#[test]
fn chain_characters() {
    let e = chain(3);
    assert_eq!(enumerate_characters(&e).unwrap().len(), 3);
    let (max, _) = max_and_boundary(&e).unwrap();
    assert_eq!(filters(&max), BTreeSet::from([set(&[0, 1, 2])]));
}

#[test]
fn no_covers_means_omega_is_everything() {
    for e in [single(), free_depth1(), chain(4)] {
        assert_eq!(omega_subspace(&e).unwrap(), enumerate_characters(&e).unwrap());
    }
}

#[test]
fn free_truncation_has_full_omega() {
    let e = truncated("free2", 2, 20);
    assert!(e.covers.is_empty());
    assert_eq!(omega_subspace(&e).unwrap(), enumerate_characters(&e).unwrap());
}

#[test]
fn numerical_cover_excludes_its_principal_filter() {
    let e = truncated("numerical:1", 3, 20);
    assert!(!e.covers.is_empty());
    let omega = filters(&omega_subspace(&e).unwrap());
    for c in &e.covers {
        assert!(c.parts.len() >= 2);
        assert!(!omega.contains(&e.principal_filter(c.whole)), "{}", e.elements[c.whole]);
    }
    let five = e.elements.iter().position(|x| x == "{5,6,7,...}").expect("5+N in the truncation");
    assert!(e.covers.iter().any(|c| c.whole == five));
    assert!(!omega.contains(&e.principal_filter(five)));
}

#[test]
fn recorded_cover_on_hand_built_lattice() {
    // P above X above Y, Z with Y ∧ Z = 0 and X = Y ∪ Z.
    let meet = vec![
        vec![0, 1, 2, 3, 4],
        vec![1, 1, 2, 3, 4],
        vec![2, 2, 2, 4, 4],
        vec![3, 3, 4, 3, 4],
        vec![4, 4, 4, 4, 4],
    ];
    let names = ["P", "X", "Y", "Z", "empty"].map(String::from).to_vec();
    let e = FiniteSemilattice::new(names, meet, Some(4), vec![Cover { whole: 1, parts: vec![2, 3] }]).unwrap();
    let omega = filters(&omega_subspace(&e).unwrap());
    assert_eq!(omega, BTreeSet::from([set(&[0]), set(&[0, 1, 2]), set(&[0, 1, 3])]));
    assert!(omega_contains_boundary(&e).unwrap());
}

#[test]
fn bad_tables_rejected() {
    assert!(FiniteSemilattice::new(vec!["a".into(), "b".into()], vec![vec![0, 1], vec![0, 1]], None, Vec::new()).is_err());
    assert!(FiniteSemilattice::new(vec!["a".into(), "b".into()], vec![vec![1, 1], vec![1, 1]], None, Vec::new()).is_err());
    assert!(FiniteSemilattice::new(vec!["a".into(), "b".into()], vec![vec![0, 1], vec![1, 1]], Some(0), Vec::new()).is_err());
    assert!(FiniteSemilattice::new(vec!["a".into()], vec![vec![0, 0]], None, Vec::new()).is_err());
}

#[test]
fn character_bound_enforced() {
    let e = chain(6);
    assert!(enumerate_characters_bounded(&e, 5).is_err());
    assert_eq!(enumerate_characters_bounded(&e, 6).unwrap().len(), 6);
}

#[test]
fn dump_round_trip() {
    let mut cases = vec![single(), free_depth1(), chain(3), truncated("nat2", 2, 20), truncated("numerical:1", 3, 20)];
    cases[1].covers.push(Cover { whole: 0, parts: vec![1, 2] });
    for e in cases {
        let text = e.dump();
        let back = FiniteSemilattice::parse_dump(&text).unwrap();
        assert_eq!(back, e);
        assert_eq!(back.dump(), text);
    }
    assert!(FiniteSemilattice::parse_dump("elements\n0 P\nmeet\n0 1\n").is_err());
    assert!(FiniteSemilattice::parse_dump("nonsense\n").is_err());
}

#[test]
fn catalog_truncations_match_brute_force() {
    for (name, depth) in [("free2", 2), ("nat2", 2), ("nat", 3), ("free-product:3", 1), ("raam:path3", 1), ("braid:3", 1)] {
        let e = truncated(name, depth, 20);
        let chars = enumerate_characters(&e).unwrap();
        assert!(chars.iter().all(|c| is_filter(&e, &c.filter)), "{name}");
        assert_eq!(filters(&chars), brute_filters(&e), "{name}");
        assert!(chimax_failures(&e).unwrap().is_empty(), "{name}");
        assert!(omega_contains_boundary(&e).unwrap(), "{name}");
    }
}

/// Random meet-semilattices: intersections of subsets of a small ground set, closed
/// under intersection and keyed by the set itself.
fn random_lattice() -> impl Strategy<Value = FiniteSemilattice> {
    prop::collection::vec(1u8..=255, 1..6).prop_map(|gens| {
        let mut sets: BTreeSet<u8> = gens.into_iter().chain([255]).collect();
        loop {
            let v: Vec<u8> = sets.iter().copied().collect();
            let before = sets.len();
            for &a in &v {
                for &b in &v {
                    sets.insert(a & b);
                }
            }
            if sets.len() == before {
                break;
            }
        }
        let v: Vec<u8> = sets.into_iter().rev().collect();
        let idx = |s: u8| v.iter().position(|&x| x == s).unwrap();
        let meet = v.iter().map(|&a| v.iter().map(|&b| idx(a & b)).collect()).collect();
        let zero = v.iter().position(|&x| x == 0);
        FiniteSemilattice::new(v.iter().map(|s| format!("{s:08b}")).collect(), meet, zero, Vec::new()).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn characters_are_exactly_the_filters(e in random_lattice()) {
        prop_assume!(e.len() <= 16);
        let chars = enumerate_characters(&e).unwrap();
        prop_assert_eq!(filters(&chars), brute_filters(&e));
    }

    #[test]
    fn maximal_characters_are_maximal_filters(e in random_lattice()) {
        prop_assume!(e.len() <= 16);
        let all = brute_filters(&e);
        let (max, boundary) = max_and_boundary(&e).unwrap();
        let expect: BTreeSet<_> = all.iter().filter(|f| !all.iter().any(|g| g != *f && g.is_superset(f))).cloned().collect();
        prop_assert_eq!(filters(&max), expect);
        prop_assert_eq!(boundary, max);
    }

    #[test]
    fn omega_contains_boundary_with_genuine_covers(e in random_lattice()) {
        prop_assume!(e.len() <= 16);
        // Record every genuine union among the sets.
        let bits: Vec<u8> = e.elements.iter().map(|s| u8::from_str_radix(s, 2).unwrap()).collect();
        let mut e = e;
        for x in 0..bits.len() {
            let below: Vec<usize> = (0..bits.len()).filter(|&y| y != x && bits[y] & bits[x] == bits[y] && bits[y] != 0).collect();
            if below.len() >= 2 && below.iter().fold(0, |acc, &y| acc | bits[y]) == bits[x] {
                e.covers.push(Cover { whole: x, parts: below });
            }
        }
        let omega = filters(&omega_subspace(&e).unwrap());
        for f in &omega {
            prop_assert!(is_filter(&e, f));
        }
        prop_assert!(omega_contains_boundary(&e).unwrap());
    }
}
