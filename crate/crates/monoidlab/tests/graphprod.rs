use std::collections::{BTreeSet, VecDeque};

use monoidlab::graphprod::{GPWord, GraphProduct, GraphSpec, Syllable};
use monoidlab::words::words_up_to;
use monoidlab::{GroupWord, Letter, MonoidWord};
use proptest::prelude::*;

fn edge() -> GraphProduct {
    GraphProduct::parse("vertices: a b\nedges: a-b\n").unwrap()
}

fn no_edge() -> GraphProduct {
    GraphProduct::parse("vertices: a b\nedges:\n").unwrap()
}

fn path() -> GraphProduct {
    GraphProduct::parse("vertices: u v w\nedges: u-v v-w\n").unwrap()
}

fn mixed() -> GraphProduct {
    GraphProduct::parse("vertices: u v w\nedges: u-v\nvertex v = oracle:free-abelian:2\nvertex w = oracle:free:2\n").unwrap()
}

fn raw(gp: &GraphProduct, s: &str) -> GPWord {
    gp.from_group_word(&gp.alphabet.parse_group(s).unwrap()).unwrap()
}

fn w(gp: &GraphProduct, s: &str) -> GPWord {
    gp.parse_word(s).unwrap()
}

fn syl(v: usize, letters: &[(u32, bool)]) -> Syllable {
    Syllable { vertex: v, element: GroupWord(letters.iter().map(|&(gen, inv)| Letter { gen, inv }).collect()) }
}

/// Positive words equal in a right-angled Artin monoid: closure under swapping
/// neighbouring letters at adjacent vertices.
fn commutation_class(gp: &GraphProduct, w: &[u32]) -> BTreeSet<Vec<u32>> {
    let mut seen = BTreeSet::from([w.to_vec()]);
    let mut queue = VecDeque::from([w.to_vec()]);
    while let Some(cur) = queue.pop_front() {
        for i in 0..cur.len().saturating_sub(1) {
            let (x, y) = (gp.letters[cur[i] as usize].0, gp.letters[cur[i + 1] as usize].0);
            if gp.spec.adjacent(x, y) {
                let mut next = cur.clone();
                next.swap(i, i + 1);
                if seen.insert(next.clone()) {
                    queue.push_back(next);
                }
            }
        }
    }
    seen
}

#[test]
fn reduced_criterion_examples() {
    let gp = edge();
    let x = GPWord { syllables: vec![syl(0, &[(0, false)]), syl(1, &[(0, false)]), syl(0, &[(0, false)])] };
    assert!(!gp.is_reduced(&x).unwrap());
    let gp = no_edge();
    assert!(gp.is_reduced(&x).unwrap());
    let gp = path();
    assert!(gp.is_reduced(&raw(&gp, "u.v.w.u")).unwrap());
}

#[test]
fn identity_syllable_rejected() {
    let gp = edge();
    let x = GPWord { syllables: vec![syl(0, &[])] };
    assert!(gp.is_reduced(&x).is_err());
    assert!(gp.initial_final_data(&x).is_err());
}

#[test]
fn normal_form_examples() {
    let gp = edge();
    assert_eq!(gp.render(&w(&gp, "b.a")), "a.b");
    assert!(gp.normal_form(&raw(&gp, "a.a^-1")).is_identity());
    let gp = path();
    assert_eq!(gp.render(&gp.normal_form(&raw(&gp, "w.u"))), "w.u");
}

#[test]
fn multiplication_examples() {
    let gp = no_edge();
    let h = w(&gp, "a.b");
    assert_eq!(gp.multiply(&GPWord::identity(), &h), h);
    let prod = gp.multiply(&w(&gp, "a.b"), &w(&gp, "b"));
    assert_eq!(prod.syllables.len(), 2);
    assert_eq!(gp.render(&prod), "a.b.b");
    let gp = edge();
    assert_eq!(gp.render(&gp.multiply(&w(&gp, "b"), &w(&gp, "a"))), "a.b");
}

#[test]
fn cascading_cancellation() {
    let gp = path();
    let x = gp.multiply(&w(&gp, "u.w.v"), &w(&gp, "v^-1.w^-1.u^-1"));
    assert!(x.is_identity());
}

#[test]
fn initial_final_examples() {
    let gp = no_edge();
    let d = gp.initial_final_data(&w(&gp, "a")).unwrap();
    assert_eq!(d.initial_vertices, BTreeSet::from([0]));
    assert_eq!(d.final_vertices, BTreeSet::from([0]));
    assert_eq!(d.initial_syllables[&0], syl(0, &[(0, false)]));
    let d = gp.initial_final_data(&w(&gp, "a.b")).unwrap();
    assert_eq!(d.initial_vertices, BTreeSet::from([0]));
    assert_eq!(d.final_vertices, BTreeSet::from([1]));
    let gp = edge();
    let d = gp.initial_final_data(&w(&gp, "a.b")).unwrap();
    assert_eq!(d.initial_vertices, BTreeSet::from([0, 1]));
}

#[test]
fn graph_file_errors() {
    assert!(GraphSpec::parse("vertices: u v\nedges: u-x\n").is_err());
    assert!(GraphSpec::parse("vertices: u u\n").is_err());
    assert!(GraphSpec::parse("vertices: u\nvertex u = oracle:thompson\n").is_err());
    assert!(GraphSpec::parse("edges: u-v\n").is_err());
}

#[test]
fn graph_file_round_trip() {
    let spec = mixed().spec;
    let text = spec.serialize();
    assert_eq!(GraphSpec::parse(&text).unwrap(), spec);
    assert_eq!(GraphSpec::parse(&text).unwrap().serialize(), text);
}

#[test]
fn positive_equality_matches_commutation_closure() {
    for gp in [edge(), no_edge(), path()] {
        let n = gp.alphabet.len();
        let words = words_up_to(n, 4);
        for u in &words {
            let class = commutation_class(&gp, &u.0);
            let nu = gp.normal_form(&gp.from_monoid_word(u).unwrap());
            for v in words.iter().filter(|v| v.len() == u.len()) {
                let nv = gp.normal_form(&gp.from_monoid_word(v).unwrap());
                assert_eq!(nu == nv, class.contains(&v.0), "{u:?} {v:?}");
            }
        }
    }
}

#[test]
fn raam_presentation_has_one_relation_per_edge() {
    let gp = path();
    let p = gp.raam_presentation().unwrap();
    assert_eq!(p.relations.len(), 2);
    assert!(p.completeness_declared);
}

fn graphs() -> Vec<GraphProduct> {
    vec![edge(), no_edge(), path(), mixed()]
}

fn group_word(gp: &GraphProduct, max: usize) -> impl Strategy<Value = GPWord> {
    let n = gp.alphabet.len() as u32;
    let gp = gp.clone();
    prop::collection::vec((0..n, any::<bool>()), 0..=max)
        .prop_map(move |ls| gp.from_group_word(&GroupWord(ls.into_iter().map(|(gen, inv)| Letter { gen, inv }).collect())).unwrap())
}

fn graph_and_words(max: usize, count: usize) -> impl Strategy<Value = (usize, Vec<GPWord>)> {
    (0..graphs().len()).prop_flat_map(move |g| {
        let gp = graphs()[g].clone();
        (Just(g), prop::collection::vec(group_word(&gp, max), count))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn normal_form_idempotent_and_reduced((g, ws) in graph_and_words(8, 1)) {
        let gp = &graphs()[g];
        let n = gp.normal_form(&ws[0]);
        prop_assert!(gp.is_reduced(&n).unwrap());
        prop_assert_eq!(gp.normal_form(&n), n);
    }

    #[test]
    fn normal_form_preserves_the_element((g, ws) in graph_and_words(8, 1)) {
        let gp = &graphs()[g];
        let n = gp.normal_form(&ws[0]);
        // x·x⁻¹ = e computed from the raw word and its normal form.
        prop_assert!(gp.multiply(&ws[0], &n.inverse()).is_identity());
    }

    #[test]
    fn shuffles_keep_normal_form_and_initial_data((g, ws) in graph_and_words(8, 1)) {
        let gp = &graphs()[g];
        let n = gp.normal_form(&ws[0]);
        let d = gp.initial_final_data(&n).unwrap();
        for v in &d.initial_vertices {
            for u in &d.initial_vertices {
                prop_assert!(u == v || gp.spec.adjacent(*u, *v));
            }
        }
        for s in gp.single_shuffles(&n) {
            prop_assert_eq!(gp.normal_form(&s), n.clone());
            prop_assert_eq!(gp.initial_final_data(&s).unwrap(), d.clone());
        }
    }

    #[test]
    fn initial_syllable_of_product((g, ws) in graph_and_words(5, 1), v in 0usize..3, gen in 0u32..2, inv: bool) {
        let gp = &graphs()[g];
        let v = v % gp.vertex_count();
        let local = gen % gp.kind(v).rank() as u32;
        let head = GPWord::single(v, GroupWord(vec![Letter { gen: local, inv }]));
        let x = gp.normal_form(&ws[0]);
        let gx = gp.multiply(&head, &x);
        let expected = gp.kind(v).mul(&head.syllables[0].element, &gp.initial_syllable(&x, v));
        prop_assert_eq!(gp.initial_syllable(&gx, v), expected);
    }

    #[test]
    fn multiplication_associative((g, ws) in graph_and_words(6, 3)) {
        let gp = &graphs()[g];
        let (a, b, c) = (gp.normal_form(&ws[0]), gp.normal_form(&ws[1]), gp.normal_form(&ws[2]));
        prop_assert_eq!(gp.multiply(&gp.multiply(&a, &b), &c), gp.multiply(&a, &gp.multiply(&b, &c)));
    }

    #[test]
    fn positivity_closed_under_products(g in 0usize..4, u in prop::collection::vec(0u32..6, 0..6), v in prop::collection::vec(0u32..6, 0..6)) {
        let gp = &graphs()[g];
        let n = gp.alphabet.len() as u32;
        let to = |w: &[u32]| gp.from_monoid_word(&MonoidWord(w.iter().map(|x| x % n).collect())).unwrap();
        let (a, b) = (gp.normal_form(&to(&u)), gp.normal_form(&to(&v)));
        prop_assert!(gp.is_positive(&a) && gp.is_positive(&b));
        prop_assert!(gp.is_positive(&gp.multiply(&a, &b)));
    }
}
