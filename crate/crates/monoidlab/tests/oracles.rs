use std::collections::BTreeMap;

use monoidlab::oracles::metabelian::fox_image;
use monoidlab::oracles::thompson::thompson_normal_form;
use monoidlab::oracles::{free::free_reduce, metabelian::metabelian_eq, oracle_by_name};
use monoidlab::{GroupWord, LaurentPoly2, Letter};
use num_bigint::BigInt;
use proptest::prelude::*;

fn gw(s: &str) -> GroupWord {
    GroupWord(
        s.chars()
            .map(|c| match c {
                'a' => Letter::pos(0),
                'b' => Letter::pos(1),
                'A' => Letter::neg(0),
                'B' => Letter::neg(1),
                _ => panic!("{c}"),
            })
            .collect(),
    )
}

type Poly = BTreeMap<(i64, i64), i64>;

fn add(p: &mut Poly, e: (i64, i64), c: i64) {
    let v = p.entry(e).or_insert(0);
    *v += c;
    if *v == 0 {
        p.remove(&e);
    }
}

/// Magnus matrix [[x^m y^n, da·t_a + db·t_b], [0, 1]].
#[derive(Clone, Debug, PartialEq, Eq)]
struct Magnus {
    unit: (i64, i64),
    da: Poly,
    db: Poly,
}

impl Magnus {
    fn one() -> Self {
        Magnus { unit: (0, 0), da: Poly::new(), db: Poly::new() }
    }

    fn letter(l: Letter) -> Self {
        let g = if l.gen == 0 { (1, 0) } else { (0, 1) };
        let mut m = Magnus::one();
        m.unit = g;
        if l.gen == 0 {
            add(&mut m.da, (0, 0), 1);
        } else {
            add(&mut m.db, (0, 0), 1);
        }
        if l.inv {
            m.inverse()
        } else {
            m
        }
    }

    /// [[g, d], [0, 1]]⁻¹ = [[g⁻¹, −g⁻¹d], [0, 1]].
    fn inverse(&self) -> Self {
        let inv = (-self.unit.0, -self.unit.1);
        let neg = |p: &Poly| {
            let mut out = Poly::new();
            for (&(i, j), &c) in p {
                add(&mut out, (i + inv.0, j + inv.1), -c);
            }
            out
        };
        Magnus { unit: inv, da: neg(&self.da), db: neg(&self.db) }
    }

    /// [[g, d], [0, 1]]·[[h, e], [0, 1]] = [[gh, d + g·e], [0, 1]].
    fn times(&self, o: &Magnus) -> Self {
        let mut out = self.clone();
        out.unit = (self.unit.0 + o.unit.0, self.unit.1 + o.unit.1);
        for (&(i, j), &c) in &o.da {
            add(&mut out.da, (i + self.unit.0, j + self.unit.1), c);
        }
        for (&(i, j), &c) in &o.db {
            add(&mut out.db, (i + self.unit.0, j + self.unit.1), c);
        }
        out
    }

    fn of(w: &GroupWord) -> Self {
        w.0.iter().fold(Magnus::one(), |acc, &l| acc.times(&Magnus::letter(l)))
    }
}

fn poly_of(l: &LaurentPoly2) -> Poly {
    let mut out = Poly::new();
    for (&e, c) in l.terms() {
        add(&mut out, e, i64::try_from(c.clone()).unwrap());
    }
    out
}

fn laurent(terms: &[((i64, i64), i64)]) -> LaurentPoly2 {
    let mut p = LaurentPoly2::zero();
    for &(e, c) in terms {
        p.add_term(e, BigInt::from(c));
    }
    p
}

/// Thompson's F as piecewise linear maps of [0,1], evaluated on the dyadic grid
/// k/2^GRID with fixed point denominator 2^SCALE.
const GRID: u32 = 12;
const SCALE: u32 = 56;

fn x0(t: i128, inv: bool) -> i128 {
    let one = 1i128 << SCALE;
    let (h, q3, q1) = (one / 2, 3 * one / 4, one / 4);
    if !inv {
        if t <= h {
            t / 2
        } else if t <= q3 {
            t - q1
        } else {
            2 * t - one
        }
    } else if t <= q1 {
        2 * t
    } else if t <= h {
        t + q1
    } else {
        (t + one) / 2
    }
}

fn xn(n: u32, t: i128, inv: bool) -> i128 {
    let one = 1i128 << SCALE;
    let start = one - (one >> n);
    if t <= start {
        return t;
    }
    start + (x0((t - start) << n, inv) >> n)
}

/// Composition of functions: w = l1 l2 … sends t to l1(l2(…(t))).
fn pl_values(w: &GroupWord) -> Vec<i128> {
    (0..=1i128 << GRID)
        .map(|k| {
            let t = k << (SCALE - GRID);
            w.0.iter().rev().fold(t, |t, l| xn(l.gen, t, l.inv))
        })
        .collect()
}

fn tw(indices: &[(u32, bool)]) -> GroupWord {
    GroupWord(indices.iter().map(|&(gen, inv)| Letter { gen, inv }).collect())
}

#[test]
fn free_reduction_examples() {
    assert!(free_reduce(&gw("abBA")).is_empty());
    assert_eq!(free_reduce(&gw("abA")), gw("abA"));
    let f = oracle_by_name("free:2").unwrap();
    let c = gw("ab").concat(&gw("ba").inverse());
    assert_eq!(free_reduce(&c), gw("abAB"));
    assert!(f.is_positive(&c).is_no());
}

#[test]
fn fox_examples() {
    assert!(fox_image(&GroupWord::empty()).unwrap().is_trivial());
    let img = fox_image(&gw("abAB")).unwrap();
    assert_eq!(img.abelianization, (0, 0));
    assert_eq!(img.da, laurent(&[((0, 0), 1), ((0, 1), -1)]));
    assert_eq!(img.db, laurent(&[((1, 0), 1), ((0, 0), -1)]));
    assert!(fox_image(&GroupWord(vec![Letter::pos(2)])).is_err());
}

#[test]
fn metabelian_examples() {
    assert!(metabelian_eq(&gw("abba"), &gw("abba")).unwrap());
    assert!(!metabelian_eq(&gw("ab"), &gw("ba")).unwrap());
}

#[test]
fn second_derived_subgroup_element() {
    // [[a,b],[a,b]^b] lies in F2'' without being trivial in F2.
    let c = gw("abAB");
    let cb = gw("B").concat(&c).concat(&gw("b"));
    let w = c.concat(&cb).concat(&c.inverse()).concat(&cb.inverse());
    assert!(!free_reduce(&w).is_empty());
    assert!(fox_image(&w).unwrap().is_trivial());
}

#[test]
fn transcribed_words_pair_as_pq_inv_eq_yx_inv() {
    let (p, q) = (gw("abbababab"), gw("abbababba"));
    let (x, y) = (gw("baabbabba"), gw("baabbabab"));
    let g = p.concat(&q.inverse());
    assert!(metabelian_eq(&g, &y.concat(&x.inverse())).unwrap());
    assert!(!metabelian_eq(&g, &x.concat(&y.inverse())).unwrap());
    let m = Magnus::of(&g.concat(&x).concat(&y.inverse()));
    assert_eq!(m, Magnus::one());
}

#[test]
fn thompson_examples() {
    let lhs = thompson_normal_form(&tw(&[(0, false), (0, false), (0, false), (1, false), (0, false), (1, false)]));
    let rhs = thompson_normal_form(&tw(&[(0, false), (0, false), (0, false), (0, false), (1, false), (3, false)]));
    assert_eq!(lhs, rhs);
    assert_eq!(lhs.positive, vec![0, 0, 0, 0, 1, 3]);
    assert!(thompson_normal_form(&tw(&[(0, false), (0, true)])).is_identity());
    assert_eq!(thompson_normal_form(&tw(&[(1, false), (0, false)])).positive, vec![0, 2]);
}

#[test]
fn piecewise_linear_model_satisfies_relations() {
    for n in 1..4 {
        for k in 0..n {
            let l = tw(&[(n, false), (k, false)]);
            let r = tw(&[(k, false), (n + 1, false)]);
            assert_eq!(pl_values(&l), pl_values(&r), "x{n} x{k}");
        }
    }
    assert_ne!(pl_values(&tw(&[(0, false), (1, false)])), pl_values(&tw(&[(1, false), (0, false)])));
}

#[test]
fn registry() {
    for n in ["free:2", "free-abelian:3", "metabelian:2", "thompson"] {
        let o = oracle_by_name(n).unwrap();
        assert!(o.is_positive(&GroupWord::empty()).is_yes(), "{n}");
    }
    assert!(oracle_by_name("bs:1,2").is_err());
    assert!(oracle_by_name("free:0").is_err());
}

#[test]
fn oracle_word_syntax() {
    let t = oracle_by_name("thompson").unwrap();
    let w = t.parse_word("x0.x1^-1 x3").unwrap();
    assert_eq!(w, tw(&[(0, false), (1, true), (3, false)]));
    assert_eq!(t.render(&w), "x0.x1^-1.x3");
    let f = oracle_by_name("free:2").unwrap();
    assert!(f.parse_word("a.c").is_err());
    assert!(f.is_identity(&f.parse_word("a.b.b^-1.a^-1").unwrap()));
}

fn ab_word(max: usize) -> impl Strategy<Value = GroupWord> {
    prop::collection::vec((0u32..2, any::<bool>()), 0..=max)
        .prop_map(|ls| GroupWord(ls.into_iter().map(|(gen, inv)| Letter { gen, inv }).collect()))
}

fn thompson_word(max: usize) -> impl Strategy<Value = GroupWord> {
    prop::collection::vec((0u32..4, any::<bool>()), 0..=max)
        .prop_map(|ls| GroupWord(ls.into_iter().map(|(gen, inv)| Letter { gen, inv }).collect()))
}

fn positive_word(max: usize, gens: u32) -> impl Strategy<Value = GroupWord> {
    prop::collection::vec(0..gens, 0..=max).prop_map(|ls| GroupWord(ls.into_iter().map(Letter::pos).collect()))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn fox_matches_magnus_matrices(w in ab_word(14)) {
        let img = fox_image(&w).unwrap();
        let m = Magnus::of(&w);
        prop_assert_eq!(img.abelianization, m.unit);
        prop_assert_eq!(poly_of(&img.da), m.da);
        prop_assert_eq!(poly_of(&img.db), m.db);
    }

    #[test]
    fn fox_product_rule(u in ab_word(10), v in ab_word(10)) {
        let (iu, iv) = (fox_image(&u).unwrap(), fox_image(&v).unwrap());
        let iuv = fox_image(&u.concat(&v)).unwrap();
        prop_assert_eq!(&iuv.da, &(&iu.da + &iv.da.shift(iu.abelianization)));
        prop_assert_eq!(&iuv.db, &(&iu.db + &iv.db.shift(iu.abelianization)));
    }

    #[test]
    fn fox_inverse_rule(w in ab_word(12)) {
        let i = fox_image(&w).unwrap();
        let j = fox_image(&w.inverse()).unwrap();
        let back = (-i.abelianization.0, -i.abelianization.1);
        prop_assert_eq!(j.da, -&i.da.shift(back));
        prop_assert_eq!(j.db, -&i.db.shift(back));
    }

    #[test]
    fn metabelian_refines_free_equality(u in ab_word(8), v in ab_word(8)) {
        if free_reduce(&u) == free_reduce(&v) {
            prop_assert!(metabelian_eq(&u, &v).unwrap());
        }
        let v2 = u.concat(&v).concat(&v.inverse());
        prop_assert!(metabelian_eq(&u, &v2).unwrap());
    }

    #[test]
    fn thompson_matches_piecewise_linear_model(u in thompson_word(5), v in thompson_word(5)) {
        let same = thompson_normal_form(&u) == thompson_normal_form(&v);
        prop_assert_eq!(same, pl_values(&u) == pl_values(&v));
        prop_assert_eq!(pl_values(&thompson_normal_form(&u).to_word()), pl_values(&u));
    }

    #[test]
    fn thompson_normal_form_idempotent(w in thompson_word(8)) {
        let n = thompson_normal_form(&w);
        prop_assert_eq!(thompson_normal_form(&n.to_word()), n);
    }

    #[test]
    fn thompson_congruence(u in thompson_word(5), v in thompson_word(5), c in thompson_word(4)) {
        if thompson_normal_form(&u) == thompson_normal_form(&v) {
            prop_assert_eq!(thompson_normal_form(&u.concat(&c)), thompson_normal_form(&v.concat(&c)));
            prop_assert_eq!(thompson_normal_form(&c.concat(&u)), thompson_normal_form(&c.concat(&v)));
        }
        let uu = u.concat(&u.inverse());
        prop_assert!(thompson_normal_form(&uu).is_identity());
    }

    #[test]
    fn positive_words_stay_positive(w in positive_word(8, 4)) {
        prop_assert!(thompson_normal_form(&w).is_positive());
    }

    #[test]
    fn positivity_closed_under_products(u in positive_word(6, 2), v in positive_word(6, 2)) {
        for name in ["free:2", "free-abelian:2", "metabelian:2", "thompson"] {
            let o = oracle_by_name(name).unwrap();
            if o.is_positive(&u).is_yes() && o.is_positive(&v).is_yes() {
                prop_assert!(o.is_positive(&u.concat(&v)).is_yes(), "{}", name);
            }
        }
    }
}
