//! Seeded property runner behind the `selftest` command.

use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::catalog::quad::QuadElem;
use crate::catalog::{builtin_graph, lookup};
use crate::conditions::{replay, run_condition, Bounds, Status};
use crate::graphprod::{GraphProduct, GraphSpec, VertexKind};
use crate::ideals::{apply_hull, in_hull_image, Applied, HullElement, Monoid, Move, Tri};
use crate::ktheory::{clique_count, graph_product_k_index, VertexOrbits};
use crate::oracles::{fox_image, free_reduce, metabelian_eq, thompson_normal_form, GroupOracle, MetabelianGroup};
use crate::semilattice::{chimax_failures, enumerate_characters, omega_contains_boundary, truncation};
use crate::words::{
    apply_relation_at, decide_equal_rr, left_divide, parse_presentation, replay_rr_path, GroupWord, Letter, MonoidWord,
    Presentation, Quotient, RrVerdict,
};

#[derive(Clone, Debug)]
pub struct PropertyResult {
    pub name: &'static str,
    pub samples: usize,
    pub failure: Option<String>,
    pub elapsed: Duration,
}

impl PropertyResult {
    pub fn passed(&self) -> bool {
        self.failure.is_none()
    }
}

type Prop = fn(&mut ChaCha8Rng) -> (usize, Option<String>);

pub const PROPERTIES: &[(&str, Prop)] = &[
    ("words: witness paths replay", rr_paths_replay),
    ("words: free monoid equality is letter equality", free_equality),
    ("words: left division quotients are sound", left_division_sound),
    ("words: relation steps preserve length", relation_length),
    ("graphprod: normal form is idempotent and reduced", nf_idempotent),
    ("graphprod: shuffles do not change normal form or initial data", shuffle_invariance),
    ("graphprod: initial syllable of g.x", initial_gx),
    ("graphprod: multiplication is associative", gp_associative),
    ("graphprod: normal forms agree with rewriting", gp_matches_rr),
    ("oracles: Fox product rule", fox_product_rule),
    ("oracles: free equality implies metabelian equality", metabelian_refines),
    ("oracles: Thompson normal form is a congruence", thompson_congruence),
    ("oracles: positive cones are closed under products", positive_closed),
    ("ideals: right ideal law", right_ideal_law),
    ("ideals: hull maps are right P-equivariant", hull_functional),
    ("semilattice: filters, chimax=0 and boundary inside Omega", semilattice_laws),
    ("ktheory: summand count matches brute force", k_count),
    ("catalog: quadratic norm is multiplicative", quad_norm),
    ("conditions: certificates replay and verdicts are monotone", certificates),
];

pub fn run_selftest(seed: u64) -> Vec<PropertyResult> {
    PROPERTIES
        .iter()
        .enumerate()
        .map(|(i, (name, prop))| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(i as u64));
            let start = Instant::now();
            let (samples, failure) = prop(&mut rng);
            PropertyResult { name, samples, failure, elapsed: start.elapsed() }
        })
        .collect()
}

fn group_word(rng: &mut ChaCha8Rng, gens: u32, max_len: usize) -> GroupWord {
    let n = rng.gen_range(0..=max_len);
    GroupWord((0..n).map(|_| Letter { gen: rng.gen_range(0..gens), inv: rng.gen_bool(0.5) }).collect())
}

fn monoid_word(rng: &mut ChaCha8Rng, gens: u32, max_len: usize) -> MonoidWord {
    let n = rng.gen_range(0..=max_len);
    MonoidWord((0..n).map(|_| rng.gen_range(0..gens)).collect())
}

fn braid3() -> Presentation {
    parse_presentation("generators: s1 s2\ns1 s2 s1 = s2 s1 s2\ncomplete: true\n").expect("braid presentation")
}

/// A random rewrite of w by up to `steps` relation applications.
fn scramble(rng: &mut ChaCha8Rng, w: &MonoidWord, pres: &Presentation, steps: usize) -> MonoidWord {
    let mut cur = w.clone();
    for _ in 0..steps {
        let moves: Vec<MonoidWord> = (0..cur.len())
            .flat_map(|pos| {
                pres.orientations().filter_map(move |(i, rev, _, _)| Some((pos, i, rev))).collect::<Vec<_>>()
            })
            .filter_map(|(pos, i, rev)| apply_relation_at(&cur, pres, pos, i, rev))
            .collect();
        if moves.is_empty() {
            break;
        }
        cur = moves[rng.gen_range(0..moves.len())].clone();
    }
    cur
}

fn rr_paths_replay(rng: &mut ChaCha8Rng) -> (usize, Option<String>) {
    let pres = braid3();
    for i in 0..100 {
        let u = monoid_word(rng, 2, 6);
        let v = scramble(rng, &u, &pres, 4);
        match decide_equal_rr(&u, &v, &pres, 20_000) {
            Ok(RrVerdict::Equal(path)) if replay_rr_path(&u, &v, &pres, &path) => {}
            other => return (i, Some(format!("{:?} vs {:?}: {:?}", u, v, other))),
        }
    }
    (100, None)
}

fn all_words(gens: u32, max_len: usize) -> Vec<MonoidWord> {
    let mut out = vec![MonoidWord::empty()];
    let mut layer = vec![MonoidWord::empty()];
    for _ in 0..max_len {
        layer = layer
            .iter()
            .flat_map(|w| (0..gens).map(move |g| w.concat(&MonoidWord(vec![g]))))
            .collect();
        out.extend(layer.iter().cloned());
    }
    out
}

fn free_equality(_: &mut ChaCha8Rng) -> (usize, Option<String>) {
    let pres = parse_presentation("generators: a b\ncomplete: true\n").expect("free presentation");
    let words = all_words(2, 6);
    let mut n = 0;
    for u in &words {
        for v in &words {
            n += 1;
            let equal = matches!(decide_equal_rr(u, v, &pres, 1_000), Ok(RrVerdict::Equal(_)));
            if equal != (u == v) {
                return (n, Some(format!("{u:?} vs {v:?}")));
            }
        }
    }
    (n, None)
}

fn left_division_sound(rng: &mut ChaCha8Rng) -> (usize, Option<String>) {
    let pres = braid3();
    for i in 0..100 {
        let p = monoid_word(rng, 2, 3);
        let r = monoid_word(rng, 2, 3);
        let x = scramble(rng, &p.concat(&r), &pres, 3);
        if let Ok(Quotient::Quotient(q)) = left_divide(&p, &x, &pres, 20_000) {
            if !matches!(decide_equal_rr(&p.concat(&q), &x, &pres, 20_000), Ok(RrVerdict::Equal(_))) {
                return (i, Some(format!("p={p:?} x={x:?} quotient {q:?}")));
            }
        }
    }
    (100, None)
}

fn relation_length(rng: &mut ChaCha8Rng) -> (usize, Option<String>) {
    let pres = braid3();
    let thompson = crate::catalog::thompson::thompson_presentation(3, false);
    for i in 0..1000 {
        let (p, gens) = if i % 2 == 0 { (&pres, 2) } else { (&thompson, 4) };
        let w = monoid_word(rng, gens, 8);
        let v = scramble(rng, &w, p, 1);
        if v.len() != w.len() {
            return (i, Some(format!("{w:?} -> {v:?}")));
        }
    }
    (1000, None)
}

fn sample_graphs() -> Vec<GraphProduct> {
    let mut out = Vec::new();
    for name in ["path3", "triangle"] {
        out.push(GraphProduct::parse(builtin_graph(name).expect("builtin")).expect("graph"));
    }
    let mut mixed = GraphSpec::new(vec!["u".into(), "v".into(), "w".into()], &[(0, 1)], VertexKind::Free(1)).expect("graph");
    mixed.kinds[1] = VertexKind::FreeAbelian(2);
    mixed.kinds[2] = VertexKind::Free(2);
    out.push(GraphProduct::new(mixed));
    out
}

fn gp_word(rng: &mut ChaCha8Rng, gp: &GraphProduct, max_len: usize) -> crate::graphprod::GPWord {
    let gens = Monoid::generators(gp).len() as u32;
    gp.from_group_word(&group_word(rng, gens, max_len)).expect("letters in range")
}

fn nf_idempotent(rng: &mut ChaCha8Rng) -> (usize, Option<String>) {
    let graphs = sample_graphs();
    for i in 0..10_000 {
        let gp = &graphs[i % graphs.len()];
        let w = gp_word(rng, gp, 8);
        let nf = gp.normal_form(&w);
        if gp.normal_form(&nf) != nf || gp.is_reduced(&nf) != Ok(true) {
            return (i, Some(format!("{}", gp.render(&w))));
        }
    }
    (10_000, None)
}

fn shuffle_invariance(rng: &mut ChaCha8Rng) -> (usize, Option<String>) {
    let graphs = sample_graphs();
    for i in 0..1000 {
        let gp = &graphs[i % graphs.len()];
        let w = gp.normal_form(&gp_word(rng, gp, 8));
        let init = gp.initial_vertices(&w);
        for s in gp.single_shuffles(&w) {
            let same = gp.normal_form(&s) == w
                && gp.initial_vertices(&s) == init
                && init.iter().all(|&v| gp.initial_syllable(&s, v) == gp.initial_syllable(&w, v));
            if !same {
                return (i, Some(gp.render(&w)));
            }
        }
    }
    (1000, None)
}

fn initial_gx(rng: &mut ChaCha8Rng) -> (usize, Option<String>) {
    let graphs = sample_graphs();
    let mut n = 0;
    for gp in &graphs {
        for _ in 0..300 {
            n += 1;
            let x = gp.normal_form(&gp_word(rng, gp, 5));
            let v = rng.gen_range(0..gp.vertex_count());
            let kind = gp.kind(v);
            let local = loop {
                let g = kind.normal_form(&group_word(rng, kind.rank() as u32, 2));
                if !g.is_empty() {
                    break g;
                }
            };
            let g = crate::graphprod::GPWord::single(v, local.clone());
            let lhs = gp.initial_syllable(&gp.multiply(&g, &x), v);
            let rhs = kind.mul(&local, &gp.initial_syllable(&x, v));
            if lhs != rhs {
                return (n, Some(format!("g={} x={}", gp.render(&g), gp.render(&x))));
            }
        }
    }
    (n, None)
}

fn gp_associative(rng: &mut ChaCha8Rng) -> (usize, Option<String>) {
    let graphs = sample_graphs();
    for i in 0..1000 {
        let gp = &graphs[i % graphs.len()];
        let (a, b, c) = (gp_word(rng, gp, 6), gp_word(rng, gp, 6), gp_word(rng, gp, 6));
        let (a, b, c) = (gp.normal_form(&a), gp.normal_form(&b), gp.normal_form(&c));
        if gp.multiply(&gp.multiply(&a, &b), &c) != gp.multiply(&a, &gp.multiply(&b, &c)) {
            return (i, Some(format!("{} {} {}", gp.render(&a), gp.render(&b), gp.render(&c))));
        }
    }
    (1000, None)
}

fn gp_matches_rr(rng: &mut ChaCha8Rng) -> (usize, Option<String>) {
    let graphs: Vec<GraphProduct> = sample_graphs().into_iter().take(2).collect();
    for i in 0..200 {
        let gp = &graphs[i % graphs.len()];
        let pres = gp.raam_presentation().expect("raam");
        let u = monoid_word(rng, 3, 5);
        let v = if rng.gen_bool(0.5) { scramble(rng, &u, &pres, 3) } else { monoid_word(rng, 3, 5) };
        let nf_eq = gp.normal_form(&gp.from_monoid_word(&u).expect("word")) == gp.normal_form(&gp.from_monoid_word(&v).expect("word"));
        let rr = match decide_equal_rr(&u, &v, &pres, 20_000) {
            Ok(RrVerdict::Equal(_)) => true,
            Ok(RrVerdict::NotEqualWithinBudget) => false,
            other => return (i, Some(format!("{u:?} {v:?}: {other:?}"))),
        };
        if nf_eq != rr {
            return (i, Some(format!("{u:?} {v:?}")));
        }
    }
    (200, None)
}

fn fox_product_rule(rng: &mut ChaCha8Rng) -> (usize, Option<String>) {
    for i in 0..1000 {
        let (u, v) = (group_word(rng, 2, 8), group_word(rng, 2, 8));
        let (fu, fv, fuv) = (fox_image(&u).unwrap(), fox_image(&v).unwrap(), fox_image(&u.concat(&v)).unwrap());
        if fu.compose(&fv) != fuv {
            return (i, Some(format!("{u:?} {v:?}")));
        }
        let inv = fox_image(&u.inverse()).unwrap();
        let (m, n) = fu.abelianization;
        let expect_da = -&fu.da.shift((-m, -n));
        let expect_db = -&fu.db.shift((-m, -n));
        if inv.da != expect_da || inv.db != expect_db {
            return (i, Some(format!("inverse of {u:?}")));
        }
    }
    (1000, None)
}

fn metabelian_refines(rng: &mut ChaCha8Rng) -> (usize, Option<String>) {
    for i in 0..1000 {
        let u = group_word(rng, 2, 8);
        let mut v = u.clone();
        // Insert a cancelling pair so u and v are equal in the free group.
        let pos = rng.gen_range(0..=v.len());
        let l = Letter { gen: rng.gen_range(0..2), inv: rng.gen_bool(0.5) };
        v.0.splice(pos..pos, [l, Letter { gen: l.gen, inv: !l.inv }]);
        if free_reduce(&u) != free_reduce(&v) || !metabelian_eq(&u, &v).unwrap() {
            return (i, Some(format!("{u:?}")));
        }
    }
    (1000, None)
}

fn thompson_congruence(rng: &mut ChaCha8Rng) -> (usize, Option<String>) {
    for i in 0..1000 {
        let (u, v, w) = (group_word(rng, 4, 5), group_word(rng, 4, 5), group_word(rng, 4, 5));
        let nu = thompson_normal_form(&u);
        if thompson_normal_form(&nu.to_word()) != nu {
            return (i, Some(format!("normal form of {u:?} not idempotent")));
        }
        let pos = GroupWord(u.0.iter().map(|l| Letter { gen: l.gen, inv: false }).collect());
        if !thompson_normal_form(&pos).is_positive() {
            return (i, Some(format!("{pos:?} not positive")));
        }
        // u ~ nf(u) must survive multiplication on both sides.
        let lhs = thompson_normal_form(&w.concat(&u).concat(&v));
        let rhs = thompson_normal_form(&w.concat(&nu.to_word()).concat(&v));
        if lhs != rhs {
            return (i, Some(format!("{w:?} {u:?} {v:?}")));
        }
    }
    (1000, None)
}

fn positive_closed(rng: &mut ChaCha8Rng) -> (usize, Option<String>) {
    let oracles: Vec<Box<dyn GroupOracle>> = vec![
        Box::new(crate::oracles::FreeGroup::new(2)),
        Box::new(crate::oracles::FreeAbelianGroup::new(2)),
        Box::new(MetabelianGroup::default()),
        Box::new(crate::oracles::ThompsonGroup::new(None)),
    ];
    let mut n = 0;
    for o in &oracles {
        for _ in 0..100 {
            n += 1;
            let gens = o.rank().unwrap_or(4) as u32;
            // Positive elements written with inverse letters that cancel.
            let u = monoid_word(rng, gens, 4).to_group();
            let v = monoid_word(rng, gens, 4).to_group();
            let x = group_word(rng, gens, 2);
            let u = x.concat(&u).concat(&x.inverse());
            let v = x.concat(&v).concat(&x.inverse());
            if o.is_positive(&u).is_yes() && o.is_positive(&v).is_yes() && !o.is_positive(&u.concat(&v)).is_yes() {
                return (n, Some(format!("{}: {u:?} {v:?}", o.name())));
            }
        }
    }
    (n, None)
}

fn random_chain<M: Monoid>(rng: &mut ChaCha8Rng, m: &M, depth: usize) -> HullElement<M::Elem> {
    let gens = m.generators();
    let n = rng.gen_range(0..=depth);
    HullElement {
        moves: (0..n)
            .map(|_| {
                let g = gens[rng.gen_range(0..gens.len())].clone();
                if rng.gen_bool(0.5) {
                    Move::LeftMult(g)
                } else {
                    Move::LeftDivide(g)
                }
            })
            .collect(),
    }
}

fn random_elem<M: Monoid>(rng: &mut ChaCha8Rng, m: &M, max_len: usize) -> M::Elem {
    let gens = m.generators();
    let n = rng.gen_range(0..=max_len);
    (0..n).fold(m.identity(), |acc, _| m.mul(&acc, &gens[rng.gen_range(0..gens.len())]))
}

fn ideal_monoids() -> Vec<crate::catalog::CatalogEntry> {
    ["free2", "nat2", "numerical:1", "raam:path3", "quad-ring-ax-b", "axb-Z"]
        .iter()
        .map(|n| lookup(n).expect("catalog entry"))
        .collect()
}

fn right_ideal_law(rng: &mut ChaCha8Rng) -> (usize, Option<String>) {
    let entries = ideal_monoids();
    for i in 0..1000 {
        let entry = &entries[i % entries.len()];
        let bad = crate::with_backend!(&entry.backend, m => {
            let x = random_chain(rng, m, 3);
            let e = random_elem(rng, m, 4);
            let r = random_elem(rng, m, 3);
            in_hull_image(m, &x, &e) == Tri::Yes && in_hull_image(m, &x, &m.mul(&e, &r)) != Tri::Yes
        });
        if bad {
            return (i, Some(entry.name.clone()));
        }
    }
    (1000, None)
}

fn hull_functional(rng: &mut ChaCha8Rng) -> (usize, Option<String>) {
    let entries = ideal_monoids();
    for i in 0..1000 {
        let entry = &entries[i % entries.len()];
        let bad = crate::with_backend!(&entry.backend, m => {
            let s = random_chain(rng, m, 3);
            let x = random_elem(rng, m, 4);
            let r = random_elem(rng, m, 3);
            match (apply_hull(m, &s, &x), apply_hull(m, &s, &m.mul(&x, &r))) {
                (Applied::Defined(sx), Applied::Defined(sxr)) => m.mul(&sx, &r) != sxr,
                (Applied::Defined(_), Applied::Undefined) => true,
                _ => false,
            }
        });
        if bad {
            return (i, Some(entry.name.clone()));
        }
    }
    (1000, None)
}

fn semilattice_laws(_: &mut ChaCha8Rng) -> (usize, Option<String>) {
    let mut n = 0;
    for name in ["nat", "free2", "nat2", "free-product:3"] {
        let entry = lookup(name).expect("entry");
        let result = crate::with_backend!(&entry.backend, m => truncation(m, 2, 6, 20));
        let e = match result {
            Ok(e) => e,
            Err(err) => return (n, Some(format!("{name}: {err}"))),
        };
        n += 1;
        let chars = enumerate_characters(&e).expect("bounded");
        if chars.iter().any(|c| !e.is_filter(&c.filter)) {
            return (n, Some(format!("{name}: non-filter character")));
        }
        if !chimax_failures(&e).expect("bounded").is_empty() {
            return (n, Some(format!("{name}: chimax=0 fails")));
        }
        if !omega_contains_boundary(&e).expect("bounded") {
            return (n, Some(format!("{name}: boundary not inside Omega")));
        }
    }
    (n, None)
}

fn k_count(rng: &mut ChaCha8Rng) -> (usize, Option<String>) {
    for i in 0..200 {
        let n = rng.gen_range(1..=5);
        let edges: Vec<(usize, usize)> =
            (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).filter(|_| rng.gen_bool(0.5)).collect();
        let names: Vec<String> = (0..n).map(|v| format!("v{v}")).collect();
        let spec = GraphSpec::new(names.clone(), &edges, VertexKind::Free(1)).expect("graph");
        let sizes: Vec<usize> = (0..n).map(|_| rng.gen_range(0..=3)).collect();
        let data: Vec<VertexOrbits> = names.iter().zip(&sizes).map(|(v, &k)| VertexOrbits::synthetic(v, k)).collect();
        let d1 = graph_product_k_index("g", &spec, &data, "trivial").expect("descriptor");
        let d2 = graph_product_k_index("g", &spec, &data, "trivial").expect("descriptor");
        if d1.summands.len() != clique_count(&spec, &sizes) || d1 != d2 {
            return (i, Some(format!("edges {edges:?} sizes {sizes:?}")));
        }
    }
    (200, None)
}

fn quad_norm(rng: &mut ChaCha8Rng) -> (usize, Option<String>) {
    for i in 0..1000 {
        let a = QuadElem::new(rng.gen_range(-1000i64..=1000), rng.gen_range(-1000i64..=1000));
        let b = QuadElem::new(rng.gen_range(-1000i64..=1000), rng.gen_range(-1000i64..=1000));
        if a.mul(&b).norm() != a.norm() * b.norm() {
            return (i, Some(format!("{a} {b}")));
        }
    }
    (1000, None)
}

fn certificates(_: &mut ChaCha8Rng) -> (usize, Option<String>) {
    let cases: &[(&str, &str, Option<(&str, &str)>)] = &[
        ("independence", "numerical:1", None),
        ("independence", "quad-ring-ax-b", None),
        ("pure-infinite", "free2", None),
        ("boundary-eq", "free2", None),
        ("boundary-eq", "nat", None),
        ("toeplitz", "free2", Some(("a.a.b", "b.a"))),
        ("quasi-lattice", "numerical:1", Some(("2", "3"))),
        ("reversibility", "free2", None),
    ];
    let mut n = 0;
    for (cond, name, pq) in cases {
        let entry = lookup(name).expect("entry");
        let mut statuses = Vec::new();
        for depth in [2, 3] {
            n += 1;
            let r = match run_condition(cond, &entry, None, &Bounds::with_depth(depth), *pq) {
                Ok(r) => r,
                Err(e) => return (n, Some(format!("{cond} {name}: {e}"))),
            };
            if matches!(r.status, Status::Violated | Status::Witness) && replay(&r).ok() != Some(true) {
                return (n, Some(format!("{cond} {name}: certificate does not replay")));
            }
            statuses.push(r.status);
        }
        let flip = |a: Status, b: Status| {
            matches!((a, b), (Status::Violated, Status::Witness) | (Status::Witness, Status::Violated))
        };
        if flip(statuses[0], statuses[1]) {
            return (n, Some(format!("{cond} {name}: verdict flips with depth")));
        }
    }
    (n, None)
}
