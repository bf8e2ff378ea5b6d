use super::{ball_label, divides, in_range, member, render_group, Bounds, Certificate, FamilyWitness, Report, Status};
use crate::catalog::{relation_heads, Backend, CatalogEntry};
use crate::graphprod::GraphProduct;
use crate::ideals::{enumerate_ideals, minimal_elements, render_hull, HullElement, IdealContext, Monoid, Tri};
use crate::with_backend;
use crate::words::{GroupWord, MonoidWord};

const FAMILY_POOL: usize = 12;
const WITNESS_RADIUS: usize = 4;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

impl Side {
    pub fn as_str(&self) -> &'static str {
        match self {
            Side::Left => "left",
            Side::Right => "right",
        }
    }
}

/// Emptiness of s(P): exact when the backend decides it, else refuted by a sampled member.
pub fn ideal_empty<M: Monoid>(m: &M, s: &HullElement<M::Elem>, sample: &[M::Elem]) -> Tri {
    if let Some(e) = m.exact_is_empty(s) {
        return Tri::from_bool(e);
    }
    if sample.iter().any(|x| member(m, s, x) == Tri::Yes) {
        Tri::No
    } else {
        Tri::Unknown
    }
}

fn reversed(gp: &GraphProduct, x: &crate::graphprod::GPWord) -> crate::graphprod::GPWord {
    let mut w = Monoid::word(gp, x).0;
    w.reverse();
    gp.from_monoid_word(&MonoidWord(w)).expect("letters of gp")
}

pub fn check_reversibility(entry: &CatalogEntry, side: Side, bounds: &Bounds) -> Report {
    with_backend!(&entry.backend, m => {
        let mut report = Report::new(&format!("reversibility-{}", side.as_str()), &entry.name, bounds);
        if m.is_commutative() {
            report.status = Status::Proved;
            report.certificate = Certificate::Criterion { reason: "commutative cancellative monoid".into() };
            report.citations.push("cancellative abelian monoids are left and right reversible".into());
            return report;
        }
        let l = bounds.max_word_len;
        let sample = m.ball(l);
        let gens = m.generators();
        let mut open = Vec::new();
        for (i, a) in gens.iter().enumerate() {
            for b in &gens[i + 1..] {
                let common = sample.iter().any(|x| match side {
                    Side::Left => divides(m, a, x) == Tri::Yes && divides(m, b, x) == Tri::Yes,
                    Side::Right => m.right_divide(x, a).tri() == Tri::Yes && m.right_divide(x, b).tri() == Tri::Yes,
                });
                if common {
                    continue;
                }
                let exact = match (side, &entry.backend) {
                    (Side::Left, _) => m.exact_is_empty(&HullElement::mult(a.clone()).intersect(&HullElement::mult(b.clone()))),
                    (Side::Right, Backend::Graph(gp)) => {
                        // Reversal maps Pp ∩ Pq onto rev(p)P ∩ rev(q)P for graph products of free and free abelian cones.
                        let (ra, rb) = (reversed(gp, &gp.from_monoid_word(&m.word(a)).expect("gp")), reversed(gp, &gp.from_monoid_word(&m.word(b)).expect("gp")));
                        gp.exact_is_empty(&HullElement::mult(ra).intersect(&HullElement::mult(rb)))
                    }
                    _ => None,
                };
                if exact == Some(true) {
                    report.status = Status::Violated;
                    report.certificate = Certificate::DisjointPair { side: side.as_str().into(), p: m.render(a), q: m.render(b) };
                    report.citations.push(format!("{} reversibility: every pair of principal {} ideals meets", side.as_str(), if side == Side::Left { "right" } else { "left" }));
                    return report;
                }
                open.push(format!("{},{}", m.render(a), m.render(b)));
            }
        }
        if open.is_empty() {
            report.status = Status::NoViolationUpToBound;
            report.notes.push(format!("every generator pair has a common {} multiple of length <= {l}", if side == Side::Left { "right" } else { "left" }));
        } else {
            report.status = Status::Unknown;
            report.notes.push(format!("no common multiple found for {}", open.join(" ")));
        }
        report
    })
}

pub fn check_quasi_lattice<M: Monoid>(
    m: &M,
    name: &str,
    amb: &crate::catalog::Ambient,
    g: &GroupWord,
    bounds: &Bounds,
) -> Report {
    let mut report = Report::new("quasi-lattice", name, bounds);
    let l = bounds.max_word_len;
    let sample = m.ball(l);
    let mut members = Vec::new();
    for y in &sample {
        match in_range(m, amb, g, y) {
            Tri::Yes => members.push(y.clone()),
            Tri::Unknown => {
                report.status = Status::Unknown;
                report.notes.push(format!("membership of {} in gP undecided", m.render(y)));
                return report;
            }
            Tri::No => {}
        }
    }
    report.citations.push("quasi-lattice order: gP ∩ P is empty or principal".into());
    if !m.trivial_units() {
        report.notes.push("P has nontrivial units".into());
    }
    let mins = minimal_elements(m, &members);
    match mins.len() {
        0 => {
            report.status = Status::Witness;
            report.certificate = Certificate::Generator { g: render_group(m, g), generator: None, check: ball_label(l) };
            report.notes.push("gP ∩ P meets no sampled element".into());
        }
        1 => {
            let p = &mins[0];
            let agrees = sample.iter().all(|y| members.contains(y) == (divides(m, p, y) == Tri::Yes));
            report.status = if agrees { Status::Witness } else { Status::Unknown };
            report.certificate = Certificate::Generator { g: render_group(m, g), generator: Some(m.render(p)), check: ball_label(l) };
        }
        _ => {
            report.status = Status::Violated;
            report.certificate = Certificate::Incomparable {
                g: render_group(m, g),
                minimal: mins.iter().map(|x| m.render(x)).collect(),
                check: ball_label(l),
            };
        }
    }
    report
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

pub fn check_omega_equals_boundary(entry: &CatalogEntry, bounds: &Bounds) -> Report {
    with_backend!(&entry.backend, m => omega(m, &entry.name, bounds))
}

fn omega<M: Monoid>(m: &M, name: &str, bounds: &Bounds) -> Report {
    let mut report = Report::new("boundary-eq", name, bounds);
    report.citations.push("boundary equals Omega iff every finite family of proper ideals admits p with pP disjoint from all".into());
    let en = match enumerate_ideals(m, bounds.depth, bounds.max_word_len, 400) {
        Ok(en) => en,
        Err(e) => {
            report.notes.push(e.to_string());
            return report;
        }
    };
    let ctx = IdealContext::new(m, bounds.max_word_len);
    let full_key = en.entries[0].key.clone();
    let pool: Vec<HullElement<M::Elem>> = en
        .entries
        .iter()
        .filter(|e| !e.empty && e.key != full_key)
        .take(FAMILY_POOL)
        .map(|e| e.chain.clone())
        .collect();
    let gens = m.generators();
    let small = m.ball(bounds.max_word_len.min(WITNESS_RADIUS));
    let mut witnesses = Vec::new();
    let mut undecided = 0usize;
    for k in 1..=bounds.family_size {
        for fam in combinations(pool.len(), k) {
            let family: Vec<&HullElement<M::Elem>> = fam.iter().map(|&i| &pool[i]).collect();
            let covering: Option<Vec<(String, String)>> = gens
                .iter()
                .map(|g| {
                    family
                        .iter()
                        .find(|x| member(m, x, g) == Tri::Yes)
                        .map(|x| (m.render(g), render_hull(m, x)))
                })
                .collect();
            if let Some(covering) = covering {
                report.status = Status::Violated;
                report.certificate = Certificate::Saturated {
                    family: family.iter().map(|x| render_hull(m, x)).collect(),
                    covering,
                };
                report.notes.push(format!("generating set of {} elements; every pP with p != e lies in a generator cone", gens.len()));
                return report;
            }
            let p = small.iter().find(|p| {
                family.iter().all(|x| ideal_empty(m, &HullElement::mult((*p).clone()).intersect(x), ctx.sample()) == Tri::Yes)
            });
            match p {
                Some(p) => witnesses.push(FamilyWitness {
                    family: family.iter().map(|x| render_hull(m, x)).collect(),
                    p: m.render(p),
                }),
                None => undecided += 1,
            }
        }
    }
    if pool.len() == FAMILY_POOL {
        report.notes.push(format!("families drawn from the first {FAMILY_POOL} proper ideals"));
    }
    report.status = if undecided == 0 { Status::Witness } else { Status::Unknown };
    if undecided > 0 {
        report.notes.push(format!("{undecided} families neither saturated nor separated"));
    }
    report.certificate = Certificate::Families { families: witnesses };
    report
}

pub fn check_pure_infiniteness(entry: &CatalogEntry, bounds: &Bounds) -> Report {
    with_backend!(&entry.backend, m => {
        let mut report = Report::new("pure-infinite", &entry.name, bounds);
        report.citations.push("boundary quotient purely infinite iff some pP ∩ qP is empty".into());
        let sample = m.ball(bounds.max_word_len);
        for (i, p) in sample.iter().enumerate() {
            for q in &sample[i + 1..] {
                let s = HullElement::mult(p.clone()).intersect(&HullElement::mult(q.clone()));
                if m.exact_is_empty(&s) == Some(true) {
                    report.status = Status::Witness;
                    report.certificate = Certificate::DisjointPair { side: "left".into(), p: m.render(p), q: m.render(q) };
                    return report;
                }
            }
        }
        report.status = Status::NoViolationUpToBound;
        report.notes.push(format!("no exactly disjoint pair in the ball of radius {}", bounds.max_word_len));
        report
    })
}

pub fn check_g0(entry: &CatalogEntry, bounds: &Bounds) -> Report {
    let mut report = Report::new("g0", &entry.name, bounds);
    let Some(pres) = entry.presentation.as_ref().filter(|p| p.completeness_declared) else {
        report.status = Status::Unknown;
        report.notes.push("needs a presentation declared complete".into());
        return report;
    };
    let heads = relation_heads(pres);
    let n = pres.generator_count() as u32;
    let name = |g: u32| pres.alphabet.name(g).to_string();
    let mut partners = Vec::new();
    for u in 0..n {
        let free = (0..n).find(|&v| v != u && !heads.contains(&(u.min(v), u.max(v))));
        match free {
            Some(v) => partners.push((name(u), name(v))),
            None => {
                report.status = Status::Violated;
                report.certificate = Certificate::HeadClash {
                    u: name(u),
                    blocked: (0..n).filter(|&v| v != u).map(name).collect(),
                };
                report.notes.push("the sufficient hypothesis fails; G0 itself is not computed".into());
                return report;
            }
        }
    }
    report.status = Status::Proved;
    report.certificate = Certificate::Heads { partners };
    report.citations.push("complete presentation with a relation-free head partner for every generator has trivial G0".into());
    report.notes.push("trivial G0 makes the boundary action topologically free".into());
    report
}
