use std::collections::HashSet;

use super::{ball_label, divides, member, Bounds, Certificate, Report, Status};
use crate::catalog::{Backend, CatalogEntry};
use crate::ideals::{enumerate_ideals, minimal_elements, render_hull, HullElement, IdealContext, Monoid, Tri};
use crate::with_backend;

const PART_RADIUS: usize = 4;
const MAX_ENTRIES: usize = 400;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoverProof<E> {
    pub strict: Vec<E>,
    pub union_check: String,
}

/// Checks X = ∪ pᵢP with pᵢP ⊊ X: exactly when the backend decides unions,
/// otherwise on every element of `sample` (the ball of radius `sample_len`).
pub fn verify_cover<M: Monoid>(
    m: &M,
    x: &HullElement<M::Elem>,
    parts: &[M::Elem],
    sample: &[M::Elem],
    sample_len: usize,
) -> Option<CoverProof<M::Elem>> {
    if parts.len() < 2 || parts.iter().any(|p| member(m, x, p) != Tri::Yes) {
        return None;
    }
    let mut strict = Vec::new();
    for p in parts {
        let w = sample.iter().find(|w| member(m, x, w) == Tri::Yes && divides(m, p, w) == Tri::No)?;
        strict.push(w.clone());
    }
    let union_check = match m.exact_union(x, parts) {
        Some(true) => "exact".to_string(),
        Some(false) => return None,
        None => {
            for y in sample {
                match member(m, x, y) {
                    Tri::No => {}
                    Tri::Unknown => return None,
                    Tri::Yes => {
                        if !parts.iter().any(|p| divides(m, p, y) == Tri::Yes) {
                            return None;
                        }
                    }
                }
            }
            ball_label(sample_len)
        }
    };
    Some(CoverProof { strict, union_check })
}

pub fn check_independence(entry: &CatalogEntry, bounds: &Bounds) -> Report {
    let ring_first = matches!(entry.backend, Backend::Quad(_));
    let graph = matches!(entry.backend, Backend::Graph(_));
    with_backend!(&entry.backend, m => independence(m, &entry.name, bounds, ring_first, graph))
}

fn independence<M: Monoid>(m: &M, name: &str, bounds: &Bounds, ring_first: bool, graph: bool) -> Report {
    let mut report = Report::new("independence", name, bounds);
    if let Some(reason) = m.principal_reason() {
        report.status = Status::Proved;
        report.certificate = Certificate::Criterion { reason };
        report.citations.push("principal constructible ideals imply independence".into());
        if graph {
            report.citations.push("graph products of monoids with independence satisfy independence".into());
        }
        return report;
    }
    let l = bounds.max_word_len;
    let ctx = IdealContext::new(m, l);
    let small = m.ball(l.min(PART_RADIUS));
    let mut chains: Vec<(HullElement<M::Elem>, Option<String>)> = Vec::new();
    let gens = m.generators();
    if ring_first {
        // Quotients q⁻¹(pP) of generators, where non-principal ideals of a non-maximal order appear.
        for q in &gens {
            for p in &gens {
                if p != q {
                    chains.push((
                        HullElement { moves: vec![crate::ideals::Move::LeftDivide(q.clone()), crate::ideals::Move::LeftMult(p.clone())] },
                        Some(format!("{}^-1({})", m.render(q), m.render_principal(p))),
                    ));
                }
            }
        }
    }
    // Pairwise intersections pP ∩ qP.
    let pair_ball = m.ball((bounds.depth / 3).max(1));
    for (i, p) in pair_ball.iter().enumerate() {
        for q in &pair_ball[i + 1..] {
            if *p != m.identity() {
                chains.push((
                    HullElement::mult(p.clone()).intersect(&HullElement::mult(q.clone())),
                    Some(format!("({}) ∩ ({})", m.render_principal(p), m.render_principal(q))),
                ));
            }
        }
    }
    let mut truncated = false;
    let mut inexact = false;
    match enumerate_ideals(m, bounds.depth, l, MAX_ENTRIES) {
        Ok(en) => {
            truncated = en.truncated;
            inexact = !en.exact;
            chains.extend(en.entries.into_iter().filter(|e| !e.empty && e.principal.is_none()).map(|e| (e.chain, None)));
        }
        Err(e) => report.notes.push(e.to_string()),
    }
    let mut seen = HashSet::new();
    for (chain, origin) in chains {
        let (key, _, bits) = ctx.key(&chain);
        if !seen.insert(key) || ctx.is_empty(&chain, &bits) || ctx.principal_generator(&chain, &bits).is_some() {
            continue;
        }
        let members: Vec<M::Elem> = small.iter().filter(|x| member(m, &chain, x) == Tri::Yes).cloned().collect();
        let parts = minimal_elements(m, &members);
        let sample: &[M::Elem] = if m.exact_union(&chain, &parts).is_some() { &small } else { ctx.sample() };
        if let Some(proof) = verify_cover(m, &chain, &parts, sample, l) {
            report.status = Status::Violated;
            report.certificate = Certificate::Cover {
                ideal: render_hull(m, &chain),
                description: m.describe_ideal(&chain),
                parts: parts.iter().map(|p| m.render_principal(p)).collect(),
                strict: proof.strict.iter().map(|w| m.render(w)).collect(),
                union_check: proof.union_check,
            };
            if let Some(o) = origin {
                report.notes.push(format!("X = {o}"));
            }
            report.citations.push("independence: a constructible ideal is not a union of strictly smaller ones".into());
            return report;
        }
    }
    report.status = Status::NoViolationUpToBound;
    report.certificate = Certificate::None;
    if truncated {
        report.notes.push(format!("ideal enumeration stopped at {MAX_ENTRIES} entries"));
    }
    if inexact {
        report.notes.push("ideal equality decided by membership on the sample ball only".into());
    }
    report
}
