use super::{ball_label, divides, in_range, quotient_word, render_group, Bounds, Certificate, Refuted, Report, Status};
use crate::catalog::Ambient;
use crate::ideals::{apply_hull, hull_sigma, render_hull, Applied, Div, HullElement, Monoid, Move, Tri};
use crate::oracles::free_reduce;
use crate::words::{GroupWord, MonoidWord};

/// Composition of one move per maximal same-sign block of a group word.
pub(crate) fn block_chain<M: Monoid>(m: &M, g: &GroupWord) -> Option<HullElement<M::Elem>> {
    let mut moves = Vec::new();
    let mut i = 0;
    while i < g.0.len() {
        let inv = g.0[i].inv;
        let mut j = i;
        while j < g.0.len() && g.0[j].inv == inv {
            j += 1;
        }
        let mut letters: Vec<u32> = g.0[i..j].iter().map(|l| l.gen).collect();
        if inv {
            letters.reverse();
            moves.push(Move::LeftDivide(m.from_word(&MonoidWord(letters))?));
        } else {
            moves.push(Move::LeftMult(m.from_word(&MonoidWord(letters))?));
        }
        i = j;
    }
    Some(HullElement { moves })
}

/// σ(s) = g in the ambient group, and s(y) = gy for every sampled y with gy ∈ P.
pub fn verify_hull_witness<M: Monoid>(
    m: &M,
    amb: &Ambient,
    g: &GroupWord,
    s: &HullElement<M::Elem>,
    sample: &[M::Elem],
) -> Tri {
    match amb.equal(m, &hull_sigma(m, s), g) {
        Tri::Yes => {}
        other => return other,
    }
    for y in sample {
        match amb.positive(m, &g.concat(&m.word(y).to_group())) {
            Div::No => {}
            Div::Unknown(_) => return Tri::Unknown,
            Div::Quotient(gy) => match apply_hull(m, s, y) {
                Applied::Defined(z) if z == gy => {}
                Applied::Unknown(_) => return Tri::Unknown,
                _ => return Tri::No,
            },
        }
    }
    Tri::Yes
}

pub(crate) struct RefutationData<E> {
    pub range: Vec<E>,
    pub candidates: Vec<(E, String)>,
}

/// Left divisors of p, from the ball of radius |p|.
pub(crate) fn left_divisors<M: Monoid>(m: &M, p: &M::Elem) -> Vec<M::Elem> {
    m.ball(m.length(p)).into_iter().filter(|z| divides(m, z, p) == Tri::Yes).collect()
}

/// Assuming every constructible ideal is principal, P ∩ gP would be zP with z dividing
/// every range element; each such z is excluded by g⁻¹z ∉ P or by a range element.
pub(crate) fn refute<M: Monoid>(
    m: &M,
    amb: &Ambient,
    g: &GroupWord,
    p: &M::Elem,
    sample: &[M::Elem],
) -> Option<RefutationData<M::Elem>> {
    let ginv = g.inverse();
    let mut open: Vec<M::Elem> = Vec::new();
    let mut candidates: Vec<(M::Elem, String)> = Vec::new();
    for z in left_divisors(m, p) {
        match amb.positive(m, &ginv.concat(&m.word(&z).to_group())) {
            Div::No => candidates.push((z, "g^-1 z is not in P".into())),
            Div::Unknown(_) => return None,
            Div::Quotient(_) => open.push(z),
        }
    }
    let mut range = vec![p.clone()];
    for y in sample {
        if open.is_empty() {
            break;
        }
        if in_range(m, amb, g, y) != Tri::Yes {
            continue;
        }
        let (cut, keep): (Vec<_>, Vec<_>) = open.into_iter().partition(|z| divides(m, z, y) == Tri::No);
        open = keep;
        if !cut.is_empty() {
            for z in cut {
                candidates.push((z, format!("does not divide {}", m.render(y))));
            }
            range.push(y.clone());
        }
    }
    if !open.is_empty() {
        return None;
    }
    candidates.sort_by_key(|(z, _)| (m.length(z), z.clone()));
    Some(RefutationData { range, candidates })
}

pub fn check_toeplitz<M: Monoid>(
    m: &M,
    name: &str,
    amb: &Ambient,
    p: &M::Elem,
    q: &M::Elem,
    bounds: &Bounds,
) -> Report {
    let mut report = Report::new("toeplitz", name, bounds);
    let g = quotient_word(m, p, q);
    let l = bounds.max_word_len;
    let sample = m.ball(l);
    let exact_principal = m.principal_reason().is_some() && m.division_exact();
    if exact_principal {
        if let Some(data) = refute(m, amb, &g, p, &sample) {
            report.status = Status::Violated;
            report.certificate = Certificate::Refutation {
                g: render_group(m, &g),
                p: m.render(p),
                q: m.render(q),
                range: data.range.iter().map(|y| m.render(y)).collect(),
                candidates: data.candidates.iter().map(|(z, r)| super::Refuted { z: m.render(z), reason: r.clone() }).collect(),
            };
            report.citations.push("Toeplitz condition for principal constructible ideals: P ∩ gP must be principal".into());
            return report;
        }
    }
    let mut candidates: Vec<(HullElement<M::Elem>, &str)> = Vec::new();
    if let Some(s) = block_chain(m, &free_reduce(&g)) {
        candidates.push((s, "syllable composition"));
    }
    for v in &sample {
        if let Div::Quotient(u) = amb.positive(m, &g.concat(&m.word(v).to_group())) {
            candidates.push((HullElement { moves: vec![Move::LeftMult(u), Move::LeftDivide(v.clone())] }, "two-move chain"));
        }
    }
    let mut unknown = false;
    for (s, how) in candidates {
        match verify_hull_witness(m, amb, &g, &s, &sample) {
            Tri::Yes => {
                report.status = Status::Witness;
                report.certificate = Certificate::HullWitness {
                    g: render_group(m, &g),
                    hull: render_hull(m, &s),
                    domain_check: ball_label(l),
                };
                report.notes.push(format!("witness found as a {how}"));
                report.citations.push("Toeplitz condition: x -> gx on P ∩ g^-1 P lies in the left inverse hull".into());
                return report;
            }
            Tri::Unknown => unknown = true,
            Tri::No => {}
        }
    }
    report.status = Status::Unknown;
    if unknown {
        report.notes.push("ambient positivity undecided for some sampled element".into());
    }
    report.notes.push("no hull witness and no refutation within the bounds".into());
    report
}

/// Re-verifies a refutation certificate.
pub(crate) fn replay_refutation<M: Monoid>(
    m: &M,
    amb: &Ambient,
    g: &GroupWord,
    p: &M::Elem,
    range: &[M::Elem],
    candidates: &[Refuted],
) -> bool {
    if m.principal_reason().is_none() || range.iter().any(|y| in_range(m, amb, g, y) != Tri::Yes) {
        return false;
    }
    let divisors = left_divisors(m, p);
    if divisors.len() != candidates.len() {
        return false;
    }
    let ginv = g.inverse();
    divisors.iter().all(|z| {
        candidates.iter().any(|c| {
            c.z == m.render(z)
                && if c.reason == "g^-1 z is not in P" {
                    amb.positive(m, &ginv.concat(&m.word(z).to_group())) == Div::No
                } else if let Some(y) = c.reason.strip_prefix("does not divide ") {
                    range.iter().any(|r| m.render(r) == y && divides(m, z, r) == Tri::No)
                } else {
                    false
                }
        })
    })
}
