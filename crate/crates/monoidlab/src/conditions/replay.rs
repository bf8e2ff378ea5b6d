use super::{
    boundary::ideal_empty, check_g0, check_independence, check_omega_equals_boundary, check_pure_infiniteness,
    check_quasi_lattice, check_reversibility, member, parse_ball, parse_group, toeplitz::replay_refutation,
    verify_cover, verify_hull_witness, Certificate, Report, Side, Status,
};
use crate::catalog::{lookup, Ambient, CatalogEntry};
use crate::error::{Error, Result};
use crate::ideals::{parse_hull, parse_ideal, HullElement, Monoid, RightIdeal, Tri};
use crate::with_backend;

fn principal<M: Monoid>(m: &M, text: &str) -> Result<M::Elem> {
    match parse_ideal(m, text)? {
        RightIdeal::Full => Ok(m.identity()),
        RightIdeal::Principal(p) => Ok(p),
        _ => Err(Error::Invalid(format!("`{text}` is not principal"))),
    }
}

fn rerun(report: &Report, entry: &CatalogEntry) -> Option<Report> {
    let b = &report.bounds;
    Some(match report.condition.as_str() {
        "independence" => check_independence(entry, b),
        "reversibility-left" => check_reversibility(entry, Side::Left, b),
        "reversibility-right" => check_reversibility(entry, Side::Right, b),
        "boundary-eq" => check_omega_equals_boundary(entry, b),
        "pure-infinite" => check_pure_infiniteness(entry, b),
        "g0" => check_g0(entry, b),
        _ => return None,
    })
}

/// Re-verifies the certificate of a report. Criterion-only and empty certificates
/// are replayed by re-running the checker with the recorded bounds.
pub fn replay(report: &Report) -> Result<bool> {
    let entry = lookup(&report.semigroup)?;
    let amb = match &report.ambient {
        Some(a) => Ambient::resolve(a, &entry)?,
        None => Ambient::default_for(&entry)?,
    };
    let status = report.status;
    let l = report.bounds.max_word_len;
    let ok = with_backend!(&entry.backend, m => {
        match &report.certificate {
            Certificate::Cover { ideal, parts, union_check, .. } => {
                let x = parse_hull(m, ideal)?;
                let parts: Vec<_> = parts.iter().map(|p| principal(m, p)).collect::<Result<_>>()?;
                let radius = if union_check == "exact" { l.min(4) } else { parse_ball(union_check)? };
                let sample = m.ball(radius);
                status == Status::Violated && verify_cover(m, &x, &parts, &sample, radius).is_some()
            }
            Certificate::HullWitness { g, hull, domain_check } => {
                let g = parse_group(m, g)?;
                let s = parse_hull(m, hull)?;
                let sample = m.ball(parse_ball(domain_check)?);
                status == Status::Witness && verify_hull_witness(m, &amb, &g, &s, &sample) == Tri::Yes
            }
            Certificate::Refutation { g, p, range, candidates, .. } => {
                let g = parse_group(m, g)?;
                let p = m.parse(p)?;
                let range: Vec<_> = range.iter().map(|y| m.parse(y)).collect::<Result<_>>()?;
                status == Status::Violated && replay_refutation(m, &amb, &g, &p, &range, candidates)
            }
            Certificate::Generator { g, check, .. } | Certificate::Incomparable { g, check, .. } => {
                let gw = parse_group(m, g)?;
                let mut b = report.bounds.clone();
                b.max_word_len = parse_ball(check)?;
                let again = check_quasi_lattice(m, &report.semigroup, &amb, &gw, &b);
                again.status == status && again.certificate == report.certificate
            }
            Certificate::DisjointPair { side, p, q } => {
                let (p, q) = (m.parse(p)?, m.parse(q)?);
                if side == "left" {
                    let s = HullElement::mult(p).intersect(&HullElement::mult(q));
                    m.exact_is_empty(&s) == Some(true)
                } else {
                    rerun(report, &entry).is_some_and(|r| r.status == status && r.certificate == report.certificate)
                }
            }
            Certificate::Saturated { family, covering } => {
                let fam: Vec<_> = family.iter().map(|f| parse_hull(m, f)).collect::<Result<_>>()?;
                let gens = m.generators();
                let covered = gens.iter().all(|g| {
                    let name = m.render(g);
                    covering.iter().any(|(c, x)| {
                        *c == name && family.iter().position(|f| f == x).is_some_and(|i| member(m, &fam[i], g) == Tri::Yes)
                    })
                });
                status == Status::Violated && covered
            }
            Certificate::Families { families } => {
                let sample = m.ball(l);
                let all = families.iter().map(|w| -> Result<bool> {
                    let p = m.parse(&w.p)?;
                    let fam: Vec<_> = w.family.iter().map(|f| parse_hull(m, f)).collect::<Result<_>>()?;
                    Ok(fam.iter().all(|x| ideal_empty(m, &HullElement::mult(p.clone()).intersect(x), &sample) == Tri::Yes)
                        && fam.iter().all(|x| member(m, x, &m.identity()) != Tri::Yes))
                });
                let mut ok = true;
                for r in all {
                    ok &= r?;
                }
                ok && status != Status::Violated
            }
            Certificate::Criterion { .. } | Certificate::None | Certificate::Heads { .. } | Certificate::HeadClash { .. } => {
                rerun(report, &entry).is_some_and(|r| r.status == status && r.certificate == report.certificate)
            }
        }
    });
    Ok(ok)
}
