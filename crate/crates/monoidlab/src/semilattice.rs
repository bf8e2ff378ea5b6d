//! Finite truncations of the constructible ideal semilattice, their characters,
//! maximal characters and the Ω subspace.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::ideals::{
    close_under_intersection, enumerate_ideals, render_hull, HullElement, IdealContext, Monoid, Tri,
};

pub const DEFAULT_BOUND: usize = 20;

/// X = ∪ parts, by element index.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cover {
    pub whole: usize,
    pub parts: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteSemilattice {
    pub elements: Vec<String>,
    pub meet: Vec<Vec<usize>>,
    pub zero: Option<usize>,
    pub covers: Vec<Cover>,
    pub depth: Option<usize>,
}

/// A character, stored as its filter χ⁻¹(1).
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Character {
    pub filter: BTreeSet<usize>,
}

impl FiniteSemilattice {
    pub fn new(elements: Vec<String>, meet: Vec<Vec<usize>>, zero: Option<usize>, covers: Vec<Cover>) -> Result<Self> {
        let n = elements.len();
        if meet.len() != n || meet.iter().any(|row| row.len() != n || row.iter().any(|&x| x >= n)) {
            return Err(Error::Invalid(format!("meet table must be {n}x{n} over 0..{n}")));
        }
        for a in 0..n {
            if meet[a][a] != a {
                return Err(Error::Invalid(format!("meet not idempotent at {}", elements[a])));
            }
            for b in 0..n {
                if meet[a][b] != meet[b][a] {
                    return Err(Error::Invalid(format!("meet not commutative at {},{}", elements[a], elements[b])));
                }
                for c in 0..n {
                    if meet[meet[a][b]][c] != meet[a][meet[b][c]] {
                        return Err(Error::Invalid("meet not associative".into()));
                    }
                }
            }
        }
        if let Some(z) = zero {
            if z >= n || (0..n).any(|e| meet[z][e] != z) {
                return Err(Error::Invalid("zero does not absorb".into()));
            }
        }
        for c in &covers {
            if c.whole >= n || c.parts.iter().any(|&p| p >= n || meet[p][c.whole] != p) {
                return Err(Error::Invalid("cover parts must lie below the covered element".into()));
            }
        }
        Ok(FiniteSemilattice { elements, meet, zero, covers, depth: None })
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// a ≤ b.
    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.meet[a][b] == a
    }

    pub fn nonzero(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.len()).filter(move |&e| Some(e) != self.zero)
    }

    /// The three filter axioms plus avoidance of zero.
    pub fn is_filter(&self, f: &BTreeSet<usize>) -> bool {
        if f.is_empty() || self.zero.is_some_and(|z| f.contains(&z)) {
            return false;
        }
        let up = f.iter().all(|&a| (0..self.len()).all(|b| !self.leq(a, b) || f.contains(&b)));
        let closed = f.iter().all(|&a| f.iter().all(|&b| f.contains(&self.meet[a][b])));
        up && closed
    }

    /// ↑e.
    pub fn principal_filter(&self, e: usize) -> BTreeSet<usize> {
        (0..self.len()).filter(|&b| self.leq(e, b)).collect()
    }

    pub fn chi(c: &Character, e: usize) -> bool {
        c.filter.contains(&e)
    }

    pub fn dump(&self) -> String {
        let mut out = String::new();
        if let Some(d) = self.depth {
            let _ = writeln!(out, "depth {d}");
        }
        out.push_str("elements\n");
        for (i, e) in self.elements.iter().enumerate() {
            let mark = if Some(i) == self.zero { " zero" } else { "" };
            let _ = writeln!(out, "{i} {e}{mark}");
        }
        out.push_str("meet\n");
        for row in &self.meet {
            let cells: Vec<String> = row.iter().map(usize::to_string).collect();
            let _ = writeln!(out, "{}", cells.join(" "));
        }
        out.push_str("covers\n");
        for c in &self.covers {
            let parts: Vec<String> = c.parts.iter().map(usize::to_string).collect();
            let _ = writeln!(out, "{} = {}", c.whole, parts.join(" | "));
        }
        out
    }

    pub fn parse_dump(text: &str) -> Result<Self> {
        let mut section = "";
        let mut elements = Vec::new();
        let mut zero = None;
        let mut meet = Vec::new();
        let mut covers = Vec::new();
        let mut depth = None;
        let bad = |l: &str| Error::Invalid(format!("bad semilattice line `{l}`"));
        for line in text.lines().map(str::trim).filter(|l| !l.is_empty()) {
            match line {
                "elements" | "meet" | "covers" => {
                    section = if line == "elements" { "e" } else if line == "meet" { "m" } else { "c" };
                    continue;
                }
                _ => {}
            }
            if let Some(d) = line.strip_prefix("depth ") {
                depth = Some(d.parse().map_err(|_| bad(line))?);
                continue;
            }
            match section {
                "e" => {
                    let (i, rest) = line.split_once(' ').ok_or_else(|| bad(line))?;
                    if i.parse::<usize>().ok() != Some(elements.len()) {
                        return Err(bad(line));
                    }
                    let name = match rest.strip_suffix(" zero") {
                        Some(n) => {
                            zero = Some(elements.len());
                            n
                        }
                        None => rest,
                    };
                    elements.push(name.to_string());
                }
                "m" => meet.push(line.split_whitespace().map(|c| c.parse().map_err(|_| bad(line))).collect::<Result<Vec<usize>>>()?),
                "c" => {
                    let (w, parts) = line.split_once('=').ok_or_else(|| bad(line))?;
                    covers.push(Cover {
                        whole: w.trim().parse().map_err(|_| bad(line))?,
                        parts: parts.split('|').map(|p| p.trim().parse().map_err(|_| bad(line))).collect::<Result<_>>()?,
                    });
                }
                _ => return Err(bad(line)),
            }
        }
        let mut s = FiniteSemilattice::new(elements, meet, zero, covers)?;
        s.depth = depth;
        Ok(s)
    }
}

/// Semilattice on the given ideals, closed under intersection. Equality is by ideal
/// key; covers are recorded for elements that are the union of the elements strictly
/// below them, checked exactly or on the sample ball.
pub fn semilattice_of<M: Monoid>(
    m: &M,
    chains: Vec<HullElement<M::Elem>>,
    sample_len: usize,
    bound: usize,
) -> Result<FiniteSemilattice> {
    let ctx = IdealContext::new(m, sample_len);
    let mut keys: BTreeMap<String, usize> = BTreeMap::new();
    let mut elems: Vec<(HullElement<M::Elem>, Vec<Tri>, bool)> = Vec::new();
    let mut queue: Vec<HullElement<M::Elem>> = chains;
    let mut zero = None;
    let mut qi = 0;
    while qi < queue.len() {
        let chain = queue[qi].clone();
        qi += 1;
        let (key, _, bits) = ctx.key(&chain);
        let empty = ctx.is_empty(&chain, &bits);
        let key = if empty { "empty".to_string() } else { key };
        if keys.contains_key(&key) {
            continue;
        }
        if elems.len() >= bound {
            return Err(Error::TooLarge(elems.len() + 1, bound));
        }
        let bits = if bits.is_empty() { ctx.bits(&chain) } else { bits };
        if empty {
            zero = Some(elems.len());
        }
        keys.insert(key, elems.len());
        for (other, _, _) in &elems {
            queue.push(other.intersect(&chain));
        }
        elems.push((chain, bits, empty));
    }
    let n = elems.len();
    let mut meet = vec![vec![0; n]; n];
    for a in 0..n {
        for b in 0..n {
            let chain = elems[a].0.intersect(&elems[b].0);
            let (key, _, bits) = ctx.key(&chain);
            let key = if ctx.is_empty(&chain, &bits) { "empty".to_string() } else { key };
            meet[a][b] = *keys.get(&key).ok_or_else(|| Error::Invalid("truncation not closed under intersection".into()))?;
        }
    }
    let names = elems
        .iter()
        .map(|(c, bits, empty)| {
            if *empty {
                "empty".to_string()
            } else if let Some(p) = ctx.principal_generator(c, bits) {
                m.render_principal(&p)
            } else {
                m.describe_ideal(c).unwrap_or_else(|| render_hull(m, c))
            }
        })
        .collect();
    let mut lattice = FiniteSemilattice::new(names, meet, zero, Vec::new())?;
    let sample = ctx.sample();
    for x in lattice.nonzero().collect::<Vec<_>>() {
        let below: Vec<usize> = lattice.nonzero().filter(|&y| y != x && lattice.leq(y, x)).collect();
        let maximal: Vec<usize> =
            below.iter().copied().filter(|&y| !below.iter().any(|&z| z != y && lattice.leq(y, z))).collect();
        if maximal.len() < 2 {
            continue;
        }
        let covered = (0..sample.len()).all(|i| {
            elems[x].1[i] != Tri::Yes || maximal.iter().any(|&y| elems[y].1[i] == Tri::Yes)
        });
        if covered {
            lattice.covers.push(Cover { whole: x, parts: maximal });
        }
    }
    Ok(lattice)
}

/// Depth-d truncation from the breadth-first ideal enumeration, closed under intersection.
pub fn truncation<M: Monoid>(m: &M, depth: usize, sample_len: usize, bound: usize) -> Result<FiniteSemilattice> {
    let en = close_under_intersection(m, enumerate_ideals(m, depth, sample_len, bound + 1)?, bound + 1);
    if en.truncated {
        return Err(Error::TooLarge(en.entries.len(), bound));
    }
    let mut s = semilattice_of(m, en.entries.into_iter().map(|e| e.chain).collect(), sample_len, bound)?;
    s.depth = Some(depth);
    Ok(s)
}

/// In a finite semilattice every filter is ↑e for its least element e, so characters
/// correspond to nonzero elements.
pub fn enumerate_characters(e: &FiniteSemilattice) -> Result<Vec<Character>> {
    enumerate_characters_bounded(e, DEFAULT_BOUND)
}

pub fn enumerate_characters_bounded(e: &FiniteSemilattice, bound: usize) -> Result<Vec<Character>> {
    if e.len() > bound {
        return Err(Error::TooLarge(e.len(), bound));
    }
    Ok(e.nonzero().map(|x| Character { filter: e.principal_filter(x) }).collect())
}

/// Maximal characters and the boundary; on a finite truncation the closure is trivial.
pub fn max_and_boundary(e: &FiniteSemilattice) -> Result<(Vec<Character>, Vec<Character>)> {
    let chars = enumerate_characters(e)?;
    let max: Vec<Character> = chars
        .iter()
        .filter(|c| !chars.iter().any(|d| d.filter.len() > c.filter.len() && d.filter.is_superset(&c.filter)))
        .cloned()
        .collect();
    Ok((max.clone(), max))
}

pub fn omega_subspace(e: &FiniteSemilattice) -> Result<Vec<Character>> {
    Ok(enumerate_characters(e)?
        .into_iter()
        .filter(|c| e.covers.iter().all(|cv| !c.filter.contains(&cv.whole) || cv.parts.iter().any(|p| c.filter.contains(p))))
        .collect())
}

/// Failures of: χ maximal and χ(x) = 0 imply some f with χ(f) = 1 and xf = 0.
pub fn chimax_failures(e: &FiniteSemilattice) -> Result<Vec<(Character, usize)>> {
    let (max, _) = max_and_boundary(e)?;
    let mut out = Vec::new();
    for c in &max {
        for x in 0..e.len() {
            if c.filter.contains(&x) {
                continue;
            }
            let separated = c.filter.iter().any(|&f| Some(e.meet[x][f]) == e.zero);
            if !separated {
                out.push((c.clone(), x));
            }
        }
    }
    Ok(out)
}

pub fn omega_contains_boundary(e: &FiniteSemilattice) -> Result<bool> {
    let omega = omega_subspace(e)?;
    let (_, boundary) = max_and_boundary(e)?;
    Ok(boundary.iter().all(|c| omega.contains(c)))
}

/// Human summary used by the `boundary` command.
pub fn boundary_report(e: &FiniteSemilattice) -> Result<String> {
    let chars = enumerate_characters(e)?;
    let (max, _) = max_and_boundary(e)?;
    let omega = omega_subspace(e)?;
    let fails = chimax_failures(e)?;
    let name = |c: &Character| {
        let v: Vec<&str> = c.filter.iter().map(|&i| e.elements[i].as_str()).collect();
        format!("{{{}}}", v.join(", "))
    };
    let mut out = e.dump();
    let _ = writeln!(out, "characters {}", chars.len());
    for c in &chars {
        let tags = [(max.contains(c), "max"), (omega.contains(c), "omega")];
        let t: Vec<&str> = tags.iter().filter(|(b, _)| *b).map(|(_, s)| *s).collect();
        let _ = writeln!(out, "  {} {}", name(c), t.join(" "));
    }
    let _ = writeln!(out, "boundary = max (finite truncation)");
    if fails.is_empty() {
        let _ = writeln!(out, "chimax=0 holds");
    } else {
        let _ = writeln!(out, "chimax=0 fails at {} pairs: truncation not saturated", fails.len());
    }
    Ok(out)
}
