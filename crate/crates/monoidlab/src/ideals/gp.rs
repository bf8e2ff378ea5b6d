//! Exact standard forms p(∏ X_w)·P for constructible right ideals of graph products
//! whose vertex monoids are free or free abelian cones. Vertex ideals are then
//! principal, X_w = x_w P_w, and are stored by their generator x_w.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::{Div, HullElement, Monoid, Move};
use crate::error::{Error, Result};
use crate::graphprod::{GPWord, GraphProduct, VertexId, VertexKind};
use crate::words::{GroupWord, MonoidWord};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GpStandard {
    pub p: GPWord,
    /// w ↦ x_w with X_w = x_w P_w, x_w ≠ e.
    pub factors: BTreeMap<VertexId, GroupWord>,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum GpIdeal {
    Empty,
    Full,
    Std(GpStandard),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Comparison {
    Equal,
    XinY,
    YinX,
    Incomparable,
}

fn clique(gp: &GraphProduct, ws: &[VertexId]) -> bool {
    gp.spec.is_clique(ws)
}

/// Generator of q⁻¹(x P_v): `None` for ∅, the empty word for P_v.
fn vertex_divide(kind: VertexKind, q: &GroupWord, x: &GroupWord) -> Option<GroupWord> {
    let m = kind.meet(q, x)?;
    kind.left_divide(q, &m)
}

/// Standard form of p(∏ x_w P_w)·P. Final syllables of p at vertices adjacent to the
/// rest of W are absorbed, including vertices already in W, which makes the form unique.
pub fn gp_standard_form(gp: &GraphProduct, p: &GPWord, factors: &BTreeMap<VertexId, GroupWord>) -> GpIdeal {
    let mut f: BTreeMap<VertexId, GroupWord> = BTreeMap::new();
    for (&w, x) in factors {
        let x = gp.kind(w).normal_form(x);
        if !x.is_empty() {
            f.insert(w, x);
        }
    }
    let ws: Vec<VertexId> = f.keys().copied().collect();
    if !clique(gp, &ws) {
        return GpIdeal::Empty;
    }
    let mut p = gp.normal_form(p);
    while !p.is_identity() {
        let pick = gp
            .final_vertices(&p)
            .into_iter()
            .find(|&v| f.keys().all(|&w| w == v || gp.spec.adjacent(v, w)));
        let Some(v) = pick else { break };
        let pr = gp.final_syllable(&p, v);
        p = gp.strip_final(&p, v);
        let kind = gp.kind(v);
        let merged = match f.get(&v) {
            Some(x) => kind.mul(&pr, x),
            None => pr,
        };
        f.insert(v, merged);
    }
    if p.is_identity() && f.is_empty() {
        GpIdeal::Full
    } else {
        GpIdeal::Std(GpStandard { p, factors: f })
    }
}

pub fn gp_principal(gp: &GraphProduct, p: &GPWord) -> GpIdeal {
    gp_standard_form(gp, p, &BTreeMap::new())
}

pub fn gp_left_mult(gp: &GraphProduct, q: &GPWord, x: &GpIdeal) -> GpIdeal {
    match x {
        GpIdeal::Empty => GpIdeal::Empty,
        GpIdeal::Full => gp_principal(gp, q),
        GpIdeal::Std(s) => gp_standard_form(gp, &gp.multiply(q, &s.p), &s.factors),
    }
}

fn divide_syllable(gp: &GraphProduct, v: VertexId, q: &GroupWord, x: &GpIdeal) -> GpIdeal {
    let s = match x {
        GpIdeal::Empty => return GpIdeal::Empty,
        GpIdeal::Full => return GpIdeal::Full,
        GpIdeal::Std(s) => s,
    };
    let kind = gp.kind(v);
    if s.p.is_identity() {
        if let Some(xv) = s.factors.get(&v) {
            let mut f = s.factors.clone();
            match vertex_divide(kind, q, xv) {
                None => return GpIdeal::Empty,
                Some(r) => {
                    f.insert(v, r);
                }
            }
            return gp_standard_form(gp, &GPWord::identity(), &f);
        }
        if s.factors.keys().all(|&w| gp.spec.adjacent(v, w)) {
            return x.clone();
        }
        return GpIdeal::Empty;
    }
    if gp.initial_vertices(&s.p).contains(&v) {
        let head = gp.initial_syllable(&s.p, v);
        if kind.left_divide(q, &head).is_none() {
            return GpIdeal::Empty;
        }
        let qinv = GPWord::single(v, q.inverse());
        return gp_standard_form(gp, &gp.multiply(&qinv, &s.p), &s.factors);
    }
    let support: Vec<VertexId> = s.p.syllables.iter().map(|t| t.vertex).collect();
    if !support.contains(&v) && support.iter().all(|&u| gp.spec.adjacent(u, v)) {
        let inner = GpIdeal::Std(GpStandard { p: GPWord::identity(), factors: s.factors.clone() });
        let inner = match &inner {
            GpIdeal::Std(t) if t.factors.is_empty() => GpIdeal::Full,
            _ => inner,
        };
        return gp_left_mult(gp, &s.p, &divide_syllable(gp, v, q, &inner));
    }
    GpIdeal::Empty
}

/// q⁻¹(X), one syllable of q at a time.
pub fn gp_left_divide(gp: &GraphProduct, q: &GPWord, x: &GpIdeal) -> GpIdeal {
    let q = gp.normal_form(q);
    let mut cur = x.clone();
    for syl in &q.syllables {
        cur = divide_syllable(gp, syl.vertex, &syl.element, &cur);
    }
    cur
}

fn merge_e_forms(gp: &GraphProduct, a: &GpIdeal, b: &GpIdeal) -> GpIdeal {
    let (fa, fb) = match (a, b) {
        (GpIdeal::Empty, _) | (_, GpIdeal::Empty) => return GpIdeal::Empty,
        (GpIdeal::Full, other) | (other, GpIdeal::Full) => return other.clone(),
        (GpIdeal::Std(x), GpIdeal::Std(y)) => (&x.factors, &y.factors),
    };
    let mut f = fa.clone();
    for (&w, y) in fb {
        let merged = match f.get(&w) {
            Some(x) => match gp.kind(w).meet(x, y) {
                Some(m) => m,
                None => return GpIdeal::Empty,
            },
            None => y.clone(),
        };
        f.insert(w, merged);
    }
    gp_standard_form(gp, &GPWord::identity(), &f)
}

fn e_part(s: &GpStandard) -> GpIdeal {
    if s.factors.is_empty() {
        GpIdeal::Full
    } else {
        GpIdeal::Std(GpStandard { p: GPWord::identity(), factors: s.factors.clone() })
    }
}

/// X ∩ Y = p·(Z ∩ p⁻¹Y) for X = pZ.
pub fn gp_intersect(gp: &GraphProduct, x: &GpIdeal, y: &GpIdeal) -> GpIdeal {
    let s = match (x, y) {
        (GpIdeal::Empty, _) | (_, GpIdeal::Empty) => return GpIdeal::Empty,
        (GpIdeal::Full, other) | (other, GpIdeal::Full) => return other.clone(),
        (GpIdeal::Std(s), _) => s,
    };
    let z = e_part(s);
    let y1 = gp_left_divide(gp, &s.p, y);
    let inner = match &y1 {
        GpIdeal::Empty => return GpIdeal::Empty,
        GpIdeal::Full => z,
        GpIdeal::Std(t) if t.p.is_identity() => merge_e_forms(gp, &z, &y1),
        GpIdeal::Std(t) => {
            let z1 = gp_left_divide(gp, &t.p, &z);
            gp_left_mult(gp, &t.p, &merge_e_forms(gp, &z1, &e_part(t)))
        }
    };
    gp_left_mult(gp, &s.p, &inner)
}

pub fn gp_member(gp: &GraphProduct, x: &GPWord, ideal: &GpIdeal) -> bool {
    let s = match ideal {
        GpIdeal::Empty => return false,
        GpIdeal::Full => return true,
        GpIdeal::Std(s) => s,
    };
    let Some(r) = gp_quotient(gp, &s.p, x) else { return false };
    s.factors.iter().all(|(&w, xw)| {
        let head = gp.initial_syllable(&r, w);
        gp.kind(w).left_divide(xw, &head).is_some()
    })
}

/// r with p·r = x in the positive cone.
pub fn gp_quotient(gp: &GraphProduct, p: &GPWord, x: &GPWord) -> Option<GPWord> {
    let r = gp.multiply(&p.inverse(), x);
    gp.is_positive(&r).then_some(r)
}

/// small ⊆ big; standard forms are principal, so this is membership of the generator.
pub fn gp_includes(gp: &GraphProduct, big: &GpIdeal, small: &GpIdeal) -> bool {
    match gp_principal_generator(gp, small) {
        None => true,
        Some(g) => gp_member(gp, &g, big),
    }
}

pub fn gp_ideal_compare(gp: &GraphProduct, x: &GpIdeal, y: &GpIdeal) -> Comparison {
    match (gp_includes(gp, y, x), gp_includes(gp, x, y)) {
        (true, true) => Comparison::Equal,
        (true, false) => Comparison::XinY,
        (false, true) => Comparison::YinX,
        (false, false) => Comparison::Incomparable,
    }
}

pub fn gp_from_hull(gp: &GraphProduct, s: &HullElement<GPWord>) -> GpIdeal {
    let mut cur = GpIdeal::Full;
    for mv in s.moves.iter().rev() {
        cur = match mv {
            Move::LeftMult(p) => gp_left_mult(gp, p, &cur),
            Move::LeftDivide(q) => gp_left_divide(gp, q, &cur),
        };
    }
    cur
}

/// p·∏ x_w; with principal vertex ideals every standard form is principal.
pub fn gp_principal_generator(gp: &GraphProduct, ideal: &GpIdeal) -> Option<GPWord> {
    match ideal {
        GpIdeal::Empty => None,
        GpIdeal::Full => Some(GPWord::identity()),
        GpIdeal::Std(s) => {
            let mut acc = s.p.clone();
            for (&w, x) in &s.factors {
                acc = gp.multiply(&acc, &GPWord::single(w, x.clone()));
            }
            Some(acc)
        }
    }
}

pub fn render_gp_ideal(gp: &GraphProduct, ideal: &GpIdeal) -> String {
    match ideal {
        GpIdeal::Empty => "empty".into(),
        GpIdeal::Full => "P".into(),
        GpIdeal::Std(s) => {
            let parts: Vec<String> = s
                .factors
                .iter()
                .map(|(&w, x)| format!("{}:{}", gp.spec.vertices[w], gp.render(&GPWord::single(w, x.clone()))))
                .collect();
            format!("std[{}; {}]", gp.render(&s.p), parts.join(", "))
        }
    }
}

impl Monoid for GraphProduct {
    type Elem = GPWord;

    fn name(&self) -> String {
        "graph-product".into()
    }

    fn identity(&self) -> GPWord {
        GPWord::identity()
    }

    fn generators(&self) -> Vec<GPWord> {
        (0..self.letters.len())
            .map(|g| {
                let (v, local) = self.letters[g];
                GPWord::single(v, GroupWord(vec![crate::words::Letter::pos(local)]))
            })
            .collect()
    }

    fn mul(&self, a: &GPWord, b: &GPWord) -> GPWord {
        self.multiply(a, b)
    }

    fn left_divide(&self, p: &GPWord, x: &GPWord) -> Div<GPWord> {
        match gp_quotient(self, p, x) {
            Some(r) => Div::Quotient(r),
            None => Div::No,
        }
    }

    fn right_divide(&self, x: &GPWord, q: &GPWord) -> Div<GPWord> {
        let r = self.multiply(x, &q.inverse());
        if self.is_positive(&r) {
            Div::Quotient(r)
        } else {
            Div::No
        }
    }

    fn length(&self, x: &GPWord) -> usize {
        GraphProduct::length(self, x)
    }

    fn word(&self, x: &GPWord) -> MonoidWord {
        self.to_group_word(x).to_monoid().unwrap_or_default()
    }

    fn render(&self, x: &GPWord) -> String {
        GraphProduct::render(self, x)
    }

    fn parse(&self, text: &str) -> Result<GPWord> {
        let w = self.parse_word(text)?;
        if !self.is_positive(&w) {
            return Err(Error::Invalid(format!("`{text}` is not in the positive cone")));
        }
        Ok(w)
    }

    fn division_exact(&self) -> bool {
        true
    }

    fn is_commutative(&self) -> bool {
        let n = self.vertex_count();
        let complete = (0..n).all(|a| (0..n).all(|b| a == b || self.spec.adjacent(a, b)));
        complete && self.spec.kinds.iter().all(|k| matches!(k, VertexKind::FreeAbelian(_) | VertexKind::Free(1)))
    }

    fn group_positive(&self, g: &GroupWord) -> Option<Div<GPWord>> {
        Some(match self.from_group_word(g).map(|x| self.normal_form(&x)) {
            Ok(x) if self.is_positive(&x) => Div::Quotient(x),
            Ok(_) => Div::No,
            Err(e) => Div::Unknown(e.to_string()),
        })
    }

    fn exact_ideal_key(&self, s: &HullElement<GPWord>) -> Option<String> {
        Some(render_gp_ideal(self, &gp_from_hull(self, s)))
    }

    fn principal_of(&self, s: &HullElement<GPWord>) -> Option<Option<GPWord>> {
        Some(gp_principal_generator(self, &gp_from_hull(self, s)))
    }

    fn exact_union(&self, x: &HullElement<GPWord>, parts: &[GPWord]) -> Option<bool> {
        let target = gp_from_hull(self, x);
        let ideals: Vec<GpIdeal> = parts.iter().map(|p| gp_principal(self, p)).collect();
        if !ideals.iter().all(|i| gp_includes(self, &target, i)) {
            return Some(false);
        }
        // Independence holds here, so a finite union equals X only if one part does.
        Some(ideals.iter().any(|i| gp_includes(self, i, &target)))
    }

    fn principal_reason(&self) -> Option<String> {
        Some(
            "graph product of free and free abelian cones: vertex ideals are principal, so every \
             nonempty standard form p(∏ x_w P_w)P equals (p·∏ x_w)P"
                .into(),
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn n2() -> GraphProduct {
        GraphProduct::parse("vertices: a b\nedges: a-b\n").unwrap()
    }

    fn free2() -> GraphProduct {
        GraphProduct::parse("vertices: a b\nedges:\n").unwrap()
    }

    #[test]
    fn principal_of_product_absorbs_all_syllables() {
        let gp = n2();
        let x = gp_principal(&gp, &gp.parse_word("a.b").unwrap());
        assert_eq!(render_gp_ideal(&gp, &x), "std[e; a:a, b:b]");
    }

    #[test]
    fn free_product_keeps_prefix() {
        let gp = free2();
        let x = gp_principal(&gp, &gp.parse_word("a.b").unwrap());
        assert_eq!(render_gp_ideal(&gp, &x), "std[a; b:b]");
    }

    #[test]
    fn disjoint_cones() {
        let gp = free2();
        let a = gp_principal(&gp, &gp.parse_word("a").unwrap());
        let b = gp_principal(&gp, &gp.parse_word("b").unwrap());
        assert_eq!(gp_intersect(&gp, &a, &b), GpIdeal::Empty);
    }

    #[test]
    fn abelian_meet_is_lcm() {
        let gp = n2();
        let a = gp_principal(&gp, &gp.parse_word("a.a").unwrap());
        let b = gp_principal(&gp, &gp.parse_word("a.b").unwrap());
        let m = gp_intersect(&gp, &a, &b);
        assert_eq!(gp_principal_generator(&gp, &m).map(|w| gp.render(&w)), Some("a.a.b".into()));
    }
}
