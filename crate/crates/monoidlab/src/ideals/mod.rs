//! Left inverse hull elements, constructible right ideals, membership and
//! bounded enumeration over a generic monoid backend.

pub mod gp;

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt::Debug;
use std::hash::Hash;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::words::MonoidWord;

/// Three-valued answer; `Unknown` never stands in for a refutation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Tri {
    Yes,
    No,
    Unknown,
}

impl Tri {
    pub fn from_bool(b: bool) -> Self {
        if b {
            Tri::Yes
        } else {
            Tri::No
        }
    }

    pub fn and(self, other: Tri) -> Tri {
        match (self, other) {
            (Tri::No, _) | (_, Tri::No) => Tri::No,
            (Tri::Yes, Tri::Yes) => Tri::Yes,
            _ => Tri::Unknown,
        }
    }

    pub fn or(self, other: Tri) -> Tri {
        match (self, other) {
            (Tri::Yes, _) | (_, Tri::Yes) => Tri::Yes,
            (Tri::No, Tri::No) => Tri::No,
            _ => Tri::Unknown,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Div<E> {
    Quotient(E),
    No,
    Unknown(String),
}

impl<E> Div<E> {
    pub fn tri(&self) -> Tri {
        match self {
            Div::Quotient(_) => Tri::Yes,
            Div::No => Tri::No,
            Div::Unknown(_) => Tri::Unknown,
        }
    }

    pub fn quotient(self) -> Option<E> {
        match self {
            Div::Quotient(r) => Some(r),
            _ => None,
        }
    }
}

/// A left cancellative monoid with a finite (possibly truncated) generating set.
pub trait Monoid {
    type Elem: Clone + Debug + PartialEq + Eq + Hash + Ord;

    fn name(&self) -> String;

    fn identity(&self) -> Self::Elem;

    fn generators(&self) -> Vec<Self::Elem>;

    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;

    /// r with p·r = x.
    fn left_divide(&self, p: &Self::Elem, x: &Self::Elem) -> Div<Self::Elem>;

    /// r with r·q = x.
    fn right_divide(&self, x: &Self::Elem, q: &Self::Elem) -> Div<Self::Elem>;

    /// Word length over `generators()`.
    fn length(&self, x: &Self::Elem) -> usize;

    /// Expression over generator indices.
    fn word(&self, x: &Self::Elem) -> MonoidWord;

    fn render(&self, x: &Self::Elem) -> String;

    fn parse(&self, text: &str) -> Result<Self::Elem>;

    /// Whether `left_divide` and `right_divide` never answer `Unknown`.
    fn division_exact(&self) -> bool {
        false
    }

    fn is_commutative(&self) -> bool {
        false
    }

    fn trivial_units(&self) -> bool {
        true
    }

    fn render_principal(&self, p: &Self::Elem) -> String {
        if *p == self.identity() {
            "P".into()
        } else {
            format!("{}*P", self.render(p))
        }
    }

    /// Exact canonical key of an ideal, when the backend can decide ideal equality.
    fn exact_ideal_key(&self, _x: &HullElement<Self::Elem>) -> Option<String> {
        None
    }

    /// Exact description of an ideal as a set, when available.
    fn describe_ideal(&self, _x: &HullElement<Self::Elem>) -> Option<String> {
        None
    }

    /// Exact decision of X = ∪ p_i P, when available.
    fn exact_union(&self, _x: &HullElement<Self::Elem>, _parts: &[Self::Elem]) -> Option<bool> {
        None
    }

    /// Exact emptiness of s(P), when decidable.
    fn exact_is_empty(&self, x: &HullElement<Self::Elem>) -> Option<bool> {
        self.exact_ideal_key(x).map(|k| k == "empty")
    }

    /// Exact principality of s(P): `Some(Some(p))` for pP, `Some(None)` when s(P) is
    /// empty or not principal, `None` when undecided.
    fn principal_of(&self, _x: &HullElement<Self::Elem>) -> Option<Option<Self::Elem>> {
        None
    }

    /// A reason why every constructible right ideal is principal or empty, when one is known.
    fn principal_reason(&self) -> Option<String> {
        None
    }

    /// The element spelled by a word over generator indices.
    fn from_word(&self, w: &MonoidWord) -> Option<Self::Elem> {
        let gens = self.generators();
        let mut x = self.identity();
        for &g in &w.0 {
            x = self.mul(&x, gens.get(g as usize)?);
        }
        Some(x)
    }

    /// The element g of the ambient group when g lies in P, for backends that carry
    /// their own group; `None` when there is none.
    fn group_positive(&self, _g: &crate::words::GroupWord) -> Option<Div<Self::Elem>> {
        None
    }

    /// Distinct elements of length ≤ radius, ordered by (length, Ord).
    fn ball(&self, radius: usize) -> Vec<Self::Elem> {
        let gens = self.generators();
        let mut seen: BTreeSet<Self::Elem> = BTreeSet::new();
        let mut layers: Vec<Vec<Self::Elem>> = vec![vec![self.identity()]];
        seen.insert(self.identity());
        for _ in 0..radius {
            let mut next = BTreeSet::new();
            for x in layers.last().expect("nonempty") {
                for g in &gens {
                    let y = self.mul(x, g);
                    if !seen.contains(&y) {
                        next.insert(y);
                    }
                }
            }
            seen.extend(next.iter().cloned());
            layers.push(next.into_iter().collect());
        }
        layers.into_iter().flatten().collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Move<E> {
    LeftMult(E),
    LeftDivide(E),
}

impl<E: Clone> Move<E> {
    pub fn inverse(&self) -> Move<E> {
        match self {
            Move::LeftMult(p) => Move::LeftDivide(p.clone()),
            Move::LeftDivide(q) => Move::LeftMult(q.clone()),
        }
    }
}

/// Composition m₀ ∘ m₁ ∘ ⋯ of moves; the last move acts first.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct HullElement<E> {
    pub moves: Vec<Move<E>>,
}

impl<E: Clone> HullElement<E> {
    pub fn identity() -> Self {
        HullElement { moves: Vec::new() }
    }

    pub fn mult(p: E) -> Self {
        HullElement { moves: vec![Move::LeftMult(p)] }
    }

    pub fn divide(q: E) -> Self {
        HullElement { moves: vec![Move::LeftDivide(q)] }
    }

    pub fn then_after(&self, inner: &HullElement<E>) -> HullElement<E> {
        let mut moves = self.moves.clone();
        moves.extend(inner.moves.iter().cloned());
        HullElement { moves }
    }

    pub fn inverse(&self) -> HullElement<E> {
        HullElement { moves: self.moves.iter().rev().map(Move::inverse).collect() }
    }

    /// s ∘ s⁻¹ ∘ t, whose image on P is s(P) ∩ t(P).
    pub fn intersect(&self, other: &HullElement<E>) -> HullElement<E> {
        self.then_after(&self.inverse()).then_after(other)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Applied<E> {
    Defined(E),
    Undefined,
    Unknown(String),
}

pub fn apply_hull<M: Monoid>(m: &M, s: &HullElement<M::Elem>, x: &M::Elem) -> Applied<M::Elem> {
    let mut cur = x.clone();
    for mv in s.moves.iter().rev() {
        cur = match mv {
            Move::LeftMult(p) => m.mul(p, &cur),
            Move::LeftDivide(q) => match m.left_divide(q, &cur) {
                Div::Quotient(r) => r,
                Div::No => return Applied::Undefined,
                Div::Unknown(why) => return Applied::Unknown(why),
            },
        };
    }
    Applied::Defined(cur)
}

/// σ(s) as a group word over generator indices: the product of the moves in listed order.
pub fn hull_sigma<M: Monoid>(m: &M, s: &HullElement<M::Elem>) -> crate::words::GroupWord {
    let mut out = crate::words::GroupWord::empty();
    for mv in &s.moves {
        let w = match mv {
            Move::LeftMult(p) => m.word(p).to_group(),
            Move::LeftDivide(q) => m.word(q).to_group().inverse(),
        };
        out = out.concat(&w);
    }
    out
}

pub fn render_hull<M: Monoid>(m: &M, s: &HullElement<M::Elem>) -> String {
    let parts: Vec<String> = s
        .moves
        .iter()
        .map(|mv| match mv {
            Move::LeftMult(p) => format!("+{}", m.render(p)),
            Move::LeftDivide(q) => format!("-{}", m.render(q)),
        })
        .collect();
    format!("hull({})", parts.join(" "))
}

pub fn parse_hull<M: Monoid>(m: &M, text: &str) -> Result<HullElement<M::Elem>> {
    let inner = text
        .trim()
        .strip_prefix("hull(")
        .and_then(|t| t.strip_suffix(')'))
        .ok_or_else(|| Error::Invalid(format!("expected hull(...), got `{text}`")))?;
    let mut moves = Vec::new();
    for tok in inner.split_whitespace() {
        let mv = if let Some(w) = tok.strip_prefix('+') {
            Move::LeftMult(m.parse(w)?)
        } else if let Some(w) = tok.strip_prefix('-') {
            Move::LeftDivide(m.parse(w)?)
        } else {
            return Err(Error::Invalid(format!("move `{tok}` must start with + or -")));
        };
        moves.push(mv);
    }
    Ok(HullElement { moves })
}

/// A constructible right ideal in one of the generic shapes. Graph products have an
/// exact standard form in [`gp::GpIdeal`].
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum RightIdeal<E> {
    Empty,
    Full,
    Principal(E),
    HullImage(HullElement<E>),
}

impl<E: Clone> RightIdeal<E> {
    /// A chain whose image on P is this ideal; `None` for the empty ideal.
    pub fn as_hull(&self) -> Option<HullElement<E>> {
        match self {
            RightIdeal::Empty => None,
            RightIdeal::Full => Some(HullElement::identity()),
            RightIdeal::Principal(p) => Some(HullElement::mult(p.clone())),
            RightIdeal::HullImage(s) => Some(s.clone()),
        }
    }
}

/// x ∈ s(P) iff the inverse chain is defined at x.
pub fn in_hull_image<M: Monoid>(m: &M, s: &HullElement<M::Elem>, x: &M::Elem) -> Tri {
    match apply_hull(m, &s.inverse(), x) {
        Applied::Defined(_) => Tri::Yes,
        Applied::Undefined => Tri::No,
        Applied::Unknown(_) => Tri::Unknown,
    }
}

pub fn ideal_membership<M: Monoid>(m: &M, x: &M::Elem, ideal: &RightIdeal<M::Elem>) -> Tri {
    match ideal {
        RightIdeal::Empty => Tri::No,
        RightIdeal::Full => Tri::Yes,
        RightIdeal::Principal(p) => m.left_divide(p, x).tri(),
        RightIdeal::HullImage(s) => in_hull_image(m, s, x),
    }
}

pub fn render_ideal<M: Monoid>(m: &M, ideal: &RightIdeal<M::Elem>) -> String {
    match ideal {
        RightIdeal::Empty => "empty".into(),
        RightIdeal::Full => "P".into(),
        RightIdeal::Principal(p) => m.render_principal(p),
        RightIdeal::HullImage(s) => render_hull(m, s),
    }
}

pub fn parse_ideal<M: Monoid>(m: &M, text: &str) -> Result<RightIdeal<M::Elem>> {
    let t = text.trim();
    if t == "empty" {
        return Ok(RightIdeal::Empty);
    }
    if t == "P" {
        return Ok(RightIdeal::Full);
    }
    if t.starts_with("hull(") {
        return Ok(RightIdeal::HullImage(parse_hull(m, t)?));
    }
    let p = t
        .strip_suffix("*P")
        .or_else(|| t.strip_suffix("+P"))
        .ok_or_else(|| Error::Invalid(format!("cannot parse ideal `{t}`")))?;
    Ok(RightIdeal::Principal(m.parse(p)?))
}

/// Membership vector over a fixed sample of elements.
pub fn membership_bits<M: Monoid>(m: &M, s: &HullElement<M::Elem>, sample: &[M::Elem]) -> Vec<Tri> {
    sample.iter().map(|x| in_hull_image(m, s, x)).collect()
}

fn bits_key(bits: &[Tri]) -> String {
    bits.iter()
        .map(|b| match b {
            Tri::Yes => '1',
            Tri::No => '0',
            Tri::Unknown => '?',
        })
        .collect()
}

#[derive(Clone, Debug)]
pub struct IdealEntry<E> {
    pub id: usize,
    pub chain: HullElement<E>,
    /// Exact canonical key, or the membership vector over the sample ball.
    pub key: String,
    pub exact: bool,
    /// Membership vector over the sample; empty for exact keys.
    pub bits: Vec<Tri>,
    pub empty: bool,
    /// Generator p with X = pP, when established.
    pub principal: Option<E>,
    /// Other chains with the same membership vector whose equality is not decided.
    pub unresolved: Vec<HullElement<E>>,
}

#[derive(Clone, Debug)]
pub struct IdealEnumeration<E> {
    pub entries: Vec<IdealEntry<E>>,
    pub depth: usize,
    pub sample_len: usize,
    pub exact: bool,
    /// Set when the entry limit stopped the search.
    pub truncated: bool,
}

impl<E: Clone> IdealEnumeration<E> {
    pub fn nonempty(&self) -> impl Iterator<Item = &IdealEntry<E>> {
        self.entries.iter().filter(|e| !e.empty)
    }

    pub fn all_principal(&self) -> bool {
        self.nonempty().all(|e| e.principal.is_some())
    }
}

/// Minimal elements of a finite subset under the prefix preorder p ≤ pr, one per
/// class of elements generating the same principal ideal (first in input order).
pub fn minimal_elements<M: Monoid>(m: &M, members: &[M::Elem]) -> Vec<M::Elem> {
    let below = |y: &M::Elem, x: &M::Elem| m.left_divide(y, x).tri() == Tri::Yes;
    let mut out: Vec<M::Elem> = Vec::new();
    for x in members {
        let dominated = members.iter().any(|y| y != x && below(y, x) && !below(x, y));
        if !dominated && !out.iter().any(|o| below(o, x)) {
            out.push(x.clone());
        }
    }
    out
}

/// Enumeration state: the sample ball is built on first use.
pub struct IdealContext<'a, M: Monoid> {
    pub monoid: &'a M,
    sample: std::cell::OnceCell<Vec<M::Elem>>,
    pub sample_len: usize,
}

impl<'a, M: Monoid> IdealContext<'a, M> {
    pub fn new(monoid: &'a M, sample_len: usize) -> Self {
        IdealContext { monoid, sample: std::cell::OnceCell::new(), sample_len }
    }

    pub fn with_sample(monoid: &'a M, sample_len: usize, sample: Vec<M::Elem>) -> Self {
        let cell = std::cell::OnceCell::new();
        let _ = cell.set(sample);
        IdealContext { monoid, sample: cell, sample_len }
    }

    pub fn sample(&self) -> &[M::Elem] {
        self.sample.get_or_init(|| self.monoid.ball(self.sample_len))
    }

    pub fn bits(&self, s: &HullElement<M::Elem>) -> Vec<Tri> {
        membership_bits(self.monoid, s, self.sample())
    }

    /// Key, exactness and (for inexact keys) the membership vector.
    pub fn key(&self, s: &HullElement<M::Elem>) -> (String, bool, Vec<Tri>) {
        match self.monoid.exact_ideal_key(s) {
            Some(k) => (k, true, Vec::new()),
            None => {
                let bits = self.bits(s);
                (bits_key(&bits), false, bits)
            }
        }
    }

    pub fn is_empty(&self, s: &HullElement<M::Elem>, bits: &[Tri]) -> bool {
        match self.monoid.exact_is_empty(s) {
            Some(e) => e,
            None => bits.iter().all(|b| *b == Tri::No),
        }
    }

    /// Members of s(P) in the sample.
    pub fn members(&self, s: &HullElement<M::Elem>) -> Vec<M::Elem> {
        self.sample().iter().filter(|x| in_hull_image(self.monoid, s, x) == Tri::Yes).cloned().collect()
    }

    /// X = pP for an exact backend, else for the unique minimal element p of X in the sample.
    pub fn principal_generator(&self, s: &HullElement<M::Elem>, bits: &[Tri]) -> Option<M::Elem> {
        if let Some(p) = self.monoid.principal_of(s) {
            return p;
        }
        let bits = if bits.is_empty() { self.bits(s) } else { bits.to_vec() };
        let members: Vec<M::Elem> = self
            .sample()
            .iter()
            .zip(&bits)
            .filter(|(_, b)| **b == Tri::Yes)
            .map(|(x, _)| x.clone())
            .collect();
        let mins = minimal_elements(self.monoid, &members);
        if mins.len() != 1 {
            return None;
        }
        let p = mins[0].clone();
        let ps = HullElement::mult(p.clone());
        let same = match (self.monoid.exact_ideal_key(s), self.monoid.exact_ideal_key(&ps)) {
            (Some(a), Some(b)) => a == b,
            _ => membership_bits(self.monoid, &ps, self.sample()) == bits,
        };
        same.then_some(p)
    }

    pub fn entry(&self, id: usize, chain: HullElement<M::Elem>) -> IdealEntry<M::Elem> {
        let (key, exact, bits) = self.key(&chain);
        let empty = self.is_empty(&chain, &bits);
        let principal = if empty { None } else { self.principal_generator(&chain, &bits) };
        IdealEntry { id, chain, key, exact, bits, empty, principal, unresolved: Vec::new() }
    }
}

/// Breadth-first enumeration of s(P) over chains of single-generator moves with at
/// most `depth` moves. Equal keys are grouped; without an exact key the grouping is
/// recorded as unresolved rather than asserted.
pub fn enumerate_ideals<M: Monoid>(
    m: &M,
    depth: usize,
    sample_len: usize,
    max_entries: usize,
) -> Result<IdealEnumeration<M::Elem>> {
    if depth == 0 {
        return Err(Error::Invalid("depth must be at least 1".into()));
    }
    let ctx = IdealContext::new(m, sample_len);
    let gens = m.generators();
    let mut entries = vec![ctx.entry(0, HullElement::identity())];
    let mut index: HashMap<String, usize> = HashMap::new();
    index.insert(entries[0].key.clone(), 0);
    let mut frontier = vec![0usize];
    let mut truncated = false;
    'outer: for _ in 0..depth {
        let mut next = Vec::new();
        for &i in &frontier {
            if entries[i].empty {
                continue;
            }
            for g in &gens {
                for mv in [Move::LeftMult(g.clone()), Move::LeftDivide(g.clone())] {
                    let mut moves = vec![mv];
                    moves.extend(entries[i].chain.moves.iter().cloned());
                    let chain = HullElement { moves };
                    let candidate = ctx.entry(entries.len(), chain);
                    match index.get(&candidate.key) {
                        Some(&j) => {
                            if !candidate.exact && entries[j].chain != candidate.chain && entries[j].unresolved.len() < 4 {
                                entries[j].unresolved.push(candidate.chain);
                            }
                        }
                        None => {
                            if entries.len() >= max_entries {
                                truncated = true;
                                break 'outer;
                            }
                            index.insert(candidate.key.clone(), entries.len());
                            next.push(entries.len());
                            entries.push(candidate);
                        }
                    }
                }
            }
        }
        frontier = next;
    }
    let exact = entries.iter().all(|e| e.exact);
    Ok(IdealEnumeration { entries, depth, sample_len, exact, truncated })
}

/// Closes an enumeration under intersection, keeping ids stable.
pub fn close_under_intersection<M: Monoid>(
    m: &M,
    mut en: IdealEnumeration<M::Elem>,
    max_entries: usize,
) -> IdealEnumeration<M::Elem> {
    let ctx = IdealContext::new(m, en.sample_len);
    let mut index: BTreeMap<String, usize> = en.entries.iter().map(|e| (e.key.clone(), e.id)).collect();
    let mut i = 0;
    while i < en.entries.len() {
        for j in 0..i {
            let (a, b) = (&en.entries[j], &en.entries[i]);
            if a.empty || b.empty {
                continue;
            }
            let chain = a.chain.intersect(&b.chain);
            let cand = ctx.entry(en.entries.len(), chain);
            if index.contains_key(&cand.key) {
                continue;
            }
            if en.entries.len() >= max_entries {
                en.truncated = true;
                return en;
            }
            index.insert(cand.key.clone(), cand.id);
            en.entries.push(cand);
        }
        i += 1;
    }
    en
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tri_logic() {
        assert_eq!(Tri::Yes.and(Tri::Unknown), Tri::Unknown);
        assert_eq!(Tri::No.and(Tri::Unknown), Tri::No);
        assert_eq!(Tri::Yes.or(Tri::Unknown), Tri::Yes);
    }

    #[test]
    fn hull_inverse_reverses() {
        let s: HullElement<u32> = HullElement { moves: vec![Move::LeftDivide(3), Move::LeftMult(2)] };
        assert_eq!(s.inverse().moves, vec![Move::LeftDivide(2), Move::LeftMult(3)]);
    }
}
