//! Monoid and group words, finite presentations, and the ⤳_R rewriting relation.

use std::collections::{BTreeSet, HashMap, HashSet, VecDeque};
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type GeneratorId = u32;

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct MonoidWord(pub Vec<GeneratorId>);

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Letter {
    pub gen: GeneratorId,
    pub inv: bool,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GroupWord(pub Vec<Letter>);

impl Letter {
    pub fn pos(gen: GeneratorId) -> Self {
        Letter { gen, inv: false }
    }

    pub fn neg(gen: GeneratorId) -> Self {
        Letter { gen, inv: true }
    }

    pub fn inverse(self) -> Self {
        Letter { gen: self.gen, inv: !self.inv }
    }
}

impl MonoidWord {
    pub fn empty() -> Self {
        MonoidWord(Vec::new())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn concat(&self, other: &MonoidWord) -> MonoidWord {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        MonoidWord(v)
    }

    pub fn to_group(&self) -> GroupWord {
        GroupWord(self.0.iter().map(|&g| Letter::pos(g)).collect())
    }

    /// Shortlex key: shorter first, then lexicographic.
    pub fn shortlex_key(&self) -> (usize, &[GeneratorId]) {
        (self.0.len(), &self.0)
    }
}

impl From<Vec<GeneratorId>> for MonoidWord {
    fn from(v: Vec<GeneratorId>) -> Self {
        MonoidWord(v)
    }
}

impl GroupWord {
    pub fn empty() -> Self {
        GroupWord(Vec::new())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn inverse(&self) -> GroupWord {
        GroupWord(self.0.iter().rev().map(|l| l.inverse()).collect())
    }

    pub fn concat(&self, other: &GroupWord) -> GroupWord {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        GroupWord(v)
    }

    pub fn free_reduce(&self) -> GroupWord {
        let mut out: Vec<Letter> = Vec::with_capacity(self.0.len());
        for &l in &self.0 {
            if out.last() == Some(&l.inverse()) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        GroupWord(out)
    }

    pub fn is_freely_reduced(&self) -> bool {
        self.0.windows(2).all(|w| w[0] != w[1].inverse())
    }

    pub fn is_positive(&self) -> bool {
        self.0.iter().all(|l| !l.inv)
    }

    pub fn to_monoid(&self) -> Option<MonoidWord> {
        if self.is_positive() {
            Some(MonoidWord(self.0.iter().map(|l| l.gen).collect()))
        } else {
            None
        }
    }
}

/// Generator names with lookup; renders words in the dotted CLI syntax.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Alphabet {
    pub names: Vec<String>,
}

impl Alphabet {
    pub fn new<S: Into<String>>(names: impl IntoIterator<Item = S>) -> Self {
        Alphabet { names: names.into_iter().map(Into::into).collect() }
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn index(&self, name: &str) -> Option<GeneratorId> {
        self.names.iter().position(|n| n == name).map(|i| i as GeneratorId)
    }

    pub fn name(&self, g: GeneratorId) -> &str {
        &self.names[g as usize]
    }

    pub fn render_monoid(&self, w: &MonoidWord) -> String {
        if w.is_empty() {
            return "e".to_string();
        }
        let parts: Vec<&str> = w.0.iter().map(|&g| self.name(g)).collect();
        parts.join(".")
    }

    pub fn render_group(&self, w: &GroupWord) -> String {
        if w.is_empty() {
            return "e".to_string();
        }
        let mut s = String::new();
        for (i, l) in w.0.iter().enumerate() {
            if i > 0 {
                s.push('.');
            }
            s.push_str(self.name(l.gen));
            if l.inv {
                s.push_str("^-1");
            }
        }
        s
    }

    pub fn parse_monoid(&self, text: &str) -> Result<MonoidWord> {
        let g = self.parse_group(text)?;
        g.to_monoid()
            .ok_or_else(|| Error::Invalid(format!("`{text}` contains inverse letters")))
    }

    /// Dotted syntax `a.b^-1.c`; `e` or the empty string is the identity.
    pub fn parse_group(&self, text: &str) -> Result<GroupWord> {
        let text = text.trim();
        if text.is_empty() || text == "e" {
            return Ok(GroupWord::empty());
        }
        let mut out = Vec::new();
        for tok in text.split(['.', ' ']).filter(|t| !t.is_empty()) {
            let (name, inv) = match tok.strip_suffix("^-1") {
                Some(n) => (n, true),
                None => (tok, false),
            };
            let g = self
                .index(name)
                .ok_or_else(|| Error::UndeclaredGenerator(name.to_string()))?;
            out.push(Letter { gen: g, inv });
        }
        Ok(GroupWord(out))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Presentation {
    pub alphabet: Alphabet,
    pub relations: Vec<(MonoidWord, MonoidWord)>,
    pub completeness_declared: bool,
}

impl Presentation {
    pub fn new(
        names: Vec<String>,
        relations: Vec<(MonoidWord, MonoidWord)>,
        completeness_declared: bool,
    ) -> Result<Self> {
        let n = names.len() as GeneratorId;
        for (l, r) in &relations {
            if l.is_empty() || r.is_empty() {
                return Err(Error::EmptyRelationSide(0));
            }
            if let Some(&g) = l.0.iter().chain(r.0.iter()).find(|&&g| g >= n) {
                return Err(Error::UndeclaredGenerator(format!("#{g}")));
            }
        }
        Ok(Presentation { alphabet: Alphabet { names }, relations, completeness_declared })
    }

    pub fn generator_count(&self) -> usize {
        self.alphabet.len()
    }

    /// Both orientations of every relation, in file order, left-to-right first.
    pub fn orientations(&self) -> impl Iterator<Item = (usize, bool, &MonoidWord, &MonoidWord)> {
        self.relations
            .iter()
            .enumerate()
            .flat_map(|(i, (l, r))| [(i, false, l, r), (i, true, r, l)])
    }

    pub fn is_homogeneous(&self) -> bool {
        self.relations.iter().all(|(l, r)| l.len() == r.len())
    }

    pub fn serialize(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "generators: {}", self.alphabet.names.join(" "));
        for (l, r) in &self.relations {
            let _ = writeln!(s, "{} = {}", self.render_spaced(l), self.render_spaced(r));
        }
        let _ = writeln!(s, "complete: {}", self.completeness_declared);
        s
    }

    fn render_spaced(&self, w: &MonoidWord) -> String {
        let parts: Vec<&str> = w.0.iter().map(|&g| self.alphabet.name(g)).collect();
        parts.join(" ")
    }
}

pub fn parse_presentation(text: &str) -> Result<Presentation> {
    let mut names: Option<Vec<String>> = None;
    let mut relations = Vec::new();
    let mut complete = false;
    for (ln, raw) in text.lines().enumerate() {
        let line_no = ln + 1;
        let line = raw.split('#').next().unwrap_or("");
        if line.trim().is_empty() {
            continue;
        }
        let indent = line.len() - line.trim_start().len();
        let line = line.trim();
        if let Some(rest) = line.strip_prefix("generators:") {
            if names.is_some() {
                return Err(syntax(line_no, indent + 1, "duplicate generators line"));
            }
            let gens: Vec<String> = rest.split_whitespace().map(str::to_string).collect();
            let mut seen = HashSet::new();
            for g in &gens {
                if !seen.insert(g) {
                    return Err(syntax(line_no, indent + 1, &format!("generator `{g}` declared twice")));
                }
                if g == "e" || g.contains(['=', '.', '^', ':', '-']) {
                    return Err(syntax(line_no, indent + 1, &format!("illegal generator name `{g}`")));
                }
            }
            names = Some(gens);
        } else if let Some(rest) = line.strip_prefix("complete:") {
            complete = match rest.trim() {
                "true" => true,
                "false" => false,
                other => {
                    let col = raw.find(other).map(|c| c + 1).unwrap_or(1);
                    return Err(syntax(line_no, col, "expected `true` or `false`"));
                }
            };
        } else if let Some(eq) = line.find('=') {
            let Some(gens) = names.as_ref() else {
                return Err(syntax(line_no, indent + 1, "relation before generators line"));
            };
            let alphabet = Alphabet { names: gens.clone() };
            let lhs = &line[..eq];
            let rhs = &line[eq + 1..];
            if rhs.contains('=') {
                return Err(syntax(line_no, indent + eq + 2, "more than one `=`"));
            }
            let side = |s: &str| -> Result<MonoidWord> {
                let mut w = Vec::new();
                for tok in s.split_whitespace() {
                    w.push(
                        alphabet
                            .index(tok)
                            .ok_or_else(|| Error::UndeclaredGenerator(tok.to_string()))?,
                    );
                }
                if w.is_empty() {
                    return Err(Error::EmptyRelationSide(line_no));
                }
                Ok(MonoidWord(w))
            };
            relations.push((side(lhs)?, side(rhs)?));
        } else {
            return Err(syntax(line_no, indent + 1, "unrecognised line"));
        }
    }
    let names = names.ok_or_else(|| syntax(1, 1, "missing generators line"))?;
    Ok(Presentation { alphabet: Alphabet { names }, relations, completeness_declared: complete })
}

fn syntax(line: usize, col: usize, msg: &str) -> Error {
    Error::Syntax { line, col, msg: msg.to_string() }
}

/// One ⤳_R step, located by the position of the σ⁻¹ letter.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum RrRule {
    Delete,
    Relation { index: usize, reversed: bool },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RrStep {
    pub position: usize,
    pub rule: RrRule,
}

/// All one-step ⤳_R successors with the step that produced them.
pub fn rr_steps(w: &GroupWord, pres: &Presentation) -> Vec<(RrStep, GroupWord)> {
    let mut out = Vec::new();
    for i in 0..w.0.len().saturating_sub(1) {
        let (a, b) = (w.0[i], w.0[i + 1]);
        if !a.inv || b.inv {
            continue;
        }
        if a.gen == b.gen {
            let step = RrStep { position: i, rule: RrRule::Delete };
            out.push((step, apply_rr_step(w, pres, step).expect("delete applies")));
        }
        for (index, reversed, l, r) in pres.orientations() {
            if l.0[0] == a.gen && r.0[0] == b.gen {
                let step = RrStep { position: i, rule: RrRule::Relation { index, reversed } };
                out.push((step, apply_rr_step(w, pres, step).expect("relation applies")));
            }
        }
    }
    out
}

pub fn rr_successors(w: &GroupWord, pres: &Presentation) -> Vec<GroupWord> {
    let mut seen = HashSet::new();
    rr_steps(w, pres)
        .into_iter()
        .map(|(_, s)| s)
        .filter(|s| seen.insert(s.clone()))
        .collect()
}

pub fn apply_rr_step(w: &GroupWord, pres: &Presentation, step: RrStep) -> Option<GroupWord> {
    let i = step.position;
    let (a, b) = (*w.0.get(i)?, *w.0.get(i + 1)?);
    if !a.inv || b.inv {
        return None;
    }
    let middle: Vec<Letter> = match step.rule {
        RrRule::Delete => {
            if a.gen != b.gen {
                return None;
            }
            Vec::new()
        }
        RrRule::Relation { index, reversed } => {
            let (l, r) = pres.relations.get(index)?;
            let (l, r) = if reversed { (r, l) } else { (l, r) };
            if l.0[0] != a.gen || r.0[0] != b.gen {
                return None;
            }
            let u = MonoidWord(l.0[1..].to_vec()).to_group();
            let v = MonoidWord(r.0[1..].to_vec()).to_group();
            u.concat(&v.inverse()).0
        }
    };
    let mut out = w.0[..i].to_vec();
    out.extend(middle);
    out.extend_from_slice(&w.0[i + 2..]);
    Some(GroupWord(out))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RrVerdict {
    Equal(Vec<RrStep>),
    NotEqualWithinBudget,
    BudgetExhausted,
}

enum Search<T> {
    Found(T),
    Closed,
    Exhausted,
}

/// Breadth-first search over ⤳_R from `start` until `goal` accepts a node.
fn rr_search(
    start: GroupWord,
    pres: &Presentation,
    budget: usize,
    goal: impl Fn(&GroupWord) -> bool,
) -> Search<(GroupWord, Vec<RrStep>)> {
    let mut parent: HashMap<GroupWord, Option<(GroupWord, RrStep)>> = HashMap::new();
    let mut queue = VecDeque::new();
    parent.insert(start.clone(), None);
    queue.push_back(start);
    let mut expanded = 0usize;
    while let Some(w) = queue.pop_front() {
        if goal(&w) {
            let mut path = Vec::new();
            let mut cur = w.clone();
            while let Some(Some((prev, step))) = parent.get(&cur) {
                path.push(*step);
                cur = prev.clone();
            }
            path.reverse();
            return Search::Found((w, path));
        }
        if expanded >= budget {
            return Search::Exhausted;
        }
        expanded += 1;
        for (step, next) in rr_steps(&w, pres) {
            if !parent.contains_key(&next) {
                parent.insert(next.clone(), Some((w.clone(), step)));
                queue.push_back(next);
            }
        }
    }
    Search::Closed
}

pub fn decide_equal_rr(
    u: &MonoidWord,
    v: &MonoidWord,
    pres: &Presentation,
    budget: usize,
) -> Result<RrVerdict> {
    if budget == 0 {
        return Err(Error::NonPositiveBudget);
    }
    let start = u.to_group().inverse().concat(&v.to_group());
    Ok(match rr_search(start, pres, budget, |w| w.is_empty()) {
        Search::Found((_, path)) => RrVerdict::Equal(path),
        Search::Closed if pres.completeness_declared => RrVerdict::NotEqualWithinBudget,
        _ => RrVerdict::BudgetExhausted,
    })
}

/// Replays a witness path from u⁻¹v; true iff every step applies and ε is reached.
pub fn replay_rr_path(u: &MonoidWord, v: &MonoidWord, pres: &Presentation, path: &[RrStep]) -> bool {
    let mut w = u.to_group().inverse().concat(&v.to_group());
    for &step in path {
        match apply_rr_step(&w, pres, step) {
            Some(next) => w = next,
            None => return false,
        }
    }
    w.is_empty()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Quotient {
    Quotient(MonoidWord),
    NoQuotientWithinBudget,
    BudgetExhausted,
}

/// Finds r with p·r = x. Complete presentations reverse p⁻¹x until a positive word
/// appears; otherwise the congruence class of x is scanned for the prefix p.
pub fn left_divide(
    p: &MonoidWord,
    x: &MonoidWord,
    pres: &Presentation,
    budget: usize,
) -> Result<Quotient> {
    if budget == 0 {
        return Err(Error::NonPositiveBudget);
    }
    if x.0.starts_with(&p.0) {
        return Ok(Quotient::Quotient(MonoidWord(x.0[p.len()..].to_vec())));
    }
    if pres.completeness_declared {
        let start = p.to_group().inverse().concat(&x.to_group());
        return Ok(match rr_search(start, pres, budget, |w| w.is_positive()) {
            Search::Found((w, _)) => Quotient::Quotient(w.to_monoid().expect("positive")),
            Search::Closed => Quotient::NoQuotientWithinBudget,
            Search::Exhausted => Quotient::BudgetExhausted,
        });
    }
    Ok(match word_class(x, pres, budget) {
        Some(class) => class
            .iter()
            .find(|w| w.0.starts_with(&p.0))
            .map(|w| Quotient::Quotient(MonoidWord(w.0[p.len()..].to_vec())))
            .unwrap_or(Quotient::NoQuotientWithinBudget),
        None => Quotient::BudgetExhausted,
    })
}

/// Applies one relation orientation at `pos` to a positive word.
pub fn apply_relation_at(
    w: &MonoidWord,
    pres: &Presentation,
    pos: usize,
    index: usize,
    reversed: bool,
) -> Option<MonoidWord> {
    let (l, r) = pres.relations.get(index)?;
    let (l, r) = if reversed { (r, l) } else { (l, r) };
    if !w.0.get(pos..)?.starts_with(&l.0) {
        return None;
    }
    let mut out = w.0[..pos].to_vec();
    out.extend_from_slice(&r.0);
    out.extend_from_slice(&w.0[pos + l.len()..]);
    Some(MonoidWord(out))
}

/// Congruence class of a positive word under the relations, or `None` past the budget.
pub fn word_class(w: &MonoidWord, pres: &Presentation, budget: usize) -> Option<BTreeSet<MonoidWord>> {
    let mut seen = BTreeSet::new();
    let mut queue = VecDeque::new();
    seen.insert(w.clone());
    queue.push_back(w.clone());
    while let Some(cur) = queue.pop_front() {
        for pos in 0..cur.len() {
            for (index, reversed, l, _) in pres.orientations() {
                if !cur.0[pos..].starts_with(&l.0) {
                    continue;
                }
                let next = apply_relation_at(&cur, pres, pos, index, reversed).expect("matched");
                if seen.insert(next.clone()) {
                    if seen.len() > budget {
                        return None;
                    }
                    queue.push_back(next);
                }
            }
        }
    }
    Some(seen)
}

/// Shortlex-least member of the congruence class.
pub fn canonical_word(w: &MonoidWord, pres: &Presentation, budget: usize) -> Option<MonoidWord> {
    let class = word_class(w, pres, budget)?;
    class.into_iter().min_by(|a, b| a.shortlex_key().cmp(&b.shortlex_key()))
}

/// All monoid words over `n` letters of length exactly `len`, in lexicographic order.
pub fn words_of_length(n: usize, len: usize) -> Vec<MonoidWord> {
    let mut out = vec![MonoidWord::empty()];
    for _ in 0..len {
        let mut next = Vec::with_capacity(out.len() * n);
        for w in &out {
            for g in 0..n as GeneratorId {
                let mut v = w.0.clone();
                v.push(g);
                next.push(MonoidWord(v));
            }
        }
        out = next;
    }
    out
}

pub fn words_up_to(n: usize, max_len: usize) -> Vec<MonoidWord> {
    (0..=max_len).flat_map(|l| words_of_length(n, l)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn braid3() -> Presentation {
        parse_presentation("generators: s1 s2\ns1 s2 s1 = s2 s1 s2\ncomplete: true\n").unwrap()
    }

    #[test]
    fn parse_reports_position() {
        let err = parse_presentation("generators: a\ncomplete: maybe\n").unwrap_err();
        assert!(matches!(err, Error::Syntax { line: 2, .. }));
        let err = parse_presentation("generators: a\na = b\n").unwrap_err();
        assert_eq!(err, Error::UndeclaredGenerator("b".into()));
        let err = parse_presentation("generators: a\na = \n").unwrap_err();
        assert_eq!(err, Error::EmptyRelationSide(2));
    }

    #[test]
    fn round_trip() {
        let p = braid3();
        assert_eq!(parse_presentation(&p.serialize()).unwrap(), p);
    }

    #[test]
    fn deletion_step() {
        let p = braid3();
        let w = GroupWord(vec![Letter::neg(0), Letter::pos(0)]);
        assert_eq!(rr_successors(&w, &p), vec![GroupWord::empty()]);
    }

    #[test]
    fn free_reduce_cancels() {
        let w = GroupWord(vec![Letter::pos(0), Letter::pos(1), Letter::neg(1), Letter::neg(0)]);
        assert!(w.free_reduce().is_empty());
    }
}
