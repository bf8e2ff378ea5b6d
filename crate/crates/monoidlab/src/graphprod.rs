//! Graph products of vertex groups: syllable words, reduced-word criterion,
//! shuffle normal forms, initial/final syllables, multiplication.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::oracles::{FreeAbelianGroup, FreeGroup, GroupOracle, Positivity};
use crate::words::{Alphabet, GeneratorId, GroupWord, Letter, MonoidWord, Presentation};

pub type VertexId = usize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum VertexKind {
    Free(usize),
    FreeAbelian(usize),
}

impl VertexKind {
    pub fn parse(name: &str) -> Result<Self> {
        let bad = || Error::UnknownOracle(name.to_string());
        let (kind, rank) = name.split_once(':').ok_or_else(bad)?;
        let rank: usize = rank.parse().map_err(|_| bad())?;
        if rank == 0 {
            return Err(bad());
        }
        match kind {
            "free" => Ok(VertexKind::Free(rank)),
            "free-abelian" => Ok(VertexKind::FreeAbelian(rank)),
            _ => Err(bad()),
        }
    }

    pub fn oracle_name(&self) -> String {
        match self {
            VertexKind::Free(n) => format!("free:{n}"),
            VertexKind::FreeAbelian(n) => format!("free-abelian:{n}"),
        }
    }

    pub fn rank(&self) -> usize {
        match *self {
            VertexKind::Free(n) | VertexKind::FreeAbelian(n) => n,
        }
    }

    /// Canonical local normal form.
    pub fn normal_form(&self, w: &GroupWord) -> GroupWord {
        match *self {
            VertexKind::Free(_) => w.free_reduce(),
            VertexKind::FreeAbelian(n) => FreeAbelianGroup::new(n).normal_form(w),
        }
    }

    pub fn mul(&self, a: &GroupWord, b: &GroupWord) -> GroupWord {
        self.normal_form(&a.concat(b))
    }

    pub fn is_positive(&self, w: &GroupWord) -> bool {
        self.normal_form(w).is_positive()
    }

    /// r with x·r = y in the vertex monoid.
    pub fn left_divide(&self, x: &GroupWord, y: &GroupWord) -> Option<GroupWord> {
        let r = self.mul(&x.inverse(), y);
        r.is_positive().then_some(r)
    }

    /// Generator of xP_v ∩ yP_v, or `None` when the intersection is empty.
    pub fn meet(&self, x: &GroupWord, y: &GroupWord) -> Option<GroupWord> {
        match *self {
            VertexKind::Free(_) => {
                if y.0.starts_with(&x.0) {
                    Some(y.clone())
                } else if x.0.starts_with(&y.0) {
                    Some(x.clone())
                } else {
                    None
                }
            }
            VertexKind::FreeAbelian(n) => {
                let z = FreeAbelianGroup::new(n);
                let (ex, ey) = (z.exponents(x), z.exponents(y));
                let m: Vec<i64> = ex.iter().zip(&ey).map(|(a, b)| *a.max(b)).collect();
                Some(FreeAbelianGroup::from_exponents(&m))
            }
        }
    }

    pub fn oracle(&self) -> Box<dyn GroupOracle> {
        match *self {
            VertexKind::Free(n) => Box::new(FreeGroup::new(n)),
            VertexKind::FreeAbelian(n) => Box::new(FreeAbelianGroup::new(n)),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphSpec {
    pub vertices: Vec<String>,
    /// Unordered pairs stored as (min, max).
    pub edges: BTreeSet<(VertexId, VertexId)>,
    pub kinds: Vec<VertexKind>,
}

impl GraphSpec {
    pub fn new(vertices: Vec<String>, edges: &[(VertexId, VertexId)], kind: VertexKind) -> Result<Self> {
        let n = vertices.len();
        let mut set = BTreeSet::new();
        for &(a, b) in edges {
            if a == b {
                return Err(Error::Invalid(format!("loop at vertex `{}`", vertices[a])));
            }
            if a >= n || b >= n {
                return Err(Error::Invalid("edge endpoint out of range".into()));
            }
            set.insert((a.min(b), a.max(b)));
        }
        Ok(GraphSpec { vertices, edges: set, kinds: vec![kind; n] })
    }

    pub fn adjacent(&self, a: VertexId, b: VertexId) -> bool {
        a != b && self.edges.contains(&(a.min(b), a.max(b)))
    }

    pub fn vertex_index(&self, name: &str) -> Option<VertexId> {
        self.vertices.iter().position(|v| v == name)
    }

    pub fn is_clique(&self, w: &[VertexId]) -> bool {
        w.iter().enumerate().all(|(i, &a)| w[i + 1..].iter().all(|&b| self.adjacent(a, b)))
    }

    /// All nonempty cliques, by size then lexicographically.
    pub fn cliques(&self) -> Vec<Vec<VertexId>> {
        let n = self.vertices.len();
        let mut out: Vec<Vec<VertexId>> = (1u64..(1u64 << n))
            .map(|mask| (0..n).filter(|&i| mask >> i & 1 == 1).collect::<Vec<_>>())
            .filter(|w| self.is_clique(w))
            .collect();
        out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        out
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut vertices: Option<Vec<String>> = None;
        let mut edge_tokens: Vec<(usize, usize, String)> = Vec::new();
        let mut bindings: Vec<(usize, String, String)> = Vec::new();
        for (ln, raw) in text.lines().enumerate() {
            let line_no = ln + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let err = |msg: String| Error::Syntax { line: line_no, col: 1, msg };
            if let Some(rest) = line.strip_prefix("vertices:") {
                if vertices.is_some() {
                    return Err(err("duplicate vertices line".into()));
                }
                let vs: Vec<String> = rest.split_whitespace().map(str::to_string).collect();
                if vs.iter().any(|v| v.contains(['-', '.', '^', '=', ':'])) {
                    return Err(err("illegal vertex name".into()));
                }
                let distinct: BTreeSet<&String> = vs.iter().collect();
                if distinct.len() != vs.len() {
                    return Err(err("vertex declared twice".into()));
                }
                vertices = Some(vs);
            } else if let Some(rest) = line.strip_prefix("edges:") {
                for tok in rest.split_whitespace() {
                    edge_tokens.push((line_no, 1 + raw.find(tok).unwrap_or(0), tok.to_string()));
                }
            } else if let Some(rest) = line.strip_prefix("vertex ") {
                let (name, binding) = rest
                    .split_once('=')
                    .ok_or_else(|| err("expected `vertex <name> = oracle:<name>`".into()))?;
                let oracle = binding
                    .trim()
                    .strip_prefix("oracle:")
                    .ok_or_else(|| err("binding must start with `oracle:`".into()))?;
                bindings.push((line_no, name.trim().to_string(), oracle.to_string()));
            } else {
                return Err(err("unrecognised line".into()));
            }
        }
        let vertices = vertices.ok_or(Error::Syntax { line: 1, col: 1, msg: "missing vertices line".into() })?;
        let mut spec = GraphSpec::new(vertices, &[], VertexKind::Free(1))?;
        for (line, col, tok) in edge_tokens {
            let err = |msg: &str| Error::Syntax { line, col, msg: msg.to_string() };
            let (a, b) = tok.split_once('-').ok_or_else(|| err("edge must look like `u-v`"))?;
            let a = spec.vertex_index(a).ok_or_else(|| err("unknown vertex in edge"))?;
            let b = spec.vertex_index(b).ok_or_else(|| err("unknown vertex in edge"))?;
            if a == b {
                return Err(err("loops are not allowed"));
            }
            spec.edges.insert((a.min(b), a.max(b)));
        }
        for (line, name, oracle) in bindings {
            let v = spec.vertex_index(&name).ok_or(Error::Syntax {
                line,
                col: 1,
                msg: format!("unknown vertex `{name}`"),
            })?;
            spec.kinds[v] = VertexKind::parse(&oracle)?;
        }
        Ok(spec)
    }

    pub fn serialize(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "vertices: {}", self.vertices.join(" "));
        let edges: Vec<String> = self
            .edges
            .iter()
            .map(|&(a, b)| format!("{}-{}", self.vertices[a], self.vertices[b]))
            .collect();
        let _ = writeln!(s, "edges: {}", edges.join(" "));
        for (v, k) in self.kinds.iter().enumerate() {
            let _ = writeln!(s, "vertex {} = oracle:{}", self.vertices[v], k.oracle_name());
        }
        s
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Syllable {
    pub vertex: VertexId,
    /// Local normal form in the vertex group, never the identity.
    pub element: GroupWord,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GPWord {
    pub syllables: Vec<Syllable>,
}

impl GPWord {
    pub fn identity() -> Self {
        GPWord::default()
    }

    pub fn is_identity(&self) -> bool {
        self.syllables.is_empty()
    }

    pub fn len(&self) -> usize {
        self.syllables.len()
    }

    pub fn is_empty(&self) -> bool {
        self.syllables.is_empty()
    }

    pub fn single(vertex: VertexId, element: GroupWord) -> Self {
        GPWord { syllables: vec![Syllable { vertex, element }] }
    }

    pub fn inverse(&self) -> GPWord {
        GPWord {
            syllables: self
                .syllables
                .iter()
                .rev()
                .map(|s| Syllable { vertex: s.vertex, element: s.element.inverse() })
                .collect(),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct InitialFinalData {
    pub initial_vertices: BTreeSet<VertexId>,
    pub initial_syllables: BTreeMap<VertexId, Syllable>,
    pub final_vertices: BTreeSet<VertexId>,
    pub final_syllables: BTreeMap<VertexId, Syllable>,
}

/// A graph product together with its global alphabet: every vertex generator becomes
/// one letter, named after the vertex (rank 1) or the vertex plus an index.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GraphProduct {
    pub spec: GraphSpec,
    pub alphabet: Alphabet,
    /// Global letter → (vertex, local generator).
    pub letters: Vec<(VertexId, GeneratorId)>,
}

impl GraphProduct {
    pub fn new(spec: GraphSpec) -> Self {
        let mut names = Vec::new();
        let mut letters = Vec::new();
        for (v, k) in spec.kinds.iter().enumerate() {
            for g in 0..k.rank() {
                names.push(if k.rank() == 1 {
                    spec.vertices[v].clone()
                } else {
                    format!("{}{}", spec.vertices[v], g + 1)
                });
                letters.push((v, g as GeneratorId));
            }
        }
        GraphProduct { spec, alphabet: Alphabet { names }, letters }
    }

    pub fn parse(text: &str) -> Result<Self> {
        Ok(GraphProduct::new(GraphSpec::parse(text)?))
    }

    pub fn vertex_count(&self) -> usize {
        self.spec.vertices.len()
    }

    pub fn kind(&self, v: VertexId) -> VertexKind {
        self.spec.kinds[v]
    }

    fn global_letter(&self, v: VertexId, local: GeneratorId) -> GeneratorId {
        self.letters.iter().position(|&l| l == (v, local)).expect("letter exists") as GeneratorId
    }

    /// One syllable per letter; not reduced in general.
    pub fn from_group_word(&self, w: &GroupWord) -> Result<GPWord> {
        let mut syllables = Vec::with_capacity(w.len());
        for l in &w.0 {
            let &(v, local) = self
                .letters
                .get(l.gen as usize)
                .ok_or_else(|| Error::ForeignLetter(format!("#{}", l.gen)))?;
            syllables.push(Syllable { vertex: v, element: GroupWord(vec![Letter { gen: local, inv: l.inv }]) });
        }
        Ok(GPWord { syllables })
    }

    pub fn from_monoid_word(&self, w: &MonoidWord) -> Result<GPWord> {
        self.from_group_word(&w.to_group())
    }

    pub fn to_group_word(&self, w: &GPWord) -> GroupWord {
        let mut out = Vec::new();
        for s in &w.syllables {
            for l in &s.element.0 {
                out.push(Letter { gen: self.global_letter(s.vertex, l.gen), inv: l.inv });
            }
        }
        GroupWord(out)
    }

    pub fn render(&self, w: &GPWord) -> String {
        self.alphabet.render_group(&self.to_group_word(w))
    }

    pub fn parse_word(&self, text: &str) -> Result<GPWord> {
        let w = self.alphabet.parse_group(text)?;
        Ok(self.normal_form(&self.from_group_word(&w)?))
    }

    fn check_syllables(&self, w: &GPWord) -> Result<()> {
        for s in &w.syllables {
            if s.vertex >= self.vertex_count() {
                return Err(Error::Invalid(format!("vertex #{} out of range", s.vertex)));
            }
            if self.kind(s.vertex).normal_form(&s.element).is_empty() {
                return Err(Error::TrivialSyllable(self.spec.vertices[s.vertex].clone()));
            }
        }
        Ok(())
    }

    pub fn is_reduced(&self, w: &GPWord) -> Result<bool> {
        self.check_syllables(w)?;
        let s = &w.syllables;
        for i in 0..s.len() {
            for j in i + 1..s.len() {
                if s[i].vertex != s[j].vertex {
                    continue;
                }
                let separated = (i + 1..j).any(|k| !self.spec.adjacent(s[i].vertex, s[k].vertex));
                if !separated {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// Position of the syllable at `v` that can be shuffled to the end, if any.
    fn final_position(&self, s: &[Syllable], v: VertexId) -> Option<usize> {
        for j in (0..s.len()).rev() {
            if s[j].vertex == v {
                return Some(j);
            }
            if !self.spec.adjacent(s[j].vertex, v) {
                return None;
            }
        }
        None
    }

    fn initial_position(&self, s: &[Syllable], v: VertexId) -> Option<usize> {
        for (j, syl) in s.iter().enumerate() {
            if syl.vertex == v {
                return Some(j);
            }
            if !self.spec.adjacent(syl.vertex, v) {
                return None;
            }
        }
        None
    }

    /// Right multiplication of a reduced syllable list by one syllable, amalgamating.
    fn push_syllable(&self, acc: &mut Vec<Syllable>, syl: &Syllable) {
        let kind = self.kind(syl.vertex);
        let element = kind.normal_form(&syl.element);
        if element.is_empty() {
            return;
        }
        match self.final_position(acc, syl.vertex) {
            Some(j) => {
                let merged = kind.mul(&acc[j].element, &element);
                if merged.is_empty() {
                    acc.remove(j);
                } else {
                    acc[j].element = merged;
                }
            }
            None => acc.push(Syllable { vertex: syl.vertex, element }),
        }
    }

    /// Greedy emission of the least available initial vertex.
    fn shuffle_canonical(&self, mut rest: Vec<Syllable>) -> GPWord {
        let mut out = Vec::with_capacity(rest.len());
        while !rest.is_empty() {
            let pick = (0..self.vertex_count())
                .find_map(|v| self.initial_position(&rest, v))
                .expect("a reduced nonempty word has an initial syllable");
            out.push(rest.remove(pick));
        }
        GPWord { syllables: out }
    }

    pub fn normal_form(&self, w: &GPWord) -> GPWord {
        let mut acc = Vec::with_capacity(w.len());
        for syl in &w.syllables {
            self.push_syllable(&mut acc, syl);
        }
        self.shuffle_canonical(acc)
    }

    pub fn multiply(&self, g: &GPWord, h: &GPWord) -> GPWord {
        let data_g = self.initial_final_unchecked(g);
        let data_h = self.initial_final_unchecked(h);
        let common: Vec<VertexId> =
            data_g.final_vertices.intersection(&data_h.initial_vertices).copied().collect();
        let mut x = g.syllables.clone();
        let mut y = h.syllables.clone();
        let mut z = Vec::new();
        for &w in &common {
            let fx = self.final_position(&x, w).expect("final syllable");
            let a = x.remove(fx);
            let iy = self.initial_position(&y, w).expect("initial syllable");
            let b = y.remove(iy);
            let prod = self.kind(w).mul(&a.element, &b.element);
            if !prod.is_empty() {
                z.push(Syllable { vertex: w, element: prod });
            }
        }
        x.extend(z);
        x.extend(y);
        self.normal_form(&GPWord { syllables: x })
    }

    pub fn power(&self, g: &GPWord, k: usize) -> GPWord {
        (0..k).fold(GPWord::identity(), |acc, _| self.multiply(&acc, g))
    }

    fn initial_final_unchecked(&self, w: &GPWord) -> InitialFinalData {
        let s = &w.syllables;
        let mut d = InitialFinalData::default();
        for (i, syl) in s.iter().enumerate() {
            if s[..i].iter().all(|t| self.spec.adjacent(t.vertex, syl.vertex)) {
                d.initial_vertices.insert(syl.vertex);
                d.initial_syllables.insert(syl.vertex, syl.clone());
            }
            if s[i + 1..].iter().all(|t| self.spec.adjacent(t.vertex, syl.vertex)) {
                d.final_vertices.insert(syl.vertex);
                d.final_syllables.insert(syl.vertex, syl.clone());
            }
        }
        d
    }

    pub fn initial_final_data(&self, w: &GPWord) -> Result<InitialFinalData> {
        if !self.is_reduced(w)? {
            return Err(Error::NotReduced);
        }
        let d = self.initial_final_unchecked(w);
        let initial: Vec<VertexId> = d.initial_vertices.iter().copied().collect();
        if !self.spec.is_clique(&initial) || d.initial_syllables.len() != initial.len() {
            return Err(Error::Internal("initial syllables are not unique per vertex".into()));
        }
        Ok(d)
    }

    /// S_v^i(x), or the identity when v is not initial.
    pub fn initial_syllable(&self, x: &GPWord, v: VertexId) -> GroupWord {
        self.initial_position(&x.syllables, v)
            .map(|j| x.syllables[j].element.clone())
            .unwrap_or_default()
    }

    pub fn final_syllable(&self, x: &GPWord, v: VertexId) -> GroupWord {
        self.final_position(&x.syllables, v)
            .map(|j| x.syllables[j].element.clone())
            .unwrap_or_default()
    }

    pub fn initial_vertices(&self, x: &GPWord) -> Vec<VertexId> {
        (0..self.vertex_count()).filter(|&v| self.initial_position(&x.syllables, v).is_some()).collect()
    }

    pub fn final_vertices(&self, x: &GPWord) -> Vec<VertexId> {
        (0..self.vertex_count()).filter(|&v| self.final_position(&x.syllables, v).is_some()).collect()
    }

    /// Removes the syllable at `v` that can be shuffled to the front.
    pub fn strip_initial(&self, x: &GPWord, v: VertexId) -> GPWord {
        let mut s = x.syllables.clone();
        if let Some(j) = self.initial_position(&s, v) {
            s.remove(j);
        }
        self.shuffle_canonical(s)
    }

    pub fn strip_final(&self, x: &GPWord, v: VertexId) -> GPWord {
        let mut s = x.syllables.clone();
        if let Some(j) = self.final_position(&s, v) {
            s.remove(j);
        }
        self.shuffle_canonical(s)
    }

    pub fn is_positive(&self, x: &GPWord) -> bool {
        x.syllables.iter().all(|s| self.kind(s.vertex).is_positive(&s.element))
    }

    /// Sum of local word lengths.
    pub fn length(&self, x: &GPWord) -> usize {
        x.syllables.iter().map(|s| s.element.len()).sum()
    }

    /// All legal single shuffles: swaps of adjacent syllables at adjacent vertices.
    pub fn single_shuffles(&self, w: &GPWord) -> Vec<GPWord> {
        let s = &w.syllables;
        (0..s.len().saturating_sub(1))
            .filter(|&i| self.spec.adjacent(s[i].vertex, s[i + 1].vertex))
            .map(|i| {
                let mut t = s.clone();
                t.swap(i, i + 1);
                GPWord { syllables: t }
            })
            .collect()
    }

    /// Right-angled Artin monoid presentation for rank-one vertices: uv = vu per edge.
    pub fn raam_presentation(&self) -> Result<Presentation> {
        if self.spec.kinds.iter().any(|k| *k != VertexKind::Free(1)) {
            return Err(Error::Unsupported("presentation needs rank-one free vertices".into()));
        }
        let relations = self
            .spec
            .edges
            .iter()
            .map(|&(a, b)| {
                let (a, b) = (a as GeneratorId, b as GeneratorId);
                (MonoidWord(vec![a, b]), MonoidWord(vec![b, a]))
            })
            .collect();
        Presentation::new(self.spec.vertices.clone(), relations, true)
    }
}

/// The graph product group as a group oracle; the positive cone is the
/// graph product of the vertex positive cones.
#[derive(Clone, Debug)]
pub struct GraphProductGroup {
    pub gp: GraphProduct,
}

impl GraphProductGroup {
    pub fn new(gp: GraphProduct) -> Self {
        GraphProductGroup { gp }
    }

    pub fn parse(text: &str) -> Result<Self> {
        Ok(GraphProductGroup { gp: GraphProduct::parse(text)? })
    }
}

impl GroupOracle for GraphProductGroup {
    fn name(&self) -> String {
        "graph-product".into()
    }

    fn rank(&self) -> Option<usize> {
        Some(self.gp.letters.len())
    }

    fn letter_name(&self, g: GeneratorId) -> String {
        self.gp.alphabet.name(g).to_string()
    }

    fn parse_letter(&self, s: &str) -> Option<GeneratorId> {
        self.gp.alphabet.index(s)
    }

    fn canonical(&self, w: &GroupWord) -> String {
        match self.gp.from_group_word(w) {
            Ok(x) => self.gp.render(&self.gp.normal_form(&x)),
            Err(e) => format!("<{e}>"),
        }
    }

    fn is_positive(&self, w: &GroupWord) -> Positivity {
        let x = match self.gp.from_group_word(w) {
            Ok(x) => self.gp.normal_form(&x),
            Err(e) => return Positivity::Unknown(e.to_string()),
        };
        if self.gp.is_positive(&x) {
            Positivity::Yes(self.gp.to_group_word(&x).to_monoid().expect("positive"))
        } else {
            Positivity::No(format!("normal form {} has a non-positive syllable", self.gp.render(&x)))
        }
    }
}
