//! Built-in example monoids, their ambient groups and annotated facts.

pub mod axb;
pub mod numerical;
pub mod presented;
pub mod quad;
pub mod thompson;

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::graphprod::{GraphProduct, GraphSpec, VertexKind};
use crate::ideals::{Div, Monoid, Tri};
use crate::oracles::{oracle_by_name, GroupOracle, Positivity, ThompsonGroup};
use crate::words::{GroupWord, Letter, MonoidWord, Presentation};

pub use axb::AxbMonoid;
pub use numerical::NumericalMonoid;
pub use presented::{presentation_from_file, PresentedMonoid};
pub use quad::{QuadElem, QuadRing};
pub use thompson::{thompson_presentation, ThompsonMonoid};

pub const DEFAULT_BUDGET: usize = 20_000;

#[derive(Clone, Debug)]
pub enum Backend {
    Presented(PresentedMonoid),
    Graph(GraphProduct),
    Numerical(NumericalMonoid),
    Thompson(ThompsonMonoid),
    Axb(AxbMonoid),
    Quad(QuadRing),
}

/// Runs `$body` with `$m` bound to the concrete monoid behind a [`Backend`].
#[macro_export]
macro_rules! with_backend {
    ($backend:expr, $m:ident => $body:expr) => {
        match $backend {
            $crate::catalog::Backend::Presented($m) => $body,
            $crate::catalog::Backend::Graph($m) => $body,
            $crate::catalog::Backend::Numerical($m) => $body,
            $crate::catalog::Backend::Thompson($m) => $body,
            $crate::catalog::Backend::Axb($m) => $body,
            $crate::catalog::Backend::Quad($m) => $body,
        }
    };
}

/// A recorded fact about an entry. `check` names a condition and the status the
/// checker is expected to reach, when the fact is checkable at small scale.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Annotation {
    pub fact: String,
    pub anchor: String,
    pub check: Option<(String, String)>,
}

impl Annotation {
    fn new(fact: &str, anchor: &str) -> Self {
        Annotation { fact: fact.into(), anchor: anchor.into(), check: None }
    }

    fn checked(fact: &str, anchor: &str, condition: &str, status: &str) -> Self {
        Annotation { fact: fact.into(), anchor: anchor.into(), check: Some((condition.into(), status.into())) }
    }
}

#[derive(Clone, Debug)]
pub struct CatalogEntry {
    pub name: String,
    pub summary: String,
    pub backend: Backend,
    pub presentation: Option<Presentation>,
    pub default_ambient: String,
    pub units: String,
    pub annotations: Vec<Annotation>,
}

impl CatalogEntry {
    pub fn complete(&self) -> bool {
        self.presentation.as_ref().is_some_and(|p| p.completeness_declared)
    }

    pub fn records_toeplitz(&self) -> bool {
        self.annotations.iter().any(|a| a.fact.starts_with("Toeplitz in"))
    }
}

/// Names accepted by [`lookup`], with parameter placeholders.
pub const REGISTRY: &[(&str, &str)] = &[
    ("nat", "the natural numbers N"),
    ("nat2", "N^2 as the graph product on an edge"),
    ("free2", "the free monoid N*N on a, b"),
    ("free-product:k", "free product of k copies of N"),
    ("numerical:F", "numerical semigroup N minus the comma-separated gaps F"),
    ("braid:n", "positive braid monoid on n strands"),
    ("bs:k,l", "Baumslag-Solitar monoid <a,b | a b^k = b^l a>+"),
    ("thompson[:N]", "Thompson monoid F+ sampled through x0..xN (default N=4)"),
    ("thompson-op[:N]", "opposite of the Thompson monoid, presented on x0..xN"),
    ("axb-Z", "ax+b monoid over Z, multipliers in <-1,2,3>"),
    ("quad-ring-ax-b", "multiplicative monoid of Z[i sqrt 3]"),
    ("raam:<graph>", "right-angled Artin monoid of a graph file or of path3, triangle, square"),
    ("graph:<graph>", "graph product of a graph file with per-vertex oracles"),
    ("pres:<file>", "monoid of a presentation file"),
];

pub fn builtin_graph(name: &str) -> Option<&'static str> {
    match name {
        "path3" => Some("vertices: u v w\nedges: u-v v-w\n"),
        "triangle" => Some("vertices: a b c\nedges: a-b b-c a-c\n"),
        "square" => Some("vertices: a b c d\nedges: a-b b-c c-d d-a\n"),
        _ => None,
    }
}

fn read(path: &str) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Invalid(format!("cannot read {path}: {e}")))
}

fn graph_entry(name: &str, gp: GraphProduct, summary: String, default_ambient: &str) -> Result<CatalogEntry> {
    let raam = gp.spec.kinds.iter().all(|k| *k == VertexKind::Free(1));
    let presentation = if raam { Some(gp.raam_presentation()?) } else { None };
    let mut annotations = vec![
        Annotation::checked(
            "satisfies independence",
            "graph products of monoids with independence satisfy independence",
            "independence",
            "Proved",
        ),
        Annotation::new("Toeplitz in its graph product group", "Toeplitz condition for graph products"),
    ];
    if raam {
        annotations.push(Annotation::new("presentation complete for the rewriting relation", "completeness of Artin presentations"));
    }
    Ok(CatalogEntry {
        name: name.into(),
        summary,
        backend: Backend::Graph(gp),
        presentation,
        default_ambient: default_ambient.into(),
        units: "trivial".into(),
        annotations,
    })
}

fn two_vertex(edge: bool) -> GraphProduct {
    let edges: &[(usize, usize)] = if edge { &[(0, 1)] } else { &[] };
    GraphProduct::new(GraphSpec::new(vec!["a".into(), "b".into()], edges, VertexKind::Free(1)).expect("valid graph"))
}

fn braid_presentation(n: usize) -> Result<Presentation> {
    if n < 2 {
        return Err(Error::Invalid("braid monoids need n >= 2".into()));
    }
    let names = (1..n).map(|i| format!("s{i}")).collect();
    let mut rel = Vec::new();
    for i in 0..n as u32 - 1 {
        for j in i + 1..n as u32 - 1 {
            if j == i + 1 {
                rel.push((MonoidWord(vec![i, j, i]), MonoidWord(vec![j, i, j])));
            } else {
                rel.push((MonoidWord(vec![i, j]), MonoidWord(vec![j, i])));
            }
        }
    }
    Presentation::new(names, rel, true)
}

fn presented_entry(name: &str, summary: &str, pres: Presentation, units: &str, annotations: Vec<Annotation>) -> CatalogEntry {
    CatalogEntry {
        name: name.into(),
        summary: summary.into(),
        backend: Backend::Presented(PresentedMonoid::new(pres.clone(), DEFAULT_BUDGET)),
        presentation: Some(pres),
        default_ambient: "fractions".into(),
        units: units.into(),
        annotations,
    }
}

pub fn lookup(name: &str) -> Result<CatalogEntry> {
    let unknown = || Error::UnknownCatalog(name.to_string());
    let (head, arg) = match name.split_once(':') {
        Some((h, a)) => (h, Some(a)),
        None => (name, None),
    };
    match (head, arg) {
        ("nat", None) => Ok(CatalogEntry {
            name: name.into(),
            summary: "the natural numbers".into(),
            backend: Backend::Numerical(NumericalMonoid::new([])?),
            presentation: Some(Presentation::new(vec!["a".into()], vec![], true)?),
            default_ambient: "integers".into(),
            units: "trivial".into(),
            annotations: vec![
                Annotation::checked("every constructible ideal is n+N", "totally ordered monoids", "independence", "Proved"),
                Annotation::checked("boundary is a single point", "total order collapses the boundary", "boundary-eq", "Violated"),
            ],
        }),
        ("nat2", None) => graph_entry(name, two_vertex(true), "N^2".into(), "free-abelian:2").map(|mut e| {
            e.annotations.push(Annotation::checked("commutative, hence left and right reversible", "cancellative abelian monoids are reversible", "reversibility", "Proved"));
            e.annotations.push(Annotation::checked("no pair with disjoint cones", "pure infiniteness via disjoint cones", "pure-infinite", "NoViolationUpToBound"));
            e
        }),
        ("free2", None) => graph_entry(name, two_vertex(false), "N*N".into(), "free:2").map(|mut e| {
            e.annotations.push(Annotation::checked("not left reversible: aP and bP are disjoint", "disjoint principal cones", "reversibility", "Violated"));
            e.annotations.push(Annotation::checked("boundary quotient purely infinite via (a, b)", "pure infiniteness via disjoint cones", "pure-infinite", "Witness"));
            e.annotations.push(Annotation::new("not Toeplitz in the free metabelian group", "Toeplitz failure in F2/F2''"));
            e.annotations.push(Annotation::new("not Toeplitz in Thompson's group F via a->x0, b->x1", "Toeplitz failure in Thompson's group"));
            e
        }),
        ("free-product", Some(k)) => {
            let k: usize = k.parse().map_err(|_| unknown())?;
            if k == 0 || k > 26 {
                return Err(unknown());
            }
            let names = (0..k).map(|i| ((b'a' + i as u8) as char).to_string()).collect();
            let gp = GraphProduct::new(GraphSpec::new(names, &[], VertexKind::Free(1))?);
            graph_entry(name, gp, format!("free product of {k} copies of N"), &format!("free:{k}"))
        }
        ("numerical", Some(f)) => {
            let gaps: Vec<u64> = f
                .split(',')
                .filter(|t| !t.trim().is_empty())
                .map(|t| t.trim().parse().map_err(|_| unknown()))
                .collect::<Result<_>>()?;
            let mut annotations = Vec::new();
            if gaps == [1] {
                annotations.push(Annotation::checked(
                    "independence fails: 5+N = (2+P) cap (3+P) = (5+P) cup (6+P)",
                    "independence failure in N minus {1}",
                    "independence",
                    "Violated",
                ));
            }
            Ok(CatalogEntry {
                name: name.into(),
                summary: format!("numerical semigroup N minus {{{f}}}"),
                backend: Backend::Numerical(NumericalMonoid::new(gaps)?),
                presentation: None,
                default_ambient: "integers".into(),
                units: "trivial".into(),
                annotations,
            })
        }
        ("braid", Some(n)) => {
            let n: usize = n.parse().map_err(|_| unknown())?;
            Ok(presented_entry(
                name,
                &format!("positive braid monoid B{n}+"),
                braid_presentation(n)?,
                "trivial",
                vec![
                    Annotation::new("presentation complete for the rewriting relation", "completeness of Artin presentations"),
                    Annotation::new("quasi-lattice ordered in the braid group", "Garside structure"),
                    Annotation::new("Toeplitz in the braid group", "quasi-lattice orders are Toeplitz"),
                ],
            ))
        }
        ("bs", Some(kl)) => {
            let (k, l) = kl.split_once(',').ok_or_else(unknown)?;
            let k: usize = k.trim().parse().map_err(|_| unknown())?;
            let l: usize = l.trim().parse().map_err(|_| unknown())?;
            if k == 0 || l == 0 {
                return Err(unknown());
            }
            let mut lhs = vec![0];
            lhs.extend(std::iter::repeat_n(1, k));
            let mut rhs = vec![1; l];
            rhs.push(0);
            let pres = Presentation::new(vec!["a".into(), "b".into()], vec![(MonoidWord(lhs), MonoidWord(rhs))], true)?;
            Ok(presented_entry(
                name,
                &format!("Baumslag-Solitar monoid B{k},{l}+"),
                pres,
                "trivial",
                vec![Annotation::new("presentation complete for the rewriting relation", "completeness of Baumslag-Solitar presentations")],
            ))
        }
        ("thompson", _) => {
            let top: u32 = arg.map_or(Ok(4), |a| a.parse().map_err(|_| unknown()))?;
            if top < 1 {
                return Err(unknown());
            }
            Ok(CatalogEntry {
                name: name.into(),
                summary: format!("Thompson monoid F+ on x0..x{top}"),
                backend: Backend::Thompson(ThompsonMonoid::new(top)),
                presentation: Some(thompson_presentation(top, false)),
                default_ambient: "thompson".into(),
                units: "trivial".into(),
                annotations: vec![
                    Annotation::checked("left reversible", "Thompson monoid reversibility", "reversibility-left", "NoViolationUpToBound"),
                ],
            })
        }
        ("thompson-op", _) => {
            let top: u32 = arg.map_or(Ok(4), |a| a.parse().map_err(|_| unknown()))?;
            if top < 2 {
                return Err(unknown());
            }
            Ok(presented_entry(
                name,
                &format!("opposite Thompson monoid on x0..x{top}"),
                thompson_presentation(top, true),
                "trivial",
                vec![Annotation::checked(
                    "hypotheses for trivial G0 hold",
                    "no shared relation heads implies trivial G0",
                    "g0",
                    "Proved",
                )],
            ))
        }
        ("axb-Z", None) => Ok(CatalogEntry {
            name: name.into(),
            summary: "ax+b monoid over Z".into(),
            backend: Backend::Axb(AxbMonoid),
            presentation: None,
            default_ambient: "fractions".into(),
            units: "Z x| {+-1}".into(),
            annotations: vec![
                Annotation::checked("every constructible ideal is principal", "principal ideal domains", "independence", "Proved"),
                Annotation::new("class group of Q is trivial", "K-theory of ax+b over Z"),
                Annotation::new("Toeplitz in its group of fractions", "Toeplitz condition for ax+b monoids over integral domains"),
            ],
        }),
        ("quad-ring-ax-b", None) => Ok(CatalogEntry {
            name: name.into(),
            summary: "multiplicative monoid of Z[i sqrt 3], r = i sqrt 3".into(),
            backend: Backend::Quad(QuadRing::default()),
            presentation: None,
            default_ambient: "fractions".into(),
            units: "{+-1}".into(),
            annotations: vec![Annotation::checked(
                "independence fails: 2Rbar = 2R cup (1+r)R cup (-1+r)R",
                "independence failure in Z[i sqrt 3]",
                "independence",
                "Violated",
            )],
        }),
        ("raam", Some(g)) | ("graph", Some(g)) => {
            let text = match builtin_graph(g) {
                Some(t) => t.to_string(),
                None => read(g)?,
            };
            let gp = GraphProduct::parse(&text)?;
            if head == "raam" && gp.spec.kinds.iter().any(|k| *k != VertexKind::Free(1)) {
                return Err(Error::Invalid("raam graphs must use free:1 vertices".into()));
            }
            graph_entry(name, gp, format!("graph product on {g}"), "native")
        }
        ("pres", Some(path)) => {
            let pres = presentation_from_file(path)?;
            Ok(presented_entry(name, &format!("monoid presented by {path}"), pres, "trivial", vec![]))
        }
        _ => Err(unknown()),
    }
}

enum AmbientKind {
    Native,
    Oracle { oracle: Box<dyn GroupOracle>, images: Vec<GroupWord> },
    /// Left fractions t⁻¹s, with common left multiples searched in a ball.
    Fractions { radius: usize },
}

/// The group containing P through which group words over P's generators are evaluated.
pub struct Ambient {
    pub name: String,
    kind: AmbientKind,
}

impl std::fmt::Debug for Ambient {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Ambient({})", self.name)
    }
}

impl Ambient {
    /// `native`, `integers`, `fractions`, or an oracle name; generator i of P maps to letter i.
    pub fn resolve(name: &str, entry: &CatalogEntry) -> Result<Ambient> {
        let gens = with_backend!(&entry.backend, m => m.generators().len());
        let native = || Ambient { name: name.into(), kind: AmbientKind::Native };
        let has_native = with_backend!(&entry.backend, m => m.group_positive(&GroupWord::empty()).is_some());
        match name {
            "native" | "integers" if has_native => return Ok(native()),
            "fractions" => return Ok(Ambient { name: name.into(), kind: AmbientKind::Fractions { radius: 6 } }),
            _ => {}
        }
        if matches!(entry.backend, Backend::Thompson(_)) && name == "thompson" {
            return Ok(native());
        }
        if let Backend::Graph(gp) = &entry.backend {
            // The graph product group itself; a named oracle with the same positive cone is equivalent.
            let same = match name {
                "free-abelian:2" => gp.spec.edges.len() == 1 && gp.vertex_count() == 2,
                n if n.starts_with("free:") => gp.spec.edges.is_empty() && n == format!("free:{}", gp.vertex_count()),
                _ => false,
            };
            if same && gp.spec.kinds.iter().all(|k| *k == VertexKind::Free(1)) {
                return Ok(native());
            }
        }
        let oracle: Box<dyn GroupOracle> = if name == "thompson" {
            Box::new(ThompsonGroup::new(Some((0..gens as u32).collect())))
        } else {
            oracle_by_name(name)?
        };
        if let Some(r) = oracle.rank() {
            if r < gens {
                return Err(Error::Invalid(format!("{name} has rank {r}, P has {gens} generators")));
            }
        }
        let images = (0..gens as u32).map(|i| GroupWord(vec![Letter::pos(i)])).collect();
        Ok(Ambient { name: name.into(), kind: AmbientKind::Oracle { oracle, images } })
    }

    pub fn default_for(entry: &CatalogEntry) -> Result<Ambient> {
        Ambient::resolve(&entry.default_ambient, entry)
    }

    pub fn is_native(&self) -> bool {
        matches!(self.kind, AmbientKind::Native)
    }

    fn mapped(images: &[GroupWord], g: &GroupWord) -> GroupWord {
        let mut out = GroupWord::empty();
        for l in &g.0 {
            let img = &images[l.gen as usize];
            out = out.concat(&if l.inv { img.inverse() } else { img.clone() });
        }
        out
    }

    /// The element of P equal to g in the ambient group, when there is one.
    pub fn positive<M: Monoid>(&self, m: &M, g: &GroupWord) -> Div<M::Elem> {
        match &self.kind {
            AmbientKind::Native => m.group_positive(g).unwrap_or_else(|| Div::Unknown("no native group".into())),
            AmbientKind::Oracle { oracle, images } => match oracle.is_positive(&Self::mapped(images, g)) {
                Positivity::No(_) => Div::No,
                Positivity::Unknown(why) => Div::Unknown(why),
                Positivity::Yes(w) => {
                    let back: Option<Vec<u32>> = w
                        .0
                        .iter()
                        .map(|&j| images.iter().position(|im| im.0 == [Letter::pos(j)]).map(|i| i as u32))
                        .collect();
                    match back.and_then(|b| m.from_word(&MonoidWord(b))) {
                        Some(x) => Div::Quotient(x),
                        None => Div::Unknown("positive word outside the image of P".into()),
                    }
                }
            },
            AmbientKind::Fractions { radius } => match self.fraction(m, g, *radius) {
                Err(why) => Div::Unknown(why),
                Ok((t, s)) => m.left_divide(&t, &s),
            },
        }
    }

    pub fn is_identity<M: Monoid>(&self, m: &M, g: &GroupWord) -> Tri {
        match &self.kind {
            AmbientKind::Oracle { oracle, images } => Tri::from_bool(oracle.is_identity(&Self::mapped(images, g))),
            AmbientKind::Fractions { radius } => match self.fraction(m, g, *radius) {
                Ok((t, s)) => Tri::from_bool(t == s),
                Err(_) => Tri::Unknown,
            },
            AmbientKind::Native => match self.positive(m, g) {
                Div::Quotient(x) => Tri::from_bool(x == m.identity()),
                Div::No => Tri::No,
                Div::Unknown(_) => Tri::Unknown,
            },
        }
    }

    pub fn equal<M: Monoid>(&self, m: &M, u: &GroupWord, v: &GroupWord) -> Tri {
        self.is_identity(m, &u.concat(&v.inverse()))
    }

    /// (t, s) with g = t⁻¹s.
    fn fraction<M: Monoid>(&self, m: &M, g: &GroupWord, radius: usize) -> std::result::Result<(M::Elem, M::Elem), String> {
        let gens = m.generators();
        let (mut t, mut s) = (m.identity(), m.identity());
        let mut ball: Option<Vec<M::Elem>> = None;
        for l in &g.0 {
            let a = &gens[l.gen as usize];
            if !l.inv {
                s = m.mul(&s, a);
                continue;
            }
            // s a⁻¹ = u⁻¹v for u s = v a.
            let (u, v) = if m.is_commutative() {
                (a.clone(), s.clone())
            } else {
                let b = ball.get_or_insert_with(|| m.ball(radius));
                b.iter()
                    .find_map(|z| match (m.right_divide(z, &s), m.right_divide(z, a)) {
                        (Div::Quotient(u), Div::Quotient(v)) => Some((u, v)),
                        _ => None,
                    })
                    .ok_or_else(|| format!("no common left multiple within length {radius}"))?
            };
            t = m.mul(&u, &t);
            s = v;
        }
        Ok((t, s))
    }
}

/// Generators of the presentation heads: the set of first letters of each relation side.
pub fn relation_heads(p: &Presentation) -> BTreeSet<(u32, u32)> {
    p.relations
        .iter()
        .filter_map(|(l, r)| {
            let (a, b) = (*l.0.first()?, *r.0.first()?);
            Some((a.min(b), a.max(b)))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn registry_entries_resolve() {
        for n in ["nat", "nat2", "free2", "free-product:3", "numerical:1", "braid:3", "bs:1,2", "thompson", "thompson-op:3", "axb-Z", "quad-ring-ax-b", "raam:path3"] {
            let e = lookup(n).unwrap_or_else(|err| panic!("{n}: {err}"));
            Ambient::default_for(&e).unwrap_or_else(|err| panic!("{n}: {err}"));
        }
        assert!(lookup("bogus").is_err());
    }

    #[test]
    fn braid_fraction_positivity() {
        let e = lookup("braid:3").unwrap();
        let Backend::Presented(m) = &e.backend else { panic!() };
        let amb = Ambient::default_for(&e).unwrap();
        // s1 s2 s1 s2^-1 s1^-1 = s2
        let g = GroupWord(vec![Letter::pos(0), Letter::pos(1), Letter::pos(0), Letter::neg(1), Letter::neg(0)]);
        assert_eq!(amb.positive(m, &g), Div::Quotient(m.parse("s2").unwrap()));
    }
}
