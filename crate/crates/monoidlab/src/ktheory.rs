//! Index sets of the K-theory decomposition: orbit representatives of constructible
//! ideals with their stabilizers. K-groups are never computed.

use serde::{Deserialize, Serialize};

use crate::catalog::{Backend, CatalogEntry};
use crate::conditions::{check_toeplitz, Bounds, Status};
use crate::error::{Error, Result};
use crate::graphprod::GraphSpec;
use crate::ideals::{enumerate_ideals, Monoid};
use crate::with_backend;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KSummand {
    pub clique: Vec<String>,
    pub tuple: Vec<String>,
    pub stabilizer: String,
}

impl std::fmt::Display for KSummand {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "clique=[{}] tuple=[{}] stabilizer={}", self.clique.join(","), self.tuple.join(","), self.stabilizer)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KDescriptor {
    pub semigroup: String,
    pub summands: Vec<KSummand>,
    pub citations: Vec<String>,
    pub notes: Vec<String>,
}

impl KDescriptor {
    pub fn lines(&self) -> String {
        self.summands.iter().map(|s| format!("{s}\n")).collect()
    }

    pub fn to_human(&self) -> String {
        let mut out = format!("K-theory index set for {}: {} summands\n", self.semigroup, self.summands.len());
        out.push_str(&self.lines());
        for c in &self.citations {
            out.push_str(&format!("cites: {c}\n"));
        }
        for n in &self.notes {
            out.push_str(&format!("note: {n}\n"));
        }
        out
    }
}

/// Orbit data for one vertex: representatives of the nontrivial orbits and their stabilizers.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct VertexOrbits {
    pub reps: Vec<String>,
    pub stabilizers: Vec<String>,
}

impl VertexOrbits {
    /// `k` placeholder representatives X1..Xk with trivial stabilizers.
    pub fn synthetic(vertex: &str, k: usize) -> Self {
        VertexOrbits {
            reps: (1..=k).map(|i| format!("{vertex}:X{i}")).collect(),
            stabilizers: vec!["trivial".into(); k],
        }
    }
}

fn product_stabilizer(parts: &[&str]) -> String {
    let nontrivial: Vec<&str> = parts.iter().copied().filter(|s| *s != "trivial").collect();
    if nontrivial.is_empty() {
        "trivial".into()
    } else {
        nontrivial.join(" x ")
    }
}

/// The P* summand followed by one summand per nonempty clique W and tuple in ∏_{w∈W} 𝔛_w.
pub fn graph_product_k_index(name: &str, graph: &GraphSpec, data: &[VertexOrbits], units: &str) -> Result<KDescriptor> {
    if data.len() != graph.vertices.len() {
        return Err(Error::Invalid(format!("orbit data for {} of {} vertices", data.len(), graph.vertices.len())));
    }
    for (v, d) in data.iter().enumerate() {
        if d.reps.len() != d.stabilizers.len() {
            return Err(Error::Invalid(format!("vertex {} needs one stabilizer per representative", graph.vertices[v])));
        }
    }
    let mut summands = vec![KSummand { clique: Vec::new(), tuple: vec!["P".into()], stabilizer: units.into() }];
    for w in graph.cliques() {
        let mut tuples: Vec<Vec<usize>> = vec![Vec::new()];
        for &v in &w {
            tuples = tuples
                .into_iter()
                .flat_map(|t| {
                    (0..data[v].reps.len()).map(move |i| {
                        let mut t = t.clone();
                        t.push(i);
                        t
                    })
                })
                .collect();
        }
        for t in tuples {
            let stab: Vec<&str> = w.iter().zip(&t).map(|(&v, &i)| data[v].stabilizers[i].as_str()).collect();
            summands.push(KSummand {
                clique: w.iter().map(|&v| graph.vertices[v].clone()).collect(),
                tuple: w.iter().zip(&t).map(|(&v, &i)| data[v].reps[i].clone()).collect(),
                stabilizer: product_stabilizer(&stab),
            });
        }
    }
    Ok(KDescriptor {
        semigroup: name.into(),
        summands,
        citations: vec!["K-theory of graph products: summands indexed by cliques and tuples of vertex orbit representatives".into()],
        notes: Vec::new(),
    })
}

/// Single orbit [P] with stabilizer P*, once every constructible ideal is principal and
/// the sampled Toeplitz checks are not violated.
pub fn principal_case_descriptor(entry: &CatalogEntry, bounds: &Bounds) -> Result<KDescriptor> {
    let mut notes = Vec::new();
    with_backend!(&entry.backend, m => {
        match m.principal_reason() {
            Some(r) => notes.push(format!("principal ideals: {r}")),
            None => {
                let en = enumerate_ideals(m, bounds.depth, bounds.max_word_len, 400)?;
                if !en.all_principal() || en.nonempty().count() < en.entries.len() {
                    return Err(Error::Unsupported(format!("{}: a constructible ideal is empty or not principal", entry.name)));
                }
                notes.push(format!("every enumerated ideal up to depth {} is principal", bounds.depth));
            }
        }
        if entry.records_toeplitz() {
            notes.push("Toeplitz condition recorded in the catalog".into());
        } else {
            let amb = crate::catalog::Ambient::default_for(entry)?;
            let gens = m.generators();
            let quick = Bounds::with_depth(1);
            for p in &gens {
                for q in &gens {
                    if p != q && check_toeplitz(m, &entry.name, &amb, p, q, &quick).status == Status::Violated {
                        return Err(Error::Unsupported(format!("{}: Toeplitz condition fails for {} and {}", entry.name, m.render(p), m.render(q))));
                    }
                }
            }
            notes.push("Toeplitz condition not recorded; generator quotients checked on short words only".into());
        }
    });
    let axb = matches!(entry.backend, Backend::Axb(_));
    let mut summand = KSummand { clique: Vec::new(), tuple: vec!["P".into()], stabilizer: entry.units.clone() };
    if axb {
        summand.tuple = vec!["Cl(Q)=1".into()];
        notes.push("orbits indexed by the class group of Q, which is trivial (|Cl| = 1)".into());
    }
    if entry.units == "trivial" {
        notes.push("trivial unit group: C -> C*(P) induces an isomorphism in K-theory".into());
    }
    Ok(KDescriptor {
        semigroup: entry.name.clone(),
        summands: vec![summand],
        citations: vec!["K-theory for principal constructible ideals: a single orbit [P] with stabilizer P*".into()],
        notes,
    })
}

/// Graph entries go through the clique formula; other entries through the principal case.
pub fn k_descriptor(entry: &CatalogEntry, bounds: &Bounds, orbit_sizes: Option<&[usize]>) -> Result<KDescriptor> {
    match &entry.backend {
        Backend::Graph(gp) => {
            let spec = &gp.spec;
            let data: Vec<VertexOrbits> = match orbit_sizes {
                Some(sizes) => {
                    if sizes.len() != spec.vertices.len() {
                        return Err(Error::Invalid(format!("{} orbit sizes for {} vertices", sizes.len(), spec.vertices.len())));
                    }
                    spec.vertices.iter().zip(sizes).map(|(v, &k)| VertexOrbits::synthetic(v, k)).collect()
                }
                // Every constructible ideal of a free or free abelian vertex cone is a translate of P_v.
                None => vec![VertexOrbits::default(); spec.vertices.len()],
            };
            let mut d = graph_product_k_index(&entry.name, spec, &data, &entry.units)?;
            if orbit_sizes.is_some() {
                d.notes.push("synthetic vertex orbit data".into());
            }
            Ok(d)
        }
        _ if orbit_sizes.is_some() => Err(Error::Invalid("orbit sizes need a graph product".into())),
        _ => principal_case_descriptor(entry, bounds),
    }
}

/// Summand count 1 + Σ_W ∏_{w∈W} |𝔛_w|, by brute force over vertex subsets.
pub fn clique_count(graph: &GraphSpec, sizes: &[usize]) -> usize {
    let n = graph.vertices.len();
    1 + (1u64..1 << n)
        .map(|mask| (0..n).filter(|&i| mask >> i & 1 == 1).collect::<Vec<_>>())
        .filter(|w| graph.is_clique(w))
        .map(|w| w.iter().map(|&v| sizes[v]).product::<usize>())
        .sum::<usize>()
}
