//! Certificate-producing checkers for structural conditions on P ⊆ G.

mod boundary;
mod independence;
mod replay;
mod toeplitz;

use serde::{Deserialize, Serialize};

use crate::catalog::{Ambient, CatalogEntry};
use crate::error::{Error, Result};
use crate::ideals::{in_hull_image, HullElement, Monoid, Tri};
use crate::with_backend;
use crate::words::{GroupWord, Letter};

pub use boundary::{
    check_g0, check_omega_equals_boundary, check_pure_infiniteness, check_quasi_lattice, check_reversibility,
    ideal_empty, Side,
};
pub use independence::{check_independence, verify_cover, CoverProof};
pub use replay::replay;
pub use toeplitz::{check_toeplitz, verify_hull_witness};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Status {
    Proved,
    Witness,
    Violated,
    NoViolationUpToBound,
    Unknown,
}

impl Status {
    pub fn as_str(&self) -> &'static str {
        match self {
            Status::Proved => "Proved",
            Status::Witness => "Witness",
            Status::Violated => "Violated",
            Status::NoViolationUpToBound => "NoViolationUpToBound",
            Status::Unknown => "Unknown",
        }
    }
}

impl std::str::FromStr for Status {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "Proved" => Status::Proved,
            "Witness" => Status::Witness,
            "Violated" => Status::Violated,
            "NoViolationUpToBound" => Status::NoViolationUpToBound,
            "Unknown" => Status::Unknown,
            _ => return Err(Error::Invalid(format!("unknown status `{s}`"))),
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Bounds {
    pub depth: usize,
    pub max_word_len: usize,
    pub budget: usize,
    pub family_size: usize,
}

impl Bounds {
    pub fn with_depth(depth: usize) -> Self {
        Bounds { depth, max_word_len: 2 * depth + 2, budget: crate::catalog::DEFAULT_BUDGET, family_size: 3 }
    }
}

impl Default for Bounds {
    fn default() -> Self {
        Bounds::with_depth(3)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Refuted {
    pub z: String,
    pub reason: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyWitness {
    pub family: Vec<String>,
    pub p: String,
}

/// Replayable data behind a verdict. Elements and hull chains are rendered in the
/// monoid's own syntax.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Certificate {
    None,
    Criterion {
        reason: String,
    },
    /// X = ∪ pᵢP with every part strictly smaller than X.
    Cover {
        ideal: String,
        description: Option<String>,
        parts: Vec<String>,
        /// An element of X outside pᵢP, per part.
        strict: Vec<String>,
        union_check: String,
    },
    HullWitness {
        g: String,
        hull: String,
        domain_check: String,
    },
    /// P ∩ gP = zP is impossible for every z dividing all listed range elements.
    Refutation {
        g: String,
        p: String,
        q: String,
        range: Vec<String>,
        candidates: Vec<Refuted>,
    },
    Generator {
        g: String,
        generator: Option<String>,
        check: String,
    },
    Incomparable {
        g: String,
        minimal: Vec<String>,
        check: String,
    },
    DisjointPair {
        side: String,
        p: String,
        q: String,
    },
    /// Every generator lies in some member of the family.
    Saturated {
        family: Vec<String>,
        covering: Vec<(String, String)>,
    },
    Families {
        families: Vec<FamilyWitness>,
    },
    Heads {
        partners: Vec<(String, String)>,
    },
    HeadClash {
        u: String,
        blocked: Vec<String>,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub condition: String,
    pub semigroup: String,
    pub ambient: Option<String>,
    pub status: Status,
    pub certificate: Certificate,
    pub bounds: Bounds,
    pub citations: Vec<String>,
    pub notes: Vec<String>,
}

impl Report {
    pub fn new(condition: &str, semigroup: &str, bounds: &Bounds) -> Self {
        Report {
            condition: condition.into(),
            semigroup: semigroup.into(),
            ambient: None,
            status: Status::Unknown,
            certificate: Certificate::None,
            bounds: bounds.clone(),
            citations: Vec::new(),
            notes: Vec::new(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn from_json(text: &str) -> Result<Report> {
        serde_json::from_str(text).map_err(|e| Error::Invalid(format!("malformed report: {e}")))
    }

    pub fn to_human(&self) -> String {
        let mut out = format!("{} for {}", self.condition, self.semigroup);
        if let Some(a) = &self.ambient {
            out.push_str(&format!(" in {a}"));
        }
        out.push_str(&format!(": {}\n", self.status.as_str()));
        let cert = serde_json::to_value(&self.certificate).expect("certificate serializes");
        if let serde_json::Value::Object(map) = cert {
            for (k, v) in map {
                if k == "kind" {
                    out.push_str(&format!("  certificate: {}\n", v.as_str().unwrap_or_default()));
                } else {
                    out.push_str(&format!("    {k}: {v}\n"));
                }
            }
        }
        out.push_str(&format!(
            "  bounds: depth={} max-word-len={} budget={} family-size={}\n",
            self.bounds.depth, self.bounds.max_word_len, self.bounds.budget, self.bounds.family_size
        ));
        for c in &self.citations {
            out.push_str(&format!("  cites: {c}\n"));
        }
        for n in &self.notes {
            out.push_str(&format!("  note: {n}\n"));
        }
        out
    }
}

/// Exit status for a batch of reports: 2 if any is Violated, else 3 if any is Unknown.
pub fn exit_code(reports: &[Report]) -> i32 {
    if reports.iter().any(|r| r.status == Status::Violated) {
        2
    } else if reports.iter().any(|r| r.status == Status::Unknown) {
        3
    } else {
        0
    }
}

/// `a.b^-1` over rendered generator names; `e` for the empty word.
pub fn render_group<M: Monoid>(m: &M, g: &GroupWord) -> String {
    if g.is_empty() {
        return "e".into();
    }
    let gens = m.generators();
    let parts: Vec<String> = g
        .0
        .iter()
        .map(|l| {
            let name = m.render(&gens[l.gen as usize]);
            if l.inv {
                format!("{name}^-1")
            } else {
                name
            }
        })
        .collect();
    parts.join(".")
}

pub fn parse_group<M: Monoid>(m: &M, text: &str) -> Result<GroupWord> {
    let t = text.trim();
    if t == "e" || t.is_empty() {
        return Ok(GroupWord::empty());
    }
    let names: Vec<String> = m.generators().iter().map(|g| m.render(g)).collect();
    let mut out = Vec::new();
    for tok in t.split('.') {
        let (name, inv) = match tok.strip_suffix("^-1") {
            Some(n) => (n, true),
            None => (tok, false),
        };
        let gen = names.iter().position(|n| n == name).ok_or_else(|| Error::ForeignLetter(name.into()))?;
        out.push(Letter { gen: gen as u32, inv });
    }
    Ok(GroupWord(out))
}

/// g = p q⁻¹ as a group word.
pub fn quotient_word<M: Monoid>(m: &M, p: &M::Elem, q: &M::Elem) -> GroupWord {
    m.word(p).to_group().concat(&m.word(q).to_group().inverse())
}

/// Range sample of x ↦ gx: elements y of the ball with g⁻¹y ∈ P.
pub(crate) fn in_range<M: Monoid>(m: &M, amb: &Ambient, g: &GroupWord, y: &M::Elem) -> Tri {
    amb.positive(m, &g.inverse().concat(&m.word(y).to_group())).tri()
}

pub(crate) fn divides<M: Monoid>(m: &M, p: &M::Elem, x: &M::Elem) -> Tri {
    m.left_divide(p, x).tri()
}

pub(crate) fn member<M: Monoid>(m: &M, s: &HullElement<M::Elem>, x: &M::Elem) -> Tri {
    in_hull_image(m, s, x)
}

pub(crate) fn ball_label(l: usize) -> String {
    format!("ball:{l}")
}

pub(crate) fn parse_ball(label: &str) -> Result<usize> {
    label
        .strip_prefix("ball:")
        .and_then(|n| n.parse().ok())
        .ok_or_else(|| Error::Invalid(format!("bad check label `{label}`")))
}

/// Runs a named condition on a catalog entry.
pub fn run_condition(
    condition: &str,
    entry: &CatalogEntry,
    ambient: Option<&str>,
    bounds: &Bounds,
    pq: Option<(&str, &str)>,
) -> Result<Report> {
    let amb = match ambient {
        Some(a) => Ambient::resolve(a, entry)?,
        None => Ambient::default_for(entry)?,
    };
    let mut report = match condition {
        "independence" => check_independence(entry, bounds),
        "reversibility" => {
            let mut r = check_reversibility(entry, Side::Left, bounds);
            if r.status != Status::Violated {
                let right = check_reversibility(entry, Side::Right, bounds);
                if right.status == Status::Violated || right.status == Status::Unknown {
                    r = right;
                }
            }
            r
        }
        "reversibility-left" => check_reversibility(entry, Side::Left, bounds),
        "reversibility-right" => check_reversibility(entry, Side::Right, bounds),
        "boundary-eq" => check_omega_equals_boundary(entry, bounds),
        "pure-infinite" => check_pure_infiniteness(entry, bounds),
        "g0" => check_g0(entry, bounds),
        "toeplitz" | "quasi-lattice" => {
            let (p, q) = pq.ok_or_else(|| Error::Invalid(format!("{condition} needs --p and --q")))?;
            with_backend!(&entry.backend, m => {
                let p = m.parse(p)?;
                let q = m.parse(q)?;
                if condition == "toeplitz" {
                    check_toeplitz(m, &entry.name, &amb, &p, &q, bounds)
                } else {
                    check_quasi_lattice(m, &entry.name, &amb, &quotient_word(m, &p, &q), bounds)
                }
            })
        }
        _ => return Err(Error::Invalid(format!("unknown condition `{condition}`"))),
    };
    if matches!(condition, "toeplitz" | "quasi-lattice") {
        report.ambient = Some(amb.name.clone());
    }
    Ok(report)
}
