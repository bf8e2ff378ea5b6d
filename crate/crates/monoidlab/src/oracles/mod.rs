//! Word-problem backends for ambient groups.

pub mod free;
pub mod laurent;
pub mod metabelian;
pub mod thompson;

use crate::error::{Error, Result};
use crate::graphprod::GraphProductGroup;
use crate::words::{GeneratorId, GroupWord, Letter, MonoidWord};

pub use free::{free_reduce, FreeAbelianGroup, FreeGroup};
pub use metabelian::{fox_image, metabelian_eq, FoxImage, MetabelianGroup};
pub use thompson::{thompson_normal_form, ThompsonGroup, ThompsonNF};

/// Membership of a group element in the distinguished positive submonoid.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Positivity {
    /// A positive word over the distinguished generators representing the element.
    Yes(MonoidWord),
    No(String),
    Unknown(String),
}

impl Positivity {
    pub fn is_yes(&self) -> bool {
        matches!(self, Positivity::Yes(_))
    }

    pub fn is_no(&self) -> bool {
        matches!(self, Positivity::No(_))
    }
}

pub trait GroupOracle {
    fn name(&self) -> String;

    /// Number of generators, `None` for infinitely generated groups.
    fn rank(&self) -> Option<usize>;

    fn letter_name(&self, g: GeneratorId) -> String;

    fn parse_letter(&self, s: &str) -> Option<GeneratorId>;

    /// Canonical form as text; equal elements give equal strings.
    fn canonical(&self, w: &GroupWord) -> String;

    fn is_positive(&self, w: &GroupWord) -> Positivity;

    fn eq(&self, u: &GroupWord, v: &GroupWord) -> bool {
        self.canonical(u) == self.canonical(v)
    }

    fn is_identity(&self, w: &GroupWord) -> bool {
        self.eq(w, &GroupWord::empty())
    }

    fn check_word(&self, w: &GroupWord) -> Result<()> {
        if let Some(n) = self.rank() {
            if let Some(l) = w.0.iter().find(|l| l.gen as usize >= n) {
                return Err(Error::ForeignLetter(format!("#{}", l.gen)));
            }
        }
        Ok(())
    }

    fn render(&self, w: &GroupWord) -> String {
        if w.is_empty() {
            return "e".into();
        }
        let parts: Vec<String> = w
            .0
            .iter()
            .map(|l| {
                let n = self.letter_name(l.gen);
                if l.inv {
                    format!("{n}^-1")
                } else {
                    n
                }
            })
            .collect();
        parts.join(".")
    }

    fn parse_word(&self, text: &str) -> Result<GroupWord> {
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
            let gen = self.parse_letter(name).ok_or_else(|| Error::ForeignLetter(name.into()))?;
            out.push(Letter { gen, inv });
        }
        Ok(GroupWord(out))
    }
}

/// Names `a, b, c, …` for small ranks, `g0, g1, …` beyond 26.
pub(crate) fn letter_label(n: usize, g: GeneratorId) -> String {
    if n <= 26 {
        ((b'a' + g as u8) as char).to_string()
    } else {
        format!("g{g}")
    }
}

pub(crate) fn parse_label(n: usize, s: &str) -> Option<GeneratorId> {
    let g = if n <= 26 {
        let mut cs = s.chars();
        let c = cs.next()?;
        if cs.next().is_some() || !c.is_ascii_lowercase() {
            return None;
        }
        (c as u8 - b'a') as GeneratorId
    } else {
        s.strip_prefix('g')?.parse().ok()?
    };
    ((g as usize) < n).then_some(g)
}

/// Registry: `free:n`, `free-abelian:n`, `metabelian:2`, `thompson`, `graph-product:<file>`.
pub fn oracle_by_name(name: &str) -> Result<Box<dyn GroupOracle>> {
    let unknown = || Error::UnknownOracle(name.to_string());
    if name == "thompson" {
        return Ok(Box::new(ThompsonGroup::new(None)));
    }
    if name == "metabelian:2" {
        return Ok(Box::new(MetabelianGroup::default()));
    }
    if let Some(path) = name.strip_prefix("graph-product:") {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Invalid(format!("cannot read {path}: {e}")))?;
        return Ok(Box::new(GraphProductGroup::parse(&text)?));
    }
    let (kind, rank) = name.split_once(':').ok_or_else(unknown)?;
    let rank: usize = rank.parse().map_err(|_| unknown())?;
    if rank == 0 {
        return Err(unknown());
    }
    match kind {
        "free" => Ok(Box::new(FreeGroup::new(rank))),
        "free-abelian" => Ok(Box::new(FreeAbelianGroup::new(rank))),
        _ => Err(unknown()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn registry_names() {
        for n in ["free:2", "free-abelian:3", "metabelian:2", "thompson"] {
            assert!(oracle_by_name(n).is_ok(), "{n}");
        }
        assert!(oracle_by_name("metabelian:3").is_err());
        assert!(oracle_by_name("free:0").is_err());
    }
}
