//! Monoids given by finite presentations; elements are shortlex-least words of
//! their congruence class.

use std::cell::RefCell;
use std::collections::{BTreeSet, HashMap};

use crate::error::{Error, Result};
use crate::ideals::{Div, Monoid};
use crate::words::{word_class, MonoidWord, Presentation};

#[derive(Debug)]
pub struct PresentedMonoid {
    pub pres: Presentation,
    pub budget: usize,
    classes: RefCell<HashMap<MonoidWord, Option<BTreeSet<MonoidWord>>>>,
}

impl Clone for PresentedMonoid {
    fn clone(&self) -> Self {
        PresentedMonoid::new(self.pres.clone(), self.budget)
    }
}

impl PresentedMonoid {
    pub fn new(pres: Presentation, budget: usize) -> Self {
        PresentedMonoid { pres, budget, classes: RefCell::new(HashMap::new()) }
    }

    pub fn class(&self, w: &MonoidWord) -> Option<BTreeSet<MonoidWord>> {
        if let Some(hit) = self.classes.borrow().get(w) {
            return hit.clone();
        }
        let class = word_class(w, &self.pres, self.budget);
        let mut cache = self.classes.borrow_mut();
        if let Some(c) = &class {
            for member in c {
                cache.insert(member.clone(), class.clone());
            }
        }
        cache.insert(w.clone(), class.clone());
        class
    }

    /// Shortlex-least representative, or the word itself past the budget.
    pub fn canonical(&self, w: &MonoidWord) -> MonoidWord {
        match self.class(w) {
            Some(c) => c.into_iter().min_by(|a, b| a.shortlex_key().cmp(&b.shortlex_key())).expect("nonempty"),
            None => w.clone(),
        }
    }

    pub fn equal(&self, u: &MonoidWord, v: &MonoidWord) -> Option<bool> {
        self.class(u).map(|c| c.contains(v))
    }
}

impl Monoid for PresentedMonoid {
    type Elem = MonoidWord;

    fn name(&self) -> String {
        "presented".into()
    }

    fn identity(&self) -> MonoidWord {
        MonoidWord::empty()
    }

    fn generators(&self) -> Vec<MonoidWord> {
        (0..self.pres.generator_count() as u32).map(|g| self.canonical(&MonoidWord(vec![g]))).collect()
    }

    fn mul(&self, a: &MonoidWord, b: &MonoidWord) -> MonoidWord {
        self.canonical(&a.concat(b))
    }

    fn left_divide(&self, p: &MonoidWord, x: &MonoidWord) -> Div<MonoidWord> {
        match self.class(x) {
            None => Div::Unknown(format!("congruence class exceeds {} words", self.budget)),
            Some(c) => c
                .iter()
                .find(|w| w.0.starts_with(&p.0))
                .map(|w| Div::Quotient(self.canonical(&MonoidWord(w.0[p.len()..].to_vec()))))
                .unwrap_or(Div::No),
        }
    }

    fn right_divide(&self, x: &MonoidWord, q: &MonoidWord) -> Div<MonoidWord> {
        match self.class(x) {
            None => Div::Unknown(format!("congruence class exceeds {} words", self.budget)),
            Some(c) => c
                .iter()
                .find(|w| w.0.ends_with(&q.0))
                .map(|w| Div::Quotient(self.canonical(&MonoidWord(w.0[..w.len() - q.len()].to_vec()))))
                .unwrap_or(Div::No),
        }
    }

    fn length(&self, x: &MonoidWord) -> usize {
        x.len()
    }

    fn word(&self, x: &MonoidWord) -> MonoidWord {
        x.clone()
    }

    fn render(&self, x: &MonoidWord) -> String {
        self.pres.alphabet.render_monoid(x)
    }

    fn parse(&self, text: &str) -> Result<MonoidWord> {
        Ok(self.canonical(&self.pres.alphabet.parse_monoid(text)?))
    }

    /// Homogeneous relations give finite classes, so class scans decide division.
    fn division_exact(&self) -> bool {
        self.pres.is_homogeneous()
    }

    fn is_commutative(&self) -> bool {
        let n = self.pres.generator_count() as u32;
        (0..n).all(|a| {
            (a + 1..n).all(|b| self.equal(&MonoidWord(vec![a, b]), &MonoidWord(vec![b, a])) == Some(true))
        })
    }
}

pub fn presentation_from_file(path: &str) -> Result<Presentation> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Invalid(format!("cannot read {path}: {e}")))?;
    crate::words::parse_presentation(&text)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::words::parse_presentation;

    #[test]
    fn braid_division() {
        let pres = parse_presentation("generators: s1 s2\ns1 s2 s1 = s2 s1 s2\ncomplete: true\n").unwrap();
        let m = PresentedMonoid::new(pres, 10_000);
        let x = m.parse("s2.s1.s2").unwrap();
        let p = m.parse("s1").unwrap();
        assert_eq!(m.left_divide(&p, &x), Div::Quotient(m.parse("s2.s1").unwrap()));
        assert_eq!(m.left_divide(&p, &m.parse("s2").unwrap()), Div::No);
    }
}
