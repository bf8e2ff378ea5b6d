//! Thompson's group F with relations x_n x_k = x_k x_{n+1} for k < n.
//!
//! Normal form: x_{i1}⋯x_{is} x_{jt}⁻¹⋯x_{j1}⁻¹ with i1 ≤ ⋯ ≤ is, j1 ≤ ⋯ ≤ jt, and
//! whenever x_i and x_i⁻¹ both occur, x_{i+1} or x_{i+1}⁻¹ occurs as well.
//! The last condition is the standard uniqueness condition for this form.

use std::cell::RefCell;
use std::collections::HashMap;

use super::{GroupOracle, Positivity};
use crate::words::{GeneratorId, GroupWord, Letter, MonoidWord};

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ThompsonNF {
    /// Nondecreasing indices of the positive part.
    pub positive: Vec<u32>,
    /// Nondecreasing indices j1 ≤ ⋯ ≤ jt; the word carries x_{jt}⁻¹⋯x_{j1}⁻¹.
    pub negative: Vec<u32>,
}

impl ThompsonNF {
    pub fn is_identity(&self) -> bool {
        self.positive.is_empty() && self.negative.is_empty()
    }

    pub fn is_positive(&self) -> bool {
        self.negative.is_empty()
    }

    pub fn to_word(&self) -> GroupWord {
        let mut out: Vec<Letter> = self.positive.iter().map(|&i| Letter::pos(i)).collect();
        out.extend(self.negative.iter().rev().map(|&j| Letter::neg(j)));
        GroupWord(out)
    }

    pub fn render(&self) -> String {
        let w = self.to_word();
        if w.is_empty() {
            return "e".into();
        }
        let parts: Vec<String> = w
            .0
            .iter()
            .map(|l| if l.inv { format!("x{}^-1", l.gen) } else { format!("x{}", l.gen) })
            .collect();
        parts.join(".")
    }
}

/// Sorts a positive word with x_n x_k → x_k x_{n+1} (k < n).
pub fn sort_positive(word: &mut Vec<u32>) {
    let mut changed = true;
    while changed {
        changed = false;
        for i in 0..word.len().saturating_sub(1) {
            let (n, k) = (word[i], word[i + 1]);
            if k < n {
                word[i] = k;
                word[i + 1] = n + 1;
                changed = true;
            }
        }
    }
}

pub fn thompson_normal_form(w: &GroupWord) -> ThompsonNF {
    // Push inverse letters to the right:
    //   x_k⁻¹ x_k → ε,  x_k⁻¹ x_n → x_{n+1} x_k⁻¹ (k < n),  x_n⁻¹ x_k → x_k x_{n+1}⁻¹ (k < n).
    let mut letters = w.free_reduce().0;
    let mut changed = true;
    while changed {
        changed = false;
        let mut i = 0;
        while i + 1 < letters.len() {
            let (a, b) = (letters[i], letters[i + 1]);
            if a.inv && !b.inv {
                if a.gen == b.gen {
                    letters.drain(i..i + 2);
                } else if a.gen < b.gen {
                    letters[i] = Letter::pos(b.gen + 1);
                    letters[i + 1] = a;
                } else {
                    letters[i] = b;
                    letters[i + 1] = Letter::neg(a.gen + 1);
                }
                changed = true;
                i = i.saturating_sub(1);
                continue;
            }
            i += 1;
        }
    }
    let mut positive: Vec<u32> = letters.iter().filter(|l| !l.inv).map(|l| l.gen).collect();
    let mut negative: Vec<u32> = letters.iter().rev().filter(|l| l.inv).map(|l| l.gen).collect();
    sort_positive(&mut positive);
    sort_positive(&mut negative);
    reduce_pairs(&mut positive, &mut negative);
    ThompsonNF { positive, negative }
}

/// Cancels x_i against x_i⁻¹ while neither part contains index i+1.
fn reduce_pairs(pos: &mut Vec<u32>, neg: &mut Vec<u32>) {
    loop {
        let candidate = pos.iter().rev().copied().find(|&i| {
            neg.contains(&i) && !pos.contains(&(i + 1)) && !neg.contains(&(i + 1))
        });
        let Some(i) = candidate else { return };
        for part in [&mut *pos, &mut *neg] {
            let at = part.iter().rposition(|&x| x == i).expect("index present");
            part.remove(at);
            for x in part.iter_mut().skip(at) {
                *x -= 1;
            }
        }
    }
}

/// Thompson's group. The positive cone is F⁺, or the submonoid generated by
/// `positive_generators` when that is set.
#[derive(Debug)]
pub struct ThompsonGroup {
    pub positive_generators: Option<Vec<u32>>,
    memo: RefCell<HashMap<Vec<u32>, Option<Vec<u32>>>>,
}

impl ThompsonGroup {
    pub fn new(positive_generators: Option<Vec<u32>>) -> Self {
        ThompsonGroup { positive_generators, memo: RefCell::new(HashMap::new()) }
    }

    /// Writes a sorted positive normal form as a word over the chosen generators.
    fn express(&self, nf: &[u32], gens: &[u32]) -> Option<Vec<u32>> {
        if nf.is_empty() {
            return Some(Vec::new());
        }
        if let Some(hit) = self.memo.borrow().get(nf) {
            return hit.clone();
        }
        let mut found = None;
        for &g in gens {
            let mut w: Vec<Letter> = vec![Letter::neg(g)];
            w.extend(nf.iter().map(|&i| Letter::pos(i)));
            let rest = thompson_normal_form(&GroupWord(w));
            if !rest.is_positive() || rest.positive.len() + 1 != nf.len() {
                continue;
            }
            if let Some(mut tail) = self.express(&rest.positive, gens) {
                tail.insert(0, g);
                found = Some(tail);
                break;
            }
        }
        self.memo.borrow_mut().insert(nf.to_vec(), found.clone());
        found
    }
}

impl GroupOracle for ThompsonGroup {
    fn name(&self) -> String {
        "thompson".into()
    }

    fn rank(&self) -> Option<usize> {
        None
    }

    fn letter_name(&self, g: GeneratorId) -> String {
        format!("x{g}")
    }

    fn parse_letter(&self, s: &str) -> Option<GeneratorId> {
        let digits = s.strip_prefix('x')?;
        if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
            return None;
        }
        digits.parse().ok()
    }

    fn canonical(&self, w: &GroupWord) -> String {
        thompson_normal_form(w).render()
    }

    fn is_positive(&self, w: &GroupWord) -> Positivity {
        let nf = thompson_normal_form(w);
        if !nf.is_positive() {
            return Positivity::No(format!(
                "normal form {} has a nonempty negative part, so it is not in F⁺",
                nf.render()
            ));
        }
        match &self.positive_generators {
            None => Positivity::Yes(MonoidWord(nf.positive)),
            Some(gens) => match self.express(&nf.positive, gens) {
                Some(word) => Positivity::Yes(MonoidWord(word)),
                None => Positivity::No(format!(
                    "{} is in F⁺ but not a product of the chosen generators",
                    nf.render()
                )),
            },
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(s: &str) -> GroupWord {
        ThompsonGroup::new(None).parse_word(s).unwrap()
    }

    #[test]
    fn single_relation() {
        assert_eq!(thompson_normal_form(&parse("x1.x0")).render(), "x0.x2");
    }

    #[test]
    fn inverse_cancels() {
        assert!(thompson_normal_form(&parse("x0.x0^-1")).is_identity());
        assert!(thompson_normal_form(&parse("x3^-1.x3")).is_identity());
    }

    #[test]
    fn conjugation_shifts_index() {
        // x_k⁻¹ x_n x_k = x_{n+1}
        let nf = thompson_normal_form(&parse("x0^-1.x2.x0"));
        assert_eq!(nf.render(), "x3");
    }

    #[test]
    fn membership_in_two_generator_cone() {
        let g = ThompsonGroup::new(Some(vec![0, 1]));
        assert_eq!(g.is_positive(&parse("x0.x2")), Positivity::Yes(MonoidWord(vec![1, 0])));
        assert!(g.is_positive(&parse("x2")).is_no());
    }
}
