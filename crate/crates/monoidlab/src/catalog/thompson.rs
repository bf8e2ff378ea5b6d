//! The Thompson monoid F⁺ sampled through the generators x0..xN.

use crate::error::{Error, Result};
use crate::ideals::{Div, Monoid};
use crate::oracles::thompson::{sort_positive, thompson_normal_form, ThompsonNF};
use crate::oracles::{GroupOracle, ThompsonGroup};
use crate::words::{GroupWord, Letter, MonoidWord, Presentation};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ThompsonMonoid {
    /// Largest generator index used for sampling.
    pub top: u32,
}

impl ThompsonMonoid {
    pub fn new(top: u32) -> Self {
        ThompsonMonoid { top }
    }

    fn quotient(w: GroupWord) -> Div<Vec<u32>> {
        let nf = thompson_normal_form(&w);
        if nf.is_positive() {
            Div::Quotient(nf.positive)
        } else {
            Div::No
        }
    }

    fn group(v: &[u32]) -> GroupWord {
        GroupWord(v.iter().map(|&i| Letter::pos(i)).collect())
    }
}

impl Monoid for ThompsonMonoid {
    type Elem = Vec<u32>;

    fn name(&self) -> String {
        format!("thompson:{}", self.top)
    }

    fn identity(&self) -> Vec<u32> {
        Vec::new()
    }

    fn generators(&self) -> Vec<Vec<u32>> {
        (0..=self.top).map(|i| vec![i]).collect()
    }

    fn mul(&self, a: &Vec<u32>, b: &Vec<u32>) -> Vec<u32> {
        let mut w = a.clone();
        w.extend_from_slice(b);
        sort_positive(&mut w);
        w
    }

    fn left_divide(&self, p: &Vec<u32>, x: &Vec<u32>) -> Div<Vec<u32>> {
        Self::quotient(Self::group(p).inverse().concat(&Self::group(x)))
    }

    fn right_divide(&self, x: &Vec<u32>, q: &Vec<u32>) -> Div<Vec<u32>> {
        Self::quotient(Self::group(x).concat(&Self::group(q).inverse()))
    }

    fn length(&self, x: &Vec<u32>) -> usize {
        x.len()
    }

    /// Letter i stands for x_i.
    fn word(&self, x: &Vec<u32>) -> MonoidWord {
        MonoidWord(x.clone())
    }

    fn render(&self, x: &Vec<u32>) -> String {
        ThompsonNF { positive: x.clone(), negative: Vec::new() }.render()
    }

    fn parse(&self, text: &str) -> Result<Vec<u32>> {
        let w = ThompsonGroup::new(None).parse_word(text)?;
        let nf = thompson_normal_form(&w);
        if !nf.is_positive() {
            return Err(Error::Invalid(format!("`{text}` is not in F+")));
        }
        Ok(nf.positive)
    }

    fn division_exact(&self) -> bool {
        true
    }

    fn from_word(&self, w: &MonoidWord) -> Option<Vec<u32>> {
        let mut x = w.0.clone();
        sort_positive(&mut x);
        Some(x)
    }

    fn group_positive(&self, g: &GroupWord) -> Option<Div<Vec<u32>>> {
        Some(Self::quotient(g.clone()))
    }
}

/// x_n x_k = x_k x_{n+1} for k < n and n+1 ≤ top.
pub fn thompson_presentation(top: u32, opposite: bool) -> Presentation {
    let names = (0..=top).map(|i| format!("x{i}")).collect();
    let mut relations = Vec::new();
    for n in 1..top {
        for k in 0..n {
            let (l, r) = (vec![n, k], vec![k, n + 1]);
            if opposite {
                relations.push((MonoidWord(l.into_iter().rev().collect()), MonoidWord(r.into_iter().rev().collect())));
            } else {
                relations.push((MonoidWord(l), MonoidWord(r)));
            }
        }
    }
    Presentation::new(names, relations, true).expect("well-formed")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn truncated_relation_count() {
        assert_eq!(thompson_presentation(4, false).relations.len(), 6);
    }

    #[test]
    fn division_in_cone() {
        let m = ThompsonMonoid::new(3);
        let x = m.parse("x1.x0").unwrap();
        assert_eq!(x, vec![0, 2]);
        assert_eq!(m.left_divide(&vec![1], &x), Div::Quotient(vec![0]));
        assert_eq!(m.left_divide(&vec![2], &x), Div::No);
    }
}
