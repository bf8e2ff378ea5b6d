//! Numerical semigroups ℕ \ F for a finite gap set F.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::ideals::{in_hull_image, Div, HullElement, Monoid, Move, Tri};
use crate::words::MonoidWord;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NumericalMonoid {
    pub gaps: BTreeSet<u64>,
    /// Minimal generators, ascending.
    pub gens: Vec<u64>,
    /// Least c with c + ℕ ⊆ S.
    pub conductor: u64,
}

impl NumericalMonoid {
    pub fn new(gaps: impl IntoIterator<Item = u64>) -> Result<Self> {
        let gaps: BTreeSet<u64> = gaps.into_iter().collect();
        if gaps.contains(&0) {
            return Err(Error::Invalid("0 cannot be a gap".into()));
        }
        let conductor = gaps.iter().next_back().map_or(0, |g| g + 1);
        let member = |x: u64| !gaps.contains(&x);
        for a in 1..conductor {
            for b in a..conductor {
                if member(a) && member(b) && !member(a + b) {
                    return Err(Error::Invalid(format!("{a} + {b} = {} is a gap", a + b)));
                }
            }
        }
        let multiplicity = (1..).find(|&x| member(x)).expect("finite gaps");
        let mut gens = Vec::new();
        for s in 1..=conductor + multiplicity {
            if !member(s) {
                continue;
            }
            let decomposable = (1..s).any(|a| member(a) && member(s - a));
            if !decomposable {
                gens.push(s);
            }
        }
        Ok(NumericalMonoid { gaps, gens, conductor })
    }

    pub fn contains(&self, x: u64) -> bool {
        !self.gaps.contains(&x)
    }

    /// Minimal generator counts for 0..=x, with the last generator used.
    fn table(&self, x: u64) -> Vec<Option<(usize, usize)>> {
        let mut best: Vec<Option<(usize, usize)>> = vec![None; x as usize + 1];
        best[0] = Some((0, usize::MAX));
        for v in 1..=x as usize {
            for (i, &g) in self.gens.iter().enumerate() {
                if g as usize > v {
                    break;
                }
                if let Some((c, _)) = best[v - g as usize] {
                    if best[v].is_none_or(|(b, _)| c + 1 < b) {
                        best[v] = Some((c + 1, i));
                    }
                }
            }
        }
        best
    }

    fn horizon(&self, s: &HullElement<u64>) -> u64 {
        let mults: u64 = s
            .moves
            .iter()
            .map(|m| match m {
                Move::LeftMult(p) => *p,
                Move::LeftDivide(_) => 0,
            })
            .sum();
        mults + (s.moves.len() as u64 + 1) * self.conductor + self.gens.last().copied().unwrap_or(1)
    }

    /// Least element of s(P); constructible ideals of a numerical semigroup are never empty.
    pub fn ideal_min(&self, s: &HullElement<u64>) -> Option<u64> {
        (0..=self.horizon(s) + self.conductor).find(|x| self.contains(*x) && in_hull_image(self, s, x) == Tri::Yes)
    }
}

impl Monoid for NumericalMonoid {
    type Elem = u64;

    fn name(&self) -> String {
        if self.gaps.is_empty() {
            "N".into()
        } else {
            let g: Vec<String> = self.gaps.iter().map(u64::to_string).collect();
            format!("N\\{{{}}}", g.join(","))
        }
    }

    fn identity(&self) -> u64 {
        0
    }

    fn generators(&self) -> Vec<u64> {
        self.gens.clone()
    }

    fn mul(&self, a: &u64, b: &u64) -> u64 {
        a + b
    }

    fn left_divide(&self, p: &u64, x: &u64) -> Div<u64> {
        if x >= p && self.contains(x - p) {
            Div::Quotient(x - p)
        } else {
            Div::No
        }
    }

    fn right_divide(&self, x: &u64, q: &u64) -> Div<u64> {
        self.left_divide(q, x)
    }

    fn length(&self, x: &u64) -> usize {
        self.table(*x)[*x as usize].map_or(usize::MAX, |(c, _)| c)
    }

    fn word(&self, x: &u64) -> MonoidWord {
        let t = self.table(*x);
        let mut out = Vec::new();
        let mut v = *x as usize;
        while v > 0 {
            let (_, i) = t[v].expect("element of S");
            out.push(i as u32);
            v -= self.gens[i] as usize;
        }
        out.sort_unstable();
        MonoidWord(out)
    }

    fn render(&self, x: &u64) -> String {
        x.to_string()
    }

    fn parse(&self, text: &str) -> Result<u64> {
        let t = text.trim();
        let x: u64 = if t == "e" { 0 } else { t.parse().map_err(|_| Error::Invalid(format!("`{t}` is not a number")))? };
        if !self.contains(x) {
            return Err(Error::Invalid(format!("{x} is a gap")));
        }
        Ok(x)
    }

    fn division_exact(&self) -> bool {
        true
    }

    fn is_commutative(&self) -> bool {
        true
    }

    fn group_positive(&self, g: &crate::words::GroupWord) -> Option<Div<u64>> {
        let v: i64 = g.0.iter().map(|l| if l.inv { -(self.gens[l.gen as usize] as i64) } else { self.gens[l.gen as usize] as i64 }).sum();
        Some(if v >= 0 && self.contains(v as u64) { Div::Quotient(v as u64) } else { Div::No })
    }

    fn render_principal(&self, p: &u64) -> String {
        if *p == 0 {
            "P".into()
        } else {
            format!("{p}+P")
        }
    }

    fn exact_ideal_key(&self, s: &HullElement<u64>) -> Option<String> {
        let m = self.ideal_min(s)?;
        let bits: String = (m..=m + self.conductor)
            .map(|x| if in_hull_image(self, s, &x) == Tri::Yes { '1' } else { '0' })
            .collect();
        Some(format!("min={m} bits={bits}"))
    }

    fn describe_ideal(&self, s: &HullElement<u64>) -> Option<String> {
        let m = self.ideal_min(s)?;
        let members: Vec<String> = (m..=m + self.conductor)
            .filter(|x| in_hull_image(self, s, x) == Tri::Yes)
            .map(|x| x.to_string())
            .collect();
        Some(format!("{{{},...}}", members.join(",")))
    }

    fn principal_of(&self, s: &HullElement<u64>) -> Option<Option<u64>> {
        let m = self.ideal_min(s)?;
        Some((self.exact_ideal_key(s) == self.exact_ideal_key(&HullElement::mult(m))).then_some(m))
    }

    fn exact_union(&self, x: &HullElement<u64>, parts: &[u64]) -> Option<bool> {
        if parts.iter().any(|p| in_hull_image(self, x, p) != Tri::Yes) {
            return Some(false);
        }
        let m = self.ideal_min(x)?;
        // Above max(parts) + conductor every part already contains everything.
        let top = parts.iter().copied().max().unwrap_or(0).max(m) + self.conductor;
        let covered = (0..=top).all(|y| {
            in_hull_image(self, x, &y) != Tri::Yes || parts.iter().any(|p| self.left_divide(p, &y).tri() == Tri::Yes)
        });
        Some(covered)
    }

    fn principal_reason(&self) -> Option<String> {
        self.gaps.is_empty().then(|| "N is totally ordered, so every nonempty ideal is n+N".into())
    }
}
