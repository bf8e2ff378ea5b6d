//! F₂/F₂″ through Fox derivatives projected to ℤ[x±1, y±1].

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::{GroupOracle, Positivity};
use crate::error::{Error, Result};
use crate::words::{GeneratorId, GroupWord, MonoidWord};
use crate::LaurentPoly2;

const A: GeneratorId = 0;
const B: GeneratorId = 1;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FoxImage {
    pub abelianization: (i64, i64),
    pub da: LaurentPoly2,
    pub db: LaurentPoly2,
}

impl FoxImage {
    pub fn identity() -> Self {
        FoxImage { abelianization: (0, 0), da: LaurentPoly2::zero(), db: LaurentPoly2::zero() }
    }

    pub fn is_trivial(&self) -> bool {
        self.abelianization == (0, 0) && self.da.is_zero() && self.db.is_zero()
    }

    /// Image of u·v from the images of u and v (product rule).
    pub fn compose(&self, other: &FoxImage) -> FoxImage {
        let s = self.abelianization;
        FoxImage {
            abelianization: (s.0 + other.abelianization.0, s.1 + other.abelianization.1),
            da: &self.da + &other.da.shift(s),
            db: &self.db + &other.db.shift(s),
        }
    }

    pub fn render(&self) -> String {
        format!(
            "ab=({},{}) da={} db={}",
            self.abelianization.0, self.abelianization.1, self.da, self.db
        )
    }
}

pub fn fox_image(w: &GroupWord) -> Result<FoxImage> {
    let mut img = FoxImage::identity();
    for l in &w.0 {
        let (m, n) = img.abelianization;
        let target = match l.gen {
            A => &mut img.da,
            B => &mut img.db,
            g => return Err(Error::ForeignLetter(format!("#{g}"))),
        };
        if l.inv {
            let e = if l.gen == A { (m - 1, n) } else { (m, n - 1) };
            target.add_term(e, -BigInt::one());
        } else {
            target.add_term((m, n), BigInt::one());
        }
        let step = if l.inv { -1 } else { 1 };
        if l.gen == A {
            img.abelianization.0 += step;
        } else {
            img.abelianization.1 += step;
        }
    }
    Ok(img)
}

pub fn metabelian_eq(u: &GroupWord, v: &GroupWord) -> Result<bool> {
    Ok(fox_image(&u.concat(&v.inverse()))?.is_trivial())
}

/// Free metabelian group of rank 2 with positive cone ⟨a, b⟩⁺.
#[derive(Clone, Debug)]
pub struct MetabelianGroup {
    /// Largest number of positive words scanned by `is_positive`.
    pub search_limit: u64,
}

impl Default for MetabelianGroup {
    fn default() -> Self {
        MetabelianGroup { search_limit: 1 << 22 }
    }
}

fn binomial(n: u64, k: u64) -> u64 {
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
        if acc > u64::MAX as u128 {
            return u64::MAX;
        }
    }
    acc as u64
}

struct PositiveSearch {
    target_a: HashMap<(i64, i64), BigInt>,
    target_b: HashMap<(i64, i64), BigInt>,
    cur_a: HashMap<(i64, i64), BigInt>,
    cur_b: HashMap<(i64, i64), BigInt>,
    goal: (i64, i64),
    word: Vec<GeneratorId>,
}

impl PositiveSearch {
    /// Positive words only add +1 terms, so a partial sum may never exceed the target.
    fn run(&mut self, m: i64, n: i64) -> bool {
        if (m, n) == self.goal {
            return self.cur_a == self.target_a && self.cur_b == self.target_b;
        }
        for g in [A, B] {
            if (g == A && m == self.goal.0) || (g == B && n == self.goal.1) {
                continue;
            }
            let (cur, target) = if g == A {
                (&mut self.cur_a, &self.target_a)
            } else {
                (&mut self.cur_b, &self.target_b)
            };
            let c = cur.entry((m, n)).or_insert_with(BigInt::zero);
            *c += 1;
            let ok = target.get(&(m, n)).is_some_and(|t| &*c <= t);
            if ok {
                self.word.push(g);
                let (m2, n2) = if g == A { (m + 1, n) } else { (m, n + 1) };
                if self.run(m2, n2) {
                    return true;
                }
                self.word.pop();
            }
            let cur = if g == A { &mut self.cur_a } else { &mut self.cur_b };
            let c = cur.get_mut(&(m, n)).expect("entry present");
            *c -= 1;
            if c.is_zero() {
                cur.remove(&(m, n));
            }
        }
        false
    }
}

impl MetabelianGroup {
    fn positive_of_image(&self, img: &FoxImage) -> Positivity {
        let (m, n) = img.abelianization;
        if m < 0 || n < 0 {
            return Positivity::No(format!("abelianization ({m},{n}) has a negative entry"));
        }
        let negative = img.da.terms().chain(img.db.terms()).any(|(_, c)| c.is_negative());
        if negative {
            return Positivity::No("a Fox derivative has a negative coefficient".into());
        }
        let count = binomial((m + n) as u64, m as u64);
        if count > self.search_limit {
            return Positivity::Unknown(format!("{count} positive words with abelianization ({m},{n})"));
        }
        let to_map = |p: &LaurentPoly2| p.terms().map(|(&e, c)| (e, c.clone())).collect();
        let mut s = PositiveSearch {
            target_a: to_map(&img.da),
            target_b: to_map(&img.db),
            cur_a: HashMap::new(),
            cur_b: HashMap::new(),
            goal: (m, n),
            word: Vec::new(),
        };
        if s.run(0, 0) {
            Positivity::Yes(MonoidWord(s.word))
        } else {
            Positivity::No(format!(
                "no positive word with abelianization ({m},{n}) has this Fox image"
            ))
        }
    }
}

impl GroupOracle for MetabelianGroup {
    fn name(&self) -> String {
        "metabelian:2".into()
    }

    fn rank(&self) -> Option<usize> {
        Some(2)
    }

    fn letter_name(&self, g: GeneratorId) -> String {
        super::letter_label(2, g)
    }

    fn parse_letter(&self, s: &str) -> Option<GeneratorId> {
        super::parse_label(2, s)
    }

    fn canonical(&self, w: &GroupWord) -> String {
        fox_image(w).expect("letters checked").render()
    }

    fn is_positive(&self, w: &GroupWord) -> Positivity {
        match fox_image(w) {
            Ok(img) => self.positive_of_image(&img),
            Err(e) => Positivity::Unknown(e.to_string()),
        }
    }
}
