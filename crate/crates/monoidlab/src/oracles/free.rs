use super::{letter_label, parse_label, GroupOracle, Positivity};
use crate::words::{GeneratorId, GroupWord, Letter};

pub fn free_reduce(w: &GroupWord) -> GroupWord {
    w.free_reduce()
}

/// Free group of finite rank; the positive cone is the free monoid.
#[derive(Clone, Debug)]
pub struct FreeGroup {
    rank: usize,
}

impl FreeGroup {
    pub fn new(rank: usize) -> Self {
        FreeGroup { rank }
    }
}

impl GroupOracle for FreeGroup {
    fn name(&self) -> String {
        format!("free:{}", self.rank)
    }

    fn rank(&self) -> Option<usize> {
        Some(self.rank)
    }

    fn letter_name(&self, g: GeneratorId) -> String {
        letter_label(self.rank, g)
    }

    fn parse_letter(&self, s: &str) -> Option<GeneratorId> {
        parse_label(self.rank, s)
    }

    fn canonical(&self, w: &GroupWord) -> String {
        self.render(&w.free_reduce())
    }

    fn is_positive(&self, w: &GroupWord) -> Positivity {
        let r = w.free_reduce();
        match r.to_monoid() {
            Some(m) => Positivity::Yes(m),
            None => Positivity::No(format!("reduced form {} has an inverse letter", self.render(&r))),
        }
    }
}

/// ℤ^n with positive cone ℕ^n.
#[derive(Clone, Debug)]
pub struct FreeAbelianGroup {
    rank: usize,
}

impl FreeAbelianGroup {
    pub fn new(rank: usize) -> Self {
        FreeAbelianGroup { rank }
    }

    pub fn exponents(&self, w: &GroupWord) -> Vec<i64> {
        let mut v = vec![0i64; self.rank];
        for l in &w.0 {
            v[l.gen as usize] += if l.inv { -1 } else { 1 };
        }
        v
    }

    pub fn from_exponents(v: &[i64]) -> GroupWord {
        let mut out = Vec::new();
        for (g, &e) in v.iter().enumerate() {
            let l = if e < 0 { Letter::neg(g as GeneratorId) } else { Letter::pos(g as GeneratorId) };
            out.extend(std::iter::repeat(l).take(e.unsigned_abs() as usize));
        }
        GroupWord(out)
    }

    pub fn normal_form(&self, w: &GroupWord) -> GroupWord {
        Self::from_exponents(&self.exponents(w))
    }
}

impl GroupOracle for FreeAbelianGroup {
    fn name(&self) -> String {
        format!("free-abelian:{}", self.rank)
    }

    fn rank(&self) -> Option<usize> {
        Some(self.rank)
    }

    fn letter_name(&self, g: GeneratorId) -> String {
        letter_label(self.rank, g)
    }

    fn parse_letter(&self, s: &str) -> Option<GeneratorId> {
        parse_label(self.rank, s)
    }

    fn canonical(&self, w: &GroupWord) -> String {
        self.render(&self.normal_form(w))
    }

    fn is_positive(&self, w: &GroupWord) -> Positivity {
        let nf = self.normal_form(w);
        match nf.to_monoid() {
            Some(m) => Positivity::Yes(m),
            None => Positivity::No(format!("exponent vector {:?} has a negative entry", self.exponents(w))),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn commutator_is_not_positive() {
        let f = FreeGroup::new(2);
        let w = f.parse_word("a.b.a^-1.b^-1").unwrap();
        assert_eq!(f.canonical(&w), "a.b.a^-1.b^-1");
        assert!(f.is_positive(&w).is_no());
        assert!(f.is_identity(&f.parse_word("a.b.b^-1.a^-1").unwrap()));
    }

    #[test]
    fn abelian_normal_form_sorts() {
        let z2 = FreeAbelianGroup::new(2);
        let w = z2.parse_word("b.a.b^-1.a").unwrap();
        assert_eq!(z2.canonical(&w), "a.a");
    }
}
