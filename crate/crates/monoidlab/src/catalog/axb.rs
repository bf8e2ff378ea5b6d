//! The ax+b monoid over ℤ, truncated to multipliers in ⟨-1, 2, 3⟩.
//!
//! Elements are pairs (b, a) with (d, c)(b, a) = (d + cb, ca). Every constructible
//! right ideal is (r + nℤ) × (nℤ ∩ A) for the multiplier group A, i.e. (r, n)P.

use num_integer::Integer;

use crate::error::{Error, Result};
use crate::ideals::{Div, HullElement, Monoid, Move};
use crate::words::MonoidWord;

pub type Affine = (i64, i64);

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct AxbMonoid;

const GENS: [Affine; 5] = [(1, 1), (-1, 1), (0, -1), (0, 2), (0, 3)];

/// Exponents (sign, e2, e3) of a multiplier, or `None` outside ⟨-1, 2, 3⟩.
fn split_multiplier(a: i64) -> Option<(bool, u32, u32)> {
    if a == 0 {
        return None;
    }
    let mut x = a.abs();
    let (mut e2, mut e3) = (0, 0);
    while x % 2 == 0 {
        x /= 2;
        e2 += 1;
    }
    while x % 3 == 0 {
        x /= 3;
        e3 += 1;
    }
    (x == 1).then_some((a < 0, e2, e3))
}

impl AxbMonoid {
    /// (r, n) with s(P) = (r, n)P, or `None` if s(P) is empty.
    pub fn closed_form(&self, s: &HullElement<Affine>) -> Option<(i64, i64)> {
        let (mut r, mut n) = (0i64, 1i64);
        for mv in s.moves.iter().rev() {
            match *mv {
                Move::LeftMult((b, a)) => {
                    n = (a * n).abs();
                    r = (b + a * r).rem_euclid(n);
                }
                Move::LeftDivide((d, c)) => {
                    let g = c.gcd(&n);
                    if (r - d) % g != 0 {
                        return None;
                    }
                    let m = n / g;
                    let inv = mod_inverse((c / g).rem_euclid(m), m);
                    r = ((((r - d) / g) % m) * inv).rem_euclid(m);
                    n = m;
                }
            }
        }
        Some((r, n))
    }
}

fn mod_inverse(x: i64, m: i64) -> i64 {
    if m == 1 {
        return 0;
    }
    let e = x.extended_gcd(&m);
    e.x.rem_euclid(m)
}

impl Monoid for AxbMonoid {
    type Elem = Affine;

    fn name(&self) -> String {
        "axb-Z".into()
    }

    fn identity(&self) -> Affine {
        (0, 1)
    }

    fn generators(&self) -> Vec<Affine> {
        GENS.to_vec()
    }

    fn mul(&self, &(d, c): &Affine, &(b, a): &Affine) -> Affine {
        (d + c * b, c * a)
    }

    fn left_divide(&self, &(d, c): &Affine, &(y, x): &Affine) -> Div<Affine> {
        if x % c != 0 || (y - d) % c != 0 || split_multiplier(x / c).is_none() {
            return Div::No;
        }
        Div::Quotient(((y - d) / c, x / c))
    }

    fn right_divide(&self, &(y, x): &Affine, &(b, a): &Affine) -> Div<Affine> {
        if x % a != 0 || split_multiplier(x / a).is_none() {
            return Div::No;
        }
        let c = x / a;
        Div::Quotient((y - c * b, c))
    }

    fn length(&self, x: &Affine) -> usize {
        self.word(x).len()
    }

    /// (b, a) = (±1, 1)^|b| · (0, -1)^s (0, 2)^i (0, 3)^j.
    fn word(&self, &(b, a): &Affine) -> MonoidWord {
        let (neg, e2, e3) = split_multiplier(a).expect("multiplier in <-1,2,3>");
        let mut w = vec![if b >= 0 { 0 } else { 1 }; b.unsigned_abs() as usize];
        if neg {
            w.push(2);
        }
        w.extend(std::iter::repeat_n(3, e2 as usize));
        w.extend(std::iter::repeat_n(4, e3 as usize));
        MonoidWord(w)
    }

    fn render(&self, &(b, a): &Affine) -> String {
        format!("({b},{a})")
    }

    fn parse(&self, text: &str) -> Result<Affine> {
        let t = text.trim();
        if t == "e" {
            return Ok((0, 1));
        }
        let inner = t.strip_prefix('(').and_then(|t| t.strip_suffix(')')).unwrap_or(t);
        let bad = || Error::Invalid(format!("cannot parse `{text}` as (b,a)"));
        let (b, a) = inner.split_once(',').ok_or_else(bad)?;
        let b: i64 = b.trim().parse().map_err(|_| bad())?;
        let a: i64 = a.trim().parse().map_err(|_| bad())?;
        if split_multiplier(a).is_none() {
            return Err(Error::Invalid(format!("multiplier {a} is outside <-1,2,3>")));
        }
        Ok((b, a))
    }

    fn division_exact(&self) -> bool {
        true
    }

    fn trivial_units(&self) -> bool {
        false
    }

    fn exact_ideal_key(&self, s: &HullElement<Affine>) -> Option<String> {
        Some(match self.closed_form(s) {
            Some((r, n)) => format!("({r}+{n}Z)x{n}A"),
            None => "empty".into(),
        })
    }

    fn describe_ideal(&self, s: &HullElement<Affine>) -> Option<String> {
        self.exact_ideal_key(s)
    }

    fn principal_of(&self, s: &HullElement<Affine>) -> Option<Option<Affine>> {
        Some(self.closed_form(s))
    }

    fn exact_union(&self, x: &HullElement<Affine>, parts: &[Affine]) -> Option<bool> {
        let whole = self.closed_form(x);
        let keys: Vec<String> = parts.iter().filter_map(|p| self.exact_ideal_key(&HullElement::mult(*p))).collect();
        // Every ideal is principal, so a union equals X only if some part already does.
        Some(whole.is_some() && keys.iter().any(|k| Some(k.clone()) == self.exact_ideal_key(x)))
    }

    fn principal_reason(&self) -> Option<String> {
        Some("Z is a principal ideal domain, so every constructible ideal is (r+nZ) x (nZ)^x = (r,n)P".into())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn product_rule() {
        let m = AxbMonoid;
        assert_eq!(m.mul(&(1, 2), &(3, 3)), (7, 6));
        assert_eq!(m.left_divide(&(1, 2), &(7, 6)), Div::Quotient((3, 3)));
    }

    #[test]
    fn divided_ideal() {
        let m = AxbMonoid;
        let s = HullElement { moves: vec![Move::LeftDivide((1, 1)), Move::LeftMult((0, 2))] };
        assert_eq!(m.closed_form(&s), Some((1, 2)));
        let t = HullElement { moves: vec![Move::LeftDivide((1, 2)), Move::LeftMult((0, 2))] };
        assert_eq!(m.closed_form(&t), None);
    }
}
