//! The quadratic order R = ℤ[i√3] and its multiplicative monoid R \ {0}.
//!
//! Nonzero ideals of R are rank-2 lattices in ℤ² (coordinates (m, n) for
//! m + n·i√3) and are compared through their Hermite normal form.

use std::fmt;

use num_integer::Integer;
use num_traits::{PrimInt, Signed};

use crate::error::{Error, Result};
use crate::ideals::{Div, HullElement, Monoid, Move};
use crate::words::MonoidWord;

/// m + n·i√3.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QuadElem<T> {
    pub m: T,
    pub n: T,
}

impl<T: PrimInt + Signed> QuadElem<T> {
    pub fn new(m: T, n: T) -> Self {
        QuadElem { m, n }
    }

    pub fn from_int(m: T) -> Self {
        QuadElem { m, n: T::zero() }
    }

    pub fn one() -> Self {
        Self::from_int(T::one())
    }

    pub fn is_zero(&self) -> bool {
        self.m.is_zero() && self.n.is_zero()
    }

    pub fn mul(&self, o: &Self) -> Self {
        let three = T::one() + T::one() + T::one();
        QuadElem { m: self.m * o.m - three * self.n * o.n, n: self.m * o.n + self.n * o.m }
    }

    pub fn conj(&self) -> Self {
        QuadElem { m: self.m, n: -self.n }
    }

    pub fn norm(&self) -> T {
        let three = T::one() + T::one() + T::one();
        self.m * self.m + three * self.n * self.n
    }

    /// x / self when it lies in R.
    pub fn divides(&self, x: &Self) -> Option<Self> {
        let nm = self.norm();
        if nm.is_zero() {
            return None;
        }
        let t = x.mul(&self.conj());
        (t.m % nm == T::zero() && t.n % nm == T::zero()).then(|| QuadElem { m: t.m / nm, n: t.n / nm })
    }
}

impl<T: PrimInt + Signed + fmt::Display> fmt::Display for QuadElem<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let one = T::one();
        let tail = |f: &mut fmt::Formatter<'_>, n: T, lead: bool| -> fmt::Result {
            let sign = if n < T::zero() { "-" } else if lead { "" } else { "+" };
            if n.abs() == one {
                write!(f, "{sign}r")
            } else {
                write!(f, "{sign}{}r", n.abs())
            }
        };
        match (self.m.is_zero(), self.n.is_zero()) {
            (_, true) => write!(f, "{}", self.m),
            (true, false) => tail(f, self.n, true),
            (false, false) => {
                write!(f, "{}", self.m)?;
                tail(f, self.n, false)
            }
        }
    }
}

/// Parses `m`, `nr`, `m+nr`, `m-r` with `r` standing for i√3.
pub fn parse_quad(text: &str) -> Result<QuadElem<i64>> {
    let t: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    let bad = || Error::Invalid(format!("cannot parse `{text}` as m+nr"));
    if t.is_empty() {
        return Err(bad());
    }
    let Some(body) = t.strip_suffix('r') else {
        return Ok(QuadElem::from_int(t.parse().map_err(|_| bad())?));
    };
    let split = body.rfind(['+', '-']).filter(|&i| i > 0);
    let (m_txt, n_txt) = match split {
        Some(i) => (&body[..i], &body[i..]),
        None => ("0", body),
    };
    let m: i64 = m_txt.parse().map_err(|_| bad())?;
    let n: i64 = match n_txt {
        "" | "+" => 1,
        "-" => -1,
        s => s.parse().map_err(|_| bad())?,
    };
    Ok(QuadElem::new(m, n))
}

/// A rank-2 sublattice of ℤ² in Hermite normal form, spanned by (a, 0) and (b, c)
/// with a, c > 0 and 0 ≤ b < a.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Lattice {
    pub a: i64,
    pub b: i64,
    pub c: i64,
}

impl Lattice {
    pub fn full() -> Self {
        Lattice { a: 1, b: 0, c: 1 }
    }

    /// HNF of the lattice spanned by `gens`; `None` if they do not span a rank-2 lattice.
    pub fn span(gens: &[(i64, i64)]) -> Option<Lattice> {
        // Reduce second coordinates by a gcd sweep, collecting first-coordinate-only vectors.
        let mut pivot: Option<(i64, i64)> = None;
        let mut horizontal: i64 = 0;
        for &(x, y) in gens {
            let (mut x, mut y) = (x, y);
            if let Some((px, py)) = pivot.as_mut() {
                while y != 0 {
                    let q = *py / y;
                    let (nx, ny) = (*px - q * x, *py - q * y);
                    *px = x;
                    *py = y;
                    x = nx;
                    y = ny;
                }
                horizontal = horizontal.gcd(&x);
            } else if y != 0 {
                pivot = Some((x, y));
            } else {
                horizontal = horizontal.gcd(&x);
            }
        }
        let (mut px, mut py) = pivot?;
        if horizontal == 0 {
            return None;
        }
        if py < 0 {
            px = -px;
            py = -py;
        }
        Some(Lattice { a: horizontal, b: px.rem_euclid(horizontal), c: py })
    }

    pub fn contains(&self, (x, y): (i64, i64)) -> bool {
        if y % self.c != 0 {
            return false;
        }
        (x - (y / self.c) * self.b) % self.a == 0
    }

    pub fn index(&self) -> i64 {
        self.a * self.c
    }

    pub fn basis(&self) -> [(i64, i64); 2] {
        [(self.a, 0), (self.b, self.c)]
    }

    pub fn is_sub(&self, other: &Lattice) -> bool {
        self.basis().iter().all(|v| other.contains(*v))
    }
}

impl fmt::Display for Lattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "lattice[{} {}; 0 {}]", self.a, self.b, self.c)
    }
}

fn coords(x: &QuadInt) -> (i64, i64) {
    (x.m, x.n)
}

type QuadInt = QuadElem<i64>;

/// The ideal pR as a lattice.
pub fn principal_lattice(p: &QuadInt) -> Lattice {
    let gens = [coords(p), coords(&p.mul(&QuadElem::new(0, 1)))];
    Lattice::span(&gens).expect("nonzero element")
}

/// pI.
pub fn mult_lattice(p: &QuadInt, l: &Lattice) -> Lattice {
    let gens: Vec<(i64, i64)> = l
        .basis()
        .iter()
        .flat_map(|&(m, n)| {
            let v = p.mul(&QuadElem::new(m, n));
            [coords(&v), coords(&v.mul(&QuadElem::new(0, 1)))]
        })
        .collect();
    Lattice::span(&gens).expect("nonzero element")
}

/// q⁻¹I = {r : qr ∈ I}; it contains K·ℤ² for K the index of I.
pub fn divide_lattice(q: &QuadInt, l: &Lattice) -> Lattice {
    let k = l.index();
    let mut gens = vec![(k, 0), (0, k)];
    for x in 0..k {
        for y in 0..k {
            if l.contains(coords(&q.mul(&QuadElem::new(x, y)))) {
                gens.push((x, y));
            }
        }
    }
    Lattice::span(&gens).expect("contains kZ^2")
}

/// Membership of x in the ideal given by `gens`, or in c⁻¹(∩ aᵢR) when `shift` is set.
pub fn qr_ideal_membership(x: &QuadInt, gens: &[QuadInt], shift: Option<&QuadInt>) -> Result<bool> {
    if gens.is_empty() || gens.iter().any(QuadElem::is_zero) {
        return Err(Error::ZeroIdeal);
    }
    let target = match shift {
        Some(c) if c.is_zero() => return Err(Error::ZeroIdeal),
        Some(c) => c.mul(x),
        None => *x,
    };
    if shift.is_some() {
        Ok(gens.iter().all(|a| principal_lattice(a).contains(coords(&target))))
    } else {
        let mut all = Vec::new();
        for g in gens {
            all.extend(principal_lattice(g).basis());
        }
        Ok(Lattice::span(&all).expect("nonzero").contains(coords(&target)))
    }
}

/// The monoid R \ {0} under multiplication, sampled through a few small generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadRing {
    pub gens: Vec<QuadInt>,
}

impl Default for QuadRing {
    fn default() -> Self {
        QuadRing {
            gens: vec![
                QuadElem::new(2, 0),
                QuadElem::new(1, 1),
                QuadElem::new(-1, 1),
                QuadElem::new(0, 1),
                QuadElem::new(-1, 0),
            ],
        }
    }
}

impl QuadRing {
    pub fn lattice_of(&self, s: &HullElement<QuadInt>) -> Lattice {
        let mut l = Lattice::full();
        for mv in s.moves.iter().rev() {
            l = match mv {
                Move::LeftMult(p) => mult_lattice(p, &l),
                Move::LeftDivide(q) => divide_lattice(q, &l),
            };
        }
        l
    }

    /// Write x as a product of generators when its norm allows it, greedily by norm.
    fn factor(&self, x: &QuadInt) -> Option<Vec<u32>> {
        if *x == QuadElem::one() {
            return Some(Vec::new());
        }
        if x.norm() <= 1 {
            // x = -1
            let i = self.gens.iter().position(|g| g == x)?;
            return Some(vec![i as u32]);
        }
        for (i, g) in self.gens.iter().enumerate() {
            if g.norm() <= 1 {
                continue;
            }
            if let Some(r) = g.divides(x) {
                if let Some(mut rest) = self.factor(&r) {
                    rest.insert(0, i as u32);
                    return Some(rest);
                }
            }
        }
        None
    }
}

impl Monoid for QuadRing {
    type Elem = QuadInt;

    fn name(&self) -> String {
        "quad-ring-ax-b".into()
    }

    fn identity(&self) -> QuadInt {
        QuadElem::one()
    }

    fn generators(&self) -> Vec<QuadInt> {
        self.gens.clone()
    }

    fn mul(&self, a: &QuadInt, b: &QuadInt) -> QuadInt {
        a.mul(b)
    }

    fn left_divide(&self, p: &QuadInt, x: &QuadInt) -> Div<QuadInt> {
        p.divides(x).map_or(Div::No, Div::Quotient)
    }

    fn right_divide(&self, x: &QuadInt, q: &QuadInt) -> Div<QuadInt> {
        self.left_divide(q, x)
    }

    fn length(&self, x: &QuadInt) -> usize {
        self.factor(x).map_or(usize::MAX, |w| w.len())
    }

    fn word(&self, x: &QuadInt) -> MonoidWord {
        MonoidWord(self.factor(x).unwrap_or_default())
    }

    fn render(&self, x: &QuadInt) -> String {
        x.to_string()
    }

    fn parse(&self, text: &str) -> Result<QuadInt> {
        let x = parse_quad(text)?;
        if x.is_zero() {
            return Err(Error::ZeroIdeal);
        }
        Ok(x)
    }

    fn division_exact(&self) -> bool {
        true
    }

    fn is_commutative(&self) -> bool {
        true
    }

    fn trivial_units(&self) -> bool {
        false
    }

    fn exact_ideal_key(&self, s: &HullElement<QuadInt>) -> Option<String> {
        Some(self.lattice_of(s).to_string())
    }

    fn describe_ideal(&self, s: &HullElement<QuadInt>) -> Option<String> {
        Some(format!("{} minus 0", self.lattice_of(s)))
    }

    fn principal_of(&self, s: &HullElement<QuadInt>) -> Option<Option<QuadInt>> {
        let l = self.lattice_of(s);
        let idx = l.index();
        let bound = (idx as f64).sqrt() as i64 + 1;
        for n in 0..=bound {
            for m in -bound..=bound {
                let x = QuadElem::new(m, n);
                if !x.is_zero() && x.norm() == idx && principal_lattice(&x) == l {
                    return Some(Some(x));
                }
            }
        }
        Some(None)
    }

    /// Membership in every lattice involved is periodic modulo the lcm of their indices.
    fn exact_union(&self, x: &HullElement<QuadInt>, parts: &[QuadInt]) -> Option<bool> {
        let big = self.lattice_of(x);
        let small: Vec<Lattice> = parts.iter().map(principal_lattice).collect();
        let k = small.iter().fold(big.index(), |acc, l| acc.lcm(&l.index()));
        if small.iter().any(|l| !l.is_sub(&big)) {
            return Some(false);
        }
        Some((0..k).all(|m| (0..k).all(|n| !big.contains((m, n)) || small.iter().any(|l| l.contains((m, n))))))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn norm_is_multiplicative_on_sample() {
        let a = QuadElem::new(2i64, -1);
        let b = QuadElem::new(-3i64, 4);
        assert_eq!(a.mul(&b).norm(), a.norm() * b.norm());
    }

    #[test]
    fn parse_render_round_trip() {
        for t in ["2", "1+r", "-1+r", "1-r", "r", "-3r", "4-2r"] {
            assert_eq!(parse_quad(t).unwrap().to_string(), t);
        }
    }

    #[test]
    fn four_in_one_plus_r() {
        let g = QuadElem::new(1, 1);
        assert!(qr_ideal_membership(&QuadElem::from_int(4), &[g], None).unwrap());
        assert!(!qr_ideal_membership(&QuadElem::from_int(1), &[QuadElem::from_int(2)], None).unwrap());
    }

    #[test]
    fn hnf_of_two_r() {
        assert_eq!(principal_lattice(&QuadElem::from_int(2)), Lattice { a: 2, b: 0, c: 2 });
    }
}
