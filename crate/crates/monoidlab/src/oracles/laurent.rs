//! Sparse Laurent polynomials in two variables over a generic coefficient ring.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

pub type Exponent = (i64, i64);

/// Σ c · x^i y^j with no zero coefficient stored.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Laurent<C> {
    terms: BTreeMap<Exponent, C>,
}

impl<C> Default for Laurent<C> {
    fn default() -> Self {
        Laurent { terms: BTreeMap::new() }
    }
}

impl<C> Laurent<C>
where
    C: Clone + Zero + One + Neg<Output = C>,
{
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn monomial(c: C, e: Exponent) -> Self {
        let mut p = Self::zero();
        p.add_term(e, c);
        p
    }

    pub fn one() -> Self {
        Self::monomial(C::one(), (0, 0))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, e: Exponent) -> C {
        self.terms.get(&e).cloned().unwrap_or_else(C::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponent, &C)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, e: Exponent, c: C) {
        if c.is_zero() {
            return;
        }
        let sum = match self.terms.remove(&e) {
            Some(old) => old + c,
            None => c,
        };
        if !sum.is_zero() {
            self.terms.insert(e, sum);
        }
    }

    /// Multiplication by the monomial x^i y^j.
    pub fn shift(&self, by: Exponent) -> Self {
        Laurent {
            terms: self
                .terms
                .iter()
                .map(|(&(i, j), c)| ((i + by.0, j + by.1), c.clone()))
                .collect(),
        }
    }
}

impl<C> Add for &Laurent<C>
where
    C: Clone + Zero + One + Neg<Output = C>,
{
    type Output = Laurent<C>;

    fn add(self, rhs: &Laurent<C>) -> Laurent<C> {
        let mut out = self.clone();
        for (&e, c) in &rhs.terms {
            out.add_term(e, c.clone());
        }
        out
    }
}

impl<C> Neg for &Laurent<C>
where
    C: Clone + Zero + One + Neg<Output = C>,
{
    type Output = Laurent<C>;

    fn neg(self) -> Laurent<C> {
        Laurent { terms: self.terms.iter().map(|(&e, c)| (e, -c.clone())).collect() }
    }
}

impl<C> Sub for &Laurent<C>
where
    C: Clone + Zero + One + Neg<Output = C>,
{
    type Output = Laurent<C>;

    fn sub(self, rhs: &Laurent<C>) -> Laurent<C> {
        self + &(-rhs)
    }
}

impl<C> Mul for &Laurent<C>
where
    C: Clone + Zero + One + Neg<Output = C> + Mul<Output = C>,
{
    type Output = Laurent<C>;

    fn mul(self, rhs: &Laurent<C>) -> Laurent<C> {
        let mut out = Laurent::zero();
        for (&(i, j), a) in &self.terms {
            for (&(k, l), b) in &rhs.terms {
                out.add_term((i + k, j + l), a.clone() * b.clone());
            }
        }
        out
    }
}

impl<C> fmt::Display for Laurent<C>
where
    C: Clone + Zero + One + Neg<Output = C> + PartialOrd + fmt::Display,
{
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (n, (&(i, j), c)) in self.terms.iter().enumerate() {
            let negative = *c < C::zero();
            let mag = if negative { -c.clone() } else { c.clone() };
            match (n, negative) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let unit = (i, j) == (0, 0);
            if !mag.is_one() || unit {
                write!(f, "{mag}")?;
            }
            let var = |f: &mut fmt::Formatter<'_>, name: &str, e: i64| match e {
                0 => Ok(()),
                1 => write!(f, "{name}"),
                _ => write!(f, "{name}^{e}"),
            };
            var(f, "x", i)?;
            var(f, "y", j)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cancellation_removes_terms() {
        let mut p = Laurent::<i64>::monomial(3, (1, -2));
        p.add_term((1, -2), -3);
        assert!(p.is_zero());
    }

    #[test]
    fn product_of_binomials() {
        let a = &Laurent::<i64>::one() - &Laurent::monomial(1, (0, 1));
        let b = &Laurent::<i64>::one() + &Laurent::monomial(1, (0, 1));
        let c = &a * &b;
        assert_eq!(c.to_string(), "1 - y^2");
    }
}
