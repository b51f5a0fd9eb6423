//! Sparse multivariate polynomials over the integers, used as the exact
//! ring for fraction-free elimination.

use alloc::collections::btree_map::Entry;
use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// Exponent vectors compare lexicographically; the last entry in the map is
/// the leading term.
pub type Monomial = Vec<u32>;

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct MultiPoly {
    terms: BTreeMap<Monomial, BigInt>,
}

impl MultiPoly {
    pub fn zero() -> Self {
        MultiPoly::default()
    }

    pub fn constant(c: BigInt, vars: usize) -> Self {
        let mut p = MultiPoly::zero();
        if !c.is_zero() {
            p.terms.insert(vec![0; vars], c);
        }
        p
    }

    pub fn monomial(m: Monomial, c: BigInt) -> Self {
        let mut p = MultiPoly::zero();
        if !c.is_zero() {
            p.terms.insert(m, c);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigInt)> {
        self.terms.iter()
    }

    fn add_term(&mut self, m: Monomial, c: BigInt) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &o.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, o: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &o.terms {
            out.add_term(m.clone(), -c);
        }
        out
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mut acc: BTreeMap<Monomial, BigInt> = BTreeMap::new();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &o.terms {
                let m: Monomial = m1.iter().zip(m2).map(|(a, b)| a + b).collect();
                *acc.entry(m).or_insert_with(BigInt::zero) += c1 * c2;
            }
        }
        acc.retain(|_, c| !c.is_zero());
        MultiPoly { terms: acc }
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        if k.is_zero() {
            return MultiPoly::zero();
        }
        MultiPoly { terms: self.terms.iter().map(|(m, c)| (m.clone(), c * k)).collect() }
    }

    fn leading(&self) -> Option<(&Monomial, &BigInt)> {
        self.terms.iter().next_back()
    }

    /// Exact quotient `self / d`; fails when `d` does not divide `self`.
    pub fn div_exact(&self, d: &Self) -> Result<Self> {
        let (dm, dc) = d.leading().ok_or(Error::DivisionByZero)?;
        if d.terms.len() == 1 {
            // monomial divisor
            let mut out = BTreeMap::new();
            for (m, c) in &self.terms {
                let (q, r) = c.div_rem(dc);
                if !r.is_zero() || m.iter().zip(dm).any(|(a, b)| a < b) {
                    return Err(Error::InexactDivision);
                }
                out.insert(m.iter().zip(dm).map(|(a, b)| a - b).collect(), q);
            }
            return Ok(MultiPoly { terms: out });
        }
        let mut rem = self.clone();
        let mut quot = MultiPoly::zero();
        while let Some((rm, rc)) = rem.leading() {
            if rm.iter().zip(dm).any(|(a, b)| a < b) {
                return Err(Error::InexactDivision);
            }
            let (qc, r) = rc.div_rem(dc);
            if !r.is_zero() {
                return Err(Error::InexactDivision);
            }
            let qm: Monomial = rm.iter().zip(dm).map(|(a, b)| a - b).collect();
            for (m, c) in &d.terms {
                let shifted = m.iter().zip(&qm).map(|(a, b)| a + b).collect();
                rem.add_term(shifted, -(&qc * c));
            }
            quot.add_term(qm, qc);
        }
        Ok(quot)
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.iter().all(|(m, c)| c.is_one() && m.iter().all(|&e| e == 0))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x(i: usize, vars: usize) -> MultiPoly {
        let mut m = vec![0; vars];
        m[i] = 1;
        MultiPoly::monomial(m, BigInt::one())
    }

    #[test]
    fn exact_division_roundtrip() {
        let one = MultiPoly::constant(BigInt::one(), 2);
        let a = one.add(&x(0, 2)).add(&x(1, 2).scale(&BigInt::from(3)));
        let b = x(0, 2).sub(&x(1, 2)).add(&one);
        let p = a.mul(&b);
        assert_eq!(p.div_exact(&b).unwrap(), a);
        assert_eq!(p.div_exact(&a).unwrap(), b);
        assert_eq!(a.div_exact(&b), Err(Error::InexactDivision));
    }

    #[test]
    fn cancellation_removes_terms() {
        let a = x(0, 1);
        assert!(a.sub(&a).is_zero());
    }
}
