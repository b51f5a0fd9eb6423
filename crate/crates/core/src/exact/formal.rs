//! Formal nonnegative combinations `c + sum a_s * s` of named symbols, used
//! for edge lengths that are kept symbolic.

use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use core::cmp::Ordering;

use num_traits::{Signed, Zero};

use super::rational::Rational;
use crate::error::{Error, Result};

/// Symbol names are restricted to ASCII identifiers so the canonical text
/// encoding never needs escaping.
pub fn valid_symbol(name: &str) -> bool {
    let mut chars = name.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct FormalScalar {
    constant: Rational,
    syms: BTreeMap<String, Rational>,
}

impl FormalScalar {
    pub fn new(constant: Rational, syms: impl IntoIterator<Item = (String, Rational)>) -> Result<Self> {
        let mut out = FormalScalar { constant, syms: BTreeMap::new() };
        for (s, c) in syms {
            if !valid_symbol(&s) {
                return Err(Error::OutOfRange(alloc::format!("symbol name `{s}`")));
            }
            *out.syms.entry(s).or_insert_with(Rational::zero) += c;
        }
        out.syms.retain(|_, c| !c.is_zero());
        Ok(out)
    }

    pub fn symbol(name: &str) -> Result<Self> {
        FormalScalar::new(Rational::zero(), [(name.to_string(), Rational::from_integer(1.into()))])
    }

    pub fn constant(r: Rational) -> Self {
        FormalScalar { constant: r, syms: BTreeMap::new() }
    }

    pub fn constant_term(&self) -> &Rational {
        &self.constant
    }

    pub fn symbols(&self) -> &BTreeMap<String, Rational> {
        &self.syms
    }

    pub fn is_constant(&self) -> bool {
        self.syms.is_empty()
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut out = self.clone();
        out.constant += &o.constant;
        for (s, c) in &o.syms {
            *out.syms.entry(s.clone()).or_insert_with(Rational::zero) += c;
        }
        out.syms.retain(|_, c| !c.is_zero());
        out
    }

    pub fn neg(&self) -> Self {
        FormalScalar {
            constant: -&self.constant,
            syms: self.syms.iter().map(|(s, c)| (s.clone(), -c)).collect(),
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn scale(&self, r: &Rational) -> Self {
        if r.is_zero() {
            return FormalScalar::default();
        }
        FormalScalar {
            constant: &self.constant * r,
            syms: self.syms.iter().map(|(s, c)| (s.clone(), c * r)).collect(),
        }
    }

    /// Products are only defined when one factor is a constant.
    pub fn mul(&self, o: &Self) -> Result<Self> {
        if o.is_constant() {
            Ok(self.scale(&o.constant))
        } else if self.is_constant() {
            Ok(o.scale(&self.constant))
        } else {
            Err(Error::NonLinear)
        }
    }

    /// Value under a witness assignment.
    pub fn evaluate(&self, w: &Witness) -> Result<Rational> {
        let mut v = self.constant.clone();
        for (s, c) in &self.syms {
            let x = w.get(s).ok_or_else(|| Error::NoWitness(s.clone()))?;
            v += c * x;
        }
        Ok(v)
    }

    /// Lexicographic order on the coordinate vector `(constant, a_s...)` with
    /// symbols in name order; a total order compatible with addition.
    pub fn structural_cmp(&self, o: &Self) -> Ordering {
        match self.constant.cmp(&o.constant) {
            Ordering::Equal => {}
            ord => return ord,
        }
        let mut a = self.syms.iter().peekable();
        let mut b = o.syms.iter().peekable();
        loop {
            match (a.peek(), b.peek()) {
                (None, None) => return Ordering::Equal,
                (Some((_, c)), None) => return sign_ord(c),
                (None, Some((_, c))) => return sign_ord(c).reverse(),
                (Some((sa, ca)), Some((sb, cb))) => match sa.cmp(sb) {
                    Ordering::Less => return sign_ord(ca),
                    Ordering::Greater => return sign_ord(cb).reverse(),
                    Ordering::Equal => {
                        match ca.cmp(cb) {
                            Ordering::Equal => {}
                            ord => return ord,
                        }
                        a.next();
                        b.next();
                    }
                },
            }
        }
    }
}

fn sign_ord(c: &Rational) -> Ordering {
    if c.is_positive() {
        Ordering::Greater
    } else if c.is_negative() {
        Ordering::Less
    } else {
        Ordering::Equal
    }
}

/// Positive rational values assigned to symbols; makes formal scalars
/// comparable.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Witness(BTreeMap<String, Rational>);

impl Witness {
    pub fn new(values: impl IntoIterator<Item = (String, Rational)>) -> Result<Self> {
        let mut map = BTreeMap::new();
        for (s, v) in values {
            if !v.is_positive() {
                return Err(Error::BadWitness(alloc::format!("`{s}` must be positive")));
            }
            if !valid_symbol(&s) {
                return Err(Error::BadWitness(alloc::format!("symbol name `{s}`")));
            }
            map.insert(s, v);
        }
        Ok(Witness(map))
    }

    pub fn get(&self, s: &str) -> Option<&Rational> {
        self.0.get(s)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&String, &Rational)> {
        self.0.iter()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::int;

    #[test]
    fn vector_arithmetic() {
        let a = FormalScalar::symbol("a").unwrap();
        let b = FormalScalar::symbol("b").unwrap();
        assert_eq!(a.add(&b).sub(&b), a);
        assert!(a.mul(&b).is_err());
        assert_eq!(a.mul(&FormalScalar::constant(int(3))).unwrap(), a.scale(&int(3)));
    }

    #[test]
    fn structural_order_is_additive() {
        let a = FormalScalar::symbol("a").unwrap();
        let b = FormalScalar::symbol("b").unwrap();
        let c = FormalScalar::symbol("c").unwrap();
        // b < a because the first differing coordinate is `a`
        assert_eq!(a.structural_cmp(&b), Ordering::Greater);
        assert_eq!(a.add(&c).structural_cmp(&b.add(&c)), Ordering::Greater);
        assert_eq!(a.structural_cmp(&a), Ordering::Equal);
    }

    #[test]
    fn witness_evaluation() {
        let w = Witness::new([("a".into(), int(1)), ("b".into(), int(2))]).unwrap();
        let x = FormalScalar::symbol("a").unwrap().add(&FormalScalar::symbol("b").unwrap().scale(&int(3)));
        assert_eq!(x.evaluate(&w).unwrap(), int(7));
        let c = FormalScalar::symbol("c").unwrap();
        assert_eq!(c.evaluate(&w), Err(Error::NoWitness("c".into())));
        assert!(Witness::new([("a".into(), int(0))]).is_err());
        assert!(FormalScalar::symbol("1x").is_err());
    }
}
