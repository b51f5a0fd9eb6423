//! Polynomials in `q` with nonnegative real exponents and rational
//! coefficients, and their quotients.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::cmp::Ordering;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exact::interval::{self, Interval};
use crate::exact::rational::{format_rational, next_down, next_up};
use crate::exact::{Backend, Rational, Scalar, Witness};

/// An exponent together with a certified `f64` enclosure used to order
/// exponents cheaply; the exact comparison is only needed when the
/// enclosures overlap. Formal exponents are ordered structurally.
#[derive(Clone, Debug)]
pub struct Exponent {
    value: Scalar,
    lo: f64,
    hi: f64,
}

impl Exponent {
    pub fn new(value: Scalar) -> Self {
        let (lo, hi) = match value.backend() {
            Backend::Formal => (f64::NAN, f64::NAN),
            _ => value.enclosure(64, None).expect("non-formal").to_f64_bounds(),
        };
        Exponent { value, lo, hi }
    }

    pub fn zero() -> Self {
        Exponent { value: Scalar::zero(), lo: 0.0, hi: 0.0 }
    }

    pub fn value(&self) -> &Scalar {
        &self.value
    }

    pub fn is_zero(&self) -> bool {
        self.value.is_zero()
    }

    pub fn add(&self, o: &Exponent) -> Result<Exponent> {
        let value = self.value.try_add(&o.value)?;
        if value.backend() == Backend::Formal || self.lo.is_nan() || o.lo.is_nan() {
            return Ok(Exponent::new(value));
        }
        Ok(Exponent { value, lo: next_down(self.lo + o.lo), hi: next_up(self.hi + o.hi) })
    }

    /// Numeric order, with the witness for formal exponents.
    pub fn numeric_cmp(&self, o: &Exponent, w: Option<&Witness>) -> Result<Ordering> {
        if !self.lo.is_nan() && !o.lo.is_nan() {
            if self.hi < o.lo {
                return Ok(Ordering::Less);
            }
            if o.hi < self.lo {
                return Ok(Ordering::Greater);
            }
        }
        self.value.numeric_cmp(&o.value, w)
    }
}

impl PartialEq for Exponent {
    fn eq(&self, o: &Self) -> bool {
        self.cmp(o) == Ordering::Equal
    }
}

impl Eq for Exponent {}

impl Ord for Exponent {
    fn cmp(&self, o: &Self) -> Ordering {
        if !self.lo.is_nan() && !o.lo.is_nan() {
            if self.hi < o.lo {
                return Ordering::Less;
            }
            if o.hi < self.lo {
                return Ordering::Greater;
            }
        }
        self.value.cmp(&o.value)
    }
}

impl PartialOrd for Exponent {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

/// `sum c_e q^e` with no zero coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct GenPolynomial {
    terms: BTreeMap<Exponent, Rational>,
}

impl GenPolynomial {
    pub fn zero() -> Self {
        GenPolynomial::default()
    }

    pub fn constant(c: Rational) -> Self {
        let mut p = GenPolynomial::zero();
        p.add_term(Exponent::zero(), c);
        p
    }

    pub fn one() -> Self {
        GenPolynomial::constant(Rational::one())
    }

    /// `c q^e`; exponents must be nonnegative where their sign is decidable
    /// without a witness.
    pub fn monomial(e: Scalar, c: Rational) -> Result<Self> {
        if e.backend() != Backend::Formal && e.sign(None)? < 0 {
            return Err(Error::NonPositiveExponent(e.canonical_text()));
        }
        let mut p = GenPolynomial::zero();
        p.add_term(Exponent::new(e), c);
        Ok(p)
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Scalar, Rational)>) -> Result<Self> {
        let mut p = GenPolynomial::zero();
        for (e, c) in terms {
            p = p.add(&GenPolynomial::monomial(e, c)?);
        }
        Ok(p)
    }

    pub fn add_term(&mut self, e: Exponent, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            alloc::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            alloc::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
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

    pub fn terms(&self) -> impl Iterator<Item = (&Exponent, &Rational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, e: &Scalar) -> Rational {
        self.terms.get(&Exponent::new(e.clone())).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn constant_term(&self) -> Rational {
        self.terms.get(&Exponent::zero()).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &o.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        GenPolynomial { terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect() }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn scale(&self, r: &Rational) -> Self {
        if r.is_zero() {
            return GenPolynomial::zero();
        }
        GenPolynomial { terms: self.terms.iter().map(|(e, c)| (e.clone(), c * r)).collect() }
    }

    pub fn mul(&self, o: &Self) -> Result<Self> {
        let mut out = GenPolynomial::zero();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &o.terms {
                out.add_term(e1.add(e2)?, c1 * c2);
            }
        }
        Ok(out)
    }

    /// Terms with exponent `<= bound`.
    pub fn truncate(&self, bound: &Exponent, w: Option<&Witness>) -> Result<Self> {
        let mut out = GenPolynomial::zero();
        for (e, c) in &self.terms {
            if e.numeric_cmp(bound, w)? != Ordering::Greater {
                out.terms.insert(e.clone(), c.clone());
            }
        }
        Ok(out)
    }

    /// Smallest exponent in numeric order.
    pub fn min_exponent(&self, w: Option<&Witness>) -> Result<Option<Exponent>> {
        let mut best: Option<&Exponent> = None;
        for e in self.terms.keys() {
            best = match best {
                Some(b) if b.numeric_cmp(e, w)? != Ordering::Greater => Some(b),
                _ => Some(e),
            };
        }
        Ok(best.cloned())
    }

    /// Terms in ascending numeric order of exponent.
    pub fn sorted_terms(&self, w: Option<&Witness>) -> Result<Vec<(Exponent, Rational)>> {
        let mut v: Vec<(Exponent, Rational)> = self.terms.iter().map(|(e, c)| (e.clone(), c.clone())).collect();
        if v.iter().any(|(e, _)| e.value().backend() == Backend::Formal) {
            let mut err = None;
            v.sort_by(|a, b| match a.0.numeric_cmp(&b.0, w) {
                Ok(Ordering::Equal) => a.0.cmp(&b.0),
                Ok(o) => o,
                Err(e) => {
                    err.get_or_insert(e);
                    Ordering::Equal
                }
            });
            if let Some(e) = err {
                return Err(e);
            }
        }
        Ok(v)
    }

    /// Text form `c0 + c1*q^{e1} + ...` in ascending exponent order.
    pub fn to_text(&self, w: Option<&Witness>) -> Result<String> {
        let terms = self.sorted_terms(w)?;
        if terms.is_empty() {
            return Ok("0/1".into());
        }
        let mut s = String::new();
        for (k, (e, c)) in terms.iter().enumerate() {
            let body = if e.is_zero() {
                format_rational(&c.abs())
            } else {
                format!("{}*q^{{{}}}", format_rational(&c.abs()), e.value().canonical_text())
            };
            match (k, c.is_negative()) {
                (0, false) => s.push_str(&body),
                (0, true) => {
                    s.push('-');
                    s.push_str(&body)
                }
                (_, false) => {
                    s.push_str(" + ");
                    s.push_str(&body)
                }
                (_, true) => {
                    s.push_str(" - ");
                    s.push_str(&body)
                }
            }
        }
        Ok(s)
    }

    /// Certified enclosure of the value at `q = e^{-t}`.
    pub fn eval_at(&self, t: &Rational, prec: u32, w: Option<&Witness>) -> Result<Interval> {
        let mut acc = Interval::zero();
        for (e, c) in &self.terms {
            let ei = e.value().enclosure(prec + 16, w)?;
            let x = interval::exp(&ei.scale(&-t), prec + 16);
            acc = acc.add(&x.scale(c));
        }
        Ok(acc)
    }
}

/// A quotient `num / den` kept with the constant term of `den` equal to 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GenRational {
    num: GenPolynomial,
    den: GenPolynomial,
}

impl GenRational {
    pub fn new(num: GenPolynomial, den: GenPolynomial) -> Result<Self> {
        let c = den.constant_term();
        if c.is_zero() {
            return Err(Error::ZeroConstantTerm);
        }
        let inv = c.recip();
        Ok(GenRational { num: num.scale(&inv), den: den.scale(&inv) })
    }

    pub fn from_poly(p: GenPolynomial) -> Self {
        GenRational { num: p, den: GenPolynomial::one() }
    }

    pub fn num(&self) -> &GenPolynomial {
        &self.num
    }

    pub fn den(&self) -> &GenPolynomial {
        &self.den
    }

    pub fn add(&self, o: &Self) -> Result<Self> {
        let num = self.num.mul(&o.den)?.add(&o.num.mul(&self.den)?);
        GenRational::new(num, self.den.mul(&o.den)?)
    }

    pub fn neg(&self) -> Self {
        GenRational { num: self.num.neg(), den: self.den.clone() }
    }

    pub fn sub(&self, o: &Self) -> Result<Self> {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Self) -> Result<Self> {
        GenRational::new(self.num.mul(&o.num)?, self.den.mul(&o.den)?)
    }

    /// Division; the divisor's numerator needs a nonzero constant term so the
    /// quotient stays in normal form.
    pub fn div(&self, o: &Self) -> Result<Self> {
        if o.num.is_zero() {
            return Err(Error::DivisionByZero);
        }
        GenRational::new(self.num.mul(&o.den)?, self.den.mul(&o.num)?)
    }

    /// Expansion `num * sum_k (-u)^k` truncated to exponents `<= bound`,
    /// where `den = 1 + u`.
    pub fn series(&self, bound: &Scalar, w: Option<&Witness>) -> Result<GenPolynomial> {
        series(self, bound, w)
    }

    pub fn eval_at(&self, t: &Rational, prec: u32, w: Option<&Witness>) -> Result<Interval> {
        self.num.eval_at(t, prec, w)?.div(&self.den.eval_at(t, prec, w)?)
    }
}

/// `num1 * den2 == num2 * den1`.
pub fn gr_equal(a: &GenRational, b: &GenRational) -> Result<bool> {
    Ok(a.num.mul(&b.den)? == b.num.mul(&a.den)?)
}

pub fn series(r: &GenRational, bound: &Scalar, w: Option<&Witness>) -> Result<GenPolynomial> {
    if r.den.constant_term() != Rational::one() {
        return Err(Error::ZeroConstantTerm);
    }
    let bound = Exponent::new(bound.clone());
    let neg_u = GenPolynomial::one().sub(&r.den);
    if let Some(e) = neg_u.min_exponent(w)? {
        if e.value().sign(w)? <= 0 {
            return Err(Error::NonPositiveExponent(e.value().canonical_text()));
        }
    }
    let mut term = r.num.truncate(&bound, w)?;
    let mut acc = GenPolynomial::zero();
    while !term.is_zero() {
        acc = acc.add(&term);
        term = term.mul(&neg_u)?.truncate(&bound, w)?;
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::int;
    use crate::exact::trig::delta;

    fn q(e: i64) -> GenPolynomial {
        GenPolynomial::monomial(Scalar::from(e), int(1)).unwrap()
    }

    #[test]
    fn square_of_binomial() {
        let p = GenPolynomial::one().add(&q(1));
        let sq = p.mul(&p).unwrap();
        let want = GenPolynomial::one().add(&q(1).scale(&int(2))).add(&q(2));
        assert_eq!(sq, want);
        assert_eq!(sq.to_text(None).unwrap(), "1/1 + 2/1*q^{1/1} + 1/1*q^{2/1}");
    }

    #[test]
    fn symbolic_exponents_add() {
        let a = GenPolynomial::monomial(Scalar::symbol("a").unwrap(), int(1)).unwrap();
        let b = GenPolynomial::monomial(Scalar::symbol("b").unwrap(), int(1)).unwrap();
        let ab = Scalar::symbol("a").unwrap().try_add(&Scalar::symbol("b").unwrap()).unwrap();
        assert_eq!(a.mul(&b).unwrap(), GenPolynomial::monomial(ab, int(1)).unwrap());
    }

    #[test]
    fn cycle_four_series() {
        let den = GenPolynomial::one().add(&q(1).scale(&int(2))).add(&q(2));
        let r = GenRational::new(GenPolynomial::constant(int(4)), den).unwrap();
        let s = r.series(&Scalar::from(3), None).unwrap();
        let want =
            GenPolynomial::constant(int(4)).add(&q(1).scale(&int(-8))).add(&q(2).scale(&int(12))).add(&q(3).scale(&int(-16)));
        assert_eq!(s, want);
        let other = GenRational::new(
            GenPolynomial::constant(int(4)),
            GenPolynomial::one().add(&q(1)).mul(&GenPolynomial::one().add(&q(1))).unwrap(),
        )
        .unwrap();
        assert!(gr_equal(&r, &other).unwrap());
    }

    #[test]
    fn pentagon_series() {
        let b = delta(2, 5).unwrap();
        let qb = GenPolynomial::monomial(b.clone(), int(1)).unwrap();
        let den = GenPolynomial::one().add(&q(1).scale(&int(2))).add(&qb.scale(&int(2)));
        let r = GenRational::new(GenPolynomial::constant(int(5)), den).unwrap();
        let two_b = b.scale(&int(2));
        let s = r.series(&two_b, None).unwrap();
        let one_b = b.try_add(&Scalar::one()).unwrap();
        let want = GenPolynomial::from_terms([
            (Scalar::zero(), int(5)),
            (Scalar::one(), int(-10)),
            (b.clone(), int(-10)),
            (Scalar::from(2), int(20)),
            (one_b, int(40)),
            // 3 < 2b, so this term lies inside the truncation as well
            (Scalar::from(3), int(-40)),
            (two_b, int(20)),
        ])
        .unwrap();
        assert_eq!(s, want);
    }

    #[test]
    fn series_needs_constant_one() {
        let r = GenRational::new(GenPolynomial::one(), q(1));
        assert_eq!(r, Err(Error::ZeroConstantTerm));
        let r = GenRational::from_poly(GenPolynomial::one());
        assert_eq!(r.series(&Scalar::from(5), None).unwrap(), GenPolynomial::one());
    }

    #[test]
    fn evaluation_encloses_closed_form() {
        let den = GenPolynomial::one().add(&q(1)).mul(&GenPolynomial::one().add(&q(1))).unwrap();
        let r = GenRational::new(GenPolynomial::constant(int(4)), den).unwrap();
        let iv = r.eval_at(&int(1), 60, None).unwrap();
        // 4 / (1 + e^-1)^2 = 2.1379...
        assert!(iv.lo() > &crate::exact::rational::rat(2137, 1000));
        assert!(iv.hi() < &crate::exact::rational::rat(2138, 1000));
    }
}
