use alloc::format;
use alloc::string::String;
use core::cmp::Ordering;
use core::fmt;

use num_traits::{One, Zero};

use super::cyclotomic::CyclotomicReal;
use super::formal::{FormalScalar, Witness};
use super::interval::Interval;
use super::rational::{format_rational, int, sign_of, Rational};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Backend {
    Rational,
    Cyclotomic,
    Formal,
}

/// An exact real number.
///
/// Values are kept normalised: a cyclotomic element that happens to be
/// rational, or a formal combination without symbols, is stored as
/// [`Scalar::Rational`].
#[derive(Clone, Debug)]
pub enum Scalar {
    Rational(Rational),
    Cyclotomic(CyclotomicReal),
    Formal(FormalScalar),
}

impl From<Rational> for Scalar {
    fn from(r: Rational) -> Self {
        Scalar::Rational(r)
    }
}

impl From<i64> for Scalar {
    fn from(v: i64) -> Self {
        Scalar::Rational(int(v))
    }
}

impl From<CyclotomicReal> for Scalar {
    fn from(c: CyclotomicReal) -> Self {
        match c.as_rational() {
            Some(r) => Scalar::Rational(r),
            None => Scalar::Cyclotomic(c),
        }
    }
}

impl From<FormalScalar> for Scalar {
    fn from(f: FormalScalar) -> Self {
        if f.is_constant() {
            Scalar::Rational(f.constant_term().clone())
        } else {
            Scalar::Formal(f)
        }
    }
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar::Rational(Rational::zero())
    }

    pub fn one() -> Self {
        Scalar::Rational(Rational::one())
    }

    pub fn symbol(name: &str) -> Result<Self> {
        FormalScalar::symbol(name).map(Scalar::Formal)
    }

    pub fn backend(&self) -> Backend {
        match self {
            Scalar::Rational(_) => Backend::Rational,
            Scalar::Cyclotomic(_) => Backend::Cyclotomic,
            Scalar::Formal(_) => Backend::Formal,
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rational(r) => r.is_zero(),
            Scalar::Cyclotomic(c) => c.is_zero(),
            Scalar::Formal(f) => f.is_constant() && f.constant_term().is_zero(),
        }
    }

    pub fn as_rational(&self) -> Option<Rational> {
        match self {
            Scalar::Rational(r) => Some(r.clone()),
            Scalar::Cyclotomic(c) => c.as_rational(),
            Scalar::Formal(f) => f.is_constant().then(|| f.constant_term().clone()),
        }
    }

    fn to_formal(&self) -> Option<FormalScalar> {
        match self {
            Scalar::Rational(r) => Some(FormalScalar::constant(r.clone())),
            Scalar::Formal(f) => Some(f.clone()),
            Scalar::Cyclotomic(_) => None,
        }
    }

    fn to_cyclotomic(&self) -> Option<CyclotomicReal> {
        match self {
            Scalar::Rational(r) => Some(CyclotomicReal::from_rational(r.clone())),
            Scalar::Cyclotomic(c) => Some(c.clone()),
            Scalar::Formal(_) => None,
        }
    }

    fn binary(
        &self,
        o: &Self,
        rat: impl FnOnce(&Rational, &Rational) -> Result<Rational>,
        cyc: impl FnOnce(&CyclotomicReal, &CyclotomicReal) -> Result<CyclotomicReal>,
        formal: impl FnOnce(&FormalScalar, &FormalScalar) -> Result<FormalScalar>,
    ) -> Result<Self> {
        use Scalar::*;
        match (self, o) {
            (Rational(a), Rational(b)) => rat(a, b).map(Rational),
            (Cyclotomic(_), Formal(_)) | (Formal(_), Cyclotomic(_)) => {
                Err(Error::IncompatibleBackends("cyclotomic and formal"))
            }
            (Formal(_), _) | (_, Formal(_)) => {
                formal(&self.to_formal().unwrap(), &o.to_formal().unwrap()).map(Scalar::from)
            }
            _ => cyc(&self.to_cyclotomic().unwrap(), &o.to_cyclotomic().unwrap()).map(Scalar::from),
        }
    }

    pub fn try_add(&self, o: &Self) -> Result<Self> {
        self.binary(o, |a, b| Ok(a + b), |a, b| a.add(b), |a, b| Ok(a.add(b)))
    }

    pub fn try_sub(&self, o: &Self) -> Result<Self> {
        self.binary(o, |a, b| Ok(a - b), |a, b| a.sub(b), |a, b| Ok(a.sub(b)))
    }

    pub fn try_mul(&self, o: &Self) -> Result<Self> {
        self.binary(o, |a, b| Ok(a * b), |a, b| a.mul(b), |a, b| a.mul(b))
    }

    pub fn try_div(&self, o: &Self) -> Result<Self> {
        if o.is_zero() {
            return Err(Error::DivisionByZero);
        }
        self.binary(
            o,
            |a, b| Ok(a / b),
            |a, b| a.div(b),
            |a, b| {
                if b.is_constant() {
                    Ok(a.scale(&b.constant_term().recip()))
                } else {
                    Err(Error::NonLinear)
                }
            },
        )
    }

    pub fn neg(&self) -> Self {
        match self {
            Scalar::Rational(r) => Scalar::Rational(-r),
            Scalar::Cyclotomic(c) => Scalar::Cyclotomic(c.neg()),
            Scalar::Formal(f) => Scalar::Formal(f.neg()),
        }
    }

    pub fn scale(&self, r: &Rational) -> Self {
        match self {
            Scalar::Rational(x) => Scalar::Rational(x * r),
            Scalar::Cyclotomic(c) => Scalar::from(c.scale(r)),
            Scalar::Formal(f) => Scalar::from(f.scale(r)),
        }
    }

    pub fn recip(&self) -> Result<Self> {
        Scalar::one().try_div(self)
    }

    pub fn pow(&self, e: i64) -> Result<Self> {
        match self {
            Scalar::Rational(r) => {
                if e < 0 && r.is_zero() {
                    return Err(Error::DivisionByZero);
                }
                Ok(Scalar::Rational(num_traits::Pow::pow(r, e)))
            }
            Scalar::Cyclotomic(c) => c.pow(e).map(Scalar::from),
            Scalar::Formal(_) => match e {
                0 => Ok(Scalar::one()),
                1 => Ok(self.clone()),
                _ => Err(Error::NonLinear),
            },
        }
    }

    /// Replaces every symbol by its witness value.
    pub fn evaluate(&self, w: Option<&Witness>) -> Result<Self> {
        match self {
            Scalar::Formal(f) => match w {
                Some(w) => f.evaluate(w).map(Scalar::Rational),
                None => Err(no_witness(f)),
            },
            _ => Ok(self.clone()),
        }
    }

    /// Exact sign. Formal values need a witness.
    pub fn sign(&self, w: Option<&Witness>) -> Result<i8> {
        match self {
            Scalar::Rational(r) => Ok(sign_of(r)),
            Scalar::Cyclotomic(c) => Ok(c.sign()),
            Scalar::Formal(_) => match self.evaluate(w)? {
                Scalar::Rational(r) => Ok(sign_of(&r)),
                _ => unreachable!(),
            },
        }
    }

    /// Numeric order, using the witness for formal values.
    pub fn numeric_cmp(&self, o: &Self, w: Option<&Witness>) -> Result<Ordering> {
        if self.backend() != Backend::Formal && o.backend() != Backend::Formal {
            return Ok(self.cmp(o));
        }
        let (a, b) = (self.evaluate(w)?, o.evaluate(w)?);
        if a.backend() == Backend::Cyclotomic || b.backend() == Backend::Cyclotomic {
            return Err(Error::IncompatibleBackends("cyclotomic and formal"));
        }
        Ok(a.cmp(&b))
    }

    /// Certified enclosure of width about `2^-w` (exact for rationals).
    pub fn enclosure(&self, w: u32, witness: Option<&Witness>) -> Result<Interval> {
        match self.evaluate(witness)? {
            Scalar::Rational(r) => Ok(Interval::point(r)),
            Scalar::Cyclotomic(c) => Ok(c.enclosure(w)),
            Scalar::Formal(_) => unreachable!(),
        }
    }

    /// Enclosure of width at most `2^-bits`.
    pub fn approx(&self, bits: u32, witness: Option<&Witness>) -> Result<Interval> {
        let target = Rational::new(1.into(), super::rational::pow2(bits));
        let mut w = bits + 8;
        loop {
            let iv = self.enclosure(w, witness)?;
            if iv.width() <= target {
                return Ok(iv);
            }
            w *= 2;
        }
    }

    /// Canonical text encoding shared with the JSON codec. Cyclotomic values
    /// are printed at their minimal conductor so equal numbers print equally.
    pub fn canonical_text(&self) -> String {
        match self {
            Scalar::Rational(r) => format_rational(r),
            Scalar::Cyclotomic(c) => {
                let c = c.minimal();
                let coeffs: alloc::vec::Vec<String> =
                    c.coeffs().iter().map(|x| format!("\"{}\"", format_rational(x))).collect();
                format!("{{\"c\":[{}],\"m\":{}}}", coeffs.join(","), c.conductor())
            }
            Scalar::Formal(f) => {
                let syms: alloc::vec::Vec<String> = f
                    .symbols()
                    .iter()
                    .map(|(s, x)| format!("\"{}\":\"{}\"", s, format_rational(x)))
                    .collect();
                format!(
                    "{{\"const\":\"{}\",\"syms\":{{{}}}}}",
                    format_rational(f.constant_term()),
                    syms.join(",")
                )
            }
        }
    }
}

fn no_witness(f: &FormalScalar) -> Error {
    Error::NoWitness(f.symbols().keys().next().cloned().unwrap_or_default())
}

fn cmp_cyclotomic(a: &CyclotomicReal, b: &CyclotomicReal) -> Ordering {
    if a == b {
        return Ordering::Equal;
    }
    let mut w = 64;
    loop {
        let (x, y) = (a.enclosure(w), b.enclosure(w));
        if x.hi() < y.lo() {
            return Ordering::Less;
        }
        if y.hi() < x.lo() {
            return Ordering::Greater;
        }
        w *= 2;
    }
}

impl PartialEq for Scalar {
    fn eq(&self, o: &Self) -> bool {
        use Scalar::*;
        match (self, o) {
            (Rational(a), Rational(b)) => a == b,
            (Cyclotomic(a), Cyclotomic(b)) => a == b,
            (Formal(a), Formal(b)) => a == b,
            (Cyclotomic(_), Formal(_)) | (Formal(_), Cyclotomic(_)) => false,
            _ => self.as_rational().is_some() && self.as_rational() == o.as_rational(),
        }
    }
}

impl Eq for Scalar {}

/// Total order: rational and cyclotomic values by numeric value, then all
/// formal values in the lexicographic order of their coordinate vectors.
impl Ord for Scalar {
    fn cmp(&self, o: &Self) -> Ordering {
        use Scalar::*;
        let fa = matches!(self, Formal(f) if !f.is_constant());
        let fb = matches!(o, Formal(f) if !f.is_constant());
        match (fa, fb) {
            (true, true) => {
                let (Formal(a), Formal(b)) = (self, o) else { unreachable!() };
                a.structural_cmp(b)
            }
            (true, false) => Ordering::Greater,
            (false, true) => Ordering::Less,
            (false, false) => match (self.as_rational(), o.as_rational()) {
                (Some(a), Some(b)) => a.cmp(&b),
                _ => {
                    let a = self.to_cyclotomic().unwrap_or_else(|| {
                        CyclotomicReal::from_rational(self.as_rational().unwrap())
                    });
                    let b = o.to_cyclotomic().unwrap_or_else(|| {
                        CyclotomicReal::from_rational(o.as_rational().unwrap())
                    });
                    cmp_cyclotomic(&a, &b)
                }
            },
        }
    }
}

impl PartialOrd for Scalar {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.canonical_text())
    }
}

/// Whether `x` is strictly positive.
pub fn is_positive(x: &Scalar, w: Option<&Witness>) -> Result<bool> {
    Ok(x.sign(w)? > 0)
}

/// Sum of a sequence of scalars.
pub fn sum<'a>(xs: impl IntoIterator<Item = &'a Scalar>) -> Result<Scalar> {
    let mut acc = Scalar::zero();
    for x in xs {
        acc = acc.try_add(x)?;
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::cyclotomic::two_cos;
    use crate::exact::rational::rat;

    #[test]
    fn rational_arithmetic() {
        let a = Scalar::from(rat(1, 2));
        let b = Scalar::from(rat(1, 3));
        assert_eq!(a.try_add(&b).unwrap(), Scalar::from(rat(5, 6)));
        assert_eq!(a.try_div(&Scalar::zero()), Err(Error::DivisionByZero));
    }

    #[test]
    fn formal_and_cyclotomic_do_not_mix() {
        let a = Scalar::symbol("a").unwrap();
        let s = Scalar::from(two_cos(1, 8).unwrap());
        assert!(matches!(a.try_add(&s), Err(Error::IncompatibleBackends(_))));
        let b = Scalar::symbol("b").unwrap();
        assert_eq!(a.try_add(&b).unwrap().try_sub(&b).unwrap(), a);
        assert_eq!(a.try_sub(&a).unwrap(), Scalar::zero());
        assert_eq!(a.try_sub(&a).unwrap().backend(), Backend::Rational);
    }

    #[test]
    fn formal_sign_needs_witness() {
        let a = Scalar::symbol("a").unwrap();
        assert_eq!(a.sign(None), Err(Error::NoWitness("a".into())));
        let w = Witness::new([("a".into(), int(2))]).unwrap();
        assert_eq!(a.try_sub(&Scalar::from(3)).unwrap().sign(Some(&w)), Ok(-1));
    }

    #[test]
    fn order_is_numeric_for_real_values() {
        let s = Scalar::from(two_cos(1, 8).unwrap());
        let mut v = alloc::vec![Scalar::from(2), s.clone(), Scalar::from(1), Scalar::from(rat(3, 2))];
        v.sort();
        assert_eq!(v, alloc::vec![Scalar::from(1), s, Scalar::from(rat(3, 2)), Scalar::from(2)]);
    }

    #[test]
    fn canonical_text_forms() {
        assert_eq!(Scalar::from(3).canonical_text(), "3/1");
        let s = Scalar::from(two_cos(1, 8).unwrap());
        assert_eq!(s.canonical_text(), "{\"c\":[\"0/1\",\"1/1\",\"0/1\",\"-1/1\"],\"m\":8}");
        let f = Scalar::symbol("b").unwrap().try_add(&Scalar::from(1)).unwrap();
        assert_eq!(f.canonical_text(), "{\"const\":\"1/1\",\"syms\":{\"b\":\"1/1\"}}");
    }

    #[test]
    fn approx_width() {
        let x = Scalar::from(rat(1, 3));
        let iv = x.approx(10, None).unwrap();
        assert!(iv.contains(&rat(1, 3)));
        let s = Scalar::from(two_cos(1, 8).unwrap());
        let iv = s.approx(40, None).unwrap();
        assert!(iv.width() <= Rational::new(1.into(), super::super::rational::pow2(40)));
        assert!(iv.lo() < &rat(14143, 10000) && iv.hi() > &rat(14142, 10000));
    }
}
