//! Real elements of cyclotomic fields `Q(zeta_m)`.
//!
//! An element is stored as its coefficient vector in the power basis
//! `1, zeta, ..., zeta^(phi(m)-1)` after reduction modulo the `m`-th cyclotomic
//! polynomial. The power basis is a basis, so two elements at the same
//! conductor are equal iff their vectors agree; elements at different
//! conductors are compared at the lcm.

use alloc::vec;
use alloc::vec::Vec;
use core::sync::atomic::{AtomicU64, Ordering};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::interval::{cos_sin, pi, Interval};
use super::rational::Rational;
use crate::error::{Error, Result};

pub const DEFAULT_CONDUCTOR_CAP: u64 = 1000;

static CONDUCTOR_CAP: AtomicU64 = AtomicU64::new(DEFAULT_CONDUCTOR_CAP);

/// Largest conductor any arithmetic result may have.
pub fn conductor_cap() -> u64 {
    CONDUCTOR_CAP.load(Ordering::Relaxed)
}

pub fn set_conductor_cap(cap: u64) {
    CONDUCTOR_CAP.store(cap.max(1), Ordering::Relaxed);
}

fn check_cap(m: u64) -> Result<()> {
    let cap = conductor_cap();
    if m > cap {
        return Err(Error::ConductorCap { m, cap });
    }
    Ok(())
}

pub fn euler_phi(m: u64) -> u64 {
    let mut n = m;
    let mut phi = m;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            while n.is_multiple_of(p) {
                n /= p;
            }
            phi -= phi / p;
        }
        p += 1;
    }
    if n > 1 {
        phi -= phi / n;
    }
    phi
}

fn divisors(m: u64) -> Vec<u64> {
    (1..=m).filter(|d| m.is_multiple_of(*d)).collect()
}

fn compute_cyclotomic_poly(m: u64) -> Vec<BigInt> {
    // x^m - 1 divided by every Phi_d with d | m, d < m
    let mut num: Vec<BigInt> = vec![BigInt::zero(); m as usize + 1];
    num[0] = -BigInt::one();
    num[m as usize] = BigInt::one();
    for d in divisors(m) {
        if d == m {
            continue;
        }
        let phi_d = cyclotomic_poly(d);
        num = divide_monic(&num, &phi_d);
    }
    num
}

/// Exact quotient of `a` by the monic integer polynomial `b`.
fn divide_monic(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let db = b.len() - 1;
    let mut rem = a.to_vec();
    let mut q = vec![BigInt::zero(); a.len() - db];
    for i in (0..q.len()).rev() {
        let t = rem[i + db].clone();
        if t.is_zero() {
            continue;
        }
        for (j, bj) in b.iter().enumerate() {
            rem[i + j] -= &t * bj;
        }
        q[i] = t;
    }
    debug_assert!(rem.iter().all(|c| c.is_zero()));
    q
}

#[cfg(feature = "std")]
mod memo {
    extern crate std;
    use alloc::collections::BTreeMap;
    use alloc::sync::Arc;
    use alloc::vec::Vec;
    use std::sync::{OnceLock, RwLock};

    use num_bigint::BigInt;

    use super::super::interval::Interval;

    type PolyTable = RwLock<BTreeMap<u64, Arc<Vec<BigInt>>>>;
    type CosTable = RwLock<BTreeMap<(u64, u32), Arc<Vec<Interval>>>>;

    fn polys() -> &'static PolyTable {
        static T: OnceLock<PolyTable> = OnceLock::new();
        T.get_or_init(Default::default)
    }

    fn cosines() -> &'static CosTable {
        static T: OnceLock<CosTable> = OnceLock::new();
        T.get_or_init(Default::default)
    }

    pub fn poly(m: u64, make: impl FnOnce() -> Vec<BigInt>) -> Arc<Vec<BigInt>> {
        if let Some(p) = polys().read().unwrap().get(&m) {
            return p.clone();
        }
        let p = Arc::new(make());
        // concurrent inserts write identical values
        polys().write().unwrap().entry(m).or_insert(p).clone()
    }

    pub fn cos_table(m: u64, w: u32, make: impl FnOnce() -> Vec<Interval>) -> Arc<Vec<Interval>> {
        if let Some(t) = cosines().read().unwrap().get(&(m, w)) {
            return t.clone();
        }
        let t = Arc::new(make());
        cosines().write().unwrap().entry((m, w)).or_insert(t).clone()
    }
}

/// Coefficients (ascending) of the `m`-th cyclotomic polynomial.
#[cfg(feature = "std")]
pub fn cyclotomic_poly(m: u64) -> alloc::sync::Arc<Vec<BigInt>> {
    memo::poly(m, || compute_cyclotomic_poly(m))
}

#[cfg(not(feature = "std"))]
pub fn cyclotomic_poly(m: u64) -> alloc::sync::Arc<Vec<BigInt>> {
    alloc::sync::Arc::new(compute_cyclotomic_poly(m))
}

/// `cos(2 pi k / m)` for `k < phi(m)`.
fn cos_table(m: u64, w: u32) -> alloc::sync::Arc<Vec<Interval>> {
    let make = || {
        let phi = euler_phi(m);
        let p = pi(w + 16);
        (0..phi)
            .map(|k| {
                let angle = p.scale(&Rational::new(BigInt::from(2 * k), BigInt::from(m)));
                cos_sin(&angle, w + 8).0
            })
            .collect()
    };
    #[cfg(feature = "std")]
    {
        memo::cos_table(m, w, make)
    }
    #[cfg(not(feature = "std"))]
    {
        alloc::sync::Arc::new(make())
    }
}

/// Reduces a dense polynomial in `zeta_m` (index = exponent) to the power basis.
fn reduce(m: u64, mut dense: Vec<Rational>) -> Vec<Rational> {
    let mu = m as usize;
    if dense.len() > mu {
        for i in mu..dense.len() {
            let c = core::mem::take(&mut dense[i]);
            if !c.is_zero() {
                dense[i % mu] += c;
            }
        }
        dense.truncate(mu);
    }
    let phi = cyclotomic_poly(m);
    let deg = phi.len() - 1;
    if dense.len() > deg {
        for i in (deg..dense.len()).rev() {
            let t = core::mem::take(&mut dense[i]);
            if t.is_zero() {
                continue;
            }
            for (j, pj) in phi.iter().enumerate().take(deg) {
                if !pj.is_zero() {
                    dense[i - deg + j] -= &t * Rational::from_integer(pj.clone());
                }
            }
        }
    }
    dense.resize(deg, Rational::zero());
    dense
}

#[derive(Clone, Debug)]
pub struct CyclotomicReal {
    m: u64,
    coeffs: Vec<Rational>,
}

impl CyclotomicReal {
    /// Element with the given reduced coefficient vector; rejects vectors of
    /// the wrong length and elements that are not real.
    pub fn new(m: u64, coeffs: Vec<Rational>) -> Result<Self> {
        if m == 0 {
            return Err(Error::OutOfRange("conductor 0".into()));
        }
        check_cap(m)?;
        let phi = euler_phi(m) as usize;
        if coeffs.len() != phi {
            return Err(Error::BadLength { expected: phi, got: coeffs.len() });
        }
        let x = CyclotomicReal { m, coeffs };
        if !x.is_real() {
            return Err(Error::NotReal);
        }
        Ok(x)
    }

    /// `sum c * zeta_m^e` over the given terms; exponents may be negative.
    pub fn from_powers(m: u64, terms: impl IntoIterator<Item = (i64, Rational)>) -> Result<Self> {
        check_cap(m)?;
        let mut dense = vec![Rational::zero(); m as usize];
        for (e, c) in terms {
            let k = e.rem_euclid(m as i64) as usize;
            dense[k] += c;
        }
        let x = CyclotomicReal { m, coeffs: reduce(m, dense) };
        if !x.is_real() {
            return Err(Error::NotReal);
        }
        Ok(x)
    }

    pub fn from_rational(r: Rational) -> Self {
        CyclotomicReal { m: 1, coeffs: vec![r] }
    }

    pub fn conductor(&self) -> u64 {
        self.m
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// The rational value, when the element is rational.
    pub fn as_rational(&self) -> Option<Rational> {
        if self.coeffs.iter().skip(1).all(|c| c.is_zero()) {
            Some(self.coeffs.first().cloned().unwrap_or_else(Rational::zero))
        } else {
            None
        }
    }

    /// Image under `zeta -> zeta^a` for `a` coprime to `m`.
    fn galois(&self, a: u64) -> CyclotomicReal {
        let mu = self.m as usize;
        let mut dense = vec![Rational::zero(); mu];
        for (k, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                dense[(k * a as usize) % mu] += c;
            }
        }
        CyclotomicReal { m: self.m, coeffs: reduce(self.m, dense) }
    }

    fn is_real(&self) -> bool {
        if self.m <= 2 {
            return true;
        }
        self.galois(self.m - 1).coeffs == self.coeffs
    }

    /// Coefficient vector at conductor `m`, a multiple of the own conductor.
    fn lifted(&self, m: u64) -> Vec<Rational> {
        if m == self.m {
            return self.coeffs.clone();
        }
        let step = (m / self.m) as usize;
        let mut dense = vec![Rational::zero(); m as usize];
        for (k, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                dense[k * step] += c;
            }
        }
        reduce(m, dense)
    }

    fn common(&self, other: &Self) -> Result<(u64, Vec<Rational>, Vec<Rational>)> {
        let m = self.m.lcm(&other.m);
        check_cap(m)?;
        Ok((m, self.lifted(m), other.lifted(m)))
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        let (m, mut a, b) = self.common(other)?;
        for (x, y) in a.iter_mut().zip(b) {
            *x += y;
        }
        Ok(CyclotomicReal { m, coeffs: a }.shrink())
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        let (m, mut a, b) = self.common(other)?;
        for (x, y) in a.iter_mut().zip(b) {
            *x -= y;
        }
        Ok(CyclotomicReal { m, coeffs: a }.shrink())
    }

    pub fn neg(&self) -> Self {
        CyclotomicReal { m: self.m, coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }

    pub fn scale(&self, r: &Rational) -> Self {
        CyclotomicReal { m: self.m, coeffs: self.coeffs.iter().map(|c| c * r).collect() }.shrink()
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        let (m, a, b) = self.common(other)?;
        let mut dense = vec![Rational::zero(); (a.len() + b.len()).saturating_sub(1).max(1)];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                if !y.is_zero() {
                    dense[i + j] += x * y;
                }
            }
        }
        Ok(CyclotomicReal { m, coeffs: reduce(m, dense) }.shrink())
    }

    /// Multiplicative inverse via the product of the non-trivial Galois
    /// conjugates divided by the norm.
    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if let Some(r) = self.as_rational() {
            return Ok(CyclotomicReal::from_rational(r.recip()));
        }
        let m = self.m;
        let mut acc = CyclotomicReal::from_rational(Rational::one()).lift_to(m);
        for a in 2..m {
            if a.gcd(&m) == 1 {
                let g = self.galois(a);
                acc = acc.mul_same(&g);
            }
        }
        let norm = self.mul_same(&acc);
        let n = norm.as_rational().expect("norm of a cyclotomic element is rational");
        Ok(acc.scale(&n.recip()))
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        self.mul(&other.inv()?)
    }

    pub fn pow(&self, e: i64) -> Result<Self> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut e = e.unsigned_abs();
        let mut acc = CyclotomicReal::from_rational(Rational::one());
        let mut b = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&b)?;
            }
            e >>= 1;
            if e > 0 {
                b = b.mul(&b)?;
            }
        }
        Ok(acc)
    }

    fn lift_to(&self, m: u64) -> Self {
        CyclotomicReal { m, coeffs: self.lifted(m) }
    }

    fn mul_same(&self, other: &Self) -> Self {
        debug_assert_eq!(self.m, other.m);
        let mut dense = vec![Rational::zero(); self.coeffs.len() * 2];
        for (i, x) in self.coeffs.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in other.coeffs.iter().enumerate() {
                if !y.is_zero() {
                    dense[i + j] += x * y;
                }
            }
        }
        CyclotomicReal { m: self.m, coeffs: reduce(self.m, dense) }
    }

    /// Collapses rational elements to conductor 1.
    fn shrink(self) -> Self {
        if self.m > 1 {
            if let Some(r) = self.as_rational() {
                return CyclotomicReal::from_rational(r);
            }
        }
        self
    }

    /// The same element at the smallest conductor that contains it.
    pub fn minimal(&self) -> Self {
        if let Some(r) = self.as_rational() {
            return CyclotomicReal::from_rational(r);
        }
        for d in divisors(self.m) {
            if d == self.m || d < 3 || d % 4 == 2 {
                continue;
            }
            if let Some(c) = self.coordinates_in(d) {
                return CyclotomicReal { m: d, coeffs: c };
            }
        }
        self.clone()
    }

    /// Power-basis coordinates at conductor `d | m` if the element lies in
    /// `Q(zeta_d)`.
    fn coordinates_in(&self, d: u64) -> Option<Vec<Rational>> {
        let phi_d = euler_phi(d) as usize;
        let rows = self.coeffs.len();
        let step = (self.m / d) as usize;
        // columns: images of zeta_d^k in the basis at conductor m
        let mut mat: Vec<Vec<Rational>> = vec![vec![Rational::zero(); phi_d + 1]; rows];
        for k in 0..phi_d {
            let mut dense = vec![Rational::zero(); self.m as usize];
            dense[(k * step) % self.m as usize] = Rational::one();
            let col = reduce(self.m, dense);
            for (r, v) in col.into_iter().enumerate() {
                mat[r][k] = v;
            }
        }
        for (r, c) in self.coeffs.iter().enumerate() {
            mat[r][phi_d] = c.clone();
        }
        solve_consistent(mat, phi_d)
    }

    /// Certified enclosure at working precision `w`.
    pub fn enclosure(&self, w: u32) -> Interval {
        if let Some(r) = self.as_rational() {
            return Interval::point(r);
        }
        let table = cos_table(self.m, w);
        let mut acc = Interval::zero();
        for (c, cs) in self.coeffs.iter().zip(table.iter()) {
            if !c.is_zero() {
                acc = acc.add(&cs.scale(c));
            }
        }
        acc.round(w)
    }

    /// Exact sign; zero is decided from the canonical form, other signs by
    /// enclosures of doubling precision.
    pub fn sign(&self) -> i8 {
        if self.is_zero() {
            return 0;
        }
        if let Some(r) = self.as_rational() {
            return if r.is_positive() { 1 } else { -1 };
        }
        let mut w = 64;
        loop {
            if let Some(s) = self.enclosure(w).strict_sign() {
                return s;
            }
            w *= 2;
        }
    }
}

/// Solves the augmented system `[A | b]` (last column `b`) over `Q`;
/// `None` when inconsistent. Assumes `A` has full column rank.
fn solve_consistent(mut mat: Vec<Vec<Rational>>, cols: usize) -> Option<Vec<Rational>> {
    let rows = mat.len();
    let mut pivot_row = 0;
    let mut pivots = Vec::new();
    for col in 0..cols {
        let Some(p) = (pivot_row..rows).find(|&r| !mat[r][col].is_zero()) else {
            continue;
        };
        mat.swap(pivot_row, p);
        let inv = mat[pivot_row][col].recip();
        for v in mat[pivot_row].iter_mut() {
            *v *= &inv;
        }
        for r in 0..rows {
            if r != pivot_row && !mat[r][col].is_zero() {
                let f = mat[r][col].clone();
                for c in col..=cols {
                    let t = &f * &mat[pivot_row][c];
                    mat[r][c] -= t;
                }
            }
        }
        pivots.push(col);
        pivot_row += 1;
    }
    if mat[pivot_row..].iter().any(|row| !row[cols].is_zero()) {
        return None;
    }
    let mut x = vec![Rational::zero(); cols];
    for (r, &c) in pivots.iter().enumerate() {
        x[c] = mat[r][cols].clone();
    }
    Some(x)
}

impl PartialEq for CyclotomicReal {
    fn eq(&self, other: &Self) -> bool {
        if self.m == other.m {
            return self.coeffs == other.coeffs;
        }
        let m = self.m.lcm(&other.m);
        self.lifted(m) == other.lifted(m)
    }
}

impl Eq for CyclotomicReal {}

/// `2 cos(2 pi k / m)`, i.e. `zeta_m^k + zeta_m^-k`.
pub fn two_cos(k: i64, m: u64) -> Result<CyclotomicReal> {
    CyclotomicReal::from_powers(m, [(k, Rational::one()), (-k, Rational::one())])
        .map(CyclotomicReal::shrink)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::{int, rat};
    use alloc::string::ToString;

    fn int_coeffs(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&x| int(x)).collect()
    }

    #[test]
    fn phi_values() {
        assert_eq!(euler_phi(1), 1);
        assert_eq!(euler_phi(12), 4);
        assert_eq!(euler_phi(120), 32);
        assert_eq!(euler_phi(97), 96);
    }

    #[test]
    fn cyclotomic_polys() {
        let to_i = |m| cyclotomic_poly(m).iter().map(|c| c.to_string()).collect::<Vec<_>>().join(",");
        assert_eq!(to_i(1), "-1,1");
        assert_eq!(to_i(4), "1,0,1");
        assert_eq!(to_i(12), "1,0,-1,0,1");
        // Phi_105 is the first with a coefficient of absolute value 2
        assert!(cyclotomic_poly(105).iter().any(|c| *c == BigInt::from(-2)));
    }

    #[test]
    fn rational_embedding() {
        let x = CyclotomicReal::new(1, vec![rat(3, 2)]).unwrap();
        assert_eq!(x.as_rational(), Some(rat(3, 2)));
    }

    #[test]
    fn two_cos_pi_over_three_is_one() {
        assert_eq!(two_cos(1, 6).unwrap().as_rational(), Some(int(1)));
        let x = two_cos(2, 12).unwrap();
        assert_eq!(x, CyclotomicReal::from_rational(int(1)));
    }

    #[test]
    fn sqrt_two_squares_to_two() {
        let s = two_cos(1, 8).unwrap();
        assert!(s.as_rational().is_none());
        assert_eq!(s.mul(&s).unwrap().as_rational(), Some(int(2)));
        assert_eq!(s.sign(), 1);
    }

    #[test]
    fn rejects_bad_input() {
        assert_eq!(
            CyclotomicReal::new(5, int_coeffs(&[1, 2])),
            Err(Error::BadLength { expected: 4, got: 2 })
        );
        // zeta_5 alone is not real
        assert_eq!(CyclotomicReal::new(5, int_coeffs(&[0, 1, 0, 0])), Err(Error::NotReal));
    }

    #[test]
    fn inverse_and_minimal_conductor() {
        let s = two_cos(1, 8).unwrap(); // sqrt 2
        let inv = s.inv().unwrap();
        assert_eq!(s.mul(&inv).unwrap().as_rational(), Some(int(1)));
        let lifted = s.lift_to(24);
        assert_eq!(lifted.minimal().conductor(), 8);
        assert_eq!(lifted, s);
    }

    #[test]
    fn conductor_cap_is_enforced() {
        let a = two_cos(1, 7).unwrap();
        let b = two_cos(1, 11).unwrap();
        let c = two_cos(1, 13).unwrap();
        let ab = a.mul(&b).unwrap();
        assert!(matches!(ab.mul(&c), Err(Error::ConductorCap { m: 1001, .. })));
    }
}
