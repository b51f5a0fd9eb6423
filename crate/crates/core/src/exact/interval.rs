//! Closed intervals with rational endpoints and certified enclosures of the
//! few transcendental functions the crate needs (`pi`, `exp`, `ln`, `cos`,
//! `sin`).
//!
//! Endpoints are kept on the dyadic grid `2^-w` of the requested working
//! precision `w` and rounded outward after every operation, so an interval
//! returned from any function here always contains the true value.

use alloc::format;
use alloc::string::String;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::rational::{ceil_grid, f64_above, f64_below, floor_grid, int, pow2, rat, Rational};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Interval {
    lo: Rational,
    hi: Rational,
}

impl Interval {
    pub fn new(lo: Rational, hi: Rational) -> Self {
        debug_assert!(lo <= hi, "interval endpoints out of order");
        Interval { lo, hi }
    }

    pub fn point(x: Rational) -> Self {
        Interval { lo: x.clone(), hi: x }
    }

    pub fn zero() -> Self {
        Interval::point(Rational::zero())
    }

    pub fn lo(&self) -> &Rational {
        &self.lo
    }

    pub fn hi(&self) -> &Rational {
        &self.hi
    }

    pub fn width(&self) -> Rational {
        &self.hi - &self.lo
    }

    pub fn mid(&self) -> Rational {
        (&self.lo + &self.hi) / int(2)
    }

    pub fn radius(&self) -> Rational {
        self.width() / int(2)
    }

    pub fn contains(&self, x: &Rational) -> bool {
        &self.lo <= x && x <= &self.hi
    }

    pub fn contains_zero(&self) -> bool {
        !self.lo.is_positive() && !self.hi.is_negative()
    }

    /// `Some(sign)` when the interval excludes zero.
    pub fn strict_sign(&self) -> Option<i8> {
        if self.lo.is_positive() {
            Some(1)
        } else if self.hi.is_negative() {
            Some(-1)
        } else {
            None
        }
    }

    pub fn intersects(&self, other: &Interval) -> bool {
        self.lo <= other.hi && other.lo <= self.hi
    }

    pub fn hull(&self, other: &Interval) -> Interval {
        Interval {
            lo: self.lo.clone().min(other.lo.clone()),
            hi: self.hi.clone().max(other.hi.clone()),
        }
    }

    /// Widens the interval by `r` on both sides.
    pub fn inflate(&self, r: &Rational) -> Interval {
        Interval { lo: &self.lo - r, hi: &self.hi + r }
    }

    /// Rounds the endpoints outward onto the grid `2^-w`.
    pub fn round(&self, w: u32) -> Interval {
        Interval { lo: floor_grid(&self.lo, w), hi: ceil_grid(&self.hi, w) }
    }

    pub fn add(&self, o: &Interval) -> Interval {
        Interval { lo: &self.lo + &o.lo, hi: &self.hi + &o.hi }
    }

    pub fn sub(&self, o: &Interval) -> Interval {
        Interval { lo: &self.lo - &o.hi, hi: &self.hi - &o.lo }
    }

    pub fn neg(&self) -> Interval {
        Interval { lo: -&self.hi, hi: -&self.lo }
    }

    pub fn scale(&self, c: &Rational) -> Interval {
        let a = &self.lo * c;
        let b = &self.hi * c;
        if c.is_negative() {
            Interval { lo: b, hi: a }
        } else {
            Interval { lo: a, hi: b }
        }
    }

    pub fn mul(&self, o: &Interval) -> Interval {
        let p = [&self.lo * &o.lo, &self.lo * &o.hi, &self.hi * &o.lo, &self.hi * &o.hi];
        let mut lo = p[0].clone();
        let mut hi = p[0].clone();
        for v in &p[1..] {
            if *v < lo {
                lo = v.clone();
            }
            if *v > hi {
                hi = v.clone();
            }
        }
        Interval { lo, hi }
    }

    pub fn recip(&self) -> Result<Interval> {
        if self.contains_zero() {
            return Err(Error::PossiblySingular);
        }
        Ok(Interval { lo: self.hi.recip(), hi: self.lo.recip() })
    }

    pub fn div(&self, o: &Interval) -> Result<Interval> {
        Ok(self.mul(&o.recip()?))
    }

    /// Outward `f64` bounds.
    pub fn to_f64_bounds(&self) -> (f64, f64) {
        (f64_below(&self.lo), f64_above(&self.hi))
    }

    /// Decimal rendering `[lo, hi]` with `digits` fractional digits, rounded
    /// outward so the printed interval still contains this one.
    pub fn to_decimal(&self, digits: u32) -> (String, String) {
        (decimal(&self.lo, digits, false), decimal(&self.hi, digits, true))
    }
}

fn decimal(x: &Rational, digits: u32, up: bool) -> String {
    let scale = BigInt::from(10u32).pow(digits);
    let scaled = x * Rational::from_integer(scale.clone());
    let n = if up { scaled.ceil().to_integer() } else { scaled.floor().to_integer() };
    let neg = n.is_negative();
    let a = n.abs();
    let ip = &a / &scale;
    let fp = &a % &scale;
    let sign = if neg { "-" } else { "" };
    if digits == 0 {
        return format!("{sign}{ip}");
    }
    let mut frac = format!("{fp}");
    while frac.len() < digits as usize {
        frac.insert(0, '0');
    }
    format!("{sign}{ip}.{frac}")
}

/// Enclosure of pi by Machin's formula.
pub fn pi(w: u32) -> Interval {
    let wp = w + 8;
    let a = atan_inv(5, wp);
    let b = atan_inv(239, wp);
    a.scale(&int(16)).sub(&b.scale(&int(4))).round(w)
}

/// `atan(1/x)` for an integer `x >= 2`.
fn atan_inv(x: i64, w: u32) -> Interval {
    let eps = Rational::new(BigInt::one(), pow2(w + 4));
    let x2 = int(x * x);
    let mut power = rat(1, x);
    let mut sum = Rational::zero();
    let mut k: i64 = 0;
    loop {
        let term = &power / int(2 * k + 1);
        if term < eps {
            // alternating, decreasing: the tail is bounded by the first omitted term
            return Interval::point(sum).inflate(&term).round(w);
        }
        if k % 2 == 0 {
            sum += term;
        } else {
            sum -= term;
        }
        power /= &x2;
        k += 1;
    }
}

/// Number of halvings bringing `|x|` under `1/4`.
fn halvings(x: &Rational) -> u32 {
    let quarter = rat(1, 4);
    let mut a = x.abs();
    let mut k = 0;
    while a > quarter {
        a /= int(2);
        k += 1;
    }
    k
}

/// Sum of a Taylor series `sum_j t_j` whose ratio |t_{j+1}/t_j| stays below
/// 1/2 once truncation starts; the tail is bounded by `2 |t_N|`.
fn taylor(y: &Rational, w: u32, ratio: impl Fn(u64) -> Rational, first: Rational) -> Interval {
    let eps = Rational::new(BigInt::one(), pow2(w + 4));
    let mut term = first;
    let mut sum = Rational::zero();
    let mut j: u64 = 0;
    loop {
        if term.abs() < eps {
            let tail = term.abs() * int(2);
            return Interval::point(sum).inflate(&tail).round(w);
        }
        sum += &term;
        term = &term * ratio(j) * y;
        j += 1;
    }
}

/// `exp(x)` at a rational point.
pub fn exp_point(x: &Rational, w: u32) -> Interval {
    if x.is_negative() {
        // e^x = 1 / e^{-x}; relative precision of the large value carries over
        let big = exp_point(&-x, w + 8 + bits_of(x));
        let inv = big.recip().expect("exp is positive");
        return inv.round(w);
    }
    let k = halvings(x);
    let wp = w + 2 * k + 16 + bits_of(x);
    let y = x / Rational::from_integer(pow2(k));
    let mut e = taylor(&y, wp, |j| Rational::one() / int(j as i64 + 1), Rational::one());
    for _ in 0..k {
        e = e.mul(&e).round(wp);
    }
    e.round(w)
}

/// Rough bit size of the integer part of `|x|`, used for guard bits.
fn bits_of(x: &Rational) -> u32 {
    let a = x.abs().ceil().to_integer();
    // e^a needs about 1.45 a bits
    let n: u64 = a.bits();
    if n > 20 {
        panic!("exponent argument out of supported range");
    }
    let v = num_traits::ToPrimitive::to_u64(&a).unwrap_or(0);
    (v * 3 / 2) as u32 + 2
}

pub fn exp(x: &Interval, w: u32) -> Interval {
    let lo = exp_point(&x.lo, w);
    let hi = exp_point(&x.hi, w);
    Interval::new(lo.lo, hi.hi)
}

fn atanh_series(u: &Rational, w: u32) -> Interval {
    let eps = Rational::new(BigInt::one(), pow2(w + 4));
    let u2 = u * u;
    let mut power = u.clone();
    let mut sum = Rational::zero();
    let mut k: i64 = 0;
    loop {
        let term = &power / int(2 * k + 1);
        if term.abs() < eps {
            let tail = term.abs() * int(2);
            return Interval::point(sum).inflate(&tail).round(w);
        }
        sum += term;
        power *= &u2;
        k += 1;
    }
}

pub fn ln2(w: u32) -> Interval {
    atanh_series(&rat(1, 3), w + 4).scale(&int(2)).round(w)
}

/// `ln(x)` at a positive rational point.
pub fn ln_point(x: &Rational, w: u32) -> Result<Interval> {
    if !x.is_positive() {
        return Err(Error::OutOfRange(format!("ln of non-positive {x}")));
    }
    let two = int(2);
    let half = rat(1, 2);
    let mut y = x.clone();
    let mut k: i64 = 0;
    while y > two {
        y /= int(2);
        k += 1;
    }
    while y < half {
        y *= int(2);
        k -= 1;
    }
    let kbits = 64 - (k.unsigned_abs().leading_zeros());
    let wp = w + 8 + kbits;
    let u = (&y - Rational::one()) / (&y + Rational::one());
    let ly = atanh_series(&u, wp).scale(&int(2));
    let l2 = ln2(wp).scale(&int(k));
    Ok(ly.add(&l2).round(w))
}

pub fn ln(x: &Interval, w: u32) -> Result<Interval> {
    let lo = ln_point(&x.lo, w)?;
    let hi = ln_point(&x.hi, w)?;
    Ok(Interval::new(lo.lo, hi.hi))
}

/// `(cos x, sin x)` at a rational point.
pub fn cos_sin_point(x: &Rational, w: u32) -> (Interval, Interval) {
    let k = halvings(x);
    let wp = w + 2 * k + 16;
    let y = x / Rational::from_integer(pow2(k));
    let y2 = &y * &y;
    let mut c = taylor(
        &y2,
        wp,
        |j| -Rational::one() / int(((2 * j + 1) * (2 * j + 2)) as i64),
        Rational::one(),
    );
    let mut s = taylor(
        &y2,
        wp,
        |j| -Rational::one() / int(((2 * j + 2) * (2 * j + 3)) as i64),
        y.clone(),
    );
    for _ in 0..k {
        let c2 = c.mul(&c).sub(&s.mul(&s)).round(wp);
        let s2 = c.mul(&s).scale(&int(2)).round(wp);
        c = c2;
        s = s2;
    }
    (c.round(w), s.round(w))
}

/// `(cos, sin)` over an interval, by the midpoint value widened by the radius
/// (both functions are 1-Lipschitz).
pub fn cos_sin(x: &Interval, w: u32) -> (Interval, Interval) {
    let mid = floor_grid(&x.mid(), w + 8);
    let r = (&x.hi - &mid).max(&mid - &x.lo);
    let (c, s) = cos_sin_point(&mid, w);
    let clamp = |i: Interval| {
        let one = Rational::one();
        Interval::new(i.lo.max(-one.clone()), i.hi.min(one)).round(w)
    };
    (clamp(c.inflate(&r)), clamp(s.inflate(&r)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(i: &Interval, v: f64, tol: f64) -> bool {
        let (lo, hi) = i.to_f64_bounds();
        lo <= v + tol && v - tol <= hi && hi - lo < tol
    }

    #[test]
    fn pi_encloses() {
        let p = pi(100);
        assert!(close(&p, core::f64::consts::PI, 1e-12));
        assert!(p.width() <= Rational::new(BigInt::one(), pow2(96)));
    }

    #[test]
    fn exp_ln_roundtrip() {
        let e = exp_point(&int(1), 80);
        assert!(close(&e, core::f64::consts::E, 1e-12));
        let en = exp_point(&int(-40), 120);
        assert!(close(&en, (-40.0f64).exp(), 1e-25));
        let l = ln_point(&int(10), 80).unwrap();
        assert!(close(&l, 10f64.ln(), 1e-12));
        let l = ln_point(&rat(1, 1000), 80).unwrap();
        assert!(close(&l, 0.001f64.ln(), 1e-12));
    }

    #[test]
    fn cos_sin_values() {
        let (c, s) = cos_sin_point(&int(3), 80);
        assert!(close(&c, 3f64.cos(), 1e-12));
        assert!(close(&s, 3f64.sin(), 1e-12));
        let third = pi(90).scale(&rat(1, 3));
        let (c, _) = cos_sin(&third, 80);
        assert!(c.contains(&rat(1, 2)));
    }

    #[test]
    fn decimal_rendering_is_outward() {
        let i = Interval::point(rat(1, 3));
        let (lo, hi) = i.to_decimal(4);
        assert_eq!(lo, "0.3333");
        assert_eq!(hi, "0.3334");
        let (lo, _) = Interval::point(rat(-1, 3)).to_decimal(2);
        assert_eq!(lo, "-0.34");
    }
}
