use alloc::format;
use alloc::string::String;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub type Rational = BigRational;

/// `p/q` as a reduced rational.
pub fn rat(p: i64, q: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(q))
}

pub fn int(p: i64) -> Rational {
    Rational::from_integer(BigInt::from(p))
}

/// Canonical `p/q` text; the denominator is always printed.
pub fn format_rational(x: &Rational) -> String {
    format!("{}/{}", x.numer(), x.denom())
}

/// Parses `p/q` or a bare integer `p`. The result is reduced.
pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    let (p, q) = match s.split_once('/') {
        Some((p, q)) => (p.trim(), q.trim()),
        None => (s, "1"),
    };
    let p: BigInt = p.parse().ok()?;
    let q: BigInt = q.parse().ok()?;
    if q.is_zero() {
        return None;
    }
    Some(Rational::new(p, q))
}

pub fn sign_of(x: &Rational) -> i8 {
    if x.is_zero() {
        0
    } else if x.is_positive() {
        1
    } else {
        -1
    }
}

pub fn pow2(k: u32) -> BigInt {
    BigInt::one() << (k as usize)
}

/// Largest multiple of `2^-w` that is `<= x`.
pub fn floor_grid(x: &Rational, w: u32) -> Rational {
    let scale = pow2(w);
    let scaled = x * Rational::from_integer(scale.clone());
    Rational::new(scaled.floor().to_integer(), scale)
}

/// Smallest multiple of `2^-w` that is `>= x`.
pub fn ceil_grid(x: &Rational, w: u32) -> Rational {
    let scale = pow2(w);
    let scaled = x * Rational::from_integer(scale.clone());
    Rational::new(scaled.ceil().to_integer(), scale)
}

/// An `f64` that is `<= x`.
pub fn f64_below(x: &Rational) -> f64 {
    let v = x.to_f64().unwrap_or(if x.is_positive() { f64::MAX } else { f64::MIN });
    next_down(next_down(v))
}

/// An `f64` that is `>= x`.
pub fn f64_above(x: &Rational) -> f64 {
    let v = x.to_f64().unwrap_or(if x.is_positive() { f64::MAX } else { f64::MIN });
    next_up(next_up(v))
}

pub fn next_up(x: f64) -> f64 {
    if x.is_nan() || x == f64::INFINITY {
        return x;
    }
    if x == 0.0 {
        return f64::from_bits(1);
    }
    let bits = x.to_bits();
    if x > 0.0 {
        f64::from_bits(bits + 1)
    } else {
        f64::from_bits(bits - 1)
    }
}

pub fn next_down(x: f64) -> f64 {
    -next_up(-x)
}
