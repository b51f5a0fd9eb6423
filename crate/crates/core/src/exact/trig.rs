//! Diagonal lengths of the unit regular polygon and squared sines, as exact
//! elements of cyclotomic fields.

use alloc::vec::Vec;

use super::cyclotomic::{two_cos, CyclotomicReal};
use super::rational::{int, rat};
use super::scalar::Scalar;
use crate::error::{Error, Result};

fn check_range(i: i64, n: u64) -> Result<()> {
    if n < 3 || i < 1 || i > (n / 2) as i64 {
        return Err(Error::OutOfRange(alloc::format!("delta({i}, {n})")));
    }
    Ok(())
}

/// `sin(i pi / n) / sin(pi / n)`, the length of the `i`-th diagonal of the
/// regular `n`-gon with unit side, for `1 <= i <= n/2`.
///
/// Computed as `sum_{j<i} zeta^(2j-i+1)` with `zeta = exp(i pi / n)`, which
/// is the quotient `(zeta^i - zeta^-i) / (zeta - zeta^-1)` expanded.
pub fn delta(i: i64, n: u64) -> Result<Scalar> {
    check_range(i, n)?;
    let terms = (0..i).map(|j| (2 * j - i + 1, int(1)));
    CyclotomicReal::from_powers(2 * n, terms).map(Scalar::from)
}

/// The same number through the Chebyshev recurrence
/// `U_{i} = x U_{i-1} - U_{i-2}` at `x = 2 cos(pi / n)`.
pub fn delta_chebyshev(i: i64, n: u64) -> Result<Scalar> {
    check_range(i, n)?;
    let x = Scalar::from(two_cos(1, 2 * n)?);
    let mut prev = Scalar::zero();
    let mut cur = Scalar::one();
    for _ in 1..i {
        let next = x.try_mul(&cur)?.try_sub(&prev)?;
        prev = cur;
        cur = next;
    }
    Ok(cur)
}

/// All of `delta(1, n), ..., delta(n/2, n)`.
pub fn deltas(n: u64) -> Result<Vec<Scalar>> {
    (1..=(n / 2) as i64).map(|i| delta(i, n)).collect()
}

/// `sin^2(k pi / n) = 1/2 - (zeta_n^k + zeta_n^-k) / 4`.
pub fn sin_squared(k: i64, n: u64) -> Result<Scalar> {
    let c = Scalar::from(two_cos(k, n)?);
    Scalar::from(rat(1, 2)).try_sub(&c.scale(&rat(1, 4)))
}

/// `2 cos(2 pi k / n)` as a scalar.
pub fn two_cos_scalar(k: i64, n: u64) -> Result<Scalar> {
    two_cos(k, n).map(Scalar::from)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_values() {
        for n in 3..20 {
            assert_eq!(delta(1, n).unwrap(), Scalar::one());
        }
        assert_eq!(delta(3, 6).unwrap(), Scalar::from(2));
        let d2 = delta(2, 6).unwrap();
        assert_eq!(d2.try_mul(&d2).unwrap(), Scalar::from(3));
        let lhs = delta(4, 9).unwrap();
        let rhs = Scalar::one().try_add(&delta(2, 9).unwrap()).unwrap();
        assert_eq!(lhs, rhs);
        assert!(delta(0, 6).is_err() && delta(4, 6).is_err() && delta(1, 2).is_err());
    }

    #[test]
    fn routes_agree() {
        for n in 3..=30u64 {
            for i in 1..=(n / 2) as i64 {
                assert_eq!(delta(i, n).unwrap(), delta_chebyshev(i, n).unwrap(), "i={i} n={n}");
            }
        }
    }

    #[test]
    fn golden_ratio_and_heptagon() {
        let b = delta(2, 5).unwrap();
        let sqrt5 = Scalar::from(two_cos(1, 5).unwrap()).scale(&int(2)).try_add(&Scalar::one()).unwrap();
        let phi = Scalar::one().try_add(&sqrt5).unwrap().scale(&rat(1, 2));
        assert_eq!(b.try_sub(&phi).unwrap().sign(None), Ok(0));
        let d3 = delta(3, 7).unwrap();
        assert_eq!(d3.try_sub(&Scalar::from(2)).unwrap().sign(None), Ok(1));
    }

    #[test]
    fn squared_sines() {
        assert_eq!(sin_squared(1, 6).unwrap(), Scalar::from(rat(1, 4)));
        assert_eq!(sin_squared(1, 4).unwrap(), Scalar::from(rat(1, 2)));
        assert_eq!(sin_squared(0, 7).unwrap(), Scalar::zero());
    }
}
