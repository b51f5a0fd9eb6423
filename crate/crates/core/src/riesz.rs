//! Discrete Riesz energy `B_X(z) = sum_{i != j} d(P_i, P_j)^z`.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::exact::interval::{self, Interval};
use crate::exact::rational::int;
use crate::exact::{Backend, Rational, Scalar};
use crate::metric::FiniteMetricSpace;

/// Exact `B_X(z)` for an integer `z`.
pub fn riesz_at(x: &FiniteMetricSpace, z: i64) -> Result<Scalar> {
    let mut acc = Scalar::zero();
    for (d, c) in x.edge_multiset().entries() {
        acc = acc.try_add(&d.pow(z)?.scale(&int(2 * *c as i64)))?;
    }
    Ok(acc)
}

/// Enclosure of `B_X(z)` for complex `z = re + i im`, as (real, imaginary).
pub fn riesz_numeric(x: &FiniteMetricSpace, re: &Rational, im: &Rational, prec: u32) -> Result<(Interval, Interval)> {
    let w = prec + 16;
    let mut sr = Interval::zero();
    let mut si = Interval::zero();
    for (d, c) in x.edge_multiset().entries() {
        let ld = interval::ln(&d.enclosure(w, x.witness())?, w)?;
        let modulus = interval::exp(&ld.scale(re), w);
        let (cs, sn) = interval::cos_sin(&ld.scale(im), w);
        let k = int(2 * *c as i64);
        sr = sr.add(&modulus.mul(&cs).scale(&k));
        si = si.add(&modulus.mul(&sn).scale(&k));
    }
    Ok((sr.round(prec), si.round(prec)))
}

/// Equal Riesz energy functions, decided by equality of edge multisets.
pub fn riesz_equal(x: &FiniteMetricSpace, y: &FiniteMetricSpace) -> Result<bool> {
    let (bx, by) = (x.backend()?, y.backend()?);
    if bx != by && bx != Backend::Rational && by != Backend::Rational {
        return Err(Error::IncompatibleBackends("cyclotomic and formal"));
    }
    Ok(x.edge_multiset() == y.edge_multiset())
}

/// `B_X(1), ..., B_X(N)` with `N = n(n-1)/2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PowerSumVector {
    pub b: Vec<Scalar>,
}

impl PowerSumVector {
    pub fn of(x: &FiniteMetricSpace) -> Result<Self> {
        let n = x.n() as i64;
        let big_n = n * (n - 1) / 2;
        let edges = x.edge_multiset();
        let mut b = Vec::with_capacity(big_n as usize);
        let mut powers: Vec<Scalar> = edges.entries().iter().map(|_| Scalar::one()).collect();
        for _ in 1..=big_n {
            let mut s = Scalar::zero();
            for ((d, c), p) in edges.entries().iter().zip(powers.iter_mut()) {
                *p = p.try_mul(d)?;
                s = s.try_add(&p.scale(&int(2 * *c as i64)))?;
            }
            b.push(s);
        }
        Ok(PowerSumVector { b })
    }
}

/// Elementary symmetric functions `e_1, ..., e_N` of the edge lengths, from
/// the power sums `p_k = B_X(k) / 2` by Newton's identities.
pub fn newton_elementary(ps: &PowerSumVector) -> Result<Vec<Scalar>> {
    let p: Vec<Scalar> = ps.b.iter().map(|b| b.scale(&Rational::new(1.into(), 2.into()))).collect();
    let mut e: Vec<Scalar> = Vec::with_capacity(p.len() + 1);
    e.push(Scalar::one());
    for k in 1..=p.len() {
        let mut s = Scalar::zero();
        for i in 1..=k {
            let t = e[k - i].try_mul(&p[i - 1])?;
            s = if i % 2 == 1 { s.try_add(&t)? } else { s.try_sub(&t)? };
        }
        e.push(s.scale(&Rational::new(1.into(), (k as i64).into())));
    }
    e.remove(0);
    Ok(e)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::metric::index_abs;

    fn cycle(n: usize) -> FiniteMetricSpace {
        FiniteMetricSpace::from_fn(n, |i, j| Ok(Scalar::from(index_abs(j as i64 - i as i64, n as u64) as i64)))
            .unwrap()
    }

    #[test]
    fn cycle_four_values() {
        let c4 = cycle(4);
        assert_eq!(riesz_at(&c4, 0).unwrap(), Scalar::from(12));
        assert_eq!(riesz_at(&c4, 2).unwrap(), Scalar::from(24));
        let (re, im) = riesz_numeric(&c4, &int(1), &int(0), 40).unwrap();
        assert!(re.contains(&int(16)) && im.contains(&int(0)));
        let e = newton_elementary(&PowerSumVector::of(&c4).unwrap()).unwrap();
        assert_eq!(e.len(), 6);
        assert_eq!(e[0], Scalar::from(8));
        assert_eq!(e[5], Scalar::from(4));
    }

    #[test]
    fn pair_elementary() {
        let two = FiniteMetricSpace::from_fn(2, |_, _| Ok(Scalar::one())).unwrap();
        let ps = PowerSumVector { b: alloc::vec![Scalar::from(4), Scalar::from(4)] };
        assert_eq!(newton_elementary(&ps).unwrap(), alloc::vec![Scalar::from(2), Scalar::from(1)]);
        assert!(!riesz_equal(&two, &cycle(3)).unwrap());
    }
}
