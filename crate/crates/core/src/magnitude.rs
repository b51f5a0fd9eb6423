//! Formal magnitude by exact elimination, by the constant weighting of a
//! quasi-homogeneous space, and by summing paths; numeric magnitude at a
//! given scale.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exact::interval::{self, Interval};
use crate::exact::rational::int;
use crate::exact::{Rational, Scalar, Witness};
use crate::genpoly::{Exponent, GenPolynomial, GenRational};
use crate::metric::{EdgeMultiset, FiniteMetricSpace};
use crate::multipoly::{Monomial, MultiPoly};

pub const DEFAULT_SOLVER_CAP: usize = 12;

pub type SimilarityMatrix = Vec<Vec<GenPolynomial>>;

/// `z_X(q) = (q^{d_ij})`.
pub fn similarity_matrix(x: &FiniteMetricSpace) -> Result<SimilarityMatrix> {
    let mono: Vec<GenPolynomial> = x
        .classes()
        .iter()
        .map(|d| GenPolynomial::monomial(d.clone(), Rational::one()))
        .collect::<Result<_>>()?;
    Ok((0..x.n()).map(|i| (0..x.n()).map(|j| mono[x.class_id(i, j) as usize].clone()).collect()).collect())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Method {
    /// `w = w_0 * 1`, valid because every row of `z_X` has the same sum.
    ConstantWeighting,
    /// Fraction-free elimination over a polynomial ring in the generating
    /// distances.
    Elimination,
}

#[derive(Clone, Debug)]
pub struct FormalMagnitude {
    pub value: GenRational,
    pub method: Method,
    weight_num: Vec<GenPolynomial>,
    weight_den: GenPolynomial,
}

impl FormalMagnitude {
    /// The weighting `w` with `z_X w = 1`.
    pub fn weighting(&self) -> Result<Vec<GenRational>> {
        self.weight_num.iter().map(|p| GenRational::new(p.clone(), self.weight_den.clone())).collect()
    }

    /// `z_X w - 1`, checked row by row; `true` when it vanishes identically.
    pub fn residual_is_zero(&self, z: &SimilarityMatrix) -> Result<bool> {
        for row in z {
            let mut acc = GenPolynomial::zero();
            for (zij, wj) in row.iter().zip(&self.weight_num) {
                acc = acc.add(&zij.mul(wj)?);
            }
            if acc != self.weight_den {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// `n / (1 + sum_j q^{d_j})` for a quasi-homogeneous type of size `n - 1`.
pub fn formal_magnitude_qh(ty: &EdgeMultiset, n: usize) -> Result<GenRational> {
    if ty.total() + 1 != n {
        return Err(Error::InvalidSpace(format!("type of size {} for {n} points", ty.total())));
    }
    let mut den = GenPolynomial::one();
    for (d, c) in ty.entries() {
        den = den.add(&GenPolynomial::monomial(d.clone(), int(*c as i64))?);
    }
    GenRational::new(GenPolynomial::constant(int(n as i64)), den)
}

/// Formal magnitude: the constant weighting when all rows of the similarity
/// matrix have equal sums, elimination (up to `DEFAULT_SOLVER_CAP` points)
/// otherwise.
pub fn formal_magnitude(x: &FiniteMetricSpace) -> Result<FormalMagnitude> {
    let z = similarity_matrix(x)?;
    let row0 = row_sum(&z[0]);
    if z.iter().skip(1).all(|r| row_sum(r) == row0) {
        let n = x.n();
        let value = GenRational::new(GenPolynomial::constant(int(n as i64)), row0.clone())?;
        return Ok(FormalMagnitude {
            value,
            method: Method::ConstantWeighting,
            weight_num: vec![GenPolynomial::one(); n],
            weight_den: row0,
        });
    }
    formal_magnitude_elimination(x, DEFAULT_SOLVER_CAP)
}

fn row_sum(r: &[GenPolynomial]) -> GenPolynomial {
    r.iter().fold(GenPolynomial::zero(), |a, b| a.add(b))
}

fn nonnegative(x: &Scalar) -> Result<bool> {
    match x {
        Scalar::Formal(f) => {
            Ok(!f.constant_term().is_negative() && f.symbols().values().all(|c| !c.is_negative()))
        }
        _ => Ok(x.sign(None)? >= 0),
    }
}

/// Multiplicities `a` with `d = sum a_i g_i`, if any.
fn decompose(d: &Scalar, gens: &[Scalar], from: usize, acc: &mut Vec<u32>) -> Result<bool> {
    if d.is_zero() {
        return Ok(true);
    }
    for k in from..gens.len() {
        let r = d.try_sub(&gens[k])?;
        if nonnegative(&r)? {
            acc[k] += 1;
            if decompose(&r, gens, k, acc)? {
                return Ok(true);
            }
            acc[k] -= 1;
        }
    }
    Ok(false)
}

/// Formal magnitude by fraction-free elimination.
///
/// Distances are written as monomials `y^a` in generators `y_g = q^g`,
/// where a distance becomes a new generator unless it is a nonnegative
/// integer combination of the earlier ones. The system `Z w = 1` is solved
/// in `Z[y]` and mapped back to generalized polynomials.
pub fn formal_magnitude_elimination(x: &FiniteMetricSpace, cap: usize) -> Result<FormalMagnitude> {
    let n = x.n();
    if n > cap {
        return Err(Error::TooLarge { n, cap });
    }
    let mut gens: Vec<Scalar> = Vec::new();
    let mut monos: Vec<Monomial> = Vec::new();
    for d in x.classes() {
        if d.is_zero() {
            monos.push(Vec::new());
            continue;
        }
        let mut a = vec![0u32; gens.len()];
        if decompose(d, &gens, 0, &mut a)? {
            monos.push(a);
        } else {
            gens.push(d.clone());
            let mut a = vec![0u32; gens.len()];
            a[gens.len() - 1] = 1;
            monos.push(a);
        }
    }
    let vars = gens.len();
    let mono = |c: u32| -> MultiPoly {
        let mut m = monos[c as usize].clone();
        m.resize(vars, 0);
        MultiPoly::monomial(m, BigInt::one())
    };
    let one = MultiPoly::constant(BigInt::one(), vars);
    let mut a: Vec<Vec<MultiPoly>> = (0..n)
        .map(|i| {
            let mut row: Vec<MultiPoly> = (0..n).map(|j| mono(x.class_id(i, j))).collect();
            row.push(one.clone());
            row
        })
        .collect();

    let mut prev = one.clone();
    for k in 0..n {
        let p = (k..n)
            .filter(|&r| !a[r][k].is_zero())
            .min_by_key(|&r| a[r][k].len())
            .ok_or_else(|| Error::InvalidSpace("singular similarity matrix".into()))?;
        a.swap(k, p);
        for i in k + 1..n {
            for j in k + 1..=n {
                let t = a[k][k].mul(&a[i][j]).sub(&a[i][k].mul(&a[k][j]));
                a[i][j] = t.div_exact(&prev)?;
            }
            a[i][k] = MultiPoly::zero();
        }
        prev = a[k][k].clone();
    }
    let det = a[n - 1][n - 1].clone();
    let mut xs = vec![MultiPoly::zero(); n];
    for i in (0..n).rev() {
        let mut t = det.mul(&a[i][n]);
        for j in i + 1..n {
            t = t.sub(&a[i][j].mul(&xs[j]));
        }
        xs[i] = t.div_exact(&a[i][i])?;
    }

    let map = |p: &MultiPoly| -> Result<GenPolynomial> {
        let mut out = GenPolynomial::zero();
        for (m, c) in p.terms() {
            let mut e = Scalar::zero();
            for (k, &mult) in m.iter().enumerate() {
                if mult > 0 {
                    e = e.try_add(&gens[k].scale(&int(mult as i64)))?;
                }
            }
            out.add_term(Exponent::new(e), Rational::from_integer(c.clone()));
        }
        Ok(out)
    };
    let den = map(&det)?;
    let c0 = den.constant_term();
    if c0.is_zero() {
        return Err(Error::ZeroConstantTerm);
    }
    let inv = c0.recip();
    let den = den.scale(&inv);
    let weight_num: Vec<GenPolynomial> =
        xs.iter().map(|p| map(p).map(|g| g.scale(&inv))).collect::<Result<_>>()?;
    let num = weight_num.iter().fold(GenPolynomial::zero(), |a, b| a.add(b));
    Ok(FormalMagnitude {
        value: GenRational::new(num, den.clone())?,
        method: Method::Elimination,
        weight_num,
        weight_den: den,
    })
}

/// `3 * (largest distance)`, the default truncation threshold.
pub fn default_threshold(x: &FiniteMetricSpace) -> Result<Scalar> {
    Ok(x.max_distance()?.scale(&int(3)))
}

/// `sum_k (-1)^k sum_{k-paths} q^{length}` over ordered paths of length
/// `<= bound`, by dynamic programming over (end point, length).
pub fn path_expansion(x: &FiniteMetricSpace, bound: &Scalar) -> Result<GenPolynomial> {
    let n = x.n();
    let w = x.witness();
    for (k, c) in x.classes().iter().enumerate() {
        if k > 0 && c.sign(w)? <= 0 {
            return Err(Error::InvalidSpace("nonpositive distance".into()));
        }
    }
    if bound.sign(w)? < 0 {
        return Ok(GenPolynomial::zero());
    }
    let lb = Exponent::new(bound.clone());
    let steps: Vec<Exponent> = x.classes().iter().map(|d| Exponent::new(d.clone())).collect();
    let mut cur = vec![GenPolynomial::one(); n];
    let mut total = GenPolynomial::zero();
    let mut sign = int(1);
    loop {
        for p in &cur {
            total = total.add(&p.scale(&sign));
        }
        let mut next = vec![GenPolynomial::zero(); n];
        let mut any = false;
        for (v, nv) in next.iter_mut().enumerate() {
            for (u, pu) in cur.iter().enumerate() {
                if u == v || pu.is_zero() {
                    continue;
                }
                let step = &steps[x.class_id(u, v) as usize];
                for (e, c) in pu.terms() {
                    let e2 = e.add(step)?;
                    if e2.numeric_cmp(&lb, w)? != Ordering::Greater {
                        nv.add_term(e2, c.clone());
                        any = true;
                    }
                }
            }
        }
        if !any {
            return Ok(total);
        }
        cur = next;
        sign = -sign;
    }
}

/// Certified enclosure of the magnitude of `tX`, from the linear system at
/// `q = e^{-t}` solved in interval arithmetic.
pub fn magnitude_at(x: &FiniteMetricSpace, t: &Rational, prec: u32) -> Result<Interval> {
    if !t.is_positive() {
        return Err(Error::OutOfRange("scale t must be positive".into()));
    }
    let w = x.witness();
    let target = Rational::new(BigInt::one(), crate::exact::rational::pow2(prec));
    let mut work = prec + 32;
    loop {
        let r = solve_at(x, t, work, w)?;
        if r.width() <= target || work > 16 * prec + 512 {
            return Ok(r);
        }
        work *= 2;
    }
}

fn solve_at(x: &FiniteMetricSpace, t: &Rational, work: u32, w: Option<&Witness>) -> Result<Interval> {
    let n = x.n();
    let sims: Vec<Interval> = x
        .classes()
        .iter()
        .map(|d| Ok(interval::exp(&d.enclosure(work + 8, w)?.scale(&-t), work + 8)))
        .collect::<Result<_>>()?;
    let mut a: Vec<Vec<Interval>> = (0..n)
        .map(|i| {
            let mut row: Vec<Interval> = (0..n).map(|j| sims[x.class_id(i, j) as usize].clone()).collect();
            row.push(Interval::point(Rational::one()));
            row
        })
        .collect();
    for k in 0..n {
        // pivot with the largest certified magnitude
        let p = (k..n)
            .max_by(|&r, &s| mag_lower(&a[r][k]).cmp(&mag_lower(&a[s][k])))
            .unwrap();
        a.swap(k, p);
        if a[k][k].contains_zero() {
            return Err(Error::PossiblySingular);
        }
        let inv = a[k][k].recip()?;
        for i in k + 1..n {
            let f = a[i][k].mul(&inv).round(work);
            for j in k..=n {
                let t = a[i][j].sub(&f.mul(&a[k][j])).round(work);
                a[i][j] = t;
            }
        }
    }
    let mut xs = vec![Interval::zero(); n];
    for i in (0..n).rev() {
        let mut s = a[i][n].clone();
        for j in i + 1..n {
            s = s.sub(&a[i][j].mul(&xs[j]));
        }
        xs[i] = s.div(&a[i][i])?.round(work);
    }
    Ok(xs.iter().fold(Interval::zero(), |acc, v| acc.add(v)))
}

fn mag_lower(x: &Interval) -> Rational {
    if x.contains_zero() {
        Rational::zero()
    } else {
        x.lo().abs().min(x.hi().abs())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::rat;
    use crate::exact::trig::delta;
    use crate::genpoly::gr_equal;
    use crate::metric::index_abs;

    fn cycle(n: usize) -> FiniteMetricSpace {
        FiniteMetricSpace::from_fn(n, |i, j| Ok(Scalar::from(index_abs(j as i64 - i as i64, n as u64) as i64)))
            .unwrap()
    }

    fn polygon(n: usize) -> FiniteMetricSpace {
        FiniteMetricSpace::from_fn(n, |i, j| delta(index_abs(j as i64 - i as i64, n as u64) as i64, n as u64)).unwrap()
    }

    fn q(e: i64, c: i64) -> GenPolynomial {
        GenPolynomial::monomial(Scalar::from(e), int(c)).unwrap()
    }

    #[test]
    fn single_point() {
        let p = FiniteMetricSpace::new(vec![vec![Scalar::zero()]]).unwrap();
        let m = formal_magnitude(&p).unwrap();
        assert_eq!(m.value, GenRational::from_poly(GenPolynomial::one()));
        assert_eq!(path_expansion(&p, &Scalar::from(5)).unwrap(), GenPolynomial::one());
        let e = formal_magnitude_elimination(&p, 12).unwrap();
        assert!(gr_equal(&e.value, &m.value).unwrap());
    }

    #[test]
    fn cycle_four_agrees_three_ways() {
        let c4 = cycle(4);
        let want = GenRational::new(GenPolynomial::constant(int(4)), q(0, 1).add(&q(1, 2)).add(&q(2, 1))).unwrap();
        let a = formal_magnitude(&c4).unwrap();
        let b = formal_magnitude_elimination(&c4, 12).unwrap();
        assert_eq!(a.method, Method::ConstantWeighting);
        assert!(gr_equal(&a.value, &want).unwrap());
        assert!(gr_equal(&b.value, &want).unwrap());
        let z = similarity_matrix(&c4).unwrap();
        assert!(b.residual_is_zero(&z).unwrap());
        let s = path_expansion(&c4, &Scalar::from(3)).unwrap();
        assert_eq!(s, q(0, 4).add(&q(1, -8)).add(&q(2, 12)).add(&q(3, -16)));
        assert_eq!(b.value.series(&Scalar::from(3), None).unwrap(), s);
    }

    #[test]
    fn polygon_elimination_matches_closed_form() {
        for n in 3..=7 {
            let x = polygon(n);
            let qh = formal_magnitude_qh(&x.quasi_homog_type().unwrap(), n).unwrap();
            let e = formal_magnitude_elimination(&x, 12).unwrap();
            assert!(gr_equal(&qh, &e.value).unwrap(), "n={n}");
            let l = default_threshold(&x).unwrap();
            assert_eq!(e.value.series(&l, None).unwrap(), path_expansion(&x, &l).unwrap(), "n={n}");
        }
    }

    #[test]
    fn numeric_magnitude() {
        let c4 = cycle(4);
        let iv = magnitude_at(&c4, &int(1), 40).unwrap();
        let exact = formal_magnitude(&c4).unwrap().value.eval_at(&int(1), 60, None).unwrap();
        assert!(iv.intersects(&exact));
        let d5 = polygon(5);
        let iv = magnitude_at(&d5, &int(20), 40).unwrap();
        assert!(iv.lo() > &rat(4999999, 1000000) && iv.hi() < &rat(5000001, 1000000));
    }
}
