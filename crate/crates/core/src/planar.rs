//! Points at diagonal distances from the vertices of a unit equilateral
//! triangle, and the polynomial `F_n` whose zeros describe them.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::exact::rational::rat;
use crate::exact::trig::{delta, sin_squared};
use crate::exact::cyclotomic::two_cos;
use crate::exact::Scalar;

pub const DEFAULT_FSOLVE_CAP: usize = 60;

fn check_index(i: usize, n: usize) -> Result<()> {
    if n < 3 || i < 1 || i > n / 2 {
        return Err(Error::OutOfRange(format!("index {i} for n = {n}")));
    }
    Ok(())
}

/// Precomputed `sin^2(k pi / n)` for `k = 0..=n/2`.
pub struct SinTable {
    n: usize,
    s: Vec<Scalar>,
}

impl SinTable {
    pub fn new(n: usize) -> Result<Self> {
        if n < 3 {
            return Err(Error::BadN(n));
        }
        let s = (0..=n / 2).map(|k| sin_squared(k as i64, n as u64)).collect::<Result<_>>()?;
        Ok(SinTable { n, s })
    }

    /// `F_n(i, j, k)` with `theta = pi / n` and `s_x = sin^2(x theta)`:
    /// `s_1^2 + s_i^2 + s_j^2 + s_k^2 - (s_i s_j + s_i s_k + s_j s_k) - s_1 (s_i + s_j + s_k)`.
    pub fn f(&self, i: usize, j: usize, k: usize) -> Result<Scalar> {
        for x in [i, j, k] {
            check_index(x, self.n)?;
        }
        let (s1, si, sj, sk) = (&self.s[1], &self.s[i], &self.s[j], &self.s[k]);
        let sq = s1.try_mul(s1)?.try_add(&si.try_mul(si)?)?.try_add(&sj.try_mul(sj)?)?.try_add(&sk.try_mul(sk)?)?;
        let cross = si.try_mul(sj)?.try_add(&si.try_mul(sk)?)?.try_add(&sj.try_mul(sk)?)?;
        let lin = s1.try_mul(&si.try_add(sj)?.try_add(sk)?)?;
        sq.try_sub(&cross)?.try_sub(&lin)
    }
}

pub fn f_n(n: usize, i: usize, j: usize, k: usize) -> Result<Scalar> {
    SinTable::new(n)?.f(i, j, k)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FnSolutionSet {
    pub n: usize,
    pub solutions: Vec<(usize, usize, usize)>,
}

/// Every `1 <= i <= j <= k <= n/2` with `F_n(i, j, k) = 0`, tested exactly.
pub fn enumerate_solutions(n: usize, cap: usize) -> Result<FnSolutionSet> {
    if n > cap {
        return Err(Error::TooLarge { n, cap });
    }
    let t = SinTable::new(n)?;
    let h = n / 2;
    let mut solutions = Vec::new();
    for i in 1..=h {
        for j in i..=h {
            for k in j..=h {
                if t.f(i, j, k)?.is_zero() {
                    solutions.push((i, j, k));
                }
            }
        }
    }
    Ok(FnSolutionSet { n, solutions })
}

/// The solution families known in closed form: `(n/3-1, n/3, n/3+1)` for
/// multiples of 3, `(1, 1, 2)` at `n = 6`, `(n/6-1, n/6, n/6)` and
/// `(n/6, n/6, n/6+1)` for multiples of 6 from 12, and `(8, 10, 11)` at 24.
pub fn expected_solutions(n: usize) -> Vec<(usize, usize, usize)> {
    let mut out = BTreeSet::new();
    if n.is_multiple_of(3) && n >= 6 {
        out.insert((n / 3 - 1, n / 3, n / 3 + 1));
    }
    if n == 6 {
        out.insert((1, 1, 2));
    }
    if n.is_multiple_of(6) && n >= 12 {
        out.insert((n / 6 - 1, n / 6, n / 6));
        out.insert((n / 6, n / 6, n / 6 + 1));
    }
    if n == 24 {
        out.insert((8, 10, 11));
    }
    out.into_iter().collect()
}

/// A point `P` with `PA = delta_i`, `PB = delta_j`, `PC = delta_k` for the
/// triangle `B = (0, 0)`, `C = (1, 0)`, `A = (1/2, sqrt3/2)`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct TrianglePoint {
    pub x: Scalar,
    pub y_squared: Scalar,
    pub y_sign: i8,
    /// `y` itself; it always lies in the field generated by the diagonals
    /// and `sqrt3`.
    pub y: Scalar,
    pub dist_indices: (usize, usize, usize),
}

fn sqrt3() -> Result<Scalar> {
    Ok(two_cos(1, 12)?.into())
}

/// The vertices `A, B, C` as points with `dist_indices` zero.
pub fn triangle_vertices() -> Result<[TrianglePoint; 3]> {
    let h = sqrt3()?.scale(&rat(1, 2));
    let mk = |x: Scalar, y: Scalar| -> Result<TrianglePoint> {
        Ok(TrianglePoint { x, y_squared: y.try_mul(&y)?, y_sign: y.sign(None)?, y, dist_indices: (0, 0, 0) })
    };
    Ok([mk(Scalar::from(rat(1, 2)), h)?, mk(Scalar::zero(), Scalar::zero())?, mk(Scalar::one(), Scalar::zero())?])
}

/// Points with all three vertex distances diagonals `delta_i` with indices
/// in `allowed`.
///
/// For `PB = delta_j`, `PC = delta_k` the point is
/// `x = (delta_j^2 - delta_k^2 + 1) / 2`, `y^2 = delta_j^2 - x^2`, and
/// `PA = delta_i` forces `sqrt3 y = (x - 1/2)^2 + y^2 + 3/4 - delta_i^2`,
/// which fixes `y` exactly; the candidate is kept when its square is `y^2`.
pub fn triangle_points(n: usize, allowed: &[usize]) -> Result<Vec<TrianglePoint>> {
    let mut idx: Vec<usize> = allowed.to_vec();
    idx.sort_unstable();
    idx.dedup();
    for &i in &idx {
        check_index(i, n)?;
    }
    let d2: Vec<(usize, Scalar)> = idx
        .iter()
        .map(|&i| {
            let d = delta(i as i64, n as u64)?;
            Ok((i, d.try_mul(&d)?))
        })
        .collect::<Result<_>>()?;
    let s3 = sqrt3()?;
    let half = Scalar::from(rat(1, 2));
    let three_quarters = Scalar::from(rat(3, 4));
    let mut out = BTreeSet::new();
    for (j, dj) in &d2 {
        for (k, dk) in &d2 {
            let x = dj.try_sub(dk)?.try_add(&Scalar::one())?.scale(&rat(1, 2));
            let y2 = dj.try_sub(&x.try_mul(&x)?)?;
            if y2.sign(None)? < 0 {
                continue;
            }
            let xm = x.try_sub(&half)?;
            let base = xm.try_mul(&xm)?.try_add(&y2)?.try_add(&three_quarters)?;
            for (i, di) in &d2 {
                let r = base.try_sub(di)?;
                let y = r.try_mul(&s3)?.scale(&rat(1, 3));
                if y.try_mul(&y)? == y2 {
                    out.insert(TrianglePoint {
                        x: x.clone(),
                        y_squared: y2.clone(),
                        y_sign: y.sign(None)?,
                        y,
                        dist_indices: (*i, *j, *k),
                    });
                }
            }
        }
    }
    Ok(out.into_iter().collect())
}

/// `|PQ|^2`, exact since both points carry `y`.
pub fn point_pair_distance_squared(p: &TrianglePoint, q: &TrianglePoint) -> Result<Scalar> {
    let dx = p.x.try_sub(&q.x)?;
    let dy = p.y.try_sub(&q.y)?;
    dx.try_mul(&dx)?.try_add(&dy.try_mul(&dy)?)
}

/// Unordered pairs `(a, b)`, `a < b`, at squared distance `target`.
pub fn pairs_at(points: &[TrianglePoint], target: &Scalar) -> Result<Vec<(usize, usize)>> {
    let mut out = Vec::new();
    for a in 0..points.len() {
        for b in a + 1..points.len() {
            if &point_pair_distance_squared(&points[a], &points[b])? == target {
                out.push((a, b));
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn known_zeros() {
        assert!(f_n(9, 2, 3, 4).unwrap().is_zero());
        assert!(f_n(24, 8, 10, 11).unwrap().is_zero());
        assert!(!f_n(9, 1, 1, 1).unwrap().is_zero());
        assert!(f_n(9, 0, 1, 1).is_err());
        let t = SinTable::new(11).unwrap();
        let v = t.f(2, 3, 5).unwrap();
        for (a, b, c) in [(3, 2, 5), (5, 3, 2), (2, 5, 3), (3, 5, 2), (5, 2, 3)] {
            assert_eq!(t.f(a, b, c).unwrap(), v);
        }
    }

    #[test]
    fn small_enumerations() {
        assert_eq!(enumerate_solutions(6, 60).unwrap().solutions, [(1, 1, 2), (1, 2, 3)]);
        assert_eq!(enumerate_solutions(12, 60).unwrap().solutions, [(1, 2, 2), (2, 2, 3), (3, 4, 5)]);
        assert_eq!(enumerate_solutions(7, 60).unwrap().solutions, []);
        assert_eq!(enumerate_solutions(61, 60).unwrap_err(), Error::TooLarge { n: 61, cap: 60 });
        for n in [6, 9, 12] {
            assert_eq!(enumerate_solutions(n, 60).unwrap().solutions, expected_solutions(n));
        }
    }

    #[test]
    fn hexagon_points() {
        // three from (1, 1, 2) and six from (1, 2, 3)
        let pts = triangle_points(6, &[1, 2, 3]).unwrap();
        assert_eq!(pts.len(), 9);
        for p in &pts {
            let z = point_pair_distance_squared(p, p).unwrap();
            assert!(z.is_zero());
        }
    }

    #[test]
    fn twelve_gon_unit_pairs() {
        let mut pts: Vec<TrianglePoint> = triangle_vertices().unwrap().into();
        let sol = triangle_points(12, &[1, 2, 3, 4, 5, 6]).unwrap();
        assert_eq!(sol.len(), 12);
        pts.extend(sol);
        assert_eq!(pairs_at(&pts, &Scalar::one()).unwrap().len(), 6);
    }

    #[test]
    fn reflection_distance() {
        let pts = triangle_points(9, &[1, 2, 3, 4]).unwrap();
        assert_eq!(pts.len(), 6);
        let p = &pts[0];
        let mut q = p.clone();
        q.y = p.y.neg();
        let want = p.y_squared.scale(&rat(4, 1));
        assert_eq!(point_pair_distance_squared(p, &q).unwrap(), want);
    }
}
