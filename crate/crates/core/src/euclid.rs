//! Exact point configurations, squared distances and the Cayley–Menger
//! embeddability test.

use alloc::format;
use alloc::string::ToString;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::exact::cyclotomic::two_cos;
use crate::exact::rational::{int, rat};
use crate::exact::{Scalar, Witness};
use crate::metric::FiniteMetricSpace;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointConfig {
    points: Vec<Vec<Scalar>>,
}

impl PointConfig {
    pub fn new(points: Vec<Vec<Scalar>>) -> Result<Self> {
        let d = points.first().map_or(0, |p| p.len());
        if let Some(p) = points.iter().find(|p| p.len() != d) {
            return Err(Error::BadLength { expected: d, got: p.len() });
        }
        Ok(PointConfig { points })
    }

    pub fn points(&self) -> &[Vec<Scalar>] {
        &self.points
    }

    pub fn dim(&self) -> usize {
        self.points.first().map_or(0, |p| p.len())
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }
}

/// Matrix of squared pairwise distances.
pub fn squared_distance_space(p: &PointConfig) -> Result<Vec<Vec<Scalar>>> {
    let n = p.len();
    let mut out = vec![vec![Scalar::zero(); n]; n];
    for i in 0..n {
        for j in i + 1..n {
            let mut s = Scalar::zero();
            for (a, b) in p.points[i].iter().zip(&p.points[j]) {
                let t = a.try_sub(b)?;
                s = s.try_add(&t.try_mul(&t)?)?;
            }
            out[i][j] = s.clone();
            out[j][i] = s;
        }
    }
    Ok(out)
}

/// Entrywise squares of a distance matrix.
pub fn squared_entries(x: &FiniteMetricSpace) -> Result<Vec<Vec<Scalar>>> {
    x.rows().iter().map(|r| r.iter().map(|d| d.try_mul(d)).collect()).collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Embedding {
    /// Realisable with affine dimension `dim`.
    Embeddable { dim: usize },
    /// Realisable, but only in dimension `rank > max_dim`.
    NeedsDimension { rank: usize },
    /// Not realisable in any Euclidean space.
    NotEmbeddable,
}

/// Decides Euclidean realisability from squared distances: the Gram matrix
/// `G_ij = (D_0i + D_0j - D_ij) / 2` must be positive semidefinite, and its
/// rank is the minimal dimension. Semidefiniteness is tested by an exact
/// symmetric LDL^T with diagonal pivoting.
pub fn cayley_menger_embeddable(d2: &[Vec<Scalar>], max_dim: usize, w: Option<&Witness>) -> Result<Embedding> {
    let n = d2.len();
    if let Some(r) = d2.iter().find(|r| r.len() != n) {
        return Err(Error::BadLength { expected: n, got: r.len() });
    }
    if n <= 1 {
        return Ok(Embedding::Embeddable { dim: 0 });
    }
    let half = rat(1, 2);
    let m = n - 1;
    let mut g = vec![vec![Scalar::zero(); m]; m];
    for i in 0..m {
        for j in 0..m {
            let s = d2[0][i + 1].try_add(&d2[0][j + 1])?.try_sub(&d2[i + 1][j + 1])?;
            g[i][j] = s.scale(&half);
        }
    }
    let mut active: Vec<usize> = (0..m).collect();
    let mut rank = 0;
    while !active.is_empty() {
        let mut pivot = None;
        for (pos, &i) in active.iter().enumerate() {
            match g[i][i].sign(w)? {
                -1 => return Ok(Embedding::NotEmbeddable),
                1 if pivot.is_none() => pivot = Some(pos),
                _ => {}
            }
        }
        let Some(pos) = pivot else {
            // zero diagonal: semidefinite only if the rest vanishes
            for &i in &active {
                for &j in &active {
                    if !g[i][j].is_zero() {
                        return Ok(Embedding::NotEmbeddable);
                    }
                }
            }
            break;
        };
        let p = active.remove(pos);
        rank += 1;
        for &i in &active {
            let f = g[i][p].try_div(&g[p][p])?;
            for &j in &active {
                let t = g[i][j].try_sub(&f.try_mul(&g[p][j])?)?;
                g[i][j] = t;
            }
        }
    }
    Ok(if rank <= max_dim { Embedding::Embeddable { dim: rank } } else { Embedding::NeedsDimension { rank } })
}

/// Bordered Cayley–Menger determinant of the points `idx`.
pub fn cayley_menger_determinant(d2: &[Vec<Scalar>], idx: &[usize]) -> Result<Scalar> {
    let k = idx.len() + 1;
    let mut a = vec![vec![Scalar::one(); k]; k];
    a[0][0] = Scalar::zero();
    for (r, &i) in idx.iter().enumerate() {
        for (c, &j) in idx.iter().enumerate() {
            a[r + 1][c + 1] = d2[i][j].clone();
        }
    }
    determinant(a)
}

fn determinant(mut a: Vec<Vec<Scalar>>) -> Result<Scalar> {
    let n = a.len();
    let mut det = Scalar::one();
    for k in 0..n {
        let Some(p) = (k..n).find(|&r| !a[r][k].is_zero()) else {
            return Ok(Scalar::zero());
        };
        if p != k {
            a.swap(k, p);
            det = det.neg();
        }
        det = det.try_mul(&a[k][k])?;
        for i in k + 1..n {
            let f = a[i][k].try_div(&a[k][k])?;
            for j in k..n {
                let t = a[i][j].try_sub(&f.try_mul(&a[k][j])?)?;
                a[i][j] = t;
            }
        }
    }
    Ok(det)
}

pub const FIXTURE_NAMES: [&str; 4] =
    ["square_isomer_r3", "pentagon_isomer_r4", "hexagon_mutant_r3", "hexagon_mutant_nonembeddable"];

#[derive(Clone, Debug)]
pub enum Fixture {
    Points(PointConfig),
    Space(FiniteMetricSpace),
}

fn sqrt2() -> Result<Scalar> {
    Ok(two_cos(1, 8)?.into())
}

fn sqrt3() -> Result<Scalar> {
    Ok(two_cos(1, 12)?.into())
}

fn sqrt5() -> Result<Scalar> {
    Scalar::from(two_cos(1, 5)?).scale(&int(2)).try_add(&Scalar::one())
}

fn r(p: i64, q: i64) -> Scalar {
    Scalar::from(rat(p, q))
}

pub fn euclidean_fixture(name: &str) -> Result<Fixture> {
    let z = Scalar::zero;
    match name {
        "square_isomer_r3" => {
            let h = sqrt3()?.scale(&rat(1, 2));
            Ok(Fixture::Points(PointConfig::new(vec![
                vec![z(), z(), z()],
                vec![r(1, 1), z(), z()],
                vec![r(1, 2), h, z()],
                vec![z(), z(), r(1, 1)],
            ])?))
        }
        "pentagon_isomer_r4" => {
            let s5 = sqrt5()?;
            let plus1 = s5.try_add(&r(1, 1))?.scale(&rat(1, 4));
            let plus3 = s5.try_add(&r(3, 1))?.scale(&rat(1, 4));
            let minus1 = s5.try_sub(&r(1, 1))?.scale(&rat(1, 4));
            Ok(Fixture::Points(PointConfig::new(vec![
                vec![z(), z(), plus1.clone(), plus3],
                vec![z(), r(1, 2), z(), z()],
                vec![z(), r(-1, 2), z(), z()],
                vec![plus1.clone(), z(), minus1.clone(), z()],
                vec![plus1.neg(), z(), minus1, z()],
            ])?))
        }
        "hexagon_mutant_r3" => {
            let s3 = sqrt3()?;
            let a = s3.scale(&rat(1, 3)); // 1/sqrt3
            let b = s3.scale(&rat(1, 6)); // 1/(2 sqrt3)
            let h = sqrt2()?.try_mul(&s3)?.scale(&rat(2, 3)); // 2 sqrt2 / sqrt3
            Ok(Fixture::Points(PointConfig::new(vec![
                vec![a.clone(), z(), z()],
                vec![b.neg(), r(1, 2), z()],
                vec![b.neg(), r(-1, 2), z()],
                vec![a.neg(), z(), h.clone()],
                vec![b.clone(), r(1, 2), h.clone()],
                vec![b, r(-1, 2), h],
            ])?))
        }
        "hexagon_mutant_nonembeddable" => {
            let s3 = sqrt3()?;
            let x = FiniteMetricSpace::from_fn(6, |i, j| {
                Ok(if j - i == 1 || (i, j) == (0, 5) {
                    Scalar::one()
                } else if [(0, 3), (1, 5), (2, 4)].contains(&(i, j)) {
                    Scalar::from(2)
                } else {
                    s3.clone()
                })
            })?;
            Ok(Fixture::Space(x.with_label(name.to_string()).validated()?))
        }
        other => Err(Error::UnknownName(format!("fixture {other}"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{isomer, polygon_type, regular_polygon};
    use crate::metric::{isometry, EdgeMultiset};

    fn points(name: &str) -> PointConfig {
        match euclidean_fixture(name).unwrap() {
            Fixture::Points(p) => p,
            Fixture::Space(_) => panic!("expected points"),
        }
    }

    fn upper(m: &[Vec<Scalar>]) -> EdgeMultiset {
        EdgeMultiset::from_values((0..m.len()).flat_map(|i| (i + 1..m.len()).map(move |j| m[i][j].clone())))
    }

    #[test]
    fn small_configs() {
        let seg = PointConfig::new(vec![vec![r(0, 1)], vec![r(1, 1)]]).unwrap();
        assert_eq!(squared_distance_space(&seg).unwrap()[0][1], Scalar::one());
        let d = squared_distance_space(&points("square_isomer_r3")).unwrap();
        assert_eq!(upper(&d).entries(), &[(Scalar::from(1), 4), (Scalar::from(2), 2)]);
        assert!(PointConfig::new(vec![vec![r(0, 1)], vec![]]).is_err());
    }

    #[test]
    fn pentagon_fixture_is_an_isomer_of_the_pentagon() {
        let d = squared_distance_space(&points("pentagon_isomer_r4")).unwrap();
        let iso = isomer(&polygon_type(5).unwrap(), None).unwrap();
        assert_eq!(upper(&d), upper(&squared_entries(&iso).unwrap()));
    }

    #[test]
    fn hexagon_fixture_matches_the_even_mutant() {
        let d = squared_distance_space(&points("hexagon_mutant_r3")).unwrap();
        let x = FiniteMetricSpace::new(d.clone()).unwrap();
        let d6 = FiniteMetricSpace::new(squared_entries(&regular_polygon(6).unwrap()).unwrap()).unwrap();
        assert_eq!(x.quasi_homog_type(), d6.quasi_homog_type());
        assert!(isometry(&x, &d6, 14).unwrap().is_none());
        let m = crate::constructions::mutant_even(&polygon_type(6).unwrap(), None).unwrap();
        let m = FiniteMetricSpace::new(squared_entries(&m).unwrap()).unwrap();
        assert!(isometry(&x, &m, 14).unwrap().is_some());
        assert_eq!(cayley_menger_embeddable(&d, 3, None).unwrap(), Embedding::Embeddable { dim: 3 });
        assert_eq!(cayley_menger_embeddable(&d, 2, None).unwrap(), Embedding::NeedsDimension { rank: 3 });
    }

    #[test]
    fn embeddability() {
        let sq = squared_entries(&crate::constructions::cycle_graph(4).unwrap()).unwrap();
        // the unit square: sides 1, diagonals squared 2
        let sq: Vec<Vec<Scalar>> =
            sq.iter().map(|r| r.iter().map(|v| if *v == Scalar::from(4) { Scalar::from(2) } else { v.clone() }).collect()).collect();
        assert_eq!(cayley_menger_embeddable(&sq, 3, None).unwrap(), Embedding::Embeddable { dim: 2 });
        let Fixture::Space(h) = euclidean_fixture("hexagon_mutant_nonembeddable").unwrap() else { panic!() };
        let d2 = squared_entries(&h).unwrap();
        assert_eq!(cayley_menger_embeddable(&d2, 100, None).unwrap(), Embedding::NotEmbeddable);
        assert!(matches!(euclidean_fixture("nope"), Err(Error::UnknownName(_))));
    }

    #[test]
    fn bordered_determinant_matches_gram() {
        // CM(k+1 points) = (-1)^(k+1) 2^k det G; a unit right triangle has det G = 1
        let d2 = vec![
            vec![r(0, 1), r(1, 1), r(1, 1)],
            vec![r(1, 1), r(0, 1), r(2, 1)],
            vec![r(1, 1), r(2, 1), r(0, 1)],
        ];
        assert_eq!(cayley_menger_determinant(&d2, &[0, 1, 2]).unwrap(), Scalar::from(-4));
        let tetra = squared_distance_space(&points("square_isomer_r3")).unwrap();
        let cm = cayley_menger_determinant(&tetra, &[0, 1, 2, 3]).unwrap();
        assert_eq!(cm.sign(None).unwrap(), 1);
    }
}
