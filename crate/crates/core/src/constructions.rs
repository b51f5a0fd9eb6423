//! Cycle graphs, regular polygons, circular spaces and their mutants and
//! isomers, the three trees with edge lengths `a, b, c`, and the Euclidean
//! fixtures.

use alloc::format;
use alloc::string::ToString;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::exact::trig::delta;
use crate::exact::{Scalar, Witness};
use crate::metric::{index_abs, isometry, CircularType, FiniteMetricSpace};

pub use crate::euclid::{euclidean_fixture, Fixture, PointConfig};

/// `(1, 2, ..., n/2)`.
pub fn cycle_type(n: usize) -> Result<CircularType> {
    if n < 3 {
        return Err(Error::BadN(n));
    }
    Ok(CircularType { n, d: (1..=(n / 2) as i64).map(Scalar::from).collect() })
}

/// `(delta_1, ..., delta_{n/2})`.
pub fn polygon_type(n: usize) -> Result<CircularType> {
    if n < 3 {
        return Err(Error::BadN(n));
    }
    Ok(CircularType { n, d: (1..=(n / 2) as i64).map(|i| delta(i, n as u64)).collect::<Result<_>>()? })
}

fn circulant(ty: &CircularType, m: usize) -> Result<FiniteMetricSpace> {
    FiniteMetricSpace::from_fn(m, |i, j| Ok(ty.at(index_abs(j as i64 - i as i64, m as u64))))
}

/// The cycle graph `C_n` with its path metric.
pub fn cycle_graph(n: usize) -> Result<FiniteMetricSpace> {
    circulant(&cycle_type(n)?, n)?.with_label(format!("C_{n}")).validated()
}

/// The regular `n`-gon with unit side.
pub fn regular_polygon(n: usize) -> Result<FiniteMetricSpace> {
    circulant(&polygon_type(n)?, n)?.with_label(format!("Delta_{n}")).validated()
}

/// The circulant space `d(P_i, P_j) = d_{|j-i|_n}` of a checked type.
pub fn circular_space(ty: &CircularType, w: Option<&Witness>) -> Result<FiniteMetricSpace> {
    ty.check(w)?;
    let mut x = circulant(ty, ty.n)?.with_label(format!("circular_{}", ty.n));
    if let Some(w) = w {
        x = x.with_witness(w.clone());
    }
    x.validated()
}

/// `m` points with `d(Q_i, Q_j) = d_{|j-i|_m}` taken from a type for `n > m`
/// points.
pub fn restricted_polygon(ty: &CircularType, m: usize, w: Option<&Witness>) -> Result<FiniteMetricSpace> {
    ty.check(w)?;
    if m == 0 || m >= ty.n {
        return Err(Error::BadN(m));
    }
    let mut x = circulant(ty, m)?.with_label(format!("restricted_{}_of_{}", m, ty.n));
    if let Some(w) = w {
        x = x.with_witness(w.clone());
    }
    x.validated()
}

fn attach(x: FiniteMetricSpace, w: Option<&Witness>) -> FiniteMetricSpace {
    match w {
        Some(w) => x.with_witness(w.clone()),
        None => x,
    }
}

/// Checks that `x` shares the row type of the circular space of `ty` and is
/// not isometric to it.
fn check_mutant(ty: &CircularType, x: &FiniteMetricSpace, w: Option<&Witness>) -> Result<()> {
    let src = circular_space(ty, w)?;
    if x.quasi_homog_type() != src.quasi_homog_type() {
        return Err(Error::MetricViolation("row type differs from the source".into()));
    }
    if isometry(x, &src, usize::MAX)?.is_some() {
        return Err(Error::MetricViolation("isometric to the source".into()));
    }
    Ok(())
}

fn check_isomer(ty: &CircularType, x: &FiniteMetricSpace, w: Option<&Witness>) -> Result<()> {
    let src = circular_space(ty, w)?;
    if x.edge_multiset() != src.edge_multiset() {
        return Err(Error::MetricViolation("edge multiset differs from the source".into()));
    }
    if isometry(x, &src, usize::MAX)?.is_some() {
        return Err(Error::MetricViolation("isometric to the source".into()));
    }
    Ok(())
}

/// Mutant of a circular space with an even number `n >= 6` of points, built
/// from two circular halves `A` (points `0..n/2`) and `B` (points `n/2..n`).
pub fn mutant_even(ty: &CircularType, w: Option<&Witness>) -> Result<FiniteMetricSpace> {
    let n = ty.n;
    if n < 6 || n % 2 == 1 {
        return Err(Error::BadN(n));
    }
    ty.check(w)?;
    let h = n / 2;
    let x = if n.is_multiple_of(4) {
        let k = (n / 4) as u64;
        FiniteMetricSpace::from_fn(n, |a, b| {
            let (ia, ib) = ((a % h) as i64, (b % h) as i64);
            let r = index_abs(ib - ia, 2 * k);
            Ok(if (a < h) == (b < h) { ty.at(r) } else { ty.at(k + r) })
        })?
    } else {
        let m = h as u64; // 2k + 1
        FiniteMetricSpace::from_fn(n, |a, b| {
            let (ia, ib) = ((a % h) as i64, (b % h) as i64);
            let r = index_abs(ib - ia, m);
            Ok(if (a < h) == (b < h) { ty.at(r) } else { ty.at(m - r) })
        })?
    };
    let x = attach(x.with_label(format!("mutant_{n}")), w).validated()?;
    check_mutant(ty, &x, w)?;
    Ok(x)
}

/// The mutant of the regular nonagon on triples `A_i, B_i, C_i`
/// (points `i`, `3 + i`, `6 + i`).
pub fn mutant_nonagon() -> Result<FiniteMetricSpace> {
    let d: Vec<Scalar> = (1..=4).map(|i| delta(i, 9)).collect::<Result<_>>()?;
    let x = FiniteMetricSpace::from_fn(9, |p, q| {
        let (gp, ip) = (p / 3, (p % 3) as i64);
        let (gq, iq) = (q / 3, (q % 3) as i64);
        if gp == gq {
            return Ok(d[0].clone());
        }
        // orient the pair along A -> B -> C -> A
        let (i, j) = if (gp + 1) % 3 == gq { (ip, iq) } else { (iq, ip) };
        Ok(d[1 + (j - i).rem_euclid(3) as usize].clone())
    })?;
    let x = x.with_label("mutant_nonagon").validated()?;
    check_mutant(&polygon_type(9)?, &x, None)?;
    Ok(x)
}

/// Suffix `s` with `d(A_i, B_j) = d_s` for the isomer on `4k + 1` points
/// (`1 <= i <= 2k`, `1 <= j <= 2k + 1`).
pub fn isomer_suffix_4k1(k: usize, i: usize, j: usize) -> usize {
    if j <= k {
        return k + j;
    }
    if j == k + 1 || (i == 2 * k && j == k + 2) {
        return 2 * k;
    }
    for l in 1..k {
        if (j == k + l + 1 && i <= 2 * k - l) || (j == k + l + 2 && i >= 2 * k - l) {
            return 2 * k - l;
        }
    }
    debug_assert!(j == 2 * k + 1 && i <= k);
    k
}

/// Suffix for the isomer on `4k + 3` points (`1 <= i <= 2k + 1`,
/// `1 <= j <= 2k + 2`).
pub fn isomer_suffix_4k3(k: usize, i: usize, j: usize) -> usize {
    if j <= k + 1 {
        return k + j;
    }
    if j == k + 2 || (i == 2 * k + 1 && j == k + 3) {
        return 2 * k + 1;
    }
    for l in 1..k {
        if (j == k + l + 2 && i <= 2 * k + 1 - l) || (j == k + l + 3 && i >= 2 * k + 1 - l) {
            return 2 * k + 1 - l;
        }
    }
    debug_assert!(j == 2 * k + 2 && i <= k + 1);
    k + 1
}

type SuffixRule = fn(usize, usize, usize) -> usize;

/// Isomer of a circular space with `n >= 4` points: same edge multiset, not
/// isometric.
pub fn isomer(ty: &CircularType, w: Option<&Witness>) -> Result<FiniteMetricSpace> {
    let n = ty.n;
    if n < 4 {
        return Err(Error::BadN(n));
    }
    ty.check(w)?;
    if n.is_multiple_of(2) && n >= 6 {
        return mutant_even(ty, w).map(|x| x.with_label(format!("isomer_{n}")));
    }
    let d = |s: usize| ty.at(s as u64);
    let x = match n {
        4 => {
            // A_1..A_4 -> 0..3
            let long = [(1, 2), (1, 3)];
            FiniteMetricSpace::from_fn(4, |a, b| Ok(if long.contains(&(a, b)) { d(2) } else { d(1) }))?
        }
        5 => {
            let short = [(1, 2), (1, 3), (1, 4), (2, 3), (2, 4)];
            FiniteMetricSpace::from_fn(5, |a, b| Ok(if short.contains(&(a, b)) { d(1) } else { d(2) }))?
        }
        _ => {
            // A_1..A_p are points 0..p, B_1..B_{p+1} are points p..n
            let (k, p, suffix): (usize, usize, SuffixRule) = if n % 4 == 1 {
                ((n - 1) / 4, (n - 1) / 2, isomer_suffix_4k1)
            } else {
                ((n - 3) / 4, (n - 1) / 2, isomer_suffix_4k3)
            };
            FiniteMetricSpace::from_fn(n, |a, b| {
                Ok(match (a < p, b < p) {
                    (true, true) => d(index_abs(b as i64 - a as i64, p as u64) as usize),
                    (false, false) => d(index_abs(b as i64 - a as i64, (p + 1) as u64) as usize),
                    (true, false) => d(suffix(k, a + 1, b - p + 1)),
                    (false, true) => d(suffix(k, b + 1, a - p + 1)),
                })
            })?
        }
    };
    let x = attach(x.with_label(format!("isomer_{n}")), w).validated()?;
    check_isomer(ty, &x, w)?;
    Ok(x)
}

/// Largest violation of `|lambda - mu| <= |j - i|_{2k+1}` over the table of
/// the `4k + 1` isomer; `None` when the bound holds everywhere.
pub fn lambda_mu_violation(k: usize) -> Option<(usize, usize, usize)> {
    for l in 1..=2 * k {
        for i in 1..=2 * k + 1 {
            for j in 1..=2 * k + 1 {
                let lam = isomer_suffix_4k1(k, l, i) as i64;
                let mu = isomer_suffix_4k1(k, l, j) as i64;
                if (lam - mu).unsigned_abs() > index_abs(j as i64 - i as i64, 2 * k as u64 + 1) {
                    return Some((l, i, j));
                }
            }
        }
    }
    None
}

/// The three trees with edge lengths `a, b, c`: the star with centre point
/// 0, the path `a, b, c` and the path `b, a, c`.
pub fn tree_family(a: &str, b: &str, c: &str, w: Option<&Witness>) -> Result<[FiniteMetricSpace; 3]> {
    if a == b || b == c || a == c {
        return Err(Error::InvalidSpace("symbol names must be distinct".into()));
    }
    let (sa, sb, sc) = (Scalar::symbol(a)?, Scalar::symbol(b)?, Scalar::symbol(c)?);
    let path = |e: [&Scalar; 3]| -> Result<FiniteMetricSpace> {
        FiniteMetricSpace::from_fn(4, |i, j| {
            let mut s = Scalar::zero();
            for x in &e[i..j] {
                s = s.try_add(x)?;
            }
            Ok(s)
        })
    };
    let leaves = [&sa, &sb, &sc];
    let star = FiniteMetricSpace::from_fn(4, |i, j| {
        if i == 0 {
            Ok(leaves[j - 1].clone())
        } else {
            leaves[i - 1].try_add(leaves[j - 1])
        }
    })?;
    let out = [
        star.with_label("star"),
        path([&sa, &sb, &sc])?.with_label(format!("path_{a}{b}{c}")),
        path([&sb, &sa, &sc])?.with_label(format!("path_{b}{a}{c}")),
    ];
    match w {
        Some(w) => {
            let [x, y, z] = out;
            Ok([attach(x, Some(w)).validated()?, attach(y, Some(w)).validated()?, attach(z, Some(w)).validated()?])
        }
        None => Ok(out),
    }
}

/// Parses `cycle`/`polygon` source names.
pub fn named_type(from: &str, n: usize) -> Result<CircularType> {
    match from {
        "cycle" => cycle_type(n),
        "polygon" => polygon_type(n),
        other => Err(Error::UnknownName(other.to_string())),
    }
}

pub fn all_types(n: usize) -> Result<Vec<CircularType>> {
    Ok(vec![cycle_type(n)?, polygon_type(n)?])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::{int, rat};

    #[test]
    fn cycle_rows() {
        let c7 = cycle_graph(7).unwrap();
        let row = c7.row_multiset(0);
        assert_eq!(row.expanded(), [1, 1, 2, 2, 3, 3].map(Scalar::from).to_vec());
        let c4 = cycle_graph(4).unwrap();
        assert_eq!(c4.d(0, 2), &Scalar::from(2));
        assert_eq!(cycle_graph(2).unwrap_err(), Error::BadN(2));
    }

    #[test]
    fn circular_type_checks() {
        let ok = CircularType { n: 4, d: vec![Scalar::from(1), Scalar::from(rat(3, 2))] };
        assert!(circular_space(&ok, None).is_ok());
        let bad = CircularType { n: 4, d: vec![Scalar::from(1), Scalar::from(5)] };
        assert_eq!(circular_space(&bad, None).unwrap_err(), Error::TypeInvalid { i: 1, j: 1 });
        let c7 = circular_space(&cycle_type(7).unwrap(), None).unwrap();
        assert!(are_equal(&c7, &cycle_graph(7).unwrap()));
    }

    fn are_equal(x: &FiniteMetricSpace, y: &FiniteMetricSpace) -> bool {
        x.rows() == y.rows()
    }

    #[test]
    fn restricted() {
        let t = polygon_type(8).unwrap();
        for m in 3..8 {
            assert!(restricted_polygon(&t, m, None).is_ok());
        }
        let tri = restricted_polygon(&t, 3, None).unwrap();
        assert_eq!(tri.edge_multiset().entries(), &[(Scalar::one(), 3)]);
    }

    #[test]
    fn small_mutants_and_isomers() {
        for n in [6, 8] {
            mutant_even(&cycle_type(n).unwrap(), None).unwrap();
            mutant_even(&polygon_type(n).unwrap(), None).unwrap();
        }
        mutant_nonagon().unwrap();
        for n in 4..=11 {
            isomer(&cycle_type(n).unwrap(), None).unwrap();
            isomer(&polygon_type(n).unwrap(), None).unwrap();
        }
    }

    #[test]
    fn isomer_four_is_the_square_with_a_tail() {
        let x = isomer(&cycle_type(4).unwrap(), None).unwrap();
        assert_eq!(x.edge_multiset().entries(), &[(Scalar::from(1), 4), (Scalar::from(2), 2)]);
    }

    #[test]
    fn table_bound() {
        for k in 2..=6 {
            assert_eq!(lambda_mu_violation(k), None);
        }
    }

    #[test]
    fn trees() {
        let w = Witness::new([("a".into(), int(1)), ("b".into(), int(2)), ("c".into(), int(3))]).unwrap();
        let [s, p, r] = tree_family("a", "b", "c", Some(&w)).unwrap();
        let abc = Scalar::symbol("a").unwrap().try_add(&Scalar::symbol("b").unwrap()).unwrap();
        let abc = abc.try_add(&Scalar::symbol("c").unwrap()).unwrap();
        assert_eq!(p.d(0, 3), &abc);
        assert_eq!(s.d(1, 3), &Scalar::symbol("a").unwrap().try_add(&Scalar::symbol("c").unwrap()).unwrap());
        assert!(isometry(&s, &p, 14).unwrap().is_none());
        assert!(isometry(&p, &r, 14).unwrap().is_none());
        assert!(isometry(&s, &r, 14).unwrap().is_none());
    }
}
