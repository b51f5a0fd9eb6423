//! Finite metric spaces with exact distances.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;

use crate::error::{Error, Result};
use crate::exact::{Backend, Scalar, Witness};

pub const DEFAULT_ISOMETRY_CAP: usize = 14;
pub const DEFAULT_CIRCULAR_CAP: usize = 16;

/// `min_l |i - l n|`.
pub fn index_abs(i: i64, n: u64) -> u64 {
    let r = i.rem_euclid(n as i64) as u64;
    r.min(n - r)
}

/// A multiset of scalars, kept as sorted `(value, multiplicity)` pairs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgeMultiset {
    entries: Vec<(Scalar, usize)>,
}

impl EdgeMultiset {
    pub fn from_values(values: impl IntoIterator<Item = Scalar>) -> Self {
        let mut v: Vec<Scalar> = values.into_iter().collect();
        v.sort();
        let mut entries: Vec<(Scalar, usize)> = Vec::new();
        for x in v {
            match entries.last_mut() {
                Some((y, c)) if *y == x => *c += 1,
                _ => entries.push((x, 1)),
            }
        }
        EdgeMultiset { entries }
    }

    pub fn entries(&self) -> &[(Scalar, usize)] {
        &self.entries
    }

    pub fn total(&self) -> usize {
        self.entries.iter().map(|(_, c)| c).sum()
    }

    /// Every element repeated by its multiplicity, in sorted order.
    pub fn expanded(&self) -> Vec<Scalar> {
        self.entries.iter().flat_map(|(x, c)| core::iter::repeat_n(x.clone(), *c)).collect()
    }

    /// Values whose multiplicities differ, with `(count in self, count in other)`.
    pub fn diff(&self, other: &EdgeMultiset) -> Vec<(Scalar, usize, usize)> {
        let mut out = Vec::new();
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.entries, &other.entries);
        while i < a.len() || j < b.len() {
            let ord = match (a.get(i), b.get(j)) {
                (Some(x), Some(y)) => x.0.cmp(&y.0),
                (Some(_), None) => Ordering::Less,
                _ => Ordering::Greater,
            };
            match ord {
                Ordering::Less => {
                    out.push((a[i].0.clone(), a[i].1, 0));
                    i += 1;
                }
                Ordering::Greater => {
                    out.push((b[j].0.clone(), 0, b[j].1));
                    j += 1;
                }
                Ordering::Equal => {
                    if a[i].1 != b[j].1 {
                        out.push((a[i].0.clone(), a[i].1, b[j].1));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out
    }
}

/// The circular type `(d_1, ..., d_{n/2})` of a circular space.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CircularType {
    pub n: usize,
    pub d: Vec<Scalar>,
}

impl CircularType {
    /// Distance at circular index `k` (`1 <= k <= n/2`), `0` at `k = 0`.
    pub fn at(&self, k: u64) -> Scalar {
        if k == 0 {
            Scalar::zero()
        } else {
            self.d[k as usize - 1].clone()
        }
    }

    /// Checks `0 < d_1 < ... < d_{n/2}` and the circular triangle inequality
    /// `d_{|i|} + d_{|j|} >= d_{|i+j|}`.
    pub fn check(&self, w: Option<&Witness>) -> Result<()> {
        let n = self.n;
        if n < 2 || self.d.len() != n / 2 {
            return Err(Error::BadN(n));
        }
        if self.d[0].sign(w)? <= 0 {
            return Err(Error::TypeNotIncreasing(0));
        }
        for p in 1..self.d.len() {
            if self.d[p].numeric_cmp(&self.d[p - 1], w)? != Ordering::Greater {
                return Err(Error::TypeNotIncreasing(p));
            }
        }
        for i in 1..=(n / 2) as i64 {
            for j in i..=(n / 2) as i64 {
                let lhs = self.at(index_abs(i, n as u64)).try_add(&self.at(index_abs(j, n as u64)))?;
                let rhs = self.at(index_abs(i + j, n as u64));
                if lhs.numeric_cmp(&rhs, w)? == Ordering::Less {
                    return Err(Error::TypeInvalid { i, j });
                }
            }
        }
        Ok(())
    }
}

/// All violations found by [`FiniteMetricSpace::validate_metric`].
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct MetricReport {
    /// `(i, j, k)` with `i < k` and `d(i,k) > d(i,j) + d(j,k)`.
    pub triangle: Vec<(usize, usize, usize)>,
    pub asymmetric: Vec<(usize, usize)>,
    pub nonzero_diagonal: Vec<usize>,
    pub nonpositive: Vec<(usize, usize)>,
}

impl MetricReport {
    pub fn is_ok(&self) -> bool {
        self.triangle.is_empty()
            && self.asymmetric.is_empty()
            && self.nonzero_diagonal.is_empty()
            && self.nonpositive.is_empty()
    }
}

#[derive(Clone, Debug)]
pub struct FiniteMetricSpace {
    n: usize,
    dist: Vec<Scalar>,
    label: Option<String>,
    witness: Option<Witness>,
    /// distinct distance values in ascending canonical order
    classes: Vec<Scalar>,
    ids: Vec<u32>,
    validated: bool,
}

impl FiniteMetricSpace {
    /// A space from a full distance matrix. Only the shape is checked here;
    /// see [`validate_metric`](Self::validate_metric) for the axioms.
    pub fn new(dist: Vec<Vec<Scalar>>) -> Result<Self> {
        let n = dist.len();
        if n == 0 {
            return Err(Error::InvalidSpace("a space needs at least one point".into()));
        }
        if let Some(r) = dist.iter().position(|row| row.len() != n) {
            return Err(Error::InvalidSpace(format!("row {r} has the wrong length")));
        }
        let flat: Vec<Scalar> = dist.into_iter().flatten().collect();
        let mut classes = flat.clone();
        classes.sort();
        classes.dedup();
        let ids = flat.iter().map(|x| classes.binary_search(x).unwrap() as u32).collect();
        Ok(FiniteMetricSpace { n, dist: flat, label: None, witness: None, classes, ids, validated: false })
    }

    /// A symmetric space from `d(i, j)` for `i < j`.
    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> Result<Scalar>) -> Result<Self> {
        let mut m = vec![vec![Scalar::zero(); n]; n];
        for i in 0..n {
            for j in i + 1..n {
                let d = f(i, j)?;
                m[j][i] = d.clone();
                m[i][j] = d;
            }
        }
        FiniteMetricSpace::new(m)
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = Some(label.into());
        self
    }

    pub fn with_witness(mut self, w: Witness) -> Self {
        self.witness = Some(w);
        self.validated = false;
        self
    }

    /// Runs [`validate_metric`](Self::validate_metric) and fails on any violation.
    pub fn validated(mut self) -> Result<Self> {
        let r = self.validate_metric()?;
        if !r.is_ok() {
            return Err(Error::MetricViolation(format!("{r:?}")));
        }
        self.validated = true;
        Ok(self)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn label(&self) -> Option<&str> {
        self.label.as_deref()
    }

    pub fn witness(&self) -> Option<&Witness> {
        self.witness.as_ref()
    }

    pub fn is_validated(&self) -> bool {
        self.validated
    }

    pub fn d(&self, i: usize, j: usize) -> &Scalar {
        &self.dist[i * self.n + j]
    }

    pub fn rows(&self) -> Vec<Vec<Scalar>> {
        self.dist.chunks(self.n).map(|r| r.to_vec()).collect()
    }

    /// Distinct distances (including `0` on the diagonal), ascending.
    pub fn classes(&self) -> &[Scalar] {
        &self.classes
    }

    pub fn class_id(&self, i: usize, j: usize) -> u32 {
        self.ids[i * self.n + j]
    }

    /// Backend shared by all distances (rational if all are rational).
    pub fn backend(&self) -> Result<Backend> {
        let mut b = Backend::Rational;
        for c in &self.classes {
            match (b, c.backend()) {
                (_, Backend::Rational) => {}
                (Backend::Rational, x) => b = x,
                (x, y) if x == y => {}
                _ => return Err(Error::IncompatibleBackends("cyclotomic and formal")),
            }
        }
        Ok(b)
    }

    pub fn max_distance(&self) -> Result<Scalar> {
        let w = self.witness();
        let mut best = Scalar::zero();
        for c in &self.classes {
            if c.numeric_cmp(&best, w)? == Ordering::Greater {
                best = c.clone();
            }
        }
        Ok(best)
    }

    /// Checks symmetry, zero diagonal, positivity and every triangle
    /// inequality, reporting all violations.
    pub fn validate_metric(&self) -> Result<MetricReport> {
        let n = self.n;
        let w = self.witness();
        let mut rep = MetricReport::default();
        let mut signs: Vec<Option<i8>> = vec![None; self.classes.len()];
        let mut sign_of = |c: u32| -> Result<i8> {
            if let Some(s) = signs[c as usize] {
                return Ok(s);
            }
            let s = self.classes[c as usize].sign(w)?;
            signs[c as usize] = Some(s);
            Ok(s)
        };
        for i in 0..n {
            if sign_of(self.class_id(i, i))? != 0 {
                rep.nonzero_diagonal.push(i);
            }
            for j in i + 1..n {
                if self.class_id(i, j) != self.class_id(j, i) {
                    rep.asymmetric.push((i, j));
                }
                if sign_of(self.class_id(i, j))? <= 0 {
                    rep.nonpositive.push((i, j));
                }
            }
        }
        // d(i,k) <= d(i,j) + d(j,k), decided once per class triple
        let mut memo: BTreeMap<(u32, u32, u32), bool> = BTreeMap::new();
        let mut holds = |a: u32, b: u32, c: u32| -> Result<bool> {
            let key = if a <= b { (a, b, c) } else { (b, a, c) };
            if let Some(&r) = memo.get(&key) {
                return Ok(r);
            }
            let s = self.classes[a as usize].try_add(&self.classes[b as usize])?;
            let r = s.numeric_cmp(&self.classes[c as usize], w)? != Ordering::Less;
            memo.insert(key, r);
            Ok(r)
        };
        for i in 0..n {
            for k in i + 1..n {
                for j in 0..n {
                    if j == i || j == k {
                        continue;
                    }
                    if !holds(self.class_id(i, j), self.class_id(j, k), self.class_id(i, k))? {
                        rep.triangle.push((i, j, k));
                    }
                }
            }
        }
        Ok(rep)
    }

    fn row_counts(&self, i: usize) -> Vec<u32> {
        let mut v: Vec<u32> = (0..self.n).filter(|&j| j != i).map(|j| self.class_id(i, j)).collect();
        v.sort_unstable();
        v
    }

    pub fn row_multiset(&self, i: usize) -> EdgeMultiset {
        self.multiset_of_ids(self.row_counts(i))
    }

    pub fn edge_multiset(&self) -> EdgeMultiset {
        let mut v = Vec::new();
        for i in 0..self.n {
            for j in i + 1..self.n {
                v.push(self.class_id(i, j));
            }
        }
        v.sort_unstable();
        self.multiset_of_ids(v)
    }

    fn multiset_of_ids(&self, sorted: Vec<u32>) -> EdgeMultiset {
        let mut entries: Vec<(Scalar, usize)> = Vec::new();
        let mut last = None;
        for c in sorted {
            if last == Some(c) {
                entries.last_mut().unwrap().1 += 1;
            } else {
                entries.push((self.classes[c as usize].clone(), 1));
                last = Some(c);
            }
        }
        EdgeMultiset { entries }
    }

    /// The common row multiset when all rows agree.
    pub fn quasi_homog_type(&self) -> Option<EdgeMultiset> {
        let r0 = self.row_counts(0);
        (1..self.n).all(|i| self.row_counts(i) == r0).then(|| self.multiset_of_ids(r0))
    }

    /// A circular type and a relabelling `pos -> point` under which the
    /// distance matrix is `d_{|j-i|_n}`; `None` when no such labelling exists.
    pub fn circular_labelling(&self, cap: usize) -> Result<Option<(CircularType, Vec<usize>)>> {
        let n = self.n;
        if n > cap {
            return Err(Error::TooLarge { n, cap });
        }
        if n == 1 {
            return Ok(Some((CircularType { n, d: Vec::new() }, vec![0])));
        }
        let Some(row) = self.quasi_homog_type() else { return Ok(None) };
        let w = self.witness();
        let mut vals: Vec<(Scalar, usize)> = row.entries.clone();
        let mut err = None;
        vals.sort_by(|a, b| {
            a.0.numeric_cmp(&b.0, w).unwrap_or_else(|e| {
                err = Some(e);
                Ordering::Equal
            })
        });
        if let Some(e) = err {
            return Err(e);
        }
        let half = n / 2;
        if vals.len() != half {
            return Ok(None);
        }
        for (p, (x, c)) in vals.iter().enumerate() {
            let want = if n.is_multiple_of(2) && p + 1 == half { 1 } else { 2 };
            if *c != want || x.sign(w)? <= 0 {
                return Ok(None);
            }
            if p > 0 && vals[p - 1].0.numeric_cmp(x, w)? != Ordering::Less {
                return Ok(None);
            }
        }
        let ty = CircularType { n, d: vals.into_iter().map(|(x, _)| x).collect() };
        // class id of each circular index
        let mut idx_class = vec![0u32; half + 1];
        for k in 1..=half {
            idx_class[k] = self.classes.binary_search(&ty.d[k - 1]).unwrap() as u32;
        }
        let mut pos = vec![0usize];
        let mut used = vec![false; n];
        used[0] = true;
        if self.extend_circular(&mut pos, &mut used, &idx_class) {
            Ok(Some((ty, pos)))
        } else {
            Ok(None)
        }
    }

    fn extend_circular(&self, pos: &mut Vec<usize>, used: &mut [bool], idx_class: &[u32]) -> bool {
        let n = self.n;
        let p = pos.len();
        if p == n {
            return true;
        }
        for cand in 0..n {
            if used[cand] {
                continue;
            }
            let ok = pos
                .iter()
                .enumerate()
                .all(|(q, &pt)| self.class_id(pt, cand) == idx_class[index_abs((p - q) as i64, n as u64) as usize]);
            if ok {
                used[cand] = true;
                pos.push(cand);
                if self.extend_circular(pos, used, idx_class) {
                    return true;
                }
                pos.pop();
                used[cand] = false;
            }
        }
        false
    }

    pub fn circular_type(&self) -> Result<Option<CircularType>> {
        Ok(self.circular_labelling(DEFAULT_CIRCULAR_CAP)?.map(|(t, _)| t))
    }
}

/// The lexicographically least bijection `p` with `d_X(i,j) = d_Y(p_i,p_j)`,
/// if one exists.
pub fn isometry(x: &FiniteMetricSpace, y: &FiniteMetricSpace, cap: usize) -> Result<Option<Vec<usize>>> {
    let n = x.n;
    if n > cap || y.n > cap {
        return Err(Error::TooLarge { n: n.max(y.n), cap });
    }
    if n != y.n {
        return Ok(None);
    }
    // translate Y's classes into X's numbering
    let mut ymap = Vec::with_capacity(y.classes.len());
    for c in &y.classes {
        match x.classes.binary_search(c) {
            Ok(k) => ymap.push(k as u32),
            Err(_) => return Ok(None),
        }
    }
    let yid = |i: usize, j: usize| ymap[y.class_id(i, j) as usize];
    let sig_y: Vec<Vec<u32>> = (0..n)
        .map(|i| {
            let mut v: Vec<u32> = (0..n).map(|j| yid(i, j)).collect();
            v.sort_unstable();
            v
        })
        .collect();
    let sig_x: Vec<Vec<u32>> = (0..n)
        .map(|i| {
            let mut v: Vec<u32> = (0..n).map(|j| x.class_id(i, j)).collect();
            v.sort_unstable();
            v
        })
        .collect();
    let mut sx = sig_x.clone();
    let mut sy = sig_y.clone();
    sx.sort();
    sy.sort();
    if sx != sy {
        return Ok(None);
    }
    let mut perm = Vec::with_capacity(n);
    let mut used = vec![false; n];
    fn go(
        x: &FiniteMetricSpace,
        yid: &dyn Fn(usize, usize) -> u32,
        sig_x: &[Vec<u32>],
        sig_y: &[Vec<u32>],
        perm: &mut Vec<usize>,
        used: &mut [bool],
    ) -> bool {
        let i = perm.len();
        if i == x.n {
            return true;
        }
        for cand in 0..x.n {
            if used[cand] || sig_x[i] != sig_y[cand] {
                continue;
            }
            if perm.iter().enumerate().all(|(k, &pk)| x.class_id(k, i) == yid(pk, cand)) {
                used[cand] = true;
                perm.push(cand);
                if go(x, yid, sig_x, sig_y, perm, used) {
                    return true;
                }
                perm.pop();
                used[cand] = false;
            }
        }
        false
    }
    Ok(go(x, &yid, &sig_x, &sig_y, &mut perm, &mut used).then_some(perm))
}

pub fn are_isometric(x: &FiniteMetricSpace, y: &FiniteMetricSpace) -> Result<bool> {
    Ok(isometry(x, y, DEFAULT_ISOMETRY_CAP)?.is_some())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::int;

    fn rat_space(m: &[&[i64]]) -> FiniteMetricSpace {
        FiniteMetricSpace::new(m.iter().map(|r| r.iter().map(|&x| Scalar::from(x)).collect()).collect()).unwrap()
    }

    #[test]
    fn index_abs_values() {
        assert_eq!(index_abs(0, 7), 0);
        assert_eq!(index_abs(11, 8), 3);
        assert_eq!(index_abs(-5, 7), 2);
        assert_eq!(index_abs(5, 7), 2);
    }

    #[test]
    fn reports_every_violation() {
        // 0-based version of d12=d13=1, d23=3, others 1
        let x = rat_space(&[&[0, 1, 1, 1], &[1, 0, 3, 1], &[1, 3, 0, 1], &[1, 1, 1, 0]]);
        let r = x.validate_metric().unwrap();
        assert_eq!(r.triangle, vec![(1, 0, 2), (1, 3, 2)]);
        assert!(x.validated().is_err());
    }

    #[test]
    fn rejects_empty() {
        assert!(FiniteMetricSpace::new(vec![]).is_err());
        let p = rat_space(&[&[0]]);
        assert_eq!(p.edge_multiset().total(), 0);
        assert!(p.validate_metric().unwrap().is_ok());
    }

    #[test]
    fn cycle_four_multisets() {
        let c4 = FiniteMetricSpace::from_fn(4, |i, j| Ok(Scalar::from(index_abs(j as i64 - i as i64, 4) as i64)))
            .unwrap();
        let e = c4.edge_multiset();
        assert_eq!(e.entries(), &[(Scalar::from(1), 4), (Scalar::from(2), 2)]);
        let t = c4.circular_type().unwrap().unwrap();
        assert_eq!(t.d, vec![Scalar::from(1), Scalar::from(2)]);
        assert_eq!(int(2), t.d[1].as_rational().unwrap());
    }

    #[test]
    fn isometry_of_relabelled_space() {
        let c5 = FiniteMetricSpace::from_fn(5, |i, j| Ok(Scalar::from(index_abs(j as i64 - i as i64, 5) as i64)))
            .unwrap();
        let perm = [3usize, 0, 4, 1, 2];
        let y = FiniteMetricSpace::from_fn(5, |i, j| Ok(c5.d(perm[i], perm[j]).clone())).unwrap();
        let p = isometry(&y, &c5, 14).unwrap().unwrap();
        for i in 0..5 {
            for j in 0..5 {
                assert_eq!(y.d(i, j), c5.d(p[i], p[j]));
            }
        }
        assert_eq!(p[0], 0);
        let (_, lab) = y.circular_labelling(16).unwrap().unwrap();
        assert_eq!(lab[0], 0);
    }

    #[test]
    fn multiset_diff() {
        let a = EdgeMultiset::from_values([Scalar::from(1), Scalar::from(1), Scalar::from(2)]);
        let b = EdgeMultiset::from_values([Scalar::from(1), Scalar::from(3)]);
        assert_eq!(
            a.diff(&b),
            vec![(Scalar::from(1), 2, 1), (Scalar::from(2), 1, 0), (Scalar::from(3), 0, 1)]
        );
    }
}
