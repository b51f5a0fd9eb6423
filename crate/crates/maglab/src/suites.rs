//! Verification suites. Each returns a [`VerdictReport`] whose checks are
//! in a fixed order, independent of the number of worker threads.

use std::time::Instant;

use maglab_core::constructions::{
    all_types, circular_space, cycle_graph, cycle_type, euclidean_fixture, tree_family, isomer,
    lambda_mu_violation, mutant_even, mutant_nonagon, polygon_type, regular_polygon, Fixture,
};
use maglab_core::euclid::{cayley_menger_embeddable, squared_distance_space, squared_entries, Embedding};
use maglab_core::exact::cyclotomic::two_cos;
use maglab_core::exact::rational::rat;
use maglab_core::exact::trig::delta;
use maglab_core::exact::{Scalar, Witness};
use maglab_core::genpoly::{GenPolynomial, GenRational};
use maglab_core::magnitude::{default_threshold, formal_magnitude, path_expansion, similarity_matrix};
use maglab_core::metric::{index_abs, isometry, EdgeMultiset, FiniteMetricSpace};
use maglab_core::planar::{
    enumerate_solutions, expected_solutions, pairs_at, point_pair_distance_squared, triangle_points,
    triangle_vertices, DEFAULT_FSOLVE_CAP,
};
use maglab_core::report::{isomer_report, mutant_report, Check, VerdictReport};
use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{CliError, Result};

pub const SUITES: [&str; 8] = ["series", "oracle", "mutants", "isomers", "fsolve", "planar", "fixtures", "properties"];

pub const DEFAULT_SEED: u64 = 0x6d61_676c_6162;
pub const DEFAULT_CASES: usize = 1000;

#[derive(Clone, Debug)]
pub struct Options {
    pub seed: u64,
    pub cases: usize,
    pub jobs: Option<usize>,
    pub fsolve_range: (usize, usize),
}

impl Default for Options {
    fn default() -> Self {
        Options { seed: DEFAULT_SEED, cases: DEFAULT_CASES, jobs: None, fsolve_range: (6, 30) }
    }
}

pub fn run_suite(name: &str, opts: &Options) -> Result<VerdictReport> {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(j) = opts.jobs {
        builder = builder.num_threads(j);
    }
    let pool = builder.build().map_err(|e| CliError::Input(format!("thread pool: {e}")))?;
    let start = Instant::now();
    let mut r = pool.install(|| match name {
        "series" => series(),
        "oracle" => oracle(),
        "mutants" => mutants(),
        "isomers" => isomers(),
        "fsolve" => fsolve(opts.fsolve_range.0, opts.fsolve_range.1),
        "planar" => planar(),
        "fixtures" => fixtures(),
        "properties" => properties(opts.seed, opts.cases),
        other => Err(maglab_core::Error::UnknownName(format!("suite {other}")).into()),
    })?;
    r.elapsed_ms = Some(start.elapsed().as_millis() as u64);
    Ok(r)
}

fn merge(parts: Vec<Result<VerdictReport>>, subject: &str) -> Result<VerdictReport> {
    let mut r = VerdictReport::new(vec![subject.to_string()]);
    for p in parts {
        let p = p?;
        r.checks.extend(p.checks);
    }
    Ok(r)
}

fn q(e: Scalar, c: i64) -> Result<GenPolynomial> {
    Ok(GenPolynomial::monomial(e, rat(c, 1))?)
}

fn sum_terms(terms: &[(Scalar, i64)]) -> Result<GenPolynomial> {
    let mut p = GenPolynomial::zero();
    for (e, c) in terms {
        p = p.add(&q(e.clone(), *c)?);
    }
    Ok(p)
}

fn add(a: &Scalar, b: &Scalar) -> Result<Scalar> {
    Ok(a.try_add(b)?)
}

/// Series of the formal magnitude and the path sum up to `bound`, checked
/// against each other and against `want` on the listed exponents (or in
/// full when `full` is set).
fn series_case(
    r: &mut VerdictReport,
    name: &str,
    x: &FiniteMetricSpace,
    bound: &Scalar,
    want: &[(Scalar, i64)],
    full: Option<GenPolynomial>,
) -> Result<()> {
    let start = Instant::now();
    let w = x.witness();
    let s = formal_magnitude(x)?.value.series(bound, w)?;
    let p = path_expansion(x, bound)?;
    let ms = start.elapsed().as_millis();
    r.push(Check::new(format!("series.{name}.oracle"), s == p, p.to_text(w)?));
    let shown = want.iter().all(|(e, c)| s.coeff(e) == rat(*c, 1));
    r.push(Check::new(format!("series.{name}.coefficients"), shown, s.to_text(w)?));
    if let Some(f) = full {
        r.push(Check::new(format!("series.{name}.truncation"), s == f, f.to_text(w)?));
    }
    r.push(Check::new(format!("series.{name}.runtime"), ms < 1000, format!("{ms} ms")));
    Ok(())
}

pub fn series() -> Result<VerdictReport> {
    let mut r = VerdictReport::new(vec!["series".into()]);
    let i = |k: i64| Scalar::from(k);
    let c4: Vec<(Scalar, i64)> = vec![(i(0), 4), (i(1), -8), (i(2), 12), (i(3), -16)];
    series_case(&mut r, "C_4", &cycle_graph(4)?, &i(3), &c4, Some(sum_terms(&c4)?))?;
    let c5 = vec![(i(0), 5), (i(1), -10), (i(2), 10)];
    series_case(&mut r, "C_5", &cycle_graph(5)?, &i(2), &c5, Some(sum_terms(&c5)?))?;

    let b = delta(2, 5)?;
    let one = Scalar::one();
    let pent = vec![
        (i(0), 5),
        (one.clone(), -10),
        (b.clone(), -10),
        (i(2), 20),
        (add(&one, &b)?, 40),
        (add(&b, &b)?, 20),
    ];
    // 3 = 1 + 1 + 1 lies below 2b, so the truncation at 2b also carries -40 q^3
    let mut full = sum_terms(&pent)?;
    full = full.add(&q(i(3), -40)?);
    series_case(&mut r, "Delta_5", &regular_polygon(5)?, &add(&b, &b)?, &pent, Some(full))?;

    let (b, d) = (delta(2, 7)?, delta(3, 7)?);
    let hept = vec![
        (i(0), 7),
        (one.clone(), -14),
        (b.clone(), -14),
        (d.clone(), -14),
        (i(2), 28),
        (add(&b, &b)?, 28),
        (add(&d, &d)?, 28),
        (add(&one, &b)?, 56),
        (add(&one, &d)?, 56),
        (add(&b, &d)?, 56),
    ];
    series_case(&mut r, "Delta_7", &regular_polygon(7)?, &add(&d, &d)?, &hept, None)?;
    Ok(r)
}

/// The spaces of the oracle comparison: `C_n` and `Delta_n` for
/// `n = 3..=8`, their mutants and isomers, and the three trees.
pub fn oracle_fixtures() -> Result<Vec<FiniteMetricSpace>> {
    let mut out = Vec::new();
    for n in 3..=8 {
        out.push(cycle_graph(n)?);
        out.push(regular_polygon(n)?);
        for (ty, kind) in all_types(n)?.iter().zip(["cycle", "polygon"]) {
            if n >= 6 && n % 2 == 0 {
                out.push(mutant_even(ty, None)?.with_label(format!("{kind}_{n}.mutant")));
            }
            if n >= 4 {
                out.push(isomer(ty, None)?.with_label(format!("{kind}_{n}.isomer")));
            }
        }
    }
    let w = Witness::new([("a".into(), rat(1, 1)), ("b".into(), rat(2, 1)), ("c".into(), rat(3, 1))])?;
    out.extend(tree_family("a", "b", "c", Some(&w))?);
    Ok(out)
}

pub fn oracle() -> Result<VerdictReport> {
    let spaces = oracle_fixtures()?;
    let parts: Vec<Result<VerdictReport>> = spaces
        .par_iter()
        .map(|x| {
            let name = x.label().unwrap_or("space").to_string();
            let l = default_threshold(x)?;
            let s = formal_magnitude(x)?.value.series(&l, x.witness())?;
            let p = path_expansion(x, &l)?;
            let mut r = VerdictReport::new(vec![name.clone()]);
            r.push(Check::new(format!("oracle.{name}"), s == p, format!("{} terms", p.len())));
            Ok(r)
        })
        .collect();
    let mut r = merge(parts, "oracle")?;
    // the three trees share one formal magnitude
    let trees = &spaces[spaces.len() - 3..];
    let m: Vec<GenRational> = trees.iter().map(|t| Ok(formal_magnitude(t)?.value)).collect::<Result<_>>()?;
    let same = maglab_core::genpoly::gr_equal(&m[0], &m[1])? && maglab_core::genpoly::gr_equal(&m[0], &m[2])?;
    r.push(Check::new("oracle.trees.same_magnitude", same, ""));
    let distinct = trees[1].edge_multiset() != trees[2].edge_multiset();
    r.push(Check::new("oracle.trees.paths_differ_in_edges", distinct, ""));
    Ok(r)
}

pub const MUTANT_SIZES: [usize; 8] = [6, 8, 10, 12, 14, 16, 18, 20];

pub fn mutants() -> Result<VerdictReport> {
    let jobs: Vec<(usize, &str)> =
        MUTANT_SIZES.iter().flat_map(|&n| [(n, "cycle"), (n, "polygon")]).chain([(9, "nonagon")]).collect();
    let parts: Vec<Result<VerdictReport>> = jobs
        .par_iter()
        .map(|&(n, kind)| {
            if kind == "nonagon" {
                let src = regular_polygon(9)?;
                return Ok(mutant_report(&src, &mutant_nonagon()?)?);
            }
            let ty = if kind == "cycle" { cycle_type(n)? } else { polygon_type(n)? };
            let src = circular_space(&ty, None)?.with_label(format!("{kind}_{n}"));
            let m = mutant_even(&ty, None)?.with_label(format!("{kind}_{n}.mutant"));
            Ok(mutant_report(&src, &m)?)
        })
        .collect();
    merge(parts, "mutants")
}

pub fn isomers() -> Result<VerdictReport> {
    let jobs: Vec<(usize, &str)> = (4..=19).flat_map(|n| [(n, "cycle"), (n, "polygon")]).collect();
    let parts: Vec<Result<VerdictReport>> = jobs
        .par_iter()
        .map(|&(n, kind)| {
            let ty = if kind == "cycle" { cycle_type(n)? } else { polygon_type(n)? };
            let src = circular_space(&ty, None)?.with_label(format!("{kind}_{n}"));
            let x = isomer(&ty, None)?.with_label(format!("{kind}_{n}.isomer"));
            Ok(isomer_report(&src, &x)?)
        })
        .collect();
    let mut r = merge(parts, "isomers")?;
    for k in 2..=6 {
        let v = lambda_mu_violation(k);
        r.push(Check::new(format!("isomers.suffix_bound.k{k}"), v.is_none(), format!("{v:?}")));
    }
    Ok(r)
}

pub fn fsolve(lo: usize, hi: usize) -> Result<VerdictReport> {
    let parts: Vec<Result<VerdictReport>> = (lo..=hi)
        .into_par_iter()
        .map(|n| {
            let got = enumerate_solutions(n, DEFAULT_FSOLVE_CAP)?;
            let want = expected_solutions(n);
            let mut r = VerdictReport::new(vec![format!("F_{n}")]);
            r.push(Check::new(format!("fsolve.F_{n}"), got.solutions == want, format!("{:?}", got.solutions)));
            Ok(r)
        })
        .collect();
    merge(parts, "fsolve")
}

pub fn planar() -> Result<VerdictReport> {
    let mut r = VerdictReport::new(vec!["planar".into()]);
    let mut pts: Vec<_> = triangle_vertices()?.into();
    let sol = triangle_points(12, &[1, 2, 3, 4, 5, 6])?;
    r.push(Check::new("planar.n12.solution_points", sol.len() == 12, format!("{}", sol.len())));
    pts.extend(sol);
    let unit = pairs_at(&pts, &Scalar::one())?;
    r.push(Check::new("planar.n12.unit_pairs", pts.len() == 15 && unit.len() == 6, format!("{unit:?}")));

    let d2 = delta(2, 9)?;
    let d4 = delta(4, 9)?;
    let six = triangle_points(9, &[1, 2, 3, 4])?;
    let perms = six.iter().all(|p| {
        let (a, b, c) = p.dist_indices;
        let mut v = [a, b, c];
        v.sort_unstable();
        v == [2, 3, 4]
    });
    r.push(Check::new("planar.n9.points", six.len() == 6 && perms, format!("{}", six.len())));
    let sum = Scalar::one().try_add(&d2)?;
    r.push(Check::new("planar.n9.collinear_relation", sum == d4, "1 + delta_2 = delta_4"));
    let near = d2.try_mul(&d2)?;
    let far = sum.try_mul(&sum)?;
    let (mut n_near, mut n_far) = (0, 0);
    for a in 0..six.len() {
        for b in a + 1..six.len() {
            let s = point_pair_distance_squared(&six[a], &six[b])?;
            n_near += (s == near) as usize;
            n_far += (s == far) as usize;
        }
    }
    r.push(Check::new("planar.n9.pairs_at_delta_2", n_near == 3, format!("{n_near}")));
    r.push(Check::new("planar.n9.pairs_at_1_plus_delta_2", n_far == 3, format!("{n_far}")));
    Ok(r)
}

fn upper(m: &[Vec<Scalar>]) -> EdgeMultiset {
    EdgeMultiset::from_values((0..m.len()).flat_map(|i| (i + 1..m.len()).map(move |j| m[i][j].clone())))
}

fn fixture_points(name: &str) -> Result<Vec<Vec<Scalar>>> {
    match euclidean_fixture(name)? {
        Fixture::Points(p) => Ok(squared_distance_space(&p)?),
        Fixture::Space(x) => Ok(squared_entries(&x)?),
    }
}

pub fn fixtures() -> Result<VerdictReport> {
    let mut r = VerdictReport::new(vec!["fixtures".into()]);
    let sq = fixture_points("square_isomer_r3")?;
    let c4_iso = isomer(&cycle_type(4)?, None)?;
    let d4_iso = isomer(&polygon_type(4)?, None)?;
    r.push(Check::new("fixtures.square_isomer_r3.cycle_isomer_lengths", upper(&sq) == c4_iso.edge_multiset(), ""));
    r.push(Check::new(
        "fixtures.square_isomer_r3.square_isomer_squares",
        upper(&sq) == upper(&squared_entries(&d4_iso)?),
        "",
    ));

    let pent = fixture_points("pentagon_isomer_r4")?;
    let d5_iso = isomer(&polygon_type(5)?, None)?;
    r.push(Check::new("fixtures.pentagon_isomer_r4.squares", upper(&pent) == upper(&squared_entries(&d5_iso)?), ""));

    let hex = fixture_points("hexagon_mutant_r3")?;
    let hx = FiniteMetricSpace::new(hex.clone())?;
    let d6 = FiniteMetricSpace::new(squared_entries(&regular_polygon(6)?)?)?;
    let qh = hx.quasi_homog_type();
    r.push(Check::new("fixtures.hexagon_mutant_r3.row_type", qh.is_some() && qh == d6.quasi_homog_type(), ""));
    r.push(Check::new("fixtures.hexagon_mutant_r3.not_isometric", isometry(&hx, &d6, 14)?.is_none(), ""));
    let e = cayley_menger_embeddable(&hex, 3, None)?;
    r.push(Check::new("fixtures.hexagon_mutant_r3.embeds_in_3", e == Embedding::Embeddable { dim: 3 }, format!("{e:?}")));

    let bad = fixture_points("hexagon_mutant_nonembeddable")?;
    let e = cayley_menger_embeddable(&bad, bad.len(), None)?;
    r.push(Check::new("fixtures.hexagon_mutant_nonembeddable.rejected", e == Embedding::NotEmbeddable, format!("{e:?}")));
    Ok(r)
}

struct Rng(ChaCha8Rng);

impl Rng {
    fn below(&mut self, n: u64) -> u64 {
        self.0.next_u64() % n
    }

    fn range(&mut self, lo: i64, hi: i64) -> i64 {
        lo + self.below((hi - lo + 1) as u64) as i64
    }

    fn rational(&mut self) -> Scalar {
        Scalar::from(rat(self.range(-20, 20), self.range(1, 6)))
    }

    fn cyclotomic(&mut self) -> Result<Scalar> {
        let m = [5u64, 7, 8, 9, 12][self.below(5) as usize];
        let mut s = Scalar::from(rat(self.range(-5, 5), self.range(1, 3)));
        for k in 1..=self.range(1, 3) {
            let t = Scalar::from(two_cos(k, m)?);
            s = s.try_add(&t.scale(&rat(self.range(-5, 5), self.range(1, 3))))?;
        }
        Ok(s)
    }
}

fn property(
    name: &str,
    cases: usize,
    rng: &mut Rng,
    mut f: impl FnMut(&mut Rng) -> Result<Option<String>>,
) -> Result<Check> {
    for k in 0..cases {
        if let Some(msg) = f(rng)? {
            return Ok(Check::new(name, false, format!("case {k}: {msg}")));
        }
    }
    Ok(Check::new(name, true, format!("{cases} cases")))
}

fn field_axioms(x: &Scalar, y: &Scalar, z: &Scalar) -> Result<Option<String>> {
    let ok = x.try_add(y)? == y.try_add(x)?
        && x.try_mul(y)? == y.try_mul(x)?
        && x.try_add(y)?.try_add(z)? == x.try_add(&y.try_add(z)?)?
        && x.try_mul(y)?.try_mul(z)? == x.try_mul(&y.try_mul(z)?)?
        && x.try_mul(&y.try_add(z)?)? == x.try_mul(y)?.try_add(&x.try_mul(z)?)?
        && x.try_sub(x)?.is_zero()
        && (x.is_zero() || x.try_mul(&x.recip()?)? == Scalar::one());
    Ok((!ok).then(|| format!("{} {} {}", x.canonical_text(), y.canonical_text(), z.canonical_text())))
}

pub fn properties(seed: u64, cases: usize) -> Result<VerdictReport> {
    let mut rng = Rng(ChaCha8Rng::seed_from_u64(seed));
    let mut r = VerdictReport::new(vec![format!("properties seed={seed}")]);
    r.push(property("properties.field_axioms.rational", cases, &mut rng, |g| {
        let (x, y, z) = (g.rational(), g.rational(), g.rational());
        field_axioms(&x, &y, &z)
    })?);
    r.push(property("properties.field_axioms.cyclotomic", cases, &mut rng, |g| {
        let (x, y, z) = (g.cyclotomic()?, g.cyclotomic()?, g.cyclotomic()?);
        field_axioms(&x, &y, &z)
    })?);
    r.push(property("properties.sign_multiplicative", cases, &mut rng, |g| {
        let (x, y) = (g.cyclotomic()?, g.cyclotomic()?);
        let ok = x.try_mul(&y)?.sign(None)? == x.sign(None)? * y.sign(None)?;
        Ok((!ok).then(|| format!("{} {}", x.canonical_text(), y.canonical_text())))
    })?);
    r.push(property("properties.index_abs", cases, &mut rng, |g| {
        let (i, j, n) = (g.range(-500, 500), g.range(-500, 500), g.range(1, 60) as u64);
        let a = index_abs(i, n);
        let ok = a <= n / 2
            && a == index_abs(-i, n)
            && a == index_abs(i + n as i64, n)
            && index_abs(i + j, n) <= a + index_abs(j, n);
        Ok((!ok).then(|| format!("i={i} j={j} n={n}")))
    })?);

    let mut strict = None;
    'outer: for n in 3..=30usize {
        let t = polygon_type(n)?;
        if let Err(e) = t.check(None) {
            strict = Some(format!("n={n}: {e}"));
            break;
        }
        for i in 1..=n / 2 {
            for j in 1..=n / 2 {
                let k = index_abs((i + j) as i64, n as u64);
                if k > 0 && t.at(i as u64).try_add(&t.at(j as u64))? <= t.at(k) {
                    strict = Some(format!("n={n} i={i} j={j}"));
                    break 'outer;
                }
            }
        }
    }
    r.push(Check::new("properties.circular_triangle_strict", strict.is_none(), strict.unwrap_or_else(|| "n = 3..30".into())));

    r.push(property("properties.weighting_residual", cases, &mut rng, |g| {
        let n = g.range(1, 5) as usize;
        let x = if g.below(4) == 0 {
            let n = n + 2;
            if g.below(2) == 0 { cycle_graph(n)? } else { regular_polygon(n)? }
        } else {
            // entries in [1, 2] always satisfy the triangle inequality
            let vals: Vec<i64> = (0..n * n).map(|_| g.range(4, 8)).collect();
            FiniteMetricSpace::from_fn(n, |i, j| Ok(Scalar::from(rat(vals[i * n + j], 4))))?.validated()?
        };
        let m = formal_magnitude(&x)?;
        let ok = m.residual_is_zero(&similarity_matrix(&x)?)?;
        Ok((!ok).then(|| format!("{:?}", x.rows())))
    })?);
    Ok(r)
}
