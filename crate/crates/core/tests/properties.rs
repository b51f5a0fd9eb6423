use maglab_core::constructions::{cycle_graph, polygon_type, regular_polygon};
use maglab_core::exact::cyclotomic::two_cos;
use maglab_core::exact::rational::rat;
use maglab_core::exact::trig::delta;
use maglab_core::exact::{FormalScalar, Scalar, Witness};
use maglab_core::genpoly::{gr_equal, GenPolynomial, GenRational};
use maglab_core::magnitude::{formal_magnitude, formal_magnitude_elimination, similarity_matrix};
use maglab_core::metric::{index_abs, isometry, FiniteMetricSpace};
use proptest::prelude::*;

fn small_rat() -> impl Strategy<Value = Scalar> {
    (-20i64..=20, 1i64..=6).prop_map(|(p, q)| Scalar::from(rat(p, q)))
}

/// Elements `c_0 + sum_k c_k 2cos(2 pi k / m)` of a real cyclotomic field.
fn cyc(m: u64) -> impl Strategy<Value = Scalar> {
    proptest::collection::vec((-5i64..=5, 1i64..=3), 1..4).prop_map(move |cs| {
        let mut s = Scalar::zero();
        for (k, (p, q)) in cs.into_iter().enumerate() {
            let t = if k == 0 { Scalar::one() } else { Scalar::from(two_cos(k as i64, m).unwrap()) };
            s = s.try_add(&t.scale(&rat(p, q))).unwrap();
        }
        s
    })
}

fn any_cyc() -> impl Strategy<Value = Scalar> {
    prop_oneof![cyc(5), cyc(8), cyc(12)]
}

fn formal() -> impl Strategy<Value = Scalar> {
    (small_rat(), -3i64..=3, -3i64..=3).prop_map(|(c, a, b)| {
        let c = c.as_rational().unwrap();
        Scalar::from(FormalScalar::new(c, [("a".to_string(), rat(a, 1)), ("b".to_string(), rat(b, 1))]).unwrap())
    })
}

proptest! {
    #[test]
    fn rational_field_axioms(x in small_rat(), y in small_rat(), z in small_rat()) {
        field_axioms(&x, &y, &z)?;
    }

    #[test]
    fn cyclotomic_field_axioms(x in any_cyc(), y in any_cyc(), z in any_cyc()) {
        field_axioms(&x, &y, &z)?;
    }

    #[test]
    fn formal_module_axioms(x in formal(), y in formal(), z in formal(), r in small_rat()) {
        prop_assert_eq!(x.try_add(&y).unwrap(), y.try_add(&x).unwrap());
        prop_assert_eq!(x.try_add(&y).unwrap().try_add(&z).unwrap(), x.try_add(&y.try_add(&z).unwrap()).unwrap());
        prop_assert!(x.try_sub(&x).unwrap().is_zero());
        prop_assert_eq!(x.try_add(&y).unwrap().try_mul(&r).unwrap(), x.try_mul(&r).unwrap().try_add(&y.try_mul(&r).unwrap()).unwrap());
    }

    #[test]
    fn sign_is_multiplicative(x in any_cyc(), y in any_cyc()) {
        let xy = x.try_mul(&y).unwrap();
        prop_assert_eq!(xy.sign(None).unwrap(), x.sign(None).unwrap() * y.sign(None).unwrap());
    }

    #[test]
    fn order_matches_sign_of_difference(x in any_cyc(), y in any_cyc()) {
        let s = y.try_sub(&x).unwrap().sign(None).unwrap();
        prop_assert_eq!(x.cmp(&y), 0.cmp(&s));
    }

    #[test]
    fn index_abs_identities(i in -200i64..200, j in -200i64..200, n in 1u64..40) {
        let a = index_abs(i, n);
        prop_assert!(a <= n / 2);
        prop_assert_eq!(a, index_abs(-i, n));
        prop_assert_eq!(a, index_abs(i + n as i64, n));
        prop_assert!(index_abs(i + j, n) <= a + index_abs(j, n));
    }

    #[test]
    fn isometry_of_a_relabelled_space(n in 3usize..9, seed in any::<u64>(), which in 0usize..2) {
        let x = if which == 0 { cycle_graph(n).unwrap() } else { regular_polygon(n).unwrap() };
        let mut perm: Vec<usize> = (0..n).collect();
        let mut s = seed;
        for i in (1..n).rev() {
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            perm.swap(i, (s >> 33) as usize % (i + 1));
        }
        let y = FiniteMetricSpace::from_fn(n, |i, j| Ok(x.d(perm[i], perm[j]).clone())).unwrap();
        let p = isometry(&y, &x, 16).unwrap().expect("relabelled copy is isometric");
        for i in 0..n {
            for j in 0..n {
                prop_assert_eq!(y.d(i, j), x.d(p[i], p[j]));
            }
        }
        prop_assert!(isometry(&x, &x, 16).unwrap().is_some());
        prop_assert!(isometry(&x, &y, 16).unwrap().is_some());
    }

    #[test]
    fn weighting_residual_vanishes(n in 2usize..6, cells in proptest::collection::vec((1i64..=4, 1i64..=4), 25)) {
        // entries in [1, 2] always form a metric
        let x = FiniteMetricSpace::from_fn(n, |i, j| {
            let (p, q) = cells[i * 5 + j];
            Ok(Scalar::from(rat(4 + p.min(q) , 4)))
        }).unwrap().validated().unwrap();
        let z = similarity_matrix(&x).unwrap();
        let m = formal_magnitude(&x).unwrap();
        prop_assert!(m.residual_is_zero(&z).unwrap());
        let e = formal_magnitude_elimination(&x, 12).unwrap();
        prop_assert!(e.residual_is_zero(&z).unwrap());
        prop_assert!(gr_equal(&m.value, &e.value).unwrap());
    }

    #[test]
    fn gr_equal_is_invariant_under_common_factors(a in 1i64..5, b in 1i64..5, c in -3i64..4, e in 1i64..4) {
        let q = |k: i64, c: i64| GenPolynomial::monomial(Scalar::from(k), rat(c, 1)).unwrap();
        let num = q(0, a).add(&q(e, c));
        let den = q(0, 1).add(&q(1, b));
        let f = q(0, 1).add(&q(e, c));
        let r1 = GenRational::new(num.clone(), den.clone()).unwrap();
        let r2 = GenRational::new(num.mul(&f).unwrap(), den.mul(&f).unwrap()).unwrap();
        prop_assert!(gr_equal(&r1, &r2).unwrap());
        prop_assert!(gr_equal(&r2, &r1).unwrap());
        let shifted = GenRational::new(num.add(&q(0, 1)), den).unwrap();
        prop_assert!(!gr_equal(&r1, &shifted).unwrap());
    }

    #[test]
    fn series_times_denominator_recovers_numerator(a in 1i64..5, b in -4i64..5, l in 1i64..8) {
        let s3 = Scalar::from(two_cos(1, 12).unwrap());
        let num = GenPolynomial::constant(rat(a, 1));
        let den = GenPolynomial::one()
            .add(&GenPolynomial::monomial(Scalar::one(), rat(b, 1)).unwrap())
            .add(&GenPolynomial::monomial(s3, rat(1, 1)).unwrap());
        let r = GenRational::new(num.clone(), den.clone()).unwrap();
        let bound = Scalar::from(l);
        let s = r.series(&bound, None).unwrap();
        let back = s.mul(&den).unwrap().sub(&num);
        let lb = maglab_core::genpoly::Exponent::new(bound);
        prop_assert!(back.truncate(&lb, None).unwrap().is_zero());
    }
}

fn field_axioms(x: &Scalar, y: &Scalar, z: &Scalar) -> Result<(), TestCaseError> {
    prop_assert_eq!(x.try_add(y).unwrap(), y.try_add(x).unwrap());
    prop_assert_eq!(x.try_mul(y).unwrap(), y.try_mul(x).unwrap());
    prop_assert_eq!(x.try_add(y).unwrap().try_add(z).unwrap(), x.try_add(&y.try_add(z).unwrap()).unwrap());
    prop_assert_eq!(x.try_mul(y).unwrap().try_mul(z).unwrap(), x.try_mul(&y.try_mul(z).unwrap()).unwrap());
    let lhs = x.try_mul(&y.try_add(z).unwrap()).unwrap();
    let rhs = x.try_mul(y).unwrap().try_add(&x.try_mul(z).unwrap()).unwrap();
    prop_assert_eq!(lhs, rhs);
    prop_assert!(x.try_sub(x).unwrap().is_zero());
    if !x.is_zero() {
        prop_assert_eq!(x.try_mul(&x.recip().unwrap()).unwrap(), Scalar::one());
        prop_assert_eq!(y.try_div(x).unwrap().try_mul(x).unwrap(), y.clone());
    }
    Ok(())
}

#[test]
fn diagonal_sum_rule_for_multiples_of_three() {
    for k in 2..=10i64 {
        let n = 3 * k as u64;
        for j in 1..=k / 2 {
            let lhs = delta(j, n).unwrap().try_add(&delta(k - j, n).unwrap()).unwrap();
            assert_eq!(lhs, delta(k + j, n).unwrap(), "n = {n}, j = {j}");
        }
    }
}

#[test]
fn polygon_types_are_strict_up_to_30() {
    for n in 3..=30 {
        let t = polygon_type(n).unwrap();
        t.check(None).unwrap();
        for i in 1..t.d.len() {
            assert!(t.d[i - 1] < t.d[i]);
        }
        // strictness of d_i + d_j > d_{|i+j|_n} away from the degenerate cases
        for i in 1..=n / 2 {
            for j in 1..=n / 2 {
                let s = t.at(i as u64).try_add(&t.at(j as u64)).unwrap();
                let r = index_abs((i + j) as i64, n as u64);
                if r > 0 {
                    assert!(s > t.at(r), "n = {n}, i = {i}, j = {j}");
                }
            }
        }
    }
}

#[test]
fn witnessed_formal_order() {
    let w = Witness::new([("a".to_string(), rat(1, 1)), ("b".to_string(), rat(2, 1))]).unwrap();
    let a = Scalar::symbol("a").unwrap();
    let b = Scalar::symbol("b").unwrap();
    assert_eq!(a.numeric_cmp(&b, Some(&w)).unwrap(), std::cmp::Ordering::Less);
    assert!(a.sign(None).is_err());
}
