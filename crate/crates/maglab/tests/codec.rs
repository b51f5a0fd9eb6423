use maglab::codec::{
    parse_scalar, poly_from_json, poly_to_json, scalar_from_json, scalar_to_json, space_from_json, space_to_json,
    to_canonical_string,
};
use maglab_core::constructions::{all_types, cycle_graph, tree_family, isomer, mutant_even, regular_polygon};
use maglab_core::exact::cyclotomic::two_cos;
use maglab_core::exact::rational::rat;
use maglab_core::exact::{Scalar, Witness};
use maglab_core::genpoly::GenPolynomial;
use maglab_core::metric::FiniteMetricSpace;
use proptest::prelude::*;

fn roundtrip(x: &FiniteMetricSpace) {
    let v = space_to_json(x);
    let y = space_from_json(&v).unwrap();
    assert_eq!(x.rows(), y.rows());
    assert_eq!(x.label(), y.label());
    assert_eq!(to_canonical_string(&v), to_canonical_string(&space_to_json(&y)));
}

#[test]
fn constructed_spaces_roundtrip() {
    for n in 3..=10 {
        roundtrip(&cycle_graph(n).unwrap());
        roundtrip(&regular_polygon(n).unwrap());
        for t in all_types(n).unwrap() {
            if n >= 4 {
                roundtrip(&isomer(&t, None).unwrap());
            }
            if n % 2 == 0 && n >= 6 {
                roundtrip(&mutant_even(&t, None).unwrap());
            }
        }
    }
    let w = Witness::new([("a".into(), rat(1, 1)), ("b".into(), rat(2, 1)), ("c".into(), rat(3, 1))]).unwrap();
    for x in tree_family("a", "b", "c", Some(&w)).unwrap() {
        roundtrip(&x);
    }
}

#[test]
fn keys_are_sorted() {
    let s = to_canonical_string(&space_to_json(&regular_polygon(5).unwrap()));
    let (d, l, n) = (s.find("\"dist\"").unwrap(), s.find("\"label\"").unwrap(), s.find("\"n\"").unwrap());
    assert!(d < l && l < n);
}

fn scalar() -> impl Strategy<Value = Scalar> {
    prop_oneof![
        (-50i64..50, 1i64..9).prop_map(|(p, q)| Scalar::from(rat(p, q))),
        (prop::sample::select(vec![5u64, 7, 8, 9, 12, 14]), 1i64..4, -6i64..6, -6i64..6).prop_map(|(m, k, a, b)| {
            let t = Scalar::from(two_cos(k, m).unwrap());
            t.scale(&rat(a, 1)).try_add(&Scalar::from(rat(b, 2))).unwrap()
        }),
        (-4i64..4, -4i64..4).prop_map(|(a, c)| {
            Scalar::symbol("a").unwrap().scale(&rat(a, 1)).try_add(&Scalar::from(c)).unwrap()
        }),
    ]
}

proptest! {
    #[test]
    fn scalars_roundtrip(x in scalar()) {
        let v = scalar_to_json(&x);
        prop_assert_eq!(&scalar_from_json(&v).unwrap(), &x);
        prop_assert_eq!(parse_scalar(&serde_json::to_string(&v).unwrap()).unwrap(), x);
    }

    #[test]
    fn polynomials_roundtrip(cs in proptest::collection::vec((0i64..6, -9i64..9), 0..6)) {
        let mut p = GenPolynomial::zero();
        for (e, c) in cs {
            p = p.add(&GenPolynomial::monomial(Scalar::from(rat(e, 2)), rat(c, 1)).unwrap());
        }
        let v = poly_to_json(&p, None).unwrap();
        prop_assert_eq!(poly_from_json(&v).unwrap(), p);
    }

    #[test]
    fn random_metrics_roundtrip(n in 1usize..6, cells in proptest::collection::vec(4i64..=8, 36)) {
        let x = FiniteMetricSpace::from_fn(n, |i, j| {
            let (a, b) = (i.min(j), i.max(j));
            Ok(Scalar::from(rat(cells[a * 6 + b], 4)))
        }).unwrap().validated().unwrap();
        roundtrip(&x);
    }
}
