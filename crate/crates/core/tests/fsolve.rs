use maglab_core::planar::{enumerate_solutions, expected_solutions, DEFAULT_FSOLVE_CAP};

#[test]
fn solution_sets_from_6_to_30() {
    for n in 6..=30 {
        let got = enumerate_solutions(n, DEFAULT_FSOLVE_CAP).unwrap();
        assert_eq!(got.solutions, expected_solutions(n), "n = {n}");
    }
}
