//! Named pass/fail checks, and the mutant, isomer and identification
//! reports assembled from them.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use crate::constructions::{all_types, circular_space, isomer, mutant_even, mutant_nonagon};
use crate::error::Result;
use crate::genpoly::gr_equal;
use crate::magnitude::formal_magnitude;
use crate::metric::{isometry, CircularType, FiniteMetricSpace};
use crate::planar::{enumerate_solutions, expected_solutions};
use crate::riesz::riesz_equal;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    pub witness: String,
}

impl Check {
    pub fn new(name: impl Into<String>, pass: bool, witness: impl Into<String>) -> Self {
        Check { name: name.into(), pass, witness: witness.into() }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct VerdictReport {
    pub subjects: Vec<String>,
    pub checks: Vec<Check>,
    pub elapsed_ms: Option<u64>,
}

impl VerdictReport {
    pub fn new(subjects: Vec<String>) -> Self {
        VerdictReport { subjects, checks: Vec::new(), elapsed_ms: None }
    }

    pub fn push(&mut self, c: Check) {
        self.checks.push(c);
    }

    pub fn extend(&mut self, other: VerdictReport) {
        self.subjects.extend(other.subjects);
        self.checks.extend(other.checks);
    }

    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.pass)
    }
}

fn label(x: &FiniteMetricSpace) -> String {
    x.label().unwrap_or("space").to_string()
}

fn common(src: &FiniteMetricSpace, x: &FiniteMetricSpace, tag: &str, r: &mut VerdictReport) -> Result<()> {
    let v = x.validate_metric()?;
    r.push(Check::new(format!("{tag}.validate_metric"), v.is_ok(), format!("{} triangle violations", v.triangle.len())));
    let iso = isometry(x, src, usize::MAX)?;
    r.push(Check::new(
        format!("{tag}.not_isometric"),
        iso.is_none(),
        iso.map_or_else(|| "no isometry".to_string(), |p| format!("isometry {p:?}")),
    ));
    let same = riesz_equal(x, src)?;
    r.push(Check::new(format!("{tag}.riesz_equal"), same, ""));
    Ok(())
}

/// Checks for a mutant `x` of the circular space `src`.
pub fn mutant_report(src: &FiniteMetricSpace, x: &FiniteMetricSpace) -> Result<VerdictReport> {
    let tag = label(x);
    let mut r = VerdictReport::new(vec![label(src), tag.clone()]);
    let (ta, tb) = (x.quasi_homog_type(), src.quasi_homog_type());
    r.push(Check::new(format!("{tag}.quasi_homog_type"), ta.is_some() && ta == tb, ""));
    common(src, x, &tag, &mut r)?;
    let (ma, mb) = (formal_magnitude(x)?, formal_magnitude(src)?);
    r.push(Check::new(format!("{tag}.gr_equal"), gr_equal(&ma.value, &mb.value)?, ""));
    Ok(r)
}

/// Checks for an isomer `x` of the circular space `src`.
pub fn isomer_report(src: &FiniteMetricSpace, x: &FiniteMetricSpace) -> Result<VerdictReport> {
    let tag = label(x);
    let mut r = VerdictReport::new(vec![label(src), tag.clone()]);
    let diff = x.edge_multiset().diff(&src.edge_multiset());
    r.push(Check::new(format!("{tag}.edge_multiset"), diff.is_empty(), format!("{} differing lengths", diff.len())));
    common(src, x, &tag, &mut r)?;
    Ok(r)
}

fn source(ty: &CircularType, kind: &str) -> Result<FiniteMetricSpace> {
    Ok(circular_space(ty, None)?.with_label(format!("{kind}_{}", ty.n)))
}

/// Machine-checkable facts about the cycle graph and the regular polygon on
/// `n` points: mutants where a construction exists, isomers, and the
/// solutions of `F_n`.
pub fn identification_report(n: usize, cap: usize) -> Result<VerdictReport> {
    let mut r = VerdictReport::new(vec![format!("n = {n}")]);
    let types = all_types(n)?;
    for (ty, kind) in types.iter().zip(["cycle", "polygon"]) {
        let src = source(ty, kind)?;
        if n >= 6 && n.is_multiple_of(2) {
            let m = mutant_even(ty, None)?.with_label(format!("{kind}_{n}.mutant"));
            let mr = mutant_report(&src, &m)?;
            r.push(Check::new(format!("{kind}_{n}.not_identified_by_magnitude"), mr.all_pass(), "mutant"));
            r.extend(mr);
        } else if n == 9 && kind == "polygon" {
            let m = mutant_nonagon()?.with_label("polygon_9.mutant");
            let mr = mutant_report(&src, &m)?;
            r.push(Check::new("polygon_9.not_identified_by_magnitude", mr.all_pass(), "mutant"));
            r.extend(mr);
        } else {
            r.push(Check::new(format!("{kind}_{n}.mutant"), true, "no mutant construction for this n"));
        }
        if n >= 4 {
            let x = isomer(ty, None)?.with_label(format!("{kind}_{n}.isomer"));
            r.extend(isomer_report(&src, &x)?);
        }
    }
    if n >= 6 {
        let s = enumerate_solutions(n, cap)?;
        let want = expected_solutions(n);
        r.push(Check::new(format!("F_{n}.solutions"), s.solutions == want, format!("{:?}", s.solutions)));
    }
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reports() {
        let r = identification_report(8, 60).unwrap();
        assert!(r.all_pass(), "{:?}", r.failures().collect::<Vec<_>>());
        assert!(r.checks.iter().any(|c| c.name == "polygon_8.mutant.gr_equal" && c.pass));
        let r = identification_report(7, 60).unwrap();
        assert!(r.all_pass());
        assert!(r.checks.iter().any(|c| c.name == "F_7.solutions" && c.witness == "[]"));
        assert!(!r.checks.iter().any(|c| c.name.ends_with("mutant.gr_equal")));
        let r = identification_report(9, 60).unwrap();
        assert!(r.all_pass());
        assert!(r.checks.iter().any(|c| c.name == "polygon_9.mutant.not_isometric"));
        assert!(r.checks.iter().any(|c| c.name == "polygon_9.not_identified_by_magnitude"));
        assert!(!r.checks.iter().any(|c| c.name == "cycle_9.not_identified_by_magnitude"));
    }
}
