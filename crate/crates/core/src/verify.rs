//! Every explicit identity re-run for a single parameter triple, as one
//! pass-list. Identity failures become failing lines carrying the residual;
//! operational errors abort the run.

use num_traits::One;
use serde::Serialize;
use thiserror::Error;

use crate::derivation::{apply_D, l_form, DerivationError};
use crate::hypergeom::{formal_checks, leading_terms, numeric_checks, HypergeomError, SamplePlan};
use crate::ideals::{certify_case_one, kappa, kappa_report, principal_generators, principal_stability, IdealError, Verdict};
use crate::multiplicity::{ord_at_zero, MultiplicityError};
use crate::params::TriangleParams;
use crate::rational::{format_rational, rat, Q};
use crate::ring::{AffinePoly, VarSet, Y0, Y1, Y2};

#[derive(Debug, Error)]
pub enum VerifyError {
    #[error(transparent)]
    Derivation(#[from] DerivationError),
    #[error(transparent)]
    Hypergeom(#[from] HypergeomError),
    #[error(transparent)]
    Ideal(#[from] IdealError),
    #[error(transparent)]
    Multiplicity(#[from] MultiplicityError),
}

#[derive(Debug, Clone, Serialize)]
pub struct VerifyLine {
    pub suite: &'static str,
    pub check: String,
    pub pass: bool,
    /// residual or observed value when the check fails
    #[serde(skip_serializing_if = "String::is_empty")]
    pub detail: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct VerifyReport {
    pub params: String,
    pub order: usize,
    pub passed: usize,
    pub failed: usize,
    pub all_pass: bool,
    pub lines: Vec<VerifyLine>,
}

struct Lines(Vec<VerifyLine>);

impl Lines {
    fn push(&mut self, suite: &'static str, check: impl Into<String>, pass: bool, detail: impl FnOnce() -> String) {
        let detail = if pass { String::new() } else { detail() };
        self.0.push(VerifyLine { suite, check: check.into(), pass, detail });
    }

    fn equal(&mut self, suite: &'static str, check: impl Into<String>, got: &AffinePoly, want: &AffinePoly) {
        self.push(suite, check, got == want, || format!("difference {}", got - want));
    }
}

fn var(i: usize) -> AffinePoly {
    AffinePoly::var(VarSet::Affine, i)
}

fn derivation_suite(params: &TriangleParams, out: &mut Lines) -> Result<(), VerifyError> {
    let k = params.derived_constants();
    let w = AffinePoly::constant(VarSet::Affine, k.w.clone());
    let l = l_form(&k);
    out.equal("derivation", "D(tau) = w", &apply_D(&var(0), params)?, &w);
    out.equal("derivation", "D(q) = w q", &apply_D(&var(1), params)?, &(&w * &var(1)));
    for i in 0..3 {
        let y = var(Y0 + i);
        out.equal("derivation", format!("D(y{i}) = y{i}^2 - L"), &apply_D(&y, params)?, &(&y.pow(2) - &l));
    }
    for (i, j) in [(0, 1), (0, 2), (1, 2)] {
        let (yi, yj) = (var(Y0 + i), var(Y0 + j));
        let d = &yi - &yj;
        let want = &d * &(&yi + &yj);
        out.equal("derivation", format!("D(y{i} - y{j}) = (y{i} - y{j})(y{i} + y{j})"), &apply_D(&d, params)?, &want);
    }
    Ok(())
}

fn ideal_suite(params: &TriangleParams, out: &mut Lines) -> Result<(), VerifyError> {
    match certify_case_one(params) {
        Ok(_) => {
            out.push("resultant", "K equals the displayed cubic", true, String::new);
            out.push("resultant", "Res_y1(H,K) = -eta/256 y2^6", true, String::new);
            out.push("resultant", "Res_y2(H,K) = -eta/256 y1^6", true, String::new);
        }
        Err(IdealError::IdentityFailed { name, difference }) => {
            out.push("resultant", name, false, || format!("difference {difference}"));
        }
        Err(e) => return Err(e.into()),
    }
    for (g, f) in principal_generators(params) {
        let cert = principal_stability(&g, params)?;
        let ok = cert.verdict == Verdict::Stable && cert.cofactors().first().and_then(|r| r.first()) == Some(&f);
        out.push("stable-ideals", format!("D({g}) = ({f})({g})"), ok, || format!("verdict {:?}", cert.verdict));
    }
    let rep = kappa_report(params)?;
    out.push("kappa", "l dehomogenizes to -kappa", rep.l_dehomogenized_sign == -1, || {
        format!("sign {}", rep.l_dehomogenized_sign)
    });
    out.push("kappa", format!("D(kappa) = ({}) kappa", rep.d_kappa_cofactor), rep.d_kappa_holds, String::new);
    for ((g, _), (inp, inl)) in principal_generators(params).iter().zip(rep.kappa_in_principal.iter().zip(&rep.l_in_lifts)) {
        out.push("kappa", format!("kappa in ({g})"), *inp, String::new);
        out.push("kappa", format!("l in the lift of ({g})"), *inl, String::new);
    }
    Ok(())
}

fn series_suite(params: &TriangleParams, n: usize, out: &mut Lines) -> Result<(), VerifyError> {
    for t in leading_terms(params, n)? {
        out.push(
            "leading-terms",
            format!("{} at {}: {} x^{}", t.function, t.point, t.expected_coefficient, t.expected_exponent),
            t.matches,
            || format!("constructed {} x^{}", t.coefficient, t.exponent),
        );
    }
    for c in formal_checks(params, n)? {
        out.push("formal", c.name.clone(), c.holds, || format!("residual nonzero below exponent {}", c.certified_to));
    }
    let rep = numeric_checks(params, &SamplePlan::default())?;
    for l in rep.lines {
        if l.check.contains("informational") {
            continue;
        }
        out.push("numeric", format!("{} at {}", l.check, l.z), l.pass, || {
            format!("residual {:e} above {:e}", l.residual, l.tolerance)
        });
    }
    Ok(())
}

fn ord_suite(params: &TriangleParams, n: usize, out: &mut Lines) -> Result<(), VerifyError> {
    let g = params.gamma().clone();
    let one = Q::one();
    let cases = [
        ("y0 - y1", &var(Y0) - &var(Y1), &g - &one),
        ("y0 - y2", &var(Y0) - &var(Y2), g.clone()),
        ("y1 - y2", &var(Y1) - &var(Y2), &g - &one),
        ("kappa", kappa(), rat(3, 1) * &g - rat(2, 1)),
        ("tau", var(0), &one - &g),
    ];
    for (name, p, want) in cases {
        let got = ord_at_zero(&p, params, n.min(40))?.value;
        out.push("ord", format!("ord0({name}) = {}", format_rational(&want)), got == want, || {
            format!("computed {}", format_rational(&got))
        });
    }
    Ok(())
}

/// Runs all suites at truncation order `n`.
pub fn verify_all(params: &TriangleParams, n: usize) -> Result<VerifyReport, VerifyError> {
    let mut out = Lines(Vec::new());
    derivation_suite(params, &mut out)?;
    ideal_suite(params, &mut out)?;
    series_suite(params, n, &mut out)?;
    ord_suite(params, n, &mut out)?;
    let lines = out.0;
    let passed = lines.iter().filter(|l| l.pass).count();
    Ok(VerifyReport {
        params: params.to_string(),
        order: n,
        passed,
        failed: lines.len() - passed,
        all_pass: passed == lines.len(),
        lines,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_suites_pass() {
        let p = TriangleParams::new(rat(1, 5), rat(1, 4), rat(1, 2)).unwrap();
        let rep = verify_all(&p, 10).unwrap();
        let failing: Vec<_> = rep.lines.iter().filter(|l| !l.pass).collect();
        assert!(failing.is_empty(), "{failing:?}");
        for suite in ["derivation", "resultant", "stable-ideals", "kappa", "leading-terms", "formal", "numeric", "ord"] {
            assert!(rep.lines.iter().any(|l| l.suite == suite), "{suite} missing");
        }
    }
}
